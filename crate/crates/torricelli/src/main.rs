use std::process::exit;

fn main() {
    exit(torricelli::cli::run(std::env::args()));
}
