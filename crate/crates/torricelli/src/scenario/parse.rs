//! Lexer and recursive-descent parser for `.geo` scripts.
//!
//! The lexer works line by line (statements are newline-terminated and `#`
//! comments run to end of line), so every token carries a 1-based column
//! and every diagnostic a line/column pair. The parser resolves names as
//! it goes: a use before its binding, a rebinding, a wrong arity or an
//! unknown constructor are all parse errors.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::qsqrt3::{F3, Rat};

use super::{
    AreaAtom, AreaExpr, AreaTerm, Assertion, Expr, FUNC_NAMES, Func, Kind, PRED_NAMES,
    Program, ScriptError, Stmt, StmtKind,
};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    LParen,
    RParen,
    Comma,
    Eq,
    EqEq,
    Plus,
    Minus,
    Star,
    Slash,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eq => "`=`".into(),
            Tok::EqEq => "`==`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    col: u32,
}

const KEYWORDS: [&str; 6] = ["point", "line", "circle", "scalar", "assert", "r3"];

fn is_reserved(name: &str) -> bool {
    KEYWORDS.contains(&name)
        || FUNC_NAMES.iter().any(|(n, _, _)| *n == name)
        || PRED_NAMES.iter().any(|(n, _, _)| *n == name)
}

fn func_by_name(name: &str) -> Option<Func> {
    FUNC_NAMES
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, f, _)| *f)
}

fn lex_line(line_no: u32, line: &str) -> Result<Vec<Token>, ScriptError> {
    let mut tokens = Vec::new();
    let mut chars = line.char_indices().peekable();
    let col_of = |byte_idx: usize| (line[..byte_idx].chars().count() + 1) as u32;
    while let Some(&(idx, ch)) = chars.peek() {
        let col = col_of(idx);
        match ch {
            '#' => break,
            c if c.is_whitespace() => {
                chars.next();
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        ident.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token { tok: Tok::Ident(ident), col });
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_digit() {
                        digits.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let n: BigInt = digits.parse().expect("digit run");
                tokens.push(Token { tok: Tok::Int(n), col });
            }
            '(' | ')' | ',' | '+' | '-' | '*' | '/' | '=' => {
                chars.next();
                let tok = match ch {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    _ => {
                        if matches!(chars.peek(), Some(&(_, '='))) {
                            chars.next();
                            Tok::EqEq
                        } else {
                            Tok::Eq
                        }
                    }
                };
                tokens.push(Token { tok, col });
            }
            other => {
                return Err(ScriptError::Parse {
                    line: line_no,
                    col,
                    msg: format!("unexpected character `{other}`"),
                });
            }
        }
    }
    Ok(tokens)
}

/// Parser over one statement line, with the cross-line binding environment.
struct LineParser<'a> {
    line: u32,
    tokens: Vec<Token>,
    pos: usize,
    bound: &'a mut HashMap<String, Kind>,
}

impl<'a> LineParser<'a> {
    fn err(&self, col: u32, msg: impl Into<String>) -> ScriptError {
        ScriptError::Parse { line: self.line, col, msg: msg.into() }
    }

    fn end_col(&self) -> u32 {
        self.tokens.last().map(|t| t.col + 1).unwrap_or(1)
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.tokens.get(self.pos + 1).map(|t| &t.tok)
    }

    fn col(&self) -> u32 {
        self.tokens
            .get(self.pos)
            .map(|t| t.col)
            .unwrap_or_else(|| self.end_col())
    }

    fn next(&mut self, what: &str) -> Result<Token, ScriptError> {
        let t = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| self.err(self.end_col(), format!("expected {what}")))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ScriptError> {
        let t = self.next(what)?;
        if t.tok == tok {
            Ok(())
        } else {
            Err(self.err(t.col, format!("expected {what}, found {}", t.tok.describe())))
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_end(&self) -> Result<(), ScriptError> {
        match self.tokens.get(self.pos) {
            None => Ok(()),
            Some(t) => Err(self.err(
                t.col,
                format!("expected end of statement, found {}", t.tok.describe()),
            )),
        }
    }

    fn statement(&mut self) -> Result<StmtKind, ScriptError> {
        let head = self.next("a statement")?;
        let ident = match &head.tok {
            Tok::Ident(s) => s.clone(),
            other => {
                return Err(self.err(
                    head.col,
                    format!("expected `point`, `line`, `circle`, `scalar` or `assert`, found {}", other.describe()),
                ));
            }
        };
        match ident.as_str() {
            "point" => self.binding(Kind::Point),
            "line" => self.binding(Kind::Line),
            "circle" => self.binding(Kind::Circle),
            "scalar" => self.binding(Kind::Scalar),
            "assert" => self.assertion(),
            other => Err(self.err(
                head.col,
                format!("expected `point`, `line`, `circle`, `scalar` or `assert`, found `{other}`"),
            )),
        }
    }

    fn binding(&mut self, kind: Kind) -> Result<StmtKind, ScriptError> {
        let t = self.next("a name")?;
        let name = match &t.tok {
            Tok::Ident(s) => s.clone(),
            other => return Err(self.err(t.col, format!("expected a name, found {}", other.describe()))),
        };
        if is_reserved(&name) {
            return Err(self.err(t.col, format!("`{name}` is a reserved word")));
        }
        if self.bound.contains_key(&name) {
            return Err(self.err(t.col, format!("name `{name}` is already bound")));
        }
        self.expect(Tok::Eq, "`=`")?;
        let expr = self.expr()?;
        self.expect_end()?;
        self.bound.insert(name.clone(), kind);
        Ok(StmtKind::Binding { kind, name, expr })
    }

    /// Binding right-hand side: a literal or a constructor call.
    fn expr(&mut self) -> Result<Expr, ScriptError> {
        match self.peek() {
            Some(Tok::LParen) => self.point_literal(),
            Some(Tok::Int(_)) | Some(Tok::Minus) => {
                let v = self.scalar_literal()?;
                Ok(Expr::ScalarLit(v))
            }
            Some(Tok::Ident(_)) => self.call(),
            _ => {
                let col = self.col();
                Err(self.err(col, "expected a literal or a constructor call"))
            }
        }
    }

    /// Argument: a bound name, a literal, or a nested call.
    fn arg(&mut self) -> Result<Expr, ScriptError> {
        match self.peek() {
            Some(Tok::LParen) => self.point_literal(),
            Some(Tok::Int(_)) | Some(Tok::Minus) => {
                let v = self.scalar_literal()?;
                Ok(Expr::ScalarLit(v))
            }
            Some(Tok::Ident(_)) => {
                if matches!(self.peek2(), Some(Tok::LParen)) {
                    self.call()
                } else {
                    let t = self.next("a name")?;
                    let Tok::Ident(name) = t.tok else { unreachable!() };
                    if is_reserved(&name) {
                        return Err(self.err(t.col, format!("`{name}` is a reserved word")));
                    }
                    if !self.bound.contains_key(&name) {
                        return Err(self.err(t.col, format!("unbound name `{name}`")));
                    }
                    Ok(Expr::Name(name))
                }
            }
            _ => {
                let col = self.col();
                Err(self.err(col, "expected a name, a literal or a call"))
            }
        }
    }

    fn call(&mut self) -> Result<Expr, ScriptError> {
        let t = self.next("a constructor name")?;
        let Tok::Ident(name) = t.tok else { unreachable!() };
        let Some(func) = func_by_name(&name) else {
            return Err(self.err(t.col, format!("unknown constructor `{name}`")));
        };
        self.expect(Tok::LParen, "`(`")?;
        let mut args = vec![self.arg()?];
        while self.eat(&Tok::Comma) {
            args.push(self.arg()?);
        }
        self.expect(Tok::RParen, "`)`")?;
        if args.len() != func.arity() {
            return Err(self.err(
                t.col,
                format!("`{name}` expects {} arguments, got {}", func.arity(), args.len()),
            ));
        }
        Ok(Expr::Call(func, args))
    }

    /// `["-"] INT ["/" INT]`
    fn rat(&mut self) -> Result<Rat, ScriptError> {
        let negative = self.eat(&Tok::Minus);
        let t = self.next("an integer")?;
        let Tok::Int(num) = t.tok else {
            return Err(self.err(t.col, format!("expected an integer, found {}", t.tok.describe())));
        };
        let num = if negative { -num } else { num };
        if self.eat(&Tok::Slash) {
            let d = self.next("a denominator")?;
            let Tok::Int(den) = d.tok else {
                return Err(self.err(d.col, format!("expected a denominator, found {}", d.tok.describe())));
            };
            Rat::new(num, den).map_err(|_| self.err(d.col, "zero denominator"))
        } else {
            Ok(Rat::from_int(num))
        }
    }

    /// `rat ["+" rat "r3"]`
    fn scalar_literal(&mut self) -> Result<F3, ScriptError> {
        let a = self.rat()?;
        if self.eat(&Tok::Plus) {
            let b = self.rat()?;
            let t = self.next("`r3`")?;
            match &t.tok {
                Tok::Ident(s) if s == "r3" => Ok(F3::new(a, b)),
                other => Err(self.err(t.col, format!("expected `r3`, found {}", other.describe()))),
            }
        } else {
            Ok(F3::new(a, Rat::zero()))
        }
    }

    fn point_literal(&mut self) -> Result<Expr, ScriptError> {
        self.expect(Tok::LParen, "`(`")?;
        let x = self.scalar_literal()?;
        self.expect(Tok::Comma, "`,`")?;
        let y = self.scalar_literal()?;
        self.expect(Tok::RParen, "`)`")?;
        Ok(Expr::PointLit(x, y))
    }

    fn assertion(&mut self) -> Result<StmtKind, ScriptError> {
        let t = self.next("a predicate name")?;
        let Tok::Ident(name) = &t.tok else {
            return Err(self.err(t.col, format!("expected a predicate name, found {}", t.tok.describe())));
        };
        let entry = PRED_NAMES.iter().find(|(n, _, _)| n == name);
        let Some((name, pred, arity)) = entry else {
            return Err(self.err(t.col, format!("unknown predicate `{name}`")));
        };
        self.expect(Tok::LParen, "`(`")?;
        let assertion = match pred {
            None => {
                // area_eq: linear combination == linear combination
                let lhs = self.area_expr()?;
                self.expect(Tok::EqEq, "`==`")?;
                let rhs = self.area_expr()?;
                Assertion::AreaEq(lhs, rhs)
            }
            Some(pred) => {
                let mut args = vec![self.arg()?];
                while self.eat(&Tok::Comma) {
                    args.push(self.arg()?);
                }
                if args.len() != *arity {
                    return Err(self.err(
                        t.col,
                        format!("`{name}` expects {arity} arguments, got {}", args.len()),
                    ));
                }
                Assertion::Simple(*pred, args)
            }
        };
        self.expect(Tok::RParen, "`)`")?;
        self.expect_end()?;
        Ok(StmtKind::Assert(assertion))
    }

    /// `["-"] term { ("+" | "-") term }` where a term is `rat`, `rat r3`,
    /// `rat "*" atom` or a bare scalar atom.
    fn area_expr(&mut self) -> Result<AreaExpr, ScriptError> {
        let mut terms = Vec::new();
        let negative = self.eat(&Tok::Minus);
        terms.push(self.area_term(negative)?);
        loop {
            if self.eat(&Tok::Plus) {
                terms.push(self.area_term(false)?);
            } else if self.eat(&Tok::Minus) {
                terms.push(self.area_term(true)?);
            } else {
                break;
            }
        }
        Ok(AreaExpr { terms })
    }

    fn area_term(&mut self, negative: bool) -> Result<AreaTerm, ScriptError> {
        let signed = |r: Rat| if negative { -r } else { r };
        match self.peek() {
            Some(Tok::Int(_)) | Some(Tok::Minus) => {
                let coeff = self.rat()?;
                if let Some(Tok::Ident(s)) = self.peek() {
                    if s == "r3" {
                        self.pos += 1;
                        return Ok(AreaTerm { coeff: signed(coeff), atom: AreaAtom::Sqrt3 });
                    }
                }
                if self.eat(&Tok::Star) {
                    let atom = self.scalar_atom()?;
                    return Ok(AreaTerm { coeff: signed(coeff), atom });
                }
                Ok(AreaTerm { coeff: signed(coeff), atom: AreaAtom::One })
            }
            Some(Tok::Ident(_)) => {
                let atom = self.scalar_atom()?;
                Ok(AreaTerm { coeff: signed(Rat::one()), atom })
            }
            _ => {
                let col = self.col();
                Err(self.err(col, "expected an area term"))
            }
        }
    }

    fn scalar_atom(&mut self) -> Result<AreaAtom, ScriptError> {
        if matches!(self.peek(), Some(Tok::Ident(_))) {
            if matches!(self.peek2(), Some(Tok::LParen)) {
                return Ok(AreaAtom::Expr(self.call()?));
            }
            let t = self.next("a name")?;
            let Tok::Ident(name) = t.tok else { unreachable!() };
            if is_reserved(&name) {
                return Err(self.err(t.col, format!("`{name}` is a reserved word")));
            }
            if !self.bound.contains_key(&name) {
                return Err(self.err(t.col, format!("unbound name `{name}`")));
            }
            return Ok(AreaAtom::Expr(Expr::Name(name)));
        }
        let col = self.col();
        Err(self.err(col, "expected a scalar name or call"))
    }
}

/// Parse a whole script into a [`Program`].
pub fn parse(source: &str) -> Result<Program, ScriptError> {
    let mut bound = HashMap::new();
    let mut statements = Vec::new();
    for (i, raw) in source.lines().enumerate() {
        let line_no = (i + 1) as u32;
        let tokens = lex_line(line_no, raw)?;
        if tokens.is_empty() {
            continue; // blank line or comment
        }
        let mut parser = LineParser { line: line_no, tokens, pos: 0, bound: &mut bound };
        let kind = parser.statement()?;
        statements.push(Stmt { line: line_no, kind });
    }
    Ok(Program { statements })
}
