use crate::ast::*;
use std::fmt;

/// Parse error with source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(char),
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = *self.src.get(self.pos)?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    /// Consumes the rest of the current statement as a raw trimmed string
    /// (used for report paths). Stops before ';'.
    fn raw_until_semicolon(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c == b';' {
                break;
            }
            self.bump();
            s.push(c as char);
        }
        s.trim().to_string()
    }

    fn tokens(mut self) -> Result<Vec<Spanned>, ParseError> {
        let mut out = Vec::new();
        loop {
            while let Some(c) = self.peek() {
                if c.is_ascii_whitespace() {
                    self.bump();
                } else if c == b'#' {
                    while let Some(c) = self.peek() {
                        if c == b'\n' {
                            break;
                        }
                        self.bump();
                    }
                } else {
                    break;
                }
            }
            let (line, col) = (self.line, self.col);
            let Some(c) = self.peek() else { break };
            if c.is_ascii_alphabetic() || c == b'_' {
                let mut s = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == b'_' {
                        s.push(c as char);
                        self.bump();
                    } else {
                        break;
                    }
                }
                // report paths: lex the remainder raw so '/' and '.' work
                if s == "report" {
                    out.push(Spanned {
                        tok: Tok::Ident(s),
                        line,
                        col,
                    });
                    // next word is the format
                    while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
                        self.bump();
                    }
                    let (fline, fcol) = (self.line, self.col);
                    let mut fmt_word = String::new();
                    while let Some(c) = self.peek() {
                        if c.is_ascii_alphanumeric() || c == b'_' {
                            fmt_word.push(c as char);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    out.push(Spanned {
                        tok: Tok::Ident(fmt_word),
                        line: fline,
                        col: fcol,
                    });
                    let (pline, pcol) = (self.line, self.col);
                    let path = self.raw_until_semicolon();
                    out.push(Spanned {
                        tok: Tok::Ident(path),
                        line: pline,
                        col: pcol,
                    });
                    continue;
                }
                out.push(Spanned {
                    tok: Tok::Ident(s),
                    line,
                    col,
                });
            } else if c.is_ascii_digit() {
                let mut n: i64 = 0;
                while let Some(c) = self.peek() {
                    if c.is_ascii_digit() {
                        n = n
                            .checked_mul(10)
                            .and_then(|n| n.checked_add((c - b'0') as i64))
                            .ok_or(ParseError {
                                line,
                                col,
                                message: "integer overflow".into(),
                            })?;
                        self.bump();
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Int(n),
                    line,
                    col,
                });
            } else if b"=()[],;^*+-".contains(&c) {
                self.bump();
                out.push(Spanned {
                    tok: Tok::Sym(c as char),
                    line,
                    col,
                });
            } else {
                return Err(ParseError {
                    line,
                    col,
                    message: format!("unexpected character '{}'", c as char),
                });
            }
        }
        Ok(out)
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let (line, col) = self
            .toks
            .get(self.pos)
            .map(|t| (t.line, t.col))
            .or_else(|| self.toks.last().map(|t| (t.line, t.col + 1)))
            .unwrap_or((1, 1));
        Err(ParseError {
            line,
            col,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Sym(s)) if *s == c => {
                self.pos += 1;
                Ok(())
            }
            other => self.err(format!("expected '{c}', found {other:?}")),
        }
    }

    fn expect_ident(&mut self) -> Result<String, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(s)
            }
            other => self.err(format!("expected identifier, found {other:?}")),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let s = self.expect_ident()?;
        if s == kw {
            Ok(())
        } else {
            self.pos -= 1;
            self.err(format!("expected '{kw}', found '{s}'"))
        }
    }

    fn expect_int(&mut self) -> Result<i64, ParseError> {
        let neg = matches!(self.peek(), Some(Tok::Sym('-')));
        if neg {
            self.pos += 1;
        }
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(if neg { -n } else { n })
            }
            other => self.err(format!("expected integer, found {other:?}")),
        }
    }

    fn int_list(&mut self) -> Result<Vec<i64>, ParseError> {
        self.expect_sym('[')?;
        let mut out = Vec::new();
        if matches!(self.peek(), Some(Tok::Sym(']'))) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.expect_int()?);
            match self.next() {
                Some(Tok::Sym(',')) => continue,
                Some(Tok::Sym(']')) => break,
                other => return self.err(format!("expected ',' or ']', found {other:?}")),
            }
        }
        Ok(out)
    }

    fn ident_list(&mut self) -> Result<Vec<String>, ParseError> {
        self.expect_sym('[')?;
        let mut out = Vec::new();
        if matches!(self.peek(), Some(Tok::Sym(']'))) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.expect_ident()?);
            match self.next() {
                Some(Tok::Sym(',')) => continue,
                Some(Tok::Sym(']')) => break,
                other => return self.err(format!("expected ',' or ']', found {other:?}")),
            }
        }
        Ok(out)
    }

    // polynomial expressions: sum of products of powers
    fn poly(&mut self) -> Result<PolyExpr, ParseError> {
        let mut acc = self.poly_term()?;
        loop {
            match self.peek() {
                Some(Tok::Sym('+')) => {
                    self.pos += 1;
                    let rhs = self.poly_term()?;
                    acc = PolyExpr::Add(Box::new(acc), Box::new(rhs));
                }
                Some(Tok::Sym('-')) => {
                    self.pos += 1;
                    let rhs = self.poly_term()?;
                    acc = PolyExpr::Sub(Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn poly_term(&mut self) -> Result<PolyExpr, ParseError> {
        if matches!(self.peek(), Some(Tok::Sym('-'))) {
            self.pos += 1;
            let inner = self.poly_term()?;
            return Ok(PolyExpr::Neg(Box::new(inner)));
        }
        let mut acc = self.poly_factor()?;
        while matches!(self.peek(), Some(Tok::Sym('*'))) {
            self.pos += 1;
            let rhs = self.poly_factor()?;
            acc = PolyExpr::Mul(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn poly_factor(&mut self) -> Result<PolyExpr, ParseError> {
        let base = match self.next() {
            Some(Tok::Int(n)) => PolyExpr::Int(n),
            Some(Tok::Ident(v)) => PolyExpr::Var(v),
            Some(Tok::Sym('(')) => {
                let inner = self.poly()?;
                self.expect_sym(')')?;
                inner
            }
            other => {
                self.pos = self.pos.saturating_sub(1);
                return self.err(format!("expected polynomial factor, found {other:?}"));
            }
        };
        if matches!(self.peek(), Some(Tok::Sym('^'))) {
            self.pos += 1;
            let e = self.expect_int()?;
            if e < 0 {
                return self.err("negative exponent");
            }
            return Ok(PolyExpr::Pow(Box::new(base), e as u32));
        }
        Ok(base)
    }

    fn poly_list(&mut self, terminator: char) -> Result<Vec<PolyExpr>, ParseError> {
        let mut out = Vec::new();
        loop {
            out.push(self.poly()?);
            match self.next() {
                Some(Tok::Sym(',')) => continue,
                Some(Tok::Sym(c)) if c == terminator => break,
                other => {
                    return self.err(format!("expected ',' or '{terminator}', found {other:?}"))
                }
            }
        }
        Ok(out)
    }

    fn ring_expr(&mut self) -> Result<RingExpr, ParseError> {
        let head = self.expect_ident()?;
        match head.as_str() {
            "polynomial_ring" => {
                self.expect_sym('(')?;
                self.expect_keyword("char")?;
                let characteristic = self.expect_int()?;
                if characteristic <= 1 {
                    return self.err("characteristic must be a prime");
                }
                self.expect_sym(',')?;
                self.expect_keyword("vars")?;
                let vars = self.ident_list()?;
                self.expect_sym(',')?;
                self.expect_keyword("weights")?;
                let weights = self.int_list()?;
                self.expect_sym(')')?;
                if weights.iter().any(|&w| w <= 0) {
                    return self.err("weights must be positive");
                }
                Ok(RingExpr::Polynomial {
                    characteristic: characteristic as u32,
                    vars,
                    weights: weights.into_iter().map(|w| w as u32).collect(),
                })
            }
            "quotient" => {
                self.expect_sym('(')?;
                let ring = self.expect_ident()?;
                self.expect_sym(',')?;
                let ideal = self.expect_ident()?;
                self.expect_sym(')')?;
                Ok(RingExpr::Quotient { ring, ideal })
            }
            other => {
                self.pos -= 1;
                self.err(format!("unknown ring constructor '{other}'"))
            }
        }
    }

    fn module_expr(&mut self) -> Result<ModuleExpr, ParseError> {
        let head = self.expect_ident()?;
        match head.as_str() {
            "coker" => {
                self.expect_sym('(')?;
                let ring = self.expect_ident()?;
                self.expect_sym(';')?;
                self.expect_keyword("degrees")?;
                let degrees = self.int_list()?;
                self.expect_sym(';')?;
                self.expect_keyword("matrix")?;
                self.expect_sym('[')?;
                let mut matrix = Vec::new();
                loop {
                    self.expect_sym('[')?;
                    matrix.push(self.poly_list(']')?);
                    match self.next() {
                        Some(Tok::Sym(',')) => continue,
                        Some(Tok::Sym(']')) => break,
                        other => {
                            return self.err(format!("expected ',' or ']', found {other:?}"))
                        }
                    }
                }
                self.expect_sym(')')?;
                Ok(ModuleExpr::Coker {
                    ring,
                    degrees,
                    matrix,
                })
            }
            "ext" => {
                self.expect_sym('(')?;
                let i = self.expect_int()?;
                self.expect_sym(',')?;
                let source = self.expect_ident()?;
                self.expect_sym(',')?;
                let target = self.expect_ident()?;
                self.expect_sym(')')?;
                if i < 0 {
                    return self.err("cohomological index must be nonnegative");
                }
                Ok(ModuleExpr::Ext {
                    i: i as usize,
                    source,
                    target,
                })
            }
            "canonical" => {
                self.expect_sym('(')?;
                let ring = self.expect_ident()?;
                self.expect_sym(')')?;
                Ok(ModuleExpr::Canonical { ring })
            }
            "jls" => {
                self.expect_sym('(')?;
                let ring = self.expect_ident()?;
                self.expect_sym(',')?;
                let over = self.expect_ident()?;
                self.expect_sym(')')?;
                Ok(ModuleExpr::Jls { ring, over })
            }
            "syzygy" => {
                self.expect_sym('(')?;
                let i = self.expect_int()?;
                self.expect_sym(',')?;
                let module = self.expect_ident()?;
                self.expect_sym(')')?;
                if i < 0 {
                    return self.err("syzygy index must be nonnegative");
                }
                Ok(ModuleExpr::Syzygy {
                    i: i as usize,
                    module,
                })
            }
            other => {
                self.pos -= 1;
                self.err(format!("unknown module constructor '{other}'"))
            }
        }
    }

    fn check_arg(&mut self) -> Result<Arg, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Arg::Name(s))
            }
            Some(Tok::Int(_)) | Some(Tok::Sym('-')) => Ok(Arg::Int(self.expect_int()?)),
            Some(Tok::Sym('[')) => {
                self.pos += 1;
                let mut items = Vec::new();
                if matches!(self.peek(), Some(Tok::Sym(']'))) {
                    self.pos += 1;
                    return Ok(Arg::List(items));
                }
                loop {
                    items.push(self.check_arg()?);
                    match self.next() {
                        Some(Tok::Sym(',')) => continue,
                        Some(Tok::Sym(']')) => break,
                        other => {
                            return self.err(format!("expected ',' or ']', found {other:?}"))
                        }
                    }
                }
                Ok(Arg::List(items))
            }
            other => self.err(format!("expected check argument, found {other:?}")),
        }
    }

    fn check(&mut self) -> Result<Check, ParseError> {
        let name = self.expect_ident()?;
        self.expect_sym('(')?;
        let mut args = Vec::new();
        if matches!(self.peek(), Some(Tok::Sym(')'))) {
            self.pos += 1;
        } else {
            loop {
                args.push(self.check_arg()?);
                match self.next() {
                    Some(Tok::Sym(',')) => continue,
                    Some(Tok::Sym(')')) => break,
                    other => return self.err(format!("expected ',' or ')', found {other:?}")),
                }
            }
        }
        let mut expect = None;
        let mut bound = None;
        loop {
            match self.peek().cloned() {
                Some(Tok::Ident(s)) if s == "expect" => {
                    self.pos += 1;
                    let v = self.expect_ident()?;
                    expect = Some(match v.as_str() {
                        "true" => Expectation::True,
                        "false" => Expectation::False,
                        "verified_up_to_bound" => Expectation::VerifiedUpToBound,
                        "unknown" => Expectation::Unknown,
                        "unsupported" => Expectation::Unsupported,
                        other => {
                            self.pos -= 1;
                            return self.err(format!("unknown expectation '{other}'"));
                        }
                    });
                }
                Some(Tok::Ident(s)) if s == "bound" => {
                    self.pos += 1;
                    let b = self.expect_int()?;
                    if b < 1 {
                        return self.err("bound must be at least 1");
                    }
                    bound = Some(b as u32);
                }
                _ => break,
            }
        }
        Ok(Check {
            name,
            args,
            expect,
            bound,
        })
    }

    fn statement(&mut self) -> Result<Stmt, ParseError> {
        let kw = self.expect_ident()?;
        let stmt = match kw.as_str() {
            "ring" => {
                let name = self.expect_ident()?;
                self.expect_sym('=')?;
                Stmt::Ring(name, self.ring_expr()?)
            }
            "ideal" => {
                let name = self.expect_ident()?;
                self.expect_sym('=')?;
                self.expect_keyword("ideal")?;
                self.expect_sym('(')?;
                let ring = self.expect_ident()?;
                self.expect_sym(';')?;
                let gens = self.poly_list(')')?;
                Stmt::Ideal(name, IdealExpr { ring, gens })
            }
            "module" => {
                let name = self.expect_ident()?;
                self.expect_sym('=')?;
                Stmt::Module(name, self.module_expr()?)
            }
            "check" => Stmt::Check(self.check()?),
            "report" => {
                let fmt_word = self.expect_ident()?;
                let format = match fmt_word.as_str() {
                    "json" => ReportFormat::Json,
                    "text" => ReportFormat::Text,
                    other => {
                        self.pos -= 1;
                        return self.err(format!("unknown report format '{other}'"));
                    }
                };
                let path = self.expect_ident()?;
                if path.is_empty() {
                    return self.err("report path is empty");
                }
                Stmt::Report { format, path }
            }
            other => {
                self.pos -= 1;
                return self.err(format!("unknown statement keyword '{other}'"));
            }
        };
        self.expect_sym(';')?;
        Ok(stmt)
    }
}

/// Parses a session file.
pub fn parse_session(text: &str) -> Result<Session, ParseError> {
    let toks = Lexer::new(text).tokens()?;
    let mut p = Parser { toks, pos: 0 };
    let mut statements = Vec::new();
    while p.peek().is_some() {
        statements.push(p.statement()?);
    }
    Ok(Session { statements })
}
