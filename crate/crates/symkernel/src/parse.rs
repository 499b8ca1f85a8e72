//! Recursive-descent parser for the expression grammar and the system-file
//! line format.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor | '/' factor)*
//! factor := atom ['^' int]
//! atom   := number | ident | D(ident, ident+) | sin(expr) | cos(expr) | '(' expr ')'
//! ```
//!
//! System files are line oriented: `independent`, `dependent`, `parameter`,
//! `function name(args)`, `eq: <expr> = 0`, `solve: <coord> = <expr>`.
//! `#` starts a comment. Files are UTF-8.

use num_bigint::BigInt;

use crate::atom::ArbFunc;
use crate::error::KernelError;
use crate::expr::Expr;
use crate::subst::{Rule, RewriteSet};
use crate::symbol::{Scope, Symbol, SymbolKind};
use crate::system::PdeSystem;
use crate::Rat;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Equals,
}

struct Lexer<'a> {
    src: &'a str,
    line: usize,
    tokens: Vec<(Tok, usize)>, // (token, column)
}

fn lex(src: &str, line: usize, col_base: usize) -> Result<Vec<(Tok, usize)>, KernelError> {
    let mut tokens = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let col = col_base + i + 1;
        match c {
            ' ' | '\t' | '\r' => {
                chars.next();
            }
            '#' => break,
            '+' => { chars.next(); tokens.push((Tok::Plus, col)); }
            '-' => { chars.next(); tokens.push((Tok::Minus, col)); }
            '*' => { chars.next(); tokens.push((Tok::Star, col)); }
            '/' => { chars.next(); tokens.push((Tok::Slash, col)); }
            '^' => { chars.next(); tokens.push((Tok::Caret, col)); }
            '(' => { chars.next(); tokens.push((Tok::LParen, col)); }
            ')' => { chars.next(); tokens.push((Tok::RParen, col)); }
            ',' => { chars.next(); tokens.push((Tok::Comma, col)); }
            '=' => { chars.next(); tokens.push((Tok::Equals, col)); }
            c if c.is_ascii_digit() => {
                let start = i;
                let mut end = i;
                while let Some(&(j, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        end = j;
                        chars.next();
                    } else if d == '.' {
                        return Err(KernelError::Syntax {
                            line,
                            col: col_base + j + 1,
                            msg: "floating-point literals are not supported; use exact ratios like 3/2".into(),
                        });
                    } else {
                        break;
                    }
                }
                let text = &src[start..=end];
                tokens.push((Tok::Int(text.parse::<BigInt>().expect("digits")), col));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                let mut end = i;
                while let Some(&(j, d)) = chars.peek() {
                    if d.is_alphanumeric() || d == '_' {
                        end = j;
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push((Tok::Ident(src[start..=end].to_string()), col));
            }
            other => {
                return Err(KernelError::Syntax {
                    line,
                    col,
                    msg: format!("unexpected character `{other}`"),
                });
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    pos: usize,
    scope: &'a Scope,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, line: usize, scope: &'a Scope) -> Result<Self, KernelError> {
        let tokens = lex(src, line, 0)?;
        Ok(Parser {
            lexer: Lexer { src, line, tokens },
            pos: 0,
            scope,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.lexer.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.lexer
            .tokens
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or(self.lexer.src.len() + 1)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.lexer.tokens.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> KernelError {
        KernelError::Syntax { line: self.lexer.line, col: self.col(), msg: msg.into() }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), KernelError> {
        match self.next() {
            Some(t) if t == tok => Ok(()),
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    fn at_end(&self) -> bool {
        self.pos == self.lexer.tokens.len()
    }

    fn expr(&mut self) -> Result<Expr, KernelError> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Plus) => {
                self.next();
            }
            Some(Tok::Minus) => {
                self.next();
                negate = true;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.next();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, KernelError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(Tok::Slash) => {
                    self.next();
                    let f = self.factor()?;
                    acc = acc.try_div(&f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, KernelError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.next();
            let mut negative = false;
            if matches!(self.peek(), Some(Tok::Minus)) {
                self.next();
                negative = true;
            }
            let n = match self.next() {
                Some(Tok::Int(n)) => n,
                _ => {
                    return Err(KernelError::NonIntegerExponent {
                        line: self.lexer.line,
                        col: self.col(),
                    })
                }
            };
            let n_i32: i32 = n
                .try_into()
                .map_err(|_| self.err("exponent out of range"))?;
            return base.pow_i(if negative { -n_i32 } else { n_i32 });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, KernelError> {
        let col = self.col();
        match self.next() {
            Some(Tok::Int(n)) => Ok(Expr::from_rat(Rat::from_integer(n))),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "D" => self.derivative_atom(),
                "sin" | "cos" => {
                    self.expect(Tok::LParen, "`(`")?;
                    let phase = self.expr()?;
                    self.expect(Tok::RParen, "`)`")?;
                    if name == "sin" {
                        Expr::sin_of(&phase)
                    } else {
                        Expr::cos_of(&phase)
                    }
                }
                _ => self.named_atom(&name, col),
            },
            _ => Err(self.err("expected a number, identifier or `(`")),
        }
    }

    fn named_atom(&mut self, name: &str, col: usize) -> Result<Expr, KernelError> {
        if let Some(sym) = self.scope.lookup(name) {
            return Ok(Expr::sym(sym));
        }
        if let Some(decl) = self.scope.lookup_function(name) {
            return Ok(Expr::func(ArbFunc::new(&decl.name, &decl.args)));
        }
        Err(KernelError::Undeclared {
            name: name.to_string(),
            line: self.lexer.line,
            col,
        })
    }

    /// `D(base, v1, v2, ...)`: repeated total differentiation of a field or
    /// declared function by the listed symbols.
    fn derivative_atom(&mut self) -> Result<Expr, KernelError> {
        self.expect(Tok::LParen, "`(`")?;
        let col = self.col();
        let base_name = match self.next() {
            Some(Tok::Ident(n)) => n,
            _ => return Err(self.err("expected a field or function name in D(...)")),
        };
        let mut base = self.named_atom(&base_name, col)?;
        let mut vars: Vec<Symbol> = Vec::new();
        loop {
            match self.next() {
                Some(Tok::Comma) => {
                    let col = self.col();
                    let vname = match self.next() {
                        Some(Tok::Ident(n)) => n,
                        _ => return Err(self.err("expected a variable name in D(...)")),
                    };
                    let sym = self.scope.lookup(&vname).ok_or(KernelError::Undeclared {
                        name: vname.clone(),
                        line: self.lexer.line,
                        col,
                    })?;
                    vars.push(sym.clone());
                }
                Some(Tok::RParen) => break,
                _ => return Err(self.err("expected `,` or `)` in D(...)")),
            }
        }
        if vars.is_empty() {
            return Err(self.err("D(...) needs at least one differentiation variable"));
        }
        for v in &vars {
            base = base.diff(v);
        }
        Ok(base)
    }
}

/// Parse a single expression in an existing scope.
pub fn parse_expression(text: &str, scope: &Scope) -> Result<Expr, KernelError> {
    parse_expression_at(text, scope, 1)
}

fn parse_expression_at(text: &str, scope: &Scope, line: usize) -> Result<Expr, KernelError> {
    let mut p = Parser::new(text, line, scope)?;
    let e = p.expr()?;
    if !p.at_end() {
        return Err(p.err("trailing input after expression"));
    }
    Ok(e)
}

/// Parse `lhs = rhs` returning both sides.
fn parse_equation_at(
    text: &str,
    scope: &Scope,
    line: usize,
) -> Result<(Expr, Expr), KernelError> {
    let mut p = Parser::new(text, line, scope)?;
    let lhs = p.expr()?;
    p.expect(Tok::Equals, "`=`")?;
    let rhs = p.expr()?;
    if !p.at_end() {
        return Err(p.err("trailing input after equation"));
    }
    Ok((lhs, rhs))
}

/// Parse a complete system file.
pub fn parse_system(text: &str, name: &str) -> Result<PdeSystem, KernelError> {
    let mut scope = Scope::new();
    let mut equations: Vec<Expr> = Vec::new();
    let mut rules: Vec<Rule> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let stripped = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let trimmed = stripped.trim();
        if trimmed.is_empty() {
            continue;
        }
        let (head, rest) = match trimmed.find(|c: char| c.is_whitespace() || c == ':') {
            Some(i) => {
                let head = &trimmed[..i];
                let rest = trimmed[i..].trim_start_matches(':').trim();
                (head, rest)
            }
            None => (trimmed, ""),
        };
        match head {
            "independent" | "dependent" | "parameter" => {
                let kind = match head {
                    "independent" => SymbolKind::Independent,
                    "dependent" => SymbolKind::Dependent,
                    _ => SymbolKind::Parameter,
                };
                if rest.is_empty() {
                    return Err(KernelError::Syntax {
                        line,
                        col: 1,
                        msg: format!("`{head}` needs at least one name"),
                    });
                }
                for name in rest.split_whitespace() {
                    scope.declare(name, kind)?;
                }
            }
            "function" => {
                // function F(a, b)
                let open = rest.find('(').ok_or(KernelError::Syntax {
                    line,
                    col: 1,
                    msg: "function declaration needs an argument list".into(),
                })?;
                let close = rest.rfind(')').ok_or(KernelError::Syntax {
                    line,
                    col: 1,
                    msg: "unterminated argument list".into(),
                })?;
                let fname = rest[..open].trim();
                let mut args: Vec<Symbol> = Vec::new();
                for a in rest[open + 1..close].split(',') {
                    let a = a.trim();
                    if a.is_empty() {
                        continue;
                    }
                    let sym = scope.lookup(a).cloned().ok_or(KernelError::Undeclared {
                        name: a.to_string(),
                        line,
                        col: 1,
                    })?;
                    args.push(sym);
                }
                let arg_refs: Vec<&Symbol> = args.iter().collect();
                scope.function(fname, &arg_refs)?;
            }
            "eq" => {
                let (lhs, rhs) = parse_equation_at(rest, &scope, line)?;
                if !rhs.is_zero() {
                    return Err(KernelError::Syntax {
                        line,
                        col: 1,
                        msg: "equations must be written as `eq: <expr> = 0`".into(),
                    });
                }
                equations.push(lhs);
            }
            "solve" => {
                let (lhs, rhs) = parse_equation_at(rest, &scope, line)?;
                let coord = lhs.as_single_coordinate().ok_or_else(|| KernelError::BadRuleLhs {
                    got: lhs.to_string(),
                })?;
                rules.push(Rule { lhs: coord, rhs });
            }
            other => {
                return Err(KernelError::Syntax {
                    line,
                    col: 1,
                    msg: format!("unknown line type `{other}`"),
                });
            }
        }
    }

    PdeSystem::new(name, scope, equations, RewriteSet::new(rules))
}
