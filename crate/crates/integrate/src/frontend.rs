//! Expression and tower-file syntax, and canonical printing.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;
use tower_core::{Constant, CoreError, Element, GeneratorKind, Monomial, Polynomial, Tower, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrontendError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown name `{name}` at byte {offset}")]
    UnknownName { name: String, offset: usize },
    #[error("line {line}: `{name}` is used before it is declared")]
    ForwardReference { name: String, line: usize },
    #[error("line {line}: `{name}` is already declared")]
    DuplicateName { name: String, line: usize },
    #[error("line {line}: {source}")]
    InLine {
        line: usize,
        #[source]
        source: Box<FrontendError>,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error(transparent)]
    Tower(#[from] CoreError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Number(Constant),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(String, Vec<Expr>),
}

impl Expr {
    /// Names referenced anywhere in the expression, outside call heads.
    pub fn names(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Number(_) => {}
            Expr::Var(n) => out.push(n),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_names(out),
            Expr::Call(_, args) => args.iter().for_each(|a| a.collect_names(out)),
        }
    }

    /// Evaluates to an element, reading variables through `vars`.
    pub fn evaluate(&self, vars: &HashMap<String, Var>) -> Result<Element, FrontendError> {
        Ok(match self {
            Expr::Number(c) => Element::constant(c.clone()),
            Expr::Var(n) => match vars.get(n) {
                Some(&v) => Element::var(v),
                None => {
                    return Err(FrontendError::UnknownName {
                        name: n.clone(),
                        offset: 0,
                    })
                }
            },
            Expr::Add(a, b) => a.evaluate(vars)? + b.evaluate(vars)?,
            Expr::Sub(a, b) => a.evaluate(vars)? - b.evaluate(vars)?,
            Expr::Mul(a, b) => a.evaluate(vars)? * b.evaluate(vars)?,
            Expr::Div(a, b) => {
                let d = b.evaluate(vars)?;
                if d.is_zero() {
                    return Err(FrontendError::DivisionByZero);
                }
                a.evaluate(vars)? / d
            }
            Expr::Neg(a) => -a.evaluate(vars)?,
            Expr::Pow(a, e) => a.evaluate(vars)?.pow(*e),
            Expr::Call(name, _) => {
                return Err(FrontendError::Syntax {
                    offset: 0,
                    message: format!("`{name}(...)` is only allowed in tower declarations"),
                })
            }
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // fully parenthesized; `render` is the canonical printer for values
        match self {
            Expr::Number(c) => write!(f, "{c}"),
            Expr::Var(n) => f.write_str(n),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a}*{b})"),
            Expr::Div(a, b) => write!(f, "({a}/{b})"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Pow(a, e) => write!(f, "({a}^{e})"),
            Expr::Call(n, args) => {
                write!(f, "{n}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Number(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, FrontendError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = j + d.len_utf8();
                chars.next();
            }
            let value = text[i..end].parse().expect("digits");
            out.push((i, Token::Number(value)));
        } else if c.is_alphabetic() || c == '_' {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                end = j + d.len_utf8();
                chars.next();
            }
            out.push((i, Token::Ident(text[i..end].to_string())));
        } else if "+-*/^(),".contains(c) {
            out.push((i, Token::Op(c)));
            chars.next();
        } else {
            return Err(FrontendError::Syntax {
                offset: i,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    len: usize,
    allow_calls: bool,
    known: Option<&'a dyn Fn(&str) -> bool>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.len, |(o, _)| *o)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, FrontendError> {
        Err(FrontendError::Syntax {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<(), FrontendError> {
        if self.eat(op) {
            Ok(())
        } else {
            self.error(format!("expected `{op}`"))
        }
    }

    fn expr(&mut self) -> Result<Expr, FrontendError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, FrontendError> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, FrontendError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let Some(Token::Number(n)) = self.peek().cloned() else {
                return self.error("exponent must be a non-negative integer literal");
            };
            let Ok(e) = u32::try_from(n) else {
                return self.error("exponent too large");
            };
            self.pos += 1;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, FrontendError> {
        let offset = self.offset();
        match self.peek().cloned() {
            Some(Token::Number(n)) => {
                self.pos += 1;
                Ok(Expr::Number(Constant::from_integer(n)))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                if self.peek() == Some(&Token::Op('(')) {
                    if !self.allow_calls {
                        return Err(FrontendError::Syntax {
                            offset,
                            message: format!("`{name}(...)` is only allowed in tower declarations"),
                        });
                    }
                    self.pos += 1;
                    let mut args = vec![self.expr()?];
                    while self.eat(',') {
                        args.push(self.expr()?);
                    }
                    self.expect(')')?;
                    return Ok(Expr::Call(name, args));
                }
                if let Some(known) = self.known {
                    if !known(&name) {
                        return Err(FrontendError::UnknownName { name, offset });
                    }
                }
                Ok(Expr::Var(name))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Token::Op(c)) => self.error(format!("unexpected `{c}`")),
            None => self.error("unexpected end of input"),
        }
    }
}

fn parse_with(
    text: &str,
    allow_calls: bool,
    known: Option<&dyn Fn(&str) -> bool>,
) -> Result<Expr, FrontendError> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        len: text.len(),
        allow_calls,
        known,
    };
    let e = p.expr()?;
    if p.pos < p.tokens.len() {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

/// Parses an integrand; every name must be one of `names`.
pub fn parse_expression(text: &str, names: &[String]) -> Result<Expr, FrontendError> {
    let known = |n: &str| names.iter().any(|m| m == n);
    parse_with(text, false, Some(&known))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Declaration {
    Log(Expr),
    Int(Expr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerFile {
    pub base: String,
    pub declarations: Vec<(String, Declaration)>,
}

impl TowerFile {
    /// Variable names by index: the base variable first.
    pub fn names(&self) -> Vec<String> {
        std::iter::once(self.base.clone())
            .chain(self.declarations.iter().map(|(n, _)| n.clone()))
            .collect()
    }

    pub fn variables(&self) -> HashMap<String, Var> {
        self.names().into_iter().enumerate().map(|(i, n)| (n, i)).collect()
    }

    /// Builds the tower; generators must be well formed but are not validated.
    pub fn build(&self) -> Result<Tower, FrontendError> {
        let vars = self.variables();
        let mut tower = Tower::base();
        for (idx, (_, decl)) in self.declarations.iter().enumerate() {
            let kind = match decl {
                Declaration::Log(e) => GeneratorKind::Log(e.evaluate(&vars)?),
                Declaration::Int(e) => GeneratorKind::Primitive(e.evaluate(&vars)?),
            };
            tower = tower.extend(kind).map_err(|e| FrontendError::InLine {
                line: self.line_of(idx),
                source: Box::new(e.into()),
            })?;
        }
        Ok(tower)
    }

    fn line_of(&self, idx: usize) -> usize {
        idx + 2
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

fn is_reserved(name: &str) -> bool {
    matches!(name, "base" | "log" | "int")
}

/// Parses a tower file: `base <name>` then `<name> = log(<expr>)` or
/// `<name> = int(<expr>)`, one per line, `#` starting a comment.
pub fn parse_tower(text: &str) -> Result<TowerFile, FrontendError> {
    let mut base: Option<String> = None;
    let mut declarations: Vec<(String, Declaration)> = Vec::new();
    let mut line_start = 0;
    for (lineno, raw) in text.split('\n').enumerate() {
        let line_no = lineno + 1;
        let start = line_start;
        line_start += raw.len() + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let shift = |e: FrontendError| match e {
            FrontendError::Syntax { offset, message } => FrontendError::Syntax {
                offset: offset + start,
                message,
            },
            FrontendError::UnknownName { name, offset } => FrontendError::UnknownName {
                name,
                offset: offset + start,
            },
            other => other,
        };
        let Some(base_name) = &base else {
            let words: Vec<&str> = content.split_whitespace().collect();
            match words.as_slice() {
                ["base", name] if is_identifier(name) && !is_reserved(name) => {
                    base = Some(name.to_string());
                    continue;
                }
                _ => {
                    return Err(FrontendError::Syntax {
                        offset: start,
                        message: "expected `base <name>` as the first line".into(),
                    })
                }
            }
        };
        let Some(eq) = content.find('=') else {
            return Err(FrontendError::Syntax {
                offset: start,
                message: "expected `<name> = log(...)` or `<name> = int(...)`".into(),
            });
        };
        let lhs = content[..eq].trim();
        let lhs_tokens = tokenize(&content[..eq]).map_err(shift)?;
        let name = match lhs_tokens.as_slice() {
            [(_, Token::Ident(n))] if !is_reserved(n) => n.clone(),
            _ => {
                return Err(FrontendError::Syntax {
                    offset: start,
                    message: format!("`{lhs}` is not a valid generator name"),
                })
            }
        };
        if &name == base_name || declarations.iter().any(|(n, _)| *n == name) {
            return Err(FrontendError::DuplicateName { name, line: line_no });
        }
        let rhs_text = &content[eq + 1..];
        let rhs_start = start + eq + 1 + (rhs_text.len() - rhs_text.trim_start().len());
        let rhs_base = start + eq + 1;
        let rhs = parse_with(rhs_text, true, None).map_err(|e| match e {
            FrontendError::Syntax { offset, message } => FrontendError::Syntax {
                offset: offset + rhs_base,
                message,
            },
            other => other,
        })?;
        let decl = match rhs {
            Expr::Call(f, mut args) if args.len() == 1 && (f == "log" || f == "int") => {
                let arg = args.pop().expect("one argument");
                if f == "log" {
                    Declaration::Log(arg)
                } else {
                    Declaration::Int(arg)
                }
            }
            _ => {
                return Err(FrontendError::Syntax {
                    offset: rhs_start,
                    message: "right-hand side must be `log(<expr>)` or `int(<expr>)`".into(),
                })
            }
        };
        let arg = match &decl {
            Declaration::Log(e) | Declaration::Int(e) => e,
        };
        if contains_call(arg) {
            return Err(FrontendError::Syntax {
                offset: rhs_start,
                message: "nested `log`/`int` are not supported".into(),
            });
        }
        for used in arg.names() {
            if used != base_name && !declarations.iter().any(|(n, _)| n == used) {
                return Err(FrontendError::ForwardReference {
                    name: used.to_string(),
                    line: line_no,
                });
            }
        }
        declarations.push((name, decl));
    }
    let Some(base) = base else {
        return Err(FrontendError::Syntax {
            offset: text.len(),
            message: "missing `base <name>` line".into(),
        });
    };
    Ok(TowerFile { base, declarations })
}

fn contains_call(e: &Expr) -> bool {
    match e {
        Expr::Number(_) | Expr::Var(_) => false,
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
            contains_call(a) || contains_call(b)
        }
        Expr::Neg(a) | Expr::Pow(a, _) => contains_call(a),
        Expr::Call(..) => true,
    }
}

fn render_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    // highest variable last so that x*t1*t2^2 reads naturally
    for (v, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[v].clone()),
            _ => parts.push(format!("{}^{e}", names[v])),
        }
    }
    parts.join("*")
}

fn render_constant(c: &Constant) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical text for a polynomial: terms in decreasing order, highest
/// variable most significant.
pub fn render_polynomial(p: &Polynomial, names: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let negative = c.is_negative();
        let magnitude = c.abs();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mono = render_monomial(m, names);
        if mono.is_empty() {
            out.push_str(&render_constant(&magnitude));
        } else if magnitude.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&render_constant(&magnitude));
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

/// Canonical text for an element; re-parses to an equal element.
pub fn render(e: &Element, names: &[String]) -> String {
    let num = render_polynomial(e.num(), names);
    if e.den().is_one() {
        return num;
    }
    let num = if e.num().len() > 1 || num.contains('/') {
        format!("({num})")
    } else {
        num
    };
    let den = render_polynomial(e.den(), names);
    let single_factor = e.den().len() == 1 && !den.contains('*') && !den.contains('/');
    if single_factor {
        format!("{num}/{den}")
    } else {
        format!("{num}/({den})")
    }
}

/// Parses and evaluates `text` against the names of `file`.
pub fn parse_element(text: &str, file: &TowerFile) -> Result<Element, FrontendError> {
    let names = file.names();
    parse_expression(text, &names)?.evaluate(&file.variables())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        ["x", "t1", "t2"].iter().map(|s| s.to_string()).collect()
    }

    fn var(n: &str) -> Box<Expr> {
        Box::new(Expr::Var(n.into()))
    }

    fn num(n: i64) -> Box<Expr> {
        Box::new(Expr::Number(Constant::from_integer(n.into())))
    }

    #[test]
    fn grammar() {
        assert_eq!(
            parse_expression("1/x^2", &names()).unwrap(),
            Expr::Div(num(1), Box::new(Expr::Pow(var("x"), 2)))
        );
        assert_eq!(
            parse_expression("t1*t2^2", &names()).unwrap(),
            Expr::Mul(var("t1"), Box::new(Expr::Pow(var("t2"), 2)))
        );
        assert!(matches!(
            parse_expression("1/(x*t1) + 1/(x+2)", &names()).unwrap(),
            Expr::Add(..)
        ));
        // unary minus applies to the whole power
        assert_eq!(
            parse_expression("-x^2", &names()).unwrap(),
            Expr::Neg(Box::new(Expr::Pow(var("x"), 2)))
        );
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(
            parse_expression("x + y", &names()),
            Err(FrontendError::UnknownName { name: "y".into(), offset: 4 })
        );
        assert!(matches!(
            parse_expression("x + ", &names()),
            Err(FrontendError::Syntax { offset: 4, .. })
        ));
        assert!(matches!(
            parse_expression("x^t1", &names()),
            Err(FrontendError::Syntax { offset: 2, .. })
        ));
        assert!(matches!(
            parse_expression("x $ 2", &names()),
            Err(FrontendError::Syntax { offset: 2, .. })
        ));
    }

    #[test]
    fn tower_files() {
        let f = parse_tower("base x\nt1 = log(x)\nt2 = int(1/t1)\n").unwrap();
        assert_eq!(f.names(), names());
        assert!(f.build().unwrap().classification().is_straight());
        let f = parse_tower("# flat\nbase x\nt1 = log(x)   # first\nt2 = log(x+1)").unwrap();
        assert!(f.build().unwrap().classification().is_flat());
        assert_eq!(
            parse_tower("base x\nt2 = log(t3)"),
            Err(FrontendError::ForwardReference { name: "t3".into(), line: 2 })
        );
        assert_eq!(
            parse_tower("base x\nt1 = log(x)\nt1 = log(x+1)"),
            Err(FrontendError::DuplicateName { name: "t1".into(), line: 3 })
        );
        assert!(matches!(parse_tower("t1 = log(x)"), Err(FrontendError::Syntax { offset: 0, .. })));
        assert!(matches!(
            parse_tower("base x\nt1 = exp(x)"),
            Err(FrontendError::Syntax { offset: 12, .. })
        ));
    }

    #[test]
    fn rendering() {
        let f = parse_tower("base x\nt1 = log(x)\nt2 = int(1/t1)").unwrap();
        let n = f.names();
        let e = |s: &str| parse_element(s, &f).unwrap();
        assert_eq!(render(&e("-1/x"), &n), "-1/x");
        assert_eq!(render(&e("x*t1*t2^2 - x*t2^2 - x^2*t2"), &n), "x*t1*t2^2 - x*t2^2 - x^2*t2");
        assert_eq!(render(&e("(2*x/t1)*t2 + x^2/t1"), &n), "(2*x*t2 + x^2)/t1");
        assert_eq!(render(&e("1/(x*t2)"), &n), "1/(x*t2)");
        assert_eq!(render(&e("3/4*x - 1/2"), &n), "3/4*x - 1/2");
        assert_eq!(render(&e("0"), &n), "0");
        for s in ["-1/x", "(2*x*t2 + x^2)/t1", "1/(x*t2)", "3/4*x - 1/2", "-x/(x + 1)", "(3/4*x)/(t1 - 1)"] {
            assert_eq!(e(&render(&e(s), &n)), e(s), "{s}");
        }
    }
}
