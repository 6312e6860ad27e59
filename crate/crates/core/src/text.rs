//! Canonical text rendering of polynomials and rational functions, and the
//! expression parser that reads it back.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{Monomial, Poly, RatFunc, Rational, Symbol};

fn render_monomial(m: &Monomial) -> String {
    m.factors()
        .iter()
        .map(|(s, e)| if *e == 1 { s.to_string() } else { format!("{s}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

/// One term without its sign: `3*a1*t/2`, `t^2`, `1/2`.
fn render_term_abs(m: &Monomial, c: &Rational) -> String {
    let c = c.abs();
    let (n, d) = (c.numer(), c.denom());
    let mut s = if m.is_one() {
        n.to_string()
    } else if n.is_one() {
        render_monomial(m)
    } else {
        format!("{n}*{}", render_monomial(m))
    };
    if !d.is_one() {
        s.push('/');
        s.push_str(&d.to_string());
    }
    s
}

/// Terms in descending graded-lexicographic order, e.g. `-t1 + 1`.
pub fn render_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&render_term_abs(m, c));
    }
    out
}

fn is_atomic(p: &Poly) -> bool {
    if p.num_terms() != 1 {
        return false;
    }
    let (m, c) = p.leading_term().expect("one term");
    c.is_one() && m.factors().len() <= 1 || m.is_one() && c.is_integer() && !c.is_negative()
}

pub fn render_ratfunc(f: &RatFunc) -> String {
    if f.den().is_one() {
        return render_poly(f.num());
    }
    let num = if f.num().num_terms() == 1 && !f.num().leading_coeff().is_negative() {
        let (m, c) = f.num().leading_term().expect("one term");
        if c.is_integer() || m.is_one() {
            render_poly(f.num())
        } else {
            format!("({})", render_poly(f.num()))
        }
    } else {
        format!("({})", render_poly(f.num()))
    };
    let den = if is_atomic(f.den()) { render_poly(f.den()) } else { format!("({})", render_poly(f.den())) };
    format!("{num}/{den}")
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("column {col}: {message}")]
pub struct ExprError {
    /// 1-based character column within the parsed text.
    pub col: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
    End,
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Num(s.parse().expect("digits")), start + 1));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start + 1));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i + 1));
            i += 1;
        } else {
            return Err(ExprError { col: i + 1, message: format!("unexpected character '{c}'") });
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    resolve: &'a dyn Fn(&str) -> Option<Symbol>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError { col: self.col(), message: msg.into() })
    }

    fn expr(&mut self) -> Result<RatFunc, ExprError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Tok::Op('-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, ExprError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Tok::Op('/') => {
                    self.pos += 1;
                    let col = self.col();
                    let rhs = self.unary()?;
                    acc = acc
                        .checked_div(&rhs)
                        .map_err(|e| ExprError { col, message: e.to_string() })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, ExprError> {
        match self.peek() {
            Tok::Op('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Tok::Op('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc, ExprError> {
        let base = self.atom()?;
        if self.peek() != &Tok::Op('^') {
            return Ok(base);
        }
        self.pos += 1;
        let col = self.col();
        let neg = if self.peek() == &Tok::Op('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let Tok::Num(n) = self.peek().clone() else {
            return self.err("expected integer exponent");
        };
        self.pos += 1;
        let e = n
            .to_i32()
            .filter(|e| *e <= 10_000)
            .ok_or_else(|| ExprError { col, message: "exponent too large".into() })?;
        let e = if neg { -e } else { e };
        base.pow(e).map_err(|e| ExprError { col, message: e.to_string() })
    }

    fn atom(&mut self) -> Result<RatFunc, ExprError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.pos += 1;
                Ok(RatFunc::constant(Rational::from_integer(n)))
            }
            Tok::Ident(name) => match (self.resolve)(&name) {
                Some(s) => {
                    self.pos += 1;
                    Ok(RatFunc::var(s))
                }
                None => self.err(format!("unknown symbol '{name}'")),
            },
            Tok::Op('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != &Tok::Op(')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Tok::End => self.err("unexpected end of expression"),
            Tok::Op(c) => self.err(format!("unexpected '{c}'")),
        }
    }
}

/// Parses an expression over `+ - * / ^`, parentheses, integers and the
/// identifiers accepted by `resolve`.
pub fn parse_expr(src: &str, resolve: &dyn Fn(&str) -> Option<Symbol>) -> Result<RatFunc, ExprError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, resolve };
    let v = p.expr()?;
    if p.peek() != &Tok::End {
        return p.err("trailing input");
    }
    Ok(v)
}

/// Resolver treating `a<digits>` as parameters and everything else as
/// variables; convenient for tests and the form option of the CLI.
pub fn default_resolver(name: &str) -> Option<Symbol> {
    let is_param = name.len() > 1 && name.starts_with('a') && name[1..].chars().all(|c| c.is_ascii_digit());
    Some(if is_param { Symbol::param(name) } else { Symbol::var(name) })
}

/// Shorthand for [`parse_expr`] with [`default_resolver`]. Panics on error.
pub fn rf(src: &str) -> RatFunc {
    parse_expr(src, &default_resolver).unwrap_or_else(|e| panic!("bad expression {src:?}: {e}"))
}

#[allow(dead_code)]
fn is_zero_rational(r: &Rational) -> bool {
    r.is_zero()
}
