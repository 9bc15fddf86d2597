//! Parser for correction terms `a(n)` written the way they appear in print,
//! e.g. `1/(12n) - 1/(360n^3+103n)` or `1/(12n+2/(5n)-0.9/(10n^3))`.
//!
//! Grammar (version 1):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/' | <implicit>) factor)*
//! factor := ['-'] atom ['^' uint]
//! atom   := number | 'n' | '(' expr ')'
//! number := digits ['.' digits]
//! ```
//!
//! Implicit multiplication is accepted only directly after a number and only
//! before `n` or `(`, as in `12n`, `10n^3` and `2(2n+1)`. Decimal literals
//! are exact rationals. Exponents must be positive integers.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{terminating_decimal, ExactError, Poly, Rat, RatFunc};

pub const GRAMMAR_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    /// Nonnegative literal; parsing never produces negative literals.
    Lit(Rat),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: expected {}", expected.join(" or "))]
    Syntax {
        offset: usize,
        expected: Vec<&'static str>,
    },
    #[error("exponent at byte {offset} must be a positive integer")]
    BadExponent { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::BadExponent { offset } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LowerError {
    #[error("division by an identically zero expression")]
    ZeroDivisor,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Lower(#[from] LowerError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(Rat),
    N,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Returns the token and the byte offset where it starts.
    fn next(&mut self) -> Result<(Tok, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let Some(&c) = self.src.get(self.pos) else {
            return Ok((Tok::End, start));
        };
        let tok = match c {
            b'0'..=b'9' | b'.' => return self.number(start).map(|t| (t, start)),
            b'n' => Tok::N,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                return Err(ParseError::Syntax {
                    offset: start,
                    expected: vec!["number", "'n'", "operator", "parenthesis"],
                })
            }
        };
        self.pos += 1;
        Ok((tok, start))
    }

    fn number(&mut self, start: usize) -> Result<Tok, ParseError> {
        let digits = |lx: &mut Self| {
            let s = lx.pos;
            while lx.pos < lx.src.len() && lx.src[lx.pos].is_ascii_digit() {
                lx.pos += 1;
            }
            lx.pos - s
        };
        let whole = digits(self);
        let mut frac_len = 0;
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            frac_len = digits(self);
            if frac_len == 0 {
                return Err(ParseError::Syntax {
                    offset: self.pos,
                    expected: vec!["digit"],
                });
            }
        }
        if whole == 0 && frac_len == 0 {
            return Err(ParseError::Syntax {
                offset: start,
                expected: vec!["digit"],
            });
        }
        let text: String = std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .chars()
            .filter(|c| *c != '.')
            .collect();
        let mantissa: BigInt = text.parse().expect("digits only");
        let scale = num_traits::pow(BigInt::from(10), frac_len);
        Ok(Tok::Num(Rat::new(mantissa, scale)))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    at: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Result<Self, ParseError> {
        let mut lexer = Lexer {
            src: text.as_bytes(),
            pos: 0,
        };
        let (tok, at) = lexer.next()?;
        Ok(Parser { lexer, tok, at })
    }

    fn bump(&mut self) -> Result<(), ParseError> {
        let (tok, at) = self.lexer.next()?;
        self.tok = tok;
        self.at = at;
        Ok(())
    }

    fn fail<T>(&self, expected: Vec<&'static str>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            offset: self.at,
            expected,
        })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let ctor: fn(Box<Expr>, Box<Expr>) -> Expr = match self.tok {
                Tok::Plus => Expr::Add,
                Tok::Minus => Expr::Sub,
                _ => return Ok(lhs),
            };
            self.bump()?;
            let rhs = self.term()?;
            lhs = ctor(Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let (mut lhs, mut ends_in_number) = self.factor()?;
        loop {
            let ctor: fn(Box<Expr>, Box<Expr>) -> Expr = match self.tok {
                Tok::Star => {
                    self.bump()?;
                    Expr::Mul
                }
                Tok::Slash => {
                    self.bump()?;
                    Expr::Div
                }
                Tok::N | Tok::LParen if ends_in_number => Expr::Mul,
                _ => return Ok(lhs),
            };
            let (rhs, num) = self.factor()?;
            ends_in_number = num;
            lhs = ctor(Box::new(lhs), Box::new(rhs));
        }
    }

    /// Returns the factor and whether it was a bare number (which may be
    /// followed by implicit multiplication).
    fn factor(&mut self) -> Result<(Expr, bool), ParseError> {
        let negate = if self.tok == Tok::Minus {
            self.bump()?;
            true
        } else {
            false
        };
        let (mut base, mut bare_number) = self.atom()?;
        if self.tok == Tok::Caret {
            self.bump()?;
            let offset = self.at;
            match &self.tok {
                Tok::Num(k) if k.is_integer() => {
                    let k = k.to_integer();
                    let k: u32 = k
                        .try_into()
                        .ok()
                        .filter(|&k| k >= 1)
                        .ok_or(ParseError::BadExponent { offset })?;
                    self.bump()?;
                    base = Expr::Pow(Box::new(base), k);
                    bare_number = false;
                }
                Tok::Num(_) | Tok::Minus => return Err(ParseError::BadExponent { offset }),
                _ => return self.fail(vec!["positive integer exponent"]),
            }
        }
        if negate {
            base = Expr::Neg(Box::new(base));
        }
        Ok((base, bare_number))
    }

    fn atom(&mut self) -> Result<(Expr, bool), ParseError> {
        match std::mem::replace(&mut self.tok, Tok::End) {
            Tok::Num(v) => {
                self.bump()?;
                Ok((Expr::Lit(v), true))
            }
            Tok::N => {
                self.bump()?;
                Ok((Expr::Var, false))
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr()?;
                if self.tok != Tok::RParen {
                    return self.fail(vec!["')'", "operator"]);
                }
                self.bump()?;
                Ok((inner, false))
            }
            other => {
                self.tok = other;
                self.fail(vec!["number", "'n'", "'('"])
            }
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    if p.tok != Tok::End {
        return p.fail(vec!["operator", "end of input"]);
    }
    Ok(e)
}

/// Convenience: parse and lower in one step.
pub fn parse_ratfunc(text: &str) -> Result<RatFunc, ExprError> {
    Ok(lower_to_ratfunc(&parse_expr(text)?)?)
}

pub fn lower_to_ratfunc(ast: &Expr) -> Result<RatFunc, LowerError> {
    Ok(match ast {
        Expr::Lit(v) => RatFunc::constant(v.clone()),
        Expr::Var => RatFunc::from_poly(Poly::var()),
        Expr::Neg(e) => -&lower_to_ratfunc(e)?,
        Expr::Add(a, b) => &lower_to_ratfunc(a)? + &lower_to_ratfunc(b)?,
        Expr::Sub(a, b) => &lower_to_ratfunc(a)? - &lower_to_ratfunc(b)?,
        Expr::Mul(a, b) => &lower_to_ratfunc(a)? * &lower_to_ratfunc(b)?,
        Expr::Div(a, b) => {
            let d = lower_to_ratfunc(b)?;
            if d.is_zero() {
                return Err(LowerError::ZeroDivisor);
            }
            lower_to_ratfunc(a)?.checked_div(&d)?
        }
        Expr::Pow(b, k) => lower_to_ratfunc(b)?.pow(*k),
    })
}

impl Expr {
    /// Direct interpretation at a rational point, without going through
    /// rational-function normalization.
    pub fn eval(&self, x: &Rat) -> Result<Rat, ExactError> {
        Ok(match self {
            Expr::Lit(v) => v.clone(),
            Expr::Var => x.clone(),
            Expr::Neg(e) => -e.eval(x)?,
            Expr::Add(a, b) => a.eval(x)? + b.eval(x)?,
            Expr::Sub(a, b) => a.eval(x)? - b.eval(x)?,
            Expr::Mul(a, b) => a.eval(x)? * b.eval(x)?,
            Expr::Div(a, b) => {
                let d = b.eval(x)?;
                if d.is_zero() {
                    return Err(ExactError::Pole(x.clone()));
                }
                a.eval(x)? / d
            }
            Expr::Pow(b, k) => {
                let v = b.eval(x)?;
                (0..*k).fold(Rat::one(), |acc, _| acc * &v)
            }
        })
    }
}

#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Level {
    Expr,
    Term,
    Factor,
}

impl Expr {
    fn level(&self) -> Level {
        match self {
            Expr::Add(..) | Expr::Sub(..) => Level::Expr,
            Expr::Mul(..) | Expr::Div(..) => Level::Term,
            _ => Level::Factor,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, need: Level) -> fmt::Result {
        if self.level() < need {
            write!(f, "(")?;
            self.write_at(f, Level::Expr)?;
            return write!(f, ")");
        }
        match self {
            Expr::Lit(v) => match terminating_decimal(v) {
                Some(d) if !d.starts_with('-') => write!(f, "{d}"),
                _ => write!(f, "({}/{})", v.numer(), v.denom()),
            },
            Expr::Var => write!(f, "n"),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write_at(f, Level::Expr)?;
                write!(f, "{}", if matches!(self, Expr::Add(..)) { "+" } else { "-" })?;
                b.write_at(f, Level::Term)
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.write_at(f, Level::Term)?;
                write!(f, "{}", if matches!(self, Expr::Mul(..)) { "*" } else { "/" })?;
                b.write_at(f, Level::Factor)
            }
            Expr::Neg(e) => {
                write!(f, "-")?;
                e.write_atom_or_power(f)
            }
            Expr::Pow(..) => self.write_atom_or_power(f),
        }
    }

    /// Writes something that fits `atom ['^' uint]`.
    fn write_atom_or_power(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Pow(b, k) => {
                b.write_atom(f)?;
                write!(f, "^{k}")
            }
            e => e.write_atom(f),
        }
    }

    fn write_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var => write!(f, "n"),
            Expr::Lit(v) if terminating_decimal(v).is_some_and(|d| !d.starts_with('-')) => {
                self.write_at(f, Level::Factor)
            }
            e => {
                write!(f, "(")?;
                e.write_at(f, Level::Expr)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Expr {
    /// Minimal-parenthesis rendering that reparses to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, Level::Expr)
    }
}

impl Expr {
    pub fn is_zero_literal(&self) -> bool {
        matches!(self, Expr::Lit(v) if v.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn lit(v: i64) -> Box<Expr> {
        Box::new(Expr::Lit(int(v)))
    }

    #[test]
    fn robbins_lower_term() {
        let e = parse_expr("1/(12n+1)").unwrap();
        let expected = Expr::Div(
            lit(1),
            Box::new(Expr::Add(
                Box::new(Expr::Mul(lit(12), Box::new(Expr::Var))),
                lit(1),
            )),
        );
        assert_eq!(e, expected);
        assert!(parse_expr("0").unwrap().is_zero_literal());
    }

    #[test]
    fn two_term_family_parses() {
        let e = parse_expr("1/(12n) - 1/(360n^3+103n)").unwrap();
        assert!(matches!(e, Expr::Sub(..)));
        let f = lower_to_ratfunc(&e).unwrap();
        assert_eq!(f.num(), &Poly::from_ints(&[91, 0, 360]));
    }

    #[test]
    fn lowering_examples() {
        let f = parse_ratfunc("0.9/(10n^3)").unwrap();
        assert_eq!(f.num(), &Poly::from_ints(&[9]));
        assert_eq!(f.den(), &Poly::from_ints(&[0, 0, 0, 100]));

        let f = parse_ratfunc("1/(12n+3/(2(2n+1)))").unwrap();
        assert_eq!(f.num(), &Poly::from_ints(&[2, 4]));
        assert_eq!(f.den(), &Poly::from_ints(&[3, 24, 48]));
        assert_eq!(f.eval(&int(1)).unwrap(), rat(2, 25));

        assert_eq!(parse_ratfunc("n/n").unwrap(), RatFunc::constant(int(1)));
    }

    #[test]
    fn precedence() {
        // pow > unary minus > mul/div > add/sub
        let e = parse_expr("-n^2").unwrap();
        assert_eq!(e.eval(&int(3)).unwrap(), int(-9));
        let e = parse_expr("2-3-4").unwrap();
        assert_eq!(e.eval(&int(0)).unwrap(), int(-5));
        let e = parse_expr("12/3/2").unwrap();
        assert_eq!(e.eval(&int(0)).unwrap(), int(2));
        let e = parse_expr("10n^3").unwrap();
        assert_eq!(e.eval(&int(2)).unwrap(), int(80));
    }

    #[test]
    fn errors_carry_offsets() {
        let err = parse_expr("1/(12n+").unwrap_err();
        assert_eq!(err.offset(), 7);
        let err = parse_expr("n^0").unwrap_err();
        assert_eq!(err, ParseError::BadExponent { offset: 2 });
        assert!(matches!(parse_expr("n^-1"), Err(ParseError::BadExponent { .. })));
        assert!(matches!(parse_expr("n^1.5"), Err(ParseError::BadExponent { .. })));
        // implicit multiplication only after a number
        assert_eq!(parse_expr("n n").unwrap_err().offset(), 2);
        assert_eq!(parse_expr("(n)(n)").unwrap_err().offset(), 3);
        assert!(parse_expr("1 $ 2").is_err());
        assert!(parse_expr("").is_err());
        assert_eq!(
            lower_to_ratfunc(&parse_expr("1/(n-n)").unwrap()),
            Err(LowerError::ZeroDivisor)
        );
    }

    #[test]
    fn printing_reparses_catalog_forms() {
        for text in [
            "1/(12n)",
            "1/(12n+1)",
            "1/(12n+3/(2(2n+1)))",
            "1/(12n+2/(5n)-0.9/(10n^3))",
            "1/(12n+2/(5n)-1.1/(10n^3))",
            "1/(12n)-1/(360n^3+103n)",
            "1/(12n)-1/(360n^3)+1/(1260n^5)-1/(1680n^7+2375n^5)",
            "-(n+1)^2*-3",
            "--n",
        ] {
            let Ok(e) = parse_expr(text) else {
                assert_eq!(text, "--n", "{text}");
                continue;
            };
            let printed = e.to_string();
            assert_eq!(parse_expr(&printed).unwrap(), e, "{text} -> {printed}");
        }
    }

    fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
        if depth == 0 || rng.gen_ratio(1, 4) {
            return if rng.gen_bool(0.5) {
                Expr::Var
            } else {
                let v = rat(rng.gen_range(0..200), [1, 2, 4, 5, 10, 100][rng.gen_range(0..6)]);
                Expr::Lit(v)
            };
        }
        let a = Box::new(random_expr(rng, depth - 1));
        match rng.gen_range(0..6) {
            0 => Expr::Neg(a),
            1 => Expr::Add(a, Box::new(random_expr(rng, depth - 1))),
            2 => Expr::Sub(a, Box::new(random_expr(rng, depth - 1))),
            3 => Expr::Mul(a, Box::new(random_expr(rng, depth - 1))),
            4 => Expr::Div(a, Box::new(random_expr(rng, depth - 1))),
            _ => Expr::Pow(a, rng.gen_range(1..4)),
        }
    }

    #[test]
    fn random_trees_print_parse_and_lower_consistently() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 50 {
            let e = random_expr(&mut rng, 4);
            let printed = e.to_string();
            assert_eq!(parse_expr(&printed).unwrap(), e, "{printed}");
            let Ok(f) = lower_to_ratfunc(&e) else { continue };
            checked += 1;
            for _ in 0..10 {
                let x = rat(rng.gen_range(-60..60), rng.gen_range(1..9));
                if let Ok(direct) = e.eval(&x) {
                    assert_eq!(f.eval(&x).unwrap(), direct, "{printed} at {x}");
                }
            }
        }
    }
}
