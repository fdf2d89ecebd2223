//! Text form of series.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' INT]
//! atom   := INT ['/' INT] | IDENT | '(' expr ')'
//! ```
//!
//! Factors may be written in any order; multiplication applies the Koszul signs.
//! `Display` on [`Series`] prints the canonical form, which this parser reads back.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::series::Series;
use super::var::GradedVariable;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

impl Lexer {
    fn new(text: &str, line: usize, col0: usize) -> Result<Self> {
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let (pos, c) = chars[i];
            let col = col0 + text[..pos].chars().count();
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let simple = match c {
                '+' => Some(Tok::Plus),
                '-' => Some(Tok::Minus),
                '*' => Some(Tok::Star),
                '/' => Some(Tok::Slash),
                '^' => Some(Tok::Caret),
                '(' => Some(Tok::LParen),
                ')' => Some(Tok::RParen),
                _ => None,
            };
            if let Some(t) = simple {
                toks.push((t, col));
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|(_, c)| *c).collect();
                toks.push((Tok::Int(s.parse().expect("digits")), col));
            } else if is_ident_start(c) {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i].1) {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|(_, c)| *c).collect();
                toks.push((Tok::Ident(s), col));
            } else {
                return Err(Error::Syntax { line, col, msg: format!("unexpected character `{}`", c) });
            }
        }
        Ok(Lexer { toks })
    }
}

struct Parser<'a, F> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
    lookup: &'a F,
}

impl<'a, F> Parser<'a, F>
where
    F: Fn(&str) -> Option<GradedVariable>,
{
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { line: self.line, col: self.col(), msg: msg.into() }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Series> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                negate = true;
            }
            Some(Tok::Plus) => {
                self.bump();
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
                    self.bump();
                    acc = acc + self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Series> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Series> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => {
                    self.pos -= 1;
                    return Err(self.err("expected a nonnegative integer exponent"));
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Series> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Int(n)) => {
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Int(d)) if !d.is_zero() => Ok(Series::constant(BigRational::new(n, d))),
                        _ => {
                            self.pos -= 1;
                            Err(self.err("expected a nonzero integer denominator"))
                        }
                    }
                } else {
                    Ok(Series::constant(BigRational::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => match (self.lookup)(&name) {
                Some(v) => Ok(Series::var(&v)),
                None => Err(Error::UnknownName { line: self.line, col, name }),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => {
                        self.pos -= 1;
                        Err(self.err("expected `)`"))
                    }
                }
            }
            Some(_) => {
                self.pos -= 1;
                Err(self.err("expected a number, a variable or `(`"))
            }
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

/// Parse an expression, resolving variable names through `lookup`.
pub fn parse_series<F>(text: &str, lookup: &F) -> Result<Series>
where
    F: Fn(&str) -> Option<GradedVariable>,
{
    parse_series_at(text, 1, 1, lookup)
}

/// As [`parse_series`], reporting error positions relative to `line`/`col`.
pub fn parse_series_at<F>(text: &str, line: usize, col: usize, lookup: &F) -> Result<Series>
where
    F: Fn(&str) -> Option<GradedVariable>,
{
    let lexer = Lexer::new(text, line, col)?;
    let end_col = col + text.chars().count();
    let mut p = Parser { toks: lexer.toks, pos: 0, line, end_col, lookup };
    let s = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::series::{rat, ratio};

    fn vars() -> Vec<GradedVariable> {
        vec![GradedVariable::even("x", 0, 0), GradedVariable::odd("xi1", 1, 1), GradedVariable::odd("xi2", 1, 2)]
    }

    fn lookup(name: &str) -> Option<GradedVariable> {
        vars().into_iter().find(|v| v.name() == name)
    }

    #[test]
    fn parses_and_signs() {
        let s = parse_series("xi2*xi1 + 3/2*x^2", &lookup).unwrap();
        let [x, a, b] = <[GradedVariable; 3]>::try_from(vars()).unwrap();
        let expected = Series::var(&b) * Series::var(&a) + Series::var(&x).pow(2).scale(&ratio(3, 2));
        assert_eq!(s, expected);
        assert_eq!(s.to_string(), "3/2*x^2 - xi1*xi2");
        assert_eq!(parse_series("0", &lookup).unwrap(), Series::zero());
        assert_eq!(parse_series("1", &lookup).unwrap(), Series::one());
        assert_eq!(parse_series("-(x - 2)", &lookup).unwrap(), Series::constant(rat(2)) - Series::var(&x));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_series("x + foo", &lookup) {
            Err(Error::UnknownName { col, name, .. }) => {
                assert_eq!(col, 5);
                assert_eq!(name, "foo");
            }
            other => panic!("{:?}", other),
        }
        assert!(matches!(parse_series("x +", &lookup), Err(Error::Syntax { .. })));
        assert!(matches!(parse_series("1/0", &lookup), Err(Error::Syntax { .. })));
        assert!(matches!(parse_series("x $ 1", &lookup), Err(Error::Syntax { col: 3, .. })));
    }

    #[test]
    fn display_round_trips() {
        for text in ["0", "1", "-x", "x - 1/3", "-2*x*xi1*xi2 + 7/5*xi1", "x^3 + 2"] {
            let s = parse_series(text, &lookup).unwrap();
            let again = parse_series(&s.to_string(), &lookup).unwrap();
            assert_eq!(s, again, "{}", text);
        }
    }
}
