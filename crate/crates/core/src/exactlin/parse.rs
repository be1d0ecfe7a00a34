//! Parser for polynomial expressions.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := base ('^' uint)?
//! base   := int | ident | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant. Division is only allowed by a nonzero
//! constant, so printed rational coefficients such as `-1/2*x` read back.

use num::{BigInt, One, Zero};

use super::poly::{Rational, SparsePolynomial};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        position,
        message: message.into(),
    }
}

impl Lexer {
    fn run(text: &str) -> Result<Self> {
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let (pos, c) = chars[i];
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                let v: BigInt = digits.parse().expect("ascii digits");
                toks.push((Tok::Int(v), pos));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                let name: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                toks.push((Tok::Ident(name), pos));
            } else if "+-*/^()".contains(c) {
                toks.push((Tok::Sym(c), pos));
                i += 1;
            } else {
                return Err(syntax(pos, format!("unexpected character `{c}`")));
            }
        }
        toks.push((Tok::End, text.len()));
        Ok(Lexer { toks })
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<SparsePolynomial> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SparsePolynomial> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if *self.peek() == Tok::Sym('/') {
                let pos = self.pos();
                self.bump();
                let d = self.factor()?;
                let c = match d.degree() {
                    Some(0) => d
                        .terms()
                        .next()
                        .map(|(_, c)| c.clone())
                        .expect("constant term"),
                    None => return Err(syntax(pos, "division by zero")),
                    Some(_) => return Err(syntax(pos, "division by a non-constant")),
                };
                acc = acc.scale(&(Rational::one() / c));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<SparsePolynomial> {
        let base = self.base()?;
        if self.eat('^') {
            let pos = self.pos();
            match self.bump() {
                Tok::Int(k) => {
                    let k: u32 = k
                        .try_into()
                        .map_err(|_| syntax(pos, "exponent too large"))?;
                    Ok(base.pow(k))
                }
                _ => Err(syntax(pos, "expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<SparsePolynomial> {
        let n = self.vars.len();
        let pos = self.pos();
        match self.bump() {
            Tok::Int(v) => Ok(SparsePolynomial::constant(n, Rational::from_integer(v))),
            Tok::Ident(name) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Ok(SparsePolynomial::var(n, i)),
                None => Err(Error::UnknownIdentifier(name)),
            },
            Tok::Sym('(') => {
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(syntax(self.pos(), "expected `)`"));
                }
                Ok(inner)
            }
            Tok::End => Err(syntax(pos, "unexpected end of input")),
            Tok::Sym(c) => Err(syntax(pos, format!("unexpected `{c}`"))),
        }
    }
}

/// Parses `text` as a polynomial in the declared variables.
pub fn parse_poly(text: &str, vars: &[String]) -> Result<SparsePolynomial> {
    let lexer = Lexer::run(text)?;
    let mut p = Parser {
        toks: lexer.toks,
        at: 0,
        vars,
    };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.pos(), "trailing input"));
    }
    // a bare `0` still carries the variable count
    if out.is_zero() {
        return Ok(SparsePolynomial::zero(vars.len()));
    }
    debug_assert!(!out.terms().any(|(_, c)| c.is_zero()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::poly::Exponents;
    use proptest::prelude::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn square_of_difference() {
        let vars = names(&["x1", "x2"]);
        let p = parse_poly("(x1-x2)^2", &vars).unwrap();
        let q = parse_poly("x1^2 - 2*x1*x2 + x2^2", &vars).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.term_count(), 3);
    }

    #[test]
    fn monomial() {
        let vars = names(&["s", "t", "u", "v"]);
        let p = parse_poly("s*u", &vars).unwrap();
        assert_eq!(p.term_count(), 1);
        let (e, c) = p.terms().next().unwrap();
        assert_eq!(e, &vec![1, 0, 1, 0]);
        assert!(c.is_one());
    }

    #[test]
    fn dangling_caret_is_syntax_error() {
        let vars = names(&["x"]);
        match parse_poly("x^", &vars) {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_identifier() {
        let vars = names(&["x"]);
        assert_eq!(
            parse_poly("x + y", &vars),
            Err(Error::UnknownIdentifier("y".into()))
        );
    }

    #[test]
    fn other_errors() {
        let vars = names(&["x"]);
        assert!(matches!(
            parse_poly("(x+1", &vars),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_poly("x/x", &vars),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_poly("x/0", &vars),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_poly("x $ 1", &vars),
            Err(Error::Syntax { position: 2, .. })
        ));
        assert!(matches!(parse_poly("", &vars), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_poly("x x", &vars),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn whitespace_and_zero() {
        let vars = names(&["a", "b"]);
        let p = parse_poly("  a *b -   b * a ", &vars).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.nvars(), 2);
        assert_eq!(
            parse_poly("-1/2*a", &vars).unwrap().to_string_with(&vars),
            "-1/2*a"
        );
    }

    fn arb_poly() -> impl Strategy<Value = SparsePolynomial> {
        let term = (prop::collection::vec(0u32..4, 3), -20i64..20, 1i64..4);
        prop::collection::vec(term, 0..6).prop_map(|ts| {
            SparsePolynomial::from_terms(
                3,
                ts.into_iter()
                    .map(|(e, n, d): (Exponents, i64, i64)| (e, Rational::new(n.into(), d.into()))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn print_then_parse_is_identity(p in arb_poly()) {
            let vars = names(&["x", "y", "z"]);
            let text = p.to_string_with(&vars);
            prop_assert_eq!(parse_poly(&text, &vars).unwrap(), p);
        }
    }
}
