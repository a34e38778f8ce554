use thiserror::Error;

use super::{Identity, Term};
use crate::groupoid::LocalKind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, msg: msg.into() })
}

#[derive(Debug, Clone, Copy)]
enum BinOp {
    Mul,
    LDiv,
    RDiv,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == ch => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => err(self.pos, format!("expected `{}`, found `{}`", ch as char, c as char)),
            None => err(self.pos, format!("expected `{}`, found end of input", ch as char)),
        }
    }

    fn binop(&mut self) -> Option<BinOp> {
        let op = match self.peek()? {
            b'*' => BinOp::Mul,
            b'\\' => BinOp::LDiv,
            b'/' => BinOp::RDiv,
            _ => return None,
        };
        self.pos += 1;
        Some(op)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let left = self.factor()?;
        let Some(op) = self.binop() else {
            return Ok(left);
        };
        let right = self.factor()?;
        let at = self.pos;
        if self.binop().is_some() {
            return err(at, "ambiguous operator chain; parenthesize each product");
        }
        Ok(match op {
            BinOp::Mul => Term::prod(left, right),
            BinOp::LDiv => Term::ldiv(left, right),
            BinOp::RDiv => Term::rdiv(left, right),
        })
    }

    fn factor(&mut self) -> Result<Term, ParseError> {
        let start = match self.peek() {
            Some(_) => self.pos,
            None => return err(self.pos, "expected a term, found end of input"),
        };
        let c = self.src[start];
        if c == b'(' {
            self.pos += 1;
            let t = self.term()?;
            self.expect(b')')?;
            return self.reject_juxtaposition(t);
        }
        if !c.is_ascii_lowercase() {
            return err(start, format!("unexpected `{}`", c as char));
        }
        let mut end = start;
        while end < self.src.len() && self.src[end].is_ascii_lowercase() {
            end += 1;
        }
        let word = std::str::from_utf8(&self.src[start..end]).expect("ascii");
        self.pos = end;
        let kind = match word {
            "rho" => Some(LocalKind::Rho),
            "lam" => Some(LocalKind::Lambda),
            "er" => Some(LocalKind::ERho),
            "el" => Some(LocalKind::ELambda),
            _ => None,
        };
        match kind {
            Some(kind) => {
                self.expect(b'(')?;
                let inner = self.term()?;
                self.expect(b')')?;
                self.reject_juxtaposition(Term::unary(kind, inner))
            }
            None if word.len() == 1 => self.reject_juxtaposition(Term::var(word.as_bytes()[0] as char)),
            None => err(start, format!("`{word}` is not a variable; products need an explicit `*`")),
        }
    }

    /// A factor followed directly by another factor is an implicit product.
    fn reject_juxtaposition(&mut self, t: Term) -> Result<Term, ParseError> {
        match self.peek() {
            Some(c) if c == b'(' || c.is_ascii_lowercase() => {
                err(self.pos, "juxtaposition is not a product; write `*` explicitly")
            }
            _ => Ok(t),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => err(self.pos, format!("unexpected trailing `{}`", c as char)),
        }
    }
}

/// Parses a single term such as `rho(x*y)`.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Parses `lhs = rhs`.
pub fn parse(text: &str) -> Result<Identity, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let lhs = p.term()?;
    p.expect(b'=')?;
    let rhs = p.term()?;
    p.finish()?;
    Ok(Identity::new(lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(c: char) -> Term {
        Term::var(c)
    }

    #[test]
    fn associative_law() {
        let id = parse("(x*y)*z = x*(y*z)").unwrap();
        assert_eq!(id.lhs, Term::prod(Term::prod(v('x'), v('y')), v('z')));
        assert_eq!(id.rhs, Term::prod(v('x'), Term::prod(v('y'), v('z'))));
    }

    #[test]
    fn cross_inverse_form() {
        let id = parse("(x*y)*rho(x) = y").unwrap();
        assert_eq!(id.lhs, Term::prod(Term::prod(v('x'), v('y')), Term::unary(LocalKind::Rho, v('x'))));
        assert_eq!(id.rhs, v('y'));
    }

    #[test]
    fn divisions_and_local_identities() {
        let id = parse(r"x*(y*z) = (x*y)*((x\x)*z)").unwrap();
        assert_eq!(id.canonical(), r"(x*(y*z)) = ((x*y)*((x\x)*z))");
        let t = parse_term("(z*(x/x))*(y*x)").unwrap();
        assert_eq!(t.canonical(), "((z*(x/x))*(y*x))");
        let t = parse_term("el(x)*y").unwrap();
        assert_eq!(t, Term::prod(Term::unary(LocalKind::ELambda, v('x')), v('y')));
    }

    #[test]
    fn unparenthesized_chain_rejected() {
        let e = parse("x*(y*z) = el(x)*y * (x*z)").unwrap_err();
        assert_eq!(e.pos, 18);
        assert!(parse_term("x*y*z").is_err());
        assert!(parse_term(r"x\y/z").is_err());
    }

    #[test]
    fn juxtaposition_rejected() {
        assert!(parse("xy = yx").is_err());
        assert!(parse("(x*y)(y*x) = y").is_err());
        assert!(parse("x(y*z) = z").is_err());
        assert!(parse("x y = y").is_err());
    }

    #[test]
    fn malformed_inputs() {
        for (src, pos) in [
            ("", 0),
            ("x*y", 3),
            ("x*y =", 5),
            ("(x*y = y", 5),
            ("x = y)", 5),
            ("rho x = x", 4),
            ("foo(x) = x", 0),
            ("x + y = y", 2),
            ("X*y = y", 0),
        ] {
            let e = parse(src).unwrap_err();
            assert_eq!(e.pos, pos, "{src:?}: {e}");
        }
    }

    fn arb_term() -> impl Strategy<Value = Term> {
        let leaf = prop::sample::select(vec!['x', 'y', 'z', 'w', 'a', 'q']).prop_map(Term::var);
        leaf.prop_recursive(6, 64, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Term::prod(l, r)),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Term::ldiv(l, r)),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Term::rdiv(l, r)),
                inner.clone().prop_map(|t| Term::unary(LocalKind::Rho, t)),
                inner.clone().prop_map(|t| Term::unary(LocalKind::Lambda, t)),
                inner.clone().prop_map(|t| Term::unary(LocalKind::ERho, t)),
                inner.prop_map(|t| Term::unary(LocalKind::ELambda, t)),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn print_then_parse_is_identity(t in arb_term()) {
            prop_assume!(t.depth() <= 6);
            let printed = t.canonical();
            prop_assert_eq!(parse_term(&printed).unwrap(), t);
        }
    }
}
