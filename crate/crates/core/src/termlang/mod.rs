//! Identity terms: AST, parser, canonical printer and direct evaluation.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! identity := term "=" term
//! term     := factor (("*" | "\" | "/") factor)?
//! factor   := var | "(" term ")" | fn "(" term ")"
//! fn       := "rho" | "lam" | "er" | "el"
//! var      := [a-z]
//! ```
//!
//! A term holds at most one binary operator outside parentheses, so
//! `x*y*z` is rejected rather than silently associated.

mod affine;
mod parse;

pub use affine::{expand_affine, AffineForm};
pub use parse::{parse, parse_term, ParseError};

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::groupoid::{LinearGroupoid, LocalElement, LocalKind, Undefined};
use crate::modring::{Residue, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(char),
    Prod(Box<Term>, Box<Term>),
    /// `l \ r`: the `w` with `l ∘ w = r`.
    LDiv(Box<Term>, Box<Term>),
    /// `l / r`: the `w` with `w ∘ r = l`.
    RDiv(Box<Term>, Box<Term>),
    Rho(Box<Term>),
    Lambda(Box<Term>),
    ERho(Box<Term>),
    ELambda(Box<Term>),
}

impl Term {
    pub fn var(name: char) -> Self {
        Term::Var(name)
    }

    pub fn prod(l: Term, r: Term) -> Self {
        Term::Prod(Box::new(l), Box::new(r))
    }

    pub fn ldiv(l: Term, r: Term) -> Self {
        Term::LDiv(Box::new(l), Box::new(r))
    }

    pub fn rdiv(l: Term, r: Term) -> Self {
        Term::RDiv(Box::new(l), Box::new(r))
    }

    pub fn unary(kind: LocalKind, t: Term) -> Self {
        let t = Box::new(t);
        match kind {
            LocalKind::Rho => Term::Rho(t),
            LocalKind::Lambda => Term::Lambda(t),
            LocalKind::ERho => Term::ERho(t),
            LocalKind::ELambda => Term::ELambda(t),
            LocalKind::LDiv | LocalKind::RDiv => panic!("{kind:?} is a binary operation"),
        }
    }

    /// Variables in first-appearance order (left to right).
    pub fn variables(&self) -> Vec<char> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<char>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
            Term::Prod(l, r) | Term::LDiv(l, r) | Term::RDiv(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            Term::Rho(t) | Term::Lambda(t) | Term::ERho(t) | Term::ELambda(t) => t.collect_vars(out),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::Prod(l, r) | Term::LDiv(l, r) | Term::RDiv(l, r) => 1 + l.depth().max(r.depth()),
            Term::Rho(t) | Term::Lambda(t) | Term::ERho(t) | Term::ELambda(t) => 1 + t.depth(),
        }
    }

    /// Local-element kinds this term needs (divisions included).
    pub fn local_kinds(&self) -> Vec<LocalKind> {
        let mut out = Vec::new();
        self.collect_kinds(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_kinds(&self, out: &mut Vec<LocalKind>) {
        match self {
            Term::Var(_) => {}
            Term::Prod(l, r) => {
                l.collect_kinds(out);
                r.collect_kinds(out);
            }
            Term::LDiv(l, r) | Term::RDiv(l, r) => {
                out.push(if matches!(self, Term::LDiv(..)) { LocalKind::LDiv } else { LocalKind::RDiv });
                l.collect_kinds(out);
                r.collect_kinds(out);
            }
            Term::Rho(t) | Term::Lambda(t) | Term::ERho(t) | Term::ELambda(t) => {
                out.push(self.unary_kind().expect("unary node"));
                t.collect_kinds(out);
            }
        }
    }

    pub(crate) fn unary_kind(&self) -> Option<LocalKind> {
        match self {
            Term::Rho(_) => Some(LocalKind::Rho),
            Term::Lambda(_) => Some(LocalKind::Lambda),
            Term::ERho(_) => Some(LocalKind::ERho),
            Term::ELambda(_) => Some(LocalKind::ELambda),
            _ => None,
        }
    }

    /// Fully parenthesized rendering; `parse_term` inverts it.
    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Prod(l, r) => write!(f, "({l}*{r})"),
            Term::LDiv(l, r) => write!(f, "({l}\\{r})"),
            Term::RDiv(l, r) => write!(f, "({l}/{r})"),
            Term::Rho(t) => write!(f, "rho({t})"),
            Term::Lambda(t) => write!(f, "lam({t})"),
            Term::ERho(t) => write!(f, "er({t})"),
            Term::ELambda(t) => write!(f, "el({t})"),
        }
    }
}

/// An equation `lhs = rhs`, universally quantified over its variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
    variables: Vec<char>,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        let mut variables = lhs.variables();
        for v in rhs.variables() {
            if !variables.contains(&v) {
                variables.push(v);
            }
        }
        Self { lhs, rhs, variables }
    }

    pub fn variables(&self) -> &[char] {
        &self.variables
    }

    pub fn local_kinds(&self) -> Vec<LocalKind> {
        let mut k = self.lhs.local_kinds();
        k.extend(self.rhs.local_kinds());
        k.sort();
        k.dedup();
        k
    }

    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Which polynomial coefficient an operation needs to invert.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coefficient {
    B,
    C,
}

impl Coefficient {
    /// The coefficient whose inverse defines `kind`.
    pub fn required_by(kind: LocalKind) -> Self {
        match kind {
            LocalKind::ERho | LocalKind::Rho | LocalKind::LDiv => Coefficient::C,
            LocalKind::ELambda | LocalKind::Lambda | LocalKind::RDiv => Coefficient::B,
        }
    }
}

/// Why a term has no value (or no affine expansion) in a given groupoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NaReason {
    /// A defining congruence had no solution or several.
    Undefined { kind: LocalKind, why: Undefined },
    /// The closed form needs the inverse of a non-unit coefficient.
    NonUnit { kind: LocalKind, coefficient: Coefficient },
}

impl fmt::Display for NaReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NaReason::Undefined { kind, why } => write!(f, "{} undefined: {why}", kind.symbol()),
            NaReason::NonUnit { kind, coefficient } => {
                let c = match coefficient {
                    Coefficient::B => 'b',
                    Coefficient::C => 'c',
                };
                write!(f, "{} needs {c} to be a unit", kind.symbol())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable `{0}` is not bound")]
    UnboundVariable(char),
}

/// Variable assignment for evaluation.
pub type Env<T> = BTreeMap<char, Residue<T>>;

/// Result of evaluating a term: a value, or the reason it has none.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Eval<T: Scalar> {
    Value(Residue<T>),
    NotApplicable(NaReason),
}

impl<T: Scalar> Eval<T> {
    pub fn value(self) -> Option<Residue<T>> {
        match self {
            Eval::Value(v) => Some(v),
            Eval::NotApplicable(_) => None,
        }
    }
}

fn local<T: Scalar>(e: LocalElement<T>) -> Result<Residue<T>, NaReason> {
    e.outcome.map_err(|why| NaReason::Undefined { kind: e.kind, why })
}

/// Evaluates `t` bottom-up in `g`. Any undefined local element makes the
/// whole term [`Eval::NotApplicable`].
pub fn evaluate<T: Scalar>(
    t: &Term,
    env: &Env<T>,
    g: &LinearGroupoid<T>,
) -> Result<Eval<T>, EvalError> {
    fn go<T: Scalar>(
        t: &Term,
        env: &Env<T>,
        g: &LinearGroupoid<T>,
    ) -> Result<Result<Residue<T>, NaReason>, EvalError> {
        macro_rules! sub {
            ($e:expr) => {
                match go($e, env, g)? {
                    Ok(v) => v,
                    Err(na) => return Ok(Err(na)),
                }
            };
        }
        Ok(match t {
            Term::Var(v) => Ok(*env.get(v).ok_or(EvalError::UnboundVariable(*v))?),
            Term::Prod(l, r) => {
                let (l, r) = (sub!(l), sub!(r));
                Ok(g.apply(l, r))
            }
            Term::LDiv(l, r) => {
                let (l, r) = (sub!(l), sub!(r));
                local(g.left_divide(l, r))
            }
            Term::RDiv(l, r) => {
                let (l, r) = (sub!(l), sub!(r));
                local(g.right_divide(l, r))
            }
            Term::Rho(x) => local(g.right_inverse(sub!(x))),
            Term::Lambda(x) => local(g.left_inverse(sub!(x))),
            Term::ERho(x) => local(g.local_right_identity(sub!(x))),
            Term::ELambda(x) => local(g.local_left_identity(sub!(x))),
        })
    }
    Ok(match go(t, env, g)? {
        Ok(v) => Eval::Value(v),
        Err(na) => Eval::NotApplicable(na),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: u64, a: u64, b: u64, c: u64) -> LinearGroupoid<u64> {
        LinearGroupoid::new(n, a, b, c).unwrap()
    }

    fn env(g: &LinearGroupoid<u64>, pairs: &[(char, u64)]) -> Env<u64> {
        pairs.iter().map(|&(k, v)| (k, g.modulus().residue(v))).collect()
    }

    #[test]
    fn evaluate_examples() {
        let g1 = g(6, 2, 4, 2);
        let t = parse_term("x*y").unwrap();
        assert_eq!(
            evaluate(&t, &env(&g1, &[('x', 2), ('y', 3)]), &g1).unwrap().value().unwrap().value(),
            4
        );

        let rho = parse_term("rho(x)").unwrap();
        let g2 = g(5, 2, 4, 4);
        assert_eq!(evaluate(&rho, &env(&g2, &[('x', 0)]), &g2).unwrap().value().unwrap().value(), 0);

        assert_eq!(
            evaluate(&rho, &env(&g1, &[('x', 0)]), &g1).unwrap(),
            Eval::NotApplicable(NaReason::Undefined { kind: LocalKind::Rho, why: Undefined::NonUnique })
        );
    }

    #[test]
    fn unbound_variable_is_an_error() {
        let g1 = g(5, 1, 2, 3);
        let t = parse_term("x*z").unwrap();
        assert_eq!(
            evaluate(&t, &env(&g1, &[('x', 1)]), &g1),
            Err(EvalError::UnboundVariable('z'))
        );
    }

    #[test]
    fn undefined_inner_term_propagates() {
        // x*(y\x) in a groupoid with c = 2 over Z_4: the division is never unique
        let g1 = g(4, 1, 1, 2);
        let t = parse_term("x*(y\\x)").unwrap();
        let out = evaluate(&t, &env(&g1, &[('x', 1), ('y', 3)]), &g1).unwrap();
        assert!(matches!(out, Eval::NotApplicable(NaReason::Undefined { kind: LocalKind::LDiv, .. })));
    }

    #[test]
    fn identity_variables_in_first_appearance_order() {
        let id = parse("y*(y*x) = x").unwrap();
        assert_eq!(id.variables(), &['y', 'x']);
        let id = parse("(x*y)*(z*w) = (w*y)*(z*x)").unwrap();
        assert_eq!(id.variables(), &['x', 'y', 'z', 'w']);
        let id = parse("x*x = y*y").unwrap();
        assert_eq!(id.variables(), &['x', 'y']);
    }

    #[test]
    fn canonical_examples() {
        let t = Term::prod(Term::prod(Term::var('x'), Term::var('y')), Term::var('z'));
        assert_eq!(t.canonical(), "((x*y)*z)");
        assert_eq!(Term::Rho(Box::new(Term::prod(Term::var('y'), Term::var('x')))).canonical(), "rho((y*x))");
        assert_eq!(Term::ldiv(Term::var('x'), Term::var('x')).canonical(), "(x\\x)");
    }

    #[test]
    fn local_kinds_collected() {
        let id = parse("x*(y*z) = (x*y)*((x\\x)*z)").unwrap();
        assert_eq!(id.local_kinds(), vec![LocalKind::LDiv]);
        let id = parse("rho((x*y)*x) = (rho(x)*rho(y))*rho(x)").unwrap();
        assert_eq!(id.local_kinds(), vec![LocalKind::Rho]);
    }
}
