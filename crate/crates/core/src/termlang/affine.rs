use std::collections::BTreeMap;
use std::fmt;

use super::{Coefficient, Env, NaReason, Term};
use crate::groupoid::{LinearGroupoid, LocalKind};
use crate::modring::{Residue, Scalar};

/// `constant + Σ coefficient·variable` over `Z_n`.
///
/// Every term over a linear groupoid denotes such a map, so two terms agree
/// everywhere exactly when their forms are equal coefficient-wise.
#[derive(Clone, PartialEq, Eq)]
pub struct AffineForm<T> {
    pub constant: Residue<T>,
    pub coefficients: BTreeMap<char, Residue<T>>,
}

impl<T: Scalar> AffineForm<T> {
    pub fn variable(g: &LinearGroupoid<T>, name: char) -> Self {
        let m = g.modulus();
        Self { constant: m.zero(), coefficients: BTreeMap::from([(name, m.one())]) }
    }

    pub fn coefficient(&self, name: char) -> Option<Residue<T>> {
        self.coefficients.get(&name).copied()
    }

    fn scale(&self, k: Residue<T>) -> Self {
        Self {
            constant: self.constant * k,
            coefficients: self.coefficients.iter().map(|(&v, &c)| (v, c * k)).collect(),
        }
    }

    fn add_const(mut self, k: Residue<T>) -> Self {
        self.constant = self.constant + k;
        self
    }

    fn plus(&self, other: &Self) -> Self {
        let mut coefficients = self.coefficients.clone();
        for (&v, &c) in &other.coefficients {
            coefficients.entry(v).and_modify(|e| *e = *e + c).or_insert(c);
        }
        Self { constant: self.constant + other.constant, coefficients }
    }

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scale(-other.constant.modulus().one()))
    }

    /// Coefficient-wise difference; variables missing on one side count as 0.
    pub fn difference(&self, other: &Self) -> Self {
        self.minus(other)
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coefficients.values().all(|c| c.is_zero())
    }

    /// Value at `env`; variables absent from `env` are an error.
    pub fn evaluate(&self, env: &Env<T>) -> Option<Residue<T>> {
        let mut acc = self.constant;
        for (v, &c) in &self.coefficients {
            acc = acc + c * *env.get(v)?;
        }
        Some(acc)
    }
}

impl<T: Scalar> fmt::Debug for AffineForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant.value())?;
        for (v, c) in &self.coefficients {
            write!(f, " + {}{v}", c.value())?;
        }
        write!(f, " (mod {})", self.constant.modulus())
    }
}

/// `a + b·l + c·r`.
fn product<T: Scalar>(g: &LinearGroupoid<T>, l: &AffineForm<T>, r: &AffineForm<T>) -> AffineForm<T> {
    l.scale(g.b()).plus(&r.scale(g.c())).add_const(g.a())
}

fn unit_inverse<T: Scalar>(g: &LinearGroupoid<T>, kind: LocalKind) -> Result<Residue<T>, NaReason> {
    let coefficient = Coefficient::required_by(kind);
    let k = match coefficient {
        Coefficient::B => g.b(),
        Coefficient::C => g.c(),
    };
    k.inverse().map_err(|_| NaReason::NonUnit { kind, coefficient })
}

/// Symbolic expansion of `t` using closed forms for quotients, local
/// identities and local inverses. Each of those needs `b` or `c` to be a
/// unit; otherwise the expansion is not applicable.
pub fn expand_affine<T: Scalar>(t: &Term, g: &LinearGroupoid<T>) -> Result<AffineForm<T>, NaReason> {
    let one = g.modulus().one();
    Ok(match t {
        Term::Var(v) => AffineForm::variable(g, *v),
        Term::Prod(l, r) => product(g, &expand_affine(l, g)?, &expand_affine(r, g)?),
        Term::LDiv(l, r) => {
            let inv = unit_inverse(g, LocalKind::LDiv)?;
            let (l, r) = (expand_affine(l, g)?, expand_affine(r, g)?);
            // c⁻¹(r − a − b·l)
            r.minus(&l.scale(g.b()).add_const(g.a())).scale(inv)
        }
        Term::RDiv(l, r) => {
            let inv = unit_inverse(g, LocalKind::RDiv)?;
            let (l, r) = (expand_affine(l, g)?, expand_affine(r, g)?);
            // b⁻¹(l − a − c·r)
            l.minus(&r.scale(g.c()).add_const(g.a())).scale(inv)
        }
        Term::ERho(x) => {
            let inv = unit_inverse(g, LocalKind::ERho)?;
            // c⁻¹((1 − b)x − a)
            expand_affine(x, g)?.scale(one - g.b()).add_const(-g.a()).scale(inv)
        }
        Term::ELambda(x) => {
            let inv = unit_inverse(g, LocalKind::ELambda)?;
            // b⁻¹((1 − c)x − a)
            expand_affine(x, g)?.scale(one - g.c()).add_const(-g.a()).scale(inv)
        }
        Term::Rho(x) => {
            let inv = unit_inverse(g, LocalKind::Rho)?;
            let xf = expand_affine(x, g)?;
            let e = xf.scale(one - g.b()).add_const(-g.a()).scale(inv);
            // c⁻¹(e_ρ(x) − a − b·x)
            e.minus(&xf.scale(g.b()).add_const(g.a())).scale(inv)
        }
        Term::Lambda(x) => {
            let inv = unit_inverse(g, LocalKind::Lambda)?;
            let xf = expand_affine(x, g)?;
            let e = xf.scale(one - g.c()).add_const(-g.a()).scale(inv);
            // b⁻¹(e_λ(x) − a − c·x)
            e.minus(&xf.scale(g.c()).add_const(g.a())).scale(inv)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::termlang::{evaluate, parse_term, Eval};

    fn g(n: u64, a: u64, b: u64, c: u64) -> LinearGroupoid<u64> {
        LinearGroupoid::new(n, a, b, c).unwrap()
    }

    #[test]
    fn nested_product_expansion() {
        let gr = g(9, 2, 4, 2);
        let f = expand_affine(&parse_term("x*(y*z)").unwrap(), &gr).unwrap();
        assert_eq!(f.constant.value(), 6);
        assert_eq!(f.coefficient('x').unwrap().value(), 4);
        assert_eq!(f.coefficient('y').unwrap().value(), 8);
        assert_eq!(f.coefficient('z').unwrap().value(), 4);
    }

    #[test]
    fn bare_variable() {
        let gr = g(7, 3, 2, 5);
        let f = expand_affine(&Term::var('x'), &gr).unwrap();
        assert!(f.constant.is_zero());
        assert_eq!(f.coefficient('x').unwrap().value(), 1);
        assert_eq!(f.coefficients.len(), 1);
    }

    #[test]
    fn non_unit_blocks_expansion() {
        let gr = g(6, 2, 4, 2);
        assert_eq!(
            expand_affine(&parse_term("rho(x)").unwrap(), &gr),
            Err(NaReason::NonUnit { kind: LocalKind::Rho, coefficient: Coefficient::C })
        );
        assert!(expand_affine(&parse_term("x/y").unwrap(), &gr).is_err());
    }

    #[test]
    fn repeated_variable_keeps_single_entry() {
        let gr = g(11, 1, 3, 4);
        let f = expand_affine(&parse_term("(x*y)*x").unwrap(), &gr).unwrap();
        assert_eq!(f.coefficients.len(), 2);
        // b² + c  for x, bc for y, a + ab for the constant
        assert_eq!(f.coefficient('x').unwrap().value(), (9 + 4) % 11);
        assert_eq!(f.coefficient('y').unwrap().value(), 12 % 11);
        assert_eq!(f.constant.value(), 4);
    }

    #[test]
    fn product_is_compositional() {
        let gr = g(10, 3, 7, 9);
        let l = parse_term("rho(x)*y").unwrap();
        let r = parse_term("z\\x").unwrap();
        let whole = expand_affine(&Term::prod(l.clone(), r.clone()), &gr).unwrap();
        let (lf, rf) = (expand_affine(&l, &gr).unwrap(), expand_affine(&r, &gr).unwrap());
        assert_eq!(whole, product(&gr, &lf, &rf));
    }

    #[test]
    fn expansion_matches_pointwise_evaluation() {
        let terms = [
            "x*(y*z)",
            "rho(x*y)",
            "lam(x)*(x*y)",
            "er(x)*el(y)",
            "(x\\y)/z",
            "rho((x*y)*x)",
            "z*(x/x)",
        ];
        for n in 2..=9u64 {
            for (a, b, c) in [(0, 1, 1), (1, 2, 3), (n - 1, n - 1, 1), (2 % n, 3 % n, 5 % n)] {
                let gr = g(n, a, b, c);
                for src in terms {
                    let t = parse_term(src).unwrap();
                    let Ok(f) = expand_affine(&t, &gr) else { continue };
                    for x in gr.modulus().elements() {
                        for y in gr.modulus().elements() {
                            for z in gr.modulus().elements() {
                                let env: Env<u64> = [('x', x), ('y', y), ('z', z)].into();
                                let direct = evaluate(&t, &env, &gr).unwrap();
                                assert_eq!(direct, Eval::Value(f.evaluate(&env).unwrap()), "{src} in {gr:?}");
                            }
                        }
                    }
                }
            }
        }
    }
}
