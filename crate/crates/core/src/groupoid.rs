//! The groupoid `(Z_n, ∘)` with `x ∘ y = a + b·x + c·y (mod n)`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::modring::{solve_linear, ModError, Modulus, Residue, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupoidError {
    #[error(transparent)]
    Modulus(#[from] ModError),
    #[error("groupoids live over different rings (Z_{left} vs Z_{right})")]
    ModulusMismatch { left: u128, right: u128 },
}

/// A linear-bivariate polynomial groupoid over `Z_n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct LinearGroupoid<T> {
    modulus: Modulus<T>,
    a: Residue<T>,
    b: Residue<T>,
    c: Residue<T>,
}

impl<T: Scalar> LinearGroupoid<T> {
    /// Builds `a + bx + cy` over `Z_n`; coefficients are reduced mod `n`.
    pub fn new(n: T, a: T, b: T, c: T) -> Result<Self, GroupoidError> {
        let modulus = Modulus::new(n)?;
        Ok(Self::over(modulus, a, b, c))
    }

    /// Same as [`LinearGroupoid::new`] but accepts negative coefficients.
    pub fn from_signed(n: T, a: i128, b: i128, c: i128) -> Result<Self, GroupoidError> {
        let m = Modulus::new(n)?;
        Ok(Self {
            modulus: m,
            a: m.residue_signed(a),
            b: m.residue_signed(b),
            c: m.residue_signed(c),
        })
    }

    pub fn over(modulus: Modulus<T>, a: T, b: T, c: T) -> Self {
        Self {
            modulus,
            a: modulus.residue(a),
            b: modulus.residue(b),
            c: modulus.residue(c),
        }
    }

    pub fn modulus(&self) -> Modulus<T> {
        self.modulus
    }

    pub fn n(&self) -> T {
        self.modulus.get()
    }

    pub fn a(&self) -> Residue<T> {
        self.a
    }

    pub fn b(&self) -> Residue<T> {
        self.b
    }

    pub fn c(&self) -> Residue<T> {
        self.c
    }

    pub fn triple(&self) -> Triple {
        Triple {
            n: self.n().as_u64(),
            a: self.a.value().as_u64(),
            b: self.b.value().as_u64(),
            c: self.c.value().as_u64(),
        }
    }

    pub fn apply(&self, x: Residue<T>, y: Residue<T>) -> Residue<T> {
        self.a + self.b * x + self.c * y
    }

    /// Both `b` and `c` are units, i.e. the Cayley table is a Latin square.
    pub fn is_quasigroup(&self) -> bool {
        self.b.is_unit() && self.c.is_unit()
    }

    pub fn is_commutative(&self) -> bool {
        self.b == self.c
    }

    pub fn cayley_table(&self) -> CayleyTable<T> {
        let cells = self
            .modulus
            .elements()
            .flat_map(|x| self.modulus.elements().map(move |y| self.apply(x, y).value()))
            .collect();
        CayleyTable { modulus: self.modulus, cells }
    }

    /// Solves `coef·w = rhs` and keeps the solution only when it is unique.
    fn unique_solution(
        &self,
        kind: LocalKind,
        coef: Residue<T>,
        rhs: Residue<T>,
    ) -> LocalElement<T> {
        let set = solve_linear(coef, rhs);
        let outcome = match set.unique() {
            Some(v) => Ok(v),
            None if set.is_empty() => Err(Undefined::NoSolution),
            None => Err(Undefined::NonUnique),
        };
        LocalElement { kind, outcome }
    }

    /// `e_ρ(x)`: the `e` with `x ∘ e = x`.
    pub fn local_right_identity(&self, x: Residue<T>) -> LocalElement<T> {
        self.unique_solution(LocalKind::ERho, self.c, x - self.a - self.b * x)
    }

    /// `e_λ(x)`: the `e` with `e ∘ x = x`.
    pub fn local_left_identity(&self, x: Residue<T>) -> LocalElement<T> {
        self.unique_solution(LocalKind::ELambda, self.b, x - self.a - self.c * x)
    }

    /// `x^ρ`: the `s` with `x ∘ s = e_ρ(x)`.
    pub fn right_inverse(&self, x: Residue<T>) -> LocalElement<T> {
        match self.local_right_identity(x).outcome {
            Ok(e) => self.unique_solution(LocalKind::Rho, self.c, e - self.a - self.b * x),
            Err(why) => LocalElement { kind: LocalKind::Rho, outcome: Err(why) },
        }
    }

    /// `x^λ`: the `s` with `s ∘ x = e_λ(x)`.
    pub fn left_inverse(&self, x: Residue<T>) -> LocalElement<T> {
        match self.local_left_identity(x).outcome {
            Ok(e) => self.unique_solution(LocalKind::Lambda, self.b, e - self.a - self.c * x),
            Err(why) => LocalElement { kind: LocalKind::Lambda, outcome: Err(why) },
        }
    }

    /// `x \ z`: the `w` with `x ∘ w = z`.
    pub fn left_divide(&self, x: Residue<T>, z: Residue<T>) -> LocalElement<T> {
        self.unique_solution(LocalKind::LDiv, self.c, z - self.a - self.b * x)
    }

    /// `z / x`: the `w` with `w ∘ x = z`.
    pub fn right_divide(&self, z: Residue<T>, x: Residue<T>) -> LocalElement<T> {
        self.unique_solution(LocalKind::RDiv, self.b, z - self.a - self.c * x)
    }

    fn same_ring(&self, other: &Self) -> Result<(), GroupoidError> {
        if self.modulus != other.modulus {
            return Err(GroupoidError::ModulusMismatch {
                left: self.n().to_wide(),
                right: other.n().to_wide(),
            });
        }
        Ok(())
    }

    /// Orthogonality by enumeration: all `n²` value pairs are distinct.
    pub fn orthogonal(&self, other: &Self) -> Result<bool, GroupoidError> {
        self.same_ring(other)?;
        let n = self.modulus.size();
        let mut seen = vec![false; n * n];
        for x in self.modulus.elements() {
            for y in self.modulus.elements() {
                let p = self.apply(x, y).value().index();
                let q = other.apply(x, y).value().index();
                let slot = &mut seen[p * n + q];
                if *slot {
                    return Ok(false);
                }
                *slot = true;
            }
        }
        Ok(true)
    }

    /// Determinant pre-filter: `b₁c₂ − b₂c₁` is a unit. Agrees with
    /// [`LinearGroupoid::orthogonal`] (checked exhaustively for `n <= 6`).
    pub fn orthogonal_by_determinant(&self, other: &Self) -> Result<bool, GroupoidError> {
        self.same_ring(other)?;
        Ok((self.b * other.c - other.b * self.c).is_unit())
    }
}

impl<T: Scalar> fmt::Debug for LinearGroupoid<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.n(), self.a, self.b, self.c)
    }
}

impl<T: Scalar> fmt::Display for LinearGroupoid<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}x+{}y over Z_{}", self.a, self.b, self.c, self.n())
    }
}

/// A plain `(n, a, b, c)` quadruple, the serialized form of a groupoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Triple {
    pub n: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl Triple {
    pub const fn new(n: u64, a: u64, b: u64, c: u64) -> Self {
        Self { n, a, b, c }
    }

    pub fn groupoid<T: Scalar>(self) -> Result<LinearGroupoid<T>, GroupoidError> {
        let cast = |v: u64| T::from_wide(v as u128);
        LinearGroupoid::new(cast(self.n), cast(self.a), cast(self.b), cast(self.c))
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.n, self.a, self.b, self.c)
    }
}

/// Which locally defined element a [`LocalElement`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalKind {
    ERho,
    ELambda,
    Rho,
    Lambda,
    LDiv,
    RDiv,
}

impl LocalKind {
    pub fn symbol(self) -> &'static str {
        match self {
            LocalKind::ERho => "er",
            LocalKind::ELambda => "el",
            LocalKind::Rho => "rho",
            LocalKind::Lambda => "lam",
            LocalKind::LDiv => "\\",
            LocalKind::RDiv => "/",
        }
    }
}

/// Why a defining congruence failed to pin down a single element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Undefined {
    NoSolution,
    NonUnique,
}

impl fmt::Display for Undefined {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Undefined::NoSolution => "no solution",
            Undefined::NonUnique => "non-unique solution",
        })
    }
}

/// A local identity, local inverse or quotient. Defined exactly when the
/// linear congruence that characterizes it has a unique solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalElement<T: Scalar> {
    pub kind: LocalKind,
    pub outcome: Result<Residue<T>, Undefined>,
}

impl<T: Scalar> LocalElement<T> {
    pub fn is_defined(&self) -> bool {
        self.outcome.is_ok()
    }

    pub fn value(&self) -> Option<Residue<T>> {
        self.outcome.ok()
    }

    pub fn reason(&self) -> Option<Undefined> {
        self.outcome.err()
    }
}

/// The `n × n` operation table, row-major: `cells[x*n + y] = x ∘ y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable<T: Scalar> {
    modulus: Modulus<T>,
    cells: Vec<T>,
}

impl<T: Scalar> CayleyTable<T> {
    pub fn modulus(&self) -> Modulus<T> {
        self.modulus
    }

    pub fn get(&self, x: usize, y: usize) -> T {
        let n = self.modulus.size();
        self.cells[x * n + y]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.cells.chunks(self.modulus.size())
    }

    /// Every row and every column is a permutation of `0..n`.
    pub fn is_latin_square(&self) -> bool {
        let n = self.modulus.size();
        let mut seen = vec![false; n];
        let mut line_ok = |cell: &dyn Fn(usize) -> T| {
            seen.fill(false);
            (0..n).all(|i| {
                let v = cell(i).index();
                v < n && !std::mem::replace(&mut seen[v], true)
            })
        };
        (0..n).all(|r| line_ok(&|i| self.get(r, i))) && (0..n).all(|c| line_ok(&|i| self.get(i, c)))
    }

    /// `n` lines of `n` comma-separated values, newline-terminated.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// Right-aligned grid for terminals.
    pub fn to_pretty(&self) -> String {
        let n = self.modulus.size();
        let w = (n.saturating_sub(1)).to_string().len();
        let mut out = format!("{:>w$} |", "∘", w = w);
        for y in 0..n {
            out.push_str(&format!(" {:>w$}", y, w = w));
        }
        out.push('\n');
        out.push_str(&"-".repeat(w + 2 + n * (w + 1)));
        out.push('\n');
        for (x, row) in self.rows().enumerate() {
            out.push_str(&format!("{:>w$} |", x, w = w));
            for v in row {
                out.push_str(&format!(" {:>w$}", v, w = w));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_nested(&self) -> Vec<Vec<u64>> {
        self.rows().map(|r| r.iter().map(|v| v.as_u64()).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: u64, a: u64, b: u64, c: u64) -> LinearGroupoid<u64> {
        LinearGroupoid::new(n, a, b, c).unwrap()
    }

    fn r(g: &LinearGroupoid<u64>, v: u64) -> Residue<u64> {
        g.modulus().residue(v)
    }

    /// Latin-square test written directly against `apply`, independent of
    /// the table code.
    fn latin_by_brute_force(g: &LinearGroupoid<u64>) -> bool {
        let els: Vec<_> = g.modulus().elements().collect();
        els.iter().all(|&x| {
            let mut row: Vec<u64> = els.iter().map(|&y| g.apply(x, y).value()).collect();
            let mut col: Vec<u64> = els.iter().map(|&y| g.apply(y, x).value()).collect();
            row.sort_unstable();
            row.dedup();
            col.sort_unstable();
            col.dedup();
            row.len() == els.len() && col.len() == els.len()
        })
    }

    #[test]
    fn apply_examples() {
        let g1 = g(6, 2, 4, 2);
        assert_eq!(g1.apply(r(&g1, 2), r(&g1, 3)).value(), 4);
        let g2 = g(5, 3, 2, 4);
        assert_eq!(g2.apply(r(&g2, 1), r(&g2, 2)).value(), 3);
        let proj = g(9, 0, 1, 0);
        for x in proj.modulus().elements() {
            for y in proj.modulus().elements() {
                assert_eq!(proj.apply(x, y), x);
            }
        }
    }

    #[test]
    fn quasigroup_examples() {
        assert!(g(6, 2, 5, 1).is_quasigroup());
        assert!(!g(6, 2, 4, 2).is_quasigroup());
        assert!(!latin_by_brute_force(&g(6, 2, 4, 2)));
        for a in 0..7 {
            for b in 1..7 {
                for c in 1..7 {
                    assert!(g(7, a, b, c).is_quasigroup());
                }
            }
        }
    }

    #[test]
    fn cayley_table_examples() {
        assert_eq!(g(3, 0, 1, 1).cayley_table().to_nested(), vec![
            vec![0, 1, 2],
            vec![1, 2, 0],
            vec![2, 0, 1]
        ]);
        assert_eq!(g(2, 1, 1, 1).cayley_table().to_nested(), vec![vec![1, 0], vec![0, 1]]);
        assert!(g(6, 1, 5, 5).cayley_table().is_latin_square());
        assert!(g(6, 1, 5, 1).cayley_table().is_latin_square());
        assert!(!g(6, 2, 4, 2).cayley_table().is_latin_square());
        assert!(g(5, 3, 2, 4).cayley_table().is_latin_square());
        assert_eq!(g(3, 0, 1, 1).cayley_table().to_csv(), "0,1,2\n1,2,0\n2,0,1\n");
    }

    #[test]
    fn local_identity_examples() {
        let g1 = g(5, 2, 4, 4);
        for x in g1.modulus().elements() {
            let e = g1.local_right_identity(x).value().unwrap();
            assert_eq!(e, r(&g1, 3) * x + r(&g1, 2));
        }
        assert_eq!(g1.local_right_identity(r(&g1, 0)).value().unwrap().value(), 2);

        let add = g(8, 0, 1, 1);
        for x in add.modulus().elements() {
            assert!(add.local_right_identity(x).value().unwrap().is_zero());
        }

        // 2e ≡ 1 − 0 − 1 ≡ 0 (mod 4) has two solutions.
        let g2 = g(4, 0, 1, 2);
        assert_eq!(g2.local_right_identity(r(&g2, 1)).reason(), Some(Undefined::NonUnique));
        // 2e ≡ 1 − 1 − 1 ≡ 3 (mod 4) has none.
        let g3 = g(4, 1, 1, 2);
        assert_eq!(g3.local_right_identity(r(&g3, 1)).reason(), Some(Undefined::NoSolution));
    }

    #[test]
    fn inverse_examples() {
        let g1 = g(5, 2, 4, 4);
        for x in g1.modulus().elements() {
            let s = g1.right_inverse(x).value().unwrap();
            assert_eq!(s, x);
            assert_eq!(g1.apply(x, s), g1.local_right_identity(x).value().unwrap());
        }
        let add = g(8, 0, 1, 1);
        for x in add.modulus().elements() {
            assert_eq!(add.right_inverse(x).value().unwrap(), -x);
        }
        let g2 = g(6, 2, 4, 2);
        let rho = g2.right_inverse(r(&g2, 0));
        assert_eq!(rho.reason(), Some(Undefined::NonUnique));
        assert_eq!(rho.kind, LocalKind::Rho);
    }

    #[test]
    fn division_examples() {
        let g1 = g(6, 1, 5, 1);
        assert_eq!(g1.left_divide(r(&g1, 2), r(&g1, 3)).value().unwrap().value(), 4);
        let add = g(7, 0, 1, 1);
        for x in add.modulus().elements() {
            for z in add.modulus().elements() {
                assert_eq!(add.left_divide(x, z).value().unwrap(), z - x);
            }
        }
        let g2 = g(6, 2, 4, 2);
        assert_eq!(g2.left_divide(r(&g2, 0), r(&g2, 1)).reason(), Some(Undefined::NoSolution));
    }

    #[test]
    fn orthogonality_examples() {
        assert!(g(5, 0, 1, 2).orthogonal(&g(5, 0, 2, 1)).unwrap());
        assert!(g(5, 0, 1, 2).orthogonal_by_determinant(&g(5, 0, 2, 1)).unwrap());
        let q = g(7, 3, 2, 5);
        assert!(!q.orthogonal(&q).unwrap());
        assert!(!g(4, 0, 1, 1).orthogonal(&g(4, 0, 1, 3)).unwrap());
        assert!(matches!(
            g(4, 0, 1, 1).orthogonal(&g(5, 0, 1, 1)),
            Err(GroupoidError::ModulusMismatch { left: 4, right: 5 })
        ));
    }

    #[test]
    fn quasigroup_iff_latin_small() {
        for n in 2..=8u64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let gr = g(n, a, b, c);
                        let latin = gr.cayley_table().is_latin_square();
                        assert_eq!(gr.is_quasigroup(), latin, "{gr:?}");
                        assert_eq!(latin, latin_by_brute_force(&gr), "{gr:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn local_elements_satisfy_defining_equations() {
        for n in 2..=10u64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let gr = g(n, a, b, c);
                        for x in gr.modulus().elements() {
                            let er = gr.local_right_identity(x);
                            let el = gr.local_left_identity(x);
                            if let Some(e) = er.value() {
                                assert_eq!(gr.apply(x, e), x);
                            }
                            if let Some(e) = el.value() {
                                assert_eq!(gr.apply(e, x), x);
                            }
                            if let Some(s) = gr.right_inverse(x).value() {
                                assert_eq!(gr.apply(x, s), er.value().unwrap());
                            }
                            if let Some(s) = gr.left_inverse(x).value() {
                                assert_eq!(gr.apply(s, x), el.value().unwrap());
                            }
                            if gr.is_quasigroup() {
                                assert!(er.is_defined() && el.is_defined());
                                assert!(gr.right_inverse(x).is_defined());
                                assert!(gr.left_inverse(x).is_defined());
                            }
                            for z in gr.modulus().elements() {
                                let ld = gr.left_divide(x, z);
                                let rd = gr.right_divide(z, x);
                                if let Some(w) = ld.value() {
                                    assert_eq!(gr.apply(x, w), z);
                                }
                                if let Some(w) = rd.value() {
                                    assert_eq!(gr.apply(w, x), z);
                                }
                                if gr.is_quasigroup() {
                                    assert!(ld.is_defined() && rd.is_defined());
                                }
                            }
                            // x\x and x/x coincide with the local identities
                            assert_eq!(gr.left_divide(x, x).outcome, er.outcome);
                            assert_eq!(gr.right_divide(x, x).outcome, el.outcome);
                        }
                    }
                }
            }
        }
    }
}
