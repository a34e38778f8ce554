//! Exact arithmetic in the residue ring `Z_n`.
//!
//! Everything here is generic over the unsigned integer type used to store
//! residues. Intermediate products are widened to `u128`, so any width up to
//! `u64` is safe for moduli in the supported range (`n <= 10^6` is the
//! tested contract, larger moduli work but primality is trial division).

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{NumCast, PrimInt, Unsigned};
use serde::Serialize;
use thiserror::Error;

/// Unsigned integer types usable as residue storage.
pub trait Scalar:
    PrimInt + Unsigned + Hash + Debug + Display + Default + Send + Sync + Serialize + 'static
{
    fn to_wide(self) -> u128 {
        self.to_u128().expect("unsigned value fits in u128")
    }

    /// Narrows a value already known to fit (always `< n` at call sites).
    fn from_wide(v: u128) -> Self {
        <Self as NumCast>::from(v).expect("value fits in scalar type")
    }

    fn from_usize(v: usize) -> Self {
        <Self as NumCast>::from(v).expect("value fits in scalar type")
    }

    fn index(self) -> usize {
        self.to_u128().expect("fits") as usize
    }

    fn as_u64(self) -> u64 {
        self.to_u128().expect("fits") as u64
    }
}

impl<T> Scalar for T where
    T: PrimInt + Unsigned + Hash + Debug + Display + Default + Send + Sync + Serialize + 'static
{
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModError {
    #[error("modulus must be at least 2 (got {0})")]
    InvalidModulus(u128),
    #[error("gcd(0, 0) is undefined")]
    BothZero,
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u128, modulus: u128 },
}

/// The modulus `n >= 2` of a residue ring.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus<T> {
    n: T,
}

impl<T: Scalar> Modulus<T> {
    pub fn new(n: T) -> Result<Self, ModError> {
        if n < T::from_usize(2) {
            return Err(ModError::InvalidModulus(n.to_wide()));
        }
        Ok(Self { n })
    }

    pub fn get(self) -> T {
        self.n
    }

    /// `n` as a table size.
    pub fn size(self) -> usize {
        self.n.index()
    }

    /// Reduces an unsigned value into `[0, n)`.
    pub fn residue(self, v: T) -> Residue<T> {
        Residue { value: v % self.n, modulus: self }
    }

    /// Reduces a signed value, so `-1` becomes `n - 1`.
    pub fn residue_signed(self, v: i128) -> Residue<T> {
        let n = self.n.to_wide() as i128;
        Residue {
            value: T::from_wide(v.rem_euclid(n) as u128),
            modulus: self,
        }
    }

    pub fn zero(self) -> Residue<T> {
        Residue { value: T::zero(), modulus: self }
    }

    pub fn one(self) -> Residue<T> {
        self.residue(T::one())
    }

    /// All residues `0..n` in ascending order.
    pub fn elements(self) -> impl Iterator<Item = Residue<T>> {
        (0..self.size()).map(move |v| Residue { value: T::from_usize(v), modulus: self })
    }

    pub fn is_prime(self) -> bool {
        is_prime(self.n)
    }
}

impl<T: Scalar> Debug for Modulus<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}", self.n)
    }
}

impl<T: Scalar> Display for Modulus<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n)
    }
}

/// An element of `Z_n`, always stored in canonical form `0 <= value < n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue<T> {
    value: T,
    modulus: Modulus<T>,
}

impl<T: Scalar> Residue<T> {
    pub fn value(self) -> T {
        self.value
    }

    pub fn modulus(self) -> Modulus<T> {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value.is_zero()
    }

    pub fn is_unit(self) -> bool {
        is_unit(self.value, self.modulus.n)
    }

    pub fn inverse(self) -> Result<Self, ModError> {
        inverse(self)
    }

    pub fn pow(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = self.modulus.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplies by a small signed integer coefficient.
    pub fn scale(self, k: i128) -> Self {
        self * self.modulus.residue_signed(k)
    }

    fn check_same(self, other: Self) {
        assert!(
            self.modulus == other.modulus,
            "residues from different rings: Z_{} vs Z_{}",
            self.modulus.n,
            other.modulus.n
        );
    }
}

impl<T: Scalar> Debug for Residue<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus.n)
    }
}

impl<T: Scalar> Display for Residue<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl<T: Scalar> Add for Residue<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        self.check_same(rhs);
        let n = self.modulus.n.to_wide();
        let v = (self.value.to_wide() + rhs.value.to_wide()) % n;
        Residue { value: T::from_wide(v), modulus: self.modulus }
    }
}

impl<T: Scalar> Sub for Residue<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Scalar> Neg for Residue<T> {
    type Output = Self;

    fn neg(self) -> Self {
        if self.value.is_zero() {
            self
        } else {
            Residue { value: self.modulus.n - self.value, modulus: self.modulus }
        }
    }
}

impl<T: Scalar> Mul for Residue<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        self.check_same(rhs);
        let n = self.modulus.n.to_wide();
        let v = (self.value.to_wide() * rhs.value.to_wide()) % n;
        Residue { value: T::from_wide(v), modulus: self.modulus }
    }
}

/// Greatest common divisor; rejects `gcd(0, 0)`.
pub fn gcd<T: Scalar>(u: T, v: T) -> Result<T, ModError> {
    if u.is_zero() && v.is_zero() {
        return Err(ModError::BothZero);
    }
    let (mut a, mut b) = (u, v);
    while !b.is_zero() {
        let t = a % b;
        a = b;
        b = t;
    }
    Ok(a)
}

/// `gcd(v, n) == 1`. Zero is a unit of no ring with `n >= 2`.
pub fn is_unit<T: Scalar>(v: T, n: T) -> bool {
    gcd(v % n, n).map(|g| g.is_one()).unwrap_or(false)
}

/// Extended Euclid on `(v, n)`; returns `(g, s)` with `s*v ≡ g (mod n)`.
fn ext_gcd(v: u128, n: u128) -> (u128, i128) {
    let (mut old_r, mut r) = (v as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r as u128, old_s)
}

pub fn inverse<T: Scalar>(r: Residue<T>) -> Result<Residue<T>, ModError> {
    let n = r.modulus.n.to_wide();
    let (g, s) = ext_gcd(r.value.to_wide(), n);
    if g != 1 {
        return Err(ModError::NotAUnit { value: r.value.to_wide(), modulus: n });
    }
    Ok(r.modulus.residue_signed(s))
}

/// The solutions of `k*s ≡ rhs (mod n)`: an arithmetic progression
/// `first, first + step, ...` with `count` terms (possibly zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolutionSet<T: Scalar> {
    modulus: Modulus<T>,
    first: T,
    step: T,
    count: usize,
}

impl<T: Scalar> SolutionSet<T> {
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// The solution when there is exactly one.
    pub fn unique(&self) -> Option<Residue<T>> {
        (self.count == 1).then(|| self.modulus.residue(self.first))
    }

    pub fn iter(&self) -> impl Iterator<Item = Residue<T>> + '_ {
        let n = self.modulus.n.to_wide();
        (0..self.count).map(move |i| {
            let v = (self.first.to_wide() + i as u128 * self.step.to_wide()) % n;
            self.modulus.residue(T::from_wide(v))
        })
    }

    pub fn to_vec(&self) -> Vec<Residue<T>> {
        self.iter().collect()
    }
}

/// Solves `k*s ≡ rhs (mod n)`. There are either no solutions or exactly
/// `gcd(k, n)` of them (`n` of them when `k ≡ 0` and `rhs ≡ 0`).
pub fn solve_linear<T: Scalar>(k: Residue<T>, rhs: Residue<T>) -> SolutionSet<T> {
    k.check_same(rhs);
    let modulus = k.modulus;
    let n = modulus.n.to_wide();
    let kv = k.value.to_wide();
    let d = if kv == 0 { n } else { ext_gcd(kv, n).0 };
    let r = rhs.value.to_wide();
    if !r.is_multiple_of(d) {
        return SolutionSet { modulus, first: T::zero(), step: T::one(), count: 0 };
    }
    let reduced = n / d;
    let first = if reduced == 1 {
        0
    } else {
        let (_, s) = ext_gcd(kv / d % reduced, reduced);
        let inv = s.rem_euclid(reduced as i128) as u128;
        (r / d % reduced) * inv % reduced
    };
    SolutionSet {
        modulus,
        first: T::from_wide(first),
        step: T::from_wide(reduced),
        count: d as usize,
    }
}

/// Trial-division primality test.
pub fn is_prime<T: Scalar>(n: T) -> bool {
    let n = n.to_wide();
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: u64) -> Modulus<u64> {
        Modulus::new(n).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(5u64, 6), Ok(1));
        assert_eq!(gcd(4u64, 6), Ok(2));
        assert_eq!(gcd(8u64, 63), Ok(1));
        assert_eq!(gcd(0u64, 7), Ok(7));
        assert_eq!(gcd(0u64, 0), Err(ModError::BothZero));
    }

    #[test]
    fn modulus_one_rejected() {
        assert_eq!(Modulus::new(1u32), Err(ModError::InvalidModulus(1)));
        assert!(Modulus::new(0u8).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(z(5).residue(4).inverse().unwrap().value(), 4);
        assert_eq!(z(6).residue(5).inverse().unwrap().value(), 5);
        assert_eq!(
            z(6).residue(4).inverse(),
            Err(ModError::NotAUnit { value: 4, modulus: 6 })
        );
        assert!(z(6).zero().inverse().is_err());
    }

    #[test]
    fn solve_linear_examples() {
        let m = z(6);
        let vals = |s: SolutionSet<u64>| s.iter().map(|r| r.value()).collect::<Vec<_>>();
        assert_eq!(vals(solve_linear(m.residue(4), m.residue(2))), vec![2, 5]);
        assert_eq!(vals(solve_linear(m.residue(5), m.residue(3))), vec![3]);
        let m4 = z(4);
        assert!(solve_linear(m4.residue(2), m4.residue(1)).is_empty());
        // 0*s = 0 has every element as a solution
        assert_eq!(solve_linear(m4.zero(), m4.zero()).len(), 4);
        assert!(solve_linear(m4.zero(), m4.one()).is_empty());
    }

    #[test]
    fn prime_examples() {
        assert!(is_prime(7u64));
        assert!(!is_prime(63u64));
        assert!(is_prime(2u64));
        assert!(!is_prime(1u64));
        assert!(is_prime(999_983u64));
        assert!(!is_prime(1_000_000u64));
    }

    #[test]
    fn signed_normalization() {
        let m = z(7);
        assert_eq!(m.residue_signed(-1).value(), 6);
        assert_eq!(m.residue_signed(-2).value(), 5);
        assert_eq!(m.residue_signed(15).value(), 1);
    }

    #[test]
    fn narrow_scalar_type() {
        let m = Modulus::new(251u8).unwrap();
        let r = m.residue(250) * m.residue(250);
        assert_eq!(r.value(), 1);
        assert_eq!((m.residue(200) + m.residue(100)).value(), 49);
    }

    #[test]
    fn every_unit_has_an_inverse_up_to_100() {
        for n in 2..=100u64 {
            let m = z(n);
            for u in m.elements().filter(|r| r.is_unit()) {
                let inv = u.inverse().unwrap();
                assert_eq!((u * inv).value(), 1, "{u:?}");
            }
        }
    }

    #[test]
    fn solve_linear_matches_enumeration_up_to_50() {
        for n in 2..=50u64 {
            let m = z(n);
            for k in m.elements() {
                for rhs in m.elements() {
                    let brute: Vec<u64> =
                        m.elements().filter(|&s| k * s == rhs).map(|s| s.value()).collect();
                    let mut got: Vec<u64> =
                        solve_linear(k, rhs).iter().map(|s| s.value()).collect();
                    got.sort_unstable();
                    assert_eq!(got, brute, "n={n} k={k} rhs={rhs}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn arithmetic_is_closed(n in 2u64..1_000_000, x in any::<u64>(), y in any::<u64>()) {
            let m = z(n);
            let (a, b) = (m.residue(x), m.residue(y));
            for r in [a + b, a - b, a * b, -a, a.pow(5)] {
                prop_assert!(r.value() < n);
            }
            prop_assert_eq!((a - b) + b, a);
        }
    }
}
