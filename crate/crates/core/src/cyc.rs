//! Exact arithmetic in the cyclotomic field Q(ζ₈) = Q[ζ]/(ζ⁴ + 1), and
//! square matrices over it.
//!
//! `i = ζ²` and `√2 = ζ - ζ³`, so every entry of the Clifford-Weil
//! generators lives here for every field degree.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// `c₀ + c₁ζ + c₂ζ² + c₃ζ³`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyc8<T>(pub [T; 4]);

/// Elements of Q(ζ₈) with arbitrary-precision rational coordinates.
pub type CycQ = Cyc8<BigRational>;

impl<T: Clone + Zero> Cyc8<T> {
    pub fn from_rational(c: T) -> Self {
        Cyc8([c, T::zero(), T::zero(), T::zero()])
    }

    /// `ζᵏ` scaled by `c`.
    pub fn monomial(k: i64, c: T) -> Self
    where
        T: Neg<Output = T>,
    {
        let k = k.rem_euclid(8) as usize;
        let mut out = Cyc8([T::zero(), T::zero(), T::zero(), T::zero()]);
        out.0[k % 4] = if k >= 4 { -c } else { c };
        out
    }

    pub fn coords(&self) -> &[T; 4] {
        &self.0
    }

    /// The rational part when the element is rational.
    pub fn as_rational(&self) -> Option<&T> {
        self.0[1..].iter().all(Zero::is_zero).then_some(&self.0[0])
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }
}

impl<T: Clone + Zero + One + Neg<Output = T>> Cyc8<T> {
    pub fn zeta() -> Self {
        Self::monomial(1, T::one())
    }

    pub fn i() -> Self {
        Self::monomial(2, T::one())
    }

    /// `iᵏ`.
    pub fn i_pow(k: i64) -> Self {
        Self::monomial(2 * k, T::one())
    }

    pub fn sqrt2() -> Self {
        Cyc8([T::zero(), T::one(), T::zero(), -T::one()])
    }

    /// Complex conjugate, `ζ ↦ ζ⁻¹`.
    pub fn conj(&self) -> Self {
        let [a, b, c, d] = self.0.clone();
        Cyc8([a, -d, -c, -b])
    }

    /// The Galois automorphism `ζ ↦ ζᵏ`, `k` odd.
    pub fn galois(&self, k: i64) -> Self {
        match k.rem_euclid(8) {
            1 => self.clone(),
            3 => {
                let [a, b, c, d] = self.0.clone();
                Cyc8([a, d, -c, b])
            }
            5 => {
                let [a, b, c, d] = self.0.clone();
                Cyc8([a, -b, c, -d])
            }
            7 => self.conj(),
            _ => panic!("ζ ↦ ζ^{k} is not an automorphism"),
        }
    }
}

impl<T: Clone + Zero> Zero for Cyc8<T>
where
    Cyc8<T>: Add<Output = Cyc8<T>>,
{
    fn zero() -> Self {
        Cyc8([T::zero(), T::zero(), T::zero(), T::zero()])
    }
    fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl<T: Clone + Zero + One + Sub<Output = T>> One for Cyc8<T> {
    fn one() -> Self {
        Cyc8([T::one(), T::zero(), T::zero(), T::zero()])
    }
}

impl<T: Clone + Add<Output = T>> Add for Cyc8<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let [a0, a1, a2, a3] = self.0;
        let [b0, b1, b2, b3] = o.0;
        Cyc8([a0 + b0, a1 + b1, a2 + b2, a3 + b3])
    }
}

impl<'a, T: Clone + Add<Output = T>> Add<&'a Cyc8<T>> for &'a Cyc8<T> {
    type Output = Cyc8<T>;
    fn add(self, o: Self) -> Cyc8<T> {
        self.clone() + o.clone()
    }
}

impl<T: Clone + Add<Output = T>> AddAssign<&Cyc8<T>> for Cyc8<T> {
    fn add_assign(&mut self, o: &Self) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a = a.clone() + b.clone();
        }
    }
}

impl<T: Clone + Sub<Output = T>> Sub for Cyc8<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let [a0, a1, a2, a3] = self.0;
        let [b0, b1, b2, b3] = o.0;
        Cyc8([a0 - b0, a1 - b1, a2 - b2, a3 - b3])
    }
}

impl<T: Neg<Output = T>> Neg for Cyc8<T> {
    type Output = Self;
    fn neg(self) -> Self {
        let [a, b, c, d] = self.0;
        Cyc8([-a, -b, -c, -d])
    }
}

impl<'a, T> Mul<&'a Cyc8<T>> for &'a Cyc8<T>
where
    T: Clone + Zero + Mul<Output = T> + Sub<Output = T>,
{
    type Output = Cyc8<T>;
    fn mul(self, o: Self) -> Cyc8<T> {
        let a = &self.0;
        let b = &o.0;
        let mut c = [T::zero(), T::zero(), T::zero(), T::zero()];
        for i in 0..4 {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if b[j].is_zero() {
                    continue;
                }
                let p = a[i].clone() * b[j].clone();
                let k = i + j;
                if k < 4 {
                    c[k] = c[k].clone() + p;
                } else {
                    c[k - 4] = c[k - 4].clone() - p;
                }
            }
        }
        Cyc8(c)
    }
}

impl<T> Mul for Cyc8<T>
where
    T: Clone + Zero + Mul<Output = T> + Sub<Output = T>,
{
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
}

impl CycQ {
    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Cyc8(self.0.clone().map(|x| x * c))
    }

    /// The field norm down to Q.
    pub fn norm(&self) -> BigRational {
        let p = &(self * &self.galois(3)) * &(&self.galois(5) * &self.galois(7));
        debug_assert!(p.is_rational());
        p.0[0].clone()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let others = &self.galois(3) * &(&self.galois(5) * &self.galois(7));
        let n = (self * &others).0[0].clone();
        Some(others.scale(&n.recip()))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `k` with `self == ζᵏ`, if `self` is an 8th root of unity.
    pub fn root_of_unity_index(&self) -> Option<u32> {
        (0..8).find(|&k| *self == Self::monomial(k, BigRational::one())).map(|k| k as u32)
    }

    pub fn to_strings(&self) -> [String; 4] {
        self.0.clone().map(|c| c.to_string())
    }
}

impl fmt::Display for CycQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A dense `dim × dim` matrix over Q(ζ₈), stored as integer coordinates
/// over one positive common denominator and kept in lowest terms, so equal
/// matrices have equal representations (and hashes).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycMatrix {
    dim: usize,
    den: i64,
    num: Vec<Cyc8<i32>>,
}

fn rat_to_parts(x: &BigRational) -> (BigInt, BigInt) {
    (x.numer().clone(), x.denom().clone())
}

impl CycMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut num = vec![Cyc8([0; 4]); dim * dim];
        for i in 0..dim {
            num[i * dim + i] = Cyc8([1, 0, 0, 0]);
        }
        CycMatrix { dim, den: 1, num }
    }

    pub fn scalar(dim: usize, s: &CycQ) -> Result<Self> {
        let mut e = vec![CycQ::zero(); dim * dim];
        for i in 0..dim {
            e[i * dim + i] = s.clone();
        }
        Self::from_entries(dim, &e)
    }

    /// Builds a matrix from row-major exact entries.
    pub fn from_entries(dim: usize, entries: &[CycQ]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::Dimension(format!("{} entries for a {dim}x{dim} matrix", entries.len())));
        }
        let mut den = BigInt::one();
        for e in entries {
            for c in &e.0 {
                den = den.lcm(c.denom());
            }
        }
        let too_big = || Error::Invalid("matrix entries exceed the packed coordinate range".into());
        let num = entries
            .iter()
            .map(|e| {
                let mut out = [0i32; 4];
                for (o, c) in out.iter_mut().zip(&e.0) {
                    let (n, d) = rat_to_parts(c);
                    *o = (n * (&den / d)).to_i32().ok_or_else(too_big)?;
                }
                Ok(Cyc8(out))
            })
            .collect::<Result<Vec<_>>>()?;
        let den = den.to_i64().ok_or_else(too_big)?;
        Ok(CycMatrix { dim, den, num })
    }

    fn from_wide(dim: usize, den: i64, wide: Vec<[i64; 4]>) -> Option<Self> {
        let mut g = den;
        for c in &wide {
            for &x in c {
                g = g.gcd(&x);
                if g == 1 {
                    break;
                }
            }
        }
        let num = wide
            .iter()
            .map(|c| {
                let mut out = [0i32; 4];
                for (o, &x) in out.iter_mut().zip(c) {
                    *o = i32::try_from(x / g).ok()?;
                }
                Some(Cyc8(out))
            })
            .collect::<Option<Vec<_>>>()?;
        Some(CycMatrix { dim, den: den / g, num })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, a: usize, b: usize) -> CycQ {
        let c = &self.num[a * self.dim + b].0;
        Cyc8(c.map(|x| BigRational::new(x.into(), self.den.into())))
    }

    pub fn entries(&self) -> Vec<CycQ> {
        (0..self.dim * self.dim).map(|k| self.entry(k / self.dim, k % self.dim)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<CycQ>> {
        (0..self.dim).map(|a| (0..self.dim).map(|b| self.entry(a, b)).collect()).collect()
    }

    fn is_zero_at(&self, a: usize, b: usize) -> bool {
        self.num[a * self.dim + b].0 == [0; 4]
    }

    /// Product, or `None` when an entry leaves the packed range.
    pub fn checked_mul(&self, o: &CycMatrix) -> Option<CycMatrix> {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let n = self.dim;
        let mut wide = vec![[0i64; 4]; n * n];
        for a in 0..n {
            for k in 0..n {
                let x = self.num[a * n + k].0;
                if x == [0; 4] {
                    continue;
                }
                for b in 0..n {
                    let y = o.num[k * n + b].0;
                    if y == [0; 4] {
                        continue;
                    }
                    let acc = &mut wide[a * n + b];
                    for (i, &xi) in x.iter().enumerate() {
                        if xi == 0 {
                            continue;
                        }
                        for (j, &yj) in y.iter().enumerate() {
                            let p = xi as i64 * yj as i64;
                            let t = i + j;
                            if t < 4 {
                                acc[t] += p;
                            } else {
                                acc[t - 4] -= p;
                            }
                        }
                    }
                }
            }
        }
        let den = self.den.checked_mul(o.den)?;
        Self::from_wide(n, den, wide)
    }

    pub fn mul(&self, o: &CycMatrix) -> CycMatrix {
        self.checked_mul(o).expect("matrix entries left the packed range")
    }

    pub fn pow(&self, mut e: u64) -> CycMatrix {
        let mut base = self.clone();
        let mut acc = CycMatrix::identity(self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == CycMatrix::identity(self.dim)
    }

    /// The scalar `s` when the matrix is `s·I`.
    pub fn as_scalar(&self) -> Option<CycQ> {
        let d = self.num[0];
        let n = self.dim;
        let ok = (0..n).all(|a| (0..n).all(|b| if a == b { self.num[a * n + b] == d } else { self.is_zero_at(a, b) }));
        ok.then(|| self.entry(0, 0))
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.dim;
        (0..n).all(|a| (0..n).all(|b| a == b || self.is_zero_at(a, b)))
    }

    /// For a monomial matrix (one nonzero entry per row and column) the
    /// column of the nonzero entry in each row, and the entries.
    pub fn as_monomial(&self) -> Option<(Vec<usize>, Vec<CycQ>)> {
        let n = self.dim;
        let mut perm = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for a in 0..n {
            let mut cols = (0..n).filter(|&b| !self.is_zero_at(a, b));
            let b = cols.next()?;
            if cols.next().is_some() || seen[b] {
                return None;
            }
            seen[b] = true;
            perm.push(b);
        }
        let vals = perm.iter().enumerate().map(|(a, &b)| self.entry(a, b)).collect();
        Some((perm, vals))
    }

    /// `s` and rational `N` with `self = s·N`, when such a pair exists.
    pub fn as_rational_multiple(&self) -> Option<(CycQ, Vec<Vec<BigRational>>)> {
        let n = self.dim;
        let pivot = self.num.iter().position(|c| c.0 != [0; 4])?;
        let s = self.entry(pivot / n, pivot % n);
        let s_inv = s.inv()?;
        let mut rows = Vec::with_capacity(n);
        for a in 0..n {
            let mut row = Vec::with_capacity(n);
            for b in 0..n {
                let r = &self.entry(a, b) * &s_inv;
                row.push(r.as_rational()?.clone());
            }
            rows.push(row);
        }
        Some((s, rows))
    }

    pub fn trace(&self) -> CycQ {
        let n = self.dim;
        let mut t = [0i64; 4];
        for a in 0..n {
            for (x, &y) in t.iter_mut().zip(&self.num[a * n + a].0) {
                *x += y as i64;
            }
        }
        Cyc8(t.map(|x| BigRational::new(x.into(), self.den.into())))
    }

    /// Trace as packed integer coordinates over a denominator, in lowest
    /// terms; cheap hashable key.
    pub fn trace_key(&self) -> ([i64; 4], i64) {
        let n = self.dim;
        let mut t = [0i64; 4];
        for a in 0..n {
            for (x, &y) in t.iter_mut().zip(&self.num[a * n + a].0) {
                *x += y as i64;
            }
        }
        let g = t.iter().fold(self.den, |g, &x| g.gcd(&x));
        (t.map(|x| x / g), self.den / g)
    }

    pub fn conj_transpose(&self) -> CycMatrix {
        let n = self.dim;
        let mut num = vec![Cyc8([0; 4]); n * n];
        for a in 0..n {
            for b in 0..n {
                let [c0, c1, c2, c3] = self.num[b * n + a].0;
                num[a * n + b] = Cyc8([c0, -c3, -c2, -c1]);
            }
        }
        CycMatrix { dim: n, den: self.den, num }
    }

    pub fn is_unitary(&self) -> bool {
        self.checked_mul(&self.conj_transpose()).is_some_and(|p| p.is_identity())
    }

    /// Exact inverse by Gauss-Jordan elimination over Q(ζ₈).
    pub fn inverse(&self) -> Option<CycMatrix> {
        let n = self.dim;
        let mut a = self.rows();
        let mut inv: Vec<Vec<CycQ>> = CycMatrix::identity(n).rows();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero())?;
            a.swap(c, p);
            inv.swap(c, p);
            let pinv = a[c][c].inv()?;
            for j in 0..n {
                a[c][j] = &a[c][j] * &pinv;
                inv[c][j] = &inv[c][j] * &pinv;
            }
            for r in 0..n {
                if r == c || a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].clone();
                for j in 0..n {
                    a[r][j] = a[r][j].clone() - &f * &a[c][j];
                    inv[r][j] = inv[r][j].clone() - &f * &inv[c][j];
                }
            }
        }
        CycMatrix::from_entries(n, &inv.concat()).ok()
    }

    pub fn to_json_entries(&self) -> Vec<Vec<[String; 4]>> {
        self.rows().iter().map(|r| r.iter().map(|e| e.to_strings()).collect()).collect()
    }
}

#[derive(Serialize)]
struct MatrixJson {
    dim: usize,
    entries: Vec<Vec<[String; 4]>>,
}

impl Serialize for CycMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson { dim: self.dim, entries: self.to_json_entries() }.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn arb_cyc() -> impl Strategy<Value = CycQ> {
        proptest::array::uniform4((-20i64..20, 1i64..6)).prop_map(|c| Cyc8(c.map(|(n, d)| BigRational::new(n.into(), d.into()))))
    }

    #[test]
    fn basic_identities() {
        let z = CycQ::zeta();
        assert_eq!(z.pow(4), CycQ::from_int(-1));
        assert_eq!(z.pow(8), CycQ::one());
        assert_eq!(CycQ::i().pow(2), CycQ::from_int(-1));
        let s = CycQ::sqrt2();
        assert_eq!(&s * &s, CycQ::from_int(2));
        assert_eq!(&z * &z.conj(), CycQ::one());
        assert_eq!(CycQ::i_pow(3), -CycQ::i());
        assert_eq!(z.root_of_unity_index(), Some(1));
        assert_eq!(CycQ::from_int(-1).root_of_unity_index(), Some(4));
        assert_eq!(CycQ::sqrt2().norm(), q(4));
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_cyc(), b in arb_cyc(), c in arb_cyc()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            for k in [3, 5, 7] {
                prop_assert_eq!((&a * &b).galois(k), &a.galois(k) * &b.galois(k));
            }
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), CycQ::one());
            }
        }
    }

    #[test]
    fn packed_matrices() {
        let r = CycQ::sqrt2().scale(&BigRational::new(1.into(), 2.into()));
        let h = CycMatrix::from_entries(2, &[r.clone(), r.clone(), r.clone(), -r]).unwrap();
        assert!(h.is_unitary());
        assert!(h.mul(&h).is_identity());
        assert_eq!(h.inverse().unwrap(), h);
        let (s, n) = h.as_rational_multiple().unwrap();
        assert_eq!(s.scale(&q(2)), CycQ::sqrt2());
        assert_eq!(n, vec![vec![q(1), q(1)], vec![q(1), q(-1)]]);
        assert!(h.as_monomial().is_none());
        let two = CycMatrix::scalar(3, &CycQ::from_ratio(1, 2)).unwrap();
        assert_eq!(two.as_scalar(), Some(CycQ::from_ratio(1, 2)));
        assert!(two.mul(&CycMatrix::scalar(3, &CycQ::from_int(2)).unwrap()).is_identity());
        assert_eq!(two.trace(), CycQ::from_ratio(3, 2));
        assert_eq!(two.trace_key(), ([3, 0, 0, 0], 2));
    }
}
