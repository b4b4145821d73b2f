//! Arithmetic in GF(2^m) over a fixed polynomial basis.
//!
//! Elements are stored as the integer whose binary digits are the polynomial
//! basis coordinates, so in F4 = GF(2)[x]/(x^2+x+1) the elements in order are
//! 0, 1, ω = x (2) and ω^2 = x+1 (3). This integer order is the canonical
//! variable order everywhere else in the crate.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Polynomials over GF(2) packed into integers, bit `i` holding the
/// coefficient of `x^i`.
pub(crate) mod gf2x {
    pub fn degree(a: u128) -> Option<u32> {
        (a != 0).then(|| 127 - a.leading_zeros())
    }

    pub fn clmul(a: u64, b: u64) -> u128 {
        let mut acc = 0u128;
        let mut a = a as u128;
        let mut b = b;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            a <<= 1;
            b >>= 1;
        }
        acc
    }

    pub fn rem(mut a: u128, m: u128) -> u128 {
        let dm = degree(m).expect("division by the zero polynomial");
        while let Some(da) = degree(a) {
            if da < dm {
                break;
            }
            a ^= m << (da - dm);
        }
        a
    }

    pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
        rem(clmul(a, b), m as u128) as u64
    }

    pub fn gcd(mut a: u128, mut b: u128) -> u128 {
        while b != 0 {
            let r = rem(a, b);
            a = b;
            b = r;
        }
        a
    }
}

/// Rabin's irreducibility test for a polynomial over GF(2).
pub fn is_irreducible(modulus: u64) -> bool {
    let m = match gf2x::degree(modulus as u128) {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(m) => m,
    };
    // powers[k] = x^(2^k) mod f
    let mut powers = Vec::with_capacity(m as usize + 1);
    let mut s = gf2x::rem(0b10, modulus as u128) as u64;
    powers.push(s);
    for _ in 0..m {
        s = gf2x::mulmod(s, s, modulus);
        powers.push(s);
    }
    if powers[m as usize] != 0b10 {
        return false;
    }
    prime_factors(m as u64).into_iter().all(|r| {
        let s = powers[(m as u64 / r) as usize] ^ 0b10;
        gf2x::gcd(modulus as u128, s as u128) == 1
    })
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

fn combinations(pool: &[u32], k: usize, start: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..pool.len() {
        cur.push(pool[i]);
        combinations(pool, k, i + 1, cur, out);
        cur.pop();
    }
}

/// The modulus used for GF(2^m): the irreducible polynomial of lowest weight,
/// ties broken by the smallest integer encoding. This reproduces
/// x^2+x+1, x^3+x+1, x^4+x+1 and x^6+x+1 for the small fields.
pub fn default_modulus(m: u32) -> Result<u64> {
    if m == 0 || m > FieldCtx::MAX_DEGREE {
        return Err(Error::UnsupportedField(format!("GF(2^{m})")));
    }
    if m == 1 {
        return Ok(0b11);
    }
    let middle: Vec<u32> = (1..m).collect();
    let mut weight = 3;
    while weight <= m as usize + 1 {
        let mut combos = Vec::new();
        combinations(&middle, weight - 2, 0, &mut Vec::new(), &mut combos);
        let mut candidates: Vec<u64> = combos
            .iter()
            .map(|c| c.iter().fold((1u64 << m) | 1, |acc, &i| acc | (1 << i)))
            .collect();
        candidates.sort_unstable();
        if let Some(&f) = candidates.iter().find(|&&f| is_irreducible(f)) {
            return Ok(f);
        }
        weight += 2;
    }
    Err(Error::Internal(format!("no irreducible polynomial of degree {m}")))
}

/// An element of GF(2^m), encoded by its polynomial-basis coordinates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(pub u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field GF(2^degree) together with its defining modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    degree: u32,
    modulus: u64,
}

impl FieldCtx {
    pub const MAX_DEGREE: u32 = 63;

    /// GF(2^degree) with the modulus from [`default_modulus`].
    pub fn new(degree: u32) -> Result<Self> {
        Ok(FieldCtx { degree, modulus: default_modulus(degree)? })
    }

    pub fn with_modulus(modulus: u64) -> Result<Self> {
        let degree = gf2x::degree(modulus as u128).unwrap_or(0);
        if degree == 0 || !is_irreducible(modulus) {
            return Err(Error::Reducible(modulus));
        }
        Ok(FieldCtx { degree, modulus })
    }

    pub fn binary() -> Self {
        FieldCtx { degree: 1, modulus: 0b11 }
    }

    /// Parses names such as `F2`, `F4`, `F16`.
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = || Error::UnsupportedField(spec.to_string());
        let q: u64 = spec
            .strip_prefix('F')
            .or_else(|| spec.strip_prefix("GF"))
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?;
        if q < 2 || !q.is_power_of_two() || q.trailing_zeros() > 16 {
            return Err(bad());
        }
        FieldCtx::new(q.trailing_zeros())
    }

    pub fn name(&self) -> String {
        if self.degree <= 16 {
            format!("F{}", self.order())
        } else {
            format!("F2^{}", self.degree)
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        1u64 << self.degree
    }

    fn mask(&self) -> u64 {
        if self.degree == 64 {
            u64::MAX
        } else {
            (1u64 << self.degree) - 1
        }
    }

    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if value & !self.mask() != 0 {
            return Err(Error::Invalid(format!("{value} is not an element of {}", self.name())));
        }
        Ok(FieldElement(value))
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 & !self.mask() == 0
    }

    /// All elements in canonical order. Intended for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order()).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.order()).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let reduction = self.modulus & self.mask();
        let top = 1u64 << (self.degree - 1);
        let (mut a, mut b) = (a.0, b.0);
        let mut acc = 0u64;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            let carry = a & top;
            a = (a << 1) & self.mask();
            if carry != 0 {
                a ^= reduction;
            }
        }
        FieldElement(acc)
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        (!a.is_zero()).then(|| self.pow(a, self.order() - 2))
    }

    /// Absolute trace to GF(2), returned as 0 or 1.
    pub fn trace(&self, a: FieldElement) -> u8 {
        let mut t = a;
        let mut acc = a.0;
        for _ in 1..self.degree {
            t = self.square(t);
            acc ^= t.0;
        }
        debug_assert!(acc <= 1);
        acc as u8
    }

    /// Trace to the subfield of degree `sub_degree`, as an element of `self`.
    pub fn relative_trace(&self, a: FieldElement, sub_degree: u32) -> FieldElement {
        let e = self.degree / sub_degree;
        let mut t = a;
        let mut acc = a;
        for _ in 1..e {
            t = self.frobenius(t, sub_degree);
            acc = self.add(acc, t);
        }
        acc
    }

    /// `a^(2^k)`.
    pub fn frobenius(&self, a: FieldElement, k: u32) -> FieldElement {
        (0..k % self.degree).fold(a, |x, _| self.square(x))
    }

    pub fn multiplicative_order(&self, a: FieldElement) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let mut ord = self.order() - 1;
        for r in prime_factors(ord) {
            while ord % r == 0 && self.pow(a, ord / r) == FieldElement::ONE {
                ord /= r;
            }
        }
        Some(ord)
    }

    /// Least primitive element in the canonical order.
    pub fn primitive_element(&self) -> FieldElement {
        let n = self.order() - 1;
        let factors = prime_factors(n);
        self.nonzero_elements()
            .find(|&a| factors.iter().all(|&r| self.pow(a, n / r) != FieldElement::ONE))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    /// Evaluate a GF(2)-polynomial (bit vector) at `a`.
    fn eval_gf2x(&self, poly: u64, a: FieldElement) -> FieldElement {
        let deg = gf2x::degree(poly as u128).unwrap_or(0);
        (0..=deg).rev().fold(FieldElement::ZERO, |acc, i| {
            let acc = self.mul(acc, a);
            if poly >> i & 1 == 1 {
                self.add(acc, FieldElement::ONE)
            } else {
                acc
            }
        })
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

pub fn trace(ctx: &FieldCtx, a: FieldElement) -> u8 {
    ctx.trace(a)
}

pub fn frobenius(ctx: &FieldCtx, a: FieldElement, k: u32) -> FieldElement {
    ctx.frobenius(a, k)
}

/// A field embedding `sub -> sup` sending the generator of `sub` to the least
/// root of its modulus inside `sup`.
#[derive(Clone, Debug)]
pub struct Embedding {
    sub: FieldCtx,
    sup: FieldCtx,
    images: Vec<FieldElement>,
    back: HashMap<FieldElement, FieldElement>,
}

impl Embedding {
    pub fn new(sub: FieldCtx, sup: FieldCtx) -> Result<Self> {
        if sup.degree % sub.degree != 0 {
            return Err(Error::FieldMismatch(format!("{sub} is not a subfield of {sup}")));
        }
        if sub.degree > 20 {
            return Err(Error::Budget(format!("subfield {sub} too large to tabulate")));
        }
        let root = if sub == sup {
            FieldElement(0b10)
        } else {
            // roots of the subfield modulus live in the unique subfield of
            // order 2^d, generated by g^((2^D-1)/(2^d-1))
            let g = sup.primitive_element();
            let gamma = sup.pow(g, (sup.order() - 1) / (sub.order() - 1));
            let mut x = FieldElement::ONE;
            let mut best: Option<FieldElement> = None;
            for _ in 0..sub.order() - 1 {
                if sup.eval_gf2x(sub.modulus, x).is_zero() && best.is_none_or(|b| x < b) {
                    best = Some(x);
                }
                x = sup.mul(x, gamma);
            }
            best.ok_or_else(|| Error::Internal(format!("no root of {sub} modulus in {sup}")))?
        };
        let mut powers = Vec::with_capacity(sub.degree as usize);
        let mut p = FieldElement::ONE;
        for _ in 0..sub.degree {
            powers.push(p);
            p = sup.mul(p, root);
        }
        let images: Vec<FieldElement> = sub
            .elements()
            .map(|x| {
                powers
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| x.0 >> i & 1 == 1)
                    .fold(FieldElement::ZERO, |acc, (_, &b)| sup.add(acc, b))
            })
            .collect();
        let back = sub.elements().zip(images.iter().copied()).map(|(x, y)| (y, x)).collect();
        Ok(Embedding { sub, sup, images, back })
    }

    pub fn sub(&self) -> FieldCtx {
        self.sub
    }

    pub fn sup(&self) -> FieldCtx {
        self.sup
    }

    pub fn embed(&self, x: FieldElement) -> FieldElement {
        self.images[x.index()]
    }

    /// Preimage of `y`, if `y` lies in the image of the subfield.
    pub fn restrict(&self, y: FieldElement) -> Option<FieldElement> {
        self.back.get(&y).copied()
    }
}

/// A self-complementary basis `(b_1, ..., b_e)` of GF(2^m) over its subfield
/// of degree `sub_degree`: `Tr(b_i b_j) = δ_ij` for the relative trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScBasis {
    ctx: FieldCtx,
    sub_degree: u32,
    elems: Vec<FieldElement>,
}

/// First self-complementary basis over GF(2) in lexicographic order.
pub fn find_sc_basis(ctx: &FieldCtx) -> Result<ScBasis> {
    find_sc_basis_over(ctx, 1)
}

/// First self-complementary basis over the subfield of degree `sub_degree`,
/// found by depth-first search through the elements in canonical order.
pub fn find_sc_basis_over(ctx: &FieldCtx, sub_degree: u32) -> Result<ScBasis> {
    let none = || Error::NoScBasis { degree: ctx.degree, sub_degree };
    if sub_degree == 0 || ctx.degree % sub_degree != 0 {
        return Err(none());
    }
    if ctx.degree > 20 {
        return Err(Error::Budget(format!("basis search in {ctx} is too large")));
    }
    let e = (ctx.degree / sub_degree) as usize;
    let tr = |a| ctx.relative_trace(a, sub_degree);
    // candidates with Tr(b^2) = 1, in increasing order
    let unit: Vec<FieldElement> =
        ctx.nonzero_elements().filter(|&b| tr(ctx.square(b)) == FieldElement::ONE).collect();

    fn dfs(
        ctx: &FieldCtx,
        tr: &dyn Fn(FieldElement) -> FieldElement,
        unit: &[FieldElement],
        e: usize,
        cur: &mut Vec<FieldElement>,
    ) -> bool {
        if cur.len() == e {
            return true;
        }
        for &b in unit {
            if cur.iter().all(|&c| tr(ctx.mul(b, c)).is_zero()) {
                cur.push(b);
                if dfs(ctx, tr, unit, e, cur) {
                    return true;
                }
                cur.pop();
            }
        }
        false
    }

    let mut elems = Vec::with_capacity(e);
    if !dfs(ctx, &tr, &unit, e, &mut elems) {
        return Err(none());
    }
    ScBasis::new(*ctx, sub_degree, elems)
}

impl ScBasis {
    /// Validates the trace-orthogonality of `elems`.
    pub fn new(ctx: FieldCtx, sub_degree: u32, elems: Vec<FieldElement>) -> Result<Self> {
        let e = (ctx.degree / sub_degree) as usize;
        if elems.len() != e || ctx.degree % sub_degree != 0 {
            return Err(Error::Dimension(format!("need {e} basis elements, got {}", elems.len())));
        }
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                let t = ctx.relative_trace(ctx.mul(a, b), sub_degree);
                if t != FieldElement((i == j) as u64) {
                    return Err(Error::Invalid(format!(
                        "Tr(b_{i} b_{j}) = {t}, basis is not self-complementary"
                    )));
                }
            }
        }
        Ok(ScBasis { ctx, sub_degree, elems })
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn sub_degree(&self) -> u32 {
        self.sub_degree
    }

    pub fn elems(&self) -> &[FieldElement] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Coordinates of `a`, as elements of the subfield sitting inside `ctx`.
    /// Orthonormality gives `a_i = Tr(a b_i)`.
    pub fn expand(&self, a: FieldElement) -> Vec<FieldElement> {
        self.elems
            .iter()
            .map(|&b| self.ctx.relative_trace(self.ctx.mul(a, b), self.sub_degree))
            .collect()
    }

    pub fn combine(&self, coords: &[FieldElement]) -> FieldElement {
        assert_eq!(coords.len(), self.elems.len(), "coordinate count");
        coords
            .iter()
            .zip(&self.elems)
            .fold(FieldElement::ZERO, |acc, (&c, &b)| self.ctx.add(acc, self.ctx.mul(c, b)))
    }

    /// Binary coordinates of `a` (basis over GF(2) only).
    pub fn expand_bits(&self, a: FieldElement) -> Vec<u8> {
        assert_eq!(self.sub_degree, 1, "expand_bits needs a basis over GF(2)");
        self.expand(a).into_iter().map(|c| c.0 as u8).collect()
    }

    pub fn combine_bits(&self, bits: &[u8]) -> FieldElement {
        let coords: Vec<FieldElement> = bits.iter().map(|&b| FieldElement((b & 1) as u64)).collect();
        self.combine(&coords)
    }

    /// The weight of the binary coordinates of `a`, modulo 4.
    pub fn phi(&self, a: FieldElement) -> u8 {
        (self.expand_bits(a).iter().map(|&b| b as u32).sum::<u32>() % 4) as u8
    }

    /// `phi` for every element, indexed by the element's integer value.
    pub fn phi_table(&self) -> Vec<u8> {
        self.ctx.elements().map(|a| self.phi(a)).collect()
    }
}

pub fn phi(a: FieldElement, basis: &ScBasis) -> u8 {
    basis.phi(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const W: FieldElement = FieldElement(2);
    const W2: FieldElement = FieldElement(3);

    fn f4() -> FieldCtx {
        FieldCtx::new(2).unwrap()
    }

    #[test]
    fn modulus_table() {
        assert_eq!(default_modulus(1).unwrap(), 0b11);
        assert_eq!(default_modulus(2).unwrap(), 0b111);
        assert_eq!(default_modulus(3).unwrap(), 0b1011);
        assert_eq!(default_modulus(4).unwrap(), 0b10011);
        assert_eq!(default_modulus(6).unwrap(), 0b1000011);
        assert!(!is_irreducible(0b10101)); // (x^2+x+1)^2
        assert!(FieldCtx::with_modulus(0b110).is_err());
    }

    #[test]
    fn trace_examples() {
        let f = f4();
        assert_eq!(f.trace(FieldElement::ZERO), 0);
        assert_eq!(f.trace(W), 1);
        assert_eq!(f.trace(FieldElement::ONE), 0);
        assert_eq!(f.trace(W2), 1);
    }

    #[test]
    fn frobenius_examples() {
        let f = f4();
        assert_eq!(f.frobenius(W, 0), W);
        assert_eq!(f.frobenius(W, 1), W2);
        let f16 = FieldCtx::new(4).unwrap();
        for a in f16.elements() {
            assert_eq!(f16.frobenius(a, 4), a);
        }
    }

    /// Exhaustive oracle: lexicographically first orthonormal tuple.
    fn brute_sc_basis(ctx: &FieldCtx) -> Vec<FieldElement> {
        let m = ctx.degree() as usize;
        let q = ctx.order();
        let total = q.pow(m as u32);
        for code in 0..total {
            let tuple: Vec<FieldElement> =
                (0..m).rev().map(|i| FieldElement(code / q.pow(i as u32) % q)).collect();
            let ok = (0..m).all(|i| {
                (0..m).all(|j| ctx.trace(ctx.mul(tuple[i], tuple[j])) == (i == j) as u8)
            });
            if ok {
                return tuple;
            }
        }
        panic!("no basis")
    }

    #[test]
    fn sc_basis_pinned() {
        assert_eq!(find_sc_basis(&FieldCtx::binary()).unwrap().elems(), &[FieldElement::ONE]);
        assert_eq!(find_sc_basis(&f4()).unwrap().elems(), &[W, W2]);
        for m in [2, 3] {
            let ctx = FieldCtx::new(m).unwrap();
            assert_eq!(find_sc_basis(&ctx).unwrap().elems(), brute_sc_basis(&ctx).as_slice());
        }
        let f16 = FieldCtx::new(4).unwrap();
        let b = find_sc_basis(&f16).unwrap();
        for (i, &x) in b.elems().iter().enumerate() {
            for (j, &y) in b.elems().iter().enumerate() {
                assert_eq!(f16.trace(f16.mul(x, y)), (i == j) as u8);
            }
        }
        assert!(find_sc_basis(&FieldCtx::new(6).unwrap()).is_ok());
    }

    #[test]
    fn relative_sc_basis() {
        let f16 = FieldCtx::new(4).unwrap();
        let b = find_sc_basis_over(&f16, 2).unwrap();
        assert_eq!(b.len(), 2);
        let emb = Embedding::new(f4(), f16).unwrap();
        for a in f16.elements() {
            let coords = b.expand(a);
            assert!(coords.iter().all(|&c| emb.restrict(c).is_some()));
            assert_eq!(b.combine(&coords), a);
        }
    }

    #[test]
    fn phi_examples() {
        let b = find_sc_basis(&f4()).unwrap();
        assert_eq!(b.phi(FieldElement::ZERO), 0);
        assert_eq!(b.phi(W), 1);
        assert_eq!(b.phi(FieldElement::ONE), 2);
        assert_eq!(b.expand_bits(FieldElement::ONE), vec![1, 1]);
        assert_eq!(b.expand_bits(FieldElement::ZERO), vec![0, 0]);
    }

    #[test]
    fn phi_identities_exhaustive() {
        for m in 1..=4 {
            let ctx = FieldCtx::new(m).unwrap();
            let b = find_sc_basis(&ctx).unwrap();
            for a in ctx.elements() {
                assert_eq!(b.phi(a) % 2, ctx.trace(a));
                assert_eq!(b.combine_bits(&b.expand_bits(a)), a);
                for c in ctx.elements() {
                    let lhs = b.phi(ctx.add(a, c));
                    let rhs = (b.phi(a) + b.phi(c) + 2 * ctx.trace(ctx.mul(a, c))) % 4;
                    assert_eq!(lhs, rhs, "F{} a={a} c={c}", ctx.order());
                }
            }
        }
    }

    #[test]
    fn trace_nondegenerate() {
        for m in 1..=6 {
            let ctx = FieldCtx::new(m).unwrap();
            for r in ctx.nonzero_elements() {
                assert!(ctx.elements().any(|a| ctx.trace(ctx.mul(r, a)) == 1));
            }
        }
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let big = FieldCtx::new(6).unwrap();
        for sub in [FieldCtx::binary(), f4(), FieldCtx::new(3).unwrap()] {
            let e = Embedding::new(sub, big).unwrap();
            for a in sub.elements() {
                for c in sub.elements() {
                    assert_eq!(e.embed(sub.mul(a, c)), big.mul(e.embed(a), e.embed(c)));
                    assert_eq!(e.embed(sub.add(a, c)), big.add(e.embed(a), e.embed(c)));
                }
                assert_eq!(e.restrict(e.embed(a)), Some(a));
            }
        }
        assert!(Embedding::new(FieldCtx::new(4).unwrap(), big).is_err());
    }

    #[test]
    fn parse_names() {
        assert_eq!(FieldCtx::parse("F4").unwrap(), f4());
        assert_eq!(FieldCtx::parse("F64").unwrap().degree(), 6);
        assert!(FieldCtx::parse("F6").is_err());
        assert!(FieldCtx::parse("Q4").is_err());
        assert_eq!(f4().name(), "F4");
    }

    #[test]
    fn primitive_elements() {
        assert_eq!(f4().primitive_element(), W);
        let f = FieldCtx::new(22).unwrap();
        let g = f.primitive_element();
        assert_eq!(f.multiplicative_order(g), Some(f.order() - 1));
    }

    proptest! {
        #[test]
        fn field_axioms(m in 1u32..=12, a: u64, b: u64, c: u64) {
            let ctx = FieldCtx::new(m).unwrap();
            let mask = ctx.order() - 1;
            let (a, b, c) = (FieldElement(a & mask), FieldElement(b & mask), FieldElement(c & mask));
            prop_assert_eq!(ctx.mul(ctx.mul(a, b), c), ctx.mul(a, ctx.mul(b, c)));
            prop_assert_eq!(ctx.mul(a, ctx.add(b, c)), ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
            prop_assert_eq!(ctx.mul(a, b), ctx.mul(b, a));
            prop_assert_eq!(ctx.square(ctx.add(a, b)), ctx.add(ctx.square(a), ctx.square(b)));
            if let Some(inv) = ctx.inv(a) {
                prop_assert_eq!(ctx.mul(a, inv), FieldElement::ONE);
            }
        }
    }
}
