//! Sparse multivariate polynomials in the variables `x_a`, `a` a field
//! element, and complete weight enumerators.
//!
//! Exponent vectors are packed one byte per variable into a [`Monomial`],
//! `x_0` in the most significant byte, so the integer order of monomials is
//! the lexicographic order of exponent vectors. At most eight variables and
//! exponents up to 255 are supported, which covers fields up to F8.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::codes::LinearCode;
use crate::cyc::{CycMatrix, CycQ};
use crate::enumerate::{check_budget, with_enumerator};
use crate::error::{Error, Result};
use crate::gf::{Embedding, FieldCtx, ScBasis};
use crate::par::Exec;

pub const MAX_VARS: usize = 8;

/// Default cap on the number of terms an expansion may produce.
pub const DEFAULT_TERM_CAP: usize = 10_000_000;

/// Coefficient rings usable in [`Poly`].
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync + Zero + One + 'static {
    fn add_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_bigint(n: BigInt) -> Self;
}

/// Coefficient fields, needed to factor substitutions.
pub trait FieldCoeff: Coeff {
    fn inv(&self) -> Option<Self>;
}

impl Coeff for BigRational {
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_bigint(n: BigInt) -> Self {
        BigRational::from_integer(n)
    }
}

impl FieldCoeff for BigRational {
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl Coeff for CycQ {
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self.clone()
    }
    fn from_bigint(n: BigInt) -> Self {
        CycQ::from_rational(BigRational::from_integer(n))
    }
}

impl FieldCoeff for CycQ {
    fn inv(&self) -> Option<Self> {
        CycQ::inv(self)
    }
}

/// An exponent vector of up to eight variables.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    #[inline]
    fn shift(i: usize) -> u32 {
        56 - 8 * i as u32
    }

    pub fn from_exps(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::UnsupportedField(format!("{} variables (at most {MAX_VARS})", exps.len())));
        }
        let mut m = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            if e > 255 {
                return Err(Error::Invalid(format!("exponent {e} exceeds 255")));
            }
            m |= (e as u64) << Self::shift(i);
        }
        Ok(Monomial(m))
    }

    pub fn var(i: usize) -> Self {
        Monomial(1u64 << Self::shift(i))
    }

    #[inline]
    pub fn exp(self, i: usize) -> u32 {
        ((self.0 >> Self::shift(i)) & 0xff) as u32
    }

    pub fn exps(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exp(i)).collect()
    }

    pub fn degree(self) -> u32 {
        self.0.to_le_bytes().iter().map(|&b| b as u32).sum()
    }

    #[inline]
    pub fn with_exp(self, i: usize, e: u32) -> Self {
        let s = Self::shift(i);
        Monomial((self.0 & !(0xffu64 << s)) | ((e as u64) << s))
    }

    pub fn mul(self, o: Monomial) -> Option<Monomial> {
        let mut out = 0u64;
        for i in 0..MAX_VARS {
            let e = self.exp(i) + o.exp(i);
            if e > 255 {
                return None;
            }
            out |= (e as u64) << Self::shift(i);
        }
        Some(Monomial(out))
    }

    /// Image under the variable map `i ↦ perm[i]`.
    pub fn permute(self, perm: &[usize]) -> Monomial {
        let mut out = Monomial::ONE;
        for (i, &j) in perm.iter().enumerate() {
            out = out.with_exp(j, out.exp(j) + self.exp(i));
        }
        out
    }
}

#[derive(Clone, PartialEq)]
pub struct Poly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

pub type SparsePoly = Poly<BigRational>;
pub type CycPoly = Poly<CycQ>;

impl<C: fmt::Debug> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut l = f.debug_map();
        for (m, c) in self.terms.iter().rev() {
            l.entry(&m.exps(self.nvars), c);
        }
        l.finish()
    }
}

fn binomials<C: Coeff>(n: usize) -> Vec<Vec<C>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for k in 1..=n {
        let prev = &rows[k - 1];
        let mut row = vec![BigInt::one(); k + 1];
        for j in 1..k {
            row[j] = &prev[j - 1] + &prev[j];
        }
        rows.push(row);
    }
    rows.into_iter().map(|r| r.into_iter().map(C::from_bigint).collect()).collect()
}

fn powers<C: Coeff>(x: &C, n: usize) -> Vec<C> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(C::one());
    for k in 1..=n {
        let next = out[k - 1].mul_ref(x);
        out.push(next);
    }
    out
}

/// Number of monomials of degree `n` in `v` variables.
pub fn monomial_count(n: u32, v: usize) -> u128 {
    if v == 0 {
        return (n == 0) as u128;
    }
    let (a, b) = (n as u128 + v as u128 - 1, v as u128 - 1);
    (0..b).fold(1u128, |acc, i| acc * (a - i) / (i + 1))
}

/// All monomials of degree `n` in `nvars` variables, in descending order.
pub fn monomials_of_degree(nvars: usize, n: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, i: usize, left: u32, cur: Monomial, out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            out.push(cur.with_exp(i, left));
            return;
        }
        for e in (0..=left).rev() {
            rec(nvars, i + 1, left - e, cur.with_exp(i, e), out);
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if n == 0 {
            out.push(Monomial::ONE);
        }
        return out;
    }
    rec(nvars, 0, n, Monomial::ONE, &mut out);
    out
}

impl<C: Coeff> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::ONE, c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable out of range");
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(i), C::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> C {
        self.terms.get(&m).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeff_of(&self, exps: &[u32]) -> C {
        Monomial::from_exps(exps).map(|m| self.coeff(m)).unwrap_or_else(|_| C::zero())
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg_ref())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        self.map_coeffs(|c| c.mul_ref(s))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.mul_capped(o, DEFAULT_TERM_CAP)
    }

    pub fn mul_capped(&self, o: &Self, cap: usize) -> Result<Self> {
        let mut out = Self::zero(self.nvars.max(o.nvars));
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = m1.mul(*m2).ok_or_else(|| Error::Budget("exponent above 255".into()))?;
                out.add_term(m, c1.mul_ref(c2));
            }
            if out.len() > cap {
                return Err(Error::Budget(format!("product exceeds {cap} terms")));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Largest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// The common degree of all terms, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn evaluate(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars, "point has the wrong length");
        let maxe = self.degree().unwrap_or(0) as usize;
        let pw: Vec<Vec<C>> = point.iter().map(|x| powers(x, maxe)).collect();
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, p) in pw.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e > 0 {
                    t = t.mul_ref(&p[e]);
                }
            }
            acc = acc.add_ref(&t);
        }
        acc
    }

    /// Algebra-morphism substitution `x_i ↦ images[i]`.
    pub fn substitute(&self, images: &[Poly<C>]) -> Result<Self> {
        self.substitute_capped(images, DEFAULT_TERM_CAP)
    }

    pub fn substitute_capped(&self, images: &[Poly<C>], cap: usize) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::Dimension(format!("{} images for {} variables", images.len(), self.nvars)));
        }
        let target = images.iter().map(|p| p.nvars).max().unwrap_or(0);
        let mut cache: Vec<Vec<Poly<C>>> = images.iter().map(|_| vec![Poly::one(target)]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, img) in images.iter().enumerate() {
                let e = m.exp(i) as usize;
                while cache[i].len() <= e {
                    let next = cache[i].last().unwrap().mul_capped(img, cap)?;
                    cache[i].push(next);
                }
                if e > 0 {
                    t = t.mul_capped(&cache[i][e], cap)?;
                }
            }
            out = out.add(&t);
            if out.len() > cap {
                return Err(Error::Budget(format!("substitution exceeds {cap} terms")));
            }
        }
        Ok(out)
    }

    /// `∂p/∂x_i`.
    pub fn derivative(&self, i: usize) -> Self {
        Poly::from_terms(
            self.nvars,
            self.terms.iter().filter(|(m, _)| m.exp(i) > 0).map(|(m, c)| {
                let e = m.exp(i);
                (m.with_exp(i, e - 1), c.mul_ref(&C::from_bigint(e.into())))
            }),
        )
    }

    /// Renames variables, `x_i ↦ x_{perm[i]}`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        Poly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.permute(perm), c.clone())))
    }

    fn expansion_bound_ok(&self, cap: usize) -> Result<()> {
        let n = self.degree().unwrap_or(0);
        let bound: u128 = (0..=n).map(|d| monomial_count(d, self.nvars)).sum();
        if bound > cap as u128 {
            return Err(Error::Budget(format!(
                "expansion could reach {bound} terms, above the cap of {cap}"
            )));
        }
        Ok(())
    }
}

impl SparsePoly {
    pub fn to_cyc(&self) -> CycPoly {
        self.map_coeffs(|c| CycQ::from_rational(c.clone()))
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn has_negative_coeff(&self) -> bool {
        self.terms.values().any(|c| c.is_negative())
    }
}

impl CycPoly {
    /// The polynomial with rational coefficients, if all are rational.
    pub fn to_rational(&self) -> Option<SparsePoly> {
        let mut out = SparsePoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(*m, c.as_rational()?.clone());
        }
        Some(out)
    }
}

/// One factor in a decomposition of a substitution into elementary ones.
#[derive(Clone, Debug, PartialEq)]
pub enum ElemOp<K> {
    /// `x_u ↔ x_v`.
    Swap(usize, usize),
    /// `x_u ↦ s·x_u`.
    Scale(usize, K),
    /// `x_target ↦ x_target + c·x_source`.
    AddMul { target: usize, source: usize, c: K },
}

/// Writes the invertible matrix `m` as `E₁⋯E_k` with elementary `Eᵢ`; the
/// substitution `x_a ↦ Σ_b m[a][b] x_b` is then `E₁` applied first, then
/// `E₂`, and so on. Returns `None` for singular matrices.
pub fn elementary_factors<K: FieldCoeff>(m: &[Vec<K>]) -> Option<Vec<ElemOp<K>>> {
    let n = m.len();
    let mut a = m.to_vec();
    // row operations R₁, R₂, ... reducing `a` to the identity, recorded as
    // their inverses
    let mut ops = Vec::new();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        if p != c {
            a.swap(p, c);
            ops.push(ElemOp::Swap(c, p));
        }
        let piv = a[c][c].clone();
        if piv != K::one() {
            let inv = piv.inv()?;
            for x in a[c].iter_mut() {
                *x = x.mul_ref(&inv);
            }
            ops.push(ElemOp::Scale(c, piv));
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            let row_c = a[c].clone();
            for (x, y) in a[r].iter_mut().zip(&row_c) {
                *x = x.add_ref(&f.mul_ref(y).neg_ref());
            }
            ops.push(ElemOp::AddMul { target: r, source: c, c: f });
        }
    }
    Some(ops)
}

/// Applies elementary substitutions in order.
pub fn apply_elementary<K: Coeff>(p: &Poly<K>, ops: &[ElemOp<K>]) -> Poly<K> {
    let maxd = p.degree().unwrap_or(0) as usize;
    let binom = binomials::<K>(maxd);
    let mut cur = p.clone();
    for op in ops {
        cur = match op {
            ElemOp::Swap(u, v) => {
                let mut perm: Vec<usize> = (0..cur.nvars).collect();
                perm.swap(*u, *v);
                cur.permute_vars(&perm)
            }
            ElemOp::Scale(u, s) => {
                let pw = powers(s, maxd);
                let terms = std::mem::take(&mut cur.terms);
                Poly::from_terms(cur.nvars, terms.into_iter().map(|(m, c)| (m, c.mul_ref(&pw[m.exp(*u) as usize]))))
            }
            ElemOp::AddMul { target, source, c } => {
                let pw = powers(c, maxd);
                let mut out = Poly::zero(cur.nvars);
                for (m, coeff) in &cur.terms {
                    let k = m.exp(*target) as usize;
                    if k == 0 {
                        out.add_term(*m, coeff.clone());
                        continue;
                    }
                    let es = m.exp(*source);
                    for j in 0..=k {
                        let mm = m.with_exp(*target, (k - j) as u32).with_exp(*source, es + j as u32);
                        out.add_term(mm, coeff.mul_ref(&binom[k][j]).mul_ref(&pw[j]));
                    }
                }
                out
            }
        };
    }
    cur
}

/// `p(Mx)`: substitutes `x_a ↦ Σ_b m[a][b] x_b` for a square matrix over a
/// coefficient field.
pub fn act_linear<K: FieldCoeff>(p: &Poly<K>, m: &[Vec<K>]) -> Result<Poly<K>> {
    if m.len() != p.nvars || m.iter().any(|r| r.len() != p.nvars) {
        return Err(Error::Dimension(format!("{}x? matrix acting on {} variables", m.len(), p.nvars)));
    }
    p.expansion_bound_ok(DEFAULT_TERM_CAP)?;
    match elementary_factors(m) {
        Some(ops) => Ok(apply_elementary(p, &ops)),
        None => {
            let images: Vec<Poly<K>> = m
                .iter()
                .map(|row| Poly::from_terms(p.nvars, row.iter().enumerate().map(|(b, c)| (Monomial::var(b), c.clone()))))
                .collect();
            p.substitute(&images)
        }
    }
}

/// `p(Mx)` for a monomial matrix given by `perm` (row `a` has its entry in
/// column `perm[a]`) and the nonzero entries.
pub fn act_monomial<K: Coeff>(p: &Poly<K>, perm: &[usize], vals: &[K]) -> Poly<K> {
    let maxd = p.degree().unwrap_or(0) as usize;
    let pw: Vec<Vec<K>> = vals.iter().map(|v| powers(v, maxd)).collect();
    Poly::from_terms(
        p.nvars,
        p.terms.iter().map(|(m, c)| {
            let mut coeff = c.clone();
            for (a, pa) in pw.iter().enumerate() {
                let e = m.exp(a) as usize;
                if e > 0 {
                    coeff = coeff.mul_ref(&pa[e]);
                }
            }
            (m.permute(perm), coeff)
        }),
    )
}

/// The algebra endomorphism `x_a ↦ Σ_b M[a][b] x_b` applied to `p`.
pub fn act_endomorphism(p: &SparsePoly, m: &CycMatrix) -> Result<CycPoly> {
    if m.dim() != p.nvars {
        return Err(Error::Dimension(format!("{}x{} matrix acting on {} variables", m.dim(), m.dim(), p.nvars)));
    }
    if let Some((perm, vals)) = m.as_monomial() {
        return Ok(act_monomial(&p.to_cyc(), &perm, &vals));
    }
    if let Some((s, rat)) = m.as_rational_multiple() {
        let q = act_linear(p, &rat)?;
        let maxd = q.degree().unwrap_or(0) as usize;
        let pw = powers(&s, maxd);
        return Ok(Poly::from_terms(
            q.nvars,
            q.terms.iter().map(|(mono, c)| (*mono, pw[mono.degree() as usize].scale(c))),
        ));
    }
    act_linear(&p.to_cyc(), &m.rows())
}

/// Complete weight enumerator `Σ_{c∈C} Π_i x_{c_i}`, variable `a` being the
/// field element with integer value `a`.
pub fn cwe(code: &LinearCode, exec: Exec, budget: u64) -> Result<SparsePoly> {
    let ctx = code.ctx();
    let q = ctx.order() as usize;
    let n = code.len();
    if q > MAX_VARS {
        return Err(Error::UnsupportedField(format!("complete weight enumerators need q <= {MAX_VARS}, got {}", ctx)));
    }
    if n > 255 {
        return Err(Error::Invalid(format!("length {n} exceeds 255")));
    }
    check_budget(&ctx, code.dimension(), budget)?;
    let radix = n as u64 + 1;
    let table_len = radix.checked_pow(q as u32 - 1).filter(|&l| l <= 1 << 22);
    let counts_to_monomial = |idx: u64| {
        let mut exps = vec![0u32; q];
        let mut rest = idx;
        for e in exps.iter_mut().skip(1) {
            *e = (rest % radix) as u32;
            rest /= radix;
        }
        exps[0] = n as u32 - exps[1..].iter().sum::<u32>();
        Monomial::from_exps(&exps).expect("bounded exponents")
    };
    let mut weights = vec![0u64; q];
    let mut place = 1u64;
    for w in weights.iter_mut().skip(1) {
        *w = place;
        place *= radix;
    }
    let tally: Vec<(u64, u64)> = with_enumerator!(&ctx, n, code.generators(), |e| {
        let index = |w: &_| (0..n).map(|i| weights[e.layout.get(w, i) as usize]).sum::<u64>();
        let r: Result<Vec<(u64, u64)>> = Ok(match table_len {
            Some(len) => {
                let t = e.fold(
                    exec,
                    || vec![0u64; len as usize],
                    |acc, _, w| acc[index(w) as usize] += 1,
                    |mut a, b| {
                        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                        a
                    },
                );
                t.into_iter().enumerate().filter(|(_, c)| *c > 0).map(|(i, c)| (i as u64, c)).collect()
            }
            None => {
                let t = e.fold(
                    exec,
                    HashMap::<u64, u64>::new,
                    |acc, _, w| *acc.entry(index(w)).or_default() += 1,
                    |mut a, b| {
                        for (k, v) in b {
                            *a.entry(k).or_default() += v;
                        }
                        a
                    },
                );
                t.into_iter().collect()
            }
        });
        r
    })?;
    Ok(Poly::from_terms(
        q,
        tally.into_iter().map(|(i, c)| (counts_to_monomial(i), BigRational::from_integer(c.into()))),
    ))
}

/// `p(1, x, ..., x)` as a coefficient list indexed by the power of `x`.
pub fn hamming_specialize(p: &SparsePoly) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = Vec::new();
    for (m, c) in p.terms() {
        let w = (m.degree() - m.exp(0)) as usize;
        if out.len() <= w {
            out.resize(w + 1, BigRational::zero());
        }
        out[w] += c;
    }
    out
}

/// Images `x_a ↦ Π_i y_{a_i}` turning the enumerator of a code over `ctx`
/// into the enumerator of its expansion over the subfield of `basis`.
pub fn expansion_images(basis: &ScBasis) -> Result<Vec<SparsePoly>> {
    let ctx = basis.ctx();
    let sub = FieldCtx::new(basis.sub_degree())?;
    let emb = Embedding::new(sub, ctx)?;
    let nv = sub.order() as usize;
    ctx.elements()
        .map(|a| {
            let mut m = Poly::one(nv);
            for c in basis.expand(a) {
                let idx = emb.restrict(c).ok_or_else(|| Error::Internal("coordinate outside subfield".into()))?;
                m = m.mul(&Poly::var(nv, idx.index()))?;
            }
            Ok(m)
        })
        .collect()
}

/// Images `x_a ↦ y_a` for `a` in the subfield `sub` and `x_a ↦ 0` otherwise.
pub fn rational_images(ctx: &FieldCtx, sub: &FieldCtx) -> Result<Vec<SparsePoly>> {
    let emb = Embedding::new(*sub, *ctx)?;
    let nv = sub.order() as usize;
    Ok(ctx
        .elements()
        .map(|a| match emb.restrict(a) {
            Some(b) => Poly::var(nv, b.index()),
            None => Poly::zero(nv),
        })
        .collect())
}

/// The variable permutation `x_a ↦ x_{a²}`.
pub fn frobenius_permutation(ctx: &FieldCtx) -> Vec<usize> {
    ctx.elements().map(|a| ctx.square(a).index()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<u32>,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub field: String,
    pub nvars: usize,
    pub terms: Vec<TermJson>,
}

impl SparsePoly {
    /// Serializable form, terms in descending monomial order.
    pub fn to_json(&self, field: &str) -> PolyJson {
        PolyJson {
            field: field.to_string(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermJson { exps: m.exps(self.nvars), num: c.numer().to_string(), den: c.denom().to_string() })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Self> {
        if j.nvars > MAX_VARS {
            return Err(Error::Invalid(format!("{} variables", j.nvars)));
        }
        let mut p = SparsePoly::zero(j.nvars);
        for t in &j.terms {
            if t.exps.len() != j.nvars {
                return Err(Error::Invalid("exponent vector of the wrong length".into()));
            }
            let parse = |s: &str| s.parse::<BigInt>().map_err(|e| Error::Invalid(format!("bad integer `{s}`: {e}")));
            let den = parse(&t.den)?;
            if den.is_zero() {
                return Err(Error::Invalid("zero denominator".into()));
            }
            p.add_term(Monomial::from_exps(&t.exps)?, BigRational::new(parse(&t.num)?, den));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::named;
    use crate::gf::find_sc_basis;
    use crate::DEFAULT_CODEWORD_BUDGET as BUDGET;
    use proptest::prelude::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn ones(q: usize) -> Vec<BigRational> {
        vec![r(1); q]
    }

    /// Oracle: enumerates codewords one at a time.
    fn cwe_oracle(c: &LinearCode) -> SparsePoly {
        let q = c.ctx().order() as usize;
        let mut p = SparsePoly::zero(q);
        c.for_each_codeword(BUDGET, |w| {
            let mut e = vec![0u32; q];
            for x in w {
                e[x.index()] += 1;
            }
            p.add_term(Monomial::from_exps(&e).unwrap(), r(1));
        })
        .unwrap();
        p
    }

    #[test]
    fn monomial_packing_orders_lexicographically() {
        let a = Monomial::from_exps(&[2, 0, 1, 0]).unwrap();
        let b = Monomial::from_exps(&[1, 5, 0, 0]).unwrap();
        assert!(a > b);
        assert_eq!(a.exps(4), vec![2, 0, 1, 0]);
        assert_eq!(a.degree(), 3);
        assert_eq!(a.mul(b).unwrap().exps(4), vec![3, 5, 1, 0]);
        assert_eq!(monomials_of_degree(4, 3).len() as u128, monomial_count(3, 4));
        assert_eq!(monomial_count(24, 4), 2925);
    }

    #[test]
    fn cwe_examples() {
        let f4 = named::f4();
        let z = LinearCode::zero(f4, 5);
        let p = cwe(&z, Exec::Sequential, BUDGET).unwrap();
        assert_eq!(p, SparsePoly::var(4, 0).pow(5).unwrap());
        let q4 = named::q(4).unwrap();
        let p4 = cwe(&q4, Exec::Parallel, BUDGET).unwrap();
        assert_eq!(p4, cwe_oracle(&q4));
        assert_eq!(p4.evaluate(&ones(4)), r(16));
        assert_eq!(p4.homogeneous_degree(), Some(4));
        let q8 = named::q(8).unwrap();
        let p8 = cwe(&q8, Exec::Parallel, BUDGET).unwrap();
        assert_eq!(p8.evaluate(&[r(1), r(1), r(0), r(0)]), r(16));
        assert_eq!(p8, cwe_oracle(&q8));
    }

    #[test]
    fn q20_evaluations() {
        let p = cwe(&named::q(20).unwrap(), Exec::Parallel, BUDGET).unwrap();
        assert_eq!(p.evaluate(&ones(4)), r(4).pow(10));
        assert_eq!(p.evaluate(&[r(1), r(1), r(0), r(0)]), r(2));
        assert_eq!(p.coeff_of(&[20, 0, 0, 0]), r(1));
    }

    #[test]
    fn specializations() {
        assert_eq!(hamming_specialize(&SparsePoly::var(4, 0).pow(6).unwrap()), vec![r(1)]);
        let q4 = named::q(4).unwrap();
        let h = hamming_specialize(&cwe(&q4, Exec::Sequential, BUDGET).unwrap());
        let wp = q4.weight_profile(Exec::Sequential, BUDGET).unwrap();
        assert_eq!(h, wp.counts.iter().map(|&c| r(c as i64)).collect::<Vec<_>>());
        assert_eq!(&h[1] + &h[2], r(0));
        assert_eq!(&h[3] + &h[4], r(15));
        let h12 = hamming_specialize(&cwe(&named::q(12).unwrap(), Exec::Parallel, BUDGET).unwrap());
        assert!(h12[1..6].iter().all(|c| c.is_zero()));
        assert!(!h12[6].is_zero());
    }

    #[test]
    fn substitutions_commute_with_constructions() {
        let f4 = named::f4();
        let basis = find_sc_basis(&f4).unwrap();
        for c in [named::q(4).unwrap(), named::q(8).unwrap()] {
            let p = cwe(&c, Exec::Sequential, BUDGET).unwrap();
            let id: Vec<SparsePoly> = (0..4).map(|i| SparsePoly::var(4, i)).collect();
            assert_eq!(p.substitute(&id).unwrap(), p);
            let expanded = p.substitute(&expansion_images(&basis).unwrap()).unwrap();
            let direct = cwe(&c.subfield_expand(FieldCtx::binary(), &basis).unwrap(), Exec::Sequential, BUDGET).unwrap();
            assert_eq!(expanded, direct);
            let rat = p.substitute(&rational_images(&f4, &FieldCtx::binary()).unwrap()).unwrap();
            let direct = cwe(&c.rational_subcode(FieldCtx::binary()).unwrap(), Exec::Sequential, BUDGET).unwrap();
            assert_eq!(rat, direct);
        }
    }

    #[test]
    fn galois_action_matches_frobenius_image() {
        let f4 = named::f4();
        for c in [named::q(4).unwrap(), LinearCode::new(f4, 3, vec![vec![crate::gf::FieldElement(1), crate::gf::FieldElement(2), crate::gf::FieldElement(0)]]).unwrap()] {
            let p = cwe(&c, Exec::Sequential, BUDGET).unwrap();
            let perm = frobenius_permutation(&f4);
            let direct = cwe(&c.frobenius_image(1), Exec::Sequential, BUDGET).unwrap();
            assert_eq!(p.permute_vars(&perm), direct);
        }
    }

    #[test]
    fn hamming_divisibility_by_min_distance() {
        for len in [4u64, 8, 12, 20] {
            let c = named::q(len).unwrap();
            let d = c.min_distance(Exec::Parallel, BUDGET).unwrap().unwrap();
            let h = hamming_specialize(&cwe(&c, Exec::Parallel, BUDGET).unwrap());
            assert!(h[1..d].iter().all(|x| x.is_zero()), "Q{len}");
        }
    }

    #[test]
    fn endomorphism_examples() {
        let q4 = cwe(&named::q(4).unwrap(), Exec::Sequential, BUDGET).unwrap();
        assert_eq!(act_endomorphism(&q4, &CycMatrix::identity(4)).unwrap(), q4.to_cyc());
        let half = CycQ::from_ratio(1, 2);
        let entries: Vec<CycQ> = (0..16)
            .map(|k| {
                let f4 = named::f4();
                let (a, b) = (crate::gf::FieldElement(k / 4), crate::gf::FieldElement(k % 4));
                if f4.trace(f4.mul(a, b)) == 1 { -half.clone() } else { half.clone() }
            })
            .collect();
        let h = CycMatrix::from_entries(4, &entries).unwrap();
        assert_eq!(act_endomorphism(&q4, &h).unwrap(), q4.to_cyc());
        let x0 = SparsePoly::var(4, 0);
        let d = CycMatrix::from_entries(
            4,
            &(0..16).map(|k| if k % 5 == 0 { CycQ::i_pow(k as i64 / 5) } else { CycQ::zero() }).collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(act_endomorphism(&x0, &d).unwrap(), x0.to_cyc());
    }

    #[test]
    fn json_round_trip() {
        let p = cwe(&named::q(4).unwrap(), Exec::Sequential, BUDGET).unwrap().scale(&BigRational::new(1.into(), 3.into()));
        let j = p.to_json("F4");
        assert_eq!(j.terms[0].exps, vec![4, 0, 0, 0]);
        assert_eq!((j.terms[0].num.as_str(), j.terms[0].den.as_str()), ("1", "3"));
        assert_eq!(SparsePoly::from_json(&j).unwrap(), p);
    }

    fn arb_poly(nv: usize) -> impl Strategy<Value = SparsePoly> {
        proptest::collection::vec((proptest::collection::vec(0u32..4, nv), -5i64..6), 0..8)
            .prop_map(move |ts| SparsePoly::from_terms(nv, ts.into_iter().map(|(e, c)| (Monomial::from_exps(&e).unwrap(), r(c)))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn elementary_factorisation_matches_naive_substitution(
            p in arb_poly(3),
            m in proptest::collection::vec(-3i64..4, 9),
        ) {
            let rows: Vec<Vec<BigRational>> = m.chunks(3).map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
            let images: Vec<SparsePoly> = rows.iter()
                .map(|row| SparsePoly::from_terms(3, row.iter().enumerate().map(|(b, c)| (Monomial::var(b), c.clone()))))
                .collect();
            let naive = p.substitute(&images).unwrap();
            prop_assert_eq!(act_linear(&p, &rows).unwrap(), naive.clone());
            // composition: p(ABx) = (p(Ax))(Bx)
            let b: Vec<Vec<BigRational>> = vec![vec![r(1), r(2), r(0)], vec![r(0), r(1), r(-1)], vec![r(3), r(0), r(1)]];
            let ab: Vec<Vec<BigRational>> = (0..3).map(|i| (0..3).map(|j| (0..3).map(|k| &rows[i][k] * &b[k][j]).sum()).collect()).collect();
            prop_assert_eq!(act_linear(&naive, &b).unwrap(), act_linear(&p, &ab).unwrap());
        }

        #[test]
        fn evaluation_is_a_ring_map(p in arb_poly(3), q in arb_poly(3), x in proptest::collection::vec(-4i64..5, 3)) {
            let pt: Vec<BigRational> = x.iter().map(|&v| r(v)).collect();
            let prod = p.mul(&q).unwrap();
            prop_assert_eq!(prod.evaluate(&pt), p.evaluate(&pt) * q.evaluate(&pt));
            prop_assert_eq!(p.add(&q).evaluate(&pt), p.evaluate(&pt) + q.evaluate(&pt));
        }
    }
}
