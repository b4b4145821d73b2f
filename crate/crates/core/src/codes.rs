//! Linear codes over GF(2^f).
//!
//! A [`LinearCode`] always holds its generator matrix in reduced row echelon
//! form (leftmost pivots, monic, cleared above and below), so two codes are
//! equal exactly when their generator matrices are.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::enumerate::{check_budget, with_enumerator, Word, DEFAULT_CODEWORD_BUDGET};
use crate::error::{Error, Result};
use crate::gf::{find_sc_basis, find_sc_basis_over, is_prime, Embedding, FieldCtx, FieldElement, ScBasis};
use crate::par::Exec;

pub type Vector = Vec<FieldElement>;

/// Dense linear algebra over a small binary field.
pub mod fqla {
    use super::*;

    /// Row reduces in place, dropping zero rows; returns the pivot columns.
    pub fn rref(ctx: &FieldCtx, rows: &mut Vec<Vector>) -> Vec<usize> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = ctx.inv(rows[r][c]).expect("nonzero pivot");
            for x in rows[r].iter_mut() {
                *x = ctx.mul(*x, inv);
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let factor = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = ctx.add(*x, ctx.mul(factor, y));
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        pivots
    }

    pub fn rank(ctx: &FieldCtx, rows: &[Vector]) -> usize {
        let mut rows = rows.to_vec();
        rref(ctx, &mut rows).len()
    }

    /// Basis of `{v : A v = 0}` for the `ncols`-column matrix `A`.
    pub fn nullspace(ctx: &FieldCtx, rows: &[Vector], ncols: usize) -> Vec<Vector> {
        let mut a: Vec<Vector> = rows.to_vec();
        let pivots = rref(ctx, &mut a);
        let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
        (0..ncols)
            .filter(|c| !pivot_set.contains(c))
            .map(|free| {
                let mut v = vec![FieldElement::ZERO; ncols];
                v[free] = FieldElement::ONE;
                // characteristic 2: -a = a
                for (row, &pc) in a.iter().zip(&pivots) {
                    v[pc] = row[free];
                }
                v
            })
            .collect()
    }

    pub fn dot(ctx: &FieldCtx, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
        a.iter().zip(b).fold(FieldElement::ZERO, |acc, (&x, &y)| ctx.add(acc, ctx.mul(x, y)))
    }

    pub fn combine(ctx: &FieldCtx, coeffs: &[FieldElement], rows: &[Vector], n: usize) -> Vector {
        let mut out = vec![FieldElement::ZERO; n];
        for (&c, row) in coeffs.iter().zip(rows) {
            if c.is_zero() {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(row) {
                *o = ctx.add(*o, ctx.mul(c, x));
            }
        }
        out
    }
}

/// Hamming weight distribution `A_0, ..., A_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightProfile {
    pub counts: Vec<u64>,
}

impl WeightProfile {
    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128).sum()
    }

    /// Least nonzero weight that occurs, if any.
    pub fn min_distance(&self) -> Option<usize> {
        self.counts.iter().enumerate().skip(1).find(|(_, &c)| c > 0).map(|(w, _)| w)
    }
}

/// Outcome of a doubly-even test with a violating codeword on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublyEvenCheck {
    pub holds: bool,
    pub witness: Option<Vector>,
}

impl DoublyEvenCheck {
    fn from_witness(witness: Option<Vector>) -> Self {
        DoublyEvenCheck { holds: witness.is_none(), witness }
    }
}

/// Exhaustive phi-based checking is used up to this many codewords.
pub const EXHAUSTIVE_DOUBLY_EVEN_LIMIT: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    ctx: FieldCtx,
    n: usize,
    gens: Vec<Vector>,
}

impl LinearCode {
    /// The code spanned by `rows`; dependent rows are allowed.
    pub fn new(ctx: FieldCtx, n: usize, mut rows: Vec<Vector>) -> Result<Self> {
        for row in &rows {
            if row.len() != n {
                return Err(Error::Dimension(format!("row of length {} in a code of length {n}", row.len())));
            }
            if let Some(x) = row.iter().find(|&&x| !ctx.contains(x)) {
                return Err(Error::Invalid(format!("{x} is not an element of {ctx}")));
            }
        }
        fqla::rref(&ctx, &mut rows);
        Ok(LinearCode { ctx, n, gens: rows })
    }

    pub fn zero(ctx: FieldCtx, n: usize) -> Self {
        LinearCode { ctx, n, gens: Vec::new() }
    }

    pub fn full(ctx: FieldCtx, n: usize) -> Self {
        let gens = (0..n)
            .map(|i| (0..n).map(|j| FieldElement((i == j) as u64)).collect())
            .collect();
        LinearCode { ctx, n, gens }
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dimension(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &[Vector] {
        &self.gens
    }

    pub fn codeword(&self, message: &[FieldElement]) -> Vector {
        fqla::combine(&self.ctx, message, &self.gens, self.n)
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        if v.len() != self.n {
            return false;
        }
        let mut rest = v.to_vec();
        for row in &self.gens {
            let pc = row.iter().position(|x| !x.is_zero()).expect("rref rows are nonzero");
            let c = rest[pc];
            if !c.is_zero() {
                for (x, &y) in rest.iter_mut().zip(row) {
                    *x = self.ctx.add(*x, self.ctx.mul(c, y));
                }
            }
        }
        rest.iter().all(|x| x.is_zero())
    }

    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.ctx == other.ctx && self.n == other.n && self.gens.iter().all(|g| other.contains(g))
    }

    /// `C^⊥` under the standard bilinear form.
    pub fn dual(&self) -> LinearCode {
        let rows = fqla::nullspace(&self.ctx, &self.gens, self.n);
        LinearCode::new(self.ctx, self.n, rows).expect("nullspace rows have the right shape")
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.gens
            .iter()
            .enumerate()
            .all(|(i, a)| self.gens[i..].iter().all(|b| fqla::dot(&self.ctx, a, b).is_zero()))
    }

    pub fn is_self_dual(&self) -> bool {
        2 * self.dimension() == self.n && self.is_self_orthogonal()
    }

    /// First and second elementary symmetric functions of the coordinates.
    pub fn symmetric_pair(&self, c: &[FieldElement]) -> (FieldElement, FieldElement) {
        let mut e1 = FieldElement::ZERO;
        let mut e2 = FieldElement::ZERO;
        for &x in c {
            e2 = self.ctx.add(e2, self.ctx.mul(e1, x));
            e1 = self.ctx.add(e1, x);
        }
        (e1, e2)
    }

    /// Generator-level test: `sum c_i` is linear and `sum_{i<j} c_i c_j` is a
    /// quadratic form whose polar form is `(sum c)(sum c') - sum c_i c'_i`, so
    /// both vanish on the code iff they vanish on every row and every sum of
    /// two rows. Returns the first failing row or row sum.
    pub fn doubly_even_fast(&self) -> Option<Vector> {
        let zero = |c: &[FieldElement]| {
            let (e1, e2) = self.symmetric_pair(c);
            e1.is_zero() && e2.is_zero()
        };
        for (i, a) in self.gens.iter().enumerate() {
            if !zero(a) {
                return Some(a.clone());
            }
            for b in &self.gens[..i] {
                let s: Vector = b.iter().zip(a).map(|(&x, &y)| self.ctx.add(x, y)).collect();
                if !zero(&s) {
                    return Some(s);
                }
            }
        }
        None
    }

    /// Checks that `phi` vanishes on every codeword; returns the first
    /// codeword (in message order) where it does not.
    pub fn doubly_even_exhaustive(&self, basis: &ScBasis, exec: Exec, budget: u64) -> Result<Option<Vector>> {
        if basis.ctx() != self.ctx || basis.sub_degree() != 1 {
            return Err(Error::FieldMismatch(format!("basis of {} used for a code over {}", basis.ctx(), self.ctx)));
        }
        check_budget(&self.ctx, self.dimension(), budget)?;
        let phi = basis.phi_table();
        with_enumerator!(&self.ctx, self.n, &self.gens, |e| {
            let found = e.fold(
                exec,
                || None::<(u64, Vector)>,
                |acc, rank, w| {
                    if acc.is_some() {
                        return;
                    }
                    let s: u32 = (0..self.n).map(|i| phi[e.layout.get(w, i) as usize] as u32).sum();
                    if s % 4 != 0 {
                        *acc = Some((rank, e.layout.unpack(w)));
                    }
                },
                |a, b| match (a, b) {
                    (Some(x), Some(y)) => Some(if x.0 <= y.0 { x } else { y }),
                    (x, y) => x.or(y),
                },
            );
            Ok(found.map(|(_, c)| c))
        })
    }

    /// Doubly-even test: every codeword is checked through `phi` (with the
    /// pinned self-complementary basis) when the code is small, otherwise the
    /// generator-level test is used.
    pub fn is_doubly_even(&self) -> DoublyEvenCheck {
        let small = check_budget(&self.ctx, self.dimension(), EXHAUSTIVE_DOUBLY_EVEN_LIMIT).is_ok();
        if small && self.ctx.degree() <= 8 {
            let basis = find_sc_basis(&self.ctx).expect("self-complementary bases exist in characteristic 2");
            let w = self
                .doubly_even_exhaustive(&basis, Exec::Sequential, EXHAUSTIVE_DOUBLY_EVEN_LIMIT)
                .expect("within budget");
            return DoublyEvenCheck::from_witness(w);
        }
        DoublyEvenCheck::from_witness(self.doubly_even_fast())
    }

    pub fn weight_profile(&self, exec: Exec, budget: u64) -> Result<WeightProfile> {
        check_budget(&self.ctx, self.dimension(), budget)?;
        let n = self.n;
        with_enumerator!(&self.ctx, n, &self.gens, |e| {
            let counts = e.fold(
                exec,
                || vec![0u64; n + 1],
                |acc, _, w| acc[e.weight(w) as usize] += 1,
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
            Ok(WeightProfile { counts })
        })
    }

    /// Minimum nonzero Hamming weight; `None` for the zero code.
    pub fn min_distance(&self, exec: Exec, budget: u64) -> Result<Option<usize>> {
        check_budget(&self.ctx, self.dimension(), budget)?;
        with_enumerator!(&self.ctx, self.n, &self.gens, |e| {
            let d = e.fold(
                exec,
                || u32::MAX,
                |acc, _, w| {
                    let wt = e.weight(w);
                    if wt > 0 && wt < *acc {
                        *acc = wt;
                    }
                },
                |a, b| a.min(b),
            );
            Ok((d != u32::MAX).then_some(d as usize))
        })
    }

    /// Visits every codeword (as element indices) in message order.
    pub fn for_each_codeword(&self, budget: u64, mut visit: impl FnMut(&[FieldElement])) -> Result<()> {
        check_budget(&self.ctx, self.dimension(), budget)?;
        let q = self.ctx.order();
        let k = self.dimension();
        let mut msg = vec![FieldElement::ZERO; k];
        loop {
            visit(&self.codeword(&msg));
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(());
                }
                i -= 1;
                msg[i] = FieldElement(msg[i].value() + 1);
                if msg[i].value() < q {
                    break;
                }
                msg[i] = FieldElement::ZERO;
            }
        }
    }

    /// Entry-wise Frobenius image `a -> a^(2^k)`.
    pub fn frobenius_image(&self, k: u32) -> LinearCode {
        let rows = self
            .gens
            .iter()
            .map(|r| r.iter().map(|&x| self.ctx.frobenius(x, k)).collect())
            .collect();
        LinearCode::new(self.ctx, self.n, rows).expect("same shape")
    }

    /// `sup ⊗ C` for an extension field `sup`.
    pub fn extend_scalars(&self, sup: FieldCtx) -> Result<LinearCode> {
        let emb = Embedding::new(self.ctx, sup)?;
        let rows = self.gens.iter().map(|r| r.iter().map(|&x| emb.embed(x)).collect()).collect();
        LinearCode::new(sup, self.n, rows)
    }

    /// Codewords vanishing on `positions`, with those coordinates deleted.
    pub fn shorten(&self, positions: &[usize]) -> Result<LinearCode> {
        let drop: BTreeSet<usize> = positions.iter().copied().collect();
        if let Some(&p) = drop.iter().find(|&&p| p >= self.n) {
            return Err(Error::Invalid(format!("position {p} out of range for length {}", self.n)));
        }
        // messages m with sum_i m_i g_i[p] = 0 for every dropped p
        let constraints: Vec<Vector> =
            drop.iter().map(|&p| self.gens.iter().map(|g| g[p]).collect()).collect();
        let messages = if constraints.is_empty() {
            (0..self.dimension())
                .map(|i| (0..self.dimension()).map(|j| FieldElement((i == j) as u64)).collect())
                .collect()
        } else {
            fqla::nullspace(&self.ctx, &constraints, self.dimension())
        };
        let rows = messages
            .iter()
            .map(|m| {
                let c = self.codeword(m);
                c.into_iter().enumerate().filter(|(i, _)| !drop.contains(i)).map(|(_, x)| x).collect()
            })
            .collect();
        LinearCode::new(self.ctx, self.n - drop.len(), rows)
    }

    /// `span(C ∪ {v})`; fails when `v` is already a codeword.
    pub fn adjoin(&self, v: &[FieldElement]) -> Result<LinearCode> {
        if v.len() != self.n {
            return Err(Error::Dimension(format!("vector of length {} for a code of length {}", v.len(), self.n)));
        }
        if self.contains(v) {
            return Err(Error::AlreadyInCode);
        }
        let mut rows = self.gens.clone();
        rows.push(v.to_vec());
        LinearCode::new(self.ctx, self.n, rows)
    }

    /// Expansion over the subfield `sub`: coordinate `i` becomes the block
    /// `e*i .. e*i+e` of coordinates of `c_i` in `basis`.
    pub fn subfield_expand(&self, sub: FieldCtx, basis: &ScBasis) -> Result<LinearCode> {
        if basis.ctx() != self.ctx || basis.sub_degree() != sub.degree() {
            return Err(Error::FieldMismatch(format!(
                "basis of {} over degree {} cannot expand a code over {} into {sub}",
                basis.ctx(),
                basis.sub_degree(),
                self.ctx
            )));
        }
        let emb = Embedding::new(sub, self.ctx)?;
        let e = basis.len();
        let mut rows = Vec::with_capacity(self.dimension() * e);
        for g in &self.gens {
            for &b in basis.elems() {
                let mut row = Vec::with_capacity(self.n * e);
                for &x in g {
                    for c in basis.expand(self.ctx.mul(b, x)) {
                        row.push(emb.restrict(c).ok_or_else(|| Error::Internal("coordinate outside subfield".into()))?);
                    }
                }
                rows.push(row);
            }
        }
        LinearCode::new(sub, self.n * e, rows)
    }

    /// `{c ∈ C : c_i ∈ sub for all i}` as a code over `sub`.
    ///
    /// Codewords are parametrised as `sum λ_ij b_j g_i` with `λ` in the
    /// subfield; membership of a coordinate in the subfield is the
    /// subfield-linear condition `x^(q') + x = 0`.
    pub fn rational_subcode(&self, sub: FieldCtx) -> Result<LinearCode> {
        let emb = Embedding::new(sub, self.ctx)?;
        let basis = find_sc_basis_over(&self.ctx, sub.degree())?;
        let d = sub.degree();
        let frob_plus_id = |x| self.ctx.add(self.ctx.frobenius(x, d), x);
        let gens: Vec<Vector> = self
            .gens
            .iter()
            .flat_map(|g| basis.elems().iter().map(move |&b| g.iter().map(|&x| self.ctx.mul(b, x)).collect()))
            .collect();
        let nparams = gens.len();
        let mut conditions = Vec::with_capacity(self.n * basis.len());
        for l in 0..self.n {
            for &bi in basis.elems() {
                let row: Result<Vector> = gens
                    .iter()
                    .map(|u| {
                        let t = self.ctx.relative_trace(self.ctx.mul(frob_plus_id(u[l]), bi), d);
                        emb.restrict(t).ok_or_else(|| Error::Internal("relative trace outside subfield".into()))
                    })
                    .collect();
                conditions.push(row?);
            }
        }
        let lambdas = if nparams == 0 {
            Vec::new()
        } else if conditions.is_empty() {
            (0..nparams).map(|i| (0..nparams).map(|j| FieldElement((i == j) as u64)).collect()).collect()
        } else {
            fqla::nullspace(&sub, &conditions, nparams)
        };
        let rows: Result<Vec<Vector>> = lambdas
            .iter()
            .map(|lam| {
                let lifted: Vector = lam.iter().map(|&x| emb.embed(x)).collect();
                fqla::combine(&self.ctx, &lifted, &gens, self.n)
                    .into_iter()
                    .map(|x| emb.restrict(x).ok_or_else(|| Error::Internal("non-rational coordinate".into())))
                    .collect()
            })
            .collect();
        LinearCode::new(sub, self.n, rows?)
    }
}

/// Multiplicative order of `a` modulo the prime `p`.
fn order_mod(a: u64, p: u64) -> u64 {
    let a = a % p;
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = x * a % p;
        k += 1;
    }
    k
}

/// The extended quadratic-residue code of prime length `p` over `ctx`,
/// length `p + 1` and dimension `(p + 1) / 2`.
///
/// The generator polynomial `prod_{a square} (X - ζ^a)` is computed in
/// GF(q^ord), `ord` the order of `q` mod `p`, with `ζ` the inverse of
/// `g^((2^D - 1)/p)` for the least primitive element `g`. The extension
/// coordinate is an overall parity check, appended last.
pub fn extended_qr(ctx: &FieldCtx, p: u64) -> Result<LinearCode> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if matches!(p % 8, 3 | 5) && ctx.degree() % 2 == 1 {
        return Err(Error::OddDegreeQr { p, degree: ctx.degree() });
    }
    let ord = order_mod(ctx.order() % p, p);
    let big = FieldCtx::new(ctx.degree() * ord as u32)?;
    let emb = Embedding::new(*ctx, big)?;
    let g = big.primitive_element();
    let zeta = big.inv(big.pow(g, (big.order() - 1) / p)).expect("nonzero");
    let squares: BTreeSet<u64> = (1..p).map(|a| a * a % p).collect();
    // coefficients in ascending degree
    let mut poly = vec![FieldElement::ONE];
    for &a in &squares {
        let root = big.pow(zeta, a);
        let mut next = vec![FieldElement::ZERO; poly.len() + 1];
        for (i, &c) in poly.iter().enumerate() {
            next[i + 1] = big.add(next[i + 1], c);
            next[i] = big.add(next[i], big.mul(c, root));
        }
        poly = next;
    }
    let coeffs: Vector = poly
        .iter()
        .map(|&c| {
            emb.restrict(c)
                .ok_or_else(|| Error::Internal(format!("QR generator polynomial for p={p} is not defined over {ctx}")))
        })
        .collect::<Result<_>>()?;
    let n = p as usize;
    let k = n - (coeffs.len() - 1);
    let rows = (0..k)
        .map(|shift| {
            let mut row = vec![FieldElement::ZERO; n + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                row[shift + i] = c;
            }
            row[n] = row[..n].iter().fold(FieldElement::ZERO, |acc, &x| ctx.add(acc, x));
            row
        })
        .collect();
    LinearCode::new(*ctx, n + 1, rows)
}

/// The code of length `n + 1` obtained by dropping `drop` coordinates of
/// `base`, adjoining the all-ones word and then a 0/1 word of weight `n/2`
/// from the dual, returned by [`shorten_adjoin_search`].
#[derive(Clone, Debug)]
pub struct ShortenWitness {
    pub positions: Vec<usize>,
    pub adjoined: Vector,
    pub code: LinearCode,
}

fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().unwrap();
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// Searches `drop`-subsets of coordinates of `base` in lexicographic order:
/// shorten on the subset, adjoin the all-ones word, then try the 0/1 words of
/// weight half the length in the dual (again lexicographically by support),
/// returning the first doubly-even self-dual result with minimum distance
/// `target`.
pub fn shorten_adjoin_search(base: &LinearCode, drop: usize, target: usize, exec: Exec) -> Result<Option<ShortenWitness>> {
    let ctx = base.ctx();
    let n = base.len() - drop;
    if n % 2 != 0 {
        return Err(Error::Invalid("shortened length must be even".into()));
    }
    let ones = vec![FieldElement::ONE; n];
    for positions in subsets(base.len(), drop) {
        let short = base.shorten(&positions)?;
        let with_ones = match short.adjoin(&ones) {
            Ok(c) => c,
            Err(Error::AlreadyInCode) => short.clone(),
            Err(e) => return Err(e),
        };
        if with_ones.dimension() + 1 != n / 2 || !with_ones.is_doubly_even().holds {
            continue;
        }
        let dual = with_ones.dual();
        for support in subsets(n, n / 2) {
            let mut v = vec![FieldElement::ZERO; n];
            for &i in &support {
                v[i] = FieldElement::ONE;
            }
            if !dual.contains(&v) || with_ones.contains(&v) {
                continue;
            }
            let code = with_ones.adjoin(&v)?;
            if code.is_self_dual()
                && code.is_doubly_even().holds
                && code.min_distance(exec, DEFAULT_CODEWORD_BUDGET)? == Some(target)
            {
                return Ok(Some(ShortenWitness { positions, adjoined: v, code }));
            }
        }
    }
    let _ = ctx;
    Ok(None)
}

/// Named codes used throughout: `Q_{p+1}` over F4 and the binary codes.
pub mod named {
    use super::*;

    pub fn f4() -> FieldCtx {
        FieldCtx::new(2).expect("F4")
    }

    /// Extended QR code of length `len` over F4 (`len - 1` prime).
    pub fn q(len: u64) -> Result<LinearCode> {
        extended_qr(&f4(), len - 1)
    }

    pub fn hamming8() -> LinearCode {
        extended_qr(&FieldCtx::binary(), 7).expect("H8")
    }

    pub fn golay24() -> LinearCode {
        extended_qr(&FieldCtx::binary(), 23).expect("G24")
    }
}

#[allow(dead_code)]
fn assert_word_impls<W: Word>() {}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const W: FieldElement = FieldElement(2);
    const W2: FieldElement = FieldElement(3);
    const O: FieldElement = FieldElement::ONE;
    const Z: FieldElement = FieldElement::ZERO;

    fn f4() -> FieldCtx {
        named::f4()
    }

    fn budget() -> u64 {
        DEFAULT_CODEWORD_BUDGET
    }

    #[test]
    fn q4_matches_displayed_matrix() {
        let q4 = named::q(4).unwrap();
        let printed = LinearCode::new(f4(), 4, vec![vec![O, O, O, O], vec![Z, O, W, W2]]).unwrap();
        assert_eq!(q4, printed);
        assert_eq!(q4.dual(), q4);
        assert!(q4.is_doubly_even().holds);
        assert_eq!(q4.min_distance(Exec::Sequential, budget()).unwrap(), Some(3));
    }

    #[test]
    fn duals() {
        let full = LinearCode::full(f4(), 5);
        assert_eq!(full.dual(), LinearCode::zero(f4(), 5));
        assert_eq!(LinearCode::zero(f4(), 5).dual(), full);
    }

    #[test]
    fn doubly_even_examples() {
        assert!(LinearCode::zero(f4(), 4).is_doubly_even().holds);
        let c = LinearCode::new(f4(), 4, vec![vec![O, O, Z, Z]]).unwrap();
        let (e1, e2) = c.symmetric_pair(&[O, O, Z, Z]);
        assert_eq!((e1, e2), (Z, O));
        let check = c.is_doubly_even();
        assert!(!check.holds);
        let w = check.witness.unwrap();
        let (_, e2) = c.symmetric_pair(&w);
        assert!(!e2.is_zero());
        assert!(c.doubly_even_fast().is_some());
    }

    #[test]
    fn fast_and_exhaustive_doubly_even_agree() {
        let basis = find_sc_basis(&f4()).unwrap();
        let rows = vec![vec![O, O, O, O, Z, Z], vec![Z, O, W, W2, Z, Z], vec![Z, Z, Z, O, W, O]];
        for mask in 1u32..8 {
            let chosen: Vec<Vector> = (0..3).filter(|i| mask >> i & 1 == 1).map(|i| rows[i].clone()).collect();
            let c = LinearCode::new(f4(), 6, chosen).unwrap();
            let slow = c.doubly_even_exhaustive(&basis, Exec::Sequential, budget()).unwrap();
            assert_eq!(slow.is_none(), c.doubly_even_fast().is_none(), "mask {mask}");
        }
    }

    #[test]
    fn binary_qr_codes() {
        let h8 = named::hamming8();
        assert_eq!((h8.len(), h8.dimension()), (8, 4));
        assert!(h8.is_self_dual() && h8.is_doubly_even().holds);
        assert_eq!(h8.min_distance(Exec::Sequential, budget()).unwrap(), Some(4));
        let g24 = named::golay24();
        assert!(g24.is_self_dual() && g24.is_doubly_even().holds);
        assert_eq!(g24.min_distance(Exec::Parallel, budget()).unwrap(), Some(8));
    }

    #[test]
    fn qr_rejects_bad_parameters() {
        assert!(matches!(extended_qr(&FieldCtx::binary(), 9), Err(Error::NotPrime(9))));
        assert!(matches!(extended_qr(&FieldCtx::binary(), 11), Err(Error::OddDegreeQr { .. })));
        assert!(matches!(extended_qr(&FieldCtx::new(3).unwrap(), 3), Err(Error::OddDegreeQr { .. })));
        assert!(extended_qr(&FieldCtx::new(4).unwrap(), 3).is_ok());
    }

    #[test]
    fn qr_family_is_doubly_even_self_dual() {
        for len in [4, 8, 12, 20] {
            let c = named::q(len).unwrap();
            assert_eq!(c.dimension() * 2, c.len());
            assert!(c.is_self_dual(), "Q{len}");
            assert!(c.is_doubly_even().holds, "Q{len}");
            assert!(c.contains(&vec![O; len as usize]));
        }
    }

    #[test]
    fn weight_profile_and_distance() {
        let q12 = named::q(12).unwrap();
        let wp = q12.weight_profile(Exec::Parallel, budget()).unwrap();
        assert_eq!(wp.total(), 4u128.pow(6));
        assert_eq!(wp.counts[0], 1);
        assert_eq!(wp.min_distance(), Some(6));
        assert_eq!(q12.weight_profile(Exec::Sequential, budget()).unwrap(), wp);
        assert!(matches!(q12.weight_profile(Exec::Sequential, 1000), Err(Error::Budget(_))));
        assert_eq!(LinearCode::zero(f4(), 3).min_distance(Exec::Sequential, budget()).unwrap(), None);
    }

    #[test]
    fn shorten_and_adjoin() {
        let q4 = named::q(4).unwrap();
        assert_eq!(q4.shorten(&[]).unwrap(), q4);
        let s = q4.shorten(&[0]).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.dimension(), 1);
        assert!(matches!(q4.adjoin(&[O, O, O, O]), Err(Error::AlreadyInCode)));
        let bigger = q4.adjoin(&[O, Z, Z, Z]).unwrap();
        assert_eq!(bigger.dimension(), 3);
    }

    #[test]
    fn subfield_expansion() {
        let q4 = named::q(4).unwrap();
        let basis = find_sc_basis(&f4()).unwrap();
        let e = q4.subfield_expand(FieldCtx::binary(), &basis).unwrap();
        assert_eq!((e.len(), e.dimension()), (8, 4));
        assert!(e.is_self_dual() && e.is_doubly_even().holds);
        let z = LinearCode::zero(f4(), 3).subfield_expand(FieldCtx::binary(), &basis).unwrap();
        assert_eq!(z, LinearCode::zero(FieldCtx::binary(), 6));
    }

    #[test]
    fn rational_subcodes() {
        let q8 = named::q(8).unwrap();
        assert_eq!(q8.rational_subcode(FieldCtx::binary()).unwrap().dimension(), 4);
        let q20 = named::q(20).unwrap();
        let r = q20.rational_subcode(FieldCtx::binary()).unwrap();
        assert_eq!(r, LinearCode::new(FieldCtx::binary(), 20, vec![vec![O; 20]]).unwrap());
        assert_eq!(q8.rational_subcode(f4()).unwrap(), q8);
        // F4 inside F16
        let f16 = FieldCtx::new(4).unwrap();
        let big = q8.extend_scalars(f16).unwrap();
        assert_eq!(big.rational_subcode(f4()).unwrap(), q8);
    }

    #[test]
    fn frobenius_image_of_q4() {
        let q4 = named::q(4).unwrap();
        let conj = q4.frobenius_image(1);
        assert_ne!(conj, q4);
        assert_eq!(conj.frobenius_image(1), q4);
        assert!(conj.is_doubly_even().holds);
    }

    #[test]
    fn length_divisibility() {
        for c in [named::hamming8(), named::golay24()] {
            assert_eq!(c.len() % 8, 0);
        }
        for len in [4, 8, 12, 20, 24] {
            assert_eq!(named::q(len).unwrap().len() % 4, 0);
        }
    }

    /// Oracle: brute-force enumeration of both codes, compared through the
    /// Krawtchouk form of the MacWilliams identity.
    fn macwilliams(counts: &[u64], n: usize, q: i128, k: usize) -> Vec<i128> {
        let binom = |a: i128, b: i128| -> i128 {
            if b < 0 || b > a {
                return 0;
            }
            (0..b).fold(1i128, |acc, i| acc * (a - i) / (i + 1))
        };
        (0..=n as i128)
            .map(|j| {
                let s: i128 = counts
                    .iter()
                    .enumerate()
                    .map(|(i, &a)| {
                        let i = i as i128;
                        let kr: i128 = (0..=j)
                            .map(|s| {
                                let sign = if s % 2 == 0 { 1 } else { -1 };
                                sign * (q - 1).pow((j - s) as u32) * binom(i, s) * binom(n as i128 - i, j - s)
                            })
                            .sum();
                        a as i128 * kr
                    })
                    .sum();
                s / q.pow(k as u32)
            })
            .collect()
    }

    fn brute_profile(c: &LinearCode) -> Vec<u64> {
        let mut counts = vec![0u64; c.len() + 1];
        c.for_each_codeword(budget(), |w| counts[w.iter().filter(|x| !x.is_zero()).count()] += 1).unwrap();
        counts
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn dual_is_an_involution_and_macwilliams_holds(
            n in 2usize..7,
            entries in proptest::collection::vec(0u64..4, 0..18),
        ) {
            let rows: Vec<Vector> = entries.chunks(n).filter(|r| r.len() == n)
                .map(|r| r.iter().map(|&x| FieldElement(x)).collect()).collect();
            let c = LinearCode::new(f4(), n, rows).unwrap();
            let d = c.dual();
            prop_assert_eq!(d.dimension(), n - c.dimension());
            prop_assert_eq!(d.dual(), c.clone());
            let wp = c.weight_profile(Exec::Sequential, budget()).unwrap();
            prop_assert_eq!(&wp.counts, &brute_profile(&c));
            let expected = macwilliams(&wp.counts, n, 4, c.dimension());
            let dual_counts: Vec<i128> = d.weight_profile(Exec::Parallel, budget()).unwrap()
                .counts.iter().map(|&x| x as i128).collect();
            prop_assert_eq!(dual_counts, expected);
        }
    }
}
