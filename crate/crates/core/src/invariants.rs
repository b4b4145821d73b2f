//! Homogeneous invariants of Clifford-Weil groups, algebraic independence
//! checks and the search for extremal complete weight enumerators over F4.
//!
//! Fixed spaces are computed in two steps. The monomial generators (the
//! `m_r`, the diagonal `d_r` and `γ`) act on monomials up to a scalar, so
//! their common fixed space has a basis of weighted orbit sums. The remaining
//! generators are then imposed on that much smaller space through the
//! orthogonal projection onto it (the groups are unitary, so the Fischer
//! inner product is invariant); the resulting kernel is found modulo large
//! primes, lifted to Q and verified exactly.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::codes::{named, shorten_adjoin_search, LinearCode};
use crate::cwg::{is_invariant, CliffordWeil, MatrixGroup};
use crate::cyc::{CycMatrix, CycQ};
use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::linalg::{
    crt_pair, invmod, mulmod, nullspace_mod, powmod, primes_1_mod_8, rat_mod, rational_reconstruct, rref, solve_affine,
    zeta8_mod,
};
use crate::par::Exec;
use crate::poly::{act_endomorphism, cwe, hamming_specialize, CycPoly, monomial_count, monomials_of_degree, ElemOp, Monomial, SparsePoly};

pub const DEFAULT_DEGREE_CAP: u32 = 40;
const MAX_MONOMIALS: u128 = 200_000;
const MAX_PRIMES: usize = 64;

/// An echelonized basis of the degree-`degree` invariants.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantBasis {
    pub degree: u32,
    pub with_galois: bool,
    pub basis: Vec<SparsePoly>,
}

impl InvariantBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Degree-`n` invariants of `G_f` (with `γ` if asked), `n ≤ 40`.
pub fn invariant_space(f: u32, n: u32, with_galois: bool) -> Result<InvariantBasis> {
    invariant_space_capped(f, n, with_galois, DEFAULT_DEGREE_CAP)
}

pub fn invariant_space_capped(f: u32, n: u32, with_galois: bool, cap: u32) -> Result<InvariantBasis> {
    if n > cap {
        return Err(Error::Budget(format!("degree {n} exceeds the cap {cap}")));
    }
    let cw = CliffordWeil::new(FieldCtx::new(f)?)?;
    let basis = fixed_space(&cw.generators(with_galois), cw.dim(), n)?;
    Ok(InvariantBasis { degree: n, with_galois, basis })
}

/// A weighted orbit sum `Σ w_μ x^μ`; the first member is the largest monomial
/// and has weight 1.
struct Orbit {
    members: Vec<(usize, BigRational)>,
}

fn monomial_factor(m: Monomial, vals: &[CycQ]) -> CycQ {
    let mut f = CycQ::one();
    for (a, v) in vals.iter().enumerate() {
        let e = m.exp(a);
        if e > 0 {
            f = &f * &v.pow(e as u64);
        }
    }
    f
}

/// Orbits of degree-`n` monomials carrying a nonzero invariant of the
/// monomial generators.
fn invariant_orbits(monos: &[Monomial], index: &HashMap<Monomial, usize>, gens: &[(Vec<usize>, Vec<CycQ>)]) -> Result<Vec<Orbit>> {
    let mut seen = vec![false; monos.len()];
    let mut orbits = Vec::new();
    for start in 0..monos.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut weights: HashMap<usize, CycQ> = HashMap::from([(start, CycQ::one())]);
        let mut order = vec![start];
        let mut queue = VecDeque::from([start]);
        let mut dead = false;
        while let Some(i) = queue.pop_front() {
            let w = weights[&i].clone();
            for (perm, vals) in gens {
                let img = monos[i].permute(perm);
                let j = index[&img];
                let wj = &monomial_factor(monos[i], vals) * &w;
                match weights.get(&j) {
                    Some(prev) => dead |= *prev != wj,
                    None => {
                        seen[j] = true;
                        weights.insert(j, wj);
                        order.push(j);
                        queue.push_back(j);
                    }
                }
            }
        }
        if dead {
            continue;
        }
        let members = order
            .into_iter()
            .map(|i| {
                let w = weights[&i].as_rational().cloned().ok_or_else(|| Error::Internal("non-rational orbit weight".into()))?;
                Ok((i, w))
            })
            .collect::<Result<Vec<_>>>()?;
        orbits.push(Orbit { members });
    }
    Ok(orbits)
}

fn cyc_mod(c: &CycQ, p: u64, zeta: u64) -> Option<u64> {
    let mut acc = 0u64;
    for (k, x) in c.coords().iter().enumerate() {
        if !x.is_zero() {
            acc = (acc + mulmod(rat_mod(x, p)?, powmod(zeta, k as u64, p), p)) % p;
        }
    }
    Some(acc)
}

fn elementary_factors_mod(m: &[Vec<u64>], p: u64) -> Option<Vec<ElemOp<u64>>> {
    let n = m.len();
    let mut a = m.to_vec();
    let mut ops = Vec::new();
    for c in 0..n {
        let piv = (c..n).find(|&r| a[r][c] != 0)?;
        if piv != c {
            a.swap(piv, c);
            ops.push(ElemOp::Swap(c, piv));
        }
        let s = a[c][c];
        if s != 1 {
            let inv = invmod(s, p)?;
            for x in a[c].iter_mut() {
                *x = mulmod(*x, inv, p);
            }
            ops.push(ElemOp::Scale(c, s));
        }
        for r in 0..n {
            if r == c || a[r][c] == 0 {
                continue;
            }
            let f = a[r][c];
            let row_c = a[c].clone();
            for (x, y) in a[r].iter_mut().zip(&row_c) {
                *x = (*x + p - mulmod(f, *y, p)) % p;
            }
            ops.push(ElemOp::AddMul { target: r, source: c, c: f });
        }
    }
    Some(ops)
}

/// A homogeneous polynomial with coefficients in `F_p^width`, stored densely
/// over the monomials of one degree.
struct DenseMod<'a> {
    monos: &'a [Monomial],
    index: &'a HashMap<Monomial, usize>,
    width: usize,
    p: u64,
}

impl DenseMod<'_> {
    fn apply(&self, data: &[u64], ops: &[ElemOp<u64>], degree: u32) -> Vec<u64> {
        let (w, p) = (self.width, self.p);
        let nd = degree as usize;
        let mut binom = vec![vec![0u64; nd + 1]; nd + 1];
        for k in 0..=nd {
            binom[k][0] = 1;
            for j in 1..=k {
                binom[k][j] = (binom[k - 1][j - 1] + if j < k { binom[k - 1][j] } else { 0 }) % p;
            }
        }
        let mut cur = data.to_vec();
        for op in ops {
            let mut out = vec![0u64; cur.len()];
            match op {
                ElemOp::Swap(u, v) => {
                    let mut perm: Vec<usize> = (0..8).collect();
                    perm.swap(*u, *v);
                    for (i, m) in self.monos.iter().enumerate() {
                        let j = self.index[&m.permute(&perm)];
                        out[j * w..(j + 1) * w].copy_from_slice(&cur[i * w..(i + 1) * w]);
                    }
                }
                ElemOp::Scale(u, s) => {
                    let pw: Vec<u64> = (0..=nd as u64).map(|e| powmod(*s, e, p)).collect();
                    for (i, m) in self.monos.iter().enumerate() {
                        let f = pw[m.exp(*u) as usize];
                        for (o, x) in out[i * w..(i + 1) * w].iter_mut().zip(&cur[i * w..(i + 1) * w]) {
                            *o = mulmod(*x, f, p);
                        }
                    }
                }
                ElemOp::AddMul { target, source, c } => {
                    let pw: Vec<u64> = (0..=nd as u64).map(|e| powmod(*c, e, p)).collect();
                    for (i, m) in self.monos.iter().enumerate() {
                        let row = &cur[i * w..(i + 1) * w];
                        if row.iter().all(|&x| x == 0) {
                            continue;
                        }
                        let k = m.exp(*target) as usize;
                        let es = m.exp(*source);
                        for jj in 0..=k {
                            let mm = m.with_exp(*target, (k - jj) as u32).with_exp(*source, es + jj as u32);
                            let t = self.index[&mm];
                            let f = mulmod(binom[k][jj], pw[jj], p);
                            for (o, x) in out[t * w..(t + 1) * w].iter_mut().zip(row) {
                                *o = ((*o as u128 + f as u128 * *x as u128) % p as u128) as u64;
                            }
                        }
                    }
                }
            }
            cur = out;
        }
        cur
    }
}

/// Kernel modulo `p` of the projected invariance equations, as free columns
/// and reduced kernel vectors. `None` when `p` divides a denominator.
fn kernel_mod(
    orbits: &[Orbit],
    others: &[CycMatrix],
    dense: &mut DenseMod<'_>,
    degree: u32,
    p: u64,
) -> Option<(Vec<usize>, Vec<Vec<u64>>)> {
    let width = orbits.len();
    dense.p = p;
    dense.width = width;
    let zeta = zeta8_mod(p);
    let mut data = vec![0u64; dense.monos.len() * width];
    for (j, o) in orbits.iter().enumerate() {
        for (i, w) in &o.members {
            data[i * width + j] = rat_mod(w, p)?;
        }
    }
    let mut eqs: Vec<Vec<u64>> = Vec::new();
    for g in others {
        let rows: Vec<Vec<u64>> = g
            .rows()
            .iter()
            .map(|r| r.iter().map(|c| cyc_mod(c, p, zeta)).collect::<Option<Vec<u64>>>())
            .collect::<Option<_>>()?;
        let ops = elementary_factors_mod(&rows, p)?;
        let img = dense.apply(&data, &ops, degree);
        for (i, o) in orbits.iter().enumerate() {
            let mut row = vec![0u64; width];
            let mut norm = 0u64;
            for (mi, w) in &o.members {
                let wm = rat_mod(w, p)?;
                norm = (norm + mulmod(wm, wm, p)) % p;
                for (r, x) in row.iter_mut().zip(&img[mi * width..(mi + 1) * width]) {
                    *r = (*r + mulmod(*x, wm, p)) % p;
                }
            }
            row[i] = (row[i] + p - norm) % p;
            eqs.push(row);
        }
    }
    Some(nullspace_mod(&eqs, width, p))
}

fn orbit_poly(orbits: &[Orbit], monos: &[Monomial], nvars: usize, lambda: &[BigRational]) -> SparsePoly {
    let mut out = SparsePoly::zero(nvars);
    for (o, l) in orbits.iter().zip(lambda) {
        if l.is_zero() {
            continue;
        }
        for (i, w) in &o.members {
            out.add_term(monos[*i], l * w);
        }
    }
    out
}

/// Echelonized basis of the degree-`n` polynomials fixed by every matrix in
/// `gens` (all unitary, acting on `nvars` variables).
pub fn fixed_space(gens: &[CycMatrix], nvars: usize, n: u32) -> Result<Vec<SparsePoly>> {
    if monomial_count(n, nvars) > MAX_MONOMIALS {
        return Err(Error::Budget(format!("{} monomials of degree {n} in {nvars} variables", monomial_count(n, nvars))));
    }
    let mut mono_gens = Vec::new();
    let mut others = Vec::new();
    for g in gens {
        if g.dim() != nvars {
            return Err(Error::Dimension(format!("{}x{} generator for {nvars} variables", g.dim(), g.dim())));
        }
        if !g.is_unitary() {
            return Err(Error::Invalid("fixed spaces are computed for unitary generators only".into()));
        }
        match g.as_monomial() {
            Some(pv) => mono_gens.push(pv),
            None => others.push(g.clone()),
        }
    }
    let monos = monomials_of_degree(nvars, n);
    let index: HashMap<Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let orbits = invariant_orbits(&monos, &index, &mono_gens)?;
    let width = orbits.len();
    if others.is_empty() || width == 0 {
        return Ok(orbits
            .iter()
            .enumerate()
            .map(|(j, _)| {
                let mut l = vec![BigRational::zero(); width];
                l[j] = BigRational::one();
                orbit_poly(&orbits, &monos, nvars, &l)
            })
            .collect());
    }

    let mut dense = DenseMod { monos: &monos, index: &index, width, p: 2 };
    // best (kernel dimension, pivot columns) seen so far; good primes attain
    // the minimum
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut free: Vec<usize> = Vec::new();
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last: Option<Vec<Vec<BigRational>>> = None;
    for p in primes_1_mod_8().take(MAX_PRIMES) {
        let Some((f, kernel)) = kernel_mod(&orbits, &others, &mut dense, n, p) else {
            continue;
        };
        if f.is_empty() {
            return Ok(Vec::new());
        }
        let pivots: Vec<usize> = (0..width).filter(|c| !f.contains(c)).collect();
        let key = (f.len(), pivots);
        match &best {
            Some(b) if key > *b => continue,
            Some(b) if key == *b => {
                for (acc, v) in residues.iter_mut().zip(&kernel) {
                    for (a, &x) in acc.iter_mut().zip(v) {
                        *a = crt_pair(a, &modulus, x, p);
                    }
                }
                modulus *= BigInt::from(p);
            }
            _ => {
                best = Some(key);
                free = f;
                residues = kernel.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
                modulus = BigInt::from(p);
                last = None;
            }
        }
        let lifted: Option<Vec<Vec<BigRational>>> = residues
            .iter()
            .map(|v| v.iter().map(|a| rational_reconstruct(a, &modulus)).collect())
            .collect();
        let Some(lifted) = lifted else { continue };
        if last.as_ref() == Some(&lifted) {
            let polys: Vec<SparsePoly> = lifted.iter().map(|l| orbit_poly(&orbits, &monos, nvars, l)).collect();
            let mut ok = true;
            for q in &polys {
                if !is_invariant(q, gens)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                // the kernel modulo p contains the reduction of the true
                // fixed space, so `free.len()` verified invariants are all
                debug_assert_eq!(free.len(), lifted.len());
                let mut rows = lifted;
                rref(&mut rows);
                return Ok(rows.iter().map(|l| orbit_poly(&orbits, &monos, nvars, l)).collect());
            }
        }
        last = Some(lifted);
    }
    Err(Error::Internal(format!("invariant lift did not stabilise after {MAX_PRIMES} primes")))
}

/// Reynolds average `|G|⁻¹ Σ_g p(gx)`, a cross-check for small degrees.
pub fn reynolds(p: &SparsePoly, group: &MatrixGroup, exec: Exec) -> Result<SparsePoly> {
    let images = exec.map_range(group.order(), |i| act_endomorphism(p, group.element(i)));
    let mut sum = CycPoly::zero(p.nvars());
    for img in images {
        sum = sum.add(&img?);
    }
    let avg = sum.scale(&CycQ::from_ratio(1, group.order() as i64));
    avg.to_rational().ok_or_else(|| Error::Internal("Reynolds average with irrational coefficients".into()))
}

/// Rank of the Jacobian of a polynomial family at rational points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JacobianReport {
    pub polys: usize,
    pub rank: usize,
    /// The point attaining `rank`.
    pub point: Vec<i64>,
    pub points_tried: usize,
    /// `rank` equals the number of polynomials, which certifies algebraic
    /// independence. Otherwise `rank` is only a lower bound on the generic
    /// rank.
    pub independent: bool,
}

const JACOBIAN_POINTS: [[i64; 8]; 6] = [
    [1, 2, 3, 5, 7, 11, 13, 17],
    [2, 3, 5, 7, 11, 13, 17, 19],
    [3, 5, 7, 11, 13, 17, 19, 23],
    [1, -1, 4, 9, 16, 25, 36, 49],
    [7, 1, 8, 2, 8, 1, 8, 2],
    [11, 13, 2, 1, 17, 3, 19, 5],
];

pub fn check_independence(polys: &[SparsePoly]) -> Result<JacobianReport> {
    let nvars = polys.first().map_or(0, |p| p.nvars());
    if polys.iter().any(|p| p.nvars() != nvars) {
        return Err(Error::Dimension("polynomials in different numbers of variables".into()));
    }
    let target = polys.len().min(nvars);
    let mut report = JacobianReport { polys: polys.len(), rank: 0, point: Vec::new(), points_tried: 0, independent: false };
    if polys.is_empty() {
        report.independent = true;
        return Ok(report);
    }
    let derivs: Vec<Vec<SparsePoly>> = polys.iter().map(|p| (0..nvars).map(|i| p.derivative(i)).collect()).collect();
    for pt in JACOBIAN_POINTS {
        let point: Vec<BigRational> = pt[..nvars].iter().map(|&x| BigRational::from_integer(x.into())).collect();
        let mut rows: Vec<Vec<BigRational>> = derivs.iter().map(|ds| ds.iter().map(|d| d.evaluate(&point)).collect()).collect();
        let rank = rref(&mut rows).len();
        report.points_tried += 1;
        if rank > report.rank || report.point.is_empty() {
            report.rank = rank;
            report.point = pt[..nvars].to_vec();
        }
        if report.rank == target {
            break;
        }
    }
    report.independent = report.rank == polys.len();
    Ok(report)
}

/// Complete weight enumerators of the extended QR codes of lengths 4, 8, 12
/// and 20 over F4, keyed by degree.
pub fn qr_enumerators(exec: Exec, budget: u64) -> Result<Vec<(u32, SparsePoly)>> {
    [4u32, 8, 12, 20].iter().map(|&len| Ok((len, cwe(&named::q(len as u64)?, exec, budget)?))).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpanReport {
    pub degree: u32,
    pub products: usize,
    pub product_rank: usize,
    pub invariant_dim: usize,
    pub spans: bool,
}

/// Whether the degree-`n` products of the QR enumerators span the degree-`n`
/// invariants of `G_2`.
pub fn product_span_check(n: u32, exec: Exec, budget: u64) -> Result<SpanReport> {
    product_span_check_with(&qr_enumerators(exec, budget)?, n)
}

pub fn product_span_check_with(gens: &[(u32, SparsePoly)], n: u32) -> Result<SpanReport> {
    if n % 4 != 0 || n > 36 {
        return Err(Error::Invalid(format!("span checks need n = 0 mod 4 and n <= 36, got {n}")));
    }
    let inv = invariant_space(2, n, false)?;
    let mut products = Vec::new();
    let nvars = gens.first().map_or(4, |g| g.1.nvars());
    collect_products(gens, n, SparsePoly::one(nvars), &mut products)?;
    let cols: Vec<Monomial> = monomials_of_degree(nvars, n);
    let to_row = |p: &SparsePoly| cols.iter().map(|m| p.coeff(*m)).collect::<Vec<_>>();
    let mut rows: Vec<Vec<BigRational>> = products.iter().map(to_row).collect();
    let product_rank = rref(&mut rows).len();
    rows.extend(inv.basis.iter().map(to_row));
    let joint = rref(&mut rows).len();
    Ok(SpanReport {
        degree: n,
        products: products.len(),
        product_rank,
        invariant_dim: inv.dim(),
        spans: product_rank == inv.dim() && joint == inv.dim(),
    })
}

fn collect_products(gens: &[(u32, SparsePoly)], n: u32, acc: SparsePoly, out: &mut Vec<SparsePoly>) -> Result<()> {
    let Some(((deg, g), rest)) = gens.split_first() else {
        if n == 0 {
            out.push(acc);
        }
        return Ok(());
    };
    let mut cur = acc;
    let mut left = n;
    loop {
        collect_products(rest, left, cur.clone(), out)?;
        if left < *deg {
            return Ok(());
        }
        left -= deg;
        cur = cur.mul(g)?;
    }
}

/// Which extremality condition rules out every candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ObstructionKind {
    NegativeCoeff,
    NotIntegral,
    NotDiv3,
    NotPowerOfTwo,
    NoSolution,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtremalReport {
    pub n: u32,
    pub d: u32,
    pub feasible: bool,
    /// Dimension of the affine space of invariants meeting the normalization
    /// and the distance condition; `None` when there are none.
    pub affine_dim: Option<usize>,
    pub candidates: Vec<SparsePoly>,
    /// `m` with `p(1,1,0,0) = 2^m`, per candidate.
    pub rational_dims: Vec<u32>,
    pub obstructions: Vec<Obstruction>,
}

impl ExtremalReport {
    pub fn has(&self, kind: ObstructionKind) -> bool {
        self.obstructions.iter().any(|o| o.kind == kind)
    }
}

const MAX_RESIDUE_CLASSES: u128 = 1 << 20;
const MAX_POINTS: u64 = 10_000_000;

/// `p` as an affine function of integer parameters: the coefficient of
/// `monos[i]` is `(base[i] + Σ_k dirs[k][i]·t_k) / den`.
struct Family {
    /// The monomial whose coefficient is `t_k` (read back by the tests).
    #[cfg_attr(not(test), allow(dead_code))]
    pivots: Vec<Monomial>,
    monos: Vec<Monomial>,
    base: Vec<BigInt>,
    dirs: Vec<Vec<BigInt>>,
    den: BigInt,
    n: u32,
    /// `p(1,1,0,0)·den` as an affine form.
    rational_form: (BigInt, Vec<BigInt>),
}

fn is_b_monomial(m: Monomial) -> bool {
    let b = m.exp(1);
    b > 0 && m.exp(2) == b && m.exp(3) == b
}

fn is_rational_monomial(m: Monomial) -> bool {
    m.exp(2) == 0 && m.exp(3) == 0
}

/// `Some(m)` if `x = 2^m` with `m ≤ max`.
fn power_of_two(x: &BigInt, max: u32) -> Option<u32> {
    if !x.is_positive() {
        return None;
    }
    let bits = x.bits() - 1;
    (x == &(BigInt::one() << bits) && bits <= max as u64).then_some(bits as u32)
}

/// Outcome of the exact checks a) to d) on one polynomial.
enum Verdict {
    Ok(u32),
    Fail(ObstructionKind, String),
}

fn check_conditions(p: &SparsePoly, n: u32) -> Vec<(ObstructionKind, String)> {
    let mut fails = Vec::new();
    if let Some((m, c)) = p.terms().find(|(_, c)| c.is_negative()) {
        fails.push((ObstructionKind::NegativeCoeff, format!("coefficient {c} at {:?}", m.exps(p.nvars()))));
    }
    if let Some((m, c)) = p.terms().find(|(_, c)| !c.is_integer()) {
        fails.push((ObstructionKind::NotIntegral, format!("coefficient {c} at {:?}", m.exps(p.nvars()))));
    }
    let three = BigInt::from(3);
    if let Some((m, c)) = p.terms().find(|(m, c)| is_b_monomial(**m) && c.is_integer() && !c.to_integer().is_multiple_of(&three)) {
        fails.push((ObstructionKind::NotDiv3, format!("coefficient {c} at {:?}", m.exps(p.nvars()))));
    }
    let ones = vec![BigRational::one(); p.nvars()];
    let total = p.evaluate(&ones);
    if total != BigRational::from_integer(BigInt::one() << n) {
        fails.push((ObstructionKind::NoSolution, format!("p(1,1,1,1) = {total}")));
    }
    let mut pt = vec![BigRational::zero(); p.nvars()];
    pt[0] = BigRational::one();
    pt[1] = BigRational::one();
    let r = p.evaluate(&pt);
    if !r.is_integer() || power_of_two(&r.to_integer(), n / 2).is_none() {
        fails.push((ObstructionKind::NotPowerOfTwo, format!("p(1,1,0,0) = {r}")));
    }
    fails
}

fn verdict(p: &SparsePoly, n: u32) -> Verdict {
    match check_conditions(p, n).into_iter().next() {
        Some((k, d)) => Verdict::Fail(k, d),
        None => {
            let mut pt = vec![BigRational::zero(); p.nvars()];
            pt[0] = BigRational::one();
            pt[1] = BigRational::one();
            let m = power_of_two(&p.evaluate(&pt).to_integer(), n / 2).expect("checked");
            Verdict::Ok(m)
        }
    }
}

impl Family {
    fn poly(&self, t: &[BigInt]) -> SparsePoly {
        let mut p = SparsePoly::zero(4);
        for (i, m) in self.monos.iter().enumerate() {
            let mut num = self.base[i].clone();
            for (dir, tk) in self.dirs.iter().zip(t) {
                if !dir[i].is_zero() {
                    num += &dir[i] * tk;
                }
            }
            p.add_term(*m, BigRational::new(num, self.den.clone()));
        }
        p
    }

    /// Cheap exact test that `p(1,1,0,0)` is not a power of 2 at most
    /// `2^(n/2)`, the most common failure among admissible points.
    fn quick_reject(&self, t: &[BigInt]) -> bool {
        let mut num = self.rational_form.0.clone();
        for (a, x) in self.rational_form.1.iter().zip(t) {
            num += a * x;
        }
        let (q, r) = num.div_rem(&self.den);
        !r.is_zero() || power_of_two(&q, self.n / 2).is_none()
    }

    /// Affine forms (`base`, `dirs`) of the given monomial indices summed.
    fn summed(&self, idx: impl Iterator<Item = usize> + Clone) -> (BigInt, Vec<BigInt>) {
        let b = idx.clone().map(|i| self.base[i].clone()).sum();
        let ds = self.dirs.iter().map(|d| idx.clone().map(|i| d[i].clone()).sum()).collect();
        (b, ds)
    }
}

/// Residue classes of `t` modulo `3·den` passing integrality, condition b)
/// and `p(1,1,0,0) ≢ 0 (mod 3)`, cumulatively. `None` if there are too many
/// classes to enumerate.
struct Residues {
    modulus: u64,
    /// `prefix[l][i]`: some class extends the residues `i` of `t_0..t_l`
    /// (least significant first); `prefix[r]` is the set of passing classes.
    prefix: Vec<Vec<bool>>,
    counts: [u64; 4],
}

impl Residues {
    fn allows(&self, fixed: &[BigInt]) -> bool {
        let m = BigInt::from(self.modulus);
        let idx = fixed.iter().rev().fold(0u64, |acc, x| acc * self.modulus + x.mod_floor(&m).to_u64().expect("reduced"));
        self.prefix[fixed.len()][idx as usize]
    }
}

fn residue_stage(fam: &Family) -> Option<Residues> {
    let r = fam.dirs.len();
    let m_big = &fam.den * BigInt::from(3);
    let modulus = m_big.to_u64()?;
    let classes = (modulus as u128).checked_pow(r as u32)?;
    if classes > MAX_RESIDUE_CLASSES {
        return None;
    }
    let den = fam.den.to_u64()?;
    let red = |x: &BigInt| x.mod_floor(&m_big).to_u64().expect("reduced");
    let form = |i: usize| -> (u64, Vec<u64>) { (red(&fam.base[i]), fam.dirs.iter().map(|d| red(&d[i])).collect()) };
    let mut integral: Vec<(u64, Vec<u64>)> = (0..fam.monos.len())
        .map(|i| {
            let (b, ds) = form(i);
            (b % den, ds.iter().map(|x| x % den).collect())
        })
        .collect();
    integral.sort();
    integral.dedup();
    let mut div3: Vec<(u64, Vec<u64>)> = (0..fam.monos.len()).filter(|&i| is_b_monomial(fam.monos[i])).map(form).collect();
    div3.sort();
    div3.dedup();
    let (b0, bs) = fam.summed((0..fam.monos.len()).filter(|&i| is_rational_monomial(fam.monos[i])));
    let pow_form = (red(&b0), bs.iter().map(red).collect::<Vec<u64>>());
    let eval = |f: &(u64, Vec<u64>), t: &[u64], m: u64| -> u64 {
        let mut acc = f.0 as u128;
        for (a, x) in f.1.iter().zip(t) {
            acc += *a as u128 * *x as u128;
        }
        (acc % m as u128) as u64
    };
    let mut pass = vec![false; classes as usize];
    let mut counts = [0u64; 4];
    let mut t = vec![0u64; r];
    for (idx, slot) in pass.iter_mut().enumerate() {
        let mut rest = idx as u64;
        for x in t.iter_mut() {
            *x = rest % modulus;
            rest /= modulus;
        }
        counts[0] += 1;
        if !integral.iter().all(|f| eval(f, &t, den) == 0) {
            continue;
        }
        counts[1] += 1;
        if !div3.iter().all(|f| eval(f, &t, modulus) == 0) {
            continue;
        }
        counts[2] += 1;
        // p(1,1,0,0)·den mod 3·den; the value is a multiple of 3 iff this is 0
        if eval(&pow_form, &t, modulus) == 0 {
            continue;
        }
        counts[3] += 1;
        *slot = true;
    }
    let mut prefix = vec![pass];
    for _ in 0..r {
        let next = prefix.last().expect("nonempty");
        let len = next.len() / modulus as usize;
        let shrunk = (0..len).map(|i| (0..modulus as usize).any(|v| next[i + v * len])).collect();
        prefix.push(shrunk);
    }
    prefix.reverse();
    Some(Residues { modulus, prefix, counts })
}

/// Integer bounds on `t` implied by nonnegativity of every coefficient and
/// `t_k ≤ 2^n`, or `None` if they are contradictory.
fn propagate_bounds<T: Integer + Signed + Clone>(rows: &[(T, Vec<T>)], mut bounds: Vec<(T, T)>) -> Option<Vec<(T, T)>> {
    let r = bounds.len();
    if rows.iter().any(|(c0, a)| c0.is_negative() && a.iter().all(|x| x.is_zero())) {
        return None;
    }
    for _ in 0..200 {
        let mut changed = false;
        for (c0, a) in rows {
            let contrib = |j: usize, b: &[(T, T)]| -> T {
                if a[j].is_positive() {
                    a[j].clone() * b[j].1.clone()
                } else {
                    a[j].clone() * b[j].0.clone()
                }
            };
            let mut total = c0.clone();
            for j in 0..r {
                total = total + contrib(j, &bounds);
            }
            for k in 0..r {
                if a[k].is_zero() {
                    continue;
                }
                let rest = total.clone() - contrib(k, &bounds);
                if a[k].is_positive() {
                    let lo = Integer::div_ceil(&-rest, &a[k]);
                    if lo > bounds[k].0 {
                        bounds[k].0 = lo;
                        changed = true;
                    }
                } else {
                    let hi = rest.div_floor(&-a[k].clone());
                    if hi < bounds[k].1 {
                        bounds[k].1 = hi;
                        changed = true;
                    }
                }
                if bounds[k].0 > bounds[k].1 {
                    return None;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Some(bounds)
}

/// Searches the degree-`n` invariants of `G_2` for complete weight
/// enumerators of doubly-even self-dual codes with minimum distance `≥ d`.
pub fn extremal_search(n: u32, d: u32) -> Result<ExtremalReport> {
    if n % 4 != 0 || n > 24 {
        return Err(Error::Invalid(format!("extremal search needs n = 0 mod 4 and n <= 24, got {n}")));
    }
    extremal_search_in(&invariant_space(2, n, false)?, d)
}

enum Affine {
    Inconsistent,
    Unique(SparsePoly),
    Family(Family),
}

/// The invariants with leading coefficient 1 and `p(1,x,x,x) ≡ 1 mod x^d`.
fn affine_family(inv: &InvariantBasis, d: u32) -> Result<Affine> {
    let n = inv.degree;
    let k = inv.dim();
    let lead = Monomial::from_exps(&[n, 0, 0, 0])?;
    let specs: Vec<Vec<BigRational>> = inv.basis.iter().map(hamming_specialize).collect();
    let mut a = vec![inv.basis.iter().map(|b| b.coeff(lead)).collect::<Vec<_>>()];
    let mut rhs = vec![BigRational::one()];
    for w in 1..d as usize {
        a.push(specs.iter().map(|s| s.get(w).cloned().unwrap_or_default()).collect());
        rhs.push(BigRational::zero());
    }
    let Some((x, null)) = solve_affine(&a, &rhs, k) else {
        return Ok(Affine::Inconsistent);
    };
    let combine = |c: &[BigRational]| {
        let mut p = SparsePoly::zero(4);
        for (ci, b) in c.iter().zip(&inv.basis) {
            if !ci.is_zero() {
                p = p.add(&b.scale(ci));
            }
        }
        p
    };
    let p0 = combine(&x);
    if null.is_empty() {
        return Ok(Affine::Unique(p0));
    }
    let dirs: Vec<SparsePoly> = null.iter().map(|v| combine(v)).collect();

    // reparametrize by the coefficients t_k of pivot monomials
    let mut support: Vec<Monomial> = p0.terms().map(|(m, _)| *m).collect();
    for h in &dirs {
        support.extend(h.terms().map(|(m, _)| *m));
    }
    support.sort_unstable_by(|a, b| b.cmp(a));
    support.dedup();
    let mut rows: Vec<Vec<BigRational>> = dirs.iter().map(|h| support.iter().map(|m| h.coeff(*m)).collect()).collect();
    let pivots = rref(&mut rows);
    let mut base: Vec<BigRational> = support.iter().map(|m| p0.coeff(*m)).collect();
    for (row, &pc) in rows.iter().zip(&pivots) {
        let c = base[pc].clone();
        if !c.is_zero() {
            for (b, y) in base.iter_mut().zip(row) {
                *b -= &c * y;
            }
        }
    }
    let den = base.iter().chain(rows.iter().flatten()).fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scale = |c: &BigRational| (c * BigRational::from_integer(den.clone())).to_integer();
    let mut fam = Family {
        pivots: pivots.iter().map(|&i| support[i]).collect(),
        monos: support.clone(),
        base: base.iter().map(scale).collect(),
        dirs: rows.iter().map(|r| r.iter().map(scale).collect()).collect(),
        den,
        n,
        rational_form: (BigInt::zero(), Vec::new()),
    };
    fam.rational_form = fam.summed((0..fam.monos.len()).filter(|&i| is_rational_monomial(fam.monos[i])));
    Ok(Affine::Family(fam))
}

/// As [`extremal_search`] over a precomputed basis.
pub fn extremal_search_in(inv: &InvariantBasis, d: u32) -> Result<ExtremalReport> {
    let n = inv.degree;
    let mut report =
        ExtremalReport { n, d, feasible: false, affine_dim: None, candidates: Vec::new(), rational_dims: Vec::new(), obstructions: Vec::new() };
    let fam = match affine_family(inv, d)? {
        Affine::Inconsistent => {
            report.obstructions.push(Obstruction {
                kind: ObstructionKind::NoSolution,
                detail: format!("no invariant of degree {n} has p(1,x,x,x) = 1 mod x^{d}"),
            });
            return Ok(report);
        }
        Affine::Unique(p0) => {
            report.affine_dim = Some(0);
            let fails = check_conditions(&p0, n);
            if fails.is_empty() {
                report.feasible = true;
                if let Verdict::Ok(m) = verdict(&p0, n) {
                    report.rational_dims.push(m);
                }
                report.candidates.push(p0);
            } else {
                report.obstructions = fails
                    .into_iter()
                    .map(|(kind, why)| Obstruction { kind, detail: format!("the unique solution fails: {why}") })
                    .collect();
            }
            return Ok(report);
        }
        Affine::Family(fam) => fam,
    };
    report.affine_dim = Some(fam.dirs.len());

    let residues = residue_stage(&fam);
    let mut proven = false;
    if let Some(res) = &residues {
        let [all, int, div3, pow2] = res.counts;
        let note = format!(
            "{} free parameters; residues mod {}: {all} classes, {int} integral, {div3} with condition b), {pow2} with p(1,1,0,0) prime to 3",
            fam.dirs.len(),
            res.modulus
        );
        let kind = if int == 0 {
            Some(ObstructionKind::NotIntegral)
        } else if div3 == 0 {
            Some(ObstructionKind::NotDiv3)
        } else if pow2 == 0 {
            Some(ObstructionKind::NotPowerOfTwo)
        } else {
            None
        };
        if let Some(kind) = kind {
            report.obstructions.push(Obstruction { kind, detail: note });
            proven = true;
        }
    }
    let mut rows: Vec<(BigInt, Vec<BigInt>)> =
        (0..fam.monos.len()).map(|i| (fam.base[i].clone(), fam.dirs.iter().map(|d| d[i].clone()).collect())).collect();
    rows.sort();
    rows.dedup();
    let start = vec![(BigInt::zero(), BigInt::one() << n); fam.dirs.len()];
    let Some(bounds) = propagate_bounds(&rows, start) else {
        report.obstructions.push(Obstruction {
            kind: ObstructionKind::NegativeCoeff,
            detail: "every solution has a negative coefficient".into(),
        });
        return Ok(report);
    };
    if proven {
        return Ok(report);
    }
    let (leaves, fails, found) = run_search(&fam, &rows, residues.as_ref(), &bounds)?;
    for (p, m) in found {
        report.candidates.push(p);
        report.rational_dims.push(m);
    }
    report.feasible = !report.candidates.is_empty();
    if !report.feasible {
        let mut kinds: Vec<_> = fails.into_iter().collect();
        kinds.sort_by_key(|(k, _)| *k);
        if kinds.is_empty() {
            let kind = if leaves == 0 { ObstructionKind::NegativeCoeff } else { ObstructionKind::NoSolution };
            report.obstructions.push(Obstruction {
                kind,
                detail: format!("{leaves} integer points with nonnegative coefficients, none passing the residue filter"),
            });
        }
        for (kind, (count, why)) in kinds {
            report.obstructions.push(Obstruction { kind, detail: format!("{count} points fail, e.g. {why}") });
        }
    }
    Ok(report)
}

/// Branch and bound over the integer parameters, fixing them in order and
/// re-propagating the nonnegativity bounds at every node.
struct Search<'a, T> {
    fam: &'a Family,
    rows: Vec<(T, Vec<T>)>,
    residues: Option<&'a Residues>,
    leaves: u64,
    fails: HashMap<ObstructionKind, (u64, String)>,
    found: Vec<(SparsePoly, u32)>,
}

impl<'a, T: Integer + Signed + Clone + Into<BigInt>> Search<'a, T> {
    fn new(fam: &'a Family, rows: Vec<(T, Vec<T>)>, residues: Option<&'a Residues>) -> Self {
        Search { fam, rows, residues, leaves: 0, fails: HashMap::new(), found: Vec::new() }
    }

    fn run(&mut self, bounds: Vec<(T, T)>) -> Result<()> {
        let Some(bounds) = propagate_bounds(&self.rows, bounds) else {
            return Ok(());
        };
        if let Some(res) = self.residues {
            let lead = bounds.iter().take_while(|(lo, hi)| lo == hi).count();
            let fixed: Vec<BigInt> = bounds[..lead].iter().map(|b| b.0.clone().into()).collect();
            if !res.allows(&fixed) {
                return Ok(());
            }
        }
        let Some(k) = bounds.iter().position(|(lo, hi)| lo != hi) else {
            let t: Vec<BigInt> = bounds.into_iter().map(|b| b.0.into()).collect();
            return self.leaf(&t);
        };
        let mut v = bounds[k].0.clone();
        while v <= bounds[k].1 {
            let mut b = bounds.clone();
            b[k] = (v.clone(), v.clone());
            self.run(b)?;
            v = v + T::one();
        }
        Ok(())
    }

    fn leaf(&mut self, t: &[BigInt]) -> Result<()> {
        self.leaves += 1;
        if self.leaves > MAX_POINTS {
            return Err(Error::Budget(format!("more than {MAX_POINTS} parameter points with nonnegative coefficients")));
        }
        if self.fam.quick_reject(t) {
            self.fails.entry(ObstructionKind::NotPowerOfTwo).or_insert((0, "p(1,1,0,0) is not a power of 2".into())).0 += 1;
            return Ok(());
        }
        let p = self.fam.poly(t);
        match verdict(&p, self.fam.n) {
            Verdict::Ok(m) => self.found.push((p, m)),
            Verdict::Fail(kind, why) => self.fails.entry(kind).or_insert((0, why)).0 += 1,
        }
        Ok(())
    }

    fn finish(self) -> (u64, HashMap<ObstructionKind, (u64, String)>, Vec<(SparsePoly, u32)>) {
        (self.leaves, self.fails, self.found)
    }
}

/// Runs the branch and bound on machine integers when every intermediate
/// value provably fits, on big integers otherwise.
fn run_search(
    fam: &Family,
    rows: &[(BigInt, Vec<BigInt>)],
    residues: Option<&Residues>,
    bounds: &[(BigInt, BigInt)],
) -> Result<(u64, HashMap<ObstructionKind, (u64, String)>, Vec<(SparsePoly, u32)>)> {
    let small = |x: &BigInt| x.bits() <= 80;
    let fits = fam.n <= 24 && rows.len() < 1 << 20 && fam.dirs.len() <= 8
        && rows.iter().all(|(c, a)| small(c) && a.iter().all(small))
        && bounds.iter().all(|(lo, hi)| small(lo) && small(hi));
    if fits {
        let conv = |x: &BigInt| x.to_i128().expect("fits");
        let rows: Vec<(i128, Vec<i128>)> = rows.iter().map(|(c, a)| (conv(c), a.iter().map(conv).collect())).collect();
        let mut s = Search::new(fam, rows, residues);
        s.run(bounds.iter().map(|(lo, hi)| (conv(lo), conv(hi))).collect())?;
        Ok(s.finish())
    } else {
        let mut s = Search::new(fam, rows.to_vec(), residues);
        s.run(bounds.to_vec())?;
        Ok(s.finish())
    }
}

/// One column of the distance table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableRow {
    pub n: u32,
    /// Largest `d` for which [`extremal_search`] is feasible.
    pub d: u32,
    pub witness: String,
    pub witness_distance: u32,
    /// The witness enumerator is invariant and meets a) to e) at its own
    /// distance, which makes the search feasible there.
    pub witness_meets_conditions: bool,
    pub witness_doubly_even_self_dual: bool,
}

impl TableRow {
    pub fn consistent(&self) -> bool {
        self.d == self.witness_distance && self.witness_meets_conditions && self.witness_doubly_even_self_dual
    }
}

/// The length 16 code obtained from `Q_20` by shortening on four coordinates
/// and adjoining the all-ones word and a 0/1 word of weight 8.
pub fn witness16(exec: Exec) -> Result<LinearCode> {
    shorten_adjoin_search(&named::q(20)?, 4, 6, exec)?
        .map(|w| w.code)
        .ok_or_else(|| Error::Internal("no length 16 witness from Q20".into()))
}

pub fn witness_code(n: u32, exec: Exec) -> Result<(String, LinearCode)> {
    Ok(match n {
        16 => ("Q20 shortened at 4 positions".into(), witness16(exec)?),
        4 | 8 | 12 | 20 | 24 => (format!("Q{n}"), named::q(n as u64)?),
        _ => return Err(Error::Invalid(format!("no witness code of length {n}"))),
    })
}

/// True iff `p` is a `G_2` invariant meeting a) to e) at distance `d`.
pub fn meets_conditions(p: &SparsePoly, d: u32) -> Result<bool> {
    let Some(n) = p.homogeneous_degree() else { return Ok(false) };
    let lead = Monomial::from_exps(&[n, 0, 0, 0])?;
    let spec = hamming_specialize(p);
    let e_holds = p.coeff(lead).is_one() && (1..d as usize).all(|w| spec.get(w).is_none_or(|c| c.is_zero()));
    let cw = CliffordWeil::new(FieldCtx::new(2)?)?;
    Ok(e_holds && check_conditions(p, n).is_empty() && is_invariant(p, &cw.generators(false))?)
}

pub fn table_row(n: u32, exec: Exec, budget: u64) -> Result<TableRow> {
    let (name, code) = witness_code(n, exec)?;
    let wd = code.min_distance(exec, budget)?.unwrap_or(0) as u32;
    let meets = meets_conditions(&cwe(&code, exec, budget)?, wd)?;
    let inv = invariant_space(2, n, false)?;
    let mut d = if meets { wd } else { 0 };
    while d < n && extremal_search_in(&inv, d + 1)?.feasible {
        d += 1;
    }
    Ok(TableRow {
        n,
        d,
        witness: name,
        witness_distance: wd,
        witness_meets_conditions: meets,
        witness_doubly_even_self_dual: code.is_self_dual() && code.is_doubly_even().holds,
    })
}

pub const TABLE_LENGTHS: [u32; 6] = [4, 8, 12, 16, 20, 24];

pub fn reproduce_table(exec: Exec, budget: u64) -> Result<Vec<TableRow>> {
    TABLE_LENGTHS.iter().map(|&n| table_row(n, exec, budget)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cwg::{molien, rational_series};
    use crate::DEFAULT_CODEWORD_BUDGET as BUDGET;

    fn q(len: u64) -> SparsePoly {
        cwe(&named::q(len).unwrap(), Exec::Sequential, BUDGET).unwrap()
    }

    #[test]
    fn degree_four_is_spanned_by_q4() {
        let inv = invariant_space(2, 4, false).unwrap();
        assert_eq!(inv.dim(), 1);
        assert_eq!(inv.basis[0], q(4));
        assert!(invariant_space(2, 6, false).unwrap().basis.is_empty());
    }

    #[test]
    fn dimensions_match_the_series() {
        let expect = rational_series(&[(0, 1), (40, 1)], &[4, 8, 12, 20], 24);
        for n in [0u32, 4, 8, 12, 16, 20, 24] {
            let inv = invariant_space(2, n, false).unwrap();
            assert_eq!(BigInt::from(inv.dim()), expect[n as usize], "degree {n}");
            for b in &inv.basis {
                assert!(b.homogeneous_degree() == Some(n) || n == 0);
            }
        }
    }

    #[test]
    fn galois_dimensions_match_molien() {
        let cw = CliffordWeil::new(named::f4()).unwrap();
        let g = cw.group(true, 10_000, Exec::default()).unwrap();
        let series = molien(&g, 16, Exec::default()).unwrap();
        for n in [8u32, 12, 16] {
            assert_eq!(BigInt::from(invariant_space(2, n, true).unwrap().dim()), series.coeffs[n as usize]);
        }
    }

    #[test]
    fn binary_invariants() {
        let inv = invariant_space(1, 8, false).unwrap();
        assert_eq!(inv.dim(), 1);
        let h8 = cwe(&named::hamming8(), Exec::Sequential, BUDGET).unwrap();
        assert_eq!(inv.basis[0], h8);
    }

    #[test]
    fn jacobian_examples() {
        let vars: Vec<SparsePoly> = (0..4).map(|i| SparsePoly::var(4, i)).collect();
        let r = check_independence(&vars).unwrap();
        assert_eq!((r.rank, r.independent, r.points_tried), (4, true, 1));
        let p = q(4);
        let r = check_independence(&[p.clone(), p.pow(2).unwrap()]).unwrap();
        assert_eq!(r.rank, 1);
        assert!(!r.independent);
    }

    #[test]
    fn low_degree_spans() {
        let gens = qr_enumerators(Exec::default(), BUDGET).unwrap();
        let r8 = product_span_check_with(&gens, 8).unwrap();
        assert!(r8.spans);
        assert_eq!(r8.invariant_dim, 2);
        let r12 = product_span_check_with(&gens, 12).unwrap();
        assert!(r12.spans);
        assert_eq!(r12.invariant_dim, 3);
    }

    #[test]
    fn uniqueness_at_8_and_12() {
        for (n, d) in [(8u32, 4u32), (12, 6)] {
            let r = extremal_search(n, d).unwrap();
            assert_eq!(r.affine_dim, Some(0));
            assert!(r.feasible);
            assert_eq!(r.candidates, vec![q(n as u64)]);
        }
    }

    #[test]
    fn sixteen_seven_has_negative_coefficients() {
        let r = extremal_search(16, 7).unwrap();
        assert!(!r.feasible);
        assert_eq!(r.affine_dim, Some(0));
        assert!(r.has(ObstructionKind::NegativeCoeff), "{r:?}");
    }

    #[test]
    fn sixteen_and_twenty_candidates() {
        let r = extremal_search(16, 6).unwrap();
        let mut dims = r.rational_dims.clone();
        dims.sort();
        assert_eq!(dims, vec![2, 4]);
        let r = extremal_search(20, 8).unwrap();
        let mut dims = r.rational_dims.clone();
        dims.sort();
        assert_eq!(dims, vec![1, 3, 5, 7]);
        for p in &r.candidates {
            assert!(meets_conditions(p, 8).unwrap());
        }
        assert!(!extremal_search(20, 9).unwrap().feasible);
    }

    #[test]
    fn q24_lies_in_the_distance_8_family() {
        let inv = invariant_space(2, 24, false).unwrap();
        let Affine::Family(fam) = affine_family(&inv, 8).unwrap() else { panic!("expected a family") };
        let p = q(24);
        let t: Vec<BigInt> = fam.pivots.iter().map(|m| p.coeff(*m).to_integer()).collect();
        assert_eq!(fam.poly(&t), p);
        assert!(meets_conditions(&p, 8).unwrap());
    }

    #[test]
    fn length_24_distance_9_candidates_are_genuine() {
        let r = extremal_search(24, 9).unwrap();
        assert_eq!(r.affine_dim, Some(2));
        for p in &r.candidates {
            assert!(meets_conditions(p, 9).unwrap());
        }
        assert!(!extremal_search(24, 10).unwrap().feasible);
    }

    #[test]
    fn reynolds_images_lie_in_the_basis_span() {
        let cw = CliffordWeil::new(named::f4()).unwrap();
        let g = cw.group(false, 10_000, Exec::default()).unwrap();
        let inv = invariant_space(2, 8, false).unwrap();
        let cols = monomials_of_degree(4, 8);
        let row = |p: &SparsePoly| cols.iter().map(|m| p.coeff(*m)).collect::<Vec<_>>();
        let mut rows: Vec<Vec<BigRational>> = inv.basis.iter().map(row).collect();
        for exps in [[8, 0, 0, 0], [4, 4, 0, 0], [2, 2, 2, 2]] {
            let m = SparsePoly::from_terms(4, [(Monomial::from_exps(&exps).unwrap(), BigRational::one())]);
            let r = reynolds(&m, &g, Exec::default()).unwrap();
            assert!(is_invariant(&r, &cw.generators(false)).unwrap());
            rows.push(row(&r));
        }
        assert_eq!(rref(&mut rows).len(), inv.dim());
    }

    #[test]
    fn power_of_two_helper() {
        assert_eq!(power_of_two(&BigInt::from(8), 3), Some(3));
        assert_eq!(power_of_two(&BigInt::from(8), 2), None);
        assert_eq!(power_of_two(&BigInt::from(6), 9), None);
        assert_eq!(power_of_two(&BigInt::from(0), 9), None);
    }
}

