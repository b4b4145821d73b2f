//! Clifford-Weil groups `G_f = ⟨h, m_r, d_r⟩` as explicit matrices over
//! Q(ζ₈), their closure, structural checks and Molien series.
//!
//! Matrices act on variables by rows: the row indexed by `a` is the image of
//! `x_a`. Composing substitutions `A` then `B` gives the matrix `A·B`.

use std::collections::{BTreeMap, HashMap};

use indexmap::IndexSet;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cyc::{Cyc8, CycMatrix, CycQ};
use crate::error::{Error, Result};
use crate::gf::{find_sc_basis, FieldCtx, FieldElement, ScBasis};
use crate::par::Exec;
use crate::poly::{act_endomorphism, act_linear, act_monomial, SparsePoly};

/// `2^(-f/2)` in Q(ζ₈).
pub fn inv_sqrt2_pow(f: u32) -> CycQ {
    let half = |k: u32| BigRational::new(BigInt::one(), BigInt::one() << k);
    if f % 2 == 0 {
        CycQ::from_rational(half(f / 2))
    } else {
        CycQ::sqrt2().scale(&half(f.div_ceil(2)))
    }
}

fn permutation(dim: usize, image: impl Fn(usize) -> usize) -> CycMatrix {
    let mut e = vec![CycQ::zero(); dim * dim];
    for a in 0..dim {
        e[a * dim + image(a)] = CycQ::one();
    }
    CycMatrix::from_entries(dim, &e).expect("permutation matrix")
}

fn diagonal(diag: &[CycQ]) -> CycMatrix {
    let n = diag.len();
    let mut e = vec![CycQ::zero(); n * n];
    for (a, d) in diag.iter().enumerate() {
        e[a * n + a] = d.clone();
    }
    CycMatrix::from_entries(n, &e).expect("diagonal matrix")
}

/// `m_r : x_a ↦ x_{ar}`.
pub fn gen_m(ctx: &FieldCtx, r: FieldElement) -> Result<CycMatrix> {
    if r.is_zero() || !ctx.contains(r) {
        return Err(Error::Invalid(format!("m_r needs a nonzero element of {ctx}, got {r}")));
    }
    Ok(permutation(ctx.order() as usize, |a| ctx.mul(FieldElement(a as u64), r).index()))
}

/// `d_r : x_a ↦ i^φ(ar) x_a`.
pub fn gen_d(r: FieldElement, basis: &ScBasis) -> CycMatrix {
    let ctx = basis.ctx();
    let diag: Vec<CycQ> = ctx.elements().map(|a| CycQ::i_pow(basis.phi(ctx.mul(a, r)) as i64)).collect();
    diagonal(&diag)
}

/// `h : x_a ↦ 2^(-f/2) Σ_b (-1)^τ(ab) x_b`.
pub fn gen_h(ctx: &FieldCtx) -> CycMatrix {
    let s = inv_sqrt2_pow(ctx.degree());
    let neg = -s.clone();
    let e: Vec<CycQ> = ctx
        .elements()
        .flat_map(|a| ctx.elements().map(move |b| ctx.trace(ctx.mul(a, b))))
        .map(|t| if t == 1 { neg.clone() } else { s.clone() })
        .collect();
    CycMatrix::from_entries(ctx.order() as usize, &e).expect("h fits the packed range")
}

/// The Frobenius permutation `x_a ↦ x_{a²}`.
pub fn galois_gen(ctx: &FieldCtx) -> CycMatrix {
    permutation(ctx.order() as usize, |a| ctx.square(FieldElement(a as u64)).index())
}

/// Generators of `G_f` for one field and self-complementary basis.
#[derive(Clone, Debug)]
pub struct CliffordWeil {
    ctx: FieldCtx,
    basis: ScBasis,
}

impl CliffordWeil {
    pub fn new(ctx: FieldCtx) -> Result<Self> {
        let basis = find_sc_basis(&ctx)?;
        Self::with_basis(basis)
    }

    pub fn with_basis(basis: ScBasis) -> Result<Self> {
        if basis.sub_degree() != 1 {
            return Err(Error::Invalid("the basis must be over F2".into()));
        }
        if basis.ctx().degree() > 3 {
            return Err(Error::UnsupportedField(format!("{} (Clifford-Weil matrices are built for f <= 3)", basis.ctx())));
        }
        Ok(CliffordWeil { ctx: basis.ctx(), basis })
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn basis(&self) -> &ScBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.ctx.order() as usize
    }

    pub fn m(&self, r: FieldElement) -> Result<CycMatrix> {
        gen_m(&self.ctx, r)
    }

    pub fn d(&self, r: FieldElement) -> CycMatrix {
        gen_d(r, &self.basis)
    }

    pub fn h(&self) -> CycMatrix {
        gen_h(&self.ctx)
    }

    pub fn galois(&self) -> CycMatrix {
        galois_gen(&self.ctx)
    }

    /// `d_r²`, the diagonal map `x_a ↦ (-1)^τ(ar) x_a`.
    pub fn d_sq(&self, r: FieldElement) -> CycMatrix {
        let d = self.d(r);
        d.mul(&d)
    }

    /// The translation `x_a ↦ x_{a+r}`.
    pub fn translation(&self, r: FieldElement) -> CycMatrix {
        permutation(self.dim(), |a| self.ctx.add(FieldElement(a as u64), r).index())
    }

    /// Every generator `h`, `m_r` (`r ≠ 0`) and `d_r`, plus `γ` if asked.
    pub fn generators(&self, with_galois: bool) -> Vec<CycMatrix> {
        let mut g = vec![self.h()];
        g.extend(self.ctx.nonzero_elements().map(|r| self.m(r).expect("nonzero")));
        g.extend(self.ctx.elements().map(|r| self.d(r)));
        if with_galois {
            g.push(self.galois());
        }
        g
    }

    /// A smaller generating set: `m_g` for the least primitive `g`, `d_1`
    /// and `h` (`d_r` is a conjugate of `d_1` by `m_r`), plus `γ`.
    pub fn closure_generators(&self, with_galois: bool) -> Vec<CycMatrix> {
        let mut g = vec![self.m(self.ctx.primitive_element()).expect("nonzero"), self.d(FieldElement::ONE), self.h()];
        if with_galois {
            g.push(self.galois());
        }
        g.retain(|m| !m.is_identity());
        g
    }

    /// Closes the group and checks that every generator lies in it.
    pub fn group(&self, with_galois: bool, cap: usize, exec: Exec) -> Result<MatrixGroup> {
        let mut g = close_group(&self.closure_generators(with_galois), self.dim(), cap, exec)?;
        for x in self.generators(with_galois) {
            if !g.contains(&x) {
                return Err(Error::Internal("a generator is missing from the closure".into()));
            }
        }
        g.generators = self.generators(with_galois);
        Ok(g)
    }
}

/// Default closure caps by field degree.
pub fn default_cap(f: u32) -> usize {
    if f <= 2 {
        10_000
    } else {
        300_000
    }
}

/// A finite matrix group with its elements in discovery order.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    dim: usize,
    elements: IndexSet<CycMatrix>,
    pub generators: Vec<CycMatrix>,
}

impl MatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn contains(&self, m: &CycMatrix) -> bool {
        self.elements.contains(m)
    }

    pub fn elements(&self) -> impl Iterator<Item = &CycMatrix> {
        self.elements.iter()
    }

    pub fn element(&self, i: usize) -> &CycMatrix {
        &self.elements[i]
    }

    /// The scalar matrices in the group.
    pub fn scalars(&self) -> Vec<CycQ> {
        self.elements.iter().filter_map(|g| g.as_scalar()).collect()
    }
}

/// Breadth-first closure under right multiplication by `gens`. Products of
/// one frontier batch are formed in parallel and inserted in order, so the
/// element order does not depend on the execution mode.
pub fn close_group(gens: &[CycMatrix], dim: usize, cap: usize, exec: Exec) -> Result<MatrixGroup> {
    if let Some(g) = gens.iter().find(|g| g.dim() != dim) {
        return Err(Error::Dimension(format!("{}x{} generator in a group of degree {dim}", g.dim(), g.dim())));
    }
    let gens: Vec<&CycMatrix> = gens.iter().filter(|g| !g.is_identity()).collect();
    let mut elements = IndexSet::new();
    elements.insert(CycMatrix::identity(dim));
    let mut start = 0;
    const BATCH: usize = 4096;
    while start < elements.len() {
        let end = (start + BATCH).min(elements.len());
        let products: Vec<Option<Vec<CycMatrix>>> = exec.map_range(end - start, |i| {
            let x = &elements[start + i];
            gens.iter().map(|g| x.checked_mul(g)).collect()
        });
        for batch in products {
            let batch = batch.ok_or_else(|| Error::Internal("group element entries overflow".into()))?;
            for y in batch {
                elements.insert(y);
            }
            if elements.len() > cap {
                return Err(Error::Budget(format!("group closure exceeded the cap of {cap} elements")));
            }
        }
        start = end;
    }
    Ok(MatrixGroup { dim, elements, generators: gens.into_iter().cloned().collect() })
}

/// One named pass/fail line of a structure report.
#[derive(Clone, Debug, Serialize)]
pub struct StructureCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub field: String,
    pub order: usize,
    pub center_order: usize,
    /// `k` with `(h d_1)³ = ζ₈ᵏ·I`, when it is a scalar root of unity.
    pub hd1_cubed_zeta_power: Option<u32>,
    pub checks: Vec<StructureCheck>,
}

impl StructureReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Runs the structural checks on a closed `G_f`.
pub fn verify_structure(cw: &CliffordWeil, group: &MatrixGroup) -> StructureReport {
    let ctx = cw.ctx();
    let f = ctx.degree();
    let q = ctx.order() as usize;
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(StructureCheck { name: name.to_string(), passed, detail });
    };

    let scalars = group.scalars();
    let expected_center = if f % 2 == 0 { 4 } else { 8 };
    let roots: Vec<Option<u32>> = scalars.iter().map(|s| s.root_of_unity_index()).collect();
    let mut powers: Vec<u32> = roots.iter().flatten().copied().collect();
    powers.sort_unstable();
    push(
        "center",
        scalars.len() == expected_center && roots.iter().all(|r| r.is_some()),
        format!("scalar subgroup of order {} (ζ₈ powers {:?}), expected {expected_center}", scalars.len(), powers),
    );

    let h = cw.h();
    let h_inv = h.inverse().expect("h is invertible");
    let elems: Vec<FieldElement> = ctx.elements().collect();
    let q_of = |r: FieldElement| h_inv.mul(&cw.d_sq(r)).mul(&h);

    let mut ok_d = true;
    let mut ok_q = true;
    for &r in &elems {
        let expect: Vec<CycQ> =
            elems.iter().map(|&a| CycQ::from_int(if ctx.trace(ctx.mul(a, r)) == 1 { -1 } else { 1 })).collect();
        ok_d &= cw.d_sq(r) == diagonal(&expect);
        ok_q &= q_of(r) == cw.translation(r);
    }
    push("d_r^2 = diag((-1)^tau(ar))", ok_d, format!("checked {} elements r", q));
    push("q_r = (d_r^2)^h translates a -> a+r", ok_q, format!("checked {} elements r", q));

    let basis = cw.basis().elems().to_vec();
    let minus_id = CycMatrix::scalar(q, &CycQ::from_int(-1)).expect("scalar");
    let mut ok_comm = true;
    let mut ok_commute = true;
    for (j, &bj) in basis.iter().enumerate() {
        for (k, &bk) in basis.iter().enumerate() {
            let qj = q_of(bj);
            let dk = cw.d_sq(bk);
            let comm = qj.inverse().unwrap().mul(&dk.inverse().unwrap()).mul(&qj).mul(&dk);
            if j == k {
                ok_comm &= comm == minus_id;
            } else {
                ok_commute &= comm.is_identity();
            }
        }
    }
    push("[q_bj, d_bj^2] = -id", ok_comm, format!("basis {:?}", basis.iter().map(|b| b.value()).collect::<Vec<_>>()));
    push("q_bj commutes with d_bk^2 for j != k", ok_commute, String::new());

    let sl2 = q * (q * q - 1);
    let expected_order = scalars.len() * q * q * sl2;
    push(
        "order = |Z| q^2 |SL2(q)|",
        group.order() == expected_order,
        format!("{} = {} * {} * {}", group.order(), scalars.len(), q * q, sl2),
    );

    let mut ok_conj_d = true;
    let mut ok_conj_q = true;
    let mut ok_d1 = true;
    let d1 = cw.d(FieldElement::ONE);
    let d1_inv = d1.inverse().expect("invertible");
    for a in ctx.nonzero_elements() {
        let ma = cw.m(a).expect("nonzero");
        let ma_inv = ma.inverse().expect("invertible");
        let a_inv = ctx.inv(a).expect("nonzero");
        for &r in &elems {
            ok_conj_d &= ma_inv.mul(&cw.d_sq(r)).mul(&ma) == cw.d_sq(ctx.mul(a_inv, r));
            ok_conj_q &= ma_inv.mul(&q_of(r)).mul(&ma) == q_of(ctx.mul(a, r));
        }
    }
    for &r in &elems {
        let lhs = d1_inv.mul(&q_of(r)).mul(&d1);
        let phase = CycMatrix::scalar(q, &CycQ::i_pow(cw.basis().phi(r) as i64)).expect("scalar");
        ok_d1 &= lhs == phase.mul(&cw.d_sq(r)).mul(&q_of(r));
    }
    push("m_a d_r^2 m_a^-1 = d_(a^-1 r)^2", ok_conj_d, String::new());
    push("m_a q_r m_a^-1 = q_(ar)", ok_conj_q, String::new());
    push("d_1 q_r d_1^-1 = i^phi(r) q_r d_r^2", ok_d1, String::new());

    let hd = h.mul(&d1);
    let cube = hd.mul(&hd).mul(&hd);
    let scalar = cube.as_scalar();
    let k = scalar.as_ref().and_then(|s| s.root_of_unity_index());
    let ok_cube = match k {
        Some(k) if f % 2 == 1 => k % 2 == 1,
        Some(k) => k % 2 == 0,
        None => false,
    };
    push(
        "(h d_1)^3 is a scalar root of unity",
        ok_cube,
        match &scalar {
            Some(s) => format!("(h d_1)^3 = ({s}) id"),
            None => "not scalar".into(),
        },
    );

    let gens_ok = cw.generators(false).iter().all(|g| g.is_unitary());
    push("generators are unitary", gens_ok, String::new());

    StructureReport {
        field: ctx.name(),
        order: group.order(),
        center_order: scalars.len(),
        hd1_cubed_zeta_power: k,
        checks,
    }
}

/// Truncated Molien series `(1/|G|) Σ_g 1/det(I - t g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MolienSeries {
    pub order: usize,
    pub coeffs: Vec<BigInt>,
}

impl MolienSeries {
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

type TraceKey = Vec<([i64; 4], i64)>;

fn power_trace_key(g: &CycMatrix) -> TraceKey {
    let mut p = g.clone();
    let mut key = Vec::with_capacity(g.dim());
    for k in 1..=g.dim() {
        key.push(p.trace_key());
        if k < g.dim() {
            p = p.mul(g);
        }
    }
    key
}

/// Power series of `1/det(I - t g)` from the power traces `tr(g^k)`.
fn inverse_charpoly_series(key: &TraceKey, max_degree: usize) -> Vec<CycQ> {
    let dim = key.len();
    let p: Vec<CycQ> = key
        .iter()
        .map(|(c, d)| Cyc8(c.map(|x| BigRational::new(x.into(), (*d).into()))))
        .collect();
    // Newton's identities for the elementary symmetric functions
    let mut e = vec![CycQ::one()];
    for k in 1..=dim {
        let mut s = CycQ::zero();
        for i in 1..=k {
            let t = &e[k - i] * &p[i - 1];
            s = if i % 2 == 1 { s + t } else { s - t };
        }
        e.push(s.scale(&BigRational::new(BigInt::one(), BigInt::from(k))));
    }
    // det(I - t g) = Σ (-1)^k e_k t^k
    let c: Vec<CycQ> = e.iter().enumerate().map(|(k, x)| if k % 2 == 0 { x.clone() } else { -x.clone() }).collect();
    let mut a = vec![CycQ::one()];
    for m in 1..=max_degree {
        let mut s = CycQ::zero();
        for k in 1..=m.min(dim) {
            s = s - &c[k] * &a[m - k];
        }
        a.push(s);
    }
    a
}

/// Molien series through `max_degree`. Elements are grouped by their power
/// traces, which determine the characteristic polynomial.
pub fn molien(group: &MatrixGroup, max_degree: usize, exec: Exec) -> Result<MolienSeries> {
    const CHUNK: usize = 512;
    let n = group.order();
    let chunks = n.div_ceil(CHUNK);
    let classes: HashMap<TraceKey, u64> = exec.fold_chunks(
        chunks,
        HashMap::new,
        |acc, c| {
            for i in c * CHUNK..((c + 1) * CHUNK).min(n) {
                *acc.entry(power_trace_key(group.element(i))).or_default() += 1;
            }
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        },
    );
    let classes: BTreeMap<TraceKey, u64> = classes.into_iter().collect();
    let keys: Vec<(&TraceKey, &u64)> = classes.iter().collect();
    let series = exec.map(&keys, |(k, _)| inverse_charpoly_series(k, max_degree));
    let mut total = vec![CycQ::zero(); max_degree + 1];
    for ((_, &mult), s) in keys.iter().zip(series) {
        let m = BigRational::from_integer(mult.into());
        for (t, x) in total.iter_mut().zip(s) {
            *t += &x.scale(&m);
        }
    }
    let order = BigRational::from_integer(n.into());
    let coeffs = total
        .into_iter()
        .enumerate()
        .map(|(deg, t)| {
            let v = t.as_rational().cloned().ok_or_else(|| {
                Error::Internal(format!("Molien coefficient at degree {deg} is not rational: {t}"))
            })? / &order;
            if !v.is_integer() || v.is_negative() {
                return Err(Error::Internal(format!("Molien coefficient at degree {deg} is {v}")));
            }
            Ok(v.to_integer())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MolienSeries { order: n, coeffs })
}

/// Coefficients of `num / Π (1 - t^d)` through `max_degree`, `num` given as
/// `(degree, coefficient)` pairs.
pub fn rational_series(num: &[(usize, i64)], denominator_degrees: &[usize], max_degree: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::zero(); max_degree + 1];
    for &(d, c) in num {
        if d <= max_degree {
            s[d] += c;
        }
    }
    for &d in denominator_degrees {
        for k in d..=max_degree {
            let prev = s[k - d].clone();
            s[k] += prev;
        }
    }
    s
}

/// Multiplies a series by `Π (1 - t^d)`, truncated.
pub fn times_denominator(series: &[BigInt], denominator_degrees: &[usize]) -> Vec<BigInt> {
    let mut s = series.to_vec();
    for &d in denominator_degrees {
        for k in (d..s.len()).rev() {
            let prev = s[k - d].clone();
            s[k] -= prev;
        }
    }
    s
}

/// True iff `p(gx) = p(x)` for every `g` in `gens`.
pub fn is_invariant(p: &SparsePoly, gens: &[CycMatrix]) -> Result<bool> {
    for g in gens {
        if !is_invariant_under(p, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn is_invariant_under(p: &SparsePoly, g: &CycMatrix) -> Result<bool> {
    if g.dim() != p.nvars() {
        return Err(Error::Dimension(format!("{}x{} matrix acting on {} variables", g.dim(), g.dim(), p.nvars())));
    }
    if let Some((perm, vals)) = g.as_monomial() {
        return Ok(act_monomial(&p.to_cyc(), &perm, &vals) == p.to_cyc());
    }
    if let Some((s, n)) = g.as_rational_multiple() {
        let image = act_linear(p, &n)?;
        let mut by_degree: BTreeMap<u32, (SparsePoly, SparsePoly)> = BTreeMap::new();
        let nv = p.nvars();
        for (m, c) in image.terms() {
            by_degree.entry(m.degree()).or_insert_with(|| (SparsePoly::zero(nv), SparsePoly::zero(nv))).0.add_term(*m, c.clone());
        }
        for (m, c) in p.terms() {
            by_degree.entry(m.degree()).or_insert_with(|| (SparsePoly::zero(nv), SparsePoly::zero(nv))).1.add_term(*m, c.clone());
        }
        for (d, (img, orig)) in by_degree {
            let sd = s.pow(d as u64);
            match sd.as_rational() {
                Some(t) => {
                    if img.scale(t) != orig {
                        return Ok(false);
                    }
                }
                None => {
                    if !img.is_zero() || !orig.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        return Ok(true);
    }
    Ok(act_endomorphism(p, g)? == p.to_cyc())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::named;
    use crate::poly::{cwe, monomial_count};
    use crate::DEFAULT_CODEWORD_BUDGET as BUDGET;

    fn f4() -> FieldCtx {
        named::f4()
    }

    #[test]
    fn generator_examples() {
        let cw = CliffordWeil::new(f4()).unwrap();
        assert!(cw.m(FieldElement::ONE).unwrap().is_identity());
        let d1 = cw.d(FieldElement::ONE);
        let expect = [CycQ::one(), CycQ::from_int(-1), CycQ::i(), CycQ::i()];
        for (a, e) in expect.iter().enumerate() {
            assert_eq!(d1.entry(a, a), *e);
        }
        let h2 = gen_h(&FieldCtx::binary());
        let r = CycQ::sqrt2().scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(h2.entry(0, 0), r);
        assert_eq!(h2.entry(1, 1), -r.clone());
        assert_eq!(r, Cyc8([0, 1, 0, -1].map(|x| BigRational::new(x.into(), 2.into()))));
        assert!(galois_gen(&FieldCtx::binary()).is_identity());
        let g = galois_gen(&f4());
        assert_eq!(g.as_monomial().unwrap().0, vec![0, 1, 3, 2]);
        assert!(g.mul(&g).is_identity());
        for m in cw.generators(true) {
            assert!(m.is_unitary());
        }
        assert!(gen_m(&f4(), FieldElement::ZERO).is_err());
    }

    #[test]
    fn trivial_closure() {
        let g = close_group(&[CycMatrix::identity(4)], 4, 10, Exec::Sequential).unwrap();
        assert_eq!(g.order(), 1);
        let m = molien(&g, 6, Exec::Sequential).unwrap();
        let expect: Vec<BigInt> = (0..=6).map(|n| BigInt::from(monomial_count(n, 4))).collect();
        assert_eq!(m.coeffs, expect);
        let cw = CliffordWeil::new(f4()).unwrap();
        assert!(matches!(close_group(&cw.closure_generators(false), 4, 100, Exec::Sequential), Err(Error::Budget(_))));
    }

    #[test]
    fn g1_order_structure_and_molien() {
        let cw = CliffordWeil::new(FieldCtx::binary()).unwrap();
        let g = cw.group(false, default_cap(1), Exec::Parallel).unwrap();
        assert_eq!(g.order(), 192);
        let report = verify_structure(&cw, &g);
        assert!(report.all_passed(), "{report:#?}");
        assert_eq!(report.center_order, 8);
        assert_eq!(report.hd1_cubed_zeta_power, Some(1));
        let m = molien(&g, 32, Exec::Parallel).unwrap();
        assert_eq!(m.coeffs, rational_series(&[(0, 1)], &[8, 24], 32));
    }

    #[test]
    fn g2_order_structure_and_molien() {
        let cw = CliffordWeil::new(f4()).unwrap();
        let g = cw.group(false, default_cap(2), Exec::Parallel).unwrap();
        assert_eq!(g.order(), 3840);
        let report = verify_structure(&cw, &g);
        assert!(report.all_passed(), "{report:#?}");
        assert_eq!(report.center_order, 4);
        let m = molien(&g, 40, Exec::Parallel).unwrap();
        assert_eq!(m.coeffs[12], BigInt::from(3));
        assert_eq!(m.coeffs, rational_series(&[(0, 1), (40, 1)], &[4, 8, 12, 20], 40));
        let seq = molien(&g, 40, Exec::Sequential).unwrap();
        assert_eq!(seq, m);
        let gg = cw.group(true, default_cap(2), Exec::Parallel).unwrap();
        assert_eq!(gg.order(), 7680);
    }

    #[test]
    fn closure_order_is_mode_independent() {
        let cw = CliffordWeil::new(f4()).unwrap();
        let a = close_group(&cw.closure_generators(false), 4, 10_000, Exec::Sequential).unwrap();
        let b = close_group(&cw.closure_generators(false), 4, 10_000, Exec::Parallel).unwrap();
        assert!(a.elements().eq(b.elements()));
    }

    #[test]
    fn invariance_examples() {
        let cw = CliffordWeil::new(f4()).unwrap();
        let gens = cw.generators(false);
        assert!(is_invariant(&SparsePoly::one(4), &gens).unwrap());
        let q8 = cwe(&named::q(8).unwrap(), Exec::Parallel, BUDGET).unwrap();
        assert!(is_invariant(&q8, &gens).unwrap());
        let x0 = SparsePoly::var(4, 0).pow(4).unwrap();
        assert!(!is_invariant(&x0, &gens).unwrap());
        let cw1 = CliffordWeil::new(FieldCtx::binary()).unwrap();
        let h8 = cwe(&named::hamming8(), Exec::Parallel, BUDGET).unwrap();
        assert!(is_invariant(&h8, &cw1.generators(false)).unwrap());
        let bad = cwe(&named::q(4).unwrap().shorten(&[0]).unwrap(), Exec::Parallel, BUDGET).unwrap();
        assert!(!is_invariant(&bad, &gens).unwrap());
    }

    #[test]
    fn series_helpers() {
        let s = rational_series(&[(0, 1)], &[4], 9);
        assert_eq!(times_denominator(&s, &[4]), rational_series(&[(0, 1)], &[], 9));
        assert_eq!(inv_sqrt2_pow(2), CycQ::from_ratio(1, 2));
        assert_eq!(&inv_sqrt2_pow(3) * &inv_sqrt2_pow(3), CycQ::from_ratio(1, 8));
    }
}
