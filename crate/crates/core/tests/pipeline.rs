//! End-to-end checks through the public API: codes, enumerators, group
//! actions and JSON, with the MacWilliams identity as an independent oracle.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use cliffweil::codes::{extended_qr, LinearCode};
use cliffweil::cwg::{is_invariant, CliffordWeil};
use cliffweil::gf::{FieldCtx, FieldElement};
use cliffweil::json::CodeJson;
use cliffweil::par::Exec;
use cliffweil::poly::{act_endomorphism, cwe, SparsePoly};
use cliffweil::DEFAULT_CODEWORD_BUDGET as BUDGET;

fn f4_code(n: usize, rows: &[Vec<u64>]) -> Option<LinearCode> {
    let ctx = FieldCtx::new(2).unwrap();
    let rows = rows.iter().map(|r| r.iter().map(|&x| FieldElement(x)).collect()).collect();
    LinearCode::new(ctx, n, rows).ok()
}

/// `2^n / |C| · (h·cwe(C))` with the unitary MacWilliams matrix `h`.
fn macwilliams(c: &LinearCode) -> SparsePoly {
    let cw = CliffordWeil::new(c.ctx()).unwrap();
    let e = cwe(c, Exec::Sequential, BUDGET).unwrap();
    let image = act_endomorphism(&e, &cw.h()).unwrap().to_rational().expect("rational image");
    let f = c.ctx().degree() as usize;
    let scale = BigRational::new(BigInt::from(2).pow((c.len() * f / 2) as u32), BigInt::from(2).pow((c.dimension() * f) as u32));
    image.scale(&scale)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn macwilliams_identity(rows in proptest::collection::vec(proptest::collection::vec(0u64..4, 6), 1..4)) {
        let Some(c) = f4_code(6, &rows) else { return Ok(()) };
        let dual = cwe(&c.dual(), Exec::Sequential, BUDGET).unwrap();
        prop_assert_eq!(macwilliams(&c), dual);
    }

    #[test]
    fn enumerator_counts_codewords(rows in proptest::collection::vec(proptest::collection::vec(0u64..4, 5), 1..4)) {
        let Some(c) = f4_code(5, &rows) else { return Ok(()) };
        let e = cwe(&c, Exec::Parallel, BUDGET).unwrap();
        let ones = vec![BigRational::from_integer(1.into()); 4];
        prop_assert_eq!(e.evaluate(&ones), BigRational::from_integer(BigInt::from(4).pow(c.dimension() as u32)));
        prop_assert_eq!(cwe(&c, Exec::Sequential, BUDGET).unwrap(), e);
    }
}

#[test]
fn self_dual_codes_are_fixed_by_macwilliams() {
    for (f, p) in [(2u32, 3u64), (2, 7), (1, 7), (2, 11)] {
        let c = extended_qr(&FieldCtx::new(f).unwrap(), p).unwrap();
        assert_eq!(macwilliams(&c), cwe(&c, Exec::Parallel, BUDGET).unwrap(), "F{} p={p}", 1 << f);
    }
}

#[test]
fn json_round_trip_preserves_the_enumerator() {
    let c = extended_qr(&FieldCtx::new(2).unwrap(), 11).unwrap();
    let text = serde_json::to_string(&CodeJson::from_code(&c)).unwrap();
    let back: CodeJson = serde_json::from_str(&text).unwrap();
    let c2 = back.to_code().unwrap();
    let e = cwe(&c2, Exec::Parallel, BUDGET).unwrap();
    assert_eq!(e, cwe(&c, Exec::Parallel, BUDGET).unwrap());
    let cw = CliffordWeil::new(c.ctx()).unwrap();
    assert!(is_invariant(&e, &cw.generators(false)).unwrap());
}
