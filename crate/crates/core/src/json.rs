//! JSON views of the library types. Every top-level document carries
//! `"schema": "cliffweil/1"`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::codes::LinearCode;
use crate::cwg::MolienSeries;
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};
use crate::invariants::{ExtremalReport, InvariantBasis};
use crate::poly::PolyJson;

pub const SCHEMA: &str = "cliffweil/1";

/// `{schema, kind, result}`.
pub fn envelope(kind: &str, result: impl Serialize) -> Value {
    json!({ "schema": SCHEMA, "kind": kind, "result": result })
}

/// Strips an envelope if present.
pub fn payload(v: &Value) -> &Value {
    match v.get("schema") {
        Some(_) => v.get("result").unwrap_or(v),
        None => v,
    }
}

/// A code as `{field, n, k, gens}`, rows given by element integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub field: String,
    pub n: usize,
    pub k: usize,
    pub gens: Vec<Vec<u64>>,
}

impl CodeJson {
    pub fn from_code(c: &LinearCode) -> Self {
        CodeJson {
            field: c.ctx().name(),
            n: c.len(),
            k: c.dimension(),
            gens: c.generators().iter().map(|r| r.iter().map(|x| x.value()).collect()).collect(),
        }
    }

    pub fn to_code(&self) -> Result<LinearCode> {
        let ctx = FieldCtx::parse(&self.field)?;
        if self.gens.iter().any(|r| r.len() != self.n) {
            return Err(Error::Dimension(format!("generator rows must have length {}", self.n)));
        }
        let rows = self.gens.iter().map(|r| r.iter().map(|&x| FieldElement(x)).collect()).collect();
        let code = LinearCode::new(ctx, self.n, rows)?;
        if code.dimension() != self.k {
            return Err(Error::Invalid(format!("declared k = {} but the generators have rank {}", self.k, code.dimension())));
        }
        Ok(code)
    }
}

pub fn molien_json(m: &MolienSeries) -> Value {
    json!({ "order": m.order, "coeffs": m.coeff_strings() })
}

pub fn basis_json(b: &InvariantBasis, field: &str) -> Value {
    let polys: Vec<PolyJson> = b.basis.iter().map(|p| p.to_json(field)).collect();
    json!({ "degree": b.degree, "with_galois": b.with_galois, "dim": b.dim(), "basis": polys })
}

pub fn extremal_json(r: &ExtremalReport) -> Value {
    let cands: Vec<PolyJson> = r.candidates.iter().map(|p| p.to_json("F4")).collect();
    json!({
        "n": r.n,
        "d": r.d,
        "feasible": r.feasible,
        "affine_dim": r.affine_dim,
        "candidates": cands,
        "rational_dims": r.rational_dims,
        "obstructions": r.obstructions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::named;

    #[test]
    fn code_round_trip() {
        let q = named::q(12).unwrap();
        let j = CodeJson::from_code(&q);
        assert_eq!((j.n, j.k, j.field.as_str()), (12, 6, "F4"));
        let text = serde_json::to_string(&envelope("code", &j)).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        let back: CodeJson = serde_json::from_value(payload(&v).clone()).unwrap();
        assert_eq!(back.to_code().unwrap(), q);
        let mut bad = j.clone();
        bad.k = 5;
        assert!(bad.to_code().is_err());
    }
}
