//! The synthesized witness: change of basis, lattice, selector, diagonal
//! and unipotent generator parts, base point, final generators, and the
//! verification report. Serializes to a stable JSON schema.

use super::templates::UnipotentTemplate;
use super::DetError;
use crate::arith::{Coeff, CycloNum};
use crate::lattice::Lattice;
use crate::matgroup::{Mat, SelectorMatrix};
use num::bigint::BigInt;
use num::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq, Default)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckResult { name: name.to_string(), passed, detail: detail.into() });
    }

    pub fn finalize(mut self) -> Self {
        self.passed = self.checks.iter().all(|c| c.passed);
        self
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// A certificate for a YES verdict. All matrices live in Q(zeta_q) for the
/// recorded conductor (q = 1 means everything is rational). The structural
/// contract: M_i = P^{-1} U_i D_i P, and in orbit modes v = P^{-1} T 1.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub kind: String,
    pub conductor: u32,
    pub p: Mat<CycloNum>,
    pub p_inv: Mat<CycloNum>,
    pub lattice: Lattice,
    pub selector: Option<SelectorMatrix>,
    pub d_list: Vec<Mat<CycloNum>>,
    pub u_list: Vec<Mat<CycloNum>>,
    pub v: Vec<CycloNum>,
    pub m_list: Vec<Mat<CycloNum>>,
    pub templates: Vec<(UnipotentTemplate, Vec<CycloNum>)>,
    pub verify: Option<VerifyReport>,
}

fn mat_to_json(m: &Mat<CycloNum>) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| {
                Value::Array(
                    (0..m.ncols())
                        .map(|j| Value::String(m[(i, j)].to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn mat_from_json(v: &Value) -> Result<Mat<CycloNum>, DetError> {
    let rows = v
        .as_array()
        .ok_or_else(|| DetError::Input("matrix must be an array".into()))?;
    let parsed: Vec<Vec<CycloNum>> = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| DetError::Input("matrix row must be an array".into()))?
                .iter()
                .map(|e| {
                    let s = e
                        .as_str()
                        .map(str::to_string)
                        .or_else(|| e.as_i64().map(|n| n.to_string()))
                        .ok_or_else(|| DetError::Input("matrix entry must be a string".into()))?;
                    CycloNum::parse(&s).map_err(|e| DetError::Input(e.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    if parsed.is_empty() {
        return Ok(Mat::zeros(0, 0));
    }
    Ok(Mat::from_rows(parsed))
}

impl Certificate {
    pub fn to_json(&self) -> Value {
        let lattice_rows: Vec<Value> = self
            .lattice
            .basis_rows()
            .iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|e| json!(e.to_i64().expect("lattice entry fits in i64")))
                        .collect(),
                )
            })
            .collect();
        let t_mat: Value = match &self.selector {
            None => Value::Array(vec![]),
            Some(sel) => mat_to_json(&sel.to_mat()),
        };
        let templates: Vec<Value> = self
            .templates
            .iter()
            .map(|(tpl, vals)| {
                json!({
                    "pattern": serde_json::to_value(&tpl.pattern).unwrap(),
                    "params": tpl.params.iter().zip(vals).map(|(name, val)| {
                        json!({"name": name, "value": val.to_string()})
                    }).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "kind": self.kind,
            "q": self.conductor,
            "P": mat_to_json(&self.p),
            "Pinv": mat_to_json(&self.p_inv),
            "lattice": {"ambient": self.lattice.ambient(), "rows": lattice_rows},
            "T": t_mat,
            "D": self.d_list.iter().map(mat_to_json).collect::<Vec<_>>(),
            "U": self.u_list.iter().map(mat_to_json).collect::<Vec<_>>(),
            "v": self.v.iter().map(|e| Value::String(e.to_string())).collect::<Vec<_>>(),
            "M": self.m_list.iter().map(mat_to_json).collect::<Vec<_>>(),
            "templates": templates,
            "verify": self.verify.as_ref().map(|r| serde_json::to_value(r).unwrap()).unwrap_or(Value::Null),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, DetError> {
        let obj = v
            .as_object()
            .ok_or_else(|| DetError::Input("certificate must be a JSON object".into()))?;
        let kind = obj
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| DetError::Input("missing `kind`".into()))?
            .to_string();
        let conductor = obj.get("q").and_then(Value::as_u64).unwrap_or(1) as u32;
        let p = mat_from_json(obj.get("P").ok_or_else(|| DetError::Input("missing `P`".into()))?)?;
        let p_inv =
            mat_from_json(obj.get("Pinv").ok_or_else(|| DetError::Input("missing `Pinv`".into()))?)?;
        let lattice = {
            let lat = obj
                .get("lattice")
                .ok_or_else(|| DetError::Input("missing `lattice`".into()))?;
            let ambient = lat
                .get("ambient")
                .and_then(Value::as_u64)
                .ok_or_else(|| DetError::Input("lattice needs `ambient`".into()))?
                as usize;
            let rows: Vec<Vec<BigInt>> = lat
                .get("rows")
                .and_then(Value::as_array)
                .ok_or_else(|| DetError::Input("lattice needs `rows`".into()))?
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| DetError::Input("lattice row must be an array".into()))?
                        .iter()
                        .map(|e| {
                            e.as_i64()
                                .map(BigInt::from)
                                .ok_or_else(|| DetError::Input("lattice entry must be an integer".into()))
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Lattice::from_rows(ambient, rows)
        };
        let selector = match obj.get("T") {
            None => None,
            Some(Value::Array(rows)) if rows.is_empty() => None,
            Some(t) => {
                let tm = mat_from_json(t)?;
                let mut cols = vec![];
                for j in 0..tm.ncols() {
                    let mut hit = None;
                    for i in 0..tm.nrows() {
                        if tm[(i, j)].is_one() {
                            hit = Some(i);
                        } else if !tm[(i, j)].is_zero() {
                            return Err(DetError::Input("selector entries must be 0/1".into()));
                        }
                    }
                    cols.push(hit.ok_or_else(|| {
                        DetError::Input("selector column without a 1".into())
                    })?);
                }
                Some(SelectorMatrix::new(tm.nrows(), cols))
            }
        };
        let mats_from = |key: &str| -> Result<Vec<Mat<CycloNum>>, DetError> {
            obj.get(key)
                .and_then(Value::as_array)
                .map(|arr| arr.iter().map(mat_from_json).collect())
                .unwrap_or_else(|| Ok(vec![]))
        };
        let d_list = mats_from("D")?;
        let u_list = mats_from("U")?;
        let m_list = mats_from("M")?;
        let v = obj
            .get("v")
            .and_then(Value::as_array)
            .map(|arr| {
                arr.iter()
                    .map(|e| {
                        e.as_str()
                            .ok_or_else(|| DetError::Input("vector entry must be a string".into()))
                            .and_then(|s| {
                                CycloNum::parse(s).map_err(|e| DetError::Input(e.to_string()))
                            })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .unwrap_or_else(|| Ok(vec![]))?;
        let templates = obj
            .get("templates")
            .and_then(Value::as_array)
            .map(|arr| {
                arr.iter()
                    .map(|t| {
                        let pattern = serde_json::from_value(
                            t.get("pattern").cloned().unwrap_or(Value::Null),
                        )
                        .map_err(|e| DetError::Input(format!("bad template pattern: {e}")))?;
                        let mut names = vec![];
                        let mut values = vec![];
                        for p in t.get("params").and_then(Value::as_array).unwrap_or(&vec![]) {
                            let name = p
                                .get("name")
                                .and_then(Value::as_str)
                                .ok_or_else(|| DetError::Input("param needs name".into()))?;
                            let val = p
                                .get("value")
                                .and_then(Value::as_str)
                                .ok_or_else(|| DetError::Input("param needs value".into()))?;
                            names.push(name.to_string());
                            values.push(
                                CycloNum::parse(val).map_err(|e| DetError::Input(e.to_string()))?,
                            );
                        }
                        let tpl = UnipotentTemplate { pattern, params: names };
                        tpl.validate()?;
                        Ok((tpl, values))
                    })
                    .collect::<Result<Vec<_>, DetError>>()
            })
            .transpose()?
            .unwrap_or_default();
        let verify = match obj.get("verify") {
            None | Some(Value::Null) => None,
            Some(r) => Some(
                serde_json::from_value(r.clone())
                    .map_err(|e| DetError::Input(format!("bad verify report: {e}")))?,
            ),
        };
        Ok(Certificate {
            kind,
            conductor,
            p,
            p_inv,
            lattice,
            selector,
            d_list,
            u_list,
            v,
            m_list,
            templates,
            verify,
        })
    }
}
