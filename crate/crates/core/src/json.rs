//! Wire formats: the JSON schemas for towers, algebras, subspaces and
//! analysis jobs, with validation that names the offending field.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fieldtower::{EElement, FieldTower};
use crate::maxclass::{CentraliserLine, MaxClassAlgebra};
use crate::report::AnalysisJob;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TowerWire {
    pub p: u64,
    #[serde(default)]
    pub minpoly: Vec<u64>,
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraWire {
    pub tower: TowerWire,
    #[serde(rename = "N")]
    pub n: usize,
    pub lines: Vec<(Vec<u64>, Vec<u64>)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JobWire {
    pub algebra: AlgebraWire,
    #[serde(rename = "L1")]
    pub l1: Vec<Vec<u64>>,
    #[serde(rename = "N")]
    pub n: usize,
    pub r_max: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub compare_free_metabelian: bool,
}

fn malformed(field: &str, message: impl ToString) -> Error {
    Error::MalformedInput {
        field: field.to_string(),
        message: message.to_string(),
    }
}

pub fn tower_from_wire(wire: &TowerWire) -> Result<FieldTower> {
    match wire.mode.as_str() {
        "finite" => {
            FieldTower::finite(wire.p, &wire.minpoly).map_err(|e| malformed("tower.minpoly", e))
        }
        "transcendental" => {
            let cap = wire
                .cap
                .ok_or_else(|| malformed("tower.cap", "missing cap"))?;
            FieldTower::transcendental(wire.p, cap).map_err(|e| malformed("tower.cap", e))
        }
        other => Err(malformed("tower.mode", format!("unknown mode `{other}`"))),
    }
}

pub fn tower_to_wire(tower: &FieldTower) -> TowerWire {
    TowerWire {
        p: tower.p(),
        minpoly: tower.minpoly().map(|m| m.to_vec()).unwrap_or_default(),
        mode: if tower.is_finite_mode() {
            "finite"
        } else {
            "transcendental"
        }
        .to_string(),
        cap: tower.cap(),
    }
}

fn element_from_wire(tower: &FieldTower, coeffs: &[u64], field: &str) -> Result<EElement> {
    if coeffs.len() > tower.edim() {
        return Err(malformed(
            field,
            format!("coefficient list longer than {}", tower.edim()),
        ));
    }
    tower.element(coeffs).map_err(|e| malformed(field, e))
}

pub fn algebra_from_wire(wire: &AlgebraWire) -> Result<MaxClassAlgebra> {
    let tower = tower_from_wire(&wire.tower)?;
    let mut lines = Vec::with_capacity(wire.lines.len());
    for (idx, (a, b)) in wire.lines.iter().enumerate() {
        let field = format!("lines[{idx}]");
        let a = element_from_wire(&tower, a, &field)?;
        let b = element_from_wire(&tower, b, &field)?;
        lines.push(CentraliserLine::new(&tower, &a, &b).map_err(|e| malformed(&field, e))?);
    }
    MaxClassAlgebra::from_centralisers(&tower, &lines, wire.n).map_err(|e| malformed("lines", e))
}

pub fn algebra_to_wire(m: &MaxClassAlgebra) -> AlgebraWire {
    AlgebraWire {
        tower: tower_to_wire(m.tower()),
        n: m.truncation(),
        lines: m
            .lines()
            .iter()
            .map(|l| (l.a().coeffs().to_vec(), l.b().coeffs().to_vec()))
            .collect(),
    }
}

pub fn job_from_wire(wire: &JobWire) -> Result<AnalysisJob> {
    let algebra = algebra_from_wire(&wire.algebra)?;
    if wire.n > algebra.truncation() || wire.n < 3 {
        return Err(malformed(
            "N",
            format!("analysis depth must lie in [3, {}]", algebra.truncation()),
        ));
    }
    let width = 2 * algebra.tower().edim();
    for (idx, row) in wire.l1.iter().enumerate() {
        if row.len() != width {
            return Err(malformed(
                &format!("L1[{idx}]"),
                format!("row must have {width} entries"),
            ));
        }
    }
    Ok(AnalysisJob {
        algebra,
        l1_rows: wire.l1.clone(),
        n: wire.n,
        r_max: wire.r_max,
        seed: wire.seed,
        compare_free_metabelian: wire.compare_free_metabelian,
    })
}

pub fn parse_algebra(text: &str) -> Result<MaxClassAlgebra> {
    let wire: AlgebraWire = serde_json::from_str(text).map_err(|e| malformed("algebra", e))?;
    algebra_from_wire(&wire)
}

pub fn parse_job(text: &str) -> Result<AnalysisJob> {
    let wire: JobWire = serde_json::from_str(text).map_err(|e| malformed("job", e))?;
    job_from_wire(&wire)
}
