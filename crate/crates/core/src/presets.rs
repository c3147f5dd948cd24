//! Named analysis presets: each one pins a tower, an algebra, a generating
//! space and a depth, together with the outcome it is expected to reproduce.

use crate::analyzer::free_metabelian_dims;
use crate::error::{Error, Result};
use crate::fieldtower::FieldTower;
use crate::maxclass::MaxClassAlgebra;
use crate::report::{AnalysisJob, AnalysisReport, Check};

pub const PRESET_NAMES: [&str; 6] = [
    "ex4.1",
    "ex4.2-d2",
    "ex4.2-d3",
    "ex4.2-d4",
    "prob4.3",
    "cor3.7-trivial",
];

const FINITE_DEPTH: usize = 24;
const POLYNOMIAL_DEPTH: usize = 13;

/// A flattened basis row of E^2 with a single monomial coefficient:
/// a^power in the x slot (slot 0) or the y slot (slot 1).
fn monomial_row(edim: usize, slot: usize, power: usize) -> Vec<u64> {
    let mut row = vec![0u64; 2 * edim];
    row[slot * edim + power] = 1;
    row
}

pub fn preset_job(name: &str, seed: u64) -> Result<AnalysisJob> {
    let (tower, l1_rows, n, compare_free_metabelian) = match name {
        "ex4.1" => {
            // GF(2) inside GF(4), split generators x, y, a y
            let tower = FieldTower::finite(2, &[1, 1, 1])?;
            let d = tower.edim();
            let rows = vec![
                monomial_row(d, 0, 0),
                monomial_row(d, 1, 0),
                monomial_row(d, 1, 1),
            ];
            (tower, rows, FINITE_DEPTH, false)
        }
        "ex4.2-d2" | "ex4.2-d3" | "ex4.2-d4" => {
            let minpoly: &[u64] = match name {
                "ex4.2-d2" => &[1, 1, 1],
                "ex4.2-d3" => &[1, 1, 0, 1],
                _ => &[1, 1, 0, 0, 1],
            };
            let tower = FieldTower::finite(2, minpoly)?;
            let d = tower.edim();
            let rows = vec![
                monomial_row(d, 0, 0),
                monomial_row(d, 0, 1),
                monomial_row(d, 1, 0),
            ];
            (tower, rows, FINITE_DEPTH, false)
        }
        "prob4.3" => {
            // polynomial mode, generators x and a x + y
            let tower = FieldTower::transcendental(2, 16)?;
            let d = tower.edim();
            let x = monomial_row(d, 0, 0);
            let mut axy = monomial_row(d, 0, 1);
            axy[d] = 1;
            (tower, vec![x, axy], POLYNOMIAL_DEPTH, true)
        }
        "cor3.7-trivial" => {
            // E = F = GF(2), L_1 the whole degree-1 component
            let tower = FieldTower::finite(2, &[0, 1])?;
            let d = tower.edim();
            let rows = vec![monomial_row(d, 0, 0), monomial_row(d, 1, 0)];
            (tower, rows, FINITE_DEPTH, false)
        }
        other => return Err(Error::UnknownPreset(other.to_string())),
    };
    let algebra = MaxClassAlgebra::metabelian(&tower, n)?;
    Ok(AnalysisJob {
        algebra,
        l1_rows,
        n,
        r_max: 12,
        seed,
        compare_free_metabelian,
    })
}

/// The outcome a preset must reproduce, as extra pass/fail checks.
pub fn expected_checks(name: &str, report: &AnalysisReport) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool, detail: String| {
        checks.push(Check {
            name: name.to_string(),
            pass,
            detail,
        });
    };
    let classification = report.classification.as_ref();
    let variant = classification
        .map(|c| c.variant.as_str())
        .unwrap_or("missing");
    let r_emp = classification.and_then(|c| c.r_empirical);

    match name {
        "ex4.1" => {
            push(
                "expected: not just infinite",
                variant == "not_just_infinite",
                format!("got {variant}"),
            );
            let dims_one = classification
                .and_then(|c| c.ideal_dims.as_ref())
                .map(|d| !d.is_empty() && d.iter().all(|&x| x == 1))
                .unwrap_or(false);
            push(
                "expected: witness ideal dims constant one",
                dims_one,
                String::new(),
            );
            let kc = report.k_chain.as_ref();
            push(
                "expected: k-chain 3 -> 2",
                kc.map(|k| k.dim_k_t1 == 3 && k.dims_k.iter().all(|&d| d == 2))
                    .unwrap_or(false),
                String::new(),
            );
        }
        "ex4.2-d2" | "ex4.2-d3" | "ex4.2-d4" => {
            let d = name.chars().last().unwrap().to_digit(10).unwrap() as usize;
            push(
                "expected: constrained with covering degree equal to the extension degree",
                variant == "constrained" && r_emp == Some(d),
                format!("got {variant} with {r_emp:?}, want {d}"),
            );
            let full = classification
                .map(|c| matches!(c.policy, crate::analyzer::EnumerationPolicy::Full))
                .unwrap_or(false);
            push("expected: full element enumeration", full, String::new());
            let predicted = report.constituents.as_ref().and_then(|s| s.predicted);
            push(
                "expected: closed-form prediction agrees",
                predicted == Some(d),
                format!("predicted {predicted:?}"),
            );
            let kc = report.k_chain.as_ref();
            push(
                "expected: k-chain 2 -> 1",
                kc.map(|k| k.dim_k_t1 == 2 && k.dims_k.iter().all(|&d| d == 1))
                    .unwrap_or(false),
                String::new(),
            );
        }
        "prob4.3" => {
            let expected: Result<Vec<u64>> = (2..=report.n).map(free_metabelian_dims).collect();
            let expected = expected?;
            let got: Vec<u64> = report.dims.iter().map(|&d| d as u64).collect();
            push(
                "expected: dims equal the free metabelian enumeration",
                expected == got,
                format!("want {expected:?}, got {got:?}"),
            );
        }
        "cor3.7-trivial" => {
            push(
                "expected: constrained with covering degree one",
                variant == "constrained" && r_emp == Some(1),
                format!("got {variant} with {r_emp:?}"),
            );
            let t = report.fields.as_ref().map(|f| f.t).unwrap_or(0);
            push(
                "expected: dims constant equal to [K:F]",
                t == 1 && report.dims[1..].iter().all(|&d| d == t),
                format!("t = {t}, dims {:?}", report.dims),
            );
            let fields_equal_k = report
                .fields
                .as_ref()
                .map(|f| f.f_degrees.iter().all(|&d| d == f.k_degree))
                .unwrap_or(false);
            push(
                "expected: every step field equals the compositum",
                fields_equal_k,
                String::new(),
            );
        }
        other => return Err(Error::UnknownPreset(other.to_string())),
    }
    Ok(checks)
}
