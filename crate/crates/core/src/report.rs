//! One-shot analysis jobs and their machine-readable reports. The CLI and the
//! Python bindings are thin wrappers around `run_analysis`.

use serde::Serialize;

use crate::analyzer::{
    chain, classify_with_cap, free_metabelian_dims, k_chain_check, predicted_r, two_step_fields,
    ClassifyReport, ConstituentStats, DichotomyResult, EnumerationPolicy, GeneratingSpace,
    KChainReport,
};
use crate::error::Result;
use crate::fsubspace::FSubspace;
use crate::maxclass::{MaxClassAlgebra, ValidationReport};

/// Everything needed to run one analysis.
#[derive(Debug, Clone)]
pub struct AnalysisJob {
    pub algebra: MaxClassAlgebra,
    pub l1_rows: Vec<Vec<u64>>,
    pub n: usize,
    pub r_max: usize,
    pub seed: u64,
    /// Compare the chain dimensions against the free 2-generated metabelian
    /// enumeration (the polynomial-mode dimension check).
    pub compare_free_metabelian: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool, detail: String) -> Self {
        Check {
            name: name.to_string(),
            pass,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldSummary {
    pub f_degrees: Vec<usize>,
    pub k_degree: usize,
    pub t: usize,
    pub r_gen: usize,
    pub stabilized: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationSummary {
    pub variant: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_empirical: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_space: Option<FSubspace>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideal_dims: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub policy: EnumerationPolicy,
    pub observed_window: (usize, usize),
}

impl From<&ClassifyReport> for ClassificationSummary {
    fn from(r: &ClassifyReport) -> Self {
        let mut s = ClassificationSummary {
            variant: String::new(),
            r_empirical: None,
            r_bound: None,
            witness_degree: None,
            witness_space: None,
            ideal_dims: None,
            reason: None,
            policy: r.policy.clone(),
            observed_window: r.observed_window,
        };
        match &r.result {
            DichotomyResult::Constrained {
                r_empirical,
                r_bound,
            } => {
                s.variant = "constrained".into();
                s.r_empirical = Some(*r_empirical);
                s.r_bound = Some(*r_bound);
            }
            DichotomyResult::NotJustInfinite {
                witness_degree,
                witness_space,
                ideal_dims,
            } => {
                s.variant = "not_just_infinite".into();
                s.witness_degree = Some(*witness_degree);
                s.witness_space = Some(witness_space.clone());
                s.ideal_dims = Some(ideal_dims.clone());
            }
            DichotomyResult::Inconclusive { reason } => {
                s.variant = "inconclusive".into();
                s.reason = Some(reason.clone());
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreeMetabelianSummary {
    pub expected: Vec<u64>,
    pub matches: bool,
}

/// Full analysis output. Field order is fixed and every container is ordered,
/// so serialization is byte-stable for identical inputs and seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub seed: u64,
    pub mode: String,
    pub validation: ValidationReport,
    pub dims: Vec<usize>,
    pub d_seq: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fields: Option<FieldSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_chain: Option<KChainReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constituents: Option<ConstituentStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free_metabelian: Option<FreeMetabelianSummary>,
    pub checks: Vec<Check>,
    pub ok: bool,
}

pub fn run_analysis(job: &AnalysisJob) -> Result<AnalysisReport> {
    let mut algebra = job.algebra.clone();
    let tower = algebra.tower().clone();
    let mode = if tower.is_finite_mode() {
        "finite"
    } else {
        "transcendental"
    };
    let validation = algebra.validate();

    let mut report = AnalysisReport {
        n: job.n,
        seed: job.seed,
        mode: mode.to_string(),
        validation: validation.clone(),
        dims: Vec::new(),
        d_seq: Vec::new(),
        fields: None,
        k_chain: None,
        classification: None,
        constituents: None,
        free_metabelian: None,
        checks: Vec::new(),
        ok: false,
    };
    report.checks.push(Check::new(
        "algebra validates",
        validation.ok,
        format!("{} failures", validation.failures.len()),
    ));
    if !validation.ok {
        return Ok(report);
    }

    let space = FSubspace::from_f_rows(tower.ambient(2), &job.l1_rows)?;
    let gen = GeneratingSpace::new(&algebra, space)?;
    let lchain = chain(&algebra, &gen, job.n)?;
    report.dims = lchain.dims.clone();
    report.d_seq = lchain.d_seq.clone();
    report.checks.push(Check::new(
        "chain dims weakly increasing from degree 2",
        lchain.dims.windows(2).all(|w| w[0] <= w[1]),
        format!("{:?}", lchain.dims),
    ));

    if tower.is_finite_mode() {
        let fields = two_step_fields(&algebra, &gen, job.n)?;
        report.fields = Some(FieldSummary {
            f_degrees: fields.per_degree.iter().map(|d| d.field.degree()).collect(),
            k_degree: fields.k.degree(),
            t: fields.t,
            r_gen: fields.r_gen,
            stabilized: fields.stabilized,
        });

        let kc = k_chain_check(&algebra, &gen, &fields.k, job.n)?;
        report.checks.push(Check::new(
            "k-chain dimension drops by exactly one",
            kc.drop_ok,
            format!("dim_K T_1 = {}, dims {:?}", kc.dim_k_t1, kc.dims_k),
        ));
        report.k_chain = Some(kc);

        let cls = classify_with_cap(&algebra, &gen, job.n, job.seed, job.r_max)?;
        let summary = ClassificationSummary::from(&cls);
        match &cls.result {
            DichotomyResult::Constrained {
                r_empirical,
                r_bound,
            } => {
                report.checks.push(Check::new(
                    "empirical covering degree within bound",
                    r_empirical <= r_bound,
                    format!("observed {r_empirical}, bound {r_bound}"),
                ));
                if *r_empirical == 1 {
                    let t_ok = lchain.dims[1..].iter().all(|&d| d == fields.t);
                    let f_ok = fields.per_degree.iter().all(|d| d.field == fields.k);
                    report.checks.push(Check::new(
                        "one-step covering forces constant dims and step fields",
                        t_ok && f_ok,
                        format!("dims beyond degree 2 all equal {} and step fields equal their compositum: {}", fields.t, t_ok && f_ok),
                    ));
                }
            }
            DichotomyResult::NotJustInfinite {
                witness_degree,
                ideal_dims,
                ..
            } => {
                let constant = ideal_dims.windows(2).all(|w| w[0] == w[1]);
                // proper in every degree: the ideal never swallows a chain
                // component, so its codimension grows without bound
                let proper = ideal_dims
                    .iter()
                    .enumerate()
                    .all(|(k, &dim)| dim < lchain.dims[witness_degree + k - 2]);
                report.checks.push(Check::new(
                    "witness ideal has constant dimensions",
                    constant,
                    format!("from degree {witness_degree}: {ideal_dims:?}"),
                ));
                report.checks.push(Check::new(
                    "witness ideal stays proper in every degree",
                    proper,
                    format!("chain dims {:?}", lchain.dims),
                ));
            }
            DichotomyResult::Inconclusive { reason } => {
                report.checks.push(Check::new(
                    "classification conclusive",
                    false,
                    reason.clone(),
                ));
            }
        }
        report.classification = Some(summary);

        let stats = predicted_r(&algebra, &gen)?;
        let observed = report.classification.as_ref().and_then(|c| c.r_empirical);
        if stats.applicable {
            if let (Some(predicted), Some(observed)) = (stats.predicted, observed) {
                report.checks.push(Check::new(
                    "predicted covering degree matches empirical",
                    predicted == observed,
                    format!("predicted {predicted}, observed {observed}"),
                ));
            }
        }
        report.constituents = Some(stats);
    }

    if job.compare_free_metabelian {
        let expected: Result<Vec<u64>> = (2..=job.n).map(free_metabelian_dims).collect();
        let expected = expected?;
        let matches = expected
            .iter()
            .zip(&lchain.dims)
            .all(|(&e, &got)| e == got as u64)
            && expected.len() == lchain.dims.len();
        report.checks.push(Check::new(
            "chain dims match free metabelian enumeration",
            matches,
            format!("expected {expected:?}"),
        ));
        report.free_metabelian = Some(FreeMetabelianSummary { expected, matches });
    }

    report.ok = report.checks.iter().all(|c| c.pass);
    Ok(report)
}

/// Plain-text rendering of a report, one line per fact.
pub fn render_text(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!(
        "mode: {}  truncation: {}  seed: {}",
        report.mode, report.n, report.seed
    ));
    line(format!(
        "validation: {} ({} failures)",
        if report.validation.ok { "ok" } else { "FAILED" },
        report.validation.failures.len()
    ));
    if !report.dims.is_empty() {
        line(format!("dims L_2..L_{}: {:?}", report.n, report.dims));
        line(format!("d_seq: {:?}", report.d_seq));
    }
    if let Some(f) = &report.fields {
        line(format!(
            "step fields: degrees {:?}, [K:F] = {}, generated by degree {}, stabilized: {}",
            f.f_degrees, f.t, f.r_gen, f.stabilized
        ));
    }
    if let Some(kc) = &report.k_chain {
        line(format!(
            "k-chain: dim_K T_1 = {}, dims {:?}",
            kc.dim_k_t1, kc.dims_k
        ));
    }
    if let Some(c) = &report.classification {
        let mut extras = Vec::new();
        if let Some(r) = c.r_empirical {
            extras.push(format!("covering degree {r}"));
        }
        if let Some(b) = c.r_bound {
            extras.push(format!("bound {b}"));
        }
        if let Some(w) = c.witness_degree {
            extras.push(format!("witness degree {w}"));
        }
        if let Some(reason) = &c.reason {
            extras.push(reason.clone());
        }
        line(format!(
            "classification: {} ({})",
            c.variant,
            extras.join(", ")
        ));
    }
    if let Some(s) = &report.constituents {
        if s.applicable {
            line(format!(
                "constituent stats: m_2 = {:?}, max m_i = {:?}, predicted covering degree {:?}",
                s.m2, s.m_max, s.predicted
            ));
        }
    }
    if let Some(fm) = &report.free_metabelian {
        line(format!("free metabelian dims match: {}", fm.matches));
    }
    for check in &report.checks {
        line(format!(
            "[{}] {} - {}",
            if check.pass { "PASS" } else { "FAIL" },
            check.name,
            check.detail
        ));
    }
    line(format!(
        "result: {}",
        if report.ok { "ok" } else { "FAILED" }
    ));
    out
}
