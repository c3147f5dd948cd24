//! Analysis of the F-subalgebra generated by a degree-1 subspace L_1 of a
//! maximal-class algebra: the chain L_i, the step fields F_i and their
//! compositum K, K-chain dimension checks, covering degrees, and the
//! constrained / not-just-infinite dichotomy with machine-checkable witnesses.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fieldtower::{compositum, subfield_generated, EElement, FieldTower, Subfield};
use crate::fsubspace::FSubspace;
use crate::maxclass::{CentraliserLine, HomElement, MaxClassAlgebra};

/// A degree-1 generating subspace with E*L_1 equal to the whole degree-1
/// component, the standing assumption of every analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSpace {
    space: FSubspace,
}

impl GeneratingSpace {
    pub fn new(m: &MaxClassAlgebra, space: FSubspace) -> Result<Self> {
        let tower = m.tower();
        if space.ambient().tower() != tower || space.ambient().k() != 2 {
            return Err(Error::AmbientMismatch);
        }
        if !spans_degree_one(tower, &space)? {
            return Err(Error::GeneratingSpaceTooSmall);
        }
        Ok(GeneratingSpace { space })
    }

    pub fn space(&self) -> &FSubspace {
        &self.space
    }
}

/// E-span test for a subspace of E^2. In finite mode this is the rank of the
/// E-closure; in polynomial mode E is the fraction field, so rank 2 is
/// equivalent to some pair of basis vectors having a nonzero cross minor
/// (computed cap-free).
fn spans_degree_one(tower: &FieldTower, space: &FSubspace) -> Result<bool> {
    if tower.is_finite_mode() {
        let e = Subfield::full(tower)?;
        let (closure, _) = space.k_closure(&e)?;
        return Ok(closure.rank() == 2 * tower.edim());
    }
    let points = space.basis_points();
    let p = tower.p();
    for (i, u) in points.iter().enumerate() {
        for v in &points[i + 1..] {
            let lhs = crate::poly::mul(p, u[0].coeffs(), v[1].coeffs());
            let rhs = crate::poly::mul(p, u[1].coeffs(), v[0].coeffs());
            let diff = crate::poly::add(p, &lhs, &negate(p, &rhs));
            if crate::poly::degree(&diff).is_some() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn negate(p: u64, coeffs: &[u64]) -> Vec<u64> {
    coeffs.iter().map(|&c| (p - c % p) % p).collect()
}

/// [U, L_1] for U a subspace of the degree-`degree` component (degree 1 lives
/// in E^2, higher degrees in E^1). The result sits one degree up.
pub fn bracket_space(
    m: &MaxClassAlgebra,
    degree: usize,
    u: &FSubspace,
    l1: &FSubspace,
) -> Result<FSubspace> {
    let tower = m.tower().clone();
    if degree + 1 > m.truncation() {
        return Err(Error::DegreeOverflow {
            u: degree,
            v: 1,
            n: m.truncation(),
        });
    }
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for upoint in u.basis_points() {
        let uelem = point_to_element(degree, &upoint);
        for vpoint in l1.basis_points() {
            let velem = HomElement::degree1(vpoint[0].clone(), vpoint[1].clone());
            let result = m.bracket(&uelem, &velem)?;
            match result {
                HomElement::Higher { coeff, .. } => rows.push(coeff.coeffs().to_vec()),
                HomElement::Degree1 { .. } => unreachable!("bracket raises degree"),
            }
        }
    }
    FSubspace::from_f_rows(tower.ambient(1), &rows)
}

fn point_to_element(degree: usize, point: &[EElement]) -> HomElement {
    if degree == 1 {
        HomElement::degree1(point[0].clone(), point[1].clone())
    } else {
        HomElement::higher(degree, point[0].clone())
    }
}

/// The chain L_2..L_N with its dimension sequence and the intersections
/// d_i = dim_F(L_1 cap C_i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LChain {
    n: usize,
    spaces: Vec<FSubspace>,
    pub dims: Vec<usize>,
    pub d_seq: Vec<usize>,
}

impl LChain {
    /// L_i for 2 <= i <= N.
    pub fn space(&self, i: usize) -> Result<&FSubspace> {
        if !(2..=self.n).contains(&i) {
            return Err(Error::DegreeOutOfRange {
                got: i,
                lo: 2,
                hi: self.n,
            });
        }
        Ok(&self.spaces[i - 2])
    }

    pub fn truncation(&self) -> usize {
        self.n
    }
}

pub fn chain(m: &MaxClassAlgebra, gen: &GeneratingSpace, n: usize) -> Result<LChain> {
    require_validated(m)?;
    let n = check_depth(m, n)?;
    let l1 = gen.space();
    let mut spaces = Vec::with_capacity(n - 1);
    let mut current = bracket_space(m, 1, l1, l1)?;
    spaces.push(current.clone());
    for i in 2..n {
        current = bracket_space(m, i, &current, l1)?;
        spaces.push(current.clone());
    }
    let dims = spaces.iter().map(|s| s.rank()).collect();
    let mut d_seq = Vec::with_capacity(n - 2);
    for i in 2..=n - 1 {
        let ci = m.line(i)?.as_subspace(m.tower())?;
        d_seq.push(l1.intersect(&ci)?.rank());
    }
    Ok(LChain {
        n,
        spaces,
        dims,
        d_seq,
    })
}

fn require_validated(m: &MaxClassAlgebra) -> Result<()> {
    if !m.is_validated() {
        return Err(Error::NotValidated);
    }
    Ok(())
}

fn check_depth(m: &MaxClassAlgebra, n: usize) -> Result<usize> {
    if !(3..=m.truncation()).contains(&n) {
        return Err(Error::DegreeOutOfRange {
            got: n,
            lo: 3,
            hi: m.truncation(),
        });
    }
    Ok(n)
}

/// The normalized functional with kernel C_i, evaluated on a degree-1 point.
/// phi = c * (b_i, -a_i) scaled so that phi(x_i) = 1.
struct StepFunctional {
    scale: EElement,
    line_a: EElement,
    line_b: EElement,
}

impl StepFunctional {
    fn new(tower: &FieldTower, line: &CentraliserLine, x_i: &[EElement]) -> Result<Self> {
        let raw = Self {
            scale: tower.one(),
            line_a: line.a().clone(),
            line_b: line.b().clone(),
        };
        let at_xi = raw.eval(tower, x_i)?;
        if at_xi.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(Self {
            scale: tower.inv(&at_xi)?,
            ..raw
        })
    }

    fn eval(&self, tower: &FieldTower, point: &[EElement]) -> Result<EElement> {
        let v = tower.sub(
            &tower.mul(&self.line_b, &point[0])?,
            &tower.mul(&self.line_a, &point[1])?,
        )?;
        tower.mul(&self.scale, &v)
    }
}

/// The step field F_i produced by a particular admissible choice of x_i in
/// L_1 outside C_i. Any admissible choice yields the same field.
pub fn step_field_with_choice(
    m: &MaxClassAlgebra,
    gen: &GeneratingSpace,
    i: usize,
    x_i: &[EElement],
) -> Result<Subfield> {
    let tower = m.tower();
    let line = m.line(i)?;
    let phi = StepFunctional::new(tower, line, x_i)?;
    let mut images = Vec::new();
    for point in gen.space().basis_points() {
        images.push(phi.eval(tower, &point)?);
    }
    subfield_generated(tower, &images)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFieldData {
    pub degree: usize,
    pub x_i: Vec<EElement>,
    pub image: FSubspace,
    pub field: Subfield,
}

/// Step fields for every degree, their compositum K, t = [K:F], the least
/// degree whose running compositum already generates K, and whether the
/// running compositum is constant over the trailing max(t, 5) degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoStepFieldReport {
    pub per_degree: Vec<StepFieldData>,
    pub k: Subfield,
    pub t: usize,
    pub r_gen: usize,
    pub stabilized: bool,
}

pub fn two_step_fields(
    m: &MaxClassAlgebra,
    gen: &GeneratingSpace,
    n: usize,
) -> Result<TwoStepFieldReport> {
    require_validated(m)?;
    let n = check_depth(m, n)?;
    let tower = m.tower();
    if !tower.is_finite_mode() {
        return Err(Error::UnsupportedInTranscendentalMode);
    }

    let mut per_degree = Vec::with_capacity(n - 2);
    for i in 2..=n - 1 {
        let line = m.line(i)?;
        let ci = line.as_subspace(tower)?;
        let x_i = gen
            .space()
            .basis_points()
            .into_iter()
            .find(|point| {
                let flat = gen.space().ambient().flatten(point);
                !ci.member(&flat).unwrap_or(false)
            })
            .ok_or(Error::GeneratingSpaceTooSmall)?;
        let phi = StepFunctional::new(tower, line, &x_i)?;
        let mut images = Vec::new();
        for point in gen.space().basis_points() {
            images.push(phi.eval(tower, &point)?);
        }
        let image = FSubspace::span_elements(
            tower.ambient(1),
            &images.iter().map(|e| vec![e.clone()]).collect::<Vec<_>>(),
        )?;
        let field = subfield_generated(tower, &images)?;
        per_degree.push(StepFieldData {
            degree: i,
            x_i,
            image,
            field,
        });
    }

    // Running compositum over degrees 2..=n-1.
    let mut running = Vec::with_capacity(per_degree.len());
    let mut acc = per_degree[0].field.clone();
    running.push(acc.clone());
    for data in &per_degree[1..] {
        acc = compositum(&acc, &data.field)?;
        running.push(acc.clone());
    }
    let k = acc;
    let t = k.degree();
    let r_gen = running
        .iter()
        .position(|s| *s == k)
        .map(|idx| idx + 2)
        .expect("the full compositum occurs");
    let window = t.max(5);
    let stabilized =
        running.len() >= window && running[running.len() - window..].iter().all(|s| *s == k);

    Ok(TwoStepFieldReport {
        per_degree,
        k,
        t,
        r_gen,
        stabilized,
    })
}

/// Dimension sequence of the K-chain T_i generated by T_1 = K L_1, measured
/// over K. The drop by exactly one from dim_K T_1 is asserted per degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KChainReport {
    pub dim_k_t1: usize,
    pub dims_k: Vec<usize>,
    pub drop_ok: bool,
}

pub fn k_chain_check(
    m: &MaxClassAlgebra,
    gen: &GeneratingSpace,
    k: &Subfield,
    n: usize,
) -> Result<KChainReport> {
    require_validated(m)?;
    let n = check_depth(m, n)?;
    let (t1, _) = gen.space().k_closure(k)?;
    let dim_k_t1 = t1.dim_over(k)?;
    let mut dims_k = Vec::with_capacity(n - 1);
    let mut current = bracket_space(m, 1, &t1, &t1)?;
    dims_k.push(current.dim_over(k)?);
    for i in 2..n {
        current = bracket_space(m, i, &current, &t1)?;
        dims_k.push(current.dim_over(k)?);
    }
    let drop_ok = dims_k.iter().all(|&d| d + 1 == dim_k_t1);
    Ok(KChainReport {
        dim_k_t1,
        dims_k,
        drop_ok,
    })
}

/// Smallest k <= r_max with [z, _k L_1] = L_(deg z + k); None when not reached.
pub fn covering_degree(
    m: &MaxClassAlgebra,
    gen: &GeneratingSpace,
    lchain: &LChain,
    z: &HomElement,
    r_max: usize,
) -> Result<Option<usize>> {
    if z.is_zero() {
        return Err(Error::ZeroElement);
    }
    let i = z.degree();
    if i + r_max > lchain.truncation() {
        return Err(Error::TruncationExceeded(i + r_max, lchain.truncation()));
    }
    let tower = m.tower();
    let mut current = match z {
        HomElement::Degree1 { a, b } => {
            FSubspace::span_elements(tower.ambient(2), &[vec![a.clone(), b.clone()]])?
        }
        HomElement::Higher { coeff, .. } => {
            FSubspace::span_elements(tower.ambient(1), &[vec![coeff.clone()]])?
        }
    };
    for k in 1..=r_max {
        current = bracket_space(m, i + k - 1, &current, gen.space())?;
        if current == *lchain.space(i + k)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// How the covering-degree enumeration picked its elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "policy", rename_all = "snake_case")]
pub enum EnumerationPolicy {
    Full,
    Sampled { seed: u64, per_degree: usize },
}

/// Nonzero vectors of the row space modulo F-scalars: all of them when
/// p^rank is small, a seeded deterministic sample otherwise.
fn enumerate_space_elements(
    space: &FSubspace,
    seed: u64,
    full_limit: u64,
    sample_size: usize,
) -> (Vec<Vec<u64>>, bool) {
    let p = space.ambient().tower().p();
    let r = space.rank() as u32;
    let rows = space.rows();
    let width = space.ambient().width();
    let combine = |coeffs: &[u64]| -> Vec<u64> {
        let mut v = vec![0u64; width];
        for (c, row) in coeffs.iter().zip(rows) {
            for (slot, &entry) in v.iter_mut().zip(row) {
                *slot = (*slot + c * entry) % p;
            }
        }
        v
    };
    match p.checked_pow(r) {
        Some(total) if total <= full_limit => {
            let mut out = Vec::new();
            for code in 1..total {
                let mut coeffs = vec![0u64; r as usize];
                let mut c = code;
                for slot in coeffs.iter_mut() {
                    *slot = c % p;
                    c /= p;
                }
                // canonical representative per scalar class: first nonzero = 1
                if coeffs.iter().find(|&&x| x != 0) != Some(&1) {
                    continue;
                }
                out.push(combine(&coeffs));
            }
            (out, true)
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::new();
            while out.len() < sample_size {
                let coeffs: Vec<u64> = (0..r).map(|_| rng.random_range(0..p)).collect();
                if coeffs.iter().all(|&c| c == 0) {
                    continue;
                }
                out.push(combine(&coeffs));
            }
            (out, false)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum DichotomyResult {
    Constrained {
        r_empirical: usize,
        r_bound: usize,
    },
    NotJustInfinite {
        witness_degree: usize,
        witness_space: FSubspace,
        ideal_dims: Vec<usize>,
    },
    Inconclusive {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifyReport {
    pub result: DichotomyResult,
    pub k_degree: usize,
    pub t: usize,
    pub r_gen: usize,
    pub policy: EnumerationPolicy,
    /// Degrees over which covering was observed; the property is certified
    /// only within this window of the truncation.
    pub observed_window: (usize, usize),
}

const FULL_ENUMERATION_LIMIT: u64 = 1 << 16;
const SAMPLE_PER_DEGREE: usize = 10_000;

pub fn classify(
    m: &MaxClassAlgebra,
    gen: &GeneratingSpace,
    n: usize,
    seed: u64,
) -> Result<ClassifyReport> {
    classify_with_cap(m, gen, n, seed, n)
}

/// Like `classify`, but no covering search runs longer than `max_steps`
/// bracket steps. Too small a cap surfaces as an inconclusive result rather
/// than a wrong covering degree.
pub fn classify_with_cap(
    m: &MaxClassAlgebra,
    gen: &GeneratingSpace,
    n: usize,
    seed: u64,
    max_steps: usize,
) -> Result<ClassifyReport> {
    require_validated(m)?;
    let n = check_depth(m, n)?;
    let fields = two_step_fields(m, gen, n)?;
    let k = &fields.k;
    let mut policy = EnumerationPolicy::Full;
    let report = |result, policy| ClassifyReport {
        result,
        k_degree: fields.k.degree(),
        t: fields.t,
        r_gen: fields.r_gen,
        policy,
        observed_window: (2, n),
    };

    if !fields.stabilized {
        return Ok(report(
            DichotomyResult::Inconclusive {
                reason: "running compositum of step fields has not stabilized".into(),
            },
            policy,
        ));
    }

    let (kl1, _) = gen.space().k_closure(k)?;
    let dim = kl1.dim_over(k)?;
    let lchain = chain(m, gen, n)?;

    if dim == 2 {
        let r_bound = (fields.t - 1) * fields.r_gen + 1;
        let mut r_empirical = 0usize;
        let mut degrees: Vec<usize> = vec![1];
        degrees.extend(2..=n.saturating_sub(r_bound));
        for degree in degrees {
            let space = if degree == 1 {
                gen.space().clone()
            } else {
                lchain.space(degree)?.clone()
            };
            let r_max = (n - degree).min(max_steps.max(1));
            let (elements, full) = enumerate_space_elements(
                &space,
                seed.wrapping_add(degree as u64),
                FULL_ENUMERATION_LIMIT,
                SAMPLE_PER_DEGREE,
            );
            if !full {
                policy = EnumerationPolicy::Sampled {
                    seed,
                    per_degree: SAMPLE_PER_DEGREE,
                };
            }
            for flat in elements {
                let point = space.ambient().unflatten(&flat);
                let z = point_to_element(degree, &point);
                if z.is_zero() {
                    continue;
                }
                match covering_degree(m, gen, &lchain, &z, r_max)? {
                    Some(kappa) => r_empirical = r_empirical.max(kappa),
                    None => {
                        return Ok(report(
                            DichotomyResult::Inconclusive {
                                reason: format!(
                                    "a degree-{degree} element never covers within the truncation"
                                ),
                            },
                            policy,
                        ));
                    }
                }
            }
        }
        return Ok(report(
            DichotomyResult::Constrained {
                r_empirical,
                r_bound,
            },
            policy,
        ));
    }

    if dim > 2 {
        // First degree whose component is a K-space of K-dimension >= 2;
        // the witness is the K-line through the first canonical basis vector.
        for i in 2..=n {
            let li = lchain.space(i)?;
            let (_, invariant) = li.k_closure(k)?;
            if !invariant || li.dim_over(k)? < 2 {
                continue;
            }
            let first = FSubspace::from_f_rows(m.tower().ambient(1), &[li.rows()[0].clone()])?;
            let (witness, _) = first.k_closure(k)?;
            let mut ideal_dims = vec![witness.rank()];
            let mut current = witness.clone();
            for j in i..n {
                current = bracket_space(m, j, &current, gen.space())?;
                ideal_dims.push(current.rank());
            }
            return Ok(report(
                DichotomyResult::NotJustInfinite {
                    witness_degree: i,
                    witness_space: witness,
                    ideal_dims,
                },
                policy,
            ));
        }
        return Ok(report(
            DichotomyResult::Inconclusive {
                reason: "no component became a K-space within the truncation".into(),
            },
            policy,
        ));
    }

    Ok(report(
        DichotomyResult::Inconclusive {
            reason: format!("dim_K(K L_1) = {dim} is below the generating assumption"),
        },
        policy,
    ))
}

/// Occurrence statistics of the designated line and the closed-form covering
/// degree they predict for the Example-shaped generating space
/// L_1 = F{x, a x, y}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstituentStats {
    pub applicable: bool,
    pub reason: Option<String>,
    pub d: usize,
    /// (degree, m_degree) for every degree where the count completes within
    /// the truncation.
    pub m_values: Vec<(usize, usize)>,
    pub m2: Option<usize>,
    pub m_max: Option<usize>,
    pub predicted: Option<usize>,
}

/// m_i per degree from the occurrence pattern of the designated line, plus
/// the predicted covering degree: m_2 + 1 when m_2 attains the maximum, the
/// maximum otherwise. `occurrences[j]` says whether C_(j+2) is the line.
pub fn constituent_stats_from_occurrences(occurrences: &[bool], d: usize) -> ConstituentStats {
    let mut m_values = Vec::new();
    for offset in 0..occurrences.len() {
        let mut count = 0usize;
        let mut found = None;
        for k in 0..=occurrences.len() - offset {
            if count == d - 1 {
                found = Some(k);
                break;
            }
            if offset + k < occurrences.len() && occurrences[offset + k] {
                count += 1;
            }
        }
        if let Some(k) = found {
            m_values.push((offset + 2, k));
        }
    }
    let m2 = m_values.iter().find(|(i, _)| *i == 2).map(|(_, k)| *k);
    let m_max = m_values.iter().map(|(_, k)| *k).max();
    let predicted = match (m2, m_max) {
        (Some(m2), Some(mx)) => Some(if m2 == mx { m2 + 1 } else { mx }),
        _ => None,
    };
    ConstituentStats {
        applicable: true,
        reason: None,
        d,
        m_values,
        m2,
        m_max,
        predicted,
    }
}

fn inapplicable(d: usize, reason: &str) -> ConstituentStats {
    ConstituentStats {
        applicable: false,
        reason: Some(reason.to_string()),
        d,
        m_values: Vec::new(),
        m2: None,
        m_max: None,
        predicted: None,
    }
}

/// Closed-form covering degree for the Example configuration: at most two
/// distinct lines, y spanning the designated line, x in the other one, and
/// L_1 = F{x, a x, y}.
pub fn predicted_r(m: &MaxClassAlgebra, gen: &GeneratingSpace) -> Result<ConstituentStats> {
    let tower = m.tower();
    let d = tower.edim();
    if !tower.is_finite_mode() {
        return Ok(inapplicable(d, "polynomial mode"));
    }
    let designated = CentraliserLine::ey(tower);
    let mut distinct: Vec<&CentraliserLine> = Vec::new();
    for line in m.lines() {
        if !distinct.contains(&line) {
            distinct.push(line);
        }
    }
    if distinct.len() > 2 {
        return Ok(inapplicable(d, "more than two distinct centraliser lines"));
    }
    if distinct.len() == 2 {
        let other = distinct.iter().find(|l| ***l != designated).unwrap();
        if **other != CentraliserLine::ex(tower) {
            return Ok(inapplicable(
                d,
                "x does not span the second centraliser line",
            ));
        }
    }
    let expected = FSubspace::span_elements(
        tower.ambient(2),
        &[
            vec![tower.one(), tower.zero()],
            vec![tower.alpha(), tower.zero()],
            vec![tower.zero(), tower.one()],
        ],
    )?;
    if *gen.space() != expected {
        return Ok(inapplicable(d, "generating space is not F{x, a x, y}"));
    }
    let occurrences: Vec<bool> = m.lines().iter().map(|l| *l == designated).collect();
    Ok(constituent_stats_from_occurrences(&occurrences, d))
}

/// Trace of X_j = [X_(j-1), L_1] from a homogeneous start: the first index at
/// which the subspace becomes K-invariant, the uniform bound (t-1)*r_gen it
/// must respect, and the K-dimension of the K-closure along the way.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpandingTrace {
    pub jstar: Option<usize>,
    pub bound: usize,
    pub within_bound: bool,
    pub k_dims: Vec<usize>,
    pub k_dim_constant: bool,
    pub k_flags: Vec<bool>,
}

pub fn expanding_check(
    m: &MaxClassAlgebra,
    gen: &GeneratingSpace,
    fields: &TwoStepFieldReport,
    x0: &FSubspace,
    degree: usize,
    n: usize,
) -> Result<ExpandingTrace> {
    require_validated(m)?;
    let n = check_depth(m, n)?;
    let bound = (fields.t - 1) * fields.r_gen;
    if degree < 2 || degree + bound > n {
        return Err(Error::TruncationExceeded(degree + bound, n));
    }
    let k = &fields.k;
    let mut k_dims = Vec::new();
    let mut k_flags = Vec::new();
    let mut current = x0.clone();
    let mut jstar = None;
    let mut j = 0usize;
    loop {
        let (closure, invariant) = current.k_closure(k)?;
        k_dims.push(closure.dim_over(k)?);
        k_flags.push(invariant);
        if invariant && jstar.is_none() {
            jstar = Some(j);
        }
        if degree + j >= n {
            break;
        }
        current = bracket_space(m, degree + j, &current, gen.space())?;
        j += 1;
    }
    let within_bound = jstar.is_some_and(|j| j <= bound);
    let k_dim_constant = k_dims.windows(2).all(|w| w[0] == w[1]);
    Ok(ExpandingTrace {
        jstar,
        bound,
        within_bound,
        k_dims,
        k_dim_constant,
        k_flags,
    })
}

/// Degree-n dimension of the free 2-generated metabelian Lie algebra, by
/// enumerating the left-normed basis brackets [g_(i1), g_(i2), ..., g_(in)]
/// with i1 > i2 <= i3 <= ... <= in over two generators.
pub fn free_metabelian_dims(n: usize) -> Result<u64> {
    if n < 2 {
        return Err(Error::DegreeTooSmall(n));
    }
    fn tails(prev: usize, remaining: usize) -> u64 {
        if remaining == 0 {
            return 1;
        }
        (prev..=2).map(|v| tails(v, remaining - 1)).sum()
    }
    let mut count = 0u64;
    for i1 in 1..=2usize {
        for i2 in 1..=2usize {
            if i1 > i2 {
                count += tails(i2, n - 2);
            }
        }
    }
    Ok(count)
}
