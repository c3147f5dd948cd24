//! Truncated graded Lie algebras of maximal class over E, encoded by their
//! 2-step centraliser sequence.
//!
//! The degree-1 component has E-basis {x, y} adapted so that C_2 = Ey and
//! e_2 = [y, x]; each higher component is E*e_i. The adjoint constants
//! [e_i, x] = l_i * e_(i+1), [e_i, y] = m_i * e_(i+1) are forced by the lines,
//! and the brackets [e_i, e_j] between higher components are the unique values
//! compatible with the Jacobi identity, derived by peeling e_i back to
//! e_2 = [y, x] one normalizer at a time. Whether the resulting table really
//! satisfies Jacobi on every triple is decided by `validate`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fieldtower::{EElement, FieldTower};
use crate::fsubspace::FSubspace;

/// The line E(a*x + b*y) inside the degree-1 component, with the first
/// nonzero coordinate normalized to 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CentraliserLine {
    a: EElement,
    b: EElement,
}

impl CentraliserLine {
    pub fn new(tower: &FieldTower, a: &EElement, b: &EElement) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroLine);
        }
        if a.is_zero() {
            return Ok(CentraliserLine {
                a: tower.zero(),
                b: tower.one(),
            });
        }
        let b = if *a == tower.one() {
            b.clone()
        } else {
            tower.mul(b, &tower.inv(a)?)?
        };
        Ok(CentraliserLine { a: tower.one(), b })
    }

    /// The line Ey, the forced value of C_2 in the adapted basis.
    pub fn ey(tower: &FieldTower) -> Self {
        CentraliserLine {
            a: tower.zero(),
            b: tower.one(),
        }
    }

    /// The line Ex.
    pub fn ex(tower: &FieldTower) -> Self {
        CentraliserLine {
            a: tower.one(),
            b: tower.zero(),
        }
    }

    pub fn a(&self) -> &EElement {
        &self.a
    }

    pub fn b(&self) -> &EElement {
        &self.b
    }

    pub fn contains_x(&self) -> bool {
        self.b.is_zero()
    }

    /// Deterministic encoding used to order lines in searches and reports.
    pub fn encoding(&self) -> Vec<u64> {
        let mut out = self.a.coeffs().to_vec();
        out.extend_from_slice(self.b.coeffs());
        out
    }

    /// The line as an F-subspace of E^2, i.e. the span of a^m * (a, b).
    pub fn as_subspace(&self, tower: &FieldTower) -> Result<FSubspace> {
        let mut points = Vec::new();
        for m in 0..tower.edim() {
            let scale = tower.pow(&tower.alpha(), m as u64)?;
            points.push(vec![
                tower.mul(&scale, &self.a)?,
                tower.mul(&scale, &self.b)?,
            ]);
        }
        FSubspace::span_elements(tower.ambient(2), &points)
    }
}

/// A homogeneous element: a*x + b*y in degree 1, c*e_i in degree i >= 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomElement {
    Degree1 { a: EElement, b: EElement },
    Higher { degree: usize, coeff: EElement },
}

impl HomElement {
    pub fn degree1(a: EElement, b: EElement) -> Self {
        HomElement::Degree1 { a, b }
    }

    pub fn x(tower: &FieldTower) -> Self {
        HomElement::Degree1 {
            a: tower.one(),
            b: tower.zero(),
        }
    }

    pub fn y(tower: &FieldTower) -> Self {
        HomElement::Degree1 {
            a: tower.zero(),
            b: tower.one(),
        }
    }

    pub fn basis(tower: &FieldTower, degree: usize) -> Self {
        assert!(degree >= 2);
        HomElement::Higher {
            degree,
            coeff: tower.one(),
        }
    }

    pub fn higher(degree: usize, coeff: EElement) -> Self {
        assert!(degree >= 2);
        HomElement::Higher { degree, coeff }
    }

    pub fn degree(&self) -> usize {
        match self {
            HomElement::Degree1 { .. } => 1,
            HomElement::Higher { degree, .. } => *degree,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            HomElement::Degree1 { a, b } => a.is_zero() && b.is_zero(),
            HomElement::Higher { coeff, .. } => coeff.is_zero(),
        }
    }
}

/// Label of an adapted basis element, used in validation witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(into = "String")]
pub enum BasisLabel {
    X,
    Y,
    E(usize),
}

impl From<BasisLabel> for String {
    fn from(l: BasisLabel) -> String {
        l.to_string()
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::X => write!(f, "x"),
            BasisLabel::Y => write!(f, "y"),
            BasisLabel::E(i) => write!(f, "e{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Failure {
    Jacobi {
        witness: (BasisLabel, BasisLabel, BasisLabel),
    },
    Antisymmetry {
        witness: (BasisLabel, BasisLabel),
    },
    Alternating {
        witness: BasisLabel,
    },
    #[serde(rename = "maximalclass")]
    MaximalClass {
        degree: usize,
    },
    CentraliserMismatch {
        degree: usize,
    },
    Window {
        first_occurrence: usize,
        window_start: usize,
        window_len: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Unvalidated,
    Validated,
    Invalid(Box<ValidationReport>),
}

/// Result of the occurrence-window scan: every line must reappear within each
/// window whose length is the degree of its first occurrence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowReport {
    pub ok: bool,
    pub violation: Option<(usize, usize, usize)>, // (first occurrence, window start, window len)
}

/// A maximal-class algebra truncated at degree N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxClassAlgebra {
    tower: FieldTower,
    n: usize,
    lines: Vec<CentraliserLine>,
    adjoint: Vec<(EElement, EElement)>,
    normalizer_is_x: Vec<bool>,
    pair_table: BTreeMap<(usize, usize), EElement>,
    status: Status,
}

impl MaxClassAlgebra {
    /// The algebra with every centraliser equal to Ey and all higher
    /// components commuting. Always validates.
    pub fn metabelian(tower: &FieldTower, n: usize) -> Result<Self> {
        let lines = vec![CentraliserLine::ey(tower); n.saturating_sub(2)];
        let mut algebra = Self::from_centralisers(tower, &lines, n)?;
        let report = algebra.validate();
        debug_assert!(report.ok);
        Ok(algebra)
    }

    /// Build from a declared centraliser sequence C_2..C_(N-1). The adjoint
    /// constants and the pairwise bracket table are derived; the result is
    /// unvalidated.
    pub fn from_centralisers(
        tower: &FieldTower,
        lines: &[CentraliserLine],
        n: usize,
    ) -> Result<Self> {
        if n < 3 {
            return Err(Error::TruncationTooSmall(n));
        }
        if lines.len() != n - 2 {
            return Err(Error::LengthMismatch {
                expected: n - 2,
                got: lines.len(),
            });
        }
        if lines[0] != CentraliserLine::ey(tower) {
            return Err(Error::BadFirstLine);
        }

        // (l_i, m_i) kills a_i x + b_i y, scaled so the normalizer coefficient
        // is 1: e_(i+1) = [e_i, x] when x lies outside C_i, else [e_i, y].
        let mut adjoint = Vec::with_capacity(lines.len());
        let mut normalizer_is_x = Vec::with_capacity(lines.len());
        for line in lines {
            if line.contains_x() {
                adjoint.push((tower.zero(), tower.one()));
                normalizer_is_x.push(false);
            } else {
                // m = -a/b makes l*a + m*b = a - a = 0; canonical lines have
                // b = 1 whenever a = 0, so polynomial mode never divides.
                let m = if *line.b() == tower.one() {
                    tower.neg(line.a())?
                } else {
                    tower.neg(&tower.mul(line.a(), &tower.inv(line.b())?)?)?
                };
                adjoint.push((tower.one(), m));
                normalizer_is_x.push(true);
            }
        }

        let mut algebra = MaxClassAlgebra {
            tower: tower.clone(),
            n,
            lines: lines.to_vec(),
            adjoint,
            normalizer_is_x,
            pair_table: BTreeMap::new(),
            status: Status::Unvalidated,
        };
        algebra.fill_pair_table()?;
        Ok(algebra)
    }

    /// [e_i, e_j] = c(i,j) e_(i+j) for 2 <= i < j, i+j <= N.
    ///
    /// Row 2 comes from e_2 = [y, x]:
    ///   c(2, j) = l_j m_(j+1) - m_j l_(j+1).
    /// Higher rows peel e_i = [e_(i-1), w_i] with normalizer coefficient 1:
    ///   c(i, j) = adj(i+j-1, w_i) c(i-1, j) - adj(j, w_i) c(i-1, j+1).
    fn fill_pair_table(&mut self) -> Result<()> {
        let n = self.n;
        let t = self.tower.clone();
        for j in 3..=n.saturating_sub(2) {
            let (lj, mj) = self.adjoint_pair(j)?;
            let (lj1, mj1) = self.adjoint_pair(j + 1)?;
            let c = t.sub(&t.mul(&lj, &mj1)?, &t.mul(&mj, &lj1)?)?;
            self.pair_table.insert((2, j), c);
        }
        let mut i = 3;
        while 2 * i < n {
            for j in (i + 1)..=(n - i) {
                let w_is_x = self.normalizer_is_x[i - 1 - 2];
                let adj_total = self.adjoint_component(i + j - 1, w_is_x)?;
                let adj_j = self.adjoint_component(j, w_is_x)?;
                let prev_same = self.pair_coeff(i - 1, j)?;
                let prev_up = self.pair_coeff(i - 1, j + 1)?;
                let c = t.sub(&t.mul(&adj_total, &prev_same)?, &t.mul(&adj_j, &prev_up)?)?;
                self.pair_table.insert((i, j), c);
            }
            i += 1;
        }
        Ok(())
    }

    fn adjoint_pair(&self, i: usize) -> Result<(EElement, EElement)> {
        if !(2..=self.n - 1).contains(&i) {
            return Err(Error::DegreeOutOfRange {
                got: i,
                lo: 2,
                hi: self.n - 1,
            });
        }
        Ok(self.adjoint[i - 2].clone())
    }

    fn adjoint_component(&self, i: usize, x_component: bool) -> Result<EElement> {
        let (l, m) = self.adjoint_pair(i)?;
        Ok(if x_component { l } else { m })
    }

    /// Signed lookup of c(i,j) for any i, j >= 2 with i + j <= N.
    pub fn pair_coeff(&self, i: usize, j: usize) -> Result<EElement> {
        if i + j > self.n {
            return Err(Error::DegreeOverflow {
                u: i,
                v: j,
                n: self.n,
            });
        }
        if i == j {
            return Ok(self.tower.zero());
        }
        let (lo, hi, flip) = if i < j { (i, j, false) } else { (j, i, true) };
        let c = self
            .pair_table
            .get(&(lo, hi))
            .cloned()
            .unwrap_or_else(|| self.tower.zero());
        if flip {
            self.tower.neg(&c)
        } else {
            Ok(c)
        }
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn truncation(&self) -> usize {
        self.n
    }

    pub fn lines(&self) -> &[CentraliserLine] {
        &self.lines
    }

    pub fn line(&self, i: usize) -> Result<&CentraliserLine> {
        if !(2..=self.n - 1).contains(&i) {
            return Err(Error::DegreeOutOfRange {
                got: i,
                lo: 2,
                hi: self.n - 1,
            });
        }
        Ok(&self.lines[i - 2])
    }

    /// (l_i, m_i) with [e_i, x] = l_i e_(i+1), [e_i, y] = m_i e_(i+1).
    pub fn adjoint(&self, i: usize) -> Result<(EElement, EElement)> {
        self.adjoint_pair(i)
    }

    pub fn status(&self) -> &Status {
        &self.status
    }

    pub fn is_validated(&self) -> bool {
        matches!(self.status, Status::Validated)
    }

    /// Bilinear bracket of homogeneous elements. The total degree must stay
    /// within the truncation; the caller guards or treats overflow as zero.
    pub fn bracket(&self, u: &HomElement, v: &HomElement) -> Result<HomElement> {
        let t = &self.tower;
        let total = u.degree() + v.degree();
        if total > self.n {
            return Err(Error::DegreeOverflow {
                u: u.degree(),
                v: v.degree(),
                n: self.n,
            });
        }
        match (u, v) {
            (HomElement::Degree1 { a: a1, b: b1 }, HomElement::Degree1 { a: a2, b: b2 }) => {
                let c = t.sub(&t.mul(b1, a2)?, &t.mul(a1, b2)?)?;
                Ok(HomElement::Higher {
                    degree: 2,
                    coeff: c,
                })
            }
            (HomElement::Higher { degree, coeff }, HomElement::Degree1 { a, b }) => {
                let (l, m) = self.adjoint_pair(*degree)?;
                let c = t.mul(coeff, &t.add(&t.mul(a, &l)?, &t.mul(b, &m)?)?)?;
                Ok(HomElement::Higher {
                    degree: degree + 1,
                    coeff: c,
                })
            }
            (HomElement::Degree1 { .. }, HomElement::Higher { .. }) => {
                let flipped = self.bracket(v, u)?;
                match flipped {
                    HomElement::Higher { degree, coeff } => Ok(HomElement::Higher {
                        degree,
                        coeff: t.neg(&coeff)?,
                    }),
                    HomElement::Degree1 { .. } => unreachable!("bracket raises degree"),
                }
            }
            (
                HomElement::Higher {
                    degree: i,
                    coeff: cu,
                },
                HomElement::Higher {
                    degree: j,
                    coeff: cv,
                },
            ) => {
                let c = t.mul(&t.mul(cu, cv)?, &self.pair_coeff(*i, *j)?)?;
                Ok(HomElement::Higher {
                    degree: i + j,
                    coeff: c,
                })
            }
        }
    }

    /// Kernel line of v -> [e_i, v], canonicalized.
    pub fn two_step_centraliser(&self, i: usize) -> Result<CentraliserLine> {
        let (l, m) = self.adjoint_pair(i)?;
        if l.is_zero() && m.is_zero() {
            return Err(Error::DegenerateAdjoint(i));
        }
        // a l + b m = 0 is solved by (a, b) = (m, -l).
        CentraliserLine::new(&self.tower, &m, &self.tower.neg(&l)?)
    }

    /// Occurrence-window scan over the declared lines: a line first seen in
    /// degree t must occur in every length-t window inside [2, N-1].
    pub fn check_window(&self) -> WindowReport {
        let hi = self.n - 1;
        let mut seen: Vec<&CentraliserLine> = Vec::new();
        for (offset, line) in self.lines.iter().enumerate() {
            if seen.contains(&line) {
                continue;
            }
            seen.push(line);
            let first = offset + 2;
            let len = first;
            let mut start = 2;
            while start + len - 1 <= hi {
                let found = (start..start + len).any(|j| self.lines[j - 2] == *line);
                if !found {
                    return WindowReport {
                        ok: false,
                        violation: Some((first, start, len)),
                    };
                }
                start += 1;
            }
        }
        WindowReport {
            ok: true,
            violation: None,
        }
    }

    fn basis_element(&self, label: BasisLabel) -> HomElement {
        match label {
            BasisLabel::X => HomElement::x(&self.tower),
            BasisLabel::Y => HomElement::y(&self.tower),
            BasisLabel::E(i) => HomElement::basis(&self.tower, i),
        }
    }

    fn basis_labels(&self) -> Vec<BasisLabel> {
        // up to e_(N-1): pairs with a degree-1 element still fit under the
        // truncation; the per-check degree filters cut the rest
        let mut labels = vec![BasisLabel::X, BasisLabel::Y];
        labels.extend((2..=self.n.saturating_sub(1)).map(BasisLabel::E));
        labels
    }

    /// Run every structural check and set the status. Failures are collected,
    /// not short-circuited, so a report carries all witnesses.
    pub fn validate(&mut self) -> ValidationReport {
        let mut failures = Vec::new();
        let labels = self.basis_labels();
        let deg = |l: &BasisLabel| match l {
            BasisLabel::X | BasisLabel::Y => 1usize,
            BasisLabel::E(i) => *i,
        };

        for u in &labels {
            if 2 * deg(u) <= self.n {
                let eu = self.basis_element(*u);
                let r = self.bracket(&eu, &eu).expect("degree guarded");
                if !r.is_zero() {
                    failures.push(Failure::Alternating { witness: *u });
                }
            }
        }

        for (ui, u) in labels.iter().enumerate() {
            for v in &labels[ui + 1..] {
                if deg(u) + deg(v) > self.n {
                    continue;
                }
                let eu = self.basis_element(*u);
                let ev = self.basis_element(*v);
                let uv = self.bracket(&eu, &ev).expect("degree guarded");
                let vu = self.bracket(&ev, &eu).expect("degree guarded");
                let sum = self
                    .tower
                    .add(higher_coeff(&uv), higher_coeff(&vu))
                    .expect("same tower");
                if !sum.is_zero() {
                    failures.push(Failure::Antisymmetry { witness: (*u, *v) });
                }
            }
        }

        for u in &labels {
            for (vi, v) in labels.iter().enumerate() {
                for w in &labels[vi + 1..] {
                    if deg(u) + deg(v) + deg(w) > self.n {
                        continue;
                    }
                    if !self.jacobi_holds(*u, *v, *w) {
                        failures.push(Failure::Jacobi {
                            witness: (*u, *v, *w),
                        });
                    }
                }
            }
        }

        for i in 2..=self.n - 1 {
            let (l, m) = self.adjoint_pair(i).expect("in range");
            if l.is_zero() && m.is_zero() {
                failures.push(Failure::MaximalClass { degree: i });
                continue;
            }
            let extracted = self.two_step_centraliser(i).expect("nondegenerate");
            if extracted != self.lines[i - 2] {
                failures.push(Failure::CentraliserMismatch { degree: i });
            }
        }

        let window = self.check_window();
        if let Some((first, start, len)) = window.violation {
            failures.push(Failure::Window {
                first_occurrence: first,
                window_start: start,
                window_len: len,
            });
        }

        let report = ValidationReport {
            ok: failures.is_empty(),
            failures,
        };
        self.status = if report.ok {
            Status::Validated
        } else {
            Status::Invalid(Box::new(report.clone()))
        };
        report
    }

    /// [u,[v,w]] = [[u,v],w] - [[u,w],v] on basis elements.
    pub fn jacobi_holds(&self, u: BasisLabel, v: BasisLabel, w: BasisLabel) -> bool {
        let eu = self.basis_element(u);
        let ev = self.basis_element(v);
        let ew = self.basis_element(w);
        let vw = self.bracket(&ev, &ew).expect("degree guarded");
        let lhs = self.bracket(&eu, &vw).expect("degree guarded");
        let uv = self.bracket(&eu, &ev).expect("degree guarded");
        let uw = self.bracket(&eu, &ew).expect("degree guarded");
        let r1 = self.bracket(&uv, &ew).expect("degree guarded");
        let r2 = self.bracket(&uw, &ev).expect("degree guarded");
        let rhs = self
            .tower
            .sub(higher_coeff(&r1), higher_coeff(&r2))
            .expect("same tower");
        *higher_coeff(&lhs) == rhs
    }
}

fn higher_coeff(e: &HomElement) -> &EElement {
    match e {
        HomElement::Higher { coeff, .. } => coeff,
        HomElement::Degree1 { .. } => unreachable!("brackets land in degree >= 2"),
    }
}

/// Output of the centraliser-sequence search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub sequences: Vec<Vec<CentraliserLine>>,
    pub exhausted: bool,
    pub examined: u64,
}

/// All projective points of P^1(E) in canonical encoding order; Ey sorts first.
pub fn projective_lines(tower: &FieldTower) -> Result<Vec<CentraliserLine>> {
    let d = tower
        .extension_degree()
        .ok_or(Error::UnsupportedInTranscendentalMode)?;
    let p = tower.p();
    let mut lines = vec![CentraliserLine::ey(tower)];
    let count = p.checked_pow(d as u32).expect("desk-scale field");
    for code in 0..count {
        let mut coeffs = vec![0u64; d];
        let mut c = code;
        for slot in coeffs.iter_mut() {
            *slot = c % p;
            c /= p;
        }
        let b = tower.element(&coeffs)?;
        lines.push(CentraliserLine { a: tower.one(), b });
    }
    lines.sort_by_key(|l| l.encoding());
    Ok(lines)
}

/// Depth-first enumeration of centraliser sequences of length N-2 over at most
/// `max_distinct` distinct lines, pruning any prefix whose partial validation
/// fails. Sequences come out in lexicographic order of line encodings.
pub fn search_sequences(
    tower: &FieldTower,
    n: usize,
    max_distinct: usize,
    budget: u64,
) -> Result<SearchOutcome> {
    if n < 3 {
        return Err(Error::TruncationTooSmall(n));
    }
    let candidates = projective_lines(tower)?;
    let mut outcome = SearchOutcome {
        sequences: Vec::new(),
        exhausted: false,
        examined: 0,
    };
    let mut prefix = vec![CentraliserLine::ey(tower)];
    dfs(
        tower,
        n,
        max_distinct,
        &candidates,
        &mut prefix,
        budget,
        &mut outcome,
    )?;
    Ok(outcome)
}

fn dfs(
    tower: &FieldTower,
    n: usize,
    max_distinct: usize,
    candidates: &[CentraliserLine],
    prefix: &mut Vec<CentraliserLine>,
    budget: u64,
    outcome: &mut SearchOutcome,
) -> Result<bool> {
    if outcome.examined >= budget {
        outcome.exhausted = true;
        return Ok(false);
    }
    outcome.examined += 1;

    let partial_n = prefix.len() + 2;
    let mut partial = MaxClassAlgebra::from_centralisers(tower, prefix, partial_n)?;
    if !partial.validate().ok {
        return Ok(true);
    }
    if prefix.len() == n - 2 {
        outcome.sequences.push(prefix.clone());
        return Ok(true);
    }

    let mut distinct: Vec<&CentraliserLine> = Vec::new();
    for line in prefix.iter() {
        if !distinct.contains(&line) {
            distinct.push(line);
        }
    }
    let allow_new = distinct.len() < max_distinct;
    let allowed: Vec<CentraliserLine> = candidates
        .iter()
        .filter(|c| allow_new || distinct.contains(c))
        .cloned()
        .collect();

    for line in allowed {
        prefix.push(line);
        let keep_going = dfs(tower, n, max_distinct, candidates, prefix, budget, outcome)?;
        prefix.pop();
        if !keep_going {
            return Ok(false);
        }
    }
    Ok(true)
}
