//! The extension tower F = GF(p) inside E, with exact element arithmetic and
//! the subring/subfield machinery built on it.
//!
//! Finite mode models E = F[a]/(m(a)) for a monic irreducible m of degree d.
//! Polynomial mode (used for transcendental extensions) tracks plain
//! polynomials in a up to a fixed degree cap and supports no division.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fsubspace::{Ambient, FSubspace};
use crate::{gfp, poly};

#[derive(Debug, Clone, PartialEq, Eq)]
enum TowerKind {
    Finite { minpoly: Vec<u64> },
    Transcendental { cap: usize },
}

/// The pair F = GF(p) inside E, carrying everything needed for element arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldTower {
    p: u64,
    kind: TowerKind,
}

/// An element of E as a reduced coefficient vector in a, low-to-high,
/// always stored at the full length `tower.edim()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct EElement {
    coeffs: Vec<u64>,
}

impl EElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl FieldTower {
    /// Finite mode: E = GF(p)[a]/(m(a)). The defining polynomial must be monic
    /// and irreducible; irreducibility is verified by trial division.
    pub fn finite(p: u64, minpoly: &[u64]) -> Result<Self> {
        if !gfp::is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        let minpoly: Vec<u64> = minpoly.iter().map(|&c| c % p).collect();
        match poly::degree(&minpoly) {
            Some(d) if d >= 1 && minpoly[d] == 1 && d + 1 == minpoly.len() => {}
            _ => return Err(Error::NonMonicPolynomial),
        }
        if let Err(factor_degree) = poly::is_irreducible(p, &minpoly) {
            return Err(Error::ReduciblePolynomial { factor_degree });
        }
        Ok(FieldTower {
            p,
            kind: TowerKind::Finite { minpoly },
        })
    }

    /// Polynomial mode: elements are polynomials in a of degree <= cap,
    /// with no defining relation and no inverses.
    pub fn transcendental(p: u64, cap: usize) -> Result<Self> {
        if !gfp::is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if cap == 0 {
            return Err(Error::DegreeCapExceeded { got: 0, cap: 0 });
        }
        Ok(FieldTower {
            p,
            kind: TowerKind::Transcendental { cap },
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_finite_mode(&self) -> bool {
        matches!(self.kind, TowerKind::Finite { .. })
    }

    /// Extension degree [E:F] in finite mode.
    pub fn extension_degree(&self) -> Option<usize> {
        match &self.kind {
            TowerKind::Finite { minpoly } => Some(minpoly.len() - 1),
            TowerKind::Transcendental { .. } => None,
        }
    }

    pub fn minpoly(&self) -> Option<&[u64]> {
        match &self.kind {
            TowerKind::Finite { minpoly } => Some(minpoly),
            TowerKind::Transcendental { .. } => None,
        }
    }

    pub fn cap(&self) -> Option<usize> {
        match &self.kind {
            TowerKind::Finite { .. } => None,
            TowerKind::Transcendental { cap } => Some(*cap),
        }
    }

    /// F-dimension of the coefficient space an element occupies: d in finite
    /// mode, cap+1 in polynomial mode. This is the flattening width.
    pub fn edim(&self) -> usize {
        match &self.kind {
            TowerKind::Finite { minpoly } => minpoly.len() - 1,
            TowerKind::Transcendental { cap } => cap + 1,
        }
    }

    pub fn zero(&self) -> EElement {
        EElement {
            coeffs: vec![0; self.edim()],
        }
    }

    pub fn one(&self) -> EElement {
        let mut coeffs = vec![0; self.edim()];
        coeffs[0] = 1 % self.p;
        EElement { coeffs }
    }

    /// The generator a of the extension. In finite degree 1 this is the image
    /// of a under the defining relation, i.e. a constant.
    pub fn alpha(&self) -> EElement {
        if self.edim() == 1 {
            // a is congruent to -m[0] modulo the degree-1 defining polynomial
            let c = match &self.kind {
                TowerKind::Finite { minpoly } => gfp::neg(self.p, minpoly[0]),
                TowerKind::Transcendental { .. } => unreachable!("cap >= 1"),
            };
            return EElement { coeffs: vec![c] };
        }
        let mut coeffs = vec![0; self.edim()];
        coeffs[1] = 1;
        EElement { coeffs }
    }

    pub fn scalar(&self, c: u64) -> EElement {
        let mut coeffs = vec![0; self.edim()];
        coeffs[0] = c % self.p;
        EElement { coeffs }
    }

    /// Canonicalize an arbitrary coefficient list into an element: coefficients
    /// are reduced mod p; in finite mode the polynomial is reduced mod the
    /// defining polynomial; in polynomial mode it must fit under the cap.
    pub fn element(&self, coeffs: &[u64]) -> Result<EElement> {
        let reduced: Vec<u64> = coeffs.iter().map(|&c| c % self.p).collect();
        match &self.kind {
            TowerKind::Finite { minpoly } => {
                let r = poly::rem(self.p, &reduced, minpoly);
                Ok(EElement { coeffs: r })
            }
            TowerKind::Transcendental { cap } => {
                if let Some(deg) = poly::degree(&reduced) {
                    if deg > *cap {
                        return Err(Error::DegreeCapExceeded {
                            got: deg,
                            cap: *cap,
                        });
                    }
                }
                let mut r = reduced;
                r.resize(cap + 1, 0);
                Ok(EElement { coeffs: r })
            }
        }
    }

    fn check_member(&self, a: &EElement) -> Result<()> {
        if a.coeffs.len() != self.edim() || a.coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::TowerMismatch);
        }
        Ok(())
    }

    pub fn add(&self, a: &EElement, b: &EElement) -> Result<EElement> {
        self.check_member(a)?;
        self.check_member(b)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| gfp::add(self.p, x, y))
            .collect();
        Ok(EElement { coeffs })
    }

    pub fn neg(&self, a: &EElement) -> Result<EElement> {
        self.check_member(a)?;
        Ok(EElement {
            coeffs: a.coeffs.iter().map(|&x| gfp::neg(self.p, x)).collect(),
        })
    }

    pub fn sub(&self, a: &EElement, b: &EElement) -> Result<EElement> {
        self.add(a, &self.neg(b)?)
    }

    pub fn mul(&self, a: &EElement, b: &EElement) -> Result<EElement> {
        self.check_member(a)?;
        self.check_member(b)?;
        let raw = poly::mul(self.p, &a.coeffs, &b.coeffs);
        match &self.kind {
            TowerKind::Finite { minpoly } => Ok(EElement {
                coeffs: poly::rem(self.p, &raw, minpoly),
            }),
            TowerKind::Transcendental { cap } => {
                if let Some(deg) = poly::degree(&raw) {
                    if deg > *cap {
                        return Err(Error::DegreeCapExceeded {
                            got: deg,
                            cap: *cap,
                        });
                    }
                }
                let mut r = raw;
                r.resize(cap + 1, 0);
                Ok(EElement { coeffs: r })
            }
        }
    }

    pub fn scalar_mul(&self, c: u64, a: &EElement) -> Result<EElement> {
        self.check_member(a)?;
        let c = c % self.p;
        Ok(EElement {
            coeffs: a.coeffs.iter().map(|&x| gfp::mul(self.p, x, c)).collect(),
        })
    }

    pub fn inv(&self, a: &EElement) -> Result<EElement> {
        self.check_member(a)?;
        let minpoly = match &self.kind {
            TowerKind::Finite { minpoly } => minpoly,
            TowerKind::Transcendental { .. } => return Err(Error::UnsupportedInTranscendentalMode),
        };
        match poly::inv_mod(self.p, &a.coeffs, minpoly) {
            Some(coeffs) => Ok(EElement { coeffs }),
            None => Err(Error::ZeroInverse),
        }
    }

    pub fn pow(&self, a: &EElement, mut exp: u64) -> Result<EElement> {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Ambient F-space of E^k.
    pub fn ambient(&self, k: usize) -> Ambient {
        Ambient::new(self.clone(), k)
    }
}

/// A multiplicatively closed F-subspace of E containing 1, i.e. a subfield.
/// The basis is kept in canonical reduced row echelon form over F.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subfield {
    space: FSubspace,
}

impl Subfield {
    pub fn tower(&self) -> &FieldTower {
        self.space.ambient().tower()
    }

    pub fn degree(&self) -> usize {
        self.space.rank()
    }

    pub fn space(&self) -> &FSubspace {
        &self.space
    }

    pub fn basis_elements(&self) -> Vec<EElement> {
        self.space
            .rows()
            .iter()
            .map(|row| EElement {
                coeffs: row.clone(),
            })
            .collect()
    }

    pub fn contains_element(&self, a: &EElement) -> Result<bool> {
        self.space.member(a.coeffs())
    }

    pub fn contains_subfield(&self, other: &Subfield) -> Result<bool> {
        self.space.contains(&other.space)
    }

    /// The prime field F as a subfield of E.
    pub fn prime(tower: &FieldTower) -> Result<Self> {
        if !tower.is_finite_mode() {
            return Err(Error::UnsupportedInTranscendentalMode);
        }
        let space = FSubspace::from_f_rows(tower.ambient(1), &[tower.one().coeffs().to_vec()])?;
        Ok(Subfield { space })
    }

    /// E itself as a subfield.
    pub fn full(tower: &FieldTower) -> Result<Self> {
        if !tower.is_finite_mode() {
            return Err(Error::UnsupportedInTranscendentalMode);
        }
        let d = tower.edim();
        let rows: Vec<Vec<u64>> = (0..d)
            .map(|i| {
                let mut r = vec![0; d];
                r[i] = 1;
                r
            })
            .collect();
        let space = FSubspace::from_f_rows(tower.ambient(1), &rows)?;
        Ok(Subfield { space })
    }

    /// Check the subfield axioms directly: contains 1, closed under products
    /// of basis elements, and degree divides [E:F].
    pub fn verify(&self) -> Result<bool> {
        let tower = self.tower().clone();
        if !self.contains_element(&tower.one())? {
            return Ok(false);
        }
        let basis = self.basis_elements();
        for a in &basis {
            for b in &basis {
                if !self.contains_element(&tower.mul(a, b)?)? {
                    return Ok(false);
                }
            }
        }
        let d = tower
            .extension_degree()
            .ok_or(Error::UnsupportedInTranscendentalMode)?;
        Ok(d % self.degree() == 0)
    }
}

/// Outcome of the stabilizer computation for U inside E^k: the set of scalars
/// carrying U into itself, which is always a subring of E and a subfield as
/// soon as U is a finite-dimensional subspace (or U = 0, where it is all of E).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerReport {
    pub ring: FSubspace,
    pub is_field: bool,
}

impl StabilizerReport {
    pub fn degree(&self) -> usize {
        self.ring.rank()
    }

    pub fn as_subfield(&self) -> Option<Subfield> {
        self.is_field.then(|| Subfield {
            space: self.ring.clone(),
        })
    }
}

/// E_U = {b in E : bU <= U}, computed by solving the F-linear conditions
/// b * u_j in U over a basis of U.
pub fn stabilizer(space: &FSubspace) -> Result<StabilizerReport> {
    let tower = space.ambient().tower().clone();
    if !tower.is_finite_mode() {
        return Err(Error::UnsupportedInTranscendentalMode);
    }
    let d = tower.edim();
    let p = tower.p();

    // Unknown b has d coordinates over F. For each basis vector u of U and each
    // monomial a^m, the residual of (a^m * u) against U is one block of linear
    // conditions on the coordinates of b.
    let mut equations: Vec<Vec<u64>> = Vec::new();
    for row in space.rows() {
        let u = space.ambient().unflatten(row);
        let mut residuals: Vec<Vec<u64>> = Vec::with_capacity(d);
        for m in 0..d {
            let am = tower.pow(&tower.alpha(), m as u64)?;
            let scaled: Vec<EElement> =
                u.iter().map(|c| tower.mul(&am, c)).collect::<Result<_>>()?;
            let flat = space.ambient().flatten(&scaled);
            residuals.push(space.residual(&flat)?);
        }
        let width = residuals[0].len();
        for coord in 0..width {
            let eq: Vec<u64> = residuals.iter().map(|r| r[coord]).collect();
            if eq.iter().any(|&c| c != 0) {
                equations.push(eq);
            }
        }
    }

    let kernel = crate::fsubspace::nullspace(p, &equations, d);
    let ring = FSubspace::from_f_rows(tower.ambient(1), &kernel)?;
    let candidate = Subfield {
        space: ring.clone(),
    };
    let is_field = candidate.verify()?;
    Ok(StabilizerReport { ring, is_field })
}

/// Smallest subfield of E containing the given elements and 1: repeatedly
/// adjoin pairwise products of basis elements until the span stabilizes.
/// Inverses come for free in a finite multiplicatively closed subspace with 1.
pub fn subfield_generated(tower: &FieldTower, elements: &[EElement]) -> Result<Subfield> {
    if !tower.is_finite_mode() {
        return Err(Error::UnsupportedInTranscendentalMode);
    }
    let mut rows: Vec<Vec<u64>> = vec![tower.one().coeffs().to_vec()];
    for e in elements {
        tower.check_member(e)?;
        rows.push(e.coeffs().to_vec());
    }
    let mut space = FSubspace::from_f_rows(tower.ambient(1), &rows)?;
    loop {
        let basis = space.rows().to_vec();
        let mut next_rows = basis.clone();
        for a in &basis {
            for b in &basis {
                let prod = tower.mul(
                    &EElement { coeffs: a.clone() },
                    &EElement { coeffs: b.clone() },
                )?;
                next_rows.push(prod.coeffs().to_vec());
            }
        }
        let next = FSubspace::from_f_rows(tower.ambient(1), &next_rows)?;
        if next.rank() == space.rank() {
            return Ok(Subfield { space });
        }
        space = next;
    }
}

/// Smallest subfield containing both arguments.
pub fn compositum(a: &Subfield, b: &Subfield) -> Result<Subfield> {
    if a.tower() != b.tower() {
        return Err(Error::TowerMismatch);
    }
    let mut elements = a.basis_elements();
    elements.extend(b.basis_elements());
    subfield_generated(a.tower(), &elements)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> FieldTower {
        FieldTower::finite(2, &[1, 1, 1]).unwrap()
    }

    fn gf16() -> FieldTower {
        FieldTower::finite(2, &[1, 1, 0, 0, 1]).unwrap()
    }

    #[test]
    fn make_tower_validates() {
        assert!(FieldTower::finite(2, &[1, 1, 1]).is_ok());
        assert_eq!(
            FieldTower::finite(2, &[1, 0, 1]),
            Err(Error::ReduciblePolynomial { factor_degree: 1 })
        );
        assert_eq!(
            FieldTower::finite(4, &[1, 1, 1]),
            Err(Error::NonPrimeCharacteristic(4))
        );
        assert_eq!(FieldTower::finite(2, &[1]), Err(Error::NonMonicPolynomial));
        assert_eq!(
            FieldTower::finite(2, &[1, 2]),
            Err(Error::NonMonicPolynomial)
        );
        assert!(FieldTower::transcendental(2, 16).is_ok());
        assert!(FieldTower::transcendental(2, 0).is_err());
    }

    #[test]
    fn gf4_multiplication_and_inverse() {
        let t = gf4();
        let a = t.alpha();
        // a * a = a + 1 after reduction mod a^2+a+1
        assert_eq!(t.mul(&a, &a).unwrap(), t.element(&[1, 1]).unwrap());
        // inv(a) = a + 1 since a(a+1) = 1
        assert_eq!(t.inv(&a).unwrap(), t.element(&[1, 1]).unwrap());
        assert_eq!(t.mul(&a, &t.inv(&a).unwrap()).unwrap(), t.one());
        assert_eq!(t.inv(&t.zero()), Err(Error::ZeroInverse));
    }

    #[test]
    fn additive_inverse_cancels() {
        let t = gf16();
        let x = t.element(&[1, 0, 1, 1]).unwrap();
        assert_eq!(t.add(&x, &t.neg(&x).unwrap()).unwrap(), t.zero());
    }

    #[test]
    fn every_nonzero_element_has_inverse() {
        let t = gf16();
        for code in 1u64..16 {
            let coeffs: Vec<u64> = (0..4).map(|i| (code >> i) & 1).collect();
            let a = t.element(&coeffs).unwrap();
            assert_eq!(t.mul(&a, &t.inv(&a).unwrap()).unwrap(), t.one());
        }
    }

    #[test]
    fn transcendental_cap_enforced() {
        let t = FieldTower::transcendental(2, 3).unwrap();
        let a = t.alpha();
        let a2 = t.mul(&a, &a).unwrap();
        let a3 = t.mul(&a2, &a).unwrap();
        assert_eq!(
            t.mul(&a3, &a),
            Err(Error::DegreeCapExceeded { got: 4, cap: 3 })
        );
        assert_eq!(t.inv(&a), Err(Error::UnsupportedInTranscendentalMode));
    }

    #[test]
    fn tower_mismatch_detected() {
        let t4 = gf4();
        let t16 = gf16();
        let a = t16.alpha();
        assert_eq!(t4.add(&a, &a), Err(Error::TowerMismatch));
    }

    /// Brute-force stabilizer: enumerate all of E and test bU <= U directly.
    fn stabilizer_bruteforce(space: &FSubspace) -> Vec<EElement> {
        let tower = space.ambient().tower().clone();
        let d = tower.edim();
        let p = tower.p();
        let count = p.pow(d as u32);
        let mut hits = Vec::new();
        'outer: for code in 0..count {
            let mut coeffs = vec![0u64; d];
            let mut c = code;
            for slot in coeffs.iter_mut() {
                *slot = c % p;
                c /= p;
            }
            let beta = tower.element(&coeffs).unwrap();
            for row in space.rows() {
                let u = space.ambient().unflatten(row);
                let scaled: Vec<EElement> =
                    u.iter().map(|x| tower.mul(&beta, x).unwrap()).collect();
                if !space.member(&space.ambient().flatten(&scaled)).unwrap() {
                    continue 'outer;
                }
            }
            hits.push(beta);
        }
        hits
    }

    #[test]
    fn stabilizer_of_prime_line_is_prime_field() {
        let t = gf4();
        let space = FSubspace::span_elements(t.ambient(1), &[vec![t.one()]]).unwrap();
        let report = stabilizer(&space).unwrap();
        assert_eq!(report.degree(), 1);
        assert!(report.is_field);
        assert_eq!(report.ring, Subfield::prime(&t).unwrap().space);
        let field = report.as_subfield().unwrap();
        let full = Subfield::full(&t).unwrap();
        assert!(full.contains_subfield(&field).unwrap());
        assert!(!field.contains_subfield(&full).unwrap());
    }

    #[test]
    fn stabilizer_of_zero_is_everything() {
        let t = gf4();
        let zero = FSubspace::zero(t.ambient(2));
        let report = stabilizer(&zero).unwrap();
        assert_eq!(report.degree(), 2);
        assert!(report.is_field);
    }

    #[test]
    fn stabilizer_matches_bruteforce_on_split_plane() {
        // U = F-span{(1,0),(0,1)} inside GF(4)^2; expected E_U = GF(2).
        let t = gf4();
        let space = FSubspace::span_elements(
            t.ambient(2),
            &[vec![t.one(), t.zero()], vec![t.zero(), t.one()]],
        )
        .unwrap();
        let report = stabilizer(&space).unwrap();
        let brute = stabilizer_bruteforce(&space);
        assert_eq!(brute.len(), 2); // {0, 1} = GF(2)
        for beta in &brute {
            if !beta.is_zero() {
                assert!(report.ring.member(beta.coeffs()).unwrap());
            }
        }
        assert_eq!(report.degree(), 1);
        assert_eq!(report.ring, Subfield::prime(&t).unwrap().space);
    }

    #[test]
    fn stabilizer_agrees_with_bruteforce_on_random_spaces() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let t = gf16();
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..40 {
            let rows: Vec<Vec<u64>> = (0..rng.random_range(1..=3))
                .map(|_| (0..8).map(|_| rng.random_range(0..2)).collect())
                .collect();
            let space = FSubspace::from_f_rows(t.ambient(2), &rows).unwrap();
            let report = stabilizer(&space).unwrap();
            let brute = stabilizer_bruteforce(&space);
            assert_eq!(1u64 << report.degree(), brute.len() as u64);
            for beta in &brute {
                assert!(
                    report.ring.member(beta.coeffs()).unwrap(),
                    "missing {beta:?}"
                );
            }
            assert!(report.is_field);
        }
    }

    #[test]
    fn subfield_generated_examples() {
        let t4 = gf4();
        let s = subfield_generated(&t4, &[t4.one()]).unwrap();
        assert_eq!(s.degree(), 1);
        let s = subfield_generated(&t4, &[t4.alpha()]).unwrap();
        assert_eq!(s.degree(), 2);

        // a^2 + a in GF(16) generates the quartic's unique quadratic subfield
        // {0, 1, a^2+a, a^2+a+1}: it squares to a^2+a+1, so the span of
        // {1, a^2+a} is multiplicatively closed.
        let t16 = gf16();
        let g = t16.element(&[0, 1, 1, 0]).unwrap();
        let sq = t16.mul(&g, &g).unwrap();
        assert_eq!(sq, t16.element(&[1, 1, 1, 0]).unwrap());
        let s = subfield_generated(&t16, std::slice::from_ref(&g)).unwrap();
        assert_eq!(s.degree(), 2);
        assert!(s.contains_element(&sq).unwrap());
        assert!(s.verify().unwrap());
    }

    #[test]
    fn compositum_of_quadratic_and_cubic_subfields_fills_gf64() {
        // GF(64) = GF(2)[a]/(a^6+a+1). a^21 has multiplicative order 3 and
        // generates the quadratic subfield; a^9 has order 7 and generates the
        // cubic one. Their compositum must be everything.
        let t = FieldTower::finite(2, &[1, 1, 0, 0, 0, 0, 1]).unwrap();
        let g2 = t.pow(&t.alpha(), 21).unwrap();
        let g3 = t.pow(&t.alpha(), 9).unwrap();
        assert_eq!(t.pow(&g2, 3).unwrap(), t.one());
        assert_eq!(t.pow(&g3, 7).unwrap(), t.one());
        let f2 = subfield_generated(&t, &[g2]).unwrap();
        let f3 = subfield_generated(&t, &[g3]).unwrap();
        assert_eq!(f2.degree(), 2);
        assert_eq!(f3.degree(), 3);
        let comp = compositum(&f2, &f3).unwrap();
        assert_eq!(comp.degree(), 6);

        // idempotence and absorption
        let f = Subfield::prime(&t).unwrap();
        assert_eq!(compositum(&f, &f).unwrap(), f);
        assert_eq!(compositum(&f, &f3).unwrap(), f3);
    }
}
