//! Canonical exact linear algebra over F = GF(p) for F-subspaces of E^k.
//!
//! E^k is flattened to F^(k*edim) by concatenating the coefficient vectors of
//! the E-coordinates, coordinate 0 first. Every subspace is stored as a
//! reduced row echelon basis with no zero rows, so equality of subspaces is
//! equality of matrices.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fieldtower::{EElement, FieldTower, Subfield};
use crate::gfp;

/// The ambient space E^k over a fixed tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ambient {
    tower: FieldTower,
    k: usize,
}

impl Ambient {
    pub fn new(tower: FieldTower, k: usize) -> Self {
        Ambient { tower, k }
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Width of a flattened vector.
    pub fn width(&self) -> usize {
        self.k * self.tower.edim()
    }

    pub fn flatten(&self, point: &[EElement]) -> Vec<u64> {
        debug_assert_eq!(point.len(), self.k);
        let mut out = Vec::with_capacity(self.width());
        for e in point {
            out.extend_from_slice(e.coeffs());
        }
        out
    }

    pub fn unflatten(&self, row: &[u64]) -> Vec<EElement> {
        debug_assert_eq!(row.len(), self.width());
        let d = self.tower.edim();
        (0..self.k)
            .map(|i| {
                self.tower
                    .element(&row[i * d..(i + 1) * d])
                    .expect("flattened coordinates are already reduced")
            })
            .collect()
    }
}

/// An F-subspace of E^k in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FSubspace {
    ambient: Ambient,
    basis: Vec<Vec<u64>>,
}

/// Reduced row echelon form with pivots normalized to 1, rows ordered by
/// pivot column, zero rows dropped.
pub(crate) fn rref(p: u64, rows: &[Vec<u64>], width: usize) -> Vec<Vec<u64>> {
    let mut mat: Vec<Vec<u64>> = rows
        .iter()
        .filter(|r| r.iter().any(|&c| c != 0))
        .cloned()
        .collect();
    let mut pivot_row = 0usize;
    for col in 0..width {
        let Some(found) = (pivot_row..mat.len()).find(|&r| mat[r][col] != 0) else {
            continue;
        };
        mat.swap(pivot_row, found);
        let inv = gfp::inv(p, mat[pivot_row][col]);
        for c in mat[pivot_row].iter_mut() {
            *c = gfp::mul(p, *c, inv);
        }
        let pivot = mat[pivot_row].clone();
        for (r, row) in mat.iter_mut().enumerate() {
            if r == pivot_row || row[col] == 0 {
                continue;
            }
            let scale = row[col];
            for (c, v) in row.iter_mut().enumerate() {
                *v = gfp::sub(p, *v, gfp::mul(p, scale, pivot[c]));
            }
        }
        pivot_row += 1;
        if pivot_row == mat.len() {
            break;
        }
    }
    mat.truncate(pivot_row);
    mat
}

/// Basis of the solution space of the homogeneous system rows * x = 0,
/// returned in canonical form.
pub(crate) fn nullspace(p: u64, equations: &[Vec<u64>], unknowns: usize) -> Vec<Vec<u64>> {
    let reduced = rref(p, equations, unknowns);
    let mut pivot_cols = Vec::new();
    for row in &reduced {
        let col = row
            .iter()
            .position(|&c| c != 0)
            .expect("no zero rows in rref");
        pivot_cols.push(col);
    }
    let mut kernel = Vec::new();
    for free in 0..unknowns {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; unknowns];
        v[free] = 1;
        for (row, &col) in reduced.iter().zip(&pivot_cols) {
            v[col] = gfp::neg(p, row[free]);
        }
        kernel.push(v);
    }
    rref(p, &kernel, unknowns)
}

impl FSubspace {
    pub fn zero(ambient: Ambient) -> Self {
        FSubspace {
            ambient,
            basis: Vec::new(),
        }
    }

    /// F-span of points of E^k.
    pub fn span_elements(ambient: Ambient, points: &[Vec<EElement>]) -> Result<Self> {
        let mut rows = Vec::with_capacity(points.len());
        for point in points {
            if point.len() != ambient.k() {
                return Err(Error::AmbientMismatch);
            }
            for e in point {
                if e.coeffs().len() != ambient.tower().edim() {
                    return Err(Error::AmbientMismatch);
                }
            }
            rows.push(ambient.flatten(point));
        }
        Self::from_f_rows(ambient, &rows)
    }

    /// F-span of already-flattened rows.
    pub fn from_f_rows(ambient: Ambient, rows: &[Vec<u64>]) -> Result<Self> {
        let width = ambient.width();
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::AmbientMismatch);
        }
        let p = ambient.tower().p();
        let reduced: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|&c| c % p).collect())
            .collect();
        let basis = rref(p, &reduced, width);
        Ok(FSubspace { ambient, basis })
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn basis_points(&self) -> Vec<Vec<EElement>> {
        self.basis
            .iter()
            .map(|r| self.ambient.unflatten(r))
            .collect()
    }

    fn check_same_ambient(&self, other: &FSubspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    pub fn sum(&self, other: &FSubspace) -> Result<FSubspace> {
        self.check_same_ambient(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        FSubspace::from_f_rows(self.ambient.clone(), &rows)
    }

    /// Intersection by the Zassenhaus block construction.
    pub fn intersect(&self, other: &FSubspace) -> Result<FSubspace> {
        self.check_same_ambient(other)?;
        let width = self.ambient.width();
        let p = self.ambient.tower().p();
        let mut block: Vec<Vec<u64>> = Vec::with_capacity(self.rank() + other.rank());
        for row in &self.basis {
            let mut r = row.clone();
            r.extend_from_slice(row);
            block.push(r);
        }
        for row in &other.basis {
            let mut r = row.clone();
            r.extend(std::iter::repeat_n(0, width));
            block.push(r);
        }
        let reduced = rref(p, &block, 2 * width);
        let mut rows = Vec::new();
        for row in &reduced {
            if row[..width].iter().all(|&c| c == 0) {
                rows.push(row[width..].to_vec());
            }
        }
        FSubspace::from_f_rows(self.ambient.clone(), &rows)
    }

    /// Residual of a vector after eliminating against the basis. The result is
    /// zero exactly when the vector lies in the subspace, and the map is
    /// F-linear.
    pub fn residual(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.ambient.width() {
            return Err(Error::AmbientMismatch);
        }
        let p = self.ambient.tower().p();
        let mut r: Vec<u64> = v.iter().map(|&c| c % p).collect();
        for row in &self.basis {
            let col = row.iter().position(|&c| c != 0).expect("no zero rows");
            if r[col] == 0 {
                continue;
            }
            let scale = r[col];
            for (c, val) in r.iter_mut().enumerate() {
                *val = gfp::sub(p, *val, gfp::mul(p, scale, row[c]));
            }
        }
        Ok(r)
    }

    pub fn member(&self, v: &[u64]) -> Result<bool> {
        Ok(self.residual(v)?.iter().all(|&c| c == 0))
    }

    pub fn contains(&self, other: &FSubspace) -> Result<bool> {
        self.check_same_ambient(other)?;
        for row in &other.basis {
            if !self.member(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Smallest K-invariant subspace containing self, with a flag telling
    /// whether self was already K-invariant. One multiplication pass suffices
    /// because K is multiplicatively closed and contains 1.
    pub fn k_closure(&self, k: &Subfield) -> Result<(FSubspace, bool)> {
        if k.tower() != self.ambient.tower() {
            return Err(Error::TowerMismatch);
        }
        let tower = self.ambient.tower().clone();
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for beta in k.basis_elements() {
            for point in self.basis_points() {
                let scaled: Vec<EElement> = point
                    .iter()
                    .map(|c| tower.mul(&beta, c))
                    .collect::<Result<_>>()?;
                rows.push(self.ambient.flatten(&scaled));
            }
        }
        let closure = FSubspace::from_f_rows(self.ambient.clone(), &rows)?;
        let unchanged = closure == *self;
        Ok((closure, unchanged))
    }

    /// Dimension over K of a K-invariant subspace.
    pub fn dim_over(&self, k: &Subfield) -> Result<usize> {
        let (_, invariant) = self.k_closure(k)?;
        if !invariant {
            return Err(Error::NotKInvariant);
        }
        debug_assert_eq!(self.rank() % k.degree(), 0);
        Ok(self.rank() / k.degree())
    }
}

impl Serialize for FSubspace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("FSubspace", 2)?;
        s.serialize_field("ambient_k", &self.ambient.k())?;
        s.serialize_field("basis", &self.basis)?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> FieldTower {
        FieldTower::finite(2, &[1, 1, 1]).unwrap()
    }

    #[test]
    fn span_examples() {
        let t = gf4();
        let empty = FSubspace::span_elements(t.ambient(2), &[]).unwrap();
        assert_eq!(empty.rank(), 0);

        let s = FSubspace::span_elements(
            t.ambient(2),
            &[vec![t.one(), t.zero()], vec![t.alpha(), t.zero()]],
        )
        .unwrap();
        assert_eq!(s.rank(), 2);

        let dup = FSubspace::span_elements(
            t.ambient(2),
            &[vec![t.one(), t.zero()], vec![t.one(), t.zero()]],
        )
        .unwrap();
        assert_eq!(dup.rank(), 1);
    }

    #[test]
    fn ambient_mismatch_rejected() {
        let t = gf4();
        let a = FSubspace::span_elements(t.ambient(1), &[vec![t.one()]]).unwrap();
        let b = FSubspace::span_elements(t.ambient(2), &[vec![t.one(), t.zero()]]).unwrap();
        assert_eq!(a.sum(&b), Err(Error::AmbientMismatch));
        assert_eq!(
            FSubspace::span_elements(t.ambient(2), &[vec![t.one()]]),
            Err(Error::AmbientMismatch)
        );
    }

    #[test]
    fn sum_and_intersect_examples() {
        let t = gf4();
        let a = FSubspace::span_elements(t.ambient(1), &[vec![t.one()], vec![t.alpha()]]).unwrap();
        let zero = FSubspace::zero(t.ambient(1));
        assert_eq!(a.sum(&zero).unwrap(), a);
        assert_eq!(a.intersect(&a).unwrap(), a);

        let line = FSubspace::span_elements(t.ambient(1), &[vec![t.alpha()]]).unwrap();
        let meet = a.intersect(&line).unwrap();
        assert_eq!(meet, line);
        assert_eq!(meet.rank(), 1);
    }

    #[test]
    fn membership_and_containment() {
        let t = gf4();
        let a = FSubspace::span_elements(t.ambient(1), &[vec![t.one()], vec![t.alpha()]]).unwrap();
        assert!(a.member(&[0, 0]).unwrap());
        let line =
            FSubspace::span_elements(t.ambient(1), &[vec![t.element(&[1, 1]).unwrap()]]).unwrap();
        assert!(a.contains(&line).unwrap());
        assert!(!line.contains(&a).unwrap());
    }

    #[test]
    fn k_closure_examples() {
        let t = gf4();
        let e = Subfield::full(&t).unwrap();
        let f = Subfield::prime(&t).unwrap();

        let line = FSubspace::span_elements(t.ambient(1), &[vec![t.one()]]).unwrap();
        let (cl, was) = line.k_closure(&f).unwrap();
        assert_eq!(cl, line);
        assert!(was);

        let (cl, was) = line.k_closure(&e).unwrap();
        assert_eq!(cl.rank(), 2);
        assert!(!was);

        let plane =
            FSubspace::span_elements(t.ambient(1), &[vec![t.one()], vec![t.alpha()]]).unwrap();
        let (cl, was) = plane.k_closure(&e).unwrap();
        assert_eq!(cl, plane);
        assert!(was);
    }

    #[test]
    fn dim_over_examples() {
        let t = gf4();
        let e = Subfield::full(&t).unwrap();
        let f = Subfield::prime(&t).unwrap();

        let full_line =
            FSubspace::span_elements(t.ambient(1), &[vec![t.one()], vec![t.alpha()]]).unwrap();
        assert_eq!(full_line.dim_over(&f).unwrap(), 2);
        assert_eq!(full_line.dim_over(&e).unwrap(), 1);

        let e2 = FSubspace::span_elements(
            t.ambient(2),
            &[
                vec![t.one(), t.zero()],
                vec![t.alpha(), t.zero()],
                vec![t.zero(), t.one()],
                vec![t.zero(), t.alpha()],
            ],
        )
        .unwrap();
        assert_eq!(e2.rank(), 4);
        assert_eq!(e2.dim_over(&e).unwrap(), 2);

        let line = FSubspace::span_elements(t.ambient(1), &[vec![t.one()]]).unwrap();
        assert_eq!(line.dim_over(&e), Err(Error::NotKInvariant));
    }

    #[test]
    fn nullspace_solves_small_system() {
        // over GF(2): x0 + x2 = 0, x1 = 0 -> kernel spanned by (1,0,1)
        let eqs = vec![vec![1, 0, 1], vec![0, 1, 0]];
        let ker = nullspace(2, &eqs, 3);
        assert_eq!(ker, vec![vec![1, 0, 1]]);
    }
}
