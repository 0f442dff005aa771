use crate::error::{Error, Result};

use super::field::Field;
use super::matrix::{check_same_field, nullspace_from_rref, rref, Matrix};

/// A subspace of `F^ambient`, stored as its reduced row echelon basis.
///
/// The reduced basis is canonical, so two subspaces are equal exactly when
/// their bases are equal entrywise.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    basis: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub(crate) fn from_rref(field: F, ambient: usize, basis: Vec<Vec<F::Elem>>, pivots: Vec<usize>) -> Self {
        Subspace {
            field,
            ambient,
            basis,
            pivots,
        }
    }

    pub fn zero(field: F, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: F, ambient: usize) -> Self {
        Matrix::identity(field, ambient).row_space()
    }

    /// Span of the given vectors.
    pub fn span(field: F, ambient: usize, vectors: Vec<Vec<F::Elem>>) -> Result<Self> {
        Ok(Matrix::from_rows(field, ambient, vectors)?.row_space())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn to_matrix(&self) -> Matrix<F> {
        Matrix::from_rows(self.field.clone(), self.ambient, self.basis.clone()).expect("basis rows have ambient length")
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        check_same_field(&self.field, &other.field)?;
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    /// Whether `v` lies in the subspace.
    pub fn contains_vector(&self, v: &[F::Elem]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::AmbientMismatch(self.ambient, v.len()));
        }
        let mut w = v.to_vec();
        reduce_against(&self.field, &mut w, &self.basis, &self.pivots);
        Ok(w.iter().all(|x| self.field.is_zero(x)))
    }

    /// Whether `other` is a subspace of `self`.
    pub fn contains(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        for row in &other.basis {
            if !self.contains_vector(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.basis == other.basis)
    }

    /// `self + other`
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        let (basis, pivots) = rref(&self.field, rows, self.ambient);
        Ok(Self::from_rref(self.field.clone(), self.ambient, basis, pivots))
    }

    /// `self ∩ other`, from the kernel of the stacked bases: every
    /// `(λ, μ)` with `λ·A + μ·B = 0` yields the common vector `λ·A`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = &self.field;
        let ra = self.basis.len();
        let stacked = Matrix::from_rows(
            f.clone(),
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned().collect(),
        )?;
        let kernel = stacked.transpose().nullspace();
        let vectors = kernel
            .iter()
            .map(|coeffs| {
                let mut v = vec![f.zero(); self.ambient];
                for (c, row) in coeffs[..ra].iter().zip(&self.basis) {
                    if f.is_zero(c) {
                        continue;
                    }
                    for (x, r) in v.iter_mut().zip(row) {
                        f.mul_add_assign(x, c, r);
                    }
                }
                v
            })
            .collect();
        Self::span(f.clone(), self.ambient, vectors)
    }

    /// Orthogonal complement under the standard bilinear form, i.e. the
    /// functionals vanishing on the subspace.
    pub fn annihilator(&self) -> Self {
        let vectors = nullspace_from_rref(&self.field, self.ambient, &self.basis, &self.pivots);
        let (basis, pivots) = rref(&self.field, vectors, self.ambient);
        Self::from_rref(self.field.clone(), self.ambient, basis, pivots)
    }
}

/// Subtract multiples of reduced basis rows so that `v` vanishes on every
/// pivot column.
fn reduce_against<F: Field>(field: &F, v: &mut [F::Elem], basis: &[Vec<F::Elem>], pivots: &[usize]) {
    for (row, &p) in basis.iter().zip(pivots) {
        if field.is_zero(&v[p]) {
            continue;
        }
        let factor = v[p].clone();
        for (x, r) in v[p..].iter_mut().zip(&row[p..]) {
            field.mul_sub_assign(x, &factor, r);
        }
    }
}

/// Incremental row reduction. Vectors are streamed in; the accumulator keeps
/// a fully reduced basis of their span, so memory is bounded by
/// `rank × ambient` however many vectors arrive.
#[derive(Clone, Debug)]
pub struct RowReducer<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> RowReducer<F> {
    pub fn new(field: F, ambient: usize) -> Self {
        RowReducer {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// Add `v` to the span. Returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<F::Elem>) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        let f = &self.field;
        reduce_against(f, &mut v, &self.rows, &self.pivots);
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[p]).expect("nonzero");
        for x in v[p..].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[p]) {
                continue;
            }
            let factor = row[p].clone();
            for (x, r) in row[p..].iter_mut().zip(&v[p..]) {
                f.mul_sub_assign(x, &factor, r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    /// Whether `v` already lies in the span.
    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        reduce_against(&self.field, &mut w, &self.rows, &self.pivots);
        w.iter().all(|x| self.field.is_zero(x))
    }

    pub fn into_subspace(self) -> Subspace<F> {
        Subspace::from_rref(self.field, self.ambient, self.rows, self.pivots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ModP, Rationals};

    fn span_q(rows: &[Vec<i64>]) -> Subspace<Rationals> {
        Matrix::from_i64(Rationals, rows[0].len(), rows).unwrap().row_space()
    }

    #[test]
    fn row_space_examples() {
        let s = span_q(&[vec![1, 0], vec![1, 1]]);
        assert_eq!(s.dim(), 2);
        assert_eq!(s.pivots(), &[0, 1]);
        assert_eq!(span_q(&[vec![1, 2], vec![2, 4]]).dim(), 1);
        let f7 = ModP::new(7).unwrap();
        let m = Matrix::from_i64(f7, 2, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(m.row_space().dim(), 1);
    }

    #[test]
    fn row_space_is_idempotent() {
        let s = span_q(&[vec![2, 4, 1], vec![1, 2, 3], vec![3, 6, 4]]);
        assert_eq!(s.to_matrix().row_space(), s);
    }

    #[test]
    fn intersections() {
        let x = span_q(&[vec![1, 0]]);
        let y = span_q(&[vec![0, 1]]);
        assert_eq!(x.intersect(&y).unwrap().dim(), 0);
        assert!(x.intersect(&x).unwrap().equals(&x).unwrap());
        let plane = span_q(&[vec![1, 0], vec![0, 1]]);
        let diag = span_q(&[vec![1, 1]]);
        assert!(plane.intersect(&diag).unwrap().equals(&diag).unwrap());
    }

    #[test]
    fn containment_and_equality() {
        let v = span_q(&[vec![1, 2, 0], vec![0, 0, 1]]);
        assert!(v.equals(&v).unwrap());
        let full = Subspace::full(Rationals, 3);
        assert!(full.contains(&v).unwrap());
        assert!(!span_q(&[vec![1, 1]]).equals(&span_q(&[vec![1, 0]])).unwrap());
        assert!(!span_q(&[vec![1, 1]]).contains(&span_q(&[vec![1, 0]])).unwrap());
    }

    #[test]
    fn ambient_mismatch() {
        let a = span_q(&[vec![1, 0]]);
        let b = span_q(&[vec![1, 0, 0]]);
        assert!(matches!(a.intersect(&b), Err(Error::AmbientMismatch(2, 3))));
        assert!(a.contains(&b).is_err());
        assert!(a.equals(&b).is_err());
    }

    #[test]
    fn reducer_matches_batch_rref() {
        let rows = vec![vec![0, 1, 1, 2], vec![1, 1, 0, 0], vec![1, 2, 1, 2], vec![0, 0, 0, 5]];
        let mut red = RowReducer::new(Rationals, 4);
        for r in &rows {
            red.insert(r.iter().map(|&v| Rationals.from_i64(v)).collect());
        }
        assert_eq!(red.rank(), 3);
        assert_eq!(red.into_subspace(), span_q(&rows));
    }

    #[test]
    fn annihilator_dimension() {
        let s = span_q(&[vec![1, 1, 0, 0]]);
        let ann = s.annihilator();
        assert_eq!(ann.dim(), 3);
        assert_eq!(ann.annihilator(), s);
    }
}
