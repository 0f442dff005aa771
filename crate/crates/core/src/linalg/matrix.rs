use crate::error::{Error, Result};

use super::field::{Field, Regime, Scalar};
use super::subspace::Subspace;

/// Dense matrix over a single exact field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    cols: usize,
    rows: Vec<Vec<F::Elem>>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let zero = field.zero();
        Matrix {
            rows: vec![vec![zero; cols]; rows],
            field,
            cols,
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.rows[i][i] = m.field.one();
        }
        m
    }

    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                got: bad.len(),
            });
        }
        Ok(Matrix { field, cols, rows })
    }

    pub fn from_i64(field: F, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, cols, rows)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.rows[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.rows[r][c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<F::Elem>> {
        self.rows
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field.clone(), self.cols, self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                t.rows[j][i] = v.clone();
            }
        }
        t
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        check_same_field(&self.field, &other.field)?;
        if self.cols != other.cols {
            return Err(Error::AmbientMismatch(self.cols, other.cols));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Matrix {
            field: self.field.clone(),
            cols: self.cols,
            rows,
        })
    }

    pub fn rank(&self) -> usize {
        rref(&self.field, self.rows.clone(), self.cols).1.len()
    }

    pub fn row_space(&self) -> Subspace<F> {
        let (basis, pivots) = rref(&self.field, self.rows.clone(), self.cols);
        Subspace::from_rref(self.field.clone(), self.cols, basis, pivots)
    }

    /// Basis of `{ v : self * v = 0 }`, one vector per free column, in
    /// increasing free-column order.
    pub fn nullspace(&self) -> Vec<Vec<F::Elem>> {
        let (basis, pivots) = rref(&self.field, self.rows.clone(), self.cols);
        nullspace_from_rref(&self.field, self.cols, &basis, &pivots)
    }
}

pub(crate) fn check_same_field<F: Field>(a: &F, b: &F) -> Result<()> {
    if a != b {
        return Err(Error::RegimeMismatch(a.regime(), b.regime()));
    }
    Ok(())
}

/// Reduced row echelon form. Columns are scanned left to right; the pivot of
/// each column is the first remaining row (in input order) with a nonzero
/// entry there. Returns the nonzero rows and their pivot columns.
pub(crate) fn rref<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>, cols: usize) -> (Vec<Vec<F::Elem>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| !field.is_zero(&rows[r][c])) else {
            continue;
        };
        rows.swap(next, found);
        let inv = field.inv(&rows[next][c]).expect("pivot is nonzero");
        for v in rows[next][c..].iter_mut() {
            *v = field.mul(v, &inv);
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (v, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                field.mul_sub_assign(v, &factor, p);
            }
        }
        pivots.push(c);
        next += 1;
    }
    rows.truncate(next);
    (rows, pivots)
}

pub(crate) fn nullspace_from_rref<F: Field>(
    field: &F,
    cols: usize,
    basis: &[Vec<F::Elem>],
    pivots: &[usize],
) -> Vec<Vec<F::Elem>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); cols];
            v[free] = field.one();
            for (row, &p) in basis.iter().zip(pivots) {
                v[p] = field.neg(&row[free]);
            }
            v
        })
        .collect()
}

/// Rank of a matrix given as tagged scalars. All entries must share one
/// regime; an all-empty matrix has rank 0.
pub fn rank_scalars(rows: &[Vec<Scalar>]) -> Result<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut regime: Option<Regime> = None;
    for row in rows {
        if row.len() != cols {
            return Err(Error::DimensionMismatch {
                expected: cols,
                got: row.len(),
            });
        }
        for s in row {
            match regime {
                None => regime = Some(s.regime()),
                Some(r) if r != s.regime() => return Err(Error::RegimeMismatch(r, s.regime())),
                Some(_) => {}
            }
        }
    }
    match regime {
        None => Ok(0),
        Some(Regime::Rational) => {
            let data = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|s| match s {
                            Scalar::Rational(q) => q.clone(),
                            Scalar::ModP { .. } => unreachable!("regime checked"),
                        })
                        .collect()
                })
                .collect();
            Ok(Matrix::from_rows(super::Rationals, cols, data)?.rank())
        }
        Some(Regime::ModP(p)) => {
            let field = super::ModP::new(p)?;
            let data = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|s| match s {
                            Scalar::ModP { value, .. } => *value,
                            Scalar::Rational(_) => unreachable!("regime checked"),
                        })
                        .collect()
                })
                .collect();
            Ok(Matrix::from_rows(field, cols, data)?.rank())
        }
    }
}
