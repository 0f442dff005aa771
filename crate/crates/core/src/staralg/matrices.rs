//! Sparse integer matrices and the construction of a `*`-algebra from a
//! spanning set of matrices closed under product and an involution.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Field, Rationals};

/// Sparse square integer matrix of a fixed size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    pub size: usize,
    pub entries: BTreeMap<(usize, usize), i64>,
}

impl SparseMat {
    pub fn zero(size: usize) -> Self {
        SparseMat {
            size,
            entries: BTreeMap::new(),
        }
    }

    /// Matrix unit `e_{pq}` (0-based).
    pub fn unit(size: usize, p: usize, q: usize) -> Self {
        let mut m = Self::zero(size);
        m.entries.insert((p, q), 1);
        m
    }

    pub fn add_entry(&mut self, p: usize, q: usize, v: i64) {
        let e = self.entries.entry((p, q)).or_insert(0);
        *e += v;
        if *e == 0 {
            self.entries.remove(&(p, q));
        }
    }

    pub fn map_entries(&self, size: usize, f: impl Fn(usize, usize, i64) -> (usize, usize, i64)) -> Self {
        let mut m = Self::zero(size);
        for (&(p, q), &v) in &self.entries {
            let (r, c, w) = f(p, q, v);
            m.add_entry(r, c, w);
        }
        m
    }

    pub fn transpose(&self) -> Self {
        self.map_entries(self.size, |p, q, v| (q, p, v))
    }

    /// Reflection along the secondary diagonal: `e_{pq} ↦ e_{d-q+1, d-p+1}`.
    pub fn gamma(&self) -> Self {
        let d = self.size;
        self.map_entries(d, |p, q, v| (d - 1 - q, d - 1 - p, v))
    }

    /// Symplectic involution on `M_{2m}`: `(A B; C D) ↦ (Dᵗ -Bᵗ; -Cᵗ Aᵗ)`.
    pub fn symplectic(&self) -> Self {
        let m = self.size / 2;
        self.map_entries(self.size, |p, q, v| {
            let (bp, lp) = (p / m, p % m);
            let (bq, lq) = (q / m, q % m);
            let sign = if bp == bq { 1 } else { -1 };
            // transpose inside the block, then move the block to (1-bq, 1-bp)
            ((1 - bq) * m + lq, (1 - bp) * m + lp, sign * v)
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.size);
        for (&(p, q), &a) in &self.entries {
            for (&(_, s), &b) in other.entries.range((q, 0)..(q + 1, 0)) {
                out.add_entry(p, s, a * b);
            }
        }
        out
    }

    /// Place `self` as the block starting at `(offset, offset)` inside a
    /// matrix of size `size`.
    pub fn embed(&self, size: usize, offset: usize) -> Self {
        self.map_entries(size, |p, q, v| (p + offset, q + offset, v))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(p, q), &v) in &other.entries {
            out.add_entry(p, q, v);
        }
        out
    }

    fn flat(&self) -> Vec<(usize, i64)> {
        self.entries
            .iter()
            .map(|(&(p, q), &v)| (p * self.size + q, v))
            .collect()
    }
}

/// Expresses matrices in coordinates of a fixed linearly independent family.
pub(crate) struct CoordinateSolver {
    size: usize,
    /// reduced rows: (pivot position in the flattened matrix, transform row
    /// giving that reduced row as a combination of the basis)
    pivots: Vec<(usize, Vec<BigRational>)>,
    basis: Vec<SparseMat>,
}

impl CoordinateSolver {
    pub fn new(basis: Vec<SparseMat>) -> Result<Self> {
        let size = basis.first().map_or(0, |b| b.size);
        let dim = basis.len();
        let flat_len = size * size;
        let q = Rationals;
        let rows: Vec<Vec<BigRational>> = basis
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let mut r = vec![q.zero(); flat_len + dim];
                for (k, v) in b.flat() {
                    r[k] = q.from_i64(v);
                }
                r[flat_len + i] = q.one();
                r
            })
            .collect();
        let reduced = crate::linalg::Matrix::from_rows(q, flat_len + dim, rows)?.row_space();
        let mut pivots = Vec::with_capacity(dim);
        for (row, &p) in reduced.basis().iter().zip(reduced.pivots()) {
            if p >= flat_len {
                return Err(Error::InvalidAlgebra("basis matrices are linearly dependent".into()));
            }
            pivots.push((p, row[flat_len..].to_vec()));
        }
        Ok(CoordinateSolver { size, pivots, basis })
    }

    /// Integer coordinates of `m`, or an error if `m` is outside the span or
    /// has non-integral coordinates.
    pub fn coords(&self, m: &SparseMat) -> Result<Vec<(usize, i64)>> {
        let dim = self.basis.len();
        let mut x = vec![BigRational::zero(); dim];
        for (pivot, transform) in &self.pivots {
            let v = m
                .entries
                .get(&(pivot / self.size, pivot % self.size))
                .copied()
                .unwrap_or(0);
            if v == 0 {
                continue;
            }
            let v = BigRational::from_integer(v.into());
            for (xi, t) in x.iter_mut().zip(transform) {
                *xi += &v * t;
            }
        }
        let mut out = Vec::new();
        let mut rebuilt = SparseMat::zero(self.size);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            if !xi.is_integer() {
                return Err(Error::InvalidAlgebra(format!("non-integral structure constant {xi}")));
            }
            let c = xi
                .to_integer()
                .to_i64()
                .ok_or_else(|| Error::InvalidAlgebra("structure constant overflow".into()))?;
            for (&(p, q), &v) in &self.basis[i].entries {
                rebuilt.add_entry(p, q, c * v);
            }
            out.push((i, c));
        }
        if rebuilt != *m {
            return Err(Error::InvalidAlgebra("matrix span is not closed".into()));
        }
        Ok(out)
    }
}

/// Structure constants and involution of the algebra spanned by `basis`,
/// which must be closed under product and under `involution`.
pub(crate) struct Realized {
    pub mult: Vec<Vec<(usize, i64)>>,
    pub inv: Vec<Vec<(usize, i64)>>,
}

pub(crate) fn realize(basis: &[SparseMat], involution: impl Fn(&SparseMat) -> SparseMat) -> Result<Realized> {
    let solver = CoordinateSolver::new(basis.to_vec())?;
    let mut mult = Vec::with_capacity(basis.len() * basis.len());
    for a in basis {
        for b in basis {
            mult.push(solver.coords(&a.mul(b))?);
        }
    }
    let inv = basis
        .iter()
        .map(|b| solver.coords(&involution(b)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Realized { mult, inv })
}
