//! Finite-dimensional algebras with involution, stored as sparse integer
//! structure constants.

mod build;
pub mod matrices;
mod spec;
mod ut;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Rationals};

pub use build::{
    direct_sum, gamma_involution, mk_exchange, mk_symplectic, mk_transpose, tensor_nilpotent, zero_algebra,
};
pub use spec::AlgebraSpec;
pub use ut::{mk_ut_star, UTSpec};

/// A `*`-simple algebra of one of the three classical types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SimpleComponent {
    /// `M_k` with the transpose involution.
    Transpose { k: usize },
    /// `M_{2m}` with the symplectic involution.
    Symplectic { m: usize },
    /// `M_h ⊕ M_h^op` with the exchange involution.
    Exchange { h: usize },
}

impl SimpleComponent {
    pub fn validate(&self) -> Result<()> {
        let size = match *self {
            SimpleComponent::Transpose { k } => k,
            SimpleComponent::Symplectic { m } => m,
            SimpleComponent::Exchange { h } => h,
        };
        if size == 0 {
            return Err(Error::Spec(format!("{self} needs a positive size")));
        }
        Ok(())
    }

    /// Size of the matrices the component acts on.
    pub fn matrix_size(&self) -> usize {
        match *self {
            SimpleComponent::Transpose { k } => k,
            SimpleComponent::Symplectic { m } => 2 * m,
            SimpleComponent::Exchange { h } => h,
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            SimpleComponent::Transpose { k } => k * k,
            SimpleComponent::Symplectic { m } => 4 * m * m,
            SimpleComponent::Exchange { h } => 2 * h * h,
        }
    }

    pub fn symmetric_dim(&self) -> usize {
        match *self {
            SimpleComponent::Transpose { k } => k * (k + 1) / 2,
            SimpleComponent::Symplectic { m } => m * (2 * m - 1),
            SimpleComponent::Exchange { h } => h * h,
        }
    }

    pub fn skew_dim(&self) -> usize {
        self.dim() - self.symmetric_dim()
    }

    pub fn build(&self) -> Result<StarAlgebra> {
        match *self {
            SimpleComponent::Transpose { k } => mk_transpose(k),
            SimpleComponent::Symplectic { m } => mk_symplectic(m),
            SimpleComponent::Exchange { h } => mk_exchange(h),
        }
    }
}

impl std::fmt::Display for SimpleComponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SimpleComponent::Transpose { k } => write!(f, "(M_{k}, t)"),
            SimpleComponent::Symplectic { m } => write!(f, "(M_{}, s)", 2 * m),
            SimpleComponent::Exchange { h } => write!(f, "(M_{h} + M_{h}^op, exc)"),
        }
    }
}

/// Basis indices of the `*`-simple components and of the radical, when the
/// algebra was built from known pieces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Decomposition {
    pub components: Vec<(SimpleComponent, Vec<usize>)>,
    pub radical: Vec<usize>,
}

impl Decomposition {
    fn shifted(&self, offset: usize) -> Decomposition {
        Decomposition {
            components: self
                .components
                .iter()
                .map(|(c, idx)| (*c, idx.iter().map(|i| i + offset).collect()))
                .collect(),
            radical: self.radical.iter().map(|i| i + offset).collect(),
        }
    }
}

/// Sparse linear combination of basis elements.
pub type SparseVec = Vec<(usize, i64)>;

#[derive(Clone, Debug)]
pub struct StarAlgebra {
    dim: usize,
    /// `mult[i * dim + j]` = coordinates of `e_i e_j`
    mult: Vec<SparseVec>,
    /// `inv[i]` = coordinates of `e_i^*`
    inv: Vec<SparseVec>,
    unit: Option<Vec<i64>>,
    labels: Vec<String>,
    name: String,
    decomposition: Option<Decomposition>,
    symmetric: Vec<Vec<i64>>,
    skew: Vec<Vec<i64>>,
}

impl StarAlgebra {
    /// Assemble an algebra from structure constants. Checks that the
    /// involution squares to the identity; associativity and the
    /// anti-automorphism property are checked by [`StarAlgebra::verify_axioms`].
    pub fn from_parts(
        dim: usize,
        mult: Vec<SparseVec>,
        inv: Vec<SparseVec>,
        labels: Vec<String>,
        name: impl Into<String>,
    ) -> Result<StarAlgebra> {
        if mult.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: mult.len(),
            });
        }
        if inv.len() != dim || labels.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: inv.len().min(labels.len()),
            });
        }
        let out_of_range = mult.iter().chain(&inv).flatten().any(|&(k, _)| k >= dim);
        if out_of_range {
            return Err(Error::InvalidAlgebra("basis index out of range".into()));
        }
        let mut alg = StarAlgebra {
            dim,
            mult: mult.into_iter().map(normalize).collect(),
            inv: inv.into_iter().map(normalize).collect(),
            unit: None,
            labels,
            name: name.into(),
            decomposition: None,
            symmetric: Vec::new(),
            skew: Vec::new(),
        };
        for i in 0..dim {
            let back = alg.star(&alg.star(&alg.basis_vector(i)));
            if back.iter().enumerate().any(|(k, &c)| c != i64::from(k == i)) {
                return Err(Error::InvalidAlgebra(format!(
                    "involution does not square to the identity on {}",
                    alg.labels[i]
                )));
            }
        }
        alg.symmetric = alg.eigenbasis(1);
        alg.skew = alg.eigenbasis(-1);
        alg.unit = alg.find_unit();
        Ok(alg)
    }

    pub(crate) fn with_decomposition(mut self, d: Option<Decomposition>) -> Self {
        self.decomposition = d;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> Option<&[i64]> {
        self.unit.as_deref()
    }

    pub fn decomposition(&self) -> Option<&Decomposition> {
        self.decomposition.as_ref()
    }

    /// Coordinates of `e_i e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.mult[i * self.dim + j]
    }

    /// Coordinates of `e_i^*`.
    pub fn star_of(&self, i: usize) -> &[(usize, i64)] {
        &self.inv[i]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.dim];
        for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, &y) in b.iter().enumerate().filter(|(_, y)| **y != 0) {
                for &(k, c) in self.product(i, j) {
                    out[k] += x * y * c;
                }
            }
        }
        out
    }

    pub fn star(&self, a: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.dim];
        for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
            for &(k, c) in &self.inv[i] {
                out[k] += x * c;
            }
        }
        out
    }

    /// Primitive integer basis of the symmetric elements (`a* = a`).
    pub fn symmetric_basis(&self) -> &[Vec<i64>] {
        &self.symmetric
    }

    /// Primitive integer basis of the skew elements (`a* = -a`).
    pub fn skew_basis(&self) -> &[Vec<i64>] {
        &self.skew
    }

    pub fn format_element(&self, a: &[i64]) -> String {
        let mut out = String::new();
        for (i, &c) in a.iter().enumerate().filter(|(_, c)| **c != 0) {
            let sign = if c < 0 { "-" } else { "+" };
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if c.abs() != 1 {
                out.push_str(&format!("{}*", c.abs()));
            }
            out.push_str(&self.labels[i]);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Checks associativity on all basis triples and that the involution is
    /// an involutive anti-automorphism on all basis pairs.
    pub fn verify_axioms(&self) -> Result<()> {
        let d = self.dim;
        let mut left = vec![0i64; d];
        let mut right = vec![0i64; d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    left.iter_mut().for_each(|x| *x = 0);
                    right.iter_mut().for_each(|x| *x = 0);
                    for &(l, c) in self.product(i, j) {
                        for &(m, c2) in self.product(l, k) {
                            left[m] += c * c2;
                        }
                    }
                    for &(l, c) in self.product(j, k) {
                        for &(m, c2) in self.product(i, l) {
                            right[m] += c * c2;
                        }
                    }
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "not associative on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        for i in 0..d {
            let ei = self.basis_vector(i);
            if self.star(&self.star(&ei)) != ei {
                return Err(Error::InvalidAlgebra(format!(
                    "involution not involutive on {}",
                    self.labels[i]
                )));
            }
            for j in 0..d {
                let ej = self.basis_vector(j);
                let lhs = self.star(&self.mul(&ei, &ej));
                let rhs = self.mul(&self.star(&ej), &self.star(&ei));
                if lhs != rhs {
                    return Err(Error::InvalidAlgebra(format!(
                        "involution is not an anti-automorphism on ({}, {})",
                        self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Relabel the basis by `perm` (new index of old basis element `i` is
    /// `perm[i]`).
    pub fn permute_basis(&self, perm: &[usize]) -> Result<StarAlgebra> {
        let d = self.dim;
        let mut seen = vec![false; d];
        if perm.len() != d || perm.iter().any(|&p| p >= d || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidArgument("not a permutation of the basis".into()));
        }
        let map = |v: &[(usize, i64)]| v.iter().map(|&(k, c)| (perm[k], c)).collect::<SparseVec>();
        let mut mult = vec![Vec::new(); d * d];
        let mut inv = vec![Vec::new(); d];
        let mut labels = vec![String::new(); d];
        for i in 0..d {
            inv[perm[i]] = map(&self.inv[i]);
            labels[perm[i]] = self.labels[i].clone();
            for j in 0..d {
                mult[perm[i] * d + perm[j]] = map(self.product(i, j));
            }
        }
        let decomposition = self.decomposition.as_ref().map(|dec| Decomposition {
            components: dec
                .components
                .iter()
                .map(|(c, idx)| (*c, idx.iter().map(|&i| perm[i]).collect()))
                .collect(),
            radical: dec.radical.iter().map(|&i| perm[i]).collect(),
        });
        Ok(StarAlgebra::from_parts(d, mult, inv, labels, self.name.clone())?.with_decomposition(decomposition))
    }

    fn eigenbasis(&self, sign: i64) -> Vec<Vec<i64>> {
        let q = Rationals;
        let rows: Vec<Vec<BigRational>> = (0..self.dim)
            .map(|i| {
                let mut r = vec![q.zero(); self.dim];
                r[i] = q.from_i64(1);
                for &(k, c) in &self.inv[i] {
                    r[k] = q.add(&r[k], &q.from_i64(sign * c));
                }
                r
            })
            .collect();
        let space = Matrix::from_rows(q, self.dim, rows).expect("square rows").row_space();
        space.basis().iter().map(|r| primitive(r)).collect()
    }

    fn find_unit(&self) -> Option<Vec<i64>> {
        // a unit satisfies u e_j = e_j for all j; solve the linear system
        // over Q and check integrality
        let d = self.dim;
        if d == 0 {
            return None;
        }
        let q = Rationals;
        // unknown u = Σ u_i e_i; equation (j, k): Σ_i u_i c_{ij}^k = δ_jk, and
        // similarly for right multiplication
        let mut rows = Vec::new();
        for j in 0..d {
            for side in 0..2 {
                let mut eq = vec![vec![q.zero(); d + 1]; d];
                for i in 0..d {
                    let prod = if side == 0 {
                        self.product(i, j)
                    } else {
                        self.product(j, i)
                    };
                    for &(k, c) in prod {
                        eq[k][i] = q.add(&eq[k][i], &q.from_i64(c));
                    }
                }
                eq[j][d] = q.from_i64(-1);
                rows.extend(eq);
            }
        }
        let m = Matrix::from_rows(q, d + 1, rows).expect("rows");
        let null = m.nullspace();
        // solutions have last coordinate 1
        let v = null.iter().find(|v| !v[d].is_zero())?;
        let scale = v[d].clone();
        let mut out = Vec::with_capacity(d);
        for x in &v[..d] {
            let y = x / &scale;
            if !y.is_integer() {
                return None;
            }
            out.push(y.to_integer().to_i64()?);
        }
        (self.mul(&out, &out) == out).then_some(out)
    }
}

fn normalize(v: SparseVec) -> SparseVec {
    let mut acc = std::collections::BTreeMap::new();
    for (k, c) in v {
        *acc.entry(k).or_insert(0) += c;
    }
    acc.into_iter().filter(|&(_, c)| c != 0).collect()
}

/// Scale a rational vector to a primitive integer vector with positive
/// leading entry.
fn primitive(v: &[BigRational]) -> Vec<i64> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        g = BigInt::one();
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    ints.iter()
        .map(|x| (x / &g).to_i64().expect("small coordinates"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label_set(a: &StarAlgebra, basis: &[Vec<i64>]) -> Vec<String> {
        basis.iter().map(|v| a.format_element(v)).collect()
    }

    #[test]
    fn transpose_bases() {
        let a = mk_transpose(2).unwrap();
        assert_eq!(label_set(&a, a.symmetric_basis()), ["e11", "e12 + e21", "e22"]);
        assert_eq!(label_set(&a, a.skew_basis()), ["e12 - e21"]);
        assert_eq!(a.unit(), Some(&[1, 0, 0, 1][..]));
        let one = mk_transpose(1).unwrap();
        assert!(one.skew_basis().is_empty());
        let three = mk_transpose(3).unwrap();
        assert_eq!((three.symmetric_basis().len(), three.skew_basis().len()), (6, 3));
    }

    #[test]
    fn symplectic_bases() {
        let a = mk_symplectic(1).unwrap();
        assert_eq!(label_set(&a, a.symmetric_basis()), ["e11 + e22"]);
        assert_eq!(a.skew_basis().len(), 3);
        let skew = label_set(&a, a.skew_basis());
        assert!(skew.contains(&"e12".to_string()));
        let b = mk_symplectic(2).unwrap();
        assert_eq!((b.symmetric_basis().len(), b.skew_basis().len()), (6, 10));
    }

    #[test]
    fn exchange_bases_and_product() {
        let a = mk_exchange(1).unwrap();
        assert_eq!(a.symmetric_basis(), &[vec![1, 1]]);
        assert_eq!(a.skew_basis(), &[vec![1, -1]]);
        let b = mk_exchange(2).unwrap();
        assert_eq!((b.symmetric_basis().len(), b.skew_basis().len()), (4, 4));
        // (a, b)(c, d) = (ac, db) on units
        let h = 2;
        let unit = |p: usize, q: usize| p * h + q;
        for p in 0..h {
            for q in 0..h {
                for r in 0..h {
                    for s in 0..h {
                        let left = b.product(h * h + unit(p, q), h * h + unit(r, s));
                        let expected: SparseVec = if s == p { vec![(h * h + unit(r, q), 1)] } else { vec![] };
                        assert_eq!(left, expected.as_slice());
                        let direct = b.product(unit(p, q), unit(r, s));
                        let expected: SparseVec = if q == r { vec![(unit(p, s), 1)] } else { vec![] };
                        assert_eq!(direct, expected.as_slice());
                    }
                }
            }
        }
    }

    #[test]
    fn dimension_formulas() {
        for s in 1..=4 {
            for c in [
                SimpleComponent::Transpose { k: s },
                SimpleComponent::Symplectic { m: s },
                SimpleComponent::Exchange { h: s },
            ] {
                let a = c.build().unwrap();
                assert_eq!(a.dim(), c.dim());
                assert_eq!(a.symmetric_basis().len(), c.symmetric_dim(), "{c}");
                assert_eq!(a.skew_basis().len(), c.skew_dim(), "{c}");
            }
        }
    }

    #[test]
    fn constructors_satisfy_axioms() {
        for s in 1..=3 {
            mk_transpose(s).unwrap().verify_axioms().unwrap();
            mk_exchange(s).unwrap().verify_axioms().unwrap();
        }
        mk_symplectic(1).unwrap().verify_axioms().unwrap();
        mk_symplectic(2).unwrap().verify_axioms().unwrap();
    }

    #[test]
    fn rejects_non_involutive_raw_data() {
        // e0* = e1, e1* = e1
        let err = StarAlgebra::from_parts(
            2,
            vec![vec![]; 4],
            vec![vec![(1, 1)], vec![(1, 1)]],
            vec!["a".into(), "b".into()],
            "raw",
        );
        assert!(matches!(err, Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn non_associative_data_is_reported() {
        // e0 e0 = e1, e0 e1 = e0, everything else zero: (e0 e0) e0 = 0 but e0 (e0 e0) = e0
        let mut mult = vec![vec![]; 4];
        mult[0] = vec![(1, 1)];
        mult[1] = vec![(0, 1)];
        let a = StarAlgebra::from_parts(
            2,
            mult,
            vec![vec![(0, 1)], vec![(1, 1)]],
            vec!["a".into(), "b".into()],
            "raw",
        )
        .unwrap();
        assert!(a.verify_axioms().is_err());
    }

    #[test]
    fn permuting_the_basis_keeps_axioms() {
        let a = mk_transpose(2).unwrap();
        let b = a.permute_basis(&[3, 1, 0, 2]).unwrap();
        b.verify_axioms().unwrap();
        assert_eq!(b.symmetric_basis().len(), 3);
        assert!(a.permute_basis(&[0, 0, 1, 2]).is_err());
    }
}
