use crate::error::{Error, Result};

use super::matrices::{realize, SparseMat};
use super::{Decomposition, SimpleComponent, SparseVec, StarAlgebra};

fn matrix_units(d: usize) -> Vec<SparseMat> {
    (0..d * d).map(|k| SparseMat::unit(d, k / d, k % d)).collect()
}

fn unit_labels(d: usize) -> Vec<String> {
    let sep = if d > 9 { "," } else { "" };
    (0..d * d)
        .map(|k| format!("e{}{sep}{}", k / d + 1, k % d + 1))
        .collect()
}

fn simple(
    component: SimpleComponent,
    basis: Vec<SparseMat>,
    labels: Vec<String>,
    involution: impl Fn(&SparseMat) -> SparseMat,
) -> Result<StarAlgebra> {
    component.validate()?;
    let r = realize(&basis, involution)?;
    let dim = basis.len();
    let alg = StarAlgebra::from_parts(dim, r.mult, r.inv, labels, component.to_string())?;
    Ok(alg.with_decomposition(Some(Decomposition {
        components: vec![(component, (0..dim).collect())],
        radical: vec![],
    })))
}

/// `M_k` with the transpose involution; basis `e_pq` row-major.
pub fn mk_transpose(k: usize) -> Result<StarAlgebra> {
    simple(
        SimpleComponent::Transpose { k },
        matrix_units(k),
        unit_labels(k),
        SparseMat::transpose,
    )
}

/// `M_{2m}` with the symplectic involution; basis `e_pq` row-major.
pub fn mk_symplectic(m: usize) -> Result<StarAlgebra> {
    simple(
        SimpleComponent::Symplectic { m },
        matrix_units(2 * m),
        unit_labels(2 * m),
        SparseMat::symplectic,
    )
}

/// `M_h ⊕ M_h^op` with `(a, b)* = (b, a)`. Basis `(e_pq, 0)` row-major, then
/// `(0, e_pq)` row-major.
pub fn mk_exchange(h: usize) -> Result<StarAlgebra> {
    // realized inside M_{2h} as diag(a, bᵗ), where the involution becomes
    // diag(X, Y) ↦ diag(Yᵗ, Xᵗ)
    let units = matrix_units(h);
    let mut basis: Vec<SparseMat> = units.iter().map(|e| e.embed(2 * h, 0)).collect();
    basis.extend(units.iter().map(|e| e.transpose().embed(2 * h, h)));
    let labels = unit_labels(h);
    let mut all_labels: Vec<String> = labels.iter().map(|l| format!("({l},0)")).collect();
    all_labels.extend(labels.iter().map(|l| format!("(0,{l})")));
    let swap = move |m: &SparseMat| {
        m.map_entries(
            2 * h,
            |p, q, v| if p < h { (q + h, p + h, v) } else { (q - h, p - h, v) },
        )
    };
    simple(SimpleComponent::Exchange { h }, basis, all_labels, swap)
}

/// The reflection `γ_d` of `M_d` along the secondary diagonal, as a
/// `d² × d²` integer matrix whose row `i` holds the coordinates of
/// `γ_d(e_i)` in the row-major unit basis.
pub fn gamma_involution(d: usize) -> Result<Vec<Vec<i64>>> {
    if d == 0 {
        return Err(Error::InvalidArgument("gamma needs d >= 1".into()));
    }
    Ok(matrix_units(d)
        .iter()
        .map(|e| {
            let mut row = vec![0; d * d];
            for (&(p, q), &v) in &e.gamma().entries {
                row[p * d + q] = v;
            }
            row
        })
        .collect())
}

/// The zero algebra.
pub fn zero_algebra() -> StarAlgebra {
    StarAlgebra::from_parts(0, vec![], vec![], vec![], "0")
        .expect("zero algebra")
        .with_decomposition(Some(Decomposition::default()))
}

/// `A ⊕ B` with componentwise product and involution.
pub fn direct_sum(a: &StarAlgebra, b: &StarAlgebra) -> Result<StarAlgebra> {
    let (da, db) = (a.dim(), b.dim());
    let dim = da + db;
    let shift = |v: &[(usize, i64)], off: usize| v.iter().map(|&(k, c)| (k + off, c)).collect::<SparseVec>();
    let mut mult = vec![Vec::new(); dim * dim];
    for i in 0..da {
        for j in 0..da {
            mult[i * dim + j] = a.product(i, j).to_vec();
        }
    }
    for i in 0..db {
        for j in 0..db {
            mult[(i + da) * dim + j + da] = shift(b.product(i, j), da);
        }
    }
    let mut inv: Vec<SparseVec> = (0..da).map(|i| a.star_of(i).to_vec()).collect();
    inv.extend((0..db).map(|i| shift(b.star_of(i), da)));
    let mut labels: Vec<String> = a.labels().iter().map(|l| format!("{l}|")).collect();
    labels.extend(b.labels().iter().map(|l| format!("|{l}")));
    let decomposition = match (a.decomposition(), b.decomposition()) {
        (Some(x), Some(y)) => {
            let y = y.shifted(da);
            let mut d = x.clone();
            d.components.extend(y.components);
            d.radical.extend(y.radical);
            Some(d)
        }
        _ => None,
    };
    let name = format!("{} + {}", a.name(), b.name());
    Ok(StarAlgebra::from_parts(dim, mult, inv, labels, name)?.with_decomposition(decomposition))
}

/// `A ⊗ N^♯`, where `N` is commutative nilpotent with `N^{nil_index} = 0`,
/// spanned by `t, …, t^{nil_index-1}` and further square-zero generators
/// annihilating all of `N`. The involution is the identity on `N`.
pub fn tensor_nilpotent(a: &StarAlgebra, nil_dim: usize, nil_index: usize) -> Result<StarAlgebra> {
    if nil_index == 0 {
        return Err(Error::InvalidArgument("nilpotency index must be at least 1".into()));
    }
    if nil_index == 1 {
        if nil_dim != 0 {
            return Err(Error::InvalidArgument("nilpotency index 1 forces N = 0".into()));
        }
        return Ok(a.clone());
    }
    if nil_dim < nil_index - 1 {
        return Err(Error::InvalidArgument(format!(
            "N with N^{} = 0 but N^{} != 0 needs dimension at least {}",
            nil_index,
            nil_index - 1,
            nil_index - 1
        )));
    }
    // basis of N^♯: 0 = 1, 1..nil_index = powers of t, then extra generators
    let nb = nil_dim + 1;
    let powers = nil_index - 1;
    let nil_label = |j: usize| match j {
        0 => String::new(),
        1 => "t".to_string(),
        j if j <= powers => format!("t^{j}"),
        j => format!("s{}", j - powers),
    };
    let nil_product = |i: usize, j: usize| -> Option<usize> {
        match (i, j) {
            (0, j) => Some(j),
            (i, 0) => Some(i),
            (i, j) if i <= powers && j <= powers && i + j <= powers => Some(i + j),
            _ => None,
        }
    };
    let da = a.dim();
    let dim = da * nb;
    let mut mult = vec![Vec::new(); dim * dim];
    for i in 0..da {
        for j in 0..da {
            let ab = a.product(i, j);
            if ab.is_empty() {
                continue;
            }
            for u in 0..nb {
                for v in 0..nb {
                    if let Some(w) = nil_product(u, v) {
                        mult[(i * nb + u) * dim + j * nb + v] = ab.iter().map(|&(k, c)| (k * nb + w, c)).collect();
                    }
                }
            }
        }
    }
    let mut inv = Vec::with_capacity(dim);
    let mut labels = Vec::with_capacity(dim);
    for i in 0..da {
        for u in 0..nb {
            inv.push(a.star_of(i).iter().map(|&(k, c)| (k * nb + u, c)).collect());
            labels.push(match u {
                0 => a.labels()[i].clone(),
                u => format!("{}⊗{}", a.labels()[i], nil_label(u)),
            });
        }
    }
    let decomposition = a.decomposition().map(|d| Decomposition {
        components: d
            .components
            .iter()
            .map(|(c, idx)| (*c, idx.iter().map(|&i| i * nb).collect()))
            .collect(),
        radical: (0..da)
            .flat_map(|i| {
                let in_radical = d.radical.contains(&i);
                (0..nb).filter(move |&u| u > 0 || in_radical).map(move |u| i * nb + u)
            })
            .collect(),
    });
    let name = format!("{} x N(dim {nil_dim}, index {nil_index})", a.name());
    Ok(StarAlgebra::from_parts(dim, mult, inv, labels, name)?.with_decomposition(decomposition))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_sums_add_dimensions() {
        let f = mk_transpose(1).unwrap();
        let ff = direct_sum(&f, &f).unwrap();
        assert_eq!(ff.dim(), 2);
        assert!(ff.skew_basis().is_empty());
        assert_eq!(ff.unit(), Some(&[1, 1][..]));
        let s = direct_sum(&f, &mk_exchange(1).unwrap()).unwrap();
        assert_eq!(s.dim(), 3);
        assert_eq!((s.symmetric_basis().len(), s.skew_basis().len()), (2, 1));
        s.verify_axioms().unwrap();
        assert_eq!(s.decomposition().unwrap().components.len(), 2);
    }

    #[test]
    fn gamma_matrix() {
        assert_eq!(gamma_involution(1).unwrap(), vec![vec![1]]);
        let g = gamma_involution(2).unwrap();
        // e11 ↦ e22, e12 ↦ e12, e21 ↦ e21
        assert_eq!(g[0], [0, 0, 0, 1]);
        assert_eq!(g[1], [0, 1, 0, 0]);
        assert_eq!(g[2], [0, 0, 1, 0]);
        assert!(gamma_involution(0).is_err());
    }

    #[test]
    fn tensor_with_nilpotent() {
        let f = mk_transpose(1).unwrap();
        assert_eq!(tensor_nilpotent(&f, 0, 1).unwrap().dim(), 1);
        assert!(tensor_nilpotent(&f, 1, 1).is_err());
        assert!(tensor_nilpotent(&f, 1, 3).is_err());
        let ft = tensor_nilpotent(&f, 1, 2).unwrap();
        assert_eq!(ft.dim(), 2);
        assert_eq!(ft.symmetric_basis().len(), 2);
        assert_eq!(ft.product(1, 1), &[]);
        ft.verify_axioms().unwrap();
        let m2 = tensor_nilpotent(&mk_transpose(2).unwrap(), 3, 3).unwrap();
        assert_eq!(m2.dim(), 16);
        m2.verify_axioms().unwrap();
        let dec = m2.decomposition().unwrap();
        assert_eq!(dec.radical.len(), 12);
    }
}
