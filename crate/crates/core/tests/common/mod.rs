#![allow(dead_code)]

use num_rational::BigRational;
use proptest::prelude::*;
use starpi::freealg::{perm, MLPoly, Var, VarKind};
use starpi::staralg::{
    direct_sum, mk_exchange, mk_symplectic, mk_transpose, mk_ut_star, tensor_nilpotent, SimpleComponent, StarAlgebra,
    UTSpec,
};

/// Small algebras with a mix of symmetric, skew and nilpotent parts.
pub fn algebra_pool() -> Vec<StarAlgebra> {
    let f = mk_transpose(1).unwrap();
    let t1 = SimpleComponent::Transpose { k: 1 };
    vec![
        f.clone(),
        mk_transpose(2).unwrap(),
        mk_exchange(1).unwrap(),
        mk_symplectic(1).unwrap(),
        mk_ut_star(&UTSpec::new(vec![t1, t1]).unwrap()).unwrap(),
        mk_ut_star(&UTSpec::new(vec![SimpleComponent::Exchange { h: 1 }]).unwrap()).unwrap(),
        tensor_nilpotent(&f, 2, 3).unwrap(),
        direct_sum(&f, &mk_exchange(1).unwrap()).unwrap(),
    ]
}

pub fn arb_algebra() -> impl Strategy<Value = StarAlgebra> {
    let pool = algebra_pool();
    (0..pool.len()).prop_map(move |i| pool[i].clone())
}

pub fn arb_kind() -> impl Strategy<Value = VarKind> {
    prop_oneof![Just(VarKind::Symmetric), Just(VarKind::Skew), Just(VarKind::General)]
}

/// Multilinear polynomials of degree 1..=max_degree with small integer
/// coefficients on a random subset of the monomials.
pub fn arb_poly(max_degree: usize) -> impl Strategy<Value = MLPoly> {
    proptest::collection::vec(arb_kind(), 1..=max_degree).prop_flat_map(|kinds| {
        let d = kinds.len();
        let monos = perm::factorial(d);
        proptest::collection::vec(-2i64..=2, monos).prop_map(move |coeffs| {
            let mut counters = [0usize; 3];
            let vars: Vec<Var> = kinds
                .iter()
                .map(|&k| {
                    let slot = k as usize;
                    counters[slot] += 1;
                    match k {
                        VarKind::Symmetric => Var::y(counters[slot]),
                        VarKind::Skew => Var::z(counters[slot]),
                        VarKind::General => Var::x(counters[slot]),
                    }
                })
                .collect();
            let terms = perm::all_perms(d)
                .into_iter()
                .zip(&coeffs)
                .map(|(w, &c)| (w, BigRational::from_integer(c.into())));
            MLPoly::new(vars, terms).unwrap()
        })
    })
}

/// Brute-force identity test: every kind-respecting tuple of basis elements.
pub fn naive_is_identity(a: &StarAlgebra, f: &MLPoly) -> bool {
    let candidates: Vec<Vec<Vec<i64>>> = f
        .vars()
        .iter()
        .map(|v| match v.kind {
            VarKind::Symmetric => a.symmetric_basis().to_vec(),
            VarKind::Skew => a.skew_basis().to_vec(),
            VarKind::General => (0..a.dim()).map(|i| a.basis_vector(i)).collect(),
        })
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return true;
    }
    let mut idx = vec![0usize; candidates.len()];
    loop {
        let mut asg = starpi::eval::Assignment::new();
        for ((v, c), &i) in f.vars().iter().zip(&candidates).zip(&idx) {
            asg.set(v.name.clone(), c[i].clone());
        }
        if starpi::eval::eval_poly(a, f, &asg)
            .unwrap()
            .iter()
            .any(|x| *x != BigRational::from_integer(0.into()))
        {
            return false;
        }
        let Some(p) = (0..idx.len()).rev().find(|&p| idx[p] + 1 < candidates[p].len()) else {
            return true;
        };
        idx[p] += 1;
        for q in idx.iter_mut().skip(p + 1) {
            *q = 0;
        }
    }
}
