mod common;

use common::{arb_algebra, arb_poly, naive_is_identity};
use proptest::prelude::*;
use starpi::eval::{check_star_identity, codimension, EvalOptions};
use starpi::freealg::{capelli_star, full_dimension, VarKind};
use starpi::linalg::Arithmetic;
use starpi::staralg::direct_sum;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn engine_matches_brute_force(a in arb_algebra(), f in arb_poly(3)) {
        let naive = naive_is_identity(&a, &f);
        for arithmetic in [Arithmetic::default(), Arithmetic::Rational] {
            let fast = check_star_identity(&a, &f, &EvalOptions::default().with_arithmetic(arithmetic)).unwrap();
            prop_assert_eq!(fast.is_identity(), naive, "{} on {}", f, a.name());
        }
    }

    #[test]
    fn star_of_an_identity_is_an_identity(a in arb_algebra(), f in arb_poly(3)) {
        prop_assume!(f.vars().iter().all(|v| v.kind != VarKind::General));
        let g = f.star().unwrap();
        let opts = EvalOptions::default();
        prop_assert_eq!(
            check_star_identity(&a, &f, &opts).unwrap().is_identity(),
            check_star_identity(&a, &g, &opts).unwrap().is_identity()
        );
    }

    #[test]
    fn identities_survive_renaming(a in arb_algebra(), f in arb_poly(3)) {
        let rename = f.vars().iter().enumerate().map(|(i, v)| (v.name.clone(), format!("{}{}", v.kind.prefix(), 40 + i))).collect();
        let g = f.rename(&rename).unwrap();
        let opts = EvalOptions::default();
        prop_assert_eq!(check_star_identity(&a, &f, &opts).unwrap().is_identity(), check_star_identity(&a, &g, &opts).unwrap().is_identity());
    }

    #[test]
    fn codimensions_respect_direct_sum_bounds(a in arb_algebra(), b in arb_algebra(), n in 1usize..=3) {
        let opts = EvalOptions::default();
        let c = |x: &starpi::staralg::StarAlgebra| codimension(x, n, &opts).unwrap();
        let (ra, rb, rs) = (c(&a), c(&b), c(&direct_sum(&a, &b).unwrap()));
        prop_assert!(ra.agree && rb.agree && rs.agree);
        prop_assert!(ra.total.max(rb.total) <= rs.total && rs.total <= ra.total + rb.total);
        prop_assert!(rs.total <= full_dimension(n));
    }

    #[test]
    fn codimension_ignores_basis_order(a in arb_algebra(), seed in any::<u64>(), n in 1usize..=3) {
        let mut perm: Vec<usize> = (0..a.dim()).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let b = a.permute_basis(&perm).unwrap();
        let opts = EvalOptions::default();
        prop_assert_eq!(codimension(&a, n, &opts).unwrap().blocks, codimension(&b, n, &opts).unwrap().blocks);
    }
}

#[test]
fn pigeonhole_capelli() {
    for a in common::algebra_pool() {
        for (kind, dim) in [
            (VarKind::Symmetric, a.symmetric_basis().len()),
            (VarKind::Skew, a.skew_basis().len()),
        ] {
            let f = capelli_star(dim + 1, kind).unwrap();
            if f.degree() <= 9 {
                assert!(
                    check_star_identity(&a, &f, &EvalOptions::default())
                        .unwrap()
                        .is_identity(),
                    "{}",
                    a.name()
                );
            }
        }
    }
}

#[test]
fn blocks_are_bounded_by_their_size() {
    for a in common::algebra_pool() {
        for n in 1..=3 {
            let r = codimension(&a, n, &EvalOptions::default()).unwrap();
            let size = starpi::freealg::perm::factorial(n);
            assert!(r.blocks.iter().all(|b| b.rank <= size));
            assert_eq!(r.total, r.blocks.iter().map(|b| b.rank).sum::<usize>());
        }
    }
}
