mod common;

use common::arb_poly;
use proptest::prelude::*;
use starpi::freealg::{capelli_star, MLPoly, VarKind};

proptest! {
    #[test]
    fn star_is_an_involution(f in arb_poly(4)) {
        prop_assume!(f.vars().iter().all(|v| v.kind != VarKind::General));
        prop_assert_eq!(f.star().unwrap().star().unwrap(), f);
    }

    #[test]
    fn display_parses_back(f in arb_poly(4)) {
        // the zero polynomial prints as "0" and forgets its variables
        prop_assume!(!f.is_zero());
        let text = f.to_string();
        let g: MLPoly = text.parse().unwrap();
        prop_assert_eq!(g, f);
    }

    #[test]
    fn swapping_alternating_variables_negates_capelli(m in 2usize..=4, i in 0usize..4, j in 0usize..4, skew in any::<bool>()) {
        let (i, j) = (i % m, j % m);
        prop_assume!(i != j);
        let kind = if skew { VarKind::Skew } else { VarKind::Symmetric };
        let c = capelli_star(m, kind).unwrap();
        let prefix = kind.prefix();
        let (a, b) = (c.var_index(&format!("{prefix}{}", i + 1)).unwrap(), c.var_index(&format!("{prefix}{}", j + 1)).unwrap());
        let minus = c.scale(&num_rational::BigRational::from_integer((-1).into()));
        prop_assert_eq!(c.swap_vars(a, b), minus);
    }

    #[test]
    fn sum_and_difference_cancel(f in arb_poly(3)) {
        let zero = f.sub(&f).unwrap();
        prop_assert!(zero.is_zero());
        prop_assert_eq!(f.add(&zero).unwrap(), f);
    }
}
