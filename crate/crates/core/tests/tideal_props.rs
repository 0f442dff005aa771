mod common;

use common::{algebra_pool, arb_poly};
use proptest::prelude::*;
use starpi::eval::{identity_block, is_star_identity};
use starpi::freealg::{MLPoly, TypeVector};
use starpi::linalg::{ModP, DEFAULT_PRIME};
use starpi::tideal::{consequences, TStarGens, TidealOptions};

fn dim(gens: &[MLPoly], n: usize) -> usize {
    let g = TStarGens::new(gens.to_vec()).unwrap();
    consequences(&g, n, ModP::new(DEFAULT_PRIME).unwrap(), &TidealOptions::default())
        .unwrap()
        .dim()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn adding_a_generator_never_shrinks(f in arb_poly(2), g in arb_poly(2), n in 1usize..=3) {
        prop_assert!(dim(std::slice::from_ref(&f), n) <= dim(&[f.clone(), g.clone()], n));
        prop_assert_eq!(dim(&[f.clone(), g.clone()], n), dim(&[g, f], n));
    }

    #[test]
    fn naming_does_not_matter(f in arb_poly(3), n in 1usize..=3) {
        let rename = f.vars().iter().enumerate().map(|(i, v)| (v.name.clone(), format!("{}{}", v.kind.prefix(), 70 + i))).collect();
        prop_assert_eq!(dim(std::slice::from_ref(&f), n), dim(&[f.rename(&rename).unwrap()], n));
    }

    #[test]
    fn consequences_of_identities_are_identities(f in arb_poly(3), n in 1usize..=3) {
        let field = ModP::new(DEFAULT_PRIME).unwrap();
        let gens = TStarGens::new(vec![f.clone()]).unwrap();
        let space = consequences(&gens, n, field, &TidealOptions::default()).unwrap();
        for a in algebra_pool() {
            if a.dim() > 4 || !is_star_identity(&a, &f).unwrap() {
                continue;
            }
            for tv in TypeVector::all(n) {
                prop_assert!(identity_block(&a, tv, field).contains(space.block(tv)).unwrap(), "{} on {}", f, a.name());
            }
        }
    }
}
