use starpi::analysis::{star_exponent_structural, star_exponent_ut, verify_capelli_thresholds, WedderburnData};
use starpi::eval::EvalOptions;
use starpi::staralg::{mk_ut_star, SimpleComponent, UTSpec};

/// Every UT* spec whose components have total dimension at most `max_dim`.
fn specs(max_dim: usize) -> Vec<UTSpec> {
    let pool = [
        SimpleComponent::Transpose { k: 1 },
        SimpleComponent::Exchange { h: 1 },
        SimpleComponent::Symplectic { m: 1 },
        SimpleComponent::Transpose { k: 2 },
    ];
    let mut out = Vec::new();
    let mut stack = vec![Vec::new()];
    while let Some(seq) = stack.pop() {
        let used: usize = seq.iter().map(SimpleComponent::dim).sum();
        for c in pool {
            if used + c.dim() <= max_dim {
                let mut next: Vec<SimpleComponent> = seq.clone();
                next.push(c);
                out.push(UTSpec::new(next.clone()).unwrap());
                stack.push(next);
            }
        }
    }
    out
}

#[test]
fn thresholds_hold_for_all_small_specs() {
    let range: Vec<usize> = (1..=6).collect();
    for spec in specs(5) {
        // the upfront estimate for five components sits just above the default budget
        let r = verify_capelli_thresholds(&spec, &range, &range, &EvalOptions::default().with_budget(1 << 32)).unwrap();
        assert!(r.holds(), "{r}");
    }
}

#[test]
fn structural_exponent_matches_formula() {
    for spec in specs(6) {
        let a = mk_ut_star(&spec).unwrap();
        let w = WedderburnData::natural(&a).unwrap();
        assert_eq!(
            star_exponent_structural(&a, &w).unwrap(),
            star_exponent_ut(&spec),
            "{spec}"
        );
    }
}
