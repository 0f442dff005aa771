//! Acceptance suite. Run with `cargo test -p starpi --test acceptance -- --nocapture`
//! to see one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use starpi::analysis::{
    capelli_combination_check, codim_table, combination_fixtures, exponent_identities, star_exponent_simple,
    star_exponent_structural, star_exponent_ut, verify_capelli_thresholds, verify_direct_sum_bounds,
    verify_simple_nonidentity, Target, WedderburnData,
};
use starpi::eval::{codimension, EvalOptions};
use starpi::linalg::{Arithmetic, DEFAULT_PRIME, DEFAULT_PRIME2};
use starpi::staralg::{
    direct_sum, mk_exchange, mk_symplectic, mk_transpose, mk_ut_star, tensor_nilpotent, SimpleComponent, StarAlgebra,
    UTSpec,
};
use starpi::tideal::{compare_with_algebra, gamma_generators, TidealOptions};

const T1: SimpleComponent = SimpleComponent::Transpose { k: 1 };
const E1: SimpleComponent = SimpleComponent::Exchange { h: 1 };
const S1: SimpleComponent = SimpleComponent::Symplectic { m: 1 };

struct Outcome {
    passed: bool,
    detail: String,
}

fn pass_if(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn run(id: usize, title: &str, limit: Duration, check: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = check();
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    let ok = out.passed && in_time;
    println!(
        "[{}] {id:>2}. {title}: {} ({:.2?} of {:?}{})",
        if ok { "PASS" } else { "FAIL" },
        out.detail,
        elapsed,
        limit,
        if in_time { "" } else { ", over time" }
    );
    ok
}

/// UT* specs with `Σ dim A_i ≤ max_dim` over the components of dimension at most 8.
fn ut_specs(max_dim: usize) -> Vec<UTSpec> {
    let pool = [
        T1,
        E1,
        S1,
        SimpleComponent::Transpose { k: 2 },
        SimpleComponent::Exchange { h: 2 },
    ];
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<SimpleComponent>> = vec![Vec::new()];
    while let Some(seq) = frontier.pop() {
        let used: usize = seq.iter().map(SimpleComponent::dim).sum();
        for c in pool {
            if used + c.dim() <= max_dim {
                let mut next = seq.clone();
                next.push(c);
                out.push(UTSpec::new(next.clone()).unwrap());
                frontier.push(next);
            }
        }
    }
    out
}

fn desk_simples() -> Vec<StarAlgebra> {
    let mut v: Vec<StarAlgebra> = (1..=4).map(|k| mk_transpose(k).unwrap()).collect();
    v.extend((1..=2).map(|m| mk_symplectic(m).unwrap()));
    v.extend((1..=3).map(|h| mk_exchange(h).unwrap()));
    v
}

fn dimension_formulas() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    let mut check = |a: StarAlgebra, plus: usize, minus: usize| {
        count += 1;
        let got = (a.symmetric_basis().len(), a.skew_basis().len());
        if got != (plus, minus) {
            bad.push(format!("{}: {got:?} != {:?}", a.name(), (plus, minus)));
        }
    };
    for k in 1..=4 {
        check(mk_transpose(k).unwrap(), k * (k + 1) / 2, k * (k - 1) / 2);
    }
    for m in 1..=2 {
        check(mk_symplectic(m).unwrap(), m * (2 * m - 1), m * (2 * m + 1));
    }
    for h in 1..=3 {
        check(mk_exchange(h).unwrap(), h * h, h * h);
    }
    pass_if(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{count} algebras")
        } else {
            bad.join("; ")
        },
    )
}

fn involution_axioms() -> Outcome {
    let specs = ut_specs(8);
    let mut failures = Vec::new();
    for a in desk_simples() {
        if let Err(e) = a.verify_axioms() {
            failures.push(format!("{}: {e}", a.name()));
        }
    }
    for spec in &specs {
        // construction solves for structure constants, which fails if the span is not closed
        match mk_ut_star(spec).and_then(|a| a.verify_axioms()) {
            Ok(()) => {}
            Err(e) => failures.push(format!("{spec}: {e}")),
        }
    }
    pass_if(
        failures.is_empty(),
        if failures.is_empty() {
            format!("9 simple algebras, {} UT* specs", specs.len())
        } else {
            failures.join("; ")
        },
    )
}

fn thresholds() -> Outcome {
    let range: Vec<usize> = (1..=6).collect();
    let mut cells = 0;
    let mut bad = Vec::new();
    for cs in [vec![T1], vec![E1], vec![T1, T1], vec![S1]] {
        let spec = UTSpec::new(cs).unwrap();
        match verify_capelli_thresholds(&spec, &range, &range, &EvalOptions::default()) {
            Ok(r) => {
                cells += r.grid().len();
                bad.extend(
                    r.grid()
                        .into_iter()
                        .filter(|c| c.2 != c.3)
                        .map(|c| format!("{spec} (M, L) = ({}, {})", c.0, c.1)),
                );
            }
            Err(e) => bad.push(format!("{spec}: {e}")),
        }
    }
    pass_if(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{cells} grid cells match")
        } else {
            bad.join("; ")
        },
    )
}

fn simple_witnesses() -> Outcome {
    let mut found = Vec::new();
    let mut bad = Vec::new();
    for a in [
        mk_transpose(2).unwrap(),
        mk_symplectic(1).unwrap(),
        mk_exchange(1).unwrap(),
    ] {
        match verify_simple_nonidentity(&a, &EvalOptions::default()) {
            Ok(w) if w.holds() => found.push(format!(
                "{}: Cap*_{}[Y,X]{}",
                a.name(),
                w.symmetric.order,
                w.skew.map_or(String::new(), |z| format!(", Cap*_{}[Z,X]", z.order))
            )),
            Ok(_) => bad.push(format!("{}: no witness", a.name())),
            Err(e) => bad.push(format!("{}: {e}", a.name())),
        }
    }
    pass_if(
        bad.is_empty(),
        if bad.is_empty() {
            found.join("; ")
        } else {
            bad.join("; ")
        },
    )
}

fn exact_k1() -> Outcome {
    let targets = [
        Target::Ideal {
            name: "Gamma(2,1)".into(),
            gens: gamma_generators(2, 1).unwrap(),
        },
        Target::Algebra(mk_transpose(1).unwrap()),
    ];
    let t = match codim_table(&targets, 5, &TidealOptions::default()) {
        Ok(t) => t,
        Err(e) => return pass_if(false, e.to_string()),
    };
    let ok = (1..=5)
        .all(|n| t.cell(0, n).value() == Some(1) && t.cell(1, n).value() == Some(1) && t.ratio(0, 1, n) == Some(1.0));
    let row: Vec<String> = (1..=5)
        .map(|n| format!("{:?}/{:?}", t.cell(0, n).value(), t.cell(1, n).value()))
        .collect();
    pass_if(
        ok && t.all_agree(),
        format!("ideal/algebra codimensions n=1..5: {}", row.join(" ")),
    )
}

fn containment_k2() -> Outcome {
    let gens = gamma_generators(4, 2).unwrap();
    let m2 = mk_transpose(2).unwrap();
    let mut parts = Vec::new();
    let mut ok = true;
    for n in 1..=4 {
        match compare_with_algebra(&gens, &m2, n, &TidealOptions::default()) {
            Ok(c) => {
                ok &= c.ideal_inside_id && c.agree;
                parts.push(format!("n={n}: {} >= {}", c.ideal_codim, c.algebra_codim));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("n={n}: {e}"));
            }
        }
    }
    pass_if(ok, format!("contained; codimensions {}", parts.join(", ")))
}

fn sum_pairs() -> Vec<(StarAlgebra, StarAlgebra)> {
    let f = mk_transpose(1).unwrap();
    let ex = mk_exchange(1).unwrap();
    vec![
        (f.clone(), f.clone()),
        (f.clone(), ex.clone()),
        (mk_transpose(2).unwrap(), f.clone()),
        (ex.clone(), tensor_nilpotent(&f, 2, 3).unwrap()),
        (mk_ut_star(&UTSpec::new(vec![T1, T1]).unwrap()).unwrap(), ex),
    ]
}

fn direct_sums() -> Outcome {
    let mut bad = Vec::new();
    for (a, b) in sum_pairs() {
        match verify_direct_sum_bounds(&a, &b, 4, &EvalOptions::default()) {
            Ok(r) if r.holds() => {}
            Ok(r) => bad.push(format!("{} + {}: {:?}", r.a, r.b, r.rows)),
            Err(e) => bad.push(format!("{} + {}: {e}", a.name(), b.name())),
        }
    }
    pass_if(
        bad.is_empty(),
        if bad.is_empty() {
            "5 pairs, n = 1..4".to_string()
        } else {
            bad.join("; ")
        },
    )
}

fn exponents() -> Outcome {
    let mut bad = Vec::new();
    for a in desk_simples() {
        let w = WedderburnData::natural(&a).and_then(|w| star_exponent_structural(&a, &w));
        if star_exponent_simple(&a).ok() != Some(a.dim()) || w.ok() != Some(a.dim()) {
            bad.push(a.name().to_string());
        }
    }
    let specs = ut_specs(6);
    for spec in &specs {
        let a = mk_ut_star(spec).unwrap();
        let structural = WedderburnData::natural(&a).and_then(|w| star_exponent_structural(&a, &w));
        if structural.as_ref().ok() != Some(&star_exponent_ut(spec)) {
            bad.push(format!("{spec}: {structural:?} vs {}", star_exponent_ut(spec)));
        }
    }
    match exponent_identities(6, 64) {
        Ok(rows) => bad.extend(rows.into_iter().filter(|r| !r.holds).map(|r| r.component)),
        Err(e) => bad.push(e.to_string()),
    }
    pass_if(
        bad.is_empty(),
        if bad.is_empty() {
            format!("9 simple algebras, {} UT* specs, 18 identities", specs.len())
        } else {
            bad.join("; ")
        },
    )
}

fn arithmetic_soundness() -> Outcome {
    let mut algebras = vec![
        mk_transpose(1).unwrap(),
        mk_transpose(2).unwrap(),
        mk_exchange(1).unwrap(),
        mk_symplectic(1).unwrap(),
    ];
    for (a, b) in sum_pairs() {
        algebras.push(direct_sum(&a, &b).unwrap());
        algebras.push(a);
        algebras.push(b);
    }
    let dual = EvalOptions::default().with_arithmetic(Arithmetic::DualPrime(DEFAULT_PRIME, DEFAULT_PRIME2));
    let exact = EvalOptions::default().with_arithmetic(Arithmetic::Rational);
    let mut runs = 0;
    let mut bad = Vec::new();
    for a in &algebras {
        for n in 1..=4 {
            let r = match codimension(a, n, &dual) {
                Ok(r) => r,
                Err(e) => {
                    bad.push(format!("{} n={n}: {e}", a.name()));
                    continue;
                }
            };
            runs += 1;
            if !r.agree {
                bad.push(format!("{} n={n}: primes disagree", a.name()));
            }
            if n <= 3 {
                match codimension(a, n, &exact) {
                    Ok(q) if q.per_regime[0] == r.per_regime[0] => {}
                    Ok(_) => bad.push(format!("{} n={n}: rational ranks differ", a.name())),
                    Err(e) => bad.push(format!("{} n={n}: {e}", a.name())),
                }
            }
        }
    }
    pass_if(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{runs} dual-prime runs, rational cross-check for n <= 3")
        } else {
            bad.join("; ")
        },
    )
}

fn capelli_combination() -> Outcome {
    let fixtures = combination_fixtures().unwrap();
    let mut parts = Vec::new();
    let mut ok = true;
    for (m, l) in [(2, 1), (2, 2)] {
        match capelli_combination_check(m, l, &fixtures, &EvalOptions::default()) {
            Ok(r) => {
                ok &= r.holds();
                parts.push(format!(
                    "(M, L) = ({m}, {l}): {} of {} fixtures apply",
                    r.entries.iter().filter(|e| e.hypotheses).count(),
                    r.entries.len()
                ));
            }
            Err(e) => {
                ok = false;
                parts.push(e.to_string());
            }
        }
    }
    pass_if(ok, parts.join("; "))
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let results = [
        run(1, "symmetric/skew dimension formulas", secs(1), dimension_formulas),
        run(2, "involution axioms and UT* closure", secs(10), involution_axioms),
        run(3, "*-Capelli thresholds on UT*", secs(120), thresholds),
        run(
            4,
            "non-identity witnesses on simple algebras",
            secs(120),
            simple_witnesses,
        ),
        run(5, "exact codimension match at k = 1", secs(120), exact_k1),
        run(
            6,
            "generated ideal inside Id*(M_2, t), n <= 4",
            secs(600),
            containment_k2,
        ),
        run(7, "direct-sum codimension bounds", secs(300), direct_sums),
        run(8, "exponent formulas", secs(10), exponents),
        run(9, "arithmetic soundness across primes", secs(300), arithmetic_soundness),
        run(
            10,
            "Capelli identity from *-Capelli identities",
            secs(120),
            capelli_combination,
        ),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    assert_eq!(passed, results.len());
}
