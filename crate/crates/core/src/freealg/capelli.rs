use crate::error::{Error, Result};

use super::perm;
use super::poly::{int, MLPoly, Var, VarKind};

/// `Σ_σ sgn(σ) a_σ(1) w_1 a_σ(2) ⋯ w_{m-1} a_σ(m)` where a weave entry of
/// `None` has been evaluated to 1 (its neighbours concatenate).
fn alternating_word_sum(alternating: &[Var], weave: &[Option<Var>]) -> Result<MLPoly> {
    let m = alternating.len();
    if m == 0 {
        return Err(Error::InvalidArgument("Capelli polynomials need m >= 1".into()));
    }
    if weave.len() + 1 != m {
        return Err(Error::InvalidArgument(format!(
            "the {m}-th Capelli polynomial needs {} interleaving variables, got {}",
            m - 1,
            weave.len()
        )));
    }
    let mut vars: Vec<Var> = alternating.to_vec();
    let mut weave_index = Vec::with_capacity(weave.len());
    for w in weave {
        weave_index.push(w.as_ref().map(|v| {
            vars.push(v.clone());
            vars.len() - 1
        }));
    }
    let total = vars.len();
    let terms = perm::all_perms(m).into_iter().map(|sigma| {
        let mut word = Vec::with_capacity(total);
        for (i, &s) in sigma.iter().enumerate() {
            word.push(s);
            if let Some(Some(x)) = weave_index.get(i) {
                word.push(*x);
            }
        }
        (word, int(perm::sign(&sigma)))
    });
    MLPoly::new(vars, terms)
}

/// The `m`-th Capelli polynomial in general variables `t1..tm`, interleaved
/// with the given general variables.
pub fn capelli(m: usize, weave: &[&str]) -> Result<MLPoly> {
    let alternating: Vec<Var> = (1..=m).map(|i| Var::new(format!("t{i}"), VarKind::General)).collect();
    let weave: Vec<Option<Var>> = weave.iter().map(|w| Some(Var::new(*w, VarKind::General))).collect();
    alternating_word_sum(&alternating, &weave)
}

/// Capelli polynomial alternating on symmetric `y1..ym` or skew `z1..zm`,
/// interleaved with general `x1..x(m-1)`.
pub fn capelli_star(m: usize, kind: VarKind) -> Result<MLPoly> {
    capelli_star_deleted(m, kind, 0)
}

/// Capelli polynomial in general variables alternating on `x1..xm` with
/// general interleaving variables `w1..w(m-1)`.
pub fn capelli_general(m: usize) -> Result<MLPoly> {
    let alternating: Vec<Var> = (1..=m).map(Var::x).collect();
    let weave = (1..m)
        .map(|i| Some(Var::new(format!("w{i}"), VarKind::General)))
        .collect::<Vec<_>>();
    alternating_word_sum(&alternating, &weave)
}

/// `capelli_star` with the interleaving variables whose bit is set in
/// `deleted` evaluated to 1 (bit `i` ↔ `x(i+1)`).
pub fn capelli_star_deleted(m: usize, kind: VarKind, deleted: u64) -> Result<MLPoly> {
    let alternating: Vec<Var> = match kind {
        VarKind::Symmetric => (1..=m).map(Var::y).collect(),
        VarKind::Skew => (1..=m).map(Var::z).collect(),
        VarKind::General => {
            return Err(Error::KindViolation(
                "*-Capelli polynomials alternate on symmetric or skew variables".into(),
            ))
        }
    };
    let weave: Vec<Option<Var>> = (1..m)
        .map(|i| (deleted & (1 << (i - 1)) == 0).then(|| Var::x(i)))
        .collect();
    alternating_word_sum(&alternating, &weave)
}

/// All `2^(m-1)` polynomials obtained from the `*`-Capelli polynomial by
/// deleting a subset of the interleaving variables, ordered by the deletion
/// bitmask (the full polynomial first).
pub fn capelli_deleted_set(m: usize, kind: VarKind) -> Result<Vec<MLPoly>> {
    if m == 0 {
        return Err(Error::InvalidArgument("Capelli polynomials need m >= 1".into()));
    }
    (0..1u64 << (m - 1))
        .map(|mask| capelli_star_deleted(m, kind, mask))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MLPoly {
        s.parse().unwrap()
    }

    #[test]
    fn small_capelli_polynomials() {
        assert_eq!(capelli(2, &["x1"]).unwrap(), p("t1*x1*t2 - t2*x1*t1"));
        assert_eq!(capelli(1, &[]).unwrap(), p("t1"));
        assert!(matches!(capelli(2, &["t1"]), Err(Error::DuplicateVariable(_))));
        assert!(capelli(3, &["x1"]).is_err());
    }

    #[test]
    fn capelli_signs_follow_parity() {
        let c = capelli(3, &["x1", "x2"]).unwrap();
        assert_eq!(c.num_terms(), 6);
        for sigma in perm::all_perms(3) {
            let word: Vec<String> = vec![
                format!("t{}", sigma[0] + 1),
                "x1".into(),
                format!("t{}", sigma[1] + 1),
                "x2".into(),
                format!("t{}", sigma[2] + 1),
            ];
            let refs: Vec<&str> = word.iter().map(String::as_str).collect();
            assert_eq!(c.coefficient(&refs), int(perm::sign(&sigma)));
        }
    }

    #[test]
    fn star_capelli() {
        assert_eq!(capelli_star(2, VarKind::Symmetric).unwrap(), p("y1*x1*y2 - y2*x1*y1"));
        assert_eq!(capelli_star(1, VarKind::Skew).unwrap(), p("z1"));
        let c3 = capelli_star(3, VarKind::Skew).unwrap();
        assert_eq!(c3.num_terms(), 6);
        let names: Vec<_> = c3.vars().iter().map(|v| v.name.as_str()).collect();
        assert_eq!(names, ["z1", "z2", "z3", "x1", "x2"]);
        assert!(capelli_star(2, VarKind::General).is_err());
    }

    #[test]
    fn deleted_sets() {
        let set = capelli_deleted_set(2, VarKind::Symmetric).unwrap();
        assert_eq!(set, vec![p("y1*x1*y2 - y2*x1*y1"), p("y1*y2 - y2*y1")]);
        assert_eq!(capelli_deleted_set(1, VarKind::Symmetric).unwrap(), vec![p("y1")]);
        let degrees: Vec<_> = capelli_deleted_set(3, VarKind::Skew)
            .unwrap()
            .iter()
            .map(MLPoly::degree)
            .collect();
        assert_eq!(degrees, [5, 4, 4, 3]);
        for m in 1..=5 {
            let set = capelli_deleted_set(m, VarKind::Symmetric).unwrap();
            assert_eq!(set.len(), 1 << (m - 1));
            assert!(set.iter().all(|f| f.num_terms() == perm::factorial(m)));
        }
    }

    #[test]
    fn transposing_alternating_slots_negates() {
        for m in 2..=4 {
            let c = capelli_star(m, VarKind::Symmetric).unwrap();
            for i in 0..m {
                for j in i + 1..m {
                    assert_eq!(c.swap_vars(i, j), c.scale(&int(-1)));
                }
            }
        }
    }
}
