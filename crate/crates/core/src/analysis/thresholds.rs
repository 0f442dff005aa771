use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::{check_star_identity, find_nonvanishing, Assignment, EvalOptions};
use crate::freealg::{capelli_star, VarKind};
use crate::staralg::{mk_ut_star, StarAlgebra, UTSpec};

/// Predicted and observed truth of one `*`-Capelli identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdCell {
    pub order: usize,
    pub predicted: bool,
    pub observed: bool,
}

impl ThresholdCell {
    pub fn matches(&self) -> bool {
        self.predicted == self.observed
    }
}

/// Scan of the symmetric and skew `*`-Capelli identities of a `UT*` algebra
/// against the thresholds `M ≥ d⁺ + n`, `L ≥ d⁻ + n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdReport {
    pub spec: String,
    pub d_plus: usize,
    pub d_minus: usize,
    pub n: usize,
    pub symmetric: Vec<ThresholdCell>,
    pub skew: Vec<ThresholdCell>,
}

impl ThresholdReport {
    /// Cells `(M, L, predicted, observed)` for both identities holding together.
    pub fn grid(&self) -> Vec<(usize, usize, bool, bool)> {
        self.symmetric
            .iter()
            .flat_map(|s| {
                self.skew
                    .iter()
                    .map(move |z| (s.order, z.order, s.predicted && z.predicted, s.observed && z.observed))
            })
            .collect()
    }

    pub fn violations(&self) -> Vec<String> {
        let side = |label: &str, cells: &[ThresholdCell]| -> Vec<String> {
            cells
                .iter()
                .filter(|c| !c.matches())
                .map(|c| {
                    format!(
                        "{label}_{}: predicted {}, observed {}",
                        c.order, c.predicted, c.observed
                    )
                })
                .collect()
        };
        let mut v = side("Y", &self.symmetric);
        v.extend(side("Z", &self.skew));
        v
    }

    pub fn holds(&self) -> bool {
        self.violations().is_empty()
    }
}

impl std::fmt::Display for ThresholdReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "{}: d+ = {}, d- = {}, n = {}",
            self.spec, self.d_plus, self.d_minus, self.n
        )?;
        for (label, cells) in [("Cap*[Y,X]", &self.symmetric), ("Cap*[Z,X]", &self.skew)] {
            for c in cells {
                writeln!(
                    f,
                    "  {label} order {}: predicted {:<5} observed {:<5} {}",
                    c.order,
                    c.predicted,
                    c.observed,
                    if c.matches() { "ok" } else { "MISMATCH" }
                )?;
            }
        }
        Ok(())
    }
}

fn scan(
    a: &StarAlgebra,
    kind: VarKind,
    orders: &[usize],
    threshold: usize,
    opts: &EvalOptions,
) -> Result<Vec<ThresholdCell>> {
    orders
        .iter()
        .map(|&m| {
            let f = capelli_star(m, kind)?;
            let observed = check_star_identity(a, &f, opts)?.is_identity();
            Ok(ThresholdCell {
                order: m,
                predicted: m >= threshold,
                observed,
            })
        })
        .collect()
}

pub fn verify_capelli_thresholds(
    spec: &UTSpec,
    m_range: &[usize],
    l_range: &[usize],
    opts: &EvalOptions,
) -> Result<ThresholdReport> {
    let a = mk_ut_star(spec)?;
    let (d_plus, d_minus, n) = (spec.symmetric_dim(), spec.skew_dim(), spec.components.len());
    Ok(ThresholdReport {
        spec: spec.to_string(),
        d_plus,
        d_minus,
        n,
        symmetric: scan(&a, VarKind::Symmetric, m_range, d_plus + n, opts)?,
        skew: scan(&a, VarKind::Skew, l_range, d_minus + n, opts)?,
    })
}

/// A non-vanishing evaluation of one `*`-Capelli polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapelliWitness {
    pub kind: VarKind,
    pub order: usize,
    pub witness: Option<Assignment>,
    pub exhaustive: bool,
}

impl CapelliWitness {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }
}

/// Witnesses that a `*`-simple algebra satisfies neither `Cap*_{dim A⁺}[Y,X]`
/// nor `Cap*_{dim A⁻}[Z,X]`; the skew one is absent when `A⁻ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleWitnesses {
    pub algebra: String,
    pub symmetric: CapelliWitness,
    pub skew: Option<CapelliWitness>,
}

impl SimpleWitnesses {
    pub fn holds(&self) -> bool {
        self.symmetric.found() && self.skew.as_ref().is_none_or(CapelliWitness::found)
    }
}

pub fn verify_simple_nonidentity(a: &StarAlgebra, opts: &EvalOptions) -> Result<SimpleWitnesses> {
    super::star_exponent_simple(a)?;
    let search = |kind: VarKind, order: usize| -> Result<CapelliWitness> {
        let f = capelli_star(order, kind)?;
        let s = find_nonvanishing(a, &f, opts)?;
        Ok(CapelliWitness {
            kind,
            order,
            witness: s.witness,
            exhaustive: s.exhaustive,
        })
    };
    let (plus, minus) = (a.symmetric_basis().len(), a.skew_basis().len());
    if plus == 0 {
        return Err(Error::InvalidArgument(format!(
            "{} has no symmetric elements",
            a.name()
        )));
    }
    Ok(SimpleWitnesses {
        algebra: a.name().to_string(),
        symmetric: search(VarKind::Symmetric, plus)?,
        skew: if minus == 0 {
            None
        } else {
            Some(search(VarKind::Skew, minus)?)
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::eval_poly;
    use crate::staralg::{mk_exchange, mk_symplectic, mk_transpose, SimpleComponent};

    fn thresholds(cs: &[SimpleComponent]) -> (usize, usize) {
        let spec = UTSpec::new(cs.to_vec()).unwrap();
        let r = verify_capelli_thresholds(&spec, &[1, 2, 3, 4, 5], &[1, 2, 3], &EvalOptions::default()).unwrap();
        assert!(r.holds(), "{r}");
        let first = |cells: &[ThresholdCell]| cells.iter().find(|c| c.observed).map(|c| c.order).unwrap();
        (first(&r.symmetric), first(&r.skew))
    }

    #[test]
    fn threshold_examples() {
        let t1 = SimpleComponent::Transpose { k: 1 };
        assert_eq!(thresholds(&[t1]), (2, 1));
        assert_eq!(thresholds(&[SimpleComponent::Exchange { h: 1 }]), (2, 2));
        assert_eq!(thresholds(&[t1, t1]), (4, 2));
    }

    #[test]
    fn grid_is_the_conjunction() {
        let spec = UTSpec::new(vec![SimpleComponent::Exchange { h: 1 }]).unwrap();
        let r = verify_capelli_thresholds(&spec, &[1, 2], &[1, 2], &EvalOptions::default()).unwrap();
        let grid = r.grid();
        assert_eq!(grid.len(), 4);
        assert_eq!(grid.iter().filter(|c| c.3).count(), 1);
    }

    #[test]
    fn simple_witnesses() {
        for a in [
            mk_transpose(2).unwrap(),
            mk_symplectic(1).unwrap(),
            mk_exchange(1).unwrap(),
        ] {
            let w = verify_simple_nonidentity(&a, &EvalOptions::default()).unwrap();
            assert!(w.holds(), "{}", a.name());
            for c in std::iter::once(&w.symmetric).chain(&w.skew) {
                let f = capelli_star(c.order, c.kind).unwrap();
                let v = eval_poly(&a, &f, c.witness.as_ref().unwrap()).unwrap();
                assert!(v.iter().any(|x| *x != crate::freealg::int(0)));
            }
        }
        let t1 = verify_simple_nonidentity(&mk_transpose(1).unwrap(), &EvalOptions::default()).unwrap();
        assert!(t1.skew.is_none() && t1.holds());
        let sp = verify_simple_nonidentity(&mk_symplectic(1).unwrap(), &EvalOptions::default()).unwrap();
        assert_eq!((sp.symmetric.order, sp.skew.unwrap().order), (1, 3));
    }
}
