use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::AlgebraView;
use crate::linalg::{Rationals, RowReducer};
use crate::staralg::{SimpleComponent, StarAlgebra, UTSpec};

/// `exp*(A) = dim A` for a `*`-simple algebra.
pub fn star_exponent_simple(a: &StarAlgebra) -> Result<usize> {
    match a.decomposition() {
        Some(d) if d.components.len() == 1 && d.radical.is_empty() && d.components[0].1.len() == a.dim() => Ok(a.dim()),
        _ => Err(Error::InvalidArgument(format!(
            "{} is not one of the *-simple constructors",
            a.name()
        ))),
    }
}

/// `exp*(UT*(A_1, …, A_n)) = Σ dim A_i`.
pub fn star_exponent_ut(spec: &UTSpec) -> usize {
    spec.semisimple_dim()
}

/// A `*`-simple piece of a Wedderburn decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplePart {
    pub kind: SimpleComponent,
    pub basis: Vec<Vec<i64>>,
}

/// `A = S_1 ⊕ ⋯ ⊕ S_s ⊕ J` with `*`-simple `S_i` and radical `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedderburnData {
    pub components: Vec<SimplePart>,
    pub radical: Vec<Vec<i64>>,
}

type Span = Vec<Vec<BigRational>>;

fn span_of(view: &AlgebraView<Rationals>, vectors: impl IntoIterator<Item = Vec<BigRational>>) -> Span {
    let mut r = RowReducer::new(Rationals, view.dim());
    for v in vectors {
        r.insert(v);
    }
    r.into_subspace().basis().to_vec()
}

fn product_span(view: &AlgebraView<Rationals>, x: &Span, y: &Span) -> Span {
    span_of(view, x.iter().flat_map(|a| y.iter().map(move |b| view.mul(a, b))))
}

fn lift_all(view: &AlgebraView<Rationals>, vs: &[Vec<i64>]) -> Span {
    vs.iter().map(|v| view.lift(v)).collect()
}

fn is_inside(view: &AlgebraView<Rationals>, small: &Span, big: &Span) -> bool {
    let mut r = RowReducer::new(Rationals, view.dim());
    for v in big {
        r.insert(v.clone());
    }
    small.iter().all(|v| r.contains(v))
}

impl WedderburnData {
    /// The decomposition recorded by the constructor of `a`.
    pub fn natural(a: &StarAlgebra) -> Result<WedderburnData> {
        let d = a
            .decomposition()
            .ok_or_else(|| Error::InvalidArgument(format!("{} carries no known decomposition", a.name())))?;
        let w = WedderburnData {
            components: d
                .components
                .iter()
                .map(|(kind, idx)| SimplePart {
                    kind: *kind,
                    basis: idx.iter().map(|&i| a.basis_vector(i)).collect(),
                })
                .collect(),
            radical: d.radical.iter().map(|&i| a.basis_vector(i)).collect(),
        };
        w.validate(a)?;
        Ok(w)
    }

    /// Check the decomposition against `a`: the pieces span `A` directly, each
    /// `S_i` is a `*`-subalgebra of the expected dimension, `S_i S_j = 0` for
    /// `i ≠ j`, and `J` is a nilpotent `*`-stable ideal.
    pub fn validate(&self, a: &StarAlgebra) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        let view = AlgebraView::new(a, Rationals);
        let all: Vec<Vec<i64>> = self
            .components
            .iter()
            .flat_map(|c| c.basis.iter().cloned())
            .chain(self.radical.iter().cloned())
            .collect();
        if all.iter().any(|v| v.len() != a.dim()) {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                got: all.iter().map(Vec::len).find(|&l| l != a.dim()).unwrap_or(0),
            });
        }
        if all.len() != a.dim() || span_of(&view, lift_all(&view, &all)).len() != a.dim() {
            return bad("the pieces do not form a direct decomposition of the algebra".into());
        }
        let parts: Vec<Span> = self.components.iter().map(|c| lift_all(&view, &c.basis)).collect();
        let star_span = |vs: &[Vec<i64>]| -> Span { vs.iter().map(|v| view.lift(&a.star(v))).collect() };
        for (i, (c, s)) in self.components.iter().zip(&parts).enumerate() {
            if c.basis.len() != c.kind.dim() {
                return bad(format!(
                    "component {i} has dimension {} but {} has {}",
                    c.basis.len(),
                    c.kind,
                    c.kind.dim()
                ));
            }
            if !is_inside(&view, &product_span(&view, s, s), s) || !is_inside(&view, &star_span(&c.basis), s) {
                return bad(format!("component {i} is not a *-subalgebra"));
            }
            for (j, t) in parts.iter().enumerate() {
                if i != j && !product_span(&view, s, t).is_empty() {
                    return bad(format!("components {i} and {j} are not orthogonal"));
                }
            }
        }
        let j = lift_all(&view, &self.radical);
        let whole = lift_all(&view, &all);
        if !is_inside(&view, &product_span(&view, &whole, &j), &j)
            || !is_inside(&view, &product_span(&view, &j, &whole), &j)
        {
            return bad("the radical is not an ideal".into());
        }
        if !is_inside(&view, &star_span(&self.radical), &j) {
            return bad("the radical is not *-stable".into());
        }
        let mut power = j.clone();
        while !power.is_empty() {
            let next = product_span(&view, &power, &j);
            if next.len() == power.len() {
                return bad("the radical is not nilpotent".into());
            }
            power = next;
        }
        Ok(())
    }
}

/// Maximal `Σ dim S_i` over sequences of distinct components with
/// `S_{l_1} J S_{l_2} J ⋯ J S_{l_t} ≠ 0`.
pub fn star_exponent_structural(a: &StarAlgebra, w: &WedderburnData) -> Result<usize> {
    w.validate(a)?;
    let view = AlgebraView::new(a, Rationals);
    let parts: Vec<Span> = w.components.iter().map(|c| lift_all(&view, &c.basis)).collect();
    let radical = lift_all(&view, &w.radical);
    let dims: Vec<usize> = w.components.iter().map(|c| c.basis.len()).collect();
    let mut best = dims.iter().copied().max().unwrap_or(0);
    // depth-first over sequences, extending S_l1 J ⋯ S_lt by J S_next
    let mut stack: Vec<(Span, u64, usize)> = parts
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), 1u64 << i, dims[i]))
        .collect();
    while let Some((running, used, total)) = stack.pop() {
        best = best.max(total);
        let through_radical = product_span(&view, &running, &radical);
        if through_radical.is_empty() {
            continue;
        }
        for (k, s) in parts.iter().enumerate() {
            if used & (1 << k) != 0 {
                continue;
            }
            let next = product_span(&view, &through_radical, s);
            if !next.is_empty() {
                stack.push((next, used | (1 << k), total + dims[k]));
            }
        }
    }
    Ok(best)
}

/// One instance of `dim A^+ + dim A^- = dim A` for a simple constructor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentIdentity {
    pub component: String,
    pub symmetric: usize,
    pub skew: usize,
    /// `k²`, `4m²` or `2h²`.
    pub expected: usize,
    /// Dimensions read off the built algebra, when it was small enough to build.
    pub built: Option<(usize, usize)>,
    pub holds: bool,
}

/// Checks `M + L = k²`, `4m²`, `2h²` for parameters up to `max_param`,
/// comparing against built algebras of dimension at most `build_limit`.
pub fn exponent_identities(max_param: usize, build_limit: usize) -> Result<Vec<ExponentIdentity>> {
    let mut out = Vec::new();
    for p in 1..=max_param {
        for (c, expected) in [
            (SimpleComponent::Transpose { k: p }, p * p),
            (SimpleComponent::Symplectic { m: p }, 4 * p * p),
            (SimpleComponent::Exchange { h: p }, 2 * p * p),
        ] {
            let (symmetric, skew) = (c.symmetric_dim(), c.skew_dim());
            let built = if c.dim() <= build_limit {
                let a = c.build()?;
                Some((a.symmetric_basis().len(), a.skew_basis().len()))
            } else {
                None
            };
            let holds =
                symmetric + skew == expected && c.dim() == expected && built.is_none_or(|b| b == (symmetric, skew));
            out.push(ExponentIdentity {
                component: c.to_string(),
                symmetric,
                skew,
                expected,
                built,
                holds,
            });
        }
    }
    Ok(out)
}
