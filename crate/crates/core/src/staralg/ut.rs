use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::matrices::{realize, SparseMat};
use super::{Decomposition, SimpleComponent, StarAlgebra};

/// Ordered list of the `*`-simple components `A_1, …, A_n` of a block
/// triangular algebra `UT*(A_1, …, A_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UTSpec {
    pub components: Vec<SimpleComponent>,
}

impl UTSpec {
    pub fn new(components: Vec<SimpleComponent>) -> Result<UTSpec> {
        let spec = UTSpec { components };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.components.is_empty() {
            return Err(Error::Spec("UT* needs at least one component".into()));
        }
        self.components.iter().try_for_each(SimpleComponent::validate)
    }

    /// Half the size of the ambient matrices: the sum of the component matrix sizes.
    pub fn half_size(&self) -> usize {
        self.components.iter().map(SimpleComponent::matrix_size).sum()
    }

    /// `Σ dim A_i`.
    pub fn semisimple_dim(&self) -> usize {
        self.components.iter().map(SimpleComponent::dim).sum()
    }

    pub fn dim(&self) -> usize {
        let sizes: Vec<usize> = self.components.iter().map(SimpleComponent::matrix_size).collect();
        let strip: usize = (0..sizes.len())
            .flat_map(|i| (i + 1..sizes.len()).map(move |j| (i, j)))
            .map(|(i, j)| sizes[i] * sizes[j])
            .sum();
        self.semisimple_dim() + 2 * strip
    }

    /// `Σ dim A_i^+`.
    pub fn symmetric_dim(&self) -> usize {
        self.components.iter().map(SimpleComponent::symmetric_dim).sum()
    }

    /// `Σ dim A_i^-`.
    pub fn skew_dim(&self) -> usize {
        self.components.iter().map(SimpleComponent::skew_dim).sum()
    }
}

impl std::fmt::Display for UTSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("UT*(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Basis of component `c` as pairs (top-left block matrix, mirrored block
/// matrix), both of size `c.matrix_size()`, with labels.
fn component_pairs(c: SimpleComponent) -> Vec<(SparseMat, SparseMat, String)> {
    let d = c.matrix_size();
    let units = (0..d * d).map(move |k| (k / d, k % d, SparseMat::unit(d, k / d, k % d)));
    match c {
        SimpleComponent::Transpose { .. } => units
            .map(|(p, q, e)| (e.clone(), e.transpose().gamma(), format!("e{}{}", p + 1, q + 1)))
            .collect(),
        SimpleComponent::Symplectic { .. } => units
            .map(|(p, q, e)| (e.clone(), e.symplectic().gamma(), format!("e{}{}", p + 1, q + 1)))
            .collect(),
        SimpleComponent::Exchange { .. } => {
            let units: Vec<_> = units.collect();
            let mut out: Vec<_> = units
                .iter()
                .map(|(p, q, e)| (e.clone(), SparseMat::zero(d), format!("({},0)", label(*p, *q))))
                .collect();
            out.extend(
                units
                    .iter()
                    .map(|(p, q, e)| (SparseMat::zero(d), e.gamma(), format!("(0,{})", label(*p, *q)))),
            );
            out
        }
    }
}

fn label(p: usize, q: usize) -> String {
    format!("e{}{}", p + 1, q + 1)
}

/// `UT*(A_1, …, A_n) = D ⊕ U` inside `(M_{2d}, γ_{2d})`, `d = Σ d_i`.
///
/// Each `A_i` sits diagonally as `a ↦ diag(…, a, …, b̄, …)` with the
/// mirrored copy `b̄` placed so that the embedding commutes with `γ_{2d}`.
/// `U` is spanned by the units of the strictly block upper triangular strip
/// in the top-left half together with their `γ_{2d}` images.
pub fn mk_ut_star(spec: &UTSpec) -> Result<StarAlgebra> {
    spec.validate()?;
    let half = spec.half_size();
    let size = 2 * half;
    let sizes: Vec<usize> = spec.components.iter().map(SimpleComponent::matrix_size).collect();
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();

    let mut basis = Vec::new();
    let mut labels = Vec::new();
    let mut decomposition = Decomposition::default();
    for (i, &c) in spec.components.iter().enumerate() {
        let (o, d) = (offsets[i], sizes[i]);
        let mirror = size - o - d;
        let start = basis.len();
        for (top, bottom, l) in component_pairs(c) {
            basis.push(top.embed(size, o).add(&bottom.embed(size, mirror)));
            labels.push(format!("A{}:{l}", i + 1));
        }
        decomposition.components.push((c, (start..basis.len()).collect()));
    }
    let mut strip = Vec::new();
    for i in 0..sizes.len() {
        for j in i + 1..sizes.len() {
            for p in offsets[i]..offsets[i] + sizes[i] {
                for q in offsets[j]..offsets[j] + sizes[j] {
                    strip.push(SparseMat::unit(size, p, q));
                }
            }
        }
    }
    let mirrored: Vec<SparseMat> = strip.iter().map(SparseMat::gamma).collect();
    for u in strip.into_iter().chain(mirrored) {
        let (&(p, q), _) = u.entries.iter().next().expect("unit");
        decomposition.radical.push(basis.len());
        labels.push(format!("U:e{},{}", p + 1, q + 1));
        basis.push(u);
    }

    let r = realize(&basis, SparseMat::gamma)?;
    let alg = StarAlgebra::from_parts(basis.len(), r.mult, r.inv, labels, spec.to_string())?;
    Ok(alg.with_decomposition(Some(decomposition)))
}
