use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{direct_sum, mk_exchange, mk_symplectic, mk_transpose, mk_ut_star, tensor_nilpotent, zero_algebra};
use super::{SimpleComponent, StarAlgebra, UTSpec};

/// JSON description of an algebra, e.g. `{"kind":"transpose","k":2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraSpec {
    Transpose {
        k: usize,
    },
    Symplectic {
        m: usize,
    },
    Exchange {
        h: usize,
    },
    DirectSum {
        parts: Vec<AlgebraSpec>,
    },
    UtStar {
        components: Vec<SimpleComponent>,
    },
    TensorNilpotent {
        base: Box<AlgebraSpec>,
        nil_dim: usize,
        nil_index: usize,
    },
    Zero,
    /// Structure constants `e_i e_j = Σ c e_k` as `[i, j, k, c]` and the
    /// involution `e_i^* = Σ c e_k` as `[i, k, c]`, 0-based.
    Raw {
        dim: usize,
        mult: Vec<(usize, usize, usize, i64)>,
        inv: Vec<(usize, usize, i64)>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
}

impl AlgebraSpec {
    pub fn build(&self) -> Result<StarAlgebra> {
        match self {
            AlgebraSpec::Transpose { k } => mk_transpose(*k),
            AlgebraSpec::Symplectic { m } => mk_symplectic(*m),
            AlgebraSpec::Exchange { h } => mk_exchange(*h),
            AlgebraSpec::DirectSum { parts } => {
                let mut iter = parts.iter();
                let first = iter
                    .next()
                    .ok_or_else(|| Error::Spec("direct_sum needs at least one part".into()))?;
                iter.try_fold(first.build()?, |acc, p| direct_sum(&acc, &p.build()?))
            }
            AlgebraSpec::UtStar { components } => mk_ut_star(&UTSpec::new(components.clone())?),
            AlgebraSpec::TensorNilpotent {
                base,
                nil_dim,
                nil_index,
            } => tensor_nilpotent(&base.build()?, *nil_dim, *nil_index),
            AlgebraSpec::Zero => Ok(zero_algebra()),
            AlgebraSpec::Raw { dim, mult, inv, labels } => {
                let d = *dim;
                let mut table = vec![Vec::new(); d * d];
                for &(i, j, k, c) in mult {
                    if i >= d || j >= d || k >= d {
                        return Err(Error::Spec(format!(
                            "structure constant index out of range in [{i}, {j}, {k}, {c}]"
                        )));
                    }
                    table[i * d + j].push((k, c));
                }
                let mut star = vec![Vec::new(); d];
                for &(i, k, c) in inv {
                    if i >= d || k >= d {
                        return Err(Error::Spec(format!("involution index out of range in [{i}, {k}, {c}]")));
                    }
                    star[i].push((k, c));
                }
                let labels = labels
                    .clone()
                    .unwrap_or_else(|| (1..=d).map(|i| format!("b{i}")).collect());
                let alg = StarAlgebra::from_parts(d, table, star, labels, "raw")?;
                alg.verify_axioms()?;
                Ok(alg)
            }
        }
    }

    /// Export an algebra's structure constants as a raw spec.
    pub fn raw_from(a: &StarAlgebra) -> AlgebraSpec {
        let d = a.dim();
        let mut mult = Vec::new();
        for i in 0..d {
            for j in 0..d {
                mult.extend(a.product(i, j).iter().map(|&(k, c)| (i, j, k, c)));
            }
        }
        let inv = (0..d)
            .flat_map(|i| a.star_of(i).iter().map(move |&(k, c)| (i, k, c)))
            .collect();
        AlgebraSpec::Raw {
            dim: d,
            mult,
            inv,
            labels: Some(a.labels().to_vec()),
        }
    }

    pub fn from_json(text: &str) -> Result<AlgebraSpec> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("specs serialize")
    }

    pub fn load(path: &Path) -> Result<AlgebraSpec> {
        AlgebraSpec::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self).expect("specs serialize"))?;
        Ok(())
    }
}
