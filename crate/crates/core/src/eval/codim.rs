use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freealg::{full_dimension, perm::factorial, TypeVector};
use crate::linalg::{Field, ModP, Rationals, Regime, RowReducer, Subspace};
use crate::staralg::StarAlgebra;

use super::{kind_basis, AlgebraView, EvalOptions};

/// Rank of one type-vector block of the evaluation map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockRank {
    pub type_vector: String,
    pub rank: usize,
}

/// `c_n^*(A)` with its per-block ranks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodimReport {
    pub n: usize,
    pub blocks: Vec<BlockRank>,
    pub total: usize,
    pub regimes: Vec<Regime>,
    /// Block ranks in each regime, in the order of `regimes`.
    pub per_regime: Vec<Vec<usize>>,
    /// All regimes produced the same block ranks.
    pub agree: bool,
}

fn block_tuples(a: &StarAlgebra, tv: TypeVector) -> u128 {
    tv.kinds().iter().map(|&k| kind_basis(a, k).len() as u128).product()
}

/// Upper bound on the scalar work of evaluating every block at degree `n`.
pub(crate) fn codim_estimate(a: &StarAlgebra, n: usize) -> u128 {
    let per_tuple = factorial(n) as u128 * a.dim().max(1) as u128;
    TypeVector::all(n).map(|tv| block_tuples(a, tv) * per_tuple).sum()
}

/// All products `b_{σ(1)} ⋯ b_{σ(n)}` for σ in lexicographic order.
fn products_by_permutation<F: Field>(view: &AlgebraView<F>, values: &[&Vec<F::Elem>], out: &mut [Vec<F::Elem>]) {
    fn walk<F: Field>(
        view: &AlgebraView<F>,
        values: &[&Vec<F::Elem>],
        prefix: Option<&[F::Elem]>,
        used: u32,
        depth: usize,
        next: &mut usize,
        out: &mut [Vec<F::Elem>],
    ) {
        let n = values.len();
        if depth == n {
            out[*next] = prefix.map(<[F::Elem]>::to_vec).unwrap_or_else(|| view.zero());
            *next += 1;
            return;
        }
        for i in 0..n {
            if used & (1 << i) != 0 {
                continue;
            }
            let product = match prefix {
                None => values[i].clone(),
                Some(p) => view.mul(p, values[i]),
            };
            if view.is_zero(&product) {
                let skipped = factorial(n - depth - 1);
                for slot in &mut out[*next..*next + skipped] {
                    slot.iter_mut().for_each(|x| *x = view.field().zero());
                }
                *next += skipped;
                continue;
            }
            walk(view, values, Some(&product), used | (1 << i), depth + 1, next, out);
        }
    }
    let mut next = 0;
    walk(view, values, None, 0, 0, &mut next, out);
}

/// Span of the evaluation vectors of block `tv`: for every kind-respecting
/// basis tuple and every coordinate of `A`, the vector indexed by the `n!`
/// monomials (lexicographic in the permutation) of that coordinate of the
/// monomial's value. Its annihilator is the identity part of the block.
pub fn block_evaluation_space<F: Field>(a: &StarAlgebra, tv: TypeVector, field: F) -> Subspace<F> {
    let n = tv.len();
    let size = factorial(n);
    let view = AlgebraView::new(a, field.clone());
    let bases: Vec<Vec<Vec<F::Elem>>> = tv
        .kinds()
        .iter()
        .map(|&k| kind_basis(a, k).iter().map(|v| view.lift(v)).collect())
        .collect();
    let mut reducer = RowReducer::new(field.clone(), size);
    if n == 0 || bases.iter().any(Vec::is_empty) || a.dim() == 0 {
        return reducer.into_subspace();
    }
    let mut idx = vec![0usize; n];
    let mut table = vec![view.zero(); size];
    loop {
        let values: Vec<&Vec<F::Elem>> = idx.iter().zip(&bases).map(|(&i, b)| &b[i]).collect();
        products_by_permutation(&view, &values, &mut table);
        for k in 0..a.dim() {
            let column: Vec<F::Elem> = table.iter().map(|row| row[k].clone()).collect();
            reducer.insert(column);
            if reducer.is_full() {
                return reducer.into_subspace();
            }
        }
        let Some(pos) = (0..n).rev().find(|&p| idx[p] + 1 < bases[p].len()) else {
            break;
        };
        idx[pos] += 1;
        for r in idx.iter_mut().skip(pos + 1) {
            *r = 0;
        }
    }
    reducer.into_subspace()
}

/// `P_ε ∩ Id*(A)` in monomial coordinates.
pub fn identity_block<F: Field>(a: &StarAlgebra, tv: TypeVector, field: F) -> Subspace<F> {
    block_evaluation_space(a, tv, field).annihilator()
}

fn block_ranks<F: Field>(a: &StarAlgebra, n: usize, field: F) -> Vec<usize> {
    let blocks: Vec<TypeVector> = TypeVector::all(n).collect();
    blocks
        .par_iter()
        .map(|&tv| block_evaluation_space(a, tv, field.clone()).dim())
        .collect()
}

pub(crate) fn block_ranks_in(a: &StarAlgebra, n: usize, regime: Regime) -> Result<Vec<usize>> {
    Ok(match regime {
        Regime::Rational => block_ranks(a, n, Rationals),
        Regime::ModP(p) => block_ranks(a, n, ModP::new(p)?),
    })
}

/// `c_n^*(A)`, the sum over type vectors of the rank of the block
/// evaluation matrix. Refuses when the estimated work exceeds the budget.
pub fn codimension(a: &StarAlgebra, n: usize, opts: &EvalOptions) -> Result<CodimReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("codimensions start at n = 1".into()));
    }
    if n > 20 {
        return Err(Error::InvalidArgument(format!("degree {n} is out of range")));
    }
    opts.arithmetic.validate()?;
    let estimate = codim_estimate(a, n);
    if estimate > opts.budget {
        return Err(Error::CostGuard {
            estimate,
            limit: opts.budget,
        });
    }
    let regimes = opts.arithmetic.regimes();
    let per_regime = regimes
        .iter()
        .map(|&r| block_ranks_in(a, n, r))
        .collect::<Result<Vec<_>>>()?;
    let agree = per_regime.windows(2).all(|w| w[0] == w[1]);
    // a rank mod p never exceeds the rational rank; prefer an exact run
    let exact = regimes.iter().position(|r| *r == Regime::Rational);
    let ranks: Vec<usize> = match exact {
        Some(i) => per_regime[i].clone(),
        None => (0..1usize << n)
            .map(|b| per_regime.iter().map(|r| r[b]).max().unwrap_or(0))
            .collect(),
    };
    let blocks = TypeVector::all(n)
        .zip(&ranks)
        .map(|(tv, &rank)| BlockRank {
            type_vector: tv.to_string(),
            rank,
        })
        .collect();
    let total = ranks.iter().sum();
    debug_assert!(total <= full_dimension(n));
    Ok(CodimReport {
        n,
        blocks,
        total,
        regimes,
        per_regime,
        agree,
    })
}
