//! Degree-`n` multilinear parts of finitely generated T-`*`-ideals.
//!
//! In degree `n`, the ideal generated by `f(u_1, …, u_d)` is spanned by the
//! polynomials `w_L · f(p_1, …, p_d) · w_R` where the `p_j` are multilinear
//! in pairwise disjoint nonempty variable sets, symmetric (resp. skew) when
//! `u_j` is, and `w_L`, `w_R` are words in the remaining variables. The
//! symmetric and skew multilinear polynomials in a set of variables are
//! spanned by `m + m*` and `m - m*` over its monomials `m`.

use std::collections::HashMap;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::{codimension, identity_block, EvalOptions};
use crate::freealg::perm::{factorial, lex_rank, orderings};
use crate::freealg::{capelli_deleted_set, full_dimension, MLPoly, TypeVector, VarKind};
use crate::linalg::{Field, ModP, Rationals, Regime, RowReducer, Subspace};
use crate::staralg::StarAlgebra;

/// Default largest degree for consequence computations.
pub const DEFAULT_MAX_DEGREE: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TidealOptions {
    pub eval: EvalOptions,
    pub max_degree: usize,
}

impl Default for TidealOptions {
    fn default() -> Self {
        TidealOptions {
            eval: EvalOptions::default(),
            max_degree: DEFAULT_MAX_DEGREE,
        }
    }
}

/// Generators of a T-`*`-ideal.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TStarGens {
    generators: Vec<MLPoly>,
}

impl TStarGens {
    pub fn new(generators: Vec<MLPoly>) -> Result<TStarGens> {
        for g in &generators {
            if g.terms().keys().any(Vec::is_empty) {
                return Err(Error::NotMultilinear("generators must have positive degree".into()));
            }
        }
        Ok(TStarGens { generators })
    }

    pub fn generators(&self) -> &[MLPoly] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn with(mut self, g: MLPoly) -> Self {
        self.generators.push(g);
        self
    }
}

/// Deleted symmetric Capelli polynomials of order `sym_order` together with
/// the deleted skew ones of order `skew_order`.
pub fn gamma_generators(sym_order: usize, skew_order: usize) -> Result<TStarGens> {
    let mut gens = capelli_deleted_set(sym_order, VarKind::Symmetric)?;
    gens.extend(capelli_deleted_set(skew_order, VarKind::Skew)?);
    TStarGens::new(gens)
}

/// Degree-`n` part of a T-`*`-ideal, one subspace of `F^{n!}` per type vector.
#[derive(Clone, Debug)]
pub struct ConsequenceSpace<F: Field> {
    n: usize,
    blocks: Vec<Subspace<F>>,
}

impl<F: Field> ConsequenceSpace<F> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(Subspace::dim).sum()
    }

    pub fn codim(&self) -> usize {
        full_dimension(self.n) - self.dim()
    }

    pub fn blocks(&self) -> &[Subspace<F>] {
        &self.blocks
    }

    pub fn block(&self, tv: TypeVector) -> &Subspace<F> {
        &self.blocks[tv.block_index()]
    }

    /// Whether a polynomial in the canonical variables lies in the space.
    pub fn contains_poly(&self, f: &MLPoly) -> Result<bool> {
        let (tv, coords) = block_coordinates(f)?;
        if tv.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: tv.len(),
            });
        }
        let field = self.blocks[0].field().clone();
        let v = coords
            .iter()
            .map(|c| field.from_rational(c))
            .collect::<Result<Vec<_>>>()?;
        self.block(tv).contains_vector(&v)
    }
}

/// Block and coordinates of a polynomial whose variables are `y_i` / `z_i`
/// for `i = 1..=n`, each index once.
pub fn block_coordinates(f: &MLPoly) -> Result<(TypeVector, Vec<BigRational>)> {
    let n = f.vars().len();
    let mut position = vec![usize::MAX; n];
    let mut kinds = vec![VarKind::Symmetric; n];
    for (k, v) in f.vars().iter().enumerate() {
        let index: Option<usize> = v.name.get(1..).and_then(|s| s.parse().ok());
        match (v.kind, index) {
            (VarKind::Symmetric | VarKind::Skew, Some(i)) if (1..=n).contains(&i) && position[i - 1] == usize::MAX => {
                position[i - 1] = k;
                kinds[i - 1] = v.kind;
            }
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "`{}` is not one of the canonical variables y1..y{n} / z1..z{n}",
                    v.name
                )))
            }
        }
    }
    let mut slot_of = vec![0; n];
    for (i, &k) in position.iter().enumerate() {
        slot_of[k] = i;
    }
    let tv = TypeVector::new(&kinds)?;
    let mut coords = vec![BigRational::from_integer(0.into()); factorial(n)];
    for (word, c) in f.terms() {
        let w: Vec<usize> = word.iter().map(|&k| slot_of[k]).collect();
        coords[lex_rank(&w)] = c.clone();
    }
    Ok((tv, coords))
}

type SparseWord = (Vec<usize>, i64);

/// Spanning polynomials for a slot over `vars`: monomials for a general
/// slot, `m ± m*` for a symmetric/skew slot (one of each pair `m`, `m*`).
fn slot_family(vars: &[usize], tv: TypeVector, kind: VarKind) -> Vec<Vec<SparseWord>> {
    let skew = vars.iter().filter(|&&v| tv.kind(v) == VarKind::Skew).count();
    let star_sign: i64 = if skew % 2 == 0 { 1 } else { -1 };
    let mut out = Vec::new();
    for m in orderings(vars) {
        if kind == VarKind::General {
            out.push(vec![(m, 1)]);
            continue;
        }
        let sign = if kind == VarKind::Symmetric {
            star_sign
        } else {
            -star_sign
        };
        let rev: Vec<usize> = m.iter().rev().copied().collect();
        if m.len() == 1 {
            if sign == 1 {
                out.push(vec![(m, 1)]);
            }
        } else if m < rev {
            out.push(vec![(m, 1), (rev, sign)]);
        }
    }
    out
}

/// Number of spanning rows contributed by `f` to block `tv`, without
/// building them.
fn row_count(f: &MLPoly, tv: TypeVector) -> u128 {
    let mut total = 0u128;
    for_each_shape(f, tv.len(), |slots, rest| {
        let mut rows = ((rest.len() + 1) as u128) * factorial(rest.len()) as u128;
        for (j, s) in slots.iter().enumerate() {
            rows *= slot_family(s, tv, f.vars()[j].kind).len() as u128;
        }
        total += rows;
        true
    });
    total
}

/// Calls `visit(slots, rest)` for every distribution of `0..n` into the
/// generator's `d` nonempty slots plus a remainder. Stops when `visit`
/// returns false.
fn for_each_shape(f: &MLPoly, n: usize, mut visit: impl FnMut(&[Vec<usize>], &[usize]) -> bool) {
    let d = f.vars().len();
    if d == 0 || d > n {
        return;
    }
    let mut choice = vec![0usize; n];
    loop {
        let mut slots = vec![Vec::new(); d];
        let mut rest = Vec::new();
        for (v, &c) in choice.iter().enumerate() {
            if c == d {
                rest.push(v);
            } else {
                slots[c].push(v);
            }
        }
        if slots.iter().all(|s| !s.is_empty()) && !visit(&slots, &rest) {
            return;
        }
        let Some(p) = (0..n).rev().find(|&p| choice[p] < d) else {
            return;
        };
        choice[p] += 1;
        for c in choice.iter_mut().skip(p + 1) {
            *c = 0;
        }
    }
}

fn block_consequences<F: Field>(
    gens: &TStarGens,
    tv: TypeVector,
    field: &F,
    coeffs: &[Vec<(Vec<usize>, F::Elem)>],
) -> Subspace<F> {
    let n = tv.len();
    let size = factorial(n);
    let mut reducer = RowReducer::new(field.clone(), size);
    for (g, terms) in gens.generators().iter().zip(coeffs) {
        let kinds: Vec<VarKind> = g.vars().iter().map(|v| v.kind).collect();
        for_each_shape(g, n, |slots, rest| {
            let families: Vec<Vec<Vec<SparseWord>>> =
                slots.iter().zip(&kinds).map(|(s, &k)| slot_family(s, tv, k)).collect();
            if families.iter().any(Vec::is_empty) {
                return true;
            }
            let boundaries: Vec<(Vec<usize>, Vec<usize>)> = orderings(rest)
                .into_iter()
                .flat_map(|o| (0..=o.len()).map(move |k| (o[..k].to_vec(), o[k..].to_vec())))
                .collect();
            let mut pick = vec![0usize; families.len()];
            loop {
                let middle = substitute(terms, &families, &pick, field);
                if !middle.is_empty() {
                    for (left, right) in &boundaries {
                        let mut row = vec![field.zero(); size];
                        for (w, c) in &middle {
                            let full: Vec<usize> = left.iter().chain(w).chain(right).copied().collect();
                            row[lex_rank(&full)] = c.clone();
                        }
                        reducer.insert(row);
                        if reducer.is_full() {
                            return false;
                        }
                    }
                }
                let Some(p) = (0..pick.len()).rev().find(|&p| pick[p] + 1 < families[p].len()) else {
                    return true;
                };
                pick[p] += 1;
                for q in pick.iter_mut().skip(p + 1) {
                    *q = 0;
                }
            }
        });
        if reducer.is_full() {
            break;
        }
    }
    reducer.into_subspace()
}

/// `f(p_1, …, p_d)` as a map from words to coefficients.
fn substitute<F: Field>(
    terms: &[(Vec<usize>, F::Elem)],
    families: &[Vec<Vec<SparseWord>>],
    pick: &[usize],
    field: &F,
) -> Vec<(Vec<usize>, F::Elem)> {
    let mut acc: HashMap<Vec<usize>, F::Elem> = HashMap::new();
    for (word, c) in terms {
        let mut partial: Vec<(Vec<usize>, F::Elem)> = vec![(Vec::new(), c.clone())];
        for &slot in word {
            let poly = &families[slot][pick[slot]];
            partial = partial
                .iter()
                .flat_map(|(w, x)| {
                    poly.iter().map(move |(m, s)| {
                        let mut nw = w.clone();
                        nw.extend_from_slice(m);
                        (nw, field.mul(x, &field.from_i64(*s)))
                    })
                })
                .collect();
        }
        for (w, x) in partial {
            let e = acc.entry(w).or_insert_with(|| field.zero());
            *e = field.add(e, &x);
        }
    }
    let mut out: Vec<_> = acc.into_iter().filter(|(_, x)| !field.is_zero(x)).collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn check_degree(n: usize, opts: &TidealOptions) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    if n > opts.max_degree {
        return Err(Error::InvalidArgument(format!(
            "degree {n} exceeds the configured maximum {}",
            opts.max_degree
        )));
    }
    Ok(())
}

/// Estimated scalar work for the spanning set in degree `n`.
pub fn consequence_estimate(gens: &TStarGens, n: usize) -> u128 {
    let size = factorial(n) as u128;
    TypeVector::all(n)
        .map(|tv| gens.generators().iter().map(|g| row_count(g, tv)).sum::<u128>() * size)
        .sum()
}

/// The degree-`n` consequence space of `gens` over `field`.
pub fn consequences<F: Field>(
    gens: &TStarGens,
    n: usize,
    field: F,
    opts: &TidealOptions,
) -> Result<ConsequenceSpace<F>> {
    check_degree(n, opts)?;
    let estimate = consequence_estimate(gens, n);
    if estimate > opts.eval.budget {
        return Err(Error::CostGuard {
            estimate,
            limit: opts.eval.budget,
        });
    }
    let coeffs = gens
        .generators()
        .iter()
        .map(|g| {
            g.terms()
                .iter()
                .map(|(w, c)| Ok((w.clone(), field.from_rational(c)?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let blocks: Vec<TypeVector> = TypeVector::all(n).collect();
    let blocks = blocks
        .par_iter()
        .map(|&tv| block_consequences(gens, tv, &field, &coeffs))
        .collect();
    Ok(ConsequenceSpace { n, blocks })
}

fn consequence_dim_in(gens: &TStarGens, n: usize, regime: Regime, opts: &TidealOptions) -> Result<usize> {
    Ok(match regime {
        Regime::Rational => consequences(gens, n, Rationals, opts)?.dim(),
        Regime::ModP(p) => consequences(gens, n, ModP::new(p)?, opts)?.dim(),
    })
}

/// `dim P_n* / (P_n* ∩ ⟨gens⟩)`, computed in every regime of the options.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealCodimension {
    pub n: usize,
    pub codim: usize,
    pub per_regime: Vec<(Regime, usize)>,
    pub agree: bool,
}

pub fn ideal_codimension(gens: &TStarGens, n: usize, opts: &TidealOptions) -> Result<IdealCodimension> {
    opts.eval.arithmetic.validate()?;
    let full = full_dimension(n);
    let per_regime = opts
        .eval
        .arithmetic
        .regimes()
        .into_iter()
        .map(|r| Ok((r, full - consequence_dim_in(gens, n, r, opts)?)))
        .collect::<Result<Vec<_>>>()?;
    let agree = per_regime.windows(2).all(|w| w[0].1 == w[1].1);
    // ranks only drop modulo p, so the smallest codimension is the best bound
    let codim = per_regime.iter().map(|r| r.1).min().expect("at least one regime");
    Ok(IdealCodimension {
        n,
        codim,
        per_regime,
        agree,
    })
}

/// Comparison of a generated ideal with the identities of an algebra in
/// one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub n: usize,
    /// Every consequence of the generators is an identity of the algebra.
    pub ideal_inside_id: bool,
    pub equal: bool,
    pub ideal_codim: usize,
    pub algebra_codim: usize,
    pub agree: bool,
}

fn compare_in<F: Field>(
    gens: &TStarGens,
    a: &StarAlgebra,
    n: usize,
    field: F,
    opts: &TidealOptions,
) -> Result<(bool, bool, usize, usize)> {
    let space = consequences(gens, n, field.clone(), opts)?;
    let mut inside = true;
    let mut equal = true;
    let mut id_dim = 0;
    for tv in TypeVector::all(n) {
        let ids = identity_block(a, tv, field.clone());
        let c = space.block(tv);
        id_dim += ids.dim();
        inside &= ids.contains(c)?;
        equal &= ids.equals(c)?;
    }
    Ok((inside, equal, space.codim(), full_dimension(n) - id_dim))
}

pub fn compare_with_algebra(gens: &TStarGens, a: &StarAlgebra, n: usize, opts: &TidealOptions) -> Result<Comparison> {
    check_degree(n, opts)?;
    opts.eval.arithmetic.validate()?;
    // refuse early when the algebra side is out of budget
    codimension(
        a,
        n,
        &opts
            .eval
            .with_arithmetic(crate::linalg::Arithmetic::SinglePrime(crate::linalg::DEFAULT_PRIME)),
    )?;
    let results = opts
        .eval
        .arithmetic
        .regimes()
        .into_iter()
        .map(|r| match r {
            Regime::Rational => compare_in(gens, a, n, Rationals, opts),
            Regime::ModP(p) => compare_in(gens, a, n, ModP::new(p)?, opts),
        })
        .collect::<Result<Vec<_>>>()?;
    let agree = results.windows(2).all(|w| w[0] == w[1]);
    let (inside, equal, ideal_codim, algebra_codim) = results[0];
    Ok(Comparison {
        n,
        ideal_inside_id: inside,
        equal,
        ideal_codim,
        algebra_codim,
        agree,
    })
}
