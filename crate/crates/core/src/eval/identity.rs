//! Exhaustive `*`-identity checking.
//!
//! By multilinearity it suffices to evaluate on kind-respecting tuples of
//! basis elements. Variables on which `f` alternates are grouped into
//! classes; a class only needs strictly increasing tuples of distinct basis
//! elements, and `f` is recovered from the terms listing each class in
//! canonical order by signed summation over orderings. When a single such
//! term remains, the signed sum is computed left to right over subsets of
//! each class, and the values of the remaining variables are branched over
//! while keeping only states that enlarge the span of reachable states.

use std::sync::atomic::{AtomicBool, Ordering};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::freealg::{MLPoly, VarKind};
use crate::linalg::{Field, ModP, Rationals, Regime, RowReducer};
use crate::staralg::StarAlgebra;

use super::{eval_in, eval_poly, kind_basis, AlgebraView, Assignment, CostMeter, EvalOptions};

/// Partial product values (or `None` for the empty prefix) with the chosen
/// basis indices.
type PrefixState<E> = (Option<Vec<E>>, Vec<(usize, usize)>);

/// Result of an identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityOutcome {
    Identity,
    /// A kind-respecting basis assignment with nonzero value.
    Witness(Assignment),
}

impl IdentityOutcome {
    pub fn is_identity(&self) -> bool {
        matches!(self, IdentityOutcome::Identity)
    }
}

/// Result of a bounded witness search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSearch {
    pub witness: Option<Assignment>,
    /// Whether the exhaustive phase completed, so that no witness means `f`
    /// is an identity.
    pub exhaustive: bool,
}

/// How `f` decomposes for evaluation on basis tuples.
struct Plan {
    candidates: Vec<Vec<Vec<i64>>>,
    /// Alternation classes (variable indices, increasing). Symmetric classes
    /// come first, then skew, then general.
    classes: Vec<Vec<usize>>,
    /// Variables outside every class, symmetric first.
    free: Vec<usize>,
    /// Terms of `f` listing each class in increasing order.
    reduced: Vec<(Vec<usize>, BigRational)>,
    /// `f` vanishes for a structural reason.
    trivial: bool,
}

fn kind_rank(k: VarKind) -> u8 {
    match k {
        VarKind::Symmetric => 0,
        VarKind::Skew => 1,
        VarKind::General => 2,
    }
}

fn find_root(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

impl Plan {
    fn new(a: &StarAlgebra, f: &MLPoly) -> Result<Plan> {
        if f.terms().keys().any(Vec::is_empty) {
            return Err(Error::NotMultilinear("constant terms cannot be evaluated".into()));
        }
        let vars = f.vars();
        let n = vars.len();
        let candidates: Vec<_> = vars.iter().map(|v| kind_basis(a, v.kind)).collect();
        let mut plan = Plan {
            candidates,
            classes: vec![],
            free: vec![],
            reduced: vec![],
            trivial: false,
        };
        if f.is_zero() || plan.candidates.iter().any(Vec::is_empty) {
            plan.trivial = true;
            return Ok(plan);
        }

        let negated = f.scale(&BigRational::from_integer((-1).into()));
        let mut parent: Vec<usize> = (0..n).collect();
        for i in 0..n {
            for j in i + 1..n {
                if vars[i].kind != vars[j].kind || find_root(&mut parent, i) == find_root(&mut parent, j) {
                    continue;
                }
                if f.swap_vars(i, j) == negated {
                    let (ri, rj) = (find_root(&mut parent, i), find_root(&mut parent, j));
                    parent[rj] = ri;
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = vec![vec![]; n];
        for i in 0..n {
            let r = find_root(&mut parent, i);
            groups[r].push(i);
        }
        let mut classes: Vec<Vec<usize>> = groups.into_iter().filter(|g| g.len() >= 2).collect();
        classes.sort_by_key(|c| (kind_rank(vars[c[0]].kind), c[0]));
        let mut in_class = vec![false; n];
        for c in &classes {
            for &v in c {
                in_class[v] = true;
            }
            // alternating on more arguments than the span allows (char != 2)
            if c.len() > plan.candidates[c[0]].len() {
                plan.trivial = true;
            }
        }
        let mut free: Vec<usize> = (0..n).filter(|&v| !in_class[v]).collect();
        free.sort_by_key(|&v| (kind_rank(vars[v].kind), v));

        let mut class_of = vec![usize::MAX; n];
        for (ci, c) in classes.iter().enumerate() {
            for &v in c {
                class_of[v] = ci;
            }
        }
        plan.reduced = f
            .terms()
            .iter()
            .filter(|(word, _)| {
                let mut last = vec![None::<usize>; classes.len()];
                word.iter().all(|&v| {
                    let ci = class_of[v];
                    if ci == usize::MAX {
                        return true;
                    }
                    let ok = last[ci].is_none_or(|prev| prev < v);
                    last[ci] = Some(v);
                    ok
                })
            })
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        plan.classes = classes;
        plan.free = free;
        Ok(plan)
    }

    /// All strictly increasing index tuples for every class, in lex order
    /// (first class most significant).
    fn class_tuples(&self) -> Vec<Vec<Vec<usize>>> {
        let mut out = vec![vec![]];
        for c in &self.classes {
            let combos = combinations(self.candidates[c[0]].len(), c.len());
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<Vec<usize>>| {
                    combos.iter().map(move |t| {
                        let mut p = prefix.clone();
                        p.push(t.clone());
                        p
                    })
                })
                .collect();
        }
        out
    }

    fn assignment(&self, f: &MLPoly, tuple: &[Vec<usize>], free_choice: &[(usize, usize)]) -> Assignment {
        let vars = f.vars();
        let mut asg = Assignment::new();
        for (c, t) in self.classes.iter().zip(tuple) {
            for (&v, &b) in c.iter().zip(t) {
                asg.set(vars[v].name.clone(), self.candidates[v][b].clone());
            }
        }
        for &(v, b) in free_choice {
            asg.set(vars[v].name.clone(), self.candidates[v][b].clone());
        }
        asg
    }
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Subset bookkeeping for one alternation class.
struct ClassLayout {
    by_count: Vec<Vec<u32>>,
    index_of: Vec<usize>,
}

impl ClassLayout {
    fn new(size: usize) -> Self {
        let mut by_count = vec![Vec::new(); size + 1];
        let mut index_of = vec![0; 1 << size];
        for mask in 0u32..1 << size {
            let c = mask.count_ones() as usize;
            index_of[mask as usize] = by_count[c].len();
            by_count[c].push(mask);
        }
        ClassLayout { by_count, index_of }
    }
}

/// One step of the left-to-right scan of the single reduced term.
enum Step {
    Class(usize),
    Free(usize),
}

struct Scan<'a, F: Field> {
    view: &'a AlgebraView<F>,
    layouts: Vec<ClassLayout>,
    steps: Vec<Step>,
    coeff: F::Elem,
    /// lifted candidate values per variable
    values: Vec<Vec<Vec<F::Elem>>>,
}

impl<F: Field> Scan<'_, F> {
    fn key_count(&self, counts: &[usize]) -> usize {
        self.layouts
            .iter()
            .zip(counts)
            .map(|(l, &c)| l.by_count[c].len())
            .product()
    }

    fn decode(&self, mut idx: usize, counts: &[usize]) -> Vec<u32> {
        let mut masks = vec![0; counts.len()];
        for i in (0..counts.len()).rev() {
            let list = &self.layouts[i].by_count[counts[i]];
            masks[i] = list[idx % list.len()];
            idx /= list.len();
        }
        masks
    }

    fn encode(&self, masks: &[u32], counts: &[usize]) -> usize {
        let mut idx = 0;
        for i in 0..counts.len() {
            let len = self.layouts[i].by_count[counts[i]].len();
            idx = idx * len + self.layouts[i].index_of[masks[i] as usize];
        }
        idx
    }

    /// Scan for one tuple of class values; returns the first nonzero final
    /// state's free choices, or `None` if every reachable final value is 0.
    fn run(&self, class_values: &[Vec<Vec<F::Elem>>], meter: &CostMeter) -> Result<Option<Vec<(usize, usize)>>> {
        let f = self.view.field();
        let dim = self.view.dim();
        let mut counts = vec![0usize; self.layouts.len()];
        // `None` state means the empty prefix
        let mut states: Vec<PrefixState<F::Elem>> = vec![(None, vec![])];
        for step in &self.steps {
            match *step {
                Step::Class(ci) => {
                    let mut next_counts = counts.clone();
                    next_counts[ci] += 1;
                    let len = self.key_count(&next_counts) * dim;
                    let mut next = Vec::with_capacity(states.len());
                    let mut ops = 0u128;
                    for (state, hist) in states {
                        let mut out = vec![f.zero(); len];
                        let old_keys = if state.is_some() { self.key_count(&counts) } else { 1 };
                        for k in 0..old_keys {
                            let masks = self.decode(k, &counts);
                            let block = state.as_ref().map(|s| &s[k * dim..(k + 1) * dim]);
                            if block.is_some_and(|b| self.view.is_zero(b)) {
                                continue;
                            }
                            let size = class_values[ci].len();
                            for j in 0..size {
                                let bit = 1u32 << j;
                                if masks[ci] & bit != 0 {
                                    continue;
                                }
                                let mut new_masks = masks.clone();
                                new_masks[ci] |= bit;
                                let at = self.encode(&new_masks, &next_counts) * dim;
                                let target = &mut out[at..at + dim];
                                let negative = (masks[ci] >> (j + 1)).count_ones() % 2 == 1;
                                let value = &class_values[ci][j];
                                match block {
                                    None => {
                                        for (t, v) in target.iter_mut().zip(value) {
                                            *t = if negative { f.sub(t, v) } else { f.add(t, v) };
                                        }
                                    }
                                    Some(b) => {
                                        let prod = self.view.mul(b, value);
                                        ops += dim as u128 * dim as u128;
                                        for (t, v) in target.iter_mut().zip(&prod) {
                                            *t = if negative { f.sub(t, v) } else { f.add(t, v) };
                                        }
                                    }
                                }
                            }
                        }
                        if out.iter().any(|x| !f.is_zero(x)) {
                            next.push((Some(out), hist));
                        }
                    }
                    meter.charge(ops)?;
                    counts = next_counts;
                    states = next;
                }
                Step::Free(v) => {
                    let len = self.key_count(&counts) * dim;
                    let mut reducer = RowReducer::new(f.clone(), len);
                    let mut next = Vec::new();
                    let mut ops = 0u128;
                    'outer: for (state, hist) in &states {
                        for (ci, x) in self.values[v].iter().enumerate() {
                            let ns = match state {
                                None => x.clone(),
                                Some(s) => {
                                    let mut out = vec![f.zero(); len];
                                    for k in 0..len / dim {
                                        let b = &s[k * dim..(k + 1) * dim];
                                        if self.view.is_zero(b) {
                                            continue;
                                        }
                                        ops += self.view.mul_acc(&mut out[k * dim..(k + 1) * dim], b, x);
                                    }
                                    out
                                }
                            };
                            ops += (reducer.rank() * len) as u128;
                            if reducer.insert(ns.clone()) {
                                let mut h = hist.clone();
                                h.push((v, ci));
                                next.push((Some(ns), h));
                                if reducer.is_full() {
                                    break 'outer;
                                }
                            }
                        }
                    }
                    meter.charge(ops)?;
                    states = next;
                }
            }
            if states.is_empty() {
                return Ok(None);
            }
        }
        for (state, hist) in states {
            let s = state.expect("nonempty word");
            if s.iter().any(|x| !f.is_zero(&f.mul(x, &self.coeff))) {
                return Ok(Some(hist));
            }
        }
        Ok(None)
    }
}

/// Search for a witness over the given field; `Ok(None)` proves `f` is an
/// identity over that field.
fn search<F: Field>(
    a: &StarAlgebra,
    f: &MLPoly,
    plan: &Plan,
    field: F,
    meter: &CostMeter,
) -> Result<Option<Assignment>> {
    if plan.trivial {
        return Ok(None);
    }
    let view = AlgebraView::new(a, field.clone());
    let values: Vec<Vec<Vec<F::Elem>>> = plan
        .candidates
        .iter()
        .map(|c| c.iter().map(|v| view.lift(v)).collect())
        .collect();
    let tuples = plan.class_tuples();
    let found = AtomicBool::new(false);

    if plan.reduced.len() == 1 {
        let (word, coeff) = &plan.reduced[0];
        let mut class_of = vec![usize::MAX; f.vars().len()];
        for (ci, c) in plan.classes.iter().enumerate() {
            for &v in c {
                class_of[v] = ci;
            }
        }
        let scan = Scan {
            view: &view,
            layouts: plan.classes.iter().map(|c| ClassLayout::new(c.len())).collect(),
            steps: word
                .iter()
                .map(|&v| {
                    if class_of[v] == usize::MAX {
                        Step::Free(v)
                    } else {
                        Step::Class(class_of[v])
                    }
                })
                .collect(),
            coeff: field.from_rational(coeff)?,
            values: values.clone(),
        };
        let result = tuples.par_iter().map(|tuple| -> Result<Option<Assignment>> {
            if found.load(Ordering::Relaxed) {
                return Ok(None);
            }
            let class_values: Vec<Vec<Vec<F::Elem>>> = plan
                .classes
                .iter()
                .zip(tuple)
                .map(|(c, t)| t.iter().map(|&b| values[c[0]][b].clone()).collect())
                .collect();
            let hit = scan.run(&class_values, meter)?;
            Ok(hit.map(|choice| {
                found.store(true, Ordering::Relaxed);
                plan.assignment(f, tuple, &choice)
            }))
        });
        return first_hit(result.collect::<Vec<_>>());
    }

    // several reduced terms: enumerate free values as well
    let free_sizes: Vec<usize> = plan.free.iter().map(|&v| values[v].len()).collect();
    let free_total: u128 = free_sizes.iter().map(|&s| s as u128).product();
    let per_eval = (f.num_terms() * f.degree()) as u128 * (a.dim() * a.dim()) as u128;
    let estimate = tuples.len() as u128 * free_total * per_eval;
    if estimate > meter.limit {
        return Err(Error::CostGuard {
            estimate,
            limit: meter.limit,
        });
    }
    let result = tuples.par_iter().map(|tuple| -> Result<Option<Assignment>> {
        let mut point: Vec<Vec<F::Elem>> = vec![vec![]; f.vars().len()];
        for (c, t) in plan.classes.iter().zip(tuple) {
            for (&v, &b) in c.iter().zip(t) {
                point[v] = values[v][b].clone();
            }
        }
        let mut idx = vec![0usize; plan.free.len()];
        loop {
            if found.load(Ordering::Relaxed) {
                return Ok(None);
            }
            for (k, &v) in plan.free.iter().enumerate() {
                point[v] = values[v][idx[k]].clone();
            }
            meter.charge(per_eval)?;
            let value = eval_in(&view, f, &point)?;
            if !view.is_zero(&value) {
                found.store(true, Ordering::Relaxed);
                let choice: Vec<(usize, usize)> = plan.free.iter().zip(&idx).map(|(&v, &b)| (v, b)).collect();
                return Ok(Some(plan.assignment(f, tuple, &choice)));
            }
            // odometer with the first free variable most significant
            let Some(k) = (0..idx.len()).rev().find(|&k| idx[k] + 1 < free_sizes[k]) else {
                return Ok(None);
            };
            idx[k] += 1;
            for r in idx.iter_mut().skip(k + 1) {
                *r = 0;
            }
        }
    });
    first_hit(result.collect::<Vec<_>>())
}

/// The witness from the lowest-indexed tuple, so that results do not
/// depend on scheduling. Errors win only if no witness precedes them.
fn first_hit(results: Vec<Result<Option<Assignment>>>) -> Result<Option<Assignment>> {
    for r in results {
        match r {
            Ok(Some(w)) => return Ok(Some(w)),
            Ok(None) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

fn search_in(
    a: &StarAlgebra,
    f: &MLPoly,
    plan: &Plan,
    regime: Regime,
    meter: &CostMeter,
) -> Result<Option<Assignment>> {
    match regime {
        Regime::Rational => search(a, f, plan, Rationals, meter),
        Regime::ModP(p) => search(a, f, plan, ModP::new(p)?, meter),
    }
}

fn is_nonzero_exact(a: &StarAlgebra, f: &MLPoly, asg: &Assignment) -> Result<bool> {
    Ok(eval_poly(a, f, asg)?
        .iter()
        .any(|x| *x != BigRational::from_integer(0.into())))
}

/// Decide whether `f` is a `*`-identity of `a`, exhaustively over basis
/// tuples. Every regime of `opts.arithmetic` must agree; a witness is
/// confirmed by exact evaluation before it is returned.
pub fn check_star_identity(a: &StarAlgebra, f: &MLPoly, opts: &EvalOptions) -> Result<IdentityOutcome> {
    opts.arithmetic.validate()?;
    let plan = Plan::new(a, f)?;
    let meter = CostMeter::new(opts.budget);
    for regime in opts.arithmetic.regimes() {
        if let Some(w) = search_in(a, f, &plan, regime, &meter)? {
            if is_nonzero_exact(a, f, &w)? {
                return Ok(IdentityOutcome::Witness(w));
            }
            return Err(Error::InvalidArgument(format!(
                "witness found in {regime} does not survive exact evaluation"
            )));
        }
    }
    Ok(IdentityOutcome::Identity)
}

/// [`check_star_identity`] with default options, reduced to a verdict.
pub fn is_star_identity(a: &StarAlgebra, f: &MLPoly) -> Result<bool> {
    Ok(check_star_identity(a, f, &EvalOptions::default())?.is_identity())
}

/// Look for a kind-respecting basis assignment on which `f` is nonzero.
/// Runs the exhaustive search with half the budget, then samples basis
/// tuples at random with the rest.
pub fn find_nonvanishing(a: &StarAlgebra, f: &MLPoly, opts: &EvalOptions) -> Result<WitnessSearch> {
    let plan = Plan::new(a, f)?;
    if plan.trivial {
        return Ok(WitnessSearch {
            witness: None,
            exhaustive: true,
        });
    }
    let regime = opts.arithmetic.regimes()[0];
    let meter = CostMeter::new(opts.budget / 2);
    match search_in(a, f, &plan, regime, &meter) {
        Ok(Some(w)) if is_nonzero_exact(a, f, &w)? => {
            return Ok(WitnessSearch {
                witness: Some(w),
                exhaustive: true,
            })
        }
        Ok(Some(_)) => {}
        Ok(None) => {
            return Ok(WitnessSearch {
                witness: None,
                exhaustive: true,
            })
        }
        Err(e) if e.is_cost_guard() => {}
        Err(e) => return Err(e),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let view = AlgebraView::new(a, Rationals);
    let per_eval = ((f.num_terms() * f.degree()) as u128 * (a.dim() * a.dim()) as u128).max(1);
    let samples = (opts.budget / 2) / per_eval;
    let vars = f.vars();
    for _ in 0..samples {
        let mut asg = Assignment::new();
        for (v, cands) in vars.iter().zip(&plan.candidates) {
            asg.set(v.name.clone(), cands[rng.gen_range(0..cands.len())].clone());
        }
        let point: Vec<_> = vars.iter().map(|v| view.lift(asg.get(&v.name).expect("set"))).collect();
        if !view.is_zero(&eval_in(&view, f, &point)?) {
            return Ok(WitnessSearch {
                witness: Some(asg),
                exhaustive: false,
            });
        }
    }
    Ok(WitnessSearch {
        witness: None,
        exhaustive: false,
    })
}
