//! Evaluation of multilinear `*`-polynomials in a `*`-algebra, identity
//! checking, witness search and `*`-codimensions.

mod codim;
mod identity;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::freealg::{MLPoly, VarKind};
use crate::linalg::{Arithmetic, Field, ModP, Rationals};
use crate::staralg::StarAlgebra;

pub use codim::{block_evaluation_space, codimension, identity_block, BlockRank, CodimReport};
pub use identity::{check_star_identity, find_nonvanishing, is_star_identity, IdentityOutcome, WitnessSearch};

/// Default bound on scalar multiplications for one computation.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Arithmetic, cost bound and sampling seed shared by the evaluation routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    pub arithmetic: Arithmetic,
    pub budget: u128,
    pub seed: u64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            arithmetic: Arithmetic::default(),
            budget: DEFAULT_BUDGET,
            seed: 0x5eed,
        }
    }
}

impl EvalOptions {
    pub fn with_arithmetic(self, arithmetic: Arithmetic) -> Self {
        EvalOptions { arithmetic, ..self }
    }

    pub fn with_budget(self, budget: u128) -> Self {
        EvalOptions { budget, ..self }
    }
}

/// Counts scalar multiplications against a limit; shared across threads.
#[derive(Debug)]
pub(crate) struct CostMeter {
    used: AtomicU64,
    pub(crate) limit: u128,
}

impl CostMeter {
    pub fn new(limit: u128) -> Self {
        CostMeter {
            used: AtomicU64::new(0),
            limit,
        }
    }

    pub fn charge(&self, amount: u128) -> Result<()> {
        let amount = u64::try_from(amount).unwrap_or(u64::MAX);
        let used = self.used.fetch_add(amount, Ordering::Relaxed).saturating_add(amount) as u128;
        if used > self.limit {
            return Err(Error::CostGuard {
                estimate: used,
                limit: self.limit,
            });
        }
        Ok(())
    }
}

/// Structure constants of an algebra lifted into a field.
#[derive(Clone, Debug)]
pub struct AlgebraView<F: Field> {
    field: F,
    dim: usize,
    table: Vec<Vec<(usize, F::Elem)>>,
}

impl<F: Field> AlgebraView<F> {
    pub fn new(a: &StarAlgebra, field: F) -> Self {
        let d = a.dim();
        let table = (0..d * d)
            .map(|ij| {
                a.product(ij / d.max(1), ij % d.max(1))
                    .iter()
                    .map(|&(k, c)| (k, field.from_i64(c)))
                    .collect()
            })
            .collect();
        AlgebraView { field, dim: d, table }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lift(&self, v: &[i64]) -> Vec<F::Elem> {
        v.iter().map(|&x| self.field.from_i64(x)).collect()
    }

    pub fn zero(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim]
    }

    pub fn is_zero(&self, v: &[F::Elem]) -> bool {
        v.iter().all(|x| self.field.is_zero(x))
    }

    /// `out += a * b`; returns the number of scalar multiplications.
    pub fn mul_acc(&self, out: &mut [F::Elem], a: &[F::Elem], b: &[F::Elem]) -> u128 {
        let f = &self.field;
        let nz_b: Vec<usize> = (0..self.dim).filter(|&j| !f.is_zero(&b[j])).collect();
        let mut ops = 0u128;
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for &j in &nz_b {
                let entries = &self.table[i * self.dim + j];
                if entries.is_empty() {
                    continue;
                }
                let xy = f.mul(x, &b[j]);
                for (k, c) in entries {
                    f.mul_add_assign(&mut out[*k], &xy, c);
                }
                ops += 1 + entries.len() as u128;
            }
        }
        ops
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = self.zero();
        self.mul_acc(&mut out, a, b);
        out
    }

    pub fn scale(&self, a: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
        a.iter().map(|x| self.field.mul(x, c)).collect()
    }

    pub fn add_assign(&self, acc: &mut [F::Elem], a: &[F::Elem]) {
        for (x, y) in acc.iter_mut().zip(a) {
            *x = self.field.add(x, y);
        }
    }
}

/// Values for the variables of a polynomial, as integer coordinates in the
/// algebra's basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    values: BTreeMap<String, Vec<i64>>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, var: impl Into<String>, value: Vec<i64>) -> Self {
        self.set(var, value);
        self
    }

    pub fn set(&mut self, var: impl Into<String>, value: Vec<i64>) {
        self.values.insert(var.into(), value);
    }

    pub fn get(&self, var: &str) -> Option<&[i64]> {
        self.values.get(var).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[i64])> {
        self.values.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    /// Check that every variable of `f` has a value of the right kind in `a`.
    pub fn check(&self, a: &StarAlgebra, f: &MLPoly) -> Result<()> {
        for v in f.vars() {
            let value = self
                .get(&v.name)
                .ok_or_else(|| Error::InvalidArgument(format!("no value for `{}`", v.name)))?;
            if value.len() != a.dim() {
                return Err(Error::DimensionMismatch {
                    expected: a.dim(),
                    got: value.len(),
                });
            }
            let star = a.star(value);
            let ok = match v.kind {
                VarKind::General => true,
                VarKind::Symmetric => star == value,
                VarKind::Skew => star.iter().zip(value).all(|(s, x)| *s == -x),
            };
            if !ok {
                return Err(Error::KindViolation(format!(
                    "`{}` is {} but received {}",
                    v.name,
                    v.kind,
                    a.format_element(value)
                )));
            }
        }
        Ok(())
    }

    pub fn display<'a>(&'a self, a: &'a StarAlgebra) -> impl fmt::Display + 'a {
        AssignmentDisplay { asg: self, alg: a }
    }
}

struct AssignmentDisplay<'a> {
    asg: &'a Assignment,
    alg: &'a StarAlgebra,
}

impl fmt::Display for AssignmentDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, value)) in self.asg.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{name} = {}", self.alg.format_element(value))?;
        }
        Ok(())
    }
}

/// `f` evaluated at per-variable values (indexed like `f.vars()`).
pub(crate) fn eval_in<F: Field>(view: &AlgebraView<F>, f: &MLPoly, values: &[Vec<F::Elem>]) -> Result<Vec<F::Elem>> {
    let field = view.field();
    let mut out = view.zero();
    for (word, coeff) in f.terms() {
        if word.is_empty() {
            return Err(Error::NotMultilinear("constant terms cannot be evaluated".into()));
        }
        let c = field.from_rational(coeff)?;
        let mut acc = values[word[0]].clone();
        for &v in &word[1..] {
            acc = view.mul(&acc, &values[v]);
            if view.is_zero(&acc) {
                break;
            }
        }
        for (o, x) in out.iter_mut().zip(&acc) {
            field.mul_add_assign(o, &c, x);
        }
    }
    Ok(out)
}

/// Exact value of `f` at `asg` over the rationals.
pub fn eval_poly(a: &StarAlgebra, f: &MLPoly, asg: &Assignment) -> Result<Vec<BigRational>> {
    asg.check(a, f)?;
    let view = AlgebraView::new(a, Rationals);
    let values: Vec<_> = f
        .vars()
        .iter()
        .map(|v| view.lift(asg.get(&v.name).expect("checked")))
        .collect();
    eval_in(&view, f, &values)
}

/// Value of `f` at `asg` reduced modulo `p`.
pub fn eval_poly_mod(a: &StarAlgebra, f: &MLPoly, asg: &Assignment, p: u64) -> Result<Vec<u64>> {
    asg.check(a, f)?;
    let view = AlgebraView::new(a, ModP::new(p)?);
    let values: Vec<_> = f
        .vars()
        .iter()
        .map(|v| view.lift(asg.get(&v.name).expect("checked")))
        .collect();
    eval_in(&view, f, &values)
}

/// Basis of the elements a variable of the given kind ranges over.
pub(crate) fn kind_basis(a: &StarAlgebra, kind: VarKind) -> Vec<Vec<i64>> {
    match kind {
        VarKind::Symmetric => a.symmetric_basis().to_vec(),
        VarKind::Skew => a.skew_basis().to_vec(),
        VarKind::General => (0..a.dim()).map(|i| a.basis_vector(i)).collect(),
    }
}
