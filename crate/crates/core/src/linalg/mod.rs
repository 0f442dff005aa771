//! Exact linear algebra over the rationals and prime fields.

mod field;
mod matrix;
mod subspace;

pub use field::{is_prime, symmetric_lift, Field, ModP, Rationals, Regime, Scalar, DEFAULT_PRIME, DEFAULT_PRIME2};
pub use matrix::{rank_scalars, Matrix};
pub use subspace::{RowReducer, Subspace};

use crate::error::Result;

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    m.rank()
}

pub fn row_space<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    m.row_space()
}

pub fn subspace_intersect<F: Field>(a: &Subspace<F>, b: &Subspace<F>) -> Result<Subspace<F>> {
    a.intersect(b)
}

pub fn subspace_equal<F: Field>(a: &Subspace<F>, b: &Subspace<F>) -> Result<bool> {
    a.equals(b)
}

pub fn subspace_contains<F: Field>(a: &Subspace<F>, b: &Subspace<F>) -> Result<bool> {
    a.contains(b)
}

/// The arithmetic a computation runs in: exact rationals, or a pair of
/// primes whose results are cross-checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arithmetic {
    Rational,
    DualPrime(u64, u64),
    SinglePrime(u64),
}

impl Default for Arithmetic {
    fn default() -> Self {
        Arithmetic::DualPrime(DEFAULT_PRIME, DEFAULT_PRIME2)
    }
}

impl Arithmetic {
    pub fn regimes(&self) -> Vec<Regime> {
        match *self {
            Arithmetic::Rational => vec![Regime::Rational],
            Arithmetic::DualPrime(p, q) => vec![Regime::ModP(p), Regime::ModP(q)],
            Arithmetic::SinglePrime(p) => vec![Regime::ModP(p)],
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Arithmetic::Rational => Ok(()),
            Arithmetic::SinglePrime(p) => ModP::new(p).map(|_| ()),
            Arithmetic::DualPrime(p, q) => {
                ModP::new(p)?;
                ModP::new(q)?;
                if p == q {
                    return Err(crate::Error::InvalidArgument(format!(
                        "cross-check primes must differ (both {p})"
                    )));
                }
                Ok(())
            }
        }
    }
}
