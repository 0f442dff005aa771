//! Multilinear elements of the free algebra with involution.
//!
//! Variables are typed symmetric (`y`), skew (`z`) or general (`x`).
//! Degree-`n` multilinear polynomials in `n` typed variables form an
//! `n!`-dimensional space indexed by permutations; across all `2^n` type
//! vectors these blocks make up the full space of multilinear
//! `*`-polynomials of degree `n`.

mod capelli;
mod parse;
pub mod perm;
mod poly;

pub use capelli::{capelli, capelli_deleted_set, capelli_general, capelli_star, capelli_star_deleted};
pub use poly::{FreshVars, MLPoly, Var, VarKind};

#[cfg(test)]
pub(crate) use poly::int;

/// Symmetric/skew typing of the variables `1..=n` of a multilinear block.
/// Bit `i` set means variable `i+1` is skew.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeVector {
    n: usize,
    skew_mask: u32,
}

impl TypeVector {
    pub fn new(kinds: &[VarKind]) -> crate::Result<TypeVector> {
        let mut skew_mask = 0;
        for (i, k) in kinds.iter().enumerate() {
            match k {
                VarKind::Symmetric => {}
                VarKind::Skew => skew_mask |= 1 << i,
                VarKind::General => {
                    return Err(crate::Error::KindViolation(
                        "type vectors only contain symmetric and skew entries".into(),
                    ))
                }
            }
        }
        Ok(TypeVector {
            n: kinds.len(),
            skew_mask,
        })
    }

    pub fn from_mask(n: usize, skew_mask: u32) -> TypeVector {
        debug_assert!(n >= 32 || skew_mask >> n == 0);
        TypeVector { n, skew_mask }
    }

    /// All `2^n` type vectors, ordered by block index.
    pub fn all(n: usize) -> impl Iterator<Item = TypeVector> {
        (0..1u32 << n).map(move |i| TypeVector::from_block_index(n, i as usize))
    }

    /// Block index: variable 1 is the most significant bit, symmetric < skew.
    pub fn block_index(&self) -> usize {
        (0..self.n).fold(0, |acc, i| (acc << 1) | ((self.skew_mask >> i) & 1) as usize)
    }

    pub fn from_block_index(n: usize, index: usize) -> TypeVector {
        let mut mask = 0;
        for i in 0..n {
            if (index >> (n - 1 - i)) & 1 == 1 {
                mask |= 1 << i;
            }
        }
        TypeVector { n, skew_mask: mask }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn kind(&self, i: usize) -> VarKind {
        if (self.skew_mask >> i) & 1 == 1 {
            VarKind::Skew
        } else {
            VarKind::Symmetric
        }
    }

    pub fn kinds(&self) -> Vec<VarKind> {
        (0..self.n).map(|i| self.kind(i)).collect()
    }

    pub fn skew_mask(&self) -> u32 {
        self.skew_mask
    }

    /// Canonical variables `y_i` / `z_i` for positions `1..=n`.
    pub fn variables(&self) -> Vec<Var> {
        (0..self.n)
            .map(|i| match self.kind(i) {
                VarKind::Skew => Var::z(i + 1),
                _ => Var::y(i + 1),
            })
            .collect()
    }
}

impl std::fmt::Display for TypeVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.n {
            f.write_str(if self.kind(i) == VarKind::Skew { "z" } else { "y" })?;
        }
        Ok(())
    }
}

/// Number of degree-`n` multilinear monomials over all type vectors: `2^n · n!`.
pub fn full_dimension(n: usize) -> usize {
    (1usize << n) * perm::factorial(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_vector_indexing() {
        for n in 0..=4 {
            let all: Vec<_> = TypeVector::all(n).collect();
            assert_eq!(all.len(), 1 << n);
            for (i, t) in all.iter().enumerate() {
                assert_eq!(t.block_index(), i);
            }
        }
        let t = TypeVector::new(&[VarKind::Symmetric, VarKind::Skew]).unwrap();
        assert_eq!(t.to_string(), "yz");
        assert_eq!(t.block_index(), 1);
        assert!(TypeVector::new(&[VarKind::General]).is_err());
    }

    #[test]
    fn monomial_count() {
        for n in 1..=5 {
            let count: usize = TypeVector::all(n).map(|_| perm::factorial(n)).sum();
            assert_eq!(count, full_dimension(n));
        }
        assert_eq!(full_dimension(5), 3840);
    }
}
