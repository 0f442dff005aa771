use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::perm;

/// Symmetric variables are the `y`s, skew variables the `z`s, and general
/// (untyped) variables everything else.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarKind {
    Symmetric,
    Skew,
    General,
}

impl VarKind {
    /// Kind implied by a variable name: `y…` symmetric, `z…` skew, else general.
    pub fn from_name(name: &str) -> VarKind {
        match name.as_bytes().first() {
            Some(b'y') => VarKind::Symmetric,
            Some(b'z') => VarKind::Skew,
            _ => VarKind::General,
        }
    }

    pub fn prefix(self) -> &'static str {
        match self {
            VarKind::Symmetric => "y",
            VarKind::Skew => "z",
            VarKind::General => "x",
        }
    }
}

impl fmt::Display for VarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VarKind::Symmetric => "symmetric",
            VarKind::Skew => "skew",
            VarKind::General => "general",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Var {
    pub name: String,
    pub kind: VarKind,
}

impl Var {
    pub fn new(name: impl Into<String>, kind: VarKind) -> Var {
        Var {
            name: name.into(),
            kind,
        }
    }

    /// A variable whose kind is read off its name.
    pub fn named(name: impl Into<String>) -> Var {
        let name = name.into();
        let kind = VarKind::from_name(&name);
        Var { name, kind }
    }

    pub fn y(i: usize) -> Var {
        Var::new(format!("y{i}"), VarKind::Symmetric)
    }

    pub fn z(i: usize) -> Var {
        Var::new(format!("z{i}"), VarKind::Skew)
    }

    pub fn x(i: usize) -> Var {
        Var::new(format!("x{i}"), VarKind::General)
    }

    /// Sort key: kind, alphabetic stem, numeric suffix, full name.
    fn sort_key(&self) -> (VarKind, &str, u64, &str) {
        let stem_end = self.name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        let (stem, digits) = self.name.split_at(stem_end);
        (self.kind, stem, digits.parse().unwrap_or(0), &self.name)
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

/// Monotone counter for collision-free variable names.
#[derive(Clone, Debug)]
pub struct FreshVars {
    next: usize,
}

impl FreshVars {
    pub fn starting_at(next: usize) -> FreshVars {
        FreshVars { next }
    }

    pub fn fresh(&mut self, kind: VarKind) -> Var {
        let v = Var::new(format!("{}{}", kind.prefix(), self.next), kind);
        self.next += 1;
        v
    }
}

/// Multilinear polynomial: every monomial is a permutation of the variable
/// list. Terms are keyed by that permutation (as indices into `vars`); zero
/// coefficients are never stored. Variables are kept in canonical order, so
/// structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MLPoly {
    vars: Vec<Var>,
    terms: BTreeMap<Vec<usize>, BigRational>,
}

pub(crate) fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

impl MLPoly {
    /// Build from terms whose words index into `vars` (in the given order).
    pub fn new(vars: Vec<Var>, terms: impl IntoIterator<Item = (Vec<usize>, BigRational)>) -> Result<MLPoly> {
        let mut seen = BTreeSet::new();
        for v in &vars {
            if !seen.insert(v.name.as_str()) {
                return Err(Error::DuplicateVariable(v.name.clone()));
            }
        }
        let n = vars.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| vars[a].cmp(&vars[b]));
        let mut new_index = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let mut acc: BTreeMap<Vec<usize>, BigRational> = BTreeMap::new();
        for (word, c) in terms {
            let mut hit = vec![false; n];
            if word.len() != n || word.iter().any(|&i| i >= n || std::mem::replace(&mut hit[i], true)) {
                return Err(Error::NotMultilinear(format!(
                    "monomial {:?} is not a permutation of {} variables",
                    word, n
                )));
            }
            let key: Vec<usize> = word.iter().map(|&i| new_index[i]).collect();
            *acc.entry(key).or_insert_with(BigRational::zero) += c;
        }
        acc.retain(|_, c| !c.is_zero());
        let vars = order.into_iter().map(|i| vars[i].clone()).collect();
        Ok(MLPoly { vars, terms: acc })
    }

    pub fn zero(vars: Vec<Var>) -> Result<MLPoly> {
        MLPoly::new(vars, std::iter::empty())
    }

    /// The single monomial reading the variables left to right.
    pub fn monomial(word: Vec<Var>) -> Result<MLPoly> {
        let n = word.len();
        MLPoly::new(word, [((0..n).collect(), BigRational::one())])
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn degree(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, BigRational> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn coefficient(&self, word: &[&str]) -> BigRational {
        let key: Option<Vec<usize>> = word.iter().map(|w| self.var_index(w)).collect();
        key.and_then(|k| self.terms.get(&k).cloned())
            .unwrap_or_else(BigRational::zero)
    }

    fn same_vars(&self, other: &MLPoly) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::InvalidArgument(format!(
                "linear combination of polynomials in different variables: {} vs {}",
                names(&self.vars),
                names(&other.vars)
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &MLPoly) -> Result<MLPoly> {
        self.same_vars(other)?;
        let terms = self
            .terms
            .iter()
            .chain(&other.terms)
            .map(|(w, c)| (w.clone(), c.clone()));
        MLPoly::new(self.vars.clone(), terms)
    }

    pub fn sub(&self, other: &MLPoly) -> Result<MLPoly> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> MLPoly {
        let terms = self
            .terms
            .iter()
            .map(|(w, v)| (w.clone(), v * c))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        MLPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Product of polynomials in disjoint variables.
    pub fn mul(&self, other: &MLPoly) -> Result<MLPoly> {
        for v in &other.vars {
            if self.vars.iter().any(|w| w.name == v.name) {
                return Err(Error::VariableCollision(v.name.clone()));
            }
        }
        let offset = self.vars.len();
        let mut vars = self.vars.clone();
        vars.extend(other.vars.iter().cloned());
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let mut w = wa.clone();
                w.extend(wb.iter().map(|i| i + offset));
                terms.push((w, ca * cb));
            }
        }
        MLPoly::new(vars, terms)
    }

    /// Number of skew variables.
    pub fn skew_count(&self) -> usize {
        self.vars.iter().filter(|v| v.kind == VarKind::Skew).count()
    }

    /// The involution of the free algebra: reverses every monomial and
    /// multiplies by `-1` per skew variable. General variables have no
    /// definite parity, so polynomials containing them are rejected.
    pub fn star(&self) -> Result<MLPoly> {
        if let Some(v) = self.vars.iter().find(|v| v.kind == VarKind::General) {
            return Err(Error::KindViolation(format!(
                "star of a polynomial in the general variable `{}` is not a polynomial in typed variables",
                v.name
            )));
        }
        let sign = if self.skew_count().is_multiple_of(2) {
            int(1)
        } else {
            int(-1)
        };
        let terms = self.terms.iter().map(|(w, c)| {
            let mut r = w.clone();
            r.reverse();
            (r, c * &sign)
        });
        MLPoly::new(self.vars.clone(), terms)
    }

    /// Swap the roles of variables `i` and `j` (indices into `vars`).
    pub fn swap_vars(&self, i: usize, j: usize) -> MLPoly {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| {
                let w = w
                    .iter()
                    .map(|&k| {
                        if k == i {
                            j
                        } else if k == j {
                            i
                        } else {
                            k
                        }
                    })
                    .collect();
                (w, c.clone())
            })
            .collect();
        MLPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// `Σ_σ sgn(σ) · σ(f)` over all permutations of the variables at `slots`.
    pub fn alternate(&self, slots: &[usize]) -> Result<MLPoly> {
        let Some(&first) = slots.first() else {
            return Ok(self.clone());
        };
        let kind = self
            .vars
            .get(first)
            .ok_or_else(|| Error::InvalidArgument(format!("slot {first} out of range")))?
            .kind;
        let mut distinct = BTreeSet::new();
        for &s in slots {
            let v = self
                .vars
                .get(s)
                .ok_or_else(|| Error::InvalidArgument(format!("slot {s} out of range")))?;
            if v.kind != kind {
                return Err(Error::KindViolation(format!(
                    "cannot alternate `{}` ({}) with {} variables",
                    v.name, v.kind, kind
                )));
            }
            if !distinct.insert(s) {
                return Err(Error::InvalidArgument(format!("slot {s} repeated")));
            }
        }
        let mut terms = Vec::new();
        for sigma in perm::all_perms(slots.len()) {
            let sgn = int(perm::sign(&sigma));
            let mut map: Vec<usize> = (0..self.vars.len()).collect();
            for (a, &b) in sigma.iter().enumerate() {
                map[slots[a]] = slots[b];
            }
            for (w, c) in &self.terms {
                terms.push((w.iter().map(|&k| map[k]).collect(), c * &sgn));
            }
        }
        MLPoly::new(self.vars.clone(), terms)
    }

    /// Rename variables (kinds may not change through renaming).
    pub fn rename(&self, map: &BTreeMap<String, String>) -> Result<MLPoly> {
        let vars = self
            .vars
            .iter()
            .map(|v| Var::new(map.get(&v.name).cloned().unwrap_or_else(|| v.name.clone()), v.kind))
            .collect();
        MLPoly::new(vars, self.terms.iter().map(|(w, c)| (w.clone(), c.clone())))
    }

    /// Whether `star(self) = self` (symmetric) or `= -self` (skew).
    pub fn parity(&self) -> Option<VarKind> {
        let s = self.star().ok()?;
        if s == *self {
            Some(VarKind::Symmetric)
        } else if s == self.scale(&int(-1)) {
            Some(VarKind::Skew)
        } else {
            None
        }
    }

    /// `u · f(p_1, …, p_d) · v`. Unassigned variables stay in place. A
    /// symmetric slot must receive a polynomial fixed by `star`, a skew slot
    /// one negated by it; all participating variable sets must be disjoint.
    pub fn substitute(
        &self,
        assignment: &BTreeMap<String, MLPoly>,
        left: Option<&MLPoly>,
        right: Option<&MLPoly>,
    ) -> Result<MLPoly> {
        for name in assignment.keys() {
            if self.var_index(name).is_none() {
                return Err(Error::InvalidArgument(format!(
                    "`{name}` is not a variable of the polynomial"
                )));
            }
        }
        let mut images = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            let p = match assignment.get(&v.name) {
                Some(p) => {
                    check_slot(v, p)?;
                    p.clone()
                }
                None => MLPoly::monomial(vec![v.clone()])?,
            };
            images.push(p);
        }
        let mut in_use: BTreeSet<&str> = BTreeSet::new();
        let extras = left.into_iter().chain(right);
        for p in images.iter().chain(extras) {
            for v in &p.vars {
                if !in_use.insert(v.name.as_str()) {
                    return Err(Error::VariableCollision(v.name.clone()));
                }
            }
        }
        let unit = MLPoly::new(Vec::new(), [(Vec::new(), BigRational::one())])?;
        let mut acc: Option<MLPoly> = None;
        for (w, c) in &self.terms {
            let mut prod = left.cloned().unwrap_or_else(|| unit.clone());
            for &k in w {
                prod = prod.mul(&images[k])?;
            }
            if let Some(r) = right {
                prod = prod.mul(r)?;
            }
            let prod = prod.scale(c);
            acc = Some(match acc {
                None => prod,
                Some(a) => a.add(&prod)?,
            });
        }
        match acc {
            Some(a) => Ok(a),
            None => {
                let mut vars: Vec<Var> = left.map(|l| l.vars.clone()).unwrap_or_default();
                for p in &images {
                    vars.extend(p.vars.iter().cloned());
                }
                if let Some(r) = right {
                    vars.extend(r.vars.iter().cloned());
                }
                MLPoly::zero(vars)
            }
        }
    }
}

fn check_slot(slot: &Var, p: &MLPoly) -> Result<()> {
    match slot.kind {
        VarKind::General => Ok(()),
        kind => {
            if p.is_zero() || p.parity() == Some(kind) {
                Ok(())
            } else {
                Err(Error::KindViolation(format!(
                    "{kind} slot `{}` cannot receive `{p}`",
                    slot.name
                )))
            }
        }
    }
}

fn names(vars: &[Var]) -> String {
    vars.iter().map(|v| v.name.as_str()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for MLPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let body = w
                .iter()
                .map(|&k| self.vars[k].name.as_str())
                .collect::<Vec<_>>()
                .join("*");
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&body)?;
            } else {
                write!(f, "{mag}*{body}")?;
            }
        }
        Ok(())
    }
}
