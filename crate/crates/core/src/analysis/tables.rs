use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::{check_star_identity, codimension, EvalOptions};
use crate::freealg::{capelli_general, capelli_star, VarKind};
use crate::staralg::StarAlgebra;
use crate::tideal::{gamma_generators, ideal_codimension, TStarGens, TidealOptions};

/// Something with a codimension sequence: an algebra or a generated ideal.
#[derive(Clone, Debug)]
pub enum Target {
    Algebra(StarAlgebra),
    Ideal { name: String, gens: TStarGens },
}

impl Target {
    pub fn name(&self) -> &str {
        match self {
            Target::Algebra(a) => a.name(),
            Target::Ideal { name, .. } => name,
        }
    }

    fn codim(&self, n: usize, opts: &TidealOptions) -> Result<(usize, bool)> {
        match self {
            Target::Algebra(a) => codimension(a, n, &opts.eval).map(|r| (r.total, r.agree)),
            Target::Ideal { gens, .. } => ideal_codimension(gens, n, opts).map(|r| (r.codim, r.agree)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Cell {
    Value { codim: usize, agree: bool },
    Refused(String),
}

impl Cell {
    pub fn value(&self) -> Option<usize> {
        match self {
            Cell::Value { codim, .. } => Some(*codim),
            Cell::Refused(_) => None,
        }
    }
}

/// `c_n*` for a list of degrees, one column per target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodimTable {
    pub targets: Vec<String>,
    pub degrees: Vec<usize>,
    /// `cells[t][k]` is the cell for `degrees[k]`
    pub cells: Vec<Vec<Cell>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    target: String,
    n: usize,
    codim: Option<usize>,
    agree: Option<bool>,
    status: String,
}

impl CodimTable {
    /// Panics if `n` is not one of the table's degrees.
    pub fn cell(&self, target: usize, n: usize) -> &Cell {
        let k = self.degrees.iter().position(|&d| d == n).expect("degree in table");
        &self.cells[target][k]
    }

    /// `c_n(t1) / c_n(t2)` when both cells were computed.
    pub fn ratio(&self, t1: usize, t2: usize, n: usize) -> Option<f64> {
        let (a, b) = (self.cell(t1, n).value()?, self.cell(t2, n).value()?);
        (b != 0).then(|| a as f64 / b as f64)
    }

    pub fn all_agree(&self) -> bool {
        self.cells
            .iter()
            .flatten()
            .all(|c| !matches!(c, Cell::Value { agree: false, .. }))
    }

    pub fn to_text(&self) -> String {
        let mut header = vec!["n".to_string()];
        header.extend(self.targets.iter().cloned());
        let pairs: Vec<(usize, usize)> = (0..self.targets.len())
            .flat_map(|i| (i + 1..self.targets.len()).map(move |j| (i, j)))
            .collect();
        header.extend(pairs.iter().map(|&(i, j)| format!("ratio {}/{}", i + 1, j + 1)));
        let mut rows = vec![header];
        for &n in &self.degrees {
            let mut row = vec![n.to_string()];
            for t in 0..self.targets.len() {
                row.push(match self.cell(t, n) {
                    Cell::Value { codim, agree: true } => codim.to_string(),
                    Cell::Value { codim, agree: false } => format!("{codim} (primes disagree)"),
                    Cell::Refused(_) => "refused".into(),
                });
            }
            for &(i, j) in &pairs {
                row.push(self.ratio(i, j, n).map_or("-".into(), |r| format!("{r:.6}")));
            }
            rows.push(row);
        }
        let widths: Vec<usize> = (0..rows[0].len())
            .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &rows {
            let line: Vec<String> = row.iter().zip(&widths).map(|(s, &w)| format!("{s:>w$}")).collect();
            writeln!(out, "{}", line.join("  ").trim_end()).expect("write to string");
        }
        for (t, name) in self.targets.iter().enumerate() {
            for (n, c) in self.degrees.iter().zip(&self.cells[t]) {
                if let Cell::Refused(why) = c {
                    writeln!(out, "{name}, n = {n}: {why}").expect("write to string");
                }
            }
        }
        out
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for (t, name) in self.targets.iter().enumerate() {
            for &n in &self.degrees {
                let row = match self.cell(t, n) {
                    Cell::Value { codim, agree } => CsvRow {
                        target: name.clone(),
                        n,
                        codim: Some(*codim),
                        agree: Some(*agree),
                        status: "ok".into(),
                    },
                    Cell::Refused(why) => CsvRow {
                        target: name.clone(),
                        n,
                        codim: None,
                        agree: None,
                        status: why.clone(),
                    },
                };
                w.serialize(row)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn from_csv(text: &str) -> Result<CodimTable> {
        let mut targets: Vec<String> = Vec::new();
        let mut cells: Vec<Vec<Cell>> = Vec::new();
        let mut degrees: Vec<Vec<usize>> = Vec::new();
        for row in csv::Reader::from_reader(text.as_bytes()).deserialize() {
            let row: CsvRow = row?;
            let t = match targets.iter().position(|x| *x == row.target) {
                Some(t) => t,
                None => {
                    targets.push(row.target.clone());
                    cells.push(Vec::new());
                    degrees.push(Vec::new());
                    targets.len() - 1
                }
            };
            if degrees[t].last().is_some_and(|&d| d >= row.n) {
                return Err(Error::Spec(format!(
                    "rows for {} are not in order at n = {}",
                    row.target, row.n
                )));
            }
            degrees[t].push(row.n);
            cells[t].push(match (row.codim, row.agree) {
                (Some(codim), Some(agree)) => Cell::Value { codim, agree },
                _ => Cell::Refused(row.status),
            });
        }
        let first = degrees.first().cloned().unwrap_or_default();
        if degrees.iter().any(|d| *d != first) {
            return Err(Error::Spec("targets cover different degrees".into()));
        }
        Ok(CodimTable {
            targets,
            degrees: first,
            cells,
        })
    }
}

fn refusal(e: Error) -> Result<Cell> {
    match e {
        Error::CostGuard { estimate, limit } => Ok(Cell::Refused(format!(
            "cost guard: estimate {estimate} exceeds budget {limit}"
        ))),
        Error::InvalidArgument(msg) => Ok(Cell::Refused(msg)),
        e => Err(e),
    }
}

/// Codimension table for `n = 1..=n_max`; cells that exceed the budget or
/// the degree cap are recorded as refusals.
pub fn codim_table(targets: &[Target], n_max: usize, opts: &TidealOptions) -> Result<CodimTable> {
    codim_table_at(targets, &(1..=n_max).collect::<Vec<_>>(), opts)
}

/// [`codim_table`] for an explicit list of degrees.
pub fn codim_table_at(targets: &[Target], degrees: &[usize], opts: &TidealOptions) -> Result<CodimTable> {
    let jobs: Vec<(usize, usize)> = (0..targets.len())
        .flat_map(|t| degrees.iter().map(move |&n| (t, n)))
        .collect();
    let results: Vec<Cell> = jobs
        .par_iter()
        .map(|&(t, n)| match targets[t].codim(n, opts) {
            Ok((codim, agree)) => Ok(Cell::Value { codim, agree }),
            Err(e) => refusal(e),
        })
        .collect::<Result<_>>()?;
    let cells = if degrees.is_empty() {
        vec![Vec::new(); targets.len()]
    } else {
        results.chunks(degrees.len()).map(<[Cell]>::to_vec).collect()
    };
    Ok(CodimTable {
        targets: targets.iter().map(|t| t.name().to_string()).collect(),
        degrees: degrees.to_vec(),
        cells,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumBoundRow {
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub sum: usize,
    pub lower: bool,
    pub upper: bool,
}

/// `max(c_n(A), c_n(B)) ≤ c_n(A ⊕ B) ≤ c_n(A) + c_n(B)` for `n ≤ n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumBoundReport {
    pub a: String,
    pub b: String,
    pub rows: Vec<SumBoundRow>,
}

impl SumBoundReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.lower && r.upper)
    }
}

pub fn verify_direct_sum_bounds(
    a: &StarAlgebra,
    b: &StarAlgebra,
    n_max: usize,
    opts: &EvalOptions,
) -> Result<SumBoundReport> {
    let s = crate::staralg::direct_sum(a, b)?;
    let rows = (1..=n_max)
        .map(|n| {
            let (ca, cb, cs) = (
                codimension(a, n, opts)?.total,
                codimension(b, n, opts)?.total,
                codimension(&s, n, opts)?.total,
            );
            Ok(SumBoundRow {
                n,
                a: ca,
                b: cb,
                sum: cs,
                lower: ca.max(cb) <= cs,
                upper: cs <= ca + cb,
            })
        })
        .collect::<Result<_>>()?;
    Ok(SumBoundReport {
        a: a.name().to_string(),
        b: b.name().to_string(),
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    pub codim: usize,
    /// `(M + L)^n`
    pub bound: u128,
    pub within: bool,
}

/// Codimensions of the ideal generated by the deleted `*`-Capelli sets of
/// orders `M + 1` and `L + 1`, against `(M + L)^n`. Reported, not a limit.
pub fn capelli_ideal_growth(m: usize, l: usize, n_max: usize, opts: &TidealOptions) -> Result<Vec<GrowthRow>> {
    let gens = gamma_generators(m + 1, l + 1)?;
    (1..=n_max)
        .map(|n| {
            let codim = ideal_codimension(&gens, n, opts)?.codim;
            let bound = ((m + l) as u128).pow(n as u32);
            Ok(GrowthRow {
                n,
                codim,
                bound,
                within: codim as u128 <= bound,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CombinationEntry {
    pub fixture: String,
    /// Satisfies both `*`-Capelli identities of orders `M` and `L`.
    pub hypotheses: bool,
    /// Satisfies the ordinary Capelli identity of order `M + L`.
    pub capelli_vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CombinationReport {
    pub m: usize,
    pub l: usize,
    pub entries: Vec<CombinationEntry>,
}

impl CombinationReport {
    /// At least one fixture meets the hypotheses, and every one that does
    /// satisfies `Cap_{M+L}`.
    pub fn holds(&self) -> bool {
        self.entries.iter().any(|e| e.hypotheses) && self.entries.iter().all(|e| !e.hypotheses || e.capelli_vanishes)
    }
}

/// Every fixture satisfying `Cap*_M[Y,X]` and `Cap*_L[Z,X]` must satisfy
/// `Cap_{M+L}`; all checks are exhaustive.
pub fn capelli_combination_check(
    m: usize,
    l: usize,
    fixtures: &[StarAlgebra],
    opts: &EvalOptions,
) -> Result<CombinationReport> {
    let sym = capelli_star(m, VarKind::Symmetric)?;
    let skew = capelli_star(l, VarKind::Skew)?;
    let general = capelli_general(m + l)?;
    let entries = fixtures
        .iter()
        .map(|a| {
            let hypotheses =
                check_star_identity(a, &sym, opts)?.is_identity() && check_star_identity(a, &skew, opts)?.is_identity();
            let capelli_vanishes = check_star_identity(a, &general, opts)?.is_identity();
            Ok(CombinationEntry {
                fixture: a.name().to_string(),
                hypotheses,
                capelli_vanishes,
            })
        })
        .collect::<Result<_>>()?;
    Ok(CombinationReport { m, l, entries })
}

/// Small algebras with nilpotent parts, used as the fixture pool for
/// [`capelli_combination_check`].
pub fn combination_fixtures() -> Result<Vec<StarAlgebra>> {
    use crate::staralg::{
        direct_sum, mk_exchange, mk_transpose, mk_ut_star, tensor_nilpotent, zero_algebra, SimpleComponent, UTSpec,
    };
    let f = mk_transpose(1)?;
    let ex = mk_exchange(1)?;
    let t1 = SimpleComponent::Transpose { k: 1 };
    Ok(vec![
        zero_algebra(),
        f.clone(),
        tensor_nilpotent(&f, 2, 3)?,
        tensor_nilpotent(&f, 3, 2)?,
        tensor_nilpotent(&f, 3, 4)?,
        direct_sum(&f, &f)?,
        ex.clone(),
        tensor_nilpotent(&ex, 1, 2)?,
        tensor_nilpotent(&ex, 2, 3)?,
        direct_sum(&ex, &f)?,
        mk_ut_star(&UTSpec::new(vec![t1])?)?,
        mk_ut_star(&UTSpec::new(vec![t1, t1])?)?,
        mk_transpose(2)?,
    ])
}
