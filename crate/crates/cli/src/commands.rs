use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use starpi::analysis::{
    capelli_combination_check, codim_table_at, combination_fixtures, exponent_identities, star_exponent_simple,
    star_exponent_structural, star_exponent_ut, verify_capelli_thresholds, verify_direct_sum_bounds,
    verify_simple_nonidentity, Cell, Target, WedderburnData,
};
use starpi::eval::{check_star_identity, IdentityOutcome};
use starpi::freealg::{capelli_deleted_set, capelli_general, capelli_star, MLPoly, VarKind};
use starpi::staralg::{mk_exchange, mk_symplectic, mk_transpose, AlgebraSpec, SimpleComponent, StarAlgebra, UTSpec};
use starpi::tideal::{compare_with_algebra, gamma_generators, TStarGens};
use starpi::{Error, Result};

use crate::report::{checks_report, Check, Report, Status};
use crate::{Common, Suite};

#[derive(Args, Debug)]
pub struct CodimArgs {
    /// Algebra spec file (JSON); repeatable.
    #[arg(long = "spec")]
    specs: Vec<PathBuf>,
    /// File of generators, one polynomial per line; repeatable.
    #[arg(long = "gens")]
    gens: Vec<PathBuf>,
    /// Ideal generated by the deleted *-Capelli sets of orders SYM,SKEW; repeatable.
    #[arg(long = "gamma", value_parser = parse_pair)]
    gamma: Vec<(usize, usize)>,
    /// Compute c_n* for n = 1..=N.
    #[arg(long, default_value_t = 4, conflicts_with = "n")]
    n_max: usize,
    /// Compute only c_n* for this n.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Debug)]
pub struct IdentityArgs {
    #[arg(long)]
    spec: PathBuf,
    /// Polynomial such as "y1*x1*y2 - y2*x1*y1".
    polynomial: String,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum KindArg {
    Symmetric,
    Skew,
    General,
}

#[derive(Args, Debug)]
pub struct CapelliArgs {
    #[arg(long)]
    m: usize,
    #[arg(long, value_enum, default_value_t = KindArg::Symmetric)]
    kind: KindArg,
    /// Print every polynomial obtained by deleting interleaving variables.
    #[arg(long)]
    deleted: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Algebra spec files for the suite; defaults depend on the suite.
    #[arg(long = "spec")]
    specs: Vec<PathBuf>,
    #[arg(long, default_value_t = 4)]
    n_max: usize,
    /// Largest symmetric order scanned by `thresholds`, or the symmetric
    /// Capelli order of the ideal in `tideal-containment`.
    #[arg(long)]
    m: Option<usize>,
    /// Skew counterpart of `--m`.
    #[arg(long)]
    l: Option<usize>,
    /// Largest parameter for `exponents`.
    #[arg(long, default_value_t = 6)]
    max_param: usize,
}

#[derive(Args, Debug)]
pub struct ExponentArgs {
    #[arg(long)]
    spec: PathBuf,
}

fn parse_pair(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected SYM,SKEW, got `{s}`"))?;
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    Ok((num(a)?, num(b)?))
}

fn load(path: &Path) -> Result<StarAlgebra> {
    AlgebraSpec::load(path)?
        .build()
        .map_err(|e| Error::Spec(format!("{}: {e}", path.display())))
}

fn load_gens(path: &Path) -> Result<TStarGens> {
    let text = std::fs::read_to_string(path)?;
    let gens = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::parse::<MLPoly>)
        .collect::<Result<Vec<_>>>()?;
    TStarGens::new(gens)
}

pub fn codim(args: &CodimArgs, common: &Common) -> Result<Report> {
    let mut targets = Vec::new();
    for p in &args.specs {
        targets.push(Target::Algebra(load(p)?));
    }
    for p in &args.gens {
        targets.push(Target::Ideal {
            name: format!("<{}>", p.display()),
            gens: load_gens(p)?,
        });
    }
    for &(m, l) in &args.gamma {
        targets.push(Target::Ideal {
            name: format!("Gamma({m},{l})"),
            gens: gamma_generators(m, l)?,
        });
    }
    if targets.is_empty() {
        return Err(Error::InvalidArgument(
            "give at least one --spec, --gens or --gamma".into(),
        ));
    }
    let degrees: Vec<usize> = match args.n {
        Some(n) => vec![n],
        None => (1..=args.n_max).collect(),
    };
    if degrees.is_empty() || degrees.contains(&0) {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let table = codim_table_at(&targets, &degrees, &common.tideal())?;
    Ok(Report {
        text: table.to_text(),
        csv: table.to_csv()?,
        status: status_of(&table.cells),
    })
}

fn status_of(cells: &[Vec<Cell>]) -> Status {
    if cells.iter().flatten().any(|c| matches!(c, Cell::Refused(_))) {
        Status::Refused
    } else {
        Status::Ok
    }
}

pub fn identity(args: &IdentityArgs, common: &Common) -> Result<Report> {
    let a = load(&args.spec)?;
    let f: MLPoly = args.polynomial.parse()?;
    let outcome = check_star_identity(&a, &f, &common.eval())?;
    let (verdict, witness) = match &outcome {
        IdentityOutcome::Identity => (true, String::new()),
        IdentityOutcome::Witness(w) => (false, w.display(&a).to_string()),
    };
    let mut text = format!("{verdict}\n");
    if !verdict {
        writeln!(text, "witness: {witness}").expect("write to string");
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["algebra", "polynomial", "identity", "witness"])?;
    w.write_record([a.name(), &f.to_string(), &verdict.to_string(), &witness])?;
    let csv = String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv output is utf-8");
    Ok(Report {
        text,
        csv,
        status: Status::Ok,
    })
}

pub fn capelli(args: &CapelliArgs) -> Result<Report> {
    let polys = match (args.kind, args.deleted) {
        (KindArg::General, false) => vec![capelli_general(args.m)?],
        (KindArg::General, true) => {
            return Err(Error::InvalidArgument(
                "--deleted applies to *-Capelli polynomials".into(),
            ))
        }
        (k, deleted) => {
            let kind = if k == KindArg::Symmetric {
                VarKind::Symmetric
            } else {
                VarKind::Skew
            };
            if deleted {
                capelli_deleted_set(args.m, kind)?
            } else {
                vec![capelli_star(args.m, kind)?]
            }
        }
    };
    let text: String = polys.iter().map(|p| format!("{p}\n")).collect();
    let csv = std::iter::once("polynomial\n".to_string())
        .chain(polys.iter().map(|p| format!("\"{p}\"\n")))
        .collect();
    Ok(Report {
        text,
        csv,
        status: Status::Ok,
    })
}

fn specs_or(paths: &[PathBuf], defaults: impl FnOnce() -> Result<Vec<StarAlgebra>>) -> Result<Vec<StarAlgebra>> {
    if paths.is_empty() {
        defaults()
    } else {
        paths.iter().map(|p| load(p)).collect()
    }
}

fn ut_spec_of(path: &Path) -> Result<UTSpec> {
    match AlgebraSpec::load(path)? {
        AlgebraSpec::UtStar { components } => UTSpec::new(components),
        _ => Err(Error::Spec(format!(
            "{}: the thresholds suite scans ut_star specs only",
            path.display()
        ))),
    }
}

pub fn verify(args: &VerifyArgs, common: &Common) -> Result<Report> {
    let opts = common.eval();
    let mut checks = Vec::new();
    let mut text = String::new();
    let name = match args.suite {
        Suite::Thresholds => {
            let specs: Vec<UTSpec> = if args.specs.is_empty() {
                let t1 = SimpleComponent::Transpose { k: 1 };
                [
                    vec![t1],
                    vec![SimpleComponent::Exchange { h: 1 }],
                    vec![t1, t1],
                    vec![SimpleComponent::Symplectic { m: 1 }],
                ]
                .into_iter()
                .map(UTSpec::new)
                .collect::<Result<_>>()?
            } else {
                args.specs.iter().map(|p| ut_spec_of(p)).collect::<Result<_>>()?
            };
            let ms: Vec<usize> = (1..=args.m.unwrap_or(6)).collect();
            let ls: Vec<usize> = (1..=args.l.unwrap_or(6)).collect();
            for spec in &specs {
                let r = verify_capelli_thresholds(spec, &ms, &ls, &opts)?;
                text.push_str(&r.to_string());
                let v = r.violations();
                checks.push(Check {
                    item: spec.to_string(),
                    passed: v.is_empty(),
                    detail: if v.is_empty() {
                        format!("{} cells match", r.grid().len())
                    } else {
                        v.join("; ")
                    },
                });
            }
            "thresholds"
        }
        Suite::SimpleWitnesses => {
            let algebras = specs_or(&args.specs, || {
                Ok(vec![mk_transpose(2)?, mk_symplectic(1)?, mk_exchange(1)?])
            })?;
            for a in &algebras {
                let w = verify_simple_nonidentity(a, &opts)?;
                let mut detail = Vec::new();
                for c in std::iter::once(&w.symmetric).chain(&w.skew) {
                    let label = if c.kind == VarKind::Symmetric { "Y" } else { "Z" };
                    detail.push(match &c.witness {
                        Some(asg) => format!("Cap*_{}[{label},X] at {}", c.order, asg.display(a)),
                        None => format!("Cap*_{}[{label},X]: no witness", c.order),
                    });
                }
                checks.push(Check {
                    item: a.name().to_string(),
                    passed: w.holds(),
                    detail: detail.join("; "),
                });
            }
            "simple-witnesses"
        }
        Suite::DirectSum => {
            let pairs: Vec<(StarAlgebra, StarAlgebra)> = match args.specs.len() {
                0 => {
                    let f = mk_transpose(1)?;
                    vec![(f.clone(), f.clone()), (f, mk_exchange(1)?)]
                }
                2 => vec![(load(&args.specs[0])?, load(&args.specs[1])?)],
                k => {
                    return Err(Error::InvalidArgument(format!(
                        "direct-sum takes two --spec files, got {k}"
                    )))
                }
            };
            for (a, b) in &pairs {
                let r = verify_direct_sum_bounds(a, b, args.n_max, &opts)?;
                let rows: Vec<String> = r
                    .rows
                    .iter()
                    .map(|x| format!("n={}: {} <= {} <= {}", x.n, x.a.max(x.b), x.sum, x.a + x.b))
                    .collect();
                checks.push(Check {
                    item: format!("{} + {}", r.a, r.b),
                    passed: r.holds(),
                    detail: rows.join(", "),
                });
            }
            "direct-sum"
        }
        Suite::TidealContainment => {
            let (m, l) = (args.m.unwrap_or(4), args.l.unwrap_or(2));
            let gens = gamma_generators(m, l)?;
            let algebras = specs_or(&args.specs, || Ok(vec![mk_transpose(2)?]))?;
            for a in &algebras {
                for n in 1..=args.n_max {
                    let c = compare_with_algebra(&gens, a, n, &common.tideal())?;
                    checks.push(Check {
                        item: format!("Gamma({m},{l}) in Id*({}), n={n}", a.name()),
                        passed: c.ideal_inside_id && c.agree,
                        detail: format!(
                            "codimensions {} (ideal) and {} (algebra), equal: {}",
                            c.ideal_codim, c.algebra_codim, c.equal
                        ),
                    });
                }
            }
            "tideal-containment"
        }
        Suite::Exponents => {
            for r in exponent_identities(args.max_param, 64)? {
                checks.push(Check {
                    item: r.component.clone(),
                    passed: r.holds,
                    detail: format!("{} + {} = {}", r.symmetric, r.skew, r.expected),
                });
            }
            let t1 = SimpleComponent::Transpose { k: 1 };
            for cs in [
                vec![t1, t1],
                vec![SimpleComponent::Exchange { h: 1 }, SimpleComponent::Symplectic { m: 1 }],
                vec![t1, SimpleComponent::Transpose { k: 2 }],
            ] {
                let spec = UTSpec::new(cs)?;
                let a = starpi::staralg::mk_ut_star(&spec)?;
                let structural = star_exponent_structural(&a, &WedderburnData::natural(&a)?)?;
                let formula = star_exponent_ut(&spec);
                checks.push(Check {
                    item: spec.to_string(),
                    passed: structural == formula,
                    detail: format!("structural {structural}, formula {formula}"),
                });
            }
            for (m, l) in [(2, 1), (2, 2)] {
                let r = capelli_combination_check(m, l, &combination_fixtures()?, &opts)?;
                checks.push(Check {
                    item: format!("Cap_{} from Cap*_{m}[Y,X], Cap*_{l}[Z,X]", m + l),
                    passed: r.holds(),
                    detail: format!(
                        "{} fixtures satisfy the hypotheses",
                        r.entries.iter().filter(|e| e.hypotheses).count()
                    ),
                });
            }
            "exponents"
        }
    };
    checks_report(name, &checks, &text)
}

pub fn exponent(args: &ExponentArgs) -> Result<Report> {
    let spec = AlgebraSpec::load(&args.spec)?;
    let a = spec.build()?;
    let structural = star_exponent_structural(&a, &WedderburnData::natural(&a)?)?;
    let mut lines = vec![format!("{}: exp* = {structural}", a.name())];
    if let Ok(e) = star_exponent_simple(&a) {
        lines.push(format!("simple: dim A = {e}"));
    }
    if let AlgebraSpec::UtStar { components } = &spec {
        lines.push(format!(
            "UT*: sum of component dimensions = {}",
            star_exponent_ut(&UTSpec::new(components.clone())?)
        ));
    }
    let text = lines.iter().map(|l| format!("{l}\n")).collect();
    let csv = format!("algebra,exponent\n\"{}\",{structural}\n", a.name());
    Ok(Report {
        text,
        csv,
        status: Status::Ok,
    })
}
