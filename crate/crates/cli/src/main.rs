mod output;
mod suite;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use polyspaces::confhomology::{cohomology_conf, homology_conf, ConfError};
use polyspaces::exactalg::AbelianGroup;
use polyspaces::poly::Polynomial;
use polyspaces::scanning::{degree_of_jet_map, jet_nonvanishing_check, real_loop_parity, FloatPoly, ScanConfig};
use polyspaces::spaces::{check_constraints, ConstraintSpec, Domain, PolyTuple, SpaceSpec};
use polyspaces::spectral::{betti_bounds, e1_page, verify_stability, SpectralError};

use output::{csv_rows, emit, json as to_json, RunManifest};

#[derive(Parser)]
#[command(name = "polyspaces", version, about = "Spaces of polynomials with bounded root multiplicity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Space {
    /// SP^d_n
    Sp,
    /// P^d_{Y,n}(X)
    P,
    /// coprime n-tuples
    Q,
    /// coprime n-tuples, multiplicities below m
    Qm,
    /// n-tuples without common roots in Y, coefficients preserving X
    Qy,
}

#[derive(clap::Args)]
struct Common {
    /// Write output to this file and a manifest next to it
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Test membership of a polynomial or tuple
    Membership {
        #[arg(long, value_enum, required_unless_present = "constraints")]
        space: Option<Space>,
        /// Constraint system as JSON text or a path to a JSON file
        #[arg(long, conflicts_with = "space")]
        constraints: Option<String>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_parser = parse_domain, default_value = "C")]
        x: Domain,
        #[arg(long, value_parser = parse_domain, default_value = "C")]
        y: Domain,
        /// Polynomial text or a file containing it
        #[arg(long, conflicts_with = "tuple")]
        poly: Option<String>,
        /// `;`-separated polynomials or a file containing them
        #[arg(long)]
        tuple: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Integral homology and cohomology of the configuration space of p points
    ConfHomology {
        #[arg(long)]
        p: usize,
        #[command(flatten)]
        common: Common,
    },
    /// First page of the spectral sequence for SP^d_n(C)
    E1Page {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Compare the pages for d and d+1 through the stability range
    VerifyStability {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Betti number bounds from the first page
    BettiBounds {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Degree of the jet map to CP^{n-1}
    JetDegree {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Parity of the real jet loop in RP^{n-1}
    Parity {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite: appendix, maps or oracle
    Suite {
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_domain(s: &str) -> Result<Domain, String> {
    match s {
        "R" | "r" => Ok(Domain::Real),
        "C" | "c" => Ok(Domain::Complex),
        _ => Err(format!("expected R or C, got {s}")),
    }
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl ToString) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }

    fn failed(message: impl ToString) -> Self {
        Failure {
            code: 1,
            message: message.to_string(),
        }
    }
}

impl From<ConfError> for Failure {
    fn from(e: ConfError) -> Self {
        match e {
            ConfError::TooLarge { .. } => Failure {
                code: 3,
                message: e.to_string(),
            },
            other => Failure::parse(other),
        }
    }
}

impl From<SpectralError> for Failure {
    fn from(e: SpectralError) -> Self {
        match e {
            SpectralError::Conf(c) => c.into(),
            other => Failure::parse(other),
        }
    }
}

/// Output body, the verdict-derived exit code, and manifest data.
struct Run {
    body: String,
    code: u8,
}

fn read_text(arg: &str) -> Result<String, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        fs::read_to_string(path).map(|s| s.trim().to_string()).map_err(Failure::parse)
    } else {
        Ok(arg.to_string())
    }
}

fn read_poly(arg: &str) -> Result<Polynomial, Failure> {
    read_text(arg)?.parse().map_err(Failure::parse)
}

fn need(v: Option<usize>, name: &str) -> Result<usize, Failure> {
    v.ok_or_else(|| Failure::parse(format!("--{name} is required for this space")))
}

fn json_only(format: Format) -> Result<(), Failure> {
    match format {
        Format::Json => Ok(()),
        Format::Csv => Err(Failure::parse("this command only produces JSON")),
    }
}

fn verdict_code(member: bool) -> u8 {
    if member {
        0
    } else {
        1
    }
}

#[allow(clippy::too_many_arguments)]
fn membership(
    space: Option<Space>,
    constraints: Option<String>,
    d: Option<usize>,
    n: Option<usize>,
    m: Option<usize>,
    x: Domain,
    y: Domain,
    poly: Option<String>,
    tuple: Option<String>,
) -> Result<Run, Failure> {
    let tuple_input = match (&poly, &tuple) {
        (Some(p), None) => PolyTuple(vec![read_poly(p)?]),
        (None, Some(t)) => read_text(t)?.parse().map_err(Failure::parse)?,
        _ => return Err(Failure::parse("give exactly one of --poly or --tuple")),
    };

    if let Some(c) = constraints {
        let spec = ConstraintSpec::from_json(&read_text(&c)?).map_err(Failure::parse)?;
        let v = check_constraints(&tuple_input, &spec).map_err(Failure::parse)?;
        let body = to_json(&json!({ "member": v.satisfied, "violations": v.violations }));
        return Ok(Run {
            body,
            code: verdict_code(v.satisfied),
        });
    }

    let (d, n) = (need(d, "d")?, need(n, "n")?);
    let spec = match space.expect("clap enforces space or constraints") {
        Space::Sp => SpaceSpec::symmetric_product(d, n),
        Space::P => SpaceSpec::restricted_roots(d, n, x, y),
        Space::Q => SpaceSpec::coprime(d, n),
        Space::Qm => SpaceSpec::bounded_coprime(d, n, need(m, "m")?),
        Space::Qy => SpaceSpec::restricted_coprime(d, n, x, y),
    }
    .map_err(Failure::parse)?;

    let verdict = if spec.takes_tuple() {
        spec.contains_tuple(&tuple_input)
    } else if tuple_input.len() == 1 {
        spec.contains(&tuple_input.0[0])
    } else {
        return Err(Failure::parse("this space takes a single polynomial (--poly)"));
    }
    .map_err(Failure::parse)?;
    Ok(Run {
        body: to_json(&verdict),
        code: verdict_code(verdict.member),
    })
}

fn group_rows(groups: &[AbelianGroup]) -> Vec<Value> {
    groups
        .iter()
        .enumerate()
        .map(|(j, g)| json!({ "degree": j, "group": g, "display": g.to_string() }))
        .collect()
}

fn conf_homology(p: usize, format: Format) -> Result<Run, Failure> {
    let h = homology_conf(p)?;
    let c = cohomology_conf(p)?;
    let body = match format {
        Format::Json => to_json(&json!({ "p": p, "homology": group_rows(&h), "cohomology": group_rows(&c) })),
        Format::Csv => csv_rows(
            &["kind", "degree", "rank", "torsion"],
            [("homology", &h), ("cohomology", &c)].into_iter().flat_map(|(kind, gs)| {
                gs.iter().enumerate().map(move |(j, g)| {
                    vec![kind.to_string(), j.to_string(), g.free_rank().to_string(), g.torsion_string()]
                })
            }),
        ),
    };
    Ok(Run { body, code: 0 })
}

fn e1(d: usize, n: usize, format: Format) -> Result<Run, Failure> {
    let page = e1_page(d, n)?;
    let body = match format {
        Format::Json => to_json(&page),
        Format::Csv => csv_rows(
            &["p", "q", "total_degree", "rank", "torsion"],
            page.entries().map(|e| {
                vec![
                    e.p.to_string(),
                    e.q.to_string(),
                    e.total_degree.to_string(),
                    e.group.free_rank().to_string(),
                    e.group.torsion_string(),
                ]
            }),
        ),
    };
    Ok(Run { body, code: 0 })
}

fn bounds(d: usize, n: usize, format: Format) -> Result<Run, Failure> {
    let b = betti_bounds(d, n)?;
    let body = match format {
        Format::Json => {
            let map: BTreeMap<String, usize> = b.iter().map(|(j, r)| (j.to_string(), *r)).collect();
            to_json(&json!({ "d": d, "n": n, "bounds": map }))
        }
        Format::Csv => csv_rows(&["degree", "bound"], b.iter().map(|(j, r)| vec![j.to_string(), r.to_string()])),
    };
    Ok(Run { body, code: 0 })
}

fn sp_member(f: &Polynomial, n: usize) -> Result<(), Failure> {
    let d = f.degree().unwrap_or(0);
    let spec = SpaceSpec::symmetric_product(d.max(1), n).map_err(Failure::parse)?;
    let v = spec.contains(f).map_err(Failure::parse)?;
    match v.certificate {
        None => Ok(()),
        Some(c) => Err(Failure::failed(format!(
            "not in SP^{d}_{n}: {}",
            serde_json::to_string(&c).expect("certificate serializes")
        ))),
    }
}

fn jet_degree(poly: &str, n: usize, seed: u64) -> Result<Run, Failure> {
    let f = read_poly(poly)?;
    sp_member(&f, n)?;
    let cfg = ScanConfig { seed, ..ScanConfig::default() };
    let report = degree_of_jet_map(&FloatPoly::from_exact(&f), n, &cfg).map_err(Failure::failed)?;
    let code = verdict_code(Some(report.degree) == f.degree());
    Ok(Run {
        body: to_json(&report),
        code,
    })
}

fn parity(poly: &str, n: usize) -> Result<Run, Failure> {
    let f = read_poly(poly)?;
    let d = f.degree().unwrap_or(0);
    let spec = SpaceSpec::restricted_roots(d.max(1), n, Domain::Real, Domain::Real).map_err(Failure::parse)?;
    if let Some(c) = spec.contains(&f).map_err(Failure::parse)?.certificate {
        return Err(Failure::failed(format!(
            "not in P^{d}_n(R): {}",
            serde_json::to_string(&c).expect("certificate serializes")
        )));
    }
    let g = FloatPoly::from_exact(&f);
    let parity = real_loop_parity(&g, n).map_err(Failure::failed)?;
    let min_jet_norm = jet_nonvanishing_check(&g, n, &ScanConfig::default());
    Ok(Run {
        body: to_json(&json!({ "parity": parity, "degree": d, "min_jet_norm": min_jet_norm })),
        code: verdict_code(parity as usize == d % 2),
    })
}

type Dispatched = (Run, &'static str, BTreeMap<String, Value>, Option<u64>, Common);

fn dispatch(command: Command) -> Result<Dispatched, Failure> {
    let mut params = BTreeMap::new();
    let mut put = |k: &str, v: Value| {
        params.insert(k.to_string(), v);
    };
    let (run, name, seed, common) = match command {
        Command::Membership {
            space,
            constraints,
            d,
            n,
            m,
            x,
            y,
            poly,
            tuple,
            common,
        } => {
            json_only(common.format)?;
            put("d", json!(d));
            put("n", json!(n));
            put("m", json!(m));
            put("x", json!(x));
            put("y", json!(y));
            put("poly", json!(poly));
            put("tuple", json!(tuple));
            put("constraints", json!(constraints));
            let run = membership(space, constraints, d, n, m, x, y, poly, tuple)?;
            (run, "membership", None, common)
        }
        Command::ConfHomology { p, common } => {
            put("p", json!(p));
            (conf_homology(p, common.format)?, "conf-homology", None, common)
        }
        Command::E1Page { d, n, common } => {
            put("d", json!(d));
            put("n", json!(n));
            (e1(d, n, common.format)?, "e1-page", None, common)
        }
        Command::VerifyStability { d, n, common } => {
            json_only(common.format)?;
            put("d", json!(d));
            put("n", json!(n));
            let report = verify_stability(d, n)?;
            let code = verdict_code(report.mismatches.is_empty());
            let run = Run {
                body: to_json(&report),
                code,
            };
            (run, "verify-stability", None, common)
        }
        Command::BettiBounds { d, n, common } => {
            put("d", json!(d));
            put("n", json!(n));
            (bounds(d, n, common.format)?, "betti-bounds", None, common)
        }
        Command::JetDegree { poly, n, seed, common } => {
            json_only(common.format)?;
            put("poly", json!(poly));
            put("n", json!(n));
            (jet_degree(&poly, n, seed)?, "jet-degree", Some(seed), common)
        }
        Command::Parity { poly, n, common } => {
            json_only(common.format)?;
            put("poly", json!(poly));
            put("n", json!(n));
            (parity(&poly, n)?, "parity", None, common)
        }
        Command::Suite { name, seed, common } => {
            json_only(common.format)?;
            put("name", json!(name));
            let report = suite::run(&name, seed).ok_or_else(|| {
                Failure::parse(format!("unknown suite {name}; expected one of {}", suite::SUITES.join(", ")))
            })?;
            let run = Run {
                body: to_json(&report),
                code: verdict_code(report.passed),
            };
            (run, "suite", Some(seed), common)
        }
    };
    Ok((run, name, params, seed, common))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match dispatch(cli.command) {
        Ok((run, name, params, seed, common)) => {
            let manifest = RunManifest::new(name, params, seed, start.elapsed());
            if let Err(e) = emit(&run.body, common.out.as_deref(), manifest) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(run.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
