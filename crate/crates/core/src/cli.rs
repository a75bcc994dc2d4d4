//! Command-line front end. [`run`] parses arguments, writes the report to
//! the given writer and returns the exit code: `0` when every checked
//! property holds, `1` when one fails, `2` on usage, input or resource
//! errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::chaincx::{
    fox_complex, koszul_torus, surface, tensor_product, twist, wedge, TensorMode,
};
use crate::error::{Error, Result};
use crate::jumploci::{jump_loci_with, JumpLocusSet};
use crate::limits::Limits;
use crate::ring::{CoefficientDomain, ExtensionField, PrimeField, TorusPoint};
use crate::verify::{
    betti_bounds, duality_check, run_oracle, sample_points, verify_components, verify_propagation,
    IndexingMode, OracleReport, VerificationReport, DEFAULT_ORACLE_POINTS,
};
use crate::{FreeComplex, GroupPresentation, Ideal};

#[derive(Parser, Debug)]
#[command(
    name = "torusjump",
    version,
    about = "Cohomology jump loci of free complexes over Laurent rings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Cap on the total degree of intermediate polynomials.
    #[arg(long, global = true)]
    pub max_degree: Option<u32>,

    /// Cap on the size of a Gröbner basis under construction.
    #[arg(long, global = true)]
    pub max_basis: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a complex: torus:N, wedge:K, surface:G, fox:FILE, tensor:A,B or
    /// twist:SOURCE,L1,L2,...
    Generate {
        kind: String,
        /// Coefficients: qq, zz or fp:P.
        #[arg(long, default_value = "qq")]
        coeff: String,
        /// Tensor over the ring of the first factor instead of
        /// concatenating variables.
        #[arg(long)]
        same_ring: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Jump loci of every degree.
    Jumps {
        input: PathBuf,
        /// Reduce the complex to qq or fp:P first.
        #[arg(long)]
        coeff: Option<String>,
    },
    /// Propagation properties of the loci.
    VerifyPropagation {
        input: PathBuf,
        #[arg(long)]
        coeff: Option<String>,
        /// perverse or space:N.
        #[arg(long, default_value = "perverse")]
        mode: String,
        /// JSON list of components of the top locus, each a list of
        /// generators.
        #[arg(long)]
        components: Option<PathBuf>,
        /// Semi-smallness defect for the Betti bounds (space mode).
        #[arg(long, default_value_t = 0)]
        r: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Abelian-duality verdict for an integer complex.
    AbelianDuality {
        input: PathBuf,
        #[arg(long)]
        n: i64,
        /// Comma-separated primes.
        #[arg(long, default_value = "2,3,5,7,11,13")]
        primes: String,
        /// The variables are a quotient of the abelianization.
        #[arg(long)]
        partial: bool,
    },
    /// Fiber cohomology at points, compared with the computed loci.
    Oracle {
        input: PathBuf,
        #[arg(long)]
        coeff: Option<String>,
        /// Points separated by ';', coordinates by ','. Coordinates in
        /// F_{p^r} are written {c0 c1 ...} and need --ext r.
        #[arg(long)]
        points: Option<String>,
        #[arg(long)]
        ext: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_ORACLE_POINTS)]
        count: usize,
    },
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 2;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match execute(&cli) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn limits(cli: &Cli) -> Result<Limits> {
    let mut l = Limits::from_env()?;
    if let Some(d) = cli.max_degree {
        l.max_degree = d;
    }
    if let Some(b) = cli.max_basis {
        l.max_basis = b;
    }
    Ok(l)
}

pub fn parse_coeff(s: &str) -> Result<CoefficientDomain> {
    match s {
        "qq" => Ok(CoefficientDomain::Rational),
        "zz" => Ok(CoefficientDomain::Integer),
        _ => match s.strip_prefix("fp:").map(str::parse::<u64>) {
            Some(Ok(p)) => CoefficientDomain::prime(p),
            _ => Err(Error::parse(s, "expected qq, zz or fp:<p>")),
        },
    }
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::parse(s, format!("expected {what}")))
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::parse(s, "expected an integer or a/b"))
    };
    match s.split_once('/') {
        Some((a, b)) => {
            let b = int(b)?;
            if b == BigInt::from(0) {
                return Err(Error::parse(s, "zero denominator"));
            }
            Ok(BigRational::new(int(a)?, b))
        }
        None => Ok(BigRational::from_integer(int(s)?)),
    }
}

/// A complex from a generator kind, or from a JSON file.
fn build(kind: &str, coeff: CoefficientDomain, same_ring: bool) -> Result<FreeComplex> {
    let (name, arg) = kind.split_once(':').unwrap_or((kind, ""));
    match name {
        "torus" => koszul_torus(parse_usize(arg, "a number of variables")?, coeff),
        "wedge" => wedge(parse_usize(arg, "a number of circles")?, coeff),
        "surface" => surface(parse_usize(arg, "a genus")?, coeff),
        "fox" => fox_complex(&GroupPresentation::load(arg)?, coeff),
        "tensor" => {
            let (a, b) = arg
                .split_once(',')
                .ok_or_else(|| Error::parse(kind, "expected tensor:<a>,<b>"))?;
            let mode = if same_ring { TensorMode::SameRing } else { TensorMode::Concatenate };
            tensor_product(&build(a, coeff, same_ring)?, &build(b, coeff, same_ring)?, mode)
        }
        "twist" => {
            let (source, lambda) = arg
                .split_once(',')
                .ok_or_else(|| Error::parse(kind, "expected twist:<source>,<l1>,<l2>,..."))?;
            let c = build(source, coeff, same_ring)?;
            let dom = c.ring().coeff();
            let lambda = lambda
                .split(',')
                .map(|x| dom.from_rational(&parse_rational(x)?))
                .collect::<Result<Vec<_>>>()?;
            twist(&c, &lambda)
        }
        _ if Path::new(kind).exists() => {
            let c = read_complex(Path::new(kind))?;
            if c.ring().coeff() == coeff {
                Ok(c)
            } else {
                c.reduce_coefficients(coeff)
            }
        }
        _ => Err(Error::parse(
            kind,
            "unknown kind; expected torus:N, wedge:K, surface:G, fox:FILE, tensor:A,B, twist:SOURCE,L or a file",
        )),
    }
}

fn read_complex(path: &Path) -> Result<FreeComplex> {
    FreeComplex::load(path).map_err(|e| match e {
        Error::Io(io) => Error::Invalid(format!("{}: {io}", path.display())),
        other => other,
    })
}

const KINDS: [&str; 6] = ["torus", "wedge", "surface", "fox", "tensor", "twist"];

/// A complex file, or a generator kind when no such file exists.
fn read_input(input: &Path, coeff: CoefficientDomain) -> Result<FreeComplex> {
    let text = input.to_string_lossy();
    let is_kind = text
        .split_once(':')
        .is_some_and(|(k, _)| KINDS.contains(&k));
    if is_kind && !input.exists() {
        build(&text, coeff, false)
    } else {
        read_complex(input)
    }
}

fn load(input: &Path, coeff: Option<&str>) -> Result<FreeComplex> {
    let dom = coeff.map(parse_coeff).transpose()?;
    let c = read_input(input, dom.unwrap_or(CoefficientDomain::Rational))?;
    match dom {
        Some(dom) if dom != c.ring().coeff() => c.reduce_coefficients(dom),
        _ => Ok(c),
    }
}

fn load_components(path: &Path, l: &JumpLocusSet) -> Result<Vec<Ideal>> {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let list = v.get("components").unwrap_or(&v);
    let list = list
        .as_array()
        .ok_or_else(|| Error::schema("/components", "expected an array of generator lists"))?;
    list.iter()
        .enumerate()
        .map(|(k, gens)| {
            let gens: Vec<&str> = gens
                .as_array()
                .and_then(|g| g.iter().map(Value::as_str).collect())
                .ok_or_else(|| {
                    Error::schema(format!("/components/{k}"), "expected polynomial strings")
                })?;
            Ideal::parse(l.ring(), &gens)
        })
        .collect()
}

fn parse_points(
    spec: &str,
    domain: CoefficientDomain,
    nv: usize,
    ext: Option<usize>,
) -> Result<Vec<TorusPoint>> {
    spec.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|p| {
            let coords: Vec<&str> = p.split(',').map(str::trim).collect();
            if coords.len() != nv {
                return Err(Error::parse(p, format!("expected {nv} coordinates")));
            }
            let point = match (domain, ext) {
                (CoefficientDomain::Prime(q), Some(r)) => {
                    let field = ExtensionField::new(q.get() as u64, r)?;
                    let coords = coords
                        .iter()
                        .map(|c| {
                            let body = c.trim_start_matches('{').trim_end_matches('}');
                            let parts = body
                                .split_whitespace()
                                .map(|x| {
                                    x.parse::<i64>()
                                        .map(|v| v.rem_euclid(q.get() as i64) as u64)
                                        .map_err(|_| Error::parse(c, "expected {c0 c1 ...}"))
                                })
                                .collect::<Result<Vec<u64>>>()?;
                            field.element(&parts)
                        })
                        .collect::<Result<Vec<_>>>()?;
                    TorusPoint::Extension { field, coords }
                }
                (CoefficientDomain::Prime(q), None) => {
                    let field = PrimeField::new(q.get() as u64)?;
                    let coords = coords
                        .iter()
                        .map(|c| {
                            c.parse::<i64>()
                                .map(|v| field.reduce(v))
                                .map_err(|_| Error::parse(c, "expected an integer"))
                        })
                        .collect::<Result<Vec<u64>>>()?;
                    TorusPoint::Prime { field, coords }
                }
                (_, Some(_)) => {
                    return Err(Error::Invalid("--ext needs fp:<p> coefficients".into()))
                }
                _ => TorusPoint::Rational(
                    coords
                        .iter()
                        .map(|c| parse_rational(c))
                        .collect::<Result<_>>()?,
                ),
            };
            Ok(point)
        })
        .collect()
}

fn render(cli: &Cli, json: Value, text: String) -> String {
    match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => text,
    }
}

fn loci_text(l: &JumpLocusSet) -> String {
    let mut s = format!(
        "ring {}\ndegrees {}..{}, euler characteristic {}\n",
        l.ring(),
        l.lo(),
        l.hi(),
        l.euler_characteristic()
    );
    for d in l.loci() {
        let flag = if d.is_whole_torus() {
            "whole torus".to_string()
        } else if d.is_empty() {
            "empty".to_string()
        } else {
            format!("codim {}", d.dimension.codim().unwrap_or(0))
        };
        s += &format!(
            "V^{}: {}  {}  rank in {} out {} module {}\n",
            d.degree, d.ideal, flag, d.rank_in, d.rank_out, d.rank_module
        );
    }
    s += "note: generators of saturated jumping ideals; the verified objects are their varieties\n";
    s
}

fn oracle_summary(r: &OracleReport) -> Value {
    json!({ "points_tested": r.points_tested(), "mismatches": r.mismatches.len(), "euler_violations": r.euler_violations })
}

fn execute(cli: &Cli) -> Result<(String, i32)> {
    let lim = limits(cli)?;
    match &cli.command {
        Command::Generate {
            kind,
            coeff,
            same_ring,
            output,
        } => {
            let c = build(kind, parse_coeff(coeff)?, *same_ring)?;
            match output {
                Some(path) => {
                    c.save(path)?;
                    Ok((String::new(), 0))
                }
                None => Ok((c.to_json_string(), 0)),
            }
        }
        Command::Jumps { input, coeff } => {
            let c = load(input, coeff.as_deref())?;
            let l = jump_loci_with(&c, &lim)?;
            Ok((render(cli, l.to_json(), loci_text(&l)), 0))
        }
        Command::VerifyPropagation {
            input,
            coeff,
            mode,
            components,
            r,
            seed,
        } => {
            let c = load(input, coeff.as_deref())?;
            let mode = IndexingMode::parse(mode)?;
            let l = jump_loci_with(&c, &lim)?;
            let mut report = verify_propagation(&l, mode)?;
            if let Some(path) = components {
                let comps = load_components(path, &l)?;
                for (name, rec) in verify_components(&l, mode, &comps)?.properties {
                    report.set(&name, rec);
                }
            }
            let bounds: Option<VerificationReport> = match mode {
                IndexingMode::Space(n) => Some(betti_bounds(&c, n, *r)?),
                IndexingMode::Perverse => None,
            };
            let points = sample_points(&l, DEFAULT_ORACLE_POINTS, *seed)?;
            let oracle = run_oracle(&c, &l, &points)?;
            let ok =
                report.passed() && bounds.as_ref().is_none_or(|b| b.passed()) && oracle.passed();
            let mut j = report.to_json();
            if let Some(b) = &bounds {
                j["betti_bounds"] = b.to_json()["properties"].clone();
            }
            j["oracle"] = oracle_summary(&oracle);
            let mut text = report.to_string();
            if let Some(b) = &bounds {
                text += "betti bounds\n";
                for (name, rec) in &b.properties {
                    text += &format!("  ({name}) {}  {}\n", rec.status, rec.witness);
                }
            }
            text += &format!(
                "oracle: {} points, {} mismatches\n",
                oracle.points_tested(),
                oracle.mismatches.len()
            );
            text += if ok { "PASS\n" } else { "FAIL\n" };
            Ok((render(cli, j, text), if ok { 0 } else { 1 }))
        }
        Command::AbelianDuality {
            input,
            n,
            primes,
            partial,
        } => {
            let c = read_input(input, CoefficientDomain::Integer)?;
            let primes = primes
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|p| {
                    p.parse::<u64>()
                        .map_err(|_| Error::parse(p, "expected a prime"))
                })
                .collect::<Result<Vec<_>>>()?;
            let v = duality_check(&c, *n, &primes, *partial, &lim)?;
            let code = if v.passed() { 0 } else { 1 };
            Ok((
                render(cli, json!({ "duality": v.to_json() }), v.to_string()),
                code,
            ))
        }
        Command::Oracle {
            input,
            coeff,
            points,
            ext,
            seed,
            count,
        } => {
            let c = load(input, coeff.as_deref())?;
            let l = jump_loci_with(&c, &lim)?;
            let pts = match points {
                Some(spec) => parse_points(spec, l.ring().coeff(), l.ring().num_vars(), *ext)?,
                None => sample_points(&l, *count, *seed)?,
            };
            let rep = run_oracle(&c, &l, &pts)?;
            let code = if rep.passed() { 0 } else { 1 };
            Ok((
                render(cli, json!({ "oracle": rep.to_json() }), rep.to_string()),
                code,
            ))
        }
    }
}
