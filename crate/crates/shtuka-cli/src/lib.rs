//! Command-line front end: every computation in the library behind a
//! subcommand, with deterministic JSON (or DOT/table) output and a `repro`
//! namespace that replays the worked examples end to end.
//!
//! Exit codes: 0 success, 1 mathematical-domain errors (for instance a
//! violated theorem hypothesis, with the witness in the diagnostic), 2
//! validation errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use std::str::FromStr;

use shtuka::chardist::{
    cc_nonbasic_component, check_hypothesis, standard_components, theta_from_theorem,
    theta_via_cc, vandijk_character, GbElement, RepSpec, ThetaValue, UnramChar,
};
use shtuka::exactnum::{FieldElement, FieldParams};
use shtuka::kottwitz::{
    basic_element, enumerate_bgmu, hasse_dot, KottwitzPoint, LeviDescription,
};
use shtuka::rootdata::{Cochar, RationalCochar, RootDatum};
use shtuka::stconj::{build_rel, SRElement};
use shtuka::weights::{freudenthal, weyl_dimension};
use shtuka::Error;

pub const FIELD_ENV: &str = "SHTUKA_FIELD";

#[derive(Parser, Debug)]
#[command(
    name = "shtuka",
    about = "Exact Kottwitz-set, weight-multiplicity, and character-formula computations",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Args, Debug, Clone)]
struct FieldArgs {
    /// Residue characteristic p (falls back to the SHTUKA_FIELD env var,
    /// "p,f,e")
    #[arg(long)]
    p: Option<u64>,
    /// Residue degree f
    #[arg(long)]
    f: Option<u32>,
    /// Ramification index e
    #[arg(long)]
    e: Option<u32>,
}

impl FieldArgs {
    fn resolve(&self) -> Result<FieldParams, String> {
        let env = std::env::var(FIELD_ENV).ok();
        let env_parts: Option<Vec<u64>> = env.as_deref().map(|s| {
            s.split(',')
                .filter_map(|x| x.trim().parse::<u64>().ok())
                .collect()
        });
        let p = self
            .p
            .or_else(|| env_parts.as_ref().and_then(|v| v.first().copied()))
            .ok_or_else(|| format!("--p is required (or set {FIELD_ENV}=p,f,e)"))?;
        let f = self
            .f
            .or_else(|| {
                env_parts
                    .as_ref()
                    .and_then(|v| v.get(1).copied())
                    .and_then(|x| u32::try_from(x).ok())
            })
            .unwrap_or(1);
        let e = self
            .e
            .or_else(|| {
                env_parts
                    .as_ref()
                    .and_then(|v| v.get(2).copied())
                    .and_then(|x| u32::try_from(x).ok())
            })
            .unwrap_or(1);
        FieldParams::new(p, f, e).map_err(|err| err.to_string())
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate B(G, mu) with Newton points, kappa, and Levi blocks
    Bgmu {
        #[arg(long)]
        group: String,
        /// Dominant cocharacter, comma-separated integers
        #[arg(long)]
        mu: String,
        /// Shortcut for --format dot
        #[arg(long)]
        dot: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Weight multiplicities of the highest-weight-mu representation
    Weights {
        #[arg(long)]
        group: String,
        #[arg(long)]
        mu: String,
        /// Report a single weight instead of the whole table
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Relevant triples (g, g', lambda) for a stratum and bound mu
    Relb {
        #[arg(long)]
        group: String,
        /// Stratum selector: "basic" or a comma-separated slope vector
        #[arg(long)]
        b: String,
        #[arg(long)]
        mu: String,
        /// Split eigenvalues, comma-separated rationals
        #[arg(long)]
        eigenvalues: Option<String>,
        /// Quadratic class "a,b,d" (eigenvalues a +/- b sqrt(d))
        #[arg(long)]
        quadratic: Option<String>,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Assembled trace character at a strongly regular class
    Theta {
        #[arg(long)]
        group: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        mu: String,
        /// trivial | steinberg-minus-trivial | ups:z1,z2,...
        #[arg(long, default_value = "trivial")]
        rho: String,
        /// Split eigenvalues of g
        #[arg(long)]
        g: Option<String>,
        /// Quadratic class "a,b,d"
        #[arg(long)]
        quadratic: Option<String>,
        /// theorem (default) or cc
        #[arg(long, default_value = "theorem")]
        route: String,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Depth-one characteristic-class component at a non-basic stratum
    Cc {
        #[arg(long)]
        group: String,
        /// The non-basic stratum, comma-separated slope vector
        #[arg(long)]
        bprime: String,
        /// Element of G_{b'}(F): split eigenvalues in ascending-block order
        #[arg(long)]
        t: Option<String>,
        /// Quadratic pair "a,b,d" for a single non-split block (appended
        /// after the split entries by ascending slope)
        #[arg(long)]
        quadratic: Option<String>,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Principal-series character by the classical induced-character formula
    Vandijk {
        #[arg(long)]
        group: String,
        /// Split eigenvalues of g
        #[arg(long)]
        g: Option<String>,
        /// Quadratic class "a,b,d"
        #[arg(long)]
        quadratic: Option<String>,
        /// Inducing character values, comma-separated rationals (default
        /// all 1)
        #[arg(long)]
        chars: Option<String>,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Replay a worked example end to end and compare both routes
    Repro {
        #[command(subcommand)]
        example: ReproExample,
    },
}

#[derive(Subcommand, Debug)]
enum ReproExample {
    /// Rank-2 basic stratum with trivial coefficients: the assembled
    /// character against the independently evaluated Steinberg-minus-
    /// trivial character
    Drinfeld {
        #[arg(long)]
        eigenvalues: Option<String>,
        #[arg(long)]
        quadratic: Option<String>,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// GL(2) depth-one component against the literal two-product formula
    Gl2Strata {
        /// Element (t1, t2) of the split stratum, ascending block order
        #[arg(long)]
        t: String,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// GL(3) depth-one component (quaternionic block) against the literal
    /// two-product formula
    DepthOne {
        /// Eigenvalue on the slope-0 line
        #[arg(long)]
        u: String,
        /// Quadratic pair "a,b,d" on the slope-1/2 block
        #[arg(long)]
        quad: String,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Theorem route against the induced-character formula at the maximal
    /// stratum; reports the constant relating them
    Vandijk {
        #[arg(long)]
        group: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        g: String,
        /// Inducing character values on the blocks of G_b, ascending slope
        #[arg(long)]
        chars: String,
        #[command(flatten)]
        field: FieldArgs,
    },
}

/// Run with the given arguments (argv[0] included); returns the exit code
/// and the full output text.
pub fn run<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    match dispatch(cli.command) {
        Ok(text) => (0, text),
        Err(failure) => (failure.code, failure.render()),
    }
}

struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
    witness: Option<String>,
}

impl Failure {
    fn validation(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            kind: "validation",
            message: message.into(),
            witness: None,
        }
    }

    fn render(&self) -> String {
        let diag = serde_json::json!({
            "error": { "kind": self.kind, "message": self.message, "witness": self.witness }
        });
        serde_json::to_string_pretty(&diag).expect("diagnostic serializes")
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let (code, witness) = match &err {
            Error::HypothesisViolated { witness } => (1, Some(witness.clone())),
            Error::FormulaNotEstablished(_)
            | Error::NotRegular(_)
            | Error::MissingComponent(_)
            | Error::IrrationalNorm(_)
            | Error::ZeroValuation
            | Error::GuardExceeded(_)
            | Error::IncomparableComponents
            | Error::MixedKappa => (1, None),
            _ => (2, None),
        };
        Failure {
            code,
            kind: if code == 1 { "domain" } else { "validation" },
            message: err.to_string(),
            witness,
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational, Failure> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num)
        .map_err(|_| Failure::validation(format!("bad rational component {num:?}")))?;
    let den = BigInt::from_str(den)
        .map_err(|_| Failure::validation(format!("bad rational component {den:?}")))?;
    if den == BigInt::from(0) {
        return Err(Failure::validation("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

fn parse_rational_list(s: &str) -> Result<Vec<BigRational>, Failure> {
    s.split(',').map(parse_rational).collect()
}

fn parse_cochar(s: &str) -> Result<Cochar, Failure> {
    let entries: Result<Vec<i64>, _> = s.split(',').map(|x| x.trim().parse::<i64>()).collect();
    entries
        .map(Cochar)
        .map_err(|_| Failure::validation(format!("bad cocharacter {s:?}")))
}

fn parse_group(name: &str) -> Result<RootDatum, Failure> {
    RootDatum::by_name(name).map_err(Failure::from)
}

fn parse_b(datum: &RootDatum, spec: &str, mu: &Cochar) -> Result<KottwitzPoint, Failure> {
    if spec.trim().eq_ignore_ascii_case("basic") {
        return basic_element(datum, &datum.pi1.kappa(mu)).map_err(Failure::from);
    }
    let slopes = parse_rational_list(spec)?;
    KottwitzPoint::from_newton(datum, RationalCochar(slopes)).map_err(Failure::from)
}

fn parse_element(
    datum: &RootDatum,
    eigenvalues: &Option<String>,
    quadratic: &Option<String>,
) -> Result<SRElement, Failure> {
    match (eigenvalues, quadratic) {
        (Some(evs), None) => {
            let evs = parse_rational_list(evs)?
                .into_iter()
                .map(FieldElement::from_rational)
                .collect();
            SRElement::split(datum, evs).map_err(Failure::from)
        }
        (None, Some(q)) => {
            let parts = parse_rational_list(q)?;
            if parts.len() != 3 {
                return Err(Failure::validation("--quadratic expects \"a,b,d\""));
            }
            SRElement::quadratic(datum, parts[0].clone(), parts[1].clone(), parts[2].clone())
                .map_err(Failure::from)
        }
        _ => Err(Failure::validation(
            "exactly one of --eigenvalues/--g or --quadratic is required",
        )),
    }
}

fn parse_rho(spec: &str) -> Result<RepSpec, Failure> {
    let s = spec.trim();
    if s.eq_ignore_ascii_case("trivial") {
        Ok(RepSpec::Trivial)
    } else if s.eq_ignore_ascii_case("steinberg-minus-trivial") || s.eq_ignore_ascii_case("st-1") {
        Ok(RepSpec::SteinbergMinusTrivial)
    } else if let Some(rest) = s.strip_prefix("ups:") {
        let chars = parse_rational_list(rest)?
            .into_iter()
            .map(|z| UnramChar::new(z).map_err(Failure::from))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RepSpec::UnramifiedPrincipalSeries(chars))
    } else {
        Err(Failure::validation(format!(
            "unknown rho {s:?}; expected trivial, steinberg-minus-trivial, or ups:z1,z2,..."
        )))
    }
}

#[derive(Serialize)]
struct RatOut {
    num: String,
    den: String,
}

fn rat_out(r: &BigRational) -> RatOut {
    RatOut {
        num: r.numer().to_string(),
        den: r.denom().to_string(),
    }
}

#[derive(Serialize)]
struct BgmuRecord {
    nu: Vec<RatOut>,
    kappa: Vec<i64>,
    levi: LeviDescription,
    levi_description: String,
}

fn dispatch(command: Command) -> Result<String, Failure> {
    match command {
        Command::Bgmu {
            group,
            mu,
            dot,
            format,
        } => {
            let datum = parse_group(&group)?;
            let mu = parse_cochar(&mu)?;
            let points = enumerate_bgmu(&datum, &mu)?;
            let format = if dot { Format::Dot } else { format };
            match format {
                Format::Dot => Ok(hasse_dot(&datum, &points)?),
                Format::Table => {
                    let mut out = String::new();
                    for p in &points {
                        out.push_str(&format!(
                            "{}  kappa={:?}  {}\n",
                            p.nu,
                            p.kappa,
                            p.levi().describe()
                        ));
                    }
                    Ok(out)
                }
                Format::Json => {
                    let records: Vec<BgmuRecord> = points
                        .iter()
                        .map(|p| BgmuRecord {
                            nu: p.nu.0.iter().map(rat_out).collect(),
                            kappa: p.kappa.clone(),
                            levi: p.levi(),
                            levi_description: p.levi().describe(),
                        })
                        .collect();
                    let doc = serde_json::json!({
                        "group": datum.name,
                        "mu": mu.0,
                        "points": records,
                    });
                    Ok(serde_json::to_string_pretty(&doc).expect("serializes"))
                }
            }
        }
        Command::Weights {
            group,
            mu,
            lambda,
            format,
        } => {
            let datum = parse_group(&group)?;
            let mu = parse_cochar(&mu)?;
            let table = freudenthal(&datum, &mu)?;
            let dim = weyl_dimension(&datum, &mu)?;
            if let Some(lambda) = lambda {
                let lambda = parse_cochar(&lambda)?;
                let m = table.multiplicity(&datum, &lambda);
                let doc = serde_json::json!({
                    "group": datum.name,
                    "mu": mu.0,
                    "lambda": lambda.0,
                    "multiplicity": m,
                });
                return Ok(serde_json::to_string_pretty(&doc).expect("serializes"));
            }
            match format {
                Format::Table => {
                    let mut out = format!("dim = {dim}\n");
                    for (lam, entry) in &table.entries {
                        out.push_str(&format!(
                            "{lam}  multiplicity={}  orbit={}\n",
                            entry.multiplicity, entry.orbit_size
                        ));
                    }
                    Ok(out)
                }
                _ => {
                    let entries: Vec<serde_json::Value> = table
                        .entries
                        .iter()
                        .map(|(lam, entry)| {
                            serde_json::json!({
                                "lambda": lam.0,
                                "multiplicity": entry.multiplicity,
                                "orbit_size": entry.orbit_size,
                            })
                        })
                        .collect();
                    let doc = serde_json::json!({
                        "group": datum.name,
                        "mu": mu.0,
                        "dimension": dim.to_string(),
                        "entries": entries,
                    });
                    Ok(serde_json::to_string_pretty(&doc).expect("serializes"))
                }
            }
        }
        Command::Relb {
            group,
            b,
            mu,
            eigenvalues,
            quadratic,
            field,
            format: _,
        } => {
            let datum = parse_group(&group)?;
            let mu = parse_cochar(&mu)?;
            let b = parse_b(&datum, &b, &mu)?;
            let _params = field.resolve().map_err(Failure::validation)?;
            let g = parse_element(&datum, &eigenvalues, &quadratic)?;
            let triples = build_rel(&datum, &g, &b, &mu)?;
            let out: Vec<serde_json::Value> = triples
                .iter()
                .map(|t| {
                    serde_json::to_value(t).expect("triple serializes")
                })
                .collect();
            let doc = serde_json::json!({
                "group": datum.name,
                "b": b,
                "mu": mu.0,
                "count": triples.len(),
                "triples": out,
            });
            Ok(serde_json::to_string_pretty(&doc).expect("serializes"))
        }
        Command::Theta {
            group,
            b,
            mu,
            rho,
            g,
            quadratic,
            route,
            field,
            format: _,
        } => {
            let datum = parse_group(&group)?;
            let mu = parse_cochar(&mu)?;
            let b = parse_b(&datum, &b, &mu)?;
            let params = field.resolve().map_err(Failure::validation)?;
            let g = parse_element(&datum, &g, &quadratic)?;
            let rho = parse_rho(&rho)?;
            let theta = match route.as_str() {
                "theorem" => theta_from_theorem(&datum, &b, &mu, &rho, &g, &params)?,
                "cc" => {
                    let components = standard_components(&datum, &b, &mu, &params)?;
                    theta_via_cc(&datum, &b, &mu, &rho, &g, &components, &params)?
                }
                other => {
                    return Err(Failure::validation(format!(
                        "unknown route {other:?}; expected theorem or cc"
                    )))
                }
            };
            let hypothesis = check_hypothesis(&datum, &b, &mu, &g)?;
            let doc = serde_json::json!({
                "group": datum.name,
                "b": b,
                "mu": mu.0,
                "route": route,
                "hypothesis": hypothesis,
                "value": rat_out(&theta.value),
                "sign_exponent": theta.sign_exponent,
                "terms": theta.terms,
            });
            Ok(serde_json::to_string_pretty(&doc).expect("serializes"))
        }
        Command::Cc {
            group,
            bprime,
            t,
            quadratic,
            field,
            format: _,
        } => {
            let datum = parse_group(&group)?;
            let slopes = parse_rational_list(&bprime)?;
            let bp = KottwitzPoint::from_newton(&datum, RationalCochar(slopes))?;
            let params = field.resolve().map_err(Failure::validation)?;
            let basic = basic_element(&datum, &bp.kappa)?;
            let element = build_gb_element(&bp, &t, &quadratic)?;
            let value = cc_nonbasic_component(&datum, &basic, &bp, &element, &params)?;
            let doc = serde_json::json!({
                "group": datum.name,
                "bprime": bp,
                "value": rat_out(&value),
            });
            Ok(serde_json::to_string_pretty(&doc).expect("serializes"))
        }
        Command::Vandijk {
            group,
            g,
            quadratic,
            chars,
            field,
            format: _,
        } => {
            let datum = parse_group(&group)?;
            let params = field.resolve().map_err(Failure::validation)?;
            let g = parse_element(&datum, &g, &quadratic)?;
            let chars = match chars {
                Some(s) => parse_rational_list(&s)?
                    .into_iter()
                    .map(|z| UnramChar::new(z).map_err(Failure::from))
                    .collect::<Result<Vec<_>, _>>()?,
                None => vec![
                    UnramChar::new(BigRational::from(BigInt::from(1))).expect("1 != 0");
                    datum.rank
                ],
            };
            let value = vandijk_character(&datum, &chars, &g, &params)?;
            let doc = serde_json::json!({
                "group": datum.name,
                "value": rat_out(&value),
            });
            Ok(serde_json::to_string_pretty(&doc).expect("serializes"))
        }
        Command::Repro { example } => repro(example),
    }
}

/// Assemble an element of `G_{b'}(F)` from CLI flags: split eigenvalues
/// fill the split blocks in ascending order; a quadratic pair fills a
/// single non-split block of size 2.
fn build_gb_element(
    bp: &KottwitzPoint,
    t: &Option<String>,
    quadratic: &Option<String>,
) -> Result<GbElement, Failure> {
    let mut split_values: Vec<FieldElement> = match t {
        Some(s) => parse_rational_list(s)?
            .into_iter()
            .map(FieldElement::from_rational)
            .collect(),
        None => Vec::new(),
    };
    split_values.reverse(); // consume from the front via pop
    let quad_pair: Option<(FieldElement, FieldElement)> = match quadratic {
        Some(q) => {
            let parts = parse_rational_list(q)?;
            if parts.len() != 3 {
                return Err(Failure::validation("--quadratic expects \"a,b,d\""));
            }
            let ev =
                FieldElement::quadratic(parts[0].clone(), parts[1].clone(), parts[2].clone())
                    .map_err(Failure::from)?;
            let conj = ev.conjugate();
            Some((ev, conj))
        }
        None => None,
    };
    let mut quad_pair = quad_pair;
    let mut blocks = Vec::new();
    let levi_blocks = {
        // ascending slope order
        let mut bs = bp.levi().blocks;
        bs.reverse();
        bs
    };
    for block in levi_blocks {
        if block.slope.is_integer() {
            let mut evs = Vec::new();
            for _ in 0..block.multiplicity {
                evs.push(split_values.pop().ok_or_else(|| {
                    Failure::validation("not enough split eigenvalues for the split blocks")
                })?);
            }
            blocks.push((block.slope.clone(), evs));
        } else {
            if block.multiplicity != 2 {
                return Err(Failure::validation(
                    "only quaternionic (size-2) non-split blocks are supported here",
                ));
            }
            let (ev, conj) = quad_pair.take().ok_or_else(|| {
                Failure::validation("--quadratic a,b,d is required for the non-split block")
            })?;
            blocks.push((block.slope.clone(), vec![ev, conj]));
        }
    }
    if !split_values.is_empty() || quad_pair.is_some() {
        return Err(Failure::validation("too many eigenvalues for the blocks"));
    }
    GbElement::new(blocks).map_err(Failure::from)
}

#[derive(Serialize)]
struct Comparison {
    status: &'static str,
    pipeline: RatOut,
    oracle: RatOut,
}

fn comparison(pipeline: &BigRational, oracle: &BigRational) -> Comparison {
    Comparison {
        status: if pipeline == oracle { "MATCH" } else { "MISMATCH" },
        pipeline: rat_out(pipeline),
        oracle: rat_out(oracle),
    }
}

fn repro(example: ReproExample) -> Result<String, Failure> {
    match example {
        ReproExample::Drinfeld {
            eigenvalues,
            quadratic,
            field,
        } => {
            let datum = parse_group("GL2")?;
            let params = field.resolve().map_err(Failure::validation)?;
            let mu = Cochar(vec![1, 0]);
            let g = parse_element(&datum, &eigenvalues, &quadratic)?;
            let basic = basic_element(&datum, &[1])?;
            let components = standard_components(&datum, &basic, &mu, &params)?;
            let theta: ThetaValue =
                theta_via_cc(&datum, &basic, &mu, &RepSpec::Trivial, &g, &components, &params)?;
            // independent evaluation of the Steinberg-minus-trivial
            // character: the induced character with trivial inducing data,
            // minus twice the trivial character
            let trivial_chars = vec![
                UnramChar::new(BigRational::from(BigInt::from(1))).expect("1 != 0"),
                UnramChar::new(BigRational::from(BigInt::from(1))).expect("1 != 0"),
            ];
            let induced = vandijk_character(&datum, &trivial_chars, &g, &params)?;
            let oracle = induced - BigRational::from(BigInt::from(2));
            let doc = serde_json::json!({
                "example": "drinfeld",
                "class": if g.is_split() { "split" } else { "quadratic" },
                "comparison": comparison(&theta.value, &oracle),
                "terms": theta.terms,
            });
            Ok(serde_json::to_string_pretty(&doc).expect("serializes"))
        }
        ReproExample::Gl2Strata { t, field } => {
            let datum = parse_group("GL2")?;
            let params = field.resolve().map_err(Failure::validation)?;
            let values = parse_rational_list(&t)?;
            if values.len() != 2 {
                return Err(Failure::validation("--t expects \"t1,t2\""));
            }
            let basic = basic_element(&datum, &[1])?;
            let bp = KottwitzPoint::from_newton(
                &datum,
                RationalCochar(vec![
                    BigRational::from(BigInt::from(1)),
                    BigRational::from(BigInt::from(0)),
                ]),
            )?;
            let element = GbElement::new(vec![
                (
                    BigRational::from(BigInt::from(0)),
                    vec![FieldElement::from_rational(values[0].clone())],
                ),
                (
                    BigRational::from(BigInt::from(1)),
                    vec![FieldElement::from_rational(values[1].clone())],
                ),
            ])?;
            let pipeline = cc_nonbasic_component(&datum, &basic, &bp, &element, &params)?;
            // the literal closed form |1-t1/t2| |1-t2/t1| - |1-t1/t2|
            let one = BigRational::from(BigInt::from(1));
            let a = FieldElement::from_rational(&one - &values[0] / &values[1]).norm(&params)?;
            let b = FieldElement::from_rational(&one - &values[1] / &values[0]).norm(&params)?;
            let oracle = &a * &b - &a;
            let doc = serde_json::json!({
                "example": "gl2-strata",
                "comparison": comparison(&pipeline, &oracle),
            });
            Ok(serde_json::to_string_pretty(&doc).expect("serializes"))
        }
        ReproExample::DepthOne { u, quad, field } => {
            let datum = parse_group("GL3")?;
            let params = field.resolve().map_err(Failure::validation)?;
            let u = parse_rational(&u)?;
            let parts = parse_rational_list(&quad)?;
            if parts.len() != 3 {
                return Err(Failure::validation("--quad expects \"a,b,d\""));
            }
            let ev =
                FieldElement::quadratic(parts[0].clone(), parts[1].clone(), parts[2].clone())
                    .map_err(Failure::from)?;
            let conj = ev.conjugate();
            let basic = basic_element(&datum, &[1])?;
            let half = BigRational::new(BigInt::from(1), BigInt::from(2));
            let bp = KottwitzPoint::from_newton(
                &datum,
                RationalCochar(vec![
                    half.clone(),
                    half.clone(),
                    BigRational::from(BigInt::from(0)),
                ]),
            )?;
            let element = GbElement::new(vec![
                (
                    BigRational::from(BigInt::from(0)),
                    vec![FieldElement::from_rational(u)],
                ),
                (half, vec![ev, conj]),
            ])?;
            let pipeline = cc_nonbasic_component(&datum, &basic, &bp, &element, &params)?;
            // literal two-product formula over the parabolic root sets
            let oracle = depth_one_literal(&datum, &bp, &element, &params)?;
            let doc = serde_json::json!({
                "example": "depth-one",
                "comparison": comparison(&pipeline, &oracle),
            });
            Ok(serde_json::to_string_pretty(&doc).expect("serializes"))
        }
        ReproExample::Vandijk {
            group,
            mu,
            g,
            chars,
            field,
        } => {
            let datum = parse_group(&group)?;
            let params = field.resolve().map_err(Failure::validation)?;
            let mu = parse_cochar(&mu)?;
            let b = KottwitzPoint::from_newton(&datum, mu.to_rational())?;
            let g = parse_element(&datum, &Some(g), &None)?;
            let char_values = parse_rational_list(&chars)?;
            if char_values.len() != datum.rank {
                return Err(Failure::validation(format!(
                    "expected {} character values",
                    datum.rank
                )));
            }
            let block_chars: Vec<UnramChar> = char_values
                .iter()
                .map(|z| UnramChar::new(z.clone()).map_err(Failure::from))
                .collect::<Result<Vec<_>, _>>()?;
            let rho = RepSpec::UnramifiedPrincipalSeries(block_chars.clone());
            let theta = theta_from_theorem(&datum, &b, &mu, &rho, &g, &params)?;
            // arrange the same characters in descending-slope slot order
            let slot_chars = slot_order_chars(&b, &block_chars);
            let vd = vandijk_character(&datum, &slot_chars, &g, &params)?;
            let ratio = if vd.numer() == &BigInt::from(0) {
                None
            } else {
                Some(&theta.value / &vd)
            };
            let doc = serde_json::json!({
                "example": "vandijk",
                "theorem_value": rat_out(&theta.value),
                "vandijk_value": rat_out(&vd),
                "normalization": ratio.as_ref().map(rat_out),
            });
            Ok(serde_json::to_string_pretty(&doc).expect("serializes"))
        }
    }
}

/// The literal depth-one expression: the product over both parabolic root
/// sets minus the product over the negative one.
fn depth_one_literal(
    datum: &RootDatum,
    bp: &KottwitzPoint,
    element: &GbElement,
    params: &FieldParams,
) -> Result<BigRational, Failure> {
    use shtuka::rootdata::ParabolicSign;
    let slots = element.slot_values();
    let value_of = |roots: Vec<Vec<i64>>| -> Result<BigRational, Failure> {
        let mut acc = FieldElement::one();
        for root in roots {
            let mut factor = FieldElement::one();
            for (&c, x) in root.iter().zip(&slots) {
                match c.cmp(&0) {
                    std::cmp::Ordering::Equal => {}
                    std::cmp::Ordering::Greater => {
                        for _ in 0..c {
                            factor = factor.mul(x);
                        }
                    }
                    std::cmp::Ordering::Less => {
                        let inv = x.inv();
                        for _ in 0..(-c) {
                            factor = factor.mul(&inv);
                        }
                    }
                }
            }
            acc = acc.mul(&factor.one_minus());
        }
        acc.norm(params).map_err(Failure::from)
    };
    let pos = datum.parabolic_roots(&bp.nu, ParabolicSign::Positive)?;
    let neg = datum.parabolic_roots(&bp.nu, ParabolicSign::Negative)?;
    let all: Vec<Vec<i64>> = pos.iter().cloned().chain(neg.iter().cloned()).collect();
    Ok(value_of(all)? - value_of(neg)?)
}

/// Characters attached to ascending blocks, rearranged into the
/// descending-slope coordinate slots of `G`.
fn slot_order_chars(b: &KottwitzPoint, chars: &[UnramChar]) -> Vec<UnramChar> {
    // ascending blocks with multiplicities
    let mut blocks: Vec<(BigRational, usize)> = Vec::new();
    for s in b.nu.0.iter().rev() {
        match blocks.last_mut() {
            Some((slope, mult)) if slope == s => *mult += 1,
            _ => blocks.push((s.clone(), 1)),
        }
    }
    let mut per_block: Vec<Vec<UnramChar>> = Vec::new();
    let mut offset = 0;
    for (_, mult) in &blocks {
        per_block.push(chars[offset..offset + mult].to_vec());
        offset += mult;
    }
    per_block.reverse();
    per_block.into_iter().flatten().collect()
}

