use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use twobridge::charvar::{nonabelian_poly, SamplingOptions};
use twobridge::epi_pipeline::{build_map_plan, covering_info, epi_report, tower_generate, EpiOptions, TowerParams};
use twobridge::farey_action::{edge_path, orbit_enumerate, orbit_membership, MembershipLimits};
use twobridge::invariants::alexander;
use twobridge::presentation::{plat_braid, upper_presentation};
use twobridge::rational_cf::{cf_canonical, cf_even, ContFrac};
use twobridge::schubert::{components, epi_candidate, normalize};
use twobridge::{Error, Slope};

const SCHEMA_VERSION: u32 = 1;

/// Rows of the regression table: 2-bridge knots mapping onto the trefoil.
const TABLE1: [(&str, &str); 7] = [
    ("9_1", "[9]"),
    ("9_6", "[6,-2,3]"),
    ("9_23", "[-3,2,-3,2,-3]"),
    ("10_5", "[3,-2,6]"),
    ("10_9", "[3,2,-6]"),
    ("10_32", "[3,-2,3,-2,-3]"),
    ("10_40", "[3,-2,-3,2,-3]"),
];

#[derive(Parser)]
#[command(name = "twobridge", version, about = "Epimorphisms between 2-bridge link groups")]
struct Cli {
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit a human-readable rendering instead of JSON.
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

/// A slope (`q/p`, an integer, `inf`) or a continued fraction
/// (`[a1,...,am]`, `c:[a1,...,am]`).
#[derive(Args)]
struct SlopeArg {
    #[arg(allow_hyphen_values = true)]
    slope: String,
}

#[derive(Args)]
struct TargetArg {
    /// The slope `r` of the target link.
    #[arg(long, allow_hyphen_values = true)]
    target: String,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form and component count of a slope.
    Slope(SlopeArg),
    /// Euclidean continued fraction.
    Cf(SlopeArg),
    /// Continued fraction with even nonzero entries.
    Evencf(SlopeArg),
    /// Decide whether the slope lies in the orbit of {inf, r}.
    Orbit {
        #[command(flatten)]
        slope: SlopeArg,
        #[command(flatten)]
        target: TargetArg,
    },
    /// List orbit slopes with bounded pattern parameters.
    Enumerate {
        #[command(flatten)]
        target: TargetArg,
        #[arg(long, default_value_t = 3)]
        max_blocks: usize,
        #[arg(long, default_value_t = 2)]
        max_c: i64,
        #[arg(long, default_value_t = 200)]
        max_den: i128,
    },
    /// 4-braid whose plat closure is K(s).
    Braid(SlopeArg),
    /// Upper presentation of the link group.
    Presentation(SlopeArg),
    /// Alexander polynomial from the upper presentation.
    Alexander(SlopeArg),
    /// Defining polynomial of the nonabelian character variety.
    Charpoly(SlopeArg),
    /// Full epimorphism report for K(s) -> K(target).
    Verify {
        #[command(flatten)]
        slope: SlopeArg,
        #[command(flatten)]
        target: TargetArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Field orders for the SL(2, F_q) layer, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "3,4,5")]
        fq_primes: Vec<u32>,
    },
    /// Branched fold map plan of the orbit certificate.
    Mapplan {
        #[command(flatten)]
        slope: SlopeArg,
        #[command(flatten)]
        target: TargetArg,
    },
    /// Tower of certified epimorphisms over an even expansion.
    Tower {
        #[command(flatten)]
        slope: SlopeArg,
        #[arg(long, default_value_t = 2)]
        steps: usize,
    },
    /// Farey edge path of the continued fraction.
    FareyPath(SlopeArg),
    /// Regression over the 2-bridge rows targeting the trefoil.
    Table1,
}

enum Failure {
    Undecided(Error),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Undecided { .. } => Failure::Undecided(e),
            e => Failure::Other(e.to_string()),
        }
    }
}

struct Output {
    payload: Value,
    text: String,
}

fn parse_slope(s: &str) -> Result<Slope, Failure> {
    if s.contains('[') {
        let cf: ContFrac = s.parse()?;
        return Ok(cf.eval());
    }
    Ok(s.parse()?)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn run(cmd: Command) -> Result<Output, Failure> {
    let out = match cmd {
        Command::Slope(a) => {
            let s = parse_slope(&a.slope)?;
            let n = normalize(s);
            Output {
                payload: json!({ "slope": s, "normal_form": n, "components": components(s) }),
                text: format!("{s}: normal form {n}, {} component(s)", components(s)),
            }
        }
        Command::Cf(a) => {
            let cf = cf_canonical(parse_slope(&a.slope)?)?;
            Output { payload: json!({ "cf": cf }), text: cf.to_string() }
        }
        Command::Evencf(a) => {
            let cf = cf_even(parse_slope(&a.slope)?)?;
            Output { payload: json!({ "cf": cf }), text: cf.to_string() }
        }
        Command::Orbit { slope, target } => {
            let (s, r) = (parse_slope(&slope.slope)?, parse_slope(&target.target)?);
            let m = orbit_membership(s, r, &MembershipLimits::default())?;
            let mut text = format!("{s} over {r}: {}", m.label());
            if let Some(c) = m.certificate() {
                let _ = write!(text, "\ncertificate: {}", c.continued_fraction()?);
            }
            Output { payload: json!({ "rtilde": s, "r": r, "membership": m }), text }
        }
        Command::Enumerate { target, max_blocks, max_c, max_den } => {
            let r = parse_slope(&target.target)?;
            let found = orbit_enumerate(r, max_blocks, max_c, max_den)?;
            let mut rows = Vec::new();
            let mut text = String::new();
            for (s, cert) in &found {
                let cf = cert.continued_fraction()?;
                let _ = writeln!(text, "{s}\t{cf}");
                rows.push(json!({ "slope": s, "cf": cf, "certificate": cert }));
            }
            Output { payload: json!({ "r": r, "count": rows.len(), "slopes": rows }), text: text.trim_end().into() }
        }
        Command::Braid(a) => {
            let b = plat_braid(parse_slope(&a.slope)?)?;
            Output { payload: json!({ "braid": b.to_string(), "letters": b.letters() }), text: b.to_string() }
        }
        Command::Presentation(a) => {
            let p = upper_presentation(parse_slope(&a.slope)?);
            Output {
                payload: json!({ "presentation": p.to_string(), "w": p.w.to_string(), "detail": p }),
                text: p.to_string(),
            }
        }
        Command::Alexander(a) => {
            let d = alexander(parse_slope(&a.slope)?);
            Output { payload: json!({ "polynomial": d.to_string(), "low": 0, "coeffs": d.coeffs() }), text: d.to_string() }
        }
        Command::Charpoly(a) => {
            let p = nonabelian_poly(parse_slope(&a.slope)?)?;
            Output { payload: json!({ "polynomial": p.to_string(), "detail": p }), text: p.to_string() }
        }
        Command::Verify { slope, target, seed, fq_primes } => {
            let (s, r) = (parse_slope(&slope.slope)?, parse_slope(&target.target)?);
            let opts = EpiOptions {
                fq_orders: fq_primes,
                sampling: SamplingOptions { seed, ..SamplingOptions::default() },
                ..EpiOptions::default()
            };
            let rep = epi_report(s, r, &opts)?;
            let mut text = format!("{s} -> {r}: {}", rep.status);
            if let Some(plan) = &rep.map_plan {
                let _ = write!(text, "\ndegree {}", plan.degree);
            }
            for fq in rep.finite_quotient_results.iter() {
                let _ = write!(text, "\n{}", serde_json::to_string(fq).expect("serializable"));
            }
            Output { payload: to_value(&rep), text }
        }
        Command::Mapplan { slope, target } => {
            let (s, r) = (parse_slope(&slope.slope)?, parse_slope(&target.target)?);
            let rep = epi_candidate(s, r)?;
            let cert = rep.certificate().ok_or_else(|| Failure::Other(format!("{s} has no orbit certificate over {r}")))?;
            let plan = build_map_plan(cert)?;
            let cov = covering_info(&plan);
            let text = format!(
                "degree {}, {} branch line(s), {} fold sphere(s), c-domains {:?}",
                plan.degree,
                plan.branch_lines,
                plan.fold_spheres,
                plan.cdomains.iter().map(|c| (c.twist, c.kind)).collect::<Vec<_>>()
            );
            Output { payload: json!({ "rtilde": s, "r": r, "plan": plan, "covering": cov }), text }
        }
        Command::Tower { slope, steps } => {
            let t = tower_generate(parse_slope(&slope.slope)?, steps, &TowerParams::default())?;
            let text = t
                .slopes
                .iter()
                .zip(&t.alexander_degrees)
                .map(|(s, d)| format!("{s}\tdeg {d}"))
                .collect::<Vec<_>>()
                .join("\n");
            Output { payload: to_value(&t), text }
        }
        Command::FareyPath(a) => {
            let path = edge_path(&cf_canonical(parse_slope(&a.slope)?)?);
            let text = path.vertices.iter().map(ToString::to_string).collect::<Vec<_>>().join(" -> ");
            Output { payload: json!({ "vertices": path.vertices, "unimodular": path.is_unimodular() }), text }
        }
        Command::Table1 => {
            let r = Slope::new(1, 3).expect("valid");
            let mut rows = Vec::new();
            let mut text = String::new();
            for (name, cf) in TABLE1 {
                let s = parse_slope(cf)?;
                let rep = epi_candidate(s, r)?;
                let verdict = if rep.orbit_candidate { "pass" } else { "fail" };
                let _ = writeln!(text, "{name}\t{cf}\t{s}\t{verdict}");
                rows.push(json!({ "knot": name, "cf": cf, "slope": s, "pass": rep.orbit_candidate }));
            }
            let all = rows.iter().all(|r| r["pass"] == true);
            Output { payload: json!({ "target": r, "rows": rows, "all_pass": all }), text: text.trim_end().into() }
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = cli.command;
    // slope arithmetic panics past the i128 range; report it as an error
    std::panic::set_hook(Box::new(|_| {}));
    let result = std::panic::catch_unwind(move || run(command)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| p.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "internal error".into());
        Err(Failure::Other(msg))
    });
    let envelope = |status: &str, body: Value| json!({ "schema_version": SCHEMA_VERSION, "status": status, "result": body });
    match result {
        Ok(out) => {
            if cli.text {
                println!("{}", out.text);
            } else {
                println!("{}", serde_json::to_string_pretty(&envelope("ok", out.payload)).expect("serializable"));
            }
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let (code, status, msg) = match failure {
                Failure::Undecided(e) => (3, "UNDECIDED", e.to_string()),
                Failure::Other(msg) => (1, "error", msg),
            };
            if cli.text {
                eprintln!("error: {msg}");
            } else {
                println!("{}", serde_json::to_string_pretty(&envelope(status, json!({ "message": msg }))).expect("serializable"));
            }
            ExitCode::from(code)
        }
    }
}
