//! `gpk`: run the Hermitian tuple checker, build plane models and write JSON
//! reports.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use gpk_core::construct::{self, ConstructError};
use gpk_core::criterion::{self, CriterionError};
use gpk_core::ffield::{is_prime, MAX_ORDER_BITS};
use gpk_core::groups::GroupError;
use gpk_core::instance::{HermitianInstance, InstanceError};
use gpk_core::projective::{HermitianCurve, ProjPoint};
use gpk_core::SCHEMA_VERSION;

#[derive(Parser)]
#[command(name = "gpk", version, about = "Galois-point checker for the Hermitian curve")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct CurveArgs {
    /// Characteristic
    #[arg(long)]
    p: u64,
    /// Exponent, q = p^e
    #[arg(long, default_value_t = 1)]
    e: u32,
}

#[derive(Args)]
struct Output {
    /// Write the JSON report here and print a text summary
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the five conditions for (1, 1, C_m, N1 C_m, N2 C_m, P1, P2)
    Verify {
        #[command(flatten)]
        curve: CurveArgs,
        /// Order of H = C_m, dividing q^2 - 1
        #[arg(long)]
        m: u64,
        /// Include full element lists of the groups
        #[arg(long)]
        dump_elements: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Build and certify the plane model of X/C_m
    Construct {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        m: u64,
        /// Fixed tower level k for sampling over GF(q^(2k))
        #[arg(long)]
        sampling_level: Option<u32>,
        #[command(flatten)]
        out: Output,
    },
    /// The plane model x^q + x = u^s of X/C_m, m s = q + 1
    Quotient {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        m: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Compare the G1- and G2-orbit sums of a point
    Outer {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        m: u64,
        /// Point as X,Y,Z with coordinates as element digit strings
        #[arg(long)]
        point: String,
        #[command(flatten)]
        out: Output,
    },
    /// List the GF(q^2)-rational points
    Points {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        out: Output,
    },
}

/// Failure classes mapped to exit codes.
enum Failure {
    Usage(String),
    Certification(String),
}

impl Failure {
    fn tagged(module: &str, e: impl std::fmt::Display) -> String {
        format!("[{module}] {e}")
    }
}

fn from_group(e: GroupError) -> Failure {
    match e {
        GroupError::NotDivisor { .. } => Failure::Usage(Failure::tagged("groups", e)),
        _ => Failure::Certification(Failure::tagged("groups", e)),
    }
}

fn from_instance(e: InstanceError) -> Failure {
    match e {
        InstanceError::Group(g) => from_group(g),
        InstanceError::Curve(c) => Failure::Usage(Failure::tagged("projective", c)),
        InstanceError::Criterion(c) => Failure::Certification(Failure::tagged("criterion", c)),
    }
}

fn from_construct(e: ConstructError) -> Failure {
    match e {
        ConstructError::Instance(i) => from_instance(i),
        ConstructError::Group(g) => from_group(g),
        ConstructError::NotQuotientDivisor { .. } => Failure::Usage(Failure::tagged("construct", e)),
        ConstructError::SamplingExhausted { .. } => Failure::Usage(Failure::tagged("construct", e)),
        _ => Failure::Certification(Failure::tagged("construct", e)),
    }
}

fn from_criterion(e: CriterionError) -> Failure {
    match e {
        CriterionError::PointNotOnCurve(_) => Failure::Usage(Failure::tagged("criterion", e)),
        _ => Failure::Certification(Failure::tagged("criterion", e)),
    }
}

fn check_curve(c: CurveArgs) -> Result<HermitianCurve, Failure> {
    if !is_prime(c.p) {
        return Err(Failure::Usage(format!("[ffield] p = {} is not prime", c.p)));
    }
    let bits = 2.0 * c.e as f64 * (c.p as f64).log2();
    if c.e == 0 || bits > MAX_ORDER_BITS as f64 {
        return Err(Failure::Usage(format!("[ffield] q^2 = {}^{} is out of range", c.p, 2 * c.e)));
    }
    HermitianCurve::new(c.p, c.e).map_err(|e| Failure::Usage(Failure::tagged("projective", e)))
}

fn instance(c: CurveArgs, m: u64) -> Result<HermitianInstance, Failure> {
    check_curve(c)?;
    HermitianInstance::new(c.p, c.e, m).map_err(from_instance)
}

fn instance_json(c: CurveArgs, m: Option<u64>, curve: &HermitianCurve) -> Value {
    json!({ "p": c.p, "e": c.e, "m": m, "q": curve.q(), "field": curve.field().describe() })
}

/// `(report, verdict)`; `verdict = false` maps to exit code 1.
fn run(cmd: &Command) -> Result<(Value, bool), Failure> {
    match cmd {
        Command::Verify { curve, m, dump_elements, .. } => {
            let inst = instance(*curve, *m)?;
            let report = inst.verify().map_err(from_instance)?;
            let mut v = report.to_json(inst.curve.field(), *dump_elements);
            v["command"] = json!("verify");
            v["instance"] = instance_json(*curve, Some(*m), &inst.curve);
            v["groups"] = json!({
                "N1": inst.n1.to_json(*dump_elements),
                "N2": inst.n2.to_json(*dump_elements),
                "H": inst.h.to_json(*dump_elements),
                "G1": inst.g1.to_json(*dump_elements),
                "G2": inst.g2.to_json(*dump_elements),
            });
            Ok((v, report.overall))
        }
        Command::Construct { curve, m, sampling_level, .. } => {
            let inst = instance(*curve, *m)?;
            let fg = construct::build_f_g(&inst).map_err(from_construct)?;
            let model = construct::plane_model(&inst, &fg, *sampling_level).map_err(from_construct)?;
            let cert = construct::certify_model(&model, &inst, &fg).map_err(from_construct)?;
            let mut v = model.to_json();
            v["command"] = json!("construct");
            v["certificate"] = cert.to_json(inst.curve.field());
            Ok((v, true))
        }
        Command::Quotient { curve, m, .. } => {
            check_curve(*curve)?;
            let qm = construct::quotient_plane_model(curve.p, curve.e, *m).map_err(from_construct)?;
            let mut v = qm.to_json();
            v["command"] = json!("quotient");
            Ok((v, true))
        }
        Command::Outer { curve, m, point, .. } => {
            let inst = instance(*curve, *m)?;
            let ctx = inst.curve.field();
            let q = ProjPoint::parse(ctx, point).map_err(|e| Failure::Usage(Failure::tagged("projective", e)))?;
            let verdict = criterion::check_outer_point(&inst.curve, &inst.g1, &inst.g2, &q).map_err(from_criterion)?;
            let (lhs, rhs) = &verdict.evidence;
            let v = json!({
                "schema_version": SCHEMA_VERSION,
                "command": "outer",
                "instance": instance_json(*curve, Some(*m), &inst.curve),
                "point": q.to_json(ctx),
                "holds": verdict.holds,
                "evidence": { "g1_orbit_sum": lhs.to_json(ctx), "g2_orbit_sum": rhs.to_json(ctx) },
            });
            Ok((v, verdict.holds))
        }
        Command::Points { curve, .. } => {
            let c = check_curve(*curve)?;
            let ctx = c.field();
            let pts = c.rational_points();
            let v = json!({
                "schema_version": SCHEMA_VERSION,
                "command": "points",
                "instance": instance_json(*curve, None, &c),
                "count": pts.len(),
                "points": pts.iter().map(|p| p.to_json(ctx)).collect::<Vec<_>>(),
                "rendered": pts.iter().map(|p| p.render(ctx)).collect::<Vec<_>>(),
            });
            Ok((v, true))
        }
    }
}

/// Text rendering of a report, read back from its JSON.
fn summary(v: &Value) -> String {
    let mut s = String::new();
    let cmd = v["command"].as_str().unwrap_or("");
    match cmd {
        "verify" => {
            s += &format!("overall: {}\n", v["overall"]);
            for c in ["a", "b", "c", "d", "e"] {
                s += &format!("  ({c}) {}\n", v["conditions"][c]["holds"]);
            }
            if let Some(c) = v["certified"].as_object() {
                s += &format!("degree: {}\n", c["degree"]);
                s += &format!("projection degrees: {}\n", c["projection_degrees"]);
                s += &format!("semidirect: {}\n", c["semidirect"]);
            }
            s += &format!("|G1| = {}, |G2| = {}, |H| = {}\n", v["group_orders"]["G1"], v["group_orders"]["G2"], v["group_orders"]["H"]);
        }
        "construct" => {
            s += &format!("degree: {}\n", v["degree"]);
            s += &format!("terms: {}\n", v["monomials"].as_array().map_or(0, Vec::len));
            s += &format!("projection degrees: {}\n", v["certificate"]["projection_degrees"]);
            s += &format!("F = {}\n", v["polynomial"].as_str().unwrap_or(""));
        }
        "quotient" => s += &format!("{}\n", v["relation"].as_str().unwrap_or("")),
        "outer" => s += &format!("holds: {}\n", v["holds"]),
        "points" => {
            s += &format!("{} points\n", v["count"]);
            for p in v["rendered"].as_array().into_iter().flatten() {
                s += &format!("  {}\n", p.as_str().unwrap_or(""));
            }
        }
        _ => {}
    }
    s
}

/// Writes via a sibling temporary file and a rename.
fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

fn out_path(cmd: &Command) -> Option<&Path> {
    match cmd {
        Command::Verify { out, .. }
        | Command::Construct { out, .. }
        | Command::Quotient { out, .. }
        | Command::Outer { out, .. }
        | Command::Points { out, .. } => out.out.as_deref(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((report, verdict)) => {
            let text = serde_json::to_string_pretty(&report).expect("serialisable") + "\n";
            match out_path(&cli.command) {
                Some(path) => {
                    if let Err(e) = write_atomic(path, text.as_bytes()) {
                        eprintln!("error: writing {}: {e}", path.display());
                        return ExitCode::from(3);
                    }
                    print!("{}", summary(&report));
                }
                None => print!("{text}"),
            }
            ExitCode::from(if verdict { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Certification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
