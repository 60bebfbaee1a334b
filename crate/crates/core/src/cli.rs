//! The `flagdesign` command line: construct, verify and classify.
//!
//! Reports are `key=value` lines on standard output, optionally followed
//! by table rows. Every line except `wall_ms` is a pure function of the
//! inputs. Diagnostics go to standard error and failures are signalled by
//! the exit code alone.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use crate::classify::{classify, scan, ClassificationOutcome};
use crate::constructions::{
    affine_orbit_design, ag3_lines, family_group, pg_collinear_triples, pg_triangles, AffineOrbitSpec,
    FamilyParams, FamilyPrediction,
};
use crate::design::{verify_2design, Design, DesignParams};
use crate::error::Error;
use crate::perm::{PermGroup, RankDichotomy};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_SIZE: i32 = 3;
pub const EXIT_PARSE: i32 = 4;
pub const EXIT_NOT_AUTOMORPHISM: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "flagdesign", version, about = "Flag-transitive 2-(v,3,lambda) designs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a design and its group, write both, and certify them.
    Construct(ConstructArgs),
    /// Check a design file, optionally against a group file.
    Verify(VerifyArgs),
    /// Classify a parameter pair, or scan all admissible pairs.
    Classify(ClassifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    PgTriples,
    PgTriangles,
    Ag3,
    AffineOrbit,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    family: FamilyArg,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    h: Option<u32>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    e: Option<u32>,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long = "sexp")]
    s_exp: Option<u64>,
    #[arg(long = "texp")]
    t_exp: Option<u64>,
    /// Defaults to `<family>-<params>.design` in the working directory.
    #[arg(long)]
    out_design: Option<PathBuf>,
    /// Defaults to `<family>-<params>.group` in the working directory.
    #[arg(long)]
    out_group: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    design: PathBuf,
    #[arg(long)]
    group: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["v", "scan"])))]
struct ClassifyArgs {
    #[arg(long, requires = "lambda")]
    v: Option<u64>,
    #[arg(long, requires = "v")]
    lambda: Option<u64>,
    /// Tabulate every admissible (v, lambda) with v up to this bound.
    #[arg(long, conflicts_with_all = ["v", "lambda"])]
    scan: Option<u64>,
}

/// A failure together with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(err: Error) -> CliError {
        let code = match err {
            Error::SizeExceeded { .. } => EXIT_SIZE,
            Error::Parse { .. } | Error::MalformedBlock(_) => EXIT_PARSE,
            Error::NotAutomorphism { .. } => EXIT_NOT_AUTOMORPHISM,
            _ => EXIT_DOMAIN,
        };
        CliError {
            code,
            message: err.to_string(),
        }
    }
}

fn io_error(path: &Path, err: std::io::Error) -> CliError {
    CliError {
        code: EXIT_IO,
        message: format!("{}: {err}", path.display()),
    }
}

/// Ordered `key=value` lines followed by free-form table rows.
#[derive(Debug, Default)]
struct Report {
    fields: Vec<(String, String)>,
    rows: Vec<String>,
}

impl Report {
    fn put(&mut self, key: &str, value: impl Display) {
        self.fields.push((key.to_string(), value.to_string()));
    }

    fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.fields {
            out.push_str(&format!("{k}={v}\n"));
        }
        for row in &self.rows {
            out.push_str(row);
            out.push('\n');
        }
        out
    }
}

/// Parses `args` (program name first), runs the command, writes the report
/// to `out` and diagnostics to `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();

    let start = Instant::now();
    let mut report = Report::default();
    report.put("command", echo.join(" "));
    let result = match cli.command {
        Command::Construct(a) => construct(&a, &mut report),
        Command::Verify(a) => verify(&a, &mut report),
        Command::Classify(a) => classify_cmd(&a, &mut report),
    };
    match result {
        Ok(()) => {
            // rows stay after the key=value block
            let rows = std::mem::take(&mut report.rows);
            report.put("wall_ms", start.elapsed().as_millis());
            report.rows = rows;
            let _ = out.write_all(report.render().as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

fn need<T: Copy>(value: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError {
        code: EXIT_DOMAIN,
        message: format!("{family} needs --{flag}"),
    })
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn write_file(path: &Path, text: &str) -> Result<String, CliError> {
    std::fs::write(path, text).map_err(|e| io_error(path, e))?;
    Ok(sha256_hex(text.as_bytes()))
}

fn read_file(path: &Path) -> Result<(String, String), CliError> {
    let bytes = std::fs::read(path).map_err(|e| io_error(path, e))?;
    let digest = sha256_hex(&bytes);
    let text = String::from_utf8(bytes).map_err(|_| CliError {
        code: EXIT_PARSE,
        message: format!("{}: not valid UTF-8", path.display()),
    })?;
    Ok((text, digest))
}

fn construct(a: &ConstructArgs, report: &mut Report) -> Result<(), CliError> {
    let (slug, design, group, prediction) = match a.family {
        FamilyArg::PgTriples | FamilyArg::PgTriangles => {
            let name = if a.family == FamilyArg::PgTriples { "pg-triples" } else { "pg-triangles" };
            let q = need(a.q, "q", name)?;
            let h = need(a.h, "h", name)?;
            let (design, prediction, params) = if a.family == FamilyArg::PgTriples {
                let (d, p) = pg_collinear_triples(q, h)?;
                (d, p, FamilyParams::PgTriples { q, h })
            } else {
                let (d, p) = pg_triangles(q, h)?;
                (d, p, FamilyParams::PgTriangles { q, h })
            };
            (format!("{name}-q{q}-h{h}"), design, family_group(params)?, Some(prediction))
        }
        FamilyArg::Ag3 => {
            let h = need(a.h, "h", "ag3")?;
            let (design, prediction) = ag3_lines(h)?;
            (format!("ag3-h{h}"), design, family_group(FamilyParams::Ag3 { h })?, Some(prediction))
        }
        FamilyArg::AffineOrbit => {
            let fam = "affine-orbit";
            let spec = AffineOrbitSpec {
                p: need(a.p, "p", fam)?,
                d: need(a.d, "d", fam)?,
                m: need(a.m, "m", fam)?,
                e: need(a.e, "e", fam)?,
                s: need(a.s, "s", fam)?,
                s_exp: need(a.s_exp, "sexp", fam)?,
                t_exp: need(a.t_exp, "texp", fam)?,
            };
            let out = affine_orbit_design(spec)?;
            let slug = format!(
                "affine-orbit-p{}-d{}-m{}-e{}-s{}-sexp{}-texp{}",
                spec.p, spec.d, spec.m, spec.e, spec.s, spec.s_exp, spec.t_exp
            );
            let [x, y, z] = out.base_block;
            report.put("base_block", format!("{x},{y},{z}"));
            (slug, out.design, out.group, None)
        }
    };

    let design_path = a.out_design.clone().unwrap_or_else(|| PathBuf::from(format!("{slug}.design")));
    let group_path = a.out_group.clone().unwrap_or_else(|| PathBuf::from(format!("{slug}.group")));
    let design_text = design.to_text();
    let group_text = group.to_text();
    let design_digest = write_file(&design_path, &design_text)?;
    let group_digest = write_file(&group_path, &group_text)?;
    report.put("design_file", design_path.display());
    report.put("design_sha256", design_digest);
    report.put("group_file", group_path.display());
    report.put("group_sha256", group_digest);
    report.put("provenance", design.provenance());
    report.put("group_label", group.label());

    let params = verify_2design(&design);
    if let Some(pred) = prediction {
        put_prediction(report, &pred, &params);
    }
    put_params(report, &params);
    put_certificates(report, &design, &group)?;
    put_classification_of(report, &params)?;
    Ok(())
}

fn verify(a: &VerifyArgs, report: &mut Report) -> Result<(), CliError> {
    let (text, digest) = read_file(&a.design)?;
    let design = Design::from_text(&text)?;
    report.put("design_file", a.design.display());
    report.put("design_sha256", digest);
    report.put("provenance", design.provenance());
    let group = match &a.group {
        Some(path) => {
            let (text, digest) = read_file(path)?;
            let group = PermGroup::from_text(&text)?;
            report.put("group_file", path.display());
            report.put("group_sha256", digest);
            report.put("group_label", group.label());
            Some(group)
        }
        None => None,
    };

    let params = verify_2design(&design);
    put_params(report, &params);
    if let Some(group) = group {
        put_certificates(report, &design, &group)?;
    }
    put_classification_of(report, &params)?;
    Ok(())
}

fn classify_cmd(a: &ClassifyArgs, report: &mut Report) -> Result<(), CliError> {
    if let Some(vmax) = a.scan {
        let rows = scan(vmax)?;
        report.put("vmax", vmax);
        report.put("rows", rows.len());
        report.rows.push("v lambda cases".to_string());
        for row in &rows {
            report.rows.push(format!("{} {} {}", row.v, row.lambda, case_list(row)));
        }
        return Ok(());
    }
    // clap guarantees both are present outside scan mode
    let (v, lambda) = (a.v.unwrap_or_default(), a.lambda.unwrap_or_default());
    let outcome = classify(v, lambda)?;
    report.put("v", v);
    report.put("lambda", lambda);
    put_classification(report, &outcome);
    Ok(())
}

fn put_prediction(report: &mut Report, pred: &FamilyPrediction, params: &DesignParams) {
    report.put("family", pred.family);
    report.put(
        "predicted",
        format!("v={},b={},r={},lambda={}", pred.v, pred.b, pred.r, pred.lambda),
    );
    report.put("prediction_matches", pred.matches(params));
}

fn put_params(report: &mut Report, params: &DesignParams) {
    report.put("v", params.v);
    report.put("b", params.b);
    report.put("r", params.r);
    report.put("lambda", params.lambda);
    report.put("is_2design", params.is_2design);
    match params.witness {
        Some(w) => report.put(
            "witness",
            format!("{},{} count={} expected={}", w.pair.0, w.pair.1, w.count, w.expected),
        ),
        None => report.put("witness", "none"),
    }
    let divides = params.is_2design && (params.v as i64 - 6).rem_euclid(params.lambda as i64) == 0;
    report.put("lambda_divides_v_minus_6", divides);
}

/// Block invariance, flag orbits and rank of `group` acting on `design`.
fn put_certificates(report: &mut Report, design: &Design, group: &PermGroup) -> Result<(), CliError> {
    if group.degree() != design.v() {
        return Err(CliError {
            code: EXIT_DOMAIN,
            message: format!("group degree {} differs from design v={}", group.degree(), design.v()),
        });
    }
    let flags = group.flag_orbits(design)?;
    report.put("block_invariant", true);
    report.put("flag_orbits", flags.orbit_count());
    report.put("flag_orbit_sizes", join(&flags.orbit_sizes()));
    report.put("flag_transitive", flags.is_transitive());
    let points = group.point_orbits();
    report.put("point_orbits", points.orbit_count());
    match group.pair_rank() {
        Ok(rank) => {
            report.put("rank", rank.rank);
            report.put("orbital_sizes", join(&rank.orbital_sizes));
            report.put("suborbit_lengths", join(&rank.suborbit_lengths()));
            report.put(
                "rank_dichotomy",
                match rank.dichotomy() {
                    RankDichotomy::TwoTransitive => "two-transitive",
                    RankDichotomy::RankThreeHalves => "rank-3-halves",
                    RankDichotomy::Neither => "neither",
                },
            );
        }
        Err(Error::NotTransitive(_)) => report.put("rank", "none"),
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn put_classification_of(report: &mut Report, params: &DesignParams) -> Result<(), CliError> {
    if params.is_2design {
        let outcome = classify(params.v as u64, params.lambda as u64)?;
        put_classification(report, &outcome);
    }
    Ok(())
}

fn put_classification(report: &mut Report, outcome: &ClassificationOutcome) {
    report.put("admissible", outcome.admissible);
    report.put("cases", case_list(outcome));
    let witnesses: Vec<String> = outcome
        .witnesses
        .iter()
        .map(|(case, w)| format!("{case}({w})"))
        .collect();
    report.put(
        "witnesses",
        if witnesses.is_empty() { "none".to_string() } else { witnesses.join(";") },
    );
}

fn case_list(outcome: &ClassificationOutcome) -> String {
    if outcome.cases.is_empty() {
        return "none".to_string();
    }
    outcome.cases.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn join(values: &[usize]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}
