//! Batch front end behind the `ktgj` binary.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::jonesengine::{
    augmented_closed_form, build_expression, eval_at_root, eval_generic, normalize_generic, sufficient_ring_count,
    verify_conjecture, EngineConfig, EngineError, JonesRecord, TwistMode,
};
use crate::ktgmodel::{augment, parse_sequence, validate, MoveSequence, RingSpec};
use crate::octgeom::{
    asymptotic_series, asymptotics_csv, build_gluing, gluing_json, verify_gluing, volume, OctGeomError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CHECK: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ktgj", about = "Colored Jones invariants and octahedral volumes of knotted trivalent graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Treatment of unzips of twisted edges.
    #[arg(long, global = true, value_enum, default_value = "strict")]
    pub mode: Mode,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and replay a sequence, reporting its move statistics.
    Validate { file: PathBuf },
    /// Evaluate the normalized invariant.
    Jones {
        file: PathBuf,
        #[arg(long = "N")]
        n: u32,
        #[arg(long, value_enum, default_value = "multisum")]
        method: Method,
        #[arg(long, value_enum, default_value = "root")]
        at: At,
        /// Rings per unzip: a count, or `auto` for the sufficient count.
        #[arg(long)]
        rings: Option<String>,
        #[arg(long)]
        allow_even: bool,
    },
    /// Tabulate the so(3) volume conjecture for an augmented sequence.
    Verify {
        file: PathBuf,
        #[arg(long = "Nmax", default_value_t = 2001)]
        nmax: u32,
        /// Compare against the multisum up to this color.
        #[arg(long, default_value_t = 7)]
        cross_check: u32,
    },
    /// Volume of the exterior of the augmented graph.
    Volume { file: PathBuf },
    /// Octahedral gluing and its combinatorial checks.
    Gluing {
        file: PathBuf,
        /// Also verify the gluing with one white pairing removed.
        #[arg(long)]
        negative_control: bool,
    },
    /// `(2π/N) log sixj_N` against `2 vol_oct`.
    Asymptotics {
        #[arg(long = "Nlist", value_delimiter = ',', default_value = "101,501,1001,2001")]
        nlist: Vec<u32>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Multisum,
    Closed,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum At {
    Root,
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Strict,
    Lenient,
}

/// Result of a command: exit code and the text to emit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self { code: EXIT_OK, output }
    }

    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        Self {
            code,
            output: format!("error: {msg}\n"),
        }
    }
}

fn engine_exit(e: &EngineError) -> i32 {
    match e {
        EngineError::UnexpectedPole { .. } | EngineError::PrecisionExhausted { .. } | EngineError::NotReducible(_) => {
            EXIT_CHECK
        }
        _ => EXIT_INPUT,
    }
}

fn geom_exit(e: &OctGeomError) -> i32 {
    match e {
        OctGeomError::GluingConflict(_) => EXIT_CHECK,
        _ => EXIT_INPUT,
    }
}

fn read_sequence(path: &Path) -> Result<MoveSequence, Outcome> {
    let text = std::fs::read_to_string(path).map_err(|e| Outcome::fail(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    parse_sequence(&text).map_err(|e| Outcome::fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

/// Runs a parsed command line; `--out` is honored by the caller.
pub fn run(cli: &Cli) -> Outcome {
    let config = EngineConfig {
        mode: match cli.mode {
            Mode::Strict => TwistMode::Strict,
            Mode::Lenient => TwistMode::Lenient,
        },
        ..EngineConfig::default()
    };
    let result = match &cli.command {
        Command::Validate { file } => cmd_validate(file),
        Command::Jones {
            file,
            n,
            method,
            at,
            rings,
            allow_even,
        } => cmd_jones(file, *n, *method, *at, rings.as_deref(), *allow_even, cli.format, &config),
        Command::Verify { file, nmax, cross_check } => cmd_verify(file, *nmax, *cross_check, cli.format, &config),
        Command::Volume { file } => cmd_volume(file, cli.format),
        Command::Gluing { file, negative_control } => cmd_gluing(file, *negative_control, cli.format),
        Command::Asymptotics { nlist } => cmd_asymptotics(nlist, cli.format),
    };
    result.unwrap_or_else(|o| o)
}

pub fn cmd_validate(file: &Path) -> Result<Outcome, Outcome> {
    let seq = read_sequence(file)?;
    let report = validate(&seq);
    let s = &report.stats;
    let mut out = format!("t={} u={} theta={} r={}\n", s.t, s.u, s.theta, s.r);
    for (i, (rings, twist)) in s.per_unzip_rings.iter().zip(&s.twist_at_unzip).enumerate() {
        let _ = writeln!(out, "unzip {}: rings={rings} twist={twist}", i + 1);
    }
    match &report.failure {
        None => Ok(Outcome::ok(out)),
        Some((i, e)) => Err(Outcome::fail(EXIT_INPUT, format!("move {}: {e}", i + 1))),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_jones(
    file: &Path,
    n: u32,
    method: Method,
    at: At,
    rings: Option<&str>,
    allow_even: bool,
    format: Option<Format>,
    config: &EngineConfig,
) -> Result<Outcome, Outcome> {
    if n == 0 {
        return Err(Outcome::fail(EXIT_INPUT, "N must be positive"));
    }
    if n.is_multiple_of(2) && !allow_even {
        return Err(Outcome::fail(EXIT_INPUT, format!("N = {n} is even; pass --allow-even")));
    }
    let mut seq = read_sequence(file)?;
    let engine = |e: EngineError| Outcome::fail(engine_exit(&e), e);
    if let Some(r) = rings {
        let k = if r == "auto" {
            sufficient_ring_count(&seq).map_err(engine)?.n
        } else {
            r.parse().map_err(|_| Outcome::fail(EXIT_INPUT, format!("bad ring count '{r}'")))?
        };
        seq = augment(&seq, &RingSpec::Uniform(k)).map_err(|e| Outcome::fail(EXIT_INPUT, e))?;
    }
    let mut records = Vec::new();
    let mut text = String::new();
    let mut values: Vec<Complex64> = Vec::new();
    if matches!(method, Method::Multisum | Method::Both) {
        let expr = build_expression(&seq, config.mode).map_err(engine)?;
        match at {
            At::Root => {
                let v = eval_at_root(&expr, n, config).map_err(engine)?;
                let _ = writeln!(
                    text,
                    "multisum N={n}: {} ({} summands, jet precision {})",
                    fmt_complex(v.value),
                    v.summands,
                    v.precision
                );
                records.push(JonesRecord::new(&seq, n, v.value, "multisum"));
                values.push(v.value);
            }
            At::Generic => {
                let raw = eval_generic(&expr, n, config).map_err(engine)?;
                let _ = writeln!(text, "multisum N={n}: {}", normalize_generic(&raw, n, seq.declared_split_components));
            }
        }
    }
    if matches!(method, Method::Closed | Method::Both) {
        let v = augmented_closed_form(&seq, n).map_err(engine)?;
        let _ = writeln!(text, "closed form N={n}: {}", fmt_complex(v));
        records.push(JonesRecord::new(&seq, n, v, "closed_form"));
        values.push(v);
    }
    if let [a, b] = values[..] {
        let scale = b.norm().max(a.norm());
        let rel = if scale == 0.0 { 0.0 } else { (a - b).norm() / scale };
        let _ = writeln!(text, "relative discrepancy: {rel:.3e}");
    }
    Ok(Outcome::ok(match format {
        Some(Format::Json) => serde_json::to_string_pretty(&records).expect("plain data") + "\n",
        _ => text,
    }))
}

fn fmt_complex(z: Complex64) -> String {
    format!("{:.12e} {:+.12e}i", z.re, z.im)
}

/// Colors for the conjecture table: every `N ≤ 12`, then a ladder of odd
/// colors up to `nmax`.
pub fn verify_colors(nmax: u32) -> Vec<u32> {
    const LADDER: [u32; 9] = [21, 51, 101, 201, 501, 1001, 2001, 5001, 10001];
    let mut ns: Vec<u32> = (1..=nmax.min(12)).collect();
    ns.extend(LADDER.iter().copied().filter(|&k| k <= nmax));
    if nmax > 12 && nmax % 2 == 1 && !ns.contains(&nmax) {
        ns.push(nmax);
    }
    ns
}

pub fn cmd_verify(
    file: &Path,
    nmax: u32,
    cross_check: u32,
    format: Option<Format>,
    config: &EngineConfig,
) -> Result<Outcome, Outcome> {
    let seq = read_sequence(file)?;
    let report = verify_conjecture(&seq, &verify_colors(nmax), cross_check, config)
        .map_err(|e| Outcome::fail(engine_exit(&e), e))?;
    if format == Some(Format::Json) {
        return Ok(Outcome::ok(serde_json::to_string_pretty(&report).expect("plain data") + "\n"));
    }
    let mut out = format!(
        "t={} r={} target 2(t+1)vol_oct = {:.6}\n{:>6}  {:>14}  {:>12}  {}\n",
        report.t, report.r, report.target, "N", "LHS", "error", "note"
    );
    for row in &report.rows {
        let note = match row.multisum_rel_diff {
            Some(d) => format!("multisum rel diff {d:.1e}"),
            None => String::new(),
        };
        match (row.lhs, row.error) {
            (Some(l), Some(e)) => {
                let _ = writeln!(out, "{:>6}  {:>14.6}  {:>12.6}  {note}", row.n, l, e);
            }
            _ => {
                let _ = writeln!(out, "{:>6}  {:>14}  {:>12}  J_N = 0 {note}", row.n, "-inf", "-");
            }
        }
    }
    if !report.cross_checked {
        let _ = writeln!(
            out,
            "multisum cross-check skipped: fewer than {} rings on some unzip",
            report.ring_bound
        );
    }
    let _ = writeln!(
        out,
        "original volume conjecture: {}",
        if report.original_fails { "fails (J_N = 0 for even N)" } else { "not refuted by this table" }
    );
    let _ = writeln!(
        out,
        "so(3) volume conjecture: {} (errors decreasing: {}, final relative error {})",
        if report.so3_supported { "supported" } else { "not supported by this table" },
        report.error_decreasing,
        report.final_rel_error.map_or("-".into(), |e| format!("{e:.3e}"))
    );
    Ok(Outcome::ok(out))
}

pub fn cmd_volume(file: &Path, format: Option<Format>) -> Result<Outcome, Outcome> {
    let seq = read_sequence(file)?;
    let r = volume(&seq).map_err(|e| Outcome::fail(geom_exit(&e), e))?;
    Ok(Outcome::ok(match format {
        Some(Format::Json) => serde_json::to_string_pretty(&r).expect("plain data") + "\n",
        _ => format!(
            "{} octahedra, volume {:.10}, Seifert pieces {:?}\n",
            r.octahedra, r.total_volume, r.seifert_pieces
        ),
    }))
}

pub fn cmd_gluing(file: &Path, negative_control: bool, format: Option<Format>) -> Result<Outcome, Outcome> {
    let seq = read_sequence(file)?;
    let g = build_gluing(&seq).map_err(|e| Outcome::fail(geom_exit(&e), e))?;
    let report = verify_gluing(&g);
    let mut out = match format {
        Some(Format::Json) => serde_json::to_string_pretty(&gluing_json(&g)).expect("plain data") + "\n",
        _ if report.passed() => format!(
            "{} octahedra, all checks passed ({} annuli, {} tori, {} vertex spheres)\n",
            report.octahedra, report.annuli, report.tori, report.vertex_spheres
        ),
        _ => format!("{} octahedra, violations: {}\n", report.octahedra, report.violations.join("; ")),
    };
    if negative_control {
        let bad = verify_gluing(&g.without_first_white_pairing());
        let _ = writeln!(out, "negative control (one white pairing removed): {}", bad.violations.join("; "));
    }
    Ok(Outcome {
        code: if report.passed() { EXIT_OK } else { EXIT_CHECK },
        output: out,
    })
}

pub fn cmd_asymptotics(ns: &[u32], format: Option<Format>) -> Result<Outcome, Outcome> {
    if let Some(n) = ns.iter().find(|&&n| n % 2 == 0) {
        return Err(Outcome::fail(EXIT_INPUT, format!("N = {n} must be odd")));
    }
    let rows = asymptotic_series(ns).map_err(|e| Outcome::fail(geom_exit(&e), e))?;
    Ok(Outcome::ok(match format {
        Some(Format::Json) => serde_json::to_string_pretty(&rows).expect("plain data") + "\n",
        _ => asymptotics_csv(&rows),
    }))
}
