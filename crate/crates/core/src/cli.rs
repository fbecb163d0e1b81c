//! The `golden-gaps` command line.
//!
//! Every option can also come from a flat `key = value` file given with
//! `--config`; flags override the file, the file overrides the defaults.
//! Keys are the long flag names with `-` replaced by `_`.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::analytic::{self, AlphaGrid};
use crate::bcz::{self, Mode, SectionPoint};
use crate::golden::GoldenNumber;
use crate::lattice::{self, GapMethod, GapSample};
use crate::stats::{self, HSpacingQuery};
use crate::{fmt_f64, Error, Result};

/// Radii above this need `--force-exact` in exact mode.
pub const EXACT_RADIUS_LIMIT: u64 = 5000;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "GOLDEN_GAPS_THREADS";

#[derive(Parser, Debug)]
#[command(name = "golden-gaps", version, about = "Slope gap statistics of the golden L")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Saddle connection holonomies in the sector 0 ≤ Im ≤ Re ≤ R
    Enumerate,
    /// Scaled slope gaps at radius R
    Gaps,
    /// The limiting pdf and cdf on an alpha grid
    Curve,
    /// Histogram of the gaps at radius R against the limiting density
    Compare,
    /// Partial and total volumes, closed form and quadrature
    Volume,
    /// Monte Carlo joint law of consecutive return times
    Hspacing,
    /// Orbit of a point under the BCZ map
    Orbit,
}

#[derive(Args, Debug, Default, Clone)]
pub struct Flags {
    /// flat key=value file of defaults
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub radius: Option<u64>,
    /// direct | bcz
    #[arg(long, global = true)]
    pub method: Option<String>,
    #[arg(long, global = true)]
    pub bins: Option<usize>,
    #[arg(long, global = true)]
    pub alpha_min: Option<f64>,
    #[arg(long, global = true)]
    pub alpha_max: Option<f64>,
    #[arg(long, global = true)]
    pub alpha_steps: Option<usize>,
    /// exact | float
    #[arg(long, global = true)]
    pub mode: Option<String>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// csv | json
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// allow exact mode above R = 5000
    #[arg(long, global = true)]
    pub force_exact: bool,
    /// orbit start, `p/pd+q/qd*phi` or a decimal in float mode
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// orbit length
    #[arg(long, global = true)]
    pub steps: Option<usize>,
    /// comma-separated h-spacing thresholds t_1,…,t_h
    #[arg(long, global = true)]
    pub thresholds: Option<String>,
    #[arg(long, global = true)]
    pub samples: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// A fully resolved invocation.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub radius: Option<u64>,
    pub method: GapMethod,
    pub bins: usize,
    pub alpha: AlphaGrid,
    pub mode: Mode,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub force_exact: bool,
    pub a: String,
    pub b: String,
    pub steps: usize,
    pub thresholds: Vec<f64>,
    pub samples: u64,
}

const KEYS: [&str; 16] = [
    "radius",
    "method",
    "bins",
    "alpha_min",
    "alpha_max",
    "alpha_steps",
    "mode",
    "seed",
    "out",
    "format",
    "force_exact",
    "a",
    "b",
    "steps",
    "thresholds",
    "samples",
];

/// Parses a flat `key = value` file; `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("config line {}: expected key = value", n + 1)))?;
        let key = k.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(Error::Config(format!("config line {}: unknown key {key:?}", n + 1)));
        }
        map.insert(key, v.trim().to_string());
    }
    Ok(map)
}

fn flag_entries(f: &Flags) -> Vec<(&'static str, String)> {
    let mut out = Vec::new();
    let mut put = |k: &'static str, v: Option<String>| {
        if let Some(v) = v {
            out.push((k, v));
        }
    };
    put("radius", f.radius.map(|v| v.to_string()));
    put("method", f.method.clone());
    put("bins", f.bins.map(|v| v.to_string()));
    put("alpha_min", f.alpha_min.map(|v| v.to_string()));
    put("alpha_max", f.alpha_max.map(|v| v.to_string()));
    put("alpha_steps", f.alpha_steps.map(|v| v.to_string()));
    put("mode", f.mode.clone());
    put("seed", f.seed.map(|v| v.to_string()));
    put("out", f.out.as_ref().map(|p| p.display().to_string()));
    put("format", f.format.clone());
    put("force_exact", f.force_exact.then(|| "true".to_string()));
    put("a", f.a.clone());
    put("b", f.b.clone());
    put("steps", f.steps.map(|v| v.to_string()));
    put("thresholds", f.thresholds.clone());
    put("samples", f.samples.map(|v| v.to_string()));
    out
}

fn get<T: std::str::FromStr>(map: &BTreeMap<String, String>, key: &str, default: T) -> Result<T> {
    match map.get(key) {
        None => Ok(default),
        Some(v) => v
            .parse()
            .map_err(|_| Error::Config(format!("invalid value for {key}: {v:?}"))),
    }
}

impl RunConfig {
    /// Merges flags over the optional config file over defaults.
    pub fn resolve(command: Command, flags: &Flags) -> Result<RunConfig> {
        let mut map = match &flags.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
                parse_config_text(&text)?
            }
            None => BTreeMap::new(),
        };
        for (k, v) in flag_entries(flags) {
            map.insert(k.to_string(), v);
        }
        RunConfig::from_map(command, &map)
    }

    pub fn from_map(command: Command, map: &BTreeMap<String, String>) -> Result<RunConfig> {
        let method = match map.get("method").map(String::as_str) {
            None | Some("direct") => GapMethod::Direct,
            Some("bcz") => GapMethod::Bcz,
            Some(m) => return Err(Error::Config(format!("unknown method {m:?} (direct | bcz)"))),
        };
        let mode = match map.get("mode").map(String::as_str) {
            None | Some("float") => Mode::Float,
            Some("exact") => Mode::Exact,
            Some(m) => return Err(Error::Config(format!("unknown mode {m:?} (exact | float)"))),
        };
        let default_format = match command {
            Command::Volume | Command::Hspacing => Format::Json,
            _ => Format::Csv,
        };
        let format = match map.get("format").map(String::as_str) {
            None => default_format,
            Some("csv") => Format::Csv,
            Some("json") => Format::Json,
            Some(f) => return Err(Error::Config(format!("unknown format {f:?} (csv | json)"))),
        };
        let thresholds = match map.get("thresholds") {
            None => vec![1.0],
            Some(s) => s
                .split(',')
                .map(|t| t.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Config(format!("invalid thresholds {s:?}")))?,
        };
        let radius = match map.get("radius") {
            None => None,
            Some(_) => Some(get(map, "radius", 0u64)?),
        };
        let cfg = RunConfig {
            command,
            radius,
            method,
            bins: get(map, "bins", 50)?,
            alpha: AlphaGrid::new(
                get(map, "alpha_min", 0.0)?,
                get(map, "alpha_max", 10.0)?,
                get(map, "alpha_steps", 201)?,
            )?,
            mode,
            seed: get(map, "seed", 0)?,
            out: map.get("out").map(PathBuf::from),
            format,
            force_exact: get(map, "force_exact", false)?,
            a: map.get("a").cloned().unwrap_or_else(|| "1".into()),
            b: map.get("b").cloned().unwrap_or_else(|| "1".into()),
            steps: get(map, "steps", 10)?,
            thresholds,
            samples: get(map, "samples", 100_000)?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        let min_radius = match self.command {
            Command::Enumerate => 1,
            Command::Gaps | Command::Compare => 2,
            _ => return Ok(()),
        };
        let r = self
            .radius
            .ok_or_else(|| Error::Config("--radius is required".into()))?;
        if r < min_radius {
            return Err(Error::Config(format!(
                "--radius must be at least {min_radius}, got {r}"
            )));
        }
        if self.mode == Mode::Exact && r > EXACT_RADIUS_LIMIT && !self.force_exact {
            return Err(Error::Config(format!(
                "exact mode at R = {r} is very slow; use --mode float or pass --force-exact (limit {EXACT_RADIUS_LIMIT})"
            )));
        }
        if self.command == Command::Compare && self.bins == 0 {
            return Err(Error::Config("--bins must be positive".into()));
        }
        Ok(())
    }

    fn radius(&self) -> u64 {
        self.radius.expect("validated")
    }
}

/// Process exit code for an error: 2 for bad input, 3 for internal faults.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invariant(_) | Error::Json(_) | Error::DivisionByZero => 3,
        _ => 2,
    }
}

#[derive(Serialize)]
struct GapSummary {
    radius: u64,
    method: GapMethod,
    mode: Mode,
    n_slopes: usize,
    n_gaps: usize,
    min_gap: Option<f64>,
    mean_gap: Option<f64>,
}

fn sample_for(cfg: &RunConfig) -> Result<GapSample> {
    let r = cfg.radius();
    match (cfg.method, cfg.mode) {
        (GapMethod::Direct, Mode::Exact) => Ok(lattice::gaps_direct(r)),
        (GapMethod::Direct, Mode::Float) => Ok(lattice::gaps_direct_f64(r)),
        (GapMethod::Bcz, mode) => bcz::gaps_via_bcz(r, mode),
    }
}

fn orbit_start(cfg: &RunConfig) -> Result<SectionPoint> {
    let exact = |s: &str| {
        s.parse::<GoldenNumber>()
            .map_err(|_| Error::Config(format!("cannot parse coordinate {s:?}")))
    };
    let p = match cfg.mode {
        Mode::Exact => SectionPoint::exact(exact(&cfg.a)?, exact(&cfg.b)?),
        Mode::Float => {
            let float = |s: &str| s.parse::<f64>().or_else(|_| exact(s).map(|g| g.to_f64()));
            SectionPoint::float(float(&cfg.a)?, float(&cfg.b)?)
        }
    };
    if !bcz::in_omega(&p) {
        let (a, b) = p.coords_f64();
        return Err(Error::OutsideSection { a, b });
    }
    Ok(p)
}

fn json<W: Write, T: Serialize>(out: &mut W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Runs a command, writing its main artifact to `out` and, for commands
/// with both a table and a summary in CSV mode, the summary to `summary`.
pub fn execute<W: Write, S: Write>(cfg: &RunConfig, out: &mut W, summary: &mut S) -> Result<()> {
    match cfg.command {
        Command::Enumerate => {
            let vectors = lattice::enumerate_vectors(cfg.radius());
            match cfg.format {
                Format::Csv => lattice::write_vectors_csv(out, &vectors)?,
                Format::Json => {
                    let rows: Vec<(String, String)> =
                        vectors.iter().map(|v| (v.re.to_string(), v.im.to_string())).collect();
                    json(
                        out,
                        &serde_json::json!({ "radius": cfg.radius(), "count": vectors.len(), "vectors": rows }),
                    )?;
                }
            }
        }
        Command::Gaps => {
            let sample = sample_for(cfg)?;
            let s = GapSummary {
                radius: sample.radius,
                method: sample.method,
                mode: cfg.mode,
                n_slopes: sample.count,
                n_gaps: sample.len(),
                min_gap: sample.min(),
                mean_gap: sample.mean(),
            };
            match cfg.format {
                Format::Csv => {
                    write_gaps_csv(out, &sample)?;
                    json(summary, &s)?;
                }
                Format::Json => json(out, &s)?,
            }
        }
        Command::Curve => {
            let points = analytic::curve(&cfg.alpha.points());
            match cfg.format {
                Format::Csv => analytic::write_curve_csv(&mut *out, &points)?,
                Format::Json => json(out, &points)?,
            }
        }
        Command::Compare => {
            let sample = sample_for(cfg)?;
            let report = stats::compare(&sample, cfg.bins, cfg.alpha.max)?;
            match cfg.format {
                Format::Csv => {
                    stats::write_compare_csv(&mut *out, &report.rows)?;
                    json(summary, &report)?;
                }
                Format::Json => json(out, &report)?,
            }
        }
        Command::Volume => {
            let report = analytic::volumes();
            match cfg.format {
                Format::Json => json(out, &report)?,
                Format::Csv => {
                    writeln!(out, "quantity,closed_form,numeric,discrepancy")?;
                    let (c, n, d) = (&report.closed_form, &report.numeric, &report.discrepancy);
                    for (name, x, y, z) in [
                        ("V1", c.v1, n.v1, d.v1),
                        ("Vphi", c.vphi, n.vphi, d.vphi),
                        ("Vinf", c.vinf, n.vinf, d.vinf),
                        ("Vtotal", c.vtotal, n.vtotal, d.vtotal),
                    ] {
                        writeln!(out, "{name},{},{},{}", fmt_f64(x), fmt_f64(y), fmt_f64(z))?;
                    }
                }
            }
        }
        Command::Hspacing => {
            let q = HSpacingQuery::new(cfg.thresholds.clone(), cfg.samples, cfg.seed);
            let res = stats::h_spacing_mc(&q)?;
            match cfg.format {
                Format::Json => json(out, &res)?,
                Format::Csv => {
                    writeln!(out, "h,thresholds,samples,seed,hits,estimate,std_error")?;
                    let ts: Vec<String> = q.thresholds.iter().map(|t| fmt_f64(*t)).collect();
                    writeln!(
                        out,
                        "{},{},{},{},{},{},{}",
                        q.h,
                        ts.join(";"),
                        q.samples,
                        q.seed,
                        res.hits,
                        fmt_f64(res.estimate),
                        fmt_f64(res.std_error)
                    )?;
                }
            }
        }
        Command::Orbit => {
            let trace = bcz::orbit(&orbit_start(cfg)?, cfg.steps)?;
            match cfg.format {
                Format::Csv => bcz::write_trace_csv(out, &trace, cfg.mode == Mode::Exact)?,
                Format::Json => {
                    let rows: Vec<_> = trace
                        .points
                        .iter()
                        .zip(&trace.zones)
                        .zip(&trace.return_times)
                        .map(|((p, z), rt)| {
                            let (a, b) = p.coords_f64();
                            serde_json::json!({ "a": a, "b": b, "zone": z, "return_time": rt,
                                "exact": p.coords_exact().map(|(x, y)| (x.to_string(), y.to_string())) })
                        })
                        .collect();
                    json(out, &serde_json::json!({ "steps": rows, "period": trace.period }))?;
                }
            }
        }
    }
    out.flush()?;
    Ok(())
}

/// Gap CSV: `gap` and, when the sample is exact, `gap_exact`. Doubles are
/// rounded from the exact value when there is one, so every method that
/// keeps exact gaps writes identical bytes.
pub fn write_gaps_csv<W: Write>(out: &mut W, sample: &GapSample) -> Result<()> {
    match &sample.exact {
        Some(exact) => {
            writeln!(out, "gap,gap_exact")?;
            for g in exact {
                writeln!(out, "{},{g}", fmt_f64(g.to_f64()))?;
            }
        }
        None => {
            writeln!(out, "gap")?;
            for g in &sample.gaps {
                writeln!(out, "{}", fmt_f64(*g))?;
            }
        }
    }
    Ok(())
}

/// Caps the global rayon pool from `GOLDEN_GAPS_THREADS`.
pub fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Config(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
    // a second initialisation in the same process is harmless
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn summary_path(out: &Path) -> PathBuf {
    out.with_extension("summary.json")
}

fn run(cli: &Cli) -> Result<()> {
    configure_threads()?;
    let cfg = RunConfig::resolve(cli.command, &cli.flags)?;
    match &cfg.out {
        Some(path) => {
            let mut out = BufWriter::new(
                File::create(path).map_err(|e| Error::Config(format!("cannot create {}: {e}", path.display())))?,
            );
            let mut summary = Vec::new();
            execute(&cfg, &mut out, &mut summary)?;
            if !summary.is_empty() {
                std::fs::write(summary_path(path), summary)?;
            }
        }
        None => {
            let stdout = io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            execute(&cfg, &mut out, &mut io::stderr())?;
        }
    }
    Ok(())
}

/// Entry point for the binary; returns the process exit code.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("golden-gaps: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(command: Command, pairs: &[(&str, &str)]) -> Result<RunConfig> {
        let map = pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        RunConfig::from_map(command, &map)
    }

    fn run_to_string(c: &RunConfig) -> (String, String) {
        let (mut out, mut sum) = (Vec::new(), Vec::new());
        execute(c, &mut out, &mut sum).unwrap();
        (String::from_utf8(out).unwrap(), String::from_utf8(sum).unwrap())
    }

    #[test]
    fn config_text() {
        let m = parse_config_text("# run\nradius = 20\nalpha-max=7 # inline\n\n").unwrap();
        assert_eq!(m["radius"], "20");
        assert_eq!(m["alpha_max"], "7");
        assert!(parse_config_text("colour = blue").is_err());
        assert!(parse_config_text("radius").is_err());
    }

    #[test]
    fn flags_override_file() {
        let dir = std::env::temp_dir().join(format!("gg-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let file = dir.join("run.cfg");
        std::fs::write(&file, "radius = 20\nbins = 7\nmode = exact\n").unwrap();
        let flags = Flags {
            config: Some(file),
            radius: Some(30),
            ..Flags::default()
        };
        let c = RunConfig::resolve(Command::Gaps, &flags).unwrap();
        assert_eq!((c.radius, c.bins, c.mode), (Some(30), 7, Mode::Exact));
        assert_eq!(c.alpha.steps, 201);
    }

    #[test]
    fn validation() {
        assert!(matches!(
            cfg(Command::Enumerate, &[("radius", "0")]),
            Err(Error::Config(_))
        ));
        assert!(cfg(Command::Enumerate, &[("radius", "1")]).is_ok());
        assert!(cfg(Command::Gaps, &[]).is_err());
        assert!(cfg(Command::Gaps, &[("radius", "6000"), ("mode", "exact")]).is_err());
        assert!(cfg(
            Command::Gaps,
            &[("radius", "6000"), ("mode", "exact"), ("force_exact", "true")]
        )
        .is_ok());
        assert!(cfg(Command::Gaps, &[("radius", "6000")]).is_ok());
        assert!(cfg(Command::Gaps, &[("radius", "10"), ("method", "magic")]).is_err());
        assert!(cfg(Command::Curve, &[("alpha_steps", "0")]).is_err());
    }

    #[test]
    fn enumerate_contains_figure_vectors() {
        let (out, _) = run_to_string(&cfg(Command::Enumerate, &[("radius", "2")]).unwrap());
        assert!(out.contains("\n0/1+1/1*phi,0/1+1/1*phi,"), "{out}");
        let (out, _) = run_to_string(&cfg(Command::Enumerate, &[("radius", "1")]).unwrap());
        assert!(out.contains("\n1/1+0/1*phi,0/1+0/1*phi,1,0,0\n"), "{out}");
    }

    #[test]
    fn curve_values() {
        let (out, _) = run_to_string(
            &cfg(
                Command::Curve,
                &[("alpha_min", "0.5"), ("alpha_max", "2"), ("alpha_steps", "2")],
            )
            .unwrap(),
        );
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "alpha,pdf,cdf");
        assert_eq!(lines[1], "0.5,0,0");
        let pdf2: f64 = lines[2].split(',').nth(1).unwrap().parse().unwrap();
        let expected = analytic::DENSITY * (0.25 * 2f64.ln() + 0.5 * (2.0 * crate::golden::PHI_BAR).ln());
        assert!((pdf2 - expected).abs() < 1e-15);
    }

    #[test]
    fn orbit_corner_point() {
        let (out, _) = run_to_string(&cfg(Command::Orbit, &[("a", "1"), ("b", "1"), ("steps", "1")]).unwrap());
        assert_eq!(out, "step,a,b,zone,return_time\n0,1,1,Zinf,1\n");
        let c = cfg(Command::Orbit, &[("a", "0.1"), ("b", "0.1")]).unwrap();
        assert!(matches!(
            execute(&c, &mut Vec::new(), &mut Vec::new()),
            Err(Error::OutsideSection { .. })
        ));
    }

    #[test]
    fn gaps_methods_agree_byte_for_byte() {
        let direct = cfg(Command::Gaps, &[("radius", "20"), ("mode", "exact")]).unwrap();
        let via = cfg(Command::Gaps, &[("radius", "20"), ("mode", "exact"), ("method", "bcz")]).unwrap();
        let sorted = |s: String| {
            let mut l: Vec<String> = s.lines().map(String::from).collect();
            l.sort();
            l
        };
        let (a, sa) = run_to_string(&direct);
        let (b, _) = run_to_string(&via);
        assert_eq!(sorted(a), sorted(b));
        let v: serde_json::Value = serde_json::from_str(&sa).unwrap();
        assert!(v["min_gap"].as_f64().unwrap() >= 1.0);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Config("x".into())), 2);
        assert_eq!(exit_code(&Error::Invariant("x".into())), 3);
    }
}
