//! The `theta-tqft` command line.
//!
//! Exit status: `0` success, `1` a checked property failed, `2` bad input,
//! `3` bad configuration. `THETA_TQFT_THREADS` caps the worker pool.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::cyclo::{Cyclo, CycloRing};
use crate::dft::{egorov_check, rho_averaging_detail, rho_word, twist_transform, MCGWord};
use crate::error::{Error, Result};
use crate::heis::{schrodinger_matrix, HeisFin};
use crate::link::{random_kirby_walk, FramedLinkData};
use crate::matrix::CycloMatrix;
use crate::rt::{omega_eval_fast, signature, z_invariant};
use crate::theta_num::{bargmann_project, ThetaParams, DEFAULT_GRID, DEFAULT_TRUNCATION};
use crate::verify::{analytic_errors, rep_checks, run_suite, Suite, VerifyConfig};

pub const THREADS_ENV: &str = "THETA_TQFT_THREADS";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "theta-tqft", version, about = "Abelian Chern-Simons invariants and theta-function transforms")]
pub struct Cli {
    /// Level N (even, at least 2).
    #[arg(long, global = true)]
    pub level: Option<i64>,
    /// Genus of the surface.
    #[arg(long, global = true)]
    pub genus: Option<usize>,
    /// Tolerance for floating-point comparisons.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub precision: f64,
    /// Theta series truncation radius.
    #[arg(long, global = true, default_value_t = DEFAULT_TRUNCATION)]
    pub truncation: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate Z, Ω and the signature of a surgery link.
    Invariant {
        file: PathBuf,
        /// Print the exact cyclotomic value (default).
        #[arg(long)]
        exact: bool,
        /// Print only the complex approximation.
        #[arg(long, conflicts_with = "exact")]
        numeric: bool,
    },
    /// Compare the invariants of two surgery links.
    Kirby {
        first: PathBuf,
        second: PathBuf,
        /// Random Kirby walks from the first link to check as well.
        #[arg(long, default_value_t = 0)]
        walks: usize,
        #[arg(long, default_value_t = 20)]
        steps: usize,
    },
    /// Check the Schrödinger representation, or print one operator.
    Rep {
        /// Element `p1,..;q1,..;k` in canonical coordinates.
        #[arg(long, allow_hyphen_values = true)]
        element: Option<String>,
    },
    /// Matrix of a mapping class acting on theta functions.
    Dft {
        #[arg(long, default_value = "S")]
        word: String,
        /// Use the averaging construction instead of the twist product.
        #[arg(long)]
        averaging: bool,
    },
    /// Check the exact Egorov identity for a word.
    Egorov {
        #[arg(long, default_value = "T")]
        word: String,
        #[arg(long)]
        averaging: bool,
        /// Flip every twist in the transform but not in the mapping class.
        #[arg(long, conflicts_with = "averaging")]
        wrong_sign: bool,
    },
    /// Compare closed-form Toeplitz operators with quadrature.
    VerifyAnalytic {
        /// Period `re,im`.
        #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
        tau: String,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
    },
    /// Run the self-check suites.
    Verify {
        #[arg(long = "suite")]
        suites: Vec<String>,
        #[arg(long)]
        wrong_sign: bool,
        #[arg(long, default_value_t = 50)]
        pairs: usize,
        #[arg(long, default_value_t = 100)]
        walks: usize,
    },
}

/// Validated global options.
#[derive(Clone, Debug)]
pub struct Config {
    pub level: u32,
    pub genus: usize,
    pub precision: f64,
    pub truncation: i64,
    pub format: Format,
    pub seed: u64,
}

impl Config {
    pub fn from_cli(cli: &Cli) -> Result<Self> {
        let level = cli.level.unwrap_or(2);
        if level < 2 || level % 2 != 0 || level > u32::MAX as i64 {
            return Err(Error::InvalidLevel(level));
        }
        let genus = cli.genus.unwrap_or(1);
        if genus == 0 {
            return Err(Error::Config("genus must be at least 1".into()));
        }
        if !cli.precision.is_finite() || cli.precision <= 0.0 {
            return Err(Error::Config(format!("precision must be positive, got {}", cli.precision)));
        }
        if cli.truncation < 1 {
            return Err(Error::Config(format!("truncation must be at least 1, got {}", cli.truncation)));
        }
        Ok(Config {
            level: level as u32,
            genus,
            precision: cli.precision,
            truncation: cli.truncation,
            format: cli.format,
            seed: cli.seed,
        })
    }

    fn ring(&self) -> Result<Arc<CycloRing>> {
        CycloRing::new(self.level as i64)
    }
}

/// Sizes the global worker pool from [`THREADS_ENV`].
pub fn init_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Config(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    // A second initialization in the same process keeps the first pool.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = init_threads()
        .and_then(|()| Config::from_cli(&cli))
        .and_then(|cfg| dispatch(&cli, &cfg, out));
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli, cfg: &Config, out: &mut dyn Write) -> Result<bool> {
    match &cli.command {
        Command::Invariant { file, numeric, .. } => cmd_invariant(cfg, file, *numeric, out),
        Command::Kirby { first, second, walks, steps } => cmd_kirby(cfg, first, second, *walks, *steps, out),
        Command::Rep { element } => cmd_rep(cfg, element.as_deref(), out),
        Command::Dft { word, averaging } => cmd_dft(cfg, word, *averaging, out),
        Command::Egorov { word, averaging, wrong_sign } => cmd_egorov(cfg, word, *averaging, *wrong_sign, out),
        Command::VerifyAnalytic { tau, grid } => cmd_verify_analytic(cfg, tau, *grid, out),
        Command::Verify { suites, wrong_sign, pairs, walks } => {
            let mut vc = VerifyConfig {
                seed: cfg.seed,
                wrong_sign: *wrong_sign,
                truncation: cfg.truncation,
                cocycle_pairs: *pairs,
                kirby_walks: *walks,
                genus: cli.genus,
                ..VerifyConfig::default()
            };
            if cli.level.is_some() {
                vc.levels = vec![cfg.level];
            }
            cmd_verify(cfg, suites, &vc, out)
        }
    }
}

fn emit(cfg: &Config, out: &mut dyn Write, value: &Value, text: &str) -> Result<()> {
    match cfg.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(value)?)?,
        Format::Text => write!(out, "{text}")?,
    }
    Ok(())
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn matrix_json(m: &CycloMatrix, exact: bool) -> Value {
    let complex: Vec<Vec<Value>> = m
        .to_complex()
        .into_iter()
        .map(|r| r.into_iter().map(complex_json).collect())
        .collect();
    if !exact {
        return json!({ "complex": complex });
    }
    let entries: Vec<Vec<Value>> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| serde_json::to_value(m.get(i, j)).expect("serializable"))
                .collect()
        })
        .collect();
    json!({ "entries": entries, "complex": complex })
}

fn matrix_text(m: &CycloMatrix) -> String {
    let mut s = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| m.get(i, j).to_string()).collect();
        s.push_str(&row.join("\t"));
        s.push('\n');
    }
    s
}

fn load_link(path: &Path) -> Result<FramedLinkData> {
    FramedLinkData::load(&std::fs::read_to_string(path)?)
}

fn fmt_c(z: Complex64) -> String {
    format!("{:.12} {:+.12}i", z.re, z.im)
}

fn cmd_invariant(cfg: &Config, file: &Path, numeric: bool, out: &mut dyn Write) -> Result<bool> {
    let ring = cfg.ring()?;
    let d = load_link(file)?;
    let z = z_invariant(&d, &ring);
    let omega = omega_eval_fast(&d, &ring);
    let sig = signature(&d.b);
    let mut v = json!({
        "Z_complex": complex_json(z.to_complex()),
        "Omega_complex": complex_json(omega.to_complex()),
        "signature": sig,
    });
    if !numeric {
        v["Z"] = serde_json::to_value(&z)?;
        v["Omega"] = serde_json::to_value(&omega)?;
    }
    let text = if numeric {
        format!("Z = {}\nOmega = {}\nsignature = {sig}\n", fmt_c(z.to_complex()), fmt_c(omega.to_complex()))
    } else {
        format!(
            "Z = {z} ≈ {}\nOmega = {omega} ≈ {}\nsignature = {sig}\n",
            fmt_c(z.to_complex()),
            fmt_c(omega.to_complex())
        )
    };
    emit(cfg, out, &v, &text)?;
    Ok(true)
}

fn cmd_kirby(cfg: &Config, a: &Path, b: &Path, walks: usize, steps: usize, out: &mut dyn Write) -> Result<bool> {
    let ring = cfg.ring()?;
    let (da, db) = (load_link(a)?, load_link(b)?);
    let (za, zb): (Cyclo, Cyclo) = (z_invariant(&da, &ring), z_invariant(&db, &ring));
    let equal = za == zb;
    let mut broken = None;
    for i in 0..walks {
        let seed = cfg.seed.wrapping_add(i as u64);
        let w = random_kirby_walk(&da, steps, seed);
        if z_invariant(&w, &ring) != za {
            broken = Some(seed);
            break;
        }
    }
    let verdict = if equal { "invariants equal" } else { "invariants differ" };
    let v = json!({
        "result": verdict,
        "Z_first": serde_json::to_value(&za)?,
        "Z_second": serde_json::to_value(&zb)?,
        "walks": walks,
        "walk_failure_seed": broken,
    });
    let mut text = format!("{verdict}\nfirst:  {za}\nsecond: {zb}\n");
    if walks > 0 {
        match broken {
            None => text.push_str(&format!("{walks} random walks preserved the invariant\n")),
            Some(s) => text.push_str(&format!("walk with seed {s} changed the invariant\n")),
        }
    }
    emit(cfg, out, &v, &text)?;
    Ok(equal && broken.is_none())
}

fn parse_element(s: &str, level: u32, genus: usize) -> Result<HeisFin> {
    let bad = |msg: String| Error::Parse { line: 1, msg };
    let parts: Vec<&str> = s.split(';').collect();
    if parts.len() != 3 {
        return Err(bad(format!("expected `p;q;k`, got {s:?}")));
    }
    let vec = |t: &str| -> Result<Vec<i64>> {
        let v = t
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad(format!("bad vector {t:?}")))?;
        if v.len() != genus {
            return Err(bad(format!("vector {t:?} has {} entries, genus is {genus}", v.len())));
        }
        Ok(v)
    };
    let k = parts[2].trim().parse().map_err(|_| bad(format!("bad central part {:?}", parts[2])))?;
    Ok(HeisFin::new(level, vec(parts[0])?, vec(parts[1])?, k))
}

fn cmd_rep(cfg: &Config, element: Option<&str>, out: &mut dyn Write) -> Result<bool> {
    let ring = cfg.ring()?;
    if let Some(e) = element {
        let u = parse_element(e, cfg.level, cfg.genus)?;
        let m = schrodinger_matrix(&ring, &u);
        let v = json!({ "element": u, "matrix": matrix_json(&m, true) });
        emit(cfg, out, &v, &matrix_text(&m))?;
        return Ok(true);
    }
    let checks = rep_checks(&ring, cfg.genus, 20, cfg.seed);
    let ok = checks.iter().all(|c| c.passed);
    let text: String = checks
        .iter()
        .map(|c| format!("{} {} {}\n", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail))
        .collect();
    emit(cfg, out, &json!({ "passed": ok, "checks": checks }), &text)?;
    Ok(ok)
}

fn cmd_dft(cfg: &Config, word: &str, averaging: bool, out: &mut dyn Write) -> Result<bool> {
    let ring = cfg.ring()?;
    let w = MCGWord::parse(word, cfg.genus)?;
    let h = w.matrix()?;
    let (m, framing, shift) = if averaging {
        let a = rho_averaging_detail(&ring, &h)?;
        (a.matrix, None, a.shift)
    } else {
        let t = rho_word(&ring, &w)?;
        (t.normalized(), Some(t.framing), None)
    };
    let v = json!({
        "word": w.to_string(),
        "symplectic": h.rows(),
        "framing": framing,
        "shift": shift,
        "matrix": matrix_json(&m, true),
    });
    let mut text = format!("word {w}\nsymplectic {:?}\n", h.rows());
    if let Some(f) = framing {
        text.push_str(&format!("framing {f}\n"));
    }
    text.push_str(&matrix_text(&m));
    emit(cfg, out, &v, &text)?;
    Ok(true)
}

fn cmd_egorov(cfg: &Config, word: &str, averaging: bool, wrong_sign: bool, out: &mut dyn Write) -> Result<bool> {
    let ring = cfg.ring()?;
    let w = MCGWord::parse(word, cfg.genus)?;
    let h = w.matrix()?;
    let m = if averaging {
        rho_averaging_detail(&ring, &h)?.matrix
    } else if wrong_sign {
        let dim = (cfg.level as usize).pow(cfg.genus as u32);
        w.letters.iter().try_fold(CycloMatrix::identity(&ring, dim), |acc, t| {
            acc.mul(&twist_transform(&ring, &t.curve, -t.sign))
        })?
    } else {
        rho_word(&ring, &w)?.matrix
    };
    let rep = egorov_check(&ring, &h, &m)?;
    let v = json!({
        "word": w.to_string(),
        "holds": rep.holds,
        "invertible": rep.invertible,
        "witness": rep.witness,
    });
    let text = match &rep.witness {
        None if rep.holds => "pass\n".to_string(),
        None => "FAIL: transform is singular\n".to_string(),
        Some(u) => format!("FAIL: witness (p={:?}, q={:?}, k={})\n", u.p, u.q, u.k),
    };
    emit(cfg, out, &v, &text)?;
    Ok(rep.holds)
}

fn parse_tau(s: &str) -> Result<Complex64> {
    let parts: Vec<&str> = s.split(',').collect();
    let nums: Option<Vec<f64>> = parts.iter().map(|p| p.trim().parse().ok()).collect();
    match nums.as_deref() {
        Some([re, im]) => Ok(Complex64::new(*re, *im)),
        _ => Err(Error::Config(format!("expected --tau re,im, got {s:?}"))),
    }
}

fn cmd_verify_analytic(cfg: &Config, tau: &str, grid: usize, out: &mut dyn Write) -> Result<bool> {
    if cfg.genus != 1 {
        return Err(Error::Config("verify-analytic runs in genus 1".into()));
    }
    let params = ThetaParams::torus(cfg.level, parse_tau(tau)?)?
        .with_grid(grid)
        .with_truncation(cfg.truncation);
    let e = analytic_errors(&params)?;
    let bargmann: Vec<f64> = (0..cfg.level as i64)
        .map(|mu| bargmann_project(&params, mu).map(|b| b.off_mass))
        .collect::<Result<_>>()?;
    let worst_bargmann = bargmann.iter().copied().fold(0.0, f64::max);
    let tol = cfg.precision;
    let ok = e.toeplitz < tol && e.gram < tol && e.weyl < tol && worst_bargmann < tol;
    let v = json!({
        "passed": ok,
        "tolerance": tol,
        "toeplitz_rel_error": e.toeplitz,
        "gram_error": e.gram,
        "weyl_error": e.weyl,
        "bargmann_off_mass": bargmann,
    });
    let text = format!(
        "{}\ntoeplitz {:.3e}\ngram {:.3e}\nweyl {:.3e}\nbargmann {:.3e}\n",
        if ok { "pass" } else { "FAIL" },
        e.toeplitz,
        e.gram,
        e.weyl,
        worst_bargmann
    );
    emit(cfg, out, &v, &text)?;
    Ok(ok)
}

fn cmd_verify(cfg: &Config, names: &[String], vc: &VerifyConfig, out: &mut dyn Write) -> Result<bool> {
    let suites: Vec<Suite> = if names.is_empty() {
        Suite::ALL.to_vec()
    } else {
        names.iter().map(|s| s.parse()).collect::<Result<_>>()?
    };
    let mut reports = Vec::new();
    for s in suites {
        reports.push(run_suite(s, vc)?);
    }
    let ok = reports.iter().all(|r| r.passed());
    let first = reports.iter().find_map(|r| r.first_failure().map(|c| (r.suite, c)));
    let mut text = String::new();
    for r in &reports {
        text.push_str(&format!("{} {} ({} checks)\n", if r.passed() { "pass" } else { "FAIL" }, r.suite, r.checks.len()));
    }
    if let Some((s, c)) = first {
        text.push_str(&format!("first failure: {s}: {} {}\n", c.name, c.detail));
    }
    let v = json!({
        "passed": ok,
        "first_failure": first.map(|(s, c)| json!({ "suite": s, "check": c })),
        "suites": reports,
    });
    emit(cfg, out, &v, &text)?;
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let code = run(std::iter::once("theta-tqft").chain(args.iter().copied()), &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn config_errors() {
        assert_eq!(run_str(&["--level", "3", "rep"]).0, 3);
        assert_eq!(run_str(&["--precision", "0", "rep"]).0, 3);
        assert_eq!(run_str(&["--genus", "0", "rep"]).0, 3);
        assert_eq!(run_str(&["bogus"]).0, 2);
    }

    #[test]
    fn element_parsing() {
        let u = parse_element("1;-1;3", 4, 1).unwrap();
        assert_eq!((u.p.clone(), u.q.clone(), u.k), (vec![1], vec![3], 3));
        assert!(parse_element("1,2;0;0", 4, 1).is_err());
        assert!(parse_element("1;0", 4, 1).is_err());
    }

    #[test]
    fn egorov_negative_control() {
        let (code, out) = run_str(&["--format", "text", "egorov", "--word", "T", "--wrong-sign"]);
        assert_eq!(code, 1);
        assert!(out.contains("p=[1], q=[0], k=0"), "{out}");
        assert_eq!(run_str(&["egorov", "--word", "S T"]).0, 0);
    }

    #[test]
    fn dft_output_is_json() {
        let (code, out) = run_str(&["--level", "4", "dft", "--word", "S"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["matrix"]["complex"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn tau_parsing() {
        assert_eq!(parse_tau("0.5, 1").unwrap(), Complex64::new(0.5, 1.0));
        assert!(parse_tau("1").is_err());
    }
}
