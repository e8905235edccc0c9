//! `vwlab` command line: series, tables, the verification suite and the census.

mod ringlaws;
mod suite;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arithmetics::{
    gauss_sum, gerbe_census, k3_class_census_bruteforce, k3_class_census_full,
};
use crate::coefficients::{CycNum, Rat};
use crate::error::{Error, Result};
use crate::partitions::{
    vw_essentially_trivial, vw_optimal, z_ess_trivial, z_k3_complex_structure_free, z_k3_surzr,
    z_k3_trivial_gerbe, z_k3_vw_prediction, z_optimal, z_vb_p2, z_vb_p222, SurfaceKind,
    SurfaceSpec, VWTable, DEFAULT_PRECISION,
};
use crate::qseries::PuiseuxSeries;
use crate::sduality::CheckResult;

pub use ringlaws::ring_law_suite;
pub use suite::run_verification;

pub const DEFAULT_PICARD: u32 = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    P2Vb,
    P222Vb,
    K3Su,
    K3Surzr,
    K3Prediction,
    K3Ess,
    K3Opt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Ess,
    Opt,
}

#[derive(Debug, Parser)]
#[command(
    name = "vwlab",
    version,
    about = "Exact twisted Vafa-Witten partition functions and S-duality checks"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Prime rank r.
    #[arg(long, global = true, default_value_t = 2)]
    pub rank: u32,
    /// Picard number of the K3 surface (default 11).
    #[arg(long, global = true)]
    pub picard: Option<u32>,
    /// Exponents below this bound are exact, e.g. 12 or 11/2.
    #[arg(
        long,
        global = true,
        env = "VWLAB_PRECISION",
        allow_negative_numbers = true
    )]
    pub prec: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Drop the sum-of-divisors term from the even Hurwitz series.
    #[arg(long, global = true)]
    pub drop_divisor_term: bool,
    /// Recount the rank-2 classes over all 2^22 lattice vectors.
    #[arg(long, global = true)]
    pub full_lattice_enumeration: bool,
    /// Use the alternative residue formulas for odd rank tables (rows marked provisional).
    #[arg(long, global = true)]
    pub as_stated_higher_rank: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a partition function as a truncated series.
    Series {
        #[arg(value_enum)]
        kind: SeriesKind,
        /// First Chern class for the P2 and P(2,2,2) series.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        c1: i64,
        /// Inertia component (0 or 1) for P(2,2,2).
        #[arg(long, default_value_t = 0)]
        lambda: u8,
    },
    /// Tabulate twisted invariants by c2.
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        #[arg(long, default_value_t = 10)]
        c2_max: i64,
    },
    /// Run the verification suite; exit status 0 iff every check passes.
    Verify {
        /// Replace one K3 S-rule by a corrupted copy.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Count gerbes and lattice classes, and check the Gauss sums.
    Census,
}

/// Validated settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct Config {
    pub precision: Rat,
    pub rank: u32,
    pub picard: u32,
    pub picard_given: bool,
    pub format: Option<Format>,
    pub drop_divisor_term: bool,
    pub full_lattice_enumeration: bool,
    pub as_stated_higher_rank: bool,
}

impl Config {
    pub fn from_args(g: &GlobalArgs) -> Result<Self> {
        let precision = match &g.prec {
            Some(s) => s.parse::<Rat>()?,
            None => Rat::integer(DEFAULT_PRECISION),
        };
        if precision <= Rat::zero() {
            return Err(Error::OutOfRange(format!(
                "precision must be positive, got {precision}"
            )));
        }
        let picard = g.picard.unwrap_or(DEFAULT_PICARD);
        SurfaceSpec::new(SurfaceKind::K3, Some(picard), g.rank)?;
        Ok(Config {
            precision,
            rank: g.rank,
            picard,
            picard_given: g.picard.is_some(),
            format: g.format,
            drop_divisor_term: g.drop_divisor_term,
            full_lattice_enumeration: g.full_lattice_enumeration,
            as_stated_higher_rank: g.as_stated_higher_rank,
        })
    }

    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

/// Parses `args`, runs the command and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return e.exit_code();
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let config = Config::from_args(&cli.global)?;
    let (text, code) = match &cli.command {
        Command::Series { kind, c1, lambda } => (cmd_series(&config, *kind, *c1, *lambda)?, 0),
        Command::Table { kind, c2_max } => (cmd_table(&config, *kind, *c2_max)?, 0),
        Command::Verify { inject_fault } => cmd_verify(&config, *inject_fault)?,
        Command::Census => cmd_census(&config)?,
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Error::OutOfRange(format!("cannot write output: {e}")))?;
    Ok(code)
}

fn build_series(config: &Config, kind: SeriesKind, c1: i64, lambda: u8) -> Result<PuiseuxSeries> {
    let prec = &config.precision;
    let (r, rho) = (config.rank, config.picard);
    match kind {
        SeriesKind::P2Vb | SeriesKind::P222Vb => {
            let surface = if kind == SeriesKind::P2Vb {
                SurfaceKind::P2
            } else {
                SurfaceKind::P222
            };
            let picard = config.picard_given.then_some(rho);
            SurfaceSpec::new(surface, picard, r)?;
            if r != 2 {
                return Err(Error::OutOfRange(format!(
                    "{surface:?} series are rank 2 only, got {r}"
                )));
            }
            match kind {
                SeriesKind::P2Vb => z_vb_p2(c1, prec, config.drop_divisor_term),
                _ => z_vb_p222(c1, lambda, prec, config.drop_divisor_term),
            }
        }
        SeriesKind::K3Su => z_k3_trivial_gerbe(r, prec),
        SeriesKind::K3Surzr => z_k3_surzr(r, rho, prec),
        SeriesKind::K3Prediction if r == 2 => z_k3_vw_prediction(prec),
        SeriesKind::K3Prediction => z_k3_complex_structure_free(r, prec),
        SeriesKind::K3Ess => z_ess_trivial(r, prec),
        SeriesKind::K3Opt => z_optimal(r, prec),
    }
}

pub fn cmd_series(config: &Config, kind: SeriesKind, c1: i64, lambda: u8) -> Result<String> {
    let s = build_series(config, kind, c1, lambda)?;
    Ok(match config.format_or(Format::Json) {
        Format::Json => s.to_json() + "\n",
        Format::Csv => s.to_csv(),
        Format::Text => series_text(&s),
    })
}

fn series_text(s: &PuiseuxSeries) -> String {
    let (var, mut out) = match s.variable() {
        crate::qseries::Variable::Q => ("q", String::new()),
        crate::qseries::Variable::QInverse => ("u", String::from("# u = q^-1\n")),
    };
    for (e, c) in s.terms() {
        out.push_str(&format!("({}) {var}^({e})\n", coeff_text(c)));
    }
    out.push_str(&format!("+ O({var}^({}))\n", s.trunc_order()));
    out
}

fn coeff_text(c: &CycNum) -> String {
    match c.is_rational() {
        Some(r) => r.to_string(),
        None => c
            .coords()
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| format!("{x}*z{}^{i}", c.order()))
            .collect::<Vec<_>>()
            .join(" + "),
    }
}

pub fn cmd_table(config: &Config, kind: TableKind, c2_max: i64) -> Result<String> {
    let t: VWTable = match kind {
        TableKind::Ess => {
            vw_essentially_trivial(config.rank, c2_max, config.as_stated_higher_rank)?
        }
        TableKind::Opt => vw_optimal(config.rank, c2_max)?,
    };
    Ok(match config.format_or(Format::Csv) {
        Format::Json => t.to_json() + "\n",
        Format::Csv => t.to_csv(),
        Format::Text => {
            let mut s = String::new();
            for row in &t.rows {
                let mark = if row.provisional {
                    "  (provisional)"
                } else {
                    ""
                };
                s.push_str(&format!(
                    "r={} {} c2={} vw={}{mark}\n",
                    row.rank,
                    row.det_tag.as_str(),
                    row.c2,
                    row.value
                ));
            }
            s
        }
    })
}

fn report(checks: &[CheckResult], format: Format) -> String {
    match format {
        Format::Json | Format::Csv => {
            serde_json::to_string_pretty(checks).expect("report serializes") + "\n"
        }
        Format::Text => {
            let mut s: String = checks.iter().map(|c| format!("{c}\n")).collect();
            let passed = checks.iter().filter(|c| c.passed()).count();
            s.push_str(&format!("{passed}/{} checks passed\n", checks.len()));
            s
        }
    }
}

pub fn cmd_verify(config: &Config, inject_fault: bool) -> Result<(String, i32)> {
    let checks = run_verification(config, inject_fault);
    let code = if checks.iter().all(|c| c.passed()) {
        0
    } else {
        1
    };
    Ok((report(&checks, config.format_or(Format::Json)), code))
}

#[derive(Debug, Serialize)]
struct GaussCheck {
    m: i64,
    value: String,
    expected: String,
    pass: bool,
}

#[derive(Debug, Serialize)]
struct FullEnumeration {
    n_zero: u64,
    n_even: u64,
    n_odd: u64,
    agrees: bool,
}

#[derive(Debug, Serialize)]
struct CensusReport {
    r: u32,
    rho: u32,
    n_trivial: u128,
    n_ess_nontrivial: u128,
    n_optimal: u128,
    n_zero: u128,
    n_even: Option<u128>,
    n_odd: Option<u128>,
    gauss_checks: Vec<GaussCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    full_enumeration: Option<FullEnumeration>,
}

pub fn cmd_census(config: &Config) -> Result<(String, i32)> {
    let (r, rho) = (config.rank, config.picard);
    let c = gerbe_census(rho, r)?;
    let mut ok = true;

    let mut gauss_checks = Vec::new();
    for m in 1..r as i64 {
        let value = gauss_sum(m, r)?;
        let eps = if r == 2 {
            1
        } else {
            crate::arithmetics::legendre_epsilon(m, r)?
        };
        let expected = Rat::integer(eps as i64).pow(22) * Rat::integer(r as i64).pow(11);
        let pass = value.is_rational().as_ref() == Some(&expected);
        ok &= pass;
        gauss_checks.push(GaussCheck {
            m,
            value: coeff_text(&value),
            expected: expected.to_string(),
            pass,
        });
    }

    let full_enumeration = if config.full_lattice_enumeration {
        if r != 2 {
            return Err(Error::OutOfRange(
                "full enumeration counts rank-2 classes only".into(),
            ));
        }
        let (z, e, o) = k3_class_census_full();
        let agrees = (z, e, o) == k3_class_census_bruteforce()
            && Some(e as u128) == c.n_even
            && Some(o as u128) == c.n_odd;
        ok &= agrees;
        Some(FullEnumeration {
            n_zero: z,
            n_even: e,
            n_odd: o,
            agrees,
        })
    } else {
        None
    };

    let rep = CensusReport {
        r,
        rho,
        n_trivial: c.n_trivial,
        n_ess_nontrivial: c.n_ess_nontrivial,
        n_optimal: c.n_optimal,
        n_zero: c.n_zero_class,
        n_even: c.n_even,
        n_odd: c.n_odd,
        gauss_checks,
        full_enumeration,
    };
    let text = match config.format_or(Format::Json) {
        Format::Json | Format::Csv => {
            serde_json::to_string_pretty(&rep).expect("census serializes") + "\n"
        }
        Format::Text => census_text(&rep),
    };
    Ok((text, if ok { 0 } else { 1 }))
}

fn census_text(rep: &CensusReport) -> String {
    let opt = |v: &Option<u128>| v.map_or_else(|| "-".to_string(), |n| n.to_string());
    let mut s = format!(
        "r = {}\nrho = {}\nn_trivial = {}\nn_ess_nontrivial = {}\nn_optimal = {}\nn_zero = {}\nn_even = {}\nn_odd = {}\n",
        rep.r,
        rep.rho,
        rep.n_trivial,
        rep.n_ess_nontrivial,
        rep.n_optimal,
        rep.n_zero,
        opt(&rep.n_even),
        opt(&rep.n_odd)
    );
    for g in &rep.gauss_checks {
        let status = if g.pass { "pass" } else { "fail" };
        s.push_str(&format!(
            "gauss m={}: {} (expected {}) {status}\n",
            g.m, g.value, g.expected
        ));
    }
    if let Some(f) = &rep.full_enumeration {
        s.push_str(&format!(
            "full enumeration: zero {} even {} odd {} agrees {}\n",
            f.n_zero, f.n_even, f.n_odd, f.agrees
        ));
    }
    s
}
