//! Command-line front end: spectrum, density, expectation-value, thermal,
//! superstatistics, reference-table and approximant subcommands.
//!
//! Exit codes: 0 success, 2 validation/domain/usage errors, 3 numerical
//! non-convergence.

mod config;
mod emit;
mod report;
mod tables;

pub use config::{parse_config_str, ConfigError, CONFIG_KEYS};
pub use emit::{emit_curve, format_value, NumericTable, OutputFormat};
pub use report::{build_report, ComparisonReport, ComparisonRow, RowFlag, MATCH_REL_TOL};
pub use tables::{
    ingest_reference_tables, momentum_pair_statistics, parse_table_csv, MisprintKey,
    ReferenceRow, ReferenceTable, TABLE_ALPHAS, TABLE_B, TABLE_V1, TABLE_V2,
};

use crate::error::{Error, Result};
use crate::model::{validate, PotentialKind, PotentialParams, ValidatedParams};
use crate::nu::{self, QuantumNumbers};
use crate::superstat::{self, SuperstatParams, UpperMode};
use crate::wavefun::Wavefunction;
use crate::{hft, model, thermo};
use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};

const CONFIG_ENV: &str = "QSOLVE_CONFIG";

#[derive(Parser)]
#[command(
    name = "qsolve",
    version,
    about = "Bound states, expectation values and thermal properties of the screened Coulomb-hyperbolic potential family",
    long_about = "Parameter precedence: built-in defaults (mu = hbar = 1, couplings 0), then the \
config file (flat 'key = value' lines; --config or the QSOLVE_CONFIG environment variable), \
then command-line flags."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ParamArgs {
    /// Config file path (flat key = value); overrides QSOLVE_CONFIG.
    #[arg(long, global = false)]
    config: Option<PathBuf>,
    /// Potential family member: cpsehp, hellmann, yukawa,
    /// screened-hyperbolic or coulomb.
    #[arg(long)]
    kind: Option<String>,
    /// Coulomb depth v1.
    #[arg(long, allow_hyphen_values = true)]
    v1: Option<f64>,
    /// Inverse-square depth v2.
    #[arg(long, allow_hyphen_values = true)]
    v2: Option<f64>,
    /// Screened-Coulomb strength B (negative for an attractive screened
    /// term).
    #[arg(long = "B", allow_hyphen_values = true)]
    b: Option<f64>,
    /// Screening parameter alpha.
    #[arg(long)]
    alpha: Option<f64>,
    /// Reduced mass (default 1).
    #[arg(long)]
    mu: Option<f64>,
    /// Planck constant (default 1).
    #[arg(long)]
    hbar: Option<f64>,
}

impl ParamArgs {
    fn resolve(&self) -> Result<ValidatedParams> {
        let mut raw = PotentialParams::cpsehp(0.0, 0.0, 0.0, 0.0);
        // config file first, flags second
        let path = self
            .config
            .clone()
            .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
        if let Some(path) = path {
            let text = std::fs::read_to_string(&path)?;
            let pairs = parse_config_str(&text).map_err(|e| {
                Error::Validation(vec![crate::error::Violation {
                    field: "config",
                    message: format!("{}: {e}", path.display()),
                }])
            })?;
            for (key, value) in pairs {
                apply_key(&mut raw, &key, &value)?;
            }
        }
        if let Some(kind) = &self.kind {
            apply_key(&mut raw, "kind", kind)?;
        }
        let assign = [
            ("v1", self.v1),
            ("v2", self.v2),
            ("B", self.b),
            ("alpha", self.alpha),
            ("mu", self.mu),
            ("hbar", self.hbar),
        ];
        for (key, value) in assign {
            if let Some(v) = value {
                apply_key(&mut raw, key, &v.to_string())?;
            }
        }
        validate(raw)
    }
}

fn apply_key(raw: &mut PotentialParams, key: &str, value: &str) -> Result<()> {
    let bad = |msg: String| {
        Error::Validation(vec![crate::error::Violation {
            field: "config",
            message: msg,
        }])
    };
    if key == "kind" {
        raw.kind = value
            .parse::<PotentialKind>()
            .map_err(|e| bad(e.to_string()))?;
        return Ok(());
    }
    let number: f64 = value
        .parse()
        .map_err(|_| bad(format!("{key}: not a number: '{value}'")))?;
    match key {
        "v1" => raw.v1 = number,
        "v2" => raw.v2 = number,
        "B" => raw.b = number,
        "alpha" => raw.alpha = number,
        "mu" => raw.mu = number,
        "hbar" => raw.hbar = number,
        other => return Err(bad(format!("unknown key '{other}'"))),
    }
    Ok(())
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form level energies for every channel up to --l-max.
    Spectrum {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 5)]
        n_max: u32,
        #[arg(long, default_value_t = 3)]
        l_max: u32,
        #[arg(long, default_value = "csv")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Probability density |R(r)|^2 of one state on an r grid.
    Density {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        l: u32,
        #[arg(long, default_value_t = 0.0)]
        r_min: f64,
        /// Defaults to the state's decay length when omitted.
        #[arg(long)]
        r_max: Option<f64>,
        #[arg(long, default_value_t = 400)]
        steps: usize,
        #[arg(long, default_value = "csv")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Expectation values of one state via the parameter-derivative route.
    Expval {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        l: u32,
        #[arg(long, default_value = "csv")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Partition function and thermal properties over a beta grid.
    Thermo {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 0)]
        l: u32,
        #[arg(long, allow_hyphen_values = true)]
        beta_min: f64,
        #[arg(long, allow_hyphen_values = true)]
        beta_max: f64,
        #[arg(long, default_value_t = 200)]
        steps: usize,
        #[arg(long, default_value = "csv")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Deformed-statistics partition function and properties.
    Superstat {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 0)]
        l: u32,
        /// Deformation parameter.
        #[arg(long, default_value_t = 0.0)]
        q: f64,
        #[arg(long, allow_hyphen_values = true)]
        beta_min: f64,
        #[arg(long, allow_hyphen_values = true)]
        beta_max: f64,
        #[arg(long, default_value_t = 200)]
        steps: usize,
        /// band (default) or semi-infinite.
        #[arg(long, default_value = "band")]
        mode: String,
        #[arg(long, default_value = "csv")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the published reference tables against this implementation.
    Tables {
        /// 1..5 or 'all'.
        #[arg(long, default_value = "all")]
        table: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a parameter set and report per-channel criticality.
    Validate {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 3)]
        l_max: u32,
    },
    /// The screened stand-ins for 1/r and 1/r^2 against the exact values.
    Pekeris {
        /// Screening parameter; repeat the flag for several curves.
        #[arg(long, required = true)]
        alpha: Vec<f64>,
        #[arg(long, default_value_t = 0.1)]
        r_min: f64,
        #[arg(long, default_value_t = 100.0)]
        r_max: f64,
        #[arg(long, default_value_t = 400)]
        steps: usize,
        #[arg(long, default_value = "csv")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Entry point for the binary; argv excludes the program name.
pub fn run<I: IntoIterator<Item = String>>(argv: I) -> i32 {
    let args = std::iter::once("qsolve".to_string()).chain(argv);
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints --help/--version through the same path
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::NonConvergence(_) | Error::Numerical(_) => 3,
                _ => 2,
            }
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Spectrum {
            params,
            n_max,
            l_max,
            format,
            out,
        } => {
            let p = params.resolve()?;
            let mut table = NumericTable::new(&["n", "l", "energy"]).with_integer_prefix(2);
            for l in 0..=l_max {
                for state in nu::enumerate_bound_states(&p, l, n_max)? {
                    table.push(vec![
                        state.qn.n as f64,
                        state.qn.l as f64,
                        state.energy,
                    ]);
                }
            }
            deliver(&table, format, out.as_deref())
        }
        Command::Density {
            params,
            n,
            l,
            r_min,
            r_max,
            steps,
            format,
            out,
        } => {
            let p = params.resolve()?;
            let wf = Wavefunction::new(&p, QuantumNumbers::new(n, l))?;
            let hi = r_max.unwrap_or_else(|| wf.tail_cutoff());
            if steps < 2 {
                return Err(Error::Grid("need at least 2 grid points".into()));
            }
            let grid: Vec<f64> = (0..steps)
                .map(|i| r_min + (hi - r_min) * i as f64 / (steps - 1) as f64)
                .collect();
            let curve = wf.density_profile(&grid)?;
            if wf.spec().renormalized {
                eprintln!(
                    "note: printed normalization replaced by the quadrature value \
                     (printed {:.6e}, used {:.6e})",
                    wf.spec().printed_norm,
                    wf.spec().norm
                );
            }
            match out {
                Some(path) => emit_curve(&curve, &path, format),
                None => {
                    let mut t = NumericTable::new(&["r", "density"]);
                    for &(x, y) in &curve.points {
                        t.push(vec![x, y]);
                    }
                    print!("{}", t.render(format));
                    Ok(())
                }
            }
        }
        Command::Expval {
            params,
            n,
            l,
            format,
            out,
        } => {
            let p = params.resolve()?;
            let qn = QuantumNumbers::new(n, l);
            let mut table = NumericTable::new(&[
                "n",
                "l",
                "energy",
                "inv_r2",
                "screened_inv_r",
                "inv_r",
                "kinetic",
                "p2",
            ])
            .with_integer_prefix(2);
            table.push(vec![
                n as f64,
                l as f64,
                nu::energy(&p, qn)?,
                hft::expval_inv_r2(&p, qn)?,
                hft::expval_screened_inv_r(&p, qn)?,
                hft::expval_inv_r(&p, qn)?,
                hft::expval_t(&p, qn)?,
                hft::expval_p2(&p, qn)?,
            ]);
            deliver(&table, format, out.as_deref())
        }
        Command::Thermo {
            params,
            l,
            beta_min,
            beta_max,
            steps,
            format,
            out,
        } => {
            let p = params.resolve()?;
            let red = nu::thermo_reduction(&p, l)?;
            let grid = beta_grid(beta_min, beta_max, steps)?;
            let points = thermo::properties(&red, &grid)?;
            let mut table = NumericTable::new(&["beta", "Z", "U", "S", "F", "C"]);
            for pt in points {
                table.push(vec![pt.beta_t, pt.z, pt.u, pt.s, pt.f, pt.c]);
            }
            deliver(&table, format, out.as_deref())
        }
        Command::Superstat {
            params,
            l,
            q,
            beta_min,
            beta_max,
            steps,
            mode,
            format,
            out,
        } => {
            let p = params.resolve()?;
            let red = nu::thermo_reduction(&p, l)?;
            let upper_mode = match mode.as_str() {
                "band" => UpperMode::Band,
                "semi-infinite" | "semi_infinite" => UpperMode::SemiInfinite,
                other => {
                    return Err(Error::Domain(format!(
                        "unknown mode '{other}' (expected band or semi-infinite)"
                    )))
                }
            };
            let grid: Vec<SuperstatParams> = beta_grid(beta_min, beta_max, steps)?
                .into_iter()
                .map(|beta_t| SuperstatParams {
                    q,
                    beta_t,
                    upper_mode,
                })
                .collect();
            let points = superstat::superstat_properties(&red, &grid)?;
            let mut table = NumericTable::new(&["beta", "Zs", "Us", "Ss", "Fs", "Cs"]);
            for pt in points {
                table.push(vec![pt.beta_t, pt.z, pt.u, pt.s, pt.f, pt.c]);
            }
            deliver(&table, format, out.as_deref())
        }
        Command::Tables { table, out } => run_tables(&table, out.as_deref()),
        Command::Validate { params, l_max } => {
            let p = params.resolve()?;
            println!("parameters valid: kind = {}", p.kind());
            println!(
                "v1 = {}, v2 = {}, B = {}, alpha = {}, mu = {}, hbar = {}",
                p.v1(),
                p.v2(),
                p.b(),
                p.alpha(),
                p.mu(),
                p.hbar()
            );
            for l in 0..=l_max {
                let c = p.criticality(l);
                println!(
                    "l = {l}: discriminant = {:.12e} -> {}",
                    c.discriminant,
                    if c.supercritical {
                        "supercritical (no real level formula)"
                    } else {
                        "subcritical"
                    }
                );
            }
            Ok(())
        }
        Command::Pekeris {
            alpha,
            r_min,
            r_max,
            steps,
            format,
            out,
        } => {
            if !(r_min > 0.0) || !(r_max > r_min) || steps < 2 {
                return Err(Error::Grid(
                    "need 0 < r-min < r-max and at least 2 steps".into(),
                ));
            }
            let mut columns = vec!["r".to_string(), "inv_r".to_string(), "inv_r2".to_string()];
            for a in &alpha {
                columns.push(format!("approx_inv_r_alpha_{a}"));
                columns.push(format!("approx_inv_r2_alpha_{a}"));
            }
            let names: Vec<&str> = columns.iter().map(|s| s.as_str()).collect();
            let mut table = NumericTable::new(&names);
            for i in 0..steps {
                let r = r_min + (r_max - r_min) * i as f64 / (steps - 1) as f64;
                let mut row = vec![r, 1.0 / r, 1.0 / (r * r)];
                for &a in &alpha {
                    row.push(model::pekeris_inverse_r(a, r)?);
                    row.push(model::pekeris_inverse_r2(a, r)?);
                }
                table.push(row);
            }
            deliver(&table, format, out.as_deref())
        }
    }
}

fn beta_grid(beta_min: f64, beta_max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 1 {
        return Err(Error::Grid("need at least one grid point".into()));
    }
    if !(beta_min.is_finite() && beta_max.is_finite()) || beta_min > beta_max {
        return Err(Error::Grid(format!(
            "bad beta range [{beta_min}, {beta_max}]"
        )));
    }
    let grid: Vec<f64> = (0..steps)
        .map(|i| {
            if steps == 1 {
                beta_min
            } else {
                beta_min + (beta_max - beta_min) * i as f64 / (steps - 1) as f64
            }
        })
        .collect();
    if grid.iter().any(|b| b.abs() < 1e-12) {
        return Err(Error::Domain(
            "the grid crosses beta = 0, where F is undefined; split the range".into(),
        ));
    }
    Ok(grid)
}

fn run_tables(selector: &str, out: Option<&Path>) -> Result<()> {
    let (all_tables, registry) = ingest_reference_tables()?;
    let wanted: Vec<u8> = match selector {
        "all" => vec![1, 2, 3, 4, 5],
        s => vec![s.parse::<u8>().ok().filter(|t| (1..=5).contains(t)).ok_or_else(
            || Error::Domain(format!("--table takes 1..5 or 'all', got '{s}'")),
        )?],
    };
    let mut csv = String::new();
    for (i, id) in wanted.iter().enumerate() {
        let report = build_report(&all_tables[(*id - 1) as usize], &registry)?;
        let text = report.to_csv();
        if i == 0 {
            csv.push_str(&text);
        } else {
            // keep a single header block when concatenating tables
            csv.extend(text.lines().skip(2).map(|l| format!("{l}\n")));
        }
        println!(
            "table {id}: {} match, {} mismatch, {} domain_error, {} suspected_misprint",
            report.count(RowFlag::Match),
            report.count(RowFlag::Mismatch),
            report.count(RowFlag::DomainError),
            report.count(RowFlag::SuspectedMisprint),
        );
    }
    if wanted.len() == 5 {
        let (good, total) = momentum_pair_statistics(&all_tables[3], &all_tables[4]);
        println!("kinetic/momentum pairing: {good}/{total} entries satisfy |T5 - 2 T4| <= 1e-5");
    }
    match out {
        Some(path) => emit::write_atomic(path, &csv),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

fn deliver(table: &NumericTable, format: OutputFormat, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => emit::write_atomic(path, &table.render(format)),
        None => {
            print!("{}", table.render(format));
            Ok(())
        }
    }
}
