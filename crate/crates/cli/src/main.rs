use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use vol3_cli::{emit_report, run_suite, CliError, Format, RunConfig, Suite, Table, VerificationReport};
use vol3_core::pell::{pell_sequence, select_prime_sequence, PrimeRule};
use vol3_core::systole::systole_report;

/// Default output directory for `report` and relative `--out` paths.
const OUT_DIR_ENV: &str = "VOL3_OUT_DIR";

#[derive(Parser)]
#[command(name = "vol3", version, about = "Exact verification of the vol3 lattice construction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suites and print the report.
    Verify(Common),
    /// Pell solutions t_n + y_n √d.
    Pell(Common),
    /// Primitive prime divisors of S_n and the selected primes.
    Primes(Common),
    /// SU membership, diagram and kernel checks at the selected primes.
    Congruence(Common),
    /// Systole lower bounds at the selected primes.
    Systole(Common),
    /// Write report.json, report.csv and report.md into a directory.
    Report(Common),
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value_t = 3)]
    d: i64,
    #[arg(long, default_value_t = vol3_cli::DEFAULT_DEPTH)]
    depth: u32,
    #[arg(long, default_value = "largest-primitive")]
    rule: String,
    #[arg(long, default_value = "json")]
    format: String,
    #[arg(long, default_value_t = vol3_cli::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = vol3_core::congruence::DEFAULT_CAP)]
    cap: usize,
    /// Comma-separated suite names (default: all).
    #[arg(long, value_delimiter = ',')]
    suites: Vec<String>,
    /// Output file (directory for `report`).
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn config(&self, default_suites: &[Suite]) -> Result<RunConfig, CliError> {
        let prime_rule: PrimeRule = self
            .rule
            .parse()
            .map_err(|_| CliError::Usage(format!("unknown prime rule {:?}", self.rule)))?;
        let suites: BTreeSet<Suite> = if self.suites.is_empty() {
            default_suites.iter().copied().collect()
        } else {
            self.suites.iter().map(|s| s.parse()).collect::<Result<_, _>>()?
        };
        let cfg = RunConfig {
            d: self.d,
            depth: self.depth,
            prime_rule,
            suites,
            format: self.format.parse()?,
            seed: self.seed,
            cap: self.cap,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn resolve_out(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn write_output(out: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(p) => {
            let p = resolve_out(p);
            if let Some(parent) = p.parent().filter(|x| !x.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            fs::write(p, bytes)?;
        }
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn report_failures(report: &VerificationReport) -> u8 {
    let failed: Vec<_> = report.claims.iter().filter(|c| c.required && c.status == vol3_cli::Status::Fail).collect();
    for c in &failed {
        eprintln!("FAIL {}: {}", c.id, c.details);
    }
    u8::from(!failed.is_empty())
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Verify(c) => {
            let cfg = c.config(&Suite::ALL)?;
            let report = run_suite(&cfg)?;
            write_output(c.out.as_deref(), &emit_report(&report, cfg.format))?;
            Ok(report_failures(&report))
        }
        Command::Report(c) => {
            let cfg = c.config(&Suite::ALL)?;
            let report = run_suite(&cfg)?;
            let dir = match &c.out {
                Some(p) => p.clone(),
                None => std::env::var_os(OUT_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| ".".into()),
            };
            fs::create_dir_all(&dir)?;
            for f in [Format::Json, Format::Csv, Format::Markdown] {
                fs::write(dir.join(format!("report.{}", f.extension())), emit_report(&report, f))?;
            }
            for (name, dt) in &report.timing {
                eprintln!("{name}: {:.3}s", dt.as_secs_f64());
            }
            Ok(report_failures(&report))
        }
        Command::Pell(c) => {
            let cfg = c.config(&[Suite::Pell])?;
            let sols = pell_sequence(cfg.d, cfg.depth).map_err(|e| CliError::Runtime(e.to_string()))?;
            let mut t = Table::new(&format!("Pell solutions, d = {}", cfg.d), &["n", "t_n", "y_n", "identity"]);
            let mut ok = true;
            for s in sols {
                ok &= s.satisfies_identity();
                t.push(vec![s.n.to_string(), s.t.to_string(), s.y.to_string(), s.satisfies_identity().to_string()]);
            }
            write_output(c.out.as_deref(), &t.render(cfg.format))?;
            Ok(u8::from(!ok))
        }
        Command::Primes(c) => {
            let cfg = c.config(&[Suite::Primes])?;
            let sel = select_prime_sequence(cfg.d, cfg.depth, cfg.prime_rule)
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            let mut t = Table::new(
                &format!("Primitive prime divisors, d = {}, rule {}", cfg.d, cfg.prime_rule),
                &["n", "S_n", "primitive_set", "p_n"],
            );
            for rec in &sel.records {
                let set: Vec<String> = rec.primitive_primes.iter().map(ToString::to_string).collect();
                let p = sel.rows.iter().find(|r| r.n == rec.n).map(|r| r.p.to_string()).unwrap_or_default();
                t.push(vec![rec.n.to_string(), rec.s_n.to_string(), set.join(" "), p]);
            }
            write_output(c.out.as_deref(), &t.render(cfg.format))?;
            Ok(u8::from(!sel.lucas_pair.holds))
        }
        Command::Congruence(c) => {
            let cfg = c.config(&[Suite::Primes, Suite::Image, Suite::Su, Suite::Kernel])?;
            let report = run_suite(&cfg)?;
            let mut t = Table::new(
                &format!("Congruence checks, d = {}", cfg.d),
                &["n", "p_n", "diagram_ok", "kernel_ok"],
            );
            let opt = |b: Option<bool>| b.map(|x| x.to_string()).unwrap_or_default();
            for r in report.table.iter().filter(|r| r.p_n.is_some()) {
                t.push(vec![r.n.to_string(), r.p_n.clone().unwrap_or_default(), opt(r.diagram_ok), opt(r.kernel_ok)]);
            }
            write_output(c.out.as_deref(), &t.render(cfg.format))?;
            Ok(report_failures(&report))
        }
        Command::Systole(c) => {
            let cfg = c.config(&[Suite::Systole])?;
            let table = systole_report(cfg.d, cfg.depth, cfg.prime_rule).map_err(|e| CliError::Runtime(e.to_string()))?;
            let mut t = Table::new(
                &format!("Systole lower bounds, d = {}, m = {}", cfg.d, table.m),
                &["n", "t_n", "p_n", "bound", "abs_error"],
            );
            for r in &table.rows {
                t.push(vec![
                    r.n.to_string(),
                    r.t.to_string(),
                    r.p.to_string(),
                    format!("{:.12}", r.bound.value),
                    format!("{:.1e}", r.bound.abs_error),
                ]);
            }
            write_output(c.out.as_deref(), &t.render(cfg.format))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("vol3: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
