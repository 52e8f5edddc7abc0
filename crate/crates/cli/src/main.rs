use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use reflection_lattice::cluster::{isomorphism_check, ClusterSystem};
use reflection_lattice::complexes::{build_ex, build_x, build_x_sigma};
use reflection_lattice::rootsystem::Family;
use reflection_lattice::verify::{run_suite, SuiteConfig};
use reflection_lattice::{export, parse_type, Error, RootSystem};

#[derive(Parser, Debug)]
#[command(name = "reflat", version, about = "Noncrossing-partition lattices and cluster complexes of finite reflection groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Steinberg ρ/μ listing and the matrix [μ_i·ρ_j]
    Tables(Common),
    /// Export X(γ), X(σ) (with --sigma) or EX(γ) (with --ex)
    Complex {
        #[command(flatten)]
        common: Common,
        /// Word of positive root indices w_1,…,w_k naming σ = R(ρ_{w_k})⋯R(ρ_{w_1})
        #[arg(long, value_delimiter = ',')]
        sigma: Option<Vec<usize>>,
        /// Use the extended complex EX(γ)
        #[arg(long, conflicts_with = "sigma")]
        ex: bool,
    },
    /// Run the invariant and lattice suite; exit status 1 on any failure
    Verify {
        #[command(flatten)]
        common: Common,
        /// Seed for the sampled checks
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Also compare EX(γ) with GA(W) for non-crystallographic types
        #[arg(long)]
        extension: bool,
        /// Add wall_time_ms to the report (breaks byte-identical output)
        #[arg(long)]
        timing: bool,
    },
    /// Compare EX(γ) with the generalised associahedron, or dump compatibility degrees (csv)
    Associahedron {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        extension: bool,
    },
    /// The interval [I, γ] with lengths and cover relations
    Interval(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// Type symbol: A1.., B2.., D4.., E6-E8, F4, G2, H3, H4, I2(m)
    #[arg(value_name = "TYPE")]
    type_symbol: String,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Allow E7 and E8
    #[arg(long)]
    big: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Dot,
    Off,
    Text,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.to_possible_value().expect("no skipped variants");
        f.write_str(name.get_name())
    }
}

/// Bad input; reported with exit status 2.
#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

enum Outcome {
    Pass,
    Fail,
}

fn load(common: &Common) -> anyhow::Result<RootSystem> {
    let datum = parse_type(&common.type_symbol).map_err(|e| usage(e.to_string()))?;
    if let Some(label) = datum.label() {
        if label.family == Family::E && label.rank >= 7 && !common.big {
            return Err(usage(format!(
                "{label} is gated: its interval has {} elements and a full run takes a long time; pass --big to proceed",
                if label.rank == 7 { 4160 } else { 25080 }
            )));
        }
    }
    Ok(RootSystem::new(datum)?)
}

fn pick(format: Option<Format>, default: Format, allowed: &[Format]) -> anyhow::Result<Format> {
    let f = format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        let names: Vec<String> = allowed.iter().map(Format::to_string).collect();
        Err(usage(format!("format {f} is not available here; choose one of {}", names.join(", "))))
    }
}

fn emit(common: &Common, text: &str) -> anyhow::Result<()> {
    match &common.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Tables(common) => {
            let sys = load(&common)?;
            let f = pick(common.format, Format::Text, &[Format::Text, Format::Csv, Format::Json])?;
            let t = export::tables(&sys);
            let text = match f {
                Format::Csv => export::tables_csv(&t),
                Format::Json => json(&t)?,
                _ => export::tables_text(&t),
            };
            emit(&common, &text)?;
        }
        Command::Complex { common, sigma, ex } => {
            let sys = load(&common)?;
            let f = pick(common.format, Format::Json, &[Format::Json, Format::Dot, Format::Off])?;
            let (c, kind) = match (&sigma, ex) {
                (_, true) => (build_ex(&sys), "EX".to_string()),
                (Some(word), false) => {
                    let s = sys.word_product(word).map_err(|e| usage(e.to_string()))?;
                    let c = build_x_sigma(&sys, &s).map_err(|e| match e {
                        Error::NotBelowGamma(r) => usage(format!("sigma is not below gamma: {r}")),
                        other => other.into(),
                    })?;
                    let name = word.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
                    (c, format!("X(sigma={name})"))
                }
                (None, false) => (build_x(&sys), "X".to_string()),
            };
            let text = match f {
                Format::Dot => export::complex_dot(&c, if ex { "EX" } else { "X" }),
                Format::Off => export::complex_off(&sys, &c).map_err(|e| usage(e.to_string()))?,
                _ => json(&export::complex(&sys, &c, &kind))?,
            };
            emit(&common, &text)?;
        }
        Command::Verify {
            common,
            seed,
            extension,
            timing,
        } => {
            let sys = load(&common)?;
            let f = pick(common.format, Format::Json, &[Format::Json, Format::Text])?;
            let start = Instant::now();
            let config = SuiteConfig {
                seed,
                extension,
                ..SuiteConfig::default()
            };
            let mut report = run_suite(&sys, &config)?;
            if timing {
                report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
            }
            let text = match f {
                Format::Text => {
                    let mut out = format!(
                        "{} {}: {} elements, {} pairs\n",
                        report.type_symbol,
                        if report.passed { "pass" } else { "FAIL" },
                        report.elements,
                        report.pairs_checked
                    );
                    for c in &report.checks {
                        out.push_str(&format!("  {:<20} {} {}\n", c.name, if c.passed { "ok" } else { "FAIL" }, c.detail));
                    }
                    for w in &report.failures {
                        out.push_str(&format!("  witness: {w}\n"));
                    }
                    out
                }
                _ => json(&report)?,
            };
            emit(&common, &text)?;
            return Ok(if report.passed { Outcome::Pass } else { Outcome::Fail });
        }
        Command::Associahedron { common, extension } => {
            let sys = load(&common)?;
            let f = pick(common.format, Format::Json, &[Format::Json, Format::Csv])?;
            let cs = ClusterSystem::new(&sys)?;
            if f == Format::Csv {
                let table = cs.compatibility_table()?;
                emit(&common, &export::compatibility_csv(&cs, &table))?;
                return Ok(Outcome::Pass);
            }
            let ga = cs.build_ga(extension).map_err(|e| match e {
                Error::NonCrystallographic(_) => usage(e.to_string()),
                other => other.into(),
            })?;
            let report = isomorphism_check(&build_ex(&sys), &ga);
            let passed = report.passed();
            let value = serde_json::json!({
                "type": sys.label(),
                "vertices": ga.vertex_count(),
                "facets": ga.facet_count(),
                "passed": passed,
                "report": report,
            });
            emit(&common, &json(&value)?)?;
            return Ok(if passed { Outcome::Pass } else { Outcome::Fail });
        }
        Command::Interval(common) => {
            let sys = load(&common)?;
            let f = pick(common.format, Format::Json, &[Format::Json, Format::Text])?;
            let poset = sys.interval();
            let text = match f {
                Format::Text => {
                    let mut out = format!("{}: {} elements\n", sys.label(), poset.len());
                    for w in 0..poset.len() {
                        let covers: Vec<String> =
                            poset.lower_covers(w).iter().map(|(r, e)| format!("{e} (R{r})")).collect();
                        out.push_str(&format!("{w}\tlength {}\tcovers {}\n", poset.length(w), covers.join(", ")));
                    }
                    out
                }
                _ => json(&export::interval(&sys, &poset))?,
            };
            emit(&common, &text)?;
        }
    }
    Ok(Outcome::Pass)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<Usage>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
