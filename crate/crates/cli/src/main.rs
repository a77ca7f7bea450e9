use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use equiwitt::catalog::Catalog;
use equiwitt::equiforms::{anisotropic_rep_traced, SearchOrder};
use equiwitt::io;
use equiwitt::meataxe::{MeataxeConfig, DEFAULT_SEED};
use equiwitt::wittgroup::{coordinates, describe_catalog, verify_description};
use equiwitt::{Error, FieldSpec};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "equiwitt",
    version,
    about = "Witt groups of equivariant quadratic forms over GF(2^e)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the simple modules of a group over GF(2^e) with their types.
    Simples {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
    },
    /// Describe WQ(K, G) and check its structure on random forms.
    Witt {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, value_parser = parse_seed, default_value = "0x5717")]
        seed: u64,
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
    },
    /// Coordinates and anisotropic representative of one form.
    Class {
        #[arg(long, value_name = "FILE")]
        form: PathBuf,
        #[arg(long, value_parser = parse_seed, default_value = "0x5717")]
        seed: u64,
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
        /// Print the anisotropic representative and the reduction steps.
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Args)]
struct Target {
    #[arg(long, value_name = "FILE")]
    group: PathBuf,
    /// Extension degree of the field GF(2^e).
    #[arg(long)]
    e: u32,
    /// Modulus polynomial as a bit mask (default: smallest irreducible).
    #[arg(long)]
    modulus: Option<u32>,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let r = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    r.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Field(_) | Error::Group(_) | Error::Rep(_) | Error::Shape(_) => 2,
        Error::Cap(_) => 3,
        Error::Internal(_) => 4,
        Error::NotInvariant { .. } | Error::Degenerate { .. } => 5,
        _ => 1,
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))?;
    fs::write(path, text + "\n")
        .map_err(|e| Error::Precondition(format!("{}: {e}", path.display())))
}

fn load_catalog(target: &Target, seed: u64) -> Result<Arc<Catalog>, Error> {
    let group = Arc::new(io::parse_group(&read(&target.group)?)?);
    let field = FieldSpec::new(target.e, target.modulus)?;
    let cfg = MeataxeConfig {
        seed,
        ..MeataxeConfig::default()
    };
    Ok(Arc::new(Catalog::build(&group, &field, cfg)?))
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Simples { target, json } => {
            let cat = load_catalog(&target, DEFAULT_SEED)?;
            println!("{:>3}  {:>4}  {:<9}  type", "id", "dim", "self-dual");
            for s in cat.simples() {
                let sd = if s.self_dual {
                    "yes".to_string()
                } else {
                    format!("no ({})", s.dual_id)
                };
                println!(
                    "{:>3}  {:>4}  {:<9}  {}",
                    s.id,
                    s.dim(),
                    sd,
                    s.mtype.as_str()
                );
            }
            println!("s = {}", cat.s());
            if let Some(path) = json {
                write_json(
                    &path,
                    &serde_json::to_value(io::catalog_to_json(&cat)).expect("serializable"),
                )?;
            }
            Ok(0)
        }
        Command::Witt {
            target,
            samples,
            seed,
            json,
        } => {
            let cat = load_catalog(&target, seed)?;
            let desc = describe_catalog(&cat)?;
            let report = verify_description(&desc, samples, seed);
            println!("generators: {}", report.generators.join(" "));
            for c in &report.checks {
                let status = if c.pass { "ok" } else { "FAIL" };
                match &c.detail {
                    Some(d) => println!("  {:<12} {:<4} {:>7} ms  {d}", c.name, status, c.ms),
                    None => println!("  {:<12} {:<4} {:>7} ms", c.name, status, c.ms),
                }
            }
            let verdict = if report.passed() { "PASS" } else { "FAIL" };
            println!(
                "rank {} = s({}) + t({}), {verdict}",
                report.rank, report.s, report.t
            );
            if let Some(path) = json {
                write_json(&path, &serde_json::to_value(&report).expect("serializable"))?;
            }
            Ok(if report.passed() { 0 } else { 4 })
        }
        Command::Class {
            form,
            seed,
            json,
            trace,
        } => {
            let data = io::parse_form(&read(&form)?)?;
            let cfg = MeataxeConfig {
                seed,
                ..MeataxeConfig::default()
            };
            let cat = Arc::new(Catalog::build(&data.group, &data.field, cfg)?);
            let label = data.label.clone();
            let x = data.into_form(&cat)?;
            let desc = describe_catalog(&cat)?;
            let coords = coordinates(&desc, &x)?;
            let red = anisotropic_rep_traced(&x, SearchOrder::Forward)?;
            if let Some(l) = &label {
                println!("form: {l}");
            }
            println!("dim {}, generators: {}", x.dim(), desc.labels().join(" "));
            println!("c0 = {:?}, a = {}, d = {:?}", coords.c0, coords.a, coords.d);
            println!(
                "anisotropic representative: dim {} after {} reduction steps",
                red.form.dim(),
                red.steps.len()
            );
            let transcript = io::transcript_to_json(&red);
            if trace {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&transcript).expect("serializable")
                );
            }
            if let Some(path) = json {
                let out = json!({
                    "coords": coords,
                    "generators": desc.labels(),
                    "representative": transcript.result,
                    "steps": transcript.steps,
                });
                write_json(&path, &out)?;
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
