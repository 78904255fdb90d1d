//! Command-line front end.
//!
//! Exit codes: 0 success, 2 validation or precondition failure, 3
//! verification mismatch, 4 budget exceeded. Failures print
//! `{"error": <kind>, "message": <text>}` to stderr.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::codec::{layout_from_dss, simulate_stream, NoiseModel};
use crate::constructions::{
    cyclotomic_dss, cyclotomic_fhs, identity_fhs, paley_dss, qr_difference_set, scan_prime_forms,
    PrimeForm,
};
use crate::dss::{dss_to_fhs, fhs_to_dss, Dss, FrequencyHoppingSequence};
use crate::error::{Error, Result};
use crate::products::{direct_product, fhs_ds_product, fhs_embedding_product};
use crate::tables::{paley_rows, paley_table, table1, to_csv, PALEY_PRIMES};
use crate::verify::{levenshtein_bound, levenshtein_min_redundancy, verify, wang_bound};

#[derive(Debug, Parser)]
#[command(name = "dss", version, about = "Difference systems of sets: construct, verify, simulate")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a family and write it as canonical JSON.
    Construct(ConstructArgs),
    /// Verify a DSS JSON file and print the report.
    Verify { path: PathBuf },
    /// Print a parameter table as CSV.
    Table {
        which: TableKind,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
    },
    /// List the n for which a form a·n²+1 is prime.
    Scan {
        #[arg(long)]
        form: String,
        #[arg(long)]
        n_max: u64,
    },
    /// Lower bounds on the redundancy of a DSS(v, ·, q, ρ).
    Bounds { v: u64, q: u64, rho: u64 },
    /// Run the marker synchronizer over a random stream.
    Simulate {
        path: PathBuf,
        #[arg(long, default_value_t = 1000)]
        blocks: usize,
        /// exact-<t> or iid-<p>
        #[arg(long, default_value = "exact-0")]
        noise: String,
        #[arg(long)]
        seed: u64,
        /// Defaults to max(q, 2).
        #[arg(long)]
        alphabet: Option<u32>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Table1,
    PaleyRow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Cyclotomic,
    QuarticPair,
    SexticTriple,
    SexticPair,
    Paley,
    QrDs,
    IdentityFhs,
    CyclotomicFhs,
    DirectProduct,
    FhsEmbed,
    FhsDs,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    pub method: Method,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub f: Option<u64>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub v: Option<u64>,
    /// First direct-product ingredient, e.g. `paley:7,3` or `file:a.json`.
    #[arg(long)]
    pub a: Option<String>,
    /// Second ingredient (direct-product, fhs-embed).
    #[arg(long)]
    pub b: Option<String>,
    /// Hopping sequence, e.g. `identity-fhs:7` or `cyclotomic-fhs:5,2`.
    #[arg(long)]
    pub x: Option<String>,
    /// Difference set for fhs-ds, e.g. `qr-ds:7`.
    #[arg(long)]
    pub d: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn need<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| Error::InvalidParameter(format!("--{flag} is required")))
}

fn numbers(text: &str, count: usize) -> Result<Vec<u64>> {
    let values = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("'{t}' is not a non-negative integer")))
        })
        .collect::<Result<Vec<_>>>()?;
    if values.len() != count {
        return Err(Error::Parse(format!(
            "expected {count} comma-separated values, got '{text}'"
        )));
    }
    Ok(values)
}

pub fn read_dss(path: &Path) -> Result<Dss> {
    Dss::from_json(&fs::read_to_string(path)?)
}

/// Parses `kind:args` into a family. Hopping-sequence kinds yield their
/// support family.
pub fn parse_dss_spec(spec: &str) -> Result<Dss> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("ingredient '{spec}' is not of the form kind:args")))?;
    match kind {
        "file" => read_dss(Path::new(rest)),
        "paley" => {
            let a = numbers(rest, 2)?;
            paley_dss(a[0], a[1])
        }
        "qr-ds" => qr_difference_set(numbers(rest, 1)?[0]),
        "cyclotomic" => {
            let a = numbers(rest, 3)?;
            cyclotomic_dss(a[0], a[1], a[2])
        }
        "identity-fhs" | "cyclotomic-fhs" => Ok(fhs_to_dss(&parse_fhs_spec(spec)?)),
        _ => match kind.parse::<PrimeForm>() {
            Ok(form) => form.construct(numbers(rest, 1)?[0]),
            Err(_) => Err(Error::Parse(format!("unknown ingredient kind '{kind}'"))),
        },
    }
}

/// Parses `identity-fhs:v`, `cyclotomic-fhs:p,q`, or any family spec that
/// partitions `Z_v`.
pub fn parse_fhs_spec(spec: &str) -> Result<FrequencyHoppingSequence> {
    match spec.split_once(':') {
        Some(("identity-fhs", rest)) => identity_fhs(numbers(rest, 1)?[0]),
        Some(("cyclotomic-fhs", rest)) => {
            let a = numbers(rest, 2)?;
            cyclotomic_fhs(a[0], a[1])
        }
        _ => dss_to_fhs(&parse_dss_spec(spec)?),
    }
}

fn construct(args: &ConstructArgs) -> Result<Dss> {
    let built = match args.method {
        Method::Cyclotomic => cyclotomic_dss(need(args.p, "p")?, need(args.f, "f")?, need(args.q, "q")?)?,
        Method::QuarticPair => PrimeForm::Quartic.construct(need(args.n, "n")?)?,
        Method::SexticTriple => PrimeForm::SexticTriple.construct(need(args.n, "n")?)?,
        Method::SexticPair => PrimeForm::SexticPair.construct(need(args.n, "n")?)?,
        Method::Paley => paley_dss(need(args.p, "p")?, need(args.q, "q")?)?,
        Method::QrDs => qr_difference_set(need(args.p, "p")?)?,
        Method::IdentityFhs => fhs_to_dss(&identity_fhs(need(args.v, "v")?)?),
        Method::CyclotomicFhs => fhs_to_dss(&cyclotomic_fhs(need(args.p, "p")?, need(args.q, "q")?)?),
        Method::DirectProduct => {
            let a = parse_dss_spec(need(args.a.as_deref(), "a")?)?;
            let b = parse_dss_spec(need(args.b.as_deref(), "b")?)?;
            direct_product(&a, &b)?.dss
        }
        Method::FhsEmbed => {
            let x = parse_fhs_spec(need(args.x.as_deref(), "x")?)?;
            let b = parse_dss_spec(need(args.b.as_deref(), "b")?)?;
            fhs_embedding_product(&x, &b)?.dss
        }
        Method::FhsDs => {
            let x = parse_fhs_spec(need(args.x.as_deref(), "x")?)?;
            let d = parse_dss_spec(need(args.d.as_deref(), "d")?)?;
            fhs_ds_product(&x, &d)?.dss
        }
    };
    // every written artifact carries its verified index
    let index = verify(&built)?.index;
    Ok(built.with_claimed_index(Some(index)))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Executes a parsed command, writing results to `out`.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Construct(args) => {
            let d = construct(&args)?;
            match &args.out {
                Some(path) => fs::write(path, d.to_json() + "\n")?,
                None => emit(out, &d.to_json())?,
            }
        }
        Command::Verify { path } => {
            let d = read_dss(&path)?;
            let report = verify(&d)?;
            emit(out, &report.to_json())?;
            if let Some(claimed) = d.claimed_index() {
                if claimed != report.index {
                    return Err(Error::ClaimMismatch {
                        claimed: format!("index {claimed}"),
                        verified: format!("index {}", report.index),
                    });
                }
            }
        }
        Command::Table { which, p, q } => {
            let rows = match (which, p) {
                (TableKind::Table1, _) => table1()?,
                (TableKind::PaleyRow, Some(p)) => paley_rows(p, q)?,
                (TableKind::PaleyRow, None) => {
                    if q.is_some() {
                        return Err(Error::InvalidParameter("--q needs --p".into()));
                    }
                    paley_table(&PALEY_PRIMES)?
                }
            };
            emit(out, &to_csv(&rows))?;
        }
        Command::Scan { form, n_max } => {
            let form: PrimeForm = form.parse()?;
            emit(out, &json!(scan_prime_forms(form, n_max)).to_string())?;
        }
        Command::Bounds { v, q, rho } => {
            let value = json!({
                "v": v,
                "q": q,
                "rho": rho,
                "levenshtein": levenshtein_bound(v, q, rho),
                "levenshtein_min_redundancy": levenshtein_min_redundancy(v, q, rho),
                "wang": wang_bound(v, q, rho),
            });
            emit(out, &value.to_string())?;
        }
        Command::Simulate {
            path,
            blocks,
            noise,
            seed,
            alphabet,
        } => {
            let d = read_dss(&path)?;
            let noise: NoiseModel = noise.parse()?;
            let alphabet = alphabet.unwrap_or((d.q() as u32).max(2));
            let layout = layout_from_dss(&d, alphabet)?;
            emit(out, &simulate_stream(&layout, blocks, noise, seed)?.to_json())?;
        }
    }
    Ok(())
}

pub fn error_json(e: &Error) -> String {
    json!({"error": e.kind(), "message": e.to_string()}).to_string()
}

/// Parses `args`, runs the command, and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(out, "{e}");
            } else {
                let usage = json!({"error": "Usage", "message": e.to_string().trim_end()});
                let _ = writeln!(err, "{usage}");
            }
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{}", error_json(&e));
            e.exit_code()
        }
    }
}
