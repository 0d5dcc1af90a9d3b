//! Command line interface for the stratification atlas.
//!
//! Exit codes: 0 success, 1 validation/computation failure, 2 usage error.

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use strata_atlas::atlas::{build_atlas, AtlasConfig, StrataAtlas};
use strata_atlas::document::{AtlasDocument, DatumFile};
use strata_atlas::emit;
use strata_atlas::preset::{self, OrthogonalForm, PresetData};
use strata_atlas::{Caps, Error};

#[derive(Parser)]
#[command(
    name = "strata-atlas",
    version,
    about = "Newton and Ekedahl-Oort stratification atlas for unramified group data",
    after_help = "The STRAT_ATLAS_CAP environment variable overrides the enumeration caps."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Newton classes: B(G,mu) with dimensions, defects and cover relations
    Newton(RunArgs),
    /// Ekedahl-Oort strata: the parabolic quotient with the closure order
    Eo(RunArgs),
    /// Central-leaf dimensions per Newton class
    Leaves(RunArgs),
    /// Fully Hodge-Newton decomposable? Flag report
    HnCheck(RunArgs),
    /// The full atlas: both posets, incidence, flags
    Atlas(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Built-in configuration (quaternionic | orthogonal | siegel)
    #[arg(long, value_enum)]
    preset: Option<PresetName>,

    /// Quaternionic place as n:a (degree, split embeddings); repeatable
    #[arg(long = "place", value_name = "N:A")]
    places: Vec<String>,

    /// Orthogonal parameter: the quadratic space has dimension n + 2
    #[arg(long)]
    n: Option<usize>,

    /// Orthogonal form (split | nonsplit)
    #[arg(long, value_enum)]
    form: Option<FormName>,

    /// Siegel genus
    #[arg(long)]
    g: Option<usize>,

    /// Custom datum file (JSON) instead of a preset
    #[arg(long, value_name = "FILE", conflicts_with = "preset")]
    datum: Option<String>,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Output path (stdout when omitted)
    #[arg(long, value_name = "PATH")]
    out: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PresetName {
    Quaternionic,
    Orthogonal,
    Siegel,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormName {
    Split,
    Nonsplit,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, kind) = match &cli.command {
        Command::Newton(a) => (a, Kind::Newton),
        Command::Eo(a) => (a, Kind::Eo),
        Command::Leaves(a) => (a, Kind::Leaves),
        Command::HnCheck(a) => (a, Kind::HnCheck),
        Command::Atlas(a) => (a, Kind::Atlas),
    };
    match run(args, kind) {
        Ok(()) => ExitCode::SUCCESS,
        Err(RunError::Usage(msg)) => {
            eprintln!("usage: {msg}");
            ExitCode::from(2)
        }
        Err(RunError::Failed(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(RunError::Io(e)) => {
            eprintln!("error: io: {e}");
            ExitCode::from(1)
        }
    }
}

#[derive(Clone, Copy)]
enum Kind {
    Newton,
    Eo,
    Leaves,
    HnCheck,
    Atlas,
}

enum RunError {
    Usage(String),
    Failed(Error),
    Io(std::io::Error),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Failed(e)
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e)
    }
}

fn parse_place(s: &str) -> Result<(usize, usize), RunError> {
    let (n, a) = s
        .split_once(':')
        .ok_or_else(|| RunError::Usage(format!("--place wants N:A, got {s:?}")))?;
    let n = n
        .trim()
        .parse()
        .map_err(|_| RunError::Usage(format!("bad place degree in {s:?}")))?;
    let a = a
        .trim()
        .parse()
        .map_err(|_| RunError::Usage(format!("bad split-embedding count in {s:?}")))?;
    Ok((n, a))
}

fn build(args: &RunArgs) -> Result<StrataAtlas, RunError> {
    let caps = Caps::from_env();
    if let Some(path) = &args.datum {
        let text = fs::read_to_string(path)?;
        let file = DatumFile::from_json(&text)?;
        let (datum, mu) = file.instantiate()?;
        let config = AtlasConfig {
            descriptor: format!("custom[{path}]"),
            avatar: None,
            coxeter_preset: false,
        };
        return Ok(build_atlas(&datum, &mu, &config, &caps)?);
    }
    let preset: PresetData = match args.preset {
        None => {
            return Err(RunError::Usage(
                "either --preset or --datum is required".into(),
            ))
        }
        Some(PresetName::Quaternionic) => {
            if args.places.is_empty() {
                return Err(RunError::Usage(
                    "quaternionic preset wants at least one --place N:A".into(),
                ));
            }
            let places = args
                .places
                .iter()
                .map(|s| parse_place(s))
                .collect::<Result<Vec<_>, _>>()?;
            preset::quaternionic(&places)?
        }
        Some(PresetName::Orthogonal) => {
            let n = args
                .n
                .ok_or_else(|| RunError::Usage("orthogonal preset wants --n".into()))?;
            let form = match args.form {
                Some(FormName::Nonsplit) => OrthogonalForm::Nonsplit,
                _ => OrthogonalForm::Split,
            };
            preset::orthogonal(n, form)?
        }
        Some(PresetName::Siegel) => {
            let g = args
                .g
                .ok_or_else(|| RunError::Usage("siegel preset wants --g".into()))?;
            preset::siegel(g)?
        }
    };
    Ok(preset.build(&caps)?)
}

fn run(args: &RunArgs, kind: Kind) -> Result<(), RunError> {
    let atlas = build(args)?;
    let doc = AtlasDocument::from_atlas(&atlas);
    let output = match (kind, args.format) {
        (Kind::Atlas, Format::Text) => emit::emit_text(&atlas),
        (Kind::Atlas, Format::Json) => doc.to_json(),
        (Kind::Atlas, Format::Dot) => emit::emit_atlas_dot(&atlas),
        (Kind::Newton, Format::Text) => {
            section(&emit::emit_text(&atlas), "newton classes", "\neo strata")
        }
        (Kind::Newton, Format::Json) => {
            let sub = serde_json::json!({
                "provenance": serde_json::to_value(&doc.provenance).unwrap(),
                "newton": serde_json::to_value(&doc.newton).unwrap(),
                "newton_covers": serde_json::to_value(&doc.newton_covers).unwrap(),
            });
            serde_json::to_string_pretty(&sub).unwrap()
        }
        (Kind::Newton, Format::Dot) => emit::emit_newton_dot(&atlas),
        (Kind::Eo, Format::Text) => section(&emit::emit_text(&atlas), "eo strata", "\nwarning"),
        (Kind::Eo, Format::Json) => {
            let sub = serde_json::json!({
                "provenance": serde_json::to_value(&doc.provenance).unwrap(),
                "eo": serde_json::to_value(&doc.eo).unwrap(),
                "eo_covers": serde_json::to_value(&doc.eo_covers).unwrap(),
            });
            serde_json::to_string_pretty(&sub).unwrap()
        }
        (Kind::Eo, Format::Dot) => emit::emit_eo_dot(&atlas),
        (Kind::Leaves, Format::Text) => emit::emit_leaves_text(&atlas),
        (Kind::Leaves, Format::Json) => {
            let leaves: Vec<_> = doc
                .newton
                .iter()
                .map(|c| {
                    serde_json::json!({
                        "label": c.label,
                        "nu": c.nu,
                        "leaf_dim": c.leaf_dim,
                        "stratum_dim": c.dim,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&serde_json::json!({
                "provenance": serde_json::to_value(&doc.provenance).unwrap(),
                "leaves": leaves,
            }))
            .unwrap()
        }
        (Kind::Leaves, Format::Dot) => emit::emit_newton_dot(&atlas),
        (Kind::HnCheck, Format::Text) => format!("fully_hn: {}\n", atlas.fully_hn),
        (Kind::HnCheck, Format::Json) => serde_json::to_string_pretty(&serde_json::json!({
            "provenance": serde_json::to_value(&doc.provenance).unwrap(),
            "fully_hn": atlas.fully_hn,
            "incidence_total": atlas.incidence_total,
        }))
        .unwrap(),
        (Kind::HnCheck, Format::Dot) => {
            return Err(RunError::Usage("hn-check has no dot output".into()))
        }
    };
    match &args.out {
        Some(path) => fs::write(path, output)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(output.as_bytes())?;
        }
    }
    Ok(())
}

/// Extracts a text-report section between two markers (end marker optional).
fn section(full: &str, start: &str, end: &str) -> String {
    let s = full.find(start).unwrap_or(0);
    let e = full[s..].find(end).map(|e| s + e).unwrap_or(full.len());
    full[s..e].trim_end().to_string() + "\n"
}
