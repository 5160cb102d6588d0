//! The `reqlint` command line.
//!
//! [`run`] takes the arguments and output streams explicitly so the binary
//! and the tests share one code path.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use reqlint::analytics::{self, AgreementResult, CrossTab, Distribution, Scheme};
use reqlint::catalog::{self, load_catalog, Accuracy, Catalog, CatalogError, IngestReport};
use reqlint::{parse_document, DocConfig, Lexicon, Linter, Report, Resources};

/// Directory holding replacement lexicon files.
pub const RESOURCES_ENV: &str = "REQLINT_RESOURCES";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Linear,
    Quadratic,
    Unweighted,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Linear => Scheme::Linear,
            SchemeArg::Quadratic => Scheme::Quadratic,
            SchemeArg::Unweighted => Scheme::Unweighted,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "reqlint", version, about = "Lint requirements specifications against a classified rule catalog")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check documents against the catalog's rules.
    Lint {
        #[arg(required = true)]
        docs: Vec<PathBuf>,
        #[arg(long)]
        catalog: PathBuf,
        /// `id<TAB>title` list of referenced documents.
        #[arg(long)]
        doc_list: Option<PathBuf>,
        /// `key = value` document structure settings.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "human")]
        format: OutputFormat,
        /// Drop findings less accurate than this class.
        #[arg(long, value_parser = parse_accuracy)]
        min_accuracy: Option<Accuracy>,
    },
    /// Summarise the catalog's classification.
    Stats {
        #[arg(long)]
        catalog: PathBuf,
        #[arg(long, value_enum, default_value = "human")]
        format: OutputFormat,
    },
    /// Weighted kappa between two raters' accuracy labels.
    Agreement {
        file_a: PathBuf,
        file_b: PathBuf,
        #[arg(long, value_enum, default_value = "linear")]
        scheme: SchemeArg,
        #[arg(long, value_enum, default_value = "human")]
        format: OutputFormat,
    },
    /// Check every rule invariant of a catalog.
    Validate {
        #[arg(long)]
        catalog: PathBuf,
    },
}

fn parse_accuracy(s: &str) -> Result<Accuracy, String> {
    s.parse()
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return e.exit_code();
        }
    };
    let result = match cli.command {
        Command::Lint {
            docs,
            catalog,
            doc_list,
            config,
            format,
            min_accuracy,
        } => cmd_lint(&docs, &catalog, doc_list.as_deref(), config.as_deref(), format, min_accuracy, stdout),
        Command::Stats { catalog, format } => cmd_stats(&catalog, format, stdout),
        Command::Agreement {
            file_a,
            file_b,
            scheme,
            format,
        } => cmd_agreement(&file_a, &file_b, scheme.into(), format, stdout),
        Command::Validate { catalog } => cmd_validate(&catalog, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn lexicon() -> Result<Lexicon> {
    match std::env::var_os(RESOURCES_ENV) {
        Some(dir) => Lexicon::from_dir(&dir).with_context(|| format!("{RESOURCES_ENV}={}", Path::new(&dir).display())),
        None => Ok(Lexicon::bundled()),
    }
}

fn load(path: &Path) -> Result<Catalog> {
    load_catalog(path).with_context(|| format!("catalog {}", path.display()))
}

fn cmd_lint(
    docs: &[PathBuf],
    catalog_path: &Path,
    doc_list: Option<&Path>,
    config: Option<&Path>,
    format: OutputFormat,
    min_accuracy: Option<Accuracy>,
    out: &mut dyn Write,
) -> Result<i32> {
    let catalog = load(catalog_path)?;
    let resources = match doc_list {
        Some(path) => Resources::load_doc_list(path).with_context(|| format!("document list {}", path.display()))?,
        None => Resources::new(),
    };
    let config = match config {
        Some(path) => DocConfig::from_config_text(&read(path)?).with_context(|| format!("config {}", path.display()))?,
        None => DocConfig::default(),
    };
    let linter = Linter::new(&catalog, &resources, lexicon()?)?;

    let mut documents = Vec::with_capacity(docs.len());
    for path in docs {
        let doc = parse_document(&read(path)?, &config).with_context(|| format!("document {}", path.display()))?;
        documents.push(doc.named(path.display().to_string()));
    }
    let mut report = linter.lint_all(&documents)?;
    if let Some(min) = min_accuracy {
        report.retain_min_accuracy(min);
    }
    match format {
        OutputFormat::Json => writeln!(out, "{}", report.to_json_pretty())?,
        OutputFormat::Human => write_report(&report, out)?,
    }
    Ok(if report.findings.is_empty() { 0 } else { 1 })
}

fn write_report(report: &Report, out: &mut dyn Write) -> Result<()> {
    for f in &report.findings {
        write!(
            out,
            "{}:{}:{}: {} [{}] {}",
            f.document, f.line, f.column, f.rule_id, f.accuracy, f.message
        )?;
        match &f.suggestion {
            Some(s) => writeln!(out, " (suggestion: {s})")?,
            None => writeln!(out)?,
        }
    }
    for s in &report.skipped {
        writeln!(
            out,
            "skipped {}: not detectable ({}: {})",
            s.rule_id,
            s.reason.code(),
            s.reason.description()
        )?;
    }
    let st = &report.stats;
    writeln!(
        out,
        "{} findings in {} documents ({} blocks, {} sentences, {} rules run, {} skipped)",
        report.findings.len(),
        st.documents.len(),
        st.blocks,
        st.sentences,
        st.rules_run,
        report.skipped.len()
    )?;
    Ok(())
}

#[derive(Serialize)]
struct CombinedShares {
    deterministic_high: u32,
    deterministic_high_medium: u32,
}

#[derive(Serialize)]
struct StatsOutput {
    ingest: IngestReport,
    accuracy: Distribution,
    combined: CombinedShares,
    type_accuracy: CrossTab,
    required_information: Distribution,
    reasons: Distribution,
    scope: Distribution,
    context: Distribution,
}

fn write_distribution(title: &str, d: &Distribution, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "{title} (n={})", d.denominator)?;
    for e in &d.entries {
        writeln!(out, "  {} {} {}%", e.label, e.count, e.percent)?;
    }
    Ok(())
}

fn cmd_stats(catalog_path: &Path, format: OutputFormat, out: &mut dyn Write) -> Result<i32> {
    use Accuracy::*;
    let catalog = load(catalog_path)?;
    let stats = StatsOutput {
        ingest: analytics::ingest_summary(&catalog),
        accuracy: analytics::accuracy_distribution(&catalog),
        combined: CombinedShares {
            deterministic_high: analytics::combined_share(&catalog, &[Deterministic, HeuristicHigh]),
            deterministic_high_medium: analytics::combined_share(
                &catalog,
                &[Deterministic, HeuristicHigh, HeuristicMedium],
            ),
        },
        type_accuracy: analytics::type_accuracy_crosstab(&catalog),
        required_information: analytics::info_frequency(&catalog),
        reasons: analytics::reasons_distribution(&catalog),
        scope: analytics::scope_distribution(&catalog),
        context: analytics::context_distribution(&catalog),
    };
    if format == OutputFormat::Json {
        writeln!(out, "{}", serde_json::to_string_pretty(&stats)?)?;
        return Ok(0);
    }

    let i = &stats.ingest;
    writeln!(
        out,
        "ingest: raw {}, unapproved {}, approved {}, split added {}, classified {}",
        i.raw_count, i.unapproved_filtered, i.approved_count, i.split_added, i.classified_count
    )?;
    write_distribution("detection accuracy", &stats.accuracy, out)?;
    writeln!(out, "combined(det+high) {}%", stats.combined.deterministic_high)?;
    writeln!(out, "combined(det+high+medium) {}%", stats.combined.deterministic_high_medium)?;

    let t = &stats.type_accuracy;
    writeln!(out, "type x accuracy")?;
    write!(out, "  {:<14}", "")?;
    for c in &t.cols {
        write!(out, " {:>15}", c.name())?;
    }
    writeln!(out)?;
    for (row, cells) in t.rows.iter().zip(&t.cells) {
        write!(out, "  {:<14}", format!("{row:?}"))?;
        for n in cells {
            write!(out, " {n:>15}")?;
        }
        writeln!(out)?;
    }

    write_distribution("required information", &stats.required_information, out)?;
    write_distribution("reasons", &stats.reasons, out)?;
    write_distribution("scope of detectable rules", &stats.scope, out)?;
    write_distribution("context of detectable rules", &stats.context, out)?;
    Ok(0)
}

fn cmd_agreement(a: &Path, b: &Path, scheme: Scheme, format: OutputFormat, out: &mut dyn Write) -> Result<i32> {
    let labels_a = analytics::parse_labels(&read(a)?).with_context(|| format!("labels {}", a.display()))?;
    let labels_b = analytics::parse_labels(&read(b)?).with_context(|| format!("labels {}", b.display()))?;
    let (x, y) = analytics::align_labels(&labels_a, &labels_b)?;
    let result: AgreementResult = analytics::weighted_kappa(&x, &y, scheme)?;
    match format {
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&result)?)?,
        OutputFormat::Human => {
            writeln!(out, "items {}", result.items)?;
            writeln!(out, "scheme {}", result.weight_scheme)?;
            writeln!(out, "observed_agreement {:.9}", result.observed_agreement)?;
            writeln!(out, "expected_agreement {:.9}", result.expected_agreement)?;
            writeln!(out, "kappa {:.9}", result.kappa)?;
        }
    }
    Ok(0)
}

fn cmd_validate(catalog_path: &Path, out: &mut dyn Write) -> Result<i32> {
    let text = read(catalog_path)?;
    let violations = match catalog::ingest(&text) {
        Ok(cat) => {
            let v = cat.validate();
            if v.is_empty() {
                writeln!(out, "ok: {} rules", cat.rules.len())?;
                return Ok(0);
            }
            v
        }
        Err(CatalogError::Validation(v)) => v,
        Err(e) => bail!("catalog {}: {e}", catalog_path.display()),
    };
    for v in &violations {
        writeln!(out, "{v}")?;
    }
    writeln!(out, "{} violations", violations.len())?;
    Ok(1)
}
