//! The `counterpoint` command line.
//!
//! Exit codes: 0 on success, 1 on any validation or usage error, 2 when the
//! output differs from a golden file.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::compare::{Comparison, Semantics};
use crate::config::{load_dichotomy, load_scale};
use crate::dichotomy::Dichotomy;
use crate::error::{Error, Result};
use crate::model::{verdict_totals, CounterpointModel, Variant};
use crate::reduction::{summarize_reduced, ReducedProgression, ReducedStyle, enumerate_reduced};
use crate::report::{self, Cell, Format, Table};
use crate::ring::Residue;
use crate::scale::Scale;
use crate::strict::{classify_strict, enumerate_strict_representatives, summarize_strict, StrictProgression};
use crate::verify::verify;

/// Set to `1` to write golden files instead of comparing against them.
pub const BLESS_ENV: &str = "COUNTERPOINT_BLESS";

#[derive(Debug, Parser)]
#[command(name = "counterpoint", version, about = "First-species counterpoint: rule systems and the symmetry model")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Opts {
    /// Modulus; only 12 has a built-in dichotomy.
    #[arg(long, global = true, env = "COUNTERPOINT_N")]
    n: Option<u32>,
    /// Dichotomy file (n, consonances, dissonances).
    #[arg(long, global = true, env = "COUNTERPOINT_DICHOTOMY")]
    dichotomy: Option<PathBuf>,
    /// Scale file (n, members); defaults to the diatonic scale for n = 12.
    #[arg(long, global = true, env = "COUNTERPOINT_SCALE")]
    scale: Option<PathBuf>,
    #[arg(long, global = true, env = "COUNTERPOINT_VARIANT", default_value = "classical")]
    variant: VariantArg,
    #[arg(long, global = true, env = "COUNTERPOINT_SEMANTICS", default_value = "original")]
    semantics: SemanticsArg,
    #[arg(long, global = true, env = "COUNTERPOINT_FORMAT", default_value = "csv")]
    format: FormatArg,
    /// Write to this file instead of stdout.
    #[arg(long, global = true, env = "COUNTERPOINT_OUT")]
    out: Option<PathBuf>,
    /// Print aggregate counts instead of rows.
    #[arg(long, global = true, env = "COUNTERPOINT_SUMMARY")]
    summary: bool,
    /// Compare the output with the file of the same name in this directory.
    #[arg(long, global = true, env = "COUNTERPOINT_GOLDEN")]
    golden: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "COUNTERPOINT_JOBS")]
    jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    Classical,
    Idempotent,
    LocalGlobalNilpotent,
    LocalGlobalIdempotent,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Classical => Variant::Classical,
            VariantArg::Idempotent => Variant::Idempotent,
            VariantArg::LocalGlobalNilpotent => Variant::LocalGlobalNilpotent,
            VariantArg::LocalGlobalIdempotent => Variant::LocalGlobalIdempotent,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SemanticsArg {
    Original,
    Refined,
    Starred,
}

impl From<SemanticsArg> for Semantics {
    fn from(s: SemanticsArg) -> Self {
        match s {
            SemanticsArg::Original => Semantics::Original,
            SemanticsArg::Refined => Semantics::Refined,
            SemanticsArg::Starred => Semantics::Starred,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Md,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
            FormatArg::Md => Format::Md,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List every progression of a style with its label.
    Enumerate {
        #[arg(value_enum)]
        style: Style,
    },
    /// Label one progression: `strict C D C' D'` or `reduced K C' K'`.
    Classify {
        #[arg(value_enum)]
        style: Style,
        #[arg(allow_negative_numbers = true, required = true)]
        values: Vec<i64>,
    },
    /// Contrapuntal symmetries and admitted successors.
    Model {
        /// Only this consonance.
        #[arg(long, conflicts_with = "all", allow_negative_numbers = true)]
        k: Option<i64>,
        /// Every consonance (the default).
        #[arg(long)]
        all: bool,
    },
    /// Verdict for each diatonic reduced progression.
    Verdicts,
    /// Reduced style labels against verdicts.
    Compare,
    /// Run the invariant suite.
    Verify,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Style {
    Strict,
    Reduced,
}

/// The resolved run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub dichotomy: Dichotomy,
    pub scale: Scale,
    pub variant: Variant,
    pub semantics: Semantics,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub summary: bool,
    pub golden: Option<PathBuf>,
}

impl RunConfig {
    fn resolve(opts: &Opts) -> Result<Self> {
        let dichotomy = match &opts.dichotomy {
            Some(path) => load_dichotomy(path)?,
            None => match opts.n.unwrap_or(12) {
                12 => Dichotomy::standard(),
                n => {
                    return Err(Error::Config(format!(
                        "no built-in dichotomy for n = {n}; pass --dichotomy"
                    )))
                }
            },
        };
        let n = dichotomy.modulus();
        if let Some(m) = opts.n.filter(|&m| m != n) {
            return Err(Error::Config(format!("--n {m} does not match the dichotomy modulus {n}")));
        }
        let scale = match &opts.scale {
            Some(path) => load_scale(path)?,
            None if n == 12 => Scale::diatonic(),
            None => Scale::new(n, &(0..n as i64).collect::<Vec<_>>())?,
        };
        if scale.modulus() != n {
            return Err(Error::Config(format!(
                "scale modulus {} does not match the dichotomy modulus {n}",
                scale.modulus()
            )));
        }
        Ok(RunConfig {
            dichotomy,
            scale,
            variant: opts.variant.into(),
            semantics: opts.semantics.into(),
            format: opts.format.into(),
            out: opts.out.clone(),
            summary: opts.summary,
            golden: opts.golden.clone(),
        })
    }

    fn model(&self) -> Result<CounterpointModel> {
        CounterpointModel::new(&self.dichotomy, self.variant)
    }
}

/// Output of one command: a name for golden files, the text, and whether
/// the command itself found a failure.
struct Output {
    name: String,
    text: String,
    failed: bool,
}

fn render(cfg: &RunConfig, table: &Table) -> Result<String> {
    table.render(cfg.format)
}

fn execute(cmd: &Command, cfg: &RunConfig) -> Result<Output> {
    let ok = |name: String, text: String| Ok(Output { name, text, failed: false });
    match cmd {
        Command::Enumerate { style: Style::Strict } => {
            if cfg.dichotomy.modulus() != 12 {
                return Err(Error::RequiresTwelve("the strict style"));
            }
            let rows = enumerate_strict_representatives(&cfg.scale);
            let table = if cfg.summary {
                report::strict_summary(&summarize_strict(&rows))
            } else {
                report::strict_rows(&rows)
            };
            ok(suffix("enumerate-strict", cfg.summary), render(cfg, &table)?)
        }
        Command::Enumerate { style: Style::Reduced } => {
            let style = ReducedStyle::new(&cfg.scale)?;
            let rows = style.rows(cfg.variant.flavor())?;
            let table = if cfg.summary {
                report::reduced_summary(&summarize_reduced(&rows))
            } else {
                report::reduced_rows(&rows)
            };
            ok(suffix("enumerate-reduced", cfg.summary), render(cfg, &table)?)
        }
        Command::Classify { style, values } => classify(*style, values, cfg),
        Command::Model { k, .. } => {
            let model = cfg.model()?;
            let only = match k {
                Some(k) => {
                    let k = Residue::new(*k, cfg.dichotomy.modulus())?;
                    model.entry(k)?;
                    Some(k)
                }
                None => None,
            };
            let name = match only {
                Some(k) => format!("model-{}-k{}", cfg.variant, k.value()),
                None => format!("model-{}", cfg.variant),
            };
            ok(name, render(cfg, &report::model_entries(&model, only))?)
        }
        Command::Verdicts => {
            let model = cfg.model()?;
            let progs = enumerate_reduced(&cfg.dichotomy, &cfg.scale, cfg.variant.flavor())?;
            let rows = model.verdicts(&progs)?;
            let table = if cfg.summary {
                report::verdict_summary(cfg.variant, verdict_totals(&rows))
            } else {
                report::verdict_rows(cfg.variant, &rows)
            };
            ok(suffix(&format!("verdicts-{}", cfg.variant), cfg.summary), render(cfg, &table)?)
        }
        Command::Compare => {
            let model = cfg.model()?;
            let style = ReducedStyle::new(&cfg.scale)?;
            let cmp = Comparison::new(&style, &model)?;
            let cross = cmp.cross_table(cfg.semantics);
            let metrics = cross.metrics();
            let name = format!("compare-{}-{}", cfg.variant, cfg.semantics);
            if cfg.summary {
                return ok(format!("{name}-summary"), format!("{metrics}\n"));
            }
            let text = match cfg.format {
                Format::Md => [
                    report::cross_table(&cross, Some(&cmp)),
                    report::kind_table(&cmp.kind_table()),
                    report::metrics(&[(cfg.variant, cfg.semantics, metrics)]),
                    report::rule_recovery(&cmp.rule_recovery()),
                ]
                .iter()
                .map(Table::to_markdown)
                .collect::<Vec<_>>()
                .join("\n"),
                f => comparison_long(&cmp, cfg.semantics).render(f)?,
            };
            ok(name, text)
        }
        Command::Verify => {
            let checks = verify(&cfg.dichotomy, &cfg.scale)?;
            let mut t = Table::new("Invariant suite", &["check", "passed", "detail"]);
            for c in &checks {
                t.push(vec![c.name.as_str().into(), (if c.passed { "yes" } else { "no" }).into(), c.detail.as_str().into()]);
            }
            Ok(Output {
                name: "verify".into(),
                text: render(cfg, &t)?,
                failed: checks.iter().any(|c| !c.passed),
            })
        }
    }
}

fn suffix(name: &str, summary: bool) -> String {
    if summary {
        format!("{name}-summary")
    } else {
        name.to_string()
    }
}

/// Cross table, kind table and metrics in one `section,row,column,value`
/// table, so that CSV and JSON output keep a single schema.
pub fn comparison_long(cmp: &Comparison, semantics: Semantics) -> Table {
    let mut t = Table::new(
        format!("Comparison ({}, {semantics})", cmp.variant()),
        &["section", "row", "column", "value"],
    );
    let cross = cmp.cross_table(semantics);
    for v in crate::model::VerdictKind::ALL {
        for (&c, n) in semantics.columns().iter().zip(cross.row(v)) {
            t.push(vec!["cross".into(), v.as_str().into(), c.as_str().into(), n.into()]);
        }
    }
    let kinds = cmp.kind_table();
    for v in crate::model::VerdictKind::ALL {
        for (k, n) in crate::compare::KindTable::KINDS.iter().zip(kinds.row(v)) {
            t.push(vec!["kinds".into(), v.as_str().into(), k.as_str().into(), n.into()]);
        }
    }
    let m = cross.metrics();
    t.push(vec!["metrics".into(), semantics.as_str().into(), "matches".into(), m.matches.into()]);
    t.push(vec!["metrics".into(), semantics.as_str().into(), "mismatches".into(), m.mismatches.into()]);
    t
}

fn classify(style: Style, values: &[i64], cfg: &RunConfig) -> Result<Output> {
    let arity = |want: usize, usage: &str| {
        if values.len() == want {
            Ok(())
        } else {
            Err(Error::Config(format!("expected {usage}, got {} values", values.len())))
        }
    };
    let joined = values.iter().map(i64::to_string).collect::<Vec<_>>().join("_");
    match style {
        Style::Strict => {
            arity(4, "C D C' D'")?;
            let p = StrictProgression::new(values[0], values[1], values[2], values[3]);
            let label = classify_strict(&p, &cfg.scale)?;
            let table = report::strict_rows(&[(p, label)]);
            Ok(Output {
                name: format!("classify-strict-{joined}"),
                text: render(cfg, &table)?,
                failed: false,
            })
        }
        Style::Reduced => {
            arity(3, "K C' K'")?;
            let r = ReducedProgression::new(values[0], values[1], values[2], cfg.dichotomy.modulus(), cfg.variant.flavor())?;
            let style = ReducedStyle::new(&cfg.scale)?;
            let label = style.classify(&r)?;
            let table = report::reduced_rows(&[(r, label)]);
            Ok(Output {
                name: format!("classify-reduced-{joined}"),
                text: render(cfg, &table)?,
                failed: false,
            })
        }
    }
}

fn golden_path(dir: &Path, name: &str, format: Format, summary: bool) -> PathBuf {
    let ext = if summary && name.starts_with("compare-") { "txt" } else { format.extension() };
    dir.join(format!("{name}.{ext}"))
}

/// Parses `argv` (including the program name), runs the command and
/// returns the exit code.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(stdout, "{text}") } else { write!(stderr, "{text}") };
            return code;
        }
    };
    match run_cli(&cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

fn run_cli(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let cfg = RunConfig::resolve(&cli.opts)?;
    let output = match cli.opts.jobs {
        Some(0) => return Err(Error::Config("--jobs must be positive".into())),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(|| execute(&cli.command, &cfg))?,
        None => execute(&cli.command, &cfg)?,
    };

    if let Some(dir) = &cfg.golden {
        let path = golden_path(dir, &output.name, cfg.format, cfg.summary);
        if std::env::var(BLESS_ENV).is_ok_and(|v| v == "1") {
            std::fs::create_dir_all(dir)?;
            std::fs::write(&path, &output.text)?;
            writeln!(stderr, "blessed {}", path.display())?;
        } else {
            let expected = match std::fs::read_to_string(&path) {
                Ok(s) => s,
                Err(e) => {
                    writeln!(stderr, "golden mismatch: {}: {e}", path.display())?;
                    return Ok(2);
                }
            };
            if let Some((line, want, got)) = first_difference(&expected, &output.text) {
                writeln!(stderr, "golden mismatch: {} line {line}", path.display())?;
                writeln!(stderr, "- {want}")?;
                writeln!(stderr, "+ {got}")?;
                return Ok(2);
            }
        }
    }

    match &cfg.out {
        Some(path) => std::fs::write(path, &output.text)?,
        None => stdout.write_all(output.text.as_bytes())?,
    }
    Ok(if output.failed { 1 } else { 0 })
}

fn first_difference(expected: &str, got: &str) -> Option<(usize, String, String)> {
    let (mut a, mut b) = (expected.lines(), got.lines());
    let mut line = 1;
    loop {
        match (a.next(), b.next()) {
            (None, None) => return None,
            (x, y) if x == y => line += 1,
            (x, y) => {
                let show = |s: Option<&str>| s.map_or("<end of file>".to_string(), str::to_string);
                return Some((line, show(x), show(y)));
            }
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// Rows of a re-ingested `section,row,column,value` comparison table.
pub fn long_cell(t: &Table, section: &str, row: &str, column: &str) -> Option<i64> {
    let (s, r, c, v) = (t.column("section")?, t.column("row")?, t.column("column")?, t.column("value")?);
    t.rows
        .iter()
        .find(|x| {
            x[s] == Cell::from(section) && x[r] == Cell::from(row) && x[c] == Cell::from(column)
        })
        .and_then(|x| x[v].as_int())
}
