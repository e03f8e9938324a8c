use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use qlint_core::analysis::{analyze_path, introspect};
use qlint_core::detectors::{DetectorId, CATALOG};
use qlint_core::evaluation::{evaluate, load_manifest, render_eval_json, render_eval_text};
use qlint_core::frontend::SourceFile;
use qlint_core::knowledge_base::{load_kb, KnowledgeBase};
use qlint_core::report::{render_json, render_text, JsonOptions};

const EXIT_CLEAN: u8 = 0;
const EXIT_FINDINGS: u8 = 1;
const EXIT_ERROR: u8 = 2;

/// Static bug-pattern checker for Qiskit-style quantum programs.
#[derive(Parser)]
#[command(name = "qlint", version, args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Score the analyzer against a labeled corpus manifest.
    Eval(EvalArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Comma-separated detector ids to enable (default: all).
    #[arg(long, value_delimiter = ',')]
    detectors: Vec<DetectorId>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to a file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Knowledge base file replacing the bundled one.
    #[arg(long, env = "QLINT_KB")]
    kb: Option<PathBuf>,
    /// Worker threads (default: logical CPUs).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct RunArgs {
    /// Python files or directories to analyze.
    paths: Vec<PathBuf>,
    #[command(flatten)]
    common: Common,
    /// Print the extracted bindings and call records instead of diagnostics.
    #[arg(long)]
    introspect: bool,
    /// List detectors and their pattern codes.
    #[arg(long)]
    list_detectors: bool,
    /// Write 0 for every timing in JSON output, for reproducible reports.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct EvalArgs {
    manifest: PathBuf,
    #[command(flatten)]
    common: Common,
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Some(Command::Eval(args)) => run_eval(&args),
        None => run(&cli.run),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Failure(message)) => {
            eprintln!("qlint: {message}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

impl Common {
    fn enabled(&self) -> BTreeSet<DetectorId> {
        if self.detectors.is_empty() {
            DetectorId::ALL.into_iter().collect()
        } else {
            self.detectors.iter().copied().collect()
        }
    }

    fn knowledge_base(&self) -> Result<KnowledgeBase, Failure> {
        match &self.kb {
            Some(path) => load_kb(path).map_err(|e| Failure(format!("{}: {e}", path.display()))),
            None => Ok(KnowledgeBase::bundled()),
        }
    }

    fn pool(&self) -> Result<rayon::ThreadPool, Failure> {
        Ok(rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs.unwrap_or(0))
            .build()?)
    }

    fn emit(&self, text: &str) -> Result<(), Failure> {
        match &self.output {
            Some(path) => {
                std::fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
            }
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(text.as_bytes())?;
                Ok(stdout.flush()?)
            }
        }
    }
}

/// Python files under each path, sorted and deduplicated.
fn discover(paths: &[PathBuf]) -> Result<Vec<PathBuf>, Failure> {
    let mut files = BTreeSet::new();
    for path in paths {
        if path.is_dir() {
            for entry in walkdir::WalkDir::new(path).sort_by_file_name() {
                let entry = entry?;
                let p = entry.path();
                if entry.file_type().is_file() && p.extension().is_some_and(|e| e == "py") {
                    files.insert(p.to_path_buf());
                }
            }
        } else if path.is_file() {
            files.insert(path.clone());
        } else {
            return Err(Failure(format!(
                "{}: no such file or directory",
                path.display()
            )));
        }
    }
    Ok(files.into_iter().collect())
}

fn run(args: &RunArgs) -> Result<u8, Failure> {
    if args.list_detectors {
        args.common.emit(&list_detectors())?;
        return Ok(EXIT_CLEAN);
    }
    if args.paths.is_empty() {
        Cli::command()
            .error(ErrorKind::MissingRequiredArgument, "no input paths given")
            .exit();
    }
    let files = discover(&args.paths)?;
    if args.introspect {
        return run_introspect(&files, &args.common);
    }
    let kb = args.common.knowledge_base()?;
    let enabled = args.common.enabled();
    let results = args.common.pool()?.install(|| {
        files
            .par_iter()
            .map(|f| {
                analyze_path(f, &kb, &enabled).map_err(|e| Failure(format!("{}: {e}", f.display())))
            })
            .collect::<Result<Vec<_>, _>>()
    })?;
    let text = match args.common.format {
        Format::Text => render_text(&results),
        Format::Json => {
            let mut json = render_json(
                &results,
                JsonOptions {
                    include_timing: !args.no_timing,
                },
            );
            json.push('\n');
            json
        }
    };
    args.common.emit(&text)?;
    Ok(if results.iter().any(|r| r.syntax_error.is_some()) {
        EXIT_ERROR
    } else if results.iter().any(|r| !r.diagnostics.is_empty()) {
        EXIT_FINDINGS
    } else {
        EXIT_CLEAN
    })
}

fn run_introspect(files: &[PathBuf], common: &Common) -> Result<u8, Failure> {
    let mut out = String::new();
    let mut code = EXIT_CLEAN;
    for path in files {
        let file = read_source(path)?;
        if files.len() > 1 {
            out.push_str(&format!("==> {} <==\n", path.display()));
        }
        match introspect(&file) {
            Ok(extraction) => {
                out.push_str(&extraction.to_string());
                let coverage = &extraction.coverage;
                eprintln!(
                    "{}: {} skipped constructs, {} calls inside them",
                    path.display(),
                    coverage.skipped_constructs.len(),
                    coverage.skipped_calls
                );
            }
            Err(err) => {
                out.push_str(&format!("{err}\n"));
                code = EXIT_ERROR;
            }
        }
    }
    common.emit(&out)?;
    Ok(code)
}

fn read_source(path: &Path) -> Result<SourceFile, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    SourceFile::from_bytes(path, bytes).map_err(|e| Failure(e.to_string()))
}

fn list_detectors() -> String {
    let mut out = String::new();
    for id in DetectorId::ALL {
        out.push_str(&format!("{id}  {}\n", id.title()));
        for info in CATALOG.iter().filter(|p| p.detector == id) {
            out.push_str(&format!("    {:<34} {}\n", info.code, info.description));
        }
    }
    out
}

fn run_eval(args: &EvalArgs) -> Result<u8, Failure> {
    let entries = load_manifest(&args.manifest)?;
    let kb = args.common.knowledge_base()?;
    let enabled = args.common.enabled();
    let report = args
        .common
        .pool()?
        .install(|| evaluate(&entries, &kb, &enabled))?;
    let text = match args.common.format {
        Format::Text => render_eval_text(&report),
        Format::Json => render_eval_json(&report) + "\n",
    };
    args.common.emit(&text)?;
    Ok(EXIT_CLEAN)
}
