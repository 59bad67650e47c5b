use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fpmember::certificate::CertificateFile;
use fpmember::corpus;
use fpmember::query::{exit_code, run_query, QueryKind, QueryRecord, EXIT_ERROR};
use fpmember::syntax::{format_presentation, parse_gog, parse_word, parse_word_list};
use fpmember::verify::{verify_certificate, verify_self_contained, Verdict};
use fpmember_core::graph::gog_presentation;
use fpmember_core::{Budget, Presentation};

#[derive(Parser)]
#[command(name = "fpmember", version, about = "Membership, word and isomorphism queries for finitely presented groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Common {
    /// Corpus name, presentation file, or inline `group NAME = < ... | ... >`.
    #[arg(long, short)]
    group: String,
    /// Logical step budget.
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    /// Largest permutation degree tried by quotient searches.
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Also write the JSON certificate to this file.
    #[arg(long)]
    certificate: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Is WORD trivial?
    Word {
        #[command(flatten)]
        common: Common,
        word: String,
    },
    /// Is WORD in the subgroup generated by --subgroup?
    Member {
        #[command(flatten)]
        common: Common,
        /// Comma-separated generators.
        #[arg(long, short, default_value = "")]
        subgroup: String,
        word: String,
    },
    /// Is WORD in <left> <right>?
    Dcoset {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "")]
        left: String,
        #[arg(long, default_value = "")]
        right: String,
        word: String,
    },
    /// Does WORD <subgroup> meet <other>?
    Cwitness {
        #[command(flatten)]
        common: Common,
        #[arg(long, short, default_value = "")]
        subgroup: String,
        #[arg(long, short, default_value = "")]
        other: String,
        word: String,
    },
    /// Search for an isomorphism to --target.
    Iso {
        #[command(flatten)]
        common: Common,
        #[arg(long, short)]
        target: String,
    },
    /// List the subgroups of index at most --max-index.
    Subgroups {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 4)]
        max_index: usize,
    },
    /// Print the presentation of a graph of groups given in FILE (or a corpus name).
    GogBuild { file: String },
    /// Check a certificate file.
    Verify {
        file: PathBuf,
        /// Check against this presentation instead of the one recorded.
        #[arg(long, short)]
        group: Option<String>,
    },
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {}", msg);
    ExitCode::from(EXIT_ERROR as u8)
}

fn emit(c: &CertificateFile, common: &Common) -> ExitCode {
    if let Some(path) = &common.certificate {
        if let Err(e) = std::fs::write(path, c.to_json()) {
            return fail(format!("cannot write {}: {}", path.display(), e));
        }
    }
    match common.format {
        Format::Json => print!("{}", c.to_json()),
        Format::Text => print!("{}", c.to_text()),
    }
    ExitCode::from(exit_code(c) as u8)
}

fn run(common: &Common, make: impl FnOnce(&Presentation) -> Result<QueryKind, String>) -> ExitCode {
    let p = match corpus::resolve(&common.group) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    let kind = match make(&p) {
        Ok(k) => k,
        Err(e) => return fail(e),
    };
    let budget = Budget { max_steps: common.budget, max_quotient_degree: common.max_degree };
    match run_query(&QueryRecord::new(p, kind, budget)) {
        Ok(c) => emit(&c, common),
        Err(e) => fail(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let w = |p: &Presentation, s: &str| parse_word(p, s).map_err(|e| e.to_string());
    let ws = |p: &Presentation, s: &str| parse_word_list(p, s).map_err(|e| e.to_string());
    match cli.command {
        Command::Word { common, word } => run(&common, |p| Ok(QueryKind::Word { w: w(p, &word)? })),
        Command::Member { common, subgroup, word } => {
            run(&common, |p| Ok(QueryKind::Member { x: ws(p, &subgroup)?, z: w(p, &word)? }))
        }
        Command::Dcoset { common, left, right, word } => {
            run(&common, |p| Ok(QueryKind::DoubleCoset { x: ws(p, &left)?, y: ws(p, &right)?, z: w(p, &word)? }))
        }
        Command::Cwitness { common, subgroup, other, word } => {
            run(&common, |p| Ok(QueryKind::CosetWitness { x: ws(p, &subgroup)?, y: ws(p, &other)?, a: w(p, &word)? }))
        }
        Command::Iso { common, target } => {
            run(&common, |_| Ok(QueryKind::FindIso { target: corpus::resolve(&target).map_err(|e| e.to_string())? }))
        }
        Command::Subgroups { common, max_index } => run(&common, |_| Ok(QueryKind::Subgroups { max_index })),
        Command::GogBuild { file } => {
            let graph = match corpus::graph(&file) {
                Some(g) => g,
                None => match std::fs::read_to_string(&file) {
                    Ok(text) => match parse_gog(&text) {
                        Ok(g) => g,
                        Err(e) => return fail(format!("{}:{}", file, e)),
                    },
                    Err(e) => return fail(format!("cannot read {}: {}", file, e)),
                },
            };
            match gog_presentation(&graph) {
                Ok((p, _)) => {
                    println!("{}", format_presentation(&p));
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Command::Verify { file, group } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => return fail(format!("cannot read {}: {}", file.display(), e)),
            };
            let c = match CertificateFile::from_json(&text) {
                Ok(c) => c,
                Err(e) => return fail(format!("malformed certificate: {}", e)),
            };
            let verdict = match group {
                Some(g) => match corpus::resolve(&g) {
                    Ok(p) => verify_certificate(&p, &c),
                    Err(e) => return fail(e),
                },
                None => verify_self_contained(&c),
            };
            match verdict {
                Verdict::Accept => {
                    println!("accept");
                    ExitCode::SUCCESS
                }
                Verdict::Reject(reason) => {
                    println!("reject: {}", reason);
                    ExitCode::from(EXIT_ERROR as u8)
                }
            }
        }
    }
}
