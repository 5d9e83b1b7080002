use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use correttore::cache::KbCache;
use correttore::compound::CorrectionResult;
use correttore::edit_distance::parse_k;
use correttore::lexicon::{extract_bigrams, ingest_corpus};
use correttore::mwe::{DerivationStep, EpEntry};
use correttore::{
    build_kb, bundled, lookup, merge_lexicons, BigramList, Corrector, EditParams, KnowledgeBase, Lexicon, Role,
    TokenDecision,
};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "correttore", version, about = "Italian spell correction with apostrophe and compound handling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count words in a corpus and write a frequency dictionary.
    BuildDict { corpus: PathBuf, out: PathBuf },
    /// Count adjacent word pairs in a corpus.
    Bigrams { corpus: PathBuf, out: PathBuf },
    /// Build both knowledge bases and save them to --kb-cache.
    BuildKb {
        #[arg(long)]
        dict: PathBuf,
        #[arg(long)]
        compounds: PathBuf,
        #[arg(long = "kb-cache")]
        kb_cache: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Print the candidates for one word: term, distance, frequency.
    Lookup {
        word: String,
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Correct text given as an argument, or each line of stdin.
    Correct {
        text: Option<String>,
        #[command(flatten)]
        source: SourceArgs,
        /// Include the expression substitution steps.
        #[arg(long)]
        verbose: bool,
        /// Correct lines on all cores. Output order is unchanged.
        #[arg(long)]
        parallel: bool,
    },
}

#[derive(Args, Default)]
struct ParamArgs {
    /// Fraction of the word length allowed as edits, e.g. 1/3 or 0.25.
    #[arg(long)]
    k: Option<String>,
    /// Deletion depth of the dictionary knowledge base.
    #[arg(long = "max-edit")]
    max_edit: Option<usize>,
    /// Deletion depth of the compound knowledge base.
    #[arg(long = "compound-max-edit")]
    compound_max_edit: Option<usize>,
}

/// Where the lexicons come from. Without --kb-cache or --dict the bundled
/// data is used.
#[derive(Args)]
struct SourceArgs {
    #[arg(long)]
    dict: Option<PathBuf>,
    #[arg(long)]
    compounds: Option<PathBuf>,
    #[arg(long)]
    bigrams: Option<PathBuf>,
    #[arg(long = "kb-cache", conflicts_with_all = ["dict", "compounds"])]
    kb_cache: Option<PathBuf>,
    #[command(flatten)]
    params: ParamArgs,
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<ExitCode, Failure>;

fn context<T, E: std::fmt::Display>(r: Result<T, E>, what: impl std::fmt::Display) -> Result<T, Failure> {
    r.map_err(|e| Failure(format!("{what}: {e}")))
}

impl ParamArgs {
    fn given(&self) -> bool {
        self.k.is_some() || self.max_edit.is_some() || self.compound_max_edit.is_some()
    }

    fn resolve(&self) -> Result<(EditParams, EditParams), Failure> {
        let k = match &self.k {
            Some(raw) => parse_k(raw)?,
            None => EditParams::default().k(),
        };
        let dict = EditParams::new(k, self.max_edit.unwrap_or(EditParams::DEFAULT_DICT_MAX_EDIT))?;
        let compounds = EditParams::new(k, self.compound_max_edit.unwrap_or(EditParams::DEFAULT_COMPOUND_MAX_EDIT))?;
        Ok((dict, compounds))
    }
}

fn open(path: &Path) -> io::Result<BufReader<File>> {
    File::open(path).map(BufReader::new)
}

fn read_lexicon(role: Role, path: &Path) -> Result<Lexicon, Failure> {
    context(open(path), format!("cannot read {}", path.display()))
        .and_then(|r| context(Lexicon::read_tsv(role, r), path.display()))
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    context(File::create(path).map(BufWriter::new), format!("cannot write {}", path.display()))
}

impl SourceArgs {
    fn knowledge_bases(&self) -> Result<(KnowledgeBase, KnowledgeBase), Failure> {
        if let Some(path) = &self.kb_cache {
            let cache = if self.params.given() {
                let (d, c) = self.params.resolve()?;
                KbCache::load(path, &d, &c)
            } else {
                open(path).map_err(Into::into).and_then(KbCache::read_from)
            };
            let cache = context(cache, format!("cannot load {}", path.display()))?;
            return Ok((cache.dictionary, cache.compounds));
        }
        let (dp, cp) = self.params.resolve()?;
        let (d, g) = match &self.dict {
            Some(path) => {
                let g = match &self.compounds {
                    Some(c) => read_lexicon(Role::Compounds, c)?,
                    None => Lexicon::empty(Role::Compounds),
                };
                (read_lexicon(Role::Dictionary, path)?, g)
            }
            None => (bundled::dictionary(), bundled::compounds()),
        };
        let merged = merge_lexicons(&d, &g);
        Ok((build_kb(d, dp), build_kb(merged, cp)))
    }

    fn bigrams(&self) -> Result<BigramList, Failure> {
        match &self.bigrams {
            Some(path) => {
                let reader = context(open(path), format!("cannot read {}", path.display()))?;
                context(BigramList::read_tsv(reader), path.display())
            }
            None if self.dict.is_none() && self.kb_cache.is_none() => Ok(extract_bigrams(bundled::CORPUS.as_bytes())?),
            None => Ok(BigramList::default()),
        }
    }

    fn corrector(&self) -> Result<Corrector, Failure> {
        let (d, g) = self.knowledge_bases()?;
        Ok(Corrector::new(d, g, self.bigrams()?))
    }
}

#[derive(Serialize)]
struct Record<'a> {
    corrected: &'a str,
    decisions: &'a [TokenDecision],
    eps: &'a [EpEntry],
    #[serde(skip_serializing_if = "Option::is_none")]
    derivation: Option<&'a [DerivationStep]>,
}

fn record(result: &CorrectionResult, verbose: bool) -> String {
    let rec = Record {
        corrected: &result.corrected,
        decisions: &result.decisions,
        eps: &result.catalogue,
        derivation: verbose.then_some(result.derivation.as_slice()),
    };
    serde_json::to_string(&rec).expect("records serialize")
}

fn build_dict(corpus: &Path, out: &Path) -> Outcome {
    let reader = context(open(corpus), format!("cannot read corpus {}", corpus.display()))?;
    let lexicon = context(ingest_corpus(reader), format!("cannot read corpus {}", corpus.display()))?;
    lexicon.write_tsv(create(out)?)?;
    println!("{} entries", lexicon.len());
    Ok(ExitCode::SUCCESS)
}

fn bigrams(corpus: &Path, out: &Path) -> Outcome {
    let reader = context(open(corpus), format!("cannot read corpus {}", corpus.display()))?;
    let list = context(extract_bigrams(reader), format!("cannot read corpus {}", corpus.display()))?;
    list.write_tsv(create(out)?)?;
    println!("{} pairs", list.len());
    Ok(ExitCode::SUCCESS)
}

fn build_kb_cmd(dict: &Path, compounds: &Path, cache: &Path, params: &ParamArgs) -> Outcome {
    let (dp, cp) = params.resolve()?;
    let d = read_lexicon(Role::Dictionary, dict)?;
    let g = read_lexicon(Role::Compounds, compounds)?;
    let merged = merge_lexicons(&d, &g);
    let kbs = KbCache { dictionary: build_kb(d, dp), compounds: build_kb(merged, cp) };
    context(kbs.save(cache), format!("cannot write {}", cache.display()))?;
    println!("{} dictionary keys, {} compound keys", kbs.dictionary.key_count(), kbs.compounds.key_count());
    Ok(ExitCode::SUCCESS)
}

fn lookup_cmd(word: &str, source: &SourceArgs) -> Outcome {
    let (kb, _) = source.knowledge_bases()?;
    let set = lookup(&correttore::text::normalize(word), &kb);
    let mut out = io::stdout().lock();
    for c in &set.candidates {
        writeln!(out, "{}\t{}\t{}", c.term, c.distance, c.frequency)?;
    }
    Ok(if set.is_empty() { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn correct_cmd(text: Option<&str>, source: &SourceArgs, verbose: bool, parallel: bool) -> Outcome {
    let corrector = source.corrector()?;
    let lines: Vec<String> = match text {
        Some(t) => t.lines().map(str::to_string).collect(),
        None => io::stdin().lock().lines().collect::<io::Result<_>>()?,
    };
    let records: Vec<String> = if parallel {
        lines.par_iter().map(|l| record(&corrector.correct(l), verbose)).collect()
    } else {
        lines.iter().map(|l| record(&corrector.correct(l), verbose)).collect()
    };
    let mut out = BufWriter::new(io::stdout().lock());
    for r in records {
        writeln!(out, "{r}")?;
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::BuildDict { corpus, out } => build_dict(corpus, out),
        Command::Bigrams { corpus, out } => bigrams(corpus, out),
        Command::BuildKb { dict, compounds, kb_cache, params } => build_kb_cmd(dict, compounds, kb_cache, params),
        Command::Lookup { word, source } => lookup_cmd(word, source),
        Command::Correct { text, source, verbose, parallel } => {
            correct_cmd(text.as_deref(), source, *verbose, *parallel)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Failure(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
