//! Command-line front end: `parse` for single sentences, `corpus` for
//! judgment files.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use thiserror::Error;

use crate::lexicon::{load_lexicon, Lexicon};
use crate::parser::{
    first_tree, parse, trees, Chart, ParseConfig, ParseError, Tree, DEFAULT_MAX_TUPLE, DEFAULT_ROOT,
};

/// Most trees printed for one sentence under `--all`.
pub const MAX_TREES: usize = 1000;

#[derive(Parser, Debug)]
#[command(
    name = "subcat-coord",
    version,
    about = "Parse coordination through subcategorization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse one sentence and print its analyses
    Parse(ParseArgs),
    /// Check a file of OK/NO judgments
    Corpus(CorpusArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Lexicon file
    #[arg(long)]
    lexicon: PathBuf,
    /// Largest tuple used as a conjunct
    #[arg(long, default_value_t = DEFAULT_MAX_TUPLE, value_parser = positive)]
    max_tuple: usize,
}

#[derive(Args, Debug)]
struct ParseArgs {
    #[command(flatten)]
    common: Common,
    /// Print every tree instead of one per root
    #[arg(long)]
    all: bool,
    /// Part a complete analysis must have
    #[arg(long, default_value = DEFAULT_ROOT)]
    root: String,
    sentence: String,
}

#[derive(Args, Debug)]
struct CorpusArgs {
    #[command(flatten)]
    common: Common,
    corpus: PathBuf,
}

fn positive(text: &str) -> Result<usize, String> {
    match text.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// Lowercases, splits on whitespace, and drops commas and sentence-final
/// punctuation. Apostrophes stay inside tokens.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split_whitespace()
        .map(|word| {
            let word: String = word
                .chars()
                .filter(|&c| c != ',')
                .map(|c| if c == '’' { '\'' } else { c })
                .collect();
            word.trim_end_matches(['.', '!', '?', ';', ':'])
                .to_lowercase()
        })
        .filter(|w| !w.is_empty())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expected {
    Accept,
    Reject,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Judgment {
    pub expected: Expected,
    pub sentence: String,
    pub line: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct CorpusError {
    pub line: usize,
    pub message: String,
}

/// Reads `OK <sentence>` / `NO <sentence>` lines; `#` starts a comment line.
pub fn parse_corpus(text: &str) -> Result<Vec<Judgment>, CorpusError> {
    let mut out = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let (tag, sentence) = content
            .split_once(char::is_whitespace)
            .unwrap_or((content, ""));
        let expected = match tag {
            "OK" => Expected::Accept,
            "NO" => Expected::Reject,
            other => {
                return Err(CorpusError {
                    line,
                    message: format!("expected OK or NO, found '{other}'"),
                })
            }
        };
        let sentence = sentence.trim();
        if sentence.is_empty() {
            return Err(CorpusError {
                line,
                message: "missing sentence".into(),
            });
        }
        out.push(Judgment {
            expected,
            sentence: sentence.to_string(),
            line,
        });
    }
    Ok(out)
}

/// Whether the sentence has at least one analysis.
pub fn accepts(lex: &Lexicon, sentence: &str, config: &ParseConfig) -> Result<bool, ParseError> {
    Ok(parse(&tokenize(sentence), lex, config)?.is_accepted())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub judgment: Judgment,
    pub outcome: Result<bool, ParseError>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        match self.outcome {
            Ok(accepted) => accepted == (self.judgment.expected == Expected::Accept),
            Err(_) => false,
        }
    }
}

/// Evaluates judgments in parallel; verdicts come back in input order.
pub fn run_judgments(lex: &Lexicon, judgments: &[Judgment], config: &ParseConfig) -> Vec<Verdict> {
    judgments
        .par_iter()
        .map(|j| Verdict {
            judgment: j.clone(),
            outcome: accepts(lex, &j.sentence, config),
        })
        .collect()
}

/// One line per node, children indented two spaces, in span order.
pub fn render_tree(chart: &Chart, tree: &Tree) -> String {
    let mut out = String::new();
    render_node(chart, tree, 0, &mut out);
    out
}

fn render_node(chart: &Chart, tree: &Tree, depth: usize, out: &mut String) {
    let edge = chart.edge(tree.edge);
    let _ = writeln!(out, "{}[{}] {}", "  ".repeat(depth), edge.body, edge.phon);
    let mut children: Vec<&Tree> = tree.children.iter().collect();
    children.sort_by_key(|c| chart.edge(c.edge).span);
    for child in children {
        render_node(chart, child, depth + 1, out);
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// status: 0 success, 1 no analysis or failed judgments, 2 usage or input
/// errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    let result = match cli.command {
        Command::Parse(args) => cmd_parse(&args, out),
        Command::Corpus(args) => cmd_corpus(&args, out),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
    }
}

fn read_lexicon(path: &Path) -> Result<Lexicon, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    load_lexicon(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn config(common: &Common) -> ParseConfig {
    ParseConfig {
        max_tuple: common.max_tuple,
        ..ParseConfig::default()
    }
}

fn cmd_parse(args: &ParseArgs, out: &mut dyn Write) -> Result<i32, String> {
    let lex = read_lexicon(&args.common.lexicon)?;
    let config = ParseConfig {
        root: args.root.clone(),
        ..config(&args.common)
    };
    let forest = parse(&tokenize(&args.sentence), &lex, &config).map_err(|e| e.to_string())?;
    if !forest.is_accepted() {
        let _ = writeln!(out, "no analysis");
        return Ok(1);
    }
    let mut rendered = Vec::new();
    for &root in &forest.roots {
        if args.all {
            let budget = MAX_TREES.saturating_sub(rendered.len());
            rendered.extend(trees(&forest.chart, root, budget));
        } else {
            rendered.push(first_tree(&forest.chart, root));
        }
    }
    for (i, tree) in rendered.iter().enumerate() {
        if i > 0 {
            let _ = writeln!(out);
        }
        let _ = write!(out, "{}", render_tree(&forest.chart, tree));
    }
    Ok(0)
}

fn cmd_corpus(args: &CorpusArgs, out: &mut dyn Write) -> Result<i32, String> {
    let lex = read_lexicon(&args.common.lexicon)?;
    let path = &args.corpus;
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let judgments = parse_corpus(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let verdicts = run_judgments(&lex, &judgments, &config(&args.common));
    let mut failed = 0;
    for v in &verdicts {
        let status = if v.passed() { "PASS" } else { "FAIL" };
        failed += usize::from(!v.passed());
        let tag = match v.judgment.expected {
            Expected::Accept => "OK",
            Expected::Reject => "NO",
        };
        let _ = write!(
            out,
            "{status} {}: {tag} {}",
            v.judgment.line, v.judgment.sentence
        );
        if let Err(e) = &v.outcome {
            let _ = write!(out, " ({e})");
        }
        let _ = writeln!(out);
    }
    let _ = writeln!(
        out,
        "{} judgments, {} passed, {failed} failed",
        verdicts.len(),
        verdicts.len() - failed
    );
    Ok(if failed == 0 { 0 } else { 1 })
}
