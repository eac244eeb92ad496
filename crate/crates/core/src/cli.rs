//! Command-line front end.
//!
//! Commands:
//!
//! * `separable` — decide separability of an example-set file for one query class;
//! * `eval` — evaluate a query on one data instance (optionally under an ontology);
//! * `canonical` — print the canonical lasso model of a Horn ontology and a data instance;
//! * `from-words` — common subsequence / subword separation of words.
//!
//! Exit codes: 0 separable / true, 1 not separable / false, 2 usage or input error,
//! 3 resource cap hit, 4 disagreement between the engine and the oracle.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::horn::{canonical_model, load_ontology, HornError};
use crate::logic::{parse_query, DataInstance, ExampleSet, LassoModel, QueryClass};
use crate::oracle::{brute_force_decide, Bounds};
use crate::prior::load_prior_ontology;
use crate::qbe::{
    decide_with, dp_path, entails, DecideOptions, DpOptions, HornPathRoute, Ontology, Problem, Stats,
};
use crate::tsys::Signature;

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_DISAGREE: i32 = 4;

/// The supported file-format version.
pub const FORMAT: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "ltl-qbe", version, about = "Query-by-example for positive LTL queries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OntologyKind {
    Horn,
    Prior,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Route {
    Search,
    Lasso,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WordMode {
    Subsequence,
    Subword,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether an example set is separable by a query of the given class.
    Separable {
        #[arg(long, value_parser = parse_class)]
        class: QueryClass,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        ontology: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "horn")]
        ontology_kind: OntologyKind,
        /// Include the separating query in the output.
        #[arg(long)]
        emit_query: bool,
        /// Greedily shrink the separating query.
        #[arg(long)]
        minimize: bool,
        /// Cross-check the verdict against the brute-force oracle.
        #[arg(long)]
        oracle_check: bool,
        /// Decider for path classes under Horn ontologies.
        #[arg(long, value_enum, default_value = "search")]
        horn_route: Route,
        #[arg(long, default_value_t = 2_000_000)]
        node_cap: usize,
    },
    /// Evaluate a query on a data instance (certain answer under an ontology).
    Eval {
        #[arg(long)]
        query: String,
        #[arg(long)]
        data: PathBuf,
        #[arg(long, default_value_t = 0)]
        at: usize,
        #[arg(long)]
        ontology: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "horn")]
        ontology_kind: OntologyKind,
    },
    /// Print the canonical lasso model of a Horn ontology and a data instance.
    Canonical {
        #[arg(long)]
        ontology: PathBuf,
        #[arg(long)]
        data: PathBuf,
        /// Also print the first `n` time points of the model.
        #[arg(long)]
        window: Option<usize>,
    },
    /// Separate words by a common subsequence or subword.
    FromWords {
        #[arg(long, value_delimiter = ',')]
        positives: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "")]
        negatives: Vec<String>,
        #[arg(long, value_enum, default_value = "subsequence")]
        mode: WordMode,
    },
}

fn parse_class(s: &str) -> Result<QueryClass, String> {
    s.parse::<QueryClass>().map_err(|e| e.to_string())
}

/// A data instance in JSON: `{"name": "p1", "facts": [["T", 2], ["V", 4]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceJson {
    #[serde(default)]
    pub name: Option<String>,
    pub facts: Vec<(String, usize)>,
}

/// An example-set file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExampleFile {
    pub format: u32,
    #[serde(default)]
    pub signature: Vec<String>,
    pub positives: Vec<InstanceJson>,
    #[serde(default)]
    pub negatives: Vec<InstanceJson>,
}

/// A single-instance data file: an [`InstanceJson`] with a `format` field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataFile {
    pub format: u32,
    #[serde(default)]
    pub name: Option<String>,
    pub facts: Vec<(String, usize)>,
}

/// Errors surfaced to the user, each mapped to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Resource(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_USAGE,
            CliError::Resource(_) => EXIT_RESOURCE,
        }
    }
}

fn input(msg: impl std::fmt::Display) -> CliError {
    CliError::Input(msg.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn check_format(found: u32, path: &Path) -> Result<(), CliError> {
    if found != FORMAT {
        return Err(input(format!("{}: unsupported format {found} (expected {FORMAT})", path.display())));
    }
    Ok(())
}

fn instance(name: String, facts: &[(String, usize)]) -> Result<DataInstance, CliError> {
    DataInstance::new(name, facts.iter().cloned()).map_err(input)
}

/// Parses an example-set JSON document.
pub fn parse_examples(text: &str, origin: &Path) -> Result<ExampleSet, CliError> {
    let file: ExampleFile =
        serde_json::from_str(text).map_err(|e| input(format!("{}: {e}", origin.display())))?;
    check_format(file.format, origin)?;
    let build = |list: &[InstanceJson], prefix: &str| -> Result<Vec<DataInstance>, CliError> {
        list.iter()
            .enumerate()
            .map(|(i, j)| instance(j.name.clone().unwrap_or_else(|| format!("{prefix}{}", i + 1)), &j.facts))
            .collect()
    };
    let e = ExampleSet::new(build(&file.positives, "p")?, build(&file.negatives, "n")?);
    if !file.signature.is_empty() {
        if let Some(a) = e.signature().into_iter().find(|a| !file.signature.contains(a)) {
            return Err(input(format!("{}: atom `{a}` is not in the declared signature", origin.display())));
        }
    }
    Ok(e)
}

/// Parses a single-instance JSON document.
pub fn parse_data(text: &str, origin: &Path) -> Result<DataInstance, CliError> {
    let file: DataFile = serde_json::from_str(text).map_err(|e| input(format!("{}: {e}", origin.display())))?;
    check_format(file.format, origin)?;
    instance(file.name.unwrap_or_else(|| "d".into()), &file.facts)
}

fn load_onto(path: Option<&Path>, kind: OntologyKind) -> Result<Ontology, CliError> {
    let Some(path) = path else { return Ok(Ontology::None) };
    let text = read(path)?;
    let wrap = |e: String| input(format!("{}: {e}", path.display()));
    Ok(match kind {
        OntologyKind::Horn => Ontology::Horn(load_ontology(&text).map_err(|e| wrap(e.to_string()))?),
        OntologyKind::Prior => Ontology::Prior(load_prior_ontology(&text).map_err(|e| wrap(e.to_string()))?),
    })
}

/// JSON rendering of a lasso as lists of sorted atom lists.
fn lasso_json(m: &LassoModel) -> serde_json::Value {
    let show = |v: &[std::collections::BTreeSet<String>]| -> Vec<Vec<String>> {
        v.iter().map(|s| s.iter().cloned().collect()).collect()
    };
    json!({ "prefix": show(&m.prefix), "loop": show(&m.cycle) })
}

#[derive(Serialize)]
struct VerdictJson {
    format: u32,
    separable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
    stats: Stats,
}

fn print_json(v: &impl Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serialisable output"));
}

fn qbe_error(e: crate::qbe::QbeError) -> CliError {
    if e.is_resource() {
        CliError::Resource(e.to_string())
    } else {
        input(e)
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_TRUE };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.code()
        }
    }
}

fn execute(cmd: Command) -> Result<i32, CliError> {
    match cmd {
        Command::Separable { class, input: path, ontology, ontology_kind, emit_query, minimize, oracle_check, horn_route, node_cap } => {
            let e = parse_examples(&read(&path)?, &path)?;
            let o = load_onto(ontology.as_deref(), ontology_kind)?;
            let problem = Problem::new(class, e, o);
            let opts = DecideOptions {
                horn_route: match horn_route {
                    Route::Search => HornPathRoute::Search,
                    Route::Lasso => HornPathRoute::Lasso,
                },
                node_cap,
                minimize,
            };
            let v = decide_with(&problem, &opts).map_err(qbe_error)?;
            if oracle_check {
                let o = brute_force_decide(&problem, &Bounds::default()).map_err(|e| match e {
                    crate::oracle::OracleError::TooLarge(_) | crate::oracle::OracleError::TooManyPositions(_) => {
                        CliError::Resource(e.to_string())
                    }
                    other => input(other),
                })?;
                if o.separable != v.separable {
                    eprintln!(
                        "error: engine says {} but the oracle says {}",
                        if v.separable { "separable" } else { "not separable" },
                        if o.separable { "separable" } else { "not separable" }
                    );
                    return Ok(EXIT_DISAGREE);
                }
            }
            print_json(&VerdictJson {
                format: FORMAT,
                separable: v.separable,
                witness: if emit_query { v.witness.as_ref().map(ToString::to_string) } else { None },
                note: v.note.clone(),
                stats: v.stats.clone(),
            });
            Ok(if v.separable { EXIT_TRUE } else { EXIT_FALSE })
        }
        Command::Eval { query, data, at, ontology, ontology_kind } => {
            let q = parse_query(&query).map_err(|e| input(format!("query: {e}")))?;
            let d = parse_data(&read(&data)?, &data)?;
            let o = load_onto(ontology.as_deref(), ontology_kind)?;
            let answer = match (&o, at) {
                (_, 0) => entails(&o, &d, &q).map_err(qbe_error)?,
                (Ontology::None, _) => crate::logic::eval_data(&d, &q, at),
                (Ontology::Horn(h), _) => crate::horn::certain_answer(h, &d, &q, at).map_err(|e| match e {
                    HornError::WindowOverflow(_) => CliError::Resource(e.to_string()),
                    other => input(other),
                })?,
                (Ontology::Prior(_), _) => {
                    return Err(input("prior-fragment certain answers are supported at time point 0 only"))
                }
            };
            println!("{answer}");
            Ok(if answer { EXIT_TRUE } else { EXIT_FALSE })
        }
        Command::Canonical { ontology, data, window } => {
            let o = load_ontology(&read(&ontology)?).map_err(|e| input(format!("{}: {e}", ontology.display())))?;
            let d = parse_data(&read(&data)?, &data)?;
            match canonical_model(&o, &d) {
                Ok(cm) => {
                    let mut out = json!({
                        "format": FORMAT,
                        "consistent": true,
                        "model": lasso_json(&cm.lasso),
                        "s": cm.s,
                        "p": cm.p,
                    });
                    if let Some(n) = window {
                        let points: Vec<Vec<String>> =
                            (0..n).map(|t| cm.lasso.unfolded(t).iter().cloned().collect()).collect();
                        out["window"] = json!(points);
                    }
                    print_json(&out);
                    Ok(EXIT_TRUE)
                }
                Err(HornError::Inconsistent) => {
                    print_json(&json!({ "format": FORMAT, "consistent": false }));
                    Ok(EXIT_FALSE)
                }
                Err(e @ HornError::WindowOverflow(_)) => Err(CliError::Resource(e.to_string())),
                Err(e) => Err(input(e)),
            }
        }
        Command::FromWords { positives, negatives, mode } => {
            let positives: Vec<&String> = positives.iter().filter(|w| !w.is_empty()).collect();
            let negatives: Vec<&String> = negatives.iter().filter(|w| !w.is_empty()).collect();
            if positives.is_empty() {
                return Err(input("at least one positive word is required"));
            }
            let to_instance = |w: &str, name: String| -> Result<DataInstance, CliError> {
                let facts: Vec<(String, usize)> = w.chars().enumerate().map(|(i, c)| (c.to_string(), i + 1)).collect();
                instance(name, &facts).map_err(|e| input(format!("word `{w}`: {e}")))
            };
            let pos = positives.iter().enumerate().map(|(i, w)| to_instance(w, format!("p{}", i + 1))).collect::<Result<Vec<_>, _>>()?;
            let neg = negatives.iter().enumerate().map(|(i, w)| to_instance(w, format!("n{}", i + 1))).collect::<Result<Vec<_>, _>>()?;
            let e = ExampleSet::new(pos, neg);
            let sig = Signature::new(e.signature()).map_err(input)?;
            let models = |ds: &[DataInstance]| ds.iter().map(LassoModel::from_data).collect::<Vec<_>>();
            let (cls, opts) = match mode {
                WordMode::Subsequence => (
                    QueryClass::PathDiamond,
                    DpOptions { nonempty_steps: true, max_initial_block: Some(1), ..DpOptions::default() },
                ),
                WordMode::Subword => (
                    QueryClass::PathDiamondCircBlocks,
                    DpOptions {
                        nonempty_steps: true,
                        max_initial_block: Some(1),
                        max_blocks: Some(1),
                        ..DpOptions::default()
                    },
                ),
            };
            let v = dp_path(&models(&e.positives), &models(&e.negatives), &sig, cls, &opts).map_err(qbe_error)?;
            if let Some(w) = &v.witness {
                if !crate::qbe::separates(&e, &Ontology::None, w).map_err(qbe_error)? {
                    return Err(input(format!("internal error: witness `{w}` does not separate")));
                }
            }
            print_json(&VerdictJson {
                format: FORMAT,
                separable: v.separable,
                witness: v.witness.as_ref().map(ToString::to_string),
                note: None,
                stats: v.stats.clone(),
            });
            Ok(if v.separable { EXIT_TRUE } else { EXIT_FALSE })
        }
    }
}
