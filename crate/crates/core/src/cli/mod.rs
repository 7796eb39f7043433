//! Command-line front end: argument parsing, dispatch to the library,
//! JSON output and the result cache.

pub mod cache;
pub mod json;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::bstree::TreeBuilder;
use crate::defect::{self, CharacterCache};
use crate::error::{Error, Result};
use crate::exactalg::Field;
use crate::hecke::KlTable;
use crate::momentgraph::MomentGraph;
use crate::rootsys::{CartanDatum, CartanType};
use crate::weyl::{GroupElement, WeylGroup, Word};

pub use cache::Cache;

#[derive(Parser, Debug)]
#[command(name = "bsdefect", version, about = "Defects and decompositions of Bott-Samelson sheaves on moment graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Cartan matrix, simple and positive roots.
    Roots,
    /// Elements of a lower Bruhat interval (or the whole finite group).
    Group,
    /// GKM check of the moment graph on a lower interval.
    Gkm,
    /// The tree T(s, x) with its maximal paths.
    Tree,
    /// Graded rank of the stalk B(s)^x.
    Grk,
    /// The matrix Φ(s, x).
    Phi,
    /// Defect of the projection at x.
    Defect,
    /// Decomposition of B(s) into shifted B(z).
    Decompose,
    /// Braden-MacPherson character of B(w), or Bott-Samelson character of B(s).
    Character,
    /// Kazhdan-Lusztig basis element.
    Kl,
    /// Number of n-reachable elements of a finite Weyl group.
    Census,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Roots => "roots",
            Command::Group => "group",
            Command::Gkm => "gkm",
            Command::Tree => "tree",
            Command::Grk => "grk",
            Command::Phi => "phi",
            Command::Defect => "defect",
            Command::Decompose => "decompose",
            Command::Character => "character",
            Command::Kl => "kl",
            Command::Census => "census",
        }
    }
}

#[derive(Args, Debug, Clone, Default)]
pub struct Options {
    /// Cartan type letter (A-G).
    #[arg(long = "type", global = true, default_value = "A")]
    pub kind: String,
    #[arg(long, global = true)]
    pub rank: Option<usize>,
    /// Use the affine Weyl group.
    #[arg(long, global = true)]
    pub affine: bool,
    /// Field characteristic: 0 or an odd prime.
    #[arg(long = "char", global = true, default_value_t = 0)]
    pub characteristic: u64,
    /// Comma separated simple indices, e.g. 1,2,1.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub word: Option<String>,
    /// Group element given by a word.
    #[arg(long, global = true)]
    pub x: Option<String>,
    #[arg(long, global = true)]
    pub n: Option<u64>,
    #[arg(long, global = true, env = "CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Accept non-reduced words in `decompose` (experimental).
    #[arg(long, global = true)]
    pub allow_nonreduced: bool,
    /// Recompute cache hits and fail if they differ.
    #[arg(long, global = true)]
    pub verify_cache: bool,
    /// Include a Graphviz rendering in `tree` output.
    #[arg(long, global = true)]
    pub dot: bool,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub kind: CartanType,
    pub rank: usize,
    pub affine: bool,
    pub field: Field,
    pub word: Option<String>,
    pub x: Option<String>,
    pub n: Option<u64>,
    pub cache_dir: Option<PathBuf>,
    pub threads: Option<usize>,
    pub pretty: bool,
    pub allow_nonreduced: bool,
    pub verify_cache: bool,
    pub dot: bool,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<RunConfig> {
        let o = &cli.options;
        let rank = o.rank.ok_or_else(|| Error::Parse("missing --rank".into()))?;
        Ok(RunConfig {
            command: cli.command,
            kind: CartanType::parse(&o.kind)?,
            rank,
            affine: o.affine,
            field: Field::new(o.characteristic)?,
            word: o.word.clone(),
            x: o.x.clone(),
            n: o.n,
            cache_dir: o.cache_dir.clone(),
            threads: o.threads,
            pretty: o.pretty,
            allow_nonreduced: o.allow_nonreduced,
            verify_cache: o.verify_cache,
            dot: o.dot,
        })
    }

    /// The semantic inputs of a run; never includes paths or thread counts.
    pub fn cache_key(&self) -> Value {
        json!({
            "type": self.kind.to_string(),
            "rank": self.rank,
            "affine": self.affine,
            "char": self.field.characteristic(),
            "command": self.command.name(),
            "word": self.word,
            "x": self.x,
            "n": self.n,
            "allow_nonreduced": self.allow_nonreduced,
            "dot": self.dot,
        })
    }
}

struct Context {
    group: WeylGroup,
    field: Field,
}

impl Context {
    fn word(&self, config: &RunConfig) -> Result<Word> {
        let text = config.word.as_deref().ok_or_else(|| Error::Parse("missing --word".into()))?;
        self.group.parse_word(text)
    }

    fn element(&self, config: &RunConfig) -> Result<GroupElement> {
        let text = config.x.as_deref().ok_or_else(|| Error::Parse("missing --x".into()))?;
        Ok(self.group.ev_word(&self.group.parse_word(text)?))
    }

    /// `--x` if given, otherwise the Demazure product of `--word`.
    fn top(&self, config: &RunConfig) -> Result<GroupElement> {
        if config.x.is_some() {
            self.element(config)
        } else {
            Ok(self.group.demazure_product(&self.word(config)?))
        }
    }
}

/// Runs one command and returns its JSON result.
pub fn dispatch(config: &RunConfig) -> Result<Value> {
    let datum = CartanDatum::new(config.kind, config.rank, config.affine)?;
    let cx = Context { group: WeylGroup::new(datum), field: config.field };
    let g = &cx.group;
    let field = cx.field;
    let out = match config.command {
        Command::Roots => {
            let d = g.datum();
            let simple: Vec<String> = d.affine_simple_system().iter().map(|a| a.to_string()).collect();
            let positive: Vec<String> =
                d.positive_roots().iter().map(|r| d.affine_root(r.clone(), 0).to_string()).collect();
            json!({
                "type": config.kind.to_string(),
                "rank": config.rank,
                "affine": config.affine,
                "cartan": d.cartan_matrix(),
                "simple": simple,
                "positive": positive,
                "highest": d.affine_root(d.highest_root().to_vec(), 0).to_string(),
            })
        }
        Command::Group => {
            let elements = if config.x.is_some() || config.word.is_some() {
                g.bruhat_interval(&cx.top(config)?)
            } else {
                g.finite_elements()?
            };
            let list: Vec<Value> = elements.iter().map(json::element).collect();
            json!({ "count": list.len(), "elements": list })
        }
        Command::Gkm => {
            let w = cx.top(config)?;
            let graph = MomentGraph::interval(g, &w, field)?;
            let mut out = json::gkm(&graph);
            out["top"] = json::element(&w);
            out
        }
        Command::Tree => {
            let tree = TreeBuilder::new(g, &cx.word(config)?).build(&cx.element(config)?)?;
            json::tree(&tree, config.dot)
        }
        Command::Grk => {
            let (word, x) = (cx.word(config)?, cx.element(config)?);
            let grk = TreeBuilder::new(g, &word).build(&x)?.graded_rank();
            json!({ "word": word.to_string(), "x": json::element(&x), "grk": json::laurent(&grk) })
        }
        Command::Phi => {
            let (word, x) = (cx.word(config)?, cx.element(config)?);
            let phi = defect::phi_matrix(g, &word, &x, field)?;
            json!({ "word": word.to_string(), "x": json::element(&x), "field": field.to_string(), "phi": json::phi(&phi) })
        }
        Command::Defect => {
            let (word, x) = (cx.word(config)?, cx.element(config)?);
            let d = defect::defect_at(g, &word, &x, field)?;
            json!({ "word": word.to_string(), "x": json::element(&x), "field": field.to_string(), "defect": json::laurent(&d) })
        }
        Command::Decompose => {
            let word = cx.word(config)?;
            let d = defect::decompose(g, &word, field, config.allow_nonreduced)?;
            let mut out = json!({
                "word": word.to_string(),
                "field": field.to_string(),
                "decomposition": json::decomposition(&d),
            });
            if g.ev_word(&word).length() != word.len() {
                out["experimental"] = json!(true);
            }
            out
        }
        Command::Character => {
            if config.x.is_some() {
                let w = cx.element(config)?;
                let ranks = defect::bm_character(g, &w, &mut CharacterCache::new(field))?;
                let h = defect::normalized_character(&ranks, w.length());
                json!({ "w": json::element(&w), "field": field.to_string(), "character": json::hecke(&h) })
            } else {
                let word = cx.word(config)?;
                let ranks = defect::bs_graded_ranks(g, &word)?;
                let h = defect::normalized_character(&ranks, word.len());
                json!({ "word": word.to_string(), "character": json::hecke(&h) })
            }
        }
        Command::Kl => {
            let w = cx.element(config)?;
            let h = KlTable::new().element(g, &w);
            json!({ "w": json::element(&w), "kl": json::hecke(&h) })
        }
        Command::Census => {
            let n = config.n.ok_or_else(|| Error::Parse("missing --n".into()))?;
            let count = defect::census(g, n)?;
            json!({ "type": config.kind.to_string(), "rank": config.rank, "n": n, "count": count })
        }
    };
    Ok(out)
}

/// `dispatch` behind the cache when a cache directory is configured.
pub fn execute(config: &RunConfig) -> Result<Value> {
    let Some(dir) = &config.cache_dir else { return dispatch(config) };
    let cache = Cache::new(dir);
    let key = config.cache_key();
    if let Some(hit) = cache.get(&key)? {
        if !config.verify_cache {
            return Ok(hit);
        }
        let fresh = dispatch(config)?;
        if fresh != hit {
            return Err(Error::InternalInvariant(format!(
                "cache entry {} differs from recomputation",
                cache.path_for(&key).display()
            )));
        }
        return Ok(fresh);
    }
    let value = dispatch(config)?;
    cache.put(&key, &value)?;
    Ok(value)
}

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NonGkmInput { .. } => 2,
        _ => 1,
    }
}

pub fn error_json(e: &Error) -> Value {
    json!({ "error": e.kind(), "message": e.to_string() })
}

pub fn render(value: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(value).expect("JSON values always serialize")
    } else {
        value.to_string()
    }
}
