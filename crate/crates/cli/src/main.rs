//! `uposet`: embeds finite posets into the universal orders, runs the property
//! suites, answers single order queries, and writes figures.
//!
//! Every command prints one JSON document (keys sorted) on standard output,
//! except `figures`, which writes files. The exit code is 0 exactly when the
//! command's checks pass.

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use uposet_core::convex::{self, ConvexPolygon};
use uposet_core::generic::{self, PElement, SurrealOrder};
use uposet_core::grammar::{self, GTree};
use uposet_core::hfset::HfSet;
use uposet_core::intervals::{self, IntervalSet};
use uposet_core::paths::{self, BlockLibrary, OrientedPath, Plank};
use uposet_core::periodic::{self, PeriodicSet};
use uposet_core::poset::{is_embedding, ByLeq, EmbeddingReport, FinitePoset};
use uposet_core::suite;
use uposet_core::vectors;
use uposet_core::words::{self, AntichainSet, WordOrder};

/// Largest poset accepted by the word-based targets without `--allow-exponential`.
const WORD_TARGET_LIMIT: usize = 12;

/// Largest poset accepted by the generic target without `--allow-exponential`;
/// the text of each image nests every earlier image.
const GENERIC_TARGET_LIMIT: usize = 7;

#[derive(Parser)]
#[command(name = "uposet", version, about = "Universal partial orders: embeddings, decision procedures and property suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Words,
    Intervals,
    Convex,
    Grammar,
    Vectors,
    Periodic,
    Paths,
    Generic,
}

#[derive(Subcommand)]
enum Command {
    /// Embed a poset (JSON `{"n", "covers"}` with 1-based covers, or DOT) and certify the images.
    Embed {
        #[arg(long, value_enum)]
        target: Target,
        /// Poset file; `.dot` files are read as DOT, everything else as JSON.
        #[arg(long)]
        input: PathBuf,
        /// Use the quadratic vector embedding instead of going through words (vectors target).
        #[arg(long)]
        direct: bool,
        /// Allow word images above 12 elements and generic images above 7 elements (both grow exponentially).
        #[arg(long)]
        allow_exponential: bool,
    },
    /// Run the property suites.
    Verify {
        /// Run only this suite.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Write figure files (Hasse DOT, polygon SVG, path DOT, word tree DOT).
    Figures {
        /// Poset to draw; defaults to the four-element example poset.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value = "figures")]
        out: PathBuf,
    },
    /// Decide whether an oriented path (over `>` and `<`) maps homomorphically to another.
    Hom {
        from: String,
        to: String,
        /// Require the initial vertex to map to the initial vertex.
        #[arg(long)]
        rooted: bool,
    },
    /// Decide whether one grammar word rewrites to another (`v`/`↓`, `^`/`↑`, `0`, `1`).
    Derives { from: String, to: String },
    /// Decide whether a strict pair of antichains (JSON arrays of words) is a gap.
    Gaps {
        lower: String,
        upper: String,
        /// Also run the bounded search with this word-length bound.
        #[arg(long)]
        check: Option<usize>,
    },
    /// A set of intervals strictly between two interval sets (JSON `[["lo","hi"], ...]`).
    Densify { lower: String, upper: String },
    /// The witness word of a set of elements (1-based, comma separated).
    Witness {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_delimiter = ',')]
        set: Vec<usize>,
    },
    /// Sort elements of the generic order (hereditarily finite set texts) by the surreal order.
    SurrealSort { elements: Vec<String> },
    /// Check whether a hereditarily finite set is an element of the generic order.
    Valid { set: String },
    /// Compare two elements of the generic order.
    Leq { a: String, b: String },
    /// Restrict a periodic set (signature) to a smaller power-of-two period.
    Restrict { signature: String, period: usize },
    /// Check the block library properties.
    VerifyBlocks {
        /// Block library file; defaults to the shipped library.
        #[arg(long)]
        library: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((doc, ok)) => {
            if !doc.is_null() {
                // A closed pipe on stdout is not an error for a report printer.
                let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(&doc).expect("JSON values serialize"));
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_poset(path: &Path) -> Result<FinitePoset> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let poset = if path.extension().is_some_and(|e| e == "dot") { FinitePoset::from_dot(&text) } else { FinitePoset::from_json(&text) };
    poset.with_context(|| format!("parsing {}", path.display()))
}

fn report_json(report: &EmbeddingReport) -> Value {
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| json!({ "i": v.i + 1, "j": v.j + 1, "expected": v.expected, "observed": v.observed }))
        .collect();
    json!({ "ok": report.ok, "violations": violations })
}

fn words_json(a: &AntichainSet) -> Value {
    json!(a.to_strings())
}

fn intervals_json(a: &IntervalSet) -> Value {
    serde_json::from_str(&a.to_json()).expect("interval sets serialize to JSON")
}

fn hull_leq(a: &Option<ConvexPolygon>, b: &Option<ConvexPolygon>) -> bool {
    match (a, b) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(x), Some(y)) => convex::convex_leq(x, y),
    }
}

fn cmd_embed(target: Target, input: &Path, direct: bool, allow_exponential: bool) -> Result<(Value, bool)> {
    let p = read_poset(input)?;
    let uses_words = !matches!(target, Target::Generic) && !(target == Target::Vectors && direct);
    if uses_words && p.len() > WORD_TARGET_LIMIT && !allow_exponential {
        bail!("word images of a {}-element poset need up to 2^{} words; pass --allow-exponential", p.len(), p.len() - 1);
    }
    if target == Target::Generic && p.len() > GENERIC_TARGET_LIMIT && !allow_exponential {
        bail!("generic images of a {}-element poset have exponentially long text; pass --allow-exponential", p.len());
    }
    let psi = if uses_words { words::psi_embed(&p) } else { Vec::new() };
    let (images, report): (Vec<Value>, EmbeddingReport) = match target {
        Target::Words => (psi.iter().map(words_json).collect(), is_embedding(&p, &psi, &WordOrder)?),
        Target::Intervals => {
            let imgs: Vec<IntervalSet> = psi.iter().map(intervals::embed_words).collect();
            (imgs.iter().map(intervals_json).collect(), is_embedding(&p, &imgs, &intervals::IntervalOrder)?)
        }
        Target::Convex => {
            let imgs: Vec<Option<ConvexPolygon>> = psi
                .iter()
                .map(|a| {
                    let ivs = intervals::embed_words(a);
                    if ivs.is_empty() {
                        Ok(None)
                    } else {
                        convex::embed_intervals(&ivs).map(Some)
                    }
                })
                .collect::<std::result::Result<_, _>>()?;
            let json_imgs = imgs
                .iter()
                .map(|h| match h {
                    Some(h) => serde_json::from_str(&h.to_json()).expect("polygons serialize to JSON"),
                    None => json!([]),
                })
                .collect();
            (json_imgs, is_embedding(&p, &imgs, &ByLeq(hull_leq))?)
        }
        Target::Grammar => {
            let imgs: Vec<GTree> = psi.iter().map(grammar::embed_words).collect();
            (imgs.iter().map(|t| json!(t.to_string())).collect(), is_embedding(&p, &imgs, &grammar::GrammarOrder)?)
        }
        Target::Vectors => {
            let imgs: Vec<vectors::VectorSet> = if direct { vectors::psi_prime(&p) } else { psi.iter().map(vectors::embed_words).collect() };
            let json_imgs = imgs.iter().map(|v| serde_json::from_str(&v.to_json()).expect("vector sets serialize")).collect();
            (json_imgs, is_embedding(&p, &imgs, &vectors::VectorOrder)?)
        }
        Target::Periodic => {
            let imgs: Vec<PeriodicSet> = psi.iter().map(periodic::embed_words).collect();
            (imgs.iter().map(|s| json!(s.to_string())).collect(), is_embedding(&p, &imgs, &periodic::PeriodicOrder)?)
        }
        Target::Paths => {
            let imgs: Vec<OrientedPath> = psi.iter().map(|a| paths::embed_s_to_p(&periodic::embed_words(a))).collect();
            let order = ByLeq(|a: &OrientedPath, b: &OrientedPath| paths::hom_exists(a, b).is_some());
            (imgs.iter().map(|q| json!(q.to_string())).collect(), is_embedding(&p, &imgs, &order)?)
        }
        Target::Generic => {
            let imgs = generic::embed_poset_online(&p);
            (imgs.iter().map(|e| json!(e.to_string())).collect(), is_embedding(&p, &imgs, &generic::GenericOrder)?)
        }
    };
    let mut doc = report_json(&report);
    doc["images"] = Value::Array(images);
    doc["target"] = json!(format!("{target:?}").to_lowercase());
    Ok((doc, report.ok))
}

fn cmd_verify(suite_name: Option<String>, seed: u64) -> Result<(Value, bool)> {
    let reports = match suite_name {
        Some(name) => vec![suite::run_suite(&name, seed)?],
        None => suite::run_all(seed),
    };
    let passed = reports.iter().all(|r| r.passed);
    let doc = json!({ "seed": seed, "passed": passed, "suites": reports.iter().map(|r| r.to_json_value()).collect::<Vec<_>>() });
    Ok((doc, passed))
}

/// The four-element poset `2 < 1 < 3`, `2 < 4 < 3`.
fn example_poset() -> FinitePoset {
    FinitePoset::from_covers(4, &[(1, 0), (0, 2), (1, 3), (3, 2)]).expect("acyclic covers")
}

fn cmd_figures(input: Option<PathBuf>, out: &Path) -> Result<(Value, bool)> {
    let p = match input {
        Some(path) => read_poset(&path)?,
        None => example_poset(),
    };
    std::fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let psi = words::psi_embed(&p);
    let polygons: Vec<ConvexPolygon> = psi
        .iter()
        .map(intervals::embed_words)
        .filter(|ivs| !ivs.is_empty())
        .map(|ivs| convex::embed_intervals(&ivs))
        .collect::<std::result::Result<_, _>>()?;
    let pbar = paths::build_pbar(&"0110".parse()?)?;
    let mut written = Vec::new();
    let mut write = |name: &str, body: String| -> Result<()> {
        let path = out.join(name);
        std::fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
        written.push(name.to_string());
        Ok(())
    };
    write("hasse.dot", p.to_dot())?;
    write("polygons.svg", convex::polygons_svg(&polygons))?;
    write("pbar_0110.dot", pbar.to_dot("pbar_0110"))?;
    let union = words::min_words(psi.iter().flat_map(|a| a.words()));
    write("word_tree.dot", words::tree_dot(&union))?;
    Ok((json!({ "directory": out.display().to_string(), "files": written }), true))
}

fn cmd_hom(from: &str, to: &str, rooted: bool) -> Result<(Value, bool)> {
    let (p, q) = (OrientedPath::parse(from)?, OrientedPath::parse(to)?);
    let map = if rooted { paths::plank_hom_exists(&Plank { path: p }, &Plank { path: q }) } else { paths::hom_exists(&p, &q) };
    Ok((json!({ "exists": map.is_some(), "mapping": map, "rooted": rooted }), true))
}

fn parse_antichain(text: &str) -> Result<AntichainSet> {
    AntichainSet::from_json(text).with_context(|| format!("parsing antichain {text}"))
}

fn cmd_gaps(lower: &str, upper: &str, check: Option<usize>) -> Result<(Value, bool)> {
    let (a, b) = (parse_antichain(lower)?, parse_antichain(upper)?);
    let gap = words::is_gap(&a, &b)?;
    let middle = words::gap_middle(&a, &b)?;
    let mut doc = json!({ "gap": gap, "middle": middle.as_ref().map(words_json) });
    let mut ok = true;
    if let Some(bound) = check {
        let verdict = words::gap_oracle(&a, &b, bound)?;
        ok = verdict.gap == gap;
        doc["search"] = json!({ "bound": bound, "gap": verdict.gap, "middle": verdict.searched_middle.as_ref().map(words_json) });
    }
    Ok((doc, ok))
}

fn cmd_densify(lower: &str, upper: &str) -> Result<(Value, bool)> {
    let (a, b) = (IntervalSet::from_json(lower)?, IntervalSet::from_json(upper)?);
    let m = intervals::densify(&a, &b)?;
    let ok = m != a && m != b && intervals::interval_leq(&a, &m) && intervals::interval_leq(&m, &b);
    Ok((json!({ "middle": intervals_json(&m), "strictly_between": ok }), ok))
}

fn cmd_witness(input: &Path, set: &[usize]) -> Result<(Value, bool)> {
    let p = read_poset(input)?;
    let zero_based: Vec<usize> = set
        .iter()
        .map(|&i| if i == 0 { bail!("elements are numbered from 1") } else { Ok(i - 1) })
        .collect::<Result<_>>()?;
    let w = words::witness_word(&p, &zero_based)?;
    Ok((json!({ "word": w.to_string() }), true))
}

fn parse_element(text: &str) -> Result<PElement> {
    let set: HfSet = text.parse().with_context(|| format!("parsing set {text}"))?;
    Ok(PElement::new(set)?)
}

fn cmd_surreal_sort(elements: &[String]) -> Result<(Value, bool)> {
    let mut items: Vec<PElement> = elements.iter().map(|s| parse_element(s)).collect::<Result<_>>()?;
    let mut order = SurrealOrder::new();
    order.sort(&mut items);
    let ties = items.windows(2).filter(|w| order.same_value(w[0], w[1])).count();
    Ok((json!({ "sorted": items.iter().map(|e| e.to_string()).collect::<Vec<_>>(), "equal_value_neighbors": ties }), true))
}

fn cmd_valid(text: &str) -> Result<(Value, bool)> {
    let set: HfSet = text.parse()?;
    let issue = generic::validity_issue(set);
    let level = issue.is_none().then(|| PElement::new(set).map(PElement::level)).transpose()?;
    Ok((json!({ "valid": issue.is_none(), "issue": issue.map(|i| i.to_string()), "level": level }), true))
}

fn cmd_leq(a: &str, b: &str) -> Result<(Value, bool)> {
    let (x, y) = (parse_element(a)?, parse_element(b)?);
    Ok((
        json!({
            "leq": generic::leq_in(x, y),
            "strict": generic::lt_in(x, y),
            "witness": generic::witness(x, y).map(|w| w.to_string()),
            "surreal_leq": generic::leq_surreal(x, y),
        }),
        true,
    ))
}

fn cmd_restrict(signature: &str, period: usize) -> Result<(Value, bool)> {
    let s = PeriodicSet::parse(signature)?;
    let r = periodic::restrict(&s, period)?;
    Ok((json!({ "input": s.to_string(), "period": period, "restricted": r.to_string() }), true))
}

fn cmd_verify_blocks(library: Option<PathBuf>) -> Result<(Value, bool)> {
    let owned;
    let lib = match library {
        Some(path) => {
            let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            owned = BlockLibrary::parse(&text)?;
            &owned
        }
        None => BlockLibrary::shipped(),
    };
    let report = paths::verify_blocks(lib);
    let mut doc = serde_json::to_value(&report)?;
    doc["ok"] = json!(report.ok());
    Ok((doc, report.ok()))
}

fn run(command: Command) -> Result<(Value, bool)> {
    match command {
        Command::Embed { target, input, direct, allow_exponential } => cmd_embed(target, &input, direct, allow_exponential),
        Command::Verify { suite, seed } => cmd_verify(suite, seed),
        Command::Figures { input, out } => cmd_figures(input, &out),
        Command::Hom { from, to, rooted } => cmd_hom(&from, &to, rooted),
        Command::Derives { from, to } => {
            let (a, b): (GTree, GTree) = (from.parse()?, to.parse()?);
            Ok((json!({ "derives": grammar::derives(&a, &b) }), true))
        }
        Command::Gaps { lower, upper, check } => cmd_gaps(&lower, &upper, check),
        Command::Densify { lower, upper } => cmd_densify(&lower, &upper),
        Command::Witness { input, set } => cmd_witness(&input, &set),
        Command::SurrealSort { elements } => cmd_surreal_sort(&elements),
        Command::Valid { set } => cmd_valid(&set),
        Command::Leq { a, b } => cmd_leq(&a, &b),
        Command::Restrict { signature, period } => cmd_restrict(&signature, period),
        Command::VerifyBlocks { library } => cmd_verify_blocks(library),
    }
}
