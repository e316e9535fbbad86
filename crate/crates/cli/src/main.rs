use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use moncoh::analyzer::{hilbert_series_report, local_cohomology_table, radical_compare, compare_with_cech};
use moncoh::bits;
use moncoh::cech::{default_k_cap, k_buchsbaum_index};
use moncoh::characterizations::{check_dim2, dim3_clauses};
use moncoh::construct::exponent_search;
use moncoh::corpus::{random_corpus, CorpusConfig};
use moncoh::io::{parse_ideal, print_document, IdealDocument};
use moncoh::report::{analyze, IdealSummary};
use moncoh::{Error, FieldSpec};

#[derive(Parser)]
#[command(name = "moncoh", version, about = "Local cohomology of monomial quotient rings")]
struct Cli {
    /// Coefficient field: `q` or `gf:<p>`. Defaults to the file's `field` line, then `q`.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads.
    #[arg(long, global = true, value_name = "THREADS")]
    parallel: Option<usize>,
    /// Seed for random corpora.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full local cohomology table, invariants and checks.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Generalized Cohen-Macaulay verdict.
    CheckGcm { file: PathBuf },
    /// Dimension-2 combinatorial test against homology.
    CheckDim2 { file: PathBuf },
    /// Dimension-3 combinatorial test against homology.
    CheckDim3 { file: PathBuf },
    /// Multigraded Hilbert series of each H^i.
    Hilbert { file: PathBuf },
    /// Compare S/I with S/rad(I) in degrees with no positive coordinate.
    RadicalCompare { file: PathBuf },
    /// Apply x_j -> x_j^{a_j} and print the resulting ideal.
    Frobenius {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        exps: Vec<i64>,
    },
    /// Enumerate exponent assignments of a square-free seed.
    Search {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        bound: u32,
        #[arg(long, default_value_t = 1)]
        tuples: usize,
    },
    /// Minimal k with m^k H^i = 0 for all i below the dimension.
    KIndex {
        file: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Degree-complex homology against the Čech complex, on a file or `random`.
    OracleCompare {
        target: String,
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

enum Failure {
    Input(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_theorem_violation() {
            Failure::Violation(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = Result<String, Failure>;

fn load(path: &PathBuf) -> Result<IdealDocument, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_ideal(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn field_for(cli: &Cli, doc: Option<&IdealDocument>) -> Result<FieldSpec, Failure> {
    match &cli.field {
        Some(f) => f.parse().map_err(|e: Error| Failure::Input(e.to_string())),
        None => Ok(doc.and_then(|d| d.field).unwrap_or_default()),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Analyze { file, cap } => {
            let doc = load(file)?;
            let field = field_for(cli, Some(&doc))?;
            let report = analyze(&doc, field, *cap)?;
            Ok(if cli.json { report.to_json() } else { report.render_text() })
        }
        Command::CheckGcm { file } => {
            let doc = load(file)?;
            let field = field_for(cli, Some(&doc))?;
            let t = local_cohomology_table(&doc.ideal, field);
            let gcm = t.is_generalized_cm();
            Ok(if cli.json {
                pretty(&json!({ "gcm": gcm, "dim": t.d, "depth": t.depth(), "field": field }))
            } else {
                format!("generalized CM: {gcm} (dim {}, depth {}, field {field})", t.d, t.depth())
            })
        }
        Command::CheckDim2 { file } => {
            let doc = load(file)?;
            let field = field_for(cli, Some(&doc))?;
            let comb = check_dim2(&doc.ideal)?;
            let hom = local_cohomology_table(&doc.ideal, field).is_generalized_cm();
            both_paths(cli, 2, comb, hom, Value::Null)
        }
        Command::CheckDim3 { file } => {
            let doc = load(file)?;
            let field = field_for(cli, Some(&doc))?;
            let clauses = dim3_clauses(&doc.ideal)?;
            let hom = local_cohomology_table(&doc.ideal, field).is_generalized_cm();
            let detail = json!({
                "vertex_condition": clauses.vertices.holds(),
                "connectivity_condition": clauses.bipartition_witness.is_none(),
                "edge_condition": clauses.edges.holds(),
            });
            both_paths(cli, 3, clauses.holds(), hom, detail)
        }
        Command::Hilbert { file } => {
            let doc = load(file)?;
            let field = field_for(cli, Some(&doc))?;
            let h = hilbert_series_report(&local_cohomology_table(&doc.ideal, field));
            if cli.json {
                let mut out = serde_json::Map::new();
                for (i, groups) in &h.by_index {
                    let gs: Vec<Value> = groups
                        .iter()
                        .map(|g| {
                            json!({
                                "F": bits::one_based(g.face),
                                "terms": g.terms.iter().map(|(c, e)| json!({"coeff": c, "exp": e})).collect::<Vec<_>>(),
                                "series": g.render(),
                            })
                        })
                        .collect();
                    out.insert(i.to_string(), Value::Array(gs));
                }
                Ok(pretty(&Value::Object(out)))
            } else {
                Ok(h.to_string().trim_end().to_string())
            }
        }
        Command::RadicalCompare { file } => {
            let doc = load(file)?;
            let field = field_for(cli, Some(&doc))?;
            let r = radical_compare(&doc.ideal, field)?;
            Ok(if cli.json {
                pretty(&json!({
                    "compared": r.compared,
                    "gcm": r.gcm,
                    "radical_gcm": r.radical_gcm,
                    "cm": r.cm,
                    "radical_cm": r.radical_cm,
                }))
            } else {
                format!(
                    "{} pieces with H_a empty agree with the radical\ngeneralized CM: {} (radical {})\nCohen-Macaulay: {} (radical {})",
                    r.compared, r.gcm, r.radical_gcm, r.cm, r.radical_cm
                )
            })
        }
        Command::Frobenius { file, exps } => {
            let doc = load(file)?;
            let image = doc.ideal.frobenius_transform(exps)?;
            let mut out = IdealDocument::from_ideal(&image);
            out.field = doc.field;
            Ok(if cli.json {
                pretty(&json!({ "ideal": IdealSummary::new(&image, None) }))
            } else {
                print_document(&out).trim_end().to_string()
            })
        }
        Command::Search { file, bound, tuples } => {
            let doc = load(file)?;
            let field = field_for(cli, Some(&doc))?;
            let result = exponent_search(&doc.ideal, *bound, *tuples, field)?;
            if let Some(v) = result.disagreements().next() {
                return Err(Failure::Violation(format!(
                    "characterization disagrees with homology on {}",
                    v.ideal
                )));
            }
            let positives: Vec<String> = {
                let mut p: Vec<String> = result.positives().map(|v| v.ideal.to_string()).collect();
                p.sort();
                p.dedup();
                p
            };
            Ok(if cli.json {
                let verdicts: Vec<Value> = result
                    .verdicts
                    .iter()
                    .map(|v| {
                        json!({
                            "assignment": v.assignment.tuples,
                            "ideal": v.ideal.to_string(),
                            "gcm": v.homological,
                            "combinatorial": v.combinatorial,
                        })
                    })
                    .collect();
                pretty(&json!({
                    "assignments": result.verdicts.len(),
                    "classes": result.classes,
                    "positives": result.positives().count(),
                    "verdicts": verdicts,
                }))
            } else {
                let mut s = format!(
                    "{} assignments, {} symmetry classes, {} generalized CM ({} distinct ideals)",
                    result.verdicts.len(),
                    result.classes,
                    result.positives().count(),
                    positives.len()
                );
                for p in positives {
                    s.push_str(&format!("\n  {p}"));
                }
                s
            })
        }
        Command::KIndex { file, cap } => {
            let doc = load(file)?;
            let field = field_for(cli, Some(&doc))?;
            let cap = cap.unwrap_or_else(|| default_k_cap(&doc.ideal));
            let k = k_buchsbaum_index(&doc.ideal, field, cap)?;
            Ok(if cli.json { pretty(&json!({ "k_index": k, "cap": cap })) } else { k.to_string() })
        }
        Command::OracleCompare { target, count } => {
            let (ideals, field) = if target == "random" {
                (random_corpus(cli.seed, *count, &CorpusConfig::default()), field_for(cli, None)?)
            } else {
                let doc = load(&PathBuf::from(target))?;
                let field = field_for(cli, Some(&doc))?;
                (vec![doc.ideal], field)
            };
            let mut matched = 0;
            let mut first_bad = None;
            for ideal in &ideals {
                let c = compare_with_cech(ideal, field);
                if c.is_match() {
                    matched += 1;
                } else if first_bad.is_none() {
                    first_bad = Some((ideal.clone(), c.mismatches[0].0.clone()));
                }
            }
            let line = format!("{matched}/{} degreewise matches", ideals.len());
            if let Some((ideal, rep)) = first_bad {
                return Err(Failure::Violation(format!("{line}; first mismatch {ideal} at {rep}")));
            }
            Ok(if cli.json {
                pretty(&json!({ "matched": matched, "total": ideals.len(), "field": field }))
            } else {
                line
            })
        }
    }
}

fn both_paths(cli: &Cli, dim: usize, comb: bool, hom: bool, detail: Value) -> Outcome {
    let text = if cli.json {
        pretty(&json!({ "dim": dim, "combinatorial": comb, "homological": hom, "clauses": detail }))
    } else {
        format!("dimension-{dim} characterization: {comb}\nhomological generalized CM: {hom}")
    };
    if comb != hom {
        return Err(Failure::Violation(format!("{text}\npaths disagree")));
    }
    Ok(text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.parallel {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            match writeln!(stdout, "{out}") {
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
                _ => ExitCode::SUCCESS,
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("internal inconsistency: {msg}");
            ExitCode::from(1)
        }
    }
}
