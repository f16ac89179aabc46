use std::fs;
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use oak_core::assessment::{foca_score, grade, repository_report, FocaGoals, FocaInput};
use oak_core::browser::service::{serve, AppState};
use oak_core::browser::{search, KnowledgeCard, SearchOutcome};
use oak_core::kmap::{builtin_ontology, Ontology, OntologyDef};
use oak_core::rdf::{parse_turtle, serialize_turtle, snapshot, TripleStore};
use oak_core::repository::{import_kr, new_repository, next_suffix};
use oak_core::sparql::{evaluate, format_results, parse_query_with, ResultFormat};
use oak_core::wrapper::{to_turtle, wrap_json};

#[derive(Parser)]
#[command(name = "oak", version, about = "Ontology-based knowledge maps for mined knowledge")]
struct Cli {
    /// Repository snapshot (Turtle). Created on first import.
    #[arg(long, global = true, default_value = "oak-store.ttl")]
    store: PathBuf,
    /// Ontology definition (JSON). Defaults to the built-in agriculture ontology.
    #[arg(long, global = true)]
    ontology: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Wrap a descriptor into a knowledge representation and print its Turtle.
    Wrap {
        descriptor: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also add the triples to the repository.
        #[arg(long)]
        import: bool,
    },
    /// Grade a descriptor without wrapping it.
    Assess {
        descriptor: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Coverage report over the repository.
    Report {
        #[arg(long)]
        json: bool,
    },
    /// FOCA total quality from per-goal grades.
    Foca(FocaArgs),
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        /// Static files served at the root, e.g. the web UI bundle.
        #[arg(long)]
        ui_dir: Option<PathBuf>,
    },
    /// Keyword search over the repository.
    Search {
        query: String,
        /// Ask a running service instead of reading the store directly.
        #[arg(long)]
        server: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Run a SPARQL query.
    Query {
        text: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value = "tsv")]
        format: ResultFormat,
    },
    /// Add a Turtle file to the repository.
    Import { file: PathBuf },
    /// Validate the ontology and print it.
    Ontology {
        #[arg(long, default_value = "summary")]
        export: String,
    },
}

#[derive(Args)]
struct FocaArgs {
    /// JSON object with arrays G1..G5; null marks an unanswered question.
    grades: PathBuf,
    #[arg(long, default_value_t = 1)]
    lexp: u8,
    #[arg(long, default_value_t = 0)]
    nl: u8,
    #[arg(long, default_value_t = 1)]
    sb: u8,
    #[arg(long, default_value_t = 1)]
    co: u8,
    #[arg(long, default_value_t = 1)]
    re: u8,
    #[arg(long, default_value_t = 1)]
    cp: u8,
}

type Result<T> = std::result::Result<T, String>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_ontology(path: Option<&Path>) -> Result<Ontology> {
    let Some(path) = path else {
        return Ok(builtin_ontology());
    };
    let def: OntologyDef = serde_json::from_str(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    Ontology::from_def(def).map_err(|e| e.to_string())
}

fn load_store(path: &Path, ontology: &Ontology) -> Result<TripleStore> {
    if path.exists() {
        snapshot::load(path).map_err(|e| e.to_string())
    } else {
        Ok(new_repository(ontology))
    }
}

fn save_store(store: &TripleStore, path: &Path) -> Result<()> {
    snapshot::save(store, path).map_err(|e| e.to_string())
}

fn print_card(c: &KnowledgeCard) {
    println!(
        "{}  {}  grade {}",
        c.id,
        c.task.as_deref().unwrap_or("?"),
        c.grade.map_or("-".to_string(), |g| g.to_string())
    );
    if let Some(l) = &c.label {
        println!("  label:      {l}");
    }
    println!("  algorithms: {}", c.algorithms.join(", "));
    let roles = |rs: &[oak_core::browser::RoleCard]| {
        rs.iter()
            .map(|r| {
                let mut s = r.concept.clone().unwrap_or_else(|| r.instance.clone());
                if !r.states.is_empty() {
                    s.push_str(&format!(" = {}", r.states.join("/")));
                }
                s
            })
            .collect::<Vec<_>>()
            .join(", ")
    };
    println!("  conditions: {}", roles(&c.conditions));
    println!("  targets:    {}", roles(&c.targets));
    if let Some(d) = &c.dataset {
        println!("  dataset:    {}", d.name.as_deref().unwrap_or(&d.instance));
    }
    for e in &c.evaluation {
        println!("  evaluation: {} {}", e.metrics.join(", "), e.values.join(", "));
    }
    if !c.locations.is_empty() {
        println!("  locations:  {}", c.locations.join(", "));
    }
    if !c.context.is_empty() {
        println!("  context:    {}", c.context.join(", "));
    }
    if let Some(s) = &c.source {
        if let Some(t) = &s.title {
            println!("  source:     {t}");
        }
    }
}

fn print_outcome(out: &SearchOutcome, json: bool) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(out).map_err(|e| e.to_string())?);
        return Ok(());
    }
    println!("# {} ({} cards)", out.template, out.cards.len());
    for line in out.query.lines() {
        println!("# {line}");
    }
    for c in &out.cards {
        print_card(c);
    }
    Ok(())
}

fn remote_search(server: &str, q: &str) -> Result<SearchOutcome> {
    let url = format!("{}/search", server.trim_end_matches('/'));
    let resp = reqwest::blocking::Client::new()
        .post(&url)
        .json(&serde_json::json!({ "q": q }))
        .send()
        .map_err(|e| format!("{url}: {e}"))?;
    let status = resp.status();
    let body: serde_json::Value = resp.json().map_err(|e| format!("{url}: {e}"))?;
    if !status.is_success() {
        return Err(body["error"].as_str().unwrap_or("request failed").to_string());
    }
    serde_json::from_value(body).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<()> {
    let ontology = load_ontology(cli.ontology.as_deref())?;
    match cli.command {
        Command::Wrap {
            descriptor,
            out,
            import,
        } => {
            let mut store = load_store(&cli.store, &ontology)?;
            let kr = wrap_json(&read(&descriptor)?, &ontology, next_suffix(&store)).map_err(|e| e.to_string())?;
            let ttl = to_turtle(&kr);
            match out {
                Some(path) => fs::write(&path, &ttl).map_err(|e| format!("{}: {e}", path.display()))?,
                None => print!("{ttl}"),
            }
            eprintln!("{}: grade {}", kr.id, kr.grade);
            if import {
                let n = import_kr(&mut store, &kr).map_err(|e| e.to_string())?;
                save_store(&store, &cli.store)?;
                eprintln!("imported {n} triples into {}", cli.store.display());
            }
        }
        Command::Assess { descriptor, json } => {
            let d = oak_core::wrapper::MinedKnowledgeDescriptor::from_json(&read(&descriptor)?)
                .map_err(|e| e.to_string())?;
            let g = grade(&d);
            if json {
                println!("{}", serde_json::to_string_pretty(&g).map_err(|e| e.to_string())?);
            } else {
                println!("{g}");
            }
        }
        Command::Report { json } => {
            let r = repository_report(&load_store(&cli.store, &ontology)?);
            if json {
                println!("{}", serde_json::to_string_pretty(&r).map_err(|e| e.to_string())?);
            } else {
                println!("{r}");
            }
        }
        Command::Foca(a) => {
            let goals: FocaGoals = serde_json::from_str(&read(&a.grades)?).map_err(|e| e.to_string())?;
            let input = FocaInput {
                goals,
                lexp: a.lexp,
                nl: a.nl,
                sb: a.sb,
                co: a.co,
                re: a.re,
                cp: a.cp,
            };
            let s = foca_score(&input).map_err(|e| e.to_string())?;
            for (i, c) in s.coverage.iter().enumerate() {
                match c {
                    Some(v) => println!("G{}  {v:.2}", i + 1),
                    None => println!("G{}  -", i + 1),
                }
            }
            println!("z   {:.4}", s.z);
            println!("mu  {:.10}", s.mu);
        }
        Command::Serve { port, host, ui_dir } => {
            let store = load_store(&cli.store, &ontology)?;
            let state = AppState::new(store, ontology).persisting_to(cli.store.clone());
            let rt = tokio::runtime::Runtime::new().map_err(|e| e.to_string())?;
            rt.block_on(serve(state, SocketAddr::new(host, port), ui_dir, |addr| {
                println!("listening on http://{addr}");
            }))
            .map_err(|e| e.to_string())?;
        }
        Command::Search { query, server, json } => {
            let out = match server {
                Some(s) => remote_search(&s, &query)?,
                None => search(&load_store(&cli.store, &ontology)?, &ontology, &query).map_err(|e| e.to_string())?,
            };
            print_outcome(&out, json)?;
        }
        Command::Query { text, file, format } => {
            let text = match (text, file) {
                (Some(t), None) => t,
                (None, Some(f)) => read(&f)?,
                _ => return Err("give either query text or --file".into()),
            };
            let store = load_store(&cli.store, &ontology)?;
            let q = parse_query_with(&text, store.prefixes()).map_err(|e| e.to_string())?;
            print!("{}", format_results(&evaluate(&store, &q), format));
        }
        Command::Import { file } => {
            let doc = parse_turtle(&read(&file)?).map_err(|e| format!("{}: {e}", file.display()))?;
            let mut store = load_store(&cli.store, &ontology)?;
            store.prefixes_mut().extend(&doc.prefixes);
            let n = store.extend(doc.triples);
            save_store(&store, &cli.store)?;
            println!("imported {n} triples");
        }
        Command::Ontology { export } => {
            let violations = ontology.validate();
            for v in &violations {
                eprintln!("violation: {v}");
            }
            match export.as_str() {
                "json" => println!(
                    "{}",
                    serde_json::to_string_pretty(&ontology.to_def()).map_err(|e| e.to_string())?
                ),
                "ttl" => print!("{}", serialize_turtle(&new_repository(&ontology))),
                _ => {
                    println!("concepts         {}", ontology.concepts().count());
                    println!("transformations  {}", ontology.transformations().count());
                    println!("relations        {}", ontology.relations().len());
                    println!("lexicon entries  {}", ontology.lexicon().len());
                }
            }
            if !violations.is_empty() {
                return Err(format!("{} violations", violations.len()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
