mod cache;
mod output;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;

use cochar::chevalley::{build_algebra, ChevalleyAlgebra};
use cochar::dagger::{check_dagger, table1_checks, DaggerReport, Verdict};
use cochar::orbits::{NilpotentOrbit, OrbitCatalog, OrbitJson};
use cochar::rootdata::{parse_components, RootSystem};
use cochar::subgroups::{borel_de_siebenthal, embedding_by_id, BdsOptions};

use cache::Cache;
use output::{join, Format, Output};

#[derive(Parser, Debug)]
#[command(name = "cochar", version, about = "Nilpotent orbits and associated cocharacters in exact arithmetic")]
struct Cli {
    #[arg(long, value_enum, default_value = "pretty", global = true)]
    format: Format,
    /// Catalog cache directory.
    #[arg(long, env = "COCHAR_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,
    /// Do not read or write the catalog cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Seed for genericity retries and rank trials.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Roots, highest roots and bad primes of a root system.
    Roots { system: String },
    /// The nilpotent orbit catalog.
    Orbits {
        system: String,
        /// Show one orbit, by Bala–Carter label ("0" for the zero orbit).
        #[arg(long, alias = "label")]
        orbit: Option<String>,
    },
    /// The Borel–de Siebenthal lattice with Deriziotis flags.
    Subsystems {
        system: String,
        /// Only the maximal subsystems of maximal rank.
        #[arg(long)]
        maximal: bool,
        /// Deletion steps; omit to iterate to a fixpoint.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Check the associated-cocharacter property on an embedding.
    Dagger {
        #[arg(long)]
        embedding: String,
        #[arg(long, alias = "label")]
        orbit: Option<String>,
    },
    /// The fusion table of the maximal G2 in F4 (characteristic 7).
    Table1,
    /// Inspect or clear the catalog cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum CacheAction {
    Inspect,
    Clear,
}

/// A result plus whether every checked claim held.
struct Run {
    output: Output,
    claims_ok: bool,
}

impl From<Output> for Run {
    fn from(output: Output) -> Self {
        Run { output, claims_ok: true }
    }
}

fn default_cache_dir() -> Option<PathBuf> {
    std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
        .map(|d| d.join("cochar"))
}

/// Accepts the usual typography as well (`Ã2` for `~A2`).
fn normalize_label(s: &str) -> String {
    s.replace('Ã', "~A").replace('\u{303}', "")
}

fn parse_system(s: &str) -> Result<RootSystem> {
    let comps = parse_components(s)?;
    Ok(RootSystem::new(&comps)?)
}

fn algebra(sys: &RootSystem) -> Result<Arc<ChevalleyAlgebra>> {
    Ok(Arc::new(build_algebra(sys)?))
}

fn find_orbit<'a>(catalog: &'a OrbitCatalog, label: &str) -> Result<&'a NilpotentOrbit> {
    let label = normalize_label(label);
    catalog.by_label(&label).ok_or_else(|| {
        let known: Vec<&str> = catalog.orbits.iter().map(|o| o.label.as_str()).collect();
        anyhow!("unknown orbit {label:?} in {}; known: {}", catalog.system, known.join(", "))
    })
}

fn cmd_roots(system: &str) -> Result<Output> {
    let sys = parse_system(system)?;
    let bad: Vec<u64> = sys.good_primes().bad.into_iter().collect();
    let rows = (0..sys.num_roots())
        .map(|r| {
            let root = sys.root(r);
            vec![
                r.to_string(),
                join(&root.coords),
                root.height().to_string(),
                if sys.is_long(r) { "long" } else { "short" }.to_string(),
                sys.node_component(
                    root.coords.iter().position(|&c| c != 0).expect("roots are nonzero"),
                )
                .to_string(),
            ]
        })
        .collect();
    Ok(Output {
        title: format!("{}: {} roots, rank {}, dim {}", sys, sys.num_roots(), sys.rank(), sys.dimension()),
        json: json!({
            "system": sys.to_json(),
            "rank": sys.rank(),
            "num_roots": sys.num_roots(),
            "dimension": sys.dimension(),
            "bad_primes": bad,
        }),
        header: vec!["index", "coords", "height", "length", "component"],
        rows,
        notes: vec![format!("bad primes: {{{}}}", join(&bad))],
    })
}

fn orbit_row(o: &NilpotentOrbit) -> Vec<String> {
    vec![
        o.label.clone(),
        join(&o.diagram),
        o.dim_orbit.to_string(),
        o.centralizer_dim.to_string(),
        o.reductive_rank.to_string(),
        o.distinguished.to_string(),
    ]
}

fn cmd_orbits(system: &str, orbit: Option<&str>, cache: &Cache, seed: u64) -> Result<Output> {
    let sys = parse_system(system)?;
    let alg = algebra(&sys)?;
    let (catalog, from_cache) = cache.catalog(&alg, seed)?;
    let orbits: Vec<&NilpotentOrbit> = match orbit {
        Some(l) => vec![find_orbit(&catalog, l)?],
        None => catalog.orbits.iter().collect(),
    };
    Ok(Output {
        title: format!("{}: {} nilpotent orbits", sys, orbits.len()),
        json: json!({
            "system": sys.type_string(),
            "seed": seed,
            "meta": { "from_cache": from_cache },
            "orbits": orbits.iter().map(|o| OrbitJson::from_orbit(o)).collect::<Vec<_>>(),
        }),
        header: vec!["label", "diagram", "dim_orbit", "centralizer_dim", "reductive_rank", "distinguished"],
        rows: orbits.iter().map(|o| orbit_row(o)).collect(),
        notes: Vec::new(),
    })
}

fn cmd_subsystems(system: &str, maximal: bool, depth: Option<usize>) -> Result<Output> {
    let sys = parse_system(system)?;
    let depth = if maximal { Some(depth.unwrap_or(1).max(1)) } else { depth };
    let entries = borel_de_siebenthal(&sys, BdsOptions { depth });
    let picked: Vec<(usize, &cochar::subgroups::BdsEntry)> =
        entries.iter().enumerate().filter(|(_, e)| !maximal || e.maximal).collect();
    let rows = picked
        .iter()
        .map(|(i, e)| {
            vec![
                i.to_string(),
                e.label.clone(),
                e.spec.roots().len().to_string(),
                e.depth.to_string(),
                e.parent.map_or("-".into(), |p| p.to_string()),
                serde_json::to_value(e.step).unwrap().as_str().unwrap_or("").to_string(),
                e.removed_mark.map_or("-".into(), |m| m.to_string()),
                e.maximal.to_string(),
                e.deriziotis.to_string(),
                join(&e.bad_primes),
                e.good_prime_consistent.to_string(),
            ]
        })
        .collect();
    let json_entries: Vec<serde_json::Value> = picked
        .iter()
        .map(|(i, e)| {
            let mut v = serde_json::to_value(e).expect("entries serialize");
            v["index"] = json!(i);
            v["num_roots"] = json!(e.spec.roots().len());
            v["subsystem"] = serde_json::to_value(e.spec.to_json(&sys)).expect("subsystems serialize");
            v
        })
        .collect();
    Ok(Output {
        title: format!("{}: {} subsystem classes", sys, picked.len()),
        json: json!({ "system": sys.type_string(), "depth": depth, "entries": json_entries }),
        header: vec![
            "index",
            "label",
            "num_roots",
            "depth",
            "parent",
            "step",
            "removed_mark",
            "maximal",
            "deriziotis",
            "bad_primes",
            "good_prime_consistent",
        ],
        rows,
        notes: Vec::new(),
    })
}

fn cmd_dagger(id: &str, orbit: Option<&str>, cache: &Cache, seed: u64) -> Result<Output> {
    let emb = embedding_by_id(id)?;
    let (h_catalog, h_cached) = cache.catalog(&emb.sub_algebra, seed)?;
    let (g_catalog, g_cached) = cache.catalog(emb.ambient(), seed)?;
    let orbits: Vec<&NilpotentOrbit> = match orbit {
        Some(l) => vec![find_orbit(&h_catalog, l)?],
        None => h_catalog.orbits.iter().collect(),
    };
    let reports: Vec<DaggerReport> = orbits
        .par_iter()
        .map(|o| check_dagger(&emb, o, &g_catalog, seed).with_context(|| format!("orbit {}", o.label)))
        .collect::<Result<_>>()?;
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    let notes = vec![format!(
        "verdicts: {} by reduction, {} by rank, {} by distinguished, {} inconclusive",
        count(Verdict::DaggerVerifiedByReduction),
        count(Verdict::DaggerVerifiedByRank),
        count(Verdict::DaggerVerifiedByDist),
        count(Verdict::Inconclusive)
    )];
    Ok(Output {
        title: format!(
            "{}: {} in {} ({}), {} orbits",
            emb.id,
            emb.sub_system(),
            emb.ambient().system(),
            emb.kind.name(),
            reports.len()
        ),
        json: json!({
            "embedding": emb.id,
            "kind": emb.kind.name(),
            "ambient": emb.ambient().system().type_string(),
            "subgroup": emb.sub_system().type_string(),
            "center_dim": emb.center_basis.len(),
            "seed": seed,
            "meta": { "from_cache": h_cached && g_cached },
            "reports": reports,
        }),
        header: DaggerReport::TSV_HEADER.split('\t').collect(),
        rows: reports.iter().map(|r| r.tsv_row().split('\t').map(String::from).collect()).collect(),
        notes,
    })
}

fn cmd_table1(cache: &Cache, seed: u64) -> Result<Run> {
    let f4 = algebra(&parse_system("F4")?)?;
    let (catalog, _) = cache.catalog(&f4, seed)?;
    let checks = table1_checks(&catalog);
    let claims_ok = checks.iter().all(|c| c.f4_in_catalog && c.claim.is_none_or(|(_, ok)| ok));
    let rows = checks
        .iter()
        .map(|c| {
            let status = match c.claim {
                Some((what, true)) => format!("{what}: yes"),
                Some((what, false)) => format!("{what}: NO"),
                None => "-".into(),
            };
            vec![
                c.g2.to_string(),
                c.f4.to_string(),
                "reference only".to_string(),
                if c.f4_distinguished { "yes" } else { "no" }.to_string(),
                format!("reductive rank {}", c.f4_reductive_rank),
                status,
            ]
        })
        .collect();
    let json_rows: Vec<serde_json::Value> = checks
        .iter()
        .map(|c| {
            json!({
                "g2": c.g2,
                "f4": c.f4,
                "g2_side": "reference only",
                "f4_in_catalog": c.f4_in_catalog,
                "f4_distinguished": c.f4_distinguished,
                "f4_reductive_rank": c.f4_reductive_rank,
                "claim": c.claim.map(|(w, _)| w),
                "claim_holds": c.claim.map(|(_, ok)| ok),
            })
        })
        .collect();
    Ok(Run {
        output: Output {
            title: "Fusion of nilpotent classes, maximal G2 < F4 (p = 7)".into(),
            json: json!({ "rows": json_rows, "all_claims_hold": claims_ok }),
            header: vec!["g2", "f4", "g2_side", "distinguished", "f4_centralizer", "check"],
            rows,
            notes: Vec::new(),
        },
        claims_ok,
    })
}

fn cmd_cache(action: CacheAction, cache: &Cache) -> Result<Output> {
    let dir = cache.dir().map_or("(none)".into(), |d| d.display().to_string());
    match action {
        CacheAction::Inspect => {
            let entries = cache.entries()?;
            let rows: Vec<Vec<String>> = entries
                .iter()
                .map(|(p, info)| {
                    let name = p.file_name().map_or(String::new(), |n| n.to_string_lossy().into_owned());
                    match info {
                        Ok((h, n)) => vec![name, h.system.clone(), h.seed.to_string(), h.artifact_version.clone(), n.to_string()],
                        Err(e) => vec![name, "-".into(), "-".into(), format!("unreadable: {e}"), "-".into()],
                    }
                })
                .collect();
            let json_entries: Vec<serde_json::Value> = entries
                .iter()
                .zip(&rows)
                .map(|((_, info), r)| match info {
                    Ok((h, n)) => json!({
                        "file": r[0], "system": h.system, "seed": h.seed,
                        "artifact_version": h.artifact_version, "orbits": n,
                    }),
                    Err(e) => json!({ "file": r[0], "error": e.to_string() }),
                })
                .collect();
            Ok(Output {
                title: format!("cache {dir}: {} entries", rows.len()),
                json: json!({ "dir": dir, "entries": json_entries }),
                header: vec!["file", "system", "seed", "artifact_version", "orbits"],
                rows,
                notes: Vec::new(),
            })
        }
        CacheAction::Clear => {
            let n = cache.clear()?;
            Ok(Output {
                title: format!("cache {dir}: removed {n} entries"),
                json: json!({ "dir": dir, "removed": n }),
                header: vec!["removed"],
                rows: vec![vec![n.to_string()]],
                notes: Vec::new(),
            })
        }
    }
}

fn run(cli: &Cli) -> Result<Run> {
    let cache = Cache::new(if cli.no_cache { None } else { cli.cache_dir.clone().or_else(default_cache_dir) });
    let seed = cli.seed;
    Ok(match &cli.command {
        Command::Roots { system } => cmd_roots(system)?.into(),
        Command::Orbits { system, orbit } => cmd_orbits(system, orbit.as_deref(), &cache, seed)?.into(),
        Command::Subsystems { system, maximal, depth } => cmd_subsystems(system, *maximal, *depth)?.into(),
        Command::Dagger { embedding, orbit } => cmd_dagger(embedding, orbit.as_deref(), &cache, seed)?.into(),
        Command::Table1 => cmd_table1(&cache, seed)?,
        Command::Cache { action } => cmd_cache(*action, &cache)?.into(),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    let result = run(&cli).and_then(|r| {
        let mut out = io::stdout().lock();
        r.output.write(cli.format, &mut out)?;
        out.flush()?;
        if !r.claims_ok {
            bail!("a checked claim does not hold");
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        // A closed pipe (`| head`) is not an error.
        Err(e) if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
