//! On-disk catalog cache: one JSON file per (system, seed).

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use cochar::chevalley::ChevalleyAlgebra;
use cochar::orbits::{enumerate_orbits, CatalogJson, CatalogOptions, OrbitCatalog};

/// Bumped whenever the catalog format or its construction changes.
pub const ARTIFACT_VERSION: &str = "1";

#[derive(Debug, Serialize, Deserialize)]
pub struct CacheHeader {
    pub artifact_version: String,
    pub system: String,
    pub seed: u64,
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    #[serde(flatten)]
    header: CacheHeader,
    catalog: CatalogJson,
}

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Self { dir }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn path(&self, system: &str, seed: u64) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("catalog-{system}-seed{seed}.json")))
    }

    /// The catalog of `alg`, from the cache when a valid entry exists.
    /// Returns whether it came from the cache.
    pub fn catalog(&self, alg: &ChevalleyAlgebra, seed: u64) -> Result<(OrbitCatalog, bool)> {
        let system = alg.system().type_string();
        let path = self.path(&system, seed);
        if let Some(p) = path.as_ref().filter(|p| p.exists()) {
            match load(p, alg, &system, seed) {
                Ok(c) => return Ok((c, true)),
                Err(e) => log_stale(p, &e),
            }
        }
        let catalog = enumerate_orbits(alg, CatalogOptions { seed })?;
        if let Some(p) = path {
            store(&p, &catalog, &system, seed)?;
        }
        Ok((catalog, false))
    }

    pub fn entries(&self) -> Result<Vec<(PathBuf, Result<(CacheHeader, usize)>)>> {
        let Some(dir) = &self.dir else { return Ok(Vec::new()) };
        if !dir.exists() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for entry in fs::read_dir(dir)? {
            let p = entry?.path();
            if is_cache_file(&p) {
                let info = read(&p).map(|f| (f.header, f.catalog.orbits.len()));
                out.push((p, info));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    pub fn clear(&self) -> Result<usize> {
        let mut n = 0;
        for (p, _) in self.entries()? {
            fs::remove_file(&p).with_context(|| format!("removing {}", p.display()))?;
            n += 1;
        }
        Ok(n)
    }
}

fn is_cache_file(p: &Path) -> bool {
    p.file_name()
        .and_then(|n| n.to_str())
        .is_some_and(|n| n.starts_with("catalog-") && n.ends_with(".json"))
}

fn read(p: &Path) -> Result<CacheFile> {
    let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))
}

fn load(p: &Path, alg: &ChevalleyAlgebra, system: &str, seed: u64) -> Result<OrbitCatalog> {
    let f = read(p)?;
    let h = &f.header;
    if h.artifact_version != ARTIFACT_VERSION || h.system != system || h.seed != seed {
        bail!("header {h:?} does not match {system} with seed {seed}");
    }
    Ok(f.catalog.to_catalog(alg)?)
}

fn store(p: &Path, catalog: &OrbitCatalog, system: &str, seed: u64) -> Result<()> {
    if let Some(dir) = p.parent() {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let file = CacheFile {
        header: CacheHeader {
            artifact_version: ARTIFACT_VERSION.into(),
            system: system.into(),
            seed,
        },
        catalog: CatalogJson::from_catalog(catalog),
    };
    // Write then rename so a concurrent reader never sees half a file.
    let tmp = p.with_extension("json.tmp");
    fs::write(&tmp, serde_json::to_vec(&file)?).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, p)?;
    Ok(())
}

fn log_stale(p: &Path, e: &anyhow::Error) {
    eprintln!("warning: ignoring cache entry {}: {e:#}", p.display());
}
