//! JSON form of orbit catalogs, used by the on-disk cache.

use serde::{Deserialize, Serialize};

use super::{NilpotentOrbit, OrbitCatalog, TripleJson};
use crate::chevalley::{ChevalleyAlgebra, ElementJson};
use crate::error::{Error, Result};
use crate::rootdata::{RootSystem, RootSystemJson};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitJson {
    pub label: String,
    pub diagram: Vec<i64>,
    pub dim_orbit: usize,
    pub centralizer_dim: usize,
    pub reductive_rank: usize,
    pub distinguished: bool,
    pub levi_nodes: Vec<usize>,
    pub levi_labels: Vec<i64>,
    pub representative: ElementJson,
    pub triple: TripleJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogJson {
    pub system: RootSystemJson,
    pub orbits: Vec<OrbitJson>,
}

impl OrbitJson {
    pub fn from_orbit(o: &NilpotentOrbit) -> Self {
        Self {
            label: o.label.clone(),
            diagram: o.diagram.clone(),
            dim_orbit: o.dim_orbit,
            centralizer_dim: o.centralizer_dim,
            reductive_rank: o.reductive_rank,
            distinguished: o.distinguished,
            levi_nodes: o.levi_nodes.clone(),
            levi_labels: o.levi_labels.clone(),
            representative: ElementJson::from_element(&o.representative),
            triple: TripleJson::from_triple(&o.triple),
        }
    }

    pub fn to_orbit(&self) -> Result<NilpotentOrbit> {
        let bad = || Error::Cache(format!("malformed element in orbit {}", self.label));
        Ok(NilpotentOrbit {
            label: self.label.clone(),
            representative: self.representative.to_element().ok_or_else(bad)?,
            triple: self.triple.to_triple().ok_or_else(bad)?,
            diagram: self.diagram.clone(),
            dim_orbit: self.dim_orbit,
            centralizer_dim: self.centralizer_dim,
            reductive_rank: self.reductive_rank,
            distinguished: self.distinguished,
            levi_nodes: self.levi_nodes.clone(),
            levi_labels: self.levi_labels.clone(),
        })
    }
}

impl CatalogJson {
    pub fn from_catalog(c: &OrbitCatalog) -> Self {
        Self {
            system: c.system.to_json(),
            orbits: c.orbits.iter().map(OrbitJson::from_orbit).collect(),
        }
    }

    /// Rebuilds a catalog for `alg`, re-checking every sl(2) triple.
    pub fn to_catalog(&self, alg: &ChevalleyAlgebra) -> Result<OrbitCatalog> {
        let system = RootSystem::from_json(&self.system)?;
        if &system != alg.system() {
            return Err(Error::Cache(format!(
                "catalog is for {}, not {}",
                system.type_string(),
                alg.system().type_string()
            )));
        }
        let orbits = self.orbits.iter().map(OrbitJson::to_orbit).collect::<Result<Vec<_>>>()?;
        let catalog = OrbitCatalog { system, orbits };
        catalog
            .verify(alg)
            .map_err(|e| Error::Cache(format!("cached catalog failed verification: {e}")))?;
        Ok(catalog)
    }
}
