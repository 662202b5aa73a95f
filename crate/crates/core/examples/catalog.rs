//! Prints the nilpotent orbit catalog of a root system given on the command
//! line, e.g. `cargo run --release --example catalog -- E6`.

use cochar::chevalley::build_algebra;
use cochar::orbits::{enumerate_orbits, CatalogOptions};
use cochar::rootdata::{parse_components, RootSystem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "G2".into());
    let sys = RootSystem::new(&parse_components(&spec)?)?;
    let alg = build_algebra(&sys)?;
    let catalog = enumerate_orbits(&alg, CatalogOptions::default())?;
    for o in &catalog.orbits {
        println!(
            "{:<10} {:?} dim {} rank {} {}",
            o.label,
            o.diagram,
            o.dim_orbit,
            o.reductive_rank,
            if o.distinguished { "distinguished" } else { "" }
        );
    }
    Ok(())
}
