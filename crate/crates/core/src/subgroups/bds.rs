//! The Borel–de Siebenthal lattice of closed subsystems.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::rootdata::{is_prime, RootSystem, SubComponent, SubsystemSignature, SubsystemSpec};

#[derive(Clone, Copy, Debug)]
pub struct BdsOptions {
    /// Number of deletion steps; `None` iterates to a fixpoint.
    pub depth: Option<usize>,
}

impl Default for BdsOptions {
    fn default() -> Self {
        Self { depth: Some(1) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BdsStep {
    Root,
    /// Delete a node of an extended diagram.
    Extended,
    /// Delete a node of an ordinary diagram.
    Levi,
}

#[derive(Clone, Debug, Serialize)]
pub struct BdsEntry {
    pub label: String,
    #[serde(skip)]
    pub spec: SubsystemSpec,
    #[serde(skip)]
    pub signature: SubsystemSignature,
    pub depth: usize,
    pub parent: Option<usize>,
    pub step: BdsStep,
    /// Mark of the deleted node in its highest root.
    pub removed_mark: Option<i64>,
    /// One extended-diagram deletion of prime mark from the whole system.
    pub maximal: bool,
    /// The Deriziotis test relative to the parent.
    pub deriziotis: bool,
    pub bad_primes: Vec<u64>,
    /// Bad primes of the subsystem are bad for the ambient system.
    pub good_prime_consistent: bool,
}

/// Extended diagram of one component of a subsystem: its base in Bourbaki
/// order followed by `−ϱ_C`, together with the marks (coefficients of `ϱ_C`
/// in the base, 1 for `−ϱ_C`).
fn extended_nodes(sys: &RootSystem, comp: &SubComponent) -> (Vec<usize>, Vec<i64>) {
    let roots = sys.subsystem_from_base(&comp.base);
    let highest = roots
        .roots()
        .iter()
        .copied()
        .filter(|&r| sys.is_positive(r))
        .max_by_key(|&r| sys.root(r).height())
        .expect("component has a positive root");
    let coords = sys
        .coordinates_in(&comp.base, &sys.root(highest).coords)
        .expect("highest root lies in the span of the base");
    let mut marks: Vec<i64> = coords
        .iter()
        .map(|c| i64::try_from(c.to_integer()).expect("small mark"))
        .collect();
    let mut nodes = comp.base.clone();
    nodes.push(sys.negative(highest));
    marks.push(1);
    (nodes, marks)
}

struct Child {
    spec: SubsystemSpec,
    step: BdsStep,
    removed_mark: Option<i64>,
}

fn children(sys: &RootSystem, spec: &SubsystemSpec) -> Vec<Child> {
    let comps = spec.components(sys);
    let mut out = Vec::new();
    for (ci, comp) in comps.iter().enumerate() {
        let others: Vec<usize> = comps
            .iter()
            .enumerate()
            .filter(|&(cj, _)| cj != ci)
            .flat_map(|(_, c)| c.base.iter().copied())
            .collect();
        let (nodes, marks) = extended_nodes(sys, comp);
        let rank = comp.base.len();
        // Deleting −ϱ_C returns the parent.
        for k in 0..rank {
            let gens: Vec<usize> = others
                .iter()
                .copied()
                .chain(nodes.iter().enumerate().filter(|&(m, _)| m != k).map(|(_, &r)| r))
                .collect();
            out.push(Child {
                spec: sys.subsystem_from_base(&gens),
                step: BdsStep::Extended,
                removed_mark: Some(marks[k]),
            });
            let gens: Vec<usize> = others
                .iter()
                .copied()
                .chain(comp.base.iter().enumerate().filter(|&(m, _)| m != k).map(|(_, &r)| r))
                .collect();
            out.push(Child {
                spec: sys.subsystem_from_base(&gens),
                step: BdsStep::Levi,
                removed_mark: None,
            });
        }
    }
    out
}

fn bad_primes_of(sys: &RootSystem, spec: &SubsystemSpec) -> Vec<u64> {
    let types: Vec<_> = spec.components(sys).iter().map(|c| c.simple_type).collect();
    RootSystem::new(&types)
        .expect("components of a subsystem are valid types")
        .good_primes()
        .bad
        .into_iter()
        .collect()
}

/// Iterated Borel–de Siebenthal deletion starting from the whole system,
/// one entry per Weyl class (as told apart by [`SubsystemSignature`]).
/// Entry 0 is the whole system.
pub fn borel_de_siebenthal(sys: &RootSystem, opts: BdsOptions) -> Vec<BdsEntry> {
    let full = sys.subsystem(&(0..sys.num_roots()).collect::<Vec<_>>()).expect("Ψ is closed");
    let ambient_bad = sys.good_primes().bad;
    let make = |spec: SubsystemSpec, depth, parent, step, removed_mark: Option<i64>, deriziotis| {
        let bad_primes = bad_primes_of(sys, &spec);
        let maximal = depth == 1 && step == BdsStep::Extended && removed_mark.is_some_and(|m| is_prime(m as u64));
        BdsEntry {
            label: spec.type_label(sys),
            signature: spec.signature(sys),
            good_prime_consistent: bad_primes.iter().all(|p| ambient_bad.contains(p)),
            bad_primes,
            spec,
            depth,
            parent,
            step,
            removed_mark,
            maximal,
            deriziotis,
        }
    };
    let mut entries = vec![make(full, 0, None, BdsStep::Root, None, false)];
    let mut seen: HashMap<SubsystemSignature, usize> = HashMap::new();
    seen.insert(entries[0].signature.clone(), 0);
    let mut frontier = vec![0usize];
    let mut depth = 0;
    while !frontier.is_empty() && opts.depth.map_or(true, |d| depth < d) {
        depth += 1;
        let batches: Vec<(usize, Vec<Child>)> = frontier
            .par_iter()
            .map(|&p| (p, children(sys, &entries[p].spec)))
            .collect();
        let mut next = Vec::new();
        for (p, kids) in batches {
            for kid in kids {
                let sig = kid.spec.signature(sys);
                if let Some(&i) = seen.get(&sig) {
                    // A maximal deletion reached first via a non-prime mark
                    // elsewhere still counts as maximal.
                    if depth == 1 && kid.step == BdsStep::Extended && kid.removed_mark.is_some_and(|m| is_prime(m as u64)) {
                        entries[i].maximal = true;
                    }
                    continue;
                }
                let parent = entries[p].spec.clone();
                let ok = deriziotis_check_in(sys, &parent, &kid.spec, None);
                let entry = make(kid.spec, depth, Some(p), kid.step, kid.removed_mark, ok);
                seen.insert(sig, entries.len());
                next.push(entries.len());
                entries.push(entry);
            }
        }
        frontier = next;
    }
    entries
}

/// True iff `phi` is a proper subsystem Weyl-conjugate to the subsystem
/// generated by a proper subset of `Π ∪ {−ϱ}` (proper in every simple
/// component), with `p` not dividing the marks of all deleted nodes of any
/// component.
pub fn deriziotis_check(sys: &RootSystem, phi: &SubsystemSpec, p: u64) -> bool {
    let full = sys.subsystem(&(0..sys.num_roots()).collect::<Vec<_>>()).expect("Ψ is closed");
    deriziotis_check_in(sys, &full, phi, Some(p))
}

/// As [`deriziotis_check`] with the extended diagrams of `parent` in place
/// of those of the whole system; `p = None` means characteristic zero.
pub(crate) fn deriziotis_check_in(sys: &RootSystem, parent: &SubsystemSpec, phi: &SubsystemSpec, p: Option<u64>) -> bool {
    let target = phi.signature(sys);
    // Deleting −ϱ alone gives back the parent, which is not a proper
    // pseudo-Levi.
    if parent.signature(sys) == target {
        return false;
    }
    let comps = parent.components(sys);
    let ext: Vec<(Vec<usize>, Vec<i64>)> = comps.iter().map(|c| extended_nodes(sys, c)).collect();
    // Per component, every subset missing at least one node whose removed
    // marks are not all divisible by p.
    let choices: Vec<Vec<Vec<usize>>> = ext
        .iter()
        .map(|(nodes, marks)| {
            let n = nodes.len();
            (0u32..(1 << n) - 1)
                .filter(|mask| {
                    let removed = (0..n).filter(|k| mask & (1 << k) == 0);
                    p.map_or(true, |p| removed.into_iter().any(|k| marks[k] % p as i64 != 0))
                })
                .map(|mask| (0..n).filter(|k| mask & (1 << k) != 0).map(|k| nodes[k]).collect())
                .filter(|kept: &Vec<usize>| kept.len() <= phi.rank())
                .collect()
        })
        .collect();
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, Vec::new())];
    while let Some((c, gens)) = stack.pop() {
        if c == choices.len() {
            if gens.len() == phi.rank() && sys.subsystem_from_base(&gens).signature(sys) == target {
                return true;
            }
            continue;
        }
        for kept in &choices[c] {
            let mut g = gens.clone();
            g.extend_from_slice(kept);
            if g.len() <= phi.rank() {
                stack.push((c + 1, g));
            }
        }
    }
    false
}
