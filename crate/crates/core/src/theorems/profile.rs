use std::collections::BTreeMap;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::artrans::{almost_split_sequence, translate, Direction, Knitted, RepresentationType};
use crate::error::{Error, Result};
use crate::linrep::{end_info, euler_characteristic, ext_dim, hom_dim, Euler, Representation};
use crate::report::{Report, Status};
use crate::structure::locate;

pub const DEFAULT_EXT_BUDGET: usize = 4;
const RESOLUTION_BUDGET: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleProfile {
    pub dims: Vec<usize>,
    pub end_dim: usize,
    pub ext1_dim: usize,
    /// `(r, dim Ext^r(M, M))` for `2 ≤ r ≤ budget`
    pub ext_higher: Vec<(usize, usize)>,
    /// `None` when the resolution outruns its budget
    pub euler: Option<Euler>,
    pub rigid: bool,
    pub tau_rigid: bool,
    pub alpha: Option<usize>,
    /// `None` without a complete universe
    pub directing: Option<bool>,
}

/// Whether rad End(X) ≠ 0.
fn has_radical(alg: &Algebra, x: &Representation) -> Result<bool> {
    if hom_dim(alg, x, x)? == 1 {
        return Ok(false);
    }
    Ok(end_info(alg, x)?.map_or(true, |e| !e.radical.is_empty()))
}

/// Directing flags over a list of pairwise non-isomorphic indecomposables: no loop
/// (rad End ≠ 0) and a trivial strongly connected component in the nonzero-Hom digraph.
pub fn directing_flags(alg: &Algebra, modules: &[Representation]) -> Result<Vec<bool>> {
    let n = modules.len();
    let mut g: DiGraph<(), ()> = DiGraph::new();
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    let mut looped = vec![false; n];
    for i in 0..n {
        looped[i] = has_radical(alg, &modules[i])?;
        for j in 0..n {
            if i != j && hom_dim(alg, &modules[i], &modules[j])? > 0 {
                g.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    let mut flags = vec![false; n];
    for comp in tarjan_scc(&g) {
        if comp.len() == 1 {
            let i = comp[0].index();
            flags[i] = !looped[i];
        }
    }
    Ok(flags)
}

fn profile_with(alg: &Algebra, m: &Representation, ext_budget: usize, directing: Option<bool>, alpha: Option<Option<usize>>) -> Result<ModuleProfile> {
    let end_dim = hom_dim(alg, m, m)?;
    let ext1_dim = ext_dim(alg, 1, m, m, RESOLUTION_BUDGET)?;
    let ext_higher = (2..=ext_budget)
        .map(|r| Ok((r, ext_dim(alg, r, m, m, RESOLUTION_BUDGET)?)))
        .collect::<Result<Vec<_>>>()?;
    let euler = match euler_characteristic(alg, m, RESOLUTION_BUDGET) {
        Ok(e) => Some(e),
        Err(Error::BudgetExceeded(_)) => None,
        Err(e) => return Err(e),
    };
    let tau = translate(alg, m, Direction::Tau)?;
    let tau_rigid = match &tau {
        None => true,
        Some(t) => hom_dim(alg, m, t)? == 0,
    };
    let alpha = match alpha {
        Some(a) => a,
        None if tau.is_some() => Some(almost_split_sequence(alg, m)?.alpha()),
        None => None,
    };
    Ok(ModuleProfile {
        dims: m.dims().to_vec(),
        end_dim,
        ext1_dim,
        ext_higher,
        euler,
        rigid: ext1_dim == 0,
        tau_rigid,
        alpha,
        directing,
    })
}

/// Profile of an indecomposable; directing status only relative to a complete universe.
pub fn module_profile(alg: &Algebra, m: &Representation, universe: Option<&RepresentationType>, ext_budget: usize) -> Result<ModuleProfile> {
    let directing = match universe {
        Some(RepresentationType::Finite(k)) => match locate(alg, k, m)? {
            Some(i) => Some(directing_flags(alg, &k.modules)?[i]),
            None => return Err(Error::NotIndecomposable),
        },
        _ => None,
    };
    profile_with(alg, m, ext_budget, directing, None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub total: usize,
    pub rigid: Vec<String>,
    pub tau_rigid: Vec<String>,
    pub directing: Vec<String>,
    /// number of indecomposables sharing a dimension vector → how many vectors have that count
    pub dim_multiplicities: BTreeMap<usize, usize>,
    /// `|Ext¹(M, M)| > |End(M)|`
    pub ext_exceeds_end: Vec<String>,
    /// modules with `Ext^r(M, M) ≠ 0` for some `2 ≤ r ≤ budget`
    pub higher_ext: Vec<String>,
    pub alpha_at_least_3: Vec<String>,
    pub ext_budget: usize,
    pub profiles: Vec<(String, ModuleProfile)>,
}

/// Profiles every module of a complete universe.
pub fn census(alg: &Algebra, universe: &RepresentationType, ext_budget: usize) -> Result<Census> {
    let RepresentationType::Finite(k) = universe else { return Err(Error::IncompleteUniverse) };
    census_of(alg, k, ext_budget)
}

fn census_of(alg: &Algebra, k: &Knitted, ext_budget: usize) -> Result<Census> {
    let flags = directing_flags(alg, &k.modules)?;
    let mut profiles = Vec::new();
    for (i, m) in k.modules.iter().enumerate() {
        let alpha = if k.fragment.vertices[i].proj { None } else { k.sequences.get(&i).map(|s| s.alpha()) };
        let p = profile_with(alg, m, ext_budget, Some(flags[i]), alpha.map(Some))?;
        profiles.push((k.fragment.vertices[i].id.clone(), p));
    }
    let names = |pred: &dyn Fn(&ModuleProfile) -> bool| -> Vec<String> {
        profiles.iter().filter(|(_, p)| pred(p)).map(|(n, _)| n.clone()).collect()
    };
    let mut by_dims: BTreeMap<&[usize], usize> = BTreeMap::new();
    for (_, p) in &profiles {
        *by_dims.entry(&p.dims).or_default() += 1;
    }
    let mut dim_multiplicities = BTreeMap::new();
    for c in by_dims.values() {
        *dim_multiplicities.entry(*c).or_default() += 1;
    }
    Ok(Census {
        total: profiles.len(),
        rigid: names(&|p| p.rigid),
        tau_rigid: names(&|p| p.tau_rigid),
        directing: names(&|p| p.directing == Some(true)),
        dim_multiplicities,
        ext_exceeds_end: names(&|p| p.ext1_dim > p.end_dim),
        higher_ext: names(&|p| p.ext_higher.iter().any(|e| e.1 > 0)),
        alpha_at_least_3: names(&|p| p.alpha.is_some_and(|a| a >= 3)),
        ext_budget,
        profiles,
    })
}

impl Census {
    pub fn report(&self) -> Report {
        let implies = |check: &str, a: &dyn Fn(&ModuleProfile) -> bool, b: &dyn Fn(&ModuleProfile) -> bool| {
            let bad: Vec<String> = self.profiles.iter().filter(|(_, p)| a(p) && !b(p)).map(|(n, _)| n.clone()).collect();
            Report::leaf(check, Status::of(bad.is_empty()), bad)
        };
        let list = |check: &str, xs: &[String]| Report::leaf(check, Status::Pass, vec![format!("{} modules: {}", xs.len(), xs.join(", "))]);
        Report::group(
            "census",
            vec![
                Report::leaf("indecomposables", Status::Pass, vec![self.total.to_string()]),
                list("rigid", &self.rigid),
                list("τ-rigid", &self.tau_rigid),
                list("directing", &self.directing),
                Report::leaf(
                    "dimension vector multiplicities",
                    Status::Pass,
                    self.dim_multiplicities.iter().map(|(m, c)| format!("{c} vectors shared by {m}")).collect(),
                ),
                implies("τ-rigid implies rigid", &|p| p.tau_rigid, &|p| p.rigid),
                implies("directing implies τ-rigid", &|p| p.directing == Some(true), &|p| p.tau_rigid),
                Report::leaf("|Ext¹(M,M)| ≤ |End(M)|", Status::of(self.ext_exceeds_end.is_empty()), self.ext_exceeds_end.clone()),
                list(&format!("Ext^r(M,M) ≠ 0 for some 2 ≤ r ≤ {} (bounded check)", self.ext_budget), &self.higher_ext),
                list("α(M) ≥ 3", &self.alpha_at_least_3),
            ],
        )
    }
}
