use petgraph::algo::is_cyclic_directed;
use petgraph::graph::DiGraph;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::artrans::{translate, Direction};
use crate::error::{Error, Result};
use crate::linrep::{ext_dim, hom_dim, is_isomorphic, standard_module, Representation, StandardKind};
use crate::report::{Report, Status};

#[derive(Clone, Debug, Serialize)]
pub struct GrowthProbe {
    /// modules per τ⁻¹-level, level 0 being the projectives
    pub levels: Vec<usize>,
    /// total count when every τ⁻¹-orbit ended before the step budget
    pub closed: Option<usize>,
    pub report: Report,
    #[serde(skip)]
    pub modules: Vec<Vec<Representation>>,
}

/// τ⁻¹-orbits of the projectives of a hereditary algebra, checked for repetitions,
/// rigidity, τ-rigidity and cycles of nonzero nonisomorphisms.
pub fn directing_growth_probe(alg: &Algebra, steps: usize) -> Result<GrowthProbe> {
    if !alg.relations().is_empty() {
        return Err(Error::HasRelations);
    }
    let n = alg.n_vertices();
    // (module, τ of it when already known)
    let mut levels: Vec<Vec<(Representation, Option<usize>)>> =
        vec![(0..n).map(|v| Ok((standard_module(alg, StandardKind::Projective, v)?, None))).collect::<Result<_>>()?];
    while levels.len() < steps {
        let mut next = Vec::new();
        for (i, (m, _)) in levels.last().unwrap().iter().enumerate() {
            if let Some(x) = translate(alg, m, Direction::TauInverse)? {
                next.push((x, Some(i)));
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    let closed = levels.len() < steps || {
        let last = levels.last().unwrap();
        let mut end = true;
        for (m, _) in last {
            end &= translate(alg, m, Direction::TauInverse)?.is_none();
        }
        end
    };
    let flat: Vec<(usize, &Representation)> = levels.iter().enumerate().flat_map(|(l, ms)| ms.iter().map(move |(m, _)| (l, m))).collect();
    let name = |l: usize, i: usize| format!("τ^-{l}·#{i}");

    let mut repeats = Vec::new();
    for a in 0..flat.len() {
        for b in a + 1..flat.len() {
            let (x, y) = (flat[a].1, flat[b].1);
            if x.dims() == y.dims() && is_isomorphic(alg, x, y)? {
                repeats.push(format!("modules {a} and {b}"));
            }
        }
    }
    let mut not_rigid = Vec::new();
    let mut not_tau_rigid = Vec::new();
    for (l, ms) in levels.iter().enumerate() {
        for (i, (m, tau)) in ms.iter().enumerate() {
            if ext_dim(alg, 1, m, m, 8)? > 0 {
                not_rigid.push(name(l, i));
            }
            if let Some(t) = tau {
                if hom_dim(alg, m, &levels[l - 1][*t].0)? > 0 {
                    not_tau_rigid.push(name(l, i));
                }
            }
        }
    }

    // a cycle would need a nonzero map to a lower level, or a cycle inside one level
    let mut back = Vec::new();
    let mut loops = Vec::new();
    let mut level_cyclic = Vec::new();
    for (l, ms) in levels.iter().enumerate() {
        let mut g: DiGraph<(), ()> = DiGraph::new();
        let nodes: Vec<_> = ms.iter().map(|_| g.add_node(())).collect();
        for (i, (x, _)) in ms.iter().enumerate() {
            if hom_dim(alg, x, x)? > 1 {
                loops.push(name(l, i));
            }
            for (j, (y, _)) in ms.iter().enumerate() {
                if i != j && hom_dim(alg, x, y)? > 0 {
                    g.add_edge(nodes[i], nodes[j], ());
                }
            }
            for (lower, ys) in levels[..l].iter().enumerate() {
                for (j, (y, _)) in ys.iter().enumerate() {
                    if hom_dim(alg, x, y)? > 0 {
                        back.push(format!("{} -> {}", name(l, i), name(lower, j)));
                    }
                }
            }
        }
        if is_cyclic_directed(&g) {
            level_cyclic.push(format!("level {l}"));
        }
    }
    let sizes: Vec<usize> = levels.iter().map(Vec::len).collect();
    let total: usize = sizes.iter().sum();
    let mut cycle_w = back.clone();
    cycle_w.extend(loops.iter().cloned());
    cycle_w.extend(level_cyclic.iter().cloned());
    let level_w = if closed {
        format!("closed after {} levels with {total} modules", sizes.len())
    } else {
        format!("{} levels of sizes {sizes:?}", sizes.len())
    };
    let report = Report::group(
        "directing growth probe",
        vec![
            Report::leaf("levels", Status::Pass, vec![level_w]),
            Report::leaf("pairwise non-isomorphic", Status::of(repeats.is_empty()), repeats),
            Report::leaf("rigid", Status::of(not_rigid.is_empty()), not_rigid),
            Report::leaf("τ-rigid", Status::of(not_tau_rigid.is_empty()), not_tau_rigid),
            Report::leaf("no cycle of nonzero nonisomorphisms among the probed modules", Status::of(cycle_w.is_empty()), cycle_w),
        ],
    );
    Ok(GrowthProbe {
        levels: sizes,
        closed: closed.then_some(total),
        report,
        modules: levels.into_iter().map(|ms| ms.into_iter().map(|p| p.0).collect()).collect(),
    })
}
