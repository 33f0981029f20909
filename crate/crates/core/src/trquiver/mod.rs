//! Combinatorics of translation-quiver fragments.

mod fragment;
mod multisection;
mod tube;

use std::collections::VecDeque;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use petgraph::unionfind::UnionFind;
use serde::Serialize;

pub use fragment::{Fragment, FragmentArrow, FragmentVertex, Graph};
pub use multisection::{core, find_cyclic_coherent_parts, find_multisection, is_convex, is_minimal, CoherentParts, Multisection};
pub use tube::{detect_tube, TubeShape};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_CYCLE_LEN: usize = 8;
const MAX_CYCLES: usize = 1_000_000;

/// Strongly connected components as sorted index lists, with a flag for "lies on a cycle".
pub(crate) fn sccs(g: &Graph) -> Vec<(Vec<usize>, bool)> {
    let mut dg: DiGraph<(), ()> = DiGraph::new();
    let nodes: Vec<_> = (0..g.n()).map(|_| dg.add_node(())).collect();
    for (s, out) in g.succ.iter().enumerate() {
        for &(t, _) in out {
            dg.add_edge(nodes[s], nodes[t], ());
        }
    }
    tarjan_scc(&dg)
        .into_iter()
        .map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
            c.sort_unstable();
            let cyc = c.len() > 1 || g.has_arrow(c[0], c[0]);
            (c, cyc)
        })
        .collect()
}

/// Indices of the vertices lying on an oriented cycle.
pub fn cyclic_vertices(f: &Fragment) -> Vec<usize> {
    let mut v: Vec<usize> = sccs(&f.graph()).into_iter().filter(|c| c.1).flat_map(|c| c.0).collect();
    v.sort_unstable();
    v
}

/// The full subfragment on the vertices lying on oriented cycles.
pub fn cyclic_part(f: &Fragment) -> Fragment {
    f.restrict(&cyclic_vertices(f))
}

/// Two partitions of the cyclic part: by connectivity and by sharing a cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicComponents {
    pub components: Vec<Vec<usize>>,
    pub shared_cycle: Vec<Vec<usize>>,
    pub agree: bool,
}

pub fn cyclic_components(f: &Fragment) -> CyclicComponents {
    let g = f.graph();
    let mut shared: Vec<Vec<usize>> = sccs(&g).into_iter().filter(|c| c.1).map(|c| c.0).collect();
    shared.sort();
    let cyc = cyclic_vertices(f);
    let mut on = vec![false; f.len()];
    for &v in &cyc {
        on[v] = true;
    }
    let mut uf = UnionFind::<usize>::new(f.len());
    for &s in &cyc {
        for &(t, _) in &g.succ[s] {
            if on[t] {
                uf.union(s, t);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for &v in &cyc {
        groups.entry(uf.find(v)).or_default().push(v);
    }
    let mut components: Vec<Vec<usize>> = groups.into_values().collect();
    components.sort();
    let agree = components == shared;
    CyclicComponents { components, shared_cycle: shared, agree }
}

/// Connected components of the whole fragment, ignoring orientation.
pub fn components(f: &Fragment) -> Vec<Vec<usize>> {
    let g = f.graph();
    let mut uf = UnionFind::<usize>::new(f.len());
    for (s, out) in g.succ.iter().enumerate() {
        for &(t, _) in out {
            uf.union(s, t);
        }
    }
    for (x, t) in g.tau.iter().enumerate() {
        if let Some(y) = t {
            uf.union(x, *y);
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..f.len() {
        groups.entry(uf.find(v)).or_default().push(v);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}

fn check_path(g: &Graph, path: &[usize], f: &Fragment) -> Result<()> {
    for w in path.windows(2) {
        if !g.has_arrow(w[0], w[1]) {
            return Err(Error::PathNotInFragment(format!("no arrow {} -> {}", f.vertices[w[0]].id, f.vertices[w[1]].id)));
        }
    }
    Ok(())
}

/// `true` iff no `i` has `τ X_{i+2} = X_i`.
pub fn is_sectional(f: &Fragment, path: &[usize]) -> Result<bool> {
    let g = f.graph();
    if path.iter().any(|&i| i >= f.len()) {
        return Err(Error::PathNotInFragment("vertex index out of range".into()));
    }
    check_path(&g, path, f)?;
    Ok(sectional_in(&g, path))
}

pub(crate) fn sectional_in(g: &Graph, path: &[usize]) -> bool {
    path.windows(3).all(|w| g.tau[w[2]] != Some(w[0]))
}

pub fn is_sectional_ids(f: &Fragment, ids: &[&str]) -> Result<bool> {
    let idx = ids.iter().map(|id| f.index(id)).collect::<Result<Vec<_>>>()?;
    is_sectional(f, &idx)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Coherence {
    /// no projective and no injective vertex
    Coherent,
    /// every projective (injective) starts (ends) a sectional path reaching the frontier
    CoherentUpToTruncation,
    /// a projective or injective all of whose sectional paths stay finite inside the interior
    Incoherent { witness: String },
}

/// Whether some sectional path from (`forward`) or into `start` reaches the frontier or cycles.
pub(crate) fn sectional_escape(g: &Graph, frontier: &[bool], start: usize, forward: bool) -> bool {
    let n = g.n();
    let step = |v: usize| if forward { &g.succ[v] } else { &g.pred[v] };
    // states are the last two vertices; `n` marks "no previous vertex"
    let idx = |p: usize, c: usize| p * n + c;
    let mut seen = vec![false; (n + 1) * n];
    let mut queue = VecDeque::from([(n, start)]);
    seen[idx(n, start)] = true;
    while let Some((p, c)) = queue.pop_front() {
        if frontier[c] {
            return true;
        }
        for &(d, _) in step(c) {
            let ok = p == n || if forward { g.tau[d] != Some(p) } else { g.tau[p] != Some(d) };
            if ok && !seen[idx(c, d)] {
                seen[idx(c, d)] = true;
                queue.push_back((c, d));
            }
        }
    }
    // a sectional cycle would allow arbitrarily long sectional paths
    sectional_cycle(g, start, forward)
}

/// Whether a cycle of the state graph is reachable from `start`.
fn sectional_cycle(g: &Graph, start: usize, forward: bool) -> bool {
    let n = g.n();
    let step = |v: usize| if forward { &g.succ[v] } else { &g.pred[v] };
    let mut color = std::collections::HashMap::new();
    let mut stack: Vec<((usize, usize), usize)> = vec![((n, start), 0)];
    color.insert((n, start), 1u8);
    while let Some(&mut ((p, c), ref mut k)) = stack.last_mut() {
        let nexts = step(c);
        if *k < nexts.len() {
            let d = nexts[*k].0;
            *k += 1;
            let ok = p == n || if forward { g.tau[d] != Some(p) } else { g.tau[p] != Some(d) };
            if !ok {
                continue;
            }
            match color.get(&(c, d)) {
                Some(1) => return true,
                Some(_) => {}
                None => {
                    color.insert((c, d), 1);
                    stack.push(((c, d), 0));
                }
            }
        } else {
            color.insert((p, c), 2);
            stack.pop();
        }
    }
    false
}

pub fn coherence_status(f: &Fragment) -> Coherence {
    let g = f.graph();
    let frontier: Vec<bool> = f.vertices.iter().map(|v| v.frontier).collect();
    let mut any = false;
    for (i, v) in f.vertices.iter().enumerate() {
        for (flag, forward) in [(v.proj, true), (v.inj, false)] {
            if flag {
                any = true;
                if !sectional_escape(&g, &frontier, i, forward) {
                    return Coherence::Incoherent { witness: v.id.clone() };
                }
            }
        }
    }
    if any {
        Coherence::CoherentUpToTruncation
    } else {
        Coherence::Coherent
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Acyclicity {
    pub cyclic: usize,
    pub acyclic: usize,
    /// `None` when the fragment is truncated and cofiniteness cannot be decided
    pub almost_cyclic: Option<bool>,
    pub almost_acyclic: Option<bool>,
}

/// Counts over the interior; on closed (finite) fragments both properties hold.
pub fn acyclicity_status(f: &Fragment) -> Acyclicity {
    let cyc = cyclic_vertices(f);
    let interior: Vec<usize> = (0..f.len()).filter(|&i| !f.vertices[i].frontier).collect();
    let cyclic = interior.iter().filter(|i| cyc.binary_search(i).is_ok()).count();
    let acyclic = interior.len() - cyclic;
    let closed = f.is_closed();
    Acyclicity {
        cyclic,
        acyclic,
        almost_cyclic: closed.then_some(true),
        almost_acyclic: closed.then_some(true),
    }
}

/// Interior nonprojective `Z` whose arrows in differ from the arrows out of `τZ`.
pub fn mesh_violations(f: &Fragment) -> Vec<String> {
    mesh_check(f).into_iter().map(|p| p.1).collect()
}

pub(crate) fn mesh_check(f: &Fragment) -> Vec<(usize, String)> {
    let g = f.graph();
    let mut out = Vec::new();
    for z in 0..f.len() {
        let v = &f.vertices[z];
        if v.frontier || v.proj {
            continue;
        }
        let Some(t) = g.tau[z] else {
            out.push((z, format!("{} has no translate", v.id)));
            continue;
        };
        let mut a: Vec<(usize, usize)> = g.pred[z].clone();
        let mut b: Vec<(usize, usize)> = g.succ[t].clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            out.push((z, format!("mesh at {} does not match the arrows out of {}", v.id, f.vertices[t].id)));
        }
    }
    out
}

/// Simple oriented cycles of length at most `max_len`, each starting at its smallest vertex.
/// The flag is `false` when enumeration stopped at the internal cap.
pub fn cycles(f: &Fragment, max_len: usize) -> (Vec<Vec<usize>>, bool) {
    let g = f.graph();
    let mut out = Vec::new();
    for s in 0..f.len() {
        let mut path = vec![s];
        let mut on = vec![false; f.len()];
        on[s] = true;
        if !extend_cycles(&g, s, &mut path, &mut on, max_len, &mut out) {
            return (out, false);
        }
    }
    (out, true)
}

fn extend_cycles(g: &Graph, s: usize, path: &mut Vec<usize>, on: &mut [bool], max: usize, out: &mut Vec<Vec<usize>>) -> bool {
    let c = *path.last().unwrap();
    for &(d, _) in &g.succ[c] {
        if d == s {
            out.push(path.clone());
            if out.len() >= MAX_CYCLES {
                return false;
            }
        } else if d > s && !on[d] && path.len() < max {
            on[d] = true;
            path.push(d);
            let ok = extend_cycles(g, s, path, on, max, out);
            path.pop();
            on[d] = false;
            if !ok {
                return false;
            }
        }
    }
    true
}

/// An `i < r` with `τ X_i = X_{i-2}` on the closed cycle `X_0 → … → X_r = X_0`, indices mod `r`.
pub fn tau_hook(f: &Fragment, cycle: &[usize]) -> Option<usize> {
    let g = f.graph();
    hook_in(&g, cycle)
}

/// Indices are read cyclically, so `i` runs over `2..r+2`.
pub(crate) fn hook_in(g: &Graph, cycle: &[usize]) -> Option<usize> {
    let r = cycle.len();
    let at = |i: usize| cycle[i % r];
    (2..r + 2).find(|&i| g.tau[at(i)] == Some(at(i - 2))).map(|i| i % r)
}

/// τ-orbits: classes of the relation generated by `X ~ τX`.
pub fn tau_orbits(f: &Fragment) -> Vec<Vec<usize>> {
    let g = f.graph();
    let mut uf = UnionFind::<usize>::new(f.len());
    for (x, t) in g.tau.iter().enumerate() {
        if let Some(y) = t {
            uf.union(x, *y);
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..f.len() {
        groups.entry(uf.find(v)).or_default().push(v);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}
