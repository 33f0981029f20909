use std::collections::VecDeque;

use serde::Serialize;

use super::{components, cyclic_components, mesh_check, sccs, sectional_escape, tau_orbits, Fragment, Graph};
use crate::error::{Error, Result};

/// A multisection `Δ` with its derived parts, as sorted vertex index lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Multisection {
    pub delta: Vec<usize>,
    pub left_prime: Vec<usize>,
    pub right_prime: Vec<usize>,
    pub left_second: Vec<usize>,
    pub right_second: Vec<usize>,
    pub left: Vec<usize>,
    pub core: Vec<usize>,
    pub right: Vec<usize>,
}

struct Reach {
    /// `down[v][w]`: a path `v ⇝ w` (length ≥ 0)
    down: Vec<Vec<bool>>,
    up: Vec<Vec<bool>>,
}

fn reach(g: &Graph) -> Reach {
    let n = g.n();
    let bfs = |s: usize, fwd: bool| {
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &(w, _) in if fwd { &g.succ[v] } else { &g.pred[v] } {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
        seen
    };
    Reach { down: (0..n).map(|s| bfs(s, true)).collect(), up: (0..n).map(|s| bfs(s, false)).collect() }
}

fn connected(g: &Graph, set: &[bool]) -> bool {
    let Some(s) = set.iter().position(|&b| b) else { return false };
    let mut seen = vec![false; set.len()];
    seen[s] = true;
    let mut q = VecDeque::from([s]);
    while let Some(v) = q.pop_front() {
        for &(w, _) in g.succ[v].iter().chain(&g.pred[v]) {
            if set[w] && !seen[w] {
                seen[w] = true;
                q.push_back(w);
            }
        }
    }
    set.iter().zip(&seen).all(|(a, b)| !a || *b)
}

fn meets_all(orbits: &[Vec<usize>], set: &[bool]) -> bool {
    orbits.iter().all(|o| o.iter().any(|&v| set[v]))
}

/// Greedy shrink of the whole component; each step removes the successors (or the
/// predecessors) of one vertex, which keeps the set convex.
fn shrink(g: &Graph, r: &Reach, orbits: &[Vec<usize>], order: &[usize]) -> Vec<bool> {
    let n = g.n();
    let mut set = vec![true; n];
    'outer: loop {
        for &v in order {
            if !set[v] {
                continue;
            }
            for cone in [&r.down[v], &r.up[v]] {
                let cand: Vec<bool> = (0..n).map(|w| set[w] && !cone[w]).collect();
                if meets_all(orbits, &cand) && connected(g, &cand) {
                    set = cand;
                    continue 'outer;
                }
            }
        }
        return set;
    }
}

/// Whether some `X ∈ Δ` starts (`forward`) or ends a nonsectional path whose other end is marked.
fn nonsectional_to(g: &Graph, start: usize, target: &[bool], forward: bool) -> bool {
    let n = g.n();
    let step = |v: usize| if forward { &g.succ[v] } else { &g.pred[v] };
    let key = |p: usize, c: usize, f: bool| (p * n + c) * 2 + usize::from(f);
    let mut seen = vec![false; (n + 1) * n * 2];
    let mut q = VecDeque::from([(n, start, false)]);
    seen[key(n, start, false)] = true;
    while let Some((p, c, flag)) = q.pop_front() {
        if flag && target[c] {
            return true;
        }
        for &(d, _) in step(c) {
            let hook = p != n && if forward { g.tau[d] == Some(p) } else { g.tau[p] == Some(d) };
            let nf = flag || hook;
            if !seen[key(c, d, nf)] {
                seen[key(c, d, nf)] = true;
                q.push_back((c, d, nf));
            }
        }
    }
    false
}

fn to_list(set: &[bool]) -> Vec<usize> {
    (0..set.len()).filter(|&i| set[i]).collect()
}

fn parts(f: &Fragment, g: &Graph, delta: Vec<bool>) -> Multisection {
    let n = f.len();
    let proj: Vec<bool> = f.vertices.iter().map(|v| v.proj).collect();
    let inj: Vec<bool> = f.vertices.iter().map(|v| v.inj).collect();
    let lp: Vec<bool> = (0..n).map(|x| delta[x] && nonsectional_to(g, x, &proj, true)).collect();
    let rp: Vec<bool> = (0..n).map(|x| delta[x] && nonsectional_to(g, x, &inj, false)).collect();
    let ls: Vec<bool> = (0..n).map(|x| lp[x] && !g.tau_inv[x].is_some_and(|y| lp[y])).collect();
    let rs: Vec<bool> = (0..n).map(|x| rp[x] && !g.tau[x].is_some_and(|y| rp[y])).collect();
    let mut left: Vec<bool> = (0..n).map(|x| delta[x] && !rp[x]).collect();
    let mut right: Vec<bool> = (0..n).map(|x| delta[x] && !lp[x]).collect();
    for x in 0..n {
        if rs[x] {
            if let Some(y) = g.tau[x] {
                left[y] = true;
            }
        }
        if ls[x] {
            if let Some(y) = g.tau_inv[x] {
                right[y] = true;
            }
        }
    }
    let core: Vec<bool> = (0..n).map(|x| lp[x] && rp[x]).collect();
    Multisection {
        delta: to_list(&delta),
        left_prime: to_list(&lp),
        right_prime: to_list(&rp),
        left_second: to_list(&ls),
        right_second: to_list(&rs),
        left: to_list(&left),
        core: to_list(&core),
        right: to_list(&right),
    }
}

fn precheck(f: &Fragment) -> Result<()> {
    if !f.is_closed() {
        return Err(Error::NotClosed);
    }
    if components(f).len() != 1 {
        return Err(Error::NotConnected);
    }
    Ok(())
}

fn search(f: &Fragment, reverse: bool) -> Multisection {
    let g = f.graph();
    let r = reach(&g);
    let orbits = tau_orbits(f);
    let mut order: Vec<usize> = (0..f.len()).collect();
    if reverse {
        order.reverse();
    }
    let delta = shrink(&g, &r, &orbits, &order);
    parts(f, &g, delta)
}

/// A multisection of a closed connected fragment.
pub fn find_multisection(f: &Fragment) -> Result<Multisection> {
    precheck(f)?;
    Ok(search(f, false))
}

/// Whether no proper convex subset of `delta` meets every τ-orbit.
pub fn is_minimal(f: &Fragment, delta: &[usize]) -> bool {
    let g = f.graph();
    let r = reach(&g);
    let orbits = tau_orbits(f);
    let n = f.len();
    let mut set = vec![false; n];
    for &v in delta {
        set[v] = true;
    }
    delta.iter().all(|&v| {
        [&r.down[v], &r.up[v]].iter().all(|cone| {
            let cand: Vec<bool> = (0..n).map(|w| set[w] && !cone[w]).collect();
            !meets_all(&orbits, &cand)
        })
    })
}

/// Whether `delta` is convex: every path between two of its vertices stays inside.
pub fn is_convex(f: &Fragment, delta: &[usize]) -> bool {
    let g = f.graph();
    let r = reach(&g);
    let mut set = vec![false; f.len()];
    for &v in delta {
        set[v] = true;
    }
    (0..f.len()).filter(|&z| !set[z]).all(|z| {
        let from = delta.iter().any(|&a| r.down[a][z]);
        let to = delta.iter().any(|&b| r.down[z][b]);
        !(from && to)
    })
}

/// `Δ_c`, computed from two multisections found with opposite scan orders.
pub fn core(f: &Fragment) -> Result<Vec<usize>> {
    precheck(f)?;
    let a = search(f, false);
    let b = search(f, true);
    if a.core != b.core {
        return Err(Error::CoreMismatch(format!("{:?} vs {:?}", f.ids(&a.core), f.ids(&b.core))));
    }
    Ok(a.core)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoherentParts {
    pub parts: Vec<Vec<usize>>,
    pub remainder: Vec<usize>,
}

/// Peels from a cyclic component the vertices that cannot lie in a cyclic coherent
/// translation subquiver: mesh violations, vertices whose translate was peeled,
/// projectives (injectives) without a sectional path to the frontier, and vertices
/// left on no cycle. The connected pieces of what survives are the parts.
pub fn find_cyclic_coherent_parts(f: &Fragment, gamma: &[usize]) -> Result<CoherentParts> {
    let mut g: Vec<usize> = gamma.to_vec();
    g.sort_unstable();
    if !cyclic_components(f).components.contains(&g) {
        return Err(Error::NotCyclic(format!("{:?}", f.ids(&g))));
    }
    let graph = f.graph();
    let n = f.len();
    let mut keep = vec![false; n];
    for &v in &g {
        keep[v] = true;
    }
    let frontier: Vec<bool> = f.vertices.iter().map(|v| v.frontier).collect();
    for (v, _) in mesh_check(f) {
        keep[v] = false;
    }
    loop {
        let sub = restricted(&graph, &keep);
        let on_cycle: Vec<bool> = {
            let mut c = vec![false; n];
            for (comp, cyc) in sccs(&sub) {
                for v in comp {
                    c[v] = cyc;
                }
            }
            c
        };
        let drop = g.iter().copied().find(|&v| {
            let x = &f.vertices[v];
            if !keep[v] {
                return false;
            }
            if !on_cycle[v] {
                return true;
            }
            if x.frontier {
                return false;
            }
            let lost = |t: Option<usize>| t.is_some_and(|t| !keep[t]);
            (!x.proj && lost(graph.tau[v]))
                || (!x.inj && lost(graph.tau_inv[v]))
                || (x.proj && !sectional_escape(&sub, &frontier, v, true))
                || (x.inj && !sectional_escape(&sub, &frontier, v, false))
        });
        match drop {
            Some(v) => keep[v] = false,
            None => break,
        }
    }
    let kept: Vec<usize> = g.iter().copied().filter(|&v| keep[v]).collect();
    let remainder: Vec<usize> = g.iter().copied().filter(|&v| !keep[v]).collect();
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; n];
    for &s in &kept {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut part = vec![s];
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &(w, _) in graph.succ[v].iter().chain(&graph.pred[v]) {
                if keep[w] && !seen[w] {
                    seen[w] = true;
                    part.push(w);
                    q.push_back(w);
                }
            }
        }
        part.sort_unstable();
        parts.push(part);
    }
    Ok(CoherentParts { parts, remainder })
}

/// The graph with arrows and τ restricted to the marked vertices.
fn restricted(g: &Graph, keep: &[bool]) -> Graph {
    let filt = |l: &Vec<(usize, usize)>, v: usize| if keep[v] { l.iter().copied().filter(|p| keep[p.0]).collect() } else { vec![] };
    let n = g.n();
    Graph {
        succ: (0..n).map(|v| filt(&g.succ[v], v)).collect(),
        pred: (0..n).map(|v| filt(&g.pred[v], v)).collect(),
        tau: (0..n).map(|v| g.tau[v].filter(|&t| keep[v] && keep[t])).collect(),
        tau_inv: (0..n).map(|v| g.tau_inv[v].filter(|&t| keep[v] && keep[t])).collect(),
    }
}
