use std::collections::VecDeque;

use serde::Serialize;

use super::{cyclic_vertices, mesh_violations, Fragment};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TubeShape {
    /// stable tube of the given rank
    StableTube(usize),
    /// cyclic component with projectives (rays) and injectives (corays) inserted
    TubeLike { rays: usize, corays: usize },
    NotTube,
    /// truncated too early to tell
    Inconclusive,
}

/// Quasi-length of each vertex: undirected distance from the mouth, plus one.
fn quasi_lengths(f: &Fragment, mouth: &[usize]) -> Vec<Option<usize>> {
    let g = f.graph();
    let mut ql = vec![None; f.len()];
    let mut q = VecDeque::new();
    for &m in mouth {
        ql[m] = Some(1);
        q.push_back(m);
    }
    while let Some(v) = q.pop_front() {
        let d = ql[v].unwrap();
        for &(w, _) in g.succ[v].iter().chain(&g.pred[v]) {
            if ql[w].is_none() {
                ql[w] = Some(d + 1);
                q.push_back(w);
            }
        }
    }
    ql
}

pub fn detect_tube(f: &Fragment) -> TubeShape {
    let g = f.graph();
    let n = f.len();
    let interior: Vec<usize> = (0..n).filter(|&v| !f.vertices[v].frontier).collect();
    if interior.is_empty() {
        return TubeShape::Inconclusive;
    }
    if f.is_closed() {
        return TubeShape::NotTube;
    }
    let cyc = cyclic_vertices(f);
    if cyc.is_empty() {
        return TubeShape::NotTube;
    }
    if !mesh_violations(f).is_empty() {
        return TubeShape::NotTube;
    }
    let indeg = |v: usize| g.pred[v].iter().map(|p| p.1).sum::<usize>();
    let outdeg = |v: usize| g.succ[v].iter().map(|p| p.1).sum::<usize>();
    let rays = f.vertices.iter().filter(|v| v.proj).count();
    let corays = f.vertices.iter().filter(|v| v.inj).count();
    if rays + corays > 0 {
        let all_cyclic = interior.iter().all(|v| cyc.binary_search(v).is_ok());
        return if all_cyclic { TubeShape::TubeLike { rays, corays } } else { TubeShape::NotTube };
    }

    let mouth: Vec<usize> = interior.iter().copied().filter(|&v| indeg(v) == 1).collect();
    let Some(&m0) = mouth.first() else { return TubeShape::NotTube };
    let mut r = 0;
    let mut x = m0;
    loop {
        match g.tau[x] {
            Some(y) if mouth.contains(&y) => {
                r += 1;
                x = y;
                if x == m0 {
                    break;
                }
                if r > mouth.len() {
                    return TubeShape::NotTube;
                }
            }
            _ => return TubeShape::NotTube,
        }
    }
    if r != mouth.len() {
        return TubeShape::NotTube;
    }
    let ql = quasi_lengths(f, &mouth);
    if ql.iter().any(Option::is_none) {
        return TubeShape::NotTube;
    }
    let ql: Vec<usize> = ql.into_iter().map(Option::unwrap).collect();
    if f.arrows.iter().any(|a| a.mult != 1) {
        return TubeShape::NotTube;
    }
    for s in 0..n {
        for &(t, _) in &g.succ[s] {
            if ql[s].abs_diff(ql[t]) != 1 {
                return TubeShape::NotTube;
            }
        }
    }
    for &v in &interior {
        let want = if ql[v] == 1 { 1 } else { 2 };
        let tv = g.tau[v];
        if indeg(v) != want || outdeg(v) != want || tv.map(|t| ql[t]) != Some(ql[v]) {
            return TubeShape::NotTube;
        }
    }
    let top = *ql.iter().max().unwrap();
    if (1..=top).any(|k| ql.iter().filter(|&&q| q == k).count() != r) {
        return TubeShape::NotTube;
    }
    TubeShape::StableTube(r)
}
