use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
    pub valuation: (u32, u32),
}

/// Finite quiver; vertices and arrows are referred to by index internally.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn vertex_index(&self, v: &str) -> Result<usize> {
        self.vertices.iter().position(|x| x == v).ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    pub fn arrow_index(&self, a: &str) -> Result<usize> {
        self.arrows.iter().position(|x| x.id == a).ok_or_else(|| Error::UnknownArrow(a.to_string()))
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn out_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.src == v).map(|(i, _)| i)
    }

    pub fn in_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.tgt == v).map(|(i, _)| i)
    }

    /// Number of connected components of the underlying graph.
    pub fn components(&self) -> usize {
        let n = self.vertices.len();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for a in &self.arrows {
                    for (x, y) in [(a.src, a.tgt), (a.tgt, a.src)] {
                        if x == v && comp[y] == usize::MAX {
                            comp[y] = count;
                            q.push_back(y);
                        }
                    }
                }
            }
            count += 1;
        }
        count
    }

    /// Vertices reachable from `from` by directed paths of length ≥ 0, with a parent arrow.
    fn reach(&self, from: &[usize], forward: bool) -> Vec<Option<Option<usize>>> {
        let mut seen: Vec<Option<Option<usize>>> = vec![None; self.vertices.len()];
        let mut q = VecDeque::new();
        for &s in from {
            seen[s] = Some(None);
            q.push_back(s);
        }
        while let Some(v) = q.pop_front() {
            for (i, a) in self.arrows.iter().enumerate() {
                let (x, y) = if forward { (a.src, a.tgt) } else { (a.tgt, a.src) };
                if x == v && seen[y].is_none() {
                    seen[y] = Some(Some(i));
                    q.push_back(y);
                }
            }
        }
        seen
    }

    /// Convexity of a vertex set with a witness path and the convex closure.
    pub fn convexity(&self, set: &[usize]) -> Convexity {
        let fwd = self.reach(set, true);
        let bwd = self.reach(set, false);
        let inside = |v: usize| set.contains(&v);
        let mut closure: Vec<usize> = (0..self.vertices.len())
            .filter(|&v| inside(v) || (fwd[v].is_some() && bwd[v].is_some()))
            .collect();
        closure.sort_unstable();
        let outside = closure.iter().copied().find(|&v| !inside(v));
        let witness = outside.map(|x| {
            // walk back to the set, then forward to the set
            let mut head = vec![x];
            let mut v = x;
            while let Some(Some(a)) = fwd[v] {
                v = self.arrows[a].src;
                head.push(v);
            }
            head.reverse();
            let mut v = x;
            while let Some(Some(a)) = bwd[v] {
                v = self.arrows[a].tgt;
                head.push(v);
            }
            head
        });
        Convexity { convex: outside.is_none(), witness, closure }
    }
}

/// Result of a convexity test; the witness is a vertex path leaving the set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convexity {
    pub convex: bool,
    pub witness: Option<Vec<usize>>,
    pub closure: Vec<usize>,
}
