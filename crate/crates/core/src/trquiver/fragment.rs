use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragmentVertex {
    pub id: String,
    pub dim: BTreeMap<String, usize>,
    pub proj: bool,
    pub inj: bool,
    pub frontier: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragmentArrow {
    pub src: String,
    pub tgt: String,
    pub mult: usize,
}

/// Finite piece of an AR quiver. `tau` holds pairs `(X, τX)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fragment {
    pub vertices: Vec<FragmentVertex>,
    pub arrows: Vec<FragmentArrow>,
    pub tau: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
}

/// Index-based adjacency of a fragment.
#[derive(Clone, Debug)]
pub struct Graph {
    pub succ: Vec<Vec<(usize, usize)>>,
    pub pred: Vec<Vec<(usize, usize)>>,
    pub tau: Vec<Option<usize>>,
    pub tau_inv: Vec<Option<usize>>,
}

impl Graph {
    pub fn n(&self) -> usize {
        self.succ.len()
    }

    pub fn has_arrow(&self, a: usize, b: usize) -> bool {
        self.succ[a].iter().any(|&(t, _)| t == b)
    }

    pub fn mult(&self, a: usize, b: usize) -> usize {
        self.succ[a].iter().find(|&&(t, _)| t == b).map_or(0, |&(_, m)| m)
    }
}

impl Fragment {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index(&self, id: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v.id == id)
            .ok_or_else(|| Error::UnknownFragmentVertex(id.to_string()))
    }

    pub fn ids(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| self.vertices[i].id.clone()).collect()
    }

    pub fn is_closed(&self) -> bool {
        self.vertices.iter().all(|v| !v.frontier)
    }

    pub fn total_dim(&self, i: usize) -> usize {
        self.vertices[i].dim.values().sum()
    }

    pub fn graph(&self) -> Graph {
        let n = self.len();
        let pos: HashMap<&str, usize> = self.vertices.iter().enumerate().map(|(i, v)| (v.id.as_str(), i)).collect();
        let mut g = Graph { succ: vec![vec![]; n], pred: vec![vec![]; n], tau: vec![None; n], tau_inv: vec![None; n] };
        for a in &self.arrows {
            let (s, t) = (pos[a.src.as_str()], pos[a.tgt.as_str()]);
            g.succ[s].push((t, a.mult));
            g.pred[t].push((s, a.mult));
        }
        for (x, y) in &self.tau {
            let (x, y) = (pos[x.as_str()], pos[y.as_str()]);
            g.tau[x] = Some(y);
            g.tau_inv[y] = Some(x);
        }
        g
    }

    /// Full subfragment on the given vertices, in fragment order.
    pub fn restrict(&self, keep: &[usize]) -> Fragment {
        let mut mask = vec![false; self.len()];
        for &i in keep {
            mask[i] = true;
        }
        let inside = |id: &str| self.vertices.iter().position(|v| v.id == id).is_some_and(|i| mask[i]);
        Fragment {
            vertices: self.vertices.iter().enumerate().filter(|(i, _)| mask[*i]).map(|(_, v)| v.clone()).collect(),
            arrows: self.arrows.iter().filter(|a| inside(&a.src) && inside(&a.tgt)).cloned().collect(),
            tau: self.tau.iter().filter(|(x, y)| inside(x) && inside(y)).cloned().collect(),
            tags: vec![],
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fragments serialize")
    }

    /// Parses and validates vertex references.
    pub fn from_json(text: &str) -> Result<Fragment> {
        let f: Fragment = serde_json::from_str(text)?;
        let mut seen = std::collections::HashSet::new();
        for v in &f.vertices {
            if !seen.insert(v.id.as_str()) {
                return Err(Error::UnknownFragmentVertex(format!("{} (duplicate)", v.id)));
            }
        }
        for a in &f.arrows {
            f.index(&a.src)?;
            f.index(&a.tgt)?;
        }
        for (x, y) in &f.tau {
            f.index(x)?;
            f.index(y)?;
        }
        Ok(f)
    }
}
