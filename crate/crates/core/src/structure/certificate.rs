use serde::Serialize;

use crate::algebra::Algebra;
use crate::report::{Report, Status};

/// Layered comparison of two algebras: dimension, relation count, then a vertex
/// bijection matching the valued Ext-quivers and all `dim e_i A e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub dims: (usize, usize),
    pub relations: (usize, usize),
    /// `mapping[i]` is the vertex of the second algebra matched with vertex `i`
    pub mapping: Option<Vec<usize>>,
    /// first layer that differed
    pub failed: Option<String>,
}

impl Certificate {
    pub fn agree(&self) -> bool {
        self.failed.is_none()
    }

    pub fn report(&self, check: &str) -> Report {
        let mut w = vec![
            format!("dimensions {} and {}", self.dims.0, self.dims.1),
            format!("minimal relations {} and {}", self.relations.0, self.relations.1),
        ];
        if let Some(layer) = &self.failed {
            w.push(format!("differs at: {layer}"));
        }
        if let Some(m) = &self.mapping {
            w.push(format!("vertex matching {m:?}"));
        }
        Report::leaf(check, Status::of(self.agree()), w)
    }
}

/// `(dim e_i A e_j, Ext-quiver valuation i -> j)` for all pairs.
fn table(a: &Algebra) -> Vec<Vec<(usize, u32)>> {
    let n = a.n_vertices();
    let mut t: Vec<Vec<(usize, u32)>> = (0..n).map(|i| (0..n).map(|j| (a.block(i, j).len(), 0)).collect()).collect();
    for arrow in a.ext_quiver().arrows {
        t[arrow.src][arrow.tgt].1 = arrow.valuation.0;
    }
    t
}

fn extend(ta: &[Vec<(usize, u32)>], tb: &[Vec<(usize, u32)>], map: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let i = map.len();
    if i == ta.len() {
        return true;
    }
    for j in 0..tb.len() {
        if used[j] || ta[i][i] != tb[j][j] {
            continue;
        }
        if (0..i).any(|k| ta[i][k] != tb[j][map[k]] || ta[k][i] != tb[map[k]][j]) {
            continue;
        }
        used[j] = true;
        map.push(j);
        if extend(ta, tb, map, used) {
            return true;
        }
        map.pop();
        used[j] = false;
    }
    false
}

pub fn compare_algebras(a: &Algebra, b: &Algebra) -> Certificate {
    let mut cert = Certificate {
        dims: (a.dim(), b.dim()),
        relations: (a.relations().len(), b.relations().len()),
        mapping: None,
        failed: None,
    };
    if a.dim() != b.dim() {
        cert.failed = Some("dimension".into());
        return cert;
    }
    if a.n_vertices() != b.n_vertices() {
        cert.failed = Some("number of vertices".into());
        return cert;
    }
    if cert.relations.0 != cert.relations.1 {
        cert.failed = Some("relation count".into());
        return cert;
    }
    let (ta, tb) = (table(a), table(b));
    // try the matching by vertex names first
    let by_name: Option<Vec<usize>> = (0..a.n_vertices()).map(|i| b.vertex_index(a.vertex_name(i)).ok()).collect();
    if let Some(m) = by_name {
        let n = m.len();
        if (0..n).all(|i| (0..n).all(|j| ta[i][j] == tb[m[i]][m[j]])) {
            cert.mapping = Some(m);
            return cert;
        }
    }
    let mut map = Vec::new();
    let mut used = vec![false; b.n_vertices()];
    if extend(&ta, &tb, &mut map, &mut used) {
        cert.mapping = Some(map);
    } else {
        cert.failed = Some("Ext-quiver or Cartan blocks".into());
    }
    cert
}
