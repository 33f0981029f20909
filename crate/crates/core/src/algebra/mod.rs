//! Bound quiver algebras `KQ/I` with an exact path basis.
//!
//! Paths compose left to right: `p·q` is defined when `tgt(p) = src(q)`.
//! The basis consists of standard monomials; shorter paths are preferred.

mod ideal;
mod parse;
mod present;
mod quiver;

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

pub use ideal::Ideal;
pub use parse::{parse_algebra, parse_source, parse_source_over, AlgebraSource, ModuleSpec};
pub(crate) use parse::parse_rows;
pub use present::{Presented, DEFAULT_DIM_BOUND};
pub use quiver::{Arrow, Convexity, Quiver};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::rref_rows;

/// Sparse algebra element: sorted `(basis index, nonzero coefficient)` pairs.
pub type Elem = Vec<(usize, Scalar)>;

/// A path of the quiver; trivial paths have no arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub src: usize,
    pub tgt: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Linear combination of paths of length ≥ 2 sharing source and target.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

#[derive(Debug)]
pub struct Algebra {
    name: String,
    field: Field,
    quiver: Quiver,
    relations: Vec<Relation>,
    basis: Vec<Path>,
    index: HashMap<(usize, Vec<usize>), usize>,
    /// normal forms of non-basis paths shorter than `nil`
    nf: HashMap<(usize, Vec<usize>), Elem>,
    /// every path of length ≥ nil lies in the ideal
    nil: usize,
    blocks: Vec<Vec<Vec<usize>>>,
    fingerprint: u64,
    opposite: OnceLock<Box<Algebra>>,
}

/// Cap on enumerated quiver paths while certifying admissibility.
const PATH_CAP: usize = 200_000;
/// Largest nilpotency index tried before declaring the ideal non-admissible.
const MAX_NIL: usize = 64;

impl Algebra {
    /// Builds the algebra and its path basis, certifying admissibility.
    pub fn new(name: &str, field: Field, quiver: Quiver, relations: Vec<Relation>) -> Result<Algebra> {
        Algebra::with_bound(name, field, quiver, relations, DEFAULT_DIM_BOUND)
    }

    pub fn with_bound(
        name: &str,
        field: Field,
        quiver: Quiver,
        relations: Vec<Relation>,
        bound: usize,
    ) -> Result<Algebra> {
        let relations = normalize_relations(&quiver, relations)?;
        let (nil, paths) = find_nilpotency(field, &quiver, &relations)?;
        let (basis, nf) = standard_basis(field, &quiver, &relations, nil, &paths);
        if basis.len() > bound {
            return Err(Error::InfiniteDimensional(bound));
        }
        let mut index = HashMap::new();
        let n = quiver.n_vertices();
        let mut blocks = vec![vec![Vec::new(); n]; n];
        for (i, p) in basis.iter().enumerate() {
            index.insert((p.src, p.arrows.clone()), i);
            blocks[p.src][p.tgt].push(i);
        }
        let mut alg = Algebra {
            name: name.to_string(),
            field,
            quiver,
            relations,
            basis,
            index,
            nf: HashMap::new(),
            nil,
            blocks,
            fingerprint: 0,
            opposite: OnceLock::new(),
        };
        alg.nf = nf
            .into_iter()
            .map(|(k, v)| {
                let e = v.into_iter().map(|(p, c)| (alg.index[&(p.src, p.arrows)], c)).collect();
                (k, sort_elem(e))
            })
            .collect();
        alg.fingerprint = alg.compute_fingerprint();
        Ok(alg)
    }

    fn compute_fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.field.hash(&mut h);
        self.quiver.hash(&mut h);
        self.relations.hash(&mut h);
        h.finish()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn n_vertices(&self) -> usize {
        self.quiver.n_vertices()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.quiver.vertices[v]
    }

    pub fn vertex_index(&self, v: &str) -> Result<usize> {
        self.quiver.vertex_index(v)
    }

    /// Every path of this length or longer vanishes.
    pub fn nilpotency(&self) -> usize {
        self.nil
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn is_hereditary(&self) -> bool {
        self.relations.is_empty()
    }

    /// Basis indices of `e_i A e_j`, i.e. paths from `i` to `j`.
    pub fn block(&self, i: usize, j: usize) -> &[usize] {
        &self.blocks[i][j]
    }

    /// Basis index of the trivial path at `v`.
    pub fn idempotent(&self, v: usize) -> usize {
        self.index[&(v, vec![])]
    }

    /// Basis index of a path if it is a basis element.
    pub fn basis_index(&self, src: usize, arrows: &[usize]) -> Option<usize> {
        self.index.get(&(src, arrows.to_vec())).copied()
    }

    /// Normal form of the path `src --arrows-->`.
    pub fn word(&self, src: usize, arrows: &[usize]) -> Elem {
        if arrows.len() >= self.nil {
            return vec![];
        }
        let key = (src, arrows.to_vec());
        if let Some(&i) = self.index.get(&key) {
            return vec![(i, self.field.one())];
        }
        self.nf.get(&key).cloned().unwrap_or_default()
    }

    pub fn mul_basis(&self, a: usize, b: usize) -> Elem {
        let (p, q) = (&self.basis[a], &self.basis[b]);
        if p.tgt != q.src {
            return vec![];
        }
        if p.arrows.len() + q.arrows.len() >= self.nil {
            return vec![];
        }
        let mut w = p.arrows.clone();
        w.extend_from_slice(&q.arrows);
        self.word(p.src, &w)
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        let mut acc: HashMap<usize, Scalar> = HashMap::new();
        for (a, ca) in x {
            for (b, cb) in y {
                let c = ca * cb;
                for (k, ck) in self.mul_basis(*a, *b) {
                    let t = &c * &ck;
                    let e = acc.entry(k).or_insert_with(|| self.field.zero());
                    *e = &*e + &t;
                }
            }
        }
        sort_elem(acc.into_iter().collect())
    }

    pub fn path_string(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e{}", self.quiver.vertices[p.src])
        } else {
            p.arrows.iter().map(|&a| self.quiver.arrows[a].id.as_str()).collect::<Vec<_>>().join("*")
        }
    }

    pub fn elem_string(&self, x: &Elem) -> String {
        if x.is_empty() {
            return "0".into();
        }
        x.iter()
            .map(|(i, c)| format!("{c}*{}", self.path_string(&self.basis[*i])))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Opposite algebra: same vertex and arrow names, arrows reversed.
    pub fn opposite(&self) -> &Algebra {
        self.opposite.get_or_init(|| {
            let mut q = self.quiver.clone();
            for a in &mut q.arrows {
                std::mem::swap(&mut a.src, &mut a.tgt);
            }
            let rels = self
                .relations
                .iter()
                .map(|r| Relation {
                    terms: r
                        .terms
                        .iter()
                        .map(|(c, w)| (c.clone(), w.iter().rev().copied().collect()))
                        .collect(),
                })
                .collect();
            let name = format!("{}^op", self.name);
            Box::new(Algebra::with_bound(&name, self.field, q, rels, usize::MAX).expect("opposite of an admissible algebra"))
        })
    }

    /// Basis index in the opposite algebra of the reversed basis path.
    pub fn op_index(&self, i: usize) -> usize {
        let p = &self.basis[i];
        let rev: Vec<usize> = p.arrows.iter().rev().copied().collect();
        let op = self.opposite();
        op.basis_index(p.tgt, &rev).expect("opposite basis is reversed basis")
    }

    /// Valued Ext-quiver: one arrow `i->j` with valuation `(d, d)` where
    /// `d = dim e_i (rad A / rad² A) e_j`.
    pub fn ext_quiver(&self) -> Quiver {
        let n = self.n_vertices();
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let rad: Vec<usize> = self.block(i, j).iter().copied().filter(|&b| !self.basis[b].is_empty()).collect();
                if rad.is_empty() {
                    continue;
                }
                let mut rows = Vec::new();
                for k in 0..n {
                    for &a in self.block(i, k) {
                        if self.basis[a].is_empty() {
                            continue;
                        }
                        for &b in self.block(k, j) {
                            if self.basis[b].is_empty() {
                                continue;
                            }
                            rows.push(self.dense_block(&self.mul_basis(a, b), &rad));
                        }
                    }
                }
                let r2 = rref_rows(&mut rows, rad.len()).len();
                let d = rad.len() - r2;
                if d > 0 {
                    arrows.push(Arrow {
                        id: format!("{}->{}", self.quiver.vertices[i], self.quiver.vertices[j]),
                        src: i,
                        tgt: j,
                        valuation: (d as u32, d as u32),
                    });
                }
            }
        }
        Quiver { vertices: self.quiver.vertices.clone(), arrows }
    }

    /// Coordinates of `x` along the listed basis indices.
    pub fn dense_block(&self, x: &Elem, cols: &[usize]) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); cols.len()];
        for (i, c) in x {
            if let Some(k) = cols.iter().position(|b| b == i) {
                v[k] = c.clone();
            }
        }
        v
    }

    pub fn dense(&self, x: &Elem) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        for (i, c) in x {
            v[*i] = c.clone();
        }
        v
    }

    pub fn sparse(&self, v: &[Scalar]) -> Elem {
        v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
    }

    /// Evaluates a relation in the algebra.
    pub fn eval_relation(&self, r: &Relation) -> Elem {
        let mut acc: Vec<Scalar> = vec![self.field.zero(); self.dim()];
        for (c, w) in &r.terms {
            let src = self.quiver.arrows[w[0]].src;
            for (i, x) in self.word(src, w) {
                acc[i] = &acc[i] + &(c * &x);
            }
        }
        self.sparse(&acc)
    }

    /// Same quiver and the same ideal of relations (generators may differ).
    pub fn same_presentation(&self, other: &Algebra) -> bool {
        self.field == other.field
            && self.quiver == other.quiver
            && self.dim() == other.dim()
            && other.relations.iter().all(|r| self.eval_relation(r).is_empty())
            && self.relations.iter().all(|r| other.eval_relation(r).is_empty())
    }

    /// Source text in the algebra format; parses back to an equal algebra.
    pub fn to_source(&self) -> String {
        let mut s = format!("algebra {}\nfield {}\nvertices {}\narrows\n", self.name, self.field, self.quiver.vertices.join(" "));
        for a in &self.quiver.arrows {
            s += &format!("  {}: {} -> {}\n", a.id, self.quiver.vertices[a.src], self.quiver.vertices[a.tgt]);
        }
        if !self.relations.is_empty() {
            s += "relations\n";
            for r in &self.relations {
                let terms: Vec<String> = r
                    .terms
                    .iter()
                    .map(|(c, w)| {
                        let word = w.iter().map(|&a| self.quiver.arrows[a].id.as_str()).collect::<Vec<_>>().join("*");
                        let c = match c {
                            Scalar::Fp(v, _) => v.to_string(),
                            _ => c.to_string(),
                        };
                        format!("{c} * {word}")
                    })
                    .collect();
                s += &format!("  {}\n", terms.join(" + "));
            }
        }
        s
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} over {}: {} vertices, {} arrows, {} relations, dim {}",
            self.name,
            self.field,
            self.n_vertices(),
            self.quiver.arrows.len(),
            self.relations.len(),
            self.dim()
        )
    }
}

pub(crate) fn sort_elem(mut e: Vec<(usize, Scalar)>) -> Elem {
    e.retain(|(_, c)| !c.is_zero());
    e.sort_by_key(|(i, _)| *i);
    e
}

/// Validates relations and merges repeated monomials.
fn normalize_relations(q: &Quiver, rels: Vec<Relation>) -> Result<Vec<Relation>> {
    let mut out = Vec::new();
    for r in rels {
        let mut terms: Vec<(Scalar, Vec<usize>)> = Vec::new();
        let mut ends: Option<(usize, usize)> = None;
        for (c, w) in r.terms {
            if w.len() < 2 {
                let name = w.iter().map(|&a| q.arrows[a].id.clone()).collect::<Vec<_>>().join("*");
                return Err(Error::NonAdmissibleIdeal(format!("relation term `{name}` has length {} < 2", w.len())));
            }
            for k in 1..w.len() {
                if q.arrows[w[k - 1]].tgt != q.arrows[w[k]].src {
                    return Err(Error::NonAdmissibleIdeal(format!(
                        "arrows `{}` and `{}` do not compose",
                        q.arrows[w[k - 1]].id, q.arrows[w[k]].id
                    )));
                }
            }
            let e = (q.arrows[w[0]].src, q.arrows[*w.last().unwrap()].tgt);
            if *ends.get_or_insert(e) != e {
                return Err(Error::NonAdmissibleIdeal("relation terms have different endpoints".into()));
            }
            match terms.iter_mut().find(|(_, v)| *v == w) {
                Some(t) => t.0 = &t.0 + &c,
                None => terms.push((c, w)),
            }
        }
        terms.retain(|(c, _)| !c.is_zero());
        if !terms.is_empty() {
            out.push(Relation { terms });
        }
    }
    Ok(out)
}

/// Canonical order key: length, then arrow ids, then source vertex.
fn path_key<'a>(q: &'a Quiver, p: &Path) -> (usize, Vec<&'a str>, usize) {
    (p.arrows.len(), p.arrows.iter().map(|&a| q.arrows[a].id.as_str()).collect(), p.src)
}

/// All paths of length ≤ `max`, grouped by length.
fn enumerate_paths(q: &Quiver, max: usize) -> Result<Vec<Vec<Path>>> {
    let mut by_len: Vec<Vec<Path>> = vec![(0..q.n_vertices()).map(|v| Path { src: v, tgt: v, arrows: vec![] }).collect()];
    let mut total = by_len[0].len();
    for _ in 0..max {
        let mut next = Vec::new();
        for p in by_len.last().unwrap() {
            for a in q.out_arrows(p.tgt) {
                let mut w = p.arrows.clone();
                w.push(a);
                next.push(Path { src: p.src, tgt: q.arrows[a].tgt, arrows: w });
            }
        }
        total += next.len();
        if total > PATH_CAP {
            return Err(Error::InfiniteDimensional(PATH_CAP));
        }
        let done = next.is_empty();
        by_len.push(next);
        if done {
            break;
        }
    }
    Ok(by_len)
}

/// Ideal elements `u·r·w` with every term of length ≤ `max`, as path combinations.
fn ideal_elements(q: &Quiver, rels: &[Relation], by_len: &[Vec<Path>], max: usize) -> Vec<(usize, usize, Vec<(Scalar, Vec<usize>)>)> {
    let mut out = Vec::new();
    for r in rels {
        let lmax = r.terms.iter().map(|t| t.1.len()).max().unwrap();
        if lmax > max {
            continue;
        }
        let s = q.arrows[r.terms[0].1[0]].src;
        let t = q.arrows[*r.terms[0].1.last().unwrap()].tgt;
        let room = max - lmax;
        let lefts: Vec<&Path> = by_len.iter().take(room + 1).flatten().filter(|p| p.tgt == s).collect();
        let rights: Vec<&Path> = by_len.iter().take(room + 1).flatten().filter(|p| p.src == t).collect();
        for u in &lefts {
            for w in &rights {
                if u.len() + w.len() > room {
                    continue;
                }
                let terms = r
                    .terms
                    .iter()
                    .map(|(c, m)| {
                        let mut word = u.arrows.clone();
                        word.extend_from_slice(m);
                        word.extend_from_slice(&w.arrows);
                        (c.clone(), word)
                    })
                    .collect();
                out.push((u.src, w.tgt, terms));
            }
        }
    }
    out
}

/// Per-block dense elimination with columns ordered from the largest path down.
struct BlockSystem {
    cols: HashMap<Vec<usize>, usize>,
    order: Vec<Path>,
    rows: Vec<Vec<Scalar>>,
}

fn block_systems(q: &Quiver, by_len: &[Vec<Path>], max_len: usize) -> HashMap<(usize, usize), BlockSystem> {
    let mut sys: HashMap<(usize, usize), BlockSystem> = HashMap::new();
    for p in by_len.iter().take(max_len + 1).flatten() {
        sys.entry((p.src, p.tgt))
            .or_insert_with(|| BlockSystem { cols: HashMap::new(), order: vec![], rows: vec![] })
            .order
            .push(p.clone());
    }
    for b in sys.values_mut() {
        b.order.sort_by(|x, y| path_key(q, y).cmp(&path_key(q, x)));
        for (i, p) in b.order.iter().enumerate() {
            b.cols.insert(p.arrows.clone(), i);
        }
    }
    sys
}

/// Smallest `N` (found by increasing search) such that all paths of length `N` lie in the ideal.
fn find_nilpotency(field: Field, q: &Quiver, rels: &[Relation]) -> Result<(usize, Vec<Vec<Path>>)> {
    let slack = rels
        .iter()
        .map(|r| {
            let lens = r.terms.iter().map(|t| t.1.len());
            lens.clone().max().unwrap() - lens.min().unwrap()
        })
        .max()
        .unwrap_or(0);
    let mut n = 1;
    loop {
        let max = n + 2 * slack;
        let by_len = enumerate_paths(q, max)?;
        let with_n: Vec<&Path> = by_len.get(n).map(|v| v.iter().collect()).unwrap_or_default();
        if with_n.is_empty() {
            return Ok((n, by_len));
        }
        let mut sys = block_systems(q, &by_len, max);
        for (s, t, terms) in ideal_elements(q, rels, &by_len, max) {
            let b = sys.get_mut(&(s, t)).unwrap();
            let mut row = vec![field.zero(); b.order.len()];
            for (c, w) in terms {
                let k = b.cols[&w];
                row[k] = &row[k] + &c;
            }
            b.rows.push(row);
        }
        let mut escaped = None;
        for ((s, t), b) in sys.iter_mut() {
            let paths: Vec<&&Path> = with_n.iter().filter(|p| p.src == *s && p.tgt == *t).collect();
            if paths.is_empty() {
                continue;
            }
            let width = b.order.len();
            let pivots = rref_rows(&mut b.rows, width);
            for p in paths {
                let c = b.cols[&p.arrows];
                let ok = pivots.iter().position(|&x| x == c).is_some_and(|r| {
                    b.rows[r].iter().enumerate().all(|(j, v)| j == c || v.is_zero())
                });
                if !ok {
                    escaped = Some((*p).clone());
                    break;
                }
            }
            if escaped.is_some() {
                break;
            }
        }
        match escaped {
            None => return Ok((n, by_len)),
            Some(p) => {
                if n >= MAX_NIL {
                    let w = p.arrows.iter().map(|&a| q.arrows[a].id.as_str()).collect::<Vec<_>>().join("*");
                    return Err(Error::NonAdmissibleIdeal(format!(
                        "path `{w}` of length {n} is not in the ideal, so no power of the arrow ideal is contained in it"
                    )));
                }
                n += 1;
            }
        }
    }
}

type NormalForms = HashMap<(usize, Vec<usize>), Vec<(Path, Scalar)>>;

/// Standard monomials of `KQ/(I + R^nil)` and normal forms of the other short paths.
fn standard_basis(field: Field, q: &Quiver, rels: &[Relation], nil: usize, by_len: &[Vec<Path>]) -> (Vec<Path>, NormalForms) {
    let top = nil.saturating_sub(1);
    let mut sys = block_systems(q, by_len, top);
    for (s, t, terms) in ideal_elements_truncated(q, rels, by_len, top) {
        let Some(b) = sys.get_mut(&(s, t)) else { continue };
        let mut row = vec![field.zero(); b.order.len()];
        for (c, w) in terms {
            let k = b.cols[&w];
            row[k] = &row[k] + &c;
        }
        b.rows.push(row);
    }
    let mut basis = Vec::new();
    let mut nf = HashMap::new();
    for b in sys.values_mut() {
        let width = b.order.len();
        let pivots = rref_rows(&mut b.rows, width);
        let mut is_pivot = vec![false; width];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for (c, p) in b.order.iter().enumerate() {
            if !is_pivot[c] {
                basis.push(p.clone());
            }
        }
        for (r, &c) in pivots.iter().enumerate() {
            let p = &b.order[c];
            let form = (0..width)
                .filter(|&j| j != c && !b.rows[r][j].is_zero())
                .map(|j| (b.order[j].clone(), -&b.rows[r][j]))
                .collect();
            nf.insert((p.src, p.arrows.clone()), form);
        }
    }
    basis.sort_by(|x, y| path_key(q, x).cmp(&path_key(q, y)));
    (basis, nf)
}

/// Like `ideal_elements` but keeps terms of length ≤ `max` only (the rest lie in `R^nil`).
fn ideal_elements_truncated(q: &Quiver, rels: &[Relation], by_len: &[Vec<Path>], max: usize) -> Vec<(usize, usize, Vec<(Scalar, Vec<usize>)>)> {
    let mut out = Vec::new();
    for r in rels {
        let lmin = r.terms.iter().map(|t| t.1.len()).min().unwrap();
        if lmin > max {
            continue;
        }
        let s = q.arrows[r.terms[0].1[0]].src;
        let t = q.arrows[*r.terms[0].1.last().unwrap()].tgt;
        let room = max - lmin;
        let lefts: Vec<&Path> = by_len.iter().take(room + 1).flatten().filter(|p| p.tgt == s).collect();
        let rights: Vec<&Path> = by_len.iter().take(room + 1).flatten().filter(|p| p.src == t).collect();
        for u in &lefts {
            for w in &rights {
                if u.len() + w.len() > room {
                    continue;
                }
                let terms: Vec<(Scalar, Vec<usize>)> = r
                    .terms
                    .iter()
                    .filter(|(_, m)| u.len() + m.len() + w.len() <= max)
                    .map(|(c, m)| {
                        let mut word = u.arrows.clone();
                        word.extend_from_slice(m);
                        word.extend_from_slice(&w.arrows);
                        (c.clone(), word)
                    })
                    .collect();
                out.push((u.src, w.tgt, terms));
            }
        }
    }
    out
}
