//! Presentations of corner algebras `eAe` and quotients `A/I` as bound quiver algebras.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{Echelon, Matrix};

use super::{Algebra, Arrow, Convexity, Elem, Ideal, Path, Quiver, Relation};

pub const DEFAULT_DIM_BOUND: usize = 10_000;

/// An algebra presented from an ambient one, with the ambient images of its arrows.
#[derive(Debug)]
pub struct Presented {
    pub algebra: Algebra,
    /// new vertex index → ambient vertex index
    pub vertex_map: Vec<usize>,
    /// new arrow index → ambient element it stands for
    pub arrow_images: Vec<Elem>,
}

impl Algebra {
    pub fn is_convex(&self, set: &[usize]) -> Convexity {
        self.quiver().convexity(set)
    }

    pub fn is_convex_named(&self, set: &[&str]) -> Result<Convexity> {
        let idx = set.iter().map(|v| self.vertex_index(v)).collect::<Result<Vec<_>>>()?;
        Ok(self.is_convex(&idx))
    }

    /// `eAe` for `e` the sum of the idempotents of `set`.
    pub fn corner_algebra(&self, set: &[usize]) -> Result<Presented> {
        if set.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let mut verts: Vec<usize> = set.to_vec();
        verts.sort_unstable();
        verts.dedup();
        if let Some(&v) = verts.iter().find(|&&v| v >= self.n_vertices()) {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        present(self, &Ideal::zero(self), &verts, &format!("{}_corner", self.name()))
    }

    /// `A/I` with a recomputed quiver presentation.
    pub fn quotient_algebra(&self, ideal: &Ideal) -> Result<Presented> {
        if ideal.algebra_fingerprint() != self.fingerprint() {
            return Err(Error::AlgebraMismatch);
        }
        let one = self.field().one();
        let verts: Vec<usize> = (0..self.n_vertices())
            .filter(|&v| !ideal.contains(self, &vec![(self.idempotent(v), one.clone())]))
            .collect();
        if verts.is_empty() {
            return Err(Error::IdentityInIdeal);
        }
        present(self, ideal, &verts, &format!("{}_quot", self.name()))
    }
}

/// Block data of `e(A/I)e` restricted to the kept vertices.
struct Blocks<'a> {
    alg: &'a Algebra,
    /// echelon of the ideal inside each block, in block coordinates
    ideal: HashMap<(usize, usize), Echelon>,
}

impl<'a> Blocks<'a> {
    fn new(alg: &'a Algebra, ideal: &Ideal, verts: &[usize]) -> Blocks<'a> {
        let mut map = HashMap::new();
        for &i in verts {
            for &j in verts {
                let cols = alg.block(i, j);
                let rows: Vec<Vec<Scalar>> = (0..ideal.dim())
                    .map(|r| cols.iter().map(|&c| ideal.basis().get(r, c).clone()).collect())
                    .collect();
                map.insert((i, j), Echelon::new(&Matrix::from_rows(alg.field(), cols.len(), rows)));
            }
        }
        Blocks { alg, ideal: map }
    }

    /// Block coordinates of `x` reduced modulo the ideal.
    fn reduce(&self, i: usize, j: usize, x: &Elem) -> Vec<Scalar> {
        let v = self.alg.dense_block(x, self.alg.block(i, j));
        self.ideal[&(i, j)].reduce(&v).1
    }

    fn quotient_dim(&self, i: usize, j: usize) -> usize {
        self.alg.block(i, j).len() - self.ideal[&(i, j)].rank()
    }
}

pub(crate) fn present(alg: &Algebra, ideal: &Ideal, verts: &[usize], name: &str) -> Result<Presented> {
    let f = alg.field();
    let blocks = Blocks::new(alg, ideal, verts);
    let local = |v: usize| verts.iter().position(|&x| x == v).unwrap();

    // arrows: radical elements independent modulo rad² + I
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut images: Vec<Elem> = Vec::new();
    for &i in verts {
        for &j in verts {
            let rad: Vec<usize> = alg.block(i, j).iter().copied().filter(|&b| !alg.basis()[b].is_empty()).collect();
            if rad.is_empty() {
                continue;
            }
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            for &k in verts {
                for &a in alg.block(i, k) {
                    if alg.basis()[a].is_empty() {
                        continue;
                    }
                    for &b in alg.block(k, j) {
                        if alg.basis()[b].is_empty() {
                            continue;
                        }
                        rows.push(blocks.reduce(i, j, &alg.mul_basis(a, b)));
                    }
                }
            }
            let width = alg.block(i, j).len();
            for r in 0..blocks.ideal[&(i, j)].rank() {
                rows.push(blocks.ideal[&(i, j)].basis().row_vec(r));
            }
            for &b in &rad {
                let v = alg.dense_block(&vec![(b, f.one())], alg.block(i, j));
                let ech = Echelon::new(&Matrix::from_rows(f, width, rows.clone()));
                if ech.contains(&v) {
                    continue;
                }
                rows.push(v);
                let p = &alg.basis()[b];
                let id = p.arrows.iter().map(|&a| alg.quiver().arrows[a].id.as_str()).collect::<Vec<_>>().join(".");
                arrows.push(Arrow { id, src: local(i), tgt: local(j), valuation: (1, 1) });
                images.push(vec![(b, f.one())]);
            }
        }
    }
    let quiver = Quiver { vertices: verts.iter().map(|&v| alg.vertex_name(v).to_string()).collect(), arrows };

    // kernel of KQ'_{≤N} → e(A/I)e, block by block
    let nil = alg.nilpotency();
    let mut by_len: Vec<Vec<(Path, Elem)>> = vec![verts
        .iter()
        .enumerate()
        .map(|(li, &v)| (Path { src: li, tgt: li, arrows: vec![] }, vec![(alg.idempotent(v), f.one())]))
        .collect()];
    let mut total = by_len[0].len();
    for _ in 0..nil {
        let mut next = Vec::new();
        for (p, img) in by_len.last().unwrap() {
            for (ai, a) in quiver.arrows.iter().enumerate() {
                if a.src != p.tgt {
                    continue;
                }
                let mut w = p.arrows.clone();
                w.push(ai);
                next.push((Path { src: p.src, tgt: a.tgt, arrows: w }, alg.mul(img, &images[ai])));
            }
        }
        total += next.len();
        if total > 200_000 {
            return Err(Error::InfiniteDimensional(200_000));
        }
        let done = next.is_empty();
        by_len.push(next);
        if done {
            break;
        }
    }
    let mut kernels: HashMap<(usize, usize), (Vec<Path>, Matrix)> = HashMap::new();
    let n = verts.len();
    for li in 0..n {
        for lj in 0..n {
            let mut paths: Vec<(Path, Elem)> =
                by_len.iter().flatten().filter(|(p, _)| p.src == li && p.tgt == lj).cloned().collect();
            if paths.is_empty() {
                continue;
            }
            // largest paths first so kernel vectors lead with long monomials
            paths.sort_by(|(x, _), (y, _)| path_key(&quiver, y).cmp(&path_key(&quiver, x)));
            let rows: Vec<Vec<Scalar>> = paths.iter().map(|(_, img)| blocks.reduce(verts[li], verts[lj], img)).collect();
            let width = alg.block(verts[li], verts[lj]).len();
            let k = Matrix::from_rows(f, width, rows).left_kernel();
            kernels.insert((li, lj), (paths.into_iter().map(|(p, _)| p).collect(), k));
        }
    }

    // minimal generators: complement of R'K + KR' inside K
    let mut products: HashMap<(usize, usize), Vec<Vec<Scalar>>> = HashMap::new();
    for ((li, lj), (paths, k)) in &kernels {
        for r in 0..k.rows() {
            for (ai, a) in quiver.arrows.iter().enumerate() {
                if a.tgt == *li {
                    push_shifted(&kernels, &mut products, f, (a.src, *lj), paths, k.row(r), |w| {
                        let mut x = vec![ai];
                        x.extend_from_slice(w);
                        x
                    });
                }
                if a.src == *lj {
                    push_shifted(&kernels, &mut products, f, (*li, a.tgt), paths, k.row(r), |w| {
                        let mut x = w.to_vec();
                        x.push(ai);
                        x
                    });
                }
            }
        }
    }
    let mut relations = Vec::new();
    let mut keys: Vec<&(usize, usize)> = kernels.keys().collect();
    keys.sort();
    for key in keys {
        let (paths, k) = &kernels[key];
        let mut rows = products.get(key).cloned().unwrap_or_default();
        let width = paths.len();
        for r in 0..k.rows() {
            let v = k.row_vec(r);
            if Echelon::new(&Matrix::from_rows(f, width, rows.clone())).contains(&v) {
                continue;
            }
            rows.push(v.clone());
            let terms = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(c, s)| (s.clone(), paths[c].arrows.clone()))
                .collect();
            relations.push(Relation { terms });
        }
    }
    let expected: usize = verts.iter().flat_map(|&i| verts.iter().map(move |&j| (i, j))).map(|(i, j)| blocks.quotient_dim(i, j)).sum();
    let algebra = Algebra::new(name, f, quiver, relations)?;
    assert_eq!(algebra.dim(), expected, "presentation dimension mismatch");
    Ok(Presented { algebra, vertex_map: verts.to_vec(), arrow_images: images })
}

fn path_key<'a>(q: &'a Quiver, p: &Path) -> (usize, Vec<&'a str>, usize) {
    (p.arrows.len(), p.arrows.iter().map(|&a| q.arrows[a].id.as_str()).collect(), p.src)
}

/// Records `shift(k)` as a vector over the path list of the target block, dropping paths
/// that are too long to be listed (they lie in the ideal generated by listed ones).
fn push_shifted(
    kernels: &HashMap<(usize, usize), (Vec<Path>, Matrix)>,
    products: &mut HashMap<(usize, usize), Vec<Vec<Scalar>>>,
    f: crate::field::Field,
    target: (usize, usize),
    paths: &[Path],
    coeffs: &[Scalar],
    shift: impl Fn(&[usize]) -> Vec<usize>,
) {
    let Some((tpaths, _)) = kernels.get(&target) else { return };
    let mut v = vec![f.zero(); tpaths.len()];
    for (c, p) in coeffs.iter().zip(paths) {
        if c.is_zero() {
            continue;
        }
        let w = shift(&p.arrows);
        if let Some(k) = tpaths.iter().position(|q| q.arrows == w && q.src == target.0) {
            v[k] = &v[k] + c;
        }
    }
    products.entry(target).or_default().push(v);
}
