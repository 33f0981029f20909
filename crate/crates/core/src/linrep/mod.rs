//! Finite-dimensional right modules as quiver representations.
//!
//! An arrow `a: s -> t` acts by a `dim(s) × dim(t)` matrix on row vectors, `x ↦ x·X_a`.
//! A path `a1*a2*...` acts by the product `X_a1·X_a2·...`.

mod decompose;
mod hom;
mod series;

use std::collections::BTreeMap;

use serde_json::{json, Value};

pub use decompose::{decompose, decompose_with_seed, end_info, is_indecomposable, is_isomorphic, EndInfo, Summand, DEFAULT_SEED};
pub(crate) use decompose::iso_indecomposable;
pub use hom::{ext_dim, ext_space, hom_basis, hom_dim, ExtSpace, HomBasis, Presentation};
pub use series::{annihilator, euler_characteristic, structure_series, Euler, StructureSeries};

use crate::algebra::{parse_source, Algebra, ModuleSpec};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{Echelon, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    algebra: u64,
    field: Field,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StandardKind {
    Projective,
    Injective,
    Simple,
}

impl Representation {
    /// Validates shapes and relations.
    pub fn new(alg: &Algebra, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Representation> {
        let q = alg.quiver();
        if dims.len() != q.n_vertices() || maps.len() != q.arrows.len() {
            return Err(Error::InvalidRepresentation("wrong number of vertices or arrows".into()));
        }
        for (a, m) in q.arrows.iter().zip(&maps) {
            if m.field() != alg.field() {
                return Err(Error::InvalidRepresentation(format!("arrow `{}` has entries over another field", a.id)));
            }
            if m.rows() != dims[a.src] || m.cols() != dims[a.tgt] {
                return Err(Error::InvalidRepresentation(format!(
                    "arrow `{}` needs a {}x{} matrix, got {}x{}",
                    a.id,
                    dims[a.src],
                    dims[a.tgt],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let x = Representation::unchecked(alg, dims, maps);
        for r in alg.relations() {
            let (s, t) = (q.arrows[r.terms[0].1[0]].src, q.arrows[*r.terms[0].1.last().unwrap()].tgt);
            let mut acc = Matrix::zeros(alg.field(), x.dims[s], x.dims[t]);
            for (c, w) in &r.terms {
                acc = acc.add(&x.word_matrix(w, s).scale(c));
            }
            if !acc.is_zero() {
                let shown = alg.elem_string(&alg.eval_relation(r));
                return Err(Error::InvalidRepresentation(format!("relation does not vanish (residue {shown})")));
            }
        }
        Ok(x)
    }

    pub(crate) fn unchecked(alg: &Algebra, dims: Vec<usize>, maps: Vec<Matrix>) -> Representation {
        Representation { algebra: alg.fingerprint(), field: alg.field(), dims, maps }
    }

    pub fn zero(alg: &Algebra) -> Representation {
        let dims = vec![0; alg.n_vertices()];
        let maps = alg.quiver().arrows.iter().map(|_| Matrix::zeros(alg.field(), 0, 0)).collect();
        Representation::unchecked(alg, dims, maps)
    }

    pub fn algebra_fingerprint(&self) -> u64 {
        self.algebra
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Total dimension over the base field.
    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn check(&self, alg: &Algebra) -> Result<()> {
        if self.algebra != alg.fingerprint() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    fn word_matrix(&self, w: &[usize], src: usize) -> Matrix {
        let mut m = Matrix::identity(self.field, self.dims[src]);
        for &a in w {
            m = m.mul(&self.maps[a]);
        }
        m
    }

    /// Action of the basis element `b` of the algebra, `dim(src b) × dim(tgt b)`.
    pub fn action(&self, alg: &Algebra, b: usize) -> Matrix {
        let p = &alg.basis()[b];
        self.word_matrix(&p.arrows, p.src)
    }

    /// Submodule spanned per vertex by the rows of `basis[v]`, with its inclusion.
    pub fn submodule(&self, alg: &Algebra, basis: &[Matrix]) -> (Representation, Morphism) {
        let ech: Vec<Echelon> = basis.iter().map(Echelon::new).collect();
        let dims: Vec<usize> = basis.iter().map(Matrix::rows).collect();
        let maps = alg
            .quiver()
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let img = basis[a.src].mul(&self.maps[i]);
                let rows = (0..img.rows())
                    .map(|r| ech[a.tgt].coords(img.row(r)).expect("subspace is a submodule"))
                    .collect();
                Matrix::from_rows(self.field, dims[a.tgt], rows)
            })
            .collect();
        let sub = Representation::unchecked(alg, dims, maps);
        (sub, Morphism { maps: basis.to_vec() })
    }

    /// Quotient by the submodule spanned by `basis[v]`, with the projection.
    pub fn quotient(&self, alg: &Algebra, basis: &[Matrix]) -> (Representation, Morphism) {
        let f = self.field;
        let mut proj = Vec::new();
        let mut comps = Vec::new();
        for (v, b) in basis.iter().enumerate() {
            let ech = Echelon::new(b);
            let c = ech.complement();
            let full = Matrix::vstack(f, self.dims[v], &[b, &c]);
            let inv = full.inverse().expect("complement completes a basis");
            proj.push(inv.select_cols(&(b.rows()..self.dims[v]).collect::<Vec<_>>()));
            comps.push(c);
        }
        let dims: Vec<usize> = comps.iter().map(Matrix::rows).collect();
        let maps = alg
            .quiver()
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| comps[a.src].mul(&self.maps[i]).mul(&proj[a.tgt]))
            .collect();
        (Representation::unchecked(alg, dims, maps), Morphism { maps: proj })
    }

    /// Direct sum with the canonical inclusions and projections.
    pub fn direct_sum(alg: &Algebra, parts: &[&Representation]) -> (Representation, Vec<Morphism>, Vec<Morphism>) {
        let f = alg.field();
        let n = alg.n_vertices();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let maps = (0..alg.quiver().arrows.len())
            .map(|a| Matrix::block_diag(f, &parts.iter().map(|p| &p.maps[a]).collect::<Vec<_>>()))
            .collect();
        let sum = Representation::unchecked(alg, dims.clone(), maps);
        let mut incl = Vec::new();
        let mut proj = Vec::new();
        let mut offset = vec![0; n];
        for p in parts {
            let mut i = Vec::new();
            let mut q = Vec::new();
            for v in 0..n {
                let mut m = Matrix::zeros(f, p.dims[v], dims[v]);
                m.put(0, offset[v], &Matrix::identity(f, p.dims[v]));
                q.push(m.transpose());
                i.push(m);
                offset[v] += p.dims[v];
            }
            incl.push(Morphism { maps: i });
            proj.push(Morphism { maps: q });
        }
        (sum, incl, proj)
    }

    /// `D X` as a module over the opposite algebra.
    pub fn dual(&self, alg: &Algebra) -> Representation {
        let op = alg.opposite();
        Representation::unchecked(op, self.dims.clone(), self.maps.iter().map(Matrix::transpose).collect())
    }

    /// Dual of a module over the opposite algebra, back over `alg`.
    pub fn dual_from_opposite(&self, alg: &Algebra) -> Representation {
        Representation::unchecked(alg, self.dims.clone(), self.maps.iter().map(Matrix::transpose).collect())
    }

    /// Representation from a named module section of an algebra source.
    pub fn from_spec(alg: &Algebra, spec: &ModuleSpec) -> Result<Representation> {
        let mut dims = vec![0; alg.n_vertices()];
        for (v, n) in &spec.dims {
            dims[alg.vertex_index(v)?] = *n;
        }
        let q = alg.quiver();
        let mut maps: Vec<Matrix> = q.arrows.iter().map(|a| Matrix::zeros(alg.field(), dims[a.src], dims[a.tgt])).collect();
        for (a, rows) in &spec.maps {
            let i = q.arrow_index(a)?;
            let rows = crate::algebra::parse_rows(alg.field(), rows)?;
            maps[i] = Matrix::from_rows(alg.field(), dims[q.arrows[i].tgt], rows);
        }
        Representation::new(alg, dims, maps)
    }

    /// `{dims: {vertex: n}, maps: {arrow: [[scalar strings]]}}`.
    pub fn to_json(&self, alg: &Algebra) -> Value {
        let q = alg.quiver();
        let dims: BTreeMap<&str, usize> = q.vertices.iter().map(String::as_str).zip(self.dims.iter().copied()).collect();
        let maps: BTreeMap<&str, Vec<Vec<String>>> = q
            .arrows
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| (a.id.as_str(), m.to_rows().iter().map(|r| r.iter().map(Scalar::to_string).collect()).collect()))
            .collect();
        json!({ "dims": dims, "maps": maps })
    }

    pub fn from_json(alg: &Algebra, v: &Value) -> Result<Representation> {
        let bad = |m: &str| Error::InvalidRepresentation(m.to_string());
        let mut dims = vec![0; alg.n_vertices()];
        if let Some(d) = v.get("dims").and_then(Value::as_object) {
            for (k, n) in d {
                dims[alg.vertex_index(k)?] = n.as_u64().ok_or_else(|| bad("dimension is not a nonnegative integer"))? as usize;
            }
        }
        let q = alg.quiver();
        let mut maps: Vec<Matrix> = q.arrows.iter().map(|a| Matrix::zeros(alg.field(), dims[a.src], dims[a.tgt])).collect();
        if let Some(m) = v.get("maps").and_then(Value::as_object) {
            for (k, rows) in m {
                let i = q.arrow_index(k)?;
                let rows = rows.as_array().ok_or_else(|| bad("map is not a list of rows"))?;
                let mut out = Vec::new();
                for r in rows {
                    let r = r.as_array().ok_or_else(|| bad("row is not a list"))?;
                    let row = r
                        .iter()
                        .map(|s| match s {
                            Value::String(s) => alg.field().scalar(s),
                            Value::Number(n) => alg.field().scalar(&n.to_string()),
                            _ => Err(bad("scalar must be a string")),
                        })
                        .collect::<Result<Vec<_>>>()?;
                    out.push(row);
                }
                let m = Matrix::from_rows(alg.field(), dims[q.arrows[i].tgt], out);
                maps[i] = m;
            }
        }
        Representation::new(alg, dims, maps)
    }
}

/// Named modules declared in an algebra source, built over its algebra.
pub fn named_modules(text: &str) -> Result<(Algebra, Vec<(String, Representation)>)> {
    let src = parse_source(text)?;
    let mods = src
        .modules
        .iter()
        .map(|m| Ok((m.name.clone(), Representation::from_spec(&src.algebra, m)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok((src.algebra, mods))
}

/// `P_i`, `I_i` or `S_i`.
pub fn standard_module(alg: &Algebra, kind: StandardKind, vertex: usize) -> Result<Representation> {
    if vertex >= alg.n_vertices() {
        return Err(Error::UnknownVertex(vertex.to_string()));
    }
    let f = alg.field();
    let q = alg.quiver();
    let n = alg.n_vertices();
    Ok(match kind {
        StandardKind::Simple => {
            let dims: Vec<usize> = (0..n).map(|v| usize::from(v == vertex)).collect();
            let maps = q.arrows.iter().map(|a| Matrix::zeros(f, dims[a.src], dims[a.tgt])).collect();
            Representation::unchecked(alg, dims, maps)
        }
        StandardKind::Projective => {
            // basis of P_i(v): paths i ⇝ v
            let dims: Vec<usize> = (0..n).map(|v| alg.block(vertex, v).len()).collect();
            let maps = q
                .arrows
                .iter()
                .enumerate()
                .map(|(ai, a)| {
                    let arrow = alg.basis_index(a.src, &[ai]);
                    let mut m = Matrix::zeros(f, dims[a.src], dims[a.tgt]);
                    for (r, &p) in alg.block(vertex, a.src).iter().enumerate() {
                        let Some(arrow) = arrow else { continue };
                        for (b, c) in alg.mul_basis(p, arrow) {
                            let col = alg.block(vertex, a.tgt).iter().position(|&x| x == b).unwrap();
                            m.set(r, col, c);
                        }
                    }
                    m
                })
                .collect();
            Representation::unchecked(alg, dims, maps)
        }
        StandardKind::Injective => {
            // I_i(v) = D(e_v A e_i) in the dual basis of paths v ⇝ i
            let dims: Vec<usize> = (0..n).map(|v| alg.block(v, vertex).len()).collect();
            let maps = q
                .arrows
                .iter()
                .enumerate()
                .map(|(ai, a)| {
                    let mut m = Matrix::zeros(f, dims[a.src], dims[a.tgt]);
                    let Some(arrow) = alg.basis_index(a.src, &[ai]) else { return m };
                    for (c, &r) in alg.block(a.tgt, vertex).iter().enumerate() {
                        for (b, s) in alg.mul_basis(arrow, r) {
                            let row = alg.block(a.src, vertex).iter().position(|&x| x == b).unwrap();
                            m.set(row, c, s);
                        }
                    }
                    m
                })
                .collect();
            Representation::unchecked(alg, dims, maps)
        }
    })
}

/// Homomorphism given by one matrix per vertex, acting on row vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub maps: Vec<Matrix>,
}

impl Morphism {
    pub fn zero(x: &Representation, y: &Representation) -> Morphism {
        Morphism { maps: x.dims.iter().zip(&y.dims).map(|(&a, &b)| Matrix::zeros(x.field, a, b)).collect() }
    }

    pub fn identity(x: &Representation) -> Morphism {
        Morphism { maps: x.dims.iter().map(|&a| Matrix::identity(x.field, a)).collect() }
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &Morphism) -> Morphism {
        Morphism { maps: self.maps.iter().zip(&g.maps).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn add(&self, g: &Morphism) -> Morphism {
        Morphism { maps: self.maps.iter().zip(&g.maps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, g: &Morphism) -> Morphism {
        Morphism { maps: self.maps.iter().zip(&g.maps).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Morphism {
        Morphism { maps: self.maps.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    pub fn is_iso(&self) -> bool {
        self.maps.iter().all(|m| m.rows() == m.cols() && m.is_invertible())
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn rank(&self) -> usize {
        self.maps.iter().map(Matrix::rank).sum()
    }

    /// All entries in vertex order, row-major.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.maps.iter().flat_map(|m| m.to_rows().concat()).collect()
    }

    /// Whether this intertwines the arrow actions of `x` and `y`.
    pub fn is_homomorphism(&self, alg: &Algebra, x: &Representation, y: &Representation) -> bool {
        alg.quiver()
            .arrows
            .iter()
            .enumerate()
            .all(|(i, a)| x.maps[i].mul(&self.maps[a.tgt]) == self.maps[a.src].mul(&y.maps[i]))
    }

    /// Kernel per vertex as row bases.
    pub fn kernel_basis(&self) -> Vec<Matrix> {
        self.maps.iter().map(Matrix::left_kernel).collect()
    }

    /// Image per vertex as row bases.
    pub fn image_basis(&self) -> Vec<Matrix> {
        self.maps.iter().map(Matrix::row_basis).collect()
    }
}

/// `dims` of a representation as a vector indexed by vertices.
pub fn dimension_vector(x: &Representation) -> Vec<usize> {
    x.dims.clone()
}
