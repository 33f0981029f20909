use crate::algebra::{Algebra, Ideal};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::Matrix;

use super::hom::{ext_dim, hom_dim, Presentation};
use super::{is_isomorphic, Morphism, Representation};

#[derive(Clone, Debug)]
pub struct StructureSeries {
    pub radical: Representation,
    pub radical_incl: Morphism,
    pub top: Representation,
    pub top_proj: Morphism,
    pub socle: Representation,
    pub socle_incl: Morphism,
}

pub fn structure_series(alg: &Algebra, x: &Representation) -> Result<StructureSeries> {
    x.check(alg)?;
    let f = alg.field();
    let q = alg.quiver();
    let n = alg.n_vertices();
    let rad: Vec<Matrix> = (0..n)
        .map(|v| {
            let parts: Vec<&Matrix> = q.in_arrows(v).map(|a| x.map(a)).collect();
            Matrix::vstack(f, x.dims()[v], &parts).row_basis()
        })
        .collect();
    let soc: Vec<Matrix> = (0..n)
        .map(|v| {
            let parts: Vec<&Matrix> = q.out_arrows(v).map(|a| x.map(a)).collect();
            let rows: usize = x.dims()[v];
            Matrix::hstack(f, rows, &parts).left_kernel()
        })
        .collect();
    let (radical, radical_incl) = x.submodule(alg, &rad);
    let (top, top_proj) = x.quotient(alg, &rad);
    let (socle, socle_incl) = x.submodule(alg, &soc);
    Ok(StructureSeries { radical, radical_incl, top, top_proj, socle, socle_incl })
}

/// `{a ∈ A : X·a = 0 for every X in the family}`.
pub fn annihilator(alg: &Algebra, family: &[&Representation]) -> Result<Ideal> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    for x in family {
        x.check(alg)?;
    }
    let f = alg.field();
    let n = alg.n_vertices();
    let mut vectors = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let block = alg.block(i, j);
            if block.is_empty() {
                continue;
            }
            let rows: Vec<Vec<Scalar>> = block
                .iter()
                .map(|&b| family.iter().flat_map(|x| x.action(alg, b).to_rows().concat()).collect())
                .collect();
            let width = rows[0].len();
            let k = Matrix::from_rows(f, width, rows).left_kernel();
            for r in 0..k.rows() {
                let mut v = vec![f.zero(); alg.dim()];
                for (c, &b) in block.iter().enumerate() {
                    v[b] = k.get(r, c).clone();
                }
                vectors.push(v);
            }
        }
    }
    Ideal::new(alg, vectors)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Euler {
    Value(i64),
    /// a syzygy repeats after `period` steps
    Divergent { period: usize },
}

/// `Σ (-1)^i dim Ext^i(M, M)` along the minimal projective resolution.
pub fn euler_characteristic(alg: &Algebra, m: &Representation, budget: usize) -> Result<Euler> {
    m.check(alg)?;
    let mut syz = vec![m.clone()];
    loop {
        let last = syz.last().unwrap();
        let next = Presentation::new(alg, last).omega;
        if next.is_zero() {
            break;
        }
        for (j, s) in syz.iter().enumerate() {
            if s.dims() == next.dims() && is_isomorphic(alg, s, &next)? {
                return Ok(Euler::Divergent { period: syz.len() - j });
            }
        }
        if syz.len() > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        syz.push(next);
    }
    let mut chi = hom_dim(alg, m, m)? as i64;
    for i in 1..syz.len() {
        let e = ext_dim(alg, i, m, m, usize::MAX)? as i64;
        chi += if i % 2 == 0 { e } else { -e };
    }
    Ok(Euler::Value(chi))
}
