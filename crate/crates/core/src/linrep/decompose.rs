use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{Echelon, Matrix};
use crate::poly::{min_poly, Poly};

use super::hom::{hom_with, HomBasis, Presentation};
use super::{Morphism, Representation};

pub const DEFAULT_SEED: u64 = 0x5eed_a7c1;
const RANDOM_TRIES: usize = 64;

/// An indecomposable summand with its inclusion into and projection from the original module.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Representation,
    pub incl: Morphism,
    pub proj: Morphism,
}

/// `End(X)` of an indecomposable `X`, with a basis of its radical.
#[derive(Clone, Debug)]
pub struct EndInfo {
    pub pres: Presentation,
    pub hom: HomBasis,
    pub radical: Vec<Morphism>,
}

enum Verdict {
    Local(Vec<Morphism>),
    Split(Vec<Matrix>, Vec<Matrix>),
}

fn min_poly_of(phi: &Morphism) -> Poly {
    let f = phi.maps[0].field();
    phi.maps
        .iter()
        .filter(|m| m.rows() > 0)
        .fold(Poly::constant(f.one()), |acc, m| acc.lcm(&min_poly(m)))
}

/// Fitting decomposition `ker ψ^N ⊕ im ψ^N` for `ψ = φ - λ` when it is proper.
fn fitting(phi: &Morphism, lam: &Scalar) -> Option<(Vec<Matrix>, Vec<Matrix>)> {
    let mut ker = Vec::new();
    let mut im = Vec::new();
    for m in &phi.maps {
        let f = m.field();
        let psi = m.sub(&Matrix::identity(f, m.rows()).scale(lam));
        let p = psi.pow(m.rows());
        ker.push(p.left_kernel());
        im.push(p.row_basis());
    }
    let (k, i): (usize, usize) = (ker.iter().map(Matrix::rows).sum(), im.iter().map(Matrix::rows).sum());
    (k > 0 && i > 0).then_some((ker, im))
}

fn try_split(phi: &Morphism) -> Option<(Vec<Matrix>, Vec<Matrix>)> {
    let mu = min_poly_of(phi);
    if mu.single_root_power().is_some() {
        return None;
    }
    mu.roots().iter().find_map(|lam| fitting(phi, lam))
}

/// Whether `span(ns)` is closed under composition and nilpotent.
fn nilpotent_ideal(ns: &[Morphism], field: Field) -> bool {
    let flat: Vec<Vec<Scalar>> = ns.iter().map(Morphism::flatten).collect();
    let width = flat.first().map_or(0, Vec::len);
    let span = Echelon::new(&Matrix::from_rows(field, width, flat));
    let basis: Vec<&Morphism> = ns.iter().collect();
    for a in &basis {
        for b in &basis {
            if !span.contains(&a.then(b).flatten()) {
                return false;
            }
        }
    }
    // powers N^k shrink to zero
    let mut layer: Vec<Morphism> = ns.to_vec();
    let mut prev = usize::MAX;
    loop {
        let rows: Vec<Vec<Scalar>> = layer.iter().map(Morphism::flatten).collect();
        let ech = Echelon::new(&Matrix::from_rows(field, width, rows));
        if ech.rank() == 0 {
            return true;
        }
        if ech.rank() >= prev {
            return false;
        }
        prev = ech.rank();
        let reps: Vec<Morphism> = (0..ech.rank())
            .map(|i| unflatten(ech.basis().row(i), &layer[0]))
            .collect();
        layer = reps.iter().flat_map(|l| basis.iter().map(move |b| l.then(b))).collect();
    }
}

fn unflatten(v: &[Scalar], shape: &Morphism) -> Morphism {
    let mut off = 0;
    let maps = shape
        .maps
        .iter()
        .map(|m| {
            let rows = (0..m.rows())
                .map(|r| {
                    let row = v[off + r * m.cols()..off + (r + 1) * m.cols()].to_vec();
                    row
                })
                .collect();
            let out = Matrix::from_rows(m.field(), m.cols(), rows);
            off += m.rows() * m.cols();
            out
        })
        .collect();
    Morphism { maps }
}

fn random_scalar(f: Field, rng: &mut ChaCha8Rng) -> Scalar {
    match f {
        Field::Rationals => f.int(rng.gen_range(-4..=4)),
        Field::Prime(p) => f.int(rng.gen_range(0..p) as i64),
    }
}

fn classify(x: &Representation, end: &HomBasis, seed: u64) -> Result<Verdict> {
    let f = x.field();
    if end.dim() == 1 {
        return Ok(Verdict::Local(vec![]));
    }
    let id = Morphism::identity(x);
    let mut nil = Vec::new();
    let mut all_single = true;
    for b in &end.basis {
        let mu = min_poly_of(b);
        match mu.single_root_power() {
            Some(lam) => {
                let n = b.sub(&id.scale(&lam));
                if !n.is_zero() {
                    nil.push(n);
                }
            }
            None => {
                if let Some((k, i)) = mu.roots().iter().find_map(|lam| fitting(b, lam)) {
                    return Ok(Verdict::Split(k, i));
                }
                all_single = false;
            }
        }
    }
    if all_single && nilpotent_ideal(&nil, f) {
        let width = nil.first().map_or(0, |n| n.flatten().len());
        let ech = Echelon::new(&Matrix::from_rows(f, width, nil.iter().map(Morphism::flatten).collect()));
        if ech.rank() + 1 == end.dim() {
            let rad = (0..ech.rank()).map(|i| unflatten(ech.basis().row(i), &id)).collect();
            return Ok(Verdict::Local(rad));
        }
    }
    let bs = &end.basis;
    for i in 0..bs.len() {
        for j in 0..bs.len() {
            for phi in [bs[i].then(&bs[j]), bs[i].add(&bs[j])] {
                if let Some((k, im)) = try_split(&phi) {
                    return Ok(Verdict::Split(k, im));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIES {
        let coeffs: Vec<Scalar> = (0..bs.len()).map(|_| random_scalar(f, &mut rng)).collect();
        let phi = end.combine(&coeffs).unwrap();
        if let Some((k, im)) = try_split(&phi) {
            return Ok(Verdict::Split(k, im));
        }
    }
    Err(Error::FieldTooSmallForSplit(format!(
        "no splitting endomorphism found for a module of dimension {} over {f}",
        x.dim()
    )))
}

/// `End(X)` with its radical when `X` is indecomposable, `None` otherwise.
pub fn end_info(alg: &Algebra, x: &Representation) -> Result<Option<EndInfo>> {
    x.check(alg)?;
    if x.is_zero() {
        return Ok(None);
    }
    let pres = Presentation::new(alg, x);
    let hom = hom_with(alg, &pres, x);
    match classify(x, &hom, DEFAULT_SEED)? {
        Verdict::Local(radical) => Ok(Some(EndInfo { pres, hom, radical })),
        Verdict::Split(..) => Ok(None),
    }
}

pub fn is_indecomposable(alg: &Algebra, x: &Representation) -> Result<bool> {
    Ok(end_info(alg, x)?.is_some())
}

pub fn decompose(alg: &Algebra, x: &Representation) -> Result<Vec<Summand>> {
    decompose_with_seed(alg, x, DEFAULT_SEED)
}

pub fn decompose_with_seed(alg: &Algebra, x: &Representation, seed: u64) -> Result<Vec<Summand>> {
    x.check(alg)?;
    let f = alg.field();
    let mut done: Vec<(Representation, Morphism)> = Vec::new();
    let mut stack = vec![(x.clone(), Morphism::identity(x))];
    while let Some((m, incl)) = stack.pop() {
        if m.is_zero() {
            continue;
        }
        let end = hom_with(alg, &Presentation::new(alg, &m), &m);
        match classify(&m, &end, seed)? {
            Verdict::Local(_) => done.push((m, incl)),
            Verdict::Split(k, i) => {
                for part in [k, i] {
                    let (s, j) = m.submodule(alg, &part);
                    stack.push((s, j.then(&incl)));
                }
            }
        }
    }
    done.sort_by(|a, b| (b.0.dim(), b.0.dims()).cmp(&(a.0.dim(), a.0.dims())));
    // projections from the inverse of the stacked inclusions
    let n = alg.n_vertices();
    let mut projs: Vec<Vec<Matrix>> = vec![Vec::new(); done.len()];
    for v in 0..n {
        let parts: Vec<&Matrix> = done.iter().map(|(_, i)| &i.maps[v]).collect();
        let full = Matrix::vstack(f, x.dims()[v], &parts);
        let inv = full.inverse().expect("summands span the module");
        let mut off = 0;
        for (k, (s, _)) in done.iter().enumerate() {
            let d = s.dims()[v];
            projs[k].push(inv.select_cols(&(off..off + d).collect::<Vec<_>>()));
            off += d;
        }
    }
    Ok(done
        .into_iter()
        .zip(projs)
        .map(|((module, incl), p)| Summand { module, incl, proj: Morphism { maps: p } })
        .collect())
}

/// Isomorphism of indecomposables: some basis vector of `Hom(X, Y)` is invertible.
pub(crate) fn iso_indecomposable(alg: &Algebra, x: &Representation, y: &Representation) -> Option<Morphism> {
    if x.dims() != y.dims() {
        return None;
    }
    let h = hom_with(alg, &Presentation::new(alg, x), y);
    h.basis.into_iter().find(Morphism::is_iso)
}

pub fn is_isomorphic(alg: &Algebra, x: &Representation, y: &Representation) -> Result<bool> {
    x.check(alg)?;
    y.check(alg)?;
    if x.dims() != y.dims() {
        return Ok(false);
    }
    if x == y {
        return Ok(true);
    }
    let xs = decompose(alg, x)?;
    let mut ys: Vec<Representation> = decompose(alg, y)?.into_iter().map(|s| s.module).collect();
    if xs.len() != ys.len() {
        return Ok(false);
    }
    for s in xs {
        match ys.iter().position(|t| iso_indecomposable(alg, &s.module, t).is_some()) {
            Some(k) => {
                ys.swap_remove(k);
            }
            None => return Ok(false),
        }
    }
    Ok(true)
}
