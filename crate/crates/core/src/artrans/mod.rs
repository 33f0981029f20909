//! Auslander-Reiten translation, almost split sequences and knitting.

mod knit;

pub use knit::{classify_representation_type, classify_with_seed, knit_component, knit_named, knit_named_with_seed, KnitBudget, Knitted, RepresentationType};

use crate::algebra::{sort_elem, Algebra, Elem};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linrep::{decompose_with_seed, end_info, ext_space, standard_module, Morphism, Presentation, Representation, StandardKind, Summand, DEFAULT_SEED};
use crate::matrix::{unit, Echelon, Matrix};

/// Minimal projective presentation `P1 → P0 → X → 0`.
#[derive(Clone, Debug)]
pub struct ProjectivePresentation {
    /// tops `v_k` of the summands `P_{v_k}` of `P0`
    pub p0_tops: Vec<usize>,
    /// tops `u_j` of the summands `P_{u_j}` of `P1`
    pub p1_tops: Vec<usize>,
    pub p0: Representation,
    pub p1: Representation,
    pub map: Morphism,
    pub cover: Morphism,
    /// `coefficients[j][k] ∈ e_{v_k} A e_{u_j}`: the `j`-th generator of `P1` goes to `Σ_k coefficients[j][k]`
    pub coefficients: Vec<Vec<Elem>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Tau,
    TauInverse,
}

pub fn min_proj_presentation(alg: &Algebra, x: &Representation) -> Result<ProjectivePresentation> {
    x.check(alg)?;
    if x.is_zero() {
        return Err(Error::ZeroModule);
    }
    let pres = Presentation::new(alg, x);
    let opres = Presentation::new(alg, &pres.omega);
    let p0_tops: Vec<usize> = pres.gens.iter().map(|g| g.0).collect();
    let p1_tops: Vec<usize> = opres.gens.iter().map(|g| g.0).collect();
    let coefficients = opres
        .gens
        .iter()
        .map(|(u, w)| {
            let img = pres.omega_incl.maps[*u].apply(w);
            let mut per: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); p0_tops.len()];
            for (c, &(k, p)) in img.iter().zip(&pres.cover_basis[*u]) {
                if !c.is_zero() {
                    per[k].push((p, c.clone()));
                }
            }
            per.into_iter().map(sort_elem).collect()
        })
        .collect();
    Ok(ProjectivePresentation {
        p0_tops,
        p1_tops,
        map: opres.pi.then(&pres.omega_incl),
        p0: pres.cover,
        p1: opres.cover,
        cover: pres.pi,
        coefficients,
    })
}

/// `ker(ν P1 → ν P0)` for the minimal presentation of `x`.
fn dtr(alg: &Algebra, x: &Representation) -> Representation {
    if x.is_zero() {
        return x.clone();
    }
    let f = alg.field();
    let n = alg.n_vertices();
    let pp = min_proj_presentation(alg, x).expect("nonzero module");
    let injs: Vec<Representation> = pp
        .p1_tops
        .iter()
        .map(|&u| standard_module(alg, StandardKind::Injective, u).unwrap())
        .collect();
    let (nu1, _, _) = Representation::direct_sum(alg, &injs.iter().collect::<Vec<_>>());
    let maps = (0..n)
        .map(|w| {
            let cols: usize = pp.p0_tops.iter().map(|&v| alg.block(w, v).len()).sum();
            let mut m = Matrix::zeros(f, nu1.dims()[w], cols);
            let mut row = 0;
            for (j, &u) in pp.p1_tops.iter().enumerate() {
                for &q in alg.block(w, u) {
                    let mut col = 0;
                    for (k, &v) in pp.p0_tops.iter().enumerate() {
                        for &r in alg.block(w, v) {
                            let mut s = f.zero();
                            for (p, c) in &pp.coefficients[j][k] {
                                for (b, d) in alg.mul_basis(r, *p) {
                                    if b == q {
                                        s.add_mul(c, &d);
                                    }
                                }
                            }
                            m.set(row, col, s);
                            col += 1;
                        }
                    }
                    row += 1;
                }
            }
            m
        })
        .collect();
    nu1.submodule(alg, &Morphism { maps }.kernel_basis()).0
}

/// `τX` without the indecomposability check; zero exactly when `x` is projective.
pub(crate) fn tau_raw(alg: &Algebra, x: &Representation) -> Representation {
    dtr(alg, x)
}

/// `τ⁻¹X = D τ_{A^op} D X` without the indecomposability check.
pub(crate) fn tau_inverse_raw(alg: &Algebra, x: &Representation) -> Representation {
    let op = alg.opposite();
    dtr(op, &x.dual(alg)).dual_from_opposite(alg)
}

/// `τX` or `τ⁻¹X`; `None` when undefined (projective resp. injective input).
pub fn translate(alg: &Algebra, x: &Representation, dir: Direction) -> Result<Option<Representation>> {
    x.check(alg)?;
    if end_info(alg, x)?.is_none() {
        return Err(Error::NotIndecomposable);
    }
    let y = match dir {
        Direction::Tau => tau_raw(alg, x),
        Direction::TauInverse => tau_inverse_raw(alg, x),
    };
    Ok((!y.is_zero()).then_some(y))
}

/// `0 → τX → E → X → 0` with `E` decomposed.
#[derive(Clone, Debug)]
pub struct AlmostSplitSequence {
    pub left: Representation,
    pub middle: Representation,
    pub right: Representation,
    pub left_map: Morphism,
    pub right_map: Morphism,
    pub summands: Vec<Summand>,
    /// `ΩX → τX` representing the extension class
    pub cocycle: Morphism,
}

impl AlmostSplitSequence {
    pub fn alpha(&self) -> usize {
        self.summands.len()
    }
}

/// Per-vertex coordinates of the rows of `m` in the row space of `basis`.
fn restrict(m: &[Matrix], basis: &[Matrix]) -> Morphism {
    let maps = m
        .iter()
        .zip(basis)
        .map(|(m, b)| {
            let ech = Echelon::new(b);
            let rows = (0..m.rows()).map(|r| ech.coords(m.row(r)).expect("image stays in the subspace")).collect();
            Matrix::from_rows(m.field(), b.rows(), rows)
        })
        .collect();
    Morphism { maps }
}

pub fn almost_split_sequence(alg: &Algebra, x: &Representation) -> Result<AlmostSplitSequence> {
    x.check(alg)?;
    let end = end_info(alg, x)?.ok_or(Error::NotIndecomposable)?;
    let left = tau_raw(alg, x);
    if left.is_zero() {
        return Err(Error::ProjectiveInput);
    }
    almost_split_with(alg, x, left, &end.radical, DEFAULT_SEED)
}

pub(crate) fn almost_split_with(
    alg: &Algebra,
    x: &Representation,
    left: Representation,
    radical: &[Morphism],
    seed: u64,
) -> Result<AlmostSplitSequence> {
    let f = alg.field();
    let ext = ext_space(alg, x, &left)?;
    let pres = &ext.pres;
    // pullbacks along rad End(X), restricted to ΩX
    let pulls: Vec<Morphism> = radical
        .iter()
        .map(|h| {
            let ys: Vec<Scalar> = pres
                .gens
                .iter()
                .flat_map(|(v, g)| pres.section[*v].apply(&h.maps[*v].apply(g)))
                .collect();
            let lift = pres.cover_map(alg, &pres.cover, &ys);
            restrict(&pres.omega_incl.then(&lift).maps, &pres.omega_incl.maps)
        })
        .collect();
    let e = ext.dim();
    let rows: Vec<Vec<Scalar>> = ext
        .cocycles
        .iter()
        .map(|z| pulls.iter().flat_map(|p| ext.class(&p.then(z))).collect())
        .collect();
    let socle = Matrix::from_rows(f, pulls.len() * e, rows).left_kernel();
    assert!(socle.rows() > 0, "Ext(X, τX) has a nonzero socle");
    let coeffs = socle.row(0);
    let cocycle = ext
        .cocycles
        .iter()
        .zip(coeffs)
        .fold(Morphism::zero(&pres.omega, &left), |acc, (z, c)| acc.add(&z.scale(c)));
    // pushout of P0 ← ΩX → τX
    let (sum, incl, proj) = Representation::direct_sum(alg, &[&left, &pres.cover]);
    let rel = cocycle.then(&incl[0]).sub(&pres.omega_incl.then(&incl[1]));
    let (middle, q) = sum.quotient(alg, &rel.image_basis());
    let left_map = incl[0].then(&q);
    let to_x = proj[1].then(&pres.pi);
    let right_map = Morphism {
        maps: q
            .maps
            .iter()
            .zip(&to_x.maps)
            .zip(middle.dims())
            .map(|((qv, t), &d)| {
                let ech = Echelon::new(qv);
                let rows = (0..d).map(|i| ech.coords(&unit(f, d, i)).expect("projection is onto")).collect();
                Matrix::from_rows(f, qv.rows(), rows).mul(t)
            })
            .collect(),
    };
    let summands = decompose_with_seed(alg, &middle, seed)?;
    Ok(AlmostSplitSequence { left, middle, right: x.clone(), left_map, right_map, summands, cocycle })
}

/// Number of indecomposable summands of the middle term ending at `x`.
pub fn alpha(alg: &Algebra, x: &Representation) -> Result<usize> {
    Ok(almost_split_sequence(alg, x)?.alpha())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linrep::{is_isomorphic, tests::a2};

    #[test]
    fn tau_a2() {
        let a = a2();
        let s1 = standard_module(&a, StandardKind::Simple, 0).unwrap();
        let s2 = standard_module(&a, StandardKind::Simple, 1).unwrap();
        let t = translate(&a, &s1, Direction::Tau).unwrap().unwrap();
        assert!(is_isomorphic(&a, &t, &s2).unwrap());
        let back = translate(&a, &s2, Direction::TauInverse).unwrap().unwrap();
        assert!(is_isomorphic(&a, &back, &s1).unwrap());
        assert!(translate(&a, &s2, Direction::Tau).unwrap().is_none());
        let pp = min_proj_presentation(&a, &s1).unwrap();
        assert_eq!((pp.p0_tops.clone(), pp.p1_tops.clone()), (vec![0], vec![1]));
    }
}
