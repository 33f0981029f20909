//! Supports, trace ideals, support and faithful algebras, separating families.

mod certificate;

use serde::Serialize;

pub use certificate::{compare_algebras, Certificate};

use crate::algebra::{Algebra, Convexity, Ideal, Presented};
use crate::artrans::{knit_component, KnitBudget, Knitted, RepresentationType};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linrep::{annihilator, hom_basis, hom_dim, is_isomorphic, standard_module, Representation, StandardKind};
use crate::matrix::Matrix;
use crate::report::{Report, Status};
use crate::trquiver::cyclic_components;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Support {
    pub vertices: Vec<usize>,
    pub convexity: Convexity,
}

impl Support {
    pub fn is_convex(&self) -> bool {
        self.convexity.convex
    }
}

fn support_vertices(alg: &Algebra, family: &[&Representation]) -> Result<Vec<usize>> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    for x in family {
        x.check(alg)?;
    }
    Ok((0..alg.n_vertices()).filter(|&v| family.iter().any(|x| x.dims()[v] > 0)).collect())
}

pub fn support_category(alg: &Algebra, family: &[&Representation]) -> Result<Support> {
    let vertices = support_vertices(alg, family)?;
    let convexity = alg.is_convex(&vertices);
    Ok(Support { vertices, convexity })
}

/// Ideal generated by the idempotents of the vertices outside the support.
pub fn trace_ideal(alg: &Algebra, family: &[&Representation]) -> Result<Ideal> {
    let supp = support_vertices(alg, family)?;
    let one = alg.field().one();
    let gens: Vec<_> = (0..alg.n_vertices())
        .filter(|v| !supp.contains(v))
        .map(|v| vec![(alg.idempotent(v), one.clone())])
        .collect();
    Ok(Ideal::generated_by(alg, &gens))
}

pub fn support_algebra(alg: &Algebra, family: &[&Representation]) -> Result<Presented> {
    alg.quotient_algebra(&trace_ideal(alg, family)?)
}

pub fn faithful_algebra(alg: &Algebra, family: &[&Representation]) -> Result<Presented> {
    alg.quotient_algebra(&annihilator(alg, family)?)
}

/// A module annihilated by the ideal of a quotient, viewed over the quotient.
pub fn descend(ambient: &Algebra, q: &Presented, x: &Representation) -> Result<Representation> {
    let f = ambient.field();
    let dims: Vec<usize> = q.vertex_map.iter().map(|&v| x.dims()[v]).collect();
    let maps = q
        .algebra
        .quiver()
        .arrows
        .iter()
        .zip(&q.arrow_images)
        .map(|(a, img)| {
            let zero = Matrix::zeros(f, dims[a.src], dims[a.tgt]);
            img.iter().fold(zero, |m, (b, c)| m.add(&x.action(ambient, *b).scale(c)))
        })
        .collect();
    Representation::new(&q.algebra, dims, maps)
}

/// Index of a module of `k` isomorphic to `x`.
pub fn locate(alg: &Algebra, k: &Knitted, x: &Representation) -> Result<Option<usize>> {
    for (i, m) in k.modules.iter().enumerate() {
        if m.dims() == x.dims() && is_isomorphic(alg, m, x)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Knits the component of the family and checks the support properties there.
pub fn verify_support_props(alg: &Algebra, family: &[&Representation], budget: KnitBudget) -> Result<Report> {
    support_vertices(alg, family)?;
    let seeds: Vec<Representation> = family.iter().map(|&x| x.clone()).collect();
    let k = knit_component(alg, &seeds, budget)?;
    let mut members = Vec::new();
    for x in family {
        members.push(locate(alg, &k, x)?.expect("seeds are vertices of their component"));
    }
    support_props_in(alg, &k, &members)
}

/// Support properties of the modules `members` of a knitted fragment.
pub fn support_props_in(alg: &Algebra, k: &Knitted, members: &[usize]) -> Result<Report> {
    let f = &k.fragment;
    let comps = cyclic_components(f).components;
    let Some(&first) = members.first() else { return Err(Error::EmptyFamily) };
    let Some(comp) = comps.iter().find(|c| c.contains(&first)) else {
        return Err(Error::NotCyclicFamily(format!("{} lies on no cycle of the fragment", f.vertices[first].id)));
    };
    if let Some(&m) = members.iter().find(|m| !comp.contains(m)) {
        return Err(Error::NotCyclicFamily(format!("{} is outside the cyclic component of {}", f.vertices[m].id, f.vertices[first].id)));
    }
    let family: Vec<&Representation> = members.iter().map(|&i| &k.modules[i]).collect();
    let supp = support_category(alg, &family)?;
    let names: Vec<&str> = supp.vertices.iter().map(|&v| alg.vertex_name(v)).collect();
    let idem = if supp.vertices.len() == alg.n_vertices() {
        "e = 1".to_string()
    } else {
        format!("e = sum of e_i over {{{}}}", names.join(", "))
    };

    // (a) su(Γ) ≅ End(P_Γ) ≅ eAe
    let su = support_algebra(alg, &family)?;
    let corner = alg.corner_algebra(&supp.vertices)?;
    let projs: Vec<Representation> = supp
        .vertices
        .iter()
        .map(|&v| standard_module(alg, StandardKind::Projective, v))
        .collect::<Result<_>>()?;
    let mut end_dim = 0;
    for p in &projs {
        for q in &projs {
            end_dim += hom_dim(alg, p, q)?;
        }
    }
    let cert = compare_algebras(&su.algebra, &corner.algebra);
    let a = Report::group(
        "su(Γ) ≅ End(P_Γ) ≅ eAe",
        vec![
            Report::leaf(
                "dim End(P_Γ) = dim su(Γ)",
                Status::of(end_dim == su.algebra.dim()),
                vec![format!("dim End(P_Γ) = {end_dim}, dim su(Γ) = {}", su.algebra.dim())],
            ),
            cert.report("su(Γ) and eAe agree"),
        ],
    )
    .with_witness(idem);

    // (b) su(Γ) = B(Γ)
    let t = trace_ideal(alg, &family)?;
    let ann = annihilator(alg, &family)?;
    let equal = t == ann;
    let whole = members.len() == comp.len();
    let mut w = vec![format!("dim t(Γ) = {}, dim ann(Γ) = {}", t.dim(), ann.dim())];
    let status = if !t.is_subset(&ann) {
        w.push("trace ideal not inside the annihilator".into());
        Status::Fail
    } else if !(f.is_closed() && whole) {
        w.push("family is not a whole cyclic component of a closed fragment".into());
        Status::Inconclusive
    } else {
        Status::of(equal)
    };
    let b = Report::leaf("su(Γ) = B(Γ)", status, w);

    // (c) convexity of the support
    let c = Report::leaf(
        "supp(Γ) convex",
        Status::of(supp.is_convex()),
        match &supp.convexity.witness {
            Some(p) => vec![format!("path {}", p.iter().map(|&v| alg.vertex_name(v)).collect::<Vec<_>>().join(" -> "))],
            None => vec![format!("supp = {{{}}}", names.join(", "))],
        },
    );
    Ok(Report::group("support properties", vec![a, b, c]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Families {
    pub p: Vec<usize>,
    pub c: Vec<usize>,
    pub q: Vec<usize>,
}

/// Checks (S1)–(S3) for a partition of a complete universe of indecomposables.
pub fn check_separating(alg: &Algebra, universe: &RepresentationType, fam: &Families) -> Result<Report> {
    let RepresentationType::Finite(k) = universe else { return Err(Error::IncompleteUniverse) };
    let name = |i: usize| k.fragment.vertices[i].id.clone();
    let n = alg.n_vertices();

    let mut sum = vec![0usize; n];
    for &i in &fam.c {
        for (s, d) in sum.iter_mut().zip(k.modules[i].dims()) {
            *s += d;
        }
    }
    let missing: Vec<&str> = (0..n).filter(|&v| sum[v] == 0).map(|v| alg.vertex_name(v)).collect();
    let s1 = Report::leaf(
        "(S1) C sincere",
        Status::of(missing.is_empty()),
        if missing.is_empty() { vec![] } else { vec![format!("no composition factor at {}", missing.join(", "))] },
    );

    let mut s2 = Vec::new();
    for (label, from, to) in [("Hom(Q, P) = 0", &fam.q, &fam.p), ("Hom(Q, C) = 0", &fam.q, &fam.c), ("Hom(C, P) = 0", &fam.c, &fam.p)] {
        let mut w = Vec::new();
        for &x in from.iter() {
            for &y in to.iter() {
                let d = hom_dim(alg, &k.modules[x], &k.modules[y])?;
                if d > 0 {
                    w.push(format!("dim Hom({}, {}) = {d}", name(x), name(y)));
                }
            }
        }
        let status = if from.is_empty() || to.is_empty() { Status::Vacuous } else { Status::of(w.is_empty()) };
        s2.push(Report::leaf(label, status, w));
    }
    let s2 = Report::group("(S2) Hom vanishing", s2);

    let mut w = Vec::new();
    let mut any = false;
    for &x in &fam.p {
        for &y in &fam.q {
            any = true;
            let (mx, my) = (&k.modules[x], &k.modules[y]);
            let d = hom_dim(alg, mx, my)?;
            if d == 0 {
                continue;
            }
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            for &c in &fam.c {
                let mc = &k.modules[c];
                let into = hom_basis(alg, mx, mc)?;
                let out = hom_basis(alg, mc, my)?;
                for g in &into.basis {
                    for h in &out.basis {
                        rows.push(g.then(h).flatten());
                    }
                }
            }
            let width = rows.first().map_or(0, Vec::len);
            let r = if rows.is_empty() { 0 } else { Matrix::from_rows(alg.field(), width, rows).rank() };
            if r < d {
                w.push(format!("Hom({}, {}) has dim {d}, maps through C span {r}", name(x), name(y)));
            }
        }
    }
    let s3 = Report::leaf("(S3) P to Q factors through C", if any { Status::of(w.is_empty()) } else { Status::Vacuous }, w);
    let gs = Report::leaf("C generalized standard", Status::Pass, vec!["representation-finite: rad^∞ = 0".into()]);
    Ok(Report::group("separating family", vec![s1, s2, s3, gs]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linrep::tests::a2;

    #[test]
    fn a2_support() {
        let a = a2();
        let s1 = standard_module(&a, StandardKind::Simple, 0).unwrap();
        let s = support_category(&a, &[&s1]).unwrap();
        assert_eq!(s.vertices, vec![0]);
        assert!(s.is_convex());
        assert_eq!(trace_ideal(&a, &[&s1]).unwrap().dim(), 2);
        assert_eq!(support_algebra(&a, &[&s1]).unwrap().algebra.dim(), 1);
        assert!(matches!(support_category(&a, &[]), Err(Error::EmptyFamily)));
    }
}
