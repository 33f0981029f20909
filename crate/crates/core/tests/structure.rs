use arcycles::algebra::parse_algebra;
use arcycles::artrans::*;
use arcycles::io::fixture;
use arcycles::linrep::*;
use arcycles::structure::*;
use arcycles::trquiver::{core, cyclic_vertices};
use arcycles::{Algebra, Error, Representation, Status};

use StandardKind::{Projective as P, Simple as S};

fn load(name: &str) -> Algebra {
    fixture(name).unwrap().load().unwrap().algebra
}

fn std(a: &Algebra, k: StandardKind, v: &str) -> Representation {
    standard_module(a, k, a.vertex_index(v).unwrap()).unwrap()
}

fn finite(a: &Algebra) -> Knitted {
    match classify_representation_type(a, KnitBudget::default()).unwrap() {
        RepresentationType::Finite(k) => k,
        RepresentationType::Unresolved(_) => panic!("{} should be finite", a.name()),
    }
}

fn m7() -> (Algebra, Representation) {
    let (a, mods) = named_modules(fixture("a7").unwrap().source).unwrap();
    (a, mods[0].1.clone())
}

#[test]
fn supports() {
    let a = load("a2");
    let s1 = std(&a, S, "1");
    let s = support_category(&a, &[&s1]).unwrap();
    assert_eq!(s.vertices, vec![0]);
    assert!(s.is_convex());

    let l3 = parse_algebra("algebra L3\nvertices 1 2 3\narrows\n a: 1 -> 2\n b: 2 -> 3\n").unwrap();
    let (x, y) = (std(&l3, S, "1"), std(&l3, S, "3"));
    let s = support_category(&l3, &[&x, &y]).unwrap();
    assert_eq!(s.vertices, vec![0, 2]);
    assert!(!s.is_convex());
    assert_eq!(s.convexity.witness, Some(vec![0, 1, 2]));

    let a7 = load("a7");
    let k = finite(&a7);
    let c = core(&k.fragment).unwrap();
    let fam: Vec<&Representation> = c.iter().map(|&i| &k.modules[i]).collect();
    assert!(support_category(&a7, &fam).unwrap().is_convex());
}

#[test]
fn trace_ideals() {
    let a = load("a2");
    let t = trace_ideal(&a, &[&std(&a, S, "1")]).unwrap();
    let one = a.field().one();
    let e2 = vec![(a.idempotent(1), one.clone())];
    let arrow = a.word(0, &[0]);
    assert_eq!(t.dim(), 2);
    assert!(t.contains(&a, &e2) && t.contains(&a, &arrow));
    assert!(trace_ideal(&a, &[&std(&a, P, "1")]).unwrap().is_zero());

    let (a7, m) = m7();
    assert!(trace_ideal(&a7, &[&m]).unwrap().is_zero());
    assert!(matches!(trace_ideal(&a7, &[]), Err(Error::EmptyFamily)));
}

#[test]
fn trace_inside_annihilator() {
    for name in ["a2", "loop", "sigma", "a7"] {
        let a = load(name);
        let k = finite(&a);
        for m in &k.modules {
            let t = trace_ideal(&a, &[m]).unwrap();
            let ann = annihilator(&a, &[m]).unwrap();
            assert!(t.is_subset(&ann), "{name}");
        }
    }
}

#[test]
fn support_and_faithful_algebras() {
    let a = load("a2");
    let s1 = std(&a, S, "1");
    let su = support_algebra(&a, &[&s1]).unwrap();
    assert_eq!((su.algebra.dim(), su.vertex_map.clone()), (1, vec![0]));
    let b = faithful_algebra(&a, &[&s1]).unwrap();
    assert_eq!(b.algebra.dim(), 1);
    let regular: Vec<Representation> = ["1", "2"].iter().map(|v| std(&a, P, v)).collect();
    let fam: Vec<&Representation> = regular.iter().collect();
    assert!(compare_algebras(&faithful_algebra(&a, &fam).unwrap().algebra, &a).agree());

    let l = load("loop");
    let su = support_algebra(&l, &[&std(&l, S, "0")]).unwrap();
    assert!(su.algebra.same_presentation(&l));

    let (a7, m) = m7();
    assert!(faithful_algebra(&a7, &[&m]).unwrap().algebra.same_presentation(&a7));
    let k = finite(&a7);
    let c = core(&k.fragment).unwrap();
    let fam: Vec<&Representation> = c.iter().map(|&i| &k.modules[i]).collect();
    assert!(support_algebra(&a7, &fam).unwrap().algebra.same_presentation(&a7));
}

#[test]
fn support_algebra_vertices_match_support() {
    let a = load("sigma");
    let k = finite(&a);
    for m in &k.modules {
        let su = support_algebra(&a, &[m]).unwrap();
        assert_eq!(su.vertex_map, support_category(&a, &[m]).unwrap().vertices);
    }
}

#[test]
fn faithful_algebra_is_idempotent() {
    for name in ["a2", "sigma", "a7"] {
        let a = load(name);
        let k = finite(&a);
        for pair in k.modules.windows(2) {
            let fam: Vec<&Representation> = pair.iter().collect();
            let b = faithful_algebra(&a, &fam).unwrap();
            let down: Vec<Representation> = pair.iter().map(|m| descend(&a, &b, m).unwrap()).collect();
            let down: Vec<&Representation> = down.iter().collect();
            let bb = faithful_algebra(&b.algebra, &down).unwrap();
            assert!(annihilator(&b.algebra, &down).unwrap().is_zero(), "{name}");
            assert!(bb.algebra.same_presentation(&b.algebra), "{name}");
        }
    }
}

#[test]
fn convex_supports_have_matching_corners() {
    let a = load("a7");
    let k = finite(&a);
    for m in &k.modules {
        let s = support_category(&a, &[m]).unwrap();
        if s.is_convex() {
            let su = support_algebra(&a, &[m]).unwrap();
            let corner = a.corner_algebra(&s.vertices).unwrap();
            assert!(compare_algebras(&su.algebra, &corner.algebra).agree());
        }
    }
}

#[test]
fn support_props() {
    let a7 = load("a7");
    let k = finite(&a7);
    let c = core(&k.fragment).unwrap();
    let r = support_props_in(&a7, &k, &c).unwrap();
    assert_eq!(r.status, Status::Pass, "{r}");
    assert!(r.children[0].witnesses.iter().any(|w| w == "e = 1"));

    let l = load("loop");
    let k = finite(&l);
    let r = support_props_in(&l, &k, &cyclic_vertices(&k.fragment)).unwrap();
    assert_eq!(r.status, Status::Pass, "{r}");

    let a = load("a2");
    let s1 = std(&a, S, "1");
    assert!(matches!(verify_support_props(&a, &[&s1], KnitBudget::default()), Err(Error::NotCyclicFamily(_))));
    let s0 = std(&l, S, "0");
    let r = verify_support_props(&l, &[&s0], KnitBudget::default()).unwrap();
    // a single module is not the whole cyclic component
    assert_eq!(r.find("su(Γ) = B(Γ)").unwrap().status, Status::Inconclusive);
}

#[test]
fn separating_families() {
    let a = load("a2");
    let u = classify_representation_type(&a, KnitBudget::default()).unwrap();
    let RepresentationType::Finite(k) = &u else { panic!() };
    let at = |id: &str| k.fragment.index(id).unwrap();
    let fam = Families { p: vec![at("S2")], c: vec![at("P1")], q: vec![at("S1")] };
    let r = check_separating(&a, &u, &fam).unwrap();
    assert_eq!(r.status, Status::Pass, "{r}");

    let bad = Families { p: vec![at("S1")], c: vec![at("P1")], q: vec![at("S2")] };
    let r = check_separating(&a, &u, &bad).unwrap();
    assert_eq!(r.find("(S2) Hom vanishing").unwrap().status, Status::Fail);

    let a7 = load("a7");
    let u = classify_representation_type(&a7, KnitBudget::default()).unwrap();
    let RepresentationType::Finite(k) = &u else { panic!() };
    let all = Families { p: vec![], c: (0..k.modules.len()).collect(), q: vec![] };
    assert!(check_separating(&a7, &u, &all).unwrap().passed());

    let d5 = load("d5tilde");
    let u = classify_representation_type(&d5, KnitBudget { max_vertices: 30, max_radius: 3 }).unwrap();
    assert!(matches!(check_separating(&d5, &u, &all), Err(Error::IncompleteUniverse)));
}
