mod common;

use std::collections::VecDeque;

use arcycles::artrans::*;
use arcycles::io::fixture;
use arcycles::linrep::*;
use arcycles::theorems::*;
use arcycles::trquiver::{cyclic_components, Fragment, DEFAULT_MAX_CYCLE_LEN};
use arcycles::{parse_algebra, Algebra, Error, Representation, Status};

use common::hom_dim_oracle;

fn load(name: &str) -> Algebra {
    fixture(name).unwrap().load().unwrap().algebra
}

fn universe(a: &Algebra) -> RepresentationType {
    let u = classify_representation_type(a, KnitBudget::default()).unwrap();
    assert!(matches!(u, RepresentationType::Finite(_)), "{} should be finite", a.name());
    u
}

fn knitted(u: &RepresentationType) -> &Knitted {
    match u {
        RepresentationType::Finite(k) => k,
        RepresentationType::Unresolved(k) => k,
    }
}

fn tube() -> (Algebra, Knitted) {
    let (a, mods) = named_modules(fixture("d5tilde").unwrap().source).unwrap();
    let s = |v: &str| standard_module(&a, StandardKind::Simple, a.vertex_index(v).unwrap()).unwrap();
    let seeds = vec![("S6".to_string(), s("6")), ("S7".to_string(), s("7")), ("E".to_string(), mods[0].1.clone())];
    let k = knit_named(&a, &seeds, KnitBudget { max_vertices: 2000, max_radius: 4 }).unwrap();
    (a, k)
}

/// Undirected distance from the mouth, plus one.
fn levels_from(f: &Fragment, mouth: &[&str]) -> Vec<Option<usize>> {
    let mut lvl = vec![None; f.len()];
    let mut queue = VecDeque::new();
    for m in mouth {
        let i = f.index(m).unwrap();
        lvl[i] = Some(1);
        queue.push_back(i);
    }
    while let Some(v) = queue.pop_front() {
        for a in &f.arrows {
            let (s, t) = (f.index(&a.src).unwrap(), f.index(&a.tgt).unwrap());
            for (x, y) in [(s, t), (t, s)] {
                if x == v && lvl[y].is_none() {
                    lvl[y] = Some(lvl[v].unwrap() + 1);
                    queue.push_back(y);
                }
            }
        }
    }
    lvl
}

#[test]
fn loop_profile() {
    let a = load("loop");
    let s0 = standard_module(&a, StandardKind::Simple, 0).unwrap();
    let p = module_profile(&a, &s0, None, 5).unwrap();
    assert_eq!((p.end_dim, p.ext1_dim), (1, 1));
    assert_eq!(p.ext_higher, vec![(2, 1), (3, 1), (4, 1), (5, 1)]);
    assert_eq!(p.euler, Some(Euler::Divergent { period: 1 }));
    assert!(!p.rigid && !p.tau_rigid);
    assert_eq!(p.directing, None);
    assert_eq!(p.alpha, Some(1));

    let u = universe(&a);
    let p = module_profile(&a, &s0, Some(&u), 2).unwrap();
    assert_eq!(p.directing, Some(false));
}

#[test]
fn censuses() {
    let a = load("a2");
    let c = census(&a, &universe(&a), DEFAULT_EXT_BUDGET).unwrap();
    assert_eq!(c.total, 3);
    assert_eq!((c.rigid.len(), c.tau_rigid.len(), c.directing.len()), (3, 3, 3));
    assert!(c.report().passed());

    let a = load("loop");
    let c = census(&a, &universe(&a), DEFAULT_EXT_BUDGET).unwrap();
    assert_eq!(c.total, 2);
    assert_eq!(c.rigid, vec!["P0"]);
    assert_eq!(c.tau_rigid, vec!["P0"]);
    assert!(c.directing.is_empty());
    assert_eq!(c.higher_ext, vec!["S0"]);
    assert!(c.ext_exceeds_end.is_empty());

    let a = load("sigma");
    let c = census(&a, &universe(&a), DEFAULT_EXT_BUDGET).unwrap();
    assert_eq!(c.total, 10);
    assert_eq!(c.directing.len(), 10);
    assert_eq!(c.rigid.len(), 10);
    assert_eq!(c.dim_multiplicities.get(&1), Some(&10));
    assert!(c.alpha_at_least_3.is_empty());

    let u = classify_representation_type(&load("h10"), KnitBudget { max_vertices: 30, max_radius: 3 }).unwrap();
    assert!(matches!(census(&load("h10"), &u, 1), Err(Error::IncompleteUniverse)));
}

#[test]
fn census_ignores_vertex_order() {
    let src = fixture("sigma").unwrap().source;
    let shuffled = src.replace("vertices 1 2 3 4", "vertices 4 2 3 1");
    let (a, b) = (parse_algebra(src).unwrap(), parse_algebra(&shuffled).unwrap());
    let (ca, cb) = (census(&a, &universe(&a), 2).unwrap(), census(&b, &universe(&b), 2).unwrap());
    assert_eq!(ca.total, cb.total);
    assert_eq!(ca.rigid.len(), cb.rigid.len());
    assert_eq!(ca.tau_rigid.len(), cb.tau_rigid.len());
    assert_eq!(ca.directing.len(), cb.directing.len());
    assert_eq!(ca.dim_multiplicities, cb.dim_multiplicities);
    let key = |c: &Census, alg: &Algebra| {
        let mut v: Vec<(Vec<(String, usize)>, usize, usize)> = c
            .profiles
            .iter()
            .map(|(_, p)| {
                let mut d: Vec<(String, usize)> = p.dims.iter().enumerate().map(|(i, &x)| (alg.vertex_name(i).to_string(), x)).collect();
                d.sort();
                (d, p.end_dim, p.ext1_dim)
            })
            .collect();
        v.sort();
        v
    };
    assert_eq!(key(&ca, &a), key(&cb, &b));
}

#[test]
fn directing_flags_agree_with_hom_oracle() {
    for name in ["a2", "sigma", "loop"] {
        let a = load(name);
        let u = universe(&a);
        let k = knitted(&u);
        let flags = directing_flags(&a, &k.modules).unwrap();
        let n = k.modules.len();
        // transitive closure of nonzero Hom between distinct modules
        let mut reach = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                reach[i][j] = i != j && hom_dim_oracle(&a, &k.modules[i], &k.modules[j]) > 0;
            }
        }
        for m in 0..n {
            for i in 0..n {
                for j in 0..n {
                    reach[i][j] |= reach[i][m] && reach[m][j];
                }
            }
        }
        for i in 0..n {
            let on_cycle = reach[i][i] || hom_dim_oracle(&a, &k.modules[i], &k.modules[i]) > 1;
            assert_eq!(flags[i], !on_cycle, "{name} {}", k.fragment.vertices[i].id);
        }
    }
}

#[test]
fn prop_2_4_and_cor_2_6() {
    let a = load("loop");
    let u = universe(&a);
    let f = &knitted(&u).fragment;
    assert_eq!(verify_prop_2_4(f, DEFAULT_MAX_CYCLE_LEN).status, Status::Pass);
    let r = verify_cor_2_6(f);
    assert_eq!(r.status, Status::Pass, "{r}\n{}", f.to_json());

    let a = load("a2");
    let u = universe(&a);
    let f = &knitted(&u).fragment;
    assert_eq!(verify_prop_2_4(f, DEFAULT_MAX_CYCLE_LEN).status, Status::Vacuous);

    let a = load("a7");
    let u = universe(&a);
    let f = &knitted(&u).fragment;
    assert_eq!(verify_prop_2_4(f, DEFAULT_MAX_CYCLE_LEN).status, Status::Vacuous);
    assert_eq!(verify_prop_2_4(f, 16).status, Status::Pass);
    assert_eq!(verify_cor_2_6(f).status, Status::Pass);

    let (_, k) = tube();
    let r = verify_prop_2_4(&k.fragment, DEFAULT_MAX_CYCLE_LEN);
    assert_ne!(r.status, Status::Fail, "{r}");
    assert_eq!(verify_cor_2_6(&k.fragment).status, Status::Inconclusive);

    // a cycle without a hook
    let v = |id: &str| format!(r#"{{"id":"{id}","dim":{{}},"proj":false,"inj":false,"frontier":false}}"#);
    let json = format!(
        r#"{{"vertices":[{},{}],"arrows":[{{"src":"X","tgt":"Y","mult":1}},{{"src":"Y","tgt":"X","mult":1}}],"tau":[]}}"#,
        v("X"),
        v("Y")
    );
    let f = Fragment::from_json(&json).unwrap();
    assert_eq!(verify_prop_2_4(&f, 4).status, Status::Fail);
    assert_eq!(verify_cor_2_6(&f).status, Status::Fail);
}

#[test]
fn theorem_2_on_a7() {
    let a = load("a7");
    let u = universe(&a);
    let k = knitted(&u);
    let s0 = k.fragment.index("S0").unwrap();
    let gamma = cyclic_components(&k.fragment).components.into_iter().find(|c| c.contains(&s0)).unwrap();
    let r = verify_theorem_2(&a, k, &gamma, KnitBudget::default()).unwrap();
    assert_eq!(r.status, Status::Pass, "{r}");
    assert!(matches!(verify_theorem_1(&a, k, &gamma, KnitBudget::default()), Err(Error::WrongRegime(_))));
    assert!(matches!(verify_theorem_2(&a, k, &gamma[1..], KnitBudget::default()), Err(Error::NotFiniteCyclic(_))));
}

#[test]
fn theorem_2_small() {
    let a = load("loop");
    let u = universe(&a);
    let k = knitted(&u);
    let gamma: Vec<usize> = (0..k.modules.len()).collect();
    let r = verify_theorem_2(&a, k, &gamma, KnitBudget::default()).unwrap();
    assert_eq!(r.status, Status::Pass, "{r}");
    assert_eq!(r.find("Γ is the core").unwrap().status, Status::Pass);
    assert!(r.witnesses[0].contains("Lambda"), "{:?}", r.witnesses);

    let a = load("a2");
    let u = universe(&a);
    assert!(matches!(verify_theorem_2(&a, knitted(&u), &[], KnitBudget::default()), Err(Error::NotFiniteCyclic(_))));
}

#[test]
fn theorem_1_on_tube() {
    let (a, k) = tube();
    let f = &k.fragment;
    let comps = cyclic_components(f).components;
    assert_eq!(comps.len(), 1);
    let r = verify_theorem_1(&a, &k, &comps[0], KnitBudget::default()).unwrap();
    assert_ne!(r.status, Status::Fail, "{r}");
    assert_eq!(r.find("maximal cyclic coherent parts").unwrap().status, Status::Pass);
    assert_eq!(r.find("su(Γ) = B(Γ)").unwrap().status, Status::Pass);
    assert!(matches!(verify_theorem_2(&a, &k, &comps[0], KnitBudget::default()), Err(Error::NotFiniteCyclic(_))));

    // a vertex without translate inserted into a mesh of the tube
    let mut x = k.clone();
    x.fragment.vertices.push(arcycles::trquiver::FragmentVertex { id: "X".into(), dim: Default::default(), proj: false, inj: false, frontier: false });
    for (src, tgt) in [("S6", "X"), ("X", "S7")] {
        x.fragment.arrows.push(arcycles::trquiver::FragmentArrow { src: src.into(), tgt: tgt.into(), mult: 1 });
    }
    x.modules.push(standard_module(&a, StandardKind::Simple, a.vertex_index("4").unwrap()).unwrap());
    x.levels.push(0);
    let gamma = cyclic_components(&x.fragment).components.remove(0);
    let r = verify_theorem_1(&a, &x, &gamma, KnitBudget::default()).unwrap();
    assert!(r.find("remainder finite").unwrap().witnesses[0].contains("{X}"), "{r}");
    assert_eq!(r.find("B(Γ∖Γ^cc) representation-finite").unwrap().status, Status::Pass, "{r}");
}

#[test]
fn tube_ext_versus_end() {
    let (a, k) = tube();
    let f = &k.fragment;
    let lvl = levels_from(f, &["S6", "S7", "E"]);
    let mut seen = [0usize; 5];
    for v in 0..f.len() {
        let Some(l) = lvl[v].filter(|&l| l <= 4) else { continue };
        let m: &Representation = &k.modules[v];
        let total: usize = m.dims().iter().sum();
        if l == 3 {
            // a full turn of the mouth: 1 + 1 + 6
            assert_eq!(total, 8);
        }
        let end = hom_dim_oracle(&a, m, m);
        let tau = translate(&a, m, Direction::Tau).unwrap().unwrap();
        // hereditary: Ext¹(M, M) ≅ D Hom(M, τM)
        let ext = hom_dim_oracle(&a, m, &tau);
        let p = module_profile(&a, m, None, 1).unwrap();
        assert_eq!((p.end_dim, p.ext1_dim), (end, ext));
        if l == 3 {
            assert_eq!(ext, end, "{}", f.vertices[v].id);
        } else {
            assert!(ext < end, "{} at quasi-length {l}", f.vertices[v].id);
        }
        seen[l] += 1;
    }
    assert_eq!(&seen[1..], &[3, 3, 3, 3]);
}

#[test]
fn growth_probe() {
    let a = load("a2");
    let p = directing_growth_probe(&a, 10).unwrap();
    assert_eq!(p.closed, Some(3));
    assert_eq!(p.levels, vec![2, 1]);
    assert!(p.report.passed());

    let a = load("d5tilde");
    let p = directing_growth_probe(&a, 10).unwrap();
    assert_eq!(p.levels, vec![6; 10]);
    assert_eq!(p.closed, None);
    assert!(p.report.passed(), "{}", p.report);

    assert!(matches!(directing_growth_probe(&load("loop"), 3), Err(Error::HasRelations)));
}
