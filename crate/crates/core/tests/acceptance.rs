//! End-to-end acceptance run. Prints one line per criterion and exits nonzero on failure.

mod common;

use std::collections::{BTreeSet, VecDeque};
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use arcycles::algebra::parse_source_over;
use arcycles::artrans::*;
use arcycles::io::fixture;
use arcycles::linrep::*;
use arcycles::structure::{compare_algebras, support_algebra};
use arcycles::theorems::*;
use arcycles::trquiver::*;
use arcycles::{Algebra, Field, Matrix, Morphism, Representation, Report, Status};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{hom_dim_oracle, random_module, SmallModule};

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn load(name: &str) -> Algebra {
    fixture(name).unwrap().load().unwrap().algebra
}

fn std_module(a: &Algebra, kind: StandardKind, v: &str) -> Representation {
    standard_module(a, kind, a.vertex_index(v).unwrap()).unwrap()
}

fn finite(a: &Algebra) -> Result<Knitted, String> {
    match classify_representation_type(a, KnitBudget::default()).map_err(|e| e.to_string())? {
        RepresentationType::Finite(k) => Ok(k),
        RepresentationType::Unresolved(k) => Err(format!("{} unresolved after {} vertices", a.name(), k.modules.len())),
    }
}

fn iso(a: &Algebra, x: &Representation, y: &Representation) -> bool {
    is_isomorphic(a, x, y).unwrap()
}

fn ok_or_vacuous(r: &Report) -> bool {
    matches!(r.status, Status::Pass | Status::Vacuous)
}

fn no_failures(r: &Report) -> bool {
    ok_or_vacuous(r) && r.children.iter().all(no_failures)
}

/// Vertices reachable from `from` along arrows, paths of length ≥ 0.
fn reachable(f: &Fragment, from: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; f.len()];
    let mut queue: VecDeque<usize> = from.iter().copied().collect();
    for &v in from {
        seen[v] = true;
    }
    while let Some(v) = queue.pop_front() {
        for a in &f.arrows {
            let (s, t) = (f.index(&a.src).unwrap(), f.index(&a.tgt).unwrap());
            if s == v && !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    seen
}

fn successors(f: &Fragment, v: usize) -> Vec<usize> {
    f.arrows.iter().filter(|a| a.src == f.vertices[v].id).map(|a| f.index(&a.tgt).unwrap()).collect()
}

/// Undirected distance from the mouth, plus one.
fn quasi_lengths(f: &Fragment, mouth: &[&str]) -> Vec<Option<usize>> {
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

fn a2_sanity() -> Outcome {
    let a = load("a2");
    let k = finite(&a)?;
    ensure!(k.modules.len() == 3, "{} indecomposables", k.modules.len());
    ensure!(k.sequences.len() == 1, "{} almost split sequences", k.sequences.len());
    let s = k.sequences.values().next().unwrap();
    let dims = (s.left.dims().to_vec(), s.middle.dims().to_vec(), s.right.dims().to_vec());
    ensure!(dims == (vec![0, 1], vec![1, 1], vec![1, 0]), "sequence dims {dims:?}");
    ensure!(iso(&a, &s.left, &std_module(&a, StandardKind::Simple, "2")), "left end is not S2");
    ensure!(iso(&a, &s.middle, &std_module(&a, StandardKind::Projective, "1")), "middle is not P1");
    ensure!(iso(&a, &s.right, &std_module(&a, StandardKind::Simple, "1")), "right end is not S1");
    Ok(())
}

fn dual_numbers() -> Outcome {
    let a = load("loop");
    let k = finite(&a)?;
    let f = &k.fragment;
    ensure!(k.modules.len() == 2, "{} indecomposables", k.modules.len());
    ensure!(cyclic_vertices(f).len() == f.len(), "cyclic part is not everything");
    ensure!(verify_prop_2_4(f, DEFAULT_MAX_CYCLE_LEN).status == Status::Pass, "Prop 2.4 did not pass");
    ensure!(verify_cor_2_6(f).status == Status::Pass, "Cor 2.6 did not pass");
    let s0 = std_module(&a, StandardKind::Simple, "0");
    for d in 1..=5 {
        let e = ext_dim(&a, d, &s0, &s0, 5).map_err(|e| e.to_string())?;
        ensure!(e == 1, "Ext^{d}(S0, S0) = {e}");
    }
    // ΩS0 ≅ S0, so Ext¹ is Hom(S0, S0) modulo maps through P0, which vanish here
    let p0 = std_module(&a, StandardKind::Projective, "0");
    ensure!(hom_dim_oracle(&a, &s0, &s0) == 1 && hom_dim_oracle(&a, &s0, &p0) == 1, "oracle Hom dims");
    let chi = euler_characteristic(&a, &s0, 5).map_err(|e| e.to_string())?;
    ensure!(chi == Euler::Divergent { period: 1 }, "χ(S0) = {chi:?}");
    Ok(())
}

fn d5_tube() -> Outcome {
    let (a, mods) = named_modules(fixture("d5tilde").unwrap().source).map_err(|e| e.to_string())?;
    let e = mods.iter().find(|(n, _)| n == "E").map(|(_, m)| m.clone()).ok_or("no module E")?;
    let on_4_to_9 = (4..=9).all(|v| e.dims()[a.vertex_index(&v.to_string()).unwrap()] == 1);
    ensure!(on_4_to_9 && e.dim() == 6, "E is not all-ones on 4..9: {:?}", e.dims());
    ensure!(is_indecomposable(&a, &e).unwrap(), "E decomposes");
    let s6 = std_module(&a, StandardKind::Simple, "6");
    let s7 = std_module(&a, StandardKind::Simple, "7");
    let tau = |x: &Representation| translate(&a, x, Direction::Tau).unwrap().unwrap();
    ensure!(iso(&a, &tau(&s7), &s6), "τS7 is not S6");
    ensure!(iso(&a, &tau(&e), &s7), "τE is not S7");
    ensure!(iso(&a, &tau(&s6), &e), "τS6 is not E");

    let seeds = vec![("S6".to_string(), s6), ("S7".to_string(), s7), ("E".to_string(), e)];
    let k = knit_named(&a, &seeds, KnitBudget { max_vertices: 2000, max_radius: 4 }).map_err(|e| e.to_string())?;
    let f = &k.fragment;
    let mesh = mesh_violations(f);
    ensure!(mesh.is_empty(), "mesh violations {mesh:?}");
    let shape = detect_tube(f);
    ensure!(shape == TubeShape::StableTube(3), "shape {shape:?}");

    let lvl = quasi_lengths(f, &["S6", "S7", "E"]);
    let mut seen = [0usize; 5];
    for v in 0..f.len() {
        let Some(l) = lvl[v].filter(|&l| l <= 4) else { continue };
        let m = &k.modules[v];
        let p = module_profile(&a, m, None, 1).map_err(|e| e.to_string())?;
        let end = hom_dim_oracle(&a, m, m);
        // hereditary: Ext¹(M, M) ≅ D Hom(M, τM)
        let ext = hom_dim_oracle(&a, m, &tau(m));
        ensure!((p.end_dim, p.ext1_dim) == (end, ext), "{} profile disagrees with oracle", f.vertices[v].id);
        if l == 3 {
            ensure!(ext == end, "{} at quasi-length 3: Ext {ext}, End {end}", f.vertices[v].id);
        } else {
            ensure!(ext < end, "{} at quasi-length {l}: Ext {ext}, End {end}", f.vertices[v].id);
        }
        seen[l] += 1;
    }
    ensure!(seen[1..] == [3, 3, 3, 3], "quasi-length counts {:?}", &seen[1..]);
    Ok(())
}

/// `I*_j` of the hereditary part, thin with support the vertices with a path to `j`.
fn hereditary_injective(a: &Algebra, omega: &[&str], j: &str) -> Representation {
    let q = a.quiver();
    let in_omega = |i: usize| omega.contains(&q.arrows[i].id.as_str());
    let mut support = vec![false; a.n_vertices()];
    support[a.vertex_index(j).unwrap()] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for (i, arr) in q.arrows.iter().enumerate() {
            if in_omega(i) && support[arr.tgt] && !support[arr.src] {
                support[arr.src] = true;
                changed = true;
            }
        }
    }
    let dims: Vec<usize> = support.iter().map(|&s| usize::from(s)).collect();
    let f = a.field();
    let maps = q
        .arrows
        .iter()
        .enumerate()
        .map(|(i, arr)| {
            let mut m = Matrix::zeros(f, dims[arr.src], dims[arr.tgt]);
            if in_omega(i) && support[arr.src] && support[arr.tgt] {
                m.set(0, 0, f.one());
            }
            m
        })
        .collect();
    Representation::new(a, dims, maps).unwrap()
}

fn a7_end_to_end() -> Outcome {
    let src = fixture("a7").unwrap().load().map_err(|e| e.to_string())?;
    let a = src.algebra;
    let m7 = Representation::from_spec(&a, &src.modules[0]).map_err(|e| e.to_string())?;
    let k = finite(&a)?;
    let f = &k.fragment;
    ensure!(components(f).len() == 1, "{} components", components(f).len());

    let ann = annihilator(&a, &[&m7]).map_err(|e| e.to_string())?;
    ensure!(ann.dim() == 0, "annihilator of M7 has dimension {}", ann.dim());

    let s0 = f.index("S0").map_err(|e| e.to_string())?;
    let to_s0: Vec<bool> = (0..f.len()).map(|v| reachable(f, &[v])[s0]).collect();
    let from_s0 = successors(f, s0);
    let from_s0 = reachable(f, &from_s0);
    let mut want: Vec<usize> = (0..f.len()).filter(|&v| from_s0[v] && to_s0[v]).collect();
    let mut got = core(f).map_err(|e| e.to_string())?;
    want.sort();
    got.sort();
    ensure!(got == want, "core {:?} vs cycles through S0 {:?}", f.ids(&got), f.ids(&want));

    let ms = find_multisection(f).map_err(|e| e.to_string())?;
    ensure!(ms.right.len() == 4, "Δ_r = {:?}", f.ids(&ms.right));
    for j in ["1", "2", "3", "4"] {
        let inj = std_module(&a, StandardKind::Injective, j);
        ensure!(ms.right.iter().any(|&v| iso(&a, &k.modules[v], &inj)), "I{j} missing from Δ_r");
    }
    let omega = ["gamma", "delta", "omega", "sigma6", "sigma7"];
    ensure!(ms.left.len() == 6, "Δ_l = {:?}", f.ids(&ms.left));
    for j in ["2", "3", "4", "5", "6", "7"] {
        let inj = hereditary_injective(&a, &omega, j);
        ensure!(ms.left.iter().any(|&v| iso(&a, &k.modules[v], &inj)), "I*{j} missing from Δ_l");
    }

    let gamma = cyclic_components(f).components.into_iter().find(|c| c.contains(&s0)).ok_or("S0 not cyclic")?;
    let r = verify_theorem_2(&a, &k, &gamma, KnitBudget::default()).map_err(|e| e.to_string())?;
    ensure!(r.status == Status::Pass && no_failures(&r), "Theorem 2 report:\n{r}");

    let succ = reachable(f, &ms.right);
    let family: Vec<&Representation> = (0..f.len()).filter(|&v| succ[v]).map(|v| &k.modules[v]).collect();
    let right_part = support_algebra(&a, &family).map_err(|e| e.to_string())?;
    let cert = compare_algebras(&right_part.algebra, &load("sigma"));
    ensure!(cert.agree(), "right part differs from KΣ: {cert:?}");
    Ok(())
}

/// Tits form `Σ x_i² − Σ_arrows x_s x_t`.
fn tits_form(a: &Algebra, x: &[usize]) -> i64 {
    let sq: i64 = x.iter().map(|&d| (d * d) as i64).sum();
    let cross: i64 = a.quiver().arrows.iter().map(|arr| (x[arr.src] * x[arr.tgt]) as i64).sum();
    sq - cross
}

fn h10_probe() -> Outcome {
    let a = load("h10");
    let p = directing_growth_probe(&a, 20).map_err(|e| e.to_string())?;
    ensure!(p.levels == vec![9; 20], "levels {:?}", p.levels);
    ensure!(p.closed.is_none(), "probe closed at {:?}", p.closed);
    ensure!(p.report.status == Status::Pass && no_failures(&p.report), "probe report:\n{}", p.report);
    let mut dims = BTreeSet::new();
    for (l, level) in p.modules.iter().enumerate() {
        for m in level {
            // End = K and q(dim) = 1 give Ext¹ = 0 on a hereditary algebra
            ensure!(tits_form(&a, m.dims()) == 1, "q(dim) ≠ 1 at level {l}: {:?}", m.dims());
            if l < 3 {
                ensure!(hom_dim_oracle(&a, m, m) == 1, "End ≠ K at level {l}");
            }
            ensure!(dims.insert(m.dims().to_vec()), "repeated dimension vector {:?}", m.dims());
        }
    }
    Ok(())
}

/// Zero composites along sectional paths of bounded total dimension, and the number of paths tried.
fn sectional_violations(k: &Knitted, limit: usize) -> (Vec<String>, usize) {
    let f = &k.fragment;
    let tau: Vec<Option<usize>> = {
        let mut t = vec![None; f.len()];
        for (x, y) in &f.tau {
            t[f.index(x).unwrap()] = Some(f.index(y).unwrap());
        }
        t
    };
    let mut bad = Vec::new();
    let mut stack: Vec<(Vec<usize>, Morphism, usize)> = Vec::new();
    for (&(s, t), m) in &k.irreducible {
        let total = f.total_dim(s) + f.total_dim(t);
        if total <= limit {
            stack.push((vec![s, t], m.clone(), total));
        }
    }
    let mut tried = 0;
    while let Some((path, comp, total)) = stack.pop() {
        tried += 1;
        if comp.is_zero() {
            bad.push(format!("{:?}", f.ids(&path)));
            continue;
        }
        let last = *path.last().unwrap();
        let prev = path[path.len() - 2];
        for next in successors(f, last) {
            if tau[next] == Some(prev) {
                continue;
            }
            let t = total + f.total_dim(next);
            if t > limit {
                continue;
            }
            let mut p = path.clone();
            p.push(next);
            stack.push((p, comp.then(&k.irreducible[&(last, next)]), t));
        }
    }
    (bad, tried)
}

fn property_sweeps() -> Outcome {
    for name in ["a2", "loop", "sigma", "a7", "a8", "a9"] {
        let a = load(name);
        let k = finite(&a)?;
        let f = &k.fragment;
        let mesh = mesh_violations(f);
        ensure!(mesh.is_empty(), "{name}: mesh violations {mesh:?}");
        for (&x, s) in &k.sequences {
            let sum: Vec<usize> = s.left.dims().iter().zip(s.right.dims()).map(|(l, r)| l + r).collect();
            ensure!(sum == s.middle.dims(), "{name}: unbalanced sequence at {}", f.vertices[x].id);
        }
        for (x, t) in &f.tau {
            let (xi, ti) = (f.index(x).unwrap(), f.index(t).unwrap());
            let mut mid = vec![0; a.n_vertices()];
            for arr in f.arrows.iter().filter(|arr| &arr.tgt == x) {
                let y = &k.modules[f.index(&arr.src).unwrap()];
                for (m, d) in mid.iter_mut().zip(y.dims()) {
                    *m += arr.mult * d;
                }
            }
            let sum: Vec<usize> = k.modules[xi].dims().iter().zip(k.modules[ti].dims()).map(|(p, q)| p + q).collect();
            ensure!(mid == sum, "{name}: mesh at {x} unbalanced");
        }
        let (bad, tried) = sectional_violations(&k, 200);
        ensure!(tried >= f.arrows.len(), "{name}: only {tried} sectional paths");
        ensure!(bad.is_empty(), "{name}: zero sectional composites {:?}", &bad[..bad.len().min(3)]);
        let r = verify_prop_2_4(f, 8);
        ensure!(ok_or_vacuous(&r), "{name}: Prop 2.4\n{r}");
        ensure!(cyclic_components(f).agree, "{name}: cyclic-component notions differ");
        let r = verify_cor_2_6(f);
        ensure!(ok_or_vacuous(&r), "{name}: Cor 2.6\n{r}");
    }
    Ok(())
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let algebras = [load("a2"), load("loop"), load("sigma")];
    for i in 0..100 {
        let a = &algebras[i % 3];
        let x = random_module(a, 6, &mut rng);
        let y = random_module(a, 6, &mut rng);
        let ours = hom_basis(a, &x, &y).map_err(|e| e.to_string())?.dim();
        let theirs = hom_dim_oracle(a, &x, &y);
        ensure!(ours == theirs, "{}: Hom dim {ours} vs oracle {theirs} for {x:?} {y:?}", a.name());
    }
    for (name, p) in [("a2", 2), ("loop", 3), ("sigma", 2)] {
        let a = parse_source_over(fixture(name).unwrap().source, Some(Field::Prime(p))).unwrap().algebra;
        for _ in 0..12 {
            let x = random_module(&a, 6, &mut rng);
            let mut ours: Vec<Vec<usize>> = decompose(&a, &x).map_err(|e| e.to_string())?.iter().map(|s| s.module.dims().to_vec()).collect();
            ours.sort();
            let theirs = SmallModule::of(&a, &x).summand_dims();
            ensure!(ours == theirs, "{name}: decompose {ours:?} vs search {theirs:?}");
        }
    }
    Ok(())
}

fn census_goldens() -> Outcome {
    let goldens = [
        // (fixture, total, rigid, τ-rigid, directing)
        ("a2", 3, 3, 3, 3),
        ("sigma", 10, 10, 10, 10),
        ("loop", 2, 1, 1, 0),
        ("a7", 76, 75, 58, 40),
    ];
    for (name, total, rigid, tau_rigid, directing) in goldens {
        let a = load(name);
        let u = RepresentationType::Finite(finite(&a)?);
        let c = census(&a, &u, DEFAULT_EXT_BUDGET).map_err(|e| e.to_string())?;
        let got = (c.total, c.rigid.len(), c.tau_rigid.len(), c.directing.len());
        ensure!(got == (total, rigid, tau_rigid, directing), "{name}: census {got:?}");
        let RepresentationType::Finite(k) = &u else { unreachable!() };
        let on_cycles = cyclic_vertices(&k.fragment).len();
        ensure!(c.directing.len() + on_cycles == c.total, "{name}: {on_cycles} vertices on cycles");
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, Option<Duration>, fn() -> Outcome); 8] = [
        ("A2 sanity", Some(Duration::from_secs(1)), a2_sanity),
        ("dual numbers", Some(Duration::from_secs(1)), dual_numbers),
        ("D5~ stable tube of rank 3", Some(Duration::from_secs(10)), d5_tube),
        ("A7 end to end", Some(Duration::from_secs(60)), a7_end_to_end),
        ("H10 directing growth probe", Some(Duration::from_secs(60)), h10_probe),
        ("property sweeps on closed fixtures", None, property_sweeps),
        ("oracle equivalence", None, oracle_equivalence),
        ("census goldens", None, census_goldens),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, (desc, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let took = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(()), Some(l)) if took > *l => Err(format!("took longer than {} s", l.as_secs())),
            (o, _) => o,
        };
        match outcome {
            Ok(()) => println!("criterion {}: PASS {desc} ({:.2} s)", n + 1, took.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {desc} ({:.2} s): {why}", n + 1, took.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
