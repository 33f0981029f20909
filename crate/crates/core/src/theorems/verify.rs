use crate::algebra::Algebra;
use crate::artrans::{classify_representation_type, knit_component, KnitBudget, Knitted, RepresentationType};
use crate::error::{Error, Result};
use crate::linrep::{annihilator, hom_dim, Representation};
use crate::report::{Report, Status};
use crate::structure::{check_separating, descend, faithful_algebra, locate, trace_ideal, Families};
use crate::trquiver::{core, cycles, cyclic_components, find_cyclic_coherent_parts, hook_in, Fragment};

/// Every enumerated cycle `X_0 → … → X_r = X_0` has an `i` with `τX_i = X_{i-2}`.
pub fn verify_prop_2_4(f: &Fragment, max_len: usize) -> Report {
    let g = f.graph();
    let (cyc, complete) = cycles(f, max_len);
    let mut fails = Vec::new();
    let mut open = Vec::new();
    let mut hooks = Vec::new();
    for c in &cyc {
        let label = || f.ids(c).join(" -> ");
        match hook_in(&g, c) {
            Some(i) => {
                if hooks.len() < 5 {
                    hooks.push(format!("{}: i = {i}", label()));
                }
            }
            None if c.iter().any(|&v| f.vertices[v].frontier) => open.push(label()),
            None => fails.push(label()),
        }
    }
    let status = if !fails.is_empty() {
        Status::Fail
    } else if !open.is_empty() || !complete {
        Status::Inconclusive
    } else if cyc.is_empty() {
        Status::Vacuous
    } else {
        Status::Pass
    };
    let mut w = vec![format!("{} cycles of length ≤ {max_len}{}", cyc.len(), if complete { "" } else { " (enumeration capped)" })];
    w.extend(fails.into_iter().map(|c| format!("no hook: {c}")));
    w.extend(open.into_iter().map(|c| format!("meets the frontier: {c}")));
    w.extend(hooks);
    Report::leaf("every cycle has τX_i = X_{i-2}", status, w)
}

/// Every finite cyclic component without frontier vertices contains a projective and an injective.
pub fn verify_cor_2_6(f: &Fragment) -> Report {
    let mut children = Vec::new();
    for comp in cyclic_components(f).components {
        let label = format!("component of {} ({} vertices)", f.vertices[comp[0]].id, comp.len());
        if comp.iter().any(|&v| f.vertices[v].frontier) {
            children.push(Report::leaf(label, Status::Inconclusive, vec!["meets the frontier".into()]));
            continue;
        }
        let p = comp.iter().find(|&&v| f.vertices[v].proj);
        let i = comp.iter().find(|&&v| f.vertices[v].inj);
        let w = vec![
            p.map_or("no projective".into(), |&v| format!("projective {}", f.vertices[v].id)),
            i.map_or("no injective".into(), |&v| format!("injective {}", f.vertices[v].id)),
        ];
        children.push(Report::leaf(label, Status::of(p.is_some() && i.is_some()), w));
    }
    Report::group("finite cyclic components contain a projective and an injective", children)
}

fn modules_of<'a>(k: &'a Knitted, idx: &[usize]) -> Vec<&'a Representation> {
    idx.iter().map(|&i| &k.modules[i]).collect()
}

fn su_equals_b(alg: &Algebra, fam: &[&Representation], note: &str) -> Result<Report> {
    let t = trace_ideal(alg, fam)?;
    let ann = annihilator(alg, fam)?;
    let mut w = vec![format!("dim t(Γ) = {}, dim ann(Γ) = {}", t.dim(), ann.dim())];
    if !note.is_empty() {
        w.push(note.into());
    }
    Ok(Report::leaf("su(Γ) = B(Γ)", Status::of(t == ann), w))
}

fn check_component(f: &Fragment, gamma: &[usize]) -> Option<Vec<usize>> {
    let mut g = gamma.to_vec();
    g.sort_unstable();
    cyclic_components(f).components.contains(&g).then_some(g)
}

/// Theorem 1 on a truncated cyclic component.
pub fn verify_theorem_1(alg: &Algebra, k: &Knitted, gamma: &[usize], budget: KnitBudget) -> Result<Report> {
    let f = &k.fragment;
    let g = check_component(f, gamma).ok_or_else(|| Error::NotCyclic(format!("{:?}", f.ids(gamma))))?;
    if !g.iter().any(|&v| f.vertices[v].frontier) {
        return Err(Error::WrongRegime("Γ is a finite cyclic component; use verify_theorem_2".into()));
    }
    let parts = find_cyclic_coherent_parts(f, &g)?;
    let sizes: Vec<String> = parts.parts.iter().map(|p| p.len().to_string()).collect();
    let cc = Report::leaf(
        "maximal cyclic coherent parts",
        if parts.parts.is_empty() { Status::Fail } else { Status::Pass },
        vec![format!("part sizes [{}], remainder {}", sizes.join(", "), parts.remainder.len())],
    );
    let open = parts.remainder.iter().any(|&v| f.vertices[v].frontier);
    let finite = Report::leaf(
        "remainder finite",
        if open { Status::Inconclusive } else { Status::Pass },
        vec![format!("remainder {{{}}}", f.ids(&parts.remainder).join(", "))],
    );
    let b_rem = if parts.remainder.is_empty() {
        Report::leaf("B(Γ∖Γ^cc) representation-finite", Status::Vacuous, vec!["empty remainder".into()])
    } else {
        let b = faithful_algebra(alg, &modules_of(k, &parts.remainder))?;
        let (status, w) = match classify_representation_type(&b.algebra, budget)? {
            RepresentationType::Finite(kb) => (Status::Pass, format!("{} indecomposables", kb.modules.len())),
            RepresentationType::Unresolved(kb) => (Status::Inconclusive, format!("knitting stopped at {} modules", kb.modules.len())),
        };
        Report::leaf("B(Γ∖Γ^cc) representation-finite", status, vec![b.algebra.to_string(), w])
    };
    let su = su_equals_b(alg, &modules_of(k, &g), "computed on the truncation")?;
    Ok(Report::group("Theorem 1", vec![cc, finite, b_rem, su]))
}

/// Theorem 2 on a finite cyclic component of a fragment.
pub fn verify_theorem_2(alg: &Algebra, k: &Knitted, gamma: &[usize], budget: KnitBudget) -> Result<Report> {
    let f = &k.fragment;
    let not_finite = || Error::NotFiniteCyclic(format!("{:?}", f.ids(gamma)));
    let g = check_component(f, gamma).ok_or_else(not_finite)?;
    if g.is_empty() || g.iter().any(|&v| f.vertices[v].frontier) {
        return Err(not_finite());
    }
    let fam = modules_of(k, &g);
    let su = su_equals_b(alg, &fam, "")?;
    let b = faithful_algebra(alg, &fam)?;
    let down: Vec<Representation> = fam.iter().map(|m| descend(alg, &b, m)).collect::<Result<_>>()?;
    let kb = knit_component(&b.algebra, &down, budget)?;
    let closed = kb.is_closed();
    let acyclic = Report::leaf(
        "component of Γ in Γ_B(Γ) almost acyclic",
        if closed { Status::Pass } else { Status::Inconclusive },
        vec![format!("{} vertices{}", kb.modules.len(), if closed { ", closed" } else { ", truncated" })],
    );
    let mut in_b = Vec::new();
    for d in &down {
        in_b.push(locate(&b.algebra, &kb, d)?.expect("seeds lie in their component"));
    }
    in_b.sort_unstable();
    let core_report = if closed {
        let c = core(&kb.fragment)?;
        Report::leaf("Γ is the core", Status::of(c == in_b), vec![format!("core has {} vertices, Γ has {}", c.len(), in_b.len())])
    } else {
        Report::leaf("Γ is the core", Status::Inconclusive, vec!["component truncated".into()])
    };
    let sep = match classify_representation_type(&b.algebra, budget)? {
        u @ RepresentationType::Finite(_) => {
            let RepresentationType::Finite(ku) = &u else { unreachable!() };
            let mut c = Vec::new();
            for m in &kb.modules {
                c.push(locate(&b.algebra, ku, m)?.expect("universe is complete"));
            }
            let (mut p, mut q) = (Vec::new(), Vec::new());
            for i in (0..ku.modules.len()).filter(|i| !c.contains(i)) {
                let mut into = false;
                for &j in &c {
                    if hom_dim(&b.algebra, &ku.modules[i], &ku.modules[j])? > 0 {
                        into = true;
                        break;
                    }
                }
                if into {
                    p.push(i)
                } else {
                    q.push(i)
                }
            }
            let mut r = check_separating(&b.algebra, &u, &Families { p, c, q })?;
            r.check = "component separating".into();
            r
        }
        RepresentationType::Unresolved(ku) => {
            // Hom vanishing out of the component into its computed predecessors only
            let inside: Vec<usize> = kb.modules.iter().map(|m| locate(&b.algebra, &ku, m)).collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
            let mut bad = Vec::new();
            for i in (0..ku.modules.len()).filter(|i| !inside.contains(i)) {
                for &j in &inside {
                    let (x, y) = (&ku.modules[i], &ku.modules[j]);
                    if hom_dim(&b.algebra, y, x)? > 0 && hom_dim(&b.algebra, x, y)? > 0 {
                        bad.push(format!("{} and {}", ku.fragment.vertices[i].id, ku.fragment.vertices[j].id));
                    }
                }
            }
            let mut w = vec!["universe incomplete: Hom vanishing on computed modules only".to_string()];
            w.extend(bad.iter().cloned());
            Report::leaf("component separating", if bad.is_empty() { Status::Inconclusive } else { Status::Fail }, w)
        }
    };
    let indicator = Report::group("su(Γ) generalized double tilted (separating almost acyclic component)", vec![acyclic, sep]);
    Ok(Report::group("Theorem 2", vec![indicator, core_report, su]).with_witness(format!("B(Γ): {}", b.algebra)))
}
