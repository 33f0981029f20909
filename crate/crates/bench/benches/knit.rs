use criterion::{black_box, criterion_group, criterion_main, Criterion};

use arcycles::artrans::{classify_representation_type, knit_named, KnitBudget};
use arcycles::linrep::{hom_dim, standard_module, StandardKind};
use arcycles::theorems::directing_growth_probe;
use arcycles::trquiver::{core, cyclic_components};
use arcycles_bench::{algebra, with_modules};

fn classify(c: &mut Criterion) {
    for name in ["a2", "sigma", "a7"] {
        let a = algebra(name);
        c.bench_function(&format!("classify {name}"), |b| {
            b.iter(|| classify_representation_type(black_box(&a), KnitBudget::default()).unwrap())
        });
    }
}

fn tube(c: &mut Criterion) {
    let (a, mods) = with_modules("d5tilde");
    let s = |v: &str| standard_module(&a, StandardKind::Simple, a.vertex_index(v).unwrap()).unwrap();
    let seeds = vec![("S6".to_string(), s("6")), ("S7".to_string(), s("7")), ("E".to_string(), mods[0].1.clone())];
    c.bench_function("knit d5tilde tube radius 6", |b| {
        b.iter(|| knit_named(&a, black_box(&seeds), KnitBudget { max_vertices: 2000, max_radius: 6 }).unwrap())
    });
}

fn combinatorics(c: &mut Criterion) {
    let a = algebra("a7");
    let f = classify_representation_type(&a, KnitBudget::default()).unwrap();
    let f = match f {
        arcycles::artrans::RepresentationType::Finite(k) => k.fragment,
        arcycles::artrans::RepresentationType::Unresolved(k) => k.fragment,
    };
    c.bench_function("cyclic components a7", |b| b.iter(|| cyclic_components(black_box(&f))));
    c.bench_function("core a7", |b| b.iter(|| core(black_box(&f)).unwrap()));
}

fn homs(c: &mut Criterion) {
    let (a, mods) = with_modules("a7");
    let m = &mods[0].1;
    c.bench_function("dim End(M7)", |b| b.iter(|| hom_dim(&a, black_box(m), black_box(m)).unwrap()));
}

fn probe(c: &mut Criterion) {
    let a = algebra("h10");
    let mut g = c.benchmark_group("probe");
    g.sample_size(10);
    g.bench_function("h10 5 levels", |b| b.iter(|| directing_growth_probe(black_box(&a), 5).unwrap()));
    g.finish();
}

criterion_group!(benches, classify, tube, combinatorics, homs, probe);
criterion_main!(benches);
