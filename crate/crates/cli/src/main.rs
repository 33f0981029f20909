//! `arcycles` command-line front end.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use arcycles::algebra::parse_source_over;
use arcycles::artrans::{classify_with_seed, knit_named_with_seed, KnitBudget, Knitted, RepresentationType};
use arcycles::io::{export_fragment, fixture, Format};
use arcycles::linrep::{standard_module, DEFAULT_SEED};
use arcycles::structure::verify_support_props;
use arcycles::theorems::{
    census, directing_growth_probe, module_profile, verify_cor_2_6, verify_prop_2_4, verify_theorem_1, verify_theorem_2,
    DEFAULT_EXT_BUDGET,
};
use arcycles::trquiver::{
    acyclicity_status, coherence_status, core, cyclic_components, cyclic_vertices, detect_tube, find_multisection, TubeShape,
    DEFAULT_MAX_CYCLE_LEN,
};
use arcycles::{Algebra, Error, Field, Fragment, Report, Representation, StandardKind, Status};

#[derive(Parser)]
#[command(name = "arcycles", version, about = "Auslander-Reiten quiver fragments and their cyclic parts")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args, Clone)]
struct Input {
    /// algebra file, or the name of a built-in fixture
    file: String,
    /// `Q` or `F<p>`; overrides the file's field
    #[arg(long)]
    field: Option<String>,
}

#[derive(clap::Args, Clone)]
struct Budget {
    #[arg(long, default_value_t = 2000)]
    max_vertices: usize,
    #[arg(long, default_value_t = 64)]
    max_radius: usize,
    /// seed for randomized splitting; `ARCYCLES_SEED` takes precedence
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    Thm1,
    Thm2,
    Prop24,
    Cor26,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate an algebra
    Check {
        #[command(flatten)]
        input: Input,
    },
    /// Standard and named modules with their profiles
    Modules {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_EXT_BUDGET)]
        ext_budget: usize,
    },
    /// Knit an AR-quiver fragment
    Knit {
        #[command(flatten)]
        input: Input,
        /// comma-separated module names (`S<v>`, `P<v>`, `I<v>` or named modules); default all projectives and injectives
        #[arg(long, value_delimiter = ',')]
        seeds: Vec<String>,
        #[command(flatten)]
        budget: Budget,
    },
    /// Cyclic part, components, coherence, acyclicity and tube shape of a fragment
    Cyclic { fragment: PathBuf },
    /// Multisection and core of a closed fragment
    Multisection { fragment: PathBuf },
    /// Support properties of a family of modules
    Support {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', required = true)]
        family: Vec<String>,
        #[command(flatten)]
        budget: Budget,
    },
    /// Check a structural statement on the AR quiver of an algebra
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(value_enum)]
        which: Theorem,
        #[arg(long, value_delimiter = ',')]
        seeds: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_CYCLE_LEN)]
        max_len: usize,
        #[command(flatten)]
        budget: Budget,
    },
    /// Profiles of all indecomposables of a representation-finite algebra
    Census {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_EXT_BUDGET)]
        ext_budget: usize,
        #[command(flatten)]
        budget: Budget,
    },
    /// τ⁻¹-orbits of the projectives of a hereditary algebra
    ProbeDirecting {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
    /// Re-emit a fragment as JSON or DOT
    Export {
        fragment: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: ExportFormat,
    },
}

/// Usage and parse errors exit with 2, failed checks with 1.
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Check(describe(&e))
    }
}

type Run = std::result::Result<Value, Failure>;

fn describe(e: &Error) -> String {
    let dbg = format!("{e:?}");
    let variant = dbg.split(['(', ' ', '{']).next().unwrap_or_default();
    format!("{variant}: {e}")
}

fn usage(e: Error) -> Failure {
    Failure::Usage(describe(&e))
}

fn read(path: &str) -> std::result::Result<String, Failure> {
    match std::fs::read_to_string(path) {
        Ok(s) => Ok(s),
        Err(err) => match fixture(path) {
            Some(f) => Ok(f.source.to_string()),
            None => Err(Failure::Usage(format!("cannot read {path}: {err}"))),
        },
    }
}

struct Loaded {
    algebra: Algebra,
    named: Vec<(String, Representation)>,
}

fn load(input: &Input) -> std::result::Result<Loaded, Failure> {
    let text = read(&input.file)?;
    let field = input.field.as_deref().map(Field::parse).transpose().map_err(usage)?;
    let src = parse_source_over(&text, field).map_err(usage)?;
    let named = src
        .modules
        .iter()
        .map(|m| Ok((m.name.clone(), Representation::from_spec(&src.algebra, m)?)))
        .collect::<arcycles::Result<Vec<_>>>()
        .map_err(usage)?;
    Ok(Loaded { algebra: src.algebra, named })
}

fn read_fragment(path: &PathBuf) -> std::result::Result<Fragment, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Fragment::from_json(&text).map_err(usage)
}

fn seed(b: &Budget) -> std::result::Result<u64, Failure> {
    match std::env::var("ARCYCLES_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| Failure::Usage(format!("ARCYCLES_SEED is not an integer: `{s}`"))),
        Err(_) => Ok(b.seed.unwrap_or(DEFAULT_SEED)),
    }
}

fn knit_budget(b: &Budget) -> KnitBudget {
    KnitBudget { max_vertices: b.max_vertices, max_radius: b.max_radius }
}

/// `S<v>`, `P<v>`, `I<v>` or a module named in the source.
fn module(l: &Loaded, name: &str) -> std::result::Result<Representation, Failure> {
    if let Some((_, m)) = l.named.iter().find(|(n, _)| n == name) {
        return Ok(m.clone());
    }
    let kind = match name.chars().next() {
        Some('S') => Some(StandardKind::Simple),
        Some('P') => Some(StandardKind::Projective),
        Some('I') => Some(StandardKind::Injective),
        _ => None,
    };
    if let Some(kind) = kind {
        if let Ok(v) = l.algebra.vertex_index(&name[1..]) {
            return standard_module(&l.algebra, kind, v).map_err(usage);
        }
    }
    Err(Failure::Usage(format!("unknown module `{name}`")))
}

fn knit(l: &Loaded, seeds: &[String], b: &Budget) -> std::result::Result<Knitted, Failure> {
    let s = seed(b)?;
    if seeds.is_empty() {
        return Ok(match classify_with_seed(&l.algebra, knit_budget(b), s)? {
            RepresentationType::Finite(k) | RepresentationType::Unresolved(k) => k,
        });
    }
    let named = seeds.iter().map(|n| Ok((n.clone(), module(l, n)?))).collect::<std::result::Result<Vec<_>, Failure>>()?;
    Ok(knit_named_with_seed(&l.algebra, &named, knit_budget(b), s)?)
}

fn tag(f: &mut Fragment) {
    let t = if f.is_closed() {
        "closed".to_string()
    } else {
        match detect_tube(f) {
            TubeShape::StableTube(r) => format!("StableTube({r})"),
            TubeShape::TubeLike { rays, corays } => format!("TubeLike(rays={rays}, corays={corays})"),
            TubeShape::NotTube => "NotTube".into(),
            TubeShape::Inconclusive => "Inconclusive".into(),
        }
    };
    f.tags = vec![t];
}

fn report(r: Report) -> Run {
    let v = serde_json::to_value(&r).expect("reports serialize");
    if r.status == Status::Fail {
        emit(&serde_json::to_string_pretty(&v).unwrap());
        return Err(Failure::Check(format!("{}: {}", r.check, r.status)));
    }
    Ok(v)
}

fn ids(f: &Fragment, idx: &[usize]) -> Value {
    json!(f.ids(idx))
}

fn check(input: &Input) -> Run {
    let l = match load(input) {
        Ok(l) => l,
        Err(Failure::Usage(msg)) if std::path::Path::new(&input.file).exists() || fixture(&input.file).is_some() => {
            return Err(Failure::Check(msg))
        }
        Err(e) => return Err(e),
    };
    let a = &l.algebra;
    Ok(json!({
        "algebra": a.name(),
        "field": a.field().to_string(),
        "vertices": a.n_vertices(),
        "arrows": a.quiver().arrows.len(),
        "relations": a.relations().len(),
        "dim": a.dim(),
        "hereditary": a.is_hereditary(),
        "modules": l.named.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>(),
    }))
}

fn modules(input: &Input, ext_budget: usize) -> Run {
    let l = load(input)?;
    let a = &l.algebra;
    let mut out = Vec::new();
    for v in 0..a.n_vertices() {
        for (p, kind) in [("P", StandardKind::Projective), ("I", StandardKind::Injective), ("S", StandardKind::Simple)] {
            let m = standard_module(a, kind, v)?;
            out.push(json!({ "name": format!("{p}{}", a.vertex_name(v)), "profile": module_profile(a, &m, None, ext_budget)? }));
        }
    }
    for (n, m) in &l.named {
        let profile = match module_profile(a, m, None, ext_budget) {
            Ok(p) => json!(p),
            Err(Error::NotIndecomposable) => json!("decomposable"),
            Err(e) => return Err(e.into()),
        };
        out.push(json!({ "name": n, "profile": profile }));
    }
    Ok(json!(out))
}

fn cyclic(path: &PathBuf) -> Run {
    let f = read_fragment(path)?;
    let cc = cyclic_components(&f);
    Ok(json!({
        "cyclic": ids(&f, &cyclic_vertices(&f)),
        "components": cc.components.iter().map(|c| ids(&f, c)).collect::<Vec<_>>(),
        "shared_cycle_components": cc.shared_cycle.iter().map(|c| ids(&f, c)).collect::<Vec<_>>(),
        "notions_agree": cc.agree,
        "coherence": coherence_status(&f),
        "acyclicity": acyclicity_status(&f),
        "tube": detect_tube(&f),
    }))
}

fn multisection(path: &PathBuf) -> Run {
    let f = read_fragment(path)?;
    let m = find_multisection(&f)?;
    Ok(json!({
        "delta": ids(&f, &m.delta),
        "left_prime": ids(&f, &m.left_prime),
        "right_prime": ids(&f, &m.right_prime),
        "left_second": ids(&f, &m.left_second),
        "right_second": ids(&f, &m.right_second),
        "left": ids(&f, &m.left),
        "core": ids(&f, &core(&f)?),
        "right": ids(&f, &m.right),
    }))
}

fn support(input: &Input, family: &[String], b: &Budget) -> Run {
    let l = load(input)?;
    let mods = family.iter().map(|n| module(&l, n)).collect::<std::result::Result<Vec<_>, Failure>>()?;
    let refs: Vec<&Representation> = mods.iter().collect();
    report(verify_support_props(&l.algebra, &refs, knit_budget(b))?)
}

fn verify(input: &Input, which: Theorem, seeds: &[String], max_len: usize, b: &Budget) -> Run {
    let l = load(input)?;
    let k = knit(&l, seeds, b)?;
    let f = &k.fragment;
    let r = match which {
        Theorem::Prop24 => verify_prop_2_4(f, max_len),
        Theorem::Cor26 => verify_cor_2_6(f),
        Theorem::Thm1 | Theorem::Thm2 => {
            let want_open = matches!(which, Theorem::Thm1);
            let mut children = Vec::new();
            for c in cyclic_components(f).components {
                if c.iter().any(|&v| f.vertices[v].frontier) != want_open {
                    continue;
                }
                let child = if want_open {
                    verify_theorem_1(&l.algebra, &k, &c, knit_budget(b))?
                } else {
                    let mut r = verify_theorem_2(&l.algebra, &k, &c, knit_budget(b))?;
                    if f.is_closed() {
                        r = r.with_witness(format!("core = {{{}}}", f.ids(&core(f)?).join(", ")));
                    }
                    r
                };
                children.push(child.with_witness(format!("Γ = {{{}}}", f.ids(&c).join(", "))));
            }
            let name = if want_open { "Theorem 1" } else { "Theorem 2" };
            if children.is_empty() {
                let why = if want_open { "no truncated cyclic component" } else { "no finite cyclic component" };
                Report::leaf(name, Status::Vacuous, vec![why.into()])
            } else {
                Report::group(name, children)
            }
        }
    };
    report(r)
}

fn run_census(input: &Input, ext_budget: usize, b: &Budget) -> Run {
    let l = load(input)?;
    let u = classify_with_seed(&l.algebra, knit_budget(b), seed(b)?)?;
    let c = census(&l.algebra, &u, ext_budget)?;
    let r = c.report();
    let mut v = serde_json::to_value(&c).expect("census serializes");
    v["report"] = serde_json::to_value(&r).unwrap();
    if r.status == Status::Fail {
        emit(&serde_json::to_string_pretty(&v).unwrap());
        return Err(Failure::Check("census: fail".into()));
    }
    Ok(v)
}

fn probe(input: &Input, steps: usize) -> Run {
    let l = load(input)?;
    let p = directing_growth_probe(&l.algebra, steps)?;
    let v = serde_json::to_value(&p).expect("probe serializes");
    if p.report.status == Status::Fail {
        emit(&serde_json::to_string_pretty(&v).unwrap());
        return Err(Failure::Check("directing growth probe: fail".into()));
    }
    Ok(v)
}

/// Writes a line to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = match &cli.cmd {
        Cmd::Check { input } => check(input),
        Cmd::Modules { input, ext_budget } => modules(input, *ext_budget),
        Cmd::Knit { input, seeds, budget } => match load(input).and_then(|l| knit(&l, seeds, budget)) {
            Ok(mut k) => {
                tag(&mut k.fragment);
                emit(&k.fragment.to_json());
                return ExitCode::SUCCESS;
            }
            Err(e) => Err(e),
        },
        Cmd::Cyclic { fragment } => cyclic(fragment),
        Cmd::Multisection { fragment } => multisection(fragment),
        Cmd::Support { input, family, budget } => support(input, family, budget),
        Cmd::Verify { input, which, seeds, max_len, budget } => verify(input, *which, seeds, *max_len, budget),
        Cmd::Census { input, ext_budget, budget } => run_census(input, *ext_budget, budget),
        Cmd::ProbeDirecting { input, steps } => probe(input, *steps),
        Cmd::Export { fragment, format } => match read_fragment(fragment) {
            Ok(f) => {
                let fmt = match format {
                    ExportFormat::Json => Format::Json,
                    ExportFormat::Dot => Format::Dot,
                };
                emit(export_fragment(&f, fmt).trim_end());
                return ExitCode::SUCCESS;
            }
            Err(e) => Err(e),
        },
    };
    match out {
        Ok(v) => {
            emit(&serde_json::to_string_pretty(&v).unwrap());
            ExitCode::SUCCESS
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
