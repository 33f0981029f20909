use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linrep::{
    decompose_with_seed, end_info, iso_indecomposable, standard_module, structure_series, Morphism, Representation, StandardKind, DEFAULT_SEED,
};
use crate::trquiver::{Fragment, FragmentArrow, FragmentVertex};

use super::{almost_split_with, tau_inverse_raw, tau_raw, AlmostSplitSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KnitBudget {
    pub max_vertices: usize,
    pub max_radius: usize,
}

impl Default for KnitBudget {
    fn default() -> Self {
        KnitBudget { max_vertices: 2000, max_radius: 64 }
    }
}

/// A knitted fragment together with the modules behind its vertices.
#[derive(Clone, Debug)]
pub struct Knitted {
    pub fragment: Fragment,
    /// `modules[i]` realizes `fragment.vertices[i]`
    pub modules: Vec<Representation>,
    /// discovery level of each vertex
    pub levels: Vec<usize>,
    /// one irreducible map per arrow, keyed by vertex indices
    pub irreducible: BTreeMap<(usize, usize), Morphism>,
    /// almost split sequences keyed by their right end
    pub sequences: BTreeMap<usize, AlmostSplitSequence>,
}

impl Knitted {
    pub fn is_closed(&self) -> bool {
        self.fragment.is_closed()
    }
}

#[derive(Clone, Debug)]
pub enum RepresentationType {
    Finite(Knitted),
    Unresolved(Knitted),
}

struct Node {
    module: Representation,
    level: usize,
    name: Option<String>,
    proj: Option<usize>,
    inj: Option<usize>,
    simple: Option<usize>,
    expanded: bool,
}

struct Knitter<'a> {
    alg: &'a Algebra,
    seed: u64,
    standard: Vec<(StandardKind, usize, Representation)>,
    nodes: Vec<Node>,
    by_dims: HashMap<Vec<usize>, Vec<usize>>,
    arrows: BTreeMap<(usize, usize), usize>,
    maps: BTreeMap<(usize, usize), Morphism>,
    tau: Vec<(usize, usize)>,
    sequences: HashMap<usize, AlmostSplitSequence>,
    queue: VecDeque<usize>,
}

impl<'a> Knitter<'a> {
    fn new(alg: &'a Algebra, seed: u64) -> Knitter<'a> {
        let mut standard = Vec::new();
        for kind in [StandardKind::Simple, StandardKind::Projective, StandardKind::Injective] {
            for v in 0..alg.n_vertices() {
                standard.push((kind, v, standard_module(alg, kind, v).unwrap()));
            }
        }
        Knitter {
            alg,
            seed,
            standard,
            nodes: vec![],
            by_dims: HashMap::new(),
            arrows: BTreeMap::new(),
            maps: BTreeMap::new(),
            tau: vec![],
            sequences: HashMap::new(),
            queue: VecDeque::new(),
        }
    }

    /// Existing vertex isomorphic to `m`, with an isomorphism `m → vertex`.
    fn find(&self, m: &Representation) -> Option<(usize, Morphism)> {
        let cands = self.by_dims.get(m.dims())?;
        cands.iter().find_map(|&i| iso_indecomposable(self.alg, m, &self.nodes[i].module).map(|h| (i, h)))
    }

    fn find_or_add(&mut self, m: &Representation, level: usize) -> (usize, Morphism) {
        if let Some(hit) = self.find(m) {
            return hit;
        }
        let i = self.add(m.clone(), level, None);
        (i, Morphism::identity(m))
    }

    fn add(&mut self, module: Representation, level: usize, name: Option<String>) -> usize {
        let mut node = Node { module, level, name, proj: None, inj: None, simple: None, expanded: false };
        for (kind, v, s) in &self.standard {
            if s.dims() == node.module.dims() && iso_indecomposable(self.alg, s, &node.module).is_some() {
                match kind {
                    StandardKind::Simple => node.simple = Some(*v),
                    StandardKind::Projective => node.proj = Some(*v),
                    StandardKind::Injective => node.inj = Some(*v),
                }
            }
        }
        let i = self.nodes.len();
        self.by_dims.entry(node.module.dims().to_vec()).or_default().push(i);
        self.nodes.push(node);
        self.queue.push_back(i);
        i
    }

    fn sequence(&mut self, i: usize) -> Result<&AlmostSplitSequence> {
        if !self.sequences.contains_key(&i) {
            let x = &self.nodes[i].module;
            let end = end_info(self.alg, x)?.ok_or(Error::NotIndecomposable)?;
            let left = tau_raw(self.alg, x);
            let seq = almost_split_with(self.alg, x, left, &end.radical, self.seed)?;
            self.sequences.insert(i, seq);
        }
        Ok(&self.sequences[&i])
    }

    fn set_arrow(&mut self, s: usize, t: usize, mult: usize, map: Morphism) {
        let e = self.arrows.entry((s, t)).or_insert(mult);
        debug_assert_eq!(*e, mult, "arrow multiplicity disagrees between meshes");
        *e = (*e).max(mult);
        self.maps.entry((s, t)).or_insert(map);
    }

    /// Registers the summands as neighbours of `i`; `into` selects the arrow direction.
    /// `through(summand)` is the map between the summand and `i` in that direction.
    fn attach(&mut self, i: usize, parts: Vec<(Representation, Morphism)>, into: bool) {
        let level = self.nodes[i].level + 1;
        let mut counts: Vec<(usize, usize, Morphism)> = Vec::new();
        for (m, through) in parts {
            let (j, iso) = self.find_or_add(&m, level);
            if let Some(c) = counts.iter_mut().find(|c| c.0 == j) {
                c.1 += 1;
                continue;
            }
            // iso: m → node j
            let map = if into {
                let back = iso_indecomposable(self.alg, &self.nodes[j].module, &m).expect("isomorphic");
                back.then(&through)
            } else {
                through.then(&iso)
            };
            counts.push((j, 1, map));
        }
        for (j, mult, map) in counts {
            if into {
                self.set_arrow(j, i, mult, map);
            } else {
                self.set_arrow(i, j, mult, map);
            }
        }
    }

    fn expand(&mut self, i: usize) -> Result<()> {
        self.nodes[i].expanded = true;
        let alg = self.alg;
        let x = self.nodes[i].module.clone();
        let level = self.nodes[i].level + 1;
        // arrows ending at X
        if self.nodes[i].proj.is_some() {
            let ss = structure_series(alg, &x)?;
            let parts = decompose_with_seed(alg, &ss.radical, self.seed)?
                .into_iter()
                .map(|s| (s.module, s.incl.then(&ss.radical_incl)))
                .collect();
            self.attach(i, parts, true);
        } else {
            let seq = self.sequence(i)?.clone();
            let (t, _) = self.find_or_add(&seq.left, level);
            self.tau.push((i, t));
            let parts = seq.summands.iter().map(|s| (s.module.clone(), s.incl.then(&seq.right_map))).collect();
            self.attach(i, parts, true);
        }
        // arrows starting at X
        if self.nodes[i].inj.is_some() {
            let ss = structure_series(alg, &x)?;
            let (top, q) = x.quotient(alg, &ss.socle_incl.maps);
            let parts = decompose_with_seed(alg, &top, self.seed)?.into_iter().map(|s| (s.module, q.then(&s.proj))).collect();
            self.attach(i, parts, false);
        } else {
            let y = tau_inverse_raw(alg, &x);
            let (j, _) = self.find_or_add(&y, level);
            let seq = self.sequence(j)?.clone();
            let to_left = iso_indecomposable(alg, &x, &seq.left).expect("τ τ⁻¹ X ≅ X");
            let parts = seq
                .summands
                .iter()
                .map(|s| (s.module.clone(), to_left.then(&seq.left_map).then(&s.proj)))
                .collect();
            self.attach(i, parts, false);
        }
        Ok(())
    }

    fn run(&mut self, budget: KnitBudget) -> Result<()> {
        while let Some(i) = self.queue.pop_front() {
            if self.nodes[i].level + 1 >= budget.max_radius || self.nodes.len() >= budget.max_vertices {
                continue;
            }
            self.expand(i)?;
        }
        Ok(())
    }

    fn finish(self) -> Knitted {
        let alg = self.alg;
        let n = self.nodes.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            let (x, y) = (&self.nodes[a], &self.nodes[b]);
            (x.level, x.module.dims()).cmp(&(y.level, y.module.dims())).then(a.cmp(&b))
        });
        let mut pos = vec![0; n];
        for (k, &i) in order.iter().enumerate() {
            pos[i] = k;
        }
        let mut other = 0;
        let ids: Vec<String> = order
            .iter()
            .map(|&i| {
                let node = &self.nodes[i];
                let name = |p: &str, v: usize| format!("{p}{}", alg.vertex_name(v));
                if let Some(s) = &node.name {
                    s.clone()
                } else if let Some(v) = node.simple {
                    name("S", v)
                } else if let Some(v) = node.proj {
                    name("P", v)
                } else if let Some(v) = node.inj {
                    name("I", v)
                } else {
                    other += 1;
                    format!("M{other}")
                }
            })
            .collect();
        let vertices = order
            .iter()
            .zip(&ids)
            .map(|(&i, id)| {
                let node = &self.nodes[i];
                FragmentVertex {
                    id: id.clone(),
                    dim: (0..alg.n_vertices()).map(|v| (alg.vertex_name(v).to_string(), node.module.dims()[v])).collect(),
                    proj: node.proj.is_some(),
                    inj: node.inj.is_some(),
                    frontier: !node.expanded,
                }
            })
            .collect();
        let mut arrows: Vec<(usize, usize, usize)> = self.arrows.iter().map(|(&(s, t), &m)| (pos[s], pos[t], m)).collect();
        arrows.sort();
        let mut tau: Vec<(usize, usize)> = self.tau.iter().map(|&(x, y)| (pos[x], pos[y])).collect();
        tau.sort();
        let fragment = Fragment {
            vertices,
            arrows: arrows
                .iter()
                .map(|&(s, t, mult)| FragmentArrow { src: ids[s].clone(), tgt: ids[t].clone(), mult })
                .collect(),
            tau: tau.iter().map(|&(x, y)| (ids[x].clone(), ids[y].clone())).collect(),
            tags: vec![],
        };
        let mut nodes: Vec<Option<Node>> = self.nodes.into_iter().map(Some).collect();
        let (modules, levels) = order
            .iter()
            .map(|&i| {
                let node = nodes[i].take().unwrap();
                (node.module, node.level)
            })
            .unzip();
        Knitted {
            fragment,
            modules,
            levels,
            irreducible: self.maps.into_iter().map(|((s, t), m)| ((pos[s], pos[t]), m)).collect(),
            sequences: self.sequences.into_iter().map(|(i, s)| (pos[i], s)).collect(),
        }
    }
}

/// Breadth-first closure of the seeds under τ, τ⁻¹ and meshes.
///
/// Vertices at distance `max_radius - 1` from the seeds, or found after `max_vertices`
/// is reached, are left unexpanded and flagged as frontier.
pub fn knit_component(alg: &Algebra, seeds: &[Representation], budget: KnitBudget) -> Result<Knitted> {
    let named: Vec<(Option<String>, Representation)> = seeds.iter().map(|s| (None, s.clone())).collect();
    knit_inner(alg, &named, budget, DEFAULT_SEED)
}

/// As [`knit_component`], keeping the given names as vertex ids.
pub fn knit_named(alg: &Algebra, seeds: &[(String, Representation)], budget: KnitBudget) -> Result<Knitted> {
    let named: Vec<(Option<String>, Representation)> = seeds.iter().map(|(n, s)| (Some(n.clone()), s.clone())).collect();
    knit_inner(alg, &named, budget, DEFAULT_SEED)
}

/// As [`knit_named`], with the seed used by randomized splitting.
pub fn knit_named_with_seed(alg: &Algebra, seeds: &[(String, Representation)], budget: KnitBudget, seed: u64) -> Result<Knitted> {
    let named: Vec<(Option<String>, Representation)> = seeds.iter().map(|(n, s)| (Some(n.clone()), s.clone())).collect();
    knit_inner(alg, &named, budget, seed)
}

fn knit_inner(alg: &Algebra, seeds: &[(Option<String>, Representation)], budget: KnitBudget, seed: u64) -> Result<Knitted> {
    let mut k = Knitter::new(alg, seed);
    for (i, (name, s)) in seeds.iter().enumerate() {
        s.check(alg)?;
        if end_info(alg, s)?.is_none() {
            return Err(Error::NonIndecomposableSeed(i));
        }
        if let Some((j, _)) = k.find(s) {
            return Err(Error::DuplicateSeeds(j, i));
        }
        k.add(s.clone(), 0, name.clone());
    }
    k.run(budget)?;
    Ok(k.finish())
}

/// Knits from all projectives and injectives; `Finite` when the result has no frontier.
pub fn classify_representation_type(alg: &Algebra, budget: KnitBudget) -> Result<RepresentationType> {
    classify_with_seed(alg, budget, DEFAULT_SEED)
}

pub fn classify_with_seed(alg: &Algebra, budget: KnitBudget, seed: u64) -> Result<RepresentationType> {
    let mut seeds: Vec<Representation> = Vec::new();
    for kind in [StandardKind::Projective, StandardKind::Injective] {
        for v in 0..alg.n_vertices() {
            let m = standard_module(alg, kind, v)?;
            if !seeds.iter().any(|s| s.dims() == m.dims() && iso_indecomposable(alg, s, &m).is_some()) {
                seeds.push(m);
            }
        }
    }
    let named: Vec<(Option<String>, Representation)> = seeds.into_iter().map(|s| (None, s)).collect();
    let k = knit_inner(alg, &named, budget, seed)?;
    Ok(if k.is_closed() { RepresentationType::Finite(k) } else { RepresentationType::Unresolved(k) })
}
