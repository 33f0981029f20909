use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{Echelon, Matrix};

use super::{Morphism, Representation};

/// Projective cover `π: P0 → X` with kernel `Ω`, built from a basis of the top.
///
/// `P0 = ⊕_k P_{v_k}`; a basis vector of `P0(w)` is a pair `(k, p)` with `p` a basis path `v_k ⇝ w`.
#[derive(Clone, Debug)]
pub struct Presentation {
    /// generators `(v_k, x_k ∈ X(v_k))`
    pub gens: Vec<(usize, Vec<Scalar>)>,
    pub cover: Representation,
    pub cover_basis: Vec<Vec<(usize, usize)>>,
    pub pi: Morphism,
    /// `section[v]·pi[v] = 1`
    pub section: Vec<Matrix>,
    pub omega: Representation,
    pub omega_incl: Morphism,
}

impl Presentation {
    pub fn new(alg: &Algebra, x: &Representation) -> Presentation {
        let f = alg.field();
        let q = alg.quiver();
        let n = alg.n_vertices();
        // rad X(v) = Σ images of arrows into v
        let mut gens = Vec::new();
        for v in 0..n {
            let parts: Vec<Matrix> = q.in_arrows(v).map(|a| x.maps[a].clone()).collect();
            let rad = Matrix::vstack(f, x.dims[v], &parts.iter().collect::<Vec<_>>());
            let comp = Echelon::new(&rad).complement();
            for r in 0..comp.rows() {
                gens.push((v, comp.row_vec(r)));
            }
        }
        let cover_basis: Vec<Vec<(usize, usize)>> = (0..n)
            .map(|w| {
                gens.iter()
                    .enumerate()
                    .flat_map(|(k, (v, _))| alg.block(*v, w).iter().map(move |&p| (k, p)))
                    .collect()
            })
            .collect();
        let cdims: Vec<usize> = cover_basis.iter().map(Vec::len).collect();
        let cmaps = q
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let mut m = Matrix::zeros(f, cdims[a.src], cdims[a.tgt]);
                if let Some(arrow) = alg.basis_index(a.src, &[ai]) {
                    for (r, &(k, p)) in cover_basis[a.src].iter().enumerate() {
                        for (b, c) in alg.mul_basis(p, arrow) {
                            let col = cover_basis[a.tgt].iter().position(|&y| y == (k, b)).unwrap();
                            m.set(r, col, c);
                        }
                    }
                }
                m
            })
            .collect();
        let cover = Representation::unchecked(alg, cdims, cmaps);
        let pi_maps: Vec<Matrix> = (0..n)
            .map(|w| {
                let rows = cover_basis[w].iter().map(|&(k, p)| x.action(alg, p).apply(&gens[k].1)).collect();
                Matrix::from_rows(f, x.dims[w], rows)
            })
            .collect();
        let section = pi_maps
            .iter()
            .zip(&x.dims)
            .map(|(m, &d)| {
                let ech = Echelon::new(m);
                let rows = (0..d)
                    .map(|i| ech.coords(&crate::matrix::unit(f, d, i)).expect("cover is onto"))
                    .collect();
                Matrix::from_rows(f, m.rows(), rows)
            })
            .collect();
        let pi = Morphism { maps: pi_maps };
        let (omega, omega_incl) = cover.submodule(alg, &pi.kernel_basis());
        Presentation { gens, cover, cover_basis, pi, section, omega, omega_incl }
    }

    /// The morphism `X → Y` sending `x_k` to `y_k`; `ys` concatenates the `y_k`.
    pub fn extend(&self, alg: &Algebra, y: &Representation, ys: &[Scalar]) -> Morphism {
        let g = self.cover_map(alg, y, ys);
        Morphism { maps: self.section.iter().zip(&g.maps).map(|(s, m)| s.mul(m)).collect() }
    }

    /// The morphism `P0 → Y` sending the `k`-th top generator to `y_k`.
    pub fn cover_map(&self, alg: &Algebra, y: &Representation, ys: &[Scalar]) -> Morphism {
        let f = alg.field();
        let mut offs = Vec::new();
        let mut o = 0;
        for (v, _) in &self.gens {
            offs.push(o);
            o += y.dims[*v];
        }
        let maps = self
            .cover_basis
            .iter()
            .enumerate()
            .map(|(w, basis)| {
                let rows = basis
                    .iter()
                    .map(|&(k, p)| {
                        let v = self.gens[k].0;
                        y.action(alg, p).apply(&ys[offs[k]..offs[k] + y.dims[v]])
                    })
                    .collect();
                Matrix::from_rows(f, y.dims[w], rows)
            })
            .collect();
        Morphism { maps }
    }

    /// Images of the generators under `h: X → Y`, concatenated.
    pub fn eval(&self, h: &Morphism) -> Vec<Scalar> {
        self.gens.iter().flat_map(|(v, x)| h.maps[*v].apply(x)).collect()
    }

    /// Number of free coordinates of a map out of `P0` into `y`.
    pub fn cover_hom_dim(&self, y: &Representation) -> usize {
        self.gens.iter().map(|(v, _)| y.dims[*v]).sum()
    }

    /// Linear system whose left kernel is `Hom(X, Y)` in generator coordinates.
    fn equations(&self, alg: &Algebra, y: &Representation) -> Matrix {
        let f = alg.field();
        let nvar = self.cover_hom_dim(y);
        let mut cols: Vec<Vec<Scalar>> = Vec::new();
        // column = one scalar equation; entry per variable
        let mut offs = Vec::new();
        let mut o = 0;
        for (v, _) in &self.gens {
            offs.push(o);
            o += y.dims[*v];
        }
        let mut actions = std::collections::HashMap::new();
        for (w, basis) in self.cover_basis.iter().enumerate() {
            let om = &self.omega_incl.maps[w];
            for r in 0..om.rows() {
                let mut eq = vec![vec![f.zero(); nvar]; y.dims[w]];
                for (c, &(k, p)) in basis.iter().enumerate() {
                    let s = om.get(r, c);
                    if s.is_zero() {
                        continue;
                    }
                    let act = actions.entry(p).or_insert_with(|| y.action(alg, p));
                    for i in 0..act.rows() {
                        for (d, e) in eq.iter_mut().enumerate() {
                            let t = act.get(i, d);
                            if !t.is_zero() {
                                e[offs[k] + i].add_mul(s, t);
                            }
                        }
                    }
                }
                cols.extend(eq);
            }
        }
        Matrix::from_rows(f, nvar, cols).transpose()
    }
}

/// Basis of `Hom(X, Y)`, echelonized in generator coordinates of `X`.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub basis: Vec<Morphism>,
    /// row `i` holds the images of the top generators of `X` under `basis[i]`
    pub coords: Matrix,
    ech: Echelon,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a homomorphism along `basis`.
    pub fn coordinates(&self, pres: &Presentation, h: &Morphism) -> Vec<Scalar> {
        self.ech.coords(&pres.eval(h)).expect("argument is a homomorphism")
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> Option<Morphism> {
        let mut it = self.basis.iter().zip(coeffs);
        let (b, c) = it.next()?;
        Some(it.fold(b.scale(c), |acc, (b, c)| acc.add(&b.scale(c))))
    }
}

pub(crate) fn hom_with(alg: &Algebra, pres: &Presentation, y: &Representation) -> HomBasis {
    let eqs = pres.equations(alg, y);
    let sol = eqs.left_kernel();
    let basis = (0..sol.rows()).map(|i| pres.extend(alg, y, sol.row(i))).collect();
    let ech = Echelon::new(&sol);
    HomBasis { basis, coords: sol, ech }
}

pub fn hom_basis(alg: &Algebra, x: &Representation, y: &Representation) -> Result<HomBasis> {
    x.check(alg)?;
    y.check(alg)?;
    Ok(hom_with(alg, &Presentation::new(alg, x), y))
}

pub fn hom_dim(alg: &Algebra, x: &Representation, y: &Representation) -> Result<usize> {
    x.check(alg)?;
    y.check(alg)?;
    let pres = Presentation::new(alg, x);
    let eqs = pres.equations(alg, y);
    Ok(eqs.rows() - eqs.rank())
}

/// `Ext¹(X, Y)` as the cokernel of `Hom(P0, Y) → Hom(Ω, Y)`, with cocycle representatives.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub pres: Presentation,
    pub omega_pres: Presentation,
    pub hom_omega: HomBasis,
    /// cocycles `Ω → Y` spanning a complement of the coboundaries
    pub cocycles: Vec<Morphism>,
    /// coboundaries in `hom_omega` coordinates, echelonized
    boundaries: Echelon,
}

impl ExtSpace {
    pub fn dim(&self) -> usize {
        self.cocycles.len()
    }

    /// Whether a cocycle `Ω → Y` is a coboundary.
    pub fn is_trivial(&self, h: &Morphism) -> bool {
        let c = self.hom_omega.coordinates(&self.omega_pres, h);
        self.boundaries.contains(&c)
    }

    /// Class of a cocycle in the basis of `cocycles`.
    pub fn class(&self, h: &Morphism) -> Vec<Scalar> {
        let c = self.hom_omega.coordinates(&self.omega_pres, h);
        let f = self.pres.cover.field();
        let mut rows = self.boundaries.basis().to_rows();
        let nb = rows.len();
        for z in &self.cocycles {
            rows.push(self.hom_omega.coordinates(&self.omega_pres, z));
        }
        let m = Matrix::from_rows(f, c.len(), rows);
        let all = Echelon::new(&m).coords(&c).expect("cocycle lies in Hom(Ω, Y)");
        all[nb..].to_vec()
    }
}

pub fn ext_space(alg: &Algebra, x: &Representation, y: &Representation) -> Result<ExtSpace> {
    x.check(alg)?;
    y.check(alg)?;
    let f = alg.field();
    let pres = Presentation::new(alg, x);
    let omega_pres = Presentation::new(alg, &pres.omega);
    let hom_omega = hom_with(alg, &omega_pres, y);
    // restrictions of the free maps P0 → Y
    let nfree = pres.cover_hom_dim(y);
    let mut rows = Vec::new();
    for i in 0..nfree {
        let g = pres.cover_map(alg, y, &crate::matrix::unit(f, nfree, i));
        let r = pres.omega_incl.then(&g);
        rows.push(hom_omega.coordinates(&omega_pres, &r));
    }
    let boundaries = Echelon::new(&Matrix::from_rows(f, hom_omega.dim(), rows));
    let comp = boundaries.complement();
    let cocycles = (0..comp.rows()).map(|i| hom_omega.combine(comp.row(i)).unwrap()).collect();
    Ok(ExtSpace { pres, omega_pres, hom_omega, cocycles, boundaries })
}

/// `dim Ext^d(X, Y)` via syzygies; `budget` bounds the resolution length.
pub fn ext_dim(alg: &Algebra, d: usize, x: &Representation, y: &Representation, budget: usize) -> Result<usize> {
    x.check(alg)?;
    y.check(alg)?;
    if d == 0 {
        return hom_dim(alg, x, y);
    }
    if d > budget {
        return Err(Error::BudgetExceeded(budget));
    }
    let mut m = x.clone();
    for _ in 1..d {
        if m.is_zero() {
            return Ok(0);
        }
        m = Presentation::new(alg, &m).omega;
    }
    if m.is_zero() {
        return Ok(0);
    }
    let pres = Presentation::new(alg, &m);
    let hom_omega = hom_dim(alg, &pres.omega, y)?;
    Ok(hom_omega + hom_dim(alg, &m, y)? - pres.cover_hom_dim(y))
}
