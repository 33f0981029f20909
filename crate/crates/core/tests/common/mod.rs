//! Independent oracles shared by integration tests: dense intertwining solver and
//! exhaustive submodule search. Nothing here calls the library's linear algebra.
#![allow(dead_code)]

use arcycles::{Algebra, Field, Matrix, Representation, Scalar};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, PartialEq)]
enum Num {
    Q(BigRational),
    P(u64, u64),
}

impl Num {
    fn of(s: &Scalar) -> Num {
        match (s.to_rational(), s.residue(), s.field()) {
            (Some(q), _, _) => Num::Q(q),
            (_, Some(v), Field::Prime(p)) => Num::P(v, p),
            _ => unreachable!(),
        }
    }
    fn is_zero(&self) -> bool {
        match self {
            Num::Q(q) => q.is_zero(),
            Num::P(v, _) => *v == 0,
        }
    }
    fn zero_like(&self) -> Num {
        match self {
            Num::Q(_) => Num::Q(BigRational::zero()),
            Num::P(_, p) => Num::P(0, *p),
        }
    }
    fn mul(&self, o: &Num) -> Num {
        match (self, o) {
            (Num::Q(a), Num::Q(b)) => Num::Q(a * b),
            (Num::P(a, p), Num::P(b, _)) => Num::P(a * b % p, *p),
            _ => unreachable!(),
        }
    }
    fn sub(&self, o: &Num) -> Num {
        match (self, o) {
            (Num::Q(a), Num::Q(b)) => Num::Q(a - b),
            (Num::P(a, p), Num::P(b, _)) => Num::P((a + p - b) % p, *p),
            _ => unreachable!(),
        }
    }
    fn add(&self, o: &Num) -> Num {
        match (self, o) {
            (Num::Q(a), Num::Q(b)) => Num::Q(a + b),
            (Num::P(a, p), Num::P(b, _)) => Num::P((a + b) % p, *p),
            _ => unreachable!(),
        }
    }
    fn inv(&self) -> Num {
        match self {
            Num::Q(a) => Num::Q(BigRational::one() / a),
            Num::P(a, p) => {
                // Fermat
                let (mut r, mut b, mut e) = (1u64, *a, p - 2);
                while e > 0 {
                    if e & 1 == 1 {
                        r = r * b % p;
                    }
                    b = b * b % p;
                    e >>= 1;
                }
                Num::P(r, *p)
            }
        }
    }
}

/// Rank by plain Gaussian elimination.
fn rank(mut rows: Vec<Vec<Num>>, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, piv);
        let inv = rows[r][c].inv();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].mul(&inv);
                for j in c..cols {
                    let t = f.mul(&rows[r][j]);
                    rows[i][j] = rows[i][j].sub(&t);
                }
            }
        }
        r += 1;
    }
    r
}

fn entries(m: &Matrix) -> Vec<Vec<Num>> {
    m.to_rows().iter().map(|r| r.iter().map(Num::of).collect()).collect()
}

/// `dim Hom(X, Y)` from the full intertwining system `X_a f_t = f_s Y_a`.
pub fn hom_dim_oracle(alg: &Algebra, x: &Representation, y: &Representation) -> usize {
    let zero = Num::of(&alg.field().zero());
    let n = alg.n_vertices();
    let mut off = vec![0; n + 1];
    for v in 0..n {
        off[v + 1] = off[v] + x.dims()[v] * y.dims()[v];
    }
    let nvar = off[n];
    let var = |v: usize, i: usize, j: usize| off[v] + i * y.dims()[v] + j;
    let mut eqs: Vec<Vec<Num>> = Vec::new();
    for (ai, a) in alg.quiver().arrows.iter().enumerate() {
        let xa = entries(x.map(ai));
        let ya = entries(y.map(ai));
        let (s, t) = (a.src, a.tgt);
        for i in 0..x.dims()[s] {
            for j in 0..y.dims()[t] {
                let mut eq = vec![zero.clone(); nvar];
                for k in 0..x.dims()[t] {
                    let e = &mut eq[var(t, k, j)];
                    *e = e.add(&xa[i][k]);
                }
                for k in 0..y.dims()[s] {
                    let e = &mut eq[var(s, i, k)];
                    *e = e.sub(&ya[k][j]);
                }
                eqs.push(eq);
            }
        }
    }
    nvar - rank(eqs, nvar)
}

// ---------- exhaustive decomposition over small prime fields ----------

type Vecp = Vec<u64>;

fn rank_p(rows: &[Vecp], p: u64) -> usize {
    let rows: Vec<Vec<Num>> = rows.iter().map(|r| r.iter().map(|&v| Num::P(v, p)).collect()).collect();
    let cols = rows.first().map_or(0, Vec::len);
    rank(rows, cols)
}

/// All subspaces of F_p^n as bases in reduced echelon form.
fn subspaces(n: usize, p: u64) -> Vec<Vec<Vecp>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let piv: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        // free positions: (row r, col c) with c > piv[r] and c not a pivot
        let free: Vec<(usize, usize)> = piv
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| ((pc + 1)..n).filter(|c| !piv.contains(c)).map(move |c| (r, c)))
            .collect();
        let total = (p as usize).pow(free.len() as u32);
        for code in 0..total {
            let mut rows: Vec<Vecp> = piv
                .iter()
                .map(|&pc| {
                    let mut v = vec![0; n];
                    v[pc] = 1;
                    v
                })
                .collect();
            let mut c = code;
            for &(r, col) in &free {
                rows[r][col] = (c % p as usize) as u64;
                c /= p as usize;
            }
            out.push(rows);
        }
    }
    out
}

pub struct SmallModule {
    pub p: u64,
    pub dims: Vec<usize>,
    /// (src, tgt, matrix rows)
    pub maps: Vec<(usize, usize, Vec<Vecp>)>,
}

impl SmallModule {
    pub fn of(alg: &Algebra, x: &Representation) -> SmallModule {
        let Field::Prime(p) = alg.field() else { panic!("prime field expected") };
        let maps = alg
            .quiver()
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.src, a.tgt, x.map(i).to_rows().iter().map(|r| r.iter().map(|s| s.residue().unwrap()).collect()).collect()))
            .collect();
        SmallModule { p, dims: x.dims().to_vec(), maps }
    }

    fn image(&self, v: &Vecp, m: &[Vecp], cols: usize) -> Vecp {
        let mut out = vec![0; cols];
        for (i, &c) in v.iter().enumerate() {
            for j in 0..cols {
                out[j] = (out[j] + c * m[i][j]) % self.p;
            }
        }
        out
    }

    fn contains(&self, space: &[Vecp], v: &Vecp) -> bool {
        let mut rows = space.to_vec();
        let r0 = rank_p(&rows, self.p);
        rows.push(v.clone());
        rank_p(&rows, self.p) == r0
    }

    /// Every subrepresentation as per-vertex bases.
    fn submodules(&self) -> Vec<Vec<Vec<Vecp>>> {
        let per: Vec<Vec<Vec<Vecp>>> = self.dims.iter().map(|&d| subspaces(d, self.p)).collect();
        let mut out = Vec::new();
        let mut idx = vec![0; self.dims.len()];
        loop {
            let cand: Vec<Vec<Vecp>> = idx.iter().enumerate().map(|(v, &k)| per[v][k].clone()).collect();
            let closed = self.maps.iter().all(|(s, t, m)| {
                cand[*s].iter().all(|u| {
                    let w = self.image(u, m, self.dims[*t]);
                    w.iter().all(|&x| x == 0) || self.contains(&cand[*t], &w)
                })
            });
            if closed {
                out.push(cand);
            }
            let mut v = 0;
            loop {
                if v == idx.len() {
                    return out;
                }
                idx[v] += 1;
                if idx[v] < per[v].len() {
                    break;
                }
                idx[v] = 0;
                v += 1;
            }
        }
    }

    fn inside(&self, a: &[Vec<Vecp>], b: &[Vec<Vecp>]) -> bool {
        a.iter().zip(b).all(|(x, y)| x.iter().all(|v| self.contains(y, v)))
    }

    /// Multiset of dimension vectors of indecomposable summands, found by brute force.
    pub fn summand_dims(&self) -> Vec<Vec<usize>> {
        let subs = self.submodules();
        let whole: Vec<Vec<Vecp>> = self
            .dims
            .iter()
            .map(|&d| (0..d).map(|i| (0..d).map(|j| u64::from(i == j)).collect()).collect())
            .collect();
        let mut out = Vec::new();
        self.split(&subs, whole, &mut out);
        out.sort();
        out
    }

    fn split(&self, subs: &[Vec<Vec<Vecp>>], u: Vec<Vec<Vecp>>, out: &mut Vec<Vec<usize>>) {
        let dims: Vec<usize> = u.iter().map(Vec::len).collect();
        let total: usize = dims.iter().sum();
        if total == 0 {
            return;
        }
        let inner: Vec<&Vec<Vec<Vecp>>> = subs.iter().filter(|s| self.inside(s, &u)).collect();
        for a in &inner {
            let da: Vec<usize> = a.iter().map(Vec::len).collect();
            let ta: usize = da.iter().sum();
            if ta == 0 || ta == total {
                continue;
            }
            for b in &inner {
                let db: Vec<usize> = b.iter().map(Vec::len).collect();
                if da.iter().zip(&db).zip(&dims).any(|((x, y), z)| x + y != *z) {
                    continue;
                }
                let direct = a.iter().zip(b.iter()).all(|(x, y)| {
                    let mut rows = x.clone();
                    rows.extend(y.iter().cloned());
                    rows.is_empty() || rank_p(&rows, self.p) == rows.len()
                });
                if direct {
                    self.split(subs, (*a).clone(), out);
                    self.split(subs, (*b).clone(), out);
                    return;
                }
            }
        }
        out.push(dims);
    }
}

// ---------- random modules ----------

pub fn random_scalar(f: Field, rng: &mut ChaCha8Rng) -> Scalar {
    match f {
        Field::Rationals => f.int(rng.gen_range(-2..=2)),
        Field::Prime(p) => f.int(rng.gen_range(0..p) as i64),
    }
}

pub fn random_matrix(f: Field, r: usize, c: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let rows = (0..r).map(|_| (0..c).map(|_| random_scalar(f, rng)).collect()).collect();
    Matrix::from_rows(f, c, rows)
}

/// Random module over a hereditary algebra or the dual numbers with total dimension ≤ `max`.
pub fn random_module(alg: &Algebra, max: usize, rng: &mut ChaCha8Rng) -> Representation {
    let f = alg.field();
    let n = alg.n_vertices();
    loop {
        let dims: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=max.min(3))).collect();
        let total: usize = dims.iter().sum();
        if total == 0 || total > max {
            continue;
        }
        let maps: Vec<Matrix> = if alg.relations().is_empty() {
            alg.quiver().arrows.iter().map(|a| random_matrix(f, dims[a.src], dims[a.tgt], rng)).collect()
        } else {
            // single loop with square zero: conjugate of a standard nilpotent
            let d = dims[0];
            let r = rng.gen_range(0..=d / 2);
            let mut j = Matrix::zeros(f, d, d);
            for i in 0..r {
                j.set(i, r + i, f.one());
            }
            let p = loop {
                let p = random_matrix(f, d, d, rng);
                if p.is_invertible() {
                    break p;
                }
            };
            vec![p.inverse().unwrap().mul(&j).mul(&p)]
        };
        return Representation::new(alg, dims, maps).expect("random module satisfies the relations");
    }
}
