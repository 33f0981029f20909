//! Univariate polynomials over a [`Field`]: minimal polynomials and roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{Field, Scalar};
use crate::matrix::{Echelon, Matrix};

/// Coefficients from the constant term upward, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    c: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, mut c: Vec<Scalar>) -> Poly {
        while c.last().is_some_and(Scalar::is_zero) {
            c.pop();
        }
        Poly { field, c }
    }

    pub fn zero(field: Field) -> Poly {
        Poly { field, c: vec![] }
    }

    pub fn constant(s: Scalar) -> Poly {
        let f = s.field();
        Poly::new(f, vec![s])
    }

    /// `t - a`
    pub fn linear(a: &Scalar) -> Poly {
        let f = a.field();
        Poly::new(f, vec![-a, f.one()])
    }

    pub fn x(field: Field) -> Poly {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial has degree `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Scalar {
        self.c.last().cloned().unwrap_or(self.field.zero())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv();
        Poly::new(self.field, self.c.iter().map(|a| a * &inv).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z))
            .collect();
        Poly::new(self.field, c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&self.field.int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.field, self.c.iter().map(|a| a * s).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.field);
        }
        let mut c = vec![self.field.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j].add_mul(a, b);
            }
        }
        Poly::new(self.field, c)
    }

    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.c.clone();
        let dn = d.c.len() - 1;
        if r.len() <= dn {
            return (Poly::zero(self.field), self.clone());
        }
        let inv = d.lead().inv();
        let mut q = vec![self.field.zero(); r.len() - dn];
        for k in (0..q.len()).rev() {
            let f = &r[k + dn] * &inv;
            if f.is_zero() {
                continue;
            }
            for (j, dj) in d.c.iter().enumerate() {
                let t = &f * dj;
                r[k + j] = &r[k + j] - &t;
            }
            q[k] = f;
        }
        (Poly::new(self.field, q), Poly::new(self.field, r))
    }

    pub fn lcm(&self, o: &Poly) -> Poly {
        let g = self.gcd(o);
        self.mul(o).divrem(&g).0.monic()
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * x) + a;
        }
        acc
    }

    /// Evaluates at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let n = m.rows();
        let mut acc = Matrix::zeros(self.field, n, n);
        for a in self.c.iter().rev() {
            acc = acc.mul(m).add(&Matrix::identity(self.field, n).scale(a));
        }
        acc
    }

    /// `self^e mod m`
    fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.divrem(m).1;
        let mut acc = Poly::constant(self.field.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).divrem(m).1;
            }
            base = base.mul(&base).divrem(m).1;
            e >>= 1;
        }
        acc
    }

    /// `Some(λ)` when the polynomial is `(t - λ)^k` up to a scalar, `k ≥ 1`.
    pub fn single_root_power(&self) -> Option<Scalar> {
        let n = self.degree()?;
        if n == 0 {
            return None;
        }
        let m = self.monic();
        // λ = -(coefficient of t^{n-1}) / n, valid when n is invertible
        let nf = self.field.int(n as i64);
        let lam = if nf.is_zero() {
            let r = m.roots();
            if r.len() != 1 {
                return None;
            }
            r[0].clone()
        } else {
            (-&m.c[n - 1]).div(&nf)
        };
        let lin = Poly::linear(&lam);
        let mut p = Poly::constant(self.field.one());
        for _ in 0..n {
            p = p.mul(&lin);
        }
        (p == m).then_some(lam)
    }

    /// Distinct roots lying in the base field, ascending in a canonical order.
    ///
    /// Over the rationals this uses the rational root test and may miss roots whose
    /// numerator or denominator candidates are too large to enumerate.
    pub fn roots(&self) -> Vec<Scalar> {
        if self.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        match self.field {
            Field::Rationals => rational_roots(self),
            Field::Prime(p) => prime_roots(self, p),
        }
    }
}

fn rational_roots(f: &Poly) -> Vec<Scalar> {
    let rats: Vec<BigRational> = f.c.iter().map(|s| s.to_rational().unwrap()).collect();
    let lcm = rats.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    let mut ints: Vec<BigInt> = rats.iter().map(|r| (r * BigRational::from(lcm.clone())).to_integer()).collect();
    let mut out = Vec::new();
    if ints[0].is_zero() {
        out.push(Field::Rationals.zero());
        while ints.first().is_some_and(|x| x.is_zero()) {
            ints.remove(0);
        }
    }
    if ints.len() <= 1 {
        return out;
    }
    let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return out;
    };
    let g = Poly::new(
        Field::Rationals,
        ints.iter().map(|i| Scalar::from_rational(BigRational::from(i.clone()))).collect(),
    );
    let mut cands: Vec<BigRational> = Vec::new();
    for p in &ps {
        for q in &qs {
            for s in [1, -1] {
                let r = BigRational::new(BigInt::from(*p) * s, BigInt::from(*q));
                if !cands.contains(&r) {
                    cands.push(r);
                }
            }
        }
    }
    cands.sort();
    for r in cands {
        let s = Scalar::from_rational(r);
        if g.eval(&s).is_zero() {
            out.push(s);
        }
    }
    out.sort_by(|a, b| a.to_rational().cmp(&b.to_rational()));
    out
}

/// Positive divisors of a nonzero integer below 10^12, else `None`.
fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

fn prime_roots(f: &Poly, p: u64) -> Vec<Scalar> {
    let field = Field::Prime(p);
    if p <= 1 << 16 {
        return (0..p as i64).map(|v| field.int(v)).filter(|v| f.eval(v).is_zero()).collect();
    }
    let m = f.monic();
    let x = Poly::x(field);
    let xp = x.pow_mod(p, &m);
    let g = m.gcd(&xp.sub(&x));
    let mut out = Vec::new();
    split_linear(&g, p, 1, &mut out);
    out.sort_by_key(|s| s.residue());
    out
}

/// Splits a product of distinct linear factors over F_p.
fn split_linear(g: &Poly, p: u64, mut shift: i64, out: &mut Vec<Scalar>) {
    let field = Field::Prime(p);
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            let m = g.monic();
            out.push(-&m.c[0]);
        }
        Some(_) => loop {
            let t = Poly::new(field, vec![field.int(shift), field.one()]);
            let h = t.pow_mod((p - 1) / 2, g).sub(&Poly::constant(field.one()));
            let d = g.gcd(&h);
            shift += 1;
            let dd = d.degree().unwrap_or(0);
            if dd > 0 && dd < g.degree().unwrap() {
                let (q, _) = g.divrem(&d);
                split_linear(&d, p, shift, out);
                split_linear(&q, p, shift, out);
                return;
            }
        },
    }
}

/// Minimal polynomial of a square matrix, monic.
///
/// Least common multiple of the local minimal polynomials of vectors whose cyclic
/// subspaces together span the whole space.
pub fn min_poly(m: &Matrix) -> Poly {
    let f = m.field();
    let n = m.rows();
    let mut covered: Vec<Vec<Scalar>> = Vec::new();
    let mut acc = Poly::constant(f.one());
    for i in 0..n {
        let e = crate::matrix::unit(f, n, i);
        if !covered.is_empty() && Echelon::new(&Matrix::from_rows(f, n, covered.clone())).contains(&e) {
            continue;
        }
        let mut kry = Krylov::new(f, n);
        let mut v = e;
        let coeffs = loop {
            match kry.insert(&v) {
                Some(c) => break c,
                None => {
                    covered.push(v.clone());
                    v = m.apply(&v);
                }
            }
        };
        let mut c: Vec<Scalar> = coeffs.iter().map(|x| -x).collect();
        c.push(f.one());
        acc = acc.lcm(&Poly::new(f, c));
    }
    acc
}

/// Incremental echelon form remembering how each reduced row arose from the inserted vectors.
struct Krylov {
    field: Field,
    rows: Vec<(Vec<Scalar>, Vec<Scalar>, usize)>,
    count: usize,
    n: usize,
}

impl Krylov {
    fn new(field: Field, n: usize) -> Krylov {
        Krylov { field, rows: Vec::new(), count: 0, n }
    }

    /// Inserts `v`; if it is dependent returns its coordinates along the earlier vectors.
    fn insert(&mut self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let f = self.field;
        let mut r = v.to_vec();
        let mut t = vec![f.zero(); self.count + 1];
        t[self.count] = f.one();
        for (row, tr, p) in &self.rows {
            let c = r[*p].clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..self.n {
                if !row[j].is_zero() {
                    r[j] = &r[j] - &(&c * &row[j]);
                }
            }
            for (j, x) in tr.iter().enumerate() {
                if !x.is_zero() {
                    t[j] = &t[j] - &(&c * x);
                }
            }
        }
        match r.iter().position(|x| !x.is_zero()) {
            None => Some(t[..self.count].iter().map(|x| -x).collect()),
            Some(p) => {
                let inv = r[p].inv();
                let r: Vec<Scalar> = r.iter().map(|x| x * &inv).collect();
                let t: Vec<Scalar> = t.iter().map(|x| x * &inv).collect();
                self.rows.push((r, t, p));
                self.count += 1;
                None
            }
        }
    }
}
