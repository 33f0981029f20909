//! Dense matrices over an exact [`Field`].
//!
//! Vectors are rows; a matrix acts on the right (`x ↦ x·M`).

use std::fmt;

use crate::field::{Field, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]({}x{})", self.rows, self.cols)
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        Matrix { field, rows: r, cols, data }
    }

    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            field,
            cols,
            rows.iter().map(|r| r.iter().map(|&x| field.int(x)).collect()).collect(),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Scalar> {
        self.row(i).to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row_vec(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j].add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows, "shape mismatch in vector product");
        let mut out = vec![self.field.zero(); self.cols];
        for (k, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                o.add_mul(a, self.get(k, j));
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Matrix { data, ..*self }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        Matrix { data, ..*self }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { data, ..*self }
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(|a| -a).collect();
        Matrix { data, ..*self }
    }

    pub fn pow(&self, mut e: usize) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Rows of `parts` stacked vertically.
    pub fn vstack(field: Field, cols: usize, parts: &[&Matrix]) -> Matrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols);
            data.extend(p.data.iter().cloned());
            rows += p.rows;
        }
        Matrix { field, rows, cols, data }
    }

    /// Columns of `parts` side by side.
    pub fn hstack(field: Field, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.rows, rows);
            out.put(0, off, p);
            off += p.cols;
        }
        out
    }

    pub fn block_diag(field: Field, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for p in parts {
            out.put(r, c, p);
            r += p.rows;
            c += p.cols;
        }
        out
    }

    /// Writes `m` into `self` with top-left corner at `(r, c)`.
    pub fn put(&mut self, r: usize, c: usize, m: &Matrix) {
        for i in 0..m.rows {
            for j in 0..m.cols {
                self.set(r + i, c + j, m.get(i, j).clone());
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let rows = idx.iter().map(|&i| self.row_vec(i)).collect();
        Matrix::from_rows(self.field, self.cols, rows)
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let rows = (0..self.rows)
            .map(|i| idx.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect();
        Matrix::from_rows(self.field, idx.len(), rows)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows = self.to_rows();
        let pivots = rref_rows(&mut rows, self.cols);
        rows.truncate(pivots.len());
        (Matrix::from_rows(self.field, self.cols, rows), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis (rows) of `{x : x·M = 0}`, echelonized.
    pub fn left_kernel(&self) -> Matrix {
        self.transpose().right_kernel_rows()
    }

    /// Basis (as rows) of `{y : M·yᵀ = 0}`.
    pub fn right_kernel_rows(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, free);
            }
            out.push(v);
        }
        let mut k = Matrix::from_rows(self.field, self.cols, out);
        // echelonize with the natural column order
        k = k.rref().0;
        k
    }

    /// Row space basis in reduced echelon form.
    pub fn row_basis(&self) -> Matrix {
        self.rref().0
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let aug = Matrix::hstack(self.field, n, &[self, &Matrix::identity(self.field, n)]);
        let (r, pivots) = aug.rref();
        if n > 0 && (pivots.len() < n || pivots[n - 1] != n - 1) {
            return None;
        }
        Some(r.submatrix(0..n, n..2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Solves `x·self = b` for a single row `b`.
    pub fn solve_left(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        Echelon::new(self).coords(b)
    }
}

/// In-place Gauss-Jordan elimination; returns pivot columns. Zero rows end up last.
pub(crate) fn rref_rows(rows: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let mut best: Option<usize> = None;
        for i in r..rows.len() {
            if !rows[i][c].is_zero() {
                match best {
                    Some(b) if rows[b][c].height() <= rows[i][c].height() => {}
                    _ => best = Some(i),
                }
                if rows[i][c].is_one() {
                    best = Some(i);
                    break;
                }
            }
        }
        let Some(b) = best else { continue };
        rows.swap(r, b);
        let inv = rows[r][c].inv();
        if !rows[r][c].is_one() {
            for x in rows[r][c..].iter_mut() {
                *x = &*x * &inv;
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (prow, rest) = tail.split_first_mut().unwrap();
        for other in head.iter_mut().chain(rest.iter_mut()) {
            let f = other[c].clone();
            if f.is_zero() {
                continue;
            }
            for j in c..prow.len() {
                if !prow[j].is_zero() {
                    let t = &f * &prow[j];
                    other[j] = &other[j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Echelon form of a list of row vectors with the transform back to the originals.
///
/// Answers membership and coordinate queries for the span of the rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    cols: usize,
    /// reduced rows (rank many)
    red: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    /// `red[i] = Σ_j trans[i][j]·orig[j]`
    trans: Vec<Vec<Scalar>>,
    n_orig: usize,
}

impl Echelon {
    pub fn new(m: &Matrix) -> Echelon {
        let f = m.field();
        let n = m.rows();
        let mut aug: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut row = m.row_vec(i);
                row.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
                row
            })
            .collect();
        let pivots = rref_rows(&mut aug, m.cols());
        let rank = pivots.len();
        let mut red = Vec::with_capacity(rank);
        let mut trans = Vec::with_capacity(rank);
        for row in aug.into_iter().take(rank) {
            let (a, b) = row.split_at(m.cols());
            red.push(a.to_vec());
            trans.push(b.to_vec());
        }
        Echelon { field: f, cols: m.cols(), red, pivots, trans, n_orig: n }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> Matrix {
        Matrix::from_rows(self.field, self.cols, self.red.clone())
    }

    /// Coefficients along the reduced rows and the remainder.
    pub fn reduce(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let mut rem = v.to_vec();
        let mut coef = Vec::with_capacity(self.rank());
        for (row, &p) in self.red.iter().zip(&self.pivots) {
            let c = rem[p].clone();
            if !c.is_zero() {
                for j in p..self.cols {
                    if !row[j].is_zero() {
                        let t = &c * &row[j];
                        rem[j] = &rem[j] - &t;
                    }
                }
            }
            coef.push(c);
        }
        (coef, rem)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).1.iter().all(Scalar::is_zero)
    }

    /// Coordinates along the reduced basis, if `v` lies in the span.
    pub fn red_coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let (c, rem) = self.reduce(v);
        rem.iter().all(Scalar::is_zero).then_some(c)
    }

    /// Coordinates along the original rows, if `v` lies in the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let c = self.red_coords(v)?;
        let mut out = vec![self.field.zero(); self.n_orig];
        for (ci, t) in c.iter().zip(&self.trans) {
            if ci.is_zero() {
                continue;
            }
            for (o, tj) in out.iter_mut().zip(t) {
                o.add_mul(ci, tj);
            }
        }
        Some(out)
    }

    /// Unit vectors completing the span to the whole space.
    pub fn complement(&self) -> Matrix {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let rows = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|c| unit(self.field, self.cols, c))
            .collect();
        Matrix::from_rows(self.field, self.cols, rows)
    }
}

pub fn unit(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}
