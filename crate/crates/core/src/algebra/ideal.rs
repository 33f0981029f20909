use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{Echelon, Matrix};

use super::{Algebra, Elem};

/// Two-sided ideal of an algebra, stored as an echelonized subspace of path-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    algebra: u64,
    basis: Matrix,
}

impl Ideal {
    pub fn zero(alg: &Algebra) -> Ideal {
        Ideal { algebra: alg.fingerprint(), basis: Matrix::zeros(alg.field(), 0, alg.dim()) }
    }

    /// Ideal with the given spanning vectors; fails unless the span is two-sided.
    pub fn new(alg: &Algebra, vectors: Vec<Vec<Scalar>>) -> Result<Ideal> {
        let m = Matrix::from_rows(alg.field(), alg.dim(), vectors);
        let ideal = Ideal { algebra: alg.fingerprint(), basis: m.row_basis() };
        let ech = Echelon::new(&ideal.basis);
        for i in 0..ideal.basis.rows() {
            let v = alg.sparse(ideal.basis.row(i));
            for g in generators(alg) {
                for p in [alg.mul(&v, &g), alg.mul(&g, &v)] {
                    if !ech.contains(&alg.dense(&p)) {
                        return Err(Error::NotAnIdeal(format!(
                            "{} times a generator leaves the span",
                            alg.elem_string(&v)
                        )));
                    }
                }
            }
        }
        Ok(ideal)
    }

    /// Two-sided ideal generated by the given elements.
    pub fn generated_by(alg: &Algebra, gens: &[Elem]) -> Ideal {
        let mut rows: Vec<Vec<Scalar>> = gens.iter().map(|g| alg.dense(g)).collect();
        let mut ech = Echelon::new(&Matrix::from_rows(alg.field(), alg.dim(), rows.clone()));
        let mut frontier: Vec<Elem> = gens.to_vec();
        let mult = generators(alg);
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for v in &frontier {
                for g in &mult {
                    for p in [alg.mul(v, g), alg.mul(g, v)] {
                        let d = alg.dense(&p);
                        if !ech.contains(&d) {
                            rows.push(d);
                            ech = Echelon::new(&Matrix::from_rows(alg.field(), alg.dim(), rows.clone()));
                            next.push(p);
                        }
                    }
                }
            }
            frontier = next;
        }
        Ideal { algebra: alg.fingerprint(), basis: ech.basis() }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.rows() == 0
    }

    pub fn algebra_fingerprint(&self) -> u64 {
        self.algebra
    }

    /// Echelonized basis vectors over the path basis.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn contains(&self, alg: &Algebra, x: &Elem) -> bool {
        Echelon::new(&self.basis).contains(&alg.dense(x))
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        let e = Echelon::new(&other.basis);
        (0..self.basis.rows()).all(|i| e.contains(self.basis.row(i)))
    }

    pub fn vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.to_rows()
    }
}

/// Vertex idempotents and arrows, which generate the algebra.
fn generators(alg: &Algebra) -> Vec<Elem> {
    let one = alg.field().one();
    let mut g: Vec<Elem> = (0..alg.n_vertices()).map(|v| vec![(alg.idempotent(v), one.clone())]).collect();
    for (i, a) in alg.quiver().arrows.iter().enumerate() {
        g.push(alg.word(a.src, &[i]));
    }
    g
}
