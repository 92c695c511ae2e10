use crate::error::{AlgebraError, Result};

use super::matrix::Matrix;
use super::scalar::{Field, Scalar};

/// Incremental Gauss-Jordan elimination.
///
/// Rows are kept fully reduced at all times, so reducing a new vector needs a
/// single pass over the basis in any order.
#[derive(Debug, Clone)]
pub struct EchelonBuilder<F: Scalar> {
    field: Field,
    cols: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Scalar> EchelonBuilder<F> {
    pub fn new(field: Field, cols: usize) -> Self {
        EchelonBuilder { field, cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_space(space: &RowSpace<F>) -> Self {
        EchelonBuilder {
            field: space.field,
            cols: space.ambient,
            rows: space.basis.to_rows(),
            pivots: space.pivots.clone(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Reduces `v` in place against the current basis.
    fn reduce(&self, v: &mut [F]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for j in p..self.cols {
                let r = &row[j];
                if !r.is_zero() {
                    v[j].sub_mul_assign(&f, r);
                }
            }
        }
    }

    /// True when `v` lies in the span of the rows inserted so far.
    pub fn contains(&self, v: &[F]) -> bool {
        if self.is_full() {
            return true;
        }
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|e| e.is_zero())
    }

    /// Inserts a row; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<F>) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        if self.is_full() {
            return false;
        }
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|e| !e.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for e in v[p..].iter_mut() {
                if !e.is_zero() {
                    *e = e.mul(&inv);
                }
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for j in p..self.cols {
                if !v[j].is_zero() {
                    row[j].sub_mul_assign(&f, &v[j]);
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn finish(self) -> RowSpace<F> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let pivots = order.iter().map(|&i| self.pivots[i]).collect();
        let mut rows: Vec<Option<Vec<F>>> = self.rows.into_iter().map(Some).collect();
        let sorted: Vec<Vec<F>> = order.iter().map(|&i| rows[i].take().unwrap()).collect();
        let basis = Matrix::from_rows(self.field, self.cols, sorted)
            .expect("builder rows have consistent shape");
        RowSpace { field: self.field, ambient: self.cols, basis, pivots }
    }
}

/// A subspace of `F^ambient` stored by its reduced row-echelon basis.
///
/// The representation is canonical: two row spaces are equal as subspaces
/// exactly when they compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RowSpace<F: Scalar> {
    field: Field,
    ambient: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Scalar> RowSpace<F> {
    pub fn zero(field: Field, ambient: usize) -> Self {
        RowSpace { field, ambient, basis: Matrix::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        RowSpace {
            field,
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Row space of a list of vectors.
    pub fn span(field: Field, ambient: usize, rows: impl IntoIterator<Item = Vec<F>>) -> Self {
        let mut b = EchelonBuilder::new(field, ambient);
        for r in rows {
            if b.is_full() {
                break;
            }
            b.insert(r);
        }
        b.finish()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.dim()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.ambient
    }

    /// Columns that are not pivots; they index a basis of the quotient.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Normal form of `v` modulo the space: zero on every pivot column.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut w = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (j, r) in self.basis.row(i).iter().enumerate().skip(p) {
                if !r.is_zero() {
                    w[j].sub_mul_assign(&f, r);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[F]) -> bool {
        if self.is_full() {
            return true;
        }
        self.reduce(v).iter().all(|e| e.is_zero())
    }

    fn check_compatible(&self, other: &RowSpace<F>) -> Result<()> {
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch { expected: self.field, found: other.field });
        }
        if self.ambient != other.ambient {
            return Err(AlgebraError::DimensionMismatch(format!(
                "subspaces of F^{} and F^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    /// Inclusion test: every basis row of `self` reduces to zero against `other`.
    pub fn leq(&self, other: &RowSpace<F>) -> Result<bool> {
        self.check_compatible(other)?;
        if other.is_full() || self.is_zero() {
            return Ok(true);
        }
        if self.dim() > other.dim() {
            return Ok(false);
        }
        Ok(self.basis.row_iter().all(|r| other.contains(r)))
    }

    pub fn sum(&self, other: &RowSpace<F>) -> Result<RowSpace<F>> {
        self.check_compatible(other)?;
        if self.is_full() || other.is_zero() {
            return Ok(self.clone());
        }
        if other.is_full() || self.is_zero() {
            return Ok(other.clone());
        }
        let mut b = EchelonBuilder::from_space(self);
        for r in other.basis.row_iter() {
            b.insert(r.to_vec());
        }
        Ok(b.finish())
    }

    /// The orthogonal complement under the standard pairing: all `w` with
    /// `<row, w> = 0` for every basis row. Its rows are linear conditions
    /// cutting out `self`.
    pub fn annihilator(&self) -> RowSpace<F> {
        let free = self.free_columns();
        let vectors = free.iter().map(|&f| {
            let mut v = vec![F::zero(self.field); self.ambient];
            v[f] = F::one(self.field);
            for (i, &p) in self.pivots.iter().enumerate() {
                let e = self.basis.get(i, f);
                if !e.is_zero() {
                    v[p] = e.neg();
                }
            }
            v
        });
        RowSpace::span(self.field, self.ambient, vectors)
    }

    pub fn intersect(&self, other: &RowSpace<F>) -> Result<RowSpace<F>> {
        self.check_compatible(other)?;
        if self.is_full() || other.is_zero() {
            return Ok(other.clone());
        }
        if other.is_full() || self.is_zero() {
            return Ok(self.clone());
        }
        let conditions = self.annihilator().sum(&other.annihilator())?;
        Ok(conditions.annihilator())
    }
}

/// Canonical reduced row-echelon form and rank.
pub fn rref<F: Scalar>(m: &Matrix<F>) -> Result<(RowSpace<F>, usize)> {
    m.check_field()?;
    let space = RowSpace::span(m.field(), m.cols(), m.row_iter().map(|r| r.to_vec()));
    let rank = space.dim();
    Ok((space, rank))
}

pub fn rank<F: Scalar>(m: &Matrix<F>) -> Result<usize> {
    Ok(rref(m)?.1)
}

/// All `v` with `m * v = 0`, as a row space of `F^cols`.
pub fn kernel<F: Scalar>(m: &Matrix<F>) -> Result<RowSpace<F>> {
    Ok(rref(m)?.0.annihilator())
}

/// Kernel of a matrix given directly by rows of conditions.
pub fn solve_conditions<F: Scalar>(field: Field, ambient: usize, rows: impl IntoIterator<Item = Vec<F>>) -> RowSpace<F> {
    RowSpace::span(field, ambient, rows).annihilator()
}

pub fn subspace_sum<F: Scalar>(a: &RowSpace<F>, b: &RowSpace<F>) -> Result<RowSpace<F>> {
    a.sum(b)
}

pub fn subspace_intersect<F: Scalar>(a: &RowSpace<F>, b: &RowSpace<F>) -> Result<RowSpace<F>> {
    a.intersect(b)
}

pub fn subspace_leq<F: Scalar>(a: &RowSpace<F>, b: &RowSpace<F>) -> Result<bool> {
    a.leq(b)
}

/// `{ v : map * v ∈ target }` for a linear map given as a matrix with
/// `rows = target ambient dim` and `cols = source dim`.
pub fn preimage<F: Scalar>(map: &Matrix<F>, target: &RowSpace<F>) -> Result<RowSpace<F>> {
    if map.rows() != target.ambient_dim() {
        return Err(AlgebraError::DimensionMismatch(format!(
            "map has {} rows but target lives in F^{}",
            map.rows(),
            target.ambient_dim()
        )));
    }
    map.check_field()?;
    if map.field() != target.field() {
        return Err(AlgebraError::FieldMismatch { expected: map.field(), found: target.field() });
    }
    if target.is_full() {
        return Ok(RowSpace::full(map.field(), map.cols()));
    }
    let ann = target.annihilator();
    let pulled = ann.basis().mul(map)?;
    kernel(&pulled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Fp, Rational};

    const Q: Field = Field::Rational;

    fn m(rows: &[Vec<i64>]) -> Matrix<Rational> {
        Matrix::from_i64(Q, rows).unwrap()
    }

    fn unit(n: usize, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::from_integer(0); n];
        v[i] = Rational::from_integer(1);
        v
    }

    #[test]
    fn rref_identity_and_zero() {
        let (s, r) = rref(&m(&[vec![1, 0], vec![0, 1]])).unwrap();
        assert_eq!(r, 2);
        assert_eq!(s.pivots(), &[0, 1]);
        let (z, r0) = rref(&Matrix::<Rational>::zeros(Q, 3, 4)).unwrap();
        assert_eq!(r0, 0);
        assert!(z.is_zero());
    }

    #[test]
    fn rref_proportional_rows() {
        let (s, r) = rref(&m(&[vec![1, 2], vec![2, 4]])).unwrap();
        assert_eq!(r, 1);
        assert_eq!(s.basis(), &m(&[vec![1, 2]]));
    }

    #[test]
    fn rref_mixed_field_rejected() {
        let f7 = Field::prime(7).unwrap();
        let rows = vec![vec![Fp::from_i64(f7, 1), Fp::from_i64(Field::Prime(11), 1)]];
        assert!(matches!(
            Matrix::from_rows(f7, 2, rows),
            Err(AlgebraError::FieldMismatch { .. })
        ));
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&m(&[vec![1, 0], vec![0, 1]])).unwrap().is_zero());
        assert_eq!(kernel(&m(&[vec![1, 1, 1]])).unwrap().dim(), 2);
    }

    #[test]
    fn sum_and_intersection() {
        let e0 = RowSpace::span(Q, 3, [unit(3, 0)]);
        let e1 = RowSpace::span(Q, 3, [unit(3, 1)]);
        assert_eq!(e0.sum(&e1).unwrap().dim(), 2);
        let a = RowSpace::span(Q, 3, [unit(3, 0), unit(3, 1)]);
        let b = RowSpace::span(Q, 3, [unit(3, 1), unit(3, 2)]);
        assert_eq!(a.intersect(&b).unwrap(), e1);
    }

    #[test]
    fn preimage_of_colon_type() {
        // map: e0 -> e0, e1 -> e0 + e1 ; target span{e0}
        let map = m(&[vec![1, 1], vec![0, 1]]);
        let target = RowSpace::span(Q, 2, [unit(2, 0)]);
        let pre = preimage(&map, &target).unwrap();
        assert_eq!(pre, RowSpace::span(Q, 2, [unit(2, 0)]));
        assert!(preimage(&m(&[vec![1, 0, 0]]), &target).is_err());
    }

    #[test]
    fn dimension_mismatch_reported() {
        let a = RowSpace::<Rational>::zero(Q, 2);
        let b = RowSpace::<Rational>::zero(Q, 3);
        assert!(a.sum(&b).is_err());
        assert!(a.leq(&b).is_err());
    }
}
