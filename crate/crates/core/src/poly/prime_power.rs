use std::collections::HashMap;

use crate::error::{AlgebraError, Result};
use crate::linalg::{EchelonBuilder, Field, RowSpace, Scalar};

use super::graded::GradedPiece;
use super::monomial::{monomial_basis, ExponentVector};

/// Degree pieces of `p^e` for a linear prime `p`, described by linear
/// conditions.
///
/// After a change of coordinates `y = T x` in which `p = <y_0, ..., y_{c-1}>`,
/// a form lies in `p^e` iff every monomial of `y`-degree below `e` in the
/// first `c` coordinates has coefficient zero. Those coefficients, read as
/// functionals on the `x`-basis, are the condition rows. Only such "low"
/// `y`-monomials are ever expanded, and the set is closed under dividing by
/// a variable, so each degree is computed from the previous one.
#[derive(Debug, Clone)]
pub struct LinearPrimePower<F: Scalar> {
    field: Field,
    nvars: usize,
    codim: usize,
    /// `x_i = sum_j x_in_y[i][j] * y_j`
    x_in_y: Vec<Vec<F>>,
    /// Low monomials have first-`c` degree below this bound.
    bound: usize,
    layers: Vec<Layer<F>>,
}

#[derive(Debug, Clone)]
struct Layer<F: Scalar> {
    /// Low `y`-monomials of this degree.
    monos: Vec<ExponentVector>,
    index: HashMap<ExponentVector, usize>,
    /// `rows[k][alpha]`: coefficient of `monos[k]` in `x^alpha`.
    rows: Vec<Vec<F>>,
}

impl<F: Scalar> LinearPrimePower<F> {
    /// `prime` is the span of the linear forms' coefficient vectors in `F^nvars`.
    pub fn new(prime: &RowSpace<F>) -> Result<Self> {
        let field = prime.field();
        let nvars = prime.ambient_dim();
        let codim = prime.dim();
        if codim == 0 {
            return Err(AlgebraError::InvalidParameter("zero ideal is not a linear prime".into()));
        }
        // T: prime basis followed by unit vectors on free columns
        let mut t_rows: Vec<Vec<F>> = prime.basis().to_rows();
        for f in prime.free_columns() {
            let mut v = vec![F::zero(field); nvars];
            v[f] = F::one(field);
            t_rows.push(v);
        }
        // invert T by reducing [T | I]
        let mut b = EchelonBuilder::new(field, 2 * nvars);
        for (i, row) in t_rows.iter().enumerate() {
            let mut aug = row.clone();
            aug.extend((0..nvars).map(|j| if i == j { F::one(field) } else { F::zero(field) }));
            b.insert(aug);
        }
        let reduced = b.finish();
        debug_assert_eq!(reduced.pivots(), (0..nvars).collect::<Vec<_>>().as_slice());
        let x_in_y = reduced.basis().row_iter().map(|r| r[nvars..].to_vec()).collect();
        Ok(LinearPrimePower { field, nvars, codim, x_in_y, bound: 0, layers: Vec::new() })
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    fn low_degree(&self, mu: &ExponentVector) -> usize {
        mu.exponents()[..self.codim].iter().map(|&e| e as usize).sum()
    }

    fn extend_to(&mut self, d: usize, bound: usize) {
        if bound > self.bound {
            self.bound = bound;
            self.layers.clear();
        }
        if self.layers.is_empty() {
            let zero = ExponentVector::zero(self.nvars);
            let index = HashMap::from([(zero.clone(), 0)]);
            self.layers.push(Layer { monos: vec![zero], index, rows: vec![vec![F::one(self.field)]] });
        }
        while self.layers.len() <= d {
            let k = self.layers.len();
            let prev_basis = monomial_basis(self.nvars, k - 1);
            let basis = monomial_basis(self.nvars, k);
            // each x^alpha = x_i * x^beta with i the first variable present
            let split: Vec<(usize, usize)> = basis
                .monomials()
                .iter()
                .map(|alpha| {
                    let i = alpha.exponents().iter().position(|&e| e > 0).expect("positive degree");
                    let mut beta = alpha.exponents().to_vec();
                    beta[i] -= 1;
                    (i, prev_basis.index_of(&ExponentVector::new(beta)).expect("in basis"))
                })
                .collect();
            let monos: Vec<ExponentVector> = basis
                .monomials()
                .iter()
                .filter(|mu| self.low_degree(mu) < self.bound)
                .cloned()
                .collect();
            let prev = &self.layers[k - 1];
            let mut rows = Vec::with_capacity(monos.len());
            for mu in &monos {
                // predecessors mu - e_j, all low as well
                let preds: Vec<(usize, usize)> = (0..self.nvars)
                    .filter(|&j| mu.exponents()[j] > 0)
                    .map(|j| {
                        let mut e = mu.exponents().to_vec();
                        e[j] -= 1;
                        (j, prev.index[&ExponentVector::new(e)])
                    })
                    .collect();
                let row: Vec<F> = split
                    .iter()
                    .map(|&(i, beta)| {
                        let mut acc = F::zero(self.field);
                        for &(j, p) in &preds {
                            let t = &self.x_in_y[i][j];
                            if !t.is_zero() {
                                let c = &prev.rows[p][beta];
                                if !c.is_zero() {
                                    acc = acc.add(&t.mul(c));
                                }
                            }
                        }
                        acc
                    })
                    .collect();
                rows.push(row);
            }
            let index = monos.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
            self.layers.push(Layer { monos, index, rows });
        }
    }

    /// Linear conditions on `R_d` whose common kernel is `(p^e)_d`.
    pub fn conditions(&mut self, exponent: usize, d: usize) -> Vec<Vec<F>> {
        if exponent == 0 {
            return Vec::new();
        }
        let dim = monomial_basis(self.nvars, d).len();
        if d < exponent {
            return (0..dim)
                .map(|i| {
                    let mut v = vec![F::zero(self.field); dim];
                    v[i] = F::one(self.field);
                    v
                })
                .collect();
        }
        self.extend_to(d, exponent.max(self.bound));
        let layer = &self.layers[d];
        layer
            .monos
            .iter()
            .zip(&layer.rows)
            .filter(|(mu, _)| self.low_degree(mu) < exponent)
            .map(|(_, row)| row.clone())
            .collect()
    }

    /// `(p^e)_d` as a graded piece.
    pub fn piece(&mut self, exponent: usize, d: usize) -> GradedPiece<F> {
        let dim = monomial_basis(self.nvars, d).len();
        let mut b = EchelonBuilder::new(self.field, dim);
        for row in self.conditions(exponent, d) {
            b.insert(row);
        }
        let space = b.finish().annihilator();
        GradedPiece::new(self.nvars, d, space).expect("dimension matches")
    }
}

/// `(p_1^{e_1} ∩ ... ∩ p_k^{e_k})_d`; the empty intersection is all of `R_d`.
pub fn intersect_prime_powers<F: Scalar>(
    field: Field,
    nvars: usize,
    components: &mut [(LinearPrimePower<F>, usize)],
    d: usize,
) -> GradedPiece<F> {
    let dim = monomial_basis(nvars, d).len();
    let mut b = EchelonBuilder::new(field, dim);
    for (prime, e) in components.iter_mut() {
        if b.is_full() {
            break;
        }
        for row in prime.conditions(*e, d) {
            if b.is_full() {
                break;
            }
            b.insert(row);
        }
    }
    GradedPiece::new(nvars, d, b.finish().annihilator()).expect("dimension matches")
}
