//! The ideals `I_a(Σ)` generated by `a`-fold products of the forms of Σ.

use std::sync::{Arc, OnceLock};

use crate::check::{compare_degreewise, DegreeCheck, Hypothesis, Relation};
use crate::error::{AlgebraError, Result};
use crate::linalg::Scalar;
use crate::poly::{colon_piece, GeneratorSet, GradedPiece, PieceCache, Poly};
use crate::sigma::FormCollection;

/// `I_a(Σ)`, generated by `l_1^{t_1} ... l_s^{t_s}` over bounded compositions
/// `t` of `a` (`0 <= t_i <= m_i`). Products of `a`-subsets of the multiset
/// depend only on `t`, so this is the same ideal without repeated products.
#[derive(Debug)]
pub struct FoldIdeal<F: Scalar> {
    sigma: FormCollection<F>,
    a: usize,
    compositions: Vec<Vec<usize>>,
    cache: OnceLock<PieceCache<F>>,
}

impl<F: Scalar> Clone for FoldIdeal<F> {
    fn clone(&self) -> Self {
        FoldIdeal::new(self.sigma.clone(), self.a)
    }
}

impl<F: Scalar> FoldIdeal<F> {
    pub fn new(sigma: FormCollection<F>, a: usize) -> Self {
        let compositions = bounded_compositions(&sigma.multiplicities(), a);
        FoldIdeal { sigma, a, compositions, cache: OnceLock::new() }
    }

    pub fn sigma(&self) -> &FormCollection<F> {
        &self.sigma
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn nvars(&self) -> usize {
        self.sigma.nvars()
    }

    /// Exponent vectors `t` of the generators, in descending lexicographic order.
    pub fn compositions(&self) -> &[Vec<usize>] {
        &self.compositions
    }

    pub fn is_unit(&self) -> bool {
        self.a == 0
    }

    pub fn is_zero(&self) -> bool {
        self.compositions.is_empty()
    }

    fn cache(&self) -> &PieceCache<F> {
        self.cache.get_or_init(|| {
            let field = self.sigma.field();
            let forms = self.sigma.linear_polys();
            let polys = self
                .compositions
                .iter()
                .map(|t| {
                    t.iter().zip(&forms).fold(Poly::one(field, self.nvars()), |acc, (&k, l)| {
                        if k == 0 {
                            acc
                        } else {
                            acc.mul(&l.pow(k as u32))
                        }
                    })
                })
                .collect();
            PieceCache::new(GeneratorSet::new(field, self.nvars(), polys).expect("products of nonzero forms"))
        })
    }

    /// Expanded generator polynomials, built once on first use.
    pub fn generators(&self) -> &GeneratorSet<F> {
        self.cache().gens()
    }

    /// Degree-`d` slice of `I_a(Σ)`.
    pub fn piece(&self, d: usize) -> Arc<GradedPiece<F>> {
        self.cache().get(d)
    }
}

/// All `t` with `0 <= t_i <= bounds[i]` and `sum t = a`, descending lex.
pub fn bounded_compositions(bounds: &[usize], a: usize) -> Vec<Vec<usize>> {
    fn go(bounds: &[usize], left: usize, suffix_cap: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == bounds.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let rest = suffix_cap[i + 1];
        let hi = bounds[i].min(left);
        let lo = left.saturating_sub(rest);
        if lo > hi {
            return;
        }
        for t in (lo..=hi).rev() {
            cur.push(t);
            go(bounds, left - t, suffix_cap, cur, out);
            cur.pop();
        }
    }
    let mut suffix_cap = vec![0; bounds.len() + 1];
    for i in (0..bounds.len()).rev() {
        suffix_cap[i] = suffix_cap[i + 1] + bounds[i];
    }
    let mut out = Vec::new();
    go(bounds, a, &suffix_cap, &mut Vec::new(), &mut out);
    out
}

/// `I_a(Σ) = l · I_{a-1}(Σ') + I_a(Σ')`, where Σ' drops one copy of the form
/// at `split`.
pub fn recursion_identity_check<F: Scalar>(
    sigma: &FormCollection<F>,
    a: usize,
    split: usize,
    bound: usize,
) -> Result<DegreeCheck> {
    if split >= sigma.support_size() {
        return Err(AlgebraError::InvalidParameter(format!("no form at index {split}")));
    }
    let lhs = FoldIdeal::new(sigma.clone(), a);
    let mut mults = sigma.multiplicities();
    mults[split] -= 1;
    let rest = sigma.with_multiplicities_dropping_zero(&mults);
    let l = sigma.form(split).to_poly(sigma.field());
    let lower = FoldIdeal::new(rest.clone(), a.saturating_sub(1));
    let same = FoldIdeal::new(rest, a);
    let mut rhs_gens = if a == 0 {
        GeneratorSet::unit(sigma.field(), sigma.nvars())
    } else {
        lower.generators().times(&l)?
    };
    rhs_gens = rhs_gens.union(same.generators());
    let rhs = PieceCache::new(rhs_gens);
    compare_degreewise(
        bound,
        Relation::Equal,
        Hypothesis::NotRequired,
        |d| Ok((*lhs.piece(d)).clone()),
        |d| Ok((*rhs.get(d)).clone()),
    )
}

/// `(I_a(l_1 ... l_s))^m = I_{ma}(l_1^m ... l_s^m)` for multiplicity-one Σ.
pub fn power_identity_check<F: Scalar>(
    sigma: &FormCollection<F>,
    a: usize,
    m: usize,
    bound: usize,
) -> Result<DegreeCheck> {
    if !sigma.has_unit_multiplicities() {
        return Err(AlgebraError::InvalidParameter("power identity needs multiplicity-one forms".into()));
    }
    if m == 0 {
        return Err(AlgebraError::InvalidParameter("power must be at least 1".into()));
    }
    let base = FoldIdeal::new(sigma.clone(), a);
    let lhs = PieceCache::new(base.generators().power(m)?);
    let scaled = sigma.with_multiplicities(&vec![m; sigma.support_size()])?;
    let rhs = FoldIdeal::new(scaled, m * a);
    compare_degreewise(
        bound,
        Relation::Equal,
        Hypothesis::NotRequired,
        |d| Ok((*lhs.get(d)).clone()),
        |d| Ok((*rhs.piece(d)).clone()),
    )
}

/// `I_a(Σ) : l_i = I_{a-1}(Σ with m_i lowered by one)`, for generic support.
pub fn colon_identity_check_at<F: Scalar>(
    sigma: &FormCollection<F>,
    a: usize,
    index: usize,
    bound: usize,
) -> Result<DegreeCheck> {
    if !sigma.is_generic_support() {
        return Err(AlgebraError::NonGenericSupport);
    }
    if index >= sigma.support_size() {
        return Err(AlgebraError::InvalidParameter(format!("no form at index {index}")));
    }
    if a == 0 || a > sigma.total() {
        return Err(AlgebraError::InvalidParameter(format!("need 1 <= a <= {}", sigma.total())));
    }
    let ideal = FoldIdeal::new(sigma.clone(), a);
    let l = sigma.form(index).to_poly(sigma.field());
    let mut mults = sigma.multiplicities();
    mults[index] -= 1;
    let j = FoldIdeal::new(sigma.with_multiplicities_dropping_zero(&mults), a - 1);
    compare_degreewise(
        bound,
        Relation::Equal,
        Hypothesis::Satisfied,
        |d| colon_piece(ideal.generators(), &l, d),
        |d| Ok((*j.piece(d)).clone()),
    )
}

/// Colon identity for the first form of Σ.
pub fn colon_identity_check<F: Scalar>(sigma: &FormCollection<F>, a: usize, bound: usize) -> Result<DegreeCheck> {
    colon_identity_check_at(sigma, a, 0, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Field, Rational};
    use crate::poly::binomial;

    const Q: Field = Field::Rational;

    fn coll(forms: &[(&[i64], usize)]) -> FormCollection<Rational> {
        FormCollection::from_i64(Q, forms).unwrap()
    }

    fn four_lines() -> FormCollection<Rational> {
        coll(&[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1), (&[1, 1, 1], 1)])
    }

    #[test]
    fn compositions_in_order() {
        let t = bounded_compositions(&[2, 1, 1], 2);
        assert_eq!(t, vec![vec![2, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]);
        assert_eq!(bounded_compositions(&[2, 1, 1], 4), vec![vec![2, 1, 1]]);
        assert_eq!(bounded_compositions(&[2, 1, 1], 0), vec![vec![0, 0, 0]]);
        assert!(bounded_compositions(&[2, 1, 1], 5).is_empty());
    }

    #[test]
    fn conventions() {
        let c = four_lines();
        let unit = FoldIdeal::new(c.clone(), 0);
        assert!(unit.piece(0).space().is_full());
        let zero = FoldIdeal::new(c, 5);
        assert!(zero.is_zero());
        assert_eq!(zero.piece(4).dim(), 0);
    }

    #[test]
    fn pieces() {
        let c = four_lines();
        let i3 = FoldIdeal::new(c.clone(), 3);
        assert_eq!(i3.piece(2).dim(), 0);
        assert_eq!(i3.piece(3).dim(), 4);
        // a <= d_1 gives M^a
        let i2 = FoldIdeal::new(c, 2);
        for d in 2..6 {
            assert_eq!(i2.piece(d).dim(), binomial(d + 2, 2));
        }
    }

    #[test]
    fn principal_at_top() {
        let c = coll(&[(&[1, 0, 0], 2), (&[0, 1, 0], 1), (&[0, 0, 1], 1)]);
        let top = FoldIdeal::new(c, 4);
        assert_eq!(top.compositions().len(), 1);
        assert_eq!(top.piece(5).dim(), 3);
    }

    #[test]
    fn recursion_examples() {
        assert!(recursion_identity_check(&four_lines(), 2, 3, 6).unwrap().holds);
        let c = coll(&[(&[1, 0], 2), (&[0, 1], 2)]);
        assert!(recursion_identity_check(&c, 3, 1, 7).unwrap().holds);
        assert!(recursion_identity_check(&c, 4, 0, 6).unwrap().holds);
    }

    #[test]
    fn power_examples() {
        let xyz = coll(&[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1)]);
        assert!(power_identity_check(&xyz, 2, 1, 5).unwrap().holds);
        assert!(power_identity_check(&xyz, 2, 2, 8).unwrap().holds);
        assert!(power_identity_check(&four_lines(), 3, 2, 10).unwrap().holds);
    }

    #[test]
    fn colon_examples() {
        let c = coll(&[(&[1, 0, 0], 2), (&[0, 1, 0], 1), (&[0, 0, 1], 1), (&[1, 1, 1], 1)]);
        assert!(colon_identity_check(&c, 3, 7).unwrap().holds);
        assert!(colon_identity_check(&four_lines(), 4, 8).unwrap().holds);
        assert!(colon_identity_check(&four_lines(), 1, 4).unwrap().holds);
        let bad = coll(&[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[1, 1, 0], 1), (&[0, 0, 1], 1)]);
        assert!(matches!(colon_identity_check(&bad, 2, 4), Err(AlgebraError::NonGenericSupport)));
    }

    #[test]
    fn colon_by_x_in_degree_two() {
        // (I_3 : x)_2 = (I_2(y, z, x+y+z))_2
        let c = four_lines();
        let i3 = FoldIdeal::new(c.clone(), 3);
        let x = c.form(0).to_poly(Q);
        let lhs = colon_piece(i3.generators(), &x, 2).unwrap();
        let rest = coll(&[(&[0, 1, 0], 1), (&[0, 0, 1], 1), (&[1, 1, 1], 1)]);
        assert_eq!(lhs, *FoldIdeal::new(rest, 2).piece(2));
    }
}
