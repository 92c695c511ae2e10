//! Collections of linear forms with multiplicities.
//!
//! A [`FormCollection`] is the multiset `(l_1^{m_1}, ..., l_s^{m_s})` of
//! pairwise non-proportional linear forms. This module handles its
//! combinatorics: rank, genericity of the support, the generalized Hamming
//! weights of the associated code and the heights they predict.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::linalg::{EchelonBuilder, Field, Matrix, RowSpace, Scalar};
use crate::poly::Poly;

/// A nonzero linear form scaled so its first nonzero coefficient is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm<F: Scalar> {
    coeffs: Vec<F>,
}

impl<F: Scalar> LinearForm<F> {
    pub fn canonicalize(field: Field, raw: Vec<F>) -> Result<Self> {
        for c in &raw {
            if c.field() != field {
                return Err(AlgebraError::FieldMismatch { expected: field, found: c.field() });
            }
        }
        let lead = raw.iter().find(|c| !c.is_zero()).ok_or(AlgebraError::ZeroForm)?;
        let inv = lead.inv().ok_or(AlgebraError::DivisionByZero)?;
        let coeffs = raw.iter().map(|c| c.mul(&inv)).collect();
        Ok(LinearForm { coeffs })
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn to_poly(&self, field: Field) -> Poly<F> {
        Poly::linear(field, &self.coeffs)
    }
}

impl<F: Scalar> fmt::Display for LinearForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.coeffs.first().map_or(Field::Rational, |c| c.field());
        write!(f, "{}", self.to_poly(field))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry<F: Scalar> {
    pub form: LinearForm<F>,
    pub multiplicity: usize,
    pub label: Option<String>,
}

/// The multiset `Σ`. Entries keep input order; proportional inputs are merged
/// into the first occurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormCollection<F: Scalar> {
    field: Field,
    nvars: usize,
    entries: Vec<Entry<F>>,
}

/// Raw input for one entry of a collection.
#[derive(Debug, Clone)]
pub struct RawForm<F: Scalar> {
    pub coeffs: Vec<F>,
    pub multiplicity: usize,
    pub label: Option<String>,
}

impl<F: Scalar> RawForm<F> {
    pub fn new(coeffs: Vec<F>, multiplicity: usize) -> Self {
        RawForm { coeffs, multiplicity, label: None }
    }
}

/// Canonicalizes every form and merges proportional ones by summing
/// multiplicities.
pub fn build_collection<F: Scalar>(
    field: Field,
    nvars: usize,
    raw: Vec<RawForm<F>>,
) -> Result<FormCollection<F>> {
    let mut entries: Vec<Entry<F>> = Vec::new();
    for r in raw {
        if r.coeffs.len() != nvars {
            return Err(AlgebraError::DimensionMismatch(format!(
                "form with {} coefficients in a ring with {nvars} variables",
                r.coeffs.len()
            )));
        }
        if r.multiplicity == 0 {
            return Err(AlgebraError::ZeroMultiplicity);
        }
        let form = LinearForm::canonicalize(field, r.coeffs)?;
        match entries.iter_mut().find(|e| e.form == form) {
            Some(e) => e.multiplicity += r.multiplicity,
            None => entries.push(Entry { form, multiplicity: r.multiplicity, label: r.label }),
        }
    }
    Ok(FormCollection { field, nvars, entries })
}

impl<F: Scalar> FormCollection<F> {
    /// Integer-coefficient shorthand, mainly for tests and examples.
    pub fn from_i64(field: Field, forms: &[(&[i64], usize)]) -> Result<Self> {
        let nvars = forms.first().map_or(0, |(c, _)| c.len());
        let raw = forms
            .iter()
            .map(|(c, m)| RawForm::new(c.iter().map(|&v| F::from_i64(field, v)).collect(), *m))
            .collect();
        build_collection(field, nvars, raw)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn entries(&self) -> &[Entry<F>] {
        &self.entries
    }

    pub fn form(&self, i: usize) -> &LinearForm<F> {
        &self.entries[i].form
    }

    pub fn multiplicity(&self, i: usize) -> usize {
        self.entries[i].multiplicity
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.multiplicity).collect()
    }

    /// `s`, the size of the support.
    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    /// `N = m_1 + ... + m_s`.
    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn has_unit_multiplicities(&self) -> bool {
        self.entries.iter().all(|e| e.multiplicity == 1)
    }

    pub fn linear_polys(&self) -> Vec<Poly<F>> {
        self.entries.iter().map(|e| e.form.to_poly(self.field)).collect()
    }

    /// Same forms with new multiplicities.
    pub fn with_multiplicities(&self, mults: &[usize]) -> Result<Self> {
        if mults.len() != self.entries.len() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} multiplicities for {} forms",
                mults.len(),
                self.entries.len()
            )));
        }
        if mults.contains(&0) {
            return Err(AlgebraError::ZeroMultiplicity);
        }
        let mut out = self.clone();
        for (e, &m) in out.entries.iter_mut().zip(mults) {
            e.multiplicity = m;
        }
        Ok(out)
    }

    /// Drops the entries whose new multiplicity is zero.
    pub fn with_multiplicities_dropping_zero(&self, mults: &[usize]) -> Self {
        let entries = self
            .entries
            .iter()
            .zip(mults)
            .filter(|(_, &m)| m > 0)
            .map(|(e, &m)| Entry { multiplicity: m, ..e.clone() })
            .collect();
        FormCollection { field: self.field, nvars: self.nvars, entries }
    }

    /// Span of the chosen support forms in `K^{n+1}`.
    pub fn span_of(&self, indices: &[usize]) -> RowSpace<F> {
        RowSpace::span(
            self.field,
            self.nvars,
            indices.iter().map(|&i| self.entries[i].form.coeffs.clone()),
        )
    }

    pub fn subset_rank(&self, indices: &[usize]) -> usize {
        let mut b = EchelonBuilder::new(self.field, self.nvars);
        for &i in indices {
            b.insert(self.entries[i].form.coeffs.clone());
        }
        b.rank()
    }

    /// Indices of all support forms lying in the span of `indices`.
    pub fn closure(&self, indices: &[usize]) -> Vec<usize> {
        let span = self.span_of(indices);
        (0..self.entries.len()).filter(|&j| span.contains(&self.entries[j].form.coeffs)).collect()
    }

    /// Multiplicity-weighted size of a set of support indices.
    pub fn weight(&self, indices: &[usize]) -> usize {
        indices.iter().map(|&i| self.entries[i].multiplicity).sum()
    }

    /// Coefficient matrix of the support, one row per form.
    pub fn coefficient_matrix(&self) -> Matrix<F> {
        let rows = self.entries.iter().map(|e| e.form.coeffs.clone()).collect();
        Matrix::from_rows(self.field, self.nvars, rows).expect("forms share the ambient ring")
    }

    /// `G_Σ`: one column per form, repeated by multiplicity.
    pub fn generator_matrix(&self) -> Matrix<F> {
        let mut cols = Vec::with_capacity(self.total());
        for e in &self.entries {
            for _ in 0..e.multiplicity {
                cols.push(e.form.coeffs.clone());
            }
        }
        Matrix::from_rows(self.field, self.nvars, cols).expect("forms share the ambient ring").transpose()
    }

    /// Rank of Σ: the height of the ideal generated by its forms.
    pub fn rank(&self) -> usize {
        self.subset_rank(&(0..self.entries.len()).collect::<Vec<_>>())
    }

    /// Every `min(rk, s)`-subset of the support is linearly independent.
    pub fn is_generic_support(&self) -> bool {
        let s = self.entries.len();
        let k = self.rank().min(s);
        subsets(s, k).all(|sub| self.subset_rank(&sub) == k)
    }

    /// Re-expresses Σ in `rk(Σ)` variables by keeping the pivot coordinates
    /// of the row-reduced coefficient matrix.
    pub fn reembed(&self) -> Result<(FormCollection<F>, Projection<F>)> {
        let span = self.span_of(&(0..self.entries.len()).collect::<Vec<_>>());
        let pivots = span.pivots().to_vec();
        let k = pivots.len();
        let raw = self
            .entries
            .iter()
            .map(|e| RawForm {
                coeffs: pivots.iter().map(|&p| e.form.coeffs[p].clone()).collect(),
                multiplicity: e.multiplicity,
                label: e.label.clone(),
            })
            .collect();
        let projected = build_collection(self.field, k, raw)?;
        if projected.entries.len() != self.entries.len() {
            // projection must be injective on the support
            return Err(AlgebraError::InvalidParameter("re-embedding merged distinct forms".into()));
        }
        let projection = Projection {
            source_vars: self.nvars,
            target_vars: k,
            pivots,
            basis: span.basis().to_rows(),
        };
        Ok((projected, projection))
    }

    /// Generalized Hamming weights `d_1 < ... < d_k` of the code of Σ.
    ///
    /// `d_r = N - max{ weight(S) : rank(S) <= k - r }`. The maximum is attained
    /// on closed sets, so only closures of independent sets are visited.
    pub fn generalized_hamming_weights(&self) -> Result<Vec<usize>> {
        let k = self.rank();
        if k != self.nvars {
            return Err(AlgebraError::RankDeficient { rank: k, nvars: self.nvars });
        }
        let best = self.max_weight_by_rank();
        let n_total = self.total();
        Ok((1..=k).map(|r| n_total - best[k - r]).collect())
    }

    /// `best[t]`: largest weight of a set of support forms spanning rank `<= t`.
    fn max_weight_by_rank(&self) -> Vec<usize> {
        let s = self.entries.len();
        let k = self.rank();
        let mut best = vec![0usize; k + 1];
        for t in 1..=k {
            let mut b = best[t - 1];
            for sub in subsets(s, t) {
                if self.subset_rank(&sub) == t {
                    b = b.max(self.weight(&self.closure(&sub)));
                }
            }
            best[t] = b;
        }
        best
    }

    /// Height of `I_a(Σ)` for `a = 1..=N`, read off the Hamming weights.
    pub fn height_profile(&self) -> Result<BTreeMap<usize, usize>> {
        let weights = self.generalized_hamming_weights()?;
        Ok(heights_from_weights(&weights))
    }

    /// Weights and heights, re-embedding first when Σ is rank deficient.
    pub fn code_profile(&self) -> Result<CodeProfile<F>> {
        let (target, projection) = if self.rank() == self.nvars {
            (self.clone(), None)
        } else {
            let (c, p) = self.reembed()?;
            (c, Some(p))
        };
        let weights = target.generalized_hamming_weights()?;
        let heights = heights_from_weights(&weights);
        Ok(CodeProfile { generator_matrix: target.generator_matrix(), weights, heights, projection })
    }
}

/// `ht(I_a) = k + 1 - r` for `d_{r-1} < a <= d_r`, with `d_0 = 0`.
pub fn heights_from_weights(weights: &[usize]) -> BTreeMap<usize, usize> {
    let k = weights.len();
    let mut out = BTreeMap::new();
    let mut prev = 0;
    for (r0, &d) in weights.iter().enumerate() {
        for a in prev + 1..=d {
            out.insert(a, k - r0);
        }
        prev = d;
    }
    out
}

/// Records how a rank-deficient Σ was moved into fewer variables.
///
/// The new variable `y_t` stands for the linear form `basis[t]` in the
/// original variables; a form `l` becomes `sum_t l[pivots[t]] y_t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection<F: Scalar> {
    pub source_vars: usize,
    pub target_vars: usize,
    pub pivots: Vec<usize>,
    pub basis: Vec<Vec<F>>,
}

#[derive(Debug, Clone)]
pub struct CodeProfile<F: Scalar> {
    pub generator_matrix: Matrix<F>,
    pub weights: Vec<usize>,
    pub heights: BTreeMap<usize, usize>,
    pub projection: Option<Projection<F>>,
}

/// Serializable summary of a [`CodeProfile`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSummary {
    pub weights: Vec<usize>,
    pub heights: BTreeMap<usize, usize>,
}

impl<F: Scalar> CodeProfile<F> {
    pub fn summary(&self) -> CodeSummary {
        CodeSummary { weights: self.weights.clone(), heights: self.heights.clone() }
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let next = {
            let mut c = out.clone();
            let mut i = k;
            loop {
                if i == 0 {
                    break None;
                }
                i -= 1;
                if c[i] < n - k + i {
                    c[i] += 1;
                    for j in i + 1..k {
                        c[j] = c[j - 1] + 1;
                    }
                    break Some(c);
                }
            }
        };
        cur = next;
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Fp, Rational};

    const Q: Field = Field::Rational;

    fn coll(forms: &[(&[i64], usize)]) -> FormCollection<Rational> {
        FormCollection::from_i64(Q, forms).unwrap()
    }

    fn four_lines() -> FormCollection<Rational> {
        coll(&[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1), (&[1, 1, 1], 1)])
    }

    #[test]
    fn canonical_scaling() {
        let raw: Vec<Rational> = vec![2.into(), 4.into()];
        let f = LinearForm::canonicalize(Q, raw).unwrap();
        assert_eq!(f.coeffs(), &[Rational::from_integer(1), Rational::from_integer(2)]);
        let zero: Vec<Rational> = vec![0.into(), 0.into()];
        assert!(matches!(LinearForm::canonicalize(Q, zero), Err(AlgebraError::ZeroForm)));
    }

    #[test]
    fn proportional_forms_merge() {
        let c = coll(&[(&[1, 0], 1), (&[3, 0], 2)]);
        assert_eq!(c.support_size(), 1);
        assert_eq!(c.multiplicity(0), 3);
        let c = coll(&[(&[1, 0, 0], 2), (&[0, 1, 0], 1), (&[1, 1, 0], 1)]);
        assert_eq!((c.support_size(), c.total()), (3, 4));
        let r: Result<FormCollection<Rational>> = FormCollection::from_i64(Q, &[(&[1, 0], 0)]);
        assert!(matches!(r, Err(AlgebraError::ZeroMultiplicity)));
    }

    #[test]
    fn ranks() {
        assert_eq!(coll(&[(&[1, 0, 0], 5)]).rank(), 1);
        assert_eq!(coll(&[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1)]).rank(), 3);
        assert_eq!(coll(&[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[1, 1, 0], 1)]).rank(), 2);
    }

    #[test]
    fn genericity() {
        assert!(four_lines().is_generic_support());
        let bad = coll(&[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[1, 1, 0], 1), (&[0, 0, 1], 1)]);
        assert!(!bad.is_generic_support());
        assert!(coll(&[(&[1, 0, 0], 3), (&[0, 1, 0], 1)]).is_generic_support());
    }

    #[test]
    fn four_generic_lines_weights_and_heights() {
        let c = four_lines();
        assert_eq!(c.generalized_hamming_weights().unwrap(), vec![2, 3, 4]);
        let h = c.height_profile().unwrap();
        assert_eq!(h.values().copied().collect::<Vec<_>>(), vec![3, 3, 2, 1]);
    }

    #[test]
    fn principal_collection_heights() {
        let c = coll(&[(&[1], 4)]);
        assert_eq!(c.generalized_hamming_weights().unwrap(), vec![4]);
        assert!(c.height_profile().unwrap().values().all(|&h| h == 1));
    }

    #[test]
    fn generic_unit_first_weight() {
        // d_1 = N - n for generic multiplicity-one collections
        let c = coll(&[
            (&[1, 0, 0], 1),
            (&[0, 1, 0], 1),
            (&[0, 0, 1], 1),
            (&[1, 1, 1], 1),
            (&[1, 2, 3], 1),
        ]);
        assert!(c.is_generic_support());
        let w = c.generalized_hamming_weights().unwrap();
        assert_eq!(w[0], 5 - 2);
        assert_eq!(*w.last().unwrap(), 5);
    }

    #[test]
    fn rank_deficient_needs_reembedding() {
        let c = coll(&[(&[1, 0, 0], 1), (&[0, 1, 0], 2), (&[1, 1, 0], 1)]);
        assert!(matches!(
            c.generalized_hamming_weights(),
            Err(AlgebraError::RankDeficient { rank: 2, nvars: 3 })
        ));
        let (p, proj) = c.reembed().unwrap();
        assert_eq!(p.nvars(), 2);
        assert_eq!(proj.pivots, vec![0, 1]);
        assert_eq!(p.multiplicities(), vec![1, 2, 1]);
        let prof = c.code_profile().unwrap();
        assert!(prof.projection.is_some());
        assert_eq!(prof.weights, vec![2, 4]);
    }

    #[test]
    fn generator_matrix_repeats_columns() {
        let c = coll(&[(&[1, 0], 2), (&[0, 1], 1)]);
        let g = c.generator_matrix();
        assert_eq!((g.rows(), g.cols()), (2, 3));
        assert_eq!(g.get(0, 1), &Rational::from_integer(1));
    }

    #[test]
    fn prime_field_collections() {
        let p = Field::prime(7).unwrap();
        let c: FormCollection<Fp> =
            FormCollection::from_i64(p, &[(&[1, 0], 1), (&[8, 0], 1), (&[1, 1], 1)]).unwrap();
        assert_eq!(c.support_size(), 2);
    }

    #[test]
    fn subset_enumeration() {
        let all: Vec<Vec<usize>> = subsets(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
        assert_eq!(subsets(3, 0).count(), 1);
        assert_eq!(subsets(2, 3).count(), 0);
    }
}
