//! Homogeneous polynomials in `K[x_0, ..., x_n]` and their graded pieces.
//!
//! Ideals are never stored through Gröbner bases. Every ideal is handled
//! degree by degree: the degree-`d` slice of an ideal is a subspace of the
//! span of the degree-`d` monomials, kept as a canonical [`RowSpace`].
//!
//! [`RowSpace`]: crate::linalg::RowSpace

mod graded;
mod monomial;
mod prime_power;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::linalg::{Field, Scalar};

pub use graded::{
    colon_piece, hilbert_fn, lift_by_variables, min_gen_degrees, mult_map, quotient_dim,
    span_in_degree, GeneratorDegrees, GradedPiece, PieceCache,
};
pub use monomial::{binomial, monomial_basis, grevlex_cmp, ExponentVector, MonomialBasis};
pub use prime_power::{intersect_prime_powers, LinearPrimePower};

/// Sparse polynomial: exponent vector to nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F: Scalar> {
    nvars: usize,
    field: Field,
    terms: BTreeMap<ExponentVector, F>,
}

impl<F: Scalar> Poly<F> {
    pub fn zero(field: Field, nvars: usize) -> Self {
        Poly { nvars, field, terms: BTreeMap::new() }
    }

    pub fn one(field: Field, nvars: usize) -> Self {
        Self::monomial(field, ExponentVector::zero(nvars), F::one(field))
    }

    pub fn monomial(field: Field, exps: ExponentVector, coeff: F) -> Self {
        let nvars = exps.nvars();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        Poly { nvars, field, terms }
    }

    /// The variable `x_i`.
    pub fn var(field: Field, nvars: usize, i: usize) -> Self {
        Self::monomial(field, ExponentVector::unit(nvars, i), F::one(field))
    }

    /// `c_0 x_0 + ... + c_n x_n`.
    pub fn linear(field: Field, coeffs: &[F]) -> Self {
        let nvars = coeffs.len();
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (ExponentVector::unit(nvars, i), c.clone()))
            .collect();
        Poly { nvars, field, terms }
    }

    pub fn from_terms(
        field: Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (ExponentVector, F)>,
    ) -> Result<Self> {
        let mut p = Self::zero(field, nvars);
        for (e, c) in terms {
            if e.nvars() != nvars {
                return Err(AlgebraError::DimensionMismatch(format!(
                    "exponent vector with {} entries in a ring with {nvars} variables",
                    e.nvars()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: ExponentVector, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &ExponentVector) -> F {
        self.terms.get(e).cloned().unwrap_or_else(|| F::zero(self.field))
    }

    /// Degree of a homogeneous polynomial; `None` for zero or inhomogeneous.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|e| e.degree());
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn add(&self, other: &Poly<F>) -> Poly<F> {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &F) -> Poly<F> {
        if c.is_zero() {
            return Self::zero(self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|(e, v)| (e.clone(), v.mul(c))).collect();
        Poly { nvars: self.nvars, field: self.field, terms }
    }

    pub fn mul(&self, other: &Poly<F>) -> Poly<F> {
        let mut out = Self::zero(self.field, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.mul(e2), c1.mul(c2));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly<F> {
        let mut acc = Self::one(self.field, self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Coefficient vector in the basis of the given degree.
    pub fn to_dense(&self, basis: &MonomialBasis) -> Result<Vec<F>> {
        let mut v = vec![F::zero(self.field); basis.len()];
        for (e, c) in &self.terms {
            let idx = basis.index_of(e).ok_or_else(|| {
                AlgebraError::DimensionMismatch(format!(
                    "term of degree {} outside the degree-{} basis",
                    e.degree(),
                    basis.degree()
                ))
            })?;
            v[idx] = c.clone();
        }
        Ok(v)
    }

    pub fn from_dense(field: Field, basis: &MonomialBasis, v: &[F]) -> Poly<F> {
        let terms = basis
            .monomials()
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        Poly { nvars: basis.nvars(), field, terms }
    }

    /// Substitutes linear forms for the variables: `x_i -> images[i]`.
    pub fn substitute_linear(&self, images: &[Poly<F>]) -> Result<Poly<F>> {
        if images.len() != self.nvars {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.nvars
            )));
        }
        let target_vars = images.first().map_or(0, |p| p.nvars);
        let mut out = Poly::zero(self.field, target_vars);
        for (e, c) in &self.terms {
            let mut term = Poly::monomial(self.field, ExponentVector::zero(target_vars), c.clone());
            for (i, &k) in e.exponents().iter().enumerate() {
                if k > 0 {
                    term = term.mul(&images[i].pow(k));
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }
}

impl<F: Scalar> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: Scalar> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&ExponentVector> = self.terms.keys().collect();
        keys.sort_by(|a, b| grevlex_cmp(b, a));
        for (k, e) in keys.into_iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let c = &self.terms[e];
            if e.degree() == 0 {
                write!(f, "{c}")?;
            } else {
                if !c.is_one() {
                    write!(f, "({c})*")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

/// A finite list of nonzero homogeneous generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet<F: Scalar> {
    field: Field,
    nvars: usize,
    gens: Vec<(Poly<F>, usize)>,
}

impl<F: Scalar> GeneratorSet<F> {
    /// The empty generating set (the zero ideal).
    pub fn empty(field: Field, nvars: usize) -> Self {
        GeneratorSet { field, nvars, gens: Vec::new() }
    }

    /// The unit ideal.
    pub fn unit(field: Field, nvars: usize) -> Self {
        let mut g = Self::empty(field, nvars);
        g.gens.push((Poly::one(field, nvars), 0));
        g
    }

    /// Validates homogeneity and drops nothing: zero generators are errors.
    pub fn new(field: Field, nvars: usize, polys: Vec<Poly<F>>) -> Result<Self> {
        let mut g = Self::empty(field, nvars);
        for p in polys {
            g.push(p)?;
        }
        Ok(g)
    }

    pub fn push(&mut self, p: Poly<F>) -> Result<()> {
        if p.nvars() != self.nvars {
            return Err(AlgebraError::DimensionMismatch(format!(
                "generator in {} variables, ring has {}",
                p.nvars(),
                self.nvars
            )));
        }
        if p.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let d = p.homogeneous_degree().ok_or_else(|| {
            AlgebraError::InvalidParameter("generator is not homogeneous".into())
        })?;
        self.gens.push((p, d));
        Ok(())
    }

    /// The ideal of all monomials of degree `d` (the power `M^d`).
    pub fn maximal_power(field: Field, nvars: usize, d: usize) -> Self {
        let basis = monomial_basis(nvars, d);
        let gens = basis
            .monomials()
            .iter()
            .map(|e| (Poly::monomial(field, e.clone(), F::one(field)), d))
            .collect();
        GeneratorSet { field, nvars, gens }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Poly<F>, usize)> {
        self.gens.iter().map(|(p, d)| (p, *d))
    }

    pub fn polys(&self) -> impl Iterator<Item = &Poly<F>> {
        self.gens.iter().map(|(p, _)| p)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.gens.iter().map(|(_, d)| *d).collect()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.gens.iter().map(|(_, d)| *d).max()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.gens.iter().map(|(_, d)| *d).min()
    }

    /// Generators of the sum of two ideals.
    pub fn union(&self, other: &GeneratorSet<F>) -> GeneratorSet<F> {
        let mut g = self.clone();
        g.gens.extend(other.gens.iter().cloned());
        g
    }

    /// Generators of `f * I`.
    pub fn times(&self, f: &Poly<F>) -> Result<GeneratorSet<F>> {
        let mut g = Self::empty(self.field, self.nvars);
        for (p, _) in &self.gens {
            g.push(p.mul(f))?;
        }
        Ok(g)
    }

    /// Generators of the product ideal `I * J`.
    pub fn product(&self, other: &GeneratorSet<F>) -> Result<GeneratorSet<F>> {
        let mut g = Self::empty(self.field, self.nvars);
        for (p, _) in &self.gens {
            for (q, _) in &other.gens {
                g.push(p.mul(q))?;
            }
        }
        Ok(g)
    }

    /// All products of `m` generators chosen with repetition: generators of `I^m`.
    pub fn power(&self, m: usize) -> Result<GeneratorSet<F>> {
        if m == 0 {
            return Ok(Self::unit(self.field, self.nvars));
        }
        let k = self.gens.len();
        let mut out = Self::empty(self.field, self.nvars);
        let mut idx = vec![0usize; m];
        if k == 0 {
            return Ok(out);
        }
        loop {
            let mut p = self.gens[idx[0]].0.clone();
            for &i in &idx[1..] {
                p = p.mul(&self.gens[i].0);
            }
            out.push(p)?;
            // next non-decreasing index tuple
            let mut pos = m;
            while pos > 0 && idx[pos - 1] == k - 1 {
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
            idx[pos - 1] += 1;
            let v = idx[pos - 1];
            for slot in idx[pos..].iter_mut() {
                *slot = v;
            }
        }
        Ok(out)
    }
}
