use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::error::{AlgebraError, Result};
use crate::linalg::{preimage, EchelonBuilder, Field, Matrix, RowSpace, Scalar};

use super::monomial::{binomial, monomial_basis, ExponentVector, MonomialBasis};
use super::{GeneratorSet, Poly};

/// The degree-`d` slice of a homogeneous ideal, as a subspace of `R_d`
/// written in the grevlex monomial basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPiece<F: Scalar> {
    nvars: usize,
    degree: usize,
    space: RowSpace<F>,
}

impl<F: Scalar> GradedPiece<F> {
    pub fn new(nvars: usize, degree: usize, space: RowSpace<F>) -> Result<Self> {
        let expect = binomial(degree + nvars - 1, degree);
        if space.ambient_dim() != expect {
            return Err(AlgebraError::DimensionMismatch(format!(
                "degree-{degree} piece in {nvars} variables must live in dimension {expect}, got {}",
                space.ambient_dim()
            )));
        }
        Ok(GradedPiece { nvars, degree, space })
    }

    pub fn zero(field: Field, nvars: usize, degree: usize) -> Self {
        let n = binomial(degree + nvars - 1, degree);
        GradedPiece { nvars, degree, space: RowSpace::zero(field, n) }
    }

    pub fn full(field: Field, nvars: usize, degree: usize) -> Self {
        let n = binomial(degree + nvars - 1, degree);
        GradedPiece { nvars, degree, space: RowSpace::full(field, n) }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn space(&self) -> &RowSpace<F> {
        &self.space
    }

    pub fn into_space(self) -> RowSpace<F> {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `dim R_d - dim I_d`.
    pub fn quotient_dim(&self) -> usize {
        self.space.codim()
    }

    pub fn contains_poly(&self, p: &Poly<F>) -> Result<bool> {
        let basis = monomial_basis(self.nvars, self.degree);
        Ok(self.space.contains(&p.to_dense(&basis)?))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars || self.degree != other.degree {
            return Err(AlgebraError::DimensionMismatch(format!(
                "pieces (nvars {}, degree {}) and (nvars {}, degree {})",
                self.nvars, self.degree, other.nvars, other.degree
            )));
        }
        Ok(())
    }

    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check(other)?;
        self.space.leq(&other.space)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(GradedPiece { nvars: self.nvars, degree: self.degree, space: self.space.intersect(&other.space)? })
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(GradedPiece { nvars: self.nvars, degree: self.degree, space: self.space.sum(&other.space)? })
    }
}

/// Embeds `mu * v` for every row `v` of a degree-`d` space into degree `d + deg(mu)`.
fn shift_vector<F: Scalar>(
    field: Field,
    v: &[F],
    from: &MonomialBasis,
    mu: &ExponentVector,
    to: &MonomialBasis,
) -> Vec<F> {
    let mut out = vec![F::zero(field); to.len()];
    for (i, c) in v.iter().enumerate() {
        if !c.is_zero() {
            let idx = to.index_of(&from.get(i).mul(mu)).expect("shifted monomial in basis");
            out[idx] = c.clone();
        }
    }
    out
}

/// `R_1 * piece`, a subspace of `R_{d+1}`.
pub fn lift_by_variables<F: Scalar>(piece: &GradedPiece<F>) -> GradedPiece<F> {
    let field = piece.space.field();
    let n = piece.nvars;
    let from = monomial_basis(n, piece.degree);
    let to = monomial_basis(n, piece.degree + 1);
    let mut b = EchelonBuilder::new(field, to.len());
    'outer: for i in 0..n {
        let mu = ExponentVector::unit(n, i);
        for row in piece.space.basis().row_iter() {
            if b.is_full() {
                break 'outer;
            }
            b.insert(shift_vector(field, row, &from, &mu, &to));
        }
    }
    GradedPiece { nvars: n, degree: piece.degree + 1, space: b.finish() }
}

/// The degree-`d` piece of the ideal generated by `gens`.
pub fn span_in_degree<F: Scalar>(gens: &GeneratorSet<F>, d: usize) -> GradedPiece<F> {
    let field = gens.field();
    let n = gens.nvars();
    let target = monomial_basis(n, d);
    let mut b = EchelonBuilder::new(field, target.len());
    let mut multipliers: HashMap<usize, MonomialBasis> = HashMap::new();
    'outer: for (g, deg) in gens.iter() {
        if deg > d {
            continue;
        }
        let mult = multipliers.entry(d - deg).or_insert_with(|| monomial_basis(n, d - deg));
        for mu in mult.monomials() {
            if b.is_full() {
                break 'outer;
            }
            let mut row = vec![F::zero(field); target.len()];
            for (e, c) in g.terms() {
                let idx = target.index_of(&e.mul(mu)).expect("product lies in degree d");
                row[idx] = c.clone();
            }
            b.insert(row);
        }
    }
    GradedPiece { nvars: n, degree: d, space: b.finish() }
}

pub fn hilbert_fn<F: Scalar>(gens: &GeneratorSet<F>, d: usize) -> usize {
    span_in_degree(gens, d).dim()
}

/// `dim (R/I)_d`.
pub fn quotient_dim<F: Scalar>(gens: &GeneratorSet<F>, d: usize) -> usize {
    span_in_degree(gens, d).quotient_dim()
}

/// Matrix of `v -> f * v` from `R_d` to `R_{d+e}`.
pub fn mult_map<F: Scalar>(f: &Poly<F>, d: usize) -> Result<Matrix<F>> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let e = f
        .homogeneous_degree()
        .ok_or_else(|| AlgebraError::InvalidParameter("multiplier is not homogeneous".into()))?;
    let field = f.field();
    let n = f.nvars();
    let src = monomial_basis(n, d);
    let dst = monomial_basis(n, d + e);
    let mut m = Matrix::zeros(field, dst.len(), src.len());
    for (j, mu) in src.monomials().iter().enumerate() {
        for (t, c) in f.terms() {
            let i = dst.index_of(&t.mul(mu)).expect("product lies in target degree");
            m.set(i, j, c.clone());
        }
    }
    Ok(m)
}

/// `(I : l)_d` computed as the preimage of `I_{d+1}` under multiplication by `l`.
pub fn colon_piece<F: Scalar>(gens: &GeneratorSet<F>, l: &Poly<F>, d: usize) -> Result<GradedPiece<F>> {
    match l.homogeneous_degree() {
        Some(1) => {}
        Some(k) => return Err(AlgebraError::NotLinear(k)),
        None if l.is_zero() => return Err(AlgebraError::ZeroPolynomial),
        None => return Err(AlgebraError::InvalidParameter("form is not homogeneous".into())),
    }
    let target = span_in_degree(gens, d + 1);
    let map = mult_map(l, d)?;
    let space = preimage(&map, target.space())?;
    GradedPiece::new(gens.nvars(), d, space)
}

/// Minimal generator counts per degree.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct GeneratorDegrees {
    /// Degree to number of minimal generators; degrees with zero are omitted.
    pub counts: BTreeMap<usize, usize>,
    /// All minimal generators sit in one degree (within the bound).
    pub equigenerated: bool,
    pub degree_bound: usize,
}

impl GeneratorDegrees {
    pub fn degrees(&self) -> Vec<usize> {
        self.counts.keys().copied().collect()
    }
}

/// Counts `dim I_d - dim (R_1 I_{d-1})` for every `d <= bound`.
pub fn min_gen_degrees<F: Scalar>(gens: &GeneratorSet<F>, bound: usize) -> Result<GeneratorDegrees> {
    if let Some(maxd) = gens.max_degree() {
        if bound < maxd {
            return Err(AlgebraError::DegreeBoundTooSmall { bound, required: maxd });
        }
    }
    let mut counts = BTreeMap::new();
    let mut prev: Option<GradedPiece<F>> = None;
    for d in 0..=bound {
        let piece = span_in_degree(gens, d);
        let from_below = match &prev {
            Some(p) => lift_by_variables(p).dim(),
            None => 0,
        };
        let new = piece.dim() - from_below;
        if new > 0 {
            counts.insert(d, new);
        }
        prev = Some(piece);
    }
    let equigenerated = counts.len() <= 1;
    Ok(GeneratorDegrees { counts, equigenerated, degree_bound: bound })
}

/// Lazily computed degree pieces of one ideal, safe to share across threads.
#[derive(Debug)]
pub struct PieceCache<F: Scalar> {
    gens: GeneratorSet<F>,
    pieces: Mutex<HashMap<usize, Arc<GradedPiece<F>>>>,
}

impl<F: Scalar> PieceCache<F> {
    pub fn new(gens: GeneratorSet<F>) -> Self {
        PieceCache { gens, pieces: Mutex::new(HashMap::new()) }
    }

    pub fn gens(&self) -> &GeneratorSet<F> {
        &self.gens
    }

    pub fn get(&self, d: usize) -> Arc<GradedPiece<F>> {
        if let Some(p) = self.pieces.lock().expect("piece cache poisoned").get(&d) {
            return Arc::clone(p);
        }
        let piece = Arc::new(span_in_degree(&self.gens, d));
        let mut map = self.pieces.lock().expect("piece cache poisoned");
        Arc::clone(map.entry(d).or_insert(piece))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rank, Rational};

    const Q: Field = Field::Rational;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    fn lin(c: &[i64]) -> Poly<Rational> {
        let v: Vec<Rational> = c.iter().map(|&x| r(x)).collect();
        Poly::linear(Q, &v)
    }

    fn mono(e: &[u32]) -> Poly<Rational> {
        Poly::monomial(Q, ExponentVector::new(e.to_vec()), r(1))
    }

    fn three_points() -> GeneratorSet<Rational> {
        GeneratorSet::new(Q, 3, vec![mono(&[1, 1, 0]), mono(&[1, 0, 1]), mono(&[0, 1, 1])]).unwrap()
    }

    #[test]
    fn mult_map_examples() {
        let m = mult_map(&lin(&[1, 0]), 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 2));
        assert_eq!(rank(&m).unwrap(), 2);
        let one = Poly::<Rational>::one(Q, 3);
        assert_eq!(mult_map(&one, 2).unwrap(), Matrix::identity(Q, 6));
        assert!(mult_map(&Poly::<Rational>::zero(Q, 3), 1).is_err());
    }

    #[test]
    fn span_examples() {
        let x0 = GeneratorSet::new(Q, 3, vec![lin(&[1, 0, 0])]).unwrap();
        assert_eq!(span_in_degree(&x0, 1).dim(), 1);
        assert_eq!(span_in_degree(&x0, 0).dim(), 0);
        let m2 = GeneratorSet::<Rational>::maximal_power(Q, 3, 2);
        for d in 2..6 {
            assert!(span_in_degree(&m2, d).space().is_full());
        }
        assert_eq!(span_in_degree(&three_points(), 3).dim(), 7);
    }

    #[test]
    fn quotient_dims_of_three_points() {
        let g = three_points();
        let dims: Vec<usize> = (0..6).map(|d| quotient_dim(&g, d)).collect();
        assert_eq!(dims, vec![1, 3, 3, 3, 3, 3]);
        let zero = GeneratorSet::<Rational>::empty(Q, 3);
        assert_eq!(quotient_dim(&zero, 4), 15);
        let max = GeneratorSet::<Rational>::maximal_power(Q, 3, 1);
        assert_eq!(quotient_dim(&max, 3), 0);
    }

    #[test]
    fn colon_by_variable() {
        let g = GeneratorSet::new(Q, 3, vec![mono(&[2, 0, 0])]).unwrap();
        let c = colon_piece(&g, &lin(&[1, 0, 0]), 1).unwrap();
        let expect = span_in_degree(&GeneratorSet::new(Q, 3, vec![lin(&[1, 0, 0])]).unwrap(), 1);
        assert_eq!(c, expect);
        assert!(matches!(colon_piece(&g, &mono(&[1, 1, 0]), 1), Err(AlgebraError::NotLinear(2))));
    }

    #[test]
    fn min_generators() {
        let g = GeneratorSet::new(Q, 2, vec![mono(&[2, 0]), mono(&[0, 2])]).unwrap();
        let deg = min_gen_degrees(&g, 5).unwrap();
        assert_eq!(deg.counts, BTreeMap::from([(2, 2)]));
        assert!(deg.equigenerated);
        let m3 = GeneratorSet::<Rational>::maximal_power(Q, 3, 3);
        assert_eq!(min_gen_degrees(&m3, 6).unwrap().counts, BTreeMap::from([(3, 10)]));
        let mixed = GeneratorSet::new(Q, 2, vec![mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 3])]).unwrap();
        let md = min_gen_degrees(&mixed, 4).unwrap();
        assert!(!md.equigenerated);
        assert_eq!(md.counts, BTreeMap::from([(2, 2), (3, 1)]));
        assert!(min_gen_degrees(&mixed, 2).is_err());
    }

    #[test]
    fn lift_contained_in_next_degree() {
        let g = three_points();
        for d in 2..5 {
            let lifted = lift_by_variables(&span_in_degree(&g, d));
            assert!(lifted.leq(&span_in_degree(&g, d + 1)).unwrap());
        }
    }
}
