//! Linear primes over Σ and the decomposition
//! `I_a(Σ) = ∩_{p ∈ Γ(Σ)} p^{a - N + ν_Σ(p)}`.
//!
//! `Γ(Σ)` always holds only the primes containing `I_a(Σ)`, i.e. those with
//! `ν_Σ(p) >= N - a + 1`. Primes are identified by their span; two index sets
//! with the same span give one prime.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::check::{compare_degreewise, DegreeCheck, Hypothesis, Relation};
use crate::error::{AlgebraError, Result};
use crate::fold::FoldIdeal;
use crate::linalg::{EchelonBuilder, Field, RowSpace, Scalar};
use crate::poly::{intersect_prime_powers, monomial_basis, ExponentVector, GradedPiece, LinearPrimePower};
use crate::sigma::{subsets, FormCollection};

/// A prime generated by support forms. `support` is its closure in Σ: every
/// support index whose form lies in the span.
#[derive(Debug, Clone)]
pub struct LinearPrime<F: Scalar> {
    support: Vec<usize>,
    span: RowSpace<F>,
}

impl<F: Scalar> PartialEq for LinearPrime<F> {
    fn eq(&self, other: &Self) -> bool {
        self.span == other.span
    }
}

impl<F: Scalar> Eq for LinearPrime<F> {}

impl<F: Scalar> LinearPrime<F> {
    /// The prime generated by the given support forms.
    pub fn from_indices(sigma: &FormCollection<F>, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(AlgebraError::InvalidParameter("a linear prime needs at least one form".into()));
        }
        if let Some(&i) = indices.iter().find(|&&i| i >= sigma.support_size()) {
            return Err(AlgebraError::InvalidParameter(format!("no form at index {i}")));
        }
        Ok(LinearPrime { support: sigma.closure(indices), span: sigma.span_of(indices) })
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn span(&self) -> &RowSpace<F> {
        &self.span
    }

    pub fn codim(&self) -> usize {
        self.span.dim()
    }

    /// The prime is the irrelevant ideal `M`.
    pub fn is_maximal(&self) -> bool {
        self.span.is_full()
    }
}

/// Closure of a prime in Σ and `ν_Σ(p)`, its size with multiplicity.
pub fn closure_nu<F: Scalar>(sigma: &FormCollection<F>, prime: &RowSpace<F>) -> (Vec<usize>, usize) {
    let closure: Vec<usize> =
        (0..sigma.support_size()).filter(|&i| prime.contains(sigma.form(i).coeffs())).collect();
    let nu = sigma.weight(&closure);
    (closure, nu)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimaryComponent<F: Scalar> {
    pub prime: LinearPrime<F>,
    pub exponent: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition<F: Scalar> {
    field: Field,
    nvars: usize,
    components: Vec<PrimaryComponent<F>>,
    includes_m: bool,
}

/// Serializable view of one component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    /// Support indices (0-based) of the forms in the prime's closure.
    pub support: Vec<usize>,
    pub codim: usize,
    pub exponent: usize,
    pub maximal: bool,
}

impl<F: Scalar> Decomposition<F> {
    pub fn new(field: Field, nvars: usize, mut components: Vec<PrimaryComponent<F>>) -> Self {
        components.sort_by(|x, y| {
            (x.prime.codim(), &x.prime.support).cmp(&(y.prime.codim(), &y.prime.support))
        });
        let includes_m = components.iter().any(|c| c.prime.is_maximal());
        Decomposition { field, nvars, components, includes_m }
    }

    pub fn components(&self) -> &[PrimaryComponent<F>] {
        &self.components
    }

    pub fn includes_m(&self) -> bool {
        self.includes_m
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn primes(&self) -> Vec<LinearPrime<F>> {
        self.components.iter().map(|c| c.prime.clone()).collect()
    }

    /// Drops the `M`-primary component.
    pub fn without_m(&self) -> Self {
        let components = self.components.iter().filter(|c| !c.prime.is_maximal()).cloned().collect();
        Decomposition::new(self.field, self.nvars, components)
    }

    /// Smallest codimension of a component; `None` for the unit ideal.
    pub fn height(&self) -> Option<usize> {
        self.components.iter().map(|c| c.prime.codim()).min()
    }

    pub fn max_exponent(&self) -> usize {
        self.components.iter().map(|c| c.exponent).max().unwrap_or(0)
    }

    pub fn summary(&self) -> Vec<ComponentSummary> {
        self.components
            .iter()
            .map(|c| ComponentSummary {
                support: c.prime.support.clone(),
                codim: c.prime.codim(),
                exponent: c.exponent,
                maximal: c.prime.is_maximal(),
            })
            .collect()
    }

    /// Degreewise evaluator of the intersection of the components.
    pub fn evaluator(&self) -> Result<ComponentIntersection<F>> {
        let parts = self
            .components
            .iter()
            .map(|c| Ok((LinearPrimePower::new(c.prime.span())?, c.exponent)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ComponentIntersection { field: self.field, nvars: self.nvars, parts })
    }

    /// Degree-`d` piece of the intersection; the empty intersection is `R`.
    pub fn component_piece(&self, d: usize) -> Result<GradedPiece<F>> {
        Ok(self.evaluator()?.piece(d))
    }
}

/// Caches prime-power expansions across degrees.
#[derive(Debug)]
pub struct ComponentIntersection<F: Scalar> {
    field: Field,
    nvars: usize,
    parts: Vec<(LinearPrimePower<F>, usize)>,
}

impl<F: Scalar> ComponentIntersection<F> {
    pub fn piece(&mut self, d: usize) -> GradedPiece<F> {
        intersect_prime_powers(self.field, self.nvars, &mut self.parts, d)
    }

    /// Intersection with component `skip` left out.
    pub fn piece_without(&mut self, skip: usize, d: usize) -> GradedPiece<F> {
        let dim = monomial_basis(self.nvars, d).len();
        let mut b = EchelonBuilder::new(self.field, dim);
        for (k, (p, e)) in self.parts.iter_mut().enumerate() {
            if k == skip {
                continue;
            }
            for row in p.conditions(*e, d) {
                if b.is_full() {
                    break;
                }
                b.insert(row);
            }
        }
        GradedPiece::new(self.nvars, d, b.finish().annihilator()).expect("dimension matches")
    }
}

fn check_range<F: Scalar>(sigma: &FormCollection<F>, a: usize) -> Result<()> {
    if a == 0 || a > sigma.total() {
        return Err(AlgebraError::InvalidParameter(format!("need 1 <= a <= N = {}", sigma.total())));
    }
    Ok(())
}

/// `Γ(Σ)` for `I_a(Σ)`: distinct primes spanned by support forms with
/// `ν_Σ(p) >= N - a + 1`, sorted by codimension, then support.
pub fn gamma_set<F: Scalar>(sigma: &FormCollection<F>, a: usize) -> Result<Vec<LinearPrime<F>>> {
    check_range(sigma, a)?;
    let threshold = sigma.total() - a + 1;
    let s = sigma.support_size();
    let mut by_closure: BTreeMap<Vec<usize>, LinearPrime<F>> = BTreeMap::new();
    for k in 1..=sigma.rank() {
        for sub in subsets(s, k) {
            if sigma.subset_rank(&sub) != k {
                continue;
            }
            let closure = sigma.closure(&sub);
            if by_closure.contains_key(&closure) || sigma.weight(&closure) < threshold {
                continue;
            }
            let span = sigma.span_of(&sub);
            by_closure.insert(closure.clone(), LinearPrime { support: closure, span });
        }
    }
    let mut primes: Vec<LinearPrime<F>> = by_closure.into_values().collect();
    primes.sort_by(|x, y| (x.codim(), &x.support).cmp(&(y.codim(), &y.support)));
    Ok(primes)
}

/// Components `p^{a - N + ν_Σ(p)}` over `Γ(Σ)`, without checking hypotheses.
pub fn gamma_decomposition<F: Scalar>(sigma: &FormCollection<F>, a: usize) -> Result<Decomposition<F>> {
    let n_total = sigma.total();
    let components = gamma_set(sigma, a)?
        .into_iter()
        .map(|prime| {
            let nu = sigma.weight(&prime.support);
            PrimaryComponent { exponent: a + nu - n_total, prime }
        })
        .collect();
    Ok(Decomposition::new(sigma.field(), sigma.nvars(), components))
}

fn require_hypotheses<F: Scalar>(sigma: &FormCollection<F>) -> Result<()> {
    let rank = sigma.rank();
    if rank != sigma.nvars() {
        return Err(AlgebraError::RankDeficient { rank, nvars: sigma.nvars() });
    }
    if !sigma.is_generic_support() {
        return Err(AlgebraError::NonGenericSupport);
    }
    Ok(())
}

/// Primary decomposition of `I_a(Σ)` for generic support of full rank.
pub fn primary_decomposition<F: Scalar>(sigma: &FormCollection<F>, a: usize) -> Result<Decomposition<F>> {
    require_hypotheses(sigma)?;
    gamma_decomposition(sigma, a)
}

/// Components of the saturation: the decomposition without `M`.
pub fn saturation_components<F: Scalar>(sigma: &FormCollection<F>, a: usize) -> Result<Decomposition<F>> {
    Ok(primary_decomposition(sigma, a)?.without_m())
}

/// The intersection bounding `I_a(Σ)` for arbitrary Σ, built literally: for
/// every nonempty support subset `S`, `<l_S>^{μ(S)}` with
/// `μ(S) = a - sum_{j ∉ S} m_j`; equal spans keep the larger exponent and
/// exponents `<= 0` are dropped.
pub fn containment_bound_components<F: Scalar>(sigma: &FormCollection<F>, a: usize) -> Result<Decomposition<F>> {
    check_range(sigma, a)?;
    let s = sigma.support_size();
    if s > 20 {
        return Err(AlgebraError::InvalidParameter(format!("{s} support forms is too many to enumerate")));
    }
    let n_total = sigma.total() as i64;
    let mut best: HashMap<Vec<usize>, (Vec<usize>, i64)> = HashMap::new();
    for mask in 1u32..(1u32 << s) {
        let sub: Vec<usize> = (0..s).filter(|&i| mask & (1 << i) != 0).collect();
        let mu = a as i64 - (n_total - sigma.weight(&sub) as i64);
        if mu <= 0 {
            continue;
        }
        let key = sigma.closure(&sub);
        let entry = best.entry(key).or_insert((sub.clone(), mu));
        if mu > entry.1 {
            *entry = (sub, mu);
        }
    }
    let components = best
        .into_values()
        .map(|(sub, mu)| {
            Ok(PrimaryComponent { prime: LinearPrime::from_indices(sigma, &sub)?, exponent: mu as usize })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Decomposition::new(sigma.field(), sigma.nvars(), components))
}

fn hypothesis_of<F: Scalar>(sigma: &FormCollection<F>) -> Hypothesis {
    if sigma.rank() == sigma.nvars() && sigma.is_generic_support() {
        Hypothesis::Satisfied
    } else {
        Hypothesis::Violated
    }
}

fn require_bound(bound: usize, a: usize) -> Result<()> {
    if bound < a {
        return Err(AlgebraError::DegreeBoundTooSmall { bound, required: a });
    }
    Ok(())
}

/// `I_a(Σ)_d ⊆ (∩ <l_S>^{μ(S)})_d` for `d <= bound`; no hypotheses.
pub fn verify_containment_bound<F: Scalar>(sigma: &FormCollection<F>, a: usize, bound: usize) -> Result<DegreeCheck> {
    require_bound(bound, a)?;
    let ideal = FoldIdeal::new(sigma.clone(), a);
    let mut rhs = containment_bound_components(sigma, a)?.evaluator()?;
    compare_degreewise(
        bound,
        Relation::Contained,
        Hypothesis::NotRequired,
        |d| Ok((*ideal.piece(d)).clone()),
        |d| Ok(rhs.piece(d)),
    )
}

/// `I_a(Σ)_d = (∩_{p ∈ Γ(Σ)} p^{a-N+ν})_d` for `d <= bound`. Runs on any Σ of
/// full rank; the result records whether the support was generic.
pub fn verify_decomposition<F: Scalar>(sigma: &FormCollection<F>, a: usize, bound: usize) -> Result<DegreeCheck> {
    require_bound(bound, a)?;
    require_full_rank(sigma)?;
    let ideal = FoldIdeal::new(sigma.clone(), a);
    let mut rhs = gamma_decomposition(sigma, a)?.evaluator()?;
    compare_degreewise(
        bound,
        Relation::Equal,
        hypothesis_of(sigma),
        |d| Ok((*ideal.piece(d)).clone()),
        |d| Ok(rhs.piece(d)),
    )
}

/// Saturation of `I_a(Σ)`, computed by the colon oracle, against the
/// decomposition without `M`.
pub fn verify_saturation<F: Scalar>(sigma: &FormCollection<F>, a: usize, bound: usize) -> Result<DegreeCheck> {
    require_bound(bound, a)?;
    require_full_rank(sigma)?;
    let ideal = FoldIdeal::new(sigma.clone(), a);
    let sat = saturation_oracle(|d| (*ideal.piece(d)).clone(), sigma.field(), sigma.nvars(), bound)?;
    let mut rhs = gamma_decomposition(sigma, a)?.without_m().evaluator()?;
    compare_degreewise(
        bound,
        Relation::Equal,
        hypothesis_of(sigma),
        |d| Ok(sat.pieces[d].clone()),
        |d| Ok(rhs.piece(d)),
    )
}

fn require_full_rank<F: Scalar>(sigma: &FormCollection<F>) -> Result<()> {
    let rank = sigma.rank();
    if rank != sigma.nvars() {
        return Err(AlgebraError::RankDeficient { rank, nvars: sigma.nvars() });
    }
    Ok(())
}

/// Pieces of `I^sat` in degrees `0..=bound`, found by iterating `J -> J : M`.
#[derive(Debug, Clone)]
pub struct SaturationPieces<F: Scalar> {
    pub pieces: Vec<GradedPiece<F>>,
    /// First `k` with `(I : M^k)_d = (I : M^{k+1})_d` on the whole window.
    pub stable_at: usize,
    /// Degrees compared when detecting stabilization.
    pub window: usize,
}

/// Iteration cap for the colon chain.
pub const MAX_COLON_STEPS: usize = 64;

/// `(J : M)_d` from `J_{d+1}`: `f` qualifies iff every `x_i f` lies in `J_{d+1}`.
pub fn colon_by_maximal<F: Scalar>(upper: &GradedPiece<F>) -> GradedPiece<F> {
    let field = upper.space().field();
    let n = upper.nvars();
    let d = upper.degree() - 1;
    let src = monomial_basis(n, d);
    let dst = monomial_basis(n, d + 1);
    let ann = upper.space().annihilator();
    let mut b = EchelonBuilder::new(field, src.len());
    let shifts: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let mu = ExponentVector::unit(n, i);
            src.monomials().iter().map(|m| dst.index_of(&m.mul(&mu)).expect("in basis")).collect()
        })
        .collect();
    'outer: for h in ann.basis().row_iter() {
        for shift in &shifts {
            if b.is_full() {
                break 'outer;
            }
            b.insert(shift.iter().map(|&j| h[j].clone()).collect());
        }
    }
    GradedPiece::new(n, d, b.finish().annihilator()).expect("dimension matches")
}

/// Saturation oracle. `ideal_piece(d)` must return `I_d`. Stabilization is
/// required on degrees up to `bound + nvars`, so one extra colon step cannot
/// change degrees `<= bound`.
pub fn saturation_oracle<F: Scalar>(
    mut ideal_piece: impl FnMut(usize) -> GradedPiece<F>,
    field: Field,
    nvars: usize,
    bound: usize,
) -> Result<SaturationPieces<F>> {
    let window = bound + nvars;
    // chain[k][d] = (I : M^k)_d, computed on demand
    let mut chain: Vec<HashMap<usize, GradedPiece<F>>> = vec![HashMap::new()];
    fn get<F: Scalar>(
        chain: &mut Vec<HashMap<usize, GradedPiece<F>>>,
        ideal_piece: &mut impl FnMut(usize) -> GradedPiece<F>,
        k: usize,
        d: usize,
    ) -> GradedPiece<F> {
        while chain.len() <= k {
            chain.push(HashMap::new());
        }
        if let Some(p) = chain[k].get(&d) {
            return p.clone();
        }
        let p = if k == 0 {
            ideal_piece(d)
        } else {
            let upper = get(chain, ideal_piece, k - 1, d + 1);
            colon_by_maximal(&upper)
        };
        chain[k].insert(d, p.clone());
        p
    }
    let _ = field;
    for k in 0..MAX_COLON_STEPS {
        let stable = (0..=window).all(|d| {
            get(&mut chain, &mut ideal_piece, k, d) == get(&mut chain, &mut ideal_piece, k + 1, d)
        });
        if stable {
            let pieces = (0..=bound).map(|d| get(&mut chain, &mut ideal_piece, k, d)).collect();
            return Ok(SaturationPieces { pieces, stable_at: k, window });
        }
    }
    Err(AlgebraError::InvalidParameter(format!(
        "colon chain did not stabilize within {MAX_COLON_STEPS} steps"
    )))
}

/// `Γ(Σ)` read as the associated primes of `I_a(Σ)`, with a degreewise
/// irredundancy check for each component.
#[derive(Debug, Clone)]
pub struct AssociatedPrimes<F: Scalar> {
    pub decomposition: Decomposition<F>,
    /// `irredundant[k]`: dropping component `k` enlarges some piece `<= bound`.
    pub irredundant: Vec<bool>,
    pub degree_bound: usize,
}

impl<F: Scalar> AssociatedPrimes<F> {
    pub fn all_irredundant(&self) -> bool {
        self.irredundant.iter().all(|&b| b)
    }
}

pub fn ass_primes<F: Scalar>(sigma: &FormCollection<F>, a: usize, bound: usize) -> Result<AssociatedPrimes<F>> {
    let decomposition = primary_decomposition(sigma, a)?;
    let mut eval = decomposition.evaluator()?;
    let full: Vec<GradedPiece<F>> = (0..=bound).map(|d| eval.piece(d)).collect();
    let irredundant = (0..decomposition.components().len())
        .map(|k| (0..=bound).any(|d| eval.piece_without(k, d).dim() > full[d].dim()))
        .collect();
    Ok(AssociatedPrimes { decomposition, irredundant, degree_bound: bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rational;
    use crate::poly::binomial;

    const Q: Field = Field::Rational;

    fn coll(forms: &[(&[i64], usize)]) -> FormCollection<Rational> {
        FormCollection::from_i64(Q, forms).unwrap()
    }

    fn four_lines() -> FormCollection<Rational> {
        coll(&[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1), (&[1, 1, 1], 1)])
    }

    #[test]
    fn nu_examples() {
        let c = coll(&[(&[1, 0, 0], 2), (&[0, 1, 0], 1), (&[0, 0, 1], 1)]);
        let m = RowSpace::full(Q, 3);
        assert_eq!(closure_nu(&c, &m).1, 4);
        assert_eq!(closure_nu(&c, &c.span_of(&[0])).1, 2);
        let g = four_lines();
        assert_eq!(closure_nu(&g, &g.span_of(&[0, 3])), (vec![0, 3], 2));
    }

    #[test]
    fn gamma_of_six_point_star() {
        let g = gamma_set(&four_lines(), 3).unwrap();
        assert_eq!(g.len(), 7);
        assert!(g[..6].iter().all(|p| p.codim() == 2));
        assert!(g[6].is_maximal());
        let top = gamma_set(&four_lines(), 4).unwrap();
        // 4 lines, 6 points, M
        assert_eq!(top.len(), 11);
    }

    #[test]
    fn two_variable_example() {
        // I_2(x^2 y) = <x> ∩ M^2 = <x^2, xy>
        let c = coll(&[(&[1, 0], 2), (&[0, 1], 1)]);
        let dec = primary_decomposition(&c, 2).unwrap();
        let s = dec.summary();
        assert_eq!(s.len(), 2);
        assert_eq!((s[0].support.clone(), s[0].exponent), (vec![0], 1));
        assert!(s[1].maximal && s[1].exponent == 2);
        assert!(verify_decomposition(&c, 2, 6).unwrap().holds);
    }

    #[test]
    fn saturation_of_power_of_maximal_ideal_is_unit() {
        let sat = saturation_components(&four_lines(), 2).unwrap();
        assert!(sat.components().is_empty());
        assert!(sat.component_piece(0).unwrap().space().is_full());
    }

    #[test]
    fn component_piece_examples() {
        let dec = primary_decomposition(&four_lines(), 3).unwrap();
        assert_eq!(dec.component_piece(3).unwrap().dim(), 4);
        let m2 = gamma_decomposition(&four_lines(), 2).unwrap();
        assert_eq!(m2.components().len(), 1);
        assert_eq!(m2.component_piece(1).unwrap().dim(), 0);
        assert_eq!(m2.component_piece(4).unwrap().dim(), binomial(6, 2));
    }

    #[test]
    fn containment_bound_without_genericity() {
        let c = coll(&[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[1, 1, 0], 1)]);
        assert!(verify_containment_bound(&c, 2, 5).unwrap().holds);
        assert!(!c.is_generic_support() || c.rank() < 3);
    }

    #[test]
    fn decomposition_and_saturation_on_mixed_multiplicities() {
        let c = coll(&[(&[1, 0, 0], 2), (&[0, 1, 0], 1), (&[0, 0, 1], 1), (&[1, 1, 1], 1)]);
        let r = verify_decomposition(&c, 4, 9).unwrap();
        assert!(r.holds, "{r:?}");
        assert!(verify_saturation(&c, 4, 7).unwrap().holds);
        assert!(verify_containment_bound(&c, 4, 7).unwrap().holds);
    }

    #[test]
    fn non_generic_is_tagged() {
        let bad = coll(&[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[1, 1, 0], 1), (&[0, 0, 1], 1)]);
        assert!(matches!(primary_decomposition(&bad, 2), Err(AlgebraError::NonGenericSupport)));
        let r = verify_decomposition(&bad, 2, 5).unwrap();
        assert_eq!(r.hypothesis, Hypothesis::Violated);
        assert!(!r.is_counterexample());
    }

    #[test]
    fn associated_primes_of_star() {
        let ass = ass_primes(&four_lines(), 3, 6).unwrap();
        assert_eq!(ass.decomposition.components().len(), 7);
        // the star ideal is saturated: the six points matter, M^3 does not
        assert!(ass.irredundant[..6].iter().all(|&b| b));
        assert!(ass.decomposition.components()[6].prime.is_maximal());
        assert!(!ass.irredundant[6]);
        let embedded = ass_primes(&coll(&[(&[1, 0], 2), (&[0, 1], 1)]), 2, 5).unwrap();
        assert!(embedded.all_irredundant());
        let only_m = ass_primes(&four_lines(), 2, 5).unwrap();
        assert_eq!(only_m.decomposition.components().len(), 1);
        assert!(only_m.decomposition.includes_m());
    }

    #[test]
    fn saturation_oracle_on_known_ideal() {
        // I = <x^2, xy> = <x> ∩ M^2, so I^sat = <x>
        let c = coll(&[(&[1, 0], 2), (&[0, 1], 1)]);
        let ideal = FoldIdeal::new(c, 2);
        let sat = saturation_oracle(|d| (*ideal.piece(d)).clone(), Q, 2, 5).unwrap();
        let dims: Vec<usize> = sat.pieces.iter().map(|p| p.dim()).collect();
        assert_eq!(dims, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(sat.stable_at, 1);
    }

    #[test]
    fn heights_agree_with_code() {
        let c = four_lines();
        let h = c.height_profile().unwrap();
        for a in 1..=4 {
            assert_eq!(gamma_decomposition(&c, a).unwrap().height(), Some(h[&a]));
        }
    }
}
