//! Star configurations, their symbolic and ordinary powers, and resurgence.
//!
//! `V_c(A)` is the union of the codimension-`c` intersections of a generic
//! arrangement `A` of `s` hyperplanes. Its ideal is `I_{s-c+1}(l_1 ... l_s)`.
//! The coordinate arrangement in `P^{s-1}` gives a purely combinatorial model
//! in which membership in symbolic and ordinary powers is a condition on
//! exponent vectors.

use serde::{Deserialize, Serialize};

use crate::check::{compare_degreewise, DegreeCheck, Hypothesis, Relation};
use crate::decomp::{primary_decomposition, Decomposition, LinearPrime, PrimaryComponent};
use crate::error::{AlgebraError, Result};
use crate::fold::FoldIdeal;
use crate::linalg::{Rational, Scalar};
use crate::poly::{GeneratorSet, GradedPiece, PieceCache, Poly};
use crate::sigma::{subsets, FormCollection};

/// A generic arrangement of `s >= n + 1` hyperplanes with a codimension
/// `1 <= c <= n`.
#[derive(Debug, Clone)]
pub struct StarConfig<F: Scalar> {
    arrangement: FormCollection<F>,
    c: usize,
}

impl<F: Scalar> StarConfig<F> {
    pub fn new(arrangement: FormCollection<F>, c: usize) -> Result<Self> {
        let nvars = arrangement.nvars();
        if !arrangement.has_unit_multiplicities() {
            return Err(AlgebraError::InvalidParameter("an arrangement has multiplicity-one forms".into()));
        }
        if arrangement.support_size() < nvars {
            return Err(AlgebraError::InvalidParameter(format!(
                "need at least {nvars} hyperplanes, got {}",
                arrangement.support_size()
            )));
        }
        if c == 0 || c + 1 > nvars {
            return Err(AlgebraError::InvalidParameter(format!("codimension must lie in 1..={}", nvars - 1)));
        }
        if !arrangement.is_generic_support() {
            return Err(AlgebraError::NonGenericSupport);
        }
        Ok(StarConfig { arrangement, c })
    }

    pub fn arrangement(&self) -> &FormCollection<F> {
        &self.arrangement
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn s(&self) -> usize {
        self.arrangement.support_size()
    }

    /// `n`, the dimension of the projective space.
    pub fn n(&self) -> usize {
        self.arrangement.nvars() - 1
    }

    /// Generation degree `s - c + 1` of `I(V_c)`.
    pub fn generation_degree(&self) -> usize {
        self.s() - self.c + 1
    }

    /// `I(V_c) = I_{s-c+1}(l_1 ... l_s)`.
    pub fn star_ideal(&self) -> FoldIdeal<F> {
        FoldIdeal::new(self.arrangement.clone(), self.generation_degree())
    }

    /// `I_{m(s-c+1)}(l_1^m ... l_s^m)`, equal to `I(V_c)^m`.
    pub fn power_as_fold(&self, m: usize) -> Result<FoldIdeal<F>> {
        let mults = vec![m; self.s()];
        Ok(FoldIdeal::new(self.arrangement.with_multiplicities(&mults)?, m * self.generation_degree()))
    }

    /// Generators of `I(V_c)^m` as products of `m` generators of the star ideal.
    pub fn ordinary_power(&self, m: usize) -> Result<GeneratorSet<F>> {
        self.star_ideal().generators().power(m)
    }

    fn primes_of_codim(&self, j: usize, exponent: usize) -> Result<Vec<PrimaryComponent<F>>> {
        subsets(self.s(), j)
            .map(|sub| Ok(PrimaryComponent { prime: LinearPrime::from_indices(&self.arrangement, &sub)?, exponent }))
            .collect()
    }

    /// `I^{(m)}`: every codimension-`c` prime raised to `m`.
    pub fn symbolic_power(&self, m: usize) -> Result<Decomposition<F>> {
        let comps = self.primes_of_codim(self.c, m)?;
        Ok(Decomposition::new(self.arrangement.field(), self.arrangement.nvars(), comps))
    }

    pub fn symbolic_power_piece(&self, m: usize, d: usize) -> Result<GradedPiece<F>> {
        self.symbolic_power(m)?.component_piece(d)
    }

    /// Right-hand side of the decomposition of ordinary powers:
    /// `I^{(m)} ∩ I(V_{c+1})^{(2m)} ∩ ... ∩ I(V_n)^{((n-c+1)m)} ∩ M^{(s-c+1)m}`.
    pub fn power_decomposition(&self, m: usize) -> Result<Decomposition<F>> {
        let mut comps = Vec::new();
        for j in self.c..=self.n() {
            comps.extend(self.primes_of_codim(j, (j - self.c + 1) * m)?);
        }
        let all: Vec<usize> = (0..self.s()).collect();
        comps.push(PrimaryComponent {
            prime: LinearPrime::from_indices(&self.arrangement, &all)?,
            exponent: self.generation_degree() * m,
        });
        Ok(Decomposition::new(self.arrangement.field(), self.arrangement.nvars(), comps))
    }

    pub fn power_decomposition_piece(&self, m: usize, d: usize) -> Result<GradedPiece<F>> {
        self.power_decomposition(m)?.component_piece(d)
    }

    /// Default bound `m(s-c+1) + n + 2`.
    pub fn default_bound(&self, m: usize) -> usize {
        m * self.generation_degree() + self.n() + 2
    }

    /// `(I^m)_d` against the intersection of prime powers for `d <= bound`, plus the
    /// component match with the decomposition of `I_{m(s-c+1)}(l^m)`.
    pub fn verify_symbolic_power(&self, m: usize, bound: usize) -> Result<SymbolicPowerCheck> {
        if m == 0 {
            return Err(AlgebraError::InvalidParameter("power must be at least 1".into()));
        }
        let required = m * self.generation_degree();
        if bound < required {
            return Err(AlgebraError::DegreeBoundTooSmall { bound, required });
        }
        let lhs = PieceCache::new(self.ordinary_power(m)?);
        let rhs_dec = self.power_decomposition(m)?;
        let mut rhs = rhs_dec.evaluator()?;
        let check = compare_degreewise(
            bound,
            Relation::Equal,
            Hypothesis::Satisfied,
            |d| Ok((*lhs.get(d)).clone()),
            |d| Ok(rhs.piece(d)),
        )?;
        let fold = self.arrangement.with_multiplicities(&vec![m; self.s()])?;
        let cor = primary_decomposition(&fold, required)?;
        let components_match = cor.summary() == rhs_dec.summary();
        Ok(SymbolicPowerCheck { check, components_match })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicPowerCheck {
    pub check: DegreeCheck,
    /// The right-hand side has exactly the components of the decomposition
    /// of `I_{m(s-c+1)}(l_1^m ... l_s^m)`.
    pub components_match: bool,
}

impl SymbolicPowerCheck {
    pub fn holds(&self) -> bool {
        self.check.holds && self.components_match
    }
}

/// Exponent vector `t` of a monomial `z_0^{t_0} ... z_{s-1}^{t_{s-1}}`.
pub type Monomial = Vec<u32>;

/// The star configuration of codimension `c` on the coordinate hyperplanes
/// of `P^{s-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialStarModel {
    pub s: usize,
    pub c: usize,
}

impl MonomialStarModel {
    pub fn new(s: usize, c: usize) -> Result<Self> {
        if c == 0 || c >= s {
            return Err(AlgebraError::InvalidParameter(format!("need 1 <= c <= s - 1, got s = {s}, c = {c}")));
        }
        Ok(MonomialStarModel { s, c })
    }

    pub fn generation_degree(&self) -> usize {
        self.s - self.c + 1
    }

    /// Every `c`-subset of exponents sums to at least `m`; the tightest subset
    /// is the `c` smallest entries.
    pub fn symbolic_member(&self, t: &[u32], m: usize) -> bool {
        let mut v = t.to_vec();
        v.sort_unstable();
        v[..self.c].iter().map(|&e| e as usize).sum::<usize>() >= m
    }

    /// Membership in the `r`-th ordinary power. `z^t` is divisible by a
    /// product of `r` generators iff some `k <= t` with `k_j <= r` has
    /// `sum k = r(s-c+1)`, i.e. iff `sum min(t_j, r) >= r(s-c+1)`.
    pub fn power_member(&self, t: &[u32], r: usize) -> bool {
        t.iter().map(|&e| (e as usize).min(r)).sum::<usize>() >= r * self.generation_degree()
    }

    /// Minimal monomial generators of the `m`-th symbolic power.
    ///
    /// Capping every exponent at `m` keeps the `c`-subset sums `>= m`, so a
    /// minimal generator never has an exponent above `m` and the search runs
    /// over `[0, m]^s`. Output is in descending lexicographic order.
    pub fn symbolic_min_gens(&self, m: usize) -> Vec<Monomial> {
        self.min_gens_in_box(m, m as u32)
    }

    fn min_gens_in_box(&self, m: usize, cap: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut t = vec![cap; self.s];
        loop {
            if self.symbolic_member(&t, m) && self.is_minimal(&t, m) {
                out.push(t.clone());
            }
            // next vector in descending lexicographic order
            let mut i = self.s;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if t[i] > 0 {
                    t[i] -= 1;
                    for x in &mut t[i + 1..] {
                        *x = cap;
                    }
                    break;
                }
            }
        }
    }

    fn is_minimal(&self, t: &[u32], m: usize) -> bool {
        let mut u = t.to_vec();
        (0..self.s).all(|j| {
            if u[j] == 0 {
                return true;
            }
            u[j] -= 1;
            let still = self.symbolic_member(&u, m);
            u[j] += 1;
            !still
        })
    }

    /// `I'^{(m)} ⊆ I'^r`, with a minimal generator outside `I'^r` as witness.
    pub fn containment(&self, m: usize, r: usize) -> Containment {
        let gens = self.symbolic_min_gens(m);
        self.containment_from(&gens, m, r)
    }

    fn containment_from(&self, gens: &[Monomial], m: usize, r: usize) -> Containment {
        let witness = gens.iter().find(|t| !self.power_member(t, r)).cloned();
        Containment { m, r, contained: witness.is_none(), witness }
    }

    /// Containment table for `1 <= m <= m_max`, `1 <= r <= r_max`.
    pub fn resurgence_search(&self, m_max: usize, r_max: usize) -> Result<ResurgenceReport> {
        if m_max == 0 || r_max == 0 {
            return Err(AlgebraError::InvalidParameter("table bounds must be at least 1".into()));
        }
        let formula = resurgence_formula(self.s, self.c)?;
        let mut table = Vec::with_capacity(m_max * r_max);
        for m in 1..=m_max {
            let gens = self.symbolic_min_gens(m);
            for r in 1..=r_max {
                table.push(self.containment_from(&gens, m, r));
            }
        }
        let ratio = |c: &Containment| Rational::new(c.m as i64, c.r as i64);
        let failing = table.iter().filter(|c| !c.contained);
        let sup = failing.clone().map(|c| (ratio(c), c.m, c.r)).max_by(|x, y| x.0.cmp(&y.0));
        let lower = sup.as_ref().map(|x| x.0.clone());
        // smallest ratio above every observed failure
        let upper = table
            .iter()
            .filter(|c| c.contained)
            .map(ratio)
            .filter(|q| lower.as_ref().is_none_or(|l| q > l))
            .min();
        let failures_at_or_above_formula = failing.clone().filter(|c| ratio(c) >= formula).count();
        let max_failure_ratio_within_s = failing.clone().all(|c| ratio(c) <= Rational::from_integer(self.s as i64));
        let gap = lower.as_ref().map(|l| formula.sub(l));
        Ok(ResurgenceReport {
            model: *self,
            m_max,
            r_max,
            formula,
            sup_failing_ratio: lower,
            sup_witness: sup.map(|(_, m, r)| (m, r)),
            smallest_contained_ratio_above: upper,
            gap_below_formula: gap,
            failures_at_or_above_formula,
            failure_ratios_at_most_s: max_failure_ratio_within_s,
            table,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Containment {
    pub m: usize,
    pub r: usize,
    pub contained: bool,
    pub witness: Option<Monomial>,
}

/// Containment table and the interval it pins the resurgence into.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResurgenceReport {
    pub model: MonomialStarModel,
    pub m_max: usize,
    pub r_max: usize,
    pub formula: Rational,
    /// Largest `m/r` with `I^{(m)} ⊄ I^r` in the table.
    pub sup_failing_ratio: Option<Rational>,
    pub sup_witness: Option<(usize, usize)>,
    pub smallest_contained_ratio_above: Option<Rational>,
    /// `formula - sup_failing_ratio`.
    pub gap_below_formula: Option<Rational>,
    pub failures_at_or_above_formula: usize,
    pub failure_ratios_at_most_s: bool,
    pub table: Vec<Containment>,
}

impl ResurgenceReport {
    /// No failure at or above the formula, and the best failure lies within
    /// `1 / r_max` of it.
    pub fn corroborates_formula(&self) -> bool {
        let tol = Rational::new(1, self.r_max as i64);
        self.failures_at_or_above_formula == 0
            && self.gap_below_formula.as_ref().is_some_and(|g| *g <= tol)
    }
}

/// `ρ(I(V_c)) = c(s - c + 1) / s`.
pub fn resurgence_formula(s: usize, c: usize) -> Result<Rational> {
    if c == 0 || c >= s {
        return Err(AlgebraError::InvalidParameter(format!("need 1 <= c <= s - 1, got s = {s}, c = {c}")));
    }
    Ok(Rational::new((c * (s - c + 1)) as i64, s as i64))
}

/// Containment in the coordinate model against the same containment in a
/// generic arrangement, checked degreewise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiTransfer {
    pub m: usize,
    pub r: usize,
    pub monomial_contained: bool,
    pub generic_contained: bool,
    pub agree: bool,
    pub degree_bound: usize,
    /// Images of the monomial generators of `I'^{(m)}` lie in `I^{(m)}`
    /// (checked for images of degree `<= degree_bound`).
    pub images_in_symbolic: bool,
    /// The bound reaches the largest minimal generator degree of `I^{(m)}`.
    pub certified: bool,
    pub max_generator_degree: usize,
}

/// `z_i -> l_{i+1}` sends `z^t` to `l_1^{t_0} ... l_s^{t_{s-1}}`.
pub fn phi_image<F: Scalar>(arrangement: &FormCollection<F>, t: &[u32]) -> Poly<F> {
    let field = arrangement.field();
    let forms = arrangement.linear_polys();
    t.iter()
        .zip(&forms)
        .fold(Poly::one(field, arrangement.nvars()), |acc, (&k, l)| if k == 0 { acc } else { acc.mul(&l.pow(k)) })
}

pub fn phi_transfer_check<F: Scalar>(
    config: &StarConfig<F>,
    m: usize,
    r: usize,
    bound: usize,
) -> Result<PhiTransfer> {
    if m == 0 || r == 0 {
        return Err(AlgebraError::InvalidParameter("m and r must be at least 1".into()));
    }
    let model = MonomialStarModel::new(config.s(), config.c())?;
    let gens = model.symbolic_min_gens(m);
    let mono = model.containment_from(&gens, m, r);
    let max_generator_degree =
        gens.iter().map(|t| t.iter().map(|&e| e as usize).sum::<usize>()).max().unwrap_or(0);
    let mut symbolic = config.symbolic_power(m)?.evaluator()?;
    let power = PieceCache::new(config.ordinary_power(r)?);
    let check = compare_degreewise(
        bound,
        Relation::Contained,
        Hypothesis::Satisfied,
        |d| Ok(symbolic.piece(d)),
        |d| Ok((*power.get(d)).clone()),
    )?;
    let mut images_in_symbolic = true;
    for t in &gens {
        let deg = t.iter().map(|&e| e as usize).sum::<usize>();
        if deg <= bound {
            let img = phi_image(config.arrangement(), t);
            images_in_symbolic &= symbolic.piece(deg).contains_poly(&img)?;
        }
    }
    Ok(PhiTransfer {
        m,
        r,
        monomial_contained: mono.contained,
        generic_contained: check.holds,
        agree: mono.contained == check.holds,
        degree_bound: bound,
        images_in_symbolic,
        certified: bound >= max_generator_degree,
        max_generator_degree,
    })
}
