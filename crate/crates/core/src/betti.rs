//! Graded Betti numbers of `R/I` from Koszul homology.
//!
//! `β_{i,j}(R/I)` is the dimension of the homology at `Λ^i V ⊗ (R/I)_{j-i}`
//! of the Koszul complex on the variables. `(R/I)_d` is represented by the
//! monomials outside the pivots of the row-reduced `I_d`, and multiplication
//! by a variable is followed by reduction to that normal form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::decomp::saturation_oracle;
use crate::error::{AlgebraError, Result};
use crate::linalg::{rank, Field, Matrix, Scalar};
use crate::poly::{binomial, min_gen_degrees, monomial_basis, ExponentVector, GeneratorSet, GradedPiece, PieceCache};
use crate::sigma::subsets;

/// `β_{i,j}` for `i <= i_max`, `j <= degree_bound`; only nonzero entries are stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub nvars: usize,
    pub i_max: usize,
    pub degree_bound: usize,
    /// `(i, j, β_{i,j})`, sorted.
    pub entries: Vec<(usize, usize, usize)>,
}

impl BettiTable {
    fn from_map(nvars: usize, i_max: usize, degree_bound: usize, map: BTreeMap<(usize, usize), usize>) -> Self {
        let entries = map.into_iter().filter(|&(_, b)| b > 0).map(|((i, j), b)| (i, j, b)).collect();
        BettiTable { nvars, i_max, degree_bound, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries.iter().find(|e| e.0 == i && e.1 == j).map_or(0, |e| e.2)
    }

    /// Largest `j - i` over nonzero entries.
    pub fn observed_regularity(&self) -> usize {
        self.entries.iter().map(|&(i, j, _)| j - i).max().unwrap_or(0)
    }

    /// Every row up to `n + 1` is present and the bound reaches one diagonal
    /// past the observed regularity in every row.
    pub fn is_certified(&self) -> bool {
        self.i_max >= self.nvars && self.degree_bound > self.observed_regularity() + self.nvars
    }

    /// Rows `i`, columns `j - i`, as in the usual Betti diagram.
    pub fn diagram(&self) -> Vec<Vec<usize>> {
        let width = self.observed_regularity() + 1;
        let mut rows = vec![vec![0; width]; self.i_max + 1];
        for &(i, j, b) in &self.entries {
            rows[i][j - i] = b;
        }
        rows
    }
}

/// Regularity of `R/I`; refuses tables that do not certify it.
pub fn regularity(table: &BettiTable) -> Result<usize> {
    if !table.is_certified() {
        return Err(AlgebraError::UncertifiedTable(format!(
            "rows up to {} and degrees up to {} do not cover regularity {} in {} variables",
            table.i_max,
            table.degree_bound,
            table.observed_regularity(),
            table.nvars
        )));
    }
    Ok(table.observed_regularity())
}

/// `(R/I)_d`: standard monomials and normal forms of shifted monomials.
struct QuotientSlice<F: Scalar> {
    /// Basis monomials (free columns of the row-reduced `I_d`).
    standard: Vec<ExponentVector>,
    /// Position of each monomial of `R_d` among the standard ones, or the
    /// negated reducer row restricted to standard monomials.
    normal_forms: Vec<Vec<(usize, F)>>,
}

fn quotient_slice<F: Scalar>(piece: &GradedPiece<F>) -> QuotientSlice<F> {
    let n = piece.nvars();
    let basis = monomial_basis(n, piece.degree());
    let space = piece.space();
    let free = space.free_columns();
    let mut pos = vec![usize::MAX; basis.len()];
    for (k, &f) in free.iter().enumerate() {
        pos[f] = k;
    }
    let mut normal_forms: Vec<Vec<(usize, F)>> = vec![Vec::new(); basis.len()];
    for &f in &free {
        normal_forms[f] = vec![(pos[f], F::one(space.field()))];
    }
    for (row, &p) in space.basis().row_iter().zip(space.pivots()) {
        normal_forms[p] = free
            .iter()
            .filter(|&&f| !row[f].is_zero())
            .map(|&f| (pos[f], row[f].neg()))
            .collect();
    }
    let standard = free.iter().map(|&f| basis.get(f).clone()).collect();
    QuotientSlice { standard, normal_forms }
}

/// Koszul differential `Λ^i V ⊗ Q_d -> Λ^{i-1} V ⊗ Q_{d+1}`.
fn koszul_matrix<F: Scalar>(
    field: Field,
    nvars: usize,
    i: usize,
    src: &QuotientSlice<F>,
    dst: &QuotientSlice<F>,
    dst_degree: usize,
) -> Matrix<F> {
    let wedges_src: Vec<Vec<usize>> = subsets(nvars, i).collect();
    let wedges_dst: Vec<Vec<usize>> = subsets(nvars, i - 1).collect();
    let dst_index: BTreeMap<&Vec<usize>, usize> = wedges_dst.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let dst_basis = monomial_basis(nvars, dst_degree);
    let qd = dst.standard.len();
    let mut m = Matrix::<F>::zeros(field, wedges_dst.len() * qd, wedges_src.len() * src.standard.len());
    for (ws, wedge) in wedges_src.iter().enumerate() {
        for (t, &k) in wedge.iter().enumerate() {
            let mut rest = wedge.clone();
            rest.remove(t);
            let wd = dst_index[&rest];
            let sign = if t % 2 == 0 { F::one(field) } else { F::one(field).neg() };
            for (a, mono) in src.standard.iter().enumerate() {
                let shifted = dst_basis.index_of(&mono.times_var(k)).expect("in basis");
                let col = ws * src.standard.len() + a;
                for (b, c) in &dst.normal_forms[shifted] {
                    let row = wd * qd + b;
                    let v = m.get(row, col).add(&sign.mul(c));
                    m.set(row, col, v);
                }
            }
        }
    }
    m
}

/// Betti table of `R/I` for `i <= i_max`, `j <= bound`, with the Euler
/// characteristic identity checked in every internal degree.
pub fn koszul_tor_dims<F: Scalar>(gens: &GeneratorSet<F>, i_max: usize, bound: usize) -> Result<BettiTable> {
    let cache = PieceCache::new(gens.clone());
    koszul_from_pieces(gens.field(), gens.nvars(), |d| (*cache.get(d)).clone(), i_max, bound)
}

pub fn koszul_from_pieces<F: Scalar>(
    field: Field,
    nvars: usize,
    mut piece: impl FnMut(usize) -> GradedPiece<F>,
    i_max: usize,
    bound: usize,
) -> Result<BettiTable> {
    if i_max > nvars {
        return Err(AlgebraError::InvalidParameter(format!("homological index {i_max} exceeds {nvars}")));
    }
    let slices: Vec<QuotientSlice<F>> = (0..=bound + 1).map(|d| quotient_slice(&piece(d))).collect();
    let mut map = BTreeMap::new();
    for j in 0..=bound {
        // strand j: C_i = Λ^i ⊗ Q_{j-i}, i = 0..=min(nvars, j)
        let top = nvars.min(j);
        let dims: Vec<usize> = (0..=top).map(|i| binomial(nvars, i) * slices[j - i].standard.len()).collect();
        // ranks[i] = rank of C_i -> C_{i-1}
        let mut ranks = vec![0usize; top + 2];
        for i in 1..=top {
            if dims[i] == 0 || dims[i - 1] == 0 {
                continue;
            }
            let m = koszul_matrix(field, nvars, i, &slices[j - i], &slices[j - i + 1], j - i + 1);
            ranks[i] = rank(&m)?;
        }
        let mut euler_chain = 0i64;
        let mut euler_betti = 0i64;
        for i in 0..=top {
            let beta = dims[i] - ranks[i] - ranks[i + 1];
            let sign = if i % 2 == 0 { 1 } else { -1 };
            euler_chain += sign * dims[i] as i64;
            euler_betti += sign * beta as i64;
            if i <= i_max {
                map.insert((i, j), beta);
            }
        }
        if euler_chain != euler_betti {
            return Err(AlgebraError::InvalidParameter(format!("Euler characteristic mismatch in degree {j}")));
        }
    }
    Ok(BettiTable::from_map(nvars, i_max, bound, map))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionVerdict {
    pub generated_degree: usize,
    pub regularity: usize,
    pub is_linear: bool,
    pub certified: bool,
    pub i_max: usize,
    pub degree_bound: usize,
    /// `I = I^sat ∩ M^a` in degrees `<= degree_bound`.
    pub saturation_consistent: bool,
    pub table: BettiTable,
}

/// Linear-resolution verdict for an ideal generated in a single degree `a`:
/// `β_{i,j} = 0` unless `j = a + i - 1` (for `i >= 1`).
pub fn is_linear_resolution<F: Scalar>(gens: &GeneratorSet<F>, bound: usize) -> Result<ResolutionVerdict> {
    let degrees = min_gen_degrees(gens, bound.max(gens.max_degree().unwrap_or(0)))?;
    if !degrees.equigenerated || degrees.counts.is_empty() {
        return Err(AlgebraError::NotEquigenerated(degrees.degrees()));
    }
    let a = degrees.degrees()[0];
    let nvars = gens.nvars();
    let cache = PieceCache::new(gens.clone());
    let table = koszul_from_pieces(gens.field(), nvars, |d| (*cache.get(d)).clone(), nvars, bound)?;
    let is_linear = table.entries.iter().all(|&(i, j, _)| i == 0 || j + 1 == a + i);
    let sat = saturation_oracle(|d| (*cache.get(d)).clone(), gens.field(), nvars, bound)?;
    let saturation_consistent = (0..=bound).all(|d| {
        let expected = if d < a { 0 } else { sat.pieces[d].dim() };
        cache.get(d).dim() == expected && (d < a || sat.pieces[d] == *cache.get(d))
    });
    Ok(ResolutionVerdict {
        generated_degree: a,
        regularity: table.observed_regularity(),
        certified: table.is_certified(),
        is_linear,
        i_max: nvars,
        degree_bound: bound,
        saturation_consistent,
        table,
    })
}

/// Betti numbers of a squarefree monomial ideal from reduced homology of
/// induced subcomplexes of its Stanley–Reisner complex:
/// `β_{i,j} = Σ_{|W| = j} dim H̃_{j-i-1}(Δ_W)`.
pub fn hochster_oracle<F: Scalar>(gens: &GeneratorSet<F>, i_max: usize, bound: usize) -> Result<BettiTable> {
    let nvars = gens.nvars();
    let field = gens.field();
    let mut minimal_nonfaces: Vec<u32> = Vec::new();
    for (p, _) in gens.iter() {
        let mut terms = p.terms();
        let (e, _) = terms.next().expect("nonzero generator");
        if terms.next().is_some() || !e.is_squarefree() {
            return Err(AlgebraError::NotSquarefree);
        }
        minimal_nonfaces.push(e.support().iter().fold(0u32, |acc, &v| acc | (1 << v)));
    }
    if nvars > 20 {
        return Err(AlgebraError::InvalidParameter("too many variables for subset enumeration".into()));
    }
    // a face contains no minimal nonface
    let is_face = |f: u32| minimal_nonfaces.iter().all(|&g| g & !f != 0);
    let mut map: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for w in 0u32..(1 << nvars) {
        let j = w.count_ones() as usize;
        if j > bound {
            continue;
        }
        // faces of Δ_W grouped by size (size k is dimension k - 1)
        let mut faces: Vec<Vec<u32>> = vec![Vec::new(); j + 1];
        let mut f = w;
        loop {
            if is_face(f) {
                faces[f.count_ones() as usize].push(f);
            }
            if f == 0 {
                break;
            }
            f = (f - 1) & w;
        }
        for v in &mut faces {
            v.sort_unstable();
        }
        // boundary rank from size k to size k - 1
        let boundary_rank = |k: usize| -> Result<usize> {
            if k == 0 || k > j || faces[k].is_empty() || faces[k - 1].is_empty() {
                return Ok(0);
            }
            let idx: BTreeMap<u32, usize> = faces[k - 1].iter().enumerate().map(|(i, &g)| (g, i)).collect();
            let mut m = Matrix::<F>::zeros(field, faces[k - 1].len(), faces[k].len());
            for (col, &face) in faces[k].iter().enumerate() {
                let verts: Vec<u32> = (0..nvars as u32).filter(|v| face & (1 << v) != 0).collect();
                for (t, &v) in verts.iter().enumerate() {
                    let sign = if t % 2 == 0 { F::one(field) } else { F::one(field).neg() };
                    m.set(idx[&(face & !(1 << v))], col, sign);
                }
            }
            rank(&m)
        };
        // H̃ in dimension q = size q + 1
        for i in 0..=i_max.min(j) {
            let size = j - i;
            let nk = faces[size].len();
            let h = nk as i64 - boundary_rank(size)? as i64 - boundary_rank(size + 1)? as i64;
            if h > 0 {
                *map.entry((i, j)).or_insert(0) += h as usize;
            }
        }
    }
    Ok(BettiTable::from_map(nvars, i_max, bound, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fold::FoldIdeal;
    use crate::linalg::Rational;
    use crate::poly::Poly;
    use crate::sigma::FormCollection;

    const Q: Field = Field::Rational;

    fn monomials(nvars: usize, exps: &[&[u32]]) -> GeneratorSet<Rational> {
        let polys = exps
            .iter()
            .map(|e| Poly::monomial(Q, ExponentVector::new(e.to_vec()), Rational::from_integer(1)))
            .collect();
        GeneratorSet::new(Q, nvars, polys).unwrap()
    }

    #[test]
    fn zero_ideal() {
        let t = koszul_tor_dims(&GeneratorSet::<Rational>::empty(Q, 3), 3, 5).unwrap();
        assert_eq!(t.entries, vec![(0, 0, 1)]);
    }

    #[test]
    fn maximal_ideal_is_koszul() {
        let m = GeneratorSet::<Rational>::maximal_power(Q, 3, 1);
        let t = koszul_tor_dims(&m, 3, 6).unwrap();
        for i in 0..=3 {
            assert_eq!(t.get(i, i), binomial(3, i));
        }
        assert_eq!(t.entries.len(), 4);
    }

    #[test]
    fn three_points() {
        let g = monomials(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        let t = koszul_tor_dims(&g, 3, 6).unwrap();
        assert_eq!(t.entries, vec![(0, 0, 1), (1, 2, 3), (2, 3, 2)]);
        assert_eq!(hochster_oracle(&g, 3, 6).unwrap(), t);
    }

    #[test]
    fn maximal_ideal_by_hochster() {
        let g = monomials(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(hochster_oracle(&g, 3, 5).unwrap(), koszul_tor_dims(&g, 3, 5).unwrap());
    }

    #[test]
    fn principal_squarefree() {
        let g = monomials(3, &[&[1, 1, 1]]);
        let t = hochster_oracle(&g, 3, 5).unwrap();
        assert_eq!(t.entries, vec![(0, 0, 1), (1, 3, 1)]);
        assert_eq!(koszul_tor_dims(&g, 3, 5).unwrap(), t);
    }

    #[test]
    fn regularity_examples() {
        let ci = monomials(2, &[&[2, 0], &[0, 2]]);
        let t = koszul_tor_dims(&ci, 2, 6).unwrap();
        assert_eq!(t.get(2, 4), 1);
        assert_eq!(regularity(&t).unwrap(), 2);
        let short = koszul_tor_dims(&ci, 2, 4).unwrap();
        assert!(matches!(regularity(&short), Err(AlgebraError::UncertifiedTable(_))));
        let m3 = GeneratorSet::<Rational>::maximal_power(Q, 3, 3);
        assert_eq!(regularity(&koszul_tor_dims(&m3, 3, 8).unwrap()).unwrap(), 2);
    }

    #[test]
    fn star_of_six_points_is_linear() {
        let c = FormCollection::<Rational>::from_i64(
            Q,
            &[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1), (&[1, 1, 1], 1)],
        )
        .unwrap();
        let i3 = FoldIdeal::new(c, 3);
        let v = is_linear_resolution(i3.generators(), 7).unwrap();
        assert!(v.is_linear && v.certified && v.saturation_consistent);
        assert_eq!(v.regularity, 2);
        assert_eq!(v.table.get(1, 3), 4);
        assert_eq!(v.table.get(2, 4), 3);
    }

    #[test]
    fn not_equigenerated_is_refused() {
        let g = monomials(2, &[&[2, 0], &[1, 1], &[0, 3]]);
        assert!(matches!(is_linear_resolution(&g, 6), Err(AlgebraError::NotEquigenerated(_))));
    }

    #[test]
    fn non_squarefree_refused_by_oracle() {
        let g = monomials(2, &[&[2, 0]]);
        assert!(matches!(hochster_oracle(&g, 2, 4), Err(AlgebraError::NotSquarefree)));
    }

    #[test]
    fn first_row_matches_generator_counts() {
        let g = monomials(4, &[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1], &[1, 0, 0, 1]]);
        let t = koszul_tor_dims(&g, 4, 7).unwrap();
        let mg = min_gen_degrees(&g, 7).unwrap();
        for (d, k) in mg.counts {
            assert_eq!(t.get(1, d), k);
        }
        assert_eq!(hochster_oracle(&g, 4, 7).unwrap(), t);
    }

    #[test]
    fn diagram_layout() {
        let g = monomials(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        let t = koszul_tor_dims(&g, 3, 6).unwrap();
        assert_eq!(t.diagram(), vec![vec![1, 0], vec![0, 3], vec![0, 2], vec![0, 0]]);
    }
}
