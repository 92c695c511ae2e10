mod common;

use common::*;
use starfold::betti::is_linear_resolution;
use starfold::decomp::{closure_nu, primary_decomposition};
use starfold::fold::FoldIdeal;
use starfold::linalg::{Rational, RowSpace};
use starfold::poly::{GeneratorSet, GradedPiece, PieceCache};
use starfold::sigma::subsets;
use starfold::star::{resurgence_formula, MonomialStarModel, StarConfig};

#[test]
fn first_weight_of_generic_collections() {
    for nvars in 3..=4 {
        let sigma = coordinate_plus_sum(nvars);
        let w = sigma.generalized_hamming_weights().unwrap();
        assert_eq!(w[0], sigma.total() - (nvars - 1));
        assert_eq!(*w.last().unwrap(), sigma.total());
        let heights = sigma.height_profile().unwrap();
        for a in 1..=w[0] {
            assert_eq!(heights[&a], nvars);
        }
    }
}

#[test]
fn small_fold_ideals_are_maximal_powers() {
    let sigma = coordinate_plus_sum(4);
    let d1 = sigma.generalized_hamming_weights().unwrap()[0];
    for a in 1..=d1 {
        let ideal = FoldIdeal::new(sigma.clone(), a);
        let power = PieceCache::new(GeneratorSet::<Rational>::maximal_power(Q, 4, a));
        for d in 0..=a + 2 {
            assert_eq!(*ideal.piece(d), *power.get(d), "a = {a}, d = {d}");
        }
    }
}

#[test]
fn top_fold_is_principal() {
    let sigma = mixed_four();
    let ideal = FoldIdeal::new(sigma.clone(), sigma.total());
    assert_eq!(ideal.compositions(), &[sigma.multiplicities()]);
    let v = is_linear_resolution(ideal.generators(), sigma.total() + 4).unwrap();
    assert!(v.is_linear);
    assert_eq!(v.table.entries, vec![(0, 0, 1), (1, sigma.total(), 1)]);
}

#[test]
fn nu_of_the_maximal_ideal() {
    for sigma in [mixed_four(), four_lines(), coordinate_plus_sum(4)] {
        assert_eq!(closure_nu(&sigma, &RowSpace::full(Q, sigma.nvars())).1, sigma.total());
    }
}

/// Components of `I_{m(s-c+1)}` of the m-fold arrangement: every `j`-subset
/// with `c <= j <= n` at exponent `m(j-c+1)`, plus `M^{m(s-c+1)}`.
#[test]
fn star_components_of_fold_ideals() {
    let arrangement = coordinate_plus_sum(4);
    let (s, n) = (5, 3);
    for c in 1..=n {
        for m in 1..=2 {
            let sigma = arrangement.with_multiplicities(&vec![m; s]).unwrap();
            let dec = primary_decomposition(&sigma, m * (s - c + 1)).unwrap();
            let mut expected = Vec::new();
            for j in c..=n {
                for sub in subsets(s, j) {
                    expected.push((sub, m * (j - c + 1)));
                }
            }
            expected.push(((0..s).collect(), m * (s - c + 1)));
            let got: Vec<(Vec<usize>, usize)> =
                dec.summary().into_iter().map(|x| (x.support, x.exponent)).collect();
            assert_eq!(got, expected, "c = {c}, m = {m}");
        }
    }
}

#[test]
fn coordinate_star_is_squarefree_fold() {
    for nvars in 2..=4 {
        for c in 1..nvars {
            let config = StarConfig::new(coordinates(nvars), c).unwrap();
            let ideal = config.star_ideal();
            assert_eq!(ideal.a(), nvars - c + 1);
            for p in ideal.generators().polys() {
                let (e, _) = p.terms().next().unwrap();
                assert_eq!(p.num_terms(), 1);
                assert!(e.is_squarefree());
            }
            let v = is_linear_resolution(ideal.generators(), nvars + 4).unwrap();
            assert!(v.is_linear && v.certified);
        }
    }
}

#[test]
fn codimension_one_star_is_principal() {
    let config = StarConfig::new(coordinate_plus_sum(3), 1).unwrap();
    assert_eq!(config.star_ideal().generators().len(), 1);
}

#[test]
fn first_power_decomposition_is_the_ideal() {
    for c in 1..=3 {
        let config = StarConfig::new(coordinate_plus_sum(4), c).unwrap();
        let ideal = config.star_ideal();
        for d in 0..=config.default_bound(1) {
            let rhs: GradedPiece<Rational> = config.power_decomposition_piece(1, d).unwrap();
            assert_eq!(*ideal.piece(d), rhs, "c = {c}, d = {d}");
        }
    }
}

#[test]
fn resurgence_formula_values() {
    assert_eq!(resurgence_formula(4, 2).unwrap(), Rational::new(3, 2));
    assert_eq!(resurgence_formula(5, 3).unwrap(), Rational::new(9, 5));
    for (s, c) in [(4, 2), (5, 3), (5, 2), (6, 3)] {
        let report = MonomialStarModel::new(s, c).unwrap().resurgence_search(10, 6).unwrap();
        assert_eq!(report.failures_at_or_above_formula, 0);
        assert!(report.failure_ratios_at_most_s);
    }
}

#[test]
fn maximal_powers_resolve_linearly() {
    for a in 1..=4 {
        let v = is_linear_resolution(&GeneratorSet::<Rational>::maximal_power(Q, 3, a), a + 4).unwrap();
        assert!(v.is_linear && v.certified);
        assert_eq!(v.regularity, a - 1);
    }
}
