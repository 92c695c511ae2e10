#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use starfold::linalg::{Field, Rational};
use starfold::sigma::{build_collection, FormCollection, RawForm};

pub const Q: Field = Field::Rational;

pub fn coll(forms: &[(&[i64], usize)]) -> FormCollection<Rational> {
    FormCollection::from_i64(Q, forms).unwrap()
}

/// `((x,2),(y,1),(z,1),(x+y+z,1))`
pub fn mixed_four() -> FormCollection<Rational> {
    coll(&[(&[1, 0, 0], 2), (&[0, 1, 0], 1), (&[0, 0, 1], 1), (&[1, 1, 1], 1)])
}

/// `(x, y, z, x+y+z)`
pub fn four_lines() -> FormCollection<Rational> {
    coll(&[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1), (&[1, 1, 1], 1)])
}

/// Coordinate forms plus their sum: `n + 2` generic hyperplanes in `P^n`.
pub fn coordinate_plus_sum(nvars: usize) -> FormCollection<Rational> {
    let mut rows: Vec<Vec<i64>> = (0..nvars).map(|i| (0..nvars).map(|j| i64::from(i == j)).collect()).collect();
    rows.push(vec![1; nvars]);
    let forms: Vec<(&[i64], usize)> = rows.iter().map(|r| (r.as_slice(), 1)).collect();
    coll(&forms)
}

pub fn coordinates(nvars: usize) -> FormCollection<Rational> {
    let rows: Vec<Vec<i64>> = (0..nvars).map(|i| (0..nvars).map(|j| i64::from(i == j)).collect()).collect();
    let forms: Vec<(&[i64], usize)> = rows.iter().map(|r| (r.as_slice(), 1)).collect();
    coll(&forms)
}

/// A random collection of small-coefficient forms. With `degenerate`, one
/// form is the sum of two others, so the support is never generic once
/// `nvars >= 3`. Proportional draws that would push a multiplicity past
/// `max_mult` are rejected.
pub fn random_collection(rng: &mut StdRng, nvars: usize, s: usize, max_mult: usize, degenerate: bool) -> FormCollection<Rational> {
    loop {
        let mut rows: Vec<Vec<i64>> = Vec::new();
        while rows.len() < s {
            let v: Vec<i64> = (0..nvars).map(|_| rng.gen_range(-2..=2)).collect();
            if v.iter().any(|&x| x != 0) {
                rows.push(v);
            }
        }
        if degenerate && s >= 3 {
            rows[s - 1] = rows[0].iter().zip(&rows[1]).map(|(a, b)| a + b).collect();
            if rows[s - 1].iter().all(|&x| x == 0) {
                continue;
            }
        }
        let raw = rows
            .into_iter()
            .map(|r| {
                RawForm::new(r.into_iter().map(Rational::from_integer).collect(), rng.gen_range(1..=max_mult))
            })
            .collect();
        let c = build_collection(Q, nvars, raw).unwrap();
        if c.support_size() >= 2 && c.multiplicities().iter().all(|&m| m <= max_mult) {
            return c;
        }
    }
}
