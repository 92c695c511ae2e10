use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// Exponents of a monomial `x_0^{e_0} ... x_n^{e_n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exps: Vec<u32>) -> Self {
        ExponentVector(exps)
    }

    pub fn zero(nvars: usize) -> Self {
        ExponentVector(vec![0; nvars])
    }

    pub fn unit(nvars: usize, i: usize) -> Self {
        let mut v = vec![0; nvars];
        v[i] = 1;
        ExponentVector(v)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn times_var(&self, i: usize) -> ExponentVector {
        let mut v = self.0.clone();
        v[i] += 1;
        ExponentVector(v)
    }

    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// Variables appearing with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect()
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Graded reverse lexicographic comparison of monomials.
pub fn grevlex_cmp(a: &ExponentVector, b: &ExponentVector) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.0.len()).rev() {
        if a.0[i] != b.0[i] {
            // smaller exponent in the last differing variable is larger
            return b.0[i].cmp(&a.0[i]);
        }
    }
    Ordering::Equal
}

/// The monomials of one degree, in decreasing grevlex order, with a lookup table.
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    nvars: usize,
    degree: usize,
    monomials: Vec<ExponentVector>,
    index: HashMap<ExponentVector, usize>,
}

impl MonomialBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[ExponentVector] {
        &self.monomials
    }

    pub fn get(&self, i: usize) -> &ExponentVector {
        &self.monomials[i]
    }

    pub fn index_of(&self, e: &ExponentVector) -> Option<usize> {
        self.index.get(e).copied()
    }
}

fn fill(nvars: usize, pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
    if pos + 1 == nvars {
        cur.push(left);
        out.push(ExponentVector(cur.clone()));
        cur.pop();
        return;
    }
    for e in (0..=left).rev() {
        cur.push(e);
        fill(nvars, pos + 1, left - e, cur, out);
        cur.pop();
    }
}

/// All `C(d + nvars - 1, nvars - 1)` monomials of degree `d` in `nvars` variables.
pub fn monomial_basis(nvars: usize, d: usize) -> MonomialBasis {
    let mut monomials = Vec::with_capacity(binomial(d + nvars.saturating_sub(1), d));
    if nvars == 0 {
        if d == 0 {
            monomials.push(ExponentVector(Vec::new()));
        }
    } else {
        fill(nvars, 0, d as u32, &mut Vec::with_capacity(nvars), &mut monomials);
    }
    monomials.sort_by(|a, b| grevlex_cmp(b, a));
    let index = monomials.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    MonomialBasis { nvars, degree: d, monomials, index }
}

/// Binomial coefficient with `C(n, k) = 0` for `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes() {
        assert_eq!(monomial_basis(3, 0).len(), 1);
        assert_eq!(monomial_basis(3, 0).get(0), &ExponentVector::zero(3));
        assert_eq!(monomial_basis(3, 2).len(), 6);
        assert_eq!(monomial_basis(4, 5).len(), 56);
    }

    #[test]
    fn grevlex_order_in_three_variables() {
        let b = monomial_basis(3, 2);
        let got: Vec<Vec<u32>> = b.monomials().iter().map(|e| e.0.clone()).collect();
        assert_eq!(
            got,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![0, 2, 0],
                vec![1, 0, 1],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 3), 56);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
    }
}
