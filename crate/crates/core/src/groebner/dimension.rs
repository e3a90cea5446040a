//! Combinatorics of monomial ideals: dimension and standard monomials.

use alloc::vec;
use alloc::vec::Vec;

use crate::poly::Monomial;

fn supports(lms: &[Monomial]) -> Vec<u64> {
    lms.iter()
        .map(|m| m.exponents().iter().enumerate().filter(|(_, e)| **e > 0).fold(0u64, |acc, (i, _)| acc | (1 << i)))
        .collect()
}

/// A largest set of variables (as indices) containing the support of no
/// leading monomial, or `None` when some leading monomial is constant.
pub fn max_independent_set(lms: &[Monomial], nvars: usize) -> Option<Vec<usize>> {
    assert!(nvars <= 64, "too many variables for dimension count");
    let supp = supports(lms);
    if supp.contains(&0) {
        return None;
    }
    let mut best = (0u64, -1i64);
    search(&supp, nvars, 0, 0, &mut best);
    Some((0..nvars).filter(|i| best.0 & (1 << i) != 0).collect())
}

fn search(supp: &[u64], nvars: usize, var: usize, chosen: u64, best: &mut (u64, i64)) {
    let len = chosen.count_ones() as i64;
    if len + ((nvars - var) as i64) <= best.1 {
        return;
    }
    if var == nvars {
        *best = (chosen, len);
        return;
    }
    let with = chosen | (1 << var);
    if supp.iter().all(|s| s & !with != 0) {
        search(supp, nvars, var + 1, with, best);
    }
    search(supp, nvars, var + 1, chosen, best);
}

/// Krull dimension of `K[x]/I` from the leading monomials of a Gröbner basis
/// of `I`; `-1` for the unit ideal.
pub fn krull_dimension(lms: &[Monomial], nvars: usize) -> i64 {
    max_independent_set(lms, nvars).map_or(-1, |s| s.len() as i64)
}

/// Number of monomials divisible by no leading monomial, when finite and at
/// most `cap`.
pub fn standard_monomial_count(lms: &[Monomial], nvars: usize, cap: usize) -> Option<usize> {
    let mut bounds = vec![u32::MAX; nvars];
    for m in lms {
        if m.is_one() {
            return Some(0);
        }
        if let Some(v) = m.pure_power_var() {
            bounds[v] = bounds[v].min(m.exponents()[v]);
        }
    }
    if bounds.contains(&u32::MAX) {
        return None;
    }
    let mut count = 0usize;
    let mut exps = vec![0u32; nvars];
    if !walk(lms, &bounds, &mut exps, 0, &mut count, cap) {
        return None;
    }
    Some(count)
}

fn walk(lms: &[Monomial], bounds: &[u32], exps: &mut Vec<u32>, var: usize, count: &mut usize, cap: usize) -> bool {
    if var == bounds.len() {
        *count += 1;
        return *count <= cap;
    }
    for e in 0..bounds[var] {
        exps[var] = e;
        // later variables at zero give the smallest monomial with this prefix
        let probe = Monomial::from_exponents(exps.clone());
        if lms.iter().any(|m| m.divides(&probe)) {
            break;
        }
        if !walk(lms, bounds, exps, var + 1, count, cap) {
            return false;
        }
    }
    exps[var] = 0;
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn dimensions() {
        assert_eq!(krull_dimension(&[], 2), 2);
        assert_eq!(krull_dimension(&[m(&[1, 1])], 2), 1);
        assert_eq!(krull_dimension(&[m(&[2])], 1), 0);
        assert_eq!(krull_dimension(&[m(&[0, 0])], 2), -1);
        assert_eq!(krull_dimension(&[], 0), 0);
    }

    #[test]
    fn standard_monomials() {
        assert_eq!(standard_monomial_count(&[m(&[2, 0]), m(&[1, 1]), m(&[0, 3])], 2, 100), Some(4));
        assert_eq!(standard_monomial_count(&[m(&[1, 1])], 2, 100), None);
        assert_eq!(standard_monomial_count(&[], 0, 100), Some(1));
    }
}
