//! Quotients of a free Lie algebra by `[e_i, e_j] = 0` for isotropic pairs,
//! computed degree by degree, and the comparison with the decomposition
//! `n+ = g_J+ ⊕ L(U+)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::lyndon::{lyndon_dims, BracketElement, GeneratorAlphabet};
use super::{unit, witt_dims, Degree, DegreeBound, GradedDimTable};
use crate::error::{Error, Result};
use crate::linalg::Echelon;

/// Every word with letter counts `d`, in lexicographic order.
pub(crate) fn words_of_degree(d: &[u64]) -> Vec<Vec<u8>> {
    fn rec(prefix: &mut Vec<u8>, left: &mut [u64], out: &mut Vec<Vec<u8>>) {
        if left.iter().all(|&x| x == 0) {
            out.push(prefix.clone());
            return;
        }
        for i in 0..left.len() {
            if left[i] > 0 {
                left[i] -= 1;
                prefix.push(i as u8);
                rec(prefix, left, out);
                prefix.pop();
                left[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut d.to_vec(), &mut out);
    out
}

/// Checks the hypotheses on `A` (square, symmetric, nonpositive diagonal,
/// `a_ij = 0` exactly on the isotropic block) and returns the isotropic
/// flags `a_ii = 0`.
pub fn isotropic_set(a: &[Vec<i64>]) -> Result<Vec<bool>> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::Hypothesis("matrix is not square".into()));
    }
    let iso: Vec<bool> = (0..n).map(|i| a[i][i] == 0).collect();
    for i in 0..n {
        if a[i][i] > 0 {
            return Err(Error::Hypothesis(format!(
                "diagonal entry a[{0}][{0}] = {1} is positive",
                i + 1,
                a[i][i]
            )));
        }
        for j in 0..n {
            if a[i][j] != a[j][i] {
                return Err(Error::Hypothesis(format!(
                    "not symmetric at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
            if i != j && (a[i][j] == 0) != (iso[i] && iso[j]) {
                return Err(Error::Hypothesis(format!(
                    "a[{}][{}] = {} breaks the zero pattern",
                    i + 1,
                    j + 1,
                    a[i][j]
                )));
            }
        }
    }
    Ok(iso)
}

fn check_j(a: &[Vec<i64>], j: &[usize]) -> Result<Vec<bool>> {
    let iso = isotropic_set(a)?;
    let mut given = vec![false; a.len()];
    for &x in j {
        *given
            .get_mut(x)
            .ok_or_else(|| Error::Hypothesis(format!("index {} is out of range", x + 1)))? = true;
    }
    if given != iso {
        return Err(Error::Hypothesis(
            "J must be exactly the indices with a_ii = 0".into(),
        ));
    }
    Ok(iso)
}

/// Graded dimensions of `L(e_1, …, e_r) / ([e_i, e_j] : i, j ∈ J)`.
///
/// The ideal is built one degree at a time: in degree `d` it is spanned by
/// the relations of degree `d` together with `[e_x, b]` for `b` in the
/// ideal in degree `d - e_x`. Its rank is found by exact elimination on
/// word coordinates and subtracted from the Lyndon count.
pub fn zero_block_quotient_dims(
    a: &[Vec<i64>],
    j: &[usize],
    bound: &DegreeBound,
) -> Result<GradedDimTable> {
    let iso = check_j(a, j)?;
    let rank = a.len();
    let free = lyndon_dims(&GeneratorAlphabet::with_isotropic(iso.clone()), bound);
    let mut ideal: BTreeMap<Degree, Vec<BracketElement>> = BTreeMap::new();
    let mut out = GradedDimTable::new(rank);
    for d in bound.degrees(rank) {
        let index: BTreeMap<Vec<u8>, usize> = words_of_degree(&d)
            .into_iter()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let mut candidates = Vec::new();
        let support: Vec<usize> = (0..rank).filter(|&i| d[i] > 0).collect();
        if d.iter().sum::<u64>() == 2 && support.len() == 2 && support.iter().all(|&i| iso[i]) {
            let (x, y) = (support[0] as u8, support[1] as u8);
            candidates.push(BracketElement::letter(x).bracket(&BracketElement::letter(y)));
        }
        for &x in &support {
            let mut prev = d.clone();
            prev[x] -= 1;
            if let Some(basis) = ideal.get(&prev) {
                let e = BracketElement::letter(x as u8);
                candidates.extend(basis.iter().map(|b| e.bracket(b)));
            }
        }
        let mut ech = Echelon::new();
        let mut basis = Vec::new();
        for c in candidates {
            if ech.insert(c.coordinates(&index)) {
                basis.push(c);
            }
        }
        let dim = free.get(&d) - BigInt::from(ech.rank());
        out.set(d.clone(), dim);
        if !basis.is_empty() {
            ideal.insert(d, basis);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct EliminationReport {
    pub isotropic: Vec<bool>,
    /// Dimensions of the quotient, computed directly.
    pub quotient: GradedDimTable,
    /// Generator degrees of `U+`: `e_i + v` for `i ∉ J`, `v` supported on `J`.
    pub u_plus: GradedDimTable,
    /// `g_J+` (one dimension per isotropic unit degree) plus `L(U+)`.
    pub predicted: GradedDimTable,
    /// `(degree, quotient, predicted)` wherever they differ.
    pub mismatches: Vec<(Degree, BigInt, BigInt)>,
    /// Degrees where the nonzero pattern disagrees with the root-set rule.
    pub support_mismatches: Vec<Degree>,
}

impl EliminationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.support_mismatches.is_empty()
    }
}

/// Whether `d` is a positive root by the set-difference rule: a unit degree
/// in `J`, or any degree touching `I - J` except `t·e_i` with `t >= 2`.
fn predicted_root(d: &[u64], iso: &[bool]) -> bool {
    let total: u64 = d.iter().sum();
    let support: Vec<usize> = (0..d.len()).filter(|&i| d[i] > 0).collect();
    if total == 1 {
        return true;
    }
    let touches_free = support.iter().any(|&i| !iso[i]);
    let multiple_of_unit = support.len() == 1;
    touches_free && !multiple_of_unit
}

pub fn elimination_check(a: &[Vec<i64>], j: &[usize], bound: &DegreeBound) -> Result<EliminationReport> {
    let quotient = zero_block_quotient_dims(a, j, bound)?;
    let iso = check_j(a, j)?;
    let rank = a.len();
    let mut u_plus = GradedDimTable::new(rank);
    for d in bound.degrees(rank) {
        let free: Vec<usize> = (0..rank).filter(|&i| !iso[i] && d[i] > 0).collect();
        if free.len() == 1 && d[free[0]] == 1 {
            u_plus.set(d, BigInt::one());
        }
    }
    let mut predicted = witt_dims(&u_plus, bound)?;
    for i in (0..rank).filter(|&i| iso[i]) {
        predicted.add(unit(rank, i), &BigInt::one());
    }
    let mismatches = quotient.differences(&predicted);
    let support_mismatches = bound
        .degrees(rank)
        .into_iter()
        .filter(|d| predicted_root(d, &iso) != !quotient.get(d).is_zero())
        .collect();
    Ok(EliminationReport {
        isotropic: iso,
        quotient,
        u_plus,
        predicted,
        mismatches,
        support_mismatches,
    })
}

/// A random matrix satisfying the hypotheses, with its isotropic set.
/// Deterministic in `seed`.
pub fn random_admissible(size: usize, seed: u64) -> (Vec<Vec<i64>>, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let iso: Vec<bool> = (0..size).map(|_| rng.gen_bool(0.5)).collect();
    let mut a = vec![vec![0i64; size]; size];
    for i in 0..size {
        if !iso[i] {
            a[i][i] = -rng.gen_range(1..=4);
        }
        for k in i + 1..size {
            if !(iso[i] && iso[k]) {
                let v = -rng.gen_range(1..=3);
                a[i][k] = v;
                a[k][i] = v;
            }
        }
    }
    let j = (0..size).filter(|&i| iso[i]).collect();
    (a, j)
}
