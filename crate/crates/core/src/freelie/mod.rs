//! Free Lie algebras at desk scale: Lyndon bases, graded dimensions by
//! Möbius inversion, and quotients by the relations `[e_i, e_j] = 0` for
//! isotropic pairs.

mod lyndon;
mod quotient;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub use lyndon::{is_lyndon, lyndon_dims, lyndon_words, standard_bracket, BracketElement, GeneratorAlphabet};
pub use quotient::{
    elimination_check, isotropic_set, random_admissible, zero_block_quotient_dims, EliminationReport,
};

use crate::error::{Error, Result};
use crate::series::{coef, coef_big, moebius, to_natural, Coef};

/// Multidegree: one coordinate per generator index.
pub type Degree = Vec<u64>;

/// Which multidegrees a computation covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeBound {
    /// Total degree at most this value.
    Total(u64),
    /// Coordinatewise at most these values.
    Box(Vec<u64>),
}

impl DegreeBound {
    pub fn contains(&self, d: &[u64]) -> bool {
        match self {
            DegreeBound::Total(t) => d.iter().sum::<u64>() <= *t,
            DegreeBound::Box(b) => b.len() == d.len() && d.iter().zip(b).all(|(x, y)| x <= y),
        }
    }

    /// Largest total degree inside the bound.
    pub fn max_total(&self) -> u64 {
        match self {
            DegreeBound::Total(t) => *t,
            DegreeBound::Box(b) => b.iter().sum(),
        }
    }

    /// All nonzero degrees inside the bound, by total degree and then
    /// lexicographically.
    pub fn degrees(&self, rank: usize) -> Vec<Degree> {
        let caps: Vec<u64> = match self {
            DegreeBound::Total(t) => vec![*t; rank],
            DegreeBound::Box(b) => b.clone(),
        };
        let mut out = vec![vec![]];
        for cap in caps {
            out = out
                .into_iter()
                .flat_map(|d: Degree| {
                    (0..=cap).map(move |x| {
                        let mut e = d.clone();
                        e.push(x);
                        e
                    })
                })
                .collect();
        }
        out.retain(|d| d.iter().any(|&x| x > 0) && self.contains(d));
        out.sort_by_key(|d| (d.iter().sum::<u64>(), d.clone()));
        out
    }
}

/// Nonnegative integer dimensions indexed by multidegree. Absent degrees
/// have dimension zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedDimTable {
    rank: usize,
    dims: BTreeMap<Degree, BigInt>,
}

impl GradedDimTable {
    pub fn new(rank: usize) -> Self {
        GradedDimTable {
            rank,
            dims: BTreeMap::new(),
        }
    }

    /// One generator at each unit degree.
    pub fn units(rank: usize) -> Self {
        let mut t = Self::new(rank);
        for i in 0..rank {
            t.set(unit(rank, i), BigInt::one());
        }
        t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, d: &[u64]) -> BigInt {
        self.dims.get(d).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, d: Degree, v: BigInt) {
        assert_eq!(d.len(), self.rank, "degree has the wrong number of coordinates");
        if v.is_zero() {
            self.dims.remove(&d);
        } else {
            self.dims.insert(d, v);
        }
    }

    pub fn add(&mut self, d: Degree, v: &BigInt) {
        let cur = self.get(&d);
        self.set(d, cur + v);
    }

    /// Nonzero entries in degree order.
    pub fn iter(&self) -> impl Iterator<Item = (&Degree, &BigInt)> {
        self.dims.iter()
    }

    pub fn restrict(&self, bound: &DegreeBound) -> Self {
        GradedDimTable {
            rank: self.rank,
            dims: self
                .dims
                .iter()
                .filter(|(d, _)| bound.contains(d))
                .map(|(d, v)| (d.clone(), v.clone()))
                .collect(),
        }
    }

    /// Degrees where the two tables differ, with both values.
    pub fn differences(&self, other: &Self) -> Vec<(Degree, BigInt, BigInt)> {
        let keys: BTreeSet<&Degree> = self.dims.keys().chain(other.dims.keys()).collect();
        keys.into_iter()
            .filter_map(|d| {
                let (a, b) = (self.get(d), other.get(d));
                (a != b).then(|| (d.clone(), a, b))
            })
            .collect()
    }
}

impl fmt::Display for GradedDimTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree\tdim")?;
        for (d, v) in &self.dims {
            let d: Vec<String> = d.iter().map(|x| x.to_string()).collect();
            writeln!(f, "({})\t{v}", d.join(","))?;
        }
        Ok(())
    }
}

pub(crate) fn unit(rank: usize, i: usize) -> Degree {
    let mut d = vec![0; rank];
    d[i] = 1;
    d
}

fn add_deg(a: &[u64], b: &[u64]) -> Degree {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

type Poly = BTreeMap<Degree, Coef>;

fn poly_mul(a: &Poly, b: &Poly, bound: &DegreeBound) -> Poly {
    let mut out = Poly::new();
    for (da, ca) in a {
        for (db, cb) in b {
            let d = add_deg(da, db);
            if bound.contains(&d) {
                *out.entry(d).or_insert_with(Coef::zero) += ca * cb;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Graded dimensions of the free Lie algebra `L(V)` on a graded space `V`,
/// from `∏_α (1 - x^α)^{dim L(V)_α} = 1 - ch V`.
///
/// `-log(1 - ch V) = Σ_j (ch V)^j / j` is expanded by repeated
/// multiplication and then inverted over common divisors of the degree.
pub fn witt_dims(generators: &GradedDimTable, bound: &DegreeBound) -> Result<GradedDimTable> {
    let rank = generators.rank;
    let v: Poly = generators
        .restrict(bound)
        .dims
        .into_iter()
        .map(|(d, c)| (d, coef_big(c)))
        .collect();
    if v.keys().any(|d| d.iter().all(|&x| x == 0)) {
        return Err(Error::Invalid("generator in degree zero".into()));
    }
    // -log(1 - V)
    let mut s = Poly::new();
    let mut power = v.clone();
    let mut j = 1i64;
    while !power.is_empty() {
        for (d, c) in &power {
            *s.entry(d.clone()).or_insert_with(Coef::zero) += c / coef(j);
        }
        power = poly_mul(&power, &v, bound);
        j += 1;
    }
    let mut candidates = BTreeSet::new();
    for d in s.keys() {
        for k in 1.. {
            let kd: Degree = d.iter().map(|x| x * k).collect();
            if !bound.contains(&kd) {
                break;
            }
            candidates.insert(kd);
        }
    }
    let mut out = GradedDimTable::new(rank);
    for d in candidates {
        let g = d.iter().fold(0u64, |g, x| g.gcd(x));
        let mut acc = Coef::zero();
        for k in crate::series::divisors(g) {
            let mu = moebius(k);
            if mu == 0 {
                continue;
            }
            let sub: Degree = d.iter().map(|x| x / k).collect();
            if let Some(c) = s.get(&sub) {
                acc += c * coef(mu as i64) / coef(k as i64);
            }
        }
        let value = to_natural(&acc, || format!("free Lie dimension at {d:?}"))?;
        out.set(d, value);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn totals(t: &GradedDimTable, max: u64) -> Vec<i64> {
        (1..=max)
            .map(|n| {
                t.iter()
                    .filter(|(d, _)| d.iter().sum::<u64>() == n)
                    .map(|(_, v)| i64::try_from(v).unwrap())
                    .sum()
            })
            .collect()
    }

    #[test]
    fn single_generator_is_unchanged() {
        let g = GradedDimTable::units(1);
        let w = witt_dims(&g, &DegreeBound::Total(6)).unwrap();
        assert_eq!(w, g);
    }

    #[test]
    fn two_letter_totals() {
        let w = witt_dims(&GradedDimTable::units(2), &DegreeBound::Total(5)).unwrap();
        assert_eq!(totals(&w, 5), vec![2, 1, 2, 3, 6]);
    }

    #[test]
    fn two_generators_in_one_degree_give_necklaces() {
        // Lyndon words of length n over two letters: 2, 1, 2, 3, 6, 9
        let mut g = GradedDimTable::new(1);
        g.set(vec![1], BigInt::from(2));
        let w = witt_dims(&g, &DegreeBound::Total(6)).unwrap();
        let dims: Vec<i64> = (1..=6).map(|n| i64::try_from(w.get(&[n])).unwrap()).collect();
        assert_eq!(dims, vec![2, 1, 2, 3, 6, 9]);
    }

    #[test]
    fn degree_enumeration() {
        let d = DegreeBound::Box(vec![1, 2]).degrees(2);
        assert_eq!(
            d,
            vec![vec![0, 1], vec![1, 0], vec![0, 2], vec![1, 1], vec![1, 2]]
        );
        assert_eq!(DegreeBound::Total(2).degrees(2).len(), 5);
    }

    #[test]
    fn zero_degree_generator_rejected() {
        let mut g = GradedDimTable::new(1);
        g.set(vec![0], BigInt::one());
        assert!(witt_dims(&g, &DegreeBound::Total(3)).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn witt_matches_lyndon_count(letters in 1usize..=4, deg in 1u64..=7) {
            let bound = DegreeBound::Total(deg);
            let alpha = GeneratorAlphabet::new(letters);
            let w = witt_dims(&GradedDimTable::units(letters), &bound).unwrap();
            prop_assert_eq!(w, lyndon_dims(&alpha, &bound));
        }
    }
}
