//! The Borcherds Cartan matrix of a non-Fricke class, evaluated entry by
//! entry.
//!
//! Simple roots come in two families: `(-m, j)` for `1 <= j <= c(m,0)` and
//! `(n, k)` for `1 <= k <= c(1,n/N)`. Entries depend only on the sides and
//! levels:
//!
//! | pair            | entry      |
//! |-----------------|------------|
//! | `(-m,·),(-n,·)` | `0`        |
//! | `(-m,·),(n,·)`  | `-mn`      |
//! | `(m,·),(n,·)`   | `-(m+n)`   |
//!
//! Copy multiplicities run into the thousands, so checks work on a small
//! matrix with one or two representative copies per level.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::eta::MoonshineClass;
use crate::linalg;
use crate::series::{coef, ratio, Coef};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Minus,
    Plus,
}

/// A simple root. The derived order (side, then level, then copy) is the
/// canonical total order used everywhere generators are enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SimpleRootIndex {
    pub side: Side,
    pub level: u64,
    pub copy: u64,
}

impl SimpleRootIndex {
    pub fn minus(level: u64, copy: u64) -> Self {
        SimpleRootIndex {
            side: Side::Minus,
            level,
            copy,
        }
    }

    pub fn plus(level: u64, copy: u64) -> Self {
        SimpleRootIndex {
            side: Side::Plus,
            level,
            copy,
        }
    }
}

impl fmt::Display for SimpleRootIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::Minus => write!(f, "(-{},{})", self.level, self.copy),
            Side::Plus => write!(f, "({},{})", self.level, self.copy),
        }
    }
}

fn block_entry(a: (Side, u64), b: (Side, u64)) -> i64 {
    let (m, n) = (a.1 as i64, b.1 as i64);
    match (a.0, b.0) {
        (Side::Minus, Side::Minus) => 0,
        (Side::Minus, Side::Plus) | (Side::Plus, Side::Minus) => -m * n,
        (Side::Plus, Side::Plus) => -(m + n),
    }
}

/// A finite window `level <= mmax` (minus side), `level <= nmax` (plus
/// side) onto the matrix of a class.
#[derive(Debug, Clone, Copy)]
pub struct CartanView<'a> {
    class: &'a MoonshineClass,
    mmax: u64,
    nmax: u64,
}

impl<'a> CartanView<'a> {
    pub fn new(class: &'a MoonshineClass, mmax: u64, nmax: u64) -> Result<Self> {
        let order = class.order() as u64;
        if mmax > order || nmax > order {
            return Err(Error::TruncationExceeded {
                exponent: format!("level {}", mmax.max(nmax)),
                order: format!("level {order}"),
            });
        }
        Ok(CartanView { class, mmax, nmax })
    }

    pub fn class(&self) -> &MoonshineClass {
        self.class
    }

    pub fn bounds(&self) -> (u64, u64) {
        (self.mmax, self.nmax)
    }

    /// Number of copies at `(side, level)`; zero outside the window.
    pub fn multiplicity(&self, side: Side, level: u64) -> BigInt {
        let (bound, value) = match side {
            Side::Minus => (self.mmax, self.class.cm0(level)),
            Side::Plus => (self.nmax, self.class.c1n(level)),
        };
        if level == 0 || level > bound {
            return BigInt::zero();
        }
        value.cloned().unwrap_or_default()
    }

    pub fn contains(&self, i: &SimpleRootIndex) -> bool {
        i.copy >= 1 && BigInt::from(i.copy) <= self.multiplicity(i.side, i.level)
    }

    pub fn entry(&self, i: &SimpleRootIndex, j: &SimpleRootIndex) -> Result<i64> {
        for x in [i, j] {
            if !self.contains(x) {
                return Err(Error::UnknownIndex(format!("{x} in class {}", self.class.label())));
            }
        }
        Ok(block_entry((i.side, i.level), (j.side, j.level)))
    }

    /// Levels with at least one copy, in canonical order, with their copy
    /// counts.
    pub fn blocks(&self) -> Vec<(Side, u64, BigInt)> {
        let minus = (1..=self.mmax).map(|m| (Side::Minus, m));
        let plus = (1..=self.nmax).map(|n| (Side::Plus, n));
        minus
            .chain(plus)
            .map(|(s, l)| (s, l, self.multiplicity(s, l)))
            .filter(|(_, _, c)| !c.is_zero())
            .collect()
    }

    /// Every index in the window, in canonical order. Lazy, since the
    /// plus side alone can have millions of copies.
    pub fn indices(&self) -> impl Iterator<Item = SimpleRootIndex> + '_ {
        self.blocks().into_iter().flat_map(|(side, level, count)| {
            let count = count.to_u64().unwrap_or(u64::MAX);
            (1..=count).map(move |copy| SimpleRootIndex { side, level, copy })
        })
    }

    pub fn index_set(&self) -> Vec<SimpleRootIndex> {
        self.indices().collect()
    }

    /// Copies 1 and (when present) 2 of each level, enough to exercise
    /// every distinct entry including off-diagonal entries within a level.
    pub fn representatives(&self) -> Vec<SimpleRootIndex> {
        let mut out = Vec::new();
        for (side, level, count) in self.blocks() {
            out.push(SimpleRootIndex { side, level, copy: 1 });
            if count > BigInt::from(1) {
                out.push(SimpleRootIndex { side, level, copy: 2 });
            }
        }
        out
    }

    /// Matrix restricted to [`Self::representatives`].
    pub fn representative_matrix(&self) -> (Vec<SimpleRootIndex>, Vec<Vec<i64>>) {
        let reps = self.representatives();
        let rows = reps
            .iter()
            .map(|i| {
                reps.iter()
                    .map(|j| block_entry((i.side, i.level), (j.side, j.level)))
                    .collect()
            })
            .collect();
        (reps, rows)
    }

    pub fn validate_axioms(&self) -> AxiomReport {
        let (reps, a) = self.representative_matrix();
        let labels: Vec<String> = reps.iter().map(|r| r.to_string()).collect();
        validate_matrix(&labels, &a)
    }

    pub fn row_relations(&self) -> RowRelationReport {
        let ell = self.class.ell();
        let (reps, a) = self.representative_matrix();
        // basis rows exist in the full matrix even when outside the window
        let basis_row = |side, level| -> Vec<Coef> {
            reps.iter()
                .map(|j| coef(block_entry((side, level), (j.side, j.level))))
                .collect()
        };
        let r_minus = basis_row(Side::Minus, ell);
        let r_plus = basis_row(Side::Plus, 1);
        let mut failures = Vec::new();
        for (i, row) in reps.iter().zip(&a) {
            let (x, y) = match i.side {
                Side::Minus => (ratio(i.level as i64, ell as i64), Coef::zero()),
                Side::Plus => (
                    ratio(1 - i.level as i64, ell as i64),
                    coef(i.level as i64),
                ),
            };
            let predicted: Vec<Coef> = r_minus
                .iter()
                .zip(&r_plus)
                .map(|(u, v)| &x * u + &y * v)
                .collect();
            let actual: Vec<Coef> = row.iter().map(|&e| coef(e)).collect();
            if predicted != actual {
                failures.push(format!("row {i} is not ({x}) r(-{ell},1) + ({y}) r(1,1)"));
            }
        }
        let rank = linalg::rank(a.iter().map(|r| r.iter().map(|&e| coef(e)).collect()));
        let both_sides = reps.iter().any(|r| r.side == Side::Minus)
            && reps.iter().any(|r| r.side == Side::Plus);
        if rank > 2 || (both_sides && rank != 2) {
            failures.push(format!("row space has dimension {rank}"));
        }
        RowRelationReport {
            ell,
            rows_checked: reps.len(),
            rank,
            failures,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axiom {
    /// `a_ij = a_ji`
    Symmetry,
    /// `a_ij <= 0` for `i != j`
    OffDiagonal,
    /// `a_ii <= 0` (no real simple roots)
    Diagonal,
    /// `a_ij = 0` exactly when both indices have `a_ii = 0`
    ZeroPattern,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub i: String,
    pub j: String,
    pub value: i64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at [{}, {}] = {}", self.axiom, self.i, self.j, self.value)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub size: usize,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

/// Checks a square integer matrix against the axioms and the zero-pattern
/// hypothesis, taking the isotropic indices to be those with `a_ii = 0`.
pub fn validate_matrix(labels: &[String], a: &[Vec<i64>]) -> AxiomReport {
    let n = a.len();
    let mut violations = Vec::new();
    let mut push = |axiom, i: usize, j: usize, value| {
        violations.push(Violation {
            axiom,
            i: labels.get(i).cloned().unwrap_or_else(|| (i + 1).to_string()),
            j: labels.get(j).cloned().unwrap_or_else(|| (j + 1).to_string()),
            value,
        })
    };
    for i in 0..n {
        if a[i][i] > 0 {
            push(Axiom::Diagonal, i, i, a[i][i]);
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if j > i && a[i][j] != a[j][i] {
                push(Axiom::Symmetry, i, j, a[i][j]);
            }
            if a[i][j] > 0 {
                push(Axiom::OffDiagonal, i, j, a[i][j]);
            }
            let isotropic = a[i][i] == 0 && a[j][j] == 0;
            if j > i && (a[i][j] == 0) != isotropic {
                push(Axiom::ZeroPattern, i, j, a[i][j]);
            }
        }
    }
    AxiomReport { size: n, violations }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowRelationReport {
    pub ell: u64,
    pub rows_checked: usize,
    pub rank: usize,
    pub failures: Vec<String>,
}

impl RowRelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn class(label: &str) -> MoonshineClass {
        MoonshineClass::builtin(label, 8).unwrap()
    }

    #[test]
    fn entries_for_2b() {
        let c = class("2B");
        let v = CartanView::new(&c, 5, 5).unwrap();
        let m = SimpleRootIndex::minus;
        let p = SimpleRootIndex::plus;
        assert_eq!(v.entry(&m(1, 1), &m(3, 2)).unwrap(), 0);
        assert_eq!(v.entry(&m(1, 1), &p(2, 1)).unwrap(), -2);
        assert_eq!(v.entry(&p(1, 1), &p(2, 1)).unwrap(), -3);
        assert!(matches!(v.entry(&m(2, 1), &p(1, 1)), Err(Error::UnknownIndex(_))));
        assert!(matches!(v.entry(&m(1, 25), &p(1, 1)), Err(Error::UnknownIndex(_))));
    }

    #[test]
    fn axioms_hold_for_builtins() {
        for label in ["2B", "4D"] {
            let c = class(label);
            let report = CartanView::new(&c, 5, 5).unwrap().validate_axioms();
            assert!(report.passed(), "{label}: {:?}", report.violations);
        }
    }

    #[test]
    fn hand_built_violations() {
        let labels = vec!["1".to_string(), "2".to_string()];
        let r = validate_matrix(&labels, &[vec![-2, 1], vec![1, -2]]);
        assert!(r.has(Axiom::OffDiagonal));
        let r = validate_matrix(&labels, &[vec![0, -1], vec![-1, 0]]);
        assert!(r.has(Axiom::ZeroPattern));
        let labels3: Vec<String> = (1..=3).map(|i| i.to_string()).collect();
        let r = validate_matrix(&labels3, &[vec![0, -1, 0], vec![-1, 0, -1], vec![0, -1, -2]]);
        assert!(r.has(Axiom::ZeroPattern));
        let r = validate_matrix(&labels, &[vec![-2, -1], vec![-3, -2]]);
        assert!(r.has(Axiom::Symmetry));
        let r = validate_matrix(&labels, &[vec![2, -1], vec![-1, -2]]);
        assert!(r.has(Axiom::Diagonal));
    }

    #[test]
    fn index_sets() {
        let c = class("2B");
        let v = CartanView::new(&c, 1, 1).unwrap();
        let idx = v.index_set();
        assert_eq!(idx.len(), 24 + 4096);
        assert_eq!(idx[0], SimpleRootIndex::minus(1, 1));
        assert_eq!(idx[23], SimpleRootIndex::minus(1, 24));
        assert_eq!(idx[24], SimpleRootIndex::plus(1, 1));
        assert!(idx.windows(2).all(|w| w[0] < w[1]));

        let c = class("4D");
        let v = CartanView::new(&c, 1, 0).unwrap();
        assert!(v.index_set().is_empty());
        assert!(CartanView::new(&c, 0, 0).unwrap().index_set().is_empty());
    }

    #[test]
    fn row_relations_for_builtins() {
        let c = class("2B");
        let r = CartanView::new(&c, 5, 5).unwrap().row_relations();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.rank, 2);
        let c = class("4D");
        let r = CartanView::new(&c, 6, 5).unwrap().row_relations();
        assert_eq!(r.ell, 2);
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn row_relation_for_2b_level_3() {
        let c = class("2B");
        let v = CartanView::new(&c, 5, 5).unwrap();
        let (reps, a) = v.representative_matrix();
        let row = |i: SimpleRootIndex| &a[reps.iter().position(|r| *r == i).unwrap()];
        let r3 = row(SimpleRootIndex::plus(3, 1));
        let rm1 = row(SimpleRootIndex::minus(1, 1));
        let r1 = row(SimpleRootIndex::plus(1, 1));
        for k in 0..reps.len() {
            assert_eq!(r3[k], -2 * rm1[k] + 3 * r1[k]);
        }
    }

    proptest! {
        #[test]
        fn symmetric_and_zero_only_on_minus_pairs(
            a in (0u8..2, 1u64..6), b in (0u8..2, 1u64..6)
        ) {
            let side = |s| if s == 0 { Side::Minus } else { Side::Plus };
            let (x, y) = ((side(a.0), a.1), (side(b.0), b.1));
            prop_assert_eq!(block_entry(x, y), block_entry(y, x));
            prop_assert_eq!(
                block_entry(x, y) == 0,
                x.0 == Side::Minus && y.0 == Side::Minus
            );
        }
    }
}
