use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use super::grid::Grid;
use super::{coef, lcm, Coef};
use crate::error::{Error, Result};

/// Truncated series in `q^{1/N}`.
///
/// The key `n` of `terms` stands for `q^{n/N}` with `N = denom`. The series
/// is known exactly for every numerator `<= order`; anything above is
/// unknown. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    denom: i64,
    terms: BTreeMap<i64, Coef>,
    order: i64,
}

impl QSeries {
    pub fn zero(denom: i64, order: i64) -> Self {
        assert!(denom >= 1, "exponent denominator must be positive");
        QSeries {
            denom,
            terms: BTreeMap::new(),
            order,
        }
    }

    pub fn one(denom: i64, order: i64) -> Self {
        Self::monomial(denom, 0, coef(1), order)
    }

    /// `c * q^{num/denom}`, known through `order`.
    pub fn monomial(denom: i64, num: i64, c: Coef, order: i64) -> Self {
        Self::from_terms(denom, [(num, c)], order)
    }

    /// Builds a series from `(numerator, coefficient)` pairs. Repeated
    /// numerators are summed; terms above `order` are dropped.
    pub fn from_terms<I>(denom: i64, terms: I, order: i64) -> Self
    where
        I: IntoIterator<Item = (i64, Coef)>,
    {
        let mut s = Self::zero(denom, order);
        for (n, c) in terms {
            s.add_term(n, &c);
        }
        s
    }

    /// Integer coefficients `coeffs[k]` at numerator `start + k`.
    pub fn from_ints(denom: i64, start: i64, coeffs: &[i64], order: i64) -> Self {
        Self::from_terms(
            denom,
            coeffs.iter().enumerate().map(|(k, &c)| (start + k as i64, coef(c))),
            order,
        )
    }

    fn add_term(&mut self, n: i64, c: &Coef) {
        if n > self.order || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(n).or_insert_with(Coef::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&n);
        }
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Coef)> + '_ {
        self.terms.iter().map(|(&n, c)| (n, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest numerator with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    fn valuation_or_unknown(&self) -> i64 {
        self.valuation().unwrap_or(self.order + 1)
    }

    /// Coefficient of `q^{num/denom}`.
    pub fn coeff_num(&self, num: i64) -> Result<Coef> {
        if num > self.order {
            return Err(Error::TruncationExceeded {
                exponent: format!("q^({num}/{})", self.denom),
                order: format!("q^({}/{})", self.order, self.denom),
            });
        }
        Ok(self.terms.get(&num).cloned().unwrap_or_else(Coef::zero))
    }

    /// Coefficient of `q^e` for a rational exponent `e`.
    pub fn coeff(&self, e: Ratio<i64>) -> Result<Coef> {
        let scaled = e * self.denom;
        if Ratio::from_integer(self.order) < scaled {
            return Err(Error::TruncationExceeded {
                exponent: format!("q^({e})"),
                order: format!("q^({}/{})", self.order, self.denom),
            });
        }
        if !scaled.is_integer() {
            return Ok(Coef::zero());
        }
        self.coeff_num(scaled.to_integer())
    }

    /// Restates the series over the denominator `new_denom`, a multiple of
    /// the current one.
    pub fn lift(&self, new_denom: i64) -> QSeries {
        assert!(
            new_denom % self.denom == 0,
            "cannot lift denominator {} to {new_denom}",
            self.denom
        );
        let f = new_denom / self.denom;
        QSeries {
            denom: new_denom,
            terms: self.terms.iter().map(|(&n, c)| (n * f, c.clone())).collect(),
            order: (self.order + 1) * f - 1,
        }
    }

    /// Rewrites with the smallest denominator that represents every term.
    pub fn reduce(&self) -> QSeries {
        let g = self.terms.keys().fold(self.denom, |g, &n| g.gcd(&n));
        if g <= 1 {
            return self.clone();
        }
        QSeries {
            denom: self.denom / g,
            terms: self.terms.iter().map(|(&n, c)| (n / g, c.clone())).collect(),
            order: Integer::div_floor(&self.order, &g),
        }
    }

    /// Restates the series over exactly `denom`, if every term allows it.
    pub fn with_denom(&self, denom: i64) -> Result<QSeries> {
        let r = self.reduce();
        if denom % r.denom != 0 {
            return Err(Error::NonConforming(format!(
                "series needs exponent denominator {}, which does not divide {denom}",
                r.denom
            )));
        }
        Ok(r.lift(denom))
    }

    /// Drops everything above `order` (no-op if already shorter).
    pub fn truncate(&self, order: i64) -> QSeries {
        let order = order.min(self.order);
        QSeries {
            denom: self.denom,
            terms: self.terms.range(..=order).map(|(&n, c)| (n, c.clone())).collect(),
            order,
        }
    }

    /// Multiplies by `q^{num/denom}`.
    pub fn shift(&self, num: i64) -> QSeries {
        QSeries {
            denom: self.denom,
            terms: self.terms.iter().map(|(&n, c)| (n + num, c.clone())).collect(),
            order: self.order + num,
        }
    }

    pub fn scale(&self, c: &Coef) -> QSeries {
        if c.is_zero() {
            return QSeries::zero(self.denom, self.order);
        }
        QSeries {
            denom: self.denom,
            terms: self.terms.iter().map(|(&n, v)| (n, v * c)).collect(),
            order: self.order,
        }
    }

    fn common(a: &QSeries, b: &QSeries) -> (QSeries, QSeries) {
        let d = lcm(a.denom, b.denom);
        (a.lift(d), b.lift(d))
    }

    /// Power series part as a dense row, after multiplying by `q^{-shift}`.
    fn to_row(&self, shift: i64, len_order: i64) -> Grid {
        let mut g = Grid::zeros(0, len_order as usize);
        for (&n, c) in self.terms.range(..=len_order + shift) {
            g.set(0, (n - shift) as usize, c.clone());
        }
        g
    }

    fn from_row(denom: i64, g: &Grid, shift: i64, order: i64) -> QSeries {
        let mut s = QSeries::zero(denom, order);
        for (j, c) in g.data.iter().enumerate() {
            if !c.is_zero() {
                s.terms.insert(j as i64 + shift, c.clone());
            }
        }
        s
    }

    /// `s^e` for any integer `e`. The leading monomial is factored out
    /// before inverting, so Laurent series are fine.
    pub fn pow_int(&self, e: i64) -> Result<QSeries> {
        let Some(v) = self.valuation() else {
            return match e.cmp(&0) {
                std::cmp::Ordering::Less => Err(Error::ZeroInverse),
                std::cmp::Ordering::Equal => Ok(QSeries::one(self.denom, self.order.max(0))),
                std::cmp::Ordering::Greater => {
                    Ok(QSeries::zero(self.denom, e * (self.order + 1) - 1))
                }
            };
        };
        let lead = self.terms[&v].clone();
        let rel = self.order - v;
        // unit = s / (lead q^v), a power series with constant term 1
        let unit = self.shift(-v).scale(&lead.recip()).to_row(0, rel);
        let base = if e < 0 { unit.inverse() } else { unit };
        let mut acc: Option<Grid> = None;
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => a.mul(&sq),
                });
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        let row = acc.unwrap_or_else(|| {
            let mut g = Grid::zeros(0, rel as usize);
            g.set(0, 0, coef(1));
            g
        });
        let lead_pow = if e < 0 {
            coef_pow(&lead.recip(), e.unsigned_abs())
        } else {
            coef_pow(&lead, e as u64)
        };
        let shift = v * e;
        Ok(QSeries::from_row(self.denom, &row, shift, shift + rel).scale(&lead_pow))
    }

    pub fn inverse(&self) -> Result<QSeries> {
        self.pow_int(-1)
    }

    fn check_power_series(&self) -> Result<()> {
        if self.valuation().is_some_and(|v| v < 0) {
            return Err(Error::NegativeExponent);
        }
        Ok(())
    }

    /// Logarithm of a series with constant term exactly 1.
    pub fn log1(&self) -> Result<QSeries> {
        self.check_power_series()?;
        let c0 = self.coeff_num(0)?;
        if !c0.is_one() {
            return Err(Error::ConstantTerm {
                expected: "1".into(),
                found: c0.to_string(),
            });
        }
        let row = self.to_row(0, self.order).log1();
        Ok(QSeries::from_row(self.denom, &row, 0, self.order))
    }

    /// Exponential of a series with constant term exactly 0.
    pub fn exp0(&self) -> Result<QSeries> {
        self.check_power_series()?;
        if self.order < 0 {
            return Ok(QSeries::zero(self.denom, self.order));
        }
        let c0 = self.coeff_num(0)?;
        if !c0.is_zero() {
            return Err(Error::ConstantTerm {
                expected: "0".into(),
                found: c0.to_string(),
            });
        }
        let row = self.to_row(0, self.order).exp0();
        Ok(QSeries::from_row(self.denom, &row, 0, self.order))
    }

    /// Substitutes `q -> q^k`.
    pub fn adams_sub(&self, k: u32) -> QSeries {
        assert!(k >= 1, "Adams substitution needs k >= 1");
        let k = k as i64;
        QSeries {
            denom: self.denom,
            terms: self.terms.iter().map(|(&n, c)| (n * k, c.clone())).collect(),
            order: k * (self.order + 1) - 1,
        }
    }
}

pub(crate) fn coef_pow(c: &Coef, e: u64) -> Coef {
    let mut acc = Coef::one();
    for _ in 0..e {
        acc *= c;
    }
    acc
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let (a, b) = QSeries::common(self, rhs);
        let mut out = a.truncate(b.order);
        for (&n, c) in &b.terms {
            out.add_term(n, c);
        }
        out
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            denom: self.denom,
            terms: self.terms.iter().map(|(&n, c)| (n, -c)).collect(),
            order: self.order,
        }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self + &(-rhs)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let (a, b) = QSeries::common(self, rhs);
        let (va, vb) = (a.valuation_or_unknown(), b.valuation_or_unknown());
        let order = (a.order + vb).min(b.order + va);
        if a.is_zero() || b.is_zero() || order < va + vb {
            return QSeries::zero(a.denom, order);
        }
        let rel = order - va - vb;
        let prod = a.to_row(va, rel).mul(&b.to_row(vb, rel));
        QSeries::from_row(a.denom, &prod, va + vb, order)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&n, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let e = Ratio::new(n, self.denom);
            write!(f, "({c})q^({e})")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^({}))", Ratio::new(self.order + 1, self.denom))
    }
}
