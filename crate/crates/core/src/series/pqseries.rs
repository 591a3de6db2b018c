use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Zero};

use super::grid::Grid;
use super::{coef, lcm, Coef, QSeries};
use crate::error::{Error, Result};

/// Truncated series in `p` and `q^{1/N}`, valid on the box
/// `p^i q^{j/N}` with `i <= pmax`, `j <= qmax`.
///
/// Keys are `(i, j)`; `p` exponents are at least `-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PQSeries {
    qdenom: i64,
    terms: BTreeMap<(i64, i64), Coef>,
    pmax: i64,
    qmax: i64,
}

impl PQSeries {
    pub fn zero(qdenom: i64, pmax: i64, qmax: i64) -> Self {
        assert!(qdenom >= 1, "exponent denominator must be positive");
        PQSeries {
            qdenom,
            terms: BTreeMap::new(),
            pmax,
            qmax,
        }
    }

    pub fn one(qdenom: i64, pmax: i64, qmax: i64) -> Self {
        Self::from_terms(qdenom, [((0, 0), coef(1))], pmax, qmax)
    }

    /// Sums `(p exponent, q numerator) -> coefficient` entries; anything
    /// outside the box is dropped.
    pub fn from_terms<I>(qdenom: i64, terms: I, pmax: i64, qmax: i64) -> Self
    where
        I: IntoIterator<Item = ((i64, i64), Coef)>,
    {
        let mut s = Self::zero(qdenom, pmax, qmax);
        for (e, c) in terms {
            s.add_term(e, &c);
        }
        s
    }

    fn add_term(&mut self, (i, j): (i64, i64), c: &Coef) {
        assert!(i >= -1, "p exponent {i} below -1");
        if i > self.pmax || j > self.qmax || c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(Coef::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    /// Embeds a `q`-series as a series constant in `p`.
    pub fn from_q(s: &QSeries, pmax: i64) -> Self {
        Self::from_terms(
            s.denom(),
            s.terms().map(|(n, c)| ((0, n), c.clone())),
            pmax,
            s.order(),
        )
    }

    /// Reads an integer-exponent one-variable series as a series in `p`.
    pub fn from_p(s: &QSeries, qdenom: i64, qmax: i64) -> Result<Self> {
        let s = s.with_denom(1)?;
        Ok(Self::from_terms(
            qdenom,
            s.terms().map(|(n, c)| ((n, 0), c.clone())),
            s.order(),
            qmax,
        ))
    }

    pub fn qdenom(&self) -> i64 {
        self.qdenom
    }

    pub fn pmax(&self) -> i64 {
        self.pmax
    }

    pub fn qmax(&self) -> i64 {
        self.qmax
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &Coef)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `p^i q^{j/N}`.
    pub fn coeff(&self, i: i64, j: i64) -> Result<Coef> {
        if i > self.pmax || j > self.qmax {
            return Err(Error::TruncationExceeded {
                exponent: format!("p^{i} q^({j}/{})", self.qdenom),
                order: format!("p^{} q^({}/{})", self.pmax, self.qmax, self.qdenom),
            });
        }
        Ok(self.terms.get(&(i, j)).cloned().unwrap_or_else(Coef::zero))
    }

    /// Coefficient of `p^i q^e` for a rational exponent `e`.
    pub fn coeff_at(&self, i: i64, e: Ratio<i64>) -> Result<Coef> {
        let scaled = e * self.qdenom;
        if !scaled.is_integer() {
            if i > self.pmax || Ratio::from_integer(self.qmax) < scaled {
                return Err(Error::TruncationExceeded {
                    exponent: format!("p^{i} q^({e})"),
                    order: format!("p^{} q^({}/{})", self.pmax, self.qmax, self.qdenom),
                });
            }
            return Ok(Coef::zero());
        }
        self.coeff(i, scaled.to_integer())
    }

    pub fn lift(&self, new_denom: i64) -> PQSeries {
        assert!(new_denom % self.qdenom == 0);
        let f = new_denom / self.qdenom;
        PQSeries {
            qdenom: new_denom,
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i, j * f), c.clone()))
                .collect(),
            pmax: self.pmax,
            qmax: (self.qmax + 1) * f - 1,
        }
    }

    pub fn truncate(&self, pmax: i64, qmax: i64) -> PQSeries {
        let (pmax, qmax) = (pmax.min(self.pmax), qmax.min(self.qmax));
        PQSeries {
            qdenom: self.qdenom,
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| i <= pmax && j <= qmax)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
            pmax,
            qmax,
        }
    }

    pub fn scale(&self, c: &Coef) -> PQSeries {
        let mut out = PQSeries::zero(self.qdenom, self.pmax, self.qmax);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(&e, v)| (e, v * c)).collect();
        }
        out
    }

    /// Multiplies by `p^k`.
    pub fn shift_p(&self, k: i64) -> PQSeries {
        let mut out = PQSeries::zero(self.qdenom, self.pmax + k, self.qmax);
        for (&(i, j), c) in &self.terms {
            out.add_term((i + k, j), c);
        }
        out
    }

    fn common(a: &PQSeries, b: &PQSeries) -> (PQSeries, PQSeries) {
        let d = lcm(a.qdenom, b.qdenom);
        (a.lift(d), b.lift(d))
    }

    fn valuations(&self) -> (i64, i64) {
        let vp = self.terms.keys().map(|e| e.0).min().unwrap_or(self.pmax + 1);
        let vq = self.terms.keys().map(|e| e.1).min().unwrap_or(self.qmax + 1);
        (vp, vq)
    }

    fn check_power_series(&self) -> Result<()> {
        if self.terms.keys().any(|&(i, j)| i < 0 || j < 0) {
            return Err(Error::NegativeExponent);
        }
        Ok(())
    }

    fn to_grid(&self) -> Grid {
        let mut g = Grid::zeros(self.pmax.max(0) as usize, self.qmax.max(0) as usize);
        for (&(i, j), c) in &self.terms {
            g.set(i as usize, j as usize, c.clone());
        }
        g
    }

    fn from_grid(qdenom: i64, g: &Grid, (si, sj): (i64, i64), pmax: i64, qmax: i64) -> Self {
        let mut out = PQSeries::zero(qdenom, pmax, qmax);
        for i in 0..=g.pmax {
            for j in 0..=g.qmax {
                let c = g.get(i, j);
                if !c.is_zero() {
                    out.terms.insert((i as i64 + si, j as i64 + sj), c.clone());
                }
            }
        }
        out
    }

    /// Logarithm; the constant term must be exactly 1 and no exponent negative.
    pub fn log1(&self) -> Result<PQSeries> {
        self.check_power_series()?;
        let c0 = self.coeff(0, 0)?;
        if !c0.is_one() {
            return Err(Error::ConstantTerm {
                expected: "1".into(),
                found: c0.to_string(),
            });
        }
        let g = self.to_grid().log1();
        Ok(Self::from_grid(self.qdenom, &g, (0, 0), self.pmax, self.qmax))
    }

    /// Exponential; the constant term must be exactly 0 and no exponent negative.
    pub fn exp0(&self) -> Result<PQSeries> {
        self.check_power_series()?;
        if self.pmax < 0 || self.qmax < 0 {
            return Ok(PQSeries::zero(self.qdenom, self.pmax, self.qmax));
        }
        let c0 = self.coeff(0, 0)?;
        if !c0.is_zero() {
            return Err(Error::ConstantTerm {
                expected: "0".into(),
                found: c0.to_string(),
            });
        }
        let g = self.to_grid().exp0();
        Ok(Self::from_grid(self.qdenom, &g, (0, 0), self.pmax, self.qmax))
    }

    /// Substitutes `p -> p^k`, `q -> q^k`.
    pub fn adams_sub(&self, k: u32) -> PQSeries {
        assert!(k >= 1, "Adams substitution needs k >= 1");
        let k = k as i64;
        PQSeries {
            qdenom: self.qdenom,
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i * k, j * k), c.clone()))
                .collect(),
            pmax: k * (self.pmax + 1) - 1,
            qmax: k * (self.qmax + 1) - 1,
        }
    }
}

impl Add for &PQSeries {
    type Output = PQSeries;
    fn add(self, rhs: &PQSeries) -> PQSeries {
        let (a, b) = PQSeries::common(self, rhs);
        let mut out = a.truncate(b.pmax, b.qmax);
        for (&e, c) in &b.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl Neg for &PQSeries {
    type Output = PQSeries;
    fn neg(self) -> PQSeries {
        self.scale(&coef(-1))
    }
}

impl Sub for &PQSeries {
    type Output = PQSeries;
    fn sub(self, rhs: &PQSeries) -> PQSeries {
        self + &(-rhs)
    }
}

impl Mul for &PQSeries {
    type Output = PQSeries;
    fn mul(self, rhs: &PQSeries) -> PQSeries {
        let (a, b) = PQSeries::common(self, rhs);
        let (vpa, vqa) = a.valuations();
        let (vpb, vqb) = b.valuations();
        let pmax = (a.pmax + vpb).min(b.pmax + vpa);
        let qmax = (a.qmax + vqb).min(b.qmax + vqa);
        let (rp, rq) = (pmax - vpa - vpb, qmax - vqa - vqb);
        if a.is_zero() || b.is_zero() || rp < 0 || rq < 0 {
            return PQSeries::zero(a.qdenom, pmax, qmax);
        }
        let shifted = |s: &PQSeries, vp: i64, vq: i64| {
            let mut g = Grid::zeros(rp as usize, rq as usize);
            for (&(i, j), c) in &s.terms {
                let (i, j) = (i - vp, j - vq);
                if i <= rp && j <= rq {
                    g.set(i as usize, j as usize, c.clone());
                }
            }
            g
        };
        let g = shifted(&a, vpa, vqa).mul(&shifted(&b, vpb, vqb));
        PQSeries::from_grid(a.qdenom, &g, (vpa + vpb, vqa + vqb), pmax, qmax)
    }
}

impl fmt::Display for PQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&(i, j), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})p^{i}q^({})", Ratio::new(j, self.qdenom))?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(
            f,
            " [p<={}, q<={}]",
            self.pmax,
            Ratio::new(self.qmax, self.qdenom)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(d: i64, pairs: &[((i64, i64), i64)], pmax: i64, qmax: i64) -> PQSeries {
        PQSeries::from_terms(d, pairs.iter().map(|&(e, c)| (e, coef(c))), pmax, qmax)
    }

    #[test]
    fn adams_on_monomial() {
        let s = poly(2, &[((1, 1), 1)], 4, 4);
        let t = s.adams_sub(3);
        assert_eq!(t.coeff(3, 3).unwrap(), coef(1));
        assert_eq!(t.terms().count(), 1);
        assert_eq!(t.pmax(), 14);
    }

    #[test]
    fn laurent_in_p_multiplication() {
        // p^{-1}(1 - p) * p = 1 - p, with the box shrinking accordingly
        let a = poly(1, &[((-1, 0), 1), ((0, 0), -1)], 3, 3);
        let b = poly(1, &[((1, 0), 1)], 5, 3);
        let c = &a * &b;
        assert_eq!(c.coeff(0, 0).unwrap(), coef(1));
        assert_eq!(c.coeff(1, 0).unwrap(), coef(-1));
        assert_eq!(c.pmax(), 4);
    }

    #[test]
    fn log_of_product_of_binomials() {
        // -log((1 - pq)(1 - p)^2) = sum (pq)^k/k + 2 sum p^k/k
        let f = &poly(1, &[((0, 0), 1), ((1, 1), -1)], 4, 4)
            * &poly(1, &[((0, 0), 1), ((1, 0), -1)], 4, 4).pow2();
        let l = -&f.log1().unwrap();
        for k in 1..=4 {
            assert_eq!(l.coeff(k, k).unwrap(), crate::series::ratio(1, k));
            assert_eq!(l.coeff(k, 0).unwrap(), crate::series::ratio(2, k));
        }
        assert_eq!(l.coeff(2, 1).unwrap(), Coef::zero());
    }

    impl PQSeries {
        fn pow2(&self) -> PQSeries {
            self * self
        }
    }

    #[test]
    fn out_of_box_coefficient_is_an_error() {
        let s = PQSeries::one(2, 3, 5);
        assert!(s.coeff(4, 0).is_err());
        assert!(s.coeff(0, 6).is_err());
        assert_eq!(s.coeff_at(0, Ratio::new(1, 3)).unwrap(), Coef::zero());
    }

    fn arb_pq() -> impl Strategy<Value = PQSeries> {
        (
            prop::sample::select(vec![1i64, 2]),
            prop::collection::vec(((0i64..4, 0i64..4), -3i64..4), 0..8),
            3i64..6,
            3i64..6,
        )
            .prop_map(|(d, ts, pm, qm)| {
                let mut s = PQSeries::one(d, pm, qm);
                for ((i, j), c) in ts {
                    if (i, j) != (0, 0) {
                        s = &s + &PQSeries::from_terms(d, [((i, j), coef(c))], pm, qm);
                    }
                }
                s
            })
    }

    proptest! {
        #[test]
        fn exp_log_roundtrip(f in arb_pq()) {
            let l = f.log1().unwrap();
            prop_assert_eq!(l.exp0().unwrap(), f);
        }

        #[test]
        fn ring_laws(a in arb_pq(), b in arb_pq(), c in arb_pq()) {
            let x = &(&a * &b) * &c;
            let y = &a * &(&b * &c);
            let (pm, qm) = (x.pmax().min(y.pmax()), x.qmax().min(y.qmax()));
            prop_assert_eq!(x.truncate(pm, qm), y.truncate(pm, qm));
            let x = &a * &(&b + &c);
            let y = &(&a * &b) + &(&a * &c);
            let (pm, qm) = (x.pmax().min(y.pmax()), x.qmax().min(y.qmax()));
            prop_assert_eq!(x.truncate(pm, qm), y.truncate(pm, qm));
        }

        #[test]
        fn adams_composes(a in arb_pq(), k in 1u32..4, l in 1u32..4) {
            prop_assert_eq!(a.adams_sub(k).adams_sub(l), a.adams_sub(k * l));
        }
    }
}
