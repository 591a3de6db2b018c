//! Eta quotients, McKay–Thompson series and the two multiplicity sequences
//! they determine.
//!
//! For an eta quotient `T(τ) = ∏ η(a_i τ)^{b_i}` of weight zero we read off
//!
//! * `c(m,0)` from `T(τ) = q^{-1} ∏_{m>0} (1 - q^m)^{c(m,0)}`, and
//! * `c(1,n/N)` from the expansion of `T(-1/τ) = Σ_{n>0} c(1,n/N) q^{n/N}`.
//!
//! `T(-1/τ)` is computed twice: directly from `∏ η(τ/a_i)^{b_i}` and from
//! the product `P q^{1/N} ∏ (1 - q^{m/N})^{-c(m,0)}`. The two must agree.

mod classfile;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub use classfile::{parse_class_file, ClassDef};

use crate::error::{Error, Result};
use crate::series::{coef, coef_big, to_natural, Coef, QSeries};

/// Default number of terms when the caller does not choose one.
pub const DEFAULT_ORDER: i64 = 24;

/// `∏ η(a τ)^b` over the listed `(a, b)` factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EtaQuotient {
    factors: Vec<(u64, i64)>,
}

impl EtaQuotient {
    pub fn new(factors: Vec<(u64, i64)>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for &(a, b) in &factors {
            if a == 0 {
                return Err(Error::Invalid("eta scale must be positive".into()));
            }
            if b == 0 {
                return Err(Error::Invalid(format!("zero exponent on eta({a}τ)")));
            }
            if !seen.insert(a) {
                return Err(Error::Invalid(format!("duplicate eta scale {a}")));
            }
        }
        Ok(EtaQuotient { factors })
    }

    /// `η(τ)^24 η(2τ)^-24`.
    pub fn class_2b() -> Self {
        EtaQuotient {
            factors: vec![(1, 24), (2, -24)],
        }
    }

    /// `η(2τ)^12 η(4τ)^-12`.
    pub fn class_4d() -> Self {
        EtaQuotient {
            factors: vec![(2, 12), (4, -12)],
        }
    }

    pub fn factors(&self) -> &[(u64, i64)] {
        &self.factors
    }

    pub fn weight(&self) -> i64 {
        self.factors.iter().map(|&(_, b)| b).sum()
    }

    /// Exponent of the leading power of `q`: `Σ a b / 24`.
    pub fn leading_exponent(&self) -> Ratio<i64> {
        self.factors
            .iter()
            .map(|&(a, b)| Ratio::new(a as i64 * b, 24))
            .sum()
    }

    /// `∏ a^b` as an exact rational.
    pub fn scale_product(&self) -> BigRational {
        self.factors.iter().fold(BigRational::one(), |acc, &(a, b)| {
            let base = BigRational::from_integer(BigInt::from(a));
            let p = num_traits::pow(base, b.unsigned_abs() as usize);
            if b < 0 {
                acc / p
            } else {
                acc * p
            }
        })
    }
}

impl fmt::Display for EtaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(a, b)| {
                if a == 1 {
                    format!("eta(t)^{b}")
                } else {
                    format!("eta({a}t)^{b}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `(1 - q^{step/denom})^e` through numerator `order`, from generalized
/// binomial coefficients.
fn binomial_factor(denom: i64, step: i64, e: i64, order: i64) -> QSeries {
    let mut terms = Vec::new();
    let mut c = BigInt::one();
    let mut k = 0i64;
    while k * step <= order {
        let signed = if k % 2 == 0 { c.clone() } else { -c.clone() };
        terms.push((k * step, coef_big(signed)));
        // C(e, k+1) = C(e, k) * (e - k) / (k + 1)
        c = c * BigInt::from(e - k) / BigInt::from(k + 1);
        if c.is_zero() {
            break;
        }
        k += 1;
    }
    QSeries::from_terms(denom, terms, order)
}

/// `∏_i ∏_{n>=1} (1 - q^{n·scale_i/denom})^{b_i}` through numerator `order`.
fn eta_product_part(denom: i64, factors: &[(i64, i64)], order: i64) -> QSeries {
    let mut acc = QSeries::one(denom, order);
    for &(scale, b) in factors {
        let mut n = 1;
        while n * scale <= order {
            acc = &acc * &binomial_factor(denom, n * scale, b, order);
            n += 1;
        }
    }
    acc
}

/// q-expansion of an eta quotient: `q^{Σab/24}` times the product part,
/// with the product part carried through `q^order`.
pub fn expand_eta_quotient(eq: &EtaQuotient, order: i64) -> QSeries {
    let lead = eq.leading_exponent();
    let factors: Vec<(i64, i64)> = eq.factors.iter().map(|&(a, b)| (a as i64, b)).collect();
    let body = eta_product_part(1, &factors, order);
    let d = *lead.denom();
    body.lift(d).shift(*lead.numer()).reduce()
}

/// Peels `T = q^{-1} ∏ (1 - q^m)^{c(m,0)}` one factor at a time and returns
/// `[c(1,0), …, c(order,0)]`.
pub fn extract_cm0(t: &QSeries, order: i64) -> Result<Vec<BigInt>> {
    let t = t.with_denom(1)?;
    if t.valuation() != Some(-1) || !t.coeff_num(-1)?.is_one() {
        return Err(Error::NonConforming(
            "series must start with exactly q^-1".into(),
        ));
    }
    if t.order() < order - 1 {
        return Err(Error::TruncationExceeded {
            exponent: format!("q^{}", order - 1),
            order: format!("q^{}", t.order()),
        });
    }
    let mut rest = t.shift(1).truncate(order);
    let mut out = Vec::with_capacity(order as usize);
    for m in 1..=order {
        let c = -rest.coeff_num(m)?;
        let c = to_natural(&c, || format!("c({m},0)"))?;
        if !c.is_zero() {
            let e = i64::try_from(&c)
                .map_err(|_| Error::NonConforming(format!("c({m},0) = {c} is too large")))?;
            rest = &rest * &binomial_factor(1, m, -e, order);
        }
        out.push(c);
    }
    let recon = product_from_cm0(&out, order - 1)?;
    if recon != t.truncate(order - 1) {
        return Err(Error::NonConforming(
            "reconstruction from c(m,0) does not match the series".into(),
        ));
    }
    Ok(out)
}

/// `q^{-1} ∏_{m} (1 - q^m)^{cm0[m-1]}`, known through `q^order`.
pub fn product_from_cm0(cm0: &[BigInt], order: i64) -> Result<QSeries> {
    let mut acc = QSeries::one(1, order + 1);
    for (i, c) in cm0.iter().enumerate() {
        let m = i as i64 + 1;
        if c.is_zero() || m > order + 1 {
            continue;
        }
        let e = i64::try_from(c)
            .map_err(|_| Error::NonConforming(format!("c({m},0) = {c} is too large")))?;
        let factor = QSeries::from_terms(1, [(0, coef(1)), (m, coef(-1))], order + 1);
        acc = &acc * &factor.pow_int(e)?;
    }
    Ok(acc.shift(-1))
}

/// Result of the Fricke transform of a weight-zero eta quotient.
#[derive(Debug, Clone, PartialEq)]
pub struct FrickeData {
    pub n: u64,
    pub prefactor: BigInt,
    /// `T(-1/τ)` over denominator `n`, known through numerator `order`.
    pub series: QSeries,
}

/// Level `N` and prefactor `(∏ a^b)^{-1/2}`, with the preconditions checked.
pub fn fricke_invariants(eq: &EtaQuotient) -> Result<(u64, BigInt)> {
    let w = eq.weight();
    if w != 0 {
        return Err(Error::NonzeroWeight(w));
    }
    let lead: Ratio<i64> = eq
        .factors
        .iter()
        .map(|&(a, b)| Ratio::new(b, 24 * a as i64))
        .sum();
    if !lead.is_positive() || !lead.numer().is_one() {
        return Err(Error::NonIntegerLevel(lead.to_string()));
    }
    let n = *lead.denom() as u64;
    let inv = eq.scale_product().recip();
    if !inv.is_integer() || !inv.is_positive() {
        return Err(Error::PrefactorNotInteger(eq.scale_product().to_string()));
    }
    let inv = inv.to_integer();
    let root = inv.sqrt();
    if &root * &root != inv {
        return Err(Error::PrefactorNotInteger(eq.scale_product().to_string()));
    }
    Ok((n, root))
}

/// `T(-1/τ) = P ∏ η(τ/a_i)^{b_i}` expanded directly.
pub fn fricke_direct(eq: &EtaQuotient, order: i64) -> Result<FrickeData> {
    let (n, prefactor) = fricke_invariants(eq)?;
    let n_i = n as i64;
    let l = eq.factors.iter().fold(1i64, |l, &(a, _)| l.lcm(&(a as i64)));
    let d = l.lcm(&n_i);
    // q^{n/a} = q^{(n d / a) / d}
    let factors: Vec<(i64, i64)> = eq.factors.iter().map(|&(a, b)| (d / a as i64, b)).collect();
    let body_order = (order - 1) * (d / n_i);
    let body = eta_product_part(d, &factors, body_order);
    let series = body
        .shift(d / n_i)
        .scale(&coef_big(prefactor.clone()))
        .with_denom(n_i)?
        .truncate(order);
    Ok(FrickeData {
        n,
        prefactor,
        series,
    })
}

/// `P q^{1/N} ∏_{m>0} (1 - q^{m/N})^{-c(m,0)}` through numerator `order`.
pub fn fricke_from_product(n: u64, prefactor: &BigInt, cm0: &[BigInt], order: i64) -> Result<QSeries> {
    let n = n as i64;
    let body_order = order - 1;
    let mut acc = QSeries::one(n, body_order);
    for (i, c) in cm0.iter().enumerate() {
        let m = i as i64 + 1;
        if c.is_zero() || m > body_order {
            continue;
        }
        let e = i64::try_from(c)
            .map_err(|_| Error::NonConforming(format!("c({m},0) = {c} is too large")))?;
        acc = &acc * &binomial_factor(n, m, -e, body_order);
    }
    Ok(acc.shift(1).scale(&coef_big(prefactor.clone())))
}

/// Both routes to `T(-1/τ)`; fails unless they agree exactly.
pub fn fricke_transform(eq: &EtaQuotient, order: i64) -> Result<FrickeData> {
    let direct = fricke_direct(eq, order)?;
    let t = expand_eta_quotient(eq, order);
    let cm0 = extract_cm0(&t, order)?;
    let product = fricke_from_product(direct.n, &direct.prefactor, &cm0, order)?;
    if let Some(n) = first_difference(&direct.series, &product) {
        return Err(Error::NonConforming(format!(
            "direct and product expansions of T(-1/τ) differ at q^({n}/{})",
            direct.n
        )));
    }
    Ok(direct)
}

fn first_difference(a: &QSeries, b: &QSeries) -> Option<i64> {
    let order = a.order().min(b.order());
    let lo = a.valuation().into_iter().chain(b.valuation()).min()?;
    (lo..=order).find(|&k| a.coeff_num(k).ok() != b.coeff_num(k).ok())
}

/// Everything the Cartan matrix and the root computations need about one
/// non-Fricke class.
#[derive(Debug, Clone, PartialEq)]
pub struct MoonshineClass {
    label: String,
    quotient: Option<EtaQuotient>,
    n: u64,
    ell: u64,
    prefactor: BigInt,
    cm0: Vec<BigInt>,
    c1n: Vec<BigInt>,
    order: i64,
    t_series: QSeries,
    fricke: QSeries,
    overridden: bool,
}

impl MoonshineClass {
    /// Built-in class by label (`2B` or `4D`).
    pub fn builtin(label: &str, order: i64) -> Result<Self> {
        let eq = match label {
            "2B" => EtaQuotient::class_2b(),
            "4D" => EtaQuotient::class_4d(),
            other => {
                return Err(Error::Invalid(format!(
                    "unknown built-in class {other:?} (available: 2B, 4D)"
                )))
            }
        };
        build_class(label, &eq, order)
    }

    /// A class given directly by its two sequences. The series used by the
    /// product route are rebuilt from the sequences themselves.
    pub fn from_sequences(label: &str, n: u64, cm0: Vec<BigInt>, c1n: Vec<BigInt>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("N must be positive".into()));
        }
        let order = cm0.len().min(c1n.len()) as i64;
        if order < 1 {
            return Err(Error::Invalid("sequences must be nonempty".into()));
        }
        let cm0: Vec<BigInt> = cm0.into_iter().take(order as usize).collect();
        let c1n: Vec<BigInt> = c1n.into_iter().take(order as usize).collect();
        let t_series = product_from_cm0(&cm0, order - 1)?;
        let fricke = QSeries::from_terms(
            n as i64,
            c1n.iter().enumerate().map(|(i, c)| (i as i64 + 1, coef_big(c.clone()))),
            order,
        );
        let mut class = MoonshineClass {
            label: label.to_string(),
            quotient: None,
            n,
            ell: 0,
            prefactor: c1n[0].clone(),
            cm0,
            c1n,
            order,
            t_series,
            fricke,
            overridden: false,
        };
        class.refresh()?;
        Ok(class)
    }

    /// Replaces individual sequence entries without touching the series.
    /// The product route keeps using the true series, so any override that
    /// changes a value shows up as a disagreement between the two routes.
    pub fn with_overrides(&self, cm0: &[(u64, BigInt)], c1n: &[(u64, BigInt)]) -> Result<Self> {
        let mut out = self.clone();
        for (m, v) in cm0 {
            let slot = out
                .cm0
                .get_mut((*m as usize).wrapping_sub(1))
                .ok_or_else(|| Error::Invalid(format!("override c({m},0) outside order")))?;
            *slot = v.clone();
        }
        for (k, v) in c1n {
            let slot = out
                .c1n
                .get_mut((*k as usize).wrapping_sub(1))
                .ok_or_else(|| Error::Invalid(format!("override c(1,{k}/N) outside order")))?;
            *slot = v.clone();
        }
        out.overridden = !cm0.is_empty() || !c1n.is_empty();
        out.refresh()?;
        Ok(out)
    }

    pub fn rename(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    fn refresh(&mut self) -> Result<()> {
        for (i, c) in self.cm0.iter().enumerate() {
            to_natural(&coef_big(c.clone()), || format!("c({},0)", i + 1))?;
        }
        for (i, c) in self.c1n.iter().enumerate() {
            to_natural(&coef_big(c.clone()), || format!("c(1,{}/{})", i + 1, self.n))?;
        }
        if self.c1n[0].is_zero() {
            return Err(Error::NonConforming("c(1,1/N) must be nonzero".into()));
        }
        self.prefactor = self.c1n[0].clone();
        self.ell = self
            .cm0
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| i as u64 + 1)
            .ok_or_else(|| {
                Error::NonConforming(format!(
                    "c(m,0) vanishes for every m <= {}",
                    self.order
                ))
            })?;
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn quotient(&self) -> Option<&EtaQuotient> {
        self.quotient.as_ref()
    }

    /// Exponent denominator `N`.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Smallest `m` with `c(m,0) != 0`.
    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn prefactor(&self) -> &BigInt {
        &self.prefactor
    }

    /// Number of terms known in each sequence.
    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_overridden(&self) -> bool {
        self.overridden
    }

    /// `T(τ)`, known through `q^{order-1}`.
    pub fn t_series(&self) -> &QSeries {
        &self.t_series
    }

    /// `T(-1/τ)` over denominator `N`, known through numerator `order`.
    pub fn fricke_series(&self) -> &QSeries {
        &self.fricke
    }

    pub fn cm0_all(&self) -> &[BigInt] {
        &self.cm0
    }

    pub fn c1n_all(&self) -> &[BigInt] {
        &self.c1n
    }

    /// `c(m,0)` for `m >= 1`.
    pub fn cm0(&self, m: u64) -> Result<&BigInt> {
        self.cm0
            .get((m as usize).wrapping_sub(1))
            .ok_or_else(|| Error::TruncationExceeded {
                exponent: format!("c({m},0)"),
                order: format!("m <= {}", self.order),
            })
    }

    /// `c(1, n/N)` for `n >= 1`.
    pub fn c1n(&self, n: u64) -> Result<&BigInt> {
        self.c1n
            .get((n as usize).wrapping_sub(1))
            .ok_or_else(|| Error::TruncationExceeded {
                exponent: format!("c(1,{n}/{})", self.n),
                order: format!("n <= {}", self.order),
            })
    }

    /// Whether `q^{-1} ∏ (1 - q^m)^{c(m,0)}` reproduces `T(τ)` through the
    /// class order. Fails only for classes with overridden sequences.
    pub fn reconstruction_holds(&self) -> Result<bool> {
        let recon = product_from_cm0(&self.cm0, self.order - 1)?;
        Ok(recon == self.t_series.truncate(self.order - 1))
    }

    /// Whether the stored `c(1,n/N)` are the coefficients of `T(-1/τ)`.
    pub fn fricke_coefficients_hold(&self) -> Result<bool> {
        for (i, c) in self.c1n.iter().enumerate() {
            if self.fricke.coeff_num(i as i64 + 1)? != coef_big(c.clone()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Assembles a class from an eta quotient: expansion, `c(m,0)`, the Fricke
/// transform (both routes) and `c(1,n/N)`, each through `order` terms.
pub fn build_class(label: &str, eq: &EtaQuotient, order: i64) -> Result<MoonshineClass> {
    if order < 1 {
        return Err(Error::Invalid("order must be at least 1".into()));
    }
    if eq.factors.is_empty() {
        return Err(Error::Invalid("a class needs at least one eta factor".into()));
    }
    let fricke = fricke_transform(eq, order)?;
    let t_series = expand_eta_quotient(eq, order).truncate(order - 1);
    let cm0 = extract_cm0(&t_series, order)?;
    if fricke.series.valuation().is_some_and(|v| v < 1) {
        return Err(Error::NonConforming(
            "T(-1/τ) has terms at or below q^0".into(),
        ));
    }
    let c1n = (1..=order)
        .map(|k| {
            let c: Coef = fricke.series.coeff_num(k)?;
            to_natural(&c, || format!("c(1,{k}/{})", fricke.n))
        })
        .collect::<Result<Vec<_>>>()?;
    if c1n[0] != fricke.prefactor {
        return Err(Error::NonConforming(format!(
            "c(1,1/N) = {} differs from the prefactor {}",
            c1n[0], fricke.prefactor
        )));
    }
    let mut class = MoonshineClass {
        label: label.to_string(),
        quotient: Some(eq.clone()),
        n: fricke.n,
        ell: 0,
        prefactor: fricke.prefactor,
        cm0,
        c1n,
        order,
        t_series,
        fricke: fricke.series,
        overridden: false,
    };
    class.refresh()?;
    Ok(class)
}
