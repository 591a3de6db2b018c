//! Graded traces of a symmetry `h` and the twisted denominator identity.
//!
//! An [`AdamsFamily`] records `Tr(h^k | g_{m,0})` (the axis) and
//! `Tr(h^k | g_{1,n/N})` (the first column) for `k <= kmax`. From these the
//! traces of `h^k` on every root space of the free part are recovered by
//! inverting
//!
//! ```text
//! ∏_α exp(-Σ_k Tr(h^{sk} | g_α) x^{kα} / k) = 1 - Tr(h^s | V+)
//! ```
//!
//! one Adams level `s` at a time, starting from the top. Both sides of the
//! twisted identity are then expanded and compared on a box.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::eta::MoonshineClass;
use crate::series::{coef, coef_big, divisors, ratio, Coef, PQSeries};

/// A graded trace stored as a two-variable series with rational
/// coefficients.
pub type VirtualCharacter = PQSeries;

/// Traces of `h^k` on the simple root spaces, for `1 <= k <= kmax`.
/// Entries not listed are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct AdamsFamily {
    n: u64,
    kmax: u32,
    axis: BTreeMap<(u32, u64), Coef>,
    column: BTreeMap<(u32, u64), Coef>,
}

impl AdamsFamily {
    pub fn new(n: u64, kmax: u32) -> Result<Self> {
        if n == 0 || kmax == 0 {
            return Err(Error::Invalid("N and kmax must be positive".into()));
        }
        Ok(AdamsFamily {
            n,
            kmax,
            axis: BTreeMap::new(),
            column: BTreeMap::new(),
        })
    }

    /// `h = id`: every level sees the plain multiplicities of the class.
    pub fn identity(class: &MoonshineClass, kmax: u32) -> Result<Self> {
        let mut fam = Self::new(class.n(), kmax)?;
        for k in 1..=kmax {
            for (i, c) in class.cm0_all().iter().enumerate() {
                fam.set_axis(k, i as u64 + 1, coef_big(c.clone()));
            }
            for (i, c) in class.c1n_all().iter().enumerate() {
                fam.set_column(k, i as u64 + 1, coef_big(c.clone()));
            }
        }
        Ok(fam)
    }

    /// Random small rationals on `m <= mmax`, `n <= qmax`, deterministic in
    /// `seed`.
    pub fn random(n: u64, kmax: u32, mmax: u64, qmax: u64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut fam = Self::new(n.max(1), kmax.max(1)).expect("positive");
        let draw = |rng: &mut ChaCha8Rng| {
            if rng.gen_bool(0.3) {
                Coef::zero()
            } else {
                ratio(rng.gen_range(-6..=6), rng.gen_range(1..=3))
            }
        };
        for k in 1..=fam.kmax {
            for m in 1..=mmax {
                let v = draw(&mut rng);
                fam.set_axis(k, m, v);
            }
            for q in 1..=qmax {
                let v = draw(&mut rng);
                fam.set_column(k, q, v);
            }
        }
        fam
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn kmax(&self) -> u32 {
        self.kmax
    }

    pub fn set_axis(&mut self, k: u32, m: u64, v: Coef) {
        if v.is_zero() {
            self.axis.remove(&(k, m));
        } else {
            self.axis.insert((k, m), v);
        }
    }

    pub fn set_column(&mut self, k: u32, n: u64, v: Coef) {
        if v.is_zero() {
            self.column.remove(&(k, n));
        } else {
            self.column.insert((k, n), v);
        }
    }

    fn need(&self, k: u64) -> Result<u32> {
        if k == 0 || k > self.kmax as u64 {
            return Err(Error::MissingAdamsData(k as u32));
        }
        Ok(k as u32)
    }

    /// `Tr(h^k | g_{m,0})`.
    pub fn axis(&self, k: u64, m: u64) -> Result<Coef> {
        let k = self.need(k)?;
        Ok(self.axis.get(&(k, m)).cloned().unwrap_or_else(Coef::zero))
    }

    /// `Tr(h^k | g_{1,n/N})`.
    pub fn column(&self, k: u64, n: u64) -> Result<Coef> {
        let k = self.need(k)?;
        Ok(self.column.get(&(k, n)).cloned().unwrap_or_else(Coef::zero))
    }

    /// Parses the TOML family format:
    ///
    /// ```toml
    /// N = 2
    /// kmax = 4
    /// axis = [[1, 1, 24, 1]]      # [k, m, numerator, denominator]
    /// column = [[1, 1, 4096, 1]]  # [k, n, numerator, denominator]
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Repr {
            #[serde(rename = "N")]
            n: u64,
            kmax: u32,
            #[serde(default)]
            axis: Vec<(u32, u64, i64, i64)>,
            #[serde(default)]
            column: Vec<(u32, u64, i64, i64)>,
        }
        let r: Repr = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut fam = Self::new(r.n, r.kmax).map_err(|e| Error::Parse(e.to_string()))?;
        let mut seen = std::collections::BTreeSet::new();
        for (what, rows) in [("axis", &r.axis), ("column", &r.column)] {
            for &(k, i, num, den) in rows {
                if den == 0 {
                    return Err(Error::Parse(format!("{what} entry ({k}, {i}) has denominator 0")));
                }
                if k == 0 || k > r.kmax || i == 0 {
                    return Err(Error::Parse(format!(
                        "{what} entry ({k}, {i}) is outside 1 <= k <= kmax, index >= 1"
                    )));
                }
                if !seen.insert((what, k, i)) {
                    return Err(Error::Parse(format!("{what} entry ({k}, {i}) given twice")));
                }
                let v = ratio(num, den);
                if what == "axis" {
                    fam.set_axis(k, i, v);
                } else {
                    fam.set_column(k, i, v);
                }
            }
        }
        Ok(fam)
    }
}

/// `V_s(p, q)` with `Tr(h^s | V+) = V_s(p^s, q^s)`:
/// `exp(Σ_{l,m} axis(sl)(m) p^{lm} / l) · Σ_n column(s)(n) p q^{n/N}`.
fn vplus_unscaled(fam: &AdamsFamily, s: u64, pmax: i64, qmax: i64) -> Result<PQSeries> {
    let qd = fam.n as i64;
    if pmax < 1 || qmax < 1 {
        return Ok(PQSeries::zero(qd, pmax, qmax));
    }
    let mut sym = Vec::new();
    for l in 1..=pmax {
        for m in 1..=pmax / l {
            let a = fam.axis(s * l as u64, m as u64)?;
            if !a.is_zero() {
                sym.push(((l * m, 0), a / coef(l)));
            }
        }
    }
    let sym = PQSeries::from_terms(qd, sym, pmax, qmax).exp0()?;
    let col = PQSeries::from_terms(
        qd,
        (1..=qmax)
            .map(|n| Ok(((1, n), fam.column(s, n as u64)?)))
            .collect::<Result<Vec<_>>>()?,
        pmax,
        qmax,
    );
    Ok(&sym * &col)
}

/// `Tr(h^k | V+)` on the box `p^{<= pmax}`, `q^{<= qmax/N}`.
pub fn vplus_character(fam: &AdamsFamily, k: u32, pmax: u64, qmax: u64) -> Result<VirtualCharacter> {
    if k == 0 {
        return Err(Error::Invalid("Adams level must be positive".into()));
    }
    let ku = k as u64;
    let v = vplus_unscaled(fam, ku, (pmax / ku) as i64, (qmax / ku) as i64)?;
    Ok(v.adams_sub(k).truncate(pmax as i64, qmax as i64))
}

/// `Tr(h^k | g_{m,n/N})` for `n >= 1`, indexed by `(m, n)` and then `k`.
/// Only pairs with `k·(m, n)` inside the box are present.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FreeLieTraces {
    traces: BTreeMap<(u64, u64), BTreeMap<u64, Coef>>,
}

impl FreeLieTraces {
    pub fn get(&self, k: u64, m: u64, n: u64) -> Coef {
        self.traces
            .get(&(m, n))
            .and_then(|t| t.get(&k))
            .cloned()
            .unwrap_or_else(Coef::zero)
    }

    /// Nonzero `Tr(h | g_{m,n/N})`, row-major.
    pub fn level_one(&self) -> BTreeMap<(u64, u64), Coef> {
        self.traces
            .iter()
            .filter_map(|(&mn, t)| t.get(&1).filter(|c| !c.is_zero()).map(|c| (mn, c.clone())))
            .collect()
    }

    fn set(&mut self, k: u64, m: u64, n: u64, v: Coef) {
        self.traces.entry((m, n)).or_default().insert(k, v);
    }
}

/// Solves for the free-part traces on the box. With
/// `Λ_s = -log(1 - V_s)`, each level satisfies
/// `Λ_s(β) = Σ_{k | β} T_{sk}(β/k) / k`, so `T_s` follows from the higher
/// levels already known.
pub fn free_lie_adams(fam: &AdamsFamily, pmax: u64, qmax: u64) -> Result<FreeLieTraces> {
    let mut out = FreeLieTraces::default();
    for s in (1..=pmax).rev() {
        let (pb, qb) = ((pmax / s) as i64, (qmax / s) as i64);
        if qb < 1 {
            continue;
        }
        let v = vplus_unscaled(fam, s, pb, qb)?;
        let lambda = -&(&PQSeries::one(fam.n as i64, pb, qb) - &v).log1()?;
        if lambda.terms().any(|((i, _), _)| i == 0) {
            return Err(Error::NonConforming(format!(
                "level {s}: character has terms at p^0"
            )));
        }
        for m in 1..=pb {
            for n in 1..=qb {
                let mut t = lambda.coeff(m, n)?;
                let g = m.gcd(&n) as u64;
                for k in divisors(g).into_iter().skip(1) {
                    let (mk, nk) = (m as u64 / k, n as u64 / k);
                    t -= out.get(s * k, mk, nk) / coef(k as i64);
                }
                out.set(s, m as u64, n as u64, t);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct TwistedCheck {
    pub lhs: VirtualCharacter,
    pub rhs: VirtualCharacter,
    pub traces: FreeLieTraces,
    pub equal: bool,
}

impl TwistedCheck {
    /// First box point where the sides differ, row-major.
    pub fn first_difference(&self) -> Option<(i64, i64)> {
        (0..=self.lhs.pmax())
            .flat_map(|i| (0..=self.lhs.qmax()).map(move |j| (i, j)))
            .find(|&(i, j)| self.lhs.coeff(i, j).ok() != self.rhs.coeff(i, j).ok())
    }
}

/// Expands both sides of
///
/// ```text
/// exp(-Σ_{m,k} axis(k)(m) p^{mk} / k) - Σ_n column(1)(n) p q^{n/N}
///   = exp(-Σ_{α,k} Tr(h^k | g_α) x^{kα} / k)
/// ```
///
/// on the box, with axis data for `α = (m, 0)` and [`free_lie_adams`] for
/// the rest.
pub fn twisted_identity_check(fam: &AdamsFamily, pmax: u64, qmax: u64) -> Result<TwistedCheck> {
    let qd = fam.n as i64;
    let (pm, qm) = (pmax as i64, qmax as i64);
    let mut axis_log = Vec::new();
    for k in 1..=pm {
        for m in 1..=pm / k {
            let a = fam.axis(k as u64, m as u64)?;
            if !a.is_zero() {
                axis_log.push(((m * k, 0), -a / coef(k)));
            }
        }
    }
    let axis_part = PQSeries::from_terms(qd, axis_log.clone(), pm, qm);
    let column = PQSeries::from_terms(
        qd,
        (1..=qm)
            .map(|n| Ok(((1, n), fam.column(1, n as u64)?)))
            .collect::<Result<Vec<_>>>()?,
        pm,
        qm,
    );
    let lhs = &axis_part.exp0()? - &column;

    let traces = free_lie_adams(fam, pmax, qmax)?;
    let mut rhs_log = axis_log;
    for (&(m, n), by_k) in &traces.traces {
        for (&k, t) in by_k {
            let (i, j) = ((m * k) as i64, (n * k) as i64);
            if i <= pm && j <= qm && !t.is_zero() {
                rhs_log.push(((i, j), -t / coef(k as i64)));
            }
        }
    }
    let rhs = PQSeries::from_terms(qd, rhs_log, pm, qm).exp0()?;
    let equal = lhs == rhs;
    Ok(TwistedCheck {
        lhs,
        rhs,
        traces,
        equal,
    })
}

/// Level-one exponents of the right-hand side, axis included, as integers
/// when they are integral. Used to compare `h = id` against a root table.
pub fn level_one_exponents(fam: &AdamsFamily, check: &TwistedCheck, pmax: u64) -> Result<BTreeMap<(u64, u64), BigInt>> {
    let mut out = BTreeMap::new();
    for m in 1..=pmax {
        let a = fam.axis(1, m)?;
        if !a.is_zero() {
            out.insert((m, 0), crate::series::to_integer(&a, || format!("axis ({m},0)"))?);
        }
    }
    for ((m, n), c) in check.traces.level_one() {
        out.insert((m, n), crate::series::to_integer(&c, || format!("trace ({m},{n})"))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::mults_from_structure;
    use proptest::prelude::*;

    /// `exp` by summing `X^j / j!` with plain multiplication.
    fn naive_exp(x: &PQSeries) -> PQSeries {
        let mut out = PQSeries::one(x.qdenom(), x.pmax(), x.qmax());
        let mut term = out.clone();
        for j in 1..=(x.pmax() + x.qmax() + 1) {
            term = (&term * x).scale(&ratio(1, j));
            out = &out + &term;
        }
        out
    }

    #[test]
    fn identity_vplus_coefficient() {
        let c = MoonshineClass::builtin("2B", 8).unwrap();
        let fam = AdamsFamily::identity(&c, 8).unwrap();
        let v = vplus_character(&fam, 1, 4, 4).unwrap();
        assert_eq!(v.coeff(2, 1).unwrap(), coef(24 * 4096));
        assert_eq!(v.coeff(1, 1).unwrap(), coef(4096));
        assert!(v.terms().all(|(_, c)| c.is_integer() && *c >= coef(0)));
    }

    #[test]
    fn zero_family() {
        let fam = AdamsFamily::new(1, 4).unwrap();
        assert!(vplus_character(&fam, 1, 4, 4).unwrap().is_zero());
        let r = twisted_identity_check(&fam, 4, 4).unwrap();
        assert!(r.equal);
        assert_eq!(r.lhs, PQSeries::one(1, 4, 4));
        assert!(r.traces.level_one().is_empty());
    }

    #[test]
    fn single_axis_entry_gives_symmetric_algebra() {
        // axis(1)(1) = axis(k)(1) = 1: exp(Σ p^l / l) = 1/(1-p)
        let mut fam = AdamsFamily::new(1, 4).unwrap();
        for k in 1..=4 {
            fam.set_axis(k, 1, coef(1));
        }
        fam.set_column(1, 1, coef(1));
        let v = vplus_character(&fam, 1, 4, 2).unwrap();
        for m in 1..=4 {
            assert_eq!(v.coeff(m, 1).unwrap(), coef(1));
            assert_eq!(v.coeff(m, 2).unwrap(), coef(0));
        }
    }

    #[test]
    fn second_level_trace_formula() {
        let (t, psi) = (3, 5);
        let mut fam = AdamsFamily::new(1, 4).unwrap();
        fam.set_column(1, 1, coef(t));
        fam.set_column(2, 1, coef(psi));
        let tr = free_lie_adams(&fam, 4, 4).unwrap();
        assert_eq!(tr.get(1, 1, 1), coef(t));
        assert_eq!(tr.get(1, 2, 2), ratio(t * t - psi, 2));
        assert!(twisted_identity_check(&fam, 4, 4).unwrap().equal);
    }

    #[test]
    fn identity_matches_root_table() {
        for label in ["2B", "4D"] {
            let c = MoonshineClass::builtin(label, 8).unwrap();
            let fam = AdamsFamily::identity(&c, 8).unwrap();
            let r = twisted_identity_check(&fam, 8, 8).unwrap();
            assert!(r.equal, "{label}: {:?}", r.first_difference());
            let table = mults_from_structure(&c, 8, 8).unwrap();
            let expect: BTreeMap<_, _> = table.iter().map(|(k, v)| (k, v.clone())).collect();
            assert_eq!(level_one_exponents(&fam, &r, 8).unwrap(), expect, "{label}");
        }
    }

    #[test]
    fn missing_levels_are_reported() {
        let c = MoonshineClass::builtin("2B", 8).unwrap();
        let fam = AdamsFamily::identity(&c, 3).unwrap();
        assert!(matches!(
            twisted_identity_check(&fam, 6, 6),
            Err(Error::MissingAdamsData(4))
        ));
    }

    #[test]
    fn parse_family_file() {
        let fam = AdamsFamily::parse(
            "N = 2\nkmax = 2\naxis = [[1, 1, 24, 1], [2, 1, -3, 2]]\ncolumn = [[1, 1, 4096, 1]]\n",
        )
        .unwrap();
        assert_eq!(fam.axis(2, 1).unwrap(), ratio(-3, 2));
        assert_eq!(fam.column(2, 1).unwrap(), coef(0));
        assert!(fam.axis(3, 1).is_err());
        for bad in [
            "",
            "N = 2\nkmax = 2\naxis = [[3, 1, 1, 1]]\n",
            "N = 2\nkmax = 2\naxis = [[1, 1, 1, 0]]\n",
            "N = 2\nkmax = 2\naxis = [[1, 1, 1, 1], [1, 1, 2, 1]]\n",
            "N = 2\nkmax = 2\naxis = [[1, 1, 0.5, 1]]\n",
        ] {
            assert!(matches!(AdamsFamily::parse(bad), Err(Error::Parse(_))), "{bad:?}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn random_families_satisfy_the_identity(seed in any::<u64>()) {
            let fam = AdamsFamily::random(3, 4, 4, 4, seed);
            let r = twisted_identity_check(&fam, 4, 4).unwrap();
            prop_assert!(r.equal);
            // both sides again, with exponentials summed term by term
            let axis_log = PQSeries::from_terms(
                3,
                (1..=4i64).flat_map(|k| (1..=4 / k).map(move |m| (k, m)))
                    .map(|(k, m)| ((m * k, 0), -fam.axis(k as u64, m as u64).unwrap() / coef(k))),
                4,
                4,
            );
            let column = PQSeries::from_terms(
                3,
                (1..=4i64).map(|n| ((1, n), fam.column(1, n as u64).unwrap())),
                4,
                4,
            );
            prop_assert_eq!(&naive_exp(&axis_log) - &column, r.lhs.clone());
            let mut log = axis_log.clone();
            for m in 1..=4u64 {
                for n in 1..=4u64 {
                    for k in 1..=4u64 {
                        if m * k <= 4 && n * k <= 4 {
                            let t = r.traces.get(k, m, n);
                            let term = PQSeries::from_terms(
                                3,
                                [(((m * k) as i64, (n * k) as i64), -t / coef(k as i64))],
                                4,
                                4,
                            );
                            log = &log + &term;
                        }
                    }
                }
            }
            prop_assert_eq!(naive_exp(&log), r.rhs);
        }
    }
}
