//! Root multiplicities `c(m, n/N)` on a finite box, by two unrelated routes.
//!
//! * Product route: expand `F = p T(p) - p T(-1/τ)(q)` and read off the
//!   exponents of `F = ∏ (1 - p^m q^{n/N})^{c(m,n/N)}`.
//! * Structure route: the axis is `c(m,0)`; off the axis the positive part
//!   is the free Lie algebra on `V+`, whose character is
//!   `p ∏ (1 - p^m)^{-c(m,0)} Σ c(1,n/N) q^{n/N}`.
//!
//! Exact agreement of the two tables is the finite shadow of the
//! denominator identity.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::eta::MoonshineClass;
use crate::freelie::{witt_dims, DegreeBound, GradedDimTable};
use crate::series::{coef, coef_big, divisors, moebius, to_natural, Coef, PQSeries, QSeries};

/// Multiplicities on the box `1 <= m <= mmax`, `0 <= n <= qmax`, where
/// `(m, n)` stands for the root plotted at `(m, n/N)`. Zero entries are not
/// stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootTable {
    label: String,
    n: u64,
    mmax: u64,
    qmax: u64,
    mult: BTreeMap<(u64, u64), BigInt>,
}

impl RootTable {
    fn new(class: &MoonshineClass, mmax: u64, qmax: u64) -> Self {
        RootTable {
            label: class.label().to_string(),
            n: class.n(),
            mmax,
            qmax,
            mult: BTreeMap::new(),
        }
    }

    fn set(&mut self, m: u64, n: u64, v: BigInt) {
        if !v.is_zero() {
            self.mult.insert((m, n), v);
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Exponent denominator `N`.
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn bounds(&self) -> (u64, u64) {
        (self.mmax, self.qmax)
    }

    pub fn get(&self, m: u64, n: u64) -> BigInt {
        self.mult.get(&(m, n)).cloned().unwrap_or_default()
    }

    /// Nonzero entries, row-major.
    pub fn iter(&self) -> impl Iterator<Item = ((u64, u64), &BigInt)> {
        self.mult.iter().map(|(&k, v)| (k, v))
    }

    /// Same table with one entry replaced.
    pub fn with_entry(mut self, m: u64, n: u64, v: BigInt) -> Self {
        self.mult.remove(&(m, n));
        self.set(m, n, v);
        self
    }

    /// Restriction to a smaller box.
    pub fn restrict(&self, mmax: u64, qmax: u64) -> Self {
        RootTable {
            label: self.label.clone(),
            n: self.n,
            mmax,
            qmax,
            mult: self
                .mult
                .iter()
                .filter(|((m, n), _)| *m <= mmax && *n <= qmax)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// One row per box point `(m, n)` with `m >= 1`, zeros included.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("m\tn\tN\tmultiplicity\n");
        for m in 1..=self.mmax {
            for n in 0..=self.qmax {
                writeln!(out, "{m}\t{n}\t{}\t{}", self.n, self.get(m, n)).unwrap();
            }
        }
        out
    }

    /// Nonzero points with their kinds. Multiplicities are written as
    /// decimal strings since they outgrow 64-bit integers quickly.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            class: &'a str,
            #[serde(rename = "N")]
            n: u64,
            #[serde(rename = "box")]
            bounds: [u64; 2],
            points: Vec<LatticePoint>,
        }
        let doc = Doc {
            class: &self.label,
            n: self.n,
            bounds: [self.mmax, self.qmax],
            points: export_lattice(self),
        };
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointKind {
    SimpleMinus,
    SimplePlus,
    Nonsimple,
}

pub fn kind_of(m: u64, n: u64) -> PointKind {
    if n == 0 {
        PointKind::SimpleMinus
    } else if m == 1 {
        PointKind::SimplePlus
    } else {
        PointKind::Nonsimple
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticePoint {
    pub m: u64,
    pub n: u64,
    #[serde(serialize_with = "as_decimal")]
    pub multiplicity: BigInt,
    pub kind: PointKind,
}

fn as_decimal<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Nonzero points of the table in row-major order.
pub fn export_lattice(t: &RootTable) -> Vec<LatticePoint> {
    t.iter()
        .map(|((m, n), v)| LatticePoint {
            m,
            n,
            multiplicity: v.clone(),
            kind: kind_of(m, n),
        })
        .collect()
}

/// Exponents `c(β)` with `F = ∏_β (1 - x^β)^{c(β)}`, for `F` with constant
/// term 1. From `-log F = Σ_β c(β) Σ_k x^{kβ}/k`, each exponent is
/// `c(β) = Σ_{k | gcd β} μ(k)/k · [x^{β/k}](-log F)`.
pub fn product_exponents(f: &PQSeries) -> Result<BTreeMap<(i64, i64), Coef>> {
    let l = -&f.log1()?;
    let (pmax, qmax) = (f.pmax(), f.qmax());
    let mut out = BTreeMap::new();
    for i in 0..=pmax {
        for j in 0..=qmax {
            if (i, j) == (0, 0) {
                continue;
            }
            let g = i.gcd(&j) as u64;
            let mut acc = Coef::zero();
            for k in divisors(g) {
                let mu = moebius(k);
                if mu != 0 {
                    let k = k as i64;
                    acc += l.coeff(i / k, j / k)? * coef(mu as i64) / coef(k);
                }
            }
            if !acc.is_zero() {
                out.insert((i, j), acc);
            }
        }
    }
    Ok(out)
}

/// `∏_β (1 - x^β)^{c(β)}` on the given box, as `exp(-Σ_β c(β) Σ_k x^{kβ}/k)`.
pub fn product_from_exponents(
    qdenom: i64,
    exponents: &BTreeMap<(i64, i64), Coef>,
    pmax: i64,
    qmax: i64,
) -> Result<PQSeries> {
    let mut terms = Vec::new();
    for (&(i, j), c) in exponents {
        if (i, j) == (0, 0) || i < 0 || j < 0 {
            return Err(Error::Invalid(format!("exponent at ({i},{j}) is not positive")));
        }
        let mut k = 1;
        while k * i <= pmax && k * j <= qmax {
            terms.push(((k * i, k * j), -c / coef(k)));
            k += 1;
        }
    }
    PQSeries::from_terms(qdenom, terms, pmax, qmax).exp0()
}

fn check_box(class: &MoonshineClass, mmax: u64, qmax: u64) -> Result<()> {
    let order = class.order() as u64;
    if mmax > order || qmax > order {
        return Err(Error::TruncationExceeded {
            exponent: format!("box ({mmax}, {qmax})"),
            order: format!("{order} terms of each sequence"),
        });
    }
    if mmax == 0 {
        return Err(Error::Invalid("box needs mmax >= 1".into()));
    }
    Ok(())
}

/// `F = p T(p) - p T(-1/τ)(q)` on the box `p^{<= mmax}`, `q^{<= qmax/N}`.
pub fn denominator_series(class: &MoonshineClass, mmax: u64, qmax: u64) -> Result<PQSeries> {
    check_box(class, mmax, qmax)?;
    let n = class.n() as i64;
    let (pm, qm) = (mmax as i64, qmax as i64);
    let pt = PQSeries::from_p(&class.t_series().shift(1), n, qm)?;
    let ps = PQSeries::from_q(&class.fricke_series().with_denom(n)?, pm).shift_p(1);
    Ok((&pt - &ps).truncate(pm, qm))
}

pub fn mults_from_product(class: &MoonshineClass, mmax: u64, qmax: u64) -> Result<RootTable> {
    let f = denominator_series(class, mmax, qmax)?;
    let mut table = RootTable::new(class, mmax, qmax);
    for ((i, j), c) in product_exponents(&f)? {
        if i == 0 {
            return Err(Error::NonConforming(format!(
                "nonzero exponent {c} at p^0 q^({j}/{})",
                class.n()
            )));
        }
        let v = to_natural(&c, || format!("c({i},{j}/{})", class.n()))?;
        table.set(i as u64, j as u64, v);
    }
    Ok(table)
}

/// `∏_{m>0} (1 - p^m)^{-c(m,0)}` through `p^order`.
fn heisenberg_character(class: &MoonshineClass, order: i64) -> Result<QSeries> {
    let mut acc = QSeries::one(1, order);
    for m in 1..=order {
        let c = class.cm0(m as u64)?;
        if c.is_zero() {
            continue;
        }
        let e = i64::try_from(c)
            .map_err(|_| Error::NonConforming(format!("c({m},0) = {c} is too large")))?;
        let factor = QSeries::from_terms(1, [(0, coef(1)), (m, coef(-1))], order);
        acc = &acc * &factor.pow_int(-e)?;
    }
    Ok(acc)
}

/// Graded dimensions of `V+` at bidegrees `(m, n)`, `1 <= m <= mmax`,
/// `1 <= n <= qmax`: `dim V+_{1+k, n} = [p^k] ∏ (1 - p^m)^{-c(m,0)} · c(1,n/N)`.
pub fn vplus_dims(class: &MoonshineClass, mmax: u64, qmax: u64) -> Result<GradedDimTable> {
    check_box(class, mmax, qmax)?;
    let h = heisenberg_character(class, mmax as i64 - 1)?;
    let mut t = GradedDimTable::new(2);
    for k in 0..mmax {
        let hk = h.coeff_num(k as i64)?;
        for n in 1..=qmax {
            let v = &hk * coef_big(class.c1n(n)?.clone());
            t.set(vec![k + 1, n], to_natural(&v, || format!("V+ at ({}, {n})", k + 1))?);
        }
    }
    Ok(t)
}

pub fn mults_from_structure(class: &MoonshineClass, mmax: u64, qmax: u64) -> Result<RootTable> {
    let vplus = vplus_dims(class, mmax, qmax)?;
    let lie = witt_dims(&vplus, &DegreeBound::Box(vec![mmax, qmax]))?;
    let mut table = RootTable::new(class, mmax, qmax);
    for m in 1..=mmax {
        table.set(m, 0, class.cm0(m)?.clone());
    }
    for (d, v) in lie.iter() {
        table.set(d[0], d[1], v.clone());
    }
    Ok(table)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub m: u64,
    pub n: u64,
    #[serde(serialize_with = "as_decimal")]
    pub left: BigInt,
    #[serde(serialize_with = "as_decimal")]
    pub right: BigInt,
}

/// Points where the two tables differ, row-major.
pub fn compare(a: &RootTable, b: &RootTable) -> Result<Vec<Disagreement>> {
    if a.label != b.label || a.n != b.n || a.bounds() != b.bounds() {
        return Err(Error::Incomparable(format!(
            "{} (N={}, box {:?}) vs {} (N={}, box {:?})",
            a.label,
            a.n,
            a.bounds(),
            b.label,
            b.n,
            b.bounds()
        )));
    }
    let keys: std::collections::BTreeSet<_> = a.mult.keys().chain(b.mult.keys()).collect();
    Ok(keys
        .into_iter()
        .filter_map(|&(m, n)| {
            let (l, r) = (a.get(m, n), b.get(m, n));
            (l != r).then_some(Disagreement { m, n, left: l, right: r })
        })
        .collect())
}
