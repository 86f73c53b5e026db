//! Truncated Puiseux series with coefficients in `K`, restriction of
//! fractions to branches, and order of differences between determinations.

use crate::bigfloat::BigComplex;
use crate::error::{Error, Result};
use crate::numfield::{Elem, NumberField};
use crate::poly::BiPoly;
use crate::puiseux::PuiseuxBranch;
use crate::rat::{floor_i64, lcm_u64, Order, Rat};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Series `sum c_j x^(j/den)`, exact for grid numerators `<= prec`.
/// `prec = None` means the series is a finite exact sum.
#[derive(Clone, Debug, PartialEq)]
pub struct KSeries {
    pub den: u64,
    pub terms: BTreeMap<i64, Elem>,
    pub prec: Option<i64>,
}

impl KSeries {
    pub fn zero(den: u64) -> Self {
        KSeries { den, terms: BTreeMap::new(), prec: None }
    }

    /// The polynomial `sum c_i x^i` as an exact series.
    pub fn from_x_poly(c: &crate::upoly::UPoly, den: u64, k: &NumberField) -> Self {
        let terms = c
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, a)| !num_traits::Zero::is_zero(*a))
            .map(|(i, a)| (i as i64 * den as i64, k.rat(a.clone())))
            .collect();
        KSeries { den, terms, prec: None }
    }

    pub fn from_branch(b: &PuiseuxBranch) -> Self {
        let n = b.ramification_index;
        let terms = b.grid_terms().into_iter().map(|(e, c)| (e, c.clone())).collect();
        let prec = floor_i64(&(&b.truncation_order * Rat::from_integer(n.into())));
        KSeries { den: n, terms, prec: Some(prec) }
    }

    /// Lowest known numerator, or a lower bound `prec + 1` when nothing is
    /// known to be nonzero; `None` for the exact zero series.
    fn ord_lb(&self) -> Option<i64> {
        match (self.terms.keys().next(), self.prec) {
            (Some(&e), _) => Some(e),
            (None, Some(p)) => Some(p + 1),
            (None, None) => None,
        }
    }

    /// Certified order when a nonzero term lies within the precision.
    pub fn order(&self) -> Option<Rat> {
        self.terms.keys().next().map(|&e| Rat::new(e.into(), (self.den as i64).into()))
    }

    /// True when no nonzero term is known (zero up to the precision).
    pub fn is_zero_to_prec(&self) -> bool {
        self.terms.is_empty()
    }

    /// Precision as an x-exponent; `None` when exact.
    pub fn precision(&self) -> Option<Rat> {
        self.prec.map(|p| Rat::new(p.into(), (self.den as i64).into()))
    }

    fn truncated(mut self) -> Self {
        if let Some(p) = self.prec {
            self.terms.retain(|&e, _| e <= p);
        }
        self
    }

    fn combine(&self, o: &Self, k: &NumberField, neg: bool) -> Self {
        assert_eq!(self.den, o.den, "grid mismatch");
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            let c = if neg { k.neg(c) } else { c.clone() };
            let v = match terms.get(e) {
                Some(a) => k.add(a, &c),
                None => c,
            };
            if v.is_zero() {
                terms.remove(e);
            } else {
                terms.insert(*e, v);
            }
        }
        let prec = min_prec(self.prec, o.prec);
        KSeries { den: self.den, terms, prec }.truncated()
    }

    pub fn add(&self, o: &Self, k: &NumberField) -> Self {
        self.combine(o, k, false)
    }

    pub fn sub(&self, o: &Self, k: &NumberField) -> Self {
        self.combine(o, k, true)
    }

    pub fn mul(&self, o: &Self, k: &NumberField) -> Self {
        assert_eq!(self.den, o.den, "grid mismatch");
        let (oa, ob) = match (self.ord_lb(), o.ord_lb()) {
            (Some(a), Some(b)) => (a, b),
            _ => return KSeries::zero(self.den),
        };
        let prec = min_prec(self.prec.map(|p| p + ob), o.prec.map(|p| p + oa));
        let mut terms: BTreeMap<i64, Elem> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e = ea + eb;
                if prec.is_some_and(|p| e > p) {
                    break;
                }
                let t = k.mul(ca, cb);
                let v = match terms.remove(&e) {
                    Some(a) => k.add(&a, &t),
                    None => t,
                };
                if !v.is_zero() {
                    terms.insert(e, v);
                }
            }
        }
        KSeries { den: self.den, terms, prec }
    }

    /// `1 / self`, computed through numerator `cap` when `self` is exact.
    pub fn inv(&self, cap: i64, k: &NumberField) -> Result<Self> {
        let (&o, c0) = self
            .terms
            .iter()
            .next()
            .ok_or_else(|| Error::InsufficientTruncation("inverting a series with no known term".into()))?;
        let prec = match self.prec {
            Some(p) => p - 2 * o,
            None => cap,
        };
        let c0inv = k.inv(c0);
        let tail: Vec<(i64, Elem)> = self.terms.iter().skip(1).map(|(e, c)| (e - o, k.mul(c, &c0inv))).collect();
        // u = 1 + tail; r = 1/u by the recursion r_j = -sum_{i>0} u_i r_{j-i}
        let steps = prec + o;
        let mut r: BTreeMap<i64, Elem> = BTreeMap::new();
        if steps >= 0 {
            r.insert(0, k.one());
        }
        for j in 1..=steps.max(0) {
            let mut acc = k.zero();
            for (i, ui) in &tail {
                if *i > j {
                    break;
                }
                if let Some(rj) = r.get(&(j - i)) {
                    acc = k.sub(&acc, &k.mul(ui, rj));
                }
            }
            if !acc.is_zero() {
                r.insert(j, acc);
            }
        }
        let terms = r.into_iter().map(|(e, c)| (e - o, k.mul(&c, &c0inv))).collect();
        Ok(KSeries { den: self.den, terms, prec: Some(prec) })
    }

    /// Moves the series to the finer grid `1/den2` (`den` must divide `den2`).
    pub fn regrid(&self, den2: u64) -> Self {
        assert_eq!(den2 % self.den, 0);
        let s = (den2 / self.den) as i64;
        KSeries {
            den: den2,
            terms: self.terms.iter().map(|(e, c)| (e * s, c.clone())).collect(),
            prec: self.prec.map(|p| p * s + s - 1),
        }
    }
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

/// `p(x, y_b(x))` for the determination-zero series of `b`.
pub fn eval_on_branch(p: &BiPoly, b: &PuiseuxBranch) -> KSeries {
    let k: &NumberField = &b.field;
    let n = b.ramification_index;
    let y = KSeries::from_branch(b);
    let yp = p.to_ypoly();
    let mut acc = KSeries::zero(n);
    for c in yp.coeffs().iter().rev() {
        acc = acc.mul(&y, k).add(&KSeries::from_x_poly(c, n, k), k);
    }
    acc
}

/// A restricted fraction under one determination. The coefficient at grid
/// exponent `j` is `coeff * zeta_n^twist` with `zeta_n = exp(2 pi i / n)`.
#[derive(Clone, Debug)]
pub struct FractionSeries {
    pub ramification_index: u64,
    pub determination: u64,
    /// `(exponent, coefficient, twist)`, increasing exponents, nonzero coefficients.
    pub terms: Vec<(Rat, Elem, u64)>,
    pub truncation_order: Rat,
    pub identically_zero_up_to_truncation: bool,
    pub field: Arc<NumberField>,
}

impl FractionSeries {
    pub fn order(&self) -> Order {
        match self.terms.first() {
            Some(t) => Order::Finite(t.0.clone()),
            None => Order::Infinite,
        }
    }

    /// Coefficient at an exponent, evaluated numerically under the embedding.
    pub fn coeff_f64(&self, idx: usize) -> (f64, f64) {
        let (_, c, t) = &self.terms[idx];
        let z = self.field.embed(c, 96).mul(&BigComplex::root_of_unity(*t as i64, self.ramification_index, 96));
        z.to_f64()
    }
}

/// Series of `p / q` restricted to determination `k` of the branch, with
/// precision reduced by twice the order of the denominator.
pub fn restrict_series(p: &BiPoly, q: &BiPoly, b: &PuiseuxBranch) -> Result<KSeries> {
    let k: &NumberField = &b.field;
    let ps = eval_on_branch(p, b);
    let qs = eval_on_branch(q, b);
    if qs.is_zero_to_prec() {
        return Err(Error::InsufficientTruncation(format!(
            "denominator vanishes on branch {} through order {}",
            b.branch_id, b.truncation_order
        )));
    }
    let cap = qs.prec.unwrap_or_else(|| ps.prec.unwrap_or(0));
    let qi = qs.inv(cap, k)?;
    Ok(ps.mul(&qi, k))
}

pub fn restrict_fraction(p: &BiPoly, q: &BiPoly, b: &PuiseuxBranch, determination: u64) -> Result<FractionSeries> {
    let n = b.ramification_index;
    let s = restrict_series(p, q, b)?;
    let kdet = determination % n;
    let terms: Vec<(Rat, Elem, u64)> = s
        .terms
        .iter()
        .map(|(e, c)| {
            (
                Rat::new((*e).into(), (n as i64).into()),
                c.clone(),
                (kdet as i128 * *e as i128).rem_euclid(n as i128) as u64,
            )
        })
        .collect();
    let truncation_order = s.precision().unwrap_or_else(|| b.truncation_order.clone());
    Ok(FractionSeries {
        ramification_index: n,
        determination: kdet,
        identically_zero_up_to_truncation: terms.is_empty(),
        terms,
        truncation_order,
        field: b.field.clone(),
    })
}

/// Whether `a == b * zeta_m^t` exactly. A nonzero ratio must be an `m`-th
/// root of unity in `K`; which one is then read off the embedding, where
/// distinct candidates are far apart.
pub fn eq_twisted(k: &NumberField, a: &Elem, b: &Elem, t: u64, m: u64) -> bool {
    let t = t % m;
    if t == 0 || a.is_zero() || b.is_zero() {
        return a == b;
    }
    let r = k.div(a, b);
    if k.pow(&r, m) != k.one() {
        return false;
    }
    let z = k.embed(&r, 128);
    let w = BigComplex::root_of_unity(t as i64, m, 128);
    let sep = (std::f64::consts::PI / m as f64).sin();
    z.dist_f64(&w) < sep
}

/// Result of comparing two twisted series on a common grid.
#[derive(Clone, Debug, PartialEq)]
pub enum DiffOrder {
    /// First exponent with a nonzero difference.
    Exact(Rat),
    /// No difference through this exponent.
    AtLeast(Rat),
}

/// Order of `A(zeta_na^ka s) - B(zeta_nb^kb s)` where `A`, `B` live on the
/// grids of their ramification indices `na`, `nb`.
pub fn twisted_diff_order(a: &KSeries, ka: u64, b: &KSeries, kb: u64, k: &NumberField) -> DiffOrder {
    let m = lcm_u64(a.den, b.den);
    let place = |s: &KSeries, kk: u64| -> (BTreeMap<i64, (Elem, u64)>, Option<i64>) {
        let f = m / s.den;
        let terms = s
            .terms
            .iter()
            .map(|(e, c)| (e * f as i64, (c.clone(), ((kk as i128 * *e as i128).rem_euclid(s.den as i128) as u64) * f)))
            .collect();
        (terms, s.prec.map(|p| p * f as i64 + f as i64 - 1))
    };
    let (ta, pa) = place(a, ka);
    let (tb, pb) = place(b, kb);
    let prec = min_prec(pa, pb);
    let mut keys: Vec<i64> = ta.keys().chain(tb.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    let mk = |e: i64| Rat::new(e.into(), (m as i64).into());
    for e in keys {
        if prec.is_some_and(|p| e > p) {
            break;
        }
        let same = match (ta.get(&e), tb.get(&e)) {
            (Some((x, u)), Some((y, w))) => eq_twisted(k, x, y, (w + m - u) % m, m),
            _ => false,
        };
        if !same {
            return DiffOrder::Exact(mk(e));
        }
    }
    match prec {
        Some(p) => DiffOrder::AtLeast(mk(p)),
        None => DiffOrder::AtLeast(Rat::from_integer(i64::MAX.into())),
    }
}
