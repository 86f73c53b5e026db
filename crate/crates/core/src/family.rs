//! One-parameter families `F(x, y, t)`: discriminant and equisaturation.

use crate::curve::{is_reduced, make_y_regular, resultant_y, squarefree_part};
use crate::error::{Error, Result};
use crate::poly::{BiPoly, TriPoly};
use crate::rat::{fmt_rat, int, Rat};
use crate::saturation::{saturation_profile, SaturationProfile};
use crate::upoly::UPoly;
use crate::ypoly;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyCurve {
    pub poly: TriPoly,
    /// Sorted, distinct, containing zero.
    pub t_values: Vec<Rat>,
}

impl FamilyCurve {
    pub fn new(poly: TriPoly, mut t_values: Vec<Rat>) -> Result<Self> {
        let d = poly.degree_in(1);
        if d == 0 {
            return Err(Error::InvalidArgument("family has no y".into()));
        }
        let lead = TriPoly::from_terms(poly.terms().filter(|(e, _)| e[1] == d).map(|(e, c)| (*e, c.clone())));
        if lead.total_degree() != d {
            return Err(Error::InvalidArgument("family must have a constant leading y-coefficient".into()));
        }
        t_values.sort();
        t_values.dedup();
        if !t_values.iter().any(|t| t.is_zero()) {
            return Err(Error::InvalidArgument("t samples must include 0".into()));
        }
        Ok(FamilyCurve { poly, t_values })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EquisatVerdict {
    Equisaturated,
    NotEquisaturated,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiberReport {
    pub t: Rat,
    /// Shear that made the fiber y-regular (zero when none was needed).
    pub shear: Rat,
    pub profile: SaturationProfile,
    /// `ord_x` of the reduced discriminant at this `t`.
    pub discriminant_order: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquisatReport {
    /// `Res_y(F, F_y)` in `x, t` (no `y`).
    pub discriminant: TriPoly,
    pub reduced_discriminant: TriPoly,
    pub per_t: Vec<FiberReport>,
    pub verdict: EquisatVerdict,
    /// Sample whose fiber profile differs from the one at `t = 0`.
    pub witness: Option<Rat>,
    pub reason: String,
}

/// Packs a polynomial in `x, t` into a `BiPoly` with `t` in the second slot.
fn xt_to_bi(p: &TriPoly) -> BiPoly {
    BiPoly::from_terms(p.terms().map(|(e, c)| ([e[0], e[2]], c.clone())))
}

fn bi_to_xt(p: &BiPoly) -> TriPoly {
    TriPoly::from_terms(p.terms().map(|(e, c)| ([e[0], 0, e[1]], c.clone())))
}

/// Squarefree part of `Res_y(F, F_y)`, together with the resultant itself.
pub fn family_discriminant(f: &FamilyCurve) -> (TriPoly, TriPoly) {
    let d = f.poly.degree_in(1) as usize;
    let dt = f.poly.degree_in(2) as usize;
    let n = (2 * d).saturating_sub(1) * dt;
    let fy = f.poly.derivative(1);
    let values: Vec<UPoly> = (0..=n)
        .map(|t| {
            let t = int(t as i64);
            resultant_y(&f.poly.fiber(&t), &fy.fiber(&t))
        })
        .collect();
    // main variable t, coefficients in x
    let r = ypoly::interpolate(&values);
    let disc = BiPoly::from_ypoly(&r);
    let reduced = squarefree_part(&disc);
    (bi_to_xt(&disc), bi_to_xt(&reduced))
}

pub fn equisaturation_check(f: &FamilyCurve) -> Result<EquisatReport> {
    let (disc, reduced) = family_discriminant(f);
    let red_bi = xt_to_bi(&reduced);
    let mut per_t = Vec::new();
    for t in &f.t_values {
        let fiber = f.poly.fiber(t);
        if fiber.is_zero() || !fiber.constant_term().is_zero() {
            return Err(Error::FiberNotAGerm(fmt_rat(t)));
        }
        if !is_reduced(&fiber) {
            return Err(Error::FiberNotReduced(fmt_rat(t)));
        }
        let (g, shear) = make_y_regular(&fiber, 0)?;
        let profile = saturation_profile(&g)?;
        let dred_t = red_bi.eval_var(1, t).y_coeff(0);
        per_t.push(FiberReport { t: t.clone(), shear, profile, discriminant_order: dred_t.ord() });
    }
    let zero = per_t.iter().find(|r| r.t.is_zero()).expect("0 is sampled").clone();
    let mut report = EquisatReport {
        discriminant: disc,
        reduced_discriminant: reduced,
        per_t,
        verdict: EquisatVerdict::Inconclusive,
        witness: None,
        reason: String::new(),
    };
    if let Some(w) = report.per_t.iter().find(|r| r.profile.exponent_multiset() != zero.profile.exponent_multiset()) {
        report.witness = Some(w.t.clone());
        report.verdict = EquisatVerdict::NotEquisaturated;
        report.reason = format!("fiber profile at t = {} differs from the one at t = 0", fmt_rat(&w.t));
        return Ok(report);
    }
    if report.per_t.iter().any(|r| !r.shear.is_zero()) {
        report.reason = "some fiber needed a shear; the projection is not transverse".into();
        return Ok(report);
    }
    if report.per_t.iter().any(|r| r.discriminant_order != zero.discriminant_order) {
        report.reason = "discriminant order at x = 0 varies with t".into();
        return Ok(report);
    }
    // reduced discriminant = x^e E(x, t); the locus is the t-axis alone near
    // x = 0 when E(0, t) has no root on the sampled interval
    let e = red_bi.terms().map(|(ex, _)| ex[0]).min().unwrap_or(0);
    let e0 = UPoly::from_coeffs((0..=red_bi.degree_in(1)).map(|j| red_bi.coeff(&[e, j])).collect());
    let (lo, hi) = (f.t_values.first().expect("nonempty"), f.t_values.last().expect("nonempty"));
    let roots = if e0.is_constant() { 0 } else { e0.count_real_roots(lo, hi) };
    if roots == 0 {
        report.verdict = EquisatVerdict::Equisaturated;
        report.reason = format!("ramification locus is x^{e} = 0 over [{}, {}]", fmt_rat(lo), fmt_rat(hi));
    } else {
        report.reason = format!("another discriminant component meets x = 0 at {roots} sampled-range value(s) of t");
    }
    Ok(report)
}
