//! Floating-point sampling oracle for the symbolic verdicts of `satcurve`.
//!
//! Points are drawn on the curve through the branch parametrizations, one
//! common `x` per sample, and slopes are fitted in log-log coordinates.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use satcurve::bigfloat::{BigComplex, BigFloat};
use satcurve::puiseux::{evaluate_branch, expand_curve, PuiseuxBranch};
use satcurve::rat::{lcm_u64, to_f64, Order};
use satcurve::saturation::{is_lipschitz_fraction, LipschitzReport, Verdict};
use satcurve::series::eval_on_branch;
use satcurve::{BiPoly, Error, Rat, Result};

pub const DEFAULT_SLOPE_TOLERANCE: f64 = 0.15;
pub const DEFAULT_EXPONENT_TOLERANCE: f64 = 0.1;
/// Extra x-order added to the symbolic expansion before sampling.
const ORDER_SLACK: i64 = 6;

#[derive(Clone, Debug, PartialEq)]
pub struct SamplePlan {
    /// Values of `|x|`, strictly decreasing.
    pub radii: Vec<f64>,
    pub pairs_per_radius: usize,
    pub seed: u64,
    pub float_precision: u32,
}

impl SamplePlan {
    pub fn new(radii: Vec<f64>, pairs_per_radius: usize, seed: u64, float_precision: u32) -> Result<Self> {
        if radii.is_empty() || pairs_per_radius == 0 || float_precision < 64 {
            return Err(Error::InvalidArgument("empty sample plan".into()));
        }
        if radii.windows(2).any(|w| w[1] >= w[0]) || radii[0] <= 0.0 || *radii.last().unwrap() <= 0.0 {
            return Err(Error::InvalidArgument("radii must be positive and strictly decreasing".into()));
        }
        if radii[0] > satcurve::puiseux::VALIDITY_RADIUS {
            return Err(Error::RadiusTooLarge(format!("{:e}", radii[0])));
        }
        Ok(SamplePlan { radii, pairs_per_radius, seed, float_precision })
    }

    /// `per_decade` geometric steps per decade from `10^-from` down to `10^-to`.
    pub fn decades(from: u32, to: u32, per_decade: u32, seed: u64) -> Self {
        let n = (to - from) * per_decade;
        let radii = (0..=n).map(|j| 10f64.powf(-(from as f64) - j as f64 / per_decade as f64)).collect();
        SamplePlan { radii, pairs_per_radius: 4, seed, float_precision: 128 }
    }
}

impl Default for SamplePlan {
    fn default() -> Self {
        Self::decades(1, 4, 4, 0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadiusSample {
    pub radius: f64,
    /// `ln` of the largest observed value; `None` when every value was zero.
    pub ln_max: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SlopeData {
    pub measured_slope: Option<f64>,
    pub samples: Vec<RadiusSample>,
    /// Every difference vanished: the fraction takes equal values on each fiber.
    pub degenerate: bool,
    pub working_precision: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConsistencyReport {
    pub verdict: Verdict,
    pub measured_slope: Option<f64>,
    /// `min (nu - mu/m)` over the types with finite `nu`.
    pub predicted_slope: Option<Rat>,
    pub agree: bool,
    pub tolerance: f64,
    pub residuals: Vec<RadiusSample>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContactCheck {
    pub measured: Option<f64>,
    pub predicted: Rat,
    pub agree: bool,
    pub samples: Vec<RadiusSample>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    /// Exponent `T + ord(f_y)` used for normalization.
    pub normalization: Rat,
    pub samples: Vec<RadiusSample>,
    pub slope: Option<f64>,
    pub bounded: bool,
}

/// Least-squares slope of `ln value` against `ln r` over the smallest half of the radii.
pub fn fit_slope(samples: &[RadiusSample]) -> Option<f64> {
    let half = samples.len() - samples.len() / 2;
    let pts: Vec<(f64, f64)> =
        samples[samples.len() - half..].iter().filter_map(|s| s.ln_max.map(|v| (s.radius.ln(), v))).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Some(sxy / sxx)
}

/// `p(x, y)` and `ln` of its largest term.
fn eval_poly(p: &BiPoly, x: &BigComplex, y: &BigComplex, prec: u32) -> (BigComplex, f64) {
    let mut acc = BigComplex::zero(prec);
    let mut top = f64::NEG_INFINITY;
    for (e, c) in p.terms() {
        let t = x.powi(e[0] as u64).mul(&y.powi(e[1] as u64)).mul(&BigComplex::from_rat(c, prec));
        if !t.is_zero() {
            top = top.max(ln_abs(&t));
        }
        acc = acc.add(&t);
    }
    (acc, top)
}

/// A unit complex number `exp(i theta)` at working precision.
fn unit(theta: f64, prec: u32) -> BigComplex {
    BigComplex::from_f64(theta.cos(), theta.sin(), prec)
}

/// All points over one `x`: `s` is a common root `x^(1/M)`, `M` the lcm of the ramification indices.
fn fiber_points(bs: &[PuiseuxBranch], s: &BigComplex, big_m: u64, prec: u32) -> Result<Vec<(BigComplex, BigComplex)>> {
    let mut pts = Vec::new();
    for b in bs {
        let sb = s.powi(big_m / b.ramification_index);
        for k in 0..b.ramification_index {
            pts.push(evaluate_branch(b, k, &sb, prec)?);
        }
    }
    Ok(pts)
}

fn ln_abs(z: &BigComplex) -> f64 {
    z.abs().ln_abs()
}

fn extra_bits(plan: &SamplePlan, exponent: f64) -> u32 {
    let rmin = *plan.radii.last().expect("nonempty");
    (exponent.max(0.0) * (-rmin.log2()) + 32.0).ceil() as u32
}

/// Largest `|h(P) - h(P')| / |P - P'|` over same-fiber pairs, per radius.
pub fn empirical_lipschitz_slope(p: &BiPoly, q: &BiPoly, f: &BiPoly, plan: &SamplePlan) -> Result<SlopeData> {
    let report = is_lipschitz_fraction(p, q, f)?;
    empirical_from_report(&report, f, plan)
}

fn empirical_from_report(report: &LipschitzReport, f: &BiPoly, plan: &SamplePlan) -> Result<SlopeData> {
    if let Some(b) = report.undefined_on {
        return Err(Error::DenominatorVanishesOnBranch(b));
    }
    let order = &report.expansion_order + Rat::from_integer(ORDER_SLACK.into());
    let e = expand_curve(f, &order)?;
    let big_m = e.branches.iter().fold(1, |m, b| lcm_u64(m, b.ramification_index));
    let scale = report
        .per_type
        .iter()
        .map(|t| to_f64(&t.contact.exponent).max(t.nu.finite().map(to_f64).unwrap_or(0.0)))
        .fold(0.0, f64::max)
        + report.boundedness.iter().filter_map(|o| o.finite().map(|r| -to_f64(r))).fold(0.0, f64::max);
    let prec = plan.float_precision + extra_bits(plan, scale);
    let zero_cut = -((prec - 24) as f64) * std::f64::consts::LN_2;
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let mut samples = Vec::new();
    let mut any_nonzero = false;
    for &r in &plan.radii {
        let mut best: Option<f64> = None;
        for _ in 0..plan.pairs_per_radius {
            let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let modulus = BigFloat::from_f64(r.powf(1.0 / big_m as f64), prec);
            let s = unit(theta / big_m as f64, prec).scale(&modulus);
            let pts = fiber_points(&e.branches, &s, big_m, prec)?;
            let hs: Vec<BigComplex> = pts
                .iter()
                .map(|(x, y)| {
                    eval_poly(&report.numerator, x, y, prec).0.div(&eval_poly(&report.denominator, x, y, prec).0)
                })
                .collect();
            for i in 0..pts.len() {
                for j in i + 1..pts.len() {
                    let dh = hs[i].sub(&hs[j]);
                    let lh = ln_abs(&dh);
                    let size = ln_abs(&hs[i]).max(ln_abs(&hs[j])).max(0.0);
                    if dh.is_zero() || lh - size < zero_cut {
                        continue;
                    }
                    let ratio = lh - ln_abs(&pts[i].1.sub(&pts[j].1));
                    best = Some(best.map_or(ratio, |b: f64| b.max(ratio)));
                    any_nonzero = true;
                }
            }
        }
        samples.push(RadiusSample { radius: r, ln_max: best });
    }
    Ok(SlopeData { measured_slope: fit_slope(&samples), samples, degenerate: !any_nonzero, working_precision: prec })
}

/// Smallest `nu - mu/m` over the types where the fraction differs.
pub fn predicted_slope(report: &LipschitzReport) -> Option<Rat> {
    report.per_type.iter().filter_map(|t| t.nu.finite().map(|nu| nu - &t.contact.exponent)).min()
}

pub fn crosscheck(p: &BiPoly, q: &BiPoly, f: &BiPoly, plan: &SamplePlan) -> Result<ConsistencyReport> {
    crosscheck_with_tolerance(p, q, f, plan, DEFAULT_SLOPE_TOLERANCE)
}

pub fn crosscheck_with_tolerance(
    p: &BiPoly,
    q: &BiPoly,
    f: &BiPoly,
    plan: &SamplePlan,
    tol: f64,
) -> Result<ConsistencyReport> {
    let report = is_lipschitz_fraction(p, q, f)?;
    crosscheck_report(&report, f, plan, tol)
}

/// Compares a finished symbolic report with sampling on the same curve.
pub fn crosscheck_report(
    report: &LipschitzReport,
    f: &BiPoly,
    plan: &SamplePlan,
    tol: f64,
) -> Result<ConsistencyReport> {
    let data = empirical_from_report(report, f, plan)?;
    let predicted = predicted_slope(report);
    let agree = match (&predicted, data.measured_slope) {
        (None, _) => data.degenerate,
        (Some(_), None) => false,
        (Some(pr), Some(m)) => {
            let close = (m - to_f64(pr)).abs() <= tol;
            let lip_ok = report.verdict != Verdict::Lipschitz || pr >= &Rat::from_integer(0.into());
            close && lip_ok
        }
    };
    Ok(ConsistencyReport {
        verdict: report.verdict,
        measured_slope: data.measured_slope,
        predicted_slope: predicted,
        agree,
        tolerance: tol,
        residuals: data.samples,
    })
}

/// Log-log slope of `|y_a - y_b|` for the class pairing determination 0 of
/// `a` with determination `k` of `b`.
pub fn verify_contact_exponent(
    a: &PuiseuxBranch,
    b: &PuiseuxBranch,
    k: u64,
    predicted: &Rat,
    plan: &SamplePlan,
) -> Result<ContactCheck> {
    let m = lcm_u64(a.ramification_index, b.ramification_index);
    let prec = plan.float_precision + extra_bits(plan, to_f64(predicted));
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let mut samples = Vec::new();
    for &r in &plan.radii {
        let mut best: Option<f64> = None;
        for _ in 0..plan.pairs_per_radius {
            let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let modulus = BigFloat::from_f64(r.powf(1.0 / m as f64), prec);
            let s = unit(theta / m as f64, prec).scale(&modulus);
            let (_, ya) = evaluate_branch(a, 0, &s.powi(m / a.ramification_index), prec)?;
            let (_, yb) = evaluate_branch(b, k, &s.powi(m / b.ramification_index), prec)?;
            let d = ya.sub(&yb);
            if !d.is_zero() {
                let v = ln_abs(&d);
                best = Some(best.map_or(v, |x: f64| x.max(v)));
            }
        }
        samples.push(RadiusSample { radius: r, ln_max: best });
    }
    let measured = fit_slope(&samples);
    let agree = measured.is_some_and(|v| (v - to_f64(predicted)).abs() <= DEFAULT_EXPONENT_TOLERANCE);
    Ok(ContactCheck { measured, predicted: predicted.clone(), agree, samples })
}

/// `|f(x, y_b(x))|` normalized by `|x|^(T + ord f_y)`, where `T` is the
/// truncation order: a truncation error of order above `T` in `y` moves `f`
/// by that much at most.
pub fn branch_residual_check(b: &PuiseuxBranch, f: &BiPoly, plan: &SamplePlan) -> Result<ResidualReport> {
    let fy = eval_on_branch(&f.derivative(1), b);
    let ofy = fy.order().unwrap_or_else(|| Rat::from_integer(0.into()));
    let norm = &b.truncation_order + &ofy;
    let n = b.ramification_index;
    let prec = plan.float_precision + extra_bits(plan, to_f64(&norm) + 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let mut samples = Vec::new();
    for &r in &plan.radii {
        let mut best: Option<f64> = None;
        for _ in 0..plan.pairs_per_radius {
            let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let modulus = BigFloat::from_f64(r.powf(1.0 / n as f64), prec);
            let s = unit(theta / n as f64, prec).scale(&modulus);
            let (x, y) = evaluate_branch(b, 0, &s, prec)?;
            let (v, top) = eval_poly(f, &x, &y, prec);
            // cancellation down to the rounding level counts as an exact zero
            if !v.is_zero() && ln_abs(&v) > top - (prec as f64 - 16.0) * std::f64::consts::LN_2 {
                let l = ln_abs(&v) - to_f64(&norm) * ln_abs(&x);
                best = Some(best.map_or(l, |z: f64| z.max(l)));
            }
        }
        samples.push(RadiusSample { radius: r, ln_max: best });
    }
    let slope = fit_slope(&samples);
    let bounded = slope.is_none_or(|s| s > -0.5 / n as f64);
    Ok(ResidualReport { normalization: norm, samples, slope, bounded })
}

/// Whether a symbolic order is finite and negative.
pub fn is_pole(o: &Order) -> bool {
    o.finite().is_some_and(|r| r < &Rat::from_integer(0.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use satcurve::parse_polynomial as p;
    use satcurve::puiseux::puiseux_expand;
    use satcurve::rat::{int, rat};

    fn plan() -> SamplePlan {
        SamplePlan::default()
    }

    #[test]
    fn plan_validation() {
        assert!(SamplePlan::new(vec![0.1, 0.01], 1, 0, 128).is_ok());
        assert!(SamplePlan::new(vec![0.01, 0.1], 1, 0, 128).is_err());
        assert!(SamplePlan::new(vec![0.9], 1, 0, 128).is_err());
        assert!(SamplePlan::new(vec![0.1], 0, 0, 128).is_err());
    }

    #[test]
    fn quintic_cusp_slope() {
        let d =
            empirical_lipschitz_slope(&p("y").unwrap(), &p("x").unwrap(), &p("y^2 - x^5").unwrap(), &plan()).unwrap();
        assert!((d.measured_slope.unwrap() + 1.0).abs() < 0.15, "{:?}", d.measured_slope);
        let c = crosscheck(&p("y").unwrap(), &p("x").unwrap(), &p("y^2 - x^5").unwrap(), &plan()).unwrap();
        assert!(c.agree);
        assert_eq!(c.predicted_slope, Some(int(-1)));
    }

    #[test]
    fn degenerate_and_bounded() {
        let d =
            empirical_lipschitz_slope(&p("x").unwrap(), &p("1").unwrap(), &p("y^2 - x^3").unwrap(), &plan()).unwrap();
        assert!(d.degenerate);
        let d =
            empirical_lipschitz_slope(&p("y").unwrap(), &p("1").unwrap(), &p("y^2 - x^3").unwrap(), &plan()).unwrap();
        // the ratio is identically one
        for s in &d.samples {
            assert!(s.ln_max.unwrap().abs() < 1e-20);
        }
        assert!(crosscheck(&p("x + y").unwrap(), &p("1").unwrap(), &p("y^2 - x^3").unwrap(), &plan()).unwrap().agree);
        let c = crosscheck(&p("y").unwrap(), &p("x^2").unwrap(), &p("y^2 - x^3").unwrap(), &plan()).unwrap();
        assert_eq!(c.verdict, Verdict::Unbounded);
        assert_eq!(c.predicted_slope, Some(int(-2)));
        assert!(c.agree);
    }

    #[test]
    fn contact_slopes() {
        let bs = puiseux_expand(&p("y^2 - x^3").unwrap(), &int(4)).unwrap();
        assert!(verify_contact_exponent(&bs[0], &bs[0], 1, &rat(3, 2), &plan()).unwrap().agree);
        let bs = puiseux_expand(&p("y^2 - x^4").unwrap(), &int(4)).unwrap();
        assert!(verify_contact_exponent(&bs[0], &bs[1], 0, &int(2), &plan()).unwrap().agree);
        let bs = puiseux_expand(&p("y*(y - x)").unwrap(), &int(4)).unwrap();
        let c = verify_contact_exponent(&bs[0], &bs[1], 0, &int(1), &plan()).unwrap();
        assert!(c.agree);
        assert!(!verify_contact_exponent(&bs[0], &bs[1], 0, &int(2), &plan()).unwrap().agree);
    }

    #[test]
    fn residuals() {
        let f = p("y - x^2").unwrap();
        let bs = puiseux_expand(&f, &int(3)).unwrap();
        let r = branch_residual_check(&bs[0], &f, &plan()).unwrap();
        assert!(r.bounded);
        assert!(r.samples.iter().all(|s| s.ln_max.is_none()));
        let f = p("y^2 - x^3 - x^4").unwrap();
        let bs = puiseux_expand(&f, &int(3)).unwrap();
        assert!(branch_residual_check(&bs[0], &f, &plan()).unwrap().bounded);
        let mut bad = bs[0].clone();
        let k = bad.field.clone();
        bad.terms[1].1 = k.add(&bad.terms[1].1, &k.one());
        assert!(!branch_residual_check(&bad, &f, &plan()).unwrap().bounded);
    }

    #[test]
    fn deterministic() {
        let a =
            empirical_lipschitz_slope(&p("y").unwrap(), &p("x").unwrap(), &p("y^2 - x^5").unwrap(), &plan()).unwrap();
        let b =
            empirical_lipschitz_slope(&p("y").unwrap(), &p("x").unwrap(), &p("y^2 - x^5").unwrap(), &plan()).unwrap();
        assert_eq!(a, b);
    }
}
