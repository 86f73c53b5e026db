//! Certified isolation of the complex roots of a squarefree rational polynomial.

use crate::bigfloat::{BigComplex, BigFloat};
use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::upoly::UPoly;
use num_traits::{Signed, Zero};

/// A root approximation with a disk that contains exactly this root; the disks
/// of one isolation, inflated by `sqrt(2)`, are pairwise disjoint.
#[derive(Clone, Debug)]
pub struct IsolatedRoot {
    pub z: BigComplex,
    pub radius: f64,
}

const MAX_WORKING_PREC: u32 = 1024;

fn horner(cs: &[BigComplex], z: &BigComplex) -> BigComplex {
    let mut acc = BigComplex::zero(z.prec());
    for c in cs.iter().rev() {
        acc = acc.mul(z).add(c);
    }
    acc
}

/// Value and derivative in one pass.
fn horner2(cs: &[BigComplex], z: &BigComplex) -> (BigComplex, BigComplex) {
    let mut p = BigComplex::zero(z.prec());
    let mut dp = BigComplex::zero(z.prec());
    for c in cs.iter().rev() {
        dp = dp.mul(z).add(&p);
        p = p.mul(z).add(c);
    }
    (p, dp)
}

fn to_complex(p: &UPoly, prec: u32) -> Vec<BigComplex> {
    p.coeffs().iter().map(|c| BigComplex::from_rat(c, prec)).collect()
}

/// Upper bound for the moduli of the roots (Fujiwara), as a natural log.
fn ln_root_bound(p: &UPoly) -> f64 {
    let n = p.deg();
    let ln_lc = BigFloat::from_rat(&p.lc(), 64).ln_abs();
    let mut best = f64::NEG_INFINITY;
    for k in 1..=n {
        let c = p.coeff(n - k);
        if c.is_zero() {
            continue;
        }
        let mut v = (BigFloat::from_rat(&c, 64).ln_abs() - ln_lc) / k as f64;
        if k == n {
            v -= std::f64::consts::LN_2 / n as f64;
        }
        best = best.max(v);
    }
    best + std::f64::consts::LN_2
}

fn aberth(p: &UPoly, wp: u32) -> Vec<BigComplex> {
    let n = p.deg();
    let cs = to_complex(p, wp);
    let dcs = to_complex(&p.derivative(), wp);
    let r = ln_root_bound(p).exp().clamp(1e-300, 1e300) * 0.5;
    let center = p.coeff(n - 1) / (p.lc() * Rat::from_integer((n as i64).into()));
    let center = -BigFloat::from_rat(&center, 64).to_f64();
    let mut z: Vec<BigComplex> = (0..n)
        .map(|k| {
            let a = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.7;
            BigComplex::from_f64(center + r * a.cos(), r * a.sin(), wp)
        })
        .collect();
    let one = BigComplex::one(wp);
    let tol = 2f64.powi(-(wp as i32) + 12);
    for _ in 0..600 {
        let mut worst = 0.0f64;
        for i in 0..n {
            let pv = horner(&cs, &z[i]);
            if pv.is_zero() {
                continue;
            }
            let dv = horner(&dcs, &z[i]);
            let mut s = BigComplex::zero(wp);
            for j in 0..n {
                if j != i {
                    let d = z[i].sub(&z[j]);
                    if !d.is_zero() {
                        s = s.add(&one.div(&d));
                    }
                }
            }
            let w = if dv.is_zero() {
                BigComplex::from_f64(1e-3, 1e-3, wp)
            } else {
                let ratio = pv.div(&dv);
                let den = one.sub(&ratio.mul(&s));
                if den.is_zero() {
                    ratio
                } else {
                    ratio.div(&den)
                }
            };
            let scale = z[i].abs().to_f64().max(1e-300);
            worst = worst.max(w.abs().to_f64() / scale.max(1.0));
            z[i] = z[i].sub(&w);
        }
        if worst < tol {
            break;
        }
    }
    z
}

fn newton_polish(cs: &[BigComplex], dcs: &[BigComplex], z: &BigComplex, prec: u32) -> BigComplex {
    let mut z = z.with_prec(prec);
    for _ in 0..((prec / 32).max(4) + 4) {
        let (pv, _) = horner2(cs, &z);
        let dv = horner(dcs, &z);
        if pv.is_zero() || dv.is_zero() {
            break;
        }
        z = z.sub(&pv.div(&dv));
    }
    z
}

/// Isolates all complex roots of a squarefree `p` of degree at least one.
pub fn isolate_roots(p: &UPoly, prec: u32) -> Result<Vec<IsolatedRoot>> {
    let n = p.deg();
    if p.is_zero() || n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        let r = -(p.coeff(0) / p.coeff(1));
        return Ok(vec![IsolatedRoot { z: BigComplex::from_rat(&r, prec), radius: 0.0 }]);
    }
    let mut wp = 64u32;
    loop {
        let approx = aberth(p, wp);
        let fp = prec.max(wp) + 32;
        let cs = to_complex(p, fp);
        let dcs = to_complex(&p.derivative(), fp);
        let abs_cs = to_complex(&UPoly::from_coeffs(p.coeffs().iter().map(|c| c.abs()).collect()), 64);
        let polished: Vec<BigComplex> = approx.iter().map(|z| newton_polish(&cs, &dcs, z, fp)).collect();
        if let Some(radii) = certify(&cs, &abs_cs, &polished, fp) {
            return Ok(polished
                .into_iter()
                .zip(radii)
                .map(|(z, radius)| IsolatedRoot { z: z.with_prec(prec), radius })
                .collect());
        }
        wp *= 2;
        if wp > MAX_WORKING_PREC {
            return Err(Error::PrecisionOverflow(format!("root isolation failed for degree {n} polynomial")));
        }
    }
}

fn certify(cs: &[BigComplex], abs_cs: &[BigComplex], z: &[BigComplex], fp: u32) -> Option<Vec<f64>> {
    let n = cs.len() - 1;
    let ulp = 2f64.powi(-(fp as i32) + 8);
    let mut radii = Vec::with_capacity(n);
    for zi in z {
        let (pv, dv) = horner2(cs, zi);
        let az = BigComplex::from_f64(zi.abs().to_f64(), 0.0, 64);
        let bound = horner(abs_cs, &az).re_f64();
        let err = bound * ulp * (2 * n + 2) as f64;
        let pa = pv.abs().to_f64() + err;
        let da = dv.abs().to_f64() - err * n as f64;
        if !(da > 0.0) || !pa.is_finite() {
            return None;
        }
        radii.push(n as f64 * pa / da * (1.0 + 1e-9));
    }
    let s2 = std::f64::consts::SQRT_2 * (1.0 + 1e-9);
    for i in 0..n {
        for j in i + 1..n {
            if z[i].dist_f64(&z[j]) <= s2 * (radii[i] + radii[j]) {
                return None;
            }
        }
    }
    Some(radii)
}

impl BigComplex {
    fn re_f64(&self) -> f64 {
        self.to_f64().0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_x4_minus_1() {
        let p = UPoly::from_ints(&[-1, 0, 0, 0, 1]);
        let rs = isolate_roots(&p, 128).unwrap();
        assert_eq!(rs.len(), 4);
        for r in &rs {
            let (a, b) = r.z.to_f64();
            assert!(((a * a + b * b).sqrt() - 1.0).abs() < 1e-30 + r.radius);
            assert!(r.radius < 1e-30);
        }
    }

    #[test]
    fn close_roots_are_separated() {
        // (x - 1)(x - 1 - 1e-12) scaled to integers, times x^2 + 1
        let d = 1_000_000_000_000i64;
        let a = UPoly::from_ints(&[-1, 1]);
        let b = UPoly::from_ints(&[-(d + 1), d]);
        let p = &(&a * &b) * &UPoly::from_ints(&[1, 0, 1]);
        let rs = isolate_roots(&p, 128).unwrap();
        assert_eq!(rs.len(), 4);
        let reals: Vec<&IsolatedRoot> = rs.iter().filter(|r| r.z.to_f64().1.abs() < 1e-20).collect();
        assert_eq!(reals.len(), 2);
        let gap = reals[1].z.dist_f64(&reals[0].z);
        assert!((gap - 1e-12).abs() < 1e-24);
    }

    #[test]
    fn large_coefficients() {
        // x^3 - 10^40
        let big = Rat::from_integer(num_bigint::BigInt::from(10).pow(40u32));
        let p = UPoly::from_coeffs(vec![-big, Rat::zero(), Rat::zero(), Rat::from_integer(1.into())]);
        let rs = isolate_roots(&p, 128).unwrap();
        assert_eq!(rs.len(), 3);
    }
}
