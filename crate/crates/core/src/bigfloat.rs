//! Binary floating point with a configurable mantissa width, and complex
//! numbers over it. Only the field operations and square roots are provided;
//! that is all the numeric side of the crate needs.

use crate::rat::Rat;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// `mant * 2^exp`, with `|mant| < 2^prec` after every operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat { mant: BigInt::zero(), exp: 0, prec }
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        Self::normalized(BigInt::from(n), 0, prec)
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        if x == 0.0 || !x.is_finite() {
            return Self::zero(prec);
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), raw_exp - 1075) };
        Self::normalized(BigInt::from(m) * sign, e, prec)
    }

    pub fn from_rat(r: &Rat, prec: u32) -> Self {
        if r.is_zero() {
            return Self::zero(prec);
        }
        let num = r.numer();
        let den = r.denom();
        let shift = prec as i64 + den.bits() as i64 - num.bits() as i64 + 2;
        let scaled = if shift >= 0 { num << shift as usize } else { num >> (-shift) as usize };
        let q = scaled.div_floor(den);
        Self::normalized(q, -shift, prec)
    }

    fn normalized(mant: BigInt, exp: i64, prec: u32) -> Self {
        if mant.is_zero() {
            return Self::zero(prec);
        }
        let bits = mant.bits() as i64;
        let excess = bits - prec as i64;
        if excess <= 0 {
            return BigFloat { mant, exp, prec };
        }
        // round half away from zero
        let neg = mant.sign() == Sign::Minus;
        let mag = mant.abs();
        let half = BigInt::from(1) << (excess as usize - 1);
        let mut m = (&mag + half) >> excess as usize;
        let mut e = exp + excess;
        if m.bits() as i64 > prec as i64 {
            m >>= 1;
            e += 1;
        }
        BigFloat { mant: if neg { -m } else { m }, exp: e, prec }
    }

    /// Exact rational value.
    pub fn to_rat(&self) -> Rat {
        if self.exp >= 0 {
            Rat::from_integer(&self.mant << self.exp as usize)
        } else {
            Rat::new(self.mant.clone(), BigInt::from(1) << (-self.exp) as usize)
        }
    }

    /// `self * 2^k`, exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        BigFloat { mant: self.mant.clone(), exp: self.exp + k, prec: self.prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::normalized(self.mant.clone(), self.exp, prec)
    }

    pub fn neg(&self) -> Self {
        BigFloat { mant: -&self.mant, exp: self.exp, prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.prec.max(o.prec);
        if self.is_zero() {
            return o.with_prec(prec);
        }
        if o.is_zero() {
            return self.with_prec(prec);
        }
        // Operands far below the other's precision only affect rounding.
        let top_a = self.exp + self.mant.bits() as i64;
        let top_b = o.exp + o.mant.bits() as i64;
        if top_a > top_b + prec as i64 + 2 {
            return self.with_prec(prec);
        }
        if top_b > top_a + prec as i64 + 2 {
            return o.with_prec(prec);
        }
        let e = self.exp.min(o.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &o.mant << (o.exp - e) as usize;
        Self::normalized(a + b, e, prec)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prec = self.prec.max(o.prec);
        Self::normalized(&self.mant * &o.mant, self.exp + o.exp, prec)
    }

    pub fn mul_int(&self, n: i64) -> Self {
        Self::normalized(&self.mant * n, self.exp, self.prec)
    }

    pub fn div(&self, o: &Self) -> Self {
        assert!(!o.is_zero(), "BigFloat division by zero");
        let prec = self.prec.max(o.prec);
        if self.is_zero() {
            return Self::zero(prec);
        }
        let shift = prec as i64 + o.mant.bits() as i64 - self.mant.bits() as i64 + 2;
        let num = &self.mant << shift.max(0) as usize;
        let q = num / &o.mant;
        Self::normalized(q, self.exp - o.exp - shift.max(0), prec)
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of negative BigFloat");
        if self.is_zero() {
            return self.clone();
        }
        let mut shift = 2 * self.prec as i64 + 2 - self.mant.bits() as i64;
        if (self.exp - shift).is_odd() {
            shift += 1;
        }
        let m = if shift >= 0 { &self.mant << shift as usize } else { &self.mant >> (-shift) as usize };
        Self::normalized(m.sqrt(), (self.exp - shift) / 2, self.prec)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let drop = (bits - 60).max(0);
        let top = (&self.mant >> drop as usize).to_f64().unwrap();
        top * 2f64.powi((self.exp + drop).clamp(-2000, 2000) as i32)
    }

    /// Natural logarithm of `|self|` as f64 (finite for any nonzero value).
    pub fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.mant.bits() as i64;
        let drop = (bits - 60).max(0);
        let top = (&self.mant >> drop as usize).to_f64().unwrap().abs();
        top.ln() + (self.exp + drop) as f64 * std::f64::consts::LN_2
    }

    pub fn cmp_abs(&self, o: &Self) -> Ordering {
        self.abs().partial_cmp(&o.abs()).unwrap_or(Ordering::Equal)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        let d = self.sub(o);
        Some(match d.mant.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        })
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn zero(prec: u32) -> Self {
        BigComplex { re: BigFloat::zero(prec), im: BigFloat::zero(prec) }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_f64(1.0, 0.0, prec)
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        BigComplex { re: BigFloat::from_f64(re, prec), im: BigFloat::from_f64(im, prec) }
    }

    pub fn from_rat(r: &Rat, prec: u32) -> Self {
        BigComplex { re: BigFloat::from_rat(r, prec), im: BigFloat::zero(prec) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec.max(self.im.prec)
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        BigComplex { re: self.re.with_prec(prec), im: self.im.with_prec(prec) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        BigComplex { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        BigComplex { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> Self {
        BigComplex { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        BigComplex { re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)), im: self.re.mul(&o.im).add(&self.im.mul(&o.re)) }
    }

    pub fn scale(&self, s: &BigFloat) -> Self {
        BigComplex { re: self.re.mul(s), im: self.im.mul(s) }
    }

    pub fn norm_sqr(&self) -> BigFloat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt()
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn div(&self, o: &Self) -> Self {
        let d = o.norm_sqr();
        let n = self.mul(&o.conj());
        BigComplex { re: n.re.div(&d), im: n.im.div(&d) }
    }

    pub fn powi(&self, mut e: u64) -> Self {
        let mut r = Self::one(self.prec());
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// `exp(2 pi i k / n)`, computed by Newton refinement of `z^n = 1`.
    pub fn root_of_unity(k: i64, n: u64, prec: u32) -> Self {
        let k = k.rem_euclid(n as i64);
        if k == 0 {
            return Self::one(prec);
        }
        if 2 * k as u64 == n {
            return Self::from_f64(-1.0, 0.0, prec);
        }
        if 4 * k as u64 == n {
            return Self::from_f64(0.0, 1.0, prec);
        }
        if 4 * k as u64 == 3 * n {
            return Self::from_f64(0.0, -1.0, prec);
        }
        let ang = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        let wp = prec + 16;
        let mut z = Self::from_f64(ang.cos(), ang.sin(), wp);
        let one = Self::one(wp);
        let nn = BigComplex::from_f64(n as f64, 0.0, wp);
        let mut bits = 50u32;
        while bits < wp + 8 {
            let zn1 = z.powi(n - 1);
            let f = zn1.mul(&z).sub(&one);
            z = z.sub(&f.div(&nn.mul(&zn1)));
            bits *= 2;
        }
        z.with_prec(prec)
    }

    /// `|self - o|` as f64.
    pub fn dist_f64(&self, o: &Self) -> f64 {
        self.sub(o).abs().to_f64()
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r, i) = self.to_f64();
        write!(f, "({r:e}{i:+e}i)")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn field_ops_round_trip() {
        let p = 128;
        let a = BigFloat::from_rat(&rat(1, 3), p);
        let b = BigFloat::from_int(3, p);
        let one = a.mul(&b);
        assert!((one.to_f64() - 1.0).abs() < 1e-30);
        let c = BigFloat::from_int(1, p).div(&b);
        assert!(c.sub(&a).abs().to_f64() < 1e-37);
        let s = BigFloat::from_int(2, p).sqrt();
        assert!((s.mul(&s).to_f64() - 2.0).abs() < 1e-35);
    }

    #[test]
    fn tiny_differences_survive() {
        // 1 + 1e-30 - 1 at 128 bits keeps the 1e-30
        let p = 128;
        let one = BigFloat::from_int(1, p);
        let eps = BigFloat::from_rat(&Rat::new(1.into(), BigInt::from(10).pow(30)), p);
        let d = one.add(&eps).sub(&one);
        assert!((d.to_f64() / 1e-30 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn roots_of_unity() {
        let z = BigComplex::root_of_unity(1, 6, 200);
        let w = z.powi(6);
        assert!(w.sub(&BigComplex::one(200)).abs().to_f64() < 1e-55);
        let i = BigComplex::root_of_unity(1, 4, 64);
        assert_eq!(i.to_f64(), (0.0, 1.0));
    }

    #[test]
    fn ln_abs_of_tiny_values() {
        let x = BigFloat::from_rat(&Rat::new(1.into(), BigInt::from(10).pow(200)), 128);
        assert!((x.ln_abs() + 200.0 * std::f64::consts::LN_10).abs() < 1e-9);
    }
}
