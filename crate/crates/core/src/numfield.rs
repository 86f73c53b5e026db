//! Exact arithmetic in a number field `Q(theta)` with a fixed complex
//! embedding, polynomials over it, and factorization (Trager's norm method).

use crate::bigfloat::{BigComplex, BigFloat};
use crate::error::{Error, Result};
use crate::factor::factor_rational;
use crate::rat::{fmt_rat, Rat};
use crate::roots::{isolate_roots, IsolatedRoot};
use crate::upoly::{fmt_univariate, UPoly};
use crate::ypoly::{resultant, YPoly};
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Precision (bits) of the stored generator embedding.
pub const GEN_PREC: u32 = 320;
/// Largest field degree the engine will build.
pub const MAX_FIELD_DEGREE: usize = 48;

/// Element of a number field: a polynomial in the generator of degree below
/// the field degree. The representation is canonical, so `==` is exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Elem(UPoly);

impl Elem {
    pub fn repr(&self) -> &UPoly {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_rat(&self) -> Option<Rat> {
        if self.0.deg() == 0 {
            Some(self.0.coeff(0))
        } else {
            None
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_univariate(f, self.0.coeffs(), "theta")
    }
}

#[derive(Clone, Debug)]
pub struct NumberField {
    min_poly: UPoly,
    gen: BigComplex,
    gen_radius: f64,
}

impl PartialEq for NumberField {
    fn eq(&self, o: &Self) -> bool {
        self.min_poly == o.min_poly && self.gen.dist_f64(&o.gen) <= self.gen_radius + o.gen_radius
    }
}

impl NumberField {
    pub fn rationals() -> Self {
        NumberField { min_poly: UPoly::x(), gen: BigComplex::zero(GEN_PREC), gen_radius: 0.0 }
    }

    /// Field generated by the root of the irreducible `m` that comes first in
    /// the canonical order (largest real part, then largest imaginary part).
    pub fn new(m: &UPoly) -> Result<Self> {
        let m = m.monic();
        if m.deg() == 0 {
            return Err(Error::InvalidArgument("constant minimal polynomial".into()));
        }
        if m.deg() > MAX_FIELD_DEGREE {
            return Err(Error::PrecisionOverflow(format!(
                "number field degree {} exceeds cap {MAX_FIELD_DEGREE}",
                m.deg()
            )));
        }
        if m.deg() == 1 {
            return Ok(Self::rationals());
        }
        let mut roots = isolate_roots(&m, GEN_PREC)?;
        roots.sort_by(canonical_root_order);
        let r = roots.swap_remove(0);
        Ok(NumberField { min_poly: m, gen: r.z, gen_radius: r.radius })
    }

    pub fn degree(&self) -> usize {
        self.min_poly.deg()
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    pub fn min_poly(&self) -> &UPoly {
        &self.min_poly
    }

    pub fn generator(&self) -> &BigComplex {
        &self.gen
    }

    pub fn generator_radius(&self) -> f64 {
        self.gen_radius
    }

    pub fn rat(&self, r: Rat) -> Elem {
        Elem(UPoly::constant(r))
    }

    pub fn int(&self, n: i64) -> Elem {
        self.rat(Rat::from_integer(n.into()))
    }

    pub fn zero(&self) -> Elem {
        Elem(UPoly::zero())
    }

    pub fn one(&self) -> Elem {
        self.int(1)
    }

    /// The generator itself (zero in `Q`).
    pub fn theta(&self) -> Elem {
        self.reduce(UPoly::x())
    }

    pub fn from_poly(&self, p: UPoly) -> Elem {
        self.reduce(p)
    }

    fn reduce(&self, p: UPoly) -> Elem {
        if p.deg() < self.degree() {
            Elem(p)
        } else {
            Elem(p.rem(&self.min_poly))
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        Elem(&a.0 + &b.0)
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        Elem(&a.0 - &b.0)
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        Elem(-&a.0)
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.reduce(&a.0 * &b.0)
    }

    pub fn scale(&self, a: &Elem, r: &Rat) -> Elem {
        Elem(a.0.scale(r))
    }

    pub fn inv(&self, a: &Elem) -> Elem {
        assert!(!a.is_zero(), "inverse of zero in number field");
        if let Some(r) = a.as_rat() {
            return self.rat(r.recip());
        }
        let (g, s, _) = a.0.ext_gcd(&self.min_poly);
        debug_assert!(g == UPoly::one());
        self.reduce(s)
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Elem {
        self.mul(a, &self.inv(b))
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Numeric value under the fixed embedding.
    pub fn embed(&self, a: &Elem, prec: u32) -> BigComplex {
        let g = self.gen.with_prec(prec + 16);
        let mut acc = BigComplex::zero(prec + 16);
        for c in a.0.coeffs().iter().rev() {
            acc = acc.mul(&g).add(&BigComplex::from_rat(c, prec + 16));
        }
        acc.with_prec(prec)
    }

    pub fn embed_f64(&self, a: &Elem) -> (f64, f64) {
        self.embed(a, 64).to_f64()
    }

    /// Minimal polynomial of `a` over `Q` (monic), from the first linear
    /// dependence among its powers.
    pub fn elem_min_poly(&self, a: &Elem) -> UPoly {
        if let Some(r) = a.as_rat() {
            return UPoly::from_coeffs(vec![-r, Rat::one()]);
        }
        let d = self.degree();
        let mut powers = vec![self.one()];
        for k in 1..=d {
            powers.push(self.mul(&powers[k - 1], a));
            // Solve sum_{i<k} c_i a^i = a^k.
            let rows: Vec<Vec<Rat>> = (0..d)
                .map(|r| {
                    let mut row: Vec<Rat> = powers[..k].iter().map(|p| p.0.coeff(r)).collect();
                    row.push(powers[k].0.coeff(r));
                    row
                })
                .collect();
            if let Some(c) = crate::linalg::solve_augmented(rows) {
                let mut coeffs: Vec<Rat> = c.into_iter().map(|v| -v).collect();
                coeffs.push(Rat::one());
                return UPoly::from_coeffs(coeffs);
            }
        }
        unreachable!("degree of an element divides the field degree")
    }

    /// Isolating-box representation of an element.
    pub fn to_algnum(&self, a: &Elem) -> Result<AlgNum> {
        let m = self.elem_min_poly(a);
        if m.deg() == 1 {
            let r = -m.coeff(0);
            return Ok(AlgNum::rational(r));
        }
        let v = self.embed(a, 256);
        let roots = isolate_roots(&m, 160)?;
        let (best, _) = roots
            .iter()
            .enumerate()
            .min_by(|(_, x), (_, y)| x.z.dist_f64(&v).total_cmp(&y.z.dist_f64(&v)))
            .expect("nonempty root list");
        Ok(AlgNum::from_isolated(m, &roots[best]))
    }

    /// A rational polynomial viewed over this field.
    pub fn lift(&self, p: &UPoly) -> KPoly {
        KPoly::from_coeffs(p.coeffs().iter().map(|c| self.rat(c.clone())).collect())
    }

    /// Norm of a polynomial over this field down to `Q[x]`.
    pub fn norm(&self, g: &KPoly) -> UPoly {
        if self.is_rationals() {
            return UPoly::from_coeffs(g.0.iter().map(|c| c.0.coeff(0)).collect());
        }
        let d = self.degree();
        let m = YPoly::from_coeffs(self.min_poly.coeffs().iter().map(|c| UPoly::constant(c.clone())).collect());
        let gt = YPoly::from_coeffs(
            (0..d).map(|j| UPoly::from_coeffs(g.0.iter().map(|c| c.0.coeff(j)).collect())).collect(),
        );
        if gt.deg() == 0 {
            // coefficients all rational
            return gt.coeff(0).pow(d as u32);
        }
        resultant(&m, &gt).monic()
    }

    /// Monic irreducible factors of `g` over this field, with multiplicity.
    pub fn factor(&self, g: &KPoly) -> Result<Vec<(KPoly, usize)>> {
        let mut out = Vec::new();
        for (part, mult) in g.squarefree_decomposition(self) {
            for h in self.factor_squarefree(&part)? {
                out.push((h, mult));
            }
        }
        Ok(out)
    }

    fn factor_squarefree(&self, g: &KPoly) -> Result<Vec<KPoly>> {
        if g.deg() <= 1 {
            return Ok(if g.deg() == 1 { vec![g.monic(self)] } else { Vec::new() });
        }
        if self.is_rationals() {
            let q = self.norm(g);
            return Ok(factor_rational(&q).into_iter().map(|(f, _)| self.lift(&f)).collect());
        }
        let theta = self.theta();
        for s in shift_sequence().take(40) {
            let shift = self.scale(&theta, &Rat::from_integer(s.into()));
            let gs = g.taylor_shift(&self.neg(&shift), self);
            let n = self.norm(&gs);
            if !n.is_squarefree() {
                continue;
            }
            let mut out = Vec::new();
            for (p, _) in factor_rational(&n) {
                let h = gs.gcd(&self.lift(&p), self);
                if h.deg() > 0 {
                    out.push(h.taylor_shift(&shift, self));
                }
            }
            return Ok(out);
        }
        Err(Error::PrecisionOverflow("no squarefree norm found while factoring".into()))
    }

    /// Roots of `g` in this field (with multiplicity) and the remaining
    /// irreducible factors of degree two or more.
    pub fn roots(&self, g: &KPoly) -> Result<(Vec<(Elem, usize)>, Vec<(KPoly, usize)>)> {
        let mut roots = Vec::new();
        let mut rest = Vec::new();
        for (h, m) in self.factor(g)? {
            if h.deg() == 1 {
                roots.push((self.neg(&h.coeff(0)), m));
            } else {
                rest.push((h, m));
            }
        }
        roots.sort_by(|a, b| self.cmp_numeric(&a.0, &b.0));
        Ok((roots, rest))
    }

    /// Field generated over `Q` by this field and a root of the irreducible `g`.
    pub fn extend(&self, g: &KPoly) -> Result<NumberField> {
        assert!(g.deg() >= 2);
        if self.is_rationals() {
            return NumberField::new(&self.norm(g));
        }
        let theta = self.theta();
        for s in shift_sequence().take(40) {
            let shift = self.scale(&theta, &Rat::from_integer(s.into()));
            let n = self.norm(&g.taylor_shift(&self.neg(&shift), self));
            if n.is_squarefree() {
                return NumberField::new(&n);
            }
        }
        Err(Error::PrecisionOverflow("no primitive element found".into()))
    }

    /// Deterministic total order on elements through their embeddings.
    pub fn cmp_numeric(&self, a: &Elem, b: &Elem) -> Ordering {
        if a == b {
            return Ordering::Equal;
        }
        let (x, y) = (self.embed(a, 128), self.embed(b, 128));
        canonical_cmp(&x, &y).then_with(|| a.0.coeffs().len().cmp(&b.0.coeffs().len()))
    }
}

fn shift_sequence() -> impl Iterator<Item = i64> {
    (0..).map(|i: i64| if i % 2 == 1 { (i + 1) / 2 } else { -(i / 2) })
}

fn canonical_cmp(x: &BigComplex, y: &BigComplex) -> Ordering {
    let (xr, xi) = x.to_f64();
    let (yr, yi) = y.to_f64();
    let tol = 1e-12 * (1.0 + xr.abs().max(yr.abs()));
    if (xr - yr).abs() > tol {
        return yr.total_cmp(&xr);
    }
    yi.total_cmp(&xi)
}

fn canonical_root_order(a: &IsolatedRoot, b: &IsolatedRoot) -> Ordering {
    canonical_cmp(&a.z, &b.z)
}

/// A real or complex algebraic number: its minimal polynomial over `Q` and a
/// rational box containing exactly one of its roots.
#[derive(Clone, Debug)]
pub struct AlgNum {
    pub min_poly: UPoly,
    pub re: (Rat, Rat),
    pub im: (Rat, Rat),
}

impl AlgNum {
    pub fn rational(r: Rat) -> Self {
        AlgNum {
            min_poly: UPoly::from_coeffs(vec![-r.clone(), Rat::one()]),
            re: (r.clone(), r),
            im: (Rat::zero(), Rat::zero()),
        }
    }

    fn from_isolated(m: UPoly, r: &IsolatedRoot) -> Self {
        let half = Rat::from_float(r.radius * (1.0 + 1e-6) + f64::MIN_POSITIVE).unwrap_or_else(Rat::one);
        let (cr, ci) = (r.z.re.to_rat(), r.z.im.to_rat());
        AlgNum { min_poly: m, re: (&cr - &half, &cr + &half), im: (&ci - &half, &ci + &half) }
    }

    pub fn as_rat(&self) -> Option<Rat> {
        (self.min_poly.deg() == 1).then(|| -self.min_poly.coeff(0))
    }

    pub fn approx(&self) -> (f64, f64) {
        let two = Rat::from_integer(2.into());
        let re = (&self.re.0 + &self.re.1) / &two;
        let im = (&self.im.0 + &self.im.1) / &two;
        (BigFloat::from_rat(&re, 64).to_f64(), BigFloat::from_rat(&im, 64).to_f64())
    }

    fn boxes_overlap(&self, o: &Self) -> bool {
        self.re.0 <= o.re.1 && o.re.0 <= self.re.1 && self.im.0 <= o.im.1 && o.im.0 <= self.im.1
    }
}

impl PartialEq for AlgNum {
    /// Each box holds exactly one root. Disjoint boxes mean distinct roots;
    /// overlapping boxes smaller than the root separation mean the same root.
    fn eq(&self, o: &Self) -> bool {
        if self.min_poly != o.min_poly {
            return false;
        }
        if !self.boxes_overlap(o) {
            return false;
        }
        if self.min_poly.deg() == 1 {
            return true;
        }
        let roots = isolate_roots(&self.min_poly, 160).expect("minimal polynomial isolates");
        let mut sep = f64::INFINITY;
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                sep = sep.min(roots[i].z.dist_f64(&roots[j].z) - roots[i].radius - roots[j].radius);
            }
        }
        let diam = |a: &AlgNum| {
            let w = &a.re.1 - &a.re.0;
            let h = &a.im.1 - &a.im.0;
            crate::rat::to_f64(&w) + crate::rat::to_f64(&h)
        };
        diam(self) + diam(o) < sep
    }
}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rat() {
            return f.write_str(&fmt_rat(&r));
        }
        let (a, b) = self.approx();
        write!(f, "root of {} near {a:.6}{b:+.6}i", self.min_poly)
    }
}

/// Polynomial with coefficients in a number field (passed to every operation).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KPoly(Vec<Elem>);

impl KPoly {
    pub fn from_coeffs(mut c: Vec<Elem>) -> Self {
        while c.last().is_some_and(Elem::is_zero) {
            c.pop();
        }
        KPoly(c)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Elem {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &Self, k: &NumberField) -> Self {
        let n = self.0.len().max(o.0.len());
        Self::from_coeffs((0..n).map(|i| k.add(&self.coeff(i), &o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self, k: &NumberField) -> Self {
        let n = self.0.len().max(o.0.len());
        Self::from_coeffs((0..n).map(|i| k.sub(&self.coeff(i), &o.coeff(i))).collect())
    }

    pub fn mul(&self, o: &Self, k: &NumberField) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::default();
        }
        let mut v = vec![UPoly::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] = &v[i + j] + &(&a.0 * &b.0);
            }
        }
        Self::from_coeffs(v.into_iter().map(|p| k.from_poly(p)).collect())
    }

    pub fn scale(&self, c: &Elem, k: &NumberField) -> Self {
        Self::from_coeffs(self.0.iter().map(|a| k.mul(a, c)).collect())
    }

    pub fn monic(&self, k: &NumberField) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&k.inv(&self.lc()), k)
    }

    pub fn derivative(&self, k: &NumberField) -> Self {
        Self::from_coeffs(
            self.0.iter().enumerate().skip(1).map(|(i, c)| k.scale(c, &Rat::from_integer((i as i64).into()))).collect(),
        )
    }

    pub fn eval(&self, x: &Elem, k: &NumberField) -> Elem {
        let mut acc = k.zero();
        for c in self.0.iter().rev() {
            acc = k.add(&k.mul(&acc, x), c);
        }
        acc
    }

    /// `p(x + c)`.
    pub fn taylor_shift(&self, c: &Elem, k: &NumberField) -> Self {
        let lin = KPoly::from_coeffs(vec![c.clone(), k.one()]);
        let mut acc = KPoly::default();
        for a in self.0.iter().rev() {
            acc = acc.mul(&lin, k).add(&KPoly::from_coeffs(vec![a.clone()]), k);
        }
        acc
    }

    pub fn divrem(&self, d: &Self, k: &NumberField) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.0.clone();
        if r.len() < d.0.len() {
            return (KPoly::default(), self.clone());
        }
        let inv = k.inv(&d.lc());
        let dd = d.deg();
        let mut q = vec![k.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = k.mul(&r[i + dd], &inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                r[i + j] = k.sub(&r[i + j], &k.mul(&c, dc));
            }
            q[i] = c;
        }
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self, k: &NumberField) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b, k);
            a = b;
            b = r;
        }
        a.monic(k)
    }

    pub fn exact_div(&self, d: &Self, k: &NumberField) -> Self {
        let (q, r) = self.divrem(d, k);
        debug_assert!(r.is_zero());
        q
    }

    /// Yun's squarefree decomposition of a nonzero polynomial; parts are monic.
    pub fn squarefree_decomposition(&self, k: &NumberField) -> Vec<(KPoly, usize)> {
        let f = self.monic(k);
        let mut out = Vec::new();
        if f.deg() == 0 {
            return out;
        }
        let df = f.derivative(k);
        let a0 = f.gcd(&df, k);
        let mut b = f.exact_div(&a0, k);
        let mut c = df.exact_div(&a0, k);
        let mut d = c.sub(&b.derivative(k), k);
        let mut i = 1;
        while b.deg() > 0 {
            let a = b.gcd(&d, k);
            if a.deg() > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a, k);
            c = d.exact_div(&a, k);
            d = c.sub(&b.derivative(k), k);
            i += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    fn q(v: &[i64]) -> UPoly {
        UPoly::from_ints(v)
    }

    #[test]
    fn gaussian_field_arithmetic() {
        let k = NumberField::new(&q(&[1, 0, 1])).unwrap();
        let i = k.theta();
        assert_eq!(k.mul(&i, &i), k.int(-1));
        let a = k.add(&k.one(), &i);
        let inv = k.inv(&a);
        assert_eq!(k.mul(&a, &inv), k.one());
        let (re, im) = k.embed_f64(&i);
        assert!(re.abs() < 1e-15 && (im.abs() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn factor_over_extension() {
        // x^2 + 1 splits over Q(i); x^2 - 2 stays irreducible.
        let k = NumberField::new(&q(&[1, 0, 1])).unwrap();
        let f = k.lift(&q(&[1, 0, 1]));
        let (roots, rest) = k.roots(&f).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(rest.is_empty());
        let g = k.lift(&q(&[-2, 0, 1]));
        let (roots, rest) = k.roots(&g).unwrap();
        assert!(roots.is_empty());
        assert_eq!(rest.len(), 1);
        let l = k.extend(&rest[0].0).unwrap();
        assert_eq!(l.degree(), 4);
        let (roots, _) = l.roots(&l.lift(&q(&[-2, 0, 1]))).unwrap();
        assert_eq!(roots.len(), 2);
        let (roots, _) = l.roots(&l.lift(&q(&[1, 0, 1]))).unwrap();
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn cube_roots_of_unity_in_extension() {
        // x^3 - 2 over Q(cbrt 2): one root, remaining quadratic factor.
        let k = NumberField::new(&q(&[-2, 0, 0, 1])).unwrap();
        let (roots, rest) = k.roots(&k.lift(&q(&[-2, 0, 0, 1]))).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(rest.len(), 1);
        assert_eq!(rest[0].0.deg(), 2);
        let l = k.extend(&rest[0].0).unwrap();
        assert_eq!(l.degree(), 6);
        let (roots, _) = l.roots(&l.lift(&q(&[-2, 0, 0, 1]))).unwrap();
        assert_eq!(roots.len(), 3);
    }

    #[test]
    fn repeated_factors_over_field() {
        let k = NumberField::new(&q(&[-2, 0, 1])).unwrap();
        let s = k.theta();
        // (x - s)^2 (x + s)
        let lin = |c: &Elem| KPoly::from_coeffs(vec![k.neg(c), k.one()]);
        let f = lin(&s).mul(&lin(&s), &k).mul(&lin(&k.neg(&s)), &k);
        let (roots, rest) = k.roots(&f).unwrap();
        assert!(rest.is_empty());
        let mults: Vec<usize> = roots.iter().map(|r| r.1).collect();
        assert_eq!(mults.iter().sum::<usize>(), 3);
        assert!(roots.iter().any(|(r, m)| *r == s && *m == 2));
    }

    #[test]
    fn element_minimal_polynomial_and_algnum() {
        let k = NumberField::new(&q(&[1, 0, -10, 0, 1])).unwrap();
        let t = k.theta();
        let t2 = k.mul(&t, &t);
        // theta^2 = 5 +- 2 sqrt 6
        let m = k.elem_min_poly(&t2);
        assert_eq!(m, q(&[1, -10, 1]));
        let a = k.to_algnum(&t2).unwrap();
        let b = k.to_algnum(&k.mul(&t2, &k.one())).unwrap();
        assert_eq!(a, b);
        let c = k.to_algnum(&k.sub(&k.int(10), &t2)).unwrap();
        assert_ne!(a, c);
        let r = k.to_algnum(&k.int(3)).unwrap();
        assert_eq!(r.as_rat(), Some(int(3)));
    }
}
