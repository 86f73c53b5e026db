//! Sparse multivariate polynomials over `Q` with a fixed number of variables.
//! `BiPoly` uses `(x, y)`, `TriPoly` uses `(x, y, t)`.

use crate::rat::{fmt_rat, Rat};
use crate::upoly::UPoly;
use crate::ypoly::YPoly;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<const N: usize> {
    terms: BTreeMap<[u32; N], Rat>,
}

pub type BiPoly = Poly<2>;
pub type TriPoly = Poly<3>;

pub const BI_VARS: [&str; 2] = ["x", "y"];
pub const TRI_VARS: [&str; 3] = ["x", "y", "t"];

impl<const N: usize> Default for Poly<N> {
    fn default() -> Self {
        Poly { terms: BTreeMap::new() }
    }
}

impl<const N: usize> Poly<N> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, [0; N])
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn monomial(c: Rat, e: [u32; N]) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; N];
        e[i] = 1;
        Self::monomial(Rat::one(), e)
    }

    pub fn from_terms(it: impl IntoIterator<Item = ([u32; N], Rat)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: [u32; N], c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; N], &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32; N]) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&[0; N])
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Lowest total degree of a term (`None` for zero).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    /// Homogeneous component of the given total degree.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self::from_terms(self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() == d).map(|(e, c)| (*e, c.clone())))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect() }
    }

    /// Positive rational multiple with coprime integer coefficients.
    pub fn primitive(&self) -> Self {
        use num_integer::Integer;
        let mut den = num_bigint::BigInt::one();
        let mut g = num_bigint::BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
            g = g.gcd(c.numer());
        }
        if g.is_zero() {
            return self.clone();
        }
        self.scale(&Rat::new(den, g))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let mut e = *ea;
                for i in 0..N {
                    e[i] += eb[i];
                }
                r.add_term(e, ca * cb);
            }
        }
        r
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Self {
        Self::from_terms(self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
            let mut f = *e;
            f[i] -= 1;
            (f, c * Rat::from_integer(e[i].into()))
        }))
    }

    /// Substitutes a rational value for variable `i` (the variable stays, with degree zero).
    pub fn eval_var(&self, i: usize, v: &Rat) -> Self {
        let mut r = Self::zero();
        for (e, c) in &self.terms {
            let mut f = *e;
            f[i] = 0;
            r.add_term(f, c * pow_rat(v, e[i]));
        }
        r
    }

    pub fn eval(&self, pt: &[Rat; N]) -> Rat {
        self.terms.iter().map(|(e, c)| (0..N).fold(c.clone(), |acc, i| acc * pow_rat(&pt[i], e[i]))).sum()
    }

    /// Replaces each variable by a polynomial.
    pub fn compose<const M: usize>(&self, subs: &[Poly<M>; N]) -> Poly<M> {
        let mut r = Poly::<M>::zero();
        for (e, c) in &self.terms {
            let mut t = Poly::<M>::constant(c.clone());
            for i in 0..N {
                if e[i] > 0 {
                    t = t.mul(&subs[i].pow(e[i]));
                }
            }
            r = r.add(&t);
        }
        r
    }

    /// Canonical text form, readable back by the parser.
    pub fn to_text(&self, vars: &[&str; N]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<&[u32; N]> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let ra: Vec<u32> = a.iter().rev().copied().collect();
            let rb: Vec<u32> = b.iter().rev().copied().collect();
            rb.cmp(&ra)
        });
        let mut s = String::new();
        for (idx, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mono: Vec<String> = (0..N)
                .filter(|&i| e[i] > 0)
                .map(|i| if e[i] == 1 { vars[i].to_string() } else { format!("{}^{}", vars[i], e[i]) })
                .collect();
            if mono.is_empty() {
                s.push_str(&fmt_rat(&a));
            } else {
                if !a.is_one() {
                    s.push_str(&fmt_rat(&a));
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

fn pow_rat(v: &Rat, k: u32) -> Rat {
    num_traits::pow(v.clone(), k as usize)
}

impl fmt::Display for Poly<2> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&BI_VARS))
    }
}

impl fmt::Display for Poly<3> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&TRI_VARS))
    }
}

impl BiPoly {
    pub fn x() -> Self {
        Self::var(0)
    }

    pub fn y() -> Self {
        Self::var(1)
    }

    pub fn deg_y(&self) -> u32 {
        self.degree_in(1)
    }

    /// View as a polynomial in `y` with coefficients in `Q[x]`.
    pub fn to_ypoly(&self) -> YPoly {
        let dy = self.degree_in(1) as usize;
        let mut rows: Vec<Vec<Rat>> = vec![Vec::new(); if self.is_zero() { 0 } else { dy + 1 }];
        for (e, c) in &self.terms {
            let row = &mut rows[e[1] as usize];
            if row.len() <= e[0] as usize {
                row.resize(e[0] as usize + 1, Rat::zero());
            }
            row[e[0] as usize] = c.clone();
        }
        YPoly::from_coeffs(rows.into_iter().map(UPoly::from_coeffs).collect())
    }

    pub fn from_ypoly(p: &YPoly) -> Self {
        let mut r = Self::zero();
        for (j, c) in p.coeffs().iter().enumerate() {
            for (i, a) in c.coeffs().iter().enumerate() {
                r.add_term([i as u32, j as u32], a.clone());
            }
        }
        r
    }

    /// `f(0, y)` as a univariate polynomial in `y`.
    pub fn restrict_x0(&self) -> UPoly {
        let d = self.degree_in(1) as usize;
        let mut v = vec![Rat::zero(); d + 1];
        for (e, c) in &self.terms {
            if e[0] == 0 {
                v[e[1] as usize] = c.clone();
            }
        }
        UPoly::from_coeffs(v)
    }

    /// `f(x + lambda*y, y)`.
    pub fn shear(&self, lambda: &Rat) -> Self {
        if lambda.is_zero() {
            return self.clone();
        }
        let xs = Self::x().add(&Self::y().scale(lambda));
        self.compose(&[xs, Self::y()])
    }

    /// Coefficient of `y^j` as a polynomial in `x`.
    pub fn y_coeff(&self, j: u32) -> UPoly {
        let mut v = Vec::new();
        for (e, c) in &self.terms {
            if e[1] == j {
                if v.len() <= e[0] as usize {
                    v.resize(e[0] as usize + 1, Rat::zero());
                }
                v[e[0] as usize] = c.clone();
            }
        }
        UPoly::from_coeffs(v)
    }
}

impl TriPoly {
    /// Fiber `F(x, y, t0)`.
    pub fn fiber(&self, t0: &Rat) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().map(|(e, c)| ([e[0], e[1]], c * pow_rat(t0, e[2]))))
    }

    pub fn from_bipoly(p: &BiPoly) -> Self {
        Self::from_terms(p.terms().map(|(e, c)| ([e[0], e[1], 0], c.clone())))
    }
}
