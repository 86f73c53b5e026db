//! Complete factorization of univariate rational polynomials
//! (Cantor–Zassenhaus modulo a small prime, Hensel lifting, subset recombination).

#[cfg(test)]
use crate::rat::Rat;
use crate::upoly::UPoly;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Irreducible monic factors with multiplicities; the product times the
/// leading coefficient of `p` equals `p`. Constants yield an empty list.
pub fn factor_rational(p: &UPoly) -> Vec<(UPoly, usize)> {
    let mut out = Vec::new();
    for (part, mult) in p.squarefree_decomposition() {
        for g in factor_squarefree_integer(&part.primitive_integer()) {
            out.push((UPoly::from_bigints(&g).monic(), mult));
        }
    }
    out.sort_by(|a, b| (a.0.deg(), a.1, a.0.coeffs()).cmp(&(b.0.deg(), b.1, b.0.coeffs())));
    out
}

pub fn is_irreducible(p: &UPoly) -> bool {
    let f = factor_rational(p);
    f.len() == 1 && f[0].1 == 1
}

/// Factors a primitive squarefree integer polynomial into primitive irreducibles.
pub fn factor_squarefree_integer(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![f.to_vec()];
    }
    // Strip factors of x.
    if f[0].is_zero() {
        let mut rest = factor_squarefree_integer(&f[1..]);
        rest.push(vec![BigInt::zero(), BigInt::one()]);
        return rest;
    }
    let (p, factors) = choose_prime(f);
    if factors.len() == 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();
    let bound = mignotte_bound(f) * lc.abs() * 2u32;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut k = 1u32;
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift_all(f, &factors, p, k);
    recombine(f, lifted, &modulus)
}

fn mignotte_bound(f: &[BigInt]) -> BigInt {
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let root = norm2.sqrt() + 1u32;
    root << (f.len() - 1)
}

// ---------------------------------------------------------------------------
// Z/p arithmetic on dense u64 vectors (low degree first, normalized).

type Fp = Vec<u64>;

fn fp_norm(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn fp_from_big(f: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    fp_norm(f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    fp_norm(
        (0..n)
            .map(|i| {
                let x = *a.get(i).unwrap_or(&0);
                let y = *b.get(i).unwrap_or(&0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + mulmod(x, y, p)) % p;
        }
    }
    fp_norm(r)
}

fn fp_divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let inv = invmod(*b.last().unwrap(), p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = mulmod(r[i + db], inv, p);
        q[i] = c;
        if c != 0 {
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + p - mulmod(c, y, p)) % p;
            }
        }
    }
    r.truncate(db);
    (fp_norm(q), fp_norm(r))
}

fn fp_monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = invmod(l, p);
            a.iter().map(|&c| mulmod(c, inv, p)).collect()
        }
    }
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = fp_divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    fp_monic(&a, p)
}

fn fp_derivative(a: &Fp, p: u64) -> Fp {
    fp_norm(a.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % p, p)).collect())
}

fn fp_powmod(base: &Fp, mut e: BigInt, m: &Fp, p: u64) -> Fp {
    let mut r: Fp = vec![1];
    let mut b = fp_divrem(base, m, p).1;
    let two = BigInt::from(2);
    while e.is_positive() {
        if e.is_odd() {
            r = fp_divrem(&fp_mul(&r, &b, p), m, p).1;
        }
        b = fp_divrem(&fp_mul(&b, &b, p), m, p).1;
        e /= &two;
    }
    r
}

/// `(g, s, t)` with `s a + t b = g` monic, over Z/p.
fn fp_ext_gcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (Fp, Fp) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Fp, Fp) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s2 = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t2 = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = invmod(*r0.last().unwrap(), p);
    let sc = |v: &Fp| fp_norm(v.iter().map(|&c| mulmod(c, inv, p)).collect());
    (sc(&r0), sc(&s0), sc(&t0))
}

struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

/// Distinct-degree then equal-degree factorization of a monic squarefree polynomial.
fn fp_factor(f: &Fp, p: u64) -> Vec<Fp> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut d = 1usize;
    let pb = BigInt::from(p);
    while rest.len() > 2 * d {
        h = fp_powmod(&h, pb.clone(), &rest, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &rest, p);
        if g.len() > 1 {
            out.extend(fp_equal_degree(&g, d, p));
            rest = fp_divrem(&rest, &g, p).0;
            h = fp_divrem(&h, &rest, p).1;
        }
        d += 1;
    }
    if rest.len() > 1 {
        out.push(fp_monic(&rest, p));
    }
    out.sort();
    out
}

fn fp_equal_degree(g: &Fp, d: usize, p: u64) -> Vec<Fp> {
    let n = g.len() - 1;
    if n == d {
        return vec![fp_monic(g, p)];
    }
    let mut rng = XorShift(0x9e37_79b9_7f4a_7c15 ^ (n as u64) ^ (p << 20));
    let e = (BigInt::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: Fp = fp_norm((0..n).map(|_| rng.next() % p).collect());
        if a.len() < 2 {
            continue;
        }
        let b = fp_sub(&fp_powmod(&a, e.clone(), g, p), &vec![1], p);
        let c = fp_gcd(&b, g, p);
        if c.len() > 1 && c.len() < g.len() {
            let other = fp_divrem(g, &c, p).0;
            let mut v = fp_equal_degree(&c, d, p);
            v.extend(fp_equal_degree(&other, d, p));
            return v;
        }
    }
}

const SMALL_PRIMES: [u64; 30] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109,
    113, 127,
];

/// Picks, among a handful of admissible primes, the one giving fewest modular factors.
fn choose_prime(f: &[BigInt]) -> (u64, Vec<Fp>) {
    let lc = f.last().unwrap();
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    let mut candidates: Vec<u64> = SMALL_PRIMES.to_vec();
    let mut next = 131u64;
    let mut idx = 0;
    while tried < 5 {
        if idx == candidates.len() {
            while !is_prime(next) {
                next += 2;
            }
            candidates.push(next);
            next += 2;
        }
        let p = candidates[idx];
        idx += 1;
        if (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = fp_from_big(f, p);
        if fp.len() != f.len() {
            continue;
        }
        if fp_gcd(&fp, &fp_derivative(&fp, p), p).len() > 1 {
            continue;
        }
        tried += 1;
        let fac = fp_factor(&fp_monic(&fp, p), p);
        if best.as_ref().is_none_or(|b| fac.len() < b.1.len()) {
            best = Some((p, fac));
        }
        if best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    best.expect("no admissible prime")
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// ---------------------------------------------------------------------------
// Hensel lifting over Z / p^k with BigInt coefficients.

type Zp = Vec<BigInt>;

fn zp_norm(mut a: Zp) -> Zp {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zp_reduce(a: &Zp, m: &BigInt) -> Zp {
    zp_norm(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zp_mul(a: &Zp, b: &Zp, m: &BigInt) -> Zp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    zp_reduce(&r, m)
}

fn zp_add(a: &Zp, b: &Zp, m: &BigInt) -> Zp {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zp_reduce(&(0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect(), m)
}

fn zp_sub(a: &Zp, b: &Zp, m: &BigInt) -> Zp {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zp_reduce(&(0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect(), m)
}

/// Division by a monic polynomial modulo m.
fn zp_divrem_monic(a: &Zp, b: &Zp, m: &BigInt) -> (Zp, Zp) {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (Vec::new(), zp_reduce(a, m));
    }
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].mod_floor(m);
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                r[i + j] -= &c * y;
            }
        }
        q[i] = c;
    }
    r.truncate(db);
    (zp_reduce(&q, m), zp_reduce(&r, m))
}

fn fp_to_zp(a: &Fp) -> Zp {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts `f = g h (mod p)` with `g` monic to `mod p^k`.
fn hensel_pair(f: &Zp, g: &Fp, h: &Fp, p: u64, k: u32) -> (Zp, Zp) {
    let (_, s, t) = fp_ext_gcd(g, h, p);
    let pb = BigInt::from(p);
    let (s, t) = (fp_to_zp(&s), fp_to_zp(&t));
    let mut gz = fp_to_zp(g);
    let mut hz = fp_to_zp(h);
    let mut pj = pb.clone();
    for _ in 1..k {
        let pj1 = &pj * &pb;
        let err = zp_sub(&zp_reduce(f, &pj1), &zp_mul(&gz, &hz, &pj1), &pj1);
        // err is divisible by p^j
        let e: Zp = zp_reduce(&err.iter().map(|c| c / &pj).collect(), &pb);
        let et = zp_mul(&e, &t, &pb);
        let (q, dg) = zp_divrem_monic(&et, &fp_to_zp(g), &pb);
        let dh = zp_add(&zp_mul(&e, &s, &pb), &zp_mul(&q, &fp_to_zp(h), &pb), &pb);
        let scale = |v: &Zp| -> Zp { v.iter().map(|c| c * &pj).collect() };
        gz = zp_add(&gz, &scale(&dg), &pj1);
        hz = zp_add(&hz, &scale(&dh), &pj1);
        pj = pj1;
    }
    (gz, hz)
}

/// Lifts the monic modular factors of `f` (up to lc) to monic factors mod p^k.
fn hensel_lift_all(f: &[BigInt], factors: &[Fp], p: u64, k: u32) -> Vec<Zp> {
    let modulus = BigInt::from(p).pow(k);
    let mut out = Vec::new();
    let mut current: Zp = zp_reduce(&f.to_vec(), &modulus);
    let mut rest: Vec<Fp> = factors.to_vec();
    while rest.len() > 1 {
        let g = rest.remove(0);
        let cur_p = fp_from_big(&current, p);
        let h = fp_divrem(&cur_p, &g, p).0;
        let (gl, hl) = hensel_pair(&current, &g, &h, p, k);
        out.push(gl);
        current = hl;
    }
    // Remaining factor: make it monic mod p^k.
    let lc = current.last().unwrap().clone();
    let inv = lc.modinv(&modulus).expect("leading coefficient invertible mod p^k");
    out.push(zp_reduce(&current.iter().map(|c| c * &inv).collect(), &modulus));
    out
}

fn symmetric(a: &Zp, m: &BigInt) -> Zp {
    let half = m / 2u32;
    a.iter()
        .map(|c| {
            let c = c.mod_floor(m);
            if c > half {
                c - m
            } else {
                c
            }
        })
        .collect()
}

fn primitive(a: &[BigInt]) -> Vec<BigInt> {
    let g = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return a.to_vec();
    }
    let sign = if a.last().map(|c| c.sign()) == Some(Sign::Minus) { -BigInt::one() } else { BigInt::one() };
    a.iter().map(|c| c / &g * &sign).collect()
}

/// Exact division over Z; `None` if not divisible.
fn int_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return None;
    }
    let lb = b.last().unwrap();
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                r[i + j] -= &c * y;
            }
        }
        q[i] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

fn recombine(f: &[BigInt], mut lifted: Vec<Zp>, m: &BigInt) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let n = lifted.len();
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let lc = f.last().unwrap().clone();
            let mut g: Zp = vec![lc.mod_floor(m)];
            for &i in &subset {
                g = zp_mul(&g, &lifted[i], m);
            }
            let cand = primitive(&symmetric(&g, m));
            if let Some(q) = int_div(&f, &cand) {
                out.push(cand);
                f = q;
                let mut i = subset.len();
                while i > 0 {
                    i -= 1;
                    lifted.remove(subset[i]);
                }
                continue 'outer;
            }
            // next subset in lexicographic order
            let mut i = size;
            loop {
                if i == 0 {
                    size += 1;
                    continue 'outer;
                }
                i -= 1;
                if subset[i] < n - size + i {
                    subset[i] += 1;
                    for j in i + 1..size {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    if f.len() > 1 {
        out.push(primitive(&f));
    }
    out
}

#[cfg(test)]
pub(crate) fn rat_poly(v: &[i64]) -> UPoly {
    UPoly::from_coeffs(v.iter().map(|&c| Rat::from_integer(BigInt::from(c))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(fs: &[(UPoly, usize)]) -> UPoly {
        fs.iter().fold(UPoly::one(), |acc, (g, m)| &acc * &g.pow(*m as u32))
    }

    #[test]
    fn factors_cyclotomic_product() {
        // x^8 - 1 = (x-1)(x+1)(x^2+1)(x^4+1)
        let p = rat_poly(&[-1, 0, 0, 0, 0, 0, 0, 0, 1]);
        let f = factor_rational(&p);
        assert_eq!(f.len(), 4);
        assert_eq!(product(&f), p);
        assert!(f.iter().all(|(g, _)| is_irreducible(g)));
    }

    #[test]
    fn swinnerton_dyer_is_irreducible() {
        // minimal polynomial of sqrt2+sqrt3: x^4 - 10x^2 + 1, splits mod every prime
        let p = rat_poly(&[1, 0, -10, 0, 1]);
        assert!(is_irreducible(&p));
    }

    #[test]
    fn non_monic_with_repeated_factor() {
        // (2x+3)^2 (3x^2-5) x
        let a = rat_poly(&[3, 2]);
        let b = rat_poly(&[-5, 0, 3]);
        let p = &(&a.pow(2) * &b) * &UPoly::x();
        let f = factor_rational(&p);
        assert_eq!(f.len(), 3);
        assert_eq!(product(&f).monic(), p.monic());
        assert!(f.contains(&(a.monic(), 2)));
    }

    #[test]
    fn larger_degree() {
        // (x^3 - 2)(x^5 + x + 1)(x^2 + x + 1)(x - 7)
        let p = [rat_poly(&[-2, 0, 0, 1]), rat_poly(&[1, 1, 0, 0, 0, 1]), rat_poly(&[-7, 1])]
            .iter()
            .fold(UPoly::one(), |acc, g| &acc * g);
        let f = factor_rational(&p);
        assert_eq!(product(&f), p.monic());
        // x^5+x+1 = (x^2+x+1)(x^3-x^2+1)
        assert_eq!(f.len(), 4);
    }
}
