//! Newton–Puiseux expansion of the branches of a y-regular curve germ.
//!
//! Coefficients live in one number field `K`. When an edge root (or one of
//! its `q`-th roots) is missing from `K`, the field is enlarged and the whole
//! expansion restarts; the degree is bounded by the splitting field of the
//! Puiseux coefficients, so this terminates.

use crate::bigfloat::BigComplex;
use crate::curve::{check_y_regular, discriminant_order, lower_hull};
use crate::error::{Error, Result};
use crate::numfield::{Elem, KPoly, NumberField};
use crate::poly::BiPoly;
use crate::rat::{floor_i64, int, Rat};
use num_integer::Integer;
use num_traits::Signed;
use std::cmp::Ordering;
use std::sync::Arc;

/// Hard cap on the x-order the adaptive loop will expand to.
pub const MAX_EXPANSION_ORDER: i64 = 400;
/// Largest `|x| = |s|^n` accepted by [`evaluate_branch`].
pub const VALIDITY_RADIUS: f64 = 0.5;

#[derive(Clone, Debug)]
pub struct PuiseuxBranch {
    pub branch_id: usize,
    pub ramification_index: u64,
    /// `(exponent, coefficient)` with strictly increasing exponents and nonzero coefficients.
    pub terms: Vec<(Rat, Elem)>,
    /// Every term with exponent at most this value is present.
    pub truncation_order: Rat,
    pub field: Arc<NumberField>,
}

impl PuiseuxBranch {
    pub fn coeff(&self, e: &Rat) -> Option<&Elem> {
        self.terms.iter().find(|(x, _)| x == e).map(|(_, c)| c)
    }

    /// Lowest exponent present, `None` for a branch that is zero to the truncation order.
    pub fn order(&self) -> Option<&Rat> {
        self.terms.first().map(|t| &t.0)
    }

    /// Exponent numerators on the `1/n` grid.
    pub fn grid_terms(&self) -> Vec<(i64, &Elem)> {
        let n = Rat::from_integer(self.ramification_index.into());
        self.terms.iter().map(|(e, c)| (crate::rat::floor_i64(&(e * &n)), c)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicData {
    pub multiplicity: u64,
    pub char_exponents: Vec<Rat>,
    /// `(m_i, n_i)` with `beta_i = m_i / (n_1 ... n_i)`.
    pub ladder: Vec<(u64, u64)>,
}

/// All branches of a curve, expanded over a common coefficient field.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub curve: BiPoly,
    pub field: Arc<NumberField>,
    pub branches: Vec<PuiseuxBranch>,
    /// `ord_x Res_y(f, f_y)`; `None` when the expansion never needed the bound.
    pub d0: Option<u64>,
    pub order: Rat,
}

/// Dense polynomial over `K`: `rows[j][i]` is the coefficient of `x^i y^j`.
#[derive(Clone, Debug)]
struct KBi {
    rows: Vec<Vec<Elem>>,
}

impl KBi {
    fn from_bipoly(f: &BiPoly, k: &NumberField) -> Self {
        let dy = f.deg_y() as usize;
        let mut rows = vec![Vec::new(); dy + 1];
        for (e, c) in f.terms() {
            let row = &mut rows[e[1] as usize];
            if row.len() <= e[0] as usize {
                row.resize(e[0] as usize + 1, k.zero());
            }
            row[e[0] as usize] = k.rat(c.clone());
        }
        KBi { rows }
    }

    fn get(&self, j: usize, i: usize) -> Option<&Elem> {
        self.rows.get(j).and_then(|r| r.get(i)).filter(|c| !c.is_zero())
    }

    fn truncate_x(&mut self, e: i64) {
        let keep = (e + 1).max(0) as usize;
        for r in &mut self.rows {
            r.truncate(keep);
        }
    }

    /// `ord_y F(0, y)`.
    fn ord_y_at_origin(&self) -> Option<usize> {
        (0..self.rows.len()).find(|&j| self.get(j, 0).is_some())
    }

    /// `x^(-v) F(x^q, x^p (c + y))`, dropping x-exponents above `cut`.
    fn substitute(&self, q: i64, p: i64, c: &Elem, v: i64, cut: i64, k: &NumberField) -> KBi {
        let d = self.rows.len();
        let mut cpow = vec![k.one()];
        for j in 1..d {
            cpow.push(k.mul(&cpow[j - 1], c));
        }
        let mut binom = vec![vec![0u64; d]; d];
        for j in 0..d {
            binom[j][0] = 1;
            for l in 1..=j {
                binom[j][l] = binom[j - 1][l - 1] + if l < j { binom[j - 1][l] } else { 0 };
            }
        }
        let mut out: Vec<Vec<Elem>> = vec![Vec::new(); d];
        for (j, row) in self.rows.iter().enumerate() {
            for (i, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let e = q * i as i64 + p * j as i64 - v;
                debug_assert!(e >= 0);
                if e > cut {
                    continue;
                }
                let e = e as usize;
                for l in 0..=j {
                    let t = k.scale(&k.mul(a, &cpow[j - l]), &int(binom[j][l] as i64));
                    let dst = &mut out[l];
                    if dst.len() <= e {
                        dst.resize(e + 1, k.zero());
                    }
                    dst[e] = k.add(&dst[e], &t);
                }
            }
        }
        KBi { rows: out }
    }
}

enum Halt {
    Extend(KPoly),
    Short,
    Fail(Error),
}

impl From<Error> for Halt {
    fn from(e: Error) -> Self {
        Halt::Fail(e)
    }
}

struct RawBranch {
    q: u64,
    terms: Vec<(i64, Elem)>,
}

struct Engine<'a> {
    k: &'a NumberField,
    /// Target order, as a floor on the `1/Q` grid is taken per level.
    target: Rat,
}

fn ser_mul(a: &[Elem], b: &[Elem], n: usize, k: &NumberField) -> Vec<Elem> {
    let mut out = vec![k.zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if !y.is_zero() {
                out[i + j] = k.add(&out[i + j], &k.mul(x, y));
            }
        }
    }
    out
}

fn ser_inv(a: &[Elem], n: usize, k: &NumberField) -> Vec<Elem> {
    let a0 = k.inv(&a[0]);
    let mut out = vec![k.zero(); n];
    out[0] = a0.clone();
    for m in 1..n {
        let mut s = k.zero();
        for i in 1..=m.min(a.len() - 1) {
            if !a[i].is_zero() && !out[m - i].is_zero() {
                s = k.add(&s, &k.mul(&a[i], &out[m - i]));
            }
        }
        out[m] = k.neg(&k.mul(&s, &a0));
    }
    out
}

impl Engine<'_> {
    fn level_target(&self, q: u64, s: i64) -> i64 {
        floor_i64(&(&self.target * int(q as i64))) - s
    }

    /// Simple root with `y(0) = 0`: the power series to x-order `tk`.
    fn regular(&self, f: &KBi, tk: i64) -> Vec<Elem> {
        let k = self.k;
        if tk < 1 {
            return Vec::new();
        }
        let n = tk as usize + 1;
        let rows: Vec<Vec<Elem>> = f.rows.iter().map(|r| r.iter().take(n).cloned().collect()).collect();
        let mut y = vec![k.zero(); n];
        let mut prec = 1usize;
        while prec < n {
            prec = (2 * prec).min(n);
            let mut fv: Vec<Elem> = vec![k.zero(); prec];
            let mut dv: Vec<Elem> = vec![k.zero(); prec];
            for row in rows.iter().rev() {
                // Horner for F and F_y simultaneously
                dv = ser_mul(&dv, &y, prec, k);
                for (i, c) in fv.iter().enumerate() {
                    dv[i] = k.add(&dv[i], c);
                }
                fv = ser_mul(&fv, &y, prec, k);
                for (i, c) in row.iter().enumerate().take(prec) {
                    fv[i] = k.add(&fv[i], c);
                }
            }
            let step = ser_mul(&fv, &ser_inv(&dv, prec, k), prec, k);
            for i in 0..prec {
                y[i] = k.sub(&y[i], &step[i]);
            }
        }
        y
    }

    fn expand(
        &self,
        f: KBi,
        r: usize,
        q: u64,
        s: i64,
        prefix: Vec<(i64, Elem)>,
    ) -> std::result::Result<Vec<RawBranch>, Halt> {
        let k = self.k;
        let tk = self.level_target(q, s);
        if r == 1 {
            let mut f = f;
            f.truncate_x(tk.max(0));
            let y = self.regular(&f, tk);
            let mut terms = prefix;
            for (e, b) in y.into_iter().enumerate().skip(1) {
                if !b.is_zero() {
                    terms.push((s + e as i64, b));
                }
            }
            return Ok(vec![RawBranch { q, terms }]);
        }
        if tk < 0 {
            return Err(Halt::Short);
        }
        let mut f = f;
        f.truncate_x(r as i64 * tk);
        let mut pts = Vec::new();
        for j in 0..=r.min(f.rows.len() - 1) {
            for (i, c) in f.rows[j].iter().enumerate() {
                if !c.is_zero() {
                    pts.push((j as i64, i as i64));
                }
            }
        }
        let j0 = pts.iter().map(|p| p.0).min().unwrap_or(r as i64);
        let mut out = Vec::new();
        if j0 >= 2 {
            return Err(Halt::Short);
        }
        if j0 == 1 {
            out.push(RawBranch { q, terms: prefix.clone() });
        }
        let hull = lower_hull(&pts);
        // Two roots past the requested order would agree through it.
        let past: i64 = hull
            .windows(2)
            .filter(|w| Rat::new((w[0].1 - w[1].1).into(), (w[1].0 - w[0].0).into()) > Rat::from_integer(tk.into()))
            .map(|w| w[1].0 - w[0].0)
            .sum();
        if past + j0 > 1 {
            return Err(Halt::Short);
        }
        for w in hull.windows(2) {
            let (a, b) = (w[0], w[1]);
            let dj = b.0 - a.0;
            let di = a.1 - b.1;
            let g = dj.gcd(&di);
            let (p, qq) = (di / g, dj / g);
            let beyond = Rat::new(p.into(), qq.into()) > Rat::from_integer(tk.into());
            let phi = KPoly::from_coeffs(
                (0..=g)
                    .map(|m| f.get((a.0 + m * qq) as usize, (a.1 - m * p) as usize).cloned().unwrap_or_default())
                    .collect(),
            );
            let (roots, rest) = k.roots(&phi)?;
            if beyond {
                // A single simple root past the requested order.
                if qq > 1 || !rest.is_empty() || roots.iter().any(|(_, m)| *m > 1) {
                    return Err(Halt::Short);
                }
                for _ in &roots {
                    out.push(RawBranch { q, terms: prefix.clone() });
                }
                continue;
            }
            if let Some((h, _)) = rest.into_iter().next() {
                return Err(Halt::Extend(h));
            }
            for (u, mult) in roots {
                let c = if qq == 1 {
                    u
                } else {
                    let mut xq = vec![k.neg(&u)];
                    xq.extend((1..qq).map(|_| k.zero()));
                    xq.push(k.one());
                    let (cr, crest) = k.roots(&KPoly::from_coeffs(xq))?;
                    match cr.into_iter().next() {
                        Some((c, _)) => c,
                        None => return Err(Halt::Extend(crest.into_iter().next().expect("factor").0)),
                    }
                };
                let v = qq * a.1 + p * a.0;
                let q1 = q * qq as u64;
                let s1 = qq * s + p;
                let tk1 = self.level_target(q1, s1);
                let cut = (mult as i64 * tk1).max(0);
                let f1 = f.substitute(qq, p, &c, v, cut, k);
                debug_assert_eq!(f1.ord_y_at_origin(), Some(mult));
                let mut pre: Vec<(i64, Elem)> = prefix.iter().map(|(e, x)| (e * qq, x.clone())).collect();
                pre.push((s1, c));
                out.extend(self.expand(f1, mult, q1, s1, pre)?);
            }
        }
        Ok(out)
    }
}

fn build_branches(raw: Vec<RawBranch>, k: &Arc<NumberField>, order: &Rat) -> Vec<PuiseuxBranch> {
    let mut out: Vec<PuiseuxBranch> = raw
        .into_iter()
        .map(|rb| {
            let qn = Rat::from_integer(rb.q.into());
            let terms: Vec<(Rat, Elem)> = rb
                .terms
                .into_iter()
                .map(|(e, c)| (Rat::from_integer(e.into()) / &qn, c))
                .filter(|(e, _)| e <= order)
                .collect();
            PuiseuxBranch {
                branch_id: 0,
                ramification_index: rb.q,
                terms,
                truncation_order: order.clone(),
                field: Arc::clone(k),
            }
        })
        .collect();
    out.sort_by(cmp_branches);
    for (i, b) in out.iter_mut().enumerate() {
        b.branch_id = i;
    }
    out
}

fn cmp_branches(a: &PuiseuxBranch, b: &PuiseuxBranch) -> Ordering {
    let k = &a.field;
    a.ramification_index.cmp(&b.ramification_index).then_with(|| {
        for (x, y) in a.terms.iter().zip(&b.terms) {
            let o = x.0.cmp(&y.0).reverse().then_with(|| k.cmp_numeric(&x.1, &y.1));
            if o != Ordering::Equal {
                return o;
            }
        }
        a.terms.len().cmp(&b.terms.len())
    })
}

/// Expands all branches of the y-regular, reduced germ `f` through x-order
/// at least `order` (and always past the discriminant bound).
pub fn expand_curve(f: &BiPoly, order: &Rat) -> Result<Expansion> {
    let g = check_y_regular(f)?;
    let d0 = discriminant_order(&g).ok_or(Error::NotReduced)? as u64;
    let target = order.clone().max(Rat::from_integer((d0 + 1).into()));
    let (field, branches, order) = expand_regular(&g, target, &int(MAX_EXPANSION_ORDER))?;
    Ok(Expansion { curve: g, field, branches, d0: Some(d0), order })
}

/// Expansion that stops as soon as all branches separate. Falls back to the
/// discriminant bound when they have not separated by x-order 16.
pub fn expand_separated(f: &BiPoly) -> Result<Expansion> {
    let g = check_y_regular(f)?;
    match expand_regular(&g, int(2), &int(16)) {
        Ok((field, branches, order)) => Ok(Expansion { curve: g, field, branches, d0: None, order }),
        Err(Error::PrecisionOverflow(_)) => expand_curve(&g, &int(1)),
        Err(e) => Err(e),
    }
}

/// Separated expansion through at least `order`, without the discriminant floor.
pub fn expand_at_least(f: &BiPoly, order: &Rat) -> Result<Expansion> {
    let g = check_y_regular(f)?;
    let cap = int(MAX_EXPANSION_ORDER);
    if order > &cap {
        return Err(Error::PrecisionOverflow(format!("x-order {order} exceeds {cap}")));
    }
    let (field, branches, order) = expand_regular(&g, order.clone().max(int(1)), &cap)?;
    Ok(Expansion { curve: g, field, branches, d0: None, order })
}

/// Expands the y-regular `g` through `target`, doubling while branches are
/// not separated, up to `cap`.
fn expand_regular(g: &BiPoly, mut target: Rat, cap: &Rat) -> Result<(Arc<NumberField>, Vec<PuiseuxBranch>, Rat)> {
    let m = g.restrict_x0().ord().ok_or_else(|| Error::NotYRegular("f(0, y) vanishes".into()))?;
    let prim = g.primitive();
    let mut field = Arc::new(NumberField::rationals());
    loop {
        let k: &NumberField = &field;
        let engine = Engine { k, target: target.clone() };
        let f0 = KBi::from_bipoly(&prim, k);
        match engine.expand(f0, m, 1, 0, Vec::new()) {
            Ok(raw) => {
                let branches = build_branches(raw, &field, &target);
                debug_assert_eq!(branches.iter().map(|b| b.ramification_index as usize).sum::<usize>(), m);
                return Ok((field, branches, target));
            }
            Err(Halt::Extend(h)) => field = Arc::new(k.extend(&h)?),
            Err(Halt::Short) => {
                if &target >= cap {
                    return Err(Error::PrecisionOverflow(format!("branches not separated at x-order {target}")));
                }
                target = (&target * int(2)).min(cap.clone());
            }
            Err(Halt::Fail(e)) => return Err(e),
        }
    }
}

/// Branches of `f` expanded through at least `order`.
pub fn puiseux_expand(f: &BiPoly, order: &Rat) -> Result<Vec<PuiseuxBranch>> {
    Ok(expand_curve(f, order)?.branches)
}

/// Re-expands the same curve to a higher order. Branch order and the
/// coefficient field are fixed once the branches separate, so ids carry over.
pub fn reexpand(e: &Expansion, order: &Rat) -> Result<Expansion> {
    if order <= &e.order {
        return Ok(e.clone());
    }
    let fresh = expand_curve(&e.curve, order)?;
    Ok(fresh)
}

pub fn branch_multiplicity(b: &PuiseuxBranch) -> u64 {
    b.ramification_index
}

/// Slope of the tangent line `y = a x`: the coefficient at exponent one, else zero.
pub fn tangent_slope(b: &PuiseuxBranch) -> Elem {
    b.coeff(&int(1)).cloned().unwrap_or_default()
}

pub fn characteristic_exponents(b: &PuiseuxBranch) -> Result<CharacteristicData> {
    let n = b.ramification_index;
    let mut g = n;
    let mut betas = Vec::new();
    let mut ladder = Vec::new();
    let mut prod = 1u64;
    for (e, _) in b.grid_terms() {
        if g == 1 {
            break;
        }
        if e.rem_euclid(g as i64) != 0 {
            let g1 = g.gcd(&(e.unsigned_abs()));
            let ni = g / g1;
            prod *= ni;
            let beta = Rat::new(e.into(), (n as i64).into());
            let mi = &beta * Rat::from_integer(prod.into());
            debug_assert!(mi.is_integer());
            ladder.push((floor_i64(&mi) as u64, ni));
            betas.push(beta);
            g = g1;
        }
    }
    if g != 1 {
        return Err(Error::InsufficientTruncation(format!(
            "characteristic sequence not closed at order {}",
            b.truncation_order
        )));
    }
    Ok(CharacteristicData { multiplicity: n, char_exponents: betas, ladder })
}

/// `(s^n, y(zeta^k s))` with `zeta = exp(2 pi i / n)`.
pub fn evaluate_branch(b: &PuiseuxBranch, k: u64, s: &BigComplex, prec: u32) -> Result<(BigComplex, BigComplex)> {
    let n = b.ramification_index;
    let x = s.with_prec(prec).powi(n);
    if x.abs().to_f64() > VALIDITY_RADIUS {
        return Err(Error::RadiusTooLarge(format!("{:e}", s.abs().to_f64())));
    }
    let t = BigComplex::root_of_unity(k as i64, n, prec).mul(&s.with_prec(prec));
    let mut y = BigComplex::zero(prec);
    for (e, c) in b.grid_terms() {
        y = y.add(&b.field.embed(c, prec).mul(&t.powi(e as u64)));
    }
    Ok((x, y))
}

/// Applies determination `k` symbolically: the coefficient at grid exponent
/// `e` picks up `zeta^(k e)`. Returned as `(exponent, coefficient, zeta power mod n)`.
pub fn conjugate_terms(b: &PuiseuxBranch, k: u64) -> Vec<(Rat, Elem, u64)> {
    let n = b.ramification_index;
    b.grid_terms()
        .into_iter()
        .zip(&b.terms)
        .map(|((e, c), (ex, _))| (ex.clone(), c.clone(), (k * e as u64) % n))
        .collect()
}

/// True when every exponent is at least one (tangent not vertical).
pub fn exponents_at_least_one(b: &PuiseuxBranch) -> bool {
    b.terms.iter().all(|(e, _)| !e.is_negative() && e >= &int(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial as p;
    use crate::rat::rat;

    fn exps(b: &PuiseuxBranch) -> Vec<Rat> {
        b.terms.iter().map(|t| t.0.clone()).collect()
    }

    #[test]
    fn cusp() {
        let bs = puiseux_expand(&p("y^2 - x^3").unwrap(), &int(3)).unwrap();
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].ramification_index, 2);
        assert_eq!(exps(&bs[0]), vec![rat(3, 2)]);
        assert_eq!(bs[0].terms[0].1.as_rat(), Some(int(1)));
        let cd = characteristic_exponents(&bs[0]).unwrap();
        assert_eq!(cd.char_exponents, vec![rat(3, 2)]);
        assert_eq!(cd.ladder, vec![(3, 2)]);
    }

    #[test]
    fn two_lines() {
        let bs = puiseux_expand(&p("y*(y - x)").unwrap(), &int(2)).unwrap();
        assert_eq!(bs.len(), 2);
        let mut all: Vec<Vec<Rat>> = bs.iter().map(exps).collect();
        all.sort();
        assert_eq!(all, vec![vec![], vec![int(1)]]);
    }

    #[test]
    fn four_branch_char_sequence() {
        let f = p("y^4 - 2*x^3*y^2 - 4*x^5*y + x^6 - x^7").unwrap();
        let bs = puiseux_expand(&f, &int(2)).unwrap();
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].ramification_index, 4);
        assert_eq!(exps(&bs[0]), vec![rat(3, 2), rat(7, 4)]);
        let cd = characteristic_exponents(&bs[0]).unwrap();
        assert_eq!(cd.char_exponents, vec![rat(3, 2), rat(7, 4)]);
        assert_eq!(cd.ladder, vec![(3, 2), (7, 2)]);
    }

    #[test]
    fn irrational_tangents() {
        // y^2 - 2 x^2: tangents +-sqrt 2
        let bs = puiseux_expand(&p("y^2 - 2*x^2").unwrap(), &int(2)).unwrap();
        assert_eq!(bs.len(), 2);
        assert_eq!(bs[0].field.degree(), 2);
        let k = &bs[0].field;
        let t = tangent_slope(&bs[0]);
        assert_eq!(k.mul(&t, &t), k.int(2));
    }

    #[test]
    fn needs_cube_roots() {
        // y^3 - 2 x^4: ramified with coefficient 2^(1/3)
        let bs = puiseux_expand(&p("y^3 - 2*x^4").unwrap(), &int(3)).unwrap();
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].ramification_index, 3);
        let k = &bs[0].field;
        let c = &bs[0].terms[0].1;
        assert_eq!(k.pow(c, 3), k.int(2));
    }

    #[test]
    fn evaluation() {
        let bs = puiseux_expand(&p("y^2 - x^3").unwrap(), &int(3)).unwrap();
        let s = BigComplex::from_f64(0.1, 0.0, 128);
        let (x, y) = evaluate_branch(&bs[0], 0, &s, 128).unwrap();
        assert!((x.to_f64().0 - 0.01).abs() < 1e-15);
        assert!((y.to_f64().0 - 0.001).abs() < 1e-15);
        let (_, y) = evaluate_branch(&bs[0], 1, &s, 128).unwrap();
        assert!((y.to_f64().0 + 0.001).abs() < 1e-15);
        let big = BigComplex::from_f64(0.9, 0.0, 128);
        assert!(matches!(evaluate_branch(&bs[0], 0, &big, 128), Err(Error::RadiusTooLarge(_))));
    }
}
