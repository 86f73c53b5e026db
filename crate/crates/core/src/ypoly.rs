//! Polynomials in a main variable with coefficients in `Q[x]`: the recursive
//! view of bivariate polynomials used for gcds, squarefree parts and
//! resultants.

use crate::rat::Rat;
use crate::upoly::UPoly;
use num_traits::Zero;

/// Coefficient of `y^i` at index `i`; never a trailing zero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct YPoly {
    coeffs: Vec<UPoly>,
}

impl YPoly {
    pub fn from_coeffs(mut coeffs: Vec<UPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        YPoly { coeffs }
    }

    pub fn zero() -> Self {
        YPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: UPoly) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn coeffs(&self) -> &[UPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> UPoly {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> UPoly {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::from_coeffs((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::from_coeffs((0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![UPoly::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        Self::from_coeffs(v)
    }

    pub fn scale(&self, c: &UPoly) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&Rat::from_integer((i as i64).into())))
                .collect(),
        )
    }

    /// Derivative with respect to the coefficient variable.
    pub fn derivative_inner(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(UPoly::derivative).collect())
    }

    /// Gcd of the coefficients (monic), zero for the zero polynomial.
    pub fn content(&self) -> UPoly {
        self.coeffs.iter().fold(UPoly::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content; leading coefficient made monic in `x`.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        let p = Self::from_coeffs(self.coeffs.iter().map(|a| a.exact_div(&c)).collect());
        let lcl = p.lc().lc();
        p.scale(&UPoly::constant(lcl.recip()))
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        assert!(!b.is_zero());
        let mut r = self.clone();
        let db = b.deg();
        let lb = b.lc();
        while !r.is_zero() && r.deg() >= db {
            let shift = r.deg() - db;
            let lr = r.lc();
            let mut t = vec![UPoly::zero(); shift];
            t.extend(b.coeffs.iter().map(|c| c * &lr));
            r = r.scale(&lb).sub(&Self::from_coeffs(t));
        }
        r
    }

    /// Exact division in `Q[x][y]`; `None` if `b` does not divide `self`.
    pub fn div_exact(&self, b: &Self) -> Option<Self> {
        assert!(!b.is_zero());
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.deg() < b.deg() {
            return None;
        }
        let db = b.deg();
        let lb = b.lc();
        let mut r = self.clone();
        let mut q = vec![UPoly::zero(); self.deg() - db + 1];
        while !r.is_zero() && r.deg() >= db {
            let shift = r.deg() - db;
            let (c, rem) = r.lc().divrem(&lb);
            if !rem.is_zero() {
                return None;
            }
            let mut t = vec![UPoly::zero(); shift];
            t.extend(b.coeffs.iter().map(|bc| bc * &c));
            r = r.sub(&Self::from_coeffs(t));
            q[shift] = c;
        }
        if r.is_zero() {
            Some(Self::from_coeffs(q))
        } else {
            None
        }
    }

    /// Gcd in `Q[x][y]`, normalized with monic leading `x`-coefficient.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.primitive_part().with_content(&o.content());
        }
        if o.is_zero() {
            return self.primitive_part().with_content(&self.content());
        }
        let c = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive_part(), o.primitive_part());
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() && b.deg() > 0 {
            let r = a.pseudo_rem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive_part() };
        }
        let g = if b.is_zero() { a } else { Self::constant(UPoly::one()) };
        g.primitive_part().with_content(&c)
    }

    fn with_content(&self, c: &UPoly) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        self.scale(c)
    }

    /// Squarefree part with respect to both variables.
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let cont = self.content();
        let pp = self.primitive_part();
        let pp_sf = if pp.deg() == 0 {
            Self::constant(UPoly::one())
        } else {
            let g = pp.gcd(&pp.derivative());
            pp.div_exact(&g).expect("gcd divides").primitive_part()
        };
        // A repeated factor of the primitive part that is invisible to d/dy is
        // impossible in characteristic zero; the content carries x-only factors.
        pp_sf.scale(&cont.squarefree_part())
    }

    /// Evaluates the inner variable, giving a univariate polynomial in the main one.
    pub fn eval_inner(&self, x: &Rat) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().map(|c| c.eval(x)).collect())
    }

    /// Swaps the roles of the two variables.
    pub fn transpose(&self) -> Self {
        let n = self.coeffs.iter().map(|c| c.coeffs().len()).max().unwrap_or(0);
        let mut out = vec![vec![Rat::zero(); self.coeffs.len()]; n];
        for (j, c) in self.coeffs.iter().enumerate() {
            for (i, a) in c.coeffs().iter().enumerate() {
                out[i][j] = a.clone();
            }
        }
        Self::from_coeffs(out.into_iter().map(UPoly::from_coeffs).collect())
    }
}

/// Determinant of a square matrix over `Q[x]` (fraction-free Bareiss elimination).
pub fn det_qx(mut m: Vec<Vec<UPoly>>) -> UPoly {
    let n = m.len();
    if n == 0 {
        return UPoly::one();
    }
    let mut sign = false;
    let mut prev = UPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = !sign;
                }
                None => return UPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.exact_div(&prev);
            }
            m[i][k] = UPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

/// Sylvester resultant eliminating the main variable, with formal degrees
/// `da >= deg a`, `db >= deg b` (leading entries may vanish).
pub fn resultant_formal(a: &YPoly, da: usize, b: &YPoly, db: usize) -> UPoly {
    let n = da + db;
    if n == 0 {
        return UPoly::one();
    }
    let mut m = vec![vec![UPoly::zero(); n]; n];
    for r in 0..db {
        for i in 0..=da {
            m[r][r + da - i] = a.coeff(i);
        }
    }
    for r in 0..da {
        for i in 0..=db {
            m[db + r][r + db - i] = b.coeff(i);
        }
    }
    det_qx(m)
}

/// Resultant with respect to the main variable.
pub fn resultant(a: &YPoly, b: &YPoly) -> UPoly {
    if a.is_zero() || b.is_zero() {
        return UPoly::zero();
    }
    resultant_formal(a, a.deg(), b, b.deg())
}

/// Discriminant-like resultant `Res(a, da/dy)`.
pub fn discriminant_resultant(a: &YPoly) -> UPoly {
    resultant(a, &a.derivative())
}

/// The polynomial in the main variable taking the value `values[i]` at `i`
/// (Lagrange interpolation at the nodes `0, 1, ..., n`).
pub fn interpolate(values: &[UPoly]) -> YPoly {
    let d = values.len().saturating_sub(1);
    let mut coeffs = vec![UPoly::zero(); d + 1];
    for (i, v) in values.iter().enumerate() {
        let mut basis = vec![Rat::from_integer(1.into())];
        let mut denom = Rat::from_integer(1.into());
        for j in 0..=d {
            if j == i {
                continue;
            }
            let mut next = vec![Rat::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * Rat::from_integer((j as i64).into());
            }
            basis = next;
            denom *= Rat::from_integer((i as i64 - j as i64).into());
        }
        for (k, c) in basis.iter().enumerate() {
            coeffs[k] = &coeffs[k] + &v.scale(&(c / &denom));
        }
    }
    YPoly::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    fn yp(rows: &[&[i64]]) -> YPoly {
        YPoly::from_coeffs(rows.iter().map(|r| UPoly::from_ints(r)).collect())
    }

    #[test]
    fn cusp_resultant_with_derivative() {
        // f = y^2 - x^3, f_y = 2y
        let f = yp(&[&[0, 0, 0, -1], &[], &[1]]);
        let r = resultant(&f, &f.derivative());
        assert_eq!(r, UPoly::monomial(int(-4), 3));
    }

    #[test]
    fn linear_resultant() {
        // Res(y - a(x), y - b(x)) = +-(a - b)
        let a = UPoly::from_ints(&[0, 1, 1]);
        let b = UPoly::from_ints(&[0, 0, 3]);
        let f = YPoly::from_coeffs(vec![-&a, UPoly::one()]);
        let g = YPoly::from_coeffs(vec![-&b, UPoly::one()]);
        let r = resultant(&f, &g);
        let d = &a - &b;
        assert!(r == d || r == -&d);
    }

    #[test]
    fn gcd_and_squarefree() {
        // (y - x)^2 (y^2 - x^3)
        let l = yp(&[&[0, -1], &[1]]);
        let c = yp(&[&[0, 0, 0, -1], &[], &[1]]);
        let f = l.mul(&l).mul(&c);
        let sf = f.squarefree_part();
        assert_eq!(sf, l.mul(&c));
        let g = f.gcd(&l.mul(&yp(&[&[1], &[1]])));
        assert_eq!(g, l);
    }

    #[test]
    fn squarefree_removes_x_content() {
        // x^2 (y - x)
        let f = yp(&[&[0, 0, 0, -1], &[0, 0, 1]]);
        assert_eq!(f.squarefree_part(), yp(&[&[0, 0, -1], &[0, 1]]));
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let m = vec![
            vec![UPoly::from_ints(&[1, 1]), UPoly::from_ints(&[2]), UPoly::from_ints(&[0, 1])],
            vec![UPoly::from_ints(&[3]), UPoly::from_ints(&[0, 0, 1]), UPoly::from_ints(&[1])],
            vec![UPoly::from_ints(&[0]), UPoly::from_ints(&[1]), UPoly::from_ints(&[5])],
        ];
        // cofactor expansion along first row
        let a = &m[0][0] * &(&(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1]));
        let b = &m[0][1] * &(&(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0]));
        let c = &m[0][2] * &(&(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0]));
        let expected = &(&a - &b) + &c;
        assert_eq!(det_qx(m), expected);
    }
}
