//! Curve-level operations on bivariate polynomials: squarefree part,
//! resultants, Newton polygons and y-regularization.

use crate::error::{Error, Result};
use crate::poly::BiPoly;
use crate::rat::Rat;
use crate::upoly::UPoly;
use crate::ypoly;
use num_traits::Zero;

/// Product of the distinct irreducible factors of `f` (up to a constant).
pub fn squarefree_part(f: &BiPoly) -> BiPoly {
    if f.is_zero() {
        return f.clone();
    }
    BiPoly::from_ypoly(&f.to_ypoly().squarefree_part())
}

pub fn is_reduced(f: &BiPoly) -> bool {
    if f.is_zero() {
        return false;
    }
    squarefree_part(f).total_degree() == f.total_degree()
}

/// Sylvester resultant eliminating `y`.
pub fn resultant_y(f: &BiPoly, g: &BiPoly) -> UPoly {
    ypoly::resultant(&f.to_ypoly(), &g.to_ypoly())
}

/// `Res_y(f, g)` up to a nonzero rational factor; cheaper on large denominators.
pub fn resultant_y_projective(f: &BiPoly, g: &BiPoly) -> UPoly {
    resultant_y(&f.primitive(), &g.primitive())
}

/// `ord_x Res_y(f, df/dy)`; `None` when the resultant vanishes (f not reduced).
pub fn discriminant_order(f: &BiPoly) -> Option<usize> {
    let f = f.primitive();
    resultant_y_projective(&f, &f.derivative(1)).ord()
}

/// Multiplicity of the germ at the origin (order of the lowest form).
pub fn multiplicity(f: &BiPoly) -> u32 {
    f.order().unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct NewtonEdge {
    /// Ratio of the x-drop to the y-rise along the edge: the Puiseux order of the roots it carries.
    pub slope: Rat,
    /// `(x-exponent, y-exponent)` of the endpoint with the smaller y-exponent.
    pub start: (u32, u32),
    pub end: (u32, u32),
    /// `sum a_{ij} z^(j - j_start)` over support points on the edge.
    pub edge_poly: UPoly,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct NewtonPolygon {
    pub edges: Vec<NewtonEdge>,
}

/// Vertices of the lower-left hull of `(y-exp, x-exp)` points, ordered by
/// increasing y-exponent; only the compact part is returned.
pub(crate) fn lower_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts: Vec<(i64, i64)> = points.to_vec();
    pts.sort();
    pts.dedup_by_key(|p| p.0);
    // keep, for every y-exponent, the minimal x-exponent (first after sort)
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in pts {
        // drop points not strictly below the current minimum x-exponent
        if let Some(last) = hull.last() {
            if p.1 >= last.1 {
                continue;
            }
        }
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // b must lie strictly below the segment a -> p
            let cross = (b.0 - a.0) as i128 * (p.1 - a.1) as i128 - (b.1 - a.1) as i128 * (p.0 - a.0) as i128;
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

pub fn newton_polygon(f: &BiPoly) -> NewtonPolygon {
    let pts: Vec<(i64, i64)> = f.terms().map(|(e, _)| (e[1] as i64, e[0] as i64)).collect();
    let hull = lower_hull(&pts);
    let mut edges = Vec::new();
    for w in hull.windows(2) {
        let (a, b) = (w[0], w[1]);
        let dj = b.0 - a.0;
        let di = a.1 - b.1;
        let mut coeffs = vec![Rat::zero(); dj as usize + 1];
        for (e, c) in f.terms() {
            let (j, i) = (e[1] as i64, e[0] as i64);
            if j >= a.0 && j <= b.0 && (i - a.1) * dj == -(j - a.0) * di {
                coeffs[(j - a.0) as usize] = c.clone();
            }
        }
        edges.push(NewtonEdge {
            slope: Rat::new(di.into(), dj.into()),
            start: (a.1 as u32, a.0 as u32),
            end: (b.1 as u32, b.0 as u32),
            edge_poly: UPoly::from_coeffs(coeffs),
        });
    }
    // increasing slope: the hull is walked from small to large y-exponent,
    // where the slopes decrease
    edges.reverse();
    NewtonPolygon { edges }
}

/// The shear values tried by [`make_y_regular`]: `0`, then `1, -1, 2, -2, ...`
/// starting `seed` places into that tail.
pub fn shear_sequence(seed: u64) -> impl Iterator<Item = Rat> {
    std::iter::once(Rat::zero()).chain((seed..).map(|i| {
        let k = (i / 2 + 1) as i64;
        Rat::from_integer(if i % 2 == 0 { k } else { -k }.into())
    }))
}

/// Checks that `f` already is y-regular and returns it with unit leading
/// `y`-coefficient.
pub fn check_y_regular(f: &BiPoly) -> Result<BiPoly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.constant_term().is_zero() {
        return Err(Error::NotAGerm);
    }
    let m = multiplicity(f);
    let lowest = f.homogeneous_part(m);
    let on_axis = lowest.coeff(&[0, m]);
    if on_axis.is_zero() {
        return Err(Error::NotYRegular("the line x = 0 is tangent to the curve".into()));
    }
    let lc = f.y_coeff(f.deg_y());
    if !lc.is_constant() {
        return Err(Error::NotYRegular(format!("leading y-coefficient {lc} is not constant")));
    }
    Ok(f.scale(&lc.coeff(0).recip()))
}

/// Shears `f(x + lambda*y, y)` with the first `lambda` from [`shear_sequence`]
/// making the result y-regular; returns the normalized polynomial and `lambda`.
pub fn make_y_regular(f: &BiPoly, seed: u64) -> Result<(BiPoly, Rat)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.constant_term().is_zero() {
        return Err(Error::NotAGerm);
    }
    // Bad shears are roots of L(lambda, 1) or H(lambda, 1), finitely many.
    let bound = 2 * (f.total_degree() as usize + 2);
    for lambda in shear_sequence(seed).take(bound + seed as usize + 1) {
        let g = f.shear(&lambda);
        if let Ok(g) = check_y_regular(&g) {
            return Ok((g, lambda));
        }
    }
    unreachable!("a generic shear is y-regular")
}

/// The germ `f` with `x` and `y` both scaled: `f(c x, c y)`.
pub fn scale_coordinates(f: &BiPoly, c: &Rat) -> BiPoly {
    BiPoly::from_terms(f.terms().map(|(e, a)| (*e, a * num_traits::pow(c.clone(), (e[0] + e[1]) as usize))))
}

/// Lowest homogeneous form of `f`.
pub fn tangent_cone(f: &BiPoly) -> BiPoly {
    f.homogeneous_part(multiplicity(f))
}
