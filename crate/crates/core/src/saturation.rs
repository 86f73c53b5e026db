//! Contact types, the saturation profile, and the membership tests for
//! bounded fractions, Lipschitz fractions and integral closures of ideals.

use crate::curve::{check_y_regular, make_y_regular, tangent_cone};
use crate::error::{Error, Result};
use crate::poly::BiPoly;
use crate::puiseux::{expand_at_least, expand_curve, expand_separated, tangent_slope, Expansion, PuiseuxBranch};
use crate::rat::{int, lcm_u64, Order, Rat};
use crate::series::{eval_on_branch, restrict_series, twisted_diff_order, DiffOrder, KSeries};
use crate::upoly::UPoly;
use crate::ypoly;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactType {
    pub branch_pair: (usize, usize),
    /// Determination of the second branch paired with determination 0 of the first.
    pub class_rep: u64,
    pub m: u64,
    pub mu: u64,
    pub exponent: Rat,
    pub self_contact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationProfile {
    pub curve_hash: String,
    pub types: Vec<ContactType>,
    pub distinct_exponents: Vec<Rat>,
    pub per_pair_class_count: BTreeMap<(usize, usize), usize>,
}

impl SaturationProfile {
    /// All type exponents, sorted (the profile as a multiset).
    pub fn exponent_multiset(&self) -> Vec<Rat> {
        let mut v: Vec<Rat> = self.types.iter().map(|t| t.exponent.clone()).collect();
        v.sort();
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Lipschitz,
    BoundedNotLipschitz,
    Unbounded,
    Undefined,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeCheck {
    pub contact: ContactType,
    /// Order of the difference of the fraction across the class.
    pub nu: Order,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LipschitzReport {
    pub numerator: BiPoly,
    pub denominator: BiPoly,
    pub verdict: Verdict,
    pub per_type: Vec<TypeCheck>,
    /// Order of the fraction on each branch; empty when the verdict is `Undefined`.
    pub boundedness: Vec<Order>,
    /// Branch on which the denominator vanishes identically.
    pub undefined_on: Option<usize>,
    pub ramification: Vec<u64>,
    /// x-order the branches were expanded to.
    pub expansion_order: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedReport {
    pub orders: Vec<Order>,
    pub bounded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchMargin {
    pub branch: usize,
    pub ord_h: Order,
    pub min_generator_ord: Order,
    pub member: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealReport {
    pub member: bool,
    pub per_branch: Vec<BranchMargin>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShearTrial {
    pub lambda: Rat,
    /// Extra shear applied afterwards to restore a constant leading coefficient.
    pub regularizing_shear: Rat,
    pub distinct_exponents: Vec<Rat>,
    pub exponent_multiset: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShearReport {
    pub stable: bool,
    pub base: Vec<Rat>,
    pub trials: Vec<ShearTrial>,
}

/// Class representatives `(0, k)`: `k = 1..n-1` for a branch with itself,
/// `k = 0..gcd(n_a, n_b)-1` for two distinct branches.
pub fn determination_classes(a: &PuiseuxBranch, b: &PuiseuxBranch) -> Vec<(u64, u64)> {
    if a.branch_id == b.branch_id {
        (1..a.ramification_index).map(|k| (0, k)).collect()
    } else {
        (0..a.ramification_index.gcd(&b.ramification_index)).map(|k| (0, k)).collect()
    }
}

pub fn contact_exponents(a: &PuiseuxBranch, b: &PuiseuxBranch) -> Result<Vec<ContactType>> {
    let (a, b) = if a.branch_id <= b.branch_id { (a, b) } else { (b, a) };
    let sa = KSeries::from_branch(a);
    let sb = KSeries::from_branch(b);
    let m = lcm_u64(a.ramification_index, b.ramification_index);
    determination_classes(a, b)
        .into_iter()
        .map(|(_, k)| match twisted_diff_order(&sa, 0, &sb, k, &a.field) {
            DiffOrder::Exact(e) => {
                let mu = &e * Rat::from_integer(m.into());
                Ok(ContactType {
                    branch_pair: (a.branch_id, b.branch_id),
                    class_rep: k,
                    m,
                    mu: mu.to_integer().try_into().expect("contact order is positive"),
                    exponent: e,
                    self_contact: a.branch_id == b.branch_id,
                })
            }
            DiffOrder::AtLeast(p) => Err(Error::InsufficientTruncation(format!(
                "branches {} and {} agree through order {p}",
                a.branch_id, b.branch_id
            ))),
        })
        .collect()
}

/// Stable 64-bit FNV-1a digest of the canonical text of `f`.
pub fn curve_hash(f: &BiPoly) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in f.to_string().bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{h:016x}")
}

pub fn profile_of_expansion(e: &Expansion) -> Result<SaturationProfile> {
    let mut types = Vec::new();
    let mut counts = BTreeMap::new();
    for (i, a) in e.branches.iter().enumerate() {
        for b in &e.branches[i..] {
            let t = contact_exponents(a, b)?;
            counts.insert((a.branch_id, b.branch_id), t.len());
            types.extend(t);
        }
    }
    let mut distinct: Vec<Rat> = types.iter().map(|t| t.exponent.clone()).collect();
    distinct.sort();
    distinct.dedup();
    Ok(SaturationProfile {
        curve_hash: curve_hash(&e.curve),
        types,
        distinct_exponents: distinct,
        per_pair_class_count: counts,
    })
}

/// Profile of a y-regular reduced germ.
pub fn saturation_profile(f: &BiPoly) -> Result<SaturationProfile> {
    match profile_of_expansion(&expand_separated(f)?) {
        Err(Error::InsufficientTruncation(_)) => profile_of_expansion(&expand_curve(f, &int(1))?),
        r => r,
    }
}

/// Upper bound on `ord_x g(x, y_b(x))` over the roots `y_b` of `f` on which `g`
/// does not vanish identically; `None` when `g` is the zero polynomial.
/// Roots of the monic `f` have nonnegative order, so each factor of
/// `Res_y(f / gcd(f, g), g)` is bounded by the whole.
pub fn vanishing_bound(f: &BiPoly, g: &BiPoly) -> Option<Rat> {
    if g.is_zero() {
        return None;
    }
    let fy = f.to_ypoly();
    let gy = g.to_ypoly();
    let common = fy.gcd(&gy);
    let fr = if common.deg() == 0 { fy } else { fy.div_exact(&common).expect("gcd divides") };
    let r = ypoly::resultant_formal(&fr, fr.deg(), &gy, gy.deg());
    Some(Rat::from_integer(r.ord().expect("coprime after removing the gcd").into()))
}

/// Largest possible order of a nonzero difference `h(y_i) - h(y_j)` between
/// two roots of `f`, from the discriminant of the squarefree polynomial whose
/// roots are the values of `h = p/q`; `None` when those values all coincide.
pub fn difference_bound(f: &BiPoly, p: &BiPoly, q: &BiPoly) -> Option<Rat> {
    let fy = f.to_ypoly();
    let common = fy.gcd(&q.to_ypoly());
    let fr = if common.deg() == 0 { fy } else { fy.div_exact(&common).expect("gcd divides") };
    let d = fr.deg();
    if d <= 1 {
        return None;
    }
    let (py, qy) = (p.to_ypoly(), q.to_ypoly());
    let db = py.deg().max(qy.deg());
    // R(x, z) = Res_y(f, z q - p) has z-degree <= d: interpolate at z = 0..=d.
    let values: Vec<UPoly> = (0..=d)
        .map(|z| {
            let zq = qy.scale(&UPoly::constant(int(z as i64)));
            ypoly::resultant_formal(&fr, d, &zq.sub(&py), db)
        })
        .collect();
    let r = ypoly::interpolate(&values);
    let rs = r.squarefree_part();
    let e = rs.deg();
    if e <= 1 {
        return None;
    }
    let oc = rs.lc().ord().expect("nonzero leading coefficient") as i64;
    let disc = ypoly::resultant(&rs, &rs.derivative());
    let od = disc.ord().expect("squarefree") as i64;
    let e = e as i64;
    Some(Rat::new((od + (e * e - 3 * e - 1) * oc).into(), 2.into()))
}

enum Step<T> {
    Done(T),
    /// Re-expand through at least this x-order.
    Need(Rat),
}

macro_rules! need {
    ($e:expr) => {
        match $e {
            Step::Done(v) => v,
            Step::Need(o) => return Ok(Step::Need(o)),
        }
    };
}

/// Vanishing bound of one polynomial, computed on first use.
struct LazyBound<'a> {
    poly: &'a BiPoly,
    bound: Option<Option<Rat>>,
}

impl<'a> LazyBound<'a> {
    fn new(poly: &'a BiPoly) -> Self {
        LazyBound { poly, bound: None }
    }

    /// Order of the polynomial on each branch. A restriction that is zero to
    /// the working precision is settled by the vanishing bound.
    fn orders(&mut self, e: &Expansion) -> Step<Vec<Order>> {
        let mut out = Vec::with_capacity(e.branches.len());
        for b in &e.branches {
            let s = eval_on_branch(self.poly, b);
            if let Some(o) = s.order() {
                out.push(Order::Finite(o));
                continue;
            }
            let Some(known) = s.precision() else {
                out.push(Order::Infinite);
                continue;
            };
            let poly = self.poly;
            match self.bound.get_or_insert_with(|| vanishing_bound(&e.curve, poly)) {
                Some(bd) if &known < bd => return Step::Need(bd.clone()),
                _ => out.push(Order::Infinite),
            }
        }
        Step::Done(out)
    }
}

/// Runs `step` on successively deeper expansions of `g` until it settles.
fn settle<T>(g: &BiPoly, mut step: impl FnMut(&Expansion) -> Result<Step<T>>) -> Result<T> {
    let mut e = expand_separated(g)?;
    loop {
        match step(&e)? {
            Step::Done(t) => return Ok(t),
            Step::Need(order) => {
                let target = order.max(&e.order * int(2));
                e = expand_at_least(g, &target)?;
            }
        }
    }
}

/// Below this x-order an undecided difference is re-expanded before the
/// discriminant bound is computed.
const CHEAP_ORDER: i64 = 16;

fn quotient_orders(po: &[Order], qo: &[Order]) -> Vec<Order> {
    po.iter()
        .zip(qo)
        .map(|(a, b)| match (a, b) {
            (Order::Finite(x), Order::Finite(y)) => Order::Finite(x - y),
            _ => Order::Infinite,
        })
        .collect()
}

pub fn is_bounded_fraction(p: &BiPoly, q: &BiPoly, f: &BiPoly) -> Result<BoundedReport> {
    let g = check_y_regular(f)?;
    let (mut lp, mut lq) = (LazyBound::new(p), LazyBound::new(q));
    settle(&g, |e| {
        let qo = need!(lq.orders(e));
        if let Some(i) = qo.iter().position(|o| o.is_infinite()) {
            return Err(Error::DenominatorVanishesOnBranch(e.branches[i].branch_id));
        }
        let po = need!(lp.orders(e));
        let orders = quotient_orders(&po, &qo);
        let bounded = orders.iter().all(|o| o >= &Order::Finite(Rat::zero()));
        Ok(Step::Done(BoundedReport { orders, bounded }))
    })
}

pub fn is_lipschitz_fraction(p: &BiPoly, q: &BiPoly, f: &BiPoly) -> Result<LipschitzReport> {
    let g = check_y_regular(f)?;
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (mut lp, mut lq) = (LazyBound::new(p), LazyBound::new(q));
    let mut dbound: Option<Option<Rat>> = None;
    let y_free = p.deg_y() == 0 && q.deg_y() == 0;
    settle(&g, |e| {
        let qo = need!(lq.orders(e));
        let mut report = LipschitzReport {
            numerator: p.clone(),
            denominator: q.clone(),
            verdict: Verdict::Undefined,
            per_type: Vec::new(),
            boundedness: Vec::new(),
            undefined_on: None,
            ramification: e.branches.iter().map(|b| b.ramification_index).collect(),
            expansion_order: e.order.clone(),
        };
        if let Some(i) = qo.iter().position(|o| o.is_infinite()) {
            report.undefined_on = Some(e.branches[i].branch_id);
            return Ok(Step::Done(report));
        }
        let po = need!(lp.orders(e));
        report.boundedness = quotient_orders(&po, &qo);
        let oq_max = qo.iter().filter_map(|o| o.finite().cloned()).max().unwrap_or_else(Rat::zero);
        let hs: Vec<KSeries> = e.branches.iter().map(|b| restrict_series(p, q, b)).collect::<Result<_>>()?;
        let profile = match profile_of_expansion(e) {
            Err(Error::InsufficientTruncation(_)) => return Ok(Step::Need(&e.order * int(2))),
            r => r?,
        };
        for t in profile.types {
            let (i, j) = t.branch_pair;
            let exact = hs[i].precision().is_none() && hs[j].precision().is_none();
            let nu = match twisted_diff_order(&hs[i], 0, &hs[j], t.class_rep, &e.field) {
                DiffOrder::Exact(x) => Order::Finite(x),
                DiffOrder::AtLeast(_) if exact || y_free => Order::Infinite,
                DiffOrder::AtLeast(_) if e.order < int(CHEAP_ORDER) => return Ok(Step::Need(&e.order * int(2))),
                DiffOrder::AtLeast(x) => match dbound.get_or_insert_with(|| difference_bound(&g, p, q)) {
                    None => Order::Infinite,
                    Some(b) if &x >= b => Order::Infinite,
                    Some(b) => return Ok(Step::Need(&*b + &oq_max * int(2) + int(1))),
                },
            };
            let pass = nu >= Order::Finite(t.exponent.clone());
            report.per_type.push(TypeCheck { contact: t, nu, pass });
        }
        let bounded = report.boundedness.iter().all(|o| o >= &Order::Finite(Rat::zero()));
        report.verdict = if !bounded {
            Verdict::Unbounded
        } else if report.per_type.iter().all(|t| t.pass) {
            Verdict::Lipschitz
        } else {
            Verdict::BoundedNotLipschitz
        };
        Ok(Step::Done(report))
    })
}

pub fn integral_closure_member(p: &BiPoly, q: &BiPoly, generators: &[BiPoly], f: &BiPoly) -> Result<IdealReport> {
    if generators.is_empty() {
        return Err(Error::EmptyIdeal(None));
    }
    let g = check_y_regular(f)?;
    let (mut lp, mut lq) = (LazyBound::new(p), LazyBound::new(q));
    let mut lg: Vec<LazyBound> = generators.iter().map(LazyBound::new).collect();
    settle(&g, |e| {
        let qo = need!(lq.orders(e));
        if let Some(i) = qo.iter().position(|o| o.is_infinite()) {
            return Err(Error::DenominatorVanishesOnBranch(e.branches[i].branch_id));
        }
        let po = need!(lp.orders(e));
        let mut go = Vec::with_capacity(lg.len());
        for l in lg.iter_mut() {
            go.push(need!(l.orders(e)));
        }
        let ord_h = quotient_orders(&po, &qo);
        let mut per_branch = Vec::new();
        for (i, b) in e.branches.iter().enumerate() {
            let min_gen = go.iter().map(|v| v[i].clone()).min().expect("nonempty");
            if min_gen.is_infinite() {
                return Err(Error::EmptyIdeal(Some(b.branch_id)));
            }
            let member = ord_h[i] >= min_gen;
            per_branch.push(BranchMargin {
                branch: b.branch_id,
                ord_h: ord_h[i].clone(),
                min_generator_ord: min_gen,
                member,
            });
        }
        Ok(Step::Done(IdealReport { member: per_branch.iter().all(|m| m.member), per_branch }))
    })
}

/// `(type count, degree)` predicted from the tangent comparison.
pub fn expected_type_structure(a: &PuiseuxBranch, b: &PuiseuxBranch) -> (u64, u64) {
    let g = a.ramification_index.gcd(&b.ramification_index);
    if tangent_slope(a) == tangent_slope(b) {
        (g, 1)
    } else {
        (1, g)
    }
}

/// `(type count, degree)` read off computed contacts of one branch pair:
/// classes of exponent one fuse into a single type, others stay separate.
pub fn observed_type_structure(types: &[ContactType]) -> (u64, u64) {
    let n = types.len() as u64;
    if n > 0 && types.iter().all(|t| t.exponent == int(1)) {
        (1, n)
    } else {
        (n, 1)
    }
}

fn random_shear(rng: &mut ChaCha8Rng, cone: &BiPoly) -> Rat {
    loop {
        let num: i64 = rng.random_range(-9..=9);
        let den: i64 = rng.random_range(1..=5);
        if num == 0 {
            continue;
        }
        let l = Rat::new(num.into(), den.into());
        if !cone.eval(&[l.clone(), int(1)]).is_zero() {
            return l;
        }
    }
}

/// Recomputes the profile after `trials` random shears `x -> x + lambda y`
/// with `lambda` outside the tangent directions.
pub fn profile_shear_stability(f: &BiPoly, trials: usize, seed: u64) -> Result<ShearReport> {
    let (g, _) = make_y_regular(f, 0)?;
    let base = saturation_profile(&g)?;
    let cone = tangent_cone(f);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut stable = true;
    for _ in 0..trials {
        let lambda = random_shear(&mut rng, &cone);
        let (h, extra) = make_y_regular(&f.shear(&lambda), 0)?;
        let pr = saturation_profile(&h)?;
        let ms = pr.exponent_multiset();
        stable &= ms == base.exponent_multiset() && pr.distinct_exponents == base.distinct_exponents;
        out.push(ShearTrial {
            lambda,
            regularizing_shear: extra,
            distinct_exponents: pr.distinct_exponents,
            exponent_multiset: ms,
        });
    }
    Ok(ShearReport { stable, base: base.distinct_exponents, trials: out })
}

/// True when a fraction `p/q` has `q = const` (a polynomial).
pub fn is_polynomial_fraction(q: &BiPoly) -> bool {
    q.total_degree() == 0 && !q.is_zero()
}

/// Sign-independent check that every exponent is at least one.
pub fn exponents_at_least_one(p: &SaturationProfile) -> bool {
    p.types.iter().all(|t| !t.exponent.is_negative() && t.exponent >= int(1))
}
