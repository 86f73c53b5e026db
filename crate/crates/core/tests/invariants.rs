use proptest::prelude::*;
use satcurve::bigfloat::BigComplex;
use satcurve::curve::{make_y_regular, newton_polygon, resultant_y, scale_coordinates, squarefree_part};
use satcurve::family::{equisaturation_check, FamilyCurve};
use satcurve::puiseux::{
    characteristic_exponents, conjugate_terms, evaluate_branch, expand_curve, expand_separated, tangent_slope,
};
use satcurve::rat::{int, rat};
use satcurve::saturation::{integral_closure_member, is_lipschitz_fraction, saturation_profile, Verdict};
use satcurve::series::eval_on_branch;
use satcurve::{parse_family, parse_polynomial, BiPoly, Rat, TriPoly};

fn small_poly(max_deg: u32, max_terms: usize) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(((0..=max_deg, 0..=max_deg), -4i64..=4), 1..=max_terms)
        .prop_map(|ts| BiPoly::from_terms(ts.into_iter().filter(|(_, c)| *c != 0).map(|((a, b), c)| ([a, b], int(c)))))
}

/// `(y - a x)^n - c x^m` with `m > n` coprime to `n`: one irreducible germ
/// factor with tangent slope `a`.
fn factor() -> impl Strategy<Value = BiPoly> {
    (1u32..=3, 1u32..=3, -2i64..=2, prop::sample::select(vec![1i64, 2, -1, 3]))
        .prop_filter("irreducible", |(n, extra, _, _)| gcd(*n as i64, *extra as i64) == 1)
        .prop_map(|(n, extra, a, c)| {
            let line = BiPoly::y().sub(&BiPoly::x().scale(&int(a)));
            line.pow(n).sub(&BiPoly::monomial(int(c), [n + extra, 0]))
        })
}

/// Reduced curves built from one or two germ factors.
fn curve() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(factor(), 1..=2)
        .prop_map(|fs| fs.iter().fold(BiPoly::one(), |acc, f| acc.mul(f)))
        .prop_filter("reduced", |f| squarefree_part(f).total_degree() == f.total_degree())
}

fn same_up_to_scalar(a: &BiPoly, b: &BiPoly) -> bool {
    let (a, b) = (a.primitive(), b.primitive());
    a == b || a == b.neg()
}

/// Characteristic exponents read from the exponent support alone.
fn support_char_exponents(n: u64, exps: &[Rat]) -> Vec<Rat> {
    let mut g = n as i64;
    let mut out = Vec::new();
    for e in exps {
        let num = (e * Rat::from_integer((n as i64).into())).to_integer();
        let num: i64 = num.try_into().unwrap();
        let g2 = gcd(g, num);
        if g2 < g {
            out.push(e.clone());
            g = g2;
        }
    }
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn parse_print_round_trip(f in small_poly(5, 6)) {
        let text = f.to_string();
        prop_assert_eq!(parse_polynomial(&text).unwrap(), f);
    }

    #[test]
    fn squarefree_absorbs_squares(f in small_poly(2, 3), g in small_poly(2, 3)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let a = squarefree_part(&f.mul(&g).mul(&g));
        let b = squarefree_part(&f.mul(&g));
        prop_assert!(same_up_to_scalar(&a, &b), "{} vs {}", a, b);
    }

    #[test]
    fn resultant_symmetry_and_multiplicativity(f in small_poly(2, 3), g in small_poly(2, 3), h in small_poly(2, 3)) {
        let (df, dg) = (f.deg_y(), g.deg_y());
        prop_assume!(df > 0 && dg > 0 && h.deg_y() > 0);
        let rfg = resultant_y(&f, &g);
        let rgf = resultant_y(&g, &f);
        let sign = if (df * dg) % 2 == 1 { rgf.scale(&int(-1)) } else { rgf.clone() };
        prop_assert_eq!(rfg.clone(), sign);
        let prod = resultant_y(&f, &g.mul(&h));
        prop_assert_eq!(prod, &rfg * &resultant_y(&f, &h));
    }

    #[test]
    fn newton_slopes_increase(f in small_poly(5, 6)) {
        let np = newton_polygon(&f);
        for w in np.edges.windows(2) {
            prop_assert!(w[0].slope < w[1].slope);
        }
    }

    #[test]
    fn shear_degree_matches_multiplicity(f in curve(), lambda in -3i64..=3) {
        let swapped = BiPoly::from_terms(f.terms().map(|(e, c)| ([e[1], e[0]], c.clone()))).shear(&int(lambda));
        let (g, _) = make_y_regular(&swapped, 0).unwrap();
        prop_assert_eq!(g.restrict_x0().ord().unwrap() as u32, g.order().unwrap());
    }

    #[test]
    fn branches_account_for_every_root(f in curve()) {
        let e = expand_separated(&f).unwrap();
        let total: u64 = e.branches.iter().map(|b| b.ramification_index).sum();
        prop_assert_eq!(total as usize, f.restrict_x0().ord().unwrap());
        for b in &e.branches {
            let n = b.ramification_index as i64;
            prop_assert!(b.terms.windows(2).all(|w| w[0].0 < w[1].0));
            prop_assert!(b.terms.iter().all(|(x, c)| x >= &int(1) && !c.is_zero()));
            let g = b.terms.iter().fold(n, |g, (x, _)| gcd(g, (x * Rat::from_integer(n.into())).to_integer().try_into().unwrap()));
            prop_assert_eq!(g, 1);
            let res = eval_on_branch(&e.curve, b);
            prop_assert!(res.is_zero_to_prec(), "residual on branch {}", b.branch_id);
            let cd = characteristic_exponents(b).unwrap();
            prop_assert_eq!(cd.ladder.iter().map(|l| l.1).product::<u64>(), b.ramification_index);
        }
    }

    #[test]
    fn conjugates_share_characteristic_data(f in curve()) {
        let e = expand_separated(&f).unwrap();
        for b in &e.branches {
            let cd = characteristic_exponents(b).unwrap();
            for k in 0..b.ramification_index {
                let exps: Vec<Rat> = conjugate_terms(b, k).into_iter().map(|t| t.0).collect();
                prop_assert_eq!(support_char_exponents(b.ramification_index, &exps), cd.char_exponents.clone());
            }
        }
    }

    #[test]
    fn determinations_are_roots(f in curve(), k in 0u64..6) {
        let e = expand_separated(&f).unwrap();
        let s = BigComplex::from_f64(0.05, 0.02, 96);
        for b in &e.branches {
            let k = k % b.ramification_index;
            let (x, y) = evaluate_branch(b, k, &s, 96).unwrap();
            let mut acc = BigComplex::zero(96);
            for (ex, c) in e.curve.terms() {
                let c = BigComplex::from_rat(c, 96);
                acc = acc.add(&c.mul(&x.powi(ex[0] as u64)).mul(&y.powi(ex[1] as u64)));
            }
            let xs = x.abs().to_f64();
            let bound = xs.powf(b.truncation_order.numer().to_string().parse::<f64>().unwrap()
                / b.truncation_order.denom().to_string().parse::<f64>().unwrap() * 0.9);
            prop_assert!(acc.abs().to_f64() <= 1e3 * bound + 1e-22, "|f| = {} at |x| = {}", acc.abs().to_f64(), xs);
        }
    }

    #[test]
    fn profile_is_scale_invariant(f in curve(), c in prop::sample::select(vec![rat(1, 2), int(2), int(-3), rat(2, 3)])) {
        let g = scale_coordinates(&f, &c);
        let (pf, pg) = (saturation_profile(&f).unwrap(), saturation_profile(&g).unwrap());
        prop_assert_eq!(pf.exponent_multiset(), pg.exponent_multiset());
        let ef = expand_separated(&f).unwrap();
        let eg = expand_separated(&g).unwrap();
        let mut cf: Vec<_> = ef.branches.iter().map(|b| characteristic_exponents(b).unwrap().char_exponents).collect();
        let mut cg: Vec<_> = eg.branches.iter().map(|b| characteristic_exponents(b).unwrap().char_exponents).collect();
        cf.sort();
        cg.sort();
        prop_assert_eq!(cf, cg);
    }

    #[test]
    fn early_stop_matches_discriminant_bound(f in curve()) {
        let a = satcurve::saturation::profile_of_expansion(&expand_separated(&f).unwrap()).unwrap();
        let b = satcurve::saturation::profile_of_expansion(&expand_curve(&f, &int(1)).unwrap()).unwrap();
        prop_assert_eq!(a.exponent_multiset(), b.exponent_multiset());
        prop_assert_eq!(a.per_pair_class_count, b.per_pair_class_count);
    }

    #[test]
    fn contact_exponents_at_least_one(f in curve()) {
        let e = expand_separated(&f).unwrap();
        let p = satcurve::saturation::profile_of_expansion(&e).unwrap();
        for t in &p.types {
            prop_assert!(t.exponent >= int(1));
            if !t.self_contact {
                let a = &e.branches[t.branch_pair.0];
                let b = &e.branches[t.branch_pair.1];
                let differ = tangent_slope(a) != tangent_slope(b);
                prop_assert_eq!(t.exponent == int(1), differ);
            } else {
                prop_assert!(t.exponent > int(1));
            }
        }
    }

    #[test]
    fn polynomials_are_lipschitz(f in curve(), p in small_poly(3, 4)) {
        prop_assume!(!p.is_zero());
        let r = is_lipschitz_fraction(&p, &BiPoly::one(), &f).unwrap();
        prop_assert_eq!(r.verdict, Verdict::Lipschitz);
    }

    #[test]
    fn closure_grows_with_the_ideal(f in curve(), p in small_poly(3, 3), g1 in small_poly(3, 2), g2 in small_poly(3, 2)) {
        let e = expand_separated(&f).unwrap();
        let vanishes = |g: &BiPoly| e.branches.iter().any(|b| eval_on_branch(g, b).is_zero_to_prec());
        prop_assume!(!p.is_zero() && !vanishes(&g1) && !vanishes(&g2));
        prop_assume!(g1.constant_term() == int(0) && g2.constant_term() == int(0));
        let small = integral_closure_member(&p, &BiPoly::one(), std::slice::from_ref(&g1), &f).unwrap();
        let big = integral_closure_member(&p, &BiPoly::one(), &[g1.clone(), g2.clone()], &f).unwrap();
        prop_assert!(!small.member || big.member);
    }
}

fn family_from(f: &BiPoly) -> TriPoly {
    parse_family(&f.to_string()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn product_families_are_equisaturated(f in curve()) {
        let fam = FamilyCurve::new(family_from(&f), vec![int(0), rat(1, 2), int(1)]).unwrap();
        let r = equisaturation_check(&fam).unwrap();
        prop_assert_eq!(r.verdict, satcurve::family::EquisatVerdict::Equisaturated);
        let base = saturation_profile(&f).unwrap().exponent_multiset();
        for fiber in &r.per_t {
            prop_assert_eq!(fiber.profile.exponent_multiset(), base.clone());
        }
    }

    #[test]
    fn verdict_survives_rescaling_t(
        idx in 0usize..4,
        c in prop::sample::select(vec![int(2), int(-1), rat(1, 3), int(3)]),
    ) {
        let fams = ["y^2 - x^2*(x - t)", "y^2 - x^3 - t*x^2", "(y - t*x)*(y + x) - x^3", "y^2 - x^3 - t*x^4"];
        let f = parse_family(fams[idx]).unwrap();
        let ts = vec![int(0), rat(1, 4), rat(1, 2), int(1)];
        let scaled = f.compose(&[TriPoly::var(0), TriPoly::var(1), TriPoly::var(2).scale(&c)]);
        let ts2: Vec<Rat> = ts.iter().map(|t| t / &c).collect();
        let a = equisaturation_check(&FamilyCurve::new(f, ts).unwrap()).unwrap();
        let b = equisaturation_check(&FamilyCurve::new(scaled, ts2).unwrap()).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
    }
}
