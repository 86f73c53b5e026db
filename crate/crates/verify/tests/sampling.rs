use satcurve::parse_polynomial as p;
use satcurve::puiseux::expand_curve;
use satcurve::rat::{int, rat, to_f64};
use satcurve::saturation::{profile_of_expansion, Verdict};
use satcurve_verify::{
    branch_residual_check, crosscheck, empirical_lipschitz_slope, verify_contact_exponent, SamplePlan,
};

fn plan(seed: u64) -> SamplePlan {
    SamplePlan::decades(1, 4, 4, seed)
}

#[test]
fn same_seed_same_samples() {
    let (y, x, f) = (p("y").unwrap(), p("x").unwrap(), p("y^2 - x^3").unwrap());
    let a = empirical_lipschitz_slope(&y, &x, &f, &plan(7)).unwrap();
    let b = empirical_lipschitz_slope(&y, &x, &f, &plan(7)).unwrap();
    assert_eq!(a, b);
    let c = empirical_lipschitz_slope(&y, &x, &f, &plan(8)).unwrap();
    assert_ne!(a.samples, c.samples);
}

#[test]
fn plan_spans_three_decades() {
    let pl = plan(0);
    assert!(pl.radii[0] / pl.radii.last().unwrap() >= 1e3 * 0.999);
}

#[test]
fn every_contact_type_is_measured() {
    for (curve, seed) in
        [("y^2 - x^3", 1), ("y^2 - x^4", 2), ("y*(y - x)", 3), ("(y^2 - x^3)*(y - x^2)", 4), ("y^3 - x^5", 5)]
    {
        let e = expand_curve(&p(curve).unwrap(), &int(8)).unwrap();
        let profile = profile_of_expansion(&e).unwrap();
        for t in &profile.types {
            let (i, j) = t.branch_pair;
            let c =
                verify_contact_exponent(&e.branches[i], &e.branches[j], t.class_rep, &t.exponent, &plan(seed)).unwrap();
            assert!(c.agree, "{curve}: predicted {} measured {:?}", t.exponent, c.measured);
        }
    }
}

#[test]
fn documented_contact_slopes() {
    let cusp = expand_curve(&p("y^2 - x^3").unwrap(), &int(8)).unwrap();
    let c = verify_contact_exponent(&cusp.branches[0], &cusp.branches[0], 1, &rat(3, 2), &plan(0)).unwrap();
    assert!((c.measured.unwrap() - 1.5).abs() <= 0.1);
    let tac = expand_curve(&p("y^2 - x^4").unwrap(), &int(8)).unwrap();
    let c = verify_contact_exponent(&tac.branches[0], &tac.branches[1], 0, &int(2), &plan(0)).unwrap();
    assert!((c.measured.unwrap() - 2.0).abs() <= 0.1);
    let lines = expand_curve(&p("(y - x)*(y + x)").unwrap(), &int(8)).unwrap();
    let c = verify_contact_exponent(&lines.branches[0], &lines.branches[1], 0, &int(1), &plan(0)).unwrap();
    assert!((c.measured.unwrap() - 1.0).abs() <= 0.1);
}

#[test]
fn residuals_flag_corruption() {
    for curve in ["y^2 - x^3", "y^2 - x^3 - x^4", "y^3 - x^7", "(y - x)*(y^2 - x^5)"] {
        let f = p(curve).unwrap();
        let e = expand_curve(&f, &int(4)).unwrap();
        for b in &e.branches {
            assert!(branch_residual_check(b, &f, &plan(0)).unwrap().bounded, "{curve} branch {}", b.branch_id);
            let mut bad = b.clone();
            let k = bad.field.clone();
            let last = bad.terms.len() - 1;
            bad.terms[last].1 = k.add(&bad.terms[last].1, &k.one());
            assert!(
                !branch_residual_check(&bad, &f, &plan(0)).unwrap().bounded,
                "{curve} corrupted branch {}",
                b.branch_id
            );
        }
    }
}

#[test]
fn slopes_match_symbolic_verdicts() {
    let cases = [
        ("y", "x", "y^2 - x^5", Verdict::BoundedNotLipschitz),
        ("y", "x", "y^2 - x^3", Verdict::BoundedNotLipschitz),
        ("y^3", "x^2", "y^2 - x^3", Verdict::Lipschitz),
        ("y", "x^2", "y^2 - x^3", Verdict::Unbounded),
        ("x^2 + y", "1", "y^3 - x^4", Verdict::Lipschitz),
    ];
    for (num, den, curve, verdict) in cases {
        let c = crosscheck(&p(num).unwrap(), &p(den).unwrap(), &p(curve).unwrap(), &plan(11)).unwrap();
        assert_eq!(c.verdict, verdict, "{num}/{den} on {curve}");
        assert!(
            c.agree,
            "{num}/{den} on {curve}: measured {:?} predicted {:?}",
            c.measured_slope,
            c.predicted_slope.as_ref().map(to_f64)
        );
    }
}
