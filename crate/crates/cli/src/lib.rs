//! Argument handling and report construction for the `satcurve` binary.

use clap::{Parser, Subcommand};
use satcurve::curve::{check_y_regular, make_y_regular};
use satcurve::family::{equisaturation_check, EquisatVerdict, FamilyCurve};
use satcurve::numfield::NumberField;
use satcurve::puiseux::{characteristic_exponents, expand_curve, tangent_slope, PuiseuxBranch};
use satcurve::rat::{parse_rat, Order};
use satcurve::saturation::{
    integral_closure_member, is_lipschitz_fraction, profile_of_expansion, profile_shear_stability, ContactType,
    SaturationProfile, Verdict,
};
use satcurve::{parse_family, parse_polynomial, BiPoly, Elem, Error, Rat};
use satcurve_verify::{crosscheck_report, SamplePlan};
use serde_json::{json, Map, Value};
use std::time::Instant;

pub const SCHEMA_VERSION: &str = "satcurve-report/1";
/// JSON Schema for every report this binary writes.
pub const SCHEMA: &str = include_str!("../schema/satcurve-report-1.json");

#[derive(Parser, Debug, Clone)]
#[command(
    name = "satcurve",
    version,
    about = "Puiseux branches, contact profiles and Lipschitz membership for plane curve germs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for the shear sequence and for sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Fail instead of shearing a curve that is not y-regular.
    #[arg(long, global = true)]
    pub no_shear: bool,
    /// Human-readable output instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    pub pretty: bool,
    /// JSON output (the default).
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall-clock time in the report (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Puiseux branches, tangents and characteristic exponents.
    Branches {
        #[arg(long)]
        curve: String,
        /// Minimum x-order of the expansion.
        #[arg(long, default_value = "1")]
        order: String,
    },
    /// Contact types and distinct contact exponents.
    Profile {
        #[arg(long)]
        curve: String,
        /// Number of random shears to recompute the profile under.
        #[arg(long, default_value_t = 0)]
        stability: usize,
    },
    /// Lipschitz test for the fraction num/den.
    Lipschitz {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        num: String,
        #[arg(long, default_value = "1")]
        den: String,
        /// Cross-check the verdict by sampling.
        #[arg(long)]
        verify: bool,
        /// Float precision in bits for sampling.
        #[arg(long, default_value_t = 128)]
        precision: u32,
        #[arg(long, default_value_t = satcurve_verify::DEFAULT_SLOPE_TOLERANCE)]
        tolerance: f64,
    },
    /// Integral-closure membership of num/den in the ideal of the generators.
    Ideal {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        num: String,
        #[arg(long, default_value = "1")]
        den: String,
        #[arg(long = "gen", required = true)]
        generators: Vec<String>,
    },
    /// Equisaturation of a family in x, y, t.
    Family {
        #[arg(long)]
        family: String,
        /// Parameter samples; 0 is always added.
        #[arg(long = "t")]
        t: Vec<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Branches { .. } => "branches",
            Command::Profile { .. } => "profile",
            Command::Lipschitz { .. } => "lipschitz",
            Command::Ideal { .. } => "ideal",
            Command::Family { .. } => "family",
        }
    }
}

/// Everything the binary writes, plus its exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: Option<String>,
    pub code: i32,
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_input_error() || matches!(e, Error::ZeroPolynomial | Error::NotAGerm) {
        2
    } else if matches!(e, Error::PrecisionOverflow(_)) {
        4
    } else {
        3
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Syntax { .. } => "SyntaxError",
        Error::UnknownVariable { .. } => "UnknownVariable",
        Error::NotAGerm => "NotAGerm",
        Error::ZeroPolynomial => "ZeroPolynomial",
        Error::NotYRegular(_) => "NotYRegular",
        Error::NotReduced => "NotReduced",
        Error::PrecisionOverflow(_) => "PrecisionOverflow",
        Error::InsufficientTruncation(_) => "InsufficientTruncation",
        Error::DenominatorVanishesOnBranch(_) => "DenominatorVanishesOnBranch",
        Error::EmptyIdeal(_) => "EmptyIdeal",
        Error::FiberNotReduced(_) => "FiberNotReduced",
        Error::FiberNotAGerm(_) => "FiberNotAGerm",
        Error::RadiusTooLarge(_) => "RadiusTooLarge",
        Error::InvalidArgument(_) => "InvalidArgument",
    }
}

pub fn rat_json(r: &Rat) -> Value {
    json!({"num": r.numer().to_string(), "den": r.denom().to_string()})
}

fn rats_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}

pub fn order_json(o: &Order) -> Value {
    match o {
        Order::Finite(r) => rat_json(r),
        Order::Infinite => json!("inf"),
    }
}

fn elem_json(k: &NumberField, e: &Elem) -> Value {
    let (re, im) = k.embed_f64(e);
    json!({"text": e.to_string(), "re": re, "im": im})
}

fn field_json(k: &NumberField) -> Value {
    json!({"degree": k.degree(), "min_poly": k.min_poly().to_string()})
}

fn contact_json(t: &ContactType) -> Value {
    json!({
        "branch_pair": [t.branch_pair.0, t.branch_pair.1],
        "class_rep": t.class_rep,
        "m": t.m,
        "mu": t.mu,
        "exponent": rat_json(&t.exponent),
        "self_contact": t.self_contact,
    })
}

fn profile_json(p: &SaturationProfile) -> Value {
    json!({
        "curve_hash": p.curve_hash,
        "types": p.types.iter().map(contact_json).collect::<Vec<_>>(),
        "distinct_exponents": rats_json(&p.distinct_exponents),
        "per_pair_class_count": p.per_pair_class_count.iter()
            .map(|((a, b), n)| json!({"pair": [a, b], "count": n}))
            .collect::<Vec<_>>(),
    })
}

fn branch_json(b: &PuiseuxBranch) -> Value {
    let k: &NumberField = &b.field;
    let cd = characteristic_exponents(b);
    let characteristic = match cd {
        Ok(cd) => json!({
            "char_exponents": rats_json(&cd.char_exponents),
            "ladder": cd.ladder.iter().map(|(m, n)| json!([m, n])).collect::<Vec<_>>(),
        }),
        Err(_) => Value::Null,
    };
    json!({
        "branch_id": b.branch_id,
        "ramification_index": b.ramification_index,
        "tangent_slope": elem_json(k, &tangent_slope(b)),
        "truncation_order": rat_json(&b.truncation_order),
        "terms": b.terms.iter().map(|(e, c)| json!({"exponent": rat_json(e), "coeff": elem_json(k, c)})).collect::<Vec<_>>(),
        "characteristic": characteristic,
    })
}

fn parse_order(s: &str) -> Result<Rat, Error> {
    parse_rat(s.trim()).ok_or_else(|| Error::InvalidArgument(format!("not a rational number: `{s}`")))
}

/// Parsed curve and its y-regular form; the shear also applies to fractions.
struct Prepared {
    original: BiPoly,
    regular: BiPoly,
    shear: Rat,
}

fn prepare(text: &str, cli: &Cli) -> Result<Prepared, Error> {
    let original = parse_polynomial(text)?;
    let (regular, shear) = if cli.no_shear {
        (check_y_regular(&original)?, Rat::from_integer(0.into()))
    } else {
        make_y_regular(&original, cli.seed)?
    };
    Ok(Prepared { original, regular, shear })
}

fn run_command(cli: &Cli, input: &mut Map<String, Value>, extra: &mut Map<String, Value>) -> Result<Value, Error> {
    match &cli.command {
        Command::Branches { curve, order } => {
            let order = parse_order(order)?;
            let pc = prepare(curve, cli)?;
            input.insert("curve".into(), json!(pc.original.to_string()));
            input.insert("order".into(), rat_json(&order));
            extra.insert("shear".into(), rat_json(&pc.shear));
            let e = expand_curve(&pc.regular, &order)?;
            Ok(json!({
                "regularized_curve": pc.regular.to_string(),
                "field": field_json(&e.field),
                "discriminant_order": e.d0,
                "expansion_order": rat_json(&e.order),
                "branches": e.branches.iter().map(branch_json).collect::<Vec<_>>(),
            }))
        }
        Command::Profile { curve, stability } => {
            let pc = prepare(curve, cli)?;
            input.insert("curve".into(), json!(pc.original.to_string()));
            extra.insert("shear".into(), rat_json(&pc.shear));
            let e = expand_curve(&pc.regular, &Rat::from_integer(1.into()))?;
            let p = profile_of_expansion(&e)?;
            let mut out = profile_json(&p);
            out["ramification"] = json!(e.branches.iter().map(|b| b.ramification_index).collect::<Vec<_>>());
            if *stability > 0 {
                input.insert("stability".into(), json!(stability));
                let s = profile_shear_stability(&pc.original, *stability, cli.seed)?;
                out["stability"] = json!({
                    "stable": s.stable,
                    "trials": s.trials.iter().map(|t| json!({
                        "lambda": rat_json(&t.lambda),
                        "regularizing_shear": rat_json(&t.regularizing_shear),
                        "distinct_exponents": rats_json(&t.distinct_exponents),
                    })).collect::<Vec<_>>(),
                });
            }
            Ok(out)
        }
        Command::Lipschitz { curve, num, den, verify, precision, tolerance } => {
            let pc = prepare(curve, cli)?;
            let p = parse_polynomial(num)?;
            let q = parse_polynomial(den)?;
            input.insert("curve".into(), json!(pc.original.to_string()));
            input.insert("num".into(), json!(p.to_string()));
            input.insert("den".into(), json!(q.to_string()));
            extra.insert("shear".into(), rat_json(&pc.shear));
            let (ps, qs) = (p.shear(&pc.shear), q.shear(&pc.shear));
            let r = is_lipschitz_fraction(&ps, &qs, &pc.regular)?;
            let mut out = json!({
                "verdict": verdict_name(r.verdict),
                "boundedness": r.boundedness.iter().map(order_json).collect::<Vec<_>>(),
                "undefined_on": r.undefined_on,
                "ramification": r.ramification,
                "expansion_order": rat_json(&r.expansion_order),
                "per_type": r.per_type.iter().map(|t| json!({
                    "contact": contact_json(&t.contact),
                    "nu": order_json(&t.nu),
                    "pass": t.pass,
                })).collect::<Vec<_>>(),
            });
            if *verify {
                input.insert("verify".into(), json!(true));
                extra.insert("precision".into(), json!(precision));
                if r.verdict == Verdict::Undefined {
                    out["consistency"] = Value::Null;
                } else {
                    let mut plan = SamplePlan::decades(1, 4, 4, cli.seed);
                    plan.float_precision = *precision;
                    let c = crosscheck_report(&r, &pc.regular, &plan, *tolerance)?;
                    out["consistency"] = json!({
                        "measured_slope": c.measured_slope,
                        "predicted_slope": c.predicted_slope.as_ref().map(rat_json),
                        "agree": c.agree,
                        "tolerance": c.tolerance,
                        "residuals": c.residuals.iter().map(|s| json!({"radius": s.radius, "ln_max_ratio": s.ln_max})).collect::<Vec<_>>(),
                    });
                }
            }
            Ok(out)
        }
        Command::Ideal { curve, num, den, generators } => {
            let pc = prepare(curve, cli)?;
            let p = parse_polynomial(num)?;
            let q = parse_polynomial(den)?;
            let gens: Vec<BiPoly> = generators.iter().map(|g| parse_polynomial(g)).collect::<Result<_, _>>()?;
            input.insert("curve".into(), json!(pc.original.to_string()));
            input.insert("num".into(), json!(p.to_string()));
            input.insert("den".into(), json!(q.to_string()));
            input.insert("generators".into(), json!(gens.iter().map(|g| g.to_string()).collect::<Vec<_>>()));
            extra.insert("shear".into(), rat_json(&pc.shear));
            let sheared: Vec<BiPoly> = gens.iter().map(|g| g.shear(&pc.shear)).collect();
            let r = integral_closure_member(&p.shear(&pc.shear), &q.shear(&pc.shear), &sheared, &pc.regular)?;
            Ok(json!({
                "member": r.member,
                "per_branch": r.per_branch.iter().map(|m| json!({
                    "branch": m.branch,
                    "ord_h": order_json(&m.ord_h),
                    "min_generator_ord": order_json(&m.min_generator_ord),
                    "member": m.member,
                })).collect::<Vec<_>>(),
            }))
        }
        Command::Family { family, t } => {
            let poly = parse_family(family)?;
            let texts: Vec<String> = if t.is_empty() { vec!["0".into(), "1/2".into(), "1".into()] } else { t.clone() };
            let mut ts: Vec<Rat> = texts.iter().map(|s| parse_order(s)).collect::<Result<_, _>>()?;
            ts.push(Rat::from_integer(0.into()));
            let fc = FamilyCurve::new(poly, ts)?;
            input.insert("family".into(), json!(fc.poly.to_string()));
            input.insert("t".into(), rats_json(&fc.t_values));
            let r = equisaturation_check(&fc)?;
            Ok(json!({
                "discriminant": r.discriminant.to_string(),
                "reduced_discriminant": r.reduced_discriminant.to_string(),
                "verdict": match r.verdict {
                    EquisatVerdict::Equisaturated => "Equisaturated",
                    EquisatVerdict::NotEquisaturated => "NotEquisaturated",
                    EquisatVerdict::Inconclusive => "Inconclusive",
                },
                "witness": r.witness.as_ref().map(rat_json),
                "reason": r.reason,
                "per_t": r.per_t.iter().map(|f| json!({
                    "t": rat_json(&f.t),
                    "shear": rat_json(&f.shear),
                    "distinct_exponents": rats_json(&f.profile.distinct_exponents),
                    "exponent_multiset": rats_json(&f.profile.exponent_multiset()),
                    "discriminant_order": f.discriminant_order,
                })).collect::<Vec<_>>(),
            }))
        }
    }
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Lipschitz => "Lipschitz",
        Verdict::BoundedNotLipschitz => "BoundedNotLipschitz",
        Verdict::Unbounded => "Unbounded",
        Verdict::Undefined => "Undefined",
    }
}

/// Builds the report object and exit code for one invocation.
pub fn report(cli: &Cli) -> (Value, i32) {
    let start = Instant::now();
    let mut input = Map::new();
    let mut extra = Map::new();
    let res = run_command(cli, &mut input, &mut extra);
    let mut top = Map::new();
    top.insert("schema_version".into(), json!(SCHEMA_VERSION));
    top.insert("command".into(), json!(cli.command.name()));
    top.insert("input".into(), Value::Object(input));
    top.insert("seed".into(), json!(cli.seed));
    for (k, v) in extra {
        top.insert(k, v);
    }
    let code = match res {
        Ok(v) => {
            top.insert("status".into(), json!("ok"));
            top.insert("result".into(), v);
            0
        }
        Err(e) => {
            let code = exit_code(&e);
            top.insert("status".into(), json!("error"));
            top.insert("error".into(), json!({"kind": error_kind(&e), "message": e.to_string(), "exit_code": code}));
            code
        }
    };
    if cli.timing {
        top.insert("timing_ms".into(), json!(start.elapsed().as_secs_f64() * 1e3));
    }
    (Value::Object(top), code)
}

fn is_rat(v: &Value) -> Option<String> {
    let o = v.as_object()?;
    if o.len() != 2 {
        return None;
    }
    let (n, d) = (o.get("num")?.as_str()?, o.get("den")?.as_str()?);
    Some(if d == "1" { n.to_string() } else { format!("{n}/{d}") })
}

fn atom(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => is_rat(v),
    }
}

/// Single-line form for atoms and flat arrays of atoms.
fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Array(a) => {
            let items: Option<Vec<String>> = a.iter().map(atom).collect();
            items.map(|i| format!("[{}]", i.join(", ")))
        }
        _ => atom(v),
    }
}

fn pretty_into(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        pretty_into(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                out.push_str(&format!("{pad}- [{i}]\n"));
                pretty_into(x, indent + 1, out);
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v).unwrap_or_default())),
    }
}

/// Indented text rendering of a report; rationals print as `p/q`.
pub fn render_pretty(v: &Value) -> String {
    let mut out = String::new();
    pretty_into(v, 0, &mut out);
    out
}

pub fn run(cli: &Cli) -> Outcome {
    let (v, code) = report(cli);
    let stdout = if cli.pretty {
        render_pretty(&v)
    } else {
        let mut s = serde_json::to_string(&v).expect("serializable");
        s.push('\n');
        s
    };
    let stderr = v.get("error").map(|e| format!("satcurve: {}", e["message"].as_str().unwrap_or("error")));
    Outcome { stdout, stderr, code }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> (Value, i32) {
        let cli = Cli::try_parse_from(std::iter::once("satcurve").chain(args.iter().copied())).unwrap();
        report(&cli)
    }

    #[test]
    fn rational_encoding() {
        assert_eq!(rat_json(&Rat::new(3.into(), 2.into())), json!({"num": "3", "den": "2"}));
        assert_eq!(order_json(&Order::Infinite), json!("inf"));
    }

    #[test]
    fn branches_report() {
        let (v, code) = go(&["branches", "--curve", "y^2-x^3"]);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["branches"][0]["ramification_index"], json!(2));
        assert_eq!(v["result"]["branches"][0]["characteristic"]["char_exponents"], json!([{"num": "3", "den": "2"}]));
        let (v, code) = go(&["branches", "--curve", "0"]);
        assert_eq!(code, 2);
        assert_eq!(v["status"], json!("error"));
        let (_, code) = go(&["branches", "--curve", "y^2-"]);
        assert_eq!(code, 2);
        let (v, code) = go(&["branches", "--curve", "x^2-y^3", "--no-shear"]);
        assert_eq!(code, 3);
        assert_eq!(v["error"]["kind"], json!("NotYRegular"));
    }

    #[test]
    fn pretty_rendering() {
        let (v, _) = go(&["profile", "--curve", "y^2-x^3"]);
        let s = render_pretty(&v);
        assert!(s.contains("distinct_exponents: [3/2]"), "{s}");
    }
}
