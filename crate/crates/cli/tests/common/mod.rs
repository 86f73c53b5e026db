//! Minimal JSON Schema checker covering the keywords the report schema uses.

#![allow(dead_code)]

use regex::Regex;
use serde_json::Value;

pub fn schema() -> Value {
    serde_json::from_str(satcurve_cli::SCHEMA).expect("schema parses")
}

fn resolve<'a>(root: &'a Value, r: &str) -> &'a Value {
    let path = r.strip_prefix("#/").expect("local ref");
    path.split('/').fold(root, |v, k| &v[k])
}

fn type_ok(t: &str, v: &Value) -> bool {
    match t {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        "integer" => v.is_i64() || v.is_u64(),
        "number" => v.is_number(),
        _ => panic!("unsupported type {t}"),
    }
}

/// Returns the list of violations; empty means valid.
pub fn validate(root: &Value, s: &Value, v: &Value, at: &str) -> Vec<String> {
    let mut errs = Vec::new();
    let o = s.as_object().expect("schema object");
    for (k, kw) in o {
        match k.as_str() {
            "$schema" | "$id" | "title" | "$defs" => {}
            "$ref" => errs.extend(validate(root, resolve(root, kw.as_str().unwrap()), v, at)),
            "type" => {
                let ok = match kw {
                    Value::String(t) => type_ok(t, v),
                    Value::Array(ts) => ts.iter().any(|t| type_ok(t.as_str().unwrap(), v)),
                    _ => panic!("bad type keyword"),
                };
                if !ok {
                    errs.push(format!("{at}: expected type {kw}, got {v}"));
                }
            }
            "const" if kw != v => errs.push(format!("{at}: expected {kw}, got {v}")),
            "const" => {}
            "enum" => {
                if !kw.as_array().unwrap().contains(v) {
                    errs.push(format!("{at}: {v} not in {kw}"));
                }
            }
            "pattern" => {
                if let Some(sv) = v.as_str() {
                    if !Regex::new(kw.as_str().unwrap()).unwrap().is_match(sv) {
                        errs.push(format!("{at}: `{sv}` does not match {kw}"));
                    }
                }
            }
            "required" => {
                if let Some(m) = v.as_object() {
                    for r in kw.as_array().unwrap() {
                        if !m.contains_key(r.as_str().unwrap()) {
                            errs.push(format!("{at}: missing {r}"));
                        }
                    }
                }
            }
            "properties" => {
                if let Some(m) = v.as_object() {
                    for (name, sub) in kw.as_object().unwrap() {
                        if let Some(x) = m.get(name) {
                            errs.extend(validate(root, sub, x, &format!("{at}.{name}")));
                        }
                    }
                }
            }
            "additionalProperties" => {
                if kw == &Value::Bool(false) {
                    if let Some(m) = v.as_object() {
                        let props = o["properties"].as_object().unwrap();
                        for name in m.keys().filter(|n| !props.contains_key(*n)) {
                            errs.push(format!("{at}: unexpected key {name}"));
                        }
                    }
                }
            }
            "items" => {
                if let Some(a) = v.as_array() {
                    for (i, x) in a.iter().enumerate() {
                        errs.extend(validate(root, kw, x, &format!("{at}[{i}]")));
                    }
                }
            }
            "anyOf" => {
                let branches = kw.as_array().unwrap();
                if !branches.iter().any(|b| validate(root, b, v, at).is_empty()) {
                    errs.push(format!("{at}: matches no alternative"));
                }
            }
            other => panic!("unsupported keyword {other}"),
        }
    }
    errs
}

pub fn assert_valid(v: &Value) {
    let s = schema();
    let errs = validate(&s, &s, v, "$");
    assert!(errs.is_empty(), "schema violations: {errs:#?}\nreport: {v}");
}
