//! Text and JSON renderings shared by the CLI and the C ABI.
//!
//! Integers become JSON numbers when they are exactly representable as an
//! IEEE double (|v| ≤ 2^53) and decimal strings otherwise. Values whose
//! decimal expansion would exceed [`limits::max_decimal_digits`] are shown
//! as `{"form": "a*p^(b*p^k)", "digits": n}`.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::antideriv::{AntiSet, ConstructionResult};
use crate::limits;
use crate::orbit::IncProfile;
use crate::padic::{PSplit, PValue, StandardForm};

const EXACT_DOUBLE: u64 = 1 << 53;

pub(crate) fn ser_nat<S: serde::Serializer>(
    v: &BigUint,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&json_nat(v), s)
}

pub fn json_nat(v: &BigUint) -> Value {
    match v.to_u64() {
        Some(x) if x <= EXACT_DOUBLE => json!(x),
        _ => Value::String(v.to_string()),
    }
}

pub fn json_int(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) if x.unsigned_abs() <= EXACT_DOUBLE => json!(x),
        _ => Value::String(v.to_string()),
    }
}

fn small_enough(s: &PSplit) -> bool {
    s.estimated_digits()
        .to_u64()
        .is_some_and(|d| d <= limits::max_decimal_digits())
}

/// Decimal when short enough, otherwise the standard form.
pub fn text_split(s: &PSplit) -> String {
    if small_enough(s) {
        if let Ok(v) = s.materialize() {
            return v.to_string();
        }
    }
    s.to_string()
}

pub fn text_value(v: &PValue) -> String {
    match v {
        PValue::Zero => "0".into(),
        PValue::NonZero(s) => text_split(s),
    }
}

pub fn json_split(s: &PSplit) -> Value {
    if small_enough(s) {
        if let Ok(v) = s.materialize() {
            return json_int(&v);
        }
    }
    json!({ "form": s.to_string(), "digits": json_nat(&s.estimated_digits()) })
}

pub fn json_value(v: &PValue) -> Value {
    match v {
        PValue::Zero => json!(0),
        PValue::NonZero(s) => json_split(s),
    }
}

pub fn text_form(f: &StandardForm) -> String {
    match f.to_psplit() {
        Ok(s) if small_enough(&s) => text_split(&s),
        _ => f.to_string(),
    }
}

pub fn json_profile(profile: &IncProfile) -> Value {
    serde_json::to_value(profile).expect("serializable")
}

pub fn json_member(f: &StandardForm) -> Value {
    let mut m = json!({ "a": json_int(f.a()), "b": json_nat(f.b()), "k": f.k() });
    if let Ok(s) = f.to_psplit() {
        if small_enough(&s) {
            if let Ok(v) = s.materialize() {
                m["value"] = json_int(&v);
            }
        }
    }
    m
}

pub fn json_anti_set(set: &AntiSet) -> Value {
    json!({
        "p": set.prime.get(),
        "y": json_split(&set.target),
        "count": set.count(),
        "members": set.members.iter().map(json_member).collect::<Vec<_>>(),
        "primitive": set.primitive_index(),
        "c_values": set.c_values,
    })
}

pub fn text_anti_set(set: &AntiSet) -> String {
    set.members
        .iter()
        .map(|m| {
            let value = text_form(m);
            let form = m.to_string();
            if value == form {
                form
            } else {
                format!("{form} = {value}")
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn json_construction(r: &ConstructionResult) -> Value {
    json!({
        "p": r.p.get(),
        "n": r.n,
        "k0": r.k0,
        "c_list": r.c_list.iter().map(json_nat).collect::<Vec<_>>(),
        "b0": json_nat(&r.b0),
        "a0": json_nat(&r.a0),
        "x0": json_member(&r.x0),
        "y": json_split(&r.y),
        "count": r.count,
    })
}

pub fn text_construction(r: &ConstructionResult) -> String {
    let x0 =
        r.x0.to_psplit()
            .map_or_else(|_| r.x0.to_string(), |s| text_split(&s));
    format!(
        "x0 = {x0}\ny = {}\nk0 = {}\nb0 = {}\na0 = {}\ncount = {}",
        text_split(&r.y),
        r.k0,
        r.b0,
        r.a0,
        r.count
    )
}
