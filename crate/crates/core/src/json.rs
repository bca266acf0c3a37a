//! Versioned JSON wire format for scalars and eigensystems.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::eigensys::{DirichletCharacter, Eigensystem};
use crate::error::{Error, Result};
use crate::hecke::Group;
use crate::scalar::{format_rational, parse_rational, QuadExt, QuadField, Rational, Scalar};
use crate::weights::Weight;

pub const SCHEMA_VERSION: u64 = 1;

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn rational_from_json(v: &Value, ptr: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| Error::schema(ptr, format!("not a rational: {s:?}"))),
        Value::Number(n) if n.is_i64() || n.is_u64() => {
            parse_rational(&n.to_string()).ok_or_else(|| Error::schema(ptr, "bad integer"))
        }
        _ => Err(Error::schema(ptr, "expected a rational string \"num/den\" or an integer")),
    }
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Rat(r) => rational_to_json(r),
        Scalar::Quad(q) => json!({
            "t": rational_to_json(&q.field.t),
            "d": rational_to_json(&q.field.d),
            "a": rational_to_json(&q.a),
            "b": rational_to_json(&q.b),
            "branch": q.branch,
        }),
    }
}

pub fn scalar_from_json(v: &Value, ptr: &str) -> Result<Scalar> {
    let Value::Object(m) = v else {
        return rational_from_json(v, ptr).map(Scalar::Rat);
    };
    check_keys(m, &["t", "d", "a", "b", "branch"], ptr)?;
    let field = |k: &str| -> Result<Rational> {
        let p = format!("{ptr}/{k}");
        rational_from_json(m.get(k).ok_or_else(|| Error::schema(&p, "missing"))?, &p)
    };
    let branch = match m.get("branch") {
        Some(Value::Number(n)) if n.as_u64().is_some_and(|b| b <= 1) => n.as_u64().unwrap() as u8,
        _ => return Err(Error::schema(format!("{ptr}/branch"), "expected 0 or 1")),
    };
    let q = QuadExt::new(QuadField::new(field("t")?, field("d")?), field("a")?, field("b")?, branch);
    Ok(Scalar::from_quad(q))
}

fn scalars_to_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

fn scalars_from_json(v: &Value, ptr: &str) -> Result<Vec<Scalar>> {
    let Value::Array(a) = v else {
        return Err(Error::schema(ptr, "expected an array of scalars"));
    };
    a.iter().enumerate().map(|(i, x)| scalar_from_json(x, &format!("{ptr}/{i}"))).collect()
}

fn check_keys(m: &Map<String, Value>, allowed: &[&str], ptr: &str) -> Result<()> {
    match m.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::schema(format!("{ptr}/{k}"), "unknown key")),
        None => Ok(()),
    }
}

fn get_u64(m: &Map<String, Value>, key: &str, ptr: &str) -> Result<u64> {
    let p = format!("{ptr}/{key}");
    m.get(key)
        .ok_or_else(|| Error::schema(&p, "missing"))?
        .as_u64()
        .ok_or_else(|| Error::schema(&p, "expected a non-negative integer"))
}

pub fn character_to_json(c: &DirichletCharacter) -> Value {
    json!({
        "modulus": c.modulus(),
        "order": c.order(),
        "exponents": c.exponents().iter().map(|e| e.map_or(Value::Null, |k| json!(k))).collect::<Vec<_>>(),
    })
}

pub fn character_from_json(v: &Value, ptr: &str) -> Result<DirichletCharacter> {
    let Value::Object(m) = v else {
        return Err(Error::schema(ptr, "expected a character object"));
    };
    check_keys(m, &["modulus", "order", "exponents"], ptr)?;
    let modulus = get_u64(m, "modulus", ptr)?;
    let order = get_u64(m, "order", ptr)? as u32;
    let ep = format!("{ptr}/exponents");
    let Some(Value::Array(a)) = m.get("exponents") else {
        return Err(Error::schema(&ep, "expected an array"));
    };
    let exps = a
        .iter()
        .enumerate()
        .map(|(i, x)| match x {
            Value::Null => Ok(None),
            _ => x.as_u64().map(|k| Some(k as u32)).ok_or_else(|| Error::schema(format!("{ep}/{i}"), "expected an integer or null")),
        })
        .collect::<Result<Vec<_>>>()?;
    DirichletCharacter::new(modulus, order, exps).map_err(|e| Error::schema(ptr, e.to_string()))
}

pub fn eigensystem_to_json(e: &Eigensystem) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA_VERSION));
    if let Some(id) = &e.id {
        m.insert("id".into(), json!(id));
    }
    m.insert("group".into(), json!(e.group.to_string()));
    m.insert("p".into(), json!(e.p));
    m.insert("tame_level".into(), json!(e.tame_level));
    m.insert(
        "weight".into(),
        match e.weight {
            Weight::GL2(k) => json!(k),
            Weight::GSp4(a, b) => json!([a, b]),
        },
    );
    if let Some(c) = &e.nebentypus {
        m.insert("nebentypus".into(), character_to_json(c));
    }
    let sph: Map<String, Value> = e.spherical.iter().map(|(l, v)| (l.to_string(), scalars_to_json(v))).collect();
    m.insert("spherical".into(), Value::Object(sph));
    if let Some(t) = &e.iwahori_p {
        m.insert("iwahori_p".into(), scalars_to_json(t));
    }
    if !e.flags.is_empty() {
        m.insert("flags".into(), json!(e.flags));
    }
    Value::Object(m)
}

/// Parses and validates one eigensystem; errors carry JSON-pointer locations under `ptr`.
pub fn eigensystem_from_json(v: &Value, ptr: &str) -> Result<Eigensystem> {
    let Value::Object(m) = v else {
        return Err(Error::schema(if ptr.is_empty() { "/" } else { ptr }, "expected an eigensystem object"));
    };
    check_keys(m, &["schema", "id", "group", "p", "tame_level", "weight", "nebentypus", "spherical", "iwahori_p", "flags"], ptr)?;
    let version = get_u64(m, "schema", ptr)?;
    if version != SCHEMA_VERSION {
        return Err(Error::schema(format!("{ptr}/schema"), format!("unsupported schema version {version}")));
    }
    let gp = format!("{ptr}/group");
    let group: Group = m
        .get("group")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::schema(&gp, "expected \"GL2\" or \"GSp4\""))?
        .parse()
        .map_err(|_| Error::schema(&gp, "expected \"GL2\" or \"GSp4\""))?;
    let p = get_u64(m, "p", ptr)?;
    let tame_level = get_u64(m, "tame_level", ptr)?;
    let wp = format!("{ptr}/weight");
    let weight = match (group, m.get("weight")) {
        (Group::GL2, Some(w)) => Weight::GL2(w.as_i64().ok_or_else(|| Error::schema(&wp, "expected an integer"))?),
        (Group::GSp4, Some(Value::Array(a))) if a.len() == 2 => {
            let k = |i: usize| a[i].as_i64().ok_or_else(|| Error::schema(format!("{wp}/{i}"), "expected an integer"));
            Weight::GSp4(k(0)?, k(1)?)
        }
        (Group::GSp4, _) => return Err(Error::schema(&wp, "expected [k1, k2]")),
        (Group::GL2, None) => return Err(Error::schema(&wp, "missing")),
    };
    let mut e = Eigensystem::new(group, p, tame_level, weight);
    if let Some(id) = m.get("id") {
        e.id = Some(id.as_str().ok_or_else(|| Error::schema(format!("{ptr}/id"), "expected a string"))?.to_string());
    }
    if let Some(c) = m.get("nebentypus") {
        e.nebentypus = Some(character_from_json(c, &format!("{ptr}/nebentypus"))?);
    }
    let sp = format!("{ptr}/spherical");
    let Some(Value::Object(sph)) = m.get("spherical") else {
        return Err(Error::schema(&sp, "expected an object keyed by prime"));
    };
    let mut spherical = BTreeMap::new();
    for (k, v) in sph {
        let kp = format!("{sp}/{k}");
        let ell: u64 = k.parse().map_err(|_| Error::schema(&kp, "key is not a prime number"))?;
        spherical.insert(ell, scalars_from_json(v, &kp)?);
    }
    e.spherical = spherical;
    if let Some(t) = m.get("iwahori_p") {
        e.iwahori_p = Some(scalars_from_json(t, &format!("{ptr}/iwahori_p"))?);
    }
    if let Some(f) = m.get("flags") {
        let fp = format!("{ptr}/flags");
        let Value::Array(a) = f else {
            return Err(Error::schema(&fp, "expected an array of strings"));
        };
        e.flags = a
            .iter()
            .enumerate()
            .map(|(i, x)| x.as_str().map(str::to_string).ok_or_else(|| Error::schema(format!("{fp}/{i}"), "expected a string")))
            .collect::<Result<_>>()?;
    }
    e.validate().map_err(|err| match err {
        Error::InvalidInput(msg) => Error::schema(if ptr.is_empty() { "/" } else { ptr }, msg),
        other => other,
    })?;
    Ok(e)
}

/// A single eigensystem object or an array of them.
pub fn eigensystems_from_json(v: &Value) -> Result<Vec<Eigensystem>> {
    match v {
        Value::Array(a) => a.iter().enumerate().map(|(i, x)| eigensystem_from_json(x, &format!("/{i}"))).collect(),
        _ => Ok(vec![eigensystem_from_json(v, "")?]),
    }
}
