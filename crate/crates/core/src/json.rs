//! JSON encodings shared by the command-line front end and the C interface.
//!
//! | value | encoding |
//! |---|---|
//! | carrier | `"nat"`, `"rational"`, `"words:xy"`, `{"trunc": 4}`, `{"words": "xy"}`, `{"pomonoid": {...}}` |
//! | element | numbers for ℕ/ℤ/truncated, `"p/q"` or a number for ℚ, strings for words and table labels |
//! | descriptor | `{"finite": [...]}`, `{"all": true}`, `{"gridtail": {"a": a, "n": n}}`, `{"tailge": {"a": a}}` |
//! | coefficient | `"12"` or `12`, `"p/q"`, `{"mod": n, "val": v}`, `[a, b, c, d]` row-major |
//! | series | `{"monoid": carrier, "ring": ring, "terms": [[element, coeff], ...]}` or `{"builtin": name, ...}` |
//! | space | `{"carrier": [labels], "family": [[labels], ...]}` |
//! | morphism | `{"graph": {label: label, ...}}` |

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::carriers::{embed_finite_pomonoid, CatalogCarrier, FinitePomonoid};
use crate::coeff::{parse_coeff_literal, AnyRing, Coeff, Mat2, RingError};
use crate::finmonoid::{MonoidElement, MonoidError, PartialFinitenessMonoid, SupportDescriptor, Window};
use crate::finpf::{FinPfError, FinSpace, PartialFn, SetSystem, Subset};
use crate::series::{builtins, GenSeries, SeriesError};

#[derive(Debug, Error)]
pub enum JsonError {
    /// Syntax errors keep serde's `line L column C` anchor.
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    FinPf(#[from] FinPfError),
}

fn schema<T>(msg: impl Into<String>) -> Result<T, JsonError> {
    Err(JsonError::Schema(msg.into()))
}

pub fn parse(text: &str) -> Result<Value, JsonError> {
    Ok(serde_json::from_str(text)?)
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, JsonError> {
    v.get(key)
        .ok_or_else(|| JsonError::Schema(format!("missing field `{key}`")))
}

pub fn carrier_from_json(v: &Value) -> Result<PartialFinitenessMonoid, JsonError> {
    match v {
        Value::String(s) => {
            let c = CatalogCarrier::parse(s).ok_or_else(|| JsonError::Schema(format!("unknown carrier `{s}`")))?;
            Ok(PartialFinitenessMonoid::catalog(c)?)
        }
        Value::Object(o) => {
            if let Some(n) = o.get("trunc") {
                let n = n.as_u64().ok_or_else(|| JsonError::Schema("`trunc` must be a natural number".into()))?;
                return Ok(PartialFinitenessMonoid::catalog(CatalogCarrier::Truncated(n))?);
            }
            if let Some(a) = o.get("words") {
                let a = a.as_str().ok_or_else(|| JsonError::Schema("`words` must be a string alphabet".into()))?;
                return Ok(PartialFinitenessMonoid::catalog(CatalogCarrier::FreeWords(a.chars().collect()))?);
            }
            if let Some(p) = o.get("pomonoid") {
                let p: FinitePomonoid = serde_json::from_value(p.clone())?;
                return embed_finite_pomonoid(&p).map_err(|e| JsonError::Schema(e.to_string()));
            }
            schema("carrier object needs `trunc`, `words` or `pomonoid`")
        }
        _ => schema("carrier must be a string or an object"),
    }
}

/// A carrier given either by name (`nat`, `trunc:4`) or as a JSON object.
pub fn carrier_from_str(s: &str) -> Result<PartialFinitenessMonoid, JsonError> {
    let s = s.trim();
    if s.starts_with('{') {
        carrier_from_json(&parse(s)?)
    } else {
        carrier_from_json(&Value::String(s.to_string()))
    }
}

pub fn ring_from_json(v: &Value) -> Result<AnyRing, JsonError> {
    match v {
        Value::String(s) => Ok(AnyRing::parse(s)?),
        Value::Object(o) if o.contains_key("mod") => {
            let n = o["mod"].as_u64().ok_or_else(|| JsonError::Schema("`mod` must be a natural number".into()))?;
            Ok(AnyRing::parse(&format!("mod:{n}"))?)
        }
        _ => schema("ring must be \"int\", \"rat\", \"mod:N\" or \"mat2\""),
    }
}

pub fn element_from_json(monoid: &PartialFinitenessMonoid, v: &Value) -> Result<MonoidElement, JsonError> {
    match v {
        Value::Number(n) => Ok(monoid.parse_element(&n.to_string())?),
        Value::String(s) => Ok(monoid.parse_element(s)?),
        _ => schema(format!("element must be a number or a string, got {v}")),
    }
}

pub fn element_to_json(monoid: &PartialFinitenessMonoid, m: &MonoidElement) -> Value {
    match m {
        MonoidElement::Nat(v) | MonoidElement::PosNat(v) | MonoidElement::Bounded(v) => json!(v),
        MonoidElement::Int(v) => json!(v),
        MonoidElement::Rat(r) if r.is_integer() => json!(r.numer()),
        MonoidElement::Rat(r) => json!(r.to_string()),
        MonoidElement::Word(w) => json!(w),
        MonoidElement::Index(_) => json!(monoid.term_label(m).unwrap_or_else(|| m.to_string())),
    }
}

fn i64_field(v: &Value, key: &str) -> Result<i64, JsonError> {
    field(v, key)?
        .as_i64()
        .ok_or_else(|| JsonError::Schema(format!("`{key}` must be an integer")))
}

pub fn descriptor_from_json(monoid: &PartialFinitenessMonoid, v: &Value) -> Result<SupportDescriptor, JsonError> {
    let o = v
        .as_object()
        .filter(|o| o.len() == 1)
        .ok_or_else(|| JsonError::Schema("descriptor must be an object with a single key".into()))?;
    let (key, body) = o.iter().next().expect("one entry");
    match key.as_str() {
        "finite" => {
            let items = body
                .as_array()
                .ok_or_else(|| JsonError::Schema("`finite` must be an array".into()))?;
            let elems = items
                .iter()
                .map(|e| element_from_json(monoid, e))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(SupportDescriptor::finite(elems))
        }
        "all" if body == &Value::Bool(true) => Ok(SupportDescriptor::All),
        "gridtail" => {
            let n = i64_field(body, "n")?;
            if n < 1 {
                return schema("`gridtail.n` must be positive");
            }
            Ok(SupportDescriptor::GridTail {
                a: i64_field(body, "a")?,
                n: n as u64,
            })
        }
        "tailge" => Ok(SupportDescriptor::TailGe {
            a: i64_field(body, "a")?,
        }),
        _ => schema(format!("unknown descriptor `{key}`")),
    }
}

pub fn descriptor_to_json(monoid: &PartialFinitenessMonoid, d: &SupportDescriptor) -> Value {
    match d {
        SupportDescriptor::Finite(s) => json!({"finite": s.iter().map(|m| element_to_json(monoid, m)).collect::<Vec<_>>()}),
        SupportDescriptor::All => json!({"all": true}),
        SupportDescriptor::GridTail { a, n } => json!({"gridtail": {"a": a, "n": n}}),
        SupportDescriptor::TailGe { a } => json!({"tailge": {"a": a}}),
    }
}

fn bigint_from_json(v: &Value) -> Result<BigInt, JsonError> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string().parse().expect("integer literal")),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| JsonError::Schema(format!("`{s}` is not an integer"))),
        _ => schema(format!("expected an integer, got {v}")),
    }
}

pub fn coeff_from_json(ring: &AnyRing, v: &Value) -> Result<Coeff, JsonError> {
    match v {
        Value::String(s) => Ok(parse_coeff_literal(ring, s)?),
        Value::Number(_) => Ok(ring.coerce(Coeff::Int(bigint_from_json(v)?))?),
        Value::Object(o) => {
            let (Some(m), Some(val)) = (o.get("mod"), o.get("val")) else {
                return schema("residue must look like {\"mod\": n, \"val\": v}");
            };
            let m = bigint_from_json(m)?;
            match ring {
                AnyRing::IntegersMod(r) if *r.modulus() == m => Ok(ring.coerce(Coeff::Mod(bigint_from_json(val)?))?),
                _ => Err(RingError::WrongRing {
                    value: format!("residue mod {m}"),
                    ring: ring.name(),
                }
                .into()),
            }
        }
        Value::Array(a) if a.len() == 4 => {
            let entries: Vec<BigInt> = a.iter().map(bigint_from_json).collect::<Result<_, _>>()?;
            let entries: [BigInt; 4] = entries.try_into().expect("four entries");
            Ok(ring.coerce(Coeff::Mat(Mat2(entries)))?)
        }
        _ => schema(format!("unsupported coefficient literal {v}")),
    }
}

pub fn coeff_to_json(ring: &AnyRing, c: &Coeff) -> Value {
    match c {
        Coeff::Int(v) => json!(v.to_string()),
        Coeff::Rat(r) => json!(rat_string(r)),
        Coeff::Mod(v) => match ring {
            AnyRing::IntegersMod(m) => json!({"mod": int_json(m.modulus()), "val": int_json(v)}),
            _ => json!(v.to_string()),
        },
        Coeff::Mat(m) => Value::Array(m.0.iter().map(int_json).collect()),
    }
}

/// A JSON number when it fits in `i64`, else a decimal string.
fn int_json(v: &BigInt) -> Value {
    v.to_i64().map_or_else(|| json!(v.to_string()), |x| json!(x))
}

fn rat_string(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Builds a series from `{"monoid", "ring", "terms"}` or a named builtin:
/// `{"builtin": "geometric", "monoid": .., "ring": ..}`,
/// `{"builtin": "zeta", "ring": ..}`, `{"builtin": "moebius", "ring": .., "bound": n}`.
pub fn series_from_json(v: &Value) -> Result<GenSeries<AnyRing>, JsonError> {
    let ring = ring_from_json(field(v, "ring")?)?;
    if let Some(name) = v.get("builtin") {
        return match name.as_str() {
            Some("zeta") => Ok(builtins::zeta(ring)),
            Some("moebius") => {
                let bound = field(v, "bound")?
                    .as_u64()
                    .ok_or_else(|| JsonError::Schema("`bound` must be a natural number".into()))?;
                Ok(builtins::moebius(ring, bound)?)
            }
            Some("geometric") => Ok(builtins::geometric(carrier_from_json(field(v, "monoid")?)?, ring)?),
            _ => schema(format!("unknown builtin {name}")),
        };
    }
    let monoid = carrier_from_json(field(v, "monoid")?)?;
    let terms = field(v, "terms")?
        .as_array()
        .ok_or_else(|| JsonError::Schema("`terms` must be an array".into()))?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        match t.as_array().map(Vec::as_slice) {
            Some([m, c]) => out.push((element_from_json(&monoid, m)?, coeff_from_json(&ring, c)?)),
            _ => return schema(format!("term must be [element, coefficient], got {t}")),
        }
    }
    Ok(GenSeries::from_terms(monoid, ring, out)?)
}

/// `{"monoid", "ring", "window", "terms"}` with terms in canonical order.
pub fn series_to_json(s: &GenSeries<AnyRing>, w: &Window) -> Value {
    let terms: Vec<Value> = s
        .terms(w)
        .iter()
        .map(|(m, c)| json!([element_to_json(s.monoid(), m), coeff_to_json(s.ring(), c)]))
        .collect();
    let mut win = Map::new();
    if let Some(lo) = w.min {
        win.insert("min".into(), json!(lo));
    }
    win.insert("max".into(), json!(w.max));
    json!({
        "monoid": s.monoid().name(),
        "ring": s.ring().name(),
        "window": win,
        "terms": terms,
    })
}

fn labels_of(v: &Value, what: &str) -> Result<Vec<String>, JsonError> {
    v.as_array()
        .ok_or_else(|| JsonError::Schema(format!("`{what}` must be an array of labels")))?
        .iter()
        .map(|l| match l {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => schema(format!("label must be a string, got {l}")),
        })
        .collect()
}

/// `{"carrier": [...], "family": [[...], ...]}`. Without `family` the full
/// powerset is used.
pub fn set_system_from_json(v: &Value) -> Result<SetSystem, JsonError> {
    let carrier = labels_of(field(v, "carrier")?, "carrier")?;
    let Some(family) = v.get("family") else {
        return Ok(SetSystem::powerset(carrier)?);
    };
    let family = family
        .as_array()
        .ok_or_else(|| JsonError::Schema("`family` must be an array of subsets".into()))?;
    let mut subsets = Vec::with_capacity(family.len());
    for u in family {
        let mut s = Subset::EMPTY;
        for l in labels_of(u, "family")? {
            let i = carrier
                .iter()
                .position(|c| *c == l)
                .ok_or_else(|| JsonError::Schema(format!("`{l}` is not in the carrier")))?;
            s.insert(i);
        }
        subsets.push(s);
    }
    Ok(SetSystem::new(carrier, subsets)?)
}

pub fn space_from_json(v: &Value) -> Result<FinSpace, JsonError> {
    Ok(FinSpace::new(labels_of(field(v, "carrier")?, "carrier")?))
}

/// `{"graph": {x: y, ...}}`; points absent from the graph are undefined.
pub fn partial_fn_from_json(v: &Value, src: &[String], dst: &[String]) -> Result<PartialFn, JsonError> {
    let graph = field(v, "graph")?
        .as_object()
        .ok_or_else(|| JsonError::Schema("`graph` must be an object".into()))?;
    let mut out = vec![None; src.len()];
    for (x, y) in graph {
        let i = src
            .iter()
            .position(|c| c == x)
            .ok_or_else(|| JsonError::Schema(format!("`{x}` is not in the source carrier")))?;
        let y = match y {
            Value::String(s) => s.clone(),
            Value::Number(n) => n.to_string(),
            _ => return schema(format!("graph value must be a label, got {y}")),
        };
        let j = dst
            .iter()
            .position(|c| *c == y)
            .ok_or_else(|| JsonError::Schema(format!("`{y}` is not in the target carrier")))?;
        out[i] = Some(j);
    }
    Ok(PartialFn::new(out, dst.len())?)
}
