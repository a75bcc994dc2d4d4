//! The JSON interchange format.
//!
//! ```text
//! { "ring": { "num_vars": N, "coeff": "QQ" | "ZZ" | {"Fp": p} },
//!   "lo": int, "hi": int,
//!   "ranks": { "<degree>": int, ... },
//!   "differentials": { "<degree>": [[ "<poly>", ... ], ...rows...] } }
//! ```
//!
//! Saving writes sorted keys, pretty-printed, with a trailing newline, so
//! equal complexes give byte-identical files.

use std::path::Path;

use serde_json::{json, Map, Value};

use super::{FreeComplex, GroupPresentation};
use crate::error::{Error, Result};
use crate::polymat::PolyMatrix;
use crate::ring::{CoefficientDomain, LaurentRing, Polynomial};

pub(crate) fn coeff_to_json(c: CoefficientDomain) -> Value {
    match c {
        CoefficientDomain::Rational => json!("QQ"),
        CoefficientDomain::Integer => json!("ZZ"),
        CoefficientDomain::Prime(p) => json!({ "Fp": p.get() }),
    }
}

fn coeff_from_json(v: &Value) -> Result<CoefficientDomain> {
    let ptr = "/ring/coeff";
    match v {
        Value::String(s) if s == "QQ" => Ok(CoefficientDomain::Rational),
        Value::String(s) if s == "ZZ" => Ok(CoefficientDomain::Integer),
        Value::Object(m) if m.len() == 1 && m.contains_key("Fp") => {
            let p = m["Fp"]
                .as_u64()
                .ok_or_else(|| Error::schema(format!("{ptr}/Fp"), "expected a prime"))?;
            CoefficientDomain::prime(p)
                .map_err(|e| Error::schema(format!("{ptr}/Fp"), e.to_string()))
        }
        _ => Err(Error::schema(ptr, "expected \"QQ\", \"ZZ\" or {\"Fp\": p}")),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, ptr: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::schema(format!("{ptr}/{key}"), "missing"))
}

fn int(v: &Value, ptr: &str) -> Result<i64> {
    v.as_i64()
        .ok_or_else(|| Error::schema(ptr, "expected an integer"))
}

fn object<'a>(v: &'a Value, ptr: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::schema(ptr, "expected an object"))
}

fn degree_key(key: &str, ptr: &str) -> Result<i64> {
    key.parse()
        .map_err(|_| Error::schema(format!("{ptr}/{key}"), "keys must be integer degrees"))
}

impl FreeComplex {
    pub fn to_json(&self) -> Value {
        let ranks: Map<String, Value> = self
            .degrees()
            .map(|i| (i.to_string(), json!(self.rank(i))))
            .collect();
        let differentials: Map<String, Value> = self
            .differentials()
            .iter()
            .enumerate()
            .map(|(k, d)| {
                let rows: Vec<Value> = (0..d.rows())
                    .map(|r| Value::Array(d.row(r).iter().map(|e| json!(e.to_string())).collect()))
                    .collect();
                ((self.lo() + k as i64).to_string(), Value::Array(rows))
            })
            .collect();
        json!({
            "ring": { "num_vars": self.ring().num_vars(), "coeff": coeff_to_json(self.ring().coeff()) },
            "lo": self.lo(),
            "hi": self.hi(),
            "ranks": ranks,
            "differentials": differentials,
        })
    }

    /// Canonical text form.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).unwrap();
        s.push('\n');
        s
    }

    pub fn from_json(v: &Value) -> Result<FreeComplex> {
        let top = object(v, "")?;
        let ring_obj = object(field(top, "ring", "")?, "/ring")?;
        let n = int(field(ring_obj, "num_vars", "/ring")?, "/ring/num_vars")?;
        if n < 1 {
            return Err(Error::schema("/ring/num_vars", "must be at least 1"));
        }
        let coeff = coeff_from_json(field(ring_obj, "coeff", "/ring")?)?;
        let ring = LaurentRing::new(n as usize, coeff)?;
        let lo = int(field(top, "lo", "")?, "/lo")?;
        let hi = int(field(top, "hi", "")?, "/hi")?;
        if hi < lo {
            return Err(Error::schema(
                "/hi",
                format!("hi = {hi} is below lo = {lo}"),
            ));
        }
        if hi - lo > 10_000 {
            return Err(Error::schema("/hi", "degree span too large"));
        }

        let ranks_obj = object(field(top, "ranks", "")?, "/ranks")?;
        let mut ranks = vec![None; (hi - lo + 1) as usize];
        for (key, val) in ranks_obj {
            let i = degree_key(key, "/ranks")?;
            let ptr = format!("/ranks/{key}");
            if i < lo || i > hi {
                return Err(Error::schema(
                    ptr,
                    format!("degree {i} outside [{lo}, {hi}]"),
                ));
            }
            let r = val
                .as_u64()
                .ok_or_else(|| Error::schema(&ptr, "expected a non-negative integer"))?;
            ranks[(i - lo) as usize] = Some(r as usize);
        }
        let ranks = ranks
            .into_iter()
            .enumerate()
            .map(|(k, r)| {
                r.ok_or_else(|| Error::schema(format!("/ranks/{}", lo + k as i64), "missing"))
            })
            .collect::<Result<Vec<usize>>>()?;

        let diff_obj = match top.get("differentials") {
            Some(v) => object(v, "/differentials")?.clone(),
            None => Map::new(),
        };
        let mut differentials: Vec<Option<PolyMatrix>> = vec![None; ranks.len() - 1];
        for (key, val) in &diff_obj {
            let i = degree_key(key, "/differentials")?;
            let ptr = format!("/differentials/{key}");
            if i < lo || i >= hi {
                return Err(Error::schema(
                    ptr,
                    format!("differential degree {i} outside [{lo}, {hi})"),
                ));
            }
            let (rows, cols) = (ranks[(i - lo + 1) as usize], ranks[(i - lo) as usize]);
            differentials[(i - lo) as usize] =
                Some(matrix_from_json(val, ring, i, rows, cols, &ptr)?);
        }
        let differentials = differentials
            .into_iter()
            .enumerate()
            .map(|(k, d)| {
                let (rows, cols) = (ranks[k + 1], ranks[k]);
                match d {
                    Some(d) => Ok(d),
                    None if rows == 0 || cols == 0 => Ok(PolyMatrix::zeros(ring, rows, cols)),
                    None => Err(Error::schema(
                        format!("/differentials/{}", lo + k as i64),
                        format!("missing {rows} x {cols} differential"),
                    )),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        FreeComplex::new(ring, lo, ranks, differentials)
    }

    pub fn from_json_str(text: &str) -> Result<FreeComplex> {
        FreeComplex::from_json(&serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<FreeComplex> {
        FreeComplex::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json_string())?;
        Ok(())
    }
}

fn matrix_from_json(
    v: &Value,
    ring: LaurentRing,
    degree: i64,
    rows: usize,
    cols: usize,
    ptr: &str,
) -> Result<PolyMatrix> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::schema(ptr, "expected an array of rows"))?;
    if arr.len() != rows {
        return Err(Error::ShapeMismatch {
            degree,
            message: format!("{} rows, rank of the target is {rows}", arr.len()),
        });
    }
    let mut parsed = Vec::with_capacity(rows);
    for (r, row) in arr.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| {
            Error::schema(format!("{ptr}/{r}"), "expected an array of polynomials")
        })?;
        if row.len() != cols {
            return Err(Error::ShapeMismatch {
                degree,
                message: format!(
                    "row {r} has {} entries, rank of the source is {cols}",
                    row.len()
                ),
            });
        }
        let entries = row
            .iter()
            .enumerate()
            .map(|(c, e)| {
                let s = e.as_str().ok_or_else(|| {
                    Error::schema(format!("{ptr}/{r}/{c}"), "expected a polynomial string")
                })?;
                Polynomial::parse(ring, s).map_err(|err| match err {
                    Error::NegativeExponent(_) => err,
                    other => Error::schema(format!("{ptr}/{r}/{c}"), other.to_string()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        parsed.push(entries);
    }
    PolyMatrix::from_rows(ring, cols, parsed)
}

impl GroupPresentation {
    /// `{"generators": g, "relators": ["abAB", [1, 2, -1, -2], ...]}`;
    /// relators are letter words or arrays of signed generator indices.
    pub fn from_json(v: &Value) -> Result<GroupPresentation> {
        let top = object(v, "")?;
        let g = field(top, "generators", "")?
            .as_u64()
            .ok_or_else(|| Error::schema("/generators", "expected a positive integer"))?;
        let mut relators = Vec::new();
        if let Some(rels) = top.get("relators") {
            let rels = rels
                .as_array()
                .ok_or_else(|| Error::schema("/relators", "expected an array"))?;
            for (k, r) in rels.iter().enumerate() {
                let ptr = format!("/relators/{k}");
                let word = match r {
                    Value::String(s) => GroupPresentation::parse_word(s)?,
                    Value::Array(xs) => xs
                        .iter()
                        .map(|x| {
                            x.as_i64()
                                .and_then(|x| i32::try_from(x).ok())
                                .ok_or_else(|| {
                                    Error::schema(&ptr, "expected signed generator indices")
                                })
                        })
                        .collect::<Result<Vec<i32>>>()?,
                    _ => return Err(Error::schema(ptr, "expected a word or an array")),
                };
                relators.push(word);
            }
        }
        GroupPresentation::new(g as usize, relators)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<GroupPresentation> {
        GroupPresentation::from_json(&serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}
