//! JSON encodings of elements, matrices and certificates.

use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::matrix::{Decomposition, Matrix};
use crate::ring::{Asq, DivisionRing, Fp, Gf4, Poly2, Quaternion, RatFunc, RingTag, Q};
use crate::waring::WaringWitness;

fn bad(what: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {what}, found {v}"))
}

/// Elements with a JSON text form.
pub trait JsonElem: DivisionRing {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl JsonElem for Q {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => Q::from_str(s.trim()).map_err(|_| bad("a rational \"p/q\"", v)),
            Value::Number(n) if n.is_i64() => Ok(Q::from_integer(n.as_i64().unwrap().into())),
            _ => Err(bad("a rational \"p/q\"", v)),
        }
    }
}

fn four(v: &Value) -> Result<&Vec<Value>> {
    match v {
        Value::Array(a) if a.len() == 4 => Ok(a),
        _ => Err(bad("a four-element array", v)),
    }
}

impl JsonElem for Quaternion<Q> {
    fn to_json(&self) -> Value {
        json!([self.re.to_json(), self.i.to_json(), self.j.to_json(), self.k.to_json()])
    }

    fn from_json(v: &Value) -> Result<Self> {
        let a = four(v)?;
        Ok(Quaternion::new(
            Q::from_json(&a[0])?,
            Q::from_json(&a[1])?,
            Q::from_json(&a[2])?,
            Q::from_json(&a[3])?,
        ))
    }
}

impl JsonElem for Quaternion<f64> {
    fn to_json(&self) -> Value {
        json!([self.re, self.i, self.j, self.k])
    }

    fn from_json(v: &Value) -> Result<Self> {
        let a = four(v)?;
        let c = |x: &Value| x.as_f64().filter(|f| f.is_finite()).ok_or_else(|| bad("a finite number", x));
        Ok(Quaternion::new(c(&a[0])?, c(&a[1])?, c(&a[2])?, c(&a[3])?))
    }
}

fn small_int(v: &Value, q: u64) -> Result<u64> {
    v.as_u64()
        .filter(|&x| x < q)
        .ok_or_else(|| bad(&format!("an integer in 0..{q}"), v))
}

impl<const P: u8> JsonElem for Fp<P> {
    fn to_json(&self) -> Value {
        json!(self.value())
    }

    fn from_json(v: &Value) -> Result<Self> {
        Ok(Fp::new(small_int(v, P as u64)? as i64))
    }
}

impl JsonElem for Gf4 {
    fn to_json(&self) -> Value {
        json!(self.value())
    }

    fn from_json(v: &Value) -> Result<Self> {
        Ok(Gf4::new(small_int(v, 4)? as u8))
    }
}

fn bits_from(v: &Value) -> Result<Poly2> {
    let arr = v.as_array().ok_or_else(|| bad("a bit list", v))?;
    let bits = arr
        .iter()
        .map(|b| small_int(b, 2).map(|x| x as u8))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly2::from_bits(&bits))
}

fn ratfunc_to(r: &RatFunc) -> Value {
    json!({"num": r.num().to_bits(), "den": r.den().to_bits()})
}

fn ratfunc_from(v: &Value) -> Result<RatFunc> {
    let num = bits_from(v.get("num").ok_or_else(|| bad("{\"num\", \"den\"}", v))?)?;
    let den = bits_from(v.get("den").ok_or_else(|| bad("{\"num\", \"den\"}", v))?)?;
    if num_traits::Zero::is_zero(&den) {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(RatFunc::new(num, den))
}

impl JsonElem for Asq {
    fn to_json(&self) -> Value {
        json!([
            ratfunc_to(&self.c1),
            ratfunc_to(&self.cu),
            ratfunc_to(&self.cv),
            ratfunc_to(&self.cuv)
        ])
    }

    fn from_json(v: &Value) -> Result<Self> {
        let a = four(v)?;
        Ok(Asq::new(
            ratfunc_from(&a[0])?,
            ratfunc_from(&a[1])?,
            ratfunc_from(&a[2])?,
            ratfunc_from(&a[3])?,
        ))
    }
}

pub fn matrix_to_json<R: JsonElem>(m: &Matrix<R>) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| m.get(i, j).to_json()).collect()))
        .collect();
    json!({"ring": R::TAG.name(), "rows": m.rows(), "cols": m.cols(), "entries": entries})
}

/// The ring tag recorded in a matrix document.
pub fn ring_of(v: &Value) -> Result<RingTag> {
    let s = v
        .get("ring")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("missing \"ring\"".into()))?;
    RingTag::parse(s).ok_or_else(|| Error::Parse(format!("unknown ring {s:?}")))
}

fn dim(v: &Value, key: &str) -> Result<usize> {
    v.get(key)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| Error::Parse(format!("missing or invalid {key:?}")))
}

pub fn matrix_from_json<R: JsonElem>(v: &Value) -> Result<Matrix<R>> {
    let tag = ring_of(v)?;
    if tag != R::TAG {
        return Err(Error::RingMismatch {
            expected: R::TAG,
            found: tag,
        });
    }
    let (rows, cols) = (dim(v, "rows")?, dim(v, "cols")?);
    let entries = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"entries\"".into()))?;
    if entries.len() != rows {
        return Err(Error::Parse(format!("expected {rows} rows, found {}", entries.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for row in entries {
        let row = row.as_array().ok_or_else(|| bad("a row array", row))?;
        if row.len() != cols {
            return Err(Error::Parse(format!("expected {cols} columns, found {}", row.len())));
        }
        for x in row {
            data.push(R::from_json(x)?);
        }
    }
    Matrix::new(rows, cols, data)
}

/// A certificate or Waring witness as stored on disk.
#[derive(Clone, Debug, PartialEq)]
pub struct CertificateDoc<R> {
    pub mode: String,
    pub target: Matrix<R>,
    /// Conjugator and diagonal of every part.
    pub parts: Vec<(Matrix<R>, Vec<R>)>,
    pub k: Option<u32>,
    pub ks: Option<Vec<u32>>,
    pub coeffs: Option<Vec<R>>,
}

impl<R: JsonElem> CertificateDoc<R> {
    pub fn from_decomposition(d: &Decomposition<R>) -> Self {
        CertificateDoc {
            mode: d.mode.name().into(),
            target: d.target.clone(),
            parts: d.parts.iter().map(|c| (c.p.clone(), c.diag.clone())).collect(),
            k: None,
            ks: None,
            coeffs: None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("mode".into(), json!(self.mode));
        m.insert("target".into(), matrix_to_json(&self.target));
        let parts: Vec<Value> = self
            .parts
            .iter()
            .map(|(p, d)| {
                json!({"P": matrix_to_json(p), "diag": d.iter().map(R::to_json).collect::<Vec<_>>()})
            })
            .collect();
        m.insert("parts".into(), Value::Array(parts));
        if let Some(k) = self.k {
            m.insert("k".into(), json!(k));
        }
        if let Some(ks) = &self.ks {
            m.insert("ks".into(), json!(ks));
        }
        if let Some(c) = &self.coeffs {
            m.insert("coeffs".into(), Value::Array(c.iter().map(R::to_json).collect()));
        }
        Value::Object(m)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let mode = v
            .get("mode")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("missing \"mode\"".into()))?
            .to_string();
        let target = matrix_from_json(v.get("target").ok_or_else(|| Error::Parse("missing \"target\"".into()))?)?;
        let parts = v
            .get("parts")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"parts\"".into()))?
            .iter()
            .map(|p| {
                let pm = matrix_from_json(p.get("P").ok_or_else(|| bad("a part with \"P\"", p))?)?;
                let diag = p
                    .get("diag")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("a part with \"diag\"", p))?
                    .iter()
                    .map(R::from_json)
                    .collect::<Result<Vec<_>>>()?;
                Ok((pm, diag))
            })
            .collect::<Result<Vec<_>>>()?;
        let uint = |x: &Value| {
            x.as_u64()
                .filter(|&k| (1..=u32::MAX as u64).contains(&k))
                .map(|k| k as u32)
                .ok_or_else(|| bad("a positive integer", x))
        };
        let k = v.get("k").map(uint).transpose()?;
        let ks = match v.get("ks") {
            None => None,
            Some(a) => Some(
                a.as_array()
                    .ok_or_else(|| bad("an exponent list", a))?
                    .iter()
                    .map(uint)
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let coeffs = match v.get("coeffs") {
            None => None,
            Some(a) => Some(
                a.as_array()
                    .ok_or_else(|| bad("a coefficient list", a))?
                    .iter()
                    .map(R::from_json)
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        Ok(CertificateDoc {
            mode,
            target,
            parts,
            k,
            ks,
            coeffs,
        })
    }
}

impl CertificateDoc<Quaternion<f64>> {
    pub fn from_witness(w: &WaringWitness) -> Self {
        let same = w.ks[0] == w.ks[1];
        CertificateDoc {
            mode: w.mode.name().into(),
            target: w.target.clone(),
            parts: w.parts.iter().map(|c| (c.p.clone(), c.diag.clone())).collect(),
            k: same.then_some(w.ks[0]),
            ks: (!same).then(|| w.ks.to_vec()),
            coeffs: (w.mode == crate::waring::WaringMode::Lincomb)
                .then(|| w.coeffs.iter().map(|&c| Quaternion::scalar(c)).collect()),
        }
    }
}

/// Runs `$body` with `$R` bound to the scalar type named by a [`RingTag`].
#[macro_export]
macro_rules! with_ring {
    ($tag:expr, $R:ident => $body:expr) => {
        match $tag {
            $crate::RingTag::Qq => {
                type $R = $crate::Qq;
                $body
            }
            $crate::RingTag::Hq => {
                type $R = $crate::Hq;
                $body
            }
            $crate::RingTag::Hf => {
                type $R = $crate::Hf;
                $body
            }
            $crate::RingTag::Gf2 => {
                type $R = $crate::Gf2;
                $body
            }
            $crate::RingTag::Gf3 => {
                type $R = $crate::Gf3;
                $body
            }
            $crate::RingTag::Gf4 => {
                type $R = $crate::Gf4;
                $body
            }
            $crate::RingTag::Asq => {
                type $R = $crate::Asq;
                $body
            }
        }
    };
}
