//! Independent certificate checking: only ring and matrix arithmetic.

use diagdecomp::json::{ring_of, CertificateDoc, JsonElem};
use diagdecomp::{with_ring, DivisionRing, Error, Matrix, RingTag};
use serde_json::{json, Value};

use crate::Failure;

fn reconstruct<R: DivisionRing>(p: &Matrix<R>, diag: &[R], n: usize) -> Result<Matrix<R>, String> {
    if p.rows() != n || p.cols() != n || diag.len() != n {
        return Err("part has the wrong size".into());
    }
    let inv = p.inverse().map_err(|_| "conjugator is singular".to_string())?;
    Ok(&(p * &Matrix::diag(diag)) * &inv)
}

fn check<R: JsonElem>(v: &Value) -> Result<Value, Failure> {
    let doc = CertificateDoc::<R>::from_json(v)?;
    let n = doc.target.rows();
    if doc.target.cols() != n {
        return Err(Error::ShapeMismatch("target must be square".into()).into());
    }
    let fail = |msg: String| json!({"ok": false, "mode": doc.mode, "parts": doc.parts.len(), "failure": msg});
    let mut mats = Vec::new();
    for (i, (p, d)) in doc.parts.iter().enumerate() {
        match reconstruct(p, d, n) {
            Ok(m) => mats.push(m),
            Err(e) => return Ok(fail(format!("part {i}: {e}"))),
        }
    }
    let k_of = |i: usize| -> u32 {
        match (&doc.ks, doc.k) {
            (Some(ks), _) => ks.get(i).copied().unwrap_or(1),
            (None, Some(k)) => k,
            _ => 1,
        }
    };
    let sum_like = matches!(doc.mode.as_str(), "sum" | "waring-sum" | "lincomb");
    let product_like = matches!(doc.mode.as_str(), "product" | "waring-product" | "squares");
    if !sum_like && !product_like {
        return Err(Failure::usage(format!("unknown certificate mode {:?}", doc.mode)));
    }
    let waring = !matches!(doc.mode.as_str(), "sum" | "product");
    if doc.mode == "squares" && mats.len() != 2 {
        return Ok(fail("squares needs two factors".into()));
    }
    let mut acc = if sum_like { Matrix::zeros(n, n) } else { Matrix::identity(n) };
    for (i, m) in mats.iter().enumerate() {
        let k = if doc.mode == "squares" { 2 } else if waring { k_of(i) } else { 1 };
        let mut term = m.pow(k);
        if doc.mode == "lincomb" {
            let c = doc.coeffs.as_ref().and_then(|c| c.get(i)).cloned().unwrap_or_else(R::one);
            term = term.scale_left(&c);
        }
        acc = if sum_like { &acc + &term } else { &acc * &term };
    }
    let residual = (&acc - &doc.target).frobenius();
    let ok = if R::TAG.is_exact() {
        acc == doc.target
    } else {
        residual <= 1e-8 * (1.0 + doc.target.frobenius())
    };
    Ok(json!({
        "ok": ok,
        "mode": doc.mode,
        "parts": mats.len(),
        "residual": residual,
    }))
}

pub fn verify_document(v: &Value) -> Result<Value, Failure> {
    let target = v
        .get("target")
        .ok_or_else(|| Failure::from(Error::Parse("missing \"target\"".into())))?;
    let tag: RingTag = ring_of(target)?;
    with_ring!(tag, R => check::<R>(v))
}
