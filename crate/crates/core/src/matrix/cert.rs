use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::DivisionRing;

use super::Matrix;

/// `P·A·P⁻¹`.
pub fn conjugate<R: DivisionRing>(p: &Matrix<R>, a: &Matrix<R>) -> Result<Matrix<R>> {
    let pi = p.inverse()?;
    Ok(&(p.try_mul(a)?) * &pi)
}

/// A claim that `target = P·diag(d)·P⁻¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagCertificate<R> {
    pub p: Matrix<R>,
    pub diag: Vec<R>,
    pub target: Matrix<R>,
}

impl<R: DivisionRing> DiagCertificate<R> {
    /// Builds the certificate and computes its target.
    pub fn new(p: Matrix<R>, diag: Vec<R>) -> Result<Self> {
        if !p.is_square() || p.rows() != diag.len() {
            return Err(Error::ShapeMismatch(format!(
                "conjugator {}x{} with {} diagonal entries",
                p.rows(),
                p.cols(),
                diag.len()
            )));
        }
        let target = conjugate(&p, &Matrix::diag(&diag))?;
        Ok(DiagCertificate { p, diag, target })
    }

    /// A diagonal matrix certifies itself.
    pub fn of_diagonal(d: &Matrix<R>) -> Self {
        debug_assert!(d.is_diagonal());
        DiagCertificate {
            p: Matrix::identity(d.rows()),
            diag: d.diagonal(),
            target: d.clone(),
        }
    }

    pub fn zero(n: usize) -> Self {
        Self::of_diagonal(&Matrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        Self::of_diagonal(&Matrix::identity(n))
    }

    pub fn size(&self) -> usize {
        self.diag.len()
    }

    pub fn reconstruct(&self) -> Result<Matrix<R>> {
        conjugate(&self.p, &Matrix::diag(&self.diag))
    }

    /// Residual of the reconstruction against the stored target.
    pub fn check(&self) -> Result<f64> {
        if self.p.rows() != self.diag.len() || self.target.rows() != self.diag.len() {
            return Err(Error::ShapeMismatch("certificate parts disagree".into()));
        }
        let r = self.reconstruct()?;
        let res = r.residual(&self.target).unwrap_or(f64::INFINITY);
        if res <= Matrix::tolerance(&self.target) {
            Ok(res)
        } else {
            Err(Error::NotFound(format!(
                "reconstruction differs from target (residual {res:e})"
            )))
        }
    }

    /// The certificate `(Q·P, d)` for `Q·target·Q⁻¹`.
    pub fn transport(&self, q: &Matrix<R>) -> Result<Self> {
        Ok(DiagCertificate {
            p: q.try_mul(&self.p)?,
            diag: self.diag.clone(),
            target: conjugate(q, &self.target)?,
        })
    }

    /// `(P₁ ⊕ P₂ ⊕ …, d₁ ‖ d₂ ‖ …)` certifies the block diagonal of the
    /// targets.
    pub fn block_diag(parts: &[DiagCertificate<R>]) -> Self {
        let ps: Vec<_> = parts.iter().map(|c| c.p.clone()).collect();
        let ts: Vec<_> = parts.iter().map(|c| c.target.clone()).collect();
        DiagCertificate {
            p: Matrix::block_diag(&ps),
            diag: parts.iter().flat_map(|c| c.diag.iter().cloned()).collect(),
            target: Matrix::block_diag(&ts),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Sum,
    Product,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Sum => "sum",
            Mode::Product => "product",
        }
    }
}

/// An ordered list of certified parts whose sum or product is `target`.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition<R> {
    pub mode: Mode,
    pub parts: Vec<DiagCertificate<R>>,
    pub target: Matrix<R>,
}

/// Outcome of re-checking a certificate, decomposition or witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub parts: usize,
    pub part_residuals: Vec<f64>,
    pub residual: f64,
    pub failure: Option<String>,
}

impl VerifyReport {
    pub fn fail(parts: usize, msg: impl Into<String>) -> Self {
        VerifyReport {
            ok: false,
            parts,
            part_residuals: Vec::new(),
            residual: f64::INFINITY,
            failure: Some(msg.into()),
        }
    }
}

impl<R: DivisionRing> Decomposition<R> {
    /// Combines parts with `+` or `·` in order.
    pub fn combine(mode: Mode, mats: &[Matrix<R>], n: usize) -> Result<Matrix<R>> {
        let mut acc = match mode {
            Mode::Sum => Matrix::zeros(n, n),
            Mode::Product => Matrix::identity(n),
        };
        for m in mats {
            acc = match mode {
                Mode::Sum => acc.try_add(m)?,
                Mode::Product => acc.try_mul(m)?,
            };
        }
        Ok(acc)
    }

    /// Pads with zero (sum) or identity (product) parts up to `count`.
    pub fn pad_to(mut self, count: usize) -> Self {
        let n = self.target.rows();
        while self.parts.len() < count {
            self.parts.push(match self.mode {
                Mode::Sum => DiagCertificate::zero(n),
                Mode::Product => DiagCertificate::identity(n),
            });
        }
        self
    }

    /// Transports every part by `Q`, so the result decomposes
    /// `Q·target·Q⁻¹`.
    pub fn transport(&self, q: &Matrix<R>) -> Result<Self> {
        Ok(Decomposition {
            mode: self.mode,
            parts: self
                .parts
                .iter()
                .map(|c| c.transport(q))
                .collect::<Result<_>>()?,
            target: conjugate(q, &self.target)?,
        })
    }

    /// Merges decompositions of diagonal blocks into one of their direct
    /// sum, padding shorter ones first.
    pub fn block_diag(mode: Mode, blocks: &[Decomposition<R>]) -> Self {
        let count = blocks.iter().map(|d| d.parts.len()).max().unwrap_or(0);
        let padded: Vec<_> = blocks.iter().map(|d| d.clone().pad_to(count)).collect();
        let parts = (0..count)
            .map(|i| {
                let ps: Vec<_> = padded.iter().map(|d| d.parts[i].clone()).collect();
                DiagCertificate::block_diag(&ps)
            })
            .collect();
        let ts: Vec<_> = blocks.iter().map(|d| d.target.clone()).collect();
        Decomposition {
            mode,
            parts,
            target: Matrix::block_diag(&ts),
        }
    }

    /// Recomputes everything from scratch. Never panics.
    pub fn verify(&self) -> VerifyReport {
        let n = self.target.rows();
        let mut residuals = Vec::with_capacity(self.parts.len());
        let mut recon = Vec::with_capacity(self.parts.len());
        for (i, c) in self.parts.iter().enumerate() {
            if c.size() != n || c.p.rows() != n || c.p.cols() != n {
                return VerifyReport::fail(self.parts.len(), format!("part {i}: shape mismatch"));
            }
            let r = match c.reconstruct() {
                Ok(r) => r,
                Err(e) => {
                    return VerifyReport::fail(self.parts.len(), format!("part {i}: {e}"));
                }
            };
            residuals.push(r.residual(&c.target).unwrap_or(f64::INFINITY));
            if !r.matches(&c.target) {
                return VerifyReport {
                    ok: false,
                    parts: self.parts.len(),
                    part_residuals: residuals,
                    residual: f64::INFINITY,
                    failure: Some(format!("part {i}: reconstruction differs from its target")),
                };
            }
            recon.push(r);
        }
        let total = match Self::combine(self.mode, &recon, n) {
            Ok(t) => t,
            Err(e) => return VerifyReport::fail(self.parts.len(), e.to_string()),
        };
        let residual = total.residual(&self.target).unwrap_or(f64::INFINITY);
        let ok = total.matches(&self.target);
        VerifyReport {
            ok,
            parts: self.parts.len(),
            part_residuals: residuals,
            residual,
            failure: (!ok).then(|| format!("parts do not {} to the target", self.verb())),
        }
    }

    fn verb(&self) -> &'static str {
        match self.mode {
            Mode::Sum => "sum",
            Mode::Product => "multiply",
        }
    }
}
