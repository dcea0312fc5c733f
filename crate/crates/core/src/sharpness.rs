//! Exhaustive width tables over GF(2), GF(3) and GF(4).
//!
//! Matrices are packed as base-`q` integers (entry `(i, j)` is digit
//! `i·n + j`), and the set of products or sums of `k` diagonalizable
//! matrices is grown layer by layer until it stops changing.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::canonical::{diagonalize_field, is_diagonalizable_bruteforce};
use crate::error::{Error, Result};
use crate::matrix::{Decomposition, Matrix, Mode};
use crate::ring::{DivisionRing, RingTag};

/// Largest matrix space we agree to enumerate.
pub const MAX_SPACE: u64 = 1 << 24;
/// Bound on (matrices × diagonalizable generators) for a closure.
pub const MAX_WORK: u64 = 1 << 28;

const UNSEEN: u8 = u8::MAX;
const ROOT: u32 = u32::MAX;

/// `M_n(F_q)` packed into integers, with table-driven arithmetic.
#[derive(Clone, Debug)]
pub struct Space<R> {
    n: usize,
    q: usize,
    elems: Vec<R>,
    add: Vec<u8>,
    mul: Vec<u8>,
    size: u32,
}

impl<R: DivisionRing> Space<R> {
    pub fn new(n: usize) -> Result<Self> {
        if !R::TAG.is_finite() {
            return Err(Error::UnsupportedRing(R::TAG));
        }
        let elems: Vec<R> = R::central_candidates().collect();
        let q = elems.len();
        let total = (q as u64).checked_pow((n * n) as u32).unwrap_or(u64::MAX);
        if n == 0 || n > 4 || total > MAX_SPACE {
            return Err(Error::TooLarge(format!(
                "{} n={n}: {total} matrices exceeds the enumeration limit {MAX_SPACE}",
                R::TAG.name()
            )));
        }
        let index = |x: &R| elems.iter().position(|e| e == x).expect("closed") as u8;
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for i in 0..q {
            for j in 0..q {
                add[i * q + j] = index(&(elems[i].clone() + elems[j].clone()));
                mul[i * q + j] = index(&(elems[i].clone() * elems[j].clone()));
            }
        }
        Ok(Space {
            n,
            q,
            elems,
            add,
            mul,
            size: total as u32,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of matrices, `q^{n²}`.
    pub fn size(&self) -> u32 {
        self.size
    }

    fn digits(&self, mut code: u32) -> [u8; 16] {
        let mut d = [0u8; 16];
        for x in d.iter_mut().take(self.n * self.n) {
            *x = (code % self.q as u32) as u8;
            code /= self.q as u32;
        }
        d
    }

    fn pack(&self, d: &[u8; 16]) -> u32 {
        d[..self.n * self.n]
            .iter()
            .rev()
            .fold(0, |acc, &x| acc * self.q as u32 + x as u32)
    }

    pub fn encode(&self, m: &Matrix<R>) -> u32 {
        let mut d = [0u8; 16];
        for (k, x) in m.entries().iter().enumerate() {
            d[k] = self.elems.iter().position(|e| e == x).expect("closed") as u8;
        }
        self.pack(&d)
    }

    pub fn decode(&self, code: u32) -> Matrix<R> {
        let d = self.digits(code);
        Matrix::from_fn(self.n, self.n, |i, j| self.elems[d[i * self.n + j] as usize].clone())
    }

    fn combine(&self, mode: Mode, x: &[u8; 16], y: &[u8; 16]) -> u32 {
        let (n, q) = (self.n, self.q);
        let mut out = [0u8; 16];
        match mode {
            Mode::Sum => {
                for k in 0..n * n {
                    out[k] = self.add[x[k] as usize * q + y[k] as usize];
                }
            }
            Mode::Product => {
                for i in 0..n {
                    for j in 0..n {
                        let mut acc = 0u8;
                        for l in 0..n {
                            let p = self.mul[x[i * n + l] as usize * q + y[l * n + j] as usize];
                            acc = self.add[acc as usize * q + p as usize];
                        }
                        out[i * n + j] = acc;
                    }
                }
            }
        }
        self.pack(&out)
    }
}

/// Codes of all diagonalizable matrices, ascending.
fn diagonalizable_codes<R: DivisionRing>(space: &Space<R>) -> Result<Vec<u32>> {
    let flags: Vec<bool> = (0..space.size())
        .into_par_iter()
        .map(|c| is_diagonalizable_bruteforce(&space.decode(c)))
        .collect::<Result<_>>()?;
    Ok((0..space.size()).filter(|&c| flags[c as usize]).collect())
}

/// Every diagonalizable `n × n` matrix over a finite field.
pub fn enumerate_diagonalizable<R: DivisionRing>(n: usize) -> Result<Vec<Matrix<R>>> {
    let space = Space::<R>::new(n)?;
    Ok(diagonalizable_codes(&space)?
        .into_iter()
        .map(|c| space.decode(c))
        .collect())
}

/// The closure of the diagonalizable set under `+` or `·`, with parent
/// pointers recording one minimal decomposition of every reachable matrix.
#[derive(Debug)]
pub struct Closure<R> {
    space: Space<R>,
    mode: Mode,
    width: Vec<u8>,
    parent: Vec<u32>,
    last: Vec<u32>,
}

impl<R: DivisionRing> Closure<R> {
    pub fn build(n: usize, mode: Mode) -> Result<Self> {
        let space = Space::<R>::new(n)?;
        let gens = diagonalizable_codes(&space)?;
        let work = space.size() as u64 * gens.len() as u64;
        if work > MAX_WORK {
            return Err(Error::TooLarge(format!(
                "{} n={n}: {work} combinations per layer exceeds {MAX_WORK}",
                R::TAG.name()
            )));
        }
        let gen_digits: Vec<[u8; 16]> = gens.iter().map(|&g| space.digits(g)).collect();
        let total = space.size() as usize;
        let mut width = vec![UNSEEN; total];
        let mut parent = vec![ROOT; total];
        let mut last = vec![ROOT; total];
        for &g in &gens {
            width[g as usize] = 1;
            last[g as usize] = g;
        }
        let mut frontier = gens.clone();
        let mut level = 1u8;
        while !frontier.is_empty() {
            level += 1;
            // Workers expand disjoint chunks; the merge keeps frontier order
            // so the first discovery wins deterministically.
            let found: Vec<Vec<(u32, u32, u32)>> = frontier
                .par_chunks(256)
                .map(|chunk| {
                    let mut out = Vec::new();
                    for &x in chunk {
                        let xd = space.digits(x);
                        for (gi, gd) in gen_digits.iter().enumerate() {
                            let y = space.combine(mode, &xd, gd);
                            if width[y as usize] == UNSEEN {
                                out.push((y, x, gens[gi]));
                            }
                        }
                    }
                    out
                })
                .collect();
            let mut next = Vec::new();
            for (y, x, g) in found.into_iter().flatten() {
                if width[y as usize] == UNSEEN {
                    width[y as usize] = level;
                    parent[y as usize] = x;
                    last[y as usize] = g;
                    next.push(y);
                }
            }
            frontier = next;
        }
        Ok(Closure {
            space,
            mode,
            width,
            parent,
            last,
        })
    }

    pub fn space(&self) -> &Space<R> {
        &self.space
    }

    /// Minimal number of diagonalizable parts, or `None` when unreachable.
    pub fn width_of(&self, m: &Matrix<R>) -> Option<usize> {
        self.width_code(self.space.encode(m))
    }

    fn width_code(&self, c: u32) -> Option<usize> {
        match self.width[c as usize] {
            UNSEEN => None,
            w => Some(w as usize),
        }
    }

    /// Diagonalizable parts of a minimal decomposition, in order.
    pub fn parts_of(&self, m: &Matrix<R>) -> Option<Vec<Matrix<R>>> {
        let mut c = self.space.encode(m);
        self.width_code(c)?;
        let mut out = Vec::new();
        loop {
            out.push(self.space.decode(self.last[c as usize]));
            match self.parent[c as usize] {
                ROOT => break,
                p => c = p,
            }
        }
        out.reverse();
        Some(out)
    }

    /// A certified minimal decomposition of `m`.
    pub fn decompose(&self, m: &Matrix<R>) -> Option<Decomposition<R>> {
        let parts = self
            .parts_of(m)?
            .iter()
            .map(|p| diagonalize_field(p).ok().flatten())
            .collect::<Option<Vec<_>>>()?;
        Some(Decomposition {
            mode: self.mode,
            parts,
            target: m.clone(),
        })
    }

    pub fn table(&self) -> WidthTable<R> {
        let mut histogram = BTreeMap::new();
        let mut witnesses = BTreeMap::new();
        let mut unreachable = 0u64;
        for c in 0..self.space.size() {
            match self.width_code(c) {
                None => unreachable += 1,
                Some(w) => {
                    *histogram.entry(w).or_insert(0u64) += 1;
                    witnesses.entry(w).or_insert(c);
                }
            }
        }
        let witnesses = witnesses
            .into_iter()
            .map(|(w, c)| {
                let m = self.space.decode(c);
                let parts = self.parts_of(&m).expect("reachable");
                (w, (m, parts))
            })
            .collect();
        WidthTable {
            ring: R::TAG,
            n: self.space.n,
            mode: self.mode,
            histogram,
            unreachable,
            witnesses,
        }
    }
}

/// Shared closures, since building one is the expensive part.
pub fn cached_closure<R: DivisionRing>(n: usize, mode: Mode) -> Result<Arc<Closure<R>>> {
    type Cache = Mutex<HashMap<(RingTag, usize, Mode), Arc<dyn std::any::Any + Send + Sync>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (R::TAG, n, mode);
    if let Some(c) = cache.lock().expect("poisoned").get(&key) {
        return Ok(c.clone().downcast::<Closure<R>>().expect("keyed by ring"));
    }
    let built = Arc::new(Closure::<R>::build(n, mode)?);
    cache
        .lock()
        .expect("poisoned")
        .insert(key, built.clone() as Arc<dyn std::any::Any + Send + Sync>);
    Ok(built)
}

/// Histogram of widths over all of `M_n(F_q)`.
#[derive(Clone, Debug)]
pub struct WidthTable<R> {
    pub ring: RingTag,
    pub n: usize,
    pub mode: Mode,
    pub histogram: BTreeMap<usize, u64>,
    pub unreachable: u64,
    /// For each width, the smallest-coded matrix of that width and its parts.
    pub witnesses: BTreeMap<usize, (Matrix<R>, Vec<Matrix<R>>)>,
}

pub fn width_table<R: DivisionRing>(n: usize, mode: Mode) -> Result<WidthTable<R>> {
    Ok(cached_closure::<R>(n, mode)?.table())
}

impl<R: DivisionRing> WidthTable<R> {
    pub fn max_width(&self) -> usize {
        self.histogram.keys().copied().max().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.histogram.values().sum::<u64>() + self.unreachable
    }

    pub fn to_json(&self) -> Value {
        let space = Space::<R>::new(self.n).expect("table exists");
        let digits = |m: &Matrix<R>| -> Vec<Vec<u8>> {
            let d = space.digits(space.encode(m));
            (0..self.n)
                .map(|i| d[i * self.n..(i + 1) * self.n].to_vec())
                .collect()
        };
        let witnesses: serde_json::Map<String, Value> = self
            .witnesses
            .iter()
            .map(|(w, (m, parts))| {
                let ps: Vec<_> = parts.iter().map(&digits).collect();
                (w.to_string(), json!({"matrix": digits(m), "parts": ps}))
            })
            .collect();
        let histogram: serde_json::Map<String, Value> = self
            .histogram
            .iter()
            .map(|(w, c)| (w.to_string(), json!(c)))
            .collect();
        json!({
            "ring": self.ring.name(),
            "n": self.n,
            "mode": self.mode.name(),
            "histogram": histogram,
            "witnesses": witnesses,
            "unreachable": self.unreachable,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("ring,n,mode,width,count\n");
        for (w, c) in &self.histogram {
            s += &format!("{},{},{},{w},{c}\n", self.ring.name(), self.n, self.mode.name());
        }
        s += &format!(
            "{},{},{},unreachable,{}\n",
            self.ring.name(),
            self.n,
            self.mode.name(),
            self.unreachable
        );
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::is_diagonalizable_search;
    use crate::ring::{Fp, Gf4};

    type F2 = Fp<2>;
    type F3 = Fp<3>;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_diagonalizable::<F2>(1).unwrap().len(), 2);
        assert_eq!(enumerate_diagonalizable::<F2>(2).unwrap().len(), 8);
        assert_eq!(enumerate_diagonalizable::<F3>(1).unwrap().len(), 3);
        for m in enumerate_diagonalizable::<F3>(2).unwrap() {
            assert!(is_diagonalizable_search(&m).unwrap());
        }
    }

    #[test]
    fn codes_roundtrip() {
        let s = Space::<Gf4>::new(2).unwrap();
        for c in 0..s.size() {
            assert_eq!(s.encode(&s.decode(c)), c);
        }
        let s3 = Space::<F3>::new(2).unwrap();
        let a = s3.decode(77);
        let b = s3.decode(41);
        let p = s3.combine(Mode::Product, &s3.digits(77), &s3.digits(41));
        assert_eq!(s3.decode(p), &a * &b);
    }

    #[test]
    fn gf2_sum_n2() {
        let t = width_table::<F2>(2, Mode::Sum).unwrap();
        assert_eq!(t.max_width(), 3);
        assert_eq!(t.total(), 16);
        let c = cached_closure::<F2>(2, Mode::Sum).unwrap();
        assert_eq!(c.width_of(&Matrix::from_i64(&[&[1, 1], &[1, 0]])), Some(3));
        let d = c.decompose(&Matrix::from_i64(&[&[1, 1], &[1, 0]])).unwrap();
        assert!(d.verify().ok);
    }

    #[test]
    fn gf2_product_nonsingular_is_identity() {
        let c = cached_closure::<F2>(2, Mode::Product).unwrap();
        for code in 0..c.space().size() {
            let m = c.space().decode(code);
            if m.is_invertible() && c.width_code(code).is_some() {
                assert!(m.is_identity());
            }
        }
    }

    #[test]
    fn gf3_product_sharp() {
        let t = width_table::<F3>(2, Mode::Product).unwrap();
        assert_eq!(t.max_width(), 3);
        assert_eq!(t.unreachable, 0);
        let (m, parts) = &t.witnesses[&3];
        assert_eq!(parts.len(), 3);
        assert_eq!(&(&parts[0] * &parts[1]) * &parts[2], *m);
    }

    #[test]
    fn too_large() {
        assert!(matches!(Space::<F3>::new(4), Err(Error::TooLarge(_))));
        assert!(matches!(Space::<crate::ring::Q>::new(2), Err(Error::UnsupportedRing(_))));
    }

    #[test]
    fn json_and_csv() {
        let t = width_table::<F2>(1, Mode::Sum).unwrap();
        let v = t.to_json();
        assert_eq!(v["histogram"]["1"], 2);
        assert!(t.to_csv().contains("gf2,1,sum,1,2"));
    }
}
