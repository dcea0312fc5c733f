//! One PASS/FAIL line per acceptance criterion.

use std::collections::BTreeMap;
use std::time::Instant;

use diagdecomp::canonical::Companion;
use diagdecomp::product::{product_decompose, product_two_char_ne2};
use diagdecomp::ring::{CentralPolynomial, Quaternion};
use diagdecomp::sharpness::{cached_closure, width_table};
use diagdecomp::sum::{build_gh, sum_decompose};
use diagdecomp::sylvester::{solve_sylvester, SylvesterInstance};
use diagdecomp::waring::{
    diagonal_preimage, lincomb_two, product_two_squares, tolerance, waring_two, DiagonalPolynomial,
    WaringMode, WaringWitness,
};
use diagdecomp::{
    Asq, DiagCertificate, Decomposition, DivisionRing, Gf2, Gf3, Hf, Hq, Matrix, Mode, Options,
    Qq, Strategy,
};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
/// Name, body and time budget in seconds.
type Criterion = (&'static str, fn() -> Check, f64);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn verified<R: DivisionRing>(d: &Decomposition<R>, target: &Matrix<R>) -> Result<usize, String> {
    ensure(d.target == *target, || "decomposition target differs from input".into())?;
    let rep = d.verify();
    ensure(rep.ok, || format!("verification failed: {:?}", rep.failure))?;
    // Recombine from scratch, independently of the report.
    let mats: Vec<_> = d
        .parts
        .iter()
        .map(|c| c.reconstruct().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let n = target.rows();
    let combined = Decomposition::combine(d.mode, &mats, n).map_err(|e| e.to_string())?;
    ensure(combined == *target, || "parts do not recombine exactly".into())?;
    for (c, m) in d.parts.iter().zip(&mats) {
        ensure(*m == c.target, || "part does not match its certificate".into())?;
    }
    Ok(d.parts.len())
}

fn random_invertible<R: DivisionRing>(rng: &mut ChaCha8Rng, n: usize, size: u32) -> Matrix<R> {
    loop {
        let p = Matrix::<R>::random(rng, n, n, size);
        if p.is_invertible() {
            return p;
        }
    }
}

fn random_nilpotent<R: DivisionRing>(rng: &mut ChaCha8Rng, n: usize, size: u32) -> Matrix<R> {
    let mut blocks = Vec::new();
    let mut left = n;
    while left > 0 {
        let m = rng.gen_range(1..=left);
        blocks.push(Matrix::<R>::shift(m));
        left -= m;
    }
    let j = Matrix::block_diag(&blocks);
    let p = random_invertible::<R>(rng, n, size);
    &(&p * &j) * &p.inverse().unwrap()
}

fn criterion_1() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let o = Options::default();
    for i in 0..200 {
        let n = 1 + i % 6;
        let a = Matrix::<Hq>::random(&mut rng, n, n, 4);
        let k = verified(&sum_decompose(&a, &o).map_err(|e| format!("HQ: {e}"))?, &a)?;
        ensure(k == 2, || format!("HQ n={n}: {k} parts"))?;
    }
    for i in 0..200 {
        let n = 1 + i % 3;
        let a = Matrix::<Asq>::random(&mut rng, n, n, 3);
        let k = verified(&sum_decompose(&a, &o).map_err(|e| format!("ASQ: {e}"))?, &a)?;
        ensure(k == 2, || format!("ASQ n={n}: {k} parts"))?;
    }
    Ok("400 matrices, all exactly 2 summands".into())
}

fn all_gf2(n: usize) -> impl Iterator<Item = Matrix<Gf2>> {
    (0u32..1 << (n * n)).map(move |c| Matrix::from_fn(n, n, |i, j| Gf2::new(((c >> (i * n + j)) & 1) as i64)))
}

fn criterion_2() -> Check {
    let o = Options::default();
    let mut constructive = BTreeMap::new();
    for n in [2, 3] {
        let t = width_table::<Gf2>(n, Mode::Sum).map_err(|e| e.to_string())?;
        ensure(t.unreachable == 0 && t.max_width() == 3, || format!("n={n}: table {:?}", t.histogram))?;
        for a in all_gf2(n) {
            let k = verified(&sum_decompose(&a, &o).map_err(|e| e.to_string())?, &a)?;
            ensure(k <= 3, || format!("{k} summands"))?;
            *constructive.entry(k).or_insert(0) += 1;
        }
    }
    let a2 = Matrix::<Gf2>::from_i64(&[&[1, 1], &[1, 0]]);
    let a3 = Matrix::block_diag(&[a2.clone(), Matrix::identity(1)]);
    let w2 = cached_closure::<Gf2>(2, Mode::Sum).unwrap().width_of(&a2);
    let w3 = cached_closure::<Gf2>(3, Mode::Sum).unwrap().width_of(&a3);
    ensure(w2 == Some(3) && w3 == Some(3), || format!("widths {w2:?}, {w3:?}"))?;
    Ok(format!("528 matrices width ≤ 3, named witnesses width 3, constructive part counts {constructive:?}"))
}

fn nilpotent_ring<R: DivisionRing>(rng: &mut ChaCha8Rng, size: u32, max_n: usize) -> Result<(), String> {
    let o = Options::default();
    for i in 0..100 {
        let n = 1 + i % max_n;
        let a = random_nilpotent::<R>(rng, n, size);
        let s = verified(&sum_decompose(&a, &o).map_err(|e| e.to_string())?, &a)?;
        let p = verified(&product_decompose(&a, &o).map_err(|e| e.to_string())?, &a)?;
        ensure(s == 2 && p == 2, || format!("{} n={n}: {s} summands, {p} factors", R::TAG))?;
    }
    Ok(())
}

fn criterion_3() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    nilpotent_ring::<Hq>(&mut rng, 3, 5)?;
    nilpotent_ring::<Gf3>(&mut rng, 3, 5)?;
    nilpotent_ring::<Asq>(&mut rng, 1, 3)?;
    Ok("300 nilpotent matrices: 2 summands and 2 factors each".into())
}

fn hq_corpus() -> Vec<Matrix<Hq>> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    (0..200).map(|i| Matrix::<Hq>::random(&mut rng, 1 + i % 6, 1 + i % 6, 4)).collect()
}

fn criterion_4() -> Check {
    let o = Options {
        strategy: Strategy::CharNe2,
        ..Options::default()
    };
    for a in hq_corpus() {
        let k = verified(&product_decompose(&a, &o).map_err(|e| e.to_string())?, &a)?;
        ensure(k == 2, || format!("{k} factors"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let mut unit_branch = 0;
    for i in 0..24 {
        let n = 2 + i % 5;
        let mut coeffs: Vec<Hq> = (0..n).map(|_| Hq::random(&mut rng, 3)).collect();
        coeffs[0] = if i % 2 == 0 { Hq::one() } else { -Hq::one() };
        let c = Companion::new(coeffs);
        let d = product_two_char_ne2(&c, &o).map_err(|e| e.to_string())?;
        let k = verified(&d, &c.to_matrix())?;
        // The weighted reversal has a non-unit corner.
        ensure(k == 2 && !d.parts[0].target.get(0, n - 1).is_one(), || "unit branch not taken".into())?;
        unit_branch += 1;
    }
    Ok(format!("200 random HQ targets with 2 factors; {unit_branch} companions with a₀ = ±1"))
}

fn criterion_5() -> Check {
    let o = Options {
        strategy: Strategy::CentralRich,
        ..Options::default()
    };
    let reversal = Options {
        strategy: Strategy::CharNe2,
        ..Options::default()
    };
    for a in hq_corpus() {
        let d = product_decompose(&a, &o).map_err(|e| e.to_string())?;
        let e = product_decompose(&a, &reversal).map_err(|e| e.to_string())?;
        ensure(d.target == e.target, || "strategies disagree on the target".into())?;
        let k = verified(&d, &a)?;
        ensure(k == 2, || format!("HQ: {k} factors"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..100 {
        let n = 1 + i % 3;
        let a = Matrix::<Asq>::random(&mut rng, n, n, 2);
        let k = verified(&product_decompose(&a, &o).map_err(|e| format!("ASQ: {e}"))?, &a)?;
        ensure(k == 2, || format!("ASQ: {k} factors"))?;
    }
    Ok("200 HQ + 100 ASQ targets with 2 factors; targets agree across strategies".into())
}

fn criterion_6() -> Check {
    let o = Options {
        strategy: Strategy::Char2,
        ..Options::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut hist = BTreeMap::new();
    for i in 0..100 {
        let n = 1 + i % 3;
        let a = Matrix::<Asq>::random(&mut rng, n, n, 2);
        let k = verified(&product_decompose(&a, &o).map_err(|e| e.to_string())?, &a)?;
        ensure(k <= 4, || format!("{k} factors"))?;
        *hist.entry(k).or_insert(0) += 1;
    }
    Ok(format!("100 ASQ targets, factor-count histogram {hist:?}"))
}

fn criterion_7() -> Check {
    let c2 = cached_closure::<Gf2>(2, Mode::Product).map_err(|e| e.to_string())?;
    let mut nonsingular = Vec::new();
    for a in all_gf2(2) {
        if a.is_invertible() && c2.width_of(&a).is_some() {
            nonsingular.push(a);
        }
    }
    ensure(nonsingular.len() == 1 && nonsingular[0].is_identity(), || format!("{nonsingular:?}"))?;
    let t3 = width_table::<Gf3>(2, Mode::Product).map_err(|e| e.to_string())?;
    ensure(t3.max_width() == 3 && t3.unreachable == 0, || format!("{:?}", t3.histogram))?;
    let (m, parts) = &t3.witnesses[&3];
    ensure(parts.len() == 3 && &(&parts[0] * &parts[1]) * &parts[2] == *m, || "bad witness".into())?;
    Ok(format!("GF(2) nonsingular closure = {{I}}; GF(3) widths {:?}", t3.histogram))
}

type H = Hq;

/// Solves `A·X − X·B = C` by flattening to rational coordinates.
fn sylvester_oracle(a: &Matrix<H>, b: &Matrix<H>, c: &Matrix<H>) -> Option<Matrix<H>> {
    let (n, m) = (a.rows(), b.rows());
    let basis = [H::one(), H::unit_i(), H::unit_j(), H::unit_k()];
    let dim = 4 * n * m;
    let coords = |x: &Matrix<H>| -> Vec<Qq> {
        x.entries().iter().flat_map(|e| [e.re.clone(), e.i.clone(), e.j.clone(), e.k.clone()]).collect()
    };
    let mut cols = Vec::with_capacity(dim);
    for idx in 0..n * m {
        for e in &basis {
            let mut x = Matrix::<H>::zeros(n, m);
            x.set(idx / m, idx % m, e.clone());
            let image = &(a * &x) - &(&x * b);
            cols.push(Matrix::column(&coords(&image)));
        }
    }
    let l = Matrix::from_columns(&cols, dim);
    let y = l.solve(&Matrix::column(&coords(c)))?;
    let v = y.entries();
    Some(Matrix::from_fn(n, m, |i, j| {
        let k = 4 * (i * m + j);
        Quaternion::new(v[k].clone(), v[k + 1].clone(), v[k + 2].clone(), v[k + 3].clone())
    }))
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut done = 0;
    while done < 100 {
        let (n, m) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        // Roots a ± b·(unit pure quaternion) share the minimal polynomial
        // z² − 2az + a² + b².
        let (s, t) = (rng.gen_range(-3..=3), rng.gen_range(1..=3));
        let p = CentralPolynomial::new(vec![
            H::from_i64(s * s + t * t),
            H::from_i64(-2 * s),
            H::one(),
        ])
        .unwrap();
        let units = [H::unit_i(), H::unit_j(), H::unit_k(), -H::unit_i()];
        let d: Vec<H> = (0..n)
            .map(|_| H::from_i64(s) + units[rng.gen_range(0..4)].clone() * H::from_i64(t))
            .collect();
        let q = random_invertible::<H>(&mut rng, n, 3);
        let a = &(&q * &Matrix::diag(&d)) * &q.inverse().unwrap();
        let b = Matrix::<H>::random(&mut rng, m, m, 3);
        let c = Matrix::<H>::random(&mut rng, n, m, 3);
        let inst = match SylvesterInstance::new(a.clone(), b.clone(), c.clone(), p) {
            Ok(i) => i,
            Err(_) => continue,
        };
        let x = solve_sylvester(&inst).map_err(|e| e.to_string())?;
        let oracle = sylvester_oracle(&a, &b, &c).ok_or("oracle system is singular")?;
        ensure(x == oracle, || format!("closed form differs from the oracle (n={n}, m={m})"))?;
        done += 1;
    }
    Ok("100 instances match the flattened rational solve exactly".into())
}

fn random_hf(rng: &mut ChaCha8Rng, n: usize) -> Matrix<Hf> {
    Matrix::from_fn(n, n, |_, _| {
        Quaternion::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
    })
}

fn criterion_9() -> Check {
    let o = Options::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut total, mut first_try) = (0usize, 0usize);
    let mut tally = |w: Result<WaringWitness, diagdecomp::Error>, label: &str| -> Result<(), String> {
        let w = w.map_err(|e| format!("{label}: {e}"))?;
        let r = w.residual().map_err(|e| e.to_string())?;
        ensure(r <= tolerance(&w.target), || format!("{label}: residual {r:e}"))?;
        total += 1;
        first_try += (w.retries == 0) as usize;
        Ok(())
    };
    for n in [2, 3] {
        for k in [2, 3, 5] {
            for _ in 0..50 {
                let a = random_hf(&mut rng, n);
                tally(waring_two(&a, k, WaringMode::Sum, &o), "sum")?;
                tally(waring_two(&a, k, WaringMode::Product, &o), "product")?;
                tally(lincomb_two(&a, [k, k], [-1.0, std::f64::consts::PI], &o), "lincomb")?;
            }
        }
        for _ in 0..50 {
            tally(product_two_squares(&random_hf(&mut rng, n), &o), "squares")?;
        }
    }
    let f = DiagonalPolynomial::new(vec![3, 2, 5], vec![2.0, 1.0, 1.0]).unwrap();
    for n in [2, 3] {
        for _ in 0..50 {
            let a = random_hf(&mut rng, n);
            let xs = diagonal_preimage(&f, &a, &o).map_err(|e| format!("preimage: {e}"))?;
            let r = (&f.eval(&xs).unwrap() - &a).frobenius();
            ensure(r <= tolerance(&a) && xs[2].frobenius() == 0.0, || format!("preimage residual {r:e}"))?;
            total += 1;
            first_try += 1;
        }
    }
    let rate = first_try as f64 / total as f64;
    ensure(rate >= 0.98, || format!("only {:.1}% without retry", 100.0 * rate))?;
    Ok(format!("{total} witnesses within tolerance, {:.1}% without retry", 100.0 * rate))
}

fn criterion_10() -> Check {
    for n in 1..=10 {
        for x in [1, 2, -3, 7] {
            let t = build_gh(n, &Qq::from_i64(x)).unwrap();
            ensure(&t.g + &t.h == Matrix::shift(n), || format!("QQ n={n} x={x}"))?;
        }
        let t = build_gh(n, &Hq::from_i64(5)).unwrap();
        ensure(&t.g + &t.h == Matrix::shift(n), || format!("HQ n={n}"))?;
        let t = build_gh(n, &Gf2::one()).unwrap();
        ensure(&t.g + &t.h == Matrix::shift(n), || format!("GF2 n={n}"))?;
        let t = build_gh(n, &Asq::t()).unwrap();
        ensure(&t.g + &t.h == Matrix::shift(n), || format!("ASQ n={n}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..500 {
        let n = rng.gen_range(1..=4);
        let p = random_invertible::<Hq>(&mut rng, n, 3);
        let diag: Vec<Hq> = (0..n).map(|_| Hq::random(&mut rng, 3)).collect();
        let c = DiagCertificate::new(p, diag).map_err(|e| e.to_string())?;
        let q = random_invertible::<Hq>(&mut rng, n, 3);
        let moved = c.transport(&q).map_err(|e| e.to_string())?;
        let expect = &(&q * &c.target) * &q.inverse().unwrap();
        ensure(moved.target == expect && moved.reconstruct().unwrap() == expect, || "transport".into())?;
        let m = rng.gen_range(1..=3);
        let p2 = random_invertible::<Hq>(&mut rng, m, 3);
        let d2: Vec<Hq> = (0..m).map(|_| Hq::random(&mut rng, 3)).collect();
        let c2 = DiagCertificate::new(p2, d2).unwrap();
        let bd = DiagCertificate::block_diag(&[c.clone(), c2.clone()]);
        let joined = Matrix::block_diag(&[c.target.clone(), c2.target.clone()]);
        ensure(bd.target == joined && bd.reconstruct().unwrap() == joined, || "block diagonal".into())?;
    }
    Ok("G+H = shift for n ≤ 10; 500 transport and block-diagonal checks".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("sum width 2 over HQ and ASQ", criterion_1, 120.0),
        ("sum width 3 over GF(2)", criterion_2, 60.0),
        ("nilpotent width 2", criterion_3, f64::INFINITY),
        ("product width 2, characteristic ≠ 2", criterion_4, f64::INFINITY),
        ("product width 2, central-rich", criterion_5, f64::INFINITY),
        ("product width ≤ 4, characteristic 2", criterion_6, f64::INFINITY),
        ("GF(2)/GF(3) product sharpness", criterion_7, 120.0),
        ("Sylvester oracle equivalence", criterion_8, f64::INFINITY),
        ("Waring decompositions", criterion_9, 60.0),
        ("structural identities", criterion_10, f64::INFINITY),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let outcome = match outcome {
            Ok(msg) if secs > *budget => Err(format!("{msg}; took {secs:.1}s > {budget}s")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} [{secs:.2}s]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} [{secs:.2}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
