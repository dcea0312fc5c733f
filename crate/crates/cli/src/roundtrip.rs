//! Fuzzed encode → text → decode equality per ring.

use diagdecomp::json::{matrix_from_json, matrix_to_json, JsonElem};
use diagdecomp::{with_ring, Matrix, RingTag};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

fn fuzz<R: JsonElem>(count: usize, rng: &mut ChaCha8Rng) -> usize {
    let mut failures = 0;
    for _ in 0..count {
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let size = rng.gen_range(1..=6);
        let m = Matrix::<R>::random(rng, r, c, size);
        let text = matrix_to_json(&m).to_string();
        let back = serde_json::from_str::<Value>(&text)
            .ok()
            .and_then(|v| matrix_from_json::<R>(&v).ok());
        if back.as_ref() != Some(&m) {
            failures += 1;
        }
    }
    failures
}

pub fn run(tags: &[RingTag], count: usize, seed: u64) -> Value {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rings: Vec<Value> = tags
        .iter()
        .map(|&t| {
            let failures = with_ring!(t, R => fuzz::<R>(count, &mut rng));
            json!({"ring": t.name(), "count": count, "failures": failures})
        })
        .collect();
    let ok = rings.iter().all(|r| r["failures"] == 0);
    json!({"ok": ok, "rings": rings})
}
