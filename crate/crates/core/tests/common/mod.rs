//! Seeded series generators shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Integer-valued millisecond series: a slow random walk around 800 ms with
/// beat-to-beat jitter and occasional large jumps.
pub fn integer_series(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    let mut base: i64 = rng.gen_range(600..1000);
    let jitter: i64 = rng.gen_range(1..40);
    (0..len)
        .map(|_| {
            base = (base + rng.gen_range(-3..=3)).clamp(400, 1500);
            let mut v = base + rng.gen_range(-jitter..=jitter);
            if rng.gen_bool(0.02) {
                v += rng.gen_range(-200..200);
            }
            v.max(250) as f64
        })
        .collect()
}

/// Real-valued series in seconds.
pub fn real_series(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    let center: f64 = rng.gen_range(0.5..1.1);
    let spread: f64 = rng.gen_range(0.001..0.08);
    (0..len)
        .map(|_| (center + spread * rng.gen_range(-1.0..1.0)).max(0.2))
        .collect()
}

/// Alternates between the two generators.
pub fn mixed_series(rng: &mut ChaCha8Rng, len: usize, case: usize) -> Vec<f64> {
    if case.is_multiple_of(2) {
        integer_series(rng, len)
    } else {
        real_series(rng, len)
    }
}

/// Divisions drawn from {1..6}³, with (10,10,10) on every fifth case.
pub fn divisions(rng: &mut ChaCha8Rng, case: usize) -> [usize; 3] {
    if case % 5 == 4 {
        [10, 10, 10]
    } else {
        [
            rng.gen_range(1..=6),
            rng.gen_range(1..=6),
            rng.gen_range(1..=6),
        ]
    }
}

/// A radius comparable to the typical point distance of `rr`.
pub fn typical_radius(rng: &mut ChaCha8Rng, rr: &[f64]) -> f64 {
    let mean_step = rr.windows(2).map(|w| (w[1] - w[0]).abs()).sum::<f64>() / (rr.len() - 1) as f64;
    (mean_step.max(1e-6)) * rng.gen_range(0.2..3.0)
}
