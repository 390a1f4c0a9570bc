//! Seeded instance generators for the instance families used in testing and
//! sweeps.
//!
//! All randomness comes from ChaCha8 seeded with `seed_from_u64(seed)`.
//! Sweep instance `i` uses the same seed on stream `i`, so every row can be
//! generated independently and in any order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{competitive_ratio, prop1_instance, RatioReport};
use crate::error::{Error, Result};
use crate::model::{Instance, Robot};

/// Identifier written into sweep outputs so runs can be reproduced elsewhere.
pub const PRNG_ID: &str = "chacha8-seed_from_u64-stream_per_instance";

/// Keeps sampled search speeds at least this fraction away from 0 and from `w`.
pub const SPEED_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneratorKind {
    /// Walk speeds log-uniform in `[w_min, w_max]`, search speeds uniform below.
    Random { w_min: f64, w_max: f64 },
    /// Common walk speed `w`, search speeds uniform below it.
    WUniform { w: f64 },
    /// Common walk speed `w` and common search speed `alpha * w`; `alpha` is
    /// sampled when absent.
    TotallyUniform { alpha: Option<f64>, w: f64 },
    /// The two-robot family with ratio `2 - epsilon`; `epsilon` is sampled
    /// when absent.
    Prop1 { epsilon: Option<f64> },
}

impl GeneratorKind {
    pub fn random() -> Self {
        Self::Random {
            w_min: 1e-2,
            w_max: 1e2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Random { .. } => "random",
            Self::WUniform { .. } => "w-uniform",
            Self::TotallyUniform { .. } => "totally-uniform",
            Self::Prop1 { .. } => "prop1",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub seed: u64,
    pub length: f64,
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<Instance> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        generate_with(self.kind, self.n, self.length, &mut rng)
    }
}

/// Rng for sweep instance `index`.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn search_below<R: Rng + ?Sized>(rng: &mut R, w: f64) -> f64 {
    w * rng.random_range(SPEED_MARGIN..1.0 - SPEED_MARGIN)
}

fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random_range(SPEED_MARGIN..1.0 - SPEED_MARGIN)
}

/// Draws one instance of `kind` with `n` robots.
pub fn generate_with<R: Rng + ?Sized>(
    kind: GeneratorKind,
    n: usize,
    length: f64,
    rng: &mut R,
) -> Result<Instance> {
    if let GeneratorKind::Prop1 { epsilon } = kind {
        let eps = epsilon.unwrap_or_else(|| open_unit(rng));
        return prop1_instance(eps)?.with_length(length);
    }
    if n == 0 {
        return Err(Error::EmptyFleet);
    }
    let speeds: Vec<(f64, f64)> = match kind {
        GeneratorKind::Random { w_min, w_max } => {
            if !(w_min > 0.0 && w_max >= w_min && w_max.is_finite()) {
                return Err(Error::InvalidGenerator(format!(
                    "walk speed range [{w_min}, {w_max}]"
                )));
            }
            let (lo, hi) = (w_min.ln(), w_max.ln());
            (0..n)
                .map(|_| {
                    let w = if hi > lo {
                        rng.random_range(lo..=hi).exp()
                    } else {
                        w_min
                    };
                    (search_below(rng, w), w)
                })
                .collect()
        }
        GeneratorKind::WUniform { w } => (0..n).map(|_| (search_below(rng, w), w)).collect(),
        GeneratorKind::TotallyUniform { alpha, w } => {
            let a = alpha.unwrap_or_else(|| open_unit(rng));
            if !(a > 0.0 && a < 1.0) {
                return Err(Error::AlphaOutOfRange(a));
            }
            vec![(a * w, w); n]
        }
        GeneratorKind::Prop1 { .. } => unreachable!(),
    };
    let robots = speeds
        .into_iter()
        .enumerate()
        .map(|(i, (s, w))| Robot::new(format!("r{}", i + 1), s, w))
        .collect::<Result<Vec<_>>>()?;
    Instance::new(robots, length)
}

/// One row of a ratio sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub index: u64,
    pub n: usize,
    pub report: RatioReport,
}

/// Generates sweep instance `index` (fleet size uniform in `1..=max_n`) and
/// evaluates its competitive ratio.
pub fn sweep_row(kind: GeneratorKind, max_n: usize, seed: u64, index: u64) -> Result<SweepRow> {
    let mut rng = instance_rng(seed, index);
    let n = match kind {
        GeneratorKind::Prop1 { .. } => 2,
        _ => rng.random_range(1..=max_n.max(1)),
    };
    let instance = generate_with(kind, n, 1.0, &mut rng)?;
    Ok(SweepRow {
        index,
        n,
        report: competitive_ratio(&instance),
    })
}
