//! Timing harness for index construction and counting.
//!
//! Inputs come from [`generate_mutated`], so a fixed seed gives every engine
//! the same pairs. Each repetition times the index build of text and pattern
//! and then the count; the reported figure per size is the median over
//! repetitions. Short operations are repeated inside one sample until it
//! spans at least `min_sample`, and the per-call time is kept.

use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::alphabet::Alphabet;
use crate::compare::{count, Engine, Prepared};
use crate::error::{Error, Result};
use crate::index::PositionIndex;
use crate::io::generate_mutated;

pub const MIN_REPETITIONS: usize = 3;

/// Acceptable `time_ratio / size_ratio` range for a linear step.
pub const LINEAR_BAND: (f64, f64) = (0.75, 1.5);

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub engines: Vec<Engine>,
    /// Text lengths; patterns have the same length. Strictly increasing.
    pub sizes: Vec<usize>,
    pub repetitions: usize,
    pub seed: u64,
    pub substitution_rate: f64,
    pub min_sample: Duration,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            engines: vec![Engine::Bitplanes],
            sizes: vec![10_000, 20_000, 40_000],
            repetitions: 7,
            seed: 7,
            substitution_rate: 0.25,
            min_sample: Duration::from_millis(2),
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.repetitions < MIN_REPETITIONS {
            return Err(Error::InvalidSchedule(format!(
                "repetitions must be at least {MIN_REPETITIONS}, got {}",
                self.repetitions
            )));
        }
        if self.sizes.is_empty() || self.sizes[0] == 0 {
            return Err(Error::InvalidSchedule(
                "sizes must be non-empty and positive".into(),
            ));
        }
        if self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSchedule(
                "sizes must be strictly increasing".into(),
            ));
        }
        if self.engines.is_empty() {
            return Err(Error::InvalidSchedule("no engines selected".into()));
        }
        if !(0.0..=1.0).contains(&self.substitution_rate) {
            return Err(Error::InvalidSchedule(
                "substitution rate outside [0, 1]".into(),
            ));
        }
        Ok(())
    }
}

/// Median timings for one size.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SizeTiming {
    pub n: usize,
    pub m: usize,
    pub build: Duration,
    pub count: Duration,
    /// Matches found, identical across engines for the same seed.
    pub r: usize,
}

impl SizeTiming {
    pub fn total(&self) -> Duration {
        self.build + self.count
    }

    /// Positions (`n + m`) processed per second by build plus count.
    pub fn throughput(&self) -> f64 {
        (self.n + self.m) as f64 / self.total().as_secs_f64().max(f64::MIN_POSITIVE)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchResult {
    pub engine: Engine,
    pub repetitions: usize,
    pub timings: Vec<SizeTiming>,
}

impl BenchResult {
    pub fn sizes(&self) -> Vec<(usize, usize)> {
        self.timings.iter().map(|t| (t.n, t.m)).collect()
    }
}

/// Growth between two consecutive sizes.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScalingStep {
    pub from: usize,
    pub to: usize,
    pub size_ratio: f64,
    pub time_ratio: f64,
}

impl ScalingStep {
    pub fn is_linear(&self) -> bool {
        let (lo, hi) = LINEAR_BAND;
        (lo * self.size_ratio..=hi * self.size_ratio).contains(&self.time_ratio)
    }
}

pub fn median(samples: &mut [Duration]) -> Duration {
    assert!(!samples.is_empty());
    samples.sort_unstable();
    let mid = samples.len() / 2;
    if samples.len() % 2 == 1 {
        samples[mid]
    } else {
        (samples[mid - 1] + samples[mid]) / 2
    }
}

/// Time per call of `f`, looping until at least `min_sample` has elapsed.
pub fn sample<T>(min_sample: Duration, mut f: impl FnMut() -> T) -> Duration {
    let start = Instant::now();
    let mut calls = 0u32;
    loop {
        std::hint::black_box(f());
        calls += 1;
        let elapsed = start.elapsed();
        if elapsed >= min_sample {
            return elapsed / calls;
        }
    }
}

/// Median per-call index build time for text and pattern of each size.
pub fn time_index_build(config: &BenchConfig) -> Result<Vec<(usize, Duration)>> {
    config.validate()?;
    let alphabet = Arc::new(Alphabet::dna());
    config
        .sizes
        .iter()
        .map(|&n| {
            let (text, pattern) =
                generate_mutated(config.seed, &alphabet, n, config.substitution_rate)?;
            let mut samples: Vec<Duration> = (0..config.repetitions)
                .map(|_| {
                    sample(config.min_sample, || {
                        (PositionIndex::build(&text), PositionIndex::build(&pattern))
                    })
                })
                .collect();
            Ok((n, median(&mut samples)))
        })
        .collect()
}

pub fn run(config: &BenchConfig) -> Result<Vec<BenchResult>> {
    config.validate()?;
    let alphabet = Arc::new(Alphabet::dna());
    let inputs = config
        .sizes
        .iter()
        .map(|&n| generate_mutated(config.seed, &alphabet, n, config.substitution_rate))
        .collect::<Result<Vec<_>>>()?;

    let mut results = Vec::with_capacity(config.engines.len());
    for &engine in &config.engines {
        let mut timings = Vec::with_capacity(inputs.len());
        for (text, pattern) in &inputs {
            let text_p = Prepared::new(text.clone());
            let pat_p = Prepared::new(pattern.clone());
            let r = count(engine, &text_p, &pat_p)?.r();
            let mut builds = Vec::with_capacity(config.repetitions);
            let mut counts = Vec::with_capacity(config.repetitions);
            for _ in 0..config.repetitions {
                builds.push(sample(config.min_sample, || {
                    (PositionIndex::build(text), PositionIndex::build(pattern))
                }));
                counts.push(sample(config.min_sample, || count(engine, &text_p, &pat_p)));
            }
            timings.push(SizeTiming {
                n: text.len(),
                m: pattern.len(),
                build: median(&mut builds),
                count: median(&mut counts),
                r,
            });
        }
        results.push(BenchResult {
            engine,
            repetitions: config.repetitions,
            timings,
        });
    }
    Ok(results)
}

/// Consecutive-size growth of `time(size)` over a schedule.
pub fn scaling(points: &[(usize, Duration)]) -> Vec<ScalingStep> {
    points
        .windows(2)
        .map(|w| ScalingStep {
            from: w[0].0,
            to: w[1].0,
            size_ratio: w[1].0 as f64 / w[0].0 as f64,
            time_ratio: w[1].1.as_secs_f64() / w[0].1.as_secs_f64().max(f64::MIN_POSITIVE),
        })
        .collect()
}
