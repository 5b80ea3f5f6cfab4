//! Population diversity measures and run performance measures.
//!
//! Performance measures always consume raw landscape fitness; the
//! mechanism-adjusted effective fitness is recorded for inspection but
//! never fed into them.

use crate::error::{Error, Result};
use crate::genome::{hamming, Individual};
use crate::landscape::Landscape;

/// One row of per-generation measurements for a single run.
#[derive(Clone, Debug, PartialEq)]
pub struct GenerationRecord {
    pub run_id: usize,
    pub generation: usize,
    pub min_raw: f64,
    pub avg_raw: f64,
    pub max_raw: f64,
    pub min_effective: f64,
    pub avg_effective: f64,
    pub max_effective: f64,
    pub inertia_diversity: f64,
    pub period_index: usize,
    pub best_so_far_in_period: f64,
}

/// Whole-run summary statistics.
#[derive(Clone, Debug, PartialEq)]
pub struct RunSummary {
    /// Mean over periods of the best raw fitness found within each period.
    pub offline_performance: f64,
    /// Best raw fitness found within each period, one entry per period.
    pub max_achieved_per_period: Vec<f64>,
    /// Whether the final population covers both peaks of a two-peak
    /// landscape; `None` for landscapes without exactly two peaks.
    pub finds_both_peaks: Option<bool>,
    /// Whether any generation's best raw fitness reached the landscape
    /// optimum current at that generation.
    pub optimality_reached: bool,
    /// Number of generations whose best raw fitness beat everything seen
    /// before it in the run.
    pub leap_count: usize,
}

/// Sum of Hamming distances over all unordered pairs.
pub fn pairwise_hamming_diversity(members: &[Individual]) -> f64 {
    let mut total = 0usize;
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            total += hamming(&a.genome, &b.genome);
        }
    }
    total as f64
}

/// Per-position mean bit value of the population.
pub fn centroid(members: &[Individual]) -> Vec<f64> {
    let Some(first) = members.first() else {
        return Vec::new();
    };
    let n = first.genome.len();
    let mut counts = vec![0usize; n];
    for ind in members {
        for (i, bit) in ind.genome.bits().enumerate() {
            if bit {
                counts[i] += 1;
            }
        }
    }
    counts
        .into_iter()
        .map(|c| c as f64 / members.len() as f64)
        .collect()
}

/// Moment of inertia about the population centroid: the sum over positions
/// and members of squared deviation from the centroid coordinate. Equals
/// the pairwise Hamming diversity divided by the population size.
pub fn inertia_diversity(members: &[Individual]) -> f64 {
    if members.is_empty() {
        return 0.0;
    }
    let c = centroid(members);
    let mut total = 0.0;
    for ind in members {
        for (i, bit) in ind.genome.bits().enumerate() {
            let x = if bit { 1.0 } else { 0.0 };
            total += (x - c[i]) * (x - c[i]);
        }
    }
    total
}

/// Mean over periods of the best raw fitness found within each period.
/// Period boundaries are the landscape change generations; the best-so-far
/// value resets at every change.
pub fn offline_performance(records: &[GenerationRecord]) -> Result<f64> {
    if records.is_empty() {
        return Err(Error::invalid_argument(
            "offline performance needs at least one record",
        ));
    }
    let mut period_bests: Vec<f64> = Vec::new();
    let mut current_period = records[0].period_index;
    let mut best = f64::NEG_INFINITY;
    for r in records {
        if r.period_index != current_period {
            period_bests.push(best);
            best = f64::NEG_INFINITY;
            current_period = r.period_index;
        }
        best = best.max(r.max_raw);
    }
    period_bests.push(best);
    Ok(period_bests.iter().sum::<f64>() / period_bests.len() as f64)
}

fn check_rectangular(runs: &[Vec<f64>]) -> Result<usize> {
    let Some(first) = runs.first() else {
        return Err(Error::invalid_argument("need at least one run"));
    };
    if runs.iter().any(|r| r.len() != first.len()) {
        return Err(Error::invalid_argument(
            "runs must all have the same number of generations",
        ));
    }
    Ok(first.len())
}

/// Per-generation mean across runs of the per-run maximum fitness series.
pub fn best_of_generation(runs: &[Vec<f64>]) -> Result<Vec<f64>> {
    let len = check_rectangular(runs)?;
    Ok((0..len)
        .map(|g| runs.iter().map(|r| r[g]).sum::<f64>() / runs.len() as f64)
        .collect())
}

/// The best-of-generation series averaged over all generations.
pub fn avg_best_of_generation(runs: &[Vec<f64>]) -> Result<f64> {
    let bog = best_of_generation(runs)?;
    if bog.is_empty() {
        return Err(Error::invalid_argument("runs must be non-empty"));
    }
    Ok(bog.iter().sum::<f64>() / bog.len() as f64)
}

fn check_window(runs: &[Vec<f64>], k: usize) -> Result<()> {
    let len = check_rectangular(runs)?;
    if k == 0 || k > len {
        return Err(Error::invalid_argument(format!(
            "window k={k} must lie in 1..={len}"
        )));
    }
    Ok(())
}

/// Fraction of runs whose best fitness reached `optimum` within the first
/// `k` generations.
pub fn likelihood_of_optimality(runs: &[Vec<f64>], optimum: f64, k: usize) -> Result<f64> {
    check_window(runs, k)?;
    let reached = runs
        .iter()
        .filter(|r| r[..k].iter().any(|&f| f >= optimum))
        .count();
    Ok(reached as f64 / runs.len() as f64)
}

/// Mean over runs of the best fitness obtained within the first `k`
/// generations.
pub fn average_fitness_value(runs: &[Vec<f64>], k: usize) -> Result<f64> {
    check_window(runs, k)?;
    let total: f64 = runs
        .iter()
        .map(|r| r[..k].iter().copied().fold(f64::NEG_INFINITY, f64::max))
        .sum();
    Ok(total / runs.len() as f64)
}

/// Mean number of leap generations per run within the first `k` series
/// entries. A generation is a leap when its fitness strictly exceeds
/// everything earlier in the same run. The first entry of each series is
/// the baseline state preceding the first counted generation (for harness
/// output, the evaluated initial population), so it is never a leap
/// itself.
pub fn likelihood_of_evolution_leap(runs: &[Vec<f64>], k: usize) -> Result<f64> {
    check_window(runs, k)?;
    let mut leaps = 0usize;
    for r in runs {
        let mut best = r[0];
        for &f in &r[1..k] {
            if f > best {
                leaps += 1;
                best = f;
            }
        }
    }
    Ok(leaps as f64 / runs.len() as f64)
}

/// Best-of-generation fitness rescaled to [0, 1] between the landscape's
/// worst and best attainable values.
pub fn optimisation_accuracy(bog: f64, max: f64, min: f64) -> Result<f64> {
    if max <= min {
        return Err(Error::invalid_argument(format!(
            "accuracy needs max > min, got max={max} min={min}"
        )));
    }
    Ok((bog - min) / (max - min))
}

/// Accuracy gain from one generation to the next, clamped at zero.
pub fn stability(accuracy: f64, previous_accuracy: f64) -> f64 {
    (accuracy - previous_accuracy).max(0.0)
}

/// Whether each peak of a two-peak landscape has some member within
/// `proximity` Hamming units of its position. TwoMax counts as peaks at
/// all-zeros and all-ones.
pub fn finds_both_peaks(
    members: &[Individual],
    landscape: &Landscape,
    proximity: usize,
) -> Result<bool> {
    let positions = landscape.two_peak_positions().ok_or_else(|| {
        Error::invalid_argument("finds_both_peaks needs a landscape with exactly 2 peaks")
    })?;
    Ok(positions.iter().all(|peak| {
        members
            .iter()
            .any(|ind| hamming(&ind.genome, peak) <= proximity)
    }))
}

/// Default proximity (in Hamming units) for peak coverage checks.
pub const DEFAULT_PEAK_PROXIMITY: usize = 10;
