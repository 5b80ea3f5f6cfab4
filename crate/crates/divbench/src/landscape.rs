//! Fitness landscapes: OneMax, TwoMax, and a set of peaks in bit space
//! whose positions and heights change on a schedule.
//!
//! Peak landscapes score a genome as the best `height - hamming(x, peak)`
//! over all peaks; the value is never clamped and may go negative far from
//! every peak.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::genome::{hamming, Genome, RandomSource};

/// One peak: a position in bit space and a height in fitness units.
#[derive(Clone, Debug, PartialEq)]
pub struct Peak {
    pub position: Genome,
    pub height: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LandscapeKind {
    OneMax,
    TwoMax,
    Peaks(Vec<Peak>),
}

/// A fitness landscape over genomes of one fixed length. `epoch` counts the
/// change events applied so far.
#[derive(Clone, Debug, PartialEq)]
pub struct Landscape {
    pub kind: LandscapeKind,
    pub genome_length: usize,
    pub epoch: usize,
}

impl Landscape {
    pub fn one_max(genome_length: usize) -> Self {
        Landscape {
            kind: LandscapeKind::OneMax,
            genome_length,
            epoch: 0,
        }
    }

    pub fn two_max(genome_length: usize) -> Self {
        Landscape {
            kind: LandscapeKind::TwoMax,
            genome_length,
            epoch: 0,
        }
    }

    pub fn peaks(peaks: Vec<Peak>) -> Result<Self> {
        let first_len = peaks
            .first()
            .map(|p| p.position.len())
            .ok_or_else(|| Error::invalid_argument("peak landscape needs at least one peak"))?;
        if peaks.iter().any(|p| p.position.len() != first_len) {
            return Err(Error::invalid_argument(
                "all peak positions must share one length",
            ));
        }
        Ok(Landscape {
            kind: LandscapeKind::Peaks(peaks),
            genome_length: first_len,
            epoch: 0,
        })
    }

    /// Fitness of `x` under the current landscape.
    pub fn evaluate(&self, x: &Genome) -> Result<f64> {
        if x.len() != self.genome_length {
            return Err(Error::invalid_argument(format!(
                "genome length {} does not match landscape length {}",
                x.len(),
                self.genome_length
            )));
        }
        Ok(match &self.kind {
            LandscapeKind::OneMax => x.count_ones() as f64,
            LandscapeKind::TwoMax => {
                let ones = x.count_ones();
                ones.max(x.len() - ones) as f64
            }
            LandscapeKind::Peaks(peaks) => peaks
                .iter()
                .map(|p| p.height - hamming(x, &p.position) as f64)
                .fold(f64::NEG_INFINITY, f64::max),
        })
    }

    /// Best attainable fitness value anywhere in the search space.
    pub fn optimum(&self) -> f64 {
        match &self.kind {
            LandscapeKind::OneMax | LandscapeKind::TwoMax => self.genome_length as f64,
            LandscapeKind::Peaks(peaks) => {
                peaks.iter().map(|p| p.height).fold(f64::NEG_INFINITY, f64::max)
            }
        }
    }

    /// Worst attainable fitness value anywhere in the search space.
    /// Available in closed form for OneMax, TwoMax and peak sets of size
    /// one or two; `None` otherwise.
    pub fn worst_value(&self) -> Option<f64> {
        let n = self.genome_length as f64;
        match &self.kind {
            LandscapeKind::OneMax => Some(0.0),
            LandscapeKind::TwoMax => Some((self.genome_length as f64 / 2.0).ceil()),
            LandscapeKind::Peaks(peaks) => match peaks.len() {
                1 => Some(peaks[0].height - n),
                2 => {
                    // Put x as far as possible from both peaks: it disagrees
                    // with both on every position where the peaks agree, and
                    // sides with one peak on s of the d positions where they
                    // differ. Minimizing max(hA - d(x,A), hB - d(x,B)) over
                    // integer s is a max of one increasing and one
                    // decreasing linear function, so checking the balance
                    // point's neighbors and the endpoints is exact.
                    let d = hamming(&peaks[0].position, &peaks[1].position) as f64;
                    let (ha, hb) = (peaks[0].height, peaks[1].height);
                    let balance = (hb - ha + d) / 2.0;
                    let mut best = f64::INFINITY;
                    for s in [balance.floor(), balance.ceil(), 0.0, d] {
                        let s = s.clamp(0.0, d);
                        let value = (ha + s - n).max(hb + d - s - n);
                        best = best.min(value);
                    }
                    Some(best)
                }
                _ => None,
            },
        }
    }

    /// Positions for each of a two-peak landscape, with TwoMax treated as
    /// peaks at all-zeros and all-ones.
    pub fn two_peak_positions(&self) -> Option<[Genome; 2]> {
        match &self.kind {
            LandscapeKind::TwoMax => Some([
                Genome::zeros(self.genome_length),
                Genome::ones(self.genome_length),
            ]),
            LandscapeKind::Peaks(peaks) if peaks.len() == 2 => {
                Some([peaks[0].position.clone(), peaks[1].position.clone()])
            }
            _ => None,
        }
    }

    /// Apply one change event: move each peak per the event's flip
    /// probability, then overwrite heights, then bump the epoch. Returns a
    /// new landscape.
    pub fn apply_change(&self, event: &ChangeEvent, rng: &mut RandomSource) -> Result<Landscape> {
        let LandscapeKind::Peaks(peaks) = &self.kind else {
            return Err(Error::invalid_state(
                "change events apply only to peak landscapes",
            ));
        };
        for &index in event.height_updates.keys() {
            if index >= peaks.len() {
                return Err(Error::invalid_argument(format!(
                    "height update for nonexistent peak index {index} (have {})",
                    peaks.len()
                )));
            }
        }
        let mut peaks = peaks.clone();
        if let Some(p) = event.moves {
            for peak in &mut peaks {
                *peak = move_peak(peak, p, rng)?;
            }
        }
        for (&index, &height) in &event.height_updates {
            peaks[index].height = height;
        }
        Ok(Landscape {
            kind: LandscapeKind::Peaks(peaks),
            genome_length: self.genome_length,
            epoch: self.epoch + 1,
        })
    }
}

/// Move a peak by XOR with a random mask whose bits are set independently
/// with `flip_prob`; the height is untouched.
pub fn move_peak(peak: &Peak, flip_prob: f64, rng: &mut RandomSource) -> Result<Peak> {
    if !(0.0..=1.0).contains(&flip_prob) {
        return Err(Error::invalid_argument(format!(
            "flip probability must lie in [0, 1], got {flip_prob}"
        )));
    }
    let mut mask = Genome::zeros(peak.position.len());
    for i in 0..mask.len() {
        if rng.next_bool(flip_prob) {
            mask.set(i, true);
        }
    }
    Ok(Peak {
        position: peak.position.xor(&mask),
        height: peak.height,
    })
}

/// One scheduled landscape change: an optional per-peak movement (flip
/// probability) and optional height overwrites, applied at the start of
/// `at_generation`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChangeEvent {
    pub at_generation: usize,
    pub moves: Option<f64>,
    pub height_updates: BTreeMap<usize, f64>,
}

impl ChangeEvent {
    pub fn moves_only(at_generation: usize, flip_prob: f64) -> Self {
        ChangeEvent {
            at_generation,
            moves: Some(flip_prob),
            height_updates: BTreeMap::new(),
        }
    }

    pub fn heights_only<const N: usize>(at_generation: usize, updates: [(usize, f64); N]) -> Self {
        ChangeEvent {
            at_generation,
            moves: None,
            height_updates: updates.into_iter().collect(),
        }
    }

    pub fn with_heights(mut self, updates: &[(usize, f64)]) -> Self {
        self.height_updates.extend(updates.iter().copied());
        self
    }
}

/// A named benchmark: an initial landscape, its change schedule, and the
/// run horizon.
#[derive(Clone, Debug)]
pub struct ProblemPreset {
    pub name: String,
    pub initial: Landscape,
    pub schedule: Vec<ChangeEvent>,
    pub total_generations: usize,
}

pub const PRESET_NAMES: [&str; 6] = [
    "onemax",
    "twomax",
    "one-moving-peak",
    "two-moving-peaks",
    "height-changing-peaks",
    "moving-height-changing-peaks",
];

const DEFAULT_GENOME_LENGTH: usize = 100;
const DEFAULT_GENERATIONS: usize = 450;
const CHANGE_GENERATIONS: [usize; 2] = [150, 300];
const PEAK_FLIP_PROB: f64 = 0.1;

/// The standard benchmark configuration for `name`: genome length 100 and
/// a 450-generation horizon with changes at generations 150 and 300.
pub fn make_preset(name: &str) -> Result<ProblemPreset> {
    make_preset_sized(name, DEFAULT_GENOME_LENGTH, DEFAULT_GENERATIONS)
}

/// A preset rebuilt for a custom genome length and horizon. Change events
/// stay at their standard generations; events at or past the horizon are
/// dropped.
pub fn make_preset_sized(
    name: &str,
    genome_length: usize,
    total_generations: usize,
) -> Result<ProblemPreset> {
    let zeros = Genome::zeros(genome_length);
    let ones = Genome::ones(genome_length);
    let peak = |position: &Genome, height: f64| Peak {
        position: position.clone(),
        height,
    };
    let [g1, g2] = CHANGE_GENERATIONS;
    let (initial, schedule) = match name {
        "onemax" => (Landscape::one_max(genome_length), vec![]),
        "twomax" => (Landscape::two_max(genome_length), vec![]),
        "one-moving-peak" => (
            Landscape::peaks(vec![peak(&zeros, 100.0)])?,
            vec![
                ChangeEvent::moves_only(g1, PEAK_FLIP_PROB),
                ChangeEvent::moves_only(g2, PEAK_FLIP_PROB),
            ],
        ),
        "two-moving-peaks" => (
            Landscape::peaks(vec![peak(&zeros, 100.0), peak(&ones, 90.0)])?,
            vec![
                ChangeEvent::moves_only(g1, PEAK_FLIP_PROB),
                ChangeEvent::moves_only(g2, PEAK_FLIP_PROB),
            ],
        ),
        "height-changing-peaks" => (
            Landscape::peaks(vec![peak(&zeros, 100.0), peak(&ones, 100.0)])?,
            vec![
                ChangeEvent::heights_only(g1, [(0, 80.0)]),
                ChangeEvent::heights_only(g2, [(0, 100.0), (1, 80.0)]),
            ],
        ),
        "moving-height-changing-peaks" => (
            Landscape::peaks(vec![peak(&zeros, 100.0), peak(&ones, 100.0)])?,
            vec![
                ChangeEvent::moves_only(g1, PEAK_FLIP_PROB).with_heights(&[(0, 80.0)]),
                ChangeEvent::moves_only(g2, PEAK_FLIP_PROB).with_heights(&[(0, 100.0), (1, 80.0)]),
            ],
        ),
        other => {
            return Err(Error::not_found(format!(
                "unknown problem `{other}`; known problems: {}",
                PRESET_NAMES.join(", ")
            )))
        }
    };
    let schedule = schedule
        .into_iter()
        .filter(|e| e.at_generation < total_generations)
        .collect();
    Ok(ProblemPreset {
        name: name.to_string(),
        initial,
        schedule,
        total_generations,
    })
}
