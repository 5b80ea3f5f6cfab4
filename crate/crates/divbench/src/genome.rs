//! Bitstring genomes, evaluated individuals, populations, and the
//! deterministic random stream every run draws from.
//!
//! Genomes are stored as packed 64-bit words so Hamming distances in the
//! mechanism inner loops reduce to XOR + popcount. Observable behavior is
//! defined purely over the bit sequence.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

/// A fixed-length binary string; the point type of the search space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Genome {
    words: Vec<u64>,
    len: usize,
}

impl Genome {
    /// All-zeros genome of the given length.
    pub fn zeros(len: usize) -> Self {
        Genome {
            words: vec![0u64; len.div_ceil(WORD_BITS)],
            len,
        }
    }

    /// All-ones genome of the given length.
    pub fn ones(len: usize) -> Self {
        let mut g = Genome::zeros(len);
        for w in &mut g.words {
            *w = u64::MAX;
        }
        g.mask_tail();
        g
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut g = Genome::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                g.set(i, true);
            }
        }
        g
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// Number of 1-bits.
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Bitwise complement.
    pub fn complement(&self) -> Genome {
        let mut g = Genome {
            words: self.words.iter().map(|w| !w).collect(),
            len: self.len,
        };
        g.mask_tail();
        g
    }

    /// XOR with an equal-length mask.
    pub fn xor(&self, mask: &Genome) -> Genome {
        debug_assert_eq!(self.len, mask.len);
        Genome {
            words: self
                .words
                .iter()
                .zip(&mask.words)
                .map(|(a, b)| a ^ b)
                .collect(),
            len: self.len,
        }
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    // Bits past `len` in the last word must stay zero for count_ones.
    fn mask_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for Genome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Genome({self})")
    }
}

impl fmt::Display for Genome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Genome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut g = Genome::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => g.set(i, true),
                other => {
                    return Err(Error::invalid_argument(format!(
                        "genome strings contain only '0'/'1', got {other:?}"
                    )))
                }
            }
        }
        Ok(g)
    }
}

/// Count of positions where `a` and `b` differ.
pub fn hamming_distance(a: &Genome, b: &Genome) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::invalid_argument(format!(
            "hamming distance needs equal lengths, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(hamming(a, b))
}

/// Length-unchecked Hamming distance for inner loops where lengths are
/// uniform by construction.
pub(crate) fn hamming(a: &Genome, b: &Genome) -> usize {
    debug_assert_eq!(a.len, b.len);
    a.words
        .iter()
        .zip(&b.words)
        .map(|(x, y)| (x ^ y).count_ones() as usize)
        .sum()
}

/// Uniform random genome; bits drawn in position order.
pub fn random_genome(length: usize, rng: &mut RandomSource) -> Result<Genome> {
    if length == 0 {
        return Err(Error::invalid_argument("genome length must be at least 1"));
    }
    let mut g = Genome::zeros(length);
    for i in 0..length {
        if rng.next_bit() {
            g.set(i, true);
        }
    }
    Ok(g)
}

/// A genome together with its landscape fitness and the fitness the
/// selection step actually sees (mechanisms like sharing and clearing
/// rewrite the latter).
#[derive(Clone, Debug)]
pub struct Individual {
    pub genome: Genome,
    pub raw_fitness: f64,
    pub effective_fitness: f64,
}

impl Individual {
    /// An individual fresh from evaluation: effective fitness starts equal
    /// to raw fitness.
    pub fn evaluated(genome: Genome, raw_fitness: f64) -> Self {
        Individual {
            genome,
            raw_fitness,
            effective_fitness: raw_fitness,
        }
    }
}

/// An ordered collection of individuals. Steps that select survivors return
/// populations of exactly the parent count.
#[derive(Clone, Debug, Default)]
pub struct Population {
    members: Vec<Individual>,
}

impl Population {
    pub fn new(members: Vec<Individual>) -> Self {
        debug_assert!(
            members
                .windows(2)
                .all(|w| w[0].genome.len() == w[1].genome.len()),
            "population genomes must share one length"
        );
        Population { members }
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn members_mut(&mut self) -> &mut [Individual] {
        &mut self.members
    }

    pub fn into_members(self) -> Vec<Individual> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Individual> {
        self.members.iter()
    }

    /// Member with maximal raw fitness (first among ties).
    pub fn best_by_raw(&self) -> Option<&Individual> {
        self.members
            .iter()
            .reduce(|best, ind| if ind.raw_fitness > best.raw_fitness { ind } else { best })
    }
}

/// Name of the generator behind [`RandomSource`], recorded in output metadata.
pub const RNG_ALGORITHM: &str = "chacha8";

/// Deterministic random stream. A run is identified by `(base_seed,
/// stream_index)`; equal pairs replay identical sequences, and distinct
/// stream indices give statistically independent streams, so replicate
/// runs can execute in parallel without shared state.
///
/// Draw order is part of every operator's contract: initialization first,
/// then per generation offspring decisions in creation order, mutation bits
/// in position order, selection tournaments in slot order, and landscape
/// changes at period boundaries.
#[derive(Clone, Debug)]
pub struct RandomSource {
    rng: ChaCha8Rng,
    base_seed: u64,
    stream_index: u64,
}

impl RandomSource {
    pub fn new(base_seed: u64, stream_index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(base_seed);
        rng.set_stream(stream_index);
        RandomSource {
            rng,
            base_seed,
            stream_index,
        }
    }

    pub fn base_seed(&self) -> u64 {
        self.base_seed
    }

    pub fn stream_index(&self) -> u64 {
        self.stream_index
    }

    /// Uniform draw from [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    /// Uniform index in `0..n`. Panics if `n == 0`.
    pub fn next_index(&mut self, n: usize) -> usize {
        assert!(n > 0, "next_index needs a non-empty range");
        self.rng.gen_range(0..n)
    }

    /// Bernoulli draw with success probability `p`.
    pub fn next_bool(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }

    /// Fair coin.
    pub fn next_bit(&mut self) -> bool {
        self.rng.gen::<bool>()
    }

    /// In-place Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.next_index(i + 1);
            xs.swap(i, j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Genome {
        s.parse().unwrap()
    }

    #[test]
    fn hamming_identity_case() {
        assert_eq!(hamming_distance(&g("0101"), &g("0101")).unwrap(), 0);
    }

    #[test]
    fn hamming_full_complement() {
        assert_eq!(hamming_distance(&g("0000"), &g("1111")).unwrap(), 4);
    }

    #[test]
    fn hamming_positionwise_count() {
        assert_eq!(hamming_distance(&g("0101"), &g("0011")).unwrap(), 2);
    }

    #[test]
    fn hamming_length_mismatch_is_error() {
        assert!(matches!(
            hamming_distance(&g("01"), &g("011")),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn hamming_symmetric_and_zero_on_self() {
        let mut rng = RandomSource::new(7, 0);
        for _ in 0..200 {
            let a = random_genome(33, &mut rng).unwrap();
            let b = random_genome(33, &mut rng).unwrap();
            assert_eq!(hamming(&a, &b), hamming(&b, &a));
            assert_eq!(hamming(&a, &a), 0);
        }
    }

    #[test]
    fn hamming_triangle_inequality() {
        let mut rng = RandomSource::new(11, 0);
        for _ in 0..200 {
            let a = random_genome(70, &mut rng).unwrap();
            let b = random_genome(70, &mut rng).unwrap();
            let c = random_genome(70, &mut rng).unwrap();
            assert!(hamming(&a, &c) <= hamming(&a, &b) + hamming(&b, &c));
        }
    }

    #[test]
    fn random_genome_deterministic_for_fixed_seed() {
        let a = random_genome(8, &mut RandomSource::new(42, 3)).unwrap();
        let b = random_genome(8, &mut RandomSource::new(42, 3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn random_genome_has_requested_length() {
        let g = random_genome(4, &mut RandomSource::new(1, 0)).unwrap();
        assert_eq!(g.len(), 4);
    }

    #[test]
    fn random_genome_zero_length_is_error() {
        assert!(random_genome(0, &mut RandomSource::new(1, 0)).is_err());
    }

    #[test]
    fn random_genome_mean_ones_matches_binomial_expectation() {
        let mut rng = RandomSource::new(9, 0);
        let mut total = 0usize;
        for _ in 0..10_000 {
            total += random_genome(100, &mut rng).unwrap().count_ones();
        }
        let mean = total as f64 / 10_000.0;
        assert!((mean - 50.0).abs() <= 1.5, "mean ones {mean}");
    }

    #[test]
    fn equal_seed_and_stream_replay_identically() {
        let mut a = RandomSource::new(123, 5);
        let mut b = RandomSource::new(123, 5);
        for _ in 0..10_000 {
            assert_eq!(a.next_f64().to_bits(), b.next_f64().to_bits());
        }
    }

    #[test]
    fn distinct_streams_differ() {
        let mut a = RandomSource::new(123, 0);
        let mut b = RandomSource::new(123, 1);
        let same = (0..100).filter(|_| a.next_f64() == b.next_f64()).count();
        assert!(same < 100);
    }

    #[test]
    fn complement_and_popcount_respect_length() {
        let x = g("1001101");
        assert_eq!(x.count_ones(), 4);
        let c = x.complement();
        assert_eq!(c.count_ones(), 3);
        assert_eq!(hamming(&x, &c), 7);
        assert_eq!(c.to_string(), "0110010");
    }

    #[test]
    fn xor_applies_mask() {
        let x = g("1100");
        let mask = g("1010");
        assert_eq!(x.xor(&mask).to_string(), "0110");
    }

    #[test]
    fn display_round_trips_through_parse() {
        let mut rng = RandomSource::new(5, 0);
        for len in [1usize, 63, 64, 65, 100] {
            let x = random_genome(len, &mut rng).unwrap();
            let y: Genome = x.to_string().parse().unwrap();
            assert_eq!(x, y);
        }
    }
}
