//! Seeded synthetic protein data for tests, examples and benchmarks.

use rand::distr::{weighted::WeightedIndex, Distribution};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::LogNormal;

use crate::seqio::{EncodedSequence, SequenceDatabase};

/// Lengths of the twenty benchmark queries, from 144 to 5478 residues,
/// labelled with their UniProt accessions.
pub const BENCHMARK_QUERIES: [(&str, usize); 20] = [
    ("P02232", 144),
    ("P05013", 189),
    ("P14942", 222),
    ("P07327", 375),
    ("P01008", 464),
    ("P03435", 567),
    ("P42357", 657),
    ("P21177", 729),
    ("Q38941", 850),
    ("P27895", 1000),
    ("P07756", 1500),
    ("P04775", 2005),
    ("P19096", 2504),
    ("P28167", 3005),
    ("P0C6B8", 3564),
    ("P20930", 4061),
    ("P08519", 4548),
    ("Q7TMA5", 4743),
    ("P33450", 5147),
    ("Q9UKN1", 5478),
];

/// Background frequencies (percent) of the 20 standard amino acids in
/// alphabet order A R N D C Q E G H I L K M F P S T W Y V.
const BACKGROUND: [f64; 20] = [
    8.25, 5.53, 4.06, 5.45, 1.37, 3.93, 6.75, 7.07, 2.27, 5.96, 9.66, 5.84, 2.42, 3.86, 4.70, 6.56, 5.34, 1.08, 2.92,
    6.87,
];

/// Deterministic generator of protein-like sequences.
pub struct SyntheticProteins {
    rng: ChaCha8Rng,
    residues: WeightedIndex<f64>,
}

impl SyntheticProteins {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), residues: WeightedIndex::new(BACKGROUND).unwrap() }
    }

    pub fn codes(&mut self, len: usize) -> Vec<u8> {
        (0..len).map(|_| self.residues.sample(&mut self.rng) as u8).collect()
    }

    pub fn sequence(&mut self, header: impl Into<String>, len: usize) -> EncodedSequence {
        EncodedSequence::new(header, self.codes(len))
    }

    /// A length drawn from a log-normal shaped like curated protein
    /// databases (median around 300), clamped to `[min, max]`.
    pub fn protein_length(&mut self, min: usize, max: usize) -> usize {
        let dist = LogNormal::new(5.7, 0.65).unwrap();
        let len: f64 = dist.sample(&mut self.rng);
        (len.round() as usize).clamp(min, max)
    }

    pub fn uniform_length(&mut self, min: usize, max: usize) -> usize {
        self.rng.random_range(min..=max)
    }

    /// `count` sequences with protein-like lengths in `[min, max]`.
    pub fn database(&mut self, count: usize, min: usize, max: usize) -> SequenceDatabase {
        let seqs: Vec<EncodedSequence> = (0..count)
            .map(|i| {
                let len = self.protein_length(min, max);
                self.sequence(format!("synthetic_{i:06} len={len}"), len)
            })
            .collect();
        SequenceDatabase::from_sequences(seqs)
    }

    /// Random queries with the benchmark query lengths.
    pub fn benchmark_queries(&mut self) -> Vec<EncodedSequence> {
        BENCHMARK_QUERIES
            .iter()
            .map(|&(accession, len)| self.sequence(format!("{accession} synthetic len={len}"), len))
            .collect()
    }

    /// Copy `source` with roughly `rate` of the
    /// positions substituted, for planting true hits in a database.
    pub fn mutate(&mut self, source: &[u8], rate: f64) -> Vec<u8> {
        source
            .iter()
            .map(|&c| if self.rng.random_bool(rate) { self.residues.sample(&mut self.rng) as u8 } else { c })
            .collect()
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}
