//! The three scoring kernels agree on every pair.

use swsearch::align::{sw_score_batch, sw_score_scalar, sw_score_wavefront, LaneBatch};
use swsearch::scoring::{builtin_blosum62, make_profile, GapModel};
use swsearch::synth::SyntheticProteins;

fn main() {
    let matrix = builtin_blosum62();
    let gaps = GapModel::default();
    let mut synth = SyntheticProteins::new(7);
    let query = synth.codes(300);
    let subjects: Vec<Vec<u8>> =
        (0..12).map(|i| if i % 3 == 0 { synth.mutate(&query, 0.3) } else { synth.codes(100 + 40 * i) }).collect();

    // Lane kernel: 16 lanes, 12 occupied, the rest score zero.
    let profile = make_profile(&matrix, &query).unwrap();
    let batch = LaneBatch::new(16, subjects.iter().map(Vec::as_slice).collect());
    let lanes = sw_score_batch(&profile, &batch, &gaps);

    println!("{:>4} {:>6} {:>8} {:>8} {:>9}", "lane", "len", "scalar", "lanes", "wavefront");
    for (i, subject) in subjects.iter().enumerate() {
        let scalar = sw_score_scalar(&query, subject, &matrix, &gaps);
        let wave = sw_score_wavefront(&query, subject, &matrix, &gaps, 64);
        println!("{i:>4} {:>6} {:>8} {:>8} {:>9}", subject.len(), scalar.value(), lanes[i].value(), wave.value());
        assert!(scalar == lanes[i] && scalar == wave);
    }
    println!("idle lanes: {:?}", lanes[subjects.len()..].iter().map(|s| s.value()).collect::<Vec<_>>());
}
