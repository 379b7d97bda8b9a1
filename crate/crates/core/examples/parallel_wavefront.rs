//! One long pair scored by the striped wavefront with several workers.

use std::time::Instant;

use swsearch::align::{sw_score_wavefront_parallel, sw_score_wavefront_profile, WavefrontPlan};
use swsearch::scoring::{builtin_blosum62, make_profile, GapModel};
use swsearch::synth::SyntheticProteins;

fn main() {
    let mut synth = SyntheticProteins::new(99);
    let query = synth.codes(4000);
    let subject = synth.mutate(&query, 0.4);
    let profile = make_profile(&builtin_blosum62(), &query).unwrap();
    let gaps = GapModel::default();

    let plan = WavefrontPlan::new(64, 64);
    println!(
        "{} stripes x {} blocks, {} anti-diagonal steps",
        plan.stripes(query.len()),
        plan.blocks(subject.len()),
        plan.steps(query.len(), subject.len())
    );

    let start = Instant::now();
    let serial = sw_score_wavefront_profile(&profile, &subject, &gaps, plan);
    println!("1 worker: score {} in {:.2?}", serial.value(), start.elapsed());
    for workers in [2, 4] {
        let start = Instant::now();
        let score = sw_score_wavefront_parallel(&profile, &subject, &gaps, plan, workers);
        println!("{workers} workers: score {} in {:.2?}", score.value(), start.elapsed());
        assert_eq!(score, serial);
    }
}
