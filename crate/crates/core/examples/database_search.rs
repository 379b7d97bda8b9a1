//! Search a synthetic database with planted homologs and print the ranked
//! hits with their alignments.

use swsearch::cli::write_search_results;
use swsearch::prelude::*;
use swsearch::seqio::Alphabet;
use swsearch::synth::SyntheticProteins;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut synth = SyntheticProteins::new(42);
    let query = synth.sequence("query planted", 180);

    let mut db = synth.database(2000, 20, 4000);
    for (i, rate) in [0.1, 0.3, 0.5].into_iter().enumerate() {
        let homolog = synth.mutate(query.codes(), rate);
        db.push(EncodedSequence::new(format!("planted_{i} mutation rate {rate}"), homolog));
    }

    let matrix = builtin_blosum62();
    let config = SearchConfig { worker_count: 4, top_k: 5, ..SearchConfig::default() };
    let results = run_search(query.codes(), &db, &matrix, &GapModel::default(), &config)?;
    write_search_results(&mut std::io::stdout().lock(), &query, &db, &results, &matrix, &Alphabet::protein())?;
    Ok(())
}
