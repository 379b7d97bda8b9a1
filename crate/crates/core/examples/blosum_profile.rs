//! Scoring matrices, gap models and query profiles.

use swsearch::scoring::{builtin_blosum62, make_profile, parse_matrix_str, GapModel};
use swsearch::seqio::{Alphabet, EncodedSequence};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alphabet = Alphabet::protein();
    let blosum = builtin_blosum62();
    let code = |c: u8| alphabet.encode_byte(c);
    println!("{}: scores in {}..={}", blosum.name(), blosum.min_score(), blosum.max_score());
    println!("W/W = {}, A/R = {}", blosum.score(code(b'W'), code(b'W')), blosum.score(code(b'A'), code(b'R')));

    // A custom matrix; symbols it does not list score -1 against everything.
    let tiny = parse_matrix_str("   A  R\nA  1 -3\nR -3  7\n", "tiny")?;
    println!("tiny R/R = {}, tiny A/W = {}", tiny.score(code(b'R'), code(b'R')), tiny.score(code(b'A'), code(b'W')));

    let gaps = GapModel::default();
    println!(
        "gap open {} extend {}: lengths 1..=4 cost {:?}",
        gaps.open(),
        gaps.extend(),
        (1..=4).map(|l| gaps.cost(l)).collect::<Vec<_>>()
    );
    assert!(GapModel::new(-1, 2).is_err());

    // Profile row for subject residue s holds score(s, query[j]) for every j.
    let query = EncodedSequence::from_residues("q", "HEAGAWGHEE");
    let profile = make_profile(&blosum, query.codes())?;
    for s in *b"WHP" {
        println!("row {} {:?}", s as char, profile.row(code(s)));
    }
    Ok(())
}
