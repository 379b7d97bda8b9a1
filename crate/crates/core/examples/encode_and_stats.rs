//! Parse FASTA, encode residues and print database statistics.
//!
//! Run with `cargo run --example encode_and_stats [path.fasta]`; without a
//! path it reads the checked-in synthetic subset.

use swsearch::seqio::{encode_sequence, load_database, parse_fasta, Alphabet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alphabet = Alphabet::protein();

    let text = ">sp|P1 toy\nMKTAYIAKQR\nQISFVKSHFS\n>odd lower-case and unknowns\nmkt-JOU*\n";
    for record in parse_fasta(text.as_bytes())? {
        let (seq, unknown) = encode_sequence(&record, &alphabet);
        println!("{:<30} {:>3} residues, {unknown} unknown", record.header, seq.len());
        println!("  codes {:?}", seq.codes());
        println!("  back  {}", seq.to_residues(&alphabet));
    }

    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/synthetic_1000.fasta").to_string());
    let db = load_database(&path)?;
    println!(
        "\n{path}\n{} sequences, {} residues, max {}, {} unknown, {} empty",
        db.num_sequences(),
        db.total_residues(),
        db.max_length(),
        db.unknown_residues(),
        db.empty_records()
    );
    Ok(())
}
