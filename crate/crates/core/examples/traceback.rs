//! Recover and print an optimal local alignment.

use swsearch::align::{sw_align_traceback, AlignOp};
use swsearch::cli::render_alignment;
use swsearch::scoring::{builtin_blosum62, GapModel};
use swsearch::seqio::{Alphabet, EncodedSequence};

fn main() {
    let alphabet = Alphabet::protein();
    let matrix = builtin_blosum62();
    let gaps = GapModel::default();
    let query = EncodedSequence::from_residues("q", "PAWHEAEAGHWSTKLMNPQRSTVWY");
    let subject = EncodedSequence::from_residues("s", "HEAGAWGHEEPAWHEAGHWSTKMNPQRSAVWYGG");

    let aln = sw_align_traceback(query.codes(), subject.codes(), &matrix, &gaps, usize::MAX);
    println!("score {}  query {:?}  subject {:?}", aln.score.value(), aln.query_range, aln.subject_range);
    let count = |op| aln.operations.iter().filter(|&&o| o == op).count();
    println!(
        "{} matches, {} substitutions, {} inserts, {} deletes",
        count(AlignOp::Match),
        count(AlignOp::Substitute),
        count(AlignOp::Insert),
        count(AlignOp::Delete)
    );
    assert_eq!(aln.rescore(query.codes(), subject.codes(), &matrix, &gaps), Some(aln.score.value()));
    for line in render_alignment(&aln, query.codes(), subject.codes(), &matrix, &alphabet, 60) {
        println!("{line}");
    }

    // Too small a cap keeps the score and drops the edit script.
    let capped = sw_align_traceback(query.codes(), subject.codes(), &matrix, &gaps, 64);
    println!("with a 64-byte cap: capped={} score {}", capped.capped, capped.score.value());
}
