//! A family whose hulls are distinguished by cohomology: mixing the two
//! substitutions phi1: a->ab, b->bc, c->ca and phi2: a->bb, b->cc, c->ac in
//! different orders changes the rank of H1 (7, 5 or 3 depending on how
//! often windows of the form 2 1^(3i) 2 occur in the mixing sequence).
//!
//! ```sh
//! cargo run --example mixed_sequences
//! ```

use apcoh::cohomology;
use apcoh::complex::Flavor;
use apcoh::parse::parse_system;
use apcoh::word::SequenceSpec;

fn main() {
    let text = "\
alphabet: a b c
sub phi1: a -> ab / b -> bc / c -> ca
sub phi2: a -> bb / b -> cc / c -> ac
";
    let (family, _) = parse_system(text).unwrap();

    let cases = [
        ("1 1 1 1 ...", SequenceSpec::constant(0, 2).unwrap()),
        (
            "2 1 2 1 ...",
            SequenceSpec::new(vec![], vec![1, 0], 2).unwrap(),
        ),
        (
            "2 1 1 1 2 1 1 1 ...",
            SequenceSpec::new(vec![], vec![1, 0, 0, 0], 2).unwrap(),
        ),
        (
            "2 1 1 1 1 ... (one leading 2)",
            SequenceSpec::new(vec![1], vec![0], 2).unwrap(),
        ),
    ];

    println!("H1 of the mixed hull, flavor ap_left:");
    for (label, spec) in &cases {
        let h1 = cohomology::h1(&family, spec, Flavor::ApLeft).unwrap();
        println!("  s = {label:<28} rank {}   ({})", h1.group.rank, h1.group);
    }
    println!();
    println!("the same family, same letters, different mixing orders:");
    println!("  finitely many 2s        -> rank 7");
    println!("  no 2 1^(3i) 2 windows   -> rank 5");
    println!("  infinitely many of them -> rank 3");
}
