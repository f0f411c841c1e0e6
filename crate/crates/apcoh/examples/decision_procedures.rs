//! The decision procedures: primitivity of single substitutions, of whole
//! families (all products), of a family along a sequence, and the
//! self-correcting condition.
//!
//! ```sh
//! cargo run --example decision_procedures
//! ```

use apcoh::analysis::{self, DEFAULT_CAP};
use apcoh::parse::parse_system;
use apcoh::word::{compose, SequenceSpec, SubstitutionFamily};

fn main() {
    // two primitive substitutions whose composition is not primitive
    let np = parse_system("sub phi1: a -> bb / b -> aba\nsub phi2: a -> aab / b -> aa\n")
        .unwrap()
        .0;
    println!("phi1: a -> bb, b -> aba; phi2: a -> aab, b -> aa");
    for i in 0..2 {
        println!(
            "  {} primitive: {}",
            np.substitution(i).name(),
            analysis::is_primitive(np.alphabet(), np.substitution(i))
        );
    }
    let comp = compose(np.substitution(1), np.substitution(0)).unwrap();
    println!(
        "  phi2 . phi1 primitive: {}",
        analysis::is_primitive(np.alphabet(), &comp)
    );
    println!(
        "  family primitive: {}",
        analysis::is_family_primitive(&np, DEFAULT_CAP)
    );
    let alternating = SequenceSpec::new(vec![], vec![0, 1], 2).unwrap();
    println!(
        "  pair primitive along 1 2 1 2 ...: {}",
        analysis::is_pair_primitive(&np, &alternating, DEFAULT_CAP)
    );

    // a family that is primitive as a family
    let long = parse_system(
        "alphabet: a b c\nsub phi1: a -> ab / b -> bc / c -> ca\nsub phi2: a -> bb / b -> cc / c -> ac\n",
    )
    .unwrap()
    .0;
    println!("\nphi1: a->ab, b->bc, c->ca; phi2: a->bb, b->cc, c->ac");
    println!(
        "  family primitive: {}",
        analysis::is_family_primitive(&long, DEFAULT_CAP)
    );
    println!(
        "  self-correcting: {}",
        analysis::is_self_correcting(&long, DEFAULT_CAP)
    );

    // self-correcting fails for a -> aba, b -> bbab: aa regenerates from
    // pair seeds but never from a single letter
    let aba = parse_system("a -> aba / b -> bbab").unwrap().0;
    println!("\na -> aba, b -> bbab");
    println!(
        "  self-correcting: {}",
        analysis::is_self_correcting(&aba, DEFAULT_CAP)
    );

    // self-correcting is not closed under composition
    let pair = parse_system(
        "alphabet: a b c\nsub psi1: a -> bab / b -> cbc / c -> cac\nsub psi2: a -> cac / b -> aba / c -> cbc\n",
    )
    .unwrap()
    .0;
    println!("\npsi1: a->bab, b->cbc, c->cac; psi2: a->cac, b->aba, c->cbc");
    for i in 0..2 {
        let single =
            SubstitutionFamily::new(pair.alphabet().clone(), vec![pair.substitution(i).clone()])
                .unwrap();
        println!(
            "  {} self-correcting: {}",
            pair.substitution(i).name(),
            analysis::is_self_correcting(&single, DEFAULT_CAP)
        );
    }
    for (o, i) in [(0, 1), (1, 0)] {
        let c = compose(pair.substitution(o), pair.substitution(i)).unwrap();
        let single = SubstitutionFamily::new(pair.alphabet().clone(), vec![c]).unwrap();
        println!(
            "  {}.{} self-correcting: {}",
            pair.substitution(o).name(),
            pair.substitution(i).name(),
            analysis::is_self_correcting(&single, DEFAULT_CAP)
        );
    }
}
