//! End-to-end tour on the smallest interesting input: the Fibonacci
//! substitution a -> ab, b -> a.
//!
//! ```sh
//! cargo run --example fibonacci
//! ```

use apcoh::analysis;
use apcoh::cohomology;
use apcoh::complex::{build_complex, Flavor, SystemAtPosition};
use apcoh::parse::parse_system;
use apcoh::word::{self, legal_words};

fn main() {
    let (family, spec) = parse_system("sub phi: a -> ab / b -> a").unwrap();
    let spec = spec.unwrap();
    let phi = family.substitution(0);
    let alphabet = family.alphabet();

    println!("substitution: a -> ab, b -> a");
    let primitive = analysis::is_primitive(alphabet, phi);
    println!("primitive: {primitive}");

    let pf = word::pf_data(phi, word::PF_DEFAULT_TOL).unwrap();
    println!("inflation factor: {:.10} (the golden ratio)", pf.eigenvalue);
    println!(
        "tile lengths: a = {:.10}, b = {:.10}",
        pf.left_eigenvector[0], pf.left_eigenvector[1]
    );

    let l2: Vec<String> = legal_words(&family, &spec, 0, 2)
        .iter()
        .map(|w| alphabet.render_word(w))
        .collect();
    println!("legal 2-letter words: {}", l2.join(" "));

    for flavor in [Flavor::Ap, Flavor::ApLeft] {
        let c = build_complex(&SystemAtPosition::new(&family, &spec, 0, flavor));
        println!(
            "complex {}: {} edges, {} vertices",
            flavor,
            c.edge_count(),
            c.vertex_count()
        );
    }

    let h0 = cohomology::h0(&family, &spec, Flavor::Ap).unwrap();
    let h1 = cohomology::h1(&family, &spec, Flavor::Ap).unwrap();
    println!("H0 = {h0}");
    println!("H1 = {}", h1.group);
}
