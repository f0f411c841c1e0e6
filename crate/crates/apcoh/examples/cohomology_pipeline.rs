//! The full computation, one stage at a time, for a -> bbaaab, b -> bbab:
//! complex, coboundary, bonding maps, cokernel, induced quotient map,
//! direct limit. The tiling space of this substitution has H1 = Z[1/6]^2.
//!
//! ```sh
//! cargo run --example cohomology_pipeline
//! ```

use apcoh::cohomology::direct_limit;
use apcoh::complex::{bonding_maps, build_complex, coboundary_matrix, Flavor, SystemAtPosition};
use apcoh::parse::parse_system;
use apcoh::zmatrix::{cokernel, induced_quotient_map};

fn main() {
    let (family, spec) = parse_system("a -> bbaaab / b -> bbab").unwrap();
    let spec = spec.unwrap();

    let sys0 = SystemAtPosition::new(&family, &spec, 0, Flavor::Ap);
    let sys1 = SystemAtPosition::new(&family, &spec, 1, Flavor::Ap);
    let complex = build_complex(&sys0);
    println!("edges (legal 3-letter words):");
    for e in 0..complex.edge_count() {
        print!(" {}", complex.edge_label(e));
    }
    println!();
    println!("vertices: {}", complex.vertex_names().join(" "));
    println!("(aa and bb split into two classes each)");

    let delta = coboundary_matrix(&complex);
    println!("\ncoboundary delta1 ({}x{}):", delta.rows(), delta.cols());
    print!("{}", delta.to_text());

    let maps = bonding_maps(&sys1, &sys0).unwrap();
    println!("\nedge map A1 ({}x{}):", maps.a1.rows(), maps.a1.cols());
    print!("{}", maps.a1.to_text());
    println!("\nvertex map A0 ({}x{}):", maps.a0.rows(), maps.a0.cols());
    print!("{}", maps.a0.to_text());

    let presentation = cokernel(&delta);
    println!(
        "\ncochain quotient Z^{} / im(delta1): free rank {}, torsion {:?}",
        delta.rows(),
        presentation.free_rank,
        presentation.torsion
    );

    let induced = induced_quotient_map(&maps.a1, &presentation, &presentation).unwrap();
    println!("induced map on the quotient:");
    print!("{}", induced.to_text());

    let group = direct_limit(&induced, &presentation).unwrap();
    println!("\nH1 = direct limit of the induced map = {group}");
}
