//! Perron-Frobenius eigen-data: the inflation factor and the tile lengths
//! of a primitive substitution, and the shared-eigenvector check that makes
//! a mixed family geometrically realizable with common tile lengths.
//!
//! ```sh
//! cargo run --example tile_lengths
//! ```

use apcoh::parse::parse_system;
use apcoh::word::{common_left_pf, pf_data, COMMON_PF_DEFAULT_TOL, PF_DEFAULT_TOL};

fn main() {
    let (single, _) = parse_system("a -> aba / b -> bbab").unwrap();
    let pf = pf_data(single.substitution(0), PF_DEFAULT_TOL).unwrap();
    println!("a -> aba, b -> bbab:");
    println!(
        "  inflation factor {:.10} (root of x^2 - 5x + 5)",
        pf.eigenvalue
    );
    println!(
        "  tile lengths a = {:.10}, b = {:.10} (residual {:.2e})",
        pf.left_eigenvector[0], pf.left_eigenvector[1], pf.residual
    );

    let (family, _) = parse_system(
        "alphabet: a b c\nsub phi1: a -> ab / b -> bc / c -> ca\nsub phi2: a -> bb / b -> cc / c -> ac\n",
    )
    .unwrap();
    let common = common_left_pf(&family, COMMON_PF_DEFAULT_TOL).unwrap();
    println!("\nphi1: a->ab, b->bc, c->ca and phi2: a->bb, b->cc, c->ac:");
    for (i, pf) in common.per_member.iter().enumerate() {
        println!(
            "  {}: lambda = {:.6}",
            family.substitution(i).name(),
            pf.eigenvalue
        );
    }
    match &common.vector {
        Some(v) => {
            let vs: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
            println!("  common left eigenvector: [{}]", vs.join(", "));
            println!("  both substitutions scale the same tile lengths");
        }
        None => println!(
            "  no common left eigenvector (best residual {:.2e})",
            common.worst_residual
        ),
    }
}
