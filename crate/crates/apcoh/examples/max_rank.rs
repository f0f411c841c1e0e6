//! The rank of H1 of a one-dimensional substitution tiling space on n
//! letters is at most n^2 - n + 1, and the bound is tight: the substitution
//! x_i -> x_i x_{i+1} (with x_{n-1} -> x_{n-1} x_0 x_0) attains it.
//!
//! ```sh
//! cargo run --example max_rank
//! ```

use apcoh::analysis::max_rank_substitution;
use apcoh::cohomology::rank_bound_report;
use apcoh::complex::Flavor;
use apcoh::word::SequenceSpec;

fn main() {
    let spec = SequenceSpec::constant(0, 1).unwrap();
    println!("n | substitution                      | rank H1 | bound n^2-n+1");
    for n in 2..=5 {
        let family = max_rank_substitution(n).unwrap();
        let a = family.alphabet();
        let rules: Vec<String> = (0..n)
            .map(|i| {
                format!(
                    "{}->{}",
                    a.letter(i),
                    a.render_word(family.substitution(0).image(i))
                )
            })
            .collect();
        let report = rank_bound_report(&family, &spec, Flavor::Ap).unwrap();
        println!(
            "{n} | {:<33} | {:>7} | {:>5} {}",
            rules.join(" "),
            report.rank,
            report.bound,
            if report.rank == report.bound {
                "(tight)"
            } else {
                ""
            }
        );
    }
}
