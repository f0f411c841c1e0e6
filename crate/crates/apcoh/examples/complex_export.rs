//! Exporting complexes as graphviz dot documents and as json.
//!
//! ```sh
//! cargo run --example complex_export > complex.dot && dot -Tpng complex.dot
//! ```

use apcoh::complex::{
    build_complex, export_dot, export_json, parse_json, Flavor, SystemAtPosition,
};
use apcoh::parse::parse_system;

fn main() {
    let (family, spec) = parse_system("a -> bbaaab / b -> bbab").unwrap();
    let spec = spec.unwrap();

    let ap = build_complex(&SystemAtPosition::new(&family, &spec, 0, Flavor::Ap));
    println!("{}", export_dot(&ap));

    let left = build_complex(&SystemAtPosition::new(&family, &spec, 0, Flavor::ApLeft));
    let json = export_json(&left);
    eprintln!("json export of the left-collared complex:");
    eprintln!("{json}");
    let roundtrip = parse_json(&json).unwrap();
    assert_eq!(roundtrip, left);
    eprintln!("json round-trip: ok");
}
