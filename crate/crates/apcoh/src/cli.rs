//! Command-line front end.
//!
//! ```text
//! apcoh analyze FILE [--matrices]
//! apcoh cohomology FILE [--flavor F] [--sequence EXPR]
//! apcoh matrices FILE [--flavor F] [--sequence EXPR]
//! apcoh complex FILE --emit dot|json [--flavor F] [--sequence EXPR]
//! apcoh check FILE --what primitivity|self-correcting [--cap N]
//! ```
//!
//! Exit status 0 on success, 1 on input errors, 2 on internal assertion
//! failures.

use std::fmt::Write as _;

use crate::analysis;
use crate::cohomology::{self, CohomologyError};
use crate::complex::{self, Flavor, SystemAtPosition};
use crate::parse;
use crate::report;
use crate::word::{SequenceSpec, SubstitutionFamily};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

/// What `run` hands back to the binary: exit status plus the two output
/// streams, already fully rendered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutcome {
    fn ok(stdout: String) -> Self {
        CliOutcome {
            status: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn input_error(msg: String) -> Self {
        CliOutcome {
            status: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }

    fn internal_error(msg: String) -> Self {
        CliOutcome {
            status: EXIT_INTERNAL,
            stdout: String::new(),
            stderr: format!("internal error: {msg}\n"),
        }
    }
}

const USAGE: &str = "\
usage: apcoh <command> FILE [options]

commands:
  analyze FILE [--matrices]                    full report
  cohomology FILE [--flavor F] [--sequence E]  H0 and H1 group descriptors
  matrices FILE [--flavor F] [--sequence E]    delta1, A0, A1 in text form
  complex FILE --emit dot|json [--flavor F] [--sequence E]
                                               export the position-0 complex
  check FILE --what primitivity|self-correcting [--cap N]
                                               decision procedures

flavors: ap, ap_modified, ap_full, ap_left, ap_left_modified
sequence expressions use the file grammar, e.g. \"phi2 | phi1 phi2\"
";

struct Args {
    file: String,
    flavor: Option<Flavor>,
    sequence: Option<String>,
    emit: Option<String>,
    what: Option<String>,
    cap: Option<usize>,
    matrices: bool,
}

fn parse_args(mut rest: std::slice::Iter<'_, String>) -> Result<Args, String> {
    let file = rest.next().ok_or("missing FILE argument")?.clone();
    if file.starts_with("--") {
        return Err(format!("expected FILE before flags, got {file}"));
    }
    let mut args = Args {
        file,
        flavor: None,
        sequence: None,
        emit: None,
        what: None,
        cap: None,
        matrices: false,
    };
    while let Some(flag) = rest.next() {
        match flag.as_str() {
            "--flavor" => {
                let v = rest.next().ok_or("--flavor needs a value")?;
                args.flavor =
                    Some(Flavor::parse(v).ok_or_else(|| format!("unknown flavor {v:?}"))?);
            }
            "--sequence" => {
                args.sequence = Some(rest.next().ok_or("--sequence needs a value")?.clone());
            }
            "--emit" => {
                args.emit = Some(rest.next().ok_or("--emit needs a value")?.clone());
            }
            "--what" => {
                args.what = Some(rest.next().ok_or("--what needs a value")?.clone());
            }
            "--cap" => {
                let v = rest.next().ok_or("--cap needs a value")?;
                args.cap = Some(v.parse().map_err(|_| format!("bad --cap value {v:?}"))?);
            }
            "--matrices" => args.matrices = true,
            other => return Err(format!("unknown flag {other:?}")),
        }
    }
    Ok(args)
}

struct LoadedSystem {
    family: SubstitutionFamily,
    spec: Option<SequenceSpec>,
}

fn load(args: &Args) -> Result<LoadedSystem, String> {
    let text = std::fs::read_to_string(&args.file)
        .map_err(|e| format!("cannot read {}: {e}", args.file))?;
    let (family, mut spec) = parse::parse_system(&text).map_err(|e| e.to_string())?;
    if let Some(expr) = &args.sequence {
        spec = Some(parse::parse_sequence_override(expr, &family).map_err(|e| e.to_string())?);
    }
    Ok(LoadedSystem { family, spec })
}

fn require_spec(sys: &LoadedSystem) -> Result<&SequenceSpec, String> {
    sys.spec.as_ref().ok_or_else(|| {
        "the family has several substitutions but no mixing sequence; add a 'sequence:' \
         line or pass --sequence"
            .to_string()
    })
}

fn internal(e: &CohomologyError) -> bool {
    !matches!(e, CohomologyError::NotSquareOnFreePart { .. })
}

/// Run the CLI on an argument list (without the program name).
pub fn run(argv: &[String]) -> CliOutcome {
    let Some(command) = argv.first() else {
        return CliOutcome::input_error(format!("missing command\n{USAGE}"));
    };
    match command.as_str() {
        "analyze" | "cohomology" | "matrices" | "complex" | "check" => {}
        "--help" | "-h" | "help" => {
            return CliOutcome::ok(USAGE.to_string());
        }
        other => {
            return CliOutcome::input_error(format!("unknown command {other:?}\n{USAGE}"));
        }
    }
    let args = match parse_args(argv[1..].iter()) {
        Ok(a) => a,
        Err(e) => return CliOutcome::input_error(e),
    };
    let sys = match load(&args) {
        Ok(s) => s,
        Err(e) => return CliOutcome::input_error(e),
    };
    let flavor = args
        .flavor
        .unwrap_or_else(|| report::default_flavor(&sys.family));

    match command.as_str() {
        "analyze" => match report::analyze(&sys.family, sys.spec.as_ref(), args.matrices) {
            Ok(r) => CliOutcome::ok(r.text),
            Err(e) if internal(&e) => CliOutcome::internal_error(e.to_string()),
            Err(e) => CliOutcome::input_error(e.to_string()),
        },
        "cohomology" => {
            let spec = match require_spec(&sys) {
                Ok(s) => s,
                Err(e) => return CliOutcome::input_error(e),
            };
            let mut out = String::new();
            let g0 = match cohomology::h0(&sys.family, spec, flavor) {
                Ok(g) => g,
                Err(e) => {
                    return if internal(&e) {
                        CliOutcome::internal_error(e.to_string())
                    } else {
                        CliOutcome::input_error(e.to_string())
                    };
                }
            };
            let h1 = match cohomology::h1(&sys.family, spec, flavor) {
                Ok(h) => h,
                Err(e) => {
                    return if internal(&e) {
                        CliOutcome::internal_error(e.to_string())
                    } else {
                        CliOutcome::input_error(e.to_string())
                    };
                }
            };
            let _ = writeln!(out, "H0 = {g0}");
            let _ = writeln!(out, "H1 = {}", h1.group);
            for w in &h1.warnings {
                let _ = writeln!(out, "warning: {w}");
            }
            CliOutcome::ok(out)
        }
        "matrices" => {
            let spec = match require_spec(&sys) {
                Ok(s) => s,
                Err(e) => return CliOutcome::input_error(e),
            };
            match report::matrices_text(&sys.family, spec, flavor) {
                Ok(t) => CliOutcome::ok(t),
                Err(e) if internal(&e) => CliOutcome::internal_error(e.to_string()),
                Err(e) => CliOutcome::input_error(e.to_string()),
            }
        }
        "complex" => {
            let spec = match require_spec(&sys) {
                Ok(s) => s,
                Err(e) => return CliOutcome::input_error(e),
            };
            let Some(emit) = args.emit.as_deref() else {
                return CliOutcome::input_error("complex needs --emit dot|json".to_string());
            };
            let c = complex::build_complex(&SystemAtPosition::new(&sys.family, spec, 0, flavor));
            match emit {
                "dot" => CliOutcome::ok(complex::export_dot(&c)),
                "json" => CliOutcome::ok(complex::export_json(&c)),
                other => CliOutcome::input_error(format!("unknown --emit format {other:?}")),
            }
        }
        "check" => {
            let cap = args.cap.unwrap_or(analysis::DEFAULT_CAP);
            if cap == 0 {
                return CliOutcome::input_error("--cap must be at least 1".to_string());
            }
            let what = args.what.as_deref().unwrap_or("primitivity");
            let mut out = String::new();
            match what {
                "primitivity" => {
                    if sys.family.len() == 1 {
                        let d = analysis::is_primitive(
                            sys.family.alphabet(),
                            sys.family.substitution(0),
                        );
                        let _ = writeln!(out, "{d}");
                    } else {
                        let d = analysis::is_family_primitive(&sys.family, cap);
                        let _ = writeln!(out, "{d}");
                        for i in 0..sys.family.len() {
                            let m = analysis::is_primitive(
                                sys.family.alphabet(),
                                sys.family.substitution(i),
                            );
                            let _ =
                                writeln!(out, "member {}: {m}", sys.family.substitution(i).name());
                        }
                        if let Some(spec) = &sys.spec {
                            let p = analysis::is_pair_primitive(&sys.family, spec, cap);
                            let _ = writeln!(out, "pair (with sequence): {p}");
                        }
                    }
                }
                "self-correcting" => {
                    let d = analysis::is_self_correcting(&sys.family, cap);
                    let _ = writeln!(out, "{d}");
                }
                other => {
                    return CliOutcome::input_error(format!(
                        "unknown --what {other:?} (primitivity or self-correcting)"
                    ));
                }
            }
            CliOutcome::ok(out)
        }
        _ => unreachable!("command validated above"),
    }
}

/// Convenience for tests: run with string literals.
pub fn run_args(argv: &[&str]) -> CliOutcome {
    let owned: Vec<String> = argv.iter().map(|s| s.to_string()).collect();
    run(&owned)
}
