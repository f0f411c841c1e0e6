//! H0 and H1 of (mixed) substitution tiling spaces as direct limits over
//! the tower of complexes.
//!
//! An eventually periodic mixing sequence makes the tower eventually
//! periodic, so the direct limit reduces to the period composite acting on
//! the cycle-start quotient; a finite prefix never changes a direct limit.
//! Closed-form group descriptions are emitted only when certified: `Z^r`
//! needs a unimodular restriction, `Z[1/d]^r` needs every prime of the
//! restricted determinant to divide some power of the restriction entrywise
//! at full corank, and a localized-plus-free splitting needs an invariant
//! sublattice with unimodular quotient. Everything else is reported as a
//! formal invariant tuple.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::analysis::{self, Verdict};
use crate::complex::{
    bonding_maps, build_complex, coboundary_matrix, ComplexError, Flavor, SystemAtPosition,
};
use crate::word::{SequenceSpec, SubstitutionFamily};
use crate::zmatrix::{
    self, cokernel, induced_quotient_map, kernel_basis, pow_mod, rank, rank_mod_p,
    saturated_column_basis, solve_exact, IntMatrix, QuotientPresentation, ZMatrixError,
};

#[derive(Debug, Error)]
pub enum CohomologyError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Matrix(#[from] ZMatrixError),
    #[error("direct limit needs a square matrix acting on the free part (got {rows}x{cols} on rank {rank})")]
    NotSquareOnFreePart {
        rows: usize,
        cols: usize,
        rank: usize,
    },
    #[error("internal: {0}")]
    Internal(String),
}

/// Certified shape of a direct-limit group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertifiedForm {
    Free,
    Localized(BigUint),
    LocalizedPlusFree {
        d: BigUint,
        localized_rank: usize,
        free_rank: usize,
    },
    Formal,
}

/// The data backing a group descriptor: the stabilized quotient dimension,
/// the induced period-composite matrix, and its restriction to the
/// saturated eventual image.
#[derive(Debug, Clone)]
pub struct PresentationCertificate {
    pub quotient_rank: usize,
    pub period_matrix: IntMatrix,
    pub restricted: IntMatrix,
    /// Torsion of the ambient cokernels; expected empty for graph
    /// coboundaries.
    pub torsion: Vec<BigInt>,
}

/// Result of a direct-limit computation: rank, per-prime divisibility
/// coranks, and a certified closed form when the checks pass.
#[derive(Debug, Clone)]
pub struct GroupDescriptor {
    pub rank: usize,
    /// Sorted (prime, corank) pairs with 1 <= corank <= rank.
    pub divisibility: Vec<(BigUint, usize)>,
    pub certified_form: CertifiedForm,
    pub certificate: PresentationCertificate,
}

/// The comparable content of a descriptor: rank, divisibility, form.
pub type GroupInvariants = (usize, Vec<(BigUint, usize)>, CertifiedForm);

impl GroupDescriptor {
    /// The comparable content: rank, divisibility and certified form.
    pub fn invariants(&self) -> GroupInvariants {
        (
            self.rank,
            self.divisibility.clone(),
            self.certified_form.clone(),
        )
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn power(base: &str, e: usize) -> String {
            if e == 1 {
                base.to_string()
            } else {
                format!("{base}^{e}")
            }
        }
        if self.rank == 0 {
            return f.write_str("0");
        }
        match &self.certified_form {
            CertifiedForm::Free => f.write_str(&power("Z", self.rank)),
            CertifiedForm::Localized(d) => f.write_str(&power(&format!("Z[1/{d}]"), self.rank)),
            CertifiedForm::LocalizedPlusFree {
                d,
                localized_rank,
                free_rank,
            } => write!(
                f,
                "{} (+) {}",
                power(&format!("Z[1/{d}]"), *localized_rank),
                power("Z", *free_rank)
            ),
            CertifiedForm::Formal => {
                let div: Vec<String> = self
                    .divisibility
                    .iter()
                    .map(|(p, c)| format!("({p},{c})"))
                    .collect();
                write!(f, "formal{{rank={}, div={{{}}}}}", self.rank, div.join(","))
            }
        }
    }
}

/// Trial division with a Miller-Rabin check on the remainder. `None` when a
/// composite remainder resists the small-prime sweep (practically out of
/// reach for desk-scale determinants).
fn factorize(n: &BigUint) -> Option<Vec<(BigUint, usize)>> {
    let mut n = n.clone();
    let mut out: Vec<(BigUint, usize)> = Vec::new();
    if n.is_zero() {
        return None;
    }
    let mut d = BigUint::from(2u32);
    let limit = BigUint::from(1u64 << 20);
    while &d * &d <= n && d <= limit {
        let mut e = 0usize;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += 1u32;
    }
    if n > BigUint::one() {
        if &d * &d > n || miller_rabin(&n) {
            out.push((n, 1));
        } else {
            return None;
        }
    }
    Some(out)
}

fn miller_rabin(n: &BigUint) -> bool {
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    if n == &two {
        return true;
    }
    if (n % &two).is_zero() {
        return false;
    }
    let n1 = n - &one;
    let mut d = n1.clone();
    let mut r = 0usize;
    while (&d % &two).is_zero() {
        d /= &two;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = BigUint::from(a);
        if &a % n == BigUint::zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 0..r.saturating_sub(1) {
            x = x.modpow(&two, n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Some power `m^k`, `1 <= k <= kmax`, has every entry divisible by `p`;
/// checked modulo `p` so entries never grow.
fn some_power_divisible(m: &IntMatrix, p: &BigUint, kmax: usize) -> bool {
    let reduced = pow_mod(m, 1, p);
    let mut acc = reduced.clone();
    for _ in 0..kmax {
        if acc.is_zero_matrix() {
            return true;
        }
        acc = pow_mod(&acc.mul(&reduced), 1, p);
    }
    false
}

/// Direct limit of `Z^r -> Z^r -> ...` under the period map, presented on
/// the free part of `ambient`. Emits `Free`, `Localized`, or a formal
/// invariant tuple; the localized-plus-free refinement is a separate step
/// so this operation stays conservative on mixed groups.
pub fn direct_limit(
    period_map: &IntMatrix,
    ambient: &QuotientPresentation,
) -> Result<GroupDescriptor, CohomologyError> {
    if !period_map.is_square() || period_map.rows() != ambient.free_rank {
        return Err(CohomologyError::NotSquareOnFreePart {
            rows: period_map.rows(),
            cols: period_map.cols(),
            rank: ambient.free_rank,
        });
    }
    let n = period_map.rows();
    let torsion = ambient.torsion.clone();
    let stable = period_map.pow(n);
    let rho = rank(&stable);
    let mut cert = PresentationCertificate {
        quotient_rank: n,
        period_matrix: period_map.clone(),
        restricted: IntMatrix::zero(0, 0),
        torsion: torsion.clone(),
    };
    if rho == 0 {
        return Ok(GroupDescriptor {
            rank: 0,
            divisibility: Vec::new(),
            certified_form: CertifiedForm::Free,
            certificate: cert,
        });
    }
    // restrict to the saturated eventual image lattice
    let basis = saturated_column_basis(&stable);
    let restricted = solve_exact(&basis, &period_map.mul(&basis))
        .ok_or_else(|| CohomologyError::Internal("eventual image is not invariant".to_string()))?;
    cert.restricted = restricted.clone();
    let det = zmatrix::det(&restricted)?;
    if det.is_zero() {
        return Err(CohomologyError::Internal(
            "restriction to the eventual image is singular".to_string(),
        ));
    }
    let has_torsion = !torsion.is_empty();
    if det.magnitude().is_one() && !has_torsion {
        return Ok(GroupDescriptor {
            rank: rho,
            divisibility: Vec::new(),
            certified_form: CertifiedForm::Free,
            certificate: cert,
        });
    }
    let factors = factorize(det.magnitude());
    let mut divisibility: Vec<(BigUint, usize)> = Vec::new();
    if let Some(factors) = &factors {
        for (p, _) in factors {
            let dp = rho - rank_mod_p(&pow_mod(&restricted, rho, p), p);
            if dp >= 1 {
                divisibility.push((p.clone(), dp));
            }
        }
    }
    let mut form = CertifiedForm::Formal;
    if !has_torsion && !det.magnitude().is_one() {
        if let Some(factors) = &factors {
            let all_full = divisibility.len() == factors.len()
                && divisibility.iter().all(|(_, dp)| *dp == rho);
            if all_full {
                let certified = factors
                    .iter()
                    .all(|(p, vp)| some_power_divisible(&restricted, p, 4 * rho * vp));
                if certified {
                    let d = factors.iter().fold(BigUint::one(), |acc, (p, _)| acc * p);
                    form = CertifiedForm::Localized(d);
                }
            }
        }
    }
    Ok(GroupDescriptor {
        rank: rho,
        divisibility,
        certified_form: form,
        certificate: cert,
    })
}

/// Attempt to upgrade a formal descriptor to `Z[1/d]^a (+) Z^b`: split off
/// the generalized eigendirections of +-1 as an unimodular quotient and
/// certify the complementary invariant sublattice as fully localized. The
/// splitting is sound because a direct limit is exact and a finitely
/// generated free quotient splits the sequence.
fn refine_split(desc: GroupDescriptor) -> GroupDescriptor {
    if desc.certified_form != CertifiedForm::Formal
        || desc.rank == 0
        || !desc.certificate.torsion.is_empty()
    {
        return desc;
    }
    let m = &desc.certificate.restricted;
    let rho = m.rows();
    // image of (M^2 - I)^rho spans everything off the +-1 eigendirections
    let mut m2i = m.mul(m);
    for i in 0..rho {
        let v = m2i.get(i, i) - BigInt::one();
        m2i.set(i, i, v);
    }
    let b = m2i.pow(rho);
    let r1 = rank(&b);
    if r1 == 0 || r1 == rho {
        return desc;
    }
    // saturated invariant sublattice; the action restricted to it in its
    // own basis (integrality of the solve certifies invariance)
    let u1 = saturated_column_basis(&b);
    let Some(m1) = solve_exact(&u1, &m.mul(&u1)) else {
        return desc;
    };
    // the quotient by a saturated sublattice is free; its induced map is
    // unimodular exactly when |det m| = |det m1|, and then its limit is
    // Z^(rho - r1) and the sequence splits
    let (Ok(dm), Ok(dm1)) = (zmatrix::det(m), zmatrix::det(&m1)) else {
        return desc;
    };
    if dm1.is_zero() || dm.magnitude() != dm1.magnitude() {
        return desc;
    }
    let sub = match direct_limit(&m1, &QuotientPresentation::free(r1)) {
        Ok(s) => s,
        Err(_) => return desc,
    };
    if sub.rank != r1 {
        return desc;
    }
    if let CertifiedForm::Localized(d) = sub.certified_form {
        return GroupDescriptor {
            certified_form: CertifiedForm::LocalizedPlusFree {
                d,
                localized_rank: r1,
                free_rank: rho - r1,
            },
            ..desc
        };
    }
    desc
}

/// The H1 tower: one quotient presentation per canonical position
/// (preperiod positions first, then the cycle slots) and the induced
/// connecting matrices. Entry `i` of `steps` maps the quotient at position
/// `i` into the one at position `i + 1`; the last entry wraps back into the
/// cycle. The connecting maps compose consistently by construction (each
/// one passed the chain-map and well-definedness checks).
#[derive(Debug, Clone)]
pub struct LimitSystem {
    pub presentations: Vec<QuotientPresentation>,
    pub steps: Vec<IntMatrix>,
    pub cycle_start: usize,
    pub period: usize,
}

impl LimitSystem {
    /// Composite of the cycle's step matrices: the endomorphism of the
    /// cycle-start quotient whose direct limit is H1.
    pub fn period_composite(&self) -> IntMatrix {
        let mut composite =
            IntMatrix::identity(self.presentations[self.cycle_start].free_rank);
        for step in self.cycle_start..self.cycle_start + self.period {
            composite = self.steps[step].mul(&composite);
        }
        composite
    }

    fn collected_torsion(&self) -> Vec<BigInt> {
        let mut torsion = Vec::new();
        for p in &self.presentations[self.cycle_start..] {
            torsion.extend(p.torsion.iter().cloned());
        }
        torsion
    }
}

/// Build the H1 tower of a system: cokernel presentations of the
/// coboundaries at every canonical position and the induced bonding-step
/// matrices between them.
pub fn h1_limit_system(
    family: &SubstitutionFamily,
    spec: &SequenceSpec,
    flavor: Flavor,
) -> Result<LimitSystem, CohomologyError> {
    let cycle_start = spec.preperiod().len();
    let period = spec.period().len();
    let npos = spec.position_count();
    let presentations: Vec<QuotientPresentation> = (0..npos)
        .map(|p| {
            let sys = SystemAtPosition::new(family, spec, p, flavor);
            cokernel(&coboundary_matrix(&build_complex(&sys)))
        })
        .collect();
    let mut steps = Vec::with_capacity(npos);
    for position in 0..npos {
        let src_pos = position + 1;
        let src_sys = SystemAtPosition::new(family, spec, src_pos, flavor);
        let tgt_sys = SystemAtPosition::new(family, spec, position, flavor);
        let maps = bonding_maps(&src_sys, &tgt_sys)?;
        let src_pres = &presentations[spec.canonical_position(src_pos)];
        let tgt_pres = &presentations[position];
        steps.push(induced_quotient_map(&maps.a1, src_pres, tgt_pres)?);
    }
    Ok(LimitSystem {
        presentations,
        steps,
        cycle_start,
        period,
    })
}

/// Warnings attached to an H1 computation.
#[derive(Debug, Clone)]
pub struct H1Outcome {
    pub group: GroupDescriptor,
    pub warnings: Vec<String>,
}

/// H1 of the system: cokernel presentations per position, induced maps per
/// bonding step, and the direct-limit analysis of the period composite.
/// Full-alphabet flavors only compute the tiling-space H1 when the family
/// is self-correcting; otherwise a warning is attached.
pub fn h1(
    family: &SubstitutionFamily,
    spec: &SequenceSpec,
    flavor: Flavor,
) -> Result<H1Outcome, CohomologyError> {
    let mut warnings = Vec::new();
    if flavor.is_full() {
        let sc = analysis::is_self_correcting(family, analysis::DEFAULT_CAP);
        match sc.verdict {
            Verdict::Yes => {}
            Verdict::No => warnings.push(format!(
                "system is not self-correcting (witness word {}); H1 on flavor {} may differ from the tiling-space H1",
                sc.certificate.as_deref().unwrap_or("-"),
                flavor
            )),
            Verdict::Unknown => warnings.push(format!(
                "self-correcting check is inconclusive at the default cap; H1 on flavor {flavor} may differ from the tiling-space H1"
            )),
        }
    }
    let tower = h1_limit_system(family, spec, flavor)?;
    let torsion = tower.collected_torsion();
    let mut start = tower.presentations[tower.cycle_start].clone();
    start.torsion = torsion.clone();
    let mut group = direct_limit(&tower.period_composite(), &start)?;
    group = refine_split(group);
    if !torsion.is_empty() {
        group.certified_form = CertifiedForm::Formal;
        warnings.push("cokernel torsion encountered; reporting a formal invariant tuple".into());
    }
    Ok(H1Outcome { group, warnings })
}

/// H0: the direct limit of the coboundary kernels under vertex-map
/// pullbacks, computed by restricting each A0 to the kernel bases.
pub fn h0(
    family: &SubstitutionFamily,
    spec: &SequenceSpec,
    flavor: Flavor,
) -> Result<GroupDescriptor, CohomologyError> {
    let m = spec.preperiod().len();
    let l = spec.period().len();
    let kernels: Vec<IntMatrix> = (0..l)
        .map(|j| {
            let sys = SystemAtPosition::new(family, spec, m + j, flavor);
            kernel_basis(&coboundary_matrix(&build_complex(&sys)))
        })
        .collect();
    let mut composite: Option<IntMatrix> = None;
    for step in 1..=l {
        let src_pos = m + step;
        let tgt_pos = m + step - 1;
        let src_sys = SystemAtPosition::new(family, spec, src_pos, flavor);
        let tgt_sys = SystemAtPosition::new(family, spec, tgt_pos, flavor);
        let maps = bonding_maps(&src_sys, &tgt_sys)?;
        let k_src = &kernels[(src_pos - m) % l];
        let k_tgt = &kernels[(tgt_pos - m) % l];
        let image = maps.a0.mul(k_tgt);
        let step_matrix = solve_exact(k_src, &image).ok_or_else(|| {
            CohomologyError::Internal(
                "A0 does not carry the coboundary kernel into the kernel".to_string(),
            )
        })?;
        composite = Some(match composite {
            None => step_matrix,
            Some(c) => step_matrix.mul(&c),
        });
    }
    let composite = composite.expect("period is non-empty");
    let ambient = QuotientPresentation::free(kernels[0].cols());
    direct_limit(&composite, &ambient)
}

/// Rank of H1 against the alphabet bound `n^2 - n + 1`.
#[derive(Debug, Clone)]
pub struct RankBoundReport {
    pub rank: usize,
    pub bound: usize,
    pub ok: bool,
}

pub fn rank_bound_report(
    family: &SubstitutionFamily,
    spec: &SequenceSpec,
    flavor: Flavor,
) -> Result<RankBoundReport, CohomologyError> {
    let n = family.alphabet().len();
    let bound = n * n - n + 1;
    let outcome = h1(family, spec, flavor)?;
    Ok(RankBoundReport {
        rank: outcome.group.rank,
        bound,
        ok: outcome.group.rank <= bound,
    })
}

/// Convenience: `h1` invariants only, for flavor comparisons.
pub fn h1_invariants(
    family: &SubstitutionFamily,
    spec: &SequenceSpec,
    flavor: Flavor,
) -> Result<GroupInvariants, CohomologyError> {
    Ok(h1(family, spec, flavor)?.group.invariants())
}

/// `true` when a descriptor prints as the free group of the given rank.
pub fn is_free_of_rank(g: &GroupDescriptor, rank: usize) -> bool {
    g.rank == rank && g.certified_form == CertifiedForm::Free
}
