//! Decision procedures: primitivity of a single substitution, of a family
//! (all products), and of a family along a mixing sequence, plus the
//! self-correcting condition.
//!
//! Primitivity questions reduce to positivity of boolean matrix products;
//! the family versions track the finite automaton of zero patterns, so the
//! verdicts are exact. The self-correcting check compares 2-letter subwords
//! of pair-seeded composite images against the letter-generated language of
//! the same composite prefixes, level by level, with cycle detection over
//! the level sets.

use std::collections::BTreeSet;
use std::fmt;

use crate::word::{
    Alphabet, LetterId, SequenceSpec, Substitution, SubstitutionFamily, Word, WordError,
};

/// Default search depth for the cap-bounded procedures.
pub const DEFAULT_CAP: usize = 12;

/// Internal guard for the exact automaton iterations; generously above
/// anything a desk-scale input can produce.
const AUTOMATON_GUARD: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

/// Outcome of a decision procedure. A yes carries the minimal witness
/// depth, a no carries human-readable evidence.
#[derive(Debug, Clone)]
pub struct Decision {
    pub verdict: Verdict,
    pub witness: Option<usize>,
    pub certificate: Option<String>,
}

impl Decision {
    fn yes(witness: usize) -> Self {
        Decision {
            verdict: Verdict::Yes,
            witness: Some(witness),
            certificate: None,
        }
    }

    fn no(certificate: String) -> Self {
        Decision {
            verdict: Verdict::No,
            witness: None,
            certificate: Some(certificate),
        }
    }

    fn unknown(evidence: Option<String>) -> Self {
        Decision {
            verdict: Verdict::Unknown,
            witness: None,
            certificate: evidence,
        }
    }

    pub fn is_yes(&self) -> bool {
        self.verdict == Verdict::Yes
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.verdict {
            Verdict::Yes => write!(f, "yes (n={})", self.witness.unwrap_or(0)),
            Verdict::No => write!(
                f,
                "no (certificate: {})",
                self.certificate.as_deref().unwrap_or("-")
            ),
            Verdict::Unknown => write!(f, "unknown"),
        }
    }
}

/// Boolean occurrence pattern of a substitution matrix.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Pattern {
    n: usize,
    bits: Vec<bool>,
}

impl Pattern {
    fn of(sub: &Substitution) -> Self {
        let n = sub.alphabet_len();
        let mut bits = vec![false; n * n];
        for j in 0..n {
            for &i in sub.image(j).letters() {
                bits[i * n + j] = true;
            }
        }
        Pattern { n, bits }
    }

    fn mul(&self, other: &Pattern) -> Pattern {
        let n = self.n;
        let mut bits = vec![false; n * n];
        for i in 0..n {
            for k in 0..n {
                if self.bits[i * n + k] {
                    for j in 0..n {
                        if other.bits[k * n + j] {
                            bits[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Pattern { n, bits }
    }

    fn is_positive(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    fn first_zero(&self) -> Option<(usize, usize)> {
        self.bits
            .iter()
            .position(|&b| !b)
            .map(|p| (p / self.n, p % self.n))
    }
}

/// Minimal `n` with `A(phi)^n` strictly positive, or a zero position of the
/// stabilized pattern. Exact: the Wielandt bound `m^2 - 2m + 2` caps the
/// search.
pub(crate) fn primitive_matrix_witness(sub: &Substitution) -> Result<usize, (LetterId, LetterId)> {
    let m = sub.alphabet_len();
    let bound = (m * m).saturating_sub(2 * m) + 2;
    let a = Pattern::of(sub);
    let mut p = a.clone();
    for n in 1..=bound.max(1) {
        if p.is_positive() {
            return Ok(n);
        }
        p = p.mul(&a);
    }
    // recompute the pattern at the bound for the certificate
    let mut p = a.clone();
    for _ in 1..bound.max(1) {
        p = p.mul(&a);
    }
    let (i, j) = p.first_zero().expect("non-positive at the bound");
    Err((i, j))
}

/// Primitivity of one substitution: some power of the substitution maps
/// every letter to a word containing every letter. Never returns unknown.
pub fn is_primitive(alphabet: &Alphabet, sub: &Substitution) -> Decision {
    match primitive_matrix_witness(sub) {
        Ok(n) => Decision::yes(n),
        Err((i, j)) => Decision::no(format!(
            "({}, {}): {} never occurs in any iterated image of {}",
            alphabet.letter(i),
            alphabet.letter(j),
            alphabet.letter(i),
            alphabet.letter(j)
        )),
    }
}

/// Family primitivity: some `n` makes every length-`n` product of members
/// positive. Tracked on the finite automaton of zero patterns under right
/// multiplication by the generators, so the verdict is exact; the level
/// sets either empty out (yes, minimal `n`) or cycle (no). The cap is kept
/// for interface parity only: cycle detection terminates on its own.
pub fn is_family_primitive(family: &SubstitutionFamily, _cap: usize) -> Decision {
    let gens: Vec<Pattern> = family.substitutions().iter().map(Pattern::of).collect();
    let names: Vec<&str> = family.substitutions().iter().map(|s| s.name()).collect();
    // non-positive products of the current length, with one witness index
    // word per pattern
    let mut bad: Vec<(Pattern, Vec<usize>)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if !g.is_positive() {
            bad.push((g.clone(), vec![i]));
        }
    }
    if bad.is_empty() {
        return Decision::yes(1);
    }
    let mut seen: BTreeSet<Vec<Pattern>> = BTreeSet::new();
    seen.insert(bad.iter().map(|(p, _)| p.clone()).collect());
    for n in 2..=AUTOMATON_GUARD {
        let mut next: Vec<(Pattern, Vec<usize>)> = Vec::new();
        let mut keys: BTreeSet<Pattern> = BTreeSet::new();
        for (p, word) in &bad {
            for (i, g) in gens.iter().enumerate() {
                let q = p.mul(g);
                if !q.is_positive() && keys.insert(q.clone()) {
                    let mut w = word.clone();
                    w.push(i);
                    next.push((q, w));
                }
            }
        }
        if next.is_empty() {
            return Decision::yes(n);
        }
        let key: Vec<Pattern> = {
            let mut v: Vec<Pattern> = next.iter().map(|(p, _)| p.clone()).collect();
            v.sort();
            v
        };
        if seen.contains(&key) {
            let (_, word) = &next[0];
            let word_names: Vec<&str> = word.iter().map(|&i| names[i]).collect();
            return Decision::no(format!(
                "the zero pattern of the product {} recurs under extension; \
                 no product length makes all products positive",
                word_names.join(" ")
            ));
        }
        seen.insert(key);
        bad = next;
    }
    Decision::unknown(Some("zero-pattern automaton guard exceeded".into()))
}

/// Primitivity of the pair `(family, sequence)`: one `n` must make every
/// window product of length `n` positive, over every start position of the
/// eventually periodic sequence. Exact by cycle detection per position;
/// the cap is kept for interface parity only.
pub fn is_pair_primitive(
    family: &SubstitutionFamily,
    spec: &SequenceSpec,
    _cap: usize,
) -> Decision {
    let gens: Vec<Pattern> = family.substitutions().iter().map(Pattern::of).collect();
    let mut worst = 0usize;
    for start in 0..spec.position_count() {
        let mut p: Option<Pattern> = None;
        let mut seen: BTreeSet<(Pattern, usize)> = BTreeSet::new();
        let mut n = 0usize;
        loop {
            n += 1;
            if n > AUTOMATON_GUARD {
                return Decision::unknown(Some(format!(
                    "window automaton guard exceeded at start position {start}"
                )));
            }
            let g = &gens[spec.index_at(start + n)];
            let q = match &p {
                None => g.clone(),
                Some(p) => p.mul(g),
            };
            if q.is_positive() {
                worst = worst.max(n);
                break;
            }
            let phase = spec.canonical_position(start + n);
            if !seen.insert((q.clone(), phase)) {
                return Decision::no(format!(
                    "window products starting at position {start} keep a zero pattern forever"
                ));
            }
            p = Some(q);
        }
    }
    Decision::yes(worst)
}

/// Joint letter/pair reachability state: the letters and the 2-letter
/// subwords realizable in a set of words pushed through composites.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct LangState {
    letters: BTreeSet<LetterId>,
    pairs: BTreeSet<(LetterId, LetterId)>,
}

impl LangState {
    fn step(&self, sub: &Substitution) -> LangState {
        let mut letters = BTreeSet::new();
        let mut pairs = BTreeSet::new();
        for &x in &self.letters {
            let img = sub.image(x);
            for &l in img.letters() {
                letters.insert(l);
            }
            for w in img.subwords(2) {
                pairs.insert((w.at(0), w.at(1)));
            }
        }
        for &(x, y) in &self.pairs {
            let ix = sub.image(x);
            let iy = sub.image(y);
            pairs.insert((ix.at(ix.len() - 1), iy.at(0)));
        }
        LangState { letters, pairs }
    }
}

/// Self-correcting condition, family-quantified: for some depth `n`, every
/// 2-letter subword produced from a pair seed by a length-`n` composite is
/// already produced from a single-letter seed by a prefix of the same
/// composite. Levels are checked for increasing `n`; violation sets that
/// cycle yield a no, a cap stop yields unknown.
pub fn is_self_correcting(family: &SubstitutionFamily, cap: usize) -> Decision {
    let nletters = family.alphabet().len();
    let all_letters: BTreeSet<LetterId> = (0..nletters).collect();
    let all_pairs: BTreeSet<(LetterId, LetterId)> = (0..nletters)
        .flat_map(|x| (0..nletters).map(move |y| (x, y)))
        .collect();
    let pair_seed = LangState {
        letters: all_letters.clone(),
        pairs: all_pairs,
    };
    let letter_seed = LangState {
        letters: all_letters.clone(),
        pairs: BTreeSet::new(),
    };

    // per composite tuple: (pair-seeded state, union of prefix-product
    // letter-seeded states); tuples grow by prepending an outermost
    // substitution, which keeps each level a finite set of state pairs
    let mut level: BTreeSet<(LangState, LangState)> = family
        .substitutions()
        .iter()
        .map(|s| (pair_seed.step(s), letter_seed.step(s)))
        .collect();
    let mut seen: BTreeSet<Vec<(LangState, LangState)>> = BTreeSet::new();

    let render_pair = |p: (LetterId, LetterId)| {
        let a = family.alphabet();
        if a.single_char() {
            format!("{}{}", a.letter(p.0), a.letter(p.1))
        } else {
            format!("{} {}", a.letter(p.0), a.letter(p.1))
        }
    };

    for n in 1.. {
        let mut violations: BTreeSet<(LetterId, LetterId)> = BTreeSet::new();
        for (p, u) in &level {
            for pr in &p.pairs {
                if !u.pairs.contains(pr) {
                    violations.insert(*pr);
                }
            }
        }
        if violations.is_empty() {
            return Decision::yes(n);
        }
        let key: Vec<(LangState, LangState)> = level.iter().cloned().collect();
        if seen.contains(&key) {
            let w = *violations.iter().next().expect("non-empty");
            return Decision::no(render_pair(w));
        }
        seen.insert(key);
        if n >= cap {
            let w = *violations.iter().next().expect("non-empty");
            return Decision::unknown(Some(render_pair(w)));
        }
        let mut next = BTreeSet::new();
        for (p, u) in &level {
            for s in family.substitutions() {
                let mut u_seed = u.clone();
                u_seed.letters = all_letters.clone();
                next.insert((p.step(s), u_seed.step(s)));
            }
        }
        level = next;
    }
    unreachable!("the loop exits through one of the verdicts")
}

/// The maximum-rank substitution on `n` letters:
/// `x_i -> x_i x_{i+1}` for `i < n-1` and `x_{n-1} -> x_{n-1} x_0 x_0`.
/// Returned as a singleton family so it carries its alphabet.
pub fn max_rank_substitution(n: usize) -> Result<SubstitutionFamily, WordError> {
    if n < 2 {
        return Err(WordError::EmptyAlphabet);
    }
    let letters: Vec<String> = (0..n)
        .map(|i| {
            if n <= 26 {
                char::from(b'a' + i as u8).to_string()
            } else {
                format!("x{i}")
            }
        })
        .collect();
    let alphabet = Alphabet::new(letters)?;
    let mut images = Vec::new();
    for i in 0..n {
        if i < n - 1 {
            images.push(Word::new(vec![i, i + 1]));
        } else {
            images.push(Word::new(vec![n - 1, 0, 0]));
        }
    }
    let sub = Substitution::new("phi", images)?;
    SubstitutionFamily::new(alphabet, vec![sub])
}
