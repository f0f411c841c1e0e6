//! Alphabets, words, substitutions and substitution families with mixing
//! sequences, their legal-word languages, substitution matrices and
//! Perron-Frobenius eigen-data.
//!
//! A word stores indices into its alphabet. All values are immutable after
//! construction; the operations are pure functions.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::zmatrix::IntMatrix;

pub type LetterId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("alphabet must be non-empty")]
    EmptyAlphabet,
    #[error("duplicate letter {0:?}")]
    DuplicateLetter(String),
    #[error("unknown letter {0:?}")]
    UnknownLetter(String),
    #[error("empty image for letter {0:?}")]
    EmptyImage(String),
    #[error("substitution acts on an alphabet of size {expected}, got {got}")]
    AlphabetMismatch { expected: usize, got: usize },
    #[error("duplicate substitution name {0:?}")]
    DuplicateName(String),
    #[error("sequence index {0} out of range for family of size {1}")]
    BadSequenceIndex(usize, usize),
    #[error("sequence period must be non-empty")]
    EmptyPeriod,
    #[error("substitution is not primitive; no Perron-Frobenius data")]
    NotPrimitive,
    #[error("power iteration did not converge within {0} iterations")]
    NoConvergence(usize),
}

/// Ordered finite set of distinct letter tokens. The order is canonical and
/// fixed: it drives all matrix indexing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(letters: Vec<S>) -> Result<Self, WordError> {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        let mut seen = BTreeSet::new();
        for l in &letters {
            if !seen.insert(l.clone()) {
                return Err(WordError::DuplicateLetter(l.clone()));
            }
        }
        Ok(Alphabet { letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letter(&self, id: LetterId) -> &str {
        &self.letters[id]
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn index_of(&self, token: &str) -> Option<LetterId> {
        self.letters.iter().position(|l| l == token)
    }

    /// True when every letter is a single character, in which case words
    /// render as plain concatenations.
    pub fn single_char(&self) -> bool {
        self.letters.iter().all(|l| l.chars().count() == 1)
    }

    pub fn render_word(&self, w: &Word) -> String {
        if self.single_char() {
            w.letters()
                .iter()
                .map(|&i| self.letters[i].as_str())
                .collect()
        } else {
            w.letters()
                .iter()
                .map(|&i| self.letters[i].as_str())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

/// Finite sequence of alphabet indices; possibly empty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<LetterId>);

impl Word {
    pub fn new(letters: Vec<LetterId>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[LetterId] {
        &self.0
    }

    pub fn at(&self, i: usize) -> LetterId {
        self.0[i]
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The subword at positions `i..i+k` (0-based).
    pub fn subword(&self, i: usize, k: usize) -> Word {
        Word(self.0[i..i + k].to_vec())
    }

    /// All length-`k` subwords, as a set.
    pub fn subwords(&self, k: usize) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        if k == 0 || self.0.len() < k {
            return out;
        }
        for i in 0..=self.0.len() - k {
            out.insert(self.subword(i, k));
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            self.0
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(".")
        )
    }
}

/// A map sending each letter to a non-empty word, extended to words by
/// concatenation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    name: String,
    images: Vec<Word>,
}

impl Substitution {
    pub fn new<S: Into<String>>(name: S, images: Vec<Word>) -> Result<Self, WordError> {
        let name = name.into();
        for (i, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(WordError::EmptyImage(format!("letter #{i}")));
            }
        }
        Ok(Substitution { name, images })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet_len(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, letter: LetterId) -> &Word {
        &self.images[letter]
    }

    pub fn apply(&self, w: &Word) -> Word {
        let mut out = Vec::new();
        for &l in w.letters() {
            out.extend_from_slice(self.images[l].letters());
        }
        Word::new(out)
    }

    /// Iterated application to a single letter.
    pub fn iterate(&self, letter: LetterId, n: usize) -> Word {
        let mut w = Word::new(vec![letter]);
        for _ in 0..n {
            w = self.apply(&w);
        }
        w
    }

    /// The square matrix counting letter occurrences: entry `(i, j)` is the
    /// number of occurrences of letter `i` in the image of letter `j`.
    /// Column `j` sums to the image length of letter `j`.
    pub fn substitution_matrix(&self) -> IntMatrix {
        let n = self.alphabet_len();
        let mut m = IntMatrix::zero(n, n);
        for j in 0..n {
            for &l in self.images[j].letters() {
                m.add_assign_at(l, j, &BigInt::from(1));
            }
        }
        m
    }
}

/// `(outer . inner)(x) = outer(inner(x))`. The substitution matrix of the
/// composite is the product of the matrices.
pub fn compose(outer: &Substitution, inner: &Substitution) -> Result<Substitution, WordError> {
    if outer.alphabet_len() != inner.alphabet_len() {
        return Err(WordError::AlphabetMismatch {
            expected: outer.alphabet_len(),
            got: inner.alphabet_len(),
        });
    }
    let images = (0..inner.alphabet_len())
        .map(|l| outer.apply(inner.image(l)))
        .collect();
    Substitution::new(format!("{}.{}", outer.name, inner.name), images)
}

/// A finite ordered set of substitutions acting on a shared alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionFamily {
    alphabet: Alphabet,
    substitutions: Vec<Substitution>,
}

impl SubstitutionFamily {
    pub fn new(alphabet: Alphabet, substitutions: Vec<Substitution>) -> Result<Self, WordError> {
        if substitutions.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        let mut names = BTreeSet::new();
        for s in &substitutions {
            if s.alphabet_len() != alphabet.len() {
                return Err(WordError::AlphabetMismatch {
                    expected: alphabet.len(),
                    got: s.alphabet_len(),
                });
            }
            if !names.insert(s.name().to_string()) {
                return Err(WordError::DuplicateName(s.name().to_string()));
            }
            for l in 0..alphabet.len() {
                for &x in s.image(l).letters() {
                    if x >= alphabet.len() {
                        return Err(WordError::UnknownLetter(format!("#{x}")));
                    }
                }
            }
        }
        Ok(SubstitutionFamily {
            alphabet,
            substitutions,
        })
    }

    /// Convenience constructor from string rules, e.g.
    /// `family_from_rules(&["a b"], &[("phi", &[("a", "ab"), ("b", "a")])])`.
    pub fn from_rules(
        letters: &[&str],
        subs: &[(&str, &[(&str, &str)])],
    ) -> Result<Self, WordError> {
        let alphabet = Alphabet::new(letters.to_vec())?;
        let mut out = Vec::new();
        for (name, rules) in subs {
            let mut images = vec![None; alphabet.len()];
            for (lhs, rhs) in rules.iter() {
                let l = alphabet
                    .index_of(lhs)
                    .ok_or_else(|| WordError::UnknownLetter(lhs.to_string()))?;
                let mut img = Vec::new();
                for ch in rhs.chars() {
                    let tok = ch.to_string();
                    let id = alphabet
                        .index_of(&tok)
                        .ok_or_else(|| WordError::UnknownLetter(tok.clone()))?;
                    img.push(id);
                }
                if img.is_empty() {
                    return Err(WordError::EmptyImage(lhs.to_string()));
                }
                images[l] = Some(Word::new(img));
            }
            let images: Result<Vec<Word>, WordError> = images
                .into_iter()
                .enumerate()
                .map(|(i, w)| w.ok_or_else(|| WordError::EmptyImage(format!("letter #{i}"))))
                .collect();
            out.push(Substitution::new(*name, images?)?);
        }
        SubstitutionFamily::new(alphabet, out)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.substitutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.substitutions.is_empty()
    }

    pub fn substitution(&self, i: usize) -> &Substitution {
        &self.substitutions[i]
    }

    pub fn substitutions(&self) -> &[Substitution] {
        &self.substitutions
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.substitutions.iter().position(|s| s.name() == name)
    }
}

/// An eventually periodic mixing sequence `s = preperiod . period^inf`,
/// the only finitely-describable inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceSpec {
    preperiod: Vec<usize>,
    period: Vec<usize>,
}

impl SequenceSpec {
    pub fn new(
        preperiod: Vec<usize>,
        period: Vec<usize>,
        family_size: usize,
    ) -> Result<Self, WordError> {
        if period.is_empty() {
            return Err(WordError::EmptyPeriod);
        }
        for &i in preperiod.iter().chain(period.iter()) {
            if i >= family_size {
                return Err(WordError::BadSequenceIndex(i, family_size));
            }
        }
        Ok(SequenceSpec { preperiod, period })
    }

    /// The constant sequence of a single substitution.
    pub fn constant(index: usize, family_size: usize) -> Result<Self, WordError> {
        Self::new(Vec::new(), vec![index], family_size)
    }

    pub fn preperiod(&self) -> &[usize] {
        &self.preperiod
    }

    pub fn period(&self) -> &[usize] {
        &self.period
    }

    /// The substitution index at 1-based position `i` of the sequence.
    pub fn index_at(&self, i: usize) -> usize {
        debug_assert!(i >= 1);
        if i <= self.preperiod.len() {
            self.preperiod[i - 1]
        } else {
            self.period[(i - 1 - self.preperiod.len()) % self.period.len()]
        }
    }

    /// Number of distinct shifted systems: preperiod positions plus one per
    /// period slot.
    pub fn position_count(&self) -> usize {
        self.preperiod.len() + self.period.len()
    }

    /// Reduce an arbitrary position into the canonical range
    /// `0 .. position_count()`: positions past the preperiod wrap around
    /// the cycle.
    pub fn canonical_position(&self, position: usize) -> usize {
        let m = self.preperiod.len();
        if position < m {
            position
        } else {
            m + (position - m) % self.period.len()
        }
    }

    /// The sequence advanced by one position (drop one leading entry).
    pub fn shifted(&self) -> SequenceSpec {
        if !self.preperiod.is_empty() {
            SequenceSpec {
                preperiod: self.preperiod[1..].to_vec(),
                period: self.period.clone(),
            }
        } else {
            let mut period = self.period.clone();
            period.rotate_left(1);
            SequenceSpec {
                preperiod: Vec::new(),
                period,
            }
        }
    }

    pub fn render(&self, family: &SubstitutionFamily) -> String {
        let name = |i: &usize| family.substitution(*i).name().to_string();
        let pre: Vec<String> = self.preperiod.iter().map(name).collect();
        let per: Vec<String> = self.period.iter().map(name).collect();
        if pre.is_empty() {
            format!("| {}", per.join(" "))
        } else {
            format!("{} | {}", pre.join(" "), per.join(" "))
        }
    }
}

/// Legal `k`-words for every canonical position of the system, computed by
/// a simultaneous monotone fixpoint over the cycle. A `k`-window in an image
/// spans at most `k` consecutive letter images (every image is non-empty),
/// so each position's set is closed under pushing the next substitution
/// through. Seeds are the `k`-subwords of the first composite letter images
/// to reach length `k`; the words shorter than that form a finite universe
/// and are themselves computed by a fixpoint, so no depth cap is needed.
pub fn legal_words_all_positions(
    family: &SubstitutionFamily,
    spec: &SequenceSpec,
    k: usize,
) -> Vec<BTreeSet<Word>> {
    assert!(k >= 1, "legal words need k >= 1");
    let npos = spec.position_count();
    let nletters = family.alphabet().len();

    // exact composite images of single letters that are still shorter than
    // k, per canonical position: letters themselves, plus one-step images
    // of short words one position deeper
    let mut short: Vec<BTreeSet<Word>> = vec![BTreeSet::new(); npos];
    if k > 1 {
        for set in short.iter_mut() {
            for letter in 0..nletters {
                set.insert(Word::new(vec![letter]));
            }
        }
        let mut changed = true;
        while changed {
            changed = false;
            for p in 0..npos {
                let next = spec.canonical_position(p + 1);
                let phi = family.substitution(spec.index_at(p + 1));
                let mut add: Vec<Word> = Vec::new();
                for v in &short[next] {
                    let w = phi.apply(v);
                    if w.len() < k && !short[p].contains(&w) {
                        add.push(w);
                    }
                }
                if !add.is_empty() {
                    short[p].extend(add);
                    changed = true;
                }
            }
        }
    }

    // seeds: k-subwords of the images that cross the length-k threshold
    let mut seeds: Vec<BTreeSet<Word>> = vec![BTreeSet::new(); npos];
    for p in 0..npos {
        if k == 1 {
            for letter in 0..nletters {
                seeds[p].insert(Word::new(vec![letter]));
            }
        }
        let next = spec.canonical_position(p + 1);
        let phi = family.substitution(spec.index_at(p + 1));
        for v in &short[next] {
            let w = phi.apply(v);
            for sw in w.subwords(k) {
                seeds[p].insert(sw);
            }
        }
    }

    // monotone fixpoint: L_p grows by the step map through phi_{s_{p+1}}
    let mut legal = seeds;
    let mut changed = true;
    while changed {
        changed = false;
        for p in 0..npos {
            let next = spec.canonical_position(p + 1);
            let phi = family.substitution(spec.index_at(p + 1));
            let mut add: Vec<Word> = Vec::new();
            for w in &legal[next] {
                let img = phi.apply(w);
                for sw in img.subwords(k) {
                    if !legal[p].contains(&sw) {
                        add.push(sw);
                    }
                }
            }
            if !add.is_empty() {
                legal[p].extend(add);
                changed = true;
            }
        }
    }
    legal
}

/// The legal `k`-words of the system shifted to `position`, ordered
/// lexicographically.
pub fn legal_words(
    family: &SubstitutionFamily,
    spec: &SequenceSpec,
    position: usize,
    k: usize,
) -> BTreeSet<Word> {
    let all = legal_words_all_positions(family, spec, k);
    all[spec.canonical_position(position)].clone()
}

/// Perron-Frobenius eigen-data of a primitive substitution: the dominant
/// eigenvalue (inflation factor) and the positive left eigenvector (tile
/// lengths), normalized so its minimum entry is 1.
#[derive(Debug, Clone)]
pub struct PFData {
    pub eigenvalue: f64,
    pub left_eigenvector: Vec<f64>,
    pub residual: f64,
}

pub const PF_DEFAULT_TOL: f64 = 1e-12;
const PF_ITERATION_CAP: usize = 1_000_000;

fn matrix_to_f64(m: &IntMatrix) -> Vec<Vec<f64>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let s = m.get(i, j).to_string();
                    s.parse::<f64>().unwrap_or(f64::MAX)
                })
                .collect()
        })
        .collect()
}

fn left_residual(a: &[Vec<f64>], v: &[f64], lambda: f64) -> f64 {
    let n = v.len();
    let mut worst: f64 = 0.0;
    for j in 0..n {
        let mut s = 0.0;
        for (i, &vi) in v.iter().enumerate() {
            s += vi * a[i][j];
        }
        worst = worst.max((s - lambda * v[j]).abs());
    }
    worst
}

/// Dominant eigenvalue and positive left eigenvector by power iteration on
/// the transpose, run until the residual `max|v A - lambda v|` drops below
/// `tol`. Errors on non-primitive input.
pub fn pf_data(sub: &Substitution, tol: f64) -> Result<PFData, WordError> {
    if crate::analysis::primitive_matrix_witness(sub).is_err() {
        return Err(WordError::NotPrimitive);
    }
    let a = matrix_to_f64(&sub.substitution_matrix());
    let n = a.len();
    let mut v = vec![1.0f64; n];
    for _ in 0..PF_ITERATION_CAP {
        // w = v A (left action)
        let mut w = vec![0.0f64; n];
        for j in 0..n {
            for (i, &vi) in v.iter().enumerate() {
                w[j] += vi * a[i][j];
            }
        }
        let norm = w.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        if norm == 0.0 {
            return Err(WordError::NotPrimitive);
        }
        for x in &mut w {
            *x /= norm;
        }
        // Rayleigh estimate for the left eigenvalue
        let mut num = 0.0;
        let mut den = 0.0;
        for j in 0..n {
            let mut s = 0.0;
            for (i, &wi) in w.iter().enumerate() {
                s += wi * a[i][j];
            }
            num += s * w[j];
            den += w[j] * w[j];
        }
        let lambda = num / den;
        v = w;
        // convergence is judged on the reported normalization (minimum
        // entry 1), so the recorded residual honours the tolerance
        let min = v.iter().cloned().fold(f64::INFINITY, f64::min);
        if min > 0.0 {
            let vn: Vec<f64> = v.iter().map(|x| x / min).collect();
            let residual = left_residual(&a, &vn, lambda);
            if residual < tol {
                return Ok(PFData {
                    eigenvalue: lambda,
                    left_eigenvector: vn,
                    residual,
                });
            }
        }
    }
    Err(WordError::NoConvergence(PF_ITERATION_CAP))
}

/// Result of the shared left eigenvector check across a family.
#[derive(Debug, Clone)]
pub struct CommonLeftPf {
    /// The shared vector, when a member's eigenvector works for all members.
    pub vector: Option<Vec<f64>>,
    /// Best candidate's worst per-member residual.
    pub worst_residual: f64,
    pub per_member: Vec<PFData>,
}

pub const COMMON_PF_DEFAULT_TOL: f64 = 1e-9;

/// Checks whether one member's left Perron-Frobenius eigenvector satisfies
/// `|v A_i - lambda_i v| < tol` for every member `i` (each with its own
/// eigenvalue). Numerical by design: the eigenvectors are generally
/// irrational.
pub fn common_left_pf(family: &SubstitutionFamily, tol: f64) -> Result<CommonLeftPf, WordError> {
    let mut per_member = Vec::new();
    for s in family.substitutions() {
        per_member.push(pf_data(s, PF_DEFAULT_TOL)?);
    }
    let mats: Vec<Vec<Vec<f64>>> = family
        .substitutions()
        .iter()
        .map(|s| matrix_to_f64(&s.substitution_matrix()))
        .collect();
    let mut best: Option<(f64, usize)> = None;
    for (cand_idx, cand) in per_member.iter().enumerate() {
        let worst = per_member
            .iter()
            .zip(&mats)
            .map(|(m, a)| left_residual(a, &cand.left_eigenvector, m.eigenvalue))
            .fold(0.0f64, f64::max);
        if best.map_or(true, |(b, _)| worst < b) {
            best = Some((worst, cand_idx));
        }
    }
    let (worst_residual, idx) = best.expect("family is non-empty");
    let vector = if worst_residual < tol {
        Some(per_member[idx].left_eigenvector.clone())
    } else {
        None
    };
    Ok(CommonLeftPf {
        vector,
        worst_residual,
        per_member,
    })
}
