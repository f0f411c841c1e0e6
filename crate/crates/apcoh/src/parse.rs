//! Line-oriented input format for substitution systems.
//!
//! ```text
//! alphabet: a b c          # optional; inferred from rule heads otherwise
//! sub phi1:
//!   a -> ab
//!   b -> bc
//!   c -> ca
//! sub phi2: a -> bb / b -> cc / c -> ac
//! sequence: | phi2 phi1 phi1 phi1      # preperiod '|' period
//! ```
//!
//! Comments start with `#`. Letters are whitespace-separated tokens; images
//! are concatenated single-character letters when all letters are single
//! characters, otherwise whitespace-separated tokens. A document may also
//! consist of bare rules (`a -> ab / b -> a`), which define one anonymous
//! substitution named `phi`.

use thiserror::Error;

use crate::word::{Alphabet, SequenceSpec, Substitution, SubstitutionFamily, Word};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }
}

#[derive(Debug)]
struct RawRule {
    lhs: String,
    rhs: Vec<String>,
    line: usize,
    col: usize,
}

#[derive(Debug)]
struct RawSub {
    name: String,
    rules: Vec<RawRule>,
    line: usize,
}

/// Parse an input document into a family and, when present (or implied by a
/// single-member family), a mixing-sequence spec.
pub fn parse_system(text: &str) -> Result<(SubstitutionFamily, Option<SequenceSpec>), ParseError> {
    let mut alphabet_tokens: Option<(Vec<String>, usize)> = None;
    let mut subs: Vec<RawSub> = Vec::new();
    let mut sequence: Option<(Vec<String>, usize, usize)> = None;
    let mut anonymous = false;

    for (idx, raw_line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let content = match raw_line.find('#') {
            Some(p) => &raw_line[..p],
            None => raw_line,
        };
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let col_of = |needle: &str| content.find(needle).map_or(1, |p| p + 1);

        if let Some(rest) = trimmed.strip_prefix("alphabet:") {
            if alphabet_tokens.is_some() {
                return Err(ParseError::new(lineno, 1, "duplicate alphabet line"));
            }
            let toks: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if toks.is_empty() {
                return Err(ParseError::new(lineno, col_of(":"), "empty alphabet"));
            }
            alphabet_tokens = Some((toks, lineno));
        } else if let Some(rest) = trimmed.strip_prefix("sub ") {
            let Some(colon) = rest.find(':') else {
                return Err(ParseError::new(
                    lineno,
                    1,
                    "substitution header needs a ':' after the name",
                ));
            };
            let name = rest[..colon].trim().to_string();
            if name.is_empty() {
                return Err(ParseError::new(
                    lineno,
                    col_of(":"),
                    "empty substitution name",
                ));
            }
            if anonymous {
                return Err(ParseError::new(
                    lineno,
                    1,
                    "cannot mix bare rules with named substitution blocks",
                ));
            }
            if subs.iter().any(|s| s.name == name) {
                return Err(ParseError::new(
                    lineno,
                    1,
                    format!("duplicate substitution name {name:?}"),
                ));
            }
            let mut sub = RawSub {
                name,
                rules: Vec::new(),
                line: lineno,
            };
            let inline = rest[colon + 1..].trim();
            if !inline.is_empty() {
                parse_rules(inline, lineno, col_of(":"), &mut sub.rules)?;
            }
            subs.push(sub);
        } else if let Some(rest) = trimmed.strip_prefix("sequence:") {
            if sequence.is_some() {
                return Err(ParseError::new(lineno, 1, "duplicate sequence line"));
            }
            let toks: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            sequence = Some((toks, lineno, col_of(":")));
        } else if trimmed.contains("->") {
            if subs.is_empty() {
                // bare rules define one anonymous substitution
                anonymous = true;
                subs.push(RawSub {
                    name: "phi".to_string(),
                    rules: Vec::new(),
                    line: lineno,
                });
            }
            let col = content.len() - content.trim_start().len() + 1;
            let target = subs.last_mut().expect("just ensured non-empty");
            parse_rules(trimmed, lineno, col, &mut target.rules)?;
        } else {
            return Err(ParseError::new(
                lineno,
                1,
                format!("cannot parse line {trimmed:?}"),
            ));
        }
    }

    if subs.is_empty() {
        return Err(ParseError::new(1, 1, "no substitutions in input"));
    }

    // alphabet: declared, or inferred from rule heads in order of appearance
    let letters: Vec<String> = match &alphabet_tokens {
        Some((toks, _)) => toks.clone(),
        None => {
            let mut seen = Vec::new();
            for sub in &subs {
                for rule in &sub.rules {
                    if !seen.contains(&rule.lhs) {
                        seen.push(rule.lhs.clone());
                    }
                }
            }
            seen
        }
    };
    let alphabet = Alphabet::new(letters).map_err(|e| {
        let line = alphabet_tokens.as_ref().map_or(1, |(_, l)| *l);
        ParseError::new(line, 1, e.to_string())
    })?;

    let mut built: Vec<Substitution> = Vec::new();
    for sub in &subs {
        let mut images: Vec<Option<Word>> = vec![None; alphabet.len()];
        for rule in &sub.rules {
            let Some(lhs) = alphabet.index_of(&rule.lhs) else {
                return Err(ParseError::new(
                    rule.line,
                    rule.col,
                    format!("unknown letter {:?} on the left of a rule", rule.lhs),
                ));
            };
            if images[lhs].is_some() {
                return Err(ParseError::new(
                    rule.line,
                    rule.col,
                    format!(
                        "duplicate rule for letter {:?} in sub {:?}",
                        rule.lhs, sub.name
                    ),
                ));
            }
            if rule.rhs.is_empty() {
                return Err(ParseError::new(
                    rule.line,
                    rule.col,
                    format!("empty image for letter {:?}", rule.lhs),
                ));
            }
            let mut word = Vec::new();
            for tok in &rule.rhs {
                if let Some(id) = alphabet.index_of(tok) {
                    word.push(id);
                    continue;
                }
                // decompose a concatenated token into single-character letters
                let mut ok = true;
                let mut decomposed = Vec::new();
                for ch in tok.chars() {
                    match alphabet.index_of(&ch.to_string()) {
                        Some(id) => decomposed.push(id),
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok {
                    return Err(ParseError::new(
                        rule.line,
                        rule.col,
                        format!("unknown letter in image token {tok:?}"),
                    ));
                }
                word.extend(decomposed);
            }
            images[lhs] = Some(Word::new(word));
        }
        let images: Result<Vec<Word>, ParseError> = images
            .into_iter()
            .enumerate()
            .map(|(i, w)| {
                w.ok_or_else(|| {
                    ParseError::new(
                        sub.line,
                        1,
                        format!(
                            "sub {:?} is missing an image for letter {:?}",
                            sub.name,
                            alphabet.letter(i)
                        ),
                    )
                })
            })
            .collect();
        let s = Substitution::new(sub.name.clone(), images?)
            .map_err(|e| ParseError::new(sub.line, 1, e.to_string()))?;
        built.push(s);
    }

    let family = SubstitutionFamily::new(alphabet, built)
        .map_err(|e| ParseError::new(1, 1, e.to_string()))?;

    let spec = match sequence {
        Some((toks, line, col)) => Some(parse_sequence_tokens(&toks, &family, line, col)?),
        None => {
            if family.len() == 1 {
                Some(SequenceSpec::constant(0, 1).expect("single member"))
            } else {
                None
            }
        }
    };
    Ok((family, spec))
}

fn parse_rules(
    text: &str,
    line: usize,
    col: usize,
    out: &mut Vec<RawRule>,
) -> Result<(), ParseError> {
    for chunk in text.split('/') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        let Some(arrow) = chunk.find("->") else {
            return Err(ParseError::new(
                line,
                col,
                format!("rule {chunk:?} is missing '->'"),
            ));
        };
        let lhs = chunk[..arrow].trim();
        if lhs.is_empty() || lhs.split_whitespace().count() != 1 {
            return Err(ParseError::new(
                line,
                col,
                format!("rule {chunk:?} needs exactly one letter on the left"),
            ));
        }
        let rhs: Vec<String> = chunk[arrow + 2..]
            .split_whitespace()
            .map(str::to_string)
            .collect();
        out.push(RawRule {
            lhs: lhs.to_string(),
            rhs,
            line,
            col,
        });
    }
    Ok(())
}

/// Parse a `pre | period` sequence expression against a family; names are
/// matched first, then 1-based numeric indices.
pub fn parse_sequence_tokens(
    tokens: &[String],
    family: &SubstitutionFamily,
    line: usize,
    col: usize,
) -> Result<SequenceSpec, ParseError> {
    let mut pre: Vec<usize> = Vec::new();
    let mut per: Vec<usize> = Vec::new();
    let mut past_bar = !tokens.iter().any(|t| t == "|");
    for tok in tokens {
        if tok == "|" {
            if past_bar {
                return Err(ParseError::new(line, col, "more than one '|' in sequence"));
            }
            past_bar = true;
            continue;
        }
        let idx = match family.index_of(tok) {
            Some(i) => i,
            None => match tok.parse::<usize>() {
                Ok(n) if n >= 1 && n <= family.len() => n - 1,
                _ => {
                    return Err(ParseError::new(
                        line,
                        col,
                        format!("unknown substitution {tok:?} in sequence"),
                    ));
                }
            },
        };
        if past_bar {
            per.push(idx);
        } else {
            pre.push(idx);
        }
    }
    SequenceSpec::new(pre, per, family.len()).map_err(|e| ParseError::new(line, col, e.to_string()))
}

/// Parse a `--sequence` override expression.
pub fn parse_sequence_override(
    expr: &str,
    family: &SubstitutionFamily,
) -> Result<SequenceSpec, ParseError> {
    let tokens: Vec<String> = expr.split_whitespace().map(str::to_string).collect();
    parse_sequence_tokens(&tokens, family, 1, 1)
}
