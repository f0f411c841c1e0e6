//! Construction of the Anderson-Putnam complex flavors as directed
//! multigraphs, extraction of the coboundary matrix and the bonding cell
//! maps, and dot/json export.
//!
//! Edges are 3-letter words (2-letter for the left-collared flavors),
//! ordered lexicographically; `ap` vertices are union-find classes of edge
//! endpoints glued along legal 4-letter words.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::word::{legal_words_all_positions, SequenceSpec, SubstitutionFamily, Word};
use crate::zmatrix::IntMatrix;

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("bonding maps need equal flavors, got {0} and {1}")]
    FlavorMismatch(String, String),
    #[error("bonding maps need target position = source position - 1, got source {source_position} and target {target_position}")]
    PositionMismatch {
        source_position: usize,
        target_position: usize,
    },
    #[error("bonding maps need a common family and sequence")]
    SystemMismatch,
    #[error("internal: vertex {vertex} of the source complex has inconsistent images {first} and {second}")]
    InconsistentVertexImage {
        vertex: String,
        first: String,
        second: String,
    },
    #[error("internal: image window {0} is not an edge of the target complex")]
    MissingWindow(String),
    #[error("internal: chain map identity delta*A0 = A1*delta failed")]
    ChainMapViolation,
    #[error("bad json complex: {0}")]
    Json(String),
}

/// The five complex flavors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    /// Edges = legal 3-words, vertices glued along legal 4-words.
    Ap,
    /// Edges = legal 3-words, vertices fully merged to legal 2-words.
    ApModified,
    /// Edges = all 3-words, vertices = all 2-words; substitution independent.
    ApFull,
    /// Edges = all 2-words, vertices = letters.
    ApLeft,
    /// Edges = legal 2-words, vertices = legal letters.
    ApLeftModified,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Ap => "ap",
            Flavor::ApModified => "ap_modified",
            Flavor::ApFull => "ap_full",
            Flavor::ApLeft => "ap_left",
            Flavor::ApLeftModified => "ap_left_modified",
        }
    }

    pub fn parse(s: &str) -> Option<Flavor> {
        match s {
            "ap" => Some(Flavor::Ap),
            "ap_modified" => Some(Flavor::ApModified),
            "ap_full" => Some(Flavor::ApFull),
            "ap_left" => Some(Flavor::ApLeft),
            "ap_left_modified" => Some(Flavor::ApLeftModified),
            _ => None,
        }
    }

    pub fn all() -> [Flavor; 5] {
        [
            Flavor::Ap,
            Flavor::ApModified,
            Flavor::ApFull,
            Flavor::ApLeft,
            Flavor::ApLeftModified,
        ]
    }

    /// Full-alphabet flavors do not depend on the legal language.
    pub fn is_full(self) -> bool {
        matches!(self, Flavor::ApFull | Flavor::ApLeft)
    }

    fn edge_len(self) -> usize {
        match self {
            Flavor::Ap | Flavor::ApModified | Flavor::ApFull => 3,
            Flavor::ApLeft | Flavor::ApLeftModified => 2,
        }
    }
}

impl std::fmt::Display for Flavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One complex of the tower: the system shifted to `position`, built in a
/// given flavor.
#[derive(Debug, Clone, Copy)]
pub struct SystemAtPosition<'a> {
    pub family: &'a SubstitutionFamily,
    pub spec: &'a SequenceSpec,
    pub position: usize,
    pub flavor: Flavor,
}

impl<'a> SystemAtPosition<'a> {
    pub fn new(
        family: &'a SubstitutionFamily,
        spec: &'a SequenceSpec,
        position: usize,
        flavor: Flavor,
    ) -> Self {
        SystemAtPosition {
            family,
            spec,
            position,
            flavor,
        }
    }

    pub fn canonical_position(&self) -> usize {
        self.spec.canonical_position(self.position)
    }
}

/// Owned reference to a tower slot, recorded on bonding maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SystemRef {
    pub position: usize,
    pub flavor: Flavor,
}

/// Finite directed multigraph with word-labelled edges and named vertex
/// classes.
#[derive(Debug, Clone)]
pub struct CellComplex {
    flavor: Flavor,
    letters: Vec<String>,
    edges: Vec<Word>,
    vertices: Vec<String>,
    head: Vec<usize>,
    tail: Vec<usize>,
}

impl CellComplex {
    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[Word] {
        &self.edges
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn head_of(&self, edge: usize) -> usize {
        self.head[edge]
    }

    pub fn tail_of(&self, edge: usize) -> usize {
        self.tail[edge]
    }

    fn single_char(&self) -> bool {
        self.letters.iter().all(|l| l.chars().count() == 1)
    }

    pub fn edge_label(&self, edge: usize) -> String {
        self.render_word(&self.edges[edge])
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

    fn edge_index(&self) -> BTreeMap<&Word, usize> {
        self.edges.iter().enumerate().map(|(i, w)| (w, i)).collect()
    }
}

impl PartialEq for CellComplex {
    /// Label-level equality: complexes parsed back from an export compare
    /// equal to the original even though the internal letter order may
    /// differ.
    fn eq(&self, other: &Self) -> bool {
        self.flavor == other.flavor
            && self.vertices == other.vertices
            && self.head == other.head
            && self.tail == other.tail
            && self.edge_count() == other.edge_count()
            && (0..self.edge_count()).all(|i| self.edge_label(i) == other.edge_label(i))
    }
}

impl Eq for CellComplex {}

fn all_words(nletters: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * nletters);
        for w in &out {
            for l in 0..nletters {
                let mut v = w.letters().to_vec();
                v.push(l);
                next.push(Word::new(v));
            }
        }
        out = next;
    }
    out
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Build the complex of a system at a position.
pub fn build_complex(sys: &SystemAtPosition) -> CellComplex {
    let family = sys.family;
    let nletters = family.alphabet().len();
    let letters: Vec<String> = family.alphabet().letters().to_vec();
    let position = sys.canonical_position();
    let legal = |k: usize| -> Vec<Word> {
        legal_words_all_positions(family, sys.spec, k)[position]
            .iter()
            .cloned()
            .collect()
    };

    match sys.flavor {
        Flavor::ApFull | Flavor::ApModified => {
            let edges = if sys.flavor == Flavor::ApFull {
                all_words(nletters, 3)
            } else {
                legal(3)
            };
            let verts: Vec<Word> = if sys.flavor == Flavor::ApFull {
                all_words(nletters, 2)
            } else {
                legal(2)
            };
            let vidx: BTreeMap<&Word, usize> =
                verts.iter().enumerate().map(|(i, w)| (w, i)).collect();
            let head = edges.iter().map(|e| vidx[&e.subword(1, 2)]).collect();
            let tail = edges.iter().map(|e| vidx[&e.subword(0, 2)]).collect();
            let alphabet = family.alphabet();
            CellComplex {
                flavor: sys.flavor,
                letters,
                vertices: verts.iter().map(|w| alphabet.render_word(w)).collect(),
                edges,
                head,
                tail,
            }
        }
        Flavor::ApLeft | Flavor::ApLeftModified => {
            let edges = if sys.flavor == Flavor::ApLeft {
                all_words(nletters, 2)
            } else {
                legal(2)
            };
            let verts: Vec<Word> = if sys.flavor == Flavor::ApLeft {
                all_words(nletters, 1)
            } else {
                legal(1)
            };
            let vidx: BTreeMap<&Word, usize> =
                verts.iter().enumerate().map(|(i, w)| (w, i)).collect();
            let head = edges.iter().map(|e| vidx[&e.subword(1, 1)]).collect();
            let tail = edges.iter().map(|e| vidx[&e.subword(0, 1)]).collect();
            let alphabet = family.alphabet();
            CellComplex {
                flavor: sys.flavor,
                letters,
                vertices: verts.iter().map(|w| alphabet.render_word(w)).collect(),
                edges,
                head,
                tail,
            }
        }
        Flavor::Ap => {
            let edges = legal(3);
            let four = legal(4);
            let eidx: BTreeMap<&Word, usize> =
                edges.iter().enumerate().map(|(i, w)| (w, i)).collect();
            // endpoint tokens: 2*i = tail of edge i, 2*i+1 = head of edge i
            let mut uf = UnionFind::new(2 * edges.len());
            for w in &four {
                let left = w.subword(0, 3);
                let right = w.subword(1, 3);
                if let (Some(&e1), Some(&e2)) = (eidx.get(&left), eidx.get(&right)) {
                    uf.union(2 * e1 + 1, 2 * e2);
                }
            }
            // group tokens into classes keyed by (overlap word, minimal
            // incident (edge word, end)) with tails ordering before heads
            let overlap = |token: usize| -> Word {
                let (edge, is_head) = (token / 2, token % 2 == 1);
                if is_head {
                    edges[edge].subword(1, 2)
                } else {
                    edges[edge].subword(0, 2)
                }
            };
            let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for t in 0..2 * edges.len() {
                classes.entry(uf.find(t)).or_default().push(t);
            }
            let mut keyed: Vec<(Word, (Word, usize), Vec<usize>)> = classes
                .into_values()
                .map(|tokens| {
                    let ow = overlap(tokens[0]);
                    debug_assert!(tokens.iter().all(|&t| overlap(t) == ow));
                    let min_key = tokens
                        .iter()
                        .map(|&t| (edges[t / 2].clone(), t % 2))
                        .min()
                        .expect("classes are non-empty");
                    (ow, min_key, tokens)
                })
                .collect();
            keyed.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
            let mut per_overlap: BTreeMap<Word, usize> = BTreeMap::new();
            for (ow, _, _) in &keyed {
                *per_overlap.entry(ow.clone()).or_insert(0) += 1;
            }
            let alphabet = family.alphabet();
            let mut vertices = Vec::with_capacity(keyed.len());
            let mut counter: BTreeMap<Word, usize> = BTreeMap::new();
            let mut token_class = vec![0usize; 2 * edges.len()];
            for (vid, (ow, _, tokens)) in keyed.iter().enumerate() {
                let name = if per_overlap[ow] > 1 {
                    let c = counter.entry(ow.clone()).or_insert(0);
                    *c += 1;
                    format!("{}_{}", alphabet.render_word(ow), c)
                } else {
                    alphabet.render_word(ow)
                };
                vertices.push(name);
                for &t in tokens {
                    token_class[t] = vid;
                }
            }
            let head = (0..edges.len()).map(|i| token_class[2 * i + 1]).collect();
            let tail = (0..edges.len()).map(|i| token_class[2 * i]).collect();
            CellComplex {
                flavor: Flavor::Ap,
                letters,
                edges,
                vertices,
                head,
                tail,
            }
        }
    }
}

/// Edge-by-vertex coboundary matrix: `+1` at the head, `-1` at the tail;
/// loops give zero rows.
pub fn coboundary_matrix(c: &CellComplex) -> IntMatrix {
    let mut m = IntMatrix::zero(c.edge_count(), c.vertex_count());
    let one = num_bigint::BigInt::from(1);
    let minus = num_bigint::BigInt::from(-1);
    for e in 0..c.edge_count() {
        m.add_assign_at(e, c.head[e], &one);
        m.add_assign_at(e, c.tail[e], &minus);
    }
    m
}

/// The cell maps induced by one substitution step down the tower.
#[derive(Debug, Clone)]
pub struct BondingMaps {
    /// source vertices x target vertices, zero/one with one 1 per row.
    pub a0: IntMatrix,
    /// source edges x target edges, non-negative counts.
    pub a1: IntMatrix,
    pub source: SystemRef,
    pub target: SystemRef,
}

/// Bonding maps from the complex at `source` to the one at `target`
/// (`target.position = source.position - 1`); the substitution applied is
/// the sequence entry at the source position. The chain map identity
/// `delta(source) * A0 = A1 * delta(target)` is verified before returning.
pub fn bonding_maps(
    source: &SystemAtPosition,
    target: &SystemAtPosition,
) -> Result<BondingMaps, ComplexError> {
    if source.flavor != target.flavor {
        return Err(ComplexError::FlavorMismatch(
            source.flavor.name().into(),
            target.flavor.name().into(),
        ));
    }
    if source.position == 0 || target.position != source.position - 1 {
        return Err(ComplexError::PositionMismatch {
            source_position: source.position,
            target_position: target.position,
        });
    }
    if source.family != target.family || source.spec != target.spec {
        return Err(ComplexError::SystemMismatch);
    }
    let src = build_complex(source);
    let tgt = build_complex(target);
    let phi = source
        .family
        .substitution(source.spec.index_at(source.position));
    let tgt_index = tgt.edge_index();

    let mut a1 = IntMatrix::zero(src.edge_count(), tgt.edge_count());
    let one = num_bigint::BigInt::from(1);

    let a0 = if source.flavor.edge_len() == 3 {
        // image path of edge x1 x2 x3: the 3-windows of phi(x1)phi(x2)phi(x3)
        // centred on the positions of the middle block
        let mut first_edge = vec![0usize; src.edge_count()];
        let mut last_edge = vec![0usize; src.edge_count()];
        for (i, e) in src.edges().iter().enumerate() {
            let (x1, x2, x3) = (e.at(0), e.at(1), e.at(2));
            let w = phi.image(x1).concat(phi.image(x2)).concat(phi.image(x3));
            let p = phi.image(x1).len();
            let mid = phi.image(x2).len();
            for q in p + 1..=p + mid {
                let win = w.subword(q - 2, 3);
                let Some(&f) = tgt_index.get(&win) else {
                    return Err(ComplexError::MissingWindow(tgt.render_word(&win)));
                };
                a1.add_assign_at(i, f, &one);
                if q == p + 1 {
                    first_edge[i] = f;
                }
                if q == p + mid {
                    last_edge[i] = f;
                }
            }
        }
        // vertex images: heads follow the last path edge, tails the first;
        // all representatives of a class must agree
        let mut image: Vec<Option<usize>> = vec![None; src.vertex_count()];
        let mut assign = |v: usize, w: usize| -> Result<(), ComplexError> {
            match image[v] {
                None => {
                    image[v] = Some(w);
                    Ok(())
                }
                Some(prev) if prev == w => Ok(()),
                Some(prev) => Err(ComplexError::InconsistentVertexImage {
                    vertex: src.vertex_names()[v].clone(),
                    first: tgt.vertex_names()[prev].clone(),
                    second: tgt.vertex_names()[w].clone(),
                }),
            }
        };
        for i in 0..src.edge_count() {
            assign(src.head_of(i), tgt.head_of(last_edge[i]))?;
            assign(src.tail_of(i), tgt.tail_of(first_edge[i]))?;
        }
        let mut a0 = IntMatrix::zero(src.vertex_count(), tgt.vertex_count());
        for (v, img) in image.iter().enumerate() {
            let w = img.expect("every vertex class has an incident edge");
            a0.add_assign_at(v, w, &one);
        }
        a0
    } else {
        // left flavors: 2-windows over the positions of phi(y) in
        // phi(x)phi(y); the vertex map sends x to the last letter of phi(x)
        for (i, e) in src.edges().iter().enumerate() {
            let (x, y) = (e.at(0), e.at(1));
            let w = phi.image(x).concat(phi.image(y));
            let p = phi.image(x).len();
            for q in p + 1..=p + phi.image(y).len() {
                let win = w.subword(q - 2, 2);
                let Some(&f) = tgt_index.get(&win) else {
                    return Err(ComplexError::MissingWindow(tgt.render_word(&win)));
                };
                a1.add_assign_at(i, f, &one);
            }
        }
        let mut a0 = IntMatrix::zero(src.vertex_count(), tgt.vertex_count());
        // vertices are letters in lexicographic order; map through the
        // rendered name to stay stable under the modified flavor's
        // restriction to legal letters
        let tgt_vname: BTreeMap<&String, usize> = tgt
            .vertex_names()
            .iter()
            .enumerate()
            .map(|(i, n)| (n, i))
            .collect();
        for (v, name) in src.vertex_names().iter().enumerate() {
            let letter = source
                .family
                .alphabet()
                .index_of(name)
                .expect("left-flavor vertices are letters");
            let img = phi.image(letter);
            let last = img.at(img.len() - 1);
            let last_name = source.family.alphabet().letter(last).to_string();
            let Some(&w) = tgt_vname.get(&last_name) else {
                return Err(ComplexError::MissingWindow(last_name));
            };
            a0.add_assign_at(v, w, &one);
        }
        a0
    };

    let delta_src = coboundary_matrix(&src);
    let delta_tgt = coboundary_matrix(&tgt);
    if delta_src.mul(&a0) != a1.mul(&delta_tgt) {
        return Err(ComplexError::ChainMapViolation);
    }
    Ok(BondingMaps {
        a0,
        a1,
        source: SystemRef {
            position: source.position,
            flavor: source.flavor,
        },
        target: SystemRef {
            position: target.position,
            flavor: target.flavor,
        },
    })
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    flavor: String,
    edges: Vec<String>,
    vertices: Vec<String>,
    head: Vec<usize>,
    tail: Vec<usize>,
}

/// Deterministic dot serialization: node labels are vertex names, edge
/// labels are edge words.
pub fn export_dot(c: &CellComplex) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph \"{}\" {{\n", c.flavor.name()));
    out.push_str("  rankdir=LR;\n");
    for name in c.vertex_names() {
        out.push_str(&format!("  \"{name}\" [label=\"{name}\"];\n"));
    }
    for e in 0..c.edge_count() {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
            c.vertex_names()[c.tail_of(e)],
            c.vertex_names()[c.head_of(e)],
            c.edge_label(e)
        ));
    }
    out.push_str("}\n");
    out
}

/// Deterministic json serialization; `parse_json` inverts it.
pub fn export_json(c: &CellComplex) -> String {
    let doc = ComplexJson {
        flavor: c.flavor.name().to_string(),
        edges: (0..c.edge_count()).map(|e| c.edge_label(e)).collect(),
        vertices: c.vertex_names().to_vec(),
        head: c.head.clone(),
        tail: c.tail.clone(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Result<CellComplex, ComplexError> {
    let doc: ComplexJson =
        serde_json::from_str(text).map_err(|e| ComplexError::Json(e.to_string()))?;
    let flavor = Flavor::parse(&doc.flavor)
        .ok_or_else(|| ComplexError::Json(format!("unknown flavor {:?}", doc.flavor)))?;
    if doc.head.len() != doc.edges.len() || doc.tail.len() != doc.edges.len() {
        return Err(ComplexError::Json(
            "head/tail arrays must match the edge count".into(),
        ));
    }
    if let Some(&v) = doc.head.iter().chain(doc.tail.iter()).max() {
        if v >= doc.vertices.len() {
            return Err(ComplexError::Json(format!("vertex index {v} out of range")));
        }
    }
    // rebuild a letter table from the edge labels, in order of appearance
    let mut letters: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    for label in &doc.edges {
        let tokens: Vec<String> = if label.contains(' ') {
            label.split_whitespace().map(str::to_string).collect()
        } else {
            label.chars().map(|ch| ch.to_string()).collect()
        };
        let mut w = Vec::new();
        for t in tokens {
            let id = match letters.iter().position(|l| *l == t) {
                Some(i) => i,
                None => {
                    letters.push(t);
                    letters.len() - 1
                }
            };
            w.push(id);
        }
        if w.len() != flavor.edge_len() {
            return Err(ComplexError::Json(format!(
                "edge {label:?} has length {} but flavor {} needs {}",
                w.len(),
                flavor.name(),
                flavor.edge_len()
            )));
        }
        edges.push(Word::new(w));
    }
    if letters.is_empty() {
        letters.push("a".to_string());
    }
    Ok(CellComplex {
        flavor,
        letters,
        edges,
        vertices: doc.vertices,
        head: doc.head,
        tail: doc.tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::SubstitutionFamily;
    use num_bigint::BigInt;
    use num_traits::{Signed, Zero};

    fn bba() -> SubstitutionFamily {
        SubstitutionFamily::from_rules(&["a", "b"], &[("phi", &[("a", "bbaaab"), ("b", "bbab")])])
            .unwrap()
    }

    fn aba() -> SubstitutionFamily {
        SubstitutionFamily::from_rules(&["a", "b"], &[("phi", &[("a", "aba"), ("b", "bbab")])])
            .unwrap()
    }

    fn spec1() -> SequenceSpec {
        SequenceSpec::constant(0, 1).unwrap()
    }

    fn labels(c: &CellComplex) -> Vec<String> {
        (0..c.edge_count()).map(|e| c.edge_label(e)).collect()
    }

    #[test]
    fn bbaaab_ap_complex_shape() {
        let fam = bba();
        let spec = spec1();
        let c = build_complex(&SystemAtPosition::new(&fam, &spec, 0, Flavor::Ap));
        assert_eq!(c.edge_count(), 7);
        assert_eq!(c.vertex_count(), 6);
        assert_eq!(
            labels(&c),
            vec!["aaa", "aab", "abb", "baa", "bab", "bba", "bbb"]
        );
        assert_eq!(
            c.vertex_names(),
            &["aa_1", "aa_2", "ab", "ba", "bb_1", "bb_2"]
        );
    }

    #[test]
    fn bbaaab_modified_complex_merges_vertices() {
        let fam = bba();
        let spec = spec1();
        let c = build_complex(&SystemAtPosition::new(&fam, &spec, 0, Flavor::ApModified));
        assert_eq!(c.edge_count(), 7);
        assert_eq!(c.vertex_names(), &["aa", "ab", "ba", "bb"]);
    }

    #[test]
    fn full_complex_counts() {
        let fam = bba();
        let spec = spec1();
        let c = build_complex(&SystemAtPosition::new(&fam, &spec, 0, Flavor::ApFull));
        assert_eq!(c.edge_count(), 8);
        assert_eq!(c.vertex_count(), 4);
    }

    #[test]
    fn modified_is_vertex_quotient_of_ap() {
        // same edges; collapsing a class to its overlap word commutes with
        // head and tail
        let fam = bba();
        let spec = spec1();
        let ap = build_complex(&SystemAtPosition::new(&fam, &spec, 0, Flavor::Ap));
        let md = build_complex(&SystemAtPosition::new(&fam, &spec, 0, Flavor::ApModified));
        assert_eq!(labels(&ap), labels(&md));
        let strip = |name: &str| name.split('_').next().unwrap().to_string();
        for e in 0..ap.edge_count() {
            assert_eq!(
                strip(&ap.vertex_names()[ap.head_of(e)]),
                md.vertex_names()[md.head_of(e)]
            );
            assert_eq!(
                strip(&ap.vertex_names()[ap.tail_of(e)]),
                md.vertex_names()[md.tail_of(e)]
            );
        }
        // no class merges endpoints with different overlap words
        for v in 0..ap.vertex_count() {
            let mut overlaps = std::collections::BTreeSet::new();
            for e in 0..ap.edge_count() {
                if ap.head_of(e) == v {
                    overlaps.insert(ap.edge_label(e)[1..].to_string());
                }
                if ap.tail_of(e) == v {
                    overlaps.insert(ap.edge_label(e)[..2].to_string());
                }
            }
            assert_eq!(overlaps.len(), 1);
        }
    }

    #[test]
    fn coboundary_rows_sum_to_zero() {
        let fam = bba();
        let spec = spec1();
        for flavor in Flavor::all() {
            let c = build_complex(&SystemAtPosition::new(&fam, &spec, 0, flavor));
            let d = coboundary_matrix(&c);
            for i in 0..d.rows() {
                let sum: BigInt = (0..d.cols()).map(|j| d.get(i, j).clone()).sum();
                assert_eq!(sum, BigInt::from(0));
            }
        }
    }

    #[test]
    fn aba_coboundary_has_one_zero_row() {
        let fam = aba();
        let spec = spec1();
        let c = build_complex(&SystemAtPosition::new(&fam, &spec, 0, Flavor::Ap));
        let d = coboundary_matrix(&c);
        assert_eq!((d.rows(), d.cols()), (5, 3));
        let zero_rows = (0..d.rows())
            .filter(|&i| (0..d.cols()).all(|j| d.get(i, j) == &BigInt::from(0)))
            .count();
        assert_eq!(zero_rows, 1);
    }

    #[test]
    fn single_loop_coboundary() {
        let fam = SubstitutionFamily::from_rules(&["a"], &[("phi", &[("a", "aa")])]).unwrap();
        let spec = spec1();
        let c = build_complex(&SystemAtPosition::new(&fam, &spec, 0, Flavor::Ap));
        let d = coboundary_matrix(&c);
        assert_eq!((d.rows(), d.cols()), (1, 1));
        assert!(d.is_zero_matrix());
    }

    #[test]
    fn bbaaab_bonding_golden_matrices() {
        let fam = bba();
        let spec = spec1();
        let src = SystemAtPosition::new(&fam, &spec, 1, Flavor::Ap);
        let tgt = SystemAtPosition::new(&fam, &spec, 0, Flavor::Ap);
        let b = bonding_maps(&src, &tgt).unwrap();
        let a1_expected = IntMatrix::from_i64_rows(&[
            &[1, 1, 1, 1, 0, 1, 1],
            &[1, 1, 1, 1, 0, 1, 1],
            &[0, 0, 1, 0, 1, 1, 1],
            &[1, 1, 1, 1, 0, 1, 1],
            &[1, 1, 1, 1, 0, 1, 1],
            &[0, 0, 1, 0, 1, 1, 1],
            &[0, 0, 1, 0, 1, 1, 1],
        ]);
        assert_eq!(b.a1, a1_expected);
        // A0 concentrates on a single column of ones
        let ones: Vec<usize> = (0..b.a0.cols())
            .filter(|&j| (0..b.a0.rows()).any(|i| !b.a0.get(i, j).is_zero()))
            .collect();
        assert_eq!(ones.len(), 1);
        for i in 0..b.a0.rows() {
            assert_eq!(b.a0.get(i, ones[0]), &BigInt::from(1));
        }
    }

    #[test]
    fn fibonacci_left_collared_bonding() {
        let fam =
            SubstitutionFamily::from_rules(&["a", "b"], &[("phi", &[("a", "ab"), ("b", "a")])])
                .unwrap();
        let spec = spec1();
        let src = SystemAtPosition::new(&fam, &spec, 1, Flavor::ApLeft);
        let tgt = SystemAtPosition::new(&fam, &spec, 0, Flavor::ApLeft);
        let b = bonding_maps(&src, &tgt).unwrap();
        // rows aa, ab, ba, bb over columns aa, ab, ba, bb
        assert_eq!(
            b.a1,
            IntMatrix::from_i64_rows(&[&[0, 1, 1, 0], &[0, 0, 1, 0], &[1, 1, 0, 0], &[1, 0, 0, 0]])
        );
        assert_eq!(b.a0, IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn a1_row_sums_are_middle_image_lengths() {
        let fam = bba();
        let spec = spec1();
        for flavor in Flavor::all() {
            let src = SystemAtPosition::new(&fam, &spec, 1, flavor);
            let tgt = SystemAtPosition::new(&fam, &spec, 0, flavor);
            let b = bonding_maps(&src, &tgt).unwrap();
            let c = build_complex(&src);
            let phi = fam.substitution(0);
            for (i, e) in c.edges().iter().enumerate() {
                // middle letter for 3-word edges, second letter for 2-word edges
                let sum: BigInt = (0..b.a1.cols()).map(|j| b.a1.get(i, j).clone()).sum();
                assert_eq!(sum, BigInt::from(phi.image(e.at(1)).len()));
            }
        }
    }

    #[test]
    fn summed_column_transform_identity() {
        // pulling back the all-edges-with-second-letter-s cochain through A1
        // redistributes by letter counts of the images
        let fam = SubstitutionFamily::from_rules(
            &["a", "b", "c"],
            &[
                ("phi1", &[("a", "ab"), ("b", "bc"), ("c", "ca")]),
                ("phi2", &[("a", "bb"), ("b", "cc"), ("c", "ac")]),
            ],
        )
        .unwrap();
        let spec = SequenceSpec::new(vec![], vec![0, 1], 2).unwrap();
        let src = SystemAtPosition::new(&fam, &spec, 1, Flavor::ApLeft);
        let tgt = SystemAtPosition::new(&fam, &spec, 0, Flavor::ApLeft);
        let b = bonding_maps(&src, &tgt).unwrap();
        let phi = fam.substitution(spec.index_at(1));
        let n = fam.alphabet().len();
        let csrc = build_complex(&src);
        let ctgt = build_complex(&tgt);
        for s in 0..n {
            // indicator of target edges with second letter s
            let mut ind = IntMatrix::zero(ctgt.edge_count(), 1);
            for (j, e) in ctgt.edges().iter().enumerate() {
                if e.at(1) == s {
                    ind.set(j, 0, BigInt::from(1));
                }
            }
            let pulled = b.a1.mul(&ind);
            for (i, e) in csrc.edges().iter().enumerate() {
                let r = e.at(1);
                let count = phi.image(r).letters().iter().filter(|&&l| l == s).count();
                assert_eq!(pulled.get(i, 0), &BigInt::from(count));
            }
        }
    }

    #[test]
    fn coboundary_algebra_examples() {
        use crate::zmatrix::{cokernel, kernel_basis, snf};
        // connected-graph coboundaries have unit invariant factors and an
        // all-ones kernel line
        let fam = bba();
        let spec = spec1();
        let d = coboundary_matrix(&build_complex(&SystemAtPosition::new(
            &fam,
            &spec,
            0,
            Flavor::Ap,
        )));
        let res = snf(&d);
        assert_eq!(res.rank(), 5);
        assert!(res
            .invariant_factors()
            .iter()
            .all(|f| f == &BigInt::from(1)));
        let q = cokernel(&d);
        assert_eq!(q.free_rank, 2);
        assert!(q.torsion.is_empty());
        let k = kernel_basis(&d);
        assert_eq!(k.cols(), 1);
        for i in 0..k.rows() {
            assert_eq!(k.get(i, 0).clone().abs(), BigInt::from(1));
            assert_eq!(k.get(i, 0), k.get(0, 0));
        }
        // the full left-collared complex over two letters: 4x2 coboundary
        // with cokernel of free rank 3
        let dl = coboundary_matrix(&build_complex(&SystemAtPosition::new(
            &fam,
            &spec,
            0,
            Flavor::ApLeft,
        )));
        assert_eq!((dl.rows(), dl.cols()), (4, 2));
        let ql = cokernel(&dl);
        assert_eq!(ql.free_rank, 3);
    }

    #[test]
    fn bonding_rejects_mismatched_flavors() {
        let fam = bba();
        let spec = spec1();
        let src = SystemAtPosition::new(&fam, &spec, 1, Flavor::Ap);
        let tgt = SystemAtPosition::new(&fam, &spec, 0, Flavor::ApLeft);
        assert!(matches!(
            bonding_maps(&src, &tgt),
            Err(ComplexError::FlavorMismatch(..))
        ));
        let tgt2 = SystemAtPosition::new(&fam, &spec, 1, Flavor::Ap);
        assert!(matches!(
            bonding_maps(&src, &tgt2),
            Err(ComplexError::PositionMismatch { .. })
        ));
    }

    #[test]
    fn dot_export_left_complex() {
        let fam = bba();
        let spec = spec1();
        let c = build_complex(&SystemAtPosition::new(&fam, &spec, 0, Flavor::ApLeft));
        let dot = export_dot(&c);
        assert_eq!(dot.matches("->").count(), 4);
        assert_eq!(dot.matches("[label=").count(), 2 + 4);
        assert!(dot.starts_with("digraph"));
    }

    #[test]
    fn dot_export_ap_complex_with_subscripts() {
        let fam = bba();
        let spec = spec1();
        let c = build_complex(&SystemAtPosition::new(&fam, &spec, 0, Flavor::Ap));
        let dot = export_dot(&c);
        assert_eq!(dot.matches("->").count(), 7);
        assert!(dot.contains("\"aa_1\""));
        assert!(dot.contains("\"aa_2\""));
    }

    #[test]
    fn json_roundtrip() {
        let fam = bba();
        let spec = spec1();
        for flavor in Flavor::all() {
            let c = build_complex(&SystemAtPosition::new(&fam, &spec, 0, flavor));
            let parsed = parse_json(&export_json(&c)).unwrap();
            assert_eq!(parsed, c);
        }
    }
}
