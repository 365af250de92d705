//! Face lattice of the cyclohedron `W_n`.
//!
//! A face is a *partial cyclic bracketing* of the word `x_1 x_2 ... x_n`,
//! modelled as a marked laminar family:
//!
//! - proper brackets are cyclic intervals of `2..=n-1` consecutive letters,
//!   pairwise nested or disjoint;
//! - at most one full bracket, carrying a cut position `c`: the word read
//!   linearly as `x_{c+1} ... x_c`. Proper brackets may not straddle the cut.
//!
//! The same labels name the boundary strata of the compactified space of
//! cyclically ordered points on the circle: a bracket is a cluster of
//! colliding points, nesting records collisions at different rates, and the
//! full bracket is a total collapse seen on the tangent line.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{PegsError, Result};

/// Largest `n` accepted by [`enumerate_faces`].
pub const MAX_ENUMERATION_N: usize = 9;

/// A single bracket. Indices are 1-based and read cyclically mod `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Bracket {
    /// `length` consecutive letters starting at `start`.
    Proper { start: usize, length: usize },
    /// All letters; the linear word starts right after `cut`.
    Full { cut: usize },
}

impl Bracket {
    pub fn proper(start: usize, length: usize) -> Self {
        Bracket::Proper { start, length }
    }

    pub fn full(cut: usize) -> Self {
        Bracket::Full { cut }
    }

    pub fn is_full(&self) -> bool {
        matches!(self, Bracket::Full { .. })
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        match *self {
            Bracket::Proper { start, length } => {
                if !(1..=n).contains(&start) || length < 2 || length > n - 1 {
                    return Err(PegsError::Contract(format!(
                        "bracket start={start} length={length} invalid for n={n}"
                    )));
                }
            }
            Bracket::Full { cut } => {
                if !(1..=n).contains(&cut) {
                    return Err(PegsError::Contract(format!("cut {cut} invalid for n={n}")));
                }
            }
        }
        Ok(())
    }

    /// Bitmask of the member letters (bit `i-1` for letter `i`).
    pub fn mask(&self, n: usize) -> u64 {
        match *self {
            Bracket::Proper { start, length } => (0..length)
                .map(|k| 1u64 << ((start - 1 + k) % n))
                .fold(0, |acc, b| acc | b),
            Bracket::Full { .. } => (1u64 << n) - 1,
        }
    }

    /// 1-based member letters in reading order.
    pub fn members(&self, n: usize) -> Vec<usize> {
        match *self {
            Bracket::Proper { start, length } => {
                (0..length).map(|k| (start - 1 + k) % n + 1).collect()
            }
            Bracket::Full { cut } => (0..n).map(|k| (cut + k) % n + 1).collect(),
        }
    }

    /// Rotate letter indices by `k` (letter `i` becomes `i + k`).
    pub fn rotate(&self, n: usize, k: usize) -> Self {
        let r = |i: usize| (i - 1 + k) % n + 1;
        match *self {
            Bracket::Proper { start, length } => Bracket::Proper { start: r(start), length },
            Bracket::Full { cut } => Bracket::Full { cut: r(cut) },
        }
    }

    fn write(&self, n: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if n >= 10 { "," } else { "" };
        let word = self
            .members(n)
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(sep);
        match self {
            Bracket::Proper { .. } => write!(f, "({word})"),
            Bracket::Full { .. } => write!(f, "[{word}]"),
        }
    }
}

/// True iff `{a, b}` extends to a valid stratum label.
pub fn compatible(a: &Bracket, b: &Bracket, n: usize) -> bool {
    if a == b {
        return true;
    }
    match (*a, *b) {
        (Bracket::Full { .. }, Bracket::Full { .. }) => false,
        (Bracket::Full { cut }, p @ Bracket::Proper { .. })
        | (p @ Bracket::Proper { .. }, Bracket::Full { cut }) => !straddles(&p, cut, n),
        _ => {
            let (ma, mb) = (a.mask(n), b.mask(n));
            let common = ma & mb;
            common == 0 || common == ma || common == mb
        }
    }
}

/// Does a proper bracket contain both letters `cut` and `cut + 1`?
fn straddles(p: &Bracket, cut: usize, n: usize) -> bool {
    let m = p.mask(n);
    let here = 1u64 << (cut - 1);
    let next = 1u64 << (cut % n);
    m & here != 0 && m & next != 0
}

/// A face of `W_n`: a set of pairwise compatible brackets, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StratumLabel {
    pub n: usize,
    pub brackets: Vec<Bracket>,
}

impl StratumLabel {
    /// The top face (open stratum).
    pub fn interior(n: usize) -> Self {
        StratumLabel { n, brackets: Vec::new() }
    }

    pub fn new(n: usize, mut brackets: Vec<Bracket>) -> Result<Self> {
        if n < 2 {
            return Err(PegsError::Range(format!("n = {n} < 2")));
        }
        for b in &brackets {
            b.validate(n)?;
        }
        brackets.sort();
        brackets.dedup();
        for (i, a) in brackets.iter().enumerate() {
            for b in &brackets[i + 1..] {
                if !compatible(a, b, n) {
                    return Err(PegsError::Contract(format!(
                        "brackets {} and {} are not compatible",
                        DisplayBracket(a, n),
                        DisplayBracket(b, n)
                    )));
                }
            }
        }
        Ok(StratumLabel { n, brackets })
    }

    pub fn is_interior(&self) -> bool {
        self.brackets.is_empty()
    }

    pub fn codim(&self) -> usize {
        self.brackets.len()
    }

    pub fn dim(&self) -> usize {
        self.n - 1 - self.codim()
    }

    pub fn full_bracket(&self) -> Option<usize> {
        self.brackets.iter().find_map(|b| match b {
            Bracket::Full { cut } => Some(*cut),
            _ => None,
        })
    }

    pub fn rotate(&self, k: usize) -> Self {
        let mut brackets: Vec<_> = self.brackets.iter().map(|b| b.rotate(self.n, k)).collect();
        brackets.sort();
        StratumLabel { n: self.n, brackets }
    }

    /// Whether `b` can be added without breaking the invariants.
    pub fn accepts(&self, b: &Bracket) -> bool {
        !self.brackets.contains(b) && self.brackets.iter().all(|a| compatible(a, b, self.n))
    }

    pub fn with(&self, b: Bracket) -> Self {
        let mut brackets = self.brackets.clone();
        brackets.push(b);
        brackets.sort();
        StratumLabel { n: self.n, brackets }
    }
}

struct DisplayBracket<'a>(&'a Bracket, usize);

impl fmt::Display for DisplayBracket<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.write(self.1, f)
    }
}

impl fmt::Display for StratumLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.brackets.is_empty() {
            return write!(f, "()");
        }
        for b in &self.brackets {
            b.write(self.n, f)?;
        }
        Ok(())
    }
}

/// Every bracket valid for `n`, in canonical order.
pub fn all_brackets(n: usize) -> Vec<Bracket> {
    let mut out = Vec::new();
    for start in 1..=n {
        for length in 2..n {
            out.push(Bracket::proper(start, length));
        }
    }
    for cut in 1..=n {
        out.push(Bracket::full(cut));
    }
    out.sort();
    out
}

/// Faces of `W_n`, graded by dimension, with cover relations.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FaceLattice {
    pub n: usize,
    /// Sorted by codimension, then by bracket list. Index 0 is the top face.
    pub faces: Vec<StratumLabel>,
    /// `(lower, upper)` index pairs: `lower` is `upper` plus one bracket.
    pub covers: Vec<(usize, usize)>,
}

impl FaceLattice {
    pub fn index_of(&self, label: &StratumLabel) -> Option<usize> {
        self.faces.binary_search_by(|f| face_order(f, label)).ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &StratumLabel> {
        self.faces.iter().filter(move |f| f.dim() == 0)
    }

    /// JSON document `{"n":..,"faces":[{"brackets":[..],"dim":d}],"covers":[[i,j],..]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let faces: Vec<_> = self
            .faces
            .iter()
            .map(|f| serde_json::json!({ "brackets": f.brackets, "dim": f.dim() }))
            .collect();
        let covers: Vec<_> = self.covers.iter().map(|&(a, b)| [a, b]).collect();
        serde_json::json!({ "n": self.n, "faces": faces, "covers": covers })
    }
}

fn face_order(a: &StratumLabel, b: &StratumLabel) -> std::cmp::Ordering {
    a.codim().cmp(&b.codim()).then_with(|| a.brackets.cmp(&b.brackets))
}

/// All bracket sets extending `base` (including `base` itself).
fn extensions(base: &StratumLabel) -> Vec<StratumLabel> {
    let n = base.n;
    let candidates: Vec<Bracket> = all_brackets(n).into_iter().filter(|b| base.accepts(b)).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<Bracket> = Vec::new();
    extend_from(n, &base.brackets, &candidates, 0, &mut chosen, &mut out);
    out
}

fn extend_from(
    n: usize,
    base: &[Bracket],
    candidates: &[Bracket],
    from: usize,
    chosen: &mut Vec<Bracket>,
    out: &mut Vec<StratumLabel>,
) {
    let mut brackets: Vec<Bracket> = base.iter().chain(chosen.iter()).copied().collect();
    brackets.sort();
    out.push(StratumLabel { n, brackets });
    for i in from..candidates.len() {
        let b = candidates[i];
        if chosen.iter().all(|a| compatible(a, &b, n)) {
            chosen.push(b);
            extend_from(n, base, candidates, i + 1, chosen, out);
            chosen.pop();
        }
    }
}

/// Enumerate the face lattice of `W_n` for `3 <= n <= 9`.
pub fn enumerate_faces(n: usize) -> Result<FaceLattice> {
    if !(3..=MAX_ENUMERATION_N).contains(&n) {
        return Err(PegsError::Range(format!(
            "n = {n} outside supported range 3..={MAX_ENUMERATION_N}"
        )));
    }
    let mut faces = extensions(&StratumLabel::interior(n));
    faces.sort_by(face_order);

    let index: HashMap<&[Bracket], usize> =
        faces.iter().enumerate().map(|(i, f)| (f.brackets.as_slice(), i)).collect();
    let brackets = all_brackets(n);
    let mut covers = Vec::new();
    let mut scratch = Vec::with_capacity(n);
    for (upper, face) in faces.iter().enumerate() {
        for b in &brackets {
            if face.accepts(b) {
                scratch.clear();
                scratch.extend_from_slice(&face.brackets);
                scratch.push(*b);
                scratch.sort();
                covers.push((index[scratch.as_slice()], upper));
            }
        }
    }
    covers.sort();
    Ok(FaceLattice { n, faces, covers })
}

/// `f_d` = number of faces of dimension `d`, for `d = 0..=n-1`.
pub fn f_vector(lattice: &FaceLattice) -> Vec<usize> {
    let mut f = vec![0; lattice.n];
    for face in &lattice.faces {
        f[face.dim()] += 1;
    }
    f
}

/// CSV line `n,f0,f1,...`.
pub fn f_vector_csv(lattice: &FaceLattice) -> String {
    std::iter::once(lattice.n)
        .chain(f_vector(lattice))
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// A factor in the product decomposition of a facet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Factor {
    /// Linear bracketings of a word of this many letters (dimension `k - 2`).
    Associahedron(usize),
    /// Cyclic bracketings of a word of this many letters (dimension `k - 1`).
    Cyclohedron(usize),
}

impl Factor {
    pub fn dim(&self) -> usize {
        match *self {
            Factor::Associahedron(k) => k.saturating_sub(2),
            Factor::Cyclohedron(k) => k.saturating_sub(1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PolygonShape {
    Parallelogram,
    Pentagon,
    Hexagon,
    Other(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetDescriptor {
    pub factors: Vec<Factor>,
    /// Faces contained in the facet, graded by dimension `0..=n-2`.
    pub f_vector: Vec<usize>,
    /// Shape name when the facet is two-dimensional.
    pub polygon: Option<PolygonShape>,
}

/// Describe a facet (codimension-one face) as a product of smaller
/// bracketing posets and count the faces it contains.
pub fn facet_shape(label: &StratumLabel) -> Result<FacetDescriptor> {
    if label.codim() != 1 {
        return Err(PegsError::Contract(format!(
            "facet_shape needs a codimension-1 label, got codim {}",
            label.codim()
        )));
    }
    let n = label.n;
    let factors = match label.brackets[0] {
        Bracket::Proper { length, .. } => {
            let mut fs = vec![Factor::Associahedron(length), Factor::Cyclohedron(n - length + 1)];
            fs.retain(|f| f.dim() > 0);
            fs
        }
        Bracket::Full { .. } => vec![Factor::Associahedron(n)],
    };
    let mut f = vec![0; n - 1];
    for face in extensions(label) {
        f[face.dim()] += 1;
    }
    let polygon = (n == 4).then(|| match f[1] {
        4 => PolygonShape::Parallelogram,
        5 => PolygonShape::Pentagon,
        6 => PolygonShape::Hexagon,
        k => PolygonShape::Other(k),
    });
    Ok(FacetDescriptor { factors, f_vector: f, polygon })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn catalan(k: u64) -> u64 {
        binom(2 * k, k) / (k + 1)
    }

    #[test]
    fn compatibility_examples() {
        let n = 4;
        assert!(compatible(&Bracket::proper(2, 2), &Bracket::proper(4, 2), n));
        assert!(compatible(&Bracket::proper(1, 2), &Bracket::proper(1, 3), n));
        assert!(!compatible(&Bracket::proper(1, 2), &Bracket::proper(2, 2), n));
        assert!(!compatible(&Bracket::full(1), &Bracket::full(2), n));
        // (12) straddles the cut after 1.
        assert!(!compatible(&Bracket::full(1), &Bracket::proper(1, 2), n));
        assert!(compatible(&Bracket::full(4), &Bracket::proper(1, 2), n));
    }

    #[test]
    fn small_f_vectors() {
        assert_eq!(f_vector(&enumerate_faces(3).unwrap()), vec![6, 6, 1]);
        assert_eq!(f_vector(&enumerate_faces(4).unwrap()), vec![20, 30, 12, 1]);
    }

    #[test]
    fn top_face_dimension() {
        let lat = enumerate_faces(3).unwrap();
        assert!(lat.faces[0].is_interior());
        assert_eq!(lat.faces[0].dim(), 2);
    }

    #[test]
    fn range_guard() {
        assert!(matches!(enumerate_faces(2), Err(PegsError::Range(_))));
        assert!(matches!(enumerate_faces(10), Err(PegsError::Range(_))));
    }

    #[test]
    fn label_rejects_crossing() {
        let err = StratumLabel::new(4, vec![Bracket::proper(1, 2), Bracket::proper(2, 2)]);
        assert!(err.is_err());
        let ok = StratumLabel::new(4, vec![Bracket::proper(4, 2), Bracket::proper(2, 2)]).unwrap();
        assert_eq!(ok.to_string(), "(23)(41)");
    }

    #[test]
    fn full_bracket_display_reads_from_cut() {
        let l = StratumLabel::new(4, vec![Bracket::full(2)]).unwrap();
        assert_eq!(l.to_string(), "[3412]");
    }

    #[test]
    fn w4_facets() {
        let shape = |b| facet_shape(&StratumLabel::new(4, vec![b]).unwrap()).unwrap();
        let full = shape(Bracket::full(4));
        assert_eq!(full.polygon, Some(PolygonShape::Pentagon));
        assert_eq!(full.f_vector, vec![5, 5, 1]);
        assert_eq!(full.factors, vec![Factor::Associahedron(4)]);
        assert_eq!(shape(Bracket::proper(1, 3)).polygon, Some(PolygonShape::Parallelogram));
        let hex = shape(Bracket::proper(1, 2));
        assert_eq!(hex.polygon, Some(PolygonShape::Hexagon));
        assert_eq!(hex.factors, vec![Factor::Cyclohedron(3)]);
    }

    #[test]
    fn facet_shape_requires_codim_one() {
        assert!(facet_shape(&StratumLabel::interior(4)).is_err());
        let two = StratumLabel::new(4, vec![Bracket::proper(1, 2), Bracket::proper(3, 2)]).unwrap();
        assert!(facet_shape(&two).is_err());
    }

    #[test]
    fn facet_vertex_counts_match_product_of_factors() {
        // vertices(K_k) = Catalan(k-1), vertices(W_k) = C(2k-2, k-1)
        for n in 4..=6 {
            let lat = enumerate_faces(n).unwrap();
            for facet in lat.faces.iter().filter(|f| f.codim() == 1) {
                let d = facet_shape(facet).unwrap();
                let expected: u64 = d
                    .factors
                    .iter()
                    .map(|f| match *f {
                        Factor::Associahedron(k) => catalan(k as u64 - 1),
                        Factor::Cyclohedron(k) => binom(2 * k as u64 - 2, k as u64 - 1),
                    })
                    .product();
                assert_eq!(d.f_vector[0] as u64, expected, "facet {facet}");
            }
        }
    }

    #[test]
    fn covers_differ_by_one_bracket() {
        let lat = enumerate_faces(5).unwrap();
        for &(lo, hi) in &lat.covers {
            let (a, b) = (&lat.faces[lo], &lat.faces[hi]);
            assert_eq!(a.codim(), b.codim() + 1);
            assert!(b.brackets.iter().all(|x| a.brackets.contains(x)));
        }
    }

    #[test]
    fn index_lookup() {
        let lat = enumerate_faces(4).unwrap();
        for (i, f) in lat.faces.iter().enumerate() {
            assert_eq!(lat.index_of(f), Some(i));
        }
    }

    #[test]
    fn lattice_json_shape() {
        let lat = enumerate_faces(3).unwrap();
        let v = lat.to_json();
        assert_eq!(v["n"], 3);
        assert_eq!(v["faces"].as_array().unwrap().len(), 13);
        assert_eq!(v["faces"][0]["dim"], 2);
        assert_eq!(f_vector_csv(&lat), "3,6,6,1");
        let b = serde_json::to_string(&Bracket::proper(2, 3)).unwrap();
        assert_eq!(b, r#"{"start":2,"length":3}"#);
        assert_eq!(serde_json::to_string(&Bracket::full(4)).unwrap(), r#"{"cut":4}"#);
    }
}
