//! Colored planar rook diagrams: the monoid `P_m^n`.
//!
//! A diagram has two rows of `m` vertices. Each edge joins a top vertex to a bottom
//! vertex and carries a color in `1..=n`. Every vertex meets at most one edge, and
//! two edges of the same color never cross. Vertices are numbered from 1.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{letter_counts, multinomial, words};
use crate::error::{Error, Result, Row};

/// One colored edge, `top` and `bottom` in `1..=m`, `color` in `1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub top: usize,
    pub bottom: usize,
    pub color: usize,
}

impl Edge {
    pub fn new(top: usize, bottom: usize, color: usize) -> Self {
        Self { top, bottom, color }
    }
}

/// A color word along one row of a diagram; letter 0 marks an isolated vertex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "BoundaryJson", into = "BoundaryJson")]
pub struct Boundary {
    m: usize,
    n: usize,
    colors: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct BoundaryJson {
    m: usize,
    n: usize,
    colors: Vec<usize>,
}

impl TryFrom<BoundaryJson> for Boundary {
    type Error = Error;
    fn try_from(j: BoundaryJson) -> Result<Self> {
        if j.colors.len() != j.m {
            return Err(Error::BoundaryLength {
                len: j.colors.len(),
                m: j.m,
            });
        }
        Boundary::new(j.n, j.colors)
    }
}

impl From<Boundary> for BoundaryJson {
    fn from(b: Boundary) -> Self {
        BoundaryJson {
            m: b.m,
            n: b.n,
            colors: b.colors,
        }
    }
}

impl Boundary {
    pub fn new(n: usize, colors: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoColors);
        }
        if let Some(&bad) = colors.iter().find(|&&c| c > n) {
            return Err(Error::ColorOutOfRange {
                color: bad,
                min: 0,
                n,
            });
        }
        Ok(Self {
            m: colors.len(),
            n,
            colors,
        })
    }

    /// The representative boundary `0…0 1…1 ⋯ n…n` with the given letter counts.
    pub fn canonical(counts: &[usize]) -> Result<Self> {
        if counts.len() < 2 {
            return Err(Error::NoColors);
        }
        Self::new(counts.len() - 1, crate::combinatorics::sorted_word(counts))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// `(|T₀|, |T₁|, …, |T_n|)`.
    pub fn counts(&self) -> Vec<usize> {
        letter_counts(&self.colors, self.n + 1)
    }

    /// The positions (1-based) carrying letter `color`.
    pub fn positions(&self, color: usize) -> Vec<usize> {
        self.colors
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == color)
            .map(|(p, _)| p + 1)
            .collect()
    }

    /// `T ⊆ S`: every vertex of color `i ≥ 1` in `self` has color `i` in `other`.
    /// Isolated vertices are unconstrained.
    pub fn is_contained_in(&self, other: &Boundary) -> bool {
        self.m == other.m
            && self.n == other.n
            && self
                .colors
                .iter()
                .zip(&other.colors)
                .all(|(&a, &b)| a == 0 || a == b)
    }
}

impl fmt::Debug for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Boundary({})", crate::combinatorics::word_key(&self.colors))
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::combinatorics::word_key(&self.colors))
    }
}

/// An element of `P_m^n`. Edges are kept sorted by top vertex; the top and bottom
/// boundary words are cached alongside.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DiagramJson", into = "DiagramJson")]
pub struct Diagram {
    m: usize,
    n: usize,
    edges: Vec<Edge>,
    top: Vec<usize>,
    bottom: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    m: usize,
    n: usize,
    edges: Vec<[usize; 3]>,
}

impl TryFrom<DiagramJson> for Diagram {
    type Error = Error;
    fn try_from(j: DiagramJson) -> Result<Self> {
        Diagram::new(
            j.m,
            j.n,
            j.edges.into_iter().map(|[t, b, c]| Edge::new(t, b, c)),
        )
    }
}

impl From<Diagram> for DiagramJson {
    fn from(d: Diagram) -> Self {
        DiagramJson {
            m: d.m,
            n: d.n,
            edges: d.edges.iter().map(|e| [e.top, e.bottom, e.color]).collect(),
        }
    }
}

impl Diagram {
    /// Validates the edge list and returns the diagram in canonical form.
    pub fn new(m: usize, n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoColors);
        }
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort();
        let mut top = vec![0; m];
        let mut bottom = vec![0; m];
        for e in &edges {
            for index in [e.top, e.bottom] {
                if index == 0 || index > m {
                    return Err(Error::VertexOutOfRange { index, m });
                }
            }
            if e.color == 0 || e.color > n {
                return Err(Error::ColorOutOfRange {
                    color: e.color,
                    min: 1,
                    n,
                });
            }
            if top[e.top - 1] != 0 {
                return Err(Error::DuplicateEndpoint {
                    row: Row::Top,
                    vertex: e.top,
                });
            }
            if bottom[e.bottom - 1] != 0 {
                return Err(Error::DuplicateEndpoint {
                    row: Row::Bottom,
                    vertex: e.bottom,
                });
            }
            top[e.top - 1] = e.color;
            bottom[e.bottom - 1] = e.color;
        }
        for (k, a) in edges.iter().enumerate() {
            for b in &edges[k + 1..] {
                if a.color == b.color && b.bottom < a.bottom {
                    return Err(Error::SameColorCrossing {
                        color: a.color,
                        first: (a.top, a.bottom),
                        second: (b.top, b.bottom),
                    });
                }
            }
        }
        Ok(Self {
            m,
            n,
            edges,
            top,
            bottom,
        })
    }

    /// The edgeless diagram on `m` vertices per row.
    pub fn empty(m: usize, n: usize) -> Result<Self> {
        Self::new(m, n, [])
    }

    /// `I_color` in `P_1^n`; color 0 gives the edgeless `I_0`.
    pub fn unit(n: usize, color: usize) -> Result<Self> {
        if color == 0 {
            Self::empty(1, n)
        } else {
            Self::new(1, n, [Edge::new(1, 1, color)])
        }
    }

    /// The diagonal diagram with every vertex joined straight down in one color.
    pub fn diagonal(m: usize, n: usize, color: usize) -> Result<Self> {
        Self::new(m, n, (1..=m).map(|k| Edge::new(k, k, color)))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn top_word(&self) -> &[usize] {
        &self.top
    }

    pub fn bottom_word(&self) -> &[usize] {
        &self.bottom
    }

    /// `τ(d)`.
    pub fn top(&self) -> Boundary {
        Boundary {
            m: self.m,
            n: self.n,
            colors: self.top.clone(),
        }
    }

    /// `β(d)`.
    pub fn bottom(&self) -> Boundary {
        Boundary {
            m: self.m,
            n: self.n,
            colors: self.bottom.clone(),
        }
    }

    /// `(τ(d), β(d))`.
    pub fn boundaries(&self) -> (Boundary, Boundary) {
        (self.top(), self.bottom())
    }

    fn check_same_shape(&self, other: &Diagram) -> Result<()> {
        if self.m != other.m || self.n != other.n {
            return Err(Error::ShapeMismatch {
                left_m: self.m,
                left_n: self.n,
                right_m: other.m,
                right_n: other.n,
            });
        }
        Ok(())
    }

    /// Stacks `self` on top of `other`, keeping the concatenations of equally colored
    /// edges.
    pub fn multiply(&self, other: &Diagram) -> Result<Diagram> {
        self.check_same_shape(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Diagram) -> Diagram {
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            if other.top[e.bottom - 1] != e.color {
                continue;
            }
            let below = other
                .edges
                .binary_search_by(|x| x.top.cmp(&e.bottom))
                .map(|k| other.edges[k])
                .expect("top word and edge list agree");
            edges.push(Edge::new(e.top, below.bottom, e.color));
        }
        let mut top = vec![0; self.m];
        let mut bottom = vec![0; self.m];
        for e in &edges {
            top[e.top - 1] = e.color;
            bottom[e.bottom - 1] = e.color;
        }
        Diagram {
            m: self.m,
            n: self.n,
            edges,
            top,
            bottom,
        }
    }

    /// Reflection in the horizontal axis (matrix transpose).
    pub fn flip(&self) -> Diagram {
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge::new(e.bottom, e.top, e.color))
            .collect();
        edges.sort();
        Diagram {
            m: self.m,
            n: self.n,
            edges,
            top: self.bottom.clone(),
            bottom: self.top.clone(),
        }
    }

    /// Places `other` to the right of `self`.
    pub fn juxtapose(&self, other: &Diagram) -> Result<Diagram> {
        if self.n != other.n {
            return Err(Error::ColorCountMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let shift = self.m;
        let edges = self.edges.iter().copied().chain(
            other
                .edges
                .iter()
                .map(|e| Edge::new(e.top + shift, e.bottom + shift, e.color)),
        );
        let mut top = self.top.clone();
        top.extend_from_slice(&other.top);
        let mut bottom = self.bottom.clone();
        bottom.extend_from_slice(&other.bottom);
        Ok(Diagram {
            m: self.m + other.m,
            n: self.n,
            edges: edges.collect(),
            top,
            bottom,
        })
    }

    /// The sub-diagram keeping the edges whose bit is set in `mask` (bit `k` is the
    /// `k`-th edge in canonical order).
    pub fn sub_diagram(&self, mask: u64) -> Diagram {
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, e)| *e)
            .collect();
        let mut top = vec![0; self.m];
        let mut bottom = vec![0; self.m];
        for e in &edges {
            top[e.top - 1] = e.color;
            bottom[e.bottom - 1] = e.color;
        }
        Diagram {
            m: self.m,
            n: self.n,
            edges,
            top,
            bottom,
        }
    }

    /// All `2^size` sub-diagrams paired with the number of deleted edges.
    pub fn sub_diagrams(&self) -> impl Iterator<Item = (Diagram, usize)> + '_ {
        let size = self.size();
        (0..1u64 << size).map(move |mask| {
            let kept = mask.count_ones() as usize;
            (self.sub_diagram(mask), size - kept)
        })
    }

    /// The matrix form: entry `(t, b)` is the edge color, 0 for no edge.
    pub fn to_matrix(&self) -> Vec<Vec<usize>> {
        let mut m = vec![vec![0; self.m]; self.m];
        for e in &self.edges {
            m[e.top - 1][e.bottom - 1] = e.color;
        }
        m
    }

    pub fn from_matrix(n: usize, matrix: &[Vec<usize>]) -> Result<Diagram> {
        let m = matrix.len();
        let mut edges = Vec::new();
        for (t, row) in matrix.iter().enumerate() {
            if row.len() != m {
                return Err(Error::BoundaryLength { len: row.len(), m });
            }
            for (b, &c) in row.iter().enumerate() {
                if c != 0 {
                    edges.push(Edge::new(t + 1, b + 1, c));
                }
            }
        }
        Diagram::new(m, n, edges)
    }
}

impl Ord for Diagram {
    /// `(m, n)` first, then the bottom word, then the top word.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.m, self.n, &self.bottom, &self.top).cmp(&(other.m, other.n, &other.bottom, &other.top))
    }
}

impl PartialOrd for Diagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram(m={}, n={}, [", self.m, self.n)?;
        for (k, e) in self.edges.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}-{}:{}", e.top, e.bottom, e.color)?;
        }
        f.write_str("])")
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{}",
            crate::combinatorics::word_key(&self.top),
            crate::combinatorics::word_key(&self.bottom)
        )
    }
}

/// Connects the `k`-th top vertex of each color to the `k`-th bottom vertex of the
/// same color. This is the only planar diagram with these boundaries.
pub fn unique_planar_match(tau: &Boundary, beta: &Boundary) -> Result<Diagram> {
    if tau.m != beta.m || tau.n != beta.n {
        return Err(Error::ShapeMismatch {
            left_m: tau.m,
            left_n: tau.n,
            right_m: beta.m,
            right_n: beta.n,
        });
    }
    let mut edges = Vec::new();
    for color in 1..=tau.n {
        let tops = tau.positions(color);
        let bottoms = beta.positions(color);
        if tops.len() != bottoms.len() {
            return Err(Error::BoundaryCountMismatch {
                color,
                top: tops.len(),
                bottom: bottoms.len(),
            });
        }
        edges.extend(
            tops.into_iter()
                .zip(bottoms)
                .map(|(t, b)| Edge::new(t, b, color)),
        );
    }
    Diagram::new(tau.m, tau.n, edges)
}

/// `d_T`: the planar diagram with both boundaries equal to `t`.
pub fn idempotent_diagram(t: &Boundary) -> Diagram {
    unique_planar_match(t, t).expect("a boundary matches itself")
}

/// Largest `m` enumerated without an explicit override.
pub fn enumeration_cap(n: usize) -> usize {
    if n <= 1 {
        8
    } else {
        6
    }
}

/// Whether to honour [`enumeration_cap`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Cap {
    #[default]
    Enforce,
    Override,
}

pub(crate) fn check_cap(m: usize, n: usize, cap: Cap) -> Result<()> {
    if n == 0 {
        return Err(Error::NoColors);
    }
    let limit = enumeration_cap(n);
    if cap == Cap::Enforce && m > limit {
        return Err(Error::CapExceeded { m, n, cap: limit });
    }
    Ok(())
}

/// `|P_m^n| = Σ multinomial(m; m₀,…,m_n)²`.
pub fn monoid_order(m: usize, n: usize) -> u128 {
    crate::combinatorics::compositions(m, n + 1)
        .iter()
        .map(|c| multinomial(m, c).pow(2))
        .sum()
}

/// All boundaries of length `m`, lexicographic.
pub fn all_boundaries(m: usize, n: usize) -> Vec<Boundary> {
    words(m, n + 1)
        .into_iter()
        .map(|colors| Boundary { m, n, colors })
        .collect()
}

/// Every diagram of `P_m^n` exactly once, ordered by `(β word, τ word)`.
pub fn enumerate_diagrams(m: usize, n: usize) -> Result<Vec<Diagram>> {
    enumerate_diagrams_with(m, n, Cap::Enforce)
}

pub fn enumerate_diagrams_with(m: usize, n: usize, cap: Cap) -> Result<Vec<Diagram>> {
    check_cap(m, n, cap)?;
    let boundaries = all_boundaries(m, n);
    let mut by_counts: BTreeMap<Vec<usize>, Vec<&Boundary>> = BTreeMap::new();
    for b in &boundaries {
        by_counts.entry(b.counts()).or_default().push(b);
    }
    let mut out = Vec::with_capacity(monoid_order(m, n) as usize);
    for beta in &boundaries {
        for tau in &by_counts[&beta.counts()] {
            out.push(unique_planar_match(tau, beta)?);
        }
    }
    Ok(out)
}

/// Diagrams with bottom boundary `beta`, ordered by top word.
pub fn diagrams_with_bottom(beta: &Boundary) -> Vec<Diagram> {
    let counts = beta.counts();
    all_boundaries(beta.m, beta.n)
        .iter()
        .filter(|t| t.counts() == counts)
        .map(|t| unique_planar_match(t, beta).expect("counts agree"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: usize, n: usize, edges: &[(usize, usize, usize)]) -> Diagram {
        Diagram::new(m, n, edges.iter().map(|&(t, b, c)| Edge::new(t, b, c))).unwrap()
    }

    fn figure_one() -> Diagram {
        d(5, 2, &[(1, 2, 1), (2, 1, 2), (3, 3, 1), (4, 5, 2)])
    }

    #[test]
    fn figure_one_boundaries() {
        let b = figure_one();
        let (tau, beta) = b.boundaries();
        assert_eq!(tau.colors(), &[1, 2, 1, 2, 0]);
        assert_eq!(tau.positions(0), vec![5]);
        assert_eq!(tau.positions(1), vec![1, 3]);
        assert_eq!(tau.positions(2), vec![2, 4]);
        assert_eq!(beta.positions(0), vec![4]);
        assert_eq!(beta.positions(1), vec![2, 3]);
        assert_eq!(beta.positions(2), vec![1, 5]);
    }

    #[test]
    fn figure_one_matrix() {
        let b = figure_one();
        let m = b.to_matrix();
        assert_eq!(m[0], vec![0, 1, 0, 0, 0]);
        assert_eq!(m[1], vec![2, 0, 0, 0, 0]);
        assert_eq!(m[3], vec![0, 0, 0, 0, 2]);
        assert_eq!(m[4], vec![0; 5]);
        assert_eq!(Diagram::from_matrix(2, &m).unwrap(), b);
    }

    #[test]
    fn construction_errors() {
        let cross = Diagram::new(2, 1, [Edge::new(1, 2, 1), Edge::new(2, 1, 1)]);
        assert!(matches!(cross, Err(Error::SameColorCrossing { .. })));
        let dup = Diagram::new(2, 2, [Edge::new(1, 1, 1), Edge::new(1, 2, 2)]);
        assert!(matches!(
            dup,
            Err(Error::DuplicateEndpoint { row: Row::Top, vertex: 1 })
        ));
        let dup_bottom = Diagram::new(2, 2, [Edge::new(1, 1, 1), Edge::new(2, 1, 2)]);
        assert!(matches!(
            dup_bottom,
            Err(Error::DuplicateEndpoint { row: Row::Bottom, .. })
        ));
        assert!(matches!(
            Diagram::new(2, 1, [Edge::new(3, 1, 1)]),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            Diagram::new(2, 1, [Edge::new(1, 1, 2)]),
            Err(Error::ColorOutOfRange { .. })
        ));
        assert!(matches!(
            Diagram::new(2, 1, [Edge::new(1, 1, 0)]),
            Err(Error::ColorOutOfRange { .. })
        ));
        // crossing edges of different colors are fine
        assert!(Diagram::new(2, 2, [Edge::new(1, 2, 1), Edge::new(2, 1, 2)]).is_ok());
    }

    #[test]
    fn edgeless_boundaries() {
        let e = Diagram::empty(3, 1).unwrap();
        assert_eq!(e.top().colors(), &[0, 0, 0]);
        assert_eq!(e.bottom().colors(), &[0, 0, 0]);
        let i10 = Diagram::unit(1, 1)
            .unwrap()
            .juxtapose(&Diagram::unit(1, 0).unwrap())
            .unwrap();
        assert_eq!(i10, d(2, 1, &[(1, 1, 1)]));
        assert_eq!(i10.top().colors(), &[1, 0]);
        assert_eq!(i10.bottom().colors(), &[1, 0]);
    }

    #[test]
    fn products() {
        let a = d(2, 1, &[(1, 2, 1)]);
        let b = d(2, 1, &[(2, 1, 1)]);
        assert_eq!(a.multiply(&b).unwrap(), d(2, 1, &[(1, 1, 1)]));
        let i1 = Diagram::unit(2, 1).unwrap();
        let i2 = Diagram::unit(2, 2).unwrap();
        assert_eq!(i1.multiply(&i2).unwrap(), Diagram::unit(2, 0).unwrap());
        assert!(matches!(
            a.multiply(&Diagram::empty(3, 1).unwrap()),
            Err(Error::ShapeMismatch { .. })
        ));
        let id = Diagram::diagonal(3, 1, 1).unwrap();
        for x in enumerate_diagrams(3, 1).unwrap() {
            assert_eq!(id.multiply(&x).unwrap(), x);
            assert_eq!(x.multiply(&id).unwrap(), x);
        }
    }

    #[test]
    fn flips() {
        let b = figure_one();
        let f = b.flip();
        assert_eq!(f.top(), b.bottom());
        assert_eq!(f.bottom(), b.top());
        let e = Diagram::empty(3, 2).unwrap();
        assert_eq!(e.flip(), e);
        assert_eq!(d(2, 1, &[(1, 2, 1)]).flip(), d(2, 1, &[(2, 1, 1)]));
    }

    #[test]
    fn juxtaposition() {
        let i = |c| Diagram::unit(2, c).unwrap();
        let empty = Diagram::empty(0, 2).unwrap();
        let b = figure_one();
        assert_eq!(b.juxtapose(&empty).unwrap(), b);
        assert_eq!(empty.juxtapose(&b).unwrap(), b);
        let left = i(1).juxtapose(&i(2)).unwrap().juxtapose(&i(1)).unwrap();
        let right = i(1).juxtapose(&i(2).juxtapose(&i(1)).unwrap()).unwrap();
        assert_eq!(left, right);
        assert!(matches!(
            i(1).juxtapose(&Diagram::unit(1, 1).unwrap()),
            Err(Error::ColorCountMismatch { .. })
        ));
    }

    #[test]
    fn small_enumerations() {
        let p12 = enumerate_diagrams(1, 2).unwrap();
        assert_eq!(
            p12,
            vec![
                Diagram::unit(2, 0).unwrap(),
                Diagram::unit(2, 1).unwrap(),
                Diagram::unit(2, 2).unwrap()
            ]
        );
        assert_eq!(enumerate_diagrams(2, 1).unwrap().len(), 6);
        assert_eq!(enumerate_diagrams(2, 2).unwrap().len(), 15);
        assert_eq!(enumerate_diagrams(0, 1).unwrap().len(), 1);
        assert!(matches!(
            enumerate_diagrams(9, 1),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            enumerate_diagrams(7, 2),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn enumeration_is_sorted_by_bottom_then_top() {
        let all = enumerate_diagrams(3, 2).unwrap();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        sorted.dedup();
        assert_eq!(all.len(), sorted.len());
    }

    #[test]
    fn planar_matches() {
        let b = |n, w: &[usize]| Boundary::new(n, w.to_vec()).unwrap();
        assert_eq!(
            unique_planar_match(&b(1, &[1, 1, 0]), &b(1, &[1, 1, 0])).unwrap(),
            d(3, 1, &[(1, 1, 1), (2, 2, 1)])
        );
        assert_eq!(
            unique_planar_match(&b(1, &[1, 0]), &b(1, &[0, 1])).unwrap(),
            d(2, 1, &[(1, 2, 1)])
        );
        assert_eq!(
            unique_planar_match(&b(2, &[1, 2]), &b(2, &[2, 1])).unwrap(),
            d(2, 2, &[(1, 2, 1), (2, 1, 2)])
        );
        assert!(matches!(
            unique_planar_match(&b(1, &[1, 1]), &b(1, &[1, 0])),
            Err(Error::BoundaryCountMismatch { .. })
        ));
    }

    #[test]
    fn containment_ignores_isolated_vertices() {
        let b = |w: &[usize]| Boundary::new(2, w.to_vec()).unwrap();
        assert!(b(&[0, 0, 0]).is_contained_in(&b(&[1, 2, 0])));
        assert!(b(&[1, 0, 2]).is_contained_in(&b(&[1, 1, 2])));
        assert!(!b(&[1, 0, 2]).is_contained_in(&b(&[1, 1, 0])));
        assert!(!b(&[2]).is_contained_in(&b(&[1])));
    }

    #[test]
    fn json_schema() {
        let b = figure_one();
        let text = serde_json::to_string(&b).unwrap();
        assert_eq!(
            text,
            r#"{"m":5,"n":2,"edges":[[1,2,1],[2,1,2],[3,3,1],[4,5,2]]}"#
        );
        assert_eq!(serde_json::from_str::<Diagram>(&text).unwrap(), b);
        let bad = r#"{"m":2,"n":1,"edges":[[1,2,1],[2,1,1]]}"#;
        assert!(serde_json::from_str::<Diagram>(bad).is_err());
        let t = b.top();
        assert_eq!(
            serde_json::to_string(&t).unwrap(),
            r#"{"m":5,"n":2,"colors":[1,2,1,2,0]}"#
        );
        assert!(serde_json::from_str::<Boundary>(r#"{"m":2,"n":1,"colors":[0]}"#).is_err());
    }
}
