//! Finite `gl_{n+1}`-crystals: axiom checking, tensor products, the signature rule,
//! connected components and isomorphism.
//!
//! Nodes are addressed by index internally and by an opaque string key externally.
//! Colors `i` run over `1..=n`. Tensor products follow the convention
//!
//! ```text
//! ẽ_i(b₁⊗b₂) = ẽ_i b₁ ⊗ b₂  if φ_i(b₁) ≥ ε_i(b₂),  b₁ ⊗ ẽ_i b₂ otherwise
//! f̃_i(b₁⊗b₂) = f̃_i b₁ ⊗ b₂  if φ_i(b₁) > ε_i(b₂),  b₁ ⊗ f̃_i b₂ otherwise
//! ```

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::{self, Write as _};
use std::hash::Hash;
use std::ops::Add;

use petgraph::graph::DiGraph;
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `ε_i` and `φ_i` take values in `Z ∪ {−∞}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    NegInfinity,
    Finite(i64),
}

impl Level {
    pub fn finite(self) -> Option<i64> {
        match self {
            Level::Finite(v) => Some(v),
            Level::NegInfinity => None,
        }
    }

    pub fn plus(self, delta: i64) -> Level {
        match self {
            Level::Finite(v) => Level::Finite(v + delta),
            Level::NegInfinity => Level::NegInfinity,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(v) => write!(f, "{v}"),
            Level::NegInfinity => f.write_str("-inf"),
        }
    }
}

impl Serialize for Level {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.finite().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Level {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Option::<i64>::deserialize(d)?.map_or(Level::NegInfinity, Level::Finite))
    }
}

/// `μ = Σ μ_j ε_j`, stored as `(μ₁, …, μ_{n+1})`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n + 1])
    }

    /// `ε_j` (1-based).
    pub fn unit(n: usize, j: usize) -> Self {
        let mut w = Self::zero(n);
        w.0[j - 1] = 1;
        w
    }

    /// `μ(E_ii − E_{i+1,i+1}) = μ_i − μ_{i+1}`.
    pub fn pairing(&self, i: usize) -> i64 {
        self.0[i - 1] - self.0[i]
    }

    /// `ε_i − ε_{i+1}`.
    pub fn simple_root(n: usize, i: usize) -> Self {
        let mut w = Self::zero(n);
        w.0[i - 1] = 1;
        w.0[i] = -1;
        w
    }

    pub fn scaled(&self, c: i64) -> Self {
        Weight(self.0.iter().map(|v| v * c).collect())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `ẽ` or `f̃`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operator {
    E,
    F,
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operator::E => "e",
            Operator::F => "f",
        })
    }
}

/// Per-node data handed to [`Crystal::from_raw`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeData {
    pub key: String,
    pub wt: Weight,
    /// `ε_1 … ε_n`.
    pub eps: Vec<Level>,
    /// `φ_1 … φ_n`.
    pub phi: Vec<Level>,
}

/// A finite crystal with nodes `0..len()`.
#[derive(Clone, PartialEq, Eq)]
pub struct Crystal {
    n: usize,
    keys: Vec<String>,
    index: HashMap<String, usize>,
    wt: Vec<Weight>,
    eps: Vec<Vec<Level>>,
    phi: Vec<Vec<Level>>,
    e: Vec<Vec<Option<usize>>>,
    f: Vec<Vec<Option<usize>>>,
}

impl fmt::Debug for Crystal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Crystal(n={}, {} nodes)", self.n, self.keys.len())
    }
}

impl Crystal {
    /// Assembles a crystal from node data and operator tables (`e[b][i-1]`,
    /// `f[b][i-1]`). Only shapes are validated; axioms are left to
    /// [`Crystal::check_axioms`].
    pub fn from_raw(
        n: usize,
        nodes: Vec<NodeData>,
        e: Vec<Vec<Option<usize>>>,
        f: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoColors);
        }
        let len = nodes.len();
        let bad = |msg: String| Err(Error::InvalidCrystal(msg));
        if e.len() != len || f.len() != len {
            return bad("operator tables do not cover every node".into());
        }
        let mut index = HashMap::with_capacity(len);
        for (k, node) in nodes.iter().enumerate() {
            if index.insert(node.key.clone(), k).is_some() {
                return bad(format!("duplicate node key {:?}", node.key));
            }
            if node.wt.0.len() != n + 1 || node.eps.len() != n || node.phi.len() != n {
                return bad(format!("node {:?} has data of the wrong length", node.key));
            }
        }
        for table in [&e, &f] {
            for row in table {
                if row.len() != n || row.iter().flatten().any(|&t| t >= len) {
                    return bad("operator table row has the wrong shape".into());
                }
            }
        }
        let mut keys = Vec::with_capacity(len);
        let mut wt = Vec::with_capacity(len);
        let mut eps = Vec::with_capacity(len);
        let mut phi = Vec::with_capacity(len);
        for node in nodes {
            keys.push(node.key);
            wt.push(node.wt);
            eps.push(node.eps);
            phi.push(node.phi);
        }
        Ok(Self {
            n,
            keys,
            index,
            wt,
            eps,
            phi,
            e,
            f,
        })
    }

    /// Builds a crystal on `nodes` from operator closures. `strings` supplies
    /// `(ε_i, φ_i)`; pass `None` to take them as `ẽ_i`/`f̃_i` string lengths.
    #[allow(clippy::too_many_arguments)]
    pub fn from_operators<K, FK, FW, FE, FF>(
        n: usize,
        nodes: &[K],
        key: FK,
        wt: FW,
        raise: FE,
        lower: FF,
        strings: Option<&dyn Fn(usize, &K) -> (Level, Level)>,
    ) -> Result<Self>
    where
        K: Hash + Eq + Clone + fmt::Debug,
        FK: Fn(&K) -> String,
        FW: Fn(&K) -> Weight,
        FE: Fn(usize, &K) -> Option<K>,
        FF: Fn(usize, &K) -> Option<K>,
    {
        let position: HashMap<&K, usize> = nodes.iter().enumerate().map(|(k, x)| (x, k)).collect();
        let lookup = |target: Option<K>, from: &K| -> Result<Option<usize>> {
            match target {
                None => Ok(None),
                Some(t) => position.get(&t).copied().map(Some).ok_or_else(|| {
                    Error::InvalidCrystal(format!("operator maps {from:?} outside the node set to {t:?}"))
                }),
            }
        };
        let mut e = Vec::with_capacity(nodes.len());
        let mut f = Vec::with_capacity(nodes.len());
        for x in nodes {
            let mut er = Vec::with_capacity(n);
            let mut fr = Vec::with_capacity(n);
            for i in 1..=n {
                er.push(lookup(raise(i, x), x)?);
                fr.push(lookup(lower(i, x), x)?);
            }
            e.push(er);
            f.push(fr);
        }
        let data = nodes
            .iter()
            .enumerate()
            .map(|(b, x)| {
                let (eps, phi) = match strings {
                    Some(s) => (1..=n).map(|i| s(i, x)).unzip(),
                    None => (1..=n)
                        .map(|i| {
                            Ok((
                                Level::Finite(string_length(&e, b, i)?),
                                Level::Finite(string_length(&f, b, i)?),
                            ))
                        })
                        .collect::<Result<Vec<_>>>()?
                        .into_iter()
                        .unzip(),
                };
                Ok(NodeData {
                    key: key(x),
                    wt: wt(x),
                    eps,
                    phi,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_raw(n, data, e, f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[String] {
        &self.keys
    }

    pub fn key(&self, b: usize) -> &str {
        &self.keys[b]
    }

    pub fn index_of(&self, key: &str) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn wt(&self, b: usize) -> &Weight {
        &self.wt[b]
    }

    pub fn eps(&self, b: usize, i: usize) -> Level {
        self.eps[b][i - 1]
    }

    pub fn phi(&self, b: usize, i: usize) -> Level {
        self.phi[b][i - 1]
    }

    pub fn e(&self, i: usize, b: usize) -> Option<usize> {
        self.e[b][i - 1]
    }

    pub fn f(&self, i: usize, b: usize) -> Option<usize> {
        self.f[b][i - 1]
    }

    pub fn apply(&self, op: Operator, i: usize, b: usize) -> Option<usize> {
        match op {
            Operator::E => self.e(i, b),
            Operator::F => self.f(i, b),
        }
    }

    /// Finite `(ε_i(b), φ_i(b))`, or `None` at `−∞`.
    pub fn finite_strings(&self, b: usize, i: usize) -> Option<(usize, usize)> {
        let e = self.eps(b, i).finite()?;
        let p = self.phi(b, i).finite()?;
        Some((usize::try_from(e).ok()?, usize::try_from(p).ok()?))
    }

    /// All `f̃_i` arrows `(from, to, i)` in node order, colors ascending.
    pub fn arrows(&self) -> Vec<(usize, usize, usize)> {
        (0..self.len())
            .flat_map(|b| (1..=self.n).filter_map(move |i| self.f(i, b).map(|t| (b, t, i))))
            .collect()
    }

    /// Nodes killed by every `ẽ_i`.
    pub fn highest_nodes(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&b| self.e[b].iter().all(Option::is_none))
            .collect()
    }

    /// The crystal graph: one arc labeled `i` from `b` to `f̃_i b`.
    pub fn build_graph(&self) -> DiGraph<String, usize> {
        let mut g = DiGraph::with_capacity(self.len(), self.len() * self.n);
        let ids: Vec<_> = self.keys.iter().map(|k| g.add_node(k.clone())).collect();
        for (from, to, i) in self.arrows() {
            g.add_edge(ids[from], ids[to], i);
        }
        g
    }

    /// Node sets of the weakly connected components, each sorted, ordered by least
    /// member.
    pub fn component_indices(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.len());
        for b in 0..self.len() {
            for t in self.e[b].iter().chain(&self.f[b]).flatten() {
                uf.union(b, *t);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut first: HashMap<usize, usize> = HashMap::new();
        for b in 0..self.len() {
            let root = uf.find(b);
            let anchor = *first.entry(root).or_insert(b);
            groups.entry(anchor).or_default().push(b);
        }
        groups.into_values().collect()
    }

    pub fn components(&self) -> Vec<Crystal> {
        self.component_indices()
            .iter()
            .map(|c| self.restricted_to(c))
            .collect()
    }

    /// The component containing node `b`.
    pub fn component_of(&self, b: usize) -> Crystal {
        let comp = self
            .component_indices()
            .into_iter()
            .find(|c| c.contains(&b))
            .expect("every node lies in a component");
        self.restricted_to(&comp)
    }

    /// The full subcrystal on a union of components, in the given node order.
    fn restricted_to(&self, nodes: &[usize]) -> Crystal {
        let local: HashMap<usize, usize> = nodes.iter().enumerate().map(|(k, &b)| (b, k)).collect();
        let remap = |row: &Vec<Option<usize>>| -> Vec<Option<usize>> {
            row.iter().map(|t| t.and_then(|t| local.get(&t).copied())).collect()
        };
        Crystal {
            n: self.n,
            keys: nodes.iter().map(|&b| self.keys[b].clone()).collect(),
            index: nodes
                .iter()
                .enumerate()
                .map(|(k, &b)| (self.keys[b].clone(), k))
                .collect(),
            wt: nodes.iter().map(|&b| self.wt[b].clone()).collect(),
            eps: nodes.iter().map(|&b| self.eps[b].clone()).collect(),
            phi: nodes.iter().map(|&b| self.phi[b].clone()).collect(),
            e: nodes.iter().map(|&b| remap(&self.e[b])).collect(),
            f: nodes.iter().map(|&b| remap(&self.f[b])).collect(),
        }
    }

    /// Every violation of the crystal axioms and of the string-length property.
    pub fn check_axioms(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut report = |b: usize, i: usize, kind: ViolationKind, detail: String| {
            out.push(Violation {
                node: self.keys[b].clone(),
                color: i,
                kind,
                detail,
            })
        };
        for b in 0..self.len() {
            for i in 1..=self.n {
                let (eps, phi) = (self.eps(b, i), self.phi(b, i));
                let expected_phi = eps.plus(self.wt[b].pairing(i));
                if phi != expected_phi {
                    report(
                        b,
                        i,
                        ViolationKind::WeightPairing,
                        format!("phi={phi}, eps + <wt,h_i> = {expected_phi}"),
                    );
                }
                let root = Weight::simple_root(self.n, i);
                if let Some(t) = self.e(i, b) {
                    if self.wt[t] != &self.wt[b] + &root {
                        report(b, i, ViolationKind::WeightShift, format!("e_i moves weight to {}", self.wt[t]));
                    }
                    if self.f(i, t) != Some(b) {
                        report(b, i, ViolationKind::Inverse, format!("e_i b = {} but f_i of it is not b", self.keys[t]));
                    }
                }
                if let Some(t) = self.f(i, b) {
                    if self.wt[t] != &self.wt[b] + &root.scaled(-1) {
                        report(b, i, ViolationKind::WeightShift, format!("f_i moves weight to {}", self.wt[t]));
                    }
                    if self.e(i, t) != Some(b) {
                        report(b, i, ViolationKind::Inverse, format!("f_i b = {} but e_i of it is not b", self.keys[t]));
                    }
                }
                match eps {
                    Level::NegInfinity => {
                        if self.e(i, b).is_some() || self.f(i, b).is_some() {
                            report(b, i, ViolationKind::NegInfinity, "eps = -inf but an operator acts".into());
                        }
                    }
                    Level::Finite(v) => {
                        let up = string_length(&self.e, b, i).ok();
                        let down = string_length(&self.f, b, i).ok();
                        if up != Some(v) || Some(phi) != down.map(Level::Finite) {
                            report(
                                b,
                                i,
                                ViolationKind::StringLength,
                                format!("eps={v}, phi={phi}, string lengths {up:?}/{down:?}"),
                            );
                        }
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "nodes": (0..self.len()).map(|b| serde_json::json!({
                "key": self.keys[b],
                "wt": self.wt[b],
                "eps": self.eps[b],
                "phi": self.phi[b],
            })).collect::<Vec<_>>(),
            "edges": self.arrows().into_iter().map(|(from, to, i)| serde_json::json!({
                "from": self.keys[from],
                "to": self.keys[to],
                "i": i,
            })).collect::<Vec<_>>(),
        })
    }

    /// Reads the JSON form. `ẽ_i` is taken as the inverse of the listed `f̃_i` arrows.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Node {
            key: String,
            wt: Weight,
            eps: Vec<Level>,
            phi: Vec<Level>,
        }
        #[derive(Deserialize)]
        struct Arrow {
            from: String,
            to: String,
            i: usize,
        }
        #[derive(Deserialize)]
        struct Doc {
            n: usize,
            nodes: Vec<Node>,
            edges: Vec<Arrow>,
        }
        let doc: Doc =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let position: HashMap<&str, usize> = doc
            .nodes
            .iter()
            .enumerate()
            .map(|(k, x)| (x.key.as_str(), k))
            .collect();
        let len = doc.nodes.len();
        let mut e = vec![vec![None; doc.n]; len];
        let mut f = vec![vec![None; doc.n]; len];
        for a in &doc.edges {
            let (Some(&from), Some(&to)) = (position.get(a.from.as_str()), position.get(a.to.as_str())) else {
                return Err(Error::Parse(format!("arrow {} -> {} names an unknown node", a.from, a.to)));
            };
            if a.i == 0 || a.i > doc.n {
                return Err(Error::Parse(format!("arrow color {} outside 1..={}", a.i, doc.n)));
            }
            f[from][a.i - 1] = Some(to);
            e[to][a.i - 1] = Some(from);
        }
        let nodes = doc
            .nodes
            .into_iter()
            .map(|x| NodeData {
                key: x.key,
                wt: x.wt,
                eps: x.eps,
                phi: x.phi,
            })
            .collect();
        Self::from_raw(doc.n, nodes, e, f)
    }

    /// Graphviz rendering with one node per crystal node and one arc per `f̃_i`.
    pub fn to_dot(&self) -> String {
        self.to_dot_with(|b| self.keys[b].clone())
    }

    /// Like [`Crystal::to_dot`] with a custom first label line per node.
    pub fn to_dot_with(&self, label: impl Fn(usize) -> String) -> String {
        let mut s = String::from("digraph crystal {\n  node [shape=box];\n");
        for b in 0..self.len() {
            let _ = writeln!(
                s,
                "  n{b} [label=\"{}\\nwt={}\"];",
                escape_dot(&label(b)),
                self.wt[b]
            );
        }
        for (from, to, i) in self.arrows() {
            let _ = writeln!(
                s,
                "  n{from} -> n{to} [label=\"{i}\", colorscheme=set19, color={}];",
                (i - 1) % 9 + 1
            );
        }
        s.push_str("}\n");
        s
    }
}

fn escape_dot(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', "\\n")
}

/// Length of the `i`-string through `b` in one direction.
fn string_length(table: &[Vec<Option<usize>>], b: usize, i: usize) -> Result<i64> {
    let mut steps = 0;
    let mut cur = b;
    while let Some(next) = table[cur][i - 1] {
        steps += 1;
        cur = next;
        if steps > table.len() {
            return Err(Error::InvalidCrystal(format!(
                "operator {i} cycles through node {b}"
            )));
        }
    }
    Ok(steps as i64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// `φ_i = ε_i + ⟨wt, h_i⟩` fails.
    WeightPairing,
    /// `ẽ_i`/`f̃_i` do not shift the weight by `±(ε_i − ε_{i+1})`.
    WeightShift,
    /// `f̃_i b₂ = b₁ ⇔ ẽ_i b₁ = b₂` fails.
    Inverse,
    /// An operator acts on a node with `ε_i = −∞`.
    NegInfinity,
    /// `ε_i`/`φ_i` differ from the operator string lengths.
    StringLength,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub node: String,
    pub color: usize,
    pub kind: ViolationKind,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at {} (i={}): {}", self.kind, self.node, self.color, self.detail)
    }
}

/// Key of `b₁ ⊗ b₂`; a right factor whose key already contains `⊗` is bracketed so
/// that left-nested products read as flat tuples.
pub fn tensor_key(left: &str, right: &str) -> String {
    if right.contains('⊗') {
        format!("{left}⊗({right})")
    } else {
        format!("{left}⊗{right}")
    }
}

/// `B₁ ⊗ B₂`, nodes ordered lexicographically by factor index.
pub fn tensor(b1: &Crystal, b2: &Crystal) -> Result<Crystal> {
    if b1.n != b2.n {
        return Err(Error::ColorCountMismatch {
            left: b1.n,
            right: b2.n,
        });
    }
    let n = b1.n;
    let width = b2.len();
    let at = |x: usize, y: usize| x * width + y;
    let mut nodes = Vec::with_capacity(b1.len() * width);
    let mut e = Vec::with_capacity(nodes.capacity());
    let mut f = Vec::with_capacity(nodes.capacity());
    for x in 0..b1.len() {
        for y in 0..width {
            let mut eps = Vec::with_capacity(n);
            let mut phi = Vec::with_capacity(n);
            let mut er = Vec::with_capacity(n);
            let mut fr = Vec::with_capacity(n);
            for i in 1..=n {
                let (phi1, eps2) = (b1.phi(x, i), b2.eps(y, i));
                eps.push(b1.eps(x, i).max(eps2.plus(-b1.wt[x].pairing(i))));
                phi.push(b2.phi(y, i).max(phi1.plus(b2.wt[y].pairing(i))));
                er.push(if phi1 >= eps2 {
                    b1.e(i, x).map(|x2| at(x2, y))
                } else {
                    b2.e(i, y).map(|y2| at(x, y2))
                });
                fr.push(if phi1 > eps2 {
                    b1.f(i, x).map(|x2| at(x2, y))
                } else {
                    b2.f(i, y).map(|y2| at(x, y2))
                });
            }
            nodes.push(NodeData {
                key: tensor_key(&b1.keys[x], &b2.keys[y]),
                wt: &b1.wt[x] + &b2.wt[y],
                eps,
                phi,
            });
            e.push(er);
            f.push(fr);
        }
    }
    Crystal::from_raw(n, nodes, e, f)
}

/// `B₁ ⊗ B₂ ⊗ ⋯`, associated to the left.
pub fn tensor_all(factors: &[&Crystal]) -> Result<Crystal> {
    let (first, rest) = factors.split_first().ok_or(Error::EmptySignature)?;
    rest.iter().try_fold((*first).clone(), |acc, b| tensor(&acc, b))
}

/// Locates the factor acted on by `ẽ_i` (rightmost uncancelled `−`) or `f̃_i`
/// (leftmost uncancelled `+`). Factor `j` contributes `ε_j` minuses followed by
/// `φ_j` pluses, and each `+` immediately followed by a `−` cancels.
pub fn signature_apply(op: Operator, factors: &[(usize, usize)]) -> Result<Option<usize>> {
    if factors.is_empty() {
        return Err(Error::EmptySignature);
    }
    // Unmatched pluses as (factor, multiplicity); a minus cancels the nearest one.
    let mut pluses: Vec<(usize, usize)> = Vec::new();
    let mut last_minus = None;
    for (j, &(minus, plus)) in factors.iter().enumerate() {
        let mut remaining = minus;
        while remaining > 0 {
            match pluses.last_mut() {
                Some((_, count)) => {
                    let used = remaining.min(*count);
                    *count -= used;
                    remaining -= used;
                    if *count == 0 {
                        pluses.pop();
                    }
                }
                None => {
                    last_minus = Some(j);
                    break;
                }
            }
        }
        if plus > 0 {
            pluses.push((j, plus));
        }
    }
    Ok(match op {
        Operator::E => last_minus,
        Operator::F => pluses.first().map(|&(j, _)| j),
    })
}

/// `B₁ ⊗ ⋯ ⊗ B_k` with operators located by [`signature_apply`] in one step
/// rather than by nesting binary products. Nodes are tuples in lexicographic order.
pub fn signature_product(factors: &[&Crystal]) -> Result<Crystal> {
    signature_product_with(factors, &|op, sig| signature_apply(op, sig).expect("nonempty"))
}

/// A signature rule: which factor an operator acts on, given `(ε_i, φ_i)` per factor.
pub type SignatureRule = dyn Fn(Operator, &[(usize, usize)]) -> Option<usize> + Sync;

/// [`signature_product`] with a caller-supplied rule in place of [`signature_apply`].
pub fn signature_product_with(factors: &[&Crystal], rule: &SignatureRule) -> Result<Crystal> {
    if factors.is_empty() {
        return Err(Error::EmptySignature);
    }
    let n = factors[0].n;
    if let Some(b) = factors.iter().find(|b| b.n != n) {
        return Err(Error::ColorCountMismatch { left: n, right: b.n });
    }
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for b in factors {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..b.len()).map(move |x| {
                    let mut next = t.clone();
                    next.push(x);
                    next
                })
            })
            .collect();
    }
    let strings = |tuple: &[usize], i: usize| -> Option<Vec<(usize, usize)>> {
        tuple
            .iter()
            .zip(factors)
            .map(|(&x, b)| b.finite_strings(x, i))
            .collect()
    };
    let step = |op: Operator, i: usize, t: &Vec<usize>| -> Option<Vec<usize>> {
        let sig = strings(t, i)?;
        let j = rule(op, &sig)?;
        let moved = factors[j].apply(op, i, t[j])?;
        let mut out = t.clone();
        out[j] = moved;
        Some(out)
    };
    for t in &tuples {
        for i in 1..=n {
            if strings(t, i).is_none() {
                return Err(Error::InvalidCrystal("signature rule needs finite string lengths".into()));
            }
        }
    }
    Crystal::from_operators(
        n,
        &tuples,
        |t| {
            t.iter()
                .zip(factors)
                .map(|(&x, b)| b.key(x).to_owned())
                .reduce(|acc, k| tensor_key(&acc, &k))
                .unwrap_or_default()
        },
        |t| {
            t.iter()
                .zip(factors)
                .fold(Weight::zero(n), |acc, (&x, b)| &acc + b.wt(x))
        },
        |i, t| step(Operator::E, i, t),
        |i, t| step(Operator::F, i, t),
        None,
    )
}

/// Canonical description of one normal component: breadth-first from its unique
/// highest node, expanding `f̃_1, …, f̃_n` in order, with nodes renumbered by visit
/// order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Certificate(Vec<CertificateNode>);

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct CertificateNode {
    wt: Weight,
    eps: Vec<Level>,
    phi: Vec<Level>,
    e: Vec<Option<usize>>,
    f: Vec<Option<usize>>,
}

/// Certificate of a component together with its visit order (global indices).
fn component_certificate(b: &Crystal, component: &[usize]) -> Result<(Certificate, Vec<usize>)> {
    let highest: Vec<usize> = component
        .iter()
        .copied()
        .filter(|&x| b.e[x].iter().all(Option::is_none))
        .collect();
    if highest.len() != 1 {
        return Err(Error::NonNormalComponent {
            key: b.keys[component[0]].clone(),
            count: highest.len(),
        });
    }
    let mut order = vec![highest[0]];
    let mut seen: HashMap<usize, usize> = HashMap::from([(highest[0], 0)]);
    let mut queue = VecDeque::from([highest[0]]);
    while let Some(x) = queue.pop_front() {
        for i in 1..=b.n {
            if let Some(y) = b.f(i, x) {
                if let std::collections::hash_map::Entry::Vacant(slot) = seen.entry(y) {
                    slot.insert(order.len());
                    order.push(y);
                    queue.push_back(y);
                }
            }
        }
    }
    if order.len() != component.len() {
        return Err(Error::NonNormalComponent {
            key: b.keys[component[0]].clone(),
            count: 1,
        });
    }
    let local = |t: Option<usize>| t.map(|t| seen[&t]);
    let nodes = order
        .iter()
        .map(|&x| CertificateNode {
            wt: b.wt[x].clone(),
            eps: b.eps[x].clone(),
            phi: b.phi[x].clone(),
            e: b.e[x].iter().map(|&t| local(t)).collect(),
            f: b.f[x].iter().map(|&t| local(t)).collect(),
        })
        .collect();
    Ok((Certificate(nodes), order))
}

/// Certificates of every component, sorted.
pub fn certificates(b: &Crystal) -> Result<Vec<Certificate>> {
    let mut out = b
        .component_indices()
        .iter()
        .map(|c| component_certificate(b, c).map(|(cert, _)| cert))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// Decides isomorphism of normal crystals. On success returns `map` with
/// `map[x]` the image in `b2` of node `x` of `b1`, verified arrow by arrow.
pub fn are_isomorphic(b1: &Crystal, b2: &Crystal) -> Result<Option<Vec<usize>>> {
    if b1.n != b2.n {
        return Err(Error::ColorCountMismatch {
            left: b1.n,
            right: b2.n,
        });
    }
    if b1.len() != b2.len() {
        return Ok(None);
    }
    let left = b1
        .component_indices()
        .iter()
        .map(|c| component_certificate(b1, c))
        .collect::<Result<Vec<_>>>()?;
    let mut right: HashMap<Certificate, Vec<Vec<usize>>> = HashMap::new();
    for c in b2.component_indices() {
        let (cert, order) = component_certificate(b2, &c)?;
        right.entry(cert).or_default().push(order);
    }
    for orders in right.values_mut() {
        orders.reverse();
    }
    let mut map = vec![usize::MAX; b1.len()];
    for (cert, order) in left {
        let Some(target) = right.get_mut(&cert).and_then(Vec::pop) else {
            return Ok(None);
        };
        for (x, y) in order.into_iter().zip(target) {
            map[x] = y;
        }
    }
    if right.values().any(|v| !v.is_empty()) {
        return Ok(None);
    }
    check_isomorphism(b1, b2, &map).map_err(Error::InvalidCrystal)?;
    Ok(Some(map))
}

/// Checks that `map` is a bijection `b1 → b2` preserving `wt`, `ε`, `φ` and
/// commuting with every `ẽ_i`, `f̃_i`.
pub fn check_isomorphism(b1: &Crystal, b2: &Crystal, map: &[usize]) -> std::result::Result<(), String> {
    if b1.n != b2.n || b1.len() != b2.len() || map.len() != b1.len() {
        return Err("crystals differ in size or rank".into());
    }
    let mut hit = vec![false; b2.len()];
    for &y in map {
        if y >= b2.len() || std::mem::replace(&mut hit[y], true) {
            return Err(format!("map is not a bijection at target {y}"));
        }
    }
    for (x, &y) in map.iter().enumerate() {
        let (kx, ky) = (&b1.keys[x], &b2.keys[y]);
        if b1.wt[x] != b2.wt[y] {
            return Err(format!("weight differs at {kx} -> {ky}"));
        }
        if b1.eps[x] != b2.eps[y] || b1.phi[x] != b2.phi[y] {
            return Err(format!("string data differs at {kx} -> {ky}"));
        }
        for i in 1..=b1.n {
            for op in [Operator::E, Operator::F] {
                if b1.apply(op, i, x).map(|t| map[t]) != b2.apply(op, i, y) {
                    return Err(format!("{op}_{i} does not commute at {kx} -> {ky}"));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The chain `0 → 1 → ⋯ → n` built directly from its defining data.
    fn chain(n: usize) -> Crystal {
        let nodes: Vec<usize> = (0..=n).collect();
        let delta = |a: usize, b: usize| Level::Finite(i64::from(a == b));
        Crystal::from_operators(
            n,
            &nodes,
            |j| j.to_string(),
            |&j| Weight::unit(n, j + 1),
            |i, &j| (j == i).then(|| i - 1),
            |i, &j| (j + 1 == i).then_some(i),
            Some(&|i, &j| (delta(i, j), delta(i, j + 1))),
        )
        .unwrap()
    }

    /// Repeatedly deletes adjacent `(+,−)` pairs from the explicit word.
    fn signature_by_deletion(op: Operator, factors: &[(usize, usize)]) -> Option<usize> {
        let mut word: Vec<(char, usize)> = factors
            .iter()
            .enumerate()
            .flat_map(|(j, &(m, p))| {
                std::iter::repeat(('-', j))
                    .take(m)
                    .chain(std::iter::repeat(('+', j)).take(p))
            })
            .collect();
        while let Some(k) = word.windows(2).position(|w| w[0].0 == '+' && w[1].0 == '-') {
            word.drain(k..k + 2);
        }
        match op {
            Operator::E => word.iter().rev().find(|s| s.0 == '-').map(|s| s.1),
            Operator::F => word.iter().find(|s| s.0 == '+').map(|s| s.1),
        }
    }

    #[test]
    fn chain_is_a_crystal() {
        let b = chain(3);
        assert!(b.check_axioms().is_empty());
        let g = b.build_graph();
        assert_eq!(g.node_count(), 4);
        let labels: Vec<usize> = b.arrows().iter().map(|a| a.2).collect();
        assert_eq!(labels, vec![1, 2, 3]);
        assert_eq!(b.highest_nodes(), vec![0]);
    }

    #[test]
    fn missing_inverse_is_reported() {
        let b = chain(1);
        let nodes: Vec<NodeData> = (0..2)
            .map(|x| NodeData {
                key: b.key(x).into(),
                wt: b.wt(x).clone(),
                eps: vec![b.eps(x, 1)],
                phi: vec![b.phi(x, 1)],
            })
            .collect();
        let broken =
            Crystal::from_raw(1, nodes, vec![vec![None], vec![None]], vec![vec![Some(1)], vec![None]]).unwrap();
        let v = broken.check_axioms();
        assert!(v.iter().any(|v| v.kind == ViolationKind::Inverse));
    }

    #[test]
    fn neg_infinity_nodes() {
        let nodes = vec![NodeData {
            key: "x".into(),
            wt: Weight::zero(1),
            eps: vec![Level::NegInfinity],
            phi: vec![Level::NegInfinity],
        }];
        let ok = Crystal::from_raw(1, nodes.clone(), vec![vec![None]], vec![vec![None]]).unwrap();
        assert!(ok.check_axioms().is_empty());
        let bad = Crystal::from_raw(1, nodes, vec![vec![Some(0)]], vec![vec![Some(0)]]).unwrap();
        assert!(bad
            .check_axioms()
            .iter()
            .any(|v| v.kind == ViolationKind::NegInfinity));
    }

    #[test]
    fn binary_tensor_rule() {
        let b = chain(1);
        let t = tensor(&b, &b).unwrap();
        let zz = t.index_of("0⊗0").unwrap();
        let oz = t.index_of("1⊗0").unwrap();
        assert_eq!(t.f(1, zz), Some(oz));
        assert_eq!(t.e(1, oz), Some(zz));
        for x in 0..2 {
            for y in 0..2 {
                let k = t.index_of(&format!("{x}⊗{y}")).unwrap();
                assert_eq!(t.wt(k), &(b.wt(x) + b.wt(y)));
            }
        }
        assert!(t.check_axioms().is_empty());
        let sizes: Vec<usize> = t.components().iter().map(Crystal::len).collect();
        assert_eq!(sizes, vec![3, 1]);
        assert!(tensor(&b, &chain(2)).is_err());
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature_apply(Operator::E, &[(1, 1), (0, 1)]).unwrap(), Some(0));
        assert_eq!(signature_apply(Operator::F, &[(1, 1), (0, 1)]).unwrap(), Some(0));
        assert_eq!(signature_apply(Operator::E, &[(0, 1), (1, 0)]).unwrap(), None);
        assert_eq!(signature_apply(Operator::F, &[(0, 1), (1, 0)]).unwrap(), None);
        assert_eq!(signature_apply(Operator::E, &[(0, 0)]).unwrap(), None);
        assert_eq!(signature_apply(Operator::F, &[(0, 0)]).unwrap(), None);
        assert!(matches!(
            signature_apply(Operator::E, &[]),
            Err(Error::EmptySignature)
        ));
    }

    #[test]
    fn signature_scan_matches_deletion() {
        let all: Vec<(usize, usize)> = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).collect();
        for len in 1..=3 {
            let mut tuples: Vec<Vec<(usize, usize)>> = vec![vec![]];
            for _ in 0..len {
                tuples = tuples
                    .into_iter()
                    .flat_map(|t| {
                        all.iter().map(move |&p| {
                            let mut n = t.clone();
                            n.push(p);
                            n
                        })
                    })
                    .collect();
            }
            for t in tuples {
                for op in [Operator::E, Operator::F] {
                    assert_eq!(signature_apply(op, &t).unwrap(), signature_by_deletion(op, &t), "{t:?}");
                }
            }
        }
    }

    #[test]
    fn signature_product_agrees_with_nested_tensors() {
        for n in 1..=2 {
            let b = chain(n);
            for k in 1..=4 {
                let factors: Vec<&Crystal> = std::iter::repeat(&b).take(k).collect();
                let nested = tensor_all(&factors).unwrap();
                let flat = signature_product(&factors).unwrap();
                assert_eq!(nested, flat, "n={n}, k={k}");
            }
        }
    }

    #[test]
    fn isomorphism() {
        let b = chain(3);
        let map = are_isomorphic(&b, &b).unwrap().unwrap();
        assert_eq!(map, vec![0, 1, 2, 3]);

        let mut altered = b.clone();
        altered.wt[2] = Weight(vec![0, 0, 0, 1]);
        assert_eq!(are_isomorphic(&b, &altered).unwrap(), None);

        let single = Crystal::from_raw(
            1,
            vec![NodeData {
                key: "a".into(),
                wt: Weight(vec![1, 1]),
                eps: vec![Level::Finite(0)],
                phi: vec![Level::Finite(0)],
            }],
            vec![vec![None]],
            vec![vec![None]],
        )
        .unwrap();
        assert_eq!(single.components().len(), 1);
        assert_eq!(single.highest_nodes(), vec![0]);

        let c = chain(1);
        let ab = tensor(&c, &tensor(&c, &c).unwrap()).unwrap();
        let ba = tensor(&tensor(&c, &c).unwrap(), &c).unwrap();
        let map = are_isomorphic(&ab, &ba).unwrap().unwrap();
        assert!(check_isomorphism(&ab, &ba, &map).is_ok());
    }

    #[test]
    fn two_highest_nodes_are_rejected() {
        let nodes: Vec<NodeData> = ["a", "b"]
            .iter()
            .map(|k| NodeData {
                key: (*k).into(),
                wt: Weight(vec![0, 0]),
                eps: vec![Level::Finite(0)],
                phi: vec![Level::Finite(0)],
            })
            .collect();
        // a cycle through e and f with no highest node at all
        let cyc = Crystal::from_raw(1, nodes, vec![vec![Some(1)], vec![Some(0)]], vec![vec![Some(1)], vec![Some(0)]])
            .unwrap();
        assert!(matches!(
            are_isomorphic(&cyc, &cyc),
            Err(Error::NonNormalComponent { .. })
        ));
    }

    #[test]
    fn json_and_dot_export() {
        let b = chain(2);
        let json = b.to_json();
        assert_eq!(json["nodes"][0]["key"], "0");
        assert_eq!(json["nodes"][0]["wt"], serde_json::json!([1, 0, 0]));
        assert_eq!(json["edges"][1], serde_json::json!({"from": "1", "to": "2", "i": 2}));
        assert_eq!(Crystal::from_json(&json).unwrap(), b);
        let dot = b.to_dot();
        assert!(dot.contains("n0 [label=\"0\\nwt=(1,0,0)\"];"));
        assert!(dot.contains("n1 -> n2 [label=\"2\", colorscheme=set19, color=2];"));
        assert_eq!(dot, b.to_dot());
    }
}
