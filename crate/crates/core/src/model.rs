//! Biquivers: directed multigraphs whose arrows are full (linear) or
//! dashed (semilinear).
//!
//! Vertices are 0-based in memory and 1-based in every external format.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArrowKind {
    Full,
    Dashed,
}

impl ArrowKind {
    pub fn toggled(self) -> Self {
        match self {
            ArrowKind::Full => ArrowKind::Dashed,
            ArrowKind::Dashed => ArrowKind::Full,
        }
    }

    pub fn is_dashed(self) -> bool {
        self == ArrowKind::Dashed
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    /// 0-based tail.
    pub from: usize,
    /// 0-based head.
    pub to: usize,
    pub kind: ArrowKind,
}

impl Arrow {
    pub fn new(id: impl Into<String>, from: usize, to: usize, kind: ArrowKind) -> Self {
        Self { id: id.into(), from, to, kind }
    }

    pub fn is_loop(&self) -> bool {
        self.from == self.to
    }

    /// The endpoint opposite to `v` (for a loop, `v` itself).
    pub fn other_end(&self, v: usize) -> usize {
        if self.from == v {
            self.to
        } else {
            self.from
        }
    }
}

/// A validated biquiver.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Biquiver {
    vertices: usize,
    arrows: Vec<Arrow>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BiquiverDoc {
    vertices: usize,
    arrows: Vec<ArrowDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowDoc {
    id: String,
    from: usize,
    to: usize,
    kind: ArrowKind,
}

impl Biquiver {
    /// Builds a biquiver from 0-based arrows, checking ids and endpoints.
    pub fn new(vertices: usize, arrows: Vec<Arrow>) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::NoVertices);
        }
        let mut seen = HashSet::new();
        for a in &arrows {
            if !seen.insert(a.id.as_str()) {
                return Err(Error::DuplicateArrowId(a.id.clone()));
            }
            for endpoint in [a.from, a.to] {
                if endpoint >= vertices {
                    return Err(Error::EndpointOutOfRange {
                        id: a.id.clone(),
                        endpoint: endpoint + 1,
                        vertices,
                    });
                }
            }
        }
        Ok(Self { vertices, arrows })
    }

    /// Shorthand used throughout the tests: `(from, to, dashed)` with
    /// 1-based endpoints and ids `a1, a2, ...`.
    pub fn from_edges(vertices: usize, edges: &[(usize, usize, bool)]) -> Result<Self> {
        let mut arrows = Vec::with_capacity(edges.len());
        for (k, &(u, v, dashed)) in edges.iter().enumerate() {
            let id = format!("a{}", k + 1);
            if u == 0 || v == 0 {
                return Err(Error::EndpointOutOfRange { id, endpoint: 0, vertices });
            }
            let kind = if dashed { ArrowKind::Dashed } else { ArrowKind::Full };
            arrows.push(Arrow::new(id, u - 1, v - 1, kind));
        }
        Self::new(vertices, arrows)
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let doc: BiquiverDoc = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            Error::Parse(format!("at `{path}` (line {}, column {}): {inner}", inner.line(), inner.column()))
        })?;
        let mut arrows = Vec::with_capacity(doc.arrows.len());
        for a in doc.arrows {
            if a.from == 0 || a.to == 0 {
                return Err(Error::EndpointOutOfRange { id: a.id, endpoint: 0, vertices: doc.vertices });
            }
            arrows.push(Arrow::new(a.id, a.from - 1, a.to - 1, a.kind));
        }
        Self::new(doc.vertices, arrows)
    }

    /// Compact canonical JSON (field order: vertices, arrows; id, from, to, kind).
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("biquiver serializes")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_doc()).expect("biquiver serializes")
    }

    fn to_doc(&self) -> BiquiverDoc {
        BiquiverDoc {
            vertices: self.vertices,
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowDoc { id: a.id.clone(), from: a.from + 1, to: a.to + 1, kind: a.kind })
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: &str) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.id == id)
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    pub fn dashed_count(&self) -> usize {
        self.arrows.iter().filter(|a| a.kind.is_dashed()).count()
    }

    /// Same graph with arrow kinds replaced.
    pub fn with_kinds(&self, kinds: &[ArrowKind]) -> Self {
        assert_eq!(kinds.len(), self.arrows.len());
        let arrows = self.arrows.iter().zip(kinds).map(|(a, &k)| Arrow { kind: k, ..a.clone() }).collect();
        Self { vertices: self.vertices, arrows }
    }

    /// Same biquiver with arrow `index` reversed.
    pub fn reversed(&self, index: usize) -> Self {
        let mut arrows = self.arrows.clone();
        let a = &mut arrows[index];
        std::mem::swap(&mut a.from, &mut a.to);
        Self { vertices: self.vertices, arrows }
    }

    pub(crate) fn with_arrows(&self, arrows: Vec<Arrow>) -> Self {
        Self { vertices: self.vertices, arrows }
    }

    pub fn check_vertex(&self, vertex: usize) -> Result<()> {
        if vertex < self.vertices {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: vertex + 1, vertices: self.vertices })
        }
    }

    /// Connected components of the underlying undirected graph, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.neighbours();
        let mut seen = vec![false; self.vertices];
        let mut out = Vec::new();
        for start in 0..self.vertices {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// The full sub-biquiver on `vertices` (0-based, renumbered in the given order).
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        let index: BTreeMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let arrows = self
            .arrows
            .iter()
            .filter_map(|a| {
                Some(Arrow::new(a.id.clone(), *index.get(&a.from)?, *index.get(&a.to)?, a.kind))
            })
            .collect();
        Self::new(vertices.len(), arrows)
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for a in &self.arrows {
            if !a.is_loop() {
                adj[a.from].push(a.to);
                adj[a.to].push(a.from);
            }
        }
        adj
    }

    /// Degrees in the underlying multigraph; a loop contributes 2.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices];
        for a in &self.arrows {
            deg[a.from] += 1;
            deg[a.to] += 1;
        }
        deg
    }

    pub fn loop_counts(&self) -> Vec<usize> {
        let mut loops = vec![0; self.vertices];
        for a in self.arrows.iter().filter(|a| a.is_loop()) {
            loops[a.from] += 1;
        }
        loops
    }

    /// Undirected, kind-blind structure: connectivity, tree test, loops,
    /// multi-edges, pendant vertices and a fundamental cycle basis with the
    /// parity of dashed arrows on each cycle.
    pub fn underlying_structure(&self) -> Structure {
        let loops = self.loop_counts();
        let connected = self.is_connected();
        let is_tree = connected && self.arrows.len() + 1 == self.vertices && loops.iter().all(|&l| l == 0);

        let mut pairs: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for a in self.arrows.iter().filter(|a| !a.is_loop()) {
            *pairs.entry((a.from.min(a.to), a.from.max(a.to))).or_default() += 1;
        }
        let multiedges = pairs
            .into_iter()
            .filter(|&(_, n)| n > 1)
            .map(|((u, v), count)| MultiEdge { u: u + 1, v: v + 1, count })
            .collect();

        let pendant_vertices = self
            .degrees()
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d == 1)
            .map(|(v, _)| v + 1)
            .collect();

        Structure {
            connected,
            is_tree,
            loops,
            multiedges,
            pendant_vertices,
            cycles: self.cycle_basis(),
        }
    }

    /// Fundamental cycles of a BFS spanning forest. Loops are cycles of length one.
    pub fn cycle_basis(&self) -> Vec<Cycle> {
        let forest = SpanningForest::new(self);
        let mut cycles = Vec::new();
        for (k, a) in self.arrows.iter().enumerate() {
            if forest.tree_arrow[k] {
                continue;
            }
            let mut path = forest.path(a.from, a.to);
            path.push(k);
            let dashed = path.iter().filter(|&&i| self.arrows[i].kind.is_dashed()).count();
            cycles.push(Cycle {
                arrows: path.iter().map(|&i| self.arrows[i].id.clone()).collect(),
                odd_dashed: dashed % 2 == 1,
            });
        }
        cycles
    }
}

impl fmt::Display for Biquiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

/// BFS spanning forest of the underlying graph (arrow indices).
pub(crate) struct SpanningForest {
    pub parent: Vec<Option<(usize, usize)>>,
    pub depth: Vec<usize>,
    pub tree_arrow: Vec<bool>,
    /// BFS order, roots first within each component.
    pub order: Vec<usize>,
}

impl SpanningForest {
    pub fn new(g: &Biquiver) -> Self {
        let n = g.vertex_count();
        let mut incident = vec![Vec::new(); n];
        for (k, a) in g.arrows().iter().enumerate() {
            if !a.is_loop() {
                incident[a.from].push(k);
                incident[a.to].push(k);
            }
        }
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut seen = vec![false; n];
        let mut tree_arrow = vec![false; g.arrows().len()];
        let mut order = Vec::with_capacity(n);
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &k in &incident[v] {
                    let w = g.arrows()[k].other_end(v);
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = Some((v, k));
                        depth[w] = depth[v] + 1;
                        tree_arrow[k] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        Self { parent, depth, tree_arrow, order }
    }

    /// Tree arrows on the path between two vertices of the same component.
    pub fn path(&self, mut u: usize, mut v: usize) -> Vec<usize> {
        let (mut up, mut down) = (Vec::new(), Vec::new());
        while u != v {
            if self.depth[u] >= self.depth[v] {
                let (p, k) = self.parent[u].expect("same component");
                up.push(k);
                u = p;
            } else {
                let (p, k) = self.parent[v].expect("same component");
                down.push(k);
                v = p;
            }
        }
        down.reverse();
        up.extend(down);
        up
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiEdge {
    pub u: usize,
    pub v: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cycle {
    pub arrows: Vec<String>,
    pub odd_dashed: bool,
}

/// Result of [`Biquiver::underlying_structure`]; vertex numbers are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Structure {
    pub connected: bool,
    pub is_tree: bool,
    /// Loop count per vertex, in vertex order.
    pub loops: Vec<usize>,
    pub multiedges: Vec<MultiEdge>,
    pub pendant_vertices: Vec<usize>,
    pub cycles: Vec<Cycle>,
}

/// Nonnegative integer vector indexed by vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimensionVector(pub Vec<usize>);

impl DimensionVector {
    pub fn zeros(t: usize) -> Self {
        Self(vec![0; t])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }

    pub fn check_len(&self, t: usize) -> Result<()> {
        if self.0.len() == t {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected: t, found: self.0.len() })
        }
    }
}

impl std::ops::Index<usize> for DimensionVector {
    type Output = usize;
    fn index(&self, v: usize) -> &usize {
        &self.0[v]
    }
}

impl From<Vec<usize>> for DimensionVector {
    fn from(v: Vec<usize>) -> Self {
        Self(v)
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_single_dashed_arrow() {
        let g = Biquiver::parse_json(r#"{"vertices":2,"arrows":[{"id":"a","from":1,"to":2,"kind":"dashed"}]}"#)
            .unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.arrows(), &[Arrow::new("a", 0, 1, ArrowKind::Dashed)]);
    }

    #[test]
    fn parse_single_vertex() {
        let g = Biquiver::parse_json(r#"{"vertices":1,"arrows":[]}"#).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert!(g.arrows().is_empty());
    }

    #[test]
    fn parse_errors() {
        let out_of_range = Biquiver::parse_json(r#"{"vertices":2,"arrows":[{"id":"a","from":3,"to":1,"kind":"full"}]}"#);
        assert!(matches!(out_of_range, Err(Error::EndpointOutOfRange { endpoint: 3, .. })));
        let dup = Biquiver::parse_json(
            r#"{"vertices":2,"arrows":[{"id":"a","from":1,"to":2,"kind":"full"},{"id":"a","from":2,"to":1,"kind":"full"}]}"#,
        );
        assert_eq!(dup, Err(Error::DuplicateArrowId("a".into())));
        let bad_kind = Biquiver::parse_json(
            r#"{"vertices":2,
"arrows":[{"id":"a","from":1,"to":2,"kind":"dotted"}]}"#,
        );
        let Err(Error::Parse(msg)) = bad_kind else { panic!("expected parse error") };
        assert!(msg.contains("arrows[0].kind") && msg.contains("line 2"), "{msg}");
        assert!(matches!(Biquiver::parse_json(r#"{"vertices":0,"arrows":[]}"#), Err(Error::NoVertices)));
    }

    #[test]
    fn canonical_documents_round_trip() {
        let doc = r#"{"vertices":3,"arrows":[{"id":"x","from":1,"to":1,"kind":"dashed"},{"id":"y","from":3,"to":2,"kind":"full"}]}"#;
        assert_eq!(Biquiver::parse_json(doc).unwrap().to_json(), doc);
    }

    #[test]
    fn dashed_path_structure() {
        let g = Biquiver::from_edges(3, &[(1, 2, true), (2, 3, true)]).unwrap();
        let s = g.underlying_structure();
        assert!(s.connected && s.is_tree);
        assert_eq!(s.pendant_vertices, vec![1, 3]);
        assert!(s.cycles.is_empty());
    }

    #[test]
    fn two_cycle_with_one_dash_is_odd() {
        let g = Biquiver::from_edges(2, &[(1, 2, true), (2, 1, false)]).unwrap();
        let s = g.underlying_structure();
        assert!(s.connected && !s.is_tree);
        assert_eq!(s.multiedges, vec![MultiEdge { u: 1, v: 2, count: 2 }]);
        assert_eq!(s.cycles.len(), 1);
        assert!(s.cycles[0].odd_dashed);
        assert_eq!(s.cycles[0].arrows.len(), 2);
    }

    #[test]
    fn single_loop() {
        let g = Biquiver::from_edges(1, &[(1, 1, false)]).unwrap();
        let s = g.underlying_structure();
        assert!(!s.is_tree);
        assert_eq!(s.loops, vec![1]);
        assert_eq!(s.cycles, vec![Cycle { arrows: vec!["a1".into()], odd_dashed: false }]);
    }

    #[test]
    fn fundamental_cycle_of_a_triangle() {
        let g = Biquiver::from_edges(4, &[(1, 2, true), (2, 3, false), (3, 1, true), (3, 4, true)]).unwrap();
        let s = g.underlying_structure();
        assert_eq!(s.cycles.len(), 1);
        let mut ids = s.cycles[0].arrows.clone();
        ids.sort();
        assert_eq!(ids, vec!["a1", "a2", "a3"]);
        assert!(!s.cycles[0].odd_dashed);
        assert_eq!(s.pendant_vertices, vec![4]);
    }

    #[test]
    fn components_and_induced() {
        let g = Biquiver::from_edges(4, &[(1, 2, false), (4, 3, true)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2, 3]]);
        assert!(g.require_connected().is_err());
        let h = g.induced(&[2, 3]).unwrap();
        assert_eq!(h.arrows(), &[Arrow::new("a2", 1, 0, ArrowKind::Dashed)]);
    }
}
