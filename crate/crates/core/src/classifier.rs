//! Representation type of a connected biquiver from the shape of its
//! underlying graph: Dynkin shapes are finite, extended Dynkin shapes are
//! tame of infinite type, everything else is wild. Arrow kinds and
//! directions play no role.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::model::Biquiver;
use crate::tits::{definiteness, gram_matrix, Definiteness};

/// Dynkin and extended Dynkin labels. The index is the usual subscript, so
/// `ExtA(n)` and `ExtD(n)` have `n + 1` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Diagram {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
    ExtA(usize),
    ExtD(usize),
    ExtE6,
    ExtE7,
    ExtE8,
}

impl Diagram {
    pub fn is_extended(self) -> bool {
        matches!(self, Diagram::ExtA(_) | Diagram::ExtD(_) | Diagram::ExtE6 | Diagram::ExtE7 | Diagram::ExtE8)
    }

    pub fn vertex_count(self) -> usize {
        match self {
            Diagram::A(n) | Diagram::D(n) => n,
            Diagram::E6 => 6,
            Diagram::E7 => 7,
            Diagram::E8 => 8,
            Diagram::ExtA(n) | Diagram::ExtD(n) => n + 1,
            Diagram::ExtE6 => 7,
            Diagram::ExtE7 => 8,
            Diagram::ExtE8 => 9,
        }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagram::A(n) => write!(f, "A{n}"),
            Diagram::D(n) => write!(f, "D{n}"),
            Diagram::E6 => f.write_str("E6"),
            Diagram::E7 => f.write_str("E7"),
            Diagram::E8 => f.write_str("E8"),
            Diagram::ExtA(n) => write!(f, "~A{n}"),
            Diagram::ExtD(n) => write!(f, "~D{n}"),
            Diagram::ExtE6 => f.write_str("~E6"),
            Diagram::ExtE7 => f.write_str("~E7"),
            Diagram::ExtE8 => f.write_str("~E8"),
        }
    }
}

impl Serialize for Diagram {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RepKind {
    Finite,
    TameInfinite,
    Wild,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RepType {
    pub kind: RepKind,
    pub diagram: Option<Diagram>,
}

/// Recognises the underlying undirected multigraph of a connected biquiver.
pub fn diagram_shape(g: &Biquiver) -> Result<Option<Diagram>> {
    g.require_connected()?;
    let t = g.vertex_count();
    let loops: usize = g.loop_counts().iter().sum();
    let edges = g.arrows().len() - loops;

    if loops > 0 {
        return Ok((t == 1 && loops == 1 && edges == 0).then_some(Diagram::ExtA(0)));
    }
    if edges + 1 == t {
        return Ok(tree_shape(g));
    }
    if edges == t && t >= 2 && g.degrees().iter().all(|&d| d == 2) {
        return Ok(Some(Diagram::ExtA(t - 1)));
    }
    Ok(None)
}

fn tree_shape(g: &Biquiver) -> Option<Diagram> {
    let t = g.vertex_count();
    let deg = g.degrees();
    let mut adj = vec![Vec::new(); t];
    for a in g.arrows() {
        adj[a.from].push(a.to);
        adj[a.to].push(a.from);
    }
    let branch: Vec<usize> = (0..t).filter(|&v| deg[v] >= 3).collect();

    // number of vertices on the arm leaving `centre` through `first`
    let arm = |centre: usize, first: usize| -> usize {
        let (mut prev, mut cur, mut len) = (centre, first, 1);
        while deg[cur] == 2 {
            let next = adj[cur].iter().copied().find(|&w| w != prev).expect("degree two");
            (prev, cur) = (cur, next);
            len += 1;
        }
        len
    };

    match branch.as_slice() {
        [] => Some(Diagram::A(t)),
        [c] if deg[*c] == 3 => {
            let mut arms: Vec<usize> = adj[*c].iter().map(|&w| arm(*c, w)).collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, r] => Some(Diagram::D(r + 3)),
                [1, 2, 2] => Some(Diagram::E6),
                [1, 2, 3] => Some(Diagram::E7),
                [1, 2, 4] => Some(Diagram::E8),
                [2, 2, 2] => Some(Diagram::ExtE6),
                [1, 3, 3] => Some(Diagram::ExtE7),
                [1, 2, 5] => Some(Diagram::ExtE8),
                _ => None,
            }
        }
        [c] if deg[*c] == 4 => (t == 5).then_some(Diagram::ExtD(4)),
        [b1, b2] if deg[*b1] == 3 && deg[*b2] == 3 => {
            let leaves = |b: usize| adj[b].iter().filter(|&&w| deg[w] == 1).count();
            (leaves(*b1) == 2 && leaves(*b2) == 2).then_some(Diagram::ExtD(t - 1))
        }
        _ => None,
    }
}

/// Finite, tame of infinite type, or wild.
pub fn representation_type(g: &Biquiver) -> Result<RepType> {
    let diagram = diagram_shape(g)?;
    let kind = match diagram {
        Some(d) if d.is_extended() => RepKind::TameInfinite,
        Some(_) => RepKind::Finite,
        None => RepKind::Wild,
    };
    if cfg!(debug_assertions) {
        let expected = match definiteness(&gram_matrix(g)) {
            Definiteness::PositiveDefinite => RepKind::Finite,
            Definiteness::PositiveSemidefinite => RepKind::TameInfinite,
            Definiteness::Indefinite => RepKind::Wild,
        };
        assert_eq!(kind, expected, "shape table disagrees with the Tits form on {g}");
    }
    Ok(RepType { kind, diagram })
}

/// Classifies each connected component separately; vertex lists are 1-based.
pub fn classify_components(g: &Biquiver) -> Result<Vec<(Vec<usize>, RepType)>> {
    g.components()
        .into_iter()
        .map(|comp| {
            let sub = g.induced(&comp)?;
            Ok((comp.iter().map(|v| v + 1).collect(), representation_type(&sub)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn path(t: usize) -> Vec<(usize, usize, bool)> {
        (1..t).map(|v| (v, v + 1, v % 2 == 0)).collect()
    }

    /// Star with the given arm lengths; centre is vertex 1.
    fn star(arms: &[usize]) -> Biquiver {
        let mut edges = Vec::new();
        let mut next = 2;
        for &len in arms {
            let mut prev = 1;
            for _ in 0..len {
                edges.push((prev, next, next % 3 == 0));
                prev = next;
                next += 1;
            }
        }
        Biquiver::from_edges(next - 1, &edges).unwrap()
    }

    #[test]
    fn mixed_a3_is_finite() {
        let g = Biquiver::from_edges(3, &[(1, 2, true), (3, 2, false)]).unwrap();
        assert_eq!(diagram_shape(&g).unwrap(), Some(Diagram::A(3)));
        assert_eq!(representation_type(&g).unwrap().kind, RepKind::Finite);
    }

    #[test]
    fn dashed_loop_is_extended_a0() {
        let g = Biquiver::from_edges(1, &[(1, 1, true)]).unwrap();
        assert_eq!(
            representation_type(&g).unwrap(),
            RepType { kind: RepKind::TameInfinite, diagram: Some(Diagram::ExtA(0)) }
        );
    }

    #[test]
    fn star_shapes() {
        assert_eq!(diagram_shape(&star(&[1, 1, 1])).unwrap(), Some(Diagram::D(4)));
        assert_eq!(diagram_shape(&star(&[1, 1, 4])).unwrap(), Some(Diagram::D(7)));
        assert_eq!(diagram_shape(&star(&[2, 1, 2])).unwrap(), Some(Diagram::E6));
        assert_eq!(diagram_shape(&star(&[1, 2, 3])).unwrap(), Some(Diagram::E7));
        assert_eq!(diagram_shape(&star(&[4, 2, 1])).unwrap(), Some(Diagram::E8));
        assert_eq!(diagram_shape(&star(&[2, 2, 2])).unwrap(), Some(Diagram::ExtE6));
        assert_eq!(diagram_shape(&star(&[3, 1, 3])).unwrap(), Some(Diagram::ExtE7));
        assert_eq!(diagram_shape(&star(&[1, 2, 5])).unwrap(), Some(Diagram::ExtE8));
        assert_eq!(diagram_shape(&star(&[1, 1, 1, 1])).unwrap(), Some(Diagram::ExtD(4)));
        assert_eq!(diagram_shape(&star(&[2, 2, 3])).unwrap(), None);
        assert_eq!(diagram_shape(&star(&[1, 1, 1, 2])).unwrap(), None);
    }

    #[test]
    fn extended_d_and_cycles() {
        let g = Biquiver::from_edges(6, &[(1, 3, false), (2, 3, true), (3, 4, false), (4, 5, true), (4, 6, false)])
            .unwrap();
        assert_eq!(diagram_shape(&g).unwrap(), Some(Diagram::ExtD(5)));
        let tri = Biquiver::from_edges(3, &[(1, 2, false), (2, 3, true), (3, 1, false)]).unwrap();
        assert_eq!(diagram_shape(&tri).unwrap(), Some(Diagram::ExtA(2)));
        let kron = Biquiver::from_edges(2, &[(1, 2, false), (1, 2, true)]).unwrap();
        assert_eq!(diagram_shape(&kron).unwrap(), Some(Diagram::ExtA(1)));
    }

    #[test]
    fn small_wild_biquivers() {
        let g3 = Biquiver::from_edges(1, &[(1, 1, false), (1, 1, true)]).unwrap();
        assert_eq!(representation_type(&g3).unwrap(), RepType { kind: RepKind::Wild, diagram: None });
        let g1 = Biquiver::from_edges(2, &[(1, 1, true), (1, 2, false)]).unwrap();
        assert_eq!(representation_type(&g1).unwrap().kind, RepKind::Wild);
        let g2 = Biquiver::from_edges(2, &[(1, 1, true), (2, 1, false)]).unwrap();
        assert_eq!(representation_type(&g2).unwrap().kind, RepKind::Wild);
    }

    #[test]
    fn paths_are_type_a() {
        for t in 1..9 {
            let g = Biquiver::from_edges(t, &path(t)).unwrap();
            assert_eq!(diagram_shape(&g).unwrap(), Some(Diagram::A(t)));
        }
    }

    #[test]
    fn disconnected_rejected_but_components_classified() {
        let g = Biquiver::from_edges(3, &[(1, 2, true)]).unwrap();
        assert_eq!(representation_type(&g), Err(Error::Disconnected));
        let parts = classify_components(&g).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].0, vec![1, 2]);
        assert_eq!(parts[0].1.diagram, Some(Diagram::A(2)));
        assert_eq!(parts[1].1.diagram, Some(Diagram::A(1)));
    }

    #[test]
    fn labels() {
        assert_eq!(Diagram::ExtD(4).to_string(), "~D4");
        assert_eq!(serde_json::to_string(&Diagram::A(3)).unwrap(), "\"A3\"");
        assert_eq!(Diagram::ExtE8.vertex_count(), 9);
    }
}
