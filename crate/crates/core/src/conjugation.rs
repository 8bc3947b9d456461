//! Conjugation at a vertex and dash elimination.
//!
//! Conjugating at `u` toggles the kind of every non-loop arrow incident to
//! `u` and conjugates the matrices of arrows that start at `u`. Loops keep
//! their kind (their matrices are still conjugated when they sit at `u`),
//! so a dashed loop can never be removed this way.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::Result;
use crate::matrix::CMatrix;
use crate::model::{Arrow, Biquiver, SpanningForest};
use crate::representation::MatrixRepresentation;

pub fn conjugate_biquiver(g: &Biquiver, u: usize) -> Result<Biquiver> {
    g.check_vertex(u)?;
    Ok(g.with_arrows(g.arrows().iter().map(|a| toggle_at(a, u)).collect()))
}

fn toggle_at(a: &Arrow, u: usize) -> Arrow {
    let mut a = a.clone();
    if !a.is_loop() && (a.from == u || a.to == u) {
        a.kind = a.kind.toggled();
    }
    a
}

pub fn conjugate_representation(a: &MatrixRepresentation, u: usize) -> Result<MatrixRepresentation> {
    let g = conjugate_biquiver(a.biquiver(), u)?;
    let matrices = a
        .biquiver()
        .arrows()
        .iter()
        .zip(a.matrices())
        .map(|(arrow, m)| if arrow.from == u { m.conj() } else { m.clone() })
        .collect();
    Ok(a.rebind(g, matrices))
}

/// Turns a certificate for `A ≅ B` into one for `Aᵘ ≅ Bᵘ`: `S_u` is
/// conjugated, the other blocks are kept.
pub fn transport_isomorphism(s: &[CMatrix], u: usize) -> Vec<CMatrix> {
    s.iter().enumerate().map(|(v, m)| if v == u { m.conj() } else { m.clone() }).collect()
}

/// A set of vertices (0-based) at which to conjugate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugationPlan {
    pub vertices: BTreeSet<usize>,
}

impl ConjugationPlan {
    pub fn apply_biquiver(&self, g: &Biquiver) -> Result<Biquiver> {
        self.vertices.iter().try_fold(g.clone(), |acc, &u| conjugate_biquiver(&acc, u))
    }

    pub fn apply_representation(&self, a: &MatrixRepresentation) -> Result<MatrixRepresentation> {
        self.vertices.iter().try_fold(a.clone(), |acc, &u| conjugate_representation(&acc, u))
    }

    pub fn apply_certificate(&self, s: &[CMatrix]) -> Vec<CMatrix> {
        self.vertices.iter().fold(s.to_vec(), |acc, &u| transport_isomorphism(&acc, u))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Obstruction {
    /// 0-based vertex carrying a dashed loop, and the loop id.
    DashedLoop { vertex: usize, arrow: String },
    /// Arrow ids of a cycle with an odd number of dashed arrows.
    OddCycle { arrows: Vec<String> },
}

impl std::fmt::Display for Obstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Obstruction::DashedLoop { vertex, arrow } => write!(f, "dashed loop `{arrow}` at vertex {}", vertex + 1),
            Obstruction::OddCycle { arrows } => write!(f, "odd dashed parity on cycle <{}>", arrows.join(", ")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elimination {
    Plan(ConjugationPlan),
    Impossible(Obstruction),
}

/// Vertices whose conjugation leaves only full arrows, found by solving
/// `c(u) + c(v) = dashed(e)` over GF(2) along a spanning tree and checking
/// the remaining arrows.
pub fn dash_elimination_plan(g: &Biquiver) -> Result<Elimination> {
    g.require_connected()?;
    if let Some(a) = g.arrows().iter().find(|a| a.is_loop() && a.kind.is_dashed()) {
        return Ok(Elimination::Impossible(Obstruction::DashedLoop { vertex: a.from, arrow: a.id.clone() }));
    }
    let forest = SpanningForest::new(g);
    let mut c = vec![false; g.vertex_count()];
    for &v in &forest.order {
        if let Some((p, k)) = forest.parent[v] {
            c[v] = c[p] ^ g.arrows()[k].kind.is_dashed();
        }
    }
    for (k, a) in g.arrows().iter().enumerate() {
        if a.is_loop() || forest.tree_arrow[k] {
            continue;
        }
        if c[a.from] ^ c[a.to] != a.kind.is_dashed() {
            let mut path = forest.path(a.from, a.to);
            path.push(k);
            let arrows = path.iter().map(|&i| g.arrows()[i].id.clone()).collect();
            return Ok(Elimination::Impossible(Obstruction::OddCycle { arrows }));
        }
    }
    let vertices = (0..c.len()).filter(|&v| c[v]).collect();
    Ok(Elimination::Plan(ConjugationPlan { vertices }))
}
