//! Representations that embed a matrix (or a matrix pair) problem into a
//! biquiver: the cycle gadget and the block gadgets on the four small
//! wild biquivers.

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::model::{Arrow, ArrowKind, Biquiver, DimensionVector};
use crate::representation::MatrixRepresentation;

/// Builds `P(M)` on a cycle `α₁ … α_r` of `c`: identity on `α₁ … α_{r−1}`,
/// `M` on `α_r`, zero elsewhere; cycle vertices get dimension `n`, all other
/// vertices 0. Without an explicit cycle the first fundamental cycle of `c`
/// is used (its non-tree arrow closes it).
pub fn gadget_cycle(c: &Biquiver, cycle: Option<&[String]>, m: &CMatrix) -> Result<MatrixRepresentation> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch(format!("cycle gadget needs a square matrix, got {}x{}", m.rows(), m.cols())));
    }
    let ids: Vec<String> = match cycle {
        Some(ids) => ids.to_vec(),
        None => c
            .cycle_basis()
            .into_iter()
            .next()
            .map(|cy| cy.arrows)
            .ok_or_else(|| Error::InvalidArgument("biquiver has no cycle".into()))?,
    };
    if ids.is_empty() {
        return Err(Error::InvalidArgument("no cycle designated".into()));
    }
    let indices = ids
        .iter()
        .map(|id| c.arrow_index(id).ok_or_else(|| Error::UnknownArrow(id.clone())))
        .collect::<Result<Vec<_>>>()?;
    let vertices = walk_cycle(c, &indices)?;

    let n = m.rows();
    let mut dims = DimensionVector::zeros(c.vertex_count());
    for &v in &vertices {
        dims.0[v] = n;
    }
    let mut rep = MatrixRepresentation::zero(c.clone(), dims)?;
    let mut matrices = rep.matrices().to_vec();
    let (last, rest) = indices.split_last().expect("nonempty");
    for &k in rest {
        matrices[k] = CMatrix::identity(n);
    }
    matrices[*last] = m.clone();
    rep = MatrixRepresentation::new(c.clone(), rep.dims().clone(), matrices)?;
    Ok(rep)
}

/// Vertices `v₁ … v_r` of a simple closed walk along the given arrows.
fn walk_cycle(c: &Biquiver, indices: &[usize]) -> Result<Vec<usize>> {
    let arrows: Vec<&Arrow> = indices.iter().map(|&k| &c.arrows()[k]).collect();
    let bad = || Error::InvalidArgument("designated arrows do not form a simple cycle".into());
    if arrows.len() == 1 {
        return if arrows[0].is_loop() { Ok(vec![arrows[0].from]) } else { Err(bad()) };
    }
    if arrows.iter().any(|a| a.is_loop()) {
        return Err(bad());
    }
    // start at the endpoint of α₁ that α₂ does not continue from
    let (a1, a2) = (arrows[0], arrows[1]);
    let start = if a2.from == a1.to || a2.to == a1.to { a1.from } else { a1.to };
    let mut vertices = vec![start];
    let mut cur = start;
    for a in &arrows {
        if a.from != cur && a.to != cur {
            return Err(bad());
        }
        cur = a.other_end(cur);
        vertices.push(cur);
    }
    if vertices.pop() != Some(start) {
        return Err(bad());
    }
    let mut sorted = vertices.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != vertices.len() {
        return Err(bad());
    }
    Ok(vertices)
}

/// The four two-arrow biquivers used to embed matrix-pair problems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SmallWild {
    /// Dashed loop `alpha1` at 1, full arrow `alpha: 1 → 2`.
    G1,
    /// Dashed loop `alpha1` at 1, full arrow `alpha: 2 → 1`.
    G2,
    /// Full loop `alpha1` and dashed loop `alpha2` at one vertex.
    G3,
    /// Two dashed loops `alpha1`, `alpha2` at one vertex.
    G4,
}

impl SmallWild {
    pub fn biquiver(self) -> Biquiver {
        use ArrowKind::*;
        let (t, arrows) = match self {
            SmallWild::G1 => (2, vec![Arrow::new("alpha1", 0, 0, Dashed), Arrow::new("alpha", 0, 1, Full)]),
            SmallWild::G2 => (2, vec![Arrow::new("alpha1", 0, 0, Dashed), Arrow::new("alpha", 1, 0, Full)]),
            SmallWild::G3 => (1, vec![Arrow::new("alpha1", 0, 0, Full), Arrow::new("alpha2", 0, 0, Dashed)]),
            SmallWild::G4 => (1, vec![Arrow::new("alpha1", 0, 0, Dashed), Arrow::new("alpha2", 0, 0, Dashed)]),
        };
        Biquiver::new(t, arrows).expect("valid")
    }
}

fn check_pair(p: &CMatrix, q: &CMatrix) -> Result<usize> {
    if !p.is_square() || !q.is_square() || p.rows() != q.rows() {
        return Err(Error::ShapeMismatch(format!(
            "gadget needs square blocks of equal size, got {}x{} and {}x{}",
            p.rows(),
            p.cols(),
            q.rows(),
            q.cols()
        )));
    }
    Ok(p.rows())
}

/// `M = [[0, P], [I, Q]]` on the dashed loop; `N = [0 I]` (G1) or
/// `N = [I; 0]` (G2) on the full arrow. All blocks are `n × n`.
pub fn gadget_loop_arrow(which: SmallWild, p: &CMatrix, q: &CMatrix) -> Result<MatrixRepresentation> {
    let n = check_pair(p, q)?;
    let (z, i) = (CMatrix::zeros(n, n), CMatrix::identity(n));
    let m = CMatrix::from_blocks(&[vec![z.clone(), p.clone()], vec![i.clone(), q.clone()]])?;
    let (nmat, dims) = match which {
        SmallWild::G1 => (CMatrix::from_blocks(&[vec![z, i]])?, vec![2 * n, n]),
        SmallWild::G2 => (CMatrix::from_blocks(&[vec![i], vec![z]])?, vec![2 * n, n]),
        _ => return Err(Error::InvalidArgument("this gadget lives on G1 or G2".into())),
    };
    MatrixRepresentation::new(which.biquiver(), dims.into(), vec![m, nmat])
}

/// G3: `M = [[0, I], [0, 0]]` on the full loop, `N = diag(P, Q)` on the
/// dashed loop. G4: `M` the 4×4 block shift with identity superdiagonal,
/// `N` with `P` in block (2,1) and `Q` in block (4,3).
pub fn gadget_two_loops(which: SmallWild, p: &CMatrix, q: &CMatrix) -> Result<MatrixRepresentation> {
    let n = check_pair(p, q)?;
    let (z, i) = (CMatrix::zeros(n, n), CMatrix::identity(n));
    let (m, nmat, d) = match which {
        SmallWild::G3 => (
            CMatrix::from_blocks(&[vec![z.clone(), i], vec![z.clone(), z.clone()]])?,
            CMatrix::block_diag(&[p, q]),
            2 * n,
        ),
        SmallWild::G4 => {
            let shift = (0..4)
                .map(|r| (0..4).map(|c| if c == r + 1 { i.clone() } else { z.clone() }).collect())
                .collect::<Vec<Vec<_>>>();
            let mut lower = vec![vec![z.clone(); 4]; 4];
            lower[1][0] = p.clone();
            lower[3][2] = q.clone();
            (CMatrix::from_blocks(&shift)?, CMatrix::from_blocks(&lower)?, 4 * n)
        }
        _ => return Err(Error::InvalidArgument("this gadget lives on G3 or G4".into())),
    };
    MatrixRepresentation::new(which.biquiver(), vec![d].into(), vec![m, nmat])
}

/// Block transition matrix `diag(T, conj T, T, conj T)` carrying the G4
/// gadget of `(P, Q)` to that of `(T⁻¹PT, T⁻¹QT)`.
pub fn g4_block_certificate(t: &CMatrix) -> CMatrix {
    let tc = t.conj();
    CMatrix::block_diag(&[t, &tc, t, &tc])
}
