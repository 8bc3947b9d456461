//! Morphism spaces, isomorphism testing, endomorphism algebras and
//! direct-sum decomposition.
//!
//! A morphism `F: A → B` is a tuple of `e_v × d_v` matrices with
//! `B_α·F_u = F_v·A_α` on full arrows and `B_α·F_u = conj(F_v)·A_α` on
//! dashed ones. Because of the conjugation, `Hom(A, B)` is only a real
//! vector space; it is computed as the kernel of a rational system in the
//! real and imaginary parts of the `F_v`.

mod algebra;
mod decompose;
pub mod poly;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use algebra::{end_algebra, EndAlgebra, LocalTest};
pub use decompose::{decompose, Decomposition, LeafStatus};

use crate::error::{Error, Result};
use crate::linalg::{kernel, Kernel, QMatrix};
use crate::matrix::CMatrix;
use crate::model::{ArrowKind, DimensionVector};
use crate::representation::{apply_base_change, MatrixRepresentation};
use crate::scalar::{int, GaussianRational, Rational};

/// Randomised search parameters: coefficients are integers in
/// `[−bound, bound]`, at most `trials` attempts, all drawn from `seed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SamplingConfig {
    pub bound: i64,
    pub trials: usize,
    pub seed: u64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        Self { bound: 10_000, trials: 8, seed: 0 }
    }
}

impl SamplingConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    pub(crate) fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// A real basis of `Hom(A, B)`.
#[derive(Clone, Debug)]
pub struct MorphismBasis {
    source_dims: DimensionVector,
    target_dims: DimensionVector,
    basis: Vec<Vec<CMatrix>>,
    kernel: Kernel,
}

impl MorphismBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn source_dims(&self) -> &DimensionVector {
        &self.source_dims
    }

    pub fn target_dims(&self) -> &DimensionVector {
        &self.target_dims
    }

    pub fn basis(&self) -> &[Vec<CMatrix>] {
        &self.basis
    }

    /// `Σ c_k·b_k`
    pub fn combine(&self, coeffs: &[Rational]) -> Vec<CMatrix> {
        assert_eq!(coeffs.len(), self.dim());
        let mut flat = vec![int(0); self.kernel.basis.first().map_or(0, Vec::len)];
        for (c, b) in coeffs.iter().zip(&self.kernel.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in flat.iter_mut().zip(b) {
                *x += c * y;
            }
        }
        unflatten(&flat, &self.target_dims, &self.source_dims)
    }

    /// Coordinates of a tuple, if it is a morphism.
    pub fn coordinates(&self, f: &[CMatrix]) -> Option<Vec<Rational>> {
        if f.len() != self.source_dims.len()
            || f.iter().enumerate().any(|(v, m)| m.shape() != (self.target_dims[v], self.source_dims[v]))
        {
            return None;
        }
        self.kernel.coordinates(&flatten(f))
    }
}

/// Real and imaginary parts of every entry, vertex by vertex, row-major.
pub(crate) fn flatten(f: &[CMatrix]) -> Vec<Rational> {
    let mut out = Vec::new();
    for m in f {
        for e in m.entries() {
            out.push(e.re.clone());
            out.push(e.im.clone());
        }
    }
    out
}

pub(crate) fn unflatten(flat: &[Rational], rows: &DimensionVector, cols: &DimensionVector) -> Vec<CMatrix> {
    let mut pos = 0;
    (0..rows.len())
        .map(|v| {
            let n = rows[v] * cols[v];
            let entries =
                (0..n).map(|k| GaussianRational::new(flat[pos + 2 * k].clone(), flat[pos + 2 * k + 1].clone())).collect();
            pos += 2 * n;
            CMatrix::new(rows[v], cols[v], entries).expect("sized")
        })
        .collect()
}

fn require_same_biquiver(a: &MatrixRepresentation, b: &MatrixRepresentation) -> Result<()> {
    if a.biquiver() == b.biquiver() {
        Ok(())
    } else {
        Err(Error::BiquiverMismatch)
    }
}

/// Exact rational basis of the real vector space `Hom(A, B)`.
pub fn hom_basis(a: &MatrixRepresentation, b: &MatrixRepresentation) -> Result<MorphismBasis> {
    require_same_biquiver(a, b)?;
    let g = a.biquiver();
    let (d, e) = (a.dims(), b.dims());
    let mut offset = Vec::with_capacity(g.vertex_count());
    let mut n = 0;
    for v in 0..g.vertex_count() {
        offset.push(n);
        n += 2 * e[v] * d[v];
    }
    // F_v[r][c] real part lives at var(v, r, c), imaginary part right after
    let var = |v: usize, r: usize, c: usize| offset[v] + 2 * (r * d[v] + c);

    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (k, arrow) in g.arrows().iter().enumerate() {
        let (u, v) = (arrow.from, arrow.to);
        let (ma, mb) = (&a.matrices()[k], &b.matrices()[k]);
        let sigma = match arrow.kind {
            ArrowKind::Full => int(1),
            ArrowKind::Dashed => int(-1),
        };
        // entry (r, c) of B_α F_u − F_v^σ A_α, an e_v × d_u matrix
        for r in 0..e[v] {
            for c in 0..d[u] {
                let mut re = vec![int(0); n];
                let mut im = vec![int(0); n];
                for j in 0..e[u] {
                    let x = &mb[(r, j)];
                    re[var(u, j, c)] += &x.re;
                    re[var(u, j, c) + 1] -= &x.im;
                    im[var(u, j, c)] += &x.im;
                    im[var(u, j, c) + 1] += &x.re;
                }
                for j in 0..d[v] {
                    let y = &ma[(j, c)];
                    re[var(v, r, j)] -= &y.re;
                    re[var(v, r, j) + 1] += &sigma * &y.im;
                    im[var(v, r, j)] -= &y.im;
                    im[var(v, r, j) + 1] -= &sigma * &y.re;
                }
                rows.push(re);
                rows.push(im);
            }
        }
    }
    let system = if rows.is_empty() { QMatrix::zeros(0, n) } else { QMatrix::from_rows(rows) };
    let kernel = kernel(&system);
    let basis = kernel.basis.iter().map(|x| unflatten(x, e, d)).collect();
    Ok(MorphismBasis { source_dims: d.clone(), target_dims: e.clone(), basis, kernel })
}

/// Checks the morphism equations exactly.
pub fn is_morphism(a: &MatrixRepresentation, b: &MatrixRepresentation, f: &[CMatrix]) -> bool {
    if a.biquiver() != b.biquiver() || f.len() != a.dims().len() {
        return false;
    }
    if f.iter().enumerate().any(|(v, m)| m.shape() != (b.dims()[v], a.dims()[v])) {
        return false;
    }
    a.biquiver().arrows().iter().enumerate().all(|(k, arrow)| {
        let lhs = &b.matrices()[k] * &f[arrow.from];
        let fv = match arrow.kind {
            ArrowKind::Full => f[arrow.to].clone(),
            ArrowKind::Dashed => f[arrow.to].conj(),
        };
        lhs == &fv * &a.matrices()[k]
    })
}

/// True when `apply_base_change(a, s)` is exactly `b`.
pub fn verify_isomorphism(a: &MatrixRepresentation, b: &MatrixRepresentation, s: &[CMatrix]) -> bool {
    a.biquiver() == b.biquiver() && apply_base_change(a, s).is_ok_and(|x| &x == b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NonIsoReason {
    DimensionMismatch,
    /// `Hom(A, B) = 0` although the dimension vectors are nonzero.
    ZeroHom,
    /// Isomorphic representations have `dim Hom(A, B) = dim End(A) = dim End(B)`.
    HomDimensionMismatch { hom: usize, end_source: usize, end_target: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inconclusive {
    pub trials: usize,
    pub bound: i64,
    pub hom_dim: usize,
    pub rationale: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    /// Transition matrices `S` with `apply_base_change(A, S) = B`, verified.
    Yes(Vec<CMatrix>),
    No(NonIsoReason),
    ProbablyNo(Inconclusive),
}

impl IsoVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoVerdict::Yes(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            IsoVerdict::Yes(_) => "Yes",
            IsoVerdict::No(_) => "No",
            IsoVerdict::ProbablyNo(_) => "ProbablyNo",
        }
    }
}

fn random_coeffs<R: Rng>(rng: &mut R, dim: usize, bound: i64) -> Vec<Rational> {
    (0..dim).map(|_| int(rng.gen_range(-bound..=bound))).collect()
}

/// Decides `A ≅ B`. A `Yes` is always exact; `No` is exact; `ProbablyNo`
/// means no invertible morphism turned up among `trials` random
/// combinations of a basis of `Hom(A, B)`.
pub fn are_isomorphic(a: &MatrixRepresentation, b: &MatrixRepresentation, config: &SamplingConfig) -> Result<IsoVerdict> {
    require_same_biquiver(a, b)?;
    if a.dims() != b.dims() {
        return Ok(IsoVerdict::No(NonIsoReason::DimensionMismatch));
    }
    if a.is_zero_dimensional() {
        let s = a.dims().0.iter().map(|&n| CMatrix::identity(n)).collect();
        return Ok(IsoVerdict::Yes(s));
    }
    let hom = hom_basis(a, b)?;
    if hom.dim() == 0 {
        return Ok(IsoVerdict::No(NonIsoReason::ZeroHom));
    }
    let end_a = hom_basis(a, a)?.dim();
    let end_b = hom_basis(b, b)?.dim();
    if hom.dim() != end_a || hom.dim() != end_b {
        return Ok(IsoVerdict::No(NonIsoReason::HomDimensionMismatch {
            hom: hom.dim(),
            end_source: end_a,
            end_target: end_b,
        }));
    }
    let mut rng = config.rng();
    for _ in 0..config.trials {
        let f = hom.combine(&random_coeffs(&mut rng, hom.dim(), config.bound.max(1)));
        let Some(s) = f.iter().map(CMatrix::inverse).collect::<Option<Vec<_>>>() else {
            continue;
        };
        if verify_isomorphism(a, b, &s) {
            return Ok(IsoVerdict::Yes(s));
        }
    }
    Ok(IsoVerdict::ProbablyNo(Inconclusive {
        trials: config.trials,
        bound: config.bound,
        hom_dim: hom.dim(),
        rationale: "invertible morphisms form the complement of a determinant hypersurface in Hom(A,B); \
                    if that complement were nonempty a random integer point would miss the hypersurface \
                    with high probability"
            .into(),
    }))
}

/// One matched pair of summands: indices into both lists and the
/// certificate `apply_base_change(X_i, S) = Y_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandMatch {
    pub left: usize,
    pub right: usize,
    pub certificate: Vec<CMatrix>,
}

/// Pairs the summands of two decompositions by dimension vector and
/// certified isomorphism; `None` when no complete matching turns up.
pub fn krull_schmidt_compare(
    x: &[MatrixRepresentation],
    y: &[MatrixRepresentation],
    config: &SamplingConfig,
) -> Result<Option<Vec<SummandMatch>>> {
    if x.len() != y.len() {
        return Ok(None);
    }
    let mut used = vec![false; y.len()];
    let mut out = Vec::with_capacity(x.len());
    for (i, xi) in x.iter().enumerate() {
        let mut found = None;
        for (j, yj) in y.iter().enumerate() {
            if used[j] || xi.dims() != yj.dims() {
                continue;
            }
            if let IsoVerdict::Yes(s) = are_isomorphic(xi, yj, config)? {
                found = Some((j, s));
                break;
            }
        }
        let Some((j, certificate)) = found else { return Ok(None) };
        used[j] = true;
        out.push(SummandMatch { left: i, right: j, certificate });
    }
    Ok(Some(out))
}
