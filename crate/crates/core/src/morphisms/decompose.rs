//! Direct-sum decomposition by Fitting splitting.
//!
//! A rational endomorphism `φ` whose minimal polynomial factors as
//! `m₁·m₂` with coprime factors yields the idempotent `e = (s·m₁)(φ)`
//! (`s·m₁ + t·m₂ = 1`), and `A ≅ im(e) ⊕ ker(e)`. Pieces are split again
//! until no candidate endomorphism produces a rational splitting.

use rand::Rng;
use serde::Serialize;

use super::algebra::{end_algebra, EndAlgebra};
use super::poly::coprime_split;
use super::SamplingConfig;
use crate::error::Result;
use crate::matrix::CMatrix;
use crate::representation::{apply_base_change, direct_sum, direct_sum_all, MatrixRepresentation};
use crate::scalar::{int, GaussianRational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LeafStatus {
    /// `End/rad` is `ℝ` or `ℂ`, so the endomorphism algebra is local.
    CertifiedIndecomposable,
    /// No splitting turned up among the sampled endomorphisms.
    ProbablyIndecomposable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub summands: Vec<MatrixRepresentation>,
    /// `apply_base_change(A, certificate)` is the direct sum of the summands.
    pub certificate: Vec<CMatrix>,
    pub leaf_status: Vec<LeafStatus>,
}

impl Decomposition {
    pub fn verify(&self, a: &MatrixRepresentation) -> bool {
        let Ok(sum) = direct_sum_all(a.biquiver(), &self.summands) else { return false };
        apply_base_change(a, &self.certificate).is_ok_and(|b| b == sum)
    }
}

pub fn decompose(a: &MatrixRepresentation, config: &SamplingConfig) -> Result<Decomposition> {
    let mut rng = config.rng();
    let mut out = Decomposition { summands: Vec::new(), certificate: Vec::new(), leaf_status: Vec::new() };
    out.certificate = if a.is_zero_dimensional() {
        a.dims().0.iter().map(|&d| CMatrix::identity(d)).collect()
    } else {
        split(a, config, &mut rng, &mut out)?
    };
    assert!(out.verify(a), "decomposition certificate failed to verify");
    Ok(out)
}

/// Splits `x` completely, appending leaves to `out`; returns the
/// transition matrices carrying `x` to the direct sum of its leaves.
fn split<R: Rng>(
    x: &MatrixRepresentation,
    config: &SamplingConfig,
    rng: &mut R,
    out: &mut Decomposition,
) -> Result<Vec<CMatrix>> {
    let identity: Vec<CMatrix> = x.dims().0.iter().map(|&d| CMatrix::identity(d)).collect();
    let end = end_algebra(x)?;
    if end.local_test().is_local() {
        out.summands.push(x.clone());
        out.leaf_status.push(LeafStatus::CertifiedIndecomposable);
        return Ok(identity);
    }
    for phi in candidates(&end, config, rng) {
        let Some((t, first, second)) = try_split(x, &end, &phi) else { continue };
        let u1 = split(&first, config, rng, out)?;
        let u2 = split(&second, config, rng, out)?;
        return Ok(t
            .iter()
            .zip(u1.iter().zip(&u2))
            .map(|(tv, (a, b))| tv * &CMatrix::block_diag(&[a, b]))
            .collect());
    }
    out.summands.push(x.clone());
    out.leaf_status.push(LeafStatus::ProbablyIndecomposable);
    Ok(identity)
}

/// Basis elements, then pairwise sums, then random small and large
/// combinations.
fn candidates<R: Rng>(end: &EndAlgebra, config: &SamplingConfig, rng: &mut R) -> Vec<Vec<Rational>> {
    let n = end.dim();
    let mut out: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|k| int((k == i) as i64)).collect()).collect();
    for i in 0..n.min(6) {
        for j in i + 1..n.min(6) {
            out.push((0..n).map(|k| int((k == i || k == j) as i64)).collect());
        }
    }
    for bound in [3, config.bound.max(1)] {
        for _ in 0..config.trials {
            out.push((0..n).map(|_| int(rng.gen_range(-bound..=bound))).collect());
        }
    }
    out
}

/// Change of basis `T` and both diagonal blocks, when `φ` yields a
/// nontrivial idempotent.
fn try_split(
    x: &MatrixRepresentation,
    end: &EndAlgebra,
    phi: &[Rational],
) -> Option<(Vec<CMatrix>, MatrixRepresentation, MatrixRepresentation)> {
    let m = end.minimal_polynomial(phi);
    let (m1, m2) = coprime_split(&m)?;
    let (_, s, _) = m1.ext_gcd(&m2);
    let e = end.element(&end.eval_poly(&s.mul(&m1), phi));

    let mut t = Vec::with_capacity(e.len());
    let (mut lens1, mut lens2) = (Vec::new(), Vec::new());
    for (v, ev) in e.iter().enumerate() {
        let d = x.dims()[v];
        let im = ev.column_space();
        let co = (&CMatrix::identity(d) - ev).column_space();
        lens1.push(im.cols());
        lens2.push(co.cols());
        let cols: Vec<Vec<GaussianRational>> =
            (0..im.cols()).map(|c| im.column(c)).chain((0..co.cols()).map(|c| co.column(c))).collect();
        t.push(CMatrix::from_columns(d, &cols));
    }
    if lens1.iter().all(|&l| l == 0) || lens2.iter().all(|&l| l == 0) {
        return None;
    }
    let b = apply_base_change(x, &t).ok()?;
    let first = b.diagonal_block(&vec![0; lens1.len()], &lens1).ok()?;
    let second = b.diagonal_block(&lens1, &lens2).ok()?;
    (direct_sum(&first, &second).ok()? == b).then_some((t, first, second))
}
