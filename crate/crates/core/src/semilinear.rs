//! Matrices of linear and semilinear maps.
//!
//! A semilinear map `𝒜` with matrix `A` acts on coordinates by
//! `[𝒜u] = conj(A·[u])`. Composition, change of basis and consimilarity
//! all follow from that single rule.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::model::{ArrowKind, Biquiver};
use crate::morphisms::{are_isomorphic, IsoVerdict, SamplingConfig};
use crate::representation::MatrixRepresentation;
use crate::scalar::GaussianRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MapKind {
    Linear,
    Semilinear,
}

impl From<ArrowKind> for MapKind {
    fn from(kind: ArrowKind) -> Self {
        match kind {
            ArrowKind::Full => MapKind::Linear,
            ArrowKind::Dashed => MapKind::Semilinear,
        }
    }
}

/// Coordinates of the image of `x`.
pub fn apply_map(kind: MapKind, m: &CMatrix, x: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
    let y = m.apply(x)?;
    Ok(match kind {
        MapKind::Linear => y,
        MapKind::Semilinear => y.iter().map(GaussianRational::conj).collect(),
    })
}

/// The map "first `A`, then `B`" as a kind and a matrix.
pub fn compose(kind_b: MapKind, b: &CMatrix, kind_a: MapKind, a: &CMatrix) -> Result<(MapKind, CMatrix)> {
    use MapKind::*;
    // a linear map after a semilinear one sees conjugated coordinates
    let (kind, left) = match (kind_b, kind_a) {
        (Linear, Linear) => (Linear, b.clone()),
        (Semilinear, Linear) => (Semilinear, b.clone()),
        (Linear, Semilinear) => (Semilinear, b.conj()),
        (Semilinear, Semilinear) => (Linear, b.conj()),
    };
    Ok((kind, left.try_mul(a)?))
}

/// Matrix of the same map after changing bases by the given transition
/// matrices: `T⁻¹·M·S` (linear) or `conj(T)⁻¹·M·S` (semilinear).
pub fn change_of_basis(kind: MapKind, m: &CMatrix, s_target: &CMatrix, s_source: &CMatrix) -> Result<CMatrix> {
    let target = match kind {
        MapKind::Linear => s_target.clone(),
        MapKind::Semilinear => s_target.conj(),
    };
    if !target.is_square() || target.rows() != m.rows() || !s_source.is_square() || s_source.rows() != m.cols() {
        return Err(Error::ShapeMismatch(format!(
            "transition matrices {}x{} and {}x{} do not fit a {}x{} map",
            s_target.rows(),
            s_target.cols(),
            s_source.rows(),
            s_source.cols(),
            m.rows(),
            m.cols()
        )));
    }
    let inv = target.inverse().ok_or(Error::Singular)?;
    let s = s_source;
    if s.inverse().is_none() {
        return Err(Error::Singular);
    }
    Ok(&(&inv * m) * s)
}

/// The biquiver with one vertex and one dashed loop `a`.
pub fn dashed_loop() -> Biquiver {
    Biquiver::from_edges(1, &[(1, 1, true)]).expect("valid")
}

/// Decides whether `conj(S)⁻¹·A·S = B` for some invertible `S`, through the
/// isomorphism test on the one-dashed-loop biquiver. A `Yes` carries the
/// verified matrix `S`.
pub fn are_consimilar(a: &CMatrix, b: &CMatrix, config: &SamplingConfig) -> Result<IsoVerdict> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::ShapeMismatch(format!(
            "consimilarity needs square matrices of equal size, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let g = dashed_loop();
    let ra = MatrixRepresentation::new(g.clone(), vec![a.rows()].into(), vec![a.clone()])?;
    let rb = MatrixRepresentation::new(g, vec![b.rows()].into(), vec![b.clone()])?;
    are_isomorphic(&ra, &rb, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphisms::IsoVerdict;
    use proptest::prelude::*;

    fn c(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    fn scalar(re: i64, im: i64) -> CMatrix {
        CMatrix::scalar(c(re, im))
    }

    #[test]
    fn apply_examples() {
        assert_eq!(apply_map(MapKind::Semilinear, &scalar(1, 0), &[c(0, 1)]).unwrap(), vec![c(0, -1)]);
        let x = vec![c(3, -2), c(0, 5)];
        assert_eq!(apply_map(MapKind::Linear, &CMatrix::identity(2), &x).unwrap(), x);
        assert_eq!(apply_map(MapKind::Semilinear, &scalar(0, 1), &[c(0, 1)]).unwrap(), vec![c(-1, 0)]);
        assert!(apply_map(MapKind::Linear, &CMatrix::identity(2), &[c(1, 0)]).is_err());
    }

    #[test]
    fn compose_examples() {
        // semilinear B after linear A: B·A
        assert_eq!(
            compose(MapKind::Semilinear, &scalar(0, 1), MapKind::Linear, &scalar(2, 0)).unwrap(),
            (MapKind::Semilinear, scalar(0, 2))
        );
        // linear B after semilinear A: conj(B)·A
        assert_eq!(
            compose(MapKind::Linear, &scalar(0, 1), MapKind::Semilinear, &scalar(1, 0)).unwrap(),
            (MapKind::Semilinear, scalar(0, -1))
        );
        assert_eq!(
            compose(MapKind::Semilinear, &scalar(0, 1), MapKind::Semilinear, &scalar(1, 0)).unwrap(),
            (MapKind::Linear, scalar(0, -1))
        );
    }

    #[test]
    fn change_of_basis_examples() {
        let s = scalar(1, -1);
        assert_eq!(change_of_basis(MapKind::Semilinear, &scalar(0, 1), &s, &s).unwrap(), scalar(1, 0));
        let m = CMatrix::from_int_pairs(&[&[(1, 2), (0, 1)], &[(3, 0), (-1, -1)]]);
        let id = CMatrix::identity(2);
        assert_eq!(change_of_basis(MapKind::Semilinear, &m, &id, &id).unwrap(), m);
        assert_eq!(change_of_basis(MapKind::Linear, &scalar(2, 0), &scalar(3, 0), &scalar(3, 0)).unwrap(), scalar(2, 0));
        assert_eq!(
            change_of_basis(MapKind::Linear, &scalar(2, 0), &scalar(0, 0), &scalar(1, 0)),
            Err(Error::Singular)
        );
    }

    #[test]
    fn consimilarity_examples() {
        let cfg = SamplingConfig::default();
        // the hand certificate S = 1 − i
        let s = scalar(1, -1);
        assert_eq!(&(&s.conj().inverse().unwrap() * &scalar(0, 1)) * &s, scalar(1, 0));
        match are_consimilar(&scalar(0, 1), &scalar(1, 0), &cfg).unwrap() {
            IsoVerdict::Yes(cert) => {
                let s = &cert[0];
                assert_eq!(&(&s.conj().inverse().unwrap() * &scalar(0, 1)) * s, scalar(1, 0));
            }
            other => panic!("expected Yes, got {other:?}"),
        }
        let a = CMatrix::from_int_pairs(&[&[(1, 1), (2, 0)], &[(0, 0), (0, -3)]]);
        assert!(matches!(are_consimilar(&a, &a, &cfg).unwrap(), IsoVerdict::Yes(_)));
        // |conj(s)⁻¹ s| = 1, so 1 and 2 are not consimilar
        assert!(!are_consimilar(&scalar(1, 0), &scalar(2, 0), &cfg).unwrap().is_yes());
    }

    fn arb_entry() -> impl Strategy<Value = GaussianRational> {
        (-4i64..5, -4i64..5).prop_map(|(a, b)| c(a, b))
    }

    fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = CMatrix> {
        proptest::collection::vec(arb_entry(), rows * cols).prop_map(move |e| CMatrix::new(rows, cols, e).unwrap())
    }

    fn arb_kind() -> impl Strategy<Value = MapKind> {
        prop_oneof![Just(MapKind::Linear), Just(MapKind::Semilinear)]
    }

    proptest! {
        #[test]
        fn composition_matches_pointwise_application(
            kb in arb_kind(), ka in arb_kind(),
            b in arb_matrix(2, 3), a in arb_matrix(3, 2),
            x in proptest::collection::vec(arb_entry(), 2),
        ) {
            let (k, m) = compose(kb, &b, ka, &a).unwrap();
            let direct = apply_map(k, &m, &x).unwrap();
            let stepwise = apply_map(kb, &b, &apply_map(ka, &a, &x).unwrap()).unwrap();
            prop_assert_eq!(direct, stepwise);
        }
    }
}
