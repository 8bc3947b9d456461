//! Matrix representations: a dimension vector and one `d_head × d_tail`
//! matrix per arrow.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::model::{ArrowKind, Biquiver, DimensionVector};
use crate::scalar::{GaussianRational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixRepresentation {
    biquiver: Biquiver,
    dims: DimensionVector,
    /// Aligned with `biquiver.arrows()`.
    matrices: Vec<CMatrix>,
}

impl MatrixRepresentation {
    /// Checks that every arrow `u → v` carries a `d_v × d_u` matrix.
    pub fn new(biquiver: Biquiver, dims: DimensionVector, matrices: Vec<CMatrix>) -> Result<Self> {
        dims.check_len(biquiver.vertex_count())?;
        if matrices.len() != biquiver.arrows().len() {
            return Err(Error::ShapeMismatch(format!(
                "{} matrices for {} arrows",
                matrices.len(),
                biquiver.arrows().len()
            )));
        }
        for (a, m) in biquiver.arrows().iter().zip(&matrices) {
            let expected = (dims[a.to], dims[a.from]);
            if m.shape() != expected {
                return Err(Error::ShapeMismatch(format!(
                    "arrow `{}` carries a {}x{} matrix, expected {}x{}",
                    a.id,
                    m.rows(),
                    m.cols(),
                    expected.0,
                    expected.1
                )));
            }
        }
        Ok(Self { biquiver, dims, matrices })
    }

    /// Same as [`MatrixRepresentation::new`] with matrices keyed by arrow id.
    pub fn from_map(biquiver: Biquiver, dims: DimensionVector, mut by_id: BTreeMap<String, CMatrix>) -> Result<Self> {
        let mut matrices = Vec::with_capacity(biquiver.arrows().len());
        for a in biquiver.arrows() {
            matrices.push(
                by_id
                    .remove(&a.id)
                    .ok_or_else(|| Error::ShapeMismatch(format!("no matrix for arrow `{}`", a.id)))?,
            );
        }
        if let Some(extra) = by_id.into_keys().next() {
            return Err(Error::UnknownArrow(extra));
        }
        Self::new(biquiver, dims, matrices)
    }

    pub fn zero(biquiver: Biquiver, dims: DimensionVector) -> Result<Self> {
        dims.check_len(biquiver.vertex_count())?;
        let matrices = biquiver.arrows().iter().map(|a| CMatrix::zeros(dims[a.to], dims[a.from])).collect();
        Self::new(biquiver, dims, matrices)
    }

    pub fn biquiver(&self) -> &Biquiver {
        &self.biquiver
    }

    pub fn dims(&self) -> &DimensionVector {
        &self.dims
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, id: &str) -> Option<&CMatrix> {
        self.biquiver.arrow_index(id).map(|k| &self.matrices[k])
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.dims.is_zero()
    }

    /// Same matrices over a biquiver with identical vertices and arrow ids
    /// whose kinds may differ.
    pub(crate) fn rebind(&self, biquiver: Biquiver, matrices: Vec<CMatrix>) -> Self {
        debug_assert_eq!(biquiver.arrows().len(), matrices.len());
        Self { biquiver, dims: self.dims.clone(), matrices }
    }

    pub fn parse_json(biquiver: &Biquiver, text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)?;
        Self::from_json(biquiver, &value)
    }

    /// `{"dims": [...], "matrices": {"id": [[["re","im"], ...], ...]}}`
    pub fn from_json(biquiver: &Biquiver, value: &Value) -> Result<Self> {
        let obj = value.as_object().ok_or_else(|| Error::Parse("representation must be an object".into()))?;
        if let Some(key) = obj.keys().find(|k| *k != "dims" && *k != "matrices") {
            return Err(Error::Parse(format!("unknown field `{key}`")));
        }
        let dims: Vec<usize> = serde_json::from_value(
            obj.get("dims").cloned().ok_or_else(|| Error::Parse("missing field `dims`".into()))?,
        )
        .map_err(|e| Error::Parse(format!("at `dims`: {e}")))?;
        let dims = DimensionVector(dims);
        dims.check_len(biquiver.vertex_count())?;
        let mats = obj
            .get("matrices")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("missing object field `matrices`".into()))?;
        let mut by_id = BTreeMap::new();
        for (id, m) in mats {
            let a = biquiver.arrow(id).ok_or_else(|| Error::UnknownArrow(id.clone()))?;
            let shape = (dims[a.to], dims[a.from]);
            let parsed = CMatrix::from_json(m, Some(shape)).map_err(|e| match e {
                Error::Parse(msg) => Error::Parse(format!("at `matrices.{id}`: {msg}")),
                Error::ShapeMismatch(msg) => Error::ShapeMismatch(format!("arrow `{id}`: {msg}")),
                other => other,
            })?;
            by_id.insert(id.clone(), parsed);
        }
        Self::from_map(biquiver.clone(), dims, by_id)
    }

    pub fn to_json(&self) -> Value {
        let mut mats = Map::new();
        for (a, m) in self.biquiver.arrows().iter().zip(&self.matrices) {
            mats.insert(a.id.clone(), m.to_json());
        }
        let mut obj = Map::new();
        obj.insert("dims".into(), serde_json::to_value(&self.dims).expect("dims serialize"));
        obj.insert("matrices".into(), Value::Object(mats));
        Value::Object(obj)
    }

    /// Keeps, at every vertex, the coordinate block `offset[v] .. offset[v] + len[v]`
    /// and the corresponding diagonal blocks of every arrow matrix.
    pub fn diagonal_block(&self, offsets: &[usize], lens: &[usize]) -> Result<Self> {
        let matrices = self
            .biquiver
            .arrows()
            .iter()
            .zip(&self.matrices)
            .map(|(a, m)| m.block(offsets[a.to], offsets[a.from], lens[a.to], lens[a.from]))
            .collect();
        Self::new(self.biquiver.clone(), DimensionVector(lens.to_vec()), matrices)
    }
}

/// Block-diagonal sum, summand order preserved.
pub fn direct_sum(a: &MatrixRepresentation, b: &MatrixRepresentation) -> Result<MatrixRepresentation> {
    if a.biquiver != b.biquiver {
        return Err(Error::BiquiverMismatch);
    }
    let dims = DimensionVector(a.dims.0.iter().zip(&b.dims.0).map(|(x, y)| x + y).collect());
    let matrices = a.matrices.iter().zip(&b.matrices).map(|(x, y)| CMatrix::block_diag(&[x, y])).collect();
    MatrixRepresentation::new(a.biquiver.clone(), dims, matrices)
}

/// Direct sum of a nonempty list (the zero representation of `g` when empty).
pub fn direct_sum_all(g: &Biquiver, parts: &[MatrixRepresentation]) -> Result<MatrixRepresentation> {
    let mut acc = MatrixRepresentation::zero(g.clone(), DimensionVector::zeros(g.vertex_count()))?;
    for p in parts {
        acc = direct_sum(&acc, p)?;
    }
    Ok(acc)
}

/// The isomorphic representation in new bases with transition matrices
/// `S_v`: `S_v⁻¹·A·S_u` on full arrows `u → v`, `conj(S_v)⁻¹·A·S_u` on
/// dashed ones.
pub fn apply_base_change(a: &MatrixRepresentation, s: &[CMatrix]) -> Result<MatrixRepresentation> {
    let t = a.biquiver.vertex_count();
    if s.len() != t {
        return Err(Error::LengthMismatch { expected: t, found: s.len() });
    }
    let mut inverses = Vec::with_capacity(t);
    for (v, sv) in s.iter().enumerate() {
        if sv.shape() != (a.dims[v], a.dims[v]) {
            return Err(Error::ShapeMismatch(format!(
                "transition matrix at vertex {} is {}x{}, expected {}x{}",
                v + 1,
                sv.rows(),
                sv.cols(),
                a.dims[v],
                a.dims[v]
            )));
        }
        let inv = sv.inverse().ok_or(Error::Singular)?;
        inverses.push(inv);
    }
    let matrices = a
        .biquiver
        .arrows()
        .iter()
        .zip(&a.matrices)
        .map(|(arrow, m)| {
            let left = match arrow.kind {
                ArrowKind::Full => inverses[arrow.to].clone(),
                ArrowKind::Dashed => inverses[arrow.to].conj(),
            };
            &(&left * m) * &s[arrow.from]
        })
        .collect();
    MatrixRepresentation::new(a.biquiver.clone(), a.dims.clone(), matrices)
}

/// A uniformly drawn `p/q` with `|p| ≤ bound`, `1 ≤ q ≤ bound`.
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    let p = rng.gen_range(-bound..=bound);
    let q = rng.gen_range(1..=bound);
    crate::scalar::rational(p, q)
}

pub fn random_entry<R: Rng>(rng: &mut R, bound: i64) -> GaussianRational {
    GaussianRational::new(random_rational(rng, bound), random_rational(rng, bound))
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> CMatrix {
    let entries = (0..rows * cols).map(|_| random_entry(rng, bound)).collect();
    CMatrix::new(rows, cols, entries).expect("sized")
}

/// Rejection-samples an invertible matrix.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize, bound: i64) -> CMatrix {
    loop {
        let m = random_matrix(rng, n, n, bound.max(2));
        if m.is_invertible() {
            return m;
        }
    }
}

/// Deterministic random representation: every entry is `a + b·i` with `a`,
/// `b` rationals whose numerators and denominators are bounded by
/// `entry_bound`.
pub fn random_representation(
    g: &Biquiver,
    dims: &DimensionVector,
    entry_bound: i64,
    seed: u64,
) -> Result<MatrixRepresentation> {
    if entry_bound < 1 {
        return Err(Error::InvalidArgument("entry bound must be at least 1".into()));
    }
    dims.check_len(g.vertex_count())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let matrices = g
        .arrows()
        .iter()
        .map(|a| random_matrix(&mut rng, dims[a.to], dims[a.from], entry_bound))
        .collect();
    MatrixRepresentation::new(g.clone(), dims.clone(), matrices)
}
