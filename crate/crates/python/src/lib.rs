//! Python bindings. Documents cross the boundary as plain Python data
//! (dicts, lists, `[re, im]` pairs of rational strings), matching the JSON
//! formats of the command-line tool.

use biquiver_core::conjugation::Elimination;
use biquiver_core::{
    are_isomorphic, conjugate_biquiver, conjugate_representation, dash_elimination_plan, decompose, definiteness,
    direct_sum, gadget_cycle, gadget_loop_arrow, gadget_two_loops, gram_matrix, hom_basis, random_representation,
    representation_type, Biquiver as CoreBiquiver, CMatrix, DimensionVector, Error, IsoVerdict,
    MatrixRepresentation, SamplingConfig, SmallWild,
};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde_json::{json, Value};

fn err(e: Error) -> PyErr {
    if e.is_precondition() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn to_py(py: Python<'_>, value: &Value) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (value.to_string(),))?.unbind())
}

fn from_py(obj: &Bound<'_, PyAny>) -> PyResult<Value> {
    let text: String = obj.py().import("json")?.call_method1("dumps", (obj,))?.extract()?;
    serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn matrix(obj: &Bound<'_, PyAny>) -> PyResult<CMatrix> {
    CMatrix::from_json(&from_py(obj)?, None).map_err(err)
}

fn config(trials: usize, bound: i64, seed: u64) -> PyResult<SamplingConfig> {
    if bound < 1 {
        return Err(PyValueError::new_err("bound must be positive"));
    }
    Ok(SamplingConfig { bound, trials, seed })
}

fn vertex(g: &CoreBiquiver, v: usize) -> PyResult<usize> {
    if v == 0 || v > g.vertex_count() {
        return Err(err(Error::VertexOutOfRange { vertex: v, vertices: g.vertex_count() }));
    }
    Ok(v - 1)
}

fn vertex_matrices(ms: &[CMatrix]) -> Value {
    Value::Object(ms.iter().enumerate().map(|(v, m)| ((v + 1).to_string(), m.to_json())).collect())
}

/// A directed multigraph with full and dashed arrows; vertices are 1-based.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Biquiver {
    inner: CoreBiquiver,
}

#[pymethods]
impl Biquiver {
    /// `edges` is a list of `(from, to, dashed)`; arrows get ids `a1`, `a2`, ...
    #[new]
    fn new(vertices: usize, edges: Vec<(usize, usize, bool)>) -> PyResult<Self> {
        Ok(Self { inner: CoreBiquiver::from_edges(vertices, &edges).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: CoreBiquiver::parse_json(text).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn dashed_count(&self) -> usize {
        self.inner.dashed_count()
    }

    /// `{"kind", "diagram", "definiteness"}`
    fn classify(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let ty = representation_type(&self.inner).map_err(err)?;
        let def = definiteness(&gram_matrix(&self.inner));
        to_py(py, &json!({"kind": ty.kind, "diagram": ty.diagram, "definiteness": def}))
    }

    /// Gram matrix of the Tits form as rational strings.
    fn gram(&self) -> Vec<Vec<String>> {
        gram_matrix(&self.inner).to_strings()
    }

    fn tits_value(&self, z: Vec<usize>) -> PyResult<i64> {
        biquiver_core::evaluate(&self.inner, &DimensionVector(z)).map_err(err)
    }

    #[pyo3(signature = (value = 1, bound = None))]
    fn roots(&self, value: i64, bound: Option<usize>) -> PyResult<Vec<Vec<usize>>> {
        let roots = biquiver_core::roots::roots_with_value(&self.inner, value, bound).map_err(err)?;
        Ok(roots.into_iter().map(|z| z.0).collect())
    }

    fn conjugate(&self, vertex_1based: usize) -> PyResult<Self> {
        let u = vertex(&self.inner, vertex_1based)?;
        Ok(Self { inner: conjugate_biquiver(&self.inner, u).map_err(err)? })
    }

    /// 1-based vertices whose conjugation removes every dashed arrow, or
    /// `None` when a dashed loop or an odd cycle prevents it.
    fn eliminate_dashes(&self) -> PyResult<Option<Vec<usize>>> {
        Ok(match dash_elimination_plan(&self.inner).map_err(err)? {
            Elimination::Plan(p) => Some(p.vertices.iter().map(|v| v + 1).collect()),
            Elimination::Impossible(_) => None,
        })
    }

    fn __repr__(&self) -> String {
        format!("Biquiver({})", self.inner.to_json())
    }
}

/// Matrices over the Gaussian rationals on every arrow.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Representation {
    inner: MatrixRepresentation,
}

#[pymethods]
impl Representation {
    /// `doc` is `{"dims": [...], "matrices": {"id": [[[re, im], ...], ...]}}`.
    #[new]
    fn new(biquiver: &Biquiver, doc: &Bound<'_, PyAny>) -> PyResult<Self> {
        let inner = MatrixRepresentation::from_json(&biquiver.inner, &from_py(doc)?).map_err(err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (biquiver, dims, bound = 10_000, seed = 0))]
    fn random(biquiver: &Biquiver, dims: Vec<usize>, bound: i64, seed: u64) -> PyResult<Self> {
        let inner = random_representation(&biquiver.inner, &DimensionVector(dims), bound, seed).map_err(err)?;
        Ok(Self { inner })
    }

    fn to_dict(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.inner.to_json())
    }

    #[getter]
    fn dims(&self) -> Vec<usize> {
        self.inner.dims().0.clone()
    }

    #[getter]
    fn biquiver(&self) -> Biquiver {
        Biquiver { inner: self.inner.biquiver().clone() }
    }

    fn direct_sum(&self, other: &Representation) -> PyResult<Self> {
        Ok(Self { inner: direct_sum(&self.inner, &other.inner).map_err(err)? })
    }

    fn conjugate(&self, vertex_1based: usize) -> PyResult<Self> {
        let u = vertex(self.inner.biquiver(), vertex_1based)?;
        Ok(Self { inner: conjugate_representation(&self.inner, u).map_err(err)? })
    }

    /// Real dimension of `Hom(self, other)`.
    fn hom_dim(&self, other: &Representation) -> PyResult<usize> {
        Ok(hom_basis(&self.inner, &other.inner).map_err(err)?.dim())
    }

    /// `{"verdict": "Yes" | "No" | "ProbablyNo", ...}`; a `Yes` carries the
    /// certificate keyed by 1-based vertex.
    #[pyo3(signature = (other, trials = 8, bound = 10_000, seed = 0))]
    fn isomorphic(&self, py: Python<'_>, other: &Representation, trials: usize, bound: i64, seed: u64) -> PyResult<Py<PyAny>> {
        let verdict = are_isomorphic(&self.inner, &other.inner, &config(trials, bound, seed)?).map_err(err)?;
        let out = match &verdict {
            IsoVerdict::Yes(s) => json!({"verdict": "Yes", "certificate": vertex_matrices(s)}),
            IsoVerdict::No(reason) => json!({"verdict": "No", "reason": reason}),
            IsoVerdict::ProbablyNo(detail) => json!({"verdict": "ProbablyNo", "inconclusive": detail}),
        };
        to_py(py, &out)
    }

    /// `(summands, leaf_status)`
    #[pyo3(signature = (trials = 8, bound = 10_000, seed = 0))]
    fn decompose(&self, trials: usize, bound: i64, seed: u64) -> PyResult<(Vec<Representation>, Vec<String>)> {
        let d = decompose(&self.inner, &config(trials, bound, seed)?).map_err(err)?;
        let status = d.leaf_status.iter().map(|s| format!("{s:?}")).collect();
        Ok((d.summands.into_iter().map(|inner| Representation { inner }).collect(), status))
    }

    fn __eq__(&self, other: &Representation) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Representation(dims={:?})", self.inner.dims().0)
    }
}

/// Identity maps around a cycle of `biquiver`, closed by `m`.
#[pyfunction]
#[pyo3(signature = (biquiver, m, cycle = None))]
fn gadget_for_cycle(biquiver: &Biquiver, m: &Bound<'_, PyAny>, cycle: Option<Vec<String>>) -> PyResult<Representation> {
    let inner = gadget_cycle(&biquiver.inner, cycle.as_deref(), &matrix(m)?).map_err(err)?;
    Ok(Representation { inner })
}

/// Gadget on one of the small wild biquivers `"G1"` to `"G4"` encoding the pair `(p, q)`.
#[pyfunction]
fn gadget(which: &str, p: &Bound<'_, PyAny>, q: &Bound<'_, PyAny>) -> PyResult<Representation> {
    let (p, q) = (matrix(p)?, matrix(q)?);
    let inner = match which {
        "G1" => gadget_loop_arrow(SmallWild::G1, &p, &q),
        "G2" => gadget_loop_arrow(SmallWild::G2, &p, &q),
        "G3" => gadget_two_loops(SmallWild::G3, &p, &q),
        "G4" => gadget_two_loops(SmallWild::G4, &p, &q),
        _ => return Err(PyValueError::new_err(format!("unknown gadget `{which}`"))),
    }
    .map_err(err)?;
    Ok(Representation { inner })
}

#[pymodule]
fn biquiver(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Biquiver>()?;
    m.add_class::<Representation>()?;
    m.add_function(wrap_pyfunction!(gadget_for_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(gadget, m)?)?;
    Ok(())
}
