//! Python bindings for `mubkit`.
//!
//! Amplitudes cross the boundary either as exact strings in the cyclotomic
//! text grammar (`"1 - z12^3"`) or, for plotting, as Python `complex`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use mubkit::entangle::{bell_family, verify_bell_family, BellFamily, BellReport};
use mubkit::format::{self, MubDocument};
use mubkit::geometry::{
    fano_from_gf8, find_isomorphism, lifted_fano, projective_plane, verify_plane_axioms,
    IncidencePlane,
};
use mubkit::mub::{mub_set, verify_mub_set, Construction, MubReport};
use mubkit::pauli::pauli_mub_correspondence;
use mubkit::{CyclotomicInt, RingContext};

fn err(e: mubkit::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn construction(name: &str) -> PyResult<Construction> {
    Ok(match name {
        "auto" => Construction::Auto,
        "fourier" => Construction::Fourier,
        "gates" => Construction::Gates,
        "field" => Construction::Field,
        "ring" => Construction::Ring,
        "tensor" => Construction::Tensor,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown construction {other:?}"
            )))
        }
    })
}

/// Outcome of verifying a MUB set.
#[pyclass(name = "MubReport", frozen, get_all)]
pub struct PyMubReport {
    dim: usize,
    passed: bool,
    /// Indices of bases that are not orthonormal.
    bad_bases: Vec<usize>,
    /// `(left, right)` pairs of bases that are not unbiased.
    bad_pairs: Vec<(usize, usize)>,
    pairs_checked: usize,
}

impl From<MubReport> for PyMubReport {
    fn from(r: MubReport) -> Self {
        PyMubReport {
            dim: r.dim,
            passed: r.passed,
            bad_bases: r
                .bases
                .iter()
                .filter(|b| !b.passed)
                .map(|b| b.index)
                .collect(),
            bad_pairs: r.failed_pairs().map(|p| (p.left, p.right)).collect(),
            pairs_checked: r.pairs.len(),
        }
    }
}

#[pymethods]
impl PyMubReport {
    fn __bool__(&self) -> bool {
        self.passed
    }

    fn __repr__(&self) -> String {
        format!(
            "MubReport(dim={}, passed={}, pairs_checked={}, bad_pairs={:?})",
            self.dim, self.passed, self.pairs_checked, self.bad_pairs
        )
    }
}

/// An exact set of mutually unbiased bases.
#[pyclass(name = "MubSet", frozen)]
pub struct PyMubSet {
    inner: mubkit::MubSet,
}

#[pymethods]
impl PyMubSet {
    #[new]
    #[pyo3(signature = (dim, construction = "auto", cap = 128))]
    fn new(dim: u64, construction: &str, cap: u64) -> PyResult<Self> {
        let c = self::construction(construction)?;
        Ok(PyMubSet {
            inner: mub_set(dim, c, cap).map_err(err)?,
        })
    }

    /// Reads an interchange document.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyMubSet {
            inner: format::mub_from_json(text).map_err(err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        format::mub_to_json(&self.inner).map_err(err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim
    }

    #[getter]
    fn route(&self) -> String {
        self.inner.provenance.route.to_string()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "MubSet(dim={}, bases={}, route={})",
            self.inner.dim,
            self.inner.len(),
            self.route()
        )
    }

    /// Entry strings of basis `k`, one list per vector, plus the squared scale
    /// `s` so that each vector is `entries / sqrt(s)`.
    fn basis(&self, k: usize) -> PyResult<(Vec<Vec<String>>, u64)> {
        let doc = MubDocument::from_set(&self.inner).map_err(err)?;
        let rec = doc
            .bases
            .into_iter()
            .nth(k)
            .ok_or_else(|| PyValueError::new_err(format!("no basis {k}")))?;
        Ok((rec.vectors, rec.scale_sq))
    }

    /// Basis `k` as normalized floating-point vectors.
    fn basis_complex(&self, k: usize) -> PyResult<Vec<Vec<complex::C>>> {
        let b = self
            .inner
            .bases
            .get(k)
            .ok_or_else(|| PyValueError::new_err(format!("no basis {k}")))?;
        Ok(b.vectors
            .iter()
            .map(|v| {
                let s = (v.scale_sq() as f64).sqrt();
                v.entries()
                    .iter()
                    .map(|e| {
                        let (re, im) = e.to_complex();
                        complex::C(re / s, im / s)
                    })
                    .collect()
            })
            .collect())
    }

    fn verify(&self) -> PyMubReport {
        verify_mub_set(&self.inner).into()
    }
}

mod complex {
    use pyo3::prelude::*;
    use pyo3::types::PyComplex;

    /// A complex number that converts to Python `complex`.
    pub struct C(pub f64, pub f64);

    impl<'py> IntoPyObject<'py> for C {
        type Target = PyComplex;
        type Output = Bound<'py, PyComplex>;
        type Error = std::convert::Infallible;

        fn into_pyobject(self, py: Python<'py>) -> Result<Self::Output, Self::Error> {
            Ok(PyComplex::from_doubles(py, self.0, self.1))
        }
    }
}

/// Re-verifies a JSON interchange document.
#[pyfunction]
fn verify_json(text: &str) -> PyResult<PyMubReport> {
    let set = format::mub_from_json(text).map_err(err)?;
    Ok(verify_mub_set(&set).into())
}

/// A generalized Bell family with its verification summary.
#[pyclass(name = "BellFamily", frozen)]
pub struct PyBellFamily {
    family: BellFamily,
    report: BellReport,
}

#[pymethods]
impl PyBellFamily {
    #[new]
    #[pyo3(signature = (dim, cap = 128))]
    fn new(dim: u64, cap: u64) -> PyResult<Self> {
        let family = bell_family(dim, cap).map_err(err)?;
        let report = verify_bell_family(&family);
        Ok(PyBellFamily { family, report })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.family.dim
    }

    #[getter]
    fn layers(&self) -> usize {
        self.family.layers()
    }

    #[getter]
    fn passed(&self) -> bool {
        self.report.passed
    }

    #[getter]
    fn maximally_entangled(&self) -> bool {
        self.report.maximally_entangled
    }

    fn __len__(&self) -> usize {
        self.report.states
    }

    /// Ket rendering of state `(h, a, b)`, e.g. `|0,0⟩ + |1,1⟩`.
    fn ket(&self, h: usize, a: usize, b: usize) -> PyResult<String> {
        if h >= self.family.dim || a >= self.family.layers() || b >= self.family.dim {
            return Err(PyValueError::new_err(format!("no state ({h}, {a}, {b})")));
        }
        Ok(format::render_ket(
            &self.family.state(h, a, b).vector,
            self.family.dim,
        ))
    }

    fn to_json(&self) -> String {
        format::bell_to_json(&self.family)
    }
}

/// `(basis, operator)` pairs of the Pauli–MUB correspondence in prime `p`.
#[pyfunction]
fn pauli_correspondence(p: u64) -> PyResult<Vec<(usize, String)>> {
    let r = pauli_mub_correspondence(p).map_err(err)?;
    let matching = r
        .matching
        .ok_or_else(|| PyValueError::new_err(format!("no perfect matching for p = {p}")))?;
    Ok(matching
        .into_iter()
        .map(|m| (m.basis, m.operator))
        .collect())
}

fn plane_lines(plane: &IncidencePlane) -> Vec<Vec<String>> {
    plane
        .lines
        .iter()
        .map(|l| l.iter().map(|&i| plane.points[i].clone()).collect())
        .collect()
}

/// Lines of PG(2, q), each as a list of point labels. Raises if the axioms fail.
#[pyfunction]
fn plane(q: u64) -> PyResult<Vec<Vec<String>>> {
    let p = projective_plane(q).map_err(err)?;
    let r = verify_plane_axioms(&p);
    match r.failure {
        None => Ok(plane_lines(&p)),
        Some(f) => Err(PyValueError::new_err(f)),
    }
}

/// Lines of the Fano plane on GF(8)*.
#[pyfunction]
fn fano() -> Vec<Vec<String>> {
    plane_lines(&fano_from_gf8())
}

/// Lines of the plane on the Teichmüller units of GR(4³), and whether it is
/// isomorphic to the Fano plane.
#[pyfunction]
fn lifted_fano_plane() -> PyResult<(Vec<Vec<String>>, bool)> {
    let ctx = RingContext::new(3).map_err(err)?;
    let lifted = lifted_fano(&ctx).map_err(err)?;
    let iso = find_isomorphism(&lifted.plane, &fano_from_gf8()).is_some();
    Ok((plane_lines(&lifted.plane), iso))
}

/// Hensel lift of a binary polynomial (coefficients low to high) to Z_4.
#[pyfunction]
fn hensel_lift(coeffs: Vec<u32>) -> PyResult<Vec<u32>> {
    mubkit::hensel_lift(&coeffs).map_err(err)
}

/// `|x|²` for a cyclotomic integer in text form, returned in the same form.
#[pyfunction]
fn abs_squared(text: &str, order: u32) -> PyResult<String> {
    let x = CyclotomicInt::parse(text, order).map_err(err)?;
    Ok(x.abs_squared().to_string())
}

#[pymodule]
pub fn pymubkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMubSet>()?;
    m.add_class::<PyMubReport>()?;
    m.add_class::<PyBellFamily>()?;
    m.add_function(wrap_pyfunction!(verify_json, m)?)?;
    m.add_function(wrap_pyfunction!(pauli_correspondence, m)?)?;
    m.add_function(wrap_pyfunction!(plane, m)?)?;
    m.add_function(wrap_pyfunction!(fano, m)?)?;
    m.add_function(wrap_pyfunction!(lifted_fano_plane, m)?)?;
    m.add_function(wrap_pyfunction!(hensel_lift, m)?)?;
    m.add_function(wrap_pyfunction!(abs_squared, m)?)?;
    Ok(())
}
