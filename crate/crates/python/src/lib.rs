//! Python bindings: generators, the Ziggurat table and the forensic audits.
//!
//! Structured results come back as plain `dict`s with the same field
//! names as the JSON reports of the command-line tool.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use rngfx::forensics::{self, CensusMap, ExperimentConfig};
use rngfx::generators::{self as gens, SeedConfig, Uniform32, Variant};
use rngfx::ziggurat;

fn err(e: rngfx::Error) -> PyErr {
    match e {
        rngfx::Error::CounterSaturation { .. } | rngfx::Error::NoConvergence(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// A seeded uniform 32-bit generator.
#[pyclass(name = "Generator", module = "pyrngfx", skip_from_py_object)]
#[derive(Clone)]
struct PyGenerator(gens::Generator);

#[pymethods]
impl PyGenerator {
    #[new]
    #[pyo3(signature = (variant, jsr=None, icng=None, z=None, w=None, ideal=None))]
    fn new(
        variant: &str,
        jsr: Option<u32>,
        icng: Option<u32>,
        z: Option<u32>,
        w: Option<u32>,
        ideal: Option<u64>,
    ) -> PyResult<Self> {
        let v: Variant = variant.parse().map_err(err)?;
        let d = SeedConfig::default();
        let cfg = SeedConfig {
            jsr: jsr.unwrap_or(d.jsr),
            icng: icng.unwrap_or(d.icng),
            z: z.unwrap_or(d.z),
            w: w.unwrap_or(d.w),
            ideal: ideal.unwrap_or(d.ideal),
        };
        cfg.build(v).map(Self).map_err(err)
    }

    #[getter]
    fn name(&self) -> &'static str {
        self.0.name()
    }

    /// Exact period, or `None` when it is not known in closed form.
    #[getter]
    fn period(&self) -> Option<u128> {
        self.0.period()
    }

    fn next_u32(&mut self) -> u32 {
        self.0.next_u32()
    }

    fn take(&mut self, n: usize) -> Vec<u32> {
        (0..n).map(|_| self.0.next_u32()).collect()
    }

    fn uni(&mut self) -> f64 {
        gens::uni_to_real(self.0.next_u32())
    }

    fn to_bytes(&self) -> Vec<u8> {
        self.0.to_bytes()
    }

    #[staticmethod]
    fn from_bytes(data: Vec<u8>) -> PyResult<Self> {
        gens::Generator::from_bytes(&data).map(Self).map_err(err)
    }

    fn copy(&self) -> Self {
        self.clone()
    }

    fn __iter__(slf: PyRef<'_, Self>) -> PyRef<'_, Self> {
        slf
    }

    fn __next__(&mut self) -> u32 {
        self.0.next_u32()
    }

    fn __repr__(&self) -> String {
        format!("Generator({:?})", self.0.name())
    }
}

/// Ziggurat table with `k` strips.
#[pyclass(name = "ZigguratTable", module = "pyrngfx", frozen)]
struct PyZigguratTable(ziggurat::ZigguratTable);

#[pymethods]
impl PyZigguratTable {
    #[new]
    #[pyo3(signature = (k=128))]
    fn new(k: usize) -> PyResult<Self> {
        ziggurat::ZigguratTable::build(k).map(Self).map_err(err)
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k()
    }

    #[getter]
    fn r(&self) -> f64 {
        self.0.r()
    }

    #[getter]
    fn v(&self) -> f64 {
        self.0.v()
    }

    #[getter]
    fn x(&self) -> Vec<f64> {
        self.0.x().to_vec()
    }

    #[getter]
    fn kn(&self) -> Vec<u32> {
        self.0.kn().to_vec()
    }

    #[getter]
    fn wn(&self) -> Vec<f64> {
        self.0.wn().to_vec()
    }

    #[getter(fn_)]
    fn fn_table(&self) -> Vec<f64> {
        self.0.fn_table().to_vec()
    }

    fn max_area_error(&self) -> f64 {
        self.0.max_area_error()
    }

    /// One normal deviate drawn from `source`.
    fn rnor(&self, mut source: PyRefMut<'_, PyGenerator>) -> f64 {
        self.0.rnor(&mut source.0)
    }

    fn normals(&self, mut source: PyRefMut<'_, PyGenerator>, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.0.rnor(&mut source.0)).collect()
    }

    fn to_csv(&self) -> String {
        self.0.to_csv()
    }
}

#[pyfunction]
fn x_plus_tx(x: u32) -> u32 {
    gens::x_plus_tx(x)
}

#[pyfunction]
fn shr_transform(x: u32) -> u32 {
    gens::shr_transform(x)
}

#[pyfunction]
fn normal_bin_probs(edges: Vec<f64>) -> PyResult<Vec<f64>> {
    forensics::normal_bin_probs(&edges).map_err(err)
}

/// χ² statistic of `counts` against `p`, with threshold `(k-1) + c·sqrt(2k)`.
#[pyfunction]
#[pyo3(signature = (counts, p, c=forensics::chi2::DEFAULT_C))]
fn chi2_statistic(py: Python<'_>, counts: Vec<u64>, p: Vec<f64>, c: f64) -> PyResult<Py<PyAny>> {
    let trials = counts.iter().sum();
    to_py(
        py,
        &forensics::chi2_statistic(&counts, &p, trials, c).map_err(err)?,
    )
}

#[pyfunction]
fn expected_chi2(p: Vec<f64>, eps: Vec<f64>, trials: u64) -> PyResult<f64> {
    forensics::expected_chi2(&p, &eps, trials).map_err(err)
}

#[pyfunction]
fn detection_sample_size(p: Vec<f64>, eps: Vec<f64>) -> PyResult<u64> {
    forensics::detection_sample_size(&p, &eps).map_err(err)
}

/// Preimage census of a 32-bit map over its whole domain. Slow: minutes.
#[pyfunction]
#[pyo3(signature = (map, chunks=16, shifts=None))]
fn preimage_census(
    py: Python<'_>,
    map: &str,
    chunks: u32,
    shifts: Option<(u32, u32, u32)>,
) -> PyResult<Py<PyAny>> {
    let m = CensusMap::parse(map, shifts).map_err(err)?;
    let c = py.detach(|| m.census(chunks, None)).map_err(err)?;
    to_py(py, &c.to_map())
}

#[pyfunction]
#[pyo3(signature = (a=36969, start=1))]
fn mwc_orbit_census(py: Python<'_>, a: u32, start: u32) -> PyResult<Py<PyAny>> {
    let m = gens::MwcMultiplier::from_value(a).map_err(err)?;
    let stats = py
        .detach(|| forensics::mwc_orbit_census(m, start))
        .map_err(err)?;
    to_py(py, &stats)
}

#[pyfunction]
fn tail_audit(py: Python<'_>) -> PyResult<Py<PyAny>> {
    let table = ziggurat::ZigguratTable::build(128).map_err(err)?;
    let audit = py
        .detach(|| forensics::tail_audit_shr0(&table, None))
        .map_err(err)?;
    to_py(py, &audit)
}

#[pyfunction]
#[pyo3(signature = (i, j, delta=64, steps=1_000_000))]
fn related_seed_lowbits_check(
    py: Python<'_>,
    i: u32,
    j: u32,
    delta: u32,
    steps: u64,
) -> PyResult<Py<PyAny>> {
    to_py(
        py,
        &forensics::related_seed_lowbits_check(i, j, delta, steps).map_err(err)?,
    )
}

#[pyfunction]
#[pyo3(signature = (seeds, steps=16))]
fn xor_quadruple_demo(py: Python<'_>, seeds: Vec<u32>, steps: u64) -> PyResult<Py<PyAny>> {
    to_py(
        py,
        &forensics::xor_quadruple_demo(&seeds, steps).map_err(err)?,
    )
}

/// Streaming χ² curve of Ziggurat deviates drawn from `variant`.
#[pyfunction]
#[pyo3(signature = (variant, checkpoints, jsr=None, nbins=200, lo=-7.0, hi=7.0, c=3.0))]
#[allow(clippy::too_many_arguments)]
fn run_experiment(
    py: Python<'_>,
    variant: &str,
    checkpoints: Vec<u64>,
    jsr: Option<u32>,
    nbins: usize,
    lo: f64,
    hi: f64,
    c: f64,
) -> PyResult<Py<PyAny>> {
    let v: Variant = variant.parse().map_err(err)?;
    let seeds = SeedConfig {
        jsr: jsr.unwrap_or(SeedConfig::default().jsr),
        ..SeedConfig::default()
    };
    let g = seeds.build(v).map_err(err)?;
    let config = ExperimentConfig {
        nbins,
        lo,
        hi,
        checkpoints,
        c,
    };
    let table = ziggurat::ZigguratTable::build(128).map_err(err)?;
    let curve = py
        .detach(|| forensics::run_experiment(&table, g, &config, |_| {}))
        .map_err(err)?;
    to_py(py, &curve)
}

#[pymodule]
fn pyrngfx(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add(
        "VARIANTS",
        Variant::ALL.iter().map(|v| v.name()).collect::<Vec<_>>(),
    )?;
    m.add_class::<PyGenerator>()?;
    m.add_class::<PyZigguratTable>()?;
    m.add_function(wrap_pyfunction!(x_plus_tx, m)?)?;
    m.add_function(wrap_pyfunction!(shr_transform, m)?)?;
    m.add_function(wrap_pyfunction!(normal_bin_probs, m)?)?;
    m.add_function(wrap_pyfunction!(chi2_statistic, m)?)?;
    m.add_function(wrap_pyfunction!(expected_chi2, m)?)?;
    m.add_function(wrap_pyfunction!(detection_sample_size, m)?)?;
    m.add_function(wrap_pyfunction!(preimage_census, m)?)?;
    m.add_function(wrap_pyfunction!(mwc_orbit_census, m)?)?;
    m.add_function(wrap_pyfunction!(tail_audit, m)?)?;
    m.add_function(wrap_pyfunction!(related_seed_lowbits_check, m)?)?;
    m.add_function(wrap_pyfunction!(xor_quadruple_demo, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    Ok(())
}
