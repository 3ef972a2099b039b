//! Python bindings: `import hagakit_py`.
//!
//! Parameters accept a float or the string `"zerobar"`; library errors raise
//! `hagakit_py.HagakitError` (a `ValueError`).

use hagakit::ct::{self, Branch, CtParam};
use hagakit::haga::{self, HagaParam};
use hagakit::report::{self, CtRequest, HagaRequest, Problem, ZERO_BAR};
use hagakit::svg::{self, RenderStyle};
use hagakit::verify::VerifyConfig;
use hagakit::{Point, Tolerance};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(hagakit_py, HagakitError, PyValueError);

fn err(e: hagakit::Error) -> PyErr {
    HagakitError::new_err(e.to_string())
}

#[derive(FromPyObject)]
enum ParamIn {
    Real(f64),
    Named(String),
}

impl ParamIn {
    fn zero_bar(&self) -> PyResult<bool> {
        match self {
            ParamIn::Real(_) => Ok(false),
            ParamIn::Named(s) if s == ZERO_BAR => Ok(true),
            ParamIn::Named(s) => Err(PyValueError::new_err(format!(
                "expected a number or \"zerobar\", got {s:?}"
            ))),
        }
    }

    fn ct(&self) -> PyResult<CtParam> {
        match self {
            ParamIn::Real(x) => CtParam::real(*x).map_err(err),
            _ => self.zero_bar().map(|_| CtParam::ZeroBar),
        }
    }

    fn haga(&self) -> PyResult<HagaParam> {
        match self {
            ParamIn::Real(x) => Ok(HagaParam::Real(*x)),
            _ => self.zero_bar().map(|_| HagaParam::ZeroBar),
        }
    }
}

#[derive(IntoPyObject)]
enum ParamOut {
    Real(f64),
    ZeroBar(&'static str),
}

impl ParamOut {
    fn new(zero_bar: bool, value: f64) -> Self {
        if zero_bar {
            ParamOut::ZeroBar(ZERO_BAR)
        } else {
            ParamOut::Real(value)
        }
    }
}

fn branch(name: &str) -> PyResult<Branch> {
    match name {
        "low" => Ok(Branch::Low),
        "high" => Ok(Branch::High),
        _ => Err(PyValueError::new_err(format!(
            "branch must be \"low\" or \"high\", got {name:?}"
        ))),
    }
}

fn tolerance(eps: Option<f64>) -> PyResult<Tolerance> {
    eps.map_or(Ok(Tolerance::default()), |e| {
        Tolerance::uniform(e).map_err(err)
    })
}

fn xy(p: Point) -> (f64, f64) {
    (p.x, p.y)
}

/// A `CT(n)` figure in its own frame: `A` at the origin, `k` the x-axis.
#[pyclass(name = "CtFigure", module = "hagakit_py", frozen)]
struct PyCtFigure {
    inner: ct::CtFigure,
    request: CtRequest,
}

#[pymethods]
impl PyCtFigure {
    /// `CtFigure(r, n)`; for `n = "zerobar"` the length is `|AK|`.
    #[new]
    fn new(length: f64, n: ParamIn) -> PyResult<Self> {
        let request = match n.ct()? {
            CtParam::Real(n) => CtRequest::FromN { r: length, n },
            CtParam::ZeroBar => CtRequest::ZeroBar { ak: length },
        };
        Self::from_request(request)
    }

    #[staticmethod]
    fn from_radii(d1: f64, d2: f64, branch_name: &str) -> PyResult<Self> {
        Self::from_request(CtRequest::FromRadii {
            d1,
            d2,
            branch: branch(branch_name)?,
        })
    }

    #[getter]
    fn n(&self) -> ParamOut {
        ParamOut::new(self.inner.n.is_zero_bar(), self.inner.n.value())
    }

    #[getter]
    fn r(&self) -> f64 {
        self.inner.r()
    }

    #[getter]
    fn d1(&self) -> f64 {
        self.inner.d1()
    }

    #[getter]
    fn d2(&self) -> f64 {
        self.inner.d2()
    }

    #[getter]
    fn ak(&self) -> f64 {
        self.inner.ak()
    }

    #[getter]
    fn tau(&self) -> i8 {
        self.inner.tau
    }

    /// `(cx, cy, radius)` of `Γ`.
    #[getter]
    fn gamma(&self) -> (f64, f64, f64) {
        let c = self.inner.gamma;
        (c.center.x, c.center.y, c.radius)
    }

    #[getter]
    fn max_residual(&self) -> f64 {
        self.inner.residuals().max_abs()
    }

    /// The figure on the companion circle, sharing `Δ₁` and `Δ₂`.
    fn companion(&self) -> PyCtFigure {
        let pair = self.inner.companion();
        let c = pair.companion;
        let request = match c.n {
            CtParam::Real(n) => CtRequest::FromN { r: c.r(), n },
            CtParam::ZeroBar => CtRequest::ZeroBar { ak: c.ak() },
        };
        PyCtFigure { inner: c, request }
    }

    #[pyo3(signature = (companion = false, chain = false))]
    fn to_svg(&self, companion: bool, chain: bool) -> PyResult<String> {
        let style = RenderStyle::default();
        let doc = if chain {
            svg::render_ct_chain(&self.inner, &style).map_err(err)?
        } else {
            svg::render_ct(&self.inner, &style, companion)
        };
        Ok(doc.to_svg_string())
    }

    #[pyo3(signature = (eps = None))]
    fn report_json(&self, eps: Option<f64>) -> PyResult<String> {
        let (_, rep) = report::ct_report(&self.request, &tolerance(eps)?).map_err(err)?;
        Ok(rep.to_json())
    }

    fn __repr__(&self) -> String {
        format!("CtFigure(n={}, r={})", self.inner.n, self.inner.r())
    }
}

impl PyCtFigure {
    fn from_request(request: CtRequest) -> PyResult<Self> {
        let inner = report::ct_figure(&request).map_err(err)?;
        Ok(PyCtFigure { inner, request })
    }
}

/// The fold of a square `ABCD` (side `d`) carrying `C` to `E` on line `AD`.
#[pyclass(name = "HagaFigure", module = "hagakit_py", frozen)]
struct PyHagaFigure {
    inner: haga::HagaFigure,
    request: HagaRequest,
}

#[pymethods]
impl PyHagaFigure {
    #[new]
    #[pyo3(signature = (d, e, eps = None))]
    fn new(d: f64, e: f64, eps: Option<f64>) -> PyResult<Self> {
        Self::from_request(HagaRequest::FromE { d, e }, eps)
    }

    #[staticmethod]
    #[pyo3(signature = (d, n, eps = None))]
    fn from_n(d: f64, n: ParamIn, eps: Option<f64>) -> PyResult<Self> {
        Self::from_request(HagaRequest::FromN { d, n: n.haga()? }, eps)
    }

    #[getter]
    fn d(&self) -> f64 {
        self.inner.side
    }

    #[getter]
    fn e(&self) -> f64 {
        self.inner.e_coord
    }

    #[getter]
    fn n(&self) -> ParamOut {
        ParamOut::new(self.inner.n.is_zero_bar(), self.inner.n.value())
    }

    #[getter]
    fn case(&self) -> &'static str {
        self.inner.case.as_str()
    }

    #[getter]
    fn crease_interior(&self) -> bool {
        self.inner.crease_interior
    }

    #[getter]
    fn r(&self) -> f64 {
        self.inner.r()
    }

    #[getter(E)]
    fn e_point(&self) -> (f64, f64) {
        xy(self.inner.e)
    }

    #[getter(F)]
    fn f_point(&self) -> Option<(f64, f64)> {
        self.inner.f.map(xy)
    }

    #[getter(G)]
    fn g_point(&self) -> (f64, f64) {
        xy(self.inner.g)
    }

    #[getter(K)]
    fn k_point(&self) -> (f64, f64) {
        xy(self.inner.gamma_foot)
    }

    #[getter(T)]
    fn t_point(&self) -> (f64, f64) {
        xy(self.inner.contact)
    }

    fn to_svg(&self) -> String {
        svg::render_haga(&self.inner, &RenderStyle::default()).to_svg_string()
    }

    #[pyo3(signature = (eps = None))]
    fn report_json(&self, eps: Option<f64>) -> PyResult<String> {
        let (_, rep) = report::haga_report(&self.request, &tolerance(eps)?).map_err(err)?;
        Ok(rep.to_json())
    }

    fn __repr__(&self) -> String {
        format!(
            "HagaFigure(d={}, e={}, n={}, case={})",
            self.inner.side, self.inner.e_coord, self.inner.n, self.inner.case
        )
    }
}

impl PyHagaFigure {
    fn from_request(request: HagaRequest, eps: Option<f64>) -> PyResult<Self> {
        let (inner, _) = report::haga_report(&request, &tolerance(eps)?).map_err(err)?;
        Ok(PyHagaFigure { inner, request })
    }
}

/// `(d1, d2)` for `CT(n)` with circle radius `r`.
#[pyfunction]
fn radii_from_n(n: ParamIn, r: f64) -> PyResult<(f64, f64)> {
    ct::radii_from_n(n.ct()?, r).map_err(err)
}

#[pyfunction]
fn ak_length(d1: f64, d2: f64) -> PyResult<f64> {
    ct::ak_length(d1, d2).map_err(err)
}

#[pyfunction]
fn gamma_radius_from_radii(d1: f64, d2: f64, branch_name: &str) -> PyResult<f64> {
    ct::gamma_radius_from_radii(d1, d2, branch(branch_name)?).map_err(err)
}

/// `a / b`, with `a / 0 = 0`.
#[pyfunction]
fn safe_div(a: f64, b: f64) -> f64 {
    ct::safe_div(a, b)
}

#[pyfunction]
fn external_tangent_chord(r: f64, s: f64) -> PyResult<f64> {
    hagakit::geom::external_tangent_chord(r, s).map_err(err)
}

/// Coordinate of `E` on `AD` for the fold with parameter `n`.
#[pyfunction]
fn e_from_n(d: f64, n: ParamIn) -> PyResult<f64> {
    haga::e_from_n(d, n.haga()?).map_err(err)
}

#[pyfunction]
fn solve_problem_1_2(d: f64) -> PyResult<f64> {
    ct::solve_problem_1_2(d).map_err(err)
}

#[pyfunction]
fn solve_problem_5(s: f64, n: u32) -> PyResult<f64> {
    ct::solve_problem_5(s, n).map_err(err)
}

/// `(r, ratio, consistent)` for the three-circle square problem.
#[pyfunction]
fn refute_problem_3(d: f64) -> PyResult<(f64, f64, bool)> {
    let rep = ct::refute_problem_3(d).map_err(err)?;
    Ok((rep.r, rep.ratio, rep.consistent))
}

#[pyfunction]
#[pyo3(signature = (id, d, chain_n = None, eps = None))]
fn problem_report_json(
    id: u32,
    d: f64,
    chain_n: Option<u32>,
    eps: Option<f64>,
) -> PyResult<String> {
    let problem = Problem::from_id(id).map_err(err)?;
    let rep = report::problems_report(problem, d, chain_n, &tolerance(eps)?).map_err(err)?;
    Ok(rep.to_json())
}

/// Run the seeded invariant sweep; returns `(passed, json)`.
#[pyfunction]
#[pyo3(signature = (samples = 1000, seed = 7, eps = None, perturb = 0.0))]
fn verify(
    py: Python<'_>,
    samples: usize,
    seed: u64,
    eps: Option<f64>,
    perturb: f64,
) -> PyResult<(bool, String)> {
    let cfg = VerifyConfig {
        samples,
        seed,
        tol: tolerance(eps)?,
        perturb,
    };
    let rep = py.detach(|| report::verify_report(&cfg)).map_err(err)?;
    Ok((rep.passed, rep.to_json()))
}

#[pymodule]
fn hagakit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("HagakitError", m.py().get_type::<HagakitError>())?;
    m.add("ZERO_BAR", ZERO_BAR)?;
    m.add("RHO_INV", haga::RHO_INV)?;
    m.add_class::<PyCtFigure>()?;
    m.add_class::<PyHagaFigure>()?;
    m.add_function(wrap_pyfunction!(radii_from_n, m)?)?;
    m.add_function(wrap_pyfunction!(ak_length, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_radius_from_radii, m)?)?;
    m.add_function(wrap_pyfunction!(safe_div, m)?)?;
    m.add_function(wrap_pyfunction!(external_tangent_chord, m)?)?;
    m.add_function(wrap_pyfunction!(e_from_n, m)?)?;
    m.add_function(wrap_pyfunction!(solve_problem_1_2, m)?)?;
    m.add_function(wrap_pyfunction!(solve_problem_5, m)?)?;
    m.add_function(wrap_pyfunction!(refute_problem_3, m)?)?;
    m.add_function(wrap_pyfunction!(problem_report_json, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
