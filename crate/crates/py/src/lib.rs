//! Python bindings. Exact rationals cross the boundary as `"num/den"` strings,
//! which `fractions.Fraction` parses directly.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use slice_harmonic::blekherman::{self, ExpansionBasis};
use slice_harmonic::coupling::{self, BooleanFunction, Domain, Pmf};
use slice_harmonic::harmonic::{self, SliceFunction, SliceSpec};
use slice_harmonic::measures::{self, ExchangeableMeasure};
use slice_harmonic::rational::{format_rational, parse_rational};
use slice_harmonic::{gt, Error, MultilinearPoly, Permutation, Rational};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for slice_harmonic::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

fn rational(text: &str) -> PyResult<Rational> {
    parse_rational(text).py()
}

fn text(r: &Rational) -> String {
    format_rational(r)
}

/// Exact multilinear polynomial over the rationals.
#[pyclass(
    name = "Poly",
    module = "slice_harmonic_py",
    frozen,
    skip_from_py_object
)]
#[derive(Clone)]
pub struct Poly {
    inner: MultilinearPoly,
}

impl From<MultilinearPoly> for Poly {
    fn from(inner: MultilinearPoly) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl Poly {
    /// `terms` pairs 1-based variable lists with rational coefficients.
    #[new]
    #[pyo3(signature = (n, terms = Vec::new()))]
    fn new(n: usize, terms: Vec<(Vec<usize>, String)>) -> PyResult<Self> {
        let mut f = MultilinearPoly::zero(n).py()?;
        for (vars, c) in terms {
            let m = MultilinearPoly::monomial(n, &vars, rational(&c)?).py()?;
            f = f.add(&m).py()?;
        }
        Ok(f.into())
    }

    /// Product of the first `d` disjoint differences `(x1 - x2)(x3 - x4)⋯`.
    #[staticmethod]
    fn basic(n: usize, d: usize) -> PyResult<Self> {
        Ok(MultilinearPoly::basic(n, d).py()?.into())
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(MultilinearPoly::from_json(text).py()?.into())
    }

    #[staticmethod]
    fn parse(n: usize, text: &str) -> PyResult<Self> {
        Ok(MultilinearPoly::parse_text(n, text).py()?.into())
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __str__(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!("Poly({}, {:?})", self.inner.n(), self.inner.to_text())
    }

    fn __eq__(&self, other: PyRef<'_, Poly>) -> bool {
        self.inner == other.inner
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    /// `None` for the zero polynomial.
    #[getter]
    fn degree(&self) -> Option<usize> {
        self.inner.degree()
    }

    /// `(vars, coefficient)` pairs in canonical order.
    fn terms(&self) -> Vec<(Vec<usize>, String)> {
        self.inner
            .canonical_order()
            .into_iter()
            .map(|m| {
                let vars = (0..64).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect();
                (vars, text(&self.inner.coeff(m)))
            })
            .collect()
    }

    fn is_harmonic(&self) -> bool {
        self.inner.is_harmonic()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Value at the 0/1 vector `x`.
    fn evaluate(&self, x: Vec<bool>) -> PyResult<String> {
        let point = slice_harmonic::CubePoint::from_bits(&x).py()?;
        Ok(text(&self.inner.evaluate(&point).py()?))
    }

    fn __add__(&self, other: PyRef<'_, Poly>) -> PyResult<Self> {
        Ok(self.inner.add(&other.inner).py()?.into())
    }

    fn __sub__(&self, other: PyRef<'_, Poly>) -> PyResult<Self> {
        Ok(self.inner.sub(&other.inner).py()?.into())
    }

    /// Product reduced with `x_i² = x_i`.
    fn __mul__(&self, other: PyRef<'_, Poly>) -> PyResult<Self> {
        Ok(self.inner.multiply(&other.inner, true).py()?.into())
    }

    fn scale(&self, c: &str) -> PyResult<Self> {
        Ok(self.inner.scale(&rational(c)?).into())
    }

    /// `Δ = Σ ∂/∂x_i`.
    fn lower_delta(&self) -> Self {
        self.inner.lower_delta().into()
    }

    /// The adjoint of `Δ`.
    fn raise_delta(&self) -> Self {
        self.inner.raise_delta().into()
    }

    fn homogeneous_part(&self, d: usize) -> Self {
        self.inner.homogeneous_part(d).into()
    }

    /// Relabels `x_i` as `x_{images[i]}` (0-based images).
    fn permute(&self, images: Vec<usize>) -> PyResult<Self> {
        let pi = Permutation::new(images).py()?;
        Ok(self.inner.permute(&pi).py()?.into())
    }
}

/// Exchangeable measure on `{0,1}^n`.
#[pyclass(
    name = "Measure",
    module = "slice_harmonic_py",
    frozen,
    skip_from_py_object
)]
#[derive(Clone)]
pub struct Measure {
    inner: ExchangeableMeasure,
}

#[pymethods]
impl Measure {
    /// Uniform on the slice of weight `k`.
    #[staticmethod]
    fn slice(n: usize, k: usize) -> PyResult<Self> {
        Ok(Self {
            inner: ExchangeableMeasure::slice_uniform(n, k).py()?,
        })
    }

    /// Product of Bernoulli(`p`).
    #[staticmethod]
    fn cube(n: usize, p: &str) -> PyResult<Self> {
        Ok(Self {
            inner: ExchangeableMeasure::product_bernoulli(n, rational(p)?).py()?,
        })
    }

    /// Probability of each Hamming weight `0..=n`; must sum to 1.
    #[staticmethod]
    fn levels(n: usize, weights: Vec<String>) -> PyResult<Self> {
        let weights = weights
            .iter()
            .map(|w| rational(w))
            .collect::<PyResult<_>>()?;
        Ok(Self {
            inner: ExchangeableMeasure::level_weights(n, weights).py()?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    /// `E[x_1 ⋯ x_d]`.
    fn moment(&self, d: usize) -> PyResult<String> {
        Ok(text(&self.inner.moment(d).py()?))
    }

    fn __repr__(&self) -> String {
        format!("Measure({:?})", self.inner.kind())
    }
}

#[pyfunction]
fn inner_product(
    f: PyRef<'_, Poly>,
    g: PyRef<'_, Poly>,
    measure: PyRef<'_, Measure>,
) -> PyResult<String> {
    Ok(text(
        &measures::inner_product(&f.inner, &g.inner, &measure.inner).py()?,
    ))
}

#[pyfunction]
fn norm_sq(f: PyRef<'_, Poly>, measure: PyRef<'_, Measure>) -> PyResult<String> {
    Ok(text(&measures::norm_sq(&f.inner, &measure.inner).py()?))
}

/// `‖(x1 - x2)⋯(x_{2d-1} - x_{2d})‖²`.
#[pyfunction]
fn basic_norm(measure: PyRef<'_, Measure>, d: usize) -> PyResult<String> {
    Ok(text(&measures::basic_norm(&measure.inner, d).py()?))
}

/// `(n·V, ½Σ‖f - f^(ij)‖², d(n-d+1)·V)` for harmonic `f`.
#[pyfunction]
fn poincare_bounds(
    f: PyRef<'_, Poly>,
    measure: PyRef<'_, Measure>,
) -> PyResult<(String, String, String)> {
    let b = measures::poincare_bounds(&f.inner, &measure.inner).py()?;
    Ok((text(&b.lhs), text(&b.mid), text(&b.rhs)))
}

/// The harmonic polynomial of degree ≤ min(k, n-k) agreeing with `f` on
/// slice `k`.
#[pyfunction]
fn harmonic_projection(f: PyRef<'_, Poly>, k: usize) -> PyResult<Poly> {
    let slice = SliceSpec::new(f.inner.n(), k).py()?;
    Ok(harmonic::harmonic_projection(&f.inner, slice).py()?.into())
}

/// Harmonic interpolant of `values`, a map from slice-point bitmasks to
/// rationals.
#[pyfunction]
fn project_values(n: usize, k: usize, values: BTreeMap<u64, String>) -> PyResult<Poly> {
    let slice = SliceSpec::new(n, k).py()?;
    let values = values
        .into_iter()
        .map(|(m, v)| Ok((m, rational(&v)?)))
        .collect::<PyResult<_>>()?;
    let v = SliceFunction::new(slice, values).py()?;
    Ok(harmonic::project_values(&v).py()?.into())
}

/// `(B, χ_B)` for every admissible `B` of size `d`.
#[pyfunction]
fn gt_basis(n: usize, d: usize) -> PyResult<Vec<(Vec<usize>, Poly)>> {
    Ok(gt::gt_basis(n, d)
        .py()?
        .iter()
        .map(|e| (e.set.elements().to_vec(), e.poly.clone().into()))
        .collect())
}

/// Harmonic `f_0, …, f_d` with `f = Σ f_i S^i`, or powers of the
/// standardized sum when `p` is given.
#[pyfunction]
#[pyo3(signature = (f, p = None))]
fn blekherman_expand(f: PyRef<'_, Poly>, p: Option<&str>) -> PyResult<Vec<Poly>> {
    let basis = match p {
        Some(p) => ExpansionBasis::Standardized { p: rational(p)? },
        None => ExpansionBasis::RawSum,
    };
    let e = blekherman::blekherman_expand(&f.inner, basis).py()?;
    Ok(e.coeffs().iter().cloned().map(Poly::from).collect())
}

/// Exact inverse of the Vandermonde matrix on `nodes`.
#[pyfunction]
fn turner_inverse(nodes: Vec<String>) -> PyResult<Vec<Vec<String>>> {
    let nodes = nodes
        .iter()
        .map(|x| rational(x))
        .collect::<PyResult<Vec<_>>>()?;
    let inv = blekherman::turner_inverse(&nodes).py()?;
    Ok(inv
        .iter()
        .map(|row| row.iter().map(text).collect())
        .collect())
}

/// `(value, probability)` pairs of `f` under the slice `k` or the cube `p`.
#[pyfunction]
#[pyo3(signature = (f, k = None, p = None))]
fn exact_distribution(
    f: PyRef<'_, Poly>,
    k: Option<usize>,
    p: Option<&str>,
) -> PyResult<Vec<(String, String)>> {
    let domain = match (k, p) {
        (Some(k), None) => Domain::Slice { k },
        (None, Some(p)) => Domain::Cube { p: rational(p)? },
        _ => return Err(PyValueError::new_err("give exactly one of k and p")),
    };
    let pmf = coupling::exact_distribution(&f.inner, &domain).py()?;
    Ok(pmf
        .support()
        .iter()
        .zip(pmf.probs())
        .map(|(v, q)| (text(v), text(q)))
        .collect())
}

fn float_pmf(pairs: Vec<(f64, f64)>) -> PyResult<Pmf<f64>> {
    let (support, probs) = pairs.into_iter().unzip();
    Pmf::<f64>::new(support, probs).py()
}

/// Lévy distance between two finite distributions given as
/// `(value, probability)` pairs.
#[pyfunction]
fn levy_distance(a: Vec<(f64, f64)>, b: Vec<(f64, f64)>) -> PyResult<f64> {
    Ok(coupling::levy_distance(&float_pmf(a)?, &float_pmf(b)?))
}

/// Total variation between the first `m` coordinates under `ν_k` and `μ_p`.
#[pyfunction]
fn projected_tv(n: usize, k: usize, p: &str, m: usize) -> PyResult<String> {
    Ok(text(&coupling::projected_tv(n, k, &rational(p)?, m).py()?))
}

/// Total influence under `μ_p` of the Boolean function with truth table
/// `table` (indexed by bitmask).
#[pyfunction]
fn total_influence(n: usize, table: Vec<bool>, p: &str) -> PyResult<String> {
    let f = BooleanFunction::from_table(n, table).py()?;
    Ok(text(&coupling::total_influence(&f, &rational(p)?).py()?))
}

/// Values of `f` at `levels` along `samples` random chains.
#[pyfunction]
#[pyo3(signature = (f, levels, p, samples, seed = 0, threads = 1))]
fn empirical_profile(
    f: PyRef<'_, Poly>,
    levels: Vec<usize>,
    p: &str,
    samples: usize,
    seed: u64,
    threads: usize,
) -> PyResult<Vec<Vec<f64>>> {
    let system = blekherman::system_stats(&levels, &rational(p)?, f.inner.n()).py()?;
    let profile = coupling::empirical_profile(&f.inner, &system, samples, seed, threads).py()?;
    Ok(profile.rows)
}

#[pymodule]
fn slice_harmonic_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Poly>()?;
    m.add_class::<Measure>()?;
    m.add_function(wrap_pyfunction!(inner_product, m)?)?;
    m.add_function(wrap_pyfunction!(norm_sq, m)?)?;
    m.add_function(wrap_pyfunction!(basic_norm, m)?)?;
    m.add_function(wrap_pyfunction!(poincare_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(harmonic_projection, m)?)?;
    m.add_function(wrap_pyfunction!(project_values, m)?)?;
    m.add_function(wrap_pyfunction!(gt_basis, m)?)?;
    m.add_function(wrap_pyfunction!(blekherman_expand, m)?)?;
    m.add_function(wrap_pyfunction!(turner_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(exact_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(levy_distance, m)?)?;
    m.add_function(wrap_pyfunction!(projected_tv, m)?)?;
    m.add_function(wrap_pyfunction!(total_influence, m)?)?;
    m.add_function(wrap_pyfunction!(empirical_profile, m)?)?;
    Ok(())
}
