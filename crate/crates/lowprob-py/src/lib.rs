//! Python bindings for the exact lower-probability library.
//!
//! Spaces, subsets, and rationals cross the boundary as strings: subsets by
//! their comma-joined canonical names (the empty string is the empty set),
//! rationals as `"a/b"` or integer strings. Nothing is ever converted through
//! floats, so Python-side comparisons against `fractions.Fraction` are exact.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use lowprob::dempster::{MultivaluedMap, PointMap};
use lowprob::envelope;
use lowprob::family::{self, EnvelopeEvidence, FamilySpec};
use lowprob::lp::{Constraint, Relation};
use lowprob::rational::{format_rational, parse_rational};
use lowprob::reduction;
use lowprob::setfun::{ProbMeasure, SetFunction};
use lowprob::space::{FiniteSpace, Subset};
use lowprob::{dempster, setfun};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An ordered finite set of named outcomes.
#[pyclass(frozen, from_py_object, name = "Space")]
#[derive(Clone)]
struct PySpace {
    inner: FiniteSpace,
}

#[pymethods]
impl PySpace {
    #[new]
    fn new(labels: Vec<String>) -> PyResult<Self> {
        Ok(PySpace { inner: FiniteSpace::new(labels).map_err(value_error)? })
    }

    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn size(&self) -> usize {
        self.inner.size()
    }

    /// All subset names in ascending mask order.
    fn subsets(&self) -> Vec<String> {
        self.inner.subsets().map(|s| s.name()).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.size()
    }

    fn __repr__(&self) -> String {
        format!("Space({:?})", self.inner.labels())
    }
}

impl PySpace {
    fn subset(&self, name: &str) -> PyResult<Subset> {
        self.inner.subset_from_name(name).map_err(value_error)
    }
}

/// A total assignment of exact rationals to every subset of a space.
#[pyclass(frozen, from_py_object, name = "SetFunction")]
#[derive(Clone)]
struct PySetFunction {
    inner: SetFunction,
}

#[pymethods]
impl PySetFunction {
    /// Builds from a total table keyed by canonical subset names.
    #[new]
    fn new(space: PySpace, table: BTreeMap<String, String>) -> PyResult<Self> {
        if table.len() != space.inner.num_subsets() {
            return Err(value_error(format!(
                "{} entries for a space with {} subsets",
                table.len(),
                space.inner.num_subsets()
            )));
        }
        let values = space
            .inner
            .subsets()
            .map(|s| {
                let name = s.name();
                let raw = table
                    .get(&name)
                    .ok_or_else(|| value_error(format!("no value for subset {name:?}")))?;
                parse_rational(raw).map_err(value_error)
            })
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PySetFunction {
            inner: SetFunction::new(space.inner, values).map_err(value_error)?,
        })
    }

    fn value(&self, set: &str) -> PyResult<String> {
        let subset = self.inner.space().subset_from_name(set).map_err(value_error)?;
        Ok(format_rational(self.inner.value(&subset)))
    }

    fn table(&self) -> BTreeMap<String, String> {
        self.inner
            .iter()
            .map(|(s, v)| (s.name(), format_rational(v)))
            .collect()
    }

    fn space(&self) -> PySpace {
        PySpace { inner: self.inner.space().clone() }
    }

    fn is_normalized(&self) -> bool {
        self.inner.is_normalized()
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

/// A probability measure given by exact point masses.
#[pyclass(frozen, from_py_object, name = "Measure")]
#[derive(Clone)]
struct PyMeasure {
    inner: ProbMeasure,
}

#[pymethods]
impl PyMeasure {
    #[new]
    fn new(space: PySpace, masses: BTreeMap<String, String>) -> PyResult<Self> {
        for key in masses.keys() {
            if space.inner.index_of(key).is_none() {
                return Err(value_error(format!("{key:?} is not an element of the space")));
            }
        }
        let table = space
            .inner
            .labels()
            .iter()
            .map(|l| {
                let raw = masses
                    .get(l)
                    .ok_or_else(|| value_error(format!("no mass for element {l:?}")))?;
                parse_rational(raw).map_err(value_error)
            })
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyMeasure {
            inner: ProbMeasure::new(space.inner, table).map_err(value_error)?,
        })
    }

    /// The uniform measure.
    #[staticmethod]
    fn uniform(space: PySpace) -> PyMeasure {
        PyMeasure { inner: ProbMeasure::uniform(space.inner) }
    }

    fn mass(&self, label: &str) -> PyResult<String> {
        let i = self
            .inner
            .space()
            .index_of(label)
            .ok_or_else(|| value_error(format!("{label:?} is not an element of the space")))?;
        Ok(format_rational(self.inner.mass(i)))
    }

    fn measure_of(&self, set: &str) -> PyResult<String> {
        let subset = self.inner.space().subset_from_name(set).map_err(value_error)?;
        Ok(format_rational(&self.inner.measure_of(&subset).map_err(value_error)?))
    }

    fn table(&self) -> BTreeMap<String, String> {
        self.inner
            .space()
            .labels()
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), format_rational(self.inner.mass(i))))
            .collect()
    }

    fn to_set_function(&self) -> PySetFunction {
        PySetFunction { inner: self.inner.to_set_function() }
    }

    fn space(&self) -> PySpace {
        PySpace { inner: self.inner.space().clone() }
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

/// A multivalued mapping: each domain element gets a nonempty codomain subset.
#[pyclass(frozen, from_py_object, name = "Mapping")]
#[derive(Clone)]
struct PyMapping {
    inner: MultivaluedMap,
}

#[pymethods]
impl PyMapping {
    #[new]
    fn new(
        domain: PySpace,
        codomain: PySpace,
        images: BTreeMap<String, Vec<String>>,
    ) -> PyResult<Self> {
        for key in images.keys() {
            if domain.inner.index_of(key).is_none() {
                return Err(value_error(format!("{key:?} is not an element of the domain")));
            }
        }
        let image_subsets = domain
            .inner
            .labels()
            .iter()
            .map(|l| {
                let labels = images
                    .get(l)
                    .ok_or_else(|| value_error(format!("no image for element {l:?}")))?;
                codomain.inner.subset_from_labels(labels).map_err(value_error)
            })
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyMapping {
            inner: MultivaluedMap::new(domain.inner, codomain.inner, image_subsets)
                .map_err(value_error)?,
        })
    }

    fn image(&self, label: &str) -> PyResult<String> {
        let i = self
            .inner
            .domain()
            .index_of(label)
            .ok_or_else(|| value_error(format!("{label:?} is not an element of the domain")))?;
        Ok(self.inner.image(i).name())
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

/// Envelope evidence: a dominated bound on the Y-marginal plus one lower
/// envelope on X per Y-outcome. Validated on construction.
#[pyclass(frozen, from_py_object, name = "Evidence")]
#[derive(Clone)]
struct PyEvidence {
    inner: EnvelopeEvidence,
}

#[pymethods]
impl PyEvidence {
    #[new]
    fn new(ell: PySetFunction, lambdas: BTreeMap<String, PySetFunction>) -> PyResult<Self> {
        let y_space = ell.inner.space().clone();
        for key in lambdas.keys() {
            if y_space.index_of(key).is_none() {
                return Err(value_error(format!("{key:?} is not an element of the Y space")));
            }
        }
        let per_y = y_space
            .labels()
            .iter()
            .map(|l| {
                lambdas
                    .get(l)
                    .map(|f| f.inner.clone())
                    .ok_or_else(|| value_error(format!("no conditional bound for {l:?}")))
            })
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyEvidence {
            inner: EnvelopeEvidence::new(ell.inner, per_y).map_err(value_error)?,
        })
    }

    /// The reduced minimization over measures on Y.
    fn reduced_lower_value(&self, set: &str) -> PyResult<String> {
        let subset = self.inner.x_space().subset_from_name(set).map_err(value_error)?;
        Ok(format_rational(
            &reduction::reduced_lower_value(&self.inner, &subset).map_err(value_error)?,
        ))
    }

    fn __repr__(&self) -> String {
        format!("Evidence(y={:?}, x={:?})", self.inner.y_space(), self.inner.x_space())
    }
}

/// A polyhedral family of joint measures on X x Y.
#[pyclass(frozen, name = "Family")]
struct PyFamily {
    inner: FamilySpec,
}

#[pymethods]
impl PyFamily {
    /// Measures compatible with a marginal and a multivalued mapping.
    #[staticmethod]
    fn dempster(p: PyMeasure, mapping: PyMapping) -> PyResult<PyFamily> {
        Ok(PyFamily {
            inner: FamilySpec::dempster(p.inner, mapping.inner).map_err(value_error)?,
        })
    }

    /// Measures compatible with envelope evidence.
    #[staticmethod]
    fn envelope(evidence: PyEvidence) -> PyFamily {
        PyFamily { inner: FamilySpec::envelope_evidence(evidence.inner) }
    }

    /// Measures satisfying raw constraint rows `(coeffs, rel, rhs)` over
    /// `"x|y"` variables, with rel one of "<=", "=", ">=".
    #[staticmethod]
    fn polyhedral(
        x: PySpace,
        y: PySpace,
        rows: Vec<(BTreeMap<String, String>, String, String)>,
    ) -> PyResult<PyFamily> {
        let ny = y.inner.size();
        let width = x.inner.size() * ny;
        let constraints = rows
            .iter()
            .enumerate()
            .map(|(i, (coeffs, rel, rhs))| {
                let mut row = vec![lowprob::rat(0, 1); width];
                for (var, raw) in coeffs {
                    let (xl, yl) = var.split_once('|').ok_or_else(|| {
                        value_error(format!("row {i}: variable {var:?} is not \"x|y\""))
                    })?;
                    let xi = x.inner.index_of(xl).ok_or_else(|| {
                        value_error(format!("row {i}: {xl:?} is not an element of x"))
                    })?;
                    let yi = y.inner.index_of(yl).ok_or_else(|| {
                        value_error(format!("row {i}: {yl:?} is not an element of y"))
                    })?;
                    row[family::pair_index(xi, yi, ny)] =
                        parse_rational(raw).map_err(value_error)?;
                }
                let relation = match rel.as_str() {
                    "<=" => Relation::Le,
                    "=" => Relation::Eq,
                    ">=" => Relation::Ge,
                    other => return Err(value_error(format!("row {i}: bad relation {other:?}"))),
                };
                Ok(Constraint::new(row, relation, parse_rational(rhs).map_err(value_error)?))
            })
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyFamily {
            inner: FamilySpec::polyhedral(x.inner, y.inner, constraints).map_err(value_error)?,
        })
    }

    /// Exact minimum of the x-marginal of `set` over the family.
    fn lower_value(&self, set: &str) -> PyResult<String> {
        let subset = self
            .inner
            .x_space()
            .subset_from_name(set)
            .map_err(value_error)?;
        Ok(format_rational(
            &family::lower_value(&self.inner, &subset).map_err(value_error)?,
        ))
    }

    /// The induced lower probability on every subset of x.
    fn lower_function(&self) -> PyResult<PySetFunction> {
        Ok(PySetFunction {
            inner: family::lower_function(&self.inner).map_err(value_error)?,
        })
    }

    fn x_space(&self) -> PySpace {
        PySpace { inner: self.inner.x_space().clone() }
    }
}

#[pyfunction]
fn belief_from_mapping(p: PyMeasure, mapping: PyMapping) -> PyResult<PySetFunction> {
    Ok(PySetFunction {
        inner: dempster::belief_from_mapping(&p.inner, &mapping.inner).map_err(value_error)?,
    })
}

/// Pushforward of a measure under a point map given as label -> label.
#[pyfunction]
fn pushforward(
    p: PyMeasure,
    codomain: PySpace,
    targets: BTreeMap<String, String>,
    set: &str,
) -> PyResult<String> {
    let domain = p.inner.space().clone();
    let target_idx = domain
        .labels()
        .iter()
        .map(|l| {
            let tl = targets
                .get(l)
                .ok_or_else(|| value_error(format!("no target for element {l:?}")))?;
            codomain
                .inner
                .index_of(tl)
                .ok_or_else(|| value_error(format!("{tl:?} is not an element of the codomain")))
        })
        .collect::<PyResult<Vec<_>>>()?;
    let map = PointMap::new(domain, codomain.inner.clone(), target_idx).map_err(value_error)?;
    let subset = codomain.inner.subset_from_name(set).map_err(value_error)?;
    Ok(format_rational(
        &dempster::pushforward(&p.inner, &map, &subset).map_err(value_error)?,
    ))
}

#[pyfunction]
fn mobius(f: PySetFunction) -> PySetFunction {
    PySetFunction { inner: setfun::mobius(&f.inner) }
}

#[pyfunction]
fn from_mass(m: PySetFunction) -> PySetFunction {
    PySetFunction { inner: setfun::from_mass(&m.inner) }
}

#[pyfunction]
fn upper_from_lower(f: PySetFunction) -> PyResult<PySetFunction> {
    Ok(PySetFunction { inner: setfun::upper_from_lower(&f.inner).map_err(value_error)? })
}

#[pyfunction]
fn simple_support(space: PySpace, focal: &str) -> PyResult<PySetFunction> {
    let subset = space.subset(focal)?;
    Ok(PySetFunction {
        inner: dempster::simple_support(&space.inner, &subset).map_err(value_error)?,
    })
}

/// `(holds, witness)`: witness is the violating collection of subset names.
#[pyfunction]
fn is_r_monotone(f: PySetFunction, r: u32) -> PyResult<(bool, Option<Vec<String>>)> {
    let check = dempster::is_r_monotone(&f.inner, r).map_err(value_error)?;
    Ok((
        check.holds,
        check.witness.map(|sets| sets.iter().map(|s| s.name()).collect()),
    ))
}

#[pyfunction]
fn is_belief_function(f: PySetFunction) -> PyResult<bool> {
    dempster::is_belief_function(&f.inner).map_err(value_error)
}

/// `(holds, witness)`: witness is a violating disjoint pair of subset names.
#[pyfunction]
fn is_lower_probability(f: PySetFunction) -> PyResult<(bool, Option<(String, String)>)> {
    let check = envelope::is_lower_probability(&f.inner).map_err(value_error)?;
    Ok((check.holds, check.witness.map(|(a, b)| (a.name(), b.name()))))
}

/// A dominating measure's mass table, or None when nothing dominates.
#[pyfunction]
fn is_dominated(f: PySetFunction) -> PyResult<Option<BTreeMap<String, String>>> {
    let witness = envelope::is_dominated(&f.inner).map_err(value_error)?;
    Ok(witness.map(|q| {
        q.space()
            .labels()
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), format_rational(q.mass(i))))
            .collect()
    }))
}

#[pyfunction]
fn natural_envelope(f: PySetFunction) -> PyResult<PySetFunction> {
    Ok(PySetFunction { inner: envelope::natural_envelope(&f.inner).map_err(value_error)? })
}

/// `(set, value, envelope_value)` where the envelope strictly exceeds the
/// function.
type GapTriple = (String, String, String);

/// `(holds, gap)`: gap names the first subset where the natural envelope
/// strictly exceeds the function.
#[pyfunction]
fn is_lower_envelope(f: PySetFunction) -> PyResult<(bool, Option<GapTriple>)> {
    let check = envelope::is_lower_envelope(&f.inner).map_err(value_error)?;
    Ok((
        check.holds,
        check.gap.map(|g| {
            (
                g.subset.name(),
                format_rational(&g.lower_value),
                format_rational(&g.envelope_value),
            )
        }),
    ))
}

#[pyfunction]
fn upper_envelope_value(f: PySetFunction, set: &str) -> PyResult<String> {
    let subset = f.inner.space().subset_from_name(set).map_err(value_error)?;
    Ok(format_rational(
        &envelope::upper_envelope_value(&f.inner, &subset).map_err(value_error)?,
    ))
}

/// `sum_y p(y) * lambda_y(set)` with conditionals keyed by Y label.
#[pyfunction]
fn mixture_lower_value(
    p: PyMeasure,
    lambdas: BTreeMap<String, PySetFunction>,
    set: &str,
) -> PyResult<String> {
    let y_space = p.inner.space();
    let per_y = y_space
        .labels()
        .iter()
        .map(|l| {
            lambdas
                .get(l)
                .map(|f| f.inner.clone())
                .ok_or_else(|| value_error(format!("no conditional bound for {l:?}")))
        })
        .collect::<PyResult<Vec<_>>>()?;
    let x_space = per_y
        .first()
        .ok_or_else(|| value_error("empty conditional table"))?
        .space()
        .clone();
    let subset = x_space.subset_from_name(set).map_err(value_error)?;
    Ok(format_rational(
        &reduction::mixture_lower_value(&p.inner, &per_y, &subset).map_err(value_error)?,
    ))
}

/// `ell({y : image(y) subset of set})`; `ell` must be a lower envelope.
#[pyfunction]
fn support_lower_value(f: PySetFunction, mapping: PyMapping, set: &str) -> PyResult<String> {
    let subset = mapping
        .inner
        .codomain()
        .subset_from_name(set)
        .map_err(value_error)?;
    Ok(format_rational(
        &reduction::support_lower_value(&f.inner, &mapping.inner, &subset)
            .map_err(value_error)?,
    ))
}

#[pymodule]
fn lowprob_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PySpace>()?;
    m.add_class::<PySetFunction>()?;
    m.add_class::<PyMeasure>()?;
    m.add_class::<PyMapping>()?;
    m.add_class::<PyEvidence>()?;
    m.add_class::<PyFamily>()?;
    m.add_function(wrap_pyfunction!(belief_from_mapping, m)?)?;
    m.add_function(wrap_pyfunction!(pushforward, m)?)?;
    m.add_function(wrap_pyfunction!(mobius, m)?)?;
    m.add_function(wrap_pyfunction!(from_mass, m)?)?;
    m.add_function(wrap_pyfunction!(upper_from_lower, m)?)?;
    m.add_function(wrap_pyfunction!(simple_support, m)?)?;
    m.add_function(wrap_pyfunction!(is_r_monotone, m)?)?;
    m.add_function(wrap_pyfunction!(is_belief_function, m)?)?;
    m.add_function(wrap_pyfunction!(is_lower_probability, m)?)?;
    m.add_function(wrap_pyfunction!(is_dominated, m)?)?;
    m.add_function(wrap_pyfunction!(natural_envelope, m)?)?;
    m.add_function(wrap_pyfunction!(is_lower_envelope, m)?)?;
    m.add_function(wrap_pyfunction!(upper_envelope_value, m)?)?;
    m.add_function(wrap_pyfunction!(mixture_lower_value, m)?)?;
    m.add_function(wrap_pyfunction!(support_lower_value, m)?)?;
    Ok(())
}
