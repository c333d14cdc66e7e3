use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use toric_deform::cox::AliasTable;
use toric_deform::datum::check_tilde_structure;
use toric_deform::oracle::{self, Bound as PointBound};
use toric_deform::{
    build_tilde, mutate, mutation_family, specialize_fiber, validate_datum,
    validate_mutation_datum, Cone, DeformationDatum, Error, FanoPolytope, LatticeVector,
    MutationFamily, ParameterPoint, PolarizedToricVariety, Polyhedron, RationalVector, TildeData,
};
use toric_deform::{json, presets};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn lattice(v: Vec<BigInt>) -> LatticeVector {
    LatticeVector::new(v)
}

fn rational(v: Vec<BigRational>) -> RationalVector {
    RationalVector::new(v)
}

fn ints(v: &LatticeVector) -> Vec<BigInt> {
    v.0.clone()
}

fn fracs(v: &RationalVector) -> Vec<BigRational> {
    v.0.clone()
}

fn rank_of<T>(rows: &[Vec<T>], rank: Option<usize>) -> PyResult<usize> {
    rank.or_else(|| rows.first().map(Vec::len))
        .ok_or_else(|| PyValueError::new_err("rank is required when no vectors are given"))
}

/// A rational polyhedral cone given by generators.
#[pyclass(name = "Cone", frozen, module = "toric_deform")]
struct PyCone(Cone);

#[pymethods]
impl PyCone {
    #[new]
    #[pyo3(signature = (generators, rank=None))]
    fn new(generators: Vec<Vec<BigInt>>, rank: Option<usize>) -> PyResult<Self> {
        let n = rank_of(&generators, rank)?;
        let gens: Vec<LatticeVector> = generators.into_iter().map(lattice).collect();
        Cone::from_generators(n, &gens).map(Self).map_err(err)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    fn rays(&self) -> Vec<Vec<BigInt>> {
        self.0.rays().iter().map(ints).collect()
    }

    fn facets(&self) -> Vec<Vec<BigInt>> {
        self.0.facets().iter().map(ints).collect()
    }

    fn dual(&self) -> Self {
        Self(self.0.dual())
    }

    fn contains(&self, v: Vec<BigInt>) -> bool {
        self.0.contains(&lattice(v))
    }

    fn is_strongly_convex(&self) -> bool {
        self.0.is_strongly_convex()
    }

    /// Minimal generators among points of degree at most `bound`, and
    /// whether the bound is provably large enough.
    #[pyo3(signature = (bound=20))]
    fn hilbert_basis(&self, bound: u64) -> PyResult<(Vec<Vec<BigInt>>, bool)> {
        let hb = oracle::hilbert_basis(&self.0, &PointBound::Degree(bound)).map_err(err)?;
        Ok((hb.generators.iter().map(ints).collect(), hb.complete))
    }

    fn __repr__(&self) -> String {
        self.0.to_string()
    }
}

/// A pointed rational polyhedron: convex hull of points plus a cone of rays.
#[pyclass(name = "Polyhedron", frozen, eq, module = "toric_deform")]
#[derive(PartialEq)]
struct PyPolyhedron(Polyhedron);

#[pymethods]
impl PyPolyhedron {
    #[new]
    #[pyo3(signature = (points, rays=None, rank=None))]
    fn new(
        points: Vec<Vec<BigRational>>,
        rays: Option<Vec<Vec<BigInt>>>,
        rank: Option<usize>,
    ) -> PyResult<Self> {
        let n = rank_of(&points, rank)?;
        let pts: Vec<RationalVector> = points.into_iter().map(rational).collect();
        let rays: Vec<LatticeVector> = rays.unwrap_or_default().into_iter().map(lattice).collect();
        Polyhedron::convex_hull(n, &pts, &rays)
            .map(Self)
            .map_err(err)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    fn vertices(&self) -> Vec<Vec<BigRational>> {
        self.0.vertices().iter().map(fracs).collect()
    }

    fn rays(&self) -> Vec<Vec<BigInt>> {
        self.0.rays().iter().map(ints).collect()
    }

    fn is_bounded(&self) -> bool {
        self.0.is_bounded()
    }

    fn contains(&self, point: Vec<BigRational>) -> bool {
        self.0.contains(&rational(point))
    }

    fn lattice_points(&self) -> PyResult<Vec<Vec<BigInt>>> {
        Ok(self
            .0
            .lattice_points()
            .map_err(err)?
            .iter()
            .map(ints)
            .collect())
    }

    fn minkowski_sum(&self, other: &Self) -> PyResult<Self> {
        self.0.minkowski_sum(&other.0).map(Self).map_err(err)
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.minkowski_sum(other)
    }

    fn __repr__(&self) -> String {
        self.0.to_string()
    }
}

/// Binomials, trinomials and boundary monomial in named Cox variables.
#[pyclass(name = "Equations", frozen, get_all, module = "toric_deform")]
struct PyEquations {
    variables: Vec<String>,
    binomials: Vec<String>,
    trinomials: Vec<String>,
    monomial: Option<String>,
}

#[pyclass(name = "TildeData", frozen, module = "toric_deform")]
struct PyTilde {
    tilde: TildeData,
    boundary: bool,
}

#[pymethods]
impl PyTilde {
    #[getter]
    fn n(&self) -> usize {
        self.tilde.n
    }

    #[getter]
    fn k(&self) -> usize {
        self.tilde.k
    }

    fn rays(&self) -> Vec<Vec<BigInt>> {
        self.tilde.ray_vectors().iter().map(ints).collect()
    }

    fn w_tilde(&self) -> Vec<BigInt> {
        ints(&self.tilde.w_tilde)
    }

    /// `aliases` is a list of `(name, ray)` pairs.
    #[pyo3(signature = (aliases=None))]
    fn equations(&self, aliases: Option<Vec<(String, Vec<BigInt>)>>) -> PyResult<PyEquations> {
        let table =
            aliases.map(|a| AliasTable::new(a.into_iter().map(|(n, r)| (lattice(r), n)).collect()));
        let eq =
            presets::affine_equations(&self.tilde, self.boundary, table.as_ref()).map_err(err)?;
        let variables = eq
            .cox
            .print_order()
            .iter()
            .map(|&j| eq.cox.names()[j].clone())
            .collect();
        Ok(PyEquations {
            variables,
            binomials: eq.binomials,
            trinomials: eq.trinomials,
            monomial: eq.monomial,
        })
    }

    /// Failures of the bounded kernel and boundary checks, and pairs examined.
    #[pyo3(signature = (bound=12))]
    fn oracle(&self, bound: u64) -> PyResult<(usize, usize, usize)> {
        let dz = oracle::degree_zero_equality_check(&self.tilde, bound).map_err(err)?;
        let be = oracle::boundary_equality_check(&self.tilde, bound).map_err(err)?;
        Ok((dz.failures.len(), be.failures.len(), dz.checked))
    }
}

#[pyclass(name = "DeformationDatum", frozen, module = "toric_deform")]
struct PyDatum(DeformationDatum);

#[pymethods]
impl PyDatum {
    #[new]
    #[pyo3(signature = (sigma, summands, w, boundary=true))]
    fn new(
        sigma: &PyCone,
        summands: Vec<PyRef<'_, PyPolyhedron>>,
        w: Vec<BigInt>,
        boundary: bool,
    ) -> PyResult<Self> {
        let qs = summands.iter().map(|q| q.0.clone()).collect();
        DeformationDatum::new(sigma.0.clone(), qs, lattice(w), boundary)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        json::datum_from_json(&v).map(Self).map_err(err)
    }

    fn to_json(&self) -> String {
        json::datum_to_json(&self.0).to_string()
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k()
    }

    fn q(&self) -> PyPolyhedron {
        PyPolyhedron(self.0.q().clone())
    }

    /// One line per condition, e.g. `(ii) failed: 0 ∈ Q`.
    fn validate(&self) -> Vec<String> {
        validate_datum(&self.0)
            .results
            .iter()
            .map(ToString::to_string)
            .collect()
    }

    fn is_valid(&self) -> bool {
        validate_datum(&self.0).is_valid()
    }

    fn tilde(&self) -> PyResult<PyTilde> {
        let tilde = build_tilde(&self.0).map_err(err)?;
        check_tilde_structure(&tilde, &self.0)
            .map_err(err)?
            .into_result()
            .map_err(err)?;
        Ok(PyTilde {
            tilde,
            boundary: self.0.is_boundary(),
        })
    }
}

#[pyclass(name = "FanoPolytope", frozen, eq, module = "toric_deform")]
#[derive(PartialEq)]
struct PyFano(FanoPolytope);

#[pymethods]
impl PyFano {
    #[new]
    fn new(vertices: Vec<Vec<BigInt>>) -> PyResult<Self> {
        let n = rank_of(&vertices, None)?;
        let pts: Vec<RationalVector> = vertices
            .into_iter()
            .map(|v| lattice(v).to_rational())
            .collect();
        let p = Polyhedron::from_points(n, &pts).map_err(err)?;
        FanoPolytope::new(p).map(Self).map_err(err)
    }

    fn vertices(&self) -> Vec<Vec<BigInt>> {
        self.0.vertices().iter().map(ints).collect()
    }

    /// Mutation with weight vector `w` and factor `conv(factor)`.
    fn mutate(&self, w: Vec<BigInt>, factor: Vec<Vec<BigInt>>) -> PyResult<Self> {
        let d = self.datum(w, factor)?;
        mutate(&self.0, &d).map(Self).map_err(err)
    }

    fn family(&self, w: Vec<BigInt>, factor: Vec<Vec<BigInt>>) -> PyResult<PyFamily> {
        let d = self.datum(w, factor)?;
        mutation_family(&self.0, &d).map(PyFamily).map_err(err)
    }

    fn __repr__(&self) -> String {
        self.0.polytope().to_string()
    }
}

impl PyFano {
    fn datum(
        &self,
        w: Vec<BigInt>,
        factor: Vec<Vec<BigInt>>,
    ) -> PyResult<toric_deform::MutationDatum> {
        let n = self.0.rank();
        let pts: Vec<RationalVector> = factor
            .into_iter()
            .map(|v| lattice(v).to_rational())
            .collect();
        let f = Polyhedron::from_points(n, &pts).map_err(err)?;
        validate_mutation_datum(&self.0, &lattice(w), &f).map_err(err)
    }
}

#[pyclass(name = "Fiber", frozen, get_all, module = "toric_deform")]
struct PyFiber {
    point: String,
    kind: String,
    trinomial: String,
    monomial: String,
    matches_toric: Option<bool>,
    coprime: bool,
}

#[pyclass(name = "MutationFamily", frozen, module = "toric_deform")]
struct PyFamily(MutationFamily);

#[pymethods]
impl PyFamily {
    fn mutated(&self) -> PyFano {
        PyFano(self.0.p_prime.clone())
    }

    fn variables(&self) -> Vec<String> {
        self.0.variable_names()
    }

    /// Cox rays in variable order.
    fn rays(&self) -> Vec<Vec<BigInt>> {
        self.0
            .cox
            .print_order()
            .iter()
            .map(|&j| ints(&self.0.cox.rays()[j]))
            .collect()
    }

    fn weights(&self) -> Option<Vec<BigInt>> {
        self.0.weights.clone()
    }

    #[getter]
    fn trinomial(&self) -> String {
        self.0.format(&self.0.trinomial)
    }

    #[getter]
    fn monomial(&self) -> String {
        self.0.format(&self.0.monomial)
    }

    /// The fiber over a homogeneous point `"a:b:c"`.
    fn fiber(&self, point: &str) -> PyResult<PyFiber> {
        let p =
            ParameterPoint::new(json::parse_parameter_point(point).map_err(err)?).map_err(err)?;
        let r = specialize_fiber(&self.0, &p).map_err(err)?;
        Ok(PyFiber {
            point: r.point.to_string(),
            kind: format!("{:?}", r.kind),
            trinomial: self.0.format(&r.trinomial),
            monomial: self.0.format(&r.monomial),
            matches_toric: r.matches_toric,
            coprime: r.coprime,
        })
    }
}

#[pyclass(name = "PolarizedToricVariety", frozen, module = "toric_deform")]
struct PyPolarized(PolarizedToricVariety);

#[pymethods]
impl PyPolarized {
    /// The variety of the face fan of a polytope with 0 in its interior.
    #[staticmethod]
    fn from_polytope(p: &PyPolyhedron) -> PyResult<Self> {
        PolarizedToricVariety::from_polytope(&p.0)
            .map(Self)
            .map_err(err)
    }

    fn fan_rays(&self) -> Vec<Vec<BigInt>> {
        self.0.fan().rays.iter().map(ints).collect()
    }

    fn maximal_cones(&self) -> Vec<Vec<usize>> {
        self.0.fan().maximal_cones.clone()
    }

    /// Support function values on the fan rays.
    fn phi(&self) -> Vec<BigRational> {
        self.0.phi_values()
    }

    fn polytope_in_m(&self) -> PyPolyhedron {
        PyPolyhedron(self.0.polytope_in_m())
    }

    fn divisor_class(&self) -> &'static str {
        self.0.classify_divisor().name()
    }
}

/// Runs a named worked example; returns whether it passed and its report lines.
#[pyfunction]
#[pyo3(signature = (name, p=3, bound=12))]
fn verify_example(name: &str, p: i64, bound: u64) -> PyResult<(bool, Vec<String>)> {
    let r = presets::verify_example(name, p, bound).map_err(err)?;
    let mut lines = r.lines.clone();
    lines.extend(
        r.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("FAILED {}: {}", c.name, c.detail)),
    );
    Ok((r.passed(), lines))
}

#[pymodule]
#[pyo3(name = "toric_deform")]
fn toric_deform_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCone>()?;
    m.add_class::<PyPolyhedron>()?;
    m.add_class::<PyDatum>()?;
    m.add_class::<PyTilde>()?;
    m.add_class::<PyEquations>()?;
    m.add_class::<PyFano>()?;
    m.add_class::<PyFamily>()?;
    m.add_class::<PyFiber>()?;
    m.add_class::<PyPolarized>()?;
    m.add_function(wrap_pyfunction!(verify_example, m)?)?;
    m.add("PRESETS", presets::PRESET_NAMES.to_vec())?;
    Ok(())
}
