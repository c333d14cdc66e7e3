//! Deformation data `(Q, Q_0, ..., Q_k, w)` over an affine toric variety and
//! the enlarged cone in `N + Z^k` they induce.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, RationalVector};
use crate::polyhedron::{Inequality, Polyhedron};

/// A candidate deformation datum. Construction checks only the structural
/// preconditions; the defining conditions are checked by [`validate_datum`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationDatum {
    sigma: Cone,
    summands: Vec<Polyhedron>,
    q: Polyhedron,
    claimed_q: Option<Polyhedron>,
    w: LatticeVector,
    boundary: bool,
}

impl DeformationDatum {
    /// `summands` is `[Q_0, Q_1, ..., Q_k]` with `k >= 1`.
    pub fn new(
        sigma: Cone,
        summands: Vec<Polyhedron>,
        w: LatticeVector,
        boundary: bool,
    ) -> Result<Self> {
        let n = sigma.rank();
        if !sigma.is_strongly_convex() {
            return Err(Error::NotStronglyConvex);
        }
        if !sigma.is_full_dimensional() {
            return Err(Error::NotFullDimensional {
                dim: sigma.dimension(),
                rank: n,
            });
        }
        if w.rank() != n {
            return Err(Error::RankMismatch {
                expected: n,
                found: w.rank(),
            });
        }
        if summands.len() < 2 {
            return Err(Error::NoDeformationSummands);
        }
        let mut q = summands[0].clone();
        for s in &summands {
            if s.rank() != n {
                return Err(Error::RankMismatch {
                    expected: n,
                    found: s.rank(),
                });
            }
            if s.is_empty() {
                return Err(Error::EmptyPolyhedron);
            }
        }
        for s in &summands[1..] {
            q = q.minkowski_sum(s)?;
        }
        Ok(Self {
            sigma,
            summands,
            q,
            claimed_q: None,
            w,
            boundary,
        })
    }

    /// Records an explicitly stated `Q`, compared against the sum in condition (iii).
    pub fn with_claimed_sum(mut self, q: Polyhedron) -> Result<Self> {
        if q.rank() != self.n() {
            return Err(Error::RankMismatch {
                expected: self.n(),
                found: q.rank(),
            });
        }
        self.claimed_q = Some(q);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.sigma.rank()
    }

    pub fn k(&self) -> usize {
        self.summands.len() - 1
    }

    pub fn sigma(&self) -> &Cone {
        &self.sigma
    }

    pub fn summands(&self) -> &[Polyhedron] {
        &self.summands
    }

    /// The Minkowski sum of the summands.
    pub fn q(&self) -> &Polyhedron {
        &self.q
    }

    pub fn claimed_q(&self) -> Option<&Polyhedron> {
        self.claimed_q.as_ref()
    }

    pub fn w(&self) -> &LatticeVector {
        &self.w
    }

    pub fn is_boundary(&self) -> bool {
        self.boundary
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// `Q` lies in `sigma`.
    InSigma,
    /// `0` is not in `Q`.
    AvoidsOrigin,
    /// `Q` is the Minkowski sum of the summands.
    IsSum,
    /// Vertices of `Q` split with at most one non-lattice summand vertex.
    VertexSplitting,
    /// `Q_1, ..., Q_k` are lattice polyhedra (boundary data only).
    LatticeSummands,
    /// `min_Q w` exists and is at least `-1`.
    MinimumBound,
    /// Vertices of `sigma cap {w = -1}` lie in `R_{>0} Q`.
    SliceCovered,
}

impl Condition {
    pub fn label(self) -> &'static str {
        match self {
            Condition::InSigma => "(i)",
            Condition::AvoidsOrigin => "(ii)",
            Condition::IsSum => "(iii)",
            Condition::VertexSplitting => "(iv')",
            Condition::LatticeSummands => "(iv)",
            Condition::MinimumBound => "(v)",
            Condition::SliceCovered => "(vi)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionResult {
    pub condition: Condition,
    pub passed: bool,
    pub witness: Option<String>,
}

impl fmt::Display for ConditionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            write!(f, "{} passed", self.condition.label())
        } else {
            write!(
                f,
                "{} failed: {}",
                self.condition.label(),
                self.witness.as_deref().unwrap_or("?")
            )
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub results: Vec<ConditionResult>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn first_failure(&self) -> Option<&ConditionResult> {
        self.results.iter().find(|r| !r.passed)
    }

    pub fn get(&self, condition: Condition) -> Option<&ConditionResult> {
        self.results.iter().find(|r| r.condition == condition)
    }

    pub fn into_result(self) -> Result<()> {
        match self.first_failure() {
            Some(r) => Err(Error::InvalidDatum(r.to_string())),
            None => Ok(()),
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.results.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

fn result(condition: Condition, witness: Option<String>) -> ConditionResult {
    ConditionResult {
        condition,
        passed: witness.is_none(),
        witness,
    }
}

/// Checks every defining condition and reports a witness for each failure.
pub fn validate_datum(d: &DeformationDatum) -> ValidationReport {
    let mut results = vec![
        result(Condition::InSigma, check_in_sigma(d)),
        result(Condition::AvoidsOrigin, check_origin(d)),
        result(Condition::IsSum, check_sum(d)),
        result(Condition::VertexSplitting, check_vertex_splitting(d)),
    ];
    if d.boundary {
        results.push(result(
            Condition::LatticeSummands,
            check_lattice_summands(d),
        ));
    }
    results.push(result(Condition::MinimumBound, check_minimum(d)));
    results.push(result(Condition::SliceCovered, check_slice(d)));
    ValidationReport { results }
}

fn check_in_sigma(d: &DeformationDatum) -> Option<String> {
    if let Some(v) =
        d.q.vertices()
            .iter()
            .find(|v| !d.sigma.contains_rational(v))
    {
        return Some(format!("vertex {v} of Q is outside sigma"));
    }
    d.q.rays()
        .iter()
        .find(|r| !d.sigma.contains(r))
        .map(|r| format!("recession ray {r} of Q is outside sigma"))
}

fn check_origin(d: &DeformationDatum) -> Option<String> {
    if d.q.contains(&RationalVector::zero(d.n())) {
        Some("0 ∈ Q".to_string())
    } else {
        None
    }
}

fn check_sum(d: &DeformationDatum) -> Option<String> {
    match &d.claimed_q {
        Some(claimed) if claimed != &d.q => {
            Some(format!("stated Q {claimed} differs from the sum {}", d.q))
        }
        _ => None,
    }
}

fn check_lattice_summands(d: &DeformationDatum) -> Option<String> {
    for (i, s) in d.summands.iter().enumerate().skip(1) {
        if let Some(v) = s.vertices().iter().find(|v| !v.is_integral()) {
            return Some(format!("Q{i} has non-lattice vertex {v}"));
        }
    }
    None
}

fn check_minimum(d: &DeformationDatum) -> Option<String> {
    match d.q.min_functional(&d.w) {
        Err(Error::UnboundedBelow { ray }) => {
            Some(format!("w is unbounded below on Q along {ray}"))
        }
        Err(e) => Some(e.to_string()),
        Ok((m, _, v)) if m < -BigRational::one() => Some(format!("min_Q w = {m} < -1 at {v}")),
        Ok(_) => None,
    }
}

fn check_slice(d: &DeformationDatum) -> Option<String> {
    let slice = match sigma_slice(&d.sigma, &d.w) {
        Ok(s) => s,
        Err(e) => return Some(e.to_string()),
    };
    slice
        .vertices()
        .iter()
        .find(|v| !d.q.membership_scaling(v))
        .map(|v| format!("vertex {v} of sigma ∩ {{w = -1}} is not in R+ Q"))
}

/// `sigma cap {<w, x> = -1}`.
pub fn sigma_slice(sigma: &Cone, w: &LatticeVector) -> Result<Polyhedron> {
    let zero = BigRational::zero();
    let ineqs: Vec<Inequality> = sigma
        .facets()
        .iter()
        .map(|f| Inequality::new(f.clone(), zero.clone()))
        .collect();
    let mut eqs: Vec<Inequality> = sigma
        .equations()
        .iter()
        .map(|e| Inequality::new(e.clone(), zero.clone()))
        .collect();
    eqs.push(Inequality::new(w.clone(), BigRational::one()));
    Polyhedron::from_constraints(sigma.rank(), &ineqs, &eqs)
}

fn check_vertex_splitting(d: &DeformationDatum) -> Option<String> {
    let n = d.n();
    let verts: Vec<&[RationalVector]> = d.summands.iter().map(Polyhedron::vertices).collect();
    // Coordinate-wise bounds for the sum of summands i.. .
    let mut lo = vec![vec![BigRational::zero(); n]; verts.len() + 1];
    let mut hi = vec![vec![BigRational::zero(); n]; verts.len() + 1];
    for i in (0..verts.len()).rev() {
        for c in 0..n {
            let min = verts[i]
                .iter()
                .map(|v| &v.0[c])
                .min()
                .expect("non-empty summand");
            let max = verts[i]
                .iter()
                .map(|v| &v.0[c])
                .max()
                .expect("non-empty summand");
            lo[i][c] = &lo[i + 1][c] + min;
            hi[i][c] = &hi[i + 1][c] + max;
        }
    }

    fn search(
        i: usize,
        partial: &RationalVector,
        non_lattice: usize,
        target: &RationalVector,
        verts: &[&[RationalVector]],
        lo: &[Vec<BigRational>],
        hi: &[Vec<BigRational>],
    ) -> bool {
        for c in 0..target.rank() {
            if &partial.0[c] + &lo[i][c] > target.0[c] || &partial.0[c] + &hi[i][c] < target.0[c] {
                return false;
            }
        }
        if i == verts.len() {
            return partial == target;
        }
        verts[i].iter().any(|v| {
            let extra = usize::from(!v.is_integral());
            non_lattice + extra <= 1
                && search(
                    i + 1,
                    &(partial + v),
                    non_lattice + extra,
                    target,
                    verts,
                    lo,
                    hi,
                )
        })
    }

    d.q.vertices()
        .iter()
        .find(|v| !search(0, &RationalVector::zero(n), 0, v, &verts, &lo, &hi))
        .map(|v| format!("vertex {v} of Q has no splitting with at most one non-lattice part"))
}

/// Where a generator of the enlarged cone came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RayOrigin {
    SigmaRay(LatticeVector),
    /// Vertex `q` of `Q_0`, lifted to `q - e_1 - ... - e_k`.
    BaseVertex(RationalVector),
    /// Vertex `q` of `Q_i`, lifted to `q + e_i`.
    SummandVertex {
        index: usize,
        vertex: RationalVector,
    },
    /// Recession ray of a summand, lifted at height 0.
    Recession {
        index: usize,
        ray: LatticeVector,
    },
}

impl fmt::Display for RayOrigin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RayOrigin::SigmaRay(r) => write!(f, "sigma ray {r}"),
            RayOrigin::BaseVertex(v) => write!(f, "Q0 vertex {v}"),
            RayOrigin::SummandVertex { index, vertex } => write!(f, "Q{index} vertex {vertex}"),
            RayOrigin::Recession { index, ray } => write!(f, "Q{index} recession ray {ray}"),
        }
    }
}

/// A ray of the enlarged cone with its pairings against `e_1*, ..., e_k*`
/// and against the shifted character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TildeRay {
    pub ray: LatticeVector,
    pub origins: Vec<RayOrigin>,
    pub e_pairings: Vec<BigInt>,
    pub w_pairing: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TildeData {
    pub n: usize,
    pub k: usize,
    pub sigma_tilde: Cone,
    /// One entry per ray of `sigma_tilde`, in its canonical order.
    pub rays: Vec<TildeRay>,
    pub w_tilde: LatticeVector,
    /// Generators that turned out not to be extreme.
    pub dropped: Vec<(LatticeVector, RayOrigin)>,
}

impl TildeData {
    /// Assembles tilde data directly from generators; used for hand-built and
    /// corrupted inputs.
    pub fn from_generators(
        n: usize,
        k: usize,
        generators: &[(LatticeVector, RayOrigin)],
        w_tilde: LatticeVector,
    ) -> Result<Self> {
        let gens: Vec<LatticeVector> = generators.iter().map(|(g, _)| g.clone()).collect();
        let sigma_tilde = Cone::from_generators(n + k, &gens)?;
        if w_tilde.rank() != n + k {
            return Err(Error::RankMismatch {
                expected: n + k,
                found: w_tilde.rank(),
            });
        }
        let mut rays: Vec<TildeRay> = sigma_tilde
            .rays()
            .iter()
            .map(|r| TildeRay {
                ray: r.clone(),
                origins: Vec::new(),
                e_pairings: r.0[n..].to_vec(),
                w_pairing: w_tilde.dot(r),
            })
            .collect();
        let mut dropped = Vec::new();
        for (g, origin) in generators {
            let Ok(p) = g.primitive() else { continue };
            match rays.iter_mut().find(|r| r.ray == p) {
                Some(r) => r.origins.push(origin.clone()),
                None => dropped.push((p, origin.clone())),
            }
        }
        Ok(Self {
            n,
            k,
            sigma_tilde,
            rays,
            w_tilde,
            dropped,
        })
    }

    pub fn ray_vectors(&self) -> Vec<LatticeVector> {
        self.rays.iter().map(|r| r.ray.clone()).collect()
    }

    /// The same data with one ray removed (negative controls).
    pub fn without_ray(&self, ray: &LatticeVector) -> Result<Self> {
        let gens: Vec<(LatticeVector, RayOrigin)> = self
            .rays
            .iter()
            .filter(|r| &r.ray != ray)
            .map(|r| {
                (
                    r.ray.clone(),
                    r.origins
                        .first()
                        .cloned()
                        .unwrap_or(RayOrigin::SigmaRay(r.ray.clone())),
                )
            })
            .collect();
        Self::from_generators(self.n, self.k, &gens, self.w_tilde.clone())
    }
}

/// Builds the enlarged cone and shifted character of a valid datum.
pub fn build_tilde(d: &DeformationDatum) -> Result<TildeData> {
    validate_datum(d).into_result()?;
    build_tilde_unchecked(d)
}

pub(crate) fn build_tilde_unchecked(d: &DeformationDatum) -> Result<TildeData> {
    let (n, k) = (d.n(), d.k());
    let mut gens: Vec<(LatticeVector, RayOrigin)> = Vec::new();
    let zeros = vec![BigInt::zero(); k];
    for r in d.sigma.rays() {
        gens.push((r.extended(&zeros), RayOrigin::SigmaRay(r.clone())));
    }
    for v in d.summands[0].vertices() {
        let tail = vec![-BigRational::one(); k];
        let lifted = v.extended(&tail);
        gens.push((
            lifted.primitive_direction()?,
            RayOrigin::BaseVertex(v.clone()),
        ));
    }
    for (i, s) in d.summands.iter().enumerate().skip(1) {
        for v in s.vertices() {
            let mut tail = vec![BigRational::zero(); k];
            tail[i - 1] = BigRational::one();
            let lifted = v.extended(&tail);
            gens.push((
                lifted.primitive_direction()?,
                RayOrigin::SummandVertex {
                    index: i,
                    vertex: v.clone(),
                },
            ));
        }
    }
    for (i, s) in d.summands.iter().enumerate() {
        for r in s.rays() {
            gens.push((
                r.extended(&zeros),
                RayOrigin::Recession {
                    index: i,
                    ray: r.clone(),
                },
            ));
        }
    }

    let mut w_tilde = d.w.0.clone();
    for s in &d.summands[1..] {
        let (_, fl, _) = s.min_functional(&d.w)?;
        w_tilde.push(-fl);
    }
    TildeData::from_generators(n, k, &gens, LatticeVector(w_tilde))
}

/// Outcome of the structural checks on the enlarged cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TildeStructureReport {
    pub strongly_convex: bool,
    pub dimension: usize,
    pub expected_dimension: usize,
    pub slice_matches: bool,
}

impl TildeStructureReport {
    pub fn passed(&self) -> bool {
        self.strongly_convex && self.dimension == self.expected_dimension && self.slice_matches
    }

    /// Error naming the first failed clause.
    pub fn into_result(self) -> Result<Self> {
        if !self.strongly_convex {
            Err(Error::TildeStructure(
                "enlarged cone is not strongly convex".into(),
            ))
        } else if self.dimension != self.expected_dimension {
            Err(Error::TildeStructure(format!(
                "enlarged cone has dimension {} instead of {}",
                self.dimension, self.expected_dimension
            )))
        } else if !self.slice_matches {
            Err(Error::TildeStructure(
                "intersection with N_R differs from sigma".into(),
            ))
        } else {
            Ok(self)
        }
    }
}

/// Strong convexity, dimension `n + k`, and `sigma_tilde cap N_R = sigma`.
pub fn check_tilde_structure(t: &TildeData, d: &DeformationDatum) -> Result<TildeStructureReport> {
    let (n, k) = (t.n, t.k);
    let st = &t.sigma_tilde;
    let mut eqs: Vec<LatticeVector> = st.equations().to_vec();
    for i in 0..k {
        eqs.push(LatticeVector::unit(n + k, n + i));
    }
    let cut = Cone::from_inequalities(n + k, st.facets(), &eqs)?;
    let slice_matches = if cut.is_strongly_convex() {
        let projected: Vec<LatticeVector> = cut.rays().iter().map(|r| r.truncated(n)).collect();
        Cone::from_generators(n, &projected)? == *d.sigma()
    } else {
        false
    };
    Ok(TildeStructureReport {
        strongly_convex: st.is_strongly_convex(),
        dimension: st.dimension(),
        expected_dimension: n + k,
        slice_matches,
    })
}

/// Compares `floor(min_Q u)` with the sum of `floor(min_{Q_i} u)`.
pub fn floor_min_identity(d: &DeformationDatum, u: &LatticeVector) -> Result<bool> {
    let (lhs, rhs) = floor_min_sides(d, u)?;
    Ok(lhs == rhs)
}

/// Both sides `(floor(min_Q u), sum_i floor(min_{Q_i} u))`.
pub fn floor_min_sides(d: &DeformationDatum, u: &LatticeVector) -> Result<(BigInt, BigInt)> {
    if u.rank() != d.n() {
        return Err(Error::RankMismatch {
            expected: d.n(),
            found: u.rank(),
        });
    }
    if d.sigma.rays().iter().any(|r| u.dot(r).is_negative()) {
        return Err(Error::NotInDualCone { u: u.clone() });
    }
    let (_, whole, _) = d.q.min_functional(u)?;
    let mut parts = BigInt::zero();
    for s in &d.summands {
        parts += s.min_functional(u)?.1;
    }
    Ok((whole, parts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(c)
    }

    fn cusp(p: i64) -> DeformationDatum {
        let sigma =
            Cone::from_generators(3, &[lv(&[1, 1, 0]), lv(&[-1, 1, 0]), lv(&[0, 0, 1])]).unwrap();
        let q0 = Polyhedron::point(RationalVector::from_fracs(&[(-1, 2), (1, 2), (0, 1)]));
        let q1 = Polyhedron::from_i64_points(&[&[0, 0, 0], &[1, 0, 0]]).unwrap();
        DeformationDatum::new(sigma, vec![q0, q1], lv(&[0, -2, p]), true).unwrap()
    }

    fn toy() -> DeformationDatum {
        let sigma = Cone::from_generators(2, &[lv(&[1, 0]), lv(&[0, 1])]).unwrap();
        let q0 = Polyhedron::from_i64_points(&[&[0, 1]]).unwrap();
        let q1 = Polyhedron::from_i64_points(&[&[0, 0]]).unwrap();
        DeformationDatum::new(sigma, vec![q0, q1], lv(&[0, -1]), true).unwrap()
    }

    #[test]
    fn cusp_datum_is_valid() {
        for p in [1, 2, 3, 5] {
            let report = validate_datum(&cusp(p));
            assert!(report.is_valid(), "{report}");
            assert_eq!(report.results.len(), 7);
        }
    }

    #[test]
    fn origin_in_q_is_reported() {
        let d = cusp(3);
        let shifted =
            d.summands()[0].translate(&RationalVector::from_fracs(&[(1, 2), (-1, 2), (0, 1)]));
        let bad = DeformationDatum::new(
            d.sigma().clone(),
            vec![shifted, d.summands()[1].clone()],
            d.w().clone(),
            true,
        )
        .unwrap();
        let report = validate_datum(&bad);
        assert_eq!(
            report.get(Condition::AvoidsOrigin).unwrap().to_string(),
            "(ii) failed: 0 ∈ Q"
        );
    }

    #[test]
    fn toy_datum_is_valid() {
        assert!(validate_datum(&toy()).is_valid());
    }

    #[test]
    fn k_zero_rejected() {
        let d = toy();
        let err = DeformationDatum::new(
            d.sigma().clone(),
            vec![d.summands()[0].clone()],
            d.w().clone(),
            false,
        );
        assert_eq!(err, Err(Error::NoDeformationSummands));
    }

    #[test]
    fn cusp_tilde() {
        let t = build_tilde(&cusp(3)).unwrap();
        let mut expected = vec![
            lv(&[0, 0, 1, 0]),
            lv(&[-1, 1, 0, -2]),
            lv(&[0, 0, 0, 1]),
            lv(&[1, 0, 0, 1]),
        ];
        expected.sort();
        assert_eq!(t.ray_vectors(), expected);
        assert_eq!(t.w_tilde, lv(&[0, -2, 3, 0]));
        assert_eq!(t.dropped.len(), 2);
        let report = check_tilde_structure(&t, &cusp(3)).unwrap();
        assert!(report.passed());
        assert_eq!(report.dimension, 4);
    }

    #[test]
    fn toy_tilde() {
        let t = build_tilde(&toy()).unwrap();
        let mut expected = vec![lv(&[1, 0, 0]), lv(&[0, 1, -1]), lv(&[0, 0, 1])];
        expected.sort();
        assert_eq!(t.ray_vectors(), expected);
        assert_eq!(t.w_tilde, lv(&[0, -1, 0]));
        assert_eq!(check_tilde_structure(&t, &toy()).unwrap().dimension, 3);
    }

    #[test]
    fn corrupted_tilde_detected() {
        let d = cusp(3);
        let t = build_tilde(&d).unwrap();
        let bad = t.without_ray(&lv(&[0, 0, 0, 1])).unwrap();
        let report = check_tilde_structure(&bad, &d).unwrap();
        assert!(!report.passed());
        assert!(matches!(
            report.into_result(),
            Err(Error::TildeStructure(_))
        ));
    }

    #[test]
    fn floor_min_examples() {
        let d = cusp(3);
        assert_eq!(
            floor_min_sides(&d, &lv(&[0, 1, 0])).unwrap(),
            (BigInt::zero(), BigInt::zero())
        );
        assert!(floor_min_identity(&d, &lv(&[1, 1, 0])).unwrap());
        assert_eq!(
            floor_min_identity(&d, &lv(&[0, -1, 0])),
            Err(Error::NotInDualCone { u: lv(&[0, -1, 0]) })
        );
    }
}
