//! Rational polyhedra, handled as cones over `P x {1}`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cone::{double_description, Cone, Fan};
use crate::error::{Error, Result};
use crate::lattice::{floor, LatticeVector, RationalVector};

/// The halfspace `<normal, x> + offset >= 0` (or the hyperplane `= 0` when used
/// as an equation).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Inequality {
    pub normal: LatticeVector,
    pub offset: BigRational,
}

impl Inequality {
    pub fn new(normal: LatticeVector, offset: BigRational) -> Self {
        Self { normal, offset }
    }

    pub fn from_i64s(normal: &[i64], offset: i64) -> Self {
        Self {
            normal: LatticeVector::from_i64s(normal),
            offset: BigRational::from_integer(offset.into()),
        }
    }

    pub fn value(&self, x: &RationalVector) -> BigRational {
        self.normal.dot_rational(x) + &self.offset
    }

    pub fn value_lattice(&self, x: &LatticeVector) -> BigRational {
        BigRational::from_integer(self.normal.dot(x)) + &self.offset
    }

    /// Homogenised integer row `(L * normal, L * offset)`.
    fn homogeneous(&self) -> Vec<BigInt> {
        let d = self.offset.denom().clone();
        let mut row: Vec<BigInt> = self.normal.0.iter().map(|c| c * &d).collect();
        row.push(self.offset.numer().clone());
        row
    }

    /// From a homogeneous row `(a, b)`: normal made primitive, offset rescaled.
    fn from_homogeneous(row: &[BigInt]) -> Option<Self> {
        let n = row.len() - 1;
        let normal = LatticeVector(row[..n].to_vec());
        let g = normal.content();
        if g.is_zero() {
            return None;
        }
        Some(Self {
            normal: LatticeVector(normal.0.iter().map(|c| c / &g).collect()),
            offset: BigRational::new(row[n].clone(), g),
        })
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, x> + {} >= 0", self.normal, self.offset)
    }
}

/// A pointed rational polyhedron in `Q^rank`, stored canonically in both
/// representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polyhedron {
    rank: usize,
    vertices: Vec<RationalVector>,
    rays: Vec<LatticeVector>,
    inequalities: Vec<Inequality>,
    equations: Vec<Inequality>,
}

impl Polyhedron {
    /// The empty polyhedron; its inequality list is the witness `0 >= 1`.
    pub fn empty(rank: usize) -> Self {
        Self {
            rank,
            vertices: Vec::new(),
            rays: Vec::new(),
            inequalities: vec![Inequality::new(
                LatticeVector::zero(rank),
                -BigRational::one(),
            )],
            equations: Vec::new(),
        }
    }

    /// `conv(points) + cone(rays)`.
    pub fn convex_hull(
        rank: usize,
        points: &[RationalVector],
        rays: &[LatticeVector],
    ) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut gens = Vec::with_capacity(points.len() + rays.len());
        for p in points {
            if p.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: p.rank(),
                });
            }
            let (num, den) = p.clear_denominators();
            gens.push(num.extended(&[den]).primitive()?);
        }
        for r in rays {
            if r.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: r.rank(),
                });
            }
            if !r.is_zero() {
                gens.push(r.primitive()?.extended(&[BigInt::zero()]));
            }
        }
        let cone = Cone::from_generators(rank + 1, &gens)?;
        Self::from_homogenised_cone(rank, &cone)
    }

    pub fn from_points(rank: usize, points: &[RationalVector]) -> Result<Self> {
        Self::convex_hull(rank, points, &[])
    }

    /// Lattice polytope from integer points, e.g. `[[1,0],[0,1]]`.
    pub fn from_i64_points(points: &[&[i64]]) -> Result<Self> {
        let rank = points.first().map_or(0, |p| p.len());
        let pts: Vec<RationalVector> = points
            .iter()
            .map(|p| RationalVector::from_i64s(p))
            .collect();
        Self::convex_hull(rank, &pts, &[])
    }

    pub fn point(p: RationalVector) -> Self {
        let rank = p.rank();
        Self::convex_hull(rank, &[p], &[]).expect("single point")
    }

    /// `{x : <a, x> + b >= 0 for ineqs, = 0 for eqs}`; empty results are
    /// allowed, lines are not.
    pub fn from_constraints(rank: usize, ineqs: &[Inequality], eqs: &[Inequality]) -> Result<Self> {
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for c in ineqs.iter().chain(eqs) {
            if c.normal.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: c.normal.rank(),
                });
            }
        }
        for c in ineqs {
            rows.push(c.homogeneous());
        }
        for c in eqs {
            let row = c.homogeneous();
            rows.push(row.iter().map(|x| -x).collect());
            rows.push(row);
        }
        let mut t = vec![BigInt::zero(); rank + 1];
        t[rank] = BigInt::one();
        rows.push(t);
        Self::from_homogeneous_constraints(rank, &rows)
    }

    /// Constraints on `(x, t)` already homogenised; `t >= 0` must be among them.
    pub(crate) fn from_homogeneous_constraints(rank: usize, rows: &[Vec<BigInt>]) -> Result<Self> {
        let dd = double_description(rank + 1, rows);
        if !dd.lineality.is_empty() {
            return Err(Error::NotPointed);
        }
        let mut points = Vec::new();
        let mut rays = Vec::new();
        for r in dd.rays {
            let t = r[rank].clone();
            if t.is_positive() {
                points.push(RationalVector(
                    r[..rank]
                        .iter()
                        .map(|c| BigRational::new(c.clone(), t.clone()))
                        .collect(),
                ));
            } else {
                rays.push(LatticeVector(r[..rank].to_vec()));
            }
        }
        if points.is_empty() {
            return Ok(Self::empty(rank));
        }
        Self::convex_hull(rank, &points, &rays)
    }

    fn from_homogenised_cone(rank: usize, cone: &Cone) -> Result<Self> {
        if !cone.is_strongly_convex() {
            return Err(Error::NotPointed);
        }
        let mut vertices = Vec::new();
        let mut rays = Vec::new();
        for r in cone.rays() {
            let t = &r.0[rank];
            if t.is_positive() {
                vertices.push(RationalVector(
                    r.0[..rank]
                        .iter()
                        .map(|c| BigRational::new(c.clone(), t.clone()))
                        .collect(),
                ));
            } else {
                rays.push(r.truncated(rank));
            }
        }
        vertices.sort();
        rays.sort();
        let mut inequalities: Vec<Inequality> = cone
            .facets()
            .iter()
            .filter_map(|f| Inequality::from_homogeneous(&f.0))
            .collect();
        inequalities.sort();
        let mut equations: Vec<Inequality> = cone
            .equations()
            .iter()
            .filter_map(|e| Inequality::from_homogeneous(&e.0))
            .collect();
        equations.sort();
        Ok(Self {
            rank,
            vertices,
            rays,
            inequalities,
            equations,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> &[RationalVector] {
        &self.vertices
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    pub fn equations(&self) -> &[Inequality] {
        &self.equations
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    /// Affine dimension; `None` for the empty polyhedron.
    pub fn dimension(&self) -> Option<usize> {
        if self.is_empty() {
            None
        } else {
            Some(self.rank - self.equations.len())
        }
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dimension() == Some(self.rank)
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(RationalVector::is_integral)
    }

    pub fn lattice_vertices(&self) -> Option<Vec<LatticeVector>> {
        self.vertices
            .iter()
            .map(RationalVector::to_lattice)
            .collect()
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        !self.is_empty()
            && self.inequalities.iter().all(|c| !c.value(x).is_negative())
            && self.equations.iter().all(|c| c.value(x).is_zero())
    }

    pub fn contains_lattice(&self, x: &LatticeVector) -> bool {
        !self.is_empty()
            && self
                .inequalities
                .iter()
                .all(|c| !c.value_lattice(x).is_negative())
            && self.equations.iter().all(|c| c.value_lattice(x).is_zero())
    }

    /// Strict interior membership (relative to the ambient space).
    pub fn contains_in_interior(&self, x: &RationalVector) -> bool {
        self.is_full_dimensional() && self.inequalities.iter().all(|c| c.value(x).is_positive())
    }

    pub fn translate(&self, v: &RationalVector) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        let pts: Vec<RationalVector> = self.vertices.iter().map(|p| p + v).collect();
        Self::convex_hull(self.rank, &pts, &self.rays).expect("translate keeps validity")
    }

    /// `lambda * P` for `lambda >= 0`.
    pub fn scale(&self, lambda: &BigRational) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        let pts: Vec<RationalVector> = self.vertices.iter().map(|p| p.scale(lambda)).collect();
        let rays = if lambda.is_zero() {
            Vec::new()
        } else {
            self.rays.clone()
        };
        Self::convex_hull(self.rank, &pts, &rays).expect("scale keeps validity")
    }

    /// Image under `x -> (x, c)`.
    pub fn lift(&self, height: &BigRational) -> Self {
        if self.is_empty() {
            return Self::empty(self.rank + 1);
        }
        let pts: Vec<RationalVector> = self
            .vertices
            .iter()
            .map(|p| p.extended(std::slice::from_ref(height)))
            .collect();
        let rays: Vec<LatticeVector> = self
            .rays
            .iter()
            .map(|r| r.extended(&[BigInt::zero()]))
            .collect();
        Self::convex_hull(self.rank + 1, &pts, &rays).expect("lift keeps validity")
    }

    pub fn minkowski_sum(&self, other: &Polyhedron) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        if self.is_empty() || other.is_empty() {
            return Ok(Self::empty(self.rank));
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(a + b);
            }
        }
        let mut rays = self.rays.clone();
        rays.extend(other.rays.iter().cloned());
        Self::convex_hull(self.rank, &pts, &rays)
    }

    pub fn intersection(&self, other: &Polyhedron) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        let mut ineqs = self.inequalities.clone();
        ineqs.extend(other.inequalities.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Self::from_constraints(self.rank, &ineqs, &eqs)
    }

    /// Minimum of `u` over the polyhedron, its floor, and a minimising vertex.
    pub fn min_functional(
        &self,
        u: &LatticeVector,
    ) -> Result<(BigRational, BigInt, RationalVector)> {
        if u.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: u.rank(),
            });
        }
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        if let Some(r) = self.rays.iter().find(|r| u.dot(r).is_negative()) {
            return Err(Error::UnboundedBelow { ray: r.clone() });
        }
        let (value, vertex) = self
            .vertices
            .iter()
            .map(|v| (u.dot_rational(v), v))
            .min_by(|a, b| a.0.cmp(&b.0))
            .expect("non-empty");
        let fl = floor(&value);
        Ok((value, fl, vertex.clone()))
    }

    pub fn max_functional(&self, u: &LatticeVector) -> Result<BigRational> {
        let (m, _, _) = self.min_functional(&-u)?;
        Ok(-m)
    }

    /// All lattice points, sorted lexicographically.
    pub fn lattice_points(&self) -> Result<Vec<LatticeVector>> {
        if !self.is_bounded() {
            return Err(Error::Unbounded);
        }
        if self.is_empty() {
            return Ok(Vec::new());
        }
        let mut lo = Vec::with_capacity(self.rank);
        let mut hi = Vec::with_capacity(self.rank);
        for i in 0..self.rank {
            let coords = self.vertices.iter().map(|v| &v.0[i]);
            let min = coords.clone().min().expect("non-empty").ceil().to_integer();
            let max = coords.max().expect("non-empty").floor().to_integer();
            if min > max {
                return Ok(Vec::new());
            }
            lo.push(min);
            hi.push(max);
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            let p = LatticeVector(cur.clone());
            if self.contains_lattice(&p) {
                out.push(p);
            }
            // odometer, last coordinate fastest
            let mut i = self.rank;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    cur[i + 1..].clone_from_slice(&lo[i + 1..]);
                    break;
                }
            }
            if self.rank == 0 {
                return Ok(out);
            }
        }
    }

    /// Lattice points on the hyperplane `<w, x> = h`.
    pub fn lattice_points_at_height(
        &self,
        w: &LatticeVector,
        h: &BigInt,
    ) -> Result<Vec<LatticeVector>> {
        Ok(self
            .lattice_points()?
            .into_iter()
            .filter(|p| &w.dot(p) == h)
            .collect())
    }

    /// Slice `P cap {<w, x> = h}`.
    pub fn slice(&self, w: &LatticeVector, h: &BigRational) -> Result<Self> {
        let eq = Inequality::new(-w, h.clone());
        let mut eqs = self.equations.clone();
        eqs.push(eq);
        Self::from_constraints(self.rank, &self.inequalities, &eqs)
    }

    /// Inner normal fan of a full-dimensional polytope.
    pub fn normal_fan(&self) -> Result<Fan> {
        if !self.is_bounded() {
            return Err(Error::Unbounded);
        }
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional {
                dim: self.dimension().unwrap_or(0),
                rank: self.rank,
            });
        }
        let rays: Vec<LatticeVector> = self.inequalities.iter().map(|c| c.normal.clone()).collect();
        let cones = self
            .vertices
            .iter()
            .map(|v| {
                (0..rays.len())
                    .filter(|&i| self.inequalities[i].value(v).is_zero())
                    .collect()
            })
            .collect();
        Ok(Fan::canonical(self.rank, rays, cones))
    }

    /// Whether `v` lies in `R_{>0} * P`: the admissible `lambda > 0` with
    /// `v / lambda` in `P` form an interval, cut out constraint by constraint.
    pub fn membership_scaling(&self, v: &RationalVector) -> bool {
        if self.is_empty() || v.is_zero() {
            return false;
        }
        // <n, v>/lambda + c >= 0  <=>  <n, v> + c lambda >= 0 for lambda > 0.
        let mut lower: Option<BigRational> = None;
        let mut upper: Option<BigRational> = None;
        let mut constraints: Vec<(BigRational, BigRational)> = Vec::new();
        for c in &self.inequalities {
            constraints.push((c.normal.dot_rational(v), c.offset.clone()));
        }
        for c in &self.equations {
            let a = c.normal.dot_rational(v);
            constraints.push((-a.clone(), -c.offset.clone()));
            constraints.push((a, c.offset.clone()));
        }
        for (a, c) in constraints {
            if c.is_zero() {
                if a.is_negative() {
                    return false;
                }
                continue;
            }
            let bound = -&a / &c;
            if c.is_positive() {
                if lower.as_ref().is_none_or(|l| bound > *l) {
                    lower = Some(bound);
                }
            } else if upper.as_ref().is_none_or(|u| bound < *u) {
                upper = Some(bound);
            }
        }
        match (lower, upper) {
            (_, None) => true,
            (Some(l), Some(u)) if l.is_positive() => u >= l,
            (_, Some(u)) => u.is_positive(),
        }
    }

    /// Constraints shifted so that they describe `P - v`.
    pub fn shifted_constraints(&self, v: &LatticeVector) -> (Vec<Inequality>, Vec<Inequality>) {
        let shift = |c: &Inequality| {
            Inequality::new(
                c.normal.clone(),
                &c.offset + BigRational::from_integer(c.normal.dot(v)),
            )
        };
        (
            self.inequalities.iter().map(shift).collect(),
            self.equations.iter().map(shift).collect(),
        )
    }

    /// The common denominator of all vertex coordinates.
    pub fn vertex_denominator(&self) -> BigInt {
        self.vertices
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(&v.denominator()))
    }
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "empty");
        }
        let vs: Vec<String> = self.vertices.iter().map(ToString::to_string).collect();
        write!(f, "conv{{{}}}", vs.join(","))?;
        if !self.rays.is_empty() {
            let rs: Vec<String> = self.rays.iter().map(ToString::to_string).collect();
            write!(f, " + cone{{{}}}", rs.join(","))?;
        }
        Ok(())
    }
}
