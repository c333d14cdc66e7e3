//! Polarised projective toric varieties as cones `tau` in `N + Z e0`, and the
//! projective versions of the deformation constructions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cone::{Cone, Fan};
use crate::cox::{self, BoundaryMonomial, CoxPolynomial, CoxSystem, PairingTable};
use crate::datum::{build_tilde, DeformationDatum, TildeData};
use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, RationalVector};
use crate::polyhedron::{Inequality, Polyhedron};

/// How integral the polarising divisor is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DivisorClass {
    QCartierQDivisor,
    QCartierZDivisor,
    Cartier,
}

impl DivisorClass {
    pub fn name(self) -> &'static str {
        match self {
            DivisorClass::Cartier => "Cartier",
            DivisorClass::QCartierZDivisor => "QCartierZDivisor",
            DivisorClass::QCartierQDivisor => "QCartierQDivisor",
        }
    }
}

/// A fan ray `rho` together with the ray `b rho - a e0` of `tau` above it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayDatum {
    pub rho: LatticeVector,
    pub xi: LatticeVector,
    pub a: BigInt,
    pub b: BigInt,
}

impl RayDatum {
    /// The support function value `a / b` at `rho`.
    pub fn phi(&self) -> BigRational {
        BigRational::new(self.a.clone(), self.b.clone())
    }
}

/// A facet of `tau`, i.e. a maximal cone of the fan, with its linear
/// function `u_F + e0*` up to the positive factor `h_F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetDatum {
    /// Primitive inner normal `(h_F * u_F, h_F)` of the facet.
    pub normal: LatticeVector,
    pub h: BigInt,
    pub u: RationalVector,
    /// Indices into the fan rays.
    pub rays: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizedToricVariety {
    n: usize,
    tau: Cone,
    fan: Fan,
    /// Indexed like `fan.rays`.
    ray_data: Vec<RayDatum>,
    facets: Vec<FacetDatum>,
}

fn e0(n: usize) -> LatticeVector {
    LatticeVector::unit(n + 1, n)
}

impl PolarizedToricVariety {
    /// From a cone `tau` in `N + Z e0` with `e0` in its interior.
    pub fn from_tau(tau: Cone) -> Result<Self> {
        let n = tau.rank().checked_sub(1).ok_or(Error::RankMismatch {
            expected: 1,
            found: 0,
        })?;
        if !tau.is_strongly_convex() {
            return Err(Error::NotStronglyConvex);
        }
        if !tau.contains_in_interior(&e0(n)) {
            return Err(Error::OriginNotInterior);
        }
        let mut ray_data: Vec<RayDatum> = tau
            .rays()
            .iter()
            .map(|xi| {
                let x = xi.truncated(n);
                let b = x.content();
                RayDatum {
                    rho: x.primitive().expect("e0 is interior"),
                    xi: xi.clone(),
                    a: -&xi.0[n],
                    b,
                }
            })
            .collect();
        ray_data.sort_by(|p, q| p.rho.cmp(&q.rho));
        let fan_rays: Vec<LatticeVector> = ray_data.iter().map(|r| r.rho.clone()).collect();

        let mut facets = Vec::new();
        let mut cones = Vec::new();
        for f in tau.facets() {
            let h = f.0[n].clone();
            let u = RationalVector(
                f.0[..n]
                    .iter()
                    .map(|c| BigRational::new(c.clone(), h.clone()))
                    .collect(),
            );
            let rays: Vec<usize> = (0..ray_data.len())
                .filter(|&i| f.dot(&ray_data[i].xi).is_zero())
                .collect();
            cones.push(rays.clone());
            facets.push(FacetDatum {
                normal: f.clone(),
                h,
                u,
                rays,
            });
        }
        let fan = Fan {
            rank: n,
            rays: fan_rays,
            maximal_cones: cones,
        };
        let fan = Fan::canonical(n, fan.rays, fan.maximal_cones);
        Ok(Self {
            n,
            tau,
            fan,
            ray_data,
            facets,
        })
    }

    /// `tau = cone(P x {1})` for a full-dimensional polytope with `0` strictly inside.
    pub fn from_polytope(p: &Polyhedron) -> Result<Self> {
        let n = p.rank();
        if !p.is_bounded() {
            return Err(Error::Unbounded);
        }
        if !p.is_full_dimensional() {
            return Err(Error::NotFullDimensional {
                dim: p.dimension().unwrap_or(0),
                rank: n,
            });
        }
        if !p.contains_in_interior(&RationalVector::zero(n)) {
            return Err(Error::OriginNotInterior);
        }
        let gens = p
            .vertices()
            .iter()
            .map(|v| v.extended(&[BigRational::one()]).primitive_direction())
            .collect::<Result<Vec<_>>>()?;
        Self::from_tau(Cone::from_generators(n + 1, &gens)?)
    }

    /// From a fan's rays and support function values `phi(rho)`.
    pub fn from_fan_phi(n: usize, rays: &[LatticeVector], phi: &[BigRational]) -> Result<Self> {
        if rays.len() != phi.len() {
            return Err(Error::RankMismatch {
                expected: rays.len(),
                found: phi.len(),
            });
        }
        let mut gens = Vec::new();
        for (rho, value) in rays.iter().zip(phi) {
            if rho.rank() != n {
                return Err(Error::RankMismatch {
                    expected: n,
                    found: rho.rank(),
                });
            }
            let lifted = rho.to_rational().extended(&[-value.clone()]);
            gens.push(lifted.primitive_direction()?);
        }
        let tau = Cone::from_generators(n + 1, &gens)?;
        if let Some(g) = gens.iter().find(|g| !tau.rays().contains(g)) {
            return Err(Error::NotStrictlyConvex { ray: g.clone() });
        }
        Self::from_tau(tau)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tau(&self) -> &Cone {
        &self.tau
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn ray_data(&self) -> &[RayDatum] {
        &self.ray_data
    }

    pub fn facets(&self) -> &[FacetDatum] {
        &self.facets
    }

    pub fn phi_values(&self) -> Vec<BigRational> {
        self.ray_data.iter().map(RayDatum::phi).collect()
    }

    /// `{u : u + e0* in tau dual}`.
    pub fn polytope_in_m(&self) -> Polyhedron {
        let ineqs: Vec<Inequality> = self
            .tau
            .rays()
            .iter()
            .map(|xi| {
                Inequality::new(
                    xi.truncated(self.n),
                    BigRational::from_integer(xi.0[self.n].clone()),
                )
            })
            .collect();
        Polyhedron::from_constraints(self.n, &ineqs, &[]).expect("bounded polytope")
    }

    pub fn classify_divisor(&self) -> DivisorClass {
        if self.facets.iter().all(|f| f.u.is_integral()) {
            DivisorClass::Cartier
        } else if self.ray_data.iter().all(|r| r.b.is_one()) {
            DivisorClass::QCartierZDivisor
        } else {
            DivisorClass::QCartierQDivisor
        }
    }

    /// Exponents `b_rho` of the map `x_rho -> x_xi^{b_rho}`, in fan ray order.
    pub fn cox_comparison(&self) -> Vec<BigInt> {
        self.ray_data.iter().map(|r| r.b.clone()).collect()
    }
}

/// The enlarged projective variety and its equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveTilde {
    pub tilde: TildeData,
    /// Polarised variety of the enlarged cone; its fan lives in `N + Z^k`
    /// with the `e0` coordinate removed.
    pub ambient: PolarizedToricVariety,
    pub table: PairingTable,
    /// Factor `b` per ambient ray.
    pub scale: Vec<BigInt>,
    pub binomials: Vec<CoxPolynomial>,
    pub trinomials: Vec<CoxPolynomial>,
    /// Absent for polarisations by non-integral divisors.
    pub boundary_monomial: Option<BoundaryMonomial>,
}

impl ProjectiveTilde {
    pub fn cox_system(&self) -> Result<CoxSystem> {
        CoxSystem::new(
            self.ambient.n(),
            self.table.rays.clone(),
            cox::parameter_names(self.tilde.k),
        )
    }
}

/// Moves the `e0` coordinate (position `n`) of a vector of `N + Z e0 + Z^k` to the end.
fn e0_last(v: &LatticeVector, n: usize) -> LatticeVector {
    let mut c = v.0.clone();
    let t = c.remove(n);
    c.push(t);
    LatticeVector(c)
}

/// Builds the enlarged polarised variety from a datum over `tau` whose
/// character has no `e0*` component.
pub fn projective_tilde(
    v: &PolarizedToricVariety,
    d: &DeformationDatum,
    want_boundary: bool,
) -> Result<ProjectiveTilde> {
    let n = v.n();
    if d.sigma() != v.tau() {
        return Err(Error::ConeMismatch);
    }
    if !d.w().0[n].is_zero() {
        return Err(Error::CharacterHasE0Component);
    }
    if want_boundary && v.classify_divisor() == DivisorClass::QCartierQDivisor {
        return Err(Error::BoundaryOnQDivisor);
    }
    let t = build_tilde(d)?;
    projective_tilde_from(v, d, t, want_boundary)
}

/// Whether `e0` is an interior point of the enlarged cone.
pub fn e0_interior(t: &TildeData) -> bool {
    t.sigma_tilde
        .contains_in_interior(&LatticeVector::unit(t.n + t.k, t.n - 1))
}

/// Like [`projective_tilde`] but starting from an already built enlarged cone.
pub fn projective_tilde_from(
    v: &PolarizedToricVariety,
    d: &DeformationDatum,
    t: TildeData,
    want_boundary: bool,
) -> Result<ProjectiveTilde> {
    let n = v.n();
    let k = t.k;
    if !e0_interior(&t) {
        return Err(Error::E0NotInterior);
    }
    // Reorder to (N, e1..ek, e0) so the polarised variety sees e0 last.
    let reordered: Vec<LatticeVector> =
        t.sigma_tilde.rays().iter().map(|r| e0_last(r, n)).collect();
    let ambient = PolarizedToricVariety::from_tau(Cone::from_generators(n + k + 1, &reordered)?)?;

    let mut w_tilde = t.w_tilde.0.clone();
    w_tilde.remove(n);
    let w_tilde = LatticeVector(w_tilde);
    let mut rays = Vec::new();
    let mut e_pairings = Vec::new();
    let mut w_pairings = Vec::new();
    let mut scale = Vec::new();
    for r in ambient.ray_data() {
        rays.push(r.rho.clone());
        e_pairings.push(r.rho.0[n..].to_vec());
        w_pairings.push(w_tilde.dot(&r.rho));
        scale.push(r.b.clone());
    }
    let table = PairingTable {
        rays,
        e_pairings,
        w_pairings,
    };
    let binomials = cox::binomials(&table);
    let trinomials = cox::trinomials(&table)?;
    let boundary_monomial = (want_boundary
        && d.is_boundary()
        && v.classify_divisor() != DivisorClass::QCartierQDivisor)
        .then(|| cox::boundary_monomial(&table));
    Ok(ProjectiveTilde {
        tilde: t,
        ambient,
        table,
        scale,
        binomials,
        trinomials,
        boundary_monomial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(c)
    }

    fn sorted(mut v: Vec<LatticeVector>) -> Vec<LatticeVector> {
        v.sort();
        v
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn p2_from_polytope() {
        let p = Polyhedron::from_i64_points(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        let v = PolarizedToricVariety::from_polytope(&p).unwrap();
        assert_eq!(
            v.tau().rays(),
            sorted(vec![lv(&[1, 0, 1]), lv(&[0, 1, 1]), lv(&[-1, -1, 1])]).as_slice()
        );
        assert_eq!(v.classify_divisor(), DivisorClass::Cartier);
        assert_eq!(
            v.polytope_in_m(),
            Polyhedron::from_i64_points(&[&[2, -1], &[-1, 2], &[-1, -1]]).unwrap()
        );
        assert_eq!(v.cox_comparison(), vec![BigInt::one(); 3]);
        assert_eq!(v.fan().maximal_cones.len(), 3);
    }

    #[test]
    fn weighted_plane_is_z_divisor() {
        let p = Polyhedron::from_i64_points(&[&[-1, -1], &[0, 1], &[4, 3]]).unwrap();
        let v = PolarizedToricVariety::from_polytope(&p).unwrap();
        assert_eq!(v.classify_divisor(), DivisorClass::QCartierZDivisor);
        let facet = v
            .facets()
            .iter()
            .find(|f| f.rays.len() == 2 && f.u == RationalVector::from_fracs(&[(1, 2), (-1, 1)]));
        assert!(facet.is_some());
    }

    #[test]
    fn projective_line_from_phi() {
        let v =
            PolarizedToricVariety::from_fan_phi(1, &[lv(&[1]), lv(&[-1])], &[q(-1, 1), q(-1, 1)])
                .unwrap();
        assert_eq!(
            v.tau().rays(),
            sorted(vec![lv(&[1, 1]), lv(&[-1, 1])]).as_slice()
        );
        assert_eq!(
            v.polytope_in_m(),
            Polyhedron::from_i64_points(&[&[-1], &[1]]).unwrap()
        );
    }

    #[test]
    fn q_divisor_classification() {
        let tau = Cone::from_generators(2, &[lv(&[2, 1]), lv(&[-1, 1])]).unwrap();
        let v = PolarizedToricVariety::from_tau(tau).unwrap();
        assert_eq!(v.classify_divisor(), DivisorClass::QCartierQDivisor);
        assert_eq!(v.phi_values(), vec![q(-1, 1), q(-1, 2)]);
        assert_eq!(v.cox_comparison(), vec![BigInt::one(), BigInt::from(2)]);
    }

    #[test]
    fn non_convex_phi_rejected() {
        // phi(0) = 1 on the middle ray makes its lift non-extreme.
        let rays = [lv(&[1, 0]), lv(&[0, 1]), lv(&[-1, -1]), lv(&[1, 1])];
        let phi = [q(-1, 1), q(-1, 1), q(-1, 1), q(1, 1)];
        assert!(matches!(
            PolarizedToricVariety::from_fan_phi(2, &rays, &phi),
            Err(Error::NotStrictlyConvex { .. })
        ));
    }

    #[test]
    fn origin_on_boundary_rejected() {
        let p = Polyhedron::from_i64_points(&[&[1, 0], &[0, 1], &[0, -1]]).unwrap();
        assert_eq!(
            PolarizedToricVariety::from_polytope(&p),
            Err(Error::OriginNotInterior)
        );
    }

    #[test]
    fn line_datum_with_bad_character_rejected() {
        let v =
            PolarizedToricVariety::from_fan_phi(1, &[lv(&[1]), lv(&[-1])], &[q(-1, 1), q(-1, 1)])
                .unwrap();
        let q0 = Polyhedron::from_i64_points(&[&[0, 1]]).unwrap();
        let q1 = Polyhedron::from_i64_points(&[&[0, 0]]).unwrap();
        let d = DeformationDatum::new(v.tau().clone(), vec![q0, q1], lv(&[-1, 0]), true).unwrap();
        assert!(matches!(
            projective_tilde(&v, &d, true),
            Err(Error::InvalidDatum(_))
        ));
        let d = DeformationDatum::new(
            v.tau().clone(),
            vec![
                Polyhedron::from_i64_points(&[&[0, 1]]).unwrap(),
                Polyhedron::from_i64_points(&[&[0, 0]]).unwrap(),
            ],
            lv(&[0, 1]),
            true,
        )
        .unwrap();
        assert_eq!(
            projective_tilde(&v, &d, true),
            Err(Error::CharacterHasE0Component)
        );
    }
}
