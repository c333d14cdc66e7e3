//! Fano polytopes, their mutations, and the trinomial family over the
//! punctured projective plane that connects a polytope with its mutation.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cox::{AliasTable, Coefficient, CoxPolynomial, CoxSystem, Term};
use crate::datum::DeformationDatum;
use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, RationalVector};
use crate::polarized::{projective_tilde, PolarizedToricVariety, ProjectiveTilde};
use crate::polyhedron::{Inequality, Polyhedron};

/// A full-dimensional lattice polytope with the origin strictly inside and
/// primitive vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoPolytope {
    polytope: Polyhedron,
    vertices: Vec<LatticeVector>,
}

impl FanoPolytope {
    pub fn new(p: Polyhedron) -> Result<Self> {
        validate_fano(p)
    }

    pub fn from_i64_points(points: &[&[i64]]) -> Result<Self> {
        validate_fano(Polyhedron::from_i64_points(points)?)
    }

    pub fn polytope(&self) -> &Polyhedron {
        &self.polytope
    }

    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    pub fn rank(&self) -> usize {
        self.polytope.rank()
    }

    /// `min_P w` and `max_P w`; both integers since the vertices are.
    pub fn height_range(&self, w: &LatticeVector) -> (BigInt, BigInt) {
        let hs = self.vertices.iter().map(|v| w.dot(v));
        let min = hs.clone().min().expect("non-empty");
        let max = hs.max().expect("non-empty");
        (min, max)
    }
}

pub fn validate_fano(p: Polyhedron) -> Result<FanoPolytope> {
    let n = p.rank();
    if p.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    if !p.is_bounded() {
        return Err(Error::Unbounded);
    }
    if !p.is_full_dimensional() {
        return Err(Error::NotFullDimensional {
            dim: p.dimension().unwrap_or(0),
            rank: n,
        });
    }
    let mut vertices = Vec::new();
    for v in p.vertices() {
        match v.to_lattice() {
            Some(l) if l.is_primitive() => vertices.push(l),
            _ => {
                return Err(Error::NonPrimitiveVertex {
                    vertex: v.to_string(),
                })
            }
        }
    }
    if !p.contains_in_interior(&RationalVector::zero(n)) {
        return Err(Error::OriginNotInterior);
    }
    Ok(FanoPolytope {
        polytope: p,
        vertices,
    })
}

/// A pair `(w, F)` with admissible factors `G_h` at each negative height.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationDatum {
    pub w: LatticeVector,
    pub factor: Polyhedron,
    /// `G_h` by height, `None` when empty.
    pub witnesses: BTreeMap<BigInt, Option<Polyhedron>>,
}

impl MutationDatum {
    /// The same pair with other witnesses (which are re-checked).
    pub fn with_witnesses(
        &self,
        p: &FanoPolytope,
        witnesses: BTreeMap<BigInt, Option<Polyhedron>>,
    ) -> Result<Self> {
        let d = Self {
            w: self.w.clone(),
            factor: self.factor.clone(),
            witnesses,
        };
        for (h, g) in &d.witnesses {
            check_witness(p, &d.w, &d.factor, h, g.as_ref())?;
        }
        Ok(d)
    }
}

fn hull_or_empty(rank: usize, points: &[LatticeVector]) -> Result<Option<Polyhedron>> {
    if points.is_empty() {
        return Ok(None);
    }
    let pts: Vec<RationalVector> = points.iter().map(LatticeVector::to_rational).collect();
    Polyhedron::from_points(rank, &pts).map(Some)
}

fn layer_points(p: &FanoPolytope, w: &LatticeVector, h: &BigInt) -> Result<Vec<LatticeVector>> {
    p.polytope.lattice_points_at_height(w, h)
}

/// Both inclusions `vertices at height h in G_h + (-h)F in conv(layer)`.
fn check_witness(
    p: &FanoPolytope,
    w: &LatticeVector,
    f: &Polyhedron,
    h: &BigInt,
    g: Option<&Polyhedron>,
) -> Result<()> {
    let n = p.rank();
    let scaled = f.scale(&BigRational::from_integer(-h));
    let layer = hull_or_empty(n, &layer_points(p, w, h)?)?;
    let sum = match g {
        Some(g) => Some(g.minkowski_sum(&scaled)?),
        None => None,
    };
    for v in p.vertices.iter().filter(|v| &w.dot(v) == h) {
        if !sum.as_ref().is_some_and(|s| s.contains_lattice(v)) {
            return Err(Error::NoFactorAtHeight {
                height: h.to_i64().unwrap_or(i64::MIN),
                vertex: v.to_string(),
            });
        }
    }
    if let Some(s) = &sum {
        let inside = layer
            .as_ref()
            .is_some_and(|l| s.vertices().iter().all(|x| l.contains(x)));
        if !inside {
            return Err(Error::NoFactorAtHeight {
                height: h.to_i64().unwrap_or(i64::MIN),
                vertex: s.vertices()[0].to_string(),
            });
        }
    }
    Ok(())
}

/// The largest admissible factor: lattice points `x` with `x + (-h)F` inside
/// the layer at height `h`.
fn maximal_witness(
    p: &FanoPolytope,
    w: &LatticeVector,
    f: &Polyhedron,
    h: &BigInt,
) -> Result<Option<Polyhedron>> {
    let n = p.rank();
    let Some(layer) = hull_or_empty(n, &layer_points(p, w, h)?)? else {
        return Ok(None);
    };
    let mut diff = layer.clone();
    for fv in f.vertices() {
        let shift = fv.scale(&BigRational::from_integer(h.clone()));
        diff = diff.intersection(&layer.translate(&shift))?;
    }
    if diff.is_empty() {
        return Ok(None);
    }
    hull_or_empty(n, &diff.lattice_points()?)
}

/// Checks `(w, F)` and returns the maximal witnesses.
pub fn validate_mutation_datum(
    p: &FanoPolytope,
    w: &LatticeVector,
    f: &Polyhedron,
) -> Result<MutationDatum> {
    let n = p.rank();
    if w.rank() != n {
        return Err(Error::RankMismatch {
            expected: n,
            found: w.rank(),
        });
    }
    if f.rank() != n {
        return Err(Error::RankMismatch {
            expected: n,
            found: f.rank(),
        });
    }
    if !w.is_primitive() {
        return Err(Error::NonPrimitiveCharacter { w: w.clone() });
    }
    if f.is_empty() || !f.is_bounded() || !f.is_lattice() {
        return Err(Error::InvalidDatum(
            "the factor must be a non-empty lattice polytope".into(),
        ));
    }
    if f.vertices().iter().any(|v| !w.dot_rational(v).is_zero()) {
        return Err(Error::FactorNotInKernel);
    }
    let (min, _) = p.height_range(w);
    let mut witnesses = BTreeMap::new();
    let mut h = min;
    while h.is_negative() {
        let g = maximal_witness(p, w, f, &h)?;
        check_witness(p, w, f, &h, g.as_ref())?;
        witnesses.insert(h.clone(), g);
        h += 1;
    }
    Ok(MutationDatum {
        w: w.clone(),
        factor: f.clone(),
        witnesses,
    })
}

/// Smallest witnesses: at each height, the hull of one vertex `g` of the
/// maximal witness per vertex `v` of `P` with `v - g` a vertex of `(-h)F`.
pub fn minimal_witnesses(
    p: &FanoPolytope,
    d: &MutationDatum,
) -> Result<BTreeMap<BigInt, Option<Polyhedron>>> {
    let n = p.rank();
    let mut out = BTreeMap::new();
    for (h, g) in &d.witnesses {
        let mut chosen = BTreeSet::new();
        if let Some(g) = g {
            let gv = g
                .lattice_vertices()
                .ok_or_else(|| Error::InvalidDatum("non-lattice witness".into()))?;
            let fv: Vec<RationalVector> = d
                .factor
                .vertices()
                .iter()
                .map(|f| f.scale(&BigRational::from_integer(-h)))
                .collect();
            for v in p.vertices.iter().filter(|v| &d.w.dot(v) == h) {
                let pick = gv
                    .iter()
                    .find(|g| fv.iter().any(|f| (&g.to_rational() + f) == v.to_rational()));
                chosen.insert(pick.cloned().ok_or_else(|| Error::NoFactorAtHeight {
                    height: h.to_i64().unwrap_or(i64::MIN),
                    vertex: v.to_string(),
                })?);
            }
        }
        let pts: Vec<LatticeVector> = chosen.into_iter().collect();
        out.insert(h.clone(), hull_or_empty(n, &pts)?);
    }
    Ok(out)
}

/// `conv(G_h for h < 0, (layer_h) + hF for h >= 0)`.
pub fn mutate(p: &FanoPolytope, d: &MutationDatum) -> Result<FanoPolytope> {
    let n = p.rank();
    let mut pts: Vec<RationalVector> = Vec::new();
    for g in d.witnesses.values().flatten() {
        pts.extend(g.vertices().iter().cloned());
    }
    let (_, max) = p.height_range(&d.w);
    let all = p.polytope.lattice_points()?;
    let mut h = BigInt::zero();
    while h <= max {
        let hq = BigRational::from_integer(h.clone());
        for x in all.iter().filter(|x| d.w.dot(x) == h) {
            for fv in d.factor.vertices() {
                pts.push(&x.to_rational() + &fv.scale(&hq));
            }
        }
        h += 1;
    }
    validate_fano(Polyhedron::from_points(n, &pts)?)
}

/// The inverse pair `(-w, F)` on the mutated polytope.
pub fn inverse_datum(p_prime: &FanoPolytope, d: &MutationDatum) -> Result<MutationDatum> {
    validate_mutation_datum(p_prime, &-&d.w, &d.factor)
}

/// Which class a Cox variable of the family belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyRay {
    /// `p` for a vertex of `P` with `<w, p> >= 0`.
    NonNegative(LatticeVector),
    /// `p' + <w, p'> e1` for a vertex of `P'` with `<w, p'> < 0`.
    Negative(LatticeVector),
    /// `f + e1` for a vertex of `F`.
    Factor(LatticeVector),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationFamily {
    pub p: FanoPolytope,
    pub p_prime: FanoPolytope,
    pub datum: MutationDatum,
    pub q_tilde: Polyhedron,
    /// Predicted rays, checked against the normal fan of `q_tilde`.
    pub rays: Vec<LatticeVector>,
    pub ray_kinds: Vec<FamilyRay>,
    pub cox: CoxSystem,
    /// Weights in print order, when the class group is `Z`.
    pub weights: Option<Vec<BigInt>>,
    /// `a * x^{...} + b * y^{...} + c * z...`.
    pub trinomial: CoxPolynomial,
    pub monomial: CoxPolynomial,
    /// The enlarged polarised variety of the induced datum on `cone(P + e0)`.
    pub induced: ProjectiveTilde,
}

impl MutationFamily {
    pub fn format(&self, f: &CoxPolynomial) -> String {
        self.cox.format(f)
    }

    /// Variables in print order.
    pub fn variable_names(&self) -> Vec<String> {
        self.cox
            .print_order()
            .iter()
            .map(|&j| self.cox.names()[j].clone())
            .collect()
    }
}

fn names_for(prefix: &str, count: usize, always_index: bool) -> Vec<String> {
    if count == 1 && !always_index {
        vec![prefix.to_string()]
    } else {
        (0..count).map(|i| format!("{prefix}{i}")).collect()
    }
}

/// `G = conv(union (G_h + e0) / (-h))` in `N + Z e0`.
fn induced_base(n: usize, d: &MutationDatum) -> Result<Polyhedron> {
    let mut pts = Vec::new();
    for (h, g) in &d.witnesses {
        let Some(g) = g else { continue };
        let inv = BigRational::new(BigInt::one(), -h);
        for v in g.vertices() {
            pts.push(v.extended(&[BigRational::one()]).scale(&inv));
        }
    }
    if pts.is_empty() {
        return Err(Error::InvalidDatum(
            "no negative heights, so the induced datum has no base".into(),
        ));
    }
    Polyhedron::from_points(n + 1, &pts)
}

/// The deformation datum `(G + F, G, F, w)` on `cone(P + e0)`.
pub fn induced_datum(
    p: &FanoPolytope,
    d: &MutationDatum,
) -> Result<(PolarizedToricVariety, DeformationDatum)> {
    let n = p.rank();
    let v = PolarizedToricVariety::from_polytope(&p.polytope)?;
    let g = induced_base(n, d)?;
    let f = d.factor.lift(&BigRational::zero());
    let w = d.w.extended(&[BigInt::zero()]);
    let datum = DeformationDatum::new(v.tau().clone(), vec![g, f], w, true)?;
    Ok((v, datum))
}

fn exps_u64(v: &[BigInt]) -> Vec<u64> {
    v.iter()
        .map(|e| e.to_u64().expect("non-negative exponent"))
        .collect()
}

fn term(param: &str, exps: Vec<u64>) -> Term {
    Term {
        coeff: Coefficient::param(1, param),
        exps,
    }
}

/// Monomials of a polynomial, keyed by ray vectors, ignoring coefficients.
fn monomials_by_ray(
    f: &CoxPolynomial,
    rays: &[LatticeVector],
) -> BTreeSet<BTreeMap<LatticeVector, u64>> {
    f.terms
        .iter()
        .map(|t| {
            (0..rays.len())
                .filter(|&j| t.exps[j] > 0)
                .map(|j| (rays[j].clone(), t.exps[j]))
                .collect()
        })
        .collect()
}

/// Rewrites a polynomial over `from_rays` in the variables of `to_rays`.
fn transport(
    f: &CoxPolynomial,
    from_rays: &[LatticeVector],
    to_rays: &[LatticeVector],
) -> Result<CoxPolynomial> {
    let mut terms = Vec::new();
    for t in &f.terms {
        let mut exps = vec![0u64; to_rays.len()];
        for (j, &e) in t.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let k = to_rays
                .iter()
                .position(|r| r == &from_rays[j])
                .ok_or_else(|| {
                    Error::CrossCheck(format!("ray {} has no counterpart", from_rays[j]))
                })?;
            exps[k] += e;
        }
        terms.push(Term {
            coeff: t.coeff.clone(),
            exps,
        });
    }
    Ok(CoxPolynomial::new(terms))
}

pub fn mutation_family(p: &FanoPolytope, d: &MutationDatum) -> Result<MutationFamily> {
    let n = p.rank();
    let w = &d.w;
    let p_prime = mutate(p, d)?;
    let f_vertices = d.factor.lattice_vertices().expect("lattice factor");
    let non_negative: Vec<&LatticeVector> = p
        .vertices
        .iter()
        .filter(|v| !w.dot(v).is_negative())
        .collect();
    let negative: Vec<&LatticeVector> = p_prime
        .vertices
        .iter()
        .filter(|v| w.dot(v).is_negative())
        .collect();

    let one = BigRational::one();
    let mut ineqs = Vec::new();
    let mut rays = Vec::new();
    let mut kinds = Vec::new();
    for v in &non_negative {
        ineqs.push(Inequality::new(v.extended(&[BigInt::zero()]), one.clone()));
        rays.push(v.extended(&[BigInt::zero()]));
        kinds.push(FamilyRay::NonNegative((*v).clone()));
    }
    for v in &negative {
        let r = v.extended(&[w.dot(v)]);
        ineqs.push(Inequality::new(r.clone(), one.clone()));
        rays.push(r);
        kinds.push(FamilyRay::Negative((*v).clone()));
    }
    for f in &f_vertices {
        let r = f.extended(&[BigInt::one()]);
        ineqs.push(Inequality::new(r.clone(), BigRational::zero()));
        rays.push(r);
        kinds.push(FamilyRay::Factor(f.clone()));
    }
    let q_tilde = Polyhedron::from_constraints(n + 1, &ineqs, &[])?;
    if !q_tilde.is_bounded() || !q_tilde.is_full_dimensional() {
        return Err(Error::CrossCheck(
            "the polytope of the family is not a full-dimensional polytope".into(),
        ));
    }
    let computed: BTreeSet<LatticeVector> = q_tilde.normal_fan()?.rays.into_iter().collect();
    let predicted: BTreeSet<LatticeVector> = rays.iter().cloned().collect();
    if computed != predicted || predicted.len() != rays.len() {
        return Err(Error::RayPredictionMismatch {
            predicted: rays.iter().map(ToString::to_string).collect(),
            computed: computed.iter().map(ToString::to_string).collect(),
        });
    }

    let mut aliases = Vec::new();
    let xs = names_for("x", non_negative.len(), false);
    let ys = names_for("y", negative.len(), false);
    let zs = names_for("z", f_vertices.len(), true);
    for (r, name) in rays.iter().zip(xs.iter().chain(&ys).chain(&zs)) {
        aliases.push((r.clone(), name.clone()));
    }
    let cox = CoxSystem::new(
        n + 1,
        rays.clone(),
        vec!["a".into(), "b".into(), "c".into()],
    )?
    .with_aliases(&AliasTable::new(aliases))?;
    let weights = cox
        .weights()
        .map(|ws| cox.print_order().iter().map(|&j| ws[j].clone()).collect());

    let r = rays.len();
    let (i0, i1) = (non_negative.len(), non_negative.len() + negative.len());
    let mut a = vec![BigInt::zero(); r];
    let mut b = vec![BigInt::zero(); r];
    let mut c = vec![BigInt::zero(); r];
    let mut m = vec![BigInt::zero(); r];
    for (j, v) in non_negative.iter().enumerate() {
        a[j] = w.dot(v);
        m[j] = BigInt::one();
    }
    for (j, v) in negative.iter().enumerate() {
        b[i0 + j] = -w.dot(v);
        m[i0 + j] = BigInt::one();
    }
    for cj in c.iter_mut().skip(i1) {
        *cj = BigInt::one();
    }
    let trinomial = CoxPolynomial::new(vec![
        term("a", exps_u64(&a)),
        term("b", exps_u64(&b)),
        term("c", exps_u64(&c)),
    ]);
    let monomial = CoxPolynomial::monomial(exps_u64(&m));
    if !cox.is_homogeneous(&trinomial) {
        return Err(Error::CrossCheck("the trinomial is not homogeneous".into()));
    }

    let (v, datum) = induced_datum(p, d)?;
    let induced = projective_tilde(&v, &datum, true)?;
    let family = MutationFamily {
        p: p.clone(),
        p_prime,
        datum: d.clone(),
        q_tilde,
        rays,
        ray_kinds: kinds,
        cox,
        weights,
        trinomial,
        monomial,
        induced,
    };
    cross_check_induced(&family)?;
    Ok(family)
}

/// Compares the family with the equations of the induced datum, ray by ray.
fn cross_check_induced(fam: &MutationFamily) -> Result<()> {
    let ind = &fam.induced;
    let ind_rays: BTreeSet<&LatticeVector> = ind.table.rays.iter().collect();
    let fam_rays: BTreeSet<&LatticeVector> = fam.rays.iter().collect();
    if ind_rays != fam_rays {
        return Err(Error::CrossCheck(format!(
            "rays of the family {:?} differ from those of the induced datum {:?}",
            fam.rays.iter().map(ToString::to_string).collect::<Vec<_>>(),
            ind.table
                .rays
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        )));
    }
    let [tri] = ind.trinomials.as_slice() else {
        return Err(Error::CrossCheck(
            "the induced datum should have one trinomial".into(),
        ));
    };
    if monomials_by_ray(tri, &ind.table.rays) != monomials_by_ray(&fam.trinomial, &fam.rays) {
        return Err(Error::CrossCheck(
            "trinomial monomials differ from those of the induced datum".into(),
        ));
    }
    let Some(bm) = &ind.boundary_monomial else {
        return Err(Error::CrossCheck(
            "the induced datum has no boundary monomial".into(),
        ));
    };
    if monomials_by_ray(&bm.monomial, &ind.table.rays) != monomials_by_ray(&fam.monomial, &fam.rays)
    {
        return Err(Error::CrossCheck(
            "boundary monomial differs from that of the induced datum".into(),
        ));
    }
    Ok(())
}

/// A homogeneous parameter point `[a:b:c]` normalised to coprime integers
/// with first non-zero entry positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParameterPoint(pub [BigInt; 3]);

impl ParameterPoint {
    pub fn new(coords: [BigRational; 3]) -> Result<Self> {
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::ZeroParameterPoint);
        }
        let den = coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = coords
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        for c in ints.iter_mut() {
            *c = &*c / &g;
        }
        if ints
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(Signed::is_negative)
        {
            for c in ints.iter_mut() {
                *c = -&*c;
            }
        }
        let [a, b, c]: [BigInt; 3] = ints.try_into().expect("three coordinates");
        Ok(Self([a, b, c]))
    }

    pub fn from_i64s(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new([a, b, c].map(|x| BigRational::from_integer(x.into())))
    }

    /// Outside the two deleted points `[1:0:0]` and `[0:1:0]`.
    pub fn in_v(&self) -> bool {
        let [a, b, c] = &self.0;
        !(c.is_zero() && (a.is_zero() || b.is_zero()))
    }

    pub fn values(&self) -> BTreeMap<String, BigInt> {
        let [a, b, c] = self.0.clone();
        BTreeMap::from([
            ("a".to_string(), a),
            ("b".to_string(), b),
            ("c".to_string(), c),
        ])
    }
}

impl std::fmt::Display for ParameterPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a, b, c] = &self.0;
        write!(f, "[{a}:{b}:{c}]")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberKind {
    /// `[0:1:-1]`: the pair of `P`.
    Source,
    /// `[1:0:-1]`: the pair of the mutation.
    Target,
    Generic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub point: ParameterPoint,
    pub kind: FiberKind,
    pub trinomial: CoxPolynomial,
    pub monomial: CoxPolynomial,
    /// For the two distinguished points, whether the fiber equation agrees
    /// with the toric binomial it should specialise to.
    pub matches_toric: Option<bool>,
    /// The specialised trinomial and the monomial share no variable factor.
    pub coprime: bool,
}

pub fn specialize_fiber(fam: &MutationFamily, point: &ParameterPoint) -> Result<FiberReport> {
    if !point.in_v() {
        return Err(Error::OutsideV(point.to_string()));
    }
    let trinomial = fam.trinomial.specialize(&point.values());
    let kind = if *point == ParameterPoint::from_i64s(0, 1, -1)? {
        FiberKind::Source
    } else if *point == ParameterPoint::from_i64s(1, 0, -1)? {
        FiberKind::Target
    } else {
        FiberKind::Generic
    };
    let matches_toric = match kind {
        FiberKind::Source => {
            let binomial = &fam.induced.binomials[0];
            let moved = transport(binomial, &fam.induced.table.rays, &fam.rays)?;
            Some(moved.equal_up_to_sign(&trinomial))
        }
        FiberKind::Target => Some(target_binomial(fam)?.equal_up_to_sign(&trinomial)),
        FiberKind::Generic => None,
    };
    let common = trinomial.common_variables();
    let coprime = !trinomial.is_zero() && common.is_disjoint(&fam.monomial.support());
    Ok(FiberReport {
        point: point.clone(),
        kind,
        trinomial,
        monomial: fam.monomial.clone(),
        matches_toric,
        coprime,
    })
}

/// The source binomial of the inverse family, moved by
/// `v + k e1 -> v + (k + <w, v>) e1` into the variables of `fam`.
pub fn target_binomial(fam: &MutationFamily) -> Result<CoxPolynomial> {
    let inverse = inverse_datum(&fam.p_prime, &fam.datum)?;
    let (v, datum) = induced_datum(&fam.p_prime, &inverse)?;
    let ind = projective_tilde(&v, &datum, false)?;
    let n = fam.p.rank();
    let moved_rays: Vec<LatticeVector> = ind
        .table
        .rays
        .iter()
        .map(|r| {
            let mut c = r.0.clone();
            c[n] += fam.datum.w.dot(&r.truncated(n));
            LatticeVector(c)
        })
        .collect();
    transport(&ind.binomials[0], &moved_rays, &fam.rays)
}
