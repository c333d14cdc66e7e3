//! Brute-force checks at bounded degree: Hilbert bases of cones in `M`,
//! interior lattice points, and the ideal equalities behind the equations.
//!
//! Everything here only inspects finitely many lattice points, so a clean
//! report is evidence up to the bound, not a proof.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cone::Cone;
use crate::datum::TildeData;
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::polyhedron::{Inequality, Polyhedron};

/// How lattice points of a cone are truncated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    /// `sum of facet pairings <= n`.
    Degree(u64),
    /// `<f, x> <= n` for a functional strictly positive on the cone.
    Functional(LatticeVector, u64),
    /// `|x_i| <= n` for every coordinate.
    Box(u64),
}

fn default_functional(c: &Cone) -> LatticeVector {
    c.facets()
        .iter()
        .fold(LatticeVector::zero(c.rank()), |acc, f| &acc + f)
}

fn check_cone(c: &Cone) -> Result<()> {
    if !c.is_strongly_convex() {
        return Err(Error::NotStronglyConvex);
    }
    if !c.is_full_dimensional() {
        return Err(Error::NotFullDimensional {
            dim: c.dimension(),
            rank: c.rank(),
        });
    }
    Ok(())
}

/// Lattice points of the cone within the bound, sorted.
pub fn bounded_points(c: &Cone, bound: &Bound) -> Result<Vec<LatticeVector>> {
    check_cone(c)?;
    let n = c.rank();
    let mut ineqs: Vec<Inequality> = c
        .facets()
        .iter()
        .map(|f| Inequality::new(f.clone(), BigRational::zero()))
        .collect();
    match bound {
        Bound::Degree(b) => ineqs.push(Inequality::new(
            -&default_functional(c),
            BigRational::from_integer((*b).into()),
        )),
        Bound::Functional(f, b) => {
            if f.rank() != n {
                return Err(Error::RankMismatch {
                    expected: n,
                    found: f.rank(),
                });
            }
            if c.rays().iter().any(|r| !f.dot(r).is_positive()) {
                return Err(Error::InvalidDatum(format!(
                    "functional {f} is not positive on every ray"
                )));
            }
            ineqs.push(Inequality::new(-f, BigRational::from_integer((*b).into())));
        }
        Bound::Box(b) => {
            for i in 0..n {
                let e = LatticeVector::unit(n, i);
                ineqs.push(Inequality::new(
                    e.clone(),
                    BigRational::from_integer((*b).into()),
                ));
                ineqs.push(Inequality::new(-&e, BigRational::from_integer((*b).into())));
            }
        }
    }
    Polyhedron::from_constraints(n, &ineqs, &[])?.lattice_points()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertBasis {
    pub generators: Vec<LatticeVector>,
    /// Every Hilbert basis element provably lies within the bound.
    pub complete: bool,
    /// Points examined.
    pub examined: usize,
}

/// Whether the bound reaches past the half-open parallelepipeds spanned by
/// the rays, which contain every irreducible element.
fn bound_is_complete(c: &Cone, bound: &Bound) -> bool {
    let rays = c.rays();
    match bound {
        Bound::Degree(b) => {
            let f = default_functional(c);
            rays.iter().map(|r| f.dot(r)).sum::<BigInt>() <= BigInt::from(*b) + 1
        }
        Bound::Functional(f, b) => {
            rays.iter().map(|r| f.dot(r)).sum::<BigInt>() <= BigInt::from(*b) + 1
        }
        Bound::Box(b) => (0..c.rank())
            .all(|i| rays.iter().map(|r| r.0[i].abs()).sum::<BigInt>() <= BigInt::from(*b) + 1),
    }
}

/// Minimal generators of the semigroup of lattice points of a pointed
/// full-dimensional cone, found among the points within the bound.
pub fn hilbert_basis(c: &Cone, bound: &Bound) -> Result<HilbertBasis> {
    let mut points = bounded_points(c, bound)?;
    let f = match bound {
        Bound::Functional(f, _) => f.clone(),
        _ => default_functional(c),
    };
    points.retain(|p| !p.is_zero());
    points.sort_by(|a, b| f.dot(a).cmp(&f.dot(b)).then_with(|| a.cmp(b)));
    let mut generators: Vec<LatticeVector> = Vec::new();
    for p in &points {
        let reducible = generators.iter().any(|g| c.contains(&(p - g)));
        if !reducible {
            generators.push(p.clone());
        }
    }
    generators.sort();
    Ok(HilbertBasis {
        complete: bound_is_complete(c, bound),
        examined: points.len(),
        generators,
    })
}

/// Lattice points with every facet pairing positive, within the bound.
pub fn interior_points(c: &Cone, bound: &Bound) -> Result<Vec<LatticeVector>> {
    Ok(bounded_points(c, bound)?
        .into_iter()
        .filter(|p| c.facets().iter().all(|f| f.dot(p).is_positive()))
        .collect())
}

/// Exponent vectors of Cox monomials, one entry per ray.
pub type Exponents = Vec<u64>;

fn cox_exponents(rays: &[LatticeVector], u: &LatticeVector) -> Option<Exponents> {
    rays.iter().map(|r| r.dot(u).to_u64()).collect()
}

fn divide(m: &[u64], d: &[u64]) -> Option<Exponents> {
    m.iter().zip(d).map(|(a, b)| a.checked_sub(*b)).collect()
}

fn multiply(m: &[u64], d: &[u64]) -> Exponents {
    m.iter().zip(d).map(|(a, b)| a + b).collect()
}

fn power(m: &[u64], e: u64) -> Exponents {
    m.iter().map(|a| a * e).collect()
}

/// The monomials `y_i`, `z_i` of the enlarged cone.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Binomials {
    y: Vec<Exponents>,
    z: Vec<Exponents>,
}

impl Binomials {
    fn new(t: &TildeData) -> Self {
        let n = t.n;
        let pick = |i: usize, positive: bool| -> Exponents {
            t.rays
                .iter()
                .map(|r| {
                    let a = &r.ray.0[n + i];
                    match (positive, a.is_positive(), a.is_negative()) {
                        (true, true, _) => a.to_u64().expect("small exponent"),
                        (false, _, true) => (-a).to_u64().expect("small exponent"),
                        _ => 0,
                    }
                })
                .collect()
        };
        Self {
            y: (0..t.k).map(|i| pick(i, true)).collect(),
            z: (0..t.k).map(|i| pick(i, false)).collect(),
        }
    }
}

/// One step `sign * m * (y_i - z_i)` of a combination of the binomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinomialStep {
    pub sign: i8,
    pub multiplier: Exponents,
    pub index: usize,
}

/// Certificate that `Cox(r) - Cox(s)` lies in the ideal of the binomials
/// when `r` and `s` have the same image in `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelWitness {
    pub r: LatticeVector,
    pub s: LatticeVector,
    pub a_plus: Vec<u64>,
    pub a_minus: Vec<u64>,
    pub q: LatticeVector,
    /// `Cox(r) = p_r * prod y_i^{a_i+}` and `Cox(q) = p_r * prod z_i^{a_i+}`.
    pub p_r: Exponents,
    /// `Cox(s) = p_s * prod y_i^{a_i-}` and `Cox(q) = p_s * prod z_i^{a_i-}`.
    pub p_s: Exponents,
    /// `Cox(r) - Cox(s) = sum of steps`.
    pub steps: Vec<BinomialStep>,
}

/// Steps with `p * (prod y^a - prod z^a) = sum`, replacing one `y_i` by
/// `z_i` at a time.
fn telescope(p: &[u64], a: &[u64], b: &Binomials, sign: i8, steps: &mut Vec<BinomialStep>) {
    let mut current: Exponents = p.to_vec();
    for (i, &ai) in a.iter().enumerate() {
        current = multiply(&current, &power(&b.y[i], ai));
    }
    for (i, &ai) in a.iter().enumerate() {
        for _ in 0..ai {
            let m = divide(&current, &b.y[i]).expect("y_i still present");
            current = multiply(&m, &b.z[i]);
            steps.push(BinomialStep {
                sign,
                multiplier: m,
                index: i,
            });
        }
    }
}

type Poly = BTreeMap<Exponents, i64>;

fn add_term(f: &mut Poly, m: Exponents, c: i64) {
    let e = f.entry(m).or_insert(0);
    *e += c;
    if *e == 0 {
        f.retain(|_, v| *v != 0);
    }
}

impl KernelWitness {
    fn build(
        t: &TildeData,
        b: &Binomials,
        r: &LatticeVector,
        s: &LatticeVector,
    ) -> std::result::Result<Self, String> {
        let n = t.n;
        let rays = t.ray_vectors();
        let diff = r - s;
        if diff.0[..n].iter().any(|c| !c.is_zero()) {
            return Err(format!("{r} and {s} have different images"));
        }
        let a: Vec<i64> = diff.0[n..]
            .iter()
            .map(|c| c.to_i64().expect("small"))
            .collect();
        let a_plus: Vec<u64> = a.iter().map(|&x| x.max(0) as u64).collect();
        let a_minus: Vec<u64> = a.iter().map(|&x| (-x).max(0) as u64).collect();
        let mut q = r.clone();
        for (i, &ap) in a_plus.iter().enumerate() {
            q.0[n + i] -= ap;
        }
        let cox = |u: &LatticeVector| {
            cox_exponents(&rays, u).ok_or_else(|| format!("{u} is not in the dual cone"))
        };
        let (cr, cs) = (cox(r)?, cox(s)?);
        cox(&q)?;
        let factor = |c: &[u64], a: &[u64]| -> std::result::Result<Exponents, String> {
            let ys = a
                .iter()
                .enumerate()
                .fold(vec![0; rays.len()], |acc, (i, &e)| {
                    multiply(&acc, &power(&b.y[i], e))
                });
            divide(c, &ys).ok_or_else(|| "the y-monomials do not divide".to_string())
        };
        let p_r = factor(&cr, &a_plus)?;
        let p_s = factor(&cs, &a_minus)?;
        let mut steps = Vec::new();
        telescope(&p_r, &a_plus, b, 1, &mut steps);
        telescope(&p_s, &a_minus, b, -1, &mut steps);
        let w = Self {
            r: r.clone(),
            s: s.clone(),
            a_plus,
            a_minus,
            q,
            p_r,
            p_s,
            steps,
        };
        w.check(t).map(|()| w)
    }

    /// Recomputes every identity from exponent arithmetic.
    pub fn check(&self, t: &TildeData) -> std::result::Result<(), String> {
        let rays = t.ray_vectors();
        let b = Binomials::new(t);
        let cox = |u: &LatticeVector| {
            cox_exponents(&rays, u).ok_or_else(|| format!("{u} is not in the dual cone"))
        };
        let (cr, cs, cq) = (cox(&self.r)?, cox(&self.s)?, cox(&self.q)?);
        let prod = |p: &[u64], a: &[u64], side: &[Exponents]| {
            a.iter().enumerate().fold(p.to_vec(), |acc, (i, &e)| {
                multiply(&acc, &power(&side[i], e))
            })
        };
        if prod(&self.p_r, &self.a_plus, &b.y) != cr || prod(&self.p_r, &self.a_plus, &b.z) != cq {
            return Err(format!("factorisation through q fails for r = {}", self.r));
        }
        if prod(&self.p_s, &self.a_minus, &b.y) != cs || prod(&self.p_s, &self.a_minus, &b.z) != cq
        {
            return Err(format!("factorisation through q fails for s = {}", self.s));
        }
        let mut f: Poly = BTreeMap::new();
        for st in &self.steps {
            add_term(
                &mut f,
                multiply(&st.multiplier, &b.y[st.index]),
                i64::from(st.sign),
            );
            add_term(
                &mut f,
                multiply(&st.multiplier, &b.z[st.index]),
                -i64::from(st.sign),
            );
        }
        let mut target: Poly = BTreeMap::new();
        add_term(&mut target, cr, 1);
        add_term(&mut target, cs, -1);
        if f != target {
            return Err(format!(
                "binomial combination does not expand to Cox({}) - Cox({})",
                self.r, self.s
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleFailure {
    pub point: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeZeroReport {
    /// Pairs `r != s` with the same image that were certified.
    pub checked: usize,
    /// Monomials `p * z_i` of degree zero lifted back to pairs.
    pub reverse_checked: usize,
    pub points: usize,
    pub failures: Vec<OracleFailure>,
}

impl DegreeZeroReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn dual_points(t: &TildeData, bound: u64) -> Result<Vec<LatticeVector>> {
    // Sum of facet pairings of the dual = total degree of the Cox monomial.
    bounded_points(
        &t.sigma_tilde.dual(),
        &Bound::Functional(t.sigma_tilde.interior_vector(), bound),
    )
}

/// Checks that the kernel of `C[dual of enlarged cone] -> C[dual of sigma]`
/// maps into the ideal of the binomials, and conversely, on all characters of
/// Cox degree at most `bound`.
pub fn degree_zero_equality_check(t: &TildeData, bound: u64) -> Result<DegreeZeroReport> {
    let n = t.n;
    let b = Binomials::new(t);
    let points = dual_points(t, bound)?;
    let dual = t.sigma_tilde.dual();
    let mut groups: BTreeMap<Vec<BigInt>, Vec<&LatticeVector>> = BTreeMap::new();
    for p in &points {
        groups.entry(p.0[..n].to_vec()).or_default().push(p);
    }
    let mut failures = Vec::new();
    let mut checked = 0;
    for group in groups.values() {
        for (i, r) in group.iter().enumerate() {
            for s in &group[i + 1..] {
                checked += 1;
                if let Err(reason) = KernelWitness::build(t, &b, r, s) {
                    failures.push(OracleFailure {
                        point: format!("{r} ~ {s}"),
                        reason,
                    });
                }
            }
        }
    }
    let rays = t.ray_vectors();
    let mut reverse_checked = 0;
    for s in &points {
        let cs = cox_exponents(&rays, s).expect("dual point");
        for i in 0..t.k {
            let Some(p) = divide(&cs, &b.z[i]) else {
                continue;
            };
            reverse_checked += 1;
            let mut r = s.clone();
            r.0[n + i] += 1;
            let ok = dual.contains(&r) && cox_exponents(&rays, &r) == Some(multiply(&p, &b.y[i]));
            if !ok {
                failures.push(OracleFailure {
                    point: s.to_string(),
                    reason: format!("p * y_{} is not Cox({r})", i + 1),
                });
            }
        }
    }
    Ok(DegreeZeroReport {
        checked,
        reverse_checked,
        points: points.len(),
        failures,
    })
}

/// How a monomial was shown to lie in the binomials-plus-monomial ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MembershipCertificate {
    /// The boundary monomial divides it.
    Divisible,
    /// It is `p * y_i` with the monomial dividing `p * z_i`.
    Swap { index: usize },
    /// Binomial moves lead to a character certified by one of the above.
    Moves {
        path: Vec<LatticeVector>,
        last: Box<MembershipCertificate>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryReport {
    pub checked: usize,
    pub interior: usize,
    pub failures: Vec<OracleFailure>,
}

impl BoundaryReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn direct_certificate(m: &[u64], z: &[u64], b: &Binomials) -> Option<MembershipCertificate> {
    if divide(m, z).is_some() {
        return Some(MembershipCertificate::Divisible);
    }
    (0..b.y.len()).find_map(|i| {
        let p = divide(m, &b.y[i])?;
        divide(&multiply(&p, &b.z[i]), z).map(|_| MembershipCertificate::Swap { index: i })
    })
}

/// Searches the fibre of `u` under the projection to `M` for a certifiable
/// character, moving by `+- e_i*`.
fn membership(
    t: &TildeData,
    dual: &Cone,
    z: &[u64],
    b: &Binomials,
    u: &LatticeVector,
) -> Option<MembershipCertificate> {
    let rays = t.ray_vectors();
    let cox = |v: &LatticeVector| cox_exponents(&rays, v);
    if let Some(c) = direct_certificate(&cox(u)?, z, b) {
        return Some(c);
    }
    let mut seen: BTreeMap<LatticeVector, Option<LatticeVector>> =
        BTreeMap::from([(u.clone(), None)]);
    let mut queue = VecDeque::from([u.clone()]);
    while let Some(v) = queue.pop_front() {
        for i in 0..t.k {
            for step in [1i64, -1] {
                let mut next = v.clone();
                next.0[t.n + i] += step;
                if seen.contains_key(&next) || !dual.contains(&next) {
                    continue;
                }
                seen.insert(next.clone(), Some(v.clone()));
                if let Some(c) = direct_certificate(&cox(&next)?, z, b) {
                    let mut path = vec![next.clone()];
                    let mut cur = next;
                    while let Some(Some(prev)) = seen.get(&cur) {
                        path.push(prev.clone());
                        cur = prev.clone();
                    }
                    path.reverse();
                    return Some(MembershipCertificate::Moves {
                        path,
                        last: Box::new(c),
                    });
                }
                queue.push_back(next);
            }
        }
    }
    None
}

/// Checks, for characters of Cox degree at most `bound`, that the image in
/// `M` is interior to the dual of `sigma` exactly when the Cox monomial lies
/// in the ideal of the binomials and the boundary monomial.
pub fn boundary_equality_check(t: &TildeData, bound: u64) -> Result<BoundaryReport> {
    let n = t.n;
    let b = Binomials::new(t);
    let z: Exponents = t
        .rays
        .iter()
        .map(|r| u64::from(r.e_pairings.iter().all(|a| !a.is_positive())))
        .collect();
    let sigma_rays = sigma_rays(t)?;
    let dual = t.sigma_tilde.dual();
    let points = dual_points(t, bound)?;
    let mut failures = Vec::new();
    let mut interior = 0;
    for u in &points {
        let base = u.truncated(n);
        let is_interior = sigma_rays.iter().all(|r| r.dot(&base).is_positive());
        interior += usize::from(is_interior);
        let cert = membership(t, &dual, &z, &b, u);
        if is_interior != cert.is_some() {
            let reason = match cert {
                Some(c) => format!("not interior but in the ideal via {c:?}"),
                None => "interior but no membership certificate".to_string(),
            };
            failures.push(OracleFailure {
                point: u.to_string(),
                reason,
            });
        }
    }
    Ok(BoundaryReport {
        checked: points.len(),
        interior,
        failures,
    })
}

/// Rays of `sigma = enlarged cone cap N`.
pub fn sigma_rays(t: &TildeData) -> Result<Vec<LatticeVector>> {
    let rank = t.n + t.k;
    let eqs: Vec<LatticeVector> = (0..t.k)
        .map(|i| LatticeVector::unit(rank, t.n + i))
        .collect();
    let c = Cone::from_inequalities(rank, t.sigma_tilde.facets(), &eqs)?;
    let mut rays: BTreeSet<LatticeVector> = BTreeSet::new();
    for r in c.rays() {
        rays.insert(r.truncated(t.n));
    }
    Ok(rays.into_iter().collect())
}
