//! Polyhedral cones via the double description method.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{
    canonical_subspace_basis, dot, make_primitive, project_off, LatticeVector, RationalVector,
};

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(bits: usize) -> Self {
        Self(vec![0; bits.div_ceil(64).max(1)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset(&self, other: &BitSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

struct DdRay {
    v: Vec<BigInt>,
    zeros: BitSet,
}

/// Output of the double description method for `{x : <a, x> >= 0}`.
pub(crate) struct DdOutput {
    pub lineality: Vec<Vec<BigInt>>,
    pub rays: Vec<Vec<BigInt>>,
}

/// Computes generators of `{x in Q^dim : <a, x> >= 0 for all a}`.
///
/// The cone is kept as a lineality basis plus extreme rays modulo lineality.
/// Constraints that cut the lineality space turn one lineality vector into a
/// ray; all others are handled by the usual adjacency-based combination step.
pub(crate) fn double_description(dim: usize, constraints: &[Vec<BigInt>]) -> DdOutput {
    let m = constraints.len();
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<DdRay> = Vec::new();

    for (idx, a) in constraints.iter().enumerate() {
        if a.iter().all(Zero::is_zero) {
            for r in rays.iter_mut() {
                r.zeros.set(idx);
            }
            continue;
        }
        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lineality.remove(pos);
            let mut s = dot(a, &l0);
            if s.is_negative() {
                for c in l0.iter_mut() {
                    *c = -&*c;
                }
                s = -s;
            }
            for l in lineality.iter_mut() {
                let c = dot(a, l);
                if !c.is_zero() {
                    for (x, y) in l.iter_mut().zip(&l0) {
                        *x = &*x * &s - &c * y;
                    }
                    make_primitive(l);
                }
            }
            for r in rays.iter_mut() {
                let c = dot(a, &r.v);
                if !c.is_zero() {
                    for (x, y) in r.v.iter_mut().zip(&l0) {
                        *x = &*x * &s - &c * y;
                    }
                    make_primitive(&mut r.v);
                }
                r.zeros.set(idx);
            }
            // l0 vanished on every earlier constraint.
            let mut zeros = BitSet::new(m);
            for j in 0..idx {
                zeros.set(j);
            }
            make_primitive(&mut l0);
            rays.push(DdRay { v: l0, zeros });
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();
        let neg: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();
        let mut next: Vec<DdRay> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros.and(&rays[n].zeros);
                let adjacent = (0..rays.len())
                    .filter(|&r| r != p && r != n)
                    .all(|r| !common.is_subset(&rays[r].zeros));
                if !adjacent {
                    continue;
                }
                let ap = &values[p];
                let an = -&values[n];
                let mut v: Vec<BigInt> = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(x, y)| ap * x + &an * y)
                    .collect();
                make_primitive(&mut v);
                let mut zeros = common;
                zeros.set(idx);
                next.push(DdRay { v, zeros });
            }
        }
        let mut kept: Vec<DdRay> = Vec::new();
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i].is_zero() {
                r.zeros.set(idx);
                kept.push(r);
            } else if values[i].is_positive() {
                kept.push(r);
            }
        }
        kept.extend(next);
        rays = kept;
    }

    DdOutput {
        lineality,
        rays: rays.into_iter().map(|r| r.v).collect(),
    }
}

/// A rational polyhedral cone with both representations in canonical form.
///
/// `rays` are the primitive extreme rays modulo the lineality space (projected
/// onto its orthogonal complement); `facets` are primitive inner normals
/// modulo the equation space. Both lists are sorted.
#[derive(Clone, Debug)]
pub struct Cone {
    rank: usize,
    generators: Vec<LatticeVector>,
    rays: Vec<LatticeVector>,
    lineality: Vec<LatticeVector>,
    facets: Vec<LatticeVector>,
    equations: Vec<LatticeVector>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.rays == other.rays && self.lineality == other.lineality
    }
}

impl Eq for Cone {}

fn check_ranks(rank: usize, vectors: &[LatticeVector]) -> Result<()> {
    match vectors.iter().find(|v| v.rank() != rank) {
        Some(v) => Err(Error::RankMismatch {
            expected: rank,
            found: v.rank(),
        }),
        None => Ok(()),
    }
}

fn canonical_pointed_part(
    vectors: Vec<Vec<BigInt>>,
    subspace: &[Vec<BigInt>],
) -> Vec<LatticeVector> {
    let mut out: Vec<LatticeVector> = vectors
        .iter()
        .filter_map(|v| project_off(v, subspace))
        .map(LatticeVector)
        .collect();
    out.sort();
    out.dedup();
    out
}

impl Cone {
    /// The conical hull of `gens`.
    pub fn from_generators(rank: usize, gens: &[LatticeVector]) -> Result<Cone> {
        check_ranks(rank, gens)?;
        let gen_rows: Vec<Vec<BigInt>> = gens.iter().map(|g| g.0.clone()).collect();
        let dual = double_description(rank, &gen_rows);
        let equations = canonical_subspace_basis(&dual.lineality);

        let mut h_rep: Vec<Vec<BigInt>> = dual.rays.clone();
        for e in &dual.lineality {
            h_rep.push(e.clone());
            h_rep.push(e.iter().map(|c| -c).collect());
        }
        let primal = double_description(rank, &h_rep);
        let lineality = canonical_subspace_basis(&primal.lineality);

        Ok(Cone {
            rank,
            generators: gens.to_vec(),
            rays: canonical_pointed_part(primal.rays, &lineality),
            lineality: lineality.into_iter().map(LatticeVector).collect(),
            facets: canonical_pointed_part(dual.rays, &equations),
            equations: equations.into_iter().map(LatticeVector).collect(),
        })
    }

    /// The cone `{x : <a, x> >= 0 for a in ineqs, <e, x> = 0 for e in eqs}`.
    pub fn from_inequalities(
        rank: usize,
        ineqs: &[LatticeVector],
        eqs: &[LatticeVector],
    ) -> Result<Cone> {
        check_ranks(rank, ineqs)?;
        check_ranks(rank, eqs)?;
        let mut rows: Vec<Vec<BigInt>> = ineqs.iter().map(|a| a.0.clone()).collect();
        for e in eqs {
            rows.push(e.0.clone());
            rows.push((-e).0);
        }
        let dd = double_description(rank, &rows);
        let mut gens: Vec<LatticeVector> = dd.rays.into_iter().map(LatticeVector).collect();
        for l in dd.lineality {
            let l = LatticeVector(l);
            gens.push(-&l);
            gens.push(l);
        }
        Cone::from_generators(rank, &gens)
    }

    pub fn zero(rank: usize) -> Cone {
        Cone::from_generators(rank, &[]).expect("no generators")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[LatticeVector] {
        &self.lineality
    }

    pub fn facets(&self) -> &[LatticeVector] {
        &self.facets
    }

    pub fn equations(&self) -> &[LatticeVector] {
        &self.equations
    }

    pub fn is_strongly_convex(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.rank - self.equations.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    /// `{u : <u, v> >= 0 for all v in self}`.
    pub fn dual(&self) -> Cone {
        let mut gens = self.facets.clone();
        for e in &self.equations {
            gens.push(e.clone());
            gens.push(-e);
        }
        Cone::from_generators(self.rank, &gens).expect("ranks agree")
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        self.facets.iter().all(|f| !f.dot(v).is_negative())
            && self.equations.iter().all(|e| e.dot(v).is_zero())
    }

    pub fn contains_rational(&self, v: &RationalVector) -> bool {
        self.facets.iter().all(|f| !f.dot_rational(v).is_negative())
            && self.equations.iter().all(|e| e.dot_rational(v).is_zero())
    }

    /// Relative interior membership: every facet pairs strictly positively.
    pub fn contains_in_relative_interior(&self, v: &LatticeVector) -> bool {
        self.facets.iter().all(|f| f.dot(v).is_positive())
            && self.equations.iter().all(|e| e.dot(v).is_zero())
    }

    /// Interior membership in the ambient space.
    pub fn contains_in_interior(&self, v: &LatticeVector) -> bool {
        self.is_full_dimensional() && self.contains_in_relative_interior(v)
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        if other.rank != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Cone::from_inequalities(self.rank, &ineqs, &eqs)
    }

    /// Rays lying on the facet with inner normal `facet`.
    pub fn rays_on(&self, facet: &LatticeVector) -> Vec<usize> {
        (0..self.rays.len())
            .filter(|&i| facet.dot(&self.rays[i]).is_zero())
            .collect()
    }

    /// Rays plus both signs of each lineality vector.
    pub fn generators_or_rays(&self) -> Vec<LatticeVector> {
        let mut gens = self.rays.clone();
        for l in &self.lineality {
            gens.push(l.clone());
            gens.push(-l);
        }
        gens
    }

    /// A point in the relative interior: the sum of all rays.
    pub fn interior_vector(&self) -> LatticeVector {
        self.rays
            .iter()
            .fold(LatticeVector::zero(self.rank), |acc, r| &acc + r)
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rays: Vec<String> = self.rays.iter().map(ToString::to_string).collect();
        write!(f, "cone{{{}}}", rays.join(","))?;
        if !self.lineality.is_empty() {
            let lin: Vec<String> = self.lineality.iter().map(ToString::to_string).collect();
            write!(f, " + span{{{}}}", lin.join(","))?;
        }
        Ok(())
    }
}

/// A fan given by its rays and maximal cones (as ray-index sets).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub rank: usize,
    pub rays: Vec<LatticeVector>,
    pub maximal_cones: Vec<Vec<usize>>,
}

impl Fan {
    /// Canonical form: rays sorted, cones re-indexed and sorted.
    pub fn canonical(rank: usize, rays: Vec<LatticeVector>, cones: Vec<Vec<usize>>) -> Fan {
        let mut order: Vec<usize> = (0..rays.len()).collect();
        order.sort_by(|&a, &b| rays[a].cmp(&rays[b]));
        let mut new_index = vec![0; rays.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let sorted_rays = order.iter().map(|&i| rays[i].clone()).collect();
        let mut maximal_cones: Vec<Vec<usize>> = cones
            .into_iter()
            .map(|c| {
                let mut c: Vec<usize> = c.into_iter().map(|i| new_index[i]).collect();
                c.sort_unstable();
                c
            })
            .collect();
        maximal_cones.sort();
        maximal_cones.dedup();
        Fan {
            rank,
            rays: sorted_rays,
            maximal_cones,
        }
    }

    pub fn cone(&self, index: usize) -> Cone {
        let gens: Vec<LatticeVector> = self.maximal_cones[index]
            .iter()
            .map(|&i| self.rays[i].clone())
            .collect();
        Cone::from_generators(self.rank, &gens).expect("fan rays share the rank")
    }
}
