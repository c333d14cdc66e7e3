//! Seeded random generators shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toric_deform::datum::sigma_slice;
use toric_deform::{
    validate_datum, validate_mutation_datum, Cone, DeformationDatum, FanoPolytope, LatticeVector,
    MutationDatum, Polyhedron, RationalVector,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn lv(c: &[i64]) -> LatticeVector {
    LatticeVector::from_i64s(c)
}

pub fn random_vector(rng: &mut impl Rng, n: usize, r: i64) -> LatticeVector {
    LatticeVector::from_i64s(&(0..n).map(|_| rng.gen_range(-r..=r)).collect::<Vec<_>>())
}

fn nonzero_vector(rng: &mut impl Rng, n: usize, r: i64) -> LatticeVector {
    loop {
        let v = random_vector(rng, n, r);
        if !v.is_zero() {
            return v;
        }
    }
}

/// A strongly convex full-dimensional cone on `n..=n+2` generators in `[-r, r]^n`.
pub fn random_cone(rng: &mut impl Rng, n: usize, r: i64) -> Cone {
    loop {
        let m = rng.gen_range(n..=n + 2);
        let gens: Vec<LatticeVector> = (0..m).map(|_| nonzero_vector(rng, n, r)).collect();
        if let Ok(c) = Cone::from_generators(n, &gens) {
            if c.is_strongly_convex() && c.is_full_dimensional() {
                return c;
            }
        }
    }
}

/// Any cone of rank `n` on up to four generators, possibly with lineality.
pub fn random_any_cone(rng: &mut impl Rng, n: usize, r: i64) -> Cone {
    let m = rng.gen_range(1..=4);
    let gens: Vec<LatticeVector> = (0..m).map(|_| random_vector(rng, n, r)).collect();
    Cone::from_generators(n, &gens).expect("same rank")
}

pub fn random_points(rng: &mut impl Rng, n: usize, count: usize, r: i64) -> Vec<RationalVector> {
    (0..count)
        .map(|_| random_vector(rng, n, r).to_rational())
        .collect()
}

/// Convex hull of a few points in `[-r, r]^n`, with an optional recession ray
/// in the positive orthant (so that sums stay pointed).
pub fn random_polyhedron(rng: &mut impl Rng, n: usize, r: i64) -> Polyhedron {
    let count = rng.gen_range(1..=5);
    let pts = random_points(rng, n, count, r);
    let mut rays = Vec::new();
    if rng.gen_bool(0.3) {
        let ray = loop {
            let v =
                LatticeVector::from_i64s(&(0..n).map(|_| rng.gen_range(0..=2)).collect::<Vec<_>>());
            if !v.is_zero() {
                break v;
            }
        };
        rays.push(ray);
    }
    Polyhedron::convex_hull(n, &pts, &rays).expect("non-empty input")
}

pub fn random_polytope(rng: &mut impl Rng, n: usize, r: i64) -> Polyhedron {
    let count = rng.gen_range(1..=6);
    Polyhedron::from_points(n, &random_points(rng, n, count, r)).expect("non-empty input")
}

/// Lattice points of `sigma` in `[-r, r]^n` on which `w` is non-negative.
fn nonnegative_points(sigma: &Cone, w: &LatticeVector, r: i64) -> Vec<LatticeVector> {
    let n = sigma.rank();
    let mut out = Vec::new();
    let mut c = vec![-r; n];
    loop {
        let v = LatticeVector::from_i64s(&c);
        if !v.is_zero() && sigma.contains(&v) && w.dot(&v) >= BigInt::from(0) {
            out.push(v);
        }
        let mut i = 0;
        while i < n && c[i] == r {
            c[i] = -r;
            i += 1;
        }
        if i == n {
            return out;
        }
        c[i] += 1;
    }
}

/// A valid datum with `n <= 3`, `k <= 2` and input coordinates at most 5.
///
/// `Q_0` is a scaled copy of `sigma cap {w = -1}`, possibly translated, and
/// the other summands are lattice polytopes through 0 where `w >= 0`.
pub fn random_datum(rng: &mut impl Rng) -> DeformationDatum {
    loop {
        let n = rng.gen_range(2..=3);
        let k = rng.gen_range(1..=2);
        let sigma = random_cone(rng, n, 3);
        let w = nonzero_vector(rng, n, 2);
        if sigma.rays().iter().all(|r| w.dot(r) >= BigInt::from(0)) {
            continue;
        }
        let Ok(slice) = sigma_slice(&sigma, &w) else {
            continue;
        };
        let lambda = [(1, 1), (1, 2), (2, 3), (1, 1)]
            .choose(rng)
            .copied()
            .unwrap();
        let mut q0 = slice.scale(&BigRational::new(lambda.0.into(), lambda.1.into()));
        let cands = nonnegative_points(&sigma, &w, 2);
        if !cands.is_empty() && rng.gen_bool(0.3) {
            q0 = q0.translate(&cands.choose(rng).unwrap().to_rational());
        }
        let mut summands = vec![q0];
        for _ in 0..k {
            let mut pts = vec![RationalVector::zero(n)];
            for _ in 0..rng.gen_range(0..=2) {
                if let Some(p) = cands.choose(rng) {
                    pts.push(p.to_rational());
                }
            }
            summands.push(Polyhedron::from_points(n, &pts).expect("non-empty"));
        }
        let Ok(d) = DeformationDatum::new(sigma, summands, w, true) else {
            continue;
        };
        if validate_datum(&d).is_valid() {
            return d;
        }
    }
}

pub fn datum_corpus(seed: u64, size: usize) -> Vec<DeformationDatum> {
    let mut r = rng(seed);
    (0..size).map(|_| random_datum(&mut r)).collect()
}

pub fn random_fano_polygon(rng: &mut impl Rng) -> FanoPolytope {
    loop {
        let count = rng.gen_range(3..=6);
        let pts: Vec<RationalVector> = (0..count)
            .map(|_| random_vector(rng, 2, 3).to_rational())
            .collect();
        let Ok(p) = Polyhedron::from_points(2, &pts) else {
            continue;
        };
        if let Ok(f) = FanoPolytope::new(p) {
            return f;
        }
    }
}

pub fn random_fano_3d(rng: &mut impl Rng) -> FanoPolytope {
    loop {
        let count = rng.gen_range(4..=7);
        let pts: Vec<RationalVector> = (0..count)
            .map(|_| random_vector(rng, 3, 2).to_rational())
            .collect();
        let Ok(p) = Polyhedron::from_points(3, &pts) else {
            continue;
        };
        if let Ok(f) = FanoPolytope::new(p) {
            return f;
        }
    }
}

/// A Fano polygon with a valid mutation datum whose factor is a segment.
pub fn random_mutation(rng: &mut impl Rng) -> (FanoPolytope, MutationDatum) {
    loop {
        let p = random_fano_polygon(rng);
        let w = nonzero_vector(rng, 2, 2);
        if !w.is_primitive() {
            continue;
        }
        let u = lv(&[0, 0]);
        let dir = LatticeVector::new(vec![-w.0[1].clone(), w.0[0].clone()]);
        let len = BigInt::from(rng.gen_range(1..=2));
        let f = Polyhedron::from_points(2, &[u.to_rational(), dir.scale(&len).to_rational()])
            .expect("segment");
        if let Ok(d) = validate_mutation_datum(&p, &w, &f) {
            let (min, _) = p.height_range(&w);
            if min < BigInt::from(0) {
                return (p, d);
            }
        }
    }
}

pub fn mutation_corpus(seed: u64, size: usize) -> Vec<(FanoPolytope, MutationDatum)> {
    let mut r = rng(seed);
    (0..size).map(|_| random_mutation(&mut r)).collect()
}

/// Lattice points of a cone with coordinates in `[-r, r]`.
pub fn cone_points_in_box(c: &Cone, r: i64) -> Vec<LatticeVector> {
    let n = c.rank();
    let mut out = Vec::new();
    let mut coords = vec![-r; n];
    loop {
        let v = LatticeVector::from_i64s(&coords);
        if c.contains(&v) {
            out.push(v);
        }
        let mut i = 0;
        while i < n && coords[i] == r {
            coords[i] = -r;
            i += 1;
        }
        if i == n {
            return out;
        }
        coords[i] += 1;
    }
}

/// Lattice points of the hull of full-dimensional `pts` (rank 2 or 3), from
/// every supporting hyperplane through `rank` of the input points.
pub fn brute_force_lattice_points(pts: &[Vec<i64>]) -> Vec<LatticeVector> {
    let n = pts[0].len();
    let mut halfspaces: Vec<(Vec<i64>, i64)> = Vec::new();
    let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
    let sub = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<i64>>();
    let mut consider = |normal: Vec<i64>, base: &[i64]| {
        if normal.iter().all(|&c| c == 0) {
            return;
        }
        let c = dot(&normal, base);
        let vals: Vec<i64> = pts.iter().map(|p| dot(&normal, p) - c).collect();
        if vals.iter().all(|&v| v >= 0) {
            halfspaces.push((normal, c));
        } else if vals.iter().all(|&v| v <= 0) {
            halfspaces.push((normal.iter().map(|x| -x).collect(), -c));
        }
    };
    for (i, a) in pts.iter().enumerate() {
        for (j, b) in pts.iter().enumerate().skip(i + 1) {
            let ab = sub(b, a);
            if n == 2 {
                consider(vec![-ab[1], ab[0]], a);
                continue;
            }
            for c in pts.iter().skip(j + 1) {
                let ac = sub(c, a);
                let cross = vec![
                    ab[1] * ac[2] - ab[2] * ac[1],
                    ab[2] * ac[0] - ab[0] * ac[2],
                    ab[0] * ac[1] - ab[1] * ac[0],
                ];
                consider(cross, a);
            }
        }
    }
    let lo: Vec<i64> = (0..n)
        .map(|i| pts.iter().map(|p| p[i]).min().unwrap())
        .collect();
    let hi: Vec<i64> = (0..n)
        .map(|i| pts.iter().map(|p| p[i]).max().unwrap())
        .collect();
    let mut out = Vec::new();
    let mut x = lo.clone();
    loop {
        if halfspaces.iter().all(|(a, c)| dot(a, &x) >= *c) {
            out.push(LatticeVector::from_i64s(&x));
        }
        let mut i = 0;
        while i < n && x[i] == hi[i] {
            x[i] = lo[i];
            i += 1;
        }
        if i == n {
            break;
        }
        x[i] += 1;
    }
    out.sort();
    out
}

/// Random full-dimensional point sets, as integer coordinates.
pub fn full_dimensional_points(seed: u64) -> Vec<Vec<i64>> {
    let mut r = rng(seed);
    let n = if seed.is_multiple_of(2) { 2 } else { 3 };
    loop {
        let count = r.gen_range(n + 1..=n + 4);
        let pts: Vec<Vec<i64>> = (0..count)
            .map(|_| random_vector(&mut r, n, 3).to_i64s().unwrap())
            .collect();
        let refs: Vec<&[i64]> = pts.iter().map(Vec::as_slice).collect();
        if Polyhedron::from_i64_points(&refs)
            .unwrap()
            .is_full_dimensional()
        {
            return pts;
        }
    }
}

pub fn same_cone(a: &Cone, b: &Cone) -> bool {
    a.rays() == b.rays()
        && a.lineality() == b.lineality()
        && a.facets() == b.facets()
        && a.equations() == b.equations()
}
