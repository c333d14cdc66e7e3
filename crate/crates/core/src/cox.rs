//! Cox coordinates, class-group gradings and the explicit equations of the
//! deformations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::datum::TildeData;
use crate::error::{Error, Result};
use crate::lattice::{cokernel, rank_of_rows, ClassDegree, Cokernel, IntMatrix, LatticeVector};

/// An integer times an optional formal parameter, e.g. `-2*t1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coefficient {
    pub int: BigInt,
    pub param: Option<String>,
}

impl Coefficient {
    pub fn int(value: i64) -> Self {
        Self {
            int: BigInt::from(value),
            param: None,
        }
    }

    pub fn param(sign: i64, name: &str) -> Self {
        Self {
            int: BigInt::from(sign),
            param: Some(name.to_string()),
        }
    }

    /// Signed string form: `+t1`, `-1`, `+a`, `-2*t1`.
    pub fn to_signed_string(&self) -> String {
        let sign = if self.int.is_negative() { '-' } else { '+' };
        let abs = self.int.abs();
        match &self.param {
            None => format!("{sign}{abs}"),
            Some(p) if abs.is_one() => format!("{sign}{p}"),
            Some(p) => format!("{sign}{abs}*{p}"),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Malformed(format!("coefficient {s:?}"));
        let s = s.trim();
        let (negative, rest) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let (int, param) = match rest.split_once('*') {
            Some((n, p)) => (n.parse::<BigInt>().map_err(|_| bad())?, Some(p.to_string())),
            None => match rest.parse::<BigInt>() {
                Ok(n) => (n, None),
                Err(_)
                    if !rest.is_empty()
                        && rest.chars().all(|c| c.is_alphanumeric() || c == '_') =>
                {
                    (BigInt::one(), Some(rest.to_string()))
                }
                Err(_) => return Err(bad()),
            },
        };
        Ok(Self {
            int: if negative { -int } else { int },
            param,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub coeff: Coefficient,
    pub exps: Vec<u64>,
}

impl Term {
    pub fn support(&self) -> BTreeSet<usize> {
        (0..self.exps.len()).filter(|&j| self.exps[j] > 0).collect()
    }
}

/// A polynomial in the Cox variables with integer or parameter coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxPolynomial {
    pub terms: Vec<Term>,
}

impl CoxPolynomial {
    pub fn new(terms: Vec<Term>) -> Self {
        Self { terms }.collected()
    }

    pub fn monomial(exps: Vec<u64>) -> Self {
        Self {
            terms: vec![Term {
                coeff: Coefficient::int(1),
                exps,
            }],
        }
    }

    pub fn one(vars: usize) -> Self {
        Self::monomial(vec![0; vars])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_vars(&self) -> usize {
        self.terms.first().map_or(0, |t| t.exps.len())
    }

    /// Merges terms with the same parameter and exponent vector, keeping the
    /// order of first appearance; zero terms are dropped.
    fn collected(self) -> Self {
        let mut out: Vec<Term> = Vec::new();
        for t in self.terms {
            match out
                .iter_mut()
                .find(|o| o.exps == t.exps && o.coeff.param == t.coeff.param)
            {
                Some(o) => o.coeff.int += t.coeff.int,
                None => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.int.is_zero());
        Self { terms: out }
    }

    /// Substitutes integer values for parameters; unknown parameters stay.
    pub fn specialize(&self, values: &BTreeMap<String, BigInt>) -> Self {
        let terms = self
            .terms
            .iter()
            .map(
                |t| match t.coeff.param.as_ref().and_then(|p| values.get(p)) {
                    Some(v) => Term {
                        coeff: Coefficient {
                            int: &t.coeff.int * v,
                            param: None,
                        },
                        exps: t.exps.clone(),
                    },
                    None => t.clone(),
                },
            )
            .collect();
        Self::new(terms)
    }

    pub fn negate(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: Coefficient {
                    int: -&t.coeff.int,
                    param: t.coeff.param.clone(),
                },
                exps: t.exps.clone(),
            })
            .collect();
        Self { terms }
    }

    /// Order-insensitive equality.
    pub fn same_terms(&self, other: &CoxPolynomial) -> bool {
        let mut a = self.terms.clone();
        let mut b = other.terms.clone();
        a.sort();
        b.sort();
        a == b
    }

    /// Equality up to multiplication by `-1`.
    pub fn equal_up_to_sign(&self, other: &CoxPolynomial) -> bool {
        self.same_terms(other) || self.same_terms(&other.negate())
    }

    /// Variables dividing every term.
    pub fn common_variables(&self) -> BTreeSet<usize> {
        let mut iter = self.terms.iter().map(Term::support);
        let first = iter.next().unwrap_or_default();
        iter.fold(first, |acc, s| acc.intersection(&s).copied().collect())
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.terms.iter().flat_map(|t| t.support()).collect()
    }

    /// Pretty form using `names` (indexed by variable) and the print `order`
    /// of variables inside each monomial.
    pub fn format(&self, names: &[String], order: &[usize]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let negative = t.coeff.int.is_negative();
            let abs = t.coeff.int.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() {
                factors.push(abs.to_string());
            }
            if let Some(p) = &t.coeff.param {
                factors.push(p.clone());
            }
            for &j in order {
                match t.exps[j] {
                    0 => {}
                    1 => factors.push(names[j].clone()),
                    e => factors.push(format!("{}^{e}", names[j])),
                }
            }
            if factors.is_empty() {
                factors.push("1".to_string());
            }
            let body = factors.join("*");
            match (i, negative) {
                (0, false) => out.push_str(&body),
                (0, true) => out.push_str(&format!("-{body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
                (_, true) => out.push_str(&format!(" - {body}")),
            }
        }
        out
    }
}

/// Ordered `(ray, name)` pairs; the order is also the print order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AliasTable {
    pub entries: Vec<(LatticeVector, String)>,
}

impl AliasTable {
    pub fn new(entries: Vec<(LatticeVector, String)>) -> Self {
        Self { entries }
    }

    pub fn from_i64s(entries: &[(&[i64], &str)]) -> Self {
        Self {
            entries: entries
                .iter()
                .map(|(r, n)| (LatticeVector::from_i64s(r), n.to_string()))
                .collect(),
        }
    }
}

/// Cox variables of a toric variety given by its rays, with the grading by
/// the class group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxSystem {
    rank: usize,
    rays: Vec<LatticeVector>,
    grading: Cokernel,
    parameters: Vec<String>,
    names: Vec<String>,
    order: Vec<usize>,
}

impl CoxSystem {
    pub fn new(rank: usize, rays: Vec<LatticeVector>, parameters: Vec<String>) -> Result<Self> {
        let matrix = IntMatrix::from_vectors(rank, &rays)?;
        let grading = cokernel(&matrix);
        let names = (0..rays.len()).map(|j| format!("x{j}")).collect();
        let order = (0..rays.len()).collect();
        Ok(Self {
            rank,
            rays,
            grading,
            parameters,
            names,
            order,
        })
    }

    /// Renames the aliased rays and prints them first, in table order.
    pub fn with_aliases(mut self, aliases: &AliasTable) -> Result<Self> {
        let mut order = Vec::new();
        for (ray, name) in &aliases.entries {
            let j = self.rays.iter().position(|r| r == ray).ok_or_else(|| {
                Error::Unknown(format!("alias {name} for {ray}, which is not a ray"))
            })?;
            self.names[j] = name.clone();
            order.push(j);
        }
        for j in 0..self.rays.len() {
            if !order.contains(&j) {
                order.push(j);
            }
        }
        self.order = order;
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn grading(&self) -> &Cokernel {
        &self.grading
    }

    pub fn parameters(&self) -> &[String] {
        &self.parameters
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn print_order(&self) -> &[usize] {
        &self.order
    }

    pub fn index_of(&self, ray: &LatticeVector) -> Option<usize> {
        self.rays.iter().position(|r| r == ray)
    }

    pub fn variable(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Degrees of the variables when the class group is `Z` (weights).
    pub fn weights(&self) -> Option<Vec<BigInt>> {
        if self.grading.group.free_rank != 1 || !self.grading.group.torsion.is_empty() {
            return None;
        }
        Some(
            self.grading
                .degrees
                .iter()
                .map(|d| d.free[0].clone())
                .collect(),
        )
    }

    pub fn term_degree(&self, term: &Term) -> Result<ClassDegree> {
        if term.exps.len() != self.rays.len() {
            return Err(Error::ExponentLength {
                expected: self.rays.len(),
                found: term.exps.len(),
            });
        }
        let exps: Vec<BigInt> = term.exps.iter().map(|&e| BigInt::from(e)).collect();
        Ok(self.grading.degree_of(&exps))
    }

    /// The common degree of all terms, or `None` if they differ.
    pub fn homogeneous_degree(&self, f: &CoxPolynomial) -> Result<Option<ClassDegree>> {
        let mut degree: Option<ClassDegree> = None;
        for t in &f.terms {
            let d = self.term_degree(t)?;
            match &degree {
                Some(prev) if *prev != d => return Ok(None),
                _ => degree = Some(d),
            }
        }
        Ok(Some(degree.unwrap_or_else(|| self.grading.degree_of(&[]))))
    }

    pub fn is_homogeneous(&self, f: &CoxPolynomial) -> bool {
        matches!(self.homogeneous_degree(f), Ok(Some(_)))
    }

    pub fn format(&self, f: &CoxPolynomial) -> String {
        f.format(&self.names, &self.order)
    }
}

/// Per-ray pairings `<e_i*, xi>` and `<w, xi>` of a set of Cox variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingTable {
    pub rays: Vec<LatticeVector>,
    pub e_pairings: Vec<Vec<BigInt>>,
    pub w_pairings: Vec<BigInt>,
}

impl PairingTable {
    pub fn from_tilde(t: &TildeData) -> Self {
        Self {
            rays: t.ray_vectors(),
            e_pairings: t.rays.iter().map(|r| r.e_pairings.clone()).collect(),
            w_pairings: t.rays.iter().map(|r| r.w_pairing.clone()).collect(),
        }
    }

    pub fn k(&self) -> usize {
        self.e_pairings.first().map_or(0, Vec::len)
    }

    /// The `k x rays` matrix of `<e_i*, xi>`.
    pub fn matrix(&self) -> IntMatrix {
        let k = self.k();
        let mut m = IntMatrix::zeros(k, self.rays.len());
        for (j, col) in self.e_pairings.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    fn exps_where(&self, i: usize, pick: impl Fn(&BigInt) -> Option<BigInt>) -> Vec<u64> {
        self.e_pairings
            .iter()
            .map(|col| pick(&col[i]).map_or(0, |e| e.to_u64().expect("exponent fits in u64")))
            .collect()
    }

    /// `y_i`: product of rays with positive `e_i*` pairing.
    pub fn y_exps(&self, i: usize) -> Vec<u64> {
        self.exps_where(i, |a| a.is_positive().then(|| a.clone()))
    }

    /// `z_i`: product of rays with negative `e_i*` pairing.
    pub fn z_exps(&self, i: usize) -> Vec<u64> {
        self.exps_where(i, |a| a.is_negative().then(|| -a))
    }
}

pub fn parameter_names(k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("t{i}")).collect()
}

/// `y_i - z_i` for each `i`.
pub fn binomials(table: &PairingTable) -> Vec<CoxPolynomial> {
    (0..table.k())
        .map(|i| {
            CoxPolynomial::new(vec![
                Term {
                    coeff: Coefficient::int(1),
                    exps: table.y_exps(i),
                },
                Term {
                    coeff: Coefficient::int(-1),
                    exps: table.z_exps(i),
                },
            ])
        })
        .collect()
}

/// `y_i - z_i - t_i * x^{w} * z_i` for each `i`.
pub fn trinomials(table: &PairingTable) -> Result<Vec<CoxPolynomial>> {
    let names = parameter_names(table.k());
    let mut out = Vec::new();
    for i in 0..table.k() {
        let mut third = Vec::with_capacity(table.rays.len());
        for (j, col) in table.e_pairings.iter().enumerate() {
            let neg = if col[i].is_negative() {
                -&col[i]
            } else {
                BigInt::zero()
            };
            let e = &table.w_pairings[j] + neg;
            if e.is_negative() {
                return Err(Error::NegativeExponent {
                    ray: table.rays[j].clone(),
                    index: i + 1,
                    exponent: e.to_string(),
                });
            }
            third.push(e.to_u64().expect("exponent fits in u64"));
        }
        out.push(CoxPolynomial::new(vec![
            Term {
                coeff: Coefficient::int(1),
                exps: table.y_exps(i),
            },
            Term {
                coeff: Coefficient::int(-1),
                exps: table.z_exps(i),
            },
            Term {
                coeff: Coefficient::param(-1, &names[i]),
                exps: third,
            },
        ]));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMonomial {
    pub monomial: CoxPolynomial,
    /// No ray qualified, so the monomial is the empty product `1`.
    pub degenerate: bool,
}

/// Product of the variables whose rays pair non-positively with every `e_i*`.
pub fn boundary_monomial(table: &PairingTable) -> BoundaryMonomial {
    let exps: Vec<u64> = table
        .e_pairings
        .iter()
        .map(|col| u64::from(col.iter().all(|a| !a.is_positive())))
        .collect();
    let degenerate = exps.iter().all(|&e| e == 0);
    BoundaryMonomial {
        monomial: CoxPolynomial::monomial(exps),
        degenerate,
    }
}

/// Full row rank and at most one positive entry per column.
pub fn fischer_shapiro_check(m: &IntMatrix) -> bool {
    let full_rank = rank_of_rows(&m.row_vectors()) == m.rows();
    let columns_ok =
        (0..m.cols()).all(|j| (0..m.rows()).filter(|&i| m.get(i, j).is_positive()).count() <= 1);
    full_rank && columns_ok
}

/// Combinatorial regular-sequence certificate for equations plus a monomial.
///
/// When every polynomial is a binomial `y_i - z` sharing the same `z`, checks
/// that the supports of the `y_i` and of the variables of the (reduced)
/// monomial are pairwise disjoint and that `z` only involves monomial
/// variables. Otherwise checks that each polynomial is coprime to the
/// monomial, i.e. no monomial variable divides all of its terms.
pub fn disjoint_support_regular_sequence(
    polys: &[CoxPolynomial],
    monomial: &CoxPolynomial,
) -> bool {
    if !monomial.is_monomial() || monomial.terms[0].exps.iter().any(|&e| e > 1) {
        return false;
    }
    let m_support = monomial.support();
    let is_binomial = |p: &CoxPolynomial| {
        p.terms.len() == 2
            && p.terms
                .iter()
                .all(|t| t.coeff.param.is_none() && t.coeff.int.abs().is_one())
    };
    if !polys.is_empty() && polys.iter().all(is_binomial) {
        let split = |p: &CoxPolynomial| {
            let pos = p.terms.iter().find(|t| t.coeff.int.is_positive());
            let neg = p.terms.iter().find(|t| t.coeff.int.is_negative());
            pos.zip(neg).map(|(a, b)| (a.exps.clone(), b.exps.clone()))
        };
        let Some(parts) = polys.iter().map(split).collect::<Option<Vec<_>>>() else {
            return false;
        };
        let z0 = &parts[0].1;
        if parts.iter().any(|(_, z)| z != z0) {
            return false;
        }
        let z_support: BTreeSet<usize> = (0..z0.len()).filter(|&j| z0[j] > 0).collect();
        if !z_support.is_subset(&m_support) {
            return false;
        }
        let mut seen = m_support.clone();
        for (y, _) in &parts {
            let s: BTreeSet<usize> = (0..y.len()).filter(|&j| y[j] > 0).collect();
            if s.is_empty() || !s.is_disjoint(&seen) {
                return false;
            }
            seen.extend(s);
        }
        return true;
    }
    polys
        .iter()
        .all(|p| p.common_variables().is_disjoint(&m_support))
}

impl fmt::Display for CoxPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num_vars();
        let names: Vec<String> = (0..n).map(|j| format!("x{j}")).collect();
        let order: Vec<usize> = (0..n).collect();
        write!(f, "{}", self.format(&names, &order))
    }
}
