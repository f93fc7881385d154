//! Enumerators of feasible parameters for the named block-graph families,
//! the multi-Steiner table, and parameter composition D1[D2].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{family_feasibility, Condition, ConditionReport, DesignParams, Witness};
use crate::arith::{divisors, exact_sqrt, Rational};
use crate::designs::steiner_clauses;
use crate::srg::{is_prime_power, GraphFamily};
use crate::{Error, Result};

fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

fn exact(x: Rational) -> Result<BigInt> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(Error::Inconsistent(format!("{x} is not an integer")))
    }
}

/// (alpha, l, l*, t) with alpha > 0, l l* = alpha(alpha - 1) and
/// alpha | (l + l*)^2 t.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quadruple {
    pub alpha: BigInt,
    pub l: BigInt,
    pub l_star: BigInt,
    pub t: BigInt,
}

impl Quadruple {
    pub fn new(alpha: BigInt, l: BigInt, l_star: BigInt, t: BigInt) -> Result<Quadruple> {
        let q = Quadruple {
            alpha,
            l,
            l_star,
            t,
        };
        let bad = |m: &str| Err(Error::InvalidParameters(format!("{q:?}: {m}")));
        if !q.alpha.is_positive()
            || q.l.is_negative()
            || q.l_star.is_negative()
            || q.t.is_negative()
        {
            return bad("needs alpha > 0 and l, l*, t >= 0");
        }
        if &q.l * &q.l_star != &q.alpha * (&q.alpha - 1) {
            return bad("l l* != alpha(alpha - 1)");
        }
        let s = &q.l + &q.l_star;
        if !(&s * &s * &q.t).is_multiple_of(&q.alpha) {
            return bad("alpha does not divide (l + l*)^2 t");
        }
        Ok(q)
    }

    pub fn from_u64(alpha: u64, l: u64, l_star: u64, t: u64) -> Result<Quadruple> {
        Quadruple::new(alpha.into(), l.into(), l_star.into(), t.into())
    }

    pub fn n(&self) -> BigInt {
        &self.l + &self.l_star + 2 * &self.alpha
    }

    pub fn m(&self) -> BigInt {
        let n = self.n();
        &self.t * &n * &n / &self.alpha + &n + 1
    }

    pub fn mu(&self) -> BigInt {
        (self.n() - 1) * &self.t + &self.alpha
    }

    /// Swapping l and l* gives the complementary parameters.
    pub fn swapped(&self) -> Quadruple {
        Quadruple {
            alpha: self.alpha.clone(),
            l: self.l_star.clone(),
            l_star: self.l.clone(),
            t: self.t.clone(),
        }
    }

    /// lambda1 = 0: the affine resolvable AD(n, t).
    pub fn is_affine(&self) -> bool {
        self.alpha.is_one() && self.l.is_zero()
    }

    /// Conjectural necessary condition alpha | t, equivalently
    /// m = n + 1 mod n^2. Not a theorem; false marks a parameter set the
    /// conjecture would exclude.
    pub fn meets_conjecture(&self) -> bool {
        self.t.is_multiple_of(&self.alpha)
    }

    pub fn params(&self) -> Result<DesignParams> {
        let n = self.n();
        let s = Rational::new(self.t.clone(), self.alpha.clone());
        let one = Rational::one();
        let nq = Rational::from(n.clone());
        let width = Rational::from(&n - 1) * &s + &one;
        let al = Rational::from(&self.alpha + &self.l);
        let lq = Rational::from(self.l.clone());
        DesignParams::new(
            &self.m() * &n,
            exact(&nq * &nq * &width)?,
            &self.m() * (&self.alpha + &self.l),
            exact(&nq * &width * &al)?,
            exact((&s * &nq + &one) * &al * &al + &lq)?,
            exact(&nq * &width * &lq)?,
            exact(&width * &al * &al)?,
        )
    }
}

/// Caps for [`enum_multipartite`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultipartiteBounds {
    pub max_alpha: u64,
    /// Cap on l + l*.
    pub max_l_sum: u64,
    pub max_t: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultipartiteEntry {
    pub quad: Quadruple,
    pub n: BigInt,
    pub m: BigInt,
    pub mu: BigInt,
    pub params: DesignParams,
    pub complement: DesignParams,
}

// Ordered pairs (l, l*) with l l* = alpha(alpha - 1), l + l* <= cap, ascending.
fn balance_pairs(alpha: u64, cap: u64) -> Vec<(u64, u64)> {
    let prod = alpha * (alpha - 1);
    if prod == 0 {
        let mut out: Vec<(u64, u64)> = (0..=cap).map(|k| (0, k)).collect();
        out.extend((1..=cap).map(|k| (k, 0)));
        return out;
    }
    (1..=prod)
        .take_while(|d| d * d <= prod)
        .filter(|d| prod % d == 0)
        .flat_map(|d| [(d, prod / d), (prod / d, d)])
        .filter(|(a, b)| a + b <= cap)
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Every admissible quadruple within the caps, in lexicographic order of
/// (alpha, l, l*, t), with its parameter pair. Distinct quadruples give
/// distinct parameter sets; (l, l*) and (l*, l) give complementary ones.
pub fn enum_multipartite(bounds: MultipartiteBounds) -> impl Iterator<Item = MultipartiteEntry> {
    (1..=bounds.max_alpha).flat_map(move |alpha| {
        balance_pairs(alpha, bounds.max_l_sum)
            .into_iter()
            .flat_map(move |(l, ls)| {
                let s = u128::from(l + ls);
                (0..=bounds.max_t)
                    .filter(move |t| (s * s * u128::from(*t)) % u128::from(alpha) == 0)
                    .map(move |t| {
                        let quad = Quadruple::from_u64(alpha, l, ls, t).expect("admissible");
                        let params = quad.params().expect("integral quadruple parameters");
                        let complement = quad
                            .swapped()
                            .params()
                            .expect("integral quadruple parameters");
                        MultipartiteEntry {
                            n: quad.n(),
                            m: quad.m(),
                            mu: quad.mu(),
                            quad,
                            params,
                            complement,
                        }
                    })
            })
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CotriangularEntry {
    pub l: BigInt,
    pub l_star: BigInt,
    pub n: BigInt,
    pub params: DesignParams,
    pub complement: DesignParams,
}

fn cotriangular_params(l: &BigInt, l_star: &BigInt, mu: &BigInt) -> Result<DesignParams> {
    let n = 4 * mu + 1 + l + l_star;
    let half = |x: BigInt| exact(Rational::new(x, int(2)));
    let w = l + 2 * mu;
    let base = half((&n - 2) * l)?;
    DesignParams::new(
        half(&n * (&n - 1))?,
        half((&n - 1) * (&n - 2))?,
        half(&n * &w)?,
        half((&n - 2) * &w)?,
        half(&n * l)? + 2 * mu,
        &base + mu,
        &base + 2 * mu,
    )
}

fn cotriangular_entry(l: BigInt, l_star: BigInt, mu: &BigInt) -> CotriangularEntry {
    let params = cotriangular_params(&l, &l_star, mu).expect("integral co-triangular parameters");
    let complement =
        cotriangular_params(&l_star, &l, mu).expect("integral co-triangular parameters");
    CotriangularEntry {
        n: 4 * mu + 1 + &l + &l_star,
        l,
        l_star,
        params,
        complement,
    }
}

/// Feasible (T_n*, mu) as ordered pairs (l, l*) with l l* = 4 mu (mu - 1)
/// and n = 4 mu + 1 + l + l*. For mu = 1 the family is infinite and the
/// iterator never ends: it yields (0,0), (0,1), (1,0), (0,2), (2,0), ...
/// so callers bound it with `take` or `take_while`. For mu >= 2 it yields
/// the divisor pairs of 4 mu (mu - 1) by increasing l.
pub fn enum_cotriangular(mu: &BigInt) -> Result<Box<dyn Iterator<Item = CotriangularEntry>>> {
    if !mu.is_positive() {
        return Err(Error::InvalidParameters("defect must be positive".into()));
    }
    let mu = mu.clone();
    if mu.is_one() {
        let stream = (0u64..).flat_map(move |k| {
            let mu = mu.clone();
            let pairs: Vec<(u64, u64)> = if k == 0 {
                vec![(0, 0)]
            } else {
                vec![(0, k), (k, 0)]
            };
            pairs
                .into_iter()
                .map(move |(a, b)| cotriangular_entry(a.into(), b.into(), &mu))
        });
        return Ok(Box::new(stream));
    }
    let prod: BigInt = 4 * &mu * (&mu - 1);
    let ds = divisors(prod.magnitude())?;
    let entries: Vec<CotriangularEntry> = ds
        .into_iter()
        .map(|d| {
            let l = BigInt::from(d);
            let ls = &prod / &l;
            cotriangular_entry(l, ls, &mu)
        })
        .collect();
    Ok(Box::new(entries.into_iter()))
}

/// Outcome for Sp(2d, q), q > 2: the congruence and square conditions,
/// and the forced defect when the congruence holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticReport {
    pub conditions: Vec<Condition>,
    pub mu: Option<BigInt>,
}

impl SymplecticReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }
}

/// Parametric feasibility for block graph Sp(2d, q) with q > 2 a prime
/// power: q(q^(d-1) - 1) = 6 mod 8, mu = (q^d - q + 2)/8, and
/// ((q^d - 1)/(q - 1))^2 - q^d (q^(d-1) - 1)/(q - 1) a square.
/// q = 2 has the parameters of a Steiner graph; use [`enum_steiner`].
pub fn check_symplectic(q: &BigInt, d: u32) -> Result<SymplecticReport> {
    if q == &int(2) {
        return Err(Error::InvalidParameters(
            "q = 2: Sp(2d, 2) has Steiner-graph parameters; use the Steiner path".into(),
        ));
    }
    if !is_prime_power(q) || d < 2 {
        return Err(Error::InvalidParameters(format!(
            "needs q a prime power and d >= 2, got q={q}, d={d}"
        )));
    }
    let qd = q.pow(d);
    let qd1 = q.pow(d - 1);
    let lhs = q * (&qd1 - 1i32);
    let residue = lhs.mod_floor(&int(8));
    let congruence = Condition::check("symplectic-congruence", residue == int(6), || {
        Witness::Note(format!("q(q^(d-1) - 1) = {lhs} = {residue} mod 8, needs 6"))
    });
    let ratio = (&qd - 1) / (q - 1);
    let x = &ratio * &ratio - &qd * ((&qd1 - 1) / (q - 1));
    let square = Condition::check("symplectic-square", exact_sqrt(&x).is_some(), || {
        Witness::NotSquare(Rational::from(x.clone()))
    });
    let mu = congruence.passed.then(|| (&qd - q + 2) / 8);
    Ok(SymplecticReport {
        conditions: vec![congruence, square],
        mu,
    })
}

/// Prime powers 2 < q <= max_q and d in the window for which Sp(2d, q)
/// passes [`check_symplectic`], with the forced defect.
pub fn symplectic_search(
    max_q: u64,
    d_range: std::ops::RangeInclusive<u32>,
) -> Result<Vec<(BigInt, u32, BigInt)>> {
    let mut out = Vec::new();
    for q in 3..=max_q {
        let q = BigInt::from(q);
        if !is_prime_power(&q) {
            continue;
        }
        for d in d_range.clone() {
            let r = check_symplectic(&q, d)?;
            if r.passed() {
                out.push((q.clone(), d, r.mu.expect("congruence passed")));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerEntry {
    pub m: BigInt,
    pub params: DesignParams,
    pub complement: DesignParams,
}

/// Feasible (S_n(m), mu) by increasing m. For mu >= 2 the candidates come
/// from the factor pairs of n^2 mu (mu - 1) and the list is finite;
/// `max_m` then only trims it. For mu = 1 `max_m` is required. Triangular
/// block graphs (n = 2) with mu >= 2 are excluded.
pub fn enum_steiner(n: &BigInt, mu: &BigInt, max_m: Option<&BigInt>) -> Result<Vec<SteinerEntry>> {
    if n < &int(2) || !mu.is_positive() {
        return Err(Error::InvalidParameters("needs n >= 2 and mu >= 1".into()));
    }
    if n == &int(2) && mu >= &int(2) {
        return Ok(Vec::new());
    }
    let mut candidates: Vec<BigInt> = Vec::new();
    if mu.is_one() {
        let cap =
            max_m.ok_or_else(|| Error::InvalidParameters("defect 1 needs a bound on m".into()))?;
        let mut m = n + 1i32;
        while &m <= cap {
            candidates.push(m.clone());
            m += 1;
        }
    } else {
        let prod: BigInt = n * n * mu * (mu - 1);
        let base: BigInt = 2 * n * mu - 1;
        for u in divisors(prod.magnitude())? {
            let u = BigInt::from(u);
            let sum = &u + &prod / &u;
            for x in [&sum, &-&sum] {
                let num = x + &base;
                if num.is_multiple_of(&(n - 1)) {
                    candidates.push(num / (n - 1));
                }
            }
        }
    }
    let mut found = BTreeMap::new();
    for m in candidates {
        if &m <= n || !(&m * (&m - 1i32)).is_multiple_of(n) || max_m.is_some_and(|cap| &m > cap) {
            continue;
        }
        let fam = GraphFamily::Steiner {
            n: n.clone(),
            m: m.clone(),
        };
        let report = family_feasibility(&fam, mu)?;
        if report.is_feasible() {
            let (params, complement) = report.params.expect("feasible report carries parameters");
            found.insert(
                m.clone(),
                SteinerEntry {
                    m,
                    params,
                    complement,
                },
            );
        }
    }
    Ok(found.into_values().collect())
}

/// Caps for [`table1`]. At least one of `max_mu` and `max_v` must be set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Limits {
    pub max_n: u64,
    pub max_mu: Option<u64>,
    pub max_v: Option<BigInt>,
}

impl Default for Table1Limits {
    fn default() -> Table1Limits {
        Table1Limits {
            max_n: 6,
            max_mu: Some(4),
            max_v: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Row {
    pub number: usize,
    pub n: BigInt,
    pub m: BigInt,
    /// The canonical (smaller) member of the complementary pair.
    pub params: DesignParams,
    /// The S_n(m) clauses; a failure marks the row "no".
    pub check: ConditionReport,
}

impl Table1Row {
    pub fn rejected(&self) -> bool {
        !self.check.passed()
    }
}

/// Feasible multi-Steiner parameters with 3 <= n <= max_n and mu >= 2,
/// sorted by (n, m, mu), each checked against the S_n(m) clauses.
pub fn table1(limits: &Table1Limits) -> Result<Vec<Table1Row>> {
    if limits.max_mu.is_none() && limits.max_v.is_none() {
        return Err(Error::InvalidParameters(
            "table needs a defect cap or a v cap".into(),
        ));
    }
    let mut rows = BTreeMap::new();
    for n in 3..=limits.max_n {
        let nb = BigInt::from(n);
        // v = mn - m + 1 and mu <= v / (2n).
        let max_m = limits.max_v.as_ref().map(|cap| (cap - 1) / (n - 1));
        let mu_cap = match (limits.max_mu, &limits.max_v) {
            (Some(a), Some(cap)) => BigInt::from(a).min(cap / (2 * n)),
            (Some(a), None) => BigInt::from(a),
            (None, Some(cap)) => cap / (2 * n),
            (None, None) => unreachable!(),
        };
        let mut mu = int(2);
        while mu <= mu_cap {
            for e in enum_steiner(&nb, &mu, max_m.as_ref())? {
                let params = if e.params.is_canonical() {
                    e.params
                } else {
                    e.complement
                };
                if limits.max_v.as_ref().is_some_and(|cap| &params.v > cap) {
                    continue;
                }
                let check = steiner_clauses(&nb, &e.m, &mu)?;
                rows.insert((nb.clone(), e.m.clone(), mu.clone()), (params, check));
            }
            mu += 1;
        }
    }
    Ok(rows
        .into_iter()
        .enumerate()
        .map(|(i, ((n, m, _), (params, check)))| Table1Row {
            number: i + 1,
            n,
            m,
            params,
            check,
        })
        .collect())
}

/// Parameters of a symmetric 2-(v, k, lambda) design.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricParams {
    pub v: BigInt,
    pub k: BigInt,
    pub lambda: BigInt,
}

impl SymmetricParams {
    pub fn new(v: BigInt, k: BigInt, lambda: BigInt) -> Result<SymmetricParams> {
        if !v.is_positive() || k.is_negative() || k > v || lambda.is_negative() {
            return Err(Error::InvalidParameters(format!(
                "({v}, {k}, {lambda}) out of range"
            )));
        }
        if &k * (&k - 1) != &lambda * (&v - 1) {
            return Err(Error::InvalidParameters(format!(
                "k(k-1) != lambda(v-1) for ({v}, {k}, {lambda})"
            )));
        }
        Ok(SymmetricParams { v, k, lambda })
    }

    pub fn order(&self) -> BigInt {
        &self.k - &self.lambda
    }

    pub fn complement(&self) -> SymmetricParams {
        SymmetricParams {
            v: self.v.clone(),
            k: &self.v - &self.k,
            lambda: &self.v - 2 * &self.k + &self.lambda,
        }
    }
}

/// Parameters of D1[D2]: D1 affine resolvable with block graph K_{m x n}
/// (m = r, n = b/r parallel classes of n blocks), D2 symmetric on n
/// points. Blocks are unions over D2's blocks within one parallel class.
pub fn compose_params(ad: &DesignParams, sym: &SymmetricParams) -> Result<DesignParams> {
    if !ad.lambda1.is_zero() || !ad.b.is_multiple_of(&ad.r) {
        return Err(Error::InvalidParameters(format!(
            "{ad} is not affine resolvable"
        )));
    }
    let m = ad.r.clone();
    let n = &ad.b / &m;
    if n != sym.v {
        return Err(Error::InvalidParameters(format!(
            "symmetric design has {} points, the parallel classes have {n} blocks",
            sym.v
        )));
    }
    let block = &ad.v / &n;
    let cross = exact(Rational::new(
        &block * &block * &sym.k * &sym.k,
        ad.v.clone(),
    ))?;
    DesignParams::new(
        ad.b.clone(),
        ad.v.clone(),
        &m * &sym.k,
        &sym.k * &block,
        &ad.lambda * &sym.k + (&m - &ad.lambda) * &sym.lambda,
        &sym.lambda * &block,
        cross,
    )
}
