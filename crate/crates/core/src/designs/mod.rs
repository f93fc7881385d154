//! Quasi-symmetric 2-design parameters: derivation from a block graph and a
//! defect, feasibility, the symmetric-design tests, and the p-adic test
//! built on the graph invariants.

pub mod corollaries;
pub mod enumerate;

pub use corollaries::*;
pub use enumerate::*;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::arith::{exact_sqrt, is_perfect_square, Rational, Sign, SquareClass};
use crate::hilbert::{hilbert_int, legendre_eq_solvable, relevant_primes, Solvability};
use crate::srg::{family_spectral, GraphFamily, GraphInvariants, SpectralParams, Spectrum};
use crate::{Error, Result};

/// Condition labels.
pub mod labels {
    pub const INTEGRAL_SPECTRUM: &str = "integral-spectrum";
    pub const DEFECT_RANGE: &str = "defect-range";
    pub const LAMBDA_INTEGRAL: &str = "lambda-integral";
    pub const LAMBDA1_INTEGRAL: &str = "lambda1-integral";
    pub const QUADRATIC_SQUARE: &str = "quadratic-discriminant-square";
    pub const DESIGN_IDENTITIES: &str = "design-identities";
    pub const TRIANGULAR_DEFECT: &str = "triangular-defect";
    pub const ORDER_CLASS: &str = "order-square-class";
    pub const HASSE: &str = "hasse-invariant";
}

/// Parameters of a quasi-symmetric 2-design with intersection numbers
/// lambda1 < lambda2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DesignParams {
    pub b: BigInt,
    pub v: BigInt,
    pub r: BigInt,
    pub k: BigInt,
    pub lambda: BigInt,
    pub lambda1: BigInt,
    pub lambda2: BigInt,
}

impl DesignParams {
    pub fn new(
        b: BigInt,
        v: BigInt,
        r: BigInt,
        k: BigInt,
        lambda: BigInt,
        lambda1: BigInt,
        lambda2: BigInt,
    ) -> Result<DesignParams> {
        let d = DesignParams {
            b,
            v,
            r,
            k,
            lambda,
            lambda1,
            lambda2,
        };
        d.validate()?;
        Ok(d)
    }

    /// Fields in the order b, v, r, k, lambda, lambda1, lambda2.
    pub fn from_i64(x: [i64; 7]) -> Result<DesignParams> {
        let [b, v, r, k, l, l1, l2] = x.map(BigInt::from);
        DesignParams::new(b, v, r, k, l, l1, l2)
    }

    /// Defect lambda2 - lambda1.
    pub fn mu(&self) -> BigInt {
        &self.lambda2 - &self.lambda1
    }

    /// Order r - lambda.
    pub fn nu(&self) -> BigInt {
        &self.r - &self.lambda
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameters(format!("{self}: {m}")));
        let fields = [
            &self.b,
            &self.v,
            &self.r,
            &self.k,
            &self.lambda,
            &self.lambda1,
            &self.lambda2,
        ];
        if fields.iter().any(|x| x.is_negative()) {
            return bad("negative parameter");
        }
        if &self.b * &self.k != &self.r * &self.v {
            return bad("bk != rv");
        }
        if &self.r * (&self.k - 1) != &self.lambda * (&self.v - 1) {
            return bad("r(k-1) != lambda(v-1)");
        }
        if self.lambda1 >= self.lambda2 {
            return bad("needs lambda1 < lambda2");
        }
        if self.b <= self.v {
            return bad("needs b > v");
        }
        if !self.nu().is_positive() {
            return bad("needs r > lambda");
        }
        Ok(())
    }

    pub fn complement(&self) -> DesignParams {
        let shift = &self.v - 2 * &self.k;
        DesignParams {
            b: self.b.clone(),
            v: self.v.clone(),
            r: &self.b - &self.r,
            k: &self.v - &self.k,
            lambda: &self.b - 2 * &self.r + &self.lambda,
            lambda1: &shift + &self.lambda1,
            lambda2: &shift + &self.lambda2,
        }
    }

    /// The smaller member of its complementary pair: 2k < v, or 2k = v and
    /// lambda1 no larger than the complement's.
    pub fn is_canonical(&self) -> bool {
        let twice = 2 * &self.k;
        twice < self.v || (twice == self.v && self.lambda1 <= self.complement().lambda1)
    }
}

pub fn complement(d: &DesignParams) -> DesignParams {
    d.complement()
}

/// Order a complementary pair with the canonical member first.
pub fn canonical_pair(d: DesignParams) -> (DesignParams, DesignParams) {
    let c = d.complement();
    if d.is_canonical() {
        (d, c)
    } else {
        (c, d)
    }
}

impl fmt::Display for DesignParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "2-({}, {}, {}) b={} r={} x=({}, {})",
            self.v, self.k, self.lambda, self.b, self.r, self.lambda1, self.lambda2
        )
    }
}

/// Evidence attached to a failed condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// This value should have been a rational square.
    NotSquare(Rational),
    NotDivisible {
        divisor: BigInt,
        value: BigInt,
    },
    /// The defect lies outside the admissible interval, printed exactly.
    OutOfRange {
        value: BigInt,
        lower: String,
        upper: String,
    },
    /// Primes at which a Hilbert-symbol identity fails, ascending.
    Primes(Vec<BigUint>),
    NotSumOfTwoSquares(BigInt),
    ClassMismatch {
        left: SquareClass,
        right: SquareClass,
    },
    Note(String),
}

impl Witness {
    /// Least failing prime, when the witness is a prime list.
    pub fn prime(&self) -> Option<&BigUint> {
        match self {
            Witness::Primes(ps) => ps.first(),
            _ => None,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::NotSquare(x) => write!(f, "{x} is not a square"),
            Witness::NotDivisible { divisor, value } => {
                write!(f, "{divisor} does not divide {value}")
            }
            Witness::OutOfRange {
                value,
                lower,
                upper,
            } => {
                write!(f, "mu = {value} outside [{lower}, {upper}]")
            }
            Witness::Primes(ps) => {
                let list: Vec<String> = ps.iter().map(|p| format!("p={p}")).collect();
                write!(f, "fails at {}", list.join(", "))
            }
            Witness::NotSumOfTwoSquares(x) => write!(f, "{x} is not a sum of two squares"),
            Witness::ClassMismatch { left, right } => {
                write!(f, "{left} != {right} modulo squares")
            }
            Witness::Note(s) => f.write_str(s),
        }
    }
}

/// One labelled necessary condition and its outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition {
    pub label: String,
    pub passed: bool,
    /// Present exactly when the condition failed.
    pub witness: Option<Witness>,
}

impl Condition {
    pub fn pass(label: impl Into<String>) -> Condition {
        Condition {
            label: label.into(),
            passed: true,
            witness: None,
        }
    }

    pub fn fail(label: impl Into<String>, witness: Witness) -> Condition {
        Condition {
            label: label.into(),
            passed: false,
            witness: Some(witness),
        }
    }

    pub fn check(
        label: impl Into<String>,
        ok: bool,
        witness: impl FnOnce() -> Witness,
    ) -> Condition {
        if ok {
            Condition::pass(label)
        } else {
            Condition::fail(label, witness())
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "{}: pass", self.label),
            Some(w) => write!(f, "{}: FAIL ({w})", self.label),
        }
    }
}

/// A list of conditions; passes when all do.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConditionReport {
    pub conditions: Vec<Condition>,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, label: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.label == label)
    }
}

/// Outcome of the parametric feasibility test for a (graph, defect) pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub conditions: Vec<Condition>,
    /// The complementary pair, canonical member first. Present iff the
    /// five spectral conditions hold.
    pub params: Option<(DesignParams, DesignParams)>,
}

impl FeasibilityReport {
    pub fn is_feasible(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| !c.passed)
    }
}

fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

fn ceil(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

fn floor(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

// Lower and upper defect bounds for an integral spectrum.
fn integral_bounds(sp: &SpectralParams) -> (Rational, Rational) {
    let (rho, sigma, f, g) = (sp.rho(), sp.sigma(), sp.f(), sp.g());
    let v = f + 1i32;
    let b = f + g + 1;
    let lower = Rational::new(-&v * (f * rho + (g + 1) * sigma), b * sigma * sigma);
    let upper = Rational::new(-v, 2 * sigma);
    (lower, upper)
}

// Largest n with n <= (q+1)/(2(1+sqrt q)), for non-square q.
fn conference_upper_floor(q: &BigInt) -> BigInt {
    let fits = |n: &BigInt| {
        let rest = q + 1i32 - 2i32 * n;
        !rest.is_negative() && 4 * n * n * q <= &rest * &rest
    };
    let mut n = q.sqrt() / 2i32;
    while n.is_positive() && !fits(&n) {
        n -= 1;
    }
    while fits(&(&n + 1)) {
        n += 1;
    }
    n
}

/// The integer defects allowed by the interval condition, as a closed
/// range [lo, hi] with lo >= 1; None when empty.
pub fn mu_window(spec: &Spectrum) -> Option<(BigInt, BigInt)> {
    let (lo, hi) = match spec {
        Spectrum::Integral(sp) => {
            let (l, u) = integral_bounds(sp);
            (ceil(&l).max(BigInt::one()), floor(&u))
        }
        // The lower bound (q+1)(q+s)/(q(q+1+2s)) lies in (0, 1).
        Spectrum::Conference { q } => match exact_sqrt(q) {
            Some(s) => {
                let sp = conference_square(q, &s).ok()?;
                return mu_window(&Spectrum::Integral(sp));
            }
            None => (BigInt::one(), conference_upper_floor(q)),
        },
    };
    (lo <= hi).then_some((lo, hi))
}

fn conference_square(q: &BigInt, s: &BigInt) -> Result<SpectralParams> {
    let h: BigInt = (q - 1) / 2;
    SpectralParams::new((s - 1i32) / 2i32, -(s + 1i32) / 2i32, h.clone(), h)
}

/// Evaluate the five spectral feasibility conditions for (G, mu) and
/// derive the parameter pair when they hold.
pub fn feasibility(spec: &Spectrum, mu: &BigInt) -> FeasibilityReport {
    match spec {
        Spectrum::Integral(sp) => integral_feasibility(sp, mu),
        Spectrum::Conference { q } => match exact_sqrt(q).map(|s| conference_square(q, &s)) {
            Some(Ok(sp)) => integral_feasibility(&sp, mu),
            _ => {
                let hi = conference_upper_floor(q);
                let range =
                    Condition::check(labels::DEFECT_RANGE, mu.is_positive() && mu <= &hi, || {
                        Witness::OutOfRange {
                            value: mu.clone(),
                            lower: format!("({q}+1)({q}+s)/({q}({q}+1+2s))"),
                            upper: format!("({q}+1)/(2(1+s)), s = sqrt {q}"),
                        }
                    });
                FeasibilityReport {
                    conditions: vec![
                        Condition::fail(
                            labels::INTEGRAL_SPECTRUM,
                            Witness::NotSquare(Rational::from(q.clone())),
                        ),
                        range,
                    ],
                    params: None,
                }
            }
        },
    }
}

fn integral_feasibility(sp: &SpectralParams, mu: &BigInt) -> FeasibilityReport {
    let (rho, sigma, f, g) = (sp.rho(), sp.sigma(), sp.f(), sp.g());
    let v = f + 1;
    let b = f + g + 1;
    let gap = rho - sigma;
    let mut conditions = vec![Condition::pass(labels::INTEGRAL_SPECTRUM)];

    let (lower, upper) = integral_bounds(sp);
    let m = Rational::from(mu.clone());
    conditions.push(Condition::check(
        labels::DEFECT_RANGE,
        mu.is_positive() && lower <= m && m <= upper,
        || Witness::OutOfRange {
            value: mu.clone(),
            lower: lower.to_string(),
            upper: upper.to_string(),
        },
    ));

    let c_val = g * &gap * mu;
    conditions.push(Condition::check(
        labels::LAMBDA_INTEGRAL,
        c_val.is_multiple_of(&v),
        || Witness::NotDivisible {
            divisor: v.clone(),
            value: c_val.clone(),
        },
    ));

    let d_val = f * g * &gap * mu;
    conditions.push(Condition::check(
        labels::LAMBDA1_INTEGRAL,
        d_val.is_multiple_of(&b),
        || Witness::NotDivisible {
            divisor: b.clone(),
            value: d_val.clone(),
        },
    ));

    let bq = Rational::from(b.clone());
    let delta = &bq * (&bq - Rational::new(4 * f * &gap * mu, v.clone()));
    conditions.push(Condition::check(
        labels::QUADRATIC_SQUARE,
        !delta.is_negative() && is_perfect_square(&delta),
        || Witness::NotSquare(delta.clone()),
    ));

    let mut params = None;
    if conditions.iter().all(|c| c.passed) {
        match solve_pair(sp, mu, &delta) {
            Ok(pair) => params = Some(pair),
            Err(e) => conditions.push(Condition::fail(
                labels::DESIGN_IDENTITIES,
                Witness::Note(e.to_string()),
            )),
        }
    }
    FeasibilityReport { conditions, params }
}

fn to_int(x: Rational, what: &str) -> Result<BigInt> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(Error::Inconsistent(format!(
            "{what} = {x} is not an integer"
        )))
    }
}

// Both roots of the lambda quadratic and the parameters built on each.
fn solve_pair(
    sp: &SpectralParams,
    mu: &BigInt,
    delta: &Rational,
) -> Result<(DesignParams, DesignParams)> {
    let (rho, sigma, f, g) = (sp.rho(), sp.sigma(), sp.f(), sp.g());
    let v = f + 1i32;
    let b = f + g + 1i32;
    let nu = (rho - sigma) * mu;
    let root = exact_sqrt(&to_int(delta.clone(), "discriminant")?)
        .ok_or_else(|| Error::Inconsistent("discriminant is not a square".into()))?;
    let alpha = &b - 2 * &nu;
    let build = |lambda2x: BigInt| -> Result<DesignParams> {
        let lambda = to_int(Rational::new(lambda2x, int(2)), "lambda")?;
        let l1 = Rational::new(&v * (&lambda + rho * mu) + g * sigma * mu, b.clone());
        let lambda1 = to_int(l1, "lambda1")?;
        DesignParams::new(
            b.clone(),
            v.clone(),
            &lambda + &nu,
            &lambda1 - sigma * mu,
            lambda,
            lambda1.clone(),
            lambda1 + mu,
        )
    };
    let first = build(&alpha + &root)?;
    let second = build(&alpha - &root)?;
    if first.complement() != second {
        return Err(Error::Inconsistent(
            "roots do not give a complementary pair".into(),
        ));
    }
    Ok(canonical_pair(first))
}

/// The complementary parameter pair of a feasible (G, mu), canonical
/// member first.
pub fn derive_params(sp: &SpectralParams, mu: &BigInt) -> Result<(DesignParams, DesignParams)> {
    let report = integral_feasibility(sp, mu);
    if let Some(c) = report.failed().next() {
        let w = c
            .witness
            .as_ref()
            .map(|w| w.to_string())
            .unwrap_or_default();
        return Err(Error::Infeasible(format!("{}: {w}", c.label)));
    }
    report
        .params
        .ok_or_else(|| Error::Infeasible("no parameters".into()))
}

/// Whether the family is a triangular graph T_m (S_2(m-1) included).
pub fn is_triangular(fam: &GraphFamily) -> bool {
    match fam {
        GraphFamily::Triangular { .. } => true,
        GraphFamily::Steiner { n, .. } => n == &int(2),
        _ => false,
    }
}

/// Spectrum of a family member; non-square conference graphs stay surds.
pub fn family_spectrum(fam: &GraphFamily) -> Result<Spectrum> {
    match fam {
        GraphFamily::Conference { q } if exact_sqrt(q).is_none() => {
            fam.validate()?;
            Ok(Spectrum::Conference { q: q.clone() })
        }
        _ => Ok(Spectrum::Integral(family_spectral(fam)?)),
    }
}

/// Feasibility of a family member with the triangular-graph exclusion
/// for defect >= 2 appended.
pub fn family_feasibility(fam: &GraphFamily, mu: &BigInt) -> Result<FeasibilityReport> {
    let mut report = feasibility(&family_spectrum(fam)?, mu);
    if is_triangular(fam) && mu >= &int(2) {
        report.conditions.push(Condition::fail(
            labels::TRIANGULAR_DEFECT,
            Witness::Note(format!("{fam} with defect {mu} >= 2")),
        ));
    }
    Ok(report)
}

/// Result of a single-theorem test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Reject,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Reject => "reject",
            Verdict::NotApplicable => "not-applicable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl CheckResult {
    fn pass() -> CheckResult {
        CheckResult {
            verdict: Verdict::Pass,
            witness: None,
        }
    }

    fn not_applicable() -> CheckResult {
        CheckResult {
            verdict: Verdict::NotApplicable,
            witness: None,
        }
    }

    fn reject(w: Witness) -> CheckResult {
        CheckResult {
            verdict: Verdict::Reject,
            witness: Some(w),
        }
    }
}

/// Symmetric design on an even number of points: the order must be a square.
pub fn schutzenberger(v: &BigInt, nu: &BigInt) -> CheckResult {
    if v.is_odd() {
        return CheckResult::not_applicable();
    }
    if exact_sqrt(nu).is_some() {
        CheckResult::pass()
    } else {
        CheckResult::reject(Witness::NotSquare(Rational::from(nu.clone())))
    }
}

/// Symmetric design on an odd number of points: nu x^2 + (-1)^((v-1)/2)
/// lambda y^2 = z^2 must be solvable. The witness lists every failing prime.
pub fn chowla_ryser(v: &BigInt, lambda: &BigInt, nu: &BigInt) -> Result<CheckResult> {
    if v.is_even() {
        return Ok(CheckResult::not_applicable());
    }
    if !lambda.is_positive() || !nu.is_positive() {
        return Err(Error::Domain("lambda and nu must be positive".into()));
    }
    let half: BigInt = (v - 1) / 2;
    let b = if half.is_odd() {
        -lambda
    } else {
        lambda.clone()
    };
    Ok(
        match legendre_eq_solvable(&Rational::from(nu.clone()), &Rational::from(b))? {
            Solvability::Solvable => CheckResult::pass(),
            Solvability::Unsolvable { failing, .. } => {
                CheckResult::reject(Witness::Primes(failing))
            }
        },
    )
}

/// Validate a symmetric 2-(v, k, lambda) and dispatch on the parity of v.
pub fn symmetric_test(v: &BigInt, k: &BigInt, lambda: &BigInt) -> Result<CheckResult> {
    if !v.is_positive() || k.is_negative() || k > v || lambda.is_negative() {
        return Err(Error::InvalidParameters(format!(
            "({v}, {k}, {lambda}) out of range"
        )));
    }
    if k * (k - 1) != lambda * (v - 1) {
        return Err(Error::InvalidParameters(format!(
            "k(k-1) != lambda(v-1) for ({v}, {k}, {lambda})"
        )));
    }
    let nu = k - lambda;
    if v.is_even() {
        Ok(schutzenberger(v, &nu))
    } else {
        chowla_ryser(v, lambda, &nu)
    }
}

/// Local comparison at one prime: left and right sides of the Hasse identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalCheck {
    pub prime: BigUint,
    pub left: Sign,
    pub right: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MainTestReport {
    pub nu: BigInt,
    pub conditions: Vec<Condition>,
    /// Every prime checked; the identity is trivially +1 = +1 elsewhere.
    pub local: Vec<LocalCheck>,
}

impl MainTestReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }
}

fn odd_binom2(n: &BigInt) -> bool {
    (n * (n - 1i32) / 2i32).is_odd()
}

/// The p-adic test: nu^f = (f+1)(f+g+1) delta(G) modulo squares, and
/// (-1, nu)^C(f,2) (nu, f+1) = (f+g+1, -f-1) (-(f+1)(f+g+1), delta) eps(G)
/// at every prime, where nu = (rho - sigma) mu.
pub fn main_test(
    sp: &SpectralParams,
    inv: &GraphInvariants,
    mu: &BigInt,
) -> Result<MainTestReport> {
    if !mu.is_positive() {
        return Err(Error::Domain(format!("defect {mu} must be positive")));
    }
    let (f, g) = (sp.f(), sp.g());
    let nu = (sp.rho() - sp.sigma()) * mu;
    let v = f + 1;
    let b = f + g + 1;
    let delta = inv.discriminant.representative();

    let left = if f.is_odd() {
        SquareClass::of_int(&nu)?
    } else {
        SquareClass::one()
    };
    let right = &SquareClass::of_int(&(&v * &b))? * &inv.discriminant;
    let mut conditions = vec![Condition::check(labels::ORDER_CLASS, left == right, || {
        Witness::ClassMismatch {
            left: left.clone(),
            right: right.clone(),
        }
    })];

    let values: Vec<Rational> = [&nu, &v, &b, &delta, &int(-1)]
        .iter()
        .map(|x| Rational::from((*x).clone()))
        .collect();
    let mut primes: BTreeSet<BigUint> = relevant_primes(&values)?.into_iter().collect();
    primes.extend(inv.hasse.recorded().cloned());

    let minus = int(-1);
    let odd_pairs = odd_binom2(f);
    let neg_vb = -(&v * &b);
    let local: Vec<LocalCheck> = primes
        .into_iter()
        .map(|p| {
            let mut l = hilbert_int(&nu, &v, &p);
            if odd_pairs {
                l = l * hilbert_int(&minus, &nu, &p);
            }
            let r = hilbert_int(&b, &-&v, &p) * hilbert_int(&neg_vb, &delta, &p) * inv.hasse_at(&p);
            LocalCheck {
                prime: p,
                left: l,
                right: r,
            }
        })
        .collect();
    let failing: Vec<BigUint> = local
        .iter()
        .filter(|c| c.left != c.right)
        .map(|c| c.prime.clone())
        .collect();
    conditions.push(Condition::check(labels::HASSE, failing.is_empty(), || {
        Witness::Primes(failing.clone())
    }));
    Ok(MainTestReport {
        nu,
        conditions,
        local,
    })
}
