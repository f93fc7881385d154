//! Strongly regular graphs: spectral parameters, recognition from an
//! adjacency matrix, the minimal idempotent of rank g, and the invariants
//! delta(G), eps_p(G) both in closed form for the named families and by
//! direct computation.

pub mod fixtures;
pub mod io;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::arith::{exact_sqrt, factorize, is_prime, Rational, Sign, SquareClass};
use crate::error::{Error, Result};
use crate::hilbert::{hilbert_classes, relevant_primes_of_classes};
use crate::quadform::{
    diagonalize, invariants_of_diag, select_independent_columns, HasseMap, Matrix, SymMatrix,
};

pub use io::{
    parse_graph6, parse_matrix, read_graph, to_graph6, to_matrix_text, AdjacencyMatrix, GraphFormat,
};

/// Eigenvalues rho > sigma of a connected non-complete SRG other than the
/// degree, with multiplicities f and g.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpectralParams {
    rho: BigInt,
    sigma: BigInt,
    f: BigInt,
    g: BigInt,
}

impl SpectralParams {
    /// Validates sigma < 0 <= rho, positive multiplicities, and that the
    /// implied degree and common-neighbour counts are consistent integers.
    pub fn new(rho: BigInt, sigma: BigInt, f: BigInt, g: BigInt) -> Result<SpectralParams> {
        let bad = |msg: String| Err(Error::Inconsistent(msg));
        if !sigma.is_negative() {
            return bad(format!("sigma = {sigma} must be negative"));
        }
        if rho.is_negative() {
            return bad(format!("rho = {rho} must be non-negative"));
        }
        if !f.is_positive() || !g.is_positive() {
            return bad(format!("multiplicities f = {f}, g = {g} must be positive"));
        }
        let sp = SpectralParams { rho, sigma, f, g };
        let a = sp.degree();
        let b = sp.vertices();
        if a <= sp.rho {
            return bad(format!("degree {a} must exceed rho = {}", sp.rho));
        }
        if a >= &b - 1 {
            return bad(format!(
                "degree {a} leaves no non-neighbours on {b} vertices"
            ));
        }
        let c = sp.adjacent_common();
        let d = sp.nonadjacent_common();
        if c.is_negative() || !d.is_positive() {
            return bad(format!("common-neighbour counts ({c}, {d}) out of range"));
        }
        if &a * (&a - &c - 1) != (&b - &a - 1) * &d {
            return bad("edge count identity a(a-c-1) = (b-a-1)d fails".into());
        }
        let trace2 = &a * &a + &sp.f * &sp.rho * &sp.rho + &sp.g * &sp.sigma * &sp.sigma;
        if &a * &b != trace2 {
            return bad("trace identity ab = a^2 + f rho^2 + g sigma^2 fails".into());
        }
        Ok(sp)
    }

    pub fn from_i64(rho: i64, sigma: i64, f: i64, g: i64) -> Result<SpectralParams> {
        SpectralParams::new(rho.into(), sigma.into(), f.into(), g.into())
    }

    pub fn rho(&self) -> &BigInt {
        &self.rho
    }

    pub fn sigma(&self) -> &BigInt {
        &self.sigma
    }

    pub fn f(&self) -> &BigInt {
        &self.f
    }

    pub fn g(&self) -> &BigInt {
        &self.g
    }

    /// a = -f rho - g sigma.
    pub fn degree(&self) -> BigInt {
        -(&self.f * &self.rho) - &self.g * &self.sigma
    }

    /// b = f + g + 1.
    pub fn vertices(&self) -> BigInt {
        &self.f + &self.g + 1
    }

    /// Common neighbours of adjacent vertices.
    pub fn adjacent_common(&self) -> BigInt {
        self.degree() + &self.rho + &self.sigma + &self.rho * &self.sigma
    }

    /// Common neighbours of non-adjacent vertices.
    pub fn nonadjacent_common(&self) -> BigInt {
        self.degree() + &self.rho * &self.sigma
    }
}

impl fmt::Display for SpectralParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rho={} sigma={} f={} g={}",
            self.rho, self.sigma, self.f, self.g
        )
    }
}

/// Either an integral spectrum or the conference-graph case on q vertices
/// with eigenvalues (-1 +- sqrt q)/2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Spectrum {
    Integral(SpectralParams),
    Conference { q: BigInt },
}

/// The named graph families.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GraphFamily {
    /// K_{m x n}: m parts of size n.
    Multipartite {
        m: BigInt,
        n: BigInt,
    },
    /// T_n*, the complement of the triangular graph.
    CoTriangular {
        n: BigInt,
    },
    /// Sp(2d, q), the non-orthogonality graph of a symplectic space.
    Symplectic {
        d: u32,
        q: BigInt,
    },
    /// S_n(m), block graph of a 2-(mn-m+1, n, 1) design.
    Steiner {
        n: BigInt,
        m: BigInt,
    },
    /// T_m, the line graph of K_m.
    Triangular {
        m: BigInt,
    },
    Conference {
        q: BigInt,
    },
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphFamily::Multipartite { m, n } => write!(f, "K_{{{m}x{n}}}"),
            GraphFamily::CoTriangular { n } => write!(f, "T_{n}*"),
            GraphFamily::Symplectic { d, q } => write!(f, "Sp({},{q})", 2 * d),
            GraphFamily::Steiner { n, m } => write!(f, "S_{n}({m})"),
            GraphFamily::Triangular { m } => write!(f, "T_{m}"),
            GraphFamily::Conference { q } => write!(f, "conference({q})"),
        }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

/// Whether q is a power of a single prime.
pub fn is_prime_power(q: &BigInt) -> bool {
    if q < &big(2) {
        return false;
    }
    factorize(q.magnitude()).map_or(false, |f| f.factors.len() == 1)
}

impl GraphFamily {
    /// Check the family's own parameter constraints.
    pub fn validate(&self) -> Result<()> {
        match self {
            GraphFamily::Multipartite { m, n } => {
                if m < &big(2) || n < &big(2) {
                    return Err(invalid("K_{m x n} needs m >= 2 and n >= 2"));
                }
            }
            GraphFamily::CoTriangular { n } => {
                if n < &big(5) {
                    return Err(invalid("T_n* needs n >= 5"));
                }
            }
            GraphFamily::Symplectic { d, q } => {
                if *d < 2 {
                    return Err(invalid("Sp(2d, q) needs d >= 2"));
                }
                if !is_prime_power(q) {
                    return Err(invalid(format!("q = {q} is not a prime power")));
                }
            }
            GraphFamily::Steiner { n, m } => {
                if n < &big(2) || m <= n {
                    return Err(invalid("S_n(m) needs 2 <= n < m"));
                }
                if !(m * (m - 1u32)).is_multiple_of(n) {
                    return Err(invalid(format!("n = {n} does not divide m(m-1)")));
                }
            }
            GraphFamily::Triangular { m } => {
                if m < &big(4) {
                    return Err(invalid("T_m needs m >= 4"));
                }
            }
            GraphFamily::Conference { q } => {
                if q < &big(5) || q.mod_floor(&big(4)) != BigInt::one() {
                    return Err(invalid("conference graphs need q >= 5, q = 1 mod 4"));
                }
            }
        }
        Ok(())
    }
}

/// Spectral parameters of a family member.
pub fn family_spectral(fam: &GraphFamily) -> Result<SpectralParams> {
    fam.validate()?;
    let (rho, sigma, f, g) = match fam {
        GraphFamily::Multipartite { m, n } => (big(0), -n.clone(), m * (n - 1i32), m - 1i32),
        GraphFamily::CoTriangular { n } => (big(1), -(n - 3i32), n * (n - 3i32) / 2i32, n - 1i32),
        GraphFamily::Symplectic { d, q } => {
            let qd1 = q.pow(d - 1);
            let qd = q.pow(*d);
            let den = 2 * (q - 1i32);
            let fnum = q * (&qd1 - 1i32) * (&qd + 1i32);
            let gnum = q * (&qd1 + 1i32) * (&qd - 1i32);
            if !fnum.is_multiple_of(&den) || !gnum.is_multiple_of(&den) {
                return Err(invalid("non-integral multiplicities"));
            }
            (qd1.clone(), -qd1, fnum / &den, gnum / &den)
        }
        GraphFamily::Steiner { n, m } => (
            m - n - 1i32,
            -n.clone(),
            m * (n - 1i32),
            m * (m - n + 1i32) - 1i32 - m * (m - 1i32) / n,
        ),
        GraphFamily::Triangular { m } => (
            m - 4i32,
            big(-2),
            m - 1i32,
            (m - 1i32) * (m - 2i32) / 2i32 - 1i32,
        ),
        GraphFamily::Conference { q } => {
            let s = exact_sqrt(q).ok_or_else(|| Error::NonIntegralSpectrum {
                vertices: q.clone(),
            })?;
            let h = (q - 1i32) / 2i32;
            ((&s - 1i32) / 2i32, -(&s + 1i32) / 2i32, h.clone(), h)
        }
    };
    SpectralParams::new(rho, sigma, f, g)
}

/// delta(G) as a square class and eps_p(G) on a recorded prime set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphInvariants {
    pub discriminant: SquareClass,
    pub hasse: HasseMap,
}

impl GraphInvariants {
    pub fn hasse_at(&self, p: &BigUint) -> Sign {
        self.hasse.get(p)
    }
}

fn class(x: &BigInt) -> Result<SquareClass> {
    SquareClass::of_int(x)
}

// Hilbert symbol of two nonzero integers, via their square classes.
struct Symbols {
    terms: Vec<(SquareClass, SquareClass, BigInt)>,
}

impl Symbols {
    fn new() -> Symbols {
        Symbols { terms: Vec::new() }
    }

    /// Multiply in (x, y)_p^e.
    fn push(&mut self, x: &BigInt, y: &BigInt, e: BigInt) -> Result<()> {
        if e.is_odd() {
            self.terms.push((class(x)?, class(y)?, e));
        }
        Ok(())
    }

    fn eval(&self, p: &BigUint) -> Sign {
        self.terms
            .iter()
            .map(|(x, y, e)| hilbert_classes(x, y, p).pow(e))
            .product()
    }

    fn into_map(self, extra: &SquareClass) -> HasseMap {
        let classes: Vec<SquareClass> = self
            .terms
            .iter()
            .flat_map(|(x, y, _)| [x.clone(), y.clone()])
            .chain(std::iter::once(extra.clone()))
            .collect();
        let primes = relevant_primes_of_classes(&classes);
        HasseMap::from_fn(primes, |p| self.eval(p))
    }
}

fn binom2(n: &BigInt) -> BigInt {
    n * (n - 1i32) / 2i32
}

/// Closed-form invariants for K_{m x n}, T_n*, Sp(2d, 2) and S_n(m).
pub fn family_invariants(fam: &GraphFamily) -> Result<GraphInvariants> {
    fam.validate()?;
    let minus_one = big(-1);
    let mut sym = Symbols::new();
    let delta = match fam {
        GraphFamily::Multipartite { m, n } => {
            sym.push(&minus_one, n, binom2(&(m - 1i32)))?;
            sym.push(m, n, m.clone())?;
            sym.push(&minus_one, m, big(1))?;
            m * n.pow((m - 1i32).to_u32().ok_or_else(|| invalid("m too large"))?)
        }
        GraphFamily::CoTriangular { n } => {
            let n2 = n - 2i32;
            sym.push(&minus_one, &n2, binom2(&(n - 1i32)))?;
            sym.push(&n2, n, n.clone())?;
            sym.push(&minus_one, n, big(1))?;
            // n (n-2)^(n-1): only the parity of the exponent matters.
            if (n - 1i32).is_odd() {
                n * &n2
            } else {
                n.clone()
            }
        }
        GraphFamily::Symplectic { d, q } => {
            if q != &big(2) {
                return Err(Error::NoClosedForm(format!(
                    "Sp({}, {q}) with q > 2",
                    2 * d
                )));
            }
            let two_d = big(2).pow(*d);
            sym.push(&big(2), &(&two_d * &two_d - 1i32), BigInt::from(*d))?;
            big(2).pow(d - 1) * (two_d + 1i32)
        }
        GraphFamily::Steiner { n, m } => {
            let mn = m * n;
            let f = &mn - m;
            let m1 = m - 1i32;
            sym.push(&minus_one, &m1, binom2(&f) - 1i32)?;
            sym.push(&-mn.clone(), &m1, f.clone())?;
            sym.push(&(&mn * &m1), &-(&f + 1i32), big(1))?;
            // mn (m-1)^(m(n-1)), reduced by the exponent's parity.
            if f.is_odd() {
                mn * m1
            } else {
                mn
            }
        }
        GraphFamily::Triangular { .. } | GraphFamily::Conference { .. } => {
            return Err(Error::NoClosedForm(format!("{fam}")));
        }
    };
    let discriminant = class(&delta)?;
    let hasse = sym.into_map(&discriminant);
    Ok(GraphInvariants {
        discriminant,
        hasse,
    })
}

/// Evaluate the closed-form eps_p at an arbitrary prime.
pub fn family_hasse_at(fam: &GraphFamily, p: &BigUint) -> Result<Sign> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    Ok(family_invariants(fam)?.hasse.get(p))
}

/// Recognize a connected, regular, non-complete SRG and extract its
/// spectral parameters. Irrational eigenvalues give the conference signal.
pub fn srg_recognize(a: &AdjacencyMatrix) -> Result<SpectralParams> {
    let b = a.order();
    let not = |msg: String| Err(Error::NotStronglyRegular(msg));
    if b < 3 {
        return not(format!("order {b} is too small"));
    }
    let k = a.degree(0);
    if let Some(v) = (1..b).find(|&v| a.degree(v) != k) {
        return not(format!(
            "not regular: vertex 0 has degree {k}, vertex {v} has degree {}",
            a.degree(v)
        ));
    }
    if k == b - 1 {
        return not("complete graph".into());
    }
    if !a.is_connected() {
        return not("disconnected".into());
    }
    let (mut c, mut d) = (None, None);
    for i in 0..b {
        for j in i + 1..b {
            let common = a.common_neighbours(i, j);
            let slot = if a.adjacent(i, j) { &mut c } else { &mut d };
            match *slot {
                None => *slot = Some(common),
                Some(x) if x != common => {
                    let kind = if a.adjacent(i, j) {
                        "adjacent"
                    } else {
                        "non-adjacent"
                    };
                    return not(format!(
                        "{kind} pairs have {x} and {common} common neighbours (vertices {i}, {j})"
                    ));
                }
                _ => {}
            }
        }
    }
    let (c, d) = (big(c.unwrap_or(0) as i64), big(d.unwrap_or(0) as i64));
    let a_deg = big(k as i64);
    let disc = (&c - &d).pow(2) + 4i32 * (&a_deg - &d);
    let Some(s) = exact_sqrt(&disc) else {
        return Err(Error::NonIntegralSpectrum {
            vertices: big(b as i64),
        });
    };
    let rho = (&c - &d + &s) / 2i32;
    let sigma = (&c - &d - &s) / 2i32;
    let num = -&a_deg - big(b as i64 - 1) * &sigma;
    let den = &rho - &sigma;
    if !num.is_multiple_of(&den) {
        return Err(Error::Inconsistent("non-integral multiplicity".into()));
    }
    let f = num / den;
    let g = big(b as i64 - 1) - &f;
    SpectralParams::new(rho, sigma, f, g)
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::Inconsistent("parameter exceeds machine range".into()))
}

/// M = b(A - rho I) - (a - rho) J, the integer multiple (sigma-rho) b E of
/// the minimal idempotent of rank g. Every defining property of E is
/// verified on M exactly.
pub fn idempotent_numerator(a: &AdjacencyMatrix, sp: &SpectralParams) -> Result<Vec<Vec<i64>>> {
    let n = a.order();
    if sp.vertices() != big(n as i64) {
        return Err(Error::Inconsistent(format!(
            "spectral parameters describe {} vertices, graph has {n}",
            sp.vertices()
        )));
    }
    let rho = to_i64(sp.rho())?;
    let sigma = to_i64(sp.sigma())?;
    let deg = to_i64(&sp.degree())?;
    let bb = n as i64;
    let m: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let aij = i64::from(a.adjacent(i, j));
                    let id = i64::from(i == j);
                    bb * (aij - rho * id) - (deg - rho)
                })
                .collect()
        })
        .collect();
    let fail = |what: &str| {
        Err(Error::Inconsistent(format!(
            "idempotent check failed: {what}"
        )))
    };
    if m.iter().any(|row| row.iter().sum::<i64>() != 0) {
        return fail("row sums");
    }
    let scale = (sigma - rho) as i128 * bb as i128;
    for i in 0..n {
        for j in 0..n {
            let mut mm: i128 = 0;
            let mut am: i128 = 0;
            for k in 0..n {
                mm += m[i][k] as i128 * m[k][j] as i128;
                if a.adjacent(i, k) {
                    am += m[k][j] as i128;
                }
            }
            if mm != scale * m[i][j] as i128 {
                return fail("E^2 = E");
            }
            if am != sigma as i128 * m[i][j] as i128 {
                return fail("AE = sigma E");
            }
        }
    }
    let rows: Vec<Vec<i64>> = m.clone();
    let rank = Matrix::from_int_rows(&rows).rank();
    if big(rank as i64) != *sp.g() {
        return fail("rank g");
    }
    Ok(m)
}

/// E = (A - rho I - ((a - rho)/b) J) / (sigma - rho).
pub fn minimal_idempotent(a: &AdjacencyMatrix, sp: &SpectralParams) -> Result<SymMatrix> {
    let m = idempotent_numerator(a, sp)?;
    let c = Rational::from_integer((sp.sigma() - sp.rho()) * sp.vertices());
    let n = a.order();
    Ok(SymMatrix::from_fn(n, |i, j| {
        Rational::from_integer(big(m[i][j])) / &c
    }))
}

/// delta(G) and eps_p(G) from a nonsingular g x g principal submatrix of E,
/// chosen by greedy column selection.
pub fn graph_invariants_direct(a: &AdjacencyMatrix) -> Result<GraphInvariants> {
    let sp = srg_recognize(a)?;
    let m = idempotent_numerator(a, &sp)?;
    let g = sp.g().to_usize().expect("g fits the graph order");
    let mat = Matrix::from_int_rows(&m);
    let s = select_independent_columns(&mat, g)?;
    invariants_on_columns(&m, &sp, &s)
}

/// Invariants of E[S, S] for a given index set S.
pub fn invariants_on_columns(
    m: &[Vec<i64>],
    sp: &SpectralParams,
    s: &[usize],
) -> Result<GraphInvariants> {
    let m0 = SymMatrix::from_fn(s.len(), |i, j| Rational::from_integer(big(m[s[i]][s[j]])));
    let c = Rational::from_integer((sp.sigma() - sp.rho()) * sp.vertices());
    let d = diagonalize(&m0)?.scale(&c.recip())?;
    let inv = invariants_of_diag(&d);
    Ok(GraphInvariants {
        discriminant: inv.discriminant,
        hasse: inv.hasse,
    })
}
