//! Family-specific necessary conditions: the p-adic test specialised to
//! K_{m x n}, T_n*, Sp(2d, 2) and S_n(m), clause by clause.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed};

use super::{Condition, ConditionReport, Witness};
use crate::arith::{exact_sqrt, is_sum_two_squares, Rational, Sign};
use crate::hilbert::{hilbert_int, legendre_eq_solvable, relevant_primes, Solvability};
use crate::{Error, Result};

fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

fn square(label: &str, x: BigInt) -> Condition {
    Condition::check(label, exact_sqrt(&x).is_some(), || {
        Witness::NotSquare(Rational::from(x.clone()))
    })
}

fn two_squares(label: &str, x: BigInt) -> Condition {
    let ok = !x.is_negative() && is_sum_two_squares(x.magnitude());
    Condition::check(label, ok, || Witness::NotSumOfTwoSquares(x.clone()))
}

// a x^2 + b y^2 = z^2 has a nontrivial solution.
fn legendre(label: &str, a: &BigInt, b: &BigInt) -> Result<Condition> {
    Ok(
        match legendre_eq_solvable(&Rational::from(a.clone()), &Rational::from(b.clone()))? {
            Solvability::Solvable => Condition::pass(label),
            Solvability::Unsolvable { failing, .. } => {
                Condition::fail(label, Witness::Primes(failing))
            }
        },
    )
}

fn primes_of(values: &[&BigInt]) -> Result<Vec<BigUint>> {
    let rs: Vec<Rational> = values
        .iter()
        .map(|x| Rational::from((*x).clone()))
        .collect();
    relevant_primes(&rs)
}

// Identity of Hilbert-symbol expressions checked at every relevant prime.
fn local_identity(
    label: &str,
    values: &[&BigInt],
    mut holds: impl FnMut(&BigUint) -> bool,
) -> Result<Condition> {
    let failing: Vec<BigUint> = primes_of(values)?
        .into_iter()
        .filter(|p| !holds(p))
        .collect();
    Ok(Condition::check(label, failing.is_empty(), || {
        Witness::Primes(failing.clone())
    }))
}

fn sign_pow(odd: bool) -> BigInt {
    if odd {
        int(-1)
    } else {
        BigInt::one()
    }
}

fn mod4(x: &BigInt) -> u8 {
    x.mod_floor(&int(4)).try_into().unwrap_or(0)
}

fn require(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameters(msg.into()))
    }
}

/// Strongly resolvable designs, block graph K_{m x n}: clauses a1 to b7,
/// only those whose parity hypothesis applies.
pub fn multipartite_clauses(m: &BigInt, n: &BigInt, mu: &BigInt) -> Result<ConditionReport> {
    require(
        m >= &int(2) && n >= &int(2) && mu.is_positive(),
        "needs m, n >= 2 and mu >= 1",
    )?;
    let w = m * n - m + 1i32;
    let (mm, nm) = (mod4(m), mod4(n));
    let mut out = Vec::new();
    if m.is_even() {
        out.push(square("multipartite-a1", w.clone()));
    }
    if m.is_odd() && n.is_even() {
        out.push(square("multipartite-a2", &w * mu));
    }
    if m.is_odd() && n.is_odd() {
        out.push(square("multipartite-a3", n * &w));
    }
    if mm == 2 {
        out.push(two_squares("multipartite-b1", n.clone()));
    }
    if mm == 3 && nm == 2 {
        out.push(two_squares("multipartite-b2", n.clone()));
    }
    if mm == 3 && nm == 0 {
        out.push(two_squares("multipartite-b3", w.clone()));
    }
    if mm == 1 && nm == 2 {
        out.push(two_squares("multipartite-b4", n * &w));
    }
    if m.is_odd() && n.is_odd() && mm != nm {
        let half: BigInt = (n - 1) / 2;
        out.push(legendre(
            "multipartite-b5",
            mu,
            &(sign_pow(half.is_odd()) * n),
        )?);
    }
    if mm == 1 && nm == 1 {
        out.push(legendre("multipartite-b6", n, &-mu)?);
    }
    if mm == 3 && nm == 3 {
        let (a, b) = (-mu, -n);
        let two = BigUint::from(2u32);
        out.push(local_identity(
            "multipartite-b7",
            &[mu, n, &int(-1)],
            |p| {
                let want = if p == &two { Sign::Minus } else { Sign::Plus };
                hilbert_int(&a, &b, p) == want
            },
        )?);
    }
    Ok(ConditionReport { conditions: out })
}

/// Co-triangular designs, block graph T_n*: clauses a1 to b4.
pub fn cotriangular_clauses(n: &BigInt, mu: &BigInt) -> Result<ConditionReport> {
    require(n >= &int(5) && mu.is_positive(), "needs n >= 5 and mu >= 1")?;
    let n2 = n - 2;
    let c = (n - 1) * (n - 2) / 2;
    let mut out = Vec::new();
    match mod4(n) {
        0 => {
            let s = sign_pow((n / 4i32).is_odd());
            let (x, y) = (&s * &c, &s * 2);
            out.push(local_identity(
                "cotriangular-b1",
                &[mu, &c, &n2, &int(2), &int(-1)],
                |p| hilbert_int(mu, &x, p) == hilbert_int(&n2, &y, p),
            )?);
        }
        1 => {
            out.push(square("cotriangular-a1", mu.clone()));
            let s = sign_pow(((n - 1i32) / 4i32).is_odd());
            out.push(legendre("cotriangular-b2", &n2, &(s * 2))?);
        }
        2 => {
            out.push(square("cotriangular-a2", &n2 * mu));
            out.push(two_squares("cotriangular-b3", n - 1));
        }
        _ => {
            out.push(square("cotriangular-a3", n2.clone()));
            let s = sign_pow(((n - 3i32) / 4i32).is_odd());
            out.push(legendre("cotriangular-b4", mu, &(s * c))?);
        }
    }
    Ok(ConditionReport { conditions: out })
}

/// Block graph Sp(2d, 2): the order 2^d mu must be a square.
pub fn symplectic_binary_clauses(d: u32, mu: &BigInt) -> Result<ConditionReport> {
    require(d >= 3 && mu.is_positive(), "needs d >= 3 and mu >= 1")?;
    let nu = int(2).pow(d) * mu;
    Ok(ConditionReport {
        conditions: vec![square("symplectic-order-square", nu)],
    })
}

/// Multi-Steiner designs, block graph S_n(m): clauses a and b.
pub fn steiner_clauses(n: &BigInt, m: &BigInt, mu: &BigInt) -> Result<ConditionReport> {
    require(
        n >= &int(2) && m > n && mu.is_positive(),
        "needs 2 <= n < m and mu >= 1",
    )?;
    require((m * (m - 1i32)).is_multiple_of(n), "needs n | m(m-1)")?;
    let f = m * n - m;
    let mut out = Vec::new();
    if m.is_odd() && n.is_even() {
        out.push(square("steiner-a", mu.clone()));
    }
    let odd = (&f * (&f - 1i32) / 2i32).is_odd();
    out.push(legendre("steiner-b", mu, &(sign_pow(odd) * (f + 1)))?);
    Ok(ConditionReport { conditions: out })
}
