//! Local Hilbert symbols, the real-place symbol and global solvability of
//! a x^2 + b y^2 = z^2.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{
    factorize, is_prime, legendre_unchecked, uint_valuation, Rational, Sign, SquareClass,
};
use crate::error::{domain, Result};

/// A place of the rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Prime(BigUint),
    Real,
}

impl Place {
    /// A prime place; rejects non-primes.
    pub fn prime(p: impl Into<BigUint>) -> Result<Place> {
        let p = p.into();
        if !is_prime(&p) {
            return Err(domain(format!("{p} is not prime")));
        }
        Ok(Place::Prime(p))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Real => f.write_str("inf"),
        }
    }
}

fn nonzero(x: &Rational) -> Result<()> {
    if x.is_zero() {
        Err(domain("Hilbert symbol of zero"))
    } else {
        Ok(())
    }
}

// a/b and a*b differ by the square b^2.
fn integer_rep(x: &Rational) -> BigInt {
    x.numer() * x.denom()
}

fn residue_mod8(u: &BigInt) -> u8 {
    u.mod_floor(&BigInt::from(8)).to_u8().unwrap_or(0)
}

/// Hilbert symbol of two nonzero integers at a prime p (not re-verified).
pub(crate) fn hilbert_int(a: &BigInt, b: &BigInt, p: &BigUint) -> Sign {
    if p == &BigUint::from(2u32) {
        let alpha = a.magnitude().trailing_zeros().unwrap_or(0);
        let beta = b.magnitude().trailing_zeros().unwrap_or(0);
        let ru = residue_mod8(&(a >> alpha));
        let rv = residue_mod8(&(b >> beta));
        let eps = |r: u8| u64::from(r % 4 == 3);
        let omega = |r: u8| u64::from(r == 3 || r == 5);
        let e = eps(ru) * eps(rv) + alpha * omega(rv) + beta * omega(ru);
        return Sign::from_parity(e % 2 == 1);
    }
    let alpha = uint_valuation(a.magnitude(), p);
    let beta = uint_valuation(b.magnitude(), p);
    if alpha == 0 && beta == 0 {
        return Sign::Plus;
    }
    let pi = BigInt::from(p.clone());
    let u = a / pi.pow(alpha as u32);
    let v = b / pi.pow(beta as u32);
    let eps_p = (p % 4u32) == BigUint::from(3u32);
    let mut s = Sign::from_parity(eps_p && alpha % 2 == 1 && beta % 2 == 1);
    if beta % 2 == 1 {
        s = s * legendre_unchecked(&u, p);
    }
    if alpha % 2 == 1 {
        s = s * legendre_unchecked(&v, p);
    }
    s
}

pub(crate) fn hilbert_unchecked(a: &Rational, b: &Rational, p: &BigUint) -> Sign {
    hilbert_int(&integer_rep(a), &integer_rep(b), p)
}

pub(crate) fn hilbert_classes(a: &SquareClass, b: &SquareClass, p: &BigUint) -> Sign {
    hilbert_int(&a.representative(), &b.representative(), p)
}

/// The Hilbert symbol (a, b)_p.
pub fn hilbert_symbol(a: &Rational, b: &Rational, p: &BigUint) -> Result<Sign> {
    nonzero(a)?;
    nonzero(b)?;
    if !is_prime(p) {
        return Err(domain(format!("{p} is not prime")));
    }
    Ok(hilbert_unchecked(a, b, p))
}

/// -1 exactly when both arguments are negative.
pub fn real_symbol(a: &Rational, b: &Rational) -> Result<Sign> {
    nonzero(a)?;
    nonzero(b)?;
    Ok(Sign::from_parity(a.is_negative() && b.is_negative()))
}

pub fn hilbert_symbol_at(a: &Rational, b: &Rational, place: &Place) -> Result<Sign> {
    match place {
        Place::Prime(p) => hilbert_symbol(a, b, p),
        Place::Real => real_symbol(a, b),
    }
}

fn odd_primes_into(x: &BigInt, out: &mut BTreeSet<BigUint>) -> Result<()> {
    let fac = factorize(x.magnitude())?;
    for (p, e) in fac.factors {
        if e % 2 == 1 && p != BigUint::from(2u32) {
            out.insert(p);
        }
    }
    Ok(())
}

/// {2} together with every odd prime dividing the squarefree part of some
/// value, ascending. Outside this set all pairwise symbols are +1.
pub fn relevant_primes(values: &[Rational]) -> Result<Vec<BigUint>> {
    let mut set = BTreeSet::new();
    set.insert(BigUint::from(2u32));
    for x in values {
        nonzero(x)?;
        odd_primes_into(&integer_rep(x), &mut set)?;
    }
    Ok(set.into_iter().collect())
}

/// Same as [`relevant_primes`] for values already reduced to square classes.
pub fn relevant_primes_of_classes<'a>(
    classes: impl IntoIterator<Item = &'a SquareClass>,
) -> Vec<BigUint> {
    let mut set = BTreeSet::new();
    set.insert(BigUint::from(2u32));
    for c in classes {
        if !c.squarefree().is_one() {
            odd_primes_into(&c.representative(), &mut set).expect("nonzero class");
        }
    }
    set.into_iter().collect()
}

/// Outcome of the local-global test for a x^2 + b y^2 = z^2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solvability {
    Solvable,
    /// `witness` is the least prime at which the Hilbert symbol is -1;
    /// `failing` lists every such prime, ascending.
    Unsolvable {
        witness: BigUint,
        failing: Vec<BigUint>,
    },
}

impl Solvability {
    pub fn is_solvable(&self) -> bool {
        matches!(self, Solvability::Solvable)
    }

    pub fn witness(&self) -> Option<&BigUint> {
        match self {
            Solvability::Solvable => None,
            Solvability::Unsolvable { witness, .. } => Some(witness),
        }
    }
}

/// Decide whether a x^2 + b y^2 = z^2 has a nontrivial rational solution.
pub fn legendre_eq_solvable(a: &Rational, b: &Rational) -> Result<Solvability> {
    let failing: Vec<BigUint> = relevant_primes(&[a.clone(), b.clone()])?
        .into_iter()
        .filter(|p| hilbert_unchecked(a, b, p) == Sign::Minus)
        .collect();
    match failing.first() {
        None => Ok(Solvability::Solvable),
        Some(w) => Ok(Solvability::Unsolvable {
            witness: w.clone(),
            failing,
        }),
    }
}

/// n is a sum of two squares iff (-1, n)_p = +1 at every prime.
pub fn sum_two_squares_via_hilbert(n: &BigUint) -> Result<bool> {
    if n.is_zero() {
        return Err(domain("n must be positive"));
    }
    let minus_one = Rational::from_integer(-BigInt::one());
    let nq = Rational::from_integer(BigInt::from(n.clone()));
    Ok(legendre_eq_solvable(&minus_one, &nq)?.is_solvable())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_sum_two_squares;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn u(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn h(a: Rational, b: Rational, p: u64) -> Sign {
        hilbert_symbol(&a, &b, &u(p)).unwrap()
    }

    const PRIMES: [u64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];

    fn nonzero_rational() -> impl Strategy<Value = Rational> {
        (-2000i64..2000, 1i64..2000)
            .prop_filter("nonzero", |(n, _)| *n != 0)
            .prop_map(|(n, d)| q(n, d))
    }

    #[test]
    fn known_symbols() {
        assert_eq!(h(q(-1, 1), q(-1, 1), 2), Sign::Minus);
        assert_eq!(h(q(2, 1), q(21, 1), 2), Sign::Minus);
        for p in PRIMES {
            assert_eq!(h(q(2, 1), q(2, 1), p), Sign::Plus);
        }
        assert_eq!(h(q(6, 1), q(-1, 1), 3), Sign::Minus);
        // (p, u)_p is the Legendre symbol of u.
        assert_eq!(h(q(7, 1), q(3, 1), 7), Sign::Minus);
        assert_eq!(h(q(7, 1), q(2, 1), 7), Sign::Plus);
        // (2, u)_2 = (-1)^omega(u).
        assert_eq!(h(q(2, 1), q(3, 1), 2), Sign::Minus);
        assert_eq!(h(q(2, 1), q(7, 1), 2), Sign::Plus);
    }

    #[test]
    fn domain_errors() {
        assert!(hilbert_symbol(&q(0, 1), &q(1, 1), &u(3)).is_err());
        assert!(hilbert_symbol(&q(1, 1), &q(1, 1), &u(15)).is_err());
        assert!(real_symbol(&q(0, 1), &q(1, 1)).is_err());
        assert!(relevant_primes(&[q(0, 1)]).is_err());
        assert!(Place::prime(9u32).is_err());
    }

    #[test]
    fn real_place() {
        assert_eq!(real_symbol(&q(1, 1), &q(-1, 1)).unwrap(), Sign::Plus);
        assert_eq!(real_symbol(&q(-2, 1), &q(-3, 1)).unwrap(), Sign::Minus);
        assert_eq!(real_symbol(&q(-1, 1), &q(5, 1)).unwrap(), Sign::Plus);
        let place = Place::Real;
        assert_eq!(
            hilbert_symbol_at(&q(-1, 1), &q(-1, 1), &place).unwrap(),
            Sign::Minus
        );
    }

    #[test]
    fn relevant_prime_sets() {
        assert_eq!(relevant_primes(&[q(1, 1)]).unwrap(), vec![u(2)]);
        assert_eq!(
            relevant_primes(&[q(6, 1), q(-1, 1)]).unwrap(),
            vec![u(2), u(3)]
        );
        assert_eq!(
            relevant_primes(&[q(2, 1), q(21, 1)]).unwrap(),
            vec![u(2), u(3), u(7)]
        );
        // Squares drop out.
        assert_eq!(
            relevant_primes(&[q(45, 1), q(1, 9)]).unwrap(),
            vec![u(2), u(5)]
        );
    }

    #[test]
    fn legendre_equation_examples() {
        // Fails at 3, and by the product formula also at 2, the least prime.
        assert_eq!(h(q(6, 1), q(-1, 1), 3), Sign::Minus);
        assert_eq!(
            legendre_eq_solvable(&q(6, 1), &q(-1, 1)).unwrap(),
            Solvability::Unsolvable {
                witness: u(2),
                failing: vec![u(2), u(3)]
            }
        );
        assert_eq!(
            legendre_eq_solvable(&q(2, 1), &q(21, 1)).unwrap().witness(),
            Some(&u(2))
        );
        for b in [-7, -1, 2, 3, 30] {
            assert!(legendre_eq_solvable(&q(1, 1), &q(b, 1))
                .unwrap()
                .is_solvable());
        }
    }

    #[test]
    fn two_squares_examples() {
        assert!(sum_two_squares_via_hilbert(&u(5)).unwrap());
        assert!(!sum_two_squares_via_hilbert(&u(21)).unwrap());
        assert!(sum_two_squares_via_hilbert(&u(2)).unwrap());
        assert!(sum_two_squares_via_hilbert(&u(0)).is_err());
        for n in 1..3000u64 {
            assert_eq!(
                sum_two_squares_via_hilbert(&u(n)).unwrap(),
                is_sum_two_squares(&u(n)),
                "n={n}"
            );
        }
    }

    proptest! {
        #[test]
        fn symmetric(a in nonzero_rational(), b in nonzero_rational(), i in 0usize..10) {
            let p = PRIMES[i];
            prop_assert_eq!(h(a.clone(), b.clone(), p), h(b, a, p));
        }

        #[test]
        fn bilinear(a in nonzero_rational(), b in nonzero_rational(), c in nonzero_rational(), i in 0usize..10) {
            let p = PRIMES[i];
            let ab = &a * &b;
            prop_assert_eq!(h(ab, c.clone(), p), h(a, c.clone(), p) * h(b, c, p));
        }

        #[test]
        fn square_invariant(a in nonzero_rational(), b in nonzero_rational(), t in nonzero_rational(), i in 0usize..10) {
            let p = PRIMES[i];
            let at2 = &a * &t * &t;
            prop_assert_eq!(h(a, b.clone(), p), h(at2, b, p));
        }

        #[test]
        fn special_identities(a in nonzero_rational(), i in 0usize..10) {
            let p = PRIMES[i];
            prop_assert_eq!(h(a.clone(), -a.clone(), p), Sign::Plus);
            prop_assert_eq!(h(-a.clone(), a.clone(), p), Sign::Plus);
            let one = Rational::one();
            if a != one {
                let oneminus = &one - &a;
                prop_assert_eq!(h(a, oneminus, p), Sign::Plus);
            }
        }

        #[test]
        fn unit_pairs_trivial_at_odd_primes(a in nonzero_rational(), b in nonzero_rational(), i in 1usize..10) {
            let p = PRIMES[i] as i64;
            let unit = |x: &Rational| {
                let n = x.numer().to_i64().unwrap();
                let d = x.denom().to_i64().unwrap();
                n % p != 0 && d % p != 0
            };
            if unit(&a) && unit(&b) {
                prop_assert_eq!(h(a, b, p as u64), Sign::Plus);
            }
        }

        #[test]
        fn product_formula(a in nonzero_rational(), b in nonzero_rational()) {
            let mut s = real_symbol(&a, &b).unwrap();
            for p in relevant_primes(&[a.clone(), b.clone()]).unwrap() {
                s = s * hilbert_symbol(&a, &b, &p).unwrap();
            }
            prop_assert_eq!(s, Sign::Plus);
        }
    }
}
