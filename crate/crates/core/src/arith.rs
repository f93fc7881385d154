//! Exact integer and rational arithmetic: factorization, valuations, square
//! classes, Legendre symbols and 2-adic unit characters.

use std::fmt;
use std::iter::Product;
use std::ops::{Mul, Neg};
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};

pub type Rational = BigRational;

/// Trial division covers every prime below this bound before Pollard rho
/// takes over.
pub const TRIAL_BOUND: u32 = 1_000_000;

/// The first 13 primes form a deterministic Miller-Rabin witness set for
/// every n below this value.
const MR_DETERMINISTIC_LIMIT: u128 = 3_317_044_064_679_887_385_961_981;

/// Number of prime bases used above the deterministic limit.
const MR_LARGE_ROUNDS: usize = 64;

/// A value in {+1, -1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^e` for `e` given by its parity.
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// Raise to an integer power; only the parity of `e` matters.
    pub fn pow(self, e: &BigInt) -> Sign {
        if e.is_odd() {
            self
        } else {
            Sign::Plus
        }
    }

    pub fn pow_u64(self, e: u64) -> Sign {
        if e % 2 == 1 {
            self
        } else {
            Sign::Plus
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self != rhs)
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl Product for Sign {
    fn product<I: Iterator<Item = Sign>>(iter: I) -> Sign {
        iter.fold(Sign::Plus, |a, b| a * b)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Prime factorization `sign * prod p^e`, primes strictly ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: Sign,
    pub factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub fn value(&self) -> BigInt {
        let mut acc = BigUint::one();
        for (p, e) in &self.factors {
            acc *= p.pow(*e);
        }
        let v = BigInt::from(acc);
        match self.sign {
            Sign::Plus => v,
            Sign::Minus => -v,
        }
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_BOUND as usize;
        let mut composite = vec![false; n + 1];
        let mut out = Vec::new();
        for i in 2..=n {
            if composite[i] {
                continue;
            }
            out.push(i as u32);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        out
    })
}

/// The first `k` primes (k at most the number of primes below the trial bound).
pub fn first_primes(k: usize) -> &'static [u32] {
    &small_primes()[..k]
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn is_prime_big(n: &BigUint) -> bool {
    if let Some(x) = n.to_u64() {
        return is_prime_u64(x);
    }
    for &p in first_primes(100) {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let rounds = match n.to_u128() {
        Some(x) if x < MR_DETERMINISTIC_LIMIT => 13,
        _ => MR_LARGE_ROUNDS,
    };
    'witness: for &a in first_primes(rounds) {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality test. Deterministic below 3.3e24; above that a fixed set of 64
/// prime bases is used.
pub fn is_prime(n: &BigUint) -> bool {
    is_prime_big(n)
}

fn rho_u64(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    const M: u64 = 128;
    for c in 1u64.. {
        let f = |x: u64| ((x as u128 * x as u128 + c as u128) % n as u128) as u64;
        let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..M.min(r - k) {
                    y = f(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += M;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn rho_big(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    const M: u64 = 128;
    let one = BigUint::one();
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut x = y.clone();
        let mut ys = y.clone();
        let (mut r, mut q, mut g) = (1u64, one.clone(), one.clone());
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..M.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += M;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
    }
    unreachable!()
}

// Splits n, which has no prime factor below TRIAL_BOUND.
fn split_u64(n: u64, out: &mut Vec<BigUint>) {
    if n == 1 {
        return;
    }
    let bound = TRIAL_BOUND as u64;
    if n < bound * bound || is_prime_u64(n) {
        out.push(BigUint::from(n));
        return;
    }
    let d = rho_u64(n);
    split_u64(d, out);
    split_u64(n / d, out);
}

fn split_big(n: BigUint, out: &mut Vec<BigUint>) {
    if let Some(x) = n.to_u64() {
        split_u64(x, out);
        return;
    }
    if is_prime_big(&n) {
        out.push(n);
        return;
    }
    let d = rho_big(&n);
    let rest = &n / &d;
    split_big(d, out);
    split_big(rest, out);
}

fn trial_u64(mut n: u64, out: &mut Vec<BigUint>) -> u64 {
    for &p in small_primes() {
        let p = p as u64;
        if p * p > n {
            break;
        }
        while n % p == 0 {
            out.push(BigUint::from(p));
            n /= p;
        }
    }
    if n > 1 && n < (TRIAL_BOUND as u64) * (TRIAL_BOUND as u64) {
        out.push(BigUint::from(n));
        n = 1;
    }
    n
}

/// Factor a positive integer.
pub fn factorize(n: &BigUint) -> Result<Factorization> {
    if n.is_zero() {
        return Err(domain("cannot factor zero"));
    }
    let mut primes = Vec::new();
    if let Some(x) = n.to_u64() {
        let rest = trial_u64(x, &mut primes);
        split_u64(rest, &mut primes);
    } else {
        let mut m = n.clone();
        for &p in small_primes() {
            if let Some(x) = m.to_u64() {
                let rest = trial_u64(x, &mut primes);
                m = BigUint::from(rest);
                break;
            }
            let pb = BigUint::from(p);
            if &pb * &pb > m {
                break;
            }
            while (&m % p).is_zero() {
                primes.push(pb.clone());
                m /= p;
            }
        }
        split_big(m, &mut primes);
    }
    primes.sort();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(Factorization {
        sign: Sign::Plus,
        factors,
    })
}

/// Factor a nonzero signed integer.
pub fn factorize_int(n: &BigInt) -> Result<Factorization> {
    let mut fac = factorize(n.magnitude())?;
    if n.is_negative() {
        fac.sign = Sign::Minus;
    }
    Ok(fac)
}

fn check_prime(p: &BigUint) -> Result<()> {
    if !is_prime(p) {
        return Err(domain(format!("{p} is not prime")));
    }
    Ok(())
}

pub(crate) fn uint_valuation(n: &BigUint, p: &BigUint) -> u64 {
    if let (Some(n), Some(p)) = (n.to_u64(), p.to_u64()) {
        let mut n = n;
        let mut v = 0;
        while n % p == 0 {
            n /= p;
            v += 1;
        }
        return v;
    }
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero integer.
pub fn valuation_int(n: &BigInt, p: &BigUint) -> Result<u64> {
    check_prime(p)?;
    if n.is_zero() {
        return Err(domain("valuation of zero"));
    }
    Ok(uint_valuation(n.magnitude(), p))
}

/// p-adic valuation of a nonzero rational.
pub fn valuation(x: &Rational, p: &BigUint) -> Result<i64> {
    check_prime(p)?;
    if x.is_zero() {
        return Err(domain("valuation of zero"));
    }
    Ok(rational_valuation(x, p))
}

pub(crate) fn rational_valuation(x: &Rational, p: &BigUint) -> i64 {
    uint_valuation(x.numer().magnitude(), p) as i64
        - uint_valuation(x.denom().magnitude(), p) as i64
}

/// Class of a nonzero rational modulo squares: a sign and a squarefree
/// positive integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass {
    sign: Sign,
    squarefree: BigUint,
}

impl SquareClass {
    pub fn one() -> SquareClass {
        SquareClass {
            sign: Sign::Plus,
            squarefree: BigUint::one(),
        }
    }

    pub fn of_int(n: &BigInt) -> Result<SquareClass> {
        if n.is_zero() {
            return Err(domain("square class of zero"));
        }
        let fac = factorize(n.magnitude())?;
        let mut sf = BigUint::one();
        for (p, e) in fac.factors {
            if e % 2 == 1 {
                sf *= p;
            }
        }
        let sign = if n.is_negative() {
            Sign::Minus
        } else {
            Sign::Plus
        };
        Ok(SquareClass {
            sign,
            squarefree: sf,
        })
    }

    /// x = a/b lies in the class of a*b.
    pub fn of(x: &Rational) -> Result<SquareClass> {
        if x.is_zero() {
            return Err(domain("square class of zero"));
        }
        let num = SquareClass::of_int(x.numer())?;
        let den = SquareClass::of_int(x.denom())?;
        Ok(&num * &den)
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn squarefree(&self) -> &BigUint {
        &self.squarefree
    }

    /// The squarefree integer representing the class.
    pub fn representative(&self) -> BigInt {
        let v = BigInt::from(self.squarefree.clone());
        match self.sign {
            Sign::Plus => v,
            Sign::Minus => -v,
        }
    }

    pub fn to_rational(&self) -> Rational {
        Rational::from_integer(self.representative())
    }

    pub fn is_square(&self) -> bool {
        self.sign == Sign::Plus && self.squarefree.is_one()
    }
}

impl Mul for &SquareClass {
    type Output = SquareClass;
    fn mul(self, rhs: &SquareClass) -> SquareClass {
        let g = self.squarefree.gcd(&rhs.squarefree);
        let sf = (&self.squarefree / &g) * (&rhs.squarefree / &g);
        SquareClass {
            sign: self.sign * rhs.sign,
            squarefree: sf,
        }
    }
}

impl Mul for SquareClass {
    type Output = SquareClass;
    fn mul(self, rhs: SquareClass) -> SquareClass {
        &self * &rhs
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.representative())
    }
}

pub fn square_class(x: &Rational) -> Result<SquareClass> {
    SquareClass::of(x)
}

/// Exact square root of a nonnegative perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

pub fn is_perfect_square(x: &Rational) -> bool {
    exact_sqrt(x.numer()).is_some() && exact_sqrt(x.denom()).is_some()
}

pub(crate) fn legendre_unchecked(u: &BigInt, p: &BigUint) -> Sign {
    if let Some(pp) = p.to_u64() {
        let r = u.mod_floor(&BigInt::from(pp)).to_u64().unwrap_or(0);
        let e = powmod(r, (pp - 1) / 2, pp);
        return Sign::from_parity(e != 1);
    }
    let pi = BigInt::from(p.clone());
    let r = u.mod_floor(&pi).to_biguint().unwrap_or_default();
    let e = r.modpow(&((p - 1u32) >> 1), p);
    Sign::from_parity(!e.is_one())
}

/// Legendre symbol (u/p) for an odd prime p not dividing u.
pub fn legendre(u: &BigInt, p: &BigUint) -> Result<Sign> {
    if p.is_even() {
        return Err(domain("Legendre symbol needs an odd prime"));
    }
    check_prime(p)?;
    if (u.magnitude() % p).is_zero() {
        return Err(domain(format!("{p} divides {u}")));
    }
    Ok(legendre_unchecked(u, p))
}

pub(crate) fn two_adic_chars_unchecked(x: &Rational) -> (u8, u8) {
    let eight = BigInt::from(8);
    let a = x.numer().mod_floor(&eight).to_u8().unwrap_or(0);
    let b = x.denom().mod_floor(&eight).to_u8().unwrap_or(0);
    let r = (a * b) % 8;
    let eps = u8::from(r % 4 == 3);
    let omega = u8::from(r == 3 || r == 5);
    (eps, omega)
}

/// The characters eps(u) = (u-1)/2 and omega(u) = (u^2-1)/8 mod 2 of a
/// 2-adic unit u.
pub fn two_adic_chars(u: &Rational) -> Result<(u8, u8)> {
    if u.is_zero() || u.numer().is_even() || u.denom().is_even() {
        return Err(domain(format!("{u} is not a 2-adic unit")));
    }
    Ok(two_adic_chars_unchecked(u))
}

/// Whether n is a sum of two integer squares, by factorization.
pub fn is_sum_two_squares(n: &BigUint) -> bool {
    if n.is_zero() {
        return true;
    }
    let fac = factorize(n).expect("nonzero");
    fac.factors
        .iter()
        .all(|(p, e)| (p % 4u32) != BigUint::from(3u32) || e % 2 == 0)
}

/// All positive divisors of n > 0, ascending.
pub fn divisors(n: &BigUint) -> Result<Vec<BigUint>> {
    let fac = factorize(n)?;
    let mut out = vec![BigUint::one()];
    for (p, e) in &fac.factors {
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        for d in &out {
            let mut x = d.clone();
            for _ in 0..=*e {
                next.push(x.clone());
                x *= p;
            }
        }
        out = next;
    }
    out.sort();
    Ok(out)
}

fn parse_error(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        column,
        message: message.into(),
    }
}

/// Parse a decimal integer with optional leading sign.
pub fn parse_int(s: &str) -> Result<BigInt> {
    let t = s.trim();
    let offset = s.len() - s.trim_start().len();
    let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
    if digits.is_empty() {
        return Err(parse_error(offset + 1, "expected an integer"));
    }
    if let Some(pos) = digits.find(|c: char| !c.is_ascii_digit()) {
        let col = offset + (t.len() - digits.len()) + pos + 1;
        return Err(parse_error(col, format!("unexpected character in {t:?}")));
    }
    let mag = BigInt::parse_bytes(digits.as_bytes(), 10)
        .ok_or_else(|| parse_error(offset + 1, "expected an integer"))?;
    Ok(if t.starts_with('-') { -mag } else { mag })
}

/// Parse `a` or `a/b` into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((a, b)) => {
            let num = parse_int(a)?;
            let den = parse_int(b).map_err(|e| match e {
                Error::Parse {
                    line,
                    column,
                    message,
                } => Error::Parse {
                    line,
                    column: column + a.len() + 1,
                    message,
                },
                other => other,
            })?;
            if den.is_zero() {
                return Err(parse_error(a.len() + 2, "zero denominator"));
            }
            Ok(Rational::new(num, den))
        }
    }
}
