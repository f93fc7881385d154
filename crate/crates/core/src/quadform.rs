//! Exact symmetric rational matrices: congruence diagonalization,
//! determinants, Hasse invariants, Schur complements and the rational
//! equivalence invariants.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_prime, Rational, Sign, SquareClass};
use crate::error::{domain, Error, Result};
use crate::hilbert::{hilbert_classes, relevant_primes_of_classes};

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Rational,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Build from integer rows; panics on ragged input.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix::from_fn(r, c, |i, j| {
            Rational::from_integer(BigInt::from(rows[i][j]))
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Integer matrix `L * self` for the least common denominator L.
    fn integer_lift(&self) -> (Vec<BigInt>, BigInt) {
        let l = self
            .data
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints = self
            .data
            .iter()
            .map(|x| x.numer() * (&l / x.denom()))
            .collect();
        (ints, l)
    }

    pub fn rank(&self) -> usize {
        let (mut a, _) = self.integer_lift();
        bareiss(&mut a, self.rows, self.cols).0
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

// Fraction-free elimination in place. Returns (rank, sign of the row
// permutation, last pivot). For a square nonsingular matrix the last pivot
// is the determinant up to the permutation sign.
fn bareiss(a: &mut [BigInt], rows: usize, cols: usize) -> (usize, Sign, BigInt) {
    let mut prev = BigInt::one();
    let mut sign = Sign::Plus;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if piv != r {
            for j in 0..cols {
                a.swap(piv * cols + j, r * cols + j);
            }
            sign = -sign;
        }
        let p = a[r * cols + c].clone();
        for i in r + 1..rows {
            let lead = a[i * cols + c].clone();
            for j in c + 1..cols {
                let v = (&p * &a[i * cols + j] - &lead * &a[r * cols + j]) / &prev;
                a[i * cols + j] = v;
            }
            a[i * cols + c] = BigInt::zero();
        }
        prev = p;
        r += 1;
    }
    (r, sign, prev)
}

/// Exact determinant by Bareiss elimination on the integer lift.
pub fn determinant(m: &Matrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::Dimension(
            "determinant of a non-square matrix".into(),
        ));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(Rational::one());
    }
    let (mut a, l) = m.integer_lift();
    let (rank, sign, last) = bareiss(&mut a, n, n);
    if rank < n {
        return Ok(Rational::zero());
    }
    let det = if sign == Sign::Minus { -last } else { last };
    Ok(Rational::new(det, l.pow(n as u32)))
}

/// A symmetric rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMatrix {
    inner: Matrix,
}

impl SymMatrix {
    pub fn new(m: Matrix) -> Result<SymMatrix> {
        if !m.is_square() {
            return Err(Error::Dimension("symmetric matrix must be square".into()));
        }
        for i in 0..m.rows {
            for j in 0..i {
                if m.get(i, j) != m.get(j, i) {
                    return Err(domain(format!("matrix not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(SymMatrix { inner: m })
    }

    /// Symmetric matrix whose (i, j) entry for i <= j is `f(i, j)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> SymMatrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let x = f(i, j);
                m.set(j, i, x.clone());
                m.set(i, j, x);
            }
        }
        SymMatrix { inner: m }
    }

    pub fn diagonal(entries: &[Rational]) -> SymMatrix {
        SymMatrix::from_fn(entries.len(), |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                Rational::zero()
            }
        })
    }

    /// a I_n + b J_n.
    pub fn a_i_b_j(a: &Rational, b: &Rational, n: usize) -> SymMatrix {
        SymMatrix::from_fn(n, |i, j| if i == j { a + b } else { b.clone() })
    }

    pub fn order(&self) -> usize {
        self.inner.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        self.inner.get(i, j)
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.inner
    }

    pub fn principal(&self, s: &[usize]) -> SymMatrix {
        SymMatrix {
            inner: self.inner.submatrix(s, s),
        }
    }

    /// X' A X.
    pub fn congruent(&self, x: &Matrix) -> Result<SymMatrix> {
        let m = x.transpose().mul(&self.inner)?.mul(x)?;
        SymMatrix::new(m)
    }

    pub fn scale(&self, c: &Rational) -> SymMatrix {
        SymMatrix {
            inner: self.inner.scale(c),
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &SymMatrix) -> SymMatrix {
        let n = self.order();
        SymMatrix::from_fn(n + other.order(), |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if i >= n {
                other.get(i - n, j - n).clone()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn determinant(&self) -> Rational {
        determinant(&self.inner).expect("square")
    }
}

/// A nonsingular diagonal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagForm {
    entries: Vec<Rational>,
}

impl DiagForm {
    pub fn new(entries: Vec<Rational>) -> Result<DiagForm> {
        if entries.iter().any(Zero::is_zero) {
            return Err(Error::Singular);
        }
        Ok(DiagForm { entries })
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn signature(&self) -> (usize, usize) {
        let neg = self.entries.iter().filter(|d| d.is_negative()).count();
        (self.entries.len() - neg, neg)
    }

    pub fn classes(&self) -> Vec<SquareClass> {
        self.entries
            .iter()
            .map(|d| SquareClass::of(d).expect("nonzero"))
            .collect()
    }

    pub fn discriminant(&self) -> SquareClass {
        self.classes()
            .iter()
            .fold(SquareClass::one(), |acc, c| &acc * c)
    }

    /// Rescale every entry by c, a congruence-compatible operation on
    /// c * A when this form diagonalizes A.
    pub fn scale(&self, c: &Rational) -> Result<DiagForm> {
        DiagForm::new(self.entries.iter().map(|d| d * c).collect())
    }
}

/// Diagonalize by symmetric elimination. Zero-diagonal blocks are repaired
/// by adding row/column j to i, which puts 2 a_ij on the diagonal.
pub fn diagonalize(a: &SymMatrix) -> Result<DiagForm> {
    let n = a.order();
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j).clone()).collect())
        .collect();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let pivot = (k..n).find(|&i| !m[i][i].is_zero());
        let pivot = match pivot {
            Some(i) => i,
            None => {
                let mut found = None;
                'search: for i in k..n {
                    for j in k..n {
                        if i != j && !m[i][j].is_zero() {
                            found = Some((i, j));
                            break 'search;
                        }
                    }
                }
                let (i, j) = found.ok_or(Error::Singular)?;
                for c in k..n {
                    let v = m[j][c].clone();
                    m[i][c] += v;
                }
                for r in k..n {
                    let v = m[r][j].clone();
                    m[r][i] += v;
                }
                i
            }
        };
        if pivot != k {
            m.swap(pivot, k);
            for row in m.iter_mut() {
                row.swap(pivot, k);
            }
        }
        let d = m[k][k].clone();
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = &m[i][k] / &d;
            for j in k + 1..=i {
                let v = &factor * &m[k][j];
                m[i][j] -= v;
            }
            m[i][k] = Rational::zero();
        }
        // Mirror the updated lower triangle.
        for i in k + 1..n {
            for j in k + 1..i {
                let v = m[i][j].clone();
                m[j][i] = v;
            }
            m[k][i] = Rational::zero();
        }
        out.push(d);
    }
    DiagForm::new(out)
}

fn check_prime(p: &BigUint) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(domain(format!("{p} is not prime")))
    }
}

// prod_{i<j} (d_i, d_j)_p, evaluated as prod_j (d_1...d_{j-1}, d_j)_p.
pub(crate) fn hasse_of_classes(classes: &[SquareClass], p: &BigUint) -> Sign {
    let mut prefix = SquareClass::one();
    let mut s = Sign::Plus;
    for c in classes {
        if !prefix.is_square() {
            s = s * hilbert_classes(&prefix, c, p);
        }
        prefix = &prefix * c;
    }
    s
}

pub fn hasse_of_diag(d: &DiagForm, p: &BigUint) -> Result<Sign> {
    check_prime(p)?;
    Ok(hasse_of_classes(&d.classes(), p))
}

pub fn hasse_invariant(a: &SymMatrix, p: &BigUint) -> Result<Sign> {
    check_prime(p)?;
    hasse_of_diag(&diagonalize(a)?, p)
}

fn binom2(n: &BigInt) -> BigInt {
    n * (n - 1) / 2
}

/// Closed-form Hasse invariant of a I_n + b J_n:
/// (-1,a)^C(n-1,2) (a, a+bn)^(n-1) (a(a+bn), n).
pub fn hasse_ai_bj(a: &Rational, b: &Rational, n: &BigInt, p: &BigUint) -> Result<Sign> {
    check_prime(p)?;
    if !n.is_positive() {
        return Err(domain("order must be positive"));
    }
    let nq = Rational::from_integer(n.clone());
    let s = a + b * &nq;
    if a.is_zero() || s.is_zero() {
        return Err(Error::Singular);
    }
    let ca = SquareClass::of(a)?;
    let cs = SquareClass::of(&s)?;
    let cn = SquareClass::of(&nq)?;
    let minus_one = SquareClass::of(&-Rational::one())?;
    let t1 = hilbert_classes(&minus_one, &ca, p).pow(&binom2(&(n - 1)));
    let t2 = hilbert_classes(&ca, &cs, p).pow(&(n - 1));
    let t3 = hilbert_classes(&(&ca * &cs), &cn, p);
    Ok(t1 * t2 * t3)
}

/// A / A[S,S] = D - C' B^-1 C with rows and columns of S forming B.
pub fn schur_complement(a: &SymMatrix, s: &[usize]) -> Result<SymMatrix> {
    let n = a.order();
    if s.iter().any(|&i| i >= n) {
        return Err(Error::Dimension("index outside the matrix".into()));
    }
    let mut seen = vec![false; n];
    for &i in s {
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::Dimension(format!("index {i} repeated")));
        }
    }
    let rest: Vec<usize> = (0..n).filter(|i| !seen[*i]).collect();
    let b = a.inner.submatrix(s, s);
    let c = a.inner.submatrix(s, &rest);
    let d = a.inner.submatrix(&rest, &rest);
    let binv_c = solve(&b, &c)
        .map_err(|_| Error::Domain(format!("principal submatrix on {s:?} is singular")))?;
    let ct_binv_c = c.transpose().mul(&binv_c)?;
    let m = Matrix::from_fn(rest.len(), rest.len(), |i, j| {
        d.get(i, j) - ct_binv_c.get(i, j)
    });
    SymMatrix::new(m)
}

/// Solve B X = C by Gauss-Jordan elimination.
fn solve(b: &Matrix, c: &Matrix) -> Result<Matrix> {
    let n = b.rows;
    let w = c.cols;
    let mut aug: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| b.get(i, j).clone())
                .chain((0..w).map(|j| c.get(i, j).clone()))
                .collect()
        })
        .collect();
    for k in 0..n {
        let piv = (k..n)
            .find(|&i| !aug[i][k].is_zero())
            .ok_or(Error::Singular)?;
        aug.swap(piv, k);
        let inv = aug[k][k].recip();
        for x in aug[k].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != k && !aug[i][k].is_zero() {
                let f = aug[i][k].clone();
                for j in k..n + w {
                    let v = &f * &aug[k][j];
                    aug[i][j] -= v;
                }
            }
        }
    }
    Ok(Matrix::from_fn(n, w, |i, j| aug[i][n + j].clone()))
}

/// eps_p(B) eps_p(A/B) (det B, det A/B)_p.
pub fn hasse_schur_combine(
    e_b: Sign,
    e_ab: Sign,
    det_b: &SquareClass,
    det_ab: &SquareClass,
    p: &BigUint,
) -> Sign {
    e_b * e_ab * hilbert_classes(det_b, det_ab, p)
}

/// Hasse values on a recorded finite prime set, +1 at every other prime.
/// Two maps are equal when they have the same primes with value -1.
#[derive(Debug, Clone, Default)]
pub struct HasseMap {
    values: BTreeMap<BigUint, Sign>,
}

impl HasseMap {
    pub fn from_fn(
        primes: impl IntoIterator<Item = BigUint>,
        mut f: impl FnMut(&BigUint) -> Sign,
    ) -> HasseMap {
        let values = primes
            .into_iter()
            .map(|p| {
                let s = f(&p);
                (p, s)
            })
            .collect();
        HasseMap { values }
    }

    pub fn get(&self, p: &BigUint) -> Sign {
        self.values.get(p).copied().unwrap_or(Sign::Plus)
    }

    pub fn recorded(&self) -> impl Iterator<Item = &BigUint> {
        self.values.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BigUint, Sign)> {
        self.values.iter().map(|(p, s)| (p, *s))
    }

    /// Primes where the value is -1.
    pub fn minus_primes(&self) -> Vec<&BigUint> {
        self.values
            .iter()
            .filter(|(_, s)| **s == Sign::Minus)
            .map(|(p, _)| p)
            .collect()
    }
}

impl PartialEq for HasseMap {
    fn eq(&self, other: &HasseMap) -> bool {
        self.minus_primes() == other.minus_primes()
    }
}

impl Eq for HasseMap {}

impl fmt::Display for HasseMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|(p, s)| format!("{p}:{s}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Rank, signature, discriminant and Hasse invariants of a nonsingular form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivInvariants {
    pub rank: usize,
    pub signature: (usize, usize),
    pub discriminant: SquareClass,
    pub hasse: HasseMap,
}

pub fn invariants_of_diag(d: &DiagForm) -> EquivInvariants {
    let classes = d.classes();
    let discriminant = classes.iter().fold(SquareClass::one(), |acc, c| &acc * c);
    let primes = relevant_primes_of_classes(&classes);
    EquivInvariants {
        rank: d.rank(),
        signature: d.signature(),
        discriminant,
        hasse: HasseMap::from_fn(primes, |p| hasse_of_classes(&classes, p)),
    }
}

pub fn equivalence_invariants(a: &SymMatrix) -> Result<EquivInvariants> {
    Ok(invariants_of_diag(&diagonalize(a)?))
}

/// Greedy lexicographically least set of `g` independent columns.
pub fn select_independent_columns(m: &Matrix, g: usize) -> Result<Vec<usize>> {
    let mut basis: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut chosen = Vec::new();
    for j in 0..m.cols {
        if chosen.len() == g {
            break;
        }
        let mut v = m.column(j);
        for (piv, b) in &basis {
            if v[*piv].is_zero() {
                continue;
            }
            let f = &v[*piv] / &b[*piv];
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        if let Some(piv) = v.iter().position(|x| !x.is_zero()) {
            basis.push((piv, v));
            chosen.push(j);
        }
    }
    if chosen.len() < g {
        return Err(domain(format!(
            "rank deficient: wanted {g} independent columns, found {}",
            chosen.len()
        )));
    }
    Ok(chosen)
}
