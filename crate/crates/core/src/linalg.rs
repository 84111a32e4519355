//! Exact matrices over the rationals and prime fields.
//!
//! Rational rank uses fraction-free (Bareiss) elimination on integer rows;
//! prime-field rank is plain Gaussian elimination on residues.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Run-time choice of coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    /// `F_p`, checking that `p` is a prime below `2^32`.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) && p < (1 << 32) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// Characteristic; zero for the rationals.
    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "p:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// `q` or `p:<prime>`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "q" | "Q" => Ok(FieldSpec::Rationals),
            other => {
                let p = other
                    .strip_prefix("p:")
                    .and_then(|v| v.parse::<u64>().ok())
                    .ok_or_else(|| Error::Parse(format!("expected `q` or `p:<prime>`, got `{other}`")))?;
                FieldSpec::prime(p)
            }
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Coefficient arithmetic together with a rank routine suited to the field.
pub trait Field: Clone + Send + Sync + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_integer(&self, v: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Whether `a` is a canonical element of the field.
    fn is_valid(&self, a: &Self::Elem) -> bool;
    fn format(&self, a: &Self::Elem) -> String;

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_integer(&BigInt::from(v))
    }

    fn rank(&self, m: &ExactMatrix<Self>) -> usize
    where
        Self: Sized,
    {
        let mut work = m.clone();
        work.row_reduce().len()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_integer(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_valid(&self, _a: &BigRational) -> bool {
        true
    }
    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn rank(&self, m: &ExactMatrix<Self>) -> usize {
        let rows: Vec<Vec<BigInt>> = (0..m.rows).map(|r| integer_row(m.row(r))).collect();
        bareiss_rank(rows, m.cols)
    }
}

/// Clears denominators of a rational row (row scaling keeps the rank).
fn integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

/// Fraction-free elimination. Pivots are the smallest non-zero magnitude in
/// the column; every division is exact by Sylvester's identity.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let pivot = (rank..rows)
            .filter(|&r| !a[r][col].is_zero())
            .min_by(|&x, &y| a[x][col].abs().cmp(&a[y][col].abs()));
        let Some(pivot) = pivot else { continue };
        a.swap(rank, pivot);
        let (head, tail) = a.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            for j in (col + 1)..cols {
                let v = &prow[col] * &row[j] - &factor * &prow[j];
                debug_assert!((&v % &prev).is_zero());
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = prow[col].clone();
        rank += 1;
    }
    rank
}

/// `F_p` with `p` prime below `2^32`, residues stored in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        FieldSpec::prime(p)?;
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    /// Reduces a rational; fails when the denominator vanishes mod `p`.
    pub fn from_rational(&self, v: &BigRational) -> Result<u64> {
        let num = self.from_integer(v.numer());
        let den = self.from_integer(v.denom());
        let inv = self
            .inv(&den)
            .ok_or_else(|| Error::InvalidEntry(format!("{v} has a denominator divisible by {}", self.p)))?;
        Ok(num * inv % self.p)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_integer(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("residue fits")
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a % self.p != 0).then(|| self.pow(*a, self.p - 2))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_valid(&self, a: &u64) -> bool {
        *a < self.p
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn rank(&self, m: &ExactMatrix<Self>) -> usize {
        let p = self.p;
        let (rows, cols) = (m.rows, m.cols);
        let mut a = m.data.clone();
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pivot) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
                continue;
            };
            if pivot != rank {
                for j in col..cols {
                    a.swap(pivot * cols + j, rank * cols + j);
                }
            }
            let inv = self.inv(&a[rank * cols + col]).expect("non-zero pivot");
            for j in col..cols {
                a[rank * cols + j] = a[rank * cols + j] * inv % p;
            }
            let (head, tail) = a.split_at_mut((rank + 1) * cols);
            let prow = &head[rank * cols..];
            for row in tail.chunks_exact_mut(cols) {
                let factor = row[col];
                if factor == 0 {
                    continue;
                }
                let negf = p - factor;
                for j in col..cols {
                    row[j] = (row[j] + negf * prow[j]) % p;
                }
            }
            rank += 1;
        }
        rank
    }
}

/// A dense matrix over a field, stored row-major.
#[derive(Clone)]
pub struct ExactMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> PartialEq for ExactMatrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field.spec() == other.field.spec()
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}

impl<F: Field> fmt::Debug for ExactMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {}", self.rows, self.cols, self.field.spec())?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| self.field.format(x)).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> ExactMatrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|x| !field.is_valid(x)) {
            return Err(Error::InvalidEntry(format!("{bad:?}")));
        }
        Ok(Self {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: F, size: usize) -> Self {
        let mut m = Self::zeros(field, size, size);
        for k in 0..size {
            m.data[k * size + k] = m.field.one();
        }
        m
    }

    /// Builds from integer rows (all rows must have the same length).
    pub fn from_rows(field: F, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| field.from_i64(v)))
            .collect();
        Ok(Self {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn rank(&self) -> usize {
        self.field.rank(self)
    }

    pub fn scale(&self, alpha: &F::Elem) -> Self {
        Self {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| self.field.mul(alpha, x)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Self {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, other.get(k, c)));
                }
            }
        }
        Ok(out)
    }

    /// `[[top_left, top_right], [bottom_left, bottom_right]]`.
    pub fn block(
        top_left: &Self,
        top_right: &Self,
        bottom_left: &Self,
        bottom_right: &Self,
    ) -> Result<Self> {
        if top_left.rows != top_right.rows
            || bottom_left.rows != bottom_right.rows
            || top_left.cols != bottom_left.cols
            || top_right.cols != bottom_right.cols
        {
            return Err(Error::DimensionMismatch("incompatible block shapes".into()));
        }
        let rows = top_left.rows + bottom_left.rows;
        let cols = top_left.cols + top_right.cols;
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..top_left.rows {
            data.extend_from_slice(top_left.row(r));
            data.extend_from_slice(top_right.row(r));
        }
        for r in 0..bottom_left.rows {
            data.extend_from_slice(bottom_left.row(r));
            data.extend_from_slice(bottom_right.row(r));
        }
        Ok(Self {
            field: top_left.field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Copy of the rectangle `rows x cols` starting at `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in r0..r0 + rows {
            data.extend_from_slice(&self.row(r)[c0..c0 + cols]);
        }
        Self {
            field: self.field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..cols {
            if rank == self.rows {
                break;
            }
            let Some(pivot) = (rank..self.rows).find(|&r| !f.is_zero(self.get(r, col))) else {
                continue;
            };
            for j in 0..cols {
                self.data.swap(pivot * cols + j, rank * cols + j);
            }
            let inv = f.inv(self.get(rank, col)).expect("non-zero pivot");
            for j in col..cols {
                let v = f.mul(&inv, self.get(rank, j));
                self.set(rank, j, v);
            }
            for r in 0..self.rows {
                if r == rank {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in col..cols {
                    let v = f.sub(self.get(r, j), &f.mul(&factor, self.get(rank, j)));
                    self.set(r, j, v);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        pivots
    }

    /// A basis of the right kernel `{v : M v = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        self.kernel_with_pivots().1
    }

    /// Pivot columns of the reduced echelon form together with the kernel
    /// basis read off from it: one vector per free column, equal to 1 there
    /// and 0 on the other free columns.
    pub fn kernel_with_pivots(&self) -> (Vec<usize>, Vec<Vec<F::Elem>>) {
        let f = &self.field;
        let mut work = self.clone();
        let pivots = work.row_reduce();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(work.get(r, free));
            }
            basis.push(v);
        }
        (pivots, basis)
    }

    /// A coordinate `k` such that the unit vector `e_k` is not in the column
    /// space, or `None` when the columns span everything.
    pub fn unreached_coordinate(&self) -> Option<usize> {
        let mut work = self.transpose();
        let pivots = work.row_reduce();
        (0..self.rows).find(|k| !pivots.contains(k))
    }

    pub fn apply(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect())
    }
}

impl ExactMatrix<Rationals> {
    /// Reduction of a rational matrix modulo `p`.
    pub fn reduce_mod(&self, field: PrimeField) -> Result<ExactMatrix<PrimeField>> {
        let data = self
            .data
            .iter()
            .map(|x| field.from_rational(x))
            .collect::<Result<Vec<_>>>()?;
        ExactMatrix::new(field, self.rows, self.cols, data)
    }
}

pub fn rank<F: Field>(m: &ExactMatrix<F>) -> usize {
    m.rank()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockRankReport {
    pub lhs_rank: usize,
    pub rhs_rank: usize,
    pub equal: bool,
}

/// Compares `rank [[AP, 0], [alpha P, PB]]` with `rank(P) + rank(APB)`.
pub fn block_rank_check<F: Field>(
    a: &ExactMatrix<F>,
    p: &ExactMatrix<F>,
    b: &ExactMatrix<F>,
    alpha: &F::Elem,
) -> Result<BlockRankReport> {
    let field = p.field();
    if field.is_zero(alpha) {
        return Err(Error::ZeroScalar);
    }
    let ap = a.mul(p)?;
    let pb = p.mul(b)?;
    let apb = ap.mul(b)?;
    let zero = ExactMatrix::zeros(field.clone(), ap.rows(), pb.cols());
    let m = ExactMatrix::block(&ap, &zero, &p.scale(alpha), &pb)?;
    let lhs_rank = m.rank();
    let rhs_rank = p.rank() + apb.rank();
    Ok(BlockRankReport {
        lhs_rank,
        rhs_rank,
        equal: lhs_rank == rhs_rank,
    })
}

/// The `count` largest primes below `2^31`, descending.
pub fn large_primes(count: usize) -> Vec<u64> {
    (1..(1u64 << 31))
        .rev()
        .filter(|&p| is_prime(p))
        .take(count)
        .collect()
}

/// Combines `x = a (mod m)` with `x = b (mod p)` into a residue modulo `m p`.
pub fn crt_combine(a: &BigInt, m: &BigInt, b: u64, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let field = PrimeField { p };
    let m_mod_p = field.from_integer(m);
    let a_mod_p = field.from_integer(a);
    let inv = field.inv(&m_mod_p).expect("coprime moduli");
    let k = field.mul(&field.sub(&b, &a_mod_p), &inv);
    (a + m * BigInt::from(k)).mod_floor(&(m * pb))
}

/// The fraction `r/s` with `|r|, s <= sqrt(m/2)` congruent to `a` modulo `m`,
/// if one exists.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !(&r1 - a * &t1).mod_floor(m).is_zero() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}
