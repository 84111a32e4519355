//! Exponent-vector monomials and the reverse lexicographic order.
//!
//! Variables are `x1, ..., xn` in every textual form and indexed from zero
//! internally. Within a fixed degree, `m > m'` in revlex when the last
//! non-zero entry of `exponents(m) - exponents(m')` is negative, so
//! `x1 > x2 > ... > xn`. Across degrees the total order compares degree
//! first.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monomial `x1^a1 * ... * xn^an` in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self { exponents }
    }

    /// The constant monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        Self { exponents: vec![0; n] }
    }

    /// The variable `x_{k+1}` (zero-based `k`).
    pub fn var(n: usize, k: usize) -> Self {
        Self::var_pow(n, k, 1)
    }

    /// `x_{k+1}^e` (zero-based `k`).
    pub fn var_pow(n: usize, k: usize, e: u32) -> Self {
        let mut exponents = vec![0; n];
        exponents[k] = e;
        Self { exponents }
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn exponent(&self, k: usize) -> u32 {
        self.exponents[k]
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exponents.iter().all(|&e| e <= 1)
    }

    /// If this is a pure power `x_k^e` with `e >= 1`, returns `(k, e)`.
    pub fn as_pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (k, &e) in self.exponents.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((k, e));
            }
        }
        found
    }

    /// Indices of variables with non-zero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, _)| k)
    }

    fn check_ambient(&self, other: &Monomial) -> Result<()> {
        if self.num_vars() != other.num_vars() {
            return Err(Error::AmbientMismatch {
                left: self.num_vars(),
                right: other.num_vars(),
            });
        }
        Ok(())
    }

    /// Divisibility `self | other`; both sides must share the ambient ring.
    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn divides_unchecked(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.num_vars(), other.num_vars());
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `self * x_{k+1}`.
    pub fn mul_var(&self, k: usize) -> Monomial {
        let mut exponents = self.exponents.clone();
        exponents[k] += 1;
        Monomial { exponents }
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides_unchecked(self) {
            return None;
        }
        Some(Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Same exponents with `extra` trailing variables of exponent zero.
    pub fn extend(&self, extra: usize) -> Monomial {
        let mut exponents = self.exponents.clone();
        exponents.extend(std::iter::repeat(0).take(extra));
        Monomial { exponents }
    }

    /// Drops the last variable, provided it does not occur.
    pub fn truncate_last(&self) -> Option<Monomial> {
        match self.exponents.split_last() {
            Some((0, rest)) => Some(Monomial {
                exponents: rest.to_vec(),
            }),
            _ => None,
        }
    }

    /// Parses the text form `x1^2*x3` (or `1`) in `n` variables.
    pub fn parse(text: &str, n: usize) -> Result<Monomial> {
        let text = text.trim();
        let mut exponents = vec![0u32; n];
        if text == "1" {
            return Ok(Monomial { exponents });
        }
        if text.is_empty() {
            return Err(Error::Parse("empty monomial".into()));
        }
        for factor in text.split('*') {
            let factor = factor.trim();
            let rest = factor
                .strip_prefix('x')
                .ok_or_else(|| Error::Parse(format!("expected a variable, found `{factor}`")))?;
            let (index, power) = match rest.split_once('^') {
                Some((i, e)) => (i, e),
                None => (rest, "1"),
            };
            let index: usize = index
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad variable index in `{factor}`")))?;
            let power: u32 = power
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
            if index == 0 || index > n {
                return Err(Error::Parse(format!(
                    "variable x{index} outside x1..x{n}"
                )));
            }
            exponents[index - 1] += power;
        }
        Ok(Monomial { exponents })
    }

    /// Total-order comparison: degree first, then revlex.
    pub fn revlex_cmp(&self, other: &Monomial) -> Result<Ordering> {
        self.check_ambient(other)?;
        Ok(self.cmp(other))
    }
}

/// Degreewise revlex comparison of equal-length exponent slices, ignoring degree.
fn revlex_same_degree(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            // last non-zero entry of a - b negative => a is greater
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| revlex_same_degree(&self.exponents, &other.exponents))
            .then_with(|| self.num_vars().cmp(&other.num_vars()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (k, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", k + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Compares two monomials in the total order (degree, then revlex).
pub fn revlex_compare(m1: &Monomial, m2: &Monomial) -> Result<Ordering> {
    m1.revlex_cmp(m2)
}

/// All monomials of degree `d` in `n` variables, strictly descending in revlex.
pub fn monomials_of_degree(n: usize, d: u32, squarefree_only: bool) -> Vec<Monomial> {
    let cap = if squarefree_only { 1 } else { d };
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fill(&mut current, 0, d, cap, &mut out);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn fill(current: &mut [u32], k: usize, remaining: u32, cap: u32, out: &mut Vec<Monomial>) {
    if k + 1 == current.len() {
        if remaining <= cap {
            current[k] = remaining;
            out.push(Monomial::new(current.to_vec()));
            current[k] = 0;
        }
        return;
    }
    if current.is_empty() {
        if remaining == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return;
    }
    for e in 0..=remaining.min(cap) {
        current[k] = e;
        fill(current, k + 1, remaining - e, cap, out);
    }
    current[k] = 0;
}
