//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

/// `Σ c_a x^a` over `Q`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultivariatePoly {
    n: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultivariatePoly {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: impl Into<BigInt>) -> Self {
        Self::term(Monomial::one(n), BigRational::from_integer(c.into()))
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut p = Self::zero(m.num_vars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, BigRational::one())
    }

    /// The variable `x_{k+1}` (zero-based `k`).
    pub fn var(n: usize, k: usize) -> Self {
        Self::monomial(Monomial::var(n, k))
    }

    /// `x1 + ... + xn`.
    pub fn variable_sum(n: usize) -> Self {
        (0..n).fold(Self::zero(n), |acc, k| &acc + &Self::var(n, k))
    }

    /// Builds from `(monomial, integer coefficient)` pairs.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, i64)>) -> Result<Self> {
        let mut p = Self::zero(n);
        for (m, c) in terms {
            if m.num_vars() != n {
                return Err(Error::AmbientMismatch {
                    left: n,
                    right: m.num_vars(),
                });
            }
            p.add_term(m, BigRational::from_integer(c.into()));
        }
        Ok(p)
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Largest term in the graded revlex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Total degree, if the polynomial is non-zero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.n, 1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Drops every term whose monomial lies in the monomial ideal.
    pub fn reduce_mod(&self, ideal: &MonomialIdeal) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !ideal.contains(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitutes `x_k -> images[k]`.
    pub fn substitute(&self, images: &[MultivariatePoly]) -> Result<Self> {
        if images.len() != self.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: images.len(),
            });
        }
        let target = images.first().map_or(0, |p| p.n);
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, 1);
            for (k, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &images[k].pow(e);
                }
            }
            out = &out + &t.scale(c);
        }
        Ok(out)
    }

    /// `∂/∂x_k`.
    pub fn partial(&self, k: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.exponent(k);
            if e == 0 {
                continue;
            }
            let lowered = m.div(&Monomial::var(self.n, k)).expect("x_k divides");
            out.add_term(lowered, c * BigRational::from_integer(e.into()));
        }
        out
    }

    /// Exact division by `divisor` using graded-revlex leading terms.
    /// A non-zero remainder is an error.
    pub fn exact_div(&self, divisor: &MultivariatePoly) -> Result<Self> {
        if self.n != divisor.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: divisor.n,
            });
        }
        let (lead_m, lead_c) = divisor
            .leading_term()
            .ok_or_else(|| Error::InvalidParameter("division by zero polynomial".into()))?;
        let mut rest = self.clone();
        let mut quotient = Self::zero(self.n);
        while let Some((m, c)) = rest.leading_term() {
            let Some(q_m) = m.div(lead_m) else {
                return Err(Error::InexactDivision);
            };
            let q_c = c / lead_c;
            let step = Self::term(q_m, q_c);
            rest = &rest - &(&step * divisor);
            quotient = &quotient + &step;
        }
        Ok(quotient)
    }
}

impl<'a> std::ops::Add<&'a MultivariatePoly> for &'a MultivariatePoly {
    type Output = MultivariatePoly;

    fn add(self, rhs: &MultivariatePoly) -> MultivariatePoly {
        debug_assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> std::ops::Sub<&'a MultivariatePoly> for &'a MultivariatePoly {
    type Output = MultivariatePoly;

    fn sub(self, rhs: &MultivariatePoly) -> MultivariatePoly {
        debug_assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> std::ops::Mul<&'a MultivariatePoly> for &'a MultivariatePoly {
    type Output = MultivariatePoly;

    fn mul(self, rhs: &MultivariatePoly) -> MultivariatePoly {
        debug_assert_eq!(self.n, rhs.n);
        let mut out = MultivariatePoly::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

impl std::ops::Neg for &MultivariatePoly {
    type Output = MultivariatePoly;

    fn neg(self) -> MultivariatePoly {
        self.scale(&-BigRational::one())
    }
}

impl fmt::Display for MultivariatePoly {
    /// Terms in descending order, e.g. `-2*x1 - 2*x2 + 2*x3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
