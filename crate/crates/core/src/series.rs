//! Integer sequences (Hilbert functions) and their shape predicates.
//!
//! A sequence is finitely supported on the integers: reads at negative
//! indices or past the stored coefficients return zero.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntSequence {
    coeffs: Vec<BigInt>,
}

impl IntSequence {
    /// Builds a sequence, dropping trailing zeros.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Number of stored coefficients (one past the top non-zero index).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient at any integer index.
    pub fn get(&self, k: i64) -> BigInt {
        if k < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(k as usize).cloned().unwrap_or_default()
    }

    fn at(&self, k: i64) -> &BigInt {
        static ZERO: std::sync::OnceLock<BigInt> = std::sync::OnceLock::new();
        let zero = ZERO.get_or_init(BigInt::zero);
        if k < 0 {
            return zero;
        }
        self.coeffs.get(k as usize).unwrap_or(zero)
    }

    /// Index of the top non-zero coefficient.
    pub fn top_degree(&self) -> Option<usize> {
        self.len().checked_sub(1)
    }

    /// Coefficients as `i64`, if they all fit.
    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    /// Product with another sequence viewed as polynomials in `t`.
    pub fn convolve(&self, other: &IntSequence) -> IntSequence {
        if self.is_empty() || other.is_empty() {
            return IntSequence::default();
        }
        let mut out = vec![BigInt::zero(); self.len() + other.len() - 1];
        for (a, x) in self.coeffs.iter().enumerate() {
            for (b, y) in other.coeffs.iter().enumerate() {
                out[a + b] += x * y;
            }
        }
        IntSequence::new(out)
    }
}

impl FromIterator<i64> for IntSequence {
    fn from_iter<T: IntoIterator<Item = i64>>(iter: T) -> Self {
        IntSequence::new(iter.into_iter().map(BigInt::from).collect())
    }
}

impl From<&[i64]> for IntSequence {
    fn from(v: &[i64]) -> Self {
        v.iter().copied().collect()
    }
}

impl fmt::Display for IntSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for IntSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// Coefficients outside the i64 range are written as decimal strings.
impl Serialize for IntSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use num_traits::ToPrimitive;
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for c in &self.coeffs {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntSequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<i64> = Vec::deserialize(d)?;
        Ok(raw.into_iter().collect())
    }
}

fn check_indices(n: usize, i: usize, j: usize) -> Result<()> {
    if i >= 1 && i < j && j <= n {
        Ok(())
    } else {
        Err(Error::InvalidIndices { n, i, j })
    }
}

/// Coefficients of `(1+t)^(n-j) * (1 + j t + (j-i-1) t^2)`.
pub fn closed_form_hs(n: usize, i: usize, j: usize) -> Result<IntSequence> {
    check_indices(n, i, j)?;
    let mut s: IntSequence = [1, j as i64, (j - i - 1) as i64].into_iter().collect();
    for _ in 0..(n - j) {
        s = shift_and_add(&s);
    }
    Ok(s)
}

/// Multiplication by `(1 + t)`: `out[k] = s[k-1] + s[k]`.
pub fn shift_and_add(s: &IntSequence) -> IntSequence {
    let len = s.len() as i64;
    IntSequence::new((0..=len).map(|k| s.at(k - 1) + s.at(k)).collect())
}

/// Every comparison between `s[p]` and `s[q]` (`p < q`) propagates outward
/// to `s[p-1]` and `s[q+1]`, reading zeros outside the support.
///
/// Pairs are drawn from `p in [-1, len-1]`, `q in [0, len]`; any pair
/// further out repeats one of these comparisons against zero.
pub fn is_mid_heavy(s: &IntSequence) -> bool {
    let len = s.len() as i64;
    for p in -1..len {
        for q in (p + 1)..=len {
            let (a, b) = (s.at(p), s.at(q));
            let (outer_a, outer_b) = (s.at(p - 1), s.at(q + 1));
            if a <= b && outer_a > outer_b {
                return false;
            }
            if a >= b && outer_a < outer_b {
                return false;
            }
        }
    }
    true
}

fn check_hilbert_shape(s: &IntSequence) -> Result<usize> {
    if s.coeffs.first().map_or(true, |c| *c < BigInt::from(1)) {
        return Err(Error::SequencePrecondition("h_0 must be at least 1".into()));
    }
    if s.coeffs.iter().any(|c| !c.is_positive()) {
        return Err(Error::SequencePrecondition(
            "support must be the full interval [0, D]".into(),
        ));
    }
    Ok(s.len() - 1)
}

/// Membership in the class of Hilbert functions satisfying one of the two
/// interleaving chains around the socle degree `D`:
/// `h_{i-1} <= h_{D-i} <= h_i` for all `1 <= i <= D/2`, or
/// `h_{D-i+1} <= h_i <= h_{D-i}` for all such `i`.
pub fn is_class_h(s: &IntSequence) -> Result<bool> {
    let top = check_hilbert_shape(s)? as i64;
    let h = |k: i64| s.at(k);
    let first = (1..=top / 2).all(|i| h(i - 1) <= h(top - i) && h(top - i) <= h(i));
    let second = (1..=top / 2).all(|i| h(top - i + 1) <= h(i) && h(i) <= h(top - i));
    Ok(first || second)
}

/// Weakly increasing then weakly decreasing.
pub fn is_unimodal(s: &IntSequence) -> bool {
    let c = &s.coeffs;
    let mut k = 0;
    while k + 1 < c.len() && c[k] <= c[k + 1] {
        k += 1;
    }
    while k + 1 < c.len() && c[k] >= c[k + 1] {
        k += 1;
    }
    k + 1 >= c.len()
}

/// `s[k]^2 >= s[k-1] s[k+1]` at every interior index.
pub fn is_log_concave(s: &IntSequence) -> bool {
    s.coeffs
        .windows(3)
        .all(|w| &w[1] * &w[1] >= &w[0] * &w[2])
}

/// `s[k] = s[D-k]` where `D` is the top index.
pub fn is_symmetric(s: &IntSequence) -> bool {
    s.coeffs.iter().eq(s.coeffs.iter().rev())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeReport {
    pub unimodal: bool,
    pub log_concave: bool,
    pub symmetric: bool,
    pub mid_heavy: bool,
    pub class_h: bool,
}

/// All shape predicates at once. `class_h` is false when the sequence is not
/// Hilbert-shaped (positive `h_0`, gapless support).
pub fn shape_report(s: &IntSequence) -> ShapeReport {
    ShapeReport {
        unimodal: is_unimodal(s),
        log_concave: is_log_concave(s),
        symmetric: is_symmetric(s),
        mid_heavy: is_mid_heavy(s),
        class_h: is_class_h(s).unwrap_or(false),
    }
}

/// Discriminant `j^2 - 4(j-i-1)` of `1 + j t + (j-i-1) t^2`.
pub fn quadratic_discriminant(i: i64, j: i64) -> i64 {
    j * j - 4 * (j - i - 1)
}
