//! Standard monomial bases of `A = R/I` for artinian monomial ideals `I`.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::series::IntSequence;

/// `A = R/I` with its per-degree standard monomial bases.
#[derive(Clone, Debug)]
pub struct GradedQuotient {
    ideal: MonomialIdeal,
    bases: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
}

impl GradedQuotient {
    /// Enumerates `B_0, ..., B_D`, each descending in revlex.
    pub fn new(ideal: &MonomialIdeal) -> Result<Self> {
        ideal.require_artinian()?;
        let n = ideal.num_vars();
        let mut bases: Vec<Vec<Monomial>> = Vec::new();
        let one = Monomial::one(n);
        let mut current = if ideal.contains(&one) { vec![] } else { vec![one] };
        // Standard monomials are closed under division, so B_{k+1} is
        // obtained from x_v * B_k; the first empty degree ends the algebra.
        while !current.is_empty() {
            let mut next = BTreeSet::new();
            for m in &current {
                for v in 0..n {
                    let up = m.mul_var(v);
                    if !ideal.contains(&up) {
                        next.insert(up);
                    }
                }
            }
            bases.push(current);
            current = next.into_iter().rev().collect();
        }
        let index = bases
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect())
            .collect();
        Ok(Self {
            ideal: ideal.clone(),
            bases,
            index,
        })
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn num_vars(&self) -> usize {
        self.ideal.num_vars()
    }

    /// Socle degree `D`: the top degree with a non-zero graded piece.
    /// `None` for the zero algebra (`1 in I`).
    pub fn socle_degree(&self) -> Option<usize> {
        self.bases.len().checked_sub(1)
    }

    /// `B_k`; empty outside `0..=D`.
    pub fn basis(&self, k: usize) -> &[Monomial] {
        self.bases.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn dim(&self, k: usize) -> usize {
        self.basis(k).len()
    }

    /// Signed-degree dimension, zero for negative degrees.
    pub fn dim_at(&self, k: i64) -> usize {
        if k < 0 {
            0
        } else {
            self.dim(k as usize)
        }
    }

    pub fn total_dim(&self) -> usize {
        self.bases.iter().map(Vec::len).sum()
    }

    /// Position of `m` in `B_deg(m)`, if it is a standard monomial.
    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m.degree() as usize)?.get(m).copied()
    }

    pub fn hilbert(&self) -> IntSequence {
        IntSequence::from_iter(self.bases.iter().map(|b| b.len() as i64))
    }

    pub fn hilbert_vec(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }
}

/// Builds the quotient of an artinian monomial ideal.
pub fn build_quotient(ideal: &MonomialIdeal) -> Result<GradedQuotient> {
    GradedQuotient::new(ideal)
}

/// The ideal in the first `n - 1` variables obtained by dropping `x_n`,
/// provided the only generator involving `x_n` is `x_n^2`.
pub fn split_ideal(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    let n = ideal.num_vars();
    if n < 2 || ideal.pure_power(n - 1) != Some(2) {
        return Err(Error::SplitPrecondition);
    }
    let mut rest = Vec::new();
    for g in ideal.generators() {
        match g.truncate_last() {
            Some(t) => rest.push(t),
            None if g.as_pure_power() == Some((n - 1, 2)) => {}
            None => return Err(Error::SplitPrecondition),
        }
    }
    MonomialIdeal::new(n - 1, rest)
}

/// Splits `B_k` into the monomials free of `x_n` and those of the form
/// `x_n * m`, returned as `(B̄_k, B̄_{k-1})` in the `(n-1)`-variable ring.
pub fn basis_split(q: &GradedQuotient, k: usize) -> Result<(Vec<Monomial>, Vec<Monomial>)> {
    split_ideal(q.ideal())?;
    let last = q.num_vars() - 1;
    let mut free = Vec::new();
    let mut with_last = Vec::new();
    for m in q.basis(k) {
        match m.truncate_last() {
            Some(t) => free.push(t),
            None => {
                let stripped = m.div(&Monomial::var(q.num_vars(), last)).expect("x_n divides");
                with_last.push(stripped.truncate_last().expect("x_n^2 is in the ideal"));
            }
        }
    }
    Ok((free, with_last))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{family_ideal, power_family};

    #[test]
    fn small_family_member() {
        let q = build_quotient(&family_ideal(4, 2, 4).unwrap()).unwrap();
        assert_eq!(q.hilbert_vec(), vec![1, 4, 1]);
        assert_eq!(q.basis(2), &[Monomial::parse("x3*x4", 4).unwrap()]);
        assert_eq!(q.socle_degree(), Some(2));
    }

    #[test]
    fn one_variable_cube() {
        let ideal: MonomialIdeal = "n=1; x1^3".parse().unwrap();
        let q = build_quotient(&ideal).unwrap();
        assert_eq!(q.hilbert_vec(), vec![1, 1, 1]);
        assert_eq!(q.socle_degree(), Some(2));
    }

    #[test]
    fn binary_power_times_cube() {
        // (1,2,3) * (1,1,1)
        let q = build_quotient(&power_family(3, 3).unwrap()).unwrap();
        assert_eq!(q.hilbert_vec(), vec![1, 3, 6, 5, 3]);
        assert_eq!(q.socle_degree(), Some(4));
        assert_eq!(q.total_dim(), 6 * 3);
    }

    #[test]
    fn rejects_non_artinian() {
        let ideal: MonomialIdeal = "n=2; x1^2".parse().unwrap();
        assert_eq!(build_quotient(&ideal).unwrap_err(), Error::NotArtinian(2));
    }

    #[test]
    fn bases_descend_and_index() {
        let q = build_quotient(&family_ideal(6, 2, 4).unwrap()).unwrap();
        for k in 0..=q.socle_degree().unwrap() {
            let b = q.basis(k);
            assert!(b.windows(2).all(|w| w[0] > w[1]));
            for (pos, m) in b.iter().enumerate() {
                assert_eq!(q.position(m), Some(pos));
            }
        }
        assert_eq!(q.dim(100), 0);
        assert_eq!(q.dim_at(-1), 0);
    }

    #[test]
    fn split_matches_smaller_ring() {
        let q = build_quotient(&family_ideal(5, 1, 3).unwrap()).unwrap();
        let bar = build_quotient(&family_ideal(4, 1, 3).unwrap()).unwrap();
        let (free, with_last) = basis_split(&q, 2).unwrap();
        assert_eq!(free, bar.basis(2));
        assert_eq!(with_last, bar.basis(1));
        let (free, with_last) = basis_split(&q, 0).unwrap();
        assert_eq!(free, vec![Monomial::one(4)]);
        assert!(with_last.is_empty());
        for k in 0..=5 {
            assert_eq!(q.dim(k), bar.dim(k) + bar.dim_at(k as i64 - 1));
        }
    }

    #[test]
    fn split_requires_last_variable_free() {
        let q = build_quotient(&family_ideal(4, 2, 4).unwrap()).unwrap();
        assert_eq!(basis_split(&q, 1).unwrap_err(), Error::SplitPrecondition);
        let q = build_quotient(&power_family(3, 3).unwrap()).unwrap();
        assert_eq!(basis_split(&q, 1).unwrap_err(), Error::SplitPrecondition);
    }
}
