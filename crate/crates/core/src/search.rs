//! Search for equigenerated artinian monomial ideals with a prescribed number
//! of minimal generators whose quotient has the SLP.
//!
//! A candidate in degree `d` always contains the `n` pure powers `x_k^d`; the
//! remaining `mu - n` generators are drawn from the other degree-`d`
//! monomials, kept in revlex-descending order. Monomials of one degree never
//! divide each other, so every candidate set is already minimal.
//!
//! Candidates are tested over a prime field (full rank there certifies full
//! rank over `Q`). Work is split into batches that are checked in parallel;
//! the lowest-indexed passing candidate wins, so results do not depend on the
//! number of workers.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::lefschetz::{check_slp, LefschetzReport, MapRecord, Verdict};
use crate::linalg::FieldSpec;
use crate::monomial::{monomials_of_degree, Monomial};

/// Prime used for candidate checks unless another field is requested.
pub const DEFAULT_SEARCH_PRIME: u64 = 32_003;

const BATCH: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Strategy {
    /// Every candidate set, in revlex-descending combination order.
    Exhaustive,
    /// Independent uniform draws; trial `k` uses stream `k` of a ChaCha
    /// generator seeded with `seed`.
    Random { seed: u64, max_trials: u64 },
    /// Adds one generator at a time, preferring choices that keep the SLP.
    Greedy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpec {
    pub n: usize,
    pub d: u32,
    pub mu: usize,
    pub strategy: Strategy,
    pub field: FieldSpec,
    /// Re-check the found ideal over `Q`.
    #[serde(default)]
    pub recertify: bool,
}

impl SearchSpec {
    pub fn new(n: usize, d: u32, mu: usize, strategy: Strategy) -> Result<Self> {
        let spec = Self {
            n,
            d,
            mu,
            strategy,
            field: FieldSpec::Prime(DEFAULT_SEARCH_PRIME),
            recertify: false,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_field(mut self, field: FieldSpec) -> Self {
        self.field = field;
        self
    }

    pub fn with_recertify(mut self, recertify: bool) -> Self {
        self.recertify = recertify;
        self
    }

    /// `C(n+d-1, d)`, the number of degree-`d` monomials.
    pub fn max_generators(&self) -> usize {
        binomial(self.n + self.d as usize - 1, self.d as usize)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 3 || self.d < 3 {
            return Err(Error::InvalidParameter(format!(
                "search needs n, d >= 3, got n={}, d={}",
                self.n, self.d
            )));
        }
        let max = self.max_generators();
        if self.mu < self.n || self.mu > max {
            return Err(Error::GeneratorCountOutOfRange {
                mu: self.mu,
                min: self.n,
                max,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCertificate {
    pub spec: SearchSpec,
    pub ideal: Option<MonomialIdeal>,
    /// Ranks of every `l^t : A_i -> A_{i+t}` for the found ideal.
    pub maps: Vec<MapRecord>,
    pub trials: u64,
    pub field: FieldSpec,
    /// Verdict over `Q` when recertification was requested.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rational_verdict: Option<Verdict>,
}

impl SearchCertificate {
    pub fn found(&self) -> bool {
        self.ideal.is_some()
    }

    /// Recomputes the SLP check from the stored ideal; true when it passes
    /// with the same rank table.
    pub fn reverify(&self) -> Result<bool> {
        let Some(ideal) = &self.ideal else {
            return Ok(false);
        };
        let report = check_slp(ideal, self.field)?;
        Ok(report.passed() && report.maps == self.maps)
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, r| acc * (n - r) / (r + 1))
}

/// Degree-`d` monomials other than pure powers, revlex-descending.
pub fn free_candidates(n: usize, d: u32) -> Vec<Monomial> {
    monomials_of_degree(n, d, false)
        .into_iter()
        .filter(|m| m.as_pure_power().is_none())
        .collect()
}

fn candidate_ideal(n: usize, d: u32, pool: &[Monomial], picks: &[usize]) -> Result<MonomialIdeal> {
    let powers = (0..n).map(|k| Monomial::var_pow(n, k, d));
    MonomialIdeal::new(n, powers.chain(picks.iter().map(|&p| pool[p].clone())))
}

/// SLP report if the candidate passes.
fn passing(n: usize, d: u32, pool: &[Monomial], picks: &[usize], field: FieldSpec) -> Result<Option<(MonomialIdeal, LefschetzReport)>> {
    let ideal = candidate_ideal(n, d, pool, picks)?;
    let report = check_slp(&ideal, field)?;
    Ok(report.passed().then_some((ideal, report)))
}

/// Checks one batch in parallel; returns the lowest-indexed pass.
fn first_in_batch(
    spec: &SearchSpec,
    pool: &[Monomial],
    batch: &[Vec<usize>],
) -> Result<Option<(usize, MonomialIdeal, LefschetzReport)>> {
    let hits: Vec<Result<Option<(usize, MonomialIdeal, LefschetzReport)>>> = batch
        .par_iter()
        .enumerate()
        .map(|(k, picks)| passing(spec.n, spec.d, pool, picks, spec.field).map(|r| r.map(|(i, rep)| (k, i, rep))))
        .collect();
    for hit in hits {
        if let Some(found) = hit? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// Next `k`-combination of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for pos in (0..k).rev() {
        if c[pos] < n - k + pos {
            c[pos] += 1;
            for q in pos + 1..k {
                c[q] = c[q - 1] + 1;
            }
            return true;
        }
    }
    false
}

type Found = (Option<(MonomialIdeal, LefschetzReport)>, u64);

fn exhaustive(spec: &SearchSpec, pool: &[Monomial]) -> Result<Found> {
    let k = spec.mu - spec.n;
    let mut current: Vec<usize> = (0..k).collect();
    let mut more = k <= pool.len();
    let mut consumed = 0u64;
    while more {
        let mut batch = Vec::with_capacity(BATCH);
        while more && batch.len() < BATCH {
            batch.push(current.clone());
            more = next_combination(&mut current, pool.len());
        }
        if let Some((idx, ideal, report)) = first_in_batch(spec, pool, &batch)? {
            return Ok((Some((ideal, report)), consumed + idx as u64 + 1));
        }
        consumed += batch.len() as u64;
    }
    Ok((None, consumed))
}

fn random_picks(seed: u64, trial: u64, pool: usize, k: usize) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let mut picks = sample(&mut rng, pool, k).into_vec();
    picks.sort_unstable();
    picks
}

fn random(spec: &SearchSpec, pool: &[Monomial], seed: u64, max_trials: u64) -> Result<Found> {
    let k = spec.mu - spec.n;
    let mut consumed = 0u64;
    while consumed < max_trials {
        let take = (max_trials - consumed).min(BATCH as u64);
        let batch: Vec<Vec<usize>> = (consumed..consumed + take)
            .map(|trial| random_picks(seed, trial, pool.len(), k))
            .collect();
        if let Some((idx, ideal, report)) = first_in_batch(spec, pool, &batch)? {
            return Ok((Some((ideal, report)), consumed + idx as u64 + 1));
        }
        consumed += take;
    }
    Ok((None, consumed))
}

/// Grows the generator set one monomial at a time. Each step takes the
/// first remaining candidate that keeps the SLP, or the first remaining
/// candidate when none does.
fn greedy(spec: &SearchSpec, pool: &[Monomial]) -> Result<Found> {
    let k = spec.mu - spec.n;
    let mut picks: Vec<usize> = Vec::with_capacity(k);
    let mut consumed = 0u64;
    while picks.len() < k {
        let remaining: Vec<usize> = (0..pool.len()).filter(|p| !picks.contains(p)).collect();
        let batch: Vec<Vec<usize>> = remaining
            .iter()
            .map(|&p| {
                let mut next = picks.clone();
                next.push(p);
                next
            })
            .collect();
        match first_in_batch(spec, pool, &batch)? {
            Some((idx, _, _)) => {
                consumed += idx as u64 + 1;
                picks.push(remaining[idx]);
            }
            None => {
                consumed += batch.len() as u64;
                picks.push(remaining[0]);
            }
        }
    }
    consumed += 1;
    Ok((passing(spec.n, spec.d, pool, &picks, spec.field)?, consumed))
}

/// Runs the search described by `spec`.
pub fn search(spec: &SearchSpec) -> Result<SearchCertificate> {
    spec.validate()?;
    let pool = free_candidates(spec.n, spec.d);
    let (hit, trials) = match spec.strategy {
        Strategy::Exhaustive => exhaustive(spec, &pool)?,
        Strategy::Random { seed, max_trials } => random(spec, &pool, seed, max_trials)?,
        Strategy::Greedy => greedy(spec, &pool)?,
    };
    let (ideal, maps) = match hit {
        Some((ideal, report)) => (Some(ideal), report.maps),
        None => (None, Vec::new()),
    };
    let rational_verdict = match (&ideal, spec.recertify) {
        (Some(ideal), true) => Some(check_slp(ideal, FieldSpec::Rationals)?.verdict),
        _ => None,
    };
    Ok(SearchCertificate {
        spec: spec.clone(),
        ideal,
        maps,
        trials,
        field: spec.field,
        rational_verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::complete_intersection;

    fn spec(mu: usize, strategy: Strategy) -> SearchSpec {
        SearchSpec::new(3, 3, mu, strategy).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(SearchSpec::new(2, 3, 2, Strategy::Exhaustive).is_err());
        assert!(SearchSpec::new(3, 2, 3, Strategy::Exhaustive).is_err());
        assert!(matches!(
            SearchSpec::new(3, 3, 11, Strategy::Exhaustive),
            Err(Error::GeneratorCountOutOfRange { mu: 11, min: 3, max: 10 })
        ));
        assert!(SearchSpec::new(3, 3, 2, Strategy::Exhaustive).is_err());
        assert_eq!(free_candidates(3, 3).len(), 7);
    }

    #[test]
    fn combinations_in_order() {
        let mut c = vec![0, 1];
        let mut all = vec![c.clone()];
        while next_combination(&mut c, 4) {
            all.push(c.clone());
        }
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        let mut empty: Vec<usize> = vec![];
        assert!(!next_combination(&mut empty, 3));
    }

    #[test]
    fn extreme_generator_counts() {
        let c = search(&spec(3, Strategy::Exhaustive)).unwrap();
        assert_eq!(c.ideal, Some(complete_intersection(3, 3).unwrap()));
        assert_eq!(c.trials, 1);
        assert!(c.reverify().unwrap());

        let c = search(&spec(10, Strategy::Exhaustive)).unwrap();
        let ideal = c.ideal.clone().unwrap();
        assert_eq!(ideal.num_generators(), 10);
        assert_eq!(c.maps.len(), 3);
        assert!(c.reverify().unwrap());
    }

    #[test]
    fn five_generators_found_exhaustively() {
        let c = search(&spec(5, Strategy::Exhaustive).with_recertify(true)).unwrap();
        assert!(c.found());
        assert!(c.trials <= 21);
        assert_eq!(c.ideal.as_ref().unwrap().num_generators(), 5);
        assert_eq!(c.rational_verdict, Some(Verdict::Pass));
    }

    #[test]
    fn random_and_greedy_are_reproducible() {
        let s = spec(6, Strategy::Random { seed: 7, max_trials: 200 });
        let a = search(&s).unwrap();
        let b = search(&s).unwrap();
        assert!(a.found());
        assert_eq!(a, b);
        assert!(a.reverify().unwrap());
        assert_eq!(random_picks(7, 3, 7, 3), random_picks(7, 3, 7, 3));

        let g = search(&spec(6, Strategy::Greedy)).unwrap();
        if let Some(ideal) = &g.ideal {
            assert_eq!(ideal.num_generators(), 6);
            assert!(g.reverify().unwrap());
        }
    }

    #[test]
    fn certificate_json_round_trip() {
        let c = search(&spec(4, Strategy::Random { seed: 11, max_trials: 50 })).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert!(text.contains("\"seed\":11"));
        let back: SearchCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
    }
}
