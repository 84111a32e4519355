//! Multiplication by powers of `l = x1 + ... + xn` on `A = R/I` and the
//! weak/strong Lefschetz decisions.
//!
//! For a monomial ideal the sum of the variables is a Lefschetz element
//! whenever one exists, so it is the only linear form checked.
//!
//! Over the rationals a map is first reduced modulo [`CERTIFICATE_PRIME`]:
//! full rank there implies full rank over `Q` for an integer matrix. A map
//! that looks deficient is settled exactly. Its kernel (or cokernel) basis
//! is lifted from several primes by CRT and rational reconstruction, then
//! every lifted vector is checked by exact multiplication by `l^t`. When all
//! checks succeed the nullity is certified over `Q`. Otherwise the map is
//! re-ranked by fraction-free rational elimination.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{power_family, MonomialIdeal};
use crate::linalg::{
    crt_combine, large_primes, rational_reconstruct, ExactMatrix, Field, FieldSpec, PrimeField, Rationals,
};
use crate::quotient::{split_ideal, GradedQuotient};

/// Prime used to certify full rank of integer matrices.
pub const CERTIFICATE_PRIME: u64 = 2_147_483_647;

/// Most primes combined when lifting a kernel basis to `Q`.
const MAX_LIFT_PRIMES: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Wlp,
    Slp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Rank of `l^power : A_source -> A_{source+power}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapRecord {
    pub source_degree: usize,
    pub power: usize,
    pub rank: usize,
    pub expected: usize,
}

impl MapRecord {
    pub fn is_full_rank(&self) -> bool {
        self.rank == self.expected
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessTerm {
    pub monomial: String,
    pub coefficient: String,
}

/// Certificate for one deficient map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    /// Non-zero element of `A_source` killed by `l^power`, normalized so the
    /// revlex-largest monomial in its support has coefficient 1.
    Kernel {
        source_degree: usize,
        power: usize,
        terms: Vec<WitnessTerm>,
    },
    /// Standard monomial of the target degree outside the image.
    Unreached {
        source_degree: usize,
        power: usize,
        monomial: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzReport {
    pub property: Property,
    pub field: FieldSpec,
    pub verdict: Verdict,
    pub hilbert: Vec<usize>,
    /// Prime whose full-rank results certified passing maps over `Q`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate_prime: Option<u64>,
    pub maps: Vec<MapRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

impl LefschetzReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &MapRecord> {
        self.maps.iter().filter(|m| !m.is_full_rank())
    }
}

/// The linear maps `A_i -> A_{i+1}` given by multiplication by `l`, stored
/// sparsely: column `m` of `B_i` lists the rows `x_k m` that survive in `B_{i+1}`.
pub struct MultMatrixSet<'a> {
    quotient: &'a GradedQuotient,
    steps: Vec<Vec<Vec<usize>>>,
}

impl<'a> MultMatrixSet<'a> {
    pub fn new(quotient: &'a GradedQuotient) -> Self {
        let top = quotient.socle_degree().unwrap_or(0);
        let n = quotient.num_vars();
        let steps = (0..=top)
            .map(|deg| {
                quotient
                    .basis(deg)
                    .iter()
                    .map(|m| {
                        (0..n)
                            .filter_map(|k| quotient.position(&m.mul_var(k)))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self { quotient, steps }
    }

    pub fn quotient(&self) -> &GradedQuotient {
        self.quotient
    }

    /// `l * M`, where `M` has rows indexed by `B_deg`.
    fn step<F: Field>(&self, deg: usize, m: &ExactMatrix<F>) -> ExactMatrix<F> {
        let f = m.field().clone();
        let mut out = ExactMatrix::zeros(f.clone(), self.quotient.dim(deg + 1), m.cols());
        if let Some(targets) = self.steps.get(deg) {
            for (r, rows) in targets.iter().enumerate() {
                for &r2 in rows {
                    for c in 0..m.cols() {
                        let v = f.add(out.get(r2, c), m.get(r, c));
                        out.set(r2, c, v);
                    }
                }
            }
        }
        out
    }

    /// `l^t v` for a rational vector `v` over `B_i`.
    pub fn apply_power(&self, i: usize, t: usize, v: &[BigRational]) -> Vec<BigRational> {
        let mut cur = v.to_vec();
        for deg in i..i + t {
            let mut next = vec![BigRational::zero(); self.quotient.dim(deg + 1)];
            if let Some(targets) = self.steps.get(deg) {
                for (r, rows) in targets.iter().enumerate() {
                    if cur[r].is_zero() {
                        continue;
                    }
                    for &r2 in rows {
                        next[r2] += &cur[r];
                    }
                }
            }
            cur = next;
        }
        cur
    }

    /// `y M_i^t` for a rational covector `y` over `B_{i+t}`.
    pub fn apply_power_transpose(&self, i: usize, t: usize, y: &[BigRational]) -> Vec<BigRational> {
        let mut cur = y.to_vec();
        for deg in (i..i + t).rev() {
            let targets = self.steps.get(deg).map(Vec::as_slice).unwrap_or(&[]);
            let mut next = vec![BigRational::zero(); self.quotient.dim(deg)];
            for (r, rows) in targets.iter().enumerate() {
                for &r2 in rows {
                    next[r] += &cur[r2];
                }
            }
            cur = next;
        }
        cur
    }

    /// `M_i^t` in the bases `B_i -> B_{i+t}`; `t = 0` gives the identity.
    pub fn matrix<F: Field>(&self, i: usize, t: usize, field: &F) -> ExactMatrix<F> {
        let mut m = ExactMatrix::identity(field.clone(), self.quotient.dim(i));
        for s in 0..t {
            m = self.step(i + s, &m);
        }
        m
    }

    /// `M_i^1, M_i^2, ..., M_i^{max_t}` built incrementally.
    pub fn powers<F: Field>(&self, i: usize, max_t: usize, field: &F) -> Vec<ExactMatrix<F>> {
        let mut out = Vec::with_capacity(max_t);
        let mut m = ExactMatrix::identity(field.clone(), self.quotient.dim(i));
        for s in 0..max_t {
            m = self.step(i + s, &m);
            out.push(m.clone());
        }
        out
    }
}

/// `M_i^t` for the quotient `q` over `field`.
pub fn mult_matrix<F: Field>(q: &GradedQuotient, i: usize, t: usize, field: &F) -> ExactMatrix<F> {
    MultMatrixSet::new(q).matrix(i, t, field)
}

/// The `(i, t)` pairs checked for a property, ordered by power then degree.
fn map_schedule(top: usize, property: Property) -> Vec<(usize, usize)> {
    let max_t = match property {
        Property::Wlp => top.min(1),
        Property::Slp => top,
    };
    (1..=max_t)
        .flat_map(|t| (0..=top - t).map(move |i| (i, t)))
        .collect()
}

fn expected_rank(q: &GradedQuotient, i: usize, t: usize) -> usize {
    q.dim(i).min(q.dim(i + t))
}

/// Ranks for every scheduled map over a single field, parallel over source degree.
fn rank_table<F: Field>(
    set: &MultMatrixSet<'_>,
    schedule: &[(usize, usize)],
    field: &F,
) -> Vec<MapRecord> {
    let q = set.quotient();
    let mut by_source: Vec<(usize, usize)> = Vec::new();
    for &(i, t) in schedule {
        match by_source.iter_mut().find(|(s, _)| *s == i) {
            Some(entry) => entry.1 = entry.1.max(t),
            None => by_source.push((i, t)),
        }
    }
    let mut records: Vec<MapRecord> = by_source
        .par_iter()
        .flat_map_iter(|&(i, max_t)| {
            set.powers(i, max_t, field)
                .into_iter()
                .enumerate()
                .map(move |(k, m)| (i, k + 1, m))
                .filter(|(i, t, _)| schedule.contains(&(*i, *t)))
                .map(|(i, t, m)| MapRecord {
                    source_degree: i,
                    power: t,
                    rank: m.rank(),
                    expected: expected_rank(q, i, t),
                })
                .collect::<Vec<_>>()
        })
        .collect();
    records.sort_by_key(|r| (r.power, r.source_degree));
    records
}

fn witness_for<F: Field>(set: &MultMatrixSet<'_>, record: &MapRecord, field: &F) -> Option<Witness> {
    let q = set.quotient();
    let (i, t) = (record.source_degree, record.power);
    let m = set.matrix(i, t, field);
    if q.dim(i) <= q.dim(i + t) {
        let v = m.kernel_basis().into_iter().next()?;
        kernel_witness(q, i, t, &v, field)
    } else {
        let k = m.unreached_coordinate()?;
        Some(Witness::Unreached {
            source_degree: i,
            power: t,
            monomial: q.basis(i + t)[k].to_string(),
        })
    }
}

/// Exact nullity certificate for a deficient map over `Q`.
struct Lifted {
    rank: usize,
    /// Vectors live on the target side (`y M = 0`) rather than the source.
    left: bool,
    /// Free coordinate of each lifted vector, ascending.
    free: Vec<usize>,
    vectors: Vec<Vec<BigRational>>,
}

fn lift_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| large_primes(MAX_LIFT_PRIMES))
}

/// Lifts the modular kernel basis of `M_i^t` (or of its transpose when the
/// map should be onto) to `Q` and verifies it exactly. `None` when the
/// primes disagree or reconstruction never verifies.
fn lift_deficiency(set: &MultMatrixSet<'_>, i: usize, t: usize) -> Option<Lifted> {
    let q = set.quotient();
    let left = q.dim(i) > q.dim(i + t);
    let mut pivots0: Option<Vec<usize>> = None;
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut modulus = BigInt::from(1u32);
    for &p in lift_primes() {
        let f = PrimeField::new(p).ok()?;
        let m = set.matrix(i, t, &f);
        let m = if left { m.transpose() } else { m };
        let (pivots, basis) = m.kernel_with_pivots();
        match &pivots0 {
            None => {
                residues = basis
                    .iter()
                    .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                    .collect();
                pivots0 = Some(pivots);
            }
            Some(expected) if *expected == pivots => {
                for (acc, v) in residues.iter_mut().zip(&basis) {
                    for (a, &x) in acc.iter_mut().zip(v) {
                        *a = crt_combine(a, &modulus, x, p);
                    }
                }
            }
            Some(_) => return None,
        }
        modulus *= BigInt::from(p);
        let vectors: Option<Vec<Vec<BigRational>>> = residues
            .iter()
            .map(|v| v.iter().map(|a| rational_reconstruct(a, &modulus)).collect())
            .collect();
        let Some(vectors) = vectors else { continue };
        let verified = vectors.iter().all(|v| {
            let image = if left {
                set.apply_power_transpose(i, t, v)
            } else {
                set.apply_power(i, t, v)
            };
            image.iter().all(Zero::is_zero)
        });
        if verified {
            let pivots = pivots0?;
            let width = if left { q.dim(i + t) } else { q.dim(i) };
            let free = (0..width).filter(|c| !pivots.contains(c)).collect();
            return Some(Lifted {
                rank: pivots.len(),
                left,
                free,
                vectors,
            });
        }
    }
    None
}

fn kernel_witness<F: Field>(q: &GradedQuotient, i: usize, t: usize, v: &[F::Elem], field: &F) -> Option<Witness> {
    let lead = v.iter().find(|x| !field.is_zero(x))?;
    let scale = field.inv(lead)?;
    let terms = q
        .basis(i)
        .iter()
        .zip(v)
        .filter(|(_, c)| !field.is_zero(c))
        .map(|(mono, c)| WitnessTerm {
            monomial: mono.to_string(),
            coefficient: field.format(&field.mul(&scale, c)),
        })
        .collect();
    Some(Witness::Kernel {
        source_degree: i,
        power: t,
        terms,
    })
}

fn lifted_witness(q: &GradedQuotient, i: usize, t: usize, lifted: &Lifted) -> Option<Witness> {
    if lifted.left {
        Some(Witness::Unreached {
            source_degree: i,
            power: t,
            monomial: q.basis(i + t)[*lifted.free.first()?].to_string(),
        })
    } else {
        kernel_witness(q, i, t, lifted.vectors.first()?, &Rationals)
    }
}

/// Decides WLP or SLP for a prebuilt quotient.
pub fn check_quotient(q: &GradedQuotient, property: Property, field: FieldSpec) -> Result<LefschetzReport> {
    let set = MultMatrixSet::new(q);
    let top = q.socle_degree().unwrap_or(0);
    let schedule = map_schedule(top, property);
    let (maps, certificate_prime, witness) = match field {
        FieldSpec::Prime(p) => {
            let f = PrimeField::new(p)?;
            let maps = rank_table(&set, &schedule, &f);
            let witness = maps
                .iter()
                .find(|r| !r.is_full_rank())
                .and_then(|r| witness_for(&set, r, &f));
            (maps, None, witness)
        }
        FieldSpec::Rationals => {
            let cert = PrimeField::new(CERTIFICATE_PRIME)?;
            let mut maps = rank_table(&set, &schedule, &cert);
            let lifted: Vec<Option<Lifted>> = maps
                .par_iter_mut()
                .map(|r| {
                    if r.is_full_rank() {
                        return None;
                    }
                    let (i, t) = (r.source_degree, r.power);
                    let lifted = lift_deficiency(&set, i, t);
                    r.rank = match &lifted {
                        Some(l) => l.rank,
                        None => set.matrix(i, t, &Rationals).rank(),
                    };
                    lifted
                })
                .collect();
            let witness = maps.iter().zip(&lifted).find(|(r, _)| !r.is_full_rank()).and_then(|(r, l)| match l {
                Some(l) => lifted_witness(q, r.source_degree, r.power, l),
                None => witness_for(&set, r, &Rationals),
            });
            (maps, Some(CERTIFICATE_PRIME), witness)
        }
    };
    let verdict = if maps.iter().all(MapRecord::is_full_rank) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(LefschetzReport {
        property,
        field,
        verdict,
        hilbert: q.hilbert_vec(),
        certificate_prime,
        maps,
        witness,
    })
}

pub fn check_lefschetz(ideal: &MonomialIdeal, property: Property, field: FieldSpec) -> Result<LefschetzReport> {
    let q = GradedQuotient::new(ideal)?;
    check_quotient(&q, property, field)
}

/// Strong Lefschetz property for `l = x1 + ... + xn`.
pub fn check_slp(ideal: &MonomialIdeal, field: FieldSpec) -> Result<LefschetzReport> {
    check_lefschetz(ideal, Property::Slp, field)
}

/// Weak Lefschetz property for `l = x1 + ... + xn`.
pub fn check_wlp(ideal: &MonomialIdeal, field: FieldSpec) -> Result<LefschetzReport> {
    check_lefschetz(ideal, Property::Wlp, field)
}

/// Blocks of `M_i^t` under `B_k = B̄_k ⊔ x_n B̄_{k-1}`.
#[derive(Clone, Debug)]
pub struct BlockDecomposition<F: Field> {
    pub top_left: ExactMatrix<F>,
    pub bottom_left: ExactMatrix<F>,
    pub bottom_right: ExactMatrix<F>,
    /// `M_i^t` computed directly in the full ring.
    pub full: ExactMatrix<F>,
}

impl<F: Field> BlockDecomposition<F> {
    /// Whether `full == [[top_left, 0], [bottom_left, bottom_right]]`.
    pub fn holds(&self) -> bool {
        let zero = ExactMatrix::zeros(
            self.full.field().clone(),
            self.top_left.rows(),
            self.bottom_right.cols(),
        );
        match ExactMatrix::block(&self.top_left, &zero, &self.bottom_left, &self.bottom_right) {
            Ok(assembled) => assembled == self.full,
            Err(_) => false,
        }
    }
}

/// `M̄_i^t`, `t M̄_i^{t-1}` and `M̄_{i-1}^t` from the quotient in one fewer variable.
pub fn block_decomposition<F: Field>(
    q: &GradedQuotient,
    i: usize,
    t: usize,
    field: &F,
) -> Result<BlockDecomposition<F>> {
    if i == 0 || t == 0 {
        return Err(Error::InvalidParameter("block decomposition needs i, t >= 1".into()));
    }
    let bar = GradedQuotient::new(&split_ideal(q.ideal())?)?;
    let bar_set = MultMatrixSet::new(&bar);
    let scalar = field.from_i64(t as i64);
    Ok(BlockDecomposition {
        top_left: bar_set.matrix(i, t, field),
        bottom_left: bar_set.matrix(i, t - 1, field).scale(&scalar),
        bottom_right: bar_set.matrix(i - 1, t, field),
        full: mult_matrix(q, i, t, field),
    })
}

/// Rank of `M_i^t` against `rank(P) + rank(APB)` with `P = M̄_i^{t-1}`,
/// `A = M̄_{i+t-1}^1`, `B = M̄_{i-1}^1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitRank {
    pub direct: usize,
    pub via_blocks: usize,
}

pub fn split_rank<F: Field>(q: &GradedQuotient, i: usize, t: usize, field: &F) -> Result<SplitRank> {
    if i == 0 || t == 0 {
        return Err(Error::InvalidParameter("split rank needs i, t >= 1".into()));
    }
    let bar = GradedQuotient::new(&split_ideal(q.ideal())?)?;
    let bar_set = MultMatrixSet::new(&bar);
    let p = bar_set.matrix(i, t - 1, field);
    let a = bar_set.matrix(i + t - 1, 1, field);
    let b = bar_set.matrix(i - 1, 1, field);
    let report = crate::linalg::block_rank_check(&a, &p, &b, &field.from_i64(t as i64))?;
    Ok(SplitRank {
        direct: mult_matrix(q, i, t, field).rank(),
        via_blocks: report.rhs_rank,
    })
}

/// Hilbert-function differences that force a map to be injective or surjective.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GapKind {
    /// `HF(A, d+1) - HF(A, d-2)` for `(x1,x2)^d + (x3^d)`.
    ThreeVarInjectivity,
    /// `HF(A, 2d-3) - HF(A, 2d-2)` for `(x1,x2)^d + (x3^d, x4^d)`.
    FourVarSurjectivity,
}

pub fn hf_gap(kind: GapKind, d: u32) -> Result<i64> {
    if d < 3 {
        return Err(Error::InvalidParameter(format!("gap needs d >= 3, got {d}")));
    }
    let d64 = d as i64;
    let (n, hi, lo) = match kind {
        GapKind::ThreeVarInjectivity => (3, d64 + 1, d64 - 2),
        GapKind::FourVarSurjectivity => (4, 2 * d64 - 3, 2 * d64 - 2),
    };
    let q = GradedQuotient::new(&power_family(n, d)?)?;
    Ok(q.dim_at(hi) as i64 - q.dim_at(lo) as i64)
}
