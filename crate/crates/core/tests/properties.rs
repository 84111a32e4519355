use std::cmp::Ordering;

use lefschetz::inverse::duality_rank;
use lefschetz::lefschetz::{check_quotient, mult_matrix, Property};
use lefschetz::linalg::{ExactMatrix, Field, FieldSpec, PrimeField, Rationals};
use lefschetz::series::{is_mid_heavy, shift_and_add, IntSequence};
use lefschetz::{monomials_of_degree, revlex_compare, GradedQuotient, Monomial, MonomialIdeal};
use proptest::prelude::*;

fn monomial(n: usize, max_exp: u32) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0..=max_exp, n).prop_map(Monomial::new)
}

/// Artinian ideal: pure powers with exponent caps plus a few mixed generators.
fn artinian_ideal(max_n: usize, max_cap: u32) -> impl Strategy<Value = MonomialIdeal> {
    (1..=max_n)
        .prop_flat_map(move |n| {
            (
                proptest::collection::vec(1..=max_cap, n),
                proptest::collection::vec(proptest::collection::vec(0..max_cap, n), 0..4),
            )
        })
        .prop_map(|(caps, extra)| {
            let n = caps.len();
            let mut gens: Vec<Monomial> = caps.iter().enumerate().map(|(k, &e)| Monomial::var_pow(n, k, e)).collect();
            gens.extend(
                extra
                    .into_iter()
                    .map(|v| Monomial::new(v.iter().zip(&caps).map(|(&a, &c)| a.min(c - 1)).collect()))
                    .filter(|m| !m.is_one()),
            );
            MonomialIdeal::new(n, gens).unwrap()
        })
}

fn integer_rows(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(-3i64..=3, cols), rows)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, r| acc * (n - r) / (r + 1))
}

/// Standard monomials of degree `k`, counted from scratch over all exponent vectors.
fn brute_force_dim(ideal: &MonomialIdeal, k: u32) -> usize {
    let n = ideal.num_vars();
    let mut count = 0;
    let mut exps = vec![0u32; n];
    fn rec(pos: usize, left: u32, exps: &mut Vec<u32>, ideal: &MonomialIdeal, count: &mut usize) {
        if pos + 1 == exps.len() {
            exps[pos] = left;
            let inside = ideal
                .generators()
                .iter()
                .any(|g| g.exponents().iter().zip(exps.iter()).all(|(a, b)| a <= b));
            if !inside {
                *count += 1;
            }
            return;
        }
        for e in 0..=left {
            exps[pos] = e;
            rec(pos + 1, left - e, exps, ideal, count);
        }
    }
    rec(0, k, &mut exps, ideal, &mut count);
    count
}

proptest! {
    #[test]
    fn revlex_is_a_total_order(a in monomial(4, 3), b in monomial(4, 3), c in monomial(4, 3)) {
        let ab = a.cmp(&b);
        prop_assert_eq!(ab, b.cmp(&a).reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
        if a.degree() == b.degree() {
            prop_assert_eq!(revlex_compare(&a, &b).unwrap(), ab);
        }
    }

    #[test]
    fn degree_enumeration_is_sorted_and_complete(n in 1usize..6, d in 0u32..5) {
        let all = monomials_of_degree(n, d, false);
        prop_assert_eq!(all.len() as u64, binomial(n as u64 + d as u64 - 1, d as u64));
        prop_assert!(all.windows(2).all(|w| w[0] > w[1]));
        prop_assert!(all.iter().all(|m| m.degree() == d));
        let sq = monomials_of_degree(n, d, true);
        prop_assert_eq!(sq.len() as u64, binomial(n as u64, d as u64));
        prop_assert!(sq.iter().all(Monomial::is_squarefree));
    }

    #[test]
    fn minimalization_is_idempotent(gens in proptest::collection::vec(monomial(3, 3), 1..7)) {
        let gens: Vec<Monomial> = gens.into_iter().filter(|m| !m.is_one()).collect();
        prop_assume!(!gens.is_empty());
        let ideal = MonomialIdeal::new(3, gens.clone()).unwrap();
        let again = MonomialIdeal::new(3, ideal.generators().to_vec()).unwrap();
        prop_assert_eq!(&again, &ideal);
        prop_assert!(gens.iter().all(|g| ideal.contains(g)));
        for g in ideal.generators() {
            let rest: Vec<&Monomial> = ideal.generators().iter().filter(|h| *h != g).collect();
            prop_assert!(!rest.iter().any(|h| h.divides(g).unwrap()));
        }
        let text: MonomialIdeal = ideal.to_text().parse().unwrap();
        prop_assert_eq!(&text, &ideal);
        prop_assert_eq!(MonomialIdeal::from_json(&ideal.to_json()).unwrap(), ideal);
    }

    #[test]
    fn hilbert_function_matches_brute_force(ideal in artinian_ideal(4, 4)) {
        let q = GradedQuotient::new(&ideal).unwrap();
        let top = q.socle_degree().unwrap();
        for k in 0..=top + 1 {
            prop_assert_eq!(q.dim(k), brute_force_dim(&ideal, k as u32));
        }
    }

    #[test]
    fn shift_and_add_keeps_mid_heavy(v in proptest::collection::vec(1i64..12, 1..8)) {
        let s: IntSequence = v.into_iter().collect();
        if is_mid_heavy(&s) {
            prop_assert!(is_mid_heavy(&shift_and_add(&s)));
        }
    }

    #[test]
    fn prime_rank_bounded_by_rational_rank(rows in 1usize..7, cols in 1usize..7, seed in integer_rows(6, 6), p in prop::sample::select(vec![2u64, 3, 5, 7, 101])) {
        let data: Vec<Vec<i64>> = seed.into_iter().take(rows).map(|r| r.into_iter().take(cols).collect()).collect();
        let q = ExactMatrix::from_rows(Rationals, &data).unwrap();
        let f = PrimeField::new(p).unwrap();
        let m = q.reduce_mod(f).unwrap();
        prop_assert!(m.rank() <= q.rank());
        prop_assert!(q.rank() <= rows.min(cols));
    }

    #[test]
    fn rank_is_scale_invariant(data in integer_rows(5, 4), alpha in prop_oneof![-5i64..=-1, 1i64..=5]) {
        let q = ExactMatrix::from_rows(Rationals, &data).unwrap();
        prop_assert_eq!(q.scale(&Rationals.from_i64(alpha)).rank(), q.rank());
        let f = PrimeField::new(7).unwrap();
        let m = q.reduce_mod(f).unwrap();
        let a = f.from_i64(alpha);
        if !f.is_zero(&a) {
            prop_assert_eq!(m.scale(&a).rank(), m.rank());
        }
        // rank equals the number of RREF pivots
        let mut work = q.clone();
        prop_assert_eq!(work.row_reduce().len(), q.rank());
    }

    #[test]
    fn multiplication_and_differentiation_are_dual(ideal in artinian_ideal(4, 3)) {
        let top = GradedQuotient::new(&ideal).unwrap().socle_degree().unwrap();
        for i in 0..top {
            let r = duality_rank(&ideal, i).unwrap();
            prop_assert_eq!(r.primal_rank, r.dual_rank);
        }
    }

    #[test]
    fn certified_ranks_match_plain_elimination(ideal in artinian_ideal(4, 4)) {
        let q = GradedQuotient::new(&ideal).unwrap();
        let report = check_quotient(&q, Property::Slp, FieldSpec::Rationals).unwrap();
        for m in &report.maps {
            let direct = mult_matrix(&q, m.source_degree, m.power, &Rationals).rank();
            prop_assert_eq!(m.rank, direct);
        }
        prop_assert_eq!(report.passed(), report.maps.iter().all(|m| m.rank == m.expected));
    }
}
