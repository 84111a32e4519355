//! The differentiation action of `R = k[x1..xn]` on `S = k[X1..Xn]`,
//! inverse systems of monomial ideals, and explicit kernel / annihilator
//! witnesses for the power-family ideals `(x1,x2)^d + (x3^d, ..., xn^d)`.
//!
//! `x_k ∘ F = ∂F/∂X_k`, extended multiplicatively: `x^b ∘ X^a` is
//! `∏ a_k!/(a_k-b_k)! · X^(a-b)` when `b <= a` and zero otherwise. This is
//! ordinary differentiation, not contraction, so coefficients here are
//! characteristic zero.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{power_family, MonomialIdeal};
use crate::lefschetz::mult_matrix;
use crate::linalg::{ExactMatrix, Rationals};
use crate::monomial::Monomial;
use crate::poly::MultivariatePoly;
use crate::quotient::GradedQuotient;

fn falling(a: u32, b: u32) -> BigInt {
    ((a - b + 1)..=a).map(BigInt::from).product()
}

/// `x^b ∘ X^a`, or `None` when some `b_k > a_k`.
pub fn monomial_action(b: &Monomial, a: &Monomial) -> Option<(Monomial, BigInt)> {
    let rest = a.div(b)?;
    let coeff = a
        .exponents()
        .iter()
        .zip(b.exponents())
        .map(|(&ak, &bk)| falling(ak, bk))
        .product();
    Some((rest, coeff))
}

/// `g ∘ F`, the bilinear extension of the monomial action.
pub fn apply_derivation(g: &MultivariatePoly, f: &MultivariatePoly) -> Result<MultivariatePoly> {
    if g.num_vars() != f.num_vars() {
        return Err(Error::AmbientMismatch {
            left: g.num_vars(),
            right: f.num_vars(),
        });
    }
    let mut out = MultivariatePoly::zero(f.num_vars());
    for (b, gc) in g.terms() {
        for (a, fc) in f.terms() {
            if let Some((m, k)) = monomial_action(b, a) {
                let c = gc * fc * BigRational::from_integer(k);
                out = &out + &MultivariatePoly::term(m, c);
            }
        }
    }
    Ok(out)
}

/// Whether every minimal generator annihilates `F`.
pub fn in_inverse_system(ideal: &MonomialIdeal, f: &MultivariatePoly) -> Result<bool> {
    for g in ideal.generators() {
        let g = MultivariatePoly::monomial(g.clone());
        if !apply_derivation(&g, f)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Monomial basis `{X^a : x^a ∈ B_k}` of `(I^{-1})_k`.
pub fn inverse_system_basis(q: &GradedQuotient, k: usize) -> Vec<MultivariatePoly> {
    q.basis(k)
        .iter()
        .cloned()
        .map(MultivariatePoly::monomial)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DualityRank {
    pub primal_rank: usize,
    pub dual_rank: usize,
}

/// Rank of `·l : A_i -> A_{i+1}` and of `∘l : (I^{-1})_{i+1} -> (I^{-1})_i`.
pub fn duality_rank(ideal: &MonomialIdeal, i: usize) -> Result<DualityRank> {
    let q = GradedQuotient::new(ideal)?;
    let primal_rank = mult_matrix(&q, i, 1, &Rationals).rank();

    let n = q.num_vars();
    let ell = MultivariatePoly::variable_sum(n);
    let targets = q.basis(i);
    let mut dual = ExactMatrix::zeros(Rationals, targets.len(), q.dim(i + 1));
    for (c, form) in inverse_system_basis(&q, i + 1).iter().enumerate() {
        let image = apply_derivation(&ell, form)?;
        for (m, v) in image.terms() {
            let r = q
                .position(m)
                .ok_or_else(|| Error::InvalidParameter(format!("{m} left the dual basis")))?;
            dual.set(r, c, v.clone());
        }
    }
    Ok(DualityRank {
        primal_rank,
        dual_rank: dual.rank(),
    })
}

fn check_d(d: u32) -> Result<()> {
    if d < 3 {
        return Err(Error::InvalidParameter(format!("witness needs d >= 3, got {d}")));
    }
    Ok(())
}

fn y(k: usize) -> MultivariatePoly {
    MultivariatePoly::var(2, k)
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// `f_d = ∂²/∂y1∂y2 [(y1^{d+1} - (-y2)^{d+1}) / (y1 + y2)]` in `k[y1, y2]`.
pub fn witness_fd_bivariate(d: u32) -> Result<MultivariatePoly> {
    check_d(d)?;
    let minus_y2 = -&y(1);
    let numerator = &y(0).pow(d + 1) - &minus_y2.pow(d + 1);
    let quotient = numerator.exact_div(&(&y(0) + &y(1)))?;
    Ok(quotient.partial(0).partial(1))
}

/// `f_d` with `y1 -> x1 + x2`, `y2 -> x3`: a degree `d-2` form in three variables.
pub fn witness_fd(d: u32) -> Result<MultivariatePoly> {
    let f = witness_fd_bivariate(d)?;
    let x = |k| MultivariatePoly::var(3, k);
    f.substitute(&[&x(0) + &x(1), x(2)])
}

/// Whether `l^3 f_d` vanishes modulo `(x1,x2)^d + (x3^d)`.
pub fn fd_is_in_kernel(d: u32) -> Result<bool> {
    let f = witness_fd(d)?;
    let ell_cubed = MultivariatePoly::variable_sum(3).pow(3);
    Ok((&ell_cubed * &f).reduce_mod(&power_family(3, d)?).is_zero())
}

/// `-(y1+y2)^3 f_d == (d-1)(y1^{d+1} - (-y2)^{d+1}) + (d+1)(y1^d y2 + y1 (-y2)^d)`.
pub fn identity_check(d: u32) -> Result<bool> {
    let f = witness_fd_bivariate(d)?;
    let s = &y(0) + &y(1);
    let lhs = -&(&s.pow(3) * &f);
    let minus_y2 = -&y(1);
    let dd = d as i64;
    let first = (&y(0).pow(d + 1) - &minus_y2.pow(d + 1)).scale(&int(dd - 1));
    let second = (&(&y(0).pow(d) * &y(1)) + &(&y(0) * &minus_y2.pow(d))).scale(&int(dd + 1));
    Ok(lhs == &first + &second)
}

/// `F = (X1 - X2)^{d-1} (X3 - X4)^{d-1}` in four variables.
pub fn witness_n4(d: u32) -> Result<MultivariatePoly> {
    check_d(d)?;
    let x = |k| MultivariatePoly::var(4, k);
    Ok(&(&x(0) - &x(1)).pow(d - 1) * &(&x(2) - &x(3)).pow(d - 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiveVarWitness {
    /// Degree `2d-2` element of `A` killed by `l`.
    pub kernel_f: MultivariatePoly,
    /// Degree `2d-1` element of `I^{-1}` annihilated by `l`.
    pub perp_f: MultivariatePoly,
}

/// Witnesses that `·l : A_{2d-2} -> A_{2d-1}` is neither injective nor
/// surjective for `(x1,x2)^d + (x3^d, x4^d, x5^d)`.
pub fn witness_n5(d: u32) -> Result<FiveVarWitness> {
    check_d(d)?;
    let x = |k| MultivariatePoly::var(5, k);
    let a = &x(0) + &x(1);
    let minus_x3 = -&x(2);
    let left = (&a.pow(d) - &minus_x3.pow(d)).exact_div(&(&a - &minus_x3))?;
    let minus_x5 = -&x(4);
    let right = (&x(3).pow(d) - &minus_x5.pow(d)).exact_div(&(&x(3) - &minus_x5))?;
    let kernel_f = &left * &right;

    let q3 = d / 3;
    let r = d % 3;
    let perp_f = [
        (&x(0) - &x(1)).pow(d - 1),
        (&x(2) - &x(3)).pow(q3),
        (&x(3) - &x(4)).pow(q3),
        (&x(4) - &x(2)).pow(q3 + r),
    ]
    .iter()
    .fold(MultivariatePoly::constant(5, 1), |acc, p| &acc * p);
    Ok(FiveVarWitness { kernel_f, perp_f })
}

/// Verdicts for one power-family witness.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WitnessVerdict {
    pub d: u32,
    /// The kernel element is non-zero in `A` and `l^k` times it lies in `I`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_ok: Option<bool>,
    /// The form lies in `I^{-1}` and `l ∘ F = 0`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annihilator_ok: Option<bool>,
}

fn kernel_verdict(ideal: &MonomialIdeal, f: &MultivariatePoly, power: u32) -> bool {
    let ell = MultivariatePoly::variable_sum(ideal.num_vars()).pow(power);
    !f.reduce_mod(ideal).is_zero() && (&ell * f).reduce_mod(ideal).is_zero()
}

fn annihilator_verdict(ideal: &MonomialIdeal, form: &MultivariatePoly) -> Result<bool> {
    let ell = MultivariatePoly::variable_sum(ideal.num_vars());
    Ok(!form.is_zero()
        && in_inverse_system(ideal, form)?
        && apply_derivation(&ell, form)?.is_zero())
}

pub fn verify_fd(d: u32) -> Result<WitnessVerdict> {
    let f = witness_fd(d)?;
    Ok(WitnessVerdict {
        d,
        kernel_ok: Some(f.homogeneous_degree() == Some(d - 2) && kernel_verdict(&power_family(3, d)?, &f, 3)),
        annihilator_ok: None,
    })
}

pub fn verify_n4(d: u32) -> Result<WitnessVerdict> {
    let form = witness_n4(d)?;
    Ok(WitnessVerdict {
        d,
        kernel_ok: None,
        annihilator_ok: Some(
            form.homogeneous_degree() == Some(2 * d - 2)
                && annihilator_verdict(&power_family(4, d)?, &form)?,
        ),
    })
}

pub fn verify_n5(d: u32) -> Result<WitnessVerdict> {
    let w = witness_n5(d)?;
    let ideal = power_family(5, d)?;
    Ok(WitnessVerdict {
        d,
        kernel_ok: Some(
            w.kernel_f.homogeneous_degree() == Some(2 * d - 2) && kernel_verdict(&ideal, &w.kernel_f, 1),
        ),
        annihilator_ok: Some(
            w.perp_f.homogeneous_degree() == Some(2 * d - 1) && annihilator_verdict(&ideal, &w.perp_f)?,
        ),
    })
}

/// Evaluates `ℓ^t f` modulo the ideal; convenience for callers checking
/// their own candidate kernel elements.
pub fn times_ell_power_mod(ideal: &MonomialIdeal, f: &MultivariatePoly, t: u32) -> MultivariatePoly {
    let ell = MultivariatePoly::variable_sum(ideal.num_vars()).pow(t);
    (&ell * f).reduce_mod(ideal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::family_ideal;

    fn poly(n: usize, terms: &[(&str, i64)]) -> MultivariatePoly {
        MultivariatePoly::from_terms(n, terms.iter().map(|(m, c)| (Monomial::parse(m, n).unwrap(), *c)))
            .unwrap()
    }

    #[test]
    fn derivation_examples() {
        let r = apply_derivation(&poly(2, &[("x1", 1)]), &poly(2, &[("x1^2*x2", 1)])).unwrap();
        assert_eq!(r, poly(2, &[("x1*x2", 2)]));
        let r = apply_derivation(&poly(2, &[("x1*x2", 1)]), &poly(2, &[("x1*x2", 1)])).unwrap();
        assert_eq!(r, MultivariatePoly::constant(2, 1));
        let r = apply_derivation(&poly(2, &[("x1^2", 1)]), &poly(2, &[("x1*x2", 1)])).unwrap();
        assert!(r.is_zero());
        assert!(apply_derivation(&poly(2, &[("x1", 1)]), &poly(3, &[("x1", 1)])).is_err());
    }

    #[test]
    fn inverse_system_membership() {
        let ideal = power_family(4, 3).unwrap();
        let f = witness_n4(3).unwrap();
        assert!(in_inverse_system(&ideal, &f).unwrap());
        let ell = MultivariatePoly::variable_sum(4);
        assert!(apply_derivation(&ell, &f).unwrap().is_zero());

        assert!(in_inverse_system(&ideal, &MultivariatePoly::constant(4, 1)).unwrap());
        let sq: MonomialIdeal = "n=1; x1^2".parse().unwrap();
        assert!(!in_inverse_system(&sq, &poly(1, &[("x1^2", 1)])).unwrap());
    }

    #[test]
    fn monomial_dual_basis_matches_hilbert() {
        for ideal in [family_ideal(5, 2, 4).unwrap(), power_family(3, 4).unwrap()] {
            let q = GradedQuotient::new(&ideal).unwrap();
            for k in 0..=q.socle_degree().unwrap() {
                let basis = inverse_system_basis(&q, k);
                assert_eq!(basis.len(), q.dim(k));
                for f in &basis {
                    assert!(in_inverse_system(&ideal, f).unwrap());
                }
            }
        }
    }

    #[test]
    fn duality_examples() {
        let r = duality_rank(&family_ideal(4, 2, 4).unwrap(), 1).unwrap();
        assert_eq!((r.primal_rank, r.dual_rank), (1, 1));
        let r = duality_rank(&family_ideal(4, 2, 4).unwrap(), 2).unwrap();
        assert_eq!((r.primal_rank, r.dual_rank), (0, 0));
        let r = duality_rank(&power_family(4, 3).unwrap(), 3).unwrap();
        assert_eq!(r.primal_rank, r.dual_rank);
        assert!(r.primal_rank < 14);
    }

    #[test]
    fn fd_small_cases() {
        assert_eq!(witness_fd(3).unwrap().to_string(), "-2*x1 - 2*x2 + 2*x3");
        assert_eq!(witness_fd(4).unwrap().homogeneous_degree(), Some(2));
        for d in 3..=12 {
            assert!(fd_is_in_kernel(d).unwrap(), "d = {d}");
        }
        assert!(witness_fd(2).is_err());
    }

    #[test]
    fn identity_small_cases() {
        for d in 3..=20 {
            assert!(identity_check(d).unwrap(), "d = {d}");
        }
        // d = 3: both sides equal 2 (y1 - y2)(y1 + y2)^3
        let f = witness_fd_bivariate(3).unwrap();
        let s = &y(0) + &y(1);
        let expected = (&(&y(0) - &y(1)) * &s.pow(3)).scale(&int(2));
        assert_eq!(-&(&s.pow(3) * &f), expected);
        assert!(identity_check(1).is_err());
    }

    #[test]
    fn five_variable_witness_shapes() {
        let w = witness_n5(3).unwrap();
        assert_eq!(w.kernel_f.homogeneous_degree(), Some(4));
        assert_eq!(w.perp_f.homogeneous_degree(), Some(5));
        let x = |k| MultivariatePoly::var(5, k);
        let expected = [
            (&x(0) - &x(1)).pow(2),
            &x(2) - &x(3),
            &x(3) - &x(4),
            &x(4) - &x(2),
        ]
        .iter()
        .fold(MultivariatePoly::constant(5, 1), |acc, p| &acc * p);
        assert_eq!(w.perp_f, expected);

        let w = witness_n5(4).unwrap();
        assert_eq!(w.perp_f.homogeneous_degree(), Some(7));
        for d in 3..=5 {
            let v = verify_n5(d).unwrap();
            assert_eq!((v.kernel_ok, v.annihilator_ok), (Some(true), Some(true)), "d = {d}");
        }
    }

    #[test]
    fn divisibility_of_power_differences() {
        let x = |k| MultivariatePoly::var(3, k);
        let a = &x(0) + &x(1);
        let b = -&x(2);
        for d in 1..=9 {
            let num = &a.pow(d) - &b.pow(d);
            assert!(num.exact_div(&(&a - &b)).is_ok(), "d = {d}");
        }
    }
}
