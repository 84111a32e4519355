//! Reproducible checks of the library's headline statements, grouped into
//! a fast level (seconds) and a full level (minutes).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{family_ideal, mu_to_family, power_family, MonomialIdeal, SpecialIdeal};
use crate::inverse::{identity_check, verify_fd, verify_n4, verify_n5};
use crate::lefschetz::{check_slp, check_wlp, hf_gap, GapKind};
use crate::linalg::{is_prime, FieldSpec};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::quotient::GradedQuotient;
use crate::search::{search, SearchSpec, Strategy};
use crate::series::{closed_form_hs, is_class_h, is_log_concave, is_mid_heavy, is_symmetric, is_unimodal, IntSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Fast,
    Full,
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Level::Fast),
            "full" => Ok(Level::Full),
            other => Err(Error::Parse(format!("level must be `fast` or `full`, got `{other}`"))),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Fast => "fast",
            Level::Full => "full",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureReport {
    pub level: Level,
    pub passed: bool,
    pub checks: Vec<FixtureCheck>,
}

impl FixtureReport {
    fn from_checks(level: Level, checks: Vec<FixtureCheck>) -> Self {
        Self {
            level,
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }
}

fn run(name: &str, f: impl FnOnce() -> Result<(bool, String)>) -> FixtureCheck {
    let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    FixtureCheck {
        name: name.to_string(),
        passed,
        detail,
    }
}

/// `(n, i, j)` with `1 <= i < j <= n <= max_n`.
pub fn family_triples(max_n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (2..=max_n).flat_map(|n| (2..=n).flat_map(move |j| (1..j).map(move |i| (n, i, j))))
}

fn first_mismatch<T>(items: impl Iterator<Item = T>, mut ok: impl FnMut(&T) -> Result<bool>) -> Result<(usize, Option<T>)> {
    let mut count = 0;
    for item in items {
        count += 1;
        if !ok(&item)? {
            return Ok((count, Some(item)));
        }
    }
    Ok((count, None))
}

fn summarize<T: fmt::Debug>(what: &str, (count, bad): (usize, Option<T>)) -> (bool, String) {
    match bad {
        None => (true, format!("{count} {what} checked")),
        Some(b) => (false, format!("first failure at {b:?}")),
    }
}

/// Brute-force Hilbert functions of the family equal the closed form.
pub fn check_hilbert_closed_form(max_n: usize) -> Result<(bool, String)> {
    let r = first_mismatch(family_triples(max_n), |&(n, i, j)| {
        let q = GradedQuotient::new(&family_ideal(n, i, j)?)?;
        Ok(q.hilbert() == closed_form_hs(n, i, j)?)
    })?;
    Ok(summarize("ideals", r))
}

/// Shape of the family's Hilbert sequences.
pub fn check_family_shapes(max_n: usize) -> Result<(bool, String)> {
    let r = first_mismatch(family_triples(max_n), |&(n, i, j)| {
        let h = closed_form_hs(n, i, j)?;
        Ok(is_unimodal(&h)
            && is_log_concave(&h)
            && is_mid_heavy(&h)
            && is_class_h(&h)?
            && is_symmetric(&h) == (j - i - 1 == 1)
            && crate::series::quadratic_discriminant(i as i64, j as i64) > 0)
    })?;
    Ok(summarize("sequences", r))
}

/// Every sequence with entries and length bounded by `bound` that is
/// mid-heavy and Hilbert-shaped lies in class H.
pub fn check_mid_heavy_implies_class_h(bound: usize) -> Result<(bool, String)> {
    let mut checked = 0usize;
    for len in 1..=bound {
        let total = (bound + 1).pow(len as u32);
        for code in 0..total {
            let mut c = code;
            let entries: Vec<i64> = (0..len)
                .map(|_| {
                    let v = (c % (bound + 1)) as i64;
                    c /= bound + 1;
                    v
                })
                .collect();
            if entries[0] < 1 || entries.contains(&0) {
                continue;
            }
            let s: IntSequence = entries.iter().copied().collect();
            if is_mid_heavy(&s) {
                checked += 1;
                if !is_class_h(&s)? {
                    return Ok((false, format!("counterexample {s}")));
                }
            }
        }
    }
    Ok((true, format!("{checked} mid-heavy sequences checked")))
}

/// SLP of every family ideal with `n <= max_n` over `field`.
pub fn check_family_slp(max_n: usize, field: FieldSpec) -> Result<(bool, String)> {
    let r = first_mismatch(family_triples(max_n), |&(n, i, j)| {
        Ok(check_slp(&family_ideal(n, i, j)?, field)?.passed())
    })?;
    Ok(summarize("ideals", r))
}

/// SLP over every `F_p` with `D < p <= max_p`, `D` the socle degree.
pub fn check_family_slp_char_p(max_n: usize, max_p: u64) -> Result<(bool, String)> {
    let mut pairs = 0usize;
    for (n, i, j) in family_triples(max_n) {
        let ideal = family_ideal(n, i, j)?;
        let top = GradedQuotient::new(&ideal)?.socle_degree().unwrap_or(0) as u64;
        for p in (top + 1..=max_p).filter(|&p| is_prime(p)) {
            pairs += 1;
            if !check_slp(&ideal, FieldSpec::Prime(p))?.passed() {
                return Ok((false, format!("fails for {:?} over F_{p}", (n, i, j))));
            }
        }
    }
    Ok((true, format!("{pairs} (ideal, prime) pairs checked")))
}

/// Three-variable power family: gap, witness, identity and failure position.
pub fn check_power_family_three(max_d: u32, max_identity: u32) -> Result<(bool, String)> {
    for d in 3..=max_d {
        if hf_gap(GapKind::ThreeVarInjectivity, d)? != d as i64 - 3 {
            return Ok((false, format!("gap mismatch at d={d}")));
        }
        if verify_fd(d)?.kernel_ok != Some(true) {
            return Ok((false, format!("witness fails at d={d}")));
        }
        let report = check_slp(&power_family(3, d)?, FieldSpec::Rationals)?;
        // l and l^2 have full rank everywhere; l^3 fails only out of degree d-2.
        let low: Vec<(usize, usize)> = report
            .failures()
            .filter(|m| m.power <= 3)
            .map(|m| (m.source_degree, m.power))
            .collect();
        if low != [(d as usize - 2, 3)] {
            return Ok((false, format!("no deficiency at (i={}, t=3) for d={d}", d - 2)));
        }
    }
    for d in 3..=max_identity {
        if !identity_check(d)? {
            return Ok((false, format!("identity fails at d={d}")));
        }
    }
    Ok((true, format!("d = 3..={max_d}, identity up to {max_identity}")))
}

/// `sum_{k=1}^{d} k^2`.
fn sum_of_squares(d: u32) -> usize {
    (1..=d as usize).map(|k| k * k).sum()
}

/// Four- and five-variable power families.
pub fn check_power_family_four_five(max_d4: u32, max_d5: u32) -> Result<(bool, String)> {
    for d in 3..=max_d4 {
        let dd = d as i64;
        if hf_gap(GapKind::FourVarSurjectivity, d)? != dd * (dd - 1) / 2 - dd {
            return Ok((false, format!("gap mismatch at d={d}")));
        }
        let q = GradedQuotient::new(&power_family(4, d)?)?;
        if q.dim(2 * d as usize - 2) != sum_of_squares(d) {
            return Ok((false, format!("HF(2d-2) mismatch at d={d}")));
        }
        if verify_n4(d)?.annihilator_ok != Some(true) {
            return Ok((false, format!("four-variable form fails at d={d}")));
        }
    }
    for d in 3..=max_d5 {
        let v = verify_n5(d)?;
        if v.kernel_ok != Some(true) || v.annihilator_ok != Some(true) {
            return Ok((false, format!("five-variable witnesses fail at d={d}")));
        }
    }
    Ok((true, format!("n=4 d=3..={max_d4}, n=5 d=3..={max_d5}")))
}

/// WLP fails for `power_family(n, 3)` with `n` in `4..=max_n`.
pub fn check_power_family_wlp(max_n: usize) -> Result<(bool, String)> {
    for n in 4..=max_n {
        if check_wlp(&power_family(n, 3)?, FieldSpec::Rationals)?.passed() {
            return Ok((false, format!("WLP unexpectedly holds for n={n}")));
        }
    }
    Ok((true, format!("n = 4..={max_n}")))
}

/// Exhaustive search finds an SLP ideal for every admissible `mu` at `(3, 3)`.
pub fn check_search_desk_scale() -> Result<(bool, String)> {
    for mu in 3..=10 {
        let cert = search(&SearchSpec::new(3, 3, mu, Strategy::Exhaustive)?)?;
        if !cert.found() || !cert.reverify()? {
            return Ok((false, format!("no certified ideal for mu={mu}")));
        }
    }
    Ok((true, "mu = 3..=10".into()))
}

/// `mu_to_family` hits every generator count in `[n, C(n+1, 2)]` with the SLP.
pub fn check_mu_range(max_n: usize) -> Result<(bool, String)> {
    let mut count = 0;
    for n in 2..=max_n {
        for mu in n..=n * (n + 1) / 2 {
            count += 1;
            let ideal = mu_to_family(n, mu)?;
            if ideal.num_generators() != mu || !check_slp(&ideal, FieldSpec::Rationals)?.passed() {
                return Ok((false, format!("fails for n={n}, mu={mu}")));
            }
        }
    }
    Ok((true, format!("{count} (n, mu) pairs checked")))
}

fn octic_checks() -> Vec<FixtureCheck> {
    let j = SpecialIdeal::Octic3.build();
    let mut checks = vec![run("sec5_J slp", || {
        let passed = check_slp(&j.clone()?, FieldSpec::Rationals)?.passed();
        Ok((passed, "SLP over Q".into()))
    })];
    for special in ["x1^4*x2^2*x3^2", "x1^3*x2^3*x3^2"] {
        let j = j.clone();
        checks.push(run(&format!("sec5_J without {special}"), move || {
            let smaller = j?.without_generator(&Monomial::parse(special, 3)?)?;
            let failed = !check_slp(&smaller, FieldSpec::Rationals)?.passed();
            Ok((failed, "SLP fails over Q".into()))
        }));
    }
    checks
}

/// `I + (m)` for every cubic `m` outside `I`, with the WLP verdicts.
pub fn cubic8_extensions(ideal: &MonomialIdeal) -> Result<Vec<(Monomial, bool)>> {
    use rayon::prelude::*;
    let extras: Vec<Monomial> = monomials_of_degree(8, 3, false)
        .into_iter()
        .filter(|m| !ideal.contains(m))
        .collect();
    extras
        .into_par_iter()
        .map(|m| {
            let bigger = ideal.with_generators([m.clone()])?;
            Ok((m, check_wlp(&bigger, FieldSpec::Rationals)?.passed()))
        })
        .collect()
}

fn cubic8_checks() -> Vec<FixtureCheck> {
    let ideal = SpecialIdeal::Cubic8.build();
    let i2 = ideal.clone();
    vec![
        run("sec5_cubic8 slp", move || {
            let passed = check_slp(&ideal?, FieldSpec::Prime(32_003))?.passed();
            Ok((passed, "SLP over F_32003".into()))
        }),
        run("sec5_cubic8 extensions fail wlp", move || {
            let results = cubic8_extensions(&i2?)?;
            let holding: Vec<String> = results.iter().filter(|(_, p)| *p).map(|(m, _)| m.to_string()).collect();
            if holding.is_empty() {
                Ok((true, format!("{} cubic extensions all fail WLP over Q", results.len())))
            } else {
                Ok((false, format!("WLP holds after adding {}", holding.join(", "))))
            }
        }),
    ]
}

/// The eight- and three-variable fixtures alone.
pub fn verify_sec5_fixtures(level: Level) -> FixtureReport {
    let mut checks = octic_checks();
    if level == Level::Full {
        checks.extend(cubic8_checks());
    }
    FixtureReport::from_checks(level, checks)
}

/// Every fixture group; the full level widens each range.
pub fn verify_fixture_suite(level: Level) -> FixtureReport {
    let full = level == Level::Full;
    let mut checks = vec![
        run("hilbert closed form", || check_hilbert_closed_form(if full { 9 } else { 6 })),
        run("family shapes", || check_family_shapes(if full { 9 } else { 6 })),
        run("mid-heavy implies class H", || check_mid_heavy_implies_class_h(if full { 6 } else { 4 })),
        run("family slp over Q", || check_family_slp(if full { 7 } else { 5 }, FieldSpec::Rationals)),
        run("family slp over F_p", || check_family_slp_char_p(if full { 6 } else { 5 }, 13)),
        run("three-variable power family", || {
            check_power_family_three(if full { 8 } else { 6 }, if full { 20 } else { 10 })
        }),
        run("four- and five-variable power families", || {
            check_power_family_four_five(if full { 6 } else { 4 }, if full { 5 } else { 3 })
        }),
        run("power family wlp failures", || check_power_family_wlp(if full { 7 } else { 5 })),
        run("search at n=3, d=3", check_search_desk_scale),
        run("generator-count range", || check_mu_range(if full { 7 } else { 5 })),
    ];
    checks.extend(verify_sec5_fixtures(level).checks);
    FixtureReport::from_checks(level, checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triples_count() {
        // sum over n of C(n, 2)
        assert_eq!(family_triples(4).count(), 1 + 3 + 6);
        assert!(family_triples(5).all(|(n, i, j)| 1 <= i && i < j && j <= n));
    }

    #[test]
    fn small_groups_pass() {
        assert_eq!(check_hilbert_closed_form(4).unwrap().0, true);
        assert_eq!(check_family_shapes(4).unwrap().0, true);
        assert_eq!(check_mid_heavy_implies_class_h(3).unwrap().0, true);
        assert_eq!(check_power_family_three(4, 6).unwrap().0, true);
        assert_eq!(check_mu_range(4).unwrap().0, true);
    }

    #[test]
    fn octic_report() {
        let r = verify_sec5_fixtures(Level::Fast);
        assert!(r.passed, "{r:?}");
        assert_eq!(r.checks.len(), 3);
        assert_eq!("full".parse::<Level>().unwrap(), Level::Full);
        assert!("slow".parse::<Level>().is_err());
    }
}
