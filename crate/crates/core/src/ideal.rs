//! Monomial ideals, the quadratic RLex family and the named higher-degree ideals.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{monomials_of_degree, Monomial};

/// A monomial ideal, always held by its minimal generating set.
///
/// Generators are sorted by increasing degree and, within a degree, by
/// descending revlex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, reducing to the minimal generating set.
    pub fn new(n: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("ambient ring needs at least one variable".into()));
        }
        let mut all: Vec<Monomial> = Vec::new();
        for g in gens {
            if g.num_vars() != n {
                return Err(Error::AmbientMismatch {
                    left: n,
                    right: g.num_vars(),
                });
            }
            all.push(g);
        }
        Ok(Self {
            n,
            gens: minimalize(all),
        })
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    /// `m` lies in the ideal iff some generator divides it.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides_unchecked(m))
    }

    /// Exponent of the pure-power generator in variable `k`, if any.
    pub fn pure_power(&self, k: usize) -> Option<u32> {
        self.gens.iter().find_map(|g| match g.as_pure_power() {
            Some((v, e)) if v == k => Some(e),
            _ => None,
        })
    }

    pub fn is_artinian(&self) -> bool {
        (0..self.n).all(|k| self.pure_power(k).is_some())
    }

    pub fn require_artinian(&self) -> Result<()> {
        match (0..self.n).find(|&k| self.pure_power(k).is_none()) {
            Some(k) => Err(Error::NotArtinian(k + 1)),
            None => Ok(()),
        }
    }

    /// The ideal plus the extra generators, re-minimalized.
    pub fn with_generators(&self, extra: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        Self::new(self.n, self.gens.iter().cloned().chain(extra))
    }

    /// The ideal generated by every minimal generator except `m`.
    pub fn without_generator(&self, m: &Monomial) -> Result<Self> {
        Self::new(self.n, self.gens.iter().filter(|g| *g != m).cloned())
    }

    /// Text form `n=4; x1^2, x2^2, x1*x2`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&IdealJson::from(self)).expect("ideal serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: IdealJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::try_from(raw)
    }
}

fn canonical_order(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    a.degree().cmp(&b.degree()).then_with(|| b.cmp(a))
}

fn minimalize(mut all: Vec<Monomial>) -> Vec<Monomial> {
    // After sorting by degree, a generator can only be divided by an earlier one.
    all.sort_by(canonical_order);
    all.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(all.len());
    for g in all {
        if !kept.iter().any(|k| k.divides_unchecked(&g)) {
            kept.push(g);
        }
    }
    kept
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={};", self.n)?;
        for (idx, g) in self.gens.iter().enumerate() {
            let sep = if idx == 0 { " " } else { ", " };
            write!(f, "{sep}{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for MonomialIdeal {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (head, body) = text
            .split_once(';')
            .ok_or_else(|| Error::Parse("expected `n=<count>; <generators>`".into()))?;
        let n: usize = head
            .trim()
            .strip_prefix("n=")
            .map(str::trim)
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad ring size `{}`", head.trim())))?;
        let gens = body
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| Monomial::parse(s, n))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, gens)
    }
}

#[derive(Serialize, Deserialize)]
struct IdealJson {
    n: usize,
    gens: Vec<Vec<u32>>,
}

impl From<&MonomialIdeal> for IdealJson {
    fn from(ideal: &MonomialIdeal) -> Self {
        IdealJson {
            n: ideal.n,
            gens: ideal.gens.iter().map(|g| g.exponents().to_vec()).collect(),
        }
    }
}

impl TryFrom<IdealJson> for MonomialIdeal {
    type Error = Error;

    fn try_from(raw: IdealJson) -> Result<Self> {
        MonomialIdeal::new(raw.n, raw.gens.into_iter().map(Monomial::new))
    }
}

impl Serialize for MonomialIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IdealJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonomialIdeal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = IdealJson::deserialize(d)?;
        MonomialIdeal::try_from(raw).map_err(serde::de::Error::custom)
    }
}

fn check_indices(n: usize, i: usize, j: usize) -> Result<()> {
    if i >= 1 && i < j && j <= n {
        Ok(())
    } else {
        Err(Error::InvalidIndices { n, i, j })
    }
}

/// Squarefree quadrics `>= x_i x_j` in revlex, in descending order.
pub fn rlex_generators(n: usize, i: usize, j: usize) -> Result<Vec<Monomial>> {
    check_indices(n, i, j)?;
    let mut pivot = Monomial::one(n);
    pivot = pivot.mul_var(i - 1).mul_var(j - 1);
    Ok(monomials_of_degree(n, 2, true)
        .into_iter()
        .filter(|m| *m >= pivot)
        .collect())
}

/// Number of RLex generators below the pure squares: `C(j-1, 2) + i`.
pub fn rlex_count(i: usize, j: usize) -> usize {
    (j - 1) * (j.saturating_sub(2)) / 2 + i
}

/// `(x1^2, ..., xn^2) + RLex(x_i x_j)`.
pub fn family_ideal(n: usize, i: usize, j: usize) -> Result<MonomialIdeal> {
    let rlex = rlex_generators(n, i, j)?;
    MonomialIdeal::new(n, squares(n).chain(rlex))
}

fn squares(n: usize) -> impl Iterator<Item = Monomial> {
    (0..n).map(move |k| Monomial::var_pow(n, k, 2))
}

/// `(x1^d, ..., xn^d)`.
pub fn complete_intersection(n: usize, d: u32) -> Result<MonomialIdeal> {
    MonomialIdeal::new(n, (0..n).map(|k| Monomial::var_pow(n, k, d)))
}

/// Family indices `(i, j)` whose ideal has exactly `mu` minimal generators,
/// or `None` for `mu = n` (the complete intersection).
pub fn family_indices_for_mu(n: usize, mu: usize) -> Result<Option<(usize, usize)>> {
    let max = n * (n + 1) / 2;
    if n == 0 || mu < n || mu > max {
        return Err(Error::GeneratorCountOutOfRange { mu, min: n, max });
    }
    if mu == n {
        return Ok(None);
    }
    let target = mu - n;
    for j in 2..=n {
        for i in 1..j {
            if rlex_count(i, j) == target {
                return Ok(Some((i, j)));
            }
        }
    }
    unreachable!("rlex counts cover 1..=C(n,2)")
}

/// An artinian quadratic monomial ideal with exactly `mu` minimal generators.
pub fn mu_to_family(n: usize, mu: usize) -> Result<MonomialIdeal> {
    match family_indices_for_mu(n, mu)? {
        None => complete_intersection(n, 2),
        Some((i, j)) => family_ideal(n, i, j),
    }
}

/// A loopless simple graph on vertices `0..vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    vertices: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidParameter(format!("loop at vertex {}", a + 1)));
            }
            if a >= vertices || b >= vertices {
                return Err(Error::InvalidParameter("edge endpoint out of range".into()));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Self {
            vertices,
            edges: set,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// Zero-based edges `(a, b)` with `a < b`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// Edges with one-based vertex labels, matching `x1..xn`.
    pub fn edges_one_based(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|&(a, b)| (a + 1, b + 1)).collect()
    }

    pub fn contains_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Generators `x_a x_b` of the edge ideal.
    pub fn edge_monomials(&self) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = self
            .edges
            .iter()
            .map(|&(a, b)| Monomial::one(self.vertices).mul_var(a).mul_var(b))
            .collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }
}

/// The graph whose edge ideal is `RLex(x_i x_j)`.
pub fn graph_of_rlex(n: usize, i: usize, j: usize) -> Result<SimpleGraph> {
    let gens = rlex_generators(n, i, j)?;
    SimpleGraph::new(
        n,
        gens.iter().map(|m| {
            let mut s = m.support();
            let a = s.next().expect("quadric");
            let b = s.next().expect("squarefree quadric");
            (a, b)
        }),
    )
}

/// Named higher-degree ideals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialIdeal {
    /// `(x1, x2)^d + (x3^d, ..., xn^d)`.
    PowerFamily { n: usize, d: u32 },
    /// Cubes of eight variables plus six cubic monomials in `x1, x2, x3`.
    Cubic8,
    /// `(x1^8, x2^8, x3^8, x1^4 x2^2 x3^2, x1^3 x2^3 x3^2)`.
    Octic3,
}

impl SpecialIdeal {
    pub fn build(self) -> Result<MonomialIdeal> {
        match self {
            SpecialIdeal::PowerFamily { n, d } => power_family(n, d),
            SpecialIdeal::Cubic8 => {
                let n = 8;
                let extra = [
                    [2, 1, 0],
                    [1, 2, 0],
                    [2, 0, 1],
                    [1, 1, 1],
                    [0, 2, 1],
                    [1, 0, 2],
                ]
                .into_iter()
                .map(|e| Monomial::new(e.into_iter().chain([0; 5]).collect()));
                MonomialIdeal::new(n, (0..n).map(|k| Monomial::var_pow(n, k, 3)).chain(extra))
            }
            SpecialIdeal::Octic3 => MonomialIdeal::new(
                3,
                [
                    vec![8, 0, 0],
                    vec![0, 8, 0],
                    vec![0, 0, 8],
                    vec![4, 2, 2],
                    vec![3, 3, 2],
                ]
                .into_iter()
                .map(Monomial::new),
            ),
        }
    }

    /// Fixture name used on the command line (`@name`).
    pub fn name(self) -> String {
        match self {
            SpecialIdeal::PowerFamily { n, d } => format!("power:{n},{d}"),
            SpecialIdeal::Cubic8 => "sec5_cubic8".into(),
            SpecialIdeal::Octic3 => "sec5_J".into(),
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "sec5_cubic8" | "cubic8" => Ok(SpecialIdeal::Cubic8),
            "sec5_J" | "octic3" => Ok(SpecialIdeal::Octic3),
            other => {
                let params = other
                    .strip_prefix("power:")
                    .ok_or_else(|| Error::InvalidParameter(format!("unknown ideal kind `{other}`")))?;
                let (n, d) = params
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("expected power:<n>,<d>, got `{other}`")))?;
                let n = n.trim().parse().map_err(|_| Error::Parse(format!("bad n in `{other}`")))?;
                let d = d.trim().parse().map_err(|_| Error::Parse(format!("bad d in `{other}`")))?;
                Ok(SpecialIdeal::PowerFamily { n, d })
            }
        }
    }
}

/// `(x1, x2)^d + (x3^d, ..., xn^d)`, equivalently `(x1^d, ..., xn^d) + RLex(x1 x2^{d-1})`.
pub fn power_family(n: usize, d: u32) -> Result<MonomialIdeal> {
    if n < 3 || d < 3 {
        return Err(Error::InvalidParameter(format!(
            "power family needs n >= 3 and d >= 3, got n={n}, d={d}"
        )));
    }
    let binary = (0..=d).map(|a| {
        let mut e = vec![0; n];
        e[0] = a;
        e[1] = d - a;
        Monomial::new(e)
    });
    let rest = (2..n).map(|k| Monomial::var_pow(n, k, d));
    MonomialIdeal::new(n, binary.chain(rest))
}

/// Adjoins a new last variable `y` together with the generator `y^e`,
/// realizing `R/I (x) k[y]/(y^e)`.
pub fn adjoin_power_variable(ideal: &MonomialIdeal, e: u32) -> Result<MonomialIdeal> {
    if e < 1 {
        return Err(Error::InvalidParameter("exponent must be at least 1".into()));
    }
    ideal.require_artinian()?;
    let n = ideal.num_vars() + 1;
    MonomialIdeal::new(
        n,
        ideal
            .generators()
            .iter()
            .map(|g| g.extend(1))
            .chain(std::iter::once(Monomial::var_pow(n, n - 1, e))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(ms: &[Monomial]) -> Vec<String> {
        ms.iter().map(|m| m.to_string()).collect()
    }

    #[test]
    fn rlex_x2x4() {
        assert_eq!(
            texts(&rlex_generators(4, 2, 4).unwrap()),
            ["x1*x2", "x1*x3", "x2*x3", "x1*x4", "x2*x4"]
        );
        assert_eq!(texts(&rlex_generators(6, 1, 2).unwrap()), ["x1*x2"]);
        assert_eq!(texts(&rlex_generators(5, 1, 3).unwrap()), ["x1*x2", "x1*x3"]);
    }

    #[test]
    fn rlex_rejects_bad_indices() {
        assert!(rlex_generators(4, 2, 2).is_err());
        assert!(rlex_generators(4, 0, 2).is_err());
        assert!(rlex_generators(4, 3, 5).is_err());
        assert!(family_ideal(4, 3, 2).is_err());
    }

    #[test]
    fn family_generator_counts() {
        assert_eq!(family_ideal(4, 2, 4).unwrap().num_generators(), 9);
        let small = family_ideal(3, 1, 2).unwrap();
        assert_eq!(small.to_string(), "n=3; x1^2, x1*x2, x2^2, x3^2");
        assert!(small.is_artinian());
    }

    #[test]
    fn mu_endpoints() {
        assert_eq!(mu_to_family(4, 4).unwrap(), complete_intersection(4, 2).unwrap());
        assert_eq!(mu_to_family(4, 9).unwrap(), family_ideal(4, 2, 4).unwrap());
        assert_eq!(mu_to_family(4, 10).unwrap(), family_ideal(4, 3, 4).unwrap());
        assert!(matches!(
            mu_to_family(4, 11),
            Err(Error::GeneratorCountOutOfRange { .. })
        ));
        assert!(mu_to_family(4, 3).is_err());
    }

    #[test]
    fn graph_view() {
        let g = graph_of_rlex(4, 2, 4).unwrap();
        assert_eq!(
            g.edges_one_based(),
            vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]
        );
        assert_eq!(graph_of_rlex(7, 1, 2).unwrap().edges_one_based(), vec![(1, 2)]);
        let g = graph_of_rlex(5, 1, 3).unwrap();
        assert_eq!(g.edges_one_based(), vec![(1, 2), (1, 3)]);
        assert_eq!(g.degree(3), 0);
        assert_eq!(g.degree(4), 0);
        assert!(SimpleGraph::new(3, [(1, 1)]).is_err());
    }

    #[test]
    fn special_ideals() {
        let p = power_family(3, 3).unwrap();
        assert_eq!(p.to_string(), "n=3; x1^3, x1^2*x2, x1*x2^2, x2^3, x3^3");
        assert_eq!(SpecialIdeal::Cubic8.build().unwrap().num_generators(), 14);
        assert_eq!(SpecialIdeal::Octic3.build().unwrap().num_generators(), 5);
        assert!(power_family(2, 3).is_err());
        assert!(power_family(3, 2).is_err());
        assert!(SpecialIdeal::from_name("nope").is_err());
        assert_eq!(
            SpecialIdeal::from_name("power:4,3").unwrap(),
            SpecialIdeal::PowerFamily { n: 4, d: 3 }
        );
    }

    #[test]
    fn power_family_is_a_revlex_segment() {
        // every degree-d monomial >= x1 x2^{d-1}, plus pure powers
        for (n, d) in [(3, 3), (4, 4), (5, 3)] {
            let mut pivot = vec![0; n];
            pivot[0] = 1;
            pivot[1] = d - 1;
            let pivot = Monomial::new(pivot);
            let segment = monomials_of_degree(n, d, false)
                .into_iter()
                .filter(|m| *m >= pivot);
            let built = complete_intersection(n, d).unwrap().with_generators(segment).unwrap();
            assert_eq!(built, power_family(n, d).unwrap());
        }
    }

    #[test]
    fn adjoining_a_square_extends_the_family() {
        let base = family_ideal(4, 2, 4).unwrap();
        assert_eq!(
            adjoin_power_variable(&base, 2).unwrap(),
            family_ideal(5, 2, 4).unwrap()
        );
        let single = MonomialIdeal::new(1, [Monomial::var_pow(1, 0, 2)]).unwrap();
        assert_eq!(
            adjoin_power_variable(&single, 3).unwrap().to_string(),
            "n=2; x1^2, x2^3"
        );
        assert!(adjoin_power_variable(&base, 0).is_err());
    }

    #[test]
    fn minimalization_drops_multiples() {
        let i: MonomialIdeal = "n=2; x1^2*x2, x1, x2^3, x1".parse().unwrap();
        assert_eq!(i.to_string(), "n=2; x1, x2^3");
        assert!(i.contains(&Monomial::parse("x1*x2", 2).unwrap()));
        assert!(!i.contains(&Monomial::parse("x2^2", 2).unwrap()));
        assert_eq!(i.require_artinian(), Ok(()));
        let j: MonomialIdeal = "n=2; x1^2".parse().unwrap();
        assert_eq!(j.require_artinian(), Err(Error::NotArtinian(2)));
    }

    #[test]
    fn text_and_json_forms() {
        let i = family_ideal(4, 2, 4).unwrap();
        let text: MonomialIdeal =
            "n=4; x1^2, x2^2, x3^2, x4^2, x1*x2, x1*x3, x2*x3, x1*x4, x2*x4"
                .parse()
                .unwrap();
        assert_eq!(text, i);
        assert_eq!(i.to_text().parse::<MonomialIdeal>().unwrap(), i);
        let json = i.to_json();
        assert!(json.starts_with(r#"{"n":4,"gens":[[2,0,0,0],[1,1,0,0]"#));
        assert_eq!(MonomialIdeal::from_json(&json).unwrap(), i);
        assert!("x1^2".parse::<MonomialIdeal>().is_err());
        assert!("n=2; x3".parse::<MonomialIdeal>().is_err());
    }
}
