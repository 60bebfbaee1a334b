//! Congruence classification of parameter pairs `(v, λ)`.
//!
//! The outcome lists which families *could* host a flag-transitive
//! 2-(v, 3, λ) design with these parameters. It is a set of candidate
//! cases, not an existence claim: case 1 in particular only says that a
//! one-dimensional affine group of the right shape is not ruled out.

use std::collections::BTreeSet;
use std::fmt;

use crate::arith::{is_prime, prime_power};
use crate::design::admissible;
use crate::error::{domain, Error, Result};
use crate::perm::check_affine_exponents;

/// Largest `v` accepted by [`scan`].
pub const MAX_SCAN_V: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Case {
    /// `v = p^d`, `G₀ ≤ ΓL₁(p^d)`.
    Case1GammaL1,
    /// Collinear triples of PG(h-1, q).
    Case2PgTriples,
    /// The A₇ action on PG(3, 2).
    Case2bA7,
    /// Triangles of PG(h-1, 5), h odd.
    Case3PgTrianglesQ5,
    /// Lines of AG(h, 3).
    Case4Ag3,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Case1GammaL1 => "CASE1_GAMMAL1",
            Case::Case2PgTriples => "CASE2_PG_TRIPLES",
            Case::Case2bA7 => "CASE2B_A7",
            Case::Case3PgTrianglesQ5 => "CASE3_PG_TRIANGLES_Q5",
            Case::Case4Ag3 => "CASE4_AG3",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Witness {
    /// `v = p^d`.
    PrimePower { p: u64, d: u32 },
    /// `v = (q^h - 1)/(q - 1)`.
    Projective { q: u64, h: u32 },
    /// `v = 3^h`.
    Affine { h: u32 },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::PrimePower { p, d } => write!(f, "p={p},d={d}"),
            Witness::Projective { q, h } => write!(f, "q={q},h={h}"),
            Witness::Affine { h } => write!(f, "q=3,h={h}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationOutcome {
    pub v: u64,
    pub lambda: u64,
    pub admissible: bool,
    /// Empty whenever `admissible` is false.
    pub cases: BTreeSet<Case>,
    /// Realising parameters, sorted by case.
    pub witnesses: Vec<(Case, Witness)>,
}

/// Bounds of the projective witness search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBox {
    pub max_q: u64,
    pub max_h: u32,
}

impl Default for SearchBox {
    fn default() -> Self {
        SearchBox { max_q: 1 << 10, max_h: 20 }
    }
}

/// Result of a condition check, naming the first clause that fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub reason: Option<String>,
}

impl Verdict {
    fn pass() -> Verdict {
        Verdict { holds: true, reason: None }
    }

    fn fail(reason: impl Into<String>) -> Verdict {
        Verdict {
            holds: false,
            reason: Some(reason.into()),
        }
    }
}

/// Conditions on `(q, h)` for the collinear-triples case: `q` even,
/// `q-1 | h-6`, and either `q ≡ 2 (mod 3)` or `q ≡ 1 (mod 3)` with
/// `h ≡ 0 (mod 3)`.
pub fn check_case2_conditions(q: u64, h: u32) -> Verdict {
    if prime_power(q).is_none() {
        return Verdict::fail("q is not a prime power");
    }
    if q % 2 == 1 {
        return Verdict::fail("q is odd");
    }
    if (h as i64 - 6).rem_euclid(q as i64 - 1) != 0 {
        return Verdict::fail("q−1 ∤ h−6");
    }
    match q % 3 {
        2 => Verdict::pass(),
        1 if h % 3 == 0 => Verdict::pass(),
        1 => Verdict::fail("q ≡ 1 mod 3 but h ≢ 0 mod 3"),
        _ => Verdict::fail("q ≡ 0 mod 3"),
    }
}

/// Conditions on `(p, d)` and the affine exponents `(m, e, s)` for case 1.
pub fn check_case1_conditions(p: u64, d: u32, m: u32, e: u32, s: u32) -> Result<Verdict> {
    if !is_prime(p) {
        return Err(Error::CompositeP(p));
    }
    if d == 0 {
        return Err(domain("d must be positive"));
    }
    if let Some(reason) = case1_field_condition(p, d) {
        return Ok(Verdict::fail(reason));
    }
    Ok(match check_affine_exponents(p as u32, d, m, e, s) {
        Ok(()) => Verdict::pass(),
        Err(reason) => Verdict::fail(reason),
    })
}

/// `(p = 3, d odd)` or `p^d ≡ 7 (mod 12)`; the failure reason otherwise.
fn case1_field_condition(p: u64, d: u32) -> Option<String> {
    if p == 3 {
        return (d % 2 == 0).then(|| "p = 3 with d even".to_string());
    }
    let residue = crate::arith::pow_mod(p, d as u64, 12);
    (residue != 7).then(|| format!("p^d ≡ {residue} mod 12 and p ≠ 3"))
}

/// `(q^h - 1)/(q - 1)`, or `None` once it exceeds `limit`.
fn projective_points(q: u64, h: u32, limit: u64) -> Option<u64> {
    let mut total: u128 = 0;
    let mut power: u128 = 1;
    for _ in 0..h {
        total += power;
        if total > limit as u128 {
            return None;
        }
        power *= q as u128;
    }
    Some(total as u64)
}

pub fn classify(v: u64, lambda: u64) -> Result<ClassificationOutcome> {
    classify_in(v, lambda, SearchBox::default())
}

pub fn classify_in(v: u64, lambda: u64, search: SearchBox) -> Result<ClassificationOutcome> {
    let admissible = admissible(v, lambda)?;
    let mut witnesses = Vec::new();
    if admissible {
        // case 1: v = p^d and λ = d/(ms|G_{0,B}|) divides d
        if let Some((p, d)) = prime_power(v) {
            if case1_admits(p, d, lambda) {
                witnesses.push((Case::Case1GammaL1, Witness::PrimePower { p, d }));
            }
        }

        for q in 2..=search.max_q {
            if prime_power(q).is_none() || lambda != q - 1 {
                continue;
            }
            for h in 2..=search.max_h {
                match projective_points(q, h, v) {
                    None => break,
                    Some(n) if n == v && check_case2_conditions(q, h).holds => {
                        witnesses.push((Case::Case2PgTriples, Witness::Projective { q, h }));
                        if (h, q) == (4, 2) {
                            witnesses.push((Case::Case2bA7, Witness::Projective { q, h }));
                        }
                    }
                    Some(_) => {}
                }
            }
        }

        // case 3: v = (5^h - 1)/4 with h odd, λ = 25(5^(h-2) - 1)/4
        let mut h = 3;
        while let Some(n) = projective_points(5, h, v) {
            if n == v {
                let lambda3 = 25 * ((5u128.pow(h - 2) - 1) / 4);
                if lambda as u128 == lambda3 {
                    witnesses.push((Case::Case3PgTrianglesQ5, Witness::Projective { q: 5, h }));
                }
            }
            h += 2;
        }

        if lambda == 1 {
            if let Some((3, h)) = prime_power(v) {
                if h >= 2 {
                    witnesses.push((Case::Case4Ag3, Witness::Affine { h }));
                }
            }
        }
    }
    witnesses.sort();
    Ok(ClassificationOutcome {
        v,
        lambda,
        admissible,
        cases: witnesses.iter().map(|(c, _)| *c).collect(),
        witnesses,
    })
}

/// Every admissible `(v, λ)` with `v ≤ vmax`, sorted by `(v, λ)`.
pub fn scan(vmax: u64) -> Result<Vec<ClassificationOutcome>> {
    if vmax > MAX_SCAN_V {
        return Err(domain(format!("scan limit {vmax} exceeds {MAX_SCAN_V}")));
    }
    let mut rows = Vec::new();
    for v in 7..=vmax {
        if !matches!(v % 6, 1 | 3) {
            continue;
        }
        let n = v - 6;
        for lambda in (1..=n).filter(|l| n % l == 0) {
            rows.push(classify(v, lambda)?);
        }
    }
    Ok(rows)
}

/// The field condition together with `λ | d`.
pub fn case1_admits(p: u64, d: u32, lambda: u64) -> bool {
    lambda >= 1 && case1_field_condition(p, d).is_none() && d as u64 % lambda == 0
}
