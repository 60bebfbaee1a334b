//! The design families: collinear triples and triangles of PG(h-1, q),
//! lines of AG(h, 3), and orbits of a base block under one-dimensional
//! affine groups.

use std::fmt;

use crate::arith::{binomial, is_prime};
use crate::design::{verify_2design, Design, DesignParams};
use crate::error::{domain, Error, Result};
use crate::geometry::{gaussian, AffGeometry, ProjGeometry};
use crate::gf::FieldTable;
use crate::perm::{standard_group, OrbitReport, PairRank, PermGroup, StandardFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    PgTriples,
    PgTriangles,
    Ag3,
    AffineOrbit,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::PgTriples => "PG_TRIPLES",
            Family::PgTriangles => "PG_TRIANGLES",
            Family::Ag3 => "AG3",
            Family::AffineOrbit => "AFFINE_ORBIT",
        })
    }
}

/// Parameters selecting one member of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyParams {
    PgTriples { q: u32, h: u32 },
    PgTriangles { q: u32, h: u32 },
    Ag3 { h: u32 },
    /// Point count `p^d` and the realised λ of an orbit design.
    AffineOrbit { p: u32, d: u32, lambda: u64 },
}

impl FamilyParams {
    pub fn family(&self) -> Family {
        match self {
            FamilyParams::PgTriples { .. } => Family::PgTriples,
            FamilyParams::PgTriangles { .. } => Family::PgTriangles,
            FamilyParams::Ag3 { .. } => Family::Ag3,
            FamilyParams::AffineOrbit { .. } => Family::AffineOrbit,
        }
    }
}

/// Closed-form parameters of a family member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyPrediction {
    pub family: Family,
    pub v: u64,
    pub b: u64,
    pub r: u64,
    pub lambda: u64,
}

impl FamilyPrediction {
    pub fn matches(&self, params: &DesignParams) -> bool {
        params.is_2design
            && params.v as u64 == self.v
            && params.b as u64 == self.b
            && params.r as u64 == self.r
            && params.lambda as u64 == self.lambda
    }
}

fn pow(q: u64, e: u32) -> Result<u128> {
    (q as u128)
        .checked_pow(e)
        .ok_or_else(|| domain("parameters overflow"))
}

fn exact_div(num: u128, den: u128) -> Result<u128> {
    if den == 0 || num % den != 0 {
        return Err(domain(format!("{num} is not divisible by {den}")));
    }
    Ok(num / den)
}

/// Pure formula evaluation, no enumeration.
pub fn family_prediction(params: FamilyParams) -> Result<FamilyPrediction> {
    let family = params.family();
    let (v, b, r, lambda) = match params {
        FamilyParams::PgTriples { q, h } => {
            check_pg(q, h, 2)?;
            let q = q as u64;
            let v = exact_div(pow(q, h)? - 1, q as u128 - 1)?;
            let lines = gaussian(h, 2, q)?;
            let b = lines * binomial(q + 1, 3) as u128;
            let lambda = q as u128 - 1;
            (v, b, lambda * (v - 1) / 2, lambda)
        }
        FamilyParams::PgTriangles { q, h } => {
            check_pg(q, h, 3)?;
            let q = q as u64;
            let q1 = q as u128 - 1;
            let (qh, qh1, qh2) = (pow(q, h)? - 1, pow(q, h - 1)? - 1, pow(q, h - 2)? - 1);
            let q2 = pow(q, 2)?;
            let q3 = pow(q, 3)?;
            let v = exact_div(qh, q1)?;
            let lambda = exact_div(q2 * qh2, q1)?;
            let r = exact_div(q3 * qh1 * qh2, 2 * q1 * q1)?;
            let b = exact_div(q3 * qh * qh1 * qh2, 6 * q1 * q1 * q1)?;
            (v, b, r, lambda)
        }
        FamilyParams::Ag3 { h } => {
            if h < 2 {
                return Err(domain("AG(h, 3) needs h >= 2"));
            }
            let v = pow(3, h)?;
            (v, pow(3, h - 1)? * (v - 1) / 2, (v - 1) / 2, 1)
        }
        FamilyParams::AffineOrbit { p, d, lambda } => {
            if !is_prime(p as u64) {
                return Err(Error::CompositeP(p as u64));
            }
            if lambda < 1 || d < 1 {
                return Err(domain("affine orbit parameters must be positive"));
            }
            let v = pow(p as u64, d)?;
            let r = exact_div(lambda as u128 * (v - 1), 2)?;
            let b = exact_div(v * r, 3)?;
            (v, b, r, lambda as u128)
        }
    };
    let narrow = |x: u128| u64::try_from(x).map_err(|_| domain("parameters overflow u64"));
    Ok(FamilyPrediction {
        family,
        v: narrow(v)?,
        b: narrow(b)?,
        r: narrow(r)?,
        lambda: narrow(lambda)?,
    })
}

/// Triangle count through the Gaussian binomial: every 3-space spans
/// `q³(q+1)(q²+q+1)/6` triangles.
pub fn triangle_count_via_planes(q: u32, h: u32) -> Result<u128> {
    check_pg(q, h, 3)?;
    let q = q as u128;
    let per_plane = q * q * q * (q + 1) * (q * q + q + 1) / 6;
    Ok(gaussian(h, 3, q as u64)? * per_plane)
}

fn check_pg(q: u32, h: u32, min_h: u32) -> Result<()> {
    if crate::arith::prime_power(q as u64).is_none() {
        return Err(Error::NotPrimePower(q as u64));
    }
    if h < min_h {
        return Err(domain(format!("this family needs h >= {min_h}, got {h}")));
    }
    Ok(())
}

/// All collinear triples of PG(h-1, q).
pub fn pg_collinear_triples(q: u32, h: u32) -> Result<(Design, FamilyPrediction)> {
    check_pg(q, h, 2)?;
    let geometry = ProjGeometry::new(q, h)?;
    let mut blocks = Vec::new();
    for line in geometry.lines() {
        for i in 0..line.len() {
            for j in i + 1..line.len() {
                for k in j + 1..line.len() {
                    blocks.push([line[i], line[j], line[k]]);
                }
            }
        }
    }
    let design = Design::new(geometry.num_points(), blocks, format!("pg-triples:q={q},h={h}"))?;
    let prediction = family_prediction(FamilyParams::PgTriples { q, h })?;
    Ok((design, prediction))
}

/// All non-collinear triples (triangles) of PG(h-1, q), by filtering every
/// 3-subset of points.
pub fn pg_triangles(q: u32, h: u32) -> Result<(Design, FamilyPrediction)> {
    check_pg(q, h, 3)?;
    let geometry = ProjGeometry::new(q, h)?;
    let v = geometry.num_points();
    let line_of = geometry.pair_line_table();
    let mut blocks = Vec::new();
    for a in 0..v {
        for b in a + 1..v {
            let ab = line_of[a * v + b];
            for c in b + 1..v {
                if line_of[a * v + c] != ab {
                    blocks.push([a as u32, b as u32, c as u32]);
                }
            }
        }
    }
    let design = Design::new(v, blocks, format!("pg-triangles:q={q},h={h}"))?;
    let prediction = family_prediction(FamilyParams::PgTriangles { q, h })?;
    Ok((design, prediction))
}

/// Lines of AG(h, 3).
pub fn ag3_lines(h: u32) -> Result<(Design, FamilyPrediction)> {
    let geometry = AffGeometry::new(h)?;
    let design = Design::new(geometry.num_points(), geometry.lines().to_vec(), format!("ag3:h={h}"))?;
    let prediction = family_prediction(FamilyParams::Ag3 { h })?;
    Ok((design, prediction))
}

/// The group under which a constructed family is expected to be
/// flag-transitive.
pub fn family_group(params: FamilyParams) -> Result<PermGroup> {
    match params {
        FamilyParams::PgTriples { q, h } | FamilyParams::PgTriangles { q, h } => {
            if is_prime(q as u64) {
                standard_group(StandardFamily::PglOnPg { q, h })
            } else {
                standard_group(StandardFamily::PGammaLOnPg { q, h })
            }
        }
        FamilyParams::Ag3 { h } => standard_group(StandardFamily::AglOnV { q: 3, h }),
        FamilyParams::AffineOrbit { .. } => Err(domain(
            "affine orbit groups depend on (m, e, s); build them from an AffineOrbitSpec",
        )),
    }
}

/// A one-dimensional affine group together with a base block
/// `{0, ω^(2m·s_exp), ω^(2m·t_exp + 1)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineOrbitSpec {
    pub p: u32,
    pub d: u32,
    pub m: u32,
    pub e: u32,
    pub s: u32,
    pub s_exp: u64,
    pub t_exp: u64,
}

/// Everything certified about one affine orbit design.
#[derive(Debug, Clone)]
pub struct AffineOrbitOutcome {
    pub spec: AffineOrbitSpec,
    pub base_block: [u32; 3],
    pub design: Design,
    pub group: PermGroup,
    pub params: DesignParams,
    pub flag_orbits: OrbitReport,
    pub rank: PairRank,
    /// Whether the realised λ divides `p^d - 6`; false when the orbit is not
    /// a 2-design.
    pub lambda_divides_v_minus_6: bool,
}

impl AffineOrbitOutcome {
    pub fn is_flag_transitive(&self) -> bool {
        self.flag_orbits.is_transitive()
    }
}

/// Builds the orbit of the base block under `T : G₀` and reports what holds.
/// Nothing is assumed: the orbit need not be a 2-design.
pub fn affine_orbit_design(spec: AffineOrbitSpec) -> Result<AffineOrbitOutcome> {
    let AffineOrbitSpec { p, d, m, e, s, s_exp, t_exp } = spec;
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let group = standard_group(StandardFamily::AffineOneDim { p, d, m, e, s })?;
    let field = FieldTable::new(p, d)?;
    let n = field.order() as u64;
    if s_exp >= n || t_exp >= n {
        return Err(domain(format!("base block exponents must lie in 0..{n}")));
    }
    let square = field.omega_pow(2 * m as u64 * s_exp);
    let non_square = field.omega_pow(2 * m as u64 * t_exp + 1);
    let base_block = [0, square.index(), non_square.index()];

    let design = group.orbit_of_block(base_block)?;
    let params = verify_2design(&design);
    let flag_orbits = group.flag_orbits(&design)?;
    let rank = group.pair_rank()?;
    let v = field.size() as i64;
    let lambda_divides_v_minus_6 = params.is_2design && (v - 6).rem_euclid(params.lambda as i64) == 0;
    Ok(AffineOrbitOutcome {
        spec,
        base_block,
        design,
        group,
        params,
        flag_orbits,
        rank,
        lambda_divides_v_minus_6,
    })
}
