//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Counts are exact; the only tolerances are the wall-clock limits
//! below.

use std::time::{Duration, Instant};

use flagdesign::arith::{binomial, prime_power};
use flagdesign::classify::{classify, Case};
use flagdesign::constructions::{
    affine_orbit_design, ag3_lines, family_group, pg_collinear_triples, pg_triangles, AffineOrbitSpec,
    FamilyParams,
};
use flagdesign::design::{verify_2design, Design};
use flagdesign::geometry::{gaussian, AffGeometry, ProjGeometry};
use flagdesign::gf::FieldTable;
use flagdesign::perm::{standard_group, StandardFamily};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

const LIMIT_FANO: Duration = Duration::from_secs(1);
const LIMIT_PG24: Duration = Duration::from_secs(5);
const LIMIT_TRIANGLES_Q5: Duration = Duration::from_secs(60);
const LIMIT_AG33: Duration = Duration::from_secs(5);
const LIMIT_NETTO: Duration = Duration::from_secs(5);
const MAX_RING_CHECK: u32 = 512;
const MAX_AXIOM_V: usize = 121;
const RELABELINGS: usize = 20;
const RELABEL_SEED: u64 = 0x5eed_f1a9;

type Outcome = Result<String, String>;

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn run_cli(args: &[&str]) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    let mut diag = Vec::new();
    let argv = std::iter::once("flagdesign").chain(args.iter().copied());
    let code = flagdesign::cli::run(argv, &mut out, &mut diag);
    ensure(code == 0, format!("exit {code}: {}", String::from_utf8_lossy(&diag)))?;
    Ok(String::from_utf8(out)
        .map_err(err)?
        .lines()
        .map(|l| match l.split_once('=') {
            Some((k, v)) => (k.to_string(), v.to_string()),
            None => (String::new(), l.to_string()),
        })
        .collect())
}

fn field<'a>(report: &'a [(String, String)], key: &str) -> &'a str {
    report.iter().find(|(k, _)| k == key).map_or("", |(_, v)| v.as_str())
}

fn identities(d: &Design) -> Result<(), String> {
    let p = verify_2design(d);
    ensure(p.is_2design, format!("{} is not a 2-design", d.provenance()))?;
    ensure(
        p.lambda * (p.v - 1) == 2 * p.r && p.v * p.r == 3 * p.b,
        format!("{}: λ(v-1)=2r or vr=3b fails", d.provenance()),
    )
}

fn fano_chain() -> Outcome {
    let dir = tempfile::tempdir().map_err(err)?;
    let design = dir.path().join("fano.design");
    let group = dir.path().join("fano.group");
    let report = run_cli(&[
        "construct",
        "pg-triples",
        "--q",
        "2",
        "--h",
        "3",
        "--out-design",
        design.to_str().unwrap(),
        "--out-group",
        group.to_str().unwrap(),
    ])?;
    let got: Vec<&str> = ["v", "b", "r", "lambda", "is_2design", "flag_transitive", "rank"]
        .iter()
        .map(|k| field(&report, k))
        .collect();
    ensure(got == ["7", "7", "3", "1", "true", "true", "2"], format!("report {got:?}"))?;
    ensure(field(&report, "group_label") == "PGL(3,2)", "group is not PGL(3,2)")?;
    Ok("2-(7,3,1), b=7, r=3, flag-transitive under PGL(3,2), rank 2".into())
}

fn pg24_triples() -> Outcome {
    let (design, prediction) = pg_collinear_triples(4, 3).map_err(err)?;
    let scanned = verify_2design(&design);
    ensure(
        (prediction.v, prediction.b, prediction.r, prediction.lambda) == (21, 210, 30, 3),
        format!("formula gives {prediction:?}"),
    )?;
    ensure(prediction.matches(&scanned), format!("pair scan gives {scanned:?}"))?;
    let group = family_group(FamilyParams::PgTriples { q: 4, h: 3 }).map_err(err)?;
    ensure(group.label() == "PGammaL(3,4)", "group is not PGammaL(3,4)")?;
    ensure(group.is_flag_transitive(&design).map_err(err)?, "not flag-transitive")?;
    Ok("2-(21,3,3), b=210, r=30 by formula and pair scan, flag-transitive under PGammaL(3,4)".into())
}

fn triangles_q5() -> Outcome {
    let (design, prediction) = pg_triangles(5, 3).map_err(err)?;
    let scanned = verify_2design(&design);
    ensure(
        (prediction.v, prediction.lambda, prediction.r, prediction.b) == (31, 25, 375, 3875),
        format!("formula gives {prediction:?}"),
    )?;
    ensure(prediction.matches(&scanned), format!("enumeration gives {scanned:?}"))?;
    let group = standard_group(StandardFamily::PglOnPg { q: 5, h: 3 }).map_err(err)?;
    let flags = group.flag_orbits(&design).map_err(err)?;
    ensure(flags.total() == 11_625, format!("{} flags", flags.total()))?;
    ensure(flags.orbit_count() == 1, format!("flag orbits {:?}", flags.orbit_sizes()))?;
    Ok("v=31, lambda=25, r=375, b=3875; 11625 flags in one PGL(3,5) orbit".into())
}

fn triangle_oracle_q2() -> Outcome {
    let (design, prediction) = pg_triangles(2, 3).map_err(err)?;
    let geometry = ProjGeometry::new(2, 3).map_err(err)?;
    let mut direct = 0u64;
    for a in 0..7 {
        for b in a + 1..7 {
            for c in b + 1..7 {
                direct += !geometry.collinear(a, b, c).map_err(err)? as u64;
            }
        }
    }
    let oracle = binomial(7, 3) - 7;
    ensure(prediction.b == 28 && oracle == 28, format!("formula {} oracle {oracle}", prediction.b))?;
    ensure(direct == 28 && design.b() == 28, format!("direct count {direct}, enumerated {}", design.b()))?;
    Ok("b=28 = C(7,3) - 7 by direct count".into())
}

fn ag33() -> Outcome {
    let (design, prediction) = ag3_lines(3).map_err(err)?;
    let p = verify_2design(&design);
    ensure(prediction.matches(&p) && (p.v, p.b, p.lambda) == (27, 117, 1), format!("{p:?}"))?;
    let group = family_group(FamilyParams::Ag3 { h: 3 }).map_err(err)?;
    ensure(group.is_flag_transitive(&design).map_err(err)?, "not flag-transitive under AGL(3,3)")?;
    let c = classify(27, 1).map_err(err)?;
    ensure(
        c.cases.contains(&Case::Case4Ag3) && c.cases.contains(&Case::Case1GammaL1),
        format!("classify(27,1) = {:?}", c.cases),
    )?;
    Ok("2-(27,3,1), b=117, flag-transitive under AGL(3,3); classify(27,1) has CASE1 and CASE4".into())
}

fn netto() -> Outcome {
    for t_exp in 0..=8 {
        let spec = AffineOrbitSpec { p: 19, d: 1, m: 1, e: 2, s: 1, s_exp: 0, t_exp };
        let out = affine_orbit_design(spec).map_err(err)?;
        let p = &out.params;
        if p.is_2design
            && (p.v, p.b, p.lambda) == (19, 57, 1)
            && out.is_flag_transitive()
            && out.rank.rank == 3
            && out.rank.orbital_sizes == [171, 171]
            && out.lambda_divides_v_minus_6
        {
            return Ok(format!(
                "t_exp={t_exp}: 2-(19,3,1), 57 blocks, flag-transitive, rank 3, orbitals 171+171, 1 | 13"
            ));
        }
    }
    Err("no t_exp in 0..=8 gives the 2-(19,3,1) orbit design".into())
}

fn classifier_table() -> Outcome {
    let report = run_cli(&["classify", "--scan", "31"])?;
    let rows: Vec<(u64, u64, String)> = report
        .iter()
        .filter(|(k, _)| k.is_empty())
        .skip(1)
        .map(|(_, row)| {
            let parts: Vec<&str> = row.split(' ').collect();
            (parts[0].parse().unwrap(), parts[1].parse().unwrap(), parts[2].to_string())
        })
        .collect();
    let cases_of = |v, l| rows.iter().find(|r| (r.0, r.1) == (v, l)).map(|r| r.2.as_str());
    ensure(cases_of(7, 1) == Some("CASE1_GAMMAL1,CASE2_PG_TRIPLES"), format!("(7,1): {:?}", cases_of(7, 1)))?;
    ensure(cases_of(31, 25) == Some("CASE3_PG_TRIANGLES_Q5"), format!("(31,25): {:?}", cases_of(31, 25)))?;
    ensure(cases_of(27, 1) == Some("CASE1_GAMMAL1,CASE4_AG3"), format!("(27,1): {:?}", cases_of(27, 1)))?;
    ensure(cases_of(9, 3) == Some("none"), format!("(9,3): {:?}", cases_of(9, 3)))?;
    ensure(rows.iter().all(|r| matches!(r.0 % 6, 1 | 3)), "a row with v ≡ 0, 2, 4, 5 (mod 6)")?;
    ensure(rows.windows(2).all(|w| (w[0].0, w[0].1) < (w[1].0, w[1].1)), "rows out of order")?;
    Ok(format!("{} rows; (7,1), (31,25), (27,1), (9,3) as expected", rows.len()))
}

/// Every ring axiom over every triple, on tables built from the field.
fn ring_axioms_exhaustive(f: &FieldTable) -> Result<(), String> {
    let n = f.size() as usize;
    let elems: Vec<_> = f.elements().collect();
    let mut add = vec![0u16; n * n];
    let mut mul = vec![0u16; n * n];
    for (i, &x) in elems.iter().enumerate() {
        for (j, &y) in elems.iter().enumerate() {
            add[i * n + j] = f.add(x, y).index() as u16;
            mul[i * n + j] = f.mul(x, y).index() as u16;
        }
    }
    let name = format!("GF({}^{})", f.p(), f.d());
    for x in 0..n {
        ensure(add[x] as usize == x && mul[n + x] as usize == x, format!("{name}: identity fails at {x}"))?;
        ensure(mul[x] == 0, format!("{name}: 0·{x} ≠ 0"))?;
        ensure((0..n).any(|y| add[x * n + y] == 0), format!("{name}: {x} has no negative"))?;
        ensure(x == 0 || (1..n).any(|y| mul[x * n + y] == 1), format!("{name}: {x} has no inverse"))?;
        for y in 0..n {
            let (xy, yx) = (x * n + y, y * n + x);
            ensure(add[xy] == add[yx] && mul[xy] == mul[yx], format!("{name}: commutativity at {x},{y}"))?;
        }
    }
    for x in 0..n {
        let (ax, mx) = (&add[x * n..x * n + n], &mul[x * n..x * n + n]);
        for y in 0..n {
            let (axy, mxy) = (ax[y] as usize, mx[y] as usize);
            let (ay, my) = (&add[y * n..y * n + n], &mul[y * n..y * n + n]);
            let (a_xy, m_xy) = (&add[axy * n..axy * n + n], &mul[mxy * n..mxy * n + n]);
            for z in 0..n {
                let ok = a_xy[z] == ax[ay[z] as usize]
                    && m_xy[z] == mx[my[z] as usize]
                    && mx[ay[z] as usize] == add[mxy * n + mx[z] as usize];
                if !ok {
                    return Err(format!("{name}: axiom fails at ({x},{y},{z})"));
                }
            }
        }
    }
    Ok(())
}

fn property_suites() -> Outcome {
    let mut fields = 0;
    for q in 2..=MAX_RING_CHECK {
        if let Some((p, d)) = prime_power(q as u64) {
            ring_axioms_exhaustive(&FieldTable::new(p as u32, d).map_err(err)?)?;
            fields += 1;
        }
    }

    let prime_powers: Vec<u64> = (2..=32).filter(|&q| prime_power(q).is_some()).collect();
    for &q in &prime_powers {
        for n in 0..=6 {
            for k in 0..=n {
                ensure(
                    gaussian(n, k, q).map_err(err)? == gaussian(n, n - k, q).map_err(err)?,
                    format!("gaussian({n},{k},{q}) is not symmetric"),
                )?;
            }
        }
    }

    let mut geometries = 0;
    for &q in &prime_powers {
        for h in 2.. {
            let v = gaussian(h, 1, q).map_err(err)? as usize;
            if v > MAX_AXIOM_V {
                break;
            }
            let g = ProjGeometry::new(q as u32, h).map_err(err)?;
            let lines: Vec<Vec<u32>> = g.lines().to_vec();
            two_point_axiom(v, &lines).map_err(|e| format!("PG({}, {q}): {e}", h - 1))?;
            geometries += 1;
        }
    }
    for h in 2.. {
        if 3usize.pow(h) > MAX_AXIOM_V {
            break;
        }
        let g = AffGeometry::new(h).map_err(err)?;
        let lines: Vec<Vec<u32>> = g.lines().iter().map(|l| l.to_vec()).collect();
        two_point_axiom(g.num_points(), &lines).map_err(|e| format!("AG({h}, 3): {e}"))?;
        geometries += 1;
    }

    let designs = acceptance_designs()?;
    let mut rng = StdRng::seed_from_u64(RELABEL_SEED);
    for design in &designs {
        identities(design)?;
        let base = verify_2design(design);
        for _ in 0..RELABELINGS {
            let mut perm: Vec<u32> = (0..design.v() as u32).collect();
            perm.shuffle(&mut rng);
            let moved = verify_2design(&design.relabel(&perm).map_err(err)?);
            ensure(
                (moved.v, moved.b, moved.r, moved.lambda, moved.is_2design)
                    == (base.v, base.b, base.r, base.lambda, base.is_2design),
                format!("relabelling changes the parameters of {}", design.provenance()),
            )?;
        }
    }
    Ok(format!(
        "ring axioms on {fields} fields, gaussian symmetry, line axiom on {geometries} geometries, \
         identities and {RELABELINGS} relabelings on {} designs",
        designs.len()
    ))
}

fn two_point_axiom(v: usize, lines: &[Vec<u32>]) -> Result<(), String> {
    let mut count = vec![0u32; v * v];
    for line in lines {
        for (i, &a) in line.iter().enumerate() {
            for &b in &line[i + 1..] {
                count[a as usize * v + b as usize] += 1;
            }
        }
    }
    for a in 0..v {
        for b in a + 1..v {
            ensure(count[a * v + b] == 1, format!("pair ({a},{b}) on {} lines", count[a * v + b]))?;
        }
    }
    Ok(())
}

fn acceptance_designs() -> Result<Vec<Design>, String> {
    let netto = AffineOrbitSpec { p: 19, d: 1, m: 1, e: 2, s: 1, s_exp: 0, t_exp: 1 };
    Ok(vec![
        pg_collinear_triples(2, 3).map_err(err)?.0,
        pg_collinear_triples(4, 3).map_err(err)?.0,
        pg_triangles(5, 3).map_err(err)?.0,
        pg_triangles(2, 3).map_err(err)?.0,
        ag3_lines(3).map_err(err)?.0,
        affine_orbit_design(netto).map_err(err)?.design,
    ])
}

fn main() {
    let criteria: [(&str, Option<Duration>, fn() -> Outcome); 8] = [
        ("Fano chain", Some(LIMIT_FANO), fano_chain),
        ("PG(2,4) triples", Some(LIMIT_PG24), pg24_triples),
        ("triangles q=5 h=3", Some(LIMIT_TRIANGLES_Q5), triangles_q5),
        ("triangle oracle q=2 h=3", None, triangle_oracle_q2),
        ("AG(3,3)", Some(LIMIT_AG33), ag33),
        ("affine orbit p=19", Some(LIMIT_NETTO), netto),
        ("classifier table", None, classifier_table),
        ("property suites", None, property_suites),
    ];
    let mut failures = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(limit)) if elapsed > *limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        let budget = limit.map_or(String::new(), |l| format!(" / {l:?}"));
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} [{elapsed:.2?}{budget}]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {} {name}: {detail} [{elapsed:.2?}{budget}]", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
