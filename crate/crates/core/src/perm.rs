//! Permutation groups given by generators, and the orbit engines behind the
//! transitivity, rank and flag-transitivity certificates.
//!
//! Nothing here computes group orders or stabiliser chains. Every
//! certificate is an orbit count obtained by breadth-first closure under the
//! generators, so the result depends only on the generated group.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use crate::arith::{bounded_pow, gcd, is_prime, prime_divisors, prime_power};
use crate::design::{Block, Design};
use crate::error::{domain, Error, Result};
use crate::geometry::{pack, unpack, ProjGeometry};
use crate::gf::{Elem, FieldTable, MAX_FIELD_SIZE};

/// A permutation group on `0..degree`, each generator in image form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Vec<u32>>,
    label: String,
}

/// One orbit, named by its smallest member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Orbit {
    pub representative: usize,
    pub size: usize,
}

/// Orbits ordered by representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    pub orbits: Vec<Orbit>,
}

impl OrbitReport {
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    /// Orbit sizes in increasing order.
    pub fn orbit_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.orbits.iter().map(|o| o.size).collect();
        sizes.sort_unstable();
        sizes
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.representative).collect()
    }

    pub fn total(&self) -> usize {
        self.orbits.iter().map(|o| o.size).sum()
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits.len() == 1
    }
}

/// Which side of the 2-transitive / rank 3 dichotomy a group falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankDichotomy {
    TwoTransitive,
    /// Rank 3 with both point-stabiliser suborbits of length `(v-1)/2`.
    RankThreeHalves,
    Neither,
}

/// Orbitals of a transitive group: orbits on ordered pairs, diagonal
/// included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairRank {
    pub degree: usize,
    pub rank: usize,
    /// Sizes of the non-diagonal orbitals, increasing.
    pub orbital_sizes: Vec<usize>,
}

impl PairRank {
    /// Suborbit lengths of a point stabiliser on the remaining points.
    pub fn suborbit_lengths(&self) -> Vec<usize> {
        self.orbital_sizes.iter().map(|s| s / self.degree).collect()
    }

    pub fn dichotomy(&self) -> RankDichotomy {
        let v = self.degree;
        match self.rank {
            2 => RankDichotomy::TwoTransitive,
            3 if v % 2 == 1 && self.orbital_sizes.iter().all(|&s| s == v * (v - 1) / 2) => {
                RankDichotomy::RankThreeHalves
            }
            _ => RankDichotomy::Neither,
        }
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Vec<u32>>, label: impl Into<String>) -> Result<PermGroup> {
        if generators.is_empty() {
            return Err(Error::InvalidPermutation("a group needs at least one generator".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.len() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {i} has {} images, expected {degree}",
                    g.len()
                )));
            }
            let mut hit = vec![false; degree];
            for &x in g {
                if x as usize >= degree || std::mem::replace(&mut hit[x as usize], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "generator {i} is not a bijection on 0..{degree}"
                    )));
                }
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            label: label.into(),
        })
    }

    pub fn identity(degree: usize, label: impl Into<String>) -> PermGroup {
        PermGroup {
            degree,
            generators: vec![(0..degree as u32).collect()],
            label: label.into(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Orbits on points; representatives are minimal indices.
    pub fn point_orbits(&self) -> OrbitReport {
        let mut seen = vec![false; self.degree];
        let mut orbits = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start as u32);
            let mut size = 0;
            while let Some(x) = queue.pop_front() {
                size += 1;
                for g in &self.generators {
                    let y = g[x as usize];
                    if !std::mem::replace(&mut seen[y as usize], true) {
                        queue.push_back(y);
                    }
                }
            }
            orbits.push(Orbit {
                representative: start,
                size,
            });
        }
        OrbitReport { orbits }
    }

    /// Number of orbits on ordered pairs `(x, y)`, diagonal included.
    pub fn pair_rank(&self) -> Result<PairRank> {
        let points = self.point_orbits();
        if !points.is_transitive() {
            return Err(Error::NotTransitive(points.orbit_count()));
        }
        let v = self.degree;
        let mut seen = BitSet::new(v * v);
        let mut queue = VecDeque::new();
        let mut rank = 0;
        let mut orbital_sizes = Vec::new();
        for start in 0..v * v {
            if seen.test_and_set(start) {
                continue;
            }
            rank += 1;
            queue.push_back(start);
            let mut size = 0usize;
            while let Some(pair) = queue.pop_front() {
                size += 1;
                let (x, y) = (pair / v, pair % v);
                for g in &self.generators {
                    let image = g[x] as usize * v + g[y] as usize;
                    if !seen.test_and_set(image) {
                        queue.push_back(image);
                    }
                }
            }
            if start / v != start % v {
                orbital_sizes.push(size);
            }
        }
        orbital_sizes.sort_unstable();
        Ok(PairRank {
            degree: v,
            rank,
            orbital_sizes,
        })
    }

    /// All distinct images of `block`, as a design on `0..degree`.
    pub fn orbit_of_block(&self, block: Block) -> Result<Design> {
        let mut start = block;
        start.sort_unstable();
        if start[0] == start[1] || start[1] == start[2] || start[2] as usize >= self.degree {
            return Err(Error::MalformedBlock(format!(
                "{block:?} is not a 3-subset of 0..{}",
                self.degree
            )));
        }
        let mut seen: HashSet<Block> = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(b) = queue.pop_front() {
            for g in &self.generators {
                let mut image = b.map(|x| g[x as usize]);
                image.sort_unstable();
                if seen.insert(image) {
                    queue.push_back(image);
                }
            }
        }
        let provenance = format!("orbit-of-{}-{}-{}-under-{}", start[0], start[1], start[2], self.label);
        Design::new(self.degree, seen.into_iter().collect(), provenance)
    }

    /// Orbits on the `3b` flags of `design`.
    ///
    /// Flag `3i + j` is the `j`-th point of block `i`. Fails with
    /// `NotAutomorphism` when some generator does not preserve the block set.
    pub fn flag_orbits(&self, design: &Design) -> Result<OrbitReport> {
        if design.v() != self.degree {
            return Err(domain(format!(
                "group degree {} differs from design size {}",
                self.degree,
                design.v()
            )));
        }
        let blocks = design.blocks();
        let index: HashMap<Block, u32> = blocks.iter().enumerate().map(|(i, b)| (*b, i as u32)).collect();

        // flag image tables, one per generator
        let mut actions = Vec::with_capacity(self.generators.len());
        for (gi, g) in self.generators.iter().enumerate() {
            let mut action = vec![0u32; 3 * blocks.len()];
            for (bi, b) in blocks.iter().enumerate() {
                let mut image = b.map(|x| g[x as usize]);
                image.sort_unstable();
                let target = *index.get(&image).ok_or(Error::NotAutomorphism {
                    generator: gi,
                    block: *b,
                })?;
                for (pos, &x) in b.iter().enumerate() {
                    let gx = g[x as usize];
                    let at = image.iter().position(|&y| y == gx).expect("image of a block point") as u32;
                    action[3 * bi + pos] = 3 * target + at;
                }
            }
            actions.push(action);
        }

        let n = 3 * blocks.len();
        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if std::mem::replace(&mut seen[start], true) {
                continue;
            }
            queue.push_back(start as u32);
            let mut size = 0;
            while let Some(f) = queue.pop_front() {
                size += 1;
                for action in &actions {
                    let image = action[f as usize];
                    if !std::mem::replace(&mut seen[image as usize], true) {
                        queue.push_back(image);
                    }
                }
            }
            orbits.push(Orbit {
                representative: start,
                size,
            });
        }
        Ok(OrbitReport { orbits })
    }

    pub fn is_flag_transitive(&self, design: &Design) -> Result<bool> {
        Ok(self.flag_orbits(design)?.is_transitive())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("group degree={} label={}\n", self.degree, self.label);
        for g in &self.generators {
            let line: Vec<String> = g.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<PermGroup> {
        let parse_err = |line: usize, message: String| Error::Parse { line, message };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (_, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "empty group file".into()))?;
        let mut fields = header.split_whitespace();
        if fields.next() != Some("group") {
            return Err(parse_err(1, "header must start with `group`".into()));
        }
        let degree: usize = fields
            .next()
            .and_then(|f| f.strip_prefix("degree="))
            .and_then(|f| f.parse().ok())
            .ok_or_else(|| parse_err(1, "header is missing `degree=<int>`".into()))?;
        let label = fields
            .next()
            .and_then(|f| f.strip_prefix("label="))
            .ok_or_else(|| parse_err(1, "header is missing `label=<token>`".into()))?
            .to_string();

        let mut generators = Vec::new();
        for (no, line) in lines {
            let images: Vec<u32> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| parse_err(no, format!("bad image {t:?}"))))
                .collect::<Result<_>>()?;
            if images.len() != degree {
                return Err(parse_err(no, format!("expected {degree} images, found {}", images.len())));
            }
            let mut hit = vec![false; degree];
            if images
                .iter()
                .any(|&x| x as usize >= degree || std::mem::replace(&mut hit[x as usize], true))
            {
                return Err(parse_err(no, "generator is not a permutation".into()));
            }
            generators.push(images);
        }
        if generators.is_empty() {
            return Err(parse_err(1, "group file lists no generators".into()));
        }
        PermGroup::new(degree, generators, label)
    }
}

struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(n: usize) -> BitSet {
        BitSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    /// Sets bit `i` and returns its previous value.
    fn test_and_set(&mut self, i: usize) -> bool {
        let (w, mask) = (i / 64, 1u64 << (i % 64));
        let old = self.words[w] & mask != 0;
        self.words[w] |= mask;
        old
    }
}

/// Named generator sets for the groups the constructions need.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardFamily {
    /// PGL_h(q) on the points of PG(h-1, q).
    PglOnPg { q: u32, h: u32 },
    /// PΓL_h(q) on the points of PG(h-1, q).
    PGammaLOnPg { q: u32, h: u32 },
    /// AGL_h(q) on the vectors of GF(q)^h.
    AglOnV { q: u32, h: u32 },
    /// The translation group of GF(q)^h.
    Translations { q: u32, h: u32 },
    /// `T : G₀` on GF(p^d) with `G₀ = ⟨x ↦ ω^(2m) x, x ↦ ω^e x^(p^s)⟩`.
    AffineOneDim { p: u32, d: u32, m: u32, e: u32, s: u32 },
}

/// Checks the exponent conditions on `(m, e, s)` for the one-dimensional
/// affine group; the error names the first one that fails.
pub fn check_affine_exponents(p: u32, d: u32, m: u32, e: u32, s: u32) -> std::result::Result<(), String> {
    if m == 0 || e == 0 || s == 0 {
        return Err("m, e and s must be positive".into());
    }
    if m % 2 == 0 {
        return Err(format!("m = {m} must be odd"));
    }
    if e % 2 == 1 {
        return Err(format!("e = {e} must be even"));
    }
    if gcd(m as u64, e as u64) != 1 {
        return Err(format!("gcd(m, e) = {} must be 1", gcd(m as u64, e as u64)));
    }
    if d % (m * s) != 0 {
        return Err(format!("m·s = {} must divide d = {d}", m * s));
    }
    let ps_minus_one = (p as u64).pow(s) - 1;
    if let Some(r) = prime_divisors(m as u64).into_iter().find(|r| ps_minus_one % r != 0) {
        return Err(format!("prime {r} of m does not divide p^s - 1 = {ps_minus_one}"));
    }
    Ok(())
}

pub fn standard_group(family: StandardFamily) -> Result<PermGroup> {
    match family {
        StandardFamily::PglOnPg { q, h } => projective_group(&ProjGeometry::new(q, h)?, false),
        StandardFamily::PGammaLOnPg { q, h } => projective_group(&ProjGeometry::new(q, h)?, true),
        StandardFamily::AglOnV { q, h } => affine_space_group(q, h, true),
        StandardFamily::Translations { q, h } => affine_space_group(q, h, false),
        StandardFamily::AffineOneDim { p, d, m, e, s } => affine_one_dim(p, d, m, e, s),
    }
}

/// Coordinate maps generating GL_h(q): transvections `x_i += a·x_j` for
/// `a` in an additive basis of GF(q), and `x_0 ↦ ω x_0`.
fn linear_generators(field: &FieldTable, h: usize) -> Vec<Box<dyn Fn(&[Elem]) -> Vec<Elem> + '_>> {
    let mut maps: Vec<Box<dyn Fn(&[Elem]) -> Vec<Elem> + '_>> = Vec::new();
    for i in 0..h {
        for j in 0..h {
            if i == j {
                continue;
            }
            for k in 0..field.d() {
                let a = field.omega_pow(k as u64);
                maps.push(Box::new(move |x: &[Elem]| {
                    let mut y = x.to_vec();
                    y[i] = field.add(x[i], field.mul(a, x[j]));
                    y
                }));
            }
        }
    }
    if field.size() > 2 {
        maps.push(Box::new(move |x: &[Elem]| {
            let mut y = x.to_vec();
            y[0] = field.mul(field.omega(), x[0]);
            y
        }));
    }
    maps
}

fn projective_group(geometry: &ProjGeometry, semilinear: bool) -> Result<PermGroup> {
    let field = geometry.field();
    let h = geometry.h() as usize;
    let mut maps = linear_generators(field, h);
    if semilinear && field.d() > 1 {
        maps.push(Box::new(move |x: &[Elem]| x.iter().map(|&c| field.frobenius(c, 1)).collect()));
    }
    let generators = maps
        .iter()
        .map(|f| {
            geometry
                .points()
                .iter()
                .map(|pt| geometry.index_of(&f(pt)).expect("nonsingular maps send points to points"))
                .collect()
        })
        .collect();
    let name = if semilinear { "PGammaL" } else { "PGL" };
    PermGroup::new(
        geometry.num_points(),
        generators,
        format!("{name}({},{})", geometry.h(), geometry.q()),
    )
}

fn affine_space_group(q: u32, h: u32, with_linear: bool) -> Result<PermGroup> {
    let (p, e) = prime_power(q as u64).ok_or(Error::NotPrimePower(q as u64))?;
    if h < 1 {
        return Err(domain("vector space dimension must be positive"));
    }
    let total = bounded_pow(q as u64, h, MAX_FIELD_SIZE as u128)? as usize;
    let field = FieldTable::new(p as u32, e)?;
    let hu = h as usize;

    let mut maps: Vec<Box<dyn Fn(&[Elem]) -> Vec<Elem> + '_>> = Vec::new();
    for i in 0..hu {
        for k in 0..field.d() {
            let a = field.omega_pow(k as u64);
            let f = &field;
            maps.push(Box::new(move |x: &[Elem]| {
                let mut y = x.to_vec();
                y[i] = f.add(x[i], a);
                y
            }));
        }
    }
    if with_linear {
        maps.extend(linear_generators(&field, hu));
    }
    let generators = maps
        .iter()
        .map(|f| {
            (0..total)
                .map(|code| pack(&f(&unpack(code, q, h)), q) as u32)
                .collect()
        })
        .collect();
    let name = if with_linear { "AGL" } else { "T" };
    PermGroup::new(total, generators, format!("{name}({h},{q})"))
}

fn affine_one_dim(p: u32, d: u32, m: u32, e: u32, s: u32) -> Result<PermGroup> {
    if !is_prime(p as u64) {
        return Err(Error::CompositeP(p as u64));
    }
    check_affine_exponents(p, d, m, e, s).map_err(Error::BadParams)?;
    let field = FieldTable::new(p, d)?;
    let elems: Vec<Elem> = field.elements().collect();
    let as_perm = |f: &dyn Fn(Elem) -> Elem| -> Vec<u32> { elems.iter().map(|&x| f(x).index()).collect() };

    let mut generators = Vec::new();
    for k in 0..d {
        let a = field.omega_pow(k as u64);
        generators.push(as_perm(&|x| field.add(x, a)));
    }
    let scale = field.omega_pow(2 * m as u64);
    generators.push(as_perm(&|x| field.mul(scale, x)));
    let twist = field.omega_pow(e as u64);
    generators.push(as_perm(&|x| field.mul(twist, field.frobenius(x, s))));
    PermGroup::new(
        field.size() as usize,
        generators,
        format!("AGamma1({p}^{d};m={m},e={e},s={s})"),
    )
}
