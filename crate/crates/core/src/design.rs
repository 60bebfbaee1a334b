//! Simple 2-(v, 3, λ) designs: the data model, the pair-coverage verifier
//! and the canonical text format.

use std::fmt::Write as _;

use crate::error::{domain, Error, Result};

pub type Block = [u32; 3];

/// A simple design with blocks of size 3.
///
/// Blocks are sorted internally and the block list is kept in lexicographic
/// order without repeats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Design {
    v: usize,
    blocks: Vec<Block>,
    provenance: String,
}

impl Design {
    pub fn new(v: usize, blocks: Vec<Block>, provenance: impl Into<String>) -> Result<Design> {
        if v <= 3 {
            return Err(domain(format!("a non-trivial design needs v > 3, got {v}")));
        }
        if blocks.is_empty() {
            return Err(Error::MalformedBlock("design has no blocks".into()));
        }
        let mut canonical = Vec::with_capacity(blocks.len());
        for mut block in blocks {
            block.sort_unstable();
            if block[0] == block[1] || block[1] == block[2] {
                return Err(Error::MalformedBlock(format!("{block:?} has repeated points")));
            }
            if block[2] as usize >= v {
                return Err(Error::MalformedBlock(format!("{block:?} has a point outside 0..{v}")));
            }
            canonical.push(block);
        }
        canonical.sort_unstable();
        if let Some(w) = canonical.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::MalformedBlock(format!("{:?} appears more than once", w[0])));
        }
        Ok(Design {
            v,
            blocks: canonical,
            provenance: provenance.into(),
        })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn contains_block(&self, block: &Block) -> bool {
        let mut sorted = *block;
        sorted.sort_unstable();
        self.blocks.binary_search(&sorted).is_ok()
    }

    /// The same design with point `x` renamed to `perm[x]`.
    pub fn relabel(&self, perm: &[u32]) -> Result<Design> {
        if perm.len() != self.v {
            return Err(domain("relabelling must be a permutation of the point set"));
        }
        let blocks = self.blocks.iter().map(|b| b.map(|x| perm[x as usize])).collect();
        Design::new(self.v, blocks, self.provenance.clone())
    }

    /// Serialises to the canonical text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("design v={} k=3\n", self.v);
        if !self.provenance.is_empty() {
            let _ = writeln!(out, "provenance={}", self.provenance);
        }
        for [a, b, c] in &self.blocks {
            let _ = writeln!(out, "{a} {b} {c}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Design> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let parse_err = |line: usize, message: String| Error::Parse { line, message };

        let (_, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "empty design file".into()))?;
        let v = parse_design_header(header).map_err(|m| parse_err(1, m))?;

        let mut provenance = String::new();
        let mut blocks = Vec::new();
        for (no, line) in lines {
            if no == 2 {
                if let Some(p) = line.strip_prefix("provenance=") {
                    provenance = p.to_string();
                    continue;
                }
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(parse_err(no, format!("expected 3 point indices, found {}", fields.len())));
            }
            let mut block = [0u32; 3];
            for (slot, field) in block.iter_mut().zip(&fields) {
                *slot = field
                    .parse()
                    .map_err(|_| parse_err(no, format!("bad point index {field:?}")))?;
            }
            if !(block[0] < block[1] && block[1] < block[2]) {
                return Err(parse_err(no, "block indices must be strictly increasing".into()));
            }
            if block[2] as usize >= v {
                return Err(parse_err(no, format!("point {} outside 0..{v}", block[2])));
            }
            if blocks.last().is_some_and(|prev: &Block| *prev >= block) {
                return Err(parse_err(no, "blocks must be in strictly increasing order".into()));
            }
            blocks.push(block);
        }
        Design::new(v, blocks, provenance).map_err(|e| parse_err(1, e.to_string()))
    }
}

fn parse_design_header(header: &str) -> std::result::Result<usize, String> {
    let mut fields = header.split_whitespace();
    if fields.next() != Some("design") {
        return Err("header must start with `design`".into());
    }
    let v = fields
        .next()
        .and_then(|f| f.strip_prefix("v="))
        .and_then(|f| f.parse().ok())
        .ok_or("header is missing `v=<int>`")?;
    if fields.next() != Some("k=3") {
        return Err("header must declare `k=3`".into());
    }
    if fields.next().is_some() {
        return Err("trailing tokens in header".into());
    }
    Ok(v)
}

/// A pair whose coverage differs from that of the first pair `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairWitness {
    pub pair: (u32, u32),
    pub count: u32,
    pub expected: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignParams {
    pub v: usize,
    pub b: usize,
    pub r: usize,
    pub lambda: usize,
    pub is_2design: bool,
    pub witness: Option<PairWitness>,
}

/// Counts pair coverage over all `v(v-1)/2` pairs.
///
/// On failure `r` and `lambda` are reported as 0 and `witness` names the
/// first pair (lexicographically) whose count deviates.
pub fn verify_2design(design: &Design) -> DesignParams {
    let v = design.v();
    // row a of the upper triangle starts at a*v - a(a+1)/2
    let offset = |a: usize| a * v - a * (a + 1) / 2;
    let slot = |a: u32, b: u32| offset(a as usize) + (b - a - 1) as usize;

    let mut pairs = vec![0u32; v * (v - 1) / 2];
    for &[a, b, c] in design.blocks() {
        pairs[slot(a, b)] += 1;
        pairs[slot(a, c)] += 1;
        pairs[slot(b, c)] += 1;
    }

    let expected = pairs[0];
    let mut witness = None;
    'scan: for a in 0..v as u32 {
        for b in a + 1..v as u32 {
            let count = pairs[slot(a, b)];
            if count != expected {
                witness = Some(PairWitness {
                    pair: (a, b),
                    count,
                    expected,
                });
                break 'scan;
            }
        }
    }

    let b = design.b();
    match witness {
        None if expected > 0 => DesignParams {
            v,
            b,
            // counted per point, not derived from λ
            r: point_degrees(design)[0],
            lambda: expected as usize,
            is_2design: true,
            witness: None,
        },
        _ => DesignParams {
            v,
            b,
            r: 0,
            lambda: 0,
            is_2design: false,
            witness,
        },
    }
}

/// Per-point replication counts.
pub fn point_degrees(design: &Design) -> Vec<usize> {
    let mut deg = vec![0usize; design.v()];
    for block in design.blocks() {
        for &x in block {
            deg[x as usize] += 1;
        }
    }
    deg
}

/// `v ≡ 1, 3 (mod 6)` and `λ | v - 6`.
pub fn admissible(v: u64, lambda: u64) -> Result<bool> {
    if v <= 3 {
        return Err(domain(format!("v must exceed 3, got {v}")));
    }
    if lambda < 1 {
        return Err(domain("lambda must be positive"));
    }
    let divides = (v as i128 - 6).rem_euclid(lambda as i128) == 0;
    Ok(matches!(v % 6, 1 | 3) && divides)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FANO: [Block; 7] = [
        [0, 1, 2],
        [0, 3, 4],
        [0, 5, 6],
        [1, 3, 5],
        [1, 4, 6],
        [2, 3, 6],
        [2, 4, 5],
    ];

    fn fano() -> Design {
        Design::new(7, FANO.to_vec(), "fano").unwrap()
    }

    #[test]
    fn fano_parameters() {
        let p = verify_2design(&fano());
        assert_eq!((p.v, p.b, p.r, p.lambda, p.is_2design), (7, 7, 3, 1, true));
        assert_eq!(p.witness, None);
    }

    #[test]
    fn fano_minus_block_fails_with_witness() {
        let d = Design::new(7, FANO[1..].to_vec(), "broken").unwrap();
        let p = verify_2design(&d);
        assert!(!p.is_2design);
        assert_eq!((p.r, p.lambda), (0, 0));
        let w = p.witness.unwrap();
        assert_eq!(w.expected, 0);
        assert_eq!(w.pair, (0, 3));
        assert_eq!(w.count, 1);
    }

    #[test]
    fn construction_rejects_bad_blocks() {
        assert!(matches!(Design::new(7, vec![[0, 0, 1]], ""), Err(Error::MalformedBlock(_))));
        assert!(matches!(Design::new(7, vec![[0, 1, 7]], ""), Err(Error::MalformedBlock(_))));
        assert!(matches!(
            Design::new(7, vec![[0, 1, 2], [2, 1, 0]], ""),
            Err(Error::MalformedBlock(_))
        ));
        assert!(matches!(Design::new(3, vec![[0, 1, 2]], ""), Err(Error::DomainError(_))));
        assert!(matches!(Design::new(7, vec![], ""), Err(Error::MalformedBlock(_))));
    }

    #[test]
    fn blocks_are_canonicalised() {
        let d = Design::new(7, vec![[6, 5, 0], [2, 1, 0]], "").unwrap();
        assert_eq!(d.blocks(), &[[0, 1, 2], [0, 5, 6]]);
        assert!(d.contains_block(&[2, 0, 1]));
    }

    #[test]
    fn admissibility() {
        assert!(admissible(7, 1).unwrap());
        assert!(admissible(9, 3).unwrap());
        assert!(!admissible(11, 1).unwrap());
        assert!(!admissible(13, 5).unwrap());
        assert!(admissible(13, 7).unwrap());
        assert!(matches!(admissible(3, 1), Err(Error::DomainError(_))));
        assert!(matches!(admissible(7, 0), Err(Error::DomainError(_))));
    }

    #[test]
    fn text_round_trip() {
        let d = fano();
        let text = d.to_text();
        assert!(text.starts_with("design v=7 k=3\nprovenance=fano\n0 1 2\n"));
        assert!(text.ends_with("2 4 5\n"));
        assert_eq!(Design::from_text(&text).unwrap(), d);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "design v=7 k=3\n0 1 2\n0 3\n";
        assert!(matches!(Design::from_text(bad), Err(Error::Parse { line: 3, .. })));
        let unsorted = "design v=7 k=3\n0 3 4\n0 1 2\n";
        assert!(matches!(Design::from_text(unsorted), Err(Error::Parse { line: 3, .. })));
        let header = "design v=7 k=4\n0 1 2\n";
        assert!(matches!(Design::from_text(header), Err(Error::Parse { line: 1, .. })));
        let range = "design v=7 k=3\nprovenance=x\n0 1 9\n";
        assert!(matches!(Design::from_text(range), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn flag_count_matches_replication() {
        let d = fano();
        let deg = point_degrees(&d);
        assert!(deg.iter().all(|&r| r == 3));
        assert_eq!(deg.iter().sum::<usize>(), 3 * d.b());
    }
}
