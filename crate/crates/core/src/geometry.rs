//! Projective spaces PG(h-1, q), affine spaces AG(h, 3) and Gaussian
//! binomial coefficients.

use crate::arith::{bounded_pow, prime_power};
use crate::error::{domain, Error, Result};
use crate::gf::{Elem, FieldTable, MAX_FIELD_SIZE};

const NO_POINT: u32 = u32::MAX;

/// Number of `k`-dimensional subspaces of an `n`-dimensional space over GF(q).
pub fn gaussian(n: u32, k: u32, q: u64) -> Result<u128> {
    if k > n {
        return Err(domain(format!("gaussian({n}, {k}) needs k <= n")));
    }
    if q < 2 {
        return Err(domain("gaussian needs q >= 2"));
    }
    let overflow = || domain("gaussian coefficient overflows u128");
    let q_pow_minus_one = |e: u32| -> Result<u128> {
        (q as u128)
            .checked_pow(e)
            .map(|x| x - 1)
            .ok_or_else(overflow)
    };
    let mut acc: u128 = 1;
    for i in 0..k {
        // the running product is itself a Gaussian binomial, so each step divides exactly
        acc = acc
            .checked_mul(q_pow_minus_one(n - i)?)
            .ok_or_else(overflow)?
            / q_pow_minus_one(i + 1)?;
    }
    Ok(acc)
}

/// Projective space PG(h-1, q) with its lines.
#[derive(Debug, Clone)]
pub struct ProjGeometry {
    q: u32,
    h: u32,
    field: FieldTable,
    /// Normalised coordinate vectors in lexicographic order.
    points: Vec<Vec<Elem>>,
    /// Packed coordinate vector → point index, `NO_POINT` if not normalised.
    lookup: Vec<u32>,
    lines: Vec<Vec<u32>>,
}

impl ProjGeometry {
    pub fn new(q: u32, h: u32) -> Result<ProjGeometry> {
        let (p, e) = prime_power(q as u64).ok_or(Error::NotPrimePower(q as u64))?;
        if h < 2 {
            return Err(domain("PG(h-1, q) needs h >= 2"));
        }
        let total = bounded_pow(q as u64, h, MAX_FIELD_SIZE as u128)? as usize;
        let field = FieldTable::new(p as u32, e)?;

        let mut points = Vec::new();
        let mut lookup = vec![NO_POINT; total];
        for code in 0..total {
            let coords = unpack(code, q, h);
            if coords.iter().find(|c| !c.is_zero()) == Some(&Elem::ONE) {
                lookup[code] = points.len() as u32;
                points.push(coords);
            }
        }

        let mut geometry = ProjGeometry {
            q,
            h,
            field,
            points,
            lookup,
            lines: Vec::new(),
        };
        geometry.lines = geometry.enumerate_lines();
        Ok(geometry)
    }

    fn enumerate_lines(&self) -> Vec<Vec<u32>> {
        let v = self.points.len();
        let mut lines = Vec::new();
        let mut seen = vec![false; v];
        for x in 0..v {
            seen.iter_mut().for_each(|s| *s = false);
            for y in x + 1..v {
                if seen[y] {
                    continue;
                }
                let line = self.span(x, y);
                for &z in &line {
                    seen[z as usize] = true;
                }
                if line[0] as usize == x {
                    lines.push(line);
                }
            }
        }
        lines.sort();
        lines
    }

    /// Sorted points of the line through distinct points `x` and `y`.
    fn span(&self, x: usize, y: usize) -> Vec<u32> {
        let (px, py) = (&self.points[x], &self.points[y]);
        let mut line: Vec<u32> = std::iter::once(x as u32)
            .chain(self.field.elements().map(|a| {
                let combo: Vec<Elem> = px
                    .iter()
                    .zip(py)
                    .map(|(&u, &w)| self.field.add(self.field.mul(a, u), w))
                    .collect();
                self.index_of(&combo).expect("a·x + y is nonzero")
            }))
            .collect();
        line.sort_unstable();
        line
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn field(&self) -> &FieldTable {
        &self.field
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Vec<Elem>] {
        &self.points
    }

    pub fn lines(&self) -> &[Vec<u32>] {
        &self.lines
    }

    /// Index of the point spanned by a nonzero vector.
    pub fn index_of(&self, coords: &[Elem]) -> Option<u32> {
        let lead = *coords.iter().find(|c| !c.is_zero())?;
        let inv = self.field.inv(lead).ok()?;
        let normalised: Vec<Elem> = coords.iter().map(|&c| self.field.mul(c, inv)).collect();
        match self.lookup[pack(&normalised, self.q)] {
            NO_POINT => None,
            i => Some(i),
        }
    }

    fn check_index(&self, x: usize) -> Result<()> {
        if x < self.points.len() {
            Ok(())
        } else {
            Err(Error::IndexError {
                index: x,
                bound: self.points.len(),
            })
        }
    }

    /// Whether three distinct points lie on a common line.
    pub fn collinear(&self, x: usize, y: usize, z: usize) -> Result<bool> {
        for i in [x, y, z] {
            self.check_index(i)?;
        }
        if x == y || y == z || x == z {
            return Err(domain("collinearity needs three distinct points"));
        }
        Ok(self.span(x, y).binary_search(&(z as u32)).is_ok())
    }

    /// Dense `v × v` table of the line index through each pair of distinct
    /// points (`u32::MAX` on the diagonal).
    pub fn pair_line_table(&self) -> Vec<u32> {
        let v = self.points.len();
        let mut table = vec![u32::MAX; v * v];
        for (li, line) in self.lines.iter().enumerate() {
            for &a in line {
                for &b in line {
                    if a != b {
                        table[a as usize * v + b as usize] = li as u32;
                    }
                }
            }
        }
        table
    }
}

/// Affine space AG(h, 3) with its 3-point lines.
#[derive(Debug, Clone)]
pub struct AffGeometry {
    h: u32,
    /// Coordinates in GF(3) = {0, 1, 2}, lexicographic order.
    points: Vec<Vec<u8>>,
    lines: Vec<[u32; 3]>,
}

impl AffGeometry {
    pub fn new(h: u32) -> Result<AffGeometry> {
        if h < 2 {
            return Err(domain("AG(h, 3) needs h >= 2 for a non-trivial line design"));
        }
        let total = bounded_pow(3, h, MAX_FIELD_SIZE as u128)? as usize;
        let points: Vec<Vec<u8>> = (0..total)
            .map(|code| {
                let mut c = code;
                let mut coords = vec![0u8; h as usize];
                for slot in coords.iter_mut().rev() {
                    *slot = (c % 3) as u8;
                    c /= 3;
                }
                coords
            })
            .collect();

        let shift = |u: usize, w: usize| -> usize {
            // componentwise u + w over GF(3) on packed codes
            let mut out = 0;
            let mut scale = 1;
            let (mut a, mut b) = (u, w);
            for _ in 0..h {
                out += ((a % 3 + b % 3) % 3) * scale;
                a /= 3;
                b /= 3;
                scale *= 3;
            }
            out
        };
        let mut lines = Vec::new();
        // directions normalised to first nonzero coordinate 1
        for w in 1..total {
            if points[w].iter().find(|&&c| c != 0) != Some(&1) {
                continue;
            }
            for u in 0..total {
                let a = shift(u, w);
                let b = shift(a, w);
                if u < a && u < b {
                    let mut line = [u as u32, a as u32, b as u32];
                    line.sort_unstable();
                    lines.push(line);
                }
            }
        }
        lines.sort_unstable();
        Ok(AffGeometry { h, points, lines })
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Vec<u8>] {
        &self.points
    }

    pub fn lines(&self) -> &[[u32; 3]] {
        &self.lines
    }

    pub fn index_of(coords: &[u8]) -> usize {
        coords.iter().fold(0, |acc, &c| acc * 3 + c as usize)
    }
}

pub(crate) fn unpack(mut code: usize, q: u32, h: u32) -> Vec<Elem> {
    let mut coords = vec![Elem::ZERO; h as usize];
    for slot in coords.iter_mut().rev() {
        *slot = Elem::from_index_unchecked((code % q as usize) as u32);
        code /= q as usize;
    }
    coords
}

pub(crate) fn pack(coords: &[Elem], q: u32) -> usize {
    coords
        .iter()
        .fold(0, |acc, c| acc * q as usize + c.index() as usize)
}
