//! Finite fields GF(p^d) in discrete-log form.
//!
//! Elements are addressed by index: `0` is the zero element and index
//! `i >= 1` stands for `ω^(i-1)`, where `ω` is the class of `x` modulo the
//! field's primitive modulus. Multiplication is exponent addition and
//! addition goes through a Zech logarithm table.

use crate::arith::{bounded_pow, is_prime, prime_divisors};
use crate::error::{domain, Error, Result};

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

/// Characteristic, degree and primitive modulus of a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u32,
    pub d: u32,
    /// Monic modulus of degree `d`, constant term first (length `d + 1`).
    pub modulus: Vec<u32>,
}

/// A field element, by table index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub(crate) fn from_index_unchecked(index: u32) -> Elem {
        Elem(index)
    }
}

#[derive(Debug, Clone)]
pub struct FieldTable {
    spec: FieldSpec,
    size: u32,
    /// `exp[k]` is the coefficient code of `ω^k`.
    exp: Vec<u32>,
    /// Inverse of `exp`; `NO_LOG` at code 0.
    log: Vec<u32>,
    /// `zech[n]` is the exponent of `ω^n + 1`, or `NO_LOG` when it vanishes.
    zech: Vec<u32>,
}

impl FieldTable {
    /// Builds GF(p^d).
    ///
    /// For `d = 1` the primitive element is the smallest primitive root
    /// modulo `p` (modulus `x - ω`). For `d >= 2` the modulus is the
    /// lexicographically smallest monic primitive polynomial, comparing
    /// coefficient lists constant term first.
    pub fn new(p: u32, d: u32) -> Result<FieldTable> {
        if !is_prime(p as u64) {
            return Err(Error::CompositeP(p as u64));
        }
        if d == 0 {
            return Err(domain("field degree must be at least 1"));
        }
        let size = bounded_pow(p as u64, d, MAX_FIELD_SIZE as u128)? as u32;

        if d == 1 {
            let g = smallest_primitive_root(p);
            let modulus = vec![(p - g) % p, 1];
            let powers = power_codes(p, &modulus).expect("x - g is primitive");
            return Ok(Self::from_powers(p, d, modulus, size, powers));
        }

        // Candidates in lexicographic order of (c0, c1, .., c_{d-1}).
        for rank in 0..size {
            let mut modulus = vec![0u32; d as usize + 1];
            let mut r = rank;
            for i in (0..d as usize).rev() {
                modulus[i] = r % p;
                r /= p;
            }
            modulus[d as usize] = 1;
            if modulus[0] == 0 || !root_is_primitive(p, &modulus) {
                continue;
            }
            if let Some(powers) = power_codes(p, &modulus) {
                return Ok(Self::from_powers(p, d, modulus, size, powers));
            }
        }
        unreachable!("primitive polynomials exist in every degree")
    }

    fn from_powers(p: u32, d: u32, modulus: Vec<u32>, size: u32, exp: Vec<u32>) -> FieldTable {
        let order = size - 1;
        let mut log = vec![NO_LOG; size as usize];
        for (k, &code) in exp.iter().enumerate() {
            log[code as usize] = k as u32;
        }
        let zech = exp
            .iter()
            .map(|&code| {
                // add one to the constant coefficient
                let plus_one = if code % p == p - 1 { code + 1 - p } else { code + 1 };
                log[plus_one as usize]
            })
            .collect();
        debug_assert_eq!(exp.len() as u32, order);
        FieldTable {
            spec: FieldSpec { p, d, modulus },
            size,
            exp,
            log,
            zech,
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn d(&self) -> u32 {
        self.spec.d
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Order of the multiplicative group, `p^d - 1`.
    pub fn order(&self) -> u32 {
        self.size - 1
    }

    pub fn elem(&self, index: u32) -> Result<Elem> {
        if index < self.size {
            Ok(Elem(index))
        } else {
            Err(Error::IndexError {
                index: index as usize,
                bound: self.size as usize,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.size).map(Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> {
        (1..self.size).map(Elem)
    }

    /// The primitive element ω.
    pub fn omega(&self) -> Elem {
        self.omega_pow(1)
    }

    /// `ω^k`, reduced modulo the group order.
    pub fn omega_pow(&self, k: u64) -> Elem {
        Elem(1 + (k % self.order() as u64) as u32)
    }

    /// Discrete logarithm to base ω; `None` for zero.
    pub fn log(&self, x: Elem) -> Option<u32> {
        if x.is_zero() {
            None
        } else {
            Some(x.0 - 1)
        }
    }

    /// Coefficients of `x` as a polynomial in ω over GF(p), constant first.
    pub fn coefficients(&self, x: Elem) -> Vec<u32> {
        let mut code = self.code(x);
        let p = self.p();
        (0..self.d())
            .map(|_| {
                let c = code % p;
                code /= p;
                c
            })
            .collect()
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() != self.d() as usize || coeffs.iter().any(|&c| c >= self.p()) {
            return Err(domain("coefficient vector does not describe a field element"));
        }
        let code = coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.p() + c);
        Ok(self.from_code(code))
    }

    /// Base-p packed coefficients; for prime fields this is the residue.
    pub fn code(&self, x: Elem) -> u32 {
        if x.is_zero() {
            0
        } else {
            self.exp[(x.0 - 1) as usize]
        }
    }

    pub fn from_code(&self, code: u32) -> Elem {
        match self.log[code as usize] {
            NO_LOG => Elem::ZERO,
            k => Elem(k + 1),
        }
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        if x.is_zero() {
            return y;
        }
        if y.is_zero() {
            return x;
        }
        let n = self.order();
        let (a, b) = (x.0 - 1, y.0 - 1);
        let diff = if b >= a { b - a } else { b + n - a };
        match self.zech[diff as usize] {
            NO_LOG => Elem::ZERO,
            z => Elem(1 + ((a as u64 + z as u64) % n as u64) as u32),
        }
    }

    pub fn neg(&self, x: Elem) -> Elem {
        if self.p() == 2 || x.is_zero() {
            x
        } else {
            // -1 = ω^(n/2)
            self.mul(x, self.omega_pow(self.order() as u64 / 2))
        }
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if x.is_zero() || y.is_zero() {
            return Elem::ZERO;
        }
        let s = (x.0 - 1) as u64 + (y.0 - 1) as u64;
        Elem(1 + (s % self.order() as u64) as u32)
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        match self.log(x) {
            None => Err(Error::ZeroArgument),
            Some(a) => Ok(self.omega_pow((self.order() - a) as u64)),
        }
    }

    pub fn div(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: Elem, k: u64) -> Elem {
        match self.log(x) {
            None if k == 0 => Elem::ONE,
            None => Elem::ZERO,
            Some(a) => self.omega_pow((a as u64 * (k % self.order() as u64)) % self.order() as u64),
        }
    }

    /// The Frobenius power `x ↦ x^(p^s)`.
    pub fn frobenius(&self, x: Elem, s: u32) -> Elem {
        match self.log(x) {
            None => Elem::ZERO,
            Some(a) => {
                let n = self.order() as u64;
                let mut k = a as u64;
                for _ in 0..(s % self.d()) {
                    k = k * self.p() as u64 % n;
                }
                self.omega_pow(k)
            }
        }
    }

    /// Whether nonzero `x` is a square, i.e. has even discrete log.
    pub fn is_square(&self, x: Elem) -> Result<bool> {
        if self.p() == 2 {
            return Err(Error::EvenCharacteristic);
        }
        match self.log(x) {
            None => Err(Error::ZeroArgument),
            Some(a) => Ok(a % 2 == 0),
        }
    }
}

fn smallest_primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let n = (p - 1) as u64;
    let primes = prime_divisors(n);
    (2..p)
        .find(|&g| {
            primes
                .iter()
                .all(|&r| crate::arith::pow_mod(g as u64, n / r, p as u64) != 1)
        })
        .expect("prime fields have primitive roots")
}

fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    (a as u64 * b as u64 % p as u64) as u32
}

/// Product of two residues modulo the monic `modulus`.
fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let d = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * d - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for k in (d..2 * d - 1).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        for i in 0..d {
            let t = c * (p - modulus[i]) as u64;
            prod[k - d + i] = (prod[k - d + i] + t) % p as u64;
        }
    }
    prod.truncate(d);
    prod.into_iter().map(|c| c as u32).collect()
}

fn x_pow_mod(mut k: u64, modulus: &[u32], p: u32) -> Vec<u32> {
    let d = modulus.len() - 1;
    let mut acc = vec![0u32; d];
    acc[0] = 1;
    let mut base = vec![0u32; d];
    if d == 1 {
        base[0] = (p - modulus[0]) % p;
    } else {
        base[1] = 1;
    }
    while k > 0 {
        if k & 1 == 1 {
            acc = poly_mul_mod(&acc, &base, modulus, p);
        }
        base = poly_mul_mod(&base, &base, modulus, p);
        k >>= 1;
    }
    acc
}

/// Order test for `x` modulo `modulus` via the prime divisors of `p^d - 1`.
fn root_is_primitive(p: u32, modulus: &[u32]) -> bool {
    let d = modulus.len() - 1;
    let n = (p as u64).pow(d as u32) - 1;
    let is_one = |v: &[u32]| v[0] == 1 && v[1..].iter().all(|&c| c == 0);
    is_one(&x_pow_mod(n, modulus, p))
        && prime_divisors(n)
            .into_iter()
            .all(|r| !is_one(&x_pow_mod(n / r, modulus, p)))
}

/// Codes of `x^0, x^1, .., x^(p^d - 2)` modulo `modulus`, or `None` when `x`
/// does not have order exactly `p^d - 1`.
fn power_codes(p: u32, modulus: &[u32]) -> Option<Vec<u32>> {
    let d = modulus.len() - 1;
    let order = (p as u64).pow(d as u32) - 1;
    let mut cur = vec![0u32; d];
    cur[0] = 1;
    let mut codes = Vec::with_capacity(order as usize);
    let pack = |v: &[u32]| v.iter().rev().fold(0u32, |acc, &c| acc * p + c);
    for k in 0..order {
        if k > 0 && cur[0] == 1 && cur[1..].iter().all(|&c| c == 0) {
            return None;
        }
        codes.push(pack(&cur));
        // multiply by x and reduce: x^d = -(c0 + c1 x + ..)
        let top = cur[d - 1];
        for i in (1..d).rev() {
            cur[i] = (cur[i - 1] + (p - mul_mod(top, modulus[i], p))) % p;
        }
        cur[0] = (p - mul_mod(top, modulus[0], p)) % p;
    }
    let back_to_one = cur[0] == 1 && cur[1..].iter().all(|&c| c == 0);
    back_to_one.then_some(codes)
}
