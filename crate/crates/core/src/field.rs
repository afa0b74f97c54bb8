//! Small finite fields `F_q`, `q = p^k ≤ 256`, with full operation tables.
//!
//! An element is the integer `Σ c_i p^i`, where `c_i` is the coefficient of
//! `x^i` in `F_p[x]/(f)`. The defining polynomial `f` is the least primitive
//! monic polynomial of degree `k` (coefficients compared from the top down),
//! and the distinguished generator `g0` of `F_q^×` is the class of `x`
//! (for `k = 1`, the least primitive root mod `p`).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type Fe = u8;

pub struct Fq {
    p: u64,
    k: u32,
    q: usize,
    poly: Vec<u64>,
    add: Vec<Fe>,
    mul: Vec<Fe>,
    neg: Vec<Fe>,
    inv: Vec<Fe>,
    exp: Vec<Fe>,
    log: Vec<u32>,
}

pub type FieldRef = Arc<Fq>;

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn digits(mut x: u64, p: u64, k: usize) -> Vec<u64> {
    (0..k)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl Fq {
    pub fn new(p: u64, k: u32) -> Result<FieldRef> {
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        let q = p.checked_pow(k).filter(|&q| q <= 256 && k >= 1).ok_or_else(|| {
            Error::Unsupported(format!("field of order {p}^{k} exceeds the table limit 256"))
        })? as usize;
        let kk = k as usize;
        // candidate f = x^k + Σ_{i<k} c_i x^i, enumerated by the integer of its lower digits
        // degree one: the least primitive root r, i.e. f = x - r
        let order: Vec<u64> = if k == 1 {
            (1..p).rev().collect()
        } else {
            (0..q as u64).collect()
        };
        for lower in order {
            let c = digits(lower, p, kk);
            if c[0] == 0 {
                continue;
            }
            if let Some(exp) = power_table(p, &c, q) {
                return Ok(Arc::new(Fq::from_exp(p, k, q, c, exp)));
            }
        }
        Err(Error::Precondition("no primitive polynomial found".into()))
    }

    fn from_exp(p: u64, k: u32, q: usize, poly: Vec<u64>, exp: Vec<Fe>) -> Fq {
        let kk = k as usize;
        let mut log = vec![0u32; q];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        let mut add = vec![0; q * q];
        let mut neg = vec![0; q];
        for a in 0..q {
            let da = digits(a as u64, p, kk);
            for b in 0..q {
                let db = digits(b as u64, p, kk);
                let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&s, p) as Fe;
            }
            let n: Vec<u64> = da.iter().map(|x| (p - x) % p).collect();
            neg[a] = undigits(&n, p) as Fe;
        }
        let mut mul = vec![0; q * q];
        let mut inv = vec![0; q];
        for a in 1..q {
            for b in 1..q {
                let l = (log[a] as usize + log[b] as usize) % (q - 1);
                mul[a * q + b] = exp[l];
            }
            inv[a] = exp[(q - 1 - log[a] as usize) % (q - 1)];
        }
        Fq { p, k, q, poly, add, mul, neg, inv, exp, log }
    }

    /// Smallest `k` such that `m | p^k - 1`, i.e. `F_{p^k}` contains all `m`-th roots of unity.
    pub fn degree_for(p: u64, m: u64) -> u32 {
        let mut k = 1;
        let mut pk = p % m.max(1);
        while m > 1 && pk != 1 {
            pk = pk * p % m;
            k += 1;
        }
        k
    }

    /// The splitting field for groups of exponent `exp` in characteristic `p`.
    pub fn splitting(p: u64, exp: u64) -> Result<FieldRef> {
        let mut m = exp;
        while m % p == 0 {
            m /= p;
        }
        Fq::new(p, Fq::degree_for(p, m))
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn q(&self) -> usize {
        self.q
    }
    /// Lower coefficients `c_0..c_{k-1}` of the monic defining polynomial.
    pub fn defining_poly(&self) -> &[u64] {
        &self.poly
    }
    pub fn generator(&self) -> Fe {
        self.exp[1 % (self.q - 1)]
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        self.add[a as usize * self.q + b as usize]
    }
    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg[b as usize])
    }
    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.neg[a as usize]
    }
    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.mul[a as usize * self.q + b as usize]
    }
    /// Multiplicative inverse; `inv(0)` is a caller error and returns 0.
    #[inline]
    pub fn inv(&self, a: Fe) -> Fe {
        self.inv[a as usize]
    }
    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b))
    }
    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        self.exp[((self.log[a as usize] as u64 * (e % (self.q as u64 - 1))) % (self.q as u64 - 1)) as usize]
    }
    /// `g0^j`.
    pub fn gen_pow(&self, j: i64) -> Fe {
        self.exp[j.rem_euclid(self.q as i64 - 1) as usize]
    }
    /// Discrete log base `g0` of a nonzero element.
    pub fn log(&self, a: Fe) -> u32 {
        assert!(a != 0, "log of zero");
        self.log[a as usize]
    }
    pub fn from_int(&self, n: i64) -> Fe {
        let r = n.rem_euclid(self.p as i64) as u64;
        r as Fe
    }
    /// Frobenius `a ↦ a^p`.
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.p)
    }
    /// Coordinates of `a` in the power basis `1, x, …, x^{k-1}` of `F_p[x]/(f)`.
    pub fn coeffs(&self, a: Fe) -> Vec<u64> {
        digits(a as u64, self.p, self.k as usize)
    }
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q as u16).map(|x| x as Fe)
    }
}

/// Successive powers of `x` in `F_p[x]/(f)`; `None` unless `x` has order `q - 1`.
fn power_table(p: u64, lower: &[u64], q: usize) -> Option<Vec<Fe>> {
    let k = lower.len();
    let mut cur = vec![0u64; k];
    cur[0] = 1;
    let mut exp = Vec::with_capacity(q - 1);
    for i in 0..q - 1 {
        let code = undigits(&cur, p) as Fe;
        if i > 0 && code == 1 {
            return None;
        }
        exp.push(code);
        // multiply by x: shift, then reduce x^k = -Σ c_i x^i
        let top = cur[k - 1];
        for j in (1..k).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        for j in 0..k {
            cur[j] = (cur[j] + (p - lower[j]) % p * top) % p;
        }
    }
    if undigits(&cur, p) != 1 {
        return None;
    }
    Some(exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_structure() {
        let f = Fq::new(2, 2).unwrap();
        assert_eq!(f.defining_poly(), &[1, 1]);
        let g = f.generator();
        assert_eq!(g, 2);
        assert_eq!(f.pow(g, 3), 1);
        assert_eq!(f.add(g, 1), f.mul(g, g));
    }

    #[test]
    fn prime_fields() {
        let f = Fq::new(3, 1).unwrap();
        assert_eq!(f.generator(), 2);
        let f2 = Fq::new(2, 1).unwrap();
        assert_eq!(f2.generator(), 1);
        assert_eq!(Fq::new(7, 1).unwrap().generator(), 3);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, k) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (2, 4)] {
            let f = Fq::new(p, k).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in f.elements() {
                    for c in [0, 1, f.generator()] {
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn splitting_degrees() {
        assert_eq!(Fq::splitting(2, 8).unwrap().q(), 2);
        assert_eq!(Fq::splitting(2, 6).unwrap().q(), 4);
        assert_eq!(Fq::splitting(3, 6).unwrap().q(), 3);
        assert_eq!(Fq::splitting(2, 12).unwrap().q(), 4);
    }
}
