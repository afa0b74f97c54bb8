//! Exact arithmetic in `Q(ζ_n)`, in the power basis modulo the `n`-th cyclotomic polynomial.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Integer coefficients of `Φ_n`, constant term first.
pub fn cyclotomic_poly(n: u64) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for the proper divisors d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let phi = cyclotomic_poly(d);
            num = exact_div(&num, &phi);
        }
    }
    let out = Arc::new(num);
    cache.lock().unwrap().insert(n, out.clone());
    out
}

fn exact_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = *b.last().unwrap();
    let mut q = vec![0i64; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] / lead;
        q[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count() as u64
}

/// An element of `Q(ζ_n)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    n: u64,
    c: Vec<BigRational>,
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| if i == 0 { format!("{c}") } else { format!("{c}*z{}^{i}", self.n) })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Cyclotomic {
    pub fn zero(n: u64) -> Cyclotomic {
        Cyclotomic { n, c: vec![BigRational::zero(); euler_phi(n) as usize] }
    }

    pub fn from_rational(n: u64, r: BigRational) -> Cyclotomic {
        let mut z = Cyclotomic::zero(n);
        z.c[0] = r;
        z
    }

    pub fn from_int(n: u64, k: i64) -> Cyclotomic {
        Cyclotomic::from_rational(n, BigRational::from_integer(BigInt::from(k)))
    }

    /// `ζ_n^j`.
    pub fn zeta_pow(n: u64, j: i64) -> Cyclotomic {
        let mut raw = vec![BigRational::zero(); n as usize];
        raw[j.rem_euclid(n as i64) as usize] = BigRational::one();
        Cyclotomic::reduce(n, raw)
    }

    fn reduce(n: u64, mut raw: Vec<BigRational>) -> Cyclotomic {
        let phi = cyclotomic_poly(n);
        let d = phi.len() - 1;
        for i in (d..raw.len()).rev() {
            let c = std::mem::take(&mut raw[i]);
            if c.is_zero() {
                continue;
            }
            for (j, &pj) in phi.iter().enumerate().take(d) {
                raw[i - d + j] -= &c * BigRational::from_integer(BigInt::from(pj));
            }
        }
        raw.truncate(d);
        raw.resize(d, BigRational::zero());
        Cyclotomic { n, c: raw }
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|x| x.to_i64())
    }

    fn check(&self, other: &Cyclotomic) {
        assert_eq!(self.n, other.n, "cyclotomic values of different conductors");
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        self.check(other);
        Cyclotomic { n: self.n, c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.check(other);
        Cyclotomic { n: self.n, c: self.c.iter().zip(&other.c).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic { n: self.n, c: self.c.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, r: &BigRational) -> Cyclotomic {
        Cyclotomic { n: self.n, c: self.c.iter().map(|a| a * r).collect() }
    }

    pub fn scale_int(&self, k: i64) -> Cyclotomic {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        self.check(other);
        if let Some(r) = self.to_rational() {
            return other.scale(&r);
        }
        if let Some(r) = other.to_rational() {
            return self.scale(&r);
        }
        let d = self.c.len();
        let mut raw = vec![BigRational::zero(); 2 * d];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        Cyclotomic::reduce(self.n, raw)
    }

    /// The Galois automorphism `ζ ↦ ζ^k` for `k` prime to `n`.
    pub fn galois(&self, k: i64) -> Cyclotomic {
        let n = self.n as i64;
        let mut acc = Cyclotomic::zero(self.n);
        for (i, a) in self.c.iter().enumerate() {
            if !a.is_zero() {
                acc = acc.add(&Cyclotomic::zeta_pow(self.n, i as i64 * k % n).scale(a));
            }
        }
        acc
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Cyclotomic {
        self.galois(-1)
    }

    /// Sum of absolute values of coordinates, a bound on every complex embedding.
    pub fn l1_bound(&self) -> BigRational {
        self.c.iter().map(|x| x.abs()).fold(BigRational::zero(), |a, b| a + b)
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        self.c.iter().fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()))
    }

    /// JSON shape `{conductor, numerators, denominator}`.
    pub fn to_json(&self) -> CyclotomicJson {
        let den = self.denominator();
        let numerators = self
            .c
            .iter()
            .map(|x| (x * BigRational::from_integer(den.clone())).to_integer().to_string())
            .collect();
        CyclotomicJson { conductor: self.n, numerators, denominator: den.to_string() }
    }

    pub fn from_json(j: &CyclotomicJson) -> Option<Cyclotomic> {
        let den: BigInt = j.denominator.parse().ok()?;
        let c: Option<Vec<BigRational>> = j
            .numerators
            .iter()
            .map(|s| s.parse::<BigInt>().ok().map(|x| BigRational::new(x, den.clone())))
            .collect();
        let c = c?;
        if c.len() != euler_phi(j.conductor) as usize {
            return None;
        }
        Some(Cyclotomic { n: j.conductor, c })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicJson {
    pub conductor: u64,
    pub numerators: Vec<String>,
    pub denominator: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(15).len() - 1, 8);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in [2u64, 3, 5, 7, 15] {
            let s = (0..n as i64).fold(Cyclotomic::zero(n), |acc, j| acc.add(&Cyclotomic::zeta_pow(n, j)));
            assert!(s.is_zero(), "n = {n}");
        }
        let z = Cyclotomic::zeta_pow(3, 1);
        assert_eq!(z.mul(&z.conj()), Cyclotomic::from_int(3, 1));
    }

    proptest! {
        #[test]
        fn zeta_powers_multiply(n in 1u64..16, a in -20i64..20, b in -20i64..20) {
            let lhs = Cyclotomic::zeta_pow(n, a).mul(&Cyclotomic::zeta_pow(n, b));
            prop_assert_eq!(lhs, Cyclotomic::zeta_pow(n, a + b));
        }

        #[test]
        fn json_round_trip(n in 1u64..10, a in -5i64..5, k in 1i64..7) {
            let x = Cyclotomic::zeta_pow(n, a).scale(&BigRational::new(BigInt::from(3), BigInt::from(k)));
            prop_assert_eq!(Cyclotomic::from_json(&x.to_json()).unwrap(), x);
        }
    }
}
