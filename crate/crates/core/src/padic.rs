//! Truncated Witt vectors `W_N = W(F_q)/p^N`, realized as `(Z/p^N)[y]/(f̃)` with
//! `f̃` the coefficient lift of the defining polynomial of `F_q`.
//!
//! The chart sends `ζ_{q-1}` to the Teichmüller lift of the distinguished
//! generator of `F_q^×`, which fixes the prime `𝔭` above `p` in every `Q(ζ_n)`
//! with `n | q - 1`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{AlgElem, Center};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::field::{Fe, FieldRef};
use crate::group::{Elem, Subgroup};

pub type WElem = Vec<u64>;

#[derive(Debug)]
pub struct Wn {
    field: FieldRef,
    precision: u32,
    modulus: u64,
    /// lower coefficients of the monic `f̃`
    poly: Vec<u64>,
}

impl Wn {
    /// Largest precision representable for `p`.
    pub fn max_precision(p: u64) -> u32 {
        let mut n = 0;
        let mut m: u128 = 1;
        while m * p as u128 <= 1u128 << 62 {
            m *= p as u128;
            n += 1;
        }
        n
    }

    pub fn new(field: &FieldRef, precision: u32) -> Result<Arc<Wn>> {
        let p = field.p();
        if precision == 0 || precision > Wn::max_precision(p) {
            return Err(Error::Precision(format!("precision {precision} out of range for p = {p}")));
        }
        let modulus = p.pow(precision);
        let poly = field.defining_poly().to_vec();
        Ok(Arc::new(Wn { field: field.clone(), precision, modulus, poly }))
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn k(&self) -> usize {
        self.poly.len()
    }

    pub fn zero(&self) -> WElem {
        vec![0; self.k()]
    }

    pub fn one(&self) -> WElem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> WElem {
        let mut z = self.zero();
        z[0] = n.rem_euclid(self.modulus as i64) as u64;
        z
    }

    pub fn from_bigint(&self, n: &BigInt) -> WElem {
        let m = BigInt::from(self.modulus);
        let r = n.mod_floor(&m);
        let mut z = self.zero();
        z[0] = r.to_u64().expect("reduced");
        z
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> WElem {
        a.iter().zip(b).map(|(&x, &y)| ((x as u128 + y as u128) % self.modulus as u128) as u64).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> WElem {
        a.iter().zip(b).map(|(&x, &y)| ((x as u128 + self.modulus as u128 - y as u128) % self.modulus as u128) as u64).collect()
    }

    pub fn neg(&self, a: &[u64]) -> WElem {
        self.sub(&self.zero(), a)
    }

    pub fn scale_int(&self, a: &[u64], n: u64) -> WElem {
        let m = self.modulus as u128;
        a.iter().map(|&x| (x as u128 * (n as u128 % m) % m) as u64).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> WElem {
        let k = self.k();
        let m = self.modulus as u128;
        let mut raw = vec![0u128; 2 * k];
        for i in 0..k {
            if a[i] == 0 {
                continue;
            }
            for j in 0..k {
                raw[i + j] = (raw[i + j] + a[i] as u128 * b[j] as u128) % m;
            }
        }
        // y^k = -Σ c_i y^i
        for i in (k..2 * k).rev() {
            let c = raw[i];
            if c == 0 {
                continue;
            }
            raw[i] = 0;
            for j in 0..k {
                raw[i - k + j] = (raw[i - k + j] + (m - c) * self.poly[j] as u128) % m;
            }
        }
        raw[..k].iter().map(|&x| x as u64).collect()
    }

    pub fn pow(&self, a: &[u64], mut e: u128) -> WElem {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Coefficient lift of an element of `F_q`.
    pub fn lift(&self, a: Fe) -> WElem {
        self.field.coeffs(a)
    }

    /// Reduction `W_N → F_q`.
    pub fn reduce(&self, a: &[u64]) -> Fe {
        let p = self.field.p();
        a.iter().rev().fold(0u64, |acc, &c| acc * p + c % p) as Fe
    }

    /// The Teichmüller representative of `a ≠ 0`: `lift(a)^{q^{N-1}}`.
    pub fn teichmuller(&self, a: Fe) -> WElem {
        if a == 0 {
            return self.zero();
        }
        let q = self.field.q() as u128;
        (1..self.precision).fold(self.lift(a), |x, _| self.pow(&x, q))
    }

    /// Image of `ζ_n` under the chart, for `n | q - 1`.
    pub fn zeta(&self, n: u64) -> Result<WElem> {
        let qm = self.field.q() as u64 - 1;
        if qm % n != 0 {
            return Err(Error::Unsupported(format!("ζ_{n} is not in the chart of F_{}", qm + 1)));
        }
        let g = self.teichmuller(self.field.generator());
        Ok(self.pow(&g, (qm / n) as u128))
    }

    /// `p`-adic valuation; `None` when `a ≡ 0 mod p^N`.
    pub fn valuation(&self, a: &[u64]) -> Option<u32> {
        let p = self.field.p();
        a.iter()
            .filter(|&&c| c != 0)
            .map(|&c| {
                let mut c = c;
                let mut v = 0;
                while c % p == 0 {
                    c /= p;
                    v += 1;
                }
                v
            })
            .min()
    }

    fn inv_int(&self, d: &BigInt) -> Result<u64> {
        let m = BigInt::from(self.modulus);
        let r = d.mod_floor(&m);
        let e = r.extended_gcd(&m);
        if !e.gcd.is_one() {
            return Err(Error::Precision("denominator divisible by p".into()));
        }
        Ok(e.x.mod_floor(&m).to_u64().expect("reduced"))
    }

    /// Image of a cyclotomic number with `p`-integral coordinates.
    pub fn from_cyclotomic(&self, x: &Cyclotomic) -> Result<WElem> {
        let z = self.zeta(x.conductor())?;
        let mut acc = self.zero();
        let mut zp = self.one();
        for c in x.coords() {
            if !c.is_zero() {
                let num = self.from_bigint(c.numer());
                let inv = self.inv_int(c.denom())?;
                acc = self.add(&acc, &self.mul(&self.scale_int(&num, inv), &zp));
            }
            zp = self.mul(&zp, &z);
        }
        Ok(acc)
    }
}

/// `v_𝔭(x)` for `x ∈ Q(ζ_n)`, `n | q - 1`, along the chart of `field`; `None` for `x = 0`.
pub fn p_valuation(x: &Cyclotomic, field: &FieldRef) -> Result<Option<i64>> {
    if x.is_zero() {
        return Ok(None);
    }
    let p = BigInt::from(field.p());
    let den = x.denominator();
    let mut vden = 0i64;
    let mut d = den.clone();
    while (&d % &p).is_zero() {
        d /= &p;
        vden += 1;
    }
    let y = x.scale(&num_rational::BigRational::from_integer(den));
    let top = Wn::max_precision(field.p());
    let mut n = 8.min(top);
    loop {
        let w = Wn::new(field, n)?;
        let img = w.from_cyclotomic(&y)?;
        if let Some(v) = w.valuation(&img) {
            return Ok(Some(v as i64 - vden));
        }
        if n == top {
            return Err(Error::Precision(format!("valuation exceeds {top}")));
        }
        n = (2 * n).min(top);
    }
}

/// A central idempotent of `W_N S`, stored by class coordinates.
#[derive(Clone, Debug)]
pub struct LiftedIdempotent {
    ring: Arc<Wn>,
    group: Subgroup,
    coords: Vec<WElem>,
}

impl LiftedIdempotent {
    pub fn ring(&self) -> &Arc<Wn> {
        &self.ring
    }

    pub fn group(&self) -> &Subgroup {
        &self.group
    }

    pub fn coeff(&self, x: Elem) -> &WElem {
        &self.coords[self.group.class_index(x)]
    }

    pub fn reduce(&self) -> AlgElem {
        let g = &self.group;
        AlgElem::from_fn(g, |x| self.ring.reduce(self.coeff(x)))
    }
}

fn center_mul(w: &Wn, structure: &[Vec<Vec<u64>>], x: &[WElem], y: &[WElem]) -> Vec<WElem> {
    let c = x.len();
    let mut out = vec![w.zero(); c];
    for i in 0..c {
        if w.is_zero(&x[i]) {
            continue;
        }
        for j in 0..c {
            if w.is_zero(&y[j]) {
                continue;
            }
            let xy = w.mul(&x[i], &y[j]);
            for (k, &n) in structure[i][j].iter().enumerate() {
                if n != 0 {
                    out[k] = w.add(&out[k], &w.scale_int(&xy, n));
                }
            }
        }
    }
    out
}

/// Newton iteration `x ← 3x² − 2x³` in `Z(W_N S)` from the coefficient lift of `e`.
pub fn lift_idempotent(e: &AlgElem, field: &FieldRef, precision: u32) -> Result<LiftedIdempotent> {
    let s = e.group().clone();
    let w = Wn::new(field, precision)?;
    let z = Center::new(&s, field);
    let coords = z.coordinates(e)?;
    let st = z.structure_constants();
    let mut x: Vec<WElem> = coords.iter().map(|&c| w.lift(c)).collect();
    for _ in 0..2 * precision + 4 {
        let x2 = center_mul(&w, st, &x, &x);
        if x2 == x {
            return Ok(LiftedIdempotent { ring: w, group: s, coords: x });
        }
        let x3 = center_mul(&w, st, &x2, &x);
        x = x2
            .iter()
            .zip(&x3)
            .map(|(a, b)| w.sub(&w.scale_int(a, 3), &w.scale_int(b, 2)))
            .collect();
    }
    Err(Error::Precision("idempotent lift did not converge".into()))
}

/// Precision `N` with `p^{fN} > bound^{φ(n)}`, where `f` is the residue degree of
/// `𝔭` in `Q(ζ_n)`: an algebraic integer of `Q(ζ_n)` whose conjugates are all
/// bounded by `bound` and which lies in `𝔭^N` is zero.
pub fn certified_precision(field: &FieldRef, n: u64, bound: &BigInt) -> Result<u32> {
    let p = field.p();
    let phi = crate::cyclotomic::euler_phi(n) as u32;
    let f = crate::field::Fq::degree_for(p, n);
    let target = bound.abs().pow(phi);
    let mut npow = BigInt::one();
    let pf = BigInt::from(p).pow(f);
    let mut nprec = 0u32;
    while npow <= target {
        npow *= &pf;
        nprec += 1;
    }
    let nprec = nprec.max(1);
    if nprec > Wn::max_precision(p) {
        return Err(Error::Precision(format!("certificate needs precision {nprec}")));
    }
    Ok(nprec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::block_idempotents;
    use crate::field::Fq as Field;

    use crate::group::Group;

    #[test]
    fn teichmuller_lifts_are_roots_of_unity() {
        let f = Field::new(2, 2).unwrap();
        let w = Wn::new(&f, 20).unwrap();
        let z = w.zeta(3).unwrap();
        assert_eq!(w.pow(&z, 3), w.one());
        assert_ne!(z, w.one());
        assert_eq!(w.reduce(&z), f.generator());
        let f5 = Field::new(5, 1).unwrap();
        let w5 = Wn::new(&f5, 10).unwrap();
        assert_eq!(w5.pow(&w5.zeta(4).unwrap(), 2), w5.from_int(-1));
    }

    #[test]
    fn valuations_of_integers_and_units() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(p_valuation(&Cyclotomic::from_int(3, 12), &f).unwrap(), Some(2));
        // 1 - ζ_3 is a unit at 2
        let u = Cyclotomic::from_int(3, 1).sub(&Cyclotomic::zeta_pow(3, 1));
        assert_eq!(p_valuation(&u, &f).unwrap(), Some(0));
        let f3 = Field::new(3, 1).unwrap();
        let half = Cyclotomic::from_rational(2, num_rational::BigRational::new(9.into(), 2.into()));
        assert_eq!(p_valuation(&half, &f3).unwrap(), Some(2));
    }

    #[test]
    fn block_idempotents_lift() {
        let g = Group::catalog("S3").unwrap().whole();
        let f = Field::new(2, 1).unwrap();
        for e in block_idempotents(&g, &f).unwrap() {
            let l = lift_idempotent(&e, &f, 8).unwrap();
            assert_eq!(l.reduce(), e);
        }
        let one = AlgElem::one(&g);
        let l = lift_idempotent(&one, &f, 8).unwrap();
        assert_eq!(l.coeff(0), &l.ring().one());
        let z = AlgElem::zero(&g);
        assert!(l.ring().is_zero(lift_idempotent(&z, &f, 8).unwrap().coeff(0)));
    }
}
