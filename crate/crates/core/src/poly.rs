//! Univariate polynomials over `F_q` and their factorization.
//!
//! Coefficients are stored lowest degree first with no trailing zeros.

use rand::Rng;

use crate::field::{Fe, Fq};

pub type Poly = Vec<Fe>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[Fe]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn add(f: &Fq, a: &[Fe], b: &[Fe]) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n)
        .map(|i| f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect())
}

pub fn sub(f: &Fq, a: &[Fe], b: &[Fe]) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n)
        .map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect())
}

pub fn scale(f: &Fq, a: &[Fe], c: Fe) -> Poly {
    trim(a.iter().map(|&x| f.mul(x, c)).collect())
}

pub fn mul(f: &Fq, a: &[Fe], b: &[Fe]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

pub fn divrem(f: &Fq, a: &[Fe], b: &[Fe]) -> (Poly, Poly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = f.inv(b[db]);
    if r.len() < b.len() {
        return (vec![], trim(r));
    }
    let mut qt = vec![0; r.len() - db];
    for i in (0..qt.len()).rev() {
        let c = f.mul(r[i + db], lead_inv);
        qt[i] = c;
        if c != 0 {
            for j in 0..=db {
                r[i + j] = f.sub(r[i + j], f.mul(c, b[j]));
            }
        }
    }
    r.truncate(db);
    (trim(qt), trim(r))
}

pub fn rem(f: &Fq, a: &[Fe], b: &[Fe]) -> Poly {
    divrem(f, a, b).1
}

pub fn monic(f: &Fq, a: &[Fe]) -> Poly {
    match a.last() {
        None => vec![],
        Some(&l) => scale(f, a, f.inv(l)),
    }
}

pub fn gcd(f: &Fq, a: &[Fe], b: &[Fe]) -> Poly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn derivative(f: &Fq, a: &[Fe]) -> Poly {
    trim(a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
        .collect())
}

pub fn mulmod(f: &Fq, a: &[Fe], b: &[Fe], m: &[Fe]) -> Poly {
    rem(f, &mul(f, a, b), m)
}

pub fn powmod(f: &Fq, a: &[Fe], mut e: u64, m: &[Fe]) -> Poly {
    let mut base = rem(f, a, m);
    let mut acc = rem(f, &[1], m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(f, &acc, &base, m);
        }
        base = mulmod(f, &base, &base, m);
        e >>= 1;
    }
    acc
}

pub fn eval(f: &Fq, a: &[Fe], x: Fe) -> Fe {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// `a^{q^i}` mod `m`, by repeated `q`-th powers.
fn frobenius_iter(f: &Fq, a: &[Fe], i: usize, m: &[Fe]) -> Poly {
    let mut x = rem(f, a, m);
    for _ in 0..i {
        x = powmod(f, &x, f.q() as u64, m);
    }
    x
}

/// `p`-th root of a polynomial all of whose exponents are multiples of `p`.
fn pth_root(f: &Fq, a: &[Fe]) -> Poly {
    let p = f.p() as usize;
    // the inverse of Frobenius on F_q is a ↦ a^{q/p}
    let e = (f.q() / p) as u64;
    trim((0..a.len().div_ceil(p))
        .map(|i| f.pow(*a.get(i * p).unwrap_or(&0), e))
        .collect())
}

/// Square-free decomposition: pairs `(g, m)` with `a = Π g^m`, each `g` square-free.
pub fn squarefree(f: &Fq, a: &[Fe]) -> Vec<(Poly, usize)> {
    let a = monic(f, a);
    if a.len() <= 1 {
        return vec![];
    }
    let mut out = Vec::new();
    let d = derivative(f, &a);
    if d.is_empty() {
        for (g, m) in squarefree(f, &pth_root(f, &a)) {
            out.push((g, m * f.p() as usize));
        }
        return out;
    }
    let mut c = gcd(f, &a, &d);
    let mut w = divrem(f, &a, &c).0;
    let mut i = 1;
    while w.len() > 1 {
        let y = gcd(f, &w, &c);
        let fac = divrem(f, &w, &y).0;
        if fac.len() > 1 {
            out.push((monic(f, &fac), i));
        }
        w = y;
        c = divrem(f, &c, &w).0;
        i += 1;
    }
    if c.len() > 1 {
        for (g, m) in squarefree(f, &pth_root(f, &c)) {
            out.push((g, m * f.p() as usize));
        }
    }
    out
}

/// Distinct-degree split of a square-free monic polynomial: `(product of irreducibles of degree d, d)`.
pub fn distinct_degree(f: &Fq, a: &[Fe]) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut rest = monic(f, a);
    let x: Poly = vec![0, 1];
    let mut h = rem(f, &x, &rest);
    let mut d = 0;
    while rest.len() > 1 {
        d += 1;
        if 2 * d > rest.len() - 1 {
            let deg = rest.len() - 1;
            out.push((rest, deg));
            break;
        }
        h = powmod(f, &h, f.q() as u64, &rest);
        let g = gcd(f, &sub(f, &h, &x), &rest);
        if g.len() > 1 {
            rest = divrem(f, &rest, &g).0;
            h = rem(f, &h, &rest);
            out.push((g, d));
        }
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of distinct irreducibles of degree `d`.
pub fn equal_degree<R: Rng>(f: &Fq, a: &[Fe], d: usize, rng: &mut R) -> Vec<Poly> {
    let a = monic(f, a);
    let n = a.len() - 1;
    if n == d {
        return vec![a];
    }
    loop {
        let r: Poly = trim((0..n).map(|_| rng.gen_range(0..f.q()) as Fe).collect());
        if r.len() <= 1 {
            continue;
        }
        let t = if f.p() == 2 {
            // absolute trace to F_2 of the residue field of degree k·d
            let mut acc: Poly = vec![];
            let mut x = rem(f, &r, &a);
            for _ in 0..(f.k() as usize * d) {
                acc = add(f, &acc, &x);
                x = mulmod(f, &x, &x, &a);
            }
            acc
        } else {
            let mut norm: Poly = vec![1];
            for i in 0..d {
                norm = mulmod(f, &norm, &frobenius_iter(f, &r, i, &a), &a);
            }
            let e = (f.q() as u64 - 1) / 2;
            sub(f, &powmod(f, &norm, e, &a), &[1])
        };
        let g = gcd(f, &t, &a);
        if g.len() > 1 && g.len() < a.len() {
            let h = divrem(f, &a, &g).0;
            let mut out = equal_degree(f, &g, d, rng);
            out.extend(equal_degree(f, &h, d, rng));
            return out;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities, sorted by (degree, coefficients).
pub fn factor<R: Rng>(f: &Fq, a: &[Fe], rng: &mut R) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    for (s, m) in squarefree(f, a) {
        for (g, d) in distinct_degree(f, &s) {
            for h in equal_degree(f, &g, d, rng) {
                out.push((h, m));
            }
        }
    }
    out.sort_by(|x, y| (x.0.len(), x.0.iter().rev().collect::<Vec<_>>()).cmp(&(y.0.len(), y.0.iter().rev().collect::<Vec<_>>())));
    // merge equal factors arising from different square-free layers
    let mut merged: Vec<(Poly, usize)> = Vec::new();
    for (g, m) in out {
        match merged.last_mut() {
            Some((h, k)) if *h == g => *k += m,
            _ => merged.push((g, m)),
        }
    }
    merged
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn product(f: &Fq, fs: &[(Poly, usize)]) -> Poly {
        let mut acc = vec![1];
        for (g, m) in fs {
            for _ in 0..*m {
                acc = mul(f, &acc, g);
            }
        }
        acc
    }

    fn irreducible_by_search(f: &Fq, g: &[Fe]) -> bool {
        // brute force: no monic divisor of degree 1..=deg/2
        let n = g.len() - 1;
        for d in 1..=n / 2 {
            let total = f.q().pow(d as u32);
            for code in 0..total {
                let mut c = Vec::with_capacity(d + 1);
                let mut x = code;
                for _ in 0..d {
                    c.push((x % f.q()) as Fe);
                    x /= f.q();
                }
                c.push(1);
                if rem(f, g, &c).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    proptest! {
        #[test]
        fn factorization_reconstructs(coeffs in proptest::collection::vec(0u8..4, 2..9), seed in 0u64..1000) {
            let f = Fq::new(2, 2).unwrap();
            let a = monic(&f, &trim(coeffs));
            prop_assume!(a.len() > 1);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let fs = factor(&f, &a, &mut rng);
            prop_assert_eq!(product(&f, &fs), a);
            for (g, _) in &fs {
                prop_assert!(irreducible_by_search(&f, g));
            }
        }

        #[test]
        fn factorization_over_f3(coeffs in proptest::collection::vec(0u8..3, 2..8), seed in 0u64..1000) {
            let f = Fq::new(3, 1).unwrap();
            let a = monic(&f, &trim(coeffs));
            prop_assume!(a.len() > 1);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let fs = factor(&f, &a, &mut rng);
            prop_assert_eq!(product(&f, &fs), a);
            for (g, _) in &fs {
                prop_assert!(irreducible_by_search(&f, g));
            }
        }
    }

    #[test]
    fn squarefree_in_char_two() {
        let f = Fq::new(2, 1).unwrap();
        // (x+1)^4 x^2 = x^6 + x^2 in char 2
        let a = vec![0, 0, 1, 0, 0, 0, 1];
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let fs = factor(&f, &a, &mut rng);
        assert_eq!(fs, vec![(vec![0, 1], 2), (vec![1, 1], 4)]);
    }
}
