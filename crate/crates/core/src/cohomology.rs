//! Normalized 2-cocycles with values in `F_q^× ≅ Z/(q-1)`, written additively,
//! coboundary tests by linear algebra over `Z/m`, Schur classes of stable simple
//! modules and Külshammer-Puig classes of self-centralizing Brauer pairs.

use num_integer::Integer;

use crate::algebra::AlgElem;
use crate::blocks::{cut_module, defect_group, BrauerPair};
use crate::decompose::decompose;
use crate::error::{Error, Result};
use crate::field::FieldRef;
use crate::group::{quotient_group, Elem, GroupHom, GroupRef, Subgroup};
use crate::linalg::Mat;
use crate::module::MatModule;

/// A 2-cocycle `α: Ḡ × Ḡ → Z/m`, stored as a table indexed by element pairs.
#[derive(Clone, Debug)]
pub struct Cocycle {
    group: GroupRef,
    modulus: u64,
    table: Vec<u64>,
}

impl Cocycle {
    pub fn new(group: &GroupRef, modulus: u64, table: Vec<u64>) -> Result<Cocycle> {
        let n = group.order();
        if table.len() != n * n || modulus == 0 {
            return Err(Error::Mismatch("cocycle table shape".into()));
        }
        let c = Cocycle { group: group.clone(), modulus, table: table.into_iter().map(|v| v % modulus).collect() };
        if !c.satisfies_cocycle_identity() {
            return Err(Error::Precondition("table violates the cocycle identity".into()));
        }
        Ok(c)
    }

    pub fn trivial(group: &GroupRef, modulus: u64) -> Cocycle {
        let n = group.order();
        Cocycle { group: group.clone(), modulus, table: vec![0; n * n] }
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn value(&self, x: Elem, y: Elem) -> u64 {
        self.table[x as usize * self.group.order() + y as usize]
    }

    /// `α(y,z) - α(xy,z) + α(x,yz) - α(x,y) = 0` for all `x, y, z`.
    pub fn satisfies_cocycle_identity(&self) -> bool {
        let g = &self.group;
        let m = self.modulus;
        g.elements().all(|x| {
            g.elements().all(|y| {
                g.elements().all(|z| {
                    let lhs = (self.value(x, y) + self.value(g.mul(x, y), z)) % m;
                    let rhs = (self.value(y, z) + self.value(x, g.mul(y, z))) % m;
                    lhs == rhs
                })
            })
        })
    }

    pub fn sub(&self, other: &Cocycle) -> Result<Cocycle> {
        if !std::sync::Arc::ptr_eq(&self.group, &other.group) || self.modulus != other.modulus {
            return Err(Error::Mismatch("cocycles on different groups".into()));
        }
        let m = self.modulus;
        let table = self.table.iter().zip(&other.table).map(|(a, b)| (a + m - b) % m).collect();
        Ok(Cocycle { group: self.group.clone(), modulus: m, table })
    }

    /// `(f*α)(x, y) = α(f(x), f(y))` along a homomorphism `f: src → group`.
    pub fn pullback(&self, src: &GroupRef, f: impl Fn(Elem) -> Elem) -> Result<Cocycle> {
        let n = src.order();
        let mut table = vec![0; n * n];
        for x in src.elements() {
            for y in src.elements() {
                let (a, b) = (f(x), f(y));
                if f(src.mul(x, y)) != self.group.mul(a, b) {
                    return Err(Error::NotHomomorphism("cocycle pullback".into()));
                }
                table[x as usize * n + y as usize] = self.value(a, b);
            }
        }
        Ok(Cocycle { group: src.clone(), modulus: self.modulus, table })
    }

    /// A cochain `β` with `α(x,y) = β(x) + β(y) - β(xy)`, if one exists.
    pub fn coboundary_witness(&self) -> Option<Vec<u64>> {
        let g = &self.group;
        let n = g.order();
        let mut rows = Vec::with_capacity(n * n);
        let mut rhs = Vec::with_capacity(n * n);
        for x in g.elements() {
            for y in g.elements() {
                let mut r = vec![0u64; n];
                r[x as usize] += 1;
                r[y as usize] += 1;
                let xy = g.mul(x, y) as usize;
                r[xy] = (r[xy] + self.modulus - 1) % self.modulus;
                rows.push(r);
                rhs.push(self.value(x, y));
            }
        }
        solve_mod(&rows, &rhs, self.modulus)
    }

    pub fn is_coboundary(&self) -> bool {
        self.coboundary_witness().is_some()
    }
}

/// Whether two cocycles on the same group define the same class in `H²(Ḡ, Z/m)`.
pub fn cohomologous(a: &Cocycle, b: &Cocycle) -> Result<bool> {
    Ok(a.sub(b)?.is_coboundary())
}

fn factor_prime_powers(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut k = 0;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

fn inv_mod(a: i128, m: i128) -> i128 {
    let e = a.rem_euclid(m).extended_gcd(&m);
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m)
}

fn valuation(mut a: i128, p: i128, cap: u32) -> u32 {
    let mut v = 0;
    while v < cap && a % p == 0 {
        a /= p;
        v += 1;
    }
    v
}

/// Solves `A x = b` over `Z/p^k` by diagonalizing with row and column operations,
/// always pivoting on an entry of least `p`-valuation.
fn solve_prime_power(a: &[Vec<u64>], b: &[u64], p: u64, k: u32) -> Option<Vec<i128>> {
    let m = (p as i128).pow(k);
    let pp = p as i128;
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128 % m).collect()).collect();
    let mut b: Vec<i128> = b.iter().map(|&x| x as i128 % m).collect();
    let mut q: Vec<Vec<i128>> = (0..cols).map(|i| (0..cols).map(|j| i128::from(i == j)).collect()).collect();
    let mut pivots = Vec::new();
    for t in 0..rows.min(cols) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let v = valuation(x, pp, k);
                    if best.map_or(true, |(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, i, j)) = best else { break };
        a.swap(t, i);
        b.swap(t, i);
        for r in a.iter_mut() {
            r.swap(t, j);
        }
        for r in q.iter_mut() {
            r.swap(t, j);
        }
        let pv = pp.pow(v);
        let uinv = inv_mod(a[t][t] / pv, m);
        for i in t + 1..rows {
            if a[i][t] == 0 {
                continue;
            }
            let c = (a[i][t] / pv) * uinv % m;
            for j in t..cols {
                a[i][j] = (a[i][j] - c * a[t][j]).rem_euclid(m);
            }
            b[i] = (b[i] - c * b[t]).rem_euclid(m);
        }
        for j in t + 1..cols {
            if a[t][j] == 0 {
                continue;
            }
            let c = (a[t][j] / pv) * uinv % m;
            for r in a.iter_mut() {
                r[j] = (r[j] - c * r[t]).rem_euclid(m);
            }
            for r in q.iter_mut() {
                r[j] = (r[j] - c * r[t]).rem_euclid(m);
            }
        }
        pivots.push((v, uinv));
    }
    let mut y = vec![0i128; cols];
    for (t, &(v, uinv)) in pivots.iter().enumerate() {
        let pv = pp.pow(v);
        if b[t] % pv != 0 {
            return None;
        }
        y[t] = (b[t] / pv) * uinv % m;
    }
    if b[pivots.len()..].iter().any(|&x| x != 0) {
        return None;
    }
    Some((0..cols).map(|i| (0..cols).map(|j| q[i][j] * y[j]).sum::<i128>().rem_euclid(m)).collect())
}

/// A solution of `A x ≡ b (mod m)`, combining prime-power solutions by CRT.
pub fn solve_mod(a: &[Vec<u64>], b: &[u64], m: u64) -> Option<Vec<u64>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut x = vec![0i128; cols];
    let mut modulus: i128 = 1;
    for (p, k) in factor_prime_powers(m) {
        let pk = (p as i128).pow(k);
        let s = solve_prime_power(a, b, p, k)?;
        // x ≡ x (mod modulus), x ≡ s (mod pk)
        let inv = inv_mod(modulus, pk);
        for (xi, si) in x.iter_mut().zip(s) {
            let t = ((si - *xi) * inv).rem_euclid(pk);
            *xi += modulus * t;
        }
        modulus *= pk;
    }
    Some(x.into_iter().map(|v| v.rem_euclid(m.max(1) as i128) as u64).collect())
}

/// The Schur class of an `I`-stable, absolutely simple `F N`-module `V` with `N ⊴ I`,
/// as a cocycle on `I/N`.
pub struct SchurClass {
    pub quotient: GroupRef,
    pub projection: GroupHom,
    pub cocycle: Cocycle,
}

pub fn schur_class(v: &MatModule, i: &Subgroup) -> Result<SchurClass> {
    let n = v.group();
    let f = v.field();
    let a = i.ambient();
    if !n.is_subgroup_of(i) || !n.is_normal_in(i) {
        return Err(Error::Precondition("V must be a module for a normal subgroup of I".into()));
    }
    if v.dim() == 0 || v.endomorphisms().len() != 1 {
        return Err(Error::Precondition("V must be nonzero with End(V) = F".into()));
    }
    let (q, pi) = quotient_group(i, n)?;
    // one representative per coset, chosen as the least preimage
    let mut rep = vec![Elem::MAX; q.order()];
    for &x in i.elements() {
        let c = pi.apply(x) as usize;
        if rep[c] == Elem::MAX {
            rep[c] = x;
        }
    }
    let mut t = Vec::with_capacity(q.order());
    for &r in &rep {
        if r == 0 {
            t.push(Mat::identity(v.dim()));
            continue;
        }
        let conj: Vec<Mat> = n.generators().iter().map(|&s| v.matrix(a.conj(r, s)).clone()).collect();
        let w = MatModule::new(n, f, conj)?;
        let homs = v.hom_space(&w)?;
        match homs.as_slice() {
            [h] if h.is_invertible(f) => t.push(h.clone()),
            [] => return Err(Error::Precondition("V is not stable under I".into())),
            _ => return Err(Error::Precondition("V is not absolutely simple".into())),
        }
    }
    // t_x = t_r ∘ ρ(n) for x = r n; composition t_x ∘ t_y has matrix T_y T_x
    let tmat = |x: Elem| -> Mat {
        let c = pi.apply(x) as usize;
        let r = rep[c];
        let nn = a.mul(a.inv(r), x);
        v.matrix(nn).mul(&t[c], f)
    };
    let m = f.q() as u64 - 1;
    let nq = q.order();
    let mut table = vec![0u64; nq * nq];
    for xb in q.elements() {
        for yb in q.elements() {
            let (x, y) = (rep[xb as usize], rep[yb as usize]);
            let lhs = t[yb as usize].mul(&t[xb as usize], f);
            let rhs = tmat(a.mul(x, y));
            let k = rhs.data().iter().position(|&c| c != 0).expect("invertible");
            let alpha = f.div(lhs.data()[k], rhs.data()[k]);
            if lhs != rhs.scale(alpha, f) {
                return Err(Error::Precondition("intertwiners are not projectively multiplicative".into()));
            }
            table[xb as usize * nq + yb as usize] = f.log(alpha) as u64;
        }
    }
    let cocycle = Cocycle::new(&q, m, table)?;
    Ok(SchurClass { quotient: q, projection: pi, cocycle })
}

/// The Külshammer-Puig class of a self-centralizing Brauer pair `(P, e)` of `F G`:
/// the Schur class of the simple `F[P C_G(P)] e`-module on `N_G(P,e) / P C_G(P)`.
pub struct KpClass {
    pub inertia: Subgroup,
    pub base: Subgroup,
    pub schur: SchurClass,
    pub simple: MatModule,
}

pub fn kp_class(pair: &BrauerPair, g: &Subgroup, f: &FieldRef, seed: u64) -> Result<KpClass> {
    let c = pair.centralizer().clone();
    let zp = pair.p.center();
    let d = defect_group(&pair.e, f)?;
    // Z(P) is central in C_G(P), hence inside every defect group
    if d.order() != zp.order() {
        return Err(Error::Precondition("Z(P) is not a defect group of F[C_G(P)]e".into()));
    }
    let inertia = pair.stabilizer(g)?;
    let base = pair.p.join(&c);
    let (qn, pi) = quotient_group(&base, &pair.p)?;
    let qw = qn.whole();
    let mut coeffs = vec![0; qn.order()];
    for (x, v) in pair.e.support() {
        let y = pi.apply(x) as usize;
        coeffs[y] = f.add(coeffs[y], v);
    }
    let ebar = AlgElem::from_fn(&qw, |y| coeffs[y as usize]);
    let block = cut_module(&MatModule::regular(&qw, f), &ebar)?;
    let parts = decompose(&block, seed)?;
    let simple_bar = parts
        .into_iter()
        .map(|s| s.module)
        .min_by_key(|m| m.dim())
        .ok_or_else(|| Error::Precondition("block image vanishes on N/P".into()))?;
    let simple = simple_bar.inflate(&pi)?;
    let schur = schur_class(&simple, &inertia)?;
    Ok(KpClass { inertia, base, schur, simple })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::BlockSystem;
    use crate::field::Fq;
    use crate::group::Group;
    use proptest::prelude::*;

    #[test]
    fn coboundaries_are_detected() {
        let g = Group::catalog("C4").unwrap();
        let m = 6;
        let beta = [0u64, 2, 5, 1];
        let n = g.order();
        let mut table = vec![0; n * n];
        for x in g.elements() {
            for y in g.elements() {
                let v = beta[x as usize] + beta[y as usize] + m - beta[g.mul(x, y) as usize];
                table[x as usize * n + y as usize] = v % m;
            }
        }
        let c = Cocycle::new(&g, m, table).unwrap();
        assert!(c.is_coboundary());
        assert!(cohomologous(&c, &Cocycle::trivial(&g, m)).unwrap());
    }

    #[test]
    fn nontrivial_class_on_c2() {
        // α(s,s) = 1 in Z/2 is a cocycle on C2 that is not a coboundary
        let g = Group::catalog("C2").unwrap();
        let c = Cocycle::new(&g, 2, vec![0, 0, 0, 1]).unwrap();
        assert!(!c.is_coboundary());
        let c4 = Cocycle::new(&g, 4, vec![0, 0, 0, 2]).unwrap();
        assert!(c4.is_coboundary());
    }

    #[test]
    fn extendible_module_has_trivial_schur_class() {
        let gr = Group::catalog("S3").unwrap();
        let g = gr.whole();
        let f = Fq::new(2, 2).unwrap();
        let c3 = g.sylow(3);
        let reg = MatModule::regular(&g, &f).restrict(&c3).unwrap();
        for s in decompose(&reg, 0).unwrap() {
            if s.module.dim() == 1 && s.module.generator_matrices().iter().all(|m| m.get(0, 0) == 1) {
                let sc = schur_class(&s.module, &g).unwrap();
                assert!(sc.cocycle.is_coboundary());
            }
        }
    }

    #[test]
    fn faithful_character_of_the_center_of_q8_does_not_extend() {
        let gr = Group::catalog("Q8").unwrap();
        let g = gr.whole();
        assert_eq!(g.order(), 8);
        let z = g.center();
        assert_eq!(z.order(), 2);
        let f = Fq::new(3, 1).unwrap();
        let sign = MatModule::new(&z, &f, vec![Mat::scalar(1, f.from_int(-1))]).unwrap();
        let sc = schur_class(&sign, &g).unwrap();
        assert_eq!(sc.quotient.order(), 4);
        assert!(!sc.cocycle.is_coboundary());
        let triv = MatModule::trivial(&z, &f);
        assert!(schur_class(&triv, &g).unwrap().cocycle.is_coboundary());
    }

    #[test]
    fn kp_class_of_d8_principal_block_is_trivial() {
        let g = Group::catalog("D8").unwrap().whole();
        let f = Fq::new(2, 1).unwrap();
        let bs = BlockSystem::new(&g, &f);
        let b = bs.principal().unwrap();
        let max = bs.maximal_pair(&b).unwrap();
        let kp = kp_class(&max, &g, &f, 0).unwrap();
        assert_eq!(kp.schur.quotient.order(), 1);
        assert!(kp.schur.cocycle.is_coboundary());
    }

    proptest! {
        #[test]
        fn solve_mod_finds_solutions(m in 2u64..40, xs in proptest::collection::vec(0u64..40, 3), seed in 0u64..1000) {
            let rows: Vec<Vec<u64>> = (0..4u64)
                .map(|i| (0..3u64).map(|j| (seed + 7 * i + 3 * j + i * j * 11) % m).collect())
                .collect();
            let b: Vec<u64> = rows.iter().map(|r| r.iter().zip(&xs).map(|(a, x)| a * x).sum::<u64>() % m).collect();
            let sol = solve_mod(&rows, &b, m).expect("consistent system");
            for (r, bi) in rows.iter().zip(&b) {
                prop_assert_eq!(r.iter().zip(&sol).map(|(a, x)| a * x).sum::<u64>() % m, *bi);
            }
        }
    }
}
