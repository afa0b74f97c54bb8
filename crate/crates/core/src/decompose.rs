//! Krull–Schmidt decomposition of modules over a field.
//!
//! Random endomorphisms whose characteristic polynomial has two coprime
//! factors split the module by Fitting's lemma. A summand is declared
//! indecomposable only once its endomorphism ring is certified local: the
//! elements `e - λ(e)` span a nilpotent ideal of codimension one.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Fe, Fq};
use crate::linalg::{Mat, Subspace};
use crate::module::MatModule;
use crate::poly;

const TRIALS: usize = 48;

/// An indecomposable summand with its basis in the coordinates of the decomposed module.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: MatModule,
    pub basis: Mat,
}

enum Outcome {
    Split(Subspace, Subspace),
    Local,
}

fn random_endo<R: Rng>(basis: &[Mat], d: usize, f: &Fq, rng: &mut R) -> Mat {
    let mut m = Mat::zeros(d, d);
    for b in basis {
        let c: Fe = rng.gen_range(0..f.q()) as Fe;
        if c != 0 {
            m.add_scaled(c, b, f);
        }
    }
    m
}

/// Fitting split along the primary component of `g` in the characteristic polynomial of `phi`.
fn fitting(phi: &Mat, g: &[Fe], f: &Fq) -> (Subspace, Subspace) {
    let d = phi.rows();
    let psi = phi.eval_poly(g, f).pow(d as u64, f);
    let ker = Subspace::span(&psi.left_kernel(f), f);
    let im = Subspace::span(&psi, f);
    (ker, im)
}

fn try_split(phi: &Mat, f: &Fq, rng: &mut ChaCha8Rng) -> Option<(Subspace, Subspace)> {
    let chi = phi.char_poly(f);
    let fac = poly::factor(f, &chi, rng);
    if fac.len() < 2 {
        return None;
    }
    let g = &fac[0].0;
    let (k, i) = fitting(phi, g, f);
    (k.dim() > 0 && i.dim() > 0).then_some((k, i))
}

fn is_nilpotent_ideal(gens: &[Mat], d: usize, f: &Fq) -> bool {
    // N^k -> 0, tracked through the span of products
    let flat = |m: &Mat| m.data().to_vec();
    let mut cur: Vec<Mat> = gens.to_vec();
    for _ in 0..=d {
        if cur.is_empty() {
            return true;
        }
        let mut span = Subspace::zero(d * d);
        let mut next = Vec::new();
        for a in &cur {
            for b in gens {
                let p = a.mul(b, f);
                if span.insert(&flat(&p), f) {
                    next.push(p);
                }
            }
        }
        cur = next;
    }
    cur.is_empty()
}

fn analyse(m: &MatModule, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let f = m.field();
    let d = m.dim();
    let ends = m.endomorphisms();
    if ends.len() <= 1 {
        return Ok(Outcome::Local);
    }
    let mut nonsplit = false;
    let mut nil = Vec::with_capacity(ends.len());
    for e in &ends {
        if let Some(s) = try_split(e, f, rng) {
            return Ok(Outcome::Split(s.0, s.1));
        }
        let chi = e.char_poly(f);
        let fac = poly::factor(f, &chi, rng);
        let (g, _) = &fac[0];
        if g.len() != 2 {
            nonsplit = true;
            continue;
        }
        // g = x + c, eigenvalue -c
        let lam = f.neg(g[0]);
        let n = e.sub(&Mat::scalar(d, lam), f);
        if !n.is_zero() {
            nil.push(n);
        }
    }
    for _ in 0..TRIALS {
        let phi = random_endo(&ends, d, f, rng);
        if let Some(s) = try_split(&phi, f, rng) {
            return Ok(Outcome::Split(s.0, s.1));
        }
    }
    if nonsplit {
        return Err(Error::NotSplit(format!(
            "endomorphism ring of a {d}-dimensional summand has a nonlinear residue field over F_{}",
            f.q()
        )));
    }
    let flat: Vec<Vec<Fe>> = nil.iter().map(|x| x.data().to_vec()).collect();
    let nspan = Subspace::span(&Mat::from_rows(d * d, &flat), f);
    if nspan.dim() + 1 == ends.len() && is_nilpotent_ideal(&nil, d, f) {
        return Ok(Outcome::Local);
    }
    Err(Error::DecompositionFailed { trials: TRIALS, seed: 0 })
}

/// Indecomposable summands of `m`, each with its embedding basis.
pub fn decompose(m: &MatModule, seed: u64) -> Result<Vec<Summand>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = m.field();
    let mut out = Vec::new();
    let mut stack = vec![(m.clone(), Mat::identity(m.dim()))];
    while let Some((cur, basis)) = stack.pop() {
        if cur.dim() == 0 {
            continue;
        }
        match analyse(&cur, &mut rng).map_err(|e| match e {
            Error::DecompositionFailed { trials, .. } => Error::DecompositionFailed { trials, seed },
            other => other,
        })? {
            Outcome::Local => out.push(Summand { module: cur, basis }),
            Outcome::Split(a, b) => {
                for s in [a, b] {
                    let sub = cur.submodule(&s);
                    let emb = s.basis().mul(&basis, f);
                    stack.push((sub, emb));
                }
            }
        }
    }
    out.sort_by_key(|s| s.module.dim());
    Ok(out)
}

pub fn is_indecomposable(m: &MatModule, seed: u64) -> Result<bool> {
    if m.dim() == 0 {
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(matches!(analyse(m, &mut rng)?, Outcome::Local))
}

/// Isomorphism of indecomposables: some basis element of `Hom(u, v)` is invertible.
pub fn indecomposables_isomorphic(u: &MatModule, v: &MatModule) -> Result<bool> {
    if u.dim() != v.dim() {
        return Ok(false);
    }
    let f = u.field();
    Ok(u.hom_space(v)?.iter().any(|h| h.is_invertible(f)))
}

/// Isomorphism classes of the summands, represented as (representative, multiplicity).
pub fn isotypic_components(parts: &[Summand]) -> Result<Vec<(MatModule, usize)>> {
    let mut classes: Vec<(MatModule, usize)> = Vec::new();
    'next: for s in parts {
        for c in classes.iter_mut() {
            if indecomposables_isomorphic(&c.0, &s.module)? {
                c.1 += 1;
                continue 'next;
            }
        }
        classes.push((s.module.clone(), 1));
    }
    Ok(classes)
}

pub fn is_isomorphic(a: &MatModule, b: &MatModule, seed: u64) -> Result<bool> {
    if a.dim() != b.dim() || a.group() != b.group() {
        return Ok(false);
    }
    if a.dim() == 0 {
        return Ok(true);
    }
    let f = a.field();
    // equal Hom dimensions against both sides are necessary
    let hab = a.hom_space(b)?;
    if hab.iter().any(|h| h.is_invertible(f)) {
        return Ok(true);
    }
    let pa = decompose(a, seed)?;
    let pb = decompose(b, seed.wrapping_add(1))?;
    if pa.len() != pb.len() {
        return Ok(false);
    }
    let mut used = vec![false; pb.len()];
    for s in &pa {
        let mut found = false;
        for (j, t) in pb.iter().enumerate() {
            if !used[j] && indecomposables_isomorphic(&s.module, &t.module)? {
                used[j] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the indecomposable `u` is isomorphic to a direct summand of `m`.
pub fn is_summand_of(u: &MatModule, m: &MatModule, seed: u64) -> Result<bool> {
    if u.dim() > m.dim() {
        return Ok(false);
    }
    for s in decompose(m, seed)? {
        if indecomposables_isomorphic(u, &s.module)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fq;
    use crate::group::Group;

    #[test]
    fn regular_s3_in_char_two() {
        // F S3 = P(1) ⊕ P(2)^2 with dims 2 and 2
        let g = Group::catalog("S3").unwrap();
        let f = Fq::new(2, 2).unwrap();
        let reg = MatModule::regular(&g.whole(), &f);
        let parts = decompose(&reg, 3).unwrap();
        assert_eq!(parts.iter().map(|s| s.module.dim()).collect::<Vec<_>>(), vec![2, 2, 2]);
        let classes = isotypic_components(&parts).unwrap();
        let mut mult: Vec<usize> = classes.iter().map(|c| c.1).collect();
        mult.sort();
        assert_eq!(mult, vec![1, 2]);
    }

    #[test]
    fn two_group_permutation_modules_are_indecomposable() {
        let g = Group::catalog("D8").unwrap();
        let w = g.whole();
        let f = Fq::new(2, 1).unwrap();
        for q in w.p_subgroups_up_to_conjugacy(2) {
            let m = MatModule::coset_module(&w, &q, &f).unwrap();
            assert!(is_indecomposable(&m, 1).unwrap());
        }
    }

    #[test]
    fn summand_bases_reassemble() {
        let g = Group::catalog("A4").unwrap();
        let f = Fq::new(2, 2).unwrap();
        let reg = MatModule::regular(&g.whole(), &f);
        let parts = decompose(&reg, 9).unwrap();
        let mut all = Mat::zeros(0, reg.dim());
        for p in &parts {
            all = all.vstack(&p.basis);
            assert!(reg.is_submodule(&Subspace::span(&p.basis, &f)));
        }
        assert_eq!(all.rank(&f), reg.dim());
        // three projective indecomposables of dimension 4
        assert_eq!(parts.iter().map(|s| s.module.dim()).collect::<Vec<_>>(), vec![4, 4, 4]);
    }

    #[test]
    fn non_split_residue_field_is_reported() {
        // C3 acting on F_2^2 by an element of order 3: simple with End = F_4
        let g = Group::catalog("C3").unwrap();
        let f = Fq::new(2, 1).unwrap();
        let r = Mat::from_rows(2, &[vec![0, 1], vec![1, 1]]);
        let m = MatModule::new(&g.whole(), &f, vec![r]).unwrap();
        let m2 = MatModule::direct_sum(&[m.clone(), m]).unwrap();
        assert!(matches!(decompose(&m2, 0), Err(Error::NotSplit(_))));
    }
}
