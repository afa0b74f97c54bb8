//! Blocks of `F_q S`: primitive central idempotents, the Brauer homomorphism,
//! defect groups, Brauer pairs and the fusion system of a block.

use std::collections::HashMap;

use crate::algebra::{AlgElem, Center};
use crate::error::{Error, Result};
use crate::field::{Fe, FieldRef};
use crate::group::{Elem, GroupHom, Subgroup};
use crate::linalg::{Mat, Subspace};
use crate::module::MatModule;
use crate::poly;

/// The primitive idempotents of `Z(F_q S)`, ordered by support size and then
/// by coefficient vector.
///
/// Idempotents are split off by CRT polynomials in class sums; a summand `eZ` is
/// accepted as local once every class sum acts on it with a single eigenvalue in
/// `F_q`, which makes `eZ = F e + (nilpotents)` because `Z` is commutative.
pub fn block_idempotents(s: &Subgroup, f: &FieldRef) -> Result<Vec<AlgElem>> {
    let z = Center::new(s, f);
    let c = z.dim();
    let mut one = vec![0; c];
    one[0] = 1;
    let mut pending = vec![one];
    let mut done: Vec<Vec<Fe>> = Vec::new();
    'outer: while let Some(e) = pending.pop() {
        // basis of eZ
        let me = z.mul_matrix(&e);
        let ez = Subspace::span(&me, f);
        let d = ez.dim();
        for j in 0..c {
            let mut kj = vec![0; c];
            kj[j] = 1;
            let x = z.mul(&kj, &e);
            // x acting on eZ in echelon coordinates
            let rows: Vec<Vec<Fe>> = (0..d).map(|i| ez.coordinates(&z.mul(ez.basis().row(i), &x))).collect();
            let m = Mat::from_rows(d, &rows);
            let cp = m.char_poly(f);
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(j as u64);
            let factors = poly::factor(f, &cp, &mut rng);
            if factors.len() == 1 {
                if poly::degree(&factors[0].0) != Some(1) {
                    return Err(Error::NotSplit(format!("center of a group of order {}", s.order())));
                }
                continue;
            }
            for (g, mult) in &factors {
                let gm = (0..*mult).fold(vec![1], |acc, _| poly::mul(f, &acc, g));
                let rest = poly::divrem(f, &cp, &gm).0;
                // u ≡ 1 mod g^m and u ≡ 0 mod rest: u = rest · (rest⁻¹ mod g^m)
                let inv = poly_inverse_mod(f, &rest, &gm);
                let u = poly::rem(f, &poly::mul(f, &rest, &inv), &cp);
                pending.push(eval_in_center(&z, &u, &x, &e, f));
            }
            continue 'outer;
        }
        done.push(e);
    }
    let mut out: Vec<AlgElem> = done.iter().map(|e| z.element(e)).collect();
    out.sort_by(|a, b| (a.support_size(), a.coefficients()).cmp(&(b.support_size(), b.coefficients())));
    Ok(out)
}

fn poly_inverse_mod(f: &FieldRef, a: &[Fe], m: &[Fe]) -> Vec<Fe> {
    // extended Euclid
    let (mut r0, mut r1) = (m.to_vec(), poly::rem(f, a, m));
    let (mut s0, mut s1): (Vec<Fe>, Vec<Fe>) = (vec![], vec![1]);
    while poly::degree(&r1).is_some() {
        let (q, r) = poly::divrem(f, &r0, &r1);
        let s2 = poly::sub(f, &s0, &poly::mul(f, &q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    let c = f.inv(*poly::trim(r0).last().expect("coprime"));
    poly::rem(f, &poly::scale(f, &s0, c), m)
}

/// `u(x)` in the unital algebra `eZ`, the constant term standing for `e`.
fn eval_in_center(z: &Center, u: &[Fe], x: &[Fe], e: &[Fe], f: &FieldRef) -> Vec<Fe> {
    let c = z.dim();
    let mut acc = vec![0; c];
    for &coef in u.iter().rev() {
        acc = z.mul(&acc, x);
        for k in 0..c {
            acc[k] = f.add(acc[k], f.mul(coef, e[k]));
        }
    }
    acc
}

/// `br_P(a)`: truncation of a `P`-fixed element of `F S` to `F[C_S(P)]`.
pub fn brauer_hom(a: &AlgElem, p: &Subgroup) -> Result<AlgElem> {
    if !a.is_fixed_by(p.generators()) {
        return Err(Error::Precondition("element is not P-fixed".into()));
    }
    let c = a.group().centralizer(p)?;
    a.truncate(&c)
}

/// Whether `e ∈ tr_D^S((F S)^D)`, by a linear solve in class coordinates.
///
/// `tr_D^S` of the `D`-orbit sum of `x` is `[C_S(x) : C_D(x)] K_x`.
pub fn in_trace_image(e: &AlgElem, d: &Subgroup, f: &FieldRef) -> Result<bool> {
    let s = e.group();
    let z = Center::new(s, f);
    let coords = z.coordinates(e)?;
    let a = s.ambient();
    let c = z.dim();
    let mut span = Subspace::zero(c);
    for (k, cl) in s.conjugacy_classes().iter().enumerate() {
        for &x in &cl.members {
            let cs = s.centralizer_of_gens(&[x]).order();
            let cd = d.elements().iter().filter(|&&y| a.mul(x, y) == a.mul(y, x)).count();
            if (cs / cd) as u64 % f.p() != 0 {
                let mut v = vec![0; c];
                v[k] = 1;
                span.insert(&v, f);
                break;
            }
        }
    }
    Ok(span.contains(&coords, f))
}

/// A defect group of the block with idempotent `e`: the `p`-subgroup class
/// minimal with `e ∈ tr_D^S((F S)^D)`.
pub fn defect_group(e: &AlgElem, f: &FieldRef) -> Result<Subgroup> {
    let s = e.group();
    let reps = s.p_subgroups_up_to_conjugacy(f.p());
    let mut hits = Vec::new();
    for d in &reps {
        if in_trace_image(e, d, f)? {
            hits.push(d.clone());
        }
    }
    let contained = |a: &Subgroup, b: &Subgroup| {
        a.order() <= b.order() && s.elements().iter().any(|&g| a.conjugate(g).is_subgroup_of(b))
    };
    let minimal: Vec<&Subgroup> = hits
        .iter()
        .filter(|d| !hits.iter().any(|o| o.order() < d.order() && contained(o, d)))
        .collect();
    match minimal.as_slice() {
        [d] => {
            debug_assert!(hits.iter().all(|h| contained(d, h)));
            Ok((*d).clone())
        }
        [] => Err(Error::Precondition("not a block idempotent".into())),
        _ => Err(Error::Precondition("minimal trace subgroups are not conjugate".into())),
    }
}

/// A Brauer pair `(P, e)` with `e` a block idempotent of `F[C_S(P)]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BrauerPair {
    pub p: Subgroup,
    pub e: AlgElem,
}

impl BrauerPair {
    pub fn centralizer(&self) -> &Subgroup {
        self.e.group()
    }

    pub fn conjugate(&self, g: Elem) -> BrauerPair {
        BrauerPair { p: self.p.conjugate(g), e: self.e.conjugate(g) }
    }

    /// `N_S(P, e)`.
    pub fn stabilizer(&self, s: &Subgroup) -> Result<Subgroup> {
        let n = s.normalizer(&self.p)?;
        let a = s.ambient();
        let elems: Vec<Elem> = n
            .elements()
            .iter()
            .copied()
            .filter(|&g| self.e.support().all(|(x, c)| self.e.coeff(a.conj(g, x)) == c))
            .collect();
        Subgroup::from_elements(a, &elems)
    }

    /// `(self) ⊴ (other)`: `Q ≤ P ≤ N(Q, f)` and `br_P(f) e = e`.
    pub fn is_normal_subpair_of(&self, other: &BrauerPair, f: &FieldRef) -> Result<bool> {
        if !self.p.is_subgroup_of(&other.p) || !self.p.is_normal_in(&other.p) {
            return Ok(false);
        }
        if !self.e.is_fixed_by(other.p.generators()) {
            return Ok(false);
        }
        let b = brauer_hom(&self.e, &other.p)?;
        Ok(b.mul(&other.e, f)? == other.e)
    }
}

/// Blocks of `F S` together with a cache of blocks of `p`-local centralizers.
pub struct BlockSystem {
    group: Subgroup,
    field: FieldRef,
    cache: std::sync::Mutex<HashMap<Subgroup, Vec<AlgElem>>>,
}

impl BlockSystem {
    pub fn new(group: &Subgroup, field: &FieldRef) -> BlockSystem {
        BlockSystem { group: group.clone(), field: field.clone(), cache: Default::default() }
    }

    pub fn group(&self) -> &Subgroup {
        &self.group
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    /// Block idempotents of `F T` for a subgroup `T`, memoized.
    pub fn blocks_of(&self, t: &Subgroup) -> Result<Vec<AlgElem>> {
        if let Some(b) = self.cache.lock().unwrap().get(t) {
            return Ok(b.clone());
        }
        let b = if t.is_p_group(self.field.p()) {
            vec![AlgElem::one(t)]
        } else {
            block_idempotents(t, &self.field)?
        };
        self.cache.lock().unwrap().insert(t.clone(), b.clone());
        Ok(b)
    }

    pub fn blocks(&self) -> Result<Vec<AlgElem>> {
        self.blocks_of(&self.group)
    }

    /// Blocks of `F[C_S(P)]`.
    pub fn local_blocks(&self, p: &Subgroup) -> Result<Vec<AlgElem>> {
        self.blocks_of(&self.group.centralizer(p)?)
    }

    /// The principal block: the one not annihilated by the augmentation.
    pub fn principal(&self) -> Result<AlgElem> {
        let f = &self.field;
        for b in self.blocks()? {
            let aug = b.support().fold(0, |acc, (_, c)| f.add(acc, c));
            if aug != 0 {
                return Ok(b);
            }
        }
        Err(Error::Precondition("no principal block".into()))
    }

    /// Whether `(P, d)` belongs to the block of `e`, i.e. `br_P(e) d ≠ 0`.
    pub fn pair_in_block(&self, e: &AlgElem, pair: &BrauerPair) -> Result<bool> {
        let b = brauer_hom(e, &pair.p)?;
        Ok(!b.mul(&pair.e, &self.field)?.is_zero())
    }

    /// Representatives of the `S`-classes of Brauer pairs, optionally of one block.
    pub fn brauer_pairs(&self, block: Option<&AlgElem>) -> Result<Vec<BrauerPair>> {
        let s = &self.group;
        let mut out = Vec::new();
        for p in s.p_subgroups_up_to_conjugacy(self.field.p()) {
            let n = s.normalizer(&p)?;
            let mut reps: Vec<AlgElem> = Vec::new();
            for b in self.local_blocks(&p)? {
                if reps.iter().any(|r| n.elements().iter().any(|&g| &r.conjugate(g) == &b)) {
                    continue;
                }
                reps.push(b);
            }
            for b in reps {
                let pair = BrauerPair { p: p.clone(), e: b };
                if let Some(e) = block {
                    if !self.pair_in_block(e, &pair)? {
                        continue;
                    }
                }
                out.push(pair);
            }
        }
        Ok(out)
    }

    /// All Brauer pairs (no conjugacy reduction) at subgroups of `d`, optionally of one block.
    pub fn pairs_below(&self, d: &Subgroup, block: Option<&AlgElem>) -> Result<Vec<BrauerPair>> {
        let mut out = Vec::new();
        for q in d.all_subgroups_of_p_group(self.field.p())? {
            for b in self.local_blocks(&q)? {
                let pair = BrauerPair { p: q.clone(), e: b };
                if let Some(e) = block {
                    if !self.pair_in_block(e, &pair)? {
                        continue;
                    }
                }
                out.push(pair);
            }
        }
        Ok(out)
    }

    /// The unique `(Q, f) ≤ (P, e)` for `Q ≤ P`.
    pub fn subpair(&self, pair: &BrauerPair, q: &Subgroup) -> Result<BrauerPair> {
        if !q.is_subgroup_of(&pair.p) {
            return Err(Error::NotContained("subpair at a non-subgroup".into()));
        }
        let mut chain = vec![q.clone()];
        while chain.last().unwrap() != &pair.p {
            let n = pair.p.normalizer(chain.last().unwrap())?;
            chain.push(n);
        }
        let mut cur = pair.clone();
        for qi in chain.iter().rev().skip(1) {
            let cands: Vec<AlgElem> = self
                .local_blocks(qi)?
                .into_iter()
                .filter(|b| {
                    BrauerPair { p: qi.clone(), e: b.clone() }
                        .is_normal_subpair_of(&cur, &self.field)
                        .unwrap_or(false)
                })
                .collect();
            if cands.len() != 1 {
                return Err(Error::Precondition(format!(
                    "{} candidate subpairs found at a subgroup of order {}",
                    cands.len(),
                    qi.order()
                )));
            }
            cur = BrauerPair { p: qi.clone(), e: cands.into_iter().next().unwrap() };
        }
        Ok(cur)
    }

    /// `a ≤ b` in the Brauer-pair poset.
    pub fn pair_leq(&self, a: &BrauerPair, b: &BrauerPair) -> Result<bool> {
        if !a.p.is_subgroup_of(&b.p) {
            return Ok(false);
        }
        Ok(&self.subpair(b, &a.p)? == a)
    }

    /// Some `g ∈ S` with `^g a = b`.
    pub fn pair_conjugacy_witness(&self, a: &BrauerPair, b: &BrauerPair) -> Option<Elem> {
        if a.p.order() != b.p.order() {
            return None;
        }
        self.group.elements().iter().copied().find(|&g| &a.conjugate(g) == b)
    }

    /// A maximal Brauer pair of the block `e`, deterministic: least pair at the
    /// least defect-group representative.
    pub fn maximal_pair(&self, e: &AlgElem) -> Result<BrauerPair> {
        let d = defect_group(e, &self.field)?;
        let mut cands: Vec<AlgElem> = self
            .local_blocks(&d)?
            .into_iter()
            .filter(|b| self.pair_in_block(e, &BrauerPair { p: d.clone(), e: b.clone() }).unwrap_or(false))
            .collect();
        cands.sort_by(|a, b| a.coefficients().cmp(b.coefficients()));
        cands
            .into_iter()
            .next()
            .map(|b| BrauerPair { p: d, e: b })
            .ok_or_else(|| Error::Precondition("no Brauer pair at the defect group".into()))
    }

    /// The fusion system of a block on the first component of a maximal pair.
    pub fn fusion_system(&self, block: &AlgElem, maximal: &BrauerPair) -> Result<FusionSystem> {
        let d = defect_group(block, &self.field)?;
        if maximal.p.order() != d.order() || !self.pair_in_block(block, maximal)? {
            return Err(Error::Precondition("pair is not a maximal pair of the block".into()));
        }
        let subgroups = maximal.p.all_subgroups_of_p_group(self.field.p())?;
        let mut local = HashMap::new();
        for q in &subgroups {
            local.insert(q.clone(), self.subpair(maximal, q)?.e);
        }
        Ok(FusionSystem { group: self.group.clone(), base: maximal.clone(), subgroups, local })
    }
}

/// The fusion system of a block relative to a maximal Brauer pair `(D, e_D)`.
pub struct FusionSystem {
    group: Subgroup,
    base: BrauerPair,
    subgroups: Vec<Subgroup>,
    local: HashMap<Subgroup, AlgElem>,
}

impl FusionSystem {
    pub fn base(&self) -> &Subgroup {
        &self.base.p
    }

    pub fn maximal_pair(&self) -> &BrauerPair {
        &self.base
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    /// `e_Q` with `(Q, e_Q) ≤ (D, e_D)`.
    pub fn local_block(&self, q: &Subgroup) -> Result<&AlgElem> {
        self.local.get(q).ok_or_else(|| Error::NotContained("subgroup of the base".into()))
    }

    pub fn local_pair(&self, q: &Subgroup) -> Result<BrauerPair> {
        Ok(BrauerPair { p: q.clone(), e: self.local_block(q)?.clone() })
    }

    /// Elements `g ∈ S` with `^g (Q, e_Q) ≤ (R, e_R)`.
    pub fn transporter(&self, q: &Subgroup, r: &Subgroup) -> Result<Vec<Elem>> {
        let eq = self.local_block(q)?;
        let mut out = Vec::new();
        for &g in self.group.elements() {
            let qg = q.conjugate(g);
            if !qg.is_subgroup_of(r) {
                continue;
            }
            if &eq.conjugate(g) == self.local_block(&qg)? {
                out.push(g);
            }
        }
        Ok(out)
    }

    /// `Hom_F(Q, R)` as distinct conjugation maps `c_g: Q → R`.
    pub fn hom(&self, q: &Subgroup, r: &Subgroup) -> Result<Vec<GroupHom>> {
        let a = self.group.ambient();
        let mut seen: HashMap<Vec<Elem>, GroupHom> = HashMap::new();
        for g in self.transporter(q, r)? {
            let images: Vec<Elem> = q.elements().iter().map(|&x| a.conj(g, x)).collect();
            if !seen.contains_key(&images) {
                let h = GroupHom::from_fn(q, r, |x| a.conj(g, x))?;
                seen.insert(images, h);
            }
        }
        let mut out: Vec<(Vec<Elem>, GroupHom)> = seen.into_iter().collect();
        out.sort_by(|x, y| x.0.cmp(&y.0));
        Ok(out.into_iter().map(|(_, h)| h).collect())
    }

    pub fn aut(&self, q: &Subgroup) -> Result<Vec<GroupHom>> {
        self.hom(q, q)
    }

    /// Subgroups of the base that are `F`-isomorphic to `q`.
    pub fn iso_class(&self, q: &Subgroup) -> Result<Vec<Subgroup>> {
        let mut out: Vec<Subgroup> = Vec::new();
        for r in self.subgroups.iter().filter(|r| r.order() == q.order()) {
            if !self.transporter(q, r)?.is_empty() && !out.contains(r) {
                out.push(r.clone());
            }
        }
        Ok(out)
    }

    pub fn is_fully_centralized(&self, q: &Subgroup) -> Result<bool> {
        let d = self.base();
        let own = d.centralizer(q)?.order();
        for r in self.iso_class(q)? {
            if d.centralizer(&r)?.order() > own {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_fully_normalized(&self, q: &Subgroup) -> Result<bool> {
        let d = self.base();
        let own = d.normalizer(q)?.order();
        for r in self.iso_class(q)? {
            if d.normalizer(&r)?.order() > own {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `C_D(Q') = Z(Q')` for every `Q'` that is `F`-isomorphic to `Q`.
    pub fn is_centric(&self, q: &Subgroup) -> Result<bool> {
        let d = self.base();
        for r in self.iso_class(q)? {
            if d.centralizer(&r)? != r.center() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `e M` for an idempotent `e` fixed by the acting group of `M`.
pub fn cut_module(m: &MatModule, e: &AlgElem) -> Result<MatModule> {
    if e.is_one() {
        return Ok(m.clone());
    }
    if !e.is_fixed_by(m.group().generators()) {
        return Err(Error::Precondition("cutting idempotent is not fixed by the acting group".into()));
    }
    let a = e.action_matrix(m)?;
    let img = Subspace::span(&a, m.field());
    Ok(m.submodule(&img))
}

/// `M`-Brauer pairs `(P, e)` with `e M(P) ≠ 0`, up to `S`-conjugacy.
pub fn m_brauer_pairs(m: &MatModule, blocks: &BlockSystem) -> Result<Vec<BrauerPair>> {
    let mut out = Vec::new();
    for pair in blocks.brauer_pairs(None)? {
        if pair_nonzero_on(m, &pair)? {
            out.push(pair);
        }
    }
    Ok(out)
}

/// Whether `e M(P) ≠ 0`.
pub fn pair_nonzero_on(m: &MatModule, pair: &BrauerPair) -> Result<bool> {
    let mp = m.brauer_construction(&pair.p)?;
    if mp.dim() == 0 {
        return Ok(false);
    }
    if pair.e.is_one() {
        return Ok(true);
    }
    let res = mp.restrict(pair.e.group())?;
    Ok(!pair.e.action_matrix(&res)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fq;
    use crate::group::Group;

    fn is_idem(e: &AlgElem, f: &FieldRef) -> bool {
        &e.mul(e, f).unwrap() == e
    }

    #[test]
    fn s3_in_characteristic_two() {
        let g = Group::catalog("S3").unwrap().whole();
        let f = Fq::new(2, 2).unwrap();
        let bs = block_idempotents(&g, &f).unwrap();
        assert_eq!(bs.len(), 2);
        let mut sum = AlgElem::zero(&g);
        for b in &bs {
            assert!(is_idem(b, &f) && b.is_central());
            sum = sum.add(b, &f).unwrap();
        }
        assert!(sum.is_one());
        assert!(bs[0].mul(&bs[1], &f).unwrap().is_zero());
        let orders: Vec<usize> = bs.iter().map(|b| defect_group(b, &f).unwrap().order()).collect();
        let mut sorted = orders.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 2]);
    }

    #[test]
    fn p_groups_have_one_block_with_full_defect() {
        let g = Group::catalog("D8").unwrap().whole();
        let f = Fq::new(2, 1).unwrap();
        let bs = block_idempotents(&g, &f).unwrap();
        assert_eq!(bs.len(), 1);
        assert!(bs[0].is_one());
        assert_eq!(defect_group(&bs[0], &f).unwrap(), g);
    }

    #[test]
    fn a4_and_s4_at_two() {
        let f = Fq::new(2, 2).unwrap();
        let a4 = Group::catalog("A4").unwrap().whole();
        let bs = block_idempotents(&a4, &f).unwrap();
        assert_eq!(bs.len(), 1);
        assert_eq!(defect_group(&bs[0], &f).unwrap().order(), 4);
        let s4 = Group::catalog("S4").unwrap().whole();
        assert_eq!(block_idempotents(&s4, &f).unwrap().len(), 1);
    }

    #[test]
    fn s3_at_three_brauer_pairs_and_fusion() {
        let g = Group::catalog("S3").unwrap().whole();
        let f = Fq::new(3, 1).unwrap();
        let sys = BlockSystem::new(&g, &f);
        let bs = sys.blocks().unwrap();
        assert_eq!(bs.len(), 1);
        let pairs = sys.brauer_pairs(Some(&bs[0])).unwrap();
        assert_eq!(pairs.len(), 2);
        let max = sys.maximal_pair(&bs[0]).unwrap();
        assert_eq!(max.p.order(), 3);
        assert!(!brauer_hom(&bs[0], &max.p).unwrap().is_zero());
        let fs = sys.fusion_system(&bs[0], &max).unwrap();
        // N_G(C3)/C_G(C3) has order 2
        assert_eq!(fs.aut(&max.p).unwrap().len(), 2);
        let one = g.ambient().trivial_subgroup();
        assert_eq!(sys.subpair(&max, &one).unwrap().e, bs[0]);
    }

    #[test]
    fn d8_fusion_is_inner() {
        let gr = Group::catalog("D8").unwrap();
        let g = gr.whole();
        let f = Fq::new(2, 1).unwrap();
        let sys = BlockSystem::new(&g, &f);
        let b = sys.principal().unwrap();
        let max = sys.maximal_pair(&b).unwrap();
        let fs = sys.fusion_system(&b, &max).unwrap();
        for q in fs.subgroups() {
            let n = g.normalizer(q).unwrap();
            let c = g.centralizer(q).unwrap();
            assert_eq!(fs.aut(q).unwrap().len(), n.order() / c.order());
            let centric = g.centralizer(q).unwrap() == q.center();
            assert_eq!(fs.is_centric(q).unwrap(), centric);
            assert!(fs.is_fully_centralized(q).unwrap());
        }
    }
}
