//! Virtual `p`-permutation modules: integer combinations of modules, their
//! Brauer constructions and duals, ghost vectors, and coordinates in the basis
//! of indecomposable modules.

use std::collections::HashSet;

use serde::Serialize;

use crate::algebra::{tensor_dual, AlgElem};
use crate::blocks::{cut_module, BlockSystem, BrauerPair};
use crate::character::{brauer_character, ClassFunction, ClassValueJson};
use crate::decompose::{decompose, indecomposables_isomorphic};
use crate::error::{Error, Result};
use crate::field::FieldRef;
use crate::group::{injective_homs, Elem, GroupHom, Subgroup};
use crate::module::MatModule;
use crate::product::Product;
use crate::tensor::tensor_over_group;

/// `Σ c_i [M_i]` over a fixed acting group.
#[derive(Clone, Debug)]
pub struct VirtualModule {
    group: Subgroup,
    field: FieldRef,
    terms: Vec<(i64, MatModule)>,
}

impl VirtualModule {
    pub fn zero(group: &Subgroup, field: &FieldRef) -> VirtualModule {
        VirtualModule { group: group.clone(), field: field.clone(), terms: Vec::new() }
    }

    pub fn from_module(m: &MatModule) -> VirtualModule {
        VirtualModule { group: m.group().clone(), field: m.field().clone(), terms: vec![(1, m.clone())] }
    }

    pub fn from_terms(group: &Subgroup, field: &FieldRef, terms: Vec<(i64, MatModule)>) -> Result<VirtualModule> {
        let mut v = VirtualModule::zero(group, field);
        for (c, m) in terms {
            v.push(c, m)?;
        }
        Ok(v)
    }

    pub fn push(&mut self, c: i64, m: MatModule) -> Result<()> {
        if m.group() != &self.group {
            return Err(Error::Mismatch("virtual module terms over different groups".into()));
        }
        if c != 0 && m.dim() != 0 {
            self.terms.push((c, m));
        }
        Ok(())
    }

    pub fn group(&self) -> &Subgroup {
        &self.group
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn terms(&self) -> &[(i64, MatModule)] {
        &self.terms
    }

    pub fn is_formally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Virtual dimension.
    pub fn dim(&self) -> i64 {
        self.terms.iter().map(|(c, m)| c * m.dim() as i64).sum()
    }

    pub fn add(&self, other: &VirtualModule) -> Result<VirtualModule> {
        let mut v = self.clone();
        for (c, m) in &other.terms {
            v.push(*c, m.clone())?;
        }
        Ok(v)
    }

    pub fn scale(&self, k: i64) -> VirtualModule {
        let terms = if k == 0 { Vec::new() } else { self.terms.iter().map(|(c, m)| (c * k, m.clone())).collect() };
        VirtualModule { group: self.group.clone(), field: self.field.clone(), terms }
    }

    pub fn neg(&self) -> VirtualModule {
        self.scale(-1)
    }

    pub fn sub(&self, other: &VirtualModule) -> Result<VirtualModule> {
        self.add(&other.neg())
    }

    /// Termwise `e M` for an idempotent fixed by the acting group.
    pub fn cut(&self, e: &AlgElem) -> Result<VirtualModule> {
        let mut v = VirtualModule::zero(&self.group, &self.field);
        for (c, m) in &self.terms {
            v.push(*c, cut_module(m, e)?)?;
        }
        Ok(v)
    }

    pub fn restrict(&self, s: &Subgroup) -> Result<VirtualModule> {
        let mut v = VirtualModule::zero(s, &self.field);
        for (c, m) in &self.terms {
            v.push(*c, m.restrict(s)?)?;
        }
        Ok(v)
    }

    pub fn induce(&self, s: &Subgroup) -> Result<VirtualModule> {
        let mut v = VirtualModule::zero(s, &self.field);
        for (c, m) in &self.terms {
            v.push(*c, m.induce(s)?)?;
        }
        Ok(v)
    }

    /// `ω(P)` as a virtual module for `N(P)`; with `cut = Some(e)` the result is
    /// `e ω(P)` over `N(P, e)`.
    pub fn brauer_construction(&self, p: &Subgroup, cut: Option<&AlgElem>) -> Result<VirtualModule> {
        let n = match cut {
            Some(e) => BrauerPair { p: p.clone(), e: e.clone() }.stabilizer(&self.group)?,
            None => self.group.normalizer(p)?,
        };
        let mut v = VirtualModule::zero(&n, &self.field);
        for (c, m) in &self.terms {
            let b = m.brauer_construction(p)?.restrict(&n)?;
            let b = match cut {
                Some(e) => cut_module(&b, e)?,
                None => b,
            };
            v.push(*c, b)?;
        }
        Ok(v)
    }

    /// `Σ c_i χ_{M_i}` for the Brauer characters.
    pub fn brauer_character(&self) -> Result<ClassFunction> {
        let n = crate::character::conductor_for(&self.field);
        let mut acc = ClassFunction::zero(&self.group, n);
        for (c, m) in &self.terms {
            acc = acc.add(&brauer_character(m)?.scale_int(*c))?;
        }
        Ok(acc)
    }

    /// `Σ c_i` times the lift characters.
    pub fn lift_character(&self) -> Result<ClassFunction> {
        let n = crate::character::conductor_for(&self.field);
        let mut acc = ClassFunction::zero(&self.group, n);
        for (c, m) in &self.terms {
            acc = acc.add(&crate::character::lift_character(m)?.scale_int(*c))?;
        }
        Ok(acc)
    }

    /// `ω°`, a virtual module over the opposite product, `prod_op = H × G`.
    pub fn opposite(&self, prod: &Product, prod_op: &Product) -> Result<VirtualModule> {
        let x = crate::product::ProductSubgroup::new(prod, &self.group)?;
        let xo = x.opposite(prod_op)?;
        let mut v = VirtualModule::zero(xo.subgroup(), &self.field);
        for (c, m) in &self.terms {
            v.push(*c, opposite_module(m, prod, prod_op)?)?;
        }
        Ok(v)
    }

    /// `ω ·_H ω'` by bilinear extension of `⊗_{FH}`.
    pub fn tensor_over(&self, left: &Product, other: &VirtualModule, right: &Product, out: &Product) -> Result<VirtualModule> {
        let mut v = VirtualModule::zero(&out.whole.whole(), &self.field);
        for (c, m) in &self.terms {
            for (d, n) in &other.terms {
                v.push(c * d, tensor_over_group(m, left, n, right, out)?)?;
            }
        }
        Ok(v)
    }

    /// `ω ·^{X,Y}_H ω'` over `X * Y` by bilinear extension of the extended tensor product.
    pub fn extended_tensor(&self, left: &Product, other: &VirtualModule, right: &Product, out: &Product) -> Result<VirtualModule> {
        let x = crate::product::ProductSubgroup::new(left, &self.group)?;
        let y = crate::product::ProductSubgroup::new(right, &other.group)?;
        let xy = x.compose(&y, out)?;
        let mut v = VirtualModule::zero(xy.subgroup(), &self.field);
        for (c, m) in &self.terms {
            for (d, n) in &other.terms {
                v.push(c * d, crate::tensor::extended_tensor(m, left, n, right, out)?)?;
            }
        }
        Ok(v)
    }

    /// Termwise pullback along an isomorphism onto the acting group.
    pub fn pullback(&self, alpha: &GroupHom) -> Result<VirtualModule> {
        let mut v = VirtualModule::zero(alpha.source(), &self.field);
        for (c, m) in &self.terms {
            v.push(*c, m.pullback(alpha)?)?;
        }
        Ok(v)
    }

    /// Largest `|c|·dim` sum, a bound for all character values.
    pub fn character_bound(&self) -> u64 {
        self.terms.iter().map(|(c, m)| c.unsigned_abs() * m.dim() as u64).sum()
    }
}

/// `M°`: the `F`-dual of a module over `X ≤ G × H`, as a module over `X° ≤ H × G`.
pub fn opposite_module(m: &MatModule, prod: &Product, prod_op: &Product) -> Result<MatModule> {
    let x = crate::product::ProductSubgroup::new(prod, m.group())?;
    let xo = x.opposite(prod_op)?;
    let flip = GroupHom::from_fn(xo.subgroup(), m.group(), |z| {
        let (h, g) = prod_op.split(z);
        prod.pair(g, h)
    })?;
    m.dual().pullback(&flip)
}

/// A Brauer pair of the ambient group labelled by a readable key.
#[derive(Clone, Debug)]
pub struct GhostEntry {
    pub pair: BrauerPair,
    pub stabilizer: Subgroup,
    pub value: ClassFunction,
}

/// Brauer characters of `e ω(P)` over `N(P, e)` at a list of Brauer pairs.
#[derive(Clone, Debug)]
pub struct GhostVector {
    pub entries: Vec<GhostEntry>,
}

impl PartialEq for GhostVector {
    fn eq(&self, other: &Self) -> bool {
        self.entries.len() == other.entries.len()
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a.pair == b.pair && a.value == b.value)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GhostEntryJson {
    pub subgroup_order: usize,
    pub subgroup_generators: Vec<Vec<usize>>,
    pub block_support: usize,
    pub values: Vec<ClassValueJson>,
}

impl GhostVector {
    pub fn first_difference(&self, other: &GhostVector) -> Option<usize> {
        self.entries.iter().zip(&other.entries).position(|(a, b)| a.pair != b.pair || a.value != b.value)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.value.is_zero())
    }

    pub fn to_json(&self) -> Vec<GhostEntryJson> {
        self.entries
            .iter()
            .map(|e| {
                let a = e.pair.p.ambient();
                GhostEntryJson {
                    subgroup_order: e.pair.p.order(),
                    subgroup_generators: e.pair.p.generators().iter().map(|&g| a.perm(g).images()).collect(),
                    block_support: e.pair.e.support_size(),
                    values: e.value.to_json(),
                }
            })
            .collect()
    }
}

pub fn ghost_vector(w: &VirtualModule, pairs: &[BrauerPair]) -> Result<GhostVector> {
    let mut entries = Vec::with_capacity(pairs.len());
    for pair in pairs {
        let b = w.brauer_construction(&pair.p, Some(&pair.e))?;
        let value = b.brauer_character()?;
        entries.push(GhostEntry { pair: pair.clone(), stabilizer: b.group().clone(), value });
    }
    Ok(GhostVector { entries })
}

/// Equality in the Grothendieck group, decided on ghost vectors.
pub fn t_equal(a: &VirtualModule, b: &VirtualModule, pairs: &[BrauerPair]) -> Result<bool> {
    Ok(ghost_vector(a, pairs)? == ghost_vector(b, pairs)?)
}

/// A Brauer pair `(Δ(P,φ,Q), e ⊗ f*)` of `F[G × H]` together with its factors.
#[derive(Clone, Debug)]
pub struct TwistedPair {
    pub pair: BrauerPair,
    /// `(P, e)` in `G`.
    pub left: BrauerPair,
    /// `(Q, f)` in `H`.
    pub right: BrauerPair,
    /// `φ: Q → P`.
    pub phi: GroupHom,
}

impl TwistedPair {
    pub fn delta(&self) -> &Subgroup {
        &self.pair.p
    }

    /// `^{(g,h)}` of the pair.
    pub fn conjugate(&self, prod: &Product, g: Elem, h: Elem) -> Result<TwistedPair> {
        let ga = &prod.left;
        let ha = &prod.right;
        let left = self.left.conjugate(g);
        let right = self.right.conjugate(h);
        let phi = GroupHom::from_fn(&right.p, &left.p, |y| ga.conj(g, self.phi.apply(ha.conj(ha.inv(h), y))))?;
        Ok(TwistedPair { pair: self.pair.conjugate(prod.pair(g, h)), left, right, phi })
    }

    pub fn to_json(&self, prod: &Product) -> serde_json::Value {
        let ga = &prod.left;
        let ha = &prod.right;
        let gens = |s: &Subgroup, a: &crate::group::GroupRef| -> Vec<Vec<usize>> {
            s.generators().iter().map(|&x| a.perm(x).images()).collect()
        };
        serde_json::json!({
            "order": self.pair.p.order(),
            "P": gens(&self.left.p, ga),
            "Q": gens(&self.right.p, ha),
            "phi": self.right.p.generators().iter().map(|&y| ga.perm(self.phi.apply(y)).images()).collect::<Vec<_>>(),
            "e_support": self.left.e.support_size(),
            "f_support": self.right.e.support_size(),
        })
    }
}

pub fn brauer_pairs_of(pairs: &[TwistedPair]) -> Vec<BrauerPair> {
    pairs.iter().map(|t| t.pair.clone()).collect()
}

/// Brauer pairs `(Δ(P,φ,Q), e ⊗ f*)` of `F[G × H]` with `(P,e)` an `A`-pair and `(Q,f)`
/// a `B`-pair, one per `G × H`-conjugacy class, in a deterministic order.
pub fn twisted_diagonal_pairs(
    prod: &Product,
    bg: &BlockSystem,
    bh: &BlockSystem,
    block_a: &AlgElem,
    block_b: &AlgElem,
) -> Result<Vec<TwistedPair>> {
    let f = bg.field();
    let p = f.p();
    let g = bg.group();
    let h = bh.group();
    let w = prod.whole.whole();
    let mut out = Vec::new();
    let hq = h.p_subgroups_up_to_conjugacy(p);
    let gp = g.p_subgroups_up_to_conjugacy(p);
    for q in &hq {
        let nq = h.normalizer(q)?;
        let fs: Vec<AlgElem> = bh
            .local_blocks(q)?
            .into_iter()
            .filter(|fb| bh.pair_in_block(block_b, &BrauerPair { p: q.clone(), e: fb.clone() }).unwrap_or(false))
            .collect();
        for pg in gp.iter().filter(|x| x.order() == q.order()) {
            let np = g.normalizer(pg)?;
            let ng_h = prod.product_of(&np, &nq);
            let es: Vec<AlgElem> = bg
                .local_blocks(pg)?
                .into_iter()
                .filter(|e| bg.pair_in_block(block_a, &BrauerPair { p: pg.clone(), e: e.clone() }).unwrap_or(false))
                .collect();
            let mut seen: HashSet<Vec<Elem>> = HashSet::new();
            for phi in injective_homs(q, pg) {
                let delta = prod.twisted_diagonal(&phi)?;
                if seen.contains(delta.elements()) {
                    continue;
                }
                for &z in ng_h.elements() {
                    seen.insert(delta.conjugate(z).elements().to_vec());
                }
                let nd = w.normalizer(&delta)?;
                let mut seen_blocks: HashSet<(Vec<u8>, Vec<u8>)> = HashSet::new();
                for e in &es {
                    for fb in &fs {
                        let key = (e.coefficients().to_vec(), fb.coefficients().to_vec());
                        if seen_blocks.contains(&key) {
                            continue;
                        }
                        for &z in nd.elements() {
                            let (a, b) = prod.split(z);
                            seen_blocks.insert((e.conjugate(a).coefficients().to_vec(), fb.conjugate(b).coefficients().to_vec()));
                        }
                        out.push(TwistedPair {
                            pair: BrauerPair { p: delta.clone(), e: tensor_dual(prod, e, fb, f) },
                            left: BrauerPair { p: pg.clone(), e: e.clone() },
                            right: BrauerPair { p: q.clone(), e: fb.clone() },
                            phi: phi.clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Some `(g, h)` with `^{(g,h)} a ≤ b`, where `≤` is containment of Brauer pairs.
pub fn twisted_pair_below(
    prod: &Product,
    bg: &BlockSystem,
    bh: &BlockSystem,
    a: &TwistedPair,
    b: &TwistedPair,
) -> Result<Option<(Elem, Elem)>> {
    if b.delta().order() % a.delta().order() != 0 {
        return Ok(None);
    }
    let ga = &prod.left;
    let ha = &prod.right;
    for &h in bh.group().elements() {
        let qh = a.right.p.conjugate(h);
        if !qh.is_subgroup_of(&b.right.p) {
            continue;
        }
        let fh = a.right.e.conjugate(h);
        if bh.subpair(&b.right, &qh)?.e != fh {
            continue;
        }
        // need c_g φ_a c_h⁻¹ = φ_b on ^h Q
        let targets: Vec<(Elem, Elem)> = qh
            .generators()
            .iter()
            .map(|&y| (a.phi.apply(ha.conj(ha.inv(h), y)), b.phi.apply(y)))
            .collect();
        for &g in bg.group().elements() {
            if !targets.iter().all(|&(u, v)| ga.conj(g, u) == v) {
                continue;
            }
            let pg = a.left.p.conjugate(g);
            if bg.subpair(&b.left, &pg)?.e == a.left.e.conjugate(g) {
                return Ok(Some((g, h)));
            }
        }
    }
    Ok(None)
}

/// Label of an indecomposable `p`-permutation module: its vertex (up to
/// conjugacy) and the dimension of its Brauer construction there.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IndecomposableLabel {
    pub vertex_order: usize,
    pub vertex_class: usize,
    pub dim: usize,
    pub green_dim: usize,
    /// Distinguishes non-isomorphic modules sharing the numbers above.
    pub index: usize,
}

/// Vertex of an indecomposable `p`-permutation module: a largest `p`-subgroup up to
/// conjugacy with nonzero Brauer construction. Returns the class index in
/// `p_subgroups_up_to_conjugacy` order.
pub fn vertex(m: &MatModule) -> Result<(usize, Subgroup)> {
    let classes = m.group().p_subgroups_up_to_conjugacy(m.field().p());
    vertex_among(m, &classes)
}

/// Vertex search restricted to candidate subgroups sorted by order, e.g. the
/// twisted diagonal subgroups for bimodules with twisted diagonal vertices.
pub fn vertex_among(m: &MatModule, classes: &[Subgroup]) -> Result<(usize, Subgroup)> {
    for (i, q) in classes.iter().enumerate().rev() {
        if m.brauer_construction(q)?.dim() != 0 {
            return Ok((i, q.clone()));
        }
    }
    Err(Error::Precondition("zero module has no vertex".into()))
}

/// Coordinates of `ω` in the standard basis, with one representative module per label.
pub fn standard_basis_coordinates(w: &VirtualModule, seed: u64) -> Result<Vec<(IndecomposableLabel, MatModule, i64)>> {
    let classes = w.group().p_subgroups_up_to_conjugacy(w.field().p());
    standard_basis_coordinates_among(w, seed, &classes)
}

/// `standard_basis_coordinates` with vertices searched among `classes`.
pub fn standard_basis_coordinates_among(
    w: &VirtualModule,
    seed: u64,
    classes: &[Subgroup],
) -> Result<Vec<(IndecomposableLabel, MatModule, i64)>> {
    let mut out: Vec<(IndecomposableLabel, MatModule, i64)> = Vec::new();
    for (c, m) in w.terms() {
        for s in decompose(m, seed)? {
            let (vc, v) = vertex_among(&s.module, classes)?;
            let green_dim = s.module.brauer_construction(&v)?.dim();
            let mut label = IndecomposableLabel {
                vertex_order: v.order(),
                vertex_class: vc,
                dim: s.module.dim(),
                green_dim,
                index: 0,
            };
            let mut found = false;
            for (l, rep, k) in out.iter_mut() {
                if (l.vertex_class, l.dim, l.green_dim) == (label.vertex_class, label.dim, label.green_dim) {
                    if indecomposables_isomorphic(rep, &s.module)? {
                        *k += c;
                        found = true;
                        break;
                    }
                    label.index = label.index.max(l.index + 1);
                }
            }
            if !found {
                out.push((label, s.module, *c));
            }
        }
    }
    out.retain(|(_, _, k)| *k != 0);
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fq;
    use crate::group::Group;

    fn d8_gamma() -> (Product, VirtualModule, FieldRef) {
        let g = Group::catalog("D8").unwrap();
        let gw = g.whole();
        let prod = Product::new(&g, &g).unwrap();
        let f = Fq::new(2, 1).unwrap();
        let w = prod.whole.whole();
        let c4 = Subgroup::generated(&g, &[gw.generators()[0]]);
        let a = MatModule::coset_module(&w, &prod.diagonal(&gw).unwrap(), &f).unwrap();
        let b = MatModule::coset_module(&w, &prod.diagonal(&c4).unwrap(), &f).unwrap();
        let gamma = VirtualModule::from_terms(&w, &f, vec![(1, a), (-1, b)]).unwrap();
        (prod, gamma, f)
    }

    #[test]
    fn opposite_is_an_involution_on_ghosts() {
        let (prod, gamma, f) = d8_gamma();
        let g = prod.left.whole();
        let bs = BlockSystem::new(&g, &f);
        let one = AlgElem::one(&g);
        let pairs = brauer_pairs_of(&twisted_diagonal_pairs(&prod, &bs, &bs, &one, &one).unwrap());
        let oo = gamma.opposite(&prod, &prod).unwrap().opposite(&prod, &prod).unwrap();
        assert!(t_equal(&gamma, &oo, &pairs).unwrap());
        assert!(!t_equal(&gamma, &gamma.scale(2), &pairs).unwrap());
    }

    #[test]
    fn d8_gamma_is_a_unit_on_ghosts() {
        let (prod, gamma, f) = d8_gamma();
        let g = prod.left.whole();
        let bs = BlockSystem::new(&g, &f);
        let one = AlgElem::one(&g);
        let pairs = brauer_pairs_of(&twisted_diagonal_pairs(&prod, &bs, &bs, &one, &one).unwrap());
        let go = gamma.opposite(&prod, &prod).unwrap();
        let prodd = gamma.tensor_over(&prod, &go, &prod, &prod).unwrap();
        let a = VirtualModule::from_module(&gamma.terms()[0].1);
        assert!(t_equal(&prodd, &a, &pairs).unwrap());
    }

    #[test]
    fn coordinates_of_integer_combinations() {
        let g = Group::catalog("S3").unwrap().whole();
        let f = Fq::new(2, 1).unwrap();
        let t = MatModule::trivial(&g, &f);
        let r = MatModule::coset_module(&g, &g.sylow(2), &f).unwrap();
        let w = VirtualModule::from_terms(&g, &f, vec![(2, t.clone()), (-1, r)]).unwrap();
        let coords = standard_basis_coordinates(&w, 0).unwrap();
        // F[S3/C2] = F ⊕ (2-dimensional projective simple)
        let ks: Vec<i64> = coords.iter().map(|c| c.2).collect();
        assert_eq!(coords.len(), 2);
        assert!(ks.contains(&1) && ks.contains(&-1));
    }

    #[test]
    fn ghosts_separate_the_standard_basis_of_d8() {
        let gr = Group::catalog("D8").unwrap();
        let g = gr.whole();
        let f = Fq::new(2, 1).unwrap();
        let bs = BlockSystem::new(&g, &f);
        let pairs = bs.brauer_pairs(None).unwrap();
        // over a 2-group the indecomposable p-permutation modules are the F[D8/Q]
        let basis: Vec<MatModule> = g
            .p_subgroups_up_to_conjugacy(2)
            .iter()
            .map(|q| MatModule::coset_module(&g, q, &f).unwrap())
            .collect();
        assert_eq!(basis.len(), 8);
        let ghosts: Vec<GhostVector> =
            basis.iter().map(|m| ghost_vector(&VirtualModule::from_module(m), &pairs).unwrap()).collect();
        for i in 0..ghosts.len() {
            for j in 0..i {
                assert!(ghosts[i] != ghosts[j]);
            }
        }
        let sum = VirtualModule::from_module(&basis[0]).sub(&VirtualModule::from_module(&basis[1])).unwrap();
        assert!(!ghost_vector(&sum, &pairs).unwrap().is_zero());
    }

    #[test]
    fn zero_is_self_opposite() {
        let (prod, gamma, f) = d8_gamma();
        let z = VirtualModule::zero(gamma.group(), &f);
        let zo = z.opposite(&prod, &prod).unwrap();
        assert!(zo.is_formally_zero());
        let d = gamma.sub(&gamma).unwrap();
        let g = prod.left.whole();
        let bs = BlockSystem::new(&g, &f);
        let one = AlgElem::one(&g);
        let pairs = brauer_pairs_of(&twisted_diagonal_pairs(&prod, &bs, &bs, &one, &one).unwrap());
        assert!(ghost_vector(&d, &pairs).unwrap().is_zero());
    }
}
