//! Tensor products of bimodules, the extended tensor product over subgroups of
//! direct products, the Mackey formula for induced bimodules, and the block-wise
//! decomposition of Brauer constructions of tensor products.
//!
//! A module over `X ≤ G × H` is a bimodule through `(g, h) m = g m h⁻¹`.

use std::collections::HashMap;

use crate::algebra::tensor_dual;
use crate::blocks::{cut_module, BlockSystem, BrauerPair};
use crate::error::{Error, Result};
use crate::group::{injective_homs, Elem, GroupHom, Subgroup};
use crate::linalg::{Mat, Subspace};
use crate::module::MatModule;
use crate::product::{Product, ProductSubgroup};

fn check_factors(left: &Product, right: &Product, out: &Product) -> Result<()> {
    if !std::sync::Arc::ptr_eq(&left.right, &right.left) {
        return Err(Error::Mismatch("middle groups differ".into()));
    }
    if !std::sync::Arc::ptr_eq(&out.left, &left.left) || !std::sync::Arc::ptr_eq(&out.right, &right.right) {
        return Err(Error::Mismatch("target product has the wrong factors".into()));
    }
    Ok(())
}

/// Union-find over `0..n`.
struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let nx = self.0[y];
            self.0[y] = r;
            y = nx;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// Matrix of the map induced by `t` on `V / U`, in the coordinates of the
/// non-pivot columns of `U`.
fn quotient_matrix(t: &Mat, u: &Subspace, comp: &[usize], f: &crate::field::Fq) -> Mat {
    let mut out = Mat::zeros(comp.len(), comp.len());
    for (i, &c) in comp.iter().enumerate() {
        let mut v = t.row(c).to_vec();
        u.reduce(&mut v, f);
        for (j, &d) in comp.iter().enumerate() {
            out.set(i, j, v[d]);
        }
    }
    out
}

/// `M ⊗_{F[k₂(X) ∩ k₁(Y)]} N` as a module for `X * Y`, where `(g,k)` acts as
/// `(g,h) ⊗ (h,k)` for any `h` with `(g,h) ∈ X`, `(h,k) ∈ Y`.
pub fn extended_tensor(
    m: &MatModule,
    left: &Product,
    n: &MatModule,
    right: &Product,
    out: &Product,
) -> Result<MatModule> {
    check_factors(left, right, out)?;
    if !std::sync::Arc::ptr_eq(m.field(), n.field()) {
        return Err(Error::Mismatch("modules over different fields".into()));
    }
    let f = m.field();
    let x = ProductSubgroup::new(left, m.group())?;
    let y = ProductSubgroup::new(right, n.group())?;
    let xy = x.compose(&y, out)?;
    let xy_sub = xy.subgroup().clone();
    let l = x.k2().intersection(y.k1());
    let h_grp = &left.right;
    let xg: HashMap<Elem, Vec<Elem>> = {
        let mut map: HashMap<Elem, Vec<Elem>> = HashMap::new();
        for &z in m.group().elements() {
            let (g, h) = left.split(z);
            map.entry(g).or_default().push(h);
        }
        map
    };
    let witness = |z: Elem| -> Elem {
        let (g, k) = out.split(z);
        xg[&g]
            .iter()
            .copied()
            .find(|&h| y.subgroup().contains(right.pair(h, k)))
            .expect("element of X * Y")
    };
    let (dm, dn) = (m.dim(), n.dim());
    if let (Some(pm), Some(pn)) = (m.element_point_actions(), n.element_point_actions()) {
        let xs = m.group();
        let ys = n.group();
        let pa_x = |z: Elem| &pm[xs.position(z).expect("in X")];
        let pa_y = |z: Elem| &pn[ys.position(z).expect("in Y")];
        let mut dsu = Dsu((0..dm * dn).collect());
        for &h in l.generators() {
            let a = pa_x(left.pair(0, h_grp.inv(h)));
            let b = pa_y(right.pair(h, 0));
            for i in 0..dm {
                for j in 0..dn {
                    dsu.union(a[i] as usize * dn + j, i * dn + b[j] as usize);
                }
            }
        }
        let mut orbit_of = vec![usize::MAX; dm * dn];
        let mut reps = Vec::new();
        for v in 0..dm * dn {
            let r = dsu.find(v);
            if orbit_of[r] == usize::MAX {
                orbit_of[r] = reps.len();
                reps.push(v);
            }
            orbit_of[v] = orbit_of[r];
        }
        let points = xy_sub
            .generators()
            .iter()
            .map(|&z| {
                let (g, k) = out.split(z);
                let h = witness(z);
                let a = pa_x(left.pair(g, h));
                let b = pa_y(right.pair(h, k));
                reps.iter()
                    .map(|&v| {
                        let (i, j) = (v / dn, v % dn);
                        orbit_of[a[i] as usize * dn + b[j] as usize] as u32
                    })
                    .collect()
            })
            .collect();
        return Ok(MatModule::permutation(&xy_sub, f, reps.len(), points));
    }
    let id_m = Mat::identity(dm);
    let id_n = Mat::identity(dn);
    let mut rel = Subspace::zero(dm * dn);
    for &h in l.generators() {
        let a = m.matrix(left.pair(0, h_grp.inv(h)));
        let b = n.matrix(right.pair(h, 0));
        let r = a.kron(&id_n, f).sub(&id_m.kron(b, f), f);
        rel = rel.sum(&Subspace::span(&r, f), f);
    }
    let comp = rel.complement_indices();
    let gens = xy_sub
        .generators()
        .iter()
        .map(|&z| {
            let (g, k) = out.split(z);
            let h = witness(z);
            let t = m.matrix(left.pair(g, h)).kron(n.matrix(right.pair(h, k)), f);
            quotient_matrix(&t, &rel, &comp, f)
        })
        .collect();
    MatModule::new(&xy_sub, f, gens)
}

/// `M ⊗_{FH} N` for an `(FG, FH)`-bimodule `M` and an `(FH, FK)`-bimodule `N`.
pub fn tensor_over_group(m: &MatModule, left: &Product, n: &MatModule, right: &Product, out: &Product) -> Result<MatModule> {
    if m.group() != &left.whole.whole() || n.group() != &right.whole.whole() {
        return Err(Error::Mismatch("bimodule tensor needs modules over the whole products".into()));
    }
    extended_tensor(m, left, n, right, out)
}

/// `⊕_t Ind_{X * ^{(t,1)}Y}^{G×K}(M ⊗_{X, ^{(t,1)}Y} ^{(t,1)}N)` over `t ∈ p₂(X)\H/p₁(Y)`.
pub fn mackey_rhs(m: &MatModule, left: &Product, n: &MatModule, right: &Product, out: &Product) -> Result<MatModule> {
    check_factors(left, right, out)?;
    let x = ProductSubgroup::new(left, m.group())?;
    let y = ProductSubgroup::new(right, n.group())?;
    let h = left.right.whole();
    let gk = out.whole.whole();
    let mut parts = Vec::new();
    for t in h.double_coset_reps(x.p2(), y.p1())? {
        let nt = n.conjugate(right.pair(t, 0));
        let e = extended_tensor(m, left, &nt, right, out)?;
        parts.push(e.induce(&gk)?);
    }
    MatModule::direct_sum(&parts)
}

/// Whether every indecomposable summand of the `p`-permutation module `m` over
/// `G × H` has a twisted diagonal vertex: `M(⟨(u,1)⟩) = M(⟨(1,u)⟩) = 0` for all `u`
/// of order `p`.
pub fn has_twisted_diagonal_vertices(m: &MatModule, prod: &Product) -> Result<bool> {
    let p = m.field().p();
    let x = m.group();
    let amb = x.ambient();
    let mut seen = std::collections::HashSet::new();
    for &z in x.elements() {
        let (g, h) = prod.split(z);
        if amb.elem_order(z) as u64 != p || (g != 0 && h != 0) {
            continue;
        }
        let c = Subgroup::generated(amb, &[z]);
        let key = x.conjugacy_classes()[x.class_index(z)].rep;
        if !seen.insert(key) {
            continue;
        }
        if m.brauer_construction(&c)?.dim() != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `e M(Δ(P,φ,Q)) f` as a module for `N_{S×T}(Δ(P,φ,Q), e ⊗ f*)`, with `φ: Q → P`.
pub fn cut_brauer_construction(
    m: &MatModule,
    prod: &Product,
    phi: &GroupHom,
    e: &crate::algebra::AlgElem,
    f: &crate::algebra::AlgElem,
    s: &Subgroup,
    t: &Subgroup,
) -> Result<MatModule> {
    let fld = m.field();
    let delta = prod.twisted_diagonal(phi)?;
    let ef = tensor_dual(prod, e, f, fld);
    let stab = BrauerPair { p: delta.clone(), e: ef.clone() }.stabilizer(&prod.product_of(s, t))?;
    let bc = m.brauer_construction(&delta)?.restrict(&stab)?;
    cut_module(&bc, &ef)
}

/// Data for the block-wise Brauer-construction formula of a tensor product.
pub struct BpSetting<'a> {
    pub left: &'a Product,
    pub right: &'a Product,
    pub out: &'a Product,
    /// Brauer pair `(P, e)` of `F G`.
    pub pe: &'a BrauerPair,
    /// Brauer pair `(R, d)` of `F K`.
    pub rd: &'a BrauerPair,
    /// `σ: R → P`.
    pub sigma: &'a GroupHom,
    pub s: &'a Subgroup,
    pub t: &'a Subgroup,
}

impl BpSetting<'_> {
    fn check(&self) -> Result<()> {
        check_factors(self.left, self.right, self.out)?;
        let (p, r) = (&self.pe.p, &self.rd.p);
        if self.sigma.source() != r || &self.sigma.image() != p || !self.sigma.is_injective() {
            return Err(Error::Precondition("σ must be an isomorphism R → P".into()));
        }
        let cgp = self.pe.centralizer();
        let ckr = self.rd.centralizer();
        let ng = self.pe.stabilizer(&self.left.left.whole())?;
        let nk = self.rd.stabilizer(&self.right.right.whole())?;
        if !cgp.is_subgroup_of(self.s) || !self.s.is_subgroup_of(&ng) {
            return Err(Error::Precondition("need C_G(P) ≤ S ≤ N_G(P,e)".into()));
        }
        if !ckr.is_subgroup_of(self.t) || !self.t.is_subgroup_of(&nk) {
            return Err(Error::Precondition("need C_K(R) ≤ T ≤ N_K(R,d)".into()));
        }
        Ok(())
    }

    /// `N_{S×T}(Δ(P,σ,R))`.
    pub fn normalizer(&self) -> Result<Subgroup> {
        let delta = self.out.twisted_diagonal(self.sigma)?;
        Ok(self.out.normalizer_in(self.s, self.t, &delta))
    }
}

/// `e (M ⊗_{FH} N)(Δ(P,σ,R)) d` computed directly, as a module for `N_{S×T}(Δ(P,σ,R))`.
pub fn bp_lhs(m: &MatModule, n: &MatModule, st: &BpSetting) -> Result<MatModule> {
    st.check()?;
    let mn = tensor_over_group(m, st.left, n, st.right, st.out)?;
    let delta = st.out.twisted_diagonal(st.sigma)?;
    let nst = st.normalizer()?;
    let bc = mn.brauer_construction(&delta)?.restrict(&nst)?;
    let ed = tensor_dual(st.out, &st.pe.e, &st.rd.e, m.field());
    cut_module(&bc, &ed)
}

/// One orbit representative `ω = (φ, (Q,f), ψ)` of `Ω` under `N_{S×T}(Δ(P,σ,R)) × H`.
#[derive(Clone, Debug)]
pub struct OmegaRep {
    pub q: Subgroup,
    pub f: crate::algebra::AlgElem,
    /// `ψ: R → Q`.
    pub psi: GroupHom,
    /// `φ = σ ψ⁻¹: Q → P`.
    pub phi: GroupHom,
}

fn omega_key(q: &Subgroup, f: &crate::algebra::AlgElem, psi_imgs: &[Elem]) -> (Vec<Elem>, Vec<u8>, Vec<Elem>) {
    (q.elements().to_vec(), f.coefficients().to_vec(), psi_imgs.to_vec())
}

/// Orbit representatives of `Ω` under `N_{S×T}(Δ(P,σ,R)) × H`, least first.
pub fn omega_orbits(st: &BpSetting, blocks_h: &BlockSystem) -> Result<Vec<OmegaRep>> {
    st.check()?;
    let h = &st.left.right;
    let hw = h.whole();
    let k = &st.right.right;
    let r = &st.rd.p;
    let rg = r.generators().to_vec();
    let nst = st.normalizer()?;
    let fld = blocks_h.field().clone();
    let mut seen = std::collections::HashSet::new();
    let mut reps = Vec::new();
    let mut classes = hw.p_subgroups_up_to_conjugacy(fld.p());
    classes.retain(|q| q.order() == r.order());
    // H-conjugates of Q are reached by the orbit walk, so classes suffice as seeds
    for q in classes {
        for psi in injective_homs(r, &q) {
            for fb in blocks_h.local_blocks(&q)? {
                let imgs: Vec<Elem> = rg.iter().map(|&y| psi.apply(y)).collect();
                let key = omega_key(&q, &fb, &imgs);
                if seen.contains(&key) {
                    continue;
                }
                reps.push((q.clone(), fb.clone(), psi.clone()));
                // orbit walk
                let mut stack = vec![(q.clone(), fb.clone(), imgs)];
                seen.insert(key);
                while let Some((q0, f0, im0)) = stack.pop() {
                    let mut next = Vec::new();
                    for &x in hw.generators() {
                        let q1 = q0.conjugate(x);
                        let f1 = f0.conjugate(x);
                        let im1: Vec<Elem> = im0.iter().map(|&y| h.conj(x, y)).collect();
                        next.push((q1, f1, im1));
                    }
                    for &z in nst.generators() {
                        let (_, kk) = st.out.split(z);
                        let ki = k.inv(kk);
                        // ψ c_k⁻¹ on generators of R: y ↦ ψ(k⁻¹ y k)
                        let psi0 = GroupHom::from_generator_images(r, &q0, &im0)?;
                        let im1: Vec<Elem> = rg.iter().map(|&y| psi0.apply(k.conj(ki, y))).collect();
                        next.push((q0.clone(), f0.clone(), im1));
                    }
                    for (q1, f1, im1) in next {
                        let key = omega_key(&q1, &f1, &im1);
                        if seen.insert(key) {
                            stack.push((q1, f1, im1));
                        }
                    }
                }
            }
        }
    }
    let sigma = st.sigma;
    reps.into_iter()
        .map(|(q, f, psi)| {
            let inv = psi.onto_image().inverse()?;
            let phi = sigma.compose(&inv)?;
            let phi = phi.with_target(&st.pe.p)?;
            Ok(OmegaRep { q, f, psi, phi })
        })
        .collect()
}

/// The right side `⊕_ω Ind_{X(ω)*Y(ω)}^{N_{S×T}(Δ(P,σ,R))}(M(ω) ⊗_{X(ω),Y(ω)} N(ω))`.
pub fn bp_decomposition(m: &MatModule, n: &MatModule, st: &BpSetting, blocks_h: &BlockSystem) -> Result<MatModule> {
    let fld = m.field();
    let nst = st.normalizer()?;
    let h = st.left.right.whole();
    let mut parts = Vec::new();
    for w in omega_orbits(st, blocks_h)? {
        let mw = cut_brauer_construction(m, st.left, &w.phi, &st.pe.e, &w.f, st.s, &h)?;
        if mw.dim() == 0 {
            continue;
        }
        let nw = cut_brauer_construction(n, st.right, &w.psi, &w.f, &st.rd.e, &h, st.t)?;
        if nw.dim() == 0 {
            continue;
        }
        let e = extended_tensor(&mw, st.left, &nw, st.right, st.out)?;
        if e.dim() == 0 {
            continue;
        }
        if !e.group().is_subgroup_of(&nst) {
            return Err(Error::Precondition("X(ω) * Y(ω) is not inside N_{S×T}(Δ)".into()));
        }
        parts.push(e.induce(&nst)?);
    }
    if parts.is_empty() {
        return Ok(MatModule::zero(&nst, fld));
    }
    MatModule::direct_sum(&parts)
}
