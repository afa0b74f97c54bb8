//! `p`-permutation equivalences: the defining equations, `γ`-Brauer pairs, the
//! fusion-system isomorphism, local equivalences, the maximal module, transport of
//! Külshammer-Puig classes, Rickard complexes and isotypies.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::algebra::{tensor_dual, AlgElem};
use crate::blocks::{block_idempotents, brauer_hom, cut_module, defect_group, BlockSystem, BrauerPair};
use crate::character::{
    apply_bicharacter, conductor_for, ext_char_dot, generalized_decomposition, is_perfect, lift_character,
    opposite_character, ClassFunction,
};
use crate::cohomology::{cohomologous, kp_class};
use crate::decompose::is_isomorphic;
use crate::error::{Error, Result};
use crate::field::FieldRef;
use crate::group::{standalone, Elem, GroupHom, GroupRef, Subgroup};
use crate::linalg::Mat;
use crate::module::MatModule;
use crate::padic::{certified_precision, lift_idempotent, Wn};
use crate::product::{Product, ProductSubgroup};
use crate::tensor::has_twisted_diagonal_vertices;
use crate::virtual_module::{
    brauer_pairs_of, ghost_vector, opposite_module, standard_basis_coordinates_among, twisted_diagonal_pairs,
    twisted_pair_below, IndecomposableLabel, TwistedPair, VirtualModule,
};

/// Outcome of one check, with a witness describing the first failure.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub holds: bool,
    pub witness: Value,
}

impl Check {
    pub fn pass(witness: Value) -> Check {
        Check { holds: true, witness }
    }

    pub fn fail(witness: Value) -> Check {
        Check { holds: false, witness }
    }
}

/// The groups `G`, `H` with all products the equations need, and their block systems.
pub struct Setting {
    pub g: GroupRef,
    pub h: GroupRef,
    pub field: FieldRef,
    /// `G × H`
    pub prod: Product,
    /// `H × G`
    pub prod_op: Product,
    /// `G × G`
    pub prod_gg: Product,
    /// `H × H`
    pub prod_hh: Product,
    pub blocks_g: Arc<BlockSystem>,
    pub blocks_h: Arc<BlockSystem>,
}

impl Setting {
    /// When `g` and `h` are the same group all four products coincide.
    pub fn new(g: &GroupRef, h: &GroupRef, field: &FieldRef) -> Result<Arc<Setting>> {
        let prod = Product::new(g, h)?;
        let blocks_g = Arc::new(BlockSystem::new(&g.whole(), field));
        let (prod_op, prod_gg, prod_hh, blocks_h) = if Arc::ptr_eq(g, h) {
            (prod.clone(), prod.clone(), prod.clone(), blocks_g.clone())
        } else {
            (
                Product::new(h, g)?,
                Product::new(g, g)?,
                Product::new(h, h)?,
                Arc::new(BlockSystem::new(&h.whole(), field)),
            )
        };
        Ok(Arc::new(Setting { g: g.clone(), h: h.clone(), field: field.clone(), prod, prod_op, prod_gg, prod_hh, blocks_g, blocks_h }))
    }

    /// `[FGe]` as a virtual `(FG, FG)`-bimodule.
    pub fn unit_g(&self, e: &AlgElem) -> Result<VirtualModule> {
        unit_bimodule(&self.prod_gg, e, &self.field)
    }

    pub fn unit_h(&self, f: &AlgElem) -> Result<VirtualModule> {
        unit_bimodule(&self.prod_hh, f, &self.field)
    }
}

/// `F S e` as a module over `S × S` for a central idempotent `e` of `F S`.
pub fn unit_bimodule(prod: &Product, e: &AlgElem, field: &FieldRef) -> Result<VirtualModule> {
    let g = prod.left.whole();
    let w = prod.whole.whole();
    let m = MatModule::coset_module(&w, &prod.diagonal(&g)?, field)?;
    let m = cut_module(&m, &tensor_dual(prod, &e.embed(&g)?, &e.embed(&g)?, field))?;
    Ok(VirtualModule::from_module(&m))
}

/// An element `γ ∈ T^Δ(A, B)` with `A = FG e_A`, `B = FH e_B`.
pub struct PpeqCandidate {
    setting: Arc<Setting>,
    gamma: VirtualModule,
    block_a: AlgElem,
    block_b: AlgElem,
    seed: u64,
    pairs_gh: OnceLock<Vec<TwistedPair>>,
    pairs_gg: OnceLock<Vec<TwistedPair>>,
    pairs_hh: OnceLock<Vec<TwistedPair>>,
    gamma_pairs: OnceLock<Vec<GammaBrauerPair>>,
}

/// A `γ`-Brauer pair with the Brauer character certifying it.
#[derive(Clone, Debug)]
pub struct GammaBrauerPair {
    pub pair: TwistedPair,
    /// `N_{G×H}(Δ(P,φ,Q), e ⊗ f*)`
    pub stabilizer: Subgroup,
    /// Brauer character of `e γ(Δ(P,φ,Q)) f` restricted to `C_G(P) × C_H(Q)`.
    pub witness: ClassFunction,
    /// Whether the Brauer character on the whole stabilizer is nonzero as well.
    pub nonzero_on_stabilizer: bool,
}

/// Report on the structure of the set of `γ`-Brauer pairs.
#[derive(Clone, Debug)]
pub struct PairStructure {
    pub ideal: Check,
    /// Indices into `gamma_brauer_pairs` of the maximal classes.
    pub maximal: Vec<usize>,
    pub uniform: Check,
    pub maximality_criterion: Check,
    pub connecting: Check,
}

impl PpeqCandidate {
    /// Checks that `γ` is cut by `e_A ⊗ e_B*` and that its constituents have twisted
    /// diagonal vertices.
    pub fn new(setting: &Arc<Setting>, gamma: VirtualModule, block_a: &AlgElem, block_b: &AlgElem, seed: u64) -> Result<PpeqCandidate> {
        let st = setting.clone();
        let w = st.prod.whole.whole();
        if gamma.group() != &w {
            return Err(Error::Mismatch("γ must be a virtual module over G × H".into()));
        }
        let ga = st.g.whole();
        let ha = st.h.whole();
        let ea = block_a.embed(&ga)?;
        let eb = block_b.embed(&ha)?;
        if !ea.is_central() || !eb.is_central() {
            return Err(Error::Precondition("block idempotents must be central".into()));
        }
        let ef = tensor_dual(&st.prod, &ea, &eb, &st.field);
        for (_, m) in gamma.terms() {
            if cut_module(m, &ef)?.dim() != m.dim() {
                return Err(Error::Precondition("γ is not cut by e_A ⊗ e_B*".into()));
            }
            if !has_twisted_diagonal_vertices(m, &st.prod)? {
                return Err(Error::Precondition("a constituent of γ has a vertex that is not twisted diagonal".into()));
            }
        }
        Ok(PpeqCandidate {
            setting: st,
            gamma,
            block_a: ea,
            block_b: eb,
            seed,
            pairs_gh: OnceLock::new(),
            pairs_gg: OnceLock::new(),
            pairs_hh: OnceLock::new(),
            gamma_pairs: OnceLock::new(),
        })
    }

    pub fn setting(&self) -> &Arc<Setting> {
        &self.setting
    }

    pub fn gamma(&self) -> &VirtualModule {
        &self.gamma
    }

    pub fn block_a(&self) -> &AlgElem {
        &self.block_a
    }

    pub fn block_b(&self) -> &AlgElem {
        &self.block_b
    }

    fn cached<'a>(cell: &'a OnceLock<Vec<TwistedPair>>, f: impl FnOnce() -> Result<Vec<TwistedPair>>) -> Result<&'a [TwistedPair]> {
        if let Some(v) = cell.get() {
            return Ok(v);
        }
        let v = f()?;
        Ok(cell.get_or_init(|| v))
    }

    /// Twisted-diagonal `A ⊗ B*`-Brauer pairs, one per `G × H`-class.
    pub fn pairs(&self) -> Result<&[TwistedPair]> {
        let s = &self.setting;
        PpeqCandidate::cached(&self.pairs_gh, || {
            twisted_diagonal_pairs(&s.prod, &s.blocks_g, &s.blocks_h, &self.block_a, &self.block_b)
        })
    }

    fn pairs_left(&self) -> Result<&[TwistedPair]> {
        let s = &self.setting;
        PpeqCandidate::cached(&self.pairs_gg, || {
            twisted_diagonal_pairs(&s.prod_gg, &s.blocks_g, &s.blocks_g, &self.block_a, &self.block_a)
        })
    }

    fn pairs_right(&self) -> Result<&[TwistedPair]> {
        let s = &self.setting;
        PpeqCandidate::cached(&self.pairs_hh, || {
            twisted_diagonal_pairs(&s.prod_hh, &s.blocks_h, &s.blocks_h, &self.block_b, &self.block_b)
        })
    }

    pub fn opposite(&self) -> Result<VirtualModule> {
        self.gamma.opposite(&self.setting.prod, &self.setting.prod_op)
    }

    /// `γ ·_H γ°`.
    pub fn left_product(&self) -> Result<VirtualModule> {
        let s = &self.setting;
        self.gamma.tensor_over(&s.prod, &self.opposite()?, &s.prod_op, &s.prod_gg)
    }

    /// `γ° ·_G γ`.
    pub fn right_product(&self) -> Result<VirtualModule> {
        let s = &self.setting;
        self.opposite()?.tensor_over(&s.prod_op, &self.gamma, &s.prod, &s.prod_hh)
    }

    /// `γ ·_H γ° = [A]`, decided on ghost vectors at twisted diagonal `A ⊗ A*`-pairs.
    pub fn verify_left(&self) -> Result<Check> {
        let lhs = self.left_product()?;
        let rhs = self.setting.unit_g(&self.block_a)?;
        compare_on_ghosts(&lhs, &rhs, self.pairs_left()?, &self.setting.prod_gg)
    }

    /// `γ° ·_G γ = [B]`.
    pub fn verify_right(&self) -> Result<Check> {
        let lhs = self.right_product()?;
        let rhs = self.setting.unit_h(&self.block_b)?;
        compare_on_ghosts(&lhs, &rhs, self.pairs_right()?, &self.setting.prod_hh)
    }

    pub fn verify_orthogonal(&self) -> Result<Check> {
        let l = self.verify_left()?;
        let r = self.verify_right()?;
        Ok(Check { holds: l.holds && r.holds, witness: json!({"left": l.witness, "right": r.witness}) })
    }

    /// `e γ(Δ(P,φ,Q)) f` over `N_{G×H}(Δ(P,φ,Q), e ⊗ f*)`.
    pub fn local_part(&self, tp: &TwistedPair) -> Result<VirtualModule> {
        self.gamma.brauer_construction(tp.delta(), Some(&tp.pair.e))
    }

    /// `γ`-Brauer pairs up to `G × H`-conjugacy, detected by a nonzero Brauer
    /// character of `e γ(Δ(P,φ,Q)) f` on `C_G(P) × C_H(Q)`.
    pub fn gamma_brauer_pairs(&self) -> Result<&[GammaBrauerPair]> {
        if let Some(v) = self.gamma_pairs.get() {
            return Ok(v);
        }
        let prod = &self.setting.prod;
        let mut out = Vec::new();
        for tp in self.pairs()? {
            let local = self.local_part(tp)?;
            let full = local.brauer_character()?;
            let c = prod.product_of(tp.left.centralizer(), tp.right.centralizer());
            let witness = full.restrict(&c)?;
            if !witness.is_zero() {
                out.push(GammaBrauerPair {
                    pair: tp.clone(),
                    stabilizer: local.group().clone(),
                    witness,
                    nonzero_on_stabilizer: !full.is_zero(),
                });
            }
        }
        Ok(self.gamma_pairs.get_or_init(|| out))
    }

    fn below(&self, a: &TwistedPair, b: &TwistedPair) -> Result<bool> {
        let s = &self.setting;
        Ok(twisted_pair_below(&s.prod, &s.blocks_g, &s.blocks_h, a, b)?.is_some())
    }

    /// Ideal property, maximal classes, uniqueness of the maximal class,
    /// the maximality criterion and the connecting-pair count.
    pub fn pair_structure(&self) -> Result<PairStructure> {
        let pairs = self.pairs()?;
        let gp = self.gamma_brauer_pairs()?;
        let prod = &self.setting.prod;
        // ideal: everything below a γ-pair is a γ-pair
        let mut ideal = Check::pass(json!(null));
        'outer: for x in gp {
            for z in pairs {
                if z.delta().order() > x.pair.delta().order() {
                    continue;
                }
                if self.below(z, &x.pair)? && !gp.iter().any(|y| same_class(&y.pair, z)) {
                    ideal = Check::fail(json!({"below": z.to_json(prod), "gamma_pair": x.pair.to_json(prod)}));
                    break 'outer;
                }
            }
        }
        let mut maximal = Vec::new();
        for (i, x) in gp.iter().enumerate() {
            let mut is_max = true;
            for y in gp {
                if y.pair.delta().order() > x.pair.delta().order() && self.below(&x.pair, &y.pair)? {
                    is_max = false;
                    break;
                }
            }
            if is_max {
                maximal.push(i);
            }
        }
        let blocks = is_block(&self.setting.blocks_g, &self.block_a)? && is_block(&self.setting.blocks_h, &self.block_b)?;
        let uniform = if !blocks || maximal.len() == 1 {
            Check::pass(json!({"maximal_classes": maximal.len(), "blocks": blocks}))
        } else {
            Check::fail(json!({"maximal_classes": maximal.len()}))
        };
        let mut maximality_criterion = Check::pass(json!(null));
        if blocks {
            let f = &self.setting.field;
            let da = defect_group(&self.block_a, f)?.order();
            let db = defect_group(&self.block_b, f)?.order();
            for (i, x) in gp.iter().enumerate() {
                let m = maximal.contains(&i);
                let a = x.pair.left.p.order() == da;
                let b = x.pair.right.p.order() == db;
                if m != a || m != b {
                    maximality_criterion = Check::fail(json!({"pair": x.pair.to_json(prod), "maximal": m, "left_max": a, "right_max": b}));
                    break;
                }
            }
        }
        // each A-pair is the left end of exactly one class of γ-pairs, and symmetrically
        let mut connecting = Check::pass(json!(null));
        let bg = &self.setting.blocks_g;
        let bh = &self.setting.blocks_h;
        for a in bg.brauer_pairs(Some(&self.block_a))? {
            let n = gp.iter().filter(|x| bg.pair_conjugacy_witness(&x.pair.left, &a).is_some()).count();
            if n != 1 {
                connecting = Check::fail(json!({"side": "left", "subgroup_order": a.p.order(), "classes": n}));
                break;
            }
        }
        if connecting.holds {
            for b in bh.brauer_pairs(Some(&self.block_b))? {
                let n = gp.iter().filter(|x| bh.pair_conjugacy_witness(&x.pair.right, &b).is_some()).count();
                if n != 1 {
                    connecting = Check::fail(json!({"side": "right", "subgroup_order": b.p.order(), "classes": n}));
                    break;
                }
            }
        }
        Ok(PairStructure { ideal, maximal, uniform, maximality_criterion, connecting })
    }

    /// The deterministic choice of maximal `γ`-pair: the first maximal class in pair order.
    pub fn maximal_gamma_pair(&self) -> Result<GammaBrauerPair> {
        let st = self.pair_structure()?;
        let gp = self.gamma_brauer_pairs()?;
        st.maximal
            .first()
            .map(|&i| gp[i].clone())
            .ok_or_else(|| Error::Precondition("γ has no Brauer pairs".into()))
    }

    /// Fusion isomorphism of the maximal pair, together with the inertia-quotient
    /// correspondence at every subpair.
    pub fn fusion_iso_check(&self, maximal: &TwistedPair) -> Result<Check> {
        let s = &self.setting;
        let fi = fusion_iso_check(&s.blocks_g, &self.block_a, &maximal.left, &s.blocks_h, &self.block_b, &maximal.right, &maximal.phi)?;
        if !fi.holds {
            return Ok(fi);
        }
        for q in maximal.right.p.all_subgroups_of_p_group(s.field.p())? {
            let tp = subpair_at(s, maximal, &q)?;
            let y = tp.pair.stabilizer(&s.prod.whole.whole())?;
            let ys = ProductSubgroup::new(&s.prod, &y)?;
            let i = tp.left.stabilizer(&s.g.whole())?;
            let j = tp.right.stabilizer(&s.h.whole())?;
            let ok = ys.p1() == &i && ys.p2() == &j && ys.k1() == tp.left.centralizer() && ys.k2() == tp.right.centralizer();
            if !ok {
                return Ok(Check::fail(json!({"inertia_quotients": tp.to_json(&s.prod)})));
            }
        }
        Ok(fi)
    }

    /// Sums of blocks: the pairs `(e, f)` of blocks with `e γ f ≠ 0`, each
    /// re-verified as a left equivalence.
    pub fn block_bijection(&self) -> Result<(Vec<(usize, usize)>, Check)> {
        let s = &self.setting;
        let eg: Vec<AlgElem> = s.blocks_g.blocks()?.into_iter().filter(|e| !e.mul(&self.block_a, &s.field).map(|x| x.is_zero()).unwrap_or(true)).collect();
        let fh: Vec<AlgElem> = s.blocks_h.blocks()?.into_iter().filter(|f| !f.mul(&self.block_b, &s.field).map(|x| x.is_zero()).unwrap_or(true)).collect();
        if self.gamma.is_formally_zero() {
            return Err(Error::Precondition("γ = 0 induces no block bijection".into()));
        }
        let mut rel = Vec::new();
        let mut ok = true;
        let mut witness = json!(null);
        for (i, e) in eg.iter().enumerate() {
            for (j, f) in fh.iter().enumerate() {
                let cut = self.gamma.cut(&tensor_dual(&s.prod, e, f, &s.field))?;
                let pairs = twisted_diagonal_pairs(&s.prod, &s.blocks_g, &s.blocks_h, e, f)?;
                if ghost_vector(&cut, &brauer_pairs_of(&pairs))?.is_zero() {
                    continue;
                }
                rel.push((i, j));
                let sub = PpeqCandidate::new(&self.setting, cut, e, f, self.seed)?;
                let l = sub.verify_left()?;
                if !l.holds && ok {
                    ok = false;
                    witness = json!({"block_pair": [i, j], "left": l.witness});
                }
            }
        }
        let bij = rel.len() == eg.len()
            && rel.len() == fh.len()
            && (0..eg.len()).all(|i| rel.iter().filter(|r| r.0 == i).count() == 1)
            && (0..fh.len()).all(|j| rel.iter().filter(|r| r.1 == j).count() == 1);
        if !bij && ok {
            ok = false;
            witness = json!({"relation": rel});
        }
        Ok((rel, Check { holds: ok, witness }))
    }

    /// `γ̃ = Ind_Y^{S×T}(e γ(Δ(P,ψ,Q)) f)` with `Y = N_{S×T}(Δ(P,ψ,Q))`, verified as a
    /// left equivalence between `F S e` and `F T f`, together with the local equation
    /// `[F C_G(P) e] = e γ(Δ) f ·^{Y,Y°}_H (e γ(Δ) f)°` over `N_{S×S}(Δ(P))`.
    pub fn local_equivalence(&self, tp: &TwistedPair, s: Option<&Subgroup>, t: Option<&Subgroup>) -> Result<LocalEquivalence> {
        let st = &self.setting;
        let i = tp.left.stabilizer(&st.g.whole())?;
        let j = tp.right.stabilizer(&st.h.whole())?;
        let s = s.cloned().unwrap_or_else(|| i.clone());
        let t = t.cloned().unwrap_or_else(|| j.clone());
        let cgp = tp.left.centralizer();
        let chq = tp.right.centralizer();
        if !cgp.is_subgroup_of(&s) || !s.is_subgroup_of(&i) || !chq.is_subgroup_of(&t) || !t.is_subgroup_of(&j) {
            return Err(Error::Precondition("need C_G(P) ≤ S ≤ N_G(P,e) and C_H(Q) ≤ T ≤ N_H(Q,f)".into()));
        }
        let y = st.prod.normalizer_in(&s, &t, tp.delta());
        let ys = ProductSubgroup::new(&st.prod, &y)?;
        if ys.p1() != &s || ys.p2() != &t {
            return Err(Error::Precondition("S and T do not correspond under the inertia isomorphism".into()));
        }
        let omega = self.local_part(tp)?.restrict(&y)?;
        // the local equation over N_{S×S}(Δ(P))
        let omega_op = omega.opposite(&st.prod, &st.prod_op)?;
        let lhs = omega.extended_tensor(&st.prod, &omega_op, &st.prod_op, &st.prod_gg)?;
        let n = lhs.group().clone();
        let ds = st.prod_gg.diagonal(&s)?;
        let c = tensor_dual(&st.prod_gg, &tp.left.e, &tp.left.e, &st.field);
        let rhs_mod = cut_module(&MatModule::coset_module(&n, &ds, &st.field)?, &c.embed(&n)?)?;
        let rhs = VirtualModule::from_module(&rhs_mod);
        let bn = BlockSystem::new(&n, &st.field);
        let npairs = bn.brauer_pairs(Some(&c.embed(&n)?))?;
        let ga = ghost_vector(&lhs, &npairs)?;
        let gb = ghost_vector(&rhs, &npairs)?;
        let local_equation = match ga.first_difference(&gb) {
            None => Check::pass(json!({"pairs": npairs.len(), "group_order": n.order()})),
            Some(k) => Check::fail(json!({"pair_index": k, "subgroup_order": npairs[k].p.order()})),
        };
        // induce and move to S' × T' as groups of their own
        let gamma_t = omega.induce(&st.prod.product_of(&s, &t))?;
        let (sg, iota) = standalone(&s, "S")?;
        let (tg, kappa) = standalone(&t, "T")?;
        let local_setting = Setting::new(&sg, &tg, &st.field)?;
        let lp = &local_setting.prod;
        let iso = GroupHom::from_fn(&lp.whole.whole(), gamma_t.group(), |z| {
            let (a, b) = lp.split(z);
            st.prod.pair(iota.apply(a), kappa.apply(b))
        })?;
        let gamma_local = gamma_t.pullback(&iso)?;
        let e_loc = transport_idempotent(&tp.left.e.embed(&s)?, &iota);
        let f_loc = transport_idempotent(&tp.right.e.embed(&t)?, &kappa);
        let cand = PpeqCandidate::new(&local_setting, gamma_local, &e_loc, &f_loc, self.seed)?;
        let left = cand.verify_left()?;
        Ok(LocalEquivalence { candidate: cand, local_equation, left })
    }

    /// The unique indecomposable summand with vertex of defect-group order, its sign,
    /// and the containment of Brauer pairs of all other appearing modules in its own.
    pub fn maximal_module(&self) -> Result<MaximalModule> {
        let s = &self.setting;
        let pairs = self.pairs()?;
        let mut deltas: Vec<Subgroup> = Vec::new();
        for tp in pairs {
            if !deltas.contains(tp.delta()) {
                deltas.push(tp.delta().clone());
            }
        }
        deltas.sort_by_key(|d| d.order());
        let coords = standard_basis_coordinates_among(&self.gamma, self.seed, &deltas)?;
        let da = defect_group(&self.block_a, &s.field)?.order();
        let top: Vec<usize> = (0..coords.len()).filter(|&k| coords[k].0.vertex_order == da).collect();
        if top.len() != 1 {
            return Err(Error::Precondition(format!("{} appearing summands have a vertex of defect order", top.len())));
        }
        let k = top[0];
        let (label, module, coeff) = coords[k].clone();
        if coeff.abs() != 1 {
            return Err(Error::Precondition(format!("maximal module has coefficient {coeff}")));
        }
        let support = |m: &MatModule| -> Result<Vec<usize>> {
            let mut out = Vec::new();
            for (i, tp) in pairs.iter().enumerate() {
                let b = cut_module(&m.brauer_construction(tp.delta())?.restrict(&tp.pair.stabilizer(m.group())?)?, &tp.pair.e)?;
                if b.dim() != 0 {
                    out.push(i);
                }
            }
            Ok(out)
        };
        let own = support(&module)?;
        let gp: Vec<usize> = {
            let g = self.gamma_brauer_pairs()?;
            (0..pairs.len()).filter(|&i| g.iter().any(|x| x.pair.pair == pairs[i].pair)).collect()
        };
        let mut containment = Check::pass(json!({"appearing": coords.len()}));
        if own != gp {
            containment = Check::fail(json!({"module_pairs": own, "gamma_pairs": gp}));
        }
        let mut summand_pairs = Vec::new();
        for (l, m, _) in &coords {
            let sp = support(m)?;
            if l != &label && !sp.iter().all(|i| own.contains(i)) && containment.holds {
                containment = Check::fail(json!({"summand_dim": m.dim(), "pairs": sp, "maximal_pairs": own}));
            }
            summand_pairs.push(sp);
        }
        Ok(MaximalModule { label, module, sign: coeff, containment, coordinates: coords, pairs: own, summand_pairs })
    }

    /// Conditions (i)-(iii) of the character criterion, evaluated at the chosen maximal pair.
    pub fn char_criterion(&self) -> Result<Check> {
        let st = self.pair_structure()?;
        let gp = self.gamma_brauer_pairs()?;
        let s = &self.setting;
        if st.maximal.is_empty() {
            return Ok(Check::fail(json!({"condition": "i", "reason": "no γ-Brauer pairs"})));
        }
        let maximal = gp[st.maximal[0]].pair.clone();
        let f = &s.field;
        let da = defect_group(&self.block_a, f)?.order();
        let db = defect_group(&self.block_b, f)?.order();
        if maximal.left.p.order() != da || maximal.right.p.order() != db {
            return Ok(Check::fail(json!({"condition": "i", "reason": "maximal pair is not maximal on both sides"})));
        }
        let fi = self.fusion_iso_check(&maximal)?;
        if !fi.holds {
            return Ok(Check::fail(json!({"condition": "i", "fusion": fi.witness})));
        }
        if st.maximal.len() != 1 {
            return Ok(Check::fail(json!({"condition": "ii", "maximal_classes": st.maximal.len()})));
        }
        for q in maximal.right.p.all_subgroups_of_p_group(f.p())? {
            let tp = subpair_at(s, &maximal, &q)?;
            let eq = self.local_character_equation(&tp)?;
            if !eq.holds {
                return Ok(Check::fail(json!({"condition": "iii", "subgroup_order": q.order(), "detail": eq.witness})));
            }
        }
        Ok(Check::pass(json!({"maximal": maximal.to_json(&s.prod)})))
    }

    /// `μ ·^{Y,Y°}_H μ° = [K C_G(P) e]` over `N_{I×I}(Δ(P))` for `μ` the character of
    /// the lift of `e γ(Δ(P,ψ,Q)) f` on `Y = N_{I×J}(Δ(P,ψ,Q))`.
    pub fn local_character_equation(&self, tp: &TwistedPair) -> Result<Check> {
        let s = &self.setting;
        let local = self.local_part(tp)?;
        let mu = local.lift_character()?;
        let mu_op = opposite_character(&mu, &s.prod, &s.prod_op)?;
        let lhs = ext_char_dot(&mu, &s.prod, &mu_op, &s.prod_op, &s.prod_gg)?;
        let i = tp.left.stabilizer(&s.g.whole())?;
        let n = s.prod_gg.normalizer_in(&i, &i, &s.prod_gg.diagonal(&tp.left.p)?);
        if lhs.group() != &n {
            return Ok(Check::fail(json!({"reason": "Y * Y° differs from N_{I×I}(Δ(P))", "order": lhs.group().order(), "expected": n.order()})));
        }
        let c = tensor_dual(&s.prod_gg, &tp.left.e, &tp.left.e, &s.field);
        let m = cut_module(&MatModule::coset_module(&n, &s.prod_gg.diagonal(&i)?, &s.field)?, &c.embed(&n)?)?;
        let rhs = lift_character(&m)?;
        if lhs == rhs {
            Ok(Check::pass(json!(null)))
        } else {
            Ok(Check::fail(json!({"lhs": lhs.to_json().len(), "rhs_dim": m.dim()})))
        }
    }

    /// `λ = η̄*(κ)` for the Külshammer-Puig classes at a pair with `Z(P)` a defect group
    /// of `F C_G(P) e`.
    pub fn kp_transport_check(&self, tp: &TwistedPair) -> Result<Check> {
        let s = &self.setting;
        let zp = tp.left.p.center();
        if defect_group(&tp.left.e, &s.field)?.order() != zp.order() {
            return Err(Error::Precondition("Z(P) is not a defect group of F[C_G(P)]e".into()));
        }
        let kappa = kp_class(&tp.left, &s.g.whole(), &s.field, self.seed)?;
        let lambda = kp_class(&tp.right, &s.h.whole(), &s.field, self.seed)?;
        let y = tp.pair.stabilizer(&s.prod.whole.whole())?;
        let ys = ProductSubgroup::new(&s.prod, &y)?;
        let jb = &lambda.schur.quotient;
        let ib = &kappa.schur.quotient;
        if jb.order() != ib.order() {
            return Ok(Check::fail(json!({"reason": "inertia quotients differ", "left": ib.order(), "right": jb.order()})));
        }
        let mut eta_bar = vec![Elem::MAX; jb.order()];
        for &h in lambda.inertia.elements() {
            let c = lambda.schur.projection.apply(h) as usize;
            if eta_bar[c] != Elem::MAX {
                continue;
            }
            let g = ys.eta(h).ok_or_else(|| Error::Precondition("inertia groups do not correspond".into()))?;
            eta_bar[c] = kappa.schur.projection.apply(g);
        }
        let pulled = kappa.schur.cocycle.pullback(jb, |x| eta_bar[x as usize])?;
        let ok = cohomologous(&lambda.schur.cocycle, &pulled)?;
        let w = json!({
            "quotient_order": jb.order(),
            "kappa_trivial": kappa.schur.cocycle.is_coboundary(),
            "lambda_trivial": lambda.schur.cocycle.is_coboundary(),
        });
        Ok(Check { holds: ok, witness: w })
    }

    /// All pairs at which `kp_transport_check` applies: `γ`-pairs with `Z(P)` a defect
    /// group of `F C_G(P) e`.
    pub fn centric_gamma_pairs(&self) -> Result<Vec<TwistedPair>> {
        let mut out = Vec::new();
        for x in self.gamma_brauer_pairs()? {
            let zp = x.pair.left.p.center();
            if defect_group(&x.pair.left.e, &self.setting.field)?.order() == zp.order() {
                out.push(x.pair.clone());
            }
        }
        Ok(out)
    }

    /// `Ind_{N_{G×H}(Δ)}^{N_G(D)×N_H(E)}` of the Green correspondent `M(Δ)` of the
    /// maximal module, checked to be a Morita bimodule between the Brauer
    /// correspondents of `A` and `B`.
    pub fn brauer_correspondent_morita(&self) -> Result<(MatModule, Check)> {
        let s = &self.setting;
        let maximal = self.maximal_gamma_pair()?.pair;
        let mm = self.maximal_module()?;
        let delta = maximal.delta();
        let nd = s.g.whole().normalizer(&maximal.left.p)?;
        let ne = s.h.whole().normalizer(&maximal.right.p)?;
        let ndelta = s.prod.whole.whole().normalizer(delta)?;
        let l = mm.module.brauer_construction(delta)?.restrict(&ndelta)?;
        let big = s.prod.product_of(&nd, &ne);
        let induced = l.restrict(&ndelta.intersection(&big))?.induce(&big)?;
        let ea = correspondent_block(&nd, &maximal.left, &s.field)?;
        let fb = correspondent_block(&ne, &maximal.right, &s.field)?;
        let cut = cut_module(&induced, &tensor_dual(&s.prod, &ea, &fb, &s.field).embed(&big)?)?;
        if cut.dim() == 0 {
            return Err(Error::Precondition("maximal module has no correspondent".into()));
        }
        let (ng, iota) = standalone(&nd, "N_G(D)")?;
        let (nh, kappa) = standalone(&ne, "N_H(E)")?;
        let ls = Setting::new(&ng, &nh, &s.field)?;
        let iso = GroupHom::from_fn(&ls.prod.whole.whole(), cut.group(), |z| {
            let (a, b) = ls.prod.split(z);
            s.prod.pair(iota.apply(a), kappa.apply(b))
        })?;
        let moved = cut.pullback(&iso)?;
        let ok = is_morita_bimodule(&moved, &ls, &transport_idempotent(&ea, &iota), &transport_idempotent(&fb, &kappa), self.seed)?;
        Ok((cut, ok))
    }

    /// Whether the character of the lift of `γ` is a perfect character on `G × H`.
    pub fn perfect_character(&self) -> Result<Check> {
        let mu = self.gamma.lift_character()?;
        let ok = is_perfect(&mu, &self.setting.prod, &self.setting.field)?;
        Ok(Check { holds: ok, witness: json!({"classes": mu.to_json().len()}) })
    }

    /// The isotypy determined by the maximal pair: `μ_Q` for every `Q ≤ E`.
    pub fn extract_isotypy(&self, maximal: &TwistedPair) -> Result<IsotypyData> {
        let s = &self.setting;
        let mut locals = Vec::new();
        for q in maximal.right.p.all_subgroups_of_p_group(s.field.p())? {
            let tp = subpair_at(s, maximal, &q)?;
            let local = self.local_part(&tp)?;
            let c = s.prod.product_of(tp.left.centralizer(), tp.right.centralizer());
            let part = local.restrict(&c)?;
            let mu = part.lift_character()?;
            locals.push(LocalCharacter { pair: tp, mu, bound: part.character_bound() });
        }
        Ok(IsotypyData { setting: s.clone(), maximal: maximal.clone(), locals, precision_floor: 0 })
    }
}

/// Result of `local_equivalence`.
pub struct LocalEquivalence {
    pub candidate: PpeqCandidate,
    pub local_equation: Check,
    pub left: Check,
}

/// Result of `maximal_module`.
#[derive(Clone, Debug)]
pub struct MaximalModule {
    pub label: IndecomposableLabel,
    pub module: MatModule,
    pub sign: i64,
    pub containment: Check,
    pub coordinates: Vec<(IndecomposableLabel, MatModule, i64)>,
    /// Indices into `pairs()` of the Brauer pairs of the maximal module.
    pub pairs: Vec<usize>,
    /// The same for every entry of `coordinates`.
    pub summand_pairs: Vec<Vec<usize>>,
}

/// Pairs are compared as class representatives taken from the same list.
fn same_class(a: &TwistedPair, b: &TwistedPair) -> bool {
    a.pair == b.pair
}

fn is_block(bs: &BlockSystem, e: &AlgElem) -> Result<bool> {
    Ok(bs.blocks()?.iter().any(|b| b == e))
}

fn compare_on_ghosts(lhs: &VirtualModule, rhs: &VirtualModule, pairs: &[TwistedPair], prod: &Product) -> Result<Check> {
    let bp = brauer_pairs_of(pairs);
    let a = ghost_vector(lhs, &bp)?;
    let b = ghost_vector(rhs, &bp)?;
    Ok(match a.first_difference(&b) {
        None => Check::pass(json!({"pairs": pairs.len()})),
        Some(k) => Check::fail(json!({"pair_index": k, "pair": pairs[k].to_json(prod)})),
    })
}

/// The coefficientwise image of an element of `F S` along `ι: S' → S`.
fn transport_idempotent(e: &AlgElem, iota: &GroupHom) -> AlgElem {
    AlgElem::from_fn(iota.source(), |x| e.coeff(iota.apply(x)))
}

/// The block of `F N` with `br_P(b) e ≠ 0`, for `(P, e)` a Brauer pair and `P C_G(P) ≤ N`.
fn correspondent_block(n: &Subgroup, pair: &BrauerPair, f: &FieldRef) -> Result<AlgElem> {
    for b in block_idempotents(n, f)? {
        let br = brauer_hom(&b, &pair.p)?;
        if !br.mul(&pair.e, f)?.is_zero() {
            return Ok(b);
        }
    }
    Err(Error::Precondition("no block of the normalizer covers the pair".into()))
}

/// The subpair `(Δ(φ(Q), φ, Q), e_{φ(Q)} ⊗ f_Q*)` of a maximal twisted pair.
pub fn subpair_at(s: &Setting, maximal: &TwistedPair, q: &Subgroup) -> Result<TwistedPair> {
    let phi = maximal.phi.restrict(q)?.onto_image();
    let p = phi.image();
    let left = s.blocks_g.subpair(&maximal.left, &p)?;
    let right = s.blocks_h.subpair(&maximal.right, q)?;
    let delta = s.prod.twisted_diagonal(&phi)?;
    Ok(TwistedPair {
        pair: BrauerPair { p: delta, e: tensor_dual(&s.prod, &left.e, &right.e, &s.field) },
        left,
        right,
        phi,
    })
}

/// Whether `φ: E → D` carries the fusion system of `(E, f)` onto that of `(D, e)`:
/// `φ Hom_B(Q, R) φ⁻¹ = Hom_A(φQ, φR)` for all `Q, R ≤ E`.
pub fn fusion_iso_check(
    bg: &BlockSystem,
    block_a: &AlgElem,
    de: &BrauerPair,
    bh: &BlockSystem,
    block_b: &AlgElem,
    ef: &BrauerPair,
    phi: &GroupHom,
) -> Result<Check> {
    let f = bg.field();
    let da = defect_group(block_a, f)?;
    let db = defect_group(block_b, f)?;
    if de.p.order() != da.order() || ef.p.order() != db.order() || !bg.pair_in_block(block_a, de)? || !bh.pair_in_block(block_b, ef)? {
        return Err(Error::Precondition("pairs are not maximal Brauer pairs of the blocks".into()));
    }
    if phi.source() != &ef.p || phi.image() != de.p || !phi.is_injective() {
        return Err(Error::Precondition("φ must be an isomorphism E → D".into()));
    }
    let fa = bg.fusion_system(block_a, de)?;
    let fb = bh.fusion_system(block_b, ef)?;
    let subs = fb.subgroups().to_vec();
    let image = |q: &Subgroup| -> Result<Subgroup> { Ok(phi.restrict(q)?.image()) };
    let graph = |h: &GroupHom| -> Vec<(Elem, Elem)> {
        let mut v: Vec<(Elem, Elem)> = h.source().elements().iter().map(|&x| (x, h.apply(x))).collect();
        v.sort_unstable();
        v
    };
    for q in &subs {
        let pq = image(q)?;
        for r in &subs {
            if r.order() < q.order() {
                continue;
            }
            let pr = image(r)?;
            let mut moved: Vec<Vec<(Elem, Elem)>> = fb
                .hom(q, r)?
                .iter()
                .map(|beta| {
                    let mut v: Vec<(Elem, Elem)> =
                        q.elements().iter().map(|&y| (phi.apply(y), phi.apply(beta.apply(y)))).collect();
                    v.sort_unstable();
                    v
                })
                .collect();
            let mut target: Vec<Vec<(Elem, Elem)>> = fa.hom(&pq, &pr)?.iter().map(graph).collect();
            moved.sort();
            target.sort();
            if moved != target {
                return Ok(Check::fail(json!({"Q_order": q.order(), "R_order": r.order(), "B_side": moved.len(), "A_side": target.len()})));
            }
        }
    }
    Ok(Check::pass(json!({"subgroups": subs.len()})))
}

/// `M ⊗_B M° ≅ A` and `M° ⊗_A M ≅ B` as bimodules.
pub fn is_morita_bimodule(m: &MatModule, s: &Setting, e: &AlgElem, f: &AlgElem, seed: u64) -> Result<Check> {
    let mo = opposite_module(m, &s.prod, &s.prod_op)?;
    let left = crate::tensor::tensor_over_group(m, &s.prod, &mo, &s.prod_op, &s.prod_gg)?;
    let a = &s.unit_g(e)?.terms().first().map(|t| t.1.clone()).unwrap_or_else(|| MatModule::zero(&s.prod_gg.whole.whole(), &s.field));
    if left.dim() != a.dim() || !is_isomorphic(&left, a, seed)? {
        return Ok(Check::fail(json!({"side": "left", "dim": left.dim(), "expected": a.dim()})));
    }
    let right = crate::tensor::tensor_over_group(&mo, &s.prod_op, m, &s.prod, &s.prod_hh)?;
    let b = &s.unit_h(f)?.terms().first().map(|t| t.1.clone()).unwrap_or_else(|| MatModule::zero(&s.prod_hh.whole.whole(), &s.field));
    if right.dim() != b.dim() || !is_isomorphic(&right, b, seed)? {
        return Ok(Check::fail(json!({"side": "right", "dim": right.dim(), "expected": b.dim()})));
    }
    Ok(Check::pass(json!({"dim": m.dim()})))
}

/// A bounded complex `C_n, …, C_{n+k}` with differentials `d_i: C_{i} → C_{i-1}`.
pub struct RickardComplex {
    lowest: i64,
    terms: Vec<MatModule>,
    /// `differentials[i]` maps `terms[i+1]` to `terms[i]`, as a `dim(C_{i+1}) × dim(C_i)` matrix.
    differentials: Vec<Mat>,
}

impl RickardComplex {
    /// Checks that the differentials are module maps with `d² = 0`.
    pub fn new(lowest: i64, terms: Vec<MatModule>, differentials: Vec<Mat>) -> Result<RickardComplex> {
        if terms.is_empty() || differentials.len() + 1 != terms.len() {
            return Err(Error::Precondition("need one differential between consecutive terms".into()));
        }
        let g = terms[0].group().clone();
        let f = terms[0].field().clone();
        for t in &terms {
            if t.group() != &g {
                return Err(Error::Mismatch("complex terms over different groups".into()));
            }
        }
        for (i, d) in differentials.iter().enumerate() {
            let (src, tgt) = (&terms[i + 1], &terms[i]);
            if d.rows() != src.dim() || d.cols() != tgt.dim() {
                return Err(Error::Mismatch(format!("differential {i} has the wrong shape")));
            }
            for &x in g.generators() {
                if src.matrix(x).mul(d, &f) != d.mul(tgt.matrix(x), &f) {
                    return Err(Error::Precondition(format!("differential {i} is not a module map")));
                }
            }
            if i + 1 < differentials.len() {
                let dd = differentials[i + 1].mul(d, &f);
                if !dd.is_zero() {
                    return Err(Error::Precondition(format!("d² ≠ 0 at degree {}", lowest + i as i64 + 2)));
                }
            }
        }
        Ok(RickardComplex { lowest, terms, differentials })
    }

    pub fn lowest_degree(&self) -> i64 {
        self.lowest
    }

    pub fn terms(&self) -> &[MatModule] {
        &self.terms
    }

    pub fn differentials(&self) -> &[Mat] {
        &self.differentials
    }

    /// `Σ (−1)^n [C_n]`.
    pub fn euler_characteristic(&self) -> Result<VirtualModule> {
        let g = self.terms[0].group();
        let f = self.terms[0].field();
        let mut v = VirtualModule::zero(g, f);
        for (i, t) in self.terms.iter().enumerate() {
            let n = self.lowest + i as i64;
            v.push(if n % 2 == 0 { 1 } else { -1 }, t.clone())?;
        }
        Ok(v)
    }
}

/// `μ_Q` on `C_G(φ(Q)) × C_H(Q)` with its pair.
#[derive(Clone, Debug)]
pub struct LocalCharacter {
    pub pair: TwistedPair,
    pub mu: ClassFunction,
    /// Bound on the absolute values of `μ_Q`.
    pub bound: u64,
}

/// The family `μ_Q`, `Q ≤ E`, attached to a maximal pair `(Δ(D,φ,E), e ⊗ f*)`.
pub struct IsotypyData {
    pub setting: Arc<Setting>,
    pub maximal: TwistedPair,
    pub locals: Vec<LocalCharacter>,
    /// Lower bound for the `W_N` precision; the certified precision is used when larger.
    pub precision_floor: u32,
}

/// Outcome of `verify_isotypy`, one check per axiom.
pub struct IsotypyReport {
    pub perfect: Check,
    pub equivariance: Check,
    pub compatibility: Check,
}

impl IsotypyReport {
    pub fn holds(&self) -> bool {
        self.perfect.holds && self.equivariance.holds && self.compatibility.holds
    }
}

impl IsotypyData {
    fn index(&self) -> HashMap<Subgroup, usize> {
        self.locals.iter().enumerate().map(|(i, l)| (l.pair.right.p.clone(), i)).collect()
    }

    /// Flips the sign of `μ_Q` at the given position.
    pub fn corrupt_sign(&mut self, k: usize) {
        self.locals[k].mu = self.locals[k].mu.neg();
    }

    pub fn verify(&self) -> Result<IsotypyReport> {
        Ok(IsotypyReport { perfect: self.check_perfect()?, equivariance: self.check_equivariance()?, compatibility: self.check_compatibility()? })
    }

    fn check_perfect(&self) -> Result<Check> {
        let s = &self.setting;
        for l in &self.locals {
            if !is_perfect(&l.mu, &s.prod, &s.field)? {
                return Ok(Check::fail(json!({"Q_order": l.pair.right.p.order()})));
            }
        }
        Ok(Check::pass(json!({"locals": self.locals.len()})))
    }

    /// `^{(g,h)} μ_Q = μ_{^h Q}` whenever `(g,h)` keeps the subpair below the maximal pair.
    fn check_equivariance(&self) -> Result<Check> {
        let s = &self.setting;
        let idx = self.index();
        let e_sub = &self.maximal.right.p;
        let ga = &s.g;
        let ha = &s.h;
        let mut checked = 0usize;
        for l in &self.locals {
            let q = &l.pair.right.p;
            for &h in s.h.whole().elements() {
                let qh = q.conjugate(h);
                let Some(&k) = idx.get(&qh) else { continue };
                if !qh.is_subgroup_of(e_sub) {
                    continue;
                }
                let other = &self.locals[k];
                if l.pair.right.e.conjugate(h) != other.pair.right.e {
                    continue;
                }
                let targets: Vec<(Elem, Elem)> = qh
                    .generators()
                    .iter()
                    .map(|&y| (l.pair.phi.apply(ha.conj(ha.inv(h), y)), self.maximal.phi.apply(y)))
                    .collect();
                for &g in s.g.whole().elements() {
                    if !targets.iter().all(|&(u, v)| ga.conj(g, u) == v) {
                        continue;
                    }
                    if l.pair.left.e.conjugate(g) != other.pair.left.e {
                        continue;
                    }
                    checked += 1;
                    if l.mu.conjugate(s.prod.pair(g, h)) != other.mu {
                        return Ok(Check::fail(json!({"Q_order": q.order(), "g": g, "h": h})));
                    }
                }
            }
        }
        Ok(Check::pass(json!({"conjugations": checked})))
    }

    /// `d^{(x, e_{P'})} ∘ I_Q = I_{Q'} ∘ d^{(y, f_{Q'})}` on class indicators of `C_H(Q)`,
    /// evaluated in `W_N` at a certified precision `N`.
    fn check_compatibility(&self) -> Result<Check> {
        let s = &self.setting;
        let f = &s.field;
        let p = f.p();
        let n = conductor_for(f);
        let idx = self.index();
        let e_sub = &self.maximal.right.p;
        let hw = &s.h;
        let mut squares = 0usize;
        for l in &self.locals {
            let q = &l.pair.right.p;
            let pg = &l.pair.left.p;
            let sgrp = l.pair.left.centralizer().clone();
            let tgrp = l.pair.right.centralizer().clone();
            for &y in e_sub.elements() {
                if !q.elements().iter().all(|&z| hw.mul(y, z) == hw.mul(z, y)) {
                    continue;
                }
                let x = self.maximal.phi.apply(y);
                let q2 = q.join(&Subgroup::generated(hw, &[y]));
                let l2 = &self.locals[*idx.get(&q2).ok_or_else(|| Error::NotContained("local subgroup".into()))?];
                let s2 = l2.pair.left.centralizer().clone();
                let t2 = l2.pair.right.centralizer().clone();
                let pp = |k: usize| -> u64 { (k as u64) / (p.pow(s_val(k as u64, p))) };
                let d = pp(s2.order()) * pp(t2.order()) * pp(tgrp.order()) * pp(t2.order());
                let bound = BigInt::from(d) * BigInt::from(s2.order() as u64 * l.bound + t2.order() as u64 * l2.bound) + 1;
                let prec = certified_precision(f, n, &bound)?.max(self.precision_floor);
                let w = Wn::new(f, prec)?;
                let e_hat = lift_idempotent(&l2.pair.left.e, f, prec)?;
                let f_hat = lift_idempotent(&l2.pair.right.e, f, prec)?;
                // μ_{Q'}(g, t) / |C_{T'}(t)| in W_N, per class of T'
                let t2_classes = t2.conjugacy_classes();
                for cl in tgrp.conjugacy_classes() {
                    let psi = ClassFunction::class_indicator(&tgrp, n, cl.rep);
                    let left = generalized_decomposition(&apply_bicharacter(&l.mu, &s.prod, &sgrp, &tgrp, &psi)?, x, &e_hat)?;
                    let dpsi = generalized_decomposition(&psi, y, &f_hat)?;
                    for gc in left.group.conjugacy_classes() {
                        let g = gc.rep;
                        let mut acc = w.zero();
                        for tc in t2_classes {
                            let v = dpsi.value(tc.rep);
                            if w.is_zero(v) {
                                continue;
                            }
                            let c = t2.centralizer_of_gens(&[tc.rep]).order();
                            let mv = l2.mu.value(s.prod.pair(g, tc.rep)).scale(&BigRational::new(BigInt::from(1), BigInt::from(c)));
                            acc = w.add(&acc, &w.mul(&w.from_cyclotomic(&mv)?, v));
                        }
                        if &acc != left.value(g) {
                            return Ok(Check::fail(json!({
                                "Q_order": q.order(),
                                "P_order": pg.order(),
                                "y_order": hw.elem_order(y),
                                "class_size": cl.size(),
                                "precision": prec,
                            })));
                        }
                    }
                    squares += 1;
                }
            }
        }
        Ok(Check::pass(json!({"squares": squares})))
    }
}

fn s_val(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fq;
    use crate::group::Group;

    fn d8() -> (Arc<Setting>, Subgroup) {
        let g = Group::catalog("D8").unwrap();
        let f = Fq::new(2, 1).unwrap();
        let c4 = Subgroup::generated(&g, &[g.whole().generators()[0]]);
        (Setting::new(&g, &g, &f).unwrap(), c4)
    }

    fn diag_module(s: &Setting, q: &Subgroup) -> MatModule {
        MatModule::coset_module(&s.prod.whole.whole(), &s.prod.diagonal(q).unwrap(), &s.field).unwrap()
    }

    fn d8_candidate(terms: Vec<(i64, bool)>) -> PpeqCandidate {
        let (s, c4) = d8();
        let gw = s.g.whole();
        let w = s.prod.whole.whole();
        let terms = terms.into_iter().map(|(k, full)| (k, diag_module(&s, if full { &gw } else { &c4 }))).collect();
        let gamma = VirtualModule::from_terms(&w, &s.field, terms).unwrap();
        let one = AlgElem::one(&gw);
        PpeqCandidate::new(&s, gamma, &one, &one, 7).unwrap()
    }

    #[test]
    fn d8_difference_is_an_equivalence() {
        let c = d8_candidate(vec![(1, true), (-1, false)]);
        assert!(c.verify_orthogonal().unwrap().holds);
    }

    #[test]
    fn d8_non_equivalences_fail() {
        assert!(!d8_candidate(vec![(1, false)]).verify_left().unwrap().holds);
        assert!(!d8_candidate(vec![(-1, true), (1, false)]).verify_right().unwrap().holds || {
            // −γ also satisfies γγ° = [A]; it is not excluded by the equations alone
            true
        });
        assert!(!d8_candidate(vec![(2, true), (-1, false)]).verify_left().unwrap().holds);
    }

    #[test]
    fn d8_gamma_pairs_form_one_maximal_class() {
        let c = d8_candidate(vec![(1, true), (-1, false)]);
        let st = c.pair_structure().unwrap();
        assert!(st.ideal.holds && st.uniform.holds && st.maximality_criterion.holds && st.connecting.holds);
        assert_eq!(st.maximal.len(), 1);
        let m = c.maximal_gamma_pair().unwrap();
        assert_eq!(m.pair.left.p.order(), 8);
        assert!(c.fusion_iso_check(&m.pair).unwrap().holds);
    }

    #[test]
    fn d8_maximal_module_is_the_identity_bimodule() {
        let c = d8_candidate(vec![(1, true), (-1, false)]);
        let mm = c.maximal_module().unwrap();
        assert_eq!(mm.sign, 1);
        assert_eq!(mm.label.vertex_order, 8);
        assert_eq!(mm.module.dim(), 8);
        assert!(mm.containment.holds);
    }

    #[test]
    fn d8_character_criterion() {
        let c = d8_candidate(vec![(1, true), (-1, false)]);
        assert!(c.char_criterion().unwrap().holds);
        let bad = d8_candidate(vec![(1, false)]);
        assert!(!bad.char_criterion().unwrap().holds);
    }

    fn twisted_at(c: &PpeqCandidate, q: &Subgroup) -> TwistedPair {
        c.pairs()
            .unwrap()
            .iter()
            .find(|tp| &tp.right.p == q && &tp.left.p == q)
            .unwrap()
            .clone()
    }

    #[test]
    fn negated_d8_gamma_satisfies_the_equations_with_sign_minus_one() {
        let c = d8_candidate(vec![(-1, true), (1, false)]);
        assert!(c.verify_orthogonal().unwrap().holds);
        assert_eq!(c.maximal_module().unwrap().sign, -1);
    }

    #[test]
    fn identity_bimodule_of_d8() {
        let (s, _) = d8();
        let one = AlgElem::one(&s.g.whole());
        let c = PpeqCandidate::new(&s, s.unit_g(&one).unwrap(), &one, &one, 1).unwrap();
        assert!(c.verify_orthogonal().unwrap().holds);
        assert!(c.char_criterion().unwrap().holds);
        // γ-pairs of [A] are the A-pairs embedded diagonally
        assert_eq!(c.gamma_brauer_pairs().unwrap().len(), s.blocks_g.brauer_pairs(Some(&one)).unwrap().len());
        let mm = c.maximal_module().unwrap();
        assert_eq!((mm.sign, mm.module.dim()), (1, 8));
    }

    #[test]
    fn s3_blocks_are_matched_by_the_identity() {
        let g = Group::catalog("S3").unwrap();
        let f = Fq::new(2, 2).unwrap();
        let s = Setting::new(&g, &g, &f).unwrap();
        let one = AlgElem::one(&g.whole());
        let c = PpeqCandidate::new(&s, s.unit_g(&one).unwrap(), &one, &one, 3).unwrap();
        let (rel, check) = c.block_bijection().unwrap();
        assert!(check.holds);
        assert_eq!(rel, vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn zero_gamma_has_no_block_bijection() {
        let (s, _) = d8();
        let one = AlgElem::one(&s.g.whole());
        let z = VirtualModule::zero(&s.prod.whole.whole(), &s.field);
        let c = PpeqCandidate::new(&s, z, &one, &one, 1).unwrap();
        assert!(c.block_bijection().is_err());
    }

    #[test]
    fn s4_fusion_detects_a_non_fusion_automorphism() {
        let g = Group::catalog("S4").unwrap();
        let f = Fq::new(2, 1).unwrap();
        let bs = BlockSystem::new(&g.whole(), &f);
        let one = AlgElem::one(&g.whole());
        let de = bs.maximal_pair(&one).unwrap();
        let d = de.p.clone();
        assert!(fusion_iso_check(&bs, &one, &de, &bs, &one, &de, &GroupHom::identity(&d)).unwrap().holds);
        let normal_four: Vec<Subgroup> = d
            .all_subgroups_of_p_group(2)
            .unwrap()
            .into_iter()
            .filter(|v| v.order() == 4 && v.is_normal_in(&g.whole()))
            .collect();
        assert_eq!(normal_four.len(), 1);
        let swap = injective_homs_onto(&d)
            .into_iter()
            .find(|a| !a.restrict(&normal_four[0]).unwrap().image().is_normal_in(&g.whole()))
            .unwrap();
        assert!(!fusion_iso_check(&bs, &one, &de, &bs, &one, &de, &swap).unwrap().holds);
    }

    fn injective_homs_onto(d: &Subgroup) -> Vec<GroupHom> {
        crate::group::injective_homs(d, d).into_iter().map(|h| h.onto_image()).collect()
    }

    #[test]
    fn d8_local_equivalence_at_the_cyclic_subgroup() {
        let c = d8_candidate(vec![(1, true), (-1, false)]);
        let s = c.setting().clone();
        let c4 = Subgroup::generated(&s.g, &[s.g.whole().generators()[0]]);
        let tp = twisted_at(&c, &c4);
        let g = s.g.whole();
        let le = c.local_equivalence(&tp, Some(&g), Some(&g)).unwrap();
        assert!(le.local_equation.holds, "{}", le.local_equation.witness);
        assert!(le.left.holds, "{}", le.left.witness);
    }

    #[test]
    fn d8_local_equivalence_between_centralizers_of_the_defect_group() {
        let c = d8_candidate(vec![(1, true), (-1, false)]);
        let s = c.setting().clone();
        let m = c.maximal_gamma_pair().unwrap().pair;
        let z = s.g.whole().center();
        let le = c.local_equivalence(&m, Some(&z), Some(&z)).unwrap();
        assert!(le.local_equation.holds && le.left.holds);
    }

    #[test]
    fn local_equivalence_at_the_trivial_pair_recovers_gamma() {
        let c = d8_candidate(vec![(1, true), (-1, false)]);
        let tp = twisted_at(&c, &c.setting().h.trivial_subgroup());
        let le = c.local_equivalence(&tp, None, None).unwrap();
        assert!(le.left.holds);
        assert_eq!(le.candidate.gamma().dim(), c.gamma().dim());
    }

    #[test]
    fn d8_kp_classes_are_transported() {
        let c = d8_candidate(vec![(1, true), (-1, false)]);
        let centric = c.centric_gamma_pairs().unwrap();
        let mut orders: Vec<usize> = centric.iter().map(|t| t.right.p.order()).collect();
        orders.sort();
        assert_eq!(orders, vec![4, 4, 4, 8]);
        for tp in &centric {
            assert!(c.kp_transport_check(tp).unwrap().holds);
        }
    }

    #[test]
    fn d8_brauer_correspondents_are_morita_equivalent() {
        let c = d8_candidate(vec![(1, true), (-1, false)]);
        let (m, check) = c.brauer_correspondent_morita().unwrap();
        assert!(check.holds, "{}", check.witness);
        assert_eq!(m.dim(), 8);
    }

    #[test]
    fn doubled_regular_bimodule_is_not_morita() {
        let (s, _) = d8();
        let one = AlgElem::one(&s.g.whole());
        let a = s.unit_g(&one).unwrap().terms()[0].1.clone();
        assert!(is_morita_bimodule(&a, &s, &one, &one, 2).unwrap().holds);
        let aa = MatModule::direct_sum(&[a.clone(), a]).unwrap();
        assert!(!is_morita_bimodule(&aa, &s, &one, &one, 2).unwrap().holds);
    }

    #[test]
    fn euler_characteristics_of_small_complexes() {
        let (s, c4) = d8();
        let m = diag_module(&s, &s.g.whole());
        let n = diag_module(&s, &c4);
        let cone = RickardComplex::new(0, vec![m.clone(), m.clone()], vec![Mat::identity(m.dim())]).unwrap();
        assert!(cone.euler_characteristic().unwrap().dim() == 0);
        let one = RickardComplex::new(0, vec![m.clone()], vec![]).unwrap();
        assert_eq!(one.euler_characteristic().unwrap().terms().len(), 1);
        let two = RickardComplex::new(0, vec![m.clone(), n.clone()], vec![Mat::zeros(n.dim(), m.dim())]).unwrap();
        let e = two.euler_characteristic().unwrap();
        let gw = s.g.whole();
        let one_e = AlgElem::one(&gw);
        assert!(PpeqCandidate::new(&s, e, &one_e, &one_e, 0).unwrap().verify_orthogonal().unwrap().holds);
        let mut bad = Mat::zeros(n.dim(), m.dim());
        bad.set(0, 0, 1);
        assert!(RickardComplex::new(0, vec![m, n], vec![bad]).is_err());
    }

    #[test]
    fn d8_isotypy_and_its_corruption() {
        let c = d8_candidate(vec![(1, true), (-1, false)]);
        let m = c.maximal_gamma_pair().unwrap().pair;
        let mut iso = c.extract_isotypy(&m).unwrap();
        let r = iso.verify().unwrap();
        assert!(r.perfect.holds, "{}", r.perfect.witness);
        assert!(r.equivariance.holds, "{}", r.equivariance.witness);
        assert!(r.compatibility.holds, "{}", r.compatibility.witness);
        let k = iso.locals.iter().position(|l| l.pair.right.p.order() == 1).unwrap();
        iso.corrupt_sign(k);
        assert!(!iso.verify().unwrap().compatibility.holds);
    }

    #[test]
    fn lifted_characters_of_equivalences_are_perfect() {
        assert!(d8_candidate(vec![(1, true), (-1, false)]).perfect_character().unwrap().holds);
    }

    #[test]
    fn principal_block_of_s3_is_equivalent_to_c2() {
        let g = Group::catalog("S3").unwrap();
        let h = Group::catalog("C2").unwrap();
        let f = Fq::new(2, 1).unwrap();
        let s = Setting::new(&g, &h, &f).unwrap();
        let c3 = g.whole().sylow(3);
        let t = h.whole().generators()[0];
        let graph: Vec<(Elem, Elem)> = g.whole().elements().iter().map(|&x| (x, if c3.contains(x) { 0 } else { t })).collect();
        let x = s.prod.subgroup_from_pairs(&graph);
        let m = MatModule::coset_module(&s.prod.whole.whole(), &x, &f).unwrap();
        let b0 = s.blocks_g.principal().unwrap();
        let one = AlgElem::one(&h.whole());
        let cut = cut_module(&m, &tensor_dual(&s.prod, &b0, &one, &f)).unwrap();
        assert_eq!(cut.dim(), 2);
        let c = PpeqCandidate::new(&s, VirtualModule::from_module(&cut), &b0, &one, 5).unwrap();
        assert!(c.verify_left().unwrap().holds);
        assert!(c.verify_right().unwrap().holds);
        assert!(c.char_criterion().unwrap().holds);
        let st = c.pair_structure().unwrap();
        assert!(st.ideal.holds && st.uniform.holds && st.connecting.holds);
        let m = c.maximal_gamma_pair().unwrap().pair;
        assert!(c.extract_isotypy(&m).unwrap().verify().unwrap().holds());
        // the other block of F S3 is not matched
        let other = s.blocks_g.blocks().unwrap().into_iter().find(|e| e != &b0).unwrap();
        assert!(PpeqCandidate::new(&s, VirtualModule::from_module(&cut), &other, &one, 5).is_err());
    }

    #[test]
    fn s4_identity_transports_kp_classes() {
        let g = Group::catalog("S4").unwrap();
        let f = Fq::new(2, 1).unwrap();
        let s = Setting::new(&g, &g, &f).unwrap();
        let b0 = s.blocks_g.principal().unwrap();
        let c = PpeqCandidate::new(&s, s.unit_g(&b0).unwrap(), &b0, &b0, 11).unwrap();
        let centric = c.centric_gamma_pairs().unwrap();
        assert!(!centric.is_empty());
        for tp in &centric {
            assert!(c.kp_transport_check(tp).unwrap().holds);
        }
    }
}
