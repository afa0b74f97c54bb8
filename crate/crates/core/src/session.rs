//! Session files: JSON descriptions of groups, blocks, a candidate `γ` and a task list,
//! run into a deterministic report of verdicts.

use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{tensor_dual, AlgElem};
use crate::blocks::{cut_module, defect_group, BrauerPair};
use crate::decompose::decompose;
use crate::engine::{Check, PpeqCandidate, RickardComplex, Setting};
use crate::error::{Error, Result};
use crate::field::{FieldRef, Fq};
use crate::group::{Elem, Group, GroupHom, GroupRef, Subgroup};
use crate::linalg::Mat;
use crate::module::MatModule;
use crate::perm::Perm;
use crate::virtual_module::{vertex, VirtualModule};

/// A catalog name such as `"D8"`, or generators in image notation on `0..degree`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupLiteral {
    Catalog(String),
    Perms {
        #[serde(default)]
        name: Option<String>,
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
}

impl GroupLiteral {
    pub fn build(&self) -> Result<GroupRef> {
        match self {
            GroupLiteral::Catalog(n) => Group::catalog(n),
            GroupLiteral::Perms { name, degree, generators } => {
                let gens = generators.iter().map(|g| Perm::from_images(g.clone())).collect::<Result<Vec<_>>>()?;
                Group::from_generators(name.as_deref().unwrap_or("G"), *degree, gens)
            }
        }
    }

    /// The explicit form of a built group.
    pub fn of(g: &GroupRef) -> GroupLiteral {
        GroupLiteral::Perms {
            name: Some(g.name().to_string()),
            degree: g.degree(),
            generators: g.generators().iter().map(|&x| g.perm(x).images()).collect(),
        }
    }
}

/// `"all"`, `"principal"`, a block index, or a list of indices into the block list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BlockSelector {
    Named(String),
    Index(usize),
    Indices(Vec<usize>),
}

/// An element of `G`, `H` (a permutation) or `G × H` (a pair of permutations).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemLiteral {
    Perm(Vec<usize>),
    Pair(Vec<usize>, Vec<usize>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    G,
    H,
    #[serde(rename = "GxH")]
    GxH,
}

/// The permutation module `F[X/S]` for `S` generated by `subgroup`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub on: Side,
    #[serde(default)]
    pub subgroup: Vec<ElemLiteral>,
}

/// One term `c·[M]` of `γ`; exactly one of `identity`, `diagonal`, `subgroup` is set.
/// `diagonal` gives generators of `Q ≤ H` and `phi` their images in `G` (default: the
/// same permutations), producing `F[(G×H)/Δ(φQ, φ, Q)]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaTerm {
    #[serde(default = "one")]
    pub coeff: i64,
    #[serde(default)]
    pub identity: bool,
    #[serde(default)]
    pub diagonal: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub phi: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub subgroup: Option<Vec<(Vec<usize>, Vec<usize>)>>,
}

fn one() -> i64 {
    1
}

/// A differential given as `"zero"` or as rows of integers reduced into the prime field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixLiteral {
    Named(String),
    Rows(Vec<Vec<i64>>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    #[serde(default)]
    pub lowest: i64,
    pub terms: Vec<GammaTerm>,
    #[serde(default)]
    pub differentials: Vec<MatrixLiteral>,
    /// The caller asserts a splendid Rickard complex; the Euler characteristic is then verified.
    #[serde(default)]
    pub assert_rickard: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskSpec {
    pub task: String,
    #[serde(default)]
    pub module: Option<ModuleSpec>,
    #[serde(default)]
    pub p_subgroup: Option<Vec<ElemLiteral>>,
    /// Index into the list of `γ`-Brauer pairs.
    #[serde(default)]
    pub pair: Option<usize>,
    #[serde(default)]
    pub complex: Option<ComplexSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionSpec {
    #[serde(rename = "G")]
    pub g: GroupLiteral,
    #[serde(rename = "H", default)]
    pub h: Option<GroupLiteral>,
    pub p: u64,
    #[serde(default)]
    pub field_degree: Option<u32>,
    #[serde(default)]
    pub block_a: Option<BlockSelector>,
    #[serde(default)]
    pub block_b: Option<BlockSelector>,
    #[serde(default)]
    pub gamma: Option<Vec<GammaTerm>>,
    #[serde(default)]
    pub tasks: Vec<TaskSpec>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub output: Option<String>,
}

impl SessionSpec {
    pub fn parse(text: &str) -> Result<SessionSpec> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub precision: Option<u32>,
    pub jobs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub theorem: String,
    pub status: Status,
    pub witness: Value,
    pub timing_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub groups: Vec<GroupLiteral>,
    pub p: u64,
    pub field_degree: u32,
    pub seed: u64,
    pub verdicts: Vec<Verdict>,
}

impl Report {
    /// 0 when every verdict passes, 3 if a precondition failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.verdicts.iter().any(|v| v.status == Status::Error) {
            3
        } else if self.verdicts.iter().any(|v| v.status == Status::Fail) {
            1
        } else {
            0
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// The report with all timings zeroed, for comparing runs.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        for v in &mut r.verdicts {
            v.timing_ms = 0;
        }
        r
    }
}

/// Everything a task needs, built once per session.
pub struct Context {
    pub setting: Arc<Setting>,
    pub block_a: AlgElem,
    pub block_b: AlgElem,
    pub candidate: Option<PpeqCandidate>,
    pub seed: u64,
    pub precision: Option<u32>,
}

/// Parses the session objects; any failure here is a session error (exit 2).
pub fn prepare(spec: &SessionSpec, opts: &RunOptions) -> Result<Context> {
    let g = spec.g.build()?;
    let h = match &spec.h {
        None => g.clone(),
        Some(l) if l == &spec.g => g.clone(),
        Some(l) => l.build()?,
    };
    let field = choose_field(spec.p, spec.field_degree, &g, &h)?;
    let setting = Setting::new(&g, &h, &field)?;
    let block_a = select_blocks(&setting, &g.whole(), spec.block_a.as_ref(), true)?;
    let block_b = select_blocks(&setting, &h.whole(), spec.block_b.as_ref(), false)?;
    let seed = opts.seed.or(spec.seed).unwrap_or(0);
    let candidate = match &spec.gamma {
        None => None,
        Some(terms) => {
            let gamma = build_gamma(&setting, terms, &block_a, &block_b)?;
            Some(PpeqCandidate::new(&setting, gamma, &block_a, &block_b, seed)?)
        }
    };
    Ok(Context { setting, block_a, block_b, candidate, seed, precision: opts.precision })
}

/// `F_{p^k}` with `k` raised to a multiple of the splitting degree when needed.
fn choose_field(p: u64, degree: Option<u32>, g: &GroupRef, h: &GroupRef) -> Result<FieldRef> {
    let exp = num_integer::lcm(g.exponent(), h.exponent());
    let k0 = Fq::splitting(p, exp)?.k();
    let k = match degree {
        None => k0,
        Some(k) if k % k0 == 0 => k,
        Some(k) => num_integer::lcm(k, k0),
    };
    Fq::new(p, k)
}

fn select_blocks(s: &Setting, t: &Subgroup, sel: Option<&BlockSelector>, left: bool) -> Result<AlgElem> {
    let bs = if left { &s.blocks_g } else { &s.blocks_h };
    let blocks = bs.blocks()?;
    let sum = |idx: &[usize]| -> Result<AlgElem> {
        let mut e = AlgElem::zero(t);
        for &i in idx {
            let b = blocks.get(i).ok_or_else(|| Error::Parse(format!("block index {i} out of range ({} blocks)", blocks.len())))?;
            e = e.add(b, &s.field)?;
        }
        Ok(e)
    };
    match sel {
        None => Ok(AlgElem::one(t)),
        Some(BlockSelector::Named(n)) if n == "all" => Ok(AlgElem::one(t)),
        Some(BlockSelector::Named(n)) if n == "principal" => bs.principal(),
        Some(BlockSelector::Named(n)) => Err(Error::Parse(format!("unknown block selector {n:?}"))),
        Some(BlockSelector::Index(i)) => sum(&[*i]),
        Some(BlockSelector::Indices(v)) => sum(v),
    }
}

fn elem_of(g: &GroupRef, images: &[usize]) -> Result<Elem> {
    let p = Perm::from_images(images.to_vec())?;
    g.index_of(&p).ok_or_else(|| Error::Parse(format!("{images:?} is not an element of {}", g.name())))
}

fn subgroup_of(s: &Setting, side: Side, gens: &[ElemLiteral]) -> Result<Subgroup> {
    let (amb, pairs) = match side {
        Side::G => (s.g.clone(), false),
        Side::H => (s.h.clone(), false),
        Side::GxH => (s.prod.whole.clone(), true),
    };
    let mut elems = Vec::new();
    for x in gens {
        match (x, pairs) {
            (ElemLiteral::Perm(p), false) => elems.push(elem_of(&amb, p)?),
            (ElemLiteral::Pair(a, b), true) => elems.push(s.prod.pair(elem_of(&s.g, a)?, elem_of(&s.h, b)?)),
            _ => return Err(Error::Parse("subgroup generators do not match the group side".into())),
        }
    }
    Ok(Subgroup::generated(&amb, &elems))
}

fn term_module(s: &Setting, t: &GammaTerm, a: &AlgElem) -> Result<MatModule> {
    let w = s.prod.whole.whole();
    let set = t.identity as u8 + t.diagonal.is_some() as u8 + t.subgroup.is_some() as u8;
    if set != 1 {
        return Err(Error::Parse("a γ term needs exactly one of identity, diagonal, subgroup".into()));
    }
    if t.identity {
        if !Arc::ptr_eq(&s.g, &s.h) {
            return Err(Error::Parse("identity terms need G = H".into()));
        }
        return Ok(s.unit_g(a)?.terms()[0].1.clone());
    }
    if let Some(gens) = &t.diagonal {
        let hs: Vec<Elem> = gens.iter().map(|x| elem_of(&s.h, x)).collect::<Result<_>>()?;
        let images = t.phi.as_ref().unwrap_or(gens);
        if images.len() != gens.len() {
            return Err(Error::Parse("phi needs one image per generator".into()));
        }
        let gs: Vec<Elem> = images.iter().map(|x| elem_of(&s.g, x)).collect::<Result<_>>()?;
        let q = Subgroup::generated(&s.h, &hs);
        // align the images with the generators `generated` keeps
        let mut imgs = Vec::new();
        for &y in q.generators() {
            let mut it = hs.iter().zip(&gs).filter(|(&h, _)| h == y).map(|(_, &g)| g);
            let g0 = it.next().expect("kept generators were given");
            if it.any(|g| g != g0) {
                return Err(Error::Parse("phi gives one generator two images".into()));
            }
            imgs.push(g0);
        }
        if hs.iter().zip(&gs).any(|(&h, &g)| h == 0 && g != 0) {
            return Err(Error::Parse("phi sends the identity elsewhere".into()));
        }
        let phi = GroupHom::from_generator_images(&q, &s.g.whole(), &imgs)
            .map_err(|e| Error::Parse(format!("phi is not a homomorphism: {e}")))?
            .onto_image();
        if !phi.is_injective() {
            return Err(Error::Parse("phi is not injective".into()));
        }
        return MatModule::coset_module(&w, &s.prod.twisted_diagonal(&phi)?, &s.field);
    }
    let pairs = t.subgroup.as_ref().expect("checked above");
    let lits: Vec<ElemLiteral> = pairs.iter().map(|(a, b)| ElemLiteral::Pair(a.clone(), b.clone())).collect();
    MatModule::coset_module(&w, &subgroup_of(s, Side::GxH, &lits)?, &s.field)
}

fn build_gamma(s: &Setting, terms: &[GammaTerm], a: &AlgElem, b: &AlgElem) -> Result<VirtualModule> {
    let w = s.prod.whole.whole();
    let cut = tensor_dual(&s.prod, a, b, &s.field);
    let mut v = VirtualModule::zero(&w, &s.field);
    for t in terms {
        let m = cut_module(&term_module(s, t, a)?, &cut)?;
        v.push(t.coeff, m)?;
    }
    Ok(v)
}

/// Generators as session literals: permutations, or pairs of permutations in a product.
fn perms_json(s: &Subgroup) -> Value {
    let a = s.ambient();
    let lits: Vec<ElemLiteral> = match a.factors() {
        Some((l, r)) => s
            .generators()
            .iter()
            .map(|&x| {
                let (g, h) = a.split(x);
                ElemLiteral::Pair(l.perm(g).images(), r.perm(h).images())
            })
            .collect(),
        None => s.generators().iter().map(|&x| ElemLiteral::Perm(a.perm(x).images())).collect(),
    };
    json!(lits)
}

fn subgroup_json(s: &Subgroup) -> Value {
    json!({"order": s.order(), "generators": perms_json(s)})
}

fn pair_json(p: &BrauerPair) -> Value {
    json!({"subgroup": subgroup_json(&p.p), "block_support": p.e.support_size()})
}

fn check_status(c: &Check) -> Status {
    if c.holds {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn need_gamma(ctx: &Context) -> Result<&PpeqCandidate> {
    ctx.candidate.as_ref().ok_or_else(|| Error::Precondition("this task needs a γ in the session".into()))
}

fn run_task(ctx: &Context, task: &TaskSpec) -> Result<(Status, Value)> {
    let s = &ctx.setting;
    let f = &s.field;
    match task.task.as_str() {
        "blocks" => {
            let side = |bs: &crate::blocks::BlockSystem| -> Result<Value> {
                let mut out = Vec::new();
                for (i, b) in bs.blocks()?.iter().enumerate() {
                    out.push(json!({"index": i, "support_size": b.support_size(), "defect_order": defect_group(b, f)?.order()}));
                }
                Ok(json!(out))
            };
            Ok((Status::Pass, json!({"G": side(&s.blocks_g)?, "H": side(&s.blocks_h)?})))
        }
        "defect" => {
            let da = defect_group(&ctx.block_a, f);
            let db = defect_group(&ctx.block_b, f);
            match (da, db) {
                (Ok(da), Ok(db)) => Ok((Status::Pass, json!({"A": subgroup_json(&da), "B": subgroup_json(&db)}))),
                (Err(e), _) | (_, Err(e)) => Err(e),
            }
        }
        "brauer-pairs" => {
            let a: Vec<Value> = s.blocks_g.brauer_pairs(Some(&ctx.block_a))?.iter().map(pair_json).collect();
            let b: Vec<Value> = s.blocks_h.brauer_pairs(Some(&ctx.block_b))?.iter().map(pair_json).collect();
            Ok((Status::Pass, json!({"A": a, "B": b})))
        }
        "fusion" => {
            if let Some(c) = &ctx.candidate {
                let m = c.maximal_gamma_pair()?;
                let chk = c.fusion_iso_check(&m.pair)?;
                return Ok((check_status(&chk), json!({"maximal": m.pair.to_json(&s.prod), "check": chk.witness})));
            }
            let maximal = s.blocks_g.maximal_pair(&ctx.block_a)?;
            let fs = s.blocks_g.fusion_system(&ctx.block_a, &maximal)?;
            let mut objs = Vec::new();
            for q in fs.subgroups() {
                objs.push(json!({"order": q.order(), "automorphisms": fs.aut(q)?.len(), "centric": fs.is_centric(q)?}));
            }
            Ok((Status::Pass, json!({"defect": subgroup_json(&maximal.p), "subgroups": objs})))
        }
        "decompose" => {
            let modules: Vec<MatModule> = match &task.module {
                Some(m) => vec![spec_module(s, m)?],
                None => need_gamma(ctx)?.gamma().terms().iter().map(|t| t.1.clone()).collect(),
            };
            let mut out = Vec::new();
            for m in &modules {
                let mut parts = Vec::new();
                for sm in decompose(m, ctx.seed)? {
                    let v = vertex(&sm.module)?;
                    parts.push(json!({"dim": sm.module.dim(), "vertex_order": v.1.order()}));
                }
                out.push(json!({"dim": m.dim(), "summands": parts}));
            }
            Ok((Status::Pass, json!(out)))
        }
        "brauer-construct" => {
            let m = match &task.module {
                Some(m) => spec_module(s, m)?,
                None => return Err(Error::Parse("brauer-construct needs a module".into())),
            };
            let side = task.module.as_ref().map(|m| m.on).unwrap_or(Side::G);
            let p = subgroup_of(s, side, task.p_subgroup.as_deref().unwrap_or(&[]))?;
            if !p.is_p_group(f.p()) {
                return Err(Error::NotPGroup(format!("subgroup of order {}", p.order())));
            }
            let b = m.brauer_construction(&p)?;
            Ok((Status::Pass, json!({"subgroup": subgroup_json(&p), "dim": b.dim(), "normalizer_order": b.group().order()})))
        }
        "verify-ppeq" => {
            let c = need_gamma(ctx)?;
            let l = c.verify_left()?;
            let r = c.verify_right()?;
            let ch = c.char_criterion()?;
            let agree = l.holds == r.holds && l.holds == ch.holds;
            let ok = l.holds && r.holds && agree;
            let w = json!({"left": l.holds, "right": r.holds, "char_criterion": ch.holds, "agree": agree,
                           "left_witness": l.witness, "right_witness": r.witness});
            Ok((if ok { Status::Pass } else { Status::Fail }, w))
        }
        "gamma-pairs" => {
            let c = need_gamma(ctx)?;
            let gp = c.gamma_brauer_pairs()?;
            let st = c.pair_structure()?;
            let ok = st.ideal.holds && st.uniform.holds && st.maximality_criterion.holds && st.connecting.holds;
            let w = json!({
                "pairs": gp.iter().map(|x| x.pair.to_json(&s.prod)).collect::<Vec<_>>(),
                "maximal": st.maximal,
                "ideal": st.ideal.holds,
                "uniform": st.uniform.holds,
                "maximality_criterion": st.maximality_criterion.holds,
                "connecting": st.connecting.holds,
            });
            Ok((if ok { Status::Pass } else { Status::Fail }, w))
        }
        "maximal-module" => {
            let c = need_gamma(ctx)?;
            let mm = c.maximal_module()?;
            let w = json!({"label": mm.label, "sign": mm.sign, "dim": mm.module.dim(), "containment": mm.containment.witness});
            Ok((check_status(&mm.containment), w))
        }
        "local-equivalence" => {
            let c = need_gamma(ctx)?;
            let gp = c.gamma_brauer_pairs()?;
            let idx: Vec<usize> = match task.pair {
                Some(i) if i < gp.len() => vec![i],
                Some(i) => return Err(Error::Parse(format!("γ-pair index {i} out of range ({})", gp.len()))),
                None => (0..gp.len()).collect(),
            };
            let mut ok = true;
            let mut out = Vec::new();
            for i in idx {
                let le = c.local_equivalence(&gp[i].pair, None, None)?;
                ok &= le.local_equation.holds && le.left.holds;
                out.push(json!({"pair": i, "local_equation": le.local_equation.holds, "left": le.left.holds}));
            }
            Ok((if ok { Status::Pass } else { Status::Fail }, json!(out)))
        }
        "kp-check" => {
            let c = need_gamma(ctx)?;
            let mut ok = true;
            let mut out = Vec::new();
            for tp in c.centric_gamma_pairs()? {
                let chk = c.kp_transport_check(&tp)?;
                ok &= chk.holds;
                out.push(json!({"pair": tp.to_json(&s.prod), "holds": chk.holds, "detail": chk.witness}));
            }
            Ok((if ok { Status::Pass } else { Status::Fail }, json!(out)))
        }
        "euler" => {
            let spec = task.complex.as_ref().ok_or_else(|| Error::Parse("euler needs a complex".into()))?;
            let cx = build_complex(ctx, spec)?;
            let chi = cx.euler_characteristic()?;
            let terms: Vec<Value> = chi.terms().iter().map(|(k, m)| json!({"coeff": k, "dim": m.dim()})).collect();
            if !spec.assert_rickard {
                return Ok((Status::Pass, json!({"terms": terms})));
            }
            let cand = PpeqCandidate::new(s, chi, &ctx.block_a, &ctx.block_b, ctx.seed)?;
            let chk = cand.verify_orthogonal()?;
            Ok((check_status(&chk), json!({"terms": terms, "orthogonal": chk.witness})))
        }
        "isotypy" => {
            let c = need_gamma(ctx)?;
            let m = c.maximal_gamma_pair()?;
            let mut data = c.extract_isotypy(&m.pair)?;
            data.precision_floor = ctx.precision.unwrap_or(0);
            let r = data.verify()?;
            let w = json!({"locals": data.locals.len(), "perfect": r.perfect.witness,
                           "equivariance": r.equivariance.witness, "compatibility": r.compatibility.witness});
            Ok((if r.holds() { Status::Pass } else { Status::Fail }, w))
        }
        other => Err(Error::Parse(format!("unknown task {other:?}"))),
    }
}

fn spec_module(s: &Setting, m: &ModuleSpec) -> Result<MatModule> {
    let sub = subgroup_of(s, m.on, &m.subgroup)?;
    let amb = match m.on {
        Side::G => s.g.whole(),
        Side::H => s.h.whole(),
        Side::GxH => s.prod.whole.whole(),
    };
    MatModule::coset_module(&amb, &sub, &s.field)
}

fn build_complex(ctx: &Context, spec: &ComplexSpec) -> Result<RickardComplex> {
    let s = &ctx.setting;
    let cut = tensor_dual(&s.prod, &ctx.block_a, &ctx.block_b, &s.field);
    let terms: Vec<MatModule> = spec
        .terms
        .iter()
        .map(|t| cut_module(&term_module(s, t, &ctx.block_a)?, &cut))
        .collect::<Result<_>>()?;
    if terms.len() != spec.differentials.len() + 1 {
        return Err(Error::Parse("a complex needs one differential between consecutive terms".into()));
    }
    let mut ds = Vec::new();
    for (i, d) in spec.differentials.iter().enumerate() {
        let (r, c) = (terms[i + 1].dim(), terms[i].dim());
        ds.push(match d {
            MatrixLiteral::Named(n) if n == "zero" => Mat::zeros(r, c),
            MatrixLiteral::Named(n) => return Err(Error::Parse(format!("unknown matrix {n:?}"))),
            MatrixLiteral::Rows(rows) => {
                if rows.len() != r || rows.iter().any(|x| x.len() != c) {
                    return Err(Error::Parse(format!("differential {i} must be {r} × {c}")));
                }
                let rows: Vec<Vec<_>> = rows.iter().map(|x| x.iter().map(|&v| s.field.from_int(v)).collect()).collect();
                Mat::from_rows(c, &rows)
            }
        });
    }
    RickardComplex::new(spec.lowest, terms, ds)
}

fn verdict(ctx: &Context, task: &TaskSpec) -> Verdict {
    let t0 = Instant::now();
    let (status, witness) = match run_task(ctx, task) {
        Ok(x) => x,
        Err(e) => (Status::Error, json!({"error": e.to_string()})),
    };
    Verdict { theorem: task.task.clone(), status, witness, timing_ms: t0.elapsed().as_millis() as u64 }
}

/// Runs every task, `jobs` at a time, keeping the task order in the report.
pub fn run(spec: &SessionSpec, opts: &RunOptions) -> Result<Report> {
    let ctx = prepare(spec, opts)?;
    let jobs = opts.jobs.max(1);
    let mut verdicts: Vec<Option<Verdict>> = vec![None; spec.tasks.len()];
    std::thread::scope(|sc| {
        for (chunk_tasks, chunk_out) in spec.tasks.chunks(jobs.max(1)).zip(verdicts.chunks_mut(jobs.max(1))) {
            let handles: Vec<_> = chunk_tasks.iter().map(|t| sc.spawn(|| verdict(&ctx, t))).collect();
            for (slot, h) in chunk_out.iter_mut().zip(handles) {
                *slot = Some(h.join().expect("task thread"));
            }
        }
    });
    let s = &ctx.setting;
    let mut groups = vec![GroupLiteral::of(&s.g)];
    if !Arc::ptr_eq(&s.g, &s.h) {
        groups.push(GroupLiteral::of(&s.h));
    }
    Ok(Report {
        groups,
        p: s.field.p(),
        field_degree: s.field.k(),
        seed: ctx.seed,
        verdicts: verdicts.into_iter().map(|v| v.expect("every task ran")).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const D8_SESSION: &str = r#"{
        "G": "D8", "p": 2,
        "gamma": [{"identity": true}, {"coeff": -1, "diagonal": [[1, 2, 3, 0]]}],
        "tasks": [{"task": "verify-ppeq"}, {"task": "gamma-pairs"}, {"task": "maximal-module"}],
        "seed": 3
    }"#;

    #[test]
    fn d8_session_passes() {
        let spec = SessionSpec::parse(D8_SESSION).unwrap();
        let r = run(&spec, &RunOptions::default()).unwrap();
        assert_eq!(r.exit_code(), 0, "{}", r.to_json_string());
    }

    #[test]
    fn reports_are_deterministic_and_literals_round_trip() {
        let spec = SessionSpec::parse(D8_SESSION).unwrap();
        let a = run(&spec, &RunOptions { jobs: 3, ..Default::default() }).unwrap();
        let b = run(&spec, &RunOptions::default()).unwrap();
        assert_eq!(a.without_timings().to_json_string(), b.without_timings().to_json_string());
        let g = a.groups[0].build().unwrap();
        assert_eq!(GroupLiteral::of(&g), a.groups[0]);
        assert_eq!(g.order(), 8);
    }

    #[test]
    fn malformed_sessions_are_parse_errors() {
        assert!(matches!(SessionSpec::parse("{\"G\": "), Err(Error::Parse(_))));
        assert!(matches!(SessionSpec::parse(r#"{"G": "D8", "p": 2, "bogus": 1}"#), Err(Error::Parse(_))));
        let bad_elem = SessionSpec::parse(r#"{"G": "D8", "p": 2, "gamma": [{"diagonal": [[0, 0, 1, 2]]}]}"#).unwrap();
        assert!(prepare(&bad_elem, &RunOptions::default()).is_err());
    }

    #[test]
    fn tasks_without_gamma_are_precondition_errors() {
        let spec = SessionSpec::parse(r#"{"G": "S3", "p": 2, "tasks": [{"task": "blocks"}, {"task": "isotypy"}]}"#).unwrap();
        let r = run(&spec, &RunOptions::default()).unwrap();
        assert_eq!(r.verdicts[0].status, Status::Pass);
        assert_eq!(r.verdicts[1].status, Status::Error);
        assert_eq!(r.exit_code(), 3);
    }
}
