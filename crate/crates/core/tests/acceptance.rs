//! One line per acceptance criterion; exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use ppeq::algebra::{tensor_dual, AlgElem};
use ppeq::blocks::{block_idempotents, cut_module, defect_group, BlockSystem, BrauerPair};
use ppeq::character::{brauer_character, lift_character};
use ppeq::cyclotomic::Cyclotomic;
use ppeq::decompose::{decompose, indecomposables_isomorphic, is_isomorphic};
use ppeq::engine::{PpeqCandidate, Setting};
use ppeq::field::{FieldRef, Fq};
use ppeq::group::{injective_homs, Elem, Group, GroupHom, GroupRef, Subgroup};
use ppeq::linalg::{Mat, Subspace};
use ppeq::module::MatModule;
use ppeq::product::Product;
use ppeq::tensor::{bp_decomposition, bp_lhs, mackey_rhs, tensor_over_group, BpSetting};
use ppeq::virtual_module::{ghost_vector, GhostVector, VirtualModule};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field_for(g: &GroupRef, p: u64) -> FieldRef {
    Fq::splitting(p, g.exponent()).unwrap()
}

/// `F[(G×G)/Δ(G)] − F[(G×G)/Δ(C4)]` for `G = D8` over `F_2`.
fn d8_candidate(sign: i64) -> PpeqCandidate {
    let g = Group::catalog("D8").unwrap();
    let f = Fq::new(2, 1).unwrap();
    let s = Setting::new(&g, &g, &f).unwrap();
    let gw = g.whole();
    let c4 = Subgroup::generated(&g, &[gw.generators()[0]]);
    let w = s.prod.whole.whole();
    let a = MatModule::coset_module(&w, &s.prod.diagonal(&gw).unwrap(), &f).unwrap();
    let b = MatModule::coset_module(&w, &s.prod.diagonal(&c4).unwrap(), &f).unwrap();
    let gamma = VirtualModule::from_terms(&w, &f, vec![(sign, a), (-sign, b)]).unwrap();
    let one = AlgElem::one(&gw);
    PpeqCandidate::new(&s, gamma, &one, &one, 1).unwrap()
}

fn identity_candidate(name: &str, principal: bool) -> PpeqCandidate {
    let g = Group::catalog(name).unwrap();
    let f = field_for(&g, 2);
    let s = Setting::new(&g, &g, &f).unwrap();
    let e = if principal { s.blocks_g.principal().unwrap() } else { AlgElem::one(&g.whole()) };
    PpeqCandidate::new(&s, s.unit_g(&e).unwrap(), &e, &e, 1).unwrap()
}

/// Diagonals `Δ(Q)` for `Q` the whole group, a Sylow 2-subgroup, or `⟨x^k⟩` for the first generator `x`.
#[derive(Clone, Copy)]
enum Diag {
    Whole,
    Sylow2,
    Power(i64),
}

fn coset_candidate(name: &str, terms: &[(i64, Diag)]) -> PpeqCandidate {
    let g = Group::catalog(name).unwrap();
    let f = field_for(&g, 2);
    let s = Setting::new(&g, &g, &f).unwrap();
    let gw = g.whole();
    let w = s.prod.whole.whole();
    let mut v = VirtualModule::zero(&w, &f);
    for &(c, k) in terms {
        let q = match k {
            Diag::Whole => gw.clone(),
            Diag::Sylow2 => gw.sylow(2),
            Diag::Power(k) => Subgroup::generated(&g, &[g.pow(gw.generators()[0], k)]),
        };
        v.push(c, MatModule::coset_module(&w, &s.prod.diagonal(&q).unwrap(), &f).unwrap()).unwrap();
    }
    let one = AlgElem::one(&gw);
    PpeqCandidate::new(&s, v, &one, &one, 1).unwrap()
}

/// The principal block of `F S3` against `F C2`, through the sign map.
fn s3_to_c2() -> PpeqCandidate {
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
    PpeqCandidate::new(&s, VirtualModule::from_module(&cut), &b0, &one, 1).unwrap()
}

fn criterion_1() -> String {
    let c = d8_candidate(1);
    assert!(c.verify_left().unwrap().holds);
    assert!(c.verify_right().unwrap().holds);
    assert!(c.verify_orthogonal().unwrap().holds);
    "D8 γ satisfies both equations".into()
}

fn criterion_2() -> String {
    let c = d8_candidate(1);
    let st = c.pair_structure().unwrap();
    assert!(st.ideal.holds, "{}", st.ideal.witness);
    assert_eq!(st.maximal.len(), 1);
    let m = &c.gamma_brauer_pairs().unwrap()[st.maximal[0]];
    assert_eq!(m.pair.delta().order(), 8);
    assert_eq!(&m.pair.left.p, &c.setting().g.whole());
    assert!(st.maximality_criterion.holds && st.connecting.holds);
    format!("{} γ-pair classes, one maximal class at Δ(D8)", c.gamma_brauer_pairs().unwrap().len())
}

fn criterion_3() -> String {
    let c = d8_candidate(1);
    let mm = c.maximal_module().unwrap();
    let s = c.setting();
    let a = MatModule::coset_module(&s.prod.whole.whole(), &s.prod.diagonal(&s.g.whole()).unwrap(), &s.field).unwrap();
    assert_eq!(mm.sign, 1);
    assert!(is_isomorphic(&mm.module, &a, 2).unwrap());
    assert!(mm.containment.holds, "{}", mm.containment.witness);
    assert_eq!(mm.coordinates.len(), 2);
    for (k, (l, _, _)) in mm.coordinates.iter().enumerate() {
        if l != &mm.label {
            let sp = &mm.summand_pairs[k];
            assert!(sp.iter().all(|i| mm.pairs.contains(i)) && sp.len() < mm.pairs.len());
        }
    }
    "maximal module F[(G×G)/Δ(G)], sign +1, other summand has fewer pairs".into()
}

fn criterion_4() -> String {
    let suite: Vec<(&str, PpeqCandidate, bool)> = vec![
        ("[F C2]", identity_candidate("C2", false), true),
        ("[F C4]", identity_candidate("C4", false), true),
        ("[F V4]", identity_candidate("V4", false), true),
        ("[F S3]", identity_candidate("S3", false), true),
        ("[B0(F A4)]", identity_candidate("A4", true), true),
        ("[B0(F S4)]", identity_candidate("S4", true), true),
        ("D8 γ", d8_candidate(1), true),
        ("−(D8 γ)", d8_candidate(-1), true),
        ("B0(F S3) ~ F C2", s3_to_c2(), true),
        ("D8 Δ(C4) alone", coset_candidate("D8", &[(1, Diag::Power(1))]), false),
        ("D8 2[A] − Δ(C4)", coset_candidate("D8", &[(2, Diag::Whole), (-1, Diag::Power(1))]), false),
        ("D8 [A] + Δ(C4)", coset_candidate("D8", &[(1, Diag::Whole), (1, Diag::Power(1))]), false),
        // X·X° = 2X for X = F[(G×G)/Δ(Q)] with Q normal of index 2, so this is an equivalence too
        ("C4 [A] − Δ(C2)", coset_candidate("C4", &[(1, Diag::Whole), (-1, Diag::Power(2))]), true),
        ("C4 [A] + Δ(C2)", coset_candidate("C4", &[(1, Diag::Whole), (1, Diag::Power(2))]), false),
        ("S3 Δ(C2) alone", coset_candidate("S3", &[(1, Diag::Sylow2)]), false),
    ];
    let mut passes = 0;
    for (name, c, expected) in &suite {
        let l = c.verify_left().unwrap().holds;
        let r = c.verify_right().unwrap().holds;
        let o = c.verify_orthogonal().unwrap().holds;
        assert!(l == r && r == o, "{name}: left {l}, right {r}, orthogonal {o}");
        assert_eq!(l, *expected, "{name}");
        passes += l as usize;
    }
    format!("{} candidates, {} equivalences, left = right = orthogonal throughout", suite.len(), passes)
}

fn criterion_5() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let names = ["C2", "C4", "V4", "S3", "D8"];
    let mut nonzero = 0;
    let mut instances = 0;
    let mut slowest = 0u128;
    while nonzero < 20 {
        assert!(instances < 400, "too few nonzero instances");
        let g = Group::catalog(names.choose(&mut rng).unwrap()).unwrap();
        let f = field_for(&g, 2);
        let prod = Product::new(&g, &g).unwrap();
        let gw = g.whole();
        let bs = BlockSystem::new(&gw, &f);
        let m = random_twisted_bimodule(&prod, &f, &mut rng);
        let n = random_twisted_bimodule(&prod, &f, &mut rng);
        let pairs = bs.brauer_pairs(None).unwrap();
        let pe = pairs.choose(&mut rng).unwrap().clone();
        let candidates: Vec<(BrauerPair, GroupHom)> = pairs
            .iter()
            .flat_map(|rd| {
                injective_homs(&rd.p, &gw)
                    .into_iter()
                    .filter(|h| h.image() == pe.p)
                    .map(|h| (rd.clone(), h.onto_image()))
                    .collect::<Vec<_>>()
            })
            .collect();
        let Some((rd, sigma)) = candidates.choose(&mut rng).cloned() else { continue };
        let s = if rng.gen_bool(0.5) { pe.stabilizer(&gw).unwrap() } else { pe.centralizer().clone() };
        let t = if rng.gen_bool(0.5) { rd.stabilizer(&gw).unwrap() } else { rd.centralizer().clone() };
        let st = BpSetting { left: &prod, right: &prod, out: &prod, pe: &pe, rd: &rd, sigma: &sigma, s: &s, t: &t };
        let t0 = Instant::now();
        let lhs = bp_lhs(&m, &n, &st).unwrap();
        let rhs = bp_decomposition(&m, &n, &st, &bs).unwrap();
        assert_eq!(lhs.dim(), rhs.dim());
        assert!(is_isomorphic(&lhs, &rhs, instances as u64).unwrap());
        slowest = slowest.max(t0.elapsed().as_millis());
        nonzero += (lhs.dim() > 0) as usize;
        instances += 1;
    }
    assert!(slowest <= 10_000);
    format!("{instances} instances ({nonzero} nonzero, isomorphic), slowest {slowest} ms")
}

/// A random indecomposable summand of `F[(G×G)/Δ(φQ, φ, Q)]`.
fn random_twisted_bimodule(prod: &Product, f: &FieldRef, rng: &mut ChaCha8Rng) -> MatModule {
    let g = prod.left.whole();
    let qs = g.all_p_subgroups(f.p());
    let q = qs.choose(rng).unwrap();
    let phis = injective_homs(q, &g);
    let phi = phis.choose(rng).unwrap().onto_image();
    let m = MatModule::coset_module(&prod.whole.whole(), &prod.twisted_diagonal(&phi).unwrap(), f).unwrap();
    let parts = decompose(&m, rng.gen()).unwrap();
    parts.choose(rng).unwrap().module.clone()
}

fn random_subgroup(g: &Subgroup, rng: &mut ChaCha8Rng, gens: usize) -> Subgroup {
    let xs: Vec<Elem> = (0..gens).map(|_| *g.elements().choose(rng).unwrap()).collect();
    Subgroup::generated(g.ambient(), &xs)
}

fn criterion_6() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut iso_checked = 0;
    for i in 0..20 {
        let g = Group::catalog(if i % 2 == 0 { "S3" } else { "D8" }).unwrap();
        let f = field_for(&g, 2);
        let prod = Product::new(&g, &g).unwrap();
        let w = prod.whole.whole();
        let x = random_subgroup(&w, &mut rng, 2);
        let y = random_subgroup(&w, &mut rng, 2);
        let m = MatModule::coset_module(&x, &random_subgroup(&x, &mut rng, 1), &f).unwrap();
        let n = MatModule::coset_module(&y, &random_subgroup(&y, &mut rng, 1), &f).unwrap();
        let lhs = tensor_over_group(&m.induce(&w).unwrap(), &prod, &n.induce(&w).unwrap(), &prod, &prod).unwrap();
        let rhs = mackey_rhs(&m, &prod, &n, &prod, &prod).unwrap();
        assert_eq!(lhs.dim(), rhs.dim(), "instance {i}");
        assert_eq!(brauer_character(&lhs).unwrap(), brauer_character(&rhs).unwrap(), "instance {i}");
        if lhs.dim() <= 72 {
            assert!(is_isomorphic(&lhs, &rhs, i).unwrap(), "instance {i}");
            iso_checked += 1;
        }
    }
    format!("20 instances over S3 and D8, dimensions and Brauer characters agree, {iso_checked} also isomorphic")
}

/// `dim M(⟨u⟩)` from fixed points and the trace from the maximal subgroup of `⟨u⟩`.
fn brauer_dim(m: &MatModule, u: Elem) -> usize {
    let g = m.group().ambient();
    let f = m.field();
    let n = m.dim();
    let p = f.p() as i64;
    let fixed = |x: Elem| -> Mat {
        let mut a = m.matrix(x).clone();
        a.add_scaled(f.neg(1), &Mat::identity(n), f);
        a.left_kernel(f)
    };
    let fix_u = fixed(u);
    let fix_up = fixed(g.pow(u, p));
    let mut tr = Mat::zeros(fix_up.rows(), n);
    for i in 0..p {
        tr = tr.add(&fix_up.mul(m.matrix(g.pow(u, i)), f), f);
    }
    Subspace::span(&fix_u, f).dim() - Subspace::span(&tr, f).dim()
}

fn criterion_7() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let names = ["S3", "D8", "A4", "C4", "V4", "S4"];
    let mut count = 0;
    let mut evaluations = 0;
    while count < 20 {
        let g = Group::catalog(names[count % names.len()]).unwrap();
        let gw = g.whole();
        let f = field_for(&g, 2);
        let q = random_subgroup(&gw, &mut rng, 1 + count % 2);
        let perm = MatModule::coset_module(&gw, &q, &f).unwrap();
        let parts = decompose(&perm, count as u64).unwrap();
        let n = ppeq::character::conductor_for(&f);
        // permutation character: fixed cosets
        let perm_lift = lift_character(&perm).unwrap();
        let reps = gw.left_transversal(&q).unwrap();
        for c in gw.conjugacy_classes() {
            let fixed = reps.iter().filter(|&&t| q.contains(g.conj(g.inv(t), c.rep))).count();
            assert_eq!(perm_lift.value(c.rep), &Cyclotomic::from_int(n, fixed as i64));
        }
        let mut sum = ppeq::character::ClassFunction::zero(&gw, n);
        for part in &parts {
            let m = &part.module;
            let mu = lift_character(m).unwrap();
            sum = sum.add(&mu).unwrap();
            for &u in gw.elements() {
                if !g.is_p_element(u, 2) {
                    continue;
                }
                let cu = Subgroup::generated(&g, &[u]);
                let bm = m.brauer_construction(&cu).unwrap();
                assert_eq!(bm.dim(), brauer_dim(m, u));
                let beta = brauer_character(&bm.restrict(&gw.centralizer_of_gens(&[u])).unwrap()).unwrap();
                for &s in gw.centralizer_of_gens(&[u]).elements() {
                    if g.is_p_regular(s, 2) {
                        assert_eq!(mu.value(g.mul(u, s)), beta.value(s));
                        evaluations += 1;
                    }
                }
            }
            count += 1;
        }
        assert_eq!(sum, perm_lift);
    }
    format!("{count} p-permutation modules, {evaluations} evaluations at us")
}

/// All primitive central idempotents of `F G` by enumerating `Z(F G)`.
fn oracle_blocks(g: &Subgroup, f: &FieldRef) -> Vec<AlgElem> {
    let classes = g.conjugacy_classes();
    let elems: Vec<_> = f.elements().collect();
    let k = classes.len();
    let total = elems.len().pow(k as u32);
    let mut idems = Vec::new();
    for code in 1..total {
        let mut c = code;
        let coeffs: Vec<_> = (0..k)
            .map(|_| {
                let v = elems[c % elems.len()];
                c /= elems.len();
                v
            })
            .collect();
        let e = AlgElem::from_fn(g, |x| coeffs[g.class_index(x)]);
        if e.mul(&e, f).unwrap() == e {
            idems.push(e);
        }
    }
    idems
        .iter()
        .filter(|e| !idems.iter().any(|d| d != *e && e.mul(d, f).unwrap() == *d))
        .cloned()
        .collect()
}

/// Whether `e ∈ tr_D^G((F G)^D)`, by spanning the traces of `D`-orbit sums.
fn oracle_in_trace(e: &AlgElem, d: &Subgroup, f: &FieldRef) -> bool {
    let g = e.group().clone();
    let a = g.ambient();
    let idx = |x: Elem| g.position(x).unwrap();
    let reps = g.left_transversal(d).unwrap();
    let mut rows = Vec::new();
    let mut seen = vec![false; g.order()];
    for &x in g.elements() {
        if seen[idx(x)] {
            continue;
        }
        let mut orbit = Vec::new();
        for &y in d.elements() {
            let z = a.conj(y, x);
            if !seen[idx(z)] {
                seen[idx(z)] = true;
                orbit.push(z);
            }
        }
        let mut row = vec![0; g.order()];
        for &t in &reps {
            for &z in &orbit {
                let i = idx(a.conj(t, z));
                row[i] = f.add(row[i], 1);
            }
        }
        rows.push(row);
    }
    let span = Subspace::span(&Mat::from_rows(g.order(), &rows), f);
    let v: Vec<_> = g.elements().iter().map(|&x| e.coeff(x)).collect();
    span.contains(&v, f)
}

fn criterion_8() -> String {
    let cases: [(&str, u64, u32, usize, Vec<usize>); 6] = [
        ("S3", 2, 1, 2, vec![1, 2]),
        ("S3", 2, 2, 2, vec![1, 2]),
        ("S3", 3, 1, 1, vec![3]),
        ("A4", 2, 2, 1, vec![4]),
        ("D8", 2, 1, 1, vec![8]),
        ("D8", 2, 2, 1, vec![8]),
    ];
    let mut lines = Vec::new();
    for (name, p, k, count, defects) in cases {
        let g = Group::catalog(name).unwrap().whole();
        let f = Fq::new(p, k).unwrap();
        let blocks = block_idempotents(&g, &f).unwrap();
        let oracle = oracle_blocks(&g, &f);
        assert_eq!(oracle.len(), blocks.len(), "{name} over F_{p}^{k}");
        for b in &blocks {
            assert!(oracle.contains(b));
        }
        let mut orders = Vec::new();
        for b in &blocks {
            let d = defect_group(b, &f).unwrap();
            assert!(oracle_in_trace(b, &d, &f));
            let minimal = g
                .p_subgroups_up_to_conjugacy(p)
                .into_iter()
                .filter(|q| oracle_in_trace(b, q, &f))
                .map(|q| q.order())
                .min()
                .unwrap();
            assert_eq!(d.order(), minimal);
            orders.push(d.order());
        }
        orders.sort();
        assert_eq!(blocks.len(), count, "{name} over F_{p}^{k}");
        assert_eq!(orders, defects, "{name} over F_{p}^{k}");
        lines.push(format!("{name}/F{}^{k}: {} blocks", p, blocks.len()));
    }
    lines.join(", ")
}

fn criterion_9() -> String {
    let mut out = Vec::new();
    for name in ["C2", "C4", "V4", "S3", "D8"] {
        let g = Group::catalog(name).unwrap().whole();
        let f = field_for(g.ambient(), 2);
        let bs = BlockSystem::new(&g, &f);
        let pairs = bs.brauer_pairs(None).unwrap();
        let mut basis: Vec<MatModule> = Vec::new();
        for q in g.p_subgroups_up_to_conjugacy(2) {
            for s in decompose(&MatModule::coset_module(&g, &q, &f).unwrap(), 1).unwrap() {
                let m = s.module.forget_points();
                let mut new = true;
                for b in &basis {
                    if b.dim() == m.dim() && indecomposables_isomorphic(b, &m).unwrap() {
                        new = false;
                        break;
                    }
                }
                if new {
                    basis.push(m);
                }
            }
        }
        let ghosts: Vec<GhostVector> =
            basis.iter().map(|m| ghost_vector(&VirtualModule::from_module(m), &pairs).unwrap()).collect();
        for i in 0..ghosts.len() {
            for j in 0..i {
                assert!(ghosts[i] != ghosts[j], "{name}: basis elements {i} and {j}");
            }
        }
        out.push(format!("{name}: {}", basis.len()));
    }
    format!("distinct ghosts on standard bases ({})", out.join(", "))
}

fn criterion_10() -> String {
    let c = d8_candidate(1);
    let m = c.maximal_gamma_pair().unwrap().pair;
    let mut iso = c.extract_isotypy(&m).unwrap();
    let r = iso.verify().unwrap();
    assert!(r.perfect.holds && r.equivariance.holds && r.compatibility.holds);
    let squares = r.compatibility.witness["squares"].clone();
    let k = iso.locals.iter().position(|l| l.pair.right.p.order() == 1).unwrap();
    iso.corrupt_sign(k);
    let bad = iso.verify().unwrap();
    assert!(!bad.compatibility.holds);
    format!("{} local characters, {squares} compatibility squares; sign corruption detected", iso.locals.len())
}

fn criterion_11() -> String {
    let mut out = Vec::new();
    for (name, c) in [("D8 γ", d8_candidate(1)), ("[B0(F S4)]", identity_candidate("S4", true))] {
        let centric = c.centric_gamma_pairs().unwrap();
        assert!(!centric.is_empty());
        for tp in &centric {
            assert!(c.kp_transport_check(tp).unwrap().holds, "{name}");
        }
        out.push(format!("{name}: {} centric pairs", centric.len()));
    }
    out.join(", ")
}

fn criterion_12() -> String {
    let suite = vec![
        identity_candidate("C2", false),
        identity_candidate("C4", false),
        identity_candidate("V4", false),
        identity_candidate("S3", false),
        identity_candidate("A4", true),
        identity_candidate("S4", true),
        d8_candidate(1),
        d8_candidate(-1),
        s3_to_c2(),
    ];
    for c in &suite {
        assert!(c.verify_orthogonal().unwrap().holds);
        assert!(c.perfect_character().unwrap().holds);
    }
    format!("{} verified equivalences have perfect characters", suite.len())
}

fn main() {
    let criteria: [(&str, fn() -> String); 12] = [
        ("1 D8 equivalence", criterion_1),
        ("2 γ-pairs ideal, one maximal class", criterion_2),
        ("3 maximal module", criterion_3),
        ("4 left = right = orthogonal", criterion_4),
        ("5 Brauer construction of tensor products", criterion_5),
        ("6 Mackey formula", criterion_6),
        ("7 lifted characters", criterion_7),
        ("8 blocks and defect groups", criterion_8),
        ("9 ghost injectivity", criterion_9),
        ("10 isotypy", criterion_10),
        ("11 Külshammer-Puig transport", criterion_11),
        ("12 perfect characters", criterion_12),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let t0 = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f));
        let ms = t0.elapsed().as_millis();
        match r {
            Ok(detail) => println!("criterion {name}: pass ({ms} ms) {detail}"),
            Err(e) => {
                failed += 1;
                let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
                println!("criterion {name}: FAIL ({ms} ms) {}", msg.unwrap_or_default());
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 12 criteria pass");
}
