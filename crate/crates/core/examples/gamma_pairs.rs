//! γ-Brauer pairs, the maximal class, the maximal module and fusion at the defect group.

use ppeq::algebra::AlgElem;
use ppeq::engine::{PpeqCandidate, Setting};
use ppeq::field::Fq;
use ppeq::group::{Group, Subgroup};
use ppeq::module::MatModule;
use ppeq::virtual_module::VirtualModule;

fn main() -> ppeq::Result<()> {
    let g = Group::catalog("D8")?;
    let f = Fq::new(2, 1)?;
    let s = Setting::new(&g, &g, &f)?;
    let gw = g.whole();
    let c4 = Subgroup::generated(&g, &[gw.generators()[0]]);
    let w = s.prod.whole.whole();
    let a = MatModule::coset_module(&w, &s.prod.diagonal(&gw)?, &f)?;
    let b = MatModule::coset_module(&w, &s.prod.diagonal(&c4)?, &f)?;
    let gamma = VirtualModule::from_terms(&w, &f, vec![(1, a), (-1, b)])?;
    let one = AlgElem::one(&gw);
    let c = PpeqCandidate::new(&s, gamma, &one, &one, 1)?;
    for gp in c.gamma_brauer_pairs()? {
        println!("γ-pair with |Δ| = {}, |P| = {}", gp.pair.delta().order(), gp.pair.left.p.order());
    }
    let st = c.pair_structure()?;
    println!("ideal {}, maximal classes {}, uniform {}, connecting {}", st.ideal.holds, st.maximal.len(), st.uniform.holds, st.connecting.holds);
    let m = c.maximal_gamma_pair()?;
    println!("fusion systems agree: {}", c.fusion_iso_check(&m.pair)?.holds);
    let mm = c.maximal_module()?;
    println!("maximal module with vertex of order {}, dimension {}, sign {}", mm.label.vertex_order, mm.module.dim(), mm.sign);
    let (bij, check) = c.block_bijection()?;
    println!("block bijection {bij:?} ({})", check.holds);
    Ok(())
}
