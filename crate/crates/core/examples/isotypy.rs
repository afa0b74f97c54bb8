//! Extracts an isotypy from a p-permutation equivalence and detects a corrupted sign.

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
    let one = AlgElem::one(&gw);
    let c = PpeqCandidate::new(&s, VirtualModule::from_terms(&w, &f, vec![(1, a), (-1, b)])?, &one, &one, 1)?;
    println!("perfect character: {}", c.perfect_character()?.holds);
    let m = c.maximal_gamma_pair()?.pair;
    let mut iso = c.extract_isotypy(&m)?;
    let r = iso.verify()?;
    println!("{} local characters: perfect {}, equivariant {}, compatible {}", iso.locals.len(), r.perfect.holds, r.equivariance.holds, r.compatibility.holds);
    let k = iso.locals.iter().position(|l| l.pair.right.p.order() == 1).unwrap_or(0);
    iso.corrupt_sign(k);
    println!("after flipping one sign: compatible {}", iso.verify()?.compatibility.holds);
    Ok(())
}
