//! Brauer characters and lifted ordinary characters of p-permutation modules.

use ppeq::character::{brauer_character, lift_character};
use ppeq::decompose::decompose;
use ppeq::field::Fq;
use ppeq::group::Group;
use ppeq::module::MatModule;

fn main() -> ppeq::Result<()> {
    let g = Group::catalog("A4")?;
    let w = g.whole();
    let f = Fq::splitting(2, g.exponent())?;
    let m = MatModule::coset_module(&w, &w.sylow(3), &f)?;
    let beta = brauer_character(&m)?;
    let mu = lift_character(&m)?;
    for c in w.conjugacy_classes() {
        let b = if g.is_p_regular(c.rep, 2) { format!("{:?}", beta.value(c.rep)) } else { "-".into() };
        println!("class of order {} (size {}): lifted {:?}, Brauer {b}", g.elem_order(c.rep), c.size(), mu.value(c.rep));
    }
    for part in decompose(&m, 3)? {
        println!("summand of dimension {}: lifted degree {:?}", part.module.dim(), lift_character(&part.module)?.value(g.identity()));
    }
    Ok(())
}
