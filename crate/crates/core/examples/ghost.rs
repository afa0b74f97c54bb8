//! Ghost vectors of trivial source modules; distinct summands have distinct ghosts.

use ppeq::blocks::BlockSystem;
use ppeq::decompose::decompose;
use ppeq::field::Fq;
use ppeq::group::Group;
use ppeq::module::MatModule;
use ppeq::virtual_module::{ghost_vector, VirtualModule};

fn main() -> ppeq::Result<()> {
    let g = Group::catalog("D8")?;
    let w = g.whole();
    let f = Fq::new(2, 1)?;
    let pairs = BlockSystem::new(&w, &f).brauer_pairs(None)?;
    for q in w.p_subgroups_up_to_conjugacy(2) {
        for part in decompose(&MatModule::coset_module(&w, &q, &f)?, 1)? {
            let gv = ghost_vector(&VirtualModule::from_module(&part.module), &pairs)?;
            let dims: Vec<_> = gv.entries.iter().map(|e| e.value.value(g.identity()).to_i64().unwrap_or(-1)).collect();
            println!("summand of F[D8/Q], |Q| = {}, dimension {}: Brauer construction dimensions {dims:?}", q.order(), part.module.dim());
        }
    }
    Ok(())
}
