//! Block idempotents, defect groups and Brauer pairs.

use ppeq::blocks::{block_idempotents, defect_group, BlockSystem};
use ppeq::field::Fq;
use ppeq::group::Group;

fn main() -> ppeq::Result<()> {
    for (name, p) in [("S3", 2), ("S3", 3), ("A4", 2), ("S4", 2), ("S4", 3)] {
        let g = Group::catalog(name)?;
        let w = g.whole();
        let f = Fq::splitting(p, g.exponent())?;
        let blocks = block_idempotents(&w, &f)?;
        let defects: Vec<usize> = blocks.iter().map(|b| defect_group(b, &f).map(|d| d.order())).collect::<ppeq::Result<_>>()?;
        let pairs = BlockSystem::new(&w, &f).brauer_pairs(None)?.len();
        println!("{name} at p = {p}: {} blocks, defect orders {defects:?}, {pairs} Brauer pair classes", blocks.len());
    }
    Ok(())
}
