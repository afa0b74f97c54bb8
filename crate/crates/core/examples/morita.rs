//! Brauer correspondents at the maximal γ-pair are Morita equivalent.

use ppeq::algebra::AlgElem;
use ppeq::engine::{is_morita_bimodule, PpeqCandidate, Setting};
use ppeq::field::Fq;
use ppeq::group::Group;
use ppeq::module::MatModule;

fn main() -> ppeq::Result<()> {
    let g = Group::catalog("S3")?;
    let f = Fq::new(2, 1)?;
    let s = Setting::new(&g, &g, &f)?;
    let b0 = s.blocks_g.principal()?;
    let c = PpeqCandidate::new(&s, s.unit_g(&b0)?, &b0, &b0, 1)?;
    let (m, check) = c.brauer_correspondent_morita()?;
    println!("Brauer correspondent bimodule of dimension {}: Morita {}", m.dim(), check.holds);
    let one = AlgElem::one(&g.whole());
    let a = s.unit_g(&one)?.terms()[0].1.clone();
    let aa = MatModule::direct_sum(&[a.clone(), a.clone()])?;
    println!("F S3 as a bimodule: Morita {}", is_morita_bimodule(&a, &s, &one, &one, 1)?.holds);
    println!("F S3 ⊕ F S3: Morita {}", is_morita_bimodule(&aa, &s, &one, &one, 1)?.holds);
    Ok(())
}
