//! Checks the defining equations for `[F D8] − [F[(D8×D8)/Δ(C4)]]` and two non-examples.

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
    let cases = [
        ("[A] − Δ(C4)", vec![(1, a.clone()), (-1, b.clone())]),
        ("[A] + Δ(C4)", vec![(1, a.clone()), (1, b.clone())]),
        ("Δ(C4)", vec![(1, b)]),
    ];
    for (name, terms) in cases {
        let c = PpeqCandidate::new(&s, VirtualModule::from_terms(&w, &f, terms)?, &one, &one, 1)?;
        let l = c.verify_left()?;
        println!("{name}: left {}, right {}, orthogonal {}", l.holds, c.verify_right()?.holds, c.verify_orthogonal()?.holds);
        if !l.holds {
            println!("  witness {}", l.witness);
        }
    }
    Ok(())
}
