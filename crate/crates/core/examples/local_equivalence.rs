//! Local equivalences at twisted pairs and transport of centric pairs.

use ppeq::engine::{PpeqCandidate, Setting};
use ppeq::field::Fq;
use ppeq::group::Group;

fn main() -> ppeq::Result<()> {
    let g = Group::catalog("S4")?;
    let f = Fq::new(2, 1)?;
    let s = Setting::new(&g, &g, &f)?;
    let b0 = s.blocks_g.principal()?;
    let c = PpeqCandidate::new(&s, s.unit_g(&b0)?, &b0, &b0, 1)?;
    let m = c.maximal_gamma_pair()?.pair;
    let le = c.local_equivalence(&m, None, None)?;
    println!("local equivalence at |P| = {}: local equation {}, equivalence {}", m.left.p.order(), le.local_equation.holds, le.left.holds);
    for tp in c.centric_gamma_pairs()? {
        println!("centric pair with |Q| = {}: transported {}", tp.right.p.order(), c.kp_transport_check(&tp)?.holds);
    }
    Ok(())
}
