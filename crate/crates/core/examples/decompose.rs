//! Permutation modules, their indecomposable summands and Brauer constructions.

use ppeq::decompose::decompose;
use ppeq::field::Fq;
use ppeq::group::Group;
use ppeq::module::MatModule;

fn main() -> ppeq::Result<()> {
    let g = Group::catalog("S4")?;
    let w = g.whole();
    let f = Fq::new(2, 1)?;
    let v4 = w.p_subgroups_up_to_conjugacy(2).into_iter().find(|q| q.order() == 4 && q.is_normal_in(&w)).unwrap();
    let m = MatModule::coset_module(&w, &v4, &f)?;
    println!("F[S4/V4] has dimension {}", m.dim());
    for part in decompose(&m, 1)? {
        println!("  summand of dimension {}", part.module.dim());
    }
    for q in w.p_subgroups_up_to_conjugacy(2) {
        println!("  Brauer construction at a subgroup of order {}: dimension {}", q.order(), m.brauer_construction(&q)?.dim());
    }
    Ok(())
}
