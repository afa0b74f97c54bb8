//! Tensor products of induced bimodules against the Mackey decomposition.

use ppeq::character::brauer_character;
use ppeq::decompose::is_isomorphic;
use ppeq::field::Fq;
use ppeq::group::Group;
use ppeq::module::MatModule;
use ppeq::product::Product;
use ppeq::tensor::{mackey_rhs, tensor_over_group};

fn main() -> ppeq::Result<()> {
    let g = Group::catalog("S3")?;
    let f = Fq::new(2, 1)?;
    let prod = Product::new(&g, &g)?;
    let w = prod.whole.whole();
    let c3 = g.whole().sylow(3);
    let c2 = g.whole().sylow(2);
    let x = prod.diagonal(&c3)?;
    let y = prod.diagonal(&c2)?;
    let m = MatModule::coset_module(&x, &x, &f)?;
    let n = MatModule::coset_module(&y, &y, &f)?;
    let lhs = tensor_over_group(&m.induce(&w)?, &prod, &n.induce(&w)?, &prod, &prod)?;
    let rhs = mackey_rhs(&m, &prod, &n, &prod, &prod)?;
    println!("tensor product: dimension {}, Mackey side: dimension {}", lhs.dim(), rhs.dim());
    println!("Brauer characters agree: {}", brauer_character(&lhs)? == brauer_character(&rhs)?);
    println!("isomorphic: {}", is_isomorphic(&lhs, &rhs, 1)?);
    Ok(())
}
