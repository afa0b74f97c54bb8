//! Euler characteristics of bounded complexes of bimodules.

use ppeq::algebra::AlgElem;
use ppeq::engine::{RickardComplex, Setting};
use ppeq::field::Fq;
use ppeq::group::Group;
use ppeq::linalg::Mat;

fn main() -> ppeq::Result<()> {
    let g = Group::catalog("C2")?;
    let f = Fq::new(2, 1)?;
    let s = Setting::new(&g, &g, &f)?;
    let a = s.unit_g(&AlgElem::one(&g.whole()))?.terms()[0].1.clone();
    let cone = RickardComplex::new(0, vec![a.clone(), a.clone()], vec![Mat::identity(a.dim())])?;
    println!("cone of the identity: Euler characteristic of dimension {}", cone.euler_characteristic()?.dim());
    let split = RickardComplex::new(0, vec![a.clone(), a.clone()], vec![Mat::zeros(a.dim(), a.dim())])?;
    println!("zero differential: {} terms", split.euler_characteristic()?.terms().len());
    let mut bad = Mat::zeros(a.dim(), a.dim());
    bad.set(0, 0, 1);
    println!("non-module map rejected: {}", RickardComplex::new(0, vec![a.clone(), a], vec![bad]).is_err());
    Ok(())
}
