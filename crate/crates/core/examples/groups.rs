//! Catalog groups, conjugacy classes, p-subgroups and twisted diagonals in a product.

use ppeq::group::{injective_homs, Group};
use ppeq::product::Product;

fn main() -> ppeq::Result<()> {
    for name in ["C4", "V4", "S3", "D8", "Q8", "A4", "S4"] {
        let g = Group::catalog(name)?;
        let w = g.whole();
        let classes = w.conjugacy_classes().len();
        let p_classes = w.p_subgroups_up_to_conjugacy(2).len();
        println!("{name}: order {}, {classes} classes, {p_classes} classes of 2-subgroups, center of order {}", g.order(), w.center().order());
    }
    let g = Group::catalog("D8")?;
    let prod = Product::new(&g, &g)?;
    let c4 = ppeq::group::Subgroup::generated(&g, &[g.whole().generators()[0]]);
    for phi in injective_homs(&c4, &g.whole()) {
        let x = prod.twisted_diagonal(&phi.onto_image())?;
        println!("twisted diagonal of order {} in D8×D8", x.order());
    }
    Ok(())
}
