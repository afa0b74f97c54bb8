//! Subgroups of direct products `G × H`: projections, kernels, the induced
//! isomorphism `η_X`, composition `X * Y`, opposites and twisted diagonals.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Elem, Group, GroupHom, GroupRef, Subgroup};

/// A direct product `G × H` with handles on both factors.
#[derive(Clone)]
pub struct Product {
    pub whole: GroupRef,
    pub left: GroupRef,
    pub right: GroupRef,
}

impl fmt::Debug for Product {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.whole.name())
    }
}

impl Product {
    pub fn new(g: &GroupRef, h: &GroupRef) -> Result<Product> {
        Ok(Product { whole: Group::direct_product(g, h)?, left: g.clone(), right: h.clone() })
    }

    /// Wraps an existing product group.
    pub fn of(whole: &GroupRef) -> Result<Product> {
        let (l, r) = whole
            .factors()
            .ok_or_else(|| Error::Mismatch(format!("{} is not a direct product", whole.name())))?;
        Ok(Product { whole: whole.clone(), left: l.clone(), right: r.clone() })
    }

    #[inline]
    pub fn pair(&self, g: Elem, h: Elem) -> Elem {
        g * self.right.order() as Elem + h
    }

    #[inline]
    pub fn split(&self, x: Elem) -> (Elem, Elem) {
        let n = self.right.order() as Elem;
        (x / n, x % n)
    }

    /// Projection `p_1: G × H → G` as a homomorphism.
    pub fn p1(&self) -> GroupHom {
        let w = self.whole.whole();
        GroupHom::from_fn(&w, &self.left.whole(), |x| self.split(x).0).expect("projection")
    }

    pub fn p2(&self) -> GroupHom {
        let w = self.whole.whole();
        GroupHom::from_fn(&w, &self.right.whole(), |x| self.split(x).1).expect("projection")
    }

    /// Embedding `g ↦ (g, 1)`.
    pub fn i1(&self) -> GroupHom {
        GroupHom::from_fn(&self.left.whole(), &self.whole.whole(), |g| self.pair(g, 0)).expect("embedding")
    }

    pub fn i2(&self) -> GroupHom {
        GroupHom::from_fn(&self.right.whole(), &self.whole.whole(), |h| self.pair(0, h)).expect("embedding")
    }

    /// `S × T`.
    pub fn product_of(&self, s: &Subgroup, t: &Subgroup) -> Subgroup {
        let mut gens: Vec<Elem> = s.generators().iter().map(|&g| self.pair(g, 0)).collect();
        gens.extend(t.generators().iter().map(|&h| self.pair(0, h)));
        Subgroup::generated(&self.whole, &gens)
    }

    pub fn subgroup_from_pairs(&self, pairs: &[(Elem, Elem)]) -> Subgroup {
        let gens: Vec<Elem> = pairs.iter().map(|&(g, h)| self.pair(g, h)).collect();
        Subgroup::generated(&self.whole, &gens)
    }

    /// `Δ(P, φ, Q) = {(φ(y), y) : y ∈ Q}` for an isomorphism `φ: Q → P`.
    pub fn twisted_diagonal(&self, phi: &GroupHom) -> Result<Subgroup> {
        if !Arc::ptr_eq(phi.source().ambient(), &self.right) || !Arc::ptr_eq(phi.target().ambient(), &self.left) {
            return Err(Error::Mismatch("φ must map a subgroup of H into G".into()));
        }
        if !phi.is_injective() {
            return Err(Error::Precondition("φ is not injective".into()));
        }
        let gens: Vec<Elem> =
            phi.source().generators().iter().map(|&y| self.pair(phi.apply(y), y)).collect();
        Ok(Subgroup::generated(&self.whole, &gens))
    }

    /// `Δ(P) = Δ(P, id, P)`; requires `G = H`.
    pub fn diagonal(&self, p: &Subgroup) -> Result<Subgroup> {
        if !Arc::ptr_eq(&self.left, &self.right) {
            return Err(Error::Mismatch("diagonal needs equal factors".into()));
        }
        let gens: Vec<Elem> = p.generators().iter().map(|&g| self.pair(g, g)).collect();
        Ok(Subgroup::generated(&self.whole, &gens))
    }

    /// Stabilizer `N_{S×T}(X)` of a subgroup `X` under conjugation inside `S × T`.
    pub fn normalizer_in(&self, s: &Subgroup, t: &Subgroup, x: &Subgroup) -> Subgroup {
        let w = &self.whole;
        let mut elems = Vec::new();
        for &g in s.elements() {
            for &h in t.elements() {
                let z = self.pair(g, h);
                if x.generators().iter().all(|&y| x.contains(w.conj(z, y))) {
                    elems.push(z);
                }
            }
        }
        crate::group::Subgroup::from_elements(w, &elems).expect("stabilizers are subgroups")
    }
}

/// A subgroup `X ≤ G × H` with its invariants.
#[derive(Clone)]
pub struct ProductSubgroup {
    prod: Product,
    x: Subgroup,
    p1: Subgroup,
    p2: Subgroup,
    k1: Subgroup,
    k2: Subgroup,
}

impl PartialEq for ProductSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.x == other.x
    }
}
impl Eq for ProductSubgroup {}

impl fmt::Debug for ProductSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "X ≤ {:?} (|X|={}, |p1|={}, |p2|={}, |k1|={}, |k2|={})",
            self.prod,
            self.x.order(),
            self.p1.order(),
            self.p2.order(),
            self.k1.order(),
            self.k2.order()
        )
    }
}

impl ProductSubgroup {
    pub fn new(prod: &Product, x: &Subgroup) -> Result<ProductSubgroup> {
        if !Arc::ptr_eq(x.ambient(), &prod.whole) {
            return Err(Error::Mismatch("subgroup of a different product".into()));
        }
        let mut p1 = Vec::new();
        let mut p2 = Vec::new();
        let mut k1 = Vec::new();
        let mut k2 = Vec::new();
        for &z in x.elements() {
            let (g, h) = prod.split(z);
            p1.push(g);
            p2.push(h);
            if h == 0 {
                k1.push(g);
            }
            if g == 0 {
                k2.push(h);
            }
        }
        Ok(ProductSubgroup {
            prod: prod.clone(),
            x: x.clone(),
            p1: Subgroup::from_closed_set(&prod.left, p1),
            p2: Subgroup::from_closed_set(&prod.right, p2),
            k1: Subgroup::from_closed_set(&prod.left, k1),
            k2: Subgroup::from_closed_set(&prod.right, k2),
        })
    }

    pub fn product(&self) -> &Product {
        &self.prod
    }
    pub fn subgroup(&self) -> &Subgroup {
        &self.x
    }
    pub fn p1(&self) -> &Subgroup {
        &self.p1
    }
    pub fn p2(&self) -> &Subgroup {
        &self.p2
    }
    pub fn k1(&self) -> &Subgroup {
        &self.k1
    }
    pub fn k2(&self) -> &Subgroup {
        &self.k2
    }

    pub fn is_twisted_diagonal(&self) -> bool {
        self.k1.is_trivial() && self.k2.is_trivial()
    }

    /// A `g` with `(g, h) ∈ X`; `η_X(h k_2(X)) = g k_1(X)`.
    pub fn eta(&self, h: Elem) -> Option<Elem> {
        self.x.elements().iter().map(|&z| self.prod.split(z)).find(|&(_, y)| y == h).map(|(g, _)| g)
    }

    /// For a twisted diagonal `Δ(P, φ, Q)`, returns `φ: Q → P`.
    pub fn twisted_iso(&self) -> Result<GroupHom> {
        if !self.is_twisted_diagonal() {
            return Err(Error::Precondition("not a twisted diagonal subgroup".into()));
        }
        let map: HashMap<Elem, Elem> =
            self.x.elements().iter().map(|&z| { let (g, h) = self.prod.split(z); (h, g) }).collect();
        GroupHom::from_fn(&self.p2, &self.p1, |h| map[&h])
    }

    /// `X * Y ≤ G × K`; `target` must be the product `G × K`.
    pub fn compose(&self, y: &ProductSubgroup, target: &Product) -> Result<ProductSubgroup> {
        if !Arc::ptr_eq(&self.prod.right, &y.prod.left) {
            return Err(Error::Mismatch("middle groups differ".into()));
        }
        if !Arc::ptr_eq(&target.left, &self.prod.left) || !Arc::ptr_eq(&target.right, &y.prod.right) {
            return Err(Error::Mismatch("target product has the wrong factors".into()));
        }
        let mut by_h: HashMap<Elem, Vec<Elem>> = HashMap::new();
        for &z in self.x.elements() {
            let (g, h) = self.prod.split(z);
            by_h.entry(h).or_default().push(g);
        }
        let mut seen = vec![false; target.whole.order()];
        let mut elems = Vec::new();
        for &z in y.x.elements() {
            let (h, k) = y.prod.split(z);
            if let Some(gs) = by_h.get(&h) {
                for &g in gs {
                    let w = target.pair(g, k);
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        elems.push(w);
                    }
                }
            }
        }
        ProductSubgroup::new(target, &Subgroup::from_closed_set(&target.whole, elems))
    }

    /// `X° = {(h, g) : (g, h) ∈ X} ≤ H × G`; `target` must be `H × G`.
    pub fn opposite(&self, target: &Product) -> Result<ProductSubgroup> {
        if !Arc::ptr_eq(&target.left, &self.prod.right) || !Arc::ptr_eq(&target.right, &self.prod.left) {
            return Err(Error::Mismatch("opposite product has the wrong factors".into()));
        }
        let elems = self
            .x
            .elements()
            .iter()
            .map(|&z| {
                let (g, h) = self.prod.split(z);
                target.pair(h, g)
            })
            .collect();
        ProductSubgroup::new(target, &Subgroup::from_closed_set(&target.whole, elems))
    }

    /// `^{(g,h)} X`.
    pub fn conjugate(&self, g: Elem, h: Elem) -> ProductSubgroup {
        let x = self.x.conjugate(self.prod.pair(g, h));
        ProductSubgroup::new(&self.prod, &x).expect("same product")
    }
}

/// `N_{(S,φ,T)} = {g ∈ S : ∃ h ∈ T, c_g φ c_h^{-1} = φ}` for `φ: Q → P`.
pub fn n_stabilizer(s: &Subgroup, phi: &GroupHom, t: &Subgroup) -> Result<Subgroup> {
    let q = phi.source();
    let p = phi.image();
    let g = s.ambient();
    let h = t.ambient();
    if !s.elements().iter().all(|&x| p.generators().iter().all(|&y| p.contains(g.conj(x, y)))) {
        return Err(Error::Precondition("S does not normalize P".into()));
    }
    if !t.elements().iter().all(|&x| q.generators().iter().all(|&y| q.contains(h.conj(x, y)))) {
        return Err(Error::Precondition("T does not normalize Q".into()));
    }
    let qg = q.generators();
    let target: Vec<Elem> = qg.iter().map(|&y| phi.apply(y)).collect();
    let elems: Vec<Elem> = s
        .elements()
        .iter()
        .copied()
        .filter(|&x| {
            t.elements().iter().any(|&k| {
                let ki = h.inv(k);
                qg.iter()
                    .zip(&target)
                    .all(|(&y, &py)| g.conj(x, phi.apply(h.conj(ki, y))) == py)
            })
        })
        .collect();
    Subgroup::from_elements(g, &elems)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d8() -> (GroupRef, Product) {
        let g = Group::catalog("D8").unwrap();
        let p = Product::new(&g, &g).unwrap();
        (g, p)
    }

    #[test]
    fn diagonal_invariants() {
        let (g, pr) = d8();
        let d = ProductSubgroup::new(&pr, &pr.diagonal(&g.whole()).unwrap()).unwrap();
        assert_eq!(d.p1().order(), 8);
        assert!(d.is_twisted_diagonal());
        let eta = d.twisted_iso().unwrap();
        assert_eq!(eta, GroupHom::identity(&g.whole()));
        let full = ProductSubgroup::new(&pr, &pr.whole.whole()).unwrap();
        assert_eq!((full.k1().order(), full.k2().order()), (8, 8));
    }

    #[test]
    fn diagonal_times_central_factor() {
        let (g, pr) = d8();
        let r = g.elements().find(|&x| g.elem_order(x) == 4).unwrap();
        let c4 = Subgroup::generated(&g, &[r]);
        let z = g.pow(r, 2);
        let mut gens: Vec<Elem> = vec![pr.pair(r, r), pr.pair(z, 0)];
        gens.sort();
        let x = ProductSubgroup::new(&pr, &Subgroup::generated(&pr.whole, &gens)).unwrap();
        assert_eq!(x.k1().order(), 2);
        // (r,r)^2 (z,1) = (1,z), so the right kernel is Z(D8) as well
        assert_eq!(x.k2().order(), 2);
        assert_eq!(x.p1(), &c4);
        assert_eq!(x.p2(), &c4);
        assert_eq!(x.subgroup().order(), x.p1().order() * x.k2().order());
    }

    #[test]
    fn normalizer_of_diagonal_c4() {
        let (g, pr) = d8();
        let w = g.whole();
        let r = g.elements().find(|&x| g.elem_order(x) == 4).unwrap();
        let c4 = Subgroup::generated(&g, &[r]);
        let dp = pr.diagonal(&c4).unwrap();
        let n = pr.normalizer_in(&w, &w, &dp);
        let ng = w.normalizer(&c4).unwrap();
        let cg = w.centralizer(&c4).unwrap();
        let expect = pr.diagonal(&ng).unwrap().join(&pr.product_of(&cg, &g.trivial_subgroup()));
        assert_eq!(n, expect);
        let phi = GroupHom::identity(&c4);
        let nphi = n_stabilizer(&ng, &phi, &ng).unwrap();
        assert!(cg.is_subgroup_of(&nphi));
        assert!(c4.is_subgroup_of(&nphi));
        let one = g.trivial_subgroup();
        assert_eq!(n_stabilizer(&w, &GroupHom::identity(&one), &w).unwrap(), w);
    }
}
