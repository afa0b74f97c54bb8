//! Class functions with exact cyclotomic values: Brauer characters, characters
//! of lifts of `p`-permutation modules, products over a middle group, and the
//! (generalized) decomposition maps.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cyclotomic::{Cyclotomic, CyclotomicJson};
use crate::error::{Error, Result};
use crate::field::FieldRef;
use crate::group::{Elem, Subgroup};
use crate::linalg::Mat;
use crate::module::MatModule;
use crate::padic::{p_valuation, LiftedIdempotent, WElem, Wn};
use crate::poly;
use crate::product::Product;

/// A class function on `group`, one value per conjugacy class (in class order).
#[derive(Clone, PartialEq, Eq)]
pub struct ClassFunction {
    group: Subgroup,
    conductor: u64,
    values: Vec<Cyclotomic>,
}

impl fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.values)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassValueJson {
    pub representative: Vec<usize>,
    pub class_size: usize,
    pub value: CyclotomicJson,
}

/// The conductor used for all class functions over `F_q`: `q - 1`.
pub fn conductor_for(field: &FieldRef) -> u64 {
    field.q() as u64 - 1
}

impl ClassFunction {
    pub fn zero(group: &Subgroup, conductor: u64) -> ClassFunction {
        let c = group.conjugacy_classes().len();
        ClassFunction { group: group.clone(), conductor, values: vec![Cyclotomic::zero(conductor); c] }
    }

    pub fn from_values(group: &Subgroup, conductor: u64, values: Vec<Cyclotomic>) -> Result<ClassFunction> {
        if values.len() != group.conjugacy_classes().len() || values.iter().any(|v| v.conductor() != conductor) {
            return Err(Error::Mismatch("class function shape".into()));
        }
        Ok(ClassFunction { group: group.clone(), conductor, values })
    }

    /// Evaluates `f` at class representatives.
    pub fn from_fn(group: &Subgroup, conductor: u64, mut f: impl FnMut(Elem) -> Cyclotomic) -> ClassFunction {
        let values = group.conjugacy_classes().iter().map(|c| f(c.rep)).collect();
        ClassFunction { group: group.clone(), conductor, values }
    }

    /// The function that is `1` on the class of `x` and `0` elsewhere.
    pub fn class_indicator(group: &Subgroup, conductor: u64, x: Elem) -> ClassFunction {
        let k = group.class_index(x);
        let mut f = ClassFunction::zero(group, conductor);
        f.values[k] = Cyclotomic::from_int(conductor, 1);
        f
    }

    pub fn group(&self) -> &Subgroup {
        &self.group
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, x: Elem) -> &Cyclotomic {
        &self.values[self.group.class_index(x)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    fn check(&self, other: &ClassFunction) -> Result<()> {
        if self.group != other.group || self.conductor != other.conductor {
            return Err(Error::Mismatch("class functions on different groups".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.add(b)).collect();
        Ok(ClassFunction { group: self.group.clone(), conductor: self.conductor, values })
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.sub(b)).collect();
        Ok(ClassFunction { group: self.group.clone(), conductor: self.conductor, values })
    }

    pub fn scale_int(&self, k: i64) -> ClassFunction {
        let values = self.values.iter().map(|a| a.scale_int(k)).collect();
        ClassFunction { group: self.group.clone(), conductor: self.conductor, values }
    }

    pub fn neg(&self) -> ClassFunction {
        self.scale_int(-1)
    }

    pub fn restrict(&self, h: &Subgroup) -> Result<ClassFunction> {
        if !h.is_subgroup_of(&self.group) {
            return Err(Error::NotContained("restriction to a non-subgroup".into()));
        }
        Ok(ClassFunction::from_fn(h, self.conductor, |x| self.value(x).clone()))
    }

    /// Pointwise complex conjugate, i.e. `g ↦ χ(g⁻¹)` for characters.
    pub fn conj(&self) -> ClassFunction {
        let values = self.values.iter().map(|a| a.conj()).collect();
        ClassFunction { group: self.group.clone(), conductor: self.conductor, values }
    }

    /// `g ↦ χ(g⁻¹)`.
    pub fn contragredient(&self) -> ClassFunction {
        let a = self.group.ambient();
        ClassFunction::from_fn(&self.group, self.conductor, |x| self.value(a.inv(x)).clone())
    }

    /// `^g χ`, a class function on `^g S`.
    pub fn conjugate(&self, g: Elem) -> ClassFunction {
        let a = self.group.ambient();
        let t = self.group.conjugate(g);
        let gi = a.inv(g);
        ClassFunction::from_fn(&t, self.conductor, |x| self.value(a.conj(gi, x)).clone())
    }

    /// Zero outside `p`-regular classes.
    pub fn vanishes_off_p_regular(&self, p: u64) -> bool {
        let a = self.group.ambient();
        self.group
            .conjugacy_classes()
            .iter()
            .zip(&self.values)
            .all(|(c, v)| a.is_p_regular(c.rep, p) || v.is_zero())
    }

    /// Restriction of values to `p`-regular classes (zero elsewhere).
    pub fn p_regular_part(&self, p: u64) -> ClassFunction {
        let a = self.group.ambient();
        let n = self.conductor;
        ClassFunction::from_fn(&self.group, n, |x| {
            if a.is_p_regular(x, p) { self.value(x).clone() } else { Cyclotomic::zero(n) }
        })
    }

    pub fn to_json(&self) -> Vec<ClassValueJson> {
        let a = self.group.ambient();
        self.group
            .conjugacy_classes()
            .iter()
            .zip(&self.values)
            .map(|(c, v)| ClassValueJson {
                representative: a.perm(c.rep).images().to_vec(),
                class_size: c.size(),
                value: v.to_json(),
            })
            .collect()
    }
}

/// `Σ ζ^{log λ}` over the eigenvalues of `m`, which must all lie in `F_q^×`.
fn eigenvalue_lift(m: &Mat, field: &FieldRef, n: u64) -> Result<Cyclotomic> {
    if m.rows() == 0 {
        return Ok(Cyclotomic::zero(n));
    }
    let cp = m.char_poly(field);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut acc = Cyclotomic::zero(n);
    for (g, mult) in poly::factor(field, &cp, &mut rng) {
        if poly::degree(&g) != Some(1) {
            return Err(Error::NotSplit("eigenvalues outside F_q".into()));
        }
        let lam = field.neg(g[0]);
        if lam == 0 {
            return Err(Error::Precondition("singular group element matrix".into()));
        }
        let z = Cyclotomic::zeta_pow(n, field.log(lam) as i64);
        acc = acc.add(&z.scale_int(mult as i64));
    }
    Ok(acc)
}

/// Brauer character of `x` on `m` at a `p`-regular `x`.
fn brauer_value(m: &MatModule, x: Elem, n: u64) -> Result<Cyclotomic> {
    if let Some(pa) = m.element_point_actions() {
        let i = m.group().position(x).expect("element of the acting group");
        let fixed = pa[i].iter().enumerate().filter(|(k, &v)| *k as u32 == v).count();
        return Ok(Cyclotomic::from_int(n, fixed as i64));
    }
    eigenvalue_lift(m.matrix(x), m.field(), n)
}

/// The Brauer character of `m`, zero on `p`-singular classes.
pub fn brauer_character(m: &MatModule) -> Result<ClassFunction> {
    let g = m.group();
    let a = g.ambient();
    let f = m.field();
    let n = conductor_for(f);
    let mut values = Vec::new();
    for c in g.conjugacy_classes() {
        if a.is_p_regular(c.rep, f.p()) {
            values.push(brauer_value(m, c.rep, n)?);
        } else {
            values.push(Cyclotomic::zero(n));
        }
    }
    ClassFunction::from_values(g, n, values)
}

/// Brauer character computed from eigenvalues only, ignoring a permutation basis.
pub fn brauer_character_by_eigenvalues(m: &MatModule) -> Result<ClassFunction> {
    brauer_character(&m.forget_points())
}

/// Character of the `O`-lift of a `p`-permutation module: the value at `us` is the
/// Brauer character of `M(⟨u⟩)` at `s`.
pub fn lift_character(m: &MatModule) -> Result<ClassFunction> {
    let g = m.group();
    let a = g.ambient();
    let f = m.field();
    let n = conductor_for(f);
    let mut cache: HashMap<Elem, MatModule> = HashMap::new();
    let mut values = Vec::new();
    for c in g.conjugacy_classes() {
        let (u, s) = a.p_part_decomposition(c.rep, f.p());
        if !cache.contains_key(&u) {
            let cu = Subgroup::generated(a, &[u]);
            cache.insert(u, m.brauer_construction(&cu)?);
        }
        values.push(brauer_value(&cache[&u], s, n)?);
    }
    ClassFunction::from_values(g, n, values)
}

/// `lift_character` after checking that `m` is a `p`-permutation module.
pub fn lift_character_checked(m: &MatModule, seed: u64) -> Result<ClassFunction> {
    if !crate::pperm::is_p_permutation(m, seed)? {
        return Err(Error::NotPPermutation);
    }
    lift_character(m)
}

/// `(χ, ψ)_S = 1/|S| Σ χ(x) ψ(x⁻¹)`.
pub fn inner_product(chi: &ClassFunction, psi: &ClassFunction) -> Result<Cyclotomic> {
    chi.check(psi)?;
    let g = &chi.group;
    let a = g.ambient();
    let mut acc = Cyclotomic::zero(chi.conductor);
    for (c, v) in g.conjugacy_classes().iter().zip(&chi.values) {
        let w = psi.value(a.inv(c.rep));
        acc = acc.add(&v.mul(w).scale_int(c.size() as i64));
    }
    Ok(acc.scale(&BigRational::new(BigInt::from(1), BigInt::from(g.order()))))
}

/// `(μ ·_H ν)(g, k) = 1/|H| Σ_h μ(g, h) ν(h, k)` for class functions on `G × H` and `H × K`.
pub fn char_dot(
    mu: &ClassFunction,
    left: &Product,
    nu: &ClassFunction,
    right: &Product,
    out: &Product,
) -> Result<ClassFunction> {
    if mu.group() != &left.whole.whole() || nu.group() != &right.whole.whole() {
        return Err(Error::Mismatch("char_dot needs class functions on the whole products".into()));
    }
    if !std::sync::Arc::ptr_eq(&left.right, &right.left)
        || !std::sync::Arc::ptr_eq(&out.left, &left.left)
        || !std::sync::Arc::ptr_eq(&out.right, &right.right)
    {
        return Err(Error::Mismatch("char_dot factor groups".into()));
    }
    let n = mu.conductor;
    let h = &left.right;
    let scale = BigRational::new(BigInt::from(1), BigInt::from(h.order()));
    Ok(ClassFunction::from_fn(&out.whole.whole(), n, |x| {
        let (g, k) = out.split(x);
        let mut acc = Cyclotomic::zero(n);
        for y in h.elements() {
            let a = mu.value(left.pair(g, y));
            if a.is_zero() {
                continue;
            }
            acc = acc.add(&a.mul(nu.value(right.pair(y, k))));
        }
        acc.scale(&scale)
    }))
}

/// `(μ ·^{X,Y}_H ν)(g, k) = 1/|k₂(X) ∩ k₁(Y)| Σ_h μ(g, h) ν(h, k)` over the `h` with
/// `(g, h) ∈ X` and `(h, k) ∈ Y`: the character of the extended tensor product.
pub fn ext_char_dot(
    mu: &ClassFunction,
    left: &Product,
    nu: &ClassFunction,
    right: &Product,
    out: &Product,
) -> Result<ClassFunction> {
    use crate::product::ProductSubgroup;
    let x = ProductSubgroup::new(left, mu.group())?;
    let y = ProductSubgroup::new(right, nu.group())?;
    let xy = x.compose(&y, out)?;
    let k = x.k2().intersection(y.k1()).order();
    let n = mu.conductor;
    let mut by_g: HashMap<Elem, Vec<Elem>> = HashMap::new();
    for &z in mu.group().elements() {
        let (g, h) = left.split(z);
        by_g.entry(g).or_default().push(h);
    }
    let scale = BigRational::new(BigInt::from(1), BigInt::from(k));
    Ok(ClassFunction::from_fn(xy.subgroup(), n, |w| {
        let (g, kk) = out.split(w);
        let mut acc = Cyclotomic::zero(n);
        for &h in &by_g[&g] {
            let r = right.pair(h, kk);
            if nu.group().contains(r) {
                acc = acc.add(&mu.value(left.pair(g, h)).mul(nu.value(r)));
            }
        }
        acc.scale(&scale)
    }))
}

/// `μ°(h, g) = μ((g, h)⁻¹)`, the character of the dual along the flip onto `X°`.
pub fn opposite_character(mu: &ClassFunction, prod: &Product, prod_op: &Product) -> Result<ClassFunction> {
    let x = crate::product::ProductSubgroup::new(prod, mu.group())?;
    let xo = x.opposite(prod_op)?;
    let w = &prod.whole;
    Ok(ClassFunction::from_fn(xo.subgroup(), mu.conductor, |z| {
        let (h, g) = prod_op.split(z);
        mu.value(w.inv(prod.pair(g, h))).clone()
    }))
}

/// `I_μ(ψ)(g) = 1/|T| Σ_{t∈T} μ(g, t) ψ(t)` for `μ` on `S × T ≤ G × H` and `ψ` on `T`.
pub fn apply_bicharacter(
    mu: &ClassFunction,
    prod: &Product,
    s: &Subgroup,
    t: &Subgroup,
    psi: &ClassFunction,
) -> Result<ClassFunction> {
    let st = prod.product_of(s, t);
    if mu.group() != &st || psi.group() != t {
        return Err(Error::Mismatch("bicharacter shape".into()));
    }
    let n = mu.conductor;
    let scale = BigRational::new(BigInt::from(1), BigInt::from(t.order()));
    Ok(ClassFunction::from_fn(s, n, |g| {
        let mut acc = Cyclotomic::zero(n);
        for &y in t.elements() {
            let b = psi.value(y);
            if b.is_zero() {
                continue;
            }
            acc = acc.add(&mu.value(prod.pair(g, y)).mul(b));
        }
        acc.scale(&scale)
    }))
}

/// `d^u(χ)(g) = χ(u g)` for `g ∈ C_S(u)` `p`-regular, zero elsewhere (block idempotent `1`).
pub fn generalized_decomposition_exact(chi: &ClassFunction, u: Elem, p: u64) -> Result<ClassFunction> {
    let g = chi.group();
    let a = g.ambient();
    if !g.contains(u) || !a.is_p_element(u, p) {
        return Err(Error::Precondition("u must be a p-element of the group".into()));
    }
    let c = g.centralizer_of_gens(&[u]);
    let n = chi.conductor;
    Ok(ClassFunction::from_fn(&c, n, |x| {
        if a.is_p_regular(x, p) { chi.value(a.mul(u, x)).clone() } else { Cyclotomic::zero(n) }
    }))
}

/// The decomposition map `d(χ)(g) = χ(g)` on `p`-regular `g`.
pub fn decomposition_map(chi: &ClassFunction, p: u64) -> ClassFunction {
    chi.p_regular_part(p)
}

/// A class function with values in `W_N`, on `p`-regular classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicClassFunction {
    pub group: Subgroup,
    pub values: Vec<WElem>,
}

impl PadicClassFunction {
    pub fn value(&self, x: Elem) -> &WElem {
        &self.values[self.group.class_index(x)]
    }

    pub fn from_exact(chi: &ClassFunction, ring: &Wn) -> Result<PadicClassFunction> {
        let values = chi.values().iter().map(|v| ring.from_cyclotomic(v)).collect::<Result<_>>()?;
        Ok(PadicClassFunction { group: chi.group().clone(), values })
    }
}

/// `d^{(u,e)}(χ)(g) = χ(u g ê) = Σ_y ê(y) χ(u g y)` on `p`-regular `g ∈ C_S(u)`,
/// with `ê` the lift of a central idempotent of `F[C_S(u)]`.
pub fn generalized_decomposition(chi: &ClassFunction, u: Elem, e: &LiftedIdempotent) -> Result<PadicClassFunction> {
    let g = chi.group();
    let a = g.ambient();
    let w = e.ring();
    let p = w.field().p();
    let c = g.centralizer_of_gens(&[u]);
    if e.group() != &c {
        return Err(Error::Mismatch("idempotent must live in the centralizer of u".into()));
    }
    let img: Vec<WElem> = chi.values().iter().map(|v| w.from_cyclotomic(v)).collect::<Result<_>>()?;
    let mut values = Vec::new();
    for cl in c.conjugacy_classes() {
        let x = cl.rep;
        if !a.is_p_regular(x, p) {
            values.push(w.zero());
            continue;
        }
        let ux = a.mul(u, x);
        let mut acc = w.zero();
        for &y in c.elements() {
            let ey = e.coeff(y);
            if w.is_zero(ey) {
                continue;
            }
            acc = w.add(&acc, &w.mul(ey, &img[g.class_index(a.mul(ux, y))]));
        }
        values.push(acc);
    }
    Ok(PadicClassFunction { group: c, values })
}

/// Which perfectness conditions hold for a class function on `S × T ≤ G × H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerfectReport {
    pub divisibility: bool,
    pub separation: bool,
    pub witness: Option<(Elem, Elem)>,
}

/// Checks `μ(g,h) ∈ |C_S(g)| O ∩ |C_T(h)| O` and that `μ(g,h) ≠ 0` forces `g`, `h`
/// to be both `p`-regular or both `p`-singular.
pub fn perfect_report(mu: &ClassFunction, prod: &Product, field: &FieldRef) -> Result<PerfectReport> {
    let x = mu.group();
    let (s, t) = split_product_subgroup(prod, x)?;
    let p = field.p();
    let mut rep = PerfectReport { divisibility: true, separation: true, witness: None };
    for (c, v) in x.conjugacy_classes().iter().zip(mu.values()) {
        if v.is_zero() {
            continue;
        }
        let (g, h) = prod.split(c.rep);
        let sep = prod.left.is_p_regular(g, p) == prod.right.is_p_regular(h, p);
        let val = p_valuation(v, field)?.expect("nonzero");
        let need = vp(s.centralizer_of_gens(&[g]).order() as u64, p).max(vp(t.centralizer_of_gens(&[h]).order() as u64, p));
        let div = val >= need as i64;
        if !sep {
            rep.separation = false;
        }
        if !div {
            rep.divisibility = false;
        }
        if (!sep || !div) && rep.witness.is_none() {
            rep.witness = Some((g, h));
        }
    }
    Ok(rep)
}

pub fn is_perfect(mu: &ClassFunction, prod: &Product, field: &FieldRef) -> Result<bool> {
    let r = perfect_report(mu, prod, field)?;
    Ok(r.divisibility && r.separation)
}

pub fn is_quasi_perfect(mu: &ClassFunction, prod: &Product, field: &FieldRef) -> Result<bool> {
    Ok(perfect_report(mu, prod, field)?.separation)
}

fn vp(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Writes `X = S × T` for a subgroup of a product that is itself a product.
pub fn split_product_subgroup(prod: &Product, x: &Subgroup) -> Result<(Subgroup, Subgroup)> {
    let mut ls = Vec::new();
    let mut rs = Vec::new();
    for &z in x.elements() {
        let (g, h) = prod.split(z);
        if h == 0 {
            ls.push(g);
        }
        if g == 0 {
            rs.push(h);
        }
    }
    let s = Subgroup::from_elements(&prod.left, &ls)?;
    let t = Subgroup::from_elements(&prod.right, &rs)?;
    if s.order() * t.order() != x.order() {
        return Err(Error::Precondition("subgroup is not a direct product S × T".into()));
    }
    Ok((s, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fq;
    use crate::group::Group;

    #[test]
    fn brauer_character_of_coset_module() {
        let g = Group::catalog("S3").unwrap().whole();
        let f = Fq::new(3, 1).unwrap();
        let c3 = g.sylow(3);
        let m = MatModule::coset_module(&g, &c3, &f).unwrap();
        let chi = brauer_character(&m).unwrap();
        let a = g.ambient();
        for c in g.conjugacy_classes() {
            let expect = if c.rep == 0 { 2 } else { 0 };
            assert_eq!(chi.value(c.rep).to_i64(), Some(expect), "{:?}", a.perm(c.rep));
        }
        let by_eig = brauer_character_by_eigenvalues(&m).unwrap();
        assert_eq!(by_eig, chi);
    }

    #[test]
    fn lift_of_permutation_module_is_permutation_character() {
        let gr = Group::catalog("D8").unwrap();
        let g = gr.whole();
        let f = Fq::new(2, 1).unwrap();
        for q in g.all_p_subgroups(2) {
            let m = MatModule::coset_module(&g, &q, &f).unwrap();
            let chi = lift_character(&m).unwrap();
            let reps = g.left_transversal(&q).unwrap();
            for c in g.conjugacy_classes() {
                let fixed = reps.iter().filter(|&&r| q.contains(gr.mul(gr.inv(r), gr.mul(c.rep, r)))).count();
                assert_eq!(chi.value(c.rep).to_i64(), Some(fixed as i64));
            }
        }
    }

    #[test]
    fn inner_products() {
        let g = Group::catalog("S3").unwrap().whole();
        let f = Fq::new(2, 2).unwrap();
        let one = lift_character(&MatModule::trivial(&g, &f)).unwrap();
        assert_eq!(inner_product(&one, &one).unwrap().to_i64(), Some(1));
        let reg = lift_character(&MatModule::regular(&g, &f)).unwrap();
        assert_eq!(inner_product(&reg, &one).unwrap().to_i64(), Some(1));
        assert_eq!(inner_product(&reg, &reg).unwrap().to_i64(), Some(6));
        let c3 = g.sylow(3);
        let perm = lift_character(&MatModule::coset_module(&g, &c3, &f).unwrap()).unwrap();
        assert_eq!(inner_product(&perm, &one).unwrap().to_i64(), Some(1));
    }

    #[test]
    fn brauer_characters_over_f4_take_cyclotomic_values() {
        let g = Group::catalog("C3").unwrap().whole();
        let f = Fq::new(2, 2).unwrap();
        let reg = MatModule::regular(&g, &f);
        let chi = brauer_character_by_eigenvalues(&reg).unwrap();
        let gen = g.generators()[0];
        assert!(chi.value(gen).is_zero());
        assert_eq!(chi.value(0).to_i64(), Some(3));
    }

    #[test]
    fn trivial_bimodule_of_c2_is_not_perfect() {
        let c2 = Group::catalog("C2").unwrap();
        let prod = Product::new(&c2, &c2).unwrap();
        let f = Fq::new(2, 1).unwrap();
        let w = prod.whole.whole();
        let mu = lift_character(&MatModule::trivial(&w, &f)).unwrap();
        let r = perfect_report(&mu, &prod, &f).unwrap();
        assert!(!r.separation);
        assert!(!r.divisibility);
        let delta = prod.diagonal(&c2.whole()).unwrap();
        let m = MatModule::coset_module(&w, &delta, &f).unwrap();
        assert!(is_perfect(&lift_character(&m).unwrap(), &prod, &f).unwrap());
    }
}
