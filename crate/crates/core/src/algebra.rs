//! Elements of group algebras `F_q S` for subgroups `S` of a materialized group,
//! and the center `Z(F_q S)` in the class-sum basis.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Fe, FieldRef};
use crate::group::{Elem, Subgroup};
use crate::linalg::Mat;
use crate::module::MatModule;
use crate::product::Product;

/// `Σ_x c_x x ∈ F_q S`, coefficients indexed by position in `S.elements()`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgElem {
    group: Subgroup,
    coeffs: Vec<Fe>,
}

impl fmt::Debug for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .support()
            .map(|(x, c)| format!("{c}*{x}"))
            .collect();
        write!(f, "[{}] in F{:?}", terms.join(" + "), self.group)
    }
}

impl AlgElem {
    pub fn zero(group: &Subgroup) -> AlgElem {
        AlgElem { group: group.clone(), coeffs: vec![0; group.order()] }
    }

    pub fn one(group: &Subgroup) -> AlgElem {
        AlgElem::basis(group, 0)
    }

    pub fn basis(group: &Subgroup, x: Elem) -> AlgElem {
        let mut e = AlgElem::zero(group);
        e.coeffs[group.position(x).expect("basis element in group")] = 1;
        e
    }

    pub fn from_fn(group: &Subgroup, f: impl Fn(Elem) -> Fe) -> AlgElem {
        AlgElem { group: group.clone(), coeffs: group.elements().iter().map(|&x| f(x)).collect() }
    }

    pub fn group(&self) -> &Subgroup {
        &self.group
    }

    pub fn coeff(&self, x: Elem) -> Fe {
        self.group.position(x).map(|i| self.coeffs[i]).unwrap_or(0)
    }

    pub fn coefficients(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn support(&self) -> impl Iterator<Item = (Elem, Fe)> + '_ {
        self.group
            .elements()
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, &c)| c != 0)
            .map(|(&x, &c)| (x, c))
    }

    pub fn support_size(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn same_group(&self, other: &AlgElem) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::Mismatch("group algebra elements over different groups".into()))
        }
    }

    pub fn add(&self, other: &AlgElem, f: &FieldRef) -> Result<AlgElem> {
        self.same_group(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(AlgElem { group: self.group.clone(), coeffs })
    }

    pub fn sub(&self, other: &AlgElem, f: &FieldRef) -> Result<AlgElem> {
        self.same_group(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(AlgElem { group: self.group.clone(), coeffs })
    }

    pub fn scale(&self, c: Fe, f: &FieldRef) -> AlgElem {
        AlgElem { group: self.group.clone(), coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect() }
    }

    pub fn mul(&self, other: &AlgElem, f: &FieldRef) -> Result<AlgElem> {
        self.same_group(other)?;
        let a = self.group.ambient();
        let mut out = AlgElem::zero(&self.group);
        let rhs: Vec<(Elem, Fe)> = other.support().collect();
        for (x, c) in self.support() {
            for &(y, d) in &rhs {
                let i = self.group.position(a.mul(x, y)).expect("closed");
                out.coeffs[i] = f.add(out.coeffs[i], f.mul(c, d));
            }
        }
        Ok(out)
    }

    /// `^g a = g a g⁻¹`, an element of `F[^g S]`.
    pub fn conjugate(&self, g: Elem) -> AlgElem {
        let a = self.group.ambient();
        let target = self.group.conjugate(g);
        let mut out = AlgElem::zero(&target);
        for (x, c) in self.support() {
            out.coeffs[target.position(a.conj(g, x)).expect("conjugate")] = c;
        }
        out
    }

    /// Whether `^g a = a` for every `g` in `by` (which must normalize the support group).
    pub fn is_fixed_by(&self, by: &[Elem]) -> bool {
        let a = self.group.ambient();
        by.iter().all(|&g| self.support().all(|(x, c)| self.coeff(a.conj(g, x)) == c))
            && by.iter().all(|&g| {
                self.group.generators().iter().all(|&s| self.group.contains(a.conj(g, s)))
            })
    }

    pub fn is_central(&self) -> bool {
        self.is_fixed_by(self.group.generators())
    }

    /// The same element viewed in `F T` for a subgroup `T ⊇ S`.
    pub fn embed(&self, t: &Subgroup) -> Result<AlgElem> {
        if !self.group.is_subgroup_of(t) {
            return Err(Error::NotContained("embedding into a smaller group algebra".into()));
        }
        let mut out = AlgElem::zero(t);
        for (x, c) in self.support() {
            out.coeffs[t.position(x).expect("contained")] = c;
        }
        Ok(out)
    }

    /// Coefficient truncation to a subgroup `T ≤ S`.
    pub fn truncate(&self, t: &Subgroup) -> Result<AlgElem> {
        if !t.is_subgroup_of(&self.group) {
            return Err(Error::NotContained("truncation to a non-subgroup".into()));
        }
        Ok(AlgElem::from_fn(t, |x| self.coeff(x)))
    }

    /// The antipode `Σ c_x x⁻¹`.
    pub fn antipode(&self) -> AlgElem {
        let a = self.group.ambient();
        AlgElem::from_fn(&self.group, |x| self.coeff(a.inv(x)))
    }

    /// The matrix `Σ c_x R_x` by which the element acts on `m`.
    pub fn action_matrix(&self, m: &MatModule) -> Result<Mat> {
        if !self.group.is_subgroup_of(m.group()) {
            return Err(Error::NotContained("acting element outside the module's group".into()));
        }
        let f = m.field();
        let mut out = Mat::zeros(m.dim(), m.dim());
        for (x, c) in self.support() {
            out.add_scaled(c, m.matrix(x), f);
        }
        Ok(out)
    }
}

/// `e ⊗ f*` in `F[S × T] ≤ F[G × H]`: the coefficient at `(a, b)` is `e(a) f(b⁻¹)`.
pub fn tensor_dual(prod: &Product, e: &AlgElem, f: &AlgElem, field: &FieldRef) -> AlgElem {
    let st = prod.product_of(e.group(), f.group());
    let h = &prod.right;
    AlgElem::from_fn(&st, |x| {
        let (a, b) = prod.split(x);
        field.mul(e.coeff(a), f.coeff(h.inv(b)))
    })
}

/// The center `Z(F_q S)` with basis the class sums `K_1 = 1, K_2, …`.
pub struct Center {
    group: Subgroup,
    field: FieldRef,
    /// `a[i][j][k]`: coefficient of `K_k` in `K_i K_j`, as integers.
    structure: Vec<Vec<Vec<u64>>>,
}

impl Center {
    pub fn new(group: &Subgroup, field: &FieldRef) -> Center {
        let a = group.ambient();
        let classes = group.conjugacy_classes();
        let c = classes.len();
        let mut structure = vec![vec![vec![0u64; c]; c]; c];
        for (i, ci) in classes.iter().enumerate() {
            for (k, ck) in classes.iter().enumerate() {
                let z = ck.rep;
                for &x in &ci.members {
                    let y = a.mul(a.inv(x), z);
                    structure[i][group.class_index(y)][k] += 1;
                }
            }
        }
        Center { group: group.clone(), field: field.clone(), structure }
    }

    pub fn group(&self) -> &Subgroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.structure.len()
    }

    /// Integer structure constants of the class-sum basis.
    pub fn structure_constants(&self) -> &[Vec<Vec<u64>>] {
        &self.structure
    }

    pub fn mul(&self, x: &[Fe], y: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        let c = self.dim();
        let mut out = vec![0; c];
        for i in 0..c {
            if x[i] == 0 {
                continue;
            }
            for j in 0..c {
                if y[j] == 0 {
                    continue;
                }
                let xy = f.mul(x[i], y[j]);
                for (k, &n) in self.structure[i][j].iter().enumerate() {
                    if n != 0 {
                        out[k] = f.add(out[k], f.mul(xy, f.from_int((n % f.p()) as i64)));
                    }
                }
            }
        }
        out
    }

    /// Matrix of multiplication by `z` in the class-sum basis (row convention).
    pub fn mul_matrix(&self, z: &[Fe]) -> Mat {
        let c = self.dim();
        let rows: Vec<Vec<Fe>> = (0..c)
            .map(|i| {
                let mut b = vec![0; c];
                b[i] = 1;
                self.mul(&b, z)
            })
            .collect();
        Mat::from_rows(c, &rows)
    }

    /// Class coordinates of a central element.
    pub fn coordinates(&self, a: &AlgElem) -> Result<Vec<Fe>> {
        if a.group() != &self.group || !a.is_central() {
            return Err(Error::Precondition("element is not central".into()));
        }
        Ok(self.group.conjugacy_classes().iter().map(|c| a.coeff(c.rep)).collect())
    }

    pub fn element(&self, coords: &[Fe]) -> AlgElem {
        let g = &self.group;
        AlgElem::from_fn(g, |x| coords[g.class_index(x)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fq;
    use crate::group::Group;

    #[test]
    fn class_sums_multiply_like_group_elements() {
        let g = Group::catalog("S3").unwrap().whole();
        let f = Fq::new(2, 2).unwrap();
        let z = Center::new(&g, &f);
        assert_eq!(z.dim(), 3);
        for i in 0..3 {
            for j in 0..3 {
                let mut a = vec![0; 3];
                a[i] = 1;
                let mut b = vec![0; 3];
                b[j] = 1;
                let direct = z.element(&a).mul(&z.element(&b), &f).unwrap();
                assert_eq!(z.coordinates(&direct).unwrap(), z.mul(&a, &b));
            }
        }
    }

    #[test]
    fn conjugation_and_truncation() {
        let gr = Group::catalog("D8").unwrap();
        let g = gr.whole();
        let f = Fq::new(2, 1).unwrap();
        let r = g.generators()[0];
        let e = AlgElem::basis(&g, r);
        let s = g.generators()[1];
        assert_eq!(e.conjugate(s).coeff(gr.inv(r)), 1);
        let z = g.center();
        let t = e.add(&AlgElem::one(&g), &f).unwrap().truncate(&z).unwrap();
        assert!(t.is_one());
    }
}
