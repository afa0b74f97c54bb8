//! Finite-dimensional `F_q S`-modules given by generator matrices.
//!
//! Vectors are rows and `g · v = v R_g`, so `R_{gh} = R_h R_g`. A module may
//! carry a permutation basis (point images under each generator), which keeps
//! Brauer constructions, tensor products and inductions of permutation modules
//! exact and cheap.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::{Fe, FieldRef};
use crate::group::{maximal_subgroups_of_p_group, Elem, GroupHom, Subgroup};
use crate::linalg::{Mat, Subspace};

/// Point images `π_s(i)` for each generator `s` of the acting group.
pub type PointAction = Vec<Vec<u32>>;

#[derive(Clone)]
pub struct MatModule {
    group: Subgroup,
    field: FieldRef,
    dim: usize,
    gens: Arc<Vec<Mat>>,
    points: Option<Arc<PointAction>>,
    all: Arc<OnceLock<Vec<Mat>>>,
}

impl fmt::Debug for MatModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "module of dim {} over a group of order {}{}",
            self.dim,
            self.group.order(),
            if self.points.is_some() { " (permutation basis)" } else { "" }
        )
    }
}

fn compose_points(outer: &[u32], inner: &[u32]) -> Vec<u32> {
    inner.iter().map(|&i| outer[i as usize]).collect()
}

impl MatModule {
    /// Builds a module from generator matrices and checks every Cayley edge.
    pub fn new(group: &Subgroup, field: &FieldRef, gens: Vec<Mat>) -> Result<MatModule> {
        if gens.len() != group.generators().len() {
            return Err(Error::Precondition("one matrix per generator required".into()));
        }
        let dim = gens.first().map(|m| m.rows()).unwrap_or(0);
        for m in &gens {
            if m.rows() != dim || m.cols() != dim || !m.is_invertible(field) {
                return Err(Error::Precondition("generator matrices must be invertible and square".into()));
            }
        }
        let m = MatModule::from_parts(group, field, dim, gens);
        m.verify_action()?;
        Ok(m)
    }

    pub(crate) fn from_parts(group: &Subgroup, field: &FieldRef, dim: usize, gens: Vec<Mat>) -> MatModule {
        MatModule {
            group: group.clone(),
            field: field.clone(),
            dim,
            gens: Arc::new(gens),
            points: None,
            all: Arc::new(OnceLock::new()),
        }
    }

    /// `F[X]` for a `group`-set `X` described by generator point images.
    pub fn permutation(group: &Subgroup, field: &FieldRef, n: usize, points: PointAction) -> MatModule {
        debug_assert!(points.iter().all(|v| v.len() == n));
        let gens = points
            .iter()
            .map(|im| Mat::permutation(&im.iter().map(|&x| x as usize).collect::<Vec<_>>()))
            .collect();
        MatModule {
            group: group.clone(),
            field: field.clone(),
            dim: n,
            gens: Arc::new(gens),
            points: Some(Arc::new(points)),
            all: Arc::new(OnceLock::new()),
        }
    }

    /// `n` copies of the trivial module, as a permutation module.
    fn trivial_action_points(group: &Subgroup, field: &FieldRef, n: usize) -> MatModule {
        let points: PointAction = group.generators().iter().map(|_| (0..n as u32).collect()).collect();
        MatModule::permutation(group, field, n, points)
    }

    pub fn trivial(group: &Subgroup, field: &FieldRef) -> MatModule {
        MatModule::trivial_action_points(group, field, 1)
    }

    pub fn zero(group: &Subgroup, field: &FieldRef) -> MatModule {
        MatModule::trivial_action_points(group, field, 0)
    }

    /// `F[G/Q]` on the left cosets of `q`, basis ordered by least coset element.
    pub fn coset_module(group: &Subgroup, q: &Subgroup, field: &FieldRef) -> Result<MatModule> {
        let a = group.ambient();
        let reps = group.left_transversal(q)?;
        let mut coset = HashMap::new();
        for (i, &r) in reps.iter().enumerate() {
            for &y in q.elements() {
                coset.insert(a.mul(r, y), i as u32);
            }
        }
        let points: PointAction = group
            .generators()
            .iter()
            .map(|&s| reps.iter().map(|&r| coset[&a.mul(s, r)]).collect())
            .collect();
        Ok(MatModule::permutation(group, field, reps.len(), points))
    }

    pub fn regular(group: &Subgroup, field: &FieldRef) -> MatModule {
        let one = group.ambient().trivial_subgroup();
        MatModule::coset_module(group, &one, field).expect("trivial subgroup")
    }

    pub fn group(&self) -> &Subgroup {
        &self.group
    }
    pub fn field(&self) -> &FieldRef {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn generator_matrices(&self) -> &[Mat] {
        &self.gens
    }
    pub fn has_permutation_basis(&self) -> bool {
        self.points.is_some()
    }
    pub fn point_action(&self) -> Option<&PointAction> {
        self.points.as_deref()
    }

    /// The same module with matrices listed for the generators of `s`, an equal subgroup.
    pub(crate) fn aligned(&self, s: &Subgroup) -> MatModule {
        if self.group.generators() == s.generators() {
            self.clone()
        } else {
            self.restrict(s).expect("equal acting groups")
        }
    }

    /// Drops the permutation-basis certificate (same matrices).
    pub fn forget_points(&self) -> MatModule {
        let mut m = self.clone();
        m.points = None;
        m
    }

    /// Matrices of all group elements, aligned with `group().elements()`.
    pub fn element_matrices(&self) -> &[Mat] {
        self.all.get_or_init(|| {
            let g = &self.group;
            let tree = g.schreier_tree();
            let mut out: Vec<Option<Mat>> = vec![None; g.order()];
            out[0] = Some(Mat::identity(self.dim));
            for x in g.bfs_order().into_iter().skip(1) {
                let pos = g.position(x).expect("member");
                let (par, k) = tree[pos];
                let pm = out[g.position(par).expect("member")].as_ref().expect("parent first");
                out[pos] = Some(self.gens[k].mul(pm, &self.field));
            }
            out.into_iter().map(|m| m.expect("all reached")).collect()
        })
    }

    pub fn matrix(&self, x: Elem) -> &Mat {
        let pos = self.group.position(x).expect("element of the acting group");
        &self.element_matrices()[pos]
    }

    /// Point images of every element (permutation modules only), aligned with `group().elements()`.
    pub fn element_point_actions(&self) -> Option<Vec<Vec<u32>>> {
        let pts = self.points.as_ref()?;
        let g = &self.group;
        let tree = g.schreier_tree();
        let mut out: Vec<Option<Vec<u32>>> = vec![None; g.order()];
        out[0] = Some((0..self.dim as u32).collect());
        for x in g.bfs_order().into_iter().skip(1) {
            let pos = g.position(x).expect("member");
            let (par, k) = tree[pos];
            let pp = out[g.position(par).expect("member")].as_ref().expect("parent first");
            // x = par * s acts as par ∘ s
            out[pos] = Some(compose_points(pp, &pts[k]));
        }
        Some(out.into_iter().map(|v| v.expect("reached")).collect())
    }

    fn verify_action(&self) -> Result<()> {
        let g = &self.group;
        let amb = g.ambient();
        let mats = self.element_matrices();
        for (pos, &x) in g.elements().iter().enumerate() {
            for (k, &s) in g.generators().iter().enumerate() {
                let xs = amb.mul(x, s);
                let lhs = &mats[g.position(xs).expect("closed")];
                let rhs = self.gens[k].mul(&mats[pos], &self.field);
                if *lhs != rhs {
                    return Err(Error::Precondition(format!(
                        "matrices violate the group law at element {x}, generator {k}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `g · v`.
    pub fn act(&self, x: Elem, v: &[Fe]) -> Vec<Fe> {
        Mat::vec_mul(v, self.matrix(x), &self.field)
    }

    pub fn restrict(&self, h: &Subgroup) -> Result<MatModule> {
        if !h.is_subgroup_of(&self.group) || !Arc::ptr_eq(h.ambient(), self.group.ambient()) {
            return Err(Error::NotContained("restriction to a non-subgroup".into()));
        }
        if let Some(pa) = self.element_point_actions() {
            let points = h
                .generators()
                .iter()
                .map(|&s| pa[self.group.position(s).expect("member")].clone())
                .collect();
            return Ok(MatModule::permutation(h, &self.field, self.dim, points));
        }
        let gens = h.generators().iter().map(|&s| self.matrix(s).clone()).collect();
        Ok(MatModule::from_parts(h, &self.field, self.dim, gens))
    }

    /// `Ind_H^K M = FK ⊗_{FH} M`, basis `t_i ⊗ m_a` at index `i * dim M + a`.
    pub fn induce(&self, k: &Subgroup) -> Result<MatModule> {
        let h = &self.group;
        if !h.is_subgroup_of(k) || !Arc::ptr_eq(h.ambient(), k.ambient()) {
            return Err(Error::NotContained("induction from a non-subgroup".into()));
        }
        let a = k.ambient();
        let reps = k.left_transversal(h)?;
        let mut where_: HashMap<Elem, (usize, Elem)> = HashMap::new();
        for (i, &t) in reps.iter().enumerate() {
            for &y in h.elements() {
                where_.insert(a.mul(t, y), (i, y));
            }
        }
        let d = self.dim;
        let n = reps.len() * d;
        if let Some(pa) = self.element_point_actions() {
            let points = k
                .generators()
                .iter()
                .map(|&s| {
                    let mut im = vec![0u32; n];
                    for (i, &t) in reps.iter().enumerate() {
                        let (j, y) = where_[&a.mul(s, t)];
                        let py = &pa[h.position(y).expect("member")];
                        for b in 0..d {
                            im[i * d + b] = (j * d) as u32 + py[b];
                        }
                    }
                    im
                })
                .collect();
            return Ok(MatModule::permutation(k, &self.field, n, points));
        }
        let gens = k
            .generators()
            .iter()
            .map(|&s| {
                let mut r = Mat::zeros(n, n);
                for (i, &t) in reps.iter().enumerate() {
                    let (j, y) = where_[&a.mul(s, t)];
                    let ry = self.matrix(y);
                    for b in 0..d {
                        for c in 0..d {
                            r.set(i * d + b, j * d + c, ry.get(b, c));
                        }
                    }
                }
                r
            })
            .collect();
        Ok(MatModule::from_parts(k, &self.field, n, gens))
    }

    /// `^g M`, a module for `^g S` where `^g x` acts as `x` does on `M`.
    pub fn conjugate(&self, g: Elem) -> MatModule {
        let cs = self.group.conjugate(g);
        let mut m = self.clone();
        m.group = cs;
        m.all = Arc::new(OnceLock::new());
        m
    }

    /// Transport along an isomorphism `α: S' → S` of acting groups: `x` acts as `α(x)`.
    pub fn pullback(&self, alpha: &GroupHom) -> Result<MatModule> {
        if !alpha.image().is_subgroup_of(&self.group) {
            return Err(Error::Mismatch("pullback target is not the acting group".into()));
        }
        let src = alpha.source();
        if let Some(pa) = self.element_point_actions() {
            let points = src
                .generators()
                .iter()
                .map(|&s| pa[self.group.position(alpha.apply(s)).expect("member")].clone())
                .collect();
            return Ok(MatModule::permutation(src, &self.field, self.dim, points));
        }
        let gens = src.generators().iter().map(|&s| self.matrix(alpha.apply(s)).clone()).collect();
        Ok(MatModule::from_parts(src, &self.field, self.dim, gens))
    }

    pub fn dual(&self) -> MatModule {
        if self.points.is_some() {
            return self.clone();
        }
        let gens = self
            .gens
            .iter()
            .map(|m| m.inverse(&self.field).expect("invertible action").transpose())
            .collect();
        MatModule::from_parts(&self.group, &self.field, self.dim, gens)
    }

    /// `M ⊗_F N` with the diagonal action, basis index `i * dim N + j`.
    pub fn tensor(&self, other: &MatModule) -> Result<MatModule> {
        if self.group != other.group {
            return Err(Error::Mismatch("tensor over the field needs the same group".into()));
        }
        let other = &other.aligned(&self.group);
        if let (Some(a), Some(b)) = (&self.points, &other.points) {
            let nb = other.dim as u32;
            let points = a
                .iter()
                .zip(b.iter())
                .map(|(pa, pb)| {
                    let mut im = Vec::with_capacity(self.dim * other.dim);
                    for &x in pa {
                        for &y in pb {
                            im.push(x * nb + y);
                        }
                    }
                    im
                })
                .collect();
            return Ok(MatModule::permutation(&self.group, &self.field, self.dim * other.dim, points));
        }
        let gens = self
            .gens
            .iter()
            .zip(other.gens.iter())
            .map(|(a, b)| a.kron(b, &self.field))
            .collect();
        Ok(MatModule::from_parts(&self.group, &self.field, self.dim * other.dim, gens))
    }

    pub fn direct_sum(mods: &[MatModule]) -> Result<MatModule> {
        let first = mods.first().ok_or_else(|| Error::Precondition("empty direct sum".into()))?;
        for m in mods {
            if m.group != first.group {
                return Err(Error::Mismatch("direct sum over different groups".into()));
            }
        }
        let mods: Vec<MatModule> = mods.iter().map(|m| m.aligned(&first.group)).collect();
        let dim = mods.iter().map(|m| m.dim).sum();
        if mods.iter().all(|m| m.points.is_some()) {
            let ngen = first.group.generators().len();
            let mut points: PointAction = vec![Vec::with_capacity(dim); ngen];
            let mut off = 0u32;
            for m in mods {
                let pa = m.points.as_ref().unwrap();
                for (k, im) in pa.iter().enumerate() {
                    points[k].extend(im.iter().map(|&x| x + off));
                }
                off += m.dim as u32;
            }
            return Ok(MatModule::permutation(&first.group, &first.field, dim, points));
        }
        let ngen = first.group.generators().len();
        let gens = (0..ngen)
            .map(|k| Mat::block_diag(&mods.iter().map(|m| &m.gens[k]).collect::<Vec<_>>()))
            .collect();
        Ok(MatModule::from_parts(&first.group, &first.field, dim, gens))
    }

    pub fn is_submodule(&self, u: &Subspace) -> bool {
        let f = &self.field;
        self.gens.iter().all(|r| {
            (0..u.dim()).all(|i| u.contains(&Mat::vec_mul(u.basis().row(i), r, f), f))
        })
    }

    /// The submodule on a stable subspace, in its echelon basis.
    pub fn submodule(&self, u: &Subspace) -> MatModule {
        let f = &self.field;
        let gens = self
            .gens
            .iter()
            .map(|r| {
                let img = u.basis().mul(r, f);
                let mut c = Mat::zeros(u.dim(), u.dim());
                for i in 0..u.dim() {
                    let co = u.coordinates(img.row(i));
                    c.row_mut(i).copy_from_slice(&co);
                }
                c
            })
            .collect();
        MatModule::from_parts(&self.group, f, u.dim(), gens)
    }

    /// `M / U`, in the basis of standard vectors complementing the pivots of `U`.
    pub fn quotient(&self, u: &Subspace) -> MatModule {
        let f = &self.field;
        let comp = u.complement_indices();
        let gens = self
            .gens
            .iter()
            .map(|r| {
                let mut c = Mat::zeros(comp.len(), comp.len());
                for (i, &j) in comp.iter().enumerate() {
                    let mut w = r.row(j).to_vec();
                    u.reduce(&mut w, f);
                    for (k, &l) in comp.iter().enumerate() {
                        c.set(i, k, w[l]);
                    }
                }
                c
            })
            .collect();
        MatModule::from_parts(&self.group, f, comp.len(), gens)
    }

    /// `M^P` for `P ≤` the acting group.
    pub fn fixed_points(&self, p: &Subgroup) -> Result<Subspace> {
        if !p.is_subgroup_of(&self.group) {
            return Err(Error::NotContained("fixed points of a non-subgroup".into()));
        }
        let f = &self.field;
        let d = self.dim;
        if p.generators().is_empty() || d == 0 {
            return Ok(Subspace::full(d));
        }
        let mut stacked = Mat::zeros(d, 0);
        for &s in p.generators() {
            let m = self.matrix(s).sub(&Mat::identity(d), f);
            stacked = stacked.hstack(&m);
        }
        Ok(Subspace::span(&stacked.left_kernel(f), f))
    }

    /// Image of `tr_Q^P : M^Q → M^P`.
    pub fn relative_trace(&self, q: &Subgroup, p: &Subgroup) -> Result<Subspace> {
        if !q.is_subgroup_of(p) {
            return Err(Error::NotContained("relative trace needs Q ≤ P".into()));
        }
        let f = &self.field;
        let mq = self.fixed_points(q)?;
        let mut t = Mat::zeros(self.dim, self.dim);
        for x in p.left_transversal(q)? {
            t = t.add(self.matrix(x), f);
        }
        Ok(Subspace::span(&mq.basis().mul(&t, f), f))
    }

    /// `M(P) = M^P / Σ_{Q < P maximal} tr_Q^P(M^Q)` as a module for `N_S(P)`.
    pub fn brauer_construction(&self, p: &Subgroup) -> Result<MatModule> {
        let f = &self.field;
        let pr = f.p();
        if !p.is_p_group(pr) {
            return Err(Error::NotPGroup(format!("{p:?}")));
        }
        if !p.is_subgroup_of(&self.group) {
            return Err(Error::NotContained("Brauer construction at a non-subgroup".into()));
        }
        let n = self.group.normalizer(p)?;
        if let Some(pa) = self.element_point_actions() {
            let fixed: Vec<u32> = (0..self.dim as u32)
                .filter(|&i| {
                    p.generators()
                        .iter()
                        .all(|&s| pa[self.group.position(s).unwrap()][i as usize] == i)
                })
                .collect();
            let index: HashMap<u32, u32> = fixed.iter().enumerate().map(|(k, &i)| (i, k as u32)).collect();
            let points = n
                .generators()
                .iter()
                .map(|&s| {
                    let im = &pa[self.group.position(s).unwrap()];
                    fixed.iter().map(|&i| index[&im[i as usize]]).collect()
                })
                .collect();
            return Ok(MatModule::permutation(&n, f, fixed.len(), points));
        }
        let res = self.restrict(&n)?;
        let mp = res.fixed_points(p)?;
        let mut traces = Subspace::zero(self.dim);
        if !p.is_trivial() {
            for q in maximal_subgroups_of_p_group(p, pr) {
                traces = traces.sum(&res.relative_trace(&q, p)?, f);
            }
        }
        let sub = res.submodule(&mp);
        // traces lie in M^P; express them in the echelon coordinates of M^P
        let mut tc = Mat::zeros(0, mp.dim());
        for i in 0..traces.dim() {
            tc.push_row(&mp.coordinates(traces.basis().row(i)));
        }
        Ok(sub.quotient(&Subspace::span(&tc, f)))
    }

    /// `M / I_N M`, the largest quotient on which `N` acts trivially.
    pub fn coinvariants(&self, nsub: &Subgroup) -> Result<MatModule> {
        if !nsub.is_subgroup_of(&self.group) || !nsub.is_normal_in(&self.group) {
            return Err(Error::Precondition("coinvariants need a normal subgroup".into()));
        }
        let f = &self.field;
        let mut span = Subspace::zero(self.dim);
        for &s in nsub.generators() {
            let m = self.matrix(s).sub(&Mat::identity(self.dim), f);
            span = span.sum(&Subspace::span(&m, f), f);
        }
        // I_N M is generated as a module by the images of (s - 1); close under the action
        let span = self.module_closure(&span);
        Ok(self.quotient(&span))
    }

    /// Smallest submodule containing a subspace.
    pub fn module_closure(&self, u: &Subspace) -> Subspace {
        let f = &self.field;
        let mut s = u.clone();
        let mut frontier: Vec<Vec<Fe>> = s.basis().row_vecs();
        while let Some(v) = frontier.pop() {
            for r in self.gens.iter() {
                let w = Mat::vec_mul(&v, r, f);
                if s.insert(&w, f) {
                    frontier.push(w);
                }
            }
        }
        s
    }

    /// Inflation along `π: S → Q`, where `self` is a module for `Q`.
    pub fn inflate(&self, pi: &GroupHom) -> Result<MatModule> {
        if pi.target() != &self.group {
            return Err(Error::Mismatch("inflation map must land in the acting group".into()));
        }
        self.pullback(pi)
    }

    /// `Def^S_{S/N}(M) = M / I_N M` as a module for the quotient `π: S → S/N`.
    pub fn deflate(&self, nsub: &Subgroup, pi: &GroupHom) -> Result<MatModule> {
        let co = self.coinvariants(nsub)?;
        let q = pi.target();
        let gens = q
            .generators()
            .iter()
            .map(|&y| {
                let x = self
                    .group
                    .elements()
                    .iter()
                    .copied()
                    .find(|&x| pi.apply(x) == y)
                    .expect("surjective projection");
                co.matrix(x).clone()
            })
            .collect();
        Ok(MatModule::from_parts(q, &self.field, co.dim, gens))
    }

    /// A basis of `Hom_{FS}(self, other)` as matrices `F` with `f(v) = v F`.
    pub fn hom_space(&self, other: &MatModule) -> Result<Vec<Mat>> {
        if self.group != other.group {
            return Err(Error::Mismatch("Hom between modules over different groups".into()));
        }
        Ok(crate::hom::hom_basis(self, &other.aligned(&self.group)))
    }

    pub fn endomorphisms(&self) -> Vec<Mat> {
        crate::hom::hom_basis(self, self)
    }

    /// Transport a module structure along a change of basis `B` (new basis rows in old coordinates).
    pub fn change_basis(&self, b: &Mat) -> Result<MatModule> {
        let f = &self.field;
        let bi = b.inverse(f).ok_or_else(|| Error::Precondition("singular basis change".into()))?;
        let gens = self.gens.iter().map(|r| b.mul(r, f).mul(&bi, f)).collect();
        Ok(MatModule::from_parts(&self.group, f, self.dim, gens))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fq;
    use crate::group::{Group, Subgroup};

    #[test]
    fn coset_modules_and_fixed_points() {
        let g = Group::catalog("S3").unwrap();
        let w = g.whole();
        let f = Fq::new(2, 2).unwrap();
        let c3 = w.sylow(3);
        let m = MatModule::coset_module(&w, &c3, &f).unwrap();
        assert_eq!(m.dim(), 2);
        let triv = MatModule::coset_module(&w, &w, &f).unwrap();
        assert_eq!(triv.dim(), 1);
        // dim M^P = number of P-orbits on G/Q
        let c2 = w.sylow(2);
        assert_eq!(m.fixed_points(&c2).unwrap().dim(), 1);
        assert_eq!(m.forget_points().fixed_points(&c2).unwrap().dim(), 1);
    }

    #[test]
    fn trace_from_trivial_vanishes_in_char_two() {
        let g = Group::catalog("C2").unwrap();
        let w = g.whole();
        let f = Fq::new(2, 1).unwrap();
        let t = MatModule::trivial(&w, &f);
        let one = g.trivial_subgroup();
        assert_eq!(t.relative_trace(&one, &w).unwrap().dim(), 0);
        assert_eq!(t.relative_trace(&w, &w).unwrap().dim(), 1);
    }

    #[test]
    fn brauer_construction_paths_agree() {
        let g = Group::catalog("D8").unwrap();
        let w = g.whole();
        let f = Fq::new(2, 1).unwrap();
        for q in w.p_subgroups_up_to_conjugacy(2) {
            let m = MatModule::coset_module(&w, &q, &f).unwrap();
            for p in w.p_subgroups_up_to_conjugacy(2) {
                let a = m.brauer_construction(&p).unwrap();
                let b = m.forget_points().brauer_construction(&p).unwrap();
                assert_eq!(a.dim(), b.dim());
                assert!(crate::decompose::is_isomorphic(&a, &b, 7).unwrap());
            }
        }
    }

    #[test]
    fn induction_of_trivial_is_coset_module() {
        let g = Group::catalog("S3").unwrap();
        let w = g.whole();
        let f = Fq::new(2, 2).unwrap();
        let c2 = w.sylow(2);
        let ind = MatModule::trivial(&c2, &f).forget_points().induce(&w).unwrap();
        let cm = MatModule::coset_module(&w, &c2, &f).unwrap();
        assert!(crate::decompose::is_isomorphic(&ind, &cm, 1).unwrap());
    }

    #[test]
    fn deflation_of_regular_d8_by_center() {
        let g = Group::catalog("D8").unwrap();
        let w = g.whole();
        let f = Fq::new(2, 1).unwrap();
        let z = w.center();
        let (_, pi) = crate::group::quotient_group(&w, &z).unwrap();
        let reg = MatModule::regular(&w, &f).forget_points();
        let d = reg.deflate(&z, &pi).unwrap();
        assert_eq!(d.dim(), 4);
        let back = d.inflate(&pi).unwrap();
        assert_eq!(back.group(), &w);
        let _ = Subgroup::generated(&g, &[]);
    }

    #[test]
    fn rejects_non_representation() {
        let g = Group::catalog("C2").unwrap();
        let w = g.whole();
        let f = Fq::new(3, 1).unwrap();
        // an element of order 2 cannot act as scalar 2·2 = 4 = 1 ... use a matrix of order 4 instead
        let bad = Mat::from_rows(2, &[vec![0, 1], vec![2, 0]]);
        assert!(MatModule::new(&w, &f, vec![bad]).is_err());
        let good = Mat::from_rows(1, &[vec![2]]);
        assert!(MatModule::new(&w, &f, vec![good]).is_ok());
    }
}
