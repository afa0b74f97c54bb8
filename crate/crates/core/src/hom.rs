//! `Hom_{FS}(M, N)` via a spin basis of `M`.
//!
//! A module map is determined by the images of module generators ("seeds") of
//! `M`; the images of the remaining spin-basis vectors follow along the tree,
//! and the non-tree edges of the spin graph give the linear constraints.

use std::collections::HashSet;

use crate::field::{Fe, Fq};
use crate::linalg::{axpy, Mat, Subspace};
use crate::module::MatModule;

struct SpinBasis {
    /// Rows are the spin basis in standard coordinates.
    basis: Mat,
    /// For each basis vector: `None` for a seed, else `(parent index, generator index)`.
    origin: Vec<Option<(usize, usize)>>,
    seeds: Vec<usize>,
}

fn spin_basis(m: &MatModule) -> SpinBasis {
    let f = m.field();
    let d = m.dim();
    let gens = m.generator_matrices();
    let mut span = Subspace::zero(d);
    let mut basis = Mat::zeros(0, d);
    let mut origin = Vec::new();
    let mut seeds = Vec::new();
    for e in 0..d {
        let mut v = vec![0 as Fe; d];
        v[e] = 1;
        if !span.insert(&v, f) {
            continue;
        }
        seeds.push(basis.rows());
        basis.push_row(&v);
        origin.push(None);
        let mut head = basis.rows() - 1;
        while head < basis.rows() {
            let cur = basis.row(head).to_vec();
            for (k, r) in gens.iter().enumerate() {
                let w = Mat::vec_mul(&cur, r, f);
                if span.insert(&w, f) {
                    basis.push_row(&w);
                    origin.push(Some((head, k)));
                }
            }
            head += 1;
        }
        if basis.rows() == d {
            break;
        }
    }
    SpinBasis { basis, origin, seeds }
}

/// A basis of `Hom_{FS}(m, n)`; both modules must list matrices for the same generators.
pub(crate) fn hom_basis(m: &MatModule, n: &MatModule) -> Vec<Mat> {
    let f: &Fq = m.field();
    let dm = m.dim();
    let dn = n.dim();
    if dm == 0 || dn == 0 {
        return Vec::new();
    }
    let sb = spin_basis(m);
    let binv = sb.basis.inverse(f).expect("spin basis spans");
    let rm = m.generator_matrices();
    let rn = n.generator_matrices();
    let ngen = rm.len();
    // R'_s = B R_s B^{-1}: the action in spin coordinates
    let rprime: Vec<Mat> = rm.iter().map(|r| sb.basis.mul(r, f).mul(&binv, f)).collect();
    let tree: HashSet<(usize, usize)> = sb.origin.iter().flatten().copied().collect();
    let t = sb.seeds.len();
    let unknowns = t * dn;
    // F_a in spin coordinates for each unknown a = (seed, coordinate)
    let mut fa: Vec<Mat> = Vec::with_capacity(unknowns);
    for &seed in &sb.seeds {
        for c in 0..dn {
            let mut fm = Mat::zeros(dm, dn);
            fm.set(seed, c, 1);
            for i in 0..dm {
                if let Some((par, k)) = sb.origin[i] {
                    let row = Mat::vec_mul(fm.row(par), &rn[k], f);
                    fm.row_mut(i).copy_from_slice(&row);
                }
            }
            fa.push(fm);
        }
    }
    let edges: Vec<(usize, usize)> = (0..dm)
        .flat_map(|i| (0..ngen).map(move |k| (i, k)))
        .filter(|e| !tree.contains(e))
        .collect();
    let mut cons = Mat::zeros(unknowns, edges.len() * dn);
    for (a, fm) in fa.iter().enumerate() {
        for (ei, &(i, k)) in edges.iter().enumerate() {
            // row i of R'_s F - F R_s
            let mut acc = vec![0 as Fe; dn];
            let coeffs = rprime[k].row(i);
            for (kk, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    axpy(f, &mut acc, c, fm.row(kk));
                }
            }
            let rhs = Mat::vec_mul(fm.row(i), &rn[k], f);
            axpy(f, &mut acc, f.neg(1), &rhs);
            cons.row_mut(a)[ei * dn..(ei + 1) * dn].copy_from_slice(&acc);
        }
    }
    let sol = if edges.is_empty() { Mat::identity(unknowns) } else { cons.left_kernel(f) };
    (0..sol.rows())
        .map(|r| {
            let mut spin = Mat::zeros(dm, dn);
            for (a, &c) in sol.row(r).iter().enumerate() {
                if c != 0 {
                    spin.add_scaled(c, &fa[a], f);
                }
            }
            binv.mul(&spin, f)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fq;
    use crate::group::Group;
    use proptest::prelude::*;

    fn is_hom(m: &MatModule, n: &MatModule, fm: &Mat) -> bool {
        let f = m.field();
        m.generator_matrices()
            .iter()
            .zip(n.generator_matrices())
            .all(|(a, b)| a.mul(fm, f) == fm.mul(b, f))
    }

    #[test]
    fn endomorphisms_of_regular_module() {
        let g = Group::catalog("S3").unwrap();
        let f = Fq::new(2, 1).unwrap();
        let reg = MatModule::regular(&g.whole(), &f);
        let e = reg.endomorphisms();
        assert_eq!(e.len(), 6);
        assert!(e.iter().all(|x| is_hom(&reg, &reg, x)));
    }

    #[test]
    fn hom_from_trivial_is_fixed_points() {
        let g = Group::catalog("D8").unwrap();
        let w = g.whole();
        let f = Fq::new(2, 1).unwrap();
        let triv = MatModule::trivial(&w, &f);
        for q in w.p_subgroups_up_to_conjugacy(2) {
            let m = MatModule::coset_module(&w, &q, &f).unwrap().forget_points();
            let h = triv.hom_space(&m).unwrap();
            assert_eq!(h.len(), m.fixed_points(&w).unwrap().dim());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        // dim Hom(F[G/A], F[G/B]) = number of (A, B) double cosets
        #[test]
        fn hom_between_coset_modules_counts_double_cosets(i in 0usize..8, j in 0usize..8, name in prop::sample::select(vec!["D8", "S3", "A4"])) {
            let g = Group::catalog(name).unwrap();
            let w = g.whole();
            let f = Fq::new(2, 1).unwrap();
            let subs = w.all_p_subgroups(2);
            let mut all = subs.clone();
            all.push(w.clone());
            let a = &all[i % all.len()];
            let b = &all[j % all.len()];
            let ma = MatModule::coset_module(&w, a, &f).unwrap().forget_points();
            let mb = MatModule::coset_module(&w, b, &f).unwrap();
            let h = ma.hom_space(&mb).unwrap();
            prop_assert_eq!(h.len(), w.double_coset_reps(a, b).unwrap().len());
            for x in &h {
                prop_assert!(is_hom(&ma, &mb, x));
            }
        }
    }
}
