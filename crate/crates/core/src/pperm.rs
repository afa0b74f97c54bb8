//! Recognizing `p`-permutation modules through the table of marks of a Sylow subgroup.

use crate::decompose::is_isomorphic;
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::module::MatModule;

/// `|(P/Q)^R|`, the number of cosets `xQ` fixed by `R`.
fn mark(p: &Subgroup, q: &Subgroup, r: &Subgroup) -> Result<usize> {
    let a = p.ambient();
    let reps = p.left_transversal(q)?;
    Ok(reps
        .iter()
        .filter(|&&x| r.generators().iter().all(|&y| q.contains(a.mul(a.inv(x), a.mul(y, x)))))
        .count())
}

/// Multiplicities `a_Q` with `dim M(R) = Σ_Q a_Q |(P/Q)^R|` for `P` a Sylow subgroup,
/// `Q` and `R` running over subgroups of `P` up to `P`-conjugacy. `None` if no
/// non-negative integral solution exists.
pub fn sylow_orbit_counts(m: &MatModule) -> Result<Option<Vec<(Subgroup, usize)>>> {
    let p = m.field().p();
    let sylow = m.group().sylow(p);
    let res = m.restrict(&sylow)?;
    let classes = sylow.p_subgroups_up_to_conjugacy(p);
    let dims: Vec<usize> = classes.iter().map(|r| res.brauer_construction(r).map(|b| b.dim())).collect::<Result<_>>()?;
    let mut counts = vec![0usize; classes.len()];
    // classes are sorted by order, so larger subgroups come later
    for i in (0..classes.len()).rev() {
        let r = &classes[i];
        let mut rest = dims[i] as i64;
        for j in i + 1..classes.len() {
            if counts[j] > 0 {
                rest -= (counts[j] * mark(&sylow, &classes[j], r)?) as i64;
            }
        }
        let diag = mark(&sylow, r, r)? as i64;
        if rest < 0 || rest % diag != 0 {
            return Ok(None);
        }
        counts[i] = (rest / diag) as usize;
    }
    Ok(Some(classes.into_iter().zip(counts).filter(|(_, c)| *c > 0).collect()))
}

/// Whether `m` is a direct summand of a permutation module, tested by restricting
/// to a Sylow subgroup and comparing with the permutation module the marks predict.
pub fn is_p_permutation(m: &MatModule, seed: u64) -> Result<bool> {
    if m.dim() == 0 || m.has_permutation_basis() {
        return Ok(true);
    }
    let Some(counts) = sylow_orbit_counts(m)? else {
        return Ok(false);
    };
    let f = m.field();
    let sylow = m.group().sylow(f.p());
    let mut parts = Vec::new();
    for (q, c) in &counts {
        let pm = MatModule::coset_module(&sylow, q, f)?;
        parts.extend(std::iter::repeat(pm).take(*c));
    }
    if parts.is_empty() {
        return Err(Error::Precondition("nonzero module with no fixed points on a p-group".into()));
    }
    let model = MatModule::direct_sum(&parts)?;
    if model.dim() != m.dim() {
        return Ok(false);
    }
    is_isomorphic(&m.restrict(&sylow)?, &model, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::decompose;
    use crate::field::Fq;
    use crate::group::Group;

    #[test]
    fn summands_of_permutation_modules_are_recognized() {
        let g = Group::catalog("S3").unwrap().whole();
        let f = Fq::new(2, 2).unwrap();
        let reg = MatModule::regular(&g, &f);
        for s in decompose(&reg, 1).unwrap() {
            assert!(is_p_permutation(&s.module.forget_points(), 3).unwrap());
        }
    }

    #[test]
    fn radical_of_c4_group_algebra_is_not_p_permutation() {
        let gr = Group::catalog("C4").unwrap();
        let g = gr.whole();
        let f = Fq::new(2, 1).unwrap();
        let reg = MatModule::regular(&g, &f);
        // the radical of F C4 is uniserial of length 3, not a permutation module
        let x = g.generators()[0];
        let mut t = reg.matrix(x).clone();
        t.add_scaled(1, &crate::linalg::Mat::identity(4), &f);
        let m = reg.submodule(&crate::linalg::Subspace::span(&t, &f));
        assert_eq!(m.dim(), 3);
        assert!(!is_p_permutation(&m, 0).unwrap());
        let sq = reg.submodule(&crate::linalg::Subspace::span(&t.mul(&t, &f), &f));
        assert_eq!(sq.dim(), 2);
        assert!(is_p_permutation(&sq, 0).unwrap());
    }
}
