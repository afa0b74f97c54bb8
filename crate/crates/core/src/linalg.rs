//! Dense matrices over `F_q`; vectors are rows and act on the left of matrices.

use std::fmt;

use crate::field::{Fe, Fq};
use crate::poly::{self, Poly};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// `y += c * x` over `F_q`.
#[inline]
pub fn axpy(f: &Fq, y: &mut [Fe], c: Fe, x: &[Fe]) {
    if c == 0 {
        return;
    }
    if f.q() == 2 {
        for (a, &b) in y.iter_mut().zip(x) {
            *a ^= b;
        }
        return;
    }
    for (a, &b) in y.iter_mut().zip(x) {
        if b != 0 {
            *a = f.add(*a, f.mul(c, b));
        }
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<Fe>]) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Mat { rows: rows.len(), cols, data }
    }

    pub fn from_data(rows: usize, cols: usize, data: Vec<Fe>) -> Mat {
        assert_eq!(data.len(), rows * cols);
        Mat { rows, cols, data }
    }

    /// Permutation matrix with `e_i · M = e_{π(i)}`.
    pub fn permutation(images: &[usize]) -> Mat {
        let n = images.len();
        let mut m = Mat::zeros(n, n);
        for (i, &j) in images.iter().enumerate() {
            m.data[i * n + j] = 1;
        }
        m
    }

    pub fn scalar(n: usize, c: Fe) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[Fe] {
        &self.data
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }
    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn row_mut(&mut self, r: usize) -> &mut [Fe] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn row_vecs(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn push_row(&mut self, r: &[Fe]) {
        assert_eq!(r.len(), self.cols);
        self.data.extend_from_slice(r);
        self.rows += 1;
    }

    pub fn mul(&self, other: &Mat, f: &Fq) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let (orow, arow) = (i * other.cols, i * self.cols);
            for k in 0..self.cols {
                let a = self.data[arow + k];
                if a != 0 {
                    axpy(f, &mut out.data[orow..orow + other.cols], a, other.row(k));
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(v: &[Fe], m: &Mat, f: &Fq) -> Vec<Fe> {
        assert_eq!(v.len(), m.rows);
        let mut out = vec![0; m.cols];
        for (k, &a) in v.iter().enumerate() {
            axpy(f, &mut out, a, m.row(k));
        }
        out
    }

    pub fn add(&self, other: &Mat, f: &Fq) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Mat, f: &Fq) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: Fe, f: &Fq) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.mul(a, c)).collect() }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: Fe, other: &Mat, f: &Fq) {
        axpy(f, &mut self.data, c, &other.data);
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        out
    }

    pub fn trace(&self, f: &Fq) -> Fe {
        (0..self.rows.min(self.cols)).fold(0, |acc, i| f.add(acc, self.get(i, i)))
    }

    /// `A ⊗ B` with `(e_i ⊗ e_j) ↦ e_i A ⊗ e_j B`, basis index `i * dim B + j`.
    pub fn kron(&self, other: &Mat, f: &Fq) -> Mat {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Mat::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if b != 0 {
                            out.set(i * other.rows + k, j * other.cols + l, f.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn block_diag(blocks: &[&Mat]) -> Mat {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Mat { rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.rows, idx.len());
        for r in 0..self.rows {
            for (k, &c) in idx.iter().enumerate() {
                out.set(r, k, self.get(r, c));
            }
        }
        out
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut out = Mat::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            out.row_mut(r)[..self.cols].copy_from_slice(self.row(r));
            out.row_mut(r)[self.cols..].copy_from_slice(other.row(r));
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self, f: &Fq) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            if inv != 1 {
                for x in self.row_mut(r) {
                    *x = f.mul(*x, inv);
                }
            }
            let pivot_row = self.row(r).to_vec();
            for i in 0..self.rows {
                if i != r {
                    let a = self.get(i, c);
                    if a != 0 {
                        axpy(f, self.row_mut(i), f.neg(a), &pivot_row);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        self.rows = r;
        self.data.truncate(r * self.cols);
        pivots
    }

    pub fn rank(&self, f: &Fq) -> usize {
        let mut m = self.clone();
        m.rref_in_place(f).len()
    }

    /// Basis (rows) of `{x : x · self = 0}`.
    pub fn left_kernel(&self, f: &Fq) -> Mat {
        // row-reduce [self | I]; rows whose left part vanishes give the kernel
        let n = self.rows;
        let mut m = self.hstack(&Mat::identity(n));
        let piv = m.rref_in_place(f);
        let k = piv.iter().filter(|&&c| c < self.cols).count();
        // rows k.. of the echelon form have zero left part
        let mut out = Mat::zeros(0, n);
        for r in k..m.rows {
            out.push_row(&m.row(r)[self.cols..]);
        }
        out
    }

    /// Basis (rows) of `{x : self · xᵀ = 0}`.
    pub fn right_kernel(&self, f: &Fq) -> Mat {
        let mut m = self.clone();
        let piv = m.rref_in_place(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let mut out = Mat::zeros(free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, 1);
            for (r, &pc) in piv.iter().enumerate() {
                out.set(k, pc, f.neg(m.get(r, fc)));
            }
        }
        out
    }

    pub fn inverse(&self, f: &Fq) -> Option<Mat> {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.hstack(&Mat::identity(n));
        let piv = m.rref_in_place(f);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(m.select_cols(&(n..2 * n).collect::<Vec<_>>()))
    }

    pub fn is_invertible(&self, f: &Fq) -> bool {
        self.is_square() && self.rank(f) == self.rows
    }

    pub fn pow(&self, mut e: u64, f: &Fq) -> Mat {
        let mut base = self.clone();
        let mut acc = Mat::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f);
            }
        }
        acc
    }

    pub fn is_nilpotent(&self, f: &Fq) -> bool {
        let mut m = self.clone();
        let mut e = 1;
        while e < self.rows {
            m = m.mul(&m, f);
            e *= 2;
        }
        m.is_zero()
    }

    /// Characteristic polynomial `det(x - A)` via Hessenberg reduction.
    pub fn char_poly(&self, f: &Fq) -> Poly {
        assert!(self.is_square());
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| h.get(i, m - 1) != 0) else {
                continue;
            };
            if i != m {
                // swap rows and columns i, m
                for j in 0..n {
                    h.data.swap(i * n + j, m * n + j);
                }
                for j in 0..n {
                    h.data.swap(j * n + i, j * n + m);
                }
            }
            let inv = f.inv(h.get(m, m - 1));
            for i in m + 1..n {
                let u = f.mul(h.get(i, m - 1), inv);
                if u == 0 {
                    continue;
                }
                // row_i -= u row_m ; col_m += u col_i
                for j in 0..n {
                    let v = f.sub(h.get(i, j), f.mul(u, h.get(m, j)));
                    h.set(i, j, v);
                }
                for j in 0..n {
                    let v = f.add(h.get(j, m), f.mul(u, h.get(j, i)));
                    h.set(j, m, v);
                }
            }
        }
        // p_0 = 1, p_m(x) = (x - h_mm) p_{m-1} - Σ_i h_{i,m} Π_{j=i+1}^{m} h_{j,j-1} p_{i-1}
        let mut ps: Vec<Poly> = vec![vec![1]];
        for m in 0..n {
            let mut pm = poly::mul(f, &[f.neg(h.get(m, m)), 1], &ps[m]);
            let mut t: Fe = 1;
            for i in (0..m).rev() {
                t = f.mul(t, h.get(i + 1, i));
                let c = f.mul(t, h.get(i, m));
                if c != 0 {
                    pm = poly::sub(f, &pm, &poly::scale(f, &ps[i], c));
                }
            }
            ps.push(pm);
        }
        ps.pop().unwrap()
    }

    /// `p(A)` by Horner's rule.
    pub fn eval_poly(&self, p: &[Fe], f: &Fq) -> Mat {
        let n = self.rows;
        let mut acc = Mat::zeros(n, n);
        for &c in p.iter().rev() {
            acc = acc.mul(self, f);
            for i in 0..n {
                let v = f.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }
}

/// A subspace of `F^n` kept as a matrix in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: Mat,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Subspace {
        Subspace { basis: Mat::zeros(0, n), pivots: vec![] }
    }

    pub fn full(n: usize) -> Subspace {
        Subspace { basis: Mat::identity(n), pivots: (0..n).collect() }
    }

    pub fn span(m: &Mat, f: &Fq) -> Subspace {
        let mut b = m.clone();
        let pivots = b.rref_in_place(f);
        Subspace { basis: b, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols
    }
    pub fn dim(&self) -> usize {
        self.basis.rows
    }
    pub fn basis(&self) -> &Mat {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` modulo the subspace (in place); zero iff `v` lies in it.
    pub fn reduce(&self, v: &mut [Fe], f: &Fq) {
        for (r, &c) in self.pivots.iter().enumerate() {
            let a = v[c];
            if a != 0 {
                axpy(f, v, f.neg(a), self.basis.row(r));
            }
        }
    }

    pub fn contains(&self, v: &[Fe], f: &Fq) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w, f);
        w.iter().all(|&x| x == 0)
    }

    /// Coordinates of a member `v` in the echelon basis.
    pub fn coordinates(&self, v: &[Fe]) -> Vec<Fe> {
        self.pivots.iter().map(|&c| v[c]).collect()
    }

    /// Adds a vector; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Fe], f: &Fq) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w, f);
        let Some(c) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[c]);
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for r in 0..self.basis.rows {
            let a = self.basis.get(r, c);
            if a != 0 {
                axpy(f, self.basis.row_mut(r), f.neg(a), &w);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < c);
        let mut rows = self.basis.row_vecs();
        rows.insert(pos, w);
        self.pivots.insert(pos, c);
        self.basis = Mat::from_rows(self.basis.cols, &rows);
        true
    }

    pub fn sum(&self, other: &Subspace, f: &Fq) -> Subspace {
        Subspace::span(&self.basis.vstack(&other.basis), f)
    }

    pub fn intersection(&self, other: &Subspace, f: &Fq) -> Subspace {
        // x A = y B  ⇔  (x, -y) [A; B] = 0
        let st = self.basis.vstack(&other.basis.scale(f.neg(1), f));
        let k = st.left_kernel(f);
        let coeffs = k.select_cols(&(0..self.dim()).collect::<Vec<_>>());
        Subspace::span(&coeffs.mul(&self.basis, f), f)
    }

    /// Standard basis indices complementing the pivots.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient_dim()).filter(|c| self.pivots.binary_search(c).is_err()).collect()
    }

    pub fn is_subspace_of(&self, other: &Subspace, f: &Fq) -> bool {
        (0..self.dim()).all(|r| other.contains(self.basis.row(r), f))
    }
}

/// Solves `x · A = b`.
pub fn solve_left(a: &Mat, b: &[Fe], f: &Fq) -> Option<Vec<Fe>> {
    let at = a.transpose();
    let mut aug = at.hstack(&Mat::from_data(b.len(), 1, b.to_vec()));
    let piv = aug.rref_in_place(f);
    if piv.last() == Some(&a.rows) {
        return None;
    }
    let mut x = vec![0; a.rows];
    for (r, &c) in piv.iter().enumerate() {
        x[c] = aug.get(r, a.rows);
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fq;
    use proptest::prelude::*;

    fn mat_strategy(n: usize, q: u8) -> impl Strategy<Value = Mat> {
        proptest::collection::vec(0..q, n * n).prop_map(move |d| Mat::from_data(n, n, d))
    }

    fn det(m: &Mat, f: &Fq) -> Fe {
        // Gaussian elimination oracle
        let n = m.rows();
        let mut a = m.clone();
        let mut d: Fe = 1;
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| a.get(r, c) != 0) else { return 0 };
            if p != c {
                for j in 0..n {
                    let t = a.get(p, j);
                    a.set(p, j, a.get(c, j));
                    a.set(c, j, t);
                }
                d = f.neg(d);
            }
            d = f.mul(d, a.get(c, c));
            let inv = f.inv(a.get(c, c));
            for r in c + 1..n {
                let u = f.mul(a.get(r, c), inv);
                for j in 0..n {
                    let v = f.sub(a.get(r, j), f.mul(u, a.get(c, j)));
                    a.set(r, j, v);
                }
            }
        }
        d
    }

    proptest! {
        #[test]
        fn char_poly_matches_determinant(m in mat_strategy(5, 4), x in 0u8..4) {
            let f = Fq::new(2, 2).unwrap();
            let cp = m.char_poly(&f);
            prop_assert_eq!(cp.len(), 6);
            let xm = Mat::scalar(5, x).sub(&m, &f);
            prop_assert_eq!(poly::eval(&f, &cp, x), det(&xm, &f));
            // Cayley–Hamilton
            prop_assert!(m.eval_poly(&cp, &f).is_zero());
        }

        #[test]
        fn kernels_and_inverse(m in mat_strategy(6, 3)) {
            let f = Fq::new(3, 1).unwrap();
            let k = m.left_kernel(&f);
            prop_assert_eq!(k.rows() + m.rank(&f), 6);
            prop_assert!(k.mul(&m, &f).is_zero());
            let rk = m.right_kernel(&f);
            prop_assert!(m.mul(&rk.transpose(), &f).is_zero());
            if let Some(inv) = m.inverse(&f) {
                prop_assert_eq!(inv.mul(&m, &f), Mat::identity(6));
            } else {
                prop_assert!(m.rank(&f) < 6);
            }
        }

        #[test]
        fn intersection_dimension(a in mat_strategy(4, 2), b in mat_strategy(4, 2)) {
            let f = Fq::new(2, 1).unwrap();
            let (u, v) = (Subspace::span(&a, &f), Subspace::span(&b, &f));
            let s = u.sum(&v, &f);
            let i = u.intersection(&v, &f);
            prop_assert_eq!(u.dim() + v.dim(), s.dim() + i.dim());
            prop_assert!(i.is_subspace_of(&u, &f) && i.is_subspace_of(&v, &f));
        }
    }

    #[test]
    fn solve_left_roundtrip() {
        let f = Fq::new(2, 2).unwrap();
        let a = Mat::from_rows(3, &[vec![1, 2, 0], vec![0, 1, 3], vec![1, 1, 1]]);
        let x = vec![2, 3, 1];
        let b = Mat::vec_mul(&x, &a, &f);
        let y = solve_left(&a, &b, &f).unwrap();
        assert_eq!(Mat::vec_mul(&y, &a, &f), b);
    }
}
