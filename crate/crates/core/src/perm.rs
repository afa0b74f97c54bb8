use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}` stored in image notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(Vec<u16>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u16).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm(images.into_iter().map(|i| i as u16).collect()))
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut img: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                if a >= n || touched[a] {
                    return Err(Error::InvalidPermutation(format!("cycles {cycles:?}")));
                }
                touched[a] = true;
                img[a] = c[(k + 1) % c.len()];
            }
        }
        Perm::from_images(img)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i as usize).collect()
    }

    /// `self * other` acting on the left: `x -> self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Concatenates two permutations acting on disjoint point sets.
    pub fn disjoint_union(&self, other: &Perm) -> Perm {
        let shift = self.0.len() as u16;
        let mut v = self.0.clone();
        v.extend(other.0.iter().map(|&i| i + shift));
        Perm(v)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || self.0[s] as usize == s {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.0[s] as usize;
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.0[x] as usize;
            }
            out.push(c);
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.cycles();
        if cs.is_empty() {
            return write!(f, "()");
        }
        for c in cs {
            write!(f, "(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_is_left_action() {
        let a = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[vec![1, 2]]).unwrap();
        let ab = a.compose(&b);
        assert_eq!(ab.image(1), a.image(b.image(1)));
        assert!(ab.compose(&ab.inverse()).is_identity());
    }

    #[test]
    fn rejects_bad_images() {
        assert!(Perm::from_images(vec![0, 0]).is_err());
        assert!(Perm::from_cycles(3, &[vec![0, 5]]).is_err());
    }
}
