//! Permutations of `0..n` as explicit image tables.

use crate::abelian::lcm;
use crate::error::{ForgeError, Result};

/// A permutation of `0..n`, acting on the left: `p.apply(x)` is `p(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    image: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            image: (0..n).collect(),
        }
    }

    pub fn from_images(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for (x, &y) in image.iter().enumerate() {
            if y >= n {
                return Err(ForgeError::Structural(format!(
                    "image {y} of {x} is out of range 0..{n}"
                )));
            }
            if seen[y] {
                return Err(ForgeError::Structural(format!(
                    "value {y} appears twice; not a bijection"
                )));
            }
            seen[y] = true;
        }
        Ok(Perm { image })
    }

    /// Caller guarantees `image` is a bijection of `0..image.len()`.
    pub(crate) fn from_images_unchecked(image: Vec<usize>) -> Self {
        debug_assert!(Perm::from_images(image.clone()).is_ok());
        Perm { image }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        Perm { image: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len(), "composing permutations of different sizes");
        Perm {
            image: other.image.iter().map(|&y| self.image[y]).collect(),
        }
    }

    /// `self^e` for any integer `e`; negative exponents use the inverse.
    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Perm::identity(self.len());
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&sq);
            }
            sq = sq.compose(&sq);
            k >>= 1;
        }
        acc
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.image[x];
                len += 1;
            }
            out.push(len);
        }
        out
    }

    /// Least `m >= 1` with `self^m = id`.
    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, l| lcm(acc, l as u64))
    }
}
