//! Permutations with signs, in deterministic enumeration order.

/// A permutation of `{0, .., k-1}` stored as its image vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(k: usize) -> Self {
        Perm((0..k).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    /// Build from 1-based images, validating that it is a permutation.
    pub fn from_one_based(images: &[usize]) -> crate::Result<Perm> {
        let k = images.len();
        let mut seen = vec![false; k];
        let mut v = Vec::with_capacity(k);
        for &im in images {
            if im == 0 || im > k || seen[im - 1] {
                return Err(crate::Error::Invalid(format!(
                    "not a permutation of 1..={k}: {images:?}"
                )));
            }
            seen[im - 1] = true;
            v.push(im - 1);
        }
        Ok(Perm(v))
    }

    /// Sign via inversion count.
    pub fn sign(&self) -> i64 {
        let mut inv = 0usize;
        for i in 0..self.0.len() {
            for j in (i + 1)..self.0.len() {
                if self.0[i] > self.0[j] {
                    inv += 1;
                }
            }
        }
        if inv.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All permutations of `{0,..,k-1}` in lexicographic order.
    pub fn all(k: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur = (0..k).collect::<Vec<_>>();
        loop {
            out.push(Perm(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..k).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}
