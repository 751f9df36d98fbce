//! Dense vectors and elimination over the two-element field.

use std::fmt;

const WORD: usize = 64;

/// A fixed-length vector over F2, packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct F2Vec {
    len: usize,
    words: Vec<u64>,
}

impl F2Vec {
    pub fn zeros(len: usize) -> Self {
        F2Vec {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_support<I: IntoIterator<Item = usize>>(len: usize, support: I) -> Self {
        let mut v = Self::zeros(len);
        for i in support {
            v.flip(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_support(
            bits.len(),
            bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i),
        )
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &F2Vec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    /// Index of the highest set bit.
    pub fn leading(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * WORD + (WORD - 1 - w.leading_zeros() as usize))
    }

    /// Indices of set bits in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + t)
            })
        })
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn dot(&self, other: &F2Vec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn truncated(&self, len: usize) -> F2Vec {
        F2Vec::from_support(len, self.ones().take_while(|&i| i < len))
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }
}

impl fmt::Debug for F2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Vec[")?;
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        write!(f, "]")
    }
}

/// An incrementally built row-echelon basis. Every stored vector carries a tag vector
/// recording what it represents, so reducing an arbitrary vector also yields its
/// expression in terms of the tags.
#[derive(Clone, Debug)]
pub struct Echelon {
    rows: Vec<(F2Vec, F2Vec)>,
    pivot_of: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(len: usize) -> Self {
        Echelon {
            rows: Vec::new(),
            pivot_of: vec![None; len],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` by leading-bit elimination, XOR-ing in the tags of every row used.
    /// Stops as soon as the leading bit has no pivot.
    pub fn reduce(&self, v: &mut F2Vec, tag: &mut F2Vec) {
        while let Some(lead) = v.leading() {
            match self.pivot_of[lead] {
                Some(r) => {
                    v.xor_assign(&self.rows[r].0);
                    tag.xor_assign(&self.rows[r].1);
                }
                None => break,
            }
        }
    }

    /// Inserts a reduced nonzero vector. Returns false when `v` is zero.
    pub fn insert_reduced(&mut self, v: F2Vec, tag: F2Vec) -> bool {
        match v.leading() {
            Some(lead) => {
                debug_assert!(self.pivot_of[lead].is_none());
                self.pivot_of[lead] = Some(self.rows.len());
                self.rows.push((v, tag));
                true
            }
            None => false,
        }
    }

    /// Reduces `v` with tag and inserts the remainder when nonzero.
    pub fn insert(&mut self, mut v: F2Vec, mut tag: F2Vec) -> bool {
        self.reduce(&mut v, &mut tag);
        self.insert_reduced(v, tag)
    }
}

/// Basis of the kernel of the linear map whose images of the standard basis vectors are
/// `columns` (each of length `target_len`). Kernel vectors have length `columns.len()`.
pub fn kernel(columns: &[F2Vec], target_len: usize) -> Vec<F2Vec> {
    let n = columns.len();
    let mut ech = Echelon::new(target_len);
    let mut out = Vec::new();
    for (j, c) in columns.iter().enumerate() {
        let mut v = c.clone();
        let mut tag = F2Vec::unit(n, j);
        ech.reduce(&mut v, &mut tag);
        if v.is_zero() {
            out.push(tag);
        } else {
            ech.insert_reduced(v, tag);
        }
    }
    out
}

pub fn rank(vectors: &[F2Vec]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let mut ech = Echelon::new(first.len());
    for v in vectors {
        ech.insert(v.clone(), F2Vec::zeros(0));
    }
    ech.rank()
}

/// Solves `A x = b` for a square matrix `A` given by rows. Returns `None` when `A` is
/// singular.
pub fn solve_square(rows: &[F2Vec], b: &F2Vec) -> Option<F2Vec> {
    let n = rows.len();
    assert_eq!(b.len(), n);
    // Augmented elimination with the right-hand side carried as the tag.
    let mut m: Vec<(F2Vec, bool)> = rows
        .iter()
        .zip(0..)
        .map(|(r, i)| {
            assert_eq!(r.len(), n);
            (r.clone(), b.get(i))
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| m[r].0.get(col))?;
        m.swap(col, piv);
        let (prow, pb) = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && row.0.get(col) {
                row.0.xor_assign(&prow);
                row.1 ^= pb;
            }
        }
    }
    Some(F2Vec::from_bools(
        &m.iter().map(|r| r.1).collect::<Vec<_>>(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_ops() {
        let mut v = F2Vec::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(v.leading(), Some(129));
        v.flip(129);
        assert_eq!(v.leading(), Some(64));
        assert_eq!(v.count_ones(), 2);
        let w = F2Vec::from_support(130, [64, 3]);
        assert!(v.dot(&w));
        assert_eq!(v.truncated(10).ones().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn kernel_of_boundary_of_triangle() {
        // edges 01, 02, 12 mapped to vertex vectors
        let cols = vec![
            F2Vec::from_support(3, [0, 1]),
            F2Vec::from_support(3, [0, 2]),
            F2Vec::from_support(3, [1, 2]),
        ];
        let k = kernel(&cols, 3);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].ones().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(rank(&cols), 2);
    }

    #[test]
    fn solve_small_system() {
        let rows = vec![F2Vec::from_support(2, [0, 1]), F2Vec::from_support(2, [1])];
        let b = F2Vec::from_support(2, [0]);
        let x = solve_square(&rows, &b).unwrap();
        // x0 + x1 = 1, x1 = 0
        assert_eq!(x.ones().collect::<Vec<_>>(), vec![0]);
        let singular = vec![F2Vec::from_support(2, [0, 1]); 2];
        assert!(solve_square(&singular, &b).is_none());
    }
}
