//! The K3 lattice `U^3 + (-E8)^2` as an explicit Gram matrix.

use crate::coefficients::Rat;

/// One orthogonal summand of the K3 lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeBlock {
    Hyperbolic,
    NegativeE8,
}

/// E8 Dynkin diagram: chain 0-1-2-3-4-5-6 with node 7 attached to node 4.
const E8_EDGES: [(usize, usize); 7] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];

impl LatticeBlock {
    pub fn rank(self) -> usize {
        match self {
            LatticeBlock::Hyperbolic => 2,
            LatticeBlock::NegativeE8 => 8,
        }
    }

    pub fn gram(self) -> Vec<Vec<i64>> {
        match self {
            LatticeBlock::Hyperbolic => vec![vec![0, 1], vec![1, 0]],
            LatticeBlock::NegativeE8 => {
                let mut g = vec![vec![0i64; 8]; 8];
                for (i, row) in g.iter_mut().enumerate() {
                    row[i] = -2;
                }
                for &(i, j) in &E8_EDGES {
                    g[i][j] = 1;
                    g[j][i] = 1;
                }
                g
            }
        }
    }
}

/// Even unimodular lattice of signature (3, 19).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K3LatticeForm {
    gram: Vec<Vec<i64>>,
    blocks: Vec<LatticeBlock>,
}

impl K3LatticeForm {
    pub const BLOCKS: [LatticeBlock; 5] = [
        LatticeBlock::Hyperbolic,
        LatticeBlock::Hyperbolic,
        LatticeBlock::Hyperbolic,
        LatticeBlock::NegativeE8,
        LatticeBlock::NegativeE8,
    ];

    pub fn standard() -> Self {
        let blocks = Self::BLOCKS.to_vec();
        let n: usize = blocks.iter().map(|b| b.rank()).sum();
        let mut gram = vec![vec![0i64; n]; n];
        let mut offset = 0;
        for b in &blocks {
            let g = b.gram();
            for (i, row) in g.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    gram[offset + i][offset + j] = v;
                }
            }
            offset += b.rank();
        }
        K3LatticeForm { gram, blocks }
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn blocks(&self) -> &[LatticeBlock] {
        &self.blocks
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn is_even(&self) -> bool {
        is_even(&self.gram)
    }

    pub fn determinant(&self) -> i128 {
        determinant(&self.gram)
    }

    pub fn signature(&self) -> (usize, usize) {
        signature(&self.gram)
    }
}

pub fn is_even(gram: &[Vec<i64>]) -> bool {
    gram.iter().enumerate().all(|(i, row)| row[i] % 2 == 0)
}

/// Exact integer determinant by fraction-free (Bareiss) elimination.
pub fn determinant(gram: &[Vec<i64>]) -> i128 {
    let n = gram.len();
    let mut m: Vec<Vec<i128>> = gram
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Inertia `(positive, negative)` from an exact congruence diagonalisation.
pub fn signature(gram: &[Vec<i64>]) -> (usize, usize) {
    let n = gram.len();
    let mut a: Vec<Vec<Rat>> = gram
        .iter()
        .map(|r| r.iter().map(|&x| Rat::integer(x)).collect())
        .collect();
    let (mut pos, mut neg) = (0, 0);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                swap_sym(&mut a, k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // e_k <- e_k + e_j makes the pivot 2 a_kj (diagonal entries vanish)
                add_sym(&mut a, k, j, &Rat::one());
            } else {
                continue;
            }
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = -(&a[i][k] / &pivot);
            add_sym(&mut a, i, k, &f);
        }
        if pivot.is_negative() {
            neg += 1;
        } else {
            pos += 1;
        }
    }
    (pos, neg)
}

fn swap_sym(a: &mut [Vec<Rat>], i: usize, j: usize) {
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Basis change `e_i <- e_i + f * e_j` applied to a symmetric matrix.
fn add_sym(a: &mut [Vec<Rat>], i: usize, j: usize, f: &Rat) {
    let n = a.len();
    for c in 0..n {
        let v = &a[j][c] * f;
        a[i][c] += &v;
    }
    for r in 0..n {
        let v = &a[r][j] * f;
        a[r][i] += &v;
    }
}
