//! Linear systems over GF(2), solved by bit-packed Gaussian elimination.
//!
//! Rows are collected sparsely and turned into a dense matrix over the
//! variables that actually occur. Pivoting takes the lowest eligible column
//! and the first eligible row; free variables are set to zero in the returned
//! solution.

use std::collections::HashSet;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("variable {index} out of range for {num_variables} variables")]
    VariableOutOfRange { index: usize, num_variables: usize },
    #[error("assignment has {got} entries, system has {expected} variables")]
    LengthMismatch { expected: usize, got: usize },
}

/// One equation: the sum of the variables in `support` equals `rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gf2Row {
    support: Vec<usize>,
    rhs: bool,
}

impl Gf2Row {
    /// Sorted, duplicate-free variable indices.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn rhs(&self) -> bool {
        self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Gf2System {
    num_variables: usize,
    rows: Vec<Gf2Row>,
}

impl Gf2System {
    pub fn new(num_variables: usize) -> Self {
        Gf2System {
            num_variables,
            rows: Vec::new(),
        }
    }

    /// Appends a row. The support is a set: repeated indices count once.
    pub fn push_row(
        &mut self,
        support: impl IntoIterator<Item = usize>,
        rhs: bool,
    ) -> Result<(), Gf2Error> {
        let mut support: Vec<usize> = support.into_iter().collect();
        if let Some(&index) = support.iter().find(|&&i| i >= self.num_variables) {
            return Err(Gf2Error::VariableOutOfRange {
                index,
                num_variables: self.num_variables,
            });
        }
        support.sort_unstable();
        support.dedup();
        self.rows.push(Gf2Row { support, rhs });
        Ok(())
    }

    pub fn num_variables(&self) -> usize {
        self.num_variables
    }

    pub fn rows(&self) -> &[Gf2Row] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Sorted indices of variables appearing in at least one row.
    pub fn occurring_variables(&self) -> Vec<usize> {
        let mut seen = vec![false; self.num_variables];
        for row in &self.rows {
            for &v in &row.support {
                seen[v] = true;
            }
        }
        (0..self.num_variables).filter(|&v| seen[v]).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationResult {
    pub consistent: bool,
    pub rank: usize,
    /// Present iff `consistent`; free variables are zero.
    pub solution: Option<Vec<bool>>,
    /// Variables without a pivot, including those occurring in no row.
    pub free_variable_count: usize,
}

/// Row-major bit matrix with a fixed number of 64-bit words per row.
#[derive(Debug, Clone)]
pub(crate) struct BitMatrix {
    rows: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub(crate) fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64).max(1);
        BitMatrix {
            rows,
            stride,
            data: vec![0; rows * stride],
        }
    }

    #[inline]
    pub(crate) fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.stride + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn flip(&mut self, r: usize, c: usize) {
        self.data[r * self.stride + c / 64] ^= 1 << (c % 64);
    }

    #[inline]
    fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * self.stride);
        head[lo * self.stride..(lo + 1) * self.stride].swap_with_slice(&mut tail[..self.stride]);
    }

    /// Forward elimination to row echelon form, restricted to the first
    /// `pivot_cols` columns. Returns the pivot column of each of the first
    /// `rank` rows.
    pub(crate) fn echelonize(&mut self, pivot_cols: usize) -> Vec<usize> {
        let stride = self.stride;
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..pivot_cols {
            if rank == self.rows {
                break;
            }
            let w = col / 64;
            let bit = 1u64 << (col % 64);
            let Some(p) = (rank..self.rows).find(|&r| self.data[r * stride + w] & bit != 0) else {
                continue;
            };
            self.swap_rows(p, rank);
            let (head, tail) = self.data.split_at_mut((rank + 1) * stride);
            let pivot = &head[rank * stride + w..(rank + 1) * stride];
            for row in tail.chunks_exact_mut(stride) {
                if row[w] & bit != 0 {
                    xor_into(&mut row[w..], pivot);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        pivots
    }
}

#[inline]
fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

/// Decides consistency, computes the rank and extracts one solution.
pub fn eliminate(sys: &Gf2System) -> EliminationResult {
    let occurring = sys.occurring_variables();
    let mut compact = vec![usize::MAX; sys.num_variables];
    for (c, &v) in occurring.iter().enumerate() {
        compact[v] = c;
    }
    let cols = occurring.len();

    // identical rows add nothing; keep the first occurrence
    let mut seen = HashSet::with_capacity(sys.rows.len());
    let rows: Vec<&Gf2Row> = sys.rows.iter().filter(|r| seen.insert(*r)).collect();

    let rhs_col = cols;
    let mut m = BitMatrix::zeros(rows.len(), cols + 1);
    for (r, row) in rows.iter().enumerate() {
        for &v in &row.support {
            m.flip(r, compact[v]);
        }
        if row.rhs {
            m.flip(r, rhs_col);
        }
    }

    let pivots = m.echelonize(cols);
    let rank = pivots.len();
    let consistent = (rank..m.rows).all(|r| !m.get(r, rhs_col));
    let free_variable_count = sys.num_variables - rank;
    if !consistent {
        return EliminationResult {
            consistent,
            rank,
            solution: None,
            free_variable_count,
        };
    }

    // back-substitution; bit `rhs_col` of `x` stays zero
    let mut x = vec![0u64; m.stride];
    for (r, &p) in pivots.iter().enumerate().rev() {
        let row = m.row(r);
        let parity = row
            .iter()
            .zip(&x)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1;
        let value = m.get(r, rhs_col) ^ (parity == 1);
        if value {
            x[p / 64] |= 1 << (p % 64);
        }
    }
    let mut solution = vec![false; sys.num_variables];
    for (c, &v) in occurring.iter().enumerate() {
        solution[v] = x[c / 64] >> (c % 64) & 1 == 1;
    }
    EliminationResult {
        consistent,
        rank,
        solution: Some(solution),
        free_variable_count,
    }
}

/// True iff `assignment` satisfies every row.
pub fn evaluate(sys: &Gf2System, assignment: &[bool]) -> Result<bool, Gf2Error> {
    if assignment.len() != sys.num_variables {
        return Err(Gf2Error::LengthMismatch {
            expected: sys.num_variables,
            got: assignment.len(),
        });
    }
    Ok(sys.rows.iter().all(|row| {
        let sum = row.support.iter().filter(|&&v| assignment[v]).count() % 2 == 1;
        sum == row.rhs
    }))
}
