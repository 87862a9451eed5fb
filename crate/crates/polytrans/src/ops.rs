//! Structured linear operators: identities, flips, shifts, stride
//! permutations, twiddle diagonals, 2-sparse matrices, tensor products,
//! (complementary) direct sums, compositions, and column concatenations.
//!
//! Every operator supports a matrix-free `apply`, an independent structural
//! densification, a transpose, and an arithmetic cost under the flop model
//! 6 real flops per complex multiply, 2 per complex add. Multiplications by
//! exact 0, ±1 entries are never charged.

use crate::catalog::DenseMatrix;
use crate::error::{Error, Result};
use crate::trig;
use num_complex::Complex64;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Arithmetic cost of one matrix-free apply.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CostReport {
    pub complex_mults: u64,
    pub complex_adds: u64,
}

impl CostReport {
    pub const ZERO: CostReport = CostReport {
        complex_mults: 0,
        complex_adds: 0,
    };

    pub fn total_real_flops(&self) -> u64 {
        6 * self.complex_mults + 2 * self.complex_adds
    }
}

impl std::ops::Add for CostReport {
    type Output = CostReport;
    fn add(self, rhs: CostReport) -> CostReport {
        CostReport {
            complex_mults: self.complex_mults + rhs.complex_mults,
            complex_adds: self.complex_adds + rhs.complex_adds,
        }
    }
}

impl std::ops::AddAssign for CostReport {
    fn add_assign(&mut self, rhs: CostReport) {
        *self = *self + rhs;
    }
}

fn is_zero(z: Complex64) -> bool {
    z.re == 0.0 && z.im == 0.0
}

/// Entries equal to 0 or ±1 cost nothing to multiply by.
fn charged_mult(z: Complex64) -> bool {
    !(is_zero(z) || (z.im == 0.0 && (z.re == 1.0 || z.re == -1.0)))
}

/// Operator tree node. See the constructors on [`LinOp`] for the invariants.
#[derive(Clone, Debug)]
pub enum OpNode {
    Dense(DenseMatrix),
    Diagonal(Vec<Complex64>),
    Identity(usize),
    /// J_n: (k, n−1−k) entries are 1.
    FlipJ(usize),
    /// Z_n (circular shift; first row picks the last input) or its inverse.
    CircShiftZ { n: usize, inverse: bool },
    /// L^n_k: the permutation ik+j ↦ jm+i with m = n/k, 0 ≤ i < m, 0 ≤ j < k.
    StrideL { n: usize, stride: usize },
    /// K^n_k = (I_m ⊕ J_m ⊕ I_m ⊕ …) · L^n_k with k alternating blocks of size m = n/k.
    PermK { n: usize, stride: usize },
    /// T^n_k = diag(ω_n^{ij} | 0 ≤ i < k, 0 ≤ j < m), index i running faster.
    TwiddleT { n: usize, radix: usize },
    /// At most two (column, value) pairs per row.
    TwoSparse {
        rows: usize,
        cols: usize,
        row_entries: Vec<Vec<(usize, Complex64)>>,
    },
    Transpose(Box<LinOp>),
    DirectSum(Vec<LinOp>),
    /// Block anti-diagonal: the first summand sits top-right.
    ComplementaryDirectSum(Vec<LinOp>),
    Tensor(Box<LinOp>, Box<LinOp>),
    /// Matrix product, left to right: Compose([A,B,C]) = A·B·C.
    Compose(Vec<LinOp>),
    /// (A₀ | A₁ | … | A_{L−1}); children share the row count.
    ColumnConcat(Vec<LinOp>),
}

/// A structured operator plus a free-text provenance label.
#[derive(Clone, Debug)]
pub struct LinOp {
    pub node: OpNode,
    pub label: String,
}

impl LinOp {
    pub fn new(node: OpNode) -> Self {
        LinOp {
            node,
            label: String::new(),
        }
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn dense(m: DenseMatrix) -> Self {
        LinOp::new(OpNode::Dense(m))
    }

    pub fn diagonal(d: Vec<Complex64>) -> Self {
        LinOp::new(OpNode::Diagonal(d))
    }

    pub fn identity(n: usize) -> Self {
        LinOp::new(OpNode::Identity(n))
    }

    pub fn flip(n: usize) -> Self {
        LinOp::new(OpNode::FlipJ(n))
    }

    pub fn shift(n: usize, inverse: bool) -> Self {
        LinOp::new(OpNode::CircShiftZ { n, inverse })
    }

    pub fn stride(n: usize, k: usize) -> Self {
        assert!(k > 0 && n % k == 0, "stride permutation requires k | n");
        LinOp::new(OpNode::StrideL { n, stride: k })
    }

    pub fn perm_k(n: usize, k: usize) -> Self {
        assert!(k > 0 && n % k == 0, "K permutation requires k | n");
        LinOp::new(OpNode::PermK { n, stride: k })
    }

    pub fn twiddle(n: usize, k: usize) -> Self {
        assert!(k > 0 && n % k == 0, "twiddle matrix requires k | n");
        LinOp::new(OpNode::TwiddleT { n, radix: k })
    }

    pub fn two_sparse(
        rows: usize,
        cols: usize,
        row_entries: Vec<Vec<(usize, Complex64)>>,
    ) -> Self {
        assert_eq!(row_entries.len(), rows, "one entry list per row");
        for (r, entries) in row_entries.iter().enumerate() {
            assert!(entries.len() <= 2, "row {r} has more than two entries");
            for &(c, _) in entries {
                assert!(c < cols, "row {r} references column {c} of {cols}");
            }
        }
        LinOp::new(OpNode::TwoSparse {
            rows,
            cols,
            row_entries,
        })
    }

    pub fn direct_sum(blocks: Vec<LinOp>) -> Self {
        LinOp::new(OpNode::DirectSum(blocks))
    }

    pub fn comp_direct_sum(blocks: Vec<LinOp>) -> Self {
        LinOp::new(OpNode::ComplementaryDirectSum(blocks))
    }

    pub fn tensor(a: LinOp, b: LinOp) -> Self {
        LinOp::new(OpNode::Tensor(Box::new(a), Box::new(b)))
    }

    pub fn compose(factors: Vec<LinOp>) -> Self {
        assert!(!factors.is_empty(), "composition of nothing");
        LinOp::new(OpNode::Compose(factors))
    }

    pub fn column_concat(blocks: Vec<LinOp>) -> Self {
        assert!(!blocks.is_empty(), "column concatenation of nothing");
        let r = blocks[0].rows();
        assert!(
            blocks.iter().all(|b| b.rows() == r),
            "column concatenation blocks must share the row count"
        );
        LinOp::new(OpNode::ColumnConcat(blocks))
    }

    pub fn rows(&self) -> usize {
        match &self.node {
            OpNode::Dense(m) => m.rows(),
            OpNode::Diagonal(d) => d.len(),
            OpNode::Identity(n)
            | OpNode::FlipJ(n)
            | OpNode::CircShiftZ { n, .. }
            | OpNode::StrideL { n, .. }
            | OpNode::PermK { n, .. }
            | OpNode::TwiddleT { n, .. } => *n,
            OpNode::TwoSparse { rows, .. } => *rows,
            OpNode::Transpose(inner) => inner.cols(),
            OpNode::DirectSum(bs) | OpNode::ComplementaryDirectSum(bs) => {
                bs.iter().map(|b| b.rows()).sum()
            }
            OpNode::Tensor(a, b) => a.rows() * b.rows(),
            OpNode::Compose(fs) => fs[0].rows(),
            OpNode::ColumnConcat(bs) => bs[0].rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match &self.node {
            OpNode::Dense(m) => m.cols(),
            OpNode::Diagonal(d) => d.len(),
            OpNode::Identity(n)
            | OpNode::FlipJ(n)
            | OpNode::CircShiftZ { n, .. }
            | OpNode::StrideL { n, .. }
            | OpNode::PermK { n, .. }
            | OpNode::TwiddleT { n, .. } => *n,
            OpNode::TwoSparse { cols, .. } => *cols,
            OpNode::Transpose(inner) => inner.rows(),
            OpNode::DirectSum(bs) | OpNode::ComplementaryDirectSum(bs) => {
                bs.iter().map(|b| b.cols()).sum()
            }
            OpNode::Tensor(a, b) => a.cols() * b.cols(),
            OpNode::Compose(fs) => fs.last().unwrap().cols(),
            OpNode::ColumnConcat(bs) => bs.iter().map(|b| b.cols()).sum(),
        }
    }

    /// Short structural name, used when a factor carries no label.
    pub fn kind_name(&self) -> &'static str {
        match &self.node {
            OpNode::Dense(_) => "dense",
            OpNode::Diagonal(_) => "diagonal",
            OpNode::Identity(_) => "identity",
            OpNode::FlipJ(_) => "flip",
            OpNode::CircShiftZ { .. } => "circular shift",
            OpNode::StrideL { .. } => "stride permutation",
            OpNode::PermK { .. } => "K permutation",
            OpNode::TwiddleT { .. } => "twiddle diagonal",
            OpNode::TwoSparse { .. } => "2-sparse",
            OpNode::Transpose(_) => "transpose",
            OpNode::DirectSum(_) => "direct sum",
            OpNode::ComplementaryDirectSum(_) => "complementary direct sum",
            OpNode::Tensor(..) => "tensor product",
            OpNode::Compose(_) => "composition",
            OpNode::ColumnConcat(_) => "column concatenation",
        }
    }

    /// Matrix-free y = A·x.
    pub fn apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.cols() {
            return Err(Error::SizeMismatch {
                context: format!("apply {}", self.kind_name()),
                expected: self.cols(),
                got: x.len(),
            });
        }
        self.apply_unchecked(x)
    }

    fn apply_unchecked(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        let zero = Complex64::new(0.0, 0.0);
        Ok(match &self.node {
            OpNode::Dense(m) => m.apply(x)?,
            OpNode::Diagonal(d) => d.iter().zip(x).map(|(a, b)| a * b).collect(),
            OpNode::Identity(_) => x.to_vec(),
            OpNode::FlipJ(_) => x.iter().rev().copied().collect(),
            OpNode::CircShiftZ { n, inverse } => {
                let n = *n;
                (0..n)
                    .map(|i| {
                        if *inverse {
                            x[(i + 1) % n]
                        } else {
                            x[(i + n - 1) % n]
                        }
                    })
                    .collect()
            }
            OpNode::StrideL { n, stride } => {
                let m = n / stride;
                (0..*n).map(|b| x[(b % m) * stride + b / m]).collect()
            }
            OpNode::PermK { n, stride } => {
                let m = n / stride;
                (0..*n)
                    .map(|b| {
                        let (t, s) = (b / m, b % m);
                        let s = if t % 2 == 1 { m - 1 - s } else { s };
                        x[s * stride + t]
                    })
                    .collect()
            }
            OpNode::TwiddleT { n, radix } => (0..*n)
                .map(|p| trig::unit_root(*n as i64, ((p % radix) * (p / radix)) as i64) * x[p])
                .collect(),
            OpNode::TwoSparse { row_entries, .. } => row_entries
                .iter()
                .map(|entries| entries.iter().map(|&(c, v)| v * x[c]).fold(zero, |a, b| a + b))
                .collect(),
            OpNode::Transpose(inner) => inner.apply_transposed(x)?,
            OpNode::DirectSum(blocks) => {
                let mut out = Vec::with_capacity(self.rows());
                let mut off = 0;
                for b in blocks {
                    out.extend(b.apply(&x[off..off + b.cols()])?);
                    off += b.cols();
                }
                out
            }
            OpNode::ComplementaryDirectSum(blocks) => {
                let total_cols = self.cols();
                let mut out = Vec::with_capacity(self.rows());
                let mut col_end = total_cols;
                for b in blocks {
                    out.extend(b.apply(&x[col_end - b.cols()..col_end])?);
                    col_end -= b.cols();
                }
                out
            }
            OpNode::Tensor(a, b) => {
                return tensor_apply(a, b, x, false);
            }
            OpNode::Compose(factors) => {
                let mut v = x.to_vec();
                for f in factors.iter().rev() {
                    v = f.apply(&v)?;
                }
                v
            }
            OpNode::ColumnConcat(blocks) => {
                let mut acc = vec![zero; self.rows()];
                let mut off = 0;
                for b in blocks {
                    let part = b.apply(&x[off..off + b.cols()])?;
                    for (a, p) in acc.iter_mut().zip(part) {
                        *a += p;
                    }
                    off += b.cols();
                }
                acc
            }
        })
    }

    /// y = Aᵀ·x (plain transpose, no conjugation).
    fn apply_transposed(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.rows() {
            return Err(Error::SizeMismatch {
                context: format!("transposed apply {}", self.kind_name()),
                expected: self.rows(),
                got: x.len(),
            });
        }
        let zero = Complex64::new(0.0, 0.0);
        Ok(match &self.node {
            OpNode::Dense(m) => {
                let mut out = vec![zero; m.cols()];
                for r in 0..m.rows() {
                    let xr = x[r];
                    if is_zero(xr) {
                        continue;
                    }
                    for (c, v) in m.row(r).iter().enumerate() {
                        out[c] += v * xr;
                    }
                }
                out
            }
            OpNode::Diagonal(d) => d.iter().zip(x).map(|(a, b)| a * b).collect(),
            OpNode::Identity(_) => x.to_vec(),
            OpNode::FlipJ(_) => x.iter().rev().copied().collect(),
            OpNode::CircShiftZ { n, inverse } => LinOp::shift(*n, !inverse).apply(x)?,
            OpNode::StrideL { n, stride } => LinOp::stride(*n, n / stride).apply(x)?,
            OpNode::PermK { n, stride } => {
                // Kᵀ = Lᵀ · (I ⊕ J ⊕ …): flip the odd blocks, then inverse-stride.
                let m = n / stride;
                let mut z = x.to_vec();
                for t in (1..*stride).step_by(2) {
                    z[t * m..(t + 1) * m].reverse();
                }
                LinOp::stride(*n, m).apply(&z)?
            }
            OpNode::TwiddleT { .. } => self.apply_unchecked(x)?,
            OpNode::TwoSparse {
                cols, row_entries, ..
            } => {
                let mut out = vec![zero; *cols];
                for (r, entries) in row_entries.iter().enumerate() {
                    for &(c, v) in entries {
                        out[c] += v * x[r];
                    }
                }
                out
            }
            OpNode::Transpose(inner) => inner.apply(x)?,
            OpNode::DirectSum(blocks) => {
                let mut out = Vec::with_capacity(self.cols());
                let mut off = 0;
                for b in blocks {
                    out.extend(b.apply_transposed(&x[off..off + b.rows()])?);
                    off += b.rows();
                }
                out
            }
            OpNode::ComplementaryDirectSum(blocks) => {
                // Block j reads input rows at offset j and writes its column
                // segment, which is laid out from the right.
                let mut out = vec![zero; self.cols()];
                let mut row_off = 0;
                let mut col_end = self.cols();
                for b in blocks {
                    let seg = b.apply_transposed(&x[row_off..row_off + b.rows()])?;
                    out[col_end - b.cols()..col_end].copy_from_slice(&seg);
                    row_off += b.rows();
                    col_end -= b.cols();
                }
                out
            }
            OpNode::Tensor(a, b) => {
                return tensor_apply(a, b, x, true);
            }
            OpNode::Compose(factors) => {
                let mut v = x.to_vec();
                for f in factors.iter() {
                    v = f.apply_transposed(&v)?;
                }
                v
            }
            OpNode::ColumnConcat(blocks) => {
                let mut out = Vec::with_capacity(self.cols());
                for b in blocks {
                    out.extend(b.apply_transposed(x)?);
                }
                out
            }
        })
    }

    /// Apply to a batch of vectors; grid-style verification shares the
    /// read-only operator tree across threads.
    pub fn apply_batch(&self, xs: &[Vec<Complex64>]) -> Result<Vec<Vec<Complex64>>> {
        #[cfg(feature = "parallel")]
        {
            if xs.len() > 1 {
                return xs.par_iter().map(|x| self.apply(x)).collect();
            }
        }
        self.apply_batch_serial(xs)
    }

    /// Sequential reference path for [`LinOp::apply_batch`].
    pub fn apply_batch_serial(&self, xs: &[Vec<Complex64>]) -> Result<Vec<Vec<Complex64>>> {
        xs.iter().map(|x| self.apply(x)).collect()
    }

    /// Structural densification. Built node-by-node (Kronecker products,
    /// block assembly, matrix products), independent of the matrix-free
    /// apply path, so the two can oracle-check each other.
    ///
    /// Panics if a composition chains incompatible dimensions; that is a
    /// construction bug, not an input error.
    pub fn to_dense(&self) -> DenseMatrix {
        let one = Complex64::new(1.0, 0.0);
        match &self.node {
            OpNode::Dense(m) => m.clone(),
            OpNode::Diagonal(d) => {
                let mut m = DenseMatrix::zeros(d.len(), d.len());
                for (i, v) in d.iter().enumerate() {
                    m[(i, i)] = *v;
                }
                m
            }
            OpNode::Identity(n) => DenseMatrix::identity(*n),
            OpNode::FlipJ(n) => {
                let mut m = DenseMatrix::zeros(*n, *n);
                for k in 0..*n {
                    m[(k, n - 1 - k)] = one;
                }
                m
            }
            OpNode::CircShiftZ { n, inverse } => {
                let mut m = DenseMatrix::zeros(*n, *n);
                for j in 0..*n {
                    let i = if *inverse { (j + n - 1) % n } else { (j + 1) % n };
                    m[(i, j)] = one;
                }
                m
            }
            OpNode::StrideL { n, stride } => {
                // Densify through the closed-form membership test
                // j = ⌊i·k·(n+1)/n⌋ mod n, which provably coincides with the
                // index map used by apply; keeping the two routes distinct
                // lets the apply-vs-dense oracle reconcile them.
                let (n, k) = (*n, *stride);
                let mut m = DenseMatrix::zeros(n, n);
                for i in 0..n {
                    let j = ((i as u64 * k as u64 * (n as u64 + 1)) / n as u64) % n as u64;
                    m[(i, j as usize)] = one;
                }
                m
            }
            OpNode::PermK { n, stride } => {
                let m_blk = n / stride;
                let mut m = DenseMatrix::zeros(*n, *n);
                for b in 0..*n {
                    let (t, s) = (b / m_blk, b % m_blk);
                    let s = if t % 2 == 1 { m_blk - 1 - s } else { s };
                    m[(b, s * stride + t)] = one;
                }
                m
            }
            OpNode::TwiddleT { n, radix } => {
                let mut m = DenseMatrix::zeros(*n, *n);
                for p in 0..*n {
                    m[(p, p)] = trig::unit_root(*n as i64, ((p % radix) * (p / radix)) as i64);
                }
                m
            }
            OpNode::TwoSparse {
                rows,
                cols,
                row_entries,
            } => {
                let mut m = DenseMatrix::zeros(*rows, *cols);
                for (r, entries) in row_entries.iter().enumerate() {
                    for &(c, v) in entries {
                        m[(r, c)] += v;
                    }
                }
                m
            }
            OpNode::Transpose(inner) => inner.to_dense().transpose(),
            OpNode::DirectSum(blocks) => {
                let mut m = DenseMatrix::zeros(self.rows(), self.cols());
                let (mut ro, mut co) = (0, 0);
                for b in blocks {
                    let d = b.to_dense();
                    for r in 0..d.rows() {
                        for c in 0..d.cols() {
                            m[(ro + r, co + c)] = d[(r, c)];
                        }
                    }
                    ro += d.rows();
                    co += d.cols();
                }
                m
            }
            OpNode::ComplementaryDirectSum(blocks) => {
                let mut m = DenseMatrix::zeros(self.rows(), self.cols());
                let mut ro = 0;
                let mut col_end = self.cols();
                for b in blocks {
                    let d = b.to_dense();
                    for r in 0..d.rows() {
                        for c in 0..d.cols() {
                            m[(ro + r, col_end - d.cols() + c)] = d[(r, c)];
                        }
                    }
                    ro += d.rows();
                    col_end -= d.cols();
                }
                m
            }
            OpNode::Tensor(a, b) => a.to_dense().kronecker(&b.to_dense()),
            OpNode::Compose(factors) => {
                let mut acc = factors[0].to_dense();
                for f in &factors[1..] {
                    acc = acc
                        .mul(&f.to_dense())
                        .expect("composition chains incompatible dimensions");
                }
                acc
            }
            OpNode::ColumnConcat(blocks) => {
                let mut m = DenseMatrix::zeros(self.rows(), self.cols());
                let mut co = 0;
                for b in blocks {
                    let d = b.to_dense();
                    for r in 0..d.rows() {
                        for c in 0..d.cols() {
                            m[(r, co + c)] = d[(r, c)];
                        }
                    }
                    co += d.cols();
                }
                m
            }
        }
    }

    /// Cost of one matrix-free apply. Permutations and identities are free;
    /// diagonals charge one multiply per entry not equal to 0, ±1; a dense
    /// r×c block charges its non-(0,±1) entries plus r·(c−1) adds.
    pub fn cost(&self) -> CostReport {
        match &self.node {
            OpNode::Dense(m) => {
                let mults = m.entries().iter().filter(|&&z| charged_mult(z)).count() as u64;
                let adds = (m.rows() as u64) * (m.cols().saturating_sub(1) as u64);
                CostReport {
                    complex_mults: mults,
                    complex_adds: adds,
                }
            }
            OpNode::Diagonal(d) => CostReport {
                complex_mults: d.iter().filter(|&&z| charged_mult(z)).count() as u64,
                complex_adds: 0,
            },
            OpNode::Identity(_)
            | OpNode::FlipJ(_)
            | OpNode::CircShiftZ { .. }
            | OpNode::StrideL { .. }
            | OpNode::PermK { .. } => CostReport::ZERO,
            OpNode::TwiddleT { n, radix } => {
                let mults = (0..*n)
                    .filter(|p| {
                        charged_mult(trig::unit_root(
                            *n as i64,
                            ((p % radix) * (p / radix)) as i64,
                        ))
                    })
                    .count() as u64;
                CostReport {
                    complex_mults: mults,
                    complex_adds: 0,
                }
            }
            OpNode::TwoSparse { row_entries, .. } => {
                let mut mults = 0;
                let mut adds = 0;
                for entries in row_entries {
                    mults += entries.iter().filter(|&&(_, v)| charged_mult(v)).count() as u64;
                    adds += (entries.len().saturating_sub(1)) as u64;
                }
                CostReport {
                    complex_mults: mults,
                    complex_adds: adds,
                }
            }
            OpNode::Transpose(inner) => inner.cost(),
            OpNode::DirectSum(blocks) | OpNode::ComplementaryDirectSum(blocks) => blocks
                .iter()
                .fold(CostReport::ZERO, |acc, b| acc + b.cost()),
            OpNode::Tensor(a, b) => {
                let ca = a.cost();
                let cb = b.cost();
                CostReport {
                    complex_mults: a.cols() as u64 * cb.complex_mults
                        + b.rows() as u64 * ca.complex_mults,
                    complex_adds: a.cols() as u64 * cb.complex_adds
                        + b.rows() as u64 * ca.complex_adds,
                }
            }
            OpNode::Compose(factors) => factors
                .iter()
                .fold(CostReport::ZERO, |acc, f| acc + f.cost()),
            OpNode::ColumnConcat(blocks) => {
                let mut acc = blocks
                    .iter()
                    .fold(CostReport::ZERO, |acc, b| acc + b.cost());
                acc.complex_adds += (blocks.len() as u64 - 1) * self.rows() as u64;
                acc
            }
        }
    }

    /// Structural transpose where a rewrite exists (dense, diagonal, stride,
    /// shift, tensor, direct sum, composition); otherwise a lazy
    /// `Transpose` wrapper whose dense form is still the exact transpose.
    pub fn transposed(&self) -> LinOp {
        let node = match &self.node {
            OpNode::Dense(m) => OpNode::Dense(m.transpose()),
            OpNode::Diagonal(d) => OpNode::Diagonal(d.clone()),
            OpNode::Identity(n) => OpNode::Identity(*n),
            OpNode::FlipJ(n) => OpNode::FlipJ(*n),
            OpNode::CircShiftZ { n, inverse } => OpNode::CircShiftZ {
                n: *n,
                inverse: !inverse,
            },
            OpNode::StrideL { n, stride } => OpNode::StrideL {
                n: *n,
                stride: n / stride,
            },
            OpNode::TwiddleT { n, radix } => OpNode::TwiddleT {
                n: *n,
                radix: *radix,
            },
            OpNode::Transpose(inner) => inner.node.clone(),
            OpNode::DirectSum(blocks) => {
                OpNode::DirectSum(blocks.iter().map(|b| b.transposed()).collect())
            }
            OpNode::Tensor(a, b) => {
                OpNode::Tensor(Box::new(a.transposed()), Box::new(b.transposed()))
            }
            OpNode::Compose(factors) => {
                OpNode::Compose(factors.iter().rev().map(|f| f.transposed()).collect())
            }
            OpNode::PermK { .. }
            | OpNode::TwoSparse { .. }
            | OpNode::ComplementaryDirectSum(_)
            | OpNode::ColumnConcat(_) => OpNode::Transpose(Box::new(self.clone())),
        };
        LinOp {
            node,
            label: self.label.clone(),
        }
    }
}

/// (A ⊗ B)·x in two stages: B against contiguous segments, then A across
/// the resulting rows. `transposed` evaluates (A ⊗ B)ᵀ = Aᵀ ⊗ Bᵀ instead.
fn tensor_apply(a: &LinOp, b: &LinOp, x: &[Complex64], transposed: bool) -> Result<Vec<Complex64>> {
    let zero = Complex64::new(0.0, 0.0);
    let (a_rows, a_cols) = if transposed {
        (a.cols(), a.rows())
    } else {
        (a.rows(), a.cols())
    };
    let (b_rows, b_cols) = if transposed {
        (b.cols(), b.rows())
    } else {
        (b.rows(), b.cols())
    };
    let out_len = a_rows * b_rows;
    if a_cols == 0 || b_cols == 0 {
        return Ok(vec![zero; out_len]);
    }
    // stage 1: apply B to each of the a_cols contiguous segments
    let mut mid = vec![zero; b_rows * a_cols];
    for ja in 0..a_cols {
        let seg = &x[ja * b_cols..(ja + 1) * b_cols];
        let applied = if transposed {
            b.apply_transposed(seg)?
        } else {
            b.apply(seg)?
        };
        for (ib, v) in applied.into_iter().enumerate() {
            mid[ib * a_cols + ja] = v;
        }
    }
    // stage 2: apply A across each of the b_rows interleaved rows
    let mut out = vec![zero; out_len];
    for ib in 0..b_rows {
        let row = &mid[ib * a_cols..(ib + 1) * a_cols];
        let applied = if transposed {
            a.apply_transposed(row)?
        } else {
            a.apply(row)?
        };
        for (ia, v) in applied.into_iter().enumerate() {
            out[ia * b_rows + ib] = v;
        }
    }
    Ok(out)
}

/// An ordered factor list whose left-to-right product approximates a target
/// matrix, with per-factor provenance labels.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub target: DenseMatrix,
    pub factors: Vec<LinOp>,
    pub warnings: Vec<String>,
}

impl Factorization {
    pub fn new(target: DenseMatrix, factors: Vec<LinOp>) -> Self {
        Factorization {
            target,
            factors,
            warnings: Vec::new(),
        }
    }

    /// dense(factors[0]) · … · dense(factors[last]).
    pub fn product_dense(&self) -> DenseMatrix {
        let mut acc = self.factors[0].to_dense();
        for f in &self.factors[1..] {
            acc = acc
                .mul(&f.to_dense())
                .expect("factor dimensions chain incorrectly");
        }
        acc
    }

    /// Relative Frobenius distance between the factor product and the target.
    pub fn reconstruction_error(&self) -> f64 {
        self.product_dense().rel_frobenius_error(&self.target)
    }

    /// Matrix-free apply of the whole factor chain (rightmost factor first).
    pub fn apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut v = x.to_vec();
        for f in self.factors.iter().rev() {
            v = f.apply(&v)?;
        }
        Ok(v)
    }

    pub fn cost(&self) -> CostReport {
        self.factors
            .iter()
            .fold(CostReport::ZERO, |acc, f| acc + f.cost())
    }
}
