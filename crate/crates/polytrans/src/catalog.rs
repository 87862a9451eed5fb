//! Dense construction of the named trigonometric transforms, plus the general
//! (scaled) polynomial-transform builder: the matrix whose (k,ℓ) entry is the
//! ℓ-th basis polynomial evaluated at the k-th sample point.

use crate::cheb::{cheb_eval, ChebKind, MonomialPoly};
use crate::error::{Error, Result};
use crate::trig;
use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Below this many rows, parallel dispatch costs more than it saves.
#[cfg(feature = "parallel")]
const PAR_MIN_ROWS: usize = 128;

/// Row-major dense complex matrix. 0×0 matrices are legal and act as empty
/// summands in direct sums.
#[derive(Clone, Debug)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = DenseMatrix::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        DenseMatrix { rows, cols, entries }
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::SizeMismatch {
                context: "dense matrix entries".into(),
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(DenseMatrix { rows, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    fn check_input(&self, len: usize, context: &str) -> Result<()> {
        if len != self.cols {
            return Err(Error::SizeMismatch {
                context: context.into(),
                expected: self.cols,
                got: len,
            });
        }
        Ok(())
    }

    fn apply_row(&self, r: usize, x: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, b) in self.row(r).iter().zip(x) {
            acc += a * b;
        }
        acc
    }

    /// Matrix-vector product. This is the O(n²) oracle every factorization
    /// is checked against.
    pub fn apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_input(x.len(), "matrix-vector product")?;
        #[cfg(feature = "parallel")]
        if self.rows >= PAR_MIN_ROWS {
            return Ok((0..self.rows)
                .into_par_iter()
                .map(|r| self.apply_row(r, x))
                .collect());
        }
        self.apply_serial(x)
    }

    /// Sequential reference path for [`DenseMatrix::apply`].
    pub fn apply_serial(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_input(x.len(), "matrix-vector product")?;
        Ok((0..self.rows).map(|r| self.apply_row(r, x)).collect())
    }

    fn mul_row(&self, rhs: &DenseMatrix, r: usize) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); rhs.cols];
        for k in 0..self.cols {
            let a = self.entries[r * self.cols + k];
            if a.re == 0.0 && a.im == 0.0 {
                continue;
            }
            for c in 0..rhs.cols {
                out[c] += a * rhs.entries[k * rhs.cols + c];
            }
        }
        out
    }

    pub fn mul(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::SizeMismatch {
                context: "matrix product".into(),
                expected: self.cols,
                got: rhs.rows,
            });
        }
        #[cfg(feature = "parallel")]
        if self.rows >= PAR_MIN_ROWS {
            let entries: Vec<Complex64> = (0..self.rows)
                .into_par_iter()
                .flat_map_iter(|r| self.mul_row(rhs, r))
                .collect();
            return Ok(DenseMatrix {
                rows: self.rows,
                cols: rhs.cols,
                entries,
            });
        }
        self.mul_serial(rhs)
    }

    /// Sequential reference path for [`DenseMatrix::mul`].
    pub fn mul_serial(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::SizeMismatch {
                context: "matrix product".into(),
                expected: self.cols,
                got: rhs.rows,
            });
        }
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for r in 0..self.rows {
            entries.extend(self.mul_row(rhs, r));
        }
        Ok(DenseMatrix {
            rows: self.rows,
            cols: rhs.cols,
            entries,
        })
    }

    pub fn transpose(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn conj_transpose(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn kronecker(&self, rhs: &DenseMatrix) -> DenseMatrix {
        DenseMatrix::from_fn(self.rows * rhs.rows, self.cols * rhs.cols, |r, c| {
            self[(r / rhs.rows, c / rhs.cols)] * rhs[(r % rhs.rows, c % rhs.cols)]
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ‖self − reference‖_F / ‖reference‖_F (absolute when the reference is zero).
    pub fn rel_frobenius_error(&self, reference: &DenseMatrix) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (reference.rows, reference.cols),
            "rel_frobenius_error: shape mismatch"
        );
        let diff: f64 = self
            .entries
            .iter()
            .zip(&reference.entries)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let denom = reference.frobenius_norm();
        if denom == 0.0 {
            diff
        } else {
            diff / denom
        }
    }

    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_nonzeros_per_row(&self, tol: f64) -> usize {
        (0..self.rows)
            .map(|r| self.row(r).iter().filter(|z| z.norm() > tol).count())
            .max()
            .unwrap_or(0)
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[r * self.cols + c]
    }
}

/// One basis polynomial: either explicit monomial coefficients or a
/// (Chebyshev kind, degree) pair.
#[derive(Clone, Debug)]
pub enum BasisPoly {
    Monomial(MonomialPoly),
    Chebyshev(ChebKind, i64),
}

impl BasisPoly {
    pub fn eval(&self, x: Complex64) -> Complex64 {
        match self {
            BasisPoly::Monomial(p) => p.eval(x),
            BasisPoly::Chebyshev(kind, n) => cheb_eval(*kind, *n, x),
        }
    }

    pub fn is_const_one(&self) -> bool {
        match self {
            BasisPoly::Monomial(p) => p.is_one(),
            BasisPoly::Chebyshev(_, n) => *n == 0,
        }
    }
}

/// An ordered list of basis polynomials p₀(x)…p_{n−1}(x).
#[derive(Clone, Debug)]
pub struct PolyBasis {
    polys: Vec<BasisPoly>,
}

impl PolyBasis {
    pub fn new(polys: Vec<BasisPoly>) -> Self {
        PolyBasis { polys }
    }

    /// {1, x, …, x^{n−1}}
    pub fn monomials(n: usize) -> Self {
        PolyBasis {
            polys: (0..n)
                .map(|d| BasisPoly::Monomial(MonomialPoly::monomial(d)))
                .collect(),
        }
    }

    /// {C₀, C₁, …, C_{n−1}} of the given kind.
    pub fn chebyshev(kind: ChebKind, n: usize) -> Self {
        PolyBasis {
            polys: (0..n)
                .map(|d| BasisPoly::Chebyshev(kind, d as i64))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn polys(&self) -> &[BasisPoly] {
        &self.polys
    }

    pub fn eval(&self, index: usize, x: Complex64) -> Complex64 {
        self.polys[index].eval(x)
    }
}

/// Pairwise-distinct complex sample points.
///
/// Distinctness gate: min_{k≠m} |α_k − α_m| must exceed 1e−12·max|α_k|.
#[derive(Clone, Debug)]
pub struct SamplePoints {
    points: Vec<Complex64>,
}

impl SamplePoints {
    pub fn new(points: Vec<Complex64>) -> Result<Self> {
        let max_abs = points.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if (points[i] - points[j]).norm() <= 1e-12 * max_abs {
                    return Err(Error::DuplicateSamplePoints { i, j });
                }
            }
        }
        Ok(SamplePoints { points })
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Per-row scale choices c_k; all entries must be nonzero.
#[derive(Clone, Debug)]
pub struct ScaleVector {
    scales: Vec<Complex64>,
}

impl ScaleVector {
    pub fn new(scales: Vec<Complex64>) -> Result<Self> {
        for (index, s) in scales.iter().enumerate() {
            if s.norm() == 0.0 {
                return Err(Error::ZeroScale { index });
            }
        }
        Ok(ScaleVector { scales })
    }

    pub fn ones(n: usize) -> Self {
        ScaleVector {
            scales: vec![Complex64::new(1.0, 0.0); n],
        }
    }

    pub fn scales(&self) -> &[Complex64] {
        &self.scales
    }

    pub fn len(&self) -> usize {
        self.scales.len()
    }
}

/// The matrix [p_ℓ(α_k)], rows indexed by sample points, columns by basis
/// polynomials.
pub fn polynomial_transform(basis: &PolyBasis, alpha: &SamplePoints) -> Result<DenseMatrix> {
    if basis.len() != alpha.len() {
        return Err(Error::SizeMismatch {
            context: "polynomial transform basis vs sample points".into(),
            expected: alpha.len(),
            got: basis.len(),
        });
    }
    let pts = alpha.points();
    Ok(DenseMatrix::from_fn(alpha.len(), basis.len(), |k, l| {
        basis.eval(l, pts[k])
    }))
}

/// diag(1/c₀,…,1/c_{n−1}) · [p_ℓ(α_k)].
pub fn scaled_polynomial_transform(
    basis: &PolyBasis,
    alpha: &SamplePoints,
    scale: &ScaleVector,
) -> Result<DenseMatrix> {
    if scale.len() != alpha.len() {
        return Err(Error::SizeMismatch {
            context: "scaled polynomial transform scale vector".into(),
            expected: alpha.len(),
            got: scale.len(),
        });
    }
    let mut m = polynomial_transform(basis, alpha)?;
    for k in 0..m.rows() {
        let inv = Complex64::new(1.0, 0.0) / scale.scales()[k];
        for l in 0..m.cols() {
            m[(k, l)] *= inv;
        }
    }
    Ok(m)
}

/// The named transforms of the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransformName {
    Dft,
    DctI,
    DctII,
    DctIII,
    DctIV,
    DstI,
    DstII,
    DstIII,
    DstIV,
}

impl TransformName {
    pub const ALL: [TransformName; 9] = [
        TransformName::Dft,
        TransformName::DctI,
        TransformName::DctII,
        TransformName::DctIII,
        TransformName::DctIV,
        TransformName::DstI,
        TransformName::DstII,
        TransformName::DstIII,
        TransformName::DstIV,
    ];
}

impl fmt::Display for TransformName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TransformName::Dft => "dft",
            TransformName::DctI => "dct1",
            TransformName::DctII => "dct2",
            TransformName::DctIII => "dct3",
            TransformName::DctIV => "dct4",
            TransformName::DstI => "dst1",
            TransformName::DstII => "dst2",
            TransformName::DstIII => "dst3",
            TransformName::DstIV => "dst4",
        };
        f.write_str(s)
    }
}

impl FromStr for TransformName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dft" => Ok(TransformName::Dft),
            "dct1" | "dct-1" | "dct-i" => Ok(TransformName::DctI),
            "dct2" | "dct-2" | "dct-ii" => Ok(TransformName::DctII),
            "dct3" | "dct-3" | "dct-iii" => Ok(TransformName::DctIII),
            "dct4" | "dct-4" | "dct-iv" => Ok(TransformName::DctIV),
            "dst1" | "dst-1" | "dst-i" => Ok(TransformName::DstI),
            "dst2" | "dst-2" | "dst-ii" => Ok(TransformName::DstII),
            "dst3" | "dst-3" | "dst-iii" => Ok(TransformName::DstIII),
            "dst4" | "dst-4" | "dst-iv" => Ok(TransformName::DstIV),
            other => Err(Error::UnknownTransform(other.into())),
        }
    }
}

/// Entry formulas, all 0 ≤ k,ℓ < n. Size conventions are the point here:
/// DCT-I of size n samples cos(kℓπ/(n−1)) (so the "radix" denominator is
/// n−1), DST-I uses n+1, everything else uses 2n or 4n. DST-I additionally
/// accepts n = 0 and yields the empty 0×0 matrix, which direct sums treat as
/// an identity summand.
pub fn named_transform(name: TransformName, n: usize) -> Result<DenseMatrix> {
    if n == 0 {
        if name == TransformName::DstI {
            return Ok(DenseMatrix::zeros(0, 0));
        }
        return Err(Error::InvalidSize {
            name: name.to_string(),
            n,
        });
    }
    let ni = n as i64;
    let m = match name {
        TransformName::Dft => {
            DenseMatrix::from_fn(n, n, |k, l| trig::unit_root(ni, (k * l) as i64))
        }
        TransformName::DctI => {
            if n == 1 {
                DenseMatrix::identity(1)
            } else {
                real_entries(n, |k, l| trig::cos_pi_ratio(k * l, ni - 1))
            }
        }
        TransformName::DstI => real_entries(n, |k, l| trig::sin_pi_ratio((k + 1) * (l + 1), ni + 1)),
        TransformName::DctII => real_entries(n, |k, l| trig::cos_pi_ratio(k * (2 * l + 1), 2 * ni)),
        TransformName::DstII => {
            real_entries(n, |k, l| trig::sin_pi_ratio((k + 1) * (2 * l + 1), 2 * ni))
        }
        TransformName::DctIII => {
            real_entries(n, |k, l| trig::cos_pi_ratio((2 * k + 1) * l, 2 * ni))
        }
        TransformName::DstIII => {
            real_entries(n, |k, l| trig::sin_pi_ratio((2 * k + 1) * (l + 1), 2 * ni))
        }
        TransformName::DctIV => {
            real_entries(n, |k, l| trig::cos_pi_ratio((2 * k + 1) * (2 * l + 1), 4 * ni))
        }
        TransformName::DstIV => {
            real_entries(n, |k, l| trig::sin_pi_ratio((2 * k + 1) * (2 * l + 1), 4 * ni))
        }
    };
    Ok(m)
}

fn real_entries(n: usize, f: impl Fn(i64, i64) -> f64) -> DenseMatrix {
    DenseMatrix::from_fn(n, n, |k, l| Complex64::new(f(k as i64, l as i64), 0.0))
}
