//! Subalgebra spectra, coset dimensions, transversal validation, and the
//! induction-based factorization of polynomial transforms.
//!
//! Everything here is numerical: spectra are deduplicated with a documented
//! tolerance, ranks come from singular values, and the base change is a
//! linear solve audited by the reconstruction error.

use crate::catalog::{polynomial_transform, BasisPoly, DenseMatrix, PolyBasis, SamplePoints};
use crate::cheb::{ChebKind, MonomialPoly};
use crate::error::{Error, Result};
use crate::ops::{Factorization, LinOp};
use nalgebra as na;
use num_complex::Complex64;

/// Two images r(α_k), r(α_j) are considered equal when
/// |r(α_k) − r(α_j)| ≤ 1e−9·(1 + max|r(α)|).
const SPECTRUM_DEDUP_TOL: f64 = 1e-9;

/// Singular values above 1e−9·σ_max count toward the numerical rank.
const RANK_RELATIVE_TOL: f64 = 1e-9;

/// Base-change solves with condition numbers above this attach a warning.
const CONDITION_WARN: f64 = 1e8;

fn to_na(m: &DenseMatrix) -> na::DMatrix<Complex64> {
    na::DMatrix::from_fn(m.rows(), m.cols(), |r, c| m[(r, c)])
}

fn from_na(m: &na::DMatrix<Complex64>) -> DenseMatrix {
    DenseMatrix::from_fn(m.nrows(), m.ncols(), |r, c| m[(r, c)])
}

struct RankInfo {
    rank: usize,
    sigma_min: f64,
    sigma_max: f64,
}

fn numerical_rank(m: &DenseMatrix) -> RankInfo {
    if m.rows() == 0 || m.cols() == 0 {
        return RankInfo {
            rank: 0,
            sigma_min: 0.0,
            sigma_max: 0.0,
        };
    }
    let sv = to_na(m).svd(false, false).singular_values;
    let sigma_max = sv.iter().copied().fold(0.0, f64::max);
    let sigma_min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    let rank = sv
        .iter()
        .filter(|&&s| s > RANK_RELATIVE_TOL * sigma_max)
        .count();
    RankInfo {
        rank,
        sigma_min,
        sigma_max,
    }
}

/// The deduplicated image β of the sample points under the generator, plus
/// the per-point map k ↦ j with r(α_k) = β_j. β is ordered by first
/// occurrence while scanning α in index order; its length is the dimension
/// of the generated subalgebra.
#[derive(Clone, Debug)]
pub struct SubalgebraSpectrum {
    pub beta: Vec<Complex64>,
    pub index_map: Vec<usize>,
}

impl SubalgebraSpectrum {
    pub fn dim(&self) -> usize {
        self.beta.len()
    }
}

pub fn subalgebra_spectrum(r: &MonomialPoly, alpha: &SamplePoints) -> SubalgebraSpectrum {
    let images: Vec<Complex64> = alpha.points().iter().map(|&a| r.eval(a)).collect();
    let scale = 1.0 + images.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut beta: Vec<Complex64> = Vec::new();
    let mut index_map = Vec::with_capacity(images.len());
    for img in &images {
        match beta
            .iter()
            .position(|b| (img - b).norm() <= SPECTRUM_DEDUP_TOL * scale)
        {
            Some(j) => index_map.push(j),
            None => {
                index_map.push(beta.len());
                beta.push(*img);
            }
        }
    }
    SubalgebraSpectrum { beta, index_map }
}

/// Numerical rank of the n×n matrix [r^ℓ(α_k)]. Equal to |β| whenever the
/// spectrum dedup is trustworthy; exposed separately so that equality is
/// directly testable.
pub fn subalgebra_rank_check(r: &MonomialPoly, alpha: &SamplePoints) -> usize {
    let n = alpha.len();
    let m = power_matrix(r, alpha, n);
    numerical_rank(&m).rank
}

/// [r^j(α_k)] with n rows and `cols` columns.
fn power_matrix(r: &MonomialPoly, alpha: &SamplePoints, cols: usize) -> DenseMatrix {
    let images: Vec<Complex64> = alpha.points().iter().map(|&a| r.eval(a)).collect();
    let mut m = DenseMatrix::zeros(alpha.len(), cols);
    for (k, &img) in images.iter().enumerate() {
        let mut p = Complex64::new(1.0, 0.0);
        for j in 0..cols {
            m[(k, j)] = p;
            p *= img;
        }
    }
    m
}

/// The surviving spectrum of a coset t(x)·B: the subset β′ ⊆ β reachable
/// from sample points where t does not vanish. Its size is the coset's
/// dimension; points annihilated by t drop out.
#[derive(Clone, Debug)]
pub struct CosetSpectrum {
    pub beta_prime: Vec<Complex64>,
    /// Positions of β′ inside β, in β order.
    pub beta_indices: Vec<usize>,
}

impl CosetSpectrum {
    pub fn m_ell(&self) -> usize {
        self.beta_prime.len()
    }
}

pub fn coset_spectrum(t: &MonomialPoly, r: &MonomialPoly, alpha: &SamplePoints) -> CosetSpectrum {
    let spectrum = subalgebra_spectrum(r, alpha);
    coset_spectrum_with(t, &spectrum, alpha)
}

fn coset_spectrum_with(
    t: &MonomialPoly,
    spectrum: &SubalgebraSpectrum,
    alpha: &SamplePoints,
) -> CosetSpectrum {
    let tv: Vec<Complex64> = alpha.points().iter().map(|&a| t.eval(a)).collect();
    let scale = 1.0 + tv.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut alive = vec![false; spectrum.beta.len()];
    for (k, v) in tv.iter().enumerate() {
        if v.norm() > SPECTRUM_DEDUP_TOL * scale {
            alive[spectrum.index_map[k]] = true;
        }
    }
    let beta_indices: Vec<usize> = (0..spectrum.beta.len()).filter(|&j| alive[j]).collect();
    CosetSpectrum {
        beta_prime: beta_indices.iter().map(|&j| spectrum.beta[j]).collect(),
        beta_indices,
    }
}

/// How a coset basis in y is specified.
#[derive(Clone, Debug)]
pub enum CosetBasis {
    /// {1, y, …, y^{m−1}} (the default)
    Monomial,
    /// {C₀(y), …, C_{m−1}(y)} of the given Chebyshev kind
    Chebyshev(ChebKind),
    /// Explicit polynomials; the list length must match the coset dimension.
    Explicit(Vec<MonomialPoly>),
}

impl CosetBasis {
    fn expand(&self, m: usize, coset: usize) -> Result<Vec<BasisPoly>> {
        match self {
            CosetBasis::Monomial => Ok((0..m)
                .map(|d| BasisPoly::Monomial(MonomialPoly::monomial(d)))
                .collect()),
            CosetBasis::Chebyshev(kind) => Ok((0..m)
                .map(|d| BasisPoly::Chebyshev(*kind, d as i64))
                .collect()),
            CosetBasis::Explicit(polys) => {
                if polys.len() != m {
                    return Err(Error::SizeMismatch {
                        context: format!("explicit basis for coset {coset}"),
                        expected: m,
                        got: polys.len(),
                    });
                }
                Ok(polys.iter().cloned().map(BasisPoly::Monomial).collect())
            }
        }
    }
}

/// The full input to an induction factorization: sample points, the basis of
/// the algebra, the subalgebra generator, the transversal polynomials, and
/// per-coset bases.
#[derive(Clone, Debug)]
pub struct InductionSpec {
    pub alpha: SamplePoints,
    pub basis: PolyBasis,
    pub generator: MonomialPoly,
    pub transversal: Vec<MonomialPoly>,
    /// One entry per transversal element; empty means all-monomial defaults.
    pub coset_bases: Vec<CosetBasis>,
}

impl InductionSpec {
    fn coset_basis(&self, l: usize) -> &CosetBasis {
        if self.coset_bases.is_empty() {
            &CosetBasis::Monomial
        } else {
            &self.coset_bases[l]
        }
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.alpha.len();
        if self.basis.len() != n {
            return Err(Error::SizeMismatch {
                context: "algebra basis vs sample points".into(),
                expected: n,
                got: self.basis.len(),
            });
        }
        if !self.coset_bases.is_empty() && self.coset_bases.len() != self.transversal.len() {
            return Err(Error::SizeMismatch {
                context: "coset bases vs transversal".into(),
                expected: self.transversal.len(),
                got: self.coset_bases.len(),
            });
        }
        Ok(())
    }
}

/// Outcome of the full-rank transversal test, with the numbers needed to
/// diagnose a failure.
#[derive(Clone, Copy, Debug)]
pub struct TransversalReport {
    pub is_transversal: bool,
    pub n: usize,
    pub total_coset_dim: usize,
    pub rank: usize,
    pub smallest_singular_value: f64,
}

impl std::fmt::Display for TransversalReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "transversal: {} (coset dims sum to {} of {}, rank {}, smallest singular value {:.3e})",
            if self.is_transversal { "valid" } else { "invalid" },
            self.total_coset_dim,
            self.n,
            self.rank,
            self.smallest_singular_value
        )
    }
}

/// The stacked test matrix (D₀B₀ | D₁B₁ | … | D_{L−1}B_{L−1}) whose rank
/// decides whether the transversal splits the algebra.
pub fn transversal_matrix(spec: &InductionSpec) -> Result<DenseMatrix> {
    spec.check_shape()?;
    let n = spec.alpha.len();
    let spectrum = subalgebra_spectrum(&spec.generator, &spec.alpha);
    let images: Vec<Complex64> = spec
        .alpha
        .points()
        .iter()
        .map(|&a| spec.generator.eval(a))
        .collect();
    let mut cols: Vec<Vec<Complex64>> = Vec::new();
    for t in &spec.transversal {
        let cs = coset_spectrum_with(t, &spectrum, &spec.alpha);
        let tv: Vec<Complex64> = spec.alpha.points().iter().map(|&a| t.eval(a)).collect();
        let mut powers = vec![Complex64::new(1.0, 0.0); n];
        for _ in 0..cs.m_ell() {
            cols.push(tv.iter().zip(&powers).map(|(a, b)| a * b).collect());
            for (p, img) in powers.iter_mut().zip(&images) {
                *p *= img;
            }
        }
    }
    let mut m = DenseMatrix::zeros(n, cols.len());
    for (c, col) in cols.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            m[(r, c)] = *v;
        }
    }
    Ok(m)
}

pub fn transversal_check(spec: &InductionSpec) -> Result<TransversalReport> {
    let m = transversal_matrix(spec)?;
    let n = spec.alpha.len();
    let total = m.cols();
    let info = numerical_rank(&m);
    Ok(TransversalReport {
        is_transversal: total == n && info.rank == n,
        n,
        total_coset_dim: total,
        rank: info.rank,
        smallest_singular_value: info.sigma_min,
    })
}

/// The three-factor decomposition: a column-concatenated sparse part, a
/// direct sum of small polynomial transforms over the coset spectra, and a
/// base change, whose product reconstructs the polynomial transform of the
/// algebra basis at the sample points.
pub fn induction_factorize(spec: &InductionSpec) -> Result<Factorization> {
    let report = transversal_check(spec)?;
    if !report.is_transversal {
        return Err(Error::NotATransversal {
            n: report.n,
            total_coset_dim: report.total_coset_dim,
            rank: report.rank,
        });
    }
    let n = spec.alpha.len();
    let pts = spec.alpha.points();
    let spectrum = subalgebra_spectrum(&spec.generator, &spec.alpha);

    let mut concat_blocks: Vec<LinOp> = Vec::new();
    let mut middle_blocks: Vec<LinOp> = Vec::new();
    let mut bprime_cols: Vec<Vec<Complex64>> = Vec::new();

    for (l, t) in spec.transversal.iter().enumerate() {
        let cs = coset_spectrum_with(t, &spectrum, &spec.alpha);
        let m_ell = cs.m_ell();
        let tv: Vec<Complex64> = pts.iter().map(|&a| t.eval(a)).collect();

        // D_ℓ · M_ℓ with M_ℓ the 0/1 membership matrix of this coset's spectrum
        let mut col_of_beta = vec![usize::MAX; spectrum.beta.len()];
        for (j, &b) in cs.beta_indices.iter().enumerate() {
            col_of_beta[b] = j;
        }
        let rows: Vec<Vec<(usize, Complex64)>> = (0..n)
            .map(|k| {
                let j = col_of_beta[spectrum.index_map[k]];
                if j == usize::MAX {
                    vec![]
                } else {
                    vec![(j, Complex64::new(1.0, 0.0))]
                }
            })
            .collect();
        concat_blocks.push(LinOp::compose(vec![
            LinOp::diagonal(tv.clone()),
            LinOp::two_sparse(n, m_ell, rows),
        ]));

        // PT of the coset basis at the surviving spectrum points
        let basis = spec.coset_basis(l).expand(m_ell, l)?;
        let block = DenseMatrix::from_fn(m_ell, m_ell, |j, q| basis[q].eval(cs.beta_prime[j]));
        middle_blocks.push(LinOp::dense(block));

        // columns of the concatenated coset basis, evaluated through
        // t_ℓ(x)·b^(ℓ)_q(r(x))
        for q in 0..m_ell {
            bprime_cols.push(
                (0..n)
                    .map(|k| tv[k] * basis[q].eval(spectrum.beta[spectrum.index_map[k]]))
                    .collect(),
            );
        }
    }

    let target = polynomial_transform(&spec.basis, &spec.alpha)?;
    let bprime = {
        let mut m = DenseMatrix::zeros(n, n);
        for (c, col) in bprime_cols.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                m[(r, c)] = *v;
            }
        }
        m
    };

    let (base_change, condition) = solve_base_change(&bprime, &target)?;

    let mut factorization = Factorization::new(
        target,
        vec![
            LinOp::column_concat(concat_blocks).labeled("M-part"),
            LinOp::direct_sum(middle_blocks).labeled("PT direct sum"),
            LinOp::dense(base_change).labeled("base change B"),
        ],
    );
    if condition > CONDITION_WARN {
        factorization.warnings.push(format!(
            "base-change solve is ill-conditioned (condition number {condition:.3e})"
        ));
    }
    Ok(factorization)
}

/// Solve lhs · B = rhs for B, returning B and the condition number of lhs.
fn solve_base_change(lhs: &DenseMatrix, rhs: &DenseMatrix) -> Result<(DenseMatrix, f64)> {
    let lhs_na = to_na(lhs);
    let info = numerical_rank(lhs);
    let condition = if info.sigma_min > 0.0 {
        info.sigma_max / info.sigma_min
    } else {
        f64::INFINITY
    };
    let solved = lhs_na
        .lu()
        .solve(&to_na(rhs))
        .ok_or(Error::SingularBaseChange)?;
    Ok((from_na(&solved), condition))
}

/// Checks the structural bookkeeping of the membership matrix M: it carries
/// exactly n ones (and n·(m−1) zeros), and each spectrum column appears in
/// as many cosets as it has ones.
pub fn ones_count_check(spec: &InductionSpec) -> Result<bool> {
    let report = transversal_check(spec)?;
    if !report.is_transversal {
        return Err(Error::NotATransversal {
            n: report.n,
            total_coset_dim: report.total_coset_dim,
            rank: report.rank,
        });
    }
    let n = spec.alpha.len();
    let spectrum = subalgebra_spectrum(&spec.generator, &spec.alpha);
    let m = spectrum.dim();

    let mut ones = 0usize;
    let mut col_counts = vec![0usize; m];
    for k in 0..n {
        ones += 1;
        col_counts[spectrum.index_map[k]] += 1;
    }
    if ones != n {
        return Ok(false);
    }

    let mut appearances = vec![0usize; m];
    for t in &spec.transversal {
        let cs = coset_spectrum_with(t, &spectrum, &spec.alpha);
        for &j in &cs.beta_indices {
            appearances[j] += 1;
        }
    }
    Ok(col_counts == appearances)
}

/// Factorization for the special case p(x) = q(r(x)): a coset permutation,
/// a direct sum of per-spectrum-point transforms, a stride permutation, a
/// tensor block of the spectrum transform, and a base change.
///
/// `t` must be a basis of the quotient by r with leading element 1; `c` is
/// the basis used on the spectrum side. The sample points are grouped by
/// their image under r; unequal group sizes mean the composite structure is
/// violated.
pub fn decomposition_factorize(
    q: &MonomialPoly,
    r: &MonomialPoly,
    alpha: &SamplePoints,
    b: &PolyBasis,
    c: &PolyBasis,
    t: &PolyBasis,
) -> Result<Factorization> {
    let n = alpha.len();
    let spectrum = subalgebra_spectrum(r, alpha);
    let m = spectrum.dim();
    if c.len() != m {
        return Err(Error::SizeMismatch {
            context: "spectrum basis c".into(),
            expected: m,
            got: c.len(),
        });
    }
    if q.degree() != Some(m) && !(m == 0 && q.degree().is_none()) {
        return Err(Error::DecompositionStructure(format!(
            "deg q = {:?} but the spectrum has {} points",
            q.degree(),
            m
        )));
    }
    if n % m != 0 {
        return Err(Error::DecompositionStructure(format!(
            "spectrum size {m} does not divide {n}"
        )));
    }
    let k = n / m;
    if t.len() != k {
        return Err(Error::SizeMismatch {
            context: "quotient basis t".into(),
            expected: k,
            got: t.len(),
        });
    }
    if !t.polys()[0].is_const_one() {
        return Err(Error::DecompositionStructure(
            "the quotient basis t must start with the constant 1".into(),
        ));
    }

    // group sample points by spectrum index; Cor-style structure demands
    // equal group sizes
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (idx, &j) in spectrum.index_map.iter().enumerate() {
        groups[j].push(idx);
    }
    if let Some(bad) = groups.iter().position(|g| g.len() != k) {
        return Err(Error::DecompositionStructure(format!(
            "root group {} has {} points, expected {}",
            bad,
            groups[bad].len(),
            k
        )));
    }

    let pts = alpha.points();

    // P⁻¹: sends the concatenated root groups back to sample-point order
    let mut pos_of_alpha = vec![0usize; n];
    for (s, &orig) in groups.iter().flatten().enumerate() {
        pos_of_alpha[orig] = s;
    }
    let perm_rows: Vec<Vec<(usize, Complex64)>> = (0..n)
        .map(|kk| vec![(pos_of_alpha[kk], Complex64::new(1.0, 0.0))])
        .collect();
    let p_inv = LinOp::two_sparse(n, n, perm_rows).labeled("coset permutation");

    // ⊕_j PT of the quotient basis at each root group
    let blocks: Vec<LinOp> = groups
        .iter()
        .map(|g| {
            LinOp::dense(DenseMatrix::from_fn(k, k, |i, qdx| {
                t.eval(qdx, pts[g[i]])
            }))
        })
        .collect();
    let coset_transforms = LinOp::direct_sum(blocks).labeled("coset transforms");

    let stride = LinOp::stride(n, m).labeled("stride permutation L");

    let spectrum_pt = DenseMatrix::from_fn(m, m, |j, qdx| c.eval(qdx, spectrum.beta[j]));
    let spectrum_block =
        LinOp::tensor(LinOp::identity(k), LinOp::dense(spectrum_pt)).labeled("spectrum transforms");

    // base change from b to the concatenation t_ℓ(x)·c_q(r(x)), ℓ-major
    let target = polynomial_transform(b, alpha)?;
    let images: Vec<Complex64> = pts.iter().map(|&a| r.eval(a)).collect();
    let mut bprime = DenseMatrix::zeros(n, n);
    for l in 0..k {
        for qdx in 0..m {
            for (row, (&a, &img)) in pts.iter().zip(&images).enumerate() {
                bprime[(row, l * m + qdx)] = t.eval(l, a) * c.eval(qdx, img);
            }
        }
    }
    let (base_change, condition) = solve_base_change(&bprime, &target)?;

    let mut factorization = Factorization::new(
        target,
        vec![
            p_inv,
            coset_transforms,
            stride,
            spectrum_block,
            LinOp::dense(base_change).labeled("base change B"),
        ],
    );
    if condition > CONDITION_WARN {
        factorization.warnings.push(format!(
            "base-change solve is ill-conditioned (condition number {condition:.3e})"
        ));
    }
    Ok(factorization)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{named_transform, TransformName};

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn fourth_roots() -> SamplePoints {
        SamplePoints::new(vec![
            c64(1., 0.),
            c64(0., -1.),
            c64(-1., 0.),
            c64(0., 1.),
        ])
        .unwrap()
    }

    fn x_squared() -> MonomialPoly {
        MonomialPoly::from_real(&[0., 0., 1.])
    }

    /// (x + x³)/2, which is (x + x⁻¹)/2 mod x⁴−1
    fn half_sum() -> MonomialPoly {
        MonomialPoly::from_real(&[0., 0.5, 0., 0.5])
    }

    /// (x − x³)/2
    fn half_diff() -> MonomialPoly {
        MonomialPoly::from_real(&[0., 0.5, 0., -0.5])
    }

    #[test]
    fn spectrum_of_x_squared() {
        let s = subalgebra_spectrum(&x_squared(), &fourth_roots());
        assert_eq!(s.beta, vec![c64(1., 0.), c64(-1., 0.)]);
        assert_eq!(s.index_map, vec![0, 1, 0, 1]);
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn spectrum_of_identity_generator() {
        let alpha = fourth_roots();
        let s = subalgebra_spectrum(&MonomialPoly::monomial(1), &alpha);
        assert_eq!(s.beta, alpha.points());
        assert_eq!(s.dim(), 4);
    }

    #[test]
    fn spectrum_of_half_sum() {
        let s = subalgebra_spectrum(&half_sum(), &fourth_roots());
        assert_eq!(s.beta, vec![c64(1., 0.), c64(0., 0.), c64(-1., 0.)]);
        assert_eq!(s.dim(), 3);
    }

    #[test]
    fn rank_check_agrees_with_spectrum() {
        let alpha = fourth_roots();
        assert_eq!(subalgebra_rank_check(&x_squared(), &alpha), 2);
        assert_eq!(subalgebra_rank_check(&MonomialPoly::monomial(1), &alpha), 4);
        assert_eq!(subalgebra_rank_check(&half_sum(), &alpha), 3);
    }

    #[test]
    fn coset_spectra() {
        let alpha = fourth_roots();
        // x·B₁: nothing annihilated
        let cs = coset_spectrum(&MonomialPoly::monomial(1), &x_squared(), &alpha);
        assert_eq!(cs.beta_prime, vec![c64(1., 0.), c64(-1., 0.)]);
        assert_eq!(cs.m_ell(), 2);
        // unit transversal element keeps the whole spectrum
        let cs = coset_spectrum(&MonomialPoly::one(), &half_sum(), &alpha);
        assert_eq!(cs.m_ell(), 3);
        // (x−x⁻¹)/2 · B₂ collapses to the single point 0
        let cs = coset_spectrum(&half_diff(), &half_sum(), &alpha);
        assert_eq!(cs.beta_prime, vec![c64(0., 0.)]);
        assert_eq!(cs.m_ell(), 1);
    }

    fn radix2_spec() -> InductionSpec {
        InductionSpec {
            alpha: fourth_roots(),
            basis: PolyBasis::monomials(4),
            generator: x_squared(),
            transversal: vec![MonomialPoly::one(), MonomialPoly::monomial(1)],
            coset_bases: vec![],
        }
    }

    fn britanak_spec() -> InductionSpec {
        InductionSpec {
            alpha: fourth_roots(),
            basis: PolyBasis::monomials(4),
            generator: half_sum(),
            transversal: vec![MonomialPoly::one(), half_diff()],
            coset_bases: vec![
                CosetBasis::Chebyshev(ChebKind::First),
                CosetBasis::Monomial,
            ],
        }
    }

    #[test]
    fn transversal_matrix_matches_worked_example() {
        let spec = britanak_spec();
        let m = transversal_matrix(&spec).unwrap();
        let want = [
            [c64(1., 0.), c64(1., 0.), c64(1., 0.), c64(0., 0.)],
            [c64(1., 0.), c64(0., 0.), c64(0., 0.), c64(0., -1.)],
            [c64(1., 0.), c64(-1., 0.), c64(1., 0.), c64(0., 0.)],
            [c64(1., 0.), c64(0., 0.), c64(0., 0.), c64(0., 1.)],
        ];
        for r in 0..4 {
            for cc in 0..4 {
                assert!((m[(r, cc)] - want[r][cc]).norm() < 1e-14, "({r},{cc})");
            }
        }
        let report = transversal_check(&spec).unwrap();
        assert!(report.is_transversal);
        assert_eq!(report.total_coset_dim, 4);
    }

    #[test]
    fn pointwise_transversal_is_diagonal_and_valid() {
        // t_ℓ(α_k) = δ_{ℓk} realized via Lagrange-style selectors
        let alpha = fourth_roots();
        let pts = alpha.points().to_vec();
        let transversal: Vec<MonomialPoly> = (0..4)
            .map(|l| {
                // product of (x − α_j)/(α_l − α_j) over j ≠ l
                let mut coeffs = vec![c64(1., 0.)];
                for (j, &aj) in pts.iter().enumerate() {
                    if j == l {
                        continue;
                    }
                    let mut next = vec![c64(0., 0.); coeffs.len() + 1];
                    for (d, &cf) in coeffs.iter().enumerate() {
                        next[d + 1] += cf;
                        next[d] -= cf * aj;
                    }
                    coeffs = next;
                }
                let denom: Complex64 = pts
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != l)
                    .map(|(_, &aj)| pts[l] - aj)
                    .product();
                MonomialPoly::new(coeffs.into_iter().map(|cf| cf / denom).collect())
            })
            .collect();
        let spec = InductionSpec {
            alpha,
            basis: PolyBasis::monomials(4),
            generator: x_squared(),
            transversal,
            coset_bases: vec![],
        };
        let m = transversal_matrix(&spec).unwrap();
        // each coset keeps exactly one spectrum point, so M′ is diagonal
        for r in 0..4 {
            for cc in 0..4 {
                if r != cc {
                    assert!(m[(r, cc)].norm() < 1e-12, "({r},{cc}) = {}", m[(r, cc)]);
                }
            }
        }
        assert!(transversal_check(&spec).unwrap().is_transversal);
    }

    #[test]
    fn duplicated_transversal_fails() {
        let spec = InductionSpec {
            alpha: fourth_roots(),
            basis: PolyBasis::monomials(4),
            generator: x_squared(),
            transversal: vec![MonomialPoly::one(), MonomialPoly::one()],
            coset_bases: vec![],
        };
        let report = transversal_check(&spec).unwrap();
        assert!(!report.is_transversal);
        assert!(report.rank < 4);
        assert!(induction_factorize(&spec).is_err());
    }

    #[test]
    fn radix2_factorization_matches_golden_matrices() {
        let f = induction_factorize(&radix2_spec()).unwrap();
        assert!(f.warnings.is_empty());
        assert_eq!(f.factors.len(), 3);

        let m_part = f.factors[0].to_dense();
        let want_m = [
            [c64(1., 0.), c64(0., 0.), c64(1., 0.), c64(0., 0.)],
            [c64(0., 0.), c64(1., 0.), c64(0., 0.), c64(0., -1.)],
            [c64(1., 0.), c64(0., 0.), c64(-1., 0.), c64(0., 0.)],
            [c64(0., 0.), c64(1., 0.), c64(0., 0.), c64(0., 1.)],
        ];
        for r in 0..4 {
            for cc in 0..4 {
                assert!((m_part[(r, cc)] - want_m[r][cc]).norm() < 1e-12);
            }
        }

        let middle = f.factors[1].to_dense();
        let dft2 = named_transform(TransformName::Dft, 2).unwrap();
        let want_mid = LinOp::direct_sum(vec![
            LinOp::dense(dft2.clone()),
            LinOp::dense(dft2),
        ])
        .to_dense();
        assert!(middle.max_abs_diff(&want_mid) < 1e-12);

        let base = f.factors[2].to_dense();
        let want_b = [
            [1., 0., 0., 0.],
            [0., 0., 1., 0.],
            [0., 1., 0., 0.],
            [0., 0., 0., 1.],
        ];
        for r in 0..4 {
            for cc in 0..4 {
                assert!((base[(r, cc)] - c64(want_b[r][cc], 0.)).norm() < 1e-12);
            }
        }

        assert!(f.reconstruction_error() < 1e-12);
    }

    #[test]
    fn britanak_factorization_matches_golden_matrices() {
        let f = induction_factorize(&britanak_spec()).unwrap();
        let m_part = f.factors[0].to_dense();
        let want_m = [
            [c64(1., 0.), c64(0., 0.), c64(0., 0.), c64(0., 0.)],
            [c64(0., 0.), c64(1., 0.), c64(0., 0.), c64(0., -1.)],
            [c64(0., 0.), c64(0., 0.), c64(1., 0.), c64(0., 0.)],
            [c64(0., 0.), c64(1., 0.), c64(0., 0.), c64(0., 1.)],
        ];
        for r in 0..4 {
            for cc in 0..4 {
                assert!((m_part[(r, cc)] - want_m[r][cc]).norm() < 1e-12);
            }
        }

        let middle = f.factors[1].to_dense();
        let want_mid = LinOp::direct_sum(vec![
            LinOp::dense(named_transform(TransformName::DctI, 3).unwrap()),
            LinOp::dense(named_transform(TransformName::DstI, 1).unwrap()),
        ])
        .to_dense();
        assert!(middle.max_abs_diff(&want_mid) < 1e-12);

        let base = f.factors[2].to_dense();
        let want_b = [
            [1., 0., 0., 0.],
            [0., 1., 0., 1.],
            [0., 0., 1., 0.],
            [0., 1., 0., -1.],
        ];
        for r in 0..4 {
            for cc in 0..4 {
                assert!((base[(r, cc)] - c64(want_b[r][cc], 0.)).norm() < 1e-12);
            }
        }

        assert!(f.reconstruction_error() < 1e-12);
    }

    #[test]
    fn trivial_induction_with_explicit_coset_basis() {
        // r = x, T = {1}, coset basis = the algebra basis itself:
        // the middle factor is the whole transform and B is the identity.
        let alpha = fourth_roots();
        let spec = InductionSpec {
            alpha: alpha.clone(),
            basis: PolyBasis::monomials(4),
            generator: MonomialPoly::monomial(1),
            transversal: vec![MonomialPoly::one()],
            coset_bases: vec![CosetBasis::Explicit(
                (0..4).map(MonomialPoly::monomial).collect(),
            )],
        };
        let f = induction_factorize(&spec).unwrap();
        let target = polynomial_transform(&PolyBasis::monomials(4), &alpha).unwrap();
        assert!(f.factors[0]
            .to_dense()
            .max_abs_diff(&DenseMatrix::identity(4))
            < 1e-12);
        assert!(f.factors[1].to_dense().max_abs_diff(&target) < 1e-12);
        assert!(f.factors[2]
            .to_dense()
            .max_abs_diff(&DenseMatrix::identity(4))
            < 1e-12);
    }

    #[test]
    fn ones_count_examples() {
        assert!(ones_count_check(&radix2_spec()).unwrap());
        assert!(ones_count_check(&britanak_spec()).unwrap());
        let trivial = InductionSpec {
            alpha: fourth_roots(),
            basis: PolyBasis::monomials(4),
            generator: MonomialPoly::monomial(1),
            transversal: vec![MonomialPoly::one()],
            coset_bases: vec![],
        };
        assert!(ones_count_check(&trivial).unwrap());
    }

    #[test]
    fn decomposition_dft4() {
        let f = decomposition_factorize(
            &MonomialPoly::from_real(&[-1., 0., 1.]), // y² − 1
            &x_squared(),
            &fourth_roots(),
            &PolyBasis::monomials(4),
            &PolyBasis::monomials(2),
            &PolyBasis::monomials(2),
        )
        .unwrap();
        assert_eq!(f.factors.len(), 5);
        let dft4 = named_transform(TransformName::Dft, 4).unwrap();
        assert!(f.product_dense().rel_frobenius_error(&dft4) < 1e-12);
    }

    #[test]
    fn decomposition_dft6() {
        let alpha = SamplePoints::new(
            (0..6)
                .map(|j| crate::trig::unit_root(6, j))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let f = decomposition_factorize(
            &MonomialPoly::from_real(&[-1., 0., 1.]), // y² − 1
            &MonomialPoly::monomial(3),
            &alpha,
            &PolyBasis::monomials(6),
            &PolyBasis::monomials(2),
            &PolyBasis::monomials(3),
        )
        .unwrap();
        let dft6 = named_transform(TransformName::Dft, 6).unwrap();
        assert!(f.product_dense().rel_frobenius_error(&dft6) < 1e-12);
    }

    #[test]
    fn decomposition_trivial_size_one() {
        let alpha = SamplePoints::new(vec![c64(1., 0.)]).unwrap();
        let f = decomposition_factorize(
            &MonomialPoly::from_real(&[-1., 1.]), // y − 1
            &MonomialPoly::monomial(1),
            &alpha,
            &PolyBasis::monomials(1),
            &PolyBasis::monomials(1),
            &PolyBasis::monomials(1),
        )
        .unwrap();
        for f in &f.factors {
            assert_eq!((f.rows(), f.cols()), (1, 1));
        }
        assert!(f.reconstruction_error() < 1e-14);
    }

    #[test]
    fn decomposition_rejects_uneven_groups() {
        // r = x² on points whose squares collide unevenly
        let alpha = SamplePoints::new(vec![c64(1., 0.), c64(-1., 0.), c64(2., 0.)]).unwrap();
        let err = decomposition_factorize(
            &MonomialPoly::from_real(&[0., 1.]),
            &x_squared(),
            &alpha,
            &PolyBasis::monomials(3),
            &PolyBasis::monomials(1),
            &PolyBasis::monomials(3),
        );
        assert!(err.is_err());
    }

    #[test]
    fn decomposition_agrees_with_induction() {
        // same split of DFT₄, both routes
        let ind = induction_factorize(&radix2_spec()).unwrap();
        let dec = decomposition_factorize(
            &MonomialPoly::from_real(&[-1., 0., 1.]),
            &x_squared(),
            &fourth_roots(),
            &PolyBasis::monomials(4),
            &PolyBasis::monomials(2),
            &PolyBasis::monomials(2),
        )
        .unwrap();
        assert!(ind.product_dense().max_abs_diff(&dec.product_dense()) < 1e-12);
    }
}
