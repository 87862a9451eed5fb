//! Chebyshev polynomials of the four kinds, and plain monomial polynomials.
//!
//! Evaluation runs the forward two-term recurrence C_{k+1} = 2x·C_k − C_{k−1}
//! so that arbitrary complex arguments work uniformly; the trigonometric
//! closed forms are reserved for test oracles.

use crate::trig;
use num_complex::Complex64;

/// The four Chebyshev kinds T, U, V, W with their recurrence seeds:
/// T: (1, x), U: (1, 2x), V: (1, 2x−1), W: (1, 2x+1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChebKind {
    First,
    Second,
    Third,
    Fourth,
}

impl ChebKind {
    pub const ALL: [ChebKind; 4] = [
        ChebKind::First,
        ChebKind::Second,
        ChebKind::Third,
        ChebKind::Fourth,
    ];

    pub fn letter(self) -> char {
        match self {
            ChebKind::First => 'T',
            ChebKind::Second => 'U',
            ChebKind::Third => 'V',
            ChebKind::Fourth => 'W',
        }
    }

    pub fn from_letter(c: char) -> Option<ChebKind> {
        match c.to_ascii_uppercase() {
            'T' => Some(ChebKind::First),
            'U' => Some(ChebKind::Second),
            'V' => Some(ChebKind::Third),
            'W' => Some(ChebKind::Fourth),
            _ => None,
        }
    }

    fn seeds(self, x: Complex64) -> (Complex64, Complex64) {
        let one = Complex64::new(1.0, 0.0);
        let two_x = x + x;
        match self {
            ChebKind::First => (one, x),
            ChebKind::Second => (one, two_x),
            ChebKind::Third => (one, two_x - one),
            ChebKind::Fourth => (one, two_x + one),
        }
    }
}

/// Evaluate the degree-`n` Chebyshev polynomial of the given kind at `x`.
///
/// Negative indices resolve through the symmetries T_{−n} = T_n,
/// U_{−n} = −U_{n−2}, V_{−n} = V_{n−1}, W_{−n} = −W_{n−1}. The degenerate
/// U_{−1} (its symmetry is self-referential) is defined as 0, consistent
/// with sin(0·θ)/sin θ.
pub fn cheb_eval(kind: ChebKind, n: i64, x: Complex64) -> Complex64 {
    if n < 0 {
        let m = -n;
        return match kind {
            ChebKind::First => cheb_eval(kind, m, x),
            ChebKind::Second => {
                if m == 1 {
                    Complex64::new(0.0, 0.0)
                } else {
                    -cheb_eval(kind, m - 2, x)
                }
            }
            ChebKind::Third => cheb_eval(kind, m - 1, x),
            ChebKind::Fourth => -cheb_eval(kind, m - 1, x),
        };
    }
    let (mut c0, mut c1) = kind.seeds(x);
    if n == 0 {
        return c0;
    }
    let two_x = x + x;
    for _ in 1..n {
        let next = two_x * c1 - c0;
        c0 = c1;
        c1 = next;
    }
    c1
}

/// The `n` zeros of the degree-`n` Chebyshev polynomial, in order of
/// increasing index k:
/// T: cos((2k+1)π/2n), U: cos((k+1)π/(n+1)),
/// V: cos((2k+1)π/(2n+1)), W: cos((2k+2)π/(2n+1)).
///
/// All zeros are real; they are returned as complex values because the rest
/// of the crate samples transforms at complex points. `n = 0` yields an
/// empty list.
pub fn cheb_zeros(kind: ChebKind, n: usize) -> Vec<Complex64> {
    let n_i = n as i64;
    (0..n_i)
        .map(|k| {
            let c = match kind {
                ChebKind::First => trig::cos_pi_ratio(2 * k + 1, 2 * n_i),
                ChebKind::Second => trig::cos_pi_ratio(k + 1, n_i + 1),
                ChebKind::Third => trig::cos_pi_ratio(2 * k + 1, 2 * n_i + 1),
                ChebKind::Fourth => trig::cos_pi_ratio(2 * k + 2, 2 * n_i + 1),
            };
            Complex64::new(c, 0.0)
        })
        .collect()
}

/// A polynomial stored as coefficients in the monomial basis; index ℓ holds
/// the coefficient of x^ℓ. The empty list is the zero polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialPoly {
    coeffs: Vec<Complex64>,
}

impl MonomialPoly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        MonomialPoly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        MonomialPoly {
            coeffs: coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(),
        }
    }

    pub fn zero() -> Self {
        MonomialPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        MonomialPoly {
            coeffs: vec![Complex64::new(1.0, 0.0)],
        }
    }

    /// x^degree
    pub fn monomial(degree: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); degree + 1];
        coeffs[degree] = Complex64::new(1.0, 0.0);
        MonomialPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Highest index with a nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .rposition(|c| c.re != 0.0 || c.im != 0.0)
    }

    pub fn is_one(&self) -> bool {
        self.degree() == Some(0) && self.coeffs[0] == Complex64::new(1.0, 0.0)
    }

    /// Horner evaluation of Σ coeffs[ℓ]·x^ℓ.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}
