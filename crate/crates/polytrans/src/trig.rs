//! Trigonometry on rational multiples of π.
//!
//! Every matrix entry in this crate is a cosine or sine of π·p/q for integer
//! p, q. Reducing p mod 2q in integer arithmetic before touching floating
//! point makes quarter-turn entries come out exactly 0, ±1, so emitted
//! matrices and golden-file comparisons are reproducible down to the bit.

use num_complex::Complex64;

fn reduce(num: i64, den: i64) -> (i64, i64) {
    debug_assert!(den != 0);
    let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
    (num.rem_euclid(2 * den), den)
}

/// cos(π · num / den).
pub fn cos_pi_ratio(num: i64, den: i64) -> f64 {
    let (num, den) = reduce(num, den);
    if num == 0 {
        1.0
    } else if 2 * num == den || 2 * num == 3 * den {
        0.0
    } else if num == den {
        -1.0
    } else {
        (num as f64 / den as f64 * std::f64::consts::PI).cos()
    }
}

/// sin(π · num / den).
pub fn sin_pi_ratio(num: i64, den: i64) -> f64 {
    let (num, den) = reduce(num, den);
    if num == 0 || num == den {
        0.0
    } else if 2 * num == den {
        1.0
    } else if 2 * num == 3 * den {
        -1.0
    } else {
        (num as f64 / den as f64 * std::f64::consts::PI).sin()
    }
}

/// ω_n^e with ω_n = e^{-2πi/n}; the exponent is reduced mod n first.
pub fn unit_root(n: i64, e: i64) -> Complex64 {
    debug_assert!(n > 0);
    let e = e.rem_euclid(n);
    Complex64::new(cos_pi_ratio(2 * e, n), -sin_pi_ratio(2 * e, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_turns_are_exact() {
        assert_eq!(cos_pi_ratio(0, 4), 1.0);
        assert_eq!(cos_pi_ratio(1, 2), 0.0);
        assert_eq!(cos_pi_ratio(4, 4), -1.0);
        assert_eq!(cos_pi_ratio(3, 2), 0.0);
        assert_eq!(sin_pi_ratio(1, 2), 1.0);
        assert_eq!(sin_pi_ratio(3, 2), -1.0);
        assert_eq!(sin_pi_ratio(7, 7), 0.0);
        // reduction handles negatives
        assert_eq!(cos_pi_ratio(-1, 2), 0.0);
        assert_eq!(sin_pi_ratio(-1, 2), -1.0);
    }

    #[test]
    fn unit_roots_at_quarter_turns() {
        assert_eq!(unit_root(4, 0), Complex64::new(1.0, 0.0));
        assert_eq!(unit_root(4, 1), Complex64::new(0.0, -1.0));
        assert_eq!(unit_root(4, 2), Complex64::new(-1.0, 0.0));
        assert_eq!(unit_root(4, 3), Complex64::new(0.0, 1.0));
        assert_eq!(unit_root(4, -1), Complex64::new(0.0, 1.0));
    }

    #[test]
    fn generic_angles_match_std() {
        let v = cos_pi_ratio(3, 8);
        assert!((v - (3.0 * std::f64::consts::PI / 8.0).cos()).abs() < 1e-15);
    }
}
