//! One-particle basis functions: Chebyshev polynomials and complex
//! spherical harmonics.

use num_complex::Complex;

use crate::scalar::Scalar;

/// `T_0(x), ..., T_n(x)` by the three-term recurrence.
pub fn chebyshev_table<T: Scalar>(n: usize, x: T) -> Vec<T> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(T::one());
    if n >= 1 {
        out.push(x);
    }
    let two = T::lit(2.0);
    for k in 2..=n {
        let v = two * x * out[k - 1] - out[k - 2];
        out.push(v);
    }
    out
}

/// Chebyshev polynomial of the first kind `T_n(x)`.
pub fn chebyshev<T: Scalar>(n: usize, x: T) -> T {
    chebyshev_table(n, x)[n]
}

/// Radial basis `R_n(r) = T_n(2r - 1)` on `[0, 1]`.
pub fn radial<T: Scalar>(n: usize, r: T) -> T {
    chebyshev(n, T::lit(2.0) * r - T::one())
}

/// Position of `Y_l^m` in a table produced by [`ylm_table`].
#[inline]
pub fn ylm_slot(l: usize, m: i64) -> usize {
    l * l + (l as i64 + m) as usize
}

/// Orthonormal associated Legendre functions `P_l^m(cos theta)` for
/// `0 <= m <= l <= lmax`, scaled so that `Y_l^m = P_l^m e^{i m phi}`, with
/// the Condon-Shortley phase. Indexed `[l][m]`.
pub fn normalized_legendre<T: Scalar>(lmax: usize, theta: T) -> Vec<Vec<T>> {
    let (s, x) = theta.sin_cos();
    let f = |v: usize| T::from_usize(v).expect("small integer");
    let mut p: Vec<Vec<T>> = (0..=lmax).map(|l| vec![T::zero(); l + 1]).collect();
    p[0][0] = (T::one() / (f(4) * T::PI())).sqrt();
    for m in 1..=lmax {
        p[m][m] = -(f(2 * m + 1) / f(2 * m)).sqrt() * s * p[m - 1][m - 1];
    }
    for m in 0..lmax {
        p[m + 1][m] = f(2 * m + 3).sqrt() * x * p[m][m];
    }
    for m in 0..=lmax {
        for l in (m + 2)..=lmax {
            let a = ((f(4 * l * l) - T::one()) / f(l * l - m * m)).sqrt();
            let b = (f((l - 1) * (l - 1) - m * m) / (f(4 * (l - 1) * (l - 1)) - T::one())).sqrt();
            p[l][m] = a * (x * p[l - 1][m] - b * p[l - 2][m]);
        }
    }
    p
}

/// Complex spherical harmonics `Y_l^m(theta, phi)` for all `l <= lmax`,
/// `|m| <= l`, laid out by [`ylm_slot`].
pub fn ylm_table<T: Scalar>(lmax: usize, theta: T, phi: T) -> Vec<Complex<T>> {
    let p = normalized_legendre(lmax, theta);
    let mut out = vec![Complex::new(T::zero(), T::zero()); (lmax + 1) * (lmax + 1)];
    for l in 0..=lmax {
        for m in 0..=l {
            let phase = Complex::from_polar(T::one(), T::from_usize(m).unwrap() * phi);
            let y = phase * p[l][m];
            out[ylm_slot(l, m as i64)] = y;
            if m > 0 {
                let sign = if m % 2 == 0 { T::one() } else { -T::one() };
                out[ylm_slot(l, -(m as i64))] = y.conj() * sign;
            }
        }
    }
    out
}

/// Single spherical harmonic `Y_l^m(theta, phi)`.
pub fn ylm<T: Scalar>(l: usize, m: i64, theta: T, phi: T) -> Complex<T> {
    assert!(m.unsigned_abs() as usize <= l, "|m| must not exceed l");
    ylm_table(l, theta, phi)[ylm_slot(l, m)]
}
