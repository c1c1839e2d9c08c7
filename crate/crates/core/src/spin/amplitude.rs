//! The amplitude abstraction that lets one solver kernel serve both real
//! and complex Hamiltonians.
//!
//! A Pauli string with an even number of `Y` factors has purely real
//! matrix elements, so a Hamiltonian whose terms are all even-`Y` can be
//! diagonalized entirely in real arithmetic — half the memory and a large
//! constant-factor speedup. The solvers pick `F` or `Complex<F>` as the
//! amplitude type after inspecting the terms; the kernels are generic over
//! this trait and never branch on it at runtime.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex;

use crate::scalar::Scalar;

/// State-vector amplitude: the real scalar itself or a complex pair over it.
pub trait Amplitude<F: Scalar>:
    Copy
    + Debug
    + Send
    + Sync
    + 'static
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + AddAssign
    + SubAssign
{
    /// Whether this amplitude carries an imaginary part.
    const IS_COMPLEX: bool;

    /// Additive identity.
    fn zero() -> Self;

    /// Embed a real value.
    fn from_real(r: F) -> Self;

    /// Build from real and imaginary parts; the real instantiation drops
    /// the imaginary part (used only for generic start-vector seeding).
    fn from_parts(re: F, im: F) -> Self;

    /// Multiply by `i^k`.
    ///
    /// The real instantiation supports only even `k` (the solvers guarantee
    /// this by construction); an odd power there is a kernel bug and panics.
    fn mul_i_pow(self, k: u32) -> Self;

    /// Complex conjugate (identity on the real path).
    fn conj(self) -> Self;

    /// Real part.
    fn re(self) -> F;

    /// Squared magnitude.
    fn abs2(self) -> F;

    /// Multiply by a real scalar.
    fn scale(self, s: F) -> Self;
}

impl<F: Scalar> Amplitude<F> for F {
    const IS_COMPLEX: bool = false;

    fn zero() -> Self {
        F::zero()
    }

    fn from_real(r: F) -> Self {
        r
    }

    fn from_parts(re: F, _im: F) -> Self {
        re
    }

    fn mul_i_pow(self, k: u32) -> Self {
        match k % 4 {
            0 => self,
            2 => -self,
            _ => panic!("odd power of i on the real amplitude path"),
        }
    }

    fn conj(self) -> Self {
        self
    }

    fn re(self) -> F {
        self
    }

    fn abs2(self) -> F {
        self * self
    }

    fn scale(self, s: F) -> Self {
        self * s
    }
}

impl<F: Scalar> Amplitude<F> for Complex<F> {
    const IS_COMPLEX: bool = true;

    fn zero() -> Self {
        Complex::new(F::zero(), F::zero())
    }

    fn from_real(r: F) -> Self {
        Complex::new(r, F::zero())
    }

    fn from_parts(re: F, im: F) -> Self {
        Complex::new(re, im)
    }

    fn mul_i_pow(self, k: u32) -> Self {
        match k % 4 {
            0 => self,
            1 => Complex::new(-self.im, self.re),
            2 => -self,
            _ => Complex::new(self.im, -self.re),
        }
    }

    fn conj(self) -> Self {
        Complex::new(self.re, -self.im)
    }

    fn re(self) -> F {
        self.re
    }

    fn abs2(self) -> F {
        self.re * self.re + self.im * self.im
    }

    fn scale(self, s: F) -> Self {
        Complex::new(self.re * s, self.im * s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers_of_i_complex() {
        let z: Complex<f64> = Complex::new(2.0, 1.0);
        assert_eq!(z.mul_i_pow(0), z);
        assert_eq!(z.mul_i_pow(1), Complex::new(-1.0, 2.0));
        assert_eq!(z.mul_i_pow(2), Complex::new(-2.0, -1.0));
        assert_eq!(z.mul_i_pow(3), Complex::new(1.0, -2.0));
        assert_eq!(z.mul_i_pow(4), z);
    }

    #[test]
    fn powers_of_i_real_even() {
        assert_eq!(Amplitude::<f64>::mul_i_pow(3.0, 0), 3.0);
        assert_eq!(Amplitude::<f64>::mul_i_pow(3.0, 2), -3.0);
        assert_eq!(Amplitude::<f64>::mul_i_pow(3.0, 6), -3.0);
    }

    #[test]
    #[should_panic(expected = "odd power of i")]
    fn odd_power_on_real_path_panics() {
        let _ = Amplitude::<f64>::mul_i_pow(1.0, 1);
    }

    #[test]
    fn conj_and_abs2() {
        let z: Complex<f64> = Complex::new(3.0, -4.0);
        assert_eq!(Amplitude::<f64>::conj(z), Complex::new(3.0, 4.0));
        assert_eq!(Amplitude::<f64>::abs2(z), 25.0);
        assert_eq!(Amplitude::<f64>::abs2(-5.0f64), 25.0);
    }
}
