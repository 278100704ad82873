//! 2×2 transmission (ABCD) matrices for cascading shunt elements and lines.

use std::ops::Mul;

use crate::field::Complex;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoPort {
    pub a: Complex,
    pub b: Complex,
    pub c: Complex,
    pub d: Complex,
}

impl TwoPort {
    pub fn identity() -> Self {
        let one = Complex::new(1.0, 0.0);
        let zero = Complex::new(0.0, 0.0);
        Self {
            a: one,
            b: zero,
            c: zero,
            d: one,
        }
    }

    pub fn shunt(y: Complex) -> Self {
        Self {
            c: y,
            ..Self::identity()
        }
    }

    /// Uniform line of characteristic impedance `z`, phase constant `beta`
    /// (rad/mm) and length `len` (mm).
    pub fn line(z: f64, beta: f64, len: f64) -> Self {
        let (s, c) = (beta * len).sin_cos();
        let j = Complex::new(0.0, 1.0);
        Self {
            a: Complex::new(c, 0.0),
            b: j * (z * s),
            c: j * (s / z),
            d: Complex::new(c, 0.0),
        }
    }

    pub fn pow(self, n: usize) -> Self {
        (0..n).fold(Self::identity(), |acc, _| acc * self)
    }

    pub fn determinant(&self) -> Complex {
        self.a * self.d - self.b * self.c
    }

    /// `(s11, s21)` with both ports referenced to `z0`.
    pub fn to_sparams(&self, z0: f64) -> (Complex, Complex) {
        let bz = self.b / z0;
        let cz = self.c * z0;
        let den = self.a + bz + cz + self.d;
        ((self.a + bz - cz - self.d) / den, 2.0 / den)
    }
}

impl Mul for TwoPort {
    type Output = TwoPort;

    fn mul(self, o: TwoPort) -> TwoPort {
        TwoPort {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_transparent() {
        let (s11, s21) = TwoPort::identity().to_sparams(50.0);
        assert_eq!(s11, Complex::new(0.0, 0.0));
        assert_eq!(s21, Complex::new(1.0, 0.0));
    }

    #[test]
    fn matched_line_is_pure_delay() {
        let (s11, s21) = TwoPort::line(50.0, 0.3, 2.0).to_sparams(50.0);
        assert!(s11.norm() < 1e-15);
        assert!((s21 - Complex::from_polar(1.0, -0.6)).norm() < 1e-15);
    }

    #[test]
    fn reciprocal_networks_have_unit_determinant() {
        let m = TwoPort::shunt(Complex::new(0.01, 0.02)) * TwoPort::line(120.0, 0.4, 3.0) * TwoPort::shunt(Complex::new(0.0, -0.05));
        assert!((m.determinant() - 1.0).norm() < 1e-12);
    }

    #[test]
    fn power_matches_repeated_product() {
        let m = TwoPort::line(80.0, 0.2, 1.5) * TwoPort::shunt(Complex::new(0.0, 0.01));
        let p = m.pow(3);
        let q = m * m * m;
        assert!((p.a - q.a).norm() < 1e-15 && (p.d - q.d).norm() < 1e-15);
        assert_eq!(m.pow(0), TwoPort::identity());
    }
}
