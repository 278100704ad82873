//! Unit system and a few exact-at-the-axes helpers.

use std::f64::consts::PI;

/// Speed of light in mm·GHz, so that `λ[mm] = C_MM_GHZ / f[GHz]`.
pub const C_MM_GHZ: f64 = 299.792458;

/// Free-space wave impedance in ohms.
pub const ETA0: f64 = 376.730;

/// Free-space wavenumber in rad/mm.
pub fn wavenumber(freq_ghz: f64) -> f64 {
    2.0 * PI * freq_ghz / C_MM_GHZ
}

pub fn wavelength(freq_ghz: f64) -> f64 {
    C_MM_GHZ / freq_ghz
}

/// Sine and cosine of an angle in degrees.
///
/// The argument is reduced to a quadrant first, so multiples of 90° give
/// exact zeros and ones.
pub fn sin_cos_deg(deg: f64) -> (f64, f64) {
    let r = deg.rem_euclid(360.0);
    let quadrant = (r / 90.0).floor();
    let rem = (r - 90.0 * quadrant).to_radians();
    let (s, c) = rem.sin_cos();
    match quadrant as i64 {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

/// Magnitude to dB (20·log10).
pub fn to_db(magnitude: f64) -> f64 {
    20.0 * magnitude.log10()
}

/// Great-circle separation in degrees between two `(theta, phi)` directions.
pub fn angular_separation_deg(a: (f64, f64), b: (f64, f64)) -> f64 {
    let unit = |(t, p): (f64, f64)| {
        let (st, ct) = sin_cos_deg(t);
        let (sp, cp) = sin_cos_deg(p);
        [st * cp, st * sp, ct]
    };
    let (u, v) = (unit(a), unit(b));
    let dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    let cross = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    let cross_norm = (cross[0].powi(2) + cross[1].powi(2) + cross[2].powi(2)).sqrt();
    cross_norm.atan2(dot).to_degrees()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sin_cos_exact_on_axes() {
        assert_eq!(sin_cos_deg(0.0), (0.0, 1.0));
        assert_eq!(sin_cos_deg(90.0), (1.0, 0.0));
        assert_eq!(sin_cos_deg(180.0), (0.0, -1.0));
        assert_eq!(sin_cos_deg(270.0), (-1.0, 0.0));
        assert_eq!(sin_cos_deg(-90.0), (-1.0, 0.0));
    }

    #[test]
    fn sin_cos_matches_std_off_axis() {
        for deg in [1.0, 29.5, 133.3, 200.0, 359.9, -45.0] {
            let (s, c) = sin_cos_deg(deg);
            let rad = f64::to_radians(deg);
            assert!((s - rad.sin()).abs() < 1e-14);
            assert!((c - rad.cos()).abs() < 1e-14);
        }
    }

    #[test]
    fn wavelength_at_12ghz() {
        assert!((wavelength(12.0) - 24.982705).abs() < 1e-6);
    }

    #[test]
    fn separation() {
        assert!(angular_separation_deg((0.0, 0.0), (0.0, 123.0)).abs() < 1e-12);
        assert!((angular_separation_deg((30.0, 0.0), (30.0, 180.0)) - 60.0).abs() < 1e-12);
        assert!((angular_separation_deg((10.0, 90.0), (12.5, 90.0)) - 2.5).abs() < 1e-12);
    }
}
