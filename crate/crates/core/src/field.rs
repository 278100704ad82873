//! Scalar wave fields and the two-step holography relations.
//!
//! Time convention is `exp(+jωt)`, so an outgoing wave carries `exp(-jkr)`.
//! All fields are evaluated on the aperture plane `z = 0`.

use serde::{Deserialize, Serialize};

use crate::units::sin_cos_deg;
use crate::{Error, Result};

pub type Complex = num_complex::Complex64;

/// A point on the aperture plane, in mm.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance_to(&self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// A desired far-field beam (object wave).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BeamSpec {
    theta0_deg: f64,
    phi0_deg: f64,
    weight: Complex,
}

impl BeamSpec {
    /// Unit-weight beam towards `(theta0, phi0)`.
    pub fn new(theta0_deg: f64, phi0_deg: f64) -> Result<Self> {
        Self::with_weight(theta0_deg, phi0_deg, Complex::new(1.0, 0.0))
    }

    pub fn with_weight(theta0_deg: f64, phi0_deg: f64, weight: Complex) -> Result<Self> {
        if !(0.0..90.0).contains(&theta0_deg) {
            return Err(Error::invalid("theta0_deg", format!("{theta0_deg} not in [0, 90)")));
        }
        if !(0.0..360.0).contains(&phi0_deg) {
            return Err(Error::invalid("phi0_deg", format!("{phi0_deg} not in [0, 360)")));
        }
        if weight == Complex::new(0.0, 0.0) || !weight.is_finite() {
            return Err(Error::invalid("weight", "must be finite and non-zero"));
        }
        Ok(Self {
            theta0_deg,
            phi0_deg,
            weight,
        })
    }

    pub fn theta0_deg(&self) -> f64 {
        self.theta0_deg
    }

    pub fn phi0_deg(&self) -> f64 {
        self.phi0_deg
    }

    pub fn weight(&self) -> Complex {
        self.weight
    }

    /// Transverse direction cosines `(sinθ cosφ, sinθ sinφ)`.
    pub fn direction_cosines(&self) -> (f64, f64) {
        let (st, _) = sin_cos_deg(self.theta0_deg);
        let (sp, cp) = sin_cos_deg(self.phi0_deg);
        (st * cp, st * sp)
    }
}

/// Feed phase-centre position and `cos^q` exponent.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeedGeometry {
    pub xf: f64,
    pub yf: f64,
    /// Height of the phase centre above the aperture plane, mm.
    pub height: f64,
    pub q: f64,
}

impl FeedGeometry {
    pub fn new(xf: f64, yf: f64, height: f64, q: f64) -> Result<Self> {
        let feed = Self { xf, yf, height, q };
        feed.validate()?;
        Ok(feed)
    }

    /// Feed centred over the aperture.
    pub fn centered(height: f64, q: f64) -> Result<Self> {
        Self::new(0.0, 0.0, height, q)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.height > 0.0 && self.height.is_finite()) {
            return Err(Error::invalid("feed height", format!("{} must be > 0", self.height)));
        }
        if !(self.q > 0.0 && self.q.is_finite()) {
            return Err(Error::invalid("feed q", format!("{} must be > 0", self.q)));
        }
        Ok(())
    }

    pub fn ground_projection(&self) -> Point {
        Point::new(self.xf, self.yf)
    }

    /// Distance from the phase centre to `p` on the aperture plane.
    pub fn distance_to(&self, p: Point) -> f64 {
        let d = p.distance_to(self.ground_projection());
        d.hypot(self.height)
    }
}

/// Object wave: a plane wave towards the beam direction, sampled at `z = 0`.
pub fn plane_wave(p: Point, beam: &BeamSpec, k0: f64) -> Complex {
    let (u, v) = beam.direction_cosines();
    beam.weight * Complex::from_polar(1.0, -k0 * (p.x * u + p.y * v))
}

/// Reference wave: unit-amplitude spherical phase front from the feed.
pub fn spherical_wave(p: Point, feed: &FeedGeometry, k0: f64) -> Complex {
    Complex::from_polar(1.0, -k0 * feed.distance_to(p))
}

/// Coherent sum of several object waves.
pub fn superpose(beams: &[BeamSpec], p: Point, k0: f64) -> Result<Complex> {
    if beams.is_empty() {
        return Err(Error::NoBeams);
    }
    Ok(beams.iter().map(|b| plane_wave(p, b, k0)).sum())
}

/// Interference intensity `|ψ_ref + ψ_obj|²`.
pub fn interference_intensity(reference: Complex, object: Complex) -> f64 {
    (reference + object).norm_sqr()
}

/// Second holography step: illuminate the recorded intensity with the
/// reconstruction wave, taken equal to the reference wave.
pub fn reconstruct(intensity: f64, reference: Complex) -> Result<Complex> {
    if intensity < 0.0 || intensity.is_nan() {
        return Err(Error::NegativeIntensity(intensity));
    }
    Ok(reference * intensity)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    fn close(a: Complex, b: Complex, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn plane_wave_is_one_at_origin() {
        let beam = BeamSpec::new(37.0, 211.0).unwrap();
        assert_eq!(plane_wave(Point::ORIGIN, &beam, 0.7), Complex::new(1.0, 0.0));
    }

    #[test]
    fn plane_wave_half_cycle() {
        // k0·x·sin30° = π
        let beam = BeamSpec::new(30.0, 0.0).unwrap();
        let v = plane_wave(Point::new(25.0, 0.0), &beam, 2.0 * PI / 25.0);
        assert!(close(v, Complex::new(-1.0, 0.0), 1e-12), "{v}");
    }

    #[test]
    fn broadside_plane_wave_is_constant() {
        let beam = BeamSpec::new(0.0, 0.0).unwrap();
        for (x, y) in [(10.0, -3.0), (-120.0, 55.5), (0.1, 0.2)] {
            assert_eq!(plane_wave(Point::new(x, y), &beam, 0.25), Complex::new(1.0, 0.0));
        }
    }

    #[test]
    fn spherical_wave_under_feed() {
        let feed = FeedGeometry::centered(25.0, 5.2).unwrap();
        let v = spherical_wave(Point::ORIGIN, &feed, 2.0 * PI / 25.0);
        assert!(close(v, Complex::new(1.0, 0.0), 1e-12));
    }

    #[test]
    fn spherical_wave_quarter_phase() {
        // r = 1.25 λ: (x, y, H) = (0.6, 0.8, 0.75)·λ with λ = 20 mm
        let lambda = 20.0;
        let feed = FeedGeometry::centered(0.75 * lambda, 1.0).unwrap();
        let v = spherical_wave(Point::new(0.6 * lambda, 0.8 * lambda), &feed, 2.0 * PI / lambda);
        assert!(close(v, Complex::new(0.0, -1.0), 1e-12), "{v}");
    }

    #[test]
    fn spherical_wave_point_symmetry() {
        let feed = FeedGeometry::centered(173.95, 5.2).unwrap();
        let k0 = crate::units::wavenumber(12.0);
        for (x, y) in [(13.2, -6.6), (100.0, 3.0)] {
            let a = spherical_wave(Point::new(x, y), &feed, k0);
            let b = spherical_wave(Point::new(-x, -y), &feed, k0);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn superpose_requires_beams() {
        assert!(matches!(superpose(&[], Point::ORIGIN, 1.0), Err(Error::NoBeams)));
    }

    #[test]
    fn superpose_single_equals_plane_wave() {
        let beam = BeamSpec::new(30.0, 45.0).unwrap();
        let p = Point::new(17.0, -4.0);
        assert_eq!(superpose(&[beam], p, 0.5).unwrap(), plane_wave(p, &beam, 0.5));
    }

    #[test]
    fn dual_beam_is_real_cosine() {
        let beams = [BeamSpec::new(30.0, 0.0).unwrap(), BeamSpec::new(30.0, 180.0).unwrap()];
        let k0 = crate::units::wavenumber(12.0);
        assert_eq!(superpose(&beams, Point::ORIGIN, k0).unwrap(), Complex::new(2.0, 0.0));
        for x in [3.3, 19.8, -71.0, 130.1] {
            let v = superpose(&beams, Point::new(x, 0.0), k0).unwrap();
            let expected = 2.0 * (k0 * x * 0.5).cos();
            assert!((v.re - expected).abs() < 1e-12);
            assert!(v.im.abs() < 1e-12);
        }
    }

    #[test]
    fn interference_examples() {
        let one = Complex::new(1.0, 0.0);
        assert_eq!(interference_intensity(one, one), 4.0);
        assert_eq!(interference_intensity(one, -one), 0.0);
        assert_eq!(interference_intensity(one, Complex::new(0.0, 1.0)), 2.0);
    }

    #[test]
    fn reconstruct_examples() {
        let j = Complex::new(0.0, 1.0);
        assert_eq!(reconstruct(0.0, j).unwrap(), Complex::new(0.0, 0.0));
        assert_eq!(reconstruct(1.0, j).unwrap(), j);
        assert!(matches!(reconstruct(-0.5, j), Err(Error::NegativeIntensity(_))));
    }

    #[test]
    fn reconstruction_contains_object_term() {
        // Expand I·ψ_ref term by term and remove everything but ψ_obj·|ψ_ref|².
        let reference = Complex::from_polar(1.0, 0.3);
        let object = Complex::from_polar(1.0, -1.9);
        let trans = reconstruct(interference_intensity(reference, object), reference).unwrap();
        let others = reference * reference.norm_sqr()
            + reference * object.norm_sqr()
            + object.conj() * reference * reference;
        let remainder = trans - others;
        assert!(close(remainder, object * reference.norm_sqr(), 1e-12), "{remainder}");
    }

    #[test]
    fn beam_validation() {
        assert!(BeamSpec::new(90.0, 0.0).is_err());
        assert!(BeamSpec::new(10.0, 360.0).is_err());
        assert!(BeamSpec::with_weight(10.0, 0.0, Complex::new(0.0, 0.0)).is_err());
        assert!(FeedGeometry::centered(0.0, 5.0).is_err());
        assert!(FeedGeometry::centered(10.0, 0.0).is_err());
    }
}
