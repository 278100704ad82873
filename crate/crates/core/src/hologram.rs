//! Mathematical hologram, forbidden-zone shift and aperture sampling.

use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::csv_util::write_header;
use crate::field::{plane_wave, spherical_wave, BeamSpec, Complex, FeedGeometry, Point};
use crate::units::{wavelength, wavenumber};
use crate::{Error, Result};

/// Susceptance modulation constants, all in siemens.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModulationParams {
    pub x_avg: f64,
    pub m_depth: f64,
    pub shift_a: f64,
    pub shift_b: f64,
}

impl Default for ModulationParams {
    fn default() -> Self {
        Self {
            x_avg: -0.000041,
            m_depth: 0.009680,
            shift_a: 0.01287,
            shift_b: -0.01227,
        }
    }
}

impl ModulationParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.m_depth > 0.0) {
            return Err(Error::invalid("m_depth", format!("{} must be > 0", self.m_depth)));
        }
        if !(self.shift_a > 0.0 && self.shift_b < 0.0) {
            return Err(Error::invalid(
                "shift_a/shift_b",
                format!("need shift_a > 0 > shift_b, got {} and {}", self.shift_a, self.shift_b),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AntennaSpec {
    pub freq0: f64,
    pub aperture_radius: f64,
    pub period: f64,
    pub feed: FeedGeometry,
    pub beams: Vec<BeamSpec>,
    pub modulation: ModulationParams,
}

impl AntennaSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.freq0 > 0.0 && self.freq0.is_finite()) {
            return Err(Error::invalid("freq0", format!("{} must be > 0", self.freq0)));
        }
        if !(self.period > 0.0) {
            return Err(Error::invalid("period", format!("{} must be > 0", self.period)));
        }
        let half = wavelength(self.freq0) / 2.0;
        if self.period >= half {
            return Err(Error::Nyquist {
                period: self.period,
                half_wavelength: half,
            });
        }
        if !(self.aperture_radius >= self.period) {
            return Err(Error::invalid(
                "aperture_radius",
                format!("{} must be >= period {}", self.aperture_radius, self.period),
            ));
        }
        if self.beams.is_empty() {
            return Err(Error::NoBeams);
        }
        self.feed.validate()?;
        self.modulation.validate()
    }

    pub fn k0(&self) -> f64 {
        wavenumber(self.freq0)
    }

    pub fn aperture_area(&self) -> f64 {
        std::f64::consts::PI * self.aperture_radius * self.aperture_radius
    }

    fn weight_sum(&self) -> f64 {
        self.beams.iter().map(|b| b.weight().norm()).sum()
    }
}

/// `X + M·Re(ψ_obj·ψ_ref*)`, with the object sum scaled by `1/Σ|w|` so the
/// value always stays within `X ± M`.
pub fn continuous_hologram(p: Point, spec: &AntennaSpec) -> f64 {
    let k0 = spec.k0();
    let obj: Complex = spec.beams.iter().map(|b| plane_wave(p, b, k0)).sum();
    let reference = spherical_wave(p, &spec.feed, k0);
    let m = &spec.modulation;
    m.x_avg + m.m_depth * (obj * reference.conj()).re / spec.weight_sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    Neg,
    Pos,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::Neg => "neg",
            Branch::Pos => "pos",
        }
    }
}

/// Moves negative values up by `A` and the rest down by `B`. Zero goes with
/// the positive branch.
pub fn htafz_shift(b_raw: f64, p: &ModulationParams) -> (f64, Branch) {
    if b_raw < 0.0 {
        (b_raw + p.shift_a, Branch::Neg)
    } else {
        (b_raw + p.shift_b, Branch::Pos)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CellRecord {
    pub center: Point,
    pub b_raw: f64,
    pub b_shifted: f64,
    pub branch: Branch,
    pub incidence_deg: f64,
    pub radius_mm: Option<f64>,
    pub clamped: bool,
}

#[derive(Clone, Debug)]
pub struct HologramMap {
    pub spec: AntennaSpec,
    pub cells: Vec<CellRecord>,
}

impl HologramMap {
    pub fn clamp_fraction(&self) -> f64 {
        if self.cells.is_empty() {
            return 0.0;
        }
        self.cells.iter().filter(|c| c.clamped).count() as f64 / self.cells.len() as f64
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Cell centres of the square lattice of pitch `period` centred on the
/// origin, kept when inside `radius`. Ordered by row (y), then x.
pub fn lattice_points(radius: f64, period: f64) -> Vec<Point> {
    let n = (radius / period).floor() as i64 + 1;
    let mut pts = Vec::new();
    for j in -n..=n {
        for i in -n..=n {
            let p = Point::new(i as f64 * period, j as f64 * period);
            if p.x.hypot(p.y) <= radius + 1e-9 {
                pts.push(p);
            }
        }
    }
    pts
}

pub fn sample_aperture(spec: &AntennaSpec) -> Result<HologramMap> {
    spec.validate()?;
    let pts = lattice_points(spec.aperture_radius, spec.period);
    if pts.is_empty() {
        return Err(Error::EmptyAperture);
    }
    let foot = spec.feed.ground_projection();
    let cells = pts
        .par_iter()
        .map(|&p| {
            let b_raw = continuous_hologram(p, spec);
            let (b_shifted, branch) = htafz_shift(b_raw, &spec.modulation);
            CellRecord {
                center: p,
                b_raw,
                b_shifted,
                branch,
                incidence_deg: p.distance_to(foot).atan2(spec.feed.height).to_degrees(),
                radius_mm: None,
                clamped: false,
            }
        })
        .collect();
    Ok(HologramMap {
        spec: spec.clone(),
        cells,
    })
}

pub const HOLOGRAM_COLUMNS: [&str; 8] = [
    "x_mm",
    "y_mm",
    "b_raw_s",
    "b_shifted_s",
    "branch",
    "incidence_deg",
    "radius_mm",
    "clamped",
];

/// Unfilled radii are written as empty fields.
pub fn write_hologram_csv<W: Write>(map: &HologramMap, mut w: W) -> io::Result<()> {
    write_header(&mut w, &HOLOGRAM_COLUMNS)?;
    for c in &map.cells {
        let radius = c.radius_mm.map(|r| r.to_string()).unwrap_or_default();
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            c.center.x,
            c.center.y,
            c.b_raw,
            c.b_shifted,
            c.branch.as_str(),
            c.incidence_deg,
            radius,
            c.clamped
        )?;
    }
    Ok(())
}
