//! `cos^q` feed model and aperture-efficiency bookkeeping.
//!
//! Feed boresight is normal to the aperture through the feed's ground
//! projection. The aperture is a disc of diameter `D` seen from a focal
//! distance `F = (F/D)·D`, so the rim subtends `θe = atan(0.5 / (F/D))`.

use std::io::{self, Write};

use crate::csv_util::write_header;
use crate::field::{Complex, FeedGeometry, Point};
use crate::quadrature::integrate;
use crate::{Error, Result};

const QUAD_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FeedModel {
    pub geometry: FeedGeometry,
    /// Informational only.
    pub gain_dbi: f64,
}

impl FeedModel {
    pub fn new(geometry: FeedGeometry) -> Self {
        Self {
            geometry,
            gain_dbi: f64::NAN,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EfficiencyReport {
    pub f_over_d: f64,
    pub spillover: f64,
    pub illumination: f64,
    pub total: f64,
    pub edge_taper_db: f64,
}

/// Feed illumination on the aperture plane, unit magnitude under the feed.
pub fn feed_field(p: Point, feed: &FeedModel, k0: f64) -> Complex {
    let g = &feed.geometry;
    let r = g.distance_to(p);
    let cos_t = g.height / r;
    Complex::from_polar(cos_t.powf(g.q) * cos_t, -k0 * r)
}

fn rim_angle(f_over_d: f64) -> f64 {
    (0.5 / f_over_d).atan()
}

pub fn edge_taper(q: f64, f_over_d: f64, include_spread: bool) -> f64 {
    let c = rim_angle(f_over_d).cos().log10();
    let spread = if include_spread { 20.0 * c } else { 0.0 };
    20.0 * q * c + spread
}

/// Fraction of the `cos^{2q}` power pattern falling inside the rim cone.
pub fn spillover_efficiency(q: f64, f_over_d: f64) -> f64 {
    1.0 - rim_angle(f_over_d).cos().powf(2.0 * q + 1.0)
}

/// Same quantity by direct integration of `cos^{2q}θ·sinθ`.
pub fn spillover_by_quadrature(q: f64, f_over_d: f64) -> f64 {
    let p = |t: f64| t.cos().powf(2.0 * q) * t.sin();
    let inside = integrate(p, 0.0, rim_angle(f_over_d), QUAD_TOL);
    inside * (2.0 * q + 1.0)
}

/// Taper efficiency `|∫E dA|² / (A ∫|E|² dA)` of the projected feed pattern
/// on a unit-diameter aperture.
pub fn illumination_efficiency(q: f64, f_over_d: f64, include_spread: bool) -> f64 {
    let a = 0.5;
    let h = f_over_d;
    let p = if include_spread { q + 1.0 } else { q };
    let e = |rho: f64| (h / rho.hypot(h)).powf(p);
    let first = integrate(|rho| e(rho) * rho, 0.0, a, QUAD_TOL);
    let second = integrate(|rho| e(rho).powi(2) * rho, 0.0, a, QUAD_TOL);
    (2.0 * first * first / (a * a * second)).min(1.0)
}

pub fn efficiency_report(q: f64, f_over_d: f64, include_spread: bool) -> Result<EfficiencyReport> {
    if !(q > 0.0 && q.is_finite()) {
        return Err(Error::invalid("q", format!("{q} must be > 0")));
    }
    if !(f_over_d > 0.0 && f_over_d.is_finite()) {
        return Err(Error::invalid("f_over_d", format!("{f_over_d} must be > 0")));
    }
    let spillover = spillover_efficiency(q, f_over_d);
    let illumination = illumination_efficiency(q, f_over_d, include_spread);
    Ok(EfficiencyReport {
        f_over_d,
        spillover,
        illumination,
        total: spillover * illumination,
        edge_taper_db: edge_taper(q, f_over_d, include_spread),
    })
}

const SCAN_POINTS: usize = 61;
const GOLDEN_TOL: f64 = 1e-5;

/// Maximizes total efficiency over `range` by golden-section search.
///
/// The profile is first sampled on a uniform grid; if it rises again after
/// falling the search refuses to run.
pub fn optimize_f_over_d(q: f64, range: (f64, f64), include_spread: bool) -> Result<(f64, EfficiencyReport)> {
    let (lo, hi) = range;
    if !(lo > 0.1 && hi < 3.0 && lo < hi) {
        return Err(Error::invalid("f_over_d range", format!("[{lo}, {hi}] not inside (0.1, 3)")));
    }
    let total = |fd: f64| -> Result<f64> { Ok(efficiency_report(q, fd, include_spread)?.total) };

    let step = (hi - lo) / (SCAN_POINTS - 1) as f64;
    let samples = (0..SCAN_POINTS)
        .map(|i| {
            let fd = lo + i as f64 * step;
            total(fd).map(|t| (fd, t))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut falling = false;
    for w in samples.windows(2) {
        let d = w[1].1 - w[0].1;
        if d < -1e-12 {
            falling = true;
        } else if falling && d > 1e-12 {
            let dump = samples.iter().map(|(f, t)| format!("{f:.4}:{t:.6}")).collect::<Vec<_>>().join(" ");
            return Err(Error::NotUnimodal { lo, hi, dump });
        }
    }
    let best = samples
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let mut a = samples[best.saturating_sub(1)].0;
    let mut b = samples[(best + 1).min(SCAN_POINTS - 1)].0;

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = total(c)?;
    let mut fd = total(d)?;
    while b - a > GOLDEN_TOL {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = total(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = total(d)?;
        }
    }
    let star = 0.5 * (a + b);
    Ok((star, efficiency_report(q, star, include_spread)?))
}

pub const FEED_OPT_COLUMNS: [&str; 7] = [
    "kind",
    "f_over_d",
    "focal_mm",
    "spillover",
    "illumination",
    "total",
    "edge_taper_db",
];

/// Writes sampled reports followed by the optimum row.
pub fn write_feed_opt_csv<W: Write>(
    samples: &[EfficiencyReport],
    optimum: &EfficiencyReport,
    diameter_mm: f64,
    mut w: W,
) -> io::Result<()> {
    write_header(&mut w, &FEED_OPT_COLUMNS)?;
    let rows = samples.iter().map(|r| ("sample", r)).chain(std::iter::once(("optimum", optimum)));
    for (kind, r) in rows {
        writeln!(
            w,
            "{kind},{},{},{},{},{},{}",
            r.f_over_d,
            r.f_over_d * diameter_mm,
            r.spillover,
            r.illumination,
            r.total,
            r.edge_taper_db
        )?;
    }
    Ok(())
}
