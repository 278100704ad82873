//! Infinite shunt impedance sheet between two free-space half-spaces.
//!
//! This is the analytic surrogate used to separate sheet impedances that
//! transmit from those that mostly reflect.

use std::io::{self, Write};

use crate::csv_util::write_header;
use crate::field::Complex;
use crate::units::{sin_cos_deg, to_db, ETA0};
use crate::{Error, Result};

/// Default transmission criterion, dB.
pub const DEFAULT_ZONE_THRESHOLD_DB: f64 = -1.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SheetImpedance {
    pub resistance: f64,
    pub reactance: f64,
}

impl SheetImpedance {
    pub fn new(resistance: f64, reactance: f64) -> Result<Self> {
        if !(resistance >= 0.0) {
            return Err(Error::invalid("resistance", format!("{resistance} must be >= 0")));
        }
        Ok(Self {
            resistance,
            reactance,
        })
    }

    pub fn as_complex(&self) -> Complex {
        Complex::new(self.resistance, self.reactance)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZoneLabel {
    TransmissionZone,
    ForbiddenZone,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SheetResponse {
    pub s11: Complex,
    pub s21: Complex,
    /// Set for the shorting sheet `Z = 0`.
    pub degenerate: bool,
}

pub fn shunt_sheet_sparams(z: SheetImpedance, eta0: f64) -> SheetResponse {
    let z = z.as_complex();
    if z == Complex::new(0.0, 0.0) {
        return SheetResponse {
            s11: Complex::new(-1.0, 0.0),
            s21: Complex::new(0.0, 0.0),
            degenerate: true,
        };
    }
    let den = 2.0 * z + eta0;
    SheetResponse {
        s11: -eta0 / den,
        s21: 2.0 * z / den,
        degenerate: false,
    }
}

pub fn classify_zone(z: SheetImpedance, threshold_db: f64) -> ZoneLabel {
    let s21 = shunt_sheet_sparams(z, ETA0).s21;
    if to_db(s21.norm()) >= threshold_db {
        ZoneLabel::TransmissionZone
    } else {
        ZoneLabel::ForbiddenZone
    }
}

/// Reactance of the lossless sheet whose transmission phase is `phase_deg`.
///
/// The relation has period 180°: `X(φ) = X(φ + 180°)`.
pub fn reactance_from_phase(phase_deg: f64, eta0: f64) -> Result<f64> {
    let reduced = phase_deg.rem_euclid(180.0);
    if reduced == 0.0 || !reduced.is_finite() {
        return Err(Error::InfiniteReactance(phase_deg));
    }
    let (s, c) = sin_cos_deg(reduced);
    Ok(eta0 * c / (2.0 * s))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SheetRow {
    pub reactance: f64,
    pub s11_db: f64,
    pub s21_db: f64,
    pub s21_phase_deg: f64,
}

/// Samples the sheet response over `reactance ∈ [lo, hi]` at fixed resistance.
pub fn sweep_sheet(resistance: f64, range: (f64, f64), step: f64, eta0: f64) -> Result<Vec<SheetRow>> {
    let (lo, hi) = range;
    if !(step > 0.0) {
        return Err(Error::invalid("step", format!("{step} must be > 0")));
    }
    if !(hi >= lo) {
        return Err(Error::EmptyRange(format!("reactance [{lo}, {hi}]")));
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=n)
        .map(|i| {
            let x = lo + i as f64 * step;
            let r = shunt_sheet_sparams(SheetImpedance::new(resistance, x)?, eta0);
            Ok(SheetRow {
                reactance: x,
                s11_db: to_db(r.s11.norm()),
                s21_db: to_db(r.s21.norm()),
                s21_phase_deg: r.s21.arg().to_degrees(),
            })
        })
        .collect()
}

pub const SHEET_COLUMNS: [&str; 4] = ["reactance_ohm", "s11_db", "s21_db", "s21_phase_deg"];

pub fn write_sheet_csv<W: Write>(rows: &[SheetRow], mut w: W) -> io::Result<()> {
    write_header(&mut w, &SHEET_COLUMNS)?;
    for r in rows {
        writeln!(w, "{},{},{},{}", r.reactance, r.s11_db, r.s21_db, r.s21_phase_deg)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s21_db(r: f64, x: f64) -> f64 {
        to_db(shunt_sheet_sparams(SheetImpedance::new(r, x).unwrap(), ETA0).s21.norm())
    }

    #[test]
    fn anchor_points() {
        // 2Z/(2Z+η0) evaluated by hand: 0.29168 and 0.86681
        assert!((s21_db(20.0, 60.0) - (-10.701)).abs() < 1e-3);
        assert!((s21_db(20.0, 360.0) - (-1.2411)).abs() < 1e-3);
    }

    #[test]
    fn lossless_sheet_conserves_energy() {
        for x in [-1000.0, -360.0, -1.0, 0.5, 60.0, 1e4] {
            let r = shunt_sheet_sparams(SheetImpedance::new(0.0, x).unwrap(), ETA0);
            assert!((r.s11.norm_sqr() + r.s21.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn shorting_sheet_is_flagged() {
        let r = shunt_sheet_sparams(SheetImpedance::new(0.0, 0.0).unwrap(), ETA0);
        assert!(r.degenerate);
        assert_eq!(r.s11, Complex::new(-1.0, 0.0));
        assert_eq!(r.s21, Complex::new(0.0, 0.0));
    }

    #[test]
    fn zones() {
        let z = |x| SheetImpedance::new(20.0, x).unwrap();
        assert_eq!(classify_zone(z(0.0), -1.0), ZoneLabel::ForbiddenZone);
        assert_eq!(classify_zone(z(1000.0), -1.0), ZoneLabel::TransmissionZone);
        assert_eq!(classify_zone(z(0.0), -200.0), ZoneLabel::TransmissionZone);
        // 40/(40+η0) at X = 0
        assert!((s21_db(20.0, 0.0) - (-20.3559)).abs() < 1e-3);
    }

    #[test]
    fn reactance_phase_examples() {
        let x45 = reactance_from_phase(45.0, ETA0).unwrap();
        assert!((x45 - ETA0 / 2.0).abs() < 1e-9);
        assert_eq!(x45, reactance_from_phase(225.0, ETA0).unwrap());
        assert_eq!(reactance_from_phase(90.0, ETA0).unwrap(), 0.0);
        assert!(matches!(reactance_from_phase(0.0, ETA0), Err(Error::InfiniteReactance(_))));
        assert!(matches!(reactance_from_phase(-180.0, ETA0), Err(Error::InfiniteReactance(_))));
    }

    #[test]
    fn reactance_reproduces_lossless_phase() {
        for phase in [-80.0, -30.0, 10.0, 45.0, 89.0] {
            let x = reactance_from_phase(phase, ETA0).unwrap();
            let s21 = shunt_sheet_sparams(SheetImpedance::new(0.0, x).unwrap(), ETA0).s21;
            assert!((s21.arg().to_degrees() - phase).abs() < 1e-9, "{phase}");
        }
    }

    #[test]
    fn sweep_crosses_minus_one_db_between_360_and_440() {
        let rows = sweep_sheet(20.0, (0.0, 600.0), 10.0, ETA0).unwrap();
        assert_eq!(rows.len(), 61);
        let crossing = rows.windows(2).find(|w| w[0].s21_db < -1.0 && w[1].s21_db >= -1.0).unwrap();
        assert!(crossing[0].reactance >= 360.0 && crossing[1].reactance <= 440.0);
        let min = rows.iter().min_by(|a, b| a.s21_db.total_cmp(&b.s21_db)).unwrap();
        assert_eq!(min.reactance, 0.0);
    }

    #[test]
    fn sweep_errors() {
        assert!(matches!(sweep_sheet(20.0, (10.0, 0.0), 1.0, ETA0), Err(Error::EmptyRange(_))));
        assert!(sweep_sheet(20.0, (0.0, 10.0), 0.0, ETA0).is_err());
    }

    #[test]
    fn csv_has_schema_line() {
        let rows = sweep_sheet(0.0, (0.0, 20.0), 10.0, ETA0).unwrap();
        let mut buf = Vec::new();
        write_sheet_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "#schema: reactance_ohm,s11_db,s21_db,s21_phase_deg");
        assert_eq!(lines.next().unwrap(), "reactance_ohm,s11_db,s21_db,s21_phase_deg");
        assert_eq!(lines.count(), 3);
    }
}
