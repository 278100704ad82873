//! Gridded cell S-parameters indexed by (frequency, incidence angle, radius).
//!
//! Angle and frequency are never blended: queries snap to the nearest bin,
//! ties going to the lower bin. Along radius the data is linear.

use std::io::{self, Read, Write};

use crate::csv_util::write_header;
use crate::field::Complex;
use crate::units::to_db;
use crate::{Error, Result};

use super::shunt_equivalent_admittance;

pub const CELL_TABLE_COLUMNS: [&str; 7] = ["freq_ghz", "theta_deg", "radius_mm", "s11_re", "s11_im", "s21_re", "s21_im"];

/// Dips in |s21| at least this deep relative to both neighbouring peaks are
/// treated as resonances and fenced off.
const NOTCH_PROMINENCE_DB: f64 = 3.0;
const PASSIVITY_SLACK: f64 = 1e-9;

/// Derived inversion data for one (frequency, angle) plane.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneInfo {
    /// Open radius intervals excluded around resonance notches.
    pub forbidden: Vec<(f64, f64)>,
    /// Inclusive radius-index ranges over which susceptance is strictly monotone.
    pub segments: Vec<(usize, usize)>,
    /// Extremes of susceptance over all segments.
    pub bounds: Option<(f64, f64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnitCellTable {
    freqs: Vec<f64>,
    angles: Vec<f64>,
    radii: Vec<f64>,
    s11: Vec<Complex>,
    s21: Vec<Complex>,
    eta0: f64,
    susceptance: Vec<f64>,
    planes: Vec<PlaneInfo>,
}

fn lerp(a: f64, b: f64, t: f64) -> f64 {
    (1.0 - t) * a + t * b
}

fn strictly_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

/// Index of the value closest to `x`; the lower one wins a tie.
fn nearest(values: &[f64], x: f64) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if (v - x).abs() < (values[best] - x).abs() {
            best = i;
        }
    }
    best
}

fn notch_intervals(radii: &[f64], mag_db: &[f64]) -> Vec<(f64, f64)> {
    let n = mag_db.len();
    let mut out = Vec::new();
    for i in 1..n.saturating_sub(1) {
        let v = mag_db[i];
        if !(v < mag_db[i - 1] && v <= mag_db[i + 1]) {
            continue;
        }
        let mut left = f64::NEG_INFINITY;
        for &m in mag_db[..i].iter().rev() {
            if m < v {
                break;
            }
            left = left.max(m);
        }
        let mut right = f64::NEG_INFINITY;
        for &m in &mag_db[i + 1..] {
            if m < v {
                break;
            }
            right = right.max(m);
        }
        if left.min(right) - v >= NOTCH_PROMINENCE_DB {
            out.push((radii[i - 1], radii[i + 1]));
        }
    }
    out
}

fn monotone_segments(radii: &[f64], b: &[f64], forbidden: &[(f64, f64)]) -> Vec<(usize, usize)> {
    let usable = |i: usize| {
        let (r0, r1) = (radii[i], radii[i + 1]);
        let clear = forbidden.iter().all(|&(lo, hi)| !(r0 < hi && r1 > lo));
        clear && b[i + 1] != b[i] && b[i].is_finite() && b[i + 1].is_finite()
    };
    let mut segs = Vec::new();
    let mut start: Option<(usize, bool)> = None;
    for i in 0..radii.len().saturating_sub(1) {
        let ok = usable(i);
        let dir = b[i + 1] > b[i];
        match start {
            Some((_, d)) if ok && d == dir => {}
            Some((s, _)) => {
                segs.push((s, i));
                start = ok.then_some((i, dir));
            }
            None if ok => start = Some((i, dir)),
            None => {}
        }
    }
    if let Some((s, _)) = start {
        segs.push((s, radii.len() - 1));
    }
    segs
}

impl UnitCellTable {
    /// Builds a table from values laid out frequency-major, then angle, then
    /// radius.
    pub fn from_grid(
        freqs: Vec<f64>,
        angles: Vec<f64>,
        radii: Vec<f64>,
        s11: Vec<Complex>,
        s21: Vec<Complex>,
        eta0: f64,
    ) -> Result<Self> {
        for (name, axis) in [("freq axis", &freqs), ("angle axis", &angles), ("radius axis", &radii)] {
            if axis.is_empty() || !strictly_increasing(axis) || axis.iter().any(|v| !v.is_finite()) {
                return Err(Error::invalid(name, "must be non-empty, finite and strictly increasing"));
            }
        }
        let n = freqs.len() * angles.len() * radii.len();
        if s11.len() != n || s21.len() != n {
            return Err(Error::invalid("table values", format!("expected {n} records")));
        }
        let nr = radii.len();
        let mut susceptance = Vec::with_capacity(n);
        for (k, s) in s21.iter().enumerate() {
            let (fi, ai, ri) = (k / nr / angles.len(), (k / nr) % angles.len(), k % nr);
            let mag = s.norm();
            if !(mag <= 1.0 + PASSIVITY_SLACK) || mag == 0.0 || !s11[k].is_finite() {
                return Err(Error::NonPassive {
                    freq: freqs[fi],
                    angle: angles[ai],
                    radius: radii[ri],
                    s21_mag: mag,
                });
            }
            susceptance.push(shunt_equivalent_admittance(*s, eta0).im);
        }
        let planes = (0..freqs.len() * angles.len())
            .map(|p| {
                let range = p * nr..(p + 1) * nr;
                let db: Vec<f64> = s21[range.clone()].iter().map(|s| to_db(s.norm())).collect();
                let forbidden = notch_intervals(&radii, &db);
                let b = &susceptance[range];
                let segments = monotone_segments(&radii, b, &forbidden);
                let bounds = segments
                    .iter()
                    .flat_map(|&(s, e)| b[s..=e].iter().copied())
                    .fold(None, |acc: Option<(f64, f64)>, v| match acc {
                        None => Some((v, v)),
                        Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
                    });
                PlaneInfo {
                    forbidden,
                    segments,
                    bounds,
                }
            })
            .collect();
        Ok(Self {
            freqs,
            angles,
            radii,
            s11,
            s21,
            eta0,
            susceptance,
            planes,
        })
    }

    pub fn freqs(&self) -> &[f64] {
        &self.freqs
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn eta0(&self) -> f64 {
        self.eta0
    }

    pub fn len(&self) -> usize {
        self.s21.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s21.is_empty()
    }

    pub fn radius_range(&self) -> (f64, f64) {
        (self.radii[0], self.radii[self.radii.len() - 1])
    }

    fn plane_index(&self, angle: f64, freq: f64) -> usize {
        nearest(&self.freqs, freq) * self.angles.len() + nearest(&self.angles, angle)
    }

    /// Angle and frequency of the bin a query resolves to.
    pub fn resolve_bin(&self, angle: f64, freq: f64) -> (f64, f64) {
        (self.angles[nearest(&self.angles, angle)], self.freqs[nearest(&self.freqs, freq)])
    }

    pub fn plane(&self, angle: f64, freq: f64) -> &PlaneInfo {
        &self.planes[self.plane_index(angle, freq)]
    }

    pub fn bounds(&self, angle: f64, freq: f64) -> Option<(f64, f64)> {
        self.plane(angle, freq).bounds
    }

    /// `(s11, s21)` of a stored grid point.
    pub fn record(&self, fi: usize, ai: usize, ri: usize) -> (Complex, Complex) {
        let k = (fi * self.angles.len() + ai) * self.radii.len() + ri;
        (self.s11[k], self.s21[k])
    }

    /// Extracted susceptances along radius for the plane nearest `(angle, freq)`.
    pub fn susceptance_curve(&self, angle: f64, freq: f64) -> &[f64] {
        let p = self.plane_index(angle, freq);
        &self.susceptance[p * self.radii.len()..(p + 1) * self.radii.len()]
    }

    fn s21_curve(&self, p: usize) -> &[Complex] {
        &self.s21[p * self.radii.len()..(p + 1) * self.radii.len()]
    }

    fn s11_curve(&self, p: usize) -> &[Complex] {
        &self.s11[p * self.radii.len()..(p + 1) * self.radii.len()]
    }

    fn bracket(&self, radius: f64) -> Result<(usize, f64)> {
        let (lo, hi) = self.radius_range();
        if !(radius >= lo && radius <= hi) {
            return Err(Error::RadiusOutOfRange { radius, lo, hi });
        }
        if self.radii.len() == 1 {
            return Ok((0, 0.0));
        }
        let i = self.radii.partition_point(|&r| r <= radius).clamp(1, self.radii.len() - 1) - 1;
        let t = (radius - self.radii[i]) / (self.radii[i + 1] - self.radii[i]);
        Ok((i, t))
    }

    fn interp_complex(curve: &[Complex], i: usize, t: f64) -> Complex {
        if t == 0.0 {
            return curve[i];
        }
        Complex::new(lerp(curve[i].re, curve[i + 1].re, t), lerp(curve[i].im, curve[i + 1].im, t))
    }

    pub fn susceptance_of(&self, radius: f64, angle: f64, freq: f64) -> Result<f64> {
        let (i, t) = self.bracket(radius)?;
        let p = self.plane_index(angle, freq);
        for &(lo, hi) in &self.planes[p].forbidden {
            if radius > lo && radius < hi {
                return Err(Error::ForbiddenRadius { radius, lo, hi });
            }
        }
        let b = self.susceptance_curve(angle, freq);
        Ok(if t == 0.0 { b[i] } else { lerp(b[i], b[i + 1], t) })
    }

    pub fn s21_at(&self, radius: f64, angle: f64, freq: f64) -> Result<Complex> {
        let (i, t) = self.bracket(radius)?;
        Ok(Self::interp_complex(self.s21_curve(self.plane_index(angle, freq)), i, t))
    }

    pub fn s11_at(&self, radius: f64, angle: f64, freq: f64) -> Result<Complex> {
        let (i, t) = self.bracket(radius)?;
        Ok(Self::interp_complex(self.s11_curve(self.plane_index(angle, freq)), i, t))
    }

    /// Radius realizing susceptance `b`, and whether `b` had to be clamped.
    ///
    /// Every monotone segment containing `b` yields a candidate; the one with
    /// the highest interpolated |s21| wins, the smaller radius on a tie.
    /// Values outside the bounds, or in a gap between segments, move to the
    /// nearest realizable susceptance.
    pub fn radius_from_susceptance(&self, b: f64, angle: f64, freq: f64) -> Result<(f64, bool)> {
        if !b.is_finite() {
            return Err(Error::invalid("susceptance", format!("{b} is not finite")));
        }
        let p = self.plane_index(angle, freq);
        let plane = &self.planes[p];
        let Some((b_min, b_max)) = plane.bounds else {
            return Err(Error::NoUsableBranch { angle, freq });
        };
        let mut target = b.clamp(b_min, b_max);
        let mut clamped = target != b;
        let curve = self.susceptance_curve(angle, freq);
        let s21 = self.s21_curve(p);

        let search = |target: f64| {
            let mut best: Option<(f64, f64)> = None;
            for &(s, e) in &plane.segments {
                for i in s..e {
                    let (b0, b1) = (curve[i], curve[i + 1]);
                    if !(target >= b0.min(b1) && target <= b0.max(b1)) {
                        continue;
                    }
                    let t = (target - b0) / (b1 - b0);
                    let r = lerp(self.radii[i], self.radii[i + 1], t);
                    let mag = lerp(s21[i].norm(), s21[i + 1].norm(), t);
                    let better = match best {
                        None => true,
                        Some((br, bm)) => mag > bm || (mag == bm && r < br),
                    };
                    if better {
                        best = Some((r, mag));
                    }
                }
            }
            best.map(|(r, _)| r)
        };

        if let Some(r) = search(target) {
            return Ok((r, clamped));
        }
        let nearest_b = plane
            .segments
            .iter()
            .flat_map(|&(s, e)| curve[s..=e].iter().copied())
            .min_by(|x, y| (x - target).abs().total_cmp(&(y - target).abs()))
            .ok_or(Error::NoUsableBranch { angle, freq })?;
        target = nearest_b;
        clamped = true;
        search(target).map(|r| (r, clamped)).ok_or(Error::NoUsableBranch { angle, freq })
    }
}

fn table_err(line: usize, msg: impl Into<String>) -> Error {
    Error::TableFormat { line, msg: msg.into() }
}

/// Reads a table in the `freq_ghz,theta_deg,radius_mm,s11_re,s11_im,s21_re,s21_im`
/// schema. Lines starting with `#` are ignored; record order is free.
pub fn load_cell_table<R: Read>(source: R, eta0: f64) -> Result<UnitCellTable> {
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_reader(source);
    let headers = rdr.headers().map_err(|e| table_err(1, e.to_string()))?.clone();
    if headers.iter().collect::<Vec<_>>() != CELL_TABLE_COLUMNS {
        return Err(table_err(1, format!("expected header {}", CELL_TABLE_COLUMNS.join(","))));
    }
    let mut rows: Vec<[f64; 7]> = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
            table_err(line, e.to_string())
        })?;
        let line = rec.position().map(|p| p.line() as usize).unwrap_or(0);
        let mut row = [0.0f64; 7];
        for (slot, field) in row.iter_mut().zip(rec.iter()) {
            *slot = field.parse().map_err(|_| table_err(line, format!("bad number `{field}`")))?;
        }
        if rec.len() != 7 || row.iter().any(|v| !v.is_finite()) {
            return Err(table_err(line, "expected 7 finite values"));
        }
        rows.push(row);
    }
    let axis = |col: usize| {
        let mut v: Vec<f64> = rows.iter().map(|r| r[col]).collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    };
    let (freqs, angles, radii) = (axis(0), axis(1), axis(2));
    if rows.is_empty() {
        return Err(table_err(2, "no records"));
    }
    let n = freqs.len() * angles.len() * radii.len();
    let mut s11 = vec![None; n];
    let mut s21 = vec![Complex::new(0.0, 0.0); n];
    let find = |axis: &[f64], v: f64| axis.binary_search_by(|x| x.total_cmp(&v)).unwrap_or(0);
    for r in &rows {
        let k = (find(&freqs, r[0]) * angles.len() + find(&angles, r[1])) * radii.len() + find(&radii, r[2]);
        if s11[k].is_some() {
            return Err(table_err(0, format!("duplicate record at f={}, theta={}, R={}", r[0], r[1], r[2])));
        }
        s11[k] = Some(Complex::new(r[3], r[4]));
        s21[k] = Complex::new(r[5], r[6]);
    }
    let missing: Vec<usize> = (0..n).filter(|&k| s11[k].is_none()).collect();
    if let Some(&k) = missing.first() {
        let nr = radii.len();
        let first = format!(
            "f={} theta={} R={}",
            freqs[k / nr / angles.len()],
            angles[(k / nr) % angles.len()],
            radii[k % nr]
        );
        return Err(Error::MissingGridPoints {
            count: missing.len(),
            first,
        });
    }
    let s11 = s11.into_iter().map(Option::unwrap_or_default).collect();
    UnitCellTable::from_grid(freqs, angles, radii, s11, s21, eta0)
}

pub fn write_cell_table<W: Write>(table: &UnitCellTable, mut w: W) -> io::Result<()> {
    write_header(&mut w, &CELL_TABLE_COLUMNS)?;
    for (fi, f) in table.freqs.iter().enumerate() {
        for (ai, a) in table.angles.iter().enumerate() {
            for (ri, r) in table.radii.iter().enumerate() {
                let (s11, s21) = table.record(fi, ai, ri);
                writeln!(w, "{f},{a},{r},{},{},{},{}", s11.re, s11.im, s21.re, s21.im)?;
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CellCurveRow {
    pub theta_deg: f64,
    pub radius_mm: f64,
    pub s21_db: f64,
    pub s21_phase_deg: f64,
    pub susceptance: f64,
    pub resistance: f64,
}

pub const CELL_CURVE_COLUMNS: [&str; 6] =
    ["theta_deg", "radius_mm", "s21_db", "s21_phase_deg", "susceptance_s", "resistance_ohm"];

impl UnitCellTable {
    /// Per-radius response at each requested angle bin. Phase is unwrapped
    /// along radius.
    pub fn curves(&self, angles: &[f64], freq: f64) -> Vec<CellCurveRow> {
        let mut rows = Vec::new();
        for &angle in angles {
            let p = self.plane_index(angle, freq);
            let (theta, _) = self.resolve_bin(angle, freq);
            let mut prev: Option<f64> = None;
            for (ri, &r) in self.radii.iter().enumerate() {
                let s21 = self.s21_curve(p)[ri];
                let mut phase = s21.arg().to_degrees();
                if let Some(pv) = prev {
                    phase -= 360.0 * ((phase - pv) / 360.0).round();
                }
                prev = Some(phase);
                let z = 1.0 / shunt_equivalent_admittance(s21, self.eta0);
                rows.push(CellCurveRow {
                    theta_deg: theta,
                    radius_mm: r,
                    s21_db: to_db(s21.norm()),
                    s21_phase_deg: phase,
                    susceptance: self.susceptance[p * self.radii.len() + ri],
                    resistance: z.re,
                });
            }
        }
        rows
    }
}

pub fn write_cell_curves_csv<W: Write>(rows: &[CellCurveRow], mut w: W) -> io::Result<()> {
    write_header(&mut w, &CELL_CURVE_COLUMNS)?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            r.theta_deg, r.radius_mm, r.s21_db, r.s21_phase_deg, r.susceptance, r.resistance
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::ETA0;

    // Single-sheet records with a prescribed susceptance profile.
    fn sheet_table(angles: Vec<f64>, radii: Vec<f64>, b_of: impl Fn(f64, f64) -> f64) -> UnitCellTable {
        let mut s11 = Vec::new();
        let mut s21 = Vec::new();
        for &a in &angles {
            for &r in &radii {
                let y = Complex::new(0.0, b_of(a, r));
                let den = 2.0 + y * ETA0;
                s21.push(2.0 / den);
                s11.push(-(y * ETA0) / den);
            }
        }
        UnitCellTable::from_grid(vec![12.0], angles, radii, s11, s21, ETA0).unwrap()
    }

    fn radii() -> Vec<f64> {
        (0..=28).map(|i| 0.1 + 0.1 * i as f64).collect()
    }

    #[test]
    fn grid_points_and_midpoints() {
        let t = sheet_table(vec![0.0], radii(), |_, r| 0.01 * (r - 1.5));
        let b = t.susceptance_curve(0.0, 12.0).to_vec();
        assert_eq!(t.susceptance_of(t.radii()[7], 0.0, 12.0).unwrap(), b[7]);
        let mid = 0.5 * (t.radii()[3] + t.radii()[4]);
        assert!((t.susceptance_of(mid, 0.0, 12.0).unwrap() - 0.5 * (b[3] + b[4])).abs() < 1e-15);
        assert!(matches!(t.susceptance_of(3.5, 0.0, 12.0), Err(Error::RadiusOutOfRange { .. })));
    }

    #[test]
    fn extraction_recovers_sheet_susceptance() {
        let t = sheet_table(vec![0.0], radii(), |_, r| 0.01 * (r - 1.5));
        for (r, b) in t.radii().iter().zip(t.susceptance_curve(0.0, 12.0)) {
            assert!((b - 0.01 * (r - 1.5)).abs() < 1e-12);
        }
    }

    #[test]
    fn nearest_bin_with_low_tie() {
        let t = sheet_table(vec![0.0, 30.0], radii(), |a, r| 0.001 * r + a * 1e-4);
        assert_eq!(t.resolve_bin(15.0, 12.0).0, 0.0);
        assert_eq!(t.resolve_bin(15.1, 12.0).0, 30.0);
        assert_eq!(t.resolve_bin(80.0, 99.0), (30.0, 12.0));
    }

    #[test]
    fn inverse_on_monotone_branch() {
        let t = sheet_table(vec![0.0], radii(), |_, r| 0.01 * (r - 1.5));
        let (lo, hi) = t.bounds(0.0, 12.0).unwrap();
        let end = *t.radii().last().unwrap();
        let (r, c) = t.radius_from_susceptance(hi, 0.0, 12.0).unwrap();
        assert_eq!((r, c), (end, false));
        let (r2, c2) = t.radius_from_susceptance(hi * 1.1, 0.0, 12.0).unwrap();
        assert_eq!((r2, c2), (end, true));
        assert!(t.radius_from_susceptance(lo - 1.0, 0.0, 12.0).unwrap().1);
        for b in [-0.0123, 0.0, 0.00377, 0.0129] {
            let (r, c) = t.radius_from_susceptance(b, 0.0, 12.0).unwrap();
            assert!(!c);
            assert!((t.susceptance_of(r, 0.0, 12.0).unwrap() - b).abs() < 1e-12);
        }
    }

    #[test]
    fn non_monotone_curve_prefers_transmission() {
        // rises to 0.02 at R = 1.5 then falls: every value has two candidates
        let t = sheet_table(vec![0.0], radii(), |_, r| 0.02 - 0.01 * (r - 1.5).abs());
        assert_eq!(t.plane(0.0, 12.0).segments.len(), 2);
        for b in [0.006, 0.012, 0.0185] {
            let (r, c) = t.radius_from_susceptance(b, 0.0, 12.0).unwrap();
            assert!(!c);
            assert!((t.susceptance_of(r, 0.0, 12.0).unwrap() - b).abs() < 1e-12);
            let mirror = 3.0 - r;
            let here = t.s21_at(r, 0.0, 12.0).unwrap().norm();
            let there = t.s21_at(mirror, 0.0, 12.0).unwrap().norm();
            assert!(here >= there - 1e-12);
        }
    }

    #[test]
    fn gap_between_segments_clamps_to_nearest_value() {
        // a spike at index 10 is a notch; its fence splits the curve in two
        let b_of = |_: f64, r: f64| {
            let i = ((r - 0.1) / 0.1).round();
            match i as i64 {
                ..=9 => 0.001 * i,
                10 => 0.1,
                _ => 0.001 * i + 0.01,
            }
        };
        let t = sheet_table(vec![0.0], radii(), b_of);
        assert_eq!(t.plane(0.0, 12.0).segments.len(), 2);
        let (r, c) = t.radius_from_susceptance(0.0125, 0.0, 12.0).unwrap();
        assert!(c);
        let got = t.susceptance_of(r, 0.0, 12.0).unwrap();
        let curve = t.susceptance_curve(0.0, 12.0);
        assert!(curve.contains(&got));
        assert!((got - 0.009).abs() < 1e-12, "{got}");
    }

    #[test]
    fn notch_is_forbidden() {
        let radii = radii();
        let mut s21: Vec<Complex> = radii.iter().map(|_| Complex::new(0.95, 0.0)).collect();
        s21[10] = Complex::new(0.2, 0.0);
        let s11 = vec![Complex::new(0.0, 0.0); radii.len()];
        let t = UnitCellTable::from_grid(vec![12.0], vec![0.0], radii.clone(), s11, s21, ETA0).unwrap();
        let plane = t.plane(0.0, 12.0);
        assert_eq!(plane.forbidden, vec![(radii[9], radii[11])]);
        assert!(matches!(t.susceptance_of(radii[10], 0.0, 12.0), Err(Error::ForbiddenRadius { .. })));
    }

    #[test]
    fn no_branch_on_flat_curve() {
        let t = sheet_table(vec![0.0], radii(), |_, _| 0.004);
        assert!(matches!(t.radius_from_susceptance(0.004, 0.0, 12.0), Err(Error::NoUsableBranch { .. })));
    }

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let t = sheet_table(vec![0.0, 5.0], radii(), |a, r| 0.013 * (r - 1.2) + a * 1e-5);
        let mut first = Vec::new();
        write_cell_table(&t, &mut first).unwrap();
        let back = load_cell_table(first.as_slice(), ETA0).unwrap();
        assert_eq!(back, t);
        let mut second = Vec::new();
        write_cell_table(&back, &mut second).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn load_rejects_gaps_and_gain() {
        let head = "#schema: x\nfreq_ghz,theta_deg,radius_mm,s11_re,s11_im,s21_re,s21_im\n";
        let gap = format!("{head}12,0,1,0,0,1,0\n12,0,2,0,0,1,0\n12,5,1,0,0,1,0\n");
        match load_cell_table(gap.as_bytes(), ETA0) {
            Err(Error::MissingGridPoints { count, first }) => {
                assert_eq!(count, 1);
                assert!(first.contains("theta=5") && first.contains("R=2"));
            }
            other => panic!("{other:?}"),
        }
        let gain = format!("{head}12,0,1,0,0,1.2,0\n");
        assert!(matches!(load_cell_table(gain.as_bytes(), ETA0), Err(Error::NonPassive { .. })));
        let bad = "freq,theta\n1,2\n";
        assert!(matches!(load_cell_table(bad.as_bytes(), ETA0), Err(Error::TableFormat { .. })));
    }
}
