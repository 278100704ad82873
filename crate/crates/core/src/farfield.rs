//! Transmitted aperture field and its scalar far-field pattern.
//!
//! `E(θ,φ) = Σ aᵢ·exp(+j·k0·(xᵢ·u + yᵢ·v))`, `u = sinθcosφ`, `v = sinθsinφ`.
//! Cells are isotropic unless the `cos θ` element factor is requested.

use std::f64::consts::PI;
use std::io::{self, Write};

use rayon::prelude::*;

use crate::csv_util::write_header;
use crate::feed::{feed_field, FeedModel};
use crate::field::{Complex, Point};
use crate::hologram::HologramMap;
use crate::unit_cell::UnitCellTable;
use crate::units::{sin_cos_deg, to_db, wavelength, wavenumber};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ApertureField {
    pub freq: f64,
    pub cells: Vec<(Point, Complex)>,
    /// Share of incident feed power reflected by the cells, `Σ|f·s11|² / Σ|f|²`.
    pub reflected_fraction: f64,
}

impl ApertureField {
    /// Equal, in-phase samples at the given points.
    pub fn uniform(points: &[Point], freq: f64) -> Self {
        Self {
            freq,
            cells: points.iter().map(|&p| (p, Complex::new(1.0, 0.0))).collect(),
            reflected_fraction: 0.0,
        }
    }
}

/// Feed illumination times the cell transmission, radii frozen as designed.
pub fn aperture_field(map: &HologramMap, table: &UnitCellTable, feed: &FeedModel, freq: f64) -> Result<ApertureField> {
    let k0 = wavenumber(freq);
    let rows = map
        .cells
        .par_iter()
        .map(|c| {
            let at = |e: Error| e.at_cell(c.center.x, c.center.y);
            let r = c.radius_mm.ok_or_else(|| at(Error::UnrealizedMap))?;
            let s21 = table.s21_at(r, c.incidence_deg, freq).map_err(at)?;
            let s11 = table.s11_at(r, c.incidence_deg, freq).map_err(at)?;
            let f = feed_field(c.center, feed, k0);
            Ok(((c.center, f * s21), f.norm_sqr(), (f * s11).norm_sqr()))
        })
        .collect::<Result<Vec<_>>>()?;
    let incident: f64 = rows.iter().map(|r| r.1).sum();
    let reflected: f64 = rows.iter().map(|r| r.2).sum();
    Ok(ApertureField {
        freq,
        cells: rows.into_iter().map(|r| r.0).collect(),
        reflected_fraction: if incident > 0.0 { reflected / incident } else { 0.0 },
    })
}

/// Regular (θ, φ) grid in degrees.
#[derive(Clone, Debug, PartialEq)]
pub struct AngularGrid {
    pub thetas: Vec<f64>,
    pub phis: Vec<f64>,
}

fn steps(lo: f64, hi: f64, step: f64, inclusive: bool) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(hi >= lo) {
        return Err(Error::invalid("angular grid", format!("[{lo}, {hi}] step {step}")));
    }
    let n = ((hi - lo) / step).round();
    if ((lo + n * step) - hi).abs() > 1e-9 {
        return Err(Error::invalid("angular grid", format!("step {step} does not divide [{lo}, {hi}]")));
    }
    let n = n as usize;
    let last = if inclusive { n } else { n.saturating_sub(1) };
    Ok((0..=last).map(|i| lo + i as f64 * step).collect())
}

impl AngularGrid {
    pub fn new(thetas: Vec<f64>, phis: Vec<f64>) -> Result<Self> {
        if thetas.is_empty() || phis.is_empty() {
            return Err(Error::invalid("angular grid", "empty axis"));
        }
        if thetas.iter().any(|t| !(0.0..=90.0).contains(t)) {
            return Err(Error::invalid("angular grid", "theta must lie in [0, 90]"));
        }
        Ok(Self { thetas, phis })
    }

    /// `θ ∈ [0, 90]`, `φ ∈ [0, 360)`, both at `step` degrees.
    pub fn hemisphere(step: f64) -> Result<Self> {
        Self::new(steps(0.0, 90.0, step, true)?, steps(0.0, 360.0, step, false)?)
    }

    /// Box of half-width `half` around a direction, clipped to `θ ∈ [0, 90]`.
    pub fn window(center: (f64, f64), half: f64, step: f64) -> Result<Self> {
        let n = (half / step).round() as i64;
        let thetas = (-n..=n)
            .map(|i| center.0 + i as f64 * step)
            .filter(|t| (0.0..=90.0).contains(t))
            .collect();
        let phis = (-n..=n).map(|i| center.1 + i as f64 * step).collect();
        Self::new(thetas, phis)
    }

    fn theta_step(&self) -> Option<f64> {
        uniform_step(&self.thetas)
    }

    fn phi_step(&self) -> Option<f64> {
        uniform_step(&self.phis)
    }

    /// True when the grid spans the full forward hemisphere evenly.
    pub fn is_hemisphere(&self) -> bool {
        let (Some(dt), Some(dp)) = (self.theta_step(), self.phi_step()) else {
            return false;
        };
        self.thetas[0] == 0.0
            && (self.thetas[self.thetas.len() - 1] - 90.0).abs() < 1e-9
            && self.phis[0] == 0.0
            && (self.phis[self.phis.len() - 1] + dp - 360.0).abs() < 1e-9
            && dt > 0.0
    }
}

fn uniform_step(v: &[f64]) -> Option<f64> {
    if v.len() < 2 {
        return None;
    }
    let d = (v[v.len() - 1] - v[0]) / (v.len() - 1) as f64;
    v.windows(2).all(|w| ((w[1] - w[0]) - d).abs() < 1e-9).then_some(d)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadiationPattern {
    pub grid: AngularGrid,
    /// θ-major: index `i·n_phi + j`.
    pub field: Vec<Complex>,
    pub freq: f64,
}

impl RadiationPattern {
    pub fn n_phi(&self) -> usize {
        self.grid.phis.len()
    }

    pub fn at(&self, ti: usize, pj: usize) -> Complex {
        self.field[ti * self.n_phi() + pj]
    }

    fn mag(&self, ti: usize, pj: usize) -> f64 {
        self.at(ti, pj).norm()
    }

    /// Copy scaled to unit peak magnitude.
    pub fn normalized(&self) -> Self {
        let peak = self.field.iter().map(|e| e.norm()).fold(0.0, f64::max);
        let scale = if peak > 0.0 { 1.0 / peak } else { 1.0 };
        Self {
            grid: self.grid.clone(),
            field: self.field.iter().map(|e| e * scale).collect(),
            freq: self.freq,
        }
    }

    /// Grid indices of the largest magnitude; the first one wins a tie.
    pub fn peak_index(&self) -> (usize, usize) {
        let mut best = 0;
        for (k, e) in self.field.iter().enumerate() {
            if e.norm() > self.field[best].norm() {
                best = k;
            }
        }
        (best / self.n_phi(), best % self.n_phi())
    }

    /// Parabolic refinement of a grid maximum in θ and φ (on dB values).
    pub fn refine(&self, ti: usize, pj: usize) -> (f64, f64) {
        let db = |t: usize, p: usize| to_db(self.mag(t, p).max(1e-300));
        let vertex = |a: f64, b: f64, c: f64| {
            let den = a - 2.0 * b + c;
            if den < 0.0 {
                (0.5 * (a - c) / den).clamp(-0.5, 0.5)
            } else {
                0.0
            }
        };
        let g = &self.grid;
        let mut theta = g.thetas[ti];
        let mut phi = g.phis[pj];
        let np = self.n_phi();
        if let Some(dt) = g.theta_step() {
            if ti > 0 && ti + 1 < g.thetas.len() {
                theta += dt * vertex(db(ti - 1, pj), db(ti, pj), db(ti + 1, pj));
            }
        }
        if let Some(dp) = g.phi_step() {
            let wraps = (np as f64 * dp - 360.0).abs() < 1e-9;
            let left = if pj > 0 { Some(pj - 1) } else if wraps { Some(np - 1) } else { None };
            let right = if pj + 1 < np { Some(pj + 1) } else if wraps { Some(0) } else { None };
            if let (Some(l), Some(r)) = (left, right) {
                if theta > 0.0 && g.thetas[ti] > 0.0 {
                    phi += dp * vertex(db(ti, l), db(ti, pj), db(ti, r));
                }
            }
        }
        (theta, phi.rem_euclid(360.0))
    }

    /// Largest sample within `within_deg` of `center`, refined, with its
    /// magnitude.
    pub fn local_peak(&self, center: (f64, f64), within_deg: f64) -> Option<((f64, f64), f64)> {
        let mut best: Option<(usize, usize)> = None;
        for (ti, &t) in self.grid.thetas.iter().enumerate() {
            for (pj, &p) in self.grid.phis.iter().enumerate() {
                if crate::units::angular_separation_deg((t, p), center) > within_deg {
                    continue;
                }
                if best.is_none_or(|(bt, bp)| self.mag(ti, pj) > self.mag(bt, bp)) {
                    best = Some((ti, pj));
                }
            }
        }
        best.map(|(ti, pj)| (self.refine(ti, pj), self.mag(ti, pj)))
    }

    /// `∫∫|E|² sinθ dθ dφ` over the hemisphere: trapezoid in θ, periodic
    /// rectangle rule in φ.
    pub fn radiated_power(&self) -> Result<f64> {
        if !self.grid.is_hemisphere() {
            return Err(Error::IncompleteGrid);
        }
        let dt = self.grid.theta_step().unwrap_or(0.0).to_radians();
        let dp = self.grid.phi_step().unwrap_or(0.0).to_radians();
        let nt = self.grid.thetas.len();
        let np = self.n_phi();
        let total: f64 = (0..nt)
            .map(|ti| {
                let w = if ti == 0 || ti == nt - 1 { 0.5 } else { 1.0 };
                let (s, _) = sin_cos_deg(self.grid.thetas[ti]);
                let ring: f64 = (0..np).map(|pj| self.at(ti, pj).norm_sqr()).sum();
                w * s * ring
            })
            .sum();
        Ok(total * dt * dp)
    }
}

/// Pattern summation. Cells are grouped by row so that each direction needs
/// only one complex exponential per distinct x and per distinct y.
pub fn radiation_pattern(ap: &ApertureField, grid: &AngularGrid, element_factor: bool) -> RadiationPattern {
    let k0 = wavenumber(ap.freq);
    let mut xs: Vec<f64> = ap.cells.iter().map(|c| c.0.x).collect();
    let mut ys: Vec<f64> = ap.cells.iter().map(|c| c.0.y).collect();
    for v in [&mut xs, &mut ys] {
        v.sort_by(f64::total_cmp);
        v.dedup();
    }
    let index = |v: &[f64], x: f64| v.binary_search_by(|a| a.total_cmp(&x)).unwrap_or(0);
    // rows[j] = [(x index, amplitude)] for cells at ys[j]
    let mut rows: Vec<Vec<(usize, Complex)>> = vec![Vec::new(); ys.len()];
    for &(p, a) in &ap.cells {
        rows[index(&ys, p.y)].push((index(&xs, p.x), a));
    }

    let np = grid.phis.len();
    let dirs: Vec<(f64, f64, f64)> = grid
        .thetas
        .iter()
        .flat_map(|&t| {
            let (st, ct) = sin_cos_deg(t);
            grid.phis.iter().map(move |&p| {
                let (sp, cp) = sin_cos_deg(p);
                (st * cp, st * sp, ct)
            })
        })
        .collect();
    let field = dirs
        .par_iter()
        .map_init(
            || (vec![Complex::new(0.0, 0.0); xs.len()], vec![Complex::new(0.0, 0.0); ys.len()]),
            |(ex, ey), &(u, v, ct)| {
                for (e, &x) in ex.iter_mut().zip(&xs) {
                    *e = Complex::from_polar(1.0, k0 * x * u);
                }
                for (e, &y) in ey.iter_mut().zip(&ys) {
                    *e = Complex::from_polar(1.0, k0 * y * v);
                }
                let mut sum = Complex::new(0.0, 0.0);
                for (row, &w) in rows.iter().zip(ey.iter()) {
                    let mut acc = Complex::new(0.0, 0.0);
                    for &(i, a) in row {
                        acc += a * ex[i];
                    }
                    sum += acc * w;
                }
                if element_factor {
                    sum * ct
                } else {
                    sum
                }
            },
        )
        .collect();
    debug_assert_eq!(np * grid.thetas.len(), dirs.len());
    RadiationPattern {
        grid: grid.clone(),
        field,
        freq: ap.freq,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PatternMetrics {
    pub peak_direction: (f64, f64),
    pub directivity_dbi: f64,
    pub sll_db: f64,
    pub beamwidth_3db: f64,
    pub aperture_efficiency: f64,
}

/// Indices of the main lobe: every sample reachable from the peak by
/// non-increasing steps. The θ = 0 row is a single point, so all of it is
/// joined together.
fn main_lobe(p: &RadiationPattern, start: (usize, usize)) -> Vec<bool> {
    let nt = p.grid.thetas.len();
    let np = p.n_phi();
    let wraps = p.grid.phi_step().is_some_and(|d| (np as f64 * d - 360.0).abs() < 1e-9);
    let pole = p.grid.thetas[0] == 0.0;
    let mut seen = vec![false; nt * np];
    let mut stack = vec![start];
    seen[start.0 * np + start.1] = true;
    let mut pole_done = false;
    while let Some((ti, pj)) = stack.pop() {
        let here = p.mag(ti, pj);
        let mut nbrs: Vec<(usize, usize)> = Vec::with_capacity(4);
        if ti > 0 {
            nbrs.push((ti - 1, pj));
        }
        if ti + 1 < nt {
            nbrs.push((ti + 1, pj));
        }
        if pj > 0 {
            nbrs.push((ti, pj - 1));
        } else if wraps {
            nbrs.push((ti, np - 1));
        }
        if pj + 1 < np {
            nbrs.push((ti, pj + 1));
        } else if wraps {
            nbrs.push((ti, 0));
        }
        if ti == 0 && pole && !pole_done {
            pole_done = true;
            for k in 0..np {
                nbrs.push((0, k));
                if nt > 1 {
                    nbrs.push((1, k));
                }
            }
        }
        for (t, q) in nbrs {
            let k = t * np + q;
            if !seen[k] && p.mag(t, q) <= here {
                seen[k] = true;
                stack.push((t, q));
            }
        }
    }
    seen
}

/// Half-power width of the cut through the peak along θ, continuing across
/// the pole into `φ + 180°`.
fn beamwidth(p: &RadiationPattern, ti: usize, pj: usize) -> f64 {
    let np = p.n_phi();
    let phi_back = (p.grid.phis[pj] + 180.0).rem_euclid(360.0);
    let back = (0..np)
        .min_by(|&a, &b| {
            let da = (p.grid.phis[a] - phi_back).abs();
            let db = (p.grid.phis[b] - phi_back).abs();
            da.total_cmp(&db)
        })
        .unwrap_or(pj);
    let pole = p.grid.thetas[0] == 0.0;
    // signed cut: s ≥ 0 on the peak column, s < 0 on the opposite one
    let mut cut: Vec<(f64, f64)> = Vec::new();
    if pole {
        for t in (1..p.grid.thetas.len()).rev() {
            cut.push((-p.grid.thetas[t], p.mag(t, back)));
        }
    }
    for (t, &theta) in p.grid.thetas.iter().enumerate() {
        cut.push((theta, p.mag(t, pj)));
    }
    let centre = cut.iter().position(|c| c.0 == p.grid.thetas[ti]).unwrap_or(0);
    let half = cut[centre].1 / 2f64.sqrt();
    let cross = |range: &mut dyn Iterator<Item = usize>, step: isize| -> Option<f64> {
        for i in range {
            let j = (i as isize - step) as usize;
            if cut[i].1 < half {
                let (s0, m0) = cut[j];
                let (s1, m1) = cut[i];
                let t = (m0 - half) / (m0 - m1);
                return Some(s0 + t * (s1 - s0));
            }
        }
        None
    };
    let hi = cross(&mut (centre + 1..cut.len()), 1);
    let lo = cross(&mut (0..centre).rev(), -1);
    match (lo, hi) {
        (Some(l), Some(h)) => h - l,
        _ => f64::NAN,
    }
}

pub fn pattern_metrics(p: &RadiationPattern, aperture_area: f64) -> Result<PatternMetrics> {
    let (ti, pj) = p.peak_index();
    // the horizon bounds a hemisphere grid physically, not as a truncation
    let open_edge = !p.grid.is_hemisphere();
    if open_edge && ti + 1 == p.grid.thetas.len() && p.grid.thetas.len() > 1 {
        return Err(Error::MainLobeClipped);
    }
    let peak = p.mag(ti, pj);
    let lobe = main_lobe(p, (ti, pj));
    if open_edge && lobe.iter().enumerate().any(|(k, &inside)| inside && k / p.n_phi() + 1 == p.grid.thetas.len()) {
        return Err(Error::MainLobeClipped);
    }
    let side = p
        .field
        .iter()
        .zip(&lobe)
        .filter(|(_, &inside)| !inside)
        .map(|(e, _)| e.norm())
        .fold(0.0, f64::max);
    let power = p.radiated_power()?;
    let directivity = 4.0 * PI * peak * peak / power;
    let lambda = wavelength(p.freq);
    Ok(PatternMetrics {
        peak_direction: p.refine(ti, pj),
        directivity_dbi: 10.0 * directivity.log10(),
        sll_db: to_db(side / peak),
        beamwidth_3db: beamwidth(p, ti, pj),
        aperture_efficiency: directivity * lambda * lambda / (4.0 * PI * aperture_area),
    })
}

pub const PATTERN_COLUMNS: [&str; 5] = ["theta_deg", "phi_deg", "e_re", "e_im", "mag_db"];

/// Writes the pattern normalized to unit peak.
pub fn write_pattern_csv<W: Write>(p: &RadiationPattern, mut w: W) -> io::Result<()> {
    let n = p.normalized();
    write_header(&mut w, &PATTERN_COLUMNS)?;
    for (ti, t) in n.grid.thetas.iter().enumerate() {
        for (pj, ph) in n.grid.phis.iter().enumerate() {
            let e = n.at(ti, pj);
            writeln!(w, "{t},{ph},{},{},{}", e.re, e.im, to_db(e.norm()))?;
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub freq: f64,
    pub gain_dbi: f64,
    pub peak_theta: f64,
    pub peak_phi: f64,
    pub reflected_fraction: f64,
}

/// Contiguous band around the design frequency where gain stays within 1 dB
/// of the sweep maximum. An edge that reaches the end of the sweep without a
/// crossing is flagged open.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bandwidth {
    pub lo: f64,
    pub hi: f64,
    pub open_lo: bool,
    pub open_hi: bool,
    pub relative: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub freq0: f64,
    pub theta0: f64,
    pub rows: Vec<SweepRow>,
    pub bandwidth: Option<Bandwidth>,
}

impl SweepResult {
    /// `|peak_theta(f) − θ₀|` for every row.
    pub fn squint(&self) -> Vec<(f64, f64)> {
        self.rows.iter().map(|r| (r.freq, (r.peak_theta - self.theta0).abs())).collect()
    }
}

pub fn one_db_bandwidth(rows: &[SweepRow], freq0: f64) -> Option<Bandwidth> {
    if rows.is_empty() {
        return None;
    }
    let gmax = rows.iter().map(|r| r.gain_dbi).fold(f64::NEG_INFINITY, f64::max);
    let level = gmax - 1.0;
    let c = (0..rows.len()).min_by(|&a, &b| (rows[a].freq - freq0).abs().total_cmp(&(rows[b].freq - freq0).abs()))?;
    if rows[c].gain_dbi < level {
        return None;
    }
    let edge = |inside: usize, outside: usize| {
        let (a, b) = (&rows[inside], &rows[outside]);
        let t = (a.gain_dbi - level) / (a.gain_dbi - b.gain_dbi);
        a.freq + t * (b.freq - a.freq)
    };
    let mut i = c;
    while i > 0 && rows[i - 1].gain_dbi >= level {
        i -= 1;
    }
    let (lo, open_lo) = if i == 0 { (rows[0].freq, true) } else { (edge(i, i - 1), false) };
    let mut j = c;
    while j + 1 < rows.len() && rows[j + 1].gain_dbi >= level {
        j += 1;
    }
    let (hi, open_hi) = if j + 1 == rows.len() { (rows[j].freq, true) } else { (edge(j, j + 1), false) };
    Some(Bandwidth {
        lo,
        hi,
        open_lo,
        open_hi,
        relative: (hi - lo) / freq0,
    })
}

/// Re-evaluates a fixed design at each frequency: same radii, new
/// wavenumber and new table plane.
pub fn frequency_sweep(
    map: &HologramMap,
    table: &UnitCellTable,
    feed: &FeedModel,
    freqs: &[f64],
    grid: &AngularGrid,
    element_factor: bool,
) -> Result<SweepResult> {
    let rows = freqs
        .iter()
        .map(|&f| {
            let ap = aperture_field(map, table, feed, f)?;
            let p = radiation_pattern(&ap, grid, element_factor);
            let m = pattern_metrics(&p, map.spec.aperture_area())?;
            Ok(SweepRow {
                freq: f,
                gain_dbi: m.directivity_dbi,
                peak_theta: m.peak_direction.0,
                peak_phi: m.peak_direction.1,
                reflected_fraction: ap.reflected_fraction,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let freq0 = map.spec.freq0;
    Ok(SweepResult {
        freq0,
        theta0: map.spec.beams[0].theta0_deg(),
        bandwidth: one_db_bandwidth(&rows, freq0),
        rows,
    })
}

pub const SWEEP_COLUMNS: [&str; 4] = ["freq_ghz", "gain_dbi", "peak_theta_deg", "peak_phi_deg"];

pub fn write_sweep_csv<W: Write>(s: &SweepResult, mut w: W) -> io::Result<()> {
    write_header(&mut w, &SWEEP_COLUMNS)?;
    for r in &s.rows {
        writeln!(w, "{},{},{},{}", r.freq, r.gain_dbi, r.peak_theta, r.peak_phi)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hologram::lattice_points;

    #[test]
    fn single_cell_is_isotropic() {
        let ap = ApertureField::uniform(&[Point::ORIGIN], 12.0);
        let p = radiation_pattern(&ap, &AngularGrid::hemisphere(5.0).unwrap(), false);
        assert!(p.field.iter().all(|e| (e.norm() - 1.0).abs() < 1e-15));
        let d = 4.0 * PI / p.radiated_power().unwrap();
        // a hemisphere-only isotropic radiator has directivity 2
        assert!((d - 2.0).abs() < 0.01, "{d}");
    }

    #[test]
    fn two_element_factor() {
        let lambda = wavelength(12.0);
        let ap = ApertureField::uniform(&[Point::new(-lambda / 4.0, 0.0), Point::new(lambda / 4.0, 0.0)], 12.0);
        let grid = AngularGrid::new((0..=90).map(f64::from).collect(), vec![0.0]).unwrap();
        let p = radiation_pattern(&ap, &grid, false);
        for (ti, &t) in grid.thetas.iter().enumerate() {
            let expected = 2.0 * (PI / 2.0 * t.to_radians().sin()).cos().abs();
            assert!((p.at(ti, 0).norm() - expected).abs() < 1e-12, "{t}");
        }
    }

    #[test]
    fn separable_sum_matches_direct_sum() {
        let pts = lattice_points(30.0, 6.6);
        let cells: Vec<(Point, Complex)> = pts
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, Complex::from_polar(1.0 + 0.1 * i as f64, 0.3 * i as f64)))
            .collect();
        let ap = ApertureField {
            freq: 12.0,
            cells: cells.clone(),
            reflected_fraction: 0.0,
        };
        let grid = AngularGrid::new(vec![0.0, 17.0, 44.5, 90.0], vec![0.0, 33.0, 250.0]).unwrap();
        let p = radiation_pattern(&ap, &grid, true);
        let k0 = wavenumber(12.0);
        for (ti, &t) in grid.thetas.iter().enumerate() {
            for (pj, &ph) in grid.phis.iter().enumerate() {
                let (st, ct) = sin_cos_deg(t);
                let (sp, cp) = sin_cos_deg(ph);
                let direct: Complex = cells
                    .iter()
                    .map(|&(q, a)| a * Complex::from_polar(1.0, k0 * (q.x * st * cp + q.y * st * sp)))
                    .sum::<Complex>()
                    * ct;
                assert!((p.at(ti, pj) - direct).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn uniform_aperture_oracle() {
        let ap = ApertureField::uniform(&lattice_points(132.0, 6.6), 12.0);
        let p = radiation_pattern(&ap, &AngularGrid::hemisphere(0.5).unwrap(), false);
        let area = PI * 132.0 * 132.0;
        let m = pattern_metrics(&p, area).unwrap();
        let lambda = wavelength(12.0);
        let oracle = 10.0 * (4.0 * PI * PI * 132.0 * 132.0 / (lambda * lambda)).log10();
        assert!((m.directivity_dbi - oracle).abs() < 0.2, "{} vs {oracle}", m.directivity_dbi);
        assert!((m.sll_db + 17.6).abs() < 0.5, "{}", m.sll_db);
        assert_eq!(m.peak_direction, (0.0, 0.0));
        // 1.02 λ/D for a uniform disc
        let bw = (1.02 * lambda / 264.0).to_degrees();
        assert!((m.beamwidth_3db - bw).abs() < 0.3, "{} vs {bw}", m.beamwidth_3db);
    }

    #[test]
    fn metrics_are_scale_invariant() {
        let mut ap = ApertureField::uniform(&lattice_points(60.0, 6.6), 12.0);
        let grid = AngularGrid::hemisphere(1.0).unwrap();
        let a = pattern_metrics(&radiation_pattern(&ap, &grid, false), 1e4).unwrap();
        for c in &mut ap.cells {
            c.1 *= Complex::new(0.0, -37.0);
        }
        let b = pattern_metrics(&radiation_pattern(&ap, &grid, false), 1e4).unwrap();
        assert!((a.directivity_dbi - b.directivity_dbi).abs() < 1e-9);
        assert!((a.sll_db - b.sll_db).abs() < 1e-9);
    }

    #[test]
    fn partial_grid_has_no_directivity() {
        let ap = ApertureField::uniform(&[Point::ORIGIN], 12.0);
        let grid = AngularGrid::new(vec![0.0, 10.0], vec![0.0, 90.0]).unwrap();
        let p = radiation_pattern(&ap, &grid, false);
        assert!(matches!(p.radiated_power(), Err(Error::IncompleteGrid)));
    }

    #[test]
    fn bandwidth_edges() {
        let row = |f: f64, g: f64| SweepRow {
            freq: f,
            gain_dbi: g,
            peak_theta: 0.0,
            peak_phi: 0.0,
            reflected_fraction: 0.0,
        };
        let rows = vec![row(11.0, 27.0), row(11.5, 29.5), row(12.0, 30.0), row(12.5, 29.4), row(13.0, 28.4)];
        let bw = one_db_bandwidth(&rows, 12.0).unwrap();
        assert!(!bw.open_lo && !bw.open_hi);
        assert!((bw.lo - (11.5 - 0.5 * 0.5 / 2.5)).abs() < 1e-12);
        assert!((bw.hi - (12.5 + 0.5 * 0.4 / 1.0)).abs() < 1e-12);
        let flat = vec![row(11.0, 30.0), row(12.0, 30.0)];
        let bw = one_db_bandwidth(&flat, 12.0).unwrap();
        assert!(bw.open_lo && bw.open_hi);
    }

    #[test]
    fn grid_validation() {
        assert!(AngularGrid::hemisphere(0.7).is_err());
        assert!(AngularGrid::hemisphere(0.25).unwrap().is_hemisphere());
        assert!(AngularGrid::new(vec![95.0], vec![0.0]).is_err());
    }
}
