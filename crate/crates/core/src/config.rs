//! TOML run configuration.
//!
//! Every section except `[[beam]]` is optional; missing values take the
//! 12 GHz design defaults. Unknown keys are rejected.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::feed::FeedModel;
use crate::field::{BeamSpec, Complex, FeedGeometry};
use crate::hologram::{AntennaSpec, ModulationParams};
use crate::unit_cell::{GeometryMap, Stackup};
use crate::units::wavelength;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AntennaSection {
    pub freq_ghz: f64,
    pub aperture_radius_mm: f64,
    pub period_mm: f64,
    pub ring_width_mm: f64,
}

impl Default for AntennaSection {
    fn default() -> Self {
        Self {
            freq_ghz: 12.0,
            aperture_radius_mm: 132.0,
            period_mm: 6.6,
            ring_width_mm: 0.2,
        }
    }
}

/// Feed placement. Give either `height_mm` or `f_over_d`, not both; with
/// neither, `f_over_d = 0.6589`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FeedSection {
    pub q: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_over_d: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub height_mm: Option<f64>,
    pub x_mm: f64,
    pub y_mm: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gain_dbi: Option<f64>,
}

impl Default for FeedSection {
    fn default() -> Self {
        Self {
            q: 5.2,
            f_over_d: None,
            height_mm: None,
            x_mm: 0.0,
            y_mm: 0.0,
            gain_dbi: None,
        }
    }
}

pub const DEFAULT_F_OVER_D: f64 = 0.6589;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeamSection {
    pub theta0_deg: f64,
    pub phi0_deg: f64,
    #[serde(default = "one")]
    pub weight_re: f64,
    #[serde(default)]
    pub weight_im: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModulationSection {
    pub x_avg_s: f64,
    pub m_depth_s: f64,
    pub shift_a_s: f64,
    pub shift_b_s: f64,
}

impl Default for ModulationSection {
    fn default() -> Self {
        let m = ModulationParams::default();
        Self {
            x_avg_s: m.x_avg,
            m_depth_s: m.m_depth,
            shift_a_s: m.shift_a,
            shift_b_s: m.shift_b,
        }
    }
}

/// Cell table source. `"synthetic"` builds the circuit surrogate on the
/// angle/radius grid below, with one frequency plane per frequency the run
/// needs; anything else is a CSV path relative to the config file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TableSection {
    pub source: String,
    pub angle_step_deg: f64,
    pub angle_max_deg: f64,
    pub radius_min_mm: f64,
    pub radius_max_mm: f64,
    pub radius_step_mm: f64,
}

impl Default for TableSection {
    fn default() -> Self {
        Self {
            source: "synthetic".into(),
            angle_step_deg: 5.0,
            angle_max_deg: 50.0,
            radius_min_mm: 0.1,
            radius_max_mm: 2.9,
            radius_step_mm: 0.01,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSection {
    pub step_deg: f64,
}

impl Default for GridSection {
    fn default() -> Self {
        Self { step_deg: 0.25 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepSection {
    pub f_lo_ghz: f64,
    pub f_hi_ghz: f64,
    pub step_ghz: f64,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            f_lo_ghz: 11.0,
            f_hi_ghz: 13.0,
            step_ghz: 0.25,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    pub dir: String,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self { dir: "out".into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FlagsSection {
    pub include_spread: bool,
    pub element_factor: bool,
}

impl Default for FlagsSection {
    fn default() -> Self {
        Self {
            include_spread: true,
            element_factor: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub antenna: AntennaSection,
    #[serde(default)]
    pub feed: FeedSection,
    #[serde(default)]
    pub beam: Vec<BeamSection>,
    #[serde(default)]
    pub modulation: ModulationSection,
    #[serde(default)]
    pub table: TableSection,
    #[serde(default)]
    pub cell: GeometryMap,
    #[serde(default)]
    pub stackup: Stackup,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub sweep: SweepSection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub flags: FlagsSection,
    /// Directory relative paths are resolved against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

fn positive(key: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::config(key, format!("must be a positive number, got {v}")))
    }
}

/// Evenly spaced values from `lo` to `hi` inclusive, snapped to 1e-9.
pub fn linspace_step(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| ((lo + i as f64 * step) * 1e9).round() / 1e9).collect()
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| {
            let key = e.span().map(|s| text[s].trim().to_string()).unwrap_or_default();
            Error::config(key, e.message().to_string())
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
        let mut cfg = Self::parse(&text)?;
        cfg.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let a = &self.antenna;
        positive("antenna.freq_ghz", a.freq_ghz)?;
        positive("antenna.aperture_radius_mm", a.aperture_radius_mm)?;
        positive("antenna.period_mm", a.period_mm)?;
        positive("antenna.ring_width_mm", a.ring_width_mm)?;
        let half = wavelength(a.freq_ghz) / 2.0;
        if a.period_mm >= half {
            return Err(Error::config(
                "antenna.period_mm",
                format!("Nyquist violation: {} mm is not below half a wavelength ({half:.4} mm)", a.period_mm),
            ));
        }
        if a.aperture_radius_mm < a.period_mm {
            return Err(Error::config("antenna.aperture_radius_mm", "must be at least one period"));
        }
        positive("feed.q", self.feed.q)?;
        match (self.feed.f_over_d, self.feed.height_mm) {
            (Some(_), Some(_)) => return Err(Error::config("feed", "give f_over_d or height_mm, not both")),
            (Some(v), None) => positive("feed.f_over_d", v)?,
            (None, Some(v)) => positive("feed.height_mm", v)?,
            (None, None) => {}
        }
        if self.beam.is_empty() {
            return Err(Error::config("beam", "at least one [[beam]] is required"));
        }
        self.beams()?;
        let m = &self.modulation;
        if !(m.m_depth_s > 0.0) {
            return Err(Error::config("modulation.m_depth_s", "must be > 0"));
        }
        if !(m.shift_a_s > 0.0 && m.shift_b_s < 0.0) {
            return Err(Error::config("modulation", "need shift_a_s > 0 > shift_b_s"));
        }
        let t = &self.table;
        positive("table.angle_step_deg", t.angle_step_deg)?;
        positive("table.radius_step_mm", t.radius_step_mm)?;
        if !(t.angle_max_deg >= 0.0 && t.angle_max_deg < 90.0) {
            return Err(Error::config("table.angle_max_deg", "must be in [0, 90)"));
        }
        if !(t.radius_min_mm > 0.0 && t.radius_max_mm > t.radius_min_mm) {
            return Err(Error::config("table.radius_min_mm", "need 0 < radius_min_mm < radius_max_mm"));
        }
        self.stackup.validate().map_err(|e| Error::config("stackup", e.to_string()))?;
        positive("grid.step_deg", self.grid.step_deg)?;
        let s = &self.sweep;
        positive("sweep.step_ghz", s.step_ghz)?;
        positive("sweep.f_lo_ghz", s.f_lo_ghz)?;
        if !(s.f_hi_ghz > s.f_lo_ghz) {
            return Err(Error::config("sweep.f_hi_ghz", "must exceed f_lo_ghz"));
        }
        Ok(())
    }

    pub fn diameter(&self) -> f64 {
        2.0 * self.antenna.aperture_radius_mm
    }

    pub fn feed_height(&self) -> f64 {
        match (self.feed.height_mm, self.feed.f_over_d) {
            (Some(h), _) => h,
            (None, fd) => fd.unwrap_or(DEFAULT_F_OVER_D) * self.diameter(),
        }
    }

    pub fn f_over_d(&self) -> f64 {
        self.feed_height() / self.diameter()
    }

    pub fn beams(&self) -> Result<Vec<BeamSpec>> {
        self.beam
            .iter()
            .enumerate()
            .map(|(i, b)| {
                BeamSpec::with_weight(b.theta0_deg, b.phi0_deg, Complex::new(b.weight_re, b.weight_im))
                    .map_err(|e| Error::config(format!("beam[{i}]"), e.to_string()))
            })
            .collect()
    }

    pub fn feed_model(&self) -> Result<FeedModel> {
        let g = FeedGeometry::new(self.feed.x_mm, self.feed.y_mm, self.feed_height(), self.feed.q)?;
        let mut m = FeedModel::new(g);
        if let Some(gain) = self.feed.gain_dbi {
            m.gain_dbi = gain;
        }
        Ok(m)
    }

    pub fn antenna_spec(&self) -> Result<AntennaSpec> {
        let m = &self.modulation;
        Ok(AntennaSpec {
            freq0: self.antenna.freq_ghz,
            aperture_radius: self.antenna.aperture_radius_mm,
            period: self.antenna.period_mm,
            feed: self.feed_model()?.geometry,
            beams: self.beams()?,
            modulation: ModulationParams {
                x_avg: m.x_avg_s,
                m_depth: m.m_depth_s,
                shift_a: m.shift_a_s,
                shift_b: m.shift_b_s,
            },
        })
    }

    pub fn sweep_freqs(&self) -> Vec<f64> {
        let s = &self.sweep;
        linspace_step(s.f_lo_ghz, s.f_hi_ghz, s.step_ghz)
    }

    pub fn table_angles(&self) -> Vec<f64> {
        linspace_step(0.0, self.table.angle_max_deg, self.table.angle_step_deg)
    }

    pub fn table_radii(&self) -> Vec<f64> {
        let t = &self.table;
        linspace_step(t.radius_min_mm, t.radius_max_mm, t.radius_step_mm)
    }

    pub fn table_path(&self) -> Option<PathBuf> {
        (self.table.source != "synthetic").then(|| self.base_dir.join(&self.table.source))
    }

    pub fn output_dir(&self) -> PathBuf {
        self.base_dir.join(&self.output.dir)
    }

    /// Applies command-line overrides. `theta0`/`phi0` retarget the first beam.
    pub fn apply_overrides(&mut self, freq: Option<f64>, theta0: Option<f64>, phi0: Option<f64>) -> Result<()> {
        if let Some(f) = freq {
            self.antenna.freq_ghz = f;
        }
        if let Some(b) = self.beam.first_mut() {
            if let Some(t) = theta0 {
                b.theta0_deg = t;
            }
            if let Some(p) = phi0 {
                b.phi0_deg = p;
            }
        }
        self.validate()
    }
}
