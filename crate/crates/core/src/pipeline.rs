//! End-to-end design flow: config → table → hologram → radii → layout,
//! plus pattern and sweep evaluation of the realized design.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::config::RunConfig;
use crate::farfield::{
    aperture_field, frequency_sweep, pattern_metrics, radiation_pattern, AngularGrid, ApertureField, PatternMetrics,
    RadiationPattern, SweepResult,
};
use crate::feed::FeedModel;
use crate::hologram::{sample_aperture, write_hologram_csv, AntennaSpec, HologramMap};
use crate::layout::{export_svg, LayoutDocument};
use crate::unit_cell::{generate_synthetic_table, load_cell_table, UnitCellTable};
use crate::units::ETA0;
use crate::Result;

/// Builds the cell table a config asks for. Synthetic tables get one plane
/// per frequency in the sweep plus the design frequency.
pub fn build_table(cfg: &RunConfig) -> Result<UnitCellTable> {
    match cfg.table_path() {
        Some(path) => load_cell_table(std::io::BufReader::new(File::open(&path)?), ETA0),
        None => {
            let mut freqs = cfg.sweep_freqs();
            freqs.push(cfg.antenna.freq_ghz);
            freqs.sort_by(f64::total_cmp);
            freqs.dedup();
            generate_synthetic_table(&cfg.cell, &cfg.stackup, &freqs, &cfg.table_angles(), &cfg.table_radii(), ETA0)
        }
    }
}

/// Fills every cell's radius from its shifted susceptance at `freq`.
pub fn realize(map: &mut HologramMap, table: &UnitCellTable, freq: f64) -> Result<()> {
    map.cells.par_iter_mut().try_for_each(|c| {
        let (r, clamped) = table
            .radius_from_susceptance(c.b_shifted, c.incidence_deg, freq)
            .map_err(|e| e.at_cell(c.center.x, c.center.y))?;
        c.radius_mm = Some(r);
        c.clamped = clamped;
        Ok(())
    })
}

pub struct Design {
    pub config: RunConfig,
    pub spec: AntennaSpec,
    pub feed: FeedModel,
    pub table: UnitCellTable,
}

impl Design {
    pub fn from_config(config: &RunConfig) -> Result<Self> {
        let table = build_table(config)?;
        Self::with_table(config, table)
    }

    pub fn with_table(config: &RunConfig, table: UnitCellTable) -> Result<Self> {
        Ok(Self {
            config: config.clone(),
            spec: config.antenna_spec()?,
            feed: config.feed_model()?,
            table,
        })
    }

    /// Samples the hologram and realizes it at the design frequency.
    pub fn synthesize(&self) -> Result<HologramMap> {
        let mut map = sample_aperture(&self.spec)?;
        realize(&mut map, &self.table, self.spec.freq0)?;
        Ok(map)
    }

    pub fn hemisphere(&self) -> Result<AngularGrid> {
        AngularGrid::hemisphere(self.config.grid.step_deg)
    }

    pub fn aperture(&self, map: &HologramMap, freq: f64) -> Result<ApertureField> {
        aperture_field(map, &self.table, &self.feed, freq)
    }

    pub fn pattern(&self, map: &HologramMap, freq: f64, grid: &AngularGrid) -> Result<RadiationPattern> {
        Ok(radiation_pattern(&self.aperture(map, freq)?, grid, self.config.flags.element_factor))
    }

    pub fn metrics(&self, pattern: &RadiationPattern) -> Result<PatternMetrics> {
        pattern_metrics(pattern, self.spec.aperture_area())
    }

    pub fn sweep(&self, map: &HologramMap) -> Result<SweepResult> {
        frequency_sweep(
            map,
            &self.table,
            &self.feed,
            &self.config.sweep_freqs(),
            &self.hemisphere()?,
            self.config.flags.element_factor,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SynthSummary {
    pub cells: usize,
    pub clamped_cells: usize,
    pub clamp_fraction: f64,
    pub b_shifted_min_s: f64,
    pub b_shifted_max_s: f64,
    pub radius_min_mm: f64,
    pub radius_max_mm: f64,
    pub feed_height_mm: f64,
    pub f_over_d: f64,
}

pub struct SynthArtifacts {
    pub map: HologramMap,
    pub layout: LayoutDocument,
    pub summary: SynthSummary,
}

pub fn summarize(map: &HologramMap, cfg: &RunConfig) -> SynthSummary {
    let fold = |it: &mut dyn Iterator<Item = f64>| it.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    let (b_lo, b_hi) = fold(&mut map.cells.iter().map(|c| c.b_shifted));
    let (r_lo, r_hi) = fold(&mut map.cells.iter().filter_map(|c| c.radius_mm));
    SynthSummary {
        cells: map.len(),
        clamped_cells: map.cells.iter().filter(|c| c.clamped).count(),
        clamp_fraction: map.clamp_fraction(),
        b_shifted_min_s: b_lo,
        b_shifted_max_s: b_hi,
        radius_min_mm: r_lo,
        radius_max_mm: r_hi,
        feed_height_mm: cfg.feed_height(),
        f_over_d: cfg.f_over_d(),
    }
}

pub fn run_synth(design: &Design) -> Result<SynthArtifacts> {
    let map = design.synthesize()?;
    let layout = LayoutDocument::from_map(&map, design.config.antenna.ring_width_mm, design.config.stackup.n_layers)?;
    let summary = summarize(&map, &design.config);
    Ok(SynthArtifacts { map, layout, summary })
}

/// Writes `hologram.csv`, `layout.svg` and `summary.toml` into `dir`.
pub fn write_synth(artifacts: &SynthArtifacts, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let csv = dir.join("hologram.csv");
    write_hologram_csv(&artifacts.map, BufWriter::new(File::create(&csv)?))?;
    let svg = dir.join("layout.svg");
    export_svg(&artifacts.layout, BufWriter::new(File::create(&svg)?))?;
    let summary = dir.join("summary.toml");
    fs::write(&summary, toml::to_string(&artifacts.summary).expect("summary serializes"))?;
    Ok(vec![csv, svg, summary])
}
