//! Holographic transmitarray synthesis and analysis.
//!
//! The crate turns a feed description plus one or more desired far-field
//! beams into a sampled admittance hologram, realizes it with a library of
//! unit cells, and predicts the radiated pattern of the finished array.
//!
//! The pipeline, module by module:
//!
//! * [`field`]: scalar reference/object waves and the interference math.
//! * [`sheet`]: the shunt impedance-sheet model that separates transmitting
//!   from reflecting susceptances.
//! * [`hologram`]: the modulated admittance surface, the forbidden-zone shift
//!   and lattice sampling over a circular aperture.
//! * [`unit_cell`]: ABCD cascade of the three-layer ring/patch cell, cell
//!   tables and the susceptance-to-radius inversion.
//! * [`feed`]: `cos^q` feed illumination, spillover, taper and F/D choice.
//! * [`farfield`]: aperture field assembly, pattern summation, metrics and
//!   frequency sweeps.
//! * [`config`], [`layout`] and [`pipeline`]: run configuration, SVG layout
//!   export and the end-to-end synthesis driver used by the `holota` binary.
//!
//! Units are fixed across the crate: lengths in millimetres, frequencies in
//! GHz, angles in degrees at the API boundary, admittances in siemens.

// NaN must fail validation, so `!(x > 0.0)` is deliberate.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod farfield;
pub mod feed;
pub mod field;
pub mod hologram;
pub mod layout;
pub mod pipeline;
pub mod quadrature;
pub mod sheet;
pub mod unit_cell;
pub mod units;

mod csv_util;

pub use error::{Error, Result};
pub use field::{BeamSpec, Complex, FeedGeometry, Point};
