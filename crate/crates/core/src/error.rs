use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no object beams")]
    NoBeams,

    #[error("negative intensity {0}")]
    NegativeIntensity(f64),

    #[error("infinite reactance (transparent sheet) at phase {0} deg")]
    InfiniteReactance(f64),

    #[error("empty range: {0}")]
    EmptyRange(String),

    #[error("invalid `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("Nyquist violation: period {period} mm is not below half a wavelength ({half_wavelength:.4} mm)")]
    Nyquist { period: f64, half_wavelength: f64 },

    #[error("no cells inside the aperture")]
    EmptyAperture,

    #[error("radius {radius} mm lies in forbidden interval ({lo}, {hi}) mm")]
    ForbiddenRadius { radius: f64, lo: f64, hi: f64 },

    #[error("radius {radius} mm outside table range [{lo}, {hi}] mm")]
    RadiusOutOfRange { radius: f64, lo: f64, hi: f64 },

    #[error("no usable susceptance branch at theta = {angle} deg, f = {freq} GHz")]
    NoUsableBranch { angle: f64, freq: f64 },

    #[error("hologram map has no radii; run the unit-cell inversion first")]
    UnrealizedMap,

    #[error("non-passive record at f = {freq} GHz, theta = {angle} deg, R = {radius} mm: |s21| = {s21_mag}")]
    NonPassive {
        freq: f64,
        angle: f64,
        radius: f64,
        s21_mag: f64,
    },

    #[error("cell table is missing {count} grid points, first: {first}")]
    MissingGridPoints { count: usize, first: String },

    #[error("cell table line {line}: {msg}")]
    TableFormat { line: usize, msg: String },

    #[error("geometry map is not monotone: {0}")]
    NonMonotoneGeometry(String),

    #[error("efficiency profile is not unimodal on [{lo}, {hi}]:\n{dump}")]
    NotUnimodal { lo: f64, hi: f64, dump: String },

    #[error("main lobe clipped by the angular grid")]
    MainLobeClipped,

    #[error("angular grid does not cover the forward hemisphere")]
    IncompleteGrid,

    #[error("cell at ({x:.3}, {y:.3}) mm: {source}")]
    AtCell {
        x: f64,
        y: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("config key `{key}`: {constraint}")]
    Config { key: String, constraint: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn config(key: impl Into<String>, constraint: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            constraint: constraint.into(),
        }
    }

    pub(crate) fn at_cell(self, x: f64, y: f64) -> Self {
        Error::AtCell {
            x,
            y,
            source: Box::new(self),
        }
    }

    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } => 2,
            Error::Io(_) => 4,
            Error::AtCell { source, .. } => source.exit_code(),
            _ => 3,
        }
    }
}
