//! Three-layer patch/ring cell: circuit surrogate, S-parameter tables and the
//! inverse susceptance-to-radius lookup.

mod network;
mod synthetic;
mod table;

pub use network::TwoPort;
pub use synthetic::{generate_synthetic_table, GeometryMap};
pub use table::{
    load_cell_table, write_cell_table, write_cell_curves_csv, CellCurveRow, PlaneInfo, UnitCellTable,
    CELL_CURVE_COLUMNS, CELL_TABLE_COLUMNS,
};

use serde::{Deserialize, Serialize};

use crate::field::Complex;
use crate::units::{sin_cos_deg, wavenumber};
use crate::{Error, Result};

/// Shunt branch of one layer: loss resistor in series with the parallel
/// patch capacitance and ring inductance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LayerCircuit {
    pub c_shunt: f64,
    pub l_shunt: f64,
    pub r_loss: f64,
}

impl LayerCircuit {
    pub fn new(c_shunt: f64, l_shunt: f64, r_loss: f64) -> Result<Self> {
        if !(c_shunt > 0.0 && l_shunt > 0.0 && r_loss >= 0.0) {
            return Err(Error::invalid(
                "layer circuit",
                format!("need C > 0, L > 0, R >= 0; got {c_shunt}, {l_shunt}, {r_loss}"),
            ));
        }
        Ok(Self {
            c_shunt,
            l_shunt,
            r_loss,
        })
    }

    pub fn admittance(&self, freq_ghz: f64) -> Complex {
        let w = 2.0 * std::f64::consts::PI * freq_ghz * 1e9;
        let tank = Complex::new(0.0, w * self.c_shunt - 1.0 / (w * self.l_shunt));
        1.0 / (self.r_loss + 1.0 / tank)
    }

    pub fn resonance_ghz(&self) -> f64 {
        1.0 / (2.0 * std::f64::consts::PI * (self.l_shunt * self.c_shunt).sqrt()) / 1e9
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Stackup {
    pub n_layers: usize,
    pub substrate_thickness: f64,
    pub substrate_eps_r: f64,
    pub air_gap: f64,
}

impl Default for Stackup {
    fn default() -> Self {
        Self {
            n_layers: 3,
            substrate_thickness: 0.508,
            substrate_eps_r: 3.55,
            air_gap: 6.0,
        }
    }
}

impl Stackup {
    /// Zero-length lines are allowed; they make the cascade collapse to bare
    /// shunt sheets.
    pub fn validate(&self) -> Result<()> {
        if self.n_layers == 0 {
            return Err(Error::invalid("n_layers", "must be >= 1"));
        }
        if !(self.substrate_thickness >= 0.0 && self.air_gap >= 0.0) {
            return Err(Error::invalid("stackup", "thicknesses must be >= 0"));
        }
        if !(self.substrate_eps_r >= 1.0) {
            return Err(Error::invalid("substrate_eps_r", format!("{} must be >= 1", self.substrate_eps_r)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CellGeometry {
    pub radius: f64,
    pub ring_width: f64,
    pub period: f64,
}

/// Gap between the cell boundary and the ring's outer edge, mm.
pub const RING_INSET: f64 = 0.05;

impl CellGeometry {
    pub fn new(radius: f64, ring_width: f64, period: f64) -> Result<Self> {
        if !(0.1..=2.9).contains(&radius) {
            return Err(Error::RadiusOutOfRange {
                radius,
                lo: 0.1,
                hi: 2.9,
            });
        }
        if radius + RING_INSET + ring_width >= period / 2.0 {
            return Err(Error::invalid("radius", format!("{radius} overlaps the ring in a {period} mm cell")));
        }
        Ok(Self {
            radius,
            ring_width,
            period,
        })
    }

    pub fn ring_outer_side(&self) -> f64 {
        self.period - 2.0 * RING_INSET
    }

    pub fn ring_inner_side(&self) -> f64 {
        self.ring_outer_side() - 2.0 * self.ring_width
    }
}

/// Cascade response for a given per-layer admittance, TE incidence at
/// `theta_deg`. Ports are free space seen at the same angle.
pub fn cascade_with_admittance(y: Complex, stack: &Stackup, freq: f64, theta_deg: f64, eta0: f64) -> (Complex, Complex) {
    let k0 = wavenumber(freq);
    let (st, ct) = sin_cos_deg(theta_deg);
    let n = stack.substrate_eps_r.sqrt();
    let cs = (1.0 - (st / n).powi(2)).sqrt();
    let z_air = eta0 / ct;
    let sub = TwoPort::line(eta0 / (n * cs), k0 * n * cs, stack.substrate_thickness);
    let air = TwoPort::line(z_air, k0 * ct, stack.air_gap);
    let layer = TwoPort::shunt(y) * sub;
    let chain = layer * (air * layer).pow(stack.n_layers - 1);
    chain.to_sparams(z_air)
}

pub fn cascade_sparams(layer: &LayerCircuit, stack: &Stackup, freq: f64, eta0: f64) -> (Complex, Complex) {
    cascade_with_admittance(layer.admittance(freq), stack, freq, 0.0, eta0)
}

pub fn cascade_sparams_oblique(layer: &LayerCircuit, stack: &Stackup, freq: f64, theta_deg: f64, eta0: f64) -> (Complex, Complex) {
    cascade_with_admittance(layer.admittance(freq), stack, freq, theta_deg, eta0)
}

/// Shunt admittance whose single-sheet transmission equals `s21`.
pub fn shunt_equivalent_admittance(s21: Complex, eta0: f64) -> Complex {
    (2.0 / eta0) * (1.0 / s21 - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sheet::{shunt_sheet_sparams, SheetImpedance};
    use crate::units::ETA0;

    fn bare(n: usize) -> Stackup {
        Stackup {
            n_layers: n,
            substrate_thickness: 0.0,
            substrate_eps_r: 3.55,
            air_gap: 0.0,
        }
    }

    #[test]
    fn empty_network_is_transparent() {
        let (s11, s21) = cascade_with_admittance(Complex::new(0.0, 0.0), &bare(3), 12.0, 0.0, ETA0);
        assert!(s11.norm() < 1e-15);
        assert!((s21 - 1.0).norm() < 1e-15);
    }

    #[test]
    fn single_layer_matches_sheet_model() {
        for (c, l, r) in [(5e-14, 2e-9, 0.0), (2e-14, 1e-9, 0.5), (1e-13, 4e-9, 3.0)] {
            let layer = LayerCircuit::new(c, l, r).unwrap();
            let (s11, s21) = cascade_sparams(&layer, &bare(1), 12.0, ETA0);
            let z = 1.0 / layer.admittance(12.0);
            let sheet = shunt_sheet_sparams(SheetImpedance::new(z.re, z.im).unwrap(), ETA0);
            assert!((s11 - sheet.s11).norm() < 1e-10);
            assert!((s21 - sheet.s21).norm() < 1e-10);
        }
    }

    #[test]
    fn resonant_tank_is_transparent() {
        let layer = LayerCircuit::new(3e-14, 2e-9, 0.0).unwrap();
        let (s11, s21) = cascade_sparams(&layer, &bare(3), layer.resonance_ghz(), ETA0);
        assert!((s21 - 1.0).norm() < 1e-9, "{s21}");
        assert!(s11.norm() < 1e-9);
    }

    #[test]
    fn lossless_stack_conserves_power() {
        let layer = LayerCircuit::new(4e-14, 1.3e-9, 0.0).unwrap();
        for theta in [0.0, 25.0, 50.0] {
            let (s11, s21) = cascade_sparams_oblique(&layer, &Stackup::default(), 12.0, theta, ETA0);
            assert!((s11.norm_sqr() + s21.norm_sqr() - 1.0).abs() < 1e-12);
        }
        let lossy = LayerCircuit::new(4e-14, 1.3e-9, 0.5).unwrap();
        let (s11, s21) = cascade_sparams(&lossy, &Stackup::default(), 12.0, ETA0);
        assert!(s11.norm_sqr() + s21.norm_sqr() < 1.0);
    }

    #[test]
    fn extraction_inverts_single_sheet() {
        let layer = LayerCircuit::new(6e-14, 1.1e-9, 0.5).unwrap();
        let (_, s21) = cascade_sparams(&layer, &bare(1), 12.0, ETA0);
        let y = layer.admittance(12.0);
        let got = shunt_equivalent_admittance(s21, ETA0);
        assert!((got - y).norm() / y.norm() < 1e-8);
    }

    #[test]
    fn ring_geometry() {
        let g = CellGeometry::new(2.9, 0.2, 6.6).unwrap();
        assert!((g.ring_outer_side() - 6.5).abs() < 1e-12);
        assert!((g.ring_inner_side() - 6.1).abs() < 1e-12);
        assert!(CellGeometry::new(3.0, 0.2, 6.6).is_err());
        assert!(CellGeometry::new(2.9, 0.2, 6.0).is_err());
    }

    #[test]
    fn stackup_validation() {
        assert!(Stackup::default().validate().is_ok());
        assert!(bare(0).validate().is_err());
        assert!(LayerCircuit::new(0.0, 1e-9, 0.0).is_err());
    }
}
