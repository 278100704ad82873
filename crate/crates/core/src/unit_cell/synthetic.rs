//! Circuit-surrogate tables: patch radius → (C, L) → cascade S-parameters.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::field::Complex;
use crate::{Error, Result};

use super::{cascade_sparams_oblique, LayerCircuit, Stackup, UnitCellTable};

/// `C(R) = c0 + c1·R²`, `L(R) = l0 / (1 + l1·R)`, radius in mm.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GeometryMap {
    /// F
    pub c0: f64,
    /// F/mm²
    pub c1: f64,
    /// H
    pub l0: f64,
    /// 1/mm
    pub l1: f64,
    /// Ω
    pub r_loss: f64,
}

impl Default for GeometryMap {
    // Tuned so the 12 GHz stack passes within -1 dB over a contiguous radius
    // range and its extracted susceptance spans the hologram's [B, A].
    fn default() -> Self {
        Self {
            c0: 7.041070e-15,
            c1: 2.988512e-14,
            l0: 1.318521e-9,
            l1: 0.05,
            r_loss: 0.5,
        }
    }
}

impl GeometryMap {
    pub fn layer(&self, radius: f64) -> Result<LayerCircuit> {
        LayerCircuit::new(self.c0 + self.c1 * radius * radius, self.l0 / (1.0 + self.l1 * radius), self.r_loss)
    }

    /// Capacitance must grow and inductance shrink strictly along `radii`.
    pub fn check_monotone(&self, radii: &[f64]) -> Result<()> {
        let layers = radii.iter().map(|&r| self.layer(r)).collect::<Result<Vec<_>>>()?;
        for (w, r) in layers.windows(2).zip(radii.windows(2)) {
            if !(w[1].c_shunt > w[0].c_shunt) {
                return Err(Error::NonMonotoneGeometry(format!("C does not grow between R={} and R={}", r[0], r[1])));
            }
            if !(w[1].l_shunt < w[0].l_shunt) {
                return Err(Error::NonMonotoneGeometry(format!("L does not shrink between R={} and R={}", r[0], r[1])));
            }
        }
        Ok(())
    }
}

pub fn generate_synthetic_table(
    map: &GeometryMap,
    stack: &Stackup,
    freqs: &[f64],
    angles: &[f64],
    radii: &[f64],
    eta0: f64,
) -> Result<UnitCellTable> {
    stack.validate()?;
    map.check_monotone(radii)?;
    if freqs.iter().any(|&f| !(f > 0.0)) {
        return Err(Error::invalid("freqs", "must be > 0"));
    }
    if angles.iter().any(|&a| !(0.0..90.0).contains(&a)) {
        return Err(Error::invalid("angles", "must be in [0, 90)"));
    }
    let layers: Vec<LayerCircuit> = radii.iter().map(|&r| map.layer(r)).collect::<Result<_>>()?;
    let planes: Vec<(f64, f64)> = freqs.iter().flat_map(|&f| angles.iter().map(move |&a| (f, a))).collect();
    let values: Vec<Vec<(Complex, Complex)>> = planes
        .par_iter()
        .map(|&(f, a)| layers.iter().map(|l| cascade_sparams_oblique(l, stack, f, a, eta0)).collect())
        .collect();
    let (s11, s21) = values.into_iter().flatten().unzip();
    UnitCellTable::from_grid(freqs.to_vec(), angles.to_vec(), radii.to_vec(), s11, s21, eta0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::{to_db, ETA0};

    pub(crate) fn radii() -> Vec<f64> {
        (0..=280).map(|i| ((10 + i) as f64) / 100.0).collect()
    }

    fn normal_table(freqs: &[f64]) -> UnitCellTable {
        generate_synthetic_table(&GeometryMap::default(), &Stackup::default(), freqs, &[0.0], &radii(), ETA0).unwrap()
    }

    #[test]
    fn covers_hologram_range_at_design_frequency() {
        let t = generate_synthetic_table(
            &GeometryMap::default(),
            &Stackup::default(),
            &[12.0],
            &(0..=10).map(|i| 5.0 * i as f64).collect::<Vec<_>>(),
            &radii(),
            ETA0,
        )
        .unwrap();
        for a in t.angles().to_vec() {
            let (lo, hi) = t.bounds(a, 12.0).unwrap();
            assert!(lo <= -0.01227 && hi >= 0.01287, "theta {a}: [{lo}, {hi}]");
        }
    }

    #[test]
    fn passband_is_contiguous_at_normal_incidence() {
        let t = normal_table(&[12.0]);
        let db: Vec<f64> = (0..t.radii().len()).map(|i| to_db(t.record(0, 0, i).1.norm())).collect();
        let pass: Vec<usize> = (0..db.len()).filter(|&i| db[i] >= -1.0).collect();
        assert!(!pass.is_empty());
        assert_eq!(pass.last().unwrap() - pass[0] + 1, pass.len());
    }

    #[test]
    fn passive_everywhere() {
        let t = normal_table(&[11.0, 12.0, 13.0]);
        for fi in 0..3 {
            for ri in 0..t.radii().len() {
                let (s11, s21) = t.record(fi, 0, ri);
                assert!(s11.norm_sqr() + s21.norm_sqr() <= 1.0 + 1e-9);
            }
        }
    }

    #[test]
    fn rejects_non_monotone_maps() {
        let m = GeometryMap { c1: -1e-16, ..Default::default() };
        assert!(matches!(m.check_monotone(&radii()), Err(Error::NonMonotoneGeometry(_))));
        let m = GeometryMap { l1: 0.0, ..Default::default() };
        assert!(matches!(m.check_monotone(&radii()), Err(Error::NonMonotoneGeometry(_))));
    }
}
