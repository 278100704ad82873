//! Build the synthetic unit-cell table and invert a few susceptances.

use holota::unit_cell::{generate_synthetic_table, GeometryMap, Stackup};
use holota::units::ETA0;

fn main() -> holota::Result<()> {
    let angles: Vec<f64> = (0..=10).map(|i| 5.0 * i as f64).collect();
    let radii: Vec<f64> = (0..=280).map(|i| 0.1 + 0.01 * i as f64).collect();
    let table = generate_synthetic_table(&GeometryMap::default(), &Stackup::default(), &[12.0], &angles, &radii, ETA0)?;
    let (lo, hi) = table.bounds(0.0, 12.0).expect("usable branch at normal incidence");
    println!("{} records, realizable B at 12 GHz, 0 deg: [{lo:.5}, {hi:.5}] S", table.len());
    for row in table.curves(&[0.0], 12.0).iter().step_by(20) {
        println!("R = {:.2} mm  |s21| = {:6.2} dB  phase = {:7.2} deg", row.radius_mm, row.s21_db, row.s21_phase_deg);
    }
    for b in [-0.0120, -0.0060, 0.0040, 0.0125] {
        let (r, clamped) = table.radius_from_susceptance(b, 20.0, 12.0)?;
        println!("B = {b:+.4} S at 20 deg -> R = {r:.4} mm{}", if clamped { " (clamped)" } else { "" });
    }
    Ok(())
}
