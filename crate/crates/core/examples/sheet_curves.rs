//! Transmission of an infinite resistive-reactive sheet versus reactance.

use holota::sheet::{classify_zone, reactance_from_phase, sweep_sheet, SheetImpedance};
use holota::units::ETA0;

fn main() -> holota::Result<()> {
    for row in sweep_sheet(20.0, (-600.0, 600.0), 100.0, ETA0)? {
        let zone = classify_zone(SheetImpedance::new(20.0, row.reactance)?, -3.0);
        println!("X = {:6.0} ohm  |s21| = {:7.2} dB  phase = {:7.2} deg  {zone:?}", row.reactance, row.s21_db, row.s21_phase_deg);
    }
    // lossless inverse: phase to reactance
    for phi in [-60.0, -30.0, 30.0, 60.0] {
        println!("phase {phi:+} deg needs X = {:.1} ohm", reactance_from_phase(phi, ETA0)?);
    }
    Ok(())
}
