//! Two symmetric beams from one hologram.

use holota::config::RunConfig;
use holota::farfield::AngularGrid;
use holota::pipeline::Design;
use holota::units::to_db;

fn main() -> holota::Result<()> {
    let d = Design::from_config(&RunConfig::from_path(concat!(env!("CARGO_MANIFEST_DIR"), "/configs/example4.toml").as_ref())?)?;
    let map = d.synthesize()?;
    let p = d.pattern(&map, 12.0, &AngularGrid::hemisphere(0.25)?)?;
    let peak = p.field.iter().map(|e| e.norm()).fold(0.0, f64::max);
    for target in [(30.0, 0.0), (30.0, 180.0)] {
        if let Some(((t, f), mag)) = p.local_peak(target, 5.0) {
            println!("beam near {target:?}: ({t:.2}, {f:.2}) at {:.3} dB", to_db(mag / peak));
        }
    }
    Ok(())
}
