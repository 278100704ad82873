//! Far field of a synthesized design at its design frequency.

use holota::config::RunConfig;
use holota::farfield::AngularGrid;
use holota::pipeline::Design;

fn main() -> holota::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/configs/example3.toml").into());
    let d = Design::from_config(&RunConfig::from_path(path.as_ref())?)?;
    let map = d.synthesize()?;
    let p = d.pattern(&map, d.spec.freq0, &AngularGrid::hemisphere(0.25)?)?;
    let m = d.metrics(&p)?;
    let (theta, phi) = m.peak_direction;
    println!("peak at theta {theta:.2}, phi {phi:.2}");
    println!("directivity {:.2} dBi, aperture efficiency {:.3}", m.directivity_dbi, m.aperture_efficiency);
    println!("sidelobe level {:.2} dB, 3 dB beamwidth {:.2} deg", m.sll_db, m.beamwidth_3db);
    Ok(())
}
