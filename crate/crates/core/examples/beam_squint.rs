//! Beam direction and gain across 11–13 GHz against the grating law.

use holota::config::RunConfig;
use holota::pipeline::Design;

fn main() -> holota::Result<()> {
    let d = Design::from_config(&RunConfig::from_path(concat!(env!("CARGO_MANIFEST_DIR"), "/configs/example2.toml").as_ref())?)?;
    let map = d.synthesize()?;
    let sweep = d.sweep(&map)?;
    let s0 = sweep.theta0.to_radians().sin();
    for r in &sweep.rows {
        let law = (sweep.freq0 / r.freq * s0).asin().to_degrees();
        println!(
            "{:5.2} GHz  gain {:6.2} dBi  peak theta {:6.2} (grating law {law:6.2})  reflected {:.3}",
            r.freq, r.gain_dbi, r.peak_theta, r.reflected_fraction
        );
    }
    if let Some(bw) = sweep.bandwidth {
        println!("1 dB band {:.2}-{:.2} GHz ({:.1} %)", bw.lo, bw.hi, 100.0 * bw.relative);
    }
    Ok(())
}
