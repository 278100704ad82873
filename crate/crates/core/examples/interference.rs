//! Record and reconstruct a single hologram sample by hand.

use holota::field::{interference_intensity, plane_wave, reconstruct, spherical_wave, BeamSpec, FeedGeometry, Point};
use holota::units::wavenumber;

fn main() -> holota::Result<()> {
    let k0 = wavenumber(12.0);
    let feed = FeedGeometry::centered(173.95, 5.2)?;
    let beam = BeamSpec::new(30.0, 0.0)?;
    for x in [0.0, 6.6, 13.2, 19.8, 26.4] {
        let p = Point::new(x, 0.0);
        let r = spherical_wave(p, &feed, k0);
        let o = plane_wave(p, &beam, k0);
        let i = interference_intensity(r, o);
        let t = reconstruct(i, r)?;
        println!("x = {x:5.1} mm  I = {i:.4}  transmitted = {:.4}{:+.4}j", t.re, t.im);
    }
    Ok(())
}
