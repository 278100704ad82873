//! Synthesize the 30° pencil-beam design and write its hologram and layout.
//!
//! cargo run --release --example synthesize_hologram -- [config] [out-dir]

use std::path::PathBuf;

use holota::config::RunConfig;
use holota::pipeline::{run_synth, write_synth, Design};

fn main() -> holota::Result<()> {
    let mut args = std::env::args().skip(1);
    let config = args.next().map(PathBuf::from).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/configs/example2.toml").into());
    let out = args.next().map(PathBuf::from).unwrap_or_else(|| "out/synthesize_hologram".into());
    let cfg = RunConfig::from_path(&config)?;
    let art = run_synth(&Design::from_config(&cfg)?)?;
    let s = &art.summary;
    println!("{} cells, {} clamped", s.cells, s.clamped_cells);
    println!("B in [{:.5}, {:.5}] S, radii in [{:.3}, {:.3}] mm", s.b_shifted_min_s, s.b_shifted_max_s, s.radius_min_mm, s.radius_max_mm);
    println!("feed at {:.2} mm (F/D {:.3})", s.feed_height_mm, s.f_over_d);
    for p in write_synth(&art, &out)? {
        println!("wrote {}", p.display());
    }
    Ok(())
}
