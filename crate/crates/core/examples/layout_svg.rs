//! Layer artwork for the broadside design.

use std::fs::File;
use std::io::BufWriter;

use holota::config::RunConfig;
use holota::layout::{export_svg, LayoutDocument};
use holota::pipeline::Design;

fn main() -> holota::Result<()> {
    let cfg = RunConfig::from_path(concat!(env!("CARGO_MANIFEST_DIR"), "/configs/example1.toml").as_ref())?;
    let map = Design::from_config(&cfg)?.synthesize()?;
    let doc = LayoutDocument::from_map(&map, cfg.antenna.ring_width_mm, cfg.stackup.n_layers)?;
    std::fs::create_dir_all("out")?;
    export_svg(&doc, BufWriter::new(File::create("out/layout_example1.svg")?))?;
    println!("{} cells on {} layers, ring {:.2}/{:.2} mm", doc.cells.len(), doc.n_layers, doc.ring_outer_side(), doc.ring_inner_side());
    println!("wrote out/layout_example1.svg");
    Ok(())
}
