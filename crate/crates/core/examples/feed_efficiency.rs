//! Spillover, illumination and the best focal ratio for cos^q feeds.

use holota::feed::{efficiency_report, optimize_f_over_d};

fn main() -> holota::Result<()> {
    for q in [4.5, 5.2] {
        let (fd, best) = optimize_f_over_d(q, (0.3, 1.5), true)?;
        println!(
            "q = {q}: F/D* = {fd:.4}  spillover {:.4}  illumination {:.4}  total {:.4}  edge taper {:.2} dB",
            best.spillover, best.illumination, best.total, best.edge_taper_db
        );
    }
    let r = efficiency_report(5.2, 0.659, false)?;
    println!("q = 5.2, F/D = 0.659 without spreading loss: total {:.4}, edge taper {:.2} dB", r.total, r.edge_taper_db);
    Ok(())
}
