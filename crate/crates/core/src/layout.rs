//! Per-layer patch/ring geometry and SVG export.
//!
//! One SVG unit is one millimetre, y pointing up (the y coordinate is
//! negated on output). Coordinates are printed with four decimals so the
//! file is byte-stable.

use std::fmt::Write as _;
use std::io::{self, Write};

use crate::field::Point;
use crate::hologram::HologramMap;
use crate::unit_cell::RING_INSET;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct LayoutCell {
    pub center: Point,
    pub radius: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LayoutDocument {
    pub period: f64,
    pub ring_width: f64,
    pub n_layers: usize,
    pub aperture_radius: f64,
    pub cells: Vec<LayoutCell>,
}

impl LayoutDocument {
    pub fn empty(period: f64, ring_width: f64, n_layers: usize, aperture_radius: f64) -> Self {
        Self {
            period,
            ring_width,
            n_layers,
            aperture_radius,
            cells: Vec::new(),
        }
    }

    /// Layers are identical; every cell's patch radius comes from the map.
    pub fn from_map(map: &HologramMap, ring_width: f64, n_layers: usize) -> Result<Self> {
        let cells = map
            .cells
            .iter()
            .map(|c| {
                c.radius_mm
                    .map(|radius| LayoutCell { center: c.center, radius })
                    .ok_or_else(|| Error::UnrealizedMap.at_cell(c.center.x, c.center.y))
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            period: map.spec.period,
            ring_width,
            n_layers,
            aperture_radius: map.spec.aperture_radius,
            cells,
        })
    }

    pub fn ring_outer_side(&self) -> f64 {
        self.period - 2.0 * RING_INSET
    }

    pub fn ring_inner_side(&self) -> f64 {
        self.ring_outer_side() - 2.0 * self.ring_width
    }

    pub fn to_svg(&self) -> String {
        let half = self.aperture_radius + self.period;
        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.4}mm" height="{w:.4}mm" viewBox="{o:.4} {o:.4} {w:.4} {w:.4}">"#,
            w = 2.0 * half,
            o = -half
        );
        let (ho, hi) = (self.ring_outer_side() / 2.0, self.ring_inner_side() / 2.0);
        for layer in 1..=self.n_layers {
            let _ = writeln!(s, r#"  <g id="layer-{layer}" fill="black" fill-rule="evenodd" stroke="none">"#);
            for c in &self.cells {
                let (x, y) = (c.center.x, -c.center.y);
                let _ = writeln!(
                    s,
                    r#"    <path d="M{:.4} {:.4}H{:.4}V{:.4}H{:.4}ZM{:.4} {:.4}H{:.4}V{:.4}H{:.4}Z"/>"#,
                    x - ho,
                    y - ho,
                    x + ho,
                    y + ho,
                    x - ho,
                    x - hi,
                    y - hi,
                    x + hi,
                    y + hi,
                    x - hi
                );
                let _ = writeln!(s, r#"    <circle cx="{x:.4}" cy="{y:.4}" r="{:.4}"/>"#, c.radius);
            }
            let _ = writeln!(s, "  </g>");
        }
        let _ = writeln!(s, "</svg>");
        s
    }
}

pub fn export_svg<W: Write>(layout: &LayoutDocument, mut w: W) -> io::Result<()> {
    w.write_all(layout.to_svg().as_bytes())
}
