//! Deterministic SVG drawings of a pairing matrix.
//!
//! The drawing mirrors the matrix itself: one row per switch (in layout
//! order), one column per port index. Isoport links become vertical runs
//! inside their column, offset so that nested intervals stay apart;
//! anisoport links become oblique segments. Identical inputs produce
//! byte-identical output.

use std::fmt::Write;

use crate::layout::{designated_crossing_link, LinearLayout};
use crate::pairing::PairingMatrix;
use crate::Result;

#[derive(Debug, Clone, Copy, Default)]
pub struct RenderOptions {
    /// Apply the lane rule: the designated crossing link of each factor
    /// runs on the left of its column, parallel links on the right.
    pub lanes: bool,
}

const ROW_PITCH: usize = 26;
const LEFT_MARGIN: usize = 46;
const TOP_MARGIN: usize = 34;
const WIRE_GAP: usize = 3;

/// Renders `m` under `layout` as an SVG 1.1 document.
pub fn render_svg(m: &PairingMatrix, layout: &LinearLayout, opts: RenderOptions) -> Result<String> {
    let n = m.n();
    let ports = m.ports_per_switch();
    // Ensure sizes agree before touching positions.
    crate::layout::wire_lengths(m, layout)?;

    let wires_per_col = n / 2 + 1;
    let col_pitch = 16 + WIRE_GAP * wires_per_col;
    let row_y = |slot: usize| TOP_MARGIN + slot * ROW_PITCH;
    let col_x = |port: usize| LEFT_MARGIN + port * col_pitch;
    let width = LEFT_MARGIN + ports * col_pitch + 10;
    let height = TOP_MARGIN + (n - 1) * ROW_PITCH + 20;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    svg.push_str(
        "<style>.wire{stroke:#333;fill:none}.stub{stroke:#bbb}.port{fill:#555}\
         text{font:10px sans-serif;fill:#222}</style>\n",
    );

    for i in 0..ports {
        let _ = writeln!(svg, "<text x=\"{}\" y=\"18\">i={i}</text>", col_x(i) - 6);
    }
    for (slot, s) in layout.switch_at().iter().enumerate() {
        let _ = writeln!(svg, "<text x=\"8\" y=\"{}\">{s}</text>", row_y(slot) + 4);
    }
    for s in 0..n {
        for i in 0..ports {
            let _ = writeln!(
                svg,
                "<circle class=\"port\" cx=\"{}\" cy=\"{}\" r=\"2\"/>",
                col_x(i),
                row_y(layout.position(s))
            );
        }
    }

    for i in 0..ports {
        let designated = designated_crossing_link(m, i);
        let mut column: Vec<(usize, usize, bool)> = Vec::new();
        let mut oblique = Vec::new();
        for link in m.links().filter(|l| l.a.port == i) {
            let ya = row_y(layout.position(link.a.switch));
            let yb = row_y(layout.position(link.b.switch));
            if link.b.port == i {
                let exempt = opts.lanes && designated == Some((link.a.switch, link.b.switch));
                column.push((ya.min(yb), ya.max(yb), exempt));
            } else {
                oblique.push((col_x(i), ya, col_x(link.b.port), yb));
            }
        }
        // Longer spans run farther from the ports so nested runs stay apart.
        column.sort_by(|a, b| (b.1 - b.0).cmp(&(a.1 - a.0)).then(a.0.cmp(&b.0)));
        let mut slot = 0;
        for (y1, y2, exempt) in column {
            let offset: isize = if exempt {
                -7
            } else {
                slot += 1;
                (4 + WIRE_GAP * (slot - 1)) as isize
            };
            let _ = writeln!(
                svg,
                "<path class=\"wire\" d=\"M{x} {y1}h{offset}V{y2}h{back}\"/>",
                x = col_x(i),
                back = -offset
            );
        }
        for (x1, y1, x2, y2) in oblique {
            let _ = writeln!(svg, "<path class=\"wire\" d=\"M{x1} {y1}L{x2} {y2}\"/>");
        }
    }

    for idle in m.idle_ports() {
        let _ = writeln!(
            svg,
            "<path class=\"stub\" d=\"M{} {}h6\"/>",
            col_x(idle.port),
            row_y(layout.position(idle.switch))
        );
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}
