//! Graphviz export. DOT has no notion of switch ports, so each edge
//! carries a `ports="i:j"` attribute with the port indices at its two
//! ends (lower switch first).

use std::fmt::Write;

use cin_core::{CinKind, PairingMatrix};

pub fn render_dot(kind: CinKind, m: &PairingMatrix) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph {kind}_{} {{", m.n());
    let _ = writeln!(out, "  node [shape=circle];");
    for s in 0..m.n() {
        let _ = writeln!(out, "  {s};");
    }
    for link in m.links() {
        let _ = writeln!(
            out,
            "  {} -- {} [ports=\"{}:{}\"];",
            link.a.switch, link.b.switch, link.a.port, link.b.port
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_8_has_28_edges() {
        let m = PairingMatrix::build(CinKind::Circle, 8).unwrap();
        let dot = render_dot(CinKind::Circle, &m);
        assert_eq!(dot.matches(" -- ").count(), 28);
        assert!(dot.starts_with("graph circle_8 {"));
        assert!(dot.contains("0 -- 7 [ports=\"0:0\"];"));
    }
}
