//! Linear arrangements of a CIN and their cabling metrics.
//!
//! Switches sit on a line, one slot apart. Isoport pairings then wire each
//! link as a straight run inside its port-index column, giving the minimum
//! possible total wire length for a 1D deployment: `w` wires of length
//! `n-w`, a total of `(n^3 - n)/6`. Anisoport pairings need oblique wires
//! instead, which costs roughly a factor of `sqrt(2)` in total length.
//!
//! Crossings only happen between wires of the same column. Two wires cross
//! exactly when their switch intervals interleave (`a < c < b < d`);
//! nested intervals run at different offsets inside the column, the way
//! such diagrams are usually drawn.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::pairing::{CinKind, PairingMatrix, PortId, SwitchId};
use crate::{Error, Result};

/// Assignment of switches to integer slots on a line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearLayout {
    positions: Vec<usize>,
}

impl LinearLayout {
    /// Switch `s` at slot `s`.
    pub fn identity(n: usize) -> Self {
        LinearLayout {
            positions: (0..n).collect(),
        }
    }

    /// `positions[switch] = slot`; must be a bijection onto `0..n`.
    pub fn from_positions(positions: Vec<usize>) -> Result<Self> {
        let n = positions.len();
        let mut seen = vec![false; n];
        for &p in &positions {
            if p >= n || seen[p] {
                return Err(Error::LayoutNotBijection);
            }
            seen[p] = true;
        }
        Ok(LinearLayout { positions })
    }

    pub fn n(&self) -> usize {
        self.positions.len()
    }

    pub fn position(&self, switch: SwitchId) -> usize {
        self.positions[switch]
    }

    /// Inverse map: which switch occupies each slot.
    pub fn switch_at(&self) -> Vec<SwitchId> {
        let mut inv = vec![0; self.positions.len()];
        for (s, &p) in self.positions.iter().enumerate() {
            inv[p] = s;
        }
        inv
    }
}

/// Wire lengths of a pairing under a layout, one length unit per
/// inter-switch pitch. Lengths are the vertical spans `|pos(a) - pos(b)|`;
/// see [`swap_wire_lengths`] for the oblique model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WireLengthReport {
    pub histogram: BTreeMap<usize, usize>,
    pub total: usize,
}

/// Euclidean wiring cost of the Swap pairing laid out linearly.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SwapLengthReport {
    pub euclidean_total: f64,
    /// `euclidean_total` over the isoport optimum `(n^3 - n)/6`;
    /// approaches `sqrt(2)` as `n` grows.
    pub ratio_to_iso: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FactorCrossings {
    pub port_index: PortId,
    pub crossings: usize,
}

/// Wire crossings per 1-factor and in total.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossingReport {
    pub per_factor: Vec<FactorCrossings>,
    pub total: usize,
}

fn check_layout(m: &PairingMatrix, layout: &LinearLayout) -> Result<()> {
    if layout.n() != m.n() {
        return Err(Error::LayoutSizeMismatch {
            layout: layout.n(),
            n: m.n(),
        });
    }
    Ok(())
}

/// Straight-run wire lengths of a pairing under `layout`.
///
/// Under the identity layout the histogram of any complete pairing has
/// `w` wires of length `n-w` and the total is `(n^3 - n)/6`.
pub fn wire_lengths(m: &PairingMatrix, layout: &LinearLayout) -> Result<WireLengthReport> {
    check_layout(m, layout)?;
    let mut histogram = BTreeMap::new();
    let mut total = 0;
    for link in m.links() {
        let d = layout
            .position(link.a.switch)
            .abs_diff(layout.position(link.b.switch));
        *histogram.entry(d).or_insert(0) += 1;
        total += d;
    }
    Ok(WireLengthReport { histogram, total })
}

/// Total wire length of the `n`-switch Swap pairing laid out linearly, in
/// the model where switch and port pitches coincide: a link spanning `k`
/// switches also spans `k-1` port columns, so it measures
/// `sqrt(k^2 + (k-1)^2)`.
pub fn swap_wire_lengths(n: usize) -> Result<SwapLengthReport> {
    let m = PairingMatrix::build(CinKind::Swap, n)?;
    let euclidean_total: f64 = m
        .links()
        .map(|link| {
            let k = link.a.switch.abs_diff(link.b.switch) as f64;
            let h = link.a.port.abs_diff(link.b.port) as f64;
            (k * k + h * h).sqrt()
        })
        .sum();
    let iso = (n * n * n - n) as f64 / 6.0;
    Ok(SwapLengthReport {
        euclidean_total,
        ratio_to_iso: euclidean_total / iso,
    })
}

/// The single link of a factor that may cross its parallel companions: the
/// one incident to the last switch. The lane rule routes it on the left of
/// the column while everything else keeps right.
pub fn designated_crossing_link(
    m: &PairingMatrix,
    factor: PortId,
) -> Option<(SwitchId, SwitchId)> {
    let last = m.n() - 1;
    let peer = m.peer(last, factor)?;
    Some((peer.switch.min(last), peer.switch.max(last)))
}

/// Counts same-column wire crossings of an isoport pairing under `layout`.
///
/// With `use_lanes` the designated crossing link of each factor is exempt
/// (it runs on its own side of the column). For the Circle pairing that
/// removes every crossing.
pub fn crossing_count(
    m: &PairingMatrix,
    layout: &LinearLayout,
    use_lanes: bool,
) -> Result<CrossingReport> {
    if !m.is_isoport() {
        return Err(Error::NotIsoport);
    }
    check_layout(m, layout)?;
    let mut per_factor = Vec::with_capacity(m.ports_per_switch());
    let mut total = 0;
    for factor in 0..m.ports_per_switch() {
        let designated = designated_crossing_link(m, factor);
        let intervals: Vec<(usize, usize, bool)> = m
            .links()
            .filter(|l| l.a.port == factor)
            .map(|l| {
                let pa = layout.position(l.a.switch);
                let pb = layout.position(l.b.switch);
                let exempt = use_lanes && designated == Some((l.a.switch, l.b.switch));
                (pa.min(pb), pa.max(pb), exempt)
            })
            .collect();
        let mut crossings = 0;
        for (x, &(a1, b1, e1)) in intervals.iter().enumerate() {
            for &(a2, b2, e2) in &intervals[x + 1..] {
                if e1 || e2 {
                    continue;
                }
                if (a1 < a2 && a2 < b1 && b1 < b2) || (a2 < a1 && a1 < b2 && b2 < b1) {
                    crossings += 1;
                }
            }
        }
        per_factor.push(FactorCrossings {
            port_index: factor,
            crossings,
        });
        total += crossings;
    }
    Ok(CrossingReport { per_factor, total })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity_report(kind: CinKind, n: usize) -> WireLengthReport {
        let m = PairingMatrix::build(kind, n).unwrap();
        wire_lengths(&m, &LinearLayout::identity(n)).unwrap()
    }

    #[test]
    fn isoport_identity_totals() {
        assert_eq!(identity_report(CinKind::Circle, 8).total, 84);
        assert_eq!(identity_report(CinKind::Xor, 8).total, 84);
        assert_eq!(identity_report(CinKind::Circle, 2).total, 1);
    }

    #[test]
    fn identity_histogram_has_w_wires_of_length_n_minus_w() {
        let n = 12;
        let rep = identity_report(CinKind::Circle, n);
        for w in 1..n {
            assert_eq!(rep.histogram.get(&(n - w)), Some(&w), "w={w}");
        }
        assert_eq!(rep.total, (n * n * n - n) / 6);
    }

    #[test]
    fn total_is_invariant_under_relabelling() {
        // A complete graph has the same length multiset whatever the
        // permutation, so the total does not move.
        let m = PairingMatrix::build(CinKind::Xor, 16).unwrap();
        let shuffled: Vec<usize> = (0..16).map(|s| (5 * s + 3) % 16).collect();
        let layout = LinearLayout::from_positions(shuffled).unwrap();
        assert_eq!(wire_lengths(&m, &layout).unwrap().total, (16 * 16 * 16 - 16) / 6);
    }

    #[test]
    fn swap_euclidean_frozen_values() {
        let small = swap_wire_lengths(2).unwrap();
        assert_eq!(small.euclidean_total, 1.0);
        assert_eq!(small.ratio_to_iso, 1.0);

        // Frozen from the closed-form sum over d of (n-d)*sqrt(d^2+(d-1)^2).
        let eight = swap_wire_lengths(8).unwrap();
        assert!((eight.euclidean_total - 102.49358076372343).abs() < 1e-9);
        assert!((eight.ratio_to_iso - 1.2201616757586122).abs() < 1e-12);

        let big = swap_wire_lengths(512).unwrap();
        assert!((big.ratio_to_iso - std::f64::consts::SQRT_2).abs() < 0.05 * std::f64::consts::SQRT_2);
    }

    #[test]
    fn swap_euclidean_matches_length_model() {
        // Independent route: w wires of vertical span n-w, horizontal span
        // one less.
        for n in [3, 8, 17, 32] {
            let expected: f64 = (1..n)
                .map(|d| ((n - d) as f64) * (((d * d + (d - 1) * (d - 1)) as f64).sqrt()))
                .sum();
            let got = swap_wire_lengths(n).unwrap().euclidean_total;
            assert!((got - expected).abs() < 1e-9, "n={n}");
        }
    }

    #[test]
    fn circle_crossings_follow_the_factor_formula() {
        let m = PairingMatrix::build(CinKind::Circle, 8).unwrap();
        let rep = crossing_count(&m, &LinearLayout::identity(8), false).unwrap();
        let counts: Vec<usize> = rep.per_factor.iter().map(|f| f.crossings).collect();
        assert_eq!(counts, vec![0, 1, 2, 3, 2, 1, 0]);
        assert_eq!(rep.total, 9);
    }

    #[test]
    fn circle_lane_rule_removes_all_crossings() {
        for n in [4, 8, 20] {
            let m = PairingMatrix::build(CinKind::Circle, n).unwrap();
            let rep = crossing_count(&m, &LinearLayout::identity(n), true).unwrap();
            assert_eq!(rep.total, 0, "n={n}");
        }
    }

    #[test]
    fn xor_crossings_frozen_value() {
        let m = PairingMatrix::build(CinKind::Xor, 8).unwrap();
        let rep = crossing_count(&m, &LinearLayout::identity(8), false).unwrap();
        assert_eq!(rep.total, 14);
        assert!(rep.total > 0);
    }

    #[test]
    fn lane_rule_only_removes_designated_crossings() {
        for (kind, n) in [(CinKind::Circle, 12), (CinKind::Xor, 16)] {
            let m = PairingMatrix::build(kind, n).unwrap();
            let layout = LinearLayout::identity(n);
            let plain = crossing_count(&m, &layout, false).unwrap();
            let laned = crossing_count(&m, &layout, true).unwrap();
            for (p, l) in plain.per_factor.iter().zip(&laned.per_factor) {
                // Count, independently, the interleavings that touch the
                // designated link of this factor.
                let designated = designated_crossing_link(&m, p.port_index).unwrap();
                let links: Vec<(usize, usize)> = m
                    .links()
                    .filter(|lk| lk.a.port == p.port_index)
                    .map(|lk| (lk.a.switch, lk.b.switch))
                    .collect();
                let touching = links
                    .iter()
                    .filter(|&&(a, b)| {
                        let (c, d) = designated;
                        (a, b) != designated
                            && ((a < c && c < b && b < d) || (c < a && a < d && d < b))
                    })
                    .count();
                assert_eq!(p.crossings - l.crossings, touching, "{kind} factor {}", p.port_index);
            }
        }
    }

    #[test]
    fn crossing_count_rejects_anisoport() {
        let m = PairingMatrix::build(CinKind::Swap, 8).unwrap();
        assert!(matches!(
            crossing_count(&m, &LinearLayout::identity(8), false),
            Err(Error::NotIsoport)
        ));
    }

    #[test]
    fn layout_validation() {
        assert!(LinearLayout::from_positions(vec![0, 2, 1]).is_ok());
        assert!(matches!(
            LinearLayout::from_positions(vec![0, 0, 1]),
            Err(Error::LayoutNotBijection)
        ));
        assert!(matches!(
            LinearLayout::from_positions(vec![0, 3, 1]),
            Err(Error::LayoutNotBijection)
        ));
        let m = PairingMatrix::build(CinKind::Circle, 8).unwrap();
        assert!(matches!(
            wire_lengths(&m, &LinearLayout::identity(6)),
            Err(Error::LayoutSizeMismatch { layout: 6, n: 8 })
        ));
    }
}
