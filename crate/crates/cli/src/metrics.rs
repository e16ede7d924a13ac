//! JSON metric reports for single pairings and fabrics.

use std::collections::BTreeMap;

use serde::Serialize;

use cin_core::composite::{hierarchical_bundle_report, BundleReport, FabricStats, HyperXFabric, RackReport};
use cin_core::layout::{crossing_count, swap_wire_lengths, wire_lengths, LinearLayout};
use cin_core::{endpoint_capacity, link_count, radix_required, CinKind, PairingMatrix, Result};

/// Layout and size metrics of one CIN instance.
#[derive(Debug, Serialize)]
pub struct CinMetrics {
    pub kind: String,
    pub n: usize,
    pub isoport: bool,
    pub links: usize,
    pub radix_required: usize,
    pub endpoint_capacity: usize,
    /// Straight-run total under the identity layout; `(n^3 - n)/6` for a
    /// complete pairing.
    pub total_wire_length: usize,
    pub wire_length_histogram: BTreeMap<usize, usize>,
    /// Crossing totals (isoport instances only).
    pub crossings_without_lanes: Option<usize>,
    pub crossings_with_lanes: Option<usize>,
    /// Total wire length normalized to the isoport optimum.
    pub wire_length_ratio: f64,
    /// Oblique-wiring total of the Swap pairing.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euclidean_wire_length: Option<f64>,
    /// Two-level partition view when `n` is a perfect square.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_level: Option<BundleReport>,
}

pub fn cin_metrics(kind: CinKind, n: usize) -> Result<CinMetrics> {
    let m = PairingMatrix::build(kind, n)?;
    let layout = LinearLayout::identity(n);
    let lengths = wire_lengths(&m, &layout)?;
    let isoport = m.is_isoport();
    let (without, with) = if isoport {
        (
            Some(crossing_count(&m, &layout, false)?.total),
            Some(crossing_count(&m, &layout, true)?.total),
        )
    } else {
        (None, None)
    };
    let (ratio, euclidean) = if kind == CinKind::Swap {
        let r = swap_wire_lengths(n)?;
        (r.ratio_to_iso, Some(r.euclidean_total))
    } else {
        (1.0, None)
    };
    let side = n.isqrt();
    let two_level = (side >= 2 && side * side == n)
        .then(|| hierarchical_bundle_report(side, side))
        .transpose()?;
    Ok(CinMetrics {
        kind: kind.to_string(),
        n,
        isoport,
        links: link_count(n),
        radix_required: radix_required(n),
        endpoint_capacity: endpoint_capacity(n),
        total_wire_length: lengths.total,
        wire_length_histogram: lengths.histogram,
        crossings_without_lanes: without,
        crossings_with_lanes: with,
        wire_length_ratio: ratio,
        euclidean_wire_length: euclidean,
        two_level,
    })
}

#[derive(Debug, Serialize)]
pub struct DimSpec {
    pub size: usize,
    pub kind: String,
}

/// Size, rack-cabling and per-dimension metrics of a HyperX fabric.
#[derive(Debug, Serialize)]
pub struct FabricMetrics {
    pub dims: Vec<DimSpec>,
    pub edge_ports: usize,
    pub stats: FabricStats,
    /// Rack view with the highest dimension wired inside the racks.
    pub rack: RackReport,
    pub per_dimension: Vec<CinMetrics>,
}

pub fn fabric_metrics(fabric: &HyperXFabric) -> Result<FabricMetrics> {
    Ok(FabricMetrics {
        dims: fabric
            .dims()
            .iter()
            .map(|d| DimSpec {
                size: d.size(),
                kind: d.kind().to_string(),
            })
            .collect(),
        edge_ports: fabric.edge_ports(),
        stats: fabric.stats(),
        rack: fabric.rack_report(0)?,
        per_dimension: fabric
            .dims()
            .iter()
            .map(|d| cin_metrics(d.kind(), d.size()))
            .collect::<Result<_>>()?,
    })
}
