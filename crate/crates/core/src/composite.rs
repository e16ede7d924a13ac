//! Multi-dimensional fabrics built from one CIN per dimension.
//!
//! A HyperX is the Cartesian product of complete graphs: switches carry one
//! coordinate digit per dimension and are linked whenever they differ in
//! exactly one digit. Routing resolves one digit per hop (dimension-ordered
//! by default), so the diameter equals the number of dimensions and the
//! channel-dependency graph of DOR is acyclic, meaning a single buffer per
//! port suffices.
//!
//! The module also covers the cabling arithmetic of such systems: the
//! two-level view of a single CIN split into partitions (hoses bundling the
//! inter-partition wires) and the rack view of a HyperX (one dimension
//! wired inside the rack, the others as super-ports and hoses between
//! racks).

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::layout::{wire_lengths, LinearLayout};
use crate::pairing::{link_count, CinKind, PairingMatrix, PortId};
use crate::routing::route_kind;
use crate::{Error, Result};

/// One dimension of a fabric: a CIN instance over `size` switches.
#[derive(Debug, Clone)]
pub struct Dimension {
    size: usize,
    kind: CinKind,
    matrix: PairingMatrix,
}

impl Dimension {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn kind(&self) -> CinKind {
        self.kind
    }

    pub fn matrix(&self) -> &PairingMatrix {
        &self.matrix
    }
}

/// Endpoint address in a fabric: one digit per dimension (highest
/// significance first) plus the local endpoint digit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiDigitAddress {
    pub switch_digits: Vec<usize>,
    pub local: usize,
}

impl MultiDigitAddress {
    pub fn new(switch_digits: Vec<usize>, local: usize) -> Self {
        MultiDigitAddress {
            switch_digits,
            local,
        }
    }

    /// Splits a full digit tuple `(C_D .. C_1, C_0)` into switch digits and
    /// the local digit.
    pub fn from_digits(mut digits: Vec<usize>) -> Result<Self> {
        let local = digits.pop().ok_or(Error::AddressLength {
            expected: 2,
            got: 0,
        })?;
        Ok(MultiDigitAddress::new(digits, local))
    }
}

/// One step of a routed path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HopRecord {
    Forward { dim: usize, port: PortId },
    Eject { port: usize },
}

/// Aggregate size figures of a fabric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FabricStats {
    pub switches: usize,
    pub endpoints: usize,
    pub radix: usize,
    pub network_links: usize,
}

/// Link accounting of a CIN of `outer*inner` switches deployed as `outer`
/// partitions of `inner` switches each: links inside partitions stay local,
/// links between two partitions are grouped into one hose per partition
/// pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BundleReport {
    pub intra_partition_links: usize,
    pub inter_partition_links: usize,
    pub hose_count: usize,
    pub wires_per_hose: usize,
    pub total_links: usize,
}

/// Two-level accounting for a complete network split into partitions.
pub fn hierarchical_bundle_report(outer_n: usize, inner_n: usize) -> Result<BundleReport> {
    if outer_n == 0 || inner_n == 0 {
        return Err(Error::InvalidSize(0));
    }
    let intra = outer_n * link_count(inner_n);
    let hoses = link_count(outer_n);
    let wires = inner_n * inner_n;
    Ok(BundleReport {
        intra_partition_links: intra,
        inter_partition_links: hoses * wires,
        hose_count: hoses,
        wires_per_hose: wires,
        total_links: intra + hoses * wires,
    })
}

/// Cabling figures of one planar (inter-rack) dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PlanarDimReport {
    pub dim: usize,
    /// Same-index port bundles leaving each rack for this dimension.
    pub super_ports_per_rack: usize,
    pub ports_per_super_port: usize,
    /// Hoses linking the racks of one row/column of this dimension.
    pub hoses_per_group: usize,
    pub wires_per_hose: usize,
}

/// Rack-level cabling view of a fabric: the `rack_dim` dimension is wired
/// vertically inside each rack, the remaining dimensions connect racks.
///
/// The intra-rack links are reported in two ways that both total
/// `size*(size-1)/2`: per port-index column (each column of an even
/// isoport instance carries `size/2` wires) and per wire length (`w` wires
/// of length `size-w`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RackReport {
    pub rack_dim: usize,
    pub switches_per_rack: usize,
    pub rack_count: usize,
    pub intra_rack_links: usize,
    pub intra_rack_columns: usize,
    /// Links per port-index column (empty for an anisoport rack dimension).
    pub links_per_column: Vec<usize>,
    /// Wire-length histogram of one rack under the identity layout.
    pub length_histogram: BTreeMap<usize, usize>,
    pub planar: Vec<PlanarDimReport>,
}

/// A HyperX fabric: one CIN per dimension plus the per-switch edge ports.
#[derive(Debug, Clone)]
pub struct HyperXFabric {
    dims: Vec<Dimension>,
    edge_ports: usize,
}

impl HyperXFabric {
    /// Builds a fabric from `(size, kind)` per dimension, highest
    /// significance first.
    pub fn new(dims: &[(usize, CinKind)], edge_ports: usize) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::NoDimensions);
        }
        let dims = dims
            .iter()
            .map(|&(size, kind)| {
                Ok(Dimension {
                    size,
                    kind,
                    matrix: PairingMatrix::build(kind, size)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HyperXFabric { dims, edge_ports })
    }

    pub fn dims(&self) -> &[Dimension] {
        &self.dims
    }

    pub fn edge_ports(&self) -> usize {
        self.edge_ports
    }

    pub fn switch_count(&self) -> usize {
        self.dims.iter().map(|d| d.size).product()
    }

    /// Dimensions in routing order, highest digit first.
    pub fn default_dim_order(&self) -> Vec<usize> {
        (0..self.dims.len()).collect()
    }

    pub fn stats(&self) -> FabricStats {
        let switches = self.switch_count();
        let net_ports: usize = self.dims.iter().map(|d| d.size - 1).sum();
        let network_links = self
            .dims
            .iter()
            .map(|d| switches / d.size * link_count(d.size))
            .sum();
        FabricStats {
            switches,
            endpoints: switches * self.edge_ports,
            radix: self.edge_ports + net_ports,
            network_links,
        }
    }

    /// Flattens switch digits into a single index (row-major, digit 0 most
    /// significant).
    pub fn pack(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&d, dim)| acc * dim.size + d)
    }

    /// Inverse of [`pack`](Self::pack).
    pub fn unpack(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.dims.len()];
        for (slot, dim) in digits.iter_mut().zip(&self.dims).rev() {
            *slot = index % dim.size;
            index /= dim.size;
        }
        digits
    }

    fn check_address(&self, addr: &MultiDigitAddress) -> Result<()> {
        if addr.switch_digits.len() != self.dims.len() {
            return Err(Error::AddressLength {
                expected: self.dims.len() + 1,
                got: addr.switch_digits.len() + 1,
            });
        }
        for (pos, (&digit, dim)) in addr.switch_digits.iter().zip(&self.dims).enumerate() {
            if digit >= dim.size {
                return Err(Error::InvalidAddress {
                    position: pos,
                    value: digit,
                    limit: dim.size,
                });
            }
        }
        if addr.local >= self.edge_ports {
            return Err(Error::InvalidAddress {
                position: self.dims.len(),
                value: addr.local,
                limit: self.edge_ports,
            });
        }
        Ok(())
    }

    fn check_dim_order(&self, order: &[usize]) -> Result<()> {
        let count = self.dims.len();
        let mut seen = vec![false; count];
        let ok = order.len() == count
            && order.iter().all(|&d| {
                d < count && !std::mem::replace(&mut seen[d], true)
            });
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidDimOrder {
                order: order.to_vec(),
                count,
            })
        }
    }

    /// Dimension-ordered minimal route from `src` to `dst`: one hop per
    /// differing switch digit, visited in `dim_order`, then the ejection
    /// port.
    pub fn route_dor(
        &self,
        src: &MultiDigitAddress,
        dst: &MultiDigitAddress,
        dim_order: &[usize],
    ) -> Result<Vec<HopRecord>> {
        self.check_address(src)?;
        self.check_address(dst)?;
        self.check_dim_order(dim_order)?;
        let mut hops = Vec::new();
        for &dim in dim_order {
            let (a, b) = (src.switch_digits[dim], dst.switch_digits[dim]);
            if a != b {
                let port = route_kind(self.dims[dim].kind, self.dims[dim].size, a, b)?;
                hops.push(HopRecord::Forward { dim, port });
            }
        }
        hops.push(HopRecord::Eject { port: dst.local });
        Ok(hops)
    }

    /// Builds the channel-dependency graph of dimension-ordered routing
    /// over every switch pair and reports whether it is acyclic.
    ///
    /// Nodes are directed network channels `(switch, dimension, port)`;
    /// edges join channels used consecutively by some route.
    pub fn cdg_is_acyclic(&self, dim_order: &[usize]) -> Result<bool> {
        self.check_dim_order(dim_order)?;
        let switches = self.switch_count();
        let ndims = self.dims.len();
        let max_ports = self
            .dims
            .iter()
            .map(|d| d.matrix.ports_per_switch())
            .max()
            .unwrap_or(0);
        let digits: Vec<Vec<usize>> = (0..switches).map(|x| self.unpack(x)).collect();
        let channel =
            |switch: usize, dim: usize, port: usize| (switch * ndims + dim) * max_ports + port;

        let mut edges: HashSet<(usize, usize)> = HashSet::new();
        let mut cur = vec![0; ndims];
        for src in 0..switches {
            for dst in 0..switches {
                if src == dst {
                    continue;
                }
                cur.copy_from_slice(&digits[src]);
                let target = &digits[dst];
                let mut prev = None;
                for &dim in dim_order {
                    if cur[dim] != target[dim] {
                        let port =
                            route_kind(self.dims[dim].kind, self.dims[dim].size, cur[dim], target[dim])?;
                        let here = channel(self.pack(&cur), dim, port);
                        if let Some(p) = prev {
                            edges.insert((p, here));
                        }
                        prev = Some(here);
                        cur[dim] = target[dim];
                    }
                }
            }
        }

        // Kahn's algorithm over the channels that occur in some dependency.
        let mut adjacency: HashMap<usize, Vec<usize>> = HashMap::new();
        let mut in_degree: HashMap<usize, usize> = HashMap::new();
        for &(from, to) in &edges {
            adjacency.entry(from).or_default().push(to);
            in_degree.entry(from).or_insert(0);
            *in_degree.entry(to).or_insert(0) += 1;
        }
        let mut queue: Vec<usize> = in_degree
            .iter()
            .filter(|&(_, &d)| d == 0)
            .map(|(&c, _)| c)
            .collect();
        let mut visited = 0;
        while let Some(c) = queue.pop() {
            visited += 1;
            for &next in adjacency.get(&c).into_iter().flatten() {
                let d = in_degree.get_mut(&next).expect("edge endpoints are seeded");
                *d -= 1;
                if *d == 0 {
                    queue.push(next);
                }
            }
        }
        Ok(visited == in_degree.len())
    }

    /// Rack-level cabling view with dimension `rack_dim` wired inside the
    /// racks.
    pub fn rack_report(&self, rack_dim: usize) -> Result<RackReport> {
        let Some(rack) = self.dims.get(rack_dim) else {
            return Err(Error::InvalidDimension {
                index: rack_dim,
                count: self.dims.len(),
            });
        };
        let size = rack.size;
        let links_per_column = if rack.matrix.is_isoport() {
            rack.matrix
                .one_factors()?
                .factors
                .iter()
                .map(|f| f.links.len())
                .collect()
        } else {
            Vec::new()
        };
        let length_histogram =
            wire_lengths(&rack.matrix, &LinearLayout::identity(size))?.histogram;
        let planar = self
            .dims
            .iter()
            .enumerate()
            .filter(|&(d, _)| d != rack_dim)
            .map(|(d, dim)| PlanarDimReport {
                dim: d,
                super_ports_per_rack: dim.size - 1,
                ports_per_super_port: size,
                hoses_per_group: link_count(dim.size),
                wires_per_hose: size,
            })
            .collect();
        Ok(RackReport {
            rack_dim,
            switches_per_rack: size,
            rack_count: self.switch_count() / size,
            intra_rack_links: link_count(size),
            intra_rack_columns: rack.matrix.ports_per_switch(),
            links_per_column,
            length_histogram,
            planar,
        })
    }
}
