//! Port-pairing matrices for complete interconnection networks.
//!
//! A CIN of `n` switches connects every pair of switches with a dedicated
//! link, so each switch needs `n-1` network ports. Which port pairs with
//! which is a free design choice; the pairing matrix makes it explicit:
//! entry `(s, i)` names the peer of port `i` on switch `s`.
//!
//! Three constructions are implemented:
//!
//! * `Swap`: connect each switch to the others in label order, always
//!   using the first free port on both ends. Ports of a link usually end
//!   up with different indices (*anisoport*).
//! * `Circle`: the round-robin tournament schedule. Every link joins two
//!   ports of equal index (*isoport*), so the columns of the matrix are
//!   the 1-factors of `K_n`. Odd sizes are built from the even `n+1`
//!   matrix by dropping the last switch, leaving one idle port per switch.
//! * `Xor`: pair port `i` of switch `s` with the same port of switch
//!   `s XOR (i+1)`. Isoport as well; requires a power-of-two size.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result, ValidationError};

/// Index of a switch, `0..n` within its topology.
pub type SwitchId = usize;

/// Index of a network port on a switch (a column of the pairing matrix).
pub type PortId = usize;

/// One end of a link: a specific port on a specific switch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PortRef {
    pub switch: SwitchId,
    pub port: PortId,
}

impl PortRef {
    pub const fn new(switch: SwitchId, port: PortId) -> Self {
        PortRef { switch, port }
    }
}

impl fmt::Display for PortRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.switch, self.port)
    }
}

/// A physical link between two ports, with `a.switch < b.switch`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Link {
    pub a: PortRef,
    pub b: PortRef,
}

/// Selects one of the pairing constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CinKind {
    Swap,
    Circle,
    Xor,
}

impl CinKind {
    pub const ALL: [CinKind; 3] = [CinKind::Swap, CinKind::Circle, CinKind::Xor];

    /// Whether `n` switches can be wired with this construction.
    pub fn supports(self, n: usize) -> bool {
        n >= 2 && (self != CinKind::Xor || n.is_power_of_two())
    }
}

impl fmt::Display for CinKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            CinKind::Swap => "swap",
            CinKind::Circle => "circle",
            CinKind::Xor => "xor",
        };
        f.write_str(name)
    }
}

impl FromStr for CinKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "swap" => Ok(CinKind::Swap),
            "circle" => Ok(CinKind::Circle),
            "xor" => Ok(CinKind::Xor),
            other => Err(format!("unknown pairing kind `{other}`")),
        }
    }
}

/// Number of links in a CIN of `n` switches: `n(n-1)/2`.
pub fn link_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Minimum switch radix for a well-dimensioned CIN of `n` switches
/// (`n` edge ports plus `n-1` network ports).
pub fn radix_required(n: usize) -> usize {
    assert!(n >= 1, "radix_required needs at least one switch");
    2 * n - 1
}

/// End-point computers a well-dimensioned CIN of `n` switches can host.
pub fn endpoint_capacity(n: usize) -> usize {
    n * n
}

/// A perfect (or, for odd sizes, near-perfect) matching formed by all the
/// links that use one port index on both ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneFactor {
    pub port_index: PortId,
    /// Unordered switch pairs, stored as `(low, high)` and sorted.
    pub links: Vec<(SwitchId, SwitchId)>,
}

/// The per-port-index factors of an isoport pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<OneFactor>,
    /// True when the pairing has idle ports (odd switch count): each factor
    /// is then a partial matching that leaves one switch unpaired.
    pub partial: bool,
}

/// The port-pairing matrix of a CIN: `n` rows (switches) by
/// `ports_per_switch` columns (port indices), each non-idle cell naming the
/// peer port. Construction validates the invariants eagerly (involution,
/// no self-loops, completeness), so an invalid matrix is
/// unrepresentable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingMatrix {
    n: usize,
    ports: usize,
    entries: Vec<Option<PortRef>>,
}

impl PairingMatrix {
    /// Builds the pairing for `kind` over `n` switches.
    ///
    /// Even sizes use `n-1` ports per switch. Odd `Circle` keeps the port
    /// columns of the `n+1` construction (`n` of them) and leaves exactly
    /// one idle port per switch. `Swap` accepts any size; `Xor` only powers
    /// of two.
    pub fn build(kind: CinKind, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSize(n));
        }
        match kind {
            CinKind::Swap => Self::build_swap(n),
            CinKind::Circle if n % 2 == 0 => Self::build_circle_even(n),
            CinKind::Circle => Self::build_circle_odd(n),
            CinKind::Xor if n.is_power_of_two() => Self::build_xor(n),
            CinKind::Xor => Err(Error::UnsupportedSize { kind, n }),
        }
    }

    /// Assembles a matrix from raw parts and validates it.
    pub fn from_parts(n: usize, ports: usize, entries: Vec<Option<PortRef>>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSize(n));
        }
        if entries.len() != n * ports {
            return Err(ValidationError::Shape {
                expected: n * ports,
                got: entries.len(),
            }
            .into());
        }
        let m = PairingMatrix { n, ports, entries };
        m.validate()?;
        Ok(m)
    }

    fn build_swap(n: usize) -> Result<Self> {
        // Port i of switch s leads to switch i+1 when s <= i, to switch i
        // otherwise; the peer port packs symmetrically.
        let ports = n - 1;
        let entries = (0..n)
            .flat_map(|s| {
                (0..ports).map(move |i| {
                    Some(if s <= i {
                        PortRef::new(i + 1, s)
                    } else {
                        PortRef::new(i, s - 1)
                    })
                })
            })
            .collect();
        Self::from_parts(n, ports, entries)
    }

    fn build_circle_even(n: usize) -> Result<Self> {
        let ports = n - 1;
        let entries = (0..n)
            .flat_map(|s| {
                (0..ports).map(move |i| {
                    let peer = if s == n - 1 {
                        i
                    } else if s == i {
                        n - 1
                    } else {
                        (2 * i + (n - 1) - s) % (n - 1)
                    };
                    Some(PortRef::new(peer, i))
                })
            })
            .collect();
        Self::from_parts(n, ports, entries)
    }

    fn build_circle_odd(n: usize) -> Result<Self> {
        // Build the even n+1 matrix, drop its last row and idle every port
        // that pointed at the removed switch.
        let even = Self::build_circle_even(n + 1)?;
        let ports = even.ports;
        let mut entries = Vec::with_capacity(n * ports);
        for s in 0..n {
            for i in 0..ports {
                entries.push(even.peer(s, i).filter(|p| p.switch != n));
            }
        }
        Self::from_parts(n, ports, entries)
    }

    fn build_xor(n: usize) -> Result<Self> {
        let ports = n - 1;
        let entries = (0..n)
            .flat_map(|s| (0..ports).map(move |i| Some(PortRef::new(s ^ (i + 1), i))))
            .collect();
        Self::from_parts(n, ports, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Port columns per switch: `n-1`, or `n` for odd-sized `Circle`.
    pub fn ports_per_switch(&self) -> usize {
        self.ports
    }

    /// Peer of port `port` on switch `switch`; `None` marks an idle port.
    pub fn peer(&self, switch: SwitchId, port: PortId) -> Option<PortRef> {
        self.entries[switch * self.ports + port]
    }

    /// True when every link joins two ports with the same index.
    pub fn is_isoport(&self) -> bool {
        (0..self.n)
            .all(|s| (0..self.ports).all(|i| self.peer(s, i).is_none_or(|p| p.port == i)))
    }

    pub fn has_idle_ports(&self) -> bool {
        self.entries.iter().any(Option::is_none)
    }

    /// Each physical link exactly once, ordered by `(a.switch, a.port)`.
    pub fn links(&self) -> impl Iterator<Item = Link> + '_ {
        (0..self.n).flat_map(move |s| {
            (0..self.ports).filter_map(move |i| {
                let peer = self.peer(s, i)?;
                (s < peer.switch).then_some(Link {
                    a: PortRef::new(s, i),
                    b: peer,
                })
            })
        })
    }

    /// Idle ports in `(switch, port)` order.
    pub fn idle_ports(&self) -> impl Iterator<Item = PortRef> + '_ {
        (0..self.n).flat_map(move |s| {
            (0..self.ports)
                .filter(move |&i| self.peer(s, i).is_none())
                .map(move |i| PortRef::new(s, i))
        })
    }

    /// Splits an isoport pairing into its per-port-index factors.
    ///
    /// For even sizes this is a 1-factorization: `n-1` perfect matchings
    /// partitioning the edge set of `K_n`. Odd sizes yield partial
    /// matchings, flagged in the result.
    pub fn one_factors(&self) -> Result<Factorization> {
        if !self.is_isoport() {
            return Err(Error::NotIsoport);
        }
        let mut factors: Vec<OneFactor> = (0..self.ports)
            .map(|i| OneFactor {
                port_index: i,
                links: Vec::new(),
            })
            .collect();
        for link in self.links() {
            factors[link.a.port].links.push((link.a.switch, link.b.switch));
        }
        Ok(Factorization {
            partial: self.has_idle_ports(),
            factors,
        })
    }

    /// Re-checks every invariant; constructors already do this.
    pub fn validate(&self) -> Result<()> {
        for s in 0..self.n {
            for i in 0..self.ports {
                let Some(peer) = self.peer(s, i) else { continue };
                if peer.switch >= self.n || peer.port >= self.ports {
                    return Err(ValidationError::PeerOutOfRange {
                        switch: s,
                        port: i,
                        peer_switch: peer.switch,
                        peer_port: peer.port,
                    }
                    .into());
                }
                if peer.switch == s {
                    return Err(ValidationError::SelfLoop { switch: s, port: i }.into());
                }
                let back = self.peer(peer.switch, peer.port);
                if back != Some(PortRef::new(s, i)) {
                    return Err(ValidationError::Involution {
                        switch: s,
                        port: i,
                        peer_switch: peer.switch,
                        peer_port: peer.port,
                    }
                    .into());
                }
            }
        }
        // Completeness: every unordered switch pair linked exactly once.
        let mut seen = BTreeSet::new();
        for link in self.links() {
            if !seen.insert((link.a.switch, link.b.switch)) {
                return Err(ValidationError::DuplicatePair {
                    a: link.a.switch,
                    b: link.b.switch,
                }
                .into());
            }
        }
        if seen.len() != link_count(self.n) {
            for a in 0..self.n {
                for b in a + 1..self.n {
                    if !seen.contains(&(a, b)) {
                        return Err(ValidationError::MissingPair { a, b }.into());
                    }
                }
            }
        }
        if self.n % 2 == 0 {
            if let Some(idle) = self.idle_ports().next() {
                return Err(ValidationError::UnexpectedIdle {
                    switch: idle.switch,
                    port: idle.port,
                }
                .into());
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_8_matches_construction_rule() {
        let m = PairingMatrix::build(CinKind::Circle, 8).unwrap();
        // Last switch reaches switch i through column i; switch i points back.
        assert_eq!(m.peer(7, 3), Some(PortRef::new(3, 3)));
        assert_eq!(m.peer(3, 3), Some(PortRef::new(7, 3)));
    }

    #[test]
    fn circle_8_column_3_is_the_expected_matching() {
        let m = PairingMatrix::build(CinKind::Circle, 8).unwrap();
        let links: BTreeSet<(usize, usize)> = m
            .links()
            .filter(|l| l.a.port == 3)
            .map(|l| (l.a.switch, l.b.switch))
            .collect();
        let expected: BTreeSet<(usize, usize)> =
            [(3, 7), (0, 6), (1, 5), (2, 4)].into_iter().collect();
        assert_eq!(links, expected);
    }

    #[test]
    fn xor_8_pairs_by_label_xor() {
        let m = PairingMatrix::build(CinKind::Xor, 8).unwrap();
        assert_eq!(m.peer(3, 3), Some(PortRef::new(7, 3))); // 3 ^ (3+1) = 7
        assert_eq!(m.peer(7, 3), Some(PortRef::new(3, 3)));
    }

    #[test]
    fn swap_2_is_the_single_link() {
        let m = PairingMatrix::build(CinKind::Swap, 2).unwrap();
        assert_eq!(m.peer(0, 0), Some(PortRef::new(1, 0)));
        assert_eq!(m.peer(1, 0), Some(PortRef::new(0, 0)));
    }

    #[test]
    fn odd_circle_idles_one_port_per_switch() {
        let m = PairingMatrix::build(CinKind::Circle, 7).unwrap();
        assert_eq!(m.n(), 7);
        assert_eq!(m.ports_per_switch(), 7);
        for s in 0..7 {
            let idle: Vec<_> = (0..7).filter(|&i| m.peer(s, i).is_none()).collect();
            assert_eq!(idle.len(), 1, "switch {s} should have one idle port");
        }
        assert!(m.is_isoport());
        assert_eq!(m.links().count(), link_count(7));
    }

    #[test]
    fn size_errors() {
        assert!(matches!(
            PairingMatrix::build(CinKind::Circle, 1),
            Err(Error::InvalidSize(1))
        ));
        assert!(matches!(
            PairingMatrix::build(CinKind::Xor, 6),
            Err(Error::UnsupportedSize { n: 6, .. })
        ));
    }

    #[test]
    fn isoport_classification() {
        assert!(PairingMatrix::build(CinKind::Circle, 8).unwrap().is_isoport());
        assert!(PairingMatrix::build(CinKind::Xor, 8).unwrap().is_isoport());
        assert!(!PairingMatrix::build(CinKind::Swap, 8).unwrap().is_isoport());
        // The 2-switch pairing is trivially isoport whatever the kind.
        assert!(PairingMatrix::build(CinKind::Swap, 2).unwrap().is_isoport());
    }

    #[test]
    fn circle_8_factorization() {
        let m = PairingMatrix::build(CinKind::Circle, 8).unwrap();
        let f = m.one_factors().unwrap();
        assert!(!f.partial);
        assert_eq!(f.factors.len(), 7);
        for factor in &f.factors {
            assert_eq!(factor.links.len(), 4);
        }
        assert_eq!(
            f.factors[3].links,
            vec![(0, 6), (1, 5), (2, 4), (3, 7)]
        );
    }

    #[test]
    fn xor_8_factor_0_pairs_adjacent_labels() {
        let m = PairingMatrix::build(CinKind::Xor, 8).unwrap();
        let f = m.one_factors().unwrap();
        assert_eq!(f.factors[0].links, vec![(0, 1), (2, 3), (4, 5), (6, 7)]);
    }

    #[test]
    fn one_factors_rejects_anisoport() {
        let m = PairingMatrix::build(CinKind::Swap, 8).unwrap();
        assert!(matches!(m.one_factors(), Err(Error::NotIsoport)));
    }

    #[test]
    fn odd_circle_factors_are_partial() {
        let m = PairingMatrix::build(CinKind::Circle, 7).unwrap();
        let f = m.one_factors().unwrap();
        assert!(f.partial);
        assert_eq!(f.factors.len(), 7);
        assert_eq!(f.factors.iter().map(|f| f.links.len()).sum::<usize>(), 21);
    }

    #[test]
    fn size_formulas() {
        assert_eq!(link_count(8), 28);
        assert_eq!(radix_required(8), 15);
        assert_eq!(endpoint_capacity(8), 64);
        assert_eq!(link_count(1), 0);
    }

    #[test]
    fn sweep_validates_and_classifies() {
        for n in 2..=32 {
            for kind in [CinKind::Swap, CinKind::Circle] {
                let m = PairingMatrix::build(kind, n).unwrap();
                m.validate().unwrap();
                assert_eq!(m.links().count(), link_count(n), "{kind} n={n}");
            }
            if n.is_power_of_two() {
                let m = PairingMatrix::build(CinKind::Xor, n).unwrap();
                m.validate().unwrap();
            }
        }
    }

    #[test]
    fn even_factors_partition_the_edge_set() {
        for kind in [CinKind::Circle, CinKind::Xor] {
            let m = PairingMatrix::build(kind, 16).unwrap();
            let f = m.one_factors().unwrap();
            assert_eq!(f.factors.len(), 15);
            let mut all = BTreeSet::new();
            for factor in &f.factors {
                let mut used = BTreeSet::new();
                for &(a, b) in &factor.links {
                    assert!(used.insert(a) && used.insert(b), "matching reuses a switch");
                    assert!(all.insert((a, b)), "edge appears in two factors");
                }
                assert_eq!(used.len(), 16);
            }
            assert_eq!(all.len(), link_count(16));
        }
    }

    #[test]
    fn isoport_columns_are_involutions() {
        // Column maps of an isoport pairing are fixed-point-free involutions
        // on the switches they touch. (Not true for anisoport pairings.)
        for (kind, n) in [(CinKind::Circle, 12), (CinKind::Circle, 9), (CinKind::Xor, 16)] {
            let m = PairingMatrix::build(kind, n).unwrap();
            for i in 0..m.ports_per_switch() {
                for s in 0..n {
                    if let Some(p) = m.peer(s, i) {
                        assert_ne!(p.switch, s);
                        assert_eq!(m.peer(p.switch, i).unwrap().switch, s);
                    }
                }
            }
        }
    }

    #[test]
    fn from_parts_rejects_broken_involution() {
        let m = PairingMatrix::build(CinKind::Circle, 4).unwrap();
        let mut entries: Vec<Option<PortRef>> = (0..4)
            .flat_map(|s| (0..3).map(|i| m.peer(s, i)).collect::<Vec<_>>())
            .collect();
        entries[2] = Some(PortRef::new(1, 0)); // entry (0,2) -> (1,0) points elsewhere
        let err = PairingMatrix::from_parts(4, 3, entries).unwrap_err();
        assert!(err.to_string().contains("involution"), "{err}");
    }

    #[test]
    fn from_parts_rejects_self_loop() {
        let entries = vec![Some(PortRef::new(0, 0)), Some(PortRef::new(1, 0))];
        let err = PairingMatrix::from_parts(2, 1, entries).unwrap_err();
        assert!(matches!(
            err,
            Error::Validation(ValidationError::SelfLoop { switch: 0, port: 0 })
        ));
    }
}
