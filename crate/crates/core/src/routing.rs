//! Table-free minimal routing and the all-to-all exchange schedule.
//!
//! Every pair of switches in a CIN is one hop apart, so routing reduces to
//! picking the right output port. Each construction admits a closed form
//! that needs no routing table; [`route_oracle`] inverts the pairing matrix
//! itself and serves as the ground truth the closed forms are checked
//! against.

use crate::pairing::{CinKind, OneFactor, PairingMatrix, PortId, SwitchId};
use crate::{Error, Result};

/// Two-digit endpoint address: the owning switch and the endpoint's slot
/// among that switch's edge ports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EndpointAddress {
    pub switch: SwitchId,
    pub local: usize,
}

impl EndpointAddress {
    pub const fn new(switch: SwitchId, local: usize) -> Self {
        EndpointAddress { switch, local }
    }
}

/// What a switch does with a packet: deliver it through an edge port or
/// forward it through a network port.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoutingDecision {
    Eject(usize),
    Forward(PortId),
}

/// A step-wise all-to-all exchange: step `w` pairs the switches of
/// 1-factor `w`, so every switch talks to exactly one partner per step and
/// all pairs meet exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeSchedule {
    pub steps: Vec<OneFactor>,
}

fn check_pair(n: usize, a: SwitchId, b: SwitchId) -> Result<()> {
    for sw in [a, b] {
        if sw >= n {
            return Err(Error::SwitchOutOfRange { switch: sw, n });
        }
    }
    if a == b {
        return Err(Error::SameSwitch(a));
    }
    Ok(())
}

/// Ground-truth router: scans row `a` of the matrix for the unique port
/// that reaches `b`. Works for any valid pairing.
pub fn route_oracle(m: &PairingMatrix, a: SwitchId, b: SwitchId) -> Result<PortId> {
    check_pair(m.n(), a, b)?;
    let port = (0..m.ports_per_switch())
        .find(|&i| m.peer(a, i).is_some_and(|p| p.switch == b))
        .expect("a valid pairing links every switch pair");
    Ok(port)
}

/// Closed form for the XOR pairing: port `a XOR b - 1`.
pub fn route_xor(a: SwitchId, b: SwitchId) -> Result<PortId> {
    if a == b {
        return Err(Error::SameSwitch(a));
    }
    Ok((a ^ b) - 1)
}

/// Closed form for the even-sized Circle pairing.
///
/// For an odd physical size route with `n + 1`: the odd matrix is the even
/// one minus its last switch, so the removed row is never a valid source or
/// destination and every surviving link keeps its port index.
pub fn route_circle(n: usize, a: SwitchId, b: SwitchId) -> Result<PortId> {
    if n % 2 != 0 {
        return Err(Error::OddSwitchCount(n));
    }
    check_pair(n, a, b)?;
    let t = a + b;
    let port = if t == n - 1 {
        0
    } else if b == n - 1 {
        a
    } else if a == n - 1 {
        b
    } else if t % 2 == 0 {
        t / 2
    } else if t < n - 1 {
        (t + n - 1) / 2
    } else {
        (t - (n - 1)) / 2
    };
    Ok(port)
}

/// Closed form for the Swap pairing: port `b-1` going up, port `b` going
/// down. (Inverting the pairing rule directly; matches [`route_oracle`] on
/// every pair.)
pub fn route_swap(n: usize, a: SwitchId, b: SwitchId) -> Result<PortId> {
    check_pair(n, a, b)?;
    Ok(if a < b { b - 1 } else { b })
}

/// Dispatches to the closed-form router for `kind` over `n` switches,
/// applying the odd-size Circle adjustment.
pub fn route_kind(kind: CinKind, n: usize, a: SwitchId, b: SwitchId) -> Result<PortId> {
    check_pair(n, a, b)?;
    match kind {
        CinKind::Swap => route_swap(n, a, b),
        CinKind::Circle => route_circle(n + n % 2, a, b),
        CinKind::Xor => route_xor(a, b),
    }
}

/// Full per-switch decision: eject through edge port `dst.local` on the
/// destination switch, otherwise forward through the (unique) network port
/// toward it. Any forwarded packet ejects on the next decision.
pub fn decide(
    m: &PairingMatrix,
    current: SwitchId,
    dst: EndpointAddress,
) -> Result<RoutingDecision> {
    if current >= m.n() {
        return Err(Error::SwitchOutOfRange {
            switch: current,
            n: m.n(),
        });
    }
    if dst.switch >= m.n() {
        return Err(Error::SwitchOutOfRange {
            switch: dst.switch,
            n: m.n(),
        });
    }
    if current == dst.switch {
        Ok(RoutingDecision::Eject(dst.local))
    } else {
        Ok(RoutingDecision::Forward(route_oracle(m, current, dst.switch)?))
    }
}

/// Orders the 1-factors of an even isoport pairing into an all-to-all
/// exchange: step `w` is factor `w`.
pub fn all_to_all_schedule(m: &PairingMatrix) -> Result<ExchangeSchedule> {
    if !m.is_isoport() {
        return Err(Error::NotIsoport);
    }
    if m.n() % 2 != 0 {
        return Err(Error::OddSwitchCount(m.n()));
    }
    Ok(ExchangeSchedule {
        steps: m.one_factors()?.factors,
    })
}
