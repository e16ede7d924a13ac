//! Invariant sweeps behind the `verify` subcommand.
//!
//! Every check revalidates from first principles rather than trusting the
//! constructors: pairings are rebuilt and validated, closed-form routers
//! are compared against the matrix-inversion oracle on every ordered pair,
//! and the layout identities are recomputed.

use std::collections::BTreeSet;

use cin_core::layout::{crossing_count, swap_wire_lengths, wire_lengths, LinearLayout};
use cin_core::routing::{all_to_all_schedule, route_kind, route_oracle};
use cin_core::{link_count, CinKind, PairingMatrix};

#[derive(Debug)]
pub struct Failure {
    pub kind: CinKind,
    pub n: usize,
    pub check: &'static str,
    pub detail: String,
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FAIL kind={} n={} check={}: {}",
            self.kind, self.n, self.check, self.detail
        )
    }
}

pub struct SweepOutcome {
    pub checks: usize,
    pub failures: Vec<Failure>,
}

type CheckResult = Result<(), String>;

fn check_build(m: &PairingMatrix) -> CheckResult {
    m.validate().map_err(|e| e.to_string())
}

fn check_classification(kind: CinKind, m: &PairingMatrix) -> CheckResult {
    let expected = match kind {
        CinKind::Circle | CinKind::Xor => true,
        CinKind::Swap => m.n() < 3,
    };
    if m.is_isoport() == expected {
        Ok(())
    } else {
        Err(format!("is_isoport returned {}", m.is_isoport()))
    }
}

fn check_oracle(kind: CinKind, m: &PairingMatrix) -> CheckResult {
    let n = m.n();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let oracle = route_oracle(m, a, b).map_err(|e| e.to_string())?;
            let closed = route_kind(kind, n, a, b).map_err(|e| e.to_string())?;
            if oracle != closed {
                return Err(format!("{a}->{b}: closed form {closed}, oracle {oracle}"));
            }
            if m.peer(a, closed).map(|p| p.switch) != Some(b) {
                return Err(format!("{a}->{b}: port {closed} does not reach {b}"));
            }
        }
    }
    Ok(())
}

fn check_factors(m: &PairingMatrix) -> CheckResult {
    let n = m.n();
    let f = m.one_factors().map_err(|e| e.to_string())?;
    if f.partial != (n % 2 == 1) {
        return Err(format!("partial flag {} for n={n}", f.partial));
    }
    let mut pairs = BTreeSet::new();
    for factor in &f.factors {
        let mut used = BTreeSet::new();
        for &(a, b) in &factor.links {
            if a >= b || b >= n {
                return Err(format!("bad link ({a},{b}) in factor {}", factor.port_index));
            }
            if !used.insert(a) || !used.insert(b) {
                return Err(format!("switch repeated in factor {}", factor.port_index));
            }
            if !pairs.insert((a, b)) {
                return Err(format!("pair ({a},{b}) in two factors"));
            }
        }
        if n % 2 == 0 && used.len() != n {
            return Err(format!(
                "factor {} covers {} switches",
                factor.port_index,
                used.len()
            ));
        }
    }
    if pairs.len() != link_count(n) {
        return Err(format!("factors cover {} pairs", pairs.len()));
    }
    Ok(())
}

fn check_wire_lengths(m: &PairingMatrix) -> CheckResult {
    let n = m.n();
    let report = wire_lengths(m, &LinearLayout::identity(n)).map_err(|e| e.to_string())?;
    if report.total != (n * n * n - n) / 6 {
        return Err(format!("total {} != (n^3-n)/6", report.total));
    }
    for w in 1..n {
        if report.histogram.get(&(n - w)) != Some(&w) {
            return Err(format!("histogram[{}] != {w}", n - w));
        }
    }
    Ok(())
}

fn check_circle_crossings(m: &PairingMatrix) -> CheckResult {
    let n = m.n();
    let layout = LinearLayout::identity(n);
    let plain = crossing_count(m, &layout, false).map_err(|e| e.to_string())?;
    for f in &plain.per_factor {
        let expected = if f.port_index < n / 2 {
            f.port_index
        } else {
            n - 2 - f.port_index
        };
        if f.crossings != expected {
            return Err(format!(
                "factor {}: {} crossings, expected {expected}",
                f.port_index, f.crossings
            ));
        }
    }
    let laned = crossing_count(m, &layout, true).map_err(|e| e.to_string())?;
    if laned.total != 0 {
        return Err(format!("{} crossings remain with lanes", laned.total));
    }
    Ok(())
}

fn check_schedule(m: &PairingMatrix) -> CheckResult {
    let n = m.n();
    let schedule = all_to_all_schedule(m).map_err(|e| e.to_string())?;
    if schedule.steps.len() != n - 1 {
        return Err(format!("{} steps, expected {}", schedule.steps.len(), n - 1));
    }
    let mut pairs = BTreeSet::new();
    for step in &schedule.steps {
        let mut used = BTreeSet::new();
        for &(a, b) in &step.links {
            if !used.insert(a) || !used.insert(b) {
                return Err("switch exchanges twice in one step".into());
            }
            if !pairs.insert((a, b)) {
                return Err(format!("pair ({a},{b}) exchanged twice"));
            }
        }
    }
    if pairs.len() != link_count(n) {
        return Err(format!("schedule covers {} pairs", pairs.len()));
    }
    Ok(())
}

fn check_swap_ratio(n: usize) -> CheckResult {
    let r = swap_wire_lengths(n).map_err(|e| e.to_string())?;
    if r.ratio_to_iso < 1.0 - 1e-12 || r.ratio_to_iso > std::f64::consts::SQRT_2 {
        return Err(format!("ratio {} outside [1, sqrt 2]", r.ratio_to_iso));
    }
    Ok(())
}

/// Runs every applicable check for each kind over `lo..=hi`.
pub fn sweep(kinds: &[CinKind], lo: usize, hi: usize) -> SweepOutcome {
    let mut checks = 0;
    let mut failures = Vec::new();
    for &kind in kinds {
        for n in lo.max(2)..=hi {
            if !kind.supports(n) {
                continue;
            }
            let m = match PairingMatrix::build(kind, n) {
                Ok(m) => m,
                Err(e) => {
                    failures.push(Failure {
                        kind,
                        n,
                        check: "build",
                        detail: e.to_string(),
                    });
                    continue;
                }
            };
            let mut run = |check: &'static str, result: CheckResult| {
                checks += 1;
                if let Err(detail) = result {
                    failures.push(Failure {
                        kind,
                        n,
                        check,
                        detail,
                    });
                }
            };
            run("build", check_build(&m));
            run("isoport", check_classification(kind, &m));
            run("oracle", check_oracle(kind, &m));
            if m.is_isoport() {
                run("factors", check_factors(&m));
                if n % 2 == 0 {
                    run("wire-length", check_wire_lengths(&m));
                    run("schedule", check_schedule(&m));
                }
            }
            if kind == CinKind::Circle && n % 2 == 0 {
                run("crossings", check_circle_crossings(&m));
            }
            if kind == CinKind::Swap {
                run("swap-length", check_swap_ratio(n));
            }
        }
    }
    SweepOutcome { checks, failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_sweep_is_clean() {
        let outcome = sweep(&CinKind::ALL, 2, 20);
        assert!(outcome.failures.is_empty(), "{:?}", outcome.failures);
        assert!(outcome.checks > 100);
    }
}
