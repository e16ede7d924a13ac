//! JSON interchange format for pairing matrices.
//!
//! Each link is recorded once as `[s, i, t, j]` with `s < t`; idle ports
//! (odd-sized Circle) as `[s, i]`. Importing rebuilds the matrix and runs
//! the full validation, so a tampered file is rejected with the violated
//! invariant named. Export is canonical (sorted records, stable field
//! order), which makes export/import/export a fixed point.

use serde::{Deserialize, Serialize};

use crate::pairing::{CinKind, PairingMatrix, PortRef};
use crate::{Error, Result, ValidationError};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyFile {
    pub version: u32,
    pub kind: CinKind,
    pub n: usize,
    /// Links as `[s, i, t, j]`, each once, `s < t`, sorted by `(s, i)`.
    pub entries: Vec<[usize; 4]>,
    /// Idle ports as `[s, i]`, sorted.
    #[serde(rename = "idlePorts", default)]
    pub idle_ports: Vec<[usize; 2]>,
}

impl TopologyFile {
    pub fn from_matrix(kind: CinKind, m: &PairingMatrix) -> Self {
        TopologyFile {
            version: FORMAT_VERSION,
            kind,
            n: m.n(),
            entries: m
                .links()
                .map(|l| [l.a.switch, l.a.port, l.b.switch, l.b.port])
                .collect(),
            idle_ports: m.idle_ports().map(|p| [p.switch, p.port]).collect(),
        }
    }

    /// Rebuilds and validates the pairing matrix.
    pub fn to_matrix(&self) -> Result<PairingMatrix> {
        if self.version != FORMAT_VERSION {
            return Err(Error::FileFormat(format!(
                "unsupported version {} (expected {FORMAT_VERSION})",
                self.version
            )));
        }
        if self.n < 2 {
            return Err(Error::InvalidSize(self.n));
        }
        let ports = self.n - 1 + usize::from(!self.idle_ports.is_empty());
        let mut entries: Vec<Option<PortRef>> = vec![None; self.n * ports];
        for &[s, i, t, j] in &self.entries {
            for &(from_s, from_p, to_s, to_p) in &[(s, i, t, j), (t, j, s, i)] {
                if from_s >= self.n || from_p >= ports {
                    return Err(ValidationError::PeerOutOfRange {
                        switch: to_s,
                        port: to_p,
                        peer_switch: from_s,
                        peer_port: from_p,
                    }
                    .into());
                }
                let cell = &mut entries[from_s * ports + from_p];
                if cell.is_some() {
                    return Err(ValidationError::PortReused {
                        switch: from_s,
                        port: from_p,
                    }
                    .into());
                }
                *cell = Some(PortRef::new(to_s, to_p));
            }
        }
        PairingMatrix::from_parts(self.n, ports, entries)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
