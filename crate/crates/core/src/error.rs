use crate::pairing::CinKind;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("switch count {0} is too small: a pairing needs at least 2 switches")]
    InvalidSize(usize),
    #[error("{kind} pairing does not support {n} switches (requires a power of two)")]
    UnsupportedSize { kind: CinKind, n: usize },
    #[error("operation requires an isoport pairing")]
    NotIsoport,
    #[error("operation requires an even switch count, got {0}")]
    OddSwitchCount(usize),
    #[error("source and destination are the same switch ({0}); eject instead of routing")]
    SameSwitch(usize),
    #[error("switch index {switch} out of range for {n} switches")]
    SwitchOutOfRange { switch: usize, n: usize },
    #[error("layout holds {layout} positions but the pairing has {n} switches")]
    LayoutSizeMismatch { layout: usize, n: usize },
    #[error("layout positions are not a bijection onto 0..n")]
    LayoutNotBijection,
    #[error("a fabric needs at least one dimension")]
    NoDimensions,
    #[error("dimension index {index} out of range for {count} dimensions")]
    InvalidDimension { index: usize, count: usize },
    #[error("dimension order {order:?} is not a permutation of 0..{count}")]
    InvalidDimOrder { order: Vec<usize>, count: usize },
    #[error("address has {got} digits, expected {expected}")]
    AddressLength { expected: usize, got: usize },
    #[error("address digit {value} at position {position} out of range (limit {limit})")]
    InvalidAddress {
        position: usize,
        value: usize,
        limit: usize,
    },
    #[error("invalid pairing: {0}")]
    Validation(#[from] ValidationError),
    #[error("topology file: {0}")]
    FileFormat(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// A named violation of the pairing-matrix invariants.
///
/// Constructors validate eagerly, so user code only meets these when
/// importing a matrix from external data.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValidationError {
    #[error("entry table holds {got} cells, expected {expected}")]
    Shape { expected: usize, got: usize },
    #[error("entry ({switch},{port}) references out-of-range peer ({peer_switch},{peer_port})")]
    PeerOutOfRange {
        switch: usize,
        port: usize,
        peer_switch: usize,
        peer_port: usize,
    },
    #[error("self-loop: entry ({switch},{port}) pairs a port on its own switch")]
    SelfLoop { switch: usize, port: usize },
    #[error(
        "involution violation: ({switch},{port}) pairs ({peer_switch},{peer_port}), \
         which does not point back"
    )]
    Involution {
        switch: usize,
        port: usize,
        peer_switch: usize,
        peer_port: usize,
    },
    #[error("involution violation: port ({switch},{port}) is claimed by more than one link")]
    PortReused { switch: usize, port: usize },
    #[error("completeness violation: switch pair ({a},{b}) is linked more than once")]
    DuplicatePair { a: usize, b: usize },
    #[error("completeness violation: switch pair ({a},{b}) is not linked")]
    MissingPair { a: usize, b: usize },
    #[error("idle port ({switch},{port}) in an even-sized pairing")]
    UnexpectedIdle { switch: usize, port: usize },
}
