//! Enumeration budget shared by the exhaustive searches in this crate.
//!
//! Both the lattice ball enumeration and the wall-candidate enumeration walk
//! explicit integer boxes. Before walking, each estimates the number of cells
//! it would visit and refuses to start if the estimate exceeds the configured
//! cap, so a careless bound cannot wedge the process. The cap defaults to
//! ten million cells and can be overridden with the `WALLS_CELL_CAP`
//! environment variable (a positive integer).

/// Default number of cells an exhaustive enumeration may visit.
pub const DEFAULT_CELL_CAP: u64 = 10_000_000;

/// Name of the environment variable overriding the cell cap.
pub const CELL_CAP_ENV: &str = "WALLS_CELL_CAP";

/// Returns the active cell cap: `WALLS_CELL_CAP` when set to a positive
/// integer, the default of ten million otherwise.
pub fn cell_cap() -> u64 {
    match std::env::var(CELL_CAP_ENV) {
        Ok(raw) => match raw.trim().parse::<u64>() {
            Ok(v) if v > 0 => v,
            _ => DEFAULT_CELL_CAP,
        },
        Err(_) => DEFAULT_CELL_CAP,
    }
}
