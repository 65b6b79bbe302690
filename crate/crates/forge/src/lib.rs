//! File formats, sweep driver and invariant checks around [`dcg_core`].

pub mod config;
pub mod epg_sweep;
pub mod gate_spec;
pub mod seq_format;
pub mod sweep;
pub mod verify;

/// Process exit codes of the command-line tool.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    /// An invariant check or a sweep point failed.
    pub const FAILURE: i32 = 1;
    /// Unreadable or invalid configuration or arguments.
    pub const CONFIG: i32 = 2;
}
