//! Acceptance checks for `qrobust`; see `tests/acceptance.rs`.
