//! End-to-end acceptance runs of the `verma-lab` command line; see
//! `tests/acceptance.rs`.
