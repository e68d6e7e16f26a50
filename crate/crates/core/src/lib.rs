//! Adaptive learning-content recommendation engine.
//!
//! The engine estimates student skill levels by fuzzy inference over weighted
//! test results, ranks learning content by its measured contribution to
//! student success in interaction logs, and suggests content slices matched
//! to each student's level. Everything is computed from an append-only event
//! log, so every result is reproducible by replay.
//!
//! Modules:
//!
//! - [`domain`] — shared value types (identifiers, catalog items, grades,
//!   tests, skill estimates)
//! - [`fes`] — the fuzzy expert system turning a weighted test response into
//!   a crisp skill level
//! - [`ranking`] — per-course content metrics and semestral rank tables
//! - [`adaptation`] — student rank lists and level-matched suggestion sets
//! - [`repository`] — the append-only event store, snapshots, ingestion, and
//!   catalog search
//! - [`simulator`] — deterministic synthetic cohorts for validating the
//!   adaptation policy against baselines
//! - [`config`], [`cli`], [`http`] — service configuration and the CLI /
//!   HTTP adapters over the engine

pub mod adaptation;
pub mod cli;
pub mod config;
pub mod domain;
pub mod error;
pub mod fes;
pub mod http;
pub mod ranking;
pub mod repository;
pub mod simulator;

pub use error::{Error, Result, Rule};
