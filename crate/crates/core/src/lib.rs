//! Seed scheduling for fresh information diffusion over social networks.
//!
//! A platform seeds one user per round; information then spreads over the
//! graph with per-edge delays and every node's age of information (AoI)
//! grows until fresher content arrives. The crate evaluates peak and average
//! AoI for a schedule, builds schedules that keep them low, and compares
//! them against lower bounds.

pub mod aoi;
pub mod bounds;
pub mod error;
pub mod graph;
pub mod harness;
pub mod seeding;
