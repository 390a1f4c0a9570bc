//! Search scheduling for a fleet of two-speed robots on a segment.
//!
//! Each robot starts at the origin and can either walk fast or search slowly.
//! The crate provides
//!
//! * [`offline`]: the optimal schedule when the segment length is known,
//! * [`online`]: the periodic LeapFrog schedule for an unknown length,
//! * [`verify`]: an independent checker for any schedule,
//! * [`analysis`]: competitive ratios between the two,
//! * [`oracle`]: brute-force certificates used by the test suite,
//! * [`generate`]: seeded instance families.
//!
//! ```
//! use beachcomb::{model::Instance, offline::comb_schedule, verify::validate};
//!
//! let instance = Instance::from_speeds(&[(0.5, 1.0), (0.5, 2.0)], 1.0).unwrap();
//! let solution = comb_schedule(&instance);
//! assert!((solution.optimal_time - 8.0 / 7.0).abs() < 1e-12);
//! assert!(validate(&instance, &solution.schedule).unwrap().feasible);
//! ```

pub mod analysis;
pub mod error;
pub mod generate;
pub mod model;
pub mod numeric;
pub mod offline;
pub mod online;
pub mod oracle;
pub mod verify;

pub use error::{Error, Result};
pub use model::{Instance, Mode, Phase, Robot, Schedule, SwarmPlan, Timeline, Tolerance};
