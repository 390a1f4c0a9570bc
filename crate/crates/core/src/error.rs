use thiserror::Error;

/// Errors produced while validating inputs or running a solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("robot {index} ({id}): {field} must be a positive finite number, got {value}")]
    NonPositiveSpeed {
        index: usize,
        id: String,
        field: &'static str,
        value: f64,
    },

    #[error("robot {index} ({id}): search speed {search} is not strictly below walk speed {walk}")]
    SearchNotSlowerThanWalk {
        index: usize,
        id: String,
        search: f64,
        walk: f64,
    },

    #[error("robot {index}: id {id:?} is already used by robot {first}")]
    DuplicateId {
        index: usize,
        first: usize,
        id: String,
    },

    #[error("fleet is empty")]
    EmptyFleet,

    #[error("segment length must be a positive finite number, got {0}")]
    NonPositiveLength(f64),

    #[error("online schedules need a positive integer horizon, got {0}")]
    NonIntegerHorizon(f64),

    #[error("schedule references robot {0:?}, which is not in the instance")]
    RobotMismatch(String),

    #[error("epsilon must lie in (0, 1), got {0}")]
    EpsilonOutOfRange(f64),

    #[error("alpha must lie in (0, 1), got {0}")]
    AlphaOutOfRange(f64),

    #[error("search speed {index} must lie in (0, 1) for a unit walk speed, got {value}")]
    SpeedOutOfRange { index: usize, value: f64 },

    #[error("need at least {min} robots, got {got}")]
    TooFewRobots { min: usize, got: usize },

    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),

    #[error("brute force is limited to {max} robots, got {got}")]
    FleetTooLarge { max: usize, got: usize },

    #[error("grid search supports 2 or 3 robots, got {0}")]
    GridDimension(u32),

    #[error("grid step must lie in [1e-3, 0.1], got {0}")]
    GridStepOutOfRange(f64),

    #[error("invalid generator parameter: {0}")]
    InvalidGenerator(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
