//! Domain types shared by the solvers, the verifier and the CLI.
//!
//! Every robot starts at the origin of the segment `[0, length]`. A robot
//! moves at most `walk_speed` while walking and at most `search_speed` while
//! searching, and `search_speed < walk_speed` always holds. Schedules are
//! piecewise-linear timelines of walk, search and idle phases.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Relative tolerance used for every equality check unless overridden.
pub const DEFAULT_REL_TOL: f64 = 1e-9;
/// Absolute floor for comparisons near zero.
pub const DEFAULT_ABS_TOL: f64 = 1e-12;

/// Mixed relative/absolute tolerance for comparing reals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rel: DEFAULT_REL_TOL,
            abs: DEFAULT_ABS_TOL,
        }
    }
}

impl Tolerance {
    pub fn new(rel: f64) -> Self {
        Self {
            rel,
            abs: DEFAULT_ABS_TOL,
        }
    }

    /// Allowed slack when comparing quantities of magnitude `scale`.
    pub fn slack(&self, scale: f64) -> f64 {
        (self.rel * scale.abs()).max(self.abs)
    }

    pub fn close(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.slack(a.abs().max(b.abs()))
    }

    /// `a <= b` up to tolerance.
    pub fn le(&self, a: f64, b: f64) -> bool {
        a <= b + self.slack(a.abs().max(b.abs()))
    }
}

/// Serializes a real with 12 significant digits.
pub(crate) fn sig12<S: Serializer>(value: &f64, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.serialize_f64(round_sig12(*value))
}

pub(crate) fn round_sig12(value: f64) -> f64 {
    if !value.is_finite() || value == 0.0 {
        return value;
    }
    format!("{value:.11e}").parse().unwrap_or(value)
}

/// A robot with a searching speed strictly below its walking speed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Robot {
    id: String,
    #[serde(serialize_with = "sig12")]
    search_speed: f64,
    #[serde(serialize_with = "sig12")]
    walk_speed: f64,
}

impl Robot {
    pub fn new(id: impl Into<String>, search_speed: f64, walk_speed: f64) -> Result<Self> {
        Self::checked(0, id.into(), search_speed, walk_speed)
    }

    fn checked(index: usize, id: String, search_speed: f64, walk_speed: f64) -> Result<Self> {
        for (field, value) in [("search_speed", search_speed), ("walk_speed", walk_speed)] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::NonPositiveSpeed {
                    index,
                    id,
                    field,
                    value,
                });
            }
        }
        if search_speed >= walk_speed {
            return Err(Error::SearchNotSlowerThanWalk {
                index,
                id,
                search: search_speed,
                walk: walk_speed,
            });
        }
        Ok(Self {
            id,
            search_speed,
            walk_speed,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn search_speed(&self) -> f64 {
        self.search_speed
    }

    pub fn walk_speed(&self) -> f64 {
        self.walk_speed
    }

    /// Extra time per unit length spent searching instead of walking.
    pub fn delta(&self) -> f64 {
        1.0 / self.search_speed - 1.0 / self.walk_speed
    }

    /// Same robot with both speeds multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::checked(
            0,
            self.id.clone(),
            self.search_speed * factor,
            self.walk_speed * factor,
        )
    }
}

/// Unvalidated robot as read from JSON.
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
pub struct RawRobot {
    #[serde(default)]
    pub id: Option<String>,
    pub search_speed: f64,
    pub walk_speed: f64,
}

/// Unvalidated instance as read from JSON.
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
pub struct RawInstance {
    pub length: f64,
    pub robots: Vec<RawRobot>,
}

/// A validated fleet plus the length of the segment to search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance")]
pub struct Instance {
    #[serde(serialize_with = "sig12")]
    length: f64,
    robots: Vec<Robot>,
}

impl TryFrom<RawInstance> for Instance {
    type Error = Error;

    fn try_from(raw: RawInstance) -> Result<Self> {
        validate_instance(raw)
    }
}

/// Checks the fleet and the segment length, naming the first offending field.
pub fn validate_instance(raw: RawInstance) -> Result<Instance> {
    if raw.robots.is_empty() {
        return Err(Error::EmptyFleet);
    }
    if !(raw.length > 0.0 && raw.length.is_finite()) {
        return Err(Error::NonPositiveLength(raw.length));
    }
    let mut seen: HashMap<String, usize> = HashMap::new();
    let mut robots = Vec::with_capacity(raw.robots.len());
    for (index, r) in raw.robots.into_iter().enumerate() {
        let id = r.id.unwrap_or_else(|| format!("r{}", index + 1));
        if let Some(&first) = seen.get(&id) {
            return Err(Error::DuplicateId { index, first, id });
        }
        seen.insert(id.clone(), index);
        robots.push(Robot::checked(index, id, r.search_speed, r.walk_speed)?);
    }
    Ok(Instance {
        length: raw.length,
        robots,
    })
}

impl Instance {
    pub fn new(robots: Vec<Robot>, length: f64) -> Result<Self> {
        validate_instance(RawInstance {
            length,
            robots: robots
                .into_iter()
                .map(|r| RawRobot {
                    id: Some(r.id),
                    search_speed: r.search_speed,
                    walk_speed: r.walk_speed,
                })
                .collect(),
        })
    }

    /// Builds an instance from `(search, walk)` pairs with ids `r1, r2, ...`.
    pub fn from_speeds(speeds: &[(f64, f64)], length: f64) -> Result<Self> {
        validate_instance(RawInstance {
            length,
            robots: speeds
                .iter()
                .map(|&(s, w)| RawRobot {
                    id: None,
                    search_speed: s,
                    walk_speed: w,
                })
                .collect(),
        })
    }

    pub fn robots(&self) -> &[Robot] {
        &self.robots
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn len(&self) -> usize {
        self.robots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.robots.is_empty()
    }

    /// Same fleet on a segment of a different length.
    pub fn with_length(&self, length: f64) -> Result<Self> {
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::NonPositiveLength(length));
        }
        Ok(Self {
            length,
            robots: self.robots.clone(),
        })
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.robots.iter().position(|r| r.id == id)
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }
}

fn offline_cmp(robots: &[Robot], a: usize, b: usize) -> Ordering {
    let (ra, rb) = (&robots[a], &robots[b]);
    ra.walk_speed
        .total_cmp(&rb.walk_speed)
        .then(ra.search_speed.total_cmp(&rb.search_speed))
        .then(a.cmp(&b))
}

/// Indices sorted by non-decreasing walk speed, then search speed, then input index.
pub fn offline_order(robots: &[Robot]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..robots.len()).collect();
    order.sort_by(|&a, &b| offline_cmp(robots, a, b));
    order
}

pub fn canonical_offline_order(instance: &Instance) -> Vec<usize> {
    offline_order(&instance.robots)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Walk,
    Search,
    Idle,
}

/// One linear piece of a robot's trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Phase {
    pub mode: Mode,
    #[serde(serialize_with = "sig12")]
    pub t0: f64,
    #[serde(serialize_with = "sig12")]
    pub t1: f64,
    #[serde(serialize_with = "sig12")]
    pub x0: f64,
    #[serde(serialize_with = "sig12")]
    pub x1: f64,
}

impl Phase {
    pub fn duration(&self) -> f64 {
        self.t1 - self.t0
    }

    pub fn distance(&self) -> f64 {
        (self.x1 - self.x0).abs()
    }

    /// Position at time `t`, clamped to the phase's time span.
    pub fn position_at(&self, t: f64) -> f64 {
        if t <= self.t0 {
            return self.x0;
        }
        if t >= self.t1 {
            return self.x1;
        }
        let frac = (t - self.t0) / (self.t1 - self.t0);
        self.x0 + frac * (self.x1 - self.x0)
    }
}

/// Phases of one robot, identified by its id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timeline {
    pub id: String,
    pub phases: Vec<Phase>,
}

impl Timeline {
    pub fn new(id: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            phases: Vec::new(),
        }
    }

    pub fn position_at(&self, t: f64) -> f64 {
        match self.phases.iter().find(|p| t <= p.t1) {
            Some(p) => p.position_at(t),
            None => self.phases.last().map_or(0.0, |p| p.x1),
        }
    }

    pub fn end_time(&self) -> f64 {
        self.phases.last().map_or(0.0, |p| p.t1)
    }

    pub fn end_position(&self) -> f64 {
        self.phases.last().map_or(0.0, |p| p.x1)
    }

    /// Appends a phase that starts where the previous one ended and lasts
    /// `distance / speed`. Zero-length moves are dropped and a phase of the
    /// same mode as its predecessor is merged into it.
    pub fn push_move(&mut self, mode: Mode, to: f64, speed: f64) {
        let (t0, x0) = (self.end_time(), self.end_position());
        let distance = (to - x0).abs();
        if distance == 0.0 {
            return;
        }
        let t1 = t0 + distance / speed;
        match self.phases.last_mut() {
            Some(last) if last.mode == mode => {
                last.t1 = t1;
                last.x1 = to;
            }
            _ => self.phases.push(Phase {
                mode,
                t0,
                t1,
                x0,
                x1: to,
            }),
        }
    }
}

/// Per-robot timelines plus the time at which the search completes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub robots: Vec<Timeline>,
    #[serde(serialize_with = "sig12")]
    pub finishing_time: f64,
}

impl Schedule {
    pub fn timeline(&self, id: &str) -> Option<&Timeline> {
        self.robots.iter().find(|t| t.id == id)
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("schedule serializes")
    }
}

/// Output of the swarm-speed procedure.
///
/// `swarm`, `contributions` and `deltas` are parallel and listed in swarm
/// order (non-increasing walk speed); entries of `swarm` and `excluded` are
/// indices into the instance.
#[derive(Debug, Clone, PartialEq)]
pub struct SwarmPlan {
    pub swarm: Vec<usize>,
    pub excluded: Vec<usize>,
    pub swarm_speed: f64,
    pub contributions: Vec<f64>,
    pub deltas: Vec<f64>,
}

/// JSON view of a [`SwarmPlan`] with robot ids instead of indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SwarmPlanJson {
    #[serde(serialize_with = "sig12")]
    pub swarm_speed: f64,
    pub members: Vec<String>,
    pub excluded: Vec<String>,
    pub contributions: Vec<f64>,
}

impl SwarmPlan {
    pub fn to_json_view(&self, instance: &Instance) -> SwarmPlanJson {
        let ids = |idx: &[usize]| -> Vec<String> {
            idx.iter().map(|&i| instance.robots[i].id.clone()).collect()
        };
        SwarmPlanJson {
            swarm_speed: self.swarm_speed,
            members: ids(&self.swarm),
            excluded: ids(&self.excluded),
            contributions: self.contributions.iter().map(|&c| round_sig12(c)).collect(),
        }
    }
}
