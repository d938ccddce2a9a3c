//! Scenario files: a control zone feeding one merging zone.
//!
//! Scenarios are flat TOML with units spelled out in the key names. Lanes
//! are abstract labels; which pairs of lanes cross inside the merging zone
//! is part of the configuration rather than hard-coded geometry, so the
//! same simulator covers any intersection layout.

use std::path::Path;

use serde::{Deserialize, Serialize};
use trajectory_core::{Error, Limits, Result};

/// Default standstill gap `d0` (m) in the spacing rule `δ = d0 + h·v`.
pub const DEFAULT_STANDSTILL_GAP_M: f64 = 5.0;

/// Default time headway `h` (s) in the spacing rule `δ = d0 + h·v`.
pub const DEFAULT_TIME_HEADWAY_S: f64 = 0.5;

/// Default separation (s) required between conflicting merging-zone
/// occupancies.
pub const DEFAULT_LATERAL_EPSILON_S: f64 = 0.1;

fn default_standstill() -> f64 {
    DEFAULT_STANDSTILL_GAP_M
}

fn default_headway() -> f64 {
    DEFAULT_TIME_HEADWAY_S
}

fn default_epsilon() -> f64 {
    DEFAULT_LATERAL_EPSILON_S
}

/// One vehicle entering the control zone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VehicleArrival {
    /// Unique vehicle id, used in reports and error messages.
    pub id: String,
    /// Lane label; must appear in the scenario's `lanes` list.
    pub lane: String,
    /// Time (s) the vehicle enters the control zone.
    pub arrival_time_s: f64,
    /// Speed (m/s) at entry; must lie inside the speed box.
    pub arrival_speed_mps: f64,
    /// Optional transit-time demand (s). When set it replaces the
    /// constant-speed cruise as the earliest acceptable crossing, letting a
    /// scenario exercise time-pressured (constraint-active) instances. Must
    /// exceed the minimum feasible transit time.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_transit_time_s: Option<f64>,
}

/// A full scenario: geometry, shared actuation limits, safety parameters,
/// lane conflict relation, and the arrival stream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Control zone length (m): distance from entry to the merging zone.
    pub control_zone_length_m: f64,
    /// Merging zone size (m): the conflict square's side, crossed at the
    /// trajectory's exit speed.
    pub merging_zone_size_m: f64,
    /// Standstill gap `d0` (m) of the spacing rule `δ = d0 + h·v`.
    #[serde(default = "default_standstill")]
    pub standstill_gap_m: f64,
    /// Time headway `h` (s) of the spacing rule.
    #[serde(default = "default_headway")]
    pub time_headway_s: f64,
    /// Minimum separation (s) between conflicting merging-zone occupancies.
    #[serde(default = "default_epsilon")]
    pub lateral_epsilon_s: f64,
    /// Lower speed bound (m/s); zero when omitted.
    #[serde(default)]
    pub vmin_mps: f64,
    /// Upper speed bound (m/s).
    pub vmax_mps: f64,
    /// Lower acceleration bound (m/s², negative).
    pub umin_mps2: f64,
    /// Upper acceleration bound (m/s², positive).
    pub umax_mps2: f64,
    /// Lane labels.
    pub lanes: Vec<String>,
    /// Unordered pairs of lanes whose paths cross inside the merging zone.
    #[serde(default)]
    pub conflicts: Vec<(String, String)>,
    /// Arrival stream, sorted by arrival time.
    #[serde(default)]
    pub vehicles: Vec<VehicleArrival>,
}

impl ScenarioConfig {
    /// Parses and validates a scenario from TOML text. Parse errors cite
    /// the offending line and column.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let config: ScenarioConfig = toml::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("scenario parse error: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    /// Reads and parses a scenario file.
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::InvalidInput(format!("cannot read scenario {}: {e}", path.display()))
        })?;
        Self::from_toml_str(&text)
    }

    /// The shared actuation limits.
    pub fn limits(&self) -> Result<Limits> {
        Limits::new(self.vmin_mps, self.vmax_mps, self.umin_mps2, self.umax_mps2)
    }

    /// True when the two lanes cross inside the merging zone. Symmetric;
    /// a lane never conflicts with itself (same-lane safety is the
    /// rear-end rule's job).
    pub fn conflicting(&self, a: &str, b: &str) -> bool {
        self.conflicts
            .iter()
            .any(|(x, y)| (x == a && y == b) || (x == b && y == a))
    }

    /// Structural validation beyond what parsing enforces.
    pub fn validate(&self) -> Result<()> {
        if !(self.control_zone_length_m > 0.0) {
            return Err(Error::InvalidInput(format!(
                "control_zone_length_m must be positive, got {}",
                self.control_zone_length_m
            )));
        }
        if !(self.merging_zone_size_m > 0.0) {
            return Err(Error::InvalidInput(format!(
                "merging_zone_size_m must be positive, got {}",
                self.merging_zone_size_m
            )));
        }
        for (name, x) in [
            ("standstill_gap_m", self.standstill_gap_m),
            ("time_headway_s", self.time_headway_s),
            ("lateral_epsilon_s", self.lateral_epsilon_s),
        ] {
            if !(x >= 0.0) || !x.is_finite() {
                return Err(Error::InvalidInput(format!("{name} must be >= 0, got {x}")));
            }
        }
        let lim = self.limits()?;
        if self.lanes.is_empty() {
            return Err(Error::InvalidInput("at least one lane is required".into()));
        }
        for (a, b) in &self.conflicts {
            if a == b {
                return Err(Error::InvalidInput(format!(
                    "conflict pair [{a}, {b}] relates a lane to itself"
                )));
            }
            for lane in [a, b] {
                if !self.lanes.contains(lane) {
                    return Err(Error::InvalidInput(format!(
                        "conflict pair [{a}, {b}] references unknown lane {lane}"
                    )));
                }
            }
        }
        let mut last_arrival = f64::NEG_INFINITY;
        for (i, v) in self.vehicles.iter().enumerate() {
            if v.id.is_empty() {
                return Err(Error::InvalidInput(format!("vehicle #{} has an empty id", i + 1)));
            }
            if self.vehicles[..i].iter().any(|w| w.id == v.id) {
                return Err(Error::InvalidInput(format!("duplicate vehicle id {}", v.id)));
            }
            if !self.lanes.contains(&v.lane) {
                return Err(Error::InvalidInput(format!(
                    "vehicle {} references unknown lane {}",
                    v.id, v.lane
                )));
            }
            if v.arrival_time_s < last_arrival {
                return Err(Error::InvalidInput(format!(
                    "vehicle {} arrives at {} s, before its predecessor at {} s; \
                     arrivals must be sorted",
                    v.id, v.arrival_time_s, last_arrival
                )));
            }
            last_arrival = v.arrival_time_s;
            if v.arrival_time_s < 0.0 || !v.arrival_time_s.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "vehicle {}: arrival_time_s must be >= 0, got {}",
                    v.id, v.arrival_time_s
                )));
            }
            if !lim.speed_in_bounds(v.arrival_speed_mps) || v.arrival_speed_mps <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "vehicle {}: arrival speed {} m/s outside the speed box [{}, {}]",
                    v.id, v.arrival_speed_mps, lim.vmin, lim.vmax
                )));
            }
            if let Some(target) = v.target_transit_time_s {
                if !(target > 0.0) || !target.is_finite() {
                    return Err(Error::InvalidInput(format!(
                        "vehicle {}: target_transit_time_s must be positive, got {target}",
                        v.id
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"
control_zone_length_m = 400.0
merging_zone_size_m = 30.0
vmax_mps = 22.0
umin_mps2 = -3.0
umax_mps2 = 2.5
lanes = ["north", "east"]
conflicts = [["north", "east"]]

[[vehicles]]
id = "veh-1"
lane = "north"
arrival_time_s = 0.0
arrival_speed_mps = 13.4

[[vehicles]]
id = "veh-2"
lane = "east"
arrival_time_s = 2.0
arrival_speed_mps = 15.0
target_transit_time_s = 30.0
"#;

    #[test]
    fn example_scenario_parses_with_defaults() {
        let config = ScenarioConfig::from_toml_str(EXAMPLE).unwrap();
        assert_eq!(config.vehicles.len(), 2);
        assert_eq!(config.standstill_gap_m, DEFAULT_STANDSTILL_GAP_M);
        assert_eq!(config.time_headway_s, DEFAULT_TIME_HEADWAY_S);
        assert_eq!(config.lateral_epsilon_s, DEFAULT_LATERAL_EPSILON_S);
        assert_eq!(config.vmin_mps, 0.0);
        assert!(config.conflicting("north", "east"));
        assert!(config.conflicting("east", "north"));
        assert!(!config.conflicting("north", "north"));
        assert_eq!(config.vehicles[1].target_transit_time_s, Some(30.0));
    }

    #[test]
    fn parse_error_cites_the_line() {
        let broken = EXAMPLE.replace("umax_mps2 = 2.5", "umax_mps2 = fast");
        let err = ScenarioConfig::from_toml_str(&broken).unwrap_err().to_string();
        assert!(err.contains("line"), "no line diagnostic in: {err}");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let extra = format!("{EXAMPLE}\nmystery_knob = 3\n");
        assert!(ScenarioConfig::from_toml_str(&extra).is_err());
    }

    #[test]
    fn unsorted_arrivals_are_rejected() {
        let swapped = EXAMPLE.replace("arrival_time_s = 2.0", "arrival_time_s = -1.0");
        let err = ScenarioConfig::from_toml_str(&swapped).unwrap_err().to_string();
        assert!(err.contains("sorted"), "wrong diagnostic: {err}");
    }

    #[test]
    fn arrival_speed_outside_the_box_is_rejected() {
        let fast = EXAMPLE.replace("arrival_speed_mps = 15.0", "arrival_speed_mps = 25.0");
        let err = ScenarioConfig::from_toml_str(&fast).unwrap_err().to_string();
        assert!(err.contains("veh-2"), "wrong diagnostic: {err}");
    }

    #[test]
    fn unknown_lane_is_rejected() {
        let wrong = EXAMPLE.replace("lane = \"east\"", "lane = \"south\"");
        let err = ScenarioConfig::from_toml_str(&wrong).unwrap_err().to_string();
        assert!(err.contains("unknown lane"), "wrong diagnostic: {err}");
    }

    #[test]
    fn self_conflict_is_rejected() {
        let selfie = EXAMPLE.replace(
            "conflicts = [[\"north\", \"east\"]]",
            "conflicts = [[\"north\", \"north\"]]",
        );
        assert!(ScenarioConfig::from_toml_str(&selfie).is_err());
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let doubled = EXAMPLE.replace("id = \"veh-2\"", "id = \"veh-1\"");
        let err = ScenarioConfig::from_toml_str(&doubled).unwrap_err().to_string();
        assert!(err.contains("duplicate"), "wrong diagnostic: {err}");
    }
}
