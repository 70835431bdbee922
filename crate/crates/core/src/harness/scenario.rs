//! Scenario description and its `key = value` text format.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::channel::FadingConfig;
use crate::error::{Error, Result};
use crate::rates::PowerSplit;

/// Multiple-access scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// NOMA with a fixed power split.
    Fnoma,
    /// Cognitive-radio NOMA; UE2 is the primary user with a rate target.
    Crnoma,
    /// Time-shared orthogonal access.
    Oma,
}

/// Antenna-selection policy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Policy {
    Es,
    A3,
    Aia,
    Mcg,
    Pu,
    Su,
    Random,
    OmaEs,
}

impl Policy {
    pub const ALL: [Policy; 8] =
        [Policy::Es, Policy::A3, Policy::Aia, Policy::Mcg, Policy::Pu, Policy::Su, Policy::Random, Policy::OmaEs];

    /// Whether the policy can run under `mode`.
    pub fn supports(self, mode: Mode) -> bool {
        use Policy::*;
        match mode {
            Mode::Fnoma => matches!(self, Es | A3 | Aia | Random),
            Mode::Crnoma => matches!(self, Es | Mcg | Pu | Su | Random),
            Mode::Oma => matches!(self, OmaEs),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Fnoma => "fnoma",
            Mode::Crnoma => "crnoma",
            Mode::Oma => "oma",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fnoma" => Ok(Mode::Fnoma),
            "crnoma" => Ok(Mode::Crnoma),
            "oma" => Ok(Mode::Oma),
            _ => Err(Error::config(format!("unknown mode `{s}` (expected fnoma, crnoma or oma)"))),
        }
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Policy::Es => "es",
            Policy::A3 => "a3",
            Policy::Aia => "aia",
            Policy::Mcg => "mcg",
            Policy::Pu => "pu",
            Policy::Su => "su",
            Policy::Random => "random",
            Policy::OmaEs => "oma_es",
        })
    }
}

impl FromStr for Policy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Policy::ALL
            .into_iter()
            .find(|p| p.to_string() == s)
            .ok_or_else(|| Error::config(format!("unknown policy `{s}`")))
    }
}

/// A complete Monte Carlo experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub fading: FadingConfig,
    pub mode: Mode,
    pub policy: Policy,
    /// Fixed power split, used in F-NOMA mode.
    pub split: PowerSplit,
    /// Primary-user rate target in bits/s/Hz, used in CR-NOMA mode.
    pub r_th: f64,
    pub trials: u64,
    pub seed: u64,
}

impl Default for Scenario {
    fn default() -> Self {
        Self {
            fading: FadingConfig::default(),
            mode: Mode::Fnoma,
            policy: Policy::A3,
            split: PowerSplit::fnoma(0.4).expect("0.4 is a valid split"),
            r_th: 5.0,
            trials: 100_000,
            seed: 1,
        }
    }
}

/// Keys accepted in scenario files, in the order they are written.
pub const SCENARIO_KEYS: [&str; 14] = [
    "n_bs",
    "m_ue1",
    "k_ue2",
    "d1",
    "d2",
    "alpha",
    "ps_dbm",
    "sigma2_dbm",
    "mode",
    "policy",
    "b",
    "r_th",
    "trials",
    "seed",
];

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        self.fading.validate()?;
        if !self.policy.supports(self.mode) {
            return Err(Error::config(format!("policy `{}` is not available in mode `{}`", self.policy, self.mode)));
        }
        if self.trials == 0 {
            return Err(Error::config("trials must be at least 1"));
        }
        if self.mode == Mode::Fnoma && PowerSplit::fnoma(self.split.b()).is_err() {
            return Err(Error::config(format!("F-NOMA needs 0 < b < 0.5, got b = {}", self.split.b())));
        }
        if self.mode == Mode::Crnoma && !(self.r_th.is_finite() && self.r_th > 0.0) {
            return Err(Error::config(format!("r_th must be finite and > 0, got {}", self.r_th)));
        }
        Ok(())
    }

    /// Sets one field from its text form. `b` is only range-checked here;
    /// the F-NOMA constraint is enforced by [`Scenario::validate`].
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: FromStr>(key: &str, value: &str) -> Result<T> {
            value.parse().map_err(|_| Error::config(format!("`{key}`: cannot parse `{value}`")))
        }
        let f = &mut self.fading;
        match key {
            "n_bs" => f.n_bs = num(key, value)?,
            "m_ue1" => f.m_ue1 = num(key, value)?,
            "k_ue2" => f.k_ue2 = num(key, value)?,
            "d1" => f.d1 = num(key, value)?,
            "d2" => f.d2 = num(key, value)?,
            "alpha" => f.alpha = num(key, value)?,
            "ps_dbm" => f.ps_dbm = num(key, value)?,
            "sigma2_dbm" => f.sigma2_dbm = num(key, value)?,
            "mode" => self.mode = value.parse()?,
            "policy" => self.policy = value.parse()?,
            "b" => {
                self.split = PowerSplit::new(num(key, value)?).map_err(|e| Error::config(e.to_string()))?;
            }
            "r_th" => self.r_th = num(key, value)?,
            "trials" => self.trials = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            _ => return Err(Error::config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Parses a scenario file. Missing keys keep their defaults; `#` starts
    /// a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut scn = Scenario::default();
        for (key, value) in key_values(text)? {
            scn.set(&key, &value)?;
        }
        scn.validate()?;
        Ok(scn)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&read_text(path)?)
    }

    /// Serializes to the text form accepted by [`Scenario::parse`].
    pub fn to_text(&self) -> String {
        let f = &self.fading;
        let values: [String; 14] = [
            f.n_bs.to_string(),
            f.m_ue1.to_string(),
            f.k_ue2.to_string(),
            f.d1.to_string(),
            f.d2.to_string(),
            f.alpha.to_string(),
            f.ps_dbm.to_string(),
            f.sigma2_dbm.to_string(),
            self.mode.to_string(),
            self.policy.to_string(),
            self.split.b().to_string(),
            self.r_th.to_string(),
            self.trials.to_string(),
            self.seed.to_string(),
        ];
        SCENARIO_KEYS.iter().zip(values).map(|(k, v)| format!("{k} = {v}\n")).collect()
    }
}

pub(crate) fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

/// Splits `key = value` lines, skipping blanks and `#` comments. Duplicate
/// keys are rejected.
pub(crate) fn key_values(text: &str) -> Result<Vec<(String, String)>> {
    let mut out: Vec<(String, String)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::config(format!("line {}: expected `key = value`", lineno + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || value.is_empty() {
            return Err(Error::config(format!("line {}: empty key or value", lineno + 1)));
        }
        if out.iter().any(|(k, _)| k == key) {
            return Err(Error::config(format!("line {}: duplicate key `{key}`", lineno + 1)));
        }
        out.push((key.to_string(), value.to_string()));
    }
    Ok(out)
}

/// Parameter varied by a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    PsDbm,
    NBs,
    D1,
    D2,
    B,
    RTh,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::PsDbm => "ps_dbm",
            Axis::NBs => "n_bs",
            Axis::D1 => "d1",
            Axis::D2 => "d2",
            Axis::B => "b",
            Axis::RTh => "r_th",
        }
    }

    /// A copy of `base` with this axis set to `value`.
    pub fn apply(self, base: &Scenario, value: f64) -> Result<Scenario> {
        let mut scn = base.clone();
        match self {
            Axis::PsDbm => scn.fading.ps_dbm = value,
            Axis::NBs => {
                if value.fract() != 0.0 || value < 1.0 {
                    return Err(Error::config(format!("n_bs must be a positive integer, got {value}")));
                }
                scn.fading.n_bs = value as usize;
            }
            Axis::D1 => scn.fading.d1 = value,
            Axis::D2 => scn.fading.d2 = value,
            Axis::B => scn.split = PowerSplit::new(value).map_err(|e| Error::config(e.to_string()))?,
            Axis::RTh => scn.r_th = value,
        }
        scn.validate()?;
        Ok(scn)
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Axis::PsDbm, Axis::NBs, Axis::D1, Axis::D2, Axis::B, Axis::RTh]
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::config(format!("unknown sweep axis `{s}`")))
    }
}

/// Parses a comma-separated list of numbers.
pub fn parse_values(list: &str) -> Result<Vec<f64>> {
    let values = list
        .split(',')
        .map(|v| {
            let v = v.trim();
            v.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Error::config(format!("cannot parse value `{v}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_text() {
        let mut scn = Scenario { mode: Mode::Crnoma, policy: Policy::Mcg, ..Scenario::default() };
        scn.fading.d1 = 123.5;
        scn.r_th = 2.5;
        scn.seed = u64::MAX;
        assert_eq!(Scenario::parse(&scn.to_text()).unwrap(), scn);
    }

    #[test]
    fn comments_and_defaults() {
        let scn = Scenario::parse("# fig 1\nps_dbm = 20  # dBm\n\npolicy = aia\n").unwrap();
        assert_eq!(scn.fading.ps_dbm, 20.0);
        assert_eq!(scn.policy, Policy::Aia);
        assert_eq!(scn.fading.n_bs, 2);
    }

    #[test]
    fn rejects_unknown_and_duplicate_keys() {
        assert!(matches!(Scenario::parse("n_antennas = 2"), Err(Error::Config(_))));
        assert!(matches!(Scenario::parse("d1 = 1\nd1 = 2"), Err(Error::Config(_))));
        assert!(matches!(Scenario::parse("d1 80"), Err(Error::Config(_))));
    }

    #[test]
    fn rejects_incompatible_policy() {
        assert!(matches!(Scenario::parse("mode = fnoma\npolicy = mcg"), Err(Error::Config(_))));
        assert!(matches!(Scenario::parse("mode = oma\npolicy = a3"), Err(Error::Config(_))));
        assert!(Scenario::parse("mode = oma\npolicy = oma_es").is_ok());
        assert!(matches!(Scenario::parse("trials = 0"), Err(Error::Config(_))));
        assert!(matches!(Scenario::parse("b = 0.6"), Err(Error::Config(_))));
        assert!(Scenario::parse("mode = crnoma\npolicy = pu\nb = 0.6").is_ok());
    }

    #[test]
    fn policy_names_round_trip() {
        for p in Policy::ALL {
            assert_eq!(p.to_string().parse::<Policy>().unwrap(), p);
        }
        assert!("A3".parse::<Policy>().is_err());
    }

    #[test]
    fn axes() {
        let base = Scenario::default();
        let s = "n_bs".parse::<Axis>().unwrap().apply(&base, 5.0).unwrap();
        assert_eq!(s.fading.n_bs, 5);
        assert!(Axis::NBs.apply(&base, 2.5).is_err());
        assert!(Axis::B.apply(&base, 0.3).is_ok());
        assert!("power".parse::<Axis>().is_err());
        assert_eq!(parse_values("1, 2.5,3").unwrap(), vec![1.0, 2.5, 3.0]);
        assert!(parse_values("1,,2").is_err());
    }
}
