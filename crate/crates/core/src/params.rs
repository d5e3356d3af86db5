//! Named parameters with defaults, multi-valued grids, and resolved points.
//!
//! Every tunable in the harness (simulation knobs, test thresholds, score
//! penalties) is looked up by name. A [`ParameterGrid`] holds the values a
//! user declared, possibly several per name; anything not declared falls back
//! to the registry of defaults. A [`ParamPoint`] is a fully resolved
//! single-valued assignment, the unit that simulations and searches consume.

use indexmap::IndexMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamError {
    #[error("unknown parameter `{0}`")]
    Unknown(String),
    #[error("parameter `{name}` expects an integer, got {value}")]
    NotInteger { name: String, value: f64 },
    #[error("parameter `{name}` must be a single value, found {count}")]
    NotSingle { name: String, count: usize },
    #[error("parameter `{name}` is out of range: {reason}")]
    OutOfRange { name: String, reason: String },
    #[error("cannot parse `{0}` as a parameter value")]
    Parse(String),
    #[error("malformed parameter line `{0}` (expected `name = value`)")]
    MalformedLine(String),
}

/// A parameter value. Integers and reals are kept distinct so that values
/// render back out the way they came in (`numRuns = 10`, `coefLow = 0.5`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamValue {
    Int(i64),
    Real(f64),
}

impl ParamValue {
    pub fn as_f64(self) -> f64 {
        match self {
            ParamValue::Int(i) => i as f64,
            ParamValue::Real(r) => r,
        }
    }

    pub fn as_i64(self) -> Option<i64> {
        match self {
            ParamValue::Int(i) => Some(i),
            ParamValue::Real(r) if r.fract() == 0.0 && r.abs() < 9.0e15 => Some(r as i64),
            ParamValue::Real(_) => None,
        }
    }

    pub fn parse(text: &str) -> Result<ParamValue, ParamError> {
        let t = text.trim();
        if let Ok(i) = t.parse::<i64>() {
            return Ok(ParamValue::Int(i));
        }
        t.parse::<f64>()
            .map(ParamValue::Real)
            .map_err(|_| ParamError::Parse(t.to_string()))
    }

    /// Plain rendering for parameter files and report blocks: integers print
    /// without a decimal point, and integral reals collapse to integers.
    pub fn render_plain(self) -> String {
        match self {
            ParamValue::Int(i) => i.to_string(),
            ParamValue::Real(r) => {
                if r.fract() == 0.0 && r.abs() < 9.0e15 {
                    format!("{}", r as i64)
                } else {
                    format!("{r}")
                }
            }
        }
    }

    /// Rendering used inside algorithm descriptions, matching Java's
    /// `Double.toString`: decimal notation within [1e-3, 1e7), scientific
    /// with a mantissa digit after the point otherwise (`1.0E-4`).
    pub fn render_description(self) -> String {
        match self {
            ParamValue::Int(i) => i.to_string(),
            ParamValue::Real(r) => java_double(r),
        }
    }
}

fn java_double(v: f64) -> String {
    if v == 0.0 {
        return "0.0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let a = v.abs();
    if (1e-3..1e7).contains(&a) {
        format!("{v:?}")
    } else {
        let s = format!("{v:E}");
        match s.find('E') {
            Some(pos) if !s[..pos].contains('.') => format!("{}.0{}", &s[..pos], &s[pos..]),
            _ => s,
        }
    }
}

/// Registry of parameter defaults. Every name the harness understands
/// appears here; lookups of anything else fail loudly.
pub const DEFAULTS: &[(&str, ParamValue)] = &[
    ("numMeasures", ParamValue::Int(100)),
    ("numLatents", ParamValue::Int(0)),
    ("avgDegree", ParamValue::Int(4)),
    ("maxDegree", ParamValue::Int(100)),
    ("maxIndegree", ParamValue::Int(100)),
    ("maxOutdegree", ParamValue::Int(100)),
    ("connected", ParamValue::Int(0)),
    ("numRuns", ParamValue::Int(10)),
    ("varLow", ParamValue::Int(1)),
    ("varHigh", ParamValue::Int(3)),
    ("coefLow", ParamValue::Real(0.5)),
    ("coefHigh", ParamValue::Real(1.5)),
    ("sampleSize", ParamValue::Int(1000)),
    ("alpha", ParamValue::Real(0.01)),
    ("penaltyDiscount", ParamValue::Real(1.0)),
    ("depth", ParamValue::Int(-1)),
    ("numCategories", ParamValue::Int(3)),
];

pub fn default_value(name: &str) -> Option<ParamValue> {
    DEFAULTS.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
}

pub fn is_known_parameter(name: &str) -> bool {
    default_value(name).is_some()
}

/// User-declared parameter values; each name maps to an ordered value list.
/// Declaration order is preserved because it drives grid expansion.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParameterGrid {
    entries: IndexMap<String, Vec<ParamValue>>,
}

impl ParameterGrid {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, name: &str, values: Vec<ParamValue>) {
        assert!(!values.is_empty(), "a declared parameter needs at least one value");
        self.entries.insert(name.to_string(), values);
    }

    pub fn set_single(&mut self, name: &str, value: ParamValue) {
        self.set(name, vec![value]);
    }

    pub fn declared(&self) -> impl Iterator<Item = (&str, &[ParamValue])> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    pub fn is_declared(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    /// Declared values, else the default as a one-element list.
    pub fn values(&self, name: &str) -> Result<Vec<ParamValue>, ParamError> {
        if let Some(v) = self.entries.get(name) {
            return Ok(v.clone());
        }
        default_value(name)
            .map(|v| vec![v])
            .ok_or_else(|| ParamError::Unknown(name.to_string()))
    }

    pub fn is_multi(&self, name: &str) -> bool {
        self.entries.get(name).map(|v| v.len() > 1).unwrap_or(false)
    }

    /// Single resolved value; errors when the entry is multi-valued.
    pub fn single(&self, name: &str) -> Result<ParamValue, ParamError> {
        let v = self.values(name)?;
        if v.len() != 1 {
            return Err(ParamError::NotSingle { name: name.to_string(), count: v.len() });
        }
        Ok(v[0])
    }
}

/// A fully resolved single value per parameter name.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamPoint {
    values: IndexMap<String, ParamValue>,
}

impl ParamPoint {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: &str, value: ParamValue) {
        self.values.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Result<ParamValue, ParamError> {
        if let Some(v) = self.values.get(name) {
            return Ok(*v);
        }
        default_value(name).ok_or_else(|| ParamError::Unknown(name.to_string()))
    }

    pub fn get_declared(&self, name: &str) -> Option<ParamValue> {
        self.values.get(name).copied()
    }

    pub fn f64(&self, name: &str) -> Result<f64, ParamError> {
        Ok(self.get(name)?.as_f64())
    }

    pub fn i64(&self, name: &str) -> Result<i64, ParamError> {
        let v = self.get(name)?;
        v.as_i64().ok_or(ParamError::NotInteger { name: name.to_string(), value: v.as_f64() })
    }

    pub fn usize(&self, name: &str) -> Result<usize, ParamError> {
        let i = self.i64(name)?;
        usize::try_from(i).map_err(|_| ParamError::OutOfRange {
            name: name.to_string(),
            reason: format!("{i} is negative"),
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, ParamValue)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// One `name = value` line per entry, the `parameters.txt` grammar.
    pub fn render_lines(&self) -> String {
        let mut out = String::new();
        for (name, value) in self.iter() {
            out.push_str(name);
            out.push_str(" = ");
            out.push_str(&value.render_plain());
            out.push('\n');
        }
        out
    }

    pub fn parse_lines(text: &str) -> Result<ParamPoint, ParamError> {
        let mut point = ParamPoint::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (name, value) = line
                .split_once('=')
                .ok_or_else(|| ParamError::MalformedLine(line.to_string()))?;
            let name = name.trim();
            if name.is_empty() {
                return Err(ParamError::MalformedLine(line.to_string()));
            }
            point.insert(name, ParamValue::parse(value)?);
        }
        Ok(point)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_resolve() {
        let grid = ParameterGrid::new();
        assert_eq!(grid.single("numMeasures").unwrap(), ParamValue::Int(100));
        assert_eq!(grid.single("alpha").unwrap(), ParamValue::Real(0.01));
        assert!(matches!(grid.single("nope"), Err(ParamError::Unknown(_))));
    }

    #[test]
    fn declared_values_override_defaults_in_order() {
        let mut grid = ParameterGrid::new();
        grid.set("sampleSize", vec![ParamValue::Int(100), ParamValue::Int(500)]);
        assert_eq!(
            grid.values("sampleSize").unwrap(),
            vec![ParamValue::Int(100), ParamValue::Int(500)]
        );
        assert!(grid.is_multi("sampleSize"));
        assert!(matches!(grid.single("sampleSize"), Err(ParamError::NotSingle { .. })));
    }

    #[test]
    fn description_rendering_matches_java_style() {
        assert_eq!(ParamValue::Real(1e-4).render_description(), "1.0E-4");
        assert_eq!(ParamValue::Real(0.001).render_description(), "0.001");
        assert_eq!(ParamValue::Real(0.01).render_description(), "0.01");
        assert_eq!(ParamValue::Real(1.0).render_description(), "1.0");
        assert_eq!(ParamValue::Real(1.23e-5).render_description(), "1.23E-5");
        assert_eq!(ParamValue::Int(100).render_description(), "100");
    }

    #[test]
    fn plain_rendering_collapses_integral_reals() {
        assert_eq!(ParamValue::Real(1.0).render_plain(), "1");
        assert_eq!(ParamValue::Real(0.5).render_plain(), "0.5");
        assert_eq!(ParamValue::Int(-1).render_plain(), "-1");
    }

    #[test]
    fn point_lines_round_trip() {
        let mut p = ParamPoint::new();
        p.insert("sampleSize", ParamValue::Int(500));
        p.insert("coefLow", ParamValue::Real(0.5));
        let text = p.render_lines();
        assert!(text.contains("sampleSize = 500\n"));
        let back = ParamPoint::parse_lines(&text).unwrap();
        assert_eq!(back.i64("sampleSize").unwrap(), 500);
        assert_eq!(back.f64("coefLow").unwrap(), 0.5);
    }

    #[test]
    fn malformed_parameter_line_is_rejected() {
        assert!(matches!(
            ParamPoint::parse_lines("sampleSize 500"),
            Err(ParamError::MalformedLine(_))
        ));
    }
}
