//! Line-oriented run configuration.
//!
//! ```text
//! [parameters]
//! numRuns = 10
//! alpha = 1e-4, 1e-3, 1e-2
//!
//! [simulations]
//! sem: graph = random_forward
//!
//! [algorithms]
//! pc: test = fisher_z
//! cpc: test = fisher_z, initial = ges(score = sem_bic)
//!
//! [statistics]
//! AP weight=1.0
//! SHD
//! param(avgDegree)
//!
//! [options]
//! sortByUtility = true
//! ```
//!
//! Unknown sections, keys, and ids are rejected with their line number.
//! Lines starting with `#` are comments.

use crate::graph::GraphKind;
use crate::harness::{ComparisonConfig, ReportColumn, StatisticsSpec, DEFAULT_MASTER_SEED};
use crate::metrics::{statistic_by_abbreviation, Weights};
use crate::params::{is_known_parameter, ParamValue, ParameterGrid};
use crate::registry::{simulation_style, AlgorithmSpec};
use crate::sim::SimulationStyle;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

fn syntax(line: usize, message: impl Into<String>) -> ConfigError {
    ConfigError::Syntax { line, message: message.into() }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimSpec {
    pub style: String,
    pub graph_source: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ColumnSpec {
    Statistic(String),
    Parameter(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct StatLine {
    pub column: ColumnSpec,
    pub weight: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptionsSpec {
    pub show_algorithm_indices: bool,
    pub show_simulation_indices: bool,
    pub sort_by_utility: bool,
    pub show_utilities: bool,
    pub tab_delimited: bool,
    pub comparison_graph: Option<GraphKind>,
    pub master_seed: Option<u64>,
}

impl Default for OptionsSpec {
    fn default() -> Self {
        OptionsSpec {
            show_algorithm_indices: true,
            show_simulation_indices: true,
            sort_by_utility: false,
            show_utilities: false,
            tab_delimited: false,
            comparison_graph: None,
            master_seed: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunConfig {
    pub grid: ParameterGrid,
    pub simulations: Vec<SimSpec>,
    pub algorithms: Vec<AlgorithmSpec>,
    pub statistics: Vec<StatLine>,
    pub options: OptionsSpec,
}

/// Split on `sep` outside parentheses.
fn split_top_level(text: &str, sep: char) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for c in text.chars() {
        match c {
            '(' => {
                depth += 1;
                current.push(c);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                current.push(c);
            }
            c if c == sep && depth == 0 => {
                parts.push(current.trim().to_string());
                current = String::new();
            }
            c => current.push(c),
        }
    }
    parts.push(current.trim().to_string());
    parts
}

fn parse_values(text: &str, line: usize) -> Result<Vec<ParamValue>, ConfigError> {
    text.split(',')
        .map(|v| {
            ParamValue::parse(v).map_err(|_| syntax(line, format!("cannot parse value `{}`", v.trim())))
        })
        .collect()
}

fn parse_algorithm_spec(id: &str, body: &str, line: usize) -> Result<AlgorithmSpec, ConfigError> {
    let id = id.trim();
    if !crate::registry::ALGORITHM_IDS.contains(&id) {
        return Err(syntax(line, format!("unknown algorithm `{id}`")));
    }
    let mut spec = AlgorithmSpec::new(id);
    let body = body.trim();
    if body.is_empty() {
        return Ok(spec);
    }
    for pair in split_top_level(body, ',') {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| syntax(line, format!("expected `key = value`, found `{pair}`")))?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "test" => spec.test = Some(value.to_string()),
            "score" => spec.score = Some(value.to_string()),
            "dir" => spec.dir = Some(value.to_string()),
            "initial" => {
                let (inner_id, inner_body) = match value.split_once('(') {
                    Some((inner_id, rest)) => {
                        let rest = rest
                            .strip_suffix(')')
                            .ok_or_else(|| syntax(line, format!("unbalanced `(` in `{value}`")))?;
                        (inner_id, rest)
                    }
                    None => (value, ""),
                };
                spec.initial = Some(Box::new(parse_algorithm_spec(inner_id, inner_body, line)?));
            }
            name if is_known_parameter(name) => {
                let parsed = ParamValue::parse(value)
                    .map_err(|_| syntax(line, format!("cannot parse value `{value}`")))?;
                spec.overrides.push((name.to_string(), parsed));
            }
            other => return Err(syntax(line, format!("unknown algorithm key `{other}`"))),
        }
    }
    validate_algorithm_spec(&spec, line)?;
    Ok(spec)
}

fn validate_algorithm_spec(spec: &AlgorithmSpec, line: usize) -> Result<(), ConfigError> {
    match spec.id.as_str() {
        "pc" | "pc_stable" | "cpc" | "cpc_stable" => {
            let test = spec
                .test
                .as_deref()
                .ok_or_else(|| syntax(line, format!("`{}` requires `test = ...`", spec.id)))?;
            crate::registry::test_binding(test)
                .map_err(|_| syntax(line, format!("unknown test `{test}`")))?;
            if spec.score.is_some() {
                return Err(syntax(line, format!("`{}` does not take a score", spec.id)));
            }
        }
        "ges" => {
            let score = spec
                .score
                .as_deref()
                .ok_or_else(|| syntax(line, "`ges` requires `score = ...`".to_string()))?;
            crate::registry::score_binding(score)
                .map_err(|_| syntax(line, format!("unknown score `{score}`")))?;
            if spec.test.is_some() {
                return Err(syntax(line, "`ges` does not take a test".to_string()));
            }
        }
        "external_native" | "external_matrix" => {
            if spec.dir.is_none() {
                return Err(syntax(line, format!("`{}` requires `dir = ...`", spec.id)));
            }
            if spec.initial.is_some() {
                return Err(syntax(line, "external variants do not take an initial graph".to_string()));
            }
        }
        _ => {}
    }
    Ok(())
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    #[derive(PartialEq, Clone, Copy)]
    enum Section {
        None,
        Parameters,
        Simulations,
        Algorithms,
        Statistics,
        Options,
    }
    let mut config = RunConfig {
        grid: ParameterGrid::new(),
        simulations: Vec::new(),
        algorithms: Vec::new(),
        statistics: Vec::new(),
        options: OptionsSpec::default(),
    };
    let mut section = Section::None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            section = match name.trim() {
                "parameters" => Section::Parameters,
                "simulations" => Section::Simulations,
                "algorithms" => Section::Algorithms,
                "statistics" => Section::Statistics,
                "options" => Section::Options,
                other => return Err(syntax(line_no, format!("unknown section `[{other}]`"))),
            };
            continue;
        }
        match section {
            Section::None => {
                return Err(syntax(line_no, "content before the first section header"))
            }
            Section::Parameters => {
                let (name, values) = line
                    .split_once('=')
                    .ok_or_else(|| syntax(line_no, "expected `name = value[, value...]`"))?;
                let name = name.trim();
                if !is_known_parameter(name) {
                    return Err(syntax(line_no, format!("unknown parameter `{name}`")));
                }
                config.grid.set(name, parse_values(values, line_no)?);
            }
            Section::Simulations => {
                let (style, body) = match line.split_once(':') {
                    Some((style, body)) => (style.trim(), body.trim()),
                    None => (line, ""),
                };
                simulation_style(style)
                    .map_err(|_| syntax(line_no, format!("unknown simulation style `{style}`")))?;
                let mut graph_source = "random_forward".to_string();
                if !body.is_empty() {
                    for pair in split_top_level(body, ',') {
                        let (key, value) = pair
                            .split_once('=')
                            .ok_or_else(|| syntax(line_no, format!("expected `key = value`, found `{pair}`")))?;
                        match key.trim() {
                            "graph" => {
                                let v = value.trim();
                                if v != "random_forward" {
                                    return Err(syntax(
                                        line_no,
                                        format!("unknown graph source `{v}`"),
                                    ));
                                }
                                graph_source = v.to_string();
                            }
                            other => {
                                return Err(syntax(
                                    line_no,
                                    format!("unknown simulation key `{other}`"),
                                ))
                            }
                        }
                    }
                }
                config.simulations.push(SimSpec { style: style.to_string(), graph_source });
            }
            Section::Algorithms => {
                let (id, body) = match line.split_once(':') {
                    Some((id, body)) => (id, body),
                    None => (line, ""),
                };
                config.algorithms.push(parse_algorithm_spec(id, body, line_no)?);
            }
            Section::Statistics => {
                let mut tokens = line.split_whitespace();
                let head = tokens.next().expect("non-empty line");
                let column = if let Some(inner) =
                    head.strip_prefix("param(").and_then(|h| h.strip_suffix(')'))
                {
                    if !is_known_parameter(inner) {
                        return Err(syntax(line_no, format!("unknown parameter `{inner}`")));
                    }
                    ColumnSpec::Parameter(inner.to_string())
                } else {
                    if head == "U" {
                        return Err(syntax(line_no, "`U` is reserved for the utility column"));
                    }
                    statistic_by_abbreviation(head)
                        .map_err(|_| syntax(line_no, format!("unknown statistic `{head}`")))?;
                    ColumnSpec::Statistic(head.to_string())
                };
                let mut weight = None;
                for tok in tokens {
                    let value = tok
                        .strip_prefix("weight=")
                        .ok_or_else(|| syntax(line_no, format!("unexpected token `{tok}`")))?;
                    let w: f64 = value
                        .parse()
                        .map_err(|_| syntax(line_no, format!("cannot parse weight `{value}`")))?;
                    if !(0.0..=1.0).contains(&w) {
                        return Err(syntax(line_no, format!("weight {w} outside [0, 1]")));
                    }
                    if matches!(column, ColumnSpec::Parameter(_)) {
                        return Err(syntax(line_no, "parameter columns cannot be weighted"));
                    }
                    weight = Some(w);
                }
                config.statistics.push(StatLine { column, weight });
            }
            Section::Options => {
                let (key, value) = line
                    .split_once('=')
                    .ok_or_else(|| syntax(line_no, "expected `key = value`"))?;
                let value = value.trim();
                let parse_bool = |v: &str| -> Result<bool, ConfigError> {
                    match v {
                        "true" => Ok(true),
                        "false" => Ok(false),
                        other => Err(syntax(line_no, format!("expected true/false, found `{other}`"))),
                    }
                };
                match key.trim() {
                    "showAlgorithmIndices" => {
                        config.options.show_algorithm_indices = parse_bool(value)?
                    }
                    "showSimulationIndices" => {
                        config.options.show_simulation_indices = parse_bool(value)?
                    }
                    "sortByUtility" => config.options.sort_by_utility = parse_bool(value)?,
                    "showUtilities" => config.options.show_utilities = parse_bool(value)?,
                    "tabDelimited" => config.options.tab_delimited = parse_bool(value)?,
                    "comparisonGraph" => {
                        config.options.comparison_graph = Some(match value {
                            "true_dag" => GraphKind::TrueDag,
                            "true_cpdag" => GraphKind::TrueCpdag,
                            other => {
                                return Err(syntax(
                                    line_no,
                                    format!("unknown comparison graph `{other}`"),
                                ))
                            }
                        })
                    }
                    "masterSeed" => {
                        config.options.master_seed = Some(value.parse().map_err(|_| {
                            syntax(line_no, format!("cannot parse seed `{value}`"))
                        })?)
                    }
                    other => return Err(syntax(line_no, format!("unknown option `{other}`"))),
                }
            }
        }
    }
    Ok(config)
}

fn render_literal(v: ParamValue) -> String {
    match v {
        ParamValue::Int(i) => i.to_string(),
        ParamValue::Real(r) => format!("{r:?}"),
    }
}

fn render_algorithm_spec(spec: &AlgorithmSpec) -> String {
    let mut parts = Vec::new();
    if let Some(t) = &spec.test {
        parts.push(format!("test = {t}"));
    }
    if let Some(s) = &spec.score {
        parts.push(format!("score = {s}"));
    }
    if let Some(d) = &spec.dir {
        parts.push(format!("dir = {d}"));
    }
    if let Some(initial) = &spec.initial {
        let inner = render_algorithm_spec(initial);
        match inner.split_once(": ") {
            Some((id, body)) => parts.push(format!("initial = {id}({body})")),
            None => parts.push(format!("initial = {inner}")),
        }
    }
    for (name, value) in &spec.overrides {
        parts.push(format!("{name} = {}", render_literal(*value)));
    }
    if parts.is_empty() {
        spec.id.clone()
    } else {
        format!("{}: {}", spec.id, parts.join(", "))
    }
}

impl RunConfig {
    /// Canonical text that parses back to an identical config.
    pub fn canonical_text(&self) -> String {
        let mut out = String::new();
        out.push_str("[parameters]\n");
        for (name, values) in self.grid.declared() {
            let rendered: Vec<String> = values.iter().map(|&v| render_literal(v)).collect();
            out.push_str(&format!("{name} = {}\n", rendered.join(", ")));
        }
        out.push_str("\n[simulations]\n");
        for sim in &self.simulations {
            out.push_str(&format!("{}: graph = {}\n", sim.style, sim.graph_source));
        }
        out.push_str("\n[algorithms]\n");
        for alg in &self.algorithms {
            out.push_str(&render_algorithm_spec(alg));
            out.push('\n');
        }
        out.push_str("\n[statistics]\n");
        for stat in &self.statistics {
            match &stat.column {
                ColumnSpec::Statistic(a) => out.push_str(a),
                ColumnSpec::Parameter(p) => out.push_str(&format!("param({p})")),
            }
            if let Some(w) = stat.weight {
                out.push_str(&format!(" weight={w:?}"));
            }
            out.push('\n');
        }
        out.push_str("\n[options]\n");
        let o = &self.options;
        out.push_str(&format!("showAlgorithmIndices = {}\n", o.show_algorithm_indices));
        out.push_str(&format!("showSimulationIndices = {}\n", o.show_simulation_indices));
        out.push_str(&format!("sortByUtility = {}\n", o.sort_by_utility));
        out.push_str(&format!("showUtilities = {}\n", o.show_utilities));
        out.push_str(&format!("tabDelimited = {}\n", o.tab_delimited));
        if let Some(kind) = o.comparison_graph {
            let name = match kind {
                GraphKind::TrueDag => "true_dag",
                GraphKind::TrueCpdag => "true_cpdag",
            };
            out.push_str(&format!("comparisonGraph = {name}\n"));
        }
        if let Some(seed) = o.master_seed {
            out.push_str(&format!("masterSeed = {seed}\n"));
        }
        out
    }

    pub fn comparison_config(&self, seed_override: Option<u64>) -> ComparisonConfig {
        ComparisonConfig {
            show_algorithm_indices: self.options.show_algorithm_indices,
            show_simulation_indices: self.options.show_simulation_indices,
            sort_by_utility: self.options.sort_by_utility,
            show_utilities: self.options.show_utilities,
            tab_delimited: self.options.tab_delimited,
            comparison_override: self.options.comparison_graph,
            master_seed: seed_override
                .or(self.options.master_seed)
                .unwrap_or(DEFAULT_MASTER_SEED),
        }
    }

    /// Report columns and weights; the full built-in battery when the
    /// statistics section is empty.
    pub fn statistics_spec(&self) -> Result<StatisticsSpec, ConfigError> {
        if self.statistics.is_empty() {
            return Ok(StatisticsSpec::standard());
        }
        let mut columns = Vec::new();
        let mut weights = Weights::new();
        for stat in &self.statistics {
            match &stat.column {
                ColumnSpec::Statistic(abbrev) => {
                    let s = statistic_by_abbreviation(abbrev)
                        .map_err(|e| ConfigError::Invalid(e.to_string()))?;
                    columns.push(ReportColumn::Statistic(s));
                    if let Some(w) = stat.weight {
                        weights.insert(abbrev.clone(), w);
                    }
                }
                ColumnSpec::Parameter(name) => {
                    columns.push(ReportColumn::Parameter(name.clone()));
                }
            }
        }
        Ok(StatisticsSpec { columns, weights })
    }

    pub fn simulation_styles(&self) -> Result<Vec<Box<dyn SimulationStyle>>, ConfigError> {
        self.simulations
            .iter()
            .map(|s| simulation_style(&s.style).map_err(|e| ConfigError::Invalid(e.to_string())))
            .collect()
    }

    pub fn build_variants(
        &self,
    ) -> Result<Vec<Box<dyn crate::search::SearchAlgorithm>>, ConfigError> {
        crate::registry::build_variants(&self.algorithms, &self.grid)
            .map_err(|e| ConfigError::Invalid(e.to_string()))
    }
}
