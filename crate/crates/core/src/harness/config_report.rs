//! The configuration report: every registered simulation style, algorithm,
//! test, score, and statistic, with parameter names and default values.

use crate::metrics::all_statistics;
use crate::params::DEFAULTS;
use crate::registry::{all_score_bindings, all_simulation_styles, all_test_bindings, ALGORITHM_IDS};

fn default_line(name: &str) -> String {
    let value = crate::params::default_value(name)
        .map(|v| v.render_plain())
        .unwrap_or_else(|| "?".to_string());
    format!("{name} = {value}")
}

fn parameter_block(names: &[&str]) -> String {
    if names.is_empty() {
        "    parameters: none\n".to_string()
    } else {
        let joined = names.iter().map(|n| default_line(n)).collect::<Vec<_>>().join(", ");
        format!("    parameters: {joined}\n")
    }
}

pub fn configuration_report_text() -> String {
    let mut out = String::new();
    out.push_str("Configuration report\n\n");

    out.push_str("Simulations:\n\n");
    for style in all_simulation_styles() {
        out.push_str(&format!("  {}: {}\n", style.id(), style.description()));
        out.push_str(&parameter_block(style.parameter_names()));
    }
    out.push('\n');

    out.push_str("Algorithms:\n\n");
    for &id in ALGORITHM_IDS {
        let note = match id {
            "pc" | "pc_stable" | "cpc" | "cpc_stable" => {
                "takes an independence test; optional initial graph producer"
            }
            "ges" => "takes a score; optional initial graph producer",
            "external_native" => "loads native-format result files from a results directory",
            "external_matrix" => "loads adjacency-matrix result files from a results directory",
            _ => "",
        };
        out.push_str(&format!("  {id}: {note}\n"));
        let params: &[&str] = match id {
            "pc" | "pc_stable" | "cpc" | "cpc_stable" => &["depth"],
            _ => &[],
        };
        out.push_str(&parameter_block(params));
    }
    out.push('\n');

    out.push_str("Independence tests:\n\n");
    for test in all_test_bindings() {
        out.push_str(&format!("  {}: {}\n", test.id(), test.description()));
        out.push_str(&parameter_block(test.parameter_names()));
    }
    out.push('\n');

    out.push_str("Scores:\n\n");
    for score in all_score_bindings() {
        out.push_str(&format!("  {}: {}\n", score.id(), score.description()));
        out.push_str(&parameter_block(score.parameter_names()));
    }
    out.push('\n');

    out.push_str("Statistics:\n\n");
    for stat in all_statistics() {
        out.push_str(&format!("  {}\n", stat.legend_line()));
    }
    out.push('\n');

    out.push_str("Parameter defaults:\n\n");
    for (name, value) in DEFAULTS {
        out.push_str(&format!("  {name} = {}\n", value.render_plain()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_default_is_listed() {
        let text = configuration_report_text();
        for (name, value) in DEFAULTS {
            let line = format!("{name} = {}", value.render_plain());
            assert!(text.contains(&line), "missing `{line}`");
        }
    }

    #[test]
    fn every_registered_entity_appears() {
        let text = configuration_report_text();
        for id in ["sem", "bayes_net", "pc", "cpc_stable", "ges", "external_matrix"] {
            assert!(text.contains(id), "missing `{id}`");
        }
        assert!(text.contains("AP = Adjacency Precision"));
        assert!(text.contains("E = Elapsed Time in Seconds"));
    }

    #[test]
    fn one_legend_line_per_registered_statistic() {
        let text = configuration_report_text();
        let section = text
            .split("Statistics:\n")
            .nth(1)
            .unwrap()
            .split("\n\n")
            .next()
            .unwrap();
        let legend_lines = section.lines().filter(|l| l.contains(" = ")).count();
        assert_eq!(legend_lines, all_statistics().len());
    }
}
