//! Cross-product expansion of multi-valued parameters.

use crate::params::{ParamError, ParamPoint, ParameterGrid};

/// One fully resolved point per combination of the multi-valued entries
/// among `names`. Multi-valued parameters expand in grid declaration order
/// with the last-declared one varying fastest; every listed name is
/// resolved into each point.
pub fn expand_points(grid: &ParameterGrid, names: &[&str]) -> Result<Vec<ParamPoint>, ParamError> {
    let mut multi: Vec<(&str, Vec<crate::params::ParamValue>)> = Vec::new();
    for (declared, values) in grid.declared() {
        if values.len() > 1 && names.contains(&declared) {
            multi.push((declared, values.to_vec()));
        }
    }
    let total: usize = multi.iter().map(|(_, v)| v.len()).product();
    let mut points = Vec::with_capacity(total);
    for mut index in 0..total {
        let mut selection = vec![0usize; multi.len()];
        for slot in (0..multi.len()).rev() {
            let len = multi[slot].1.len();
            selection[slot] = index % len;
            index /= len;
        }
        let mut point = ParamPoint::new();
        for &name in names {
            let value = match multi.iter().position(|(n, _)| *n == name) {
                Some(slot) => multi[slot].1[selection[slot]],
                None => grid.single(name)?,
            };
            point.insert(name, value);
        }
        points.push(point);
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ParamValue;

    #[test]
    fn single_multi_valued_parameter_expands_in_value_order() {
        let mut grid = ParameterGrid::new();
        grid.set(
            "sampleSize",
            vec![ParamValue::Int(100), ParamValue::Int(500), ParamValue::Int(1000)],
        );
        let points = expand_points(&grid, &["numRuns", "sampleSize"]).unwrap();
        assert_eq!(points.len(), 3);
        let sizes: Vec<i64> = points.iter().map(|p| p.i64("sampleSize").unwrap()).collect();
        assert_eq!(sizes, vec![100, 500, 1000]);
        // numRuns still resolves from its default in every point.
        assert!(points.iter().all(|p| p.i64("numRuns").unwrap() == 10));
    }

    #[test]
    fn two_multi_valued_parameters_nest_with_the_last_fastest() {
        let mut grid = ParameterGrid::new();
        grid.set("avgDegree", vec![ParamValue::Int(2), ParamValue::Int(4)]);
        grid.set("sampleSize", vec![ParamValue::Int(100), ParamValue::Int(500)]);
        let points = expand_points(&grid, &["avgDegree", "sampleSize"]).unwrap();
        let combos: Vec<(i64, i64)> = points
            .iter()
            .map(|p| (p.i64("avgDegree").unwrap(), p.i64("sampleSize").unwrap()))
            .collect();
        assert_eq!(combos, vec![(2, 100), (2, 500), (4, 100), (4, 500)]);
    }

    #[test]
    fn no_multi_valued_parameters_yield_one_point() {
        let mut grid = ParameterGrid::new();
        grid.set_single("alpha", ParamValue::Real(1e-4));
        let points = expand_points(&grid, &["alpha", "depth"]).unwrap();
        assert_eq!(points.len(), 1);
        assert_eq!(points[0].f64("alpha").unwrap(), 1e-4);
        assert_eq!(points[0].i64("depth").unwrap(), -1);
    }

    #[test]
    fn multi_valued_entries_outside_the_name_list_are_ignored() {
        let mut grid = ParameterGrid::new();
        grid.set("alpha", vec![ParamValue::Real(1e-4), ParamValue::Real(1e-3)]);
        let points = expand_points(&grid, &["numRuns"]).unwrap();
        assert_eq!(points.len(), 1);
    }
}
