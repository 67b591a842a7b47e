//! JSON, Markdown and CSV renderings of a solution set.

use serde::{Deserialize, Serialize};

use super::solve::{FibrationReport, SolutionSet};
use super::system::{LayerPoint, SchemePoint};
use crate::freealg::Exactness;

/// Serialized form of a solution set. `points[i][j]` is layer `j` of
/// point `i`, as a normalized coordinate vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionDocument {
    pub presentation_label: String,
    pub d: usize,
    pub prime: u64,
    pub exactness: Exactness,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub char2_only: bool,
    pub count: usize,
    pub points: Vec<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fibration: Option<FibrationReport>,
}

impl SolutionDocument {
    pub fn new(sol: &SolutionSet, fibration: Option<FibrationReport>) -> Self {
        SolutionDocument {
            presentation_label: sol.label.clone(),
            d: sol.d,
            prime: sol.prime,
            exactness: sol.exactness,
            char2_only: sol.char2_only,
            count: sol.count(),
            points: sol
                .points
                .iter()
                .map(|pt| pt.layers.iter().map(|l| l.coords().to_vec()).collect())
                .collect(),
            fibration,
        }
    }

    pub fn solution_set(&self) -> SolutionSet {
        SolutionSet {
            label: self.presentation_label.clone(),
            d: self.d,
            prime: self.prime,
            exactness: self.exactness,
            char2_only: self.char2_only,
            points: self
                .points
                .iter()
                .map(|layers| {
                    SchemePoint::new(
                        layers
                            .iter()
                            .map(|c| LayerPoint::from_raw(c.clone()))
                            .collect(),
                    )
                })
                .collect(),
        }
    }
}

pub fn solution_to_json(sol: &SolutionSet, fibration: Option<&FibrationReport>) -> String {
    let doc = SolutionDocument::new(sol, fibration.cloned());
    serde_json::to_string_pretty(&doc).expect("document serializes")
}

pub fn solution_from_json(text: &str) -> Result<SolutionDocument, serde_json::Error> {
    serde_json::from_str(text)
}

fn layer_text(l: &LayerPoint) -> String {
    let parts: Vec<String> = l.coords().iter().map(u64::to_string).collect();
    format!("({})", parts.join(":"))
}

fn point_text(pt: &SchemePoint) -> String {
    let parts: Vec<String> = pt.layers.iter().map(layer_text).collect();
    parts.join(" ")
}

pub fn solution_to_markdown(sol: &SolutionSet, generators: &[String]) -> String {
    let mut out = format!(
        "# Points of `{}` at d = {} over F_{}\n\n- exactness: {}\n- count: {}\n",
        sol.label,
        sol.d,
        sol.prime,
        sol.exactness,
        sol.count()
    );
    if sol.char2_only {
        out.push_str("- heuristic presentation, characteristic 2 only\n");
    }
    if !generators.is_empty() {
        out.push_str(&format!("- coordinates: {}\n", generators.join(", ")));
    }
    if !sol.points.is_empty() {
        out.push_str("\n| # | layers 0..d-1 |\n|---|---|\n");
        for (i, pt) in sol.points.iter().enumerate() {
            out.push_str(&format!("| {} | {} |\n", i + 1, point_text(pt)));
        }
    }
    out
}

/// One row per point and layer.
pub fn solution_to_csv(sol: &SolutionSet) -> String {
    let g = sol
        .points
        .first()
        .and_then(|p| p.layers.first())
        .map_or(0, |l| l.coords().len());
    let mut header = vec!["point".to_string(), "layer".to_string()];
    header.extend((0..g).map(|i| format!("c{i}")));
    let mut out = header.join(",");
    out.push('\n');
    for (i, pt) in sol.points.iter().enumerate() {
        for (j, l) in pt.layers.iter().enumerate() {
            let mut row = vec![i.to_string(), j.to_string()];
            row.extend(l.coords().iter().map(u64::to_string));
            out.push_str(&row.join(","));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::FieldCtx;
    use crate::freealg::nil_coxeter;
    use crate::scheme::{enumerate, fibration_report, multilinearize, SolveOptions};

    #[test]
    fn json_roundtrip() {
        let sys = multilinearize(&nil_coxeter(4).unwrap(), 2).unwrap();
        let f = FieldCtx::prime(3).unwrap();
        let sol = enumerate(&sys, &f, &SolveOptions::default()).unwrap();
        let fib = fibration_report(&sys, &f, &SolveOptions::default()).unwrap();
        let text = solution_to_json(&sol, Some(&fib));
        let doc = solution_from_json(&text).unwrap();
        assert_eq!(doc.count, sol.count());
        assert_eq!(doc.solution_set(), sol);
        assert_eq!(doc.fibration, Some(fib));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["presentation_label"], "an:4");
        assert_eq!(v["exactness"], "exact");
    }

    #[test]
    fn csv_and_markdown() {
        let sys = multilinearize(&nil_coxeter(3).unwrap(), 2).unwrap();
        let sol = enumerate(&sys, &FieldCtx::prime(2).unwrap(), &SolveOptions::default()).unwrap();
        let csv = solution_to_csv(&sol);
        assert_eq!(
            csv,
            "point,layer,c0,c1\n0,0,0,1\n0,1,1,0\n1,0,1,0\n1,1,0,1\n"
        );
        let md = solution_to_markdown(&sol, &["x1".into(), "x2".into()]);
        assert!(md.contains("| 1 | (0:1) (1:0) |"));
        assert!(md.contains("count: 2"));
    }
}
