use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::roster::StudentRecord;
use super::{GroupAssignment, Result, StudyError};

/// One control/experimental comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairSpec {
    pub pair_id: String,
    pub control_group: String,
    pub experimental_group: String,
    pub independent_variable: String,
    pub dependent_variable: String,
}

impl PairSpec {
    /// Group references are normalized, so `1`, `G1` and `Group 1` all name `G1`.
    pub fn new(
        pair_id: impl Into<String>,
        control: &str,
        experimental: &str,
        independent_variable: impl Into<String>,
    ) -> Result<Self> {
        let pair = Self {
            pair_id: pair_id.into(),
            control_group: canonical_group_label(control),
            experimental_group: canonical_group_label(experimental),
            independent_variable: independent_variable.into(),
            dependent_variable: "Quiz Score".into(),
        };
        if pair.control_group == pair.experimental_group {
            return Err(StudyError::InvalidPair(format!(
                "{}: control and experimental are both {}",
                pair.pair_id, pair.control_group
            )));
        }
        Ok(pair)
    }
}

/// The four comparisons of the four-group design, in table order.
pub fn standard_pairs() -> Vec<PairSpec> {
    [
        ("G1-G4", "G1", "G4", "Trials and visuo-haptic simulation"),
        ("G2-G3", "G2", "G3", "Haptic component"),
        ("G3-G4", "G3", "G4", "Trials"),
        ("G1-G3", "G1", "G3", "Visuo-haptic simulation"),
    ]
    .into_iter()
    .map(|(id, c, e, iv)| PairSpec::new(id, c, e, iv).expect("distinct groups"))
    .collect()
}

/// `"Group 3"`, `"g3"`, `"3"` → `"G3"`. Anything else is returned trimmed.
pub fn canonical_group_label(raw: &str) -> String {
    let t = raw.trim();
    let lower = t.to_ascii_lowercase();
    let digits = lower
        .strip_prefix("group")
        .or_else(|| lower.strip_prefix('g'))
        .unwrap_or(&lower)
        .trim();
    match digits.parse::<u32>() {
        Ok(n) => format!("G{n}"),
        Err(_) => t.to_string(),
    }
}

/// Sum of the members' quiz scores.
pub fn combined_score(group: &[StudentRecord]) -> Result<f64> {
    if group.is_empty() {
        return Err(StudyError::EmptyGroup("(unnamed)".into()));
    }
    group.iter().try_fold(0.0, |acc, s| {
        s.quiz_score
            .map(|q| acc + q)
            .ok_or_else(|| StudyError::MissingScore(s.id.clone()))
    })
}

pub fn mean_score(group: &[StudentRecord]) -> Result<f64> {
    Ok(combined_score(group)? / group.len() as f64)
}

/// Combined score per group label.
pub type GroupScores = BTreeMap<String, f64>;

/// Combined score of every group in the assignment.
pub fn group_scores(assignment: &GroupAssignment) -> Result<GroupScores> {
    assignment
        .groups
        .iter()
        .map(|g| {
            combined_score(&g.members)
                .map(|s| (g.label.clone(), s))
                .map_err(|e| match e {
                    StudyError::EmptyGroup(_) => StudyError::EmptyGroup(g.label.clone()),
                    other => other,
                })
        })
        .collect()
}

/// Percentage change from the control group's combined score to the
/// experimental group's.
pub fn pair_delta(pair: &PairSpec, scores: &GroupScores) -> Result<f64> {
    let lookup = |label: &str| {
        scores
            .get(label)
            .copied()
            .ok_or_else(|| StudyError::Reference(label.to_string()))
    };
    let control = lookup(&pair.control_group)?;
    let experimental = lookup(&pair.experimental_group)?;
    if control == 0.0 {
        return Err(StudyError::UndefinedDelta(format!(
            "{}: control group {} has combined score 0",
            pair.pair_id, pair.control_group
        )));
    }
    Ok(100.0 * (experimental - control) / control)
}

/// Read `pair_id,control,experimental,independent_variable` lines.
/// A header line starting with `pair_id` and `#` comments are skipped.
pub fn parse_pairs<R: Read>(input: R) -> Result<Vec<PairSpec>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(input);
    let mut pairs: Vec<PairSpec> = Vec::new();
    for (line, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| StudyError::InvalidPair(e.to_string()))?;
        if line == 0 && rec.get(0) == Some("pair_id") {
            continue;
        }
        if rec.len() != 4 {
            return Err(StudyError::InvalidPair(format!(
                "line {}: expected pair_id,control,experimental,independent_variable",
                line + 1
            )));
        }
        let pair = PairSpec::new(&rec[0], &rec[1], &rec[2], &rec[3])?;
        if pairs.iter().any(|p| p.pair_id == pair.pair_id) {
            return Err(StudyError::InvalidPair(format!(
                "duplicate pair id {}",
                pair.pair_id
            )));
        }
        pairs.push(pair);
    }
    Ok(pairs)
}

pub fn load_pairs(path: impl AsRef<Path>) -> Result<Vec<PairSpec>> {
    parse_pairs(std::fs::File::open(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scored(scores: &[f64]) -> Vec<StudentRecord> {
        scores
            .iter()
            .enumerate()
            .map(|(i, &q)| StudentRecord::new(format!("s{i}"), 3.0).with_score(q))
            .collect()
    }

    fn sheet(entries: &[(&str, f64)]) -> GroupScores {
        entries.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn combined_is_sum() {
        assert_eq!(combined_score(&scored(&[10.0, 10.0, 10.0])).unwrap(), 30.0);
        assert_eq!(
            combined_score(&scored(&[70.0, 80.0, 90.0, 60.0, 75.0, 85.0])).unwrap(),
            460.0
        );
        assert_eq!(mean_score(&scored(&[10.0, 20.0])).unwrap(), 15.0);
    }

    #[test]
    fn combined_errors() {
        assert!(matches!(
            combined_score(&[]),
            Err(StudyError::EmptyGroup(_))
        ));
        let mut g = scored(&[1.0, 2.0]);
        g.push(StudentRecord::new("late", 2.0));
        match combined_score(&g) {
            Err(StudyError::MissingScore(id)) => assert_eq!(id, "late"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn deltas() {
        let p = PairSpec::new("A", "G1", "G2", "x").unwrap();
        assert_eq!(
            pair_delta(&p, &sheet(&[("G1", 240.0), ("G2", 276.0)])).unwrap(),
            15.0
        );
        assert_eq!(
            pair_delta(&p, &sheet(&[("G1", 200.0), ("G2", 220.0)])).unwrap(),
            10.0
        );
        assert_eq!(
            pair_delta(&p, &sheet(&[("G1", 250.0), ("G2", 250.0)])).unwrap(),
            0.0
        );
        assert!(matches!(
            pair_delta(&p, &sheet(&[("G1", 0.0), ("G2", 5.0)])),
            Err(StudyError::UndefinedDelta(_))
        ));
        assert!(matches!(
            pair_delta(&p, &sheet(&[("G1", 1.0)])),
            Err(StudyError::Reference(_))
        ));
    }

    #[test]
    fn labels_normalize() {
        assert_eq!(canonical_group_label("Group 3"), "G3");
        assert_eq!(canonical_group_label(" g12 "), "G12");
        assert_eq!(canonical_group_label("4"), "G4");
        assert_eq!(canonical_group_label("control"), "control");
    }

    #[test]
    fn same_group_pair_rejected() {
        assert!(PairSpec::new("x", "G1", "Group 1", "iv").is_err());
    }

    #[test]
    fn parses_pair_file() {
        let text = "pair_id,control,experimental,independent_variable\n# comment\nG1-G4,Group 1,Group 4,Trials and visuo-haptic simulation\nG2-G3,G2,G3,Haptic component\n";
        let pairs = parse_pairs(text.as_bytes()).unwrap();
        assert_eq!(pairs.len(), 2);
        assert_eq!(pairs[0].control_group, "G1");
        assert_eq!(pairs[0].experimental_group, "G4");
        assert!(parse_pairs("a,G1,G2\n".as_bytes()).is_err());
        assert!(parse_pairs("a,G1,G2,x\na,G1,G3,y\n".as_bytes()).is_err());
    }

    #[test]
    fn standard_pairs_in_order() {
        let ids: Vec<String> = standard_pairs().into_iter().map(|p| p.pair_id).collect();
        assert_eq!(ids, ["G1-G4", "G2-G3", "G3-G4", "G1-G3"]);
    }
}
