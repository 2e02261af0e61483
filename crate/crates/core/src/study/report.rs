use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::scores::{combined_score, pair_delta, GroupScores, PairSpec};
use super::{GroupAssignment, Result, StudyError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub pair_id: String,
    pub control: String,
    pub experimental: String,
    pub independent_variable: String,
    pub dependent_variable: String,
    pub control_score: f64,
    pub experimental_score: f64,
    pub delta_percent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub label: String,
    pub size: usize,
    pub mean_gpa: f64,
    pub gpa_variance: f64,
    /// `None` when some member has no score.
    pub combined_score: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub rows: Vec<ReportRow>,
    pub groups: Vec<GroupSummary>,
}

/// One row per pair, in the order given, plus a per-group appendix.
pub fn report(assignment: &GroupAssignment, pairs: &[PairSpec]) -> Result<Report> {
    let groups: Vec<GroupSummary> = assignment
        .groups
        .iter()
        .map(|g| GroupSummary {
            label: g.label.clone(),
            size: g.members.len(),
            mean_gpa: g.mean,
            gpa_variance: g.variance,
            combined_score: combined_score(&g.members).ok(),
        })
        .collect();

    let mut rows = Vec::with_capacity(pairs.len());
    for pair in pairs {
        let mut scores = GroupScores::new();
        for label in [&pair.control_group, &pair.experimental_group] {
            let group = assignment
                .group(label)
                .ok_or_else(|| StudyError::Reference(label.clone()))?;
            scores.insert(label.clone(), combined_score(&group.members)?);
        }
        rows.push(ReportRow {
            pair_id: pair.pair_id.clone(),
            control: pair.control_group.clone(),
            experimental: pair.experimental_group.clone(),
            independent_variable: pair.independent_variable.clone(),
            dependent_variable: pair.dependent_variable.clone(),
            control_score: scores[&pair.control_group],
            experimental_score: scores[&pair.experimental_group],
            delta_percent: pair_delta(pair, &scores)?,
        });
    }
    Ok(Report { rows, groups })
}

impl Report {
    /// Aligned plain-text tables: pairs first, then the group appendix.
    pub fn to_text(&self) -> String {
        let mut table = vec![[
            "pair_id".to_string(),
            "control".into(),
            "experimental".into(),
            "independent_variable".into(),
            "delta_%".into(),
        ]];
        for r in &self.rows {
            table.push([
                r.pair_id.clone(),
                r.control.clone(),
                r.experimental.clone(),
                r.independent_variable.clone(),
                format!("{:+.2}", r.delta_percent),
            ]);
        }
        let mut out = align(&table);
        out.push('\n');
        let mut appendix = vec![[
            "group".to_string(),
            "n".into(),
            "mean_gpa".into(),
            "gpa_variance".into(),
            "combined_score".into(),
        ]];
        for g in &self.groups {
            appendix.push([
                g.label.clone(),
                g.size.to_string(),
                format!("{:.4}", g.mean_gpa),
                format!("{:.6}", g.gpa_variance),
                g.combined_score.map_or("-".into(), |s| format!("{s}")),
            ]);
        }
        out.push_str(&align(&appendix));
        out
    }

    /// Pair rows as CSV with a header line.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let _ = w.write_record([
            "pair_id",
            "control",
            "experimental",
            "independent_variable",
            "dependent_variable",
            "control_score",
            "experimental_score",
            "delta_percent",
        ]);
        for r in &self.rows {
            let _ = w.write_record([
                r.pair_id.as_str(),
                &r.control,
                &r.experimental,
                &r.independent_variable,
                &r.dependent_variable,
                &format!("{:?}", r.control_score),
                &format!("{:?}", r.experimental_score),
                &format!("{:?}", r.delta_percent),
            ]);
        }
        String::from_utf8(w.into_inner().unwrap_or_default()).unwrap_or_default()
    }
}

fn align<const N: usize>(rows: &[[String; N]]) -> String {
    let mut widths = [0usize; N];
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i + 1 == N {
                line.push_str(cell);
            } else {
                let _ = write!(line, "{cell:<width$}  ", width = widths[i]);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::study::{balance_groups, standard_pairs, StudentRecord};

    fn scored_assignment(scores: [[f64; 2]; 4]) -> GroupAssignment {
        let roster: Vec<StudentRecord> = (0..8)
            .map(|i| StudentRecord::new(format!("s{i}"), 3.0))
            .collect();
        let mut a = balance_groups(&roster, 4).unwrap();
        for (g, s) in a.groups.iter_mut().zip(scores) {
            for (m, q) in g.members.iter_mut().zip(s) {
                m.quiz_score = Some(q);
            }
        }
        a
    }

    #[test]
    fn no_pairs_gives_header_only() {
        let a = scored_assignment([[1.0, 1.0]; 4]);
        let r = report(&a, &[]).unwrap();
        assert!(r.rows.is_empty());
        assert_eq!(r.to_csv().lines().count(), 1);
        assert_eq!(r.groups.len(), 4);
    }

    #[test]
    fn rows_follow_pair_order() {
        let a = scored_assignment([[50.0, 50.0], [55.0, 55.0], [60.0, 60.0], [60.0, 60.0]]);
        let r = report(&a, &standard_pairs()).unwrap();
        let ids: Vec<&str> = r.rows.iter().map(|r| r.pair_id.as_str()).collect();
        assert_eq!(ids, ["G1-G4", "G2-G3", "G3-G4", "G1-G3"]);
        assert_eq!(r.rows[2].delta_percent, 0.0);
        let text = r.to_text();
        assert!(text.contains("G3-G4"));
        assert!(text.contains("+20.00"));
    }

    #[test]
    fn dangling_reference() {
        let a = scored_assignment([[1.0, 1.0]; 4]);
        let pair = PairSpec::new("x", "G1", "G7", "iv").unwrap();
        assert!(matches!(report(&a, &[pair]), Err(StudyError::Reference(_))));
    }

    #[test]
    fn missing_score_names_student() {
        let mut a = scored_assignment([[1.0, 1.0]; 4]);
        a.groups[0].members[1].quiz_score = None;
        let id = a.groups[0].members[1].id.clone();
        match report(&a, &standard_pairs()) {
            Err(StudyError::MissingScore(s)) => assert_eq!(s, id),
            other => panic!("unexpected {other:?}"),
        }
    }
}
