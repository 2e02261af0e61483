use std::collections::HashSet;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Result, StudyError};

/// Upper end of the accepted GPA scale.
pub const GPA_MAX: f64 = 4.3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudentRecord {
    pub id: String,
    pub gpa: f64,
    #[serde(default)]
    pub quiz_score: Option<f64>,
}

impl StudentRecord {
    pub fn new(id: impl Into<String>, gpa: f64) -> Self {
        Self {
            id: id.into(),
            gpa,
            quiz_score: None,
        }
    }

    pub fn with_score(mut self, score: f64) -> Self {
        self.quiz_score = Some(score);
        self
    }
}

/// GPAs in range, scores non-negative, ids unique.
pub fn validate_roster(roster: &[StudentRecord]) -> Result<()> {
    let mut seen = HashSet::new();
    for s in roster {
        if !(s.gpa.is_finite() && (0.0..=GPA_MAX).contains(&s.gpa)) {
            return Err(StudyError::InvalidRoster(format!(
                "student {} has GPA {} outside [0, {GPA_MAX}]",
                s.id, s.gpa
            )));
        }
        if let Some(q) = s.quiz_score {
            if !(q.is_finite() && q >= 0.0) {
                return Err(StudyError::InvalidRoster(format!(
                    "student {} has invalid quiz score {q}",
                    s.id
                )));
            }
        }
        if !seen.insert(s.id.as_str()) {
            return Err(StudyError::InvalidRoster(format!("duplicate id {}", s.id)));
        }
    }
    Ok(())
}

/// Mean squared deviation from the mean (divides by n).
pub fn population_variance(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    values.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n
}

/// Read `id,gpa[,quiz_score]` rows. A header row is optional.
pub fn parse_roster<R: Read>(input: R) -> Result<Vec<StudentRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(input);
    let mut roster = Vec::new();
    for (line, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| StudyError::InvalidRoster(e.to_string()))?;
        if line == 0 && rec.get(0) == Some("id") {
            continue;
        }
        let bad = |what: &str| StudyError::InvalidRoster(format!("row {}: {what}", line + 1));
        if rec.len() < 2 || rec.len() > 3 {
            return Err(bad("expected id,gpa[,quiz_score]"));
        }
        let gpa = rec[1]
            .parse::<f64>()
            .map_err(|_| bad("GPA is not a number"))?;
        let quiz_score = match rec.get(2) {
            Some("") | None => None,
            Some(q) => Some(
                q.parse::<f64>()
                    .map_err(|_| bad("quiz score is not a number"))?,
            ),
        };
        roster.push(StudentRecord {
            id: rec[0].to_string(),
            gpa,
            quiz_score,
        });
    }
    validate_roster(&roster)?;
    Ok(roster)
}

pub fn load_roster(path: impl AsRef<Path>) -> Result<Vec<StudentRecord>> {
    parse_roster(std::fs::File::open(path)?)
}
