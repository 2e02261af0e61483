use std::fmt::Write as _;

use coriolis_core::study::{
    balance_groups_with, load_pairs, load_roster, report as build_report, standard_pairs,
    BalanceOptions, GroupAssignment, StudyError,
};

use crate::{BalanceArgs, CliError, OutputFormat, ReportArgs};

fn study_error(e: StudyError) -> CliError {
    match e {
        StudyError::Io(_) => CliError::Io(e.to_string()),
        other => CliError::Usage(other.to_string()),
    }
}

fn assign(args: &BalanceArgs) -> Result<GroupAssignment, CliError> {
    let roster = load_roster(&args.roster).map_err(study_error)?;
    let options = BalanceOptions {
        variance_weight: args.variance_weight,
        restarts: args.restarts,
        ..BalanceOptions::default()
    };
    balance_groups_with(&roster, args.groups, &options).map_err(study_error)
}

/// Balanced groups rendered in the requested format.
pub fn balance(args: &BalanceArgs) -> Result<String, CliError> {
    let a = assign(args)?;
    Ok(match args.format {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&a).expect("assignment serializes") + "\n"
        }
        OutputFormat::Csv => {
            let mut out = String::from("id,gpa,group\n");
            for g in &a.groups {
                for s in &g.members {
                    let _ = writeln!(out, "{},{:?},{}", s.id, s.gpa, g.label);
                }
            }
            out
        }
        OutputFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{} students, mean {:.4}, variance {:.6}; objective {:.3e} ({:?})",
                a.groups.iter().map(|g| g.members.len()).sum::<usize>(),
                a.overall_mean,
                a.overall_variance,
                a.objective,
                a.method
            );
            for g in &a.groups {
                let ids: Vec<&str> = g.members.iter().map(|s| s.id.as_str()).collect();
                let _ = writeln!(
                    out,
                    "{}  mean {:.4}  variance {:.6}  {}",
                    g.label,
                    g.mean,
                    g.variance,
                    ids.join(" ")
                );
            }
            out
        }
    })
}

/// Balance a scored roster, then compare the pairs.
pub fn report(args: &ReportArgs) -> Result<String, CliError> {
    let a = assign(&args.balance)?;
    let pairs = match &args.pairs {
        Some(path) => load_pairs(path).map_err(study_error)?,
        None => standard_pairs(),
    };
    let r = build_report(&a, &pairs).map_err(study_error)?;
    Ok(match args.balance.format {
        OutputFormat::Text => r.to_text(),
        OutputFormat::Csv => r.to_csv(),
        OutputFormat::Json => serde_json::to_string_pretty(&r).expect("report serializes") + "\n",
    })
}
