use liecheck::{exact_case, exact_case_ids};
use serde_json::json;

use crate::report::{CheckEntry, ReportDocument};
use crate::CliError;

pub fn run(case: &str) -> Result<ReportDocument, CliError> {
    let ids: Vec<&str> = if case == "all" {
        exact_case_ids().to_vec()
    } else {
        vec![case]
    };
    let mut checks = Vec::new();
    for id in ids {
        let report = exact_case(id).map_err(|e| CliError::Usage(e.to_string()))?;
        checks.push(CheckEntry::new(
            format!("exact : {id}"),
            report.passed,
            serde_json::to_value(&report).expect("report serializes"),
        ));
    }
    Ok(ReportDocument::new("verify-exact", json!({ "case": case }), checks))
}
