use std::path::Path;

use liecheck::{check_conditional_symmetry, check_symmetry, parse_generator_file, parse_side_conditions};
use serde_json::json;
use symkernel::parse_system;

use crate::report::{CheckEntry, ReportDocument};
use crate::CliError;

pub fn run(
    system_path: &Path,
    generator_paths: &[std::path::PathBuf],
    conditions_path: Option<&Path>,
) -> Result<ReportDocument, CliError> {
    let read = |p: &Path| {
        std::fs::read_to_string(p)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display())))
    };

    let system_text = read(system_path)?;
    let system = parse_system(&system_text, &stem(system_path))
        .map_err(|e| CliError::Usage(format!("{}: {e}", system_path.display())))?;

    let side = match conditions_path {
        Some(p) => parse_side_conditions(&read(p)?, &system.scope)
            .map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?,
        None => Vec::new(),
    };

    let mut checks = Vec::new();
    for gen_path in generator_paths {
        let generator = parse_generator_file(&read(gen_path)?, &system.scope)
            .map_err(|e| CliError::Usage(format!("{}: {e}", gen_path.display())))?;
        let report = if side.is_empty() {
            check_symmetry(&generator, &system)
        } else {
            check_conditional_symmetry(&generator, &system, &side)
        }
        .map_err(|e| CliError::Usage(format!("{}: {e}", gen_path.display())))?;
        checks.push(CheckEntry::new(
            format!("{} : {}", system.name, report.generator),
            report.passed(),
            serde_json::to_value(&report).expect("report serializes"),
        ));
    }

    let config = json!({
        "system": system_path.display().to_string(),
        "generators": generator_paths.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        "conditions": conditions_path.map(|p| p.display().to_string()),
    });
    Ok(ReportDocument::new("check", config, checks))
}

fn stem(p: &Path) -> String {
    p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "system".into())
}
