use std::path::Path;

use serde_json::json;

use crate::config::{self, ReduceConfig};
use crate::csvout::CsvWriter;
use crate::report::{CheckEntry, ReportDocument};
use crate::CliError;

const FIELD_L2_TOL: f64 = 1e-10;

pub fn run(config_path: &Path, out: Option<&Path>) -> Result<ReportDocument, CliError> {
    let cfg: ReduceConfig = config::load(config_path).map_err(CliError::Usage)?;
    if cfg.species.len() < 2 {
        return Err(CliError::Usage("no eligible pair: need at least two species".into()));
    }
    let grid = vlasov::Grid { nx: cfg.nx, nv: cfg.nv, length: cfg.l, vmax: cfg.vmax };
    let full0 = vlasov::PhaseSpaceState::new(grid, cfg.species.clone())
        .map_err(|e| CliError::Usage(e.to_string()))?;

    // First pair with exactly equal charge-to-mass ratios.
    let mut pair = None;
    'outer: for i in 0..cfg.species.len() {
        for j in (i + 1)..cfg.species.len() {
            if cfg.species[i].qm_ratio() == cfg.species[j].qm_ratio() {
                pair = Some((i, j));
                break 'outer;
            }
        }
    }
    let pair = pair.ok_or_else(|| {
        CliError::Usage("no eligible pair: all charge-to-mass ratios differ".into())
    })?;

    let (reduced0, reduction) = multispecies::reduce_equal_qm(&full0, pair)
        .map_err(|e| CliError::Usage(e.to_string()))?;

    let mut full = full0;
    let mut reduced = reduced0;
    let numerical = |e: vlasov::VlasovError| CliError::Numerical(e.to_string());
    let mut e_full = Vec::with_capacity(cfg.steps);
    let mut e_reduced = Vec::with_capacity(cfg.steps);
    for _ in 0..cfg.steps {
        full.step(cfg.dt).map_err(numerical)?;
        reduced.step(cfg.dt).map_err(numerical)?;
        e_full.push(full.e_total());
        e_reduced.push(reduced.e_total());
    }
    let distance = multispecies::charge_density_l2_distance(&e_full, &e_reduced);

    if let Some(dir) = out {
        let mut csv = CsvWriter::create(
            &dir.join("reduce-field-trajectories.csv"),
            &["step", "e_full_l2", "e_reduced_l2", "difference_max"],
        )
        .map_err(|e| CliError::Usage(format!("i/o error: {e}")))?;
        for (s, (ef, er)) in e_full.iter().zip(e_reduced.iter()).enumerate() {
            let l2 = |v: &[f64]| (v.iter().map(|x| x * x).sum::<f64>()).sqrt();
            let dmax = ef
                .iter()
                .zip(er.iter())
                .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            csv.row(&[s as f64, l2(ef), l2(er), dmax])
                .map_err(|e| CliError::Usage(format!("i/o error: {e}")))?;
        }
        csv.finish().map_err(|e| CliError::Usage(format!("i/o error: {e}")))?;
    }

    let checks = vec![
        CheckEntry::new(
            "charge density unchanged at the reduction instant",
            reduction.charge_density_max_change < 1e-12,
            json!({ "max_change": reduction.charge_density_max_change }),
        ),
        CheckEntry::new(
            "full and reduced field trajectories agree (relative L2 below 1e-10)",
            distance < FIELD_L2_TOL,
            json!({ "relative_l2": distance, "steps": cfg.steps }),
        ),
    ];
    let config_echo = json!({
        "config": serde_json::to_value(&cfg).expect("config"),
        "pair": [pair.0, pair.1],
        "caveats": reduction.caveats,
        "dropped": reduction.dropped,
    });
    Ok(ReportDocument::new("reduce", config_echo, checks))
}
