//! Acceptance report: one PASS/FAIL line per criterion. The process exits
//! nonzero when any criterion fails.

use std::process::{Command, ExitCode};

use mrey_cli::verify::{run_check, CRITERIA};

/// Runs `mrey figures` in a scratch directory and checks the files it leaves.
fn figures_end_to_end() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = Command::new(env!("CARGO_BIN_EXE_mrey"))
        .args(["figures", "--beta-min", "0.1", "--beta-max", "100"])
        .current_dir(dir.path())
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("exit {:?}", out.status.code()));
    }
    let mut series = 0;
    for var in ["beta", "lambda"] {
        for q in ["z", "u", "s", "f", "c"] {
            let path = dir.path().join(format!("out/{q}_vs_{var}.csv"));
            let text =
                std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            let header = format!("beta,lambda,{}", q.to_uppercase());
            if text.lines().next() != Some(header.as_str()) {
                return Err(format!("{}: header", path.display()));
            }
            let col = usize::from(var == "lambda");
            let grid: Vec<f64> = text
                .lines()
                .skip(1)
                .map(|l| l.split(',').nth(col).and_then(|x| x.parse().ok()))
                .collect::<Option<_>>()
                .ok_or(format!("{}: unparsable row", path.display()))?;
            if grid.is_empty() || grid.windows(2).any(|w| w[1] <= w[0]) {
                return Err(format!("{}: grid not increasing", path.display()));
            }
            series += 1;
        }
    }
    if !dir.path().join("out/figures_meta.json").exists() {
        return Err("figures_meta.json missing".into());
    }
    Ok(format!("binary wrote {series} series plus metadata"))
}

fn main() -> ExitCode {
    let mut failed = 0;
    for &(id, _, _) in CRITERIA.iter() {
        let mut check = run_check(id).expect("listed criterion");
        if id == 10 {
            match figures_end_to_end() {
                Ok(note) => check.outcome.detail = format!("{note}; {}", check.outcome.detail),
                Err(e) => {
                    check.outcome.passed = false;
                    check.outcome.detail = format!("end-to-end: {e}; {}", check.outcome.detail);
                }
            }
        }
        failed += usize::from(!check.outcome.passed);
        println!("{}", check.line());
    }
    println!(
        "acceptance: {} of {} criteria pass",
        CRITERIA.len() - failed,
        CRITERIA.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
