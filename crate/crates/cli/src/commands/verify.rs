use clap::Args;

use crate::verify::{run_check, CRITERIA};
use crate::{CliError, CliResult};

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only these criteria, e.g. `--only 1,5`
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u8>,
}

pub fn run(args: &VerifyArgs) -> CliResult<()> {
    let ids: Vec<u8> = if args.only.is_empty() {
        CRITERIA.iter().map(|c| c.0).collect()
    } else {
        args.only.clone()
    };
    let mut failed = 0;
    for &id in &ids {
        let check = run_check(id).ok_or_else(|| {
            CliError::Usage(format!("no criterion {id}; choose 1..={}", CRITERIA.len()))
        })?;
        failed += usize::from(!check.outcome.passed);
        println!("{}", check.line());
    }
    println!("{} of {} passed", ids.len() - failed, ids.len());
    if failed > 0 {
        return Err(CliError::VerifyFailed(failed, ids.len()));
    }
    Ok(())
}
