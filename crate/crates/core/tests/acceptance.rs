//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;

use stochord::verify::{self, Suite};

fn main() -> ExitCode {
    let seed = std::env::var("STOCHORD_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(verify::DEFAULT_SEED);
    let mut failed = 0;
    for &id in Suite::All.criteria() {
        let report = verify::run_criterion(id, seed);
        println!("{report}");
        failed += usize::from(!report.passed);
    }
    println!("acceptance: {} of {} criteria passed", Suite::All.criteria().len() - failed, Suite::All.criteria().len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
