//! Runs every acceptance criterion and prints one verdict line each.
//!
//! Criteria 1 to 9 run in exact rational arithmetic; criterion 10 reruns them
//! in `Z/p^30` and compares. The process exits nonzero if any line is red.

use std::process::ExitCode;
use std::time::Instant;

use lt_kernel_verify::criteria::{backend_agreement, criteria, run_rational};

fn main() -> ExitCode {
    let mut verdicts = Vec::new();
    let mut traces = Vec::new();
    for c in criteria() {
        let start = Instant::now();
        let (verdict, t) = run_rational(&c);
        println!("{verdict} ({:.1}s)", start.elapsed().as_secs_f64());
        verdicts.push(verdict);
        traces.push((c.id, t));
    }
    let start = Instant::now();
    let agreement = backend_agreement(&traces);
    println!("{agreement} ({:.1}s)", start.elapsed().as_secs_f64());
    verdicts.push(agreement);

    let passed = verdicts.iter().filter(|v| v.pass).count();
    println!("{passed}/{} criteria pass", verdicts.len());
    if passed == verdicts.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
