//! Runs verification over the default battery of genus-one single-zero strata
//! and prints one summary line with the elapsed seconds per stratum.

use strata_core::{battery_signatures, verify, VerifyStatus, DEFAULT_MAX_RAW};

fn main() {
    let mut mismatches = 0;
    for sig in battery_signatures() {
        let start = std::time::Instant::now();
        let report = verify(&sig, DEFAULT_MAX_RAW).expect("battery strata are within limits");
        if report.status == VerifyStatus::Mismatch {
            mismatches += 1;
        }
        println!("{sig}: {} [{:.3}]", report.summary_line(), start.elapsed().as_secs_f64());
    }
    println!("{mismatches} mismatches");
}
