//! Prints one PASS/FAIL line per acceptance criterion.
//!
//! Set `ACCEPTANCE_STRICT=1` to exit non-zero when any criterion fails.

use qcover::criteria;

fn main() {
    let mut failed = Vec::new();
    for id in 1..=12u8 {
        let o = criteria::run(id);
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("{tag} criterion {id}: {} ({:.1}s) {}", o.title, o.seconds, o.detail);
        if !o.passed {
            failed.push(id);
        }
    }
    println!("{} of 12 criteria passed; failing: {failed:?}", 12 - failed.len());
    if !failed.is_empty() && std::env::var_os("ACCEPTANCE_STRICT").is_some() {
        std::process::exit(1);
    }
}
