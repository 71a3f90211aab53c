//! Acceptance suite: runs every criterion at its pinned tolerance and prints
//! one pass/fail line per criterion.

use mmba::acceptance::{run_suite, Suite};

#[test]
fn acceptance_suite_full() {
    let outcome = run_suite(Suite::Full, 0);
    for c in &outcome.criteria {
        println!(
            "criterion {:2} [{}] {} ({} rows)",
            c.id,
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.rows
        );
    }
    if !outcome.all_pass {
        for row in outcome.report.rows.iter().filter(|r| !r.pass) {
            println!(
                "FAILED row: {} [{}] rel_err={:.3e} tol={:.3e} a=({:.12e},{:.12e}) b=({:.12e},{:.12e})",
                row.case,
                row.source,
                row.rel_err,
                row.tol,
                row.route_a.re,
                row.route_a.im,
                row.route_b.re,
                row.route_b.im
            );
        }
    }
    assert!(outcome.all_pass, "acceptance criteria failed");
}
