//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the output.

use topozeta::verify;

fn main() {
    let checks: [fn() -> verify::CriterionResult; 8] = [
        verify::criterion_1,
        verify::criterion_2,
        verify::criterion_3,
        verify::criterion_4,
        verify::criterion_5,
        verify::criterion_6,
        verify::criterion_7,
        verify::criterion_8,
    ];
    let mut failed = Vec::new();
    for check in checks {
        let r = check();
        print!("{}", verify::render_table(std::slice::from_ref(&r)));
        if !r.passed {
            failed.push(r.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", checks.len());
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
