// Reading `.afs` text, printing it back, and producing the JSON report.

use afsys::dsl::{check_workspace, emit_report, parse, parse_strict, print};
use afsys::Budget;

const SYS1: &str = include_str!("../fixtures/sys1.afs");

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ws = parse_strict(SYS1).map_err(|d| format!("{d:?}"))?;
    let printed = print(&ws);
    println!("{printed}");
    assert_eq!(parse_strict(&printed).map_err(|d| format!("{d:?}"))?, ws);

    let report = check_workspace(&ws, Budget::default())?;
    print!("{}", emit_report(&report));
    assert_eq!(report.summary.fail, 0);

    // Parsing never stops at the first problem.
    let (partial, diags) = parse("space S over Nowhere { points: p; opens: (0); }\nalgebra A variety=Frame { elements x; }\n");
    for d in &diags {
        println!("{d}");
    }
    assert!(partial.is_empty());
    assert_eq!(diags.len(), 2);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
