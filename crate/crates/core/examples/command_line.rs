// Driving the command line in-process.

use afsys::cli::{run, run_with_env};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let fixtures = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let out = run(["afsys", "check", &format!("{fixtures}/sys1.afs")]);
    print!("{}", out.stdout);
    assert_eq!(out.exit_code, 0);

    let out = run([
        "afsys",
        "points",
        &format!("{fixtures}/sys1.afs"),
        "--algebra",
        "C3",
    ]);
    print!("{}", out.stdout);

    let out = run(["afsys", "demo", "prop3", "--n", "2", "--json"]);
    assert!(out.stdout.contains("\"lhs\": 16"));

    // A budget of 1 is too small for the Vickers check.
    let env = |k: &str| (k == "AFSYS_BUDGET").then(|| "1".to_string());
    let out = run_with_env(["afsys", "check", &format!("{fixtures}/sys1.afs")], env);
    print!("{}", out.stderr);
    assert_eq!(out.exit_code, 2);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
