use std::path::PathBuf;

use afsys::cli::{run, run_with_env, CommandOutcome};
use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(
        PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(name),
    )
    .unwrap()
}

fn afsys(args: &[&str]) -> CommandOutcome {
    run_with_env(std::iter::once("afsys").chain(args.iter().copied()), |_| {
        None
    })
}

fn json(out: &CommandOutcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap()
}

const CHECKED: &[&str] = &[
    "afinst",
    "bad_laws",
    "bad_space",
    "bad_system",
    "inst1",
    "inst2",
    "inst2_flipped",
    "localic_afinst",
    "sierpinski",
    "spatial_afinst",
    "sys1",
    "sys2",
    "theorymorphism",
];

#[test]
fn check_matches_golden_reports() {
    for name in CHECKED {
        let out = afsys(&["check", &fixture(&format!("{name}.afs")), "--json"]);
        assert_eq!(out.stdout, golden(&format!("{name}.json")), "{name}");
        let fails = json(&out)["summary"]["fail"].as_u64().unwrap();
        assert_eq!(out.exit_code, if fails == 0 { 0 } else { 1 }, "{name}");
    }
}

#[test]
fn sys1_lists_the_expected_checks() {
    let out = afsys(&["check", &fixture("sys1.afs"), "--json"]);
    assert_eq!(out.exit_code, 0);
    let report = json(&out);
    let system = report["entities"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["kind"] == "system")
        .unwrap();
    let checks: Vec<(&str, &str)> = system["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["check"].as_str().unwrap(), c["status"].as_str().unwrap()))
        .collect();
    assert_eq!(
        checks,
        [
            ("is_system", "pass"),
            ("separated", "pass"),
            ("vickers", "pass")
        ]
    );
}

#[test]
fn points_of_the_chain() {
    let out = afsys(&["points", &fixture("sys1.afs"), "--algebra", "C3", "--json"]);
    assert_eq!(out.stdout, golden("points_sys1_c3.json"));
    assert_eq!(json(&out)["result"]["count"], 2);
}

#[test]
fn prop3_demo() {
    let out = afsys(&["demo", "prop3", "--n", "2", "--json"]);
    assert_eq!(out.exit_code, 0);
    assert_eq!(out.stdout, golden("demo_prop3_n2.json"));
    let result = &json(&out)["result"];
    assert_eq!(
        (result["lhs"].as_u64(), result["rhs"].as_u64()),
        (Some(16), Some(4))
    );
    assert_eq!(result["equal"], false);
    assert_eq!(afsys(&["demo", "prop3", "--n", "0"]).exit_code, 2);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bogus"][..],
        &["check"],
        &["check", "x.afs", "--frobnicate"],
        &["lift", "x.afs", "--institution", "A", "--op", "nope"],
    ] {
        let out = afsys(args);
        assert_eq!(out.exit_code, 2, "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(out.stderr.starts_with("error:"), "{}", out.stderr);
        assert!(out.stderr.contains("Usage: afsys"), "{}", out.stderr);
    }
    let help = afsys(&["--help"]);
    assert_eq!(help.exit_code, 0);
    assert!(help.stdout.contains("spatialize"));
}

#[test]
fn parse_errors_exit_2_with_spans() {
    let out = afsys(&["check", &fixture("parse_error.afs")]);
    assert_eq!(out.exit_code, 2);
    let lines: Vec<&str> = out.stderr.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(
        lines[0].ends_with("parse_error.afs:4:9: error: expected a name or `;`, found `/`"),
        "{}",
        lines[0]
    );
    assert!(
        lines[1].contains(":7:21: error: unknown algebra `MissingAlg`"),
        "{}",
        lines[1]
    );
    assert_eq!(
        afsys(&["check", &fixture("does_not_exist.afs")]).exit_code,
        2
    );
}

#[test]
fn unknown_entity_exits_2() {
    let out = afsys(&["spatialize", &fixture("sys1.afs"), "--system", "Nope"]);
    assert_eq!(out.exit_code, 2);
    assert!(out.stderr.contains("no system named `Nope`"));
    let out = afsys(&[
        "lift",
        &fixture("afinst.afs"),
        "--institution",
        "AF",
        "--op",
        "ie",
    ]);
    assert_eq!(out.exit_code, 2);
    assert!(out.stderr.contains("space-valued"));
}

#[test]
fn budget_precedence() {
    let sys1 = fixture("sys1.afs");
    let small = |k: &str| (k == "AFSYS_BUDGET").then(|| "1".to_string());
    assert_eq!(run_with_env(["afsys", "check", &sys1], small).exit_code, 2);
    assert_eq!(
        run_with_env(["afsys", "check", &sys1, "--budget", "100"], small).exit_code,
        0
    );
    let bad = |k: &str| (k == "AFSYS_BUDGET").then(|| "lots".to_string());
    assert_eq!(run_with_env(["afsys", "check", &sys1], bad).exit_code, 2);

    let dir = std::env::temp_dir().join(format!("afsys-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let config = dir.join("afsys.toml");
    std::fs::write(&config, "budget = 1\njson = true\n").unwrap();
    let config = config.to_str().unwrap();
    let out = afsys(&["check", &sys1, "--config", config]);
    assert_eq!(out.exit_code, 2);
    let roomy = |k: &str| (k == "AFSYS_BUDGET").then(|| "100".to_string());
    let out = run_with_env(["afsys", "check", &sys1, "--config", config], roomy);
    assert_eq!(out.exit_code, 0);
    assert!(out.stdout.starts_with('{'));
    std::fs::write(dir.join("bad.toml"), "colour = \"red\"\n").unwrap();
    assert_eq!(
        afsys(&[
            "check",
            &sys1,
            "--config",
            dir.join("bad.toml").to_str().unwrap()
        ])
        .exit_code,
        2
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn quiet_and_human_output() {
    let sys1 = fixture("sys1.afs");
    let out = afsys(&["check", &sys1, "--quiet"]);
    assert_eq!((out.exit_code, out.stdout.as_str()), (0, ""));
    let out = afsys(&["check", &fixture("bad_laws.afs")]);
    assert_eq!(out.exit_code, 1);
    assert!(out
        .stdout
        .contains("FAIL  law:complement_join {\"assignment\":[\"m\"]}"));
    assert!(out.stdout.ends_with("summary: 11 pass, 2 fail\n"));
}

#[test]
fn transformations_emit_reparseable_text() {
    let cases: &[&[&str]] = &[
        &["spatialize", "sys1.afs", "--system", "SYS1"],
        &["localify", "sys2.afs", "--system", "SYS2"],
        &[
            "lift",
            "spatial_afinst.afs",
            "--institution",
            "SPAT",
            "--op",
            "ie",
        ],
        &["lift", "afinst.afs", "--institution", "AF", "--op", "ispat"],
        &["lift", "afinst.afs", "--institution", "AF", "--op", "iloc"],
        &[
            "lift",
            "localic_afinst.afs",
            "--institution",
            "LOC",
            "--op",
            "ieloc",
        ],
        &["geo", "afinst.afs", "--institution", "AF"],
        &[
            "apply",
            "theorymorphism.afs",
            "--theorymorphism",
            "collapse",
            "--system",
            "Chain",
        ],
        &[
            "apply",
            "theorymorphism.afs",
            "--theorymorphism",
            "include",
            "--system",
            "SYS1",
        ],
    ];
    for case in cases {
        let file = fixture(case[1]);
        let mut args = vec![case[0], file.as_str()];
        args.extend(&case[2..]);
        args.push("--json");
        let out = afsys(&args);
        assert_eq!(out.exit_code, 0, "{case:?}: {}{}", out.stdout, out.stderr);
        let text = json(&out)["result"]["afs"].as_str().unwrap().to_string();
        let ws =
            afsys::dsl::parse_strict(&text).unwrap_or_else(|d| panic!("{case:?}: {d:?}\n{text}"));
        assert_eq!(afsys::dsl::print(&ws), text);
    }
}

#[test]
fn geo_of_afinst_is_sys1_at_s2() {
    let out = afsys(&[
        "geo",
        &fixture("afinst.afs"),
        "--institution",
        "AF",
        "--json",
    ]);
    let text = json(&out)["result"]["afs"].as_str().unwrap().to_string();
    assert!(text.contains("sat S2: p -> {top}, q -> {m top};"), "{text}");
    assert!(text.contains("arrow phi: S2 -> S1;"), "{text}");
}

#[test]
fn json_is_byte_stable() {
    let sys1 = fixture("afinst.afs");
    let a = run(["afsys", "check", &sys1, "--json"]);
    let b = run(["afsys", "check", &sys1, "--json"]);
    assert_eq!(a, b);
}
