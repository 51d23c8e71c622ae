use mls_core::harness::evaluate;
use mls_core::trace_io::{parse_instance, serialize_instance, serialize_report, serialize_schedule};
use mls_core::workloads::figure2;
use mls_core::{run_ljllm, Oracle};

const FIGURE2_FILE: &str = include_str!("golden/figure2.mls");
const FIGURE2_CSV: &str = include_str!("golden/figure2_ljllm.csv");

#[test]
fn figure2_instance_file() {
    assert_eq!(serialize_instance(&figure2()), FIGURE2_FILE);
    assert_eq!(parse_instance(FIGURE2_FILE).unwrap(), figure2());
}

#[test]
fn figure2_ljllm_trace() {
    let s = run_ljllm(&figure2());
    assert_eq!(s.makespan, 5);
    assert_eq!(serialize_schedule(&s), FIGURE2_CSV);
}

#[test]
fn figure2_report_is_stable() {
    let r = evaluate(&figure2(), Some(&Oracle::default()));
    let text = serialize_report(&r);
    assert_eq!(text, serialize_report(&evaluate(&figure2(), Some(&Oracle::default()))));
    for needle in [
        "\"ljllm\": 5",
        "\"ls_concatenate\": 5",
        "\"lpt\": 5",
        "\"opt\": 5",
        "\"ljllm\": \"1/1\"",
        "\"bound\": \"3/2\"",
    ] {
        assert!(text.contains(needle), "missing {needle} in\n{text}");
    }
    let keys: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("  \"") )
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    assert_eq!(
        keys,
        [
            "digest",
            "m",
            "k",
            "n",
            "total_ptime",
            "max_ptime",
            "lower_bound",
            "makespans",
            "opt",
            "opt_reason",
            "ratios",
            "checks",
            "idle",
            "source_stats"
        ]
    );
}
