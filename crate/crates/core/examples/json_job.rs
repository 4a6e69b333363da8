use abmod::cli::{parse_spec, run_job, verify_suite};

fn main() {
    let job = r#"{
        "command": "invariants",
        "input": {"lambda1": "7/2", "p": [2, 3], "S": [["1", "0", "1"], ["1"]], "order": 24}
    }"#;
    let spec = parse_spec(job.as_bytes()).unwrap();
    let report = run_job(&spec).unwrap();
    println!("{}", serde_json::to_string_pretty(&report).unwrap());

    let summary = verify_suite("algebra", 7).unwrap();
    println!("algebra suite: {} passed, {} failed", summary.passed, summary.failed);
}
