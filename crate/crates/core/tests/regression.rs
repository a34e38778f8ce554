mod common;

use linquas::engine::{self, CheckOptions, Verdict};

#[test]
fn example_findings_are_pinned() {
    common::pinned("example_findings.json", &common::example_findings()).unwrap();
}

#[test]
fn crosscheck_mismatches_are_pinned() {
    let reports = common::crosscheck_everything();
    common::pinned("crosscheck_2_12.json", &common::crosscheck_artifact(&reports)).unwrap();
}

#[test]
fn witness_searches_are_pinned() {
    common::pinned("witnesses.json", &common::witness_artifact()).unwrap();
}

#[test]
fn pinned_witnesses_hold_by_brute_force() {
    let opts = CheckOptions::default();
    let cells: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(common::data_path("witnesses.json")).unwrap()).unwrap();
    for cell in cells.as_array().unwrap() {
        let e = engine::lookup(cell["entry"].as_str().unwrap()).unwrap();
        let ident = e.identity.as_ref().unwrap();
        for w in cell["witnesses"].as_array().unwrap() {
            let t = &w["triple"];
            let g = linquas::LinearGroupoid::new(
                t["n"].as_u64().unwrap(),
                t["a"].as_u64().unwrap(),
                t["b"].as_u64().unwrap(),
                t["c"].as_u64().unwrap(),
            )
            .unwrap();
            assert_eq!(engine::holds_bruteforce(&g, ident, &opts).unwrap().verdict, Verdict::Holds, "{w}");
        }
    }
}
