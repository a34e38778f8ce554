#![allow(dead_code)]

use std::path::PathBuf;

use linquas::catalog::{self, ExampleStatus};
use linquas::engine::{self, CheckOptions, CrosscheckReport};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const CROSSCHECK_MODULI: std::ops::RangeInclusive<u64> = 2..=12;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn blessing() -> bool {
    std::env::var_os("LINQUAS_BLESS").is_some_and(|v| v != "0")
}

/// Compares `value` with the pinned file, or rewrites the file under
/// `LINQUAS_BLESS=1`.
pub fn pinned(name: &str, value: &Value) -> Result<(), String> {
    let path = data_path(name);
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    if blessing() {
        std::fs::write(&path, &text).map_err(|e| format!("writing {}: {e}", path.display()))?;
        return Ok(());
    }
    let want = std::fs::read_to_string(&path).map_err(|e| format!("reading {}: {e}", path.display()))?;
    if want == text {
        Ok(())
    } else {
        Err(format!("{} differs from the computed value (LINQUAS_BLESS=1 to update)", path.display()))
    }
}

pub fn example_findings() -> Value {
    let ledger = engine::verify_printed_examples(&CheckOptions::default()).expect("examples verify");
    serde_json::to_value(ledger.sorted()).expect("serializable")
}

pub fn crosscheck_everything() -> Vec<CrosscheckReport> {
    let moduli: Vec<u64> = CROSSCHECK_MODULI.collect();
    engine::crosscheck_all(&moduli, &CheckOptions::default()).expect("crosscheck")
}

/// Per-row summary with a digest of the full mismatch list.
pub fn crosscheck_artifact(reports: &[CrosscheckReport]) -> Value {
    let rows: Vec<Value> = reports
        .iter()
        .map(|r| {
            let mut h = Sha256::new();
            for m in &r.mismatches {
                let t = m.triple;
                h.update(format!("{},{},{},{},{},{}\n", t.n, t.a, t.b, t.c, m.condition, m.oracle));
            }
            let digest: String = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
            json!({
                "entry": r.entry,
                "row": r.row,
                "admitted": r.admitted,
                "not_applicable": r.not_applicable,
                "mismatches": r.mismatches.len(),
                "first": r.mismatches.iter().take(3).collect::<Vec<_>>(),
                "digest": digest,
            })
        })
        .collect();
    json!({ "moduli": [CROSSCHECK_MODULI.start(), CROSSCHECK_MODULI.end()], "rows": rows })
}

/// Open cells whose search results are pinned, with their modulus ranges.
pub fn searched_cells() -> Vec<(&'static str, String, std::ops::RangeInclusive<u64>)> {
    let mut cells = vec![("stein_third", "14.1".to_string(), 2..=12)];
    for (e, r) in catalog::table_rows() {
        if [13, 43, 44].contains(&r.row) && r.example_status == ExampleStatus::QuestionMark {
            let range = match r.modulus_kind {
                catalog::ModulusKind::PrimeP => 2..=13,
                catalog::ModulusKind::AnyN => 2..=12,
            };
            cells.push((e.id, r.label(), range));
        }
    }
    cells
}

pub fn witness_artifact() -> Value {
    let opts = CheckOptions::default();
    let cells: Vec<Value> = searched_cells()
        .into_iter()
        .map(|(id, label, range)| {
            let (e, r) = engine::lookup_row(id, &label).expect("row exists");
            let moduli: Vec<u64> = range.clone().collect();
            let found = engine::search_witnesses(e, r, &moduli, 1, &opts).expect("search");
            json!({
                "entry": id,
                "row": label,
                "moduli": [range.start(), range.end()],
                "witnesses": found,
            })
        })
        .collect();
    Value::Array(cells)
}
