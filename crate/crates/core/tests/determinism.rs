use linquas::engine::{self, CheckOptions};
use linquas::LinearGroupoid;

fn in_pool<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

fn sweep() -> String {
    let opts = CheckOptions::default();
    let moduli: Vec<u64> = (2..=9).collect();
    let mut out = Vec::new();
    for (id, row) in [("medial_alternative", "8.2"), ("stein_third", "14.1"), ("l_aaip", "50.3"), ("first_rectangle", "63.1")] {
        let (e, r) = engine::lookup_row(id, row).unwrap();
        out.push(serde_json::to_value(engine::crosscheck(e, r, &moduli, &opts).unwrap()).unwrap());
        out.push(serde_json::to_value(engine::search_witnesses(e, r, &moduli, 5, &opts).unwrap()).unwrap());
    }
    let g = LinearGroupoid::new(7, 3, 5, 5).unwrap();
    out.push(serde_json::to_value(engine::classify(&g, &opts).unwrap()).unwrap());
    // 40^4 environments take the chunked parallel path.
    let big = LinearGroupoid::new(40, 1, 3, 7).unwrap();
    let medial = engine::lookup("first_rectangle").unwrap().identity.clone().unwrap();
    out.push(serde_json::to_value(engine::holds_bruteforce(&big, &medial, &opts).unwrap()).unwrap());
    serde_json::to_string(&out).unwrap()
}

#[test]
fn worker_count_does_not_change_output() {
    assert_eq!(in_pool(1, sweep), in_pool(4, sweep));
}
