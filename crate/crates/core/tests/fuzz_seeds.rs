//! Replays the checked-in fuzz corpus seeds through the same checks the
//! fuzz targets perform.

use std::fs;
use std::path::PathBuf;

use grodel::generators::hotdog;
use grodel::graph::{from_edge_list, parse_edge_set};

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            (path.display().to_string(), fs::read(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn edge_list_seeds() {
    let mut parsed = 0;
    for (name, bytes) in seeds("edge_list") {
        if let Ok(g) = from_edge_list(&bytes) {
            let back = from_edge_list(g.to_edge_list().as_bytes()).unwrap();
            assert_eq!(back.edges(), g.edges(), "{name}");
            parsed += 1;
        }
    }
    assert!(parsed >= 3);
}

#[test]
fn edge_set_seeds() {
    let g = hotdog(3, 4).unwrap();
    for (name, bytes) in seeds("edge_set") {
        if let Ok(set) = parse_edge_set(&bytes, &g) {
            assert!(set.iter().all(|&e| g.has_edge(e)), "{name}");
        }
    }
}
