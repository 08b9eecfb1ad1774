#![no_main]

use grodel::generators::hotdog;
use grodel::graph::parse_edge_set;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let g = hotdog(3, 4).unwrap();
    if let Ok(set) = parse_edge_set(data, &g) {
        assert!(set.iter().all(|&e| g.has_edge(e)));
        assert!(set.as_slice().windows(2).all(|w| w[0] < w[1]));
    }
});
