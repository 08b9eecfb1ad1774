#![no_main]

use grodel::graph::from_edge_list;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // Any input either parses or returns an error; parsed graphs survive a
    // write/read cycle unchanged.
    if let Ok(g) = from_edge_list(data) {
        if g.n() <= 10_000 {
            let text = g.to_edge_list();
            let back = from_edge_list(text.as_bytes()).expect("own output parses");
            assert_eq!(back.edges(), g.edges());
        }
    }
});
