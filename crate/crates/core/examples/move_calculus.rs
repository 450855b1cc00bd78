//! Parsing a move sequence, replaying it on the standard tetrahedron and
//! reading off its statistics. Also shows a positioned parse
//! error.

use ktg_core::ktgmodel::{parse_sequence, replay, serialize, stats, validate};

fn main() {
    let text = "tet\nA v1\nA v2\nH- e3\nU e8 rings=1\nU e11 rings=1";
    let seq = parse_sequence(text).unwrap();
    println!("canonical form:\n{}", serialize(&seq));
    let history = replay(&seq).unwrap();
    for (i, g) in history.states.iter().enumerate() {
        println!(
            "state {i}: {} vertices, {} edges, {} circles, {} rings, {} components",
            g.vertices().len(),
            g.edges().len(),
            g.circles().len(),
            g.rings().len(),
            g.components()
        );
    }
    let s = stats(&seq);
    println!("t={} u={} theta={} r={} augmented={}", s.t, s.u, s.theta, s.r, seq.is_augmented());

    match parse_sequence("tet\nA v1\nU e99") {
        Ok(_) => println!("unexpectedly parsed"),
        Err(e) => println!("rejected: {e}"),
    }
    let report = validate(&seq);
    println!("validation: ok={} failure={:?}", report.is_ok(), report.failure);
}
