//! Volume-conjecture check for an augmented sequence: the so(3) evaluation
//! converges to the hyperbolic volume while the full sequence vanishes at
//! even N.

use ktg_core::cli::verify_colors;
use ktg_core::jonesengine::{verify_conjecture, EngineConfig};
use ktg_core::ktgmodel::parse_sequence;

fn main() {
    let seq = parse_sequence("tet\nA v1\nH+ e2\nU e8 rings=1").unwrap();
    let report = verify_conjecture(&seq, &verify_colors(2001), 0, &EngineConfig::default()).unwrap();
    println!("target volume {:.6} (t={}, r={})", report.target, report.t, report.r);
    for row in &report.rows {
        match row.lhs {
            Some(lhs) => println!("N={:>5}  2pi/N log|J_N| = {:>10.6}  error {:.6}", row.n, lhs, row.error.unwrap()),
            None => println!("N={:>5}  J_N = 0", row.n),
        }
    }
    println!(
        "errors decreasing: {}, final relative error {:.4}, original conjecture fails: {}, so(3) supported: {}",
        report.error_decreasing,
        report.final_rel_error.unwrap(),
        report.original_fails,
        report.so3_supported
    );
}
