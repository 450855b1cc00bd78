//! The colored Jones value of augmented sequences at zeta_N: the multisum
//! with enough rings, the closed form, and the vanishing at even N.

use ktg_core::jonesengine::{
    augmented_closed_form, build_expression, eval_at_root, sufficient_ring_count, EngineConfig, TwistMode,
};
use ktg_core::ktgmodel::{augment, parse_sequence, RingSpec};

fn main() {
    let config = EngineConfig::default();
    for text in ["tet\nU e5 rings=1", "tet\nA v1\nH+ e2\nU e8 rings=1", "tet\nA v1\nU e1 rings=1\nU e8 rings=2"] {
        let base = parse_sequence(text).unwrap();
        let bound = sufficient_ring_count(&base).unwrap();
        let seq = augment(&base, &RingSpec::Uniform(bound.n)).unwrap();
        println!("{} with {} rings per unzip (a={}, f={})", text.replace('\n', "; "), bound.n, bound.a, bound.f);
        let expr = build_expression(&seq, TwistMode::Strict).unwrap();
        for n in 2..=7 {
            let r = eval_at_root(&expr, n, &config).unwrap();
            let closed = augmented_closed_form(&seq, n).unwrap();
            println!(
                "  N={n}: multisum {:.10e}  closed {:.10e}  ({} summands)",
                r.value.re, closed.re, r.summands
            );
        }
    }
}
