//! The theta graph obtained from the tetrahedron by one triangle move and two
//! unzips. Its exact invariant is compared with the closed product formula.

use ktg_core::jonesengine::{build_expression, eval_generic, normalize_generic, EngineConfig, TwistMode};
use ktg_core::ktgmodel::parse_sequence;
use ktg_core::qarith::RatFun;
use ktg_core::qsymbols::{qfact, qint};
use num_rational::BigRational;

fn main() {
    let seq = parse_sequence("tet\nA v1\nU e1\nU e8").unwrap();
    let expr = build_expression(&seq, TwistMode::Strict).unwrap();
    for k in 1..=3u32 {
        let n = 2 * k + 1;
        let raw = eval_generic(&expr, n, &EngineConfig::default()).unwrap();
        let value = normalize_generic(&raw, n, seq.declared_split_components);
        let sign = if k % 2 == 1 { -1 } else { 1 };
        let formula = RatFun::new(
            qfact(3 * k + 1) * qfact(k).pow(3),
            qfact(2 * k).pow(3) * qint(2 * k as i64 + 1),
        )
        .unwrap()
        .scale(&BigRational::from_integer(sign.into()));
        println!("N={n}: matches product formula: {}", value == formula);
        if n == 3 {
            println!("  J_3 = {value}");
        }
    }
}
