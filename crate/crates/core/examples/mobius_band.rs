//! The colored Möbius band and the half-twist coefficients, computed in the
//! Temperley-Lieb oracle and compared with the closed formulas.

use ktg_core::qarith::RatFun;
use ktg_core::qsymbols::{halftwist_coeff, unknot_value, Sign};
use ktg_core::tloracle::{bracket_primitive, Primitive};

fn main() {
    for k in 1..=4 {
        for sign in [Sign::Plus, Sign::Minus] {
            let oracle = bracket_primitive(Primitive::TwistedEdge(k, sign)).unwrap();
            let formula = RatFun::from_poly(&halftwist_coeff(k, sign) * &unknot_value(k));
            let agree = if oracle == formula { "agrees" } else { "DIFFERS" };
            println!("k={k} {sign:?}: {oracle}  ({agree} with halftwist * unknot)");
        }
    }
}
