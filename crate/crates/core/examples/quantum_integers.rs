//! Quantum integers, factorials and the colored unknot as exact Laurent
//! polynomials, then evaluated at the root of unity.

use ktg_core::qarith::zeta;
use ktg_core::qsymbols::{qbinom, qfact, qint, unknot_value};

fn main() {
    for n in 1..=4 {
        println!("[{n}] = {}", qint(n));
    }
    println!("[3]! = {}", qfact(3));
    println!("[4 choose 2] = {}", qbinom(4, 2).unwrap());
    for n in 1..=4 {
        println!("<{n}> = {}", unknot_value(n));
    }
    let n = 5;
    let a_half = zeta(n).sqrt();
    println!("[{n}] at zeta_{n} = {:.3e}", qint(n as i64).eval_half(a_half).norm());
    println!("[{}] at zeta_{n} = {:.6}", n - 1, qint(n as i64 - 1).eval_half(a_half));
}
