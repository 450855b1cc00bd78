//! The all-N tetrahedron at zeta_N: the exact symbol is singular there, so it
//! is evaluated through jets and compared with the quantum 6j growth value.

use ktg_core::qarith::QArithError;
use ktg_core::qsymbols::{sixj_n, JetTable, QMonomial, QSum, TetLabels};

fn main() {
    println!("{:>4} {:>24} {:>24} {:>9}", "N", "tet/<N> at root", "sixj_N", "precision");
    for n in (3..=25).step_by(2) {
        let tet = QSum::tet(&TetLabels::uniform(n).unwrap()).scale(&QMonomial::unknot(n).inv());
        let mut precision = 2;
        let value = loop {
            let table = JetTable::new(n, precision, tet.max_index());
            match tet.jet(&table).and_then(|j| j.value()) {
                Err(QArithError::PrecisionExhausted) if precision < 16 => precision *= 2,
                r => break r.unwrap(),
            }
        };
        println!("{n:>4} {:>24.12e} {:>24.12e} {precision:>9}", value.re, sixj_n(n).unwrap());
    }
}
