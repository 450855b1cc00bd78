//! The volume of the regular ideal octahedron and the growth rate of the
//! quantum 6j symbol towards it.

use std::f64::consts::FRAC_PI_4;

use ktg_core::octgeom::{asymptotic_series, asymptotics_csv, lobachevsky, lobachevsky_series, vol_oct, volume};
use ktg_core::ktgmodel::parse_sequence;

fn main() {
    println!("Lobachevsky(pi/4) quadrature {:.15}", lobachevsky(FRAC_PI_4));
    println!("Lobachevsky(pi/4) series     {:.15}", lobachevsky_series(FRAC_PI_4, 40));
    println!("vol_oct = {:.12}", vol_oct());
    let rows = asymptotic_series(&[101, 501, 1001, 2001]).unwrap();
    print!("{}", asymptotics_csv(&rows));
    let seq = parse_sequence("tet\nA v1\nA v2\nU e8 rings=1\nU e11 rings=1").unwrap();
    let v = volume(&seq).unwrap();
    println!(
        "t=2 complement: {} octahedra, hyperbolic piece {:.6}, Seifert pieces {:?}",
        v.octahedra, v.hyperbolic_piece_volume, v.seifert_pieces
    );
}
