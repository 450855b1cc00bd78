//! Builds the truncated-octahedra gluing for a move sequence and runs the
//! combinatorial checks, including a deliberately broken negative control.

use ktg_core::ktgmodel::parse_sequence;
use ktg_core::octgeom::{build_gluing, verify_gluing};

fn main() {
    for text in ["tet", "tet\nA v1", "tet\nA v1\nH+ e2\nU e8 rings=1", "tet\nA v1\nA v2\nH- e3\nU e8\nU e11"] {
        let g = build_gluing(&parse_sequence(text).unwrap()).unwrap();
        let r = verify_gluing(&g);
        println!(
            "{:<40} octahedra {} pairings {} annuli {} tori {} spheres {} edge classes {:?} passed {}",
            text.replace('\n', "; "),
            r.octahedra,
            g.pairings.len(),
            r.annuli,
            r.tori,
            r.vertex_spheres,
            r.edge_class_sizes,
            r.passed()
        );
    }
    let base = build_gluing(&parse_sequence("tet").unwrap()).unwrap();
    let broken = verify_gluing(&base.without_first_white_pairing());
    println!("negative control violations: {:?}", broken.violations);
}
