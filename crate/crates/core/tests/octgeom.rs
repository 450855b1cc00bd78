use ktg_core::ktgmodel::{augment, parse_sequence, MoveSequence, RingSpec};
mod common;

use common::corpus;
use ktg_core::octgeom::{asymptotic_series, build_gluing, verify_gluing, vol_oct, volume, OctGeomError};

fn assert_passes(name: &str, s: &MoveSequence) {
    let g = build_gluing(s).unwrap();
    let r = verify_gluing(&g);
    assert!(r.passed(), "{name}: {:?}", r.violations);
}

#[test]
fn single_moves_glue() {
    let mut texts = vec!["tet".to_string()];
    for v in 1..=4 {
        texts.push(format!("tet\nA v{v}"));
    }
    for e in 1..=6 {
        texts.push(format!("tet\nU e{e}"));
        texts.push(format!("tet\nH+ e{e}"));
        texts.push(format!("tet\nH- e{e}"));
    }
    for t in &texts {
        assert_passes(t, &parse_sequence(t).unwrap());
    }
}

#[test]
fn corpus_glues() {
    for (name, s) in corpus() {
        assert_passes(&name, &s);
    }
}

#[test]
fn odd_twist_unzips_glue() {
    for t in ["tet\nH+ e5\nU e5", "tet\nA v1\nH- e8\nU e8", "tet\nH+ e1\nH+ e1\nU e1", "tet\nA v1\nA v5\nH+ e10\nU e10\nU e3"] {
        assert_passes(t, &parse_sequence(t).unwrap());
    }
}

#[test]
fn longer_sequences_glue() {
    for t in [
        "tet\nA v1\nA v2\nA v3",
        "tet\nA v1\nA v5\nU e8",
        "tet\nA v1\nU e1\nU e8\nA v3",
        "tet\nU e5\nU e1",
        "tet\nA v1\nA v6\nA v7\nU e8\nU e12",
    ] {
        let s = parse_sequence(t).unwrap();
        assert_passes(t, &s);
        assert_eq!(build_gluing(&s).unwrap().octs.len(), 2 * ktg_core::ktgmodel::stats(&s).t as usize + 2);
    }
}

#[test]
fn volume_counts_octahedra() {
    let s = parse_sequence("tet\nA v1\nA v2\nU e8 rings=3").unwrap();
    let r = volume(&s).unwrap();
    assert_eq!(r.octahedra, 6);
    assert_eq!(r.seifert_pieces, vec![3]);
    assert!((r.total_volume - 21.983).abs() < 1e-3);
    let one = augment(&s, &RingSpec::Uniform(1)).unwrap();
    assert_eq!(volume(&one).unwrap().total_volume, r.total_volume);
    assert!(matches!(volume(&parse_sequence("tet\nU e5").unwrap()), Err(OctGeomError::NotAugmented)));
    let base = volume(&MoveSequence::default()).unwrap().total_volume;
    assert!((base - 7.327_724_753_4).abs() < 1e-9);
}

#[test]
fn sixj_growth_rate() {
    let rows = asymptotic_series(&[101, 501, 1001, 2001]).unwrap();
    assert!(rows.windows(2).all(|w| w[1].error < w[0].error));
    assert!(rows.iter().all(|r| r.lhs < 7.35 && r.lhs < 2.0 * vol_oct()));
    assert!(rows[3].error / rows[3].target < 0.02);
}
