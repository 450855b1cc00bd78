use ktg_core::ktgmodel::{
    parse_sequence, replay, serialize, stats, Ktg, ParseErrorKind,
};
use proptest::prelude::*;

mod common;

use common::{build_sequence as build, target_token};

fn graph(text: &str) -> Ktg {
    replay(&parse_sequence(text).unwrap()).unwrap().final_graph().clone()
}

#[test]
fn two_triangle_routes_agree() {
    let a = graph("tet\nA v1\nA v5");
    let b = graph("tet\nA v1\nA v6\nA v7\nU e8");
    assert!(a.fat_graph_isomorphic(&b));
    assert!(!a.fat_graph_isomorphic(&graph("tet\nA v1")));
}

#[test]
fn theta_sequence_gives_a_theta() {
    let g = graph("tet\nA v1\nU e1\nU e8");
    assert_eq!(g.vertices().len(), 2);
    assert_eq!(g.edges().len(), 3);
    assert!(g.circles().is_empty());
    assert!(g.edges().values().all(|e| e.ends[0].vertex != e.ends[1].vertex));
}

#[test]
fn unzip_gives_a_handcuff() {
    let g = graph("tet\nU e5");
    assert_eq!(g.vertices().len(), 2);
    let loops = g.edges().values().filter(|e| e.ends[0].vertex == e.ends[1].vertex).count();
    assert_eq!(loops, 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn round_trip(choices in prop::collection::vec((0u8..3, any::<u32>(), any::<bool>(), any::<u8>()), 0..8)) {
        let seq = build(&choices);
        let text = serialize(&seq);
        let back = parse_sequence(&text).unwrap();
        prop_assert_eq!(&back, &seq);
        prop_assert_eq!(serialize(&back), text.clone());
        let crlf = text.replace('\n', "\r\n");
        prop_assert_eq!(parse_sequence(&crlf).unwrap(), seq.clone());
        prop_assert_eq!(stats(&back), stats(&seq));
    }

    #[test]
    fn bad_targets_are_positioned(
        choices in prop::collection::vec((0u8..3, any::<u32>(), any::<bool>(), any::<u8>()), 1..8),
        which in any::<usize>(),
    ) {
        let seq = build(&choices);
        prop_assume!(!seq.moves.is_empty());
        let i = which % seq.moves.len();
        let text = serialize(&seq);
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        let token = target_token(&seq.moves[i]);
        let bad = format!("{}9999", &token[..1]);
        let col = lines[i + 1].find(&token).unwrap() + 1;
        lines[i + 1] = lines[i + 1].replacen(&token, &bad, 1);
        let err = parse_sequence(&lines.join("\n")).unwrap_err();
        prop_assert_eq!(err.line, i + 2);
        prop_assert_eq!(err.col, col);
        prop_assert_eq!(err.kind, ParseErrorKind::UnknownId(bad));
    }
}
