#![allow(dead_code)]

use ktg_core::ktgmodel::{Ktg, Move, MoveSequence};
use ktg_core::qarith::RatFun;
use ktg_core::qsymbols::Sign;
use ktg_core::tloracle::{evaluate, DiagramBuilder};

pub fn colorings6(max: u32) -> Vec<[u32; 6]> {
    let mut out = Vec::new();
    let mut j = [1u32; 6];
    loop {
        out.push(j);
        let mut i = 0;
        while i < 6 {
            j[i] += 1;
            if j[i] <= max {
                break;
            }
            j[i] = 1;
            i += 1;
        }
        if i == 6 {
            return out;
        }
    }
}

/// Two parallel bundles `(a, b)` between two closures, optionally with a
/// positive half twist of the pair (bundle crossing plus a twist on each).
pub fn parallel(builder: &mut DiagramBuilder, at: usize, twisted: bool) -> usize {
    if twisted {
        builder.twist(at, Sign::Plus);
        builder.twist(at + 1, Sign::Plus);
        builder.exchange(at, Sign::Plus);
    }
    at
}

/// The fused configuration: `(a, b) -> c -> (a, b)`, or `(b, a)` on top when
/// the pair is twisted.
pub fn fused(builder: &mut DiagramBuilder, at: usize, a: u32, b: u32, c: u32, twisted: bool) {
    builder.merge(at, c).unwrap();
    if twisted {
        builder.split(at, b, a).unwrap();
    } else {
        builder.split(at, a, b).unwrap();
    }
}

pub fn trace_closure(a: u32, b: u32, middle: impl FnOnce(&mut DiagramBuilder)) -> RatFun {
    let mut d = DiagramBuilder::new();
    d.open_loop(0, b).open_loop(1, a);
    middle(&mut d);
    d.close_loop(1).unwrap().close_loop(0).unwrap();
    evaluate(&d.finish().unwrap()).unwrap()
}

pub fn vertex_closure(a: u32, b: u32, e: u32, middle: impl FnOnce(&mut DiagramBuilder)) -> RatFun {
    let mut d = DiagramBuilder::new();
    d.open_loop(0, e).split(1, a, b).unwrap();
    middle(&mut d);
    d.merge(1, e).unwrap().close_loop(0).unwrap();
    evaluate(&d.finish().unwrap()).unwrap()
}

pub fn channels(a: u32, b: u32) -> impl Iterator<Item = u32> {
    (a.abs_diff(b) + 1..a + b).step_by(2)
}

/// Builds a valid sequence by picking each target among the current ones:
/// `(kind, pick, sign, rings)` per move.
pub fn build_sequence(choices: &[(u8, u32, bool, u8)]) -> MoveSequence {
    let mut g = Ktg::standard_tetrahedron();
    let mut moves = Vec::new();
    for &(kind, pick, sign, rings) in choices {
        let ids: Vec<u32> = match kind % 3 {
            0 => g.vertices().keys().copied().collect(),
            1 => g.edges().keys().copied().collect(),
            _ => g
                .edges()
                .iter()
                .filter(|(_, e)| e.ends[0].vertex != e.ends[1].vertex)
                .map(|(&id, _)| id)
                .collect(),
        };
        if ids.is_empty() {
            continue;
        }
        let id = ids[pick as usize % ids.len()];
        let m = match kind % 3 {
            0 => Move::Triangle(id),
            1 => Move::HalfTwist(id, if sign { Sign::Plus } else { Sign::Minus }),
            _ => Move::Unzip {
                edge: id,
                rings: u32::from(rings % 3),
            },
        };
        g = g.apply_move(&m).unwrap();
        moves.push(m);
    }
    MoveSequence::new(moves)
}

/// The id token a move targets.
pub fn target_token(m: &Move) -> String {
    match m {
        Move::Triangle(v) => format!("v{v}"),
        Move::HalfTwist(e, _) | Move::Unzip { edge: e, .. } => format!("e{e}"),
    }
}

/// Corpus sequences sorted by file name.
pub fn corpus() -> Vec<(String, MoveSequence)> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus");
    let mut out: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|f| {
            let p = f.unwrap().path();
            let s = ktg_core::ktgmodel::parse_sequence(&std::fs::read_to_string(&p).unwrap()).unwrap();
            (p.file_name().unwrap().to_string_lossy().into_owned(), s)
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}
