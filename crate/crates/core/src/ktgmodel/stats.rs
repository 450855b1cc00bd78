use super::{Ktg, KtgError, Move, MoveRecord, MoveSequence};

#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct MoveStats {
    pub t: u32,
    pub u: u32,
    pub theta: i64,
    pub r: u32,
    pub per_unzip_rings: Vec<u32>,
    /// Net twist of each unzipped edge at the time of the unzip.
    pub twist_at_unzip: Vec<i64>,
}

/// Every intermediate graph of a replay with the record of each move.
#[derive(Debug, Clone)]
pub struct History {
    pub states: Vec<Ktg>,
    pub records: Vec<MoveRecord>,
}

impl History {
    pub fn final_graph(&self) -> &Ktg {
        self.states.last().expect("history starts with the tetrahedron")
    }
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub stats: MoveStats,
    /// Index of the first failing move and its error.
    pub failure: Option<(usize, KtgError)>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.failure.is_none()
    }
}

/// Replays from the standard tetrahedron, keeping every state.
pub fn replay(seq: &MoveSequence) -> Result<History, (usize, KtgError)> {
    let mut states = vec![Ktg::standard_tetrahedron()];
    let mut records = Vec::with_capacity(seq.moves.len());
    for (i, m) in seq.moves.iter().enumerate() {
        let (next, rec) = states.last().unwrap().apply_recorded(m).map_err(|e| (i, e))?;
        states.push(next);
        records.push(rec);
    }
    Ok(History { states, records })
}

pub fn validate(seq: &MoveSequence) -> ValidationReport {
    let mut g = Ktg::standard_tetrahedron();
    let mut twists = Vec::new();
    let mut failure = None;
    for (i, m) in seq.moves.iter().enumerate() {
        let tw = match *m {
            Move::Unzip { edge, .. } => g.twist(edge),
            _ => None,
        };
        match g.apply_move(m) {
            Ok(next) => {
                g = next;
                twists.extend(tw);
            }
            Err(e) => {
                failure = Some((i, e));
                break;
            }
        }
    }
    let mut s = MoveStats {
        twist_at_unzip: twists,
        ..MoveStats::default()
    };
    for m in &seq.moves {
        match *m {
            Move::Triangle(_) => s.t += 1,
            Move::HalfTwist(_, sign) => s.theta += sign.as_i64(),
            Move::Unzip { rings, .. } => {
                s.u += 1;
                s.r += rings;
                s.per_unzip_rings.push(rings);
            }
        }
    }
    ValidationReport { stats: s, failure }
}

/// Move counts; `twist_at_unzip` covers the unzips reached before any
/// replay failure.
pub fn stats(seq: &MoveSequence) -> MoveStats {
    validate(seq).stats
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingSpec {
    Uniform(u32),
    PerUnzip(Vec<u32>),
}

/// Replaces the ring count of every unzip.
pub fn augment(seq: &MoveSequence, rings: &RingSpec) -> Result<MoveSequence, KtgError> {
    let u = seq
        .moves
        .iter()
        .filter(|m| matches!(m, Move::Unzip { .. }))
        .count();
    let counts = match rings {
        RingSpec::Uniform(n) => vec![*n; u],
        RingSpec::PerUnzip(v) => {
            if v.len() != u {
                return Err(KtgError::DomainError(format!(
                    "{} ring counts for {u} unzips",
                    v.len()
                )));
            }
            v.clone()
        }
    };
    if counts.contains(&0) {
        return Err(KtgError::DomainError("augmentation needs at least one ring per unzip".into()));
    }
    let mut it = counts.into_iter();
    let moves = seq
        .moves
        .iter()
        .map(|m| match *m {
            Move::Unzip { edge, .. } => Move::Unzip {
                edge,
                rings: it.next().unwrap(),
            },
            other => other,
        })
        .collect();
    Ok(MoveSequence {
        moves,
        declared_split_components: seq.declared_split_components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsymbols::Sign;

    fn seq(moves: Vec<Move>) -> MoveSequence {
        MoveSequence::new(moves)
    }

    #[test]
    fn empty_stats() {
        let s = stats(&MoveSequence::default());
        assert_eq!((s.t, s.u, s.theta, s.r), (0, 0, 0, 0));
    }

    #[test]
    fn counts_and_twists() {
        let q = seq(vec![
            Move::Triangle(1),
            Move::HalfTwist(2, Sign::Plus),
            Move::HalfTwist(2, Sign::Plus),
            Move::Unzip { edge: 5, rings: 1 },
        ]);
        let s = stats(&q);
        assert_eq!((s.t, s.u, s.theta, s.r), (1, 1, 2, 1));
        let q = seq(vec![Move::HalfTwist(5, Sign::Plus), Move::Unzip { edge: 5, rings: 0 }]);
        assert_eq!(stats(&q).twist_at_unzip, vec![1]);
    }

    #[test]
    fn augmentation() {
        let q = seq(vec![Move::Unzip { edge: 5, rings: 0 }, Move::Triangle(1)]);
        assert_eq!(stats(&augment(&q, &RingSpec::Uniform(1)).unwrap()).r, 1);
        let q2 = seq(vec![Move::Triangle(1), Move::Unzip { edge: 1, rings: 0 }, Move::Unzip { edge: 4, rings: 0 }]);
        let a = augment(&q2, &RingSpec::PerUnzip(vec![2, 3])).unwrap();
        assert_eq!(stats(&a).r, 5);
        let plain = seq(vec![Move::Triangle(1)]);
        assert_eq!(augment(&plain, &RingSpec::Uniform(4)).unwrap(), plain);
        assert!(matches!(augment(&q, &RingSpec::Uniform(0)), Err(KtgError::DomainError(_))));
    }
}
