use std::collections::HashMap;
use std::fmt;

use super::{EngineError, TwistMode};
use crate::ktgmodel::{replay, EdgeId, MoveRecord, MoveSequence};
use crate::qsymbols::{admissible, QMonomial, QSum, Sign, TetLabels};

/// An edge color: the ambient color `N` or a summation variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    N,
    Var(usize),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::N => write!(f, "N"),
            Label::Var(i) => write!(f, "c{i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Factor {
    /// Six-j symbol with colors of `e1..e6`.
    Tet([Label; 6]),
    Theta([Label; 3]),
    InvTheta([Label; 3]),
    Unknot(Label),
    HalfTwist(Label, Sign),
    /// One ring of color `N` around an edge of the given color.
    Ring(Label),
    /// `<c>/<a b c>` with `c` last.
    Fusion([Label; 3]),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprNode {
    Product(Vec<ExprNode>),
    /// `Σ_{var}` over `|a-b|+1, |a-b|+3, ..., a+b-1` for the colors `(a, b)`
    /// being fused.
    Sum {
        var: usize,
        fused: (Label, Label),
        body: Box<ExprNode>,
    },
    Atom(Factor),
}

/// Multisum for the unnormalized invariant of the graph built by a move
/// sequence, obtained by reversing its moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JonesExpr {
    pub root: ExprNode,
    pub num_vars: usize,
    pub split_components: u32,
}

/// A factor with every label replaced by a color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InstFactor {
    Tet([u32; 6]),
    Theta([u32; 3]),
    InvTheta([u32; 3]),
    Unknot(u32),
    HalfTwist(u32, Sign),
    Ring(u32),
    Fusion([u32; 3]),
}

/// Value of a factor: a monomial, a tetrahedron sum, or zero.
pub enum FactorValue {
    Zero,
    Mono(QMonomial),
    Tet([u32; 6]),
}

impl InstFactor {
    pub fn value(&self, n: u32) -> FactorValue {
        let mono = |r: Result<QMonomial, _>| r.map_or(FactorValue::Zero, FactorValue::Mono);
        match *self {
            InstFactor::Tet(j) => match TetLabels::new(j) {
                Ok(_) => FactorValue::Tet(j),
                Err(_) => FactorValue::Zero,
            },
            InstFactor::Theta([a, b, c]) => mono(QMonomial::theta(a, b, c)),
            InstFactor::InvTheta([a, b, c]) => {
                if admissible(a, b, c) {
                    mono(QMonomial::theta(a, b, c).map(|t| t.inv()))
                } else {
                    // Only reached together with an inadmissible tetrahedron.
                    FactorValue::Zero
                }
            }
            InstFactor::Unknot(a) => FactorValue::Mono(QMonomial::unknot(a)),
            InstFactor::HalfTwist(a, s) => FactorValue::Mono(QMonomial::halftwist(a, s)),
            InstFactor::Ring(a) => FactorValue::Mono(QMonomial::ring(a, n)),
            InstFactor::Fusion([a, b, c]) => mono(QMonomial::fusion(a, b, c)),
        }
    }
}

/// One term of the expanded multisum.
#[derive(Debug, Clone, PartialEq)]
pub struct Summand {
    pub assignment: Vec<u32>,
    pub n: u32,
    /// Every factor other than tetrahedra and rings.
    pub mono: QMonomial,
    pub tets: Vec<[u32; 6]>,
    /// `(c, m)` for `m` rings around an edge of color `c`; kept apart so that
    /// large ring counts do not overflow intermediate jets.
    pub rings: Vec<(u32, u32)>,
}

impl Summand {
    pub fn max_index(&self) -> u32 {
        let t = self
            .tets
            .iter()
            .map(|j| QSum::tet(&TetLabels::new(*j).expect("admissible")).max_index())
            .max()
            .unwrap_or(1);
        let r = self.rings.iter().map(|&(c, _)| c * self.n).max().unwrap_or(1);
        t.max(self.mono.max_index()).max(r)
    }
}

fn fusion_range(a: u32, b: u32) -> impl Iterator<Item = u32> {
    (a.abs_diff(b) + 1..a + b).step_by(2)
}

impl JonesExpr {
    fn inst(label: Label, n: u32, env: &[u32]) -> u32 {
        match label {
            Label::N => n,
            Label::Var(i) => env[i],
        }
    }

    fn inst_factor(f: &Factor, n: u32, env: &[u32]) -> InstFactor {
        let l = |x: Label| Self::inst(x, n, env);
        match f {
            Factor::Tet(j) => InstFactor::Tet(j.map(l)),
            Factor::Theta(j) => InstFactor::Theta(j.map(l)),
            Factor::InvTheta(j) => InstFactor::InvTheta(j.map(l)),
            Factor::Unknot(a) => InstFactor::Unknot(l(*a)),
            Factor::HalfTwist(a, s) => InstFactor::HalfTwist(l(*a), *s),
            Factor::Ring(a) => InstFactor::Ring(l(*a)),
            Factor::Fusion(j) => InstFactor::Fusion(j.map(l)),
        }
    }

    /// Number of summands at color `n`, stopping once `limit` is passed.
    pub fn count_summands(&self, n: u32, limit: usize) -> usize {
        let mut count = 0usize;
        let mut env = vec![0; self.num_vars];
        let mut pending = vec![&self.root];
        count_walk(&mut pending, n, &mut env, &mut count, limit);
        count
    }

    /// Every summand at color `n` as instantiated factors, innermost
    /// variables varying fastest.
    pub fn instantiate(&self, n: u32) -> Vec<(Vec<u32>, Vec<InstFactor>)> {
        let mut out = Vec::new();
        let mut env = vec![0; self.num_vars];
        let mut pending = vec![&self.root];
        let mut factors = Vec::new();
        walk(&mut pending, n, &mut env, &mut factors, &mut out);
        out
    }

    /// Expanded summands with their nonzero values.
    pub fn summands(&self, n: u32) -> Vec<Summand> {
        let mut out = Vec::new();
        'outer: for (assignment, factors) in self.instantiate(n) {
            let mut mono = QMonomial::one();
            let mut tets = Vec::new();
            let mut rings: Vec<(u32, u32)> = Vec::new();
            for f in &factors {
                if let InstFactor::Ring(c) = f {
                    match rings.iter_mut().find(|(x, _)| x == c) {
                        Some((_, m)) => *m += 1,
                        None => rings.push((*c, 1)),
                    }
                    continue;
                }
                match f.value(n) {
                    FactorValue::Zero => continue 'outer,
                    FactorValue::Mono(m) => mono = mono.mul(&m),
                    FactorValue::Tet(j) => tets.push(j),
                }
            }
            out.push(Summand {
                assignment,
                n,
                mono,
                tets,
                rings,
            });
        }
        out
    }

    /// Every factor in the tree, in depth-first order.
    pub fn factors(&self) -> Vec<Factor> {
        fn go(node: &ExprNode, out: &mut Vec<Factor>) {
            match node {
                ExprNode::Atom(f) => out.push(*f),
                ExprNode::Product(c) => c.iter().for_each(|x| go(x, out)),
                ExprNode::Sum { body, .. } => go(body, out),
            }
        }
        let mut out = Vec::new();
        go(&self.root, &mut out);
        out
    }
}

fn count_walk(pending: &mut Vec<&ExprNode>, n: u32, env: &mut Vec<u32>, count: &mut usize, limit: usize) {
    if *count > limit {
        return;
    }
    let Some(node) = pending.pop() else {
        *count += 1;
        return;
    };
    match node {
        ExprNode::Atom(_) => count_walk(pending, n, env, count, limit),
        ExprNode::Product(children) => {
            let base = pending.len();
            pending.extend(children.iter().rev());
            count_walk(pending, n, env, count, limit);
            pending.truncate(base);
        }
        ExprNode::Sum { var, fused, body } => {
            let a = JonesExpr::inst(fused.0, n, env);
            let b = JonesExpr::inst(fused.1, n, env);
            for c in fusion_range(a, b) {
                env[*var] = c;
                pending.push(body);
                count_walk(pending, n, env, count, limit);
                pending.pop();
            }
        }
    }
    pending.push(node);
}

fn walk(
    pending: &mut Vec<&ExprNode>,
    n: u32,
    env: &mut Vec<u32>,
    factors: &mut Vec<InstFactor>,
    out: &mut Vec<(Vec<u32>, Vec<InstFactor>)>,
) {
    let Some(node) = pending.pop() else {
        out.push((env.clone(), factors.clone()));
        return;
    };
    match node {
        ExprNode::Atom(f) => {
            factors.push(JonesExpr::inst_factor(f, n, env));
            walk(pending, n, env, factors, out);
            factors.pop();
        }
        ExprNode::Product(children) => {
            let base = pending.len();
            pending.extend(children.iter().rev());
            walk(pending, n, env, factors, out);
            pending.truncate(base);
        }
        ExprNode::Sum { var, fused, body } => {
            let a = JonesExpr::inst(fused.0, n, env);
            let b = JonesExpr::inst(fused.1, n, env);
            for c in fusion_range(a, b) {
                env[*var] = c;
                pending.push(body);
                walk(pending, n, env, factors, out);
                pending.pop();
            }
        }
    }
    pending.push(node);
}

enum Frame {
    Factors(Vec<Factor>),
    Sum {
        var: usize,
        fused: (Label, Label),
        factors: Vec<Factor>,
    },
}

/// Reverses the moves of `seq` on the all-`N` coloring of its graph.
pub fn build_expression(seq: &MoveSequence, mode: TwistMode) -> Result<JonesExpr, EngineError> {
    let history = replay(seq).map_err(|(i, e)| EngineError::InvalidSequence(i, e))?;
    let last = history.final_graph();
    let mut labels: HashMap<EdgeId, Label> = last
        .edges()
        .keys()
        .chain(last.circles().keys())
        .map(|&e| (e, Label::N))
        .collect();
    let lookup = |labels: &HashMap<EdgeId, Label>, e: EdgeId| {
        labels
            .get(&e)
            .copied()
            .ok_or_else(|| EngineError::NotReducible(format!("no label for e{e}")))
    };
    let mut frames = Vec::with_capacity(history.records.len());
    let mut num_vars = 0;
    for (i, rec) in history.records.iter().enumerate().rev() {
        match rec {
            MoveRecord::HalfTwist { edge, sign } => {
                frames.push(Frame::Factors(vec![Factor::HalfTwist(lookup(&labels, *edge)?, *sign)]));
            }
            MoveRecord::Triangle {
                outer, new_edges, ..
            } => {
                let x = [
                    lookup(&labels, outer[0].edge)?,
                    lookup(&labels, outer[1].edge)?,
                    lookup(&labels, outer[2].edge)?,
                ];
                let t = [
                    lookup(&labels, new_edges[0])?,
                    lookup(&labels, new_edges[1])?,
                    lookup(&labels, new_edges[2])?,
                ];
                for e in new_edges {
                    labels.remove(e);
                }
                frames.push(Frame::Factors(vec![
                    Factor::Tet([x[0], x[1], x[2], t[0], t[1], t[2]]),
                    Factor::InvTheta(x),
                ]));
            }
            MoveRecord::Unzip {
                edge,
                twist,
                strands,
                merged,
                new_circles,
                rings,
                ..
            } => {
                if *twist != 0 && mode == TwistMode::Strict {
                    return Err(EngineError::TwistedUnzip {
                        move_index: i,
                        edge: *edge,
                        twist: *twist,
                    });
                }
                let a = lookup(&labels, strands[0])?;
                let b = lookup(&labels, strands[1])?;
                for (old, strand) in merged {
                    let l = lookup(&labels, *strand)?;
                    labels.insert(*old, l);
                }
                for s in strands.iter().chain(new_circles) {
                    if !merged.iter().any(|(old, _)| old == s) {
                        labels.remove(s);
                    }
                }
                let c = Label::Var(num_vars);
                num_vars += 1;
                labels.insert(*edge, c);
                let mut factors = vec![Factor::Fusion([a, b, c])];
                factors.extend(std::iter::repeat_n(Factor::Ring(c), rings.len()));
                frames.push(Frame::Sum {
                    var: num_vars - 1,
                    fused: (a, b),
                    factors,
                });
            }
        }
    }
    let tet = history.states[0].edges().keys().map(|&e| lookup(&labels, e)).collect::<Result<Vec<_>, _>>()?;
    let mut node = ExprNode::Atom(Factor::Tet([tet[0], tet[1], tet[2], tet[3], tet[4], tet[5]]));
    for frame in frames.into_iter().rev() {
        node = match frame {
            Frame::Factors(fs) => {
                let mut children: Vec<ExprNode> = fs.into_iter().map(ExprNode::Atom).collect();
                children.push(node);
                ExprNode::Product(children)
            }
            Frame::Sum { var, fused, factors } => {
                let mut children: Vec<ExprNode> = factors.into_iter().map(ExprNode::Atom).collect();
                children.push(node);
                ExprNode::Sum {
                    var,
                    fused,
                    body: Box::new(ExprNode::Product(children)),
                }
            }
        };
    }
    Ok(JonesExpr {
        root: node,
        num_vars,
        split_components: seq.declared_split_components,
    })
}
