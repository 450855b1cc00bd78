use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{KtgError, Move};
use crate::qsymbols::Sign;

pub type VertexId = u32;
pub type EdgeId = u32;
pub type RingId = u32;

/// One end of an edge; side 0 is the start, side 1 the end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub edge: EdgeId,
    pub side: u8,
}

impl Dart {
    pub fn new(edge: EdgeId, side: u8) -> Self {
        Self { edge, side }
    }

    pub fn mate(self) -> Self {
        Self {
            edge: self.edge,
            side: 1 - self.side,
        }
    }
}

/// Position of a dart in a vertex rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub vertex: VertexId,
    pub index: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub ends: [Slot; 2],
    pub twist: i64,
}

/// A ring encircling the two strands produced by one unzip.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    pub strands: [EdgeId; 2],
}

/// Trivalent fat graph with half-twist counts, vertexless circles and
/// augmentation rings. Circles share the edge id space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ktg {
    vertices: BTreeMap<VertexId, [Dart; 3]>,
    edges: BTreeMap<EdgeId, Edge>,
    circles: BTreeMap<EdgeId, i64>,
    rings: BTreeMap<RingId, Ring>,
    next_vertex: VertexId,
    next_edge: EdgeId,
    next_ring: RingId,
}

/// What a move did, in terms of ids; enough to reverse it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveRecord {
    Triangle {
        vertex: VertexId,
        /// Rotation of the removed vertex.
        outer: [Dart; 3],
        new_vertices: [VertexId; 3],
        /// `t1 = w1w2`, `t2 = w2w3`, `t3 = w3w1`.
        new_edges: [EdgeId; 3],
    },
    HalfTwist {
        edge: EdgeId,
        sign: Sign,
    },
    Unzip {
        edge: EdgeId,
        twist: i64,
        /// Rotations at both endpoints, each started at the unzipped edge.
        ends: [(VertexId, [Dart; 3]); 2],
        /// Strands through the joins `a1-b2` and `a2-b1`.
        strands: [EdgeId; 2],
        /// Every consumed edge and the strand or circle it became part of.
        merged: Vec<(EdgeId, EdgeId)>,
        /// Strands that closed up into circles.
        new_circles: Vec<EdgeId>,
        rings: Vec<RingId>,
    },
}

impl Default for Ktg {
    fn default() -> Self {
        Self::standard_tetrahedron()
    }
}

impl Ktg {
    /// Tetrahedron with `e1 = v1v2, e2 = v1v3, e3 = v1v4, e4 = v2v3,
    /// e5 = v3v4, e6 = v2v4`, drawn with `v4` inside the triangle `v1v2v3`
    /// and counter-clockwise rotations.
    pub fn standard_tetrahedron() -> Self {
        let d = Dart::new;
        let rot: [(VertexId, [Dart; 3]); 4] = [
            (1, [d(1, 0), d(3, 0), d(2, 0)]),
            (2, [d(1, 1), d(4, 0), d(6, 0)]),
            (3, [d(2, 1), d(5, 0), d(4, 1)]),
            (4, [d(3, 1), d(6, 1), d(5, 1)]),
        ];
        let mut g = Self {
            vertices: BTreeMap::new(),
            edges: BTreeMap::new(),
            circles: BTreeMap::new(),
            rings: BTreeMap::new(),
            next_vertex: 5,
            next_edge: 7,
            next_ring: 1,
        };
        let placeholder = Slot {
            vertex: 0,
            index: 0,
        };
        for e in 1..=6 {
            g.edges.insert(
                e,
                Edge {
                    ends: [placeholder; 2],
                    twist: 0,
                },
            );
        }
        for (v, darts) in rot {
            g.attach_vertex(v, darts);
        }
        g
    }

    fn attach_vertex(&mut self, v: VertexId, darts: [Dart; 3]) {
        for (i, dart) in darts.iter().enumerate() {
            let edge = self.edges.get_mut(&dart.edge).expect("dart of a live edge");
            edge.ends[dart.side as usize] = Slot {
                vertex: v,
                index: i as u8,
            };
        }
        self.vertices.insert(v, darts);
    }

    pub fn vertices(&self) -> &BTreeMap<VertexId, [Dart; 3]> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeMap<EdgeId, Edge> {
        &self.edges
    }

    pub fn circles(&self) -> &BTreeMap<EdgeId, i64> {
        &self.circles
    }

    pub fn rings(&self) -> &BTreeMap<RingId, Ring> {
        &self.rings
    }

    pub fn rotation(&self, v: VertexId) -> Option<&[Dart; 3]> {
        self.vertices.get(&v)
    }

    pub fn edge(&self, e: EdgeId) -> Option<&Edge> {
        self.edges.get(&e)
    }

    /// Twist of an edge or circle.
    pub fn twist(&self, e: EdgeId) -> Option<i64> {
        self.edges
            .get(&e)
            .map(|x| x.twist)
            .or_else(|| self.circles.get(&e).copied())
    }

    fn slot_of(&self, d: Dart) -> Slot {
        self.edges[&d.edge].ends[d.side as usize]
    }

    /// Connected components, counting circles and rings.
    pub fn components(&self) -> usize {
        let ids: Vec<VertexId> = self.vertices.keys().copied().collect();
        let index: HashMap<VertexId, usize> = ids.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut parent: Vec<usize> = (0..ids.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for e in self.edges.values() {
            let a = find(&mut parent, index[&e.ends[0].vertex]);
            let b = find(&mut parent, index[&e.ends[1].vertex]);
            parent[a] = b;
        }
        let roots: BTreeSet<usize> = (0..ids.len()).map(|i| find(&mut parent, i)).collect();
        roots.len() + self.circles.len() + self.rings.len()
    }

    /// Checks dart bookkeeping and valence.
    pub fn check_consistency(&self) -> Result<(), String> {
        let mut seen = BTreeSet::new();
        for (&v, darts) in &self.vertices {
            for (i, d) in darts.iter().enumerate() {
                let edge = self
                    .edges
                    .get(&d.edge)
                    .ok_or_else(|| format!("v{v} references missing e{}", d.edge))?;
                let slot = edge.ends[d.side as usize];
                if slot.vertex != v || slot.index as usize != i {
                    return Err(format!("dart of e{} at v{v} disagrees with edge record", d.edge));
                }
                if !seen.insert(*d) {
                    return Err(format!("dart of e{} used twice", d.edge));
                }
            }
        }
        if seen.len() != 2 * self.edges.len() {
            return Err("edge end without a vertex slot".into());
        }
        for &e in self.edges.keys() {
            if self.circles.contains_key(&e) {
                return Err(format!("e{e} is both an edge and a circle"));
            }
            if e >= self.next_edge {
                return Err(format!("e{e} beyond the id counter"));
            }
        }
        if self.vertices.keys().any(|&v| v >= self.next_vertex) {
            return Err("vertex beyond the id counter".into());
        }
        Ok(())
    }

    pub fn apply_move(&self, m: &Move) -> Result<Ktg, KtgError> {
        Ok(self.apply_recorded(m)?.0)
    }

    pub fn apply_recorded(&self, m: &Move) -> Result<(Ktg, MoveRecord), KtgError> {
        let mut g = self.clone();
        let rec = match *m {
            Move::Triangle(v) => g.triangle(v)?,
            Move::HalfTwist(e, sign) => g.half_twist(e, sign)?,
            Move::Unzip { edge, rings } => g.unzip(edge, rings)?,
        };
        Ok((g, rec))
    }

    fn triangle(&mut self, v: VertexId) -> Result<MoveRecord, KtgError> {
        let outer = self
            .vertices
            .remove(&v)
            .ok_or_else(|| KtgError::BadTarget(format!("v{v} is not a vertex")))?;
        let w = [self.next_vertex, self.next_vertex + 1, self.next_vertex + 2];
        let t = [self.next_edge, self.next_edge + 1, self.next_edge + 2];
        self.next_vertex += 3;
        self.next_edge += 3;
        let placeholder = Slot {
            vertex: 0,
            index: 0,
        };
        for &e in &t {
            self.edges.insert(
                e,
                Edge {
                    ends: [placeholder; 2],
                    twist: 0,
                },
            );
        }
        let d = Dart::new;
        self.attach_vertex(w[0], [outer[0], d(t[0], 0), d(t[2], 1)]);
        self.attach_vertex(w[1], [outer[1], d(t[1], 0), d(t[0], 1)]);
        self.attach_vertex(w[2], [outer[2], d(t[2], 0), d(t[1], 1)]);
        Ok(MoveRecord::Triangle {
            vertex: v,
            outer,
            new_vertices: w,
            new_edges: t,
        })
    }

    fn half_twist(&mut self, e: EdgeId, sign: Sign) -> Result<MoveRecord, KtgError> {
        let s = sign.as_i64();
        if let Some(edge) = self.edges.get_mut(&e) {
            edge.twist += s;
        } else if let Some(c) = self.circles.get_mut(&e) {
            *c += s;
        } else {
            return Err(KtgError::BadTarget(format!("e{e} is not an edge")));
        }
        Ok(MoveRecord::HalfTwist { edge: e, sign })
    }

    fn unzip(&mut self, e: EdgeId, rings: u32) -> Result<MoveRecord, KtgError> {
        if self.circles.contains_key(&e) {
            return Err(KtgError::UnzipCircle(e));
        }
        let edge = self
            .edges
            .get(&e)
            .cloned()
            .ok_or_else(|| KtgError::BadTarget(format!("e{e} is not an edge")))?;
        let [su, sv] = edge.ends;
        if su.vertex == sv.vertex {
            return Err(KtgError::UnzipLoopEdge(e));
        }
        let rotated = |s: Slot| {
            let r = self.vertices[&s.vertex];
            let i = s.index as usize;
            [r[i], r[(i + 1) % 3], r[(i + 2) % 3]]
        };
        let ru = rotated(su);
        let rv = rotated(sv);
        let (a1, a2, b1, b2) = (ru[1], ru[2], rv[1], rv[2]);
        let join: HashMap<Dart, Dart> = [(a1, b2), (b2, a1), (a2, b1), (b1, a2)].into_iter().collect();
        let old_twists: HashMap<EdgeId, i64> = [a1, a2, b1, b2]
            .iter()
            .map(|d| (d.edge, self.edges[&d.edge].twist))
            .collect();

        self.vertices.remove(&su.vertex);
        self.vertices.remove(&sv.vertex);
        self.edges.remove(&e);

        // Walks from a dart along its edge, across joins, until a surviving
        // dart or the start is reached.
        let walk = |start: Dart| -> (Vec<EdgeId>, Vec<Dart>, Option<Dart>) {
            let mut edges = Vec::new();
            let mut crossed = Vec::new();
            let mut cur = start;
            loop {
                edges.push(cur.edge);
                let far = cur.mate();
                match join.get(&far) {
                    Some(&next) => {
                        crossed.push(far);
                        crossed.push(next);
                        if next == start {
                            return (edges, crossed, None);
                        }
                        cur = next;
                    }
                    None => return (edges, crossed, Some(far)),
                }
            }
        };

        let mut merged = Vec::new();
        let mut consumed: BTreeSet<EdgeId> = BTreeSet::new();
        let mut strand_of_join: HashMap<Dart, EdgeId> = HashMap::new();
        let mut new_circles = Vec::new();

        // Open strands start at a surviving dart whose mate was at u or v.
        let mut starts: Vec<Dart> = [a1, a2, b1, b2]
            .iter()
            .map(|d| d.mate())
            .filter(|m| !join.contains_key(m))
            .collect();
        starts.sort();
        let mut finished: BTreeSet<Dart> = BTreeSet::new();
        for start in starts {
            if finished.contains(&start) {
                continue;
            }
            let (edges, crossed, end) = walk(start);
            let end = end.expect("open walk ends at a surviving dart");
            finished.insert(end);
            let id = self.next_edge;
            self.next_edge += 1;
            let twist: i64 = edges.iter().map(|x| old_twists[x]).sum();
            let from = self.slot_of(start);
            let to = self.slot_of(end);
            for &x in &edges {
                if consumed.insert(x) {
                    merged.push((x, id));
                }
                self.edges.remove(&x);
            }
            for d in crossed {
                strand_of_join.insert(d, id);
            }
            self.edges.insert(
                id,
                Edge {
                    ends: [from, to],
                    twist,
                },
            );
            self.vertices.get_mut(&from.vertex).unwrap()[from.index as usize] = Dart::new(id, 0);
            self.vertices.get_mut(&to.vertex).unwrap()[to.index as usize] = Dart::new(id, 1);
        }
        // Remaining joins lie on closed cycles.
        for start in [a1, a2, b1, b2] {
            if consumed.contains(&start.edge) {
                continue;
            }
            let (edges, crossed, end) = walk(start);
            debug_assert!(end.is_none());
            let id = self.next_edge;
            self.next_edge += 1;
            let twist: i64 = edges.iter().map(|x| old_twists[x]).sum();
            for &x in &edges {
                if consumed.insert(x) {
                    merged.push((x, id));
                }
                self.edges.remove(&x);
            }
            for d in crossed {
                strand_of_join.insert(d, id);
            }
            self.circles.insert(id, twist);
            new_circles.push(id);
        }
        let strands = [strand_of_join[&a1], strand_of_join[&a2]];
        let mut ring_ids = Vec::new();
        for _ in 0..rings {
            let r = self.next_ring;
            self.next_ring += 1;
            self.rings.insert(r, Ring { strands });
            ring_ids.push(r);
        }
        Ok(MoveRecord::Unzip {
            edge: e,
            twist: edge.twist,
            ends: [(su.vertex, ru), (sv.vertex, rv)],
            strands,
            merged,
            new_circles,
            rings: ring_ids,
        })
    }

    /// Canonical code of the underlying fat graph (twists, circles and
    /// rings ignored), up to orientation-preserving relabelling. Connected
    /// graphs only.
    fn canonical_code(&self, mirror: bool) -> Vec<u32> {
        let darts: Vec<(VertexId, usize)> = self
            .vertices
            .keys()
            .flat_map(|&v| (0..3).map(move |i| (v, i)))
            .collect();
        let next_in_rotation = |v: VertexId, i: usize| {
            if mirror {
                (v, (i + 2) % 3)
            } else {
                (v, (i + 1) % 3)
            }
        };
        let across = |v: VertexId, i: usize| {
            let d = self.vertices[&v][i];
            let s = self.slot_of(d.mate());
            (s.vertex, s.index as usize)
        };
        let mut best: Option<Vec<u32>> = None;
        for &(v0, i0) in &darts {
            let mut label: HashMap<(VertexId, usize), u32> = HashMap::new();
            let mut queue = vec![(v0, i0)];
            let mut code = Vec::new();
            let mut head = 0;
            label.insert((v0, i0), 0);
            while head < queue.len() {
                let (v, i) = queue[head];
                head += 1;
                for target in [next_in_rotation(v, i), across(v, i)] {
                    let next = label.len() as u32;
                    let l = *label.entry(target).or_insert_with(|| {
                        queue.push(target);
                        next
                    });
                    code.push(l);
                }
            }
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
        best.unwrap_or_default()
    }

    /// Isomorphism of the underlying connected fat graphs, allowing a
    /// global reversal of all rotations.
    pub fn fat_graph_isomorphic(&self, other: &Ktg) -> bool {
        if self.vertices.len() != other.vertices.len() || self.edges.len() != other.edges.len() {
            return false;
        }
        let a = self.canonical_code(false);
        a == other.canonical_code(false) || a == other.canonical_code(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tetrahedron_shape() {
        let g = Ktg::standard_tetrahedron();
        assert_eq!(g.vertices().len(), 4);
        assert_eq!(g.edges().len(), 6);
        assert!(g.circles().is_empty());
        assert_eq!(g.vertices().len() as i64 - g.edges().len() as i64, -2);
        g.check_consistency().unwrap();
        let incidence: Vec<(u32, u32)> = g
            .edges()
            .values()
            .map(|e| (e.ends[0].vertex, e.ends[1].vertex))
            .collect();
        assert_eq!(incidence, vec![(1, 2), (1, 3), (1, 4), (2, 3), (3, 4), (2, 4)]);
    }

    #[test]
    fn triangle_adds_three_vertices() {
        let g = Ktg::standard_tetrahedron().apply_move(&Move::Triangle(1)).unwrap();
        assert_eq!(g.vertices().len(), 6);
        assert_eq!(g.edges().len(), 9);
        g.check_consistency().unwrap();
        assert!(matches!(
            g.apply_move(&Move::Triangle(1)),
            Err(KtgError::BadTarget(_))
        ));
    }

    #[test]
    fn twists_cancel() {
        let g = Ktg::standard_tetrahedron();
        let h = g
            .apply_move(&Move::HalfTwist(1, Sign::Plus))
            .unwrap()
            .apply_move(&Move::HalfTwist(1, Sign::Minus))
            .unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn unzip_tetrahedron_edge() {
        let g = Ktg::standard_tetrahedron();
        let (h, rec) = g.apply_recorded(&Move::Unzip { edge: 5, rings: 1 }).unwrap();
        h.check_consistency().unwrap();
        assert_eq!(h.vertices().len(), 2);
        assert_eq!(h.edges().len(), 3);
        assert_eq!(h.rings().len(), 1);
        match rec {
            MoveRecord::Unzip { strands, merged, .. } => {
                assert_ne!(strands[0], strands[1]);
                assert_eq!(merged.len(), 4);
            }
            _ => unreachable!(),
        }
    }
}
