use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::OctGeomError;
use crate::ktgmodel::{replay, Dart, Ktg, MoveRecord, MoveSequence, VertexId};

/// Octahedron vertices, i.e. red truncation squares.
pub const CORNER_NAMES: [&str; 6] = ["X+", "X-", "Y+", "Y-", "Z+", "Z-"];
const XP: u8 = 0;
const XM: u8 = 1;
const YP: u8 = 2;
const YM: u8 = 3;
const ZP: u8 = 4;
const ZM: u8 = 5;

/// Face with sign vector `(sx, sy, sz)`, encoded as bits `sx<0, sy<0, sz<0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FaceRef {
    pub oct: usize,
    pub face: u8,
}

fn face_of(signs: [i8; 3]) -> u8 {
    signs.iter().enumerate().map(|(i, &s)| if s < 0 { 1 << i } else { 0 }).sum()
}

/// Corners of a face in axis order `X, Y, Z`.
pub fn face_corners(face: u8) -> [u8; 3] {
    [face & 1, 2 + ((face >> 1) & 1), 4 + ((face >> 2) & 1)]
}

/// Blue iff `sx·sy·sz = +1`.
pub fn is_blue(face: u8) -> bool {
    face.count_ones().is_multiple_of(2)
}

fn face_name(face: u8) -> String {
    face_corners(face).iter().map(|&c| CORNER_NAMES[c as usize]).collect()
}

fn edge_key(a: u8, b: u8) -> (u8, u8) {
    (a.min(b), a.max(b))
}

/// A truncated octahedron; `upper` ones lie above the projection plane and
/// the others are their mirror images with the same vertex labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruncOct {
    pub id: usize,
    pub upper: bool,
}

/// Identification of face `a` with face `b`; `map[c]` is the corner of `b`
/// matched to corner `c` of `a` (only the corners of `a` are meaningful).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pairing {
    pub a: FaceRef,
    pub b: FaceRef,
    pub map: [u8; 6],
}

impl Pairing {
    fn new(a: FaceRef, b: FaceRef, corners: &[(u8, u8)]) -> Self {
        let mut map = [u8::MAX; 6];
        for &(x, y) in corners {
            map[x as usize] = y;
        }
        Self { a, b, map }
    }

    fn identity(a: FaceRef, b: FaceRef) -> Self {
        let c = face_corners(a.face);
        Self::new(a, b, &c.map(|x| (x, x)))
    }
}

/// The two blue faces bounding the neighborhood of a graph vertex, with the
/// octahedron corner assigned to each slot of its rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VertexSphere {
    pub upper: FaceRef,
    pub lower: FaceRef,
    pub corners: [u8; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OctGluing {
    pub octs: Vec<TruncOct>,
    pub pairings: Vec<Pairing>,
    pub vertex_spheres: BTreeMap<VertexId, VertexSphere>,
    pub triangle_moves: u32,
    pub unzips: u32,
    /// Vertexless circles of the final graph.
    pub circles: usize,
    pub edges: usize,
}

impl OctGluing {
    fn add_pair(&mut self, upper_first: bool) -> (usize, usize) {
        let a = self.octs.len();
        self.octs.push(TruncOct { id: a, upper: upper_first });
        self.octs.push(TruncOct {
            id: a + 1,
            upper: !upper_first,
        });
        for face in (0..8).filter(|&f| !is_blue(f)) {
            self.pairings.push(Pairing::identity(FaceRef { oct: a, face }, FaceRef { oct: a + 1, face }));
        }
        (a, a + 1)
    }

    fn glue(&mut self, p: Pairing) -> Result<(), OctGeomError> {
        for f in [p.a, p.b] {
            if self.pairings.iter().any(|q| q.a == f || q.b == f) {
                return Err(OctGeomError::GluingConflict(format!("{}:{}", f.oct, face_name(f.face))));
            }
        }
        self.pairings.push(p);
        Ok(())
    }

    /// Drops the first pairing of a white face; a negative control.
    pub fn without_first_white_pairing(&self) -> Self {
        let mut g = self.clone();
        if let Some(i) = g.pairings.iter().position(|p| !is_blue(p.a.face)) {
            g.pairings.remove(i);
        }
        g
    }
}

fn slot_of(rot: &[Dart; 3], d: Dart) -> usize {
    rot.iter().position(|&x| x == d).expect("dart at its vertex")
}

/// Base vertex spheres: `v1..v4` on the blue faces of the two base octahedra.
fn base_spheres(up: usize, down: usize) -> BTreeMap<VertexId, VertexSphere> {
    let table: [(VertexId, [i8; 3], [u8; 3]); 4] = [
        (1, [1, 1, 1], [XP, ZP, YP]),
        (2, [1, -1, -1], [XP, ZM, YM]),
        (3, [-1, 1, -1], [YP, XM, ZM]),
        (4, [-1, -1, 1], [ZP, YM, XM]),
    ];
    table
        .iter()
        .map(|&(v, s, corners)| {
            let face = face_of(s);
            (
                v,
                VertexSphere {
                    upper: FaceRef { oct: up, face },
                    lower: FaceRef { oct: down, face },
                    corners,
                },
            )
        })
        .collect()
}

/// Corner by rotation slot for the base tetrahedron: each edge `e_k` is one
/// octahedron vertex (`e1 X+, e2 Y+, e3 Z+, e4 Z-, e5 X-, e6 Y-`), and the
/// slots follow the vertex rotations of the standard tetrahedron.
fn check_base(g: &Ktg, spheres: &BTreeMap<VertexId, VertexSphere>) -> bool {
    let edge_corner = [XP, YP, ZP, ZM, XM, YM];
    spheres.iter().all(|(v, s)| {
        let rot = g.rotation(*v).expect("base vertex");
        (0..3).all(|i| edge_corner[rot[i].edge as usize - 1] == s.corners[i])
    })
}

/// Builds the gluing of `2t+2` truncated octahedra for the exterior of the
/// singly augmented graph of `seq`.
pub fn build_gluing(seq: &MoveSequence) -> Result<OctGluing, OctGeomError> {
    let history = replay(seq).map_err(|(i, e)| OctGeomError::InvalidSequence(i, e))?;
    let mut g = OctGluing {
        octs: Vec::new(),
        pairings: Vec::new(),
        vertex_spheres: BTreeMap::new(),
        triangle_moves: 0,
        unzips: 0,
        circles: history.final_graph().circles().len(),
        edges: history.final_graph().edges().len(),
    };
    let (up, down) = g.add_pair(true);
    g.vertex_spheres = base_spheres(up, down);
    debug_assert!(check_base(&history.states[0], &g.vertex_spheres));
    for (k, rec) in history.records.iter().enumerate() {
        let before = &history.states[k];
        match rec {
            MoveRecord::HalfTwist { .. } => {}
            MoveRecord::Triangle {
                vertex, new_vertices, ..
            } => {
                g.triangle_moves += 1;
                let s = g.vertex_spheres.remove(vertex).expect("sphere of a live vertex");
                let (c, d) = g.add_pair(true);
                let top = face_of([1, 1, 1]);
                let corners: Vec<(u8, u8)> = (0..3).map(|i| (s.corners[i], [XP, YP, ZP][i])).collect();
                g.glue(Pairing::new(s.upper, FaceRef { oct: c, face: top }, &corners))?;
                g.glue(Pairing::new(s.lower, FaceRef { oct: d, face: top }, &corners))?;
                let new: [([i8; 3], [u8; 3]); 3] = [
                    ([1, -1, -1], [XP, ZM, YM]),
                    ([-1, 1, -1], [YP, XM, ZM]),
                    ([-1, -1, 1], [ZP, YM, XM]),
                ];
                for (w, (signs, corners)) in new_vertices.iter().zip(new) {
                    let face = face_of(signs);
                    g.vertex_spheres.insert(
                        *w,
                        VertexSphere {
                            upper: FaceRef { oct: c, face },
                            lower: FaceRef { oct: d, face },
                            corners,
                        },
                    );
                }
            }
            MoveRecord::Unzip { edge, twist, ends, .. } => {
                g.unzips += 1;
                let (u, v) = (ends[0].0, ends[1].0);
                let su = g.vertex_spheres.remove(&u).expect("sphere of a live vertex");
                let sv = g.vertex_spheres.remove(&v).expect("sphere of a live vertex");
                let e = before.edge(*edge).expect("unzipped edge");
                let dart_at = |x: VertexId| {
                    let side = if e.ends[0].vertex == x { 0 } else { 1 };
                    Dart::new(*edge, side)
                };
                let iu = slot_of(before.rotation(u).unwrap(), dart_at(u));
                let iv = slot_of(before.rotation(v).unwrap(), dart_at(v));
                // e -> e, a1 -> b2, a2 -> b1, matching the joins of the unzip.
                let corners: Vec<(u8, u8)> = [(0, 0), (1, 2), (2, 1)]
                    .iter()
                    .map(|&(p, q)| (su.corners[(iu + p) % 3], sv.corners[(iv + q) % 3]))
                    .collect();
                let (to_upper, to_lower) = if twist.rem_euclid(2) == 0 {
                    (sv.upper, sv.lower)
                } else {
                    (sv.lower, sv.upper)
                };
                g.glue(Pairing::new(su.upper, to_upper, &corners))?;
                g.glue(Pairing::new(su.lower, to_lower, &corners))?;
            }
        }
    }
    Ok(g)
}

/// Outcome of the combinatorial checks; `violations` is empty on success.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GluingReport {
    pub octahedra: usize,
    pub expected_octahedra: usize,
    /// Number of edge classes by size.
    pub edge_class_sizes: BTreeMap<usize, usize>,
    pub annuli: usize,
    pub tori: usize,
    pub vertex_spheres: usize,
    pub violations: Vec<String>,
}

impl GluingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// The 12 octahedral edges, as corner pairs on different axes.
fn oct_edges() -> Vec<(u8, u8)> {
    let mut out = Vec::new();
    for a in 0..6u8 {
        for b in a + 1..6 {
            if a / 2 != b / 2 {
                out.push((a, b));
            }
        }
    }
    out
}

fn face_edges(face: u8) -> [(u8, u8); 3] {
    let c = face_corners(face);
    [edge_key(c[0], c[1]), edge_key(c[1], c[2]), edge_key(c[0], c[2])]
}

/// Checks the properties a valid decomposition must have: the octahedron
/// count, white faces paired involutively, edge classes of size 2 or 4 with
/// size 2 exactly on the boundary, red faces forming annuli and tori, and the
/// unpaired blue faces forming one 3-holed sphere per graph vertex.
/// Vertices, edges, face count and boundary edges of one red surface.
type RedComponent = (BTreeSet<usize>, BTreeSet<usize>, usize, Vec<(usize, usize)>);

pub fn verify_gluing(g: &OctGluing) -> GluingReport {
    let mut violations = Vec::new();
    let n = g.octs.len();
    let expected = 2 * g.triangle_moves as usize + 2;
    if n != expected {
        violations.push(format!("{n} octahedra, expected {expected}"));
    }

    let mut partner: HashMap<FaceRef, (FaceRef, [u8; 6])> = HashMap::new();
    for p in &g.pairings {
        for (x, y, map) in [(p.a, p.b, p.map), (p.b, p.a, invert(&p.map))] {
            if partner.insert(x, (y, map)).is_some() {
                violations.push(format!("face {}:{} paired twice", x.oct, face_name(x.face)));
            }
        }
        if p.a == p.b {
            violations.push(format!("face {}:{} paired with itself", p.a.oct, face_name(p.a.face)));
        }
        if is_blue(p.a.face) != is_blue(p.b.face) {
            violations.push("blue face paired with a white face".into());
        }
        let (ca, cb) = (face_corners(p.a.face), face_corners(p.b.face));
        let image: BTreeSet<u8> = ca.iter().map(|&c| p.map[c as usize]).collect();
        if image != cb.iter().copied().collect() {
            violations.push(format!("pairing {}:{} does not match corners", p.a.oct, face_name(p.a.face)));
        }
    }
    for oct in 0..n {
        for face in (0..8).filter(|&f| !is_blue(f)) {
            if !partner.contains_key(&FaceRef { oct, face }) {
                violations.push(format!("unpaired white face {oct}:{}", face_name(face)));
            }
        }
    }

    // Edge classes.
    let edges = oct_edges();
    let edge_index: HashMap<(u8, u8), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let eid = |oct: usize, e: (u8, u8)| oct * 12 + edge_index[&e];
    let mut uf = UnionFind::new(n * 12);
    for p in &g.pairings {
        for (x, y) in face_edges(p.a.face) {
            let (mx, my) = (p.map[x as usize], p.map[y as usize]);
            if mx < 6 && my < 6 && edge_index.contains_key(&edge_key(mx, my)) {
                uf.union(eid(p.a.oct, (x, y)), eid(p.b.oct, edge_key(mx, my)));
            }
        }
    }
    let unpaired_blue: Vec<FaceRef> = (0..n)
        .flat_map(|oct| (0..8).filter(|&f| is_blue(f)).map(move |face| FaceRef { oct, face }))
        .filter(|f| !partner.contains_key(f))
        .collect();
    let mut on_boundary = vec![false; n * 12];
    for f in &unpaired_blue {
        for e in face_edges(f.face) {
            on_boundary[eid(f.oct, e)] = true;
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..n * 12 {
        classes.entry(uf.find(x)).or_default().push(x);
    }
    let mut edge_class_sizes = BTreeMap::new();
    for members in classes.values() {
        *edge_class_sizes.entry(members.len()).or_insert(0) += 1;
        let boundary = members.iter().any(|&m| on_boundary[m]);
        match (members.len(), boundary) {
            (2, true) | (4, false) => {}
            (k, b) => violations.push(format!(
                "edge class of size {k} {} the boundary",
                if b { "on" } else { "off" }
            )),
        }
    }

    // Red squares: cells are (oct, corner); sides are (oct, corner, face);
    // square vertices are (oct, corner, neighbor corner).
    let side_id = |oct: usize, c: u8, face: u8| (oct * 6 + c as usize) * 8 + face as usize;
    let pt_id = |oct: usize, c: u8, d: u8| (oct * 6 + c as usize) * 6 + d as usize;
    let mut sides = UnionFind::new(n * 48);
    let mut pts = UnionFind::new(n * 36);
    let mut cells = UnionFind::new(n * 6);
    let mut glued_side = vec![false; n * 48];
    for p in &g.pairings {
        let ca = face_corners(p.a.face);
        for &c in &ca {
            let mc = p.map[c as usize];
            if mc >= 6 {
                continue;
            }
            sides.union(side_id(p.a.oct, c, p.a.face), side_id(p.b.oct, mc, p.b.face));
            glued_side[side_id(p.a.oct, c, p.a.face)] = true;
            glued_side[side_id(p.b.oct, mc, p.b.face)] = true;
            cells.union(p.a.oct * 6 + c as usize, p.b.oct * 6 + mc as usize);
            for &d in ca.iter().filter(|&&d| d != c) {
                let md = p.map[d as usize];
                if md < 6 {
                    pts.union(pt_id(p.a.oct, c, d), pt_id(p.b.oct, mc, md));
                }
            }
        }
    }
    let (mut annuli, mut tori) = (0, 0);
    let mut comp: BTreeMap<usize, RedComponent> = BTreeMap::new();
    for oct in 0..n {
        for c in 0..6u8 {
            let entry = comp.entry(cells.find(oct * 6 + c as usize)).or_default();
            entry.2 += 1;
            for face in (0..8u8).filter(|f| face_corners(*f).contains(&c)) {
                let s = side_id(oct, c, face);
                entry.1.insert(sides.find(s));
                let others: Vec<u8> = face_corners(face).into_iter().filter(|&d| d != c).collect();
                let ends = (pts.find(pt_id(oct, c, others[0])), pts.find(pt_id(oct, c, others[1])));
                entry.0.insert(ends.0);
                entry.0.insert(ends.1);
                if !glued_side[s] {
                    entry.3.push(ends);
                }
            }
        }
    }
    for (v, e, f, free) in comp.values() {
        let chi = v.len() as i64 - e.len() as i64 + *f as i64;
        let circles = count_cycles(free);
        if chi != 0 {
            violations.push(format!("red component with Euler characteristic {chi}"));
        }
        match circles {
            0 => tori += 1,
            2 => annuli += 1,
            k => violations.push(format!("red component with {k} boundary circles")),
        }
    }
    let expected_tori = g.unzips as usize + g.circles;
    if tori != expected_tori {
        violations.push(format!("{tori} red tori, expected {expected_tori}"));
    }
    if annuli != g.edges {
        violations.push(format!("{annuli} red annuli, expected {}", g.edges));
    }

    // Vertex spheres: two unpaired blue faces sharing all three edge classes.
    let mut by_class: HashMap<usize, Vec<FaceRef>> = HashMap::new();
    for f in &unpaired_blue {
        for e in face_edges(f.face) {
            by_class.entry(uf.find(eid(f.oct, e))).or_default().push(*f);
        }
    }
    let mut spheres = 0;
    for f in &unpaired_blue {
        let mates: BTreeSet<FaceRef> = face_edges(f.face)
            .iter()
            .flat_map(|&e| by_class[&uf.find(eid(f.oct, e))].iter().copied())
            .filter(|x| x != f)
            .collect();
        if mates.len() != 1 {
            violations.push(format!("blue face {}:{} is not half of a vertex sphere", f.oct, face_name(f.face)));
        } else if f < mates.iter().next().unwrap() {
            spheres += 1;
        }
    }
    if spheres != g.vertex_spheres.len() {
        violations.push(format!("{spheres} vertex spheres, expected {}", g.vertex_spheres.len()));
    }

    GluingReport {
        octahedra: n,
        expected_octahedra: expected,
        edge_class_sizes,
        annuli,
        tori,
        vertex_spheres: spheres,
        violations,
    }
}

fn invert(map: &[u8; 6]) -> [u8; 6] {
    let mut out = [u8::MAX; 6];
    for (i, &m) in map.iter().enumerate() {
        if m < 6 {
            out[m as usize] = i as u8;
        }
    }
    out
}

/// Number of cycles in a graph where every vertex has degree 2; returns
/// `usize::MAX` for any other degree pattern.
fn count_cycles(edges: &[(usize, usize)]) -> usize {
    let mut degree: HashMap<usize, usize> = HashMap::new();
    for &(a, b) in edges {
        *degree.entry(a).or_default() += 1;
        *degree.entry(b).or_default() += 1;
    }
    if degree.values().any(|&d| d != 2) {
        return usize::MAX;
    }
    let ids: Vec<usize> = degree.keys().copied().collect();
    let index: HashMap<usize, usize> = ids.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut uf = UnionFind::new(ids.len());
    for &(a, b) in edges {
        uf.union(index[&a], index[&b]);
    }
    (0..ids.len()).filter(|&i| uf.find(i) == i).count()
}

#[derive(Serialize)]
struct FaceJson {
    id: u8,
    name: String,
    color: &'static str,
    edges: Vec<String>,
}

#[derive(Serialize)]
struct OctJson {
    id: usize,
    upper: bool,
    faces: Vec<FaceJson>,
}

#[derive(Serialize)]
struct PairingJson {
    a: FaceRef,
    b: FaceRef,
    /// Images of the corners of `a`, in its `X, Y, Z` order.
    rot: Vec<&'static str>,
}

#[derive(Serialize)]
struct BoundaryJson {
    vertex_spheres: Vec<(VertexId, VertexSphere)>,
    cusps: BTreeMap<&'static str, usize>,
}

#[derive(Serialize)]
struct GluingJson {
    octs: Vec<OctJson>,
    pairings: Vec<PairingJson>,
    boundary: BoundaryJson,
}

/// The gluing as JSON: octahedra with colored faces, pairings with their
/// corner maps, and the boundary pattern.
pub fn gluing_json(g: &OctGluing) -> serde_json::Value {
    let report = verify_gluing(g);
    let octs = g
        .octs
        .iter()
        .map(|o| OctJson {
            id: o.id,
            upper: o.upper,
            faces: (0..8u8)
                .map(|f| FaceJson {
                    id: f,
                    name: face_name(f),
                    color: if is_blue(f) { "blue" } else { "white" },
                    edges: face_edges(f)
                        .iter()
                        .map(|&(a, b)| format!("{}{}", CORNER_NAMES[a as usize], CORNER_NAMES[b as usize]))
                        .collect(),
                })
                .collect(),
        })
        .collect();
    let pairings = g
        .pairings
        .iter()
        .map(|p| PairingJson {
            a: p.a,
            b: p.b,
            rot: face_corners(p.a.face)
                .iter()
                .map(|&c| CORNER_NAMES[p.map[c as usize] as usize])
                .collect(),
        })
        .collect();
    let json = GluingJson {
        octs,
        pairings,
        boundary: BoundaryJson {
            vertex_spheres: g.vertex_spheres.iter().map(|(v, s)| (*v, *s)).collect(),
            cusps: BTreeMap::from([("annuli", report.annuli), ("tori", report.tori)]),
        },
    };
    serde_json::to_value(json).expect("plain data")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ktgmodel::{parse_sequence, standard_tetrahedron};

    #[test]
    fn face_encoding() {
        assert_eq!(face_corners(face_of([1, 1, 1])), [XP, YP, ZP]);
        assert_eq!(face_corners(face_of([-1, 1, -1])), [XM, YP, ZM]);
        assert_eq!((0..8).filter(|&f| is_blue(f)).count(), 4);
        assert_eq!(oct_edges().len(), 12);
    }

    #[test]
    fn base_spheres_follow_the_tetrahedron() {
        assert!(check_base(&standard_tetrahedron(), &base_spheres(0, 1)));
    }

    #[test]
    fn base_gluing() {
        let g = build_gluing(&parse_sequence("tet").unwrap()).unwrap();
        assert_eq!(g.octs.len(), 2);
        assert_eq!(g.pairings.len(), 4);
        let r = verify_gluing(&g);
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r.vertex_spheres, 4);
        assert_eq!(r.annuli, 6);
        let bad = verify_gluing(&g.without_first_white_pairing());
        assert!(bad.violations.iter().any(|v| v.starts_with("unpaired white face")));
    }
}
