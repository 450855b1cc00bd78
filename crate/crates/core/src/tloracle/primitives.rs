use super::compose::{evaluate, Gen, PlanarComposition};
use super::TlError;
use crate::qarith::RatFun;
use crate::qsymbols::{admissible, Sign};

fn strands(color: u32) -> usize {
    color.saturating_sub(1) as usize
}

/// Builds planar colored diagrams bundle by bundle. A bundle of color `k`
/// is `k - 1` strands carrying a Jones–Wenzl projector; trivalent vertices
/// are the unique crossingless wiring of three bundles.
#[derive(Debug, Clone, Default)]
pub struct DiagramBuilder {
    comp: PlanarComposition,
    bundles: Vec<u32>,
    width: usize,
}

/// Arc counts `(x, y, z)` between bundles `(a,b)`, `(b,c)`, `(a,c)`.
fn arcs(a: u32, b: u32, c: u32) -> Result<(usize, usize, usize), TlError> {
    if !admissible(a, b, c) {
        return Err(TlError::InadmissibleTriple(a, b, c));
    }
    let (a, b, c) = (strands(a), strands(b), strands(c));
    Ok(((a + b - c) / 2, (b + c - a) / 2, (a + c - b) / 2))
}

/// Matching of a vertex wiring on `a + b + c` points.
fn vertex_matching(a: u32, b: u32, c: u32) -> Result<Vec<usize>, TlError> {
    let (x, y, z) = arcs(a, b, c)?;
    let (sa, sb, sc) = (strands(a), strands(b), strands(c));
    let total = sa + sb + sc;
    let mut m = vec![usize::MAX; total];
    let mut pair = |i: usize, j: usize| {
        m[i] = j;
        m[j] = i;
    };
    for i in 0..x {
        pair(sa - 1 - i, sa + i);
    }
    for i in 0..y {
        pair(sa + sb - 1 - i, sa + sb + i);
    }
    for i in 0..z {
        pair(i, total - 1 - i);
    }
    Ok(m)
}

/// Positions at which adjacent pairs can be removed one by one to empty the
/// matching.
fn removal_order(matching: &[usize]) -> Vec<usize> {
    let mut pts: Vec<usize> = (0..matching.len()).collect();
    let mut order = Vec::with_capacity(matching.len() / 2);
    while !pts.is_empty() {
        let i = (0..pts.len() - 1)
            .find(|&i| matching[pts[i]] == pts[i + 1])
            .expect("crossingless matching has an adjacent pair");
        order.push(i);
        pts.drain(i..i + 2);
    }
    order
}

impl DiagramBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bundles(&self) -> &[u32] {
        &self.bundles
    }

    fn pos(&self, at: usize) -> usize {
        self.bundles[..at].iter().map(|&c| strands(c)).sum()
    }

    fn row(&mut self, at: usize, g: Gen) {
        self.comp.push_at(self.width, at, g);
        self.width = self.width - g.ins() + g.outs();
    }

    fn cups(&mut self, p: usize, matching: &[usize]) {
        for &i in removal_order(matching).iter().rev() {
            self.row(p + i, Gen::Cup);
        }
    }

    fn caps(&mut self, p: usize, matching: &[usize]) {
        for i in removal_order(matching) {
            self.row(p + i, Gen::Cap);
        }
    }

    pub fn jw(&mut self, at: usize) {
        let k = strands(self.bundles[at]);
        if k >= 2 {
            let p = self.pos(at);
            self.row(p, Gen::Jw(k));
        }
    }

    pub fn open_vertex(&mut self, at: usize, colors: [u32; 3]) -> Result<&mut Self, TlError> {
        let m = vertex_matching(colors[0], colors[1], colors[2])?;
        let p = self.pos(at);
        self.cups(p, &m);
        self.bundles.splice(at..at, colors);
        for i in 0..3 {
            self.jw(at + i);
        }
        Ok(self)
    }

    pub fn close_vertex(&mut self, at: usize) -> Result<&mut Self, TlError> {
        let c = &self.bundles[at..at + 3];
        let m = vertex_matching(c[0], c[1], c[2])?;
        let p = self.pos(at);
        self.caps(p, &m);
        self.bundles.drain(at..at + 3);
        Ok(self)
    }

    /// Replaces bundle `at` by two bundles through a vertex.
    pub fn split(&mut self, at: usize, left: u32, right: u32) -> Result<&mut Self, TlError> {
        let (cups, _, to_left) = arcs(left, right, self.bundles[at])?;
        let p = self.pos(at) + to_left;
        for i in 0..cups {
            self.row(p + i, Gen::Cup);
        }
        self.bundles.splice(at..at + 1, [left, right]);
        self.jw(at);
        self.jw(at + 1);
        Ok(self)
    }

    /// Replaces bundles `at` and `at + 1` by one bundle through a vertex.
    pub fn merge(&mut self, at: usize, color: u32) -> Result<&mut Self, TlError> {
        let (x, _, _) = arcs(self.bundles[at], self.bundles[at + 1], color)?;
        let junction = self.pos(at + 1);
        for i in 0..x {
            self.row(junction - 1 - i, Gen::Cap);
        }
        self.bundles.splice(at..at + 2, [color]);
        self.jw(at);
        Ok(self)
    }

    /// Two bundles of the same color joined by nested cups.
    pub fn open_loop(&mut self, at: usize, color: u32) -> &mut Self {
        let p = self.pos(at);
        for i in 0..strands(color) {
            self.row(p + i, Gen::Cup);
        }
        self.bundles.splice(at..at, [color, color]);
        self.jw(at + 1);
        self
    }

    pub fn close_loop(&mut self, at: usize) -> Result<&mut Self, TlError> {
        let (a, b) = (self.bundles[at], self.bundles[at + 1]);
        if a != b {
            return Err(TlError::ColorMismatch(a, b));
        }
        let junction = self.pos(at + 1);
        for i in 0..strands(a) {
            self.row(junction - 1 - i, Gen::Cap);
        }
        self.bundles.drain(at..at + 2);
        Ok(self)
    }

    /// Half twist of a whole bundle: the half-twist braid plus a framing
    /// twist on every strand.
    pub fn twist(&mut self, at: usize, sign: Sign) -> &mut Self {
        let n = strands(self.bundles[at]);
        let p = self.pos(at);
        for i in 1..n {
            for j in (0..i).rev() {
                self.row(p + j, Gen::Cross(sign));
            }
        }
        for j in 0..n {
            self.row(p + j, Gen::HTwist(sign));
        }
        self
    }

    /// Bundle `at` crosses bundle `at + 1`.
    pub fn exchange(&mut self, at: usize, sign: Sign) -> &mut Self {
        let (sp, sq) = (strands(self.bundles[at]), strands(self.bundles[at + 1]));
        let p = self.pos(at);
        for i in (0..sp).rev() {
            for j in 0..sq {
                self.row(p + i + j, Gen::Cross(sign));
            }
        }
        self.bundles.swap(at, at + 1);
        self
    }

    pub fn finish(&self) -> Result<PlanarComposition, TlError> {
        if !self.bundles.is_empty() {
            return Err(TlError::NotClosed {
                bottom: 0,
                top: self.width,
            });
        }
        Ok(self.comp.clone())
    }
}

/// Closed colored diagrams with known skein values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Primitive {
    Theta(u32, u32, u32),
    /// Colors of `e1..e6` with `e1 = v1v2, e2 = v1v3, e3 = v1v4, e4 = v2v3,
    /// e5 = v3v4, e6 = v2v4`.
    Tet([u32; 6]),
    /// A closed band of color `k` with one half twist.
    TwistedEdge(u32, Sign),
    /// A closed edge of color `k` encircled by a ring of color `n`.
    Encircled { k: u32, n: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest number of parallel strands in any row.
    pub max_strands: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { max_strands: 8 }
    }
}

pub fn primitive_diagram(kind: Primitive) -> Result<PlanarComposition, TlError> {
    let mut b = DiagramBuilder::new();
    match kind {
        Primitive::Theta(x, y, z) => {
            b.open_vertex(0, [x, y, z])?.close_vertex(0)?;
        }
        Primitive::Tet(j) => {
            let [j1, j2, j3, j4, j5, j6] = j;
            b.open_vertex(0, [j1, j3, j2])?
                .split(0, j4, j6)?
                .merge(1, j5)?
                .close_vertex(0)?;
        }
        Primitive::TwistedEdge(k, s) => {
            b.open_loop(0, k).twist(1, s).close_loop(0)?;
        }
        Primitive::Encircled { k, n } => {
            b.open_loop(0, k)
                .open_loop(2, n)
                .exchange(1, Sign::Plus)
                .exchange(1, Sign::Plus)
                .close_loop(2)?
                .close_loop(0)?;
        }
    }
    b.finish()
}

/// Evaluates a composition after checking its width against the bound.
pub fn evaluate_bounded(d: &PlanarComposition, config: &OracleConfig) -> Result<RatFun, TlError> {
    let w = d.max_width()?;
    if w > config.max_strands {
        return Err(TlError::TooLarge {
            strands: w,
            limit: config.max_strands,
        });
    }
    evaluate(d)
}

pub fn bracket_primitive(kind: Primitive) -> Result<RatFun, TlError> {
    bracket_primitive_with(kind, &OracleConfig::default())
}

pub fn bracket_primitive_with(kind: Primitive, config: &OracleConfig) -> Result<RatFun, TlError> {
    evaluate_bounded(&primitive_diagram(kind)?, config)
}
