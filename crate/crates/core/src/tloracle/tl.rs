use std::collections::BTreeMap;

use crate::qarith::{RatFun, TwistLaurent};
use crate::qsymbols::{qint, FactoredFrac};

/// Crossingless matching between `ins` bottom points (`0..ins`) and `outs`
/// top points (`ins..ins+outs`), both numbered left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    ins: usize,
    outs: usize,
    partner: Vec<usize>,
}

/// `-A^2 - A^{-2}`.
pub fn loop_value() -> TwistLaurent {
    -(TwistLaurent::a_pow(2) + TwistLaurent::a_pow(-2))
}

impl Diagram {
    pub fn identity(n: usize) -> Self {
        let partner = (0..2 * n).map(|i| if i < n { i + n } else { i - n }).collect();
        Self {
            ins: n,
            outs: n,
            partner,
        }
    }

    /// Hom(0, 2): a single cup.
    pub fn cup() -> Self {
        Self {
            ins: 0,
            outs: 2,
            partner: vec![1, 0],
        }
    }

    /// Hom(2, 0): a single cap.
    pub fn cap() -> Self {
        Self {
            ins: 2,
            outs: 0,
            partner: vec![1, 0],
        }
    }

    /// `e_i` on `n` strands: cap then cup on strands `i, i+1`.
    pub fn e(n: usize, i: usize) -> Self {
        let mut d = Self::identity(n);
        d.partner[i] = i + 1;
        d.partner[i + 1] = i;
        d.partner[n + i] = n + i + 1;
        d.partner[n + i + 1] = n + i;
        d
    }

    /// Hom(0, w) from a perfect matching of the top points.
    pub fn from_top_matching(partner: Vec<usize>) -> Self {
        Self {
            ins: 0,
            outs: partner.len(),
            partner,
        }
    }

    pub fn ins(&self) -> usize {
        self.ins
    }

    pub fn outs(&self) -> usize {
        self.outs
    }

    pub fn partner(&self) -> &[usize] {
        &self.partner
    }

    /// Places `upper` on the outputs `offset..offset+upper.ins` of `self`;
    /// other outputs pass through. Returns the result and the number of
    /// closed loops formed.
    pub fn stack(&self, upper: &Diagram, offset: usize) -> (Diagram, usize) {
        assert!(offset + upper.ins <= self.outs, "stacked diagram out of range");
        let (p, q) = (self.ins, self.outs);
        let (r, s) = (upper.ins, upper.outs);
        let outs = q - r + s;
        // Result point of a lower point, if it is one.
        let lower_result = |x: usize| -> Option<usize> {
            if x < p {
                Some(x)
            } else {
                let j = x - p;
                if j < offset {
                    Some(p + j)
                } else if j >= offset + r {
                    Some(p + j - r + s)
                } else {
                    None
                }
            }
        };
        let upper_result = |y: usize| -> Option<usize> {
            if y >= r {
                Some(p + offset + (y - r))
            } else {
                None
            }
        };
        let mut partner = vec![usize::MAX; p + outs];
        let mut glue_seen = vec![false; r];
        // Follow from a point, alternating diagrams through glue points.
        let trace = |start_lower: bool, start: usize, glue_seen: &mut Vec<bool>| -> usize {
            let (mut in_lower, mut x) = (start_lower, start);
            loop {
                if in_lower {
                    let y = self.partner[x];
                    if let Some(res) = lower_result(y) {
                        return res;
                    }
                    let g = y - p - offset;
                    glue_seen[g] = true;
                    in_lower = false;
                    x = g;
                } else {
                    let y = upper.partner[x];
                    if let Some(res) = upper_result(y) {
                        return res;
                    }
                    glue_seen[y] = true;
                    in_lower = true;
                    x = p + offset + y;
                }
            }
        };
        for x in 0..p + q {
            if let Some(rx) = lower_result(x) {
                if partner[rx] == usize::MAX {
                    let ry = trace(true, x, &mut glue_seen);
                    partner[rx] = ry;
                    partner[ry] = rx;
                }
            }
        }
        for y in r..r + s {
            let ry = upper_result(y).unwrap();
            if partner[ry] == usize::MAX {
                let rz = trace(false, y, &mut glue_seen);
                partner[ry] = rz;
                partner[rz] = ry;
            }
        }
        // Glue points not on any path lie on closed loops.
        let mut loops = 0;
        for g in 0..r {
            if glue_seen[g] {
                continue;
            }
            loops += 1;
            let mut cur = g;
            loop {
                glue_seen[cur] = true;
                let a = upper.partner[cur];
                let b = self.partner[p + offset + a] - p - offset;
                glue_seen[a] = true;
                if b == g {
                    break;
                }
                cur = b;
            }
        }
        (
            Diagram {
                ins: p,
                outs,
                partner,
            },
            loops,
        )
    }
}

/// Linear combination of diagrams with a common shape.
#[derive(Debug, Clone)]
pub struct TLElement {
    ins: usize,
    outs: usize,
    terms: BTreeMap<Diagram, FactoredFrac>,
}

impl TLElement {
    pub fn zero(ins: usize, outs: usize) -> Self {
        Self {
            ins,
            outs,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_diagram(d: Diagram) -> Self {
        Self::from_term(d, FactoredFrac::one())
    }

    pub fn from_term(d: Diagram, c: FactoredFrac) -> Self {
        let mut out = Self::zero(d.ins, d.outs);
        out.add_term(d, c);
        out
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagram(Diagram::identity(n))
    }

    /// The empty diagram with coefficient 1.
    pub fn empty() -> Self {
        Self::identity(0)
    }

    pub fn ins(&self) -> usize {
        self.ins
    }

    pub fn outs(&self) -> usize {
        self.outs
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, RatFun)> {
        self.terms.iter().map(|(d, c)| (d, c.to_ratfun()))
    }

    pub fn coefficient(&self, d: &Diagram) -> RatFun {
        self.terms
            .get(d)
            .map(|c| c.to_ratfun())
            .unwrap_or_else(RatFun::zero)
    }

    pub(crate) fn add_term(&mut self, d: Diagram, c: FactoredFrac) {
        assert_eq!((d.ins, d.outs), (self.ins, self.outs), "diagram shape mismatch");
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&d) {
            Some(old) => old.add(&c).reduce(),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(d, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &FactoredFrac) -> Self {
        let mut out = Self::zero(self.ins, self.outs);
        for (d, x) in &self.terms {
            out.add_term(d.clone(), x.mul(c).reduce());
        }
        out
    }

    /// Places `upper` on the outputs `offset..` of `self`.
    pub fn stack(&self, upper: &TLElement, offset: usize) -> Self {
        let outs = self.outs - upper.ins + upper.outs;
        let mut out = Self::zero(self.ins, outs);
        let d = loop_value();
        for (ld, lc) in &self.terms {
            for (ud, uc) in &upper.terms {
                let (res, loops) = ld.stack(ud, offset);
                let c = lc.mul(uc).mul_poly(&d.pow(loops as u32));
                out.add_term(res, c);
            }
        }
        for c in out.terms.values_mut() {
            *c = std::mem::replace(c, FactoredFrac::zero()).reduce();
        }
        out
    }

    /// `upper ∘ self` for square elements.
    pub fn then(&self, upper: &TLElement) -> Self {
        self.stack(upper, 0)
    }

    /// `self ⊗ id_k`.
    pub fn tensor_id(&self, k: usize) -> Self {
        let mut out = Self::zero(self.ins + k, self.outs + k);
        let id = Diagram::identity(k);
        for (d, c) in &self.terms {
            out.add_term(juxtapose(d, &id), c.clone());
        }
        out
    }

    /// Exact equality of all coefficients.
    pub fn equals(&self, other: &Self) -> bool {
        if (self.ins, self.outs) != (other.ins, other.outs) {
            return false;
        }
        let keys: std::collections::BTreeSet<&Diagram> =
            self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter()
            .all(|d| self.coefficient(d) == other.coefficient(d))
    }
}

/// Side-by-side placement of two diagrams.
fn juxtapose(a: &Diagram, b: &Diagram) -> Diagram {
    let ins = a.ins + b.ins;
    let outs = a.outs + b.outs;
    // Map each diagram's point to the combined numbering.
    let map_a = |x: usize| if x < a.ins { x } else { ins + (x - a.ins) };
    let map_b = |x: usize| {
        if x < b.ins {
            a.ins + x
        } else {
            ins + a.outs + (x - b.ins)
        }
    };
    let mut partner = vec![0; ins + outs];
    for x in 0..a.ins + a.outs {
        partner[map_a(x)] = map_a(a.partner[x]);
    }
    for x in 0..b.ins + b.outs {
        partner[map_b(x)] = map_b(b.partner[x]);
    }
    Diagram {
        ins,
        outs,
        partner,
    }
}

/// The Jones–Wenzl projector on `n` strands, by the Wenzl recursion
/// `P_n = P_{n-1} ⊗ 1 + ([n-1]/[n]) (P_{n-1} ⊗ 1) e_{n-1} (P_{n-1} ⊗ 1)`
/// for loop value `-[2]`.
pub fn jw(n: usize) -> TLElement {
    let mut p = TLElement::identity(n.min(1));
    for k in 2..=n {
        let q = p.tensor_id(1);
        let e = TLElement::from_diagram(Diagram::e(k, k - 2));
        let c = FactoredFrac::new(qint(k as i64 - 1), [(k as u32, 1)].into_iter().collect());
        let corr = q.then(&e).then(&q).scale(&c);
        p = q.add(&corr);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_loop() {
        let (d, loops) = Diagram::cup().stack(&Diagram::cap(), 0);
        assert_eq!((d.ins, d.outs, loops), (0, 0, 1));
        let s = TLElement::from_diagram(Diagram::cup()).stack(&TLElement::from_diagram(Diagram::cap()), 0);
        assert_eq!(s.coefficient(&Diagram::identity(0)), RatFun::from_poly(loop_value()));
    }

    #[test]
    fn low_projectors() {
        assert!(jw(1).equals(&TLElement::identity(1)));
        let c = FactoredFrac::new(TwistLaurent::one(), [(2, 1)].into_iter().collect());
        let expect = TLElement::identity(2).add(&TLElement::from_term(Diagram::e(2, 0), c));
        assert!(jw(2).equals(&expect));
    }

    #[test]
    fn projectors_are_idempotent_and_killed_by_caps() {
        for n in 1..=4 {
            let p = jw(n);
            assert!(p.then(&p).equals(&p), "n = {n}");
            for i in 0..n.saturating_sub(1) {
                let cap = TLElement::from_diagram(Diagram::cap());
                assert!(p.stack(&cap, i).is_zero(), "n = {n}, i = {i}");
            }
        }
    }
}
