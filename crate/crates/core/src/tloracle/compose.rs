use std::collections::HashMap;

use super::tl::{jw, Diagram, TLElement};
use super::TlError;
use crate::qarith::{RatFun, TwistLaurent};
use crate::qsymbols::{FactoredFrac, Sign};

/// One generator in a row of a planar composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gen {
    Id(usize),
    Cup,
    Cap,
    /// Crossing of two strands: `A·id + A^{-1}·e` for `Plus`.
    Cross(Sign),
    /// Framing half twist on one strand: a factor `h^{±1}`.
    HTwist(Sign),
    Jw(usize),
}

impl Gen {
    pub fn ins(&self) -> usize {
        match *self {
            Gen::Id(k) | Gen::Jw(k) => k,
            Gen::Cup => 0,
            Gen::Cap | Gen::Cross(_) => 2,
            Gen::HTwist(_) => 1,
        }
    }

    pub fn outs(&self) -> usize {
        match *self {
            Gen::Id(k) | Gen::Jw(k) => k,
            Gen::Cup | Gen::Cross(_) => 2,
            Gen::Cap => 0,
            Gen::HTwist(_) => 1,
        }
    }
}

/// Rows read bottom to top; each row is a left-to-right juxtaposition.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PlanarComposition {
    pub rows: Vec<Vec<Gen>>,
}

impl PlanarComposition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, row: Vec<Gen>) {
        self.rows.push(row);
    }

    /// A row acting with `g` at position `at` of a width-`w` state.
    pub fn push_at(&mut self, w: usize, at: usize, g: Gen) {
        let mut row = Vec::with_capacity(3);
        if at > 0 {
            row.push(Gen::Id(at));
        }
        row.push(g);
        if w > at + g.ins() {
            row.push(Gen::Id(w - at - g.ins()));
        }
        self.rows.push(row);
    }

    pub fn extend(&mut self, other: PlanarComposition) {
        self.rows.extend(other.rows);
    }

    /// Widths between rows, bottom first.
    pub fn widths(&self) -> Result<Vec<usize>, TlError> {
        let mut out = Vec::with_capacity(self.rows.len() + 1);
        let mut w = self.rows.first().map_or(0, |r| r.iter().map(Gen::ins).sum());
        out.push(w);
        for (i, row) in self.rows.iter().enumerate() {
            let ins: usize = row.iter().map(Gen::ins).sum();
            if ins != w {
                return Err(TlError::WidthMismatch { row: i, expected: w, found: ins });
            }
            w = row.iter().map(Gen::outs).sum();
            out.push(w);
        }
        Ok(out)
    }

    pub fn max_width(&self) -> Result<usize, TlError> {
        Ok(self.widths()?.into_iter().max().unwrap_or(0))
    }
}

fn generator(g: Gen, cache: &mut HashMap<usize, TLElement>) -> Option<TLElement> {
    let a = |k: i64| FactoredFrac::from_poly(TwistLaurent::a_pow(k));
    Some(match g {
        Gen::Id(_) => return None,
        Gen::Cup => TLElement::from_diagram(Diagram::cup()),
        Gen::Cap => TLElement::from_diagram(Diagram::cap()),
        Gen::Cross(s) => {
            let k = s.as_i64();
            TLElement::from_term(Diagram::identity(2), a(k))
                .add(&TLElement::from_term(Diagram::e(2, 0), a(-k)))
        }
        Gen::HTwist(s) => TLElement::from_term(
            Diagram::identity(1),
            FactoredFrac::from_poly(TwistLaurent::h_pow(s.as_i64())),
        ),
        Gen::Jw(n) => {
            if n <= 1 {
                return None;
            }
            cache.entry(n).or_insert_with(|| jw(n)).clone()
        }
    })
}

/// Evaluates a closed composition row by row on a state in Hom(0, w).
pub fn evaluate(d: &PlanarComposition) -> Result<RatFun, TlError> {
    let widths = d.widths()?;
    if widths[0] != 0 || *widths.last().unwrap() != 0 {
        return Err(TlError::NotClosed {
            bottom: widths[0],
            top: *widths.last().unwrap(),
        });
    }
    let mut cache = HashMap::new();
    let mut state = TLElement::empty();
    for row in &d.rows {
        let mut offset = 0;
        for &g in row {
            if let Some(el) = generator(g, &mut cache) {
                state = state.stack(&el, offset);
            }
            offset += g.outs();
        }
        if state.is_zero() {
            return Ok(RatFun::zero());
        }
    }
    Ok(state.coefficient(&Diagram::identity(0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsymbols::unknot_value;

    fn closed_strands(n: usize, middle: Vec<Vec<Gen>>) -> PlanarComposition {
        // n nested cups, the middle rows on the right half, n nested caps.
        let mut c = PlanarComposition::new();
        for i in 0..n {
            c.push_at(2 * i, i, Gen::Cup);
        }
        for row in middle {
            let mut r = vec![Gen::Id(n)];
            r.extend(row);
            c.push(r);
        }
        for i in (0..n).rev() {
            c.push_at(2 * i + 2, i, Gen::Cap);
        }
        c
    }

    #[test]
    fn single_loop() {
        let c = closed_strands(1, vec![]);
        assert_eq!(evaluate(&c).unwrap(), RatFun::from_poly(-(TwistLaurent::a_pow(2) + TwistLaurent::a_pow(-2))));
    }

    #[test]
    fn colored_unknots() {
        for n in 1..=5u32 {
            let k = (n - 1) as usize;
            let c = closed_strands(k, vec![vec![Gen::Jw(k)]]);
            assert_eq!(evaluate(&c).unwrap(), RatFun::from_poly(unknot_value(n)), "N = {n}");
        }
    }

    #[test]
    fn open_diagram_rejected() {
        let mut c = PlanarComposition::new();
        c.push(vec![Gen::Cup]);
        assert!(matches!(evaluate(&c), Err(TlError::NotClosed { .. })));
        let mut c = PlanarComposition::new();
        c.push(vec![Gen::Cup]);
        c.push(vec![Gen::Cap, Gen::Id(1)]);
        assert!(matches!(evaluate(&c), Err(TlError::WidthMismatch { .. })));
    }
}
