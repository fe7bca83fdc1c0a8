//! Search for negative coefficients in `p_{y,w}` and `h_{x,y,z}`.

use crate::coxeter::Elem;
use crate::hecke::{HTable, KlTable};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NegativeWitness {
    /// `p_{y,w}` has a negative coefficient.
    P { y: Elem, w: Elem, poly: Poly },
    /// `h_{x,y,z}` has a negative coefficient.
    H { x: Elem, y: Elem, z: Elem, poly: Poly },
}

fn has_negative(p: &Poly) -> bool {
    p.terms().iter().any(|(_, c)| c.signum() < 0)
}

/// The first negative `p_{y,w}` in `(w, y)` order, then the first negative
/// `h_{x,y,z}` in `(x, y, z)` order.
pub fn find_negative(kl: &KlTable, h: Option<&HTable>) -> Option<NegativeWitness> {
    let (p, _) = kl.parts();
    for (w, col) in p.iter().enumerate() {
        if let Some((y, poly)) = col.iter().find(|(_, q)| has_negative(q)) {
            return Some(NegativeWitness::P {
                y: Elem(*y),
                w: Elem(w as u32),
                poly: poly.clone(),
            });
        }
    }
    let h = h?;
    let n = h.size();
    for (i, row) in h.rows().iter().enumerate() {
        if let Some((z, poly)) = row.iter().find(|(_, q)| has_negative(q)) {
            return Some(NegativeWitness::H {
                x: Elem((i / n) as u32),
                y: Elem((i % n) as u32),
                z: Elem(*z),
                poly: poly.clone(),
            });
        }
    }
    None
}
