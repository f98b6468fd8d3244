//! Helpers shared by the integration tests.

use ctxalg::container::{PolyMonad, Shape};
use ctxalg::report::Witness;
use ctxalg::Law;

fn parse_filling(m: &PolyMonad, text: &str) -> Vec<Shape> {
    let inner = text.trim_start_matches('[').trim_end_matches(']');
    if inner.is_empty() {
        return vec![];
    }
    inner.split(',').map(|n| m.container.shape(n).unwrap()).collect()
}

fn parse_fillings(m: &PolyMonad, text: &str) -> Vec<Vec<Shape>> {
    let inner = &text[1..text.len() - 1];
    inner.split("],[").map(|part| parse_filling(m, part)).collect()
}

/// Re-evaluates the failing law at the reported instance straight from the
/// tables.
pub fn witness_is_genuine(m: &PolyMonad, law: Law, w: &Witness) -> bool {
    let c = &m.container;
    let shape = |key: &str| c.shape(w.get(key).unwrap()).unwrap();
    let seq = |s: Shape, f: &[Shape]| m.seq[&(s, f.to_vec())];
    let split = |s: Shape, f: &[Shape], p: usize| m.split[&(s, f.to_vec(), p)];
    let position = |s: Shape| c.positions[s.ix()].iter().position(|n| n == w.get("p").unwrap()).unwrap();
    match law {
        Law::PolyRightUnitSeq => {
            let s = shape("s");
            seq(s, &vec![m.ok; c.arity(s)]) != s
        }
        Law::PolyLeftUnitSeq => {
            let s = shape("s");
            seq(m.ok, &vec![s; c.arity(m.ok)]) != s
        }
        Law::PolyRightUnitSplit => {
            let s = shape("s");
            let p = position(s);
            split(s, &vec![m.ok; c.arity(s)], p).0 != p
        }
        Law::PolyLeftUnitSplit => {
            let s = shape("s");
            let p = position(s);
            split(m.ok, &vec![s; c.arity(m.ok)], p).1 != p
        }
        Law::PolySeqAssociativity | Law::PolySplitAssociativity => {
            let s = shape("s");
            let f1 = parse_filling(m, w.get("f1").unwrap());
            let f2 = parse_fillings(m, w.get("f2").unwrap());
            let mid = seq(s, &f1);
            let along: Vec<Shape> = (0..c.arity(mid))
                .map(|q| {
                    let (p1, p2) = split(s, &f1, q);
                    f2[p1][p2]
                })
                .collect();
            let inner: Vec<Shape> = (0..c.arity(s)).map(|p| seq(f1[p], &f2[p])).collect();
            let (lhs, rhs) = (seq(mid, &along), seq(s, &inner));
            if law == Law::PolySeqAssociativity {
                return lhs != rhs;
            }
            let q: usize = w.get("q").unwrap().parse().unwrap();
            let (q1, q2) = split(mid, &along, q);
            let (p1, r) = split(s, &f1, q1);
            let (p1b, u) = split(s, &inner, q);
            let (rb, q2b) = split(f1[p1b], &f2[p1b], u);
            (p1, r, q2) != (p1b, rb, q2b)
        }
        _ => false,
    }
}
