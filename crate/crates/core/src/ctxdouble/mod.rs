//! Finite pseudo double categories, the contextful-arrow construction, span
//! double categories and the checks relating them.
//!
//! Conventions: squares stack tightly top to bottom and paste loosely left to
//! right. `λ̂_f: U;f ⇒ f`, `ρ̂_f: f;U ⇒ f` and `α̂_{f,g,h}: f;(g;h) ⇒ (f;g);h`
//! are globular squares.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::fincat::{check_category, FinCategory, Mor, Obj};
use crate::report::{Error, Law, LawResult, Report, Result, Tally, Witness};
use crate::witness;

mod ctx;
mod functor;
mod loose_product;
mod span;

pub use ctx::*;
pub use functor::*;
pub use loose_product::*;
pub use span::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Loose(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sq(pub u32);

impl Loose {
    pub fn ix(self) -> usize {
        self.0 as usize
    }
}

impl Sq {
    pub fn ix(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LooseArrow {
    pub name: String,
    pub src: Obj,
    pub tgt: Obj,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Square {
    pub name: String,
    pub top: Loose,
    pub bottom: Loose,
    pub left: Mor,
    pub right: Mor,
}

/// The operations a construction supplies; [`DoubleCategory::tabulate`]
/// evaluates them on every composable configuration.
pub trait DoubleOps {
    fn loose_id(&self, a: Obj) -> Result<Loose>;
    fn loose_comp(&self, f: Loose, g: Loose) -> Result<Loose>;
    /// `upper` on top of `lower`.
    fn stack(&self, upper: Sq, lower: Sq) -> Result<Sq>;
    /// `left` beside `right`.
    fn paste(&self, left: Sq, right: Sq) -> Result<Sq>;
    fn tight_id(&self, f: Loose) -> Result<Sq>;
    fn loose_id_square(&self, h: Mor) -> Result<Sq>;
    fn left_unitor(&self, f: Loose) -> Result<Sq>;
    fn right_unitor(&self, f: Loose) -> Result<Sq>;
    fn associator(&self, f: Loose, g: Loose, h: Loose) -> Result<Sq>;
}

#[derive(Clone, Debug)]
pub struct DoubleCategory {
    pub tight: Arc<FinCategory>,
    pub loose: Vec<LooseArrow>,
    pub squares: Vec<Square>,
    /// Per object.
    pub loose_id: Vec<Loose>,
    pub loose_comp: HashMap<(Loose, Loose), Loose>,
    pub stack: HashMap<(Sq, Sq), Sq>,
    pub paste: HashMap<(Sq, Sq), Sq>,
    /// Per loose arrow: the square with identity sides.
    pub tight_id: Vec<Sq>,
    /// Per tight arrow: the square between loose identities.
    pub loose_id_square: Vec<Sq>,
    pub left_unitor: Vec<Sq>,
    pub right_unitor: Vec<Sq>,
    pub associator: HashMap<(Loose, Loose, Loose), Sq>,
    by_top: Vec<Vec<Sq>>,
    /// Per tight arrow.
    by_left: Vec<Vec<Sq>>,
}

impl DoubleCategory {
    pub fn tabulate(
        tight: Arc<FinCategory>,
        loose: Vec<LooseArrow>,
        squares: Vec<Square>,
        ops: &(impl DoubleOps + Sync),
    ) -> Result<DoubleCategory> {
        let mut d = DoubleCategory {
            loose_id: tight.objects().map(|a| ops.loose_id(a)).collect::<Result<_>>()?,
            tight_id: (0..loose.len()).map(|i| ops.tight_id(Loose(i as u32))).collect::<Result<_>>()?,
            loose_id_square: tight.morphisms().map(|h| ops.loose_id_square(h)).collect::<Result<_>>()?,
            left_unitor: (0..loose.len()).map(|i| ops.left_unitor(Loose(i as u32))).collect::<Result<_>>()?,
            right_unitor: (0..loose.len()).map(|i| ops.right_unitor(Loose(i as u32))).collect::<Result<_>>()?,
            tight,
            loose,
            squares,
            loose_comp: HashMap::new(),
            stack: HashMap::new(),
            paste: HashMap::new(),
            associator: HashMap::new(),
            by_top: Vec::new(),
            by_left: Vec::new(),
        };
        d.reindex();
        let pairs = d.composable_loose();
        d.loose_comp =
            pairs.par_iter().map(|&(f, g)| ops.loose_comp(f, g).map(|h| ((f, g), h))).collect::<Result<_>>()?;
        let stacks: Vec<(Sq, Sq)> = d.stackable();
        d.stack = stacks.par_iter().map(|&(a, b)| ops.stack(a, b).map(|s| ((a, b), s))).collect::<Result<_>>()?;
        let pastes: Vec<(Sq, Sq)> = d.pasteable();
        d.paste = pastes.par_iter().map(|&(a, b)| ops.paste(a, b).map(|s| ((a, b), s))).collect::<Result<_>>()?;
        let triples = d.composable_triples();
        d.associator = triples
            .par_iter()
            .map(|&(f, g, h)| ops.associator(f, g, h).map(|s| ((f, g, h), s)))
            .collect::<Result<_>>()?;
        Ok(d)
    }

    /// Rebuild the lookup indices after editing `squares`.
    pub fn reindex(&mut self) {
        self.by_top = vec![Vec::new(); self.loose.len()];
        self.by_left = vec![Vec::new(); self.tight.num_morphisms()];
        for (i, s) in self.squares.iter().enumerate() {
            self.by_top[s.top.ix()].push(Sq(i as u32));
            self.by_left[s.left.ix()].push(Sq(i as u32));
        }
    }

    pub fn loose_arrows(&self) -> impl Iterator<Item = Loose> {
        (0..self.loose.len() as u32).map(Loose)
    }

    pub fn square_ids(&self) -> impl Iterator<Item = Sq> {
        (0..self.squares.len() as u32).map(Sq)
    }

    pub fn loose_arrow(&self, f: Loose) -> &LooseArrow {
        &self.loose[f.ix()]
    }

    pub fn square(&self, s: Sq) -> &Square {
        &self.squares[s.ix()]
    }

    pub fn loose_by_name(&self, name: &str) -> Option<Loose> {
        self.loose.iter().position(|l| l.name == name).map(|i| Loose(i as u32))
    }

    pub fn squares_from(&self, f: Loose) -> &[Sq] {
        &self.by_top[f.ix()]
    }

    pub fn comp(&self, f: Loose, g: Loose) -> Option<Loose> {
        self.loose_comp.get(&(f, g)).copied()
    }

    pub fn stacked(&self, upper: Sq, lower: Sq) -> Option<Sq> {
        self.stack.get(&(upper, lower)).copied()
    }

    pub fn pasted(&self, left: Sq, right: Sq) -> Option<Sq> {
        self.paste.get(&(left, right)).copied()
    }

    /// Stack a column of squares, top first.
    pub fn stack_all(&self, column: &[Sq]) -> Option<Sq> {
        let (first, rest) = column.split_first()?;
        rest.iter().try_fold(*first, |acc, &s| self.stacked(acc, s))
    }

    pub fn is_tight_identity(&self, s: Sq) -> bool {
        let sq = self.square(s);
        sq.top == sq.bottom && self.tight_id[sq.top.ix()] == s
    }

    pub fn describe(&self, s: Sq) -> String {
        let sq = self.square(s);
        format!("{} : {} => {}", sq.name, self.loose[sq.top.ix()].name, self.loose[sq.bottom.ix()].name)
    }

    fn composable_loose(&self) -> Vec<(Loose, Loose)> {
        let mut from: Vec<Vec<Loose>> = vec![Vec::new(); self.tight.num_objects()];
        for f in self.loose_arrows() {
            from[self.loose[f.ix()].src.ix()].push(f);
        }
        self.loose_arrows().flat_map(|f| from[self.loose[f.ix()].tgt.ix()].iter().map(move |&g| (f, g))).collect()
    }

    fn composable_triples(&self) -> Vec<(Loose, Loose, Loose)> {
        let mut from: Vec<Vec<Loose>> = vec![Vec::new(); self.tight.num_objects()];
        for f in self.loose_arrows() {
            from[self.loose[f.ix()].src.ix()].push(f);
        }
        let mut out = Vec::new();
        for f in self.loose_arrows() {
            for &g in &from[self.loose[f.ix()].tgt.ix()] {
                for &h in &from[self.loose[g.ix()].tgt.ix()] {
                    out.push((f, g, h));
                }
            }
        }
        out
    }

    fn stackable(&self) -> Vec<(Sq, Sq)> {
        self.square_ids()
            .flat_map(|a| self.by_top[self.squares[a.ix()].bottom.ix()].iter().map(move |&b| (a, b)))
            .collect()
    }

    fn pasteable(&self) -> Vec<(Sq, Sq)> {
        self.square_ids()
            .flat_map(|a| {
                let sa = &self.squares[a.ix()];
                let tgt = self.loose[sa.top.ix()].tgt;
                self.by_left[sa.right.ix()]
                    .iter()
                    .filter(move |&&b| self.loose[self.squares[b.ix()].top.ix()].src == tgt)
                    .map(move |&b| (a, b))
            })
            .collect()
    }

    fn loose_boundary(&self, f: Loose) -> (Obj, Obj) {
        let l = &self.loose[f.ix()];
        (l.src, l.tgt)
    }

    fn expect_square(&self, what: &str, s: Sq, top: Loose, bottom: Loose, left: Mor, right: Mor) -> Result<()> {
        let sq = self.squares.get(s.ix()).ok_or_else(|| Error::Dangling { kind: "square", name: format!("{s:?}") })?;
        if sq.top != top || sq.bottom != bottom || sq.left != left || sq.right != right {
            return Err(Error::Boundary(format!("{what} gives {}", self.describe(s))));
        }
        Ok(())
    }

    /// Boundary typing of every table; a gap or mismatch is structural.
    pub fn validate(&self) -> Result<()> {
        let c = &*self.tight;
        for l in &self.loose {
            if l.src.ix() >= c.num_objects() || l.tgt.ix() >= c.num_objects() {
                return Err(Error::Dangling { kind: "object", name: l.name.clone() });
            }
        }
        for s in &self.squares {
            let (a, b) = self.loose_boundary(s.top);
            let (a2, b2) = self.loose_boundary(s.bottom);
            if c.src(s.left) != a || c.tgt(s.left) != a2 || c.src(s.right) != b || c.tgt(s.right) != b2 {
                return Err(Error::Boundary(format!("square {} has mismatched sides", s.name)));
            }
        }
        for a in c.objects() {
            let u = self.loose_id[a.ix()];
            if self.loose_boundary(u) != (a, a) {
                return Err(Error::Boundary(format!("loose identity at {}", c.obj_name(a))));
            }
        }
        for (f, g) in self.composable_loose() {
            let h = self.comp(f, g).ok_or_else(|| Error::Missing {
                table: "loose composition",
                key: format!("{} ; {}", self.loose[f.ix()].name, self.loose[g.ix()].name),
            })?;
            if self.loose_boundary(h) != (self.loose[f.ix()].src, self.loose[g.ix()].tgt) {
                return Err(Error::Boundary(format!("composite {}", self.loose[h.ix()].name)));
            }
        }
        for f in self.loose_arrows() {
            let (a, b) = self.loose_boundary(f);
            self.expect_square("tight identity", self.tight_id[f.ix()], f, f, c.id(a), c.id(b))?;
            let uf = self.comp(self.loose_id[a.ix()], f).expect("checked above");
            self.expect_square("left unitor", self.left_unitor[f.ix()], uf, f, c.id(a), c.id(b))?;
            let fu = self.comp(f, self.loose_id[b.ix()]).expect("checked above");
            self.expect_square("right unitor", self.right_unitor[f.ix()], fu, f, c.id(a), c.id(b))?;
        }
        for h in c.morphisms() {
            let (a, b) = (c.src(h), c.tgt(h));
            self.expect_square(
                "loose identity square",
                self.loose_id_square[h.ix()],
                self.loose_id[a.ix()],
                self.loose_id[b.ix()],
                h,
                h,
            )?;
        }
        for (a, b) in self.stackable() {
            let s = self.stacked(a, b).ok_or_else(|| Error::Missing { table: "stacking", key: self.describe(a) })?;
            let (sa, sb) = (&self.squares[a.ix()], &self.squares[b.ix()]);
            let left = c.comp(sb.left, sa.left);
            let right = c.comp(sb.right, sa.right);
            self.expect_square("stacking", s, sa.top, sb.bottom, left, right)?;
        }
        for (a, b) in self.pasteable() {
            let s = self.pasted(a, b).ok_or_else(|| Error::Missing { table: "pasting", key: self.describe(a) })?;
            let (sa, sb) = (&self.squares[a.ix()], &self.squares[b.ix()]);
            let top = self.comp(sa.top, sb.top).expect("checked above");
            let bottom = self.comp(sa.bottom, sb.bottom).expect("checked above");
            self.expect_square("pasting", s, top, bottom, sa.left, sb.right)?;
        }
        for (f, g, h) in self.composable_triples() {
            let s = self.associator.get(&(f, g, h)).copied().ok_or_else(|| Error::Missing {
                table: "associator",
                key: format!("{}, {}, {}", self.loose[f.ix()].name, self.loose[g.ix()].name, self.loose[h.ix()].name),
            })?;
            let top = self.comp(f, self.comp(g, h).expect("checked")).expect("checked");
            let bottom = self.comp(self.comp(f, g).expect("checked"), h).expect("checked");
            let (a, d) = (self.loose[f.ix()].src, self.loose[h.ix()].tgt);
            self.expect_square("associator", s, top, bottom, c.id(a), c.id(d))?;
        }
        Ok(())
    }

    /// A stacking inverse of a globular square, if any.
    pub fn inverse(&self, s: Sq) -> Option<Sq> {
        let sq = self.square(s);
        let (top, bottom) = (sq.top, sq.bottom);
        self.by_top[bottom.ix()].iter().copied().find(|&t| {
            self.square(t).bottom == top
                && self.stacked(s, t) == Some(self.tight_id[top.ix()])
                && self.stacked(t, s) == Some(self.tight_id[bottom.ix()])
        })
    }
}

impl fmt::Display for DoubleCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "double category({} objects, {} tight, {} loose, {} squares)",
            self.tight.num_objects(),
            self.tight.num_morphisms(),
            self.loose.len(),
            self.squares.len()
        )
    }
}

/// Collect per-instance verdicts computed in parallel into a tally, keeping
/// the first counterexample in enumeration order.
fn par_tally<T: Sync>(law: Law, items: &[T], check: impl Fn(&T) -> Option<Witness> + Sync) -> LawResult {
    let first = items.par_iter().enumerate().filter_map(|(i, t)| check(t).map(|w| (i, w))).min_by_key(|(i, _)| *i);
    LawResult { law, checked: items.len(), informational: false, witness: first.map(|(_, w)| w) }
}

const NONE: u32 = u32::MAX;

/// Array-backed copies of the stacking, pasting and associator tables for
/// the exhaustive loops. Rebuilt from the public maps on every check, so
/// edited tables are seen as edited.
struct Dense<'a> {
    d: &'a DoubleCategory,
    pos_top: Vec<u32>,
    pos_left: Vec<u32>,
    by_top_left: HashMap<(Loose, Mor), Vec<Sq>>,
    stack: Vec<Vec<u32>>,
    paste: Vec<Vec<u32>>,
    assoc: Option<Vec<u32>>,
}

impl<'a> Dense<'a> {
    fn new(d: &'a DoubleCategory) -> Self {
        let n = d.squares.len();
        let mut pos_top = vec![0; n];
        for list in &d.by_top {
            for (i, s) in list.iter().enumerate() {
                pos_top[s.ix()] = i as u32;
            }
        }
        let mut pos_left = vec![0; n];
        for list in &d.by_left {
            for (i, s) in list.iter().enumerate() {
                pos_left[s.ix()] = i as u32;
            }
        }
        let mut by_top_left: HashMap<(Loose, Mor), Vec<Sq>> = HashMap::new();
        for s in d.square_ids() {
            let sq = d.square(s);
            by_top_left.entry((sq.top, sq.left)).or_default().push(s);
        }
        let mut stack: Vec<Vec<u32>> = d.squares.iter().map(|s| vec![NONE; d.by_top[s.bottom.ix()].len()]).collect();
        for (&(a, b), &s) in &d.stack {
            if d.square(b).top == d.square(a).bottom {
                stack[a.ix()][pos_top[b.ix()] as usize] = s.0;
            }
        }
        let mut paste: Vec<Vec<u32>> = d.squares.iter().map(|s| vec![NONE; d.by_left[s.right.ix()].len()]).collect();
        for (&(a, b), &s) in &d.paste {
            if d.square(b).left == d.square(a).right {
                paste[a.ix()][pos_left[b.ix()] as usize] = s.0;
            }
        }
        let l = d.loose.len();
        let assoc = (l.pow(3) <= 1 << 24).then(|| {
            let mut v = vec![NONE; l.pow(3)];
            for (&(f, g, h), &s) in &d.associator {
                v[(f.ix() * l + g.ix()) * l + h.ix()] = s.0;
            }
            v
        });
        Dense { d, pos_top, pos_left, by_top_left, stack, paste, assoc }
    }

    fn stacked(&self, a: Sq, b: Sq) -> Option<Sq> {
        if self.d.squares[b.ix()].top != self.d.squares[a.ix()].bottom {
            return None;
        }
        let s = self.stack[a.ix()][self.pos_top[b.ix()] as usize];
        (s != NONE).then_some(Sq(s))
    }

    fn pasted(&self, a: Sq, b: Sq) -> Option<Sq> {
        if self.d.squares[b.ix()].left != self.d.squares[a.ix()].right {
            return None;
        }
        let s = self.paste[a.ix()][self.pos_left[b.ix()] as usize];
        (s != NONE).then_some(Sq(s))
    }

    fn associator(&self, f: Loose, g: Loose, h: Loose) -> Option<Sq> {
        match &self.assoc {
            Some(v) => {
                let l = self.d.loose.len();
                let s = v[(f.ix() * l + g.ix()) * l + h.ix()];
                (s != NONE).then_some(Sq(s))
            }
            None => self.d.associator.get(&(f, g, h)).copied(),
        }
    }

    fn with_top_left(&self, top: Loose, left: Mor) -> &[Sq] {
        self.by_top_left.get(&(top, left)).map_or(&[], |v| v.as_slice())
    }
}

/// The pseudocategory law suite: tight stacking is a category, loose
/// identities and composition are functorial, interchange holds strictly, and
/// the unitors and associator are natural, invertible and coherent.
pub fn check_double_category(d: &DoubleCategory) -> Result<Report> {
    let start = std::time::Instant::now();
    d.validate()?;
    let c = &*d.tight;
    let fast = Dense::new(d);
    let mut report = Report::new("double category");
    report.extend(check_category(c));
    let squares: Vec<Sq> = d.square_ids().collect();
    let name = |f: Loose| d.loose[f.ix()].name.as_str();

    report.push(par_tally(Law::DblStackUnit, &squares, |&s| {
        let sq = d.square(s);
        let ok = fast.stacked(d.tight_id[sq.top.ix()], s) == Some(s)
            && fast.stacked(s, d.tight_id[sq.bottom.ix()]) == Some(s);
        (!ok).then(|| witness! {"square" => d.describe(s)})
    }));

    let pairs = d.stackable();
    report.push(par_tally(Law::DblStackAssociativity, &pairs, |&(a, b)| {
        let ab = fast.stacked(a, b)?;
        d.squares_from(d.square(b).bottom).iter().find_map(|&x| {
            let lhs = fast.stacked(ab, x);
            let rhs = fast.stacked(b, x).and_then(|bx| fast.stacked(a, bx));
            (lhs != rhs).then(|| witness! {"a" => d.describe(a), "b" => d.describe(b), "c" => d.describe(x)})
        })
    }));

    let mut lid = Tally::new(Law::DblLooseIdentitySquares);
    for a in c.objects() {
        let ok = d.loose_id_square[c.id(a).ix()] == d.tight_id[d.loose_id[a.ix()].ix()];
        lid.record(ok, || witness! {"object" => c.obj_name(a)});
    }
    for h in c.morphisms() {
        for &k in c.outgoing(c.tgt(h)) {
            let lhs = d.loose_id_square[c.comp(k, h).ix()];
            let rhs = fast.stacked(d.loose_id_square[h.ix()], d.loose_id_square[k.ix()]);
            lid.record(rhs == Some(lhs), || witness! {"h" => c.mor_name(h), "k" => c.mor_name(k)});
        }
    }
    report.tally(lid);

    let lpairs = d.composable_loose();
    report.push(par_tally(Law::DblPasteIdentity, &lpairs, |&(f, g)| {
        let fg = d.comp(f, g)?;
        let ok = fast.pasted(d.tight_id[f.ix()], d.tight_id[g.ix()]) == Some(d.tight_id[fg.ix()]);
        (!ok).then(|| witness! {"f" => name(f), "g" => name(g)})
    }));

    let pastes = d.pasteable();
    report.push(par_tally(Law::DblInterchange, &pastes, |&(a, b)| {
        let ab = fast.pasted(a, b)?;
        let (sa, sb) = (d.square(a), d.square(b));
        for &x in d.squares_from(sa.bottom) {
            let ax = fast.stacked(a, x)?;
            for &y in fast.with_top_left(sb.bottom, d.square(x).right) {
                let lhs = fast.pasted(x, y).and_then(|xy| fast.stacked(ab, xy));
                let rhs = fast.stacked(b, y).and_then(|by| fast.pasted(ax, by));
                if lhs.is_none() || lhs != rhs {
                    return Some(witness! {
                        "top-left" => d.describe(a), "top-right" => d.describe(b),
                        "bottom-left" => d.describe(x), "bottom-right" => d.describe(y),
                    });
                }
            }
        }
        None
    }));

    report.push(par_tally(Law::DblUnitorNatural, &squares, |&s| {
        let sq = d.square(s);
        let left = fast.stacked(d.left_unitor[sq.top.ix()], s)
            == fast
                .pasted(d.loose_id_square[sq.left.ix()], s)
                .and_then(|us| fast.stacked(us, d.left_unitor[sq.bottom.ix()]));
        let right = fast.stacked(d.right_unitor[sq.top.ix()], s)
            == fast
                .pasted(s, d.loose_id_square[sq.right.ix()])
                .and_then(|su| fast.stacked(su, d.right_unitor[sq.bottom.ix()]));
        match (left, right) {
            (true, true) => None,
            (false, _) => Some(witness! {"unitor" => "left", "square" => d.describe(s)}),
            _ => Some(witness! {"unitor" => "right", "square" => d.describe(s)}),
        }
    }));

    report.push(par_tally(Law::DblAssociatorNatural, &pastes, |&(a, b)| {
        let (sa, sb) = (d.square(a), d.square(b));
        let ab = fast.pasted(a, b)?;
        for &x in &d.by_left[sb.right.ix()] {
            let sx = d.square(x);
            if d.loose[sx.top.ix()].src != d.loose[sb.top.ix()].tgt {
                continue;
            }
            let top = fast.associator(sa.top, sb.top, sx.top)?;
            let bottom = fast.associator(sa.bottom, sb.bottom, sx.bottom)?;
            let lhs = fast.pasted(ab, x).and_then(|abx| fast.stacked(top, abx));
            let rhs = fast.pasted(b, x).and_then(|bx| fast.pasted(a, bx)).and_then(|abx| fast.stacked(abx, bottom));
            if lhs.is_none() || lhs != rhs {
                return Some(witness! {"f" => d.describe(a), "g" => d.describe(b), "h" => d.describe(x)});
            }
        }
        None
    }));

    let loose: Vec<Loose> = d.loose_arrows().collect();
    let mut iso = Tally::new(Law::DblStructureIso);
    for &f in &loose {
        iso.record(d.inverse(d.left_unitor[f.ix()]).is_some(), || witness! {"cell" => "λ̂", "f" => name(f)});
        iso.record(d.inverse(d.right_unitor[f.ix()]).is_some(), || witness! {"cell" => "ρ̂", "f" => name(f)});
    }
    let mut triples: Vec<(Loose, Loose, Loose)> = d.associator.keys().copied().collect();
    triples.sort();
    let inverses: Vec<bool> = triples.par_iter().map(|k| d.inverse(d.associator[k]).is_some()).collect();
    for (k, ok) in triples.iter().zip(inverses) {
        iso.record(ok, || witness! {"cell" => "α̂", "f" => name(k.0), "g" => name(k.1), "h" => name(k.2)});
    }
    report.tally(iso);

    // α̂_{f,U,g} then ρ̂_f ⊙ 1_g equals 1_f ⊙ λ̂_g
    report.push(par_tally(Law::DblTriangle, &lpairs, |&(f, g)| {
        let u = d.loose_id[d.loose[f.ix()].tgt.ix()];
        let a = fast.associator(f, u, g)?;
        let lhs = fast.pasted(d.right_unitor[f.ix()], d.tight_id[g.ix()]).and_then(|r| fast.stacked(a, r));
        let rhs = fast.pasted(d.tight_id[f.ix()], d.left_unitor[g.ix()]);
        (lhs.is_none() || lhs != rhs).then(|| witness! {"f" => name(f), "g" => name(g)})
    }));

    let mut from: Vec<Vec<Loose>> = vec![Vec::new(); c.num_objects()];
    for f in d.loose_arrows() {
        from[d.loose[f.ix()].src.ix()].push(f);
    }
    report.push(par_tally(Law::DblPentagon, &triples, |&(f, g, h)| {
        for &k in &from[d.loose[h.ix()].tgt.ix()] {
            let (gh, hk, fg) = (d.comp(g, h)?, d.comp(h, k)?, d.comp(f, g)?);
            let lhs = fast.stacked(fast.associator(f, g, hk)?, fast.associator(fg, h, k)?);
            let rhs = fast
                .pasted(d.tight_id[f.ix()], fast.associator(g, h, k)?)
                .and_then(|s| fast.stacked(s, fast.associator(f, gh, k)?))
                .and_then(|s| fast.stacked(s, fast.pasted(fast.associator(f, g, h)?, d.tight_id[k.ix()])?));
            if lhs.is_none() || lhs != rhs {
                return Some(witness! {"f" => name(f), "g" => name(g), "h" => name(h), "k" => name(k)});
            }
        }
        None
    }));
    Ok(report.timed(start))
}

/// Strictness: every unitor and associator component is a tight identity
/// square. The witness names the first offending component.
pub fn is_strict(d: &DoubleCategory) -> (bool, Option<Witness>) {
    for f in d.loose_arrows() {
        if !d.is_tight_identity(d.right_unitor[f.ix()]) {
            return (false, Some(witness! {"cell" => "ρ̂", "f" => &d.loose[f.ix()].name}));
        }
        if !d.is_tight_identity(d.left_unitor[f.ix()]) {
            return (false, Some(witness! {"cell" => "λ̂", "f" => &d.loose[f.ix()].name}));
        }
    }
    let mut keys: Vec<_> = d.associator.keys().copied().collect();
    keys.sort();
    for k in keys {
        if !d.is_tight_identity(d.associator[&k]) {
            let w = witness! {"cell" => "α̂", "f" => &d.loose[k.0.ix()].name, "g" => &d.loose[k.1.ix()].name, "h" => &d.loose[k.2.ix()].name};
            return (false, Some(w));
        }
    }
    (true, None)
}

/// An explicit isomorphism of double categories: a tight functor that is an
/// isomorphism together with bijections on loose arrows and squares.
pub struct DoubleIso<'a> {
    pub src: &'a DoubleCategory,
    pub tgt: &'a DoubleCategory,
    pub objects: Vec<Obj>,
    pub tight: Vec<Mor>,
    pub loose: Vec<Loose>,
    pub squares: Vec<Sq>,
}

fn is_bijection<T: Copy + Eq + std::hash::Hash>(map: &[T], size: usize) -> bool {
    map.len() == size && map.iter().collect::<std::collections::HashSet<_>>().len() == size
}

/// Verify that the maps are bijections preserving boundaries and every
/// operation and structure cell.
pub fn check_double_iso(iso: &DoubleIso) -> Report {
    let (d, e) = (iso.src, iso.tgt);
    let (c, c2) = (&*d.tight, &*e.tight);
    let mut report = Report::new("double category isomorphism");

    let mut bij = Tally::new(Law::DblIsoBijection);
    bij.record(is_bijection(&iso.objects, c2.num_objects()), || witness! {"map" => "objects"});
    bij.record(is_bijection(&iso.tight, c2.num_morphisms()), || witness! {"map" => "tight"});
    bij.record(is_bijection(&iso.loose, e.loose.len()), || witness! {"map" => "loose"});
    bij.record(is_bijection(&iso.squares, e.squares.len()), || witness! {"map" => "squares"});
    let bijective = !bij.failed();
    report.tally(bij);
    if !bijective {
        return report;
    }

    let mut ops = Tally::new(Law::DblIsoOperations);
    for h in c.morphisms() {
        let th = iso.tight[h.ix()];
        let ok = c2.src(th) == iso.objects[c.src(h).ix()] && c2.tgt(th) == iso.objects[c.tgt(h).ix()];
        ops.record(ok, || witness! {"tight" => c.mor_name(h)});
        for &k in c.outgoing(c.tgt(h)) {
            let ok = c2.compose(iso.tight[k.ix()], th) == Some(iso.tight[c.comp(k, h).ix()]);
            ops.record(ok, || witness! {"tight" => c.mor_name(h), "then" => c.mor_name(k)});
        }
    }
    for a in c.objects() {
        ops.record(iso.tight[c.id(a).ix()] == c2.id(iso.objects[a.ix()]), || witness! {"identity" => c.obj_name(a)});
        let ok = iso.loose[d.loose_id[a.ix()].ix()] == e.loose_id[iso.objects[a.ix()].ix()];
        ops.record(ok, || witness! {"loose identity" => c.obj_name(a)});
    }
    for f in d.loose_arrows() {
        let (l, m) = (&d.loose[f.ix()], &e.loose[iso.loose[f.ix()].ix()]);
        let ok = m.src == iso.objects[l.src.ix()] && m.tgt == iso.objects[l.tgt.ix()];
        ops.record(ok, || witness! {"loose" => &l.name});
        let ok = iso.squares[d.tight_id[f.ix()].ix()] == e.tight_id[iso.loose[f.ix()].ix()];
        ops.record(ok, || witness! {"tight identity" => &l.name});
    }
    for s in d.square_ids() {
        let (x, y) = (d.square(s), e.square(iso.squares[s.ix()]));
        let ok = y.top == iso.loose[x.top.ix()]
            && y.bottom == iso.loose[x.bottom.ix()]
            && y.left == iso.tight[x.left.ix()]
            && y.right == iso.tight[x.right.ix()];
        ops.record(ok, || witness! {"square" => d.describe(s)});
    }
    for (&(f, g), &h) in &d.loose_comp {
        let ok = e.comp(iso.loose[f.ix()], iso.loose[g.ix()]) == Some(iso.loose[h.ix()]);
        ops.record(ok, || witness! {"composite" => &d.loose[h.ix()].name});
    }
    for (&(a, b), &s) in &d.stack {
        let ok = e.stacked(iso.squares[a.ix()], iso.squares[b.ix()]) == Some(iso.squares[s.ix()]);
        ops.record(ok, || witness! {"stack" => d.describe(a), "under" => d.describe(b)});
    }
    for (&(a, b), &s) in &d.paste {
        let ok = e.pasted(iso.squares[a.ix()], iso.squares[b.ix()]) == Some(iso.squares[s.ix()]);
        ops.record(ok, || witness! {"paste" => d.describe(a), "beside" => d.describe(b)});
    }
    for h in c.morphisms() {
        let ok = iso.squares[d.loose_id_square[h.ix()].ix()] == e.loose_id_square[iso.tight[h.ix()].ix()];
        ops.record(ok, || witness! {"loose identity square" => c.mor_name(h)});
    }
    report.tally(ops);

    let mut st = Tally::new(Law::DblIsoStructure);
    for f in d.loose_arrows() {
        let g = iso.loose[f.ix()];
        st.record(
            iso.squares[d.left_unitor[f.ix()].ix()] == e.left_unitor[g.ix()],
            || witness! {"λ̂" => &d.loose[f.ix()].name},
        );
        st.record(
            iso.squares[d.right_unitor[f.ix()].ix()] == e.right_unitor[g.ix()],
            || witness! {"ρ̂" => &d.loose[f.ix()].name},
        );
    }
    for (&(f, g, h), &s) in &d.associator {
        let key = (iso.loose[f.ix()], iso.loose[g.ix()], iso.loose[h.ix()]);
        let ok = e.associator.get(&key) == Some(&iso.squares[s.ix()]);
        st.record(ok, || witness! {"α̂" => d.describe(s)});
    }
    report.tally(st);
    report
}
