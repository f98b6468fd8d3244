//! Spans with a backward left leg and a forward right leg, composed by
//! chosen pullbacks.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::{check_double_iso, CtxDouble, DoubleCategory, DoubleIso, DoubleOps, Loose, LooseArrow, Sq, Square};
use crate::contextad::is_pullback;
use crate::fincat::{same_category, FinCategory, Mor, Obj};
use crate::report::{Error, Law, Report, Result, Tally};
use crate::witness;

/// `(C, forward, backward)` with a chosen pullback for every cospan of a
/// forward `f` and a backward `b`: `(f*b, top)` with `f*b` backward.
#[derive(Clone, Debug)]
pub struct AdequateTriple {
    pub cat: Arc<FinCategory>,
    pub forward: HashSet<Mor>,
    pub backward: HashSet<Mor>,
    pub pullbacks: HashMap<(Mor, Mor), (Mor, Mor)>,
}

impl AdequateTriple {
    pub fn pullback(&self, f: Mor, b: Mor) -> Result<(Mor, Mor)> {
        self.pullbacks.get(&(f, b)).copied().ok_or_else(|| Error::Missing {
            table: "chosen pullbacks",
            key: format!("({}, {})", self.cat.mor_name(f), self.cat.mor_name(b)),
        })
    }

    fn sorted(set: &HashSet<Mor>) -> Vec<Mor> {
        let mut v: Vec<Mor> = set.iter().copied().collect();
        v.sort();
        v
    }
}

/// Identities in both classes, closure of both under composition, and a
/// valid chosen pullback for every cospan. A missing or ill-shaped square is
/// structural.
pub fn check_adequate_triple(t: &AdequateTriple) -> Result<Report> {
    let c = &*t.cat;
    let mut report = Report::new("adequate triple");
    let mut ids = Tally::new(Law::TripleIdentities);
    for a in c.objects() {
        let i = c.id(a);
        ids.record(t.forward.contains(&i) && t.backward.contains(&i), || witness! {"object" => c.obj_name(a)});
    }
    report.tally(ids);

    let mut closure = Tally::new(Law::TripleClosure);
    for (class, set) in [("forward", &t.forward), ("backward", &t.backward)] {
        let ms = AdequateTriple::sorted(set);
        for &g in &ms {
            for &f in ms.iter().filter(|&&f| c.tgt(f) == c.src(g)) {
                closure.record(
                    set.contains(&c.comp(g, f)),
                    || witness! {"class" => class, "f" => c.mor_name(f), "g" => c.mor_name(g)},
                );
            }
        }
    }
    report.tally(closure);

    let mut pb = Tally::new(Law::TriplePullback);
    for &b in &AdequateTriple::sorted(&t.backward) {
        for &f in c.incoming(c.tgt(b)).iter().filter(|f| t.forward.contains(f)) {
            let (a, x) = t.pullback(f, b)?;
            if c.tgt(a) != c.src(f) || c.tgt(x) != c.src(b) || c.src(a) != c.src(x) {
                return Err(Error::ill_typed(
                    "chosen pullback",
                    format!("square for ({}, {}) has the wrong boundary", c.mor_name(f), c.mor_name(b)),
                ));
            }
            let ok = t.backward.contains(&a) && t.forward.contains(&x) && is_pullback(c, f, b, a, x);
            pb.record(ok, || witness! {"forward" => c.mor_name(f), "backward" => c.mor_name(b)});
        }
    }
    report.tally(pb);
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct SpanDouble {
    pub triple: AdequateTriple,
    pub dbl: DoubleCategory,
    /// Per loose arrow: `(backward leg, forward leg)`.
    pub legs: Vec<(Mor, Mor)>,
    /// Per square: the map of apexes.
    pub apex: Vec<Mor>,
    loose_index: HashMap<(Mor, Mor), Loose>,
    square_index: HashMap<(Loose, Loose, Mor, Mor, Mor), Sq>,
}

impl SpanDouble {
    pub fn loose_of(&self, backward: Mor, forward: Mor) -> Option<Loose> {
        self.loose_index.get(&(backward, forward)).copied()
    }

    pub fn square_of(&self, top: Loose, bottom: Loose, left: Mor, apex: Mor, right: Mor) -> Option<Sq> {
        self.square_index.get(&(top, bottom, left, apex, right)).copied()
    }
}

struct SpanOps<'a> {
    t: &'a AdequateTriple,
    legs: &'a [(Mor, Mor)],
    apex: &'a [Mor],
    squares: &'a [Square],
    loose_index: &'a HashMap<(Mor, Mor), Loose>,
    square_index: &'a HashMap<(Loose, Loose, Mor, Mor, Mor), Sq>,
}

impl SpanOps<'_> {
    fn c(&self) -> &FinCategory {
        &self.t.cat
    }

    fn loose(&self, b: Mor, f: Mor) -> Result<Loose> {
        self.loose_index.get(&(b, f)).copied().ok_or_else(|| Error::Missing {
            table: "spans",
            key: format!("({}, {})", self.c().mor_name(b), self.c().mor_name(f)),
        })
    }

    fn square(&self, top: Loose, bottom: Loose, left: Mor, apex: Mor, right: Mor) -> Result<Sq> {
        self.square_index.get(&(top, bottom, left, apex, right)).copied().ok_or_else(|| Error::Missing {
            table: "span squares",
            key: format!("apex map {}", self.c().describe(apex)),
        })
    }

    /// Chosen pullback of the composable pair: `(to first apex, to second apex)`.
    fn legs_of(&self, f: Loose, g: Loose) -> Result<(Mor, Mor)> {
        self.t.pullback(self.legs[f.ix()].1, self.legs[g.ix()].0)
    }

    /// The unique `u: src -> tgt` with `proj_t[i] ∘ u = proj_s[i]` for all `i`.
    fn induced(&self, src: Obj, tgt: Obj, proj_s: &[Mor], proj_t: &[Mor]) -> Result<Mor> {
        let c = self.c();
        let mut found =
            c.hom(src, tgt).filter(|&u| proj_s.iter().zip(proj_t).all(|(&s, &t)| c.compose(t, u) == Some(s)));
        match (found.next(), found.next()) {
            (Some(u), None) => Ok(u),
            _ => Err(Error::ill_typed(
                "span apex",
                format!("no unique induced map {} -> {}", c.obj_name(src), c.obj_name(tgt)),
            )),
        }
    }
}

impl DoubleOps for SpanOps<'_> {
    fn loose_id(&self, a: Obj) -> Result<Loose> {
        let i = self.c().id(a);
        self.loose(i, i)
    }

    fn loose_comp(&self, f: Loose, g: Loose) -> Result<Loose> {
        let (a, x) = self.legs_of(f, g)?;
        let c = self.c();
        self.loose(c.comp(self.legs[f.ix()].0, a), c.comp(self.legs[g.ix()].1, x))
    }

    fn stack(&self, upper: Sq, lower: Sq) -> Result<Sq> {
        let (s, t) = (&self.squares[upper.ix()], &self.squares[lower.ix()]);
        let c = self.c();
        let apex = c.comp(self.apex[lower.ix()], self.apex[upper.ix()]);
        self.square(s.top, t.bottom, c.comp(t.left, s.left), apex, c.comp(t.right, s.right))
    }

    fn paste(&self, left: Sq, right: Sq) -> Result<Sq> {
        let (s, t) = (&self.squares[left.ix()], &self.squares[right.ix()]);
        let c = self.c();
        let (a, x) = self.legs_of(s.top, t.top)?;
        let (a2, x2) = self.legs_of(s.bottom, t.bottom)?;
        let proj_s = [c.comp(self.apex[left.ix()], a), c.comp(self.apex[right.ix()], x)];
        let u = self.induced(c.src(a), c.src(a2), &proj_s, &[a2, x2])?;
        let top = self.loose_comp(s.top, t.top)?;
        let bottom = self.loose_comp(s.bottom, t.bottom)?;
        self.square(top, bottom, s.left, u, t.right)
    }

    fn tight_id(&self, f: Loose) -> Result<Sq> {
        let c = self.c();
        let (b, g) = self.legs[f.ix()];
        self.square(f, f, c.id(c.tgt(b)), c.id(c.src(b)), c.id(c.tgt(g)))
    }

    fn loose_id_square(&self, h: Mor) -> Result<Sq> {
        let c = self.c();
        self.square(self.loose_id(c.src(h))?, self.loose_id(c.tgt(h))?, h, h, h)
    }

    fn left_unitor(&self, f: Loose) -> Result<Sq> {
        let c = self.c();
        let (b, g) = self.legs[f.ix()];
        let u = self.loose_id(c.tgt(b))?;
        let (_, x) = self.legs_of(u, f)?;
        self.square(self.loose_comp(u, f)?, f, c.id(c.tgt(b)), x, c.id(c.tgt(g)))
    }

    fn right_unitor(&self, f: Loose) -> Result<Sq> {
        let c = self.c();
        let (b, g) = self.legs[f.ix()];
        let u = self.loose_id(c.tgt(g))?;
        let (a, _) = self.legs_of(f, u)?;
        self.square(self.loose_comp(f, u)?, f, c.id(c.tgt(b)), a, c.id(c.tgt(g)))
    }

    fn associator(&self, f: Loose, g: Loose, h: Loose) -> Result<Sq> {
        let c = self.c();
        let gh = self.loose_comp(g, h)?;
        let (q1, q2) = self.legs_of(g, h)?;
        let (t1, t2) = self.legs_of(f, gh)?;
        let fg = self.loose_comp(f, g)?;
        let (r1, r2) = self.legs_of(f, g)?;
        let (s1, s2) = self.legs_of(fg, h)?;
        let proj_t = [c.comp(r1, s1), c.comp(r2, s1), s2];
        let proj_s = [t1, c.comp(q1, t2), c.comp(q2, t2)];
        let u = self.induced(c.src(t1), c.src(s1), &proj_s, &proj_t)?;
        let (a, d) = (c.tgt(self.legs[f.ix()].0), c.tgt(self.legs[h.ix()].1));
        self.square(self.loose_comp(f, gh)?, self.loose_comp(fg, h)?, c.id(a), u, c.id(d))
    }
}

/// The double category of spans of an adequate triple; the triple must pass
/// [`check_adequate_triple`].
pub fn span_double_category(
    cat: Arc<FinCategory>,
    forward: HashSet<Mor>,
    backward: HashSet<Mor>,
    pullbacks: HashMap<(Mor, Mor), (Mor, Mor)>,
) -> Result<SpanDouble> {
    let t = AdequateTriple { cat, forward, backward, pullbacks };
    check_adequate_triple(&t)?.into_result()?;
    let c = t.cat.clone();

    let mut loose = Vec::new();
    let mut legs = Vec::new();
    let mut loose_index = HashMap::new();
    let mut by_apex: Vec<Vec<Loose>> = vec![Vec::new(); c.num_objects()];
    for &b in &AdequateTriple::sorted(&t.backward) {
        for &f in c.outgoing(c.src(b)).iter().filter(|f| t.forward.contains(f)) {
            let id = Loose(loose.len() as u32);
            loose.push(LooseArrow {
                name: format!("({}, {})", c.mor_name(b), c.mor_name(f)),
                src: c.tgt(b),
                tgt: c.tgt(f),
            });
            legs.push((b, f));
            loose_index.insert((b, f), id);
            by_apex[c.src(b).ix()].push(id);
        }
    }

    let mut squares = Vec::new();
    let mut apex = Vec::new();
    let mut square_index = HashMap::new();
    for u in c.morphisms() {
        for &top in &by_apex[c.src(u).ix()] {
            let (b, f) = legs[top.ix()];
            for &bottom in &by_apex[c.tgt(u).ix()] {
                let (b2, f2) = legs[bottom.ix()];
                let (lb, rb) = (c.comp(b2, u), c.comp(f2, u));
                for h in c.hom(c.tgt(b), c.tgt(b2)).filter(|&h| c.comp(h, b) == lb) {
                    for k in c.hom(c.tgt(f), c.tgt(f2)).filter(|&k| c.comp(k, f) == rb) {
                        let id = Sq(squares.len() as u32);
                        squares.push(Square {
                            name: format!("[{}, {}, {}]", c.mor_name(h), c.mor_name(u), c.mor_name(k)),
                            top,
                            bottom,
                            left: h,
                            right: k,
                        });
                        apex.push(u);
                        square_index.insert((top, bottom, h, u, k), id);
                    }
                }
            }
        }
    }

    let ops = SpanOps {
        t: &t,
        legs: &legs,
        apex: &apex,
        squares: &squares,
        loose_index: &loose_index,
        square_index: &square_index,
    };
    let dbl = DoubleCategory::tabulate(c.clone(), loose, squares.clone(), &ops)?;
    Ok(SpanDouble { triple: t, dbl, legs, apex, loose_index, square_index })
}

/// The identity-on-tight comparison from the contextful arrows of a
/// display-map contextad to the spans with all forward arrows: a grade is a
/// display map `d`, so `(d, f)` is a span, and a grade morphism `[u, h]` is
/// the apex map `u` over `h`. Verified to be an isomorphism.
pub fn span_ctx_iso(ctx: &CtxDouble, span: &SpanDouble) -> Result<Report> {
    let (x, c) = (&*ctx.x, ctx.x.base());
    if !same_category(x.base(), &span.triple.cat) {
        return Err(Error::Boundary("the contextad and the triple have different base categories".into()));
    }
    let m = x.total();
    let display_of = |p: Obj| {
        c.mor(m.obj_name(p)).ok_or_else(|| Error::ill_typed("display grade", format!("{} names no map", m.obj_name(p))))
    };
    let mut loose = Vec::with_capacity(ctx.loose_data.len());
    for &(p, f) in &ctx.loose_data {
        let d = display_of(p)?;
        let l = span
            .loose_of(d, f)
            .ok_or_else(|| Error::Missing { table: "spans", key: format!("({}, {})", c.mor_name(d), c.mor_name(f)) })?;
        loose.push(l);
    }
    let mut squares = Vec::with_capacity(ctx.payload.len());
    for (s, &phi) in ctx.dbl.squares.iter().zip(&ctx.payload) {
        let u = x.act.mor(phi);
        let image = span
            .square_of(loose[s.top.ix()], loose[s.bottom.ix()], s.left, u, s.right)
            .ok_or_else(|| Error::Missing { table: "span squares", key: s.name.clone() })?;
        squares.push(image);
    }
    let iso = DoubleIso {
        src: &ctx.dbl,
        tgt: &span.dbl,
        objects: c.objects().collect(),
        tight: c.morphisms().collect(),
        loose,
        squares,
    };
    Ok(check_double_iso(&iso))
}
