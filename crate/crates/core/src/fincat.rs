//! Finite categories as explicit tables, functors, natural transformations,
//! and the strict limits (arrow categories, pullbacks) used to compose spans.
//!
//! Objects and morphisms are addressed by dense indices ([`Obj`], [`Mor`]);
//! names are unique per category and are what witnesses print.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::report::{Error, Law, Report, Result, Tally};
use crate::witness;

/// Default soft cap on the number of morphisms of any category built.
pub const DEFAULT_MAX_MORPHISMS: usize = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Obj(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mor(pub u32);

impl Obj {
    pub fn ix(self) -> usize {
        self.0 as usize
    }
}

impl Mor {
    pub fn ix(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismRecord {
    pub name: String,
    pub src: Obj,
    pub tgt: Obj,
}

/// A finite category with an explicit composition table.
#[derive(Clone, Debug)]
pub struct FinCategory {
    objects: Vec<String>,
    obj_ix: HashMap<String, Obj>,
    morphisms: Vec<MorphismRecord>,
    mor_ix: HashMap<String, Mor>,
    identity: Vec<Mor>,
    compose: HashMap<(Mor, Mor), Mor>,
    into: Vec<Vec<Mor>>,
    out: Vec<Vec<Mor>>,
    max_morphisms: usize,
}

impl PartialEq for FinCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identity == other.identity
            && self.compose == other.compose
    }
}

impl Eq for FinCategory {}

/// Incremental construction of a [`FinCategory`]; the composition table is
/// supplied at the end as a function on indices.
#[derive(Debug, Default)]
pub struct CatBuilder {
    objects: Vec<String>,
    obj_ix: HashMap<String, Obj>,
    morphisms: Vec<MorphismRecord>,
    mor_ix: HashMap<String, Mor>,
    identity: Vec<Option<Mor>>,
    max_morphisms: usize,
}

impl CatBuilder {
    pub fn new() -> Self {
        CatBuilder { max_morphisms: DEFAULT_MAX_MORPHISMS, ..Default::default() }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.max_morphisms = cap;
        self
    }

    pub fn object(&mut self, name: impl Into<String>) -> Result<Obj> {
        let name = name.into();
        if self.obj_ix.contains_key(&name) {
            return Err(Error::Duplicate { kind: "object", name });
        }
        let o = Obj(self.objects.len() as u32);
        self.obj_ix.insert(name.clone(), o);
        self.objects.push(name);
        self.identity.push(None);
        Ok(o)
    }

    pub fn morphism(&mut self, name: impl Into<String>, src: Obj, tgt: Obj) -> Result<Mor> {
        let name = name.into();
        if self.mor_ix.contains_key(&name) {
            return Err(Error::Duplicate { kind: "morphism", name });
        }
        if self.morphisms.len() >= self.max_morphisms {
            return Err(Error::SizeCap {
                what: "category".into(),
                size: self.morphisms.len() + 1,
                cap: self.max_morphisms,
            });
        }
        let m = Mor(self.morphisms.len() as u32);
        self.mor_ix.insert(name.clone(), m);
        self.morphisms.push(MorphismRecord { name, src, tgt });
        Ok(m)
    }

    /// Adds `name: o -> o` and records it as the identity of `o`.
    pub fn identity(&mut self, name: impl Into<String>, o: Obj) -> Result<Mor> {
        let m = self.morphism(name, o, o)?;
        self.identity[o.ix()] = Some(m);
        Ok(m)
    }

    pub fn set_identity(&mut self, o: Obj, m: Mor) {
        self.identity[o.ix()] = Some(m);
    }

    pub fn obj(&self, name: &str) -> Option<Obj> {
        self.obj_ix.get(name).copied()
    }

    pub fn mor(&self, name: &str) -> Option<Mor> {
        self.mor_ix.get(name).copied()
    }

    pub fn src(&self, m: Mor) -> Obj {
        self.morphisms[m.ix()].src
    }

    pub fn tgt(&self, m: Mor) -> Obj {
        self.morphisms[m.ix()].tgt
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    /// Tabulate `compose(g, f)` for every pair with `src g = tgt f`.
    pub fn finish(self, mut compose: impl FnMut(Mor, Mor) -> Option<Mor>) -> Result<FinCategory> {
        let CatBuilder { objects, obj_ix, morphisms, mor_ix, identity, max_morphisms } = self;
        let identity = identity
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.ok_or_else(|| Error::Missing { table: "identity", key: objects[i].clone() }))
            .collect::<Result<Vec<_>>>()?;
        let mut into = vec![Vec::new(); objects.len()];
        let mut out = vec![Vec::new(); objects.len()];
        for (i, r) in morphisms.iter().enumerate() {
            into[r.tgt.ix()].push(Mor(i as u32));
            out[r.src.ix()].push(Mor(i as u32));
        }
        let mut table = HashMap::new();
        for (fi, f) in morphisms.iter().enumerate() {
            for &g in &out[f.tgt.ix()] {
                let f = Mor(fi as u32);
                match compose(g, f) {
                    Some(h) => {
                        table.insert((g, f), h);
                    }
                    None => {
                        return Err(Error::Missing {
                            table: "composition",
                            key: format!("({}, {})", morphisms[g.ix()].name, morphisms[f.ix()].name),
                        })
                    }
                }
            }
        }
        Ok(FinCategory { objects, obj_ix, morphisms, mor_ix, identity, compose: table, into, out, max_morphisms })
    }
}

impl FinCategory {
    /// Build from name tables, checking only that every reference resolves
    /// and that the identity and composition tables are complete.
    pub fn from_tables(
        objects: &[String],
        morphisms: &[(String, String, String)],
        identity: &[(String, String)],
        compose: &[((String, String), String)],
        cap: usize,
    ) -> Result<FinCategory> {
        let mut b = CatBuilder::new().with_cap(cap);
        for o in objects {
            b.object(o.clone())?;
        }
        let resolve_obj =
            |b: &CatBuilder, n: &str| b.obj(n).ok_or_else(|| Error::Dangling { kind: "object", name: n.to_owned() });
        for (name, s, t) in morphisms {
            let (s, t) = (resolve_obj(&b, s)?, resolve_obj(&b, t)?);
            b.morphism(name.clone(), s, t)?;
        }
        let resolve_mor =
            |b: &CatBuilder, n: &str| b.mor(n).ok_or_else(|| Error::Dangling { kind: "morphism", name: n.to_owned() });
        for (o, m) in identity {
            let (o, m) = (resolve_obj(&b, o)?, resolve_mor(&b, m)?);
            b.set_identity(o, m);
        }
        let mut table = HashMap::new();
        for ((g, f), h) in compose {
            let key = (resolve_mor(&b, g)?, resolve_mor(&b, f)?);
            table.insert(key, resolve_mor(&b, h)?);
        }
        b.finish(|g, f| table.get(&(g, f)).copied())
    }

    pub fn max_morphisms(&self) -> usize {
        self.max_morphisms
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.max_morphisms = cap;
        self
    }

    fn builder_like(&self, others: &[&FinCategory]) -> CatBuilder {
        let cap = others.iter().map(|c| c.max_morphisms).fold(self.max_morphisms, usize::max);
        CatBuilder::new().with_cap(cap)
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = Obj> + Clone {
        (0..self.objects.len() as u32).map(Obj)
    }

    pub fn morphisms(&self) -> impl ExactSizeIterator<Item = Mor> + Clone {
        (0..self.morphisms.len() as u32).map(Mor)
    }

    pub fn obj_name(&self, o: Obj) -> &str {
        &self.objects[o.ix()]
    }

    pub fn mor_name(&self, m: Mor) -> &str {
        &self.morphisms[m.ix()].name
    }

    pub fn obj(&self, name: &str) -> Option<Obj> {
        self.obj_ix.get(name).copied()
    }

    pub fn mor(&self, name: &str) -> Option<Mor> {
        self.mor_ix.get(name).copied()
    }

    pub fn src(&self, m: Mor) -> Obj {
        self.morphisms[m.ix()].src
    }

    pub fn tgt(&self, m: Mor) -> Obj {
        self.morphisms[m.ix()].tgt
    }

    pub fn id(&self, o: Obj) -> Mor {
        self.identity[o.ix()]
    }

    pub fn is_identity(&self, m: Mor) -> bool {
        self.identity[self.src(m).ix()] == m
    }

    /// `g ∘ f`, if the pair is composable.
    pub fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        self.compose.get(&(g, f)).copied()
    }

    /// `g ∘ f`; panics on a non-composable pair, which is a caller bug.
    pub fn comp(&self, g: Mor, f: Mor) -> Mor {
        match self.compose(g, f) {
            Some(h) => h,
            None => panic!("composing non-composable pair ({}, {})", self.mor_name(g), self.mor_name(f)),
        }
    }

    /// Composite of a path given in diagrammatic order (first arrow first).
    pub fn path(&self, ms: &[Mor]) -> Mor {
        let mut it = ms.iter().copied();
        let first = it.next().expect("empty path");
        it.fold(first, |acc, m| self.comp(m, acc))
    }

    /// `ms[0] ∘ ms[1] ∘ ...`, or `None` if some adjacent pair does not compose.
    pub fn compose_all(&self, ms: &[Mor]) -> Option<Mor> {
        let (&last, rest) = ms.split_last()?;
        rest.iter().rev().try_fold(last, |acc, &g| self.compose(g, acc))
    }

    /// Morphisms with the given target.
    pub fn incoming(&self, o: Obj) -> &[Mor] {
        &self.into[o.ix()]
    }

    /// Morphisms with the given source.
    pub fn outgoing(&self, o: Obj) -> &[Mor] {
        &self.out[o.ix()]
    }

    pub fn hom(&self, a: Obj, b: Obj) -> impl Iterator<Item = Mor> + '_ {
        self.out[a.ix()].iter().copied().filter(move |&m| self.tgt(m) == b)
    }

    pub fn inverse(&self, m: Mor) -> Option<Mor> {
        let (a, b) = (self.src(m), self.tgt(m));
        self.hom(b, a).find(|&g| self.compose(g, m) == Some(self.id(a)) && self.compose(m, g) == Some(self.id(b)))
    }

    pub fn is_iso(&self, m: Mor) -> bool {
        self.inverse(m).is_some()
    }

    pub fn describe(&self, m: Mor) -> String {
        let r = &self.morphisms[m.ix()];
        format!("{}: {} -> {}", r.name, self.objects[r.src.ix()], self.objects[r.tgt.ix()])
    }

    // ---- small builders ----

    pub fn terminal() -> FinCategory {
        FinCategory::discrete(&["*"])
    }

    pub fn empty() -> FinCategory {
        CatBuilder::new().finish(|_, _| None).expect("empty category")
    }

    /// Discrete category; identities are named `id_<object>`.
    pub fn discrete<S: AsRef<str>>(names: &[S]) -> FinCategory {
        let mut b = CatBuilder::new();
        for n in names {
            let o = b.object(n.as_ref()).expect("distinct names");
            b.identity(format!("id_{}", n.as_ref()), o).expect("fresh identity");
        }
        b.finish(|g, f| if g == f { Some(g) } else { None }).expect("discrete category")
    }

    /// Poset on `elements` with order `leq`; the unique arrow `a -> b` is
    /// named `a<=b`.
    pub fn poset<S: AsRef<str>>(elements: &[S], leq: impl Fn(usize, usize) -> bool) -> Result<FinCategory> {
        let mut b = CatBuilder::new();
        let objs: Vec<Obj> = elements.iter().map(|e| b.object(e.as_ref())).collect::<Result<_>>()?;
        let mut arrow = HashMap::new();
        for (i, a) in elements.iter().enumerate() {
            for (j, c) in elements.iter().enumerate() {
                if leq(i, j) {
                    let name = format!("{}<={}", a.as_ref(), c.as_ref());
                    let m = if i == j { b.identity(name, objs[i])? } else { b.morphism(name, objs[i], objs[j])? };
                    arrow.insert((i, j), m);
                }
            }
        }
        let ends: Vec<(usize, usize)> = {
            let mut v = vec![(0, 0); arrow.len()];
            for (&k, &m) in &arrow {
                v[m.ix()] = k;
            }
            v
        };
        b.finish(|g, f| arrow.get(&(ends[f.ix()].0, ends[g.ix()].1)).copied())
    }

    /// One-object category of a finite monoid; `mult(a, b)` is `a·b`, read as
    /// the composite `a ∘ b`.
    pub fn delooping<S: AsRef<str>>(
        object: &str,
        elements: &[S],
        unit: usize,
        mult: impl Fn(usize, usize) -> usize,
    ) -> Result<FinCategory> {
        let mut b = CatBuilder::new();
        let o = b.object(object)?;
        for (i, e) in elements.iter().enumerate() {
            b.morphism(e.as_ref(), o, o)?;
            if i == unit {
                b.set_identity(o, Mor(i as u32));
            }
        }
        b.finish(|g, f| Some(Mor(mult(g.ix(), f.ix()) as u32)))
    }

    /// Walking arrow `0 -> 1`.
    pub fn walking_arrow() -> FinCategory {
        FinCategory::poset(&["0", "1"], |a, b| a <= b).expect("walking arrow")
    }

    /// Two objects with a unique isomorphism between them.
    pub fn walking_iso() -> FinCategory {
        FinCategory::poset(&["0", "1"], |_, _| true).expect("walking iso")
    }

    // ---- derived categories ----

    pub fn opposite(&self) -> FinCategory {
        let mut b = self.builder_like(&[]);
        for o in self.objects() {
            b.object(self.obj_name(o)).expect("copy");
        }
        for m in self.morphisms() {
            b.morphism(self.mor_name(m), self.tgt(m), self.src(m)).expect("copy");
        }
        for o in self.objects() {
            b.set_identity(o, self.id(o));
        }
        b.finish(|g, f| self.compose(f, g)).expect("opposite of a complete table")
    }

    /// Product category with its projections; objects and morphisms are
    /// named `(a|b)`.
    pub fn product(c: &Arc<FinCategory>, d: &Arc<FinCategory>) -> Result<(Arc<FinCategory>, FinFunctor, FinFunctor)> {
        let one = Arc::new(FinCategory::terminal());
        let f = FinFunctor::constant(c.clone(), one.clone(), Obj(0));
        let g = FinFunctor::constant(d.clone(), one, Obj(0));
        pullback_category(&f, &g)
    }
}

impl fmt::Display for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "category({} objects, {} morphisms)", self.num_objects(), self.num_morphisms())
    }
}

/// Exhaustively check the category axioms.
pub fn check_category(c: &FinCategory) -> Report {
    let mut report = Report::new("category");
    let mut ids = Tally::new(Law::CatIdentityTyping);
    for o in c.objects() {
        let i = c.id(o);
        ids.record(
            c.src(i) == o && c.tgt(i) == o,
            || witness! {"object" => c.obj_name(o), "identity" => c.describe(i)},
        );
    }
    let mut typing = Tally::new(Law::CatCompositeTyping);
    let mut left = Tally::new(Law::CatLeftUnit);
    let mut right = Tally::new(Law::CatRightUnit);
    for f in c.morphisms() {
        for &g in c.outgoing(c.tgt(f)) {
            let h = c.comp(g, f);
            typing.record(c.src(h) == c.src(f) && c.tgt(h) == c.tgt(g), || {
                witness! {"g" => c.mor_name(g), "f" => c.mor_name(f), "g.f" => c.describe(h)}
            });
        }
        let l = c.compose(c.id(c.tgt(f)), f);
        left.record(l == Some(f), || witness! {"f" => c.mor_name(f)});
        let r = c.compose(f, c.id(c.src(f)));
        right.record(r == Some(f), || witness! {"f" => c.mor_name(f)});
    }
    let mut assoc = Tally::new(Law::CatAssociativity);
    if !typing.failed() {
        for f in c.morphisms() {
            for &g in c.outgoing(c.tgt(f)) {
                let gf = c.comp(g, f);
                for &h in c.outgoing(c.tgt(g)) {
                    let lhs = c.compose(h, gf);
                    let rhs = c.compose(c.comp(h, g), f);
                    assoc.record(lhs.is_some() && lhs == rhs, || {
                        witness! {"h" => c.mor_name(h), "g" => c.mor_name(g), "f" => c.mor_name(f)}
                    });
                }
            }
        }
    }
    report.tally(ids);
    report.tally(typing);
    report.tally(left);
    report.tally(right);
    report.tally(assoc);
    report
}

/// A functor between finite categories, stored as two lookup tables.
#[derive(Clone, Debug)]
pub struct FinFunctor {
    pub dom: Arc<FinCategory>,
    pub cod: Arc<FinCategory>,
    obj_map: Vec<Obj>,
    mor_map: Vec<Mor>,
}

impl FinFunctor {
    pub fn new(
        dom: Arc<FinCategory>,
        cod: Arc<FinCategory>,
        obj_map: Vec<Obj>,
        mor_map: Vec<Mor>,
    ) -> Result<FinFunctor> {
        if obj_map.len() != dom.num_objects() || mor_map.len() != dom.num_morphisms() {
            return Err(Error::ill_typed("functor", "tables do not cover the domain"));
        }
        if obj_map.iter().any(|o| o.ix() >= cod.num_objects()) || mor_map.iter().any(|m| m.ix() >= cod.num_morphisms())
        {
            return Err(Error::ill_typed("functor", "tables leave the codomain"));
        }
        Ok(FinFunctor { dom, cod, obj_map, mor_map })
    }

    /// Tabulate a functor from closures on indices.
    pub fn tabulate(
        dom: Arc<FinCategory>,
        cod: Arc<FinCategory>,
        obj: impl Fn(Obj) -> Obj,
        mor: impl Fn(Mor) -> Mor,
    ) -> FinFunctor {
        let obj_map = dom.objects().map(&obj).collect();
        let mor_map = dom.morphisms().map(&mor).collect();
        FinFunctor { dom, cod, obj_map, mor_map }
    }

    /// Build from name pairs; every domain element must be mapped.
    pub fn from_names(
        dom: Arc<FinCategory>,
        cod: Arc<FinCategory>,
        objs: &[(String, String)],
        mors: &[(String, String)],
    ) -> Result<FinFunctor> {
        let mut obj_map = vec![None; dom.num_objects()];
        for (a, b) in objs {
            let a = dom.obj(a).ok_or_else(|| Error::Dangling { kind: "object", name: a.clone() })?;
            let b = cod.obj(b).ok_or_else(|| Error::Dangling { kind: "object", name: b.clone() })?;
            obj_map[a.ix()] = Some(b);
        }
        let mut mor_map = vec![None; dom.num_morphisms()];
        for (a, b) in mors {
            let a = dom.mor(a).ok_or_else(|| Error::Dangling { kind: "morphism", name: a.clone() })?;
            let b = cod.mor(b).ok_or_else(|| Error::Dangling { kind: "morphism", name: b.clone() })?;
            mor_map[a.ix()] = Some(b);
        }
        let obj_map = obj_map
            .into_iter()
            .enumerate()
            .map(|(i, o)| {
                o.ok_or_else(|| Error::Missing {
                    table: "functor object map",
                    key: dom.obj_name(Obj(i as u32)).to_owned(),
                })
            })
            .collect::<Result<_>>()?;
        let mor_map = mor_map
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                m.ok_or_else(|| Error::Missing {
                    table: "functor morphism map",
                    key: dom.mor_name(Mor(i as u32)).to_owned(),
                })
            })
            .collect::<Result<_>>()?;
        FinFunctor::new(dom, cod, obj_map, mor_map)
    }

    pub fn identity(c: Arc<FinCategory>) -> FinFunctor {
        FinFunctor::tabulate(c.clone(), c, |o| o, |m| m)
    }

    pub fn constant(dom: Arc<FinCategory>, cod: Arc<FinCategory>, o: Obj) -> FinFunctor {
        let i = cod.id(o);
        FinFunctor::tabulate(dom, cod, |_| o, |_| i)
    }

    pub fn obj(&self, o: Obj) -> Obj {
        self.obj_map[o.ix()]
    }

    pub fn mor(&self, m: Mor) -> Mor {
        self.mor_map[m.ix()]
    }

    pub fn obj_table(&self) -> &[Obj] {
        &self.obj_map
    }

    pub fn mor_table(&self) -> &[Mor] {
        &self.mor_map
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FinFunctor) -> Result<FinFunctor> {
        if !same_category(&self.cod, &next.dom) {
            return Err(Error::Boundary("functor composite: codomain differs from domain".into()));
        }
        Ok(FinFunctor::tabulate(
            self.dom.clone(),
            next.cod.clone(),
            |o| next.obj(self.obj(o)),
            |m| next.mor(self.mor(m)),
        ))
    }

    /// The same tables read between opposite categories.
    pub fn opposite(&self, dom_op: Arc<FinCategory>, cod_op: Arc<FinCategory>) -> FinFunctor {
        FinFunctor { dom: dom_op, cod: cod_op, obj_map: self.obj_map.clone(), mor_map: self.mor_map.clone() }
    }

    /// Extensional equality, including boundaries.
    pub fn same_as(&self, other: &FinFunctor) -> bool {
        same_category(&self.dom, &other.dom)
            && same_category(&self.cod, &other.cod)
            && self.obj_map == other.obj_map
            && self.mor_map == other.mor_map
    }

    pub fn check(&self) -> Report {
        check_functor(self)
    }
}

pub fn same_category(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub fn check_functor(f: &FinFunctor) -> Report {
    let (c, d) = (&f.dom, &f.cod);
    let mut report = Report::new("functor");
    let mut typing = Tally::new(Law::FunctorTyping);
    for m in c.morphisms() {
        let fm = f.mor(m);
        typing.record(d.src(fm) == f.obj(c.src(m)) && d.tgt(fm) == f.obj(c.tgt(m)), || {
            witness! {"morphism" => c.describe(m), "image" => d.describe(fm)}
        });
    }
    let mut ids = Tally::new(Law::FunctorIdentity);
    for o in c.objects() {
        ids.record(f.mor(c.id(o)) == d.id(f.obj(o)), || witness! {"object" => c.obj_name(o)});
    }
    let mut comp = Tally::new(Law::FunctorComposition);
    if !typing.failed() {
        for g in c.morphisms() {
            for &h in c.outgoing(c.tgt(g)) {
                let lhs = f.mor(c.comp(h, g));
                let rhs = d.compose(f.mor(h), f.mor(g));
                comp.record(rhs == Some(lhs), || witness! {"g" => c.mor_name(h), "f" => c.mor_name(g)});
            }
        }
    }
    report.tally(typing);
    report.tally(ids);
    report.tally(comp);
    report
}

/// A natural transformation `src ⇒ tgt` given by its components.
#[derive(Clone, Debug)]
pub struct NatTrans {
    pub src: FinFunctor,
    pub tgt: FinFunctor,
    components: Vec<Mor>,
}

impl NatTrans {
    pub fn new(src: FinFunctor, tgt: FinFunctor, components: Vec<Mor>) -> Result<NatTrans> {
        if !same_category(&src.dom, &tgt.dom) || !same_category(&src.cod, &tgt.cod) {
            return Err(Error::Boundary("transformation between non-parallel functors".into()));
        }
        if components.len() != src.dom.num_objects() {
            return Err(Error::ill_typed("transformation", "components do not cover the objects"));
        }
        Ok(NatTrans { src, tgt, components })
    }

    pub fn tabulate(src: FinFunctor, tgt: FinFunctor, comp: impl Fn(Obj) -> Mor) -> Result<NatTrans> {
        let components = src.dom.objects().map(comp).collect();
        NatTrans::new(src, tgt, components)
    }

    pub fn identity(f: FinFunctor) -> NatTrans {
        let comps = f.dom.objects().map(|o| f.cod.id(f.obj(o))).collect();
        NatTrans { src: f.clone(), tgt: f, components: comps }
    }

    pub fn at(&self, o: Obj) -> Mor {
        self.components[o.ix()]
    }

    pub fn components(&self) -> &[Mor] {
        &self.components
    }

    pub fn set(&mut self, o: Obj, m: Mor) {
        self.components[o.ix()] = m;
    }

    pub fn check(&self) -> Report {
        check_nat_trans(self)
    }
}

/// Component typing and every naturality square.
pub fn check_nat_trans(t: &NatTrans) -> Report {
    let (c, d) = (&t.src.dom, &t.src.cod);
    let mut report = Report::new("natural transformation");
    let mut typing = Tally::new(Law::NatTransTyping);
    for o in c.objects() {
        let m = t.at(o);
        typing.record(d.src(m) == t.src.obj(o) && d.tgt(m) == t.tgt.obj(o), || {
            witness! {"object" => c.obj_name(o), "component" => d.describe(m)}
        });
    }
    let mut nat = Tally::new(Law::Naturality);
    if !typing.failed() {
        for m in c.morphisms() {
            let lhs = d.compose(t.at(c.tgt(m)), t.src.mor(m));
            let rhs = d.compose(t.tgt.mor(m), t.at(c.src(m)));
            nat.record(lhs.is_some() && lhs == rhs, || witness! {"morphism" => c.describe(m)});
        }
    }
    report.tally(typing);
    report.tally(nat);
    report
}

/// A span `B <- E -> C` of functors with shared apex.
#[derive(Clone, Debug)]
pub struct Span {
    pub left: FinFunctor,
    pub right: FinFunctor,
}

impl Span {
    pub fn new(left: FinFunctor, right: FinFunctor) -> Result<Span> {
        if !same_category(&left.dom, &right.dom) {
            return Err(Error::Boundary("span legs have different apexes".into()));
        }
        Ok(Span { left, right })
    }

    pub fn identity(c: Arc<FinCategory>) -> Span {
        Span { left: FinFunctor::identity(c.clone()), right: FinFunctor::identity(c) }
    }

    pub fn apex(&self) -> &Arc<FinCategory> {
        &self.left.dom
    }
}

/// Arrow category: objects are the morphisms of `c`, morphisms commuting
/// squares. Returns it with the domain and codomain projections.
pub fn arrow_category(c: &Arc<FinCategory>) -> Result<(Arc<FinCategory>, FinFunctor, FinFunctor)> {
    restricted_arrow_category(c, |_| true)
}

/// Full subcategory of the arrow category on the morphisms selected by `keep`.
/// A square from `f` to `g` is named `[u,v]:f=>g` where `v∘f = g∘u`.
pub fn restricted_arrow_category(
    c: &Arc<FinCategory>,
    keep: impl Fn(Mor) -> bool,
) -> Result<(Arc<FinCategory>, FinFunctor, FinFunctor)> {
    let arrows: Vec<Mor> = c.morphisms().filter(|&m| keep(m)).collect();
    let mut b = c.builder_like(&[]);
    let mut as_obj = HashMap::new();
    for &f in &arrows {
        as_obj.insert(f, b.object(c.mor_name(f))?);
    }
    let mut squares: HashMap<(Mor, Mor, Mor, Mor), Mor> = HashMap::new();
    let mut legs: Vec<(Mor, Mor)> = Vec::new();
    for &f in &arrows {
        for &g in &arrows {
            for u in c.hom(c.src(f), c.src(g)) {
                for v in c.hom(c.tgt(f), c.tgt(g)) {
                    if c.comp(v, f) == c.comp(g, u) {
                        let name =
                            format!("[{},{}]:{}=>{}", c.mor_name(u), c.mor_name(v), c.mor_name(f), c.mor_name(g));
                        let m = b.morphism(name, as_obj[&f], as_obj[&g])?;
                        if f == g && c.is_identity(u) && c.is_identity(v) {
                            b.set_identity(as_obj[&f], m);
                        }
                        squares.insert((f, g, u, v), m);
                        legs.push((u, v));
                    }
                }
            }
        }
    }
    let obj_of: Vec<Mor> = arrows.clone();
    let ends: Vec<(Mor, Mor)> = {
        let mut v = vec![(Mor(0), Mor(0)); legs.len()];
        for (&(f, g, _, _), &m) in &squares {
            v[m.ix()] = (f, g);
        }
        v
    };
    let cat = Arc::new(b.finish(|t, s| {
        let (f, _) = ends[s.ix()];
        let (_, h) = ends[t.ix()];
        let (u1, v1) = legs[s.ix()];
        let (u2, v2) = legs[t.ix()];
        squares.get(&(f, h, c.comp(u2, u1), c.comp(v2, v1))).copied()
    })?);
    let d0 = FinFunctor::tabulate(cat.clone(), c.clone(), |o| c.src(obj_of[o.ix()]), |m| legs[m.ix()].0);
    let d1 = FinFunctor::tabulate(cat.clone(), c.clone(), |o| c.tgt(obj_of[o.ix()]), |m| legs[m.ix()].1);
    Ok((cat, d0, d1))
}

/// Strict pullback of `f: A -> C` and `g: B -> C`. Objects `(a|b)` with
/// `f a = g b`, morphisms `(u|v)` with `f u = g v`.
pub fn pullback_category(f: &FinFunctor, g: &FinFunctor) -> Result<(Arc<FinCategory>, FinFunctor, FinFunctor)> {
    if !same_category(&f.cod, &g.cod) {
        return Err(Error::Boundary("pullback of functors with different codomains".into()));
    }
    let (a, bc) = (&f.dom, &g.dom);
    let mut b = a.builder_like(&[bc]);
    let mut pair_obj = HashMap::new();
    let mut obj_parts = Vec::new();
    for x in a.objects() {
        for y in bc.objects() {
            if f.obj(x) == g.obj(y) {
                let o = b.object(format!("({}|{})", a.obj_name(x), bc.obj_name(y)))?;
                pair_obj.insert((x, y), o);
                obj_parts.push((x, y));
            }
        }
    }
    let mut pair_mor = HashMap::new();
    let mut mor_parts = Vec::new();
    for u in a.morphisms() {
        let fu = f.mor(u);
        for v in bc.morphisms() {
            if g.mor(v) != fu {
                continue;
            }
            let (Some(&s), Some(&t)) = (pair_obj.get(&(a.src(u), bc.src(v))), pair_obj.get(&(a.tgt(u), bc.tgt(v))))
            else {
                continue;
            };
            let m = b.morphism(format!("({}|{})", a.mor_name(u), bc.mor_name(v)), s, t)?;
            if a.is_identity(u) && bc.is_identity(v) {
                b.set_identity(s, m);
            }
            pair_mor.insert((u, v), m);
            mor_parts.push((u, v));
        }
    }
    let cat = Arc::new(b.finish(|t, s| {
        let (u1, v1) = mor_parts[s.ix()];
        let (u2, v2) = mor_parts[t.ix()];
        pair_mor.get(&(a.comp(u2, u1), bc.comp(v2, v1))).copied()
    })?);
    let pa = FinFunctor::tabulate(cat.clone(), a.clone(), |o| obj_parts[o.ix()].0, |m| mor_parts[m.ix()].0);
    let pb = FinFunctor::tabulate(cat.clone(), bc.clone(), |o| obj_parts[o.ix()].1, |m| mor_parts[m.ix()].1);
    Ok((cat, pa, pb))
}

/// Lookup of pair objects and pair morphisms of a pullback or product
/// category by their components.
#[derive(Clone, Debug, Default)]
pub struct PairIndex {
    objs: HashMap<(Obj, Obj), Obj>,
    mors: HashMap<(Mor, Mor), Mor>,
}

impl PairIndex {
    pub fn new(p1: &FinFunctor, p2: &FinFunctor) -> PairIndex {
        let c = &p1.dom;
        PairIndex {
            objs: c.objects().map(|o| ((p1.obj(o), p2.obj(o)), o)).collect(),
            mors: c.morphisms().map(|m| ((p1.mor(m), p2.mor(m)), m)).collect(),
        }
    }

    pub fn obj(&self, a: Obj, b: Obj) -> Option<Obj> {
        self.objs.get(&(a, b)).copied()
    }

    pub fn mor(&self, u: Mor, v: Mor) -> Option<Mor> {
        self.mors.get(&(u, v)).copied()
    }
}

/// Compose `B <- E -> C` with `C <- F -> D` through the strict pullback.
pub fn compose_spans(s1: &Span, s2: &Span) -> Result<Span> {
    if !same_category(&s1.right.cod, &s2.left.cod) {
        return Err(Error::Boundary("spans do not meet".into()));
    }
    let (_, p1, p2) = pullback_category(&s1.right, &s2.left)?;
    Span::new(p1.then(&s1.left)?, p2.then(&s2.right)?)
}

/// True iff `f` is a bijection on objects and morphisms and a functor.
pub fn is_isomorphism(f: &FinFunctor) -> bool {
    let (c, d) = (&f.dom, &f.cod);
    if c.num_objects() != d.num_objects() || c.num_morphisms() != d.num_morphisms() {
        return false;
    }
    let mut seen_o = vec![false; d.num_objects()];
    for o in c.objects() {
        seen_o[f.obj(o).ix()] = true;
    }
    let mut seen_m = vec![false; d.num_morphisms()];
    for m in c.morphisms() {
        seen_m[f.mor(m).ix()] = true;
    }
    seen_o.iter().all(|&b| b) && seen_m.iter().all(|&b| b) && check_functor(f).passed()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> FinCategory {
        FinCategory::poset(&["0", "1", "2", "3"], |a, b| a <= b).unwrap()
    }

    #[test]
    fn small_categories_pass() {
        assert!(check_category(&FinCategory::terminal()).passed());
        assert!(check_category(&FinCategory::walking_arrow()).passed());
        assert!(check_category(&chain3()).passed());
        assert!(check_category(&FinCategory::empty()).passed());
    }

    #[test]
    fn broken_associativity_is_flagged_with_the_triple() {
        // free-ish category on 0 -f-> 1 -g-> 2 -h-> 3 where h∘(g∘f) and (h∘g)∘f
        // are sent to different parallel arrows
        let objs: Vec<String> = ["0", "1", "2", "3"].iter().map(|s| s.to_string()).collect();
        let mut mors = vec![];
        for (n, s, t) in [
            ("i0", "0", "0"),
            ("i1", "1", "1"),
            ("i2", "2", "2"),
            ("i3", "3", "3"),
            ("f", "0", "1"),
            ("g", "1", "2"),
            ("h", "2", "3"),
            ("gf", "0", "2"),
            ("hg", "1", "3"),
            ("x", "0", "3"),
            ("y", "0", "3"),
        ] {
            mors.push((n.to_string(), s.to_string(), t.to_string()));
        }
        let ids: Vec<(String, String)> = (0..4).map(|i| (i.to_string(), format!("i{i}"))).collect();
        let mut comp = vec![];
        let s = |a: &str| a.to_string();
        for (n, src, tgt) in &mors {
            comp.push(((format!("i{tgt}"), n.clone()), n.clone()));
            if !n.starts_with('i') {
                comp.push(((n.clone(), format!("i{src}")), n.clone()));
            }
        }
        comp.push(((s("g"), s("f")), s("gf")));
        comp.push(((s("h"), s("g")), s("hg")));
        comp.push(((s("h"), s("gf")), s("x")));
        comp.push(((s("hg"), s("f")), s("y")));
        let c = FinCategory::from_tables(&objs, &mors, &ids, &comp, DEFAULT_MAX_MORPHISMS).unwrap();
        let r = check_category(&c);
        assert_eq!(r.failed_laws(), vec![Law::CatAssociativity]);
        let w = r.get(Law::CatAssociativity).unwrap().witness.clone().unwrap();
        assert_eq!((w.get("h"), w.get("g"), w.get("f")), (Some("h"), Some("g"), Some("f")));
    }

    #[test]
    fn dangling_names_are_structural() {
        let objs = vec!["a".to_string()];
        let mors = vec![("ia".to_string(), "a".to_string(), "b".to_string())];
        let err = FinCategory::from_tables(&objs, &mors, &[], &[], 10).unwrap_err();
        assert!(matches!(err, Error::Dangling { kind: "object", .. }));
    }

    #[test]
    fn arrow_category_of_walking_arrow() {
        let c = Arc::new(FinCategory::walking_arrow());
        let (a, d0, d1) = arrow_category(&c).unwrap();
        assert_eq!(a.num_objects(), 3);
        // squares: id_0 -> id_0, id_0 -> f, id_0 -> id_1, f -> f, f -> id_1, id_1 -> id_1
        assert_eq!(a.num_morphisms(), 6);
        assert!(check_category(&a).passed());
        assert!(check_functor(&d0).passed() && check_functor(&d1).passed());
    }

    #[test]
    fn product_and_opposite() {
        let c = Arc::new(FinCategory::walking_arrow());
        let (p, _, _) = FinCategory::product(&c, &c).unwrap();
        assert_eq!((p.num_objects(), p.num_morphisms()), (4, 9));
        assert!(check_category(&p).passed());
        let op = c.opposite();
        assert!(check_category(&op).passed());
        assert_eq!(op.opposite(), *c);
        let m = op.mor("0<=1").unwrap();
        assert_eq!(op.obj_name(op.src(m)), "1");
    }
}
