//! JSON instance files and their conversion to and from the engine's types.
//!
//! Every file is an object with a `kind` tag, `"version": 1` and a `name`.
//! Objects, morphisms, loose arrows and squares are referred to by name, and
//! every mapping is an explicit array of `[key, value]` pairs. Tables are
//! total: a missing entry is a structural error, never a default.

#![allow(clippy::type_complexity)]

use std::collections::{HashMap, HashSet};
use std::hash::Hash;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::container::{Container, PolyMonad, Shape};
use crate::contentad::{Contentad, ContentadParts};
use crate::contextad::{Contextad, ContextadParts};
use crate::ctxdouble::{AdequateTriple, DoubleCategory, DoubleOps, Loose, LooseArrow, Sq, Square};
use crate::fibration::{ClovenFibration, ClovenOpfibration};
use crate::fincat::{FinCategory, FinFunctor, Mor, Obj, PairIndex};
use crate::report::{Error, Result};

pub const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub version: u32,
    pub name: String,
    /// Morphism cap for every category in the file; `--max-morphisms` wins.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_morphisms: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(flatten)]
    pub body: Body,
}

impl InstanceFile {
    pub fn new(name: impl Into<String>, body: Body) -> Self {
        InstanceFile { version: VERSION, name: name.into(), max_morphisms: None, notes: Vec::new(), body }
    }

    pub fn kind(&self) -> &'static str {
        self.body.kind()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Body {
    Category(CategoryDoc),
    Fibration(FibrationDoc),
    Contextad(Box<ContextadDoc>),
    Contentad(Box<ContentadDoc>),
    ContainerMonad(ContainerDoc),
    AdequateTriple(TripleDoc),
    DoubleCategory(Box<DoubleDoc>),
}

impl Body {
    pub fn kind(&self) -> &'static str {
        match self {
            Body::Category(_) => "category",
            Body::Fibration(_) => "fibration",
            Body::Contextad(_) => "contextad",
            Body::Contentad(_) => "contentad",
            Body::ContainerMonad(_) => "container-monad",
            Body::AdequateTriple(_) => "adequate-triple",
            Body::DoubleCategory(_) => "double-category",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    pub morphisms: Vec<ArrowDoc>,
    /// `[object, identity morphism]`
    pub identities: Vec<(String, String)>,
    /// `[[g, f], g∘f]` for every composable pair.
    pub composition: Vec<((String, String), String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorDoc {
    pub objects: Vec<(String, String)>,
    pub morphisms: Vec<(String, String)>,
}

/// A functor out of a category of pairs, keyed by the two components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFunctorDoc {
    pub objects: Vec<((String, String), String)>,
    pub morphisms: Vec<((String, String), String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationDoc {
    pub base: CategoryDoc,
    pub total: CategoryDoc,
    pub projection: FunctorDoc,
    /// `[[f, e], lift]` for `e` over the target of `f`.
    pub cleavage: Vec<((String, String), String)>,
}

/// Tables shared by contextads and contentads.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDoc {
    pub base: CategoryDoc,
    pub grades: CategoryDoc,
    pub projection: FunctorDoc,
    pub act: FunctorDoc,
    pub unit: FunctorDoc,
    pub tensor: PairFunctorDoc,
    pub lambda: Vec<(String, String)>,
    pub rho: Vec<(String, String)>,
    pub alpha: Vec<((String, String, String), String)>,
    /// Keyed by base morphism.
    pub kappa_unit: Vec<(String, String)>,
    /// `[[f, [P, Q]], cell]`
    pub kappa_tensor: Vec<((String, (String, String)), String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextadDoc {
    #[serde(flatten)]
    pub graded: GradedDoc,
    pub cleavage: Vec<((String, String), String)>,
    pub epsilon: Vec<(String, String)>,
    pub delta: Vec<((String, String), String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContentadDoc {
    #[serde(flatten)]
    pub graded: GradedDoc,
    /// `[[f, e], colift]` for `e` over the source of `f`.
    pub cocleavage: Vec<((String, String), String)>,
    pub eta: Vec<(String, String)>,
    pub mu: Vec<((String, String), String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeDoc {
    pub name: String,
    pub positions: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainerDoc {
    pub shapes: Vec<ShapeDoc>,
    pub ok: String,
    /// `[[s, filling], seq(s, filling)]`
    pub seq: Vec<((String, Vec<String>), String)>,
    /// `[[s, filling, p], [p1, p2]]` with `p` a position of the sequenced shape.
    pub split: Vec<((String, Vec<String>, String), (String, String))>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleDoc {
    pub category: CategoryDoc,
    pub forward: Vec<String>,
    pub backward: Vec<String>,
    /// `[[f, b], [f*b, top]]`
    pub pullbacks: Vec<((String, String), (String, String))>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareDoc {
    pub name: String,
    pub top: String,
    pub bottom: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleDoc {
    pub tight: CategoryDoc,
    pub loose: Vec<ArrowDoc>,
    pub squares: Vec<SquareDoc>,
    pub loose_identity: Vec<(String, String)>,
    pub loose_composition: Vec<((String, String), String)>,
    /// `[[upper, lower], stacked]`
    pub stack: Vec<((String, String), String)>,
    /// `[[left, right], pasted]`
    pub paste: Vec<((String, String), String)>,
    pub tight_identity: Vec<(String, String)>,
    pub loose_identity_square: Vec<(String, String)>,
    pub left_unitor: Vec<(String, String)>,
    pub right_unitor: Vec<(String, String)>,
    pub associator: Vec<((String, String, String), String)>,
}

// ---- name resolution ----

fn dangling(kind: &'static str, name: &str) -> Error {
    Error::Dangling { kind, name: name.to_owned() }
}

fn obj(c: &FinCategory, name: &str) -> Result<Obj> {
    c.obj(name).ok_or_else(|| dangling("object", name))
}

fn mor(c: &FinCategory, name: &str) -> Result<Mor> {
    c.mor(name).ok_or_else(|| dangling("morphism", name))
}

/// Collect `(key, value)` entries into a map, rejecting repeated keys.
fn keyed<K: Eq + Hash, V>(
    entries: impl IntoIterator<Item = Result<(K, V)>>,
    table: &'static str,
) -> Result<HashMap<K, V>> {
    let mut out = HashMap::new();
    for e in entries {
        let (k, v) = e?;
        if out.insert(k, v).is_some() {
            return Err(Error::Duplicate { kind: table, name: "key".into() });
        }
    }
    Ok(out)
}

/// A table with exactly one entry per index below `size`.
fn total<V: Copy>(
    entries: impl IntoIterator<Item = Result<(usize, V)>>,
    size: usize,
    table: &'static str,
    key_name: impl Fn(usize) -> String,
) -> Result<Vec<V>> {
    let map = keyed(entries, table)?;
    (0..size).map(|i| map.get(&i).copied().ok_or_else(|| Error::Missing { table, key: key_name(i) })).collect()
}

// ---- categories and functors ----

pub fn category_doc(c: &FinCategory) -> CategoryDoc {
    let mut composition = Vec::new();
    for f in c.morphisms() {
        for &g in c.outgoing(c.tgt(f)) {
            composition
                .push(((c.mor_name(g).to_owned(), c.mor_name(f).to_owned()), c.mor_name(c.comp(g, f)).to_owned()));
        }
    }
    CategoryDoc {
        objects: c.objects().map(|o| c.obj_name(o).to_owned()).collect(),
        morphisms: c
            .morphisms()
            .map(|m| ArrowDoc {
                name: c.mor_name(m).to_owned(),
                src: c.obj_name(c.src(m)).to_owned(),
                tgt: c.obj_name(c.tgt(m)).to_owned(),
            })
            .collect(),
        identities: c.objects().map(|o| (c.obj_name(o).to_owned(), c.mor_name(c.id(o)).to_owned())).collect(),
        composition,
    }
}

pub fn load_category(d: &CategoryDoc, cap: usize) -> Result<Arc<FinCategory>> {
    let arrows: Vec<(String, String, String)> =
        d.morphisms.iter().map(|a| (a.name.clone(), a.src.clone(), a.tgt.clone())).collect();
    let mut seen = HashSet::new();
    for (k, _) in &d.composition {
        if !seen.insert(k) {
            return Err(Error::Duplicate { kind: "composition entry", name: format!("({}, {})", k.0, k.1) });
        }
    }
    Ok(Arc::new(FinCategory::from_tables(&d.objects, &arrows, &d.identities, &d.composition, cap)?))
}

pub fn functor_doc(f: &FinFunctor) -> FunctorDoc {
    let (a, b) = (&f.dom, &f.cod);
    FunctorDoc {
        objects: a.objects().map(|o| (a.obj_name(o).to_owned(), b.obj_name(f.obj(o)).to_owned())).collect(),
        morphisms: a.morphisms().map(|m| (a.mor_name(m).to_owned(), b.mor_name(f.mor(m)).to_owned())).collect(),
    }
}

fn load_functor(dom: &Arc<FinCategory>, cod: &Arc<FinCategory>, d: &FunctorDoc) -> Result<FinFunctor> {
    FinFunctor::from_names(dom.clone(), cod.clone(), &d.objects, &d.morphisms)
}

/// Names of the components of pair objects and pair morphisms.
struct PairNames<'a> {
    pi1: &'a FinFunctor,
    pi2: &'a FinFunctor,
}

impl PairNames<'_> {
    fn obj(&self, o: Obj) -> (String, String) {
        let m = &self.pi1.cod;
        (m.obj_name(self.pi1.obj(o)).to_owned(), m.obj_name(self.pi2.obj(o)).to_owned())
    }

    fn mor(&self, u: Mor) -> (String, String) {
        let m = &self.pi1.cod;
        (m.mor_name(self.pi1.mor(u)).to_owned(), m.mor_name(self.pi2.mor(u)).to_owned())
    }
}

fn pair_functor_doc(f: &FinFunctor, names: &PairNames) -> PairFunctorDoc {
    let c = &f.cod;
    PairFunctorDoc {
        objects: f.dom.objects().map(|o| (names.obj(o), c.obj_name(f.obj(o)).to_owned())).collect(),
        morphisms: f.dom.morphisms().map(|u| (names.mor(u), c.mor_name(f.mor(u)).to_owned())).collect(),
    }
}

fn pair_obj(m: &FinCategory, pairs: &PairIndex, (p, q): &(String, String)) -> Result<Obj> {
    pairs.obj(obj(m, p)?, obj(m, q)?).ok_or_else(|| dangling("pair", &format!("({p}|{q})")))
}

fn load_pair_functor(
    pc: &Arc<FinCategory>,
    m: &Arc<FinCategory>,
    pairs: &PairIndex,
    d: &PairFunctorDoc,
) -> Result<FinFunctor> {
    let objs = total(
        d.objects.iter().map(|(k, v)| Ok((pair_obj(m, pairs, k)?.ix(), obj(m, v)?))),
        pc.num_objects(),
        "tensor object map",
        |i| pc.obj_name(Obj(i as u32)).to_owned(),
    )?;
    let mors = total(
        d.morphisms.iter().map(|((u, v), w)| {
            let key =
                pairs.mor(mor(m, u)?, mor(m, v)?).ok_or_else(|| dangling("pair morphism", &format!("({u}|{v})")))?;
            Ok((key.ix(), mor(m, w)?))
        }),
        pc.num_morphisms(),
        "tensor morphism map",
        |i| pc.mor_name(Mor(i as u32)).to_owned(),
    )?;
    FinFunctor::new(pc.clone(), m.clone(), objs, mors)
}

fn lift_table(
    base: &FinCategory,
    total: &FinCategory,
    entries: impl Iterator<Item = ((Mor, Obj), Mor)>,
) -> Vec<((String, String), String)> {
    let mut v: Vec<_> = entries.collect();
    v.sort();
    v.into_iter()
        .map(|((f, e), l)| ((base.mor_name(f).to_owned(), total.obj_name(e).to_owned()), total.mor_name(l).to_owned()))
        .collect()
}

fn load_lifts(
    base: &FinCategory,
    total: &FinCategory,
    entries: &[((String, String), String)],
    table: &'static str,
) -> Result<HashMap<(Mor, Obj), Mor>> {
    keyed(entries.iter().map(|((f, e), l)| Ok(((mor(base, f)?, obj(total, e)?), mor(total, l)?))), table)
}

pub fn fibration_doc(p: &ClovenFibration) -> FibrationDoc {
    FibrationDoc {
        base: category_doc(p.base()),
        total: category_doc(p.total()),
        projection: functor_doc(&p.p),
        cleavage: lift_table(p.base(), p.total(), p.cleavage()),
    }
}

pub fn load_fibration(d: &FibrationDoc, cap: usize) -> Result<ClovenFibration> {
    let (b, e) = (load_category(&d.base, cap)?, load_category(&d.total, cap)?);
    let p = load_functor(&e, &b, &d.projection)?;
    ClovenFibration::new(p, load_lifts(&b, &e, &d.cleavage, "cleavage")?)
}

// ---- contextads and contentads ----

/// The parts of [`GradedDoc`] that read the same for both variances.
struct Graded {
    base: Arc<FinCategory>,
    grades: Arc<FinCategory>,
    projection: FinFunctor,
    act: FinFunctor,
    unit: FinFunctor,
}

fn load_graded_head(d: &GradedDoc, cap: usize) -> Result<Graded> {
    let base = load_category(&d.base, cap)?;
    let grades = load_category(&d.grades, cap)?;
    Ok(Graded {
        projection: load_functor(&grades, &base, &d.projection)?,
        act: load_functor(&grades, &base, &d.act)?,
        unit: load_functor(&base, &grades, &d.unit)?,
        base,
        grades,
    })
}

/// `λ`, `ρ`, `α`, `κ` tables resolved against the grades and the pairs.
struct GradedCells {
    lam: Vec<Mor>,
    rho: Vec<Mor>,
    assoc: HashMap<(Obj, Obj, Obj), Mor>,
    kappa_unit: Vec<Mor>,
    kappa_tensor: HashMap<(Mor, Obj), Mor>,
}

fn load_cells(d: &GradedDoc, g: &Graded, pairs: &PairIndex) -> Result<GradedCells> {
    let m = &*g.grades;
    let per_grade = |entries: &[(String, String)], table| {
        total(entries.iter().map(|(p, c)| Ok((obj(m, p)?.ix(), mor(m, c)?))), m.num_objects(), table, |i| {
            m.obj_name(Obj(i as u32)).to_owned()
        })
    };
    let c = &*g.base;
    Ok(GradedCells {
        lam: per_grade(&d.lambda, "lambda")?,
        rho: per_grade(&d.rho, "rho")?,
        assoc: keyed(
            d.alpha.iter().map(|((p, q, r), a)| Ok(((obj(m, p)?, obj(m, q)?, obj(m, r)?), mor(m, a)?))),
            "alpha",
        )?,
        kappa_unit: total(
            d.kappa_unit.iter().map(|(f, k)| Ok((mor(c, f)?.ix(), mor(m, k)?))),
            c.num_morphisms(),
            "kappa_unit",
            |i| c.mor_name(Mor(i as u32)).to_owned(),
        )?,
        kappa_tensor: keyed(
            d.kappa_tensor.iter().map(|((f, pq), k)| Ok(((mor(c, f)?, pair_obj(m, pairs, pq)?), mor(m, k)?))),
            "kappa_tensor",
        )?,
    })
}

fn sorted_names<K: Ord + Copy, T>(map: &HashMap<K, Mor>, key: impl Fn(K) -> T, m: &FinCategory) -> Vec<(T, String)> {
    let mut v: Vec<(&K, &Mor)> = map.iter().collect();
    v.sort();
    v.into_iter().map(|(&k, &c)| (key(k), m.mor_name(c).to_owned())).collect()
}

#[allow(clippy::too_many_arguments)]
fn graded_doc(
    base: &FinCategory,
    grades: &FinCategory,
    projection: &FinFunctor,
    act: &FinFunctor,
    unit: &FinFunctor,
    tensor: &FinFunctor,
    names: &PairNames,
    lam: &[Mor],
    rho: &[Mor],
    assoc: &HashMap<(Obj, Obj, Obj), Mor>,
    kappa_unit: &[Mor],
    kappa_tensor: &HashMap<(Mor, Obj), Mor>,
) -> GradedDoc {
    let m = grades;
    let per_grade =
        |cells: &[Mor]| m.objects().map(|p| (m.obj_name(p).to_owned(), m.mor_name(cells[p.ix()]).to_owned())).collect();
    let on = |o: Obj| m.obj_name(o).to_owned();
    GradedDoc {
        base: category_doc(base),
        grades: category_doc(grades),
        projection: functor_doc(projection),
        act: functor_doc(act),
        unit: functor_doc(unit),
        tensor: pair_functor_doc(tensor, names),
        lambda: per_grade(lam),
        rho: per_grade(rho),
        alpha: sorted_names(assoc, |(p, q, r)| (on(p), on(q), on(r)), m),
        kappa_unit: base
            .morphisms()
            .map(|f| (base.mor_name(f).to_owned(), m.mor_name(kappa_unit[f.ix()]).to_owned()))
            .collect(),
        kappa_tensor: sorted_names(kappa_tensor, |(f, pq)| (base.mor_name(f).to_owned(), names.obj(pq)), m),
    }
}

pub fn contextad_doc(x: &Contextad) -> ContextadDoc {
    let (c, pc) = (x.base(), x.pair_cat());
    let names = PairNames { pi1: x.pi1(), pi2: x.pi2() };
    let graded = graded_doc(
        c,
        x.total(),
        &x.p.p,
        &x.act,
        &x.unit,
        &x.tensor,
        &names,
        &x.lam,
        &x.rho,
        &x.assoc,
        &x.kappa_unit,
        &x.kappa_tensor,
    );
    ContextadDoc {
        graded,
        cleavage: lift_table(c, x.total(), x.p.cleavage()),
        epsilon: c.objects().map(|a| (c.obj_name(a).to_owned(), c.mor_name(x.eps(a)).to_owned())).collect(),
        delta: pc.objects().map(|o| (names.obj(o), c.mor_name(x.delta.at(o)).to_owned())).collect(),
    }
}

pub fn load_contextad(d: &ContextadDoc, cap: usize) -> Result<Contextad> {
    let g = load_graded_head(&d.graded, cap)?;
    let (c, m) = (&*g.base, &*g.grades);
    let p = ClovenFibration::new(g.projection.clone(), load_lifts(c, m, &d.cleavage, "cleavage")?)?;
    let (pc, pi1, pi2) = Contextad::pair_category(&p, &g.act)?;
    let pairs = PairIndex::new(&pi1, &pi2);
    let tensor = load_pair_functor(&pc, &g.grades, &pairs, &d.graded.tensor)?;
    let cells = load_cells(&d.graded, &g, &pairs)?;
    let epsilon =
        total(d.epsilon.iter().map(|(a, e)| Ok((obj(c, a)?.ix(), mor(c, e)?))), c.num_objects(), "epsilon", |i| {
            c.obj_name(Obj(i as u32)).to_owned()
        })?;
    let delta = total(
        d.delta.iter().map(|(pq, e)| Ok((pair_obj(m, &pairs, pq)?.ix(), mor(c, e)?))),
        pc.num_objects(),
        "delta",
        |i| pc.obj_name(Obj(i as u32)).to_owned(),
    )?;
    Contextad::new(ContextadParts {
        p,
        act: g.act,
        unit: g.unit,
        tensor,
        epsilon,
        delta,
        lam: cells.lam,
        rho: cells.rho,
        assoc: cells.assoc,
        kappa_unit: Some(cells.kappa_unit),
        kappa_tensor: Some(cells.kappa_tensor),
    })
}

pub fn contentad_doc(x: &Contentad) -> ContentadDoc {
    let (c, pc) = (x.base(), x.pair_cat());
    let names = PairNames { pi1: x.pi1(), pi2: x.pi2() };
    let graded = graded_doc(
        c,
        x.total(),
        &x.q.q,
        &x.act,
        &x.unit,
        &x.tensor,
        &names,
        &x.lam,
        &x.rho,
        &x.assoc,
        &x.kappa_unit,
        &x.kappa_tensor,
    );
    ContentadDoc {
        graded,
        cocleavage: lift_table(c, x.total(), x.q.cocleavage()),
        eta: c.objects().map(|a| (c.obj_name(a).to_owned(), c.mor_name(x.eta[a.ix()]).to_owned())).collect(),
        mu: pc.objects().map(|o| (names.obj(o), c.mor_name(x.mu[o.ix()]).to_owned())).collect(),
    }
}

pub fn load_contentad(d: &ContentadDoc, cap: usize) -> Result<Contentad> {
    let g = load_graded_head(&d.graded, cap)?;
    let (c, m) = (&*g.base, &*g.grades);
    let q = ClovenOpfibration::new(g.projection.clone(), load_lifts(c, m, &d.cocleavage, "cocleavage")?)?;
    let (pc, pi1, pi2) = Contentad::pair_category(&q, &g.act)?;
    let pairs = PairIndex::new(&pi1, &pi2);
    let tensor = load_pair_functor(&pc, &g.grades, &pairs, &d.graded.tensor)?;
    let cells = load_cells(&d.graded, &g, &pairs)?;
    let eta = total(d.eta.iter().map(|(a, e)| Ok((obj(c, a)?.ix(), mor(c, e)?))), c.num_objects(), "eta", |i| {
        c.obj_name(Obj(i as u32)).to_owned()
    })?;
    let mu = total(
        d.mu.iter().map(|(pq, e)| Ok((pair_obj(m, &pairs, pq)?.ix(), mor(c, e)?))),
        pc.num_objects(),
        "mu",
        |i| pc.obj_name(Obj(i as u32)).to_owned(),
    )?;
    Contentad::new(ContentadParts {
        q,
        act: g.act,
        unit: g.unit,
        tensor,
        eta,
        mu,
        lam: cells.lam,
        rho: cells.rho,
        assoc: cells.assoc,
        kappa_unit: Some(cells.kappa_unit),
        kappa_tensor: Some(cells.kappa_tensor),
    })
}

// ---- containers ----

pub fn container_doc(m: &PolyMonad) -> ContainerDoc {
    let c = &m.container;
    let filling = |f: &[Shape]| f.iter().map(|&s| c.shape_name(s).to_owned()).collect::<Vec<_>>();
    let mut seq: Vec<_> = m.seq.iter().collect();
    seq.sort();
    let mut split: Vec<_> = m.split.iter().collect();
    split.sort();
    ContainerDoc {
        shapes: c
            .shapes()
            .map(|s| ShapeDoc { name: c.shape_name(s).to_owned(), positions: c.positions[s.ix()].clone() })
            .collect(),
        ok: c.shape_name(m.ok).to_owned(),
        seq: seq
            .into_iter()
            .map(|((s, f), t)| ((c.shape_name(*s).to_owned(), filling(f)), c.shape_name(*t).to_owned()))
            .collect(),
        split: split
            .into_iter()
            .map(|((s, f, p), &(p1, p2))| {
                let t = m.seq[&(*s, f.clone())];
                (
                    (c.shape_name(*s).to_owned(), filling(f), c.position_name(t, *p).to_owned()),
                    (c.position_name(*s, p1).to_owned(), c.position_name(f[p1], p2).to_owned()),
                )
            })
            .collect(),
    }
}

pub fn load_container(name: &str, d: &ContainerDoc) -> Result<PolyMonad> {
    let c = Container::new(
        d.shapes.iter().map(|s| s.name.clone()).collect(),
        d.shapes.iter().map(|s| s.positions.clone()).collect(),
    )?;
    let shape = |n: &str| c.shape(n).ok_or_else(|| dangling("shape", n));
    let position = |s: Shape, n: &str| {
        c.positions[s.ix()]
            .iter()
            .position(|p| p == n)
            .ok_or_else(|| dangling("position", &format!("{n} of {}", c.shape_name(s))))
    };
    let filling = |f: &[String]| f.iter().map(|n| shape(n)).collect::<Result<Vec<_>>>();
    let seq = keyed(d.seq.iter().map(|((s, f), t)| Ok(((shape(s)?, filling(f)?), shape(t)?))), "seq")?;
    let split = keyed(
        d.split.iter().map(|((s, f, p), (p1, p2))| {
            let (s, f) = (shape(s)?, filling(f)?);
            let t = *seq
                .get(&(s, f.clone()))
                .ok_or_else(|| Error::Missing { table: "seq", key: c.shape_name(s).to_owned() })?;
            let q1 = position(s, p1)?;
            let inner = *f.get(q1).ok_or_else(|| dangling("position", p1))?;
            Ok(((s, f, position(t, p)?), (q1, position(inner, p2)?)))
        }),
        "split",
    )?;
    let m = PolyMonad { name: name.to_owned(), ok: shape(&d.ok)?, container: c, seq, split };
    m.validate()?;
    Ok(m)
}

// ---- adequate triples ----

pub fn triple_doc(t: &AdequateTriple) -> TripleDoc {
    let c = &*t.cat;
    let names = |set: &HashSet<Mor>| {
        let mut v: Vec<Mor> = set.iter().copied().collect();
        v.sort();
        v.into_iter().map(|m| c.mor_name(m).to_owned()).collect()
    };
    let mut pbs: Vec<_> = t.pullbacks.iter().collect();
    pbs.sort();
    let n = |m: Mor| c.mor_name(m).to_owned();
    TripleDoc {
        category: category_doc(c),
        forward: names(&t.forward),
        backward: names(&t.backward),
        pullbacks: pbs.into_iter().map(|(&(f, b), &(x, y))| ((n(f), n(b)), (n(x), n(y)))).collect(),
    }
}

pub fn load_triple(d: &TripleDoc, cap: usize) -> Result<AdequateTriple> {
    let c = load_category(&d.category, cap)?;
    let class = |names: &[String]| names.iter().map(|n| mor(&c, n)).collect::<Result<HashSet<_>>>();
    let pullbacks = keyed(
        d.pullbacks.iter().map(|((f, b), (x, y))| Ok(((mor(&c, f)?, mor(&c, b)?), (mor(&c, x)?, mor(&c, y)?)))),
        "pullbacks",
    )?;
    Ok(AdequateTriple { forward: class(&d.forward)?, backward: class(&d.backward)?, pullbacks, cat: c })
}

// ---- double categories ----

/// Names made unique by suffixing `#i` to repeated ones.
fn unique_names<'a>(names: impl Iterator<Item = &'a str> + Clone) -> Vec<String> {
    let mut count: HashMap<&str, usize> = HashMap::new();
    for n in names.clone() {
        *count.entry(n).or_default() += 1;
    }
    names.enumerate().map(|(i, n)| if count[n] > 1 { format!("{n}#{i}") } else { n.to_owned() }).collect()
}

pub fn double_doc(d: &DoubleCategory) -> DoubleDoc {
    let c = &*d.tight;
    let ln = unique_names(d.loose.iter().map(|l| l.name.as_str()));
    let sn = unique_names(d.squares.iter().map(|s| s.name.as_str()));
    let l = |f: Loose| ln[f.ix()].clone();
    let s = |q: Sq| sn[q.ix()].clone();
    let pairs = |map: &HashMap<(Sq, Sq), Sq>| {
        let mut v: Vec<_> = map.iter().collect();
        v.sort();
        v.into_iter().map(|(&(a, b), &r)| ((s(a), s(b)), s(r))).collect()
    };
    let mut comp: Vec<_> = d.loose_comp.iter().collect();
    comp.sort();
    let mut assoc: Vec<_> = d.associator.iter().collect();
    assoc.sort();
    let per_loose = |cells: &[Sq]| d.loose_arrows().map(|f| (l(f), s(cells[f.ix()]))).collect();
    DoubleDoc {
        tight: category_doc(c),
        loose: d
            .loose
            .iter()
            .enumerate()
            .map(|(i, a)| ArrowDoc {
                name: ln[i].clone(),
                src: c.obj_name(a.src).to_owned(),
                tgt: c.obj_name(a.tgt).to_owned(),
            })
            .collect(),
        squares: d
            .squares
            .iter()
            .enumerate()
            .map(|(i, q)| SquareDoc {
                name: sn[i].clone(),
                top: l(q.top),
                bottom: l(q.bottom),
                left: c.mor_name(q.left).to_owned(),
                right: c.mor_name(q.right).to_owned(),
            })
            .collect(),
        loose_identity: c.objects().map(|a| (c.obj_name(a).to_owned(), l(d.loose_id[a.ix()]))).collect(),
        loose_composition: comp.into_iter().map(|(&(f, g), &h)| ((l(f), l(g)), l(h))).collect(),
        stack: pairs(&d.stack),
        paste: pairs(&d.paste),
        tight_identity: per_loose(&d.tight_id),
        loose_identity_square: c
            .morphisms()
            .map(|h| (c.mor_name(h).to_owned(), s(d.loose_id_square[h.ix()])))
            .collect(),
        left_unitor: per_loose(&d.left_unitor),
        right_unitor: per_loose(&d.right_unitor),
        associator: assoc.into_iter().map(|(&(f, g, h), &a)| ((l(f), l(g), l(h)), s(a))).collect(),
    }
}

/// Answers the construction's operations from the loaded tables.
struct TableOps {
    loose_id: Vec<Loose>,
    comp: HashMap<(Loose, Loose), Loose>,
    stack: HashMap<(Sq, Sq), Sq>,
    paste: HashMap<(Sq, Sq), Sq>,
    tight_id: Vec<Sq>,
    loose_id_square: Vec<Sq>,
    left_unitor: Vec<Sq>,
    right_unitor: Vec<Sq>,
    associator: HashMap<(Loose, Loose, Loose), Sq>,
}

fn lookup<K: Eq + Hash + std::fmt::Debug, V: Copy>(map: &HashMap<K, V>, key: K, table: &'static str) -> Result<V> {
    map.get(&key).copied().ok_or_else(|| Error::Missing { table, key: format!("{key:?}") })
}

impl DoubleOps for TableOps {
    fn loose_id(&self, a: Obj) -> Result<Loose> {
        Ok(self.loose_id[a.ix()])
    }

    fn loose_comp(&self, f: Loose, g: Loose) -> Result<Loose> {
        lookup(&self.comp, (f, g), "loose_composition")
    }

    fn stack(&self, upper: Sq, lower: Sq) -> Result<Sq> {
        lookup(&self.stack, (upper, lower), "stack")
    }

    fn paste(&self, left: Sq, right: Sq) -> Result<Sq> {
        lookup(&self.paste, (left, right), "paste")
    }

    fn tight_id(&self, f: Loose) -> Result<Sq> {
        Ok(self.tight_id[f.ix()])
    }

    fn loose_id_square(&self, h: Mor) -> Result<Sq> {
        Ok(self.loose_id_square[h.ix()])
    }

    fn left_unitor(&self, f: Loose) -> Result<Sq> {
        Ok(self.left_unitor[f.ix()])
    }

    fn right_unitor(&self, f: Loose) -> Result<Sq> {
        Ok(self.right_unitor[f.ix()])
    }

    fn associator(&self, f: Loose, g: Loose, h: Loose) -> Result<Sq> {
        lookup(&self.associator, (f, g, h), "associator")
    }
}

fn index_names<'a>(names: impl Iterator<Item = &'a str>, kind: &'static str) -> Result<HashMap<String, u32>> {
    let mut out = HashMap::new();
    for (i, n) in names.enumerate() {
        if out.insert(n.to_owned(), i as u32).is_some() {
            return Err(Error::Duplicate { kind, name: n.to_owned() });
        }
    }
    Ok(out)
}

pub fn load_double(d: &DoubleDoc, cap: usize) -> Result<DoubleCategory> {
    let c = load_category(&d.tight, cap)?;
    let li = index_names(d.loose.iter().map(|a| a.name.as_str()), "loose arrow")?;
    let si = index_names(d.squares.iter().map(|s| s.name.as_str()), "square")?;
    let l = |n: &str| li.get(n).map(|&i| Loose(i)).ok_or_else(|| dangling("loose arrow", n));
    let s = |n: &str| si.get(n).map(|&i| Sq(i)).ok_or_else(|| dangling("square", n));
    let loose = d
        .loose
        .iter()
        .map(|a| Ok(LooseArrow { name: a.name.clone(), src: obj(&c, &a.src)?, tgt: obj(&c, &a.tgt)? }))
        .collect::<Result<Vec<_>>>()?;
    let squares = d
        .squares
        .iter()
        .map(|q| {
            Ok(Square {
                name: q.name.clone(),
                top: l(&q.top)?,
                bottom: l(&q.bottom)?,
                left: mor(&c, &q.left)?,
                right: mor(&c, &q.right)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let per_loose = |entries: &[(String, String)], table| {
        total(entries.iter().map(|(f, q)| Ok((l(f)?.ix(), s(q)?))), loose.len(), table, |i| d.loose[i].name.clone())
    };
    let sq_pairs = |entries: &[((String, String), String)], table| {
        keyed(entries.iter().map(|((a, b), r)| Ok(((s(a)?, s(b)?), s(r)?))), table)
    };
    let ops = TableOps {
        loose_id: total(
            d.loose_identity.iter().map(|(a, f)| Ok((obj(&c, a)?.ix(), l(f)?))),
            c.num_objects(),
            "loose_identity",
            |i| c.obj_name(Obj(i as u32)).to_owned(),
        )?,
        comp: keyed(d.loose_composition.iter().map(|((f, g), h)| Ok(((l(f)?, l(g)?), l(h)?))), "loose_composition")?,
        stack: sq_pairs(&d.stack, "stack")?,
        paste: sq_pairs(&d.paste, "paste")?,
        tight_id: per_loose(&d.tight_identity, "tight_identity")?,
        loose_id_square: total(
            d.loose_identity_square.iter().map(|(h, q)| Ok((mor(&c, h)?.ix(), s(q)?))),
            c.num_morphisms(),
            "loose_identity_square",
            |i| c.mor_name(Mor(i as u32)).to_owned(),
        )?,
        left_unitor: per_loose(&d.left_unitor, "left_unitor")?,
        right_unitor: per_loose(&d.right_unitor, "right_unitor")?,
        associator: keyed(d.associator.iter().map(|((f, g, h), a)| Ok(((l(f)?, l(g)?, l(h)?), s(a)?))), "associator")?,
    };
    DoubleCategory::tabulate(c, loose, squares, &ops)
}
