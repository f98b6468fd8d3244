//! Contextads from comonads, actegories, graded comonads, display maps and
//! fibred monoidal decorations.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::{check_contextad, Contextad, ContextadParts};
use crate::fibration::{check_cartesian, check_cartesian_functor, ClovenFibration};
use crate::fincat::{
    check_nat_trans, restricted_arrow_category, FinCategory, FinFunctor, Mor, NatTrans, Obj, PairIndex,
};
use crate::monoidal::{check_monoidal, MonoidalCategory};
use crate::report::{Error, Law, Report, Result, Tally};
use crate::witness;

/// Reject with the report unless every law holds.
fn require(report: Report) -> Result<()> {
    report.into_result().map(|_| ())
}

fn checked(x: Contextad, subject: &str) -> Result<Contextad> {
    let mut r = check_contextad(&x)?;
    r.subject = subject.to_owned();
    require(r)?;
    Ok(x)
}

// ---- comonads ----

/// Counit and coassociativity laws of `(D, ε: D ⇒ 1, δ: D ⇒ DD)`.
pub fn check_comonad(d: &FinFunctor, eps: &NatTrans, delta: &NatTrans) -> Result<Report> {
    let c = &d.dom;
    let mut report = Report::new("comonad");
    report.extend(crate::fincat::check_functor(d));
    for t in [eps, delta] {
        super::functor_typing("comonad cell", &t.src)?;
        let r = check_nat_trans(t);
        if !r.holds(Law::NatTransTyping) {
            return Err(Error::ill_typed("comonad", "component typing"));
        }
        report.extend(r);
    }
    let mut left = Tally::new(Law::ComonadLeftCounit);
    let mut right = Tally::new(Law::ComonadRightCounit);
    let mut coassoc = Tally::new(Law::ComonadCoassociativity);
    for a in c.objects() {
        let da = d.obj(a);
        let (e_da, dl) = (eps.at(da), delta.at(a));
        left.record(c.compose(e_da, dl) == Some(c.id(da)), || witness! {"A" => c.obj_name(a)});
        right.record(c.compose(d.mor(eps.at(a)), dl) == Some(c.id(da)), || witness! {"A" => c.obj_name(a)});
        let lhs = c.compose(d.mor(dl), dl);
        let rhs = c.compose(delta.at(da), dl);
        coassoc.record(lhs.is_some() && lhs == rhs, || witness! {"A" => c.obj_name(a)});
    }
    report.tally(left);
    report.tally(right);
    report.tally(coassoc);
    Ok(report)
}

/// The contextad of a comonad: `M = C`, `p = id`, `⊙ = D`, grades compose
/// trivially and every structure cell is an identity.
pub fn from_comonad(d: &FinFunctor, eps: &NatTrans, delta: &NatTrans) -> Result<Contextad> {
    let c = d.dom.clone();
    require(check_comonad(d, eps, delta)?)?;
    let p = ClovenFibration::identity(c.clone());
    let (pc, pi1, _) = Contextad::pair_category(&p, d)?;
    let tensor = FinFunctor::tabulate(pc.clone(), c.clone(), |o| pi1.obj(o), |m| pi1.mor(m));
    let ids: Vec<Mor> = c.objects().map(|a| c.id(a)).collect();
    let parts = ContextadParts {
        p,
        act: d.clone(),
        unit: FinFunctor::identity(c.clone()),
        tensor,
        epsilon: eps.components().to_vec(),
        delta: pc.objects().map(|o| delta.at(pi1.obj(o))).collect(),
        lam: ids.clone(),
        rho: ids,
        assoc: triples_of(&c, d).map(|(a, _, _)| ((a, d.obj(a), d.obj(d.obj(a))), c.id(a))).collect(),
        kappa_unit: Some(c.morphisms().map(|f| c.id(c.src(f))).collect()),
        kappa_tensor: None,
    };
    checked(Contextad::new(parts)?, "comonad contextad")
}

fn triples_of<'a>(c: &'a Arc<FinCategory>, d: &'a FinFunctor) -> impl Iterator<Item = (Obj, Obj, Obj)> + 'a {
    c.objects().map(move |a| (a, d.obj(a), d.obj(d.obj(a))))
}

pub fn identity_comonad(c: Arc<FinCategory>) -> Result<Contextad> {
    let d = FinFunctor::identity(c);
    let e = NatTrans::identity(d.clone());
    from_comonad(&d, &e, &e)
}

// ---- actegories ----

/// A right action `⊙: C × G -> C` of a monoidal category with colax
/// structure `ε_c: c⊙I -> c` and `δ_{c,m,n}: c⊙(m⊗n) -> (c⊙m)⊙n`.
#[derive(Clone, Debug)]
pub struct Actegory {
    pub base: Arc<FinCategory>,
    pub grades: MonoidalCategory,
    /// `C × G` with its projections.
    pub total: Arc<FinCategory>,
    pub proj_base: FinFunctor,
    pub proj_grade: FinFunctor,
    pub act: FinFunctor,
    pub epsilon: Vec<Mor>,
    pub delta: HashMap<(Obj, Obj, Obj), Mor>,
    pairs: PairIndex,
}

impl Actegory {
    pub fn new(
        base: Arc<FinCategory>,
        grades: MonoidalCategory,
        act_obj: impl Fn(Obj, Obj) -> Obj,
        act_mor: impl Fn(Mor, Mor) -> Mor,
        epsilon: impl Fn(Obj) -> Mor,
        delta: impl Fn(Obj, Obj, Obj) -> Mor,
    ) -> Result<Actegory> {
        let (total, pc, pg) = FinCategory::product(&base, &grades.cat)?;
        let act = FinFunctor::tabulate(
            total.clone(),
            base.clone(),
            |o| act_obj(pc.obj(o), pg.obj(o)),
            |m| act_mor(pc.mor(m), pg.mor(m)),
        );
        let mut d = HashMap::new();
        for c in base.objects() {
            for m in grades.cat.objects() {
                for n in grades.cat.objects() {
                    d.insert((c, m, n), delta(c, m, n));
                }
            }
        }
        let pairs = PairIndex::new(&pc, &pg);
        Ok(Actegory {
            epsilon: base.objects().map(epsilon).collect(),
            base,
            grades,
            total,
            proj_base: pc,
            proj_grade: pg,
            act,
            delta: d,
            pairs,
        })
    }

    /// Strict action: `ε` and `δ` are identities.
    pub fn strict(
        base: Arc<FinCategory>,
        grades: MonoidalCategory,
        act_obj: impl Fn(Obj, Obj) -> Obj,
        act_mor: impl Fn(Mor, Mor) -> Mor,
    ) -> Result<Actegory> {
        let (b, g) = (base.clone(), grades.clone());
        Actegory::new(base, grades, &act_obj, act_mor, |c| b.id(c), |c, m, n| b.id(act_obj(c, g.ten(m, n))))
    }

    /// The object `(c|m)` of `C × G`.
    pub fn grade(&self, c: Obj, m: Obj) -> Obj {
        self.pairs.obj(c, m).expect("product contains every pair")
    }

    pub fn grade_mor(&self, f: Mor, u: Mor) -> Mor {
        self.pairs.mor(f, u).expect("product contains every pair")
    }

    pub fn act_on(&self, c: Obj, m: Obj) -> Obj {
        self.act.obj(self.grade(c, m))
    }
}

/// The contextad of an actegory: `p` is the projection `C × G -> C` with
/// lifts `(f, id_m)`, and `I`, `⊗` act in the grade component.
pub fn from_actegory(a: &Actegory) -> Result<Contextad> {
    let g = &a.grades;
    require(check_monoidal(g))?;
    let (c, gc, m) = (&a.base, &g.cat, &a.total);
    let (pb, pg) = (&a.proj_base, &a.proj_grade);
    let p = ClovenFibration::from_fn(pb.clone(), |f, e| a.grade_mor(f, gc.id(pg.obj(e))));
    let unit = FinFunctor::tabulate(c.clone(), m.clone(), |o| a.grade(o, g.unit), |f| a.grade_mor(f, gc.id(g.unit)));
    let (pc, pi1, pi2) = Contextad::pair_category(&p, &a.act)?;
    let tensor = FinFunctor::tabulate(
        pc.clone(),
        m.clone(),
        |o| {
            let (x, y) = (pi1.obj(o), pi2.obj(o));
            a.grade(pb.obj(x), g.ten(pg.obj(x), pg.obj(y)))
        },
        |u| {
            let (x, y) = (pi1.mor(u), pi2.mor(u));
            a.grade_mor(pb.mor(x), g.ten_mor(pg.mor(x), pg.mor(y)))
        },
    );
    let delta = pc
        .objects()
        .map(|o| {
            let (x, y) = (pi1.obj(o), pi2.obj(o));
            a.delta[&(pb.obj(x), pg.obj(x), pg.obj(y))]
        })
        .collect();
    let inv = |f: Mor| gc.inverse(f).ok_or_else(|| Error::ill_typed("monoidal structure", gc.describe(f)));
    let lam = m
        .objects()
        .map(|e| Ok(a.grade_mor(c.id(pb.obj(e)), inv(g.left_unitor[pg.obj(e).ix()])?)))
        .collect::<Result<Vec<_>>>()?;
    let rho = m.objects().map(|e| a.grade_mor(c.id(pb.obj(e)), g.right_unitor[pg.obj(e).ix()])).collect();
    let mut assoc = HashMap::new();
    for x in m.objects() {
        let cx = pb.obj(x);
        for y in m.objects().filter(|&y| pb.obj(y) == a.act.obj(x)) {
            for z in m.objects().filter(|&z| pb.obj(z) == a.act.obj(y)) {
                let cell = g.assoc_at(pg.obj(x), pg.obj(y), pg.obj(z));
                assoc.insert((x, y, z), a.grade_mor(c.id(cx), cell));
            }
        }
    }
    let parts = ContextadParts {
        p,
        act: a.act.clone(),
        unit,
        tensor,
        epsilon: a.epsilon.clone(),
        delta,
        lam,
        rho,
        assoc,
        kappa_unit: None,
        kappa_tensor: None,
    };
    checked(Contextad::new(parts)?, "actegory contextad")
}

/// A graded comonad `D_m` on `C`: `counit: D_I c -> c` and
/// `comult(m, n, c): D_{m⊗n} c -> D_m D_n c`.
#[derive(Clone, Debug)]
pub struct GradedComonad {
    pub base: Arc<FinCategory>,
    pub grades: MonoidalCategory,
    /// `(c, m) ↦ D_m c`, tabulated on objects and on morphisms `(f, u)`.
    pub apply_obj: Vec<Vec<Obj>>,
    pub apply_mor: HashMap<(Mor, Mor), Mor>,
    pub counit: Vec<Mor>,
    pub comult: HashMap<(Obj, Obj, Obj), Mor>,
}

/// Graded comonads are actions of the reversed grades:
/// `c ⊙ m = D_m c` and `δ_{c,m,n} = comult(n, m, c)`.
pub fn from_graded_comonad(d: &GradedComonad) -> Result<Contextad> {
    let grades = d.grades.reversed()?;
    let a = Actegory::new(
        d.base.clone(),
        grades,
        |c, m| d.apply_obj[c.ix()][m.ix()],
        |f, u| d.apply_mor[&(f, u)],
        |c| d.counit[c.ix()],
        |c, m, n| d.comult[&(n, m, c)],
    )?;
    from_actegory(&a)
}

// ---- display maps ----

/// A class of display maps with chosen pullbacks: for `f: A -> B` and a
/// display map `d: X -> B`, the square `(f*d: Y -> A, top: Y -> X)`.
#[derive(Clone, Debug)]
pub struct DisplayMaps {
    pub cat: Arc<FinCategory>,
    pub display: HashSet<Mor>,
    pub pullbacks: HashMap<(Mor, Mor), (Mor, Mor)>,
}

impl DisplayMaps {
    pub fn is_display(&self, m: Mor) -> bool {
        self.display.contains(&m)
    }

    pub fn pullback(&self, f: Mor, d: Mor) -> Result<(Mor, Mor)> {
        self.pullbacks.get(&(f, d)).copied().ok_or_else(|| Error::Missing {
            table: "chosen pullbacks",
            key: format!("({}, {})", self.cat.mor_name(f), self.cat.mor_name(d)),
        })
    }
}

/// Whether the square `f ∘ a = d ∘ x` with apex `src a` is a pullback of
/// the cospan `(f, d)`, by exhaustive search over cones.
pub fn is_pullback(c: &FinCategory, f: Mor, d: Mor, a: Mor, x: Mor) -> bool {
    if c.compose(f, a).is_none() || c.compose(f, a) != c.compose(d, x) {
        return false;
    }
    let y = c.src(a);
    c.objects().all(|z| {
        c.hom(z, c.src(f)).all(|a2| {
            c.hom(z, c.src(d)).filter(|&x2| c.compose(f, a2) == c.compose(d, x2)).all(|x2| {
                c.hom(z, y).filter(|&k| c.compose(a, k) == Some(a2) && c.compose(x, k) == Some(x2)).count() == 1
            })
        })
    })
}

/// Isos included, closure under composition, and every chosen square a
/// pullback with displayed left leg. A missing square is structural.
pub fn check_display_maps(dm: &DisplayMaps) -> Result<Report> {
    let c = &dm.cat;
    let mut report = Report::new("display maps");
    let mut isos = Tally::new(Law::DisplayContainsIsos);
    for m in c.morphisms().filter(|&m| c.is_iso(m)) {
        isos.record(dm.is_display(m), || witness! {"iso" => c.mor_name(m)});
    }
    let mut closure = Tally::new(Law::DisplayClosure);
    let mut ds: Vec<Mor> = dm.display.iter().copied().collect();
    ds.sort();
    for &d in &ds {
        for &e in ds.iter().filter(|&&e| c.tgt(e) == c.src(d)) {
            closure.record(dm.is_display(c.comp(d, e)), || witness! {"d" => c.mor_name(d), "e" => c.mor_name(e)});
        }
    }
    let mut pb = Tally::new(Law::DisplayPullback);
    for &d in &ds {
        for &f in c.incoming(c.tgt(d)) {
            let (a, x) = dm.pullback(f, d)?;
            if c.tgt(a) != c.src(f) || c.tgt(x) != c.src(d) || c.src(a) != c.src(x) {
                return Err(Error::ill_typed(
                    "chosen pullback",
                    format!("square for ({}, {}) has the wrong boundary", c.mor_name(f), c.mor_name(d)),
                ));
            }
            pb.record(dm.is_display(a) && is_pullback(c, f, d, a, x), || {
                witness! {"f" => c.mor_name(f), "d" => c.mor_name(d)}
            });
        }
    }
    report.tally(isos);
    report.tally(closure);
    report.tally(pb);
    Ok(report)
}

/// The contextad of a display-map category: grades are display maps over
/// their codomain, `⊙` takes the domain, `⊗` composes, `I` is the identity.
pub fn from_display_maps(dm: &DisplayMaps) -> Result<Contextad> {
    require(check_display_maps(dm)?)?;
    let c = &dm.cat;
    let (m, d0, d1) = restricted_arrow_category(c, |f| dm.is_display(f))?;
    let as_obj = |f: Mor| m.obj(c.mor_name(f)).expect("display map is a grade");
    let square = |s: Obj, t: Obj, u: Mor, v: Mor| {
        m.hom(s, t).find(|&q| d0.mor(q) == u && d1.mor(q) == v).expect("commuting square is a morphism")
    };
    let arrow_of = |o: Obj| c.mor(m.obj_name(o)).expect("grade names a display map");
    let mut lifts = HashMap::new();
    for f in c.morphisms() {
        for e in m.objects().filter(|&e| d1.obj(e) == c.tgt(f)) {
            let d = arrow_of(e);
            let (a, x) = dm.pullback(f, d)?;
            lifts.insert((f, e), square(as_obj(a), e, x, f));
        }
    }
    let p = ClovenFibration::new(d1.clone(), lifts)?;
    let unit = FinFunctor::tabulate(
        c.clone(),
        m.clone(),
        |o| as_obj(c.id(o)),
        |f| square(as_obj(c.id(c.src(f))), as_obj(c.id(c.tgt(f))), f, f),
    );
    let (pc, pi1, pi2) = Contextad::pair_category(&p, &d0)?;
    let tensor = FinFunctor::tabulate(
        pc.clone(),
        m.clone(),
        |o| as_obj(c.comp(arrow_of(pi1.obj(o)), arrow_of(pi2.obj(o)))),
        |u| {
            let (x, y) = (pi1.mor(u), pi2.mor(u));
            let s = as_obj(c.comp(arrow_of(m.src(x)), arrow_of(m.src(y))));
            let t = as_obj(c.comp(arrow_of(m.tgt(x)), arrow_of(m.tgt(y))));
            square(s, t, d0.mor(y), d1.mor(x))
        },
    );
    let epsilon = c.objects().map(|o| c.id(o)).collect();
    let delta = pc.objects().map(|o| c.id(d0.obj(pi2.obj(o)))).collect();
    // Pulling back along an identity gives an isomorphic grade; λ and α
    // compare with it.
    let to_id_pullback = |e: Obj| {
        let ell = p.lift(c.id(d1.obj(e)), e);
        p.factor_through(ell, m.id(e), c.id(d1.obj(e))).ok_or_else(|| {
            Error::ill_typed("chosen pullback", format!("pullback of {} along an identity", m.obj_name(e)))
        })
    };
    let lam = m.objects().map(to_id_pullback).collect::<Result<Vec<_>>>()?;
    let rho = m.objects().map(|e| m.id(e)).collect();
    let mut assoc = HashMap::new();
    let pairs = PairIndex::new(&pi1, &pi2);
    for x in m.objects() {
        for y in m.objects().filter(|&y| d1.obj(y) == d0.obj(x)) {
            let xy = tensor.obj(pairs.obj(x, y).expect("pair"));
            for z in m.objects().filter(|&z| d1.obj(z) == d0.obj(y)) {
                let w = to_id_pullback(z)?;
                let cell = pairs
                    .mor(m.id(xy), w)
                    .map(|u| tensor.mor(u))
                    .ok_or_else(|| Error::ill_typed("display maps", "identity pullback changes the domain"))?;
                assoc.insert((x, y, z), cell);
            }
        }
    }
    let parts = ContextadParts {
        p,
        act: d0,
        unit,
        tensor,
        epsilon,
        delta,
        lam,
        rho,
        assoc,
        kappa_unit: None,
        kappa_tensor: None,
    };
    checked(Contextad::new(parts)?, "display-map contextad")
}

// ---- fibred monoidal decorations ----

/// A fibration with fibrewise monoidal structure: `unit: C -> M` and
/// `tensor` on pairs over the same context, with fibre unitors
/// `P -> I ⊗ P`, `P ⊗ I -> P` and associator `P⊗(Q⊗R) -> (P⊗Q)⊗R`.
#[derive(Clone, Debug)]
pub struct Decoration {
    pub fib: ClovenFibration,
    pub unit: FinFunctor,
    /// Domain is the pair category of `fib.p` against itself.
    pub tensor: FinFunctor,
    pub lam: Vec<Mor>,
    pub rho: Vec<Mor>,
    pub assoc: HashMap<(Obj, Obj, Obj), Mor>,
}

impl Decoration {
    pub fn pair_category(fib: &ClovenFibration) -> Result<(Arc<FinCategory>, FinFunctor, FinFunctor)> {
        Contextad::pair_category(fib, &fib.p)
    }
}

/// The contextad with `⊙ = p` and identity `ε`, `δ`. `I` and `⊗` must be
/// cartesian functors over the base.
pub fn from_decoration_fibration(dec: &Decoration) -> Result<Contextad> {
    let p = &dec.fib;
    let (c, m) = (p.base().clone(), p.total().clone());
    let (pc, pi1, pi2) = Decoration::pair_category(p)?;
    if !crate::fincat::same_category(&dec.tensor.dom, &pc) {
        return Err(Error::Boundary("decoration tensor is not defined on pairs".into()));
    }
    require(check_cartesian(p))?;
    let base_fib = ClovenFibration::identity(c.clone());
    require(check_cartesian_functor(&base_fib, p, &dec.unit)?)?;
    let pairs = PairIndex::new(&pi1, &pi2);
    let pair_fib = ClovenFibration::from_fn(pi1.then(&p.p)?, |f, o| {
        let (x, y) = (pi1.obj(o), pi2.obj(o));
        pairs.mor(p.lift(f, x), p.lift(f, y)).expect("pairwise lift")
    });
    require(check_cartesian_functor(&pair_fib, p, &dec.tensor)?)?;

    // with a non-normal cleavage `id*P` differs from `P`; correct through the
    // canonical vertical iso
    let to_id_pullback = |e: Obj| {
        let a = p.p.obj(e);
        p.factor_through(p.lift(c.id(a), e), m.id(e), c.id(a))
            .ok_or_else(|| Error::ill_typed("decoration", "no comparison with the identity pullback"))
    };
    let ten_mor = |u: Mor, v: Mor| pairs.mor(u, v).map(|w| dec.tensor.mor(w));
    let ten = |x: Obj, y: Obj| pairs.obj(x, y).map(|w| dec.tensor.obj(w));
    let mut lam = Vec::new();
    for e in m.objects() {
        let i = dec.unit.obj(p.p.obj(e));
        let fix = ten_mor(m.id(i), to_id_pullback(e)?)
            .ok_or_else(|| Error::ill_typed("decoration", "unit grade is not over the context"))?;
        let cell = m
            .compose(fix, dec.lam[e.ix()])
            .ok_or_else(|| Error::ill_typed("decoration λ", m.describe(dec.lam[e.ix()])))?;
        lam.push(cell);
    }
    let mut assoc = HashMap::new();
    for (&(x, y, z), &a) in &dec.assoc {
        let xy = ten(x, y).ok_or_else(|| Error::ill_typed("decoration α", "grades over different contexts"))?;
        let fix = ten_mor(m.id(xy), to_id_pullback(z)?)
            .ok_or_else(|| Error::ill_typed("decoration α", "grades over different contexts"))?;
        let cell = m.compose(fix, a).ok_or_else(|| Error::ill_typed("decoration α", m.describe(a)))?;
        assoc.insert((x, y, z), cell);
    }
    let parts = ContextadParts {
        p: p.clone(),
        act: p.p.clone(),
        unit: dec.unit.clone(),
        tensor: dec.tensor.clone(),
        epsilon: c.objects().map(|o| c.id(o)).collect(),
        delta: pc.objects().map(|o| c.id(p.p.obj(pi1.obj(o)))).collect(),
        lam,
        rho: dec.rho.clone(),
        assoc,
        kappa_unit: None,
        kappa_tensor: None,
    };
    checked(Contextad::new(parts)?, "decoration contextad")
}
