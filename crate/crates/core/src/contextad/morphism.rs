//! Morphisms of contextads: a functor on contexts `F`, a functor on grades
//! `F♭` over it, a lineator `ℓ_P: FA ⊙' F♭P -> F(A⊙P)`, a unitor
//! `η_A: F♭I_A -> I'_{FA}` and a multiplicator
//! `μ_{P,Q}: F♭(P⊗Q) -> F♭P ⊗' ℓ*F♭Q`.

use std::collections::HashMap;
use std::sync::Arc;

use super::{functor_typing, Actegory, Contextad};
use crate::fincat::{check_functor, same_category, FinFunctor, Mor, Obj};
use crate::report::{Error, Law, Report, Result, Tally};
use crate::witness;

#[derive(Clone, Debug)]
pub struct ContextadMorphism {
    pub src: Arc<Contextad>,
    pub tgt: Arc<Contextad>,
    pub f: FinFunctor,
    pub fflat: FinFunctor,
    /// Indexed by grades of the source.
    pub lineator: Vec<Mor>,
    /// Indexed by contexts of the source.
    pub unitor: Vec<Mor>,
    /// Keyed by pair objects of the source.
    pub multiplicator: HashMap<Obj, Mor>,
}

impl ContextadMorphism {
    pub fn identity(x: Arc<Contextad>) -> Result<ContextadMorphism> {
        let (c, m) = (x.base().clone(), x.total().clone());
        let lineator = m.objects().map(|e| c.id(x.extend(e))).collect();
        let unitor = c.objects().map(|a| m.id(x.unit.obj(a))).collect();
        let multiplicator = identity_multiplicator(&x)?;
        Ok(ContextadMorphism {
            f: FinFunctor::identity(c),
            fflat: FinFunctor::identity(m),
            src: x.clone(),
            tgt: x,
            lineator,
            unitor,
            multiplicator,
        })
    }

    /// `ℓ*F♭Q`, the target's pullback of `F♭Q` along the lineator at `P`.
    pub fn pulled(&self, p: Obj, q: Obj) -> Obj {
        self.tgt.star(self.lineator[p.ix()], self.fflat.obj(q))
    }

    /// Expected `(src, tgt)` of `μ` at the pair `(P|Q)`.
    pub fn multiplicator_type(&self, p: Obj, q: Obj) -> Option<(Obj, Obj)> {
        let src = self.fflat.obj(self.src.ten(p, q)?);
        let tgt = self.tgt.ten(self.fflat.obj(p), self.pulled(p, q))?;
        Some((src, tgt))
    }

    fn validate(&self) -> Result<()> {
        let (x, y) = (&*self.src, &*self.tgt);
        let (c, m, c2, m2) = (x.base(), x.total(), y.base(), y.total());
        if !same_category(&self.f.dom, c)
            || !same_category(&self.f.cod, c2)
            || !same_category(&self.fflat.dom, m)
            || !same_category(&self.fflat.cod, m2)
        {
            return Err(Error::Boundary("morphism functors do not match the contextads".into()));
        }
        functor_typing("F", &self.f)?;
        functor_typing("F♭", &self.fflat)?;
        for e in m.objects() {
            if y.ctx(self.fflat.obj(e)) != self.f.obj(x.ctx(e)) {
                return Err(Error::ill_typed("F♭", format!("{} is not over F of its context", m.obj_name(e))));
            }
        }
        for u in m.morphisms() {
            if y.p.p.mor(self.fflat.mor(u)) != self.f.mor(x.p.p.mor(u)) {
                return Err(Error::ill_typed("F♭", format!("{} is not over F of its base arrow", m.mor_name(u))));
            }
        }
        if self.lineator.len() != m.num_objects() || self.unitor.len() != c.num_objects() {
            return Err(Error::ill_typed("morphism", "lineator or unitor tables do not cover their index"));
        }
        for e in m.objects() {
            let l = self.lineator[e.ix()];
            if c2.src(l) != y.extend(self.fflat.obj(e)) || c2.tgt(l) != self.f.obj(x.extend(e)) {
                return Err(Error::ill_typed("lineator", format!("at {}: {}", m.obj_name(e), c2.describe(l))));
            }
        }
        for a in c.objects() {
            let h = self.unitor[a.ix()];
            let (s, t) = (self.fflat.obj(x.unit.obj(a)), y.unit.obj(self.f.obj(a)));
            if m2.src(h) != s || m2.tgt(h) != t || !y.p.is_vertical(h) {
                return Err(Error::ill_typed("unitor", format!("at {}: {}", c.obj_name(a), m2.describe(h))));
            }
        }
        for (p, q) in x.pair_list() {
            let key = x.pair(p, q).expect("listed pair");
            let h = self
                .multiplicator
                .get(&key)
                .copied()
                .ok_or_else(|| Error::Missing { table: "multiplicator", key: x.pair_cat().obj_name(key).to_owned() })?;
            let Some((s, t)) = self.multiplicator_type(p, q) else {
                return Err(Error::ill_typed("multiplicator", "target pair does not exist"));
            };
            if m2.src(h) != s || m2.tgt(h) != t || !y.p.is_vertical(h) {
                return Err(Error::ill_typed(
                    "multiplicator",
                    format!("at {}: {}", x.pair_cat().obj_name(key), m2.describe(h)),
                ));
            }
        }
        Ok(())
    }
}

/// `μ` of the identity morphism: `P⊗Q -> P ⊗ id*Q`.
fn identity_multiplicator(x: &Contextad) -> Result<HashMap<Obj, Mor>> {
    let (c, m) = (x.base(), x.total());
    let mut out = HashMap::new();
    for (p, q) in x.pair_list() {
        let a = x.ctx(q);
        let w =
            x.p.factor_through(x.lift(c.id(a), q), m.id(q), c.id(a))
                .ok_or_else(|| Error::ill_typed("multiplicator", "no comparison with the identity pullback"))?;
        let cell = x.ten_mor(m.id(p), w).ok_or_else(|| Error::ill_typed("multiplicator", "pair"))?;
        out.insert(x.pair(p, q).expect("listed pair"), cell);
    }
    Ok(out)
}

pub fn check_contextad_morphism(mm: &ContextadMorphism) -> Result<Report> {
    mm.validate()?;
    let (x, y) = (&*mm.src, &*mm.tgt);
    let (c, m, c2, m2) = (x.base(), x.total(), y.base(), y.total());
    let mut report = Report::new("contextad morphism");
    report.extend(check_functor(&mm.f));
    report.extend(check_functor(&mm.fflat));

    let mut cart = Tally::new(Law::MorCartesian);
    let mut keys: Vec<(Mor, Obj)> = x.p.cleavage().map(|(k, _)| k).collect();
    keys.sort();
    for (f, e) in keys {
        let image = mm.fflat.mor(x.lift(f, e));
        let ok = y.p.comparison(image).is_some_and(|k| m2.is_iso(k));
        cart.record(ok, || witness! {"f" => c.mor_name(f), "P" => m.obj_name(e)});
    }
    report.tally(cart);

    let mut nat = Tally::new(Law::MorLineatorNatural);
    for u in m.morphisms() {
        let (s, t) = (m.src(u), m.tgt(u));
        let lhs = c2.compose(mm.f.mor(x.act.mor(u)), mm.lineator[s.ix()]);
        let rhs = c2.compose(mm.lineator[t.ix()], y.act.mor(mm.fflat.mor(u)));
        nat.record(lhs.is_some() && lhs == rhs, || witness! {"u" => m.describe(u)});
    }
    report.tally(nat);

    let mut iso = Tally::new(Law::MorStructureIso);
    for a in c.objects() {
        iso.record(m2.is_iso(mm.unitor[a.ix()]), || witness! {"cell" => "η", "A" => c.obj_name(a)});
    }
    let mut pairs: Vec<Obj> = mm.multiplicator.keys().copied().collect();
    pairs.sort();
    for &o in &pairs {
        iso.record(m2.is_iso(mm.multiplicator[&o]), || {
            witness! {"cell" => "μ", "pair" => x.pair_cat().obj_name(o)}
        });
    }
    report.tally(iso);

    let mut unit = Tally::new(Law::MorUnitLaw);
    for a in c.objects() {
        let i = x.unit.obj(a);
        let lhs = c2.compose(mm.f.mor(x.eps(a)), mm.lineator[i.ix()]);
        let rhs = c2.compose(y.eps(mm.f.obj(a)), y.act.mor(mm.unitor[a.ix()]));
        unit.record(lhs.is_some() && lhs == rhs, || witness! {"A" => c.obj_name(a)});
    }
    report.tally(unit);

    let mut assoc = Tally::new(Law::MorAssociativityLaw);
    for (p, q) in x.pair_list() {
        let o = x.pair(p, q).expect("listed pair");
        let pq = x.tensor.obj(o);
        let lhs = c2.compose(mm.f.mor(x.delta.at(o)), mm.lineator[pq.ix()]);
        let lp = mm.lineator[p.ix()];
        let fq = mm.fflat.obj(q);
        let rhs = y.del(mm.fflat.obj(p), mm.pulled(p, q)).and_then(|d| {
            c2.compose_all(&[mm.lineator[q.ix()], y.act_lift(lp, fq), d, y.act.mor(mm.multiplicator[&o])])
        });
        assoc.record(lhs.is_some() && lhs == rhs, || witness! {"P" => m.obj_name(p), "Q" => m.obj_name(q)});
    }
    report.tally(assoc);
    Ok(report)
}

/// A comonad morphism `(F, ℓ: D'F ⇒ FD)` as a morphism of the comonad
/// contextads: `F♭ = F` and trivial unitor and multiplicator.
pub fn comonad_morphism(
    src: Arc<Contextad>,
    tgt: Arc<Contextad>,
    f: FinFunctor,
    lineator: Vec<Mor>,
) -> Result<ContextadMorphism> {
    let m2 = tgt.total().clone();
    let unitor = src.base().objects().map(|a| m2.id(f.obj(a))).collect();
    let mut multiplicator = HashMap::new();
    for (p, q) in src.pair_list() {
        multiplicator.insert(src.pair(p, q).expect("listed pair"), m2.id(f.obj(p)));
    }
    Ok(ContextadMorphism { fflat: f.clone(), f, src, tgt, lineator, unitor, multiplicator })
}

/// A lax linear functor between actegories: `F` on contexts, a strong
/// monoidal `R` on grades with `r0: R(I) -> I'` and
/// `r2(m, n): R(m⊗n) -> Rm ⊗' Rn`, and `ℓ(c, m): Fc ⊙' Rm -> F(c⊙m)`.
#[allow(clippy::too_many_arguments)]
pub fn linear_functor_morphism(
    a: &Actegory,
    b: &Actegory,
    src: Arc<Contextad>,
    tgt: Arc<Contextad>,
    f: FinFunctor,
    r: FinFunctor,
    r0: Mor,
    r2: impl Fn(Obj, Obj) -> Mor,
    ell: impl Fn(Obj, Obj) -> Mor,
) -> Result<ContextadMorphism> {
    let fflat = FinFunctor::tabulate(
        a.total.clone(),
        b.total.clone(),
        |o| b.grade(f.obj(a.proj_base.obj(o)), r.obj(a.proj_grade.obj(o))),
        |u| b.grade_mor(f.mor(a.proj_base.mor(u)), r.mor(a.proj_grade.mor(u))),
    );
    let lineator = a.total.objects().map(|o| ell(a.proj_base.obj(o), a.proj_grade.obj(o))).collect();
    let unitor = a.base.objects().map(|c| b.grade_mor(b.base.id(f.obj(c)), r0)).collect();
    let mut multiplicator = HashMap::new();
    for (p, q) in src.pair_list() {
        let c = a.proj_base.obj(p);
        let cell = b.grade_mor(b.base.id(f.obj(c)), r2(a.proj_grade.obj(p), a.proj_grade.obj(q)));
        multiplicator.insert(src.pair(p, q).expect("listed pair"), cell);
    }
    Ok(ContextadMorphism { src, tgt, f, fflat, lineator, unitor, multiplicator })
}
