//! Contentads from monads and from left actions of monoidal categories.

use std::collections::HashMap;
use std::sync::Arc;

use super::{check_contentad, Contentad, ContentadParts};
use crate::contextad::check_comonad;
use crate::fibration::ClovenOpfibration;
use crate::fincat::{FinCategory, FinFunctor, Mor, NatTrans, Obj, PairIndex};
use crate::monoidal::{check_monoidal, MonoidalCategory};
use crate::report::{Error, Law, Report, Result};

fn checked(x: Contentad, subject: &str) -> Result<Contentad> {
    let mut r = check_contentad(&x)?;
    r.subject = subject.to_owned();
    r.into_result()?;
    Ok(x)
}

// ---- monads ----

/// Unit and associativity laws of `(T, η: 1 ⇒ T, μ: TT ⇒ T)`, checked as the
/// comonad laws of `T^op`.
pub fn check_monad(t: &FinFunctor, eta: &NatTrans, mu: &NatTrans) -> Result<Report> {
    let c = t.dom.clone();
    let id = FinFunctor::identity(c.clone());
    let tt = t.then(t)?;
    if !eta.src.same_as(&id) || !eta.tgt.same_as(t) {
        return Err(Error::Boundary("η must go from the identity to T".into()));
    }
    if !mu.src.same_as(&tt) || !mu.tgt.same_as(t) {
        return Err(Error::Boundary("μ must go from TT to T".into()));
    }
    let c_op = Arc::new(c.opposite());
    let t_op = t.opposite(c_op.clone(), c_op.clone());
    let unit = NatTrans::new(t_op.clone(), FinFunctor::identity(c_op), eta.components().to_vec())?;
    let mult = NatTrans::new(t_op.clone(), t_op.then(&t_op)?, mu.components().to_vec())?;
    let mut report = check_comonad(&t_op, &unit, &mult)?.relabel(Law::co);
    report.subject = "monad".into();
    Ok(report)
}

/// The contentad of a monad: `M = C`, `q = id`, `⊙ = T`, `P⊗Q = Q` and every
/// structure cell an identity. Its contentful arrows are Kleisli arrows.
pub fn from_monad(t: &FinFunctor, eta: &NatTrans, mu: &NatTrans) -> Result<Contentad> {
    check_monad(t, eta, mu)?.into_result()?;
    let c = t.dom.clone();
    let q = ClovenOpfibration::identity(c.clone());
    let (pc, _, pi2) = Contentad::pair_category(&q, t)?;
    let tensor = FinFunctor::tabulate(pc.clone(), c.clone(), |o| pi2.obj(o), |m| pi2.mor(m));
    let ids: Vec<Mor> = c.objects().map(|a| c.id(a)).collect();
    let mut assoc = HashMap::new();
    for r in c.objects() {
        let q = t.obj(r);
        assoc.insert((t.obj(q), q, r), c.id(r));
    }
    let parts = ContentadParts {
        q,
        act: t.clone(),
        unit: FinFunctor::identity(c.clone()),
        tensor,
        eta: eta.components().to_vec(),
        mu: pc.objects().map(|o| mu.at(pi2.obj(o))).collect(),
        lam: ids.clone(),
        rho: ids,
        assoc,
        kappa_unit: None,
        kappa_tensor: None,
    };
    checked(Contentad::new(parts)?, "monad contentad")
}

pub fn identity_monad(c: Arc<FinCategory>) -> Result<Contentad> {
    let t = FinFunctor::identity(c);
    let e = NatTrans::identity(t.clone());
    from_monad(&t, &e, &e)
}

// ---- left actegories ----

/// A left action `⊙: G × C -> C` of a monoidal category with lax structure
/// `η_A: A -> I⊙A` and `μ_{m,n,A}: m⊙(n⊙A) -> (m⊗n)⊙A`.
#[derive(Clone, Debug)]
pub struct LeftActegory {
    pub base: Arc<FinCategory>,
    pub grades: MonoidalCategory,
    /// `G × C` with its projections.
    pub total: Arc<FinCategory>,
    pub proj_grade: FinFunctor,
    pub proj_base: FinFunctor,
    pub act: FinFunctor,
    pub eta: Vec<Mor>,
    pub mu: HashMap<(Obj, Obj, Obj), Mor>,
    pairs: PairIndex,
}

impl LeftActegory {
    pub fn new(
        base: Arc<FinCategory>,
        grades: MonoidalCategory,
        act_obj: impl Fn(Obj, Obj) -> Obj,
        act_mor: impl Fn(Mor, Mor) -> Mor,
        eta: impl Fn(Obj) -> Mor,
        mu: impl Fn(Obj, Obj, Obj) -> Mor,
    ) -> Result<LeftActegory> {
        let (total, pg, pc) = FinCategory::product(&grades.cat, &base)?;
        let act = FinFunctor::tabulate(
            total.clone(),
            base.clone(),
            |o| act_obj(pg.obj(o), pc.obj(o)),
            |m| act_mor(pg.mor(m), pc.mor(m)),
        );
        let mut table = HashMap::new();
        for m in grades.cat.objects() {
            for n in grades.cat.objects() {
                for a in base.objects() {
                    table.insert((m, n, a), mu(m, n, a));
                }
            }
        }
        let pairs = PairIndex::new(&pg, &pc);
        Ok(LeftActegory {
            eta: base.objects().map(eta).collect(),
            base,
            grades,
            total,
            proj_grade: pg,
            proj_base: pc,
            act,
            mu: table,
            pairs,
        })
    }

    /// Strict action: `η` and `μ` are identities.
    pub fn strict(
        base: Arc<FinCategory>,
        grades: MonoidalCategory,
        act_obj: impl Fn(Obj, Obj) -> Obj,
        act_mor: impl Fn(Mor, Mor) -> Mor,
    ) -> Result<LeftActegory> {
        let (b, g) = (base.clone(), grades.clone());
        LeftActegory::new(base, grades, &act_obj, act_mor, |a| b.id(a), |m, n, a| b.id(act_obj(g.ten(m, n), a)))
    }

    /// The object `(m|A)` of `G × C`.
    pub fn grade(&self, m: Obj, a: Obj) -> Obj {
        self.pairs.obj(m, a).expect("product contains every pair")
    }

    pub fn grade_mor(&self, u: Mor, f: Mor) -> Mor {
        self.pairs.mor(u, f).expect("product contains every pair")
    }
}

/// The contentad of a left actegory: `q` is the projection `G × C -> C` with
/// colifts `(id_m, f)`, and `I`, `⊗` act in the grade component.
pub fn from_left_actegory(a: &LeftActegory) -> Result<Contentad> {
    let g = &a.grades;
    check_monoidal(g).into_result()?;
    let (c, gc, m) = (&a.base, &g.cat, &a.total);
    let (pg, pb) = (&a.proj_grade, &a.proj_base);
    let q = ClovenOpfibration::from_fn(pb.clone(), |f, e| a.grade_mor(gc.id(pg.obj(e)), f));
    let unit = FinFunctor::tabulate(c.clone(), m.clone(), |o| a.grade(g.unit, o), |f| a.grade_mor(gc.id(g.unit), f));
    let (pc, pi1, pi2) = Contentad::pair_category(&q, &a.act)?;
    let tensor = FinFunctor::tabulate(
        pc.clone(),
        m.clone(),
        |o| {
            let (x, y) = (pi1.obj(o), pi2.obj(o));
            a.grade(g.ten(pg.obj(x), pg.obj(y)), pb.obj(y))
        },
        |u| {
            let (x, y) = (pi1.mor(u), pi2.mor(u));
            a.grade_mor(g.ten_mor(pg.mor(x), pg.mor(y)), pb.mor(y))
        },
    );
    let mu = pc
        .objects()
        .map(|o| {
            let (x, y) = (pi1.obj(o), pi2.obj(o));
            a.mu[&(pg.obj(x), pg.obj(y), pb.obj(y))]
        })
        .collect();
    let inv = |f: Mor| gc.inverse(f).ok_or_else(|| Error::ill_typed("monoidal structure", gc.describe(f)));
    let lam = m.objects().map(|e| a.grade_mor(g.right_unitor[pg.obj(e).ix()], c.id(pb.obj(e)))).collect();
    let rho = m
        .objects()
        .map(|e| Ok(a.grade_mor(inv(g.left_unitor[pg.obj(e).ix()])?, c.id(pb.obj(e)))))
        .collect::<Result<Vec<_>>>()?;
    let mut assoc = HashMap::new();
    for r in m.objects() {
        for y in m.objects().filter(|&y| pb.obj(y) == a.act.obj(r)) {
            for x in m.objects().filter(|&x| pb.obj(x) == a.act.obj(y)) {
                let cell = g.assoc_at(pg.obj(x), pg.obj(y), pg.obj(r));
                assoc.insert((x, y, r), a.grade_mor(cell, c.id(pb.obj(r))));
            }
        }
    }
    let parts = ContentadParts {
        q,
        act: a.act.clone(),
        unit,
        tensor,
        eta: a.eta.clone(),
        mu,
        lam,
        rho,
        assoc,
        kappa_unit: None,
        kappa_tensor: None,
    };
    checked(Contentad::new(parts)?, "left actegory contentad")
}
