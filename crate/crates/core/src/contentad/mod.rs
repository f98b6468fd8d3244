//! Contentads: a cloven opfibration `q: M -> C` of grades with an action
//! `⊙: M -> C`, a unit `I`, a tensor on dependent pairs, a unit
//! `η_A: A -> I_A⊙A`, a multiplication `μ: P⊙(Q⊙A) -> (P⊗Q)⊙A` and vertical
//! structure isos. Read between opposite categories a contentad is a
//! contextad, and every contentad law is checked on that dual.
//!
//! A pair `(P|Q)` has `q(P) = act(Q)`; its tensor `P⊗Q` lies over `q(Q)`.
//! Orientation of the structure cells, each the reversal of its contextad
//! counterpart:
//!
//! ```text
//! λ_P          : η_!P ⊗ I_{qP} -> P
//! ρ_P          : P -> I_{act P} ⊗ P
//! α_{P,Q,R}    : μ_!P ⊗ (Q ⊗ R) -> (P ⊗ Q) ⊗ R
//! κ^I_f        : f_!I_A -> I_B                      for f: A -> B
//! κ^⊗_{f,P,Q}  : f_!(P ⊗ Q) -> (act ℓ)_!P ⊗ f_!Q     ℓ the colift of f at Q
//! ```

mod builders;
mod cnt;

pub use builders::*;
pub use cnt::*;

use std::collections::HashMap;
use std::sync::Arc;

use crate::contextad::{check_contextad, Contextad, ContextadParts};
use crate::fibration::{ClovenFibration, ClovenOpfibration};
use crate::fincat::{pullback_category, same_category, FinCategory, FinFunctor, Mor, Obj, PairIndex};
use crate::report::{Error, Law, Report, Result};

/// Raw data of a contentad, before validation.
#[derive(Clone, Debug)]
pub struct ContentadParts {
    pub q: ClovenOpfibration,
    pub act: FinFunctor,
    pub unit: FinFunctor,
    /// Must have the pair category of [`Contentad::pair_category`] as domain.
    pub tensor: FinFunctor,
    /// Indexed by objects of the base.
    pub eta: Vec<Mor>,
    /// Indexed by objects of the pair category.
    pub mu: Vec<Mor>,
    pub lam: Vec<Mor>,
    pub rho: Vec<Mor>,
    pub assoc: HashMap<(Obj, Obj, Obj), Mor>,
    /// `None` synthesizes the canonical comparison of colifts.
    pub kappa_unit: Option<Vec<Mor>>,
    pub kappa_tensor: Option<HashMap<(Mor, Obj), Mor>>,
}

#[derive(Clone, Debug)]
pub struct Contentad {
    pub q: ClovenOpfibration,
    pub act: FinFunctor,
    pub unit: FinFunctor,
    pub tensor: FinFunctor,
    pub eta: Vec<Mor>,
    pub mu: Vec<Mor>,
    pub lam: Vec<Mor>,
    pub rho: Vec<Mor>,
    pub assoc: HashMap<(Obj, Obj, Obj), Mor>,
    pub kappa_unit: Vec<Mor>,
    /// Keyed by the base arrow `f` and the pair `(P|Q)` with `Q` over `src f`.
    pub kappa_tensor: HashMap<(Mor, Obj), Mor>,
    pi1: FinFunctor,
    pi2: FinFunctor,
    pairs: PairIndex,
    dual: Arc<Contextad>,
}

impl Contentad {
    /// The category of pairs `(P|Q)` with `q(P) = act(Q)`.
    pub fn pair_category(
        q: &ClovenOpfibration,
        act: &FinFunctor,
    ) -> Result<(Arc<FinCategory>, FinFunctor, FinFunctor)> {
        pullback_category(&q.q, act)
    }

    /// Assemble the contentad. Structural typing is checked on the dual
    /// contextad, so errors speak of `ε`, `δ` and lifts.
    pub fn new(parts: ContentadParts) -> Result<Contentad> {
        let (pc, pi1, pi2) = Contentad::pair_category(&parts.q, &parts.act)?;
        if !same_category(&parts.tensor.dom, &pc) {
            return Err(Error::Boundary("tensor is not defined on the pair category".into()));
        }
        let pairs = PairIndex::new(&pi1, &pi2);
        let dual = Arc::new(Contextad::new(dual_parts(&parts, &pi1, &pi2)?)?);
        let kappa_tensor = dual
            .kappa_tensor
            .iter()
            .map(|(&(f, o), &k)| ((f, mirror(&pairs, dual.pi2().obj(o), dual.pi1().obj(o))), k))
            .collect();
        Ok(Contentad {
            kappa_unit: dual.kappa_unit.clone(),
            kappa_tensor,
            q: parts.q,
            act: parts.act,
            unit: parts.unit,
            tensor: parts.tensor,
            eta: parts.eta,
            mu: parts.mu,
            lam: parts.lam,
            rho: parts.rho,
            assoc: parts.assoc,
            pi1,
            pi2,
            pairs,
            dual,
        })
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        self.q.base()
    }

    pub fn total(&self) -> &Arc<FinCategory> {
        self.q.total()
    }

    pub fn pair_cat(&self) -> &Arc<FinCategory> {
        &self.pi1.dom
    }

    pub fn pi1(&self) -> &FinFunctor {
        &self.pi1
    }

    pub fn pi2(&self) -> &FinFunctor {
        &self.pi2
    }

    pub fn pair(&self, p: Obj, q: Obj) -> Option<Obj> {
        self.pairs.obj(p, q)
    }

    pub fn pair_mor(&self, u: Mor, v: Mor) -> Option<Mor> {
        self.pairs.mor(u, v)
    }

    /// `P ⊗ Q`, if `(P|Q)` is a pair.
    pub fn ten(&self, p: Obj, q: Obj) -> Option<Obj> {
        self.pair(p, q).map(|o| self.tensor.obj(o))
    }

    pub fn ten_mor(&self, u: Mor, v: Mor) -> Option<Mor> {
        self.pair_mor(u, v).map(|m| self.tensor.mor(m))
    }

    /// The context `q(P)` a grade lies over.
    pub fn over(&self, p: Obj) -> Obj {
        self.q.q.obj(p)
    }

    /// `act(P)`.
    pub fn extend(&self, p: Obj) -> Obj {
        self.act.obj(p)
    }

    pub fn eta_at(&self, a: Obj) -> Mor {
        self.eta[a.ix()]
    }

    /// `μ` at the pair `(P|Q)`.
    pub fn mu_at(&self, p: Obj, q: Obj) -> Option<Mor> {
        self.pair(p, q).map(|o| self.mu[o.ix()])
    }

    /// The chosen colift `P -> f_!P`.
    pub fn colift(&self, f: Mor, p: Obj) -> Mor {
        self.q.colift(f, p)
    }

    pub fn push(&self, f: Mor, p: Obj) -> Obj {
        self.q.push(f, p)
    }

    pub fn assoc_at(&self, p: Obj, q: Obj, r: Obj) -> Option<Mor> {
        self.assoc.get(&(p, q, r)).copied()
    }

    /// Table-for-table equality of two contentads.
    pub fn same_data(&self, other: &Contentad) -> bool {
        let c = self.base();
        let colifts_agree = c.morphisms().all(|f| {
            self.total()
                .objects()
                .filter(|&e| self.over(e) == c.src(f))
                .all(|e| self.colift(f, e) == other.colift(f, e))
        });
        self.q.q.same_as(&other.q.q)
            && colifts_agree
            && self.act.same_as(&other.act)
            && self.unit.same_as(&other.unit)
            && self.tensor.same_as(&other.tensor)
            && self.eta == other.eta
            && self.mu == other.mu
            && self.lam == other.lam
            && self.rho == other.rho
            && self.assoc == other.assoc
            && self.kappa_unit == other.kappa_unit
            && self.kappa_tensor == other.kappa_tensor
    }
}

/// The pair `(P|Q)` of `pairs`, which exists whenever its mirror image does.
fn mirror(pairs: &PairIndex, p: Obj, q: Obj) -> Obj {
    pairs.obj(p, q).expect("pair categories of a contentad and its dual are mirror images")
}

fn mirror_mor(pairs: &PairIndex, u: Mor, v: Mor) -> Mor {
    pairs.mor(u, v).expect("pair categories of a contentad and its dual are mirror images")
}

/// Contextad data on `C^op` with the same tables: lifts are the colifts,
/// `ε = η`, `δ = μ`, and pairs and triples are read back to front.
fn dual_parts(parts: &ContentadParts, pi1: &FinFunctor, pi2: &FinFunctor) -> Result<ContextadParts> {
    let pairs = &PairIndex::new(pi1, pi2);
    let c_op = Arc::new(parts.q.base().opposite());
    let m_op = Arc::new(parts.q.total().opposite());
    let q = &parts.q;
    let p = ClovenFibration::from_fn(q.q.opposite(m_op.clone(), c_op.clone()), |f, e| q.colift(f, e));
    let act = parts.act.opposite(m_op.clone(), c_op.clone());
    let unit = parts.unit.opposite(c_op, m_op.clone());
    let (dpc, d1, d2) = Contextad::pair_category(&p, &act)?;
    let dual_pairs = PairIndex::new(&d1, &d2);
    let tensor = FinFunctor::tabulate(
        dpc.clone(),
        m_op,
        |o| parts.tensor.obj(mirror(pairs, d2.obj(o), d1.obj(o))),
        |m| parts.tensor.mor(mirror_mor(pairs, d2.mor(m), d1.mor(m))),
    );
    let delta = dpc.objects().map(|o| parts.mu[mirror(pairs, d2.obj(o), d1.obj(o)).ix()]).collect();
    let kappa_tensor = match &parts.kappa_tensor {
        Some(k) => Some(
            k.iter()
                .map(|(&(f, o), &cell)| {
                    let key = format!("({}, {})", parts.q.base().mor_name(f), pi1.dom.obj_name(o));
                    let d = dual_pairs
                        .obj(pi2.obj(o), pi1.obj(o))
                        .ok_or(Error::Dangling { kind: "κ^⊗ pair", name: key })?;
                    Ok(((f, d), cell))
                })
                .collect::<Result<_>>()?,
        ),
        None => None,
    };
    Ok(ContextadParts {
        p,
        act,
        unit,
        tensor,
        epsilon: parts.eta.clone(),
        delta,
        lam: parts.lam.clone(),
        rho: parts.rho.clone(),
        assoc: parts.assoc.iter().map(|(&(a, b, c), &m)| ((c, b, a), m)).collect(),
        kappa_unit: parts.kappa_unit.clone(),
        kappa_tensor,
    })
}

/// The contextad on `C^op` this contentad is the reversal of.
pub fn dualize(x: &Contentad) -> Arc<Contextad> {
    x.dual.clone()
}

/// Read a contextad on `D` as a contentad on `D^op`. Inverse to
/// [`dualize`] up to taking the opposite twice.
pub fn undualize(x: &Contextad) -> Result<Contentad> {
    let c_op = Arc::new(x.base().opposite());
    let m_op = Arc::new(x.total().opposite());
    let q = ClovenOpfibration::from_fn(x.p.p.opposite(m_op.clone(), c_op.clone()), |f, e| x.p.lift(f, e));
    let act = x.act.opposite(m_op.clone(), c_op.clone());
    let unit = x.unit.opposite(c_op, m_op.clone());
    let (pc, pi1, pi2) = Contentad::pair_category(&q, &act)?;
    let dual_pair =
        |o: Obj| x.pair(pi2.obj(o), pi1.obj(o)).expect("pair categories of a contextad and its dual are mirror images");
    let tensor = FinFunctor::tabulate(
        pc.clone(),
        m_op,
        |o| x.tensor.obj(dual_pair(o)),
        |m| x.tensor.mor(x.pair_mor(pi2.mor(m), pi1.mor(m)).expect("pair categories are mirror images")),
    );
    let pairs = PairIndex::new(&pi1, &pi2);
    let kappa_tensor =
        x.kappa_tensor.iter().map(|(&(f, o), &k)| ((f, mirror(&pairs, x.pi2().obj(o), x.pi1().obj(o))), k)).collect();
    Contentad::new(ContentadParts {
        q,
        act,
        unit,
        tensor,
        eta: x.epsilon.components().to_vec(),
        mu: pc.objects().map(|o| x.delta.at(dual_pair(o))).collect(),
        lam: x.lam.clone(),
        rho: x.rho.clone(),
        assoc: x.assoc.iter().map(|(&(a, b, c), &m)| ((c, b, a), m)).collect(),
        kappa_unit: Some(x.kappa_unit.clone()),
        kappa_tensor: Some(kappa_tensor),
    })
}

/// Every contentad law, checked on the dual contextad and reported in the
/// dual vocabulary.
pub fn check_contentad(x: &Contentad) -> Result<Report> {
    let mut report = check_contextad(&x.dual)?.relabel(Law::co);
    report.subject = "contentad".into();
    Ok(report)
}
