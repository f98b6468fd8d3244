//! Contextads: a cloven fibration `p: M -> C` of grades together with an
//! action `⊙: M -> C`, a unit `I`, a tensor `⊗` on dependent pairs, a counit
//! `ε: A⊙I_A -> A`, a comultiplication `δ: A⊙(P⊗Q) -> (A⊙P)⊙Q`, vertical
//! structure isos `λ, ρ, α` and cartesianators `κ^I, κ^⊗`.
//!
//! Orientation of the structure cells:
//!
//! ```text
//! λ_P          : P -> I_{pP} ⊗ ε*P
//! ρ_P          : P ⊗ I_{A⊙P} -> P
//! α_{P,Q,R}    : P ⊗ (Q ⊗ R) -> (P ⊗ Q) ⊗ δ*R
//! κ^I_f        : I_A -> f*I_{A'}
//! κ^⊗_{f,P,Q}  : f*P ⊗ (f⊙P)*Q -> f*(P ⊗ Q)
//! ```
//!
//! where `f⊙P` is `⊙` applied to the chosen lift of `f` at `P`.

mod builders;
mod check;
mod morphism;

pub use builders::*;
pub use check::check_contextad;
pub use morphism::*;

use std::collections::HashMap;
use std::sync::Arc;

use crate::fibration::ClovenFibration;
use crate::fincat::{pullback_category, same_category, FinCategory, FinFunctor, Mor, NatTrans, Obj, PairIndex};
use crate::report::{Error, Result};

/// Raw data of a contextad, before validation.
#[derive(Clone, Debug)]
pub struct ContextadParts {
    pub p: ClovenFibration,
    pub act: FinFunctor,
    pub unit: FinFunctor,
    /// Must have the pair category of [`Contextad::pair_category`] as domain.
    pub tensor: FinFunctor,
    /// Indexed by objects of the base.
    pub epsilon: Vec<Mor>,
    /// Indexed by objects of the pair category.
    pub delta: Vec<Mor>,
    pub lam: Vec<Mor>,
    pub rho: Vec<Mor>,
    pub assoc: HashMap<(Obj, Obj, Obj), Mor>,
    /// `None` synthesizes the canonical comparison of lifts.
    pub kappa_unit: Option<Vec<Mor>>,
    pub kappa_tensor: Option<HashMap<(Mor, Obj), Mor>>,
}

#[derive(Clone, Debug)]
pub struct Contextad {
    pub p: ClovenFibration,
    pub act: FinFunctor,
    pub unit: FinFunctor,
    pub tensor: FinFunctor,
    pub epsilon: NatTrans,
    pub delta: NatTrans,
    pub lam: Vec<Mor>,
    pub rho: Vec<Mor>,
    pub assoc: HashMap<(Obj, Obj, Obj), Mor>,
    pub kappa_unit: Vec<Mor>,
    /// Keyed by the base arrow `f` and the pair object `(P|Q)` over `tgt f`.
    pub kappa_tensor: HashMap<(Mor, Obj), Mor>,
    pi1: FinFunctor,
    pi2: FinFunctor,
    pairs: PairIndex,
}

impl Contextad {
    /// The category of dependent pairs `(P|Q)` with `A⊙P = p(Q)`, i.e. the
    /// strict pullback of `act` against `p`.
    pub fn pair_category(p: &ClovenFibration, act: &FinFunctor) -> Result<(Arc<FinCategory>, FinFunctor, FinFunctor)> {
        pullback_category(act, &p.p)
    }

    /// Validate the data and assemble the contextad. Only structural typing is
    /// checked here; laws are left to [`check_contextad`].
    pub fn new(parts: ContextadParts) -> Result<Contextad> {
        let ContextadParts { p, act, unit, tensor, epsilon, delta, lam, rho, assoc, kappa_unit, kappa_tensor } = parts;
        let (pc, pi1, pi2) = Contextad::pair_category(&p, &act)?;
        if !same_category(&tensor.dom, &pc) {
            return Err(Error::Boundary("tensor is not defined on the pair category".into()));
        }
        let pairs = PairIndex::new(&pi1, &pi2);
        let base = p.base().clone();
        let id_c = FinFunctor::identity(base.clone());
        let eps_src = unit.then(&act)?;
        let epsilon = NatTrans::new(eps_src, id_c, epsilon)?;
        let delta = NatTrans::new(tensor.then(&act)?, pi2.then(&act)?, delta)?;
        let mut x = Contextad {
            p,
            act,
            unit,
            tensor,
            epsilon,
            delta,
            lam,
            rho,
            assoc,
            kappa_unit: Vec::new(),
            kappa_tensor: HashMap::new(),
            pi1,
            pi2,
            pairs,
        };
        x.validate_core()?;
        x.kappa_unit = match kappa_unit {
            Some(k) => k,
            None => x.canonical_kappa_unit()?,
        };
        x.kappa_tensor = match kappa_tensor {
            Some(k) => k,
            None => x.canonical_kappa_tensor()?,
        };
        x.validate()?;
        Ok(x)
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        self.p.base()
    }

    pub fn total(&self) -> &Arc<FinCategory> {
        self.p.total()
    }

    pub fn pair_cat(&self) -> &Arc<FinCategory> {
        &self.tensor.dom
    }

    pub fn pi1(&self) -> &FinFunctor {
        &self.pi1
    }

    pub fn pi2(&self) -> &FinFunctor {
        &self.pi2
    }

    /// The pair object `(P|Q)`, if `A⊙P = p(Q)`.
    pub fn pair(&self, p: Obj, q: Obj) -> Option<Obj> {
        self.pairs.obj(p, q)
    }

    pub fn pair_mor(&self, u: Mor, v: Mor) -> Option<Mor> {
        self.pairs.mor(u, v)
    }

    /// `P ⊗ Q`.
    pub fn ten(&self, p: Obj, q: Obj) -> Option<Obj> {
        self.pair(p, q).map(|o| self.tensor.obj(o))
    }

    /// `u ⊗ v` on a pair morphism.
    pub fn ten_mor(&self, u: Mor, v: Mor) -> Option<Mor> {
        self.pair_mor(u, v).map(|m| self.tensor.mor(m))
    }

    /// Grade's context `p(P)`.
    pub fn ctx(&self, p: Obj) -> Obj {
        self.p.p.obj(p)
    }

    /// `A⊙P` for `P` over `A`.
    pub fn extend(&self, p: Obj) -> Obj {
        self.act.obj(p)
    }

    pub fn eps(&self, a: Obj) -> Mor {
        self.epsilon.at(a)
    }

    /// `δ_{P,Q}`.
    pub fn del(&self, p: Obj, q: Obj) -> Option<Mor> {
        self.pair(p, q).map(|o| self.delta.at(o))
    }

    pub fn lift(&self, f: Mor, e: Obj) -> Mor {
        self.p.lift(f, e)
    }

    /// `f*P`.
    pub fn star(&self, f: Mor, e: Obj) -> Obj {
        self.p.pull(f, e)
    }

    /// `f⊙P`, the action on the chosen lift of `f` at `P`.
    pub fn act_lift(&self, f: Mor, e: Obj) -> Mor {
        self.act.mor(self.lift(f, e))
    }

    pub fn lam_at(&self, p: Obj) -> Mor {
        self.lam[p.ix()]
    }

    pub fn rho_at(&self, p: Obj) -> Mor {
        self.rho[p.ix()]
    }

    pub fn assoc_at(&self, p: Obj, q: Obj, r: Obj) -> Option<Mor> {
        self.assoc.get(&(p, q, r)).copied()
    }

    /// All pair objects as `(P, Q)`.
    pub fn pair_list(&self) -> Vec<(Obj, Obj)> {
        self.pair_cat().objects().map(|o| (self.pi1.obj(o), self.pi2.obj(o))).collect()
    }

    /// All composable triples `(P, Q, R)`: `Q` over `A⊙P`, `R` over `(A⊙P)⊙Q`.
    pub fn triples(&self) -> Vec<(Obj, Obj, Obj)> {
        let by_ctx = self.objects_by_ctx();
        let mut out = Vec::new();
        for p in self.total().objects() {
            for &q in &by_ctx[self.extend(p).ix()] {
                for &r in &by_ctx[self.extend(q).ix()] {
                    out.push((p, q, r));
                }
            }
        }
        out
    }

    /// Objects of `M` grouped by their context.
    pub fn objects_by_ctx(&self) -> Vec<Vec<Obj>> {
        let mut by = vec![Vec::new(); self.base().num_objects()];
        for e in self.total().objects() {
            by[self.ctx(e).ix()].push(e);
        }
        by
    }

    /// Morphisms of `M` grouped by the base arrow they lie over.
    pub fn morphisms_over(&self) -> Vec<Vec<Mor>> {
        let mut by = vec![Vec::new(); self.base().num_morphisms()];
        for m in self.total().morphisms() {
            by[self.p.p.mor(m).ix()].push(m);
        }
        by
    }

    /// Expected `(src, tgt)` of `λ_P`.
    pub fn lam_type(&self, p: Obj) -> Option<(Obj, Obj)> {
        let a = self.ctx(p);
        let tgt = self.ten(self.unit.obj(a), self.star(self.eps(a), p))?;
        Some((p, tgt))
    }

    pub fn rho_type(&self, p: Obj) -> Option<(Obj, Obj)> {
        let src = self.ten(p, self.unit.obj(self.extend(p)))?;
        Some((src, p))
    }

    pub fn assoc_type(&self, p: Obj, q: Obj, r: Obj) -> Option<(Obj, Obj)> {
        let src = self.ten(p, self.ten(q, r)?)?;
        let pq = self.ten(p, q)?;
        let tgt = self.ten(pq, self.star(self.del(p, q)?, r))?;
        Some((src, tgt))
    }

    pub fn kappa_unit_type(&self, f: Mor) -> (Obj, Obj) {
        let c = self.base();
        (self.unit.obj(c.src(f)), self.star(f, self.unit.obj(c.tgt(f))))
    }

    /// For `f` and the pair object `(P|Q)` over `tgt f`.
    pub fn kappa_tensor_type(&self, f: Mor, pq: Obj) -> Option<(Obj, Obj)> {
        let (p, q) = (self.pi1.obj(pq), self.pi2.obj(pq));
        let src = self.ten(self.star(f, p), self.star(self.act_lift(f, p), q))?;
        let tgt = self.star(f, self.tensor.obj(pq));
        Some((src, tgt))
    }

    fn canonical_kappa_unit(&self) -> Result<Vec<Mor>> {
        let c = self.base();
        c.morphisms()
            .map(|f| {
                let ell = self.lift(f, self.unit.obj(c.tgt(f)));
                self.p.factor_through(ell, self.unit.mor(f), c.id(c.src(f))).ok_or_else(|| {
                    Error::ill_typed("unit", format!("I({}) does not factor through its lift", c.mor_name(f)))
                })
            })
            .collect()
    }

    fn canonical_kappa_tensor(&self) -> Result<HashMap<(Mor, Obj), Mor>> {
        let (c, pc) = (self.base(), self.pair_cat());
        let mut out = HashMap::new();
        for f in c.morphisms() {
            for pq in pc.objects().filter(|&o| self.ctx(self.pi1.obj(o)) == c.tgt(f)) {
                let (p, q) = (self.pi1.obj(pq), self.pi2.obj(pq));
                let l1 = self.lift(f, p);
                let l2 = self.lift(self.act.mor(l1), q);
                let missing = || {
                    Error::ill_typed(
                        "tensor",
                        format!("no canonical cartesianator at ({}, {})", c.mor_name(f), pc.obj_name(pq)),
                    )
                };
                let h = self.ten_mor(l1, l2).ok_or_else(missing)?;
                let ell = self.lift(f, self.tensor.obj(pq));
                let k = self.p.factor_through(ell, h, c.id(c.src(f))).ok_or_else(missing)?;
                out.insert((f, pq), k);
            }
        }
        Ok(out)
    }

    /// Boundaries, lift typing, functor typing and the strict fibre
    /// conditions on `I` and `⊗`.
    fn validate_core(&self) -> Result<()> {
        let (c, m) = (self.base(), self.total());
        let boundary = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::Boundary(what.to_owned()))
            }
        };
        boundary(same_category(&self.act.dom, m) && same_category(&self.act.cod, c), "act must map M to C")?;
        boundary(same_category(&self.unit.dom, c) && same_category(&self.unit.cod, m), "unit must map C to M")?;
        boundary(same_category(&self.tensor.cod, m), "tensor must land in M")?;
        for ((f, e), l) in self.p.cleavage() {
            if m.tgt(l) != e || self.p.p.mor(l) != f {
                return Err(Error::ill_typed(
                    "lift",
                    format!("lift of {} at {} is {}", c.mor_name(f), m.obj_name(e), m.describe(l)),
                ));
            }
        }
        for (name, f) in [("p", &self.p.p), ("act", &self.act), ("unit", &self.unit), ("tensor", &self.tensor)] {
            functor_typing(name, f)?;
        }
        for a in c.objects() {
            if self.ctx(self.unit.obj(a)) != a {
                return Err(Error::ill_typed("unit", format!("I_{} is not over {}", c.obj_name(a), c.obj_name(a))));
            }
        }
        for f in c.morphisms() {
            if self.p.p.mor(self.unit.mor(f)) != f {
                return Err(Error::ill_typed("unit", format!("I({}) is not over it", c.mor_name(f))));
            }
        }
        let pc = self.pair_cat();
        for o in pc.objects() {
            if self.ctx(self.tensor.obj(o)) != self.ctx(self.pi1.obj(o)) {
                return Err(Error::ill_typed("tensor", format!("{} lies over the wrong context", pc.obj_name(o))));
            }
        }
        for u in pc.morphisms() {
            if self.p.p.mor(self.tensor.mor(u)) != self.p.p.mor(self.pi1.mor(u)) {
                return Err(Error::ill_typed("tensor", format!("{} lies over the wrong arrow", pc.mor_name(u))));
            }
        }
        Ok(())
    }

    /// Structural typing of every component. Run before any law is checked.
    pub fn validate(&self) -> Result<()> {
        self.validate_core()?;
        let (c, m, pc) = (self.base(), self.total(), self.pair_cat());
        if self.lam.len() != m.num_objects() || self.rho.len() != m.num_objects() {
            return Err(Error::ill_typed("structure", "λ and ρ must have one component per grade"));
        }
        if self.kappa_unit.len() != c.num_morphisms() {
            return Err(Error::ill_typed("structure", "κ^I must have one component per base arrow"));
        }
        for a in c.objects() {
            let e = self.eps(a);
            if c.src(e) != self.extend(self.unit.obj(a)) || c.tgt(e) != a {
                return Err(Error::ill_typed("ε", format!("component at {} is {}", c.obj_name(a), c.describe(e))));
            }
        }
        for o in pc.objects() {
            let d = self.delta.at(o);
            let q = self.pi2.obj(o);
            if c.src(d) != self.extend(self.tensor.obj(o)) || c.tgt(d) != self.extend(q) {
                return Err(Error::ill_typed("δ", format!("component at {} is {}", pc.obj_name(o), c.describe(d))));
            }
        }
        let vertical = |what: &str, key: String, cell: Mor, ty: Option<(Obj, Obj)>| -> Result<()> {
            let Some((s, t)) = ty else {
                return Err(Error::ill_typed(what, format!("{key}: boundary objects do not exist")));
            };
            if m.src(cell) != s || m.tgt(cell) != t {
                return Err(Error::ill_typed(
                    what,
                    format!("{key}: expected {} -> {}, got {}", m.obj_name(s), m.obj_name(t), m.describe(cell)),
                ));
            }
            if !self.p.is_vertical(cell) {
                return Err(Error::ill_typed(what, format!("{key}: {} is not vertical", m.mor_name(cell))));
            }
            Ok(())
        };
        for p in m.objects() {
            vertical("λ", m.obj_name(p).to_owned(), self.lam_at(p), self.lam_type(p))?;
            vertical("ρ", m.obj_name(p).to_owned(), self.rho_at(p), self.rho_type(p))?;
        }
        for (p, q, r) in self.triples() {
            let key = format!("({}, {}, {})", m.obj_name(p), m.obj_name(q), m.obj_name(r));
            let a = self.assoc_at(p, q, r).ok_or_else(|| Error::Missing { table: "α", key: key.clone() })?;
            vertical("α", key, a, self.assoc_type(p, q, r))?;
        }
        for f in c.morphisms() {
            vertical("κ^I", c.mor_name(f).to_owned(), self.kappa_unit[f.ix()], Some(self.kappa_unit_type(f)))?;
            for pq in pc.objects().filter(|&o| self.ctx(self.pi1.obj(o)) == c.tgt(f)) {
                let key = format!("({}, {})", c.mor_name(f), pc.obj_name(pq));
                let k = self
                    .kappa_tensor
                    .get(&(f, pq))
                    .copied()
                    .ok_or_else(|| Error::Missing { table: "κ^⊗", key: key.clone() })?;
                vertical("κ^⊗", key, k, self.kappa_tensor_type(f, pq))?;
            }
        }
        Ok(())
    }
}

/// Source/target preservation, as a structural error.
pub(crate) fn functor_typing(name: &str, f: &FinFunctor) -> Result<()> {
    let (c, d) = (&f.dom, &f.cod);
    for m in c.morphisms() {
        let fm = f.mor(m);
        if d.src(fm) != f.obj(c.src(m)) || d.tgt(fm) != f.obj(c.tgt(m)) {
            return Err(Error::ill_typed(
                format!("functor {name}"),
                format!("{} is sent to {}", c.describe(m), d.describe(fm)),
            ));
        }
    }
    Ok(())
}
