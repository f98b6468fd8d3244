//! Cloven fibrations and opfibrations over finite categories.
//!
//! A cleavage is explicit data: one chosen lift per (base arrow, object over
//! its target). Cartesianness is checked in the strong sense, distinguishing
//! missing factorizations from non-unique ones.

use std::collections::HashMap;
use std::sync::Arc;

use crate::fincat::{pullback_category, same_category, FinCategory, FinFunctor, Mor, Obj};
use crate::report::{Error, Law, Report, Result, Tally};
use crate::witness;

#[derive(Clone, Debug)]
pub struct ClovenFibration {
    pub p: FinFunctor,
    cleavage: HashMap<(Mor, Obj), Mor>,
}

impl ClovenFibration {
    /// Requires a lift for every base arrow `f` and every `e` over `tgt f`.
    pub fn new(p: FinFunctor, cleavage: HashMap<(Mor, Obj), Mor>) -> Result<Self> {
        let (b, e) = (&p.cod, &p.dom);
        for f in b.morphisms() {
            for x in e.objects().filter(|&x| p.obj(x) == b.tgt(f)) {
                if !cleavage.contains_key(&(f, x)) {
                    return Err(Error::Missing {
                        table: "cleavage",
                        key: format!("({}, {})", b.mor_name(f), e.obj_name(x)),
                    });
                }
            }
        }
        Ok(ClovenFibration { p, cleavage })
    }

    /// Tabulate the cleavage from a function `(f, e) -> lift`.
    pub fn from_fn(p: FinFunctor, lift: impl Fn(Mor, Obj) -> Mor) -> Self {
        let mut cleavage = HashMap::new();
        let (b, e) = (&p.cod, &p.dom);
        for f in b.morphisms() {
            for x in e.objects().filter(|&x| p.obj(x) == b.tgt(f)) {
                cleavage.insert((f, x), lift(f, x));
            }
        }
        ClovenFibration { p, cleavage }
    }

    pub fn identity(c: Arc<FinCategory>) -> Self {
        let p = FinFunctor::identity(c);
        ClovenFibration::from_fn(p, |f, _| f)
    }

    /// Overwrite one entry; used to build deliberately broken fixtures.
    pub fn set_lift(&mut self, f: Mor, e: Obj, lift: Mor) {
        self.cleavage.insert((f, e), lift);
    }

    pub fn total(&self) -> &Arc<FinCategory> {
        &self.p.dom
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.p.cod
    }

    pub fn cleavage(&self) -> impl Iterator<Item = ((Mor, Obj), Mor)> + '_ {
        self.cleavage.iter().map(|(&k, &v)| (k, v))
    }

    /// The chosen lift of `f` at `e`; `p(e)` must be `tgt f`.
    pub fn lift(&self, f: Mor, e: Obj) -> Mor {
        match self.cleavage.get(&(f, e)) {
            Some(&m) => m,
            None => panic!("no lift of {} at {}", self.base().mor_name(f), self.total().obj_name(e)),
        }
    }

    /// `f* e`, the source of the chosen lift.
    pub fn pull(&self, f: Mor, e: Obj) -> Obj {
        self.total().src(self.lift(f, e))
    }

    /// The `v` with `p(v) = w` and `ell ∘ v = h`, for a cartesian `ell`.
    pub fn factor_through(&self, ell: Mor, h: Mor, w: Mor) -> Option<Mor> {
        let e = self.total();
        e.hom(e.src(h), e.src(ell)).find(|&v| self.p.mor(v) == w && e.compose(ell, v) == Some(h))
    }

    /// Factor `h` through the chosen lift of `f` at `tgt h` over `w`.
    pub fn factor(&self, f: Mor, h: Mor, w: Mor) -> Option<Mor> {
        self.factor_through(self.lift(f, self.total().tgt(h)), h, w)
    }

    /// The induced map `f*e -> g*e'` over `w`, for `u: e -> e'` with
    /// `g ∘ w = p(u) ∘ f`.
    pub fn reindex(&self, f: Mor, e: Obj, g: Mor, u: Mor, w: Mor) -> Option<Mor> {
        let tot = self.total();
        let h = tot.compose(u, self.lift(f, e))?;
        self.factor_through(self.lift(g, tot.tgt(u)), h, w)
    }

    /// Canonical vertical map `src ell -> f* e` for any cartesian `ell` over `f`
    /// into `e` (for instance a composite of chosen lifts).
    pub fn comparison(&self, ell: Mor) -> Option<Mor> {
        let tot = self.total();
        let f = self.p.mor(ell);
        let w = self.base().id(self.base().src(f));
        self.factor_through(self.lift(f, tot.tgt(ell)), ell, w)
    }

    /// Vertical part of the vertical/cartesian factorization
    /// `h = lift(p h, tgt h) ∘ vert(h)`.
    pub fn vertical_part(&self, h: Mor) -> Option<Mor> {
        self.comparison(h)
    }

    pub fn is_vertical(&self, m: Mor) -> bool {
        self.base().is_identity(self.p.mor(m))
    }
}

/// Lift typing and strong cartesianness of every chosen lift.
pub fn check_cartesian(fib: &ClovenFibration) -> Report {
    let (b, e, p) = (fib.base(), fib.total(), &fib.p);
    let mut typing = Tally::new(Law::LiftTyping);
    let mut exist = Tally::new(Law::LiftExistence);
    let mut unique = Tally::new(Law::LiftUniqueness);
    let mut keys: Vec<(Mor, Obj)> = fib.cleavage.keys().copied().collect();
    keys.sort();
    for (f, x) in keys {
        let ell = fib.cleavage[&(f, x)];
        let ok = e.tgt(ell) == x && p.mor(ell) == f;
        typing.record(ok, || {
            witness! {"f" => b.mor_name(f), "e" => e.obj_name(x), "lift" => e.describe(ell)}
        });
        if !ok {
            continue;
        }
        let s = e.src(ell);
        for &h in e.incoming(x) {
            let y = e.src(h);
            let mut by_w: HashMap<Mor, usize> = HashMap::new();
            for v in e.hom(y, s) {
                if e.comp(ell, v) == h {
                    *by_w.entry(p.mor(v)).or_default() += 1;
                }
            }
            for w in b.hom(p.obj(y), b.src(f)) {
                if b.comp(f, w) != p.mor(h) {
                    continue;
                }
                let n = by_w.get(&w).copied().unwrap_or(0);
                let wit = || {
                    witness! {
                        "f" => b.mor_name(f), "e" => e.obj_name(x),
                        "h" => e.mor_name(h), "w" => b.mor_name(w), "factorizations" => n
                    }
                };
                exist.record(n >= 1, wit);
                if n >= 1 {
                    unique.record(n == 1, wit);
                }
            }
        }
    }
    let mut r = Report::new("cartesian fibration");
    r.tally(typing);
    r.tally(exist);
    r.tally(unique);
    r
}

/// Identity lifts are identities.
pub fn check_normal(fib: &ClovenFibration) -> Report {
    let (b, e) = (fib.base(), fib.total());
    let mut t = Tally::new(Law::NormalCleavage);
    for x in e.objects() {
        let l = fib.lift(b.id(fib.p.obj(x)), x);
        t.record(l == e.id(x), || witness! {"e" => e.obj_name(x), "lift" => e.mor_name(l)});
    }
    let mut r = Report::new("normal cleavage");
    r.tally(t);
    r
}

/// Every isomorphism in a strict fibre is an identity.
pub fn check_gaunt(p: &FinFunctor) -> Report {
    let (b, e) = (&p.cod, &p.dom);
    let mut t = Tally::new(Law::Gaunt);
    for m in e.morphisms().filter(|&m| b.is_identity(p.mor(m))) {
        let bad = !e.is_identity(m) && e.is_iso(m);
        t.record(!bad, || witness! {"iso" => e.describe(m)});
    }
    let mut r = Report::new("gaunt functor");
    r.tally(t);
    r
}

/// Every morphism in a strict fibre is an identity.
pub fn check_discrete(p: &FinFunctor) -> Report {
    let (b, e) = (&p.cod, &p.dom);
    let mut t = Tally::new(Law::Discrete);
    for m in e.morphisms().filter(|&m| b.is_identity(p.mor(m))) {
        t.record(e.is_identity(m), || witness! {"morphism" => e.describe(m)});
    }
    let mut r = Report::new("discrete functor");
    r.tally(t);
    r
}

/// `q ∘ p` with the lift-of-lift cleavage.
pub fn compose_fibrations(f1: &ClovenFibration, f2: &ClovenFibration) -> Result<ClovenFibration> {
    if !same_category(&f1.p.cod, &f2.p.dom) {
        return Err(Error::Boundary("fibrations do not compose".into()));
    }
    let p = f1.p.then(&f2.p)?;
    Ok(ClovenFibration::from_fn(p, |g, x| {
        let l2 = f2.lift(g, f1.p.obj(x));
        f1.lift(l2, x)
    }))
}

/// Pullback of `fib: E -> B` along `f: A -> B`, with pairwise lifts. Returns
/// the pulled-back fibration and the projection to `E`.
pub fn pullback_fibration(fib: &ClovenFibration, f: &FinFunctor) -> Result<(ClovenFibration, FinFunctor)> {
    if !same_category(&fib.p.cod, &f.cod) {
        return Err(Error::Boundary("pullback along a functor into another base".into()));
    }
    let (cat, pa, pe) = pullback_category(f, &fib.p)?;
    let a = f.dom.clone();
    let mut lifts = HashMap::new();
    for g in a.morphisms() {
        for x in cat.objects().filter(|&x| pa.obj(x) == a.tgt(g)) {
            let l = fib.lift(f.mor(g), pe.obj(x));
            let name = format!("({}|{})", a.mor_name(g), fib.total().mor_name(l));
            let m = cat.mor(&name).ok_or_else(|| Error::ill_typed("pulled-back lift", name))?;
            lifts.insert((g, x), m);
        }
    }
    Ok((ClovenFibration::new(pa, lifts)?, pe))
}

/// Whether `k: E1 -> E2` over the common base sends chosen lifts to
/// cartesian morphisms. The comparison `k(f*e) -> f*(k e)` must be invertible.
pub fn check_cartesian_functor(fib1: &ClovenFibration, fib2: &ClovenFibration, k: &FinFunctor) -> Result<Report> {
    if !same_category(fib1.base(), fib2.base())
        || !same_category(&k.dom, fib1.total())
        || !same_category(&k.cod, fib2.total())
    {
        return Err(Error::Boundary("cartesian functor boundaries".into()));
    }
    let composite = k.then(&fib2.p)?;
    if composite.obj_table() != fib1.p.obj_table() || composite.mor_table() != fib1.p.mor_table() {
        return Err(Error::ill_typed("cartesian functor", "triangle over the base does not commute"));
    }
    let (b, e1, e2) = (fib1.base(), fib1.total(), fib2.total());
    let mut t = Tally::new(Law::CartesianFunctor);
    let mut keys: Vec<(Mor, Obj)> = fib1.cleavage.keys().copied().collect();
    keys.sort();
    for (f, x) in keys {
        let image = k.mor(fib1.lift(f, x));
        let ok = fib2.comparison(image).map(|c| e2.is_iso(c)).unwrap_or(false);
        t.record(ok, || {
            witness! {"f" => b.mor_name(f), "e" => e1.obj_name(x), "image" => e2.describe(image)}
        });
    }
    let mut r = Report::new("cartesian functor");
    r.tally(t);
    Ok(r)
}

/// A cloven opfibration: chosen cocartesian colifts `e -> f_! e`.
#[derive(Clone, Debug)]
pub struct ClovenOpfibration {
    pub q: FinFunctor,
    cocleavage: HashMap<(Mor, Obj), Mor>,
}

impl ClovenOpfibration {
    pub fn new(q: FinFunctor, cocleavage: HashMap<(Mor, Obj), Mor>) -> Result<Self> {
        let (b, e) = (&q.cod, &q.dom);
        for f in b.morphisms() {
            for x in e.objects().filter(|&x| q.obj(x) == b.src(f)) {
                if !cocleavage.contains_key(&(f, x)) {
                    return Err(Error::Missing {
                        table: "cocleavage",
                        key: format!("({}, {})", b.mor_name(f), e.obj_name(x)),
                    });
                }
            }
        }
        Ok(ClovenOpfibration { q, cocleavage })
    }

    pub fn from_fn(q: FinFunctor, colift: impl Fn(Mor, Obj) -> Mor) -> Self {
        let mut cocleavage = HashMap::new();
        let (b, e) = (&q.cod, &q.dom);
        for f in b.morphisms() {
            for x in e.objects().filter(|&x| q.obj(x) == b.src(f)) {
                cocleavage.insert((f, x), colift(f, x));
            }
        }
        ClovenOpfibration { q, cocleavage }
    }

    pub fn identity(c: Arc<FinCategory>) -> Self {
        ClovenOpfibration::from_fn(FinFunctor::identity(c), |f, _| f)
    }

    pub fn total(&self) -> &Arc<FinCategory> {
        &self.q.dom
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.q.cod
    }

    pub fn cocleavage(&self) -> impl Iterator<Item = ((Mor, Obj), Mor)> + '_ {
        self.cocleavage.iter().map(|(&k, &v)| (k, v))
    }

    pub fn colift(&self, f: Mor, e: Obj) -> Mor {
        match self.cocleavage.get(&(f, e)) {
            Some(&m) => m,
            None => panic!("no colift of {} at {}", self.base().mor_name(f), self.total().obj_name(e)),
        }
    }

    /// `f_! e`, the target of the chosen colift.
    pub fn push(&self, f: Mor, e: Obj) -> Obj {
        self.total().tgt(self.colift(f, e))
    }

    /// The `v` with `q(v) = w` and `v ∘ ell = h`, for a cocartesian `ell`.
    pub fn factor_from(&self, ell: Mor, h: Mor, w: Mor) -> Option<Mor> {
        let e = self.total();
        e.hom(e.tgt(ell), e.tgt(h)).find(|&v| self.q.mor(v) == w && e.compose(v, ell) == Some(h))
    }

    /// The same data read as a fibration between opposite categories.
    /// Opposites keep indices, so the table carries over verbatim.
    pub fn opposite(&self) -> ClovenFibration {
        let e = Arc::new(self.total().opposite());
        let b = Arc::new(self.base().opposite());
        ClovenFibration { p: self.q.opposite(e, b), cleavage: self.cocleavage.clone() }
    }

    /// Inverse of [`ClovenOpfibration::opposite`].
    pub fn from_opposite(fib: &ClovenFibration) -> ClovenOpfibration {
        let e = Arc::new(fib.total().opposite());
        let b = Arc::new(fib.base().opposite());
        ClovenOpfibration { q: fib.p.opposite(e, b), cocleavage: fib.cleavage.clone() }
    }
}

/// Colift typing and strong cocartesianness, checked on the opposite.
pub fn check_cocartesian(op: &ClovenOpfibration) -> Report {
    let mut r = check_cartesian(&op.opposite()).relabel(Law::co);
    r.subject = "cocartesian opfibration".into();
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{check_category, check_functor};

    fn product_projection(c: &Arc<FinCategory>, m: &Arc<FinCategory>) -> ClovenFibration {
        let (cm, p1, _) = FinCategory::product(c, m).unwrap();
        ClovenFibration::from_fn(p1, |f, x| {
            let name = cm.obj_name(x);
            let second = &name[name.find('|').unwrap() + 1..name.len() - 1];
            let idm = m.mor_name(m.id(m.obj(second).unwrap()));
            cm.mor(&format!("({}|{})", c.mor_name(f), idm)).unwrap()
        })
    }

    #[test]
    fn product_projection_is_a_normal_fibration() {
        let c = Arc::new(FinCategory::walking_arrow());
        let m = Arc::new(FinCategory::walking_iso());
        let fib = product_projection(&c, &m);
        assert!(check_cartesian(&fib).passed());
        assert!(check_normal(&fib).passed());
        let g = check_gaunt(&fib.p);
        assert!(!g.passed());
        assert!(check_discrete(&fib.p).failed_laws() == vec![Law::Discrete]);
    }

    #[test]
    fn identity_fibration() {
        let c = Arc::new(FinCategory::walking_arrow());
        let fib = ClovenFibration::identity(c);
        assert!(check_cartesian(&fib).passed() && check_normal(&fib).passed());
        assert!(check_gaunt(&fib.p).passed() && check_discrete(&fib.p).passed());
    }

    #[test]
    fn non_normal_cleavage_is_flagged() {
        let c = Arc::new(FinCategory::walking_arrow());
        let m = Arc::new(FinCategory::walking_iso());
        let mut fib = product_projection(&c, &m);
        let e = fib.total().clone();
        let x = e.obj("(0|0)").unwrap();
        // the non-identity vertical iso (0|0) -> (0|0)? there is none; use (0|1) -> (0|0)
        let iso = e.mor("(0<=0|1<=0)").unwrap();
        let id0 = c.id(c.obj("0").unwrap());
        fib.set_lift(id0, x, iso);
        assert!(check_cartesian(&fib).passed());
        let r = check_normal(&fib);
        assert_eq!(r.get(Law::NormalCleavage).unwrap().witness.as_ref().unwrap().get("e"), Some("(0|0)"));
    }

    #[test]
    fn codomain_fibration_with_pullbacks() {
        // in a poset with meets every square of the evident shape is a pullback
        let c = Arc::new(FinCategory::poset(&["b", "x", "y", "t"], |a, b| a == b || a == 0 || b == 3).unwrap());
        assert!(check_category(&c).passed());
        let (arr, _, d1) = crate::fincat::arrow_category(&c).unwrap();
        let fib = ClovenFibration::from_fn(d1.clone(), |f, x| {
            // x is an arrow d: X -> tgt f; pull back along f: meet of X and src f
            let d = c.mor(arr.obj_name(x)).unwrap();
            let (a, xs) = (c.src(f), c.src(d));
            let meet = [c.obj("b").unwrap(), a, xs, c.obj("t").unwrap()]
                .into_iter()
                .filter(|&m| c.hom(m, a).next().is_some() && c.hom(m, xs).next().is_some())
                .max_by_key(|&m| c.incoming(m).len())
                .unwrap();
            let pd = c.hom(meet, a).next().unwrap();
            let top = c.hom(meet, xs).next().unwrap();
            arr.mor(&format!("[{},{}]:{}=>{}", c.mor_name(top), c.mor_name(f), c.mor_name(pd), c.mor_name(d))).unwrap()
        });
        assert!(check_cartesian(&fib).passed(), "{}", check_cartesian(&fib));
        let (pb, _) = pullback_fibration(&fib, &d1).unwrap();
        assert!(check_cartesian(&pb).passed());
        let comp = compose_fibrations(&fib, &ClovenFibration::identity(c.clone())).unwrap();
        assert!(check_cartesian(&comp).passed());
        assert!(check_cartesian_functor(&fib, &fib, &FinFunctor::identity(arr)).unwrap().passed());
    }

    #[test]
    fn collapsing_functor_is_not_cartesian() {
        // E = walking arrow over itself; k sends everything over 0 and 1 to the
        // fibre of C×{a<->b}, but collapses the lift onto a non-cartesian arrow
        let c = Arc::new(FinCategory::walking_arrow());
        let fib1 = ClovenFibration::identity(c.clone());
        // E2 = C × walking arrow, p2 = first projection: lift(f,(1|1)) = (f|id_1)
        // is cartesian, but (f|0<=1) is not.
        let m = Arc::new(FinCategory::walking_arrow());
        let (e2, p2, _) = FinCategory::product(&c, &m).unwrap();
        let fib2 = ClovenFibration::from_fn(p2.clone(), |f, x| {
            let name = e2.obj_name(x).to_string();
            let second = &name[name.find('|').unwrap() + 1..name.len() - 1];
            e2.mor(&format!("({}|{}<={})", c.mor_name(f), second, second)).unwrap()
        });
        assert!(check_cartesian(&fib2).passed());
        let k = FinFunctor::from_names(
            c.clone(),
            e2.clone(),
            &[("0".into(), "(0|0)".into()), ("1".into(), "(1|1)".into())],
            &[
                ("0<=0".into(), "(0<=0|0<=0)".into()),
                ("1<=1".into(), "(1<=1|1<=1)".into()),
                ("0<=1".into(), "(0<=1|0<=1)".into()),
            ],
        )
        .unwrap();
        assert!(check_functor(&k).passed());
        let r = check_cartesian_functor(&fib1, &fib2, &k).unwrap();
        assert_eq!(r.failed_laws(), vec![Law::CartesianFunctor]);
    }
}
