//! Finite monoidal categories, used as grades for actegories and graded
//! comonads.

use std::collections::HashMap;
use std::sync::Arc;

use crate::fincat::{check_functor, FinCategory, FinFunctor, Mor, Obj, PairIndex};
use crate::report::{Error, Law, Report, Result, Tally};
use crate::witness;

/// `(G, ⊗, I)` with associator `a⊗(b⊗c) -> (a⊗b)⊗c`, left unitor `I⊗a -> a`
/// and right unitor `a⊗I -> a`.
#[derive(Clone, Debug)]
pub struct MonoidalCategory {
    pub cat: Arc<FinCategory>,
    /// Domain is `G × G`.
    pub tensor: FinFunctor,
    pub unit: Obj,
    pub assoc: HashMap<(Obj, Obj, Obj), Mor>,
    pub left_unitor: Vec<Mor>,
    pub right_unitor: Vec<Mor>,
    pairs: PairIndex,
}

impl MonoidalCategory {
    /// General constructor; `obj` and `mor` tabulate the tensor on pairs.
    pub fn new(
        cat: Arc<FinCategory>,
        obj: impl Fn(Obj, Obj) -> Obj,
        mor: impl Fn(Mor, Mor) -> Mor,
        unit: Obj,
        assoc: impl Fn(Obj, Obj, Obj) -> Mor,
        left_unitor: impl Fn(Obj) -> Mor,
        right_unitor: impl Fn(Obj) -> Mor,
    ) -> Result<MonoidalCategory> {
        let (sq, p1, p2) = FinCategory::product(&cat, &cat)?;
        let tensor =
            FinFunctor::tabulate(sq, cat.clone(), |o| obj(p1.obj(o), p2.obj(o)), |m| mor(p1.mor(m), p2.mor(m)));
        let pairs = PairIndex::new(&p1, &p2);
        let mut a = HashMap::new();
        for x in cat.objects() {
            for y in cat.objects() {
                for z in cat.objects() {
                    a.insert((x, y, z), assoc(x, y, z));
                }
            }
        }
        let m = MonoidalCategory {
            left_unitor: cat.objects().map(&left_unitor).collect(),
            right_unitor: cat.objects().map(&right_unitor).collect(),
            cat,
            tensor,
            unit,
            assoc: a,
            pairs,
        };
        m.validate()?;
        Ok(m)
    }

    /// Strict monoidal structure: all structure cells are identities.
    pub fn strict(
        cat: Arc<FinCategory>,
        obj: impl Fn(Obj, Obj) -> Obj,
        mor: impl Fn(Mor, Mor) -> Mor,
        unit: Obj,
    ) -> Result<MonoidalCategory> {
        let c = cat.clone();
        let o = &obj;
        MonoidalCategory::new(cat, o, mor, unit, |x, y, z| c.id(o(x, o(y, z))), |x| c.id(x), |x| c.id(x))
    }

    /// A finite monoid as a discrete strict monoidal category.
    pub fn discrete_monoid<S: AsRef<str>>(
        elements: &[S],
        unit: usize,
        mult: impl Fn(usize, usize) -> usize,
    ) -> Result<MonoidalCategory> {
        let cat = Arc::new(FinCategory::discrete(elements));
        let c = cat.clone();
        let mult = &mult;
        MonoidalCategory::strict(
            cat,
            |a, b| Obj(mult(a.ix(), b.ix()) as u32),
            move |u, v| c.id(Obj(mult(c.src(u).ix(), c.src(v).ix()) as u32)),
            Obj(unit as u32),
        )
    }

    /// A commutative monoid as a one-object strict monoidal category whose
    /// morphisms are the elements, tensored by multiplication.
    pub fn commutative_delooping<S: AsRef<str>>(
        object: &str,
        elements: &[S],
        unit: usize,
        mult: impl Fn(usize, usize) -> usize + Clone,
    ) -> Result<MonoidalCategory> {
        let cat = Arc::new(FinCategory::delooping(object, elements, unit, mult.clone())?);
        MonoidalCategory::strict(cat, |a, _| a, move |u, v| Mor(mult(u.ix(), v.ix()) as u32), Obj(0))
    }

    pub fn terminal() -> MonoidalCategory {
        MonoidalCategory::discrete_monoid(&["1"], 0, |_, _| 0).expect("terminal monoidal category")
    }

    /// `a ⊗ b`.
    pub fn ten(&self, a: Obj, b: Obj) -> Obj {
        self.tensor.obj(self.pairs.obj(a, b).expect("product contains every pair"))
    }

    pub fn ten_mor(&self, u: Mor, v: Mor) -> Mor {
        self.tensor.mor(self.pairs.mor(u, v).expect("product contains every pair"))
    }

    pub fn assoc_at(&self, a: Obj, b: Obj, c: Obj) -> Mor {
        self.assoc[&(a, b, c)]
    }

    /// The reversed product `a ⊗' b = b ⊗ a`.
    pub fn reversed(&self) -> Result<MonoidalCategory> {
        let c = &self.cat;
        let inv =
            |m: Mor| c.inverse(m).ok_or_else(|| Error::ill_typed("monoidal structure", "associator is not invertible"));
        let mut assoc = HashMap::new();
        for x in c.objects() {
            for y in c.objects() {
                for z in c.objects() {
                    assoc.insert((x, y, z), inv(self.assoc_at(z, y, x))?);
                }
            }
        }
        MonoidalCategory::new(
            c.clone(),
            |a, b| self.ten(b, a),
            |u, v| self.ten_mor(v, u),
            self.unit,
            |x, y, z| assoc[&(x, y, z)],
            |x| self.right_unitor[x.ix()],
            |x| self.left_unitor[x.ix()],
        )
    }

    fn validate(&self) -> Result<()> {
        let c = &self.cat;
        crate::contextad::functor_typing("tensor", &self.tensor)?;
        let bad = |what: &str, m: Mor| Err(Error::ill_typed(what, c.describe(m)));
        for x in c.objects() {
            let l = self.left_unitor[x.ix()];
            if c.src(l) != self.ten(self.unit, x) || c.tgt(l) != x {
                return bad("left unitor", l);
            }
            let r = self.right_unitor[x.ix()];
            if c.src(r) != self.ten(x, self.unit) || c.tgt(r) != x {
                return bad("right unitor", r);
            }
        }
        for (&(x, y, z), &a) in &self.assoc {
            if c.src(a) != self.ten(x, self.ten(y, z)) || c.tgt(a) != self.ten(self.ten(x, y), z) {
                return bad("associator", a);
            }
        }
        Ok(())
    }
}

/// Functoriality of `⊗`, invertibility and naturality of the structure
/// cells, the triangle and the pentagon.
pub fn check_monoidal(m: &MonoidalCategory) -> Report {
    let c = &m.cat;
    let mut report = Report::new("monoidal category");
    let f = check_functor(&m.tensor);
    let functorial = f.passed();
    report.extend(f);

    let mut iso = Tally::new(Law::MonoidalStructureIso);
    for x in c.objects() {
        iso.record(c.is_iso(m.left_unitor[x.ix()]), || witness! {"cell" => "left unitor", "a" => c.obj_name(x)});
        iso.record(c.is_iso(m.right_unitor[x.ix()]), || witness! {"cell" => "right unitor", "a" => c.obj_name(x)});
    }
    let mut keys: Vec<_> = m.assoc.keys().copied().collect();
    keys.sort();
    for &(x, y, z) in &keys {
        iso.record(c.is_iso(m.assoc_at(x, y, z)), || {
            witness! {"cell" => "associator", "a" => c.obj_name(x), "b" => c.obj_name(y), "c" => c.obj_name(z)}
        });
    }
    report.tally(iso);
    if !functorial {
        return report;
    }

    let mut nat = Tally::new(Law::MonoidalNaturality);
    let unit_id = c.id(m.unit);
    for u in c.morphisms() {
        let (a, b) = (c.src(u), c.tgt(u));
        let l = c.compose(u, m.left_unitor[a.ix()]) == c.compose(m.left_unitor[b.ix()], m.ten_mor(unit_id, u));
        nat.record(l, || witness! {"cell" => "left unitor", "u" => c.mor_name(u)});
        let r = c.compose(u, m.right_unitor[a.ix()]) == c.compose(m.right_unitor[b.ix()], m.ten_mor(u, unit_id));
        nat.record(r, || witness! {"cell" => "right unitor", "u" => c.mor_name(u)});
    }
    for u in c.morphisms() {
        for v in c.morphisms() {
            for w in c.morphisms() {
                let lhs = c.compose(m.assoc_at(c.tgt(u), c.tgt(v), c.tgt(w)), m.ten_mor(u, m.ten_mor(v, w)));
                let rhs = c.compose(m.ten_mor(m.ten_mor(u, v), w), m.assoc_at(c.src(u), c.src(v), c.src(w)));
                nat.record(lhs.is_some() && lhs == rhs, || {
                    witness! {"cell" => "associator", "u" => c.mor_name(u), "v" => c.mor_name(v), "w" => c.mor_name(w)}
                });
            }
        }
    }
    report.tally(nat);

    let mut tri = Tally::new(Law::MonoidalTriangle);
    for a in c.objects() {
        for b in c.objects() {
            let lhs = c.compose(m.ten_mor(m.right_unitor[a.ix()], c.id(b)), m.assoc_at(a, m.unit, b));
            let rhs = m.ten_mor(c.id(a), m.left_unitor[b.ix()]);
            tri.record(lhs == Some(rhs), || witness! {"a" => c.obj_name(a), "b" => c.obj_name(b)});
        }
    }
    report.tally(tri);

    let mut pent = Tally::new(Law::MonoidalPentagon);
    for a in c.objects() {
        for b in c.objects() {
            for x in c.objects() {
                for d in c.objects() {
                    let lhs = c.compose(m.assoc_at(m.ten(a, b), x, d), m.assoc_at(a, b, m.ten(x, d)));
                    let rhs = c.compose_all(&[
                        m.ten_mor(m.assoc_at(a, b, x), c.id(d)),
                        m.assoc_at(a, m.ten(b, x), d),
                        m.ten_mor(c.id(a), m.assoc_at(b, x, d)),
                    ]);
                    pent.record(lhs.is_some() && lhs == rhs, || {
                        witness! {"a" => c.obj_name(a), "b" => c.obj_name(b), "c" => c.obj_name(x), "d" => c.obj_name(d)}
                    });
                }
            }
        }
    }
    report.tally(pent);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_and_terminal_pass() {
        let z2 = MonoidalCategory::discrete_monoid(&["0", "1"], 0, |a, b| (a + b) % 2).unwrap();
        assert!(check_monoidal(&z2).passed());
        assert!(check_monoidal(&MonoidalCategory::terminal()).passed());
        let rev = z2.reversed().unwrap();
        assert!(check_monoidal(&rev).passed());
    }

    #[test]
    fn idempotent_delooping_passes() {
        let m = MonoidalCategory::commutative_delooping("*", &["1", "a"], 0, |x, y| x.max(y)).unwrap();
        assert!(check_monoidal(&m).passed());
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // x(xx) = xy = x but (xx)x = yx = y, so the identity associator is ill-typed
        let bad = MonoidalCategory::discrete_monoid(&["e", "x", "y"], 0, |a, b| match (a, b) {
            (0, b) => b,
            (a, 0) => a,
            (1, 1) => 2,
            (1, 2) => 1,
            (2, 1) => 2,
            _ => 1,
        });
        assert!(matches!(bad, Err(Error::IllTyped { .. })));
    }
}
