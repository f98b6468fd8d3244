//! The double category of contextful arrows of a contextad.
//!
//! Loose arrows `A ⇸ B` are pairs `(P, f)` with `P` over `A` and
//! `f: A⊙P -> B`; a square `(P, f) ⇒ (P', f')` is a grade morphism `φ: P -> P'`
//! over `h` together with `k` such that `k∘f = f'∘(h⊙φ)`.

use std::collections::HashMap;
use std::sync::Arc;

use super::{DoubleCategory, DoubleOps, Loose, LooseArrow, Sq, Square};
use crate::contextad::{check_contextad, Contextad};
use crate::fincat::{FinCategory, Mor, Obj};
use crate::report::{Error, Law, Report, Result, Tally};
use crate::witness;

#[derive(Clone, Debug)]
pub struct CtxDouble {
    pub x: Arc<Contextad>,
    pub dbl: DoubleCategory,
    /// Per loose arrow: its grade and map.
    pub loose_data: Vec<(Obj, Mor)>,
    /// Per square: its grade morphism.
    pub payload: Vec<Mor>,
    loose_index: HashMap<(Obj, Mor), Loose>,
    square_index: HashMap<(Loose, Loose, Mor, Mor), Sq>,
}

impl CtxDouble {
    pub fn loose_of(&self, grade: Obj, map: Mor) -> Option<Loose> {
        self.loose_index.get(&(grade, map)).copied()
    }

    /// The square with the given boundary, grade morphism and right side.
    pub fn square_of(&self, top: Loose, bottom: Loose, phi: Mor, right: Mor) -> Option<Sq> {
        self.square_index.get(&(top, bottom, phi, right)).copied()
    }
}

/// Loose arrows and squares with their indices, shared by the operations.
struct CtxOps<'a> {
    x: &'a Contextad,
    loose_data: &'a [(Obj, Mor)],
    loose_index: &'a HashMap<(Obj, Mor), Loose>,
    squares: &'a [Square],
    payload: &'a [Mor],
    square_index: &'a HashMap<(Loose, Loose, Mor, Mor), Sq>,
}

fn missing(table: &'static str, key: String) -> Error {
    Error::Missing { table, key }
}

impl CtxOps<'_> {
    fn c(&self) -> &FinCategory {
        self.x.base()
    }

    fn m(&self) -> &FinCategory {
        self.x.total()
    }

    fn loose(&self, grade: Obj, map: Mor) -> Result<Loose> {
        self.loose_index.get(&(grade, map)).copied().ok_or_else(|| {
            missing("loose arrows", format!("({}, {})", self.m().obj_name(grade), self.c().mor_name(map)))
        })
    }

    fn square(&self, top: Loose, bottom: Loose, phi: Mor, right: Mor) -> Result<Sq> {
        self.square_index.get(&(top, bottom, phi, right)).copied().ok_or_else(|| {
            missing(
                "squares",
                format!(
                    "{} over {} with right side {}",
                    self.m().describe(phi),
                    self.c().mor_name(self.x.p.p.mor(phi)),
                    self.c().mor_name(right)
                ),
            )
        })
    }

    fn inverse(&self, u: Mor, what: &str) -> Result<Mor> {
        self.m().inverse(u).ok_or_else(|| Error::ill_typed(what, format!("{} is not invertible", self.m().describe(u))))
    }

    fn ten_mor(&self, u: Mor, v: Mor) -> Result<Mor> {
        self.x.ten_mor(u, v).ok_or_else(|| {
            Error::ill_typed(
                "grade tensor",
                format!("({} | {}) is not a pair", self.m().mor_name(u), self.m().mor_name(v)),
            )
        })
    }

    fn compose_m(&self, g: Mor, f: Mor) -> Result<Mor> {
        self.m().compose(g, f).ok_or_else(|| {
            Error::ill_typed("grade composite", format!("{} after {}", self.m().mor_name(g), self.m().mor_name(f)))
        })
    }

    /// The vertical comparison `src(ell) -> f*e` for a cartesian `ell` over `f`.
    fn comparison(&self, ell: Mor) -> Result<Mor> {
        self.x
            .p
            .comparison(ell)
            .ok_or_else(|| Error::ill_typed("cleavage", format!("no comparison for {}", self.m().describe(ell))))
    }

    /// `(f⊙Q)*(g*R) -> (g∘(f⊙Q))*R` and the like: pulling back in two steps
    /// versus along the composite.
    fn two_step(&self, first: Mor, second: Mor, r: Obj) -> Result<Mor> {
        let upper = self.x.lift(second, r);
        let lower = self.x.lift(first, self.m().src(upper));
        self.comparison(self.compose_m(upper, lower)?)
    }

    fn composite(&self, f: Loose, g: Loose) -> Result<(Obj, Mor)> {
        let (c, x) = (self.c(), self.x);
        let ((p, fm), (q, gm)) = (self.loose_data[f.ix()], self.loose_data[g.ix()]);
        let fq = x.star(fm, q);
        let grade = x.ten(p, fq).ok_or_else(|| Error::ill_typed("loose composite", "grades do not form a pair"))?;
        let d = x.del(p, fq).expect("pair exists");
        let map = c.path(&[d, x.act_lift(fm, q), gm]);
        Ok((grade, map))
    }
}

impl DoubleOps for CtxOps<'_> {
    fn loose_id(&self, a: Obj) -> Result<Loose> {
        self.loose(self.x.unit.obj(a), self.x.eps(a))
    }

    fn loose_comp(&self, f: Loose, g: Loose) -> Result<Loose> {
        let (grade, map) = self.composite(f, g)?;
        self.loose(grade, map)
    }

    fn stack(&self, upper: Sq, lower: Sq) -> Result<Sq> {
        let (s, t) = (&self.squares[upper.ix()], &self.squares[lower.ix()]);
        let phi = self.compose_m(self.payload[lower.ix()], self.payload[upper.ix()])?;
        self.square(s.top, t.bottom, phi, self.c().comp(t.right, s.right))
    }

    /// `φ ⊗ (f,f')*ψ`, where `(f,f')*ψ: f*Q -> f'*Q'` is induced by `ψ`.
    fn paste(&self, left: Sq, right: Sq) -> Result<Sq> {
        let (s, t) = (&self.squares[left.ix()], &self.squares[right.ix()]);
        let (phi, psi) = (self.payload[left.ix()], self.payload[right.ix()]);
        let ((_, f), (_, f2)) = (self.loose_data[s.top.ix()], self.loose_data[s.bottom.ix()]);
        let (q, q2) = (self.m().src(psi), self.m().tgt(psi));
        let x = self.x;
        let induced =
            x.p.factor_through(x.lift(f2, q2), self.compose_m(psi, x.lift(f, q))?, x.act.mor(phi))
                .ok_or_else(|| Error::ill_typed("square pasting", "no induced map between pullbacks"))?;
        let top = self.loose_comp(s.top, t.top)?;
        let bottom = self.loose_comp(s.bottom, t.bottom)?;
        self.square(top, bottom, self.ten_mor(phi, induced)?, t.right)
    }

    fn tight_id(&self, f: Loose) -> Result<Sq> {
        let (p, map) = self.loose_data[f.ix()];
        self.square(f, f, self.m().id(p), self.c().id(self.c().tgt(map)))
    }

    fn loose_id_square(&self, h: Mor) -> Result<Sq> {
        let c = self.c();
        let (top, bottom) = (self.loose_id(c.src(h))?, self.loose_id(c.tgt(h))?);
        self.square(top, bottom, self.x.unit.mor(h), h)
    }

    /// `λ̂_f` has grade morphism `λ_P⁻¹: I ⊗ ε*P -> P`.
    fn left_unitor(&self, f: Loose) -> Result<Sq> {
        let (p, map) = self.loose_data[f.ix()];
        let a = self.x.ctx(p);
        let top = self.loose_comp(self.loose_id(a)?, f)?;
        let phi = self.inverse(self.x.lam_at(p), "λ")?;
        self.square(top, f, phi, self.c().id(self.c().tgt(map)))
    }

    /// `ρ̂_f` has grade morphism `ρ_P ∘ (1 ⊗ (κ^I_f)⁻¹): P ⊗ f*I -> P`.
    fn right_unitor(&self, f: Loose) -> Result<Sq> {
        let (p, map) = self.loose_data[f.ix()];
        let b = self.c().tgt(map);
        let top = self.loose_comp(f, self.loose_id(b)?)?;
        let k = self.inverse(self.x.kappa_unit[map.ix()], "κ^I")?;
        let phi = self.compose_m(self.x.rho_at(p), self.ten_mor(self.m().id(p), k)?)?;
        self.square(top, f, phi, self.c().id(b))
    }

    /// `α̂: f;(g;h) ⇒ (f;g);h` with grade morphism
    /// `(1 ⊗ c₂) ∘ α ∘ (1 ⊗ (1 ⊗ c₁)) ∘ (1 ⊗ (κ^⊗)⁻¹)`, where `c₁, c₂` compare
    /// two-step pullbacks with pullbacks along composites.
    fn associator(&self, f: Loose, g: Loose, h: Loose) -> Result<Sq> {
        let (x, m, c) = (self.x, self.m(), self.c());
        let ((p, fm), (q, gm), (r, hm)) = (self.loose_data[f.ix()], self.loose_data[g.ix()], self.loose_data[h.ix()]);
        let gr = x.star(gm, r);
        let qgr = x.pair(q, gr).expect("composite grade");
        let kappa =
            x.kappa_tensor.get(&(fm, qgr)).copied().ok_or_else(|| missing("κ^⊗", m.obj_name(qgr).to_owned()))?;
        let kinv = self.inverse(kappa, "κ^⊗")?;
        let fq_map = x.act_lift(fm, q);
        let c1 = self.two_step(fq_map, gm, r)?;
        let fq = x.star(fm, q);
        let step1 = self.ten_mor(m.id(p), kinv)?;
        let step2 = self.ten_mor(m.id(p), self.ten_mor(m.id(fq), c1)?)?;
        let gfq = c.comp(gm, fq_map);
        let r1 = x.star(gfq, r);
        let alpha =
            x.assoc_at(p, fq, r1).ok_or_else(|| missing("α", format!("at a composite of {}", m.obj_name(p))))?;
        let d = x.del(p, fq).expect("composite grade");
        let c2 = self.two_step(d, gfq, r)?;
        let pfq = x.ten(p, fq).expect("composite grade");
        let step4 = self.ten_mor(m.id(pfq), c2)?;
        let phi = m
            .compose_all(&[step4, alpha, step2, step1])
            .ok_or_else(|| Error::ill_typed("associator", "pasting does not compose"))?;
        let top = self.loose_comp(f, self.loose_comp(g, h)?)?;
        let bottom = self.loose_comp(self.loose_comp(f, g)?, h)?;
        self.square(top, bottom, phi, c.id(c.tgt(hm)))
    }
}

/// Materialize the double category of contextful arrows. The contextad must
/// pass its law check.
pub fn ctx_construct(x: Arc<Contextad>) -> Result<CtxDouble> {
    check_contextad(&x)?.into_result()?;
    let (c, m) = (x.base().clone(), x.total().clone());

    let mut loose = Vec::new();
    let mut loose_data = Vec::new();
    let mut loose_index = HashMap::new();
    let mut by_grade: Vec<Vec<Loose>> = vec![Vec::new(); m.num_objects()];
    for p in m.objects() {
        let e = x.extend(p);
        for &f in c.outgoing(e) {
            let id = Loose(loose.len() as u32);
            loose.push(LooseArrow {
                name: format!("({}, {})", m.obj_name(p), c.mor_name(f)),
                src: x.ctx(p),
                tgt: c.tgt(f),
            });
            loose_data.push((p, f));
            loose_index.insert((p, f), id);
            by_grade[p.ix()].push(id);
        }
    }

    let mut squares = Vec::new();
    let mut payload = Vec::new();
    let mut square_index = HashMap::new();
    for phi in m.morphisms() {
        let (p, p2) = (m.src(phi), m.tgt(phi));
        let ext = x.act.mor(phi);
        for &top in &by_grade[p.ix()] {
            let f = loose_data[top.ix()].1;
            for &bottom in &by_grade[p2.ix()] {
                let f2 = loose_data[bottom.ix()].1;
                let target = c.comp(f2, ext);
                for k in c.hom(c.tgt(f), c.tgt(f2)) {
                    if c.comp(k, f) != target {
                        continue;
                    }
                    let id = Sq(squares.len() as u32);
                    squares.push(Square {
                        name: format!("{}/{}", m.mor_name(phi), c.mor_name(k)),
                        top,
                        bottom,
                        left: x.p.p.mor(phi),
                        right: k,
                    });
                    payload.push(phi);
                    square_index.insert((top, bottom, phi, k), id);
                }
            }
        }
    }
    let ops = CtxOps {
        x: &x,
        loose_data: &loose_data,
        loose_index: &loose_index,
        squares: &squares,
        payload: &payload,
        square_index: &square_index,
    };
    let dbl = DoubleCategory::tabulate(c.clone(), loose.clone(), squares.clone(), &ops)?;
    Ok(CtxDouble { x, dbl, loose_data, payload, loose_index, square_index })
}

/// A companion or conjoint: the loose arrow with its two binding squares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binding {
    pub loose: Loose,
    pub unit: Sq,
    pub counit: Sq,
}

fn tight_arrow(cd: &CtxDouble, f: Mor) -> Result<()> {
    if f.ix() >= cd.x.base().num_morphisms() {
        return Err(Error::Dangling { kind: "tight arrow", name: format!("{f:?}") });
    }
    Ok(())
}

fn lookup(cd: &CtxDouble, top: Loose, bottom: Loose, phi: Mor, right: Mor) -> Result<Sq> {
    cd.square_of(top, bottom, phi, right).ok_or_else(|| Error::Missing {
        table: "squares",
        key: format!("{} => {}", cd.dbl.loose[top.ix()].name, cd.dbl.loose[bottom.ix()].name),
    })
}

/// The companion `f_! = (I_A, f∘ε_A)` of a tight `f: A -> B`, with
/// `η̄: U_A ⇒ f_!` (sides `1, f`) and `ε̄: f_! ⇒ U_B` (sides `f, 1`), both
/// with identity-like grade morphisms. The horizontal identity is checked up
/// to the unitors; the raw on-the-nose form is reported as a note.
pub fn companion(cd: &CtxDouble, f: Mor) -> Result<(Binding, Report)> {
    tight_arrow(cd, f)?;
    let (x, c, d) = (&*cd.x, cd.x.base(), &cd.dbl);
    let (a, b) = (c.src(f), c.tgt(f));
    let ia = x.unit.obj(a);
    let loose = cd
        .loose_of(ia, c.comp(f, x.eps(a)))
        .ok_or_else(|| Error::Missing { table: "loose arrows", key: format!("companion of {}", c.mor_name(f)) })?;
    let unit = lookup(cd, d.loose_id[a.ix()], loose, x.total().id(ia), f)?;
    let counit = lookup(cd, loose, d.loose_id[b.ix()], x.unit.mor(f), c.id(b))?;

    let mut report = Report::new(format!("companion of {}", c.mor_name(f)));
    let mut vert = Tally::new(Law::CompanionVertical);
    vert.record(d.stacked(unit, counit) == Some(d.loose_id_square[f.ix()]), || witness! {"f" => c.mor_name(f)});
    report.tally(vert);
    let pasted = d.pasted(unit, counit);
    let mut horiz = Tally::new(Law::CompanionHorizontal);
    let lhs = pasted.and_then(|s| d.stacked(s, d.right_unitor[loose.ix()]));
    horiz.record(lhs == Some(d.left_unitor[loose.ix()]), || witness! {"f" => c.mor_name(f)});
    report.tally(horiz);
    let mut raw = Tally::new(Law::CompanionHorizontalRaw);
    raw.record(pasted == Some(d.tight_id[loose.ix()]), || witness! {"f" => c.mor_name(f)});
    report.note(raw);
    Ok((Binding { loose, unit, counit }, report))
}

/// The conjoint `f^* = (I_B, f⁻¹∘ε_B)` of an invertible `f: A -> B`, with
/// `η: U_A ⇒ f^*` (sides `f, 1`) and `ε: f^* ⇒ U_B` (sides `1, f`).
pub fn conjoint(cd: &CtxDouble, f: Mor) -> Result<(Binding, Report)> {
    tight_arrow(cd, f)?;
    let (x, c, d) = (&*cd.x, cd.x.base(), &cd.dbl);
    let inv =
        c.inverse(f).ok_or_else(|| Error::ill_typed("conjoint", format!("{} is not invertible", c.mor_name(f))))?;
    let (a, b) = (c.src(f), c.tgt(f));
    let ib = x.unit.obj(b);
    let loose = cd
        .loose_of(ib, c.comp(inv, x.eps(b)))
        .ok_or_else(|| Error::Missing { table: "loose arrows", key: format!("conjoint of {}", c.mor_name(f)) })?;
    let unit = lookup(cd, d.loose_id[a.ix()], loose, x.unit.mor(f), c.id(a))?;
    let counit = lookup(cd, loose, d.loose_id[b.ix()], x.total().id(ib), f)?;

    let mut report = Report::new(format!("conjoint of {}", c.mor_name(f)));
    let mut vert = Tally::new(Law::ConjointVertical);
    vert.record(d.stacked(unit, counit) == Some(d.loose_id_square[f.ix()]), || witness! {"f" => c.mor_name(f)});
    report.tally(vert);
    let pasted = d.pasted(counit, unit);
    let mut horiz = Tally::new(Law::ConjointHorizontal);
    let lhs = pasted.and_then(|s| d.stacked(s, d.left_unitor[loose.ix()]));
    horiz.record(lhs == Some(d.right_unitor[loose.ix()]), || witness! {"f" => c.mor_name(f)});
    report.tally(horiz);
    let mut raw = Tally::new(Law::ConjointHorizontalRaw);
    raw.record(pasted == Some(d.tight_id[loose.ix()]), || witness! {"f" => c.mor_name(f)});
    report.note(raw);
    Ok((Binding { loose, unit, counit }, report))
}
