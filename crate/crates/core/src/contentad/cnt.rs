//! The double category of contentful arrows, the simultaneous reversal of
//! tight and loose arrows, and the duality between the two constructions.
//!
//! Loose arrows `A ⇸ B` are pairs `(P, f)` with `P` over `B` and
//! `f: A -> act P`; a square `(P, f) ⇒ (P', f')` is a grade morphism
//! `φ: P -> P'` over the right side `k` together with a left side `h` such
//! that `act(φ)∘f = f'∘h`. Composites push the first grade forward along the
//! second map: `(P, f);(Q, g) = (g_!P ⊗ Q, μ ∘ act(ℓ) ∘ f)`.

use std::collections::HashMap;
use std::sync::Arc;

use super::{check_contentad, dualize, undualize, Contentad};
use crate::ctxdouble::{
    check_double_iso, ctx_construct, DoubleCategory, DoubleIso, DoubleOps, Loose, LooseArrow, Sq, Square,
};
use crate::fincat::{FinCategory, Mor, Obj};
use crate::report::{Error, Law, Report, Result, Tally};
use crate::witness;

#[derive(Clone, Debug)]
pub struct CntDouble {
    pub x: Arc<Contentad>,
    pub dbl: DoubleCategory,
    /// Per loose arrow: its grade and map.
    pub loose_data: Vec<(Obj, Mor)>,
    /// Per square: its grade morphism.
    pub payload: Vec<Mor>,
    loose_index: HashMap<(Obj, Mor), Loose>,
    square_index: HashMap<(Loose, Loose, Mor, Mor), Sq>,
}

impl CntDouble {
    pub fn loose_of(&self, grade: Obj, map: Mor) -> Option<Loose> {
        self.loose_index.get(&(grade, map)).copied()
    }

    /// The square with the given boundary, grade morphism and left side.
    pub fn square_of(&self, top: Loose, bottom: Loose, phi: Mor, left: Mor) -> Option<Sq> {
        self.square_index.get(&(top, bottom, phi, left)).copied()
    }
}

struct CntOps<'a> {
    x: &'a Contentad,
    loose_data: &'a [(Obj, Mor)],
    loose_index: &'a HashMap<(Obj, Mor), Loose>,
    squares: &'a [Square],
    payload: &'a [Mor],
    square_index: &'a HashMap<(Loose, Loose, Mor, Mor), Sq>,
}

fn missing(table: &'static str, key: String) -> Error {
    Error::Missing { table, key }
}

impl CntOps<'_> {
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

    fn square(&self, top: Loose, bottom: Loose, phi: Mor, left: Mor) -> Result<Sq> {
        self.square_index.get(&(top, bottom, phi, left)).copied().ok_or_else(|| {
            missing("squares", format!("{} with left side {}", self.m().describe(phi), self.c().mor_name(left)))
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

    /// `(P, f);(Q, g)`, with the colift `ℓ: P -> g_!P`.
    fn composite(&self, f: Loose, g: Loose) -> Result<(Obj, Mor)> {
        let x = self.x;
        let ((p, fm), (q, gm)) = (self.loose_data[f.ix()], self.loose_data[g.ix()]);
        let ell = x.colift(gm, p);
        let pushed = self.m().tgt(ell);
        let grade = x.ten(pushed, q).ok_or_else(|| Error::ill_typed("loose composite", "grades do not form a pair"))?;
        let mu = x.mu_at(pushed, q).expect("pair exists");
        Ok((grade, self.c().path(&[fm, x.act.mor(ell), mu])))
    }

    /// The vertical `(h∘g)_!P -> h_!(g_!P)` comparing one push with two.
    fn pushes(&self, steps: &[Mor], p: Obj) -> Result<Mor> {
        let x = self.x;
        let mut chain = self.m().id(p);
        for &f in steps {
            chain = self.compose_m(x.colift(f, self.m().tgt(chain)), chain)?;
        }
        let direct = x.colift(self.c().path(steps), p);
        let m = self.m();
        x.q.factor_from(direct, chain, self.c().id(x.over(m.tgt(direct))))
            .ok_or_else(|| Error::ill_typed("cocleavage", format!("no comparison for {}", m.describe(chain))))
    }
}

impl DoubleOps for CntOps<'_> {
    fn loose_id(&self, a: Obj) -> Result<Loose> {
        self.loose(self.x.unit.obj(a), self.x.eta_at(a))
    }

    fn loose_comp(&self, f: Loose, g: Loose) -> Result<Loose> {
        let (grade, map) = self.composite(f, g)?;
        self.loose(grade, map)
    }

    fn stack(&self, upper: Sq, lower: Sq) -> Result<Sq> {
        let (s, t) = (&self.squares[upper.ix()], &self.squares[lower.ix()]);
        let phi = self.compose_m(self.payload[lower.ix()], self.payload[upper.ix()])?;
        self.square(s.top, t.bottom, phi, self.c().comp(t.left, s.left))
    }

    /// `(g,g')_!φ ⊗ ψ`, where `(g,g')_!φ: g_!P -> g'_!P'` is induced by `φ`.
    fn paste(&self, left: Sq, right: Sq) -> Result<Sq> {
        let (s, t) = (&self.squares[left.ix()], &self.squares[right.ix()]);
        let (phi, psi) = (self.payload[left.ix()], self.payload[right.ix()]);
        let ((_, g), (_, g2)) = (self.loose_data[t.top.ix()], self.loose_data[t.bottom.ix()]);
        let (p, p2) = (self.m().src(phi), self.m().tgt(phi));
        let x = self.x;
        let induced =
            x.q.factor_from(x.colift(g, p), self.compose_m(x.colift(g2, p2), phi)?, x.act.mor(psi))
                .ok_or_else(|| Error::ill_typed("square pasting", "no induced map between pushforwards"))?;
        let top = self.loose_comp(s.top, t.top)?;
        let bottom = self.loose_comp(s.bottom, t.bottom)?;
        self.square(top, bottom, self.ten_mor(induced, psi)?, s.left)
    }

    fn tight_id(&self, f: Loose) -> Result<Sq> {
        let (p, map) = self.loose_data[f.ix()];
        self.square(f, f, self.m().id(p), self.c().id(self.c().src(map)))
    }

    fn loose_id_square(&self, h: Mor) -> Result<Sq> {
        let c = self.c();
        let (top, bottom) = (self.loose_id(c.src(h))?, self.loose_id(c.tgt(h))?);
        self.square(top, bottom, self.x.unit.mor(h), h)
    }

    /// `λ̂_f` has grade morphism `ρ_P⁻¹ ∘ (κ^I_f ⊗ 1): f_!I ⊗ P -> P`.
    fn left_unitor(&self, f: Loose) -> Result<Sq> {
        let (p, map) = self.loose_data[f.ix()];
        let a = self.c().src(map);
        let top = self.loose_comp(self.loose_id(a)?, f)?;
        let rho_inv = self.inverse(self.x.rho[p.ix()], "ρ")?;
        let phi = self.compose_m(rho_inv, self.ten_mor(self.x.kappa_unit[map.ix()], self.m().id(p))?)?;
        self.square(top, f, phi, self.c().id(a))
    }

    /// `ρ̂_f` has grade morphism `λ_P: η_!P ⊗ I -> P`.
    fn right_unitor(&self, f: Loose) -> Result<Sq> {
        let (p, map) = self.loose_data[f.ix()];
        let top = self.loose_comp(f, self.loose_id(self.x.over(p))?)?;
        self.square(top, f, self.x.lam[p.ix()], self.c().id(self.c().src(map)))
    }

    /// `α̂: f;(g;h) ⇒ (f;g);h` with grade morphism
    /// `((κ^⊗)⁻¹ ⊗ 1) ∘ α ∘ (c ⊗ 1)`, where `c` compares pushing along the
    /// map of `g;h` with pushing along its three factors.
    fn associator(&self, f: Loose, g: Loose, h: Loose) -> Result<Sq> {
        let (x, c, m) = (self.x, self.c(), self.m());
        let ((p, fm), (q, gm), (r, hm)) = (self.loose_data[f.ix()], self.loose_data[g.ix()], self.loose_data[h.ix()]);
        let ell_h = x.colift(hm, q);
        let qh = m.tgt(ell_h);
        let gh = x.ten(qh, r).expect("composite grade");
        let mu = x.mu_at(qh, r).expect("composite grade");
        let comparison = self.pushes(&[gm, x.act.mor(ell_h), mu], p)?;
        let step1 = self.ten_mor(comparison, m.id(gh))?;
        let pg = x.push(gm, p);
        let xx = x.push(x.act.mor(ell_h), pg);
        let alpha = x.assoc_at(xx, qh, r).ok_or_else(|| missing("α", format!("at {}", m.obj_name(xx))))?;
        let pair = x.pair(pg, q).expect("composite grade");
        let kappa =
            x.kappa_tensor.get(&(hm, pair)).copied().ok_or_else(|| missing("κ^⊗", m.obj_name(pair).to_owned()))?;
        let step3 = self.ten_mor(self.inverse(kappa, "κ^⊗")?, m.id(r))?;
        let phi = m
            .compose_all(&[step3, alpha, step1])
            .ok_or_else(|| Error::ill_typed("associator", "pasting does not compose"))?;
        let top = self.loose_comp(f, self.loose_comp(g, h)?)?;
        let bottom = self.loose_comp(self.loose_comp(f, g)?, h)?;
        self.square(top, bottom, phi, c.id(c.src(fm)))
    }
}

/// Materialize the double category of contentful arrows. The contentad must
/// pass its law check.
pub fn cnt_construct(x: Arc<Contentad>) -> Result<CntDouble> {
    check_contentad(&x)?.into_result()?;
    let (c, m) = (x.base().clone(), x.total().clone());

    let mut loose = Vec::new();
    let mut loose_data = Vec::new();
    let mut loose_index = HashMap::new();
    let mut by_grade: Vec<Vec<Loose>> = vec![Vec::new(); m.num_objects()];
    for p in m.objects() {
        for &f in c.incoming(x.extend(p)) {
            let id = Loose(loose.len() as u32);
            loose.push(LooseArrow {
                name: format!("({}, {})", m.obj_name(p), c.mor_name(f)),
                src: c.src(f),
                tgt: x.over(p),
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
            let target = c.comp(ext, f);
            for &bottom in &by_grade[p2.ix()] {
                let f2 = loose_data[bottom.ix()].1;
                for h in c.hom(c.src(f), c.src(f2)) {
                    if c.comp(f2, h) != target {
                        continue;
                    }
                    let id = Sq(squares.len() as u32);
                    squares.push(Square {
                        name: format!("{}/{}", c.mor_name(h), m.mor_name(phi)),
                        top,
                        bottom,
                        left: h,
                        right: x.q.q.mor(phi),
                    });
                    payload.push(phi);
                    square_index.insert((top, bottom, phi, h), id);
                }
            }
        }
    }
    let ops = CntOps {
        x: &x,
        loose_data: &loose_data,
        loose_index: &loose_index,
        squares: &squares,
        payload: &payload,
        square_index: &square_index,
    };
    let dbl = DoubleCategory::tabulate(c.clone(), loose, squares.clone(), &ops)?;
    Ok(CntDouble { x, dbl, loose_data, payload, loose_index, square_index })
}

/// Reads a double category with its tight and loose arrows reversed.
struct LtopOps<'a> {
    d: &'a DoubleCategory,
}

fn lookup<T>(v: Option<T>, what: &str) -> Result<T> {
    v.ok_or_else(|| Error::Missing { table: "reversed double category", key: what.to_owned() })
}

impl DoubleOps for LtopOps<'_> {
    fn loose_id(&self, a: Obj) -> Result<Loose> {
        Ok(self.d.loose_id[a.ix()])
    }

    fn loose_comp(&self, f: Loose, g: Loose) -> Result<Loose> {
        lookup(self.d.comp(g, f), "loose composite")
    }

    fn stack(&self, upper: Sq, lower: Sq) -> Result<Sq> {
        lookup(self.d.stacked(lower, upper), "stack")
    }

    fn paste(&self, left: Sq, right: Sq) -> Result<Sq> {
        lookup(self.d.pasted(right, left), "paste")
    }

    fn tight_id(&self, f: Loose) -> Result<Sq> {
        Ok(self.d.tight_id[f.ix()])
    }

    fn loose_id_square(&self, h: Mor) -> Result<Sq> {
        Ok(self.d.loose_id_square[h.ix()])
    }

    fn left_unitor(&self, f: Loose) -> Result<Sq> {
        lookup(self.d.inverse(self.d.right_unitor[f.ix()]), "inverse of ρ̂")
    }

    fn right_unitor(&self, f: Loose) -> Result<Sq> {
        lookup(self.d.inverse(self.d.left_unitor[f.ix()]), "inverse of λ̂")
    }

    fn associator(&self, f: Loose, g: Loose, h: Loose) -> Result<Sq> {
        lookup(self.d.associator.get(&(h, g, f)).copied(), "associator")
    }
}

/// Reverse tight and loose arrows at once. Indices are kept: loose arrow `i`
/// of the result is loose arrow `i` read backwards, and square `i` has the
/// old bottom as top and the old right side as left side.
pub fn ltop(d: &DoubleCategory) -> Result<DoubleCategory> {
    let tight = Arc::new(d.tight.opposite());
    let loose = d.loose.iter().map(|l| LooseArrow { name: l.name.clone(), src: l.tgt, tgt: l.src }).collect();
    let squares = d
        .squares
        .iter()
        .map(|s| Square { name: s.name.clone(), top: s.bottom, bottom: s.top, left: s.right, right: s.left })
        .collect();
    DoubleCategory::tabulate(tight, loose, squares, &LtopOps { d })
}

/// `Cnt(x)^ltop ≅ Ctx(x^op)`: builds both double categories and checks the
/// identity-on-data map between them, which sends `(P, f)` to `(P, f^op)`
/// and a square to the square with the same grade morphism. Also checks
/// that reading the dual contextad back as a contentad gives the same
/// tables.
pub fn check_duality(x: Arc<Contentad>) -> Result<Report> {
    let cnt = cnt_construct(x.clone())?;
    let reversed = ltop(&cnt.dbl)?;
    let ctx = ctx_construct(dualize(&x))?;
    let mut report = Report::new("duality of contentful and contextful arrows");

    let mut found = Tally::new(Law::Duality);
    found.record(undualize(&ctx.x)?.same_data(&x), || witness! {"roundtrip" => "tables differ"});
    let loose: Vec<Option<Loose>> = cnt.loose_data.iter().map(|&(p, f)| ctx.loose_of(p, f)).collect();
    for (i, l) in loose.iter().enumerate() {
        found.record(l.is_some(), || witness! {"loose" => &cnt.dbl.loose[i].name});
    }
    let squares: Vec<Option<Sq>> = cnt
        .dbl
        .squares
        .iter()
        .zip(&cnt.payload)
        .map(|(s, &phi)| ctx.square_of(loose[s.bottom.ix()]?, loose[s.top.ix()]?, phi, s.left))
        .collect();
    for (i, s) in squares.iter().enumerate() {
        found.record(s.is_some(), || witness! {"square" => cnt.dbl.describe(Sq(i as u32))});
    }
    let complete = !found.failed();
    report.tally(found);
    if !complete {
        return Ok(report);
    }
    let c = &reversed.tight;
    let iso = DoubleIso {
        src: &reversed,
        tgt: &ctx.dbl,
        objects: c.objects().collect(),
        tight: c.morphisms().collect(),
        loose: loose.into_iter().flatten().collect(),
        squares: squares.into_iter().flatten().collect(),
    };
    report.extend(check_double_iso(&iso));
    Ok(report)
}
