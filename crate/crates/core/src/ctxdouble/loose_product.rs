//! Monoidal product of contextful arrows from a colax monoidal contextad.
//!
//! With `(C, 1, ⊠)` and `(M, 1, ⊠)` monoidal and `p` strict monoidal, the
//! colaxity `χ: (A⊠B)⊙(P⊠R) -> (A⊙P)⊠(B⊙R)` of `⊙` gives
//! `(P, f) ⊠ (P', f') = (P⊠P', (f⊠f')∘χ)` and the unit `(1, χ₀)`. The
//! colaxities of `I` and `⊗` give squares witnessing lax interchange of `⊠`
//! with loose identities and composition.

use std::collections::HashMap;

use super::{CtxDouble, Loose, Sq};
use crate::fincat::{same_category, Mor, Obj};
use crate::monoidal::{check_monoidal, MonoidalCategory};
use crate::report::{Error, Law, Report, Result, Tally};
use crate::witness;

#[derive(Clone, Debug)]
pub struct MonoidalContextadData {
    /// On the contexts.
    pub base: MonoidalCategory,
    /// On the grades.
    pub grades: MonoidalCategory,
    /// `χ₀: 1⊙1 -> 1`.
    pub act_unit: Mor,
    /// `χ_{P,R}: (A⊠B)⊙(P⊠R) -> (A⊙P)⊠(B⊙R)`.
    pub act_tensor: HashMap<(Obj, Obj), Mor>,
    /// `I₀: I_1 -> 1`, vertical.
    pub unit_unit: Mor,
    /// `I_{A,B}: I_{A⊠B} -> I_A ⊠ I_B`, vertical.
    pub unit_tensor: HashMap<(Obj, Obj), Mor>,
    /// `1 ⊗ χ₀*1 -> 1`, vertical.
    pub tensor_unit: Mor,
    /// `(P⊠R) ⊗ χ*(Q⊠S) -> (P⊗Q) ⊠ (R⊗S)` keyed by `(P, Q, R, S)`, vertical.
    pub tensor_tensor: HashMap<(Obj, Obj, Obj, Obj), Mor>,
}

/// `(f, f')`, the factors of a loose product.
pub type LoosePair = (Loose, Loose);

#[derive(Clone, Debug, Default)]
pub struct LooseProduct {
    pub unit: Option<Loose>,
    pub product: HashMap<(Loose, Loose), Loose>,
    pub square_product: HashMap<(Sq, Sq), Sq>,
    /// `U_{A⊠B} ⇒ U_A ⊠ U_B`.
    pub unit_interchange: HashMap<(Obj, Obj), Option<Sq>>,
    /// `(f⊠f');(g⊠g') ⇒ (f;g)⊠(f';g')`.
    pub comp_interchange: HashMap<(LoosePair, LoosePair), Option<Sq>>,
    /// `U_1 ⇒ 1`.
    pub unit_unit: Option<Sq>,
    /// `1;1 ⇒ 1`.
    pub unit_comp: Option<Sq>,
}

fn typed(ok: bool, what: &str, detail: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::ill_typed(what, detail()))
    }
}

/// Typing of every colaxity cell and strict monoidality of `p` on objects.
fn validate(cd: &CtxDouble, data: &MonoidalContextadData) -> Result<()> {
    let x = &*cd.x;
    let (c, m) = (x.base(), x.total());
    let (bc, gm) = (&data.base, &data.grades);
    if !same_category(&bc.cat, x.base()) || !same_category(&gm.cat, x.total()) {
        return Err(Error::Boundary("monoidal data is not on the contextad's categories".into()));
    }
    typed(x.ctx(gm.unit) == bc.unit, "grade unit", || "not over the context unit".into())?;
    for p in m.objects() {
        for r in m.objects() {
            let ok = x.ctx(gm.ten(p, r)) == bc.ten(x.ctx(p), x.ctx(r));
            typed(ok, "grade product", || {
                format!("{} ⊠ {} is not over the product of contexts", m.obj_name(p), m.obj_name(r))
            })?;
        }
    }
    let a = data.act_unit;
    typed(c.src(a) == x.extend(gm.unit) && c.tgt(a) == bc.unit, "⊙ unit colaxity", || c.describe(a))?;
    for p in m.objects() {
        for r in m.objects() {
            let k = data.act_tensor.get(&(p, r)).copied().ok_or_else(|| Error::Missing {
                table: "⊙ colaxity",
                key: format!("({}, {})", m.obj_name(p), m.obj_name(r)),
            })?;
            let ok = c.src(k) == x.extend(gm.ten(p, r)) && c.tgt(k) == bc.ten(x.extend(p), x.extend(r));
            typed(ok, "⊙ colaxity", || c.describe(k))?;
        }
    }
    let vertical = |u: Mor, s: Obj, t: Obj| m.src(u) == s && m.tgt(u) == t && x.p.is_vertical(u);
    let u0 = data.unit_unit;
    typed(vertical(u0, x.unit.obj(bc.unit), gm.unit), "I unit colaxity", || m.describe(u0))?;
    for a in c.objects() {
        for b in c.objects() {
            let u = data.unit_tensor.get(&(a, b)).copied().ok_or_else(|| Error::Missing {
                table: "I colaxity",
                key: format!("({}, {})", c.obj_name(a), c.obj_name(b)),
            })?;
            let ok = vertical(u, x.unit.obj(bc.ten(a, b)), gm.ten(x.unit.obj(a), x.unit.obj(b)));
            typed(ok, "I colaxity", || m.describe(u))?;
        }
    }
    let t0 = data.tensor_unit;
    let src0 = x.ten(gm.unit, x.star(data.act_unit, gm.unit));
    typed(src0.is_some_and(|s| vertical(t0, s, gm.unit)), "⊗ unit colaxity", || m.describe(t0))?;
    let by_ctx = x.objects_by_ctx();
    for p in m.objects() {
        for r in m.objects() {
            for &q in &by_ctx[x.extend(p).ix()] {
                for &s in &by_ctx[x.extend(r).ix()] {
                    let t = data.tensor_tensor.get(&(p, q, r, s)).copied().ok_or_else(|| Error::Missing {
                        table: "⊗ colaxity",
                        key: format!("({}, {}, {}, {})", m.obj_name(p), m.obj_name(q), m.obj_name(r), m.obj_name(s)),
                    })?;
                    let src = x.ten(gm.ten(p, r), x.star(data.act_tensor[&(p, r)], gm.ten(q, s)));
                    let tgt = x.ten(p, q).zip(x.ten(r, s)).map(|(pq, rs)| gm.ten(pq, rs));
                    let ok = matches!((src, tgt), (Some(s1), Some(t1)) if vertical(t, s1, t1));
                    typed(ok, "⊗ colaxity", || m.describe(t))?;
                }
            }
        }
    }
    Ok(())
}

/// The elementwise conditions of a colax monoidal contextad: both monoidal
/// structures, `p` strict monoidal with product-preserving lifts, naturality
/// and coherence of `χ` and of `I`'s colaxity, and `ε`, `δ` monoidal.
fn colax_conditions(cd: &CtxDouble, data: &MonoidalContextadData, report: &mut Report) {
    let x = &*cd.x;
    let (c, m) = (x.base(), x.total());
    let (bc, gm) = (&data.base, &data.grades);
    report.extend(check_monoidal(bc));
    report.extend(check_monoidal(gm));
    let mut t = Tally::new(Law::ColaxMonoidal);

    // p strict monoidal, lifts of products are products of lifts
    for u in m.morphisms() {
        for v in m.morphisms() {
            let ok = x.p.p.mor(gm.ten_mor(u, v)) == bc.ten_mor(x.p.p.mor(u), x.p.p.mor(v));
            t.record(ok, || witness! {"item" => "p strict monoidal", "u" => m.mor_name(u), "v" => m.mor_name(v)});
        }
    }
    for f in c.morphisms() {
        for g in c.morphisms() {
            for &p in &x.objects_by_ctx()[c.tgt(f).ix()] {
                for &q in &x.objects_by_ctx()[c.tgt(g).ix()] {
                    let ok = x.lift(bc.ten_mor(f, g), gm.ten(p, q)) == gm.ten_mor(x.lift(f, p), x.lift(g, q));
                    t.record(
                        ok,
                        || witness! {"item" => "lifts of products", "f" => c.mor_name(f), "g" => c.mor_name(g)},
                    );
                }
            }
        }
    }

    // χ natural and coherent
    let chi = |p: Obj, r: Obj| data.act_tensor[&(p, r)];
    for u in m.morphisms() {
        for v in m.morphisms() {
            let lhs = c.compose(chi(m.tgt(u), m.tgt(v)), x.act.mor(gm.ten_mor(u, v)));
            let rhs = c.compose(bc.ten_mor(x.act.mor(u), x.act.mor(v)), chi(m.src(u), m.src(v)));
            t.record(
                lhs.is_some() && lhs == rhs,
                || witness! {"item" => "⊙ colaxity natural", "u" => m.mor_name(u), "v" => m.mor_name(v)},
            );
        }
    }
    for p in m.objects() {
        let ap = x.extend(p);
        let lhs = c.compose_all(&[bc.left_unitor[ap.ix()], bc.ten_mor(data.act_unit, c.id(ap)), chi(gm.unit, p)]);
        t.record(
            lhs == Some(x.act.mor(gm.left_unitor[p.ix()])),
            || witness! {"item" => "⊙ colaxity left unit", "P" => m.obj_name(p)},
        );
        let rhs = c.compose_all(&[bc.right_unitor[ap.ix()], bc.ten_mor(c.id(ap), data.act_unit), chi(p, gm.unit)]);
        t.record(
            rhs == Some(x.act.mor(gm.right_unitor[p.ix()])),
            || witness! {"item" => "⊙ colaxity right unit", "P" => m.obj_name(p)},
        );
        for r in m.objects() {
            for s in m.objects() {
                let (ar, as_) = (x.extend(r), x.extend(s));
                let lhs = c.compose_all(&[
                    bc.ten_mor(chi(p, r), c.id(as_)),
                    chi(gm.ten(p, r), s),
                    x.act.mor(gm.assoc_at(p, r, s)),
                ]);
                let rhs =
                    c.compose_all(&[bc.assoc_at(ap, ar, as_), bc.ten_mor(c.id(ap), chi(r, s)), chi(p, gm.ten(r, s))]);
                t.record(lhs.is_some() && lhs == rhs, || {
                    witness! {"item" => "⊙ colaxity associative", "P" => m.obj_name(p), "R" => m.obj_name(r), "S" => m.obj_name(s)}
                });
            }
        }
    }

    // I's colaxity natural and coherent
    let iu = |a: Obj, b: Obj| data.unit_tensor[&(a, b)];
    for f in c.morphisms() {
        for g in c.morphisms() {
            let lhs = m.compose(iu(c.tgt(f), c.tgt(g)), x.unit.mor(bc.ten_mor(f, g)));
            let rhs = m.compose(gm.ten_mor(x.unit.mor(f), x.unit.mor(g)), iu(c.src(f), c.src(g)));
            t.record(
                lhs.is_some() && lhs == rhs,
                || witness! {"item" => "I colaxity natural", "f" => c.mor_name(f), "g" => c.mor_name(g)},
            );
        }
    }
    for a in c.objects() {
        let ia = x.unit.obj(a);
        let l = m.compose_all(&[gm.left_unitor[ia.ix()], gm.ten_mor(data.unit_unit, m.id(ia)), iu(bc.unit, a)]);
        t.record(
            l == Some(x.unit.mor(bc.left_unitor[a.ix()])),
            || witness! {"item" => "I colaxity left unit", "A" => c.obj_name(a)},
        );
        let r = m.compose_all(&[gm.right_unitor[ia.ix()], gm.ten_mor(m.id(ia), data.unit_unit), iu(a, bc.unit)]);
        t.record(
            r == Some(x.unit.mor(bc.right_unitor[a.ix()])),
            || witness! {"item" => "I colaxity right unit", "A" => c.obj_name(a)},
        );
        for b in c.objects() {
            for d in c.objects() {
                let (ib, id) = (x.unit.obj(b), x.unit.obj(d));
                let lhs = m.compose_all(&[
                    gm.ten_mor(iu(a, b), m.id(id)),
                    iu(bc.ten(a, b), d),
                    x.unit.mor(bc.assoc_at(a, b, d)),
                ]);
                let rhs =
                    m.compose_all(&[gm.assoc_at(ia, ib, id), gm.ten_mor(m.id(ia), iu(b, d)), iu(a, bc.ten(b, d))]);
                t.record(lhs.is_some() && lhs == rhs, || {
                    witness! {"item" => "I colaxity associative", "A" => c.obj_name(a), "B" => c.obj_name(b), "C" => c.obj_name(d)}
                });
            }
        }
    }

    // ε monoidal
    let e1 = c.compose(data.act_unit, x.act.mor(data.unit_unit));
    t.record(e1 == Some(x.eps(bc.unit)), || witness! {"item" => "ε monoidal unit"});
    for a in c.objects() {
        for b in c.objects() {
            let (ia, ib) = (x.unit.obj(a), x.unit.obj(b));
            let lhs = c.compose_all(&[bc.ten_mor(x.eps(a), x.eps(b)), chi(ia, ib), x.act.mor(iu(a, b))]);
            t.record(
                lhs == Some(x.eps(bc.ten(a, b))),
                || witness! {"item" => "ε monoidal", "A" => c.obj_name(a), "B" => c.obj_name(b)},
            );
        }
    }

    // δ monoidal
    let one = gm.unit;
    let pulled = x.star(data.act_unit, one);
    let lhs = c.compose(data.act_unit, x.act.mor(data.tensor_unit));
    let rhs = x.del(one, pulled).and_then(|d| c.compose_all(&[data.act_unit, x.act_lift(data.act_unit, one), d]));
    t.record(lhs.is_some() && lhs == rhs, || witness! {"item" => "δ monoidal unit"});
    let by_ctx = x.objects_by_ctx();
    for p in m.objects() {
        for r in m.objects() {
            for &q in &by_ctx[x.extend(p).ix()] {
                for &s in &by_ctx[x.extend(r).ix()] {
                    let (pq, rs) = (x.ten(p, q).expect("pair"), x.ten(r, s).expect("pair"));
                    let deltas = x.del(p, q).zip(x.del(r, s)).map(|(d1, d2)| bc.ten_mor(d1, d2));
                    let lhs = deltas
                        .and_then(|dd| c.compose_all(&[dd, chi(pq, rs), x.act.mor(data.tensor_tensor[&(p, q, r, s)])]));
                    let (pr, qs) = (gm.ten(p, r), gm.ten(q, s));
                    let k = chi(p, r);
                    let rhs = x.del(pr, x.star(k, qs)).and_then(|d| c.compose_all(&[chi(q, s), x.act_lift(k, qs), d]));
                    t.record(lhs.is_some() && lhs == rhs, || {
                        witness! {"item" => "δ monoidal", "P" => m.obj_name(p), "Q" => m.obj_name(q), "R" => m.obj_name(r), "S" => m.obj_name(s)}
                    });
                }
            }
        }
    }
    report.tally(t);
}

/// Build the product tables on loose arrows and squares and the four
/// families of interchange squares, verifying each is a square of `cd`
/// and reporting whether it is invertible.
pub fn monoidal_loose_product(cd: &CtxDouble, data: &MonoidalContextadData) -> Result<(LooseProduct, Report)> {
    validate(cd, data)?;
    let x = &*cd.x;
    let (c, d) = (x.base(), &cd.dbl);
    let (bc, gm) = (&data.base, &data.grades);
    let mut report = Report::new("monoidal product of contextful arrows");
    colax_conditions(cd, data, &mut report);

    let mut out = LooseProduct::default();
    let mut prod = Tally::new(Law::LooseProductTyped);
    out.unit = cd.loose_of(gm.unit, data.act_unit);
    prod.record(out.unit.is_some(), || witness! {"cell" => "unit"});
    for f in d.loose_arrows() {
        for g in d.loose_arrows() {
            let ((p, fm), (q, gmor)) = (cd.loose_data[f.ix()], cd.loose_data[g.ix()]);
            let map = c.compose(bc.ten_mor(fm, gmor), data.act_tensor[&(p, q)]);
            let l = map.and_then(|map| cd.loose_of(gm.ten(p, q), map));
            prod.record(l.is_some(), || witness! {"f" => &d.loose[f.ix()].name, "g" => &d.loose[g.ix()].name});
            if let Some(l) = l {
                out.product.insert((f, g), l);
            }
        }
    }
    for s in d.square_ids() {
        for t in d.square_ids() {
            let (a, b) = (d.square(s), d.square(t));
            let image = out.product.get(&(a.top, b.top)).zip(out.product.get(&(a.bottom, b.bottom))).and_then(
                |(&top, &bottom)| {
                    cd.square_of(
                        top,
                        bottom,
                        gm.ten_mor(cd.payload[s.ix()], cd.payload[t.ix()]),
                        bc.ten_mor(a.right, b.right),
                    )
                },
            );
            prod.record(image.is_some(), || witness! {"s" => d.describe(s), "t" => d.describe(t)});
            if let Some(i) = image {
                out.square_product.insert((s, t), i);
            }
        }
    }
    report.tally(prod);

    let mut typed_t = Tally::new(Law::InterchangeSquareTyped);
    let mut iso = Tally::new(Law::InterchangeSquareIso);
    let mut record = |s: Option<Sq>, w: &dyn Fn() -> crate::report::Witness| {
        typed_t.record(s.is_some(), w);
        if let Some(s) = s {
            iso.record(d.inverse(s).is_some(), w);
        }
    };

    for a in c.objects() {
        for b in c.objects() {
            let (ua, ub) = (d.loose_id[a.ix()], d.loose_id[b.ix()]);
            let s = out.product.get(&(ua, ub)).and_then(|&bottom| {
                let ab = bc.ten(a, b);
                cd.square_of(d.loose_id[ab.ix()], bottom, data.unit_tensor[&(a, b)], c.id(ab))
            });
            record(s, &|| witness! {"family" => "unit", "A" => c.obj_name(a), "B" => c.obj_name(b)});
            out.unit_interchange.insert((a, b), s);
        }
    }

    let pairs: Vec<(Loose, Loose)> = {
        let mut v: Vec<_> = d.loose_comp.keys().copied().collect();
        v.sort();
        v
    };
    for &(f, g) in &pairs {
        for &(f2, g2) in &pairs {
            let s = comp_interchange(cd, data, &out, (f, g), (f2, g2));
            record(s, &|| {
                witness! {
                    "family" => "composite",
                    "f" => &d.loose[f.ix()].name, "g" => &d.loose[g.ix()].name,
                    "f'" => &d.loose[f2.ix()].name, "g'" => &d.loose[g2.ix()].name,
                }
            });
            out.comp_interchange.insert(((f, g), (f2, g2)), s);
        }
    }

    let one_c = bc.unit;
    out.unit_unit = out.unit.and_then(|u| cd.square_of(d.loose_id[one_c.ix()], u, data.unit_unit, c.id(one_c)));
    record(out.unit_unit, &|| witness! {"family" => "unit of the unit"});
    out.unit_comp = out
        .unit
        .and_then(|u| d.comp(u, u).map(|uu| (u, uu)))
        .and_then(|(u, uu)| cd.square_of(uu, u, data.tensor_unit, c.id(one_c)));
    record(out.unit_comp, &|| witness! {"family" => "composite of the unit"});
    report.tally(typed_t);
    report.tally(iso);
    Ok((out, report))
}

/// `(f⊠f');(g⊠g') ⇒ (f;g)⊠(f';g')` with grade morphism `t ∘ (1 ⊗ c)`, where
/// `c: ((f⊠f')∘χ)*(Q⊠Q') -> χ*(f*Q ⊠ f'*Q')` compares pullbacks.
fn comp_interchange(
    cd: &CtxDouble,
    data: &MonoidalContextadData,
    out: &LooseProduct,
    (f, g): (Loose, Loose),
    (f2, g2): (Loose, Loose),
) -> Option<Sq> {
    let x = &*cd.x;
    let (c, m, d) = (x.base(), x.total(), &cd.dbl);
    let gm = &data.grades;
    let ((p, fm), (q, _)) = (cd.loose_data[f.ix()], cd.loose_data[g.ix()]);
    let ((p2, fm2), (q2, _)) = (cd.loose_data[f2.ix()], cd.loose_data[g2.ix()]);
    let top = d.comp(*out.product.get(&(f, f2))?, *out.product.get(&(g, g2))?)?;
    let bottom = *out.product.get(&(d.comp(f, g)?, d.comp(f2, g2)?))?;
    let (fq, fq2) = (x.star(fm, q), x.star(fm2, q2));
    let chi = data.act_tensor[&(p, p2)];
    let along = c.comp(data.base.ten_mor(fm, fm2), chi);
    let qq = gm.ten(q, q2);
    let cart = m.compose(gm.ten_mor(x.lift(fm, q), x.lift(fm2, q2)), x.lift(chi, gm.ten(fq, fq2)))?;
    let cmp = x.p.factor_through(cart, x.lift(along, qq), c.id(c.src(chi)))?;
    let t = data.tensor_tensor[&(p, fq, p2, fq2)];
    let phi = m.compose(t, x.ten_mor(m.id(gm.ten(p, p2)), cmp)?)?;
    let right = c.id(d.loose[top.ix()].tgt);
    cd.square_of(top, bottom, phi, right)
}
