//! The action of a contextad morphism on contextful arrows:
//! `(P, f) ↦ (F♭P, F(f)∘ℓ_P)` and `(φ, k) ↦ (F♭φ, F(k))`.

use std::collections::HashMap;
use std::sync::Arc;

use super::{CtxDouble, Loose, Sq};
use crate::contextad::{check_contextad_morphism, ContextadMorphism};
use crate::report::{Error, Law, Report, Result, Tally};
use crate::witness;

/// Images of loose arrows and squares, plus the comparison squares
/// `F(U_A) ⇒ U_{FA}` built from the unitor and `F(f;g) ⇒ F(f);F(g)` built
/// from the multiplicator. Squares whose image is not a square map to `None`.
#[derive(Clone, Debug)]
pub struct CtxFunctor {
    pub loose: Vec<Loose>,
    pub squares: Vec<Option<Sq>>,
    pub unit_comparison: Vec<Option<Sq>>,
    pub comp_comparison: HashMap<(Loose, Loose), Option<Sq>>,
}

pub fn ctx_on_morphism(mm: &ContextadMorphism, src: &CtxDouble, tgt: &CtxDouble) -> Result<(CtxFunctor, Report)> {
    if !Arc::ptr_eq(&mm.src, &src.x) || !Arc::ptr_eq(&mm.tgt, &tgt.x) {
        return Err(Error::Boundary("double categories are not built from the morphism's contextads".into()));
    }
    check_contextad_morphism(mm)?.into_result()?;
    let (x, y) = (&*mm.src, &*mm.tgt);
    let (c, m, c2, m2) = (x.base(), x.total(), y.base(), y.total());
    let (d, e) = (&src.dbl, &tgt.dbl);
    let mut report = Report::new("contextful arrows of a morphism");

    let mut loose = Vec::with_capacity(src.loose_data.len());
    for &(p, f) in &src.loose_data {
        let grade = mm.fflat.obj(p);
        let map = c2.comp(mm.f.mor(f), mm.lineator[p.ix()]);
        loose.push(tgt.loose_of(grade, map).ok_or_else(|| Error::Missing {
            table: "loose arrows",
            key: format!("image of ({}, {})", m.obj_name(p), c.mor_name(f)),
        })?);
    }

    let mut sq_tally = Tally::new(Law::FunctorSquares);
    let squares: Vec<Option<Sq>> = d
        .square_ids()
        .map(|s| {
            let sq = d.square(s);
            let image = tgt.square_of(
                loose[sq.top.ix()],
                loose[sq.bottom.ix()],
                mm.fflat.mor(src.payload[s.ix()]),
                mm.f.mor(sq.right),
            );
            sq_tally.record(image.is_some(), || witness! {"square" => d.describe(s)});
            image
        })
        .collect();
    let mut keys: Vec<(Sq, Sq)> = d.stack.keys().copied().collect();
    keys.sort();
    for (a, b) in keys {
        let ok = match (squares[a.ix()], squares[b.ix()], squares[d.stack[&(a, b)].ix()]) {
            (Some(fa), Some(fb), Some(fab)) => e.stacked(fa, fb) == Some(fab),
            _ => false,
        };
        sq_tally.record(ok, || witness! {"stack" => d.describe(a), "under" => d.describe(b)});
    }
    for f in d.loose_arrows() {
        let ok = squares[d.tight_id[f.ix()].ix()] == Some(e.tight_id[loose[f.ix()].ix()]);
        sq_tally.record(ok, || witness! {"tight identity" => &d.loose[f.ix()].name});
    }
    report.tally(sq_tally);

    let mut typed = Tally::new(Law::FunctorComparisonTyped);
    let mut iso = Tally::new(Law::FunctorComparisonIso);
    let unit_comparison: Vec<Option<Sq>> = c
        .objects()
        .map(|a| {
            let fa = mm.f.obj(a);
            let s = tgt.square_of(loose[d.loose_id[a.ix()].ix()], e.loose_id[fa.ix()], mm.unitor[a.ix()], c2.id(fa));
            typed.record(s.is_some(), || witness! {"cell" => "unit", "A" => c.obj_name(a)});
            if let Some(s) = s {
                iso.record(e.inverse(s).is_some(), || witness! {"cell" => "unit", "A" => c.obj_name(a)});
            }
            s
        })
        .collect();

    let mut pairs: Vec<(Loose, Loose)> = d.loose_comp.keys().copied().collect();
    pairs.sort();
    let mut comp_comparison = HashMap::new();
    for (f, g) in pairs {
        let ((p, fm), (q, gm)) = (src.loose_data[f.ix()], src.loose_data[g.ix()]);
        let fq = x.star(fm, q);
        let pair = x.pair(p, fq).expect("composable");
        let lp = mm.lineator[p.ix()];
        let along = c2.comp(mm.f.mor(fm), lp);
        let fflat_q = mm.fflat.obj(q);
        let payload =
            y.p.factor_through(
                y.lift(along, fflat_q),
                m2.comp(mm.fflat.mor(x.lift(fm, q)), y.lift(lp, mm.fflat.obj(fq))),
                c2.id(c2.src(lp)),
            )
            .and_then(|cmp| y.ten_mor(m2.id(mm.fflat.obj(p)), cmp))
            .and_then(|w| m2.compose(w, mm.multiplicator[&pair]));
        let top = loose[d.loose_comp[&(f, g)].ix()];
        let bottom = e.comp(loose[f.ix()], loose[g.ix()]);
        let s = match (payload, bottom) {
            (Some(phi), Some(bottom)) => tgt.square_of(top, bottom, phi, c2.id(mm.f.obj(c.tgt(gm)))),
            _ => None,
        };
        let w = || witness! {"cell" => "composite", "f" => &d.loose[f.ix()].name, "g" => &d.loose[g.ix()].name};
        typed.record(s.is_some(), w);
        if let Some(s) = s {
            iso.record(e.inverse(s).is_some(), w);
        }
        comp_comparison.insert((f, g), s);
    }
    report.tally(typed);
    report.tally(iso);
    Ok((CtxFunctor { loose, squares, unit_comparison, comp_comparison }, report))
}
