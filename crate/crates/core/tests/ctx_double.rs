use std::sync::Arc;
use std::time::Instant;

use ctxalg::ctxdouble::{check_double_category, companion, conjoint, ctx_construct, is_strict};
use ctxalg::fixtures::contextad_gallery;

#[test]
fn every_gallery_double_category_satisfies_its_laws() {
    for (name, _, build) in contextad_gallery() {
        let start = Instant::now();
        let x = Arc::new(build().unwrap());
        let cd = ctx_construct(x.clone()).unwrap();
        let built = start.elapsed();
        let report = check_double_category(&cd.dbl).unwrap();
        println!("{name}: {} built in {built:?}, checked in {:?}", cd.dbl, start.elapsed());
        assert!(report.passed(), "{name}\n{report}");
        let c = x.base();
        for f in c.morphisms() {
            let (_, r) = companion(&cd, f).unwrap();
            assert!(r.passed(), "{name}\n{r}");
            if c.is_iso(f) {
                let (_, r) = conjoint(&cd, f).unwrap();
                assert!(r.passed(), "{name}\n{r}");
            }
        }
        println!("  strict: {:?}", is_strict(&cd.dbl));
    }
}

use std::collections::{HashMap, HashSet};

use ctxalg::contextad::{from_display_maps, linear_functor_morphism, ContextadMorphism};
use ctxalg::ctxdouble::{ctx_on_morphism, monoidal_loose_product, span_ctx_iso, span_double_category, CtxDouble};
use ctxalg::fincat::FinFunctor;
use ctxalg::fixtures::{self, display_poset_maps, monoidal_fixtures, partial_map_display};
use ctxalg::Law;

fn spans_of(dm: &ctxalg::contextad::DisplayMaps) -> ctxalg::ctxdouble::SpanDouble {
    let c = dm.cat.clone();
    span_double_category(c.clone(), c.morphisms().collect(), dm.display.clone(), dm.pullbacks.clone()).unwrap()
}

#[test]
fn spans_in_the_square_poset_are_its_contextful_arrows() {
    let dm = display_poset_maps();
    let span = spans_of(&dm);
    let report = check_double_category(&span.dbl).unwrap();
    assert!(report.passed(), "{report}");
    let cd = ctx_construct(Arc::new(from_display_maps(&dm).unwrap())).unwrap();
    let iso = span_ctx_iso(&cd, &span).unwrap();
    assert!(iso.passed(), "{iso}");
}

#[test]
fn partial_maps_are_spans_with_monic_backward_leg() {
    let dm = partial_map_display();
    let span = spans_of(&dm);
    let cd = ctx_construct(Arc::new(from_display_maps(&dm).unwrap())).unwrap();
    let iso = span_ctx_iso(&cd, &span).unwrap();
    assert!(iso.passed(), "{iso}");
}

#[test]
fn spans_of_isomorphisms_form_commuting_squares() {
    let c = fixtures::square_poset();
    let ids: HashSet<_> = c.objects().map(|o| c.id(o)).collect();
    let pullbacks: HashMap<_, _> = ids.iter().map(|&i| ((i, i), (i, i))).collect();
    let span = span_double_category(c.clone(), ids.clone(), ids, pullbacks).unwrap();
    assert_eq!(span.dbl.loose.len(), c.num_objects());
    assert!(check_double_category(&span.dbl).unwrap().passed());
    assert!(is_strict(&span.dbl).0);
}

#[test]
fn missing_pullback_is_a_structural_error() {
    let dm = display_poset_maps();
    let mut pullbacks = dm.pullbacks.clone();
    let key = *pullbacks.keys().next().unwrap();
    pullbacks.remove(&key);
    let c = dm.cat.clone();
    assert!(span_double_category(c.clone(), c.morphisms().collect(), dm.display.clone(), pullbacks).is_err());
}

/// Swaps one pasting result for a different square with the same boundary.
fn break_interchange(cd: &CtxDouble) -> Option<ctxalg::ctxdouble::DoubleCategory> {
    let d = &cd.dbl;
    let mut keys: Vec<_> = d.paste.keys().copied().collect();
    keys.sort();
    for key in keys {
        let ab = d.paste[&key];
        let target = d.square(ab);
        let other = d.squares_from(target.top).iter().copied().find(|&s| {
            let sq = d.square(s);
            s != ab && sq.bottom == target.bottom && sq.left == target.left && sq.right == target.right
        });
        if let Some(other) = other {
            let mut broken = d.clone();
            broken.paste.insert(key, other);
            return Some(broken);
        }
    }
    None
}

#[test]
fn hand_broken_interchange_table_is_caught() {
    let x = Arc::new(fixtures::idempotent_self_action().unwrap());
    let cd = ctx_construct(x).unwrap();
    let broken = break_interchange(&cd).expect("parallel squares exist");
    let report = check_double_category(&broken).unwrap();
    assert!(!report.holds(Law::DblInterchange), "{report}");
    let w = report.get(Law::DblInterchange).unwrap().witness.clone().unwrap();
    for corner in ["top-left", "top-right", "bottom-left", "bottom-right"] {
        assert!(w.get(corner).is_some(), "{corner} missing from {w:?}");
    }
}

#[test]
fn identity_morphism_acts_as_identity() {
    for (name, _, build) in contextad_gallery().into_iter().filter(|(n, ..)| *n != "partial-maps") {
        let x = Arc::new(build().unwrap());
        let cd = ctx_construct(x.clone()).unwrap();
        let mm = ContextadMorphism::identity(x).unwrap();
        let (f, report) = ctx_on_morphism(&mm, &cd, &cd).unwrap();
        assert!(report.passed(), "{name}\n{report}");
        assert!(f.loose.iter().enumerate().all(|(i, l)| l.ix() == i), "{name}");
        assert!(f.squares.iter().enumerate().all(|(i, s)| s.map(|s| s.ix()) == Some(i)), "{name}");
        for a in cd.x.base().objects() {
            let s = f.unit_comparison[a.ix()].unwrap();
            assert!(cd.dbl.is_tight_identity(s), "{name}");
        }
    }
}

#[test]
fn actegory_morphism_comparisons_are_the_monoidal_cells() {
    let a = fixtures::z2_swap_actegory().unwrap();
    let x = Arc::new(ctxalg::contextad::from_actegory(&a).unwrap());
    let cd = ctx_construct(x.clone()).unwrap();
    let g = a.grades.clone();
    let mm = linear_functor_morphism(
        &a,
        &a,
        x.clone(),
        x.clone(),
        FinFunctor::identity(a.base.clone()),
        FinFunctor::identity(g.cat.clone()),
        g.cat.id(g.unit),
        |m, n| g.cat.id(g.ten(m, n)),
        |c, m| a.base.id(a.act_on(c, m)),
    )
    .unwrap();
    let (f, report) = ctx_on_morphism(&mm, &cd, &cd).unwrap();
    assert!(report.passed(), "{report}");
    for c in a.base.objects() {
        let s = f.unit_comparison[c.ix()].unwrap();
        assert_eq!(cd.payload[s.ix()], mm.unitor[c.ix()]);
    }
    for (&(l, r), s) in &f.comp_comparison {
        let ((p, fm), (q, _)) = (cd.loose_data[l.ix()], cd.loose_data[r.ix()]);
        let pair = x.pair(p, x.star(fm, q)).unwrap();
        assert_eq!(cd.payload[s.unwrap().ix()], mm.multiplicator[&pair]);
    }
}

#[test]
fn loose_product_interchange_squares() {
    for fx in monoidal_fixtures().unwrap() {
        let cd = ctx_construct(Arc::new(fx.contextad)).unwrap();
        let (prod, report) = monoidal_loose_product(&cd, &fx.data).unwrap();
        println!("{}: {} products, {} interchange squares", fx.name, prod.product.len(), prod.comp_interchange.len());
        assert!(report.holds(Law::ColaxMonoidal), "{}\n{report}", fx.name);
        assert!(report.holds(Law::LooseProductTyped), "{}\n{report}", fx.name);
        assert!(report.holds(Law::InterchangeSquareTyped), "{}\n{report}", fx.name);
        assert!(prod.unit.is_some() && prod.unit_unit.is_some() && prod.unit_comp.is_some());
        let invertible = report.holds(Law::InterchangeSquareIso);
        assert_eq!(invertible, fx.name != "lattice-colax", "{}\n{report}", fx.name);
    }
}
