use std::sync::Arc;
use std::time::Instant;

use ctxalg::contentad::*;
use ctxalg::ctxdouble::check_double_category;
use ctxalg::fixtures::{
    broken_monad_data, closure_monad, closure_monad_data, contentad_gallery, identity_monad_square,
};
use ctxalg::Error;

#[test]
fn gallery_contentads_satisfy_their_laws() {
    for (name, _, build) in contentad_gallery() {
        let x = build().unwrap();
        let r = check_contentad(&x).unwrap();
        assert!(r.passed(), "{name}\n{r}");
    }
}

#[test]
fn cnt_is_a_double_category() {
    for (name, _, build) in contentad_gallery() {
        let start = Instant::now();
        let cd = cnt_construct(Arc::new(build().unwrap())).unwrap();
        let r = check_double_category(&cd.dbl).unwrap();
        println!("{name}: {} in {:?}", cd.dbl, start.elapsed());
        assert!(r.passed(), "{name}\n{r}");
    }
}

#[test]
fn identity_monad_has_one_loose_arrow_per_tight_arrow() {
    let x = identity_monad_square().unwrap();
    let n = x.base().num_morphisms();
    let cd = cnt_construct(Arc::new(x)).unwrap();
    assert_eq!(cd.dbl.loose.len(), n);
}

#[test]
fn monad_loose_arrows_are_kleisli_arrows() {
    let (t, _, _) = closure_monad_data().unwrap();
    let c = t.dom.clone();
    let cd = cnt_construct(Arc::new(closure_monad().unwrap())).unwrap();
    for a in c.objects() {
        for b in c.objects() {
            let kleisli = c.hom(a, t.obj(b)).count();
            let loose = cd.dbl.loose.iter().filter(|l| l.src == a && l.tgt == b).count();
            assert_eq!(loose, kleisli);
        }
    }
    // composite of (b, f) and (c, g) is μ ∘ T g ∘ f
    for (i, &(p, f)) in cd.loose_data.iter().enumerate() {
        for (j, &(q, g)) in cd.loose_data.iter().enumerate() {
            if c.src(g) != p {
                continue;
            }
            let k = cd.dbl.comp(ctxalg::ctxdouble::Loose(i as u32), ctxalg::ctxdouble::Loose(j as u32)).unwrap();
            let (r, h) = cd.loose_data[k.ix()];
            assert_eq!(r, q);
            let (_, _, mu) = closure_monad_data().unwrap();
            assert_eq!(h, c.comp(mu.at(q), c.comp(t.mor(g), f)));
        }
    }
}

#[test]
fn cnt_is_ctx_of_the_dual_reversed() {
    for (name, _, build) in contentad_gallery() {
        let r = check_duality(Arc::new(build().unwrap())).unwrap();
        assert!(r.passed(), "{name}\n{r}");
    }
}

#[test]
fn dualizing_twice_is_the_identity() {
    for (name, _, build) in contentad_gallery() {
        let x = build().unwrap();
        let back = undualize(&dualize(&x)).unwrap();
        assert!(back.same_data(&x), "{name}");
    }
}

#[test]
fn broken_multiplication_is_rejected() {
    let (t, eta, mu) = broken_monad_data().unwrap();
    match from_monad(&t, &eta, &mu) {
        Err(Error::Law(r)) => assert!(r.failures().all(|f| f.witness.is_some()), "{r}"),
        other => panic!("expected a law failure, got {other:?}"),
    }
}

#[test]
fn duality_report_covers_every_cell() {
    for (name, _, build) in contentad_gallery() {
        let x = Arc::new(build().unwrap());
        let cd = cnt_construct(x.clone()).unwrap();
        let r = check_duality(x).unwrap();
        println!("{name}: {}\n{r}", cd.dbl);
        assert!(r.results.iter().all(|l| l.checked > 0), "{name}\n{r}");
    }
}
