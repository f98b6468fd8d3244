//! Randomized properties over inputs beyond the shipped fixtures.

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use ctxalg::container::*;
use ctxalg::contextad::{check_contextad, identity_comonad};
use ctxalg::ctxdouble::{check_double_category, companion, ctx_construct, is_strict};
use ctxalg::fincat::{arrow_category, check_category, compose_spans, is_isomorphism, FinCategory, FinFunctor, Span};

/// A poset on `0..n` from a strictly upper triangular relation, closed
/// transitively.
#[allow(clippy::needless_range_loop)]
fn poset(n: usize, rel: &[bool]) -> Arc<FinCategory> {
    let mut leq = vec![vec![false; n]; n];
    let mut k = 0;
    for i in 0..n {
        leq[i][i] = true;
        for j in i + 1..n {
            leq[i][j] = rel[k];
            k += 1;
        }
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][m] && leq[m][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    Arc::new(FinCategory::poset(&names, |i, j| leq[i][j]).unwrap())
}

fn arb_poset(max: usize) -> impl Strategy<Value = Arc<FinCategory>> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |r| poset(n, &r)))
}

fn set(prefix: &str, n: usize) -> Arc<FinCategory> {
    let names: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
    Arc::new(FinCategory::discrete(&names))
}

/// A span of finite sets with the given leg tables.
fn set_span(apex: &Arc<FinCategory>, l: (&Arc<FinCategory>, &[usize]), r: (&Arc<FinCategory>, &[usize])) -> Span {
    let leg = |(cod, t): (&Arc<FinCategory>, &[usize])| {
        let c = cod.clone();
        FinFunctor::tabulate(
            apex.clone(),
            cod.clone(),
            |o| ctxalg::fincat::Obj(t[o.ix()] as u32),
            move |m| c.id(ctxalg::fincat::Obj(t[m.ix()] as u32)),
        )
    };
    Span::new(leg(l), leg(r)).unwrap()
}

/// The bracketing-free name of a pair object or morphism.
fn flat(name: &str) -> String {
    name.replace(['(', ')'], "")
}

fn arb_state_map(states: usize, x: usize, y: usize) -> impl Strategy<Value = FinKleisliMap> {
    let shapes = states.pow(states as u32);
    prop::collection::vec((0..shapes, prop::collection::vec(0..y, states)), x).prop_map(move |assign| FinKleisliMap {
        dom: x,
        cod: y,
        assign: assign.into_iter().map(|(s, l)| (Shape(s as u32), l)).collect(),
    })
}

/// Tabulating state(3) is slow enough to share between cases.
fn state3() -> &'static PolyMonad {
    static M: OnceLock<PolyMonad> = OnceLock::new();
    M.get_or_init(|| state_container(3).unwrap())
}

fn state_chain() -> impl Strategy<Value = (FinKleisliMap, FinKleisliMap, FinKleisliMap)> {
    (0..=3usize, 1..=3usize, 1..=3usize, 1..=3usize)
        .prop_flat_map(|(x, y, z, w)| (arb_state_map(3, x, y), arb_state_map(3, y, z), arb_state_map(3, z, w)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constructed_categories_are_categories(c in arb_poset(5)) {
        prop_assert!(check_category(&c).passed());
        let op = c.opposite();
        prop_assert!(check_category(&op).passed());
        let back = op.opposite();
        prop_assert!(c.morphisms().all(|m| back.mor_name(m) == c.mor_name(m)
            && back.src(m) == c.src(m) && back.tgt(m) == c.tgt(m)));
        let (prod, p1, p2) = FinCategory::product(&c, &poset(2, &[true])).unwrap();
        prop_assert!(check_category(&prod).passed());
        prop_assert!(p1.check().passed() && p2.check().passed());
        let (arr, d0, d1) = arrow_category(&c).unwrap();
        prop_assert!(check_category(&arr).passed());
        prop_assert!(d0.check().passed() && d1.check().passed());
    }

    #[test]
    fn span_composition_is_associative_up_to_iso(
        sizes in prop::collection::vec(1..=3usize, 7),
        seed in prop::collection::vec(any::<prop::sample::Index>(), 12),
    ) {
        let (a, b, c, d) = (set("a", sizes[0]), set("b", sizes[1]), set("c", sizes[2]), set("d", sizes[3]));
        let (e, f, g) = (set("e", sizes[4]), set("f", sizes[5]), set("g", sizes[6]));
        let mut k = 0;
        let mut table = |apex: &Arc<FinCategory>, cod: &Arc<FinCategory>| {
            let t: Vec<usize> = (0..apex.num_objects()).map(|i| seed[(k + i) % 12].index(cod.num_objects())).collect();
            k += apex.num_objects();
            t
        };
        let (ea, eb) = (table(&e, &a), table(&e, &b));
        let (fb, fc) = (table(&f, &b), table(&f, &c));
        let (gc, gd) = (table(&g, &c), table(&g, &d));
        let s1 = set_span(&e, (&a, &ea), (&b, &eb));
        let s2 = set_span(&f, (&b, &fb), (&c, &fc));
        let s3 = set_span(&g, (&c, &gc), (&d, &gd));
        let left = compose_spans(&compose_spans(&s1, &s2).unwrap(), &s3).unwrap();
        let right = compose_spans(&s1, &compose_spans(&s2, &s3).unwrap()).unwrap();
        let (la, ra) = (left.apex().clone(), right.apex().clone());
        prop_assert_eq!(la.num_objects(), ra.num_objects());
        let obj = |o: ctxalg::fincat::Obj| ra.objects().find(|&r| flat(ra.obj_name(r)) == flat(la.obj_name(o))).unwrap();
        let mor = |m: ctxalg::fincat::Mor| ra.morphisms().find(|&r| flat(ra.mor_name(r)) == flat(la.mor_name(m))).unwrap();
        let iso = FinFunctor::tabulate(la.clone(), ra.clone(), obj, mor);
        prop_assert!(is_isomorphism(&iso));
        for o in la.objects() {
            prop_assert_eq!(left.left.obj(o), right.left.obj(iso.obj(o)));
            prop_assert_eq!(left.right.obj(o), right.right.obj(iso.obj(o)));
        }
    }

    #[test]
    fn identity_comonads_on_posets_are_strict(c in arb_poset(4)) {
        let x = Arc::new(identity_comonad(c.clone()).unwrap());
        prop_assert!(check_contextad(&x).unwrap().passed());
        let cd = ctx_construct(x).unwrap();
        prop_assert!(check_double_category(&cd.dbl).unwrap().passed());
        prop_assert!(is_strict(&cd.dbl).0);
        for f in c.morphisms() {
            prop_assert!(companion(&cd, f).unwrap().1.passed());
        }
    }

    #[test]
    fn state_kleisli_category_laws((k1, k2, k3) in state_chain()) {
        let m = state3();
        let c12 = kleisli_compose(m, &k1, &k2).unwrap();
        let left = kleisli_compose(m, &c12, &k3).unwrap();
        let right = kleisli_compose(m, &k1, &kleisli_compose(m, &k2, &k3).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(&kleisli_compose(m, &kleisli_unit(m, k1.dom), &k1).unwrap(), &k1);
        prop_assert_eq!(&kleisli_compose(m, &k1, &kleisli_unit(m, k1.cod)).unwrap(), &k1);
        // the exhaustive law check refuses |S| = 3, the evaluator does not need it
        let t = Transposed { monad: m };
        let via = transposed_compose(&t, &transpose_map(&k1), &transpose_map(&k2)).unwrap();
        prop_assert_eq!(via, transpose_map(&c12));
    }

    #[test]
    fn state_comonad_alpha_and_coassociativity(
        x in 1..=2usize,
        seed in prop::collection::vec(0..3usize, 2 * 3 + 2 * 9 + 2 * 27),
    ) {
        let d = direct_state(3);
        let f = seed[..x * 3].to_vec();
        let g = seed[6..6 + x * 9].to_vec();
        let h = seed[24..24 + x * 27].to_vec();
        let xf = x * 3;
        let delta = d.comult(x, &f, &g);
        // (f⊗g)(p) = g(p, f(p)), δ(p) = (p, f(p))
        prop_assert_eq!(&d.tensor(x, &f, &g), &(0..xf).map(|p| g[p * 3 + f[p]]).collect::<Vec<_>>());
        prop_assert_eq!(&delta, &(0..xf).map(|p| p * 3 + f[p]).collect::<Vec<_>>());
        let fg = d.tensor(x, &f, &g);
        let pulled = d.reindex(&delta, &h);
        let gh = d.tensor(xf, &g, &h);
        prop_assert_eq!(d.tensor(x, &f, &gh), d.tensor(x, &fg, &pulled));
        let top: Vec<usize> = d.comult(x, &f, &gh).iter().map(|&i| d.comult(xf, &g, &h)[i]).collect();
        let bottom: Vec<usize> = d.comult(x, &fg, &pulled).iter().map(|&i| d.act_map(&delta, &h)[i]).collect();
        prop_assert_eq!(top, bottom);
    }

    #[test]
    fn monad_laws_hold_iff_comonad_laws_hold(
        seq_edits in prop::collection::vec((any::<prop::sample::Index>(), 0..4u32), 0..3),
        split_edits in prop::collection::vec((any::<prop::sample::Index>(), 0..2usize, 0..2usize), 0..2),
    ) {
        let mut m = state_container(2).unwrap();
        let mut seq_keys: Vec<_> = m.seq.keys().cloned().collect();
        seq_keys.sort();
        for (i, v) in seq_edits {
            m.seq.insert(i.get(&seq_keys).clone(), Shape(v));
        }
        let mut split_keys: Vec<_> = m.split.keys().cloned().collect();
        split_keys.sort();
        for (i, a, b) in split_edits {
            m.split.insert(i.get(&split_keys).clone(), (a, b));
        }
        let monad = check_poly_monad(&m).unwrap().passed();
        let comonad = check_dep_graded(&Transposed { monad: &m }, &Sample::default()).unwrap().passed();
        prop_assert_eq!(monad, comonad);
    }

    #[test]
    fn cyclic_writers_are_monads_with_transposition(n in 1..=4usize, shift in 0..4usize) {
        // Z/n with its elements listed starting at `shift`
        let names: Vec<String> = (0..n).map(|i| ((i + shift) % n).to_string()).collect();
        let value = |i: usize| (i + shift) % n;
        let index = |v: usize| (v + n - shift % n) % n;
        let m = writer_container(&names, index(0), |a, b| index((value(a) + value(b)) % n)).unwrap();
        prop_assert!(check_poly_monad(&m).unwrap().passed());
        prop_assert!(check_transposition_iso(&m, 2, 2, 2).unwrap().passed());
        let sizes = [0, 1, 2];
        let direct = direct_writer(n, index(0), |a, b| index((value(a) + value(b)) % n));
        prop_assert!(check_agreement(&transpose(&m).unwrap(), &direct, writer_grade, &sizes).passed());
    }
}
