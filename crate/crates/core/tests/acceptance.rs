//! The acceptance criteria, one line each. Runs without the libtest harness
//! so that every criterion reports even when an earlier one fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use ctxalg::container::*;
use ctxalg::contentad::check_duality;
use ctxalg::contextad::{check_contextad, from_display_maps, Contextad};
use ctxalg::ctxdouble::{
    check_double_category, companion, conjoint, ctx_construct, is_strict, monoidal_loose_product, span_ctx_iso,
    span_double_category,
};
use ctxalg::fibration::check_gaunt;
use ctxalg::fixtures;
use ctxalg::Law;

fn build(name: &str) -> Contextad {
    let (_, _, f) = fixtures::contextad_gallery().into_iter().find(|(n, ..)| *n == name).expect("gallery entry");
    f().unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn z2_writer() -> PolyMonad {
    writer_container(&["0", "1"], 0, |a, b| (a + b) % 2).unwrap()
}

// ---- 1 ----

fn writer_transposition() -> String {
    let m = z2_writer();
    let start = Instant::now();
    let r = check_transposition_iso(&m, 2, 2, 2).unwrap();
    let elapsed = start.elapsed();
    assert!(r.passed(), "{r}");
    let pairs = r.get(Law::TransposeComposition).unwrap().checked;
    assert!(pairs >= 256, "{pairs} pairs");
    assert!(elapsed < Duration::from_secs(1), "{elapsed:?}");

    // composite of (w1, y) and (w2, z) is (w1 + w2(y) mod 2, z(y))
    let t = transpose(&m).unwrap();
    let mut exact = 0;
    for k1 in all_kleisli_maps(&m, 2, 2) {
        for k2 in all_kleisli_maps(&m, 2, 2) {
            let assign: Vec<(Shape, Vec<usize>)> = k1
                .assign
                .iter()
                .map(|(w1, y)| {
                    let (w2, z) = &k2.assign[y[0]];
                    (Shape((w1.0 + w2.0) % 2), vec![z[0]])
                })
                .collect();
            let oracle = FinKleisliMap { dom: 2, cod: 2, assign };
            assert_eq!(kleisli_compose(&m, &k1, &k2).unwrap(), oracle);
            let via = transposed_compose(&t, &transpose_map(&k1), &transpose_map(&k2)).unwrap();
            assert_eq!(via, transpose_map(&oracle));
            exact += 1;
        }
    }
    format!("{pairs} pairs in {elapsed:?}, {exact} composites match the oracle")
}

// ---- 2 ----

/// A grade over a set of `n` elements for `|S| = 2` as a bit table.
fn bits(g: &[usize]) -> usize {
    g.iter().enumerate().map(|(i, &v)| v << i).sum()
}

fn table(b: usize, len: usize) -> Vec<usize> {
    (0..len).map(|i| (b >> i) & 1).collect()
}

fn bit(b: usize, i: usize) -> usize {
    (b >> i) & 1
}

/// `(f⊗g)(p) = g(p, f(p))` on bit tables, `p` ranging over `n` pairs.
fn oracle_tensor(n: usize, f: usize, g: usize) -> usize {
    (0..n).map(|p| bit(g, p * 2 + bit(f, p)) << p).sum()
}

fn state_transposition() -> String {
    let start = Instant::now();
    let m = state_container(2).unwrap();
    let r = check_transposition_iso(&m, 2, 2, 2).unwrap();
    assert!(r.passed(), "{r}");
    let pairs = r.get(Law::TransposeComposition).unwrap().checked;
    let d = direct_state(2);
    let agree = check_agreement(&transpose(&m).unwrap(), &d, state_grade(&m), &[0, 1, 2]);
    assert!(agree.passed(), "{agree}");

    // |X| = 2: f over X has 4 entries, g over X⊙f 8, h over X⊙f⊙g 16
    let (nf, ng, nh) = (1usize << 4, 1usize << 8, 1usize << 16);
    let t2: Vec<Vec<usize>> =
        (0..nf).map(|f| (0..ng).map(|g| bits(&d.tensor(2, &table(f, 4), &table(g, 8)))).collect()).collect();
    for (f, row) in t2.iter().enumerate() {
        for (g, &v) in row.iter().enumerate() {
            assert_eq!(v, oracle_tensor(4, f, g), "f⊗g at f={f:04b}, g={g:08b}");
        }
    }
    let t4: Vec<Vec<u8>> = (0..ng)
        .into_par_iter()
        .map(|g| {
            let gt = table(g, 8);
            (0..nh)
                .map(|h| {
                    let v = bits(&d.tensor(4, &gt, &table(h, 16)));
                    assert_eq!(v, oracle_tensor(8, g, h), "g⊗h at g={g:08b}, h={h:016b}");
                    v as u8
                })
                .collect()
        })
        .collect();
    // δ_{f,g}(p) = (p, f(p)); it must not depend on g
    let comult: Vec<Vec<usize>> = (0..nf)
        .map(|f| {
            let delta = d.comult(2, &table(f, 4), &table(0, 8));
            let oracle: Vec<usize> = (0..4).map(|p| p * 2 + bit(f, p)).collect();
            assert_eq!(delta, oracle, "δ at f={f:04b}");
            for g in 0..ng {
                assert_eq!(d.comult(2, &table(f, 4), &table(g, 8)), delta, "δ depends on g={g:08b}");
            }
            delta
        })
        .collect();
    let pulled: Vec<Vec<u8>> = (0..nf)
        .into_par_iter()
        .map(|f| {
            (0..nh)
                .map(|h| {
                    let v = bits(&d.reindex(&comult[f], &table(h, 16)));
                    let oracle: usize = (0..8).map(|i| bit(h, comult[f][i / 2] * 2 + i % 2) << i).sum();
                    assert_eq!(v, oracle, "δ*h at f={f:04b}, h={h:016b}");
                    v as u8
                })
                .collect()
        })
        .collect();

    // α: f⊗(g⊗h) = (f⊗g)⊗δ*h for every f, g, h
    let triples: usize = (0..ng)
        .into_par_iter()
        .map(|g| {
            for f in 0..nf {
                let fg = t2[f][g];
                for h in 0..nh {
                    let lhs = t2[f][t4[g][h] as usize];
                    let rhs = t2[fg][pulled[f][h] as usize];
                    assert_eq!(lhs, rhs, "α at f={f:04b}, g={g:08b}, h={h:016b}");
                }
            }
            nf * nh
        })
        .sum();

    // λ, ρ and both counit laws at every (x, s)
    let (unit, eps) = (d.unit(2), d.counit(2));
    assert_eq!(unit, vec![0, 1, 0, 1]);
    assert_eq!(eps, vec![0, 0, 1, 1]);
    for f in 0..nf {
        let ft = table(f, 4);
        let pulled = d.reindex(&eps, &ft);
        assert_eq!(d.tensor(2, &unit, &pulled), ft, "λ at f={f:04b}");
        let back: Vec<usize> = d.comult(2, &unit, &pulled).iter().map(|&i| d.act_map(&eps, &ft)[i]).collect();
        assert_eq!(back, (0..4).collect::<Vec<_>>(), "left counit at f={f:04b}");
        let unit4 = d.unit(4);
        assert_eq!(d.tensor(2, &ft, &unit4), ft, "ρ at f={f:04b}");
        let back: Vec<usize> = d.comult(2, &ft, &unit4).iter().map(|&i| d.counit(4)[i]).collect();
        assert_eq!(back, (0..4).collect::<Vec<_>>(), "right counit at f={f:04b}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "{elapsed:?}");
    format!("{pairs} pairs, α on {triples} triples, λ ρ counits on {nf} grades, {elapsed:?}")
}

// ---- 3 ----

fn maybe_transposition() -> String {
    let m = maybe_container().unwrap();
    let r = check_transposition_iso(&m, 2, 2, 2).unwrap();
    assert!(r.passed(), "{r}");
    let c = &m.container;
    assert_eq!((c.shape_name(TRUE), c.shape_name(FALSE)), ("True", "False"));
    assert_eq!(c.positions[TRUE.ix()], vec!["⊤".to_owned()]);
    assert!(c.positions[FALSE.ix()].is_empty());
    assert_eq!(m.ok, TRUE);
    assert_eq!(m.seq.len(), 3);
    for h in [TRUE, FALSE] {
        assert_eq!(m.seq[&(TRUE, vec![h])], h);
    }
    assert_eq!(m.seq[&(FALSE, vec![])], FALSE);
    assert_eq!(m.split.len(), 1);
    assert_eq!(m.split[&(TRUE, vec![TRUE], 0)], (0, 0));
    format!("{} pairs, seq and split tables exact", r.get(Law::TransposeComposition).unwrap().checked)
}

// ---- 4 ----

fn poly_monad_laws() -> String {
    for m in [z2_writer(), state_container(2).unwrap(), maybe_container().unwrap()] {
        let r = check_poly_monad(&m).unwrap();
        assert!(r.passed() && r.results.len() == 6, "{r}");
    }
    let mutants = poly_mutants().unwrap();
    assert_eq!(mutants.len(), 6);
    for mutant in &mutants {
        let r = check_poly_monad(&mutant.monad).unwrap();
        let w = r.get(mutant.breaks).and_then(|x| x.witness.as_ref());
        let w = w.unwrap_or_else(|| panic!("{} not caught\n{r}", mutant.name));
        assert!(common::witness_is_genuine(&mutant.monad, mutant.breaks, w), "{}: {w}", mutant.name);
    }
    "3 monads pass 6 laws, 6 mutants caught with genuine witnesses".into()
}

// ---- 5 ----

fn ctx_coherence() -> String {
    let names = ["identity-comonad", "z2-actegory", "display-poset", "decoration", "graded-delay"];
    let mut out = Vec::new();
    for name in names {
        let start = Instant::now();
        let cd = ctx_construct(Arc::new(build(name))).unwrap();
        let r = check_double_category(&cd.dbl).unwrap();
        let elapsed = start.elapsed();
        assert!(r.passed(), "{name}\n{r}");
        for law in
            [Law::DblInterchange, Law::DblUnitorNatural, Law::DblAssociatorNatural, Law::DblTriangle, Law::DblPentagon]
        {
            assert!(r.holds(law) && r.get(law).unwrap().checked > 0, "{name}: {law:?}\n{r}");
        }
        assert!(elapsed < Duration::from_secs(30), "{name}: {elapsed:?}");
        out.push(format!("{name} {}ms", elapsed.as_millis()));
    }
    out.join(", ")
}

// ---- 6 ----

fn strictness() -> String {
    let mut gaunt = Vec::new();
    for (name, _, f) in fixtures::contextad_gallery() {
        let x = f().unwrap();
        if !check_gaunt(&x.p.p).passed() {
            continue;
        }
        let cd = ctx_construct(Arc::new(x)).unwrap();
        let (strict, w) = is_strict(&cd.dbl);
        assert!(strict, "{name} is gaunt but not strict: {w:?}");
        gaunt.push(name);
    }
    assert!(!gaunt.is_empty());
    let cd = ctx_construct(Arc::new(build("skewed-unit-actegory"))).unwrap();
    let (strict, w) = is_strict(&cd.dbl);
    assert!(!strict);
    let w = w.expect("witness");
    assert_eq!(w.get("cell"), Some("ρ̂"), "{w}");
    format!("strict: {}; skewed-unit-actegory not strict at {w}", gaunt.join(" "))
}

// ---- 7 ----

fn companions_and_conjoints() -> String {
    let (mut comp, mut conj) = (0, 0);
    for (name, _, f) in fixtures::contextad_gallery() {
        let x = Arc::new(f().unwrap());
        let cd = ctx_construct(x.clone()).unwrap();
        let c = x.base();
        for g in c.morphisms() {
            let (_, r) = companion(&cd, g).unwrap();
            assert!(r.passed(), "{name}: companion of {}\n{r}", c.describe(g));
            comp += 1;
            if c.is_iso(g) {
                let (_, r) = conjoint(&cd, g).unwrap();
                assert!(r.passed(), "{name}: conjoint of {}\n{r}", c.describe(g));
                conj += 1;
            }
        }
    }
    format!("{comp} companions, {conj} conjoints")
}

// ---- 8 ----

fn span_isomorphism() -> String {
    let dm = fixtures::display_poset_maps();
    let c = dm.cat.clone();
    let span =
        span_double_category(c.clone(), c.morphisms().collect(), dm.display.clone(), dm.pullbacks.clone()).unwrap();
    let r = check_double_category(&span.dbl).unwrap();
    assert!(r.passed(), "{r}");
    let cd = ctx_construct(Arc::new(from_display_maps(&dm).unwrap())).unwrap();
    let iso = span_ctx_iso(&cd, &span).unwrap();
    assert!(iso.passed(), "{iso}");
    format!("{} loose arrows, {} squares", span.dbl.loose.len(), span.dbl.squares.len())
}

// ---- 9 ----

fn duality() -> String {
    let mut out = Vec::new();
    for (name, _, f) in fixtures::contentad_gallery() {
        let r = check_duality(Arc::new(f().unwrap())).unwrap();
        assert!(r.passed(), "{name}\n{r}");
        assert!(r.results.iter().all(|x| x.checked > 0), "{name}\n{r}");
        out.push(name);
    }
    assert_eq!(out, ["identity-monad", "closure-monad", "z2-left-actegory"]);
    out.join(", ")
}

// ---- 10 ----

fn loose_product() -> String {
    let sym = fixtures::z2_symmetric_self_action().unwrap();
    let cd = ctx_construct(Arc::new(sym.contextad)).unwrap();
    let (prod, r) = monoidal_loose_product(&cd, &sym.data).unwrap();
    assert!(r.holds(Law::InterchangeSquareTyped) && r.holds(Law::InterchangeSquareIso), "{r}");
    assert!(!prod.comp_interchange.is_empty());
    let lattice = fixtures::lattice_colax().unwrap();
    let cd = ctx_construct(Arc::new(lattice.contextad)).unwrap();
    let (_, r) = monoidal_loose_product(&cd, &lattice.data).unwrap();
    assert!(r.holds(Law::InterchangeSquareTyped), "{r}");
    let w = r.get(Law::InterchangeSquareIso).and_then(|x| x.witness.clone()).expect("lattice-colax flagged");
    format!("{} invertible interchange squares; lattice-colax flagged at {w}", prod.comp_interchange.len())
}

// ---- 11 ----

fn digits(s: &str) -> Vec<usize> {
    s.chars().map(|ch| ch.to_digit(10).unwrap() as usize).collect()
}

fn decoration_grades() -> String {
    let cd = ctx_construct(Arc::new(build("decoration"))).unwrap();
    let (m, c) = (cd.x.total(), cd.x.base());
    let grade = |o| {
        let name = m.obj_name(o);
        digits(&name[name.find(':').unwrap() + 1..])
    };
    let map = |f| digits(&c.mor_name(f)[c.mor_name(f).find(':').unwrap() + 1..]);
    let mut pairs = 0;
    for (&(l1, l2), &l) in &cd.dbl.loose_comp {
        let ((p, f), (q, g), (r, h)) = (cd.loose_data[l1.ix()], cd.loose_data[l2.ix()], cd.loose_data[l.ix()]);
        let (s, t, ft, gt) = (grade(p), grade(q), map(f), map(g));
        let expected: Vec<usize> = (0..s.len()).map(|i| (s[i] + t[ft[i]]).min(2)).collect();
        assert_eq!(grade(r), expected, "grade of {};{}", cd.dbl.loose[l1.ix()].name, cd.dbl.loose[l2.ix()].name);
        let composite: Vec<usize> = ft.iter().map(|&i| gt[i]).collect();
        assert_eq!(map(h), composite);
        pairs += 1;
    }
    let expected_pairs: usize =
        cd.dbl.loose.iter().map(|a| cd.dbl.loose.iter().filter(|b| b.src == a.tgt).count()).sum();
    assert_eq!(pairs, expected_pairs);
    format!("{pairs} composable pairs")
}

// ---- 12 ----

fn contextad_mutations() -> String {
    let mutants = fixtures::mutants().unwrap();
    for mt in &mutants {
        mt.contextad.validate().unwrap_or_else(|e| panic!("{}: structural {e}", mt.name));
        let r = check_contextad(&mt.contextad).unwrap_or_else(|e| panic!("{}: structural {e}", mt.name));
        assert_eq!(r.failed_laws(), vec![mt.breaks], "{}", mt.name);
        assert!(r.get(mt.breaks).unwrap().witness.is_some(), "{}", mt.name);
    }
    format!("{} mutants, each breaks exactly its law", mutants.len())
}

type Criterion = (&'static str, fn() -> String);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("writer transposition", writer_transposition),
        ("state transposition", state_transposition),
        ("maybe transposition", maybe_transposition),
        ("poly-monad laws and mutations", poly_monad_laws),
        ("Ctx coherence", ctx_coherence),
        ("is_strict", strictness),
        ("companions and conjoints", companions_and_conjoints),
        ("span isomorphism", span_isomorphism),
        ("contentad duality", duality),
        ("Z/2 loose product", loose_product),
        ("decoration composite grade", decoration_grades),
        ("contextad mutations", contextad_mutations),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        match catch_unwind(AssertUnwindSafe(run)) {
            Ok(detail) => println!("[PASS] {} {name} ({:.2?}): {detail}", i + 1, start.elapsed()),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("[FAIL] {} {name} ({:.2?}): {msg}", i + 1, start.elapsed());
                failed += 1;
            }
        }
    }
    println!("{} of 12 acceptance criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
