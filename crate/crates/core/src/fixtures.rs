//! Small shipped instances: the gallery used by the tests and the CLI.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::contentad::{from_left_actegory, from_monad, identity_monad, Contentad, LeftActegory};
use crate::contextad::{
    from_actegory, from_comonad, from_decoration_fibration, from_display_maps, from_graded_comonad, identity_comonad,
    Actegory, Contextad, Decoration, DisplayMaps, GradedComonad,
};
use crate::ctxdouble::MonoidalContextadData;
use crate::fibration::ClovenFibration;
use crate::fincat::{CatBuilder, FinCategory, FinFunctor, Mor, NatTrans, Obj, PairIndex};
use crate::monoidal::MonoidalCategory;
use crate::report::{Error, Law, Result};

/// The poset `0 <= a, b <= 1`.
pub fn square_poset() -> Arc<FinCategory> {
    let leq = |i: usize, j: usize| i == j || i == 0 || j == 3;
    Arc::new(FinCategory::poset(&["0", "a", "b", "1"], leq).expect("square poset"))
}

/// Meets in [`square_poset`], by index.
fn square_meet(i: usize, j: usize) -> usize {
    match (i, j) {
        (x, y) if x == y => x,
        (3, y) => y,
        (x, 3) => x,
        _ => 0,
    }
}

fn poset_arrow(c: &FinCategory, i: usize, j: usize) -> Mor {
    let name = format!("{}<={}", c.obj_name(Obj(i as u32)), c.obj_name(Obj(j as u32)));
    c.mor(&name).expect("poset arrow")
}

/// Finite sets `{0..n}` for the given sizes, with every function. Objects are
/// named by size; a function is named `n->m:` followed by its value table.
pub fn finset(sizes: &[usize]) -> Arc<FinCategory> {
    finset_where(sizes, |_| true)
}

/// The subcategory of [`finset`] on the functions satisfying `keep`, which
/// must contain identities and be closed under composition.
pub fn finset_where(sizes: &[usize], keep: impl Fn(&[usize]) -> bool) -> Arc<FinCategory> {
    let mut b = CatBuilder::new();
    let objs: Vec<Obj> = sizes.iter().map(|n| b.object(n.to_string()).expect("distinct sizes")).collect();
    let mut tables: Vec<Vec<usize>> = Vec::new();
    let mut by_table: HashMap<(usize, usize, Vec<usize>), Mor> = HashMap::new();
    for (i, &n) in sizes.iter().enumerate() {
        for (j, &m) in sizes.iter().enumerate() {
            for t in all_functions(n, m) {
                let identity = i == j && t.iter().enumerate().all(|(k, &v)| k == v);
                if !identity && !keep(&t) {
                    continue;
                }
                let name = format!("{n}->{m}:{}", t.iter().map(|v| v.to_string()).collect::<String>());
                let mor = b.morphism(name, objs[i], objs[j]).expect("fresh function");
                if identity {
                    b.set_identity(objs[i], mor);
                }
                by_table.insert((i, j, t.clone()), mor);
                tables.push(t);
            }
        }
    }
    let ends: Vec<(Obj, Obj)> = (0..b.num_morphisms()).map(|k| (b.src(Mor(k as u32)), b.tgt(Mor(k as u32)))).collect();
    let cat = b
        .finish(|g, f| {
            let t: Vec<usize> = tables[f.ix()].iter().map(|&x| tables[g.ix()][x]).collect();
            by_table.get(&(ends[f.ix()].0.ix(), ends[g.ix()].1.ix(), t)).copied()
        })
        .expect("finite sets");
    Arc::new(cat)
}

/// All functions `{0..n} -> {0..m}` as value tables, in lexicographic order.
pub fn all_functions(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..m).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

/// Value table of a function in a [`finset`] category.
pub fn table(c: &FinCategory, f: Mor) -> Vec<usize> {
    let name = c.mor_name(f);
    let digits = &name[name.find(':').expect("function name") + 1..];
    digits.chars().map(|ch| ch.to_digit(10).expect("digit") as usize).collect()
}

fn function(c: &FinCategory, src: Obj, tgt: Obj, t: &[usize]) -> Mor {
    c.hom(src, tgt).find(|&f| table(c, f) == t).expect("every function is present")
}

fn size_of(c: &FinCategory, o: Obj) -> usize {
    c.obj_name(o).parse().expect("object named by size")
}

fn object_of_size(c: &FinCategory, n: usize) -> Option<Obj> {
    c.obj(&n.to_string())
}

// ---- contextads ----

/// Identity comonad on the square poset.
pub fn identity_comonad_square() -> Result<Contextad> {
    identity_comonad(square_poset())
}

/// The environment comonad `x ↦ x ∧ a` on the square poset.
pub fn environment_comonad() -> Result<Contextad> {
    let c = square_poset();
    let d_obj = |i: usize| square_meet(i, 1);
    let d = FinFunctor::tabulate(
        c.clone(),
        c.clone(),
        |o| Obj(d_obj(o.ix()) as u32),
        |m| poset_arrow(&c, d_obj(c.src(m).ix()), d_obj(c.tgt(m).ix())),
    );
    let id = FinFunctor::identity(c.clone());
    let eps = NatTrans::tabulate(d.clone(), id, |o| poset_arrow(&c, d_obj(o.ix()), o.ix()))?;
    let dd = d.then(&d)?;
    let delta = NatTrans::tabulate(d.clone(), dd, |o| c.id(Obj(d_obj(o.ix()) as u32)))?;
    from_comonad(&d, &eps, &delta)
}

/// `Z/2` acting on the two-object codiscrete groupoid by swapping.
pub fn z2_swap_actegory() -> Result<Actegory> {
    let c = Arc::new(FinCategory::poset(&["x", "y"], |_, _| true)?);
    let g = MonoidalCategory::discrete_monoid(&["0", "1"], 0, |a, b| (a + b) % 2)?;
    let gc = g.cat.clone();
    let swap = move |o: Obj, m: Obj| {
        if gc.obj_name(m) == "1" {
            Obj(1 - o.0)
        } else {
            o
        }
    };
    let (c2, gc2) = (c.clone(), g.cat.clone());
    Actegory::strict(c.clone(), g, swap.clone(), move |f, u| {
        let m = gc2.src(u);
        poset_arrow(&c2, swap(c2.src(f), m).ix(), swap(c2.tgt(f), m).ix())
    })
}

pub fn z2_actegory() -> Result<Contextad> {
    from_actegory(&z2_swap_actegory()?)
}

/// The monoid `{1, a}` with `a·a = a` acting on its own delooping.
pub fn idempotent_self_action() -> Result<Contextad> {
    let mult = |x: usize, y: usize| x.max(y);
    let c = Arc::new(FinCategory::delooping("*", &["1", "a"], 0, mult)?);
    let g = MonoidalCategory::commutative_delooping("*", &["1", "a"], 0, mult)?;
    let a = Actegory::strict(c, g, |o, _| o, move |f, u| Mor(mult(f.ix(), u.ix()) as u32))?;
    from_actegory(&a)
}

/// Unit `e`, every product `e'`, on the codiscrete category `{e, e'}`,
/// acting trivially on the terminal category. Its unitors are non-identity
/// isomorphisms, so the fibration is not gaunt.
pub fn skewed_unit_actegory() -> Result<Contextad> {
    let gc = Arc::new(FinCategory::poset(&["e", "e'"], |_, _| true)?);
    let (e, e2) = (Obj(0), Obj(1));
    let to = {
        let gc = gc.clone();
        move |a: Obj, b: Obj| poset_arrow(&gc, a.ix(), b.ix())
    };
    let t1 = to.clone();
    let t2 = to.clone();
    let g = MonoidalCategory::new(
        gc.clone(),
        move |_, _| e2,
        move |_, _| to(e2, e2),
        e,
        move |_, _, _| t1(e2, e2),
        move |a| t2(e2, a),
        {
            let t3 = gc.clone();
            move |a| poset_arrow(&t3, e2.ix(), a.ix())
        },
    )?;
    let c = Arc::new(FinCategory::terminal());
    let a = Actegory::strict(c, g, |o, _| o, |f, _| f)?;
    from_actegory(&a)
}

/// Grades `{0, 1, 2}` ordered by `>=`, with saturating addition.
pub fn truncated_nat_grades() -> Result<MonoidalCategory> {
    let cat = Arc::new(FinCategory::poset(&["0", "1", "2"], |i, j| i >= j)?);
    let c = cat.clone();
    MonoidalCategory::strict(
        cat,
        |a, b| Obj((a.ix() + b.ix()).min(2) as u32),
        move |u, v| {
            let s = (c.src(u).ix() + c.src(v).ix()).min(2);
            let t = (c.tgt(u).ix() + c.tgt(v).ix()).min(2);
            poset_arrow(&c, s, t)
        },
        Obj(0),
    )
}

/// Delay comonad graded by truncated naturals on the walking arrow:
/// `D_0 = id`, `D_n` constant at the bottom for `n >= 1`.
pub fn graded_delay() -> Result<Contextad> {
    let c = Arc::new(FinCategory::walking_arrow());
    let grades = truncated_nat_grades()?;
    let apply = |x: usize, n: usize| if n == 0 { x } else { 0 };
    let gc = grades.cat.clone();
    let apply_obj: Vec<Vec<Obj>> =
        c.objects().map(|x| gc.objects().map(|n| Obj(apply(x.ix(), n.ix()) as u32)).collect()).collect();
    let mut apply_mor = HashMap::new();
    for f in c.morphisms() {
        for u in gc.morphisms() {
            let s = apply(c.src(f).ix(), gc.src(u).ix());
            let t = apply(c.tgt(f).ix(), gc.tgt(u).ix());
            apply_mor.insert((f, u), poset_arrow(&c, s, t));
        }
    }
    let counit = c.objects().map(|x| c.id(x)).collect();
    let mut comult = HashMap::new();
    for m in gc.objects() {
        for n in gc.objects() {
            for x in c.objects() {
                let s = apply(x.ix(), (m.ix() + n.ix()).min(2));
                let t = apply(apply(x.ix(), n.ix()), m.ix());
                comult.insert((m, n, x), poset_arrow(&c, s, t));
            }
        }
    }
    from_graded_comonad(&GradedComonad { base: c, grades, apply_obj, apply_mor, counit, comult })
}

/// The square poset with every map displayed and meets as pullbacks.
pub fn display_poset_maps() -> DisplayMaps {
    let c = square_poset();
    let mut pullbacks = HashMap::new();
    for f in c.morphisms() {
        for d in c.incoming(c.tgt(f)).iter().copied() {
            let (a, x) = (c.src(f).ix(), c.src(d).ix());
            let y = square_meet(a, x);
            pullbacks.insert((f, d), (poset_arrow(&c, y, a), poset_arrow(&c, y, x)));
        }
    }
    DisplayMaps { display: c.morphisms().collect(), cat: c, pullbacks }
}

pub fn display_poset() -> Result<Contextad> {
    from_display_maps(&display_poset_maps())
}

/// Finite sets of size at most two with monomorphisms displayed; the chosen
/// pullback of a mono `d` along `f` is the preimage of its image, listed in
/// increasing order.
pub fn partial_map_display() -> DisplayMaps {
    let c = finset(&[0, 1, 2]);
    let monos: HashSet<Mor> = c
        .morphisms()
        .filter(|&m| {
            let t = table(&c, m);
            t.iter().collect::<HashSet<_>>().len() == t.len()
        })
        .collect();
    let mut pullbacks = HashMap::new();
    for &d in &monos {
        let dt = table(&c, d);
        for f in c.incoming(c.tgt(d)).iter().copied() {
            let ft = table(&c, f);
            let pre: Vec<usize> = (0..ft.len()).filter(|&x| dt.contains(&ft[x])).collect();
            let y = object_of_size(&c, pre.len()).expect("preimage fits");
            let top: Vec<usize> = pre.iter().map(|&x| dt.iter().position(|&v| v == ft[x]).expect("in image")).collect();
            let a = function(&c, y, c.src(f), &pre);
            let x = function(&c, y, c.src(d), &top);
            pullbacks.insert((f, d), (a, x));
        }
    }
    DisplayMaps { cat: c, display: monos, pullbacks }
}

pub fn partial_maps() -> Result<Contextad> {
    from_display_maps(&partial_map_display())
}

/// Decorations by `{0, 1, 2}` under saturating addition: grades over a finite
/// set `I` are functions `s: I -> {0,1,2}`, ordered pointwise, reindexed by
/// precomposition. `⊙` is the projection and `⊗` adds pointwise. The base
/// has the sets of size one and two with the two inclusions between them.
pub fn decoration_data() -> Result<Decoration> {
    let base = finset_where(&[1, 2], |t| t.len() == 1);
    let v = 3usize;
    let mut b = CatBuilder::new();
    let mut grade_of: HashMap<(Obj, Vec<usize>), Obj> = HashMap::new();
    let mut grades: Vec<(Obj, Vec<usize>)> = Vec::new();
    for i in base.objects() {
        let n = size_of(&base, i);
        for s in all_functions(n, v) {
            let name = format!("{}:{}", n, digits(&s));
            let o = b.object(name)?;
            grade_of.insert((i, s.clone()), o);
            grades.push((i, s));
        }
    }
    let mut arrows: HashMap<(Mor, Obj, Obj), Mor> = HashMap::new();
    let mut over: Vec<Mor> = Vec::new();
    for (si, (i, s)) in grades.iter().enumerate() {
        for (ti, (j, t)) in grades.iter().enumerate() {
            for f in base.hom(*i, *j) {
                let ft = table(&base, f);
                if (0..s.len()).all(|k| s[k] <= t[ft[k]]) {
                    let name = format!("{}[{}>{}]", base.mor_name(f), digits(s), digits(t));
                    let (so, to) = (Obj(si as u32), Obj(ti as u32));
                    let m = b.morphism(name, so, to)?;
                    if base.is_identity(f) && si == ti {
                        b.set_identity(so, m);
                    }
                    arrows.insert((f, so, to), m);
                    over.push(f);
                }
            }
        }
    }
    let ends: Vec<(Obj, Obj)> = (0..b.num_morphisms()).map(|k| (b.src(Mor(k as u32)), b.tgt(Mor(k as u32)))).collect();
    let m = Arc::new(b.finish(|g, f| {
        let h = base.compose(over[g.ix()], over[f.ix()])?;
        arrows.get(&(h, ends[f.ix()].0, ends[g.ix()].1)).copied()
    })?);
    let p = FinFunctor::tabulate(m.clone(), base.clone(), |o| grades[o.ix()].0, |u| over[u.ix()]);
    let fib = ClovenFibration::from_fn(p, |f, e| {
        let t = &grades[e.ix()].1;
        let ft = table(&base, f);
        let s: Vec<usize> = ft.iter().map(|&k| t[k]).collect();
        arrows[&(f, grade_of[&(base.src(f), s)], e)]
    });
    let unit = FinFunctor::tabulate(
        base.clone(),
        m.clone(),
        |i| grade_of[&(i, vec![0; size_of(&base, i)])],
        |f| {
            let (i, j) = (base.src(f), base.tgt(f));
            arrows[&(f, grade_of[&(i, vec![0; size_of(&base, i)])], grade_of[&(j, vec![0; size_of(&base, j)])])]
        },
    );
    let (pc, pi1, pi2) = Decoration::pair_category(&fib)?;
    let add = |s: &[usize], t: &[usize]| -> Vec<usize> { s.iter().zip(t).map(|(a, b)| (a + b).min(v - 1)).collect() };
    let sum = |o: Obj| {
        let (x, y) = (pi1.obj(o), pi2.obj(o));
        let (i, s) = &grades[x.ix()];
        grade_of[&(*i, add(s, &grades[y.ix()].1))]
    };
    let tensor = FinFunctor::tabulate(pc.clone(), m.clone(), sum, |u| {
        arrows[&(over[pi1.mor(u).ix()], sum(pc.src(u)), sum(pc.tgt(u)))]
    });
    let ids: Vec<Mor> = m.objects().map(|e| m.id(e)).collect();
    let pairs = PairIndex::new(&pi1, &pi2);
    let mut assoc = HashMap::new();
    for x in m.objects() {
        for y in m.objects().filter(|&y| grades[y.ix()].0 == grades[x.ix()].0) {
            for z in m.objects().filter(|&z| grades[z.ix()].0 == grades[x.ix()].0) {
                let yz = tensor.obj(pairs.obj(y, z).expect("pair"));
                assoc.insert((x, y, z), m.id(tensor.obj(pairs.obj(x, yz).expect("pair"))));
            }
        }
    }
    Ok(Decoration { fib, unit, tensor, lam: ids.clone(), rho: ids, assoc })
}

fn digits(s: &[usize]) -> String {
    s.iter().map(|v| v.to_string()).collect()
}

pub fn decoration() -> Result<Contextad> {
    from_decoration_fibration(&decoration_data()?)
}

/// A named instance with a one-line description and its builder.
pub type GalleryEntry<T> = (&'static str, &'static str, fn() -> Result<T>);

/// Every shipped contextad with a short description.
pub fn contextad_gallery() -> Vec<GalleryEntry<Contextad>> {
    vec![
        ("identity-comonad", "identity comonad on the square poset", identity_comonad_square),
        ("environment-comonad", "environment comonad x ↦ x∧a on the square poset", environment_comonad),
        ("z2-actegory", "Z/2 acting on a two-object groupoid by swapping", z2_actegory),
        ("idempotent-self-action", "the monoid {1,a}, a·a = a, acting on its delooping", idempotent_self_action),
        ("skewed-unit-actegory", "actegory whose monoidal unitors are non-identity isos", skewed_unit_actegory),
        ("graded-delay", "delay comonad graded by {0,1,2} with saturating +", graded_delay),
        ("display-poset", "display maps of the square poset, pullbacks are meets", display_poset),
        ("partial-maps", "partial maps (dominion): monic display maps in finite sets of size ≤ 2", partial_maps),
        ("decoration", "Fam({0,1,2}, ≤, +sat) decorations over the inclusions 1 -> 2", decoration),
    ]
}

/// The cyclic group `Z/3` acting on its own delooping by multiplication.
pub fn z3_self_action() -> Result<Contextad> {
    let mult = |x: usize, y: usize| (x + y) % 3;
    let names = ["0", "1", "2"];
    let c = Arc::new(FinCategory::delooping("*", &names, 0, mult)?);
    let g = MonoidalCategory::commutative_delooping("*", &names, 0, mult)?;
    let a = Actegory::strict(c, g, |o, _| o, move |f, u| Mor(mult(f.ix(), u.ix()) as u32))?;
    from_actegory(&a)
}

/// `Z/2` acting on the groupoid `{x ≅ y} × BZ/2` through the second factor.
pub fn z2_groupoid_action() -> Result<Contextad> {
    let iso = Arc::new(FinCategory::poset(&["x", "y"], |_, _| true)?);
    let bz2 = Arc::new(FinCategory::delooping("*", &["0", "1"], 0, |a, b| (a + b) % 2)?);
    let (c, p1, p2) = FinCategory::product(&iso, &bz2)?;
    let index = PairIndex::new(&p1, &p2);
    let g = MonoidalCategory::commutative_delooping("*", &["0", "1"], 0, |a, b| (a + b) % 2)?;
    let a = Actegory::strict(
        c,
        g,
        |o, _| o,
        move |f, u| index.mor(p1.mor(f), Mor(((p2.mor(f).ix() + u.ix()) % 2) as u32)).expect("product arrow"),
    )?;
    from_actegory(&a)
}

/// `BZ/2` acting trivially on the terminal category; every law lives in the
/// grades.
pub fn z2_trivial_action() -> Result<Contextad> {
    let g = MonoidalCategory::commutative_delooping("*", &["0", "1"], 0, |a, b| (a + b) % 2)?;
    let c = Arc::new(FinCategory::terminal());
    let a = Actegory::strict(c, g, |o, _| o, |f, _| f)?;
    from_actegory(&a)
}

/// A contextad with one structure cell swapped for a parallel arrow, chosen
/// so that exactly one coherence law breaks.
pub struct Mutant {
    pub name: &'static str,
    pub breaks: Law,
    pub contextad: Contextad,
}

/// One mutant per coherence law.
pub fn mutants() -> Result<Vec<Mutant>> {
    let z3 = z3_self_action()?;
    let triv = z2_trivial_action()?;
    let cell = |x: &Contextad, name: &str| x.total().mor(name).expect("mutation target");
    let only = |x: &Contextad| {
        assert_eq!(x.total().num_objects(), 1, "single grade");
        Obj(0)
    };

    let mut lam = z3.clone();
    lam.lam[only(&z3).ix()] = cell(&z3, "(0|1)");
    let mut rho = z3.clone();
    rho.rho[only(&z3).ix()] = cell(&z3, "(0|1)");
    let mut assoc = z3.clone();
    let g = only(&z3);
    assoc.assoc.insert((g, g, g), cell(&z3, "(0|1)"));
    let mut ku = z3.clone();
    ku.kappa_unit[z3.base().id(Obj(0)).ix()] = cell(&z3, "(0|1)");
    let mut kt = z3.clone();
    let one = z3.base().mor("1").expect("generator");
    kt.kappa_tensor.insert((one, Obj(0)), cell(&z3, "(0|1)"));

    let flip = cell(&triv, "(id_*|1)");
    let t = only(&triv);
    let mut unit = triv.clone();
    unit.lam[t.ix()] = flip;
    let mut pentagon = triv.clone();
    pentagon.lam[t.ix()] = flip;
    pentagon.assoc.insert((t, t, t), flip);

    let out = vec![
        Mutant { name: "z3-twisted-lambda", breaks: Law::CtxLambdaTriangle, contextad: lam },
        Mutant { name: "z3-twisted-rho", breaks: Law::CtxRightUnit, contextad: rho },
        Mutant { name: "z3-twisted-alpha", breaks: Law::CtxAssociativity, contextad: assoc },
        Mutant { name: "z3-twisted-kappa-unit", breaks: Law::CtxKappaUnit, contextad: ku },
        Mutant { name: "z3-twisted-kappa-tensor", breaks: Law::CtxKappaTensor, contextad: kt },
        Mutant { name: "trivial-twisted-lambda", breaks: Law::CtxUnitCoherence, contextad: unit },
        Mutant { name: "trivial-twisted-lambda-alpha", breaks: Law::CtxPentagonCoherence, contextad: pentagon },
    ];
    for m in &out {
        m.contextad.validate()?;
    }
    Ok(out)
}

/// A contextad together with monoidal structure on its contexts and grades.
pub struct MonoidalFixture {
    pub name: &'static str,
    pub contextad: Contextad,
    pub data: MonoidalContextadData,
}

fn unique_arrow(c: &FinCategory, a: Obj, b: Obj) -> Result<Mor> {
    let mut hom = c.hom(a, b);
    match (hom.next(), hom.next()) {
        (Some(f), None) => Ok(f),
        _ => Err(Error::ill_typed("colaxity cell", format!("no unique arrow {} -> {}", c.obj_name(a), c.obj_name(b)))),
    }
}

/// Colaxity cells for a contextad whose categories are thin: each cell is the
/// unique arrow of its type.
fn thin_colax_data(x: &Contextad, base: MonoidalCategory, grades: MonoidalCategory) -> Result<MonoidalContextadData> {
    let (c, m) = (x.base(), x.total());
    let (bc, gm) = (&base, &grades);
    let mut act_tensor = HashMap::new();
    for p in m.objects() {
        for r in m.objects() {
            let cell = unique_arrow(c, x.extend(gm.ten(p, r)), bc.ten(x.extend(p), x.extend(r)))?;
            act_tensor.insert((p, r), cell);
        }
    }
    let act_unit = unique_arrow(c, x.extend(gm.unit), bc.unit)?;
    let unit_unit = unique_arrow(m, x.unit.obj(bc.unit), gm.unit)?;
    let mut unit_tensor = HashMap::new();
    for a in c.objects() {
        for b in c.objects() {
            let cell = unique_arrow(m, x.unit.obj(bc.ten(a, b)), gm.ten(x.unit.obj(a), x.unit.obj(b)))?;
            unit_tensor.insert((a, b), cell);
        }
    }
    let missing = || Error::ill_typed("colaxity cell", "tensor undefined".to_string());
    let src0 = x.ten(gm.unit, x.star(act_unit, gm.unit)).ok_or_else(missing)?;
    let tensor_unit = unique_arrow(m, src0, gm.unit)?;
    let by_ctx = x.objects_by_ctx();
    let mut tensor_tensor = HashMap::new();
    for p in m.objects() {
        for r in m.objects() {
            for &q in &by_ctx[x.extend(p).ix()] {
                for &s in &by_ctx[x.extend(r).ix()] {
                    let src = x.ten(gm.ten(p, r), x.star(act_tensor[&(p, r)], gm.ten(q, s))).ok_or_else(missing)?;
                    let (pq, rs) = x.ten(p, q).zip(x.ten(r, s)).ok_or_else(missing)?;
                    tensor_tensor.insert((p, q, r, s), unique_arrow(m, src, gm.ten(pq, rs))?);
                }
            }
        }
    }
    Ok(MonoidalContextadData { base, grades, act_unit, act_tensor, unit_unit, unit_tensor, tensor_unit, tensor_tensor })
}

/// `Z/2` acting on the discrete category `{0, 1}` by addition, with contexts
/// and grades summed componentwise. Every colaxity is an identity.
pub fn z2_symmetric_self_action() -> Result<MonoidalFixture> {
    let c = Arc::new(FinCategory::discrete(&["0", "1"]));
    let g = MonoidalCategory::discrete_monoid(&["0", "1"], 0, |a, b| (a + b) % 2)?;
    let add = |a: Obj, b: Obj| Obj((a.0 + b.0) % 2);
    let (c1, g1) = (c.clone(), g.cat.clone());
    let a = Actegory::strict(c.clone(), g, add, move |f, u| c1.id(add(c1.src(f), g1.src(u))))?;
    let x = from_actegory(&a)?;
    let c2 = c.clone();
    let base = MonoidalCategory::strict(c.clone(), add, move |u, v| c2.id(add(c2.src(u), c2.src(v))), Obj(0))?;
    let (ga, gb) = (a.clone(), a.clone());
    let sum = move |p: Obj, r: Obj| {
        let (pb, pg) = (&ga.proj_base, &ga.proj_grade);
        ga.grade(add(pb.obj(p), pb.obj(r)), add(pg.obj(p), pg.obj(r)))
    };
    let sum2 = sum.clone();
    let grades = MonoidalCategory::strict(
        a.total.clone(),
        sum,
        move |u, v| gb.total.id(sum2(gb.total.src(u), gb.total.src(v))),
        a.grade(Obj(0), Obj(0)),
    )?;
    let data = thin_colax_data(&x, base, grades)?;
    Ok(MonoidalFixture { name: "z2-symmetric-self-action", contextad: x, data })
}

/// Grades `0 <= 1` under `max` acting trivially on the terminal category,
/// with `min` as the monoidal product of grades. The unit colaxity
/// `I_1 = 0 -> 1` is not invertible.
pub fn lattice_colax() -> Result<MonoidalFixture> {
    let gc = Arc::new(FinCategory::poset(&["0", "1"], |i, j| i <= j)?);
    let ends = {
        let gc = gc.clone();
        move |u: Mor| (gc.src(u).ix(), gc.tgt(u).ix())
    };
    let (g1, e1) = (gc.clone(), ends.clone());
    let g = MonoidalCategory::strict(
        gc.clone(),
        |a, b| a.max(b),
        move |u, v| {
            let ((s1, t1), (s2, t2)) = (e1(u), e1(v));
            poset_arrow(&g1, s1.max(s2), t1.max(t2))
        },
        Obj(0),
    )?;
    let c = Arc::new(FinCategory::terminal());
    let a = Actegory::strict(c.clone(), g, |o, _| o, |f, _| f)?;
    let x = from_actegory(&a)?;
    let c1 = c.clone();
    let base = MonoidalCategory::strict(c.clone(), |o, _| o, move |_, _| c1.id(Obj(0)), Obj(0))?;
    let (ga, gb) = (a.clone(), a.clone());
    let grades = MonoidalCategory::strict(
        a.total.clone(),
        move |p, r| ga.grade(Obj(0), ga.proj_grade.obj(p).min(ga.proj_grade.obj(r))),
        move |u, v| {
            let (pg, total) = (&gb.proj_grade, &gb.total);
            let s = pg.obj(total.src(u)).min(pg.obj(total.src(v)));
            let t = pg.obj(total.tgt(u)).min(pg.obj(total.tgt(v)));
            gb.grade_mor(gb.base.id(Obj(0)), poset_arrow(&gb.grades.cat, s.ix(), t.ix()))
        },
        a.grade(Obj(0), Obj(1)),
    )?;
    let data = thin_colax_data(&x, base, grades)?;
    Ok(MonoidalFixture { name: "lattice-colax", contextad: x, data })
}

/// The identity comonad on the terminal category with the terminal monoidal
/// structure on both sides.
pub fn terminal_monoidal() -> Result<MonoidalFixture> {
    let x = identity_comonad(Arc::new(FinCategory::terminal()))?;
    let trivial = |cat: &Arc<FinCategory>| {
        let c = cat.clone();
        MonoidalCategory::strict(cat.clone(), |o, _| o, move |_, _| c.id(Obj(0)), Obj(0))
    };
    let (base, grades) = (trivial(x.base())?, trivial(x.total())?);
    let data = thin_colax_data(&x, base, grades)?;
    Ok(MonoidalFixture { name: "terminal-monoidal", contextad: x, data })
}

pub fn monoidal_fixtures() -> Result<Vec<MonoidalFixture>> {
    Ok(vec![z2_symmetric_self_action()?, lattice_colax()?, terminal_monoidal()?])
}

// ---- contentads ----

pub fn identity_monad_square() -> Result<Contentad> {
    identity_monad(square_poset())
}

/// The closure operator `x ↦ max(x, 1)` on the chain `0 <= 1 <= 2` as a
/// monad `(T, η, μ)`.
pub fn closure_monad_data() -> Result<(FinFunctor, NatTrans, NatTrans)> {
    let c = Arc::new(FinCategory::poset(&["0", "1", "2"], |i, j| i <= j)?);
    let close = |i: usize| i.max(1);
    let t = FinFunctor::tabulate(
        c.clone(),
        c.clone(),
        |o| Obj(close(o.ix()) as u32),
        |f| poset_arrow(&c, close(c.src(f).ix()), close(c.tgt(f).ix())),
    );
    let eta =
        NatTrans::tabulate(FinFunctor::identity(c.clone()), t.clone(), |o| poset_arrow(&c, o.ix(), close(o.ix())))?;
    let mu = NatTrans::tabulate(t.then(&t)?, t.clone(), |o| c.id(t.obj(o)))?;
    Ok((t, eta, mu))
}

pub fn closure_monad() -> Result<Contentad> {
    let (t, eta, mu) = closure_monad_data()?;
    from_monad(&t, &eta, &mu)
}

/// The identity functor on `BZ/2` with the non-identity element as `μ`,
/// which breaks both unit laws.
pub fn broken_monad_data() -> Result<(FinFunctor, NatTrans, NatTrans)> {
    let c = Arc::new(FinCategory::delooping("*", &["0", "1"], 0, |a, b| (a + b) % 2)?);
    let t = FinFunctor::identity(c.clone());
    let eta = NatTrans::identity(t.clone());
    let mu = NatTrans::tabulate(t.then(&t)?, t.clone(), |_| Mor(1))?;
    Ok((t, eta, mu))
}

/// `Z/2` acting on the left of the two-object codiscrete groupoid by
/// swapping.
pub fn z2_left_swap_actegory() -> Result<LeftActegory> {
    let c = Arc::new(FinCategory::poset(&["x", "y"], |_, _| true)?);
    let g = MonoidalCategory::discrete_monoid(&["0", "1"], 0, |a, b| (a + b) % 2)?;
    let gc = g.cat.clone();
    let swap = move |m: Obj, o: Obj| {
        if gc.obj_name(m) == "1" {
            Obj(1 - o.0)
        } else {
            o
        }
    };
    let (c2, gc2) = (c.clone(), g.cat.clone());
    LeftActegory::strict(c.clone(), g, swap.clone(), move |u, f| {
        let m = gc2.src(u);
        poset_arrow(&c2, swap(m, c2.src(f)).ix(), swap(m, c2.tgt(f)).ix())
    })
}

pub fn z2_left_actegory() -> Result<Contentad> {
    from_left_actegory(&z2_left_swap_actegory()?)
}

/// Every shipped contentad with a short description.
pub fn contentad_gallery() -> Vec<GalleryEntry<Contentad>> {
    vec![
        ("identity-monad", "identity monad on the square poset", identity_monad_square),
        ("closure-monad", "closure operator x ↦ max(x, 1) on the chain 0 <= 1 <= 2", closure_monad),
        ("z2-left-actegory", "Z/2 acting on the left of a two-object groupoid by swapping", z2_left_actegory),
    ]
}
