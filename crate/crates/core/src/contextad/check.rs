use std::time::Instant;

use super::Contextad;
use crate::fibration::check_cartesian;
use crate::fincat::{check_category, check_functor, check_nat_trans, Mor, Obj};
use crate::report::{Law, Report, Result, Tally};
use crate::witness;

/// Full law suite. Structural problems come back as `Err`; law failures are
/// recorded in the report.
pub fn check_contextad(x: &Contextad) -> Result<Report> {
    let start = Instant::now();
    x.validate()?;
    let mut report = Report::new("contextad");
    let (c, m) = (x.base(), x.total());

    let cats = [check_category(c), check_category(m), check_category(x.pair_cat())];
    let broken_tables = cats.iter().any(|r| !r.holds(Law::CatCompositeTyping) || !r.holds(Law::CatIdentityTyping));
    for (name, r) in ["C", "M", "M⋉M"].into_iter().zip(cats) {
        report.extend(tagged(r, "category", name));
    }
    if broken_tables {
        return Ok(report.timed(start));
    }
    for (name, f) in [("p", &x.p.p), ("act", &x.act), ("unit", &x.unit), ("tensor", &x.tensor)] {
        report.extend(tagged(check_functor(f), "functor", name));
    }
    let mut cart = check_cartesian(&x.p);
    cart.results.retain(|r| r.law != Law::LiftTyping);
    report.extend(cart);

    report.push(naturality(x, true));
    report.push(naturality(x, false));
    report.tally(lambda_natural(x));
    report.tally(rho_natural(x));
    report.tally(alpha_natural(x));
    report.tally(kappa_unit(x));
    report.tally(kappa_tensor(x));
    report.tally(structure_iso(x));
    report.tally(lambda_triangle(x));
    report.tally(right_unit(x));
    report.tally(associativity(x));
    report.tally(unit_coherence(x));
    report.tally(pentagon_coherence(x));
    Ok(report.timed(start))
}

fn tagged(mut r: Report, key: &str, name: &str) -> Report {
    for res in &mut r.results {
        if let Some(w) = res.witness.take() {
            res.witness = Some(witness! {key => name}.with_all(w));
        }
    }
    r
}

fn naturality(x: &Contextad, epsilon: bool) -> crate::report::LawResult {
    let (t, law) = if epsilon { (&x.epsilon, Law::CtxEpsilonNatural) } else { (&x.delta, Law::CtxDeltaNatural) };
    let r = check_nat_trans(t);
    let mut res = r.get(Law::Naturality).cloned().expect("naturality result");
    res.law = law;
    res
}

/// `Λ(u) ∘ λ_P = λ_P' ∘ u` with `Λ(u) = I(h) ⊗ ε*u`.
fn lambda_natural(x: &Contextad) -> Tally {
    let (m, c) = (x.total(), x.base());
    let mut t = Tally::new(Law::CtxLambdaNatural);
    for u in m.morphisms() {
        let (p, p2) = (m.src(u), m.tgt(u));
        let h = x.p.p.mor(u);
        let (a, a2) = (c.src(h), c.tgt(h));
        let Some(eu) = x.p.reindex(x.eps(a), p, x.eps(a2), u, x.act.mor(x.unit.mor(h))) else {
            continue;
        };
        let Some(big) = x.ten_mor(x.unit.mor(h), eu) else {
            continue;
        };
        let lhs = m.compose_all(&[big, x.lam_at(p)]);
        let rhs = m.compose_all(&[x.lam_at(p2), u]);
        t.record(lhs.is_some() && lhs == rhs, || witness! {"u" => m.describe(u)});
    }
    t
}

/// `u ∘ ρ_P = ρ_P' ∘ (u ⊗ I(A⊙u))`.
fn rho_natural(x: &Contextad) -> Tally {
    let m = x.total();
    let mut t = Tally::new(Law::CtxRhoNatural);
    for u in m.morphisms() {
        let Some(big) = x.ten_mor(u, x.unit.mor(x.act.mor(u))) else {
            continue;
        };
        let lhs = m.compose_all(&[u, x.rho_at(m.src(u))]);
        let rhs = m.compose_all(&[x.rho_at(m.tgt(u)), big]);
        t.record(lhs.is_some() && lhs == rhs, || witness! {"u" => m.describe(u)});
    }
    t
}

/// `α' ∘ (u ⊗ (v ⊗ w)) = ((u ⊗ v) ⊗ δ*w) ∘ α` over every triple of morphisms.
fn alpha_natural(x: &Contextad) -> Tally {
    let m = x.total();
    let over = x.morphisms_over();
    let mut t = Tally::new(Law::CtxAlphaNatural);
    for u in m.morphisms() {
        for &v in &over[x.act.mor(u).ix()] {
            let Some(uv) = x.ten_mor(u, v) else { continue };
            for &w in &over[x.act.mor(v).ix()] {
                let (p, q, r) = (m.src(u), m.src(v), m.src(w));
                let (p2, q2, r2) = (m.tgt(u), m.tgt(v), m.tgt(w));
                let (Some(a), Some(a2)) = (x.assoc_at(p, q, r), x.assoc_at(p2, q2, r2)) else {
                    continue;
                };
                let (Some(d), Some(d2)) = (x.del(p, q), x.del(p2, q2)) else {
                    continue;
                };
                let Some(dw) = x.p.reindex(d, r, d2, w, x.act.mor(uv)) else {
                    continue;
                };
                let Some(vw) = x.ten_mor(v, w) else { continue };
                let (Some(left), Some(right)) = (x.ten_mor(u, vw), x.ten_mor(uv, dw)) else {
                    continue;
                };
                let lhs = m.compose_all(&[a2, left]);
                let rhs = m.compose_all(&[right, a]);
                t.record(lhs.is_some() && lhs == rhs, || {
                    witness! {"u" => m.mor_name(u), "v" => m.mor_name(v), "w" => m.mor_name(w)}
                });
            }
        }
    }
    t
}

/// `lift(f, I_A') ∘ κ^I_f = I(f)`.
fn kappa_unit(x: &Contextad) -> Tally {
    let (c, m) = (x.base(), x.total());
    let mut t = Tally::new(Law::CtxKappaUnit);
    for f in c.morphisms() {
        let ell = x.lift(f, x.unit.obj(c.tgt(f)));
        let lhs = m.compose(ell, x.kappa_unit[f.ix()]);
        t.record(lhs == Some(x.unit.mor(f)), || witness! {"f" => c.describe(f)});
    }
    t
}

/// `lift(f, P⊗Q) ∘ κ^⊗ = lift(f, P) ⊗ lift(f⊙P, Q)`.
fn kappa_tensor(x: &Contextad) -> Tally {
    let (c, m) = (x.base(), x.total());
    let mut t = Tally::new(Law::CtxKappaTensor);
    let mut keys: Vec<(Mor, Obj)> = x.kappa_tensor.keys().copied().collect();
    keys.sort();
    for (f, pq) in keys {
        let (p, q) = (x.pi1().obj(pq), x.pi2().obj(pq));
        let l1 = x.lift(f, p);
        let Some(rhs) = x.ten_mor(l1, x.lift(x.act.mor(l1), q)) else {
            continue;
        };
        let lhs = m.compose(x.lift(f, x.tensor.obj(pq)), x.kappa_tensor[&(f, pq)]);
        t.record(lhs == Some(rhs), || {
            witness! {"f" => c.mor_name(f), "P" => m.obj_name(p), "Q" => m.obj_name(q)}
        });
    }
    t
}

fn structure_iso(x: &Contextad) -> Tally {
    let (c, m) = (x.base(), x.total());
    let mut t = Tally::new(Law::CtxStructureIso);
    for p in m.objects() {
        t.record(m.is_iso(x.lam_at(p)), || witness! {"cell" => "λ", "P" => m.obj_name(p)});
        t.record(m.is_iso(x.rho_at(p)), || witness! {"cell" => "ρ", "P" => m.obj_name(p)});
    }
    for (p, q, r) in x.triples() {
        if let Some(a) = x.assoc_at(p, q, r) {
            t.record(m.is_iso(a), || {
                witness! {"cell" => "α", "P" => m.obj_name(p), "Q" => m.obj_name(q), "R" => m.obj_name(r)}
            });
        }
    }
    for f in c.morphisms() {
        t.record(m.is_iso(x.kappa_unit[f.ix()]), || witness! {"cell" => "κ^I", "f" => c.mor_name(f)});
    }
    let mut keys: Vec<(Mor, Obj)> = x.kappa_tensor.keys().copied().collect();
    keys.sort();
    for (f, pq) in keys {
        t.record(m.is_iso(x.kappa_tensor[&(f, pq)]), || {
            witness! {"cell" => "κ^⊗", "f" => c.mor_name(f), "pair" => x.pair_cat().obj_name(pq)}
        });
    }
    t
}

/// `(ε⊙P) ∘ δ_{I_A, ε*P} ∘ (A⊙λ_P) = id_{A⊙P}`.
fn lambda_triangle(x: &Contextad) -> Tally {
    let m = x.total();
    let mut t = Tally::new(Law::CtxLambdaTriangle);
    for p in m.objects() {
        let Some(ok) = triangle_at(x, p) else {
            continue;
        };
        t.record(ok, || witness! {"P" => m.obj_name(p)});
    }
    t
}

fn triangle_at(x: &Contextad, p: Obj) -> Option<bool> {
    let c = x.base();
    let a = x.ctx(p);
    let e = x.eps(a);
    let d = x.del(x.unit.obj(a), x.star(e, p))?;
    let lhs = c.compose_all(&[x.act_lift(e, p), d, x.act.mor(x.lam_at(p))]);
    Some(lhs == Some(c.id(x.extend(p))))
}

/// `ε_{A⊙P} ∘ δ_{P, I} = A⊙ρ_P`.
fn right_unit(x: &Contextad) -> Tally {
    let (c, m) = (x.base(), x.total());
    let mut t = Tally::new(Law::CtxRightUnit);
    for p in m.objects() {
        let ap = x.extend(p);
        let Some(d) = x.del(p, x.unit.obj(ap)) else {
            continue;
        };
        let lhs = c.compose(x.eps(ap), d);
        t.record(lhs == Some(x.act.mor(x.rho_at(p))), || witness! {"P" => m.obj_name(p)});
    }
    t
}

/// `δ_{Q,R} ∘ δ_{P,Q⊗R} = (δ_{P,Q}⊙R) ∘ δ_{P⊗Q, δ*R} ∘ (A⊙α)`.
fn associativity(x: &Contextad) -> Tally {
    let m = x.total();
    let mut t = Tally::new(Law::CtxAssociativity);
    for (p, q, r) in x.triples() {
        let Some(lhs) = assoc_lhs(x, p, q, r) else {
            continue;
        };
        let rhs = assoc_rhs(x, p, q, r);
        t.record(rhs == Some(lhs), || {
            witness! {"P" => m.obj_name(p), "Q" => m.obj_name(q), "R" => m.obj_name(r)}
        });
    }
    t
}

fn assoc_lhs(x: &Contextad, p: Obj, q: Obj, r: Obj) -> Option<Mor> {
    let qr = x.ten(q, r)?;
    x.base().compose_all(&[x.del(q, r)?, x.del(p, qr)?])
}

fn assoc_rhs(x: &Contextad, p: Obj, q: Obj, r: Obj) -> Option<Mor> {
    let d = x.del(p, q)?;
    let pq = x.ten(p, q)?;
    let d2 = x.del(pq, x.star(d, r))?;
    x.base().compose_all(&[x.act_lift(d, r), d2, x.act.mor(x.assoc_at(p, q, r)?)])
}

/// `(ρ_P ⊗ lift(A⊙ρ_P, Q)) ∘ (1 ⊗ c) ∘ α_{P,I,ε*Q} ∘ (1_P ⊗ λ_Q) = 1_{P⊗Q}`,
/// where `c: δ*ε*Q -> (A⊙ρ_P)*Q` compares the two lifts over `ε∘δ = A⊙ρ`.
fn unit_coherence(x: &Contextad) -> Tally {
    let m = x.total();
    let mut t = Tally::new(Law::CtxUnitCoherence);
    for (p, q) in x.pair_list() {
        if !unit_prerequisites(x, p, q) {
            continue;
        }
        let Some(lhs) = unit_coherence_at(x, p, q) else {
            continue;
        };
        let id = x.ten(p, q).map(|pq| m.id(pq));
        t.record(Some(lhs) == id, || witness! {"P" => m.obj_name(p), "Q" => m.obj_name(q)});
    }
    t
}

/// The diagram at `(P, Q)` is only evaluated where the base laws it rests on
/// hold: the right unit law at `P`, the triangle at `Q` and associativity at
/// `(P, I, ε*Q)`. Otherwise the failure is already reported at its root.
fn unit_prerequisites(x: &Contextad, p: Obj, q: Obj) -> bool {
    let i = x.unit.obj(x.extend(p));
    let eq = x.star(x.eps(x.extend(p)), q);
    let assoc = assoc_lhs(x, p, i, eq).is_some_and(|l| assoc_rhs(x, p, i, eq) == Some(l));
    assoc && triangle_at(x, q) == Some(true)
}

fn unit_coherence_at(x: &Contextad, p: Obj, q: Obj) -> Option<Mor> {
    let (c, m) = (x.base(), x.total());
    let ap = x.extend(p);
    let (i, e) = (x.unit.obj(ap), x.eps(ap));
    let rho = x.rho_at(p);
    let arho = x.act.mor(rho);
    let eq = x.star(e, q);
    let d = x.del(p, i)?;
    let composite = m.compose(x.lift(e, q), x.lift(d, eq))?;
    let cmp = x.p.factor_through(x.lift(arho, q), composite, c.id(c.src(d)))?;
    let pi = x.ten(p, i)?;
    let first = x.ten_mor(m.id(p), x.lam_at(q))?;
    let second = x.assoc_at(p, i, eq)?;
    let third = x.ten_mor(m.id(pi), cmp)?;
    let fourth = x.ten_mor(rho, x.lift(arho, q))?;
    m.compose_all(&[fourth, third, second, first])
}

/// Pentagon relating `α` and `κ^⊗`:
///
/// ```text
/// (α_{PQR} ⊗ lift(A⊙α, X)) ∘ (1 ⊗ c) ∘ α_{P,Q⊗R,δ*S} ∘ (1_P ⊗ α_{QRS})
///   = α_{P⊗Q, δ*R, (δ⊙R)*S} ∘ (1 ⊗ (κ^⊗)⁻¹) ∘ α_{P,Q,R⊗S}
/// ```
fn pentagon_coherence(x: &Contextad) -> Tally {
    let m = x.total();
    let by_ctx = x.objects_by_ctx();
    let mut t = Tally::new(Law::CtxPentagonCoherence);
    for (p, q, r) in x.triples() {
        for &s in &by_ctx[x.extend(r).ix()] {
            let (Some(lhs), Some(rhs)) = (pentagon_lhs(x, p, q, r, s), pentagon_rhs(x, p, q, r, s)) else {
                continue;
            };
            t.record(lhs == rhs, || {
                witness! {"P" => m.obj_name(p), "Q" => m.obj_name(q), "R" => m.obj_name(r), "S" => m.obj_name(s)}
            });
        }
    }
    t
}

fn pentagon_lhs(x: &Contextad, p: Obj, q: Obj, r: Obj, s: Obj) -> Option<Mor> {
    let (c, m) = (x.base(), x.total());
    let a_pqr = x.assoc_at(p, q, r)?;
    let a_qrs = x.assoc_at(q, r, s)?;
    let qr = x.ten(q, r)?;
    let d_qr = x.del(q, r)?;
    let dqr_s = x.star(d_qr, s);
    let a_mid = x.assoc_at(p, qr, dqr_s)?;
    let d_pqr = x.del(p, qr)?;
    // X = δ''*(δ⊙R)*S with δ = δ_{P,Q} and δ'' = δ_{P⊗Q, δ*R}
    let d_pq = x.del(p, q)?;
    let pq = x.ten(p, q)?;
    let dr = x.star(d_pq, r);
    let d2 = x.del(pq, dr)?;
    let dot = x.act_lift(d_pq, r);
    let dot_s = x.star(dot, s);
    let big_x = x.star(d2, dot_s);
    let aa = x.act.mor(a_pqr);
    let via_assoc = m.compose_all(&[x.lift(dot, s), x.lift(d2, dot_s), x.lift(aa, big_x)])?;
    let direct = m.compose(x.lift(d_qr, s), x.lift(d_pqr, dqr_s))?;
    if c.compose_all(&[dot, d2, aa]) != c.compose(d_qr, d_pqr) {
        return None;
    }
    let cmp = x.p.factor_through(via_assoc, direct, c.id(c.src(d_pqr)))?;
    let pqr = x.ten(p, qr)?;
    let first = x.ten_mor(m.id(p), a_qrs)?;
    let third = x.ten_mor(m.id(pqr), cmp)?;
    let fourth = x.ten_mor(a_pqr, x.lift(aa, big_x))?;
    m.compose_all(&[fourth, third, a_mid, first])
}

fn pentagon_rhs(x: &Contextad, p: Obj, q: Obj, r: Obj, s: Obj) -> Option<Mor> {
    let m = x.total();
    let rs = x.ten(r, s)?;
    let a_first = x.assoc_at(p, q, rs)?;
    let d_pq = x.del(p, q)?;
    let kappa = *x.kappa_tensor.get(&(d_pq, x.pair(r, s)?))?;
    let kinv = m.inverse(kappa)?;
    let pq = x.ten(p, q)?;
    let mid = x.ten_mor(m.id(pq), kinv)?;
    let dr = x.star(d_pq, r);
    let dot_s = x.star(x.act_lift(d_pq, r), s);
    let a_last = x.assoc_at(pq, dr, dot_s)?;
    m.compose_all(&[a_last, mid, a_first])
}
