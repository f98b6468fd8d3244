//! Kleisli maps of a polynomial monad, contextful arrows of a dependently
//! graded comonad, and the transposition between them.

use std::collections::HashSet;

use super::{choices, functions, DepGradedComonad, PolyMonad, Shape, Transposed};
use crate::report::{Error, Law, Report, Result, Tally};
use crate::witness;

/// `X -> Σ_s Y^{P(s)}`: each `x` gets a shape and a leaf in `Y` per position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinKleisliMap {
    pub dom: usize,
    pub cod: usize,
    pub assign: Vec<(Shape, Vec<usize>)>,
}

/// A grade over `X` with a body `X⊙grade -> Y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContextfulArrow<G> {
    pub dom: usize,
    pub cod: usize,
    pub grade: G,
    pub body: Vec<usize>,
}

fn check_kleisli(m: &PolyMonad, k: &FinKleisliMap) -> Result<()> {
    if k.assign.len() != k.dom {
        return Err(Error::Boundary(format!("Kleisli map on {} elements declares domain {}", k.assign.len(), k.dom)));
    }
    for (x, (s, leaves)) in k.assign.iter().enumerate() {
        let ok = s.ix() < m.container.num_shapes()
            && leaves.len() == m.container.arity(*s)
            && leaves.iter().all(|&y| y < k.cod);
        if !ok {
            return Err(Error::ill_typed("Kleisli map", format!("value at {x}")));
        }
    }
    Ok(())
}

/// `x ↦ (ok, _ ↦ x)`.
pub fn kleisli_unit(m: &PolyMonad, x: usize) -> FinKleisliMap {
    let n = m.container.arity(m.ok);
    FinKleisliMap { dom: x, cod: x, assign: (0..x).map(|x| (m.ok, vec![x; n])).collect() }
}

/// `k2 ∘ k1` through the extension
/// `(s, f) ↦ (seq(s, p ↦ fst k2(f p)), p ↦ snd k2(f p₁)(p₂))` with
/// `(p₁, p₂) = split(s, -, p)`.
pub fn kleisli_compose(m: &PolyMonad, k1: &FinKleisliMap, k2: &FinKleisliMap) -> Result<FinKleisliMap> {
    if k1.cod != k2.dom {
        return Err(Error::Boundary(format!("codomain {} against domain {}", k1.cod, k2.dom)));
    }
    check_kleisli(m, k1)?;
    check_kleisli(m, k2)?;
    let assign = k1
        .assign
        .iter()
        .map(|(s, leaves)| {
            let f: Vec<Shape> = leaves.iter().map(|&y| k2.assign[y].0).collect();
            let t = m.seq(*s, &f)?;
            let out = (0..m.container.arity(t))
                .map(|p| m.split(*s, &f, p).map(|(p1, p2)| k2.assign[leaves[p1]].1[p2]))
                .collect::<Result<Vec<_>>>()?;
            Ok((t, out))
        })
        .collect::<Result<_>>()?;
    Ok(FinKleisliMap { dom: k1.dom, cod: k2.cod, assign })
}

/// Every Kleisli map `X -> TY`.
pub fn all_kleisli_maps(m: &PolyMonad, x: usize, y: usize) -> Vec<FinKleisliMap> {
    let values: Vec<(Shape, Vec<usize>)> = m
        .container
        .shapes()
        .flat_map(|s| functions(m.container.arity(s), y).into_iter().map(move |l| (s, l)))
        .collect();
    functions(x, values.len())
        .into_iter()
        .map(|t| FinKleisliMap { dom: x, cod: y, assign: t.into_iter().map(|i| values[i].clone()).collect() })
        .collect()
}

/// `(s, f) ↦ (s, f̂)` with `f̂(x, p) = f(x)(p)`.
pub fn transpose_map(k: &FinKleisliMap) -> ContextfulArrow<Vec<Shape>> {
    ContextfulArrow {
        dom: k.dom,
        cod: k.cod,
        grade: k.assign.iter().map(|(s, _)| *s).collect(),
        body: k.assign.iter().flat_map(|(_, l)| l.iter().copied()).collect(),
    }
}

pub fn untranspose(m: &PolyMonad, a: &ContextfulArrow<Vec<Shape>>) -> Result<FinKleisliMap> {
    let c = &m.container;
    if a.grade.len() != a.dom || a.body.len() != a.grade.iter().map(|&s| c.arity(s)).sum::<usize>() {
        return Err(Error::Boundary("body does not cover the action of the grade".into()));
    }
    let offs = c.offsets(&a.grade);
    let assign =
        a.grade.iter().enumerate().map(|(x, &s)| (s, a.body[offs[x]..offs[x] + c.arity(s)].to_vec())).collect();
    Ok(FinKleisliMap { dom: a.dom, cod: a.cod, assign })
}

/// `(I_X, ε_X)`.
pub fn identity_arrow<D: DepGradedComonad>(d: &D, x: usize) -> ContextfulArrow<D::Grade> {
    ContextfulArrow { dom: x, cod: x, grade: d.unit(x), body: d.counit(x) }
}

/// `(s ⊗ f̂*t, ĝ ∘ (f̂⊙t) ∘ δ)` for `(s, f̂): X -> Y` and `(t, ĝ): Y -> Z`.
pub fn transposed_compose<D: DepGradedComonad>(
    d: &D,
    a1: &ContextfulArrow<D::Grade>,
    a2: &ContextfulArrow<D::Grade>,
) -> Result<ContextfulArrow<D::Grade>> {
    if a1.cod != a2.dom {
        return Err(Error::Boundary(format!("codomain {} against domain {}", a1.cod, a2.dom)));
    }
    for a in [a1, a2] {
        if a.body.len() != d.act(a.dom, &a.grade) || a.body.iter().any(|&v| v >= a.cod) {
            return Err(Error::Boundary("body does not cover the action of the grade".into()));
        }
    }
    let x = a1.dom;
    let pulled = d.reindex(&a1.body, &a2.grade);
    let grade = d.tensor(x, &a1.grade, &pulled);
    let along = d.act_map(&a1.body, &a2.grade);
    let body = d.comult(x, &a1.grade, &pulled).into_iter().map(|i| a2.body[along[i]]).collect();
    Ok(ContextfulArrow { dom: x, cod: a2.cod, grade, body })
}

/// Every contextful arrow `X -> Y`.
pub fn all_arrows<D: DepGradedComonad>(d: &D, x: usize, y: usize) -> Vec<ContextfulArrow<D::Grade>> {
    d.grades(x)
        .into_iter()
        .flat_map(|g| {
            let n = d.act(x, &g);
            choices(&vec![y; n]).into_iter().map(move |body| ContextfulArrow { dom: x, cod: y, grade: g.clone(), body })
        })
        .collect()
}

/// Composable pairs examined by [`check_transposition_iso`] at most.
pub const TRANSPOSITION_CAP: u128 = 50_000_000;

/// The identity-on-objects isomorphism between the Kleisli category and the
/// contextful arrows of the transposed comonad, on sets of sizes `x, y, z`:
/// transposition is a bijection on every hom-set involved, identities
/// correspond, and transposing a Kleisli composite gives the contextful
/// composite of the transposes, for every composable pair.
pub fn check_transposition_iso(m: &PolyMonad, x: usize, y: usize, z: usize) -> Result<Report> {
    let c = &m.container;
    let pairs =
        c.extension_size(y).saturating_pow(x as u32).saturating_mul(c.extension_size(z).saturating_pow(y as u32));
    if pairs > TRANSPOSITION_CAP {
        return Err(Error::SampleCap {
            what: format!("{} transposition", m.name),
            size: pairs,
            cap: TRANSPOSITION_CAP,
        });
    }
    let t: Transposed = super::transpose(m)?;
    let mut report = Report::new(format!("transposition of {} at |X|={x}, |Y|={y}, |Z|={z}", m.name));

    let mut bij = Tally::new(Law::TransposeBijection);
    for (a, b) in [(x, y), (y, z)] {
        let maps = all_kleisli_maps(m, a, b);
        let arrows = all_arrows(&t, a, b);
        let mut image = HashSet::new();
        for k in &maps {
            let tk = transpose_map(k);
            let back = untranspose(m, &tk)?;
            bij.record(&back == k, || witness! {"kleisli" => format!("{:?}", k.assign)});
            image.insert(tk);
        }
        let arrow_set: HashSet<_> = arrows.iter().cloned().collect();
        bij.record(image == arrow_set && image.len() == maps.len(), || {
            witness! {"hom" => format!("{a} -> {b}"), "kleisli maps" => maps.len(), "contextful arrows" => arrows.len()}
        });
        for arrow in &arrows {
            let back = transpose_map(&untranspose(m, arrow)?);
            bij.record(&back == arrow, || witness! {"arrow" => format!("{arrow:?}")});
        }
    }
    report.tally(bij);

    let mut ids = Tally::new(Law::TransposeIdentity);
    for n in [x, y, z] {
        ids.record(transpose_map(&kleisli_unit(m, n)) == identity_arrow(&t, n), || witness! {"X" => n});
    }
    report.tally(ids);

    let mut comp = Tally::new(Law::TransposeComposition);
    let firsts = all_kleisli_maps(m, x, y);
    let seconds = all_kleisli_maps(m, y, z);
    let seconds_t: Vec<_> = seconds.iter().map(transpose_map).collect();
    for k1 in &firsts {
        let t1 = transpose_map(k1);
        for (k2, t2) in seconds.iter().zip(&seconds_t) {
            let lhs = transpose_map(&kleisli_compose(m, k1, k2)?);
            let rhs = transposed_compose(&t, &t1, t2)?;
            comp.record(lhs == rhs, || {
                witness! {"k1" => format!("{:?}", k1.assign), "k2" => format!("{:?}", k2.assign)}
            });
        }
    }
    report.tally(comp);
    Ok(report)
}
