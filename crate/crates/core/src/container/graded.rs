//! Dependently graded comonads on finite sets with discrete grades, given as
//! evaluators. A finite set is its size `n`, with elements `0..n`; a map is a
//! value table.

use std::collections::HashSet;
use std::fmt::Debug;
use std::hash::Hash;

use super::{functions, PolyMonad, Shape, TRUE};
use crate::report::{Error, Law, Report, Result, Tally};
use crate::witness;

/// Grades over each finite set with the action, unit, combination and
/// structure maps. Grades form a set, so `λ`, `ρ`, `α` are equalities.
pub trait DepGradedComonad {
    type Grade: Clone + Eq + Hash + Debug;

    fn name(&self) -> String;
    /// Every grade over a set of size `x`.
    fn grades(&self, x: usize) -> Vec<Self::Grade>;
    fn grade_count(&self, x: usize) -> u128;
    /// The size of `X⊙g`.
    fn act(&self, x: usize, g: &Self::Grade) -> usize;
    /// `f*g` for `f: X -> Y` and `g` over `Y`.
    fn reindex(&self, f: &[usize], g: &Self::Grade) -> Self::Grade;
    /// `f⊙g: X⊙f*g -> Y⊙g`.
    fn act_map(&self, f: &[usize], g: &Self::Grade) -> Vec<usize>;
    fn unit(&self, x: usize) -> Self::Grade;
    /// `g⊗h` for `g` over `X` and `h` over `X⊙g`.
    fn tensor(&self, x: usize, g: &Self::Grade, h: &Self::Grade) -> Self::Grade;
    /// `ε: X⊙I -> X`.
    fn counit(&self, x: usize) -> Vec<usize>;
    /// `δ: X⊙(g⊗h) -> (X⊙g)⊙h`.
    fn comult(&self, x: usize, g: &Self::Grade, h: &Self::Grade) -> Vec<usize>;
}

/// The transposed comonad of a polynomial monad: grades over `X` are maps
/// `X -> S`, `X⊙s = Σ_x P(s(x))`, `(s⊗t)(x) = seq(s(x), t(x, -))`, `ε = fst`
/// and `δ` splits positions.
#[derive(Clone, Copy, Debug)]
pub struct Transposed<'a> {
    pub monad: &'a PolyMonad,
}

/// The transposed comonad, for a monad that passes its laws.
pub fn transpose(m: &PolyMonad) -> Result<Transposed<'_>> {
    super::check_poly_monad(m)?.into_result()?;
    Ok(Transposed { monad: m })
}

impl Transposed<'_> {
    fn seq(&self, s: Shape, f: &[Shape]) -> Shape {
        self.monad.seq(s, f).expect("validated seq table")
    }
}

impl DepGradedComonad for Transposed<'_> {
    type Grade = Vec<Shape>;

    fn name(&self) -> String {
        format!("transposed {}", self.monad.name)
    }

    fn grades(&self, x: usize) -> Vec<Vec<Shape>> {
        functions(x, self.monad.container.num_shapes())
            .into_iter()
            .map(|t| t.into_iter().map(|v| Shape(v as u32)).collect())
            .collect()
    }

    fn grade_count(&self, x: usize) -> u128 {
        (self.monad.container.num_shapes() as u128).pow(x as u32)
    }

    fn act(&self, _: usize, g: &Vec<Shape>) -> usize {
        g.iter().map(|&s| self.monad.container.arity(s)).sum()
    }

    fn reindex(&self, f: &[usize], g: &Vec<Shape>) -> Vec<Shape> {
        f.iter().map(|&y| g[y]).collect()
    }

    fn act_map(&self, f: &[usize], g: &Vec<Shape>) -> Vec<usize> {
        let c = &self.monad.container;
        let offs = c.offsets(g);
        f.iter()
            .flat_map(|&y| {
                let start = offs[y];
                (0..c.arity(g[y])).map(move |p| start + p)
            })
            .collect()
    }

    fn unit(&self, x: usize) -> Vec<Shape> {
        vec![self.monad.ok; x]
    }

    fn tensor(&self, _: usize, g: &Vec<Shape>, h: &Vec<Shape>) -> Vec<Shape> {
        let c = &self.monad.container;
        let offs = c.offsets(g);
        g.iter().enumerate().map(|(x, &s)| self.seq(s, &h[offs[x]..offs[x] + c.arity(s)])).collect()
    }

    fn counit(&self, x: usize) -> Vec<usize> {
        self.monad.container.sigma(&self.unit(x)).into_iter().map(|(x, _)| x).collect()
    }

    fn comult(&self, x: usize, g: &Vec<Shape>, h: &Vec<Shape>) -> Vec<usize> {
        let c = &self.monad.container;
        let (og, oh) = (c.offsets(g), c.offsets(h));
        c.sigma(&self.tensor(x, g, h))
            .into_iter()
            .map(|(x, q)| {
                let fibre = &h[og[x]..og[x] + c.arity(g[x])];
                let (p1, p2) = self.monad.split(g[x], fibre, q).expect("validated split table");
                oh[og[x] + p1] + p2
            })
            .collect()
    }
}

/// The writer comonad of a finite monoid: grades `X -> W`, `X⊙w = X`,
/// `(w₁⊗w₂)(x) = w₁(x)·w₂(x)`, identity counit and comultiplication.
#[derive(Clone, Debug)]
pub struct DirectWriter {
    pub size: usize,
    pub unit: usize,
    /// `mult[a][b] = a·b`.
    pub mult: Vec<Vec<usize>>,
}

pub fn direct_writer(size: usize, unit: usize, mult: impl Fn(usize, usize) -> usize) -> DirectWriter {
    DirectWriter { size, unit, mult: (0..size).map(|a| (0..size).map(|b| mult(a, b)).collect()).collect() }
}

impl DepGradedComonad for DirectWriter {
    type Grade = Vec<usize>;

    fn name(&self) -> String {
        "writer".into()
    }

    fn grades(&self, x: usize) -> Vec<Vec<usize>> {
        functions(x, self.size)
    }

    fn grade_count(&self, x: usize) -> u128 {
        (self.size as u128).pow(x as u32)
    }

    fn act(&self, x: usize, _: &Vec<usize>) -> usize {
        x
    }

    fn reindex(&self, f: &[usize], g: &Vec<usize>) -> Vec<usize> {
        f.iter().map(|&y| g[y]).collect()
    }

    fn act_map(&self, f: &[usize], _: &Vec<usize>) -> Vec<usize> {
        f.to_vec()
    }

    fn unit(&self, x: usize) -> Vec<usize> {
        vec![self.unit; x]
    }

    fn tensor(&self, _: usize, g: &Vec<usize>, h: &Vec<usize>) -> Vec<usize> {
        g.iter().zip(h).map(|(&a, &b)| self.mult[a][b]).collect()
    }

    fn counit(&self, x: usize) -> Vec<usize> {
        (0..x).collect()
    }

    fn comult(&self, x: usize, _: &Vec<usize>, _: &Vec<usize>) -> Vec<usize> {
        (0..x).collect()
    }
}

/// The state comonad on `S = {0..states}`: a grade over `X` is a machine
/// `f: X × S -> S` (tabulated at `x·|S| + s`), `X⊙f = X × S`, `I = snd`,
/// `(f⊗g)(x, s) = g((x, s), f(x, s))`, `ε = fst` and
/// `δ(x, s) = ((x, s), f(x, s))`.
#[derive(Clone, Copy, Debug)]
pub struct DirectState {
    pub states: usize,
}

pub fn direct_state(states: usize) -> DirectState {
    DirectState { states }
}

impl DepGradedComonad for DirectState {
    type Grade = Vec<usize>;

    fn name(&self) -> String {
        "state".into()
    }

    fn grades(&self, x: usize) -> Vec<Vec<usize>> {
        functions(x * self.states, self.states)
    }

    fn grade_count(&self, x: usize) -> u128 {
        (self.states as u128).pow((x * self.states) as u32)
    }

    fn act(&self, x: usize, _: &Vec<usize>) -> usize {
        x * self.states
    }

    fn reindex(&self, f: &[usize], g: &Vec<usize>) -> Vec<usize> {
        let n = self.states;
        f.iter().flat_map(|&y| (0..n).map(move |s| g[y * n + s])).collect()
    }

    fn act_map(&self, f: &[usize], _: &Vec<usize>) -> Vec<usize> {
        let n = self.states;
        f.iter().flat_map(|&y| (0..n).map(move |s| y * n + s)).collect()
    }

    fn unit(&self, x: usize) -> Vec<usize> {
        (0..x * self.states).map(|i| i % self.states).collect()
    }

    fn tensor(&self, x: usize, f: &Vec<usize>, g: &Vec<usize>) -> Vec<usize> {
        (0..x * self.states).map(|xs| g[xs * self.states + f[xs]]).collect()
    }

    fn counit(&self, x: usize) -> Vec<usize> {
        (0..x * self.states).map(|xs| xs / self.states).collect()
    }

    fn comult(&self, x: usize, f: &Vec<usize>, _: &Vec<usize>) -> Vec<usize> {
        (0..x * self.states).map(|xs| xs * self.states + f[xs]).collect()
    }
}

/// The Maybe comonad: grades `X -> Bool`, `X⊙s = {x | s(x)}` in increasing
/// order, `I = True`, `(s⊗t)(x) = and(s(x), t(x, ⊤))`, `ε = fst` and
/// `δ(x, ⊤) = ((x, ⊤), ⊤)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct DirectMaybe;

pub fn direct_maybe() -> DirectMaybe {
    DirectMaybe
}

/// Position of each supported element among the supported ones.
fn ranks(s: &[bool]) -> Vec<Option<usize>> {
    s.iter()
        .scan(0, |next, &b| {
            Some(b.then(|| {
                *next += 1;
                *next - 1
            }))
        })
        .collect()
}

impl DepGradedComonad for DirectMaybe {
    type Grade = Vec<bool>;

    fn name(&self) -> String {
        "maybe".into()
    }

    fn grades(&self, x: usize) -> Vec<Vec<bool>> {
        functions(x, 2).into_iter().map(|t| t.into_iter().map(|v| v == 0).collect()).collect()
    }

    fn grade_count(&self, x: usize) -> u128 {
        1u128 << x
    }

    fn act(&self, _: usize, s: &Vec<bool>) -> usize {
        s.iter().filter(|&&b| b).count()
    }

    fn reindex(&self, f: &[usize], s: &Vec<bool>) -> Vec<bool> {
        f.iter().map(|&y| s[y]).collect()
    }

    fn act_map(&self, f: &[usize], s: &Vec<bool>) -> Vec<usize> {
        let r = ranks(s);
        f.iter().filter_map(|&y| r[y]).collect()
    }

    fn unit(&self, x: usize) -> Vec<bool> {
        vec![true; x]
    }

    fn tensor(&self, _: usize, s: &Vec<bool>, t: &Vec<bool>) -> Vec<bool> {
        ranks(s).into_iter().map(|r| r.is_some_and(|i| t[i])).collect()
    }

    fn counit(&self, x: usize) -> Vec<usize> {
        (0..x).collect()
    }

    fn comult(&self, x: usize, s: &Vec<bool>, t: &Vec<bool>) -> Vec<usize> {
        let (rs, rt) = (ranks(s), ranks(t));
        let st = self.tensor(x, s, t);
        (0..x).filter(|&x| st[x]).map(|x| rt[rs[x].expect("supported")].expect("supported")).collect()
    }
}

/// Which finite sets the law checks range over. Laws in one grade use
/// `sizes`; the associativity laws, which range over three grades, use
/// `deep_sizes`. `cap` bounds the instances of any one law.
#[derive(Clone, Debug)]
pub struct Sample {
    pub sizes: Vec<usize>,
    pub deep_sizes: Vec<usize>,
    pub cap: u128,
}

impl Default for Sample {
    fn default() -> Self {
        Sample { sizes: vec![0, 1, 2], deep_sizes: vec![0, 1], cap: 10_000_000 }
    }
}

fn compose(g: &[usize], f: &[usize]) -> Option<Vec<usize>> {
    f.iter().map(|&i| g.get(i).copied()).collect()
}

/// Counit and coassociativity laws and the `λ`, `ρ`, `α` equalities, over
/// every grade on the sampled sets.
pub fn check_dep_graded<D: DepGradedComonad>(d: &D, sample: &Sample) -> Result<Report> {
    let shallow: u128 = sample.sizes.iter().map(|&x| d.grade_count(x)).sum();
    let mut deep: u128 = 0;
    'count: for &x in &sample.deep_sizes {
        if d.grade_count(x) > sample.cap {
            deep = d.grade_count(x);
            break;
        }
        for m in d.grades(x) {
            let xm = d.act(x, &m);
            if d.grade_count(xm) > sample.cap {
                deep = d.grade_count(xm);
                break 'count;
            }
            for n in d.grades(xm) {
                deep = deep.saturating_add(d.grade_count(d.act(xm, &n)));
                if deep > sample.cap {
                    break 'count;
                }
            }
        }
    }
    for (what, size) in [("one-grade laws", shallow), ("three-grade laws", deep)] {
        if size > sample.cap {
            return Err(Error::SampleCap { what: format!("{} {what}", d.name()), size, cap: sample.cap });
        }
    }

    let mut report = Report::new(format!("dependently graded comonad {}", d.name()));
    let mut lam = Tally::new(Law::DepLambda);
    let mut rho = Tally::new(Law::DepRho);
    let mut left = Tally::new(Law::DepLeftCounit);
    let mut right = Tally::new(Law::DepRightCounit);
    for &x in &sample.sizes {
        let (unit, eps) = (d.unit(x), d.counit(x));
        for m in d.grades(x) {
            let xm = d.act(x, &m);
            let w = || witness! {"X" => x, "M" => format!("{m:?}")};
            let pulled = d.reindex(&eps, &m);
            let lhs = d.tensor(x, &unit, &pulled);
            lam.record(lhs == m, || w().with("I⊗ε*M", format!("{lhs:?}")));
            if lhs == m {
                let round = compose(&d.act_map(&eps, &m), &d.comult(x, &unit, &pulled));
                left.record(round == Some((0..xm).collect()), || w().with("(ε⊙M)∘δ", format!("{round:?}")));
            }
            let ux = d.unit(xm);
            let lhs = d.tensor(x, &m, &ux);
            rho.record(lhs == m, || w().with("M⊗I", format!("{lhs:?}")));
            if lhs == m {
                let round = compose(&d.counit(xm), &d.comult(x, &m, &ux));
                right.record(round == Some((0..xm).collect()), || w().with("ε∘δ", format!("{round:?}")));
            }
        }
    }

    let mut alpha = Tally::new(Law::DepAlpha);
    let mut coassoc = Tally::new(Law::DepCoassociativity);
    for &x in &sample.deep_sizes {
        for m in d.grades(x) {
            let xm = d.act(x, &m);
            for n in d.grades(xm) {
                let xmn = d.act(xm, &n);
                let mn = d.tensor(x, &m, &n);
                let d_mn = d.comult(x, &m, &n);
                for l in d.grades(xmn) {
                    let w = || witness! {"X" => x, "M" => format!("{m:?}"), "N" => format!("{n:?}"), "L" => format!("{l:?}")};
                    let nl = d.tensor(xm, &n, &l);
                    let pulled = d.reindex(&d_mn, &l);
                    let lhs = d.tensor(x, &m, &nl);
                    let rhs = d.tensor(x, &mn, &pulled);
                    alpha.record(lhs == rhs, || {
                        w().with("M⊗(N⊗L)", format!("{lhs:?}")).with("(M⊗N)⊗δ*L", format!("{rhs:?}"))
                    });
                    if lhs != rhs {
                        continue;
                    }
                    let top = compose(&d.comult(xm, &n, &l), &d.comult(x, &m, &nl));
                    let bottom = compose(&d.act_map(&d_mn, &l), &d.comult(x, &mn, &pulled));
                    coassoc.record(top.is_some() && top == bottom, w);
                }
            }
        }
    }
    for t in [lam, rho, alpha, left, right, coassoc] {
        report.tally(t);
    }
    Ok(report)
}

/// Checks that `a` and `b` are the same comonad under a bijection of grades:
/// grade sets, `⊙`, `I`, `⊗`, `ε`, `δ` and reindexing agree pointwise on all
/// sets of the given sizes.
pub fn check_agreement<A: DepGradedComonad, B: DepGradedComonad>(
    a: &A,
    b: &B,
    to_b: impl Fn(&A::Grade) -> B::Grade,
    sizes: &[usize],
) -> Report {
    let mut t = Tally::new(Law::Equivalence);
    for &x in sizes {
        let image: HashSet<B::Grade> = a.grades(x).iter().map(&to_b).collect();
        let target: HashSet<B::Grade> = b.grades(x).into_iter().collect();
        t.record(
            image == target && image.len() as u128 == a.grade_count(x),
            || witness! {"X" => x, "cell" => "grades"},
        );
        t.record(to_b(&a.unit(x)) == b.unit(x), || witness! {"X" => x, "cell" => "I"});
        t.record(a.counit(x) == b.counit(x), || witness! {"X" => x, "cell" => "ε"});
        for g in a.grades(x) {
            let gb = to_b(&g);
            let xg = a.act(x, &g);
            t.record(xg == b.act(x, &gb), || witness! {"X" => x, "cell" => "⊙", "g" => format!("{g:?}")});
            for h in a.grades(xg) {
                let hb = to_b(&h);
                let w = || witness! {"X" => x, "g" => format!("{g:?}"), "h" => format!("{h:?}")};
                t.record(to_b(&a.tensor(x, &g, &h)) == b.tensor(x, &gb, &hb), || w().with("cell", "⊗"));
                t.record(a.comult(x, &g, &h) == b.comult(x, &gb, &hb), || w().with("cell", "δ"));
            }
        }
        for &y in sizes {
            for f in functions(x, y) {
                for g in a.grades(y) {
                    let gb = to_b(&g);
                    let w = || witness! {"f" => format!("{f:?}"), "g" => format!("{g:?}")};
                    t.record(to_b(&a.reindex(&f, &g)) == b.reindex(&f, &gb), || w().with("cell", "reindex"));
                    t.record(a.act_map(&f, &g) == b.act_map(&f, &gb), || w().with("cell", "f⊙g"));
                }
            }
        }
    }
    let mut report = Report::new(format!("{} against {}", a.name(), b.name()));
    report.tally(t);
    report
}

/// Grade bijections from the transposed containers to the direct comonads.
/// They take `&Vec` to match the grade type when passed as functions.
#[allow(clippy::ptr_arg)]
pub fn writer_grade(g: &Vec<Shape>) -> Vec<usize> {
    g.iter().map(|s| s.ix()).collect()
}

#[allow(clippy::ptr_arg)]
pub fn maybe_grade(g: &Vec<Shape>) -> Vec<bool> {
    g.iter().map(|&s| s == TRUE).collect()
}

/// `x ↦ σ_x` to the machine `(x, s) ↦ σ_x(s)`.
pub fn state_grade(m: &PolyMonad) -> impl Fn(&Vec<Shape>) -> Vec<usize> + '_ {
    move |g| g.iter().flat_map(|&s| super::state_transition(m, s)).collect()
}
