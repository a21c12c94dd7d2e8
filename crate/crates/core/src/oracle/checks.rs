//! Checkers for the universal properties, each returning a [`Report`].

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::solver::{solve_measurings, SolveOptions};
use crate::carriers::{Algebra, AlgebraMorphism, Coalgebra, CoalgebraMorphism};
use crate::error::{Error, Result};
use crate::kernel::{FValue, FunctorSig, NatTransf};
use crate::measuring::{phi_embed, phi_pull, phi_push, Measuring};
use crate::report::Report;
use crate::transport::{mu_bang_const, mu_bang_term, mu_shriek, pushforward_coalgebra, QuotientMember};
use crate::Bounds;

/// A measuring as `(state, input) -> output` rows.
pub fn render_table(m: &Measuring, bounds: &Bounds) -> Result<String> {
    let rows = m.rows(bounds)?;
    let parts: Vec<String> = rows.iter().map(|(c, a, b)| format!("({}, {}) -> {}", c, a, b)).collect();
    Ok(parts.join("; "))
}

/// `count` seeded random algebras with `size` elements over a finite signature.
pub fn random_algebras(sig: &FunctorSig, size: usize, count: usize, seed: u64) -> Result<Vec<Arc<Algebra>>> {
    let labels = sig
        .monoid()
        .size()
        .ok_or_else(|| Error::NotEnumerable(format!("{} has an infinite monoid", sig.describe())))?;
    let cells = sig
        .value_count(labels, size)
        .ok_or_else(|| Error::NotEnumerable("too many structure cells".to_string()))?;
    if size == 0 {
        return Err(Error::InvalidCarrier("an algebra needs at least one element".to_string()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (0..size).map(|i| format!("b{}", i)).collect();
    (0..count)
        .map(|k| {
            let table = (0..cells).map(|_| rng.gen_range(0..size)).collect();
            Algebra::finite(format!("rand{}_{}", size, k), sig.clone(), names.clone(), table).map(Arc::new)
        })
        .collect()
}

/// `A` is `C`-initial on `targets`: exactly one measuring into each.
pub fn check_c_initial(
    c: &Arc<Coalgebra>,
    a: &Arc<Algebra>,
    targets: &[Arc<Algebra>],
    bounds: &Bounds,
) -> Result<Report> {
    let mut report = Report::new("c-initial", format!("{} {}", a.name(), c.name()));
    for b in targets {
        let r = solve_measurings(c, a, b, bounds, SolveOptions { max_solutions: Some(2) })?;
        let mut sub = Report::new("c-initial", b.name().to_string());
        match r.solutions.len() {
            0 if r.budget_hit => sub.out_of_budget(format!("budget exhausted after {} steps", r.steps)),
            0 if r.exhaustive => sub.fail("no measuring exists"),
            0 => sub.fail("no measuring exists on the enumerated part"),
            1 if r.budget_hit => sub.out_of_budget(format!("budget exhausted after {} steps", r.steps)),
            1 => {
                if !r.exhaustive {
                    sub.witnesses.push("partial coverage: source carrier enumerated to the depth bound".to_string());
                }
            }
            _ => {
                sub.fail(format!("first: {}", render_table(&r.solutions[0], bounds)?));
                sub.fail(format!("second: {}", render_table(&r.solutions[1], bounds)?));
            }
        }
        report.absorb(&sub);
    }
    Ok(report)
}

/// `P` is preinitial and `B` is subterminal for every `C` in `family`.
pub fn check_preinitial_subterminal(
    p: &Arc<Algebra>,
    b: &Arc<Algebra>,
    family: &[Arc<Coalgebra>],
    bounds: &Bounds,
) -> Result<Report> {
    let mut report = Report::new("preinitial-subterminal", format!("{} {}", p.name(), b.name()));
    let (homs, complete) = p.morphisms_to(b, bounds)?;
    let mut sub = Report::new("preinitial", String::new());
    if homs.len() > 1 {
        sub.fail(format!("two morphisms {} -> {}", p.name(), b.name()));
    } else if !complete {
        sub.out_of_budget("morphism search incomplete");
    }
    report.absorb(&sub);
    for c in family {
        let r = solve_measurings(c, p, b, bounds, SolveOptions { max_solutions: Some(2) })?;
        let mut sub = Report::new("subterminal", c.name().to_string());
        if r.solutions.len() > 1 {
            sub.fail(format!("first: {}", render_table(&r.solutions[0], bounds)?));
            sub.fail(format!("second: {}", render_table(&r.solutions[1], bounds)?));
        } else if r.budget_hit {
            sub.out_of_budget(format!("budget exhausted after {} steps", r.steps));
        }
        report.absorb(&sub);
    }
    Ok(report)
}

/// A transport of measurings along natural transformations.
#[derive(Clone, Debug)]
pub enum Transport {
    /// Retyping along `μ : F → G` with retraction `ν`.
    Embed { nu: NatTransf, mu: NatTransf },
    /// `μ_*(C) ⊗ μ_!(A) → μ_!(B)`.
    Push(NatTransf),
    /// `μ_¡(C) ⊗ μ*(A) → μ*(B)`.
    Pull(NatTransf),
}

impl Transport {
    pub fn name(&self) -> &'static str {
        match self {
            Transport::Embed { .. } => "embed",
            Transport::Push(_) => "push",
            Transport::Pull(_) => "pull",
        }
    }

    pub fn apply(&self, phi: &Arc<Measuring>, bounds: &Bounds) -> Result<Measuring> {
        match self {
            Transport::Embed { nu, mu } => phi_embed(nu, mu, phi, bounds),
            Transport::Push(mu) => phi_push(mu, phi),
            Transport::Pull(mu) => phi_pull(mu, phi),
        }
    }
}

/// `Φ(ψ ∘ φ) = Φ(ψ) ∘ Φ(φ)` on each pair `(ψ, φ)`.
pub fn check_respects_composition(
    transport: &Transport,
    pairs: &[(Arc<Measuring>, Arc<Measuring>)],
    bounds: &Bounds,
) -> Result<Report> {
    let mut report = Report::new("respects-composition", transport.name());
    for (psi, phi) in pairs {
        let whole = transport.apply(&Arc::new(Measuring::compose(psi, phi)?), bounds)?;
        let parts = Measuring::compose(&Arc::new(transport.apply(psi, bounds)?), &Arc::new(transport.apply(phi, bounds)?))?;
        let mut sub = Report::new("respects-composition", format!("{} . {}", psi.name(), phi.name()));
        let diffs = match transport {
            Transport::Embed { .. } | Transport::Push(_) => {
                if whole.coalg().transitions() != parts.coalg().transitions() {
                    sub.fail("the pushed tensor differs from the tensor of pushforwards");
                    Vec::new()
                } else {
                    parts.differences(&whole, &|s| s, bounds)?
                }
            }
            Transport::Pull(mu) => {
                let d = mu_shriek(mu, psi.coalg().clone())?;
                let c = mu_shriek(mu, phi.coalg().clone())?;
                let dc = mu_shriek(mu, Arc::new(Coalgebra::tensor(psi.coalg(), phi.coalg())?))?;
                let width = phi.coalg().len();
                let cs = c.kept().len();
                let mut lax = Vec::with_capacity(parts.coalg().len());
                for s in 0..parts.coalg().len() {
                    let parent = d.kept()[s / cs] * width + c.kept()[s % cs];
                    match dc.position(parent) {
                        Some(k) => lax.push(k),
                        None => {
                            sub.fail(format!("state {} has no image in the pulled tensor", parts.coalg().state_name(s)));
                            lax.push(usize::MAX);
                        }
                    }
                }
                if sub.holds() {
                    parts.differences(&whole, &|s| lax[s], bounds)?
                } else {
                    Vec::new()
                }
            }
        };
        for d in diffs {
            sub.fail(d);
        }
        report.absorb(&sub);
    }
    Ok(report)
}

/// Instances of an adjunction check.
#[derive(Clone, Debug)]
pub enum Instances {
    /// Pairs `(A, B)` for `Hom(μ_!A, B) ≅ Hom(A, μ*B)`.
    Bang(Vec<(Arc<Algebra>, Arc<Algebra>)>),
    /// Pairs `(D, C)` for `Hom(μ_*D, C) ≅ Hom(D, μ_¡C)`.
    Shriek(Vec<(Arc<Coalgebra>, Arc<Coalgebra>)>),
}

/// The hom-set bijection of an adjunction and its naturality on
/// endomorphisms, on each instance.
pub fn check_adjunction(mu: &NatTransf, instances: &Instances, bounds: &Bounds) -> Result<Report> {
    match instances {
        Instances::Bang(pairs) => {
            let mut report = Report::new("adjunction", "bang");
            for (a, b) in pairs {
                report.absorb(&bang_instance(mu, a, b, bounds)?);
            }
            Ok(report)
        }
        Instances::Shriek(pairs) => {
            let mut report = Report::new("adjunction", "shriek");
            for (d, c) in pairs {
                report.absorb(&shriek_instance(mu, d, c, bounds)?);
            }
            Ok(report)
        }
    }
}

fn bang_instance(mu: &NatTransf, a: &Arc<Algebra>, b: &Arc<Algebra>, bounds: &Bounds) -> Result<Report> {
    let mut sub = Report::new("adjunction", format!("{} {}", a.name(), b.name()));
    if mu.source().is_shape() {
        return Err(Error::Unsupported("the bang-side check covers constant functors".to_string()));
    }
    let q = mu_bang_const(mu, a.clone())?;
    let qa = q.algebra().clone();
    let pb = Arc::new(Algebra::pullback(mu, b.clone())?);
    let (a_elems, _) = a.elements(bounds);
    let (q_elems, _) = qa.elements(bounds);
    let labels = mu.target().monoid().elements().expect("finite target monoid");

    let (left, c1) = a.morphisms_to(&pb, bounds)?;
    let (right, c2) = qa.morphisms_to(b, bounds)?;
    if !(c1 && c2) {
        sub.out_of_budget("morphism search incomplete");
        return Ok(sub);
    }
    if left.len() != right.len() {
        sub.fail(format!("{} morphisms into the pullback, {} out of the pushout", left.len(), right.len()));
        return Ok(sub);
    }

    let flat = |f: &AlgebraMorphism| -> Result<AlgebraMorphism> {
        let images = a_elems.iter().map(|x| f.apply(&q.embed(x)?)).collect::<Result<Vec<_>>>()?;
        AlgebraMorphism::table(a.clone(), pb.clone(), images, bounds)
    };
    let sharp = |g: &AlgebraMorphism| -> Result<Option<AlgebraMorphism>> {
        let images = q_elems
            .iter()
            .map(|k| match q.representative(k)? {
                QuotientMember::Source(x) => g.apply(&x),
                QuotientMember::Label(l) => b.alpha(&FValue::Node(l, Vec::new())),
            })
            .collect::<Result<Vec<_>>>()?;
        let f = AlgebraMorphism::table(qa.clone(), b.clone(), images, bounds)?;
        // Well defined: every member of a class lands where the representative does.
        for x in &a_elems {
            if f.apply(&q.embed(x)?)? != g.apply(x)? {
                return Ok(None);
            }
        }
        for &l in &labels {
            if f.apply(&q.embed_label(l))? != b.alpha(&FValue::Node(l, Vec::new()))? {
                return Ok(None);
            }
        }
        Ok(Some(f))
    };

    for g in &left {
        match sharp(g)? {
            None => sub.fail("a transpose is not well defined on the quotient"),
            Some(f) => {
                if !f.check(bounds).holds() {
                    sub.fail("a transpose is not a morphism");
                } else if !flat(&f)?.agrees_on(g, &a_elems)? {
                    sub.fail("transposing twice is not the identity");
                }
            }
        }
    }
    for f in &right {
        let g = flat(f)?;
        if !g.check(bounds).holds() {
            sub.fail("a transpose is not a morphism");
            continue;
        }
        match sharp(&g)? {
            Some(back) if back.agrees_on(f, &q_elems)? => {}
            _ => sub.fail("transposing twice is not the identity"),
        }
    }

    // Naturality in B: flat(k ∘ f) = μ*(k) ∘ flat(f).
    let (ends_b, _) = b.morphisms_to(b, bounds)?;
    for k in &ends_b {
        for f in &right {
            let lhs = flat(&k.after(f, bounds)?)?;
            let rhs = flat(f)?;
            for x in &a_elems {
                if lhs.apply(x)? != k.apply(&rhs.apply(x)?)? {
                    sub.fail(format!("naturality in {} fails at {}", b.name(), a.render(x)));
                    break;
                }
            }
        }
    }
    // Naturality in A: flat(f ∘ μ_!(j)) = flat(f) ∘ j.
    let (ends_a, _) = a.morphisms_to(a, bounds)?;
    for j in &ends_a {
        let images = q_elems
            .iter()
            .map(|k| match q.representative(k)? {
                QuotientMember::Source(x) => q.embed(&j.apply(&x)?),
                QuotientMember::Label(l) => Ok(q.embed_label(l)),
            })
            .collect::<Result<Vec<_>>>()?;
        let bang_j = AlgebraMorphism::table(qa.clone(), qa.clone(), images, bounds)?;
        for f in &right {
            for x in &a_elems {
                let lhs = f.apply(&bang_j.apply(&q.embed(x)?)?)?;
                let rhs = f.apply(&q.embed(&j.apply(x)?)?)?;
                if lhs != rhs {
                    sub.fail(format!("naturality in {} fails at {}", a.name(), a.render(x)));
                    break;
                }
            }
        }
    }
    Ok(sub)
}

fn shriek_instance(mu: &NatTransf, d: &Arc<Coalgebra>, c: &Arc<Coalgebra>, bounds: &Bounds) -> Result<Report> {
    let mut sub = Report::new("adjunction", format!("{} {}", d.name(), c.name()));
    let s = mu_shriek(mu, c.clone())?;
    let sc = s.coalgebra().clone();
    let pd = Arc::new(pushforward_coalgebra(mu, d)?);

    let (left, c1) = d.morphisms_to(&sc, bounds.budget)?;
    let (right, c2) = pd.morphisms_to(c, bounds.budget)?;
    if !(c1 && c2) {
        sub.out_of_budget("morphism search incomplete");
        return Ok(sub);
    }
    if left.len() != right.len() {
        sub.fail(format!("{} morphisms into the cofree part, {} out of the pushforward", left.len(), right.len()));
        return Ok(sub);
    }

    let sharp = |f: &CoalgebraMorphism| -> Result<CoalgebraMorphism> {
        CoalgebraMorphism::new(pd.clone(), c.clone(), f.map().iter().map(|&i| s.kept()[i]).collect())
    };
    let flat = |g: &CoalgebraMorphism| -> Option<Vec<usize>> { g.map().iter().map(|&x| s.position(x)).collect() };

    for f in &left {
        let g = sharp(f)?;
        if !g.check().holds() {
            sub.fail("a transpose is not a morphism");
        } else if flat(&g).as_deref() != Some(f.map()) {
            sub.fail("transposing twice is not the identity");
        }
    }
    for g in &right {
        match flat(g) {
            None => sub.fail("a morphism leaves the kept states"),
            Some(map) => {
                let f = CoalgebraMorphism::new(d.clone(), sc.clone(), map)?;
                if !f.check().holds() {
                    sub.fail("a transpose is not a morphism");
                } else if sharp(&f)?.map() != g.map() {
                    sub.fail("transposing twice is not the identity");
                }
            }
        }
    }

    // Naturality in D: flat(g ∘ μ_*(k)) = flat(g) ∘ k.
    let (ends_d, _) = d.morphisms_to(d, bounds.budget)?;
    for k in &ends_d {
        for g in &right {
            let lhs: Option<Vec<usize>> = k.map().iter().map(|&x| s.position(g.apply(x))).collect();
            let rhs: Option<Vec<usize>> = flat(g).map(|m| k.map().iter().map(|&x| m[x]).collect());
            if lhs != rhs {
                sub.fail(format!("naturality in {} fails", d.name()));
            }
        }
    }
    // Naturality in C: endomorphisms restrict to the kept states.
    let (ends_c, _) = c.morphisms_to(c, bounds.budget)?;
    for l in &ends_c {
        let restricted: Option<Vec<usize>> = s.kept().iter().map(|&x| s.position(l.apply(x))).collect();
        let Some(restricted) = restricted else {
            sub.fail(format!("an endomorphism of {} leaves the kept states", c.name()));
            continue;
        };
        for g in &right {
            let lhs: Option<Vec<usize>> = g.map().iter().map(|&x| s.position(l.apply(x))).collect();
            let rhs: Option<Vec<usize>> = flat(g).map(|m| m.iter().map(|&i| restricted[i]).collect());
            if lhs != rhs {
                sub.fail(format!("naturality in {} fails", c.name()));
            }
        }
    }
    Ok(sub)
}

/// `(C, A)` C-initial on `source_targets` implies `(μ_*C, μ_!A)` C-initial on
/// `target_targets`.
pub fn check_preserves_c_initial(
    mu: &NatTransf,
    c: &Arc<Coalgebra>,
    a: &Arc<Algebra>,
    source_targets: &[Arc<Algebra>],
    target_targets: &[Arc<Algebra>],
    bounds: &Bounds,
) -> Result<Report> {
    let mut report = Report::new("preserves-c-initial", format!("{} {}", a.name(), c.name()));
    let before = check_c_initial(c, a, source_targets, bounds)?;
    if !before.holds() {
        let mut pre = before.clone();
        pre.instance = "precondition".to_string();
        report.absorb(&pre);
        return Ok(report);
    }
    let pc = Arc::new(pushforward_coalgebra(mu, c)?);
    let pa = if mu.source().is_shape() {
        mu_bang_term(mu, a.clone())?.algebra().clone()
    } else {
        mu_bang_const(mu, a.clone())?.algebra().clone()
    };
    let mut after = check_c_initial(&pc, &pa, target_targets, bounds)?;
    after.instance = format!("{} {}", pa.name(), pc.name());
    report.absorb(&after);
    Ok(report)
}
