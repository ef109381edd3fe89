//! Deterministic, seeded generators for every instance family used by the
//! law suites. Randomized instances come from known constructions, never
//! from blind sampling: group and groupoid algebras (optionally
//! conjugated by random basis changes), strict distributive laws, wreaths
//! built from them, weak smash products of weak bialgebras, and solution
//! spaces of the linear cell conditions. Every sampler validates its
//! output before returning it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::emw::{twocell_solution_space, EMWOneCell, EMWTwoCell, MonadInEMW};
use crate::entwine::psi_r;
use crate::lifting::{EntwiningDatum, WreathModuleContext};
use crate::linalg::{flip, mirror, tensor_perm, FieldSpec, LinMap};
use crate::structures::{
    group_algebra, groupoid_algebra, Algebra, Coalgebra, GroupPresentation,
    GroupoidPresentation, PreMonad, WeakBialgebra,
};
use crate::report::Report;
use crate::term::{chain, id, layer, m, Convention};
use crate::{Error, Result};

/// The deterministic generator used throughout; equal seeds give equal
/// outputs on every platform.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_scalar(field: FieldSpec, r: &mut ChaCha8Rng) -> crate::Scalar {
    match field {
        FieldSpec::Q => field.from_i64(r.gen_range(-3i64..=3)),
        FieldSpec::Fp(p) => field.from_i64(r.gen_range(0..p.min(64)) as i64),
    }
}

pub fn random_map(field: FieldSpec, rows: usize, cols: usize, r: &mut ChaCha8Rng) -> LinMap {
    LinMap::from_fn(field, rows, cols, |_, _| random_scalar(field, r))
}

pub fn random_invertible(field: FieldSpec, n: usize, r: &mut ChaCha8Rng) -> LinMap {
    loop {
        let g = random_map(field, n, n, r);
        if g.inverse().is_some() {
            return g;
        }
    }
}

/// Conjugate an algebra by an invertible map: an isomorphic copy with
/// generic-looking structure constants.
pub fn conjugate_algebra(a: &Algebra, g: &LinMap) -> Algebra {
    let gi = g.inverse().expect("conjugator must be invertible");
    let mult = g
        .compose(&a.mult)
        .and_then(|x| x.compose(&gi.kron(&gi).unwrap()))
        .unwrap();
    let unit = g.compose(&a.unit).unwrap();
    Algebra {
        field: a.field,
        dim: a.dim,
        mult,
        unit,
    }
}

/// Conjugate a coalgebra by an invertible map.
pub fn conjugate_coalgebra(c: &Coalgebra, g: &LinMap) -> Coalgebra {
    let gi = g.inverse().expect("conjugator must be invertible");
    let comult = g
        .kron(&g)
        .and_then(|gg| gg.compose(&c.comult))
        .and_then(|x| x.compose(&gi))
        .unwrap();
    let counit = c.counit.compose(&gi).unwrap();
    Coalgebra {
        field: c.field,
        dim: c.dim,
        comult,
        counit,
    }
}

/// A monad sample that remembers its cyclic-group origin and the basis
/// change, so that structure-respecting maps between samples can be
/// produced.
#[derive(Clone, Debug)]
pub struct MonadSample {
    pub alg: Algebra,
    pub order: usize,
    pub conj: LinMap,
}

fn invertible_order(field: FieldSpec, n: usize) -> bool {
    match field {
        FieldSpec::Q => true,
        FieldSpec::Fp(p) => n as u64 % p != 0,
    }
}

/// A conjugated cyclic group algebra of dimension at most `max_dim`.
pub fn sample_monad(field: FieldSpec, max_dim: usize, r: &mut ChaCha8Rng) -> MonadSample {
    let mut n = r.gen_range(1..=max_dim);
    while !invertible_order(field, n) {
        n = r.gen_range(1..=max_dim);
    }
    let base = group_algebra(field, &GroupPresentation::cyclic(n))
        .expect("cyclic group algebras are valid")
        .algebra();
    let conj = random_invertible(field, n, r);
    let alg = conjugate_algebra(&base, &conj);
    debug_assert!(alg.check().pass());
    MonadSample {
        alg,
        order: n,
        conj,
    }
}

/// A multiplicative (not necessarily unital) map between cyclic group
/// algebras: a group homomorphism, optionally damped by the averaging
/// idempotent, or zero.
fn multiplicative_map(
    field: FieldSpec,
    from: &MonadSample,
    to: &MonadSample,
    r: &mut ChaCha8Rng,
) -> LinMap {
    let (np, n) = (from.order, to.order);
    // Group homomorphisms x ↦ k·x require k·np ≡ 0 mod n.
    let step = n / gcd(n, np);
    let choices: Vec<usize> = (0..n / step).map(|j| j * step).collect();
    let k = choices[r.gen_range(0..choices.len())];
    let mut hom = LinMap::zero(field, n, np);
    for x in 0..np {
        hom.set(k * x % n, x, field.one());
    }
    let variant = r.gen_range(0..3u8);
    let bare = match variant {
        0 => hom,
        1 => LinMap::zero(field, n, np),
        _ => {
            // Central averaging idempotent of the target group algebra.
            let inv_n = field
                .inv(&field.from_i64(n as i64))
                .expect("group order invertible in the field");
            let avg = LinMap::from_fn(field, n, n, |_, _| inv_n.clone());
            avg.compose(&hom).unwrap()
        }
    };
    // Transport along the basis changes of both samples.
    to.conj
        .compose(&bare)
        .and_then(|x| x.compose(&from.conj.inverse().unwrap()))
        .unwrap()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A 1-cell between two sampled monads: a flip twisted by a
/// multiplicative map, with the cell space conjugated.
pub fn sample_onecell(
    src: &MonadSample,
    tgt: &MonadSample,
    max_dim: usize,
    r: &mut ChaCha8Rng,
) -> EMWOneCell {
    let field = src.alg.field;
    let v = r.gen_range(1..=max_dim);
    let sigma = multiplicative_map(field, tgt, src, r);
    let psi = LinMap::identity(field, v)
        .kron(&sigma)
        .and_then(|x| x.compose(&flip(field, tgt.alg.dim, v)))
        .unwrap();
    let g = random_invertible(field, v, r);
    let gi = g.inverse().unwrap();
    let psi = g
        .kron(&LinMap::identity(field, src.alg.dim))
        .and_then(|l| l.compose(&psi))
        .and_then(|x| x.compose(&LinMap::identity(field, tgt.alg.dim).kron(&gi).unwrap()))
        .unwrap();
    let cell = EMWOneCell::new(src.alg.clone(), tgt.alg.clone(), v, psi)
        .expect("sampled one-cell shapes");
    assert!(cell.check().pass(), "sampled one-cell must satisfy axiom 1.1");
    cell
}

/// A valid 2-cell between two 1-cells, drawn from the exact solution
/// space of the linear cell conditions; nonzero whenever the space is.
pub fn sample_twocell(v: &EMWOneCell, w: &EMWOneCell, r: &mut ChaCha8Rng) -> EMWTwoCell {
    let field = v.field();
    let basis = twocell_solution_space(v, w);
    let mut rho = LinMap::zero(field, w.v_dim * v.source.dim, v.v_dim);
    for b in &basis {
        rho = rho.add(&b.scale(&random_scalar(field, r))).unwrap();
    }
    if rho.is_zero() {
        if let Some(b) = basis.first() {
            rho = b.clone();
        }
    }
    let cell = EMWTwoCell::new(v.clone(), w.clone(), rho).expect("sampled two-cell shapes");
    debug_assert!(cell.check().pass());
    cell
}

/// A random element of a solution space.
pub fn sample_from_space(
    field: FieldSpec,
    basis: &[LinMap],
    rows: usize,
    cols: usize,
    r: &mut ChaCha8Rng,
) -> LinMap {
    let mut out = LinMap::zero(field, rows, cols);
    for b in basis {
        out = out.add(&b.scale(&random_scalar(field, r))).unwrap();
    }
    out
}

/// A groupoid assembled from small components: identity groupoids, pair
/// groupoids and cyclic groups.
pub fn sample_groupoid(field: FieldSpec, r: &mut ChaCha8Rng, max_arrows: usize) -> GroupoidPresentation {
    let _ = field;
    let mut g = match r.gen_range(0..3u8) {
        0 => GroupoidPresentation::discrete(r.gen_range(1..=2)),
        1 => GroupoidPresentation::pair(2),
        _ => GroupoidPresentation::from_group(&GroupPresentation::cyclic(r.gen_range(1..=3)))
            .unwrap(),
    };
    while g.arrows() < max_arrows && r.gen_bool(0.5) {
        let extra = match r.gen_range(0..2u8) {
            0 => GroupoidPresentation::discrete(1),
            _ => GroupoidPresentation::from_group(&GroupPresentation::cyclic(2)).unwrap(),
        };
        if g.arrows() + extra.arrows() > max_arrows {
            break;
        }
        g = g.disjoint_union(&extra);
    }
    g.validate().expect("assembled groupoid is valid");
    g
}

/// A weak bialgebra: the groupoid algebra of a sampled groupoid.
pub fn sample_wba(field: FieldSpec, r: &mut ChaCha8Rng, max_dim: usize) -> WeakBialgebra {
    let g = sample_groupoid(field, r, max_dim);
    let h = groupoid_algebra(field, &g).expect("groupoid algebra");
    assert!(h.is_weak_bialgebra());
    h
}

/// A strict wreath: a distributive law of algebras (the flip, or a
/// semidirect twist of cyclic groups) with the induced multiplication and
/// unit cells, optionally conjugated on the wreath space.
pub fn sample_strict_wreath(field: FieldSpec, r: &mut ChaCha8Rng) -> MonadInEMW {
    const CV: Convention = Convention::LeftOuter;
    let w = if r.gen_bool(0.5) {
        // Tensor wreath with the flip law.
        let s = group_algebra(field, &GroupPresentation::cyclic(r.gen_range(1..=2)))
            .unwrap()
            .algebra();
        let t = group_algebra(field, &GroupPresentation::cyclic(r.gen_range(1..=3)))
            .unwrap()
            .algebra();
        let psi = flip(field, t.dim, s.dim);
        let nu = chain(&[
            layer(field, CV, &[id(s.dim), m(&t.unit)]),
            s.mult.clone(),
        ])
        .unwrap();
        let theta = s.unit.kron(&t.unit).unwrap();
        MonadInEMW::new(t, s.dim, psi, nu, theta).unwrap()
    } else {
        // Semidirect twist: the group of order m acts on the cyclic group
        // of order n by multiplication with r₀, where r₀^m ≡ 1 mod n.
        let (n, mm, r0) = *[(3usize, 2usize, 2usize), (4, 2, 3), (2, 2, 1), (3, 1, 1)]
            .iter()
            .filter(|(n, ..)| invertible_order(field, *n))
            .collect::<Vec<_>>()[r.gen_range(0..2)];
        let s = group_algebra(field, &GroupPresentation::cyclic(mm))
            .unwrap()
            .algebra();
        let t = group_algebra(field, &GroupPresentation::cyclic(n))
            .unwrap()
            .algebra();
        // ψ(x^j ⊗ g^i) = g^i ⊗ x^{j·r₀^i}.
        let mut psi = LinMap::zero(field, mm * n, n * mm);
        for j in 0..n {
            for i in 0..mm {
                let twisted = (j * r0.pow(i as u32)) % n;
                psi.set(i * n + twisted, j * mm + i, field.one());
            }
        }
        let nu = chain(&[
            layer(field, CV, &[id(mm), m(&t.unit)]),
            s.mult.clone(),
        ])
        .unwrap();
        let theta = s.unit.kron(&t.unit).unwrap();
        MonadInEMW::new(t, mm, psi, nu, theta).unwrap()
    };
    // Conjugate the wreath space for generic-looking data.
    let g = random_invertible(field, w.s_dim, r);
    let gi = g.inverse().unwrap();
    let idt = LinMap::identity(field, w.base.dim);
    let psi = g
        .kron(&idt)
        .and_then(|l| l.compose(&w.psi))
        .and_then(|x| x.compose(&idt.kron(&gi).unwrap()))
        .unwrap();
    let nu = g
        .kron(&idt)
        .and_then(|l| l.compose(&w.nu))
        .and_then(|x| x.compose(&gi.kron(&gi).unwrap()))
        .unwrap();
    let theta = g.kron(&idt).and_then(|l| l.compose(&w.theta)).unwrap();
    let out = MonadInEMW::new(w.base.clone(), w.s_dim, psi, nu, theta).unwrap();
    out.validate().expect("sampled strict wreath is valid");
    out
}

/// The weak smash wreath of a weak bialgebra acting on itself through its
/// comultiplication: the structure map is the right-handed induced map,
/// the multiplication cell is the normalized plain product, the unit cell
/// is the coproduct of the unit.
///
/// The twisted product is associative when the basis is grouplike and the
/// multiplication commutative (identity-groupoid algebras); the validator
/// rejects anything else.
pub fn weak_smash_wreath(h: &WeakBialgebra) -> Result<MonadInEMW> {
    let f = h.field;
    let n = h.dim;
    let idh = LinMap::identity(f, n);
    let psi0 = psi_r(h)?.psi;
    // ν₀(x ⊗ y) = Σ 1₁ ⊗ (x·y)·1₂ on the module side.
    let du = h.comult.compose(&h.unit)?;
    let normalize = idh
        .kron(&h.mult)?
        .compose(&idh.kron(&flip(f, n, n))?)?
        .compose(&du.kron(&idh)?)?;
    let nu0 = normalize.compose(&h.mult)?;
    let theta0 = du;
    let psi = mirror(&psi0, &[n, n], &[n, n]);
    let nu = mirror(&nu0, &[n, n], &[n, n]);
    let theta = mirror(&theta0, &[1], &[n, n]);
    let w = MonadInEMW::new(h.algebra(), n, psi, nu, theta)?;
    w.validate()?;
    Ok(w)
}

/// A weak wreath: the weak smash of an identity-groupoid algebra, with
/// the wreath space conjugated by a random basis change.
pub fn sample_weak_wreath(field: FieldSpec, r: &mut ChaCha8Rng, max_dim: usize) -> MonadInEMW {
    let n = r.gen_range(2..=max_dim.min(3));
    let h = groupoid_algebra(field, &GroupoidPresentation::discrete(n))
        .expect("identity groupoid algebra");
    let w = weak_smash_wreath(&h).expect("weak smash of a grouplike commutative base");
    let g = random_invertible(field, w.s_dim, r);
    let gi = g.inverse().unwrap();
    let idt = LinMap::identity(field, w.base.dim);
    let psi = g
        .kron(&idt)
        .and_then(|l| l.compose(&w.psi))
        .and_then(|x| x.compose(&idt.kron(&gi).unwrap()))
        .unwrap();
    let nu = g
        .kron(&idt)
        .and_then(|l| l.compose(&w.nu))
        .and_then(|x| x.compose(&gi.kron(&gi).unwrap()))
        .unwrap();
    let theta = g.kron(&idt).and_then(|l| l.compose(&w.theta)).unwrap();
    let out = MonadInEMW::new(w.base.clone(), w.s_dim, psi, nu, theta).unwrap();
    out.validate().expect("conjugated weak wreath stays valid");
    out
}

/// A pre-monad: the composite pre-monad of a sampled wreath (weak smash
/// by default, strict for variety).
pub fn sample_premonad(field: FieldSpec, r: &mut ChaCha8Rng) -> PreMonad {
    let w = if r.gen_bool(0.5) {
        sample_weak_wreath(field, r, 4)
    } else {
        sample_strict_wreath(field, r)
    };
    let (p, _) = crate::premonad::wreath_to_premonad(&w).expect("wreath induces a pre-monad");
    p
}

/// A module over the canonical retract of a weak wreath: a free module on
/// a small space, conjugated by a random basis change.
pub fn sample_retract_module(
    ctx: &WreathModuleContext,
    r: &mut ChaCha8Rng,
) -> (usize, LinMap) {
    let f = ctx.base.field;
    let rd = ctx.retract.dim;
    let x = r.gen_range(1..=2);
    let w_dim = x * rd;
    // Free module X ⊗ R with the action on the right factor.
    let gamma = LinMap::identity(f, x).kron(&ctx.retract.mult).unwrap();
    let g = random_invertible(f, w_dim, r);
    let gi = g.inverse().unwrap();
    let gamma = g
        .compose(&gamma)
        .and_then(|x| x.compose(&gi.kron(&LinMap::identity(f, rd)).unwrap()))
        .unwrap();
    (w_dim, gamma)
}

/// The diagonal coalgebra on an n-point set: every basis vector is
/// grouplike.
pub fn diagonal_coalgebra(field: FieldSpec, n: usize) -> Coalgebra {
    let mut comult = LinMap::zero(field, n * n, n);
    for i in 0..n {
        comult.set(i * n + i, i, field.one());
    }
    let counit = LinMap::from_fn(field, 1, n, |_, _| field.one());
    Coalgebra::new(field, n, comult, counit).unwrap()
}

/// The smallest partial-coaction instance: the base field coacted on by
/// the group coalgebra of the two-element group through the averaging
/// idempotent; partial but not weak. Requires the characteristic not two.
pub fn partial_coaction_datum(field: FieldSpec) -> Result<EntwiningDatum> {
    if field == FieldSpec::Fp(2) {
        return Err(Error::PreconditionFailed(
            "the averaging idempotent needs an invertible two".into(),
        ));
    }
    let a = Algebra::base(field);
    let h = group_algebra(field, &GroupPresentation::cyclic(2))?;
    let c = h.coalgebra();
    let half = field.inv(&field.from_i64(2))?;
    // ψ: right multiplication by the averaging idempotent (1 + g)/2.
    let psi = LinMap::from_fn(field, 2, 2, |_, _| half.clone());
    EntwiningDatum::new(a, c, psi)
}

/// Entwining data over a fixed small algebra, drawn from structurally
/// valid families: the zero map, induced maps of weak bialgebras, induced
/// maps with deformed grouplike splittings, and multiplicative-projection
/// twists, optionally conjugated on the coalgebra slot.
pub fn sample_entwining(field: FieldSpec, r: &mut ChaCha8Rng) -> EntwiningDatum {
    let n = 2usize;
    let h = groupoid_algebra(field, &GroupoidPresentation::discrete(n)).unwrap();
    let a = h.algebra();
    let c = diagonal_coalgebra(field, n);
    let kind = r.gen_range(0..5u8);
    let psi = match kind {
        0 => LinMap::zero(field, n * n, n * n),
        1 => psi_r(&h).unwrap().psi,
        2 => {
            // Induced-map formula with a deformed grouplike splitting
            // e_i ↦ e_{p(i)} ⊗ e_{q(i)}, (p, q) pair-injective, hence
            // multiplicative on the pointwise algebra.
            let perms = [[0usize, 1], [1, 0]];
            let p = perms[r.gen_range(0..2)];
            let q = perms[r.gen_range(0..2)];
            let mut split = LinMap::zero(field, n * n, n);
            for i in 0..n {
                split.set(p[i] * n + q[i], i, field.one());
            }
            let idh = LinMap::identity(field, n);
            idh.kron(&a.mult)
                .unwrap()
                .compose(&flip(field, n, n).kron(&idh).unwrap())
                .unwrap()
                .compose(&idh.kron(&split).unwrap())
                .unwrap()
        }
        3 => {
            // ψ(c ⊗ a) = σ(a) ⊗ c for a partial injection σ of the
            // pointwise algebra.
            let assignments: [[i64; 2]; 4] = [[0, 1], [1, 0], [0, 0], [1, 1]];
            let pick = assignments[r.gen_range(0..4)];
            let mut sigma = LinMap::zero(field, n, n);
            for (i, &tgt) in pick.iter().enumerate() {
                // Partial injection: targets must not collide when kept.
                if pick.iter().filter(|&&t| t == tgt).count() == 1 || r.gen_bool(0.5) {
                    sigma.set(tgt as usize, i, field.one());
                }
            }
            if !sigma
                .compose(&a.mult)
                .unwrap()
                .eq(&a.mult.compose(&sigma.kron(&sigma).unwrap()).unwrap())
            {
                // Fall back to a genuine injection when the random kill
                // pattern broke multiplicativity.
                sigma = LinMap::identity(field, n);
            }
            sigma
                .kron(&LinMap::identity(field, n))
                .unwrap()
                .compose(&flip(field, n, n))
                .unwrap()
        }
        _ => psi_r(&group_algebra(field, &GroupPresentation::cyclic(2)).unwrap())
            .unwrap()
            .psi,
    };
    let mut d = match kind {
        4 => {
            let z2 = group_algebra(field, &GroupPresentation::cyclic(2)).unwrap();
            EntwiningDatum::new(z2.algebra(), z2.coalgebra(), psi).unwrap()
        }
        _ => EntwiningDatum::new(a, c, psi).unwrap(),
    };
    if r.gen_bool(0.5) {
        // Conjugate the coalgebra slot; validity of every axiom family is
        // transported.
        let g = random_invertible(field, d.coalgebra.dim, r);
        let gi = g.inverse().unwrap();
        let ida = LinMap::identity(field, d.algebra.dim);
        d.coalgebra = conjugate_coalgebra(&d.coalgebra, &g);
        d.psi = ida
            .kron(&g)
            .and_then(|l| l.compose(&d.psi))
            .and_then(|x| x.compose(&gi.kron(&ida).unwrap()))
            .unwrap();
    }
    assert!(
        crate::entwine::shared_axiom_verdict(&d, crate::entwine::Handedness::Right).pass,
        "sampled entwining datum must satisfy the shared axiom"
    );
    d
}

/// Sabotage a weak bialgebra while keeping the algebra and coalgebra
/// parts individually valid: conjugate only the coalgebra half, or
/// replace it with a structurally different valid coalgebra.
pub fn sabotage_wba(h: &WeakBialgebra, r: &mut ChaCha8Rng) -> WeakBialgebra {
    let field = h.field;
    let n = h.dim;
    let mut out = h.clone();
    if r.gen_bool(0.5) && n >= 2 {
        // A grouplike-plus-primitive coalgebra on the first two basis
        // vectors, diagonal elsewhere.
        let mut comult = LinMap::zero(field, n * n, n);
        comult.set(0, 0, field.one());
        comult.set(1, 1, field.one());
        comult.set(n, 1, field.one());
        for i in 2..n {
            comult.set(i * n + i, i, field.one());
        }
        let mut counit = LinMap::zero(field, 1, n);
        counit.set(0, 0, field.one());
        for i in 2..n {
            counit.set(0, i, field.one());
        }
        out.comult = comult;
        out.counit = counit;
    } else {
        let g = random_invertible(field, n, r);
        let c = conjugate_coalgebra(&h.coalgebra(), &g);
        out.comult = c.comult;
        out.counit = c.counit;
    }
    assert!(out.algebra().check().pass());
    assert!(out.coalgebra().check().pass());
    out
}

/// The module-reading permutation helper exposed for tests: reorders the
/// factors of a tensor power.
pub fn shuffle(field: FieldSpec, dims: &[usize], perm: &[usize]) -> LinMap {
    tensor_perm(field, dims, perm)
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    rng(seed.wrapping_add((trial as u64).wrapping_mul(0x9E3779B97F4A7C15)))
}

/// The 2-category law suite on seeded random composable configurations:
/// horizontal and vertical associativity, the unit cell laws, the
/// interchange law, and validity of every composite, all exact.
pub fn emw_law_suite(field: FieldSpec, trials: usize, max_dim: usize, seed: u64) -> Report {
    use crate::emw::{
        hcompose_onecells, hcompose_twocells, vcompose_twocells, EMWOneCell, EMWTwoCell,
    };
    let mut rep = Report::new("cell 2-category law suite");
    let mut fails: Vec<(&str, usize)> = Vec::new();
    let check = |law: &'static str, ok: bool, trial: usize, fails: &mut Vec<(&str, usize)>| {
        if !ok {
            fails.push((law, trial));
        }
    };
    for trial in 0..trials {
        let mut r = trial_rng(seed, trial);
        let t0 = sample_monad(field, max_dim, &mut r);
        let t1 = sample_monad(field, max_dim, &mut r);
        let t2 = sample_monad(field, max_dim, &mut r);
        let t3 = sample_monad(field, max_dim, &mut r);
        let dim_cap = max_dim.min(3);
        let v1 = sample_onecell(&t0, &t1, dim_cap, &mut r);
        let w1 = sample_onecell(&t0, &t1, dim_cap, &mut r);
        let u1 = sample_onecell(&t0, &t1, dim_cap, &mut r);
        let x1 = sample_onecell(&t0, &t1, dim_cap, &mut r);
        let v2 = sample_onecell(&t1, &t2, dim_cap, &mut r);
        let w2 = sample_onecell(&t1, &t2, dim_cap, &mut r);
        let u2 = sample_onecell(&t1, &t2, dim_cap, &mut r);
        let v3 = sample_onecell(&t2, &t3, dim_cap, &mut r);
        let w3 = sample_onecell(&t2, &t3, dim_cap, &mut r);

        let rho1 = sample_twocell(&v1, &w1, &mut r);
        let sig1 = sample_twocell(&w1, &u1, &mut r);
        let tau1 = sample_twocell(&u1, &x1, &mut r);
        let rho2 = sample_twocell(&v2, &w2, &mut r);
        let sig2 = sample_twocell(&w2, &u2, &mut r);
        let rho3 = sample_twocell(&v3, &w3, &mut r);

        // Vertical associativity and units.
        let left = vcompose_twocells(&tau1, &vcompose_twocells(&sig1, &rho1).unwrap()).unwrap();
        let right = vcompose_twocells(&vcompose_twocells(&tau1, &sig1).unwrap(), &rho1).unwrap();
        check("vertical associativity", left.rho == right.rho, trial, &mut fails);
        let idw = EMWTwoCell::identity_cell(&w1);
        let idv = EMWTwoCell::identity_cell(&v1);
        check(
            "left vertical unit",
            vcompose_twocells(&idw, &rho1).unwrap().rho == rho1.rho,
            trial,
            &mut fails,
        );
        check(
            "right vertical unit",
            vcompose_twocells(&rho1, &idv).unwrap().rho == rho1.rho,
            trial,
            &mut fails,
        );

        // Horizontal associativity, on 1-cells bitwise and on 2-cells.
        let oc_l = hcompose_onecells(&hcompose_onecells(&v1, &v2).unwrap(), &v3).unwrap();
        let oc_r = hcompose_onecells(&v1, &hcompose_onecells(&v2, &v3).unwrap()).unwrap();
        check("one-cell associativity", oc_l == oc_r, trial, &mut fails);
        let tc_l =
            hcompose_twocells(&hcompose_twocells(&rho1, &rho2).unwrap(), &rho3).unwrap();
        let tc_r =
            hcompose_twocells(&rho1, &hcompose_twocells(&rho2, &rho3).unwrap()).unwrap();
        check("two-cell horizontal associativity", tc_l.rho == tc_r.rho, trial, &mut fails);

        // Horizontal units: the unit 2-cell of the identity 1-cell.
        let eta0 = EMWTwoCell::identity_cell(&EMWOneCell::identity_cell(&t0.alg));
        let eta1 = EMWTwoCell::identity_cell(&EMWOneCell::identity_cell(&t1.alg));
        check(
            "right horizontal unit",
            hcompose_twocells(&eta0, &rho1).unwrap().rho == rho1.rho,
            trial,
            &mut fails,
        );
        check(
            "left horizontal unit",
            hcompose_twocells(&rho1, &eta1).unwrap().rho == rho1.rho,
            trial,
            &mut fails,
        );

        // Interchange.
        let lhs = hcompose_twocells(
            &vcompose_twocells(&sig1, &rho1).unwrap(),
            &vcompose_twocells(&sig2, &rho2).unwrap(),
        )
        .unwrap();
        let rhs = vcompose_twocells(
            &hcompose_twocells(&sig1, &sig2).unwrap(),
            &hcompose_twocells(&rho1, &rho2).unwrap(),
        )
        .unwrap();
        check("interchange", lhs.rho == rhs.rho, trial, &mut fails);

        // Composites remain valid cells.
        check("composite one-cell validity", oc_l.check().pass(), trial, &mut fails);
        check("composite two-cell validity", tc_l.check().pass(), trial, &mut fails);

        // The projection identity satisfied by every valid 1-cell.
        let f = field;
        let proj = chain(&[
            layer(f, Convention::LeftOuter, &[id(v1.v_dim), m(&t0.alg.mult)]),
            layer(f, Convention::LeftOuter, &[m(&v1.psi), id(t0.alg.dim)]),
            layer(
                f,
                Convention::LeftOuter,
                &[m(&t1.alg.unit), id(v1.v_dim), id(t0.alg.dim)],
            ),
            v1.psi.clone(),
        ])
        .unwrap();
        check("structure-map projection identity", proj == v1.psi, trial, &mut fails);
    }
    let all = [
        "vertical associativity",
        "left vertical unit",
        "right vertical unit",
        "one-cell associativity",
        "two-cell horizontal associativity",
        "right horizontal unit",
        "left horizontal unit",
        "interchange",
        "composite one-cell validity",
        "composite two-cell validity",
        "structure-map projection identity",
    ];
    for law in all {
        let failed: Vec<usize> = fails
            .iter()
            .filter(|(l, _)| *l == law)
            .map(|(_, t)| *t)
            .collect();
        rep.push(crate::report::Verdict::of_bool(
            law,
            &format!("{trials} trials"),
            failed.is_empty(),
        ));
        if !failed.is_empty() {
            rep.verdicts.last_mut().unwrap().name =
                format!("{trials} trials, first failure at trial {}", failed[0]);
        }
    }
    rep
}

/// The membership equivalence suite: the three characterizations of both
/// membership classes, computed independently, agree on sampled
/// candidates, and strict morphisms induce the same 2-cell on both sides.
pub fn membership_equivalence_suite(
    field: FieldSpec,
    trials: usize,
    max_dim: usize,
    seed: u64,
) -> Report {
    use crate::emw::{
        membership_characterizations, mnd_membership, omega_solution_space,
        strict_omega_solution_space, MndSide,
    };
    let mut rep = Report::new("membership equivalence suite");
    let mut agree = true;
    let mut strict_ok = true;
    let mut member_seen = 0usize;
    for trial in 0..trials {
        let mut r = trial_rng(seed, trial);
        let t0 = sample_monad(field, max_dim, &mut r);
        let t1 = sample_monad(field, max_dim, &mut r);
        let dim_cap = max_dim.min(2);
        let v = sample_onecell(&t0, &t1, dim_cap, &mut r);
        let w = sample_onecell(&t0, &t1, dim_cap, &mut r);
        let mut omegas = vec![random_map(field, w.v_dim, v.v_dim, &mut r)];
        for side in [MndSide::Iota, MndSide::Pi] {
            let basis = omega_solution_space(side, &v, &w);
            omegas.push(sample_from_space(field, &basis, w.v_dim, v.v_dim, &mut r));
        }
        for omega in &omegas {
            for side in [MndSide::Iota, MndSide::Pi] {
                let [i, ii, iii] = membership_characterizations(omega, side, &v, &w).unwrap();
                agree &= i == ii && ii == iii;
                if ii {
                    member_seen += 1;
                }
                agree &= mnd_membership(omega, side, &v, &w).unwrap().member == ii;
            }
        }
        let strict = sample_from_space(
            field,
            &strict_omega_solution_space(&v, &w),
            w.v_dim,
            v.v_dim,
            &mut r,
        );
        let mi = mnd_membership(&strict, MndSide::Iota, &v, &w).unwrap();
        let mp = mnd_membership(&strict, MndSide::Pi, &v, &w).unwrap();
        strict_ok &= mi.member && mp.member;
        if let (Some(a), Some(b)) = (mi.induced, mp.induced) {
            strict_ok &= a.rho == b.rho;
        }
    }
    rep.push(crate::report::Verdict::of_bool(
        "equivalences",
        &format!("{trials} trials, independent characterizations agree"),
        agree,
    ));
    rep.push(crate::report::Verdict::of_bool(
        "strict",
        "strict morphisms are two-sided with equal induced cells",
        strict_ok,
    ));
    rep.push(crate::report::Verdict::of_bool(
        "coverage",
        &format!("{member_seen} members observed"),
        member_seen > 0,
    ));
    rep
}

/// The composition suite for induced 2-cells: when memberships hold, the
/// four displayed composition formulas hold exactly.
pub fn membership_composition_suite(
    field: FieldSpec,
    trials: usize,
    max_dim: usize,
    seed: u64,
) -> Report {
    use crate::emw::{
        hcompose_twocells, induced_twocell, omega_solution_space, vcompose_twocells, MndSide,
    };
    const CV: Convention = Convention::LeftOuter;
    let mut rep = Report::new("membership composition suite");
    let mut horizontal_ok = true;
    let mut vertical_ok = true;
    let mut nonzero = 0usize;
    for trial in 0..trials {
        let mut r = trial_rng(seed, trial);
        let t0 = sample_monad(field, max_dim, &mut r);
        let t1 = sample_monad(field, max_dim, &mut r);
        let t2 = sample_monad(field, max_dim, &mut r);
        let dim_cap = max_dim.min(2);
        let v = sample_onecell(&t0, &t1, dim_cap, &mut r);
        let w = sample_onecell(&t0, &t1, dim_cap, &mut r);
        let u = sample_onecell(&t0, &t1, dim_cap, &mut r);
        let vp = sample_onecell(&t1, &t2, dim_cap, &mut r);
        let wp = sample_onecell(&t1, &t2, dim_cap, &mut r);
        let f = field;
        let td = t0.alg.dim;

        for side in [MndSide::Iota, MndSide::Pi] {
            let om = sample_from_space(
                f,
                &omega_solution_space(side, &v, &w),
                w.v_dim,
                v.v_dim,
                &mut r,
            );
            let omp = sample_from_space(
                f,
                &omega_solution_space(side, &vp, &wp),
                wp.v_dim,
                vp.v_dim,
                &mut r,
            );
            let g = induced_twocell(&om, side, &v, &w).unwrap();
            let gp = induced_twocell(&omp, side, &vp, &wp).unwrap();
            let composite = hcompose_twocells(&g, &gp).unwrap();
            let expect = match side {
                MndSide::Iota => chain(&[
                    layer(f, CV, &[m(&omp), m(&om), id(td)]),
                    layer(f, CV, &[id(vp.v_dim), m(&v.psi)]),
                    layer(f, CV, &[m(&vp.psi), id(v.v_dim)]),
                    layer(f, CV, &[m(&t2.alg.unit), id(vp.v_dim), id(v.v_dim)]),
                ])
                .unwrap(),
                MndSide::Pi => chain(&[
                    layer(f, CV, &[id(wp.v_dim), m(&w.psi)]),
                    layer(f, CV, &[m(&wp.psi), id(w.v_dim)]),
                    layer(f, CV, &[m(&t2.alg.unit), id(wp.v_dim), id(w.v_dim)]),
                    layer(f, CV, &[m(&omp), m(&om)]),
                ])
                .unwrap(),
            };
            horizontal_ok &= composite.rho == expect;
            // Closure: the horizontal composite of members is a member,
            // and its induced cell is the composite one.
            let om_comp = omp.kron(&om).unwrap();
            let mem = crate::emw::mnd_membership(&om_comp, side, &composite.src, &composite.dst)
                .unwrap();
            horizontal_ok &= mem.member;
            if let Some(ind) = mem.induced {
                horizontal_ok &= ind.rho == composite.rho;
            }

            // Vertical: a second member stacked on the first.
            let kappa = sample_from_space(
                f,
                &omega_solution_space(side, &w, &u),
                u.v_dim,
                w.v_dim,
                &mut r,
            );
            let gk = induced_twocell(&kappa, side, &w, &u).unwrap();
            let composite = vcompose_twocells(&gk, &g).unwrap();
            let expect = match side {
                MndSide::Iota => chain(&[
                    layer(f, CV, &[m(&kappa), id(td)]),
                    layer(f, CV, &[m(&om), id(td)]),
                    v.psi.clone(),
                    layer(f, CV, &[m(&t1.alg.unit), id(v.v_dim)]),
                ])
                .unwrap(),
                MndSide::Pi => chain(&[
                    u.psi.clone(),
                    layer(f, CV, &[m(&t1.alg.unit), id(u.v_dim)]),
                    kappa.clone(),
                    om.clone(),
                ])
                .unwrap(),
            };
            vertical_ok &= composite.rho == expect;
            // Closure under plain composition of members.
            let kw = kappa.compose(&om).unwrap();
            let mem = crate::emw::mnd_membership(&kw, side, &v, &u).unwrap();
            vertical_ok &= mem.member;
            if let Some(ind) = mem.induced {
                let direct = induced_twocell(&kw, side, &v, &u).unwrap();
                vertical_ok &= ind.rho == direct.rho;
            }
            if !om.is_zero() || !omp.is_zero() || !kappa.is_zero() {
                nonzero += 1;
            }
        }
    }
    rep.push(crate::report::Verdict::of_bool(
        "horizontal",
        &format!("{trials} trials, both sides"),
        horizontal_ok,
    ));
    rep.push(crate::report::Verdict::of_bool(
        "vertical",
        &format!("{trials} trials, both sides"),
        vertical_ok,
    ));
    rep.push(crate::report::Verdict::of_bool(
        "coverage",
        &format!("{nonzero} nonzero member configurations"),
        nonzero > 0,
    ));
    rep
}

/// Module-correspondence round trips over a weak wreath: sampled retract
/// actions split into two-action data and back, exactly, and conversely.
pub fn module_correspondence_suite(
    ctx: &WreathModuleContext,
    trials: usize,
    seed: u64,
) -> Report {
    use crate::lifting::{gamma_to_rholambda, rholambda_to_gamma};
    let mut rep = Report::new("module correspondence suite");
    let mut ok = true;
    for trial in 0..trials {
        let mut r = trial_rng(seed, trial);
        let (w_dim, gamma) = sample_retract_module(ctx, &mut r);
        let datum = gamma_to_rholambda(ctx, w_dim, &gamma).expect("sampled action splits");
        let back = rholambda_to_gamma(ctx, &datum).expect("split data recombine");
        ok &= back == gamma;
        let datum2 = gamma_to_rholambda(ctx, w_dim, &back).expect("recombined action splits");
        ok &= datum2 == datum;
    }
    rep.push(crate::report::Verdict::of_bool(
        "roundtrips",
        &format!("{trials} sampled retract modules, exact both ways"),
        ok,
    ));
    rep
}



#[cfg(test)]
mod tests {
    use super::*;
    use crate::premonad::{roundtrip_forward, roundtrip_reverse, wreath_to_premonad};
    use crate::structures::premonad_retract;

    const F7: FieldSpec = FieldSpec::Fp(7);
    const Q: FieldSpec = FieldSpec::Q;

    #[test]
    fn samplers_are_deterministic() {
        let w1 = sample_strict_wreath(F7, &mut rng(42));
        let w2 = sample_strict_wreath(F7, &mut rng(42));
        assert_eq!(w1.psi, w2.psi);
        assert_eq!(w1.nu, w2.nu);
        let h1 = sample_wba(Q, &mut rng(7), 6);
        let h2 = sample_wba(Q, &mut rng(7), 6);
        assert_eq!(h1, h2);
    }

    #[test]
    fn strict_wreaths_validate_and_roundtrip() {
        for seed in 0..10 {
            let w = sample_strict_wreath(F7, &mut rng(seed));
            assert!(w.check().pass(), "seed {seed}");
            assert!(roundtrip_forward(&w).unwrap().pass(), "seed {seed}");
        }
    }

    #[test]
    fn weak_smash_of_diag_groupoid_is_a_weak_wreath() {
        let h = groupoid_algebra(Q, &GroupoidPresentation::discrete(2)).unwrap();
        let w = weak_smash_wreath(&h).unwrap();
        assert!(w.check().pass());
        // Its composite pre-monad is not a monad: the strict unit law
        // fails.
        let (p, rep) = wreath_to_premonad(&w).unwrap();
        assert!(rep.pass());
        let idn = LinMap::identity(Q, p.dim);
        let unit_law = p.mult.compose(&p.unit.kron(&idn).unwrap()).unwrap();
        assert_ne!(unit_law, idn);
        // Round trips are exact in both directions.
        assert!(roundtrip_forward(&w).unwrap().pass());
        assert!(roundtrip_reverse(&p, 2, &w.base).unwrap().pass());
        // The retract of the composite pre-monad is a genuine algebra.
        let (monad, _) = premonad_retract(&p).unwrap();
        assert!(monad.check().pass());
    }

    #[test]
    fn weak_smash_of_sampled_wbas_validates() {
        for seed in 0..8 {
            let w = sample_weak_wreath(F7, &mut rng(100 + seed), 5);
            assert!(w.check().pass(), "seed {seed}");
            assert!(roundtrip_forward(&w).unwrap().pass(), "seed {seed}");
        }
    }

    #[test]
    fn sampled_onecells_and_twocells_validate() {
        for seed in 0..6 {
            let mut r = rng(200 + seed);
            let t = sample_monad(F7, 3, &mut r);
            let tp = sample_monad(F7, 3, &mut r);
            let v = sample_onecell(&t, &tp, 3, &mut r);
            let w = sample_onecell(&t, &tp, 3, &mut r);
            let rho = sample_twocell(&v, &w, &mut r);
            assert!(rho.check().pass(), "seed {seed}");
        }
    }

    #[test]
    fn partial_coaction_is_partial_but_not_weak() {
        use crate::entwine::{classify_entwining, Handedness};
        for field in [Q, F7] {
            let d = partial_coaction_datum(field).unwrap();
            let cls = classify_entwining(&d, Handedness::Right).unwrap();
            assert!(cls.partial, "partial must hold over {field}");
            assert!(!cls.weak, "weak must fail over {field}");
        }
    }

    #[test]
    fn sampled_entwinings_satisfy_shared_axiom() {
        for seed in 0..20 {
            let _ = sample_entwining(F7, &mut rng(300 + seed));
        }
    }

    #[test]
    fn sampled_modules_are_retract_actions() {
        let h = groupoid_algebra(Q, &GroupoidPresentation::discrete(2)).unwrap();
        let w = weak_smash_wreath(&h).unwrap();
        let ctx = WreathModuleContext::from_wreath(&w).unwrap();
        for seed in 0..5 {
            let (w_dim, gamma) = sample_retract_module(&ctx, &mut rng(400 + seed));
            crate::lifting::check_retract_action(&ctx, w_dim, &gamma).unwrap();
        }
    }
}
