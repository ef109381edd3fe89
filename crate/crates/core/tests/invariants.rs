//! Cross-module invariants: boolean agreement between the cell-calculus
//! membership classes and the concrete lifting intertwiners, the
//! comparison of composite splittings, implication chains among the
//! entwining axiom families, and located failure witnesses.

use weakmonads::emw::{mnd_membership, MndSide};
use weakmonads::entwine::{
    classify_entwining, cor51_conditions, cor51_pi_side, cor55_conditions, Handedness,
};
use weakmonads::lifting::{composite_splitting_comparison, weak_lifting_dichotomy};
use weakmonads::linalg::{mirror, FieldSpec, LinMap};
use weakmonads::sample::{
    self, partial_coaction_datum, random_map, sample_entwining, sample_from_space,
    sample_monad, sample_onecell, weak_smash_wreath,
};
use weakmonads::structures::{groupoid_algebra, GroupoidPresentation};

const F7: FieldSpec = FieldSpec::Fp(7);

/// Membership in the mono class agrees with the concrete mono-side
/// intertwining of compressed maps, and dually for the epi class.
#[test]
fn dichotomy_agrees_with_membership() {
    let mut iota_members = 0usize;
    let mut pi_members = 0usize;
    for seed in 0..40u64 {
        let mut r = sample::rng(7_000 + seed);
        let t = sample_monad(F7, 3, &mut r);
        let a = &t.alg;
        let v = sample_onecell(&t, &t, 2, &mut r);
        let w = sample_onecell(&t, &t, 2, &mut r);
        let mut omegas = vec![random_map(F7, w.v_dim, v.v_dim, &mut r)];
        for side in [MndSide::Iota, MndSide::Pi] {
            let basis = weakmonads::emw::omega_solution_space(side, &v, &w);
            omegas.push(sample_from_space(F7, &basis, w.v_dim, v.v_dim, &mut r));
        }
        let psi_v = mirror(&v.psi, &[a.dim, v.v_dim], &[v.v_dim, a.dim]);
        let psi_w = mirror(&w.psi, &[a.dim, w.v_dim], &[w.v_dim, a.dim]);
        for omega in &omegas {
            let (iota_lift, pi_lift) =
                weak_lifting_dichotomy(a, &psi_v, &psi_w, omega).unwrap();
            let mi = mnd_membership(omega, MndSide::Iota, &v, &w).unwrap().member;
            let mp = mnd_membership(omega, MndSide::Pi, &v, &w).unwrap().member;
            assert_eq!(iota_lift, mi, "mono side disagrees at seed {seed}");
            assert_eq!(pi_lift, mp, "epi side disagrees at seed {seed}");
            iota_members += mi as usize;
            pi_members += mp as usize;
        }
    }
    assert!(iota_members > 0 && pi_members > 0, "vacuous coverage");
}

/// The splitting of a composite lifting idempotent assembled from the
/// factors' splittings is isomorphic to the canonical echelon splitting;
/// whether they coincide bitwise is recorded per instance, never forced.
#[test]
fn composite_splittings_compare() {
    let mut agreements = 0usize;
    let mut total = 0usize;
    for seed in 0..20u64 {
        let mut r = sample::rng(8_000 + seed);
        let t = sample_monad(F7, 2, &mut r);
        let a = &t.alg;
        let v = sample_onecell(&t, &t, 2, &mut r);
        let vp = sample_onecell(&t, &t, 2, &mut r);
        let psi_v = mirror(&v.psi, &[a.dim, v.v_dim], &[v.v_dim, a.dim]);
        let psi_vp = mirror(&vp.psi, &[a.dim, vp.v_dim], &[vp.v_dim, a.dim]);
        let cmp = composite_splitting_comparison(a, &psi_v, &psi_vp).unwrap();
        total += 1;
        agreements += cmp.agree as usize;
    }
    println!("composite splittings agreed bitwise on {agreements} of {total} instances");
    assert!(total == 20);
}

/// Weak entwining data satisfy the mono-side comultiplication condition,
/// re-derived numerically rather than assumed.
#[test]
fn weak_implies_mono_side_condition() {
    let mut weak_seen = 0usize;
    for seed in 0..60u64 {
        let d = sample_entwining(F7, &mut sample::rng(9_000 + seed));
        let cls = classify_entwining(&d, Handedness::Right).unwrap();
        if cls.weak {
            weak_seen += 1;
            assert!(cls.report.passes("5.2"), "seed {seed}");
            // Epi side of the dual battery as well.
            let r55 = cor55_conditions(&d, Handedness::Right).unwrap();
            assert!(r55.passes("5.13") && r55.passes("5.14"), "seed {seed}");
        }
    }
    assert!(weak_seen > 0);
}

/// Partial entwining data satisfy the epi-side comultiplication
/// condition.
#[test]
fn partial_implies_epi_side_condition() {
    for field in [FieldSpec::Q, F7] {
        let d = partial_coaction_datum(field).unwrap();
        let cls = classify_entwining(&d, Handedness::Right).unwrap();
        assert!(cls.partial);
        let rep = cor51_conditions(&d, Handedness::Right).unwrap();
        assert!(cor51_pi_side(&rep));
    }
    // Also across sampled data: whenever the partial axioms hold, so does
    // the epi-side pair.
    let mut partial_seen = 0usize;
    for seed in 0..60u64 {
        let d = sample_entwining(F7, &mut sample::rng(10_000 + seed));
        let cls = classify_entwining(&d, Handedness::Right).unwrap();
        if cls.partial {
            partial_seen += 1;
            let rep = cor51_conditions(&d, Handedness::Right).unwrap();
            assert!(cor51_pi_side(&rep), "seed {seed}");
        }
    }
    assert!(partial_seen > 0);
}

/// Structure-map recovery is exact on every sampled structure map
/// satisfying the multiplicativity axiom, not only on the named examples.
#[test]
fn recover_psi_is_exact_on_sampled_data() {
    use weakmonads::lifting::{lifted_right_action, lifting_idempotent, recover_psi};
    for seed in 0..30u64 {
        let d = sample_entwining(F7, &mut sample::rng(12_000 + seed));
        let e = lifting_idempotent(&d).unwrap();
        let split = e.split_idempotent().unwrap();
        let act = lifted_right_action(&d.algebra, &d.psi, &split).unwrap();
        let back = recover_psi(&d.algebra, d.coalgebra.dim, &split, &act).unwrap();
        assert_eq!(back, d.psi, "seed {seed}");
    }
}

/// On mono-side corings the generic coproduct construction agrees with
/// the direct compression of the comultiplication applied inside the
/// retract.
#[test]
fn iota_coproduct_agrees_with_direct_formula() {
    use weakmonads::entwine::LiftKind;
    use weakmonads::lifting::build_lifted_coring;
    let mut built_count = 0usize;
    for seed in 0..40u64 {
        let d = sample_entwining(F7, &mut sample::rng(13_000 + seed));
        let cls = classify_entwining(&d, Handedness::Right).unwrap();
        if !cls.weak {
            continue;
        }
        let built = match build_lifted_coring(&d, LiftKind::Iota) {
            Ok(b) => b,
            Err(weakmonads::Error::EntwiningKindMismatch(_)) => continue,
            Err(e) => panic!("seed {seed}: {e}"),
        };
        built_count += 1;
        assert!(built.report.pass(), "seed {seed}");
        // Direct route: apply the comultiplication inside the retract and
        // push into the tensor square through the same identification.
        let f = d.field();
        let a = &d.algebra;
        let c_dim = d.coalgebra.dim;
        let split = &built.splitting;
        let square = &built.coring.square;
        let pi_unit = split
            .pi
            .compose(&a.unit.kron(&LinMap::identity(f, c_dim)).unwrap())
            .unwrap();
        let phi = square.q.compose(&split.pi.kron(&pi_unit).unwrap()).unwrap();
        let direct = phi
            .compose(
                &LinMap::identity(f, a.dim)
                    .kron(&d.coalgebra.comult)
                    .unwrap(),
            )
            .unwrap()
            .compose(&split.iota)
            .unwrap();
        assert_eq!(built.coring.coproduct, direct, "seed {seed}");
    }
    assert!(built_count > 0, "no weak samples reached the coring builder");
}

/// A failing condition carries a located witness: the partial-coaction
/// instance over F5 satisfies the shared axiom but violates the epi-side
/// unit condition of the monad lifting.
#[test]
fn failed_conditions_carry_witnesses() {
    let f5 = FieldSpec::Fp(5);
    let d = partial_coaction_datum(f5).unwrap();
    assert!(weakmonads::entwine::shared_axiom_verdict(&d, Handedness::Right).pass);
    let rep = cor55_conditions(&d, Handedness::Right).unwrap();
    let v = rep.get("5.14").unwrap();
    assert!(!v.pass);
    assert!(v.witness.is_some());
}

/// Zeroing the unit cell of a weak wreath breaks exactly the unit laws.
#[test]
fn zeroed_wreath_unit_fails_unit_laws() {
    let h = groupoid_algebra(FieldSpec::Q, &GroupoidPresentation::discrete(2)).unwrap();
    let mut w = weak_smash_wreath(&h).unwrap();
    w.theta = LinMap::zero(FieldSpec::Q, 4, 1);
    let rep = w.check();
    assert!(rep.passes("2.1"));
    assert!(rep.passes("2.2"));
    assert!(rep.passes("2.5"));
    assert!(!rep.passes("2.6"));
    assert!(!rep.passes("2.7"));
}

/// A corrupted wreath action on a module is rejected with the tag of the
/// intertwining axiom it violates.
#[test]
fn corrupted_lambda_is_rejected_with_a_tag() {
    use weakmonads::lifting::{
        gamma_to_rholambda, rholambda_to_gamma, LiftedModuleDatum, WreathModuleContext,
    };
    let h = groupoid_algebra(FieldSpec::Q, &GroupoidPresentation::discrete(2)).unwrap();
    let w = weak_smash_wreath(&h).unwrap();
    let ctx = WreathModuleContext::from_wreath(&w).unwrap();
    let datum = gamma_to_rholambda(&ctx, ctx.retract.dim, &ctx.retract.mult).unwrap();
    let mut bad = LiftedModuleDatum {
        w_dim: datum.w_dim,
        rho: datum.rho.clone(),
        lam: datum.lam.clone(),
    };
    let one = FieldSpec::Q.one();
    let bumped = FieldSpec::Q.add(bad.lam.get(0, 1), &one);
    bad.lam.set(0, 1, bumped);
    match rholambda_to_gamma(&ctx, &bad) {
        Err(weakmonads::Error::AxiomFailed(tag)) => assert_eq!(tag, "3.4"),
        other => panic!("expected a tagged axiom failure, got {other:?}"),
    }
}

/// Every sampler family produces checker-passing output for every seed.
#[test]
fn samplers_validate_across_seeds() {
    for seed in 0..10u64 {
        let mut r = sample::rng(20_000 + seed);
        assert!(sample::sample_wba(FieldSpec::Q, &mut r, 6).check().pass());
        let mut r = sample::rng(21_000 + seed);
        assert!(sample::sample_strict_wreath(F7, &mut r).check().pass());
        let mut r = sample::rng(22_000 + seed);
        assert!(sample::sample_weak_wreath(F7, &mut r, 3).check().pass());
        let mut r = sample::rng(23_000 + seed);
        assert!(sample::sample_premonad(F7, &mut r).check().pass());
        let mut r = sample::rng(24_000 + seed);
        let d = sample_entwining(F7, &mut r);
        assert!(weakmonads::entwine::shared_axiom_verdict(&d, Handedness::Right).pass);
    }
}

/// The two-idempotent pipeline with explicit values: the composite of
/// two copies of the induced cell is a valid 1-cell on a four-dimensional
/// space, and the lifted counit sends the rank-2 basis to the two
/// idempotents.
#[test]
fn two_idempotent_cell_composites_and_counit_values() {
    use weakmonads::emw::hcompose_onecells;
    use weakmonads::entwine::{psi_r, LiftKind};
    use weakmonads::lifting::build_lifted_coring;
    let h = groupoid_algebra(FieldSpec::Q, &GroupoidPresentation::discrete(2)).unwrap();
    let d = psi_r(&h).unwrap();
    let cell = d.as_onecell(Handedness::Right).unwrap();
    assert!(cell.check().pass());
    let square = hcompose_onecells(&cell, &cell).unwrap();
    assert_eq!(square.v_dim, 4);
    assert!(square.check().pass());
    // In the canonical splitting the carrier basis maps to the
    // idempotents themselves, so the lifted counit is the identity.
    let built = build_lifted_coring(&d, LiftKind::Iota).unwrap();
    assert_eq!(built.coring.counit, LinMap::identity(FieldSpec::Q, 2));
}

/// The lax variant of the lifted coring: checked per instance on a strict
/// law (all kinds apply) and on the partial-coaction instance (which also
/// satisfies the lax axioms).
#[test]
fn lax_corings_verify_per_instance() {
    use weakmonads::entwine::{classify_entwining, LiftKind};
    use weakmonads::lifting::{build_lifted_coring, EntwiningDatum};
    // Strict case: the flip over a pointwise algebra and the diagonal
    // coalgebra.
    let h = groupoid_algebra(FieldSpec::Q, &GroupoidPresentation::discrete(2)).unwrap();
    let strict = EntwiningDatum::new(
        h.algebra(),
        h.coalgebra(),
        weakmonads::linalg::flip(FieldSpec::Q, 2, 2),
    )
    .unwrap();
    let cls = classify_entwining(&strict, Handedness::Right).unwrap();
    assert!(cls.mixed_dl && cls.lax);
    let built = build_lifted_coring(&strict, LiftKind::Lax).unwrap();
    assert!(built.report.pass());
    // The partial instance is lax as well, and its lax coring verifies.
    let d = partial_coaction_datum(FieldSpec::Q).unwrap();
    let cls = classify_entwining(&d, Handedness::Right).unwrap();
    assert!(cls.lax && cls.partial && !cls.weak);
    let built = build_lifted_coring(&d, LiftKind::Lax).unwrap();
    assert!(built.report.pass());
}

/// Asking for a coring variant whose axioms fail is rejected with the
/// kind name.
#[test]
fn kind_mismatch_is_rejected() {
    use weakmonads::entwine::LiftKind;
    use weakmonads::lifting::{build_lifted_coring, EntwiningDatum};
    // A projection-twisted flip: multiplicative, but the weak counit
    // compatibility fails, so the mono-side axioms do not hold.
    let h = groupoid_algebra(FieldSpec::Q, &GroupoidPresentation::discrete(2)).unwrap();
    let mut sigma = LinMap::zero(FieldSpec::Q, 2, 2);
    sigma.set(0, 1, FieldSpec::Q.one()); // e₂ ↦ e₁, e₁ ↦ 0
    let psi = sigma
        .kron(&LinMap::identity(FieldSpec::Q, 2))
        .unwrap()
        .compose(&weakmonads::linalg::flip(FieldSpec::Q, 2, 2))
        .unwrap();
    let d = EntwiningDatum::new(h.algebra(), h.coalgebra(), psi).unwrap();
    let cls = classify_entwining(&d, Handedness::Right).unwrap();
    assert!(!cls.weak);
    match build_lifted_coring(&d, LiftKind::Iota) {
        Err(weakmonads::Error::EntwiningKindMismatch(kind)) => assert_eq!(kind, "iota"),
        other => panic!("expected a kind mismatch, got {other:?}"),
    }
}

/// The zero structure map satisfies the shared axiom vacuously and is
/// classified as nothing strict.
#[test]
fn zero_structure_map_classifies_weakly() {
    let h = groupoid_algebra(FieldSpec::Q, &GroupoidPresentation::discrete(2)).unwrap();
    let d = weakmonads::lifting::EntwiningDatum::new(
        h.algebra(),
        h.coalgebra(),
        LinMap::zero(FieldSpec::Q, 4, 4),
    )
    .unwrap();
    let cls = classify_entwining(&d, Handedness::Right).unwrap();
    assert!(!cls.mixed_dl);
    assert!(cls.weak); // every identity involving the map collapses to zero
}
