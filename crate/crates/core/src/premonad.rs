//! Both directions of the bijection between monads in the weak cell
//! 2-category on a composite `(s, ψ)` over `t`, and pre-monad structures on
//! the composite space `s⊗t` whose multiplication is linear over `t`
//! (axiom 2.14), together with exact round-trip verification.

use crate::emw::MonadInEMW;
use crate::report::{Report, Verdict};
use crate::structures::{Algebra, PreMonad};
use crate::term::{chain, id, layer, m, Convention};
use crate::{Error, LinMap, Result};

const CV: Convention = Convention::LeftOuter;

/// The composite multiplication (axiom 2.12): `sμ ∗ νt ∗ ssμ ∗ sψt`.
fn composite_mult(w: &MonadInEMW) -> LinMap {
    let f = w.base.field;
    let s = w.s_dim;
    let t = w.base.dim;
    let mu = &w.base.mult;
    chain(&[
        layer(f, CV, &[id(s), m(mu)]),
        layer(f, CV, &[m(&w.nu), id(t)]),
        layer(f, CV, &[id(s), id(s), m(mu)]),
        layer(f, CV, &[id(s), m(&w.psi), id(t)]),
    ])
    .expect("composite multiplication shapes")
}

/// `t`-linearity of a candidate multiplication on `s⊗t` (axiom 2.14):
/// `Θ ∗ stsμ = sμ ∗ Θt`.
pub fn left_linearity_verdict(theta_mult: &LinMap, s_dim: usize, t: &Algebra) -> Verdict {
    let f = t.field;
    let lhs = chain(&[
        theta_mult.clone(),
        layer(f, CV, &[id(s_dim), id(t.dim), id(s_dim), m(&t.mult)]),
    ])
    .unwrap();
    let rhs = chain(&[
        layer(f, CV, &[id(s_dim), m(&t.mult)]),
        layer(f, CV, &[m(theta_mult), id(t.dim)]),
    ])
    .unwrap();
    Verdict::of_eq("2.14", "multiplication is linear over the base", &lhs, &rhs)
}

/// From a monad in the weak cell 2-category to the pre-monad on `s⊗t`.
///
/// The report carries the normalization consequence 2.13 (both unit
/// insertions collapse to `sμ ∗ ψt ∗ ηst`) and the linearity 2.14, all of
/// which are asserted on every constructed pre-monad.
pub fn wreath_to_premonad(w: &MonadInEMW) -> Result<(PreMonad, Report)> {
    w.validate()?;
    let f = w.base.field;
    let s = w.s_dim;
    let t = w.base.dim;
    let mult = composite_mult(w);
    let p = PreMonad::new(f, s * t, mult.clone(), w.theta.clone())?;
    let mut rep = Report::new("composite pre-monad");
    rep.extend(p.check());
    let mid = chain(&[
        layer(f, CV, &[id(s), m(&w.base.mult)]),
        layer(f, CV, &[m(&w.psi), id(t)]),
        layer(f, CV, &[m(&w.base.unit), id(s), id(t)]),
    ])
    .unwrap();
    let lhs = chain(&[mult.clone(), layer(f, CV, &[m(&w.theta), id(s), id(t)])]).unwrap();
    rep.push(Verdict::of_eq("2.13a", "left unit insertion collapses", &lhs, &mid));
    let rhs = chain(&[mult, layer(f, CV, &[id(s), id(t), m(&w.theta)])]).unwrap();
    rep.push(Verdict::of_eq("2.13b", "right unit insertion collapses", &rhs, &mid));
    rep.push(left_linearity_verdict(&p.mult, s, &w.base));
    if !rep.pass() {
        return Err(Error::NotPreMonad(
            rep.verdicts
                .iter()
                .find(|v| !v.pass)
                .map(|v| v.tag.clone())
                .unwrap_or_default(),
        ));
    }
    Ok((p, rep))
}

/// From a pre-monad on a declared factorization `s⊗t` back to the monad in
/// the weak cell 2-category (axiom 2.15):
/// `ψ := Θ ∗ sμst ∗ ϑtst ∗ tsη` and `ν := Θ ∗ sηsη`.
pub fn premonad_to_wreath(p: &PreMonad, s_dim: usize, t: &Algebra) -> Result<MonadInEMW> {
    if s_dim * t.dim != p.dim {
        return Err(Error::DimMismatch(format!(
            "declared factors {}x{} do not multiply to the pre-monad dimension {}",
            s_dim, t.dim, p.dim
        )));
    }
    if t.field != p.field {
        return Err(Error::FieldMismatch(t.field, p.field));
    }
    t.validate()?;
    p.validate()?;
    if !left_linearity_verdict(&p.mult, s_dim, t).pass {
        return Err(Error::LeftLinearityFailed);
    }
    let f = p.field;
    let s = s_dim;
    let td = t.dim;
    let theta = &p.unit;
    let psi = chain(&[
        p.mult.clone(),
        layer(f, CV, &[id(s), m(&t.mult), id(s), id(td)]),
        layer(f, CV, &[m(theta), id(td), id(s), id(td)]),
        layer(f, CV, &[id(td), id(s), m(&t.unit)]),
    ])?;
    let nu = chain(&[
        p.mult.clone(),
        layer(f, CV, &[id(s), m(&t.unit), id(s), m(&t.unit)]),
    ])?;
    let w = MonadInEMW::new(t.clone(), s_dim, psi, nu, theta.clone())?;
    w.validate()?;
    Ok(w)
}

/// Forward round trip: rebuild `(ψ, ν)` from the induced pre-monad and
/// compare bitwise.
pub fn roundtrip_forward(w: &MonadInEMW) -> Result<Report> {
    let (p, _) = wreath_to_premonad(w)?;
    let back = premonad_to_wreath(&p, w.s_dim, &w.base)?;
    let mut rep = Report::new("round trip through the composite pre-monad");
    rep.push(Verdict::of_eq(
        "2.15.psi",
        "structure map is recovered",
        &back.psi,
        &w.psi,
    ));
    rep.push(Verdict::of_eq(
        "2.15.nu",
        "multiplication is recovered",
        &back.nu,
        &w.nu,
    ));
    rep.push(Verdict::of_eq(
        "2.15.theta",
        "unit is recovered",
        &back.theta,
        &w.theta,
    ));
    Ok(rep)
}

/// Reverse round trip: rebuild the composite multiplication from the
/// extracted wreath data and compare bitwise.
pub fn roundtrip_reverse(p: &PreMonad, s_dim: usize, t: &Algebra) -> Result<Report> {
    let w = premonad_to_wreath(p, s_dim, t)?;
    let (back, _) = wreath_to_premonad(&w)?;
    let mut rep = Report::new("round trip through the wreath data");
    rep.push(Verdict::of_eq(
        "2.12.mult",
        "composite multiplication is recovered",
        &back.mult,
        &p.mult,
    ));
    rep.push(Verdict::of_eq(
        "2.12.unit",
        "unit is recovered",
        &back.unit,
        &p.unit,
    ));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{flip, FieldSpec};
    use crate::structures::pointwise_algebra;
    use crate::term::{chain, layer};

    const Q: FieldSpec = FieldSpec::Q;

    /// The tensor-product wreath: s an algebra, ψ the flip, ν the
    /// multiplication of s with a unit of t appended, ϑ the pair of units.
    fn tensor_wreath(s: &Algebra, t: &Algebra) -> MonadInEMW {
        let f = t.field;
        let psi = flip(f, t.dim, s.dim);
        let nu = chain(&[
            layer(f, CV, &[id(s.dim), m(&t.unit)]),
            s.mult.clone(),
        ])
        .unwrap();
        let theta = s.unit.kron(&t.unit).unwrap();
        MonadInEMW::new(t.clone(), s.dim, psi, nu, theta).unwrap()
    }

    #[test]
    fn tensor_wreath_is_a_monad_in_cells() {
        let s = pointwise_algebra(Q, 2);
        let t = pointwise_algebra(Q, 3);
        let w = tensor_wreath(&s, &t);
        assert!(w.check().pass());
    }

    #[test]
    fn strict_wreath_gives_a_genuine_monad() {
        let s = pointwise_algebra(Q, 2);
        let t = pointwise_algebra(Q, 2);
        let (p, rep) = wreath_to_premonad(&tensor_wreath(&s, &t)).unwrap();
        assert!(rep.pass());
        // Strict case: the pre-monad is a monad, i.e. the unit law holds
        // on the nose.
        let idn = LinMap::identity(Q, p.dim);
        let unit_law = p
            .mult
            .compose(&p.unit.kron(&idn).unwrap())
            .unwrap();
        assert_eq!(unit_law, idn);
    }

    #[test]
    fn roundtrips_are_exact_on_strict_wreaths() {
        let s = pointwise_algebra(Q, 2);
        let t = pointwise_algebra(Q, 3);
        let w = tensor_wreath(&s, &t);
        assert!(roundtrip_forward(&w).unwrap().pass());
        let (p, _) = wreath_to_premonad(&w).unwrap();
        assert!(roundtrip_reverse(&p, 2, &t).unwrap().pass());
    }

    #[test]
    fn zero_nu_is_rejected() {
        let s = pointwise_algebra(Q, 2);
        let t = pointwise_algebra(Q, 2);
        let mut w = tensor_wreath(&s, &t);
        w.nu = LinMap::zero(Q, 4, 4);
        assert!(matches!(
            wreath_to_premonad(&w),
            Err(Error::NotMonadInEmw(_))
        ));
    }

    #[test]
    fn scrambled_factor_declaration_is_rejected() {
        let s = pointwise_algebra(Q, 2);
        let t = pointwise_algebra(Q, 2);
        let (p, _) = wreath_to_premonad(&tensor_wreath(&s, &t)).unwrap();
        assert!(matches!(
            premonad_to_wreath(&p, 3, &t),
            Err(Error::DimMismatch(_))
        ));
    }

    #[test]
    fn corrupted_multiplication_fails_reverse_roundtrip_with_witness() {
        let s = pointwise_algebra(Q, 2);
        let t = pointwise_algebra(Q, 2);
        let (mut p, _) = wreath_to_premonad(&tensor_wreath(&s, &t)).unwrap();
        // Perturb one entry of the multiplication. The result is still a
        // pre-monad for the pointwise case (a different product), so the
        // reverse round trip runs; it must locate the discrepancy if the
        // extraction no longer matches.
        let v = Q.from_i64(1);
        p.mult.set(0, 5, v);
        match roundtrip_reverse(&p, 2, &t) {
            Ok(rep) => {
                assert!(!rep.pass());
                assert!(rep
                    .verdicts
                    .iter()
                    .any(|v| !v.pass && v.witness.is_some()));
            }
            // Depending on the entry, the perturbed map may stop being a
            // pre-monad altogether, which is also a detected failure.
            Err(Error::NotPreMonad(_)) | Err(Error::LeftLinearityFailed) => {}
            Err(e) => panic!("unexpected error: {e}"),
        }
    }
}
