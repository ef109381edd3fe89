//! Cells and composition laws of the weak extension of the 2-category of
//! monads, instantiated in finite-dimensional vector spaces.
//!
//! The instance is the delooping of the tensor category of spaces: 1-cells
//! are spaces, horizontal composition is the tensor product with the
//! leftmost written factor outermost, and vertical composition `a ∗ b` is
//! `a` after `b`. Monads are then plain algebras. A 1-cell from `t` to
//! `t'` is a pair `(V, ψ)` with `ψ: t'⊗V → V⊗t` compatible with the
//! multiplications (axiom 1.1); unit compatibility is not required. A
//! 2-cell `(V,ψ) ⇒ (W,φ)` is a map `ϱ: V → W⊗t` subject to axioms 1.2
//! and 1.3.

use crate::linalg::{FieldSpec, LinMap};
use crate::report::{Report, Verdict};
use crate::structures::{check_field, check_shape, Algebra};
use crate::term::{chain, id, layer, m, Convention};
use crate::{Error, Result};

const CV: Convention = Convention::LeftOuter;

/// A 1-cell `(V, ψ): t → t'` with `ψ: t'⊗V → V⊗t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EMWOneCell {
    pub source: Algebra,
    pub target: Algebra,
    pub v_dim: usize,
    pub psi: LinMap,
}

impl EMWOneCell {
    pub fn new(source: Algebra, target: Algebra, v_dim: usize, psi: LinMap) -> Result<Self> {
        check_shape(
            &psi,
            v_dim * source.dim,
            target.dim * v_dim,
            "one-cell structure map",
        )?;
        check_field(source.field, [&psi, &source.mult, &target.mult])?;
        Ok(EMWOneCell {
            source,
            target,
            v_dim,
            psi,
        })
    }

    /// The identity 1-cell of a monad: the unit space with the identity
    /// structure map on `t`.
    pub fn identity_cell(t: &Algebra) -> EMWOneCell {
        EMWOneCell {
            source: t.clone(),
            target: t.clone(),
            v_dim: 1,
            psi: LinMap::identity(t.field, t.dim),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.source.field
    }

    /// Verdict for axiom 1.1.
    pub fn check(&self) -> Report {
        let f = self.field();
        let v = self.v_dim;
        let t = self.source.dim;
        let tp = self.target.dim;
        let mu = &self.source.mult;
        let mup = &self.target.mult;
        let psi = &self.psi;
        let mut rep = Report::new("one-cell");
        let lhs = chain(&[
            layer(f, CV, &[id(v), m(mu)]),
            layer(f, CV, &[m(psi), id(t)]),
            layer(f, CV, &[id(tp), m(psi)]),
        ])
        .unwrap();
        let rhs = chain(&[psi.clone(), layer(f, CV, &[m(mup), id(v)])]).unwrap();
        rep.push(Verdict::of_eq(
            "1.1",
            "structure map is multiplicative",
            &lhs,
            &rhs,
        ));
        rep
    }

    pub fn validate(&self) -> Result<()> {
        if self.check().pass() {
            Ok(())
        } else {
            Err(Error::AxiomFailed("1.1".into()))
        }
    }
}

/// Horizontal composite of 1-cells `a: t → t'` and `b: t' → t''`:
/// the cell on `V_b ⊗ V_a` with structure map `V_b ψ_a ∗ ψ_b V_a`.
pub fn hcompose_onecells(a: &EMWOneCell, b: &EMWOneCell) -> Result<EMWOneCell> {
    if a.target != b.source {
        return Err(Error::DimMismatch(
            "one-cell composition: middle monads differ".into(),
        ));
    }
    let f = a.field();
    let psi = chain(&[
        layer(f, CV, &[id(b.v_dim), m(&a.psi)]),
        layer(f, CV, &[m(&b.psi), id(a.v_dim)]),
    ])?;
    EMWOneCell::new(a.source.clone(), b.target.clone(), b.v_dim * a.v_dim, psi)
}

/// A 2-cell `(V,ψ) ⇒ (W,φ)` between 1-cells with common source and target
/// monads, given by `rho: V → W⊗t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EMWTwoCell {
    pub src: EMWOneCell,
    pub dst: EMWOneCell,
    pub rho: LinMap,
}

impl EMWTwoCell {
    pub fn new(src: EMWOneCell, dst: EMWOneCell, rho: LinMap) -> Result<Self> {
        if src.source != dst.source || src.target != dst.target {
            return Err(Error::DimMismatch(
                "two-cell between one-cells with different boundary monads".into(),
            ));
        }
        check_shape(
            &rho,
            dst.v_dim * src.source.dim,
            src.v_dim,
            "two-cell component",
        )?;
        Ok(EMWTwoCell { src, dst, rho })
    }

    /// The identity 2-cell of `(W, φ)`: `φ ∗ η'W`.
    pub fn identity_cell(w: &EMWOneCell) -> EMWTwoCell {
        let f = w.field();
        let rho = chain(&[
            w.psi.clone(),
            layer(f, CV, &[m(&w.target.unit), id(w.v_dim)]),
        ])
        .unwrap();
        EMWTwoCell {
            src: w.clone(),
            dst: w.clone(),
            rho,
        }
    }

    /// Verdicts for axioms 1.2 and 1.3.
    pub fn check(&self) -> Report {
        let f = self.src.field();
        let t = self.src.source.dim;
        let tp = self.src.target.dim;
        let w = self.dst.v_dim;
        let mu = &self.src.source.mult;
        let etap = &self.src.target.unit;
        let psi = &self.src.psi;
        let phi = &self.dst.psi;
        let rho = &self.rho;
        let mut rep = Report::new("two-cell");
        let lhs = chain(&[
            layer(f, CV, &[id(w), m(mu)]),
            layer(f, CV, &[m(rho), id(t)]),
            psi.clone(),
        ])
        .unwrap();
        let rhs = chain(&[
            layer(f, CV, &[id(w), m(mu)]),
            layer(f, CV, &[m(phi), id(t)]),
            layer(f, CV, &[id(tp), m(rho)]),
        ])
        .unwrap();
        rep.push(Verdict::of_eq(
            "1.2",
            "intertwines the structure maps",
            &lhs,
            &rhs,
        ));
        let norm = chain(&[
            layer(f, CV, &[id(w), m(mu)]),
            layer(f, CV, &[m(phi), id(t)]),
            layer(f, CV, &[m(etap), id(w), id(t)]),
            rho.clone(),
        ])
        .unwrap();
        rep.push(Verdict::of_eq("1.3", "normalization", rho, &norm));
        rep
    }

    pub fn validate(&self) -> Result<()> {
        let rep = self.check();
        if rep.pass() {
            Ok(())
        } else {
            Err(Error::AxiomFailed(
                rep.verdicts
                    .iter()
                    .find(|v| !v.pass)
                    .map(|v| v.tag.clone())
                    .unwrap_or_default(),
            ))
        }
    }
}

/// Horizontal composite of 2-cells: `r` over `t → t'`, `rp` over
/// `t' → t''`, diagrammatic order, yielding a 2-cell between the composite
/// 1-cells.
pub fn hcompose_twocells(r: &EMWTwoCell, rp: &EMWTwoCell) -> Result<EMWTwoCell> {
    if r.src.target != rp.src.source {
        return Err(Error::DimMismatch(
            "two-cell horizontal composition: middle monads differ".into(),
        ));
    }
    let f = r.src.field();
    let t = r.src.source.dim;
    let wp = rp.dst.v_dim;
    let w = r.dst.v_dim;
    let mu = &r.src.source.mult;
    let rho = chain(&[
        layer(f, CV, &[id(wp), id(w), m(mu)]),
        layer(f, CV, &[id(wp), m(&r.rho), id(t)]),
        layer(f, CV, &[id(wp), m(&r.src.psi)]),
        layer(f, CV, &[m(&rp.rho), id(r.src.v_dim)]),
    ])?;
    EMWTwoCell::new(
        hcompose_onecells(&r.src, &rp.src)?,
        hcompose_onecells(&r.dst, &rp.dst)?,
        rho,
    )
}

/// Vertical composite `t2 • r` (`t2` after `r`).
pub fn vcompose_twocells(t2: &EMWTwoCell, r: &EMWTwoCell) -> Result<EMWTwoCell> {
    if r.dst != t2.src {
        return Err(Error::DimMismatch(
            "two-cell vertical composition: boundaries do not match".into(),
        ));
    }
    let f = r.src.field();
    let t = r.src.source.dim;
    let u = t2.dst.v_dim;
    let mu = &r.src.source.mult;
    let rho = chain(&[
        layer(f, CV, &[id(u), m(mu)]),
        layer(f, CV, &[m(&t2.rho), id(t)]),
        r.rho.clone(),
    ])?;
    EMWTwoCell::new(r.src.clone(), t2.dst.clone(), rho)
}

/// The two distinguished classes of plain maps `ω: V → W` acting as
/// 2-cells between weak 1-cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MndSide {
    Iota,
    Pi,
}

/// Result of a membership test: whether `ω` belongs to the chosen class,
/// and the induced 2-cell when it does.
#[derive(Clone, Debug)]
pub struct Membership {
    pub member: bool,
    pub induced: Option<EMWTwoCell>,
}

/// The candidate 2-cell induced by a plain map, regardless of membership:
/// `ωt ∗ ψ ∗ η'V` on the iota side, `φ ∗ η'W ∗ ω` on the pi side.
pub fn induced_twocell(
    omega: &LinMap,
    side: MndSide,
    v: &EMWOneCell,
    w: &EMWOneCell,
) -> Result<EMWTwoCell> {
    check_shape(omega, w.v_dim, v.v_dim, "two-cell candidate")?;
    let f = v.field();
    let t = v.source.dim;
    let etap = &v.target.unit;
    let rho = match side {
        MndSide::Iota => chain(&[
            layer(f, CV, &[m(omega), id(t)]),
            v.psi.clone(),
            layer(f, CV, &[m(etap), id(v.v_dim)]),
        ])?,
        MndSide::Pi => chain(&[
            w.psi.clone(),
            layer(f, CV, &[m(etap), id(w.v_dim)]),
            omega.clone(),
        ])?,
    };
    EMWTwoCell::new(v.clone(), w.clone(), rho)
}

/// The defining identity of each class (the "(ii)" characterization).
fn side_identity(
    omega: &LinMap,
    side: MndSide,
    v: &EMWOneCell,
    w: &EMWOneCell,
) -> (LinMap, LinMap) {
    let f = v.field();
    let t = v.source.dim;
    let tp = v.target.dim;
    let mu = &v.source.mult;
    let etap = &v.target.unit;
    match side {
        MndSide::Iota => {
            let lhs = chain(&[layer(f, CV, &[m(omega), id(t)]), v.psi.clone()]).unwrap();
            let rhs = chain(&[
                layer(f, CV, &[id(w.v_dim), m(mu)]),
                layer(f, CV, &[m(&w.psi), id(t)]),
                layer(f, CV, &[id(tp), m(omega), id(t)]),
                layer(f, CV, &[id(tp), m(&v.psi)]),
                layer(f, CV, &[id(tp), m(etap), id(v.v_dim)]),
            ])
            .unwrap();
            (lhs, rhs)
        }
        MndSide::Pi => {
            let lhs = chain(&[w.psi.clone(), layer(f, CV, &[id(tp), m(omega)])]).unwrap();
            let rhs = chain(&[
                layer(f, CV, &[id(w.v_dim), m(mu)]),
                layer(f, CV, &[m(&w.psi), id(t)]),
                layer(f, CV, &[m(etap), id(w.v_dim), id(t)]),
                layer(f, CV, &[m(omega), id(t)]),
                v.psi.clone(),
            ])
            .unwrap();
            (lhs, rhs)
        }
    }
}

/// Test whether `ω: V → W` induces a 2-cell on the chosen side, and return
/// the induced 2-cell on success.
pub fn mnd_membership(
    omega: &LinMap,
    side: MndSide,
    v: &EMWOneCell,
    w: &EMWOneCell,
) -> Result<Membership> {
    check_shape(omega, w.v_dim, v.v_dim, "membership candidate")?;
    let (lhs, rhs) = side_identity(omega, side, v, w);
    if lhs != rhs {
        return Ok(Membership {
            member: false,
            induced: None,
        });
    }
    let induced = induced_twocell(omega, side, v, w)?;
    debug_assert!(induced.check().pass());
    Ok(Membership {
        member: true,
        induced: Some(induced),
    })
}

/// The three equivalent characterizations of membership, each computed
/// independently: (i) the induced candidate is a valid 2-cell, (ii) the
/// defining identity, (iii) the normalized-identity pair.
pub fn membership_characterizations(
    omega: &LinMap,
    side: MndSide,
    v: &EMWOneCell,
    w: &EMWOneCell,
) -> Result<[bool; 3]> {
    check_shape(omega, w.v_dim, v.v_dim, "membership candidate")?;
    let f = v.field();
    let t = v.source.dim;
    let mu = &v.source.mult;
    let etap = &v.target.unit;

    let i = induced_twocell(omega, side, v, w)?.check().pass();
    let (lhs, rhs) = side_identity(omega, side, v, w);
    let ii = lhs == rhs;

    // (iii): normalize ωt ∗ ψ on the left and compare with the induced
    // candidate (iota side) or with φ ∗ η'W ∗ ω (pi side); the second
    // identity of (iii) is shared between the sides.
    let normalizer = |x: &LinMap| {
        chain(&[
            layer(f, CV, &[id(w.v_dim), m(mu)]),
            layer(f, CV, &[m(&w.psi), id(t)]),
            layer(f, CV, &[m(etap), id(w.v_dim), id(t)]),
            x.clone(),
        ])
        .unwrap()
    };
    let omega_t_psi = chain(&[layer(f, CV, &[m(omega), id(t)]), v.psi.clone()]).unwrap();
    let eta_v = layer(f, CV, &[m(etap), id(v.v_dim)]);
    let first = match side {
        MndSide::Iota => {
            let cand = omega_t_psi.compose(&eta_v).unwrap();
            normalizer(&cand) == cand
        }
        MndSide::Pi => {
            let cand = normalizer(&omega_t_psi.compose(&eta_v).unwrap());
            let gpi = induced_twocell(omega, MndSide::Pi, v, w)?.rho;
            cand == gpi
        }
    };
    let shared_lhs = normalizer(&omega_t_psi);
    let shared_rhs = {
        let tp = v.target.dim;
        chain(&[
            layer(f, CV, &[id(w.v_dim), m(mu)]),
            layer(f, CV, &[m(&w.psi), id(t)]),
            layer(f, CV, &[id(tp), m(omega), id(t)]),
            layer(f, CV, &[id(tp), m(&v.psi)]),
            layer(f, CV, &[id(tp), m(etap), id(v.v_dim)]),
        ])
        .unwrap()
    };
    let iii = first && shared_lhs == shared_rhs;
    Ok([i, ii, iii])
}

/// A monad on `(s, ψ)` inside the weak cell 2-category over the base
/// monad `t`: multiplication `nu: s⊗s → s⊗t` and unit `theta: 1 → s⊗t`,
/// subject to axioms 2.1–2.7.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonadInEMW {
    pub base: Algebra,
    pub s_dim: usize,
    /// t⊗s → s⊗t
    pub psi: LinMap,
    /// s⊗s → s⊗t
    pub nu: LinMap,
    /// 1 → s⊗t
    pub theta: LinMap,
}

impl MonadInEMW {
    pub fn new(
        base: Algebra,
        s_dim: usize,
        psi: LinMap,
        nu: LinMap,
        theta: LinMap,
    ) -> Result<Self> {
        let st = s_dim * base.dim;
        check_shape(&psi, st, base.dim * s_dim, "wreath structure map")?;
        check_shape(&nu, st, s_dim * s_dim, "wreath multiplication")?;
        check_shape(&theta, st, 1, "wreath unit")?;
        check_field(base.field, [&psi, &nu, &theta, &base.mult])?;
        Ok(MonadInEMW {
            base,
            s_dim,
            psi,
            nu,
            theta,
        })
    }

    /// The underlying 1-cell `(s, ψ): t → t`.
    pub fn s_cell(&self) -> EMWOneCell {
        EMWOneCell {
            source: self.base.clone(),
            target: self.base.clone(),
            v_dim: self.s_dim,
            psi: self.psi.clone(),
        }
    }

    /// `nu` as a 2-cell from the composite 1-cell `(s,ψ)∘(s,ψ)` to `(s,ψ)`.
    pub fn nu_twocell(&self) -> Result<EMWTwoCell> {
        let s = self.s_cell();
        EMWTwoCell::new(hcompose_onecells(&s, &s)?, s, self.nu.clone())
    }

    /// `theta` as a 2-cell from the identity 1-cell to `(s,ψ)`.
    pub fn theta_twocell(&self) -> Result<EMWTwoCell> {
        EMWTwoCell::new(
            EMWOneCell::identity_cell(&self.base),
            self.s_cell(),
            self.theta.clone(),
        )
    }

    /// Seven verdicts, one per axiom 2.1–2.7.
    pub fn check(&self) -> Report {
        let f = self.base.field;
        let s = self.s_dim;
        let t = self.base.dim;
        let mu = &self.base.mult;
        let eta = &self.base.unit;
        let psi = &self.psi;
        let nu = &self.nu;
        let th = &self.theta;
        let mut rep = Report::new("monad in the weak cell 2-category");
        let smu = layer(f, CV, &[id(s), m(mu)]);
        let psit = layer(f, CV, &[m(psi), id(t)]);
        let nut = layer(f, CV, &[m(nu), id(t)]);

        let lhs = chain(&[psi.clone(), layer(f, CV, &[m(mu), id(s)])]).unwrap();
        let rhs = chain(&[smu.clone(), psit.clone(), layer(f, CV, &[id(t), m(psi)])]).unwrap();
        rep.push(Verdict::of_eq(
            "2.1",
            "structure map is multiplicative",
            &lhs,
            &rhs,
        ));

        let lhs = chain(&[smu.clone(), psit.clone(), layer(f, CV, &[id(t), m(nu)])]).unwrap();
        let rhs = chain(&[
            smu.clone(),
            nut.clone(),
            layer(f, CV, &[id(s), m(psi)]),
            layer(f, CV, &[m(psi), id(s)]),
        ])
        .unwrap();
        rep.push(Verdict::of_eq(
            "2.2",
            "multiplication intertwines",
            &lhs,
            &rhs,
        ));

        let lhs = chain(&[
            smu.clone(),
            psit.clone(),
            layer(f, CV, &[m(eta), id(s), id(t)]),
            nu.clone(),
        ])
        .unwrap();
        rep.push(Verdict::of_eq(
            "2.3",
            "multiplication is normalized",
            &lhs,
            nu,
        ));

        let lhs = chain(&[smu.clone(), psit.clone(), layer(f, CV, &[id(t), m(th)])]).unwrap();
        let rhs = chain(&[smu.clone(), layer(f, CV, &[m(th), id(t)])]).unwrap();
        rep.push(Verdict::of_eq("2.4", "unit intertwines", &lhs, &rhs));

        let lhs = chain(&[smu.clone(), nut.clone(), layer(f, CV, &[id(s), m(nu)])]).unwrap();
        let rhs = chain(&[
            smu.clone(),
            nut.clone(),
            layer(f, CV, &[id(s), m(psi)]),
            layer(f, CV, &[m(nu), id(s)]),
        ])
        .unwrap();
        rep.push(Verdict::of_eq("2.5", "associativity", &lhs, &rhs));

        let unit_rhs = chain(&[psi.clone(), layer(f, CV, &[m(eta), id(s)])]).unwrap();
        let lhs = chain(&[
            smu.clone(),
            nut.clone(),
            layer(f, CV, &[id(s), m(psi)]),
            layer(f, CV, &[m(th), id(s)]),
        ])
        .unwrap();
        rep.push(Verdict::of_eq("2.6", "left unit law", &lhs, &unit_rhs));

        let lhs = chain(&[smu, nut, layer(f, CV, &[id(s), m(th)])]).unwrap();
        rep.push(Verdict::of_eq("2.7", "right unit law", &lhs, &unit_rhs));
        rep
    }

    pub fn validate(&self) -> Result<()> {
        let rep = self.check();
        if rep.pass() {
            Ok(())
        } else {
            Err(Error::NotMonadInEmw(
                rep.verdicts
                    .iter()
                    .find(|v| !v.pass)
                    .map(|v| v.tag.clone())
                    .unwrap_or_default(),
            ))
        }
    }
}

/// Basis of the solution space of a family of homogeneous linear
/// conditions on an `rows × cols` unknown matrix.
pub fn linear_solution_space(
    field: FieldSpec,
    rows: usize,
    cols: usize,
    conditions: impl Fn(&LinMap) -> Vec<LinMap>,
) -> Vec<LinMap> {
    let unknowns = rows * cols;
    let probe = LinMap::zero(field, rows, cols);
    let base: Vec<LinMap> = conditions(&probe);
    debug_assert!(base.iter().all(|b| b.is_zero()));
    let total_rows: usize = base.iter().map(|c| c.rows() * c.cols()).sum();
    let mut big = LinMap::zero(field, total_rows, unknowns);
    for u in 0..unknowns {
        let mut e = LinMap::zero(field, rows, cols);
        e.set(u / cols, u % cols, field.one());
        let vals = conditions(&e);
        let mut row0 = 0;
        for val in vals.iter() {
            for r in 0..val.rows() {
                for c in 0..val.cols() {
                    big.set(row0 + r * val.cols() + c, u, val.get(r, c).clone());
                }
            }
            row0 += val.rows() * val.cols();
        }
    }
    big.nullspace()
        .into_iter()
        .map(|v| LinMap::from_fn(field, rows, cols, |r, c| v.get(r * cols + c, 0).clone()))
        .collect()
}

/// Basis of the space of valid 2-cells `(V,ψ) ⇒ (W,φ)`: axioms 1.2 and 1.3
/// are linear in the component.
pub fn twocell_solution_space(v: &EMWOneCell, w: &EMWOneCell) -> Vec<LinMap> {
    let f = v.field();
    let t = v.source.dim;
    let tp = v.target.dim;
    let mu = &v.source.mult;
    let etap = &v.target.unit;
    linear_solution_space(f, w.v_dim * t, v.v_dim, |rho| {
        let c1 = chain(&[
            layer(f, CV, &[id(w.v_dim), m(mu)]),
            layer(f, CV, &[m(rho), id(t)]),
            v.psi.clone(),
        ])
        .unwrap()
        .sub(
            &chain(&[
                layer(f, CV, &[id(w.v_dim), m(mu)]),
                layer(f, CV, &[m(&w.psi), id(t)]),
                layer(f, CV, &[id(tp), m(rho)]),
            ])
            .unwrap(),
        )
        .unwrap();
        let c2 = rho
            .sub(
                &chain(&[
                    layer(f, CV, &[id(w.v_dim), m(mu)]),
                    layer(f, CV, &[m(&w.psi), id(t)]),
                    layer(f, CV, &[m(etap), id(w.v_dim), id(t)]),
                    rho.clone(),
                ])
                .unwrap(),
            )
            .unwrap();
        vec![c1, c2]
    })
}

/// Basis of the space of maps `ω: V → W` satisfying the side's defining
/// identity (linear in `ω`).
pub fn omega_solution_space(side: MndSide, v: &EMWOneCell, w: &EMWOneCell) -> Vec<LinMap> {
    linear_solution_space(v.field(), w.v_dim, v.v_dim, |omega| {
        let (lhs, rhs) = side_identity(omega, side, v, w);
        vec![lhs.sub(&rhs).unwrap()]
    })
}

/// Basis of the space of strict morphisms `ω` between 1-cells:
/// `φ ∗ t'ω = ωt ∗ ψ`, linear in `ω`.
pub fn strict_omega_solution_space(v: &EMWOneCell, w: &EMWOneCell) -> Vec<LinMap> {
    let f = v.field();
    let t = v.source.dim;
    let tp = v.target.dim;
    linear_solution_space(f, w.v_dim, v.v_dim, |omega| {
        let lhs = chain(&[w.psi.clone(), layer(f, CV, &[id(tp), m(omega)])]).unwrap();
        let rhs = chain(&[layer(f, CV, &[m(omega), id(t)]), v.psi.clone()]).unwrap();
        vec![lhs.sub(&rhs).unwrap()]
    })
}
