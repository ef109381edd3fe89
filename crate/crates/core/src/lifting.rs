//! The module-category instance of weak liftings for the monad of a fixed
//! algebra `A`: lifting idempotents, canonically split retracts, 2-cell
//! lifts, tensor products over `A`, corings built from entwining data, and
//! the module correspondences for weak wreaths.
//!
//! Everything here reads 2-cell expressions as components of natural
//! transformations between functors `(−) ⊗ X` on right modules, evaluated
//! at the free module `A` ([`Convention::RightOuter`]): since those
//! functors are determined by their value on the free module of rank one,
//! a single exact matrix carries each transformation.

use crate::emw::{EMWOneCell, MonadInEMW};
use crate::entwine::{self, Handedness, LiftKind};
use crate::linalg::{mirror, FieldSpec, LinMap, Splitting};
use crate::premonad::wreath_to_premonad;
use crate::report::{Report, Verdict};
use crate::structures::{
    check_field, check_shape, premonad_retract, Algebra, Coalgebra, PreMonad,
};
use crate::term::{chain, id, layer, m, Convention};
use crate::{Error, Result};

const MV: Convention = Convention::RightOuter;

/// An entwining datum: an algebra, a coalgebra, and a structure map
/// relating them. Right-handed data carry `psi: C⊗A → A⊗C`; left-handed
/// data carry `psi: A⊗C → C⊗A` and are checked against the mirrored
/// convention throughout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntwiningDatum {
    pub algebra: Algebra,
    pub coalgebra: Coalgebra,
    pub psi: LinMap,
}

impl EntwiningDatum {
    pub fn new(algebra: Algebra, coalgebra: Coalgebra, psi: LinMap) -> Result<Self> {
        let n = algebra.dim * coalgebra.dim;
        check_shape(&psi, n, n, "entwining structure map")?;
        check_field(algebra.field, [&psi, &algebra.mult, &coalgebra.comult])?;
        Ok(EntwiningDatum {
            algebra,
            coalgebra,
            psi,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field
    }

    /// The induced 1-cell on the coalgebra's space over the algebra's
    /// monad, in the cell calculus convention.
    pub fn as_onecell(&self, hand: Handedness) -> Result<EMWOneCell> {
        let a = self.algebra.dim;
        let c = self.coalgebra.dim;
        let psi = match hand {
            // Right-handed components are written against the opposite
            // tensor order; conjugate by factor reversal.
            Handedness::Right => mirror(&self.psi, &[c, a], &[a, c]),
            Handedness::Left => self.psi.clone(),
        };
        EMWOneCell::new(self.algebra.clone(), self.algebra.clone(), c, psi)
    }

    /// Parts and the shared multiplicativity axiom.
    pub fn validate(&self, hand: Handedness) -> Result<()> {
        self.algebra.validate()?;
        self.coalgebra.validate()?;
        if !entwine::shared_axiom_verdict(self, hand).pass {
            return Err(Error::SharedAxiomFailed);
        }
        Ok(())
    }
}

/// The lifting idempotent of a structure map `psi: V⊗A → A⊗V` over `A`,
/// acting on `A⊗V`: multiply a unit in through `psi`.
pub fn lifting_idempotent_raw(a: &Algebra, v_dim: usize, psi: &LinMap) -> Result<LinMap> {
    check_shape(psi, a.dim * v_dim, v_dim * a.dim, "structure map")?;
    let f = a.field;
    let e = chain(&[
        layer(f, MV, &[id(v_dim), m(&a.mult)]),
        layer(f, MV, &[m(psi), id(a.dim)]),
        layer(f, MV, &[m(&a.unit), id(v_dim), id(a.dim)]),
    ])?;
    if !e.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    Ok(e)
}

/// The lifting idempotent of a right-handed entwining datum, on `A⊗C`.
/// It is the identity exactly when `psi` inserts the unit strictly.
pub fn lifting_idempotent(d: &EntwiningDatum) -> Result<LinMap> {
    d.validate(Handedness::Right)?;
    lifting_idempotent_raw(&d.algebra, d.coalgebra.dim, &d.psi)
}

/// Lift a 2-cell component `r: V → A⊗W` through chosen splittings of the
/// lifting idempotents of its boundary 1-cells: compress
/// `(m⊗W) ∘ (A⊗r)` between `ι_V` and `π_W`.
pub fn lift_twocell(
    r: &LinMap,
    a: &Algebra,
    s_v: &Splitting,
    s_w: &Splitting,
) -> Result<LinMap> {
    let w_dim = s_w.e.rows() / a.dim;
    check_shape(r, a.dim * w_dim, s_v.e.rows() / a.dim, "two-cell component")?;
    let f = a.field;
    chain(&[
        s_w.pi.clone(),
        layer(f, MV, &[id(w_dim), m(&a.mult)]),
        layer(f, MV, &[m(r), id(a.dim)]),
        s_v.iota.clone(),
    ])
}

/// The compressed right action on the retract of a lifting idempotent:
/// `π ∘ (m⊗V) ∘ (A⊗ψ) ∘ (ι⊗A)`.
pub fn lifted_right_action(a: &Algebra, psi: &LinMap, split: &Splitting) -> Result<LinMap> {
    let f = a.field;
    let v_dim = split.e.rows() / a.dim;
    let act = chain(&[
        layer(f, MV, &[id(v_dim), m(&a.mult)]),
        layer(f, MV, &[m(psi), id(a.dim)]),
    ])?;
    split
        .pi
        .compose(&act)?
        .compose(&split.iota.kron(&LinMap::identity(f, a.dim))?)
}

/// A bimodule over a pair of algebras, with explicit actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    pub left: Algebra,
    pub right: Algebra,
    pub dim: usize,
    /// left.dim ⊗ dim → dim
    pub left_act: LinMap,
    /// dim ⊗ right.dim → dim
    pub right_act: LinMap,
}

impl Bimodule {
    pub fn new(
        left: Algebra,
        right: Algebra,
        dim: usize,
        left_act: LinMap,
        right_act: LinMap,
    ) -> Result<Self> {
        check_shape(&left_act, dim, left.dim * dim, "left action")?;
        check_shape(&right_act, dim, dim * right.dim, "right action")?;
        check_field(left.field, [&left_act, &right_act, &right.mult])?;
        Ok(Bimodule {
            left,
            right,
            dim,
            left_act,
            right_act,
        })
    }

    /// An algebra as a bimodule over itself.
    pub fn regular(a: &Algebra) -> Bimodule {
        Bimodule {
            left: a.clone(),
            right: a.clone(),
            dim: a.dim,
            left_act: a.mult.clone(),
            right_act: a.mult.clone(),
        }
    }

    /// A right module, with the base field acting trivially on the left.
    pub fn right_module(a: &Algebra, dim: usize, right_act: LinMap) -> Result<Bimodule> {
        Bimodule::new(
            Algebra::base(a.field),
            a.clone(),
            dim,
            LinMap::identity(a.field, dim),
            right_act,
        )
    }

    pub fn field(&self) -> FieldSpec {
        self.left.field
    }

    pub fn check(&self) -> Report {
        let f = self.field();
        let n = self.dim;
        let idn = LinMap::identity(f, n);
        let la = &self.left_act;
        let ra = &self.right_act;
        let mut rep = Report::new("bimodule");
        let idb = LinMap::identity(f, self.left.dim);
        let ida = LinMap::identity(f, self.right.dim);
        let lhs = la.compose(&self.left.mult.kron(&idn).unwrap()).unwrap();
        let rhs = la.compose(&idb.kron(la).unwrap()).unwrap();
        rep.push(Verdict::of_eq("bim.l.assoc", "left action associates", &lhs, &rhs));
        let ul = la.compose(&self.left.unit.kron(&idn).unwrap()).unwrap();
        rep.push(Verdict::of_eq("bim.l.unit", "left action is unital", &ul, &idn));
        let lhs = ra.compose(&idn.kron(&self.right.mult).unwrap()).unwrap();
        let rhs = ra.compose(&ra.kron(&ida).unwrap()).unwrap();
        rep.push(Verdict::of_eq("bim.r.assoc", "right action associates", &lhs, &rhs));
        let ur = ra.compose(&idn.kron(&self.right.unit).unwrap()).unwrap();
        rep.push(Verdict::of_eq("bim.r.unit", "right action is unital", &ur, &idn));
        let lhs = la.compose(&idb.kron(ra).unwrap()).unwrap();
        let rhs = ra.compose(&la.kron(&ida).unwrap()).unwrap();
        rep.push(Verdict::of_eq("bim.commute", "actions commute", &lhs, &rhs));
        rep
    }

    pub fn validate(&self) -> Result<()> {
        let rep = self.check();
        if rep.pass() {
            Ok(())
        } else {
            Err(Error::NotModule(
                rep.verdicts
                    .iter()
                    .find(|v| !v.pass)
                    .map(|v| v.tag.clone())
                    .unwrap_or_default(),
            ))
        }
    }
}

/// The tensor product of a right `A`-module part with a left `A`-module
/// part, presented as an explicit cokernel of the balancing relations,
/// with the induced outer actions.
#[derive(Clone, Debug)]
pub struct TensorOverA {
    pub quotient: Bimodule,
    /// X⊗Y → quotient
    pub q: LinMap,
    /// The canonical section of `q` on the chosen quotient basis.
    pub section: LinMap,
    /// X⊗A⊗Y → X⊗Y, the balancing relation map.
    pub relation: LinMap,
}

/// Horizontal composition over the middle algebra: the quotient of
/// `X ⊗ Y` by `x·a ⊗ y − x ⊗ a·y`.
pub fn tensor_over_a(x: &Bimodule, y: &Bimodule) -> Result<TensorOverA> {
    if x.right != y.left {
        return Err(Error::DimMismatch(
            "tensor product: middle algebras differ".into(),
        ));
    }
    x.validate()?;
    y.validate()?;
    let f = x.field();
    let idx = LinMap::identity(f, x.dim);
    let idy = LinMap::identity(f, y.dim);
    let relation = x
        .right_act
        .kron(&idy)?
        .sub(&idx.kron(&y.left_act)?)?;
    let ck = relation.cokernel();
    let q = ck.proj.clone();
    let section = ck.section();
    // Outer actions descend; assert it before inducing them.
    let left_on_xy = x.left_act.kron(&idy)?;
    let idb = LinMap::identity(f, x.left.dim);
    let well_left = q.compose(&left_on_xy)?.compose(&idb.kron(&relation)?)?;
    if !well_left.is_zero() {
        return Err(Error::WellDefinednessFailed(
            "left action does not descend".into(),
        ));
    }
    let right_on_xy = idx.kron(&y.right_act)?;
    let idd = LinMap::identity(f, y.right.dim);
    let well_right = q.compose(&right_on_xy)?.compose(&relation.kron(&idd)?)?;
    if !well_right.is_zero() {
        return Err(Error::WellDefinednessFailed(
            "right action does not descend".into(),
        ));
    }
    let left_act = q
        .compose(&left_on_xy)?
        .compose(&idb.kron(&section)?)?;
    let right_act = q
        .compose(&right_on_xy)?
        .compose(&section.kron(&idd)?)?;
    let quotient = Bimodule::new(
        x.left.clone(),
        y.right.clone(),
        ck.basis_dim,
        left_act,
        right_act,
    )?;
    Ok(TensorOverA {
        quotient,
        q,
        section,
        relation,
    })
}

/// A coring over `A`: an `(A, A)`-bimodule with a coassociative,
/// counital comultiplication taking values in the tensor square over `A`,
/// presented against the canonical quotient basis.
#[derive(Clone, Debug)]
pub struct Coring {
    pub base: Algebra,
    pub carrier: Bimodule,
    /// carrier ⊗_A carrier, fixed presentation.
    pub square: TensorOverA,
    /// carrier → square
    pub coproduct: LinMap,
    /// carrier → base
    pub counit: LinMap,
}

impl Coring {
    pub fn new(
        base: Algebra,
        carrier: Bimodule,
        coproduct: LinMap,
        counit: LinMap,
    ) -> Result<Self> {
        if carrier.left != base || carrier.right != base {
            return Err(Error::DimMismatch(
                "coring carrier must be a bimodule over the base".into(),
            ));
        }
        let square = tensor_over_a(&carrier, &carrier)?;
        check_shape(&coproduct, square.quotient.dim, carrier.dim, "coproduct")?;
        check_shape(&counit, base.dim, carrier.dim, "counit")?;
        Ok(Coring {
            base,
            carrier,
            square,
            coproduct,
            counit,
        })
    }

    /// All coring invariants: the carrier is a bimodule, coproduct and
    /// counit are bimodule maps, the coproduct is coassociative over the
    /// base, and both counit laws hold through the unitors.
    pub fn check(&self) -> Report {
        let f = self.base.field;
        let n = self.carrier.dim;
        let a = self.base.dim;
        let idn = LinMap::identity(f, n);
        let ida = LinMap::identity(f, a);
        let mut rep = Report::new("coring");
        rep.extend(self.carrier.check());

        // Counit is a bimodule map.
        let lhs = self.counit.compose(&self.carrier.left_act).unwrap();
        let rhs = self.base.mult.compose(&ida.kron(&self.counit).unwrap()).unwrap();
        rep.push(Verdict::of_eq("cor.counit.lmod", "counit is left linear", &lhs, &rhs));
        let lhs = self.counit.compose(&self.carrier.right_act).unwrap();
        let rhs = self.base.mult.compose(&self.counit.kron(&ida).unwrap()).unwrap();
        rep.push(Verdict::of_eq("cor.counit.rmod", "counit is right linear", &lhs, &rhs));

        // Coproduct is a bimodule map, against the induced actions on the
        // quotient.
        let lhs = self.coproduct.compose(&self.carrier.left_act).unwrap();
        let rhs = self
            .square
            .quotient
            .left_act
            .compose(&ida.kron(&self.coproduct).unwrap())
            .unwrap();
        rep.push(Verdict::of_eq("cor.coprod.lmod", "coproduct is left linear", &lhs, &rhs));
        let lhs = self.coproduct.compose(&self.carrier.right_act).unwrap();
        let rhs = self
            .square
            .quotient
            .right_act
            .compose(&self.coproduct.kron(&ida).unwrap())
            .unwrap();
        rep.push(Verdict::of_eq("cor.coprod.rmod", "coproduct is right linear", &lhs, &rhs));

        // Representative of the coproduct against the canonical section.
        let rep_co = self.square.section.compose(&self.coproduct).unwrap();

        // The triple tensor power over the base, as one quotient of N⊗N⊗N.
        let rel1 = self
            .carrier
            .right_act
            .kron(&idn.kron(&idn).unwrap())
            .unwrap()
            .sub(
                &idn.kron(&self.carrier.left_act.kron(&idn).unwrap())
                    .unwrap(),
            )
            .unwrap();
        let rel2 = idn
            .kron(&self.carrier.right_act.kron(&idn).unwrap())
            .unwrap()
            .sub(&idn.kron(&idn).unwrap().kron(&self.carrier.left_act).unwrap())
            .unwrap();
        let triple = rel1.hconcat(&rel2).unwrap().cokernel();

        // Induced maps into the triple power must kill the square's
        // relations: this is the well-definedness of the two legs.
        let leg_l = triple
            .proj
            .compose(&rep_co.kron(&idn).unwrap())
            .unwrap();
        let leg_r = triple
            .proj
            .compose(&idn.kron(&rep_co).unwrap())
            .unwrap();
        let wd_l = leg_l.compose(&self.square.relation).unwrap();
        rep.push(Verdict::of_eq(
            "cor.wd.l",
            "left coassociativity leg descends",
            &wd_l,
            &LinMap::zero(f, wd_l.rows(), wd_l.cols()),
        ));
        let wd_r = leg_r.compose(&self.square.relation).unwrap();
        rep.push(Verdict::of_eq(
            "cor.wd.r",
            "right coassociativity leg descends",
            &wd_r,
            &LinMap::zero(f, wd_r.rows(), wd_r.cols()),
        ));

        let lhs = leg_l.compose(&rep_co).unwrap();
        let rhs = leg_r.compose(&rep_co).unwrap();
        rep.push(Verdict::of_eq("cor.coassoc", "coassociativity over the base", &lhs, &rhs));

        // Counit laws through the unitors.
        let lhs = self
            .carrier
            .left_act
            .compose(&self.counit.kron(&idn).unwrap())
            .unwrap()
            .compose(&rep_co)
            .unwrap();
        rep.push(Verdict::of_eq("cor.counit.l", "left counit law", &lhs, &idn));
        let rhs = self
            .carrier
            .right_act
            .compose(&idn.kron(&self.counit).unwrap())
            .unwrap()
            .compose(&rep_co)
            .unwrap();
        rep.push(Verdict::of_eq("cor.counit.r", "right counit law", &rhs, &idn));
        rep
    }
}

/// A coring constructed from an entwining datum, together with the chosen
/// splitting of its lifting idempotent and the verification report.
#[derive(Clone, Debug)]
pub struct BuiltCoring {
    pub coring: Coring,
    pub splitting: Splitting,
    pub report: Report,
}

/// Build the lifted coring of an entwining datum. The carrier is the
/// canonical retract of the lifting idempotent with the compressed
/// actions; the comultiplication and counit are the lifts of the kind's
/// 2-cells; the report asserts the cell-level comonad axioms and every
/// coring invariant.
pub fn build_lifted_coring(d: &EntwiningDatum, kind: LiftKind) -> Result<BuiltCoring> {
    d.validate(Handedness::Right)?;
    entwine::require_kind(d, kind)?;
    let f = d.field();
    let a = &d.algebra;
    let c_dim = d.coalgebra.dim;
    let e = lifting_idempotent(d)?;
    let split = e.split_idempotent()?;
    let r_dim = split.retract_dim;

    let left_act = split
        .pi
        .compose(&layer(f, MV, &[id(c_dim), m(&a.mult)]))?
        .compose(&LinMap::identity(f, a.dim).kron(&split.iota)?)?;
    let right_act = lifted_right_action(a, &d.psi, &split)?;
    let carrier = Bimodule::new(a.clone(), a.clone(), r_dim, left_act, right_act)?;

    let d0 = entwine::comonad_comult_map(d, Handedness::Right, kind)?;
    let e0 = entwine::comonad_counit_map(d, Handedness::Right, kind)?;

    // Counit: lift of the counit 2-cell against the trivial splitting of
    // the identity 1-cell.
    let counit = lift_twocell(&e0, a, &split, &Splitting::trivial(f, a.dim))?;

    // Coproduct: push the comultiplication 2-cell into the tensor square
    // through `a⊗c⊗c' ↦ q(π(a⊗c) ⊗ π(1⊗c'))`.
    let square = tensor_over_a(&carrier, &carrier)?;
    let pi_unit = split
        .pi
        .compose(&a.unit.kron(&LinMap::identity(f, c_dim))?)?;
    let phi = square
        .q
        .compose(&split.pi.kron(&pi_unit)?)?;
    // Reassociate A⊗C⊗C as (A⊗C)⊗C for the first factor of phi.
    let coproduct = phi
        .compose(&chain(&[
            layer(f, MV, &[id(c_dim), id(c_dim), m(&a.mult)]),
            layer(f, MV, &[m(&d0), id(a.dim)]),
        ])?)?
        .compose(&split.iota)?;

    let coring = Coring::new(a.clone(), carrier, coproduct, counit)?;

    let mut report = Report::new("lifted coring");
    report.extend(entwine::emw_comonad_report(d, kind, Handedness::Right)?);
    report.extend(coring.check());
    if !report.pass() {
        return Err(Error::WellDefinednessFailed(
            report
                .verdicts
                .iter()
                .find(|v| !v.pass)
                .map(|v| v.tag.clone())
                .unwrap_or_default(),
        ));
    }
    Ok(BuiltCoring {
        coring,
        splitting: split,
        report,
    })
}

/// Recover the structure map from a splitting of the lifting idempotent
/// and the compressed right action: `ψ(c⊗a) = ι(π(1⊗c)·a)`. Invariant
/// under replacing the splitting by an isomorphic one.
pub fn recover_psi(
    a: &Algebra,
    c_dim: usize,
    split: &Splitting,
    right_act: &LinMap,
) -> Result<LinMap> {
    let f = a.field;
    check_shape(
        right_act,
        split.retract_dim,
        split.retract_dim * a.dim,
        "compressed right action",
    )?;
    let pi_unit = split
        .pi
        .compose(&a.unit.kron(&LinMap::identity(f, c_dim))?)?;
    split
        .iota
        .compose(right_act)?
        .compose(&pi_unit.kron(&LinMap::identity(f, a.dim))?)
}

/// The weak wreath data of a monad in the cell calculus, re-read on module
/// categories, with the canonical retract of its composite pre-monad.
#[derive(Clone, Debug)]
pub struct WreathModuleContext {
    pub base: Algebra,
    pub s_dim: usize,
    /// S⊗A → A⊗S
    pub psi: LinMap,
    /// S⊗S → A⊗S
    pub nu: LinMap,
    /// 1 → A⊗S
    pub theta: LinMap,
    /// The composite pre-monad on A⊗S.
    pub premonad: PreMonad,
    pub retract: Algebra,
    pub split: Splitting,
}

impl WreathModuleContext {
    pub fn from_wreath(w: &MonadInEMW) -> Result<Self> {
        w.validate()?;
        let s = w.s_dim;
        let t = w.base.dim;
        let psi = mirror(&w.psi, &[t, s], &[s, t]);
        let nu = mirror(&w.nu, &[s, s], &[s, t]);
        let theta = mirror(&w.theta, &[1], &[s, t]);
        let (p_cells, _) = wreath_to_premonad(w)?;
        let mult = mirror(&p_cells.mult, &[s, t, s, t], &[s, t]);
        let premonad = PreMonad::new(w.base.field, s * t, mult, theta.clone())?;
        let (retract, split) = premonad_retract(&premonad)?;
        Ok(WreathModuleContext {
            base: w.base.clone(),
            s_dim: s,
            psi,
            nu,
            theta,
            premonad,
            retract,
            split,
        })
    }
}

/// A module with compatible actions of the base monad and of the wreath
/// space: the two-action side of the module correspondence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedModuleDatum {
    pub w_dim: usize,
    /// W⊗A → W
    pub rho: LinMap,
    /// W⊗S → W
    pub lam: LinMap,
}

fn check_base_action(ctx: &WreathModuleContext, w_dim: usize, rho: &LinMap) -> Result<()> {
    let f = ctx.base.field;
    let idw = LinMap::identity(f, w_dim);
    let unital = rho.compose(&idw.kron(&ctx.base.unit)?)?;
    if unital != idw {
        return Err(Error::NotModule("base action is not unital".into()));
    }
    let lhs = rho.compose(&idw.kron(&ctx.base.mult)?)?;
    let rhs = rho.compose(&rho.kron(&LinMap::identity(f, ctx.base.dim))?)?;
    if lhs != rhs {
        return Err(Error::NotModule("base action is not associative".into()));
    }
    Ok(())
}

/// Validity of the two-action side: the base action laws, the
/// intertwining 3.4, and the multiplicativity/unit laws of the wreath
/// action through the base action.
pub fn check_lifted_module(ctx: &WreathModuleContext, d: &LiftedModuleDatum) -> Result<()> {
    let f = ctx.base.field;
    let s = ctx.s_dim;
    let t = ctx.base.dim;
    let w = d.w_dim;
    check_shape(&d.rho, w, w * t, "base action")?;
    check_shape(&d.lam, w, w * s, "wreath action")?;
    check_base_action(ctx, w, &d.rho)?;
    let rho = &d.rho;
    let lam = &d.lam;
    let lhs = chain(&[rho.clone(), layer(f, MV, &[id(t), m(lam)])])?;
    let rhs = chain(&[
        lam.clone(),
        layer(f, MV, &[id(s), m(rho)]),
        layer(f, MV, &[m(&ctx.psi), id(w)]),
    ])?;
    if lhs != rhs {
        return Err(Error::AxiomFailed("3.4".into()));
    }
    let lhs = chain(&[lam.clone(), layer(f, MV, &[id(s), m(lam)])])?;
    let rhs = chain(&[
        lam.clone(),
        layer(f, MV, &[id(s), m(rho)]),
        layer(f, MV, &[m(&ctx.nu), id(w)]),
    ])?;
    if lhs != rhs {
        return Err(Error::AxiomFailed("lambda.mult".into()));
    }
    let lhs = chain(&[
        lam.clone(),
        layer(f, MV, &[id(s), m(rho)]),
        layer(f, MV, &[m(&ctx.theta), id(w)]),
    ])?;
    if lhs != LinMap::identity(f, w) {
        return Err(Error::AxiomFailed("lambda.unit".into()));
    }
    Ok(())
}

/// Validity of an action of the retract monad.
pub fn check_retract_action(
    ctx: &WreathModuleContext,
    w_dim: usize,
    gamma: &LinMap,
) -> Result<()> {
    let f = ctx.base.field;
    let r = ctx.retract.dim;
    check_shape(gamma, w_dim, w_dim * r, "retract action")?;
    let idw = LinMap::identity(f, w_dim);
    if gamma.compose(&idw.kron(&ctx.retract.unit)?)? != idw {
        return Err(Error::NotModule("retract action is not unital".into()));
    }
    let lhs = gamma.compose(&idw.kron(&ctx.retract.mult)?)?;
    let rhs = gamma.compose(&gamma.kron(&LinMap::identity(f, r))?)?;
    if lhs != rhs {
        return Err(Error::NotModule("retract action is not associative".into()));
    }
    Ok(())
}

/// From an action of the retract monad to the two-action datum (axiom
/// 3.5): split the retract action into the base part and the wreath part.
pub fn gamma_to_rholambda(
    ctx: &WreathModuleContext,
    w_dim: usize,
    gamma: &LinMap,
) -> Result<LiftedModuleDatum> {
    check_retract_action(ctx, w_dim, gamma)?;
    let f = ctx.base.field;
    let s = ctx.s_dim;
    let t = ctx.base.dim;
    let pi_w = |x: &LinMap| -> Result<LinMap> {
        gamma.compose(&LinMap::identity(f, w_dim).kron(&ctx.split.pi.compose(x)?)?)
    };
    let rho_inner = chain(&[
        layer(f, MV, &[id(s), m(&ctx.base.mult)]),
        layer(f, MV, &[m(&ctx.theta), id(t)]),
    ])?;
    let rho = pi_w(&rho_inner)?;
    let lam_inner = layer(f, MV, &[id(s), m(&ctx.base.unit)]);
    let lam = pi_w(&lam_inner)?;
    let datum = LiftedModuleDatum { w_dim, rho, lam };
    check_lifted_module(ctx, &datum)?;
    Ok(datum)
}

/// From the two-action datum back to the retract action (axiom 3.6):
/// `γ = λ ∗ sϱ ∗ ιW`.
pub fn rholambda_to_gamma(ctx: &WreathModuleContext, d: &LiftedModuleDatum) -> Result<LinMap> {
    check_lifted_module(ctx, d)?;
    let f = ctx.base.field;
    let s = ctx.s_dim;
    let gamma = chain(&[
        d.lam.clone(),
        layer(f, MV, &[id(s), m(&d.rho)]),
        layer(f, MV, &[m(&ctx.split.iota), id(d.w_dim)]),
    ])?;
    check_retract_action(ctx, d.w_dim, &gamma)?;
    Ok(gamma)
}

/// Instance-level dichotomy for a plain map `ω: V → W` between the spaces
/// of two 1-cells over the same algebra: the compressed map
/// `π_W ∘ (A⊗ω) ∘ ι_V` is an intertwiner of the compressed actions that
/// absorbs the splitting on the mono (iota) or epi (pi) side exactly when
/// the corresponding cell-calculus membership holds.
pub fn weak_lifting_dichotomy(
    a: &Algebra,
    psi_v: &LinMap,
    psi_w: &LinMap,
    omega: &LinMap,
) -> Result<(bool, bool)> {
    let f = a.field;
    let v_dim = omega.cols();
    let w_dim = omega.rows();
    let e_v = lifting_idempotent_raw(a, v_dim, psi_v)?;
    let e_w = lifting_idempotent_raw(a, w_dim, psi_w)?;
    let s_v = e_v.split_idempotent()?;
    let s_w = e_w.split_idempotent()?;
    let act_v = lifted_right_action(a, psi_v, &s_v)?;
    let act_w = lifted_right_action(a, psi_w, &s_w)?;
    let ida = LinMap::identity(f, a.dim);
    let omega_v = ida.kron(omega)?;
    let compressed = s_w.pi.compose(&omega_v)?.compose(&s_v.iota)?;
    let linear = compressed.compose(&act_v)?
        == act_w.compose(&compressed.kron(&ida)?)?;
    let iota_side = linear
        && s_w.iota.compose(&compressed)? == omega_v.compose(&s_v.iota)?;
    let pi_side = linear
        && compressed.compose(&s_v.pi)? == s_w.pi.compose(&omega_v)?;
    Ok((iota_side, pi_side))
}

/// Compare the canonical echelon splitting of a composite 1-cell's
/// lifting idempotent with the splitting assembled from the factors'
/// chosen splittings. The two are isomorphic; whether they coincide is
/// recorded, not forced.
#[derive(Clone, Debug)]
pub struct SplittingComparison {
    pub agree: bool,
    /// Isomorphism from the assembled retract to the canonical one.
    pub iso: LinMap,
}

pub fn composite_splitting_comparison(
    a: &Algebra,
    psi_v: &LinMap,
    psi_vp: &LinMap,
) -> Result<SplittingComparison> {
    let f = a.field;
    let v = psi_v.cols() / a.dim;
    let vp = psi_vp.cols() / a.dim;
    // Composite structure map on the module side: the composite space is
    // V⊗V' (inner factor applied first).
    let psi_comp = chain(&[
        layer(f, MV, &[id(vp), m(psi_v)]),
        layer(f, MV, &[m(psi_vp), id(v)]),
    ])?;
    let e_comp = lifting_idempotent_raw(a, v * vp, &psi_comp)?;
    let canonical = e_comp.split_idempotent()?;

    let s_v = lifting_idempotent_raw(a, v, psi_v)?.split_idempotent()?;
    let act_v = lifted_right_action(a, psi_v, &s_v)?;
    // The outer idempotent acts on R_V ⊗ V' through the compressed action
    // of the inner retract.
    let e_outer = chain(&[
        layer(f, MV, &[id(vp), m(&act_v)]),
        layer(f, MV, &[m(psi_vp), id(s_v.retract_dim)]),
        layer(f, MV, &[m(&a.unit), id(vp), id(s_v.retract_dim)]),
    ])?;
    if !e_outer.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    let s_outer = e_outer.split_idempotent()?;
    let idvp = LinMap::identity(f, vp);
    let iota_pref = s_v.iota.kron(&idvp)?.compose(&s_outer.iota)?;
    let pi_pref = s_outer.pi.compose(&s_v.pi.kron(&idvp)?)?;
    // The assembled pair splits the same idempotent.
    if iota_pref.compose(&pi_pref)? != e_comp {
        return Err(Error::PreconditionFailed(
            "assembled splitting does not factor the composite idempotent".into(),
        ));
    }
    let iso = canonical.pi.compose(&iota_pref)?;
    let inv = pi_pref.compose(&canonical.iota)?;
    let idr = LinMap::identity(f, canonical.retract_dim);
    if iso.compose(&inv)? != idr || inv.compose(&iso)? != idr {
        return Err(Error::PreconditionFailed(
            "splitting comparison is not invertible".into(),
        ));
    }
    let agree = iota_pref == canonical.iota && pi_pref == canonical.pi;
    Ok(SplittingComparison { agree, iso })
}
