//! Structure-constant presentations: algebras (monads), coalgebras
//! (comonads), pre-monads with their canonical retract monads, and weak
//! bialgebras, plus generators for the example families.

use serde::{Deserialize, Serialize};

use crate::linalg::{flip, FieldSpec, LinMap, Splitting};
use crate::report::{Report, Verdict};
use crate::{Error, Result};

/// An associative unital algebra: the vector-space incarnation of a monad.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub field: FieldSpec,
    pub dim: usize,
    /// dim² → dim
    pub mult: LinMap,
    /// 1 → dim
    pub unit: LinMap,
}

impl Algebra {
    pub fn new(field: FieldSpec, dim: usize, mult: LinMap, unit: LinMap) -> Result<Self> {
        check_shape(&mult, dim, dim * dim, "algebra multiplication")?;
        check_shape(&unit, dim, 1, "algebra unit")?;
        check_field(field, [&mult, &unit])?;
        Ok(Algebra {
            field,
            dim,
            mult,
            unit,
        })
    }

    /// Verdicts for associativity and both unit laws.
    pub fn check(&self) -> Report {
        let id = LinMap::identity(self.field, self.dim);
        let mut rep = Report::new("algebra");
        let lhs = comp3(&self.mult, &self.mult.kron(&id).unwrap());
        let rhs = comp3(&self.mult, &id.kron(&self.mult).unwrap());
        rep.push(Verdict::of_eq("alg.assoc", "associativity", &lhs, &rhs));
        let ul = comp3(&self.mult, &self.unit.kron(&id).unwrap());
        rep.push(Verdict::of_eq("alg.unit.l", "left unit law", &ul, &id));
        let ur = comp3(&self.mult, &id.kron(&self.unit).unwrap());
        rep.push(Verdict::of_eq("alg.unit.r", "right unit law", &ur, &id));
        rep
    }

    pub fn validate(&self) -> Result<()> {
        let rep = self.check();
        if rep.pass() {
            Ok(())
        } else {
            Err(Error::AxiomFailed(first_fail(&rep)))
        }
    }

    /// The base field viewed as a one-dimensional algebra.
    pub fn base(field: FieldSpec) -> Algebra {
        Algebra {
            field,
            dim: 1,
            mult: LinMap::identity(field, 1),
            unit: LinMap::identity(field, 1),
        }
    }
}

/// A coassociative counital coalgebra: the vector-space incarnation of a
/// comonad.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    pub field: FieldSpec,
    pub dim: usize,
    /// dim → dim²
    pub comult: LinMap,
    /// dim → 1
    pub counit: LinMap,
}

impl Coalgebra {
    pub fn new(field: FieldSpec, dim: usize, comult: LinMap, counit: LinMap) -> Result<Self> {
        check_shape(&comult, dim * dim, dim, "coalgebra comultiplication")?;
        check_shape(&counit, 1, dim, "coalgebra counit")?;
        check_field(field, [&comult, &counit])?;
        Ok(Coalgebra {
            field,
            dim,
            comult,
            counit,
        })
    }

    pub fn check(&self) -> Report {
        let id = LinMap::identity(self.field, self.dim);
        let mut rep = Report::new("coalgebra");
        let lhs = comp3(&self.comult.kron(&id).unwrap(), &self.comult);
        let rhs = comp3(&id.kron(&self.comult).unwrap(), &self.comult);
        rep.push(Verdict::of_eq("coa.coassoc", "coassociativity", &lhs, &rhs));
        let cl = comp3(&self.counit.kron(&id).unwrap(), &self.comult);
        rep.push(Verdict::of_eq("coa.counit.l", "left counit law", &cl, &id));
        let cr = comp3(&id.kron(&self.counit).unwrap(), &self.comult);
        rep.push(Verdict::of_eq("coa.counit.r", "right counit law", &cr, &id));
        rep
    }

    pub fn validate(&self) -> Result<()> {
        let rep = self.check();
        if rep.pass() {
            Ok(())
        } else {
            Err(Error::AxiomFailed(first_fail(&rep)))
        }
    }

    /// The base field viewed as a one-dimensional coalgebra.
    pub fn base(field: FieldSpec) -> Coalgebra {
        Coalgebra {
            field,
            dim: 1,
            comult: LinMap::identity(field, 1),
            counit: LinMap::identity(field, 1),
        }
    }
}

/// A multiplication and unit that are associative but only weakly unital:
/// axioms 2.8–2.11.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreMonad {
    pub field: FieldSpec,
    pub dim: usize,
    pub mult: LinMap,
    pub unit: LinMap,
}

impl PreMonad {
    pub fn new(field: FieldSpec, dim: usize, mult: LinMap, unit: LinMap) -> Result<Self> {
        check_shape(&mult, dim, dim * dim, "pre-monad multiplication")?;
        check_shape(&unit, dim, 1, "pre-monad unit")?;
        check_field(field, [&mult, &unit])?;
        Ok(PreMonad {
            field,
            dim,
            mult,
            unit,
        })
    }

    /// Four verdicts, one per axiom 2.8–2.11.
    pub fn check(&self) -> Report {
        let n = self.dim;
        let id = LinMap::identity(self.field, n);
        let id2 = LinMap::identity(self.field, n * n);
        let mu = &self.mult;
        let eta = &self.unit;
        let mut rep = Report::new("pre-monad");
        let lhs = comp3(mu, &mu.kron(&id).unwrap());
        let rhs = comp3(mu, &id.kron(mu).unwrap());
        rep.push(Verdict::of_eq("2.8", "associativity", &lhs, &rhs));
        let l9 = comp3(mu, &eta.kron(&id).unwrap());
        let r9 = comp3(mu, &id.kron(eta).unwrap());
        rep.push(Verdict::of_eq("2.9", "one-sided units agree", &l9, &r9));
        let l10 = comp3(mu, &eta.kron(eta).unwrap());
        rep.push(Verdict::of_eq("2.10", "unit is multiplicative", &l10, eta));
        let l11 = comp3(
            &comp3(mu, &mu.kron(&id).unwrap()),
            &eta.kron(&id2).unwrap(),
        );
        rep.push(Verdict::of_eq(
            "2.11",
            "unit normalizes multiplication",
            &l11,
            mu,
        ));
        rep
    }

    pub fn validate(&self) -> Result<()> {
        let rep = self.check();
        if rep.pass() {
            Ok(())
        } else {
            Err(Error::NotPreMonad(first_fail(&rep)))
        }
    }

    /// Every algebra is a pre-monad.
    pub fn from_algebra(a: &Algebra) -> PreMonad {
        PreMonad {
            field: a.field,
            dim: a.dim,
            mult: a.mult.clone(),
            unit: a.unit.clone(),
        }
    }
}

/// Normalize a weakly unital multiplication into a pre-monad:
/// `mult' = mult ∘ (mult ⊗ id) ∘ (unit ⊗ id ⊗ id)` and
/// `unit' = mult ∘ (unit ⊗ unit)`.
///
/// Preconditions: `mult` associative, and the three one-sided unit
/// expressions agree: `mult∘(unit⊗id) = mult∘(id⊗unit) =
/// mult∘(mult⊗id)∘(unit⊗unit⊗id)`.
pub fn premonad_normalize(
    field: FieldSpec,
    dim: usize,
    mult: &LinMap,
    unit: &LinMap,
) -> Result<PreMonad> {
    check_shape(mult, dim, dim * dim, "multiplication")?;
    check_shape(unit, dim, 1, "unit")?;
    let id = LinMap::identity(field, dim);
    let id2 = LinMap::identity(field, dim * dim);
    let assoc_l = comp3(mult, &mult.kron(&id).unwrap());
    let assoc_r = comp3(mult, &id.kron(mult).unwrap());
    if assoc_l != assoc_r {
        return Err(Error::PreconditionFailed(
            "multiplication is not associative".into(),
        ));
    }
    let e_l = comp3(mult, &unit.kron(&id).unwrap());
    let e_r = comp3(mult, &id.kron(unit).unwrap());
    if e_l != e_r {
        return Err(Error::PreconditionFailed(
            "left and right unit insertions disagree".into(),
        ));
    }
    let uu_id = unit.kron(unit).unwrap().kron(&id).unwrap();
    let e_n = comp3(&comp3(mult, &mult.kron(&id).unwrap()), &uu_id);
    if e_l != e_n {
        return Err(Error::PreconditionFailed(
            "unit insertion is not idempotently normalized".into(),
        ));
    }
    let mult_n = comp3(
        &comp3(mult, &mult.kron(&id).unwrap()),
        &unit.kron(&id2).unwrap(),
    );
    let unit_n = comp3(mult, &unit.kron(unit).unwrap());
    let p = PreMonad::new(field, dim, mult_n, unit_n)?;
    debug_assert!(p.check().pass());
    Ok(p)
}

/// The canonical retract monad of a pre-monad: split the idempotent
/// `mult ∘ (unit ⊗ id)` and compress the multiplication and unit.
pub fn premonad_retract(p: &PreMonad) -> Result<(Algebra, Splitting)> {
    p.validate()?;
    let id = LinMap::identity(p.field, p.dim);
    let e = comp3(&p.mult, &p.unit.kron(&id).unwrap());
    let split = e.split_idempotent()?;
    let mult = split
        .pi
        .compose(&p.mult)?
        .compose(&split.iota.kron(&split.iota)?)?;
    let unit = split.pi.compose(&p.unit)?;
    let monad = Algebra::new(p.field, split.retract_dim, mult, unit)?;
    debug_assert!(monad.check().pass());
    Ok((monad, split))
}

/// An algebra and a coalgebra on one space whose comultiplication is
/// multiplicative and whose unit/counit compatibilities are weakened.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakBialgebra {
    pub field: FieldSpec,
    pub dim: usize,
    pub mult: LinMap,
    pub unit: LinMap,
    pub comult: LinMap,
    pub counit: LinMap,
}

impl WeakBialgebra {
    pub fn new(
        field: FieldSpec,
        dim: usize,
        mult: LinMap,
        unit: LinMap,
        comult: LinMap,
        counit: LinMap,
    ) -> Result<Self> {
        check_shape(&mult, dim, dim * dim, "multiplication")?;
        check_shape(&unit, dim, 1, "unit")?;
        check_shape(&comult, dim * dim, dim, "comultiplication")?;
        check_shape(&counit, 1, dim, "counit")?;
        check_field(field, [&mult, &unit, &comult, &counit])?;
        Ok(WeakBialgebra {
            field,
            dim,
            mult,
            unit,
            comult,
            counit,
        })
    }

    pub fn algebra(&self) -> Algebra {
        Algebra {
            field: self.field,
            dim: self.dim,
            mult: self.mult.clone(),
            unit: self.unit.clone(),
        }
    }

    pub fn coalgebra(&self) -> Coalgebra {
        Coalgebra {
            field: self.field,
            dim: self.dim,
            comult: self.comult.clone(),
            counit: self.counit.clone(),
        }
    }

    /// Algebra and coalgebra verdicts first, then the five compatibility
    /// identities: multiplicativity of the comultiplication and the two
    /// weakened identities on each of the unit and counit sides.
    pub fn check(&self) -> Report {
        let f = self.field;
        let n = self.dim;
        let id = LinMap::identity(f, n);
        let fl = flip(f, n, n);
        let mut rep = Report::new("weak bialgebra");
        rep.extend(self.algebra().check());
        rep.extend(self.coalgebra().check());

        let mm = self.mult.kron(&self.mult).unwrap();
        let dd = self.comult.kron(&self.comult).unwrap();
        let mid_flip = id.kron(&fl).unwrap().kron(&id).unwrap();
        let mid_mult = id.kron(&self.mult).unwrap().kron(&id).unwrap();

        // Comultiplication is multiplicative.
        let lhs = comp3(&self.comult, &self.mult);
        let rhs = comp3(&comp3(&mm, &mid_flip), &dd);
        rep.push(Verdict::of_eq(
            "WBA.1",
            "comultiplication is multiplicative",
            &lhs,
            &rhs,
        ));

        // Weak unit compatibilities: both bracketings of the doubled unit
        // coproduct agree with the triple coproduct of the unit.
        let uu = self.unit.kron(&self.unit).unwrap();
        let ddu = comp3(&dd, &uu);
        let triple = comp3(
            &self.comult.kron(&id).unwrap(),
            &comp3(&self.comult, &self.unit),
        );
        let left = comp3(&mid_mult, &ddu);
        rep.push(Verdict::of_eq(
            "WBA.2a",
            "weak unit coproduct, direct order",
            &left,
            &triple,
        ));
        let right = comp3(&mid_mult, &comp3(&mid_flip, &ddu));
        rep.push(Verdict::of_eq(
            "WBA.2b",
            "weak unit coproduct, crossed order",
            &right,
            &triple,
        ));

        // Weak counit compatibilities.
        let ee = self.counit.kron(&self.counit).unwrap();
        let du = comp3(&self.comult, &self.unit);
        let insert = id.kron(&du).unwrap().kron(&id).unwrap();
        let mid = comp3(&self.counit, &self.mult);
        let left = comp3(&comp3(&ee, &mm), &insert);
        rep.push(Verdict::of_eq(
            "WBA.3a",
            "weak counit, direct order",
            &left,
            &mid,
        ));
        let right = comp3(&comp3(&ee, &mm), &comp3(&mid_flip, &insert));
        rep.push(Verdict::of_eq(
            "WBA.3b",
            "weak counit, crossed order",
            &right,
            &mid,
        ));
        rep
    }

    pub fn is_weak_bialgebra(&self) -> bool {
        self.check().pass()
    }
}

/// A finite group given by its Cayley table: `table[i][j]` is the product
/// of elements `i` and `j`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub table: Vec<Vec<usize>>,
}

impl GroupPresentation {
    pub fn cyclic(n: usize) -> GroupPresentation {
        let table = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        GroupPresentation { table }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn validate(&self) -> Result<usize> {
        let n = self.order();
        if n == 0 {
            return Err(Error::InvalidPresentation("empty group table".into()));
        }
        for row in &self.table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::InvalidPresentation("malformed group table".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|i| self.table[e][i] == i && self.table[i][e] == i))
            .ok_or_else(|| Error::InvalidPresentation("group table has no identity".into()))?;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.table[self.table[i][j]][k] != self.table[i][self.table[j][k]] {
                        return Err(Error::InvalidPresentation(
                            "group table is not associative".into(),
                        ));
                    }
                }
            }
        }
        for i in 0..n {
            if !(0..n).any(|j| self.table[i][j] == identity && self.table[j][i] == identity) {
                return Err(Error::InvalidPresentation(
                    "group table has no inverses".into(),
                ));
            }
        }
        Ok(identity)
    }
}

/// The group algebra with grouplike comultiplication; a bialgebra.
pub fn group_algebra(field: FieldSpec, g: &GroupPresentation) -> Result<WeakBialgebra> {
    let identity = g.validate()?;
    let n = g.order();
    let mut mult = LinMap::zero(field, n, n * n);
    for i in 0..n {
        for j in 0..n {
            mult.set(g.table[i][j], i * n + j, field.one());
        }
    }
    let unit = LinMap::basis_col(field, n, identity);
    let mut comult = LinMap::zero(field, n * n, n);
    for i in 0..n {
        comult.set(i * n + i, i, field.one());
    }
    let counit = LinMap::from_fn(field, 1, n, |_, _| field.one());
    let h = WeakBialgebra::new(field, n, mult, unit, comult, counit)?;
    debug_assert!(h.is_weak_bialgebra());
    Ok(h)
}

/// A finite groupoid: objects, arrows with sources and targets, and the
/// partial composition table (`compose[g][h]` is `g ∘ h`, defined exactly
/// when the target of `h` is the source of `g`).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupoidPresentation {
    pub objects: usize,
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    pub compose: Vec<Vec<Option<usize>>>,
    /// The identity arrow of each object.
    pub identity: Vec<usize>,
}

impl GroupoidPresentation {
    pub fn arrows(&self) -> usize {
        self.src.len()
    }

    /// Objects only, identity arrows only.
    pub fn discrete(objects: usize) -> GroupoidPresentation {
        let ids: Vec<usize> = (0..objects).collect();
        let compose = (0..objects)
            .map(|g| {
                (0..objects)
                    .map(|h| if g == h { Some(g) } else { None })
                    .collect()
            })
            .collect();
        GroupoidPresentation {
            objects,
            src: ids.clone(),
            tgt: ids.clone(),
            compose,
            identity: ids,
        }
    }

    /// The pair groupoid: one arrow `j → i` for every ordered pair `(i, j)`.
    pub fn pair(objects: usize) -> GroupoidPresentation {
        let n = objects;
        let arrow = |i: usize, j: usize| i * n + j; // j → i
        let mut src = vec![0; n * n];
        let mut tgt = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                src[arrow(i, j)] = j;
                tgt[arrow(i, j)] = i;
            }
        }
        let compose = (0..n * n)
            .map(|g| {
                (0..n * n)
                    .map(|h| {
                        if tgt[h] == src[g] {
                            Some(arrow(tgt[g], src[h]))
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect();
        let identity = (0..n).map(|i| arrow(i, i)).collect();
        GroupoidPresentation {
            objects,
            src,
            tgt,
            compose,
            identity,
        }
    }

    /// A group regarded as a one-object groupoid.
    pub fn from_group(g: &GroupPresentation) -> Result<GroupoidPresentation> {
        let identity = g.validate()?;
        let n = g.order();
        Ok(GroupoidPresentation {
            objects: 1,
            src: vec![0; n],
            tgt: vec![0; n],
            compose: g
                .table
                .iter()
                .map(|row| row.iter().map(|&x| Some(x)).collect())
                .collect(),
            identity: vec![identity],
        })
    }

    pub fn disjoint_union(&self, other: &GroupoidPresentation) -> GroupoidPresentation {
        let off_obj = self.objects;
        let off_arr = self.arrows();
        let mut src = self.src.clone();
        let mut tgt = self.tgt.clone();
        src.extend(other.src.iter().map(|s| s + off_obj));
        tgt.extend(other.tgt.iter().map(|t| t + off_obj));
        let total = off_arr + other.arrows();
        let compose = (0..total)
            .map(|g| {
                (0..total)
                    .map(|h| match (g < off_arr, h < off_arr) {
                        (true, true) => self.compose[g][h],
                        (false, false) => {
                            other.compose[g - off_arr][h - off_arr].map(|x| x + off_arr)
                        }
                        _ => None,
                    })
                    .collect()
            })
            .collect();
        let mut identity = self.identity.clone();
        identity.extend(other.identity.iter().map(|i| i + off_arr));
        GroupoidPresentation {
            objects: off_obj + other.objects,
            src,
            tgt,
            compose,
            identity,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.arrows();
        let bad = |msg: &str| Err(Error::InvalidPresentation(msg.into()));
        if self.tgt.len() != n || self.compose.len() != n {
            return bad("arrow lists have inconsistent lengths");
        }
        if self.identity.len() != self.objects {
            return bad("one identity arrow per object is required");
        }
        if self.src.iter().chain(&self.tgt).any(|&x| x >= self.objects) {
            return bad("arrow endpoint out of range");
        }
        for g in 0..n {
            if self.compose[g].len() != n {
                return bad("malformed composition table");
            }
            for h in 0..n {
                match self.compose[g][h] {
                    Some(k) => {
                        if self.tgt[h] != self.src[g]
                            || k >= n
                            || self.src[k] != self.src[h]
                            || self.tgt[k] != self.tgt[g]
                        {
                            return bad("composite defined for a non-composable pair");
                        }
                    }
                    None => {
                        if self.tgt[h] == self.src[g] {
                            return bad("composite missing for a composable pair");
                        }
                    }
                }
            }
        }
        for (x, &e) in self.identity.iter().enumerate() {
            if e >= n || self.src[e] != x || self.tgt[e] != x {
                return bad("identity arrow has wrong endpoints");
            }
            for g in 0..n {
                if self.src[g] == x && self.compose[g][e] != Some(g) {
                    return bad("identity is not right neutral");
                }
                if self.tgt[g] == x && self.compose[e][g] != Some(g) {
                    return bad("identity is not left neutral");
                }
            }
        }
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    let l = self.compose[h][k].and_then(|hk| self.compose[g][hk]);
                    let r = self.compose[g][h].and_then(|gh| self.compose[gh][k]);
                    if l != r {
                        return bad("composition is not associative");
                    }
                }
            }
        }
        for g in 0..n {
            let has_inverse = (0..n).any(|h| {
                self.compose[g][h] == Some(self.identity[self.tgt[g]])
                    && self.compose[h][g] == Some(self.identity[self.src[g]])
            });
            if !has_inverse {
                return bad("an arrow has no inverse");
            }
        }
        Ok(())
    }
}

/// The groupoid algebra with grouplike comultiplication; the standard
/// family of weak bialgebras that are not bialgebras.
pub fn groupoid_algebra(field: FieldSpec, g: &GroupoidPresentation) -> Result<WeakBialgebra> {
    g.validate()?;
    let n = g.arrows();
    let mut mult = LinMap::zero(field, n, n * n);
    for a in 0..n {
        for b in 0..n {
            if let Some(c) = g.compose[a][b] {
                mult.set(c, a * n + b, field.one());
            }
        }
    }
    let mut unit = LinMap::zero(field, n, 1);
    for &e in &g.identity {
        unit.set(e, 0, field.one());
    }
    let mut comult = LinMap::zero(field, n * n, n);
    for a in 0..n {
        comult.set(a * n + a, a, field.one());
    }
    let counit = LinMap::from_fn(field, 1, n, |_, _| field.one());
    let h = WeakBialgebra::new(field, n, mult, unit, comult, counit)?;
    debug_assert!(h.is_weak_bialgebra());
    Ok(h)
}

/// The comatrix coalgebra on an n×n coordinate space.
pub fn matrix_coalgebra(field: FieldSpec, n: usize) -> Coalgebra {
    let dim = n * n;
    let idx = |i: usize, j: usize| i * n + j;
    let mut comult = LinMap::zero(field, dim * dim, dim);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                comult.set(idx(i, k) * dim + idx(k, j), idx(i, j), field.one());
            }
        }
    }
    let counit = LinMap::from_fn(field, 1, dim, |_, c| {
        if c / n == c % n {
            field.one()
        } else {
            field.zero()
        }
    });
    let c = Coalgebra {
        field,
        dim,
        comult,
        counit,
    };
    debug_assert!(c.check().pass());
    c
}

/// Dual coalgebra of an algebra under the standard basis pairing.
pub fn dual_coalgebra(a: &Algebra) -> Coalgebra {
    Coalgebra {
        field: a.field,
        dim: a.dim,
        comult: a.mult.transpose(),
        counit: a.unit.transpose(),
    }
}

/// Dual algebra of a coalgebra under the standard basis pairing.
pub fn dual_algebra(c: &Coalgebra) -> Algebra {
    Algebra {
        field: c.field,
        dim: c.dim,
        mult: c.comult.transpose(),
        unit: c.counit.transpose(),
    }
}

/// k^n with pointwise product and unit (1, …, 1).
pub fn pointwise_algebra(field: FieldSpec, n: usize) -> Algebra {
    let mut mult = LinMap::zero(field, n, n * n);
    for i in 0..n {
        mult.set(i, i * n + i, field.one());
    }
    let unit = LinMap::from_fn(field, n, 1, |_, _| field.one());
    Algebra::new(field, n, mult, unit).expect("shapes are consistent")
}

pub(crate) fn check_shape(m: &LinMap, rows: usize, cols: usize, what: &str) -> Result<()> {
    if m.rows() != rows || m.cols() != cols {
        return Err(Error::DimMismatch(format!(
            "{what}: expected {rows}x{cols}, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

pub(crate) fn check_field<'a>(
    field: FieldSpec,
    maps: impl IntoIterator<Item = &'a LinMap>,
) -> Result<()> {
    for m in maps {
        if m.field() != field {
            return Err(Error::FieldMismatch(field, m.field()));
        }
    }
    Ok(())
}

pub(crate) fn comp3(g: &LinMap, f: &LinMap) -> LinMap {
    g.compose(f).expect("shapes checked by construction")
}

fn first_fail(rep: &Report) -> String {
    rep.verdicts
        .iter()
        .find(|v| !v.pass)
        .map(|v| v.tag.clone())
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Q;

    #[test]
    fn one_dimensional_algebra_passes() {
        let a = Algebra::new(
            Q,
            1,
            LinMap::from_int_rows(Q, &[&[1]]),
            LinMap::from_int_rows(Q, &[&[1]]),
        )
        .unwrap();
        assert!(a.check().pass());
    }

    #[test]
    fn pointwise_square_passes() {
        assert!(pointwise_algebra(Q, 2).check().pass());
    }

    #[test]
    fn wrong_unit_fails_on_second_basis_vector() {
        let mut a = pointwise_algebra(Q, 2);
        a.unit = LinMap::basis_col(Q, 2, 0);
        let rep = a.check();
        assert!(!rep.pass());
        let v = rep.get("alg.unit.l").unwrap();
        assert!(!v.pass);
        assert_eq!(v.witness.as_ref().unwrap().basis_index, 1);
    }

    #[test]
    fn algebras_are_premonads() {
        let p = PreMonad::from_algebra(&pointwise_algebra(Q, 2));
        assert!(p.check().pass());
    }

    /// k² with mult'(x⊗y) = e₁xy and unit' = e₁.
    fn truncated_pointwise() -> PreMonad {
        let mut mult = LinMap::zero(Q, 2, 4);
        mult.set(0, 0, Q.one());
        let unit = LinMap::basis_col(Q, 2, 0);
        PreMonad::new(Q, 2, mult, unit).unwrap()
    }

    #[test]
    fn truncated_pointwise_is_a_premonad() {
        assert!(truncated_pointwise().check().pass());
    }

    #[test]
    fn unnormalized_unit_fails_axiom_2_11() {
        let a = pointwise_algebra(Q, 2);
        let p = PreMonad::new(Q, 2, a.mult.clone(), LinMap::basis_col(Q, 2, 0)).unwrap();
        let rep = p.check();
        assert!(rep.passes("2.8"));
        assert!(rep.passes("2.9"));
        assert!(rep.passes("2.10"));
        assert!(!rep.passes("2.11"));
    }

    #[test]
    fn normalize_pointwise_with_partial_unit() {
        let a = pointwise_algebra(Q, 2);
        let e1 = LinMap::basis_col(Q, 2, 0);
        let p = premonad_normalize(Q, 2, &a.mult, &e1).unwrap();
        assert!(p.check().pass());
        assert_eq!(p, truncated_pointwise());
        // A pre-monad is a fixpoint of normalization.
        let again = premonad_normalize(Q, 2, &p.mult, &p.unit).unwrap();
        assert_eq!(again, p);
        // So is any one-dimensional algebra.
        let one = pointwise_algebra(Q, 1);
        let q = premonad_normalize(Q, 1, &one.mult, &one.unit).unwrap();
        assert_eq!((q.mult, q.unit), (one.mult, one.unit));
    }

    #[test]
    fn retract_of_a_monad_is_the_monad() {
        let a = pointwise_algebra(Q, 3);
        let p = PreMonad::from_algebra(&a);
        let (monad, split) = premonad_retract(&p).unwrap();
        assert_eq!(split.retract_dim, 3);
        assert_eq!(split.e, LinMap::identity(Q, 3));
        assert_eq!(monad.mult, a.mult);
        assert_eq!(monad.unit, a.unit);
    }

    #[test]
    fn retract_of_truncated_pointwise_is_one_dimensional() {
        let (monad, split) = premonad_retract(&truncated_pointwise()).unwrap();
        assert_eq!(split.retract_dim, 1);
        assert_eq!(monad.dim, 1);
        assert!(monad.check().pass());
    }

    #[test]
    fn retract_of_zero_premonad_is_empty() {
        let p = PreMonad::new(Q, 2, LinMap::zero(Q, 2, 4), LinMap::zero(Q, 2, 1)).unwrap();
        assert!(p.check().pass());
        let (monad, split) = premonad_retract(&p).unwrap();
        assert_eq!(split.retract_dim, 0);
        assert_eq!(monad.dim, 0);
    }

    #[test]
    fn groupoid_algebra_on_two_objects() {
        let g = GroupoidPresentation::discrete(2);
        let h = groupoid_algebra(Q, &g).unwrap();
        assert!(h.check().pass());
        assert_eq!(h.mult, pointwise_algebra(Q, 2).mult);
    }

    #[test]
    fn group_algebra_z2_is_weak_bialgebra() {
        let h = group_algebra(Q, &GroupPresentation::cyclic(2)).unwrap();
        assert!(h.check().pass());
    }

    #[test]
    fn pair_groupoid_validates_and_passes() {
        let g = GroupoidPresentation::pair(2);
        g.validate().unwrap();
        let h = groupoid_algebra(Q, &g).unwrap();
        assert!(h.check().pass());
        let u = GroupoidPresentation::discrete(1).disjoint_union(&g);
        u.validate().unwrap();
        assert!(groupoid_algebra(Q, &u).unwrap().check().pass());
    }

    #[test]
    fn sabotaged_counit_is_reported() {
        let g = GroupoidPresentation::discrete(2);
        let mut h = groupoid_algebra(Q, &g).unwrap();
        // With counit values (1, 0), every value is idempotent, so the weak
        // counit identities still hold; what breaks is the counit law of
        // the coalgebra part, and the overall verdict fails.
        h.counit = LinMap::from_int_rows(Q, &[&[1, 0]]);
        let rep = h.check();
        assert!(rep.passes("WBA.1"));
        assert!(rep.passes("WBA.3a"));
        assert!(!rep.passes("coa.counit.l"));
        assert!(!rep.pass());
        // A non-idempotent counit value breaks the weak counit identity,
        // first at h = h' = e₂: basis index 3 of the tensor square.
        h.counit = LinMap::from_int_rows(Q, &[&[1, 2]]);
        let rep = h.check();
        assert!(!rep.passes("WBA.3a"));
        assert_eq!(
            rep.get("WBA.3a")
                .unwrap()
                .witness
                .as_ref()
                .unwrap()
                .basis_index,
            3
        );
    }

    #[test]
    fn matrix_coalgebra_passes() {
        let c = matrix_coalgebra(Q, 2);
        assert!(c.check().pass());
    }

    #[test]
    fn double_dual_is_bitwise_identity() {
        let a = pointwise_algebra(Q, 3);
        let c = dual_coalgebra(&a);
        assert!(c.check().pass());
        let back = dual_algebra(&c);
        assert_eq!(back.mult, a.mult);
        assert_eq!(back.unit, a.unit);
        let m = matrix_coalgebra(Q, 2);
        let d = dual_algebra(&m);
        assert!(d.check().pass());
        assert_eq!(dual_coalgebra(&d), m);
    }
}
