//! Piecewise-linear topological normal functions on the cut region.
//!
//! A cocycle `c` determines the section `α` of the torus bundle with
//! `α(p_0) = 0` at the center, value `S_k = φ(γ_1⋯γ_k)` at the corner `V_k`
//! and, when `c` is parabolic at puncture `i`, value
//! `X_i = S_{i-1} − P_{i-1} a_i` at the puncture vertex: the fixed point of
//! the identification of the two sides of the cut, i.e. the extension of
//! `α` into the nodal fiber. At non-parabolic punctures the vertex gets the
//! midpoint of `S_{i-1}` and `S_i`, and the section does not close up there.
//! Values are affine on every triangle.

use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cohomology::{ParabolicData, TwistedCocycle};
use crate::error::{Error, Result};
use crate::linalg::{self, Int, Rat};
use crate::pencil::PencilModel;
use crate::polygon::{FundamentalPolygon, VertexKind};
use crate::symplectic::{invariant_sublattice, solve_potential, standard_form, RatVector, Ring, SymplecticMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bundle {
    Primal,
    Dual,
}

impl Bundle {
    fn name(self) -> &'static str {
        match self {
            Bundle::Primal => "primal",
            Bundle::Dual => "dual",
        }
    }
}

/// `v ↦ L v + t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    linear: SymplecticMatrix,
    translation: RatVector,
}

impl AffineMap {
    pub fn new(linear: SymplecticMatrix, translation: RatVector) -> Result<Self> {
        if translation.genus() != linear.genus() {
            return Err(Error::Dimension {
                expected: 2 * linear.genus(),
                found: translation.dim(),
            });
        }
        Ok(AffineMap { linear, translation })
    }

    pub fn identity(genus: usize) -> Self {
        AffineMap {
            linear: SymplecticMatrix::identity(genus),
            translation: RatVector::zero(genus),
        }
    }

    pub fn linear(&self) -> &SymplecticMatrix {
        &self.linear
    }

    pub fn translation(&self) -> &RatVector {
        &self.translation
    }

    pub fn apply(&self, v: &RatVector) -> RatVector {
        &self.linear.apply(v) + &self.translation
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        AffineMap {
            linear: self.linear.compose(&inner.linear),
            translation: self.apply(&inner.translation),
        }
    }

    pub fn inverse(&self) -> AffineMap {
        let inv = self.linear.inverse();
        let translation = -&inv.apply(&self.translation);
        AffineMap {
            linear: inv,
            translation,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.is_zero()
    }

    /// A fixed point over `ring`, if any.
    pub fn fixed_point(&self, ring: Ring) -> Option<RatVector> {
        solve_potential(&self.linear, &-&self.translation, ring).ok().flatten()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiberKind {
    /// `J_X(p) = R^{2g} / Z^{2g}`.
    Smooth,
    /// Nodal fiber at a puncture: `R^{2g}` modulo the invariant partial lattice.
    Nodal(usize),
}

/// A fiber `R^{2g} / Λ`; `Λ` is stored as a Hermite basis so reduction is
/// canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    kind: FiberKind,
    dim: usize,
    lattice: Vec<Vec<Int>>,
}

impl Fiber {
    pub fn smooth(genus: usize) -> Self {
        let dim = 2 * genus;
        let lattice = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
            .collect();
        Fiber {
            kind: FiberKind::Smooth,
            dim,
            lattice,
        }
    }

    /// Fiber at puncture `i` whose local monodromy is `t`.
    pub fn nodal(i: usize, t: &SymplecticMatrix) -> Self {
        Fiber {
            kind: FiberKind::Nodal(i),
            dim: 2 * t.genus(),
            lattice: invariant_sublattice(t).into_iter().map(|v| v.into_coords()).collect(),
        }
    }

    pub fn kind(&self) -> FiberKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.lattice.len()
    }

    pub fn corank(&self) -> usize {
        self.dim - self.rank()
    }

    pub fn reduce(&self, v: &RatVector) -> FiberValue {
        let coords = linalg::reduce_modulo(v.coords(), &self.lattice);
        FiberValue {
            kind: self.kind,
            representative: RatVector::from_coords_unchecked(coords),
        }
    }
}

/// A point of a fiber, by its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberValue {
    kind: FiberKind,
    representative: RatVector,
}

impl FiberValue {
    pub fn kind(&self) -> FiberKind {
        self.kind
    }

    pub fn representative(&self) -> &RatVector {
        &self.representative
    }
}

/// A point of the polygon: a level-zero triangle and exact barycentric
/// weights on its vertices `[center, b_j, b_{j+1}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonPoint {
    triangle: usize,
    weights: [Rat; 3],
}

impl PolygonPoint {
    pub fn new(triangle: usize, weights: [Rat; 3]) -> Result<Self> {
        let sum = weights.iter().fold(Rat::zero(), |s, w| s + w);
        if !sum.is_one() || weights.iter().any(Signed::is_negative) {
            return Err(Error::OutsideDomain);
        }
        Ok(PolygonPoint { triangle, weights })
    }

    pub fn center() -> Self {
        PolygonPoint {
            triangle: 0,
            weights: [Rat::one(), Rat::zero(), Rat::zero()],
        }
    }

    /// Corner `V_k`.
    pub fn corner(k: usize) -> Self {
        PolygonPoint {
            triangle: 2 * k,
            weights: [Rat::zero(), Rat::one(), Rat::zero()],
        }
    }

    /// Puncture vertex `P_{i+1}`.
    pub fn puncture(i: usize) -> Self {
        PolygonPoint {
            triangle: 2 * i + 1,
            weights: [Rat::zero(), Rat::one(), Rat::zero()],
        }
    }

    /// Point at parameter `t` on the segment from the center to corner `V_k`.
    pub fn on_spoke(k: usize, t: Rat) -> Result<Self> {
        Self::new(2 * k, [Rat::one() - &t, t, Rat::zero()])
    }

    pub fn triangle(&self) -> usize {
        self.triangle
    }

    pub fn weights(&self) -> &[Rat; 3] {
        &self.weights
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormalFunctionSection {
    cocycle: TwistedCocycle,
    bundle: Bundle,
    /// Linear map applied to all values and coefficients (`I`, `J`, `−I`, `−J`).
    frame: SymplecticMatrix,
    corners: Vec<RatVector>,
    puncture_values: Vec<RatVector>,
    extended: Vec<bool>,
    polygon: FundamentalPolygon,
    values: Vec<RatVector>,
}

/// The section of `c`, extended over every puncture where `c` is
/// parabolic over the rationals (the placement does not depend on the
/// choice of potential for the degree computation).
pub fn build_section(c: &TwistedCocycle) -> Result<NormalFunctionSection> {
    let p = c.pencil();
    let potentials = p
        .monodromies()
        .iter()
        .zip(c.values())
        .map(|(t, ci)| solve_potential(t, ci, Ring::Rationals))
        .collect::<Result<Vec<_>>>()?;
    NormalFunctionSection::from_potentials(c, potentials)
}

/// The section of `c` extended over every puncture with the given potentials.
pub fn build_extended_section(c: &TwistedCocycle, a: &ParabolicData) -> Result<NormalFunctionSection> {
    a.validate(c)?;
    NormalFunctionSection::from_potentials(c, a.potentials().iter().cloned().map(Some).collect())
}

impl NormalFunctionSection {
    fn from_potentials(c: &TwistedCocycle, potentials: Vec<Option<RatVector>>) -> Result<Self> {
        let p = c.pencil();
        let g = p.genus();
        let products = p.partial_products();
        let mut corners = vec![RatVector::zero(g)];
        for (pk, ci) in products.iter().zip(c.values()) {
            let next = corners.last().expect("nonempty") + &pk.apply(ci);
            corners.push(next);
        }
        let last = corners.last().expect("nonempty");
        if !last.is_zero() {
            return Err(Error::Closure {
                residual: last.to_string(),
            });
        }
        let half = Rat::new(Int::one(), Int::from(2));
        let mut puncture_values = Vec::with_capacity(p.punctures());
        let mut extended = Vec::with_capacity(p.punctures());
        for (i, a) in potentials.iter().enumerate() {
            match a {
                Some(a) => {
                    puncture_values.push(&corners[i] - &products[i].apply(a));
                    extended.push(true);
                }
                None => {
                    puncture_values.push((&corners[i] + &corners[i + 1]).scale(&half));
                    extended.push(false);
                }
            }
        }
        let mut s = NormalFunctionSection {
            cocycle: c.clone(),
            bundle: Bundle::Primal,
            frame: SymplecticMatrix::identity(g),
            corners,
            puncture_values,
            extended,
            polygon: FundamentalPolygon::new(p.punctures()),
            values: Vec::new(),
        };
        s.fill_values();
        Ok(s)
    }

    fn fill_values(&mut self) {
        let g = self.genus();
        let mut values: Vec<RatVector> = Vec::with_capacity(self.polygon.vertex_count());
        for v in 0..self.polygon.vertex_count() {
            let value = match self.polygon.kind(v) {
                VertexKind::Center => RatVector::zero(g),
                VertexKind::Corner(k) => self.corners[k].clone(),
                VertexKind::Puncture(i) => self.puncture_values[i].clone(),
                VertexKind::Interior => {
                    let (a, b) = self.polygon.parents(v).expect("refinement vertex");
                    let half = Rat::new(Int::one(), Int::from(2));
                    (&values[a] + &values[b]).scale(&half)
                }
            };
            values.push(value);
        }
        self.values = values;
    }

    pub fn pencil(&self) -> &Arc<PencilModel> {
        self.cocycle.pencil()
    }

    pub fn cocycle(&self) -> &TwistedCocycle {
        &self.cocycle
    }

    pub fn genus(&self) -> usize {
        self.pencil().genus()
    }

    pub fn bundle(&self) -> Bundle {
        self.bundle
    }

    pub fn polygon(&self) -> &FundamentalPolygon {
        &self.polygon
    }

    pub fn level(&self) -> usize {
        self.polygon.level()
    }

    /// `S_0, …, S_m` (in the section's bundle).
    pub fn corner_values(&self) -> &[RatVector] {
        &self.corners
    }

    pub fn puncture_value(&self, i: usize) -> &RatVector {
        &self.puncture_values[i]
    }

    /// Whether the puncture vertex carries the extension value.
    pub fn is_extended(&self, i: usize) -> bool {
        self.extended[i]
    }

    pub fn is_fully_extended(&self) -> bool {
        self.extended.iter().all(|&e| e)
    }

    /// Values at the vertices of the current triangulation.
    pub fn vertex_values(&self) -> &[RatVector] {
        &self.values
    }

    /// The same section on the triangulation refined `level` times.
    pub fn at_level(&self, level: usize) -> Self {
        let mut s = self.clone();
        s.polygon = FundamentalPolygon::at_level(self.pencil().punctures(), level);
        s.fill_values();
        s
    }

    fn check_puncture(&self, i: usize) -> Result<()> {
        let m = self.pencil().punctures();
        if i >= m {
            return Err(Error::IndexOutOfRange {
                letter: i as i64,
                punctures: m,
            });
        }
        Ok(())
    }

    fn framed(&self, t: &SymplecticMatrix, v: &RatVector) -> AffineMap {
        AffineMap {
            linear: self.frame.compose(t).compose(&self.frame.inverse()),
            translation: self.frame.apply(v),
        }
    }

    /// Jump across cut `i` (zero-based) in the local frame: `v ↦ T_i v + c_i`.
    /// Composing all jumps, the last applied first, gives the identity.
    pub fn boundary_jump(&self, i: usize) -> Result<AffineMap> {
        self.check_puncture(i)?;
        Ok(self.framed(self.pencil().monodromy(i), self.cocycle.value(i)))
    }

    /// Continuation along `γ_1 ⋯ γ_k`: `v ↦ P_k v + S_k`.
    pub fn path_map(&self, k: usize) -> AffineMap {
        let products = self.pencil().partial_products();
        AffineMap {
            linear: self.frame.compose(&products[k]).compose(&self.frame.inverse()),
            translation: self.corners[k].clone(),
        }
    }

    /// Map carrying values on the side `V_i → P_{i+1}` of cut `i` to the
    /// values at the same points of the side `V_{i+1} → P_{i+1}`.
    pub fn edge_identification(&self, i: usize) -> Result<AffineMap> {
        let base = self.path_map(i);
        Ok(base.compose(&self.boundary_jump(i)?).compose(&base.inverse()))
    }

    /// Exact PL value at a point, not reduced.
    pub fn value_at(&self, point: &PolygonPoint) -> Result<RatVector> {
        let base = FundamentalPolygon::new(self.pencil().punctures());
        let tri = base.base_triangles().get(point.triangle).ok_or(Error::OutsideDomain)?;
        let level0 = |v: usize| match base.kind(v) {
            VertexKind::Center => RatVector::zero(self.genus()),
            VertexKind::Corner(k) => self.corners[k].clone(),
            VertexKind::Puncture(i) => self.puncture_values[i].clone(),
            VertexKind::Interior => unreachable!("level zero"),
        };
        let mut acc = RatVector::zero(self.genus());
        for (&v, w) in tri.iter().zip(&point.weights) {
            acc = &acc + &level0(v).scale(w);
        }
        Ok(acc)
    }

    /// Value in the smooth fiber `R^{2g} / Z^{2g}`.
    pub fn evaluate(&self, point: &PolygonPoint) -> Result<FiberValue> {
        Ok(Fiber::smooth(self.genus()).reduce(&self.value_at(point)?))
    }

    /// Limit value at puncture `i` in the nodal fiber: `−a_i` modulo the
    /// invariant partial lattice. Without potentials, a fixed point of the
    /// jump over the cocycle's ring is used.
    pub fn extend_at_puncture(&self, i: usize, a: Option<&ParabolicData>) -> Result<FiberValue> {
        let jump = self.boundary_jump(i)?;
        let fiber = Fiber::nodal(i, jump.linear());
        let value = match a {
            Some(a) => {
                let ai = a.potentials().get(i).ok_or(Error::NotExtendable { puncture: i })?;
                let t = self.pencil().monodromy(i);
                if ai.dim() != 2 * self.genus() || &(&t.apply(ai) - ai) != self.cocycle.value(i) {
                    return Err(Error::NotExtendable { puncture: i });
                }
                -&self.frame.apply(ai)
            }
            None => jump
                .fixed_point(self.cocycle.ring())
                .ok_or(Error::NotExtendable { puncture: i })?,
        };
        Ok(fiber.reduce(&value))
    }

    /// Image under `J : J_X → J_X^∨`, applied to values and coefficients.
    pub fn dualize(&self) -> Self {
        let j = standard_form(self.genus() as i64).expect("genus ≥ 1");
        let map = |vs: &[RatVector]| vs.iter().map(|v| j.apply(v)).collect::<Vec<_>>();
        NormalFunctionSection {
            cocycle: self.cocycle.clone(),
            bundle: match self.bundle {
                Bundle::Primal => Bundle::Dual,
                Bundle::Dual => Bundle::Primal,
            },
            frame: j.compose(&self.frame),
            corners: map(&self.corners),
            puncture_values: map(&self.puncture_values),
            extended: self.extended.clone(),
            polygon: self.polygon.clone(),
            values: map(&self.values),
        }
    }

    pub(crate) fn require_bundle(&self, bundle: Bundle) -> Result<()> {
        if self.bundle != bundle {
            return Err(Error::BundleMismatch {
                expected: bundle.name(),
            });
        }
        Ok(())
    }

    /// Per-vertex value table with exact rational entries.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (v, value) in self.values.iter().enumerate() {
            let kind = match self.polygon.kind(v) {
                VertexKind::Center => "center".to_string(),
                VertexKind::Corner(k) => format!("V{k}"),
                VertexKind::Puncture(i) => format!("P{}", i + 1),
                VertexKind::Interior => "interior".to_string(),
            };
            let _ = writeln!(out, "{v}\t{kind}\t{value}");
        }
        out
    }
}
