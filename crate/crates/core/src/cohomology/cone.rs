//! Compactly supported cup product via a mapping cone.
//!
//! The base is modelled by a two-vertex Δ-complex `K`: a center `O`, the
//! base point `B`, spokes `s_k : O → B` (`s_m = s_0`), loops `e_i : B → B`
//! running around puncture `i`, and fan triangles `t_i = [O, B, B]` with
//! edges `(s_{i-1}, e_i, s_i)`. The link of puncture `i` is a circle `S_i`
//! with one vertex and one edge `l_i`, mapped onto `e_i`.
//!
//! Compact support is modelled by the cone of restriction
//! `C*(K) → ⊕ C*(S_i)` with differential `D(x, y) = (δx, f*x − δy)`. A
//! degree-one cone cocycle is a cocycle `φ` on `K` together with 0-cochains
//! `a_i` on the circles satisfying `f*φ = δa`: exactly parabolic data. The
//! cup product with a plain class is `(φ, a) ∪ ψ = (φ ∪ ψ, a ∪ f*ψ)`, and the
//! relative fundamental class is `(Σ t_i, −Σ l_i)`.
//!
//! Local coefficients: cochain values live in the fiber at the first vertex
//! of a cell, frames at `O` and `B` agree along `s_0`, and the transport from
//! the end of an edge back to its start is `P_k` along `s_k` and `T_i`
//! along `e_i`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Rat;
use crate::pencil::PencilModel;
use crate::symplectic::{pair, RatVector, SymplecticMatrix};

use super::{ParabolicData, TwistedCocycle};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Edge {
    Spoke(usize),
    Loop(usize),
}

/// An oriented triangle `[v0, v1, v2]` recorded by its edges
/// `v0v1`, `v1v2`, `v0v2`.
#[derive(Clone, Copy, Debug)]
struct Triangle {
    front: Edge,
    back: Edge,
    long: Edge,
}

struct CoreComplex {
    genus: usize,
    punctures: usize,
    spoke_transport: Vec<SymplecticMatrix>,
    loop_transport: Vec<SymplecticMatrix>,
    triangles: Vec<Triangle>,
}

/// A 1-cochain on `K` with twisted coefficients.
#[derive(Clone, Debug)]
struct Cochain1 {
    spokes: Vec<RatVector>,
    loops: Vec<RatVector>,
}

impl CoreComplex {
    fn new(p: &PencilModel) -> Self {
        let m = p.punctures();
        let mut spoke_transport = Vec::with_capacity(m);
        let mut acc = SymplecticMatrix::identity(p.genus());
        for t in p.monodromies() {
            spoke_transport.push(acc.clone());
            acc = acc.compose(t);
        }
        let triangles = (0..m)
            .map(|i| Triangle {
                front: Edge::Spoke(i),
                back: Edge::Loop(i),
                long: Edge::Spoke((i + 1) % m),
            })
            .collect();
        CoreComplex {
            genus: p.genus(),
            punctures: m,
            spoke_transport,
            loop_transport: p.monodromies().to_vec(),
            triangles,
        }
    }

    fn transport(&self, e: Edge) -> &SymplecticMatrix {
        match e {
            Edge::Spoke(k) => &self.spoke_transport[k],
            Edge::Loop(i) => &self.loop_transport[i],
        }
    }

    fn value<'a>(&self, phi: &'a Cochain1, e: Edge) -> &'a RatVector {
        match e {
            Edge::Spoke(k) => &phi.spokes[k],
            Edge::Loop(i) => &phi.loops[i],
        }
    }

    /// Extends loop values `c_i` to a cocycle on `K`, solving the triangle
    /// closure conditions for the spokes starting from `φ(s_0) = 0`.
    fn extend(&self, c: &TwistedCocycle) -> Result<Cochain1> {
        let mut spokes = vec![RatVector::zero(self.genus)];
        for (i, ci) in c.values().iter().enumerate() {
            // δφ(t_i) = τ(s_i)φ(e_i) − φ(s_{i+1}) + φ(s_i) = 0
            let next = &spokes[i] + &self.spoke_transport[i].apply(ci);
            spokes.push(next);
        }
        let wrap = spokes.pop().expect("nonempty");
        if self.punctures > 0 && !wrap.is_zero() {
            return Err(Error::NotACocycle {
                residual: wrap.to_string(),
            });
        }
        let phi = Cochain1 {
            spokes,
            loops: c.values().to_vec(),
        };
        debug_assert!(self.coboundary(&phi).iter().all(RatVector::is_zero));
        Ok(phi)
    }

    fn coboundary(&self, phi: &Cochain1) -> Vec<RatVector> {
        self.triangles
            .iter()
            .map(|t| {
                let back = self.transport(t.front).apply(self.value(phi, t.back));
                &(&back - self.value(phi, t.long)) + self.value(phi, t.front)
            })
            .collect()
    }

    /// Front-face/back-face cup product of two 1-cochains, paired into `Q`:
    /// `(φ ∪ ψ)[v0 v1 v2] = pair(φ(v0v1), τ(v0v1) ψ(v1v2))`.
    fn cup(&self, phi: &Cochain1, psi: &Cochain1) -> Result<Vec<Rat>> {
        self.triangles
            .iter()
            .map(|t| {
                let moved = self.transport(t.front).apply(self.value(psi, t.back));
                pair(self.value(phi, t.front), &moved)
            })
            .collect()
    }
}

/// Checks the cone cocycle condition `f*φ = δa` on every circle.
fn check_cone_cocycle(core: &CoreComplex, phi: &Cochain1, a: &ParabolicData) -> Result<()> {
    for i in 0..core.punctures {
        let delta_a = &core.loop_transport[i].apply(a.potential(i)) - a.potential(i);
        if delta_a != phi.loops[i] {
            return Err(Error::ParabolicityRequired { puncture: i });
        }
    }
    Ok(())
}

fn prepare(
    c1: &TwistedCocycle,
    a1: &ParabolicData,
    c2: &TwistedCocycle,
    a2: &ParabolicData,
) -> Result<(CoreComplex, Cochain1, Cochain1)> {
    if !c1.same_pencil(c2) {
        return Err(Error::PencilMismatch);
    }
    let p: &Arc<PencilModel> = c1.pencil();
    for a in [a1, a2] {
        if a.potentials().len() != p.punctures() {
            return Err(Error::Dimension {
                expected: p.punctures(),
                found: a.potentials().len(),
            });
        }
    }
    let core = CoreComplex::new(p);
    let phi = core.extend(c1)?;
    let psi = core.extend(c2)?;
    check_cone_cocycle(&core, &phi, a1)?;
    check_cone_cocycle(&core, &psi, a2)?;
    Ok((core, phi, psi))
}

/// The intersection pairing of two parabolic classes, computed as the
/// compactly supported cup product `(φ', a') ∪ φ''` evaluated on the
/// relative fundamental class.
pub fn cup_pairing_oracle(
    c1: &TwistedCocycle,
    a1: &ParabolicData,
    c2: &TwistedCocycle,
    a2: &ParabolicData,
) -> Result<Rat> {
    let (core, phi, psi) = prepare(c1, a1, c2, a2)?;
    let mut total = core.cup(&phi, &psi)?.into_iter().fold(Rat::from_integer(0.into()), |s, x| s + x);
    // cone component a ∪ f*ψ on l_i, weighted by −1 in the fundamental class
    for i in 0..core.punctures {
        total -= pair(a1.potential(i), &psi.loops[i])?;
    }
    Ok(total)
}

/// The same pairing with the cone structure on the second argument:
/// `φ' ∪ (φ'', a'') = (φ' ∪ φ'', −f*φ' ∪ a'')`.
pub fn cup_pairing_oracle_right(
    c1: &TwistedCocycle,
    a1: &ParabolicData,
    c2: &TwistedCocycle,
    a2: &ParabolicData,
) -> Result<Rat> {
    let (core, phi, psi) = prepare(c1, a1, c2, a2)?;
    let mut total = core.cup(&phi, &psi)?.into_iter().fold(Rat::from_integer(0.into()), |s, x| s + x);
    for i in 0..core.punctures {
        let moved = core.loop_transport[i].apply(a2.potential(i));
        total += pair(&phi.loops[i], &moved)?;
    }
    Ok(total)
}
