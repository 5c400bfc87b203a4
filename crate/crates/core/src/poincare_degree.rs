//! Degree of the pulled-back normalized Poincaré bundle on the graph of
//! `(α', α''^∨)` over the cut region, and the comparison with the
//! intersection pairing.
//!
//! On a positively oriented triangle with edge differences `Δ₁`, `Δ₂` the
//! integrand `dα' ∧ J dα''` integrates to
//! `½ (pair(Δ₁α', Δ₂α'') − pair(Δ₂α', Δ₁α''))`; the dual section carries
//! the `J`, so the sum is computed with plain dot products against it.

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cohomology::{cup_pairing_oracle, non_parabolic_punctures, parabolic_potentials, ParabolicData, TwistedCocycle};
use crate::error::{Error, Result};
use crate::io::{pencil_hash, CocycleDocument, CONVENTION};
use crate::linalg::{Int, Rat};
use crate::normal_function::{build_extended_section, Bundle, NormalFunctionSection};
use crate::symplectic::RatVector;

/// Global orientation sign relating the degree to the cup product.
pub const SIGMA: i64 = 1;

/// Relative tolerance of the quadrature cross-check.
pub const QUADRATURE_TOLERANCE: f64 = 1e-9;

fn dot(x: &RatVector, y: &RatVector) -> Rat {
    x.coords().iter().zip(y.coords()).fold(Rat::zero(), |s, (a, b)| s + a * b)
}

/// Both sections brought to a common refinement level, the second one
/// dualized.
fn prepare(s1: &NormalFunctionSection, s2: &NormalFunctionSection) -> Result<(NormalFunctionSection, NormalFunctionSection)> {
    if s1.pencil() != s2.pencil() {
        return Err(Error::PencilMismatch);
    }
    s1.require_bundle(Bundle::Primal)?;
    s2.require_bundle(Bundle::Primal)?;
    let level = s1.level().max(s2.level());
    let a = if s1.level() == level { s1.clone() } else { s1.at_level(level) };
    let b = if s2.level() == level { s2.clone() } else { s2.at_level(level) };
    Ok((a, b.dualize()))
}

/// Exact degree `∫_U dα' J dα''`. The second section is passed undualized.
pub fn degree_pl(s1: &NormalFunctionSection, s2: &NormalFunctionSection) -> Result<Rat> {
    let (a, w) = prepare(s1, s2)?;
    let (va, vw) = (a.vertex_values(), w.vertex_values());
    let mut total = Rat::zero();
    for &[p, q, r] in a.polygon().triangles() {
        let (d1a, d2a) = (&va[q] - &va[p], &va[r] - &va[p]);
        let (d1w, d2w) = (&vw[q] - &vw[p], &vw[r] - &vw[p]);
        total += dot(&d1a, &d2w) - dot(&d2a, &d1w);
    }
    Ok(total / Rat::from_integer(Int::from(2)))
}

/// Midpoint-rule evaluation of the same integral: each triangle, in its
/// affine chart `p + s(q − p) + t(r − p)`, is cut into `mesh²` pieces and
/// the integrand `∂_s α' · ∂_t α''^∨ − ∂_t α' · ∂_s α''^∨` is taken from
/// finite-difference gradients at the piece. Products are accumulated
/// with compensated (FMA) arithmetic since the sum cancels heavily when
/// values are large.
pub fn degree_quadrature(s1: &NormalFunctionSection, s2: &NormalFunctionSection, mesh: usize) -> Result<f64> {
    if mesh == 0 {
        return Err(Error::InvalidParameter("mesh must be at least 1".into()));
    }
    let (a, w) = prepare(s1, s2)?;
    // the integral is bilinear, so clear denominators first and divide once
    // at the end; integral data makes every grid value below exact
    let (la, lw) = (common_denominator(a.vertex_values()), common_denominator(w.vertex_values()));
    let to_f64 = |v: &RatVector, l: &Int| -> Vec<f64> {
        v.coords().iter().map(|x| (x * l).to_f64().unwrap_or(f64::NAN)).collect()
    };
    let (va, vw) = (a.vertex_values(), w.vertex_values());
    let h = 1.0 / mesh as f64;
    let mut total = Accumulator::default();
    for &[p, q, r] in a.polygon().triangles() {
        // values relative to vertex p, from exact edge differences; the
        // integrand only sees gradients
        let (d1a, d2a) = (to_f64(&(&va[q] - &va[p]), &la), to_f64(&(&va[r] - &va[p]), &la));
        let (d1w, d2w) = (to_f64(&(&vw[q] - &vw[p]), &lw), to_f64(&(&vw[r] - &vw[p]), &lw));
        let point = |i: usize, j: usize| -> Sample {
            let (s, t) = (i as f64 * h, j as f64 * h);
            let lerp = |d1: &[f64], d2: &[f64]| -> Vec<f64> { d1.iter().zip(d2).map(|(x, y)| s * x + t * y).collect() };
            ([s, t], lerp(&d1a, &d2a), lerp(&d1w, &d2w))
        };
        for i in 0..mesh {
            for j in 0..mesh - i {
                piece(&point(i, j), &point(i + 1, j), &point(i, j + 1), &mut total);
                if i + j + 2 <= mesh {
                    piece(&point(i + 1, j), &point(i + 1, j + 1), &point(i, j + 1), &mut total);
                }
            }
        }
    }
    let scale = Rat::from_integer(la * lw).to_f64().unwrap_or(f64::NAN);
    Ok(total.value() / scale)
}

fn common_denominator(values: &[RatVector]) -> Int {
    values
        .iter()
        .flat_map(|v| v.coords())
        .fold(Int::one(), |l, x| l.lcm(x.denom()))
}

/// Compensated sum of products (error-free products via FMA, Neumaier
/// summation).
#[derive(Default)]
struct Accumulator {
    sum: f64,
    compensation: f64,
}

impl Accumulator {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn add_product(&mut self, a: f64, b: f64) {
        let p = a * b;
        self.add(p);
        self.add(a.mul_add(b, -p));
    }

    fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Chart point and the two sections' values there.
type Sample = ([f64; 2], Vec<f64>, Vec<f64>);

/// Adds integrand times area of one small triangle.
fn piece(x0: &Sample, x1: &Sample, x2: &Sample, out: &mut Accumulator) {
    let e1 = [x1.0[0] - x0.0[0], x1.0[1] - x0.0[1]];
    let e2 = [x2.0[0] - x0.0[0], x2.0[1] - x0.0[1]];
    let det = e1[0] * e2[1] - e1[1] * e2[0];
    let grad = |f0: &[f64], f1: &[f64], f2: &[f64], k: usize| -> [f64; 2] {
        let (d1, d2) = (f1[k] - f0[k], f2[k] - f0[k]);
        [(d1 * e2[1] - d2 * e1[1]) / det, (e1[0] * d2 - e2[0] * d1) / det]
    };
    let half_area = det / 2.0;
    for k in 0..x0.1.len() {
        let ga = grad(&x0.1, &x1.1, &x2.1, k);
        let gw = grad(&x0.2, &x1.2, &x2.2, k);
        out.add_product(ga[0] * half_area, gw[1]);
        out.add_product(-ga[1] * half_area, gw[0]);
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureCheck {
    pub mesh: usize,
    pub value: f64,
    pub abs_error: f64,
    pub within_tolerance: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoremReport {
    pub convention: String,
    pub genus: usize,
    pub punctures: usize,
    pub pencil_hash: String,
    pub cocycle_hashes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub lhs: String,
    pub rhs: String,
    pub sigma: i64,
    pub equal: bool,
    pub quadrature: QuadratureCheck,
}

impl TheoremReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Right-hand side for parabolic data: `σ · degree_pl` of the extended
/// sections.
pub fn degree_of_pair(c1: &TwistedCocycle, a1: &ParabolicData, c2: &TwistedCocycle, a2: &ParabolicData) -> Result<Rat> {
    let s1 = build_extended_section(c1, a1)?;
    let s2 = build_extended_section(c2, a2)?;
    Ok(degree_pl(&s1, &s2)? * Rat::from_integer(Int::from(SIGMA)))
}

/// Compares the cup product of two parabolic classes with the degree of
/// the Poincaré bundle on the graph of their normal functions.
pub fn verify_theorem(
    c1: &TwistedCocycle,
    a1: &ParabolicData,
    c2: &TwistedCocycle,
    a2: &ParabolicData,
    mesh: usize,
    seed: Option<u64>,
) -> Result<TheoremReport> {
    if !c1.same_pencil(c2) {
        return Err(Error::PencilMismatch);
    }
    a1.validate(c1)?;
    a2.validate(c2)?;
    let lhs = cup_pairing_oracle(c1, a1, c2, a2)?;
    let s1 = build_extended_section(c1, a1)?;
    let s2 = build_extended_section(c2, a2)?;
    let rhs = degree_pl(&s1, &s2)? * Rat::from_integer(Int::from(SIGMA));
    let value = SIGMA as f64 * degree_quadrature(&s1, &s2, mesh)?;
    let exact = rhs.to_f64().unwrap_or(f64::NAN);
    let abs_error = (value - exact).abs();
    let p = c1.pencil();
    Ok(TheoremReport {
        convention: CONVENTION.to_string(),
        genus: p.genus(),
        punctures: p.punctures(),
        pencil_hash: pencil_hash(p)?,
        cocycle_hashes: vec![
            CocycleDocument::from_cocycle(c1, Some(a1)).hash(),
            CocycleDocument::from_cocycle(c2, Some(a2)).hash(),
        ],
        seed,
        equal: lhs == rhs,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        sigma: SIGMA,
        quadrature: QuadratureCheck {
            mesh,
            value,
            abs_error,
            within_tolerance: abs_error < QUADRATURE_TOLERANCE * exact.abs().max(1.0),
        },
    })
}

/// Potentials over the cocycle's own ring, or the parabolicity error at
/// the first offending puncture.
pub fn require_parabolic(c: &TwistedCocycle) -> Result<ParabolicData> {
    parabolic_potentials(c, c.ring()).ok_or_else(|| Error::ParabolicityRequired {
        puncture: non_parabolic_punctures(c, c.ring()).first().copied().unwrap_or(0),
    })
}

/// [`verify_theorem`] with potentials solved from the cocycles.
pub fn verify_cocycles(c1: &TwistedCocycle, c2: &TwistedCocycle, mesh: usize, seed: Option<u64>) -> Result<TheoremReport> {
    let a1 = require_parabolic(c1)?;
    let a2 = require_parabolic(c2)?;
    verify_theorem(c1, &a1, c2, &a2, mesh, seed)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cohomology::{coboundary, random_parabolic};
    use crate::linalg::rat;
    use crate::normal_function::build_section;
    use crate::pencil::PencilModel;
    use crate::random::Rng;
    use crate::symplectic::Ring;

    #[test]
    fn zero_section_has_degree_zero() {
        let p = Arc::new(PencilModel::builtin_elliptic12());
        let mut rng = Rng::from_seed(1);
        let (c, _) = random_parabolic(&p, Ring::Integers, &mut rng);
        let zero = build_section(&TwistedCocycle::zero(p.clone(), Ring::Integers)).unwrap();
        let s = build_section(&c).unwrap();
        assert!(degree_pl(&zero, &s).unwrap().is_zero());
        assert!(degree_pl(&s, &zero).unwrap().is_zero());
        assert_eq!(degree_quadrature(&zero, &s, 4).unwrap(), 0.0);
    }

    #[test]
    fn requires_primal_sections_on_one_pencil() {
        let p = Arc::new(PencilModel::builtin_elliptic12());
        let q = Arc::new(PencilModel::builtin_genus2_chain20());
        let s = build_section(&TwistedCocycle::zero(p, Ring::Integers)).unwrap();
        let t = build_section(&TwistedCocycle::zero(q, Ring::Integers)).unwrap();
        assert!(matches!(degree_pl(&s, &t), Err(Error::PencilMismatch)));
        assert!(matches!(degree_pl(&s, &s.dualize()), Err(Error::BundleMismatch { .. })));
        assert!(matches!(degree_quadrature(&s, &s, 0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn matches_cup_product_on_random_instances() {
        let mut rng = Rng::from_seed(8);
        for seed in 0..10 {
            let g = 1 + (seed % 3) as i64;
            let p = Arc::new(PencilModel::random_instance(g, 2 * g as usize + 1, seed).unwrap());
            let (c1, a1) = random_parabolic(&p, Ring::Integers, &mut rng);
            let (c2, a2) = random_parabolic(&p, Ring::Integers, &mut rng);
            let r = verify_theorem(&c1, &a1, &c2, &a2, 2, Some(seed)).unwrap();
            assert!(r.equal, "{r:?}");
            assert!(r.quadrature.within_tolerance, "{r:?}");
        }
    }

    #[test]
    fn coboundary_pairs_trivially() {
        let p = Arc::new(PencilModel::builtin_elliptic12());
        let mut rng = Rng::from_seed(4);
        let (c, a) = random_parabolic(&p, Ring::Integers, &mut rng);
        let (b, ab) = coboundary(&RatVector::from_i64(&[3, -2]).unwrap(), &p).unwrap();
        assert!(degree_of_pair(&c, &a, &b, &ab).unwrap().is_zero());
        assert!(degree_of_pair(&b, &ab, &c, &a).unwrap().is_zero());
    }

    #[test]
    fn degree_scales_linearly() {
        let p = Arc::new(PencilModel::random_instance(1, 3, 2).unwrap());
        let mut rng = Rng::from_seed(9);
        let (c1, a1) = random_parabolic(&p, Ring::Integers, &mut rng);
        let (c2, a2) = random_parabolic(&p, Ring::Integers, &mut rng);
        let d = degree_of_pair(&c1, &a1, &c2, &a2).unwrap();
        let three = rat(3);
        let d3 = degree_of_pair(&c1.scale(&three), &a1.scale(&three), &c2, &a2).unwrap();
        assert_eq!(d3, d * three);
    }

    #[test]
    fn rejects_non_parabolic_input() {
        let t = crate::symplectic::SymplecticMatrix::from_rows_i64(&[&[1, -1], &[0, 1]]).unwrap();
        let p = Arc::new(PencilModel::new(1, vec![t.clone(), t.inverse()]).unwrap());
        let v = |c: &[i64]| RatVector::from_i64(c).unwrap();
        let c = TwistedCocycle::new(p, Ring::Integers, vec![v(&[0, 1]), v(&[-1, -1])]).unwrap();
        assert!(matches!(
            verify_cocycles(&c, &c, 1, None),
            Err(Error::ParabolicityRequired { puncture: 0 })
        ));
    }

    #[test]
    fn elliptic_fixture_pairs_to_minus_one() {
        let inst = crate::io::Instance::builtin_elliptic12();
        let [x, y] = [&inst.cocycles[0], &inst.cocycles[1]];
        let (ax, ay) = (x.potentials.as_ref().unwrap(), y.potentials.as_ref().unwrap());
        let r = verify_theorem(&x.cocycle, ax, &y.cocycle, ay, 1, None).unwrap();
        assert_eq!((r.lhs.as_str(), r.rhs.as_str(), r.equal), ("-1", "-1", true));
        assert_eq!(degree_of_pair(&x.cocycle, ax, &x.cocycle, ax).unwrap(), rat(-2));
        assert_eq!(degree_of_pair(&y.cocycle, ay, &y.cocycle, ay).unwrap(), rat(-2));
    }

    #[test]
    fn report_serialization() {
        let p = Arc::new(PencilModel::builtin_elliptic12());
        let z = TwistedCocycle::zero(p, Ring::Integers);
        let r = verify_cocycles(&z, &z, 1, Some(3)).unwrap();
        assert!(r.equal);
        assert_eq!(r.lhs, "0");
        assert_eq!(TheoremReport::from_json(&r.to_json()).unwrap(), r);
    }
}
