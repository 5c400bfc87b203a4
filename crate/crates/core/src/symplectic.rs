//! Integer symplectic lattice algebra: the fiber lattice `Z^{2g}`, its
//! intersection pairing and Picard–Lefschetz transvections.
//!
//! Conventions (see `CONVENTIONS.md`):
//! - `J = [[0, I], [-I, 0]]` and `pair(x, y) = xᵀ J y`;
//! - matrices act on the left of column vectors;
//! - the transvection about `δ` is `x ↦ x + pair(x, δ) δ`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Int, Matrix, Rat, Scalar};

/// Coefficient ring for cocycles and potentials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    #[serde(rename = "int")]
    Integers,
    #[serde(rename = "rat")]
    Rationals,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Integers => "int",
            Ring::Rationals => "rat",
        })
    }
}

impl std::str::FromStr for Ring {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "int" => Ok(Ring::Integers),
            "rat" => Ok(Ring::Rationals),
            other => Err(Error::InvalidParameter(format!("unknown ring {other:?}"))),
        }
    }
}

/// A vector in the rank-`2g` fiber, with coordinates in `T`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector<T> {
    coords: Vec<T>,
}

/// Integral vector: a class in the fiber lattice, e.g. a vanishing cycle.
pub type LatticeVector = Vector<Int>;
/// Rational vector: cocycle values, potentials, section values.
pub type RatVector = Vector<Rat>;

impl<T: Scalar> Vector<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.is_empty() || coords.len() % 2 != 0 {
            return Err(Error::Dimension {
                expected: 2 * (coords.len() / 2).max(1),
                found: coords.len(),
            });
        }
        Ok(Vector { coords })
    }

    pub fn zero(genus: usize) -> Self {
        Vector {
            coords: vec![T::zero(); 2 * genus],
        }
    }

    /// Standard basis vector `e_i`.
    pub fn basis(genus: usize, i: usize) -> Self {
        let mut v = Self::zero(genus);
        v.coords[i] = T::one();
        v
    }

    pub fn genus(&self) -> usize {
        self.coords.len() / 2
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &T) -> Self {
        Vector {
            coords: self.coords.iter().map(|c| c.clone() * s).collect(),
        }
    }

    pub(crate) fn from_coords_unchecked(coords: Vec<T>) -> Self {
        Vector { coords }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

impl LatticeVector {
    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Vector::new(coords.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn to_rational(&self) -> RatVector {
        Vector {
            coords: self.coords.iter().map(linalg::to_rat).collect(),
        }
    }
}

impl RatVector {
    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Vector::new(coords.iter().map(|&c| linalg::rat(c)).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(linalg::is_integral)
    }

    /// The integral vector with the same coordinates, if there is one.
    pub fn to_lattice(&self) -> Option<LatticeVector> {
        self.is_integral().then(|| Vector {
            coords: self.coords.iter().map(|c| c.to_integer()).collect(),
        })
    }
}

impl<T: Scalar> Add for &Vector<T> {
    type Output = Vector<T>;
    fn add(self, rhs: &Vector<T>) -> Vector<T> {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        Vector {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a.clone() + b).collect(),
        }
    }
}

impl<T: Scalar> Sub for &Vector<T> {
    type Output = Vector<T>;
    fn sub(self, rhs: &Vector<T>) -> Vector<T> {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        Vector {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a.clone() - b).collect(),
        }
    }
}

impl<T: Scalar> Neg for &Vector<T> {
    type Output = Vector<T>;
    fn neg(self) -> Vector<T> {
        Vector {
            coords: self.coords.iter().map(|a| -a.clone()).collect(),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl<T: fmt::Display> fmt::Debug for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The intersection pairing `xᵀ J y`.
pub fn pair<T: Scalar>(x: &Vector<T>, y: &Vector<T>) -> Result<T> {
    x.check_same(y)?;
    let g = x.genus();
    let mut acc = T::zero();
    for i in 0..g {
        acc = acc + &(x.coords[i].clone() * &y.coords[g + i]);
        acc = acc - &(x.coords[g + i].clone() * &y.coords[i]);
    }
    Ok(acc)
}

/// An integral `2g × 2g` matrix preserving the pairing.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymplecticMatrix {
    genus: usize,
    m: Matrix<Int>,
}

/// The block form `[[0, I], [-I, 0]]`.
pub fn standard_form(genus: i64) -> Result<SymplecticMatrix> {
    if genus < 1 {
        return Err(Error::InvalidGenus(genus));
    }
    let g = genus as usize;
    Ok(SymplecticMatrix {
        genus: g,
        m: j_matrix(g),
    })
}

fn j_matrix<T: Scalar>(g: usize) -> Matrix<T> {
    Matrix::from_fn(2 * g, 2 * g, |i, j| {
        if j == i + g {
            T::one()
        } else if i == j + g {
            -T::one()
        } else {
            T::zero()
        }
    })
}

/// Whether `MᵀJM = J` holds exactly.
pub fn is_symplectic(m: &Matrix<Int>) -> Result<bool> {
    if !m.is_square() || m.rows() % 2 != 0 || m.rows() == 0 {
        return Err(Error::Dimension {
            expected: 2 * (m.rows() / 2).max(1),
            found: m.rows(),
        });
    }
    let j = j_matrix::<Int>(m.rows() / 2);
    Ok(&(&m.transpose() * &j) * m == j)
}

/// Picard–Lefschetz transvection `x ↦ x + pair(x, δ) δ`.
pub fn transvection(delta: &LatticeVector) -> Result<SymplecticMatrix> {
    signed_transvection(delta, 1)
}

/// Inverse transvection `x ↦ x - pair(x, δ) δ`.
pub fn inverse_transvection(delta: &LatticeVector) -> Result<SymplecticMatrix> {
    signed_transvection(delta, -1)
}

fn signed_transvection(delta: &LatticeVector, sign: i64) -> Result<SymplecticMatrix> {
    if delta.is_zero() {
        return Err(Error::InvalidCycle);
    }
    let g = delta.genus();
    let jd = j_matrix::<Int>(g).mul_vec(delta.coords());
    let s = Int::from(sign);
    // pair(x, δ) = (Jδ)ᵀ x, so the matrix is I + s δ (Jδ)ᵀ
    let m = Matrix::from_fn(2 * g, 2 * g, |i, j| {
        let id = if i == j { Int::one() } else { Int::zero() };
        id + &s * &delta.coords()[i] * &jd[j]
    });
    Ok(SymplecticMatrix { genus: g, m })
}

impl SymplecticMatrix {
    pub fn new(m: Matrix<Int>) -> Result<Self> {
        if !is_symplectic(&m)? {
            return Err(Error::SymplecticViolation { index: 0 });
        }
        Ok(SymplecticMatrix {
            genus: m.rows() / 2,
            m,
        })
    }

    pub fn from_rows_i64(rows: &[&[i64]]) -> Result<Self> {
        let m = Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Int::from(x)).collect())
                .collect(),
        )
        .ok_or(Error::Parse("ragged matrix rows".into()))?;
        Self::new(m)
    }

    pub fn identity(genus: usize) -> Self {
        SymplecticMatrix {
            genus,
            m: Matrix::identity(2 * genus),
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn matrix(&self) -> &Matrix<Int> {
        &self.m
    }

    pub fn is_identity(&self) -> bool {
        self.m == Matrix::identity(2 * self.genus)
    }

    /// `M⁻¹ = -J Mᵀ J`.
    pub fn inverse(&self) -> Self {
        let j = j_matrix::<Int>(self.genus);
        SymplecticMatrix {
            genus: self.genus,
            m: -&(&(&j * &self.m.transpose()) * &j),
        }
    }

    pub fn compose(&self, rhs: &SymplecticMatrix) -> Self {
        assert_eq!(self.genus, rhs.genus, "genus mismatch");
        SymplecticMatrix {
            genus: self.genus,
            m: &self.m * &rhs.m,
        }
    }

    pub fn apply<T: Scalar>(&self, v: &Vector<T>) -> Vector<T> {
        assert_eq!(v.dim(), 2 * self.genus, "vector dimension mismatch");
        let m = self.m.map(T::from_int);
        Vector {
            coords: m.mul_vec(v.coords()),
        }
    }

    /// `M - I`, the map whose image is the local variation.
    pub fn minus_identity(&self) -> Matrix<Int> {
        &self.m - &Matrix::identity(2 * self.genus)
    }

    pub fn transpose_matrix(&self) -> Matrix<Int> {
        self.m.transpose()
    }

    pub fn determinant(&self) -> Int {
        linalg::determinant(&self.m)
    }
}

impl fmt::Display for SymplecticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.m, f)
    }
}

impl fmt::Debug for SymplecticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.m, f)
    }
}

/// Integral basis (Hermite form) of the invariant lattice `ker(T - I) ∩ Z^{2g}`.
///
/// At a nodal fiber with transvection monodromy this is the corank-one
/// partial lattice.
pub fn invariant_sublattice(t: &SymplecticMatrix) -> Vec<LatticeVector> {
    let kernel = linalg::integer_kernel(&t.minus_identity());
    linalg::hermite_basis(&kernel, 2 * t.genus())
        .into_iter()
        .map(Vector::from_coords_unchecked)
        .collect()
}

/// A solution `a` of `(T - I) a = c` over `ring`, if one exists.
///
/// Solutions are unique up to `ker(T - I)` over the ring.
pub fn solve_potential(t: &SymplecticMatrix, c: &RatVector, ring: Ring) -> Result<Option<RatVector>> {
    if c.dim() != 2 * t.genus() {
        return Err(Error::Dimension {
            expected: 2 * t.genus(),
            found: c.dim(),
        });
    }
    if c.is_zero() {
        return Ok(Some(RatVector::zero(t.genus())));
    }
    let a = t.minus_identity();
    let solution = match ring {
        Ring::Rationals => linalg::solve_rational(&a.map(linalg::to_rat), c.coords()),
        Ring::Integers => {
            let Some(ci) = c.to_lattice() else {
                return Ok(None);
            };
            linalg::solve_integer(&a, ci.coords())
                .map(|x| x.iter().map(linalg::to_rat).collect())
        }
    };
    Ok(solution.map(Vector::from_coords_unchecked))
}
