//! Combinatorial Lefschetz pencils: a rank-`2g` local system on the sphere
//! with `m` punctures, given by monodromies `T_1, …, T_m` around the
//! punctures with `T_1 ⋯ T_m = I`.
//!
//! Loops compose left to right (`γγ'` runs `γ` first) and monodromies act
//! on the left, so the loop `γ_i γ_j` has monodromy `T_i T_j`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::random::{self, Rng};
use crate::symplectic::{transvection, LatticeVector, SymplecticMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilModel {
    genus: usize,
    monodromies: Vec<SymplecticMatrix>,
    vanishing_cycles: Option<Vec<LatticeVector>>,
    lefschetz: bool,
}

impl PencilModel {
    /// Validates a list of monodromies. The Lefschetz flag is left unset;
    /// use [`PencilModel::with_vanishing_cycles`] to attach cycles.
    pub fn new(genus: i64, monodromies: Vec<SymplecticMatrix>) -> Result<Self> {
        if genus < 1 {
            return Err(Error::InvalidGenus(genus));
        }
        let g = genus as usize;
        for (index, t) in monodromies.iter().enumerate() {
            if t.genus() != g {
                return Err(Error::Dimension {
                    expected: 2 * g,
                    found: 2 * t.genus(),
                });
            }
            // matrices built through SymplecticMatrix are already checked,
            // but re-check so the index is reported
            if !crate::symplectic::is_symplectic(t.matrix())? {
                return Err(Error::SymplecticViolation { index });
            }
        }
        let product = monodromies
            .iter()
            .fold(SymplecticMatrix::identity(g), |acc, t| acc.compose(t));
        if !product.is_identity() {
            return Err(Error::RelationViolation {
                product: product.to_string(),
            });
        }
        Ok(PencilModel {
            genus: g,
            monodromies,
            vanishing_cycles: None,
            lefschetz: false,
        })
    }

    /// Validates monodromies together with vanishing cycles; the Lefschetz
    /// flag is set iff every `T_i` is the transvection about `δ_i`.
    pub fn with_vanishing_cycles(
        genus: i64,
        monodromies: Vec<SymplecticMatrix>,
        cycles: Vec<LatticeVector>,
    ) -> Result<Self> {
        let mut p = Self::new(genus, monodromies)?;
        if cycles.len() != p.punctures() {
            return Err(Error::Dimension {
                expected: p.punctures(),
                found: cycles.len(),
            });
        }
        let mut lefschetz = true;
        for (t, d) in p.monodromies.iter().zip(&cycles) {
            if d.dim() != 2 * p.genus {
                return Err(Error::Dimension {
                    expected: 2 * p.genus,
                    found: d.dim(),
                });
            }
            lefschetz &= !d.is_zero() && transvection(d)? == *t;
        }
        p.lefschetz = lefschetz;
        p.vanishing_cycles = Some(cycles);
        Ok(p)
    }

    /// The pencil whose monodromies are the transvections about `cycles`.
    pub fn lefschetz_from_cycles(genus: i64, cycles: Vec<LatticeVector>) -> Result<Self> {
        if genus < 1 {
            return Err(Error::InvalidGenus(genus));
        }
        let monodromies = cycles
            .iter()
            .map(|d| {
                if d.dim() != 2 * genus as usize {
                    return Err(Error::Dimension {
                        expected: 2 * genus as usize,
                        found: d.dim(),
                    });
                }
                transvection(d)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::with_vanishing_cycles(genus, monodromies, cycles)
    }

    /// Rational elliptic surface: twelve nodal fibers with vanishing cycles
    /// alternating `(1,0)` and `(0,1)`, so the monodromy is `(AB)^6 = I`.
    pub fn builtin_elliptic12() -> Self {
        let a = LatticeVector::from_i64(&[1, 0]).expect("valid");
        let b = LatticeVector::from_i64(&[0, 1]).expect("valid");
        let cycles = (0..12).map(|i| if i % 2 == 0 { a.clone() } else { b.clone() }).collect();
        Self::lefschetz_from_cycles(1, cycles).expect("(AB)^6 = I")
    }

    /// Genus-two Lefschetz pencil with 20 nodal fibers, from the chain
    /// relation `(t1 t2 t3 t4 t5² t4 t3 t2 t1)² = 1` on the standard chain
    /// `a1, b1, a2 - a1, b2, a2`.
    pub fn builtin_genus2_chain20() -> Self {
        let v = |c: &[i64]| LatticeVector::from_i64(c).expect("valid");
        // coordinates (a1, a2, b1, b2)
        let chain = [v(&[1, 0, 0, 0]), v(&[0, 0, 1, 0]), v(&[-1, 1, 0, 0]), v(&[0, 0, 0, 1]), v(&[0, 1, 0, 0])];
        let word = [0, 1, 2, 3, 4, 4, 3, 2, 1, 0];
        let cycles = word.iter().chain(word.iter()).map(|&i| chain[i].clone()).collect();
        Self::lefschetz_from_cycles(2, cycles).expect("chain relation holds")
    }

    /// Seeded random pencil of half-length `k`: `k` transvections about
    /// random primitive cycles followed by their inverses in reverse order,
    /// so `m = 2k`. The Lefschetz flag is unset since the second half are
    /// negative transvections.
    pub fn random_instance(genus: i64, k: usize, seed: u64) -> Result<Self> {
        if genus < 1 {
            return Err(Error::InvalidGenus(genus));
        }
        if k < 1 {
            return Err(Error::InvalidParameter("half-length must be at least 1".into()));
        }
        let mut rng = Rng::from_seed(seed);
        let g = genus as usize;
        let cycles: Vec<LatticeVector> = (0..k).map(|_| random::primitive_vector(g, &mut rng)).collect();
        let mut monodromies = cycles.iter().map(transvection).collect::<Result<Vec<_>>>()?;
        for d in cycles.iter().rev() {
            monodromies.push(crate::symplectic::inverse_transvection(d)?);
        }
        let mut all_cycles = cycles.clone();
        all_cycles.extend(cycles.into_iter().rev());
        Self::with_vanishing_cycles(genus, monodromies, all_cycles)
    }

    /// Seeded random genuine Lefschetz pencil: a builtin fixture
    /// (`elliptic12` for genus one, `genus2_chain20` for genus two)
    /// scrambled by Hurwitz moves and a global symplectic change of basis.
    pub fn random_lefschetz(genus: i64, seed: u64) -> Result<Self> {
        let base = match genus {
            1 => Self::builtin_elliptic12(),
            2 => Self::builtin_genus2_chain20(),
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "no Lefschetz fixture for genus {genus}"
                )))
            }
        };
        let mut rng = Rng::from_seed(seed);
        let mut cycles = base.vanishing_cycles.clone().expect("fixture has cycles");
        let m = cycles.len();
        for _ in 0..rng.below(5) {
            let i = rng.below(m as u64 - 1) as usize;
            // (δ_i, δ_{i+1}) -> (T_{δ_i} δ_{i+1}, δ_i) keeps the product
            let moved = transvection(&cycles[i])?.apply(&cycles[i + 1]);
            cycles[i + 1] = cycles[i].clone();
            cycles[i] = moved;
        }
        let change = random::small_symplectic(genus as usize, &mut rng)?;
        let cycles = cycles.iter().map(|d| change.apply(d)).collect();
        Self::lefschetz_from_cycles(genus, cycles)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn punctures(&self) -> usize {
        self.monodromies.len()
    }

    pub fn monodromies(&self) -> &[SymplecticMatrix] {
        &self.monodromies
    }

    pub fn monodromy(&self, i: usize) -> &SymplecticMatrix {
        &self.monodromies[i]
    }

    pub fn vanishing_cycles(&self) -> Option<&[LatticeVector]> {
        self.vanishing_cycles.as_deref()
    }

    pub fn is_lefschetz(&self) -> bool {
        self.lefschetz
    }

    /// `P_0, …, P_m` with `P_k = T_1 ⋯ T_k` (so `P_0 = I`, `P_m = I`).
    pub fn partial_products(&self) -> Vec<SymplecticMatrix> {
        let mut out = vec![SymplecticMatrix::identity(self.genus)];
        for t in &self.monodromies {
            let next = out.last().expect("nonempty").compose(t);
            out.push(next);
        }
        out
    }

    /// Monodromy of a word in the generators. Letters are signed and
    /// one-based: `i` stands for `γ_i`, `-i` for `γ_i⁻¹`.
    pub fn monodromy_of_word(&self, word: &[i64]) -> Result<SymplecticMatrix> {
        let mut acc = SymplecticMatrix::identity(self.genus);
        for &letter in word {
            let i = self.letter_index(letter)?;
            let t = &self.monodromies[i];
            acc = if letter > 0 { acc.compose(t) } else { acc.compose(&t.inverse()) };
        }
        Ok(acc)
    }

    pub(crate) fn letter_index(&self, letter: i64) -> Result<usize> {
        let i = letter.unsigned_abs() as usize;
        if letter == 0 || i > self.punctures() {
            return Err(Error::IndexOutOfRange {
                letter,
                punctures: self.punctures(),
            });
        }
        Ok(i - 1)
    }

    /// Re-cuts the sphere so that `γ_2` becomes the first generator. Returns
    /// the new model `(T_2, …, T_m, T_1')` with
    /// `T_1' = (T_2⋯T_m)⁻¹ T_1 (T_2⋯T_m)` and the matching [`Rotation`].
    pub fn rotate_marking(&self) -> (PencilModel, Rotation) {
        let m = self.punctures();
        if m <= 1 {
            return (self.clone(), Rotation { punctures: m });
        }
        let q = self.monodromies[1..]
            .iter()
            .fold(SymplecticMatrix::identity(self.genus), |acc, t| acc.compose(t));
        let last = q.inverse().compose(&self.monodromies[0]).compose(&q);
        let mut monodromies = self.monodromies[1..].to_vec();
        monodromies.push(last);
        let vanishing_cycles = self.vanishing_cycles.as_ref().map(|c| {
            let mut out = c[1..].to_vec();
            out.push(q.inverse().apply(&c[0]));
            out
        });
        let rotated = PencilModel {
            genus: self.genus,
            lefschetz: self.lefschetz,
            vanishing_cycles,
            monodromies,
        };
        debug_assert!(rotated.partial_products().last().is_some_and(SymplecticMatrix::is_identity));
        (rotated, Rotation { punctures: m })
    }
}

/// Change of cut system produced by [`PencilModel::rotate_marking`]. The new
/// generators are `γ'_j = γ_{j+1}` for `j < m` and
/// `γ'_m = (γ_2⋯γ_m)⁻¹ γ_1 (γ_2⋯γ_m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rotation {
    punctures: usize,
}

impl Rotation {
    pub fn punctures(&self) -> usize {
        self.punctures
    }

    /// The new generators as words in the old ones.
    pub fn generator_words(&self) -> Vec<Vec<i64>> {
        let m = self.punctures as i64;
        if m <= 1 {
            return (1..=m).map(|i| vec![i]).collect();
        }
        let mut words: Vec<Vec<i64>> = (2..=m).map(|i| vec![i]).collect();
        let mut conj: Vec<i64> = (2..=m).rev().map(|i| -i).collect();
        conj.push(1);
        conj.extend(2..=m);
        words.push(conj);
        words
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sm(rows: &[&[i64]]) -> SymplecticMatrix {
        SymplecticMatrix::from_rows_i64(rows).unwrap()
    }

    #[test]
    fn new_pencil_examples() {
        let a = sm(&[&[1, -1], &[0, 1]]);
        let a_inv = sm(&[&[1, 1], &[0, 1]]);
        assert_eq!(PencilModel::new(1, vec![a.clone(), a_inv.clone()]).unwrap().punctures(), 2);
        assert!(PencilModel::new(1, vec![SymplecticMatrix::identity(1)]).is_ok());
        match PencilModel::new(1, vec![a_inv.clone(), a_inv]) {
            Err(Error::RelationViolation { product }) => assert_eq!(product, "[[1, 2], [0, 1]]"),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(PencilModel::new(0, vec![]), Err(Error::InvalidGenus(0)));
    }

    #[test]
    fn lefschetz_from_cycles_examples() {
        let d = LatticeVector::from_i64(&[1, 0]).unwrap();
        assert!(matches!(
            PencilModel::lefschetz_from_cycles(1, vec![d.clone(), d.clone(), d]),
            Err(Error::RelationViolation { .. })
        ));
        let empty = PencilModel::lefschetz_from_cycles(1, vec![]).unwrap();
        assert_eq!(empty.punctures(), 0);
    }

    #[test]
    fn elliptic12_fixture() {
        let p = PencilModel::builtin_elliptic12();
        assert_eq!(p.punctures(), 12);
        assert!(p.is_lefschetz());
        assert!(p.partial_products()[12].is_identity());
        assert_eq!(p.monodromy(0), &sm(&[&[1, -1], &[0, 1]]));
        assert_eq!(p.monodromy(1), &sm(&[&[1, 0], &[1, 1]]));
        assert_eq!(p.monodromy_of_word(&[1, 2]).unwrap(), sm(&[&[0, -1], &[1, 1]]));
    }

    #[test]
    fn genus2_fixture() {
        let p = PencilModel::builtin_genus2_chain20();
        assert_eq!(p.punctures(), 20);
        assert!(p.is_lefschetz());
    }

    #[test]
    fn words() {
        let p = PencilModel::builtin_elliptic12();
        assert!(p.monodromy_of_word(&[]).unwrap().is_identity());
        assert!(p.monodromy_of_word(&[3, -3]).unwrap().is_identity());
        assert!(matches!(p.monodromy_of_word(&[13]), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(p.monodromy_of_word(&[0]), Err(Error::IndexOutOfRange { .. })));
        let u = [1, -4, 7];
        let v = [2, 2, -11];
        let uv: Vec<i64> = u.iter().chain(&v).copied().collect();
        assert_eq!(
            p.monodromy_of_word(&uv).unwrap(),
            p.monodromy_of_word(&u).unwrap().compose(&p.monodromy_of_word(&v).unwrap())
        );
    }

    #[test]
    fn random_instance_is_deterministic() {
        let p = PencilModel::random_instance(2, 5, 99).unwrap();
        assert_eq!(p.punctures(), 10);
        assert!(!p.is_lefschetz());
        assert_eq!(p, PencilModel::random_instance(2, 5, 99).unwrap());
        assert_ne!(p, PencilModel::random_instance(2, 5, 100).unwrap());
    }

    #[test]
    fn random_lefschetz_is_lefschetz() {
        for seed in 0..10 {
            for g in [1, 2] {
                let p = PencilModel::random_lefschetz(g, seed).unwrap();
                assert!(p.is_lefschetz());
            }
        }
    }

    #[test]
    fn rotation_cycles_back() {
        let p = PencilModel::random_instance(2, 3, 4).unwrap();
        let mut q = p.clone();
        for _ in 0..p.punctures() {
            q = q.rotate_marking().0;
        }
        assert_eq!(q.monodromies(), p.monodromies());
        let one = PencilModel::new(1, vec![SymplecticMatrix::identity(1)]).unwrap();
        assert_eq!(one.rotate_marking().0, one);
    }

    #[test]
    fn rotation_words_match_monodromies() {
        let p = PencilModel::builtin_elliptic12();
        let (q, rot) = p.rotate_marking();
        for (j, w) in rot.generator_words().iter().enumerate() {
            assert_eq!(&p.monodromy_of_word(w).unwrap(), q.monodromy(j));
        }
        assert!(q.is_lefschetz());
    }
}
