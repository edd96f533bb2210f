use num_integer::Integer;

use crate::error::{Error, Result};
use crate::presentation::Presentation;

/// A finite-order character `g -> zeta_L^{e_g}` on the generators.
///
/// The stored order need not be exact; [`Character::normalized`] reduces it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    order: u64,
    exponents: Vec<u64>,
}

impl Character {
    /// Exponents are reduced modulo `order`.
    pub fn new(order: u64, exponents: Vec<i64>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidCharacter("order must be positive".into()));
        }
        let l = order as i64;
        Ok(Character {
            order,
            exponents: exponents.into_iter().map(|e| e.rem_euclid(l) as u64).collect(),
        })
    }

    /// Like [`Character::new`], additionally checking that every relator of `p`
    /// is sent to 1.
    pub fn for_presentation(p: &Presentation, order: u64, exponents: Vec<i64>) -> Result<Self> {
        let chi = Self::new(order, exponents)?;
        chi.check(p)?;
        Ok(chi)
    }

    pub fn trivial(generators: usize) -> Self {
        Character {
            order: 1,
            exponents: vec![0; generators],
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Same character with `order` equal to the exact order of its image.
    pub fn normalized(&self) -> Self {
        let g = self
            .exponents
            .iter()
            .fold(self.order, |g, &e| g.gcd(&e));
        Character {
            order: self.order / g,
            exponents: self.exponents.iter().map(|e| e / g).collect(),
        }
    }

    /// `k` with `chi(x) = zeta_L^k` for an element with the given exponent sums.
    pub fn value_exponent(&self, sums: &[i64]) -> u64 {
        let l = self.order as i128;
        let s: i128 = sums
            .iter()
            .zip(&self.exponents)
            .map(|(&k, &e)| k as i128 * e as i128)
            .sum();
        s.rem_euclid(l) as u64
    }

    /// Verifies generator count and that relators map to 1.
    pub fn check(&self, p: &Presentation) -> Result<()> {
        let r = p.generator_count();
        if self.exponents.len() != r {
            return Err(Error::InvalidCharacter(format!(
                "{} exponents given for {r} generators",
                self.exponents.len()
            )));
        }
        for rel in p.relators() {
            if self.value_exponent(&rel.exponent_sums(r)) != 0 {
                return Err(Error::InvalidCharacter(format!(
                    "relator {} is not sent to 1",
                    p.render_word(rel)
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let chi = Character::new(12, vec![4, 8]).unwrap().normalized();
        assert_eq!(chi.order(), 3);
        assert_eq!(chi.exponents(), &[1, 2]);
        assert!(Character::new(6, vec![0, 6]).unwrap().is_trivial());
        assert_eq!(Character::new(6, vec![0, 6]).unwrap().normalized().order(), 1);
    }

    #[test]
    fn relator_check() {
        let p: Presentation = "< a, b | a b a b^-1 a^-1 b^-1 >".parse().unwrap();
        assert!(Character::for_presentation(&p, 6, vec![1, 1]).is_ok());
        assert!(matches!(
            Character::for_presentation(&p, 6, vec![1, 2]),
            Err(Error::InvalidCharacter(_))
        ));
        assert!(matches!(Character::new(0, vec![]), Err(Error::InvalidCharacter(_))));
    }
}
