use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::is_prime;
use crate::error::{Error, Result};
use crate::presentation::{mod_p_rank, reidemeister_schreier, FiniteAbelianQuotient, Presentation};

use super::pulled_back_characters;

/// Nested finite abelian quotients `Q_1, Q_2, ...` with p-power relative index.
#[derive(Debug, Clone)]
pub struct TowerSpec {
    presentation: Presentation,
    prime: u64,
    quotients: Vec<FiniteAbelianQuotient>,
}

impl TowerSpec {
    /// Checks that each `Q_n` factors through `Q_{n+1}` and that
    /// `|Gamma_{n+1}| / |Gamma_n|` is a power of `prime`.
    pub fn new(presentation: Presentation, prime: u64, quotients: Vec<FiniteAbelianQuotient>) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        if quotients.is_empty() {
            return Err(Error::IncompatibleTower("tower has no levels".into()));
        }
        for (i, pair) in quotients.windows(2).enumerate() {
            let (lower, upper) = (&pair[0], &pair[1]);
            if upper.order() % lower.order() != 0 || !is_power_of(upper.order() / lower.order(), prime) {
                return Err(Error::IncompatibleTower(format!(
                    "index of level {} in level {} is {}/{}, not a power of {prime}",
                    i + 2,
                    i + 1,
                    upper.order(),
                    lower.order()
                )));
            }
            // ker Q_{n+1} <= ker Q_n iff every character of Q_n is one of Q_{n+1}
            let upper_chars: std::collections::BTreeSet<_> = pulled_back_characters(upper).into_iter().collect();
            if !pulled_back_characters(lower).iter().all(|c| upper_chars.contains(c)) {
                return Err(Error::IncompatibleTower(format!(
                    "level {} does not factor through level {}",
                    i + 1,
                    i + 2
                )));
            }
        }
        Ok(TowerSpec {
            presentation,
            prime,
            quotients,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn quotients(&self) -> &[FiniteAbelianQuotient] {
        &self.quotients
    }
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankGradientLevel {
    pub level: usize,
    pub index: u64,
    pub mod_p_rank: usize,
    pub ratio: BigRational,
}

/// Finite-stage estimate of the mod-p homology rank gradient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankGradient {
    pub levels: Vec<RankGradientLevel>,
    /// Minimum ratio over the computed levels.
    pub minimum: BigRational,
}

/// `min_{i <= depth} dim H_1(ker Q_i; F_p) / |Gamma_i|`.
pub fn rank_gradient(tower: &TowerSpec, depth: usize) -> Result<RankGradient> {
    if depth == 0 || depth > tower.quotients.len() {
        return Err(Error::IncompatibleTower(format!(
            "depth {depth} requested from a tower with {} levels",
            tower.quotients.len()
        )));
    }
    let mut levels = Vec::with_capacity(depth);
    for (i, q) in tower.quotients.iter().take(depth).enumerate() {
        let sub = reidemeister_schreier(&tower.presentation, q);
        let rank = mod_p_rank(&sub.presentation, tower.prime)?;
        levels.push(RankGradientLevel {
            level: i + 1,
            index: q.order(),
            mod_p_rank: rank,
            ratio: BigRational::new(BigInt::from(rank), BigInt::from(q.order())),
        });
    }
    let minimum = levels
        .iter()
        .map(|l| l.ratio.clone())
        .min()
        .expect("at least one level");
    Ok(RankGradient { levels, minimum })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::make_quotient;

    fn f2_tower(n: u32) -> (Presentation, Vec<FiniteAbelianQuotient>) {
        let p: Presentation = "< a, b | >".parse().unwrap();
        let qs = (1..=n)
            .map(|k| make_quotient(&p, &[vec![1], vec![0]], &[1 << k]).unwrap())
            .collect();
        (p, qs)
    }

    #[test]
    fn free_group_tower() {
        let (p, qs) = f2_tower(3);
        let tower = TowerSpec::new(p, 2, qs).unwrap();
        let rg = rank_gradient(&tower, 3).unwrap();
        let ranks: Vec<usize> = rg.levels.iter().map(|l| l.mod_p_rank).collect();
        assert_eq!(ranks, vec![3, 5, 9]);
        assert_eq!(rg.minimum, BigRational::new(9.into(), 8.into()));
        assert!(rg.minimum > BigRational::from_integer(1.into()));
    }

    #[test]
    fn cyclic_group_trivial_tower() {
        let p: Presentation = "< a | a^3 >".parse().unwrap();
        let tower = TowerSpec::new(p, 2, vec![FiniteAbelianQuotient::trivial(1)]).unwrap();
        let rg = rank_gradient(&tower, 1).unwrap();
        assert_eq!(rg.minimum, BigRational::from_integer(0.into()));
    }

    #[test]
    fn single_level_trivial() {
        let p: Presentation = "< a, b | >".parse().unwrap();
        let tower = TowerSpec::new(p, 3, vec![FiniteAbelianQuotient::trivial(2)]).unwrap();
        assert_eq!(rank_gradient(&tower, 1).unwrap().minimum, BigRational::from_integer(2.into()));
    }

    #[test]
    fn incompatible_towers() {
        let (p, mut qs) = f2_tower(2);
        assert!(matches!(TowerSpec::new(p.clone(), 3, qs.clone()), Err(Error::IncompatibleTower(_))));
        // Z/4 via b does not sit over Z/2 via a
        qs[1] = make_quotient(&p, &[vec![0], vec![1]], &[4]).unwrap();
        assert!(matches!(TowerSpec::new(p.clone(), 2, qs), Err(Error::IncompatibleTower(_))));
        let (p, qs) = f2_tower(2);
        let tower = TowerSpec::new(p, 2, qs).unwrap();
        assert!(rank_gradient(&tower, 3).is_err());
    }
}
