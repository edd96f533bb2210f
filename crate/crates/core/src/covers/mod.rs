//! First Betti numbers of finite abelian covers, mod-p rank gradients along
//! towers, and Cheeger constants of finite coset graphs.

mod cheeger;
mod tower;

use std::collections::{BTreeSet, HashMap};

pub use cheeger::{cheeger_constant, CosetGraph, DEFAULT_CHEEGER_BOUND};
pub use tower::{rank_gradient, RankGradient, RankGradientLevel, TowerSpec};

use crate::error::{Error, Result};
use crate::fox::{alexander_matrix, strata_depth, AlexanderMatrix, Character};
use crate::presentation::{betti_numbers, reidemeister_schreier, FiniteAbelianQuotient, Presentation};

/// Every dual character `c` of `Gamma`, as exponent tuples in lexicographic order.
pub fn dual_characters(q: &FiniteAbelianQuotient) -> impl Iterator<Item = Vec<u64>> + '_ {
    q.elements()
}

/// The nontrivial characters of `Gamma` pulled back to the generators.
pub fn pulled_back_characters(q: &FiniteAbelianQuotient) -> Vec<Character> {
    dual_characters(q)
        .filter(|c| c.iter().any(|&x| x != 0))
        .map(|c| {
            let (l, e) = q.pullback_exponents(&c);
            Character::new(l, e.into_iter().map(|x| x as i64).collect())
                .expect("positive order")
                .normalized()
        })
        .collect()
}

/// Strata depths for one presentation, memoized per normalized character.
#[derive(Debug, Clone)]
pub struct StrataCache {
    matrix: AlexanderMatrix,
    b1: usize,
    depths: HashMap<Character, usize>,
}

impl StrataCache {
    pub fn new(p: &Presentation) -> Self {
        let matrix = alexander_matrix(p);
        let b1 = matrix.free_rank();
        StrataCache {
            matrix,
            b1,
            depths: HashMap::new(),
        }
    }

    pub fn matrix(&self) -> &AlexanderMatrix {
        &self.matrix
    }

    pub fn depth(&mut self, chi: &Character) -> Result<usize> {
        let chi = chi.normalized();
        if let Some(&d) = self.depths.get(&chi) {
            return Ok(d);
        }
        let d = strata_depth(&self.matrix, &chi)?;
        self.depths.insert(chi, d);
        Ok(d)
    }

    /// `b_1(P) + sum over nontrivial chi of depth(chi . alpha)`.
    pub fn betti(&mut self, q: &FiniteAbelianQuotient) -> Result<usize> {
        check_quotient(self.matrix.presentation(), q)?;
        let mut total = self.b1;
        for chi in pulled_back_characters(q) {
            total += self.depth(&chi)?;
        }
        Ok(total)
    }
}

fn check_quotient(p: &Presentation, q: &FiniteAbelianQuotient) -> Result<()> {
    let r = p.generator_count();
    if q.images().len() != r {
        return Err(Error::InvalidQuotient(format!(
            "{} generator images for {r} generators",
            q.images().len()
        )));
    }
    for (index, rel) in p.relators().iter().enumerate() {
        if q.image_of_exponents(&rel.exponent_sums(r)).iter().any(|&x| x != 0) {
            return Err(Error::RelatorViolation {
                index,
                relator: p.render_word(rel),
            });
        }
    }
    if !is_surjective(q) {
        return Err(Error::NotSurjective);
    }
    Ok(())
}

/// `b_1` of the cover from the character-sum formula over the Alexander strata.
pub fn betti_via_strata(p: &Presentation, q: &FiniteAbelianQuotient) -> Result<usize> {
    StrataCache::new(p).betti(q)
}

/// `b_1` of the cover from a Reidemeister-Schreier presentation and Smith form.
pub fn betti_via_oracle(p: &Presentation, q: &FiniteAbelianQuotient) -> usize {
    betti_numbers(&reidemeister_schreier(p, q).presentation).b1
}

/// Does the subgroup generated by the images fill `Gamma`?
fn is_surjective(q: &FiniteAbelianQuotient) -> bool {
    let n = q.order() as usize;
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![q.element(0)];
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for img in q.images() {
            let y = q.add(&x, img);
            let k = q.index_of(&y);
            if !seen[k] {
                seen[k] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == n
}

/// Invariant-factor lists `e_1 | e_2 | ...` (each at least 2) with product `n`.
pub fn abelian_groups_of_order(n: u64) -> Vec<Vec<u64>> {
    fn rec(remaining: u64, min_factor: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if remaining == 1 {
            out.push(prefix.clone());
            return;
        }
        // next factor must be a multiple of the previous one and divide what's left
        let mut f = min_factor;
        while f <= remaining {
            if remaining.is_multiple_of(f) && prefix.last().is_none_or(|&p| f.is_multiple_of(p)) {
                // the remainder must still admit factors divisible by f
                let rest = remaining / f;
                if rest == 1 || rest.is_multiple_of(f) {
                    prefix.push(f);
                    rec(rest, f, prefix, out);
                    prefix.pop();
                }
            }
            f += 1;
        }
    }
    let mut out = Vec::new();
    rec(n, 2, &mut Vec::new(), &mut out);
    out
}

/// All surjections of `p` onto abelian groups of order at most `max_order`,
/// one per kernel, ordered by group order, then invariant factors, then images.
pub fn enumerate_quotients(p: &Presentation, max_order: u64) -> Vec<FiniteAbelianQuotient> {
    let r = p.generator_count();
    let relator_sums: Vec<Vec<i64>> = p.relators().iter().map(|w| w.exponent_sums(r)).collect();
    let mut seen: BTreeSet<Vec<Character>> = BTreeSet::new();
    let mut out = Vec::new();
    for n in 1..=max_order {
        for orders in abelian_groups_of_order(n) {
            let shape = FiniteAbelianQuotient::new_unchecked(orders.clone(), Vec::new());
            let elements: Vec<Vec<u64>> = shape.elements().collect();
            let k = elements.len();
            for index in 0..k.pow(r as u32) {
                let mut rest = index;
                let mut images = vec![Vec::new(); r];
                for slot in images.iter_mut().rev() {
                    *slot = elements[rest % k].clone();
                    rest /= k;
                }
                let q = FiniteAbelianQuotient::new_unchecked(orders.clone(), images);
                if relator_sums
                    .iter()
                    .all(|s| q.image_of_exponents(s).iter().all(|&x| x == 0))
                    && is_surjective(&q)
                {
                    let mut key = pulled_back_characters(&q);
                    key.sort();
                    if seen.insert(key) {
                        out.push(q);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::make_quotient;

    fn pres(s: &str) -> Presentation {
        s.parse().unwrap()
    }

    const TREFOIL: &str = "< a, b | a b a b^-1 a^-1 b^-1 >";

    #[test]
    fn trefoil_z6() {
        let p = pres(TREFOIL);
        let q = make_quotient(&p, &[vec![1], vec![1]], &[6]).unwrap();
        assert_eq!(betti_via_strata(&p, &q).unwrap(), 3);
        assert_eq!(betti_via_oracle(&p, &q), 3);
    }

    #[test]
    fn free_group_cyclic_covers() {
        let p = pres("< a, b | >");
        for n in 1..=10u64 {
            let q = make_quotient(&p, &[vec![1], vec![0]], &[n]).unwrap();
            assert_eq!(betti_via_strata(&p, &q).unwrap() as u64, n + 1);
            assert_eq!(betti_via_oracle(&p, &q) as u64, n + 1);
        }
    }

    #[test]
    fn trivial_quotient() {
        for s in [TREFOIL, "< a | a^3 >", "< a, b | >"] {
            let p = pres(s);
            let q = FiniteAbelianQuotient::trivial(p.generator_count());
            let b1 = betti_numbers(&p).b1;
            assert_eq!(betti_via_strata(&p, &q).unwrap(), b1);
            assert_eq!(betti_via_oracle(&p, &q), b1);
        }
    }

    #[test]
    fn invalid_quotient_rejected() {
        let p = pres(TREFOIL);
        let q = FiniteAbelianQuotient::new_unchecked(vec![2], vec![vec![1], vec![0]]);
        assert!(matches!(betti_via_strata(&p, &q), Err(Error::RelatorViolation { .. })));
    }

    #[test]
    fn group_shapes() {
        assert_eq!(abelian_groups_of_order(1), vec![Vec::<u64>::new()]);
        assert_eq!(abelian_groups_of_order(8), vec![vec![2, 2, 2], vec![2, 4], vec![8]]);
        assert_eq!(abelian_groups_of_order(12), vec![vec![2, 6], vec![12]]);
        let total: usize = (1..=12).map(|n| abelian_groups_of_order(n).len()).sum();
        assert_eq!(total, 17);
    }

    #[test]
    fn quotient_counts() {
        // surjections of Z onto Z/n, up to kernel: one per n
        let z = pres("< a | >");
        assert_eq!(enumerate_quotients(&z, 12).len(), 12);
        // trefoil abelianizes to Z
        assert_eq!(enumerate_quotients(&pres(TREFOIL), 12).len(), 12);
        // Z/6 has quotients Z/1, Z/2, Z/3, Z/6
        assert_eq!(enumerate_quotients(&pres("< a | a^6 >"), 12).len(), 4);
        // index-2 subgroups of F2: 3
        let f2 = enumerate_quotients(&pres("< a, b | >"), 2);
        assert_eq!(f2.len(), 4);
    }

    #[test]
    fn enumerated_quotients_are_valid() {
        let p = pres("< a, b | a^2 b^-2 >");
        for q in enumerate_quotients(&p, 8) {
            let images: Vec<Vec<i64>> = q
                .images()
                .iter()
                .map(|v| v.iter().map(|&x| x as i64).collect())
                .collect();
            assert!(make_quotient(&p, &images, q.orders()).is_ok());
        }
    }
}
