use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::algebra::{elementary_divisors, IntMatrix};
use crate::error::{Error, Result};
use crate::presentation::Presentation;

/// A surjection `G -> Z/e_1 + ... + Z/e_s` given by generator images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianQuotient {
    orders: Vec<u64>,
    images: Vec<Vec<u64>>,
}

impl FiniteAbelianQuotient {
    /// Builds without validation; `images` must already be reduced.
    pub(crate) fn new_unchecked(orders: Vec<u64>, images: Vec<Vec<u64>>) -> Self {
        FiniteAbelianQuotient { orders, images }
    }

    /// The trivial quotient of a group with `generators` generators.
    pub fn trivial(generators: usize) -> Self {
        FiniteAbelianQuotient {
            orders: Vec::new(),
            images: vec![Vec::new(); generators],
        }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Per-generator image vectors.
    pub fn images(&self) -> &[Vec<u64>] {
        &self.images
    }

    pub fn image(&self, generator: usize) -> &[u64] {
        &self.images[generator]
    }

    /// `|Gamma|`
    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Exponent of the group, `lcm(e_j)`.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &e| acc.lcm(&e))
    }

    /// Mixed-radix index of an element vector.
    pub fn index_of(&self, x: &[u64]) -> usize {
        x.iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&v, &e)| acc * e as usize + v as usize)
    }

    /// Element vector with the given mixed-radix index.
    pub fn element(&self, mut index: usize) -> Vec<u64> {
        let mut x = vec![0; self.orders.len()];
        for (slot, &e) in x.iter_mut().zip(&self.orders).rev() {
            *slot = (index % e as usize) as u64;
            index /= e as usize;
        }
        x
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((a, b), e)| (a + b) % e)
            .collect()
    }

    pub fn sub(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((a, b), e)| (a + e - b) % e)
            .collect()
    }

    /// Every element of `Gamma`, in mixed-radix (lexicographic) order.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.order() as usize).map(|i| self.element(i))
    }

    /// Image of a word's exponent vector.
    pub fn image_of_exponents(&self, sums: &[i64]) -> Vec<u64> {
        self.orders
            .iter()
            .enumerate()
            .map(|(j, &e)| {
                let s: i128 = sums
                    .iter()
                    .zip(&self.images)
                    .map(|(&k, img)| k as i128 * img[j] as i128)
                    .sum();
                s.rem_euclid(e as i128) as u64
            })
            .collect()
    }

    /// Pulls back the dual character `psi_c(x) = exp(2 pi i sum_j c_j x_j / e_j)`
    /// to the generators: returns `(L, exponents)` with `L = exponent()` and
    /// `psi_c(alpha(g)) = zeta_L^{exponents[g]}`.
    pub fn pullback_exponents(&self, c: &[u64]) -> (u64, Vec<u64>) {
        let l = self.exponent();
        let exps = self
            .images
            .iter()
            .map(|img| {
                let s: u128 = img
                    .iter()
                    .zip(c)
                    .zip(&self.orders)
                    .map(|((&x, &cj), &e)| x as u128 * cj as u128 * (l / e) as u128)
                    .sum();
                (s % l as u128) as u64
            })
            .collect();
        (l, exps)
    }
}

/// Validates a homomorphism into `Z/e_1 + ... + Z/e_s`.
///
/// `images[g]` is the image vector of generator `g`; entries may be negative
/// and are reduced modulo the orders.
pub fn make_quotient(p: &Presentation, images: &[Vec<i64>], orders: &[u64]) -> Result<FiniteAbelianQuotient> {
    if orders.contains(&0) {
        return Err(Error::InvalidQuotient("orders must be at least 1".into()));
    }
    if images.len() != p.generator_count() {
        return Err(Error::InvalidQuotient(format!(
            "{} images given for {} generators",
            images.len(),
            p.generator_count()
        )));
    }
    if let Some((g, img)) = images.iter().enumerate().find(|(_, img)| img.len() != orders.len()) {
        return Err(Error::InvalidQuotient(format!(
            "image of generator {} has {} entries, expected {}",
            p.generators()[g],
            img.len(),
            orders.len()
        )));
    }
    let reduced: Vec<Vec<u64>> = images
        .iter()
        .map(|img| {
            img.iter()
                .zip(orders)
                .map(|(&x, &e)| x.rem_euclid(e as i64) as u64)
                .collect()
        })
        .collect();
    let q = FiniteAbelianQuotient::new_unchecked(orders.to_vec(), reduced);
    let n = p.generator_count();
    for (i, r) in p.relators().iter().enumerate() {
        if q.image_of_exponents(&r.exponent_sums(n)).iter().any(|&x| x != 0) {
            return Err(Error::RelatorViolation {
                index: i,
                relator: p.render_word(r),
            });
        }
    }
    if !generates(&q) {
        return Err(Error::NotSurjective);
    }
    Ok(q)
}

/// Do the images together with `e_j Z` span `Z^s`?
fn generates(q: &FiniteAbelianQuotient) -> bool {
    let s = q.orders.len();
    if s == 0 {
        return true;
    }
    let mut rows: Vec<Vec<i64>> = q
        .images
        .iter()
        .map(|img| img.iter().map(|&x| x as i64).collect())
        .collect();
    for (j, &e) in q.orders.iter().enumerate() {
        let mut row = vec![0; s];
        row[j] = e as i64;
        rows.push(row);
    }
    let m = IntMatrix::from_rows_with_cols(&rows, s).expect("rectangular");
    elementary_divisors(&m).iter().all(|d| *d == BigInt::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(s: &str) -> Presentation {
        s.parse().unwrap()
    }

    #[test]
    fn trefoil_into_z6() {
        let p = pres("< a, b | a b a b^-1 a^-1 b^-1 >");
        let q = make_quotient(&p, &[vec![1], vec![1]], &[6]).unwrap();
        assert_eq!(q.order(), 6);
    }

    #[test]
    fn trefoil_relator_violation() {
        let p = pres("< a, b | a b a b^-1 a^-1 b^-1 >");
        assert!(matches!(
            make_quotient(&p, &[vec![1], vec![0]], &[2]),
            Err(Error::RelatorViolation { index: 0, .. })
        ));
    }

    #[test]
    fn free_group_cyclic_quotients() {
        let p = pres("< a, b | >");
        for n in 1..=10 {
            assert!(make_quotient(&p, &[vec![1], vec![0]], &[n]).is_ok());
        }
    }

    #[test]
    fn non_surjective_rejected() {
        let p = pres("< a, b | >");
        assert_eq!(
            make_quotient(&p, &[vec![2], vec![0]], &[4]),
            Err(Error::NotSurjective)
        );
        assert_eq!(
            make_quotient(&p, &[vec![1, 1], vec![1, 1]], &[2, 2]),
            Err(Error::NotSurjective)
        );
        assert!(make_quotient(&p, &[vec![1, 0], vec![0, 1]], &[2, 2]).is_ok());
    }

    #[test]
    fn malformed_inputs() {
        let p = pres("< a, b | >");
        assert!(matches!(make_quotient(&p, &[vec![1]], &[2]), Err(Error::InvalidQuotient(_))));
        assert!(matches!(
            make_quotient(&p, &[vec![1], vec![0]], &[0]),
            Err(Error::InvalidQuotient(_))
        ));
    }

    #[test]
    fn element_indexing_round_trips() {
        let q = FiniteAbelianQuotient::new_unchecked(vec![2, 6], vec![vec![1, 0], vec![0, 1]]);
        for i in 0..12 {
            assert_eq!(q.index_of(&q.element(i)), i);
        }
        assert_eq!(q.exponent(), 6);
        // psi_(1,1) pulled back: a -> 6/2 = 3, b -> 6/6 = 1
        assert_eq!(q.pullback_exponents(&[1, 1]), (6, vec![3, 1]));
    }
}
