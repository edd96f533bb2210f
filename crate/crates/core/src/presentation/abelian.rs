use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::matrix::{elementary_divisors, hermite_normal_form, is_prime, smith_normal_form};
use crate::algebra::IntMatrix;
use crate::error::{Error, Result};
use crate::presentation::Presentation;

/// `H_1(G; Z) = Z^m + Z/n_1 + ... + Z/n_k` with explicit generator images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianStructure {
    /// Number of generators of the presentation.
    pub generators: usize,
    /// Free rank `m`.
    pub free_rank: usize,
    /// Torsion orders `n_1 | n_2 | ...`, each at least 2.
    pub torsion: Vec<u64>,
    /// `m x r` matrix: column `g` is the image of generator `g` in `Z^m`.
    /// Normalized to Hermite form, so for instance both trefoil generators map to `1`.
    pub free_projection: Vec<Vec<i64>>,
    /// One row per torsion factor, entries reduced into `[0, n_j)`.
    pub torsion_projection: Vec<Vec<u64>>,
}

impl AbelianStructure {
    pub fn generator_count(&self) -> usize {
        self.generators
    }

    /// Image of generator `g` in the free part.
    pub fn free_image(&self, g: usize) -> Vec<i64> {
        self.free_projection.iter().map(|row| row[g]).collect()
    }

    /// Image of generator `g` in the torsion part.
    pub fn torsion_image(&self, g: usize) -> Vec<u64> {
        self.torsion_projection.iter().map(|row| row[g]).collect()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> u64 {
        self.torsion.iter().product()
    }
}

pub fn abelianize(p: &Presentation) -> AbelianStructure {
    let r = p.generator_count();
    let e = p.exponent_matrix();
    let snf = smith_normal_form(&e);
    // Row vectors x map to x V; the relation lattice becomes the row space of D.
    let coordinate_image = |i: usize| -> Vec<BigInt> { (0..r).map(|g| snf.v[(g, i)].clone()).collect() };
    let mut free_rows = Vec::new();
    let mut torsion = Vec::new();
    let mut torsion_projection = Vec::new();
    for i in 0..r {
        let d = snf.divisors.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            free_rows.push(coordinate_image(i));
        } else if !d.is_one() {
            let n = d.to_u64().expect("torsion order fits in u64");
            torsion.push(n);
            torsion_projection.push(
                coordinate_image(i)
                    .iter()
                    .map(|x| {
                        let m = x % &d;
                        let m = if m < BigInt::zero() { m + &d } else { m };
                        m.to_u64().expect("reduced")
                    })
                    .collect(),
            );
        }
    }
    let free_rank = free_rows.len();
    let free_projection = if free_rank == 0 {
        Vec::new()
    } else {
        let fm = IntMatrix::from_rows_with_cols(&free_rows, r).expect("rectangular");
        let (h, _) = hermite_normal_form(&fm);
        h.to_i64_rows().expect("free projection fits in i64")
    };
    AbelianStructure {
        generators: r,
        free_rank,
        torsion,
        free_projection,
        torsion_projection,
    }
}

/// First Betti number and torsion of the abelianization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiNumbers {
    pub b1: usize,
    pub torsion: Vec<BigInt>,
}

pub fn betti_numbers(p: &Presentation) -> BettiNumbers {
    let r = p.generator_count();
    let divisors = elementary_divisors(&p.exponent_matrix());
    let rank = divisors.iter().filter(|d| !d.is_zero()).count();
    BettiNumbers {
        b1: r - rank,
        torsion: divisors
            .into_iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .collect(),
    }
}

/// `dim H_1(G; Z/p)`.
pub fn mod_p_rank(p: &Presentation, prime: u64) -> Result<usize> {
    if !is_prime(prime) {
        return Err(Error::NotPrime(prime));
    }
    Ok(p.generator_count() - p.exponent_matrix().rank_mod_prime(prime))
}
