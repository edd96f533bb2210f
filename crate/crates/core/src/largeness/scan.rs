use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::covers::StrataCache;
use crate::error::{Error, Result};
use crate::fox::Character;
use crate::presentation::Presentation;

/// A character of exact order `order` lying in `V_1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub order: u64,
    /// Exponents on the free coordinates: `u_i -> zeta^{free[i]}`.
    pub free_exponents: Vec<u64>,
    /// Exponents on the torsion coordinates.
    pub torsion_exponents: Vec<u64>,
    /// The same character on the presentation generators.
    pub generator_exponents: Vec<u64>,
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub max_order: u64,
    pub characters_examined: u64,
    pub entries: Vec<ScanEntry>,
    /// `(order, number of entries of that order)` for every order `2..=max_order`.
    pub counts_by_order: Vec<(u64, usize)>,
}

/// Upper estimate `sum_{n <= N} n^m |A|` of the enumeration size.
pub fn scan_size(free_rank: usize, torsion_order: u64, max_order: u64) -> u128 {
    (1..=max_order as u128)
        .map(|n| n.saturating_pow(free_rank as u32).saturating_mul(torsion_order as u128))
        .fold(0u128, u128::saturating_add)
}

/// All nontrivial characters of order at most `max_order` with strata depth
/// at least one, in order of increasing order and then lexicographically.
pub fn torsion_scan(p: &Presentation, max_order: u64, budget: u128) -> Result<ScanReport> {
    if max_order == 0 {
        return Err(Error::Invalid("maximum order must be at least 1".into()));
    }
    let mut cache = StrataCache::new(p);
    let ab = cache.matrix().abelian().clone();
    let m = ab.free_rank;
    if m == 0 {
        return Err(Error::NoFreeRank);
    }
    let needed = scan_size(m, ab.torsion_order(), max_order);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let r = p.generator_count();
    let mut entries = Vec::new();
    let mut counts_by_order = Vec::new();
    let mut examined = 0u64;
    for n in 2..=max_order {
        // torsion coordinate j admits exponents that are multiples of n / gcd(n, n_j)
        let steps: Vec<u64> = ab.torsion.iter().map(|&nj| n / n.gcd(&nj)).collect();
        let radices: Vec<u64> = std::iter::repeat_n(n, m)
            .chain(steps.iter().map(|&s| n / s))
            .collect();
        let total: u64 = radices.iter().product();
        let before = entries.len();
        for index in 0..total {
            let mut rest = index;
            let mut digits = vec![0u64; radices.len()];
            for (slot, &rad) in digits.iter_mut().zip(&radices).rev() {
                *slot = rest % rad;
                rest /= rad;
            }
            let free: Vec<u64> = digits[..m].to_vec();
            let torsion: Vec<u64> = digits[m..].iter().zip(&steps).map(|(d, s)| d * s).collect();
            let g = free.iter().chain(&torsion).fold(n, |g, &x| g.gcd(&x));
            if g != 1 {
                continue;
            }
            examined += 1;
            let exps: Vec<i64> = (0..r)
                .map(|gen| {
                    let f: i128 = ab
                        .free_projection
                        .iter()
                        .zip(&free)
                        .map(|(row, &u)| row[gen] as i128 * u as i128)
                        .sum();
                    let t: i128 = ab
                        .torsion_projection
                        .iter()
                        .zip(&torsion)
                        .map(|(row, &x)| row[gen] as i128 * x as i128)
                        .sum();
                    (f + t).rem_euclid(n as i128) as i64
                })
                .collect();
            let chi = Character::new(n, exps)?;
            let depth = cache.depth(&chi)?;
            if depth >= 1 {
                entries.push(ScanEntry {
                    order: n,
                    free_exponents: free,
                    torsion_exponents: torsion,
                    generator_exponents: chi.exponents().to_vec(),
                    depth,
                });
            }
        }
        counts_by_order.push((n, entries.len() - before));
    }
    Ok(ScanReport {
        max_order,
        characters_examined: examined,
        entries,
        counts_by_order,
    })
}
