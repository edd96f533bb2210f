use serde::{Deserialize, Serialize};

use crate::algebra::is_prime;
use crate::covers::{betti_via_oracle, StrataCache};
use crate::error::{Error, Result};
use crate::presentation::{abelianize, make_quotient, AbelianStructure, Presentation};

use super::subtorus::{Subtorus, SubtorusTester};

/// Primes up to this bound are tried when none is supplied.
pub const PRIME_SEARCH_BOUND: u64 = 10_000;

/// One level `alpha_n : H_1 -> Z/(p^n B)` of the certified tower.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRow {
    pub n: u32,
    /// `p^n B`, also the index `|Gamma_n|`.
    pub modulus: u64,
    /// `u_i -> a_i + p^n d_i`.
    pub free_images: Vec<i64>,
    /// `x_j -> p^n d'_j`.
    pub torsion_images: Vec<i64>,
    /// Induced images of the presentation generators.
    pub generator_images: Vec<i64>,
    /// `p^n - 1`.
    pub lower_bound: u64,
    pub b1_strata: usize,
    pub b1_oracle: usize,
}

/// `alpha_{n+k}` reduced modulo `p^n B` agrees with `alpha_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NestingCheck {
    pub n: u32,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LargenessCertificate {
    /// The presentation in `.fp` syntax.
    pub presentation: String,
    pub subtorus: Subtorus,
    pub prime: u64,
    /// Multiplicative order of `p` modulo `B`.
    pub period: u64,
    pub rows: Vec<CertificateRow>,
    pub nesting: Vec<NestingCheck>,
}

/// Smallest prime dividing neither `B` nor any nonzero `a_i`.
pub fn admissible_prime(s: &Subtorus, bound: u64) -> Result<u64> {
    (2..=bound)
        .find(|&p| is_admissible(s, p))
        .ok_or(Error::NoAdmissiblePrime(bound))
}

fn is_admissible(s: &Subtorus, p: u64) -> bool {
    is_prime(p) && !s.order.is_multiple_of(p) && s.direction.iter().all(|&a| a == 0 || a.rem_euclid(p as i64) != 0)
}

/// Multiplicative order of `p` modulo `b` (1 when `b = 1`).
pub fn multiplicative_order(p: u64, b: u64) -> u64 {
    if b == 1 {
        return 1;
    }
    let mut x = p % b;
    let mut k = 1;
    while x != 1 {
        x = (x as u128 * p as u128 % b as u128) as u64;
        k += 1;
    }
    k
}

fn modulus(p: u64, n: u32, b: u64) -> Result<u64> {
    p.checked_pow(n)
        .and_then(|q| q.checked_mul(b))
        .ok_or_else(|| Error::Invalid(format!("{p}^{n} * {b} overflows")))
}

/// Basis images of `alpha_n` and the modulus `p^n B`.
fn alpha(s: &Subtorus, p: u64, n: u32) -> Result<(u64, Vec<i64>, Vec<i64>)> {
    let m = modulus(p, n, s.order)? as i128;
    let pn = p.pow(n) as i128;
    let free = s
        .direction
        .iter()
        .zip(&s.offsets)
        .map(|(&a, &d)| (a as i128 + pn * d as i128).rem_euclid(m) as i64)
        .collect();
    let torsion = s
        .torsion_offsets
        .iter()
        .map(|&d| (pn * d as i128).rem_euclid(m) as i64)
        .collect();
    Ok((m as u64, free, torsion))
}

fn generator_images(ab: &AbelianStructure, modulus: u64, free: &[i64], torsion: &[i64]) -> Vec<i64> {
    let m = modulus as i128;
    (0..ab.generators)
        .map(|g| {
            let f: i128 = ab
                .free_image(g)
                .iter()
                .zip(free)
                .map(|(&x, &y)| x as i128 * y as i128)
                .sum();
            let t: i128 = ab
                .torsion_image(g)
                .iter()
                .zip(torsion)
                .map(|(&x, &y)| x as i128 * y as i128)
                .sum();
            (f + t).rem_euclid(m) as i64
        })
        .collect()
}

fn nesting_holds(s: &Subtorus, p: u64, k: u64, n: u32) -> Result<bool> {
    let (m, free, torsion) = alpha(s, p, n)?;
    let (_, free_up, torsion_up) = alpha(s, p, n + k as u32)?;
    let m = m as i64;
    let reduce = |v: &[i64]| v.iter().map(|x| x.rem_euclid(m)).collect::<Vec<_>>();
    Ok(reduce(&free_up) == free && reduce(&torsion_up) == torsion)
}

/// Materializes and verifies `alpha_1, ..., alpha_{n0}` for a subtorus of `V_1`.
///
/// The subtorus is first brought to canonical form, which makes every
/// `alpha_n` surjective.
pub fn build_certificate(p: &Presentation, s: &Subtorus, n0: u32, prime: Option<u64>) -> Result<LargenessCertificate> {
    if n0 == 0 {
        return Err(Error::Invalid("verification depth must be at least 1".into()));
    }
    let tester = SubtorusTester::new(p);
    if !tester.contains(s)? {
        return Err(Error::ContainmentFails);
    }
    let s = s.canonical();
    let prime = match prime {
        Some(q) if !is_prime(q) => return Err(Error::NotPrime(q)),
        Some(q) if !is_admissible(&s, q) => {
            return Err(Error::Invalid(format!(
                "prime {q} divides the offset order or a direction entry"
            )))
        }
        Some(q) => q,
        None => admissible_prime(&s, PRIME_SEARCH_BOUND)?,
    };
    let period = multiplicative_order(prime, s.order);
    let ab = tester.abelian().clone();
    let mut cache = StrataCache::new(p);
    let mut rows = Vec::new();
    let mut nesting = Vec::new();
    for n in 1..=n0 {
        let (m, free, torsion) = alpha(&s, prime, n)?;
        let images = generator_images(&ab, m, &free, &torsion);
        let q = make_quotient(p, &images.iter().map(|&x| vec![x]).collect::<Vec<_>>(), &[m])?;
        let b1_strata = cache.betti(&q)?;
        let b1_oracle = betti_via_oracle(p, &q);
        let lower_bound = prime.pow(n) - 1;
        if b1_strata != b1_oracle {
            return Err(Error::VerificationFailed(format!(
                "level {n}: strata give b1 = {b1_strata}, rewriting gives {b1_oracle}"
            )));
        }
        if (b1_oracle as u64) < lower_bound {
            return Err(Error::VerificationFailed(format!(
                "level {n}: b1 = {b1_oracle} is below {lower_bound}"
            )));
        }
        let holds = nesting_holds(&s, prime, period, n)?;
        if !holds {
            return Err(Error::VerificationFailed(format!(
                "level {n}: alpha_{} does not reduce to alpha_{n}",
                n as u64 + period
            )));
        }
        nesting.push(NestingCheck { n, holds });
        rows.push(CertificateRow {
            n,
            modulus: m,
            free_images: free,
            torsion_images: torsion,
            generator_images: images,
            lower_bound,
            b1_strata,
            b1_oracle,
        });
    }
    Ok(LargenessCertificate {
        presentation: p.to_fp(),
        subtorus: s,
        prime,
        period,
        rows,
        nesting,
    })
}

/// Re-checks a certificate from its own data: quotient validity, rewriting
/// Betti numbers, lower bounds, and the nesting identities.
pub fn verify_certificate(cert: &LargenessCertificate) -> Result<()> {
    let p: Presentation = cert.presentation.parse()?;
    let ab = abelianize(&p);
    cert.subtorus.check(&ab)?;
    if !is_admissible(&cert.subtorus, cert.prime) {
        return Err(Error::VerificationFailed(format!("prime {} is not admissible", cert.prime)));
    }
    if cert.period != multiplicative_order(cert.prime, cert.subtorus.order) {
        return Err(Error::VerificationFailed("period is not the multiplicative order".into()));
    }
    for row in &cert.rows {
        let (m, free, torsion) = alpha(&cert.subtorus, cert.prime, row.n)?;
        if (m, &free, &torsion) != (row.modulus, &row.free_images, &row.torsion_images) {
            return Err(Error::VerificationFailed(format!("level {}: basis images differ", row.n)));
        }
        if generator_images(&ab, m, &free, &torsion) != row.generator_images {
            return Err(Error::VerificationFailed(format!("level {}: generator images differ", row.n)));
        }
        let images: Vec<Vec<i64>> = row.generator_images.iter().map(|&x| vec![x]).collect();
        let q = make_quotient(&p, &images, &[row.modulus])?;
        let b1 = betti_via_oracle(&p, &q);
        if b1 != row.b1_oracle || b1 != row.b1_strata || (b1 as u64) < row.lower_bound {
            return Err(Error::VerificationFailed(format!(
                "level {}: recomputed b1 = {b1}, recorded {} / {}",
                row.n, row.b1_strata, row.b1_oracle
            )));
        }
    }
    for check in &cert.nesting {
        if !check.holds || !nesting_holds(&cert.subtorus, cert.prime, cert.period, check.n)? {
            return Err(Error::VerificationFailed(format!("nesting fails at level {}", check.n)));
        }
    }
    Ok(())
}
