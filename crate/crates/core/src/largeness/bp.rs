use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::{betti_numbers, make_quotient, normalize_exponent_sum, reidemeister_schreier, Presentation};

/// One cyclic cover `G_N = ker(phi_N)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BpRow {
    pub n: u64,
    pub rs_generators: usize,
    pub rs_relators: usize,
    /// `(deficiency - 1) N`, a lower bound for the generator count.
    pub generator_bound: u64,
    pub b1: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BpReport {
    pub deficiency: i64,
    /// Index of the generator `t` sent to 1.
    pub generator: usize,
    /// The rewritten presentation in which `t` has exponent sum zero in every relator.
    pub normalized: String,
    pub rows: Vec<BpRow>,
}

/// For deficiency at least two: normalizes a generator `t` to exponent sum
/// zero and checks `b_1(G_N) >= N` for the covers `t -> 1`, others `-> 0`
/// in `Z/N`, `N = 1..=n_max`.
pub fn baumslag_pride(p: &Presentation, n_max: u64) -> Result<BpReport> {
    let deficiency = p.deficiency();
    if deficiency < 2 {
        return Err(Error::DeficiencyTooSmall(deficiency));
    }
    let r = p.generator_count();
    let mut last_err = None;
    let mut normalized = None;
    for g in 0..r {
        match normalize_exponent_sum(p, g) {
            Ok(n) => {
                normalized = Some(n);
                break;
            }
            Err(e) => last_err = Some(e),
        }
    }
    let normalized = match normalized {
        Some(n) => n,
        None => return Err(last_err.expect("at least one generator")),
    };
    let t = normalized.generator;
    let np = &normalized.presentation;
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let images: Vec<Vec<i64>> = (0..r).map(|g| vec![i64::from(g == t)]).collect();
        let q = make_quotient(np, &images, &[n])?;
        let sub = reidemeister_schreier(np, &q).presentation;
        let b1 = betti_numbers(&sub).b1;
        if (b1 as u64) < n {
            return Err(Error::VerificationFailed(format!(
                "b1 of the index-{n} cover is {b1}, below {n}"
            )));
        }
        rows.push(BpRow {
            n,
            rs_generators: sub.generator_count(),
            rs_relators: sub.relators().len(),
            generator_bound: (deficiency as u64 - 1) * n,
            b1,
        });
    }
    Ok(BpReport {
        deficiency,
        generator: t,
        normalized: np.to_fp(),
        rows,
    })
}
