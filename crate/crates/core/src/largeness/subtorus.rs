use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::laurent::minors;
use crate::algebra::{laurent_substitute_subtorus, LaurentPoly};
use crate::error::{Error, Result};
use crate::fox::alexander_matrix;
use crate::presentation::{AbelianStructure, Presentation};

/// The translated circle `t -> (zeta_B^{d_i} t^{a_i})_i` in the free part of
/// the character torus, with torsion coordinates fixed at `zeta_B^{d'_j}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subtorus {
    pub direction: Vec<i64>,
    pub offsets: Vec<i64>,
    pub torsion_offsets: Vec<i64>,
    pub order: u64,
}

impl Subtorus {
    /// Reduces the direction by its gcd and the offsets into `[0, B)`.
    pub fn new(direction: Vec<i64>, offsets: Vec<i64>, torsion_offsets: Vec<i64>, order: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidSubtorus("offset order must be positive".into()));
        }
        if direction.len() != offsets.len() {
            return Err(Error::InvalidSubtorus(format!(
                "direction has {} entries but offsets have {}",
                direction.len(),
                offsets.len()
            )));
        }
        let g = direction.iter().fold(0i64, |g, x| g.gcd(x));
        if g == 0 {
            return Err(Error::InvalidSubtorus("direction is zero".into()));
        }
        let b = order as i64;
        Ok(Subtorus {
            direction: direction.iter().map(|x| x / g).collect(),
            offsets: offsets.iter().map(|x| x.rem_euclid(b)).collect(),
            torsion_offsets: torsion_offsets.iter().map(|x| x.rem_euclid(b)).collect(),
            order,
        })
    }

    /// Same point set with the smallest possible `B`, then the
    /// lexicographically smallest offsets. Shifting the parameter by
    /// `zeta_B^c` turns `d` into `d + c a`.
    pub fn canonical(&self) -> Self {
        let b = self.order as i64;
        let mut best: Option<Subtorus> = None;
        for c in 0..b {
            let offsets: Vec<i64> = self
                .offsets
                .iter()
                .zip(&self.direction)
                .map(|(d, a)| (d + c * a).rem_euclid(b))
                .collect();
            let g = offsets.iter().chain(&self.torsion_offsets).fold(b, |g, x| g.gcd(x));
            let cand = Subtorus {
                direction: self.direction.clone(),
                offsets: offsets.iter().map(|x| x / g).collect(),
                torsion_offsets: self.torsion_offsets.iter().map(|x| x / g).collect(),
                order: (b / g) as u64,
            };
            let better = match &best {
                None => true,
                Some(cur) => (cand.order, &cand.offsets) < (cur.order, &cur.offsets),
            };
            if better {
                best = Some(cand);
            }
        }
        best.expect("order is positive")
    }

    /// Checks dimensions and that each torsion value is an `n_j`-th root of unity.
    pub fn check(&self, ab: &AbelianStructure) -> Result<()> {
        if self.direction.len() != ab.free_rank {
            return Err(Error::Dimension(format!(
                "subtorus has {} free coordinates, abelianization has free rank {}",
                self.direction.len(),
                ab.free_rank
            )));
        }
        if self.torsion_offsets.len() != ab.torsion.len() {
            return Err(Error::Dimension(format!(
                "subtorus has {} torsion offsets, abelianization has {} torsion factors",
                self.torsion_offsets.len(),
                ab.torsion.len()
            )));
        }
        for (d, &n) in self.torsion_offsets.iter().zip(&ab.torsion) {
            if (d * n as i64).rem_euclid(self.order as i64) != 0 {
                return Err(Error::InvalidSubtorus(format!(
                    "torsion offset {d}/{} is not of order dividing {n}",
                    self.order
                )));
            }
        }
        Ok(())
    }

    /// Per-generator `(A_g, D_g)`: generator `g` maps to `zeta_B^{D_g} t^{A_g}`.
    pub fn generator_substitution(&self, ab: &AbelianStructure) -> (Vec<i64>, Vec<i64>) {
        let b = self.order as i64;
        (0..ab.generators)
            .map(|g| {
                let free = ab.free_image(g);
                let tors = ab.torsion_image(g);
                let a: i64 = free.iter().zip(&self.direction).map(|(x, y)| x * y).sum();
                let d: i64 = free.iter().zip(&self.offsets).map(|(x, y)| x * y).sum::<i64>()
                    + tors
                        .iter()
                        .zip(&self.torsion_offsets)
                        .map(|(&x, y)| x as i64 * y)
                        .sum::<i64>();
                (a, d.rem_euclid(b))
            })
            .unzip()
    }
}

/// The `(r-1) x (r-1)` minors of the Alexander matrix in generator variables,
/// reused across many containment tests.
#[derive(Debug, Clone)]
pub struct SubtorusTester {
    abelian: AbelianStructure,
    generators: usize,
    /// `None` when `#relators < r - 1` (every character has depth at least one).
    minors: Option<Vec<LaurentPoly>>,
}

impl SubtorusTester {
    pub fn new(p: &Presentation) -> Self {
        let am = alexander_matrix(p);
        let r = p.generator_count();
        let minors = if r == 0 {
            Some(vec![LaurentPoly::one(0)])
        } else if am.rows() < r - 1 {
            None
        } else {
            Some(minors(am.generator_entries(), r, r - 1, r))
        };
        SubtorusTester {
            abelian: am.abelian().clone(),
            generators: r,
            minors,
        }
    }

    pub fn abelian(&self) -> &AbelianStructure {
        &self.abelian
    }

    /// Do all minors vanish identically along `s`?
    pub fn contains(&self, s: &Subtorus) -> Result<bool> {
        s.check(&self.abelian)?;
        let Some(minors) = &self.minors else {
            return Ok(true);
        };
        if self.generators <= 1 {
            // the 0 x 0 minor is 1, so V_1 is empty
            return Ok(false);
        }
        let (a, d) = s.generator_substitution(&self.abelian);
        for f in minors {
            if !laurent_substitute_subtorus(f, &a, &d, s.order)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Is the subtorus contained in `V_1`?
pub fn subtorus_contained(p: &Presentation, s: &Subtorus) -> Result<bool> {
    SubtorusTester::new(p).contains(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubtorusSearch {
    pub subtorus: Option<Subtorus>,
    pub candidates_tested: u64,
    /// The candidate budget ran out before the bounds were exhausted.
    pub exhausted: bool,
}

/// Primitive directions in `[-A, A]^m` with first nonzero entry positive,
/// ordered by 1-norm and then lexicographically descending.
fn directions(m: usize, a_max: i64) -> Vec<Vec<i64>> {
    let side = (2 * a_max + 1) as usize;
    let mut out = Vec::new();
    for index in 0..side.pow(m as u32) {
        let mut rest = index;
        let mut v = vec![0i64; m];
        for slot in v.iter_mut().rev() {
            *slot = (rest % side) as i64 - a_max;
            rest /= side;
        }
        let first = v.iter().find(|&&x| x != 0);
        if first.is_some_and(|&x| x > 0) && v.iter().fold(0i64, |g, x| g.gcd(x)) == 1 {
            out.push(v);
        }
    }
    out.sort_by(|x, y| {
        let nx: i64 = x.iter().map(|v| v.abs()).sum();
        let ny: i64 = y.iter().map(|v| v.abs()).sum();
        nx.cmp(&ny).then_with(|| y.cmp(x))
    });
    out
}

/// Bounded deterministic search for a subtorus in `V_1`: `B = 1, 2, ...`,
/// then directions, then offsets in lexicographic order. Only canonical
/// candidates are tested.
pub fn find_invariant_subtorus(p: &Presentation, a_max: i64, b_max: u64, budget: u64) -> Result<SubtorusSearch> {
    if a_max < 1 || b_max < 1 {
        return Err(Error::Invalid("search bounds must be positive".into()));
    }
    let tester = SubtorusTester::new(p);
    let ab = tester.abelian().clone();
    let m = ab.free_rank;
    if m == 0 {
        return Err(Error::NoFreeRank);
    }
    let dirs = directions(m, a_max);
    let mut tested = 0u64;
    for b in 1..=b_max {
        let bi = b as i64;
        let torsion_choices: Vec<Vec<i64>> = ab
            .torsion
            .iter()
            .map(|&n| (0..bi).filter(|d| (d * n as i64) % bi == 0).collect())
            .collect();
        let radices: Vec<usize> = std::iter::repeat_n(b as usize, m)
            .chain(torsion_choices.iter().map(Vec::len))
            .collect();
        let total: usize = radices.iter().product();
        for a in &dirs {
            for index in 0..total {
                let mut rest = index;
                let mut digits = vec![0usize; radices.len()];
                for (slot, &rad) in digits.iter_mut().zip(&radices).rev() {
                    *slot = rest % rad;
                    rest /= rad;
                }
                let offsets: Vec<i64> = digits[..m].iter().map(|&x| x as i64).collect();
                let torsion_offsets: Vec<i64> = digits[m..]
                    .iter()
                    .zip(&torsion_choices)
                    .map(|(&k, c)| c[k])
                    .collect();
                let s = Subtorus {
                    direction: a.clone(),
                    offsets,
                    torsion_offsets,
                    order: b,
                };
                if s.canonical() != s {
                    continue;
                }
                if tested == budget {
                    return Ok(SubtorusSearch {
                        subtorus: None,
                        candidates_tested: tested,
                        exhausted: true,
                    });
                }
                tested += 1;
                if tester.contains(&s)? {
                    return Ok(SubtorusSearch {
                        subtorus: Some(s),
                        candidates_tested: tested,
                        exhausted: false,
                    });
                }
            }
        }
    }
    Ok(SubtorusSearch {
        subtorus: None,
        candidates_tested: tested,
        exhausted: false,
    })
}
