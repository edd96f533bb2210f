use num_traits::ToPrimitive;

use crate::algebra::smith_normal_form;
use crate::error::{Error, Result};
use crate::presentation::{Letter, Presentation, Word};

/// Elementary automorphism of a free group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NielsenMove {
    /// `x_target -> x_target x_by^power`
    Multiply { target: usize, by: usize, power: i64 },
    /// Exchange `x_a` and `x_b`.
    Swap(usize, usize),
}

impl NielsenMove {
    /// Images of the generators under this automorphism.
    pub fn images(&self, n: usize) -> Vec<Word> {
        let mut images: Vec<Word> = (0..n).map(|g| Word::free_reduce([Letter::pos(g)])).collect();
        match *self {
            NielsenMove::Multiply { target, by, power } => {
                images[target] = Word::from_powers(&[(target, 1), (by, power)]);
            }
            NielsenMove::Swap(a, b) => images.swap(a, b),
        }
        images
    }

    pub fn apply(&self, w: &Word, n: usize) -> Word {
        w.substitute(&self.images(n))
    }
}

/// Result of [`normalize_exponent_sum`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedPresentation {
    pub presentation: Presentation,
    pub generator: usize,
    /// Automorphisms applied to the relators, in order.
    pub moves: Vec<NielsenMove>,
}

impl NormalizedPresentation {
    /// Re-applies the recorded moves to the relators of `original`.
    pub fn replay(&self, original: &Presentation) -> Result<Presentation> {
        let n = original.generator_count();
        let relators = original
            .relators()
            .iter()
            .map(|r| self.moves.iter().fold(r.clone(), |w, m| m.apply(&w, n)))
            .collect();
        Presentation::new(original.generators().to_vec(), relators)
    }
}

/// Rewrites the relators by free-group automorphisms so that `generator`
/// has exponent sum zero in every relator.
///
/// A primitive vector `v` in the kernel of the exponent matrix is driven to
/// a coordinate vector by a Euclidean sequence of moves
/// `x_i -> x_i x_j^c` (each sends `v_i` to `v_i - c v_j`), then swapped
/// into position.
pub fn normalize_exponent_sum(p: &Presentation, generator: usize) -> Result<NormalizedPresentation> {
    let n = p.generator_count();
    if generator >= n {
        return Err(Error::GeneratorIndex { index: generator, count: n });
    }
    let e = p.exponent_matrix();
    if (0..e.rows()).all(|i| e[(i, generator)] == 0.into()) {
        return Ok(NormalizedPresentation {
            presentation: p.clone(),
            generator,
            moves: Vec::new(),
        });
    }
    let snf = smith_normal_form(&e);
    let rank = snf.rank();
    if rank == n {
        return Err(Error::NormalizationImpossible(format!(
            "exponent matrix has full column rank {n}; no homomorphism to Z kills the relators"
        )));
    }
    // Columns of V past the rank span the integer kernel; pick the shortest.
    let mut v: Vec<i64> = (rank..n)
        .map(|c| -> Vec<i64> { (0..n).map(|g| snf.v[(g, c)].to_i64().expect("kernel entry fits")).collect() })
        .min_by_key(|col| (col.iter().map(|x| x.abs()).sum::<i64>(), col.clone()))
        .expect("nonempty kernel");

    let mut moves = Vec::new();
    loop {
        let nonzero: Vec<usize> = (0..n).filter(|&i| v[i] != 0).collect();
        if nonzero.len() == 1 {
            break;
        }
        let j = *nonzero
            .iter()
            .min_by_key(|&&i| (v[i].abs(), i))
            .expect("kernel vector is nonzero");
        for &i in &nonzero {
            if i == j {
                continue;
            }
            let c = v[i] / v[j];
            if c != 0 {
                moves.push(NielsenMove::Multiply { target: i, by: j, power: c });
                v[i] -= c * v[j];
            }
        }
    }
    let j0 = (0..n).find(|&i| v[i] != 0).expect("single nonzero entry");
    debug_assert_eq!(v[j0].abs(), 1, "kernel basis vectors are primitive");
    if j0 != generator {
        moves.push(NielsenMove::Swap(j0, generator));
    }

    let relators = p
        .relators()
        .iter()
        .map(|r| moves.iter().fold(r.clone(), |w, m| m.apply(&w, n)))
        .collect();
    let presentation = Presentation::new(p.generators().to_vec(), relators)?;
    debug_assert!(presentation
        .relators()
        .iter()
        .all(|r| r.exponent_sums(n)[generator] == 0));
    Ok(NormalizedPresentation {
        presentation,
        generator,
        moves,
    })
}
