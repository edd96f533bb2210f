//! Fox free differential calculus, Alexander matrices and their evaluation at
//! finite-order characters.

mod character;

use num_bigint::BigInt;
use num_traits::Zero;

pub use character::Character;

use crate::algebra::{
    cyclo_rank, laurent_substitute_subtorus, multivariate_minor_gcd, CycloField, CycloNumber, CycloPoly, LaurentPoly,
};
use crate::error::{Error, Result};
use crate::presentation::{abelianize, AbelianStructure, FiniteAbelianQuotient, Presentation, Word};

/// Image of `w` in `Z[Z^r]`, one variable per generator.
pub fn word_monomial(w: &Word, generators: usize) -> LaurentPoly {
    LaurentPoly::monomial(w.exponent_sums(generators), BigInt::from(1))
}

/// Abelianized Fox derivative `D_i(w)` in `Z[Z^r]`.
pub fn fox_derivative(w: &Word, i: usize, generators: usize) -> Result<LaurentPoly> {
    if i >= generators {
        return Err(Error::GeneratorIndex { index: i, count: generators });
    }
    if let Some(g) = w.max_generator().filter(|&g| g >= generators) {
        return Err(Error::GeneratorIndex { index: g, count: generators });
    }
    let mut prefix = vec![0i64; generators];
    let mut out = LaurentPoly::zero(generators);
    for l in w.letters() {
        if l.inverse {
            prefix[l.generator] -= 1;
            if l.generator == i {
                out.add_term(prefix.clone(), BigInt::from(-1));
            }
        } else {
            if l.generator == i {
                out.add_term(prefix.clone(), BigInt::from(1));
            }
            prefix[l.generator] += 1;
        }
    }
    Ok(out)
}

/// Relators x generators matrix of abelianized Fox derivatives.
#[derive(Debug, Clone)]
pub struct AlexanderMatrix {
    presentation: Presentation,
    abelian: AbelianStructure,
    /// Entries over the torsion-free abelianization `Z^m`.
    entries: Vec<Vec<LaurentPoly>>,
    /// Unprojected entries over `Z^r`; any character or finite abelian
    /// quotient of the group factors through these.
    generator_entries: Vec<Vec<LaurentPoly>>,
}

pub fn alexander_matrix(p: &Presentation) -> AlexanderMatrix {
    let r = p.generator_count();
    let abelian = abelianize(p);
    let generator_entries: Vec<Vec<LaurentPoly>> = p
        .relators()
        .iter()
        .map(|rel| {
            (0..r)
                .map(|i| fox_derivative(rel, i, r).expect("relators use valid generators"))
                .collect()
        })
        .collect();
    let entries = generator_entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|f| f.map_exponents(&abelian.free_projection, abelian.free_rank))
                .collect()
        })
        .collect();
    AlexanderMatrix {
        presentation: p.clone(),
        abelian,
        entries,
        generator_entries,
    }
}

impl AlexanderMatrix {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn abelian(&self) -> &AbelianStructure {
        &self.abelian
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.presentation.generator_count()
    }

    /// Number of Laurent variables, the free rank `m`.
    pub fn free_rank(&self) -> usize {
        self.abelian.free_rank
    }

    pub fn entries(&self) -> &[Vec<LaurentPoly>] {
        &self.entries
    }

    pub fn entry(&self, relator: usize, generator: usize) -> &LaurentPoly {
        &self.entries[relator][generator]
    }

    pub fn generator_entries(&self) -> &[Vec<LaurentPoly>] {
        &self.generator_entries
    }

    /// Normalized gcd of the `(r-1) x (r-1)` minors over `Z^m`.
    pub fn polynomial(&self) -> AlexanderPolynomial {
        let m = self.free_rank();
        let r = self.cols();
        let poly = if r <= 1 {
            LaurentPoly::one(m)
        } else if self.rows() < r - 1 {
            LaurentPoly::zero(m)
        } else {
            multivariate_minor_gcd(&self.entries, r, r - 1, m).expect("minor size fits")
        };
        AlexanderPolynomial {
            poly,
            free_projection: self.abelian.free_projection.clone(),
        }
    }
}

/// The first Alexander polynomial with the quotient map it was computed over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlexanderPolynomial {
    pub poly: LaurentPoly,
    /// `m x r` map from generators to `Z^m`.
    pub free_projection: Vec<Vec<i64>>,
}

impl AlexanderPolynomial {
    pub fn variable_names(&self) -> Vec<String> {
        LaurentPoly::default_names(self.poly.nvars())
    }

    pub fn term_strings(&self) -> Vec<String> {
        self.poly.term_strings(&self.variable_names())
    }

    pub fn render(&self) -> String {
        self.poly.render(&self.variable_names())
    }
}

pub fn alexander_polynomial(p: &Presentation) -> AlexanderPolynomial {
    alexander_matrix(p).polynomial()
}

/// Alexander matrix pushed into the group ring `Z[Gamma]` of a finite abelian
/// quotient. Each entry is a coefficient vector indexed by element index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingMatrix {
    pub quotient: FiniteAbelianQuotient,
    pub entries: Vec<Vec<Vec<BigInt>>>,
}

impl GroupRingMatrix {
    /// Evaluates at the dual character `psi_c` of `Gamma`, in `Q(zeta_L)` with
    /// `L` the exponent of `Gamma`.
    pub fn evaluate(&self, c: &[u64]) -> Result<Vec<Vec<CycloNumber>>> {
        let q = &self.quotient;
        if c.len() != q.orders().len() {
            return Err(Error::InvalidCharacter(format!(
                "dual character has {} entries for {} cyclic factors",
                c.len(),
                q.orders().len()
            )));
        }
        let l = q.exponent();
        let field = CycloField::new(l)?;
        let values: Vec<usize> = q
            .elements()
            .map(|x| {
                let s: u128 = x
                    .iter()
                    .zip(c)
                    .zip(q.orders())
                    .map(|((&xj, &cj), &e)| xj as u128 * cj as u128 * (l / e) as u128)
                    .sum();
                (s % l as u128) as usize
            })
            .collect();
        Ok(self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|coeffs| {
                        let mut bucket = vec![BigInt::zero(); l as usize];
                        for (k, a) in coeffs.iter().enumerate() {
                            bucket[values[k]] += a;
                        }
                        CycloNumber::from_group_ring(&field, &bucket)
                    })
                    .collect()
            })
            .collect())
    }
}

/// Pushes the Alexander matrix forward along a finite abelian quotient of the group.
pub fn project_matrix(am: &AlexanderMatrix, q: &FiniteAbelianQuotient) -> Result<GroupRingMatrix> {
    let p = &am.presentation;
    let r = p.generator_count();
    if q.images().len() != r {
        return Err(Error::ProjectionDoesNotFactor(format!(
            "quotient has {} generator images, presentation has {r} generators",
            q.images().len()
        )));
    }
    for rel in p.relators() {
        if q.image_of_exponents(&rel.exponent_sums(r)).iter().any(|&x| x != 0) {
            return Err(Error::ProjectionDoesNotFactor(format!(
                "relator {} has nonzero image",
                p.render_word(rel)
            )));
        }
    }
    let n = q.order() as usize;
    let entries = am
        .generator_entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|f| {
                    let mut v = vec![BigInt::zero(); n];
                    for (e, c) in f.terms() {
                        v[q.index_of(&q.image_of_exponents(e))] += c;
                    }
                    v
                })
                .collect()
        })
        .collect();
    Ok(GroupRingMatrix {
        quotient: q.clone(),
        entries,
    })
}

/// Entrywise value of the Alexander matrix at `chi`, in `Q(zeta_L)` with
/// `L = chi.order()`.
pub fn evaluate_at_character(am: &AlexanderMatrix, chi: &Character) -> Result<Vec<Vec<CycloNumber>>> {
    chi.check(&am.presentation)?;
    let l = chi.order();
    let field = CycloField::new(l)?;
    Ok(am
        .generator_entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|f| {
                    let mut bucket = vec![BigInt::zero(); l as usize];
                    for (e, c) in f.terms() {
                        bucket[chi.value_exponent(e) as usize] += c;
                    }
                    CycloNumber::from_group_ring(&field, &bucket)
                })
                .collect()
        })
        .collect())
}

/// `max(0, r - 1 - rank M(chi))` for a nontrivial character: the number of
/// strata `V_i`, `i >= 1`, containing `chi`.
pub fn strata_depth(am: &AlexanderMatrix, chi: &Character) -> Result<usize> {
    let chi = chi.normalized();
    if chi.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    let r = am.cols();
    let rank = if am.rows() == 0 {
        chi.check(&am.presentation)?;
        0
    } else {
        cyclo_rank(&evaluate_at_character(am, &chi)?)?
    };
    Ok((r - 1).saturating_sub(rank))
}

/// Substitutes `chi(h)` for the variables other than `t_index` and leaves
/// `t` free. `chi` has one exponent per remaining variable, in order.
pub fn specialize_alexander(poly: &LaurentPoly, t_index: usize, chi: &Character) -> Result<CycloPoly> {
    let m = poly.nvars();
    if t_index >= m {
        return Err(Error::Dimension(format!(
            "t-direction {t_index} is not a coordinate of a rank {m} lattice"
        )));
    }
    if chi.exponents().len() != m - 1 {
        return Err(Error::InvalidCharacter(format!(
            "{} exponents given for a rank {} complement",
            chi.exponents().len(),
            m - 1
        )));
    }
    let mut a = vec![0i64; m];
    a[t_index] = 1;
    let mut d: Vec<i64> = chi.exponents().iter().map(|&e| e as i64).collect();
    d.insert(t_index, 0);
    laurent_substitute_subtorus(poly, &a, &d, chi.order())
}
