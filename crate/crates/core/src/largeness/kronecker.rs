use num_bigint::BigInt;
use num_traits::Signed;

use crate::algebra::{cyclotomic_poly, euler_phi, integer_char_poly, IntMatrix, UniPoly};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KroneckerVerdict {
    /// The characteristic polynomial is `prod Phi_d` over the listed `d`
    /// (with multiplicity, ascending).
    QuasiUnipotent { orders: Vec<u64> },
    /// `char poly = prod Phi_d * witness` with a witness that has no
    /// cyclotomic factor, so some eigenvalue lies outside the unit circle.
    SpectralRadiusGreaterThanOne { cyclotomic_orders: Vec<u64>, witness: UniPoly },
}

impl KroneckerVerdict {
    pub fn is_quasi_unipotent(&self) -> bool {
        matches!(self, KroneckerVerdict::QuasiUnipotent { .. })
    }
}

/// Splits off all cyclotomic factors of the characteristic polynomial of a
/// matrix in `GL_n(Z)` by trial division.
pub fn kronecker_test(m: &IntMatrix) -> Result<KroneckerVerdict> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let det = m.determinant()?;
    if det.abs() != BigInt::from(1) {
        return Err(Error::NotUnimodular(det.to_string()));
    }
    let mut rest = integer_char_poly(m)?;
    let n = m.rows() as u64;
    let mut orders = Vec::new();
    // phi(d) >= sqrt(d / 2), so phi(d) <= n forces d <= 2 n^2
    for d in 1..=(2 * n * n).max(1) {
        if euler_phi(d) > rest.degree().unwrap_or(0) as u64 {
            continue;
        }
        let phi = cyclotomic_poly(d)?;
        loop {
            let (quo, rem) = rest.div_rem(&phi);
            if !rem.is_zero() {
                break;
            }
            orders.push(d);
            rest = quo;
        }
    }
    if rest.degree() == Some(0) {
        Ok(KroneckerVerdict::QuasiUnipotent { orders })
    } else {
        Ok(KroneckerVerdict::SpectralRadiusGreaterThanOne {
            cyclotomic_orders: orders,
            witness: rest,
        })
    }
}

/// Product of the verdict's factors, for checking against the characteristic polynomial.
pub fn verdict_product(v: &KroneckerVerdict) -> Result<UniPoly> {
    let (orders, rest) = match v {
        KroneckerVerdict::QuasiUnipotent { orders } => (orders, UniPoly::one()),
        KroneckerVerdict::SpectralRadiusGreaterThanOne {
            cyclotomic_orders,
            witness,
        } => (cyclotomic_orders, witness.clone()),
    };
    let mut acc = rest;
    for &d in orders {
        acc = &acc * &cyclotomic_poly(d)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(
            kronecker_test(&IntMatrix::identity(2)).unwrap(),
            KroneckerVerdict::QuasiUnipotent { orders: vec![1, 1] }
        );
        assert_eq!(
            kronecker_test(&mat(&[&[0, -1], &[1, 1]])).unwrap(),
            KroneckerVerdict::QuasiUnipotent { orders: vec![6] }
        );
        let v = kronecker_test(&mat(&[&[2, 1], &[1, 1]])).unwrap();
        assert_eq!(
            v,
            KroneckerVerdict::SpectralRadiusGreaterThanOne {
                cyclotomic_orders: vec![],
                witness: UniPoly::from_ints(&[1, -3, 1]),
            }
        );
    }

    #[test]
    fn mixed_blocks() {
        // block diag of [[2,1],[1,1]] and a 3-cycle permutation
        let m = mat(&[
            &[2, 1, 0, 0, 0],
            &[1, 1, 0, 0, 0],
            &[0, 0, 0, 0, 1],
            &[0, 0, 1, 0, 0],
            &[0, 0, 0, 1, 0],
        ]);
        let v = kronecker_test(&m).unwrap();
        assert_eq!(verdict_product(&v).unwrap(), integer_char_poly(&m).unwrap());
        match v {
            KroneckerVerdict::SpectralRadiusGreaterThanOne { cyclotomic_orders, .. } => {
                assert_eq!(cyclotomic_orders, vec![1, 3]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(kronecker_test(&IntMatrix::zeros(2, 3)), Err(Error::NotSquare { .. })));
        assert!(matches!(
            kronecker_test(&mat(&[&[2, 0], &[0, 1]])),
            Err(Error::NotUnimodular(_))
        ));
    }
}
