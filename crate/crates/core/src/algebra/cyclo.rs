//! Exact arithmetic in cyclotomic fields `Q(zeta_L)`, represented as
//! polynomials reduced modulo the `L`-th cyclotomic polynomial.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::laurent::LaurentPoly;
use crate::algebra::unipoly::{cyclotomic_poly, UniPoly};
use crate::error::{Error, Result};

/// The field `Q(zeta_L)` together with its defining polynomial.
#[derive(PartialEq, Eq)]
pub struct CycloField {
    order: u64,
    modulus: UniPoly,
}

impl CycloField {
    pub fn new(order: u64) -> Result<Arc<Self>> {
        let modulus = cyclotomic_poly(order)?;
        Ok(Arc::new(CycloField { order, modulus }))
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    /// Degree of the field over `Q`, i.e. `phi(L)`.
    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("cyclotomic polynomial is nonzero")
    }
}

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.order)
    }
}

/// Element of `Q(zeta_L)`, stored as its reduced representative of degree
/// below `phi(L)`.
#[derive(Clone)]
pub struct CycloNumber {
    field: Arc<CycloField>,
    rep: UniPoly,
}

impl CycloNumber {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        CycloNumber {
            field: field.clone(),
            rep: UniPoly::zero(),
        }
    }

    pub fn one(field: &Arc<CycloField>) -> Self {
        Self::from_poly(field, UniPoly::one())
    }

    pub fn from_integer(field: &Arc<CycloField>, c: BigInt) -> Self {
        Self::from_poly(field, UniPoly::constant(BigRational::from_integer(c)))
    }

    /// Reduces an arbitrary polynomial in `zeta` modulo `Phi_L`.
    pub fn from_poly(field: &Arc<CycloField>, p: UniPoly) -> Self {
        let rep = if p.degree().is_some_and(|d| d >= field.degree()) {
            p.rem(&field.modulus)
        } else {
            p
        };
        CycloNumber {
            field: field.clone(),
            rep,
        }
    }

    /// `zeta_L^k`, any integer `k`.
    pub fn zeta_pow(field: &Arc<CycloField>, k: i64) -> Self {
        let e = k.rem_euclid(field.order as i64) as usize;
        Self::from_poly(field, UniPoly::monomial(BigRational::one(), e))
    }

    /// Image of a group-ring element `sum_k c_k g^k` of `Z[Z/L]` under `g -> zeta_L`.
    /// `coeffs` has length at most `L`.
    pub fn from_group_ring(field: &Arc<CycloField>, coeffs: &[BigInt]) -> Self {
        Self::from_poly(
            field,
            UniPoly::from_coeffs(coeffs.iter().cloned().map(BigRational::from_integer).collect()),
        )
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn order(&self) -> u64 {
        self.field.order
    }

    pub fn rep(&self) -> &UniPoly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rep.is_one()
    }

    /// Multiplicative inverse via the extended Euclidean algorithm modulo `Phi_L`.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (g, s, _) = UniPoly::ext_gcd(&self.rep, &self.field.modulus);
        debug_assert!(g.is_one(), "Phi_L is irreducible");
        Some(Self::from_poly(&self.field, s))
    }

    fn check_same_field(&self, other: &Self) {
        assert_eq!(
            self.field.order, other.field.order,
            "arithmetic across different cyclotomic fields"
        );
    }

    /// Rendering as `(poly) mod Phi_L`, in the variable `z`.
    pub fn render(&self) -> String {
        format!("({}) mod Phi_{}", self.rep.render("z"), self.field.order)
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.rep == other.rep
    }
}

impl Eq for CycloNumber {}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: &CycloNumber) -> CycloNumber {
        self.check_same_field(rhs);
        CycloNumber {
            field: self.field.clone(),
            rep: &self.rep + &rhs.rep,
        }
    }
}

impl Sub for &CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: &CycloNumber) -> CycloNumber {
        self.check_same_field(rhs);
        CycloNumber {
            field: self.field.clone(),
            rep: &self.rep - &rhs.rep,
        }
    }
}

impl Mul for &CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: &CycloNumber) -> CycloNumber {
        self.check_same_field(rhs);
        CycloNumber::from_poly(&self.field, &self.rep * &rhs.rep)
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber {
            field: self.field.clone(),
            rep: -&self.rep,
        }
    }
}

/// Exact rank of a matrix over `Q(zeta_L)` by Gaussian elimination.
pub fn cyclo_rank(m: &[Vec<CycloNumber>]) -> Result<usize> {
    let mut order: Option<u64> = None;
    for x in m.iter().flatten() {
        match order {
            None => order = Some(x.order()),
            Some(o) if o != x.order() => return Err(Error::MixedOrders(o, x.order())),
            _ => {}
        }
    }
    let mut a: Vec<Vec<CycloNumber>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = a[rank][col].inverse().expect("pivot is nonzero");
        for i in rank + 1..rows {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] * &inv;
            for j in col..cols {
                let v = &a[rank][j] * &f;
                a[i][j] = &a[i][j] - &v;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Ok(rank)
}

/// Laurent polynomial in one variable `t` with coefficients in `Q(zeta_B)`,
/// stored as `t^valuation * (c_0 + c_1 t + ...)` with `c_0 != 0` unless zero.
#[derive(Clone, PartialEq, Eq)]
pub struct CycloPoly {
    field: Arc<CycloField>,
    valuation: i64,
    coeffs: Vec<CycloNumber>,
}

impl CycloPoly {
    /// Builds from `(t-exponent, coefficient)` pairs, combining like terms.
    pub fn from_terms(field: &Arc<CycloField>, terms: impl IntoIterator<Item = (i64, CycloNumber)>) -> Self {
        let mut collected: std::collections::BTreeMap<i64, CycloNumber> = Default::default();
        for (k, c) in terms {
            let entry = collected.entry(k).or_insert_with(|| CycloNumber::zero(field));
            *entry = &*entry + &c;
        }
        collected.retain(|_, c| !c.is_zero());
        let Some((&lo, _)) = collected.iter().next() else {
            return CycloPoly {
                field: field.clone(),
                valuation: 0,
                coeffs: Vec::new(),
            };
        };
        let hi = *collected.keys().next_back().expect("nonempty");
        let mut coeffs = vec![CycloNumber::zero(field); (hi - lo + 1) as usize];
        for (k, c) in collected {
            coeffs[(k - lo) as usize] = c;
        }
        CycloPoly {
            field: field.clone(),
            valuation: lo,
            coeffs,
        }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Power of `t` factored out to make the coefficient list an ordinary polynomial.
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    /// Coefficients of the normalized ordinary polynomial, lowest degree first.
    pub fn coeffs(&self) -> &[CycloNumber] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn terms(&self) -> impl Iterator<Item = (i64, CycloNumber)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(k, c)| (self.valuation + k as i64, c.clone()))
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms()
            .filter(|(_, c)| !c.is_zero())
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
            .map(|(k, c)| format!("{}*t^{k}", c.render()))
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for CycloPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &CycloPoly {
    type Output = CycloPoly;
    fn add(self, rhs: &CycloPoly) -> CycloPoly {
        CycloPoly::from_terms(&self.field, self.terms().chain(rhs.terms()))
    }
}

impl Mul for &CycloPoly {
    type Output = CycloPoly;
    fn mul(self, rhs: &CycloPoly) -> CycloPoly {
        let mut terms = Vec::new();
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                terms.push((i + j, &a * &b));
            }
        }
        CycloPoly::from_terms(&self.field, terms)
    }
}

/// Image of `f` under `x_i -> zeta_B^{d_i} t^{a_i}`, a Laurent polynomial in
/// `t` over `Q(zeta_B)`.
pub fn laurent_substitute_subtorus(f: &LaurentPoly, a: &[i64], d: &[i64], b: u64) -> Result<CycloPoly> {
    let n = f.nvars();
    if a.len() != n || d.len() != n {
        return Err(Error::Dimension(format!(
            "substitution vectors of length {} and {} for {n} variables",
            a.len(),
            d.len()
        )));
    }
    let field = CycloField::new(b)?;
    Ok(substitute_in_field(f, a, d, &field))
}

pub(crate) fn substitute_in_field(f: &LaurentPoly, a: &[i64], d: &[i64], field: &Arc<CycloField>) -> CycloPoly {
    let b = field.order() as i64;
    // t-exponent -> coefficients in Z[Z/B]
    let mut buckets: std::collections::BTreeMap<i64, Vec<BigInt>> = Default::default();
    for (e, c) in f.terms() {
        let t_exp: i64 = e.iter().zip(a).map(|(x, y)| x * y).sum();
        let z_exp = e.iter().zip(d).map(|(x, y)| x * y).sum::<i64>().rem_euclid(b) as usize;
        let slot = buckets
            .entry(t_exp)
            .or_insert_with(|| vec![BigInt::zero(); b as usize]);
        slot[z_exp] += c;
    }
    CycloPoly::from_terms(
        field,
        buckets
            .into_iter()
            .map(|(k, v)| (k, CycloNumber::from_group_ring(field, &v))),
    )
}
