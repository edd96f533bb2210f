//! Multivariate Laurent polynomials over the integers, i.e. elements of the
//! integral group ring of a free abelian group.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent vector of a Laurent monomial.
pub type Exponents = Vec<i64>;

/// Sparse Laurent polynomial in a fixed number of variables.
///
/// Zero coefficients are never stored, so two polynomials are equal exactly
/// when their term maps are equal. Terms are ordered lexicographically by
/// exponent vector; the last term is the leading one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exps: Exponents, c: BigInt) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// The variable `x_i`.
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, BigInt::one())
    }

    /// Builds from `(coefficient, exponents)` pairs, combining like terms.
    pub fn from_terms<C: Into<BigInt>>(nvars: usize, terms: impl IntoIterator<Item = (C, Exponents)>) -> Self {
        let mut p = Self::zero(nvars);
        for (c, e) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c.into());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().expect("one term");
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Leading term under lexicographic order.
    pub fn leading_term(&self) -> Option<(&Exponents, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Componentwise minimum exponent over all terms (zero vector for the zero polynomial).
    pub fn min_exponents(&self) -> Exponents {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.nvars];
        };
        let mut m = first.clone();
        for e in it {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    /// `(p, s)` with `self = x^s * p`, `p` having every minimum exponent zero.
    pub fn clear_monomial_content(&self) -> (Self, Exponents) {
        let s = self.min_exponents();
        let neg: Vec<i64> = s.iter().map(|x| -x).collect();
        (self.shift(&neg), s)
    }

    /// Integer content: gcd of all coefficients (zero for the zero polynomial).
    pub fn integer_content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Canonical representative up to units `±x^v`: every minimum exponent is
    /// zero and the lexicographically leading coefficient is positive.
    pub fn normalized(&self) -> Self {
        let (p, _) = self.clear_monomial_content();
        match p.leading_term() {
            Some((_, c)) if c.is_negative() => -&p,
            _ => p,
        }
    }

    /// Image under the monomial map `x^v -> y^{T v}` where `T` has one row per
    /// target variable and one column per source variable.
    pub fn map_exponents(&self, map: &[Vec<i64>], target_vars: usize) -> Self {
        let mut out = Self::zero(target_vars);
        for (e, c) in &self.terms {
            let image: Exponents = map
                .iter()
                .map(|row| row.iter().zip(e).map(|(a, b)| a * b).sum())
                .collect();
            out.add_term(image, c.clone());
        }
        out
    }

    /// Evaluates all variables at 1.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Terms rendered as `coeff*v1^e1*...*vm^em`, leading term first.
    pub fn term_strings(&self, names: &[String]) -> Vec<String> {
        self.terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mut s = c.to_string();
                for (name, x) in names.iter().zip(e) {
                    s.push_str(&format!("*{name}^{x}"));
                }
                s
            })
            .collect()
    }

    /// Default variable names: `t` for one variable, `x1..xm` otherwise.
    pub fn default_names(nvars: usize) -> Vec<String> {
        if nvars == 1 {
            vec!["t".to_string()]
        } else {
            (1..=nvars).map(|i| format!("x{i}")).collect()
        }
    }

    /// Human-readable rendering with the given variable names.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = names
                .iter()
                .zip(e)
                .filter(|(_, &x)| x != 0)
                .map(|(n, &x)| if x == 1 { n.clone() } else { format!("{n}^{x}") })
                .collect();
            let a = c.abs();
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{a}*{}", mono.join("*")));
            }
        }
        out
    }

    // --- polynomial-ring helpers (nonnegative exponents) ---

    fn degree_in(&self, v: usize) -> i64 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(-1)
    }

    /// Coefficient of `x_v^k`, as a polynomial not involving `x_v`.
    fn coeff_in(&self, v: usize, k: i64) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[v] == k {
                let mut e2 = e.clone();
                e2[v] = 0;
                out.terms.insert(e2, c.clone());
            }
        }
        out
    }

    fn coeffs_in(&self, v: usize) -> BTreeMap<i64, Self> {
        let mut out: BTreeMap<i64, Self> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[v] = 0;
            out.entry(e[v])
                .or_insert_with(|| Self::zero(self.nvars))
                .terms
                .insert(e2, c.clone());
        }
        out
    }

    fn var_power(nvars: usize, v: usize, k: i64) -> Self {
        let mut e = vec![0; nvars];
        e[v] = k;
        Self::monomial(e, BigInt::one())
    }

    /// Exact division in the polynomial ring by lexicographic leading terms.
    fn poly_div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lm_g, lc_g) = divisor.leading_term()?;
        let (lm_g, lc_g) = (lm_g.clone(), lc_g.clone());
        let mut q = Self::zero(self.nvars);
        let mut r = self.clone();
        while let Some((lm_r, lc_r)) = r.leading_term() {
            let diff: Exponents = lm_r.iter().zip(&lm_g).map(|(a, b)| a - b).collect();
            if diff.iter().any(|&x| x < 0) || !lc_r.is_multiple_of(&lc_g) {
                return None;
            }
            let t = Self::monomial(diff, lc_r / &lc_g);
            r = &r - &(&t * divisor);
            q = &q + &t;
        }
        Some(q)
    }

    /// Exact division in the Laurent ring, `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        let (f, sf) = self.clear_monomial_content();
        let (g, sg) = divisor.clear_monomial_content();
        let q = f.poly_div_exact(&g)?;
        let shift: Exponents = sf.iter().zip(&sg).map(|(a, b)| a - b).collect();
        Some(q.shift(&shift))
    }

    /// Divisibility in the ring; zero divides only zero.
    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_exact(self).is_some()
    }

    /// Greatest common divisor in the Laurent ring, normalized. Zero iff both
    /// inputs are zero.
    pub fn gcd(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "gcd of polynomials in different rings");
        let (f, _) = self.clear_monomial_content();
        let (g, _) = other.clear_monomial_content();
        let vars: Vec<usize> = (0..self.nvars).collect();
        gcd_rec(&f, &g, &vars).normalized()
    }
}

fn gcd_rec(f: &LaurentPoly, g: &LaurentPoly, vars: &[usize]) -> LaurentPoly {
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    let Some((&v, rest)) = vars.split_first() else {
        let a = f.as_constant().expect("no variables left");
        let b = g.as_constant().expect("no variables left");
        return LaurentPoly::constant(f.nvars, a.gcd(&b));
    };
    if f.degree_in(v) == 0 && g.degree_in(v) == 0 {
        return gcd_rec(f, g, rest);
    }
    let cf = content_in(f, v, rest);
    let cg = content_in(g, v, rest);
    let c = gcd_rec(&cf, &cg, rest);
    let mut a = f.poly_div_exact(&cf).expect("content divides");
    let mut b = g.poly_div_exact(&cg).expect("content divides");
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    // Primitive pseudo-remainder sequence in x_v.
    let primitive_gcd = loop {
        if b.is_zero() {
            break a;
        }
        if b.degree_in(v) == 0 {
            break LaurentPoly::one(f.nvars);
        }
        let r = pseudo_rem(&a, &b, v);
        a = b;
        b = if r.is_zero() {
            r
        } else {
            let cr = content_in(&r, v, rest);
            r.poly_div_exact(&cr).expect("content divides")
        };
    };
    &c * &primitive_gcd
}

fn content_in(f: &LaurentPoly, v: usize, rest: &[usize]) -> LaurentPoly {
    let mut acc = LaurentPoly::zero(f.nvars);
    for c in f.coeffs_in(v).into_values() {
        acc = gcd_rec(&acc, &c, rest);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn pseudo_rem(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> LaurentPoly {
    let db = b.degree_in(v);
    let lcb = b.coeff_in(v, db);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lcr = r.coeff_in(v, dr);
        let shifted = &(&lcr * b) * &LaurentPoly::var_power(a.nvars, v, dr - db);
        r = &(&r * &lcb) - &shifted;
    }
    r
}

/// Determinant of a square matrix of Laurent polynomials by cofactor expansion.
pub fn laurent_determinant(m: &[Vec<LaurentPoly>], nvars: usize) -> LaurentPoly {
    let n = m.len();
    match n {
        0 => LaurentPoly::one(nvars),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let mut acc = LaurentPoly::zero(nvars);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<LaurentPoly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &laurent_determinant(&minor, nvars);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// All `k`-element subsets of `0..n`, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// All `k x k` minors of a `rows x cols` matrix of Laurent polynomials.
pub fn minors(m: &[Vec<LaurentPoly>], cols: usize, k: usize, nvars: usize) -> Vec<LaurentPoly> {
    let rows = m.len();
    let mut out = Vec::new();
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<LaurentPoly>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect())
                .collect();
            out.push(laurent_determinant(&sub, nvars));
        }
    }
    out
}

/// Normalized gcd of all `k x k` minors. `k = 0` gives 1; zero if every minor vanishes.
pub fn multivariate_minor_gcd(
    m: &[Vec<LaurentPoly>],
    cols: usize,
    k: usize,
    nvars: usize,
) -> Result<LaurentPoly> {
    let rows = m.len();
    if k > rows.min(cols) {
        return Err(Error::Dimension(format!(
            "minor size {k} exceeds matrix dimensions {rows}x{cols}"
        )));
    }
    if k == 0 {
        return Ok(LaurentPoly::one(nvars));
    }
    let mut g = LaurentPoly::zero(nvars);
    for minor in minors(m, cols, k, nvars) {
        g = g.gcd(&minor);
        if g.is_one() {
            break;
        }
    }
    Ok(g)
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self.render(&Self::default_names(self.nvars)))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&Self::default_names(self.nvars)))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = LaurentPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}
