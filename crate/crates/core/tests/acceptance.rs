//! Acceptance suite. Runs without the libtest harness so that the
//! per-criterion verdict lines always appear in `cargo test` output.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use alexlarge::algebra::{cyclotomic_poly, IntMatrix, LaurentPoly};
use alexlarge::covers::{betti_via_oracle, betti_via_strata, cheeger_constant, enumerate_quotients, StrataCache};
use alexlarge::fox::{alexander_polynomial, fox_derivative, word_monomial};
use alexlarge::largeness::{baumslag_pride, build_certificate, kronecker_test, verify_certificate, KroneckerVerdict, Subtorus};
use alexlarge::presentation::{make_quotient, Presentation, Word};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cyclic(p: &Presentation, images: &[i64], n: u64) -> alexlarge::presentation::FiniteAbelianQuotient {
    make_quotient(p, &images.iter().map(|&x| vec![x]).collect::<Vec<_>>(), &[n]).unwrap()
}

/// 1. Character-sum Betti numbers equal rewriting Betti numbers.
fn strata_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let corpus = common::corpus(0x5EED_0001, 200, 3, 2, 12);
    let mut cases = 0usize;
    for p in &corpus {
        let mut cache = StrataCache::new(p);
        for q in enumerate_quotients(p, 12) {
            let strata = cache.betti(&q).map_err(|e| format!("{p}: {e}"))?;
            let oracle = betti_via_oracle(p, &q);
            ensure(strata == oracle, || {
                format!("{p} with quotient {q:?}: strata {strata}, oracle {oracle}")
            })?;
            cases += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    Ok(format!("{} presentations, {cases} quotients, 100% agreement, {:.1?}", corpus.len(), elapsed))
}

/// 2. Trefoil polynomial and cyclic covers.
fn trefoil_regression() -> Outcome {
    let p = common::pres(common::TREFOIL);
    let terms = alexander_polynomial(&p).term_strings();
    ensure(terms == ["1*t^2", "-1*t^1", "1*t^0"], || format!("polynomial terms {terms:?}"))?;
    for n in 1..=24u64 {
        let q = cyclic(&p, &[1, 1], n);
        let expected = if n % 6 == 0 { 3 } else { 1 };
        let s = betti_via_strata(&p, &q).map_err(|e| e.to_string())?;
        let o = betti_via_oracle(&p, &q);
        ensure(s == expected && o == expected, || format!("N = {n}: strata {s}, oracle {o}, expected {expected}"))?;
    }
    Ok("t^2 - t + 1; b1 = 3 iff 6 | N for N <= 24, both paths".into())
}

/// 3. Cyclic covers of the free group.
fn free_group_tower() -> Outcome {
    let p = common::pres(common::F2);
    for n in 1..=16u64 {
        let q = cyclic(&p, &[1, 0], n);
        let o = betti_via_oracle(&p, &q);
        ensure(o as u64 == n + 1, || format!("N = {n}: oracle b1 = {o}"))?;
    }
    Ok("oracle b1 = N + 1 for N <= 16".into())
}

/// 4. Certificate on F2 with p = 2 to depth 3.
fn certificate_verification() -> Outcome {
    let start = Instant::now();
    let p = common::pres(common::F2);
    let s = Subtorus::new(vec![1, 0], vec![0, 0], vec![], 1).map_err(|e| e.to_string())?;
    let cert = build_certificate(&p, &s, 3, Some(2)).map_err(|e| e.to_string())?;
    let b1: Vec<usize> = cert.rows.iter().map(|r| r.b1_oracle).collect();
    ensure(b1 == [3, 5, 9], || format!("rows {b1:?}"))?;
    for row in &cert.rows {
        ensure(row.b1_strata == row.b1_oracle, || format!("level {} disagrees", row.n))?;
        ensure(row.b1_oracle as u64 >= 2u64.pow(row.n) - 1, || format!("level {} below bound", row.n))?;
    }
    ensure(cert.nesting.len() == 3 && cert.nesting.iter().all(|c| c.holds), || "nesting".into())?;
    verify_certificate(&cert).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("rows b1 = 3, 5, 9; period {}; nesting verified; {:.1?}", cert.period, elapsed))
}

/// 5. Deficiency-two presentations.
fn baumslag_pride_covers() -> Outcome {
    let presentations = [
        "< t, a, b | t a t^-1 a^-2 >",
        "< a, b, c | a b c a^-1 b^-1 c^-1 >",
        "< t, a, b | t^2 a t^-1 b a^-1 >",
        "< x, y, z | x^3 y^-2 z x y >",
        "< a, b, c, d | a b a^-1 b^-1 c d c^-1 d^-1, a^2 c^-1 d^3 >",
    ];
    for s in presentations {
        let p = common::pres(s);
        ensure(p.deficiency() >= 2 && p.generator_count() >= 3, || format!("{s} is not admissible"))?;
        let rep = baumslag_pride(&p, 8).map_err(|e| format!("{s}: {e}"))?;
        for row in &rep.rows {
            ensure(row.b1 as u64 >= row.n, || format!("{s}, N = {}: b1 = {}", row.n, row.b1))?;
            ensure(row.rs_generators as u64 >= 2 * row.n, || {
                format!("{s}, N = {}: {} generators", row.n, row.rs_generators)
            })?;
        }
    }
    Ok(format!("{} presentations, b1 >= N and >= 2N generators for N <= 8", presentations.len()))
}

fn companion(d: u64) -> Vec<Vec<i64>> {
    let phi = cyclotomic_poly(d).unwrap();
    let k = phi.degree().unwrap();
    let mut c = vec![vec![0i64; k]; k];
    for i in 1..k {
        c[i][i - 1] = 1;
    }
    for (i, row) in c.iter_mut().enumerate() {
        row[k - 1] = -phi.coeff(i).to_integer().to_i64().unwrap();
    }
    c
}

fn elementary(n: usize, i: usize, j: usize, s: i64) -> IntMatrix {
    let mut rows = IntMatrix::identity(n).to_i64_rows().unwrap();
    rows[i][j] = s;
    IntMatrix::from_rows(&rows).unwrap()
}

/// 6. Kronecker verdicts on conjugated finite-order blocks and hyperbolic words.
fn kronecker_classification() -> Outcome {
    let mut rng = common::rng(0x5EED_0006);
    let mut quasi = 0;
    while quasi < 100 {
        let mut orders = Vec::new();
        let mut blocks = Vec::new();
        let mut dim = 0;
        loop {
            let d = rng.gen_range(1..=12u64);
            let block = companion(d);
            if dim + block.len() > 6 {
                break;
            }
            dim += block.len();
            orders.push(d);
            blocks.push(block);
            if rng.gen_bool(0.3) {
                break;
            }
        }
        if dim == 0 {
            continue;
        }
        let mut c = vec![vec![0i64; dim]; dim];
        let mut at = 0;
        for b in &blocks {
            for (i, row) in b.iter().enumerate() {
                c[at + i][at..at + b.len()].copy_from_slice(row);
            }
            at += b.len();
        }
        let mut m = IntMatrix::from_rows(&c).unwrap();
        for _ in 0..rng.gen_range(1..=8) {
            if dim < 2 {
                break;
            }
            let i = rng.gen_range(0..dim);
            let j = (i + rng.gen_range(1..dim)) % dim;
            let s = if rng.gen_bool(0.5) { 1 } else { -1 };
            m = elementary(dim, i, j, s).mul(&m).unwrap().mul(&elementary(dim, i, j, -s)).unwrap();
        }
        orders.sort_unstable();
        let v = kronecker_test(&m).map_err(|e| e.to_string())?;
        ensure(v == KroneckerVerdict::QuasiUnipotent { orders: orders.clone() }, || {
            format!("finite-order {m:?} classified as {v:?}")
        })?;
        quasi += 1;
    }
    let u = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
    let l = IntMatrix::from_rows(&[vec![1, 0], vec![1, 1]]).unwrap();
    let u_inv = IntMatrix::from_rows(&[vec![1, -1], vec![0, 1]]).unwrap();
    let l_inv = IntMatrix::from_rows(&[vec![1, 0], vec![-1, 1]]).unwrap();
    let gens = [u, l, u_inv, l_inv];
    let mut hyperbolic = 0;
    while hyperbolic < 100 {
        let mut m = IntMatrix::identity(2);
        for _ in 0..rng.gen_range(2..=12) {
            m = m.mul(&gens[rng.gen_range(0..4)]).unwrap();
        }
        let trace = &m.row(0)[0] + &m.row(1)[1];
        if trace.abs() <= BigInt::from(2) {
            continue;
        }
        let v = kronecker_test(&m).map_err(|e| e.to_string())?;
        ensure(!v.is_quasi_unipotent(), || format!("hyperbolic {m:?} classified as {v:?}"))?;
        hyperbolic += 1;
    }
    Ok("100 finite-order conjugates and 100 hyperbolic words, 0 misclassified".into())
}

/// 7. Fox calculus identities on random words.
fn fox_identities() -> Outcome {
    let mut rng = common::rng(0x5EED_0007);
    let r = 3;
    let one = LaurentPoly::one(r);
    for k in 0..1000 {
        let len = rng.gen_range(0..=30);
        let w = common::random_word(&mut rng, r, len);
        let mut sum = LaurentPoly::zero(r);
        for i in 0..r {
            let d = fox_derivative(&w, i, r).unwrap();
            sum = &sum + &(&d * &(&LaurentPoly::variable(r, i) - &one));
        }
        ensure(sum == &word_monomial(&w, r) - &one, || format!("fundamental identity fails on word {k}"))?;
    }
    for k in 0..1000 {
        let len = rng.gen_range(0..=30);
        let w = common::random_word(&mut rng, r, len);
        let cut = rng.gen_range(0..=w.len());
        let f = Word::free_reduce(w.letters()[..cut].iter().copied());
        let g = Word::free_reduce(w.letters()[cut..].iter().copied());
        for i in 0..r {
            let lhs = fox_derivative(&w, i, r).unwrap();
            let rhs = &fox_derivative(&f, i, r).unwrap() + &(&word_monomial(&f, r) * &fox_derivative(&g, i, r).unwrap());
            ensure(lhs == rhs, || format!("product rule fails on splitting {k}"))?;
        }
    }
    Ok("fundamental identity on 1000 words, product rule on 1000 splittings".into())
}

/// 8. Cheeger constants along the Z/2^n tower of F2.
fn cheeger_decay() -> Outcome {
    let p = common::pres(common::F2);
    let mut values = Vec::new();
    for n in 1..=4u32 {
        let q = cyclic(&p, &[1, 0], 1 << n);
        values.push(cheeger_constant(&p, &q, 20).map_err(|e| e.to_string())?);
    }
    ensure(values.windows(2).all(|w| w[1] <= w[0]), || format!("values {values:?}"))?;
    let shown: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    Ok(format!("h = {}", shown.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("strata-oracle-equivalence", strata_oracle_equivalence),
        ("trefoil-regression", trefoil_regression),
        ("free-group-tower", free_group_tower),
        ("certificate-verification", certificate_verification),
        ("baumslag-pride", baumslag_pride_covers),
        ("kronecker", kronecker_classification),
        ("fox-identities", fox_identities),
        ("cheeger-decay", cheeger_decay),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL [{}] {name}: {reason}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
