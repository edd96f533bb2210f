mod common;

use alexlarge::algebra::{integer_char_poly, IntMatrix};
use alexlarge::covers::betti_via_oracle;
use alexlarge::fox::{alexander_matrix, strata_depth, Character};
use alexlarge::largeness::{
    baumslag_pride, build_certificate, find_invariant_subtorus, kronecker_test, subtorus_contained, torsion_scan,
    verdict_product, verify_certificate, KroneckerVerdict, Subtorus,
};
use alexlarge::presentation::{abelianize, betti_numbers, make_quotient, Presentation};
use nalgebra::DMatrix;
use num_integer::Integer;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::Rng;

/// Presentations with a positive-dimensional component of `V_1` through a
/// nontrivial point or the identity.
const WITH_SUBTORI: [&str; 3] = [
    "< a, b | >",
    "< a, b, t | a t a^-1 t^-1, b t b^-1 t^-1 >",
    "< a, b, c | a b a^-1 b^-1 >",
];

fn found_subtorus(p: &Presentation) -> Option<Subtorus> {
    find_invariant_subtorus(p, 1, 3, 10_000).ok()?.subtorus
}

/// The point `t = zeta_k^s` of `s`, as a character on the generators.
fn point_on(p: &Presentation, s: &Subtorus, k: u64, step: u64) -> Character {
    let (a, d) = s.generator_substitution(&abelianize(p));
    let l = s.order.lcm(&k) as i64;
    let exps = a
        .iter()
        .zip(&d)
        .map(|(&ag, &dg)| dg * (l / s.order as i64) + ag * step as i64 * (l / k as i64))
        .collect();
    Character::new(l as u64, exps).unwrap()
}

fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> IntMatrix {
    let mut rows = IntMatrix::identity(n).to_i64_rows().unwrap();
    for _ in 0..steps {
        match rng.gen_range(0..3) {
            0 => {
                let i = rng.gen_range(0..n);
                let j = (i + rng.gen_range(1..n)) % n;
                let s = if rng.gen_bool(0.5) { 1 } else { -1 };
                let src = rows[j].clone();
                for (x, y) in rows[i].iter_mut().zip(src) {
                    *x += s * y;
                }
            }
            1 => rows.swap(rng.gen_range(0..n), rng.gen_range(0..n)),
            _ => {
                let i = rng.gen_range(0..n);
                rows[i].iter_mut().for_each(|x| *x = -*x);
            }
        }
    }
    IntMatrix::from_rows(&rows).unwrap()
}

fn spectral_radius(m: &IntMatrix) -> f64 {
    let n = m.rows();
    let rows = m.to_i64_rows().unwrap();
    let f = DMatrix::from_fn(n, n, |i, j| rows[i][j] as f64);
    f.complex_eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn power(m: &IntMatrix, k: u64) -> IntMatrix {
    (0..k).fold(IntMatrix::identity(m.rows()), |acc, _| acc.mul(m).unwrap())
}

/// `(U - I)^n = 0`.
fn is_unipotent(u: &IntMatrix) -> bool {
    let n = u.rows();
    let mut rows = u.to_rows();
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] -= 1;
    }
    let nilpotent = IntMatrix::from_rows(&rows).unwrap();
    let zero = power(&nilpotent, n as u64);
    zero.to_rows().iter().flatten().all(|x| *x == 0.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn kronecker_agrees_with_floating_point_spectrum(seed in any::<u64>(), n in 2usize..=4) {
        let mut rng = common::rng(seed);
        let m = random_unimodular(&mut rng, n, 6);
        let v = kronecker_test(&m).unwrap();
        prop_assert_eq!(verdict_product(&v).unwrap(), integer_char_poly(&m).unwrap());
        // Jordan blocks of size k perturb float eigenvalues by about eps^(1/k)
        let rho = spectral_radius(&m);
        match v {
            KroneckerVerdict::QuasiUnipotent { orders } => {
                prop_assert!(rho <= 1.0 + 1e-3, "rho = {}", rho);
                let k = orders.iter().fold(1u64, |l, d| l.lcm(d));
                prop_assert!(is_unipotent(&power(&m, k)), "M^{} is not unipotent", k);
            }
            KroneckerVerdict::SpectralRadiusGreaterThanOne { .. } => prop_assert!(rho > 1.0 + 1e-3, "rho = {}", rho),
        }
    }

    #[test]
    fn baumslag_pride_on_deficiency_two(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let r = rng.gen_range(3..=4);
        let relators = (0..r - 2)
            .map(|_| {
                let len = rng.gen_range(1..=10);
                common::random_word(&mut rng, r, len)
            })
            .collect();
        let p = Presentation::new(common::NAMES[..r].iter().map(|s| s.to_string()).collect(), relators).unwrap();
        let rep = baumslag_pride(&p, 5).unwrap();
        // a relator may reduce to the empty word
        prop_assert!(rep.deficiency >= 2);
        for row in &rep.rows {
            prop_assert!(row.b1 as u64 >= row.n, "{}: {:?}", p, row);
            prop_assert!(row.rs_generators as u64 >= row.generator_bound);
            prop_assert_eq!(row.generator_bound, (rep.deficiency as u64 - 1) * row.n);
        }
    }

    #[test]
    fn points_of_contained_subtori_have_positive_depth(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let p = common::random_presentation(&mut rng, 3, 2, 8);
        let Some(s) = found_subtorus(&p) else { return Ok(()) };
        prop_assert!(subtorus_contained(&p, &s).unwrap());
        let am = alexander_matrix(&p);
        let mut tried = 0;
        while tried < 10 {
            let k = rng.gen_range(1..=60 / s.order);
            let chi = point_on(&p, &s, k, rng.gen_range(0..k));
            if chi.is_trivial() || chi.order() > 60 {
                continue;
            }
            tried += 1;
            prop_assert!(strata_depth(&am, &chi).unwrap() >= 1, "{} at {:?}", p, chi);
        }
    }

    #[test]
    fn certificates_verify(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let p = common::random_presentation(&mut rng, 3, 2, 6);
        let Some(s) = found_subtorus(&p) else { return Ok(()) };
        let cert = build_certificate(&p, &s, 2, None).unwrap();
        verify_certificate(&cert).unwrap();
        for row in &cert.rows {
            prop_assert_eq!(row.b1_strata, row.b1_oracle);
            prop_assert!(row.b1_oracle as u64 >= row.lower_bound);
        }
    }
}

#[test]
fn known_subtori_are_found_and_contained() {
    for s in WITH_SUBTORI {
        let p = common::pres(s);
        let t = found_subtorus(&p).unwrap_or_else(|| panic!("{s}: no subtorus"));
        assert!(subtorus_contained(&p, &t).unwrap());
    }
}

#[test]
fn tampered_certificates_are_rejected() {
    let p = common::pres(WITH_SUBTORI[1]);
    let s = found_subtorus(&p).unwrap();
    let cert = build_certificate(&p, &s, 2, None).unwrap();
    verify_certificate(&cert).unwrap();

    let mut bad = cert.clone();
    bad.rows[0].b1_oracle += 1;
    assert!(verify_certificate(&bad).is_err());

    let mut bad = cert.clone();
    bad.rows[1].generator_images[0] += 1;
    assert!(verify_certificate(&bad).is_err());

    let mut bad = cert;
    bad.period += 1;
    assert!(verify_certificate(&bad).is_err());
}

#[test]
fn torsion_scan_is_upward_consistent() {
    for s in [common::TREFOIL, "< a, b | a^2 b^-3 >", WITH_SUBTORI[1], "< a, b | a b^2 a^-1 b^-3 >"] {
        let p = common::pres(s);
        let small = torsion_scan(&p, 6, u128::MAX).unwrap();
        let large = torsion_scan(&p, 10, u128::MAX).unwrap();
        let prefix: Vec<_> = large.entries.iter().filter(|e| e.order <= 6).cloned().collect();
        assert_eq!(small.entries, prefix, "{s}");
        assert!(small.characters_examined <= large.characters_examined);
    }
}

#[test]
fn torsion_scan_entries_raise_cover_betti_numbers() {
    // a point of V_1 of order n contributes to b_1 of its cyclic cover
    for s in [common::TREFOIL, "< a, b | a^2 b^-3 >", "< a, b | a^2 b^-5 >"] {
        let p = common::pres(s);
        let base = betti_numbers(&p).b1;
        let report = torsion_scan(&p, 12, u128::MAX).unwrap();
        assert!(!report.entries.is_empty(), "{s}");
        for e in &report.entries {
            let images: Vec<Vec<i64>> = e.generator_exponents.iter().map(|&x| vec![x.to_i64().unwrap()]).collect();
            let q = make_quotient(&p, &images, &[e.order]).unwrap();
            assert!(betti_via_oracle(&p, &q) > base, "{s} at {e:?}");
        }
    }
}

#[test]
fn trefoil_scan_finds_only_primitive_sixth_roots() {
    let p = common::pres(common::TREFOIL);
    let report = torsion_scan(&p, 24, u128::MAX).unwrap();
    let orders: Vec<u64> = report.entries.iter().map(|e| e.order).collect();
    assert_eq!(orders, vec![6, 6]);
}
