use proptest::prelude::*;
use rankexact_core::arith::modular::permutation_sign;
use rankexact_core::arith::{gcd, PhaseRational, PrecisionConfig};
use rankexact_core::eta::{cocycle_w, dedekind_sum, dedekind_sum_direct, eta_multiplier, eta_multiplier_knopp, UnimodularMatrix};
use rankexact_core::mup::{m_matrix, mu_matrix, Gamma0Sampler, PermPhaseMatrix};
use rug::Rational;

fn half() -> Rational {
    Rational::from((1, 2))
}

#[test]
fn eta_cocycle_on_random_pairs() {
    let cfg = PrecisionConfig::default();
    let mut count = 0;
    for (p, seed) in [(5, 1u64), (7, 2), (11, 3), (13, 4), (17, 5)] {
        let mut s = Gamma0Sampler::with_bound(p, seed, 1_000_000);
        for _ in 0..100 {
            let (g1, g2) = (s.sample(), s.sample());
            let prod = g1.checked_mul(&g2).unwrap();
            let w = cocycle_w(&half(), &g1, &g2, &cfg).unwrap();
            assert!(w.as_sign().is_some(), "w = {w}");
            let lhs = eta_multiplier(&prod).unwrap();
            let rhs = &w * &(eta_multiplier(&g1).unwrap() * eta_multiplier(&g2).unwrap());
            assert_eq!(lhs, rhs, "{g1} {g2}");
            count += 1;
        }
    }
    assert_eq!(count, 500);
}

#[test]
fn eta_axioms() {
    let mut s = Gamma0Sampler::new(5, 77);
    let minus = eta_multiplier(&-UnimodularMatrix::IDENTITY).unwrap();
    assert_eq!(minus, PhaseRational::from_ratio(-1, 4));
    for _ in 0..500 {
        let g = s.sample();
        for b in [-7i64, 1, 12] {
            let gt = g.checked_mul(&UnimodularMatrix::translation(b)).unwrap();
            let want = eta_multiplier(&g).unwrap() * PhaseRational::from_ratio(b, 24);
            assert_eq!(eta_multiplier(&gt).unwrap(), want);
        }
        if g.c > 0 {
            assert_eq!(eta_multiplier(&-g).unwrap(), &eta_multiplier(&g).unwrap() + &Rational::from((1, 4)));
        }
    }
}

#[test]
fn mu_cocycle_on_random_pairs() {
    let cfg = PrecisionConfig::default();
    for (p, seed) in [(5, 11u64), (7, 12), (11, 13)] {
        let mut s = Gamma0Sampler::with_bound(p, seed, 1_000_000);
        for _ in 0..500 {
            let (g1, g2) = (s.sample(), s.sample());
            let w = cocycle_w(&half(), &g1, &g2, &cfg).unwrap();
            let lhs = mu_matrix(&g1.checked_mul(&g2).unwrap(), p).unwrap();
            let rhs = mu_matrix(&g1, p).unwrap().compose(&mu_matrix(&g2, p).unwrap()).unwrap().scale(&w);
            assert_eq!(lhs, rhs, "p = {p}: {g1} {g2}");
        }
    }
}

#[test]
fn mu_unitarity_and_shape() {
    for (p, seed) in [(5, 21u64), (7, 22), (11, 23), (13, 24)] {
        let mut s = Gamma0Sampler::new(p, seed);
        for _ in 0..200 {
            let g = s.sample();
            let m = mu_matrix(&g, p).unwrap();
            assert!(m.is_bijection());
            assert!(m.inverse().is_bijection());
            assert_eq!(m.compose(&m.inverse()).unwrap(), PermPhaseMatrix::identity(p));
            let inv_g = mu_matrix(&g.inverse(), p).unwrap();
            // mu(g^{-1}) differs from the adjoint by the cocycle sign only
            let ratio = inv_g.compose(&m).unwrap();
            let scalar = ratio.is_scalar().expect("scalar").clone();
            assert!(scalar.as_sign().is_some());
        }
    }
}

#[test]
fn restriction_to_gamma1() {
    for p in [5, 7, 11] {
        let mut s = Gamma0Sampler::new(p, 100 + p as u64);
        for _ in 0..200 {
            let g = s.sample_gamma1_restricted();
            assert_eq!(g.c % (p * p), 0);
            let m = mu_matrix(&g, p).unwrap();
            assert_eq!(m.is_scalar(), Some(&eta_multiplier(&g).unwrap().conj()), "{g}");
        }
    }
}

#[test]
fn determinant_structure() {
    for (p, seed) in [(5, 31u64), (7, 32), (11, 33), (13, 34)] {
        let mut s = Gamma0Sampler::new(p, seed);
        for _ in 0..200 {
            let g = s.sample();
            let m = m_matrix(&g, p).unwrap();
            // cycle decomposition vs. inversion count
            let inversions =
                (0..m.perm.len()).flat_map(|i| (i + 1..m.perm.len()).map(move |j| (i, j))).filter(|&(i, j)| m.perm[i] > m.perm[j]).count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            assert_eq!(permutation_sign(&m.perm), sign);
            assert_eq!(m.det(), PhaseRational::sign(sign), "{g}");
            let mu = mu_matrix(&g, p).unwrap();
            let det_ratio = mu.det() * eta_multiplier(&g).unwrap().pow(p - 1);
            assert!(det_ratio.as_sign().is_some());
        }
    }
}

#[test]
fn dedekind_paths_agree_on_random_sample() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    while done < 10_000 {
        let c = rng.random_range(1..=2000i64);
        let d = rng.random_range(-5000..=5000i64);
        if gcd(d, c) != 1 {
            continue;
        }
        assert_eq!(dedekind_sum(d, c).unwrap(), dedekind_sum_direct(d, c).unwrap());
        done += 1;
    }
}

#[test]
fn knopp_agreement_on_entries_up_to_fifty() {
    for a in -50i64..=50 {
        for c in -50i64..=50 {
            if c == 0 || gcd(a, c) != 1 {
                continue;
            }
            // all completions (b, d) with |b|, |d| <= 50
            for d in -50i64..=50 {
                if (a * d - 1) % c != 0 {
                    continue;
                }
                let b = (a * d - 1) / c;
                if b.abs() > 50 {
                    continue;
                }
                let g = UnimodularMatrix::new(a, b, c, d).unwrap();
                assert_eq!(eta_multiplier(&g).unwrap(), eta_multiplier_knopp(&g).unwrap(), "{g}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn dedekind_sum_is_odd(c in 1i64..3000, d in -10_000i64..10_000) {
        prop_assume!(gcd(d, c) == 1);
        prop_assert_eq!(dedekind_sum(-d, c).unwrap(), -dedekind_sum(d, c).unwrap());
    }

    #[test]
    fn dedekind_reciprocity(c in 1i64..100_000, d in 1i64..100_000) {
        prop_assume!(gcd(d, c) == 1);
        let lhs = dedekind_sum(d, c).unwrap() + dedekind_sum(c, d).unwrap();
        let rhs = Rational::from((c * c + d * d + 1, 12 * c * d)) - Rational::from((1, 4));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mu_of_translation_is_scalar(p in prop::sample::select(vec![5i64, 7, 11, 13]), b in -1000i64..1000) {
        let m = mu_matrix(&UnimodularMatrix::translation(b), p).unwrap();
        prop_assert_eq!(m.is_scalar(), Some(&PhaseRational::from_ratio(-b, 24)));
    }
}
