use dicke_core::canonical::entropy_of_energy;
use dicke_core::microcanonical::*;
use dicke_core::{ModelParams, Pseudospin};
use num_bigint::BigUint;
use proptest::prelude::*;

fn params(ratio: f64, delta: f64, n: u32) -> ModelParams {
    let p = ModelParams::new(1.0, 1.0, 1.0, delta, n).unwrap();
    p.with_gamma(ratio * p.critical().plus)
}

#[test]
fn reference_multiplicities() {
    let y = multiplicity_exact(40, Pseudospin::from_twice(20)).unwrap();
    assert_eq!(y, BigUint::from(574_221_648u64));
    let y = multiplicity_exact(41, Pseudospin::from_twice(7)).unwrap();
    assert_eq!(y, BigUint::from(48_507_033_744u64));
    let exact = ln_biguint(&multiplicity_exact(1000, Pseudospin::from_twice(500)).unwrap());
    let approx = multiplicity_ln(1000, Pseudospin::from_twice(500)).unwrap();
    assert!((exact - 558.394_156_001_289_6).abs() < 1e-9);
    assert!((approx - 558.394_156_001_289_6).abs() < 1e-9);
    assert!(multiplicity_exact(40, Pseudospin::from_twice(21)).is_err());
}

#[test]
fn multiplicity_sum_is_hilbert_dimension() {
    for n in 1..=30u32 {
        let mut total = BigUint::from(0u32);
        for two_j in (n % 2..=n).step_by(2) {
            total += multiplicity_exact(n, Pseudospin::from_twice(two_j)).unwrap() * (two_j + 1);
        }
        assert_eq!(total, BigUint::from(1u32) << n, "N = {n}");
    }
}

#[test]
fn log_domain_matches_exact_below_overflow() {
    for n in [10u32, 31, 63] {
        for two_j in (n % 2..=n).step_by(2) {
            let j = Pseudospin::from_twice(two_j);
            let exact = ln_biguint(&multiplicity_exact(n, j).unwrap());
            assert!((multiplicity_ln(n, j).unwrap() - exact).abs() < 1e-10 * exact.abs().max(1.0));
        }
    }
}

#[test]
fn leading_order_multiplicity() {
    for k in 1..=9 {
        let z = k as f64 / 10.0;
        let exact = multiplicity_ln(1000, Pseudospin::from_twice((1000.0 * z) as u32)).unwrap() / 1000.0;
        assert!((multiplicity_log_approx(z).unwrap() - exact).abs() < 0.01);
    }
}

#[test]
fn multiplicity_ratio_sharpens_with_size() {
    for (z, dz) in [(0.1, 0.1), (0.3, 0.2), (0.5, 0.1), (0.7, 0.2)] {
        let mut last = f64::INFINITY;
        for n in (100..=1000).step_by(100) {
            let nf = n as f64;
            let lo = Pseudospin::from_twice((z * nf).round() as u32);
            let hi = Pseudospin::from_twice(((z + dz) * nf).round() as u32);
            let log_ratio = multiplicity_ln(n, hi).unwrap() - multiplicity_ln(n, lo).unwrap();
            assert!(log_ratio < last, "z {z} N {n}");
            last = log_ratio;
        }
    }
}

#[test]
fn reference_microcanonical_points() {
    let cases = [
        (2.0, 0.5, -1.5, [0.829_156_197_588_85, 0.291_815_812_198_684_27, 0.714_841_289_646_619_25]),
        (2.0, 0.5, -0.1, [0.1, 0.688_138_813_713_588_41, 0.200_670_695_462_151_17]),
        (0.6, 0.5, -0.3, [0.3, 0.647_446_639_034_632_44, 0.619_039_208_406_223_4]),
    ];
    for (ratio, delta, eps, [z, s, b]) in cases {
        let pt = microcanonical_point(&params(ratio, delta, 100), eps).unwrap();
        assert!((pt.z_m - z).abs() < 1e-13);
        assert!((pt.entropy - s).abs() < 1e-13, "{} vs {s}", pt.entropy);
        assert!((pt.beta - b).abs() < 1e-12);
    }
}

#[test]
fn band_edges() {
    let p = params(2.0, 0.5, 100);
    assert!((epsilon_min(&p) + 2.125).abs() < 1e-15);
    assert_eq!(temperature_micro(&p, epsilon_min(&p)).unwrap(), f64::INFINITY);
    assert_eq!(temperature_micro(&p, 0.3).unwrap(), 0.0);
    assert_eq!(entropy_micro(&p, 0.3).unwrap(), std::f64::consts::LN_2);
    assert!(entropy_micro(&p, -2.2).is_err());
}

#[test]
fn polarization_continuous_at_transition() {
    for (ratio, delta) in [(1.5, 0.5), (2.0, 0.0), (4.0, 1.0)] {
        let p = params(ratio, delta, 100);
        let ec = epsilon_critical(&p).unwrap();
        let below = min_pseudospin(&p, ec - 1e-13).unwrap();
        let above = min_pseudospin(&p, ec + 1e-13).unwrap();
        assert!((below - above).abs() < 1e-12);
        assert!((min_pseudospin(&p, ec).unwrap() + ec).abs() < 1e-12);
    }
}

#[test]
fn ensembles_agree_on_the_band() {
    for (ratio, delta) in [(0.5, 0.5), (2.0, 0.5), (2.0, 0.0), (0.5, 1.0), (2.0, 1.0)] {
        let p = params(ratio, delta, 100);
        let lo = epsilon_min(&p);
        let mut last_beta = f64::INFINITY;
        for k in 1..400 {
            let eps = lo * (1.0 - k as f64 / 400.0);
            let s = entropy_micro(&p, eps).unwrap();
            let sc = entropy_of_energy(&p, 0.5 * eps * p.omega0).unwrap();
            assert!((s - sc).abs() < 1e-9, "{ratio} {delta} {eps}");
            let beta = temperature_micro(&p, eps).unwrap();
            assert!(beta <= last_beta);
            last_beta = beta;
        }
    }
}

#[test]
fn temperature_is_entropy_slope() {
    // beta = dS/dE with E = N omega0 eps / 2 per atom
    for (ratio, delta, eps) in [(2.0, 0.5, -1.5), (2.0, 0.5, -0.1), (0.6, 0.5, -0.3), (3.0, 1.0, -2.0)] {
        let p = params(ratio, delta, 100);
        let h = 1e-6;
        let ds = (entropy_micro(&p, eps + h).unwrap() - entropy_micro(&p, eps - h).unwrap()) / (2.0 * h);
        let beta = temperature_micro(&p, eps).unwrap();
        assert!((ds * 2.0 / p.omega0 - beta).abs() < 1e-6, "{ds} {beta}");
    }
}

#[test]
fn state_count_at_forty_atoms() {
    let p = params(0.6, 0.5, 40);
    let eps = -0.5;
    let count = number_of_states(&p, eps * 20.0, 0.01).unwrap();
    let n = 40.0f64;
    let s = entropy_micro(&p, eps).unwrap();
    assert!((count.log_count / n - s).abs() < 2.0 * n.ln() / n);
    let zm = min_pseudospin(&p, eps).unwrap();
    let dominant = count.dominant.unwrap().value();
    assert!((dominant - n * zm / 2.0).abs() <= 1.0, "{dominant}");
}

#[test]
fn state_count_tracks_entropy() {
    for (ratio, delta) in [(2.0, 0.5), (0.6, 0.5), (2.0, 0.0), (3.0, 1.0)] {
        for n in [100u32, 400, 800] {
            let p = params(ratio, delta, n);
            let nf = n as f64;
            for f in [0.1, 0.5, 0.9] {
                let eps = epsilon_min(&p) * (1.0 - f);
                let count = number_of_states(&p, 0.5 * nf * eps, 0.01).unwrap();
                let s = entropy_micro(&p, eps).unwrap();
                assert!((count.log_count / nf - s).abs() < 2.5 * nf.ln() / nf);
                // the summand peaks about 1 / (2 atanh z_m) units above the threshold sector
                let zm = min_pseudospin(&p, eps).unwrap();
                let offset = count.dominant.unwrap().value() - 0.5 * nf * zm;
                assert!(offset >= -0.5 && offset <= 2.0 + 1.0 / (2.0 * zm.atanh()), "{ratio} {delta} {n} {f}: {offset}");
            }
        }
    }
}

#[test]
fn empty_below_ground() {
    let p = params(2.0, 0.5, 40);
    let count = number_of_states(&p, -2.2 * 20.0, 0.01).unwrap();
    assert_eq!(count.log_count, f64::NEG_INFINITY);
    assert!(count.dominant.is_none());
}

proptest! {
    #[test]
    fn log_multiplicity_table_consistent(n in 1u32..400) {
        let table = MultiplicityTable::new(n).unwrap();
        for (&two_j, &ly) in &table.log_y {
            prop_assert_eq!(ly, multiplicity_ln(n, Pseudospin::from_twice(two_j)).unwrap());
        }
        prop_assert_eq!(table.log_y.len() as u32, n / 2 + 1);
    }

    #[test]
    fn entropy_bounded(ratio in 0.1f64..6.0, delta in 0.0f64..=1.0, f in 0.0f64..1.0) {
        let p = params(ratio, delta, 50);
        let s = entropy_micro(&p, epsilon_min(&p) * (1.0 - f)).unwrap();
        prop_assert!((0.0..=std::f64::consts::LN_2 + 1e-15).contains(&s));
    }
}
