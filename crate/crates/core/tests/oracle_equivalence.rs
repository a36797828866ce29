//! Oracle-equivalence sweeps: the exact algorithms against independent
//! brute-force recomputations, at the sample sizes the acceptance suite
//! relies on.

use num_bigint::BigInt;

use solenoid_core::groupoid;
use solenoid_core::oracles;
use solenoid_core::sft::EventuallyPeriodicWord;
use solenoid_core::torus;
use solenoid_core::{abelian_group_of, smith_normal_form, IntMatrix, SftSystem};

/// Small deterministic generator (xorshift) so failures reproduce.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }

    fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }
}

#[test]
fn abelian_groups_match_brute_force_on_500_samples() {
    let mut rng = Rng(0xdecafbad);
    let mut checked = 0;
    while checked < 500 {
        let d = rng.range(1, 3) as usize;
        let entries: Vec<i64> = (0..d * d).map(|_| rng.range(-2, 2)).collect();
        let m = IntMatrix::from_i64(d, d, &entries);

        let snf = smith_normal_form(&m);
        assert!(snf.verify(), "U source V = S must hold for {m:?}");
        assert_eq!(
            snf.diagonal(),
            oracles::invariant_factors_by_minors(&m),
            "determinantal divisors disagree for {m:?}"
        );

        let (kernel, coker) = abelian_group_of(&m);
        assert_eq!(kernel.free_rank, d - m.rank());
        if let Some(count) = oracles::coset_count_by_fundamental_domain(&m) {
            assert_eq!(
                coker.order(),
                Some(count),
                "coset count disagrees for {m:?}"
            );
        } else {
            assert!(coker.order().is_none() || m.rank() == d);
        }
        checked += 1;
    }
}

#[test]
fn kappa_matches_naive_on_1000_random_pairs() {
    let sys = SftSystem::from_rows(&[&[1, 1], &[1, 1]]).unwrap();
    let mut rng = Rng(0x5eed5eed);
    let word = |rng: &mut Rng| {
        let plen = rng.range(0, 4) as usize;
        let clen = rng.range(1, 4) as usize;
        let prefix: Vec<usize> = (0..plen).map(|_| rng.range(0, 1) as usize).collect();
        let cycle: Vec<usize> = (0..clen).map(|_| rng.range(0, 1) as usize).collect();
        EventuallyPeriodicWord::new(prefix, cycle)
    };
    for _ in 0..1000 {
        let x = word(&mut rng);
        let y = word(&mut rng);
        let n = rng.range(-6, 6);
        let ours = groupoid::kappa(&sys, &x, n, &y).unwrap();
        let naive = oracles::naive_kappa(&x, n, &y, 64);
        assert_eq!(ours, naive, "kappa mismatch at x={x:?} n={n} y={y:?}");
    }
}

#[test]
fn expansiveness_matches_float_singular_values_on_500_samples() {
    let mut rng = Rng(0xfeedface);
    let mut checked = 0;
    while checked < 500 {
        let d = rng.range(1, 4) as usize;
        let entries: Vec<i64> = (0..d * d).map(|_| rng.range(-4, 4)).collect();
        let a = IntMatrix::from_i64(d, d, &entries);
        if a.det().unwrap() == BigInt::from(0) {
            continue;
        }
        let (_, cert) = torus::analyze_dilation(&a).unwrap();
        if let Some(float_says) = oracles::sigma_min_exceeds_one_f64(&a) {
            assert_eq!(
                cert.expansive, float_says,
                "certificate disagrees with float oracle for {a:?}"
            );
        }
        checked += 1;
    }
}

#[test]
fn smith_form_stress_on_larger_entries() {
    // 5x5 and 6x6 matrices with entries up to +-50: the elimination must
    // stay verified and agree with the determinantal-divisor oracle.
    let mut rng = Rng(0x51f7ed);
    for _ in 0..25 {
        let d = 5 + (rng.next() % 2) as usize;
        let entries: Vec<i64> = (0..d * d).map(|_| rng.range(-50, 50)).collect();
        let m = IntMatrix::from_i64(d, d, &entries);
        let snf = smith_normal_form(&m);
        assert!(snf.verify(), "verification failed for {m:?}");
        assert_eq!(
            snf.diagonal(),
            oracles::invariant_factors_by_minors(&m),
            "oracle mismatch for {m:?}"
        );
    }
}

#[test]
fn b_family_identity_on_100_random_matrices() {
    let mut rng = Rng(0xb00b00);
    let mut checked = 0;
    while checked < 100 {
        let d = rng.range(1, 4) as usize;
        let entries: Vec<i64> = (0..d * d).map(|_| rng.range(-3, 3)).collect();
        let a = IntMatrix::from_i64(d, d, &entries);
        if a.det().unwrap() == BigInt::from(0) {
            continue;
        }
        let (sys, _) = torus::analyze_dilation(&a).unwrap();
        let fam = torus::b_matrices(&sys).unwrap();
        for (j, bj) in fam.b.iter().enumerate() {
            let ext = sys.a.exterior_power(j).unwrap();
            assert_eq!(
                bj.mul(&ext),
                IntMatrix::scalar(ext.rows(), &sys.module_rank),
                "B_{j} identity fails for {a:?}"
            );
        }
        checked += 1;
    }
}
