//! Property tests for the structural invariants: Smith verification,
//! exterior functoriality, Perron interval nesting, word normal forms, and
//! measure coherence.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

use solenoid_core::groupoid;
use solenoid_core::linalg::transcend;
use solenoid_core::oracles;
use solenoid_core::sft::EventuallyPeriodicWord;
use solenoid_core::{
    abelian_group_of, perron_bounds, smith_normal_form, IntMatrix, SftSystem,
};

fn matrix_strategy(max_dim: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim)
        .prop_flat_map(move |d| {
            proptest::collection::vec(lo..=hi, d * d).prop_map(move |entries| {
                IntMatrix::from_i64(d, d, &entries)
            })
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn smith_form_verifies_and_matches_minor_oracle(m in matrix_strategy(4, -6, 6)) {
        let snf = smith_normal_form(&m);
        prop_assert!(snf.verify());
        prop_assert_eq!(snf.diagonal(), oracles::invariant_factors_by_minors(&m));
    }

    #[test]
    fn exterior_power_is_functorial(
        a in matrix_strategy(4, -3, 3),
        b_entries in proptest::collection::vec(-3i64..=3, 16),
    ) {
        let d = a.rows();
        let b = IntMatrix::from_i64(d, d, &b_entries[..d * d]);
        for j in 0..=d {
            let lhs = a.mul(&b).exterior_power(j).unwrap();
            let rhs = a.exterior_power(j).unwrap().mul(&b.exterior_power(j).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn cokernel_order_matches_coset_count(m in matrix_strategy(3, -2, 2)) {
        let (_, coker) = abelian_group_of(&m);
        if let Some(count) = oracles::coset_count_by_fundamental_domain(&m) {
            prop_assert_eq!(coker.order(), Some(count));
        } else {
            // Singular: cokernel must be infinite.
            prop_assert!(coker.free_rank > 0 || m.det().unwrap() != BigInt::from(0));
        }
    }

    #[test]
    fn perron_intervals_nest_on_primitive_matrices(
        d in 2usize..=4,
        seed in proptest::collection::vec(0i64..=1, 16),
        extra in 1i64..=3,
    ) {
        // Positive diagonal plus random 0/1 pattern gives a primitive matrix.
        let mut entries = vec![0i64; d * d];
        for i in 0..d {
            for j in 0..d {
                entries[i * d + j] = seed[(i * d + j) % seed.len()];
            }
            entries[i * d + i] = extra;
        }
        // Ensure strong connectivity with a cycle.
        for i in 0..d {
            entries[i * d + (i + 1) % d] = entries[i * d + (i + 1) % d].max(1);
        }
        let a = IntMatrix::from_i64(d, d, &entries);
        let mut prev = perron_bounds(&a, 1).unwrap();
        for it in 2..8 {
            let next = perron_bounds(&a, it).unwrap();
            prop_assert!(prev.contains_interval(&next));
            prev = next;
        }
    }

    #[test]
    fn word_normal_form_preserves_the_sequence(
        prefix in proptest::collection::vec(0usize..3, 0..6),
        cycle in proptest::collection::vec(0usize..3, 1..5),
    ) {
        let w = EventuallyPeriodicWord::new(prefix.clone(), cycle.clone());
        // Reference read-off without normalization.
        let read = |i: usize| {
            if i < prefix.len() {
                prefix[i]
            } else {
                cycle[(i - prefix.len()) % cycle.len()]
            }
        };
        for i in 0..prefix.len() + 3 * cycle.len() + 4 {
            prop_assert_eq!(w.at(i), read(i));
        }
        // Shift really shifts.
        let s = w.shift();
        for i in 0..prefix.len() + 2 * cycle.len() + 3 {
            prop_assert_eq!(s.at(i), w.at(i + 1));
        }
    }

    #[test]
    fn kappa_matches_naive_oracle(
        px in proptest::collection::vec(0usize..2, 0..4),
        py in proptest::collection::vec(0usize..2, 0..4),
        cx in proptest::collection::vec(0usize..2, 1..4),
        cy in proptest::collection::vec(0usize..2, 1..4),
        n in -5i64..=5,
    ) {
        let sys = SftSystem::from_rows(&[&[1, 1], &[1, 1]]).unwrap();
        let x = EventuallyPeriodicWord::new(px, cx);
        let y = EventuallyPeriodicWord::new(py, cy);
        let ours = groupoid::kappa(&sys, &x, n, &y).unwrap();
        let naive = oracles::naive_kappa(&x, n, &y, 64);
        prop_assert_eq!(ours, naive);
    }

    #[test]
    fn ln_interval_encloses_and_is_monotone(num in 1i64..=400, den in 1i64..=400) {
        let x = BigRational::new(BigInt::from(num), BigInt::from(den));
        let iv = transcend::ln_interval(&x, 64);
        // exp of the enclosure brackets x back.
        let back = transcend::exp_of_interval(&iv, 64);
        prop_assert!(back.contains(&x));
        // Monotone: ln(x) <= ln(x + 1/den).
        let y = &x + BigRational::new(BigInt::one(), BigInt::from(den));
        let iv_y = transcend::ln_interval(&y, 64);
        prop_assert!(iv.lo() <= iv_y.hi());
    }
}

#[test]
fn measure_coherence_on_small_mixing_systems() {
    // Deterministic sweep over a few mixing systems.
    let systems = [
        SftSystem::from_rows(&[&[1, 1], &[1, 1]]).unwrap(),
        SftSystem::from_rows(&[&[1, 1], &[1, 0]]).unwrap(),
        SftSystem::from_rows(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]).unwrap(),
        SftSystem::from_rows(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 1]]).unwrap(),
    ];
    for sys in &systems {
        let m = sys.kms_measure(3, 25).unwrap();
        assert!(m.sums_to_one(), "total mass must contain 1");
        assert!(m.residuals_straddle_zero(sys));
        assert_eq!(
            m.refinement_defect(sys),
            BigRational::from(BigInt::from(0)),
            "one-step refinement must be interval-consistent"
        );
    }
}

#[test]
fn groupoid_bucket_ranks_match_word_counts() {
    // Bucket (n, 0) multiplicity = admissible words of length n feeding the
    // anchor, for several systems and depths.
    let full2 = SftSystem::from_rows(&[&[1, 1], &[1, 1]]).unwrap();
    let golden = SftSystem::from_rows(&[&[1, 1], &[1, 0]]).unwrap();
    for (sys, depth) in [(&full2, 5usize), (&golden, 5)] {
        let anchor = EventuallyPeriodicWord::periodic(vec![0]);
        let t = groupoid::enumerate(sys, depth, &anchor).unwrap();
        for n in 1..=depth as i64 {
            let mult = t.buckets.get(&(n, 0)).copied().unwrap_or(0);
            // Words of length n whose junction into the fixed anchor letter
            // is admissible.
            let count = sys
                .admissible_words(n as usize)
                .into_iter()
                .filter(|u| sys.is_allowed(*u.last().unwrap(), 0))
                .count();
            assert_eq!(mult, count, "bucket ({n}, 0) in {sys:?}");
        }
    }
}
