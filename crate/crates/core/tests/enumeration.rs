use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use socrule::enumeration::*;

#[test]
fn free_counts_sum_to_all_rules() {
    for m in [2usize, 3, 5] {
        let total: BigUint = (0..=m).map(|k| count_rules_with_k_free(m, m, k).unwrap().0).sum();
        let pairs = (m * m) * (m * m - 1) / 2;
        assert_eq!(total, BigUint::one() << pairs);
        for k in 0..=m {
            assert_eq!(count_rules_with_k_free(m, m, k).unwrap(), count_rules_with_k_free_explicit(m, m, k).unwrap());
        }
    }
    assert!(count_rules_with_k_free(3, 3, 4).is_err());
}

#[test]
fn tournament_count_asymptotics() {
    let m = 12u32;
    let t = count_tournaments(m as usize).unwrap().0.to_f64().unwrap();
    let factorial: f64 = (1..=m).map(f64::from).product();
    let ratio = t * factorial / 2f64.powi((m * (m - 1) / 2) as i32);
    assert!((0.5..=1.5).contains(&ratio), "{ratio}");
}

#[test]
fn irreducible_probability_increases() {
    let values: Vec<f64> = (1..=16).map(|m| prob_irreducible(m).unwrap().to_f64()).collect();
    assert!(values.iter().all(|p| (0.0..=1.0).contains(p)));
    assert!(values[2..].windows(2).all(|w| w[0] < w[1]));
    assert_eq!(prob_irreducible(4).unwrap().fraction(), "3/8");
}

#[test]
fn classical_probability_is_m_over_power() {
    for m in 2..=17usize {
        let p = prob_classical_optimum(m).unwrap().to_f64();
        assert!((p - m as f64 / 2f64.powi(m as i32 - 1)).abs() < 1e-15);
    }
}
