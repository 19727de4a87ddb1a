//! Exact even-index Bernoulli numbers, cached process-wide.

use std::sync::RwLock;

use rug::{Integer, Rational};

static CACHE: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// `B_{2k}` for `k >= 1`.
pub fn bernoulli_even(k: usize) -> Rational {
    assert!(k >= 1, "B_0 is not cached");
    if let Some(b) = CACHE.read().expect("bernoulli cache poisoned").get(k - 1) {
        return b.clone();
    }
    let mut cache = CACHE.write().expect("bernoulli cache poisoned");
    if cache.len() < k {
        let n = k.max(2 * cache.len()).max(32);
        *cache = compute(n);
    }
    cache[k - 1].clone()
}

/// `B_2, B_4, ..., B_{2n}` from the tangent numbers (integer recurrence).
fn compute(n: usize) -> Vec<Rational> {
    let mut t: Vec<Integer> = vec![Integer::new(); n + 1];
    t[1] = Integer::from(1);
    for k in 2..=n {
        t[k] = Integer::from(&t[k - 1] * (k as u64 - 1));
    }
    for k in 2..=n {
        for j in k..=n {
            let a = Integer::from(&t[j - 1] * (j as u64 - k as u64));
            let b = Integer::from(&t[j] * (j as u64 - k as u64 + 2));
            t[j] = a + b;
        }
    }
    (1..=n)
        .map(|k| {
            // B_{2k} = (-1)^(k-1) 2k T_k / (4^k (4^k - 1))
            let four_k = Integer::from(1) << (2 * k as u32);
            let den = Integer::from(&four_k - 1u32) * &four_k;
            let mut num = Integer::from(&t[k] * (2 * k as u64));
            if k % 2 == 0 {
                num = -num;
            }
            Rational::from((num, den))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_values() {
        assert_eq!(bernoulli_even(1), Rational::from((1, 6)));
        assert_eq!(bernoulli_even(2), Rational::from((-1, 30)));
        assert_eq!(bernoulli_even(3), Rational::from((1, 42)));
        assert_eq!(bernoulli_even(4), Rational::from((-1, 30)));
        assert_eq!(bernoulli_even(5), Rational::from((5, 66)));
        assert_eq!(bernoulli_even(6), Rational::from((-691, 2730)));
        assert_eq!(bernoulli_even(7), Rational::from((7, 6)));
    }

    #[test]
    fn cache_growth_is_consistent() {
        let b50 = bernoulli_even(50);
        let b200 = bernoulli_even(200);
        assert_eq!(bernoulli_even(50), b50);
        // signs alternate
        assert!(b200 < 0);
        assert!(bernoulli_even(201) > 0);
    }
}
