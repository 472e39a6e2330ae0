use std::sync::{Mutex, OnceLock};

use rug::Integer;

use super::rational::RationalNumber;

/// Binomial coefficient C(n, k); zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> Integer {
    if k < 0 || k as u64 > n {
        return Integer::new();
    }
    Integer::from(Integer::binomial_u(n as u32, k as u32))
}

pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

fn bernoulli_table() -> &'static Mutex<Vec<RationalNumber>> {
    static TABLE: OnceLock<Mutex<Vec<RationalNumber>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![RationalNumber::one()]))
}

/// Bernoulli number B_n with B_1 = -1/2, from
/// sum_{k=0}^{n} C(n+1, k) B_k = 0.
pub fn bernoulli(n: usize) -> RationalNumber {
    let mut table = bernoulli_table().lock().unwrap_or_else(|e| e.into_inner());
    while table.len() <= n {
        let m = table.len();
        let mut acc = RationalNumber::zero();
        for (k, b) in table.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let c = RationalNumber::from_integer(binomial(m as u64 + 1, k as i64));
            acc = acc + &c * b;
        }
        let bm = -acc.div_int(m as i64 + 1);
        table.push(bm);
    }
    table[n].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_bernoulli_numbers() {
        assert_eq!(bernoulli(0), RationalNumber::one());
        assert_eq!(bernoulli(1), RationalNumber::new(-1, 2));
        assert_eq!(bernoulli(2), RationalNumber::new(1, 6));
        assert_eq!(bernoulli(4), RationalNumber::new(-1, 30));
        assert_eq!(bernoulli(12), RationalNumber::new(-691, 2730));
    }

    #[test]
    fn odd_bernoulli_vanish() {
        for m in 1..=20 {
            assert!(bernoulli(2 * m + 1).is_zero(), "B_{}", 2 * m + 1);
        }
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(7, 3), 35);
        assert_eq!(binomial(9, 0), 1);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(3, -1), 0);
        assert_eq!(binomial(3, 4), 0);
    }

    #[test]
    fn hockey_stick() {
        for p in 0..8u64 {
            for q in 0..8u64 {
                let lhs: Integer = (0..=q).map(|j| binomial(p + j, p as i64)).sum();
                assert_eq!(lhs, binomial(p + q + 1, q as i64));
            }
        }
    }
}
