use num_traits::{One, Signed, Zero};

use crate::coupling::binomial::{check_probability, powers};
use crate::error::{Error, Result};
use crate::rational::{binomial, Rational};

/// Total variation distance between the projections of `ν_k` and `μ_p` onto
/// the first `m` coordinates. A pattern of weight `ℓ` has probability
/// `C(n-m, k-ℓ) / C(n, k)` under the slice and `p^ℓ (1-p)^{m-ℓ}` under the
/// cube; patterns of equal weight are pooled.
pub fn projected_tv(n: usize, k: usize, p: &Rational, m: usize) -> Result<Rational> {
    check_probability(p)?;
    if m > n || k > n {
        return Err(Error::InvalidParameter(format!(
            "need m ≤ n and k ≤ n, got n = {n}, k = {k}, m = {m}"
        )));
    }
    let size = Rational::from_integer(binomial(n, k));
    let p_pow = powers(p, m);
    let q_pow = powers(&(Rational::one() - p), m);
    let mut total = Rational::zero();
    for l in 0..=m {
        let slice = if l <= k {
            Rational::from_integer(binomial(n - m, k - l)) / &size
        } else {
            Rational::zero()
        };
        let cube = &p_pow[l] * &q_pow[m - l];
        total += Rational::from_integer(binomial(m, l)) * (slice - cube).abs();
    }
    Ok(total / Rational::from_integer(2.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::subsets::popcount;

    /// Pattern-by-pattern sum over `{0,1}^m`, counting slice points directly.
    fn tv_by_patterns(n: usize, k: usize, p: &Rational, m: usize) -> Rational {
        let mut slice_mass = vec![Rational::zero(); 1 << m];
        for x in crate::subsets::combinations(n, k) {
            slice_mass[(x & ((1 << m) - 1)) as usize] += Rational::one();
        }
        let size = Rational::from_integer(binomial(n, k));
        let mut total = Rational::zero();
        for (pattern, count) in slice_mass.iter().enumerate() {
            let w = popcount(pattern as u64);
            let cube =
                crate::rational::pow(p, w) * crate::rational::pow(&(Rational::one() - p), m - w);
            total += (count / &size - cube).abs();
        }
        total / Rational::from_integer(2.into())
    }

    #[test]
    fn examples() {
        assert!(projected_tv(10, 5, &rat(1, 2), 0).unwrap().is_zero());
        assert_eq!(projected_tv(2, 1, &rat(1, 2), 2).unwrap(), rat(1, 2));
        let small = projected_tv(32, 16, &rat(1, 2), 4).unwrap();
        let large = projected_tv(16, 8, &rat(1, 2), 4).unwrap();
        assert!(small < large);
    }

    #[test]
    fn matches_pattern_sum() {
        for (n, k, m) in [(6, 2, 3), (8, 4, 4), (9, 3, 5), (7, 7, 2)] {
            let p = rat(k as i64, n as i64);
            assert_eq!(
                projected_tv(n, k, &p, m).unwrap(),
                tv_by_patterns(n, k, &p, m)
            );
        }
    }
}
