//! Bitmask subsets of `[n]`. Bit `i` stands for coordinate `i + 1`.

pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn popcount(mask: u64) -> usize {
    mask.count_ones() as usize
}

/// Indices (0-based) of the set bits, ascending.
pub fn members(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

pub fn from_indices(indices: &[usize]) -> u64 {
    indices.iter().fold(0, |acc, &i| acc | (1u64 << i))
}

/// Compares two subsets as ascending index lists, lexicographically.
pub fn lex_cmp(a: u64, b: u64) -> std::cmp::Ordering {
    members(a).cmp(members(b))
}

/// All subsets of `[n]` with exactly `k` elements, in increasing numeric
/// order (Gosper's hack).
pub fn combinations(n: usize, k: usize) -> Combinations {
    let next = if k > n {
        None
    } else if k == 0 {
        Some(0)
    } else {
        Some(full_mask(k))
    };
    Combinations { n, next }
}

pub struct Combinations {
    n: usize,
    next: Option<u64>,
}

impl Iterator for Combinations {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let current = self.next?;
        self.next = if current == 0 {
            None
        } else {
            let low = current & current.wrapping_neg();
            let ripple = current.wrapping_add(low);
            if ripple == 0 {
                None
            } else {
                let ones = ((current ^ ripple) >> 2) / low;
                let candidate = ripple | ones;
                if self.n < 64 && candidate >> self.n != 0 {
                    None
                } else {
                    Some(candidate)
                }
            }
        };
        Some(current)
    }
}

/// Every submask of `mask`, including `0` and `mask` itself.
pub fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let current = next?;
        next = if current == 0 {
            None
        } else {
            Some((current - 1) & mask)
        };
        Some(current)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combination_counts() {
        for n in 0..=10 {
            for k in 0..=n {
                let all: Vec<u64> = combinations(n, k).collect();
                assert_eq!(all.len() as u128, crate::rational::binomial_u128(n, k));
                assert!(all.iter().all(|&m| popcount(m) == k && m >> n == 0));
                assert!(all.windows(2).all(|w| w[0] < w[1]));
            }
        }
        assert_eq!(combinations(3, 4).count(), 0);
    }

    #[test]
    fn submask_enumeration() {
        assert_eq!(submasks(0b101).count(), 4);
        assert_eq!(submasks(0).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn lex_order() {
        use std::cmp::Ordering::*;
        assert_eq!(lex_cmp(0b011, 0b101), Less);
        assert_eq!(lex_cmp(0b110, 0b101), Greater);
        assert_eq!(members(0b1010).collect::<Vec<_>>(), vec![1, 3]);
    }
}
