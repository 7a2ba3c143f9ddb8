//! Subset and set-partition enumeration.
//!
//! k-subsets of `0..n` (n <= 64) are enumerated as `u64` masks in
//! colexicographic order, which coincides with ascending numeric order of
//! the masks. That gives a total order with cheap ranking/unranking, so the
//! scan can be chunked across workers and merged deterministically by rank.

/// Binomial coefficient as u128 (exact for every `n <= 64` we enumerate).
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// First k-subset in colex order: the k lowest bits.
#[inline]
pub fn colex_first(k: u32) -> u64 {
    if k == 0 {
        0
    } else if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Next k-subset mask in colex order (Gosper's hack); the caller stops when
/// the result no longer fits inside `0..n`.
#[inline]
pub fn colex_next(mask: u64) -> u64 {
    debug_assert!(mask != 0);
    let c = mask & mask.wrapping_neg();
    let r = mask.wrapping_add(c);
    (((r ^ mask) >> 2) / c) | r
}

/// Rank of `mask` among k-subsets in colex order (combinatorial number
/// system): `rank = sum C(position_i, i+1)` over ascending set bits.
pub fn colex_rank(mask: u64) -> u128 {
    let mut rank: u128 = 0;
    let mut m = mask;
    let mut i = 0u64;
    while m != 0 {
        let pos = m.trailing_zeros() as u64;
        m &= m - 1;
        rank += binomial(pos, i + 1);
        i += 1;
    }
    rank
}

/// Inverse of [`colex_rank`] for subsets of size `k` within `0..n`.
pub fn colex_unrank(mut rank: u128, k: u32, n: u32) -> u64 {
    let mut mask = 0u64;
    let mut hi = n;
    for i in (1..=k).rev() {
        // largest c with C(c, i) <= rank
        let mut c = i - 1;
        let mut best = c;
        let mut lo = c;
        let mut up = hi;
        // binary search over c in [i-1, hi)
        while lo < up {
            let mid = (lo + up) / 2;
            if binomial(mid as u64, i as u64) <= rank {
                best = mid;
                lo = mid + 1;
            } else {
                up = mid;
            }
        }
        c = best;
        rank -= binomial(c as u64, i as u64);
        mask |= 1u64 << c;
        hi = c;
    }
    mask
}

/// Iterator over the k-subsets of `0..n` in colex order, over an optional
/// rank subrange `[start, end)`.
pub struct ColexSubsets {
    current: u64,
    remaining: u128,
    limit: u64,
}

impl ColexSubsets {
    pub fn all(n: u32, k: u32) -> ColexSubsets {
        Self::range(n, k, 0, binomial(n as u64, k as u64))
    }

    pub fn range(n: u32, k: u32, start: u128, end: u128) -> ColexSubsets {
        assert!(n <= 64);
        let total = binomial(n as u64, k as u64);
        let end = end.min(total);
        let (current, remaining) = if start >= end {
            (0, 0)
        } else {
            (colex_unrank(start, k, n), end - start)
        };
        ColexSubsets {
            current,
            remaining,
            limit: if n >= 64 { u64::MAX } else { (1u64 << n) - 1 },
        }
    }
}

impl Iterator for ColexSubsets {
    type Item = u64;

    #[inline]
    fn next(&mut self) -> Option<u64> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = self.current;
        debug_assert!(out & !self.limit == 0);
        if self.remaining > 0 && out != 0 {
            self.current = colex_next(out);
        }
        Some(out)
    }
}

/// Enumerates set partitions of `elems` into nonempty blocks, canonically via
/// restricted growth strings. The empty slice yields exactly one partition:
/// the empty one.
pub fn partitions<T: Copy>(elems: &[T]) -> Vec<Vec<Vec<T>>> {
    let n = elems.len();
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let blocks = rgs.iter().copied().max().unwrap() + 1;
        let mut part: Vec<Vec<T>> = vec![Vec::new(); blocks];
        for (i, &b) in rgs.iter().enumerate() {
            part[b].push(elems[i]);
        }
        out.push(part);

        // advance the restricted growth string
        let mut i = n;
        loop {
            if i == 1 {
                return out;
            }
            i -= 1;
            let max_prefix = rgs[..i].iter().copied().max().unwrap();
            if rgs[i] <= max_prefix {
                rgs[i] += 1;
                for x in rgs[i + 1..].iter_mut() {
                    *x = 0;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(64, 32), 1832624140942590534);
        assert_eq!(binomial(4, 7), 0);
    }

    #[test]
    fn colex_enumeration_is_ascending_and_complete() {
        let masks: Vec<u64> = ColexSubsets::all(6, 3).collect();
        assert_eq!(masks.len() as u128, binomial(6, 3));
        for w in masks.windows(2) {
            assert!(w[0] < w[1], "colex order is ascending mask order");
        }
        for (r, &m) in masks.iter().enumerate() {
            assert_eq!(m.count_ones(), 3);
            assert_eq!(colex_rank(m), r as u128);
            assert_eq!(colex_unrank(r as u128, 3, 6), m);
        }
    }

    #[test]
    fn colex_range_chunks_cover_all() {
        let total = binomial(10, 4);
        let mut all = Vec::new();
        let chunk = 7u128;
        let mut lo = 0u128;
        while lo < total {
            all.extend(ColexSubsets::range(10, 4, lo, lo + chunk));
            lo += chunk;
        }
        assert_eq!(all, ColexSubsets::all(10, 4).collect::<Vec<_>>());
    }

    #[test]
    fn zero_sized_subsets() {
        assert_eq!(ColexSubsets::all(5, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(ColexSubsets::all(0, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(ColexSubsets::all(3, 4).count(), 0);
    }

    #[test]
    fn full_width_subsets() {
        let masks: Vec<u64> = ColexSubsets::all(64, 63).collect();
        assert_eq!(masks.len(), 64);
        assert_eq!(masks[0], u64::MAX >> 1);
        assert_eq!(masks[63], u64::MAX << 1);
    }

    #[test]
    fn partitions_of_small_sets() {
        assert_eq!(partitions::<u32>(&[]), vec![Vec::<Vec<u32>>::new()]);
        assert_eq!(partitions(&[7]).len(), 1);
        let p3 = partitions(&[0, 1, 2]);
        assert_eq!(p3.len(), 5);
        // canonical first and last
        assert_eq!(p3[0], vec![vec![0, 1, 2]]);
        assert_eq!(p3[4], vec![vec![0], vec![1], vec![2]]);
        // all are partitions
        for p in &p3 {
            let mut seen: Vec<u32> = p.iter().flatten().copied().collect();
            seen.sort_unstable();
            assert_eq!(seen, vec![0, 1, 2]);
            assert!(p.iter().all(|b| !b.is_empty()));
        }
    }
}
