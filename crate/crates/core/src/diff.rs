//! Minimal diff of two symbol sequences.
//!
//! Myers' O(ND) greedy algorithm in its linear-space form: find the middle
//! snake of an optimal edit path, recurse on the two halves. Common
//! prefixes and suffixes are peeled off first at every level. The result
//! is a longest common subsequence reported as matched index pairs.

/// Indices `(i, j)` (0-based) with `a[i] == b[j]` forming a longest common
/// subsequence of `a` and `b`, ascending in both coordinates.
pub fn lcs_pairs<T: Eq>(a: &[T], b: &[T]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    diff_into(a, 0, b, 0, &mut out);
    out
}

fn diff_into<T: Eq>(a: &[T], a_off: usize, b: &[T], b_off: usize, out: &mut Vec<(usize, usize)>) {
    let prefix = a.iter().zip(b).take_while(|(x, y)| x == y).count();
    out.extend((0..prefix).map(|k| (a_off + k, b_off + k)));
    let (a, b) = (&a[prefix..], &b[prefix..]);
    let (a_off, b_off) = (a_off + prefix, b_off + prefix);

    let suffix = a
        .iter()
        .rev()
        .zip(b.iter().rev())
        .take_while(|(x, y)| x == y)
        .count();
    let (a_mid, b_mid) = (&a[..a.len() - suffix], &b[..b.len() - suffix]);

    // Both nonempty with differing first and last symbols means at least
    // two edits, so each half of the split has strictly fewer.
    if !a_mid.is_empty() && !b_mid.is_empty() {
        let snake = middle_snake(a_mid, b_mid);
        diff_into(&a_mid[..snake.x_start], a_off, &b_mid[..snake.y_start], b_off, out);
        out.extend(
            (0..snake.x_end - snake.x_start)
                .map(|k| (a_off + snake.x_start + k, b_off + snake.y_start + k)),
        );
        diff_into(
            &a_mid[snake.x_end..],
            a_off + snake.x_end,
            &b_mid[snake.y_end..],
            b_off + snake.y_end,
            out,
        );
    }

    let (a_tail, b_tail) = (a_off + a_mid.len(), b_off + b_mid.len());
    out.extend((0..suffix).map(|k| (a_tail + k, b_tail + k)));
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Snake {
    x_start: usize,
    y_start: usize,
    x_end: usize,
    y_end: usize,
}

/// Furthest-reaching x per diagonal, indexed by signed diagonal `k`.
struct Frontier {
    offset: isize,
    v: Vec<isize>,
}

impl Frontier {
    fn new(max_d: isize) -> Self {
        Frontier {
            offset: max_d + 1,
            v: vec![0; (2 * max_d + 3) as usize],
        }
    }

    #[inline]
    fn get(&self, k: isize) -> isize {
        self.v[(k + self.offset) as usize]
    }

    #[inline]
    fn set(&mut self, k: isize, x: isize) {
        self.v[(k + self.offset) as usize] = x;
    }
}

fn middle_snake<T: Eq>(a: &[T], b: &[T]) -> Snake {
    let n = a.len() as isize;
    let m = b.len() as isize;
    let delta = n - m;
    let odd = delta & 1 != 0;
    let max_d = (n + m + 1) / 2;

    // Forward frontier in normal coordinates; backward frontier in the
    // coordinates of the reversed sequences, where reversed diagonal `kr`
    // is forward diagonal `delta - kr`.
    let mut fwd = Frontier::new(max_d);
    let mut bwd = Frontier::new(max_d);

    for d in 0..=max_d {
        let mut k = -d;
        while k <= d {
            let mut x = if k == -d || (k != d && fwd.get(k - 1) < fwd.get(k + 1)) {
                fwd.get(k + 1)
            } else {
                fwd.get(k - 1) + 1
            };
            let mut y = x - k;
            let (x0, y0) = (x, y);
            while x < n && y < m && a[x as usize] == b[y as usize] {
                x += 1;
                y += 1;
            }
            fwd.set(k, x);
            if odd {
                let kr = delta - k;
                if kr > -d && kr < d && x + bwd.get(kr) >= n {
                    return Snake {
                        x_start: x0 as usize,
                        y_start: y0 as usize,
                        x_end: x as usize,
                        y_end: y as usize,
                    };
                }
            }
            k += 2;
        }

        let mut kr = -d;
        while kr <= d {
            let mut x = if kr == -d || (kr != d && bwd.get(kr - 1) < bwd.get(kr + 1)) {
                bwd.get(kr + 1)
            } else {
                bwd.get(kr - 1) + 1
            };
            let mut y = x - kr;
            let (x0, y0) = (x, y);
            while x < n && y < m && a[(n - 1 - x) as usize] == b[(m - 1 - y) as usize] {
                x += 1;
                y += 1;
            }
            bwd.set(kr, x);
            if !odd {
                let k = delta - kr;
                if k >= -d && k <= d && fwd.get(k) + x >= n {
                    return Snake {
                        x_start: (n - x) as usize,
                        y_start: (m - y) as usize,
                        x_end: (n - x0) as usize,
                        y_end: (m - y0) as usize,
                    };
                }
            }
            kr += 2;
        }
    }
    unreachable!("an edit path of length <= n + m always exists")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lcs_len_oracle(a: &[u8], b: &[u8]) -> usize {
        let mut t = vec![vec![0usize; b.len() + 1]; a.len() + 1];
        for i in 1..=a.len() {
            for j in 1..=b.len() {
                t[i][j] = if a[i - 1] == b[j - 1] {
                    t[i - 1][j - 1] + 1
                } else {
                    t[i - 1][j].max(t[i][j - 1])
                };
            }
        }
        t[a.len()][b.len()]
    }

    fn check(a: &[u8], b: &[u8]) {
        let pairs = lcs_pairs(a, b);
        assert_eq!(pairs.len(), lcs_len_oracle(a, b), "{a:?} {b:?} -> {pairs:?}");
        for w in pairs.windows(2) {
            assert!(w[0].0 < w[1].0 && w[0].1 < w[1].1, "{pairs:?}");
        }
        for &(i, j) in &pairs {
            assert_eq!(a[i], b[j]);
        }
    }

    #[test]
    fn small_cases() {
        check(b"", b"");
        check(b"abc", b"");
        check(b"", b"abc");
        check(b"abc", b"abc");
        check(b"axb", b"ayb");
        check(b"abcabba", b"cbabac");
        check(b"xyz", b"abc");
        check(b"a", b"b");
        check(b"ab", b"ba");
        assert_eq!(lcs_pairs(b"axb", b"ayb"), vec![(0, 0), (2, 2)]);
    }

    #[test]
    fn long_sequences_with_sparse_edits() {
        let a: Vec<u32> = (0..20_000).map(|i| i % 997).collect();
        let mut b = a.clone();
        for i in (0..b.len()).step_by(50) {
            b[i] = 5000 + i as u32;
        }
        b.insert(7, 9999);
        b.remove(12_345);
        let pairs = lcs_pairs(&a, &b);
        // 400 substitutions plus one deletion from a.
        assert_eq!(pairs.len(), a.len() - 400 - 1);
    }

    #[test]
    fn deterministic() {
        let a = b"abcbdabcabbd";
        let b = b"bdcabacbdab";
        assert_eq!(lcs_pairs(a, b), lcs_pairs(a, b));
    }

    proptest! {
        #[test]
        fn matches_dp_oracle(
            a in proptest::collection::vec(0u8..4, 0..16),
            b in proptest::collection::vec(0u8..4, 0..16),
        ) {
            check(&a, &b);
        }
    }
}
