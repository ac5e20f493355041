//! Lexicographic k-subset enumeration and binomial counts.

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // exact: acc * (n - i) is divisible by (i + 1) after the multiply
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// k-subsets of `0..n` in lexicographic order, yielded as a borrowed slice.
pub struct Combinations {
    n: usize,
    idx: Vec<usize>,
    started: bool,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            started: false,
            done: k > n,
        }
    }

    pub fn next_subset(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.idx);
        }
        let k = self.idx.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return Some(&self.idx);
            }
        }
        self.done = true;
        None
    }
}

/// k-subsets of `0..n` whose smallest element is `first`, in lexicographic order.
pub struct PrefixedCombinations {
    first: usize,
    rest: Combinations,
    buf: Vec<usize>,
}

impl PrefixedCombinations {
    pub fn new(n: usize, k: usize, first: usize) -> Self {
        assert!(k >= 1);
        let tail_n = n.saturating_sub(first + 1);
        PrefixedCombinations {
            first,
            rest: Combinations::new(tail_n, k - 1),
            buf: vec![0; k],
        }
    }

    pub fn next_subset(&mut self) -> Option<&[usize]> {
        let tail = self.rest.next_subset()?;
        self.buf[0] = self.first;
        for (slot, &t) in self.buf[1..].iter_mut().zip(tail) {
            *slot = self.first + 1 + t;
        }
        Some(&self.buf)
    }
}
