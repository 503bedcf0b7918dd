/// Binary indexed tree over positions `1..=n` holding counts.
#[derive(Debug, Clone)]
pub(crate) struct Fenwick {
    tree: Vec<u64>,
}

impl Fenwick {
    pub(crate) fn new(n: usize) -> Self {
        Fenwick {
            tree: vec![0; n + 1],
        }
    }

    pub(crate) fn add(&mut self, mut i: usize, delta: u64) {
        debug_assert!(i >= 1);
        while i < self.tree.len() {
            self.tree[i] += delta;
            i += i & i.wrapping_neg();
        }
    }

    /// Sum over positions `1..=i`; `i = 0` gives zero.
    pub(crate) fn prefix_sum(&self, mut i: usize) -> u64 {
        let mut s = 0;
        while i > 0 {
            s += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::Fenwick;

    #[test]
    fn prefix_sums_match_naive() {
        let adds = [(3, 2), (1, 1), (7, 5), (3, 1), (8, 4)];
        let mut fw = Fenwick::new(8);
        let mut naive = [0u64; 9];
        for (i, d) in adds {
            fw.add(i, d);
            naive[i] += d;
            for q in 0..=8 {
                assert_eq!(fw.prefix_sum(q), naive[..=q].iter().sum::<u64>());
            }
        }
    }
}
