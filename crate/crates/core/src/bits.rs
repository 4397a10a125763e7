//! Lower-triangular bit storage: row `n` holds `n + 1` bits, each row
//! starting on a word boundary so row popcounts never straddle rows.

type Block = u64;
const BITS: usize = Block::BITS as usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularBits {
    row_start: Vec<usize>,
    blocks: Vec<Block>,
}

impl TriangularBits {
    /// Rows `0..=max_row`, all zero.
    pub fn new(max_row: usize) -> Self {
        let mut row_start = Vec::with_capacity(max_row + 2);
        let mut acc = 0;
        for n in 0..=max_row {
            row_start.push(acc);
            acc += (n + 1).div_ceil(BITS);
        }
        row_start.push(acc);
        Self {
            row_start,
            blocks: vec![0; acc],
        }
    }

    pub fn max_row(&self) -> usize {
        self.row_start.len() - 2
    }

    #[inline]
    fn locate(&self, n: usize, k: usize) -> (usize, Block) {
        debug_assert!(k <= n && n <= self.max_row());
        (self.row_start[n] + k / BITS, 1 << (k % BITS))
    }

    /// Out-of-triangle coordinates read as zero.
    #[inline]
    pub fn get(&self, n: usize, k: usize) -> bool {
        if k > n || n > self.max_row() {
            return false;
        }
        let (i, mask) = self.locate(n, k);
        self.blocks[i] & mask != 0
    }

    /// Sets the bit and returns its previous value.
    #[inline]
    pub fn set(&mut self, n: usize, k: usize) -> bool {
        let (i, mask) = self.locate(n, k);
        let old = self.blocks[i] & mask != 0;
        self.blocks[i] |= mask;
        old
    }

    pub fn row_blocks(&self, n: usize) -> &[Block] {
        &self.blocks[self.row_start[n]..self.row_start[n + 1]]
    }

    pub fn row_count(&self, n: usize) -> u64 {
        self.row_blocks(n)
            .iter()
            .map(|b| b.count_ones() as u64)
            .sum()
    }

    pub fn total_count(&self) -> u64 {
        self.blocks.iter().map(|b| b.count_ones() as u64).sum()
    }

    /// Set columns of row `n`, ascending.
    pub fn row_ones(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_blocks(n)
            .iter()
            .enumerate()
            .flat_map(|(bi, &block)| {
                let mut b = block;
                std::iter::from_fn(move || {
                    if b == 0 {
                        return None;
                    }
                    let t = b.trailing_zeros() as usize;
                    b &= b - 1;
                    Some(bi * BITS + t)
                })
            })
    }

    /// First `(n, k)` where the two differ, scanning rows in order.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        let rows = self.max_row().max(other.max_row());
        for n in 0..=rows {
            for k in 0..=n {
                if self.get(n, k) != other.get(n, k) {
                    return Some((n, k));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rows_are_word_aligned() {
        let t = TriangularBits::new(130);
        assert_eq!(t.row_blocks(0).len(), 1);
        assert_eq!(t.row_blocks(63).len(), 1);
        assert_eq!(t.row_blocks(64).len(), 2);
        assert_eq!(t.row_blocks(128).len(), 3);
    }

    #[test]
    fn set_reports_previous_value() {
        let mut t = TriangularBits::new(10);
        assert!(!t.set(5, 3));
        assert!(t.set(5, 3));
        assert!(t.get(5, 3));
        assert!(!t.get(3, 5));
        assert!(!t.get(11, 0));
    }

    proptest! {
        #[test]
        fn popcount_and_iteration_agree(cells in prop::collection::btree_set((0usize..200, 0usize..200), 0..300)) {
            let mut t = TriangularBits::new(199);
            let cells: Vec<_> = cells.into_iter().filter(|&(n, k)| k <= n).collect();
            for &(n, k) in &cells {
                t.set(n, k);
            }
            prop_assert_eq!(t.total_count(), cells.len() as u64);
            for n in 0..200 {
                let want: Vec<usize> = cells.iter().filter(|c| c.0 == n).map(|c| c.1).collect();
                let got: Vec<usize> = t.row_ones(n).collect();
                prop_assert_eq!(t.row_count(n), want.len() as u64);
                prop_assert_eq!(got, want);
            }
        }
    }
}
