//! Exact maximum disjoint set packing by branch and bound.
//!
//! Blocks are bitmasks over at most 64 positions. The search branches on the
//! lowest still-coverable position: either one of the compatible blocks
//! containing it is taken, or the position is left uncovered. A node is cut
//! when `count + bound` cannot beat the incumbent, where `bound` is the
//! smaller of the number of distinct minimum positions among compatible
//! blocks and the coverable positions divided by the smallest block size.

/// Blocks are visited by size, then lexicographically by their positions.
pub fn canonical_order(blocks: &[u64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..blocks.len()).collect();
    order.sort_by(|&a, &b| {
        let (x, y) = (blocks[a], blocks[b]);
        x.count_ones()
            .cmp(&y.count_ones())
            .then_with(|| lex_cmp(x, y))
            .then(a.cmp(&b))
    });
    order
}

/// Lexicographic comparison of the sorted position lists of two masks.
fn lex_cmp(mut x: u64, mut y: u64) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    loop {
        match (x == 0, y == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (a, b) = (x.trailing_zeros(), y.trailing_zeros());
        if a != b {
            return a.cmp(&b);
        }
        x &= x - 1;
        y &= y - 1;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPacking {
    /// Indices into the input slice, in visiting order.
    pub chosen: Vec<usize>,
}

impl BlockPacking {
    pub fn count(&self) -> usize {
        self.chosen.len()
    }
}

struct Search<'a> {
    blocks: &'a [u64],
    order: Vec<usize>,
    /// For each position, the blocks containing it (indices into `order`).
    containing: Vec<Vec<usize>>,
    best: Vec<usize>,
    stack: Vec<usize>,
    nodes: u64,
}

/// Maximum number of pairwise disjoint blocks. Empty masks are ignored.
pub fn max_disjoint_packing(blocks: &[u64]) -> BlockPacking {
    let order: Vec<usize> = canonical_order(blocks)
        .into_iter()
        .filter(|&b| blocks[b] != 0)
        .collect();
    let mut containing = vec![Vec::new(); 64];
    for (slot, &b) in order.iter().enumerate() {
        let mut m = blocks[b];
        while m != 0 {
            containing[m.trailing_zeros() as usize].push(slot);
            m &= m - 1;
        }
    }
    let mut s = Search {
        blocks,
        order,
        containing,
        best: Vec::new(),
        stack: Vec::new(),
        nodes: 0,
    };
    s.branch(0);
    BlockPacking {
        chosen: s.best.iter().map(|&slot| s.order[slot]).collect(),
    }
}

impl Search<'_> {
    fn branch(&mut self, blocked: u64) {
        self.nodes += 1;
        // compatible blocks and the bound
        let mut coverable = 0u64;
        let mut mins = 0u64;
        let mut min_size = u32::MAX;
        for &b in &self.order {
            let m = self.blocks[b];
            if m & blocked == 0 {
                coverable |= m;
                mins |= m & m.wrapping_neg();
                min_size = min_size.min(m.count_ones());
            }
        }
        if coverable == 0 {
            if self.stack.len() > self.best.len() {
                self.best = self.stack.clone();
            }
            return;
        }
        let bound = (mins.count_ones()).min(coverable.count_ones() / min_size) as usize;
        if self.stack.len() + bound <= self.best.len() {
            return;
        }
        let e = coverable.trailing_zeros() as usize;
        for idx in 0..self.containing[e].len() {
            let slot = self.containing[e][idx];
            let m = self.blocks[self.order[slot]];
            if m & blocked != 0 {
                continue;
            }
            self.stack.push(slot);
            self.branch(blocked | m);
            self.stack.pop();
        }
        self.branch(blocked | 1 << e);
    }
}
