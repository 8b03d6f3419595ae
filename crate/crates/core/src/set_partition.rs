//! Partitions of the ground set {1..n}: exact counting and streaming
//! enumeration.
//!
//! Enumeration generates restricted growth strings: sequences a_1..a_n with
//! a_1 = 0 and a_(i+1) <= max(a_1..a_i) + 1, one per partition. This is the
//! incremental construction (extend every partition of {1..n} by either a new
//! singleton block or by placing n+1 into an existing block) iterated from
//! the empty set, and it streams in constant memory per partition.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::DEFAULT_ENUMERATION_LIMIT;

/// A partition of {1..n} into non-empty disjoint blocks covering the set.
///
/// Canonical form: every block ascending, blocks ordered by least element.
/// n = 0 is the empty set with its single partition into zero blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<u32>>,
}

impl SetPartition {
    /// Canonicalize and validate: blocks must be non-empty, disjoint and
    /// cover {1..n} exactly.
    pub fn from_blocks(n: usize, blocks: Vec<Vec<u32>>) -> Option<Self> {
        let mut blocks: Vec<Vec<u32>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        if blocks.iter().any(|b| b.is_empty()) {
            return None;
        }
        blocks.sort_by_key(|b| b[0]);
        let mut seen = vec![false; n];
        for &e in blocks.iter().flatten() {
            if e < 1 || e as usize > n || seen[e as usize - 1] {
                return None;
            }
            seen[e as usize - 1] = true;
        }
        if seen.iter().all(|&s| s) {
            Some(Self { n, blocks })
        } else {
            None
        }
    }

    /// Build from a restricted growth string (block labels per element,
    /// labels appearing in first-use order).
    fn from_rgs(rgs: &[usize]) -> Self {
        let block_count = rgs.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); block_count];
        for (i, &label) in rgs.iter().enumerate() {
            blocks[label].push(i as u32 + 1);
        }
        // first-use labelling already orders blocks by least element
        Self {
            n: rgs.len(),
            blocks,
        }
    }

    /// Ground-set size.
    pub fn ground_size(&self) -> usize {
        self.n
    }

    /// The blocks, each ascending, ordered by least element.
    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{{")?;
            for (j, e) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// The Bell number B_n: the number of partitions of an n-element set.
///
/// Computed exactly with the Bell triangle, which is the closed-form count of
/// the same incremental construction the enumerator uses. B_0 = 1 (the empty
/// set has exactly one partition).
pub fn bell(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    let mut row = vec![BigUint::one()];
    for _ in 1..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().unwrap().clone());
        for value in &row {
            let prev = next.last().unwrap().clone();
            next.push(prev + value);
        }
        row = next;
    }
    row.last().unwrap().clone()
}

/// Stream every partition of {1..n} exactly once, in restricted growth
/// string order, using the default enumeration limit.
pub fn set_partitions(n: usize) -> Result<SetPartitions> {
    set_partitions_with_limit(n, DEFAULT_ENUMERATION_LIMIT)
}

/// As [`set_partitions`] with an explicit enumeration limit.
pub fn set_partitions_with_limit(n: usize, limit: usize) -> Result<SetPartitions> {
    if n > limit {
        return Err(Error::GuardExceeded { size: n, limit });
    }
    Ok(SetPartitions {
        rgs: vec![0; n],
        prefix_max: vec![0; n],
        state: IterState::Fresh,
    })
}

#[derive(Debug)]
enum IterState {
    Fresh,
    Running,
    Done,
}

/// Iterator over all partitions of {1..n}; see [`set_partitions`].
#[derive(Debug)]
pub struct SetPartitions {
    rgs: Vec<usize>,
    prefix_max: Vec<usize>,
    state: IterState,
}

impl SetPartitions {
    /// Advance the growth string to its lexicographic successor.
    fn advance(&mut self) -> bool {
        let n = self.rgs.len();
        // find the rightmost position that can be incremented: position i > 0
        // with rgs[i] <= max(rgs[..i])
        for i in (1..n).rev() {
            if self.rgs[i] <= self.prefix_max[i - 1] {
                self.rgs[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.prefix_max[j] = self.prefix_max[j - 1];
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        match self.state {
            IterState::Fresh => {
                self.state = IterState::Running;
                Some(SetPartition::from_rgs(&self.rgs))
            }
            IterState::Running => {
                if self.advance() {
                    Some(SetPartition::from_rgs(&self.rgs))
                } else {
                    self.state = IterState::Done;
                    None
                }
            }
            IterState::Done => None,
        }
    }
}

/// Sum of block-count over all partitions of {1..n}; used by tests as an
/// independent cross-check of the incremental construction (each partition of
/// {1..n+1} arises once from a partition of {1..n} via |pi| + 1 choices).
pub fn bell_successor_sum(n: usize) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for pi in set_partitions(n)? {
        total += BigUint::from(pi.block_count() + 1);
    }
    Ok(total)
}
