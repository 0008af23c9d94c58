//! Burrows-Wheeler transform.
//!
//! Rotations are ordered by prefix doubling over cyclic shifts, so blocks of
//! a few hundred KB transform in O(n log² n) regardless of repetition.

use super::{CompressError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BwtBlock {
    /// Last column of the sorted rotation matrix.
    pub transformed: Vec<u8>,
    /// Row of the original string in the sorted matrix.
    pub primary_index: u32,
}

pub fn bwt_forward(block: &[u8]) -> Result<BwtBlock> {
    if block.is_empty() {
        return Err(CompressError::EmptyInput);
    }
    let n = block.len();
    let order = sort_rotations(block);

    let mut transformed = Vec::with_capacity(n);
    let mut primary_index = 0u32;
    for (row, &start) in order.iter().enumerate() {
        transformed.push(block[(start + n - 1) % n]);
        if start == 0 {
            primary_index = row as u32;
        }
    }
    Ok(BwtBlock { transformed, primary_index })
}

pub fn bwt_inverse(block: &BwtBlock) -> Result<Vec<u8>> {
    let last = &block.transformed;
    let n = last.len();
    if n == 0 {
        return Err(CompressError::EmptyInput);
    }
    if block.primary_index as usize >= n {
        return Err(CompressError::Corrupt("BWT primary index out of range".into()));
    }

    // LF mapping: position of each last-column character in the first column.
    let mut counts = [0usize; 256];
    for &b in last {
        counts[b as usize] += 1;
    }
    let mut firsts = [0usize; 256];
    let mut acc = 0;
    for b in 0..256 {
        firsts[b] = acc;
        acc += counts[b];
    }
    let mut next = vec![0usize; n];
    let mut seen = [0usize; 256];
    for (i, &b) in last.iter().enumerate() {
        next[i] = firsts[b as usize] + seen[b as usize];
        seen[b as usize] += 1;
    }

    let mut out = Vec::with_capacity(n);
    let mut row = block.primary_index as usize;
    for _ in 0..n {
        row = next[row];
        out.push(last[row]);
    }
    // Walking LF from the primary row yields the text backwards from the
    // last character; one final rotation puts it in order.
    out.reverse();
    out.rotate_left(1);
    Ok(out)
}

/// Rotation start offsets in lexicographic order of the rotations.
/// Identical rotations keep their index order.
fn sort_rotations(block: &[u8]) -> Vec<usize> {
    let n = block.len();
    let mut order: Vec<usize> = (0..n).collect();
    let mut rank: Vec<usize> = block.iter().map(|&b| b as usize).collect();
    let mut tmp = vec![0usize; n];

    let mut k = 1;
    while k < n {
        let key = |i: usize| (rank[i], rank[(i + k) % n]);
        order.sort_by_key(|&i| key(i));
        tmp[order[0]] = 0;
        for w in 1..n {
            let prev = order[w - 1];
            let cur = order[w];
            tmp[cur] = tmp[prev] + (key(prev) != key(cur)) as usize;
        }
        rank.copy_from_slice(&tmp);
        if rank[order[n - 1]] == n - 1 {
            break;
        }
        k *= 2;
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Literal row sort of all rotations, for cross-checking the fast path.
    fn naive_forward(block: &[u8]) -> BwtBlock {
        let n = block.len();
        let mut rows: Vec<(Vec<u8>, usize)> = (0..n)
            .map(|i| {
                let mut row = block[i..].to_vec();
                row.extend_from_slice(&block[..i]);
                (row, i)
            })
            .collect();
        rows.sort();
        BwtBlock {
            transformed: rows.iter().map(|(row, _)| row[n - 1]).collect(),
            primary_index: rows.iter().position(|&(_, start)| start == 0).unwrap() as u32,
        }
    }

    #[test]
    fn sentence_vector() {
        let b = bwt_forward(b"sentence").unwrap();
        assert_eq!(b.transformed, b"ntsceeen");
        assert_eq!(b.primary_index, 6);
        assert_eq!(bwt_inverse(&b).unwrap(), b"sentence");
    }

    #[test]
    fn constant_block() {
        let b = bwt_forward(b"aaaa").unwrap();
        assert_eq!(b.transformed, b"aaaa");
        assert_eq!(b.primary_index, 0);
        assert_eq!(bwt_inverse(&b).unwrap(), b"aaaa");
    }

    #[test]
    fn empty_block_rejected() {
        assert!(bwt_forward(b"").is_err());
    }

    #[test]
    fn matches_naive_sort() {
        let inputs: [&[u8]; 5] = [
            b"banana",
            b"mississippi",
            b"abcabcabc",
            b"the quick brown fox jumps over the lazy dog",
            &[0, 255, 0, 255, 7],
        ];
        for input in inputs {
            let fast = bwt_forward(input).unwrap();
            assert_eq!(fast, naive_forward(input), "input {input:?}");
            assert_eq!(bwt_inverse(&fast).unwrap(), input);
        }
    }

    #[test]
    fn output_is_permutation() {
        let input = b"compression distance laboratory";
        let b = bwt_forward(input).unwrap();
        let mut a = input.to_vec();
        let mut t = b.transformed.clone();
        a.sort_unstable();
        t.sort_unstable();
        assert_eq!(a, t);
    }
}
