//! Canonical Huffman coding.
//!
//! Codes are built by repeatedly merging the two lowest-weight nodes;
//! equal-weight nodes are ordered by creation sequence number so the result
//! is deterministic. The final codewords are the canonical assignment for
//! the resulting code lengths, which is what gets serialized (lengths only)
//! and what both encoder and decoder use.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::bits::{BitReader, BitWriter};
use super::{CompressError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Codeword {
    pub bits: u32,
    pub len: u8,
}

#[derive(Clone, Debug)]
pub struct HuffmanCode {
    /// Code length per symbol; 0 means the symbol has no codeword.
    lengths: Vec<u8>,
    codes: Vec<Option<Codeword>>,
    /// Flat decode trie; node 0 is the root. `[left, right]` child indices,
    /// `u32::MAX` marks a missing child.
    nodes: Vec<DecodeNode>,
}

#[derive(Clone, Copy, Debug)]
struct DecodeNode {
    children: [u32; 2],
    symbol: Option<u16>,
}

const NO_CHILD: u32 = u32::MAX;

impl HuffmanCode {
    /// Builds an optimal prefix code for `freqs` (indexed by symbol; zero
    /// counts are absent symbols). A one-symbol alphabet gets codeword "0".
    pub fn build(freqs: &[u64]) -> Result<Self> {
        let lengths = code_lengths(freqs)?;
        Self::from_lengths(lengths)
    }

    /// Reconstructs the canonical code from serialized lengths.
    pub fn from_lengths(lengths: Vec<u8>) -> Result<Self> {
        let mut order: Vec<u16> = (0..lengths.len() as u16)
            .filter(|&s| lengths[s as usize] > 0)
            .collect();
        if order.is_empty() {
            return Err(CompressError::EmptyFrequencies);
        }
        order.sort_by_key(|&s| (lengths[s as usize], s));

        let mut codes = vec![None; lengths.len()];
        let mut code: u32 = 0;
        let mut prev_len: u8 = lengths[order[0] as usize];
        for (i, &sym) in order.iter().enumerate() {
            let len = lengths[sym as usize];
            if i > 0 {
                code = (code + 1) << (len - prev_len);
            }
            if len > 32 || (len < 32 && code >> len != 0) {
                return Err(CompressError::Corrupt("invalid code lengths".into()));
            }
            codes[sym as usize] = Some(Codeword { bits: code, len });
            prev_len = len;
        }

        let mut nodes = vec![DecodeNode { children: [NO_CHILD; 2], symbol: None }];
        for &sym in &order {
            let cw = codes[sym as usize].unwrap();
            let mut at = 0usize;
            for i in (0..cw.len).rev() {
                let bit = ((cw.bits >> i) & 1) as usize;
                if nodes[at].symbol.is_some() {
                    return Err(CompressError::Corrupt("code lengths not prefix-free".into()));
                }
                if nodes[at].children[bit] == NO_CHILD {
                    nodes.push(DecodeNode { children: [NO_CHILD; 2], symbol: None });
                    let idx = (nodes.len() - 1) as u32;
                    nodes[at].children[bit] = idx;
                }
                at = nodes[at].children[bit] as usize;
            }
            nodes[at].symbol = Some(sym);
        }

        Ok(Self { lengths, codes, nodes })
    }

    pub fn codeword(&self, symbol: u16) -> Option<Codeword> {
        self.codes.get(symbol as usize).copied().flatten()
    }

    pub fn lengths(&self) -> &[u8] {
        &self.lengths
    }

    pub fn encode_symbol(&self, w: &mut BitWriter, symbol: u16) {
        let cw = self.codes[symbol as usize].expect("symbol has no codeword");
        w.push_bits(cw.bits as u64, cw.len);
    }

    pub fn decode_symbol(&self, r: &mut BitReader) -> Result<u16> {
        let mut at = 0usize;
        loop {
            if let Some(sym) = self.nodes[at].symbol {
                return Ok(sym);
            }
            let bit = r.read_bit()? as usize;
            let next = self.nodes[at].children[bit];
            if next == NO_CHILD {
                return Err(CompressError::Corrupt("dead branch in Huffman tree".into()));
            }
            at = next as usize;
        }
    }

    /// Expected code length in bits under the given frequencies.
    pub fn weighted_length(&self, freqs: &[u64]) -> u64 {
        freqs
            .iter()
            .enumerate()
            .map(|(s, &f)| f * self.lengths.get(s).copied().unwrap_or(0) as u64)
            .sum()
    }

    pub fn serialize(&self, out: &mut Vec<u8>) {
        let present: Vec<u16> = (0..self.lengths.len() as u16)
            .filter(|&s| self.lengths[s as usize] > 0)
            .collect();
        out.extend_from_slice(&(self.lengths.len() as u16).to_le_bytes());
        out.extend_from_slice(&(present.len() as u16).to_le_bytes());
        for s in present {
            out.extend_from_slice(&s.to_le_bytes());
            out.push(self.lengths[s as usize]);
        }
    }

    pub fn deserialize(data: &[u8], pos: &mut usize) -> Result<Self> {
        let take = |pos: &mut usize, n: usize| -> Result<&[u8]> {
            let end = *pos + n;
            let s = data
                .get(*pos..end)
                .ok_or_else(|| CompressError::Corrupt("truncated Huffman table".into()))?;
            *pos = end;
            Ok(s)
        };
        let alphabet = u16::from_le_bytes(take(pos, 2)?.try_into().unwrap()) as usize;
        let count = u16::from_le_bytes(take(pos, 2)?.try_into().unwrap()) as usize;
        let mut lengths = vec![0u8; alphabet];
        for _ in 0..count {
            let sym = u16::from_le_bytes(take(pos, 2)?.try_into().unwrap()) as usize;
            let len = take(pos, 1)?[0];
            if sym >= alphabet || len == 0 {
                return Err(CompressError::Corrupt("bad Huffman table entry".into()));
            }
            lengths[sym] = len;
        }
        Self::from_lengths(lengths)
    }
}

/// Huffman code lengths via the merge procedure, ties broken by
/// (weight, creation sequence).
fn code_lengths(freqs: &[u64]) -> Result<Vec<u8>> {
    struct Node {
        symbol: Option<u16>,
        children: Option<(usize, usize)>,
    }

    let mut nodes: Vec<Node> = Vec::new();
    let mut heap: BinaryHeap<Reverse<(u64, u32, usize)>> = BinaryHeap::new();
    let mut seq: u32 = 0;
    for (sym, &f) in freqs.iter().enumerate() {
        if f > 0 {
            nodes.push(Node { symbol: Some(sym as u16), children: None });
            heap.push(Reverse((f, seq, nodes.len() - 1)));
            seq += 1;
        }
    }
    if heap.is_empty() {
        return Err(CompressError::EmptyFrequencies);
    }

    while heap.len() > 1 {
        let Reverse((wa, _, a)) = heap.pop().unwrap();
        let Reverse((wb, _, b)) = heap.pop().unwrap();
        nodes.push(Node { symbol: None, children: Some((a, b)) });
        heap.push(Reverse((wa + wb, seq, nodes.len() - 1)));
        seq += 1;
    }

    let Reverse((_, _, root)) = heap.pop().unwrap();
    let mut lengths = vec![0u8; freqs.len()];
    let mut stack = vec![(root, 0u8)];
    while let Some((idx, depth)) = stack.pop() {
        match (nodes[idx].symbol, nodes[idx].children) {
            (Some(sym), _) => lengths[sym as usize] = depth.max(1),
            (None, Some((l, r))) => {
                stack.push((l, depth + 1));
                stack.push((r, depth + 1));
            }
            (None, None) => unreachable!(),
        }
    }
    Ok(lengths)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_symbols_get_single_bits() {
        let code = HuffmanCode::build(&[1, 1]).unwrap();
        assert_eq!(code.codeword(0).unwrap().len, 1);
        assert_eq!(code.codeword(1).unwrap().len, 1);
    }

    #[test]
    fn single_symbol_codeword_is_zero() {
        let mut freqs = vec![0u64; 8];
        freqs[3] = 7;
        let code = HuffmanCode::build(&freqs).unwrap();
        let cw = code.codeword(3).unwrap();
        assert_eq!((cw.bits, cw.len), (0, 1));
    }

    #[test]
    fn empty_frequencies_rejected() {
        assert!(HuffmanCode::build(&[0, 0]).is_err());
    }

    #[test]
    fn kraft_inequality_holds() {
        let code = HuffmanCode::build(&[45, 13, 12, 16, 9, 5]).unwrap();
        let kraft: f64 = code
            .lengths()
            .iter()
            .filter(|&&l| l > 0)
            .map(|&l| 2f64.powi(-(l as i32)))
            .sum();
        assert!(kraft <= 1.0 + 1e-12);
    }

    #[test]
    fn roundtrip_symbols() {
        let freqs = [45u64, 13, 12, 16, 9, 5];
        let code = HuffmanCode::build(&freqs).unwrap();
        let syms: Vec<u16> = (0..6).cycle().take(100).collect();
        let mut w = BitWriter::new();
        for &s in &syms {
            code.encode_symbol(&mut w, s);
        }
        let bytes = w.finish();
        let mut r = BitReader::new(&bytes);
        for &s in &syms {
            assert_eq!(code.decode_symbol(&mut r).unwrap(), s);
        }
    }

    #[test]
    fn serialize_roundtrip() {
        let code = HuffmanCode::build(&[45, 13, 12, 16, 9, 5]).unwrap();
        let mut buf = Vec::new();
        code.serialize(&mut buf);
        let mut pos = 0;
        let back = HuffmanCode::deserialize(&buf, &mut pos).unwrap();
        assert_eq!(pos, buf.len());
        assert_eq!(code.lengths(), back.lengths());
        for s in 0..6 {
            assert_eq!(code.codeword(s), back.codeword(s));
        }
    }
}
