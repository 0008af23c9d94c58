//! LZ77 sliding-window tokenizer.
//!
//! The encoder scans the search buffer backwards for the longest match to
//! the look-ahead buffer; on a length tie the last match found wins, i.e.
//! the one farthest from the cursor (largest offset). Matches may overlap
//! the cursor, so a run compresses to one self-referential token.

use super::{CompressError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lz77Token {
    pub offset: u32,
    pub length: u32,
    pub next_symbol: u8,
}

#[derive(Clone, Copy, Debug)]
pub struct Lz77Config {
    pub search_size: usize,
    pub lookahead_size: usize,
}

impl Default for Lz77Config {
    fn default() -> Self {
        // Long search buffer, short look-ahead.
        Self { search_size: 32 * 1024, lookahead_size: 64 }
    }
}

impl Lz77Config {
    /// Configuration used by the `lz` backend. The longer look-ahead lets a
    /// repeated document cost a few long matches instead of one token per
    /// 64 bytes, which is what keeps NCD self-distances near zero.
    pub fn backend_default() -> Self {
        Self { search_size: 32 * 1024, lookahead_size: 256 }
    }
}

impl Lz77Config {
    fn validate(&self) -> Result<()> {
        if self.search_size == 0 || self.lookahead_size == 0 {
            return Err(CompressError::BadParameter(
                "search and look-ahead buffers must be at least 1 byte".into(),
            ));
        }
        Ok(())
    }

    /// Longest match a token can carry: the match plus its literal must fit
    /// the look-ahead buffer.
    pub fn max_match(&self) -> usize {
        self.lookahead_size - 1
    }
}

pub fn lz77_encode(data: &[u8], config: Lz77Config) -> Result<Vec<Lz77Token>> {
    config.validate()?;
    let mut tokens = Vec::new();
    // Occurrence index per byte value, ascending position order.
    let mut occurrences: Vec<Vec<u32>> = vec![Vec::new(); 256];
    let mut cursor = 0usize;

    while cursor < data.len() {
        let remaining = data.len() - cursor;
        let max_len = config.max_match().min(remaining - 1);
        let window_start = cursor.saturating_sub(config.search_size);

        let mut best_len = 0usize;
        let mut best_pos = 0usize;
        if max_len > 0 {
            let positions = &occurrences[data[cursor] as usize];
            let first = positions.partition_point(|&p| (p as usize) < window_start);
            for &p in &positions[first..] {
                let p = p as usize;
                // A candidate can only improve the best match if it agrees
                // one byte past the current best length.
                if best_len > 0 && data[p + best_len] != data[cursor + best_len] {
                    continue;
                }
                let mut len = 0;
                while len < max_len && data[p + len] == data[cursor + len] {
                    len += 1;
                }
                if len > best_len {
                    best_len = len;
                    best_pos = p;
                    if best_len == max_len {
                        break;
                    }
                }
            }
        }

        let consumed = best_len + 1;
        tokens.push(if best_len > 0 {
            Lz77Token {
                offset: (cursor - best_pos) as u32,
                length: best_len as u32,
                next_symbol: data[cursor + best_len],
            }
        } else {
            Lz77Token { offset: 0, length: 0, next_symbol: data[cursor] }
        });
        for p in cursor..cursor + consumed {
            occurrences[data[p] as usize].push(p as u32);
        }
        cursor += consumed;
    }
    Ok(tokens)
}

pub fn lz77_decode(tokens: &[Lz77Token]) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    for (i, t) in tokens.iter().enumerate() {
        if (t.offset == 0) != (t.length == 0) {
            return Err(CompressError::Corrupt(format!(
                "token {i} has offset {} with length {}",
                t.offset, t.length
            )));
        }
        if t.offset as usize > out.len() {
            return Err(CompressError::Corrupt(format!(
                "token {i} offset {} exceeds {} bytes emitted so far",
                t.offset,
                out.len()
            )));
        }
        // Byte-by-byte copy so self-overlapping matches replicate runs.
        let start = out.len() - t.offset as usize;
        for j in 0..t.length as usize {
            let b = out[start + j];
            out.push(b);
        }
        out.push(t.next_symbol);
    }
    Ok(out)
}
