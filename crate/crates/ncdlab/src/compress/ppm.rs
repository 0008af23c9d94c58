//! Order-k PPM with method C escape estimation.
//!
//! Each symbol is coded from the longest matching context; if the context
//! has never predicted it, an escape (count = number of distinct symbols
//! seen there) drops to the next shorter context, down to a uniform
//! order(-1) model over all 256 byte values. Contexts that have never been
//! seen at all are skipped silently on both sides. Counts are updated in
//! every context length after coding, so the trie holds plain occurrence
//! counts. No exclusion of higher-order symbols is applied.
//!
//! Deterministic contexts (exactly one distinct symbol seen) are coded with
//! their count scaled by `DET_SCALE`, so a repeated-prediction hit costs a
//! fraction of a bit instead of a full bit. Above the bounded orders sits a
//! single long match context (a hash of the last `MATCH_ORDER` bytes) tried
//! first on every symbol. Together these keep the coder cheap on
//! self-similar input: when the stream revisits earlier material the match
//! context is deterministic and correct almost every step. Hash collisions
//! merely merge two contexts' statistics, identically on both sides, so
//! they cost compression but never correctness.

use std::collections::HashMap;

use super::arith::{ArithDecoder, ArithEncoder};
use super::{CompressError, Result};

pub const MAX_ORDER: usize = 8;

/// Count multiplier for deterministic contexts (see module docs).
const DET_SCALE: u64 = 32;

/// History length of the long match context.
const MATCH_ORDER: usize = 20;

/// FNV-1a over the match-context history window.
fn match_key(ctx: &[u8]) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for &b in ctx {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

#[derive(Clone, Debug, Default)]
struct ContextStats {
    /// (symbol, count), kept sorted by symbol value.
    symbols: Vec<(u8, u32)>,
    total: u64,
}

impl ContextStats {
    fn distinct(&self) -> u64 {
        self.symbols.len() as u64
    }

    fn deterministic(&self) -> bool {
        self.symbols.len() == 1
    }

    fn coding_total(&self) -> u64 {
        if self.deterministic() {
            self.total * DET_SCALE + 1
        } else {
            self.total + self.distinct()
        }
    }

    /// (cum, freq) of `sym` under this context, if it has been seen.
    fn interval(&self, sym: u8) -> Option<(u64, u64)> {
        if self.deterministic() {
            let (s, c) = self.symbols[0];
            return (s == sym).then_some((0, c as u64 * DET_SCALE));
        }
        let mut cum = 0u64;
        for &(s, c) in &self.symbols {
            if s == sym {
                return Some((cum, c as u64));
            }
            cum += c as u64;
        }
        None
    }

    /// Escape occupies the top of the range.
    fn escape_interval(&self) -> (u64, u64) {
        if self.deterministic() {
            (self.total * DET_SCALE, 1)
        } else {
            (self.total, self.distinct())
        }
    }

    /// Symbol whose interval contains `target`, or None for escape.
    fn symbol_at(&self, target: u64) -> Option<(u8, u64, u64)> {
        if self.deterministic() {
            let (s, c) = self.symbols[0];
            return (target < c as u64 * DET_SCALE).then_some((s, 0, c as u64 * DET_SCALE));
        }
        let mut cum = 0u64;
        for &(s, c) in &self.symbols {
            if target < cum + c as u64 {
                return Some((s, cum, c as u64));
            }
            cum += c as u64;
        }
        None
    }

    fn bump(&mut self, sym: u8) {
        match self.symbols.binary_search_by_key(&sym, |&(s, _)| s) {
            Ok(i) => self.symbols[i].1 += 1,
            Err(i) => self.symbols.insert(i, (sym, 1)),
        }
        self.total += 1;
    }
}

/// Context trie for orders 0..=k, one map per context length.
pub struct PpmModel {
    order: usize,
    contexts: Vec<HashMap<Box<[u8]>, ContextStats>>,
    match_contexts: HashMap<u64, ContextStats>,
}

impl PpmModel {
    pub fn new(order: usize) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(CompressError::BadParameter(format!(
                "PPM order {order} exceeds {MAX_ORDER}"
            )));
        }
        Ok(Self {
            order,
            contexts: vec![HashMap::new(); order + 1],
            match_contexts: HashMap::new(),
        })
    }

    /// Builds the trie for `data` without coding anything.
    pub fn train(data: &[u8], order: usize) -> Result<Self> {
        let mut model = Self::new(order)?;
        for i in 0..data.len() {
            model.update(data, i);
        }
        Ok(model)
    }

    /// Occurrence count recorded for `sym` after context `ctx`.
    pub fn context_count(&self, ctx: &[u8], sym: u8) -> u32 {
        self.contexts
            .get(ctx.len())
            .and_then(|m| m.get(ctx))
            .and_then(|s| {
                s.symbols
                    .binary_search_by_key(&sym, |&(s, _)| s)
                    .ok()
                    .map(|i| s.symbols[i].1)
            })
            .unwrap_or(0)
    }

    fn update(&mut self, data: &[u8], i: usize) {
        let sym = data[i];
        if i >= MATCH_ORDER {
            self.match_contexts
                .entry(match_key(&data[i - MATCH_ORDER..i]))
                .or_default()
                .bump(sym);
        }
        for len in 0..=self.order.min(i) {
            let ctx = &data[i - len..i];
            self.contexts[len]
                .entry(ctx.into())
                .or_default()
                .bump(sym);
        }
    }

    /// Coding levels for position `i`, longest first: the match context
    /// when its history is available and seen, then the bounded orders.
    fn levels<'a>(&'a self, data: &'a [u8], i: usize) -> impl Iterator<Item = &'a ContextStats> {
        let matched = if i >= MATCH_ORDER {
            self.match_contexts.get(&match_key(&data[i - MATCH_ORDER..i]))
        } else {
            None
        };
        matched.into_iter().chain(
            (0..=self.order.min(i))
                .rev()
                .filter_map(move |len| self.contexts[len].get(&data[i - len..i])),
        )
    }

    /// Runs the coding walk for position `i`, reporting every coding event
    /// (symbol or escape) as (cum, freq, total) to `sink`.
    fn code_symbol(&self, data: &[u8], i: usize, mut sink: impl FnMut(u64, u64, u64)) {
        let sym = data[i];
        for stats in self.levels(data, i) {
            if let Some((cum, freq)) = stats.interval(sym) {
                sink(cum, freq, stats.coding_total());
                return;
            }
            let (cum, freq) = stats.escape_interval();
            sink(cum, freq, stats.coding_total());
        }
        sink(sym as u64, 1, 256);
    }
}

/// Exact code length of `data` in bits under the model, as the sum of
/// -log2(p) over all coding events.
pub fn ppm_estimate_bits(data: &[u8], order: usize) -> Result<f64> {
    let mut model = PpmModel::new(order)?;
    let mut bits = 0.0f64;
    for i in 0..data.len() {
        model.code_symbol(data, i, |_, freq, total| {
            bits -= (freq as f64 / total as f64).log2();
        });
        model.update(data, i);
    }
    Ok(bits)
}

/// Arithmetic-coded payload (no header; the backend frames it).
pub fn ppm_compress(data: &[u8], order: usize) -> Result<Vec<u8>> {
    let mut model = PpmModel::new(order)?;
    let mut enc = ArithEncoder::new();
    for i in 0..data.len() {
        model.code_symbol(data, i, |cum, freq, total| enc.encode(cum, freq, total));
        model.update(data, i);
    }
    Ok(enc.finish())
}

pub fn ppm_decompress(payload: &[u8], len: usize, order: usize) -> Result<Vec<u8>> {
    let mut model = PpmModel::new(order)?;
    let mut dec = ArithDecoder::new(payload);
    let mut out: Vec<u8> = Vec::with_capacity(len);
    for i in 0..len {
        let sym = 'found: {
            for stats in model.levels(&out, i) {
                let total = stats.coding_total();
                let target = dec.decode_target(total);
                match stats.symbol_at(target) {
                    Some((sym, cum, freq)) => {
                        dec.consume(cum, freq, total);
                        break 'found sym;
                    }
                    None => {
                        let (cum, freq) = stats.escape_interval();
                        dec.consume(cum, freq, total);
                    }
                }
            }
            let target = dec.decode_target(256);
            dec.consume(target, 1, 256);
            target as u8
        };
        out.push(sym);
        model.update(&out, i);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bananas_trie_counts() {
        let model = PpmModel::train(b"bananas", 2).unwrap();
        assert_eq!(model.context_count(b"", b'a'), 3);
        assert_eq!(model.context_count(b"an", b'a'), 2);
        assert_eq!(model.context_count(b"", b'n'), 2);
        assert_eq!(model.context_count(b"ba", b'n'), 1);
    }

    #[test]
    fn roundtrip_text() {
        let data = b"prediction by partial matching codes the familiar and escapes the new";
        let payload = ppm_compress(data, 3).unwrap();
        assert_eq!(ppm_decompress(&payload, data.len(), 3).unwrap(), data);
    }

    #[test]
    fn roundtrip_random_bytes() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let data: Vec<u8> = (0..8000).map(|_| rng.gen()).collect();
        let payload = ppm_compress(&data, 3).unwrap();
        assert_eq!(ppm_decompress(&payload, data.len(), 3).unwrap(), data);
    }

    #[test]
    fn payload_matches_estimate() {
        let data: Vec<u8> = b"ababababab".repeat(100);
        let bits = ppm_estimate_bits(&data, 3).unwrap();
        let payload = ppm_compress(&data, 3).unwrap();
        let estimate_bytes = (bits / 8.0).ceil() as i64;
        assert!((payload.len() as i64 - estimate_bytes).abs() <= 2);
    }

    #[test]
    fn repetitive_input_compresses_hard() {
        let data: Vec<u8> = b"ab".repeat(1024);
        let payload = ppm_compress(&data, 3).unwrap();
        assert!(payload.len() * 4 < data.len());
    }

    #[test]
    fn random_input_is_incompressible() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let data: Vec<u8> = (0..4096).map(|_| rng.gen()).collect();
        let bits = ppm_estimate_bits(&data, 3).unwrap();
        assert!(bits / 8.0 >= 0.95 * data.len() as f64);
    }

    #[test]
    fn order_above_cap_rejected() {
        assert!(PpmModel::new(9).is_err());
    }
}
