//! The three compression pipelines behind a uniform interface.
//!
//! Stream layout is versioned and bit-exact: every stream starts with
//! `[b'N', b'C', tag, VERSION]` and the original length as a little-endian
//! u32, followed by the pipeline payload. An empty input is just the
//! 8-byte header.

use super::bits::{read_u32, write_u32, BitReader, BitWriter};
use super::bwt::{bwt_forward, bwt_inverse, BwtBlock};
use super::huffman::HuffmanCode;
use super::lz77::{lz77_decode, lz77_encode, Lz77Config, Lz77Token};
use super::mtf::{byte_alphabet, mtf_decode, mtf_encode};
use super::ppm::{ppm_compress, ppm_decompress};
use super::{CompressError, Result};

const VERSION: u8 = 1;

/// A named lossless codec: the C(·) of the NCD formula.
///
/// Implementations are immutable after configuration; each call owns its
/// working state, so one backend may serve many threads at once.
pub trait Backend: Send + Sync {
    fn name(&self) -> &'static str;

    /// Stable identifier covering name and configuration, used as part of
    /// compressed-length cache keys.
    fn config_id(&self) -> String;

    fn compress(&self, data: &[u8]) -> Vec<u8>;

    fn decompress(&self, stream: &[u8]) -> Result<Vec<u8>>;

    fn compressed_len(&self, data: &[u8]) -> usize {
        self.compress(data).len()
    }
}

pub fn backend_by_name(name: &str) -> Result<Box<dyn Backend>> {
    match name {
        "lz" => Ok(Box::new(LzBackend::default())),
        "bw" => Ok(Box::new(BwBackend::default())),
        "ppm" => Ok(Box::new(PpmBackend::default())),
        other => Err(CompressError::BadParameter(format!(
            "unknown backend '{other}' (expected lz, bw or ppm)"
        ))),
    }
}

fn write_header(out: &mut Vec<u8>, tag: u8, len: usize) {
    out.extend_from_slice(&[b'N', b'C', tag, VERSION]);
    write_u32(out, len as u32);
}

fn read_header(stream: &[u8], tag: u8) -> Result<(usize, usize)> {
    if stream.len() < 8 || stream[0] != b'N' || stream[1] != b'C' {
        return Err(CompressError::Corrupt("missing stream magic".into()));
    }
    if stream[2] != tag {
        return Err(CompressError::Corrupt(format!(
            "stream tagged '{}' fed to the '{}' backend",
            stream[2] as char, tag as char
        )));
    }
    if stream[3] != VERSION {
        return Err(CompressError::Corrupt(format!("unsupported version {}", stream[3])));
    }
    let mut pos = 4;
    let len = read_u32(stream, &mut pos)? as usize;
    Ok((len, pos))
}

// ---------------------------------------------------------------- lz ----

/// LZ77 tokens entropy-coded with three per-stream Huffman tables: match
/// lengths, logarithmic offset buckets (bucket = bit length, remaining bits
/// raw) and literal bytes.
pub struct LzBackend {
    config: Lz77Config,
}

impl Default for LzBackend {
    fn default() -> Self {
        Self { config: Lz77Config::backend_default() }
    }
}

impl LzBackend {
    pub fn new(config: Lz77Config) -> Self {
        Self { config }
    }
}

fn offset_bucket(offset: u32) -> u16 {
    debug_assert!(offset > 0);
    (32 - offset.leading_zeros()) as u16
}

impl Backend for LzBackend {
    fn name(&self) -> &'static str {
        "lz"
    }

    fn config_id(&self) -> String {
        format!("lz:s{}:l{}", self.config.search_size, self.config.lookahead_size)
    }

    fn compress(&self, data: &[u8]) -> Vec<u8> {
        let mut out = Vec::new();
        write_header(&mut out, b'L', data.len());
        if data.is_empty() {
            return out;
        }
        let tokens = lz77_encode(data, self.config).expect("validated config");

        let mut len_freqs = vec![0u64; self.config.max_match() + 1];
        let mut bucket_freqs = vec![0u64; 17];
        let mut lit_freqs = vec![0u64; 256];
        for t in &tokens {
            len_freqs[t.length as usize] += 1;
            if t.length > 0 {
                bucket_freqs[offset_bucket(t.offset) as usize] += 1;
            }
            lit_freqs[t.next_symbol as usize] += 1;
        }

        let len_code = HuffmanCode::build(&len_freqs).expect("at least one token");
        let bucket_code = if bucket_freqs.iter().any(|&f| f > 0) {
            Some(HuffmanCode::build(&bucket_freqs).unwrap())
        } else {
            None
        };
        let lit_code = HuffmanCode::build(&lit_freqs).expect("at least one token");

        len_code.serialize(&mut out);
        out.push(bucket_code.is_some() as u8);
        if let Some(code) = &bucket_code {
            code.serialize(&mut out);
        }
        lit_code.serialize(&mut out);

        let mut bits = BitWriter::new();
        for t in &tokens {
            len_code.encode_symbol(&mut bits, t.length as u16);
            if t.length > 0 {
                let bucket = offset_bucket(t.offset);
                let code = bucket_code.as_ref().expect("bucket table exists");
                code.encode_symbol(&mut bits, bucket);
                let extra_bits = bucket - 1;
                let extra = t.offset as u64 - (1u64 << extra_bits);
                bits.push_bits(extra, extra_bits as u8);
            }
            lit_code.encode_symbol(&mut bits, t.next_symbol as u16);
        }
        out.extend_from_slice(&bits.finish());
        out
    }

    fn decompress(&self, stream: &[u8]) -> Result<Vec<u8>> {
        let (orig_len, mut pos) = read_header(stream, b'L')?;
        if orig_len == 0 {
            return Ok(Vec::new());
        }
        let len_code = HuffmanCode::deserialize(stream, &mut pos)?;
        let has_buckets = *stream
            .get(pos)
            .ok_or_else(|| CompressError::Corrupt("truncated stream".into()))?;
        pos += 1;
        let bucket_code = if has_buckets == 1 {
            Some(HuffmanCode::deserialize(stream, &mut pos)?)
        } else {
            None
        };
        let lit_code = HuffmanCode::deserialize(stream, &mut pos)?;

        let mut bits = BitReader::new(&stream[pos..]);
        let mut tokens: Vec<Lz77Token> = Vec::new();
        let mut decoded = 0usize;
        while decoded < orig_len {
            let length = len_code.decode_symbol(&mut bits)? as u32;
            let offset = if length > 0 {
                let code = bucket_code
                    .as_ref()
                    .ok_or_else(|| CompressError::Corrupt("match without offset table".into()))?;
                let bucket = code.decode_symbol(&mut bits)?;
                if bucket == 0 || bucket > 16 {
                    return Err(CompressError::Corrupt(format!("bad offset bucket {bucket}")));
                }
                let extra_bits = (bucket - 1) as u8;
                ((1u64 << extra_bits) + bits.read_bits(extra_bits)?) as u32
            } else {
                0
            };
            let next_symbol = lit_code.decode_symbol(&mut bits)? as u8;
            tokens.push(Lz77Token { offset, length, next_symbol });
            decoded += length as usize + 1;
        }
        let out = lz77_decode(&tokens)?;
        if out.len() != orig_len {
            return Err(CompressError::Corrupt(format!(
                "decoded {} bytes, header said {}",
                out.len(),
                orig_len
            )));
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------- bw ----

/// Block pipeline: BWT → MTF → RLE → Huffman, one self-contained unit per
/// fixed-size block.
///
/// The RLE stage is zero-run coding: the MTF output is rewritten as a
/// leading zero-run length followed by alternating (non-zero symbol,
/// zero-run length) pairs, and symbols and lengths get separate Huffman
/// tables. Run lengths ≥ 255 are chained (emit 255, subtract, repeat), so
/// a length is one or more length symbols. Unlike byte-stuffed RLE over
/// the raw MTF bytes, this keeps C(xx) close to C(x): duplicating the
/// input roughly doubles each zero run, and the doubled lengths re-code at
/// the same entropy under a per-block length table.
pub struct BwBackend {
    block_size: usize,
}

fn emit_zero_len(mut z: usize, mut sink: impl FnMut(u8)) {
    while z >= 255 {
        sink(255);
        z -= 255;
    }
    sink(z as u8);
}

impl Default for BwBackend {
    fn default() -> Self {
        Self { block_size: 256 * 1024 }
    }
}

impl BwBackend {
    pub fn new(block_size: usize) -> Self {
        assert!(block_size > 0, "block size must be positive");
        Self { block_size }
    }
}

impl Backend for BwBackend {
    fn name(&self) -> &'static str {
        "bw"
    }

    fn config_id(&self) -> String {
        format!("bw:b{}", self.block_size)
    }

    fn compress(&self, data: &[u8]) -> Vec<u8> {
        let mut out = Vec::new();
        write_header(&mut out, b'B', data.len());
        let alphabet = byte_alphabet();
        for block in data.chunks(self.block_size) {
            let bwt = bwt_forward(block).expect("non-empty chunk");
            let mtf = mtf_encode(&bwt.transformed, &alphabet).expect("full byte alphabet");

            let mut sym_freqs = vec![0u64; 256];
            let mut len_freqs = vec![0u64; 256];
            let mut i = 0;
            let mut zeros = 0;
            while i < mtf.len() && mtf[i] == 0 {
                zeros += 1;
                i += 1;
            }
            emit_zero_len(zeros, |s| len_freqs[s as usize] += 1);
            while i < mtf.len() {
                sym_freqs[mtf[i] as usize] += 1;
                i += 1;
                zeros = 0;
                while i < mtf.len() && mtf[i] == 0 {
                    zeros += 1;
                    i += 1;
                }
                emit_zero_len(zeros, |s| len_freqs[s as usize] += 1);
            }
            if sym_freqs.iter().all(|&f| f == 0) {
                // all-zero MTF stream; keep the table non-degenerate
                sym_freqs[1] = 1;
            }
            let sym_code = HuffmanCode::build(&sym_freqs).expect("non-empty table");
            let len_code = HuffmanCode::build(&len_freqs).expect("non-empty table");

            let mut bits = BitWriter::new();
            let mut i = 0;
            let mut zeros = 0;
            while i < mtf.len() && mtf[i] == 0 {
                zeros += 1;
                i += 1;
            }
            emit_zero_len(zeros, |s| len_code.encode_symbol(&mut bits, s as u16));
            while i < mtf.len() {
                sym_code.encode_symbol(&mut bits, mtf[i] as u16);
                i += 1;
                zeros = 0;
                while i < mtf.len() && mtf[i] == 0 {
                    zeros += 1;
                    i += 1;
                }
                emit_zero_len(zeros, |s| len_code.encode_symbol(&mut bits, s as u16));
            }
            let payload = bits.finish();

            write_u32(&mut out, bwt.primary_index);
            sym_code.serialize(&mut out);
            len_code.serialize(&mut out);
            write_u32(&mut out, payload.len() as u32);
            out.extend_from_slice(&payload);
        }
        out
    }

    fn decompress(&self, stream: &[u8]) -> Result<Vec<u8>> {
        let (orig_len, mut pos) = read_header(stream, b'B')?;
        let alphabet = byte_alphabet();
        let mut out = Vec::with_capacity(orig_len);
        while out.len() < orig_len {
            let block_len = (orig_len - out.len()).min(self.block_size);
            let primary_index = read_u32(stream, &mut pos)?;
            let sym_code = HuffmanCode::deserialize(stream, &mut pos)?;
            let len_code = HuffmanCode::deserialize(stream, &mut pos)?;
            let payload_len = read_u32(stream, &mut pos)? as usize;
            let payload = stream
                .get(pos..pos + payload_len)
                .ok_or_else(|| CompressError::Corrupt("truncated block payload".into()))?;
            pos += payload_len;

            let mut bits = BitReader::new(payload);
            let mut mtf = Vec::with_capacity(block_len);
            let read_zero_run = |bits: &mut BitReader, mtf: &mut Vec<u8>| -> Result<()> {
                loop {
                    let s = len_code.decode_symbol(bits)?;
                    if mtf.len() + s as usize > block_len {
                        return Err(CompressError::Corrupt("zero run overflows block".into()));
                    }
                    mtf.resize(mtf.len() + s as usize, 0);
                    if s < 255 {
                        return Ok(());
                    }
                }
            };
            read_zero_run(&mut bits, &mut mtf)?;
            while mtf.len() < block_len {
                mtf.push(sym_code.decode_symbol(&mut bits)? as u8);
                read_zero_run(&mut bits, &mut mtf)?;
            }
            let transformed = mtf_decode(&mtf, &alphabet)?;
            let block = bwt_inverse(&BwtBlock { transformed, primary_index })?;
            out.extend_from_slice(&block);
        }
        if out.len() != orig_len {
            return Err(CompressError::Corrupt("block sizes disagree with header".into()));
        }
        Ok(out)
    }
}

// --------------------------------------------------------------- ppm ----

/// Order-k PPM over the arithmetic coder.
pub struct PpmBackend {
    order: usize,
}

impl Default for PpmBackend {
    fn default() -> Self {
        Self { order: 3 }
    }
}

impl PpmBackend {
    pub fn new(order: usize) -> Result<Self> {
        if order > super::ppm::MAX_ORDER {
            return Err(CompressError::BadParameter(format!("PPM order {order} too large")));
        }
        Ok(Self { order })
    }
}

impl Backend for PpmBackend {
    fn name(&self) -> &'static str {
        "ppm"
    }

    fn config_id(&self) -> String {
        format!("ppm:k{}", self.order)
    }

    fn compress(&self, data: &[u8]) -> Vec<u8> {
        let mut out = Vec::new();
        write_header(&mut out, b'P', data.len());
        out.push(self.order as u8);
        if !data.is_empty() {
            out.extend_from_slice(&ppm_compress(data, self.order).expect("validated order"));
        }
        out
    }

    fn decompress(&self, stream: &[u8]) -> Result<Vec<u8>> {
        let (orig_len, pos) = read_header(stream, b'P')?;
        let order = *stream
            .get(pos)
            .ok_or_else(|| CompressError::Corrupt("truncated stream".into()))? as usize;
        ppm_decompress(&stream[pos + 1..], orig_len, order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn backends() -> Vec<Box<dyn Backend>> {
        vec![
            Box::new(LzBackend::default()),
            Box::new(BwBackend::default()),
            Box::new(PpmBackend::default()),
        ]
    }

    #[test]
    fn empty_input_is_header_only() {
        for b in backends() {
            let a = b.compress(b"");
            let c = b.compress(b"");
            assert_eq!(a, c, "{} not deterministic", b.name());
            assert!(a.len() <= 9, "{} empty stream too large", b.name());
            assert_eq!(b.decompress(&a).unwrap(), b"");
        }
    }

    #[test]
    fn roundtrip_text_all_backends() {
        let data = b"the-abbess-and-the-abbot-are-in-the-abbey ".repeat(40);
        for b in backends() {
            let stream = b.compress(&data);
            assert_eq!(b.decompress(&stream).unwrap(), data, "{}", b.name());
            assert_eq!(b.compressed_len(&data), stream.len());
        }
    }

    #[test]
    fn repetitive_input_shrinks() {
        let data = vec![b'a'; 64 * 1024];
        for b in backends() {
            let len = b.compressed_len(&data);
            // The lz pipeline pays one token per 64-byte look-ahead, so only
            // the block pipeline gets under a kilobyte here.
            let bound = if b.name() == "bw" { 1024 } else { 4096 };
            assert!(len < bound, "{} produced {len} bytes for 64 KB run", b.name());
        }
    }

    #[test]
    fn wrong_tag_rejected() {
        let lz = LzBackend::default();
        let bw = BwBackend::default();
        let stream = lz.compress(b"hello world");
        assert!(bw.decompress(&stream).is_err());
    }

    #[test]
    fn multi_block_bw() {
        let bw = BwBackend::new(1024);
        let data: Vec<u8> = (0..5000u32).flat_map(|i| i.to_le_bytes()).collect();
        let stream = bw.compress(&data);
        assert_eq!(bw.decompress(&stream).unwrap(), data);
    }

    #[test]
    fn unknown_backend_name() {
        assert!(backend_by_name("gzip").is_err());
        for name in ["lz", "bw", "ppm"] {
            assert_eq!(backend_by_name(name).unwrap().name(), name);
        }
    }
}
