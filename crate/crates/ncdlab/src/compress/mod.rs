//! From-scratch lossless codecs and their stage primitives.
//!
//! Three pipelines implement the [`Backend`] trait:
//!
//! * `lz` — LZ77 tokens entropy-coded with per-field Huffman tables,
//! * `bw` — block pipeline BWT → MTF → RLE → Huffman,
//! * `ppm` — order-k PPM (method C escapes) over an arithmetic coder.
//!
//! Every stream starts with a 4-byte magic (3 tag bytes + format version)
//! followed by the original length, so `compressed_len` counts real,
//! decodable bytes.

mod arith;
mod backend;
mod bits;
pub mod bwt;
pub mod calgary;
pub mod huffman;
pub mod lz77;
pub mod mtf;
pub mod ppm;
pub mod rle;

pub use backend::{backend_by_name, Backend, BwBackend, LzBackend, PpmBackend};
pub use bits::{BitReader, BitWriter};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CompressError {
    #[error("empty input where a non-empty block is required")]
    EmptyInput,
    #[error("empty frequency map")]
    EmptyFrequencies,
    #[error("symbol {symbol:#04x} at offset {offset} is not in the alphabet")]
    SymbolOutsideAlphabet { symbol: u8, offset: usize },
    #[error("corrupt stream: {0}")]
    Corrupt(String),
    #[error("unsupported parameter: {0}")]
    BadParameter(String),
}

pub type Result<T> = std::result::Result<T, CompressError>;
