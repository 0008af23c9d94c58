//! Compression-distance laboratory.
//!
//! The crate bundles four layers that build on each other:
//!
//! * [`compress`] — from-scratch lossless codecs (an LZ77 pipeline, a
//!   BWT/MTF/RLE/Huffman block pipeline and an order-k PPM coder) behind a
//!   uniform [`compress::Backend`] trait, plus each stage as an
//!   independently usable primitive.
//! * [`ncd`] — the normalized compression distance and NCD matrices over
//!   document sets, with compressed-length caching and parallel evaluation.
//! * [`textops`] / [`cluster`] — stop-word style text distortion driven by a
//!   corpus frequency list, dendrogram construction (neighbor joining and a
//!   quartet hill climber) and the clustering-error metric.
//! * [`search`] — window-based passage retrieval with precision@K
//!   evaluation.
//!
//! [`experiment`] ties the layers into reproducible sweeps; the `ncdlab`
//! binary is a thin wrapper over it. See the `examples/` directory for a
//! runnable tour of each capability.

pub use compress::{backend_by_name, Backend};
pub use ncd::{ncd, ncd_matrix, NcdMatrix};

pub mod cluster;
pub mod compress;
pub mod experiment;
pub mod ncd;
pub mod search;
pub mod synth;
pub mod textops;



