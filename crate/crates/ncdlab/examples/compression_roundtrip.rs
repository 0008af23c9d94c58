//! Tour of the codec stages and the three backends: run each transform on a
//! small input, show what it produces, and check every backend round-trips.

use ncdlab::compress::bwt::{bwt_forward, bwt_inverse};
use ncdlab::compress::lz77::{lz77_decode, lz77_encode, Lz77Config};
use ncdlab::compress::mtf::{mtf_decode, mtf_encode};
use ncdlab::compress::ppm::ppm_estimate_bits;
use ncdlab::compress::rle::{rle_decode, rle_encode};
use ncdlab::compress::{backend_by_name, huffman::HuffmanCode};

fn main() -> anyhow::Result<()> {
    // BWT groups similar contexts together...
    let block = bwt_forward(b"sentence")?;
    println!("bwt(\"sentence\") = {:?} (row {})", String::from_utf8_lossy(&block.transformed), block.primary_index);
    assert_eq!(bwt_inverse(&block)?, b"sentence");

    // ...which MTF turns into small indices...
    let alphabet: Vec<u8> = (b'a'..=b'z').collect();
    let indices = mtf_encode(b"pebblepebble", &alphabet)?;
    println!("mtf(\"pebblepebble\") = {indices:?}");
    assert_eq!(mtf_decode(&indices, &alphabet)?, b"pebblepebble");

    // ...RLE collapses the runs...
    let encoded = rle_encode(b"aaaaabbbc");
    println!("rle(\"aaaaabbbc\") = {} bytes (from 9)", encoded.len());
    assert_eq!(rle_decode(&encoded)?, b"aaaaabbbc");

    // ...and Huffman assigns short codes to frequent symbols.
    let mut freqs = vec![0u64; 256];
    for &b in b"pebblepebble" {
        freqs[b as usize] += 1;
    }
    let code = HuffmanCode::build(&freqs)?;
    println!("huffman weighted length: {} bits", code.weighted_length(&freqs));

    // LZ77 factors text into back-references.
    let tokens = lz77_encode(b"the-abbess-and-the-abbot-are-in-the-abbey", Lz77Config::default())?;
    println!("lz77 example: {} tokens, last = {:?}", tokens.len(), tokens.last().unwrap());
    assert_eq!(
        lz77_decode(&tokens)?,
        b"the-abbess-and-the-abbot-are-in-the-abbey"
    );

    // PPM predicts the next byte from bounded contexts.
    let text = ncdlab::synth::text(1, 4096, &ncdlab::synth::shared_vocabulary(200, 1), &[], 0.0);
    println!("ppm order-3 estimate: {:.0} bits for {} bytes", ppm_estimate_bits(text.as_bytes(), 3)?, text.len());

    // The assembled backends compress and decompress losslessly.
    for name in ["lz", "bw", "ppm"] {
        let backend = backend_by_name(name)?;
        let stream = backend.compress(text.as_bytes());
        assert_eq!(backend.decompress(&stream)?, text.as_bytes());
        println!(
            "{name}: {} -> {} bytes ({:.3} bpb)",
            text.len(),
            stream.len(),
            8.0 * stream.len() as f64 / text.len() as f64
        );
    }
    Ok(())
}
