//! Move-To-Front transform over an explicit alphabet.

use super::{CompressError, Result};

/// Encodes `data` as positions in an evolving recency list that starts as
/// `alphabet` and moves each coded symbol to the front.
pub fn mtf_encode(data: &[u8], alphabet: &[u8]) -> Result<Vec<u8>> {
    let mut list = alphabet.to_vec();
    let mut out = Vec::with_capacity(data.len());
    for (offset, &b) in data.iter().enumerate() {
        let pos = list
            .iter()
            .position(|&s| s == b)
            .ok_or(CompressError::SymbolOutsideAlphabet { symbol: b, offset })?;
        out.push(pos as u8);
        let sym = list.remove(pos);
        list.insert(0, sym);
    }
    Ok(out)
}

pub fn mtf_decode(indices: &[u8], alphabet: &[u8]) -> Result<Vec<u8>> {
    let mut list = alphabet.to_vec();
    let mut out = Vec::with_capacity(indices.len());
    for (offset, &i) in indices.iter().enumerate() {
        if i as usize >= list.len() {
            return Err(CompressError::Corrupt(format!(
                "MTF index {i} out of range at offset {offset}"
            )));
        }
        let sym = list.remove(i as usize);
        out.push(sym);
        list.insert(0, sym);
    }
    Ok(out)
}

/// The full byte alphabet 0..=255 in order, as used by the block pipeline.
pub fn byte_alphabet() -> Vec<u8> {
    (0..=255).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lowercase() -> Vec<u8> {
        (b'a'..=b'z').collect()
    }

    #[test]
    fn pebble_vector() {
        let out = mtf_encode(b"pebblepebble", &lowercase()).unwrap();
        assert_eq!(out, [15, 5, 3, 0, 12, 2, 3, 1, 3, 0, 3, 2]);
    }

    #[test]
    fn run_stays_at_front() {
        assert_eq!(mtf_encode(b"aaaa", &lowercase()).unwrap(), [0, 0, 0, 0]);
    }

    #[test]
    fn symbol_outside_alphabet_reports_offset() {
        let err = mtf_encode(b"ab!", &lowercase()).unwrap_err();
        match err {
            CompressError::SymbolOutsideAlphabet { symbol, offset } => {
                assert_eq!((symbol, offset), (b'!', 2));
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn roundtrip() {
        let alphabet = byte_alphabet();
        let data: Vec<u8> = (0..2048u32).map(|i| (i * 31 % 251) as u8).collect();
        let enc = mtf_encode(&data, &alphabet).unwrap();
        assert_eq!(mtf_decode(&enc, &alphabet).unwrap(), data);
    }
}
