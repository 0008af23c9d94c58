//! Byte-stuffed run-length encoding.
//!
//! Runs of three or more identical bytes become `(MARKER, count, byte)`
//! triples (count 1..=255, longer runs split); shorter runs are emitted
//! literally. The marker byte itself is always encoded as a triple, whatever
//! its run length, so every literal byte in the stream is unambiguous.

use super::{CompressError, Result};

pub const MARKER: u8 = 0xFE;
const MIN_RUN: usize = 3;

pub fn rle_encode(data: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(data.len());
    let mut i = 0;
    while i < data.len() {
        let b = data[i];
        let mut run = 1;
        while i + run < data.len() && data[i + run] == b {
            run += 1;
        }
        if run >= MIN_RUN || b == MARKER {
            let mut left = run;
            while left > 0 {
                let chunk = left.min(255);
                out.push(MARKER);
                out.push(chunk as u8);
                out.push(b);
                left -= chunk;
            }
        } else {
            out.extend(std::iter::repeat(b).take(run));
        }
        i += run;
    }
    out
}

pub fn rle_decode(data: &[u8]) -> Result<Vec<u8>> {
    let mut out = Vec::with_capacity(data.len());
    let mut i = 0;
    while i < data.len() {
        if data[i] == MARKER {
            if i + 2 >= data.len() {
                return Err(CompressError::Corrupt("truncated RLE triple".into()));
            }
            let count = data[i + 1];
            if count == 0 {
                return Err(CompressError::Corrupt("zero-length RLE run".into()));
            }
            out.extend(std::iter::repeat(data[i + 2]).take(count as usize));
            i += 3;
        } else {
            out.push(data[i]);
            i += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_runs_stay_literal() {
        assert_eq!(rle_encode(b"aaaabb"), [MARKER, 4, b'a', b'b', b'b']);
        assert_eq!(rle_encode(b"aaab"), [MARKER, 3, b'a', b'b']);
    }

    #[test]
    fn empty_input() {
        assert_eq!(rle_encode(b""), b"");
        assert_eq!(rle_decode(b"").unwrap(), b"");
    }

    #[test]
    fn marker_byte_is_escaped() {
        let data = [1, MARKER, 2];
        let enc = rle_encode(&data);
        assert_eq!(enc, [1, MARKER, 1, MARKER, 2]);
        assert_eq!(rle_decode(&enc).unwrap(), data);
    }

    #[test]
    fn long_run_splits() {
        let data = vec![7u8; 700];
        let enc = rle_encode(&data);
        assert_eq!(enc, [MARKER, 255, 7, MARKER, 255, 7, MARKER, 190, 7]);
        assert_eq!(rle_decode(&enc).unwrap(), data);
    }

    #[test]
    fn truncated_stream_errors() {
        assert!(rle_decode(&[MARKER, 5]).is_err());
        assert!(rle_decode(&[MARKER]).is_err());
    }
}
