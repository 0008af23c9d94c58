//! Binary-renormalizing arithmetic coder (32-bit registers, pending-bit
//! carry handling). Frequencies are cumulative integer counts; totals must
//! stay below 2^30 so the interval never underflows.

use super::bits::{BitReader, BitWriter};

const BITS: u32 = 32;
const TOP: u64 = 1 << BITS;
const HALF: u64 = TOP / 2;
const QUARTER: u64 = TOP / 4;
const THREE_QUARTERS: u64 = 3 * QUARTER;

pub struct ArithEncoder {
    low: u64,
    high: u64,
    pending: u64,
    out: BitWriter,
}

impl ArithEncoder {
    pub fn new() -> Self {
        Self { low: 0, high: TOP - 1, pending: 0, out: BitWriter::new() }
    }

    pub fn encode(&mut self, cum: u64, freq: u64, total: u64) {
        debug_assert!(freq > 0 && cum + freq <= total && total < 1 << 30);
        let span = self.high - self.low + 1;
        self.high = self.low + span * (cum + freq) / total - 1;
        self.low += span * cum / total;
        loop {
            if self.high < HALF {
                self.emit(false);
            } else if self.low >= HALF {
                self.emit(true);
                self.low -= HALF;
                self.high -= HALF;
            } else if self.low >= QUARTER && self.high < THREE_QUARTERS {
                self.pending += 1;
                self.low -= QUARTER;
                self.high -= QUARTER;
            } else {
                break;
            }
            self.low <<= 1;
            self.high = (self.high << 1) | 1;
        }
    }

    fn emit(&mut self, bit: bool) {
        self.out.push_bit(bit);
        for _ in 0..self.pending {
            self.out.push_bit(!bit);
        }
        self.pending = 0;
    }

    pub fn finish(mut self) -> Vec<u8> {
        self.pending += 1;
        if self.low < QUARTER {
            self.emit(false);
        } else {
            self.emit(true);
        }
        self.out.finish()
    }
}

pub struct ArithDecoder<'a> {
    low: u64,
    high: u64,
    value: u64,
    input: BitReader<'a>,
}

impl<'a> ArithDecoder<'a> {
    pub fn new(data: &'a [u8]) -> Self {
        let mut input = BitReader::new(data);
        let mut value = 0u64;
        for _ in 0..BITS {
            value = (value << 1) | input.read_bit_padded() as u64;
        }
        Self { low: 0, high: TOP - 1, value, input }
    }

    /// Cumulative count the next symbol's interval must contain.
    pub fn decode_target(&self, total: u64) -> u64 {
        let span = self.high - self.low + 1;
        (((self.value - self.low + 1) * total - 1) / span).min(total - 1)
    }

    /// Consumes the symbol whose interval is `[cum, cum + freq)`.
    pub fn consume(&mut self, cum: u64, freq: u64, total: u64) {
        let span = self.high - self.low + 1;
        self.high = self.low + span * (cum + freq) / total - 1;
        self.low += span * cum / total;
        loop {
            if self.high < HALF {
                // nothing
            } else if self.low >= HALF {
                self.low -= HALF;
                self.high -= HALF;
                self.value -= HALF;
            } else if self.low >= QUARTER && self.high < THREE_QUARTERS {
                self.low -= QUARTER;
                self.high -= QUARTER;
                self.value -= QUARTER;
            } else {
                break;
            }
            self.low <<= 1;
            self.high = (self.high << 1) | 1;
            self.value = (self.value << 1) | self.input.read_bit_padded() as u64;
        }
    }
}
