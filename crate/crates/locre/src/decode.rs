//! Strict UTF-8 decoding into BMP code units.

use crate::error::Error;

/// Decoded input: one `u16` per character plus the byte offset of each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subject {
    pub units: Vec<u16>,
    /// `byte_offsets[i]` is where character `i` starts; the last entry is the input length.
    pub byte_offsets: Vec<usize>,
}

impl Subject {
    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn byte_offset(&self, pos: usize) -> usize {
        self.byte_offsets[pos]
    }

    pub fn text(&self, start: usize, end: usize) -> String {
        String::from_utf16_lossy(&self.units[start..end])
    }
}

pub fn decode(bytes: &[u8]) -> Result<Subject, Error> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::InvalidUtf8 { offset: e.valid_up_to() })?;
    decode_str(text)
}

pub fn decode_str(text: &str) -> Result<Subject, Error> {
    let mut units = Vec::with_capacity(text.len());
    let mut byte_offsets = Vec::with_capacity(text.len() + 1);
    for (offset, c) in text.char_indices() {
        let code = c as u32;
        let u = u16::try_from(code).map_err(|_| Error::NonBmp { offset, code })?;
        units.push(u);
        byte_offsets.push(offset);
    }
    byte_offsets.push(text.len());
    Ok(Subject { units, byte_offsets })
}
