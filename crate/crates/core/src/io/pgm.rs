//! Netpbm graymaps: P2 (ASCII) and P5 (binary), 8- or 16-bit.
//!
//! Loading normalizes samples to `[0, 1]` by dividing by `maxval`. Saving
//! clips to `[0, 1]` and quantizes with round-half-up, always as P5.

use std::path::Path;

use crate::error::{Error, Result};
use crate::image::GrayImage;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgmBits {
    Eight,
    Sixteen,
}

impl PgmBits {
    pub fn maxval(self) -> u32 {
        match self {
            PgmBits::Eight => 255,
            PgmBits::Sixteen => 65535,
        }
    }

    pub fn from_bits(bits: u8) -> Result<Self> {
        match bits {
            8 => Ok(PgmBits::Eight),
            16 => Ok(PgmBits::Sixteen),
            _ => Err(Error::param(format!("PGM depth must be 8 or 16 bits, got {bits}"))),
        }
    }
}

fn err(offset: usize, message: impl Into<String>) -> Error {
    Error::Pgm {
        offset,
        message: message.into(),
    }
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    /// Skips whitespace and `#` comments.
    fn skip_ws(&mut self) {
        while let Some(&b) = self.data.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.data.get(self.pos) {
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    /// Next decimal token and its byte offset.
    fn number(&mut self, what: &str) -> Result<(u32, usize)> {
        self.skip_ws();
        let start = self.pos;
        while self.data.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.data.get(self.pos) {
                None => err(start, format!("truncated: expected {what}")),
                Some(&b) => err(start, format!("expected {what}, found byte 0x{b:02x}")),
            });
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .expect("ASCII digits")
            .parse::<u32>()
            .map(|v| (v, start))
            .map_err(|_| err(start, format!("{what} out of range")))
    }
}

/// Parses a P2 or P5 graymap.
pub fn decode_pgm(data: &[u8]) -> Result<GrayImage> {
    let binary = match data.get(..2) {
        Some(b"P5") => true,
        Some(b"P2") => false,
        _ => return Err(err(0, "missing P2/P5 magic number")),
    };
    let mut cur = Cursor { data, pos: 2 };
    if !cur.data.get(2).is_some_and(|b| b.is_ascii_whitespace() || *b == b'#') {
        return Err(err(2, "expected whitespace after magic number"));
    }
    let (width, width_at) = cur.number("width")?;
    let (height, _) = cur.number("height")?;
    let (width, height) = (width as usize, height as usize);
    if width == 0 || height == 0 {
        return Err(err(width_at, format!("zero image dimension {width}x{height}")));
    }
    let (maxval, maxval_at) = cur.number("maxval")?;
    if maxval == 0 || maxval > 65535 {
        return Err(err(maxval_at, format!("maxval {maxval} outside 1..=65535")));
    }
    let count = width
        .checked_mul(height)
        .ok_or_else(|| err(width_at, "image dimensions overflow"))?;
    let scale = f64::from(maxval);
    let mut pixels = Vec::with_capacity(count);

    if binary {
        // Exactly one whitespace byte separates the header from the raster.
        if !cur.data.get(cur.pos).is_some_and(u8::is_ascii_whitespace) {
            return Err(err(cur.pos, "expected a single whitespace byte before raster data"));
        }
        cur.pos += 1;
        let bytes_per = if maxval < 256 { 1 } else { 2 };
        let raster = &data[cur.pos..];
        if raster.len() < count * bytes_per {
            return Err(err(
                data.len(),
                format!(
                    "truncated raster: need {} bytes, found {}",
                    count * bytes_per,
                    raster.len()
                ),
            ));
        }
        for i in 0..count {
            let v = if bytes_per == 1 {
                u32::from(raster[i])
            } else {
                u32::from(u16::from_be_bytes([raster[2 * i], raster[2 * i + 1]]))
            };
            if v > maxval {
                return Err(err(
                    cur.pos + i * bytes_per,
                    format!("sample {v} exceeds maxval {maxval}"),
                ));
            }
            pixels.push(f64::from(v) / scale);
        }
    } else {
        for _ in 0..count {
            let (v, at) = cur.number("pixel value")?;
            if v > maxval {
                return Err(err(at, format!("sample {v} exceeds maxval {maxval}")));
            }
            pixels.push(f64::from(v) / scale);
        }
    }
    GrayImage::new(height, width, pixels)
}

pub fn load_pgm(path: impl AsRef<Path>) -> Result<GrayImage> {
    decode_pgm(&std::fs::read(path)?)
}

/// Clip to `[0, 1]`, then `floor(v·maxval + 0.5)`.
fn quantize(v: f64, maxval: u32) -> u32 {
    let m = f64::from(maxval);
    (v.clamp(0.0, 1.0) * m + 0.5).floor().min(m) as u32
}

/// Binary P5 encoding.
pub fn encode_pgm(img: &GrayImage, bits: PgmBits) -> Vec<u8> {
    let maxval = bits.maxval();
    let mut out = format!("P5\n{} {}\n{}\n", img.width(), img.height(), maxval).into_bytes();
    for &v in img.pixels() {
        let q = quantize(v, maxval);
        match bits {
            PgmBits::Eight => out.push(q as u8),
            PgmBits::Sixteen => out.extend_from_slice(&(q as u16).to_be_bytes()),
        }
    }
    out
}

/// ASCII P2 encoding, one image row per line.
pub fn encode_pgm_ascii(img: &GrayImage, bits: PgmBits) -> Vec<u8> {
    let maxval = bits.maxval();
    let mut out = format!("P2\n{} {}\n{}\n", img.width(), img.height(), maxval);
    for r in 0..img.height() {
        let row: Vec<String> = (0..img.width())
            .map(|c| quantize(img.get(r, c), maxval).to_string())
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out.into_bytes()
}

pub fn save_pgm(img: &GrayImage, path: impl AsRef<Path>, bits: PgmBits) -> Result<()> {
    std::fs::write(path, encode_pgm(img, bits))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ascii_single_pixel() {
        let img = decode_pgm(b"P2\n1 1\n255\n255\n").unwrap();
        assert_eq!(img.pixels(), &[1.0]);
    }

    #[test]
    fn binary_normalization() {
        let mut data = b"P5\n2 2\n255\n".to_vec();
        data.extend_from_slice(&[0, 64, 128, 255]);
        let img = decode_pgm(&data).unwrap();
        assert_eq!(img.pixels(), &[0.0, 64.0 / 255.0, 128.0 / 255.0, 1.0]);
    }

    #[test]
    fn comments_are_skipped() {
        let img = decode_pgm(b"P2 # made by hand\n# another\n2 1 # dims\n10\n0 # first\n10\n").unwrap();
        assert_eq!(img.pixels(), &[0.0, 1.0]);
    }

    #[test]
    fn sixteen_bit() {
        let mut data = b"P5 1 2 65535\n".to_vec();
        data.extend_from_slice(&[0x80, 0x00, 0xff, 0xff]);
        let img = decode_pgm(&data).unwrap();
        assert_eq!(img.pixels(), &[32768.0 / 65535.0, 1.0]);
    }

    #[test]
    fn truncated_raster() {
        let mut data = b"P5\n2 2\n255\n".to_vec();
        data.extend_from_slice(&[1, 2, 3]);
        match decode_pgm(&data) {
            Err(Error::Pgm { offset, message }) => {
                assert_eq!(offset, data.len());
                assert!(message.contains("truncated"), "{message}");
            }
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_headers() {
        assert!(matches!(
            decode_pgm(b"P6\n1 1\n255\n\0"),
            Err(Error::Pgm { offset: 0, .. })
        ));
        assert!(matches!(
            decode_pgm(b"P2\n1 1\n0\n0\n"),
            Err(Error::Pgm { offset: 7, .. })
        ));
        assert!(matches!(
            decode_pgm(b"P2\nx 1\n255\n0\n"),
            Err(Error::Pgm { offset: 3, .. })
        ));
        assert!(matches!(
            decode_pgm(b"P2\n1 1\n255\n300\n"),
            Err(Error::Pgm { offset: 11, .. })
        ));
        assert!(matches!(decode_pgm(b"P2\n2 1\n255\n3"), Err(Error::Pgm { .. })));
        assert!(matches!(decode_pgm(b"P2\n1 1\n70000\n3"), Err(Error::Pgm { .. })));
    }

    #[test]
    fn half_rounds_up_and_clips() {
        let img = GrayImage::new(1, 3, vec![0.5, 1.2, -0.3]).unwrap();
        let bytes = encode_pgm(&img, PgmBits::Eight);
        assert_eq!(&bytes[bytes.len() - 3..], &[128, 255, 0]);
    }

    #[test]
    fn ascii_and_binary_agree() {
        let img = GrayImage::from_fn(3, 4, |r, c| (r * 4 + c) as f64 / 11.0);
        for bits in [PgmBits::Eight, PgmBits::Sixteen] {
            let a = decode_pgm(&encode_pgm(&img, bits)).unwrap();
            let b = decode_pgm(&encode_pgm_ascii(&img, bits)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.pgm");
        let img = GrayImage::from_fn(5, 7, |r, c| (r * 7 + c) as f64 / 34.0);
        save_pgm(&img, &path, PgmBits::Eight).unwrap();
        let back = load_pgm(&path).unwrap();
        for (a, b) in img.pixels().iter().zip(back.pixels()) {
            assert!((a - b).abs() <= 1.0 / 510.0 + 1e-15);
        }
        assert!(load_pgm(dir.path().join("missing.pgm")).is_err());
        assert!(PgmBits::from_bits(12).is_err());
    }
}
