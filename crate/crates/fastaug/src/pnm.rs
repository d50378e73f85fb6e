//! Binary PNM (P5/P6) reading and writing.
//!
//! PNM is the one mandatory interchange format: it is bit-exact, has no
//! compression ambiguity, and lets tests and the benchmark CLI run
//! without external decoders. Only `maxval = 255` rasters are accepted.
//!
//! The emitted header is exactly `"P6\n{w} {h}\n255\n"` (or `P5`),
//! followed by the raw samples, so `decode(encode(x)) == x` byte for
//! byte.

use crate::error::{Error, Result};
use crate::image::{ImageBuffer, MaskBuffer};
use std::path::Path;

/// Raster kind from the magic number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PnmMagic {
    /// `P5`: binary graymap, one channel.
    P5,
    /// `P6`: binary pixmap, three channels.
    P6,
}

/// Parsed PNM header. `P6` implies a 3-channel image, `P5` a 1-channel
/// mask/graymap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PnmHeader {
    pub magic: PnmMagic,
    pub width: u32,
    pub height: u32,
    pub maxval: u32,
}

/// A decoded PNM raster.
#[derive(Debug, Clone, PartialEq)]
pub enum PnmImage {
    /// From a `P6` pixmap.
    Rgb(ImageBuffer),
    /// From a `P5` graymap.
    Gray(MaskBuffer),
}

impl PnmImage {
    /// The raster as an [`ImageBuffer`] (grays become 1-channel images).
    pub fn into_image(self) -> ImageBuffer {
        match self {
            PnmImage::Rgb(img) => img,
            PnmImage::Gray(mask) => mask.to_image(),
        }
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::PnmParse {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    /// Skip whitespace and `#` comments (which run to end of line).
    fn skip_separators(&mut self) {
        while let Some(b) = self.peek() {
            match b {
                b' ' | b'\t' | b'\r' | b'\n' | 0x0b | 0x0c => self.pos += 1,
                b'#' => {
                    while let Some(c) = self.peek() {
                        self.pos += 1;
                        if c == b'\n' {
                            break;
                        }
                    }
                }
                _ => break,
            }
        }
    }

    fn read_decimal(&mut self, what: &str) -> Result<u32> {
        self.skip_separators();
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(b) = self.peek() {
            if b.is_ascii_digit() {
                value = value * 10 + (b - b'0') as u64;
                if value > u32::MAX as u64 {
                    return Err(self.err(format!("{what} out of range")));
                }
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.pos == start {
            return Err(self.err(format!("expected decimal {what}")));
        }
        Ok(value as u32)
    }
}

/// Parse just the header, leaving `pos` at the first raster byte.
fn parse_header(cur: &mut Cursor) -> Result<PnmHeader> {
    let magic = match (cur.peek(), cur.bytes.get(cur.pos + 1).copied()) {
        (Some(b'P'), Some(b'5')) => PnmMagic::P5,
        (Some(b'P'), Some(b'6')) => PnmMagic::P6,
        _ => return Err(cur.err("expected P5 or P6 magic")),
    };
    cur.pos += 2;
    let width = cur.read_decimal("width")?;
    let height = cur.read_decimal("height")?;
    let maxval = cur.read_decimal("maxval")?;
    if width == 0 || height == 0 {
        return Err(cur.err(format!("zero dimension {width}x{height}")));
    }
    // Exactly one whitespace byte separates the header from the raster.
    match cur.peek() {
        Some(b' ' | b'\t' | b'\r' | b'\n') => cur.pos += 1,
        _ => return Err(cur.err("expected single whitespace before raster")),
    }
    Ok(PnmHeader {
        magic,
        width,
        height,
        maxval,
    })
}

/// Parse only the header of a binary PNM document.
pub fn read_header(bytes: &[u8]) -> Result<PnmHeader> {
    let mut cur = Cursor { bytes, pos: 0 };
    parse_header(&mut cur)
}

/// Decode a binary PNM document.
pub fn decode(bytes: &[u8]) -> Result<PnmImage> {
    let mut cur = Cursor { bytes, pos: 0 };
    let header = parse_header(&mut cur)?;
    if header.maxval != 255 {
        return Err(Error::PnmUnsupported(format!(
            "maxval {} (only 255 is supported)",
            header.maxval
        )));
    }
    let channels = match header.magic {
        PnmMagic::P5 => 1usize,
        PnmMagic::P6 => 3usize,
    };
    let expected = header.width as usize * header.height as usize * channels;
    let payload = &bytes[cur.pos..];
    if payload.len() < expected {
        return Err(Error::PnmTruncated {
            expected,
            found: payload.len(),
        });
    }
    let data = payload[..expected].to_vec();
    Ok(match header.magic {
        PnmMagic::P5 => PnmImage::Gray(MaskBuffer::new(header.width, header.height, data)?),
        PnmMagic::P6 => PnmImage::Rgb(ImageBuffer::new(header.width, header.height, 3, data)?),
    })
}

/// Encode an image as binary PNM: `P6` for 3 channels, `P5` for 1.
pub fn encode_image(img: &ImageBuffer) -> Vec<u8> {
    let magic = if img.channels() == 3 { "P6" } else { "P5" };
    let mut out = format!("{magic}\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.data());
    out
}

/// Encode a mask as binary PGM (`P5`).
pub fn encode_mask(mask: &MaskBuffer) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", mask.width(), mask.height()).into_bytes();
    out.extend_from_slice(mask.data());
    out
}

/// Read and decode a PNM file.
pub fn load(path: impl AsRef<Path>) -> Result<PnmImage> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    decode(&bytes)
}

/// Encode and write an image to a PNM file.
pub fn save(path: impl AsRef<Path>, img: &ImageBuffer) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, encode_image(img)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;

    #[test]
    fn single_gray_sample() {
        let decoded = decode(b"P5 1 1 255\n\x7f").unwrap();
        match decoded {
            PnmImage::Gray(m) => {
                assert_eq!((m.width(), m.height()), (1, 1));
                assert_eq!(m.data(), &[127]);
            }
            _ => panic!("expected gray raster"),
        }
    }

    #[test]
    fn two_pixel_rgb_row() {
        let decoded = decode(b"P6 2 1 255\n\xff\x00\x00\x00\xff\x00").unwrap();
        match decoded {
            PnmImage::Rgb(img) => {
                assert_eq!((img.width(), img.height()), (2, 1));
                assert_eq!(img.data(), &[255, 0, 0, 0, 255, 0]);
            }
            _ => panic!("expected rgb raster"),
        }
    }

    #[test]
    fn sixteen_bit_maxval_is_unsupported() {
        let err = decode(b"P5 1 1 65535\n\x00\x00").unwrap_err();
        assert!(matches!(err, Error::PnmUnsupported(_)), "{err}");
    }

    #[test]
    fn truncated_payload_is_reported() {
        let err = decode(b"P6 2 2 255\n\x01\x02").unwrap_err();
        match err {
            Error::PnmTruncated { expected, found } => {
                assert_eq!(expected, 12);
                assert_eq!(found, 2);
            }
            other => panic!("expected truncation error, got {other}"),
        }
    }

    #[test]
    fn malformed_header_reports_offset() {
        let err = decode(b"P7 1 1 255\n\x00").unwrap_err();
        match err {
            Error::PnmParse { offset, .. } => assert_eq!(offset, 0),
            other => panic!("expected parse error, got {other}"),
        }
        let err = decode(b"P5 abc").unwrap_err();
        match err {
            Error::PnmParse { offset, .. } => assert_eq!(offset, 3),
            other => panic!("expected parse error, got {other}"),
        }
    }

    #[test]
    fn header_parses_standalone() {
        let header = read_header(b"P6 640 480 255\n").unwrap();
        assert_eq!(
            header,
            PnmHeader {
                magic: PnmMagic::P6,
                width: 640,
                height: 480,
                maxval: 255
            }
        );
    }

    #[test]
    fn comments_in_header_are_skipped() {
        let decoded = decode(b"P5 # a comment\n1 # another\n1 255\n\x2a").unwrap();
        match decoded {
            PnmImage::Gray(m) => assert_eq!(m.data(), &[42]),
            _ => panic!("expected gray raster"),
        }
    }

    #[test]
    fn mask_header_is_exact() {
        let m = MaskBuffer::new(1, 1, vec![0]).unwrap();
        assert_eq!(encode_mask(&m), b"P5\n1 1\n255\n\x00");
    }

    #[test]
    fn rgb_payload_is_exact() {
        let img = ImageBuffer::new(2, 1, 3, vec![255, 0, 0, 0, 255, 0]).unwrap();
        let bytes = encode_image(&img);
        assert_eq!(&bytes[..11], b"P6\n2 1\n255\n");
        assert_eq!(&bytes[11..], &[255, 0, 0, 0, 255, 0]);
    }

    #[test]
    fn random_images_round_trip() {
        let mut rng = RngStream::new(0x9A7);
        for case in 0..200 {
            let w = 1 + (rng.uniform_int(24)) as u32;
            let h = 1 + (rng.uniform_int(24)) as u32;
            if case % 2 == 0 {
                let data: Vec<u8> = (0..w as usize * h as usize * 3)
                    .map(|_| rng.next_u64() as u8)
                    .collect();
                let img = ImageBuffer::new(w, h, 3, data).unwrap();
                match decode(&encode_image(&img)).unwrap() {
                    PnmImage::Rgb(back) => assert_eq!(back, img),
                    _ => panic!("expected rgb raster"),
                }
            } else {
                let data: Vec<u8> = (0..w as usize * h as usize)
                    .map(|_| rng.next_u64() as u8)
                    .collect();
                let mask = MaskBuffer::new(w, h, data).unwrap();
                match decode(&encode_mask(&mask)).unwrap() {
                    PnmImage::Gray(back) => assert_eq!(back, mask),
                    _ => panic!("expected gray raster"),
                }
            }
        }
    }
}
