//! Minimal Netpbm grayscale reader (P1, P2, P5) and PGM writer.
//! https://netpbm.sourceforge.net/doc/

use crate::error::{Error, Result};

/// Single-channel image, row-major. Bitmaps (P1) are stored with maxval 1 and
/// black as 0, so "dark" means "low" for every format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RasterImage {
    width: usize,
    height: usize,
    maxval: u16,
    samples: Vec<u16>,
}

impl RasterImage {
    pub fn new(width: usize, height: usize, maxval: u16, samples: Vec<u16>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Decode(format!("image must be non-empty, got {width}x{height}")));
        }
        if maxval == 0 {
            return Err(Error::Decode("maxval must be at least 1".into()));
        }
        if samples.len() != width * height {
            return Err(Error::Decode(format!(
                "expected {} samples for {width}x{height}, got {}",
                width * height,
                samples.len()
            )));
        }
        if let Some(bad) = samples.iter().find(|&&s| s > maxval) {
            return Err(Error::Decode(format!("sample {bad} exceeds maxval {maxval}")));
        }
        Ok(RasterImage {
            width,
            height,
            maxval,
            samples,
        })
    }

    /// A `width` x `height` image filled with `value`.
    pub fn filled(width: usize, height: usize, maxval: u16, value: u16) -> Result<Self> {
        RasterImage::new(width, height, maxval, vec![value; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn maxval(&self) -> u16 {
        self.maxval
    }

    pub fn samples(&self) -> &[u16] {
        &self.samples
    }

    pub fn get(&self, x: usize, y: usize) -> u16 {
        self.samples[y * self.width + x]
    }

    /// Sets every pixel of the inclusive rectangle `(x0, y0)-(x1, y1)`.
    pub fn fill_rect(&mut self, x0: usize, y0: usize, x1: usize, y1: usize, value: u16) {
        let value = value.min(self.maxval);
        for y in y0..=y1.min(self.height - 1) {
            for x in x0..=x1.min(self.width - 1) {
                self.samples[y * self.width + x] = value;
            }
        }
    }
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_whitespace_and_comments(&mut self) {
        while let Some(&b) = self.data.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.data.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.data.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Decode(format!("expected {what} at byte {start}")));
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Decode(format!("{what} out of range at byte {start}")))
    }

    /// One P1 sample. P1 allows digits with or without separating whitespace.
    fn bit(&mut self) -> Result<u16> {
        self.skip_whitespace_and_comments();
        match self.data.get(self.pos) {
            Some(b'0') => {
                self.pos += 1;
                Ok(0)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(1)
            }
            Some(&other) => Err(Error::Decode(format!("invalid P1 sample {:?}", other as char))),
            None => Err(Error::Decode("truncated P1 pixel data".into())),
        }
    }
}

/// Decodes a P1, P2 or P5 file.
pub fn decode(data: &[u8]) -> Result<RasterImage> {
    if data.len() < 2 || data[0] != b'P' {
        return Err(Error::Decode("missing Netpbm magic number".into()));
    }
    let kind = data[1];
    let mut cur = Cursor { data, pos: 2 };
    let width = cur.number("width")? as usize;
    let height = cur.number("height")? as usize;
    if width == 0 || height == 0 {
        return Err(Error::Decode(format!("image must be non-empty, got {width}x{height}")));
    }
    let count = width
        .checked_mul(height)
        .ok_or_else(|| Error::Decode("image dimensions overflow".into()))?;

    match kind {
        b'1' => {
            let mut samples = Vec::with_capacity(count);
            for _ in 0..count {
                // 1 is black in a bitmap; flip so that black is the low intensity.
                samples.push(1 - cur.bit()?);
            }
            RasterImage::new(width, height, 1, samples)
        }
        b'2' => {
            let maxval = read_maxval(&mut cur)?;
            let mut samples = Vec::with_capacity(count);
            for _ in 0..count {
                let v = cur
                    .number("sample")
                    .map_err(|_| Error::Decode("truncated or invalid P2 pixel data".into()))?;
                samples.push(u16::try_from(v).map_err(|_| Error::Decode(format!("sample {v} out of range")))?);
            }
            RasterImage::new(width, height, maxval, samples)
        }
        b'5' => {
            let maxval = read_maxval(&mut cur)?;
            // Exactly one whitespace byte separates the header from the raster.
            match data.get(cur.pos) {
                Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
                _ => return Err(Error::Decode("missing whitespace before P5 raster".into())),
            }
            let raster = &data[cur.pos..];
            let samples: Vec<u16> = if maxval < 256 {
                if raster.len() < count {
                    return Err(Error::Decode(format!(
                        "P5 raster has {} bytes, need {count}",
                        raster.len()
                    )));
                }
                raster[..count].iter().map(|&b| u16::from(b)).collect()
            } else {
                if raster.len() < 2 * count {
                    return Err(Error::Decode(format!(
                        "P5 raster has {} bytes, need {}",
                        raster.len(),
                        2 * count
                    )));
                }
                raster[..2 * count]
                    .chunks_exact(2)
                    .map(|c| u16::from_be_bytes([c[0], c[1]]))
                    .collect()
            };
            RasterImage::new(width, height, maxval, samples)
        }
        other => Err(Error::Decode(format!("unsupported Netpbm format P{}", other as char))),
    }
}

fn read_maxval(cur: &mut Cursor<'_>) -> Result<u16> {
    let maxval = cur.number("maxval")?;
    if !(1..=65535).contains(&maxval) {
        return Err(Error::Decode(format!("maxval {maxval} outside 1..=65535")));
    }
    Ok(maxval as u16)
}

/// Encodes as PGM: P5 when `binary`, P2 otherwise.
pub fn encode_pgm(image: &RasterImage, binary: bool) -> Vec<u8> {
    let mut out = format!(
        "{}\n{} {}\n{}\n",
        if binary { "P5" } else { "P2" },
        image.width,
        image.height,
        image.maxval
    )
    .into_bytes();
    if binary {
        for &s in &image.samples {
            if image.maxval < 256 {
                out.push(s as u8);
            } else {
                out.extend_from_slice(&s.to_be_bytes());
            }
        }
    } else {
        for row in image.samples.chunks(image.width) {
            let line: Vec<String> = row.iter().map(u16::to_string).collect();
            out.extend_from_slice(line.join(" ").as_bytes());
            out.push(b'\n');
        }
    }
    out
}
