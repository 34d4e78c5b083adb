//! Object-model extraction: threshold, 4-connected components, bounding boxes.

use crate::error::{Error, Result};
use crate::ingest::netpbm::RasterImage;
use crate::layout::{Frame, Layout, LayoutObject};

pub const DEFAULT_MIN_AREA: u64 = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IngestOptions {
    /// Foreground cut-off; `None` means `maxval / 2`.
    pub threshold: Option<f64>,
    /// Treat bright pixels as foreground instead of dark ones.
    pub invert: bool,
    /// Components with fewer pixels are dropped.
    pub min_area: u64,
}

impl Default for IngestOptions {
    fn default() -> Self {
        IngestOptions {
            threshold: None,
            invert: false,
            min_area: DEFAULT_MIN_AREA,
        }
    }
}

/// Pixel count and inclusive bounding box of one component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Component {
    pub pixels: u64,
    pub min_x: usize,
    pub min_y: usize,
    pub max_x: usize,
    pub max_y: usize,
}

impl Component {
    pub fn to_object(&self, id: String) -> LayoutObject {
        LayoutObject::new(
            id,
            self.min_x as f64,
            self.min_y as f64,
            (self.max_x - self.min_x + 1) as f64,
            (self.max_y - self.min_y + 1) as f64,
        )
    }
}

/// Labelled components. `labels[i]` is 0 for background, otherwise the
/// 1-based index into `components`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub width: usize,
    pub height: usize,
    pub labels: Vec<u32>,
    pub components: Vec<Component>,
}

pub fn foreground_mask(image: &RasterImage, threshold: f64, invert: bool) -> Vec<bool> {
    image
        .samples()
        .iter()
        .map(|&s| {
            let s = f64::from(s);
            if invert {
                s > threshold
            } else {
                s < threshold
            }
        })
        .collect()
}

/// 4-connected labelling; components are numbered in raster-scan order of
/// their first pixel.
pub fn label_components(mask: &[bool], width: usize, height: usize) -> Components {
    assert_eq!(mask.len(), width * height, "mask size must match dimensions");
    let mut labels = vec![0u32; mask.len()];
    let mut components = Vec::new();
    let mut stack = Vec::new();

    for start in 0..mask.len() {
        if !mask[start] || labels[start] != 0 {
            continue;
        }
        let label = components.len() as u32 + 1;
        let (sx, sy) = (start % width, start / width);
        let mut comp = Component {
            pixels: 0,
            min_x: sx,
            min_y: sy,
            max_x: sx,
            max_y: sy,
        };
        labels[start] = label;
        stack.push(start);
        while let Some(idx) = stack.pop() {
            let (x, y) = (idx % width, idx / width);
            comp.pixels += 1;
            comp.min_x = comp.min_x.min(x);
            comp.max_x = comp.max_x.max(x);
            comp.min_y = comp.min_y.min(y);
            comp.max_y = comp.max_y.max(y);

            let mut visit = |n: usize| {
                if mask[n] && labels[n] == 0 {
                    labels[n] = label;
                    stack.push(n);
                }
            };
            if x > 0 {
                visit(idx - 1);
            }
            if x + 1 < width {
                visit(idx + 1);
            }
            if y > 0 {
                visit(idx - width);
            }
            if y + 1 < height {
                visit(idx + width);
            }
        }
        components.push(comp);
    }

    Components {
        width,
        height,
        labels,
        components,
    }
}

/// Turns an object-model image into a layout whose frame is the image.
pub fn ingest_object_model(image: &RasterImage, options: &IngestOptions) -> Result<Layout> {
    let maxval = f64::from(image.maxval());
    let threshold = options.threshold.unwrap_or(maxval / 2.0);
    if !(0.0..=maxval).contains(&threshold) {
        return Err(Error::domain(format!("threshold {threshold} outside [0, {maxval}]")));
    }

    let mask = foreground_mask(image, threshold, options.invert);
    let found = label_components(&mask, image.width(), image.height());
    let objects: Vec<LayoutObject> = found
        .components
        .iter()
        .filter(|c| c.pixels >= options.min_area)
        .enumerate()
        .map(|(i, c)| c.to_object(format!("obj{}", i + 1)))
        .collect();
    if objects.is_empty() {
        return Err(Error::EmptyLayout);
    }
    let frame = Frame::new(image.width() as f64, image.height() as f64)?;
    Layout::new(frame, objects)
}
