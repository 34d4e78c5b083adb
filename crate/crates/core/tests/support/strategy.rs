#![allow(dead_code)]

use ama_core::{Frame, Layout, LayoutObject};
use proptest::prelude::*;

/// Object as fractions of the frame: (x, y, w, h) in (0, 1].
fn unit_rect() -> impl Strategy<Value = (f64, f64, f64, f64)> {
    (0.01..1.0f64, 0.01..1.0f64, 0.0..1.0f64, 0.0..1.0f64)
}

pub fn layout_strategy(max_objects: usize) -> impl Strategy<Value = Layout> {
    (
        20.0..600.0f64,
        20.0..600.0f64,
        prop::collection::vec(unit_rect(), 1..=max_objects),
    )
        .prop_map(|(width, height, rects)| {
            let objects = rects
                .into_iter()
                .enumerate()
                .map(|(i, (fw, fh, fx, fy))| {
                    let w = (fw * width).max(0.5);
                    let h = (fh * height).max(0.5);
                    LayoutObject::new(format!("o{i}"), fx * (width - w), fy * (height - h), w, h)
                })
                .collect();
            Layout::new(Frame::new(width, height).unwrap(), objects).unwrap()
        })
}

/// Same as [`layout_strategy`] but on an integer grid, so objects often land
/// exactly on the center lines.
pub fn grid_layout_strategy(max_objects: usize) -> impl Strategy<Value = Layout> {
    (
        (1u32..=40).prop_map(|v| 2.0 * v as f64),
        (1u32..=40).prop_map(|v| 2.0 * v as f64),
        prop::collection::vec((0u32..100, 0u32..100, 1u32..100, 1u32..100), 1..=max_objects),
    )
        .prop_map(|(width, height, raw)| {
            let objects = raw
                .into_iter()
                .enumerate()
                .map(|(i, (x, y, w, h))| {
                    let w = 1.0 + (w as f64) % width;
                    let h = 1.0 + (h as f64) % height;
                    let w = w.min(width);
                    let h = h.min(height);
                    let x = (x as f64) % (width - w + 1.0);
                    let y = (y as f64) % (height - h + 1.0);
                    LayoutObject::new(format!("o{i}"), x, y, w, h)
                })
                .collect();
            Layout::new(Frame::new(width, height).unwrap(), objects).unwrap()
        })
}
