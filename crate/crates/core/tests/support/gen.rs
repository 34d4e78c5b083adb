//! Seeded random layouts for property-style sweeps.

#![allow(dead_code)]

use ama_core::{Frame, Layout, LayoutObject};
use rand::Rng;

/// A layout with 1..=max_objects rectangles on a frame between 40 and 800 px a side.
/// Coordinates are rounded to quarter pixels about half the time so that
/// objects regularly sit exactly on a center line.
pub fn random_layout(rng: &mut impl Rng, max_objects: usize) -> Layout {
    let width = rng.gen_range(40.0..800.0_f64).round();
    let height = rng.gen_range(40.0..800.0_f64).round();
    let snap = rng.gen_bool(0.5);
    let q = |v: f64| if snap { (v * 4.0).floor() / 4.0 } else { v };
    let n = rng.gen_range(1..=max_objects);
    let objects = (0..n)
        .map(|i| {
            let w = q(rng.gen_range(1.0..width)).max(0.25);
            let h = q(rng.gen_range(1.0..height)).max(0.25);
            let x = q(rng.gen_range(0.0..=width - w));
            let y = q(rng.gen_range(0.0..=height - h));
            LayoutObject::new(format!("o{i}"), x, y, w, h)
        })
        .collect();
    Layout::new(Frame::new(width, height).unwrap(), objects).unwrap()
}

pub fn rects(layout: &Layout) -> Vec<(f64, f64, f64, f64)> {
    layout.objects().iter().map(|o| (o.x, o.y, o.w, o.h)).collect()
}
