//! Layouts used by the optimizer sweeps.

#![allow(dead_code)]

use ama_core::{Frame, Layout, LayoutObject};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Eight 10x10 objects placed uniformly at random on a 200x200 frame.
pub fn eight_small_squares(seed: u64) -> Layout {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let objects = (0..8)
        .map(|i| {
            LayoutObject::new(
                format!("o{i}"),
                rng.gen_range(0.0..=190.0),
                rng.gen_range(0.0..=190.0),
                10.0,
                10.0,
            )
        })
        .collect();
    Layout::new(Frame::new(200.0, 200.0).unwrap(), objects).unwrap()
}

/// A six-object page: header, nav, two content blocks, an image, a footer.
pub fn six_object_page() -> Layout {
    let objects = vec![
        LayoutObject::new("header", 10.0, 10.0, 280.0, 30.0),
        LayoutObject::new("nav", 10.0, 50.0, 60.0, 120.0),
        LayoutObject::new("text1", 80.0, 50.0, 100.0, 50.0),
        LayoutObject::new("text2", 80.0, 110.0, 100.0, 50.0),
        LayoutObject::new("image", 190.0, 50.0, 100.0, 80.0),
        LayoutObject::new("footer", 10.0, 180.0, 280.0, 15.0),
    ];
    Layout::new(Frame::new(300.0, 200.0).unwrap(), objects).unwrap()
}

/// Whether `avs` follows the descending target order, allowing inversions
/// no larger than `tolerance`.
pub fn ordered_within(avs: &[f64], tolerance: f64) -> bool {
    avs.windows(2).all(|w| w[0] + tolerance >= w[1])
}
