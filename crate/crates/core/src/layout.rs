//! Frames, rectangles, and the quadrant decomposition every measure is built on.
//!
//! The frame center splits the screen into four quadrants. Objects that cross
//! a center line are cut into per-quadrant [`Portion`]s, so the quadrant sums
//! change continuously as an object slides across an axis.

use std::collections::HashSet;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed when checking that an object sits inside the frame, relative
/// to the frame dimension. Clamped moves compute `x + w` in floating point and
/// may land a rounding error past the edge.
const CONTAINMENT_SLACK: f64 = 1e-9;

/// Guard for the deviation ratio divisor. Kept portions are strictly off both
/// axes, so this only matters for sub-ulp slivers.
const RATIO_EPSILON: f64 = 1e-12;

/// Object edges closer than this to a center line, relative to the frame
/// dimension, are treated as lying on it. Without the snap, an edge that sits
/// on the axis up to rounding yields a sliver portion whose deviation ratio
/// is arbitrarily large.
pub const AXIS_SNAP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    width: f64,
    height: f64,
}

impl Frame {
    pub fn new(width: f64, height: f64) -> Result<Self> {
        if !(width.is_finite() && width > 0.0 && height.is_finite() && height > 0.0) {
            return Err(Error::validation(
                None,
                format!("frame must have positive finite extents, got {width}x{height}"),
            ));
        }
        Ok(Frame { width, height })
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    /// Physical center of the screen, `(width / 2, height / 2)`.
    pub fn center(&self) -> (f64, f64) {
        (self.width / 2.0, self.height / 2.0)
    }

    fn contains(&self, obj: &LayoutObject) -> bool {
        let sx = CONTAINMENT_SLACK * self.width.max(1.0);
        let sy = CONTAINMENT_SLACK * self.height.max(1.0);
        obj.x >= -sx && obj.y >= -sy && obj.right() <= self.width + sx && obj.bottom() <= self.height + sy
    }
}

/// An axis-aligned rectangle in frame coordinates (origin top-left, y down).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutObject {
    pub id: String,
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
}

impl LayoutObject {
    pub fn new(id: impl Into<String>, x: f64, y: f64, w: f64, h: f64) -> Self {
        LayoutObject {
            id: id.into(),
            x,
            y,
            w,
            h,
        }
    }

    pub fn area(&self) -> f64 {
        self.w * self.h
    }

    pub fn center(&self) -> (f64, f64) {
        (self.x + self.w / 2.0, self.y + self.h / 2.0)
    }

    pub fn right(&self) -> f64 {
        self.x + self.w
    }

    pub fn bottom(&self) -> f64 {
        self.y + self.h
    }

    /// True when the two rectangles share positive area. Touching edges do not count.
    pub fn intersects(&self, other: &LayoutObject) -> bool {
        self.x < other.right() && other.x < self.right() && self.y < other.bottom() && other.y < self.bottom()
    }
}

/// A frame and its objects. Construction checks every invariant except
/// non-emptiness, which is enforced by the evaluation entry points.
#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    frame: Frame,
    objects: Vec<LayoutObject>,
}

impl Layout {
    pub fn new(frame: Frame, objects: Vec<LayoutObject>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(objects.len());
        for obj in &objects {
            if obj.id.is_empty() {
                return Err(Error::validation(None, "object id must not be empty"));
            }
            if !seen.insert(obj.id.as_str()) {
                return Err(Error::validation(Some(&obj.id), "duplicate object id"));
            }
            let coords = [obj.x, obj.y, obj.w, obj.h];
            if coords.iter().any(|v| !v.is_finite()) {
                return Err(Error::validation(Some(&obj.id), "coordinates must be finite"));
            }
            if obj.w <= 0.0 || obj.h <= 0.0 {
                return Err(Error::validation(
                    Some(&obj.id),
                    format!("extent must be positive, got {}x{}", obj.w, obj.h),
                ));
            }
            if !frame.contains(obj) {
                return Err(Error::validation(
                    Some(&obj.id),
                    format!(
                        "rectangle ({}, {}, {}, {}) lies outside the {}x{} frame",
                        obj.x, obj.y, obj.w, obj.h, frame.width, frame.height
                    ),
                ));
            }
        }
        Ok(Layout { frame, objects })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn objects(&self) -> &[LayoutObject] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn into_parts(self) -> (Frame, Vec<LayoutObject>) {
        (self.frame, self.objects)
    }

    pub(crate) fn ensure_non_empty(&self) -> Result<()> {
        if self.objects.is_empty() {
            Err(Error::EmptyLayout)
        } else {
            Ok(())
        }
    }

    /// Moves object `index` to a new top-left corner. The caller keeps it inside the frame.
    pub(crate) fn set_position(&mut self, index: usize, x: f64, y: f64) {
        let obj = &mut self.objects[index];
        obj.x = x;
        obj.y = y;
    }

    /// Reflection about the vertical center line (left and right swap).
    pub fn mirrored_horizontally(&self) -> Layout {
        let w = self.frame.width;
        self.map_objects(
            |o| LayoutObject {
                x: w - o.x - o.w,
                ..o.clone()
            },
            self.frame,
        )
    }

    /// Reflection about the horizontal center line (top and bottom swap).
    pub fn mirrored_vertically(&self) -> Layout {
        let h = self.frame.height;
        self.map_objects(
            |o| LayoutObject {
                y: h - o.y - o.h,
                ..o.clone()
            },
            self.frame,
        )
    }

    /// Uniform scaling of the frame and every object by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Layout> {
        let frame = Frame::new(self.frame.width * factor, self.frame.height * factor)?;
        Ok(self.map_objects(
            |o| LayoutObject {
                id: o.id.clone(),
                x: o.x * factor,
                y: o.y * factor,
                w: o.w * factor,
                h: o.h * factor,
            },
            frame,
        ))
    }

    fn map_objects(&self, f: impl Fn(&LayoutObject) -> LayoutObject, frame: Frame) -> Layout {
        Layout {
            frame,
            objects: self.objects.iter().map(f).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Quadrant {
    UL,
    UR,
    LL,
    LR,
}

impl Quadrant {
    /// Reading order.
    pub const ALL: [Quadrant; 4] = [Quadrant::UL, Quadrant::UR, Quadrant::LL, Quadrant::LR];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_left(self) -> bool {
        matches!(self, Quadrant::UL | Quadrant::LL)
    }

    pub fn is_top(self) -> bool {
        matches!(self, Quadrant::UL | Quadrant::UR)
    }

    fn from_sides(left: bool, top: bool) -> Quadrant {
        match (top, left) {
            (true, true) => Quadrant::UL,
            (true, false) => Quadrant::UR,
            (false, true) => Quadrant::LL,
            (false, false) => Quadrant::LR,
        }
    }
}

/// The part of one object that falls inside one quadrant.
#[derive(Debug, Clone, PartialEq)]
pub struct Portion {
    pub quadrant: Quadrant,
    pub area: f64,
    pub cx: f64,
    pub cy: f64,
    pub pw: f64,
    pub ph: f64,
    pub owner: String,
}

/// Geometry of a portion without the owner id; what the hot paths consume.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PortionGeom {
    pub quadrant: Quadrant,
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
}

impl PortionGeom {
    pub fn area(&self) -> f64 {
        self.w * self.h
    }

    pub fn centroid(&self) -> (f64, f64) {
        (self.x + self.w / 2.0, self.y + self.h / 2.0)
    }
}

fn snap(v: f64, axis: f64, tolerance: f64) -> f64 {
    if (v - axis).abs() <= tolerance {
        axis
    } else {
        v
    }
}

/// `(is_first_side, start, end)` for the one or two spans of `[lo, hi)` on
/// either side of `axis`.
fn spans(lo: f64, hi: f64, axis: f64, tolerance: f64) -> ([(bool, f64, f64); 2], usize) {
    let (lo, hi) = (snap(lo, axis, tolerance), snap(hi, axis, tolerance));
    let mut out = [(false, 0.0, 0.0); 2];
    let mut n = 0;
    if lo < axis {
        out[n] = (true, lo, hi.min(axis));
        n += 1;
    }
    if hi > axis {
        out[n] = (false, lo.max(axis), hi);
        n += 1;
    }
    (out, n)
}

/// Cuts `obj` along the frame's center lines, handing each non-empty piece to `sink`.
pub(crate) fn split_object(obj: &LayoutObject, frame: &Frame, mut sink: impl FnMut(PortionGeom)) {
    let (xc, yc) = frame.center();
    let (columns, n_cols) = spans(obj.x, obj.right(), xc, AXIS_SNAP * frame.width);
    let (rows, n_rows) = spans(obj.y, obj.bottom(), yc, AXIS_SNAP * frame.height);
    for &(top, y0, y1) in &rows[..n_rows] {
        for &(left, x0, x1) in &columns[..n_cols] {
            let (w, h) = (x1 - x0, y1 - y0);
            if w > 0.0 && h > 0.0 {
                sink(PortionGeom {
                    quadrant: Quadrant::from_sides(left, top),
                    x: x0,
                    y: y0,
                    w,
                    h,
                });
            }
        }
    }
}

pub(crate) fn for_each_portion(layout: &Layout, mut sink: impl FnMut(PortionGeom)) {
    for obj in &layout.objects {
        split_object(obj, &layout.frame, &mut sink);
    }
}

/// Cuts every object along the two center lines.
pub fn split_at_axes(layout: &Layout) -> Result<Vec<Portion>> {
    layout.ensure_non_empty()?;
    let mut out = Vec::with_capacity(layout.objects.len() * 2);
    for obj in &layout.objects {
        split_object(obj, &layout.frame, |p| {
            let (cx, cy) = p.centroid();
            out.push(Portion {
                quadrant: p.quadrant,
                area: p.area(),
                cx,
                cy,
                pw: p.w,
                ph: p.h,
                owner: obj.id.clone(),
            });
        });
    }
    Ok(out)
}

/// The per-quadrant sums behind symmetry, rhythm and sequence.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct QuadrantSums {
    /// Σ |cx − x_c|
    pub x: f64,
    /// Σ |cy − y_c|
    pub y: f64,
    /// Σ portion heights
    pub h: f64,
    /// Σ portion widths
    pub b: f64,
    /// Σ |cy − y_c| / |cx − x_c|
    pub theta: f64,
    /// Σ distance from centroid to the frame center
    pub r: f64,
    /// Σ portion areas
    pub a: f64,
}

impl QuadrantSums {
    fn add(&mut self, w: f64, h: f64, cx: f64, cy: f64, center: (f64, f64)) {
        let dx = (cx - center.0).abs();
        let dy = (cy - center.1).abs();
        self.x += dx;
        self.y += dy;
        self.h += h;
        self.b += w;
        self.theta += dy / dx.max(RATIO_EPSILON);
        self.r += dx.hypot(dy);
        self.a += w * h;
    }

    pub fn get(&self, family: Family) -> f64 {
        match family {
            Family::X => self.x,
            Family::Y => self.y,
            Family::H => self.h,
            Family::B => self.b,
            Family::Theta => self.theta,
            Family::R => self.r,
            Family::A => self.a,
        }
    }
}

/// One kind of quadrant sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    X,
    Y,
    H,
    B,
    Theta,
    R,
    A,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct QuadrantAggregates {
    sums: [QuadrantSums; 4],
}

impl QuadrantAggregates {
    pub(crate) fn from_layout(layout: &Layout) -> QuadrantAggregates {
        let center = layout.frame.center();
        let mut agg = QuadrantAggregates::default();
        for_each_portion(layout, |p| {
            let (cx, cy) = p.centroid();
            agg.sums[p.quadrant.index()].add(p.w, p.h, cx, cy, center);
        });
        agg
    }

    /// Values of one family in reading order UL, UR, LL, LR.
    pub fn family(&self, family: Family) -> [f64; 4] {
        self.sums.map(|s| s.get(family))
    }

    pub fn total_area(&self) -> f64 {
        self.sums.iter().map(|s| s.a).sum()
    }
}

impl Index<Quadrant> for QuadrantAggregates {
    type Output = QuadrantSums;

    fn index(&self, q: Quadrant) -> &QuadrantSums {
        &self.sums[q.index()]
    }
}

/// Sums portion geometry per quadrant. Empty input gives all zeros.
pub fn quadrant_aggregates(portions: &[Portion], frame: &Frame) -> QuadrantAggregates {
    let center = frame.center();
    let mut agg = QuadrantAggregates::default();
    for p in portions {
        agg.sums[p.quadrant.index()].add(p.pw, p.ph, p.cx, p.cy, center);
    }
    agg
}
