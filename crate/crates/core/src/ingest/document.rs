//! The JSON layout document.
//!
//! ```json
//! {"schema_version":1,"frame":{"width":100,"height":100},
//!  "objects":[{"id":"title","x":10,"y":5,"w":80,"h":12}]}
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::layout::{Frame, Layout, LayoutObject};

pub const SCHEMA_VERSION: u32 = 1;

type Extra = BTreeMap<String, Value>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutDocument {
    pub schema_version: u32,
    pub frame: FrameDocument,
    pub objects: Vec<ObjectDocument>,
    #[serde(flatten, default, skip_serializing)]
    extra: Extra,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameDocument {
    pub width: f64,
    pub height: f64,
    #[serde(flatten, default, skip_serializing)]
    extra: Extra,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectDocument {
    pub id: String,
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
    #[serde(flatten, default, skip_serializing)]
    extra: Extra,
}

impl LayoutDocument {
    pub fn from_layout(layout: &Layout) -> Self {
        let frame = layout.frame();
        LayoutDocument {
            schema_version: SCHEMA_VERSION,
            frame: FrameDocument {
                width: frame.width(),
                height: frame.height(),
                extra: Extra::new(),
            },
            objects: layout
                .objects()
                .iter()
                .map(|o| ObjectDocument {
                    id: o.id.clone(),
                    x: o.x,
                    y: o.y,
                    w: o.w,
                    h: o.h,
                    extra: Extra::new(),
                })
                .collect(),
            extra: Extra::new(),
        }
    }

    /// Validates the document into a [`Layout`]. In strict mode any field not
    /// named by the schema is an error; otherwise such fields are ignored.
    pub fn into_layout(self, strict: bool) -> Result<Layout> {
        if strict {
            reject_unknown(&self.extra, "document", None)?;
            reject_unknown(&self.frame.extra, "frame", None)?;
            for obj in &self.objects {
                reject_unknown(&obj.extra, "object", Some(&obj.id))?;
            }
        }
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::validation(
                None,
                format!(
                    "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                    self.schema_version
                ),
            ));
        }
        let frame = Frame::new(self.frame.width, self.frame.height)?;
        let objects = self
            .objects
            .into_iter()
            .map(|o| LayoutObject::new(o.id, o.x, o.y, o.w, o.h))
            .collect();
        Layout::new(frame, objects)
    }
}

fn reject_unknown(extra: &Extra, what: &str, object: Option<&str>) -> Result<()> {
    match extra.keys().next() {
        Some(key) => Err(Error::validation(object, format!("unknown {what} field `{key}`"))),
        None => Ok(()),
    }
}

pub fn parse_document(text: &str) -> Result<LayoutDocument> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_layout(text: &str, strict: bool) -> Result<Layout> {
    parse_document(text)?.into_layout(strict)
}

/// Pretty-printed document for `layout`.
pub fn serialize_layout(layout: &Layout) -> String {
    let mut s =
        serde_json::to_string_pretty(&LayoutDocument::from_layout(layout)).expect("layout documents always serialize");
    s.push('\n');
    s
}
