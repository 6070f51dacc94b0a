//! JSON output with sorted keys and 17 significant digits per float.

use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter};
use std::io;

struct Sig17;

impl Formatter for Sig17 {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }
    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        CompactFormatter.write_f32(w, value)
    }
}

/// Serializes through `serde_json::Value` first, whose maps are ordered by
/// key, so struct field order never leaks into the output.
pub fn to_string<T: Serialize>(v: &T) -> String {
    let value = serde_json::to_value(v).expect("serializable report");
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Sig17);
    value.serialize(&mut ser).expect("in-memory write");
    let mut s = String::from_utf8(out).expect("utf-8");
    s.push('\n');
    s
}

/// `{:.16e}` for CSV and OBJ fields.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}
