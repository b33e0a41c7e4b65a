//! CSV and JSON emission, plus a CSV reader for round-trip checks.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use super::green::GreenRows;
use super::sweep::{ModeRecord, SweepResult, SweepRow};

pub const VERSION_HEADER: &str = concat!("# curved-lattice v", env!("CARGO_PKG_VERSION"));

/// Round to `precision` significant digits, returned as the nearest `f64`.
pub fn round_sig(x: f64, precision: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{:.*e}", precision.saturating_sub(1), x)
        .parse()
        .expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Shortest decimal that round-trips the value rounded to `precision`
/// significant digits.
pub fn format_float(x: f64, precision: usize) -> String {
    let r = round_sig(x, precision);
    let a = r.abs();
    if a != 0.0 && a.is_finite() && !(1e-5..1e15).contains(&a) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

fn json_float(x: f64, precision: usize) -> Value {
    serde_json::Number::from_f64(round_sig(x, precision)).map_or(Value::Null, Value::Number)
}

fn header_lines(out: &mut String, notes: Option<&str>) {
    out.push_str(VERSION_HEADER);
    out.push('\n');
    for line in notes.into_iter().flat_map(str::lines) {
        let _ = writeln!(out, "# note: {line}");
    }
}

pub fn sweep_csv(result: &SweepResult, notes: Option<&str>, precision: usize) -> String {
    let f = |x| format_float(x, precision);
    let mut out = String::new();
    header_lines(&mut out, notes);
    let _ = writeln!(out, "# param: {}", result.param.name());
    if let Some(o) = result.outer_param {
        let _ = writeln!(out, "# outer: {}", o.name());
        out.push_str("outer,");
    }
    out.push_str("param,mode,track_id,shift,gamma\n");
    for row in &result.rows {
        let outer = row.outer.map(|o| format!("{},", f(o))).unwrap_or_default();
        match &row.outcome {
            Ok(modes) => {
                for m in modes {
                    let _ = writeln!(
                        out,
                        "{outer}{},{},{},{},{}",
                        f(row.param),
                        m.mode,
                        m.track_id,
                        f(m.shift),
                        f(m.gamma)
                    );
                }
            }
            Err(msg) => {
                let at = row.outer.map(|o| format!(" outer={}", f(o))).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "# error{at} param={}: {}",
                    f(row.param),
                    msg.replace('\n', " ")
                );
            }
        }
    }
    out
}

pub fn sweep_json(result: &SweepResult, precision: usize) -> String {
    let mut rows = Vec::new();
    for row in &result.rows {
        let mut base = Map::new();
        if let Some(o) = row.outer {
            base.insert("outer".into(), json_float(o, precision));
        }
        base.insert("param".into(), json_float(row.param, precision));
        match &row.outcome {
            Ok(modes) => {
                for m in modes {
                    let mut obj = base.clone();
                    obj.insert("mode".into(), json!(m.mode));
                    obj.insert("track_id".into(), json!(m.track_id));
                    obj.insert("shift".into(), json_float(m.shift, precision));
                    obj.insert("gamma".into(), json_float(m.gamma, precision));
                    rows.push(Value::Object(obj));
                }
            }
            Err(msg) => {
                let mut obj = base;
                obj.insert("error".into(), json!(msg));
                rows.push(Value::Object(obj));
            }
        }
    }
    let mut s = serde_json::to_string_pretty(&Value::Array(rows)).expect("json serializes");
    s.push('\n');
    s
}

pub fn green_csv(table: &GreenRows, notes: Option<&str>, precision: usize) -> String {
    let f = |x| format_float(x, precision);
    let mut out = String::new();
    header_lines(&mut out, notes);
    let _ = writeln!(out, "# {} k_eff={}", table.family, f(table.k_eff));
    let _ = writeln!(out, "separation,{}", table.columns.join(","));
    for (s, values) in &table.rows {
        out.push_str(&f(*s));
        for &v in values {
            out.push(',');
            out.push_str(&f(v));
        }
        out.push('\n');
    }
    out
}

pub fn green_json(table: &GreenRows, precision: usize) -> String {
    let arr: Vec<Value> = table
        .rows
        .iter()
        .map(|(s, values)| {
            let mut obj = Map::new();
            obj.insert("separation".into(), json_float(*s, precision));
            for (name, &v) in table.columns.iter().zip(values) {
                obj.insert((*name).into(), json_float(v, precision));
            }
            Value::Object(obj)
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&Value::Array(arr)).expect("json serializes");
    s.push('\n');
    s
}

/// Read a sweep CSV back into rows (modes grouped per sweep point). Error
/// comment lines come back as failed rows.
pub fn parse_sweep_csv(text: &str) -> Result<Vec<SweepRow>, String> {
    let mut rows: Vec<SweepRow> = Vec::new();
    let mut has_outer = None;
    let num = |s: &str| s.trim().parse::<f64>().map_err(|e| format!("bad number '{s}': {e}"));
    for (lineno, line) in text.lines().enumerate() {
        if let Some(rest) = line.strip_prefix("# error") {
            let (pos, msg) = rest
                .split_once(": ")
                .ok_or_else(|| format!("line {}: malformed error row", lineno + 1))?;
            let mut outer = None;
            let mut param = f64::NAN;
            for kv in pos.split_whitespace() {
                match kv.split_once('=') {
                    Some(("outer", v)) => outer = Some(num(v)?),
                    Some(("param", v)) => param = num(v)?,
                    _ => return Err(format!("line {}: malformed error row", lineno + 1)),
                }
            }
            rows.push(SweepRow {
                outer,
                param,
                outcome: Err(msg.to_string()),
            });
            continue;
        }
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        if has_outer.is_none() {
            has_outer = Some(match line {
                "param,mode,track_id,shift,gamma" => false,
                "outer,param,mode,track_id,shift,gamma" => true,
                other => return Err(format!("unexpected header '{other}'")),
            });
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let off = usize::from(has_outer == Some(true));
        if fields.len() != 5 + off {
            return Err(format!("line {}: expected {} fields", lineno + 1, 5 + off));
        }
        let outer = if off == 1 { Some(num(fields[0])?) } else { None };
        let param = num(fields[off])?;
        let int = |s: &str| s.parse::<usize>().map_err(|e| format!("bad index '{s}': {e}"));
        let rec = ModeRecord {
            mode: int(fields[off + 1])?,
            track_id: int(fields[off + 2])?,
            shift: num(fields[off + 3])?,
            gamma: num(fields[off + 4])?,
        };
        let same_point = rows.last().is_some_and(|r| {
            r.outcome.as_ref().is_ok_and(|m| m.len() == rec.mode)
                && r.param.to_bits() == param.to_bits()
                && r.outer.map(f64::to_bits) == outer.map(f64::to_bits)
        });
        if same_point && rec.mode > 0 {
            rows.last_mut()
                .and_then(|r| r.outcome.as_mut().ok())
                .expect("checked above")
                .push(rec);
        } else {
            rows.push(SweepRow {
                outer,
                param,
                outcome: Ok(vec![rec]),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(0.1 + 0.2, 12), "0.3");
        assert_eq!(format_float(-0.022_064_241_053_919_24, 7), "-0.02206424");
        assert_eq!(format_float(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(format_float(-1e-20, 12), "-1e-20");
        assert_eq!(format_float(-0.0, 12), "0");
        assert_eq!(format_float(8.0, 12), "8");
        assert_eq!(format_float(f64::NAN, 12), "NaN");
        assert_eq!(format_float(123_456.789, 4), "123500");
    }

    #[test]
    fn round_sig_is_idempotent() {
        for &x in &[std::f64::consts::PI, -2.5e-9, 7.0e11, 0.123_456_789_012_345] {
            for p in 1..=17 {
                let r = round_sig(x, p);
                assert_eq!(round_sig(r, p), r);
                assert_eq!(format_float(r, p).parse::<f64>().unwrap(), r);
            }
        }
    }
}
