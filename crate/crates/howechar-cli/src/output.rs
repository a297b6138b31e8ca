use howechar::{ComplexValue, Rational};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::args::Format;

/// Fixed keys first, then command-specific ones in sorted order.
#[derive(Serialize, Debug, Default)]
pub struct Meta {
    pub pair: Option<String>,
    pub nu: Option<Vec<String>>,
    pub m: Option<usize>,
    pub seed: Option<u64>,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

impl Meta {
    pub fn new() -> Meta {
        Meta::default()
    }

    pub fn insert(&mut self, key: &str, value: Value) {
        self.extra.insert(key.to_string(), value);
    }
}

#[derive(Serialize, Debug)]
pub struct Report {
    pub meta: Meta,
    pub results: Vec<Value>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(meta: Meta, results: Vec<Value>) -> Report {
        Report {
            meta,
            results,
            warnings: Vec::new(),
        }
    }

    pub fn with_warnings(mut self, warnings: Vec<String>) -> Report {
        self.warnings = warnings;
        self
    }

    pub fn print(&self, format: Format) {
        match format {
            Format::Json => println!("{}", serde_json::to_string_pretty(self).expect("report serializes")),
            Format::Table => print!("{}", self.table()),
        }
    }

    fn table(&self) -> String {
        let mut out = String::new();
        let meta = serde_json::to_value(&self.meta).expect("meta serializes");
        for (k, v) in meta.as_object().into_iter().flatten().filter(|(_, v)| !v.is_null()) {
            out += &format!("# {k}: {}\n", cell(v));
        }
        for r in &self.results {
            let row: Vec<String> = match r.as_object() {
                Some(obj) => obj.iter().map(|(k, v)| format!("{k}={}", cell(v))).collect(),
                None => vec![cell(r)],
            };
            out += &row.join("  ");
            out.push('\n');
        }
        for w in &self.warnings {
            out += &format!("# warning: {w}\n");
        }
        out
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(cell).collect::<Vec<_>>().join(", ")),
        Value::Object(obj) if obj.contains_key("re") && obj.contains_key("im") => {
            format!("{}{:+}i", obj["re"], obj["im"].as_f64().unwrap_or(f64::NAN))
        }
        other => other.to_string(),
    }
}

pub fn rational_list(v: &[Rational]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

pub fn point_value(point: &[f64], value: ComplexValue) -> Value {
    json!({ "point": point, "value": { "re": value.re, "im": value.im } })
}
