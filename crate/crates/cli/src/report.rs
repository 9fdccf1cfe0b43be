//! Output rendering. JSON numbers carry 17 significant digits.

use moran_core::fmt::g17;
use serde_json::{Map, Number, Value};

pub fn num(x: f64) -> Value {
    match g17(x).parse::<Number>() {
        Ok(n) if x.is_finite() => Value::Number(n),
        _ => Value::Null,
    }
}

pub fn int(x: usize) -> Value {
    Value::Number(Number::from(x as u64))
}

#[derive(Default)]
pub struct Record {
    fields: Vec<(&'static str, Value, String)>,
}

impl Record {
    pub fn float(mut self, key: &'static str, x: f64) -> Self {
        self.fields.push((key, num(x), g17(x)));
        self
    }

    pub fn count(mut self, key: &'static str, x: usize) -> Self {
        self.fields.push((key, int(x), x.to_string()));
        self
    }

    pub fn text(mut self, key: &'static str, s: &str) -> Self {
        self.fields
            .push((key, Value::String(s.to_string()), s.to_string()));
        self
    }

    pub fn seed(mut self, key: &'static str, s: u64) -> Self {
        self.fields
            .push((key, Value::Number(Number::from(s)), s.to_string()));
        self
    }

    pub fn json(&self) -> Value {
        let map: Map<String, Value> = self
            .fields
            .iter()
            .map(|(k, v, _)| (k.to_string(), v.clone()))
            .collect();
        Value::Object(map)
    }

    pub fn csv(&self) -> String {
        let keys: Vec<&str> = self.fields.iter().map(|f| f.0).collect();
        let vals: Vec<&str> = self.fields.iter().map(|f| f.2.as_str()).collect();
        format!("{}\n{}\n", keys.join(","), vals.join(","))
    }

    pub fn text_block(&self) -> String {
        let width = self.fields.iter().map(|f| f.0.len()).max().unwrap_or(0);
        self.fields
            .iter()
            .map(|(k, _, s)| format!("{k:<width$}  {s}\n"))
            .collect()
    }
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
