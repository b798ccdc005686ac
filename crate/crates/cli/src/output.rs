use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// `{command, parameters, result, warnings}` for one invocation.
pub struct Envelope {
    pub command: &'static str,
    pub parameters: Map<String, Value>,
    pub result: Value,
    pub warnings: Vec<String>,
}

impl Envelope {
    pub fn new(command: &'static str) -> Self {
        Envelope {
            command,
            parameters: Map::new(),
            result: Value::Null,
            warnings: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_owned(), value.into());
        self
    }

    pub fn to_value(&self) -> Value {
        json!({
            "command": self.command,
            "parameters": self.parameters,
            "result": self.result,
            "warnings": self.warnings,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.to_value()).expect("serializable"),
            Format::Table => self.table(),
        }
    }

    fn table(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        if !self.parameters.is_empty() {
            out.push_str("parameters:\n");
            key_values(&mut out, &self.parameters, 1);
        }
        out.push_str("result:\n");
        match &self.result {
            Value::Object(map) => key_values(&mut out, map, 1),
            other => out.push_str(&format!("  {}\n", scalar(other))),
        }
        if !self.warnings.is_empty() {
            out.push_str("warnings:\n");
            for w in &self.warnings {
                out.push_str(&format!("  - {w}\n"));
            }
        }
        out
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn key_values(out: &mut String, map: &Map<String, Value>, depth: usize) {
    let pad = "  ".repeat(depth);
    let width = map.keys().map(String::len).max().unwrap_or(0);
    for (k, v) in map {
        match v {
            Value::Object(inner) => {
                out.push_str(&format!("{pad}{k}:\n"));
                key_values(out, inner, depth + 1);
            }
            Value::Array(items) if items.iter().any(Value::is_object) => {
                out.push_str(&format!("{pad}{k}:\n"));
                rows(out, items, depth + 1);
            }
            Value::Array(items) => {
                let joined: Vec<String> = items.iter().map(scalar).collect();
                out.push_str(&format!("{pad}{k:<width$}  {}\n", joined.join(" ")));
            }
            other => out.push_str(&format!("{pad}{k:<width$}  {}\n", scalar(other))),
        }
    }
}

/// Renders an array of objects as aligned columns keyed by the first row.
fn rows(out: &mut String, items: &[Value], depth: usize) {
    let pad = "  ".repeat(depth);
    let Some(Value::Object(first)) = items.first() else { return };
    let keys: Vec<&String> = first.keys().collect();
    let cell = |item: &Value, k: &str| match item.get(k) {
        Some(Value::Array(a)) if a.is_empty() => "-".to_string(),
        Some(v @ (Value::Array(_) | Value::Object(_))) => v.to_string(),
        Some(v) => scalar(v),
        None => "-".into(),
    };
    let mut widths: Vec<usize> = keys.iter().map(|k| k.len()).collect();
    for item in items {
        for (w, k) in widths.iter_mut().zip(&keys) {
            *w = (*w).max(cell(item, k).chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w.saturating_sub(c.chars().count()))))
            .collect();
        format!("{pad}{}\n", parts.join("  ").trim_end())
    };
    out.push_str(&line(keys.iter().map(|k| k.to_string()).collect()));
    for item in items {
        out.push_str(&line(keys.iter().map(|k| cell(item, k)).collect()));
    }
}
