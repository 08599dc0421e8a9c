//! Table rendering. One `Document` per run: a column schema, rows of
//! typed cells, and an optional summary object, rendered either as CSV
//! with '#'-prefixed JSON header lines or as a single JSON object.

use crate::config::{OutputFormat, RunConfig};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(&'static str),
}

impl Cell {
    fn csv(&self) -> String {
        match *self {
            Cell::Int(v) => v.to_string(),
            // Ten significant digits, always exponential; enough to spot
            // any drift at a glance while staying diff-stable.
            Cell::Num(v) => format!("{v:.9e}"),
            Cell::Text(v) => v.to_string(),
        }
    }

    fn json(&self) -> Value {
        match *self {
            Cell::Int(v) => json!(v),
            Cell::Num(v) => json!(v),
            Cell::Text(v) => json!(v),
        }
    }
}

pub struct Document {
    pub config: RunConfig,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Option<Value>,
}

impl Document {
    pub fn render(&self, timestamp: Option<&str>) -> String {
        match self.config.format {
            OutputFormat::Csv => self.render_csv(timestamp),
            OutputFormat::Json => self.render_json(timestamp),
        }
    }

    fn render_csv(&self, timestamp: Option<&str>) -> String {
        let mut text = String::new();
        let config = serde_json::to_string(&self.config).expect("config serializes");
        text.push_str(&format!("# config: {config}\n"));
        let constants = rotorqm::core::constants_table();
        text.push_str(&format!("# constants: {constants}\n"));
        if let Some(summary) = &self.summary {
            text.push_str(&format!("# summary: {summary}\n"));
        }
        // Timestamp last so suppressing it only drops one header line.
        if let Some(stamp) = timestamp {
            text.push_str(&format!("# generated: {stamp}\n"));
        }
        text.push_str(&self.columns.join(","));
        text.push('\n');
        for row in &self.rows {
            debug_assert_eq!(row.len(), self.columns.len());
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            text.push_str(&cells.join(","));
            text.push('\n');
        }
        text
    }

    fn render_json(&self, timestamp: Option<&str>) -> String {
        let mut meta = Map::new();
        meta.insert(
            "config".into(),
            serde_json::to_value(&self.config).expect("config serializes"),
        );
        meta.insert("constants".into(), rotorqm::core::constants_table());
        if let Some(summary) = &self.summary {
            meta.insert("summary".into(), summary.clone());
        }
        if let Some(stamp) = timestamp {
            meta.insert("generated".into(), json!(stamp));
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut object = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    object.insert((*name).into(), cell.json());
                }
                Value::Object(object)
            })
            .collect();
        let mut text = json!({ "meta": meta, "rows": rows }).to_string();
        text.push('\n');
        text
    }
}
