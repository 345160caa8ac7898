use serde_json::Value;

use crate::Format;

/// Output of one command in every supported format.
pub struct Rendered {
    pub results: Value,
    pub text: Vec<String>,
    pub csv_header: Vec<String>,
    pub csv_rows: Vec<Vec<String>>,
    /// Column headers and cells, already in math-mode LaTeX.
    pub latex_header: Vec<String>,
    pub latex_rows: Vec<Vec<String>>,
}

impl Rendered {
    pub fn new(results: Value) -> Self {
        Rendered {
            results,
            text: Vec::new(),
            csv_header: Vec::new(),
            csv_rows: Vec::new(),
            latex_header: Vec::new(),
            latex_rows: Vec::new(),
        }
    }

    pub fn format(&self, format: Format, config: Value) -> anyhow::Result<String> {
        Ok(match format {
            Format::Text => {
                let mut s = self.text.join("\n");
                s.push('\n');
                s
            }
            Format::Json => {
                let doc = serde_json::json!({
                    "tool_version": env!("CARGO_PKG_VERSION"),
                    "config": config,
                    "results": self.results,
                });
                let mut s = serde_json::to_string_pretty(&doc)?;
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.csv_header)?;
                for row in &self.csv_rows {
                    w.write_record(row)?;
                }
                String::from_utf8(w.into_inner()?)?
            }
            Format::Latex => latex_table(&self.latex_header, &self.latex_rows),
        })
    }
}

fn latex_table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut s = format!("\\begin{{tabular}}{{{}}}\n", "l".repeat(header.len()));
    s.push_str(&header.join(" & "));
    s.push_str(" \\\\\n\\hline\n");
    for row in rows {
        s.push_str(&row.join(" & "));
        s.push_str(" \\\\\n");
    }
    s.push_str("\\end{tabular}\n");
    s
}

/// `2` for rank one, `(1,2)` otherwise.
pub fn index_label(exponents: &[u32]) -> String {
    if exponents.len() == 1 {
        exponents[0].to_string()
    } else {
        let parts: Vec<String> = exponents.iter().map(u32::to_string).collect();
        format!("({})", parts.join(","))
    }
}

/// LaTeX subscript for a multi-index.
pub fn index_latex(exponents: &[u32]) -> String {
    let parts: Vec<String> = exponents.iter().map(u32::to_string).collect();
    if parts.len() == 1 {
        format!("{{{}}}", parts[0])
    } else {
        format!("{{({})}}", parts.join(","))
    }
}

pub fn math(s: impl AsRef<str>) -> String {
    format!("${}$", s.as_ref())
}

pub fn float(v: f64) -> String {
    format!("{v:.17e}")
}
