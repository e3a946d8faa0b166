//! Command implementations behind the `cotoeplitz` binary. Every command
//! returns its full output as a string so the binary and the tests share one
//! code path.

use std::fmt;

use anyhow::Result;
use serde_json::Value;

use cotoeplitz::parser::parse_key_list;
use cotoeplitz::{
    comul_extend, gram_matrix, make_form, operator_matrix, parse_coalgebra_spec, parse_element, parse_form_spec,
    BasisWindow, CoalgebraInstance, Element, Form, OperatorHandle, ProjectionPair, TensorElement,
    WindowBound,
};

pub mod verify;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

/// Bad command-line usage that clap cannot see, such as an unbounded window
/// on an infinite basis. Exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// `deg<=D` or `full`.
pub fn parse_window(text: &str) -> Result<WindowBound, String> {
    let t = text.trim();
    if t == "full" {
        return Ok(WindowBound::Full);
    }
    t.strip_prefix("deg<=")
        .and_then(|d| d.trim().parse::<i64>().ok())
        .map(WindowBound::MaxDegree)
        .ok_or_else(|| format!("invalid window `{text}`: expected `deg<=D` or `full`"))
}

/// Output ending in exactly one newline.
fn line(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn json_out(v: &Value) -> String {
    line(serde_json::to_string_pretty(v).expect("json values serialize"))
}

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn element_csv(e: &Element) -> String {
    let mut out = String::from("key,coeff\n");
    for (k, c) in e.iter() {
        out.push_str(&format!("{},{}\n", csv_field(&k.to_string()), c.to_csv_string()));
    }
    out
}

fn tensor_csv(t: &TensorElement) -> String {
    let mut out = String::from("key1,key2,coeff\n");
    for ((a, b), c) in t.iter() {
        out.push_str(&format!("{},{},{}\n", csv_field(&a.to_string()), csv_field(&b.to_string()), c.to_csv_string()));
    }
    out
}

fn element_out(e: &Element, format: Format) -> String {
    match format {
        Format::Text => line(e.render()),
        Format::Json => json_out(&e.to_json()),
        Format::Csv => element_csv(e),
    }
}

fn coalgebra(spec: &str) -> Result<CoalgebraInstance> {
    Ok(parse_coalgebra_spec(spec)?)
}

fn form(spec: &str, c: &CoalgebraInstance) -> Result<Form> {
    Ok(make_form(&parse_form_spec(spec)?, c)?)
}

fn window(c: &CoalgebraInstance, bound: WindowBound) -> Result<BasisWindow> {
    if bound == WindowBound::Full && !c.is_finite() {
        return Err(UsageError(format!("--window full needs a finite basis; `{}` is infinite, use deg<=D", c.spec())).into());
    }
    Ok(BasisWindow::from_coalgebra(c, bound)?)
}

fn projection(text: Option<&str>, c: &CoalgebraInstance) -> Result<ProjectionPair> {
    Ok(match text {
        None => ProjectionPair::full(),
        Some(t) => ProjectionPair::from_keys(parse_key_list(t, c)?),
    })
}

/// Catalogue of spec strings.
pub fn cmd_list(format: Format) -> Result<String> {
    let rows: [(&str, &str, &str); 14] = [
        ("coalgebra", "manin?q=<scalar>", "Manin quantum plane, basis a^i c^j, q nonzero (default 2/3)"),
        ("coalgebra", "divpow", "divided power coalgebra, basis x_n for n >= 0"),
        ("coalgebra", "negdeg?M=<int>", "truncated coalgebra with basis x_n for |n| <= M"),
        ("coalgebra", "matrix?n=<int>", "matrix coalgebra, basis E_i_j for 1 <= i,j <= n"),
        ("form", "manin-orth?w=<family>", "orthogonal form on the Manin plane, w(i,j) = f(i)f(j)"),
        ("form", "manin-skew?mu=<family>", "skew form on the Manin plane, mu(i,j,k,l) = f(i)f(j)f(k)f(l)"),
        ("form", "diag?w=<family>", "diagonal form on divpow or negdeg"),
        ("form", "matrix-orth", "makes E_i_j orthonormal"),
        ("form", "matrix-weighted?w=<family>", "weighted form pairing keys with equal i-j"),
        ("weight", "one", "w(i) = 1"),
        ("weight", "factorial", "w(i) = i!, natural indices only"),
        ("weight", "absfactorial", "w(i) = |i|!"),
        ("weight", "geom:<rational>", "w(i) = r^i, r > 0"),
        ("weight", "poly:<int>", "w(i) = (|i|+1)^k"),
    ];
    Ok(match format {
        Format::Text => {
            let width = rows.iter().map(|r| r.1.len()).max().unwrap_or(0);
            let mut out = String::new();
            for kind in ["coalgebra", "form", "weight"] {
                out.push_str(&format!("{kind}s:\n"));
                for (_, spec, desc) in rows.iter().filter(|r| r.0 == kind) {
                    out.push_str(&format!("  {spec:<width$}  {desc}\n"));
                }
            }
            out
        }
        Format::Json => {
            let mut obj = serde_json::Map::new();
            for kind in ["coalgebra", "form", "weight"] {
                let items: Vec<Value> = rows
                    .iter()
                    .filter(|r| r.0 == kind)
                    .map(|(_, spec, desc)| serde_json::json!({"spec": spec, "description": desc}))
                    .collect();
                obj.insert(format!("{kind}s"), Value::Array(items));
            }
            json_out(&Value::Object(obj))
        }
        Format::Csv => {
            let mut out = String::from("kind,spec,description\n");
            for (kind, spec, desc) in rows {
                out.push_str(&format!("{kind},{},{}\n", csv_field(spec), csv_field(desc)));
            }
            out
        }
    })
}

pub fn cmd_comul(coalgebra_spec: &str, element: &str, format: Format) -> Result<String> {
    let c = coalgebra(coalgebra_spec)?;
    let t = comul_extend(&c, &parse_element(element, &c)?)?;
    Ok(match format {
        Format::Text => line(t.render()),
        Format::Json => json_out(&t.to_json()),
        Format::Csv => tensor_csv(&t),
    })
}

pub struct OperatorArgs<'a> {
    pub coalgebra: &'a str,
    pub form: &'a str,
    pub symbol: &'a str,
    pub projection: Option<&'a str>,
}

pub fn cmd_apply(args: &OperatorArgs<'_>, element: &str, format: Format) -> Result<String> {
    let c = coalgebra(args.coalgebra)?;
    let f = form(args.form, &c)?;
    let p = projection(args.projection, &c)?;
    let h = OperatorHandle::new(&c, &f, parse_element(args.symbol, &c)?)?.with_projection(p);
    Ok(element_out(&h.apply(&parse_element(element, &c)?)?, format))
}

/// Output plus any warnings meant for stderr.
pub struct Emitted {
    pub output: String,
    pub warnings: Vec<String>,
}

pub fn cmd_matrix(args: &OperatorArgs<'_>, bound: WindowBound, format: Format) -> Result<Emitted> {
    let c = coalgebra(args.coalgebra)?;
    let f = form(args.form, &c)?;
    let win = window(&c, bound)?;
    let p = projection(args.projection, &c)?;
    let h = OperatorHandle::new(&c, &f, parse_element(args.symbol, &c)?)?.with_projection(p);
    let m = operator_matrix(&h, &win)?;
    let mut warnings = Vec::new();
    let output = match format {
        Format::Text => m.to_text(),
        Format::Json => json_out(&m.to_json()),
        Format::Csv => {
            if !m.leakage.is_empty() {
                let from: Vec<String> = m.leakage.iter().map(|l| l.from.to_string()).collect();
                warnings.push(format!("leakage outside the window from {}; csv omits it, use --format json", from.join(", ")));
            }
            m.to_csv()
        }
    };
    Ok(Emitted { output, warnings })
}

pub fn cmd_classify(args: &OperatorArgs<'_>, bound: WindowBound, format: Format) -> Result<String> {
    let c = coalgebra(args.coalgebra)?;
    let f = form(args.form, &c)?;
    let win = window(&c, bound)?;
    let p = projection(args.projection, &c)?;
    let h = OperatorHandle::new(&c, &f, parse_element(args.symbol, &c)?)?.with_projection(p);
    let shifts = cotoeplitz::engine::degree_shifts(&h, &win)?;
    let class = cotoeplitz::classify_shift(&h, &win)?;
    Ok(match format {
        Format::Text => line(class.to_string()),
        Format::Json => json_out(&serde_json::json!({
            "classification": class.label(),
            "shift": class.shift(),
            "shifts": shifts.iter().collect::<Vec<_>>(),
            "window": win.to_json(),
        })),
        Format::Csv => {
            let list: Vec<String> = shifts.iter().map(i64::to_string).collect();
            let shift = class.shift().map(|s| s.to_string()).unwrap_or_default();
            format!("classification,shift,shifts\n{},{},{}\n", class.label(), shift, csv_field(&list.join(" ")))
        }
    })
}

pub fn cmd_gram(coalgebra_spec: &str, form_spec: &str, bound: WindowBound, format: Format) -> Result<String> {
    let c = coalgebra(coalgebra_spec)?;
    let f = form(form_spec, &c)?;
    let g = gram_matrix(&f, &window(&c, bound)?);
    Ok(match format {
        Format::Text => g.to_text(),
        Format::Json => json_out(&g.to_json()),
        Format::Csv => g.to_csv(),
    })
}

/// Structured error body for stderr.
pub fn error_json(kind: &str, message: &str) -> String {
    serde_json::json!({ "error": kind, "message": message }).to_string()
}
