use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde_json::{json, Value};

use super::OperatorHandle;
use crate::coalgebra::{BasisKey, Element};
use crate::error::{Error, Result};
use crate::instances::{CoalgebraInstance, WindowBound};
use crate::scalar::GaussianRational;

/// A finite ordered slice of a basis. Keys are distinct and kept in basis
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisWindow {
    keys: Vec<BasisKey>,
    bound: Option<WindowBound>,
}

impl BasisWindow {
    pub fn new(keys: Vec<BasisKey>) -> Result<Self> {
        let set: BTreeSet<BasisKey> = keys.iter().copied().collect();
        if set.len() != keys.len() {
            return Err(Error::InvalidWindow("duplicate keys in window".into()));
        }
        Ok(BasisWindow { keys: set.into_iter().collect(), bound: None })
    }

    pub fn from_coalgebra(coalgebra: &CoalgebraInstance, bound: WindowBound) -> Result<Self> {
        Ok(BasisWindow { keys: coalgebra.basis_window(bound)?, bound: Some(bound) })
    }

    pub fn keys(&self) -> &[BasisKey] {
        &self.keys
    }

    pub fn bound(&self) -> Option<WindowBound> {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn index_of(&self, key: &BasisKey) -> Option<usize> {
        self.keys.binary_search(key).ok()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.keys.iter().map(|k| Value::String(k.to_string())).collect())
    }
}

/// Image of a window key that falls outside the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leak {
    pub from: BasisKey,
    pub escaped: Element,
}

/// Matrix of an operator on a window: `entries[r][c]` is the coefficient of
/// `window[r]` in `C_g(window[c])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixResult {
    pub window: BasisWindow,
    pub entries: Vec<Vec<GaussianRational>>,
    pub leakage: Vec<Leak>,
}

pub fn operator_matrix(h: &OperatorHandle<'_>, win: &BasisWindow) -> Result<MatrixResult> {
    let size = win.len();
    let mut entries = vec![vec![GaussianRational::zero(); size]; size];
    let mut leakage = Vec::new();
    for (col, key) in win.keys().iter().enumerate() {
        let image = h.apply_key(*key)?;
        let escaped = image.filter(|k| win.index_of(k).is_none());
        for (out, coeff) in image.iter() {
            if let Some(row) = win.index_of(out) {
                entries[row][col] = coeff.clone();
            }
        }
        if !escaped.is_zero() {
            leakage.push(Leak { from: *key, escaped });
        }
    }
    Ok(MatrixResult { window: win.clone(), entries, leakage })
}

impl MatrixResult {
    pub fn size(&self) -> usize {
        self.window.len()
    }

    pub fn is_zero(&self) -> bool {
        self.leakage.is_empty() && self.entries.iter().flatten().all(GaussianRational::is_zero)
    }

    /// Columns whose image is not fully inside the window.
    pub fn leaking_columns(&self) -> Vec<usize> {
        self.leakage.iter().filter_map(|l| self.window.index_of(&l.from)).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "window": self.window.to_json(),
            "entries": self.entries.iter()
                .map(|row| Value::Array(row.iter().map(GaussianRational::to_json).collect()))
                .collect::<Vec<_>>(),
            "leakage": self.leakage.iter()
                .map(|l| json!({ "from": l.from.to_string(), "escaped": l.escaped.to_json() }))
                .collect::<Vec<_>>(),
        })
    }

    /// Key-labelled header row and column; cells rendered `re+im i`.
    pub fn to_csv(&self) -> String {
        grid_to_csv(self.window.keys(), &self.entries)
    }

    /// Aligned plain-text table followed by any leakage.
    pub fn to_text(&self) -> String {
        let mut out = grid_to_text(self.window.keys(), &self.entries);
        if self.leakage.is_empty() {
            out.push_str("leakage: none\n");
        } else {
            out.push_str("leakage:\n");
            for l in &self.leakage {
                let _ = writeln!(out, "  {} -> {}", l.from, l.escaped);
            }
        }
        out
    }
}

pub(crate) fn grid_to_csv(keys: &[BasisKey], grid: &[Vec<GaussianRational>]) -> String {
    let mut out = String::new();
    let header: Vec<String> = keys.iter().map(ToString::to_string).collect();
    let _ = writeln!(out, ",{}", header.join(","));
    for (key, row) in keys.iter().zip(grid) {
        let cells: Vec<String> = row.iter().map(GaussianRational::to_csv_string).collect();
        let _ = writeln!(out, "{key},{}", cells.join(","));
    }
    out
}

pub(crate) fn grid_to_text(keys: &[BasisKey], grid: &[Vec<GaussianRational>]) -> String {
    let labels: Vec<String> = keys.iter().map(ToString::to_string).collect();
    let cells: Vec<Vec<String>> = grid.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    let label_w = labels.iter().map(|s| s.chars().count()).max().unwrap_or(0);
    let col_w: Vec<usize> = (0..labels.len())
        .map(|c| {
            cells.iter().map(|r| r[c].chars().count()).chain([labels[c].chars().count()]).max().unwrap_or(0)
        })
        .collect();
    let pad = |s: &str, w: usize| format!("{s}{}", " ".repeat(w.saturating_sub(s.chars().count())));
    let mut out = String::new();
    let mut line = pad("", label_w);
    for (c, l) in labels.iter().enumerate() {
        line.push_str(" | ");
        line.push_str(&pad(l, col_w[c]));
    }
    out.push_str(line.trim_end());
    out.push('\n');
    for (r, row) in cells.iter().enumerate() {
        let mut line = pad(&labels[r], label_w);
        for (c, cell) in row.iter().enumerate() {
            line.push_str(" | ");
            line.push_str(&pad(cell, col_w[c]));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Eigenvalues of an operator that is diagonal in the window basis, as
/// `(value, multiplicity)` in order of first appearance along the diagonal.
pub fn diagonal_eigenvalues(m: &MatrixResult) -> Result<Vec<(GaussianRational, usize)>> {
    if let Some(l) = m.leakage.first() {
        return Err(Error::NotDiagonal(format!("column {} leaks {}", l.from, l.escaped)));
    }
    let keys = m.window.keys();
    for (r, row) in m.entries.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            if r != c && !v.is_zero() {
                return Err(Error::NotDiagonal(format!("entry ({}, {}) = {v}", keys[r], keys[c])));
            }
        }
    }
    let mut order: Vec<GaussianRational> = Vec::new();
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, row) in m.entries.iter().enumerate() {
        let v = &row[i];
        let idx = match order.iter().position(|u| u == v) {
            Some(idx) => idx,
            None => {
                order.push(v.clone());
                order.len() - 1
            }
        };
        *counts.entry(idx).or_default() += 1;
    }
    Ok(order.into_iter().enumerate().map(|(i, v)| (v, counts[&i])).collect())
}
