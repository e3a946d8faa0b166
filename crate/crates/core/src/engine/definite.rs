use serde_json::{json, Value};

use super::matrix::{grid_to_csv, grid_to_text, BasisWindow};
use crate::coalgebra::SesquilinearForm;
use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// Form values on a window, `entries[r][c] = ⟨window[r], window[c]⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    pub window: BasisWindow,
    pub entries: Vec<Vec<GaussianRational>>,
    pub hermitian: bool,
}

pub fn gram_matrix<F: SesquilinearForm + ?Sized>(form: &F, win: &BasisWindow) -> GramMatrix {
    let entries: Vec<Vec<GaussianRational>> = win
        .keys()
        .iter()
        .map(|r| win.keys().iter().map(|c| form.pair_basis(r, c)).collect())
        .collect();
    let hermitian = is_hermitian(&entries);
    GramMatrix { window: win.clone(), entries, hermitian }
}

impl GramMatrix {
    /// `None` when the matrix is not Hermitian and the test does not apply.
    pub fn positive_definite(&self) -> Option<bool> {
        is_positive_definite(&self.entries).ok()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "window": self.window.to_json(),
            "entries": self.entries.iter()
                .map(|row| Value::Array(row.iter().map(GaussianRational::to_json).collect()))
                .collect::<Vec<_>>(),
            "hermitian": self.hermitian,
            "positive_definite": self.positive_definite(),
        })
    }

    pub fn to_csv(&self) -> String {
        grid_to_csv(self.window.keys(), &self.entries)
    }

    pub fn to_text(&self) -> String {
        let mut out = grid_to_text(self.window.keys(), &self.entries);
        out.push_str(&format!("hermitian: {}\n", self.hermitian));
        out.push_str(&match self.positive_definite() {
            Some(true) => "positive-definite: true\n".to_string(),
            Some(false) => "positive-definite: false\n".to_string(),
            None => "positive-definite: n/a (not hermitian)\n".to_string(),
        });
        out
    }
}

fn is_square(m: &[Vec<GaussianRational>]) -> bool {
    m.iter().all(|row| row.len() == m.len())
}

pub fn is_hermitian(m: &[Vec<GaussianRational>]) -> bool {
    is_square(m) && (0..m.len()).all(|r| (r..m.len()).all(|c| m[r][c] == m[c][r].conj()))
}

/// Sylvester's criterion: every leading principal minor is positive.
///
/// Minors come from fraction-free (Bareiss) elimination without pivoting:
/// after step `k` the pivot `a[k][k]` equals the order-`k+1` leading minor,
/// so the first non-positive pivot ends the test.
pub fn is_positive_definite(m: &[Vec<GaussianRational>]) -> Result<bool> {
    if !is_square(m) {
        return Err(Error::NotSquare);
    }
    if !is_hermitian(m) {
        return Err(Error::NotHermitian);
    }
    let n = m.len();
    let mut a: Vec<Vec<GaussianRational>> = m.to_vec();
    let mut prev = GaussianRational::one();
    for k in 0..n {
        let minor = a[k][k].clone();
        debug_assert!(minor.is_real(), "leading minors of a Hermitian matrix are real");
        if !minor.re.is_positive() {
            return Ok(false);
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &minor) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.checked_div(&prev)?;
            }
        }
        prev = minor;
    }
    Ok(true)
}

/// Exact determinant by Bareiss elimination with row pivoting.
pub fn determinant(m: &[Vec<GaussianRational>]) -> Result<GaussianRational> {
    if !is_square(m) {
        return Err(Error::NotSquare);
    }
    let n = m.len();
    let mut a: Vec<Vec<GaussianRational>> = m.to_vec();
    let mut prev = GaussianRational::one();
    let mut negate = false;
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(GaussianRational::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.checked_div(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = if n == 0 { GaussianRational::one() } else { a[n - 1][n - 1].clone() };
    Ok(if negate { -det } else { det })
}
