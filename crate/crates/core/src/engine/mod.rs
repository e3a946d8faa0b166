//! Co-Toeplitz operators `C_g = π_g ∘ (Q⊗id) ∘ Δ ∘ j` and diagnostics built
//! on them.

mod definite;
mod matrix;

use std::collections::BTreeSet;
use std::fmt;

pub use definite::{determinant, gram_matrix, is_positive_definite, GramMatrix};
pub use matrix::{diagonal_eigenvalues, operator_matrix, BasisWindow, Leak, MatrixResult};

use crate::coalgebra::{
    comul_extend, comul_left, comul_right, pi_action, BasisKey, Coalgebra, Element, ProjectionPair,
    SesquilinearForm, TripleTensorElement,
};
use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// A symbol bound to a coalgebra, a form and a projection pair.
#[derive(Clone)]
pub struct OperatorHandle<'a> {
    symbol: Element,
    coalgebra: &'a dyn Coalgebra,
    form: &'a dyn SesquilinearForm,
    projection: ProjectionPair,
}

impl fmt::Debug for OperatorHandle<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OperatorHandle")
            .field("symbol", &self.symbol.render())
            .field("coalgebra", self.coalgebra.context())
            .field("form", &self.form.name())
            .field("projection", &self.projection)
            .finish()
    }
}

impl<'a> OperatorHandle<'a> {
    /// The simple case `P = C`, `j = Q = id`.
    pub fn new(coalgebra: &'a dyn Coalgebra, form: &'a dyn SesquilinearForm, symbol: Element) -> Result<Self> {
        coalgebra.context().ensure_same(form.context())?;
        coalgebra.validate(&symbol)?;
        Ok(OperatorHandle { symbol, coalgebra, form, projection: ProjectionPair::full() })
    }

    pub fn with_projection(mut self, projection: ProjectionPair) -> Self {
        self.projection = projection;
        self
    }

    pub fn symbol(&self) -> &Element {
        &self.symbol
    }

    pub fn coalgebra(&self) -> &'a dyn Coalgebra {
        self.coalgebra
    }

    pub fn form(&self) -> &'a dyn SesquilinearForm {
        self.form
    }

    pub fn projection(&self) -> &ProjectionPair {
        &self.projection
    }

    /// The same coalgebra, form and projection with another symbol.
    pub fn with_symbol(&self, symbol: Element) -> Result<Self> {
        self.coalgebra.validate(&symbol)?;
        Ok(OperatorHandle { symbol, ..self.clone() })
    }

    /// `C_g(φ)`. `φ` must lie in `P`.
    pub fn apply(&self, phi: &Element) -> Result<Element> {
        self.coalgebra.validate(phi)?;
        let included = self.projection.include(phi)?;
        let t = comul_extend(self.coalgebra, &included)?;
        let t = self.projection.project_first(&t);
        pi_action(self.form, &self.symbol, &t)
    }

    pub fn apply_key(&self, key: BasisKey) -> Result<Element> {
        self.apply(&self.coalgebra.unit(key)?)
    }
}

/// `C_g = π_g Δ` computed directly, without the projection machinery.
pub fn apply_simple<C, F>(coalgebra: &C, form: &F, symbol: &Element, phi: &Element) -> Result<Element>
where
    C: Coalgebra + ?Sized,
    F: SesquilinearForm + ?Sized,
{
    pi_action(form, symbol, &comul_extend(coalgebra, phi)?)
}

/// `co_toeplitz_apply` as a free function.
pub fn co_toeplitz_apply(h: &OperatorHandle<'_>, phi: &Element) -> Result<Element> {
    h.apply(phi)
}

/// Applies `hs` right to left: `hs[0] ∘ … ∘ hs[last]`.
pub fn compose_apply(hs: &[OperatorHandle<'_>], phi: &Element) -> Result<Element> {
    if let Some(first) = hs.first() {
        for h in &hs[1..] {
            first.coalgebra.context().ensure_same(h.coalgebra.context())?;
        }
    }
    hs.iter().rev().try_fold(phi.clone(), |acc, h| h.apply(&acc))
}

/// Operator type by degree shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Zero,
    Preservation,
    Creation(u64),
    Annihilation(u64),
    Inhomogeneous(BTreeSet<i64>),
}

impl Classification {
    /// The uniform shift, for homogeneous nonzero operators.
    pub fn shift(&self) -> Option<i64> {
        match self {
            Classification::Preservation => Some(0),
            Classification::Creation(d) => Some(*d as i64),
            Classification::Annihilation(d) => Some(-(*d as i64)),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Classification::Zero => "zero",
            Classification::Preservation => "preservation",
            Classification::Creation(_) => "creation",
            Classification::Annihilation(_) => "annihilation",
            Classification::Inhomogeneous(_) => "inhomogeneous",
        }
    }

    fn from_shifts(shifts: BTreeSet<i64>) -> Self {
        let mut it = shifts.iter();
        match (it.next(), it.next()) {
            (None, _) => Classification::Zero,
            (Some(&0), None) => Classification::Preservation,
            (Some(&d), None) if d > 0 => Classification::Creation(d as u64),
            (Some(&d), None) => Classification::Annihilation(d.unsigned_abs()),
            _ => Classification::Inhomogeneous(shifts),
        }
    }
}

fn signed(d: i64) -> String {
    if d > 0 {
        format!("+{d}")
    } else {
        d.to_string()
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Zero | Classification::Preservation => f.write_str(self.label()),
            Classification::Creation(_) | Classification::Annihilation(_) => {
                write!(f, "{} (degree {})", self.label(), signed(self.shift().expect("homogeneous")))
            }
            Classification::Inhomogeneous(s) => {
                let list: Vec<String> = s.iter().map(|d| signed(*d)).collect();
                write!(f, "inhomogeneous (shifts {})", list.join(", "))
            }
        }
    }
}

/// All degree shifts `deg(out) − deg(in)` of nonzero transitions from
/// window keys, leakage included.
pub fn degree_shifts(h: &OperatorHandle<'_>, win: &BasisWindow) -> Result<BTreeSet<i64>> {
    let no_degree = || Error::NoDegree(h.coalgebra.context().to_string());
    let mut shifts = BTreeSet::new();
    for key in win.keys() {
        let from = h.coalgebra.degree(key).ok_or_else(no_degree)?;
        for (out, _) in h.apply_key(*key)?.iter() {
            shifts.insert(h.coalgebra.degree(out).ok_or_else(no_degree)? - from);
        }
    }
    Ok(shifts)
}

/// Creation / annihilation / preservation relative to the window.
pub fn classify_shift(h: &OperatorHandle<'_>, win: &BasisWindow) -> Result<Classification> {
    Ok(Classification::from_shifts(degree_shifts(h, win)?))
}

/// A basis key where coassociativity fails, with
/// `(Δ⊗id)Δ(b) − (id⊗Δ)Δ(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoassociativityWitness {
    pub key: BasisKey,
    pub difference: TripleTensorElement,
}

impl fmt::Display for CoassociativityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {}", self.key, self.difference)
    }
}

/// Result of the coassociativity diagnostic over a window. Every failing
/// key is kept, in window order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CoassociativityReport {
    pub checked: usize,
    pub witnesses: Vec<CoassociativityWitness>,
}

impl CoassociativityReport {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn first(&self) -> Option<&CoassociativityWitness> {
        self.witnesses.first()
    }

    pub fn witness_for(&self, key: &BasisKey) -> Option<&CoassociativityWitness> {
        self.witnesses.iter().find(|w| w.key == *key)
    }
}

pub fn coassociativity_defect<C: Coalgebra + ?Sized>(coalgebra: &C, key: &BasisKey) -> Result<TripleTensorElement> {
    let d = coalgebra.comul_key(key)?;
    comul_left(coalgebra, &d)?.checked_sub(&comul_right(coalgebra, &d)?)
}

pub fn check_coassociativity<C: Coalgebra + ?Sized>(coalgebra: &C, win: &BasisWindow) -> Result<CoassociativityReport> {
    let mut report = CoassociativityReport::default();
    for key in win.keys() {
        report.checked += 1;
        let difference = coassociativity_defect(coalgebra, key)?;
        if !difference.is_zero() {
            report.witnesses.push(CoassociativityWitness { key: *key, difference });
        }
    }
    Ok(report)
}

/// A probe where `C_{αg+h}(φ) ≠ conj(α) C_g(φ) + C_h(φ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntilinearityCounterexample {
    pub probe: Element,
    pub combined: Element,
    pub expected: Element,
}

impl fmt::Display for AntilinearityCounterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "probe {}: C_(αg+h) gives {}, conj(α)C_g + C_h gives {}", self.probe, self.combined, self.expected)
    }
}

/// Checks antilinearity of `g ↦ C_g` on every probe; `None` means pass.
pub fn verify_antilinearity(
    coalgebra: &dyn Coalgebra,
    form: &dyn SesquilinearForm,
    g: &Element,
    h: &Element,
    alpha: &GaussianRational,
    probes: &[Element],
) -> Result<Option<AntilinearityCounterexample>> {
    let combined_symbol = g.scale(alpha).checked_add(h)?;
    let op_g = OperatorHandle::new(coalgebra, form, g.clone())?;
    let op_h = op_g.with_symbol(h.clone())?;
    let op_combined = op_g.with_symbol(combined_symbol)?;
    let alpha_bar = alpha.conj();
    for probe in probes {
        let combined = op_combined.apply(probe)?;
        let expected = op_g.apply(probe)?.scale(&alpha_bar).checked_add(&op_h.apply(probe)?)?;
        if combined != expected {
            return Ok(Some(AntilinearityCounterexample { probe: probe.clone(), combined, expected }));
        }
    }
    Ok(None)
}
