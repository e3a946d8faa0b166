//! Exact co-Toeplitz quantization of coalgebras.
//!
//! For a coalgebra `C` with comultiplication `Δ`, a sesquilinear form
//! `⟨·,·⟩` and a symbol `g ∈ C`, the co-Toeplitz operator is
//! `C_g = π_g ∘ (Q⊗id) ∘ Δ ∘ j` where `π_g(φ⊗f) = ⟨g,f⟩φ` and `(j, Q)` embed
//! and project a coordinate subspace `P`. With `P = C` this is `C_g = π_g Δ`.
//!
//! Everything is computed over Gaussian rationals, so results are exact and
//! tests compare by structural equality.

pub mod coalgebra;
pub mod engine;
pub mod error;
pub mod instances;
pub mod parser;
pub mod scalar;

pub use coalgebra::{
    comul_extend, element_combine, pair_extend, pi_action, project, star_extend, BasisKey, Coalgebra,
    CombineArg, Context, Element, ProjectionPair, SesquilinearForm, TensorElement, TripleTensorElement,
};
pub use engine::{
    apply_simple, check_coassociativity, classify_shift, co_toeplitz_apply, compose_apply, diagonal_eigenvalues,
    gram_matrix, is_positive_definite, operator_matrix, verify_antilinearity, BasisWindow, Classification,
    MatrixResult, OperatorHandle,
};
pub use error::{Error, Result};
pub use instances::{make_form, CoalgebraInstance, CoalgebraKind, Form, FormSpec, Holomorphy, WeightFamily, WindowBound};
pub use parser::{parse_coalgebra_spec, parse_element, parse_form_spec, parse_spec, parse_weight, render_element};
pub use scalar::{GaussianRational, Rational};
