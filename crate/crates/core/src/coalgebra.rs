//! Coalgebra-independent machinery: basis keys, finitely supported linear
//! combinations over keys and key tuples, and the maps built from a
//! comultiplication and a sesquilinear form.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// Identifies the coalgebra a value lives in. Two values can only be
/// combined when their contexts are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Context(Arc<str>);

impl Context {
    pub fn new(id: impl Into<Arc<str>>) -> Self {
        Context(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn ensure_same(&self, other: &Context) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch { left: self.to_string(), right: other.to_string() })
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Label of a distinguished basis vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisKey {
    /// `a^a c^c` in the quantum plane.
    Manin { a: u32, c: u32 },
    /// `x_n`, `n ≥ 0`.
    Divided(u32),
    /// `x_n` with `|n| ≤ M`.
    NegDeg(i32),
    /// `E_{row,col}`, both one-based.
    Matrix { row: u32, col: u32 },
}

impl BasisKey {
    /// The grading carried by the key itself. Every key family in this crate
    /// has one, and the basis order sorts by it first.
    pub fn natural_degree(&self) -> i64 {
        match *self {
            BasisKey::Manin { a, c } => i64::from(a) + i64::from(c),
            BasisKey::Divided(n) => i64::from(n),
            BasisKey::NegDeg(n) => i64::from(n),
            BasisKey::Matrix { row, col } => i64::from(row) + i64::from(col),
        }
    }

    fn family_rank(&self) -> u8 {
        match self {
            BasisKey::Manin { .. } => 0,
            BasisKey::Divided(_) => 1,
            BasisKey::NegDeg(_) => 2,
            BasisKey::Matrix { .. } => 3,
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            BasisKey::Manin { .. } => "manin",
            BasisKey::Divided(_) => "divpow",
            BasisKey::NegDeg(_) => "negdeg",
            BasisKey::Matrix { .. } => "matrix",
        }
    }
}

impl Ord for BasisKey {
    /// Graded-lexicographic: degree first, then lexicographic on the key.
    /// Manin monomials follow the lex monomial order with `a > c`, so
    /// `a^1 c^0` precedes `a^0 c^1`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.family_rank()
            .cmp(&other.family_rank())
            .then_with(|| self.natural_degree().cmp(&other.natural_degree()))
            .then_with(|| match (self, other) {
                (BasisKey::Manin { a: a1, .. }, BasisKey::Manin { a: a2, .. }) => a2.cmp(a1),
                (
                    BasisKey::Matrix { row: r1, col: c1 },
                    BasisKey::Matrix { row: r2, col: c2 },
                ) => (r1, c1).cmp(&(r2, c2)),
                _ => Ordering::Equal,
            })
    }
}

impl PartialOrd for BasisKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKey::Manin { a, c } => write!(f, "a^{a} c^{c}"),
            BasisKey::Divided(n) => write!(f, "x_{n}"),
            BasisKey::NegDeg(n) => write!(f, "x_{n}"),
            BasisKey::Matrix { row, col } => write!(f, "E_{row}_{col}"),
        }
    }
}

/// Index types that can label the terms of a linear combination.
pub trait TermKey: Ord + Clone + fmt::Debug {
    fn render(&self) -> String;
    /// Writes the key fields of one JSON term object.
    fn write_json(&self, term: &mut Map<String, Value>);
}

fn tensor_separator(k: &BasisKey) -> &'static str {
    // Manin monomials contain a space; pad the tensor sign to keep terms legible.
    match k {
        BasisKey::Manin { .. } => " ⊗ ",
        _ => "⊗",
    }
}

impl TermKey for BasisKey {
    fn render(&self) -> String {
        self.to_string()
    }
    fn write_json(&self, term: &mut Map<String, Value>) {
        term.insert("key".into(), Value::String(self.to_string()));
    }
}

impl TermKey for (BasisKey, BasisKey) {
    fn render(&self) -> String {
        let sep = tensor_separator(&self.0);
        format!("{}{sep}{}", self.0, self.1)
    }
    fn write_json(&self, term: &mut Map<String, Value>) {
        term.insert("key1".into(), Value::String(self.0.to_string()));
        term.insert("key2".into(), Value::String(self.1.to_string()));
    }
}

impl TermKey for (BasisKey, BasisKey, BasisKey) {
    fn render(&self) -> String {
        let sep = tensor_separator(&self.0);
        format!("{}{sep}{}{sep}{}", self.0, self.1, self.2)
    }
    fn write_json(&self, term: &mut Map<String, Value>) {
        term.insert("key1".into(), Value::String(self.0.to_string()));
        term.insert("key2".into(), Value::String(self.1.to_string()));
        term.insert("key3".into(), Value::String(self.2.to_string()));
    }
}

/// A finitely supported linear combination of keys `K` with Gaussian-rational
/// coefficients. No stored coefficient is ever zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCombination<K: TermKey> {
    context: Context,
    terms: BTreeMap<K, GaussianRational>,
}

pub type Element = LinearCombination<BasisKey>;
pub type TensorElement = LinearCombination<(BasisKey, BasisKey)>;
pub type TripleTensorElement = LinearCombination<(BasisKey, BasisKey, BasisKey)>;

impl<K: TermKey> LinearCombination<K> {
    pub fn zero(context: Context) -> Self {
        LinearCombination { context, terms: BTreeMap::new() }
    }

    pub fn unit(context: Context, key: K) -> Self {
        Self::from_terms(context, [(key, GaussianRational::one())])
    }

    /// Collects terms, summing repeated keys and pruning zeros.
    pub fn from_terms(context: Context, terms: impl IntoIterator<Item = (K, GaussianRational)>) -> Self {
        let mut out = Self::zero(context);
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, key: K, coeff: &GaussianRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn context(&self) -> &Context {
        &self.context
    }

    pub fn coeff(&self, key: &K) -> GaussianRational {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in basis order.
    pub fn iter(&self) -> impl Iterator<Item = (&K, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.context.ensure_same(&other.context)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&-GaussianRational::one()))
    }

    pub fn scale(&self, alpha: &GaussianRational) -> Self {
        if alpha.is_zero() {
            return Self::zero(self.context.clone());
        }
        LinearCombination {
            context: self.context.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * alpha)).collect(),
        }
    }

    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        LinearCombination {
            context: self.context.clone(),
            terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, c)| (k.clone(), c.clone())).collect(),
        }
    }

    /// True if no stored coefficient is zero. Holds for every value the
    /// public API can produce.
    pub fn is_pruned(&self) -> bool {
        self.terms.values().all(|c| !c.is_zero())
    }

    /// `{"coalgebra": ..., "terms": [{"key": ..., "coeff": {...}}, ...]}`,
    /// terms in basis order.
    pub fn to_json(&self) -> Value {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut term = Map::new();
                k.write_json(&mut term);
                term.insert("coeff".into(), c.to_json());
                Value::Object(term)
            })
            .collect();
        let mut obj = Map::new();
        obj.insert("coalgebra".into(), Value::String(self.context.to_string()));
        obj.insert("terms".into(), Value::Array(terms));
        Value::Object(obj)
    }

    /// Canonical text, e.g. `x_0⊗x_2 + x_1⊗x_1` or `2*x_3 - i*x_1`.
    pub fn render(&self) -> String {
        crate::parser::render_terms(self.terms.iter().map(|(k, c)| (k.render(), c)))
    }
}

/// `element_combine`: either an element sum or a scalar multiple.
#[derive(Clone, Debug)]
pub enum CombineArg<'a> {
    Element(&'a Element),
    Scalar(&'a GaussianRational),
}

pub fn element_combine(e1: &Element, arg: CombineArg<'_>) -> Result<Element> {
    match arg {
        CombineArg::Element(e2) => e1.checked_add(e2),
        CombineArg::Scalar(alpha) => Ok(e1.scale(alpha)),
    }
}

impl<K: TermKey> fmt::Display for LinearCombination<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Element {
    /// Tensor product of two elements, `Σ a_b c_b' (b⊗b')`.
    pub fn tensor(&self, other: &Element) -> Result<TensorElement> {
        self.context.ensure_same(&other.context)?;
        let mut out = TensorElement::zero(self.context.clone());
        for (b1, c1) in &self.terms {
            for (b2, c2) in &other.terms {
                out.add_term((*b1, *b2), &(c1 * c2));
            }
        }
        Ok(out)
    }
}

/// A coalgebra with a distinguished basis.
pub trait Coalgebra {
    fn context(&self) -> &Context;

    /// Fails with `KeyOutOfRange` or `WrongCoalgebra` for keys that do not
    /// name a basis vector of this coalgebra.
    fn validate_key(&self, key: &BasisKey) -> Result<()>;

    /// `Δ` on a single basis vector.
    fn comul_key(&self, key: &BasisKey) -> Result<TensorElement>;

    fn degree(&self, key: &BasisKey) -> Option<i64>;

    /// The star of a basis key, or `StarUndefined`.
    fn star_key(&self, key: &BasisKey) -> Result<BasisKey>;

    fn validate(&self, e: &Element) -> Result<()> {
        self.context().ensure_same(e.context())?;
        e.keys().try_for_each(|k| self.validate_key(k))
    }

    fn unit(&self, key: BasisKey) -> Result<Element> {
        self.validate_key(&key)?;
        Ok(Element::unit(self.context().clone(), key))
    }
}

/// A pairing on basis keys; extended conjugate-linearly in the first slot and
/// linearly in the second.
pub trait SesquilinearForm {
    fn name(&self) -> &str;
    fn context(&self) -> &Context;
    fn pair_basis(&self, left: &BasisKey, right: &BasisKey) -> GaussianRational;
}

/// `Δ` extended linearly to elements.
pub fn comul_extend<C: Coalgebra + ?Sized>(coalgebra: &C, e: &Element) -> Result<TensorElement> {
    coalgebra.context().ensure_same(e.context())?;
    let mut out = TensorElement::zero(e.context().clone());
    for (b, c) in e.iter() {
        for (pair, d) in coalgebra.comul_key(b)?.iter() {
            out.add_term(*pair, &(c * d));
        }
    }
    Ok(out)
}

/// `⟨g, f⟩ = Σ conj(g_b) f_b' ⟨b, b'⟩`.
pub fn pair_extend<F: SesquilinearForm + ?Sized>(form: &F, g: &Element, f: &Element) -> Result<GaussianRational> {
    form.context().ensure_same(g.context())?;
    form.context().ensure_same(f.context())?;
    let mut acc = GaussianRational::zero();
    for (b, cg) in g.iter() {
        let cg = cg.conj();
        for (b2, cf) in f.iter() {
            let p = form.pair_basis(b, b2);
            if !p.is_zero() {
                acc += &(&(&cg * cf) * &p);
            }
        }
    }
    Ok(acc)
}

/// `π_g(φ⊗f) = ⟨g, f⟩ φ`, extended linearly over the tensor.
pub fn pi_action<F: SesquilinearForm + ?Sized>(form: &F, g: &Element, t: &TensorElement) -> Result<Element> {
    form.context().ensure_same(g.context())?;
    form.context().ensure_same(t.context())?;
    let conj_symbol: Vec<(BasisKey, GaussianRational)> = g.iter().map(|(b, c)| (*b, c.conj())).collect();
    let mut out = Element::zero(t.context().clone());
    for ((phi, f), c) in t.iter() {
        let mut pairing = GaussianRational::zero();
        for (b, cg) in &conj_symbol {
            let p = form.pair_basis(b, f);
            if !p.is_zero() {
                pairing += &(cg * &p);
            }
        }
        out.add_term(*phi, &(c * &pairing));
    }
    Ok(out)
}

/// Antilinear extension of the star operation.
pub fn star_extend<C: Coalgebra + ?Sized>(coalgebra: &C, e: &Element) -> Result<Element> {
    coalgebra.context().ensure_same(e.context())?;
    let mut out = Element::zero(e.context().clone());
    for (b, c) in e.iter() {
        out.add_term(coalgebra.star_key(b)?, &c.conj());
    }
    Ok(out)
}

/// `(Δ⊗id)` applied to a tensor.
pub fn comul_left<C: Coalgebra + ?Sized>(coalgebra: &C, t: &TensorElement) -> Result<TripleTensorElement> {
    coalgebra.context().ensure_same(t.context())?;
    let mut out = TripleTensorElement::zero(t.context().clone());
    for ((b1, b2), c) in t.iter() {
        for ((u, v), d) in coalgebra.comul_key(b1)?.iter() {
            out.add_term((*u, *v, *b2), &(c * d));
        }
    }
    Ok(out)
}

/// `(id⊗Δ)` applied to a tensor.
pub fn comul_right<C: Coalgebra + ?Sized>(coalgebra: &C, t: &TensorElement) -> Result<TripleTensorElement> {
    coalgebra.context().ensure_same(t.context())?;
    let mut out = TripleTensorElement::zero(t.context().clone());
    for ((b1, b2), c) in t.iter() {
        for ((u, v), d) in coalgebra.comul_key(b2)?.iter() {
            out.add_term((*b1, *u, *v), &(c * d));
        }
    }
    Ok(out)
}

/// The subset `S` of basis keys spanning `P`.
#[derive(Clone)]
pub enum Subset {
    Full,
    Keys(BTreeSet<BasisKey>),
    Predicate(Arc<dyn Fn(&BasisKey) -> bool + Send + Sync>),
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subset::Full => f.write_str("Full"),
            Subset::Keys(k) => f.debug_tuple("Keys").field(k).finish(),
            Subset::Predicate(_) => f.write_str("Predicate(..)"),
        }
    }
}

/// Inclusion `j : P → C` and coordinate projection `Q : C → P` for a
/// coordinate subspace `P = span(S)`.
#[derive(Clone, Debug)]
pub struct ProjectionPair {
    subset: Subset,
}

impl Default for ProjectionPair {
    fn default() -> Self {
        ProjectionPair::full()
    }
}

impl ProjectionPair {
    pub fn full() -> Self {
        ProjectionPair { subset: Subset::Full }
    }

    pub fn from_keys(keys: impl IntoIterator<Item = BasisKey>) -> Self {
        ProjectionPair { subset: Subset::Keys(keys.into_iter().collect()) }
    }

    pub fn from_predicate(pred: impl Fn(&BasisKey) -> bool + Send + Sync + 'static) -> Self {
        ProjectionPair { subset: Subset::Predicate(Arc::new(pred)) }
    }

    pub fn subset(&self) -> &Subset {
        &self.subset
    }

    pub fn is_full(&self) -> bool {
        matches!(self.subset, Subset::Full)
    }

    pub fn contains(&self, key: &BasisKey) -> bool {
        match &self.subset {
            Subset::Full => true,
            Subset::Keys(keys) => keys.contains(key),
            Subset::Predicate(p) => p(key),
        }
    }

    /// `j`: the identity on elements of `P`, rejecting anything outside.
    pub fn include(&self, e: &Element) -> Result<Element> {
        let outside: Vec<String> = e.keys().filter(|k| !self.contains(k)).map(|k| k.to_string()).collect();
        if outside.is_empty() {
            Ok(e.clone())
        } else {
            Err(Error::NotInSubcoalgebra { keys: outside })
        }
    }

    /// `Q`: drops coefficients on keys outside `S`.
    pub fn project(&self, e: &Element) -> Element {
        if self.is_full() {
            return e.clone();
        }
        e.filter(|k| self.contains(k))
    }

    /// `Q⊗id`: drops tensor terms whose first key is outside `S`.
    pub fn project_first(&self, t: &TensorElement) -> TensorElement {
        if self.is_full() {
            return t.clone();
        }
        t.filter(|(k, _)| self.contains(k))
    }
}

/// `project(P, e)` as a free function.
pub fn project(p: &ProjectionPair, e: &Element) -> Element {
    p.project(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::new("test")
    }

    fn x(n: u32) -> Element {
        Element::unit(ctx(), BasisKey::Divided(n))
    }

    fn s(n: i64) -> GaussianRational {
        GaussianRational::from_integer(n)
    }

    struct Factorial;

    impl SesquilinearForm for Factorial {
        fn name(&self) -> &str {
            "factorial"
        }
        fn context(&self) -> &Context {
            static CTX: std::sync::OnceLock<Context> = std::sync::OnceLock::new();
            CTX.get_or_init(ctx)
        }
        fn pair_basis(&self, l: &BasisKey, r: &BasisKey) -> GaussianRational {
            match (l, r) {
                (BasisKey::Divided(i), BasisKey::Divided(j)) if i == j => s((1..=i64::from(*i)).product()),
                _ => GaussianRational::zero(),
            }
        }
    }

    #[test]
    fn cancellation_prunes() {
        let e = x(1).checked_add(&x(2)).unwrap();
        let r = element_combine(&e, CombineArg::Element(&x(2).scale(&s(-1)))).unwrap();
        assert_eq!(r, x(1));
        assert!(r.is_pruned());
    }

    #[test]
    fn scale_by_zero_is_empty() {
        let r = element_combine(&x(3), CombineArg::Scalar(&GaussianRational::zero())).unwrap();
        assert!(r.is_zero());
        assert_eq!(r.len(), 0);
    }

    #[test]
    fn scale_distributes() {
        let a = Element::unit(ctx(), BasisKey::Manin { a: 1, c: 0 });
        let c = Element::unit(ctx(), BasisKey::Manin { a: 0, c: 1 });
        let i = GaussianRational::i();
        let e = a.checked_add(&c).unwrap().scale(&i);
        assert_eq!(e, a.scale(&i).checked_add(&c.scale(&i)).unwrap());
        assert_eq!(e.coeff(&BasisKey::Manin { a: 1, c: 0 }), i);
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let other = Element::unit(Context::new("other"), BasisKey::Divided(1));
        assert!(matches!(x(1).checked_add(&other), Err(Error::ContextMismatch { .. })));
        assert!(matches!(pair_extend(&Factorial, &other, &x(1)), Err(Error::ContextMismatch { .. })));
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pair_extend(&Factorial, &x(2), &x(2)).unwrap(), s(2));
        assert_eq!(pair_extend(&Factorial, &x(1), &x(2)).unwrap(), GaussianRational::zero());
        // conjugate-linear in the first slot
        let ix1 = x(1).scale(&GaussianRational::i());
        assert_eq!(pair_extend(&Factorial, &ix1, &x(1)).unwrap(), -GaussianRational::i());
        assert_eq!(pair_extend(&Factorial, &x(1), &ix1).unwrap(), GaussianRational::i());
    }

    #[test]
    fn pi_action_examples() {
        let t = x(3).tensor(&x(2)).unwrap();
        assert_eq!(pi_action(&Factorial, &x(2), &t).unwrap(), x(3).scale(&s(2)));
        assert!(pi_action(&Factorial, &x(2), &TensorElement::zero(ctx())).unwrap().is_zero());
        let t = x(1).tensor(&x(5)).unwrap();
        assert!(pi_action(&Factorial, &x(0), &t).unwrap().is_zero());
    }

    #[test]
    fn projection_examples() {
        let p = ProjectionPair::from_keys([BasisKey::Divided(0), BasisKey::Divided(1)]);
        let e = x(0).checked_add(&x(2).scale(&s(3))).unwrap();
        assert_eq!(p.project(&e), x(0));
        let inside = x(0).checked_add(&x(1).scale(&s(-7))).unwrap();
        assert_eq!(p.project(&inside), inside);
        assert_eq!(p.project(&p.project(&e)), p.project(&e));
        let empty = ProjectionPair::from_keys([]);
        assert!(empty.project(&e).is_zero());
        assert_eq!(
            p.include(&e),
            Err(Error::NotInSubcoalgebra { keys: vec!["x_2".to_string()] })
        );
        let even = ProjectionPair::from_predicate(|k| k.natural_degree() % 2 == 0);
        assert_eq!(even.project(&e), e);
        assert!(even.project(&x(1)).is_zero());
    }

    #[test]
    fn basis_order_is_graded_lex() {
        let mut keys = vec![
            BasisKey::Manin { a: 0, c: 1 },
            BasisKey::Manin { a: 2, c: 0 },
            BasisKey::Manin { a: 1, c: 0 },
            BasisKey::Manin { a: 0, c: 0 },
        ];
        keys.sort();
        assert_eq!(
            keys,
            vec![
                BasisKey::Manin { a: 0, c: 0 },
                BasisKey::Manin { a: 1, c: 0 },
                BasisKey::Manin { a: 0, c: 1 },
                BasisKey::Manin { a: 2, c: 0 },
            ]
        );
        let mut m = [BasisKey::Matrix { row: 2, col: 1 },
            BasisKey::Matrix { row: 1, col: 1 },
            BasisKey::Matrix { row: 1, col: 2 }];
        m.sort();
        assert_eq!(m[0], BasisKey::Matrix { row: 1, col: 1 });
        assert_eq!(m[1], BasisKey::Matrix { row: 1, col: 2 });
        let mut n = vec![BasisKey::NegDeg(1), BasisKey::NegDeg(-2), BasisKey::NegDeg(0)];
        n.sort();
        assert_eq!(n, vec![BasisKey::NegDeg(-2), BasisKey::NegDeg(0), BasisKey::NegDeg(1)]);
    }

    #[test]
    fn tensor_rendering() {
        let t = x(0).tensor(&x(2)).unwrap().checked_add(&x(1).tensor(&x(1)).unwrap()).unwrap();
        assert_eq!(t.render(), "x_0⊗x_2 + x_1⊗x_1");
        let a = Element::unit(ctx(), BasisKey::Manin { a: 1, c: 1 });
        let b = Element::unit(ctx(), BasisKey::Manin { a: 2, c: 0 });
        assert_eq!(a.tensor(&b).unwrap().render(), "a^1 c^1 ⊗ a^2 c^0");
    }
}
