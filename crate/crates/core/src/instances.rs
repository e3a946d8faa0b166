//! The four concrete coalgebras, their weight families and sesquilinear
//! forms, plus the quantum-plane normal-ordering product.

use std::fmt;

use crate::coalgebra::{BasisKey, Coalgebra, Context, Element, SesquilinearForm, TensorElement};
use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Rational};

/// Which concrete coalgebra, with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoalgebraKind {
    /// Quantum plane `ac = q ca`, `Δa = a⊗a`, `Δc = c⊗a`.
    Manin { q: GaussianRational },
    /// Basis `x_n`, `n ≥ 0`, `Δx_n = Σ_{i+j=n} x_i⊗x_j`.
    DividedPower,
    /// Basis `x_n`, `|n| ≤ m`, same comultiplication truncated to the range.
    NegativeDegree { m: u32 },
    /// Basis `E_{i,j}`, `1 ≤ i,j ≤ n`, `ΔE_{i,j} = Σ_k E_{i,k}⊗E_{k,j}`.
    Matrix { n: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraInstance {
    kind: CoalgebraKind,
    context: Context,
}

/// Bound used to cut a finite window out of a basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WindowBound {
    MaxDegree(i64),
    Full,
}

impl fmt::Display for WindowBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WindowBound::MaxDegree(d) => write!(f, "deg<={d}"),
            WindowBound::Full => f.write_str("full"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Holomorphy {
    Holomorphic,
    AntiHolomorphic,
    Real,
    None,
}

impl fmt::Display for Holomorphy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Holomorphy::Holomorphic => "holomorphic",
            Holomorphy::AntiHolomorphic => "anti-holomorphic",
            Holomorphy::Real => "real",
            Holomorphy::None => "none",
        })
    }
}

const MAX_SIZE_PARAMETER: u32 = 1 << 20;

impl CoalgebraInstance {
    pub fn manin(q: GaussianRational) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::InvalidParameter("manin: q must be non-zero".into()));
        }
        Ok(Self::from_kind(CoalgebraKind::Manin { q }))
    }

    pub fn divided_power() -> Self {
        Self::from_kind(CoalgebraKind::DividedPower)
    }

    pub fn negative_degree(m: u32) -> Result<Self> {
        if m == 0 || m > MAX_SIZE_PARAMETER {
            return Err(Error::InvalidParameter(format!("negdeg: M must satisfy 1 <= M <= {MAX_SIZE_PARAMETER}, got {m}")));
        }
        Ok(Self::from_kind(CoalgebraKind::NegativeDegree { m }))
    }

    pub fn matrix(n: u32) -> Result<Self> {
        if n == 0 || n > MAX_SIZE_PARAMETER {
            return Err(Error::InvalidParameter(format!("matrix: n must satisfy 1 <= n <= {MAX_SIZE_PARAMETER}, got {n}")));
        }
        Ok(Self::from_kind(CoalgebraKind::Matrix { n }))
    }

    fn from_kind(kind: CoalgebraKind) -> Self {
        let spec = match &kind {
            CoalgebraKind::Manin { q } => format!("manin?q={q}"),
            CoalgebraKind::DividedPower => "divpow".to_string(),
            CoalgebraKind::NegativeDegree { m } => format!("negdeg?M={m}"),
            CoalgebraKind::Matrix { n } => format!("matrix?n={n}"),
        };
        CoalgebraInstance { kind, context: Context::new(spec) }
    }

    pub fn kind(&self) -> &CoalgebraKind {
        &self.kind
    }

    /// Short family name: `manin`, `divpow`, `negdeg` or `matrix`.
    pub fn name(&self) -> &'static str {
        match self.kind {
            CoalgebraKind::Manin { .. } => "manin",
            CoalgebraKind::DividedPower => "divpow",
            CoalgebraKind::NegativeDegree { .. } => "negdeg",
            CoalgebraKind::Matrix { .. } => "matrix",
        }
    }

    /// Canonical spec string, also the context id of its elements.
    pub fn spec(&self) -> &str {
        self.context.as_str()
    }

    pub fn q(&self) -> Option<&GaussianRational> {
        match &self.kind {
            CoalgebraKind::Manin { q } => Some(q),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, CoalgebraKind::NegativeDegree { .. } | CoalgebraKind::Matrix { .. })
    }

    pub fn dimension(&self) -> Option<u64> {
        match self.kind {
            CoalgebraKind::NegativeDegree { m } => Some(2 * u64::from(m) + 1),
            CoalgebraKind::Matrix { n } => Some(u64::from(n) * u64::from(n)),
            _ => None,
        }
    }

    pub fn has_star(&self) -> bool {
        self.is_finite()
    }

    /// Basis keys inside the bound, in basis order.
    pub fn basis_window(&self, bound: WindowBound) -> Result<Vec<BasisKey>> {
        let max = match bound {
            WindowBound::MaxDegree(d) => Some(d),
            WindowBound::Full if self.is_finite() => None,
            WindowBound::Full => {
                return Err(Error::InvalidWindow(format!(
                    "`full` needs a finite basis; `{}` is infinite, use deg<=D",
                    self.spec()
                )))
            }
        };
        let within = |d: i64| max.is_none_or(|m| d <= m);
        let mut keys: Vec<BasisKey> = match self.kind {
            CoalgebraKind::Manin { .. } => {
                let d = max.unwrap_or(0).max(-1);
                (0..=d)
                    .flat_map(|deg| (0..=deg).map(move |a| (a, deg - a)))
                    .map(|(a, c)| BasisKey::Manin { a: a as u32, c: c as u32 })
                    .collect()
            }
            CoalgebraKind::DividedPower => {
                let d = max.unwrap_or(0);
                (0..=d).map(|n| BasisKey::Divided(n as u32)).collect()
            }
            CoalgebraKind::NegativeDegree { m } => {
                let m = m as i32;
                (-m..=m).filter(|&i| within(i64::from(i))).map(BasisKey::NegDeg).collect()
            }
            CoalgebraKind::Matrix { n } => (1..=n)
                .flat_map(|row| (1..=n).map(move |col| BasisKey::Matrix { row, col }))
                .filter(|k| within(k.natural_degree()))
                .collect(),
        };
        keys.sort();
        Ok(keys)
    }

    /// Holomorphic / anti-holomorphic / real labels for the starred coalgebras.
    pub fn holomorphic_class(&self, key: &BasisKey) -> Result<Holomorphy> {
        self.validate_key(key)?;
        match (&self.kind, key) {
            (CoalgebraKind::NegativeDegree { .. }, BasisKey::NegDeg(i)) => Ok(match i.signum() {
                1 => Holomorphy::Holomorphic,
                -1 => Holomorphy::AntiHolomorphic,
                // x_0 is deliberately left unclassified
                _ => Holomorphy::None,
            }),
            (CoalgebraKind::Matrix { .. }, BasisKey::Matrix { row, col }) => Ok(match row.cmp(col) {
                std::cmp::Ordering::Less => Holomorphy::Holomorphic,
                std::cmp::Ordering::Greater => Holomorphy::AntiHolomorphic,
                std::cmp::Ordering::Equal => Holomorphy::Real,
            }),
            _ => Err(Error::Unclassified(self.spec().to_string())),
        }
    }

    fn out_of_range(&self, key: &BasisKey) -> Error {
        Error::KeyOutOfRange { key: key.to_string(), context: self.spec().to_string() }
    }
}

impl fmt::Display for CoalgebraInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.spec())
    }
}

impl Coalgebra for CoalgebraInstance {
    fn context(&self) -> &Context {
        &self.context
    }

    fn validate_key(&self, key: &BasisKey) -> Result<()> {
        match (&self.kind, key) {
            (CoalgebraKind::Manin { .. }, BasisKey::Manin { .. }) => Ok(()),
            (CoalgebraKind::DividedPower, BasisKey::Divided(_)) => Ok(()),
            (CoalgebraKind::NegativeDegree { m }, BasisKey::NegDeg(i)) => {
                if i.unsigned_abs() <= *m {
                    Ok(())
                } else {
                    Err(self.out_of_range(key))
                }
            }
            (CoalgebraKind::Matrix { n }, BasisKey::Matrix { row, col }) => {
                if (1..=*n).contains(row) && (1..=*n).contains(col) {
                    Ok(())
                } else {
                    Err(self.out_of_range(key))
                }
            }
            _ => Err(Error::WrongCoalgebra { key: key.to_string(), context: self.spec().to_string() }),
        }
    }

    fn comul_key(&self, key: &BasisKey) -> Result<TensorElement> {
        self.validate_key(key)?;
        let ctx = self.context.clone();
        match (&self.kind, *key) {
            (CoalgebraKind::Manin { .. }, BasisKey::Manin { a, c }) => Ok(manin_comul(ctx, a, c)),
            (CoalgebraKind::DividedPower, BasisKey::Divided(n)) => Ok(divided_comul(ctx, n)),
            (CoalgebraKind::NegativeDegree { m }, BasisKey::NegDeg(n)) => negdeg_comul(ctx, n, *m),
            (CoalgebraKind::Matrix { n }, BasisKey::Matrix { row, col }) => matrix_comul(ctx, row, col, *n),
            _ => unreachable!("validate_key accepted a key of another family"),
        }
    }

    fn degree(&self, key: &BasisKey) -> Option<i64> {
        self.validate_key(key).ok().map(|_| key.natural_degree())
    }

    fn star_key(&self, key: &BasisKey) -> Result<BasisKey> {
        self.validate_key(key)?;
        match *key {
            BasisKey::NegDeg(i) => Ok(BasisKey::NegDeg(-i)),
            BasisKey::Matrix { row, col } => Ok(BasisKey::Matrix { row: col, col: row }),
            _ => Err(Error::StarUndefined(self.spec().to_string())),
        }
    }
}

fn one() -> GaussianRational {
    GaussianRational::one()
}

/// `Δ(a^k c^l) = a^k c^l ⊗ a^{k+l}`.
pub fn manin_comul(ctx: Context, a: u32, c: u32) -> TensorElement {
    TensorElement::unit(ctx, (BasisKey::Manin { a, c }, BasisKey::Manin { a: a + c, c: 0 }))
}

/// `Δ(x_n) = Σ_{i+j=n} x_i⊗x_j`, `n+1` terms.
pub fn divided_comul(ctx: Context, n: u32) -> TensorElement {
    TensorElement::from_terms(ctx, (0..=n).map(|i| ((BasisKey::Divided(i), BasisKey::Divided(n - i)), one())))
}

/// The divided-power sum restricted to `|i|, |n−i| ≤ M`; `2M+1−|n|` terms.
pub fn negdeg_comul(ctx: Context, n: i32, m: u32) -> Result<TensorElement> {
    if n.unsigned_abs() > m {
        return Err(Error::KeyOutOfRange { key: format!("x_{n}"), context: format!("negdeg?M={m}") });
    }
    let m = m as i32;
    let lo = (-m).max(n - m);
    let hi = m.min(n + m);
    Ok(TensorElement::from_terms(
        ctx,
        (lo..=hi).map(|i| ((BasisKey::NegDeg(i), BasisKey::NegDeg(n - i)), one())),
    ))
}

/// `Δ(E_{i,j}) = Σ_k E_{i,k}⊗E_{k,j}`, `n` terms.
pub fn matrix_comul(ctx: Context, row: u32, col: u32, n: u32) -> Result<TensorElement> {
    if !(1..=n).contains(&row) || !(1..=n).contains(&col) {
        return Err(Error::KeyOutOfRange { key: format!("E_{row}_{col}"), context: format!("matrix?n={n}") });
    }
    Ok(TensorElement::from_terms(
        ctx,
        (1..=n).map(|k| {
            ((BasisKey::Matrix { row, col: k }, BasisKey::Matrix { row: k, col }), one())
        }),
    ))
}

/// Normal-ordered product `(a^i c^j)(a^k c^l) = q^{-jk} a^{i+k} c^{j+l}`,
/// from moving each of the `j` letters `c` past each of the `k` letters `a`
/// with `ca = q^{-1} ac`.
pub fn manin_product(u: (u32, u32), v: (u32, u32), q: &GaussianRational) -> Result<(GaussianRational, BasisKey)> {
    let (i, j) = u;
    let (k, l) = v;
    let swaps = i64::from(j) * i64::from(k);
    Ok((q.pow(-swaps)?, BasisKey::Manin { a: i + k, c: j + l }))
}

fn manin_parts(key: &BasisKey) -> Result<(u32, u32)> {
    match *key {
        BasisKey::Manin { a, c } => Ok((a, c)),
        other => Err(Error::WrongCoalgebra { key: other.to_string(), context: "manin".into() }),
    }
}

/// Product of two quantum-plane elements, bilinear extension of [`manin_product`].
pub fn manin_element_product(x: &Element, y: &Element, q: &GaussianRational) -> Result<Element> {
    x.context().ensure_same(y.context())?;
    let mut terms = Vec::with_capacity(x.len() * y.len());
    for (u, cu) in x.iter() {
        for (v, cv) in y.iter() {
            let (coef, key) = manin_product(manin_parts(u)?, manin_parts(v)?, q)?;
            terms.push((key, &(cu * cv) * &coef));
        }
    }
    Ok(Element::from_terms(x.context().clone(), terms))
}

/// Componentwise product on `C⊗C`: `(u1⊗u2)(v1⊗v2) = u1v1 ⊗ u2v2`.
pub fn manin_tensor_product(x: &TensorElement, y: &TensorElement, q: &GaussianRational) -> Result<TensorElement> {
    x.context().ensure_same(y.context())?;
    let mut terms = Vec::with_capacity(x.len() * y.len());
    for ((u1, u2), cu) in x.iter() {
        for ((v1, v2), cv) in y.iter() {
            let (c1, k1) = manin_product(manin_parts(u1)?, manin_parts(v1)?, q)?;
            let (c2, k2) = manin_product(manin_parts(u2)?, manin_parts(v2)?, q)?;
            terms.push(((k1, k2), &(&(cu * cv) * &c1) * &c2));
        }
    }
    Ok(TensorElement::from_terms(x.context().clone(), terms))
}

/// Index set a weight family is evaluated on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexDomain {
    Natural,
    Integer,
}

/// One-argument positive weight families. Multi-argument weights are
/// products of one family applied to each argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightFamily {
    One,
    /// `i!`, natural indices only.
    Factorial,
    /// `r^i` for a positive rational `r`.
    Geom(Rational),
    /// `(|i|+1)^k`.
    Poly(u32),
    /// `|i|!`.
    AbsFactorial,
}

impl WeightFamily {
    pub fn geom(r: Rational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::InvalidParameter(format!("geom ratio must be positive, got {r}")));
        }
        Ok(WeightFamily::Geom(r))
    }

    pub fn check_domain(&self, domain: IndexDomain) -> Result<()> {
        match (self, domain) {
            (WeightFamily::Factorial, IndexDomain::Integer) => Err(Error::InvalidWeightDomain(
                "factorial is undefined on negative indices; use absfactorial".into(),
            )),
            (WeightFamily::Geom(r), _) if !r.is_positive() => {
                Err(Error::InvalidWeightDomain(format!("geom ratio {r} is not positive")))
            }
            _ => Ok(()),
        }
    }

    /// Strictly positive on the family's domain.
    pub fn eval(&self, i: i64) -> Result<Rational> {
        let factorial = |n: u64| (1..=n).fold(Rational::one(), |acc, k| acc * Rational::from_integer(k));
        match self {
            WeightFamily::One => Ok(Rational::one()),
            WeightFamily::Factorial => {
                if i < 0 {
                    Err(Error::InvalidWeightDomain(format!("factorial({i})")))
                } else {
                    Ok(factorial(i as u64))
                }
            }
            WeightFamily::AbsFactorial => Ok(factorial(i.unsigned_abs())),
            WeightFamily::Geom(r) => {
                let e = i32::try_from(i).map_err(|_| Error::InvalidParameter(format!("exponent {i} too large")))?;
                r.pow(e)
            }
            WeightFamily::Poly(k) => Rational::from_integer(i.unsigned_abs() + 1).pow(*k as i32),
        }
    }

    /// Product `f(i_1)·…·f(i_r)`.
    pub fn eval_product(&self, args: &[i64]) -> Result<Rational> {
        args.iter().try_fold(Rational::one(), |acc, &i| Ok(acc * self.eval(i)?))
    }

    pub fn spec(&self) -> String {
        match self {
            WeightFamily::One => "one".into(),
            WeightFamily::Factorial => "factorial".into(),
            WeightFamily::AbsFactorial => "absfactorial".into(),
            WeightFamily::Geom(r) => format!("geom:{r}"),
            WeightFamily::Poly(k) => format!("poly:{k}"),
        }
    }
}

impl fmt::Display for WeightFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

/// The five sesquilinear forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormSpec {
    /// `⟨a^i c^j, a^k c^l⟩ = δ_{i,k} δ_{j,l} w(i) w(j)`.
    ManinOrthogonal(WeightFamily),
    /// `⟨a^i c^j, a^k c^l⟩ = δ_{i−j,k−l} μ(i) μ(j) μ(k) μ(l)`.
    ManinSkew(WeightFamily),
    /// `⟨x_i, x_j⟩ = w(i) δ_{i,j}`, for both divided-power coalgebras.
    Diagonal(WeightFamily),
    MatrixOrthonormal,
    /// `⟨E_{i,j}, E_{r,s}⟩ = w(i+s) δ_{i−j,r−s}`.
    MatrixWeighted(WeightFamily),
}

impl FormSpec {
    pub fn spec(&self) -> String {
        match self {
            FormSpec::ManinOrthogonal(w) => format!("manin-orth?w={w}"),
            FormSpec::ManinSkew(w) => format!("manin-skew?mu={w}"),
            FormSpec::Diagonal(w) => format!("diag?w={w}"),
            FormSpec::MatrixOrthonormal => "matrix-orth".into(),
            FormSpec::MatrixWeighted(w) => format!("matrix-weighted?w={w}"),
        }
    }

    pub fn weight(&self) -> Option<&WeightFamily> {
        match self {
            FormSpec::ManinOrthogonal(w)
            | FormSpec::ManinSkew(w)
            | FormSpec::Diagonal(w)
            | FormSpec::MatrixWeighted(w) => Some(w),
            FormSpec::MatrixOrthonormal => None,
        }
    }
}

impl fmt::Display for FormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

/// A form bound to a coalgebra.
#[derive(Clone, Debug)]
pub struct Form {
    spec: FormSpec,
    name: String,
    context: Context,
    hermiticity_warning: bool,
}

/// Degree bound of the exhaustive Hermiticity sample for the skew form.
const SKEW_HERMITICITY_DEGREE: i64 = 6;

pub fn make_form(spec: &FormSpec, coalgebra: &CoalgebraInstance) -> Result<Form> {
    let domain = match (spec, coalgebra.kind()) {
        (FormSpec::ManinOrthogonal(_) | FormSpec::ManinSkew(_), CoalgebraKind::Manin { .. }) => IndexDomain::Natural,
        (FormSpec::Diagonal(_), CoalgebraKind::DividedPower) => IndexDomain::Natural,
        (FormSpec::Diagonal(_), CoalgebraKind::NegativeDegree { .. }) => IndexDomain::Integer,
        (FormSpec::MatrixOrthonormal | FormSpec::MatrixWeighted(_), CoalgebraKind::Matrix { .. }) => {
            IndexDomain::Natural
        }
        _ => {
            return Err(Error::FormMismatch { form: spec.spec(), coalgebra: coalgebra.spec().to_string() });
        }
    };
    if let Some(w) = spec.weight() {
        w.check_domain(domain)?;
    }
    let mut form = Form {
        spec: spec.clone(),
        name: spec.spec(),
        context: coalgebra.context().clone(),
        hermiticity_warning: false,
    };
    if matches!(spec, FormSpec::ManinSkew(_)) {
        let window = coalgebra.basis_window(WindowBound::MaxDegree(SKEW_HERMITICITY_DEGREE))?;
        form.hermiticity_warning = !window.iter().all(|b| {
            window.iter().all(|b2| form.pair_basis(b, b2) == form.pair_basis(b2, b).conj())
        });
    }
    Ok(form)
}

impl Form {
    pub fn spec(&self) -> &FormSpec {
        &self.spec
    }

    /// Set when a window-bounded exhaustive check found a non-Hermitian pair.
    pub fn hermiticity_warning(&self) -> bool {
        self.hermiticity_warning
    }

    fn weight(w: &WeightFamily, args: &[i64]) -> GaussianRational {
        GaussianRational::real(w.eval_product(args).expect("weight domain checked when the form was made"))
    }
}

impl SesquilinearForm for Form {
    fn name(&self) -> &str {
        &self.name
    }

    fn context(&self) -> &Context {
        &self.context
    }

    fn pair_basis(&self, left: &BasisKey, right: &BasisKey) -> GaussianRational {
        let zero = GaussianRational::zero;
        match (&self.spec, *left, *right) {
            (FormSpec::ManinOrthogonal(w), BasisKey::Manin { a: i, c: j }, BasisKey::Manin { a: k, c: l }) => {
                if i == k && j == l {
                    Self::weight(w, &[i64::from(i), i64::from(j)])
                } else {
                    zero()
                }
            }
            (FormSpec::ManinSkew(mu), BasisKey::Manin { a: i, c: j }, BasisKey::Manin { a: k, c: l }) => {
                let (i, j, k, l) = (i64::from(i), i64::from(j), i64::from(k), i64::from(l));
                if i - j == k - l {
                    Self::weight(mu, &[i, j, k, l])
                } else {
                    zero()
                }
            }
            (FormSpec::Diagonal(w), BasisKey::Divided(i), BasisKey::Divided(j)) if i == j => {
                Self::weight(w, &[i64::from(i)])
            }
            (FormSpec::Diagonal(w), BasisKey::NegDeg(i), BasisKey::NegDeg(j)) if i == j => {
                Self::weight(w, &[i64::from(i)])
            }
            (FormSpec::MatrixOrthonormal, BasisKey::Matrix { .. }, BasisKey::Matrix { .. }) if left == right => {
                GaussianRational::one()
            }
            (
                FormSpec::MatrixWeighted(w),
                BasisKey::Matrix { row: i, col: j },
                BasisKey::Matrix { row: r, col: s },
            ) => {
                let (i, j, r, s) = (i64::from(i), i64::from(j), i64::from(r), i64::from(s));
                if i - j == r - s {
                    Self::weight(w, &[i + s])
                } else {
                    zero()
                }
            }
            _ => zero(),
        }
    }
}
