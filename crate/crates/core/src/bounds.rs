//! Bound families for arcsin on `[0, 1]` and the constants that select their members.
//!
//! Two shapes are covered:
//!
//! * algebraic: `alpha * x / (beta + sqrt(1 - x^2))`, with the matched member
//!   `alpha = b + 1`, the classical Shafer-Fink shape;
//! * square-root: `alpha * (sqrt(1+x) - sqrt(1-x)) / (beta + sqrt(1+x) + sqrt(1-x))`,
//!   with the matched member `alpha = beta + 2`.
//!
//! "Matched" members agree with arcsin in value and first derivative at 0.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{to_f64, Oracle, Real};

/// Closed-form constants that parameterize the named bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Constant {
    Pi,
    Sqrt2,
    /// `2 / (pi - 2)`, least upper bound parameter of the algebraic family.
    AlgebraicUpper,
    /// `sqrt(2) (4 - pi) / (pi - 2 sqrt(2))`, least upper bound parameter of the square-root family.
    B1,
    /// `pi (sqrt(2) + 1/2)`, numerator of Zhu's upper bound.
    ZhuNumerator,
}

impl Constant {
    pub const ALL: [Constant; 5] = [
        Constant::Pi,
        Constant::Sqrt2,
        Constant::AlgebraicUpper,
        Constant::B1,
        Constant::ZhuNumerator,
    ];

    pub fn value(self, o: &Oracle) -> Real {
        let pi = o.pi();
        let s2 = o.sqrt2();
        match self {
            Constant::Pi => pi,
            Constant::Sqrt2 => s2,
            Constant::AlgebraicUpper => o.div(&o.int(2), &o.sub(&pi, &o.int(2))),
            Constant::B1 => {
                let num = o.mul(&s2, &o.sub(&o.int(4), &pi));
                let den = o.sub(&pi, &o.mul(&o.int(2), &s2));
                o.div(&num, &den)
            }
            Constant::ZhuNumerator => o.mul(&pi, &o.add(&s2, &o.real(0.5))),
        }
    }

    pub fn approx(self) -> f64 {
        use std::f64::consts::{PI, SQRT_2};
        match self {
            Constant::Pi => PI,
            Constant::Sqrt2 => SQRT_2,
            Constant::AlgebraicUpper => 2.0 / (PI - 2.0),
            Constant::B1 => SQRT_2 * (4.0 - PI) / (PI - 2.0 * SQRT_2),
            Constant::ZhuNumerator => PI * (SQRT_2 + 0.5),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Constant::Pi => "pi",
            Constant::Sqrt2 => "sqrt2",
            Constant::AlgebraicUpper => "algebraic_upper",
            Constant::B1 => "b1",
            Constant::ZhuNumerator => "zhu_numerator",
        }
    }

    pub fn closed_form(self) -> &'static str {
        match self {
            Constant::Pi => "pi",
            Constant::Sqrt2 => "sqrt(2)",
            Constant::AlgebraicUpper => "2/(pi-2)",
            Constant::B1 => "sqrt(2)(4-pi)/(pi-2sqrt(2))",
            Constant::ZhuNumerator => "pi(sqrt(2)+1/2)",
        }
    }
}

impl FromStr for Constant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        let c = match key.as_str() {
            "pi" => Constant::Pi,
            "sqrt2" | "sqrt(2)" => Constant::Sqrt2,
            "algebraic_upper" | "2/(pi-2)" => Constant::AlgebraicUpper,
            "b1" => Constant::B1,
            "zhu" | "zhu_numerator" | "pi(sqrt(2)+1/2)" => Constant::ZhuNumerator,
            _ => return Err(Error::param(format!("unknown constant {s:?}"))),
        };
        Ok(c)
    }
}

/// A real parameter: either a literal or a named closed form evaluated at the
/// oracle's precision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Value(f64),
    Const(Constant),
}

impl Param {
    pub fn resolve(&self, o: &Oracle) -> Real {
        match *self {
            Param::Value(v) => o.real(v),
            Param::Const(c) => c.value(o),
        }
    }

    pub fn approx(&self) -> f64 {
        match *self {
            Param::Value(v) => v,
            Param::Const(c) => c.approx(),
        }
    }
}

impl From<f64> for Param {
    fn from(v: f64) -> Self {
        Param::Value(v)
    }
}

impl From<Constant> for Param {
    fn from(c: Constant) -> Self {
        Param::Const(c)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Value(v) => write!(f, "{v}"),
            Param::Const(c) => f.write_str(c.name()),
        }
    }
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Param::Value(v)),
            Ok(_) => Err(Error::param(format!("parameter {s:?} is not finite"))),
            Err(_) => s.parse::<Constant>().map(Param::Const),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundFamily {
    /// `(b+1) x / (b + sqrt(1-x^2))`
    AlgebraicShafer,
    /// `alpha x / (beta + sqrt(1-x^2))`
    AlgebraicTwoParam,
    /// `alpha (sqrt(1+x) - sqrt(1-x)) / (beta + sqrt(1+x) + sqrt(1-x))`
    SqrtTwoParam,
    /// square-root family with `alpha = beta + 2`
    SqrtMatched,
}

impl BoundFamily {
    fn takes_alpha(self) -> bool {
        matches!(
            self,
            BoundFamily::AlgebraicTwoParam | BoundFamily::SqrtTwoParam
        )
    }

    fn keyword(self) -> &'static str {
        match self {
            BoundFamily::AlgebraicShafer => "algebraic",
            BoundFamily::AlgebraicTwoParam => "algebraic2",
            BoundFamily::SqrtTwoParam => "sqrt",
            BoundFamily::SqrtMatched => "matched",
        }
    }

    pub fn is_sqrt(self) -> bool {
        matches!(self, BoundFamily::SqrtTwoParam | BoundFamily::SqrtMatched)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundSpec {
    pub family: BoundFamily,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Param>,
    pub beta: Param,
}

impl BoundSpec {
    pub fn algebraic(b: impl Into<Param>) -> Self {
        BoundSpec {
            family: BoundFamily::AlgebraicShafer,
            alpha: None,
            beta: b.into(),
        }
    }

    pub fn algebraic_two_param(alpha: impl Into<Param>, beta: impl Into<Param>) -> Self {
        BoundSpec {
            family: BoundFamily::AlgebraicTwoParam,
            alpha: Some(alpha.into()),
            beta: beta.into(),
        }
    }

    pub fn sqrt_two_param(alpha: impl Into<Param>, beta: impl Into<Param>) -> Self {
        BoundSpec {
            family: BoundFamily::SqrtTwoParam,
            alpha: Some(alpha.into()),
            beta: beta.into(),
        }
    }

    pub fn sqrt_matched(beta: impl Into<Param>) -> Self {
        BoundSpec {
            family: BoundFamily::SqrtMatched,
            alpha: None,
            beta: beta.into(),
        }
    }

    /// Shafer's lower bound `3x / (2 + sqrt(1-x^2))`.
    pub fn shafer_lower() -> Self {
        Self::algebraic(2.0)
    }

    /// Shafer's square-root lower bound, the matched member with `beta = 4`.
    pub fn shafer_sqrt_lower() -> Self {
        Self::sqrt_matched(4.0)
    }

    /// The least upper bound of the square-root family, `beta = b1`.
    pub fn sqrt_upper() -> Self {
        Self::sqrt_matched(Constant::B1)
    }

    /// Zhu's upper bound, `alpha = pi (sqrt(2) + 1/2)`, `beta = 4`.
    pub fn zhu_upper() -> Self {
        Self::sqrt_two_param(Constant::ZhuNumerator, 4.0)
    }

    /// Fink's upper bound `pi x / (2 + sqrt(1-x^2))`.
    pub fn fink_upper() -> Self {
        Self::algebraic_two_param(Constant::Pi, 2.0)
    }

    /// The least upper bound of the algebraic family, `b = 2/(pi-2)`.
    pub fn algebraic_upper() -> Self {
        Self::algebraic(Constant::AlgebraicUpper)
    }

    pub fn preset(name: &str) -> Option<Self> {
        let spec = match name {
            "shafer" | "shafer-lower" => Self::shafer_lower(),
            "shafer-sqrt" | "shafer-sqrt-lower" => Self::shafer_sqrt_lower(),
            "sqrt-upper" | "b1" => Self::sqrt_upper(),
            "zhu" | "zhu-upper" => Self::zhu_upper(),
            "fink" | "fink-upper" => Self::fink_upper(),
            "algebraic-upper" => Self::algebraic_upper(),
            _ => return None,
        };
        Some(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let beta = self.beta.approx();
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::param(format!("beta = {beta} must be positive")));
        }
        match (self.family.takes_alpha(), self.alpha) {
            (true, None) => Err(Error::param(format!(
                "family {:?} requires alpha",
                self.family
            ))),
            (false, Some(_)) => Err(Error::param(format!(
                "family {:?} derives alpha from beta",
                self.family
            ))),
            (true, Some(a)) if !(a.approx().is_finite() && a.approx() > 0.0) => Err(Error::param(
                format!("alpha = {} must be positive", a.approx()),
            )),
            _ => Ok(()),
        }
    }

    /// `(alpha, beta)` at oracle precision, with alpha derived for matched families.
    pub fn params(&self, o: &Oracle) -> (Real, Real) {
        let beta = self.beta.resolve(o);
        let alpha = match self.family {
            BoundFamily::AlgebraicShafer => o.add(&beta, &o.one()),
            BoundFamily::SqrtMatched => o.add(&beta, &o.int(2)),
            _ => self.alpha.map(|a| a.resolve(o)).unwrap_or_else(|| o.zero()),
        };
        (alpha, beta)
    }

    pub fn params_f64(&self) -> (f64, f64) {
        let beta = self.beta.approx();
        let alpha = match self.family {
            BoundFamily::AlgebraicShafer => beta + 1.0,
            BoundFamily::SqrtMatched => beta + 2.0,
            _ => self.alpha.map(|a| a.approx()).unwrap_or(0.0),
        };
        (alpha, beta)
    }
}

impl fmt::Display for BoundSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.alpha {
            Some(a) => write!(f, "{}:alpha={a},beta={}", self.family.keyword(), self.beta),
            None => write!(f, "{}:beta={}", self.family.keyword(), self.beta),
        }
    }
}

/// Accepts a preset name (`shafer`, `shafer-sqrt`, `sqrt-upper`, `zhu`, `fink`,
/// `algebraic-upper`) or `family:key=value,...` with family one of
/// `algebraic`, `algebraic2`, `sqrt`, `matched` and keys `alpha`, `beta` (`b` is
/// an alias of `beta`).
impl FromStr for BoundSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(p) = Self::preset(s) {
            return Ok(p);
        }
        let (fam, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::param(format!("unrecognised bound {s:?}")))?;
        let family = match fam {
            "algebraic" => BoundFamily::AlgebraicShafer,
            "algebraic2" => BoundFamily::AlgebraicTwoParam,
            "sqrt" => BoundFamily::SqrtTwoParam,
            "matched" => BoundFamily::SqrtMatched,
            _ => return Err(Error::param(format!("unknown family {fam:?}"))),
        };
        let mut alpha = None;
        let mut beta = None;
        for kv in rest.split(',').filter(|t| !t.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::param(format!("expected key=value, got {kv:?}")))?;
            match k.trim() {
                "alpha" => alpha = Some(v.parse()?),
                "beta" | "b" => beta = Some(v.parse()?),
                other => return Err(Error::param(format!("unknown key {other:?}"))),
            }
        }
        let spec = BoundSpec {
            family,
            alpha,
            beta: beta.ok_or_else(|| Error::param("missing beta"))?,
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Value of the bound at `x` in `[0, 1]`, at the oracle's precision.
pub fn eval_bound(spec: &BoundSpec, x: &Real, o: &Oracle) -> Result<Real> {
    spec.validate()?;
    o.check_unit(x, "x")?;
    if x.is_zero() {
        return Ok(o.zero());
    }
    let (alpha, beta) = spec.params(o);
    let one = o.one();
    let sp = o.sqrt(&o.add(&one, x));
    let sm = o.sqrt(&o.sub(&one, x));
    let v = if spec.family.is_sqrt() {
        let num = o.mul(&alpha, &o.sub(&sp, &sm));
        let den = o.add(&beta, &o.add(&sp, &sm));
        o.div(&num, &den)
    } else {
        // sqrt(1 - x^2) as sqrt(1-x) sqrt(1+x)
        let root = o.mul(&sp, &sm);
        o.div(&o.mul(&alpha, x), &o.add(&beta, &root))
    };
    o.finite(v, "bound value")
}

/// Machine-precision evaluation of the same formulas.
pub fn eval_bound_f64(spec: &BoundSpec, x: f64) -> Result<f64> {
    spec.validate()?;
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            what: "x",
            value: x,
            domain: "[0, 1]",
        });
    }
    let (alpha, beta) = spec.params_f64();
    Ok(eval_unchecked_f64(spec.family, alpha, beta, x))
}

/// Hot-loop evaluation with pre-resolved parameters; no validation.
#[inline]
pub fn eval_unchecked_f64(family: BoundFamily, alpha: f64, beta: f64, x: f64) -> f64 {
    let sp = (1.0 + x).sqrt();
    let sm = (1.0 - x).sqrt();
    if family.is_sqrt() {
        alpha * (sp - sm) / (beta + sp + sm)
    } else {
        alpha * x / (beta + sp * sm)
    }
}

/// A curve on `[0, 1]`: either arcsin itself or a bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Curve {
    Arcsin,
    Bound(BoundSpec),
}

impl Curve {
    pub fn eval(&self, x: &Real, o: &Oracle) -> Result<Real> {
        match self {
            Curve::Arcsin => o.arcsin(x),
            Curve::Bound(spec) => eval_bound(spec, x, o),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Curve::Arcsin => "arcsin".to_string(),
            Curve::Bound(spec) => spec.to_string(),
        }
    }
}

impl From<BoundSpec> for Curve {
    fn from(spec: BoundSpec) -> Self {
        Curve::Bound(spec)
    }
}

impl FromStr for Curve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "arcsin" {
            Ok(Curve::Arcsin)
        } else {
            s.parse().map(Curve::Bound)
        }
    }
}

pub const CHAIN_LEN: usize = 6;

/// Members of the refined Shafer-Fink chain, smallest first.
pub fn chain_members() -> [Curve; CHAIN_LEN] {
    [
        Curve::Bound(BoundSpec::shafer_lower()),
        Curve::Bound(BoundSpec::shafer_sqrt_lower()),
        Curve::Arcsin,
        Curve::Bound(BoundSpec::sqrt_upper()),
        Curve::Bound(BoundSpec::zhu_upper()),
        Curve::Bound(BoundSpec::fink_upper()),
    ]
}

pub const CHAIN_LABELS: [&str; CHAIN_LEN] = [
    "shafer_lower",
    "shafer_sqrt_lower",
    "arcsin",
    "sqrt_upper_b1",
    "zhu_upper",
    "fink_upper",
];

/// All chain members at `x`, in chain order.
pub fn eval_chain(x: &Real, o: &Oracle) -> Result<[Real; CHAIN_LEN]> {
    o.check_unit(x, "x")?;
    let members = chain_members();
    let mut out: [Real; CHAIN_LEN] = std::array::from_fn(|_| o.zero());
    for (slot, curve) in out.iter_mut().zip(members.iter()) {
        *slot = curve.eval(x, o)?;
    }
    Ok(out)
}

/// Pointwise order of two square-root-family bounds at `x` in `(0, 1]`.
///
/// Decided by `alpha1 beta2 - alpha2 beta1 > (alpha2 - alpha1)(sqrt(1+x) + sqrt(1-x))`
/// and cross-checked against direct evaluation.
pub fn compare_pointwise(a: &BoundSpec, b: &BoundSpec, x: &Real, o: &Oracle) -> Result<Ordering> {
    for s in [a, b] {
        s.validate()?;
        if !s.family.is_sqrt() {
            return Err(Error::param(format!(
                "compare_pointwise needs square-root family bounds, got {:?}",
                s.family
            )));
        }
    }
    o.check_unit(x, "x")?;
    if x.is_zero() {
        return Err(Error::Domain {
            what: "x",
            value: 0.0,
            domain: "(0, 1]",
        });
    }
    let (a1, b1) = a.params(o);
    let (a2, b2) = b.params(o);
    let one = o.one();
    let s = o.add(&o.sqrt(&o.add(&one, x)), &o.sqrt(&o.sub(&one, x)));
    let cross1 = o.mul(&a1, &b2);
    let cross2 = o.mul(&a2, &b1);
    let lhs = o.sub(&cross1, &cross2);
    let rhs = o.mul(&o.sub(&a2, &a1), &s);
    let scale = o.add(&o.add(&cross1.abs(), &cross2.abs()), &rhs.abs());
    let tol = o.mul(&o.equality_tol(), &scale);
    let by_predicate = o.sign_with_tol(&o.sub(&lhs, &rhs), &tol);

    let va = eval_bound(a, x, o)?;
    let vb = eval_bound(b, x, o)?;
    let vtol = o.mul(&o.equality_tol(), &o.add(&va.abs(), &vb.abs()));
    let direct = o.sign_with_tol(&o.sub(&va, &vb), &vtol);
    if by_predicate != Ordering::Equal && direct != Ordering::Equal && by_predicate != direct {
        return Err(Error::Arithmetic(format!(
            "comparison predicate ({by_predicate:?}) disagrees with evaluation ({direct:?}) at x = {}",
            to_f64(x)
        )));
    }
    Ok(by_predicate)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedConstant {
    pub name: String,
    pub value: f64,
    /// Full-precision decimal at the oracle's width.
    pub decimal: String,
    pub closed_form: String,
}

/// The parameter constants of the named bounds plus the crossover abscissa of the
/// algebraic least upper bound and Zhu's bound.
pub fn named_constants(o: &Oracle) -> Result<Vec<NamedConstant>> {
    let mk = |name: &str, v: Real, closed_form: &str| NamedConstant {
        name: name.to_string(),
        value: to_f64(&v),
        decimal: o.decimal(&v),
        closed_form: closed_form.to_string(),
    };
    let mut out = vec![
        mk("algebraic_lower_b", o.int(2), "2"),
        mk(
            "algebraic_upper_b",
            Constant::AlgebraicUpper.value(o),
            Constant::AlgebraicUpper.closed_form(),
        ),
        mk("sqrt_lower_beta", o.int(4), "4"),
        mk("b1", Constant::B1.value(o), Constant::B1.closed_form()),
        mk(
            "zhu_numerator",
            Constant::ZhuNumerator.value(o),
            "pi(sqrt(2)+1/2), with denominator offset 4",
        ),
    ];
    let c = crate::crossover::algebraic_vs_zhu(o)?;
    out.push(NamedConstant {
        name: "crossover_c".to_string(),
        value: c.c,
        decimal: c.c_decimal,
        closed_form: "unique root in (0,1) of algebraic_upper(x) = zhu_upper(x)".to_string(),
    });
    Ok(out)
}
