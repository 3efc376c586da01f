//! Quadratic-character sums over `F_{p^n}`.
//!
//! Quadratics have a closed form. Cubics are summed directly, or lifted from
//! `F_p` to `F_{p^n}` through the trace recurrence of the elliptic curve
//! `y^2 = f(x)`: with `s_0 = 2`, `s_1 = -Γ_1` and
//! `s_k = -Γ_1·s_{k-1} - p·s_{k-2}`, the degree-`n` sum is `-s_n`.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::field::{ElemIndex, FieldCtx, FieldElem, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharSumError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("leading coefficient vanishes in F_{p}")]
    DegenerateQuadratic { p: u64 },
    #[error("cubic {name:?} has leading coefficient divisible by {p}")]
    DegenerateCubic { name: String, p: u64 },
    #[error("|Γ_1| = {gamma_1} exceeds 2·sqrt({p}); the curve is singular or the input is wrong")]
    HasseViolation { p: u64, gamma_1: i64 },
    #[error("trace recurrence overflowed 128 bits at step {step}")]
    RecurrenceOverflow { step: usize },
    #[error("cubic {name:?} is singular modulo {p}")]
    SingularCurve { name: String, p: u64 },
    #[error("identity requires q ≡ 3 (mod 4), got q = {q}")]
    WrongCongruence { q: u64 },
}

/// A cubic `a3·x^3 + a2·x^2 + a1·x + a0` with integer coefficients read mod `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubicSpec {
    pub a3: i64,
    pub a2: i64,
    pub a1: i64,
    pub a0: i64,
    pub name: String,
}

impl CubicSpec {
    pub fn new(name: impl Into<String>, a3: i64, a2: i64, a1: i64, a0: i64) -> Self {
        Self {
            a3,
            a2,
            a1,
            a0,
            name: name.into(),
        }
    }

    /// `x(x^2 + 4x - 1)`
    pub fn lambda1() -> Self {
        Self::new("x(x^2+4x-1)", 1, 4, -1, 0)
    }

    /// `x(x^2 - 2x + 5)`
    pub fn lambda2() -> Self {
        Self::new("x(x^2-2x+5)", 1, -2, 5, 0)
    }

    /// Integer discriminant `18abcd - 4b^3 d + b^2 c^2 - 4ac^3 - 27a^2 d^2`.
    pub fn discriminant(&self) -> i128 {
        let (a, b, c, d) = (
            self.a3 as i128,
            self.a2 as i128,
            self.a1 as i128,
            self.a0 as i128,
        );
        18 * a * b * c * d - 4 * b * b * b * d + b * b * c * c
            - 4 * a * c * c * c
            - 27 * a * a * d * d
    }

    pub fn is_singular_mod(&self, p: u64) -> bool {
        self.discriminant().rem_euclid(p as i128) == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Direct,
    Recurrence,
}

/// `λ^(1)`, `λ^(2)` and their sum for one field.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharSumReport {
    pub lambda1: i64,
    pub lambda2: i64,
    pub lambda: i64,
    pub method: Method,
    /// `2·p^{n/2} - |λ^(1)|`
    pub hasse_margin1: f64,
    /// `2·p^{n/2} - |λ^(2)|`
    pub hasse_margin2: f64,
}

impl CharSumReport {
    /// Exact Hasse check: `λ^2 ≤ 4·p^n` for both components.
    pub fn hasse_holds(&self, q: u64) -> bool {
        hasse_holds(self.lambda1, q) && hasse_holds(self.lambda2, q)
    }

    pub fn same_values(&self, other: &CharSumReport) -> bool {
        self.lambda1 == other.lambda1 && self.lambda2 == other.lambda2
    }
}

pub fn hasse_holds(value: i64, q: u64) -> bool {
    let v = value as i128;
    v * v <= 4 * q as i128
}

pub fn hasse_margin(value: i64, q: u64) -> f64 {
    2.0 * (q as f64).sqrt() - value.unsigned_abs() as f64
}

/// `Σ χ(f(x))` over the whole field for an arbitrary index-level map `f`.
pub fn char_sum_by<F>(ctx: &FieldCtx, f: F) -> i64
where
    F: Fn(ElemIndex) -> ElemIndex + Sync,
{
    (0..ctx.q())
        .into_par_iter()
        .map(|x| ctx.chi_idx(f(x)).value())
        .sum()
}

/// Closed-form `Σ χ(a2·x^2 + a1·x + a0)`.
pub fn quad_char_sum(
    ctx: &FieldCtx,
    a2: &FieldElem,
    a1: &FieldElem,
    a0: &FieldElem,
) -> Result<i64, CharSumError> {
    if a2.is_zero() {
        ctx.index_of(a2)?;
        return Err(CharSumError::DegenerateQuadratic { p: ctx.p() });
    }
    let disc = ctx.sub(
        &ctx.mul(a1, a1)?,
        &ctx.mul(&ctx.embed(4), &ctx.mul(a0, a2)?)?,
    )?;
    let chi_a2 = ctx.chi(a2)?.value();
    if disc.is_zero() {
        Ok((ctx.q() as i64 - 1) * chi_a2)
    } else {
        Ok(-chi_a2)
    }
}

fn cubic_indices(ctx: &FieldCtx, cubic: &CubicSpec) -> Result<[ElemIndex; 4], CharSumError> {
    if cubic.a3.rem_euclid(ctx.p() as i64) == 0 {
        return Err(CharSumError::DegenerateCubic {
            name: cubic.name.clone(),
            p: ctx.p(),
        });
    }
    Ok([
        ctx.embed_idx(cubic.a3),
        ctx.embed_idx(cubic.a2),
        ctx.embed_idx(cubic.a1),
        ctx.embed_idx(cubic.a0),
    ])
}

/// `Γ = Σ_x χ(f(x))` by one pass over the field.
pub fn cubic_char_sum_direct(ctx: &FieldCtx, cubic: &CubicSpec) -> Result<i64, CharSumError> {
    let [a3, a2, a1, a0] = cubic_indices(ctx, cubic)?;
    Ok(char_sum_by(ctx, |x| {
        let mut acc = a3;
        for c in [a2, a1, a0] {
            acc = ctx.add_idx(ctx.mul_idx(acc, x), c);
        }
        acc
    }))
}

/// Lifts `Γ_{p,1}` to `Γ_{p,n}` with the integer trace recurrence.
pub fn gamma_recurrence(p: u64, n: usize, gamma_1: i64) -> Result<i128, CharSumError> {
    let g = gamma_1 as i128;
    if g * g > 4 * p as i128 {
        return Err(CharSumError::HasseViolation { p, gamma_1 });
    }
    let p = p as i128;
    let (mut prev, mut cur) = (2i128, -g);
    if n == 0 {
        return Ok(-prev);
    }
    for step in 2..=n {
        let next = (-g)
            .checked_mul(cur)
            .and_then(|a| p.checked_mul(prev).and_then(|b| a.checked_sub(b)))
            .ok_or(CharSumError::RecurrenceOverflow { step })?;
        prev = cur;
        cur = next;
    }
    Ok(-cur)
}

/// `Γ_{p,n}` for a cubic via the recurrence, with `Γ_{p,1}` summed over `F_p`.
pub fn cubic_char_sum_recurrence(ctx: &FieldCtx, cubic: &CubicSpec) -> Result<i64, CharSumError> {
    if cubic.is_singular_mod(ctx.p()) {
        return Err(CharSumError::SingularCurve {
            name: cubic.name.clone(),
            p: ctx.p(),
        });
    }
    let base = FieldCtx::prime(ctx.p())?;
    let gamma_1 = cubic_char_sum_direct(&base, cubic)?;
    let value = gamma_recurrence(ctx.p(), ctx.n(), gamma_1)?;
    // |Γ_{p,n}| ≤ 2·p^{n/2} < 2^64 whenever q fits in a u64.
    Ok(i64::try_from(value).expect("Hasse-bounded value fits in i64"))
}

pub fn cubic_char_sum(
    ctx: &FieldCtx,
    cubic: &CubicSpec,
    method: Method,
) -> Result<i64, CharSumError> {
    match method {
        Method::Direct => cubic_char_sum_direct(ctx, cubic),
        Method::Recurrence => cubic_char_sum_recurrence(ctx, cubic),
    }
}

pub fn lambda_report(ctx: &FieldCtx, method: Method) -> Result<CharSumReport, CharSumError> {
    let lambda1 = cubic_char_sum(ctx, &CubicSpec::lambda1(), method)?;
    let lambda2 = cubic_char_sum(ctx, &CubicSpec::lambda2(), method)?;
    Ok(CharSumReport {
        lambda1,
        lambda2,
        lambda: lambda1 + lambda2,
        method,
        hasse_margin1: hasse_margin(lambda1, ctx.q()),
        hasse_margin2: hasse_margin(lambda2, ctx.q()),
    })
}

/// `λ_{p,n}` by whichever method is cheaper and valid for this field.
pub fn lambda_value(ctx: &FieldCtx) -> Result<i64, CharSumError> {
    let singular = CubicSpec::lambda1().is_singular_mod(ctx.p())
        || CubicSpec::lambda2().is_singular_mod(ctx.p());
    let method = if ctx.n() > 1 && !singular {
        Method::Recurrence
    } else {
        Method::Direct
    };
    Ok(lambda_report(ctx, method)?.lambda)
}

/// The three character-sum identities that hold when `q ≡ 3 (mod 4)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharIdentities {
    /// `Σ χ(x(x^2-1))`, expected 0.
    pub odd_cubic: i64,
    /// `Σ χ(x(x^2-1)(x^2+4x-1))`, expected 0.
    pub odd_quintic: i64,
    /// `Σ χ((x^2-1)(x^2+4x-1))`, expected `λ^(2) - 1`.
    pub quartic: i64,
    pub lambda2: i64,
    pub odd_cubic_holds: bool,
    pub odd_quintic_holds: bool,
    pub quartic_holds: bool,
}

impl CharIdentities {
    pub fn all_hold(&self) -> bool {
        self.odd_cubic_holds && self.odd_quintic_holds && self.quartic_holds
    }
}

pub fn check_char_identities(ctx: &FieldCtx) -> Result<CharIdentities, CharSumError> {
    if ctx.q() % 4 != 3 {
        return Err(CharSumError::WrongCongruence { q: ctx.q() });
    }
    let one = ctx.embed_idx(1);
    let four = ctx.embed_idx(4);
    let x2_minus_1 = |x| ctx.sub_idx(ctx.mul_idx(x, x), one);
    let x2_4x_minus_1 = |x| {
        let t = ctx.add_idx(ctx.mul_idx(x, x), ctx.mul_idx(four, x));
        ctx.sub_idx(t, one)
    };
    let odd_cubic = char_sum_by(ctx, |x| ctx.mul_idx(x, x2_minus_1(x)));
    let odd_quintic = char_sum_by(ctx, |x| {
        ctx.mul_idx(ctx.mul_idx(x, x2_minus_1(x)), x2_4x_minus_1(x))
    });
    let quartic = char_sum_by(ctx, |x| ctx.mul_idx(x2_minus_1(x), x2_4x_minus_1(x)));
    let lambda2 = cubic_char_sum_direct(ctx, &CubicSpec::lambda2())?;
    Ok(CharIdentities {
        odd_cubic,
        odd_quintic,
        quartic,
        lambda2,
        odd_cubic_holds: odd_cubic == 0,
        odd_quintic_holds: odd_quintic == 0,
        quartic_holds: quartic == lambda2 - 1,
    })
}
