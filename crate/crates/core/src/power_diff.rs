//! Differential spectra of power maps `x ↦ x^d`.
//!
//! For a power map `δ(a, b) = δ(1, b/a^d)`, so the row `a = 1` carries the
//! whole table. The brute-force engines here enumerate that row and the
//! solution counts `N₄` / `n₄`; the closed forms are the ones for
//! `d = (q-3)/2` with `q ≡ 3 (mod 4)`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::char_sums::{lambda_value, CharSumError};
use crate::field::{ChiValue, ElemIndex, FieldCtx};

/// Largest order the enumeration engines accept.
pub const MAX_ENGINE_ORDER: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PowerDiffError {
    #[error(transparent)]
    CharSum(#[from] CharSumError),
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("q = {q} is too large to enumerate")]
    TooLarge { q: u64 },
    #[error("spectrum moments violated for q = {q}, d = {d}")]
    MomentViolation { q: u64, d: u64 },
    #[error("q = {q} is outside the closed form's range ({reason})")]
    OutOfTheoremRange { q: u64, reason: &'static str },
    #[error("closed form {what} is not an integer for q = {q}, λ = {lambda}")]
    NonIntegral {
        what: &'static str,
        q: u64,
        lambda: i64,
    },
    #[error("class {class:?}: brute force {brute} vs closed form {closed}")]
    ClassMismatch {
        class: SignTriple,
        brute: u64,
        closed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    BruteForce,
    ClosedForm,
}

/// Histogram `ω_i = #{b : δ(1, b) = i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    pub q: u64,
    pub d: u64,
    /// Every `i` in `0..=uniformity`, zero counts included.
    pub omegas: BTreeMap<u64, u64>,
    pub uniformity: u64,
    pub provenance: Provenance,
}

impl Spectrum {
    pub fn from_histogram(q: u64, d: u64, hist: &[u64], provenance: Provenance) -> Self {
        let uniformity = hist.iter().rposition(|&c| c > 0).unwrap_or(0) as u64;
        let omegas = (0..=uniformity)
            .map(|i| (i, hist.get(i as usize).copied().unwrap_or(0)))
            .collect();
        Self {
            q,
            d,
            omegas,
            uniformity,
            provenance,
        }
    }

    pub fn omega(&self, i: u64) -> u64 {
        self.omegas.get(&i).copied().unwrap_or(0)
    }

    /// `Σ ω_i = Σ i·ω_i = q`
    pub fn moments_hold(&self) -> bool {
        let count: u64 = self.omegas.values().sum();
        let weighted: u64 = self.omegas.iter().map(|(i, w)| i * w).sum();
        count == self.q && weighted == self.q
    }

    pub fn second_moment(&self) -> u64 {
        self.omegas.iter().map(|(i, w)| i * i * w).sum()
    }

    /// Same histogram regardless of how it was obtained.
    pub fn same_values(&self, other: &Spectrum) -> bool {
        self.q == other.q && self.d == other.d && self.omegas == other.omegas
    }

    pub fn classification(&self) -> String {
        match self.uniformity {
            1 => "PN".to_string(),
            2 => "APN".to_string(),
            k => format!("differentially {k}-uniform"),
        }
    }
}

pub(crate) fn check_engine(ctx: &FieldCtx, d: u64) -> Result<(), PowerDiffError> {
    if d == 0 {
        return Err(PowerDiffError::ZeroExponent);
    }
    if ctx.q() > MAX_ENGINE_ORDER {
        return Err(PowerDiffError::TooLarge { q: ctx.q() });
    }
    Ok(())
}

/// `d = (q-3)/2`, the exponent studied throughout.
pub fn default_exponent(q: u64) -> u64 {
    q.saturating_sub(3) / 2
}

/// Row of the difference table for `F(x) = x^d` against an already computed
/// power table: counts of `F(x+1) - c·F(x)` indexed by `b`.
pub(crate) fn row_counts(ctx: &FieldCtx, table: &[ElemIndex], c: ElemIndex) -> Vec<u32> {
    let q = ctx.q();
    let one = ctx.embed_idx(1);
    let chunk = (q / rayon::current_num_threads().max(1) as u64 / 4).max(1024);
    let starts: Vec<u64> = (0..q).step_by(chunk as usize).collect();
    starts
        .into_par_iter()
        .map(|start| {
            let mut local = vec![0u32; q as usize];
            for x in start..(start + chunk).min(q) {
                let fx1 = table[ctx.add_idx(x, one) as usize];
                let cfx = if c == one {
                    table[x as usize]
                } else {
                    ctx.mul_idx(c, table[x as usize])
                };
                local[ctx.sub_idx(fx1, cfx) as usize] += 1;
            }
            local
        })
        .reduce(
            || vec![0u32; q as usize],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

pub(crate) fn histogram(row: &[u32]) -> Vec<u64> {
    let max = row.iter().copied().max().unwrap_or(0) as usize;
    let mut hist = vec![0u64; max + 1];
    for &v in row {
        hist[v as usize] += 1;
    }
    hist
}

/// `δ(1, b) = #{x : (x+1)^d - x^d = b}` for every `b`, indexed by element index.
pub fn ddt_row(ctx: &FieldCtx, d: u64) -> Result<Vec<u64>, PowerDiffError> {
    check_engine(ctx, d)?;
    let table = ctx.power_table(d);
    Ok(row_counts(ctx, &table, ctx.embed_idx(1))
        .into_iter()
        .map(u64::from)
        .collect())
}

pub fn spectrum_bruteforce(ctx: &FieldCtx, d: u64) -> Result<Spectrum, PowerDiffError> {
    check_engine(ctx, d)?;
    let table = ctx.power_table(d);
    let row = row_counts(ctx, &table, ctx.embed_idx(1));
    let spectrum = Spectrum::from_histogram(ctx.q(), d, &histogram(&row), Provenance::BruteForce);
    if !spectrum.moments_hold() {
        return Err(PowerDiffError::MomentViolation { q: ctx.q(), d });
    }
    Ok(spectrum)
}

/// Inputs shared by every closed form: `q`, `χ(5)`, `χ(2)` and `λ_{p,n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClosedFormInputs {
    pub q: u64,
    pub chi5: i64,
    pub chi2: i64,
    pub lambda: i64,
}

impl ClosedFormInputs {
    pub fn compute(ctx: &FieldCtx) -> Result<Self, PowerDiffError> {
        Ok(Self::with_lambda(ctx, lambda_value(ctx)?))
    }

    pub fn with_lambda(ctx: &FieldCtx, lambda: i64) -> Self {
        Self {
            q: ctx.q(),
            chi5: ctx.chi_idx(ctx.embed_idx(5)).value(),
            chi2: ctx.chi_idx(ctx.embed_idx(2)).value(),
            lambda,
        }
    }

    pub fn d(&self) -> u64 {
        default_exponent(self.q)
    }

    fn require_3_mod_4(&self) -> Result<(), PowerDiffError> {
        if self.q % 4 != 3 {
            return Err(PowerDiffError::OutOfTheoremRange {
                q: self.q,
                reason: "q must be 3 mod 4",
            });
        }
        if self.d() == 0 {
            return Err(PowerDiffError::OutOfTheoremRange {
                q: self.q,
                reason: "d = (q-3)/2 must be positive",
            });
        }
        Ok(())
    }

    fn require_spectrum_range(&self) -> Result<(), PowerDiffError> {
        self.require_3_mod_4()?;
        if self.q <= 7 || self.q == 27 {
            return Err(PowerDiffError::OutOfTheoremRange {
                q: self.q,
                reason: "q must exceed 7 and differ from 27",
            });
        }
        Ok(())
    }

    /// `numerator / divisor`, refusing any remainder or negative result.
    pub(crate) fn exact(
        &self,
        numerator: i128,
        divisor: i128,
        what: &'static str,
    ) -> Result<u64, PowerDiffError> {
        if numerator % divisor != 0 || numerator < 0 {
            return Err(PowerDiffError::NonIntegral {
                what,
                q: self.q,
                lambda: self.lambda,
            });
        }
        Ok((numerator / divisor) as u64)
    }
}

/// Closed-form spectrum of `x^{(q-3)/2}`; `q ≡ 3 (mod 4)`, `q > 7`, `q ≠ 27`.
pub fn spectrum_closed_form(ctx: &FieldCtx) -> Result<Spectrum, PowerDiffError> {
    spectrum_closed_form_from(&ClosedFormInputs::compute(ctx)?)
}

pub fn spectrum_closed_form_from(inputs: &ClosedFormInputs) -> Result<Spectrum, PowerDiffError> {
    inputs.require_spectrum_range()?;
    let (q, l) = (inputs.q as i128, inputs.lambda as i128);
    let hist = if inputs.chi5 == -1 {
        vec![
            inputs.exact(q + l - 7, 4, "omega_0")?,
            inputs.exact(q - l + 7, 2, "omega_1")?,
            inputs.exact(q + l - 7, 4, "omega_2")?,
        ]
    } else {
        vec![
            inputs.exact(q + l + 1, 4, "omega_0")?,
            inputs.exact(q - l + 3, 2, "omega_1")?,
            inputs.exact(q + l - 15, 4, "omega_2")?,
            2,
        ]
    };
    Ok(Spectrum::from_histogram(
        inputs.q,
        inputs.d(),
        &hist,
        Provenance::ClosedForm,
    ))
}

/// `δ(1)` as predicted from `χ(5)` next to the observed `δ(1)` and `δ(-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DeltaOne {
    pub predicted: u64,
    pub at_one: u64,
    pub at_minus_one: u64,
}

impl DeltaOne {
    pub fn holds(&self) -> bool {
        self.predicted == self.at_one && self.predicted == self.at_minus_one
    }
}

pub fn delta_one(ctx: &FieldCtx) -> Result<DeltaOne, PowerDiffError> {
    let chi5 = ctx.chi_idx(ctx.embed_idx(5)).value();
    let inputs = ClosedFormInputs {
        q: ctx.q(),
        chi5,
        chi2: 0,
        lambda: 0,
    };
    inputs.require_spectrum_range()?;
    let d = inputs.d();
    let row = ddt_row(ctx, d)?;
    Ok(DeltaOne {
        predicted: if chi5 == -1 { 1 } else { 3 },
        at_one: row[ctx.embed_idx(1) as usize],
        at_minus_one: row[ctx.embed_idx(-1) as usize],
    })
}

/// Quadratic-character signs `(χ(y1), χ(y2), χ(y3))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SignTriple(pub i8, pub i8, pub i8);

impl fmt::Display for SignTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0, self.1, self.2)
    }
}

impl SignTriple {
    pub const ALL: [SignTriple; 8] = [
        SignTriple(1, 1, 1),
        SignTriple(1, 1, -1),
        SignTriple(1, -1, 1),
        SignTriple(1, -1, -1),
        SignTriple(-1, 1, 1),
        SignTriple(-1, 1, -1),
        SignTriple(-1, -1, 1),
        SignTriple(-1, -1, -1),
    ];

    fn slot(self) -> usize {
        let bit = |s: i8| usize::from(s < 0);
        (bit(self.0) << 2) | (bit(self.1) << 1) | bit(self.2)
    }

    fn from_chis(a: ChiValue, b: ChiValue, c: ChiValue) -> Self {
        SignTriple(a.value() as i8, b.value() as i8, c.value() as i8)
    }
}

/// Solutions of `y1 - y2 + y3 = 1`, `y1^d - y2^d + y3^d = 1` over `(F_q^*)^3`,
/// split by sign class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    pub counts: BTreeMap<SignTriple, u64>,
    pub total: u64,
}

impl ClassCounts {
    fn from_slots(slots: [u64; 8]) -> Self {
        let counts: BTreeMap<_, _> = SignTriple::ALL
            .iter()
            .map(|&t| (t, slots[t.slot()]))
            .collect();
        let total = counts.values().sum();
        Self { counts, total }
    }

    pub fn get(&self, t: SignTriple) -> u64 {
        self.counts.get(&t).copied().unwrap_or(0)
    }

    /// Reversal and the two scaling substitutions of the normalized system.
    pub fn symmetries_hold(&self) -> bool {
        let n = |a, b, c| self.get(SignTriple(a, b, c));
        n(1, 1, -1) == n(-1, 1, 1)
            && n(1, -1, -1) == n(-1, -1, 1)
            && n(-1, -1, -1) == n(1, -1, 1)
            && n(-1, 1, 1) == n(-1, -1, -1)
    }
}

pub fn normalized_class_counts_bruteforce(
    ctx: &FieldCtx,
    d: u64,
) -> Result<ClassCounts, PowerDiffError> {
    check_engine(ctx, d)?;
    let table = ctx.power_table(d);
    let one = ctx.embed_idx(1);
    let q = ctx.q();
    let slots = (1..q)
        .into_par_iter()
        .map(|y1| {
            let mut local = [0u64; 8];
            let base = ctx.sub_idx(y1, one);
            let chi1 = ctx.chi_idx(y1);
            for y3 in 1..q {
                let y2 = ctx.add_idx(base, y3);
                if y2 == 0 {
                    continue;
                }
                let lhs = ctx.add_idx(
                    ctx.sub_idx(table[y1 as usize], table[y2 as usize]),
                    table[y3 as usize],
                );
                if lhs == one {
                    let t = SignTriple::from_chis(chi1, ctx.chi_idx(y2), ctx.chi_idx(y3));
                    local[t.slot()] += 1;
                }
            }
            local
        })
        .reduce(
            || [0u64; 8],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(ClassCounts::from_slots(slots))
}

pub fn normalized_class_counts_closed(
    inputs: &ClosedFormInputs,
) -> Result<ClassCounts, PowerDiffError> {
    inputs.require_3_mod_4()?;
    let (q, l) = (inputs.q as i128, inputs.lambda as i128);
    let mixed = inputs.exact(q + l - 7, 8, "n_(1,1,-1)")?;
    let half = inputs.exact(q - 1, 2, "n_(1,-1,-1)")?;
    let mut slots = [0u64; 8];
    let mut set = |t: SignTriple, v: u64| slots[t.slot()] = v;
    set(SignTriple(1, 1, 1), inputs.q - 2);
    set(SignTriple(1, 1, -1), mixed);
    set(SignTriple(-1, 1, 1), mixed);
    set(SignTriple(-1, -1, -1), mixed);
    set(SignTriple(1, -1, 1), mixed);
    set(SignTriple(1, -1, -1), half);
    set(SignTriple(-1, -1, 1), half);
    set(SignTriple(-1, 1, -1), 0);
    Ok(ClassCounts::from_slots(slots))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassComparison {
    pub brute_force: ClassCounts,
    pub closed_form: ClassCounts,
}

/// Brute-force and closed-form class counts; errors on the first mismatch.
pub fn normalized_class_counts(ctx: &FieldCtx) -> Result<ClassComparison, PowerDiffError> {
    let inputs = ClosedFormInputs::compute(ctx)?;
    let closed_form = normalized_class_counts_closed(&inputs)?;
    let brute_force = normalized_class_counts_bruteforce(ctx, inputs.d())?;
    for t in SignTriple::ALL {
        let (brute, closed) = (brute_force.get(t), closed_form.get(t));
        if brute != closed {
            return Err(PowerDiffError::ClassMismatch {
                class: t,
                brute,
                closed,
            });
        }
    }
    Ok(ClassComparison {
        brute_force,
        closed_form,
    })
}

/// `n₄ = (5q + λ - 13) / 2`.
pub fn normalized_count_closed(inputs: &ClosedFormInputs) -> Result<u64, PowerDiffError> {
    inputs.require_3_mod_4()?;
    inputs.exact(5 * inputs.q as i128 + inputs.lambda as i128 - 13, 2, "n_4")
}

/// `Σ_key A(key)^2` where `A` counts pairs `(u, v)` by `(u + v, u^d + c·v^d)`.
///
/// The outer loop runs over the first key component `s = u + v`, so each
/// worker needs only a length-`q` scratch buffer.
pub(crate) fn pair_map_count(ctx: &FieldCtx, table: &[ElemIndex], c: ElemIndex) -> u64 {
    let q = ctx.q();
    let one = ctx.embed_idx(1);
    let scaled: Vec<ElemIndex> = if c == one {
        table.to_vec()
    } else {
        table.iter().map(|&v| ctx.mul_idx(c, v)).collect()
    };
    (0..q)
        .into_par_iter()
        .map_init(
            || vec![0u32; q as usize],
            |counts, s| {
                for u in 0..q {
                    let v = ctx.sub_idx(s, u);
                    let t = ctx.add_idx(table[u as usize], scaled[v as usize]);
                    counts[t as usize] += 1;
                }
                let mut sum = 0u64;
                for slot in counts.iter_mut() {
                    let k = *slot as u64;
                    sum += k * k;
                    *slot = 0;
                }
                sum
            },
        )
        .sum()
}

/// `N₄`: solutions of `x1 - x2 + x3 - x4 = 0`, `x1^d - x2^d + x3^d - x4^d = 0`.
pub fn full_system_count_bruteforce(ctx: &FieldCtx, d: u64) -> Result<u64, PowerDiffError> {
    check_engine(ctx, d)?;
    let table = ctx.power_table(d);
    Ok(pair_map_count(ctx, &table, ctx.embed_idx(1)))
}

/// Closed-form `N₄` for `d = (q-3)/2`.
pub fn full_system_count_closed(inputs: &ClosedFormInputs) -> Result<u64, PowerDiffError> {
    inputs.require_3_mod_4()?;
    let (q, l) = (inputs.q as i128, inputs.lambda as i128);
    let numerator = if inputs.chi5 == -1 {
        5 * q * q + (l - 10) * q - (l - 7)
    } else {
        5 * q * q + (l + 6) * q - (l + 9)
    };
    inputs.exact(numerator, 2, "N_4")
}

/// `N₄ = 1 + 4·δ(1)·(q-1) + n₄·(q-1)`.
pub fn full_from_normalized(q: u64, delta_one: u64, n4: u64) -> u64 {
    1 + 4 * delta_one * (q - 1) + n4 * (q - 1)
}

/// First and second moment identities against an independently counted `N₄`.
pub fn moment_check(spectrum: &Spectrum, full_count: u64) -> bool {
    let q = spectrum.q;
    if !spectrum.moments_hold() || full_count < q * q {
        return false;
    }
    let diff = full_count - q * q;
    diff.is_multiple_of(q - 1) && spectrum.second_moment() == diff / (q - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, n: usize) -> FieldCtx {
        FieldCtx::new(p, n, None).unwrap()
    }

    /// O(q^3) enumeration of the four-variable system.
    fn naive_full_count(ctx: &FieldCtx, d: u64) -> u64 {
        let t = ctx.power_table(d);
        let q = ctx.q();
        let mut count = 0;
        for x1 in 0..q {
            for x2 in 0..q {
                for x3 in 0..q {
                    let x4 = ctx.add_idx(ctx.sub_idx(x1, x2), x3);
                    let lhs =
                        ctx.add_idx(ctx.sub_idx(t[x1 as usize], t[x2 as usize]), t[x3 as usize]);
                    if lhs == t[x4 as usize] {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    #[test]
    fn row_examples() {
        let f11 = f(11, 1);
        let row = ddt_row(&f11, 4).unwrap();
        assert_eq!(row[1], 3);
        assert_eq!(row[10], 3);
        assert_eq!(row.iter().sum::<u64>(), 11);
        let linear = ddt_row(&f11, 1).unwrap();
        assert_eq!(linear[1], 11);
        assert_eq!(linear.iter().sum::<u64>(), 11);
        let f27 = f(3, 3);
        assert!(ddt_row(&f27, 12).unwrap().iter().all(|&v| v <= 1));
        assert_eq!(ddt_row(&f11, 0).unwrap_err(), PowerDiffError::ZeroExponent);
    }

    #[test]
    fn spectrum_q11() {
        let s = spectrum_bruteforce(&f(11, 1), 4).unwrap();
        let expected: BTreeMap<u64, u64> = [(0, 4), (1, 5), (2, 0), (3, 2)].into();
        assert_eq!(s.omegas, expected);
        let c = spectrum_closed_form(&f(11, 1)).unwrap();
        assert!(s.same_values(&c));
        assert_eq!(c.provenance, Provenance::ClosedForm);
    }

    #[test]
    fn closed_form_range() {
        for (p, n) in [(7, 1), (3, 3), (13, 1)] {
            assert!(matches!(
                spectrum_closed_form(&f(p, n)),
                Err(PowerDiffError::OutOfTheoremRange { .. })
            ));
        }
        let bad = ClosedFormInputs {
            q: 11,
            chi5: 1,
            chi2: -1,
            lambda: 5,
        };
        assert!(matches!(
            spectrum_closed_form_from(&bad),
            Err(PowerDiffError::NonIntegral { .. })
        ));
    }

    #[test]
    fn delta_one_examples() {
        let d = delta_one(&f(11, 1)).unwrap();
        assert_eq!(d.predicted, 3);
        assert!(d.holds());
        assert!(delta_one(&f(7, 1)).is_err());
    }

    #[test]
    fn class_counts_q11() {
        let cmp = normalized_class_counts(&f(11, 1)).unwrap();
        let b = &cmp.brute_force;
        assert_eq!(b.get(SignTriple(-1, 1, -1)), 0);
        assert_eq!(b.get(SignTriple(1, -1, -1)), 5);
        assert_eq!(b.total, 23);
        assert!(b.symmetries_hold());
        let inputs = ClosedFormInputs::compute(&f(11, 1)).unwrap();
        assert_eq!(normalized_count_closed(&inputs).unwrap(), 23);
    }

    #[test]
    fn class_counts_outside_spectrum_range() {
        // q = 7 and q = 27 are excluded from the spectrum formula but the
        // normalized counts still follow their closed forms.
        for (p, n) in [(7, 1), (3, 3)] {
            let ctx = f(p, n);
            let cmp = normalized_class_counts(&ctx).unwrap();
            let inputs = ClosedFormInputs::compute(&ctx).unwrap();
            assert_eq!(
                cmp.brute_force.total,
                normalized_count_closed(&inputs).unwrap()
            );
        }
    }

    #[test]
    fn full_count_examples() {
        let f11 = f(11, 1);
        assert_eq!(full_system_count_bruteforce(&f11, 1).unwrap(), 11 * 11 * 11);
        assert_eq!(full_system_count_bruteforce(&f11, 4).unwrap(), 351);
        assert_eq!(naive_full_count(&f11, 4), 351);
        let inputs = ClosedFormInputs::compute(&f11).unwrap();
        assert_eq!(full_system_count_closed(&inputs).unwrap(), 351);
        assert_eq!(full_from_normalized(11, 3, 23), 351);

        let f7 = f(7, 1);
        let inputs = ClosedFormInputs::compute(&f7).unwrap();
        assert_eq!(
            full_system_count_bruteforce(&f7, 2).unwrap(),
            full_system_count_closed(&inputs).unwrap()
        );
        assert_eq!(naive_full_count(&f7, 2), 91);
    }

    #[test]
    fn pair_map_matches_naive_in_extension() {
        let ctx = f(3, 3);
        for d in [2, 5, 12] {
            assert_eq!(
                full_system_count_bruteforce(&ctx, d).unwrap(),
                naive_full_count(&ctx, d)
            );
        }
    }

    #[test]
    fn moment_examples() {
        let f11 = f(11, 1);
        let s = spectrum_bruteforce(&f11, 4).unwrap();
        assert_eq!(s.second_moment(), 23);
        assert!(moment_check(&s, 351));
        assert!(!moment_check(&s, 361));
        let f27 = f(3, 3);
        let pn = spectrum_bruteforce(&f27, 12).unwrap();
        assert_eq!(pn.second_moment(), 27);
        assert_eq!(pn.classification(), "PN");
        let n4 = full_system_count_bruteforce(&f27, 12).unwrap();
        assert!(moment_check(&pn, n4));
    }
}
