//! c-differential rows and spectra of power maps.
//!
//! `_cδ(1, b) = #{x : (x+1)^d - c·x^d = b}`, and for a power map the
//! c-differential uniformity is `max({_cδ(1, b)} ∪ {gcd(d, q-1)})`.

use std::collections::BTreeMap;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::field::{ElemIndex, FieldCtx, FieldElem, FieldError};
use crate::power_diff::{
    check_engine, default_exponent, full_system_count_closed, histogram, pair_map_count,
    row_counts, ClosedFormInputs, PowerDiffError, Provenance,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CDiffError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    PowerDiff(#[from] PowerDiffError),
    #[error("c = {c}: δ(1, {b}) = {count} exceeds the bound {bound}")]
    BoundViolation {
        c: FieldElem,
        b: FieldElem,
        count: u64,
        bound: u64,
    },
    #[error("c = -1 row has odd counts at {odd:?}, expected only at {expected}")]
    ParityViolation {
        odd: Vec<FieldElem>,
        expected: FieldElem,
    },
}

/// One row of the c-differential table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CDiffRow {
    #[serde(serialize_with = "display")]
    pub c: FieldElem,
    pub d: u64,
    /// Indexed by the element index of `b`.
    pub row: Vec<u64>,
    pub row_max: u64,
    pub gcd_floor: u64,
    pub uniformity: u64,
}

fn display<S: serde::Serializer>(e: &FieldElem, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(e)
}

pub fn gcd_floor(q: u64, d: u64) -> u64 {
    d.gcd(&(q - 1))
}

pub fn cddt_row(ctx: &FieldCtx, d: u64, c: &FieldElem) -> Result<CDiffRow, CDiffError> {
    check_engine(ctx, d)?;
    let c_idx = ctx.index_of(c)?;
    let table = ctx.power_table(d);
    let row: Vec<u64> = row_counts(ctx, &table, c_idx)
        .into_iter()
        .map(u64::from)
        .collect();
    let row_max = row.iter().copied().max().unwrap_or(0);
    let floor = gcd_floor(ctx.q(), d);
    Ok(CDiffRow {
        c: c.clone(),
        d,
        row,
        row_max,
        gcd_floor: floor,
        uniformity: row_max.max(floor),
    })
}

pub fn c_uniformity(ctx: &FieldCtx, d: u64, c: &FieldElem) -> Result<u64, CDiffError> {
    Ok(cddt_row(ctx, d, c)?.uniformity)
}

/// Bound on `_cΔ` for `d = (q-3)/2` and `c ≠ ±1`.
pub fn c_uniformity_bound(q: u64) -> u64 {
    if q % 4 == 3 {
        5
    } else {
        9
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CUniformitySweep {
    pub d: u64,
    /// `(index of c, _cΔ)` in index order.
    pub per_c: Vec<(ElemIndex, u64)>,
    pub bound: u64,
    /// Largest `_cΔ` over `c ∉ {±1}`.
    pub max: u64,
    /// Smallest-index `c` attaining `max`.
    #[serde(serialize_with = "display")]
    pub witness: FieldElem,
}

/// `_cΔ` for every `c ∉ {0, 1}` (and `c = 0` when asked) with
/// `d = (q-3)/2`, checking the bound for each `c ≠ ±1`.
pub fn c_uniformity_sweep(
    ctx: &FieldCtx,
    include_zero: bool,
) -> Result<CUniformitySweep, CDiffError> {
    let q = ctx.q();
    let d = default_exponent(q);
    check_engine(ctx, d)?;
    let table = ctx.power_table(d);
    let one = ctx.embed_idx(1);
    let minus_one = ctx.embed_idx(-1);
    let floor = gcd_floor(q, d);
    let bound = c_uniformity_bound(q);

    let cs: Vec<ElemIndex> = (0..q)
        .filter(|&c| c != one && (include_zero || c != 0))
        .collect();
    // Row-level parallelism inside `row_counts` is plenty for small q; for
    // large q the rows themselves are spread across workers.
    let rows: Vec<(ElemIndex, u64, ElemIndex)> = cs
        .par_iter()
        .map(|&c| {
            let row = row_counts(ctx, &table, c);
            let (b, &max) = row
                .iter()
                .enumerate()
                .max_by_key(|&(i, v)| (*v, std::cmp::Reverse(i)))
                .expect("row is nonempty");
            (c, u64::from(max).max(floor), b as ElemIndex)
        })
        .collect();

    let mut max = 0;
    let mut witness = ctx.zero();
    for &(c, uniformity, b) in &rows {
        if c == minus_one {
            continue;
        }
        if uniformity > bound {
            return Err(CDiffError::BoundViolation {
                c: ctx.element(c),
                b: ctx.element(b),
                count: uniformity,
                bound,
            });
        }
        if uniformity > max {
            max = uniformity;
            witness = ctx.element(c);
        }
    }
    Ok(CUniformitySweep {
        d,
        per_c: rows.iter().map(|&(c, u, _)| (c, u)).collect(),
        bound,
        max,
        witness,
    })
}

/// `_cω_i = #{b : _cδ(1, b) = i}`, listing only positive counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CSpectrum {
    #[serde(serialize_with = "display")]
    pub c: FieldElem,
    pub q: u64,
    pub d: u64,
    pub omegas: BTreeMap<u64, u64>,
    pub provenance: Provenance,
}

impl CSpectrum {
    fn from_histogram(c: FieldElem, q: u64, d: u64, hist: &[u64], provenance: Provenance) -> Self {
        let omegas = hist
            .iter()
            .enumerate()
            .filter(|&(_, &w)| w > 0)
            .map(|(i, &w)| (i as u64, w))
            .collect();
        Self {
            c,
            q,
            d,
            omegas,
            provenance,
        }
    }

    pub fn omega(&self, i: u64) -> u64 {
        self.omegas.get(&i).copied().unwrap_or(0)
    }

    pub fn row_max(&self) -> u64 {
        self.omegas.keys().next_back().copied().unwrap_or(0)
    }

    pub fn uniformity(&self) -> u64 {
        self.row_max().max(gcd_floor(self.q, self.d))
    }

    pub fn moments_hold(&self) -> bool {
        let count: u64 = self.omegas.values().sum();
        let weighted: u64 = self.omegas.iter().map(|(i, w)| i * w).sum();
        count == self.q && weighted == self.q
    }

    pub fn second_moment(&self) -> u64 {
        self.omegas.iter().map(|(i, w)| i * i * w).sum()
    }

    pub fn same_values(&self, other: &CSpectrum) -> bool {
        self.c == other.c && self.q == other.q && self.omegas == other.omegas
    }
}

pub fn c_spectrum_bruteforce(
    ctx: &FieldCtx,
    d: u64,
    c: &FieldElem,
) -> Result<CSpectrum, CDiffError> {
    let row = cddt_row(ctx, d, c)?;
    let counts: Vec<u32> = row.row.iter().map(|&v| v as u32).collect();
    Ok(CSpectrum::from_histogram(
        c.clone(),
        ctx.q(),
        d,
        &histogram(&counts),
        Provenance::BruteForce,
    ))
}

fn require_minus_one_range(ctx: &FieldCtx) -> Result<(), CDiffError> {
    let q = ctx.q();
    if q % 4 != 3 || q <= 3 {
        return Err(PowerDiffError::OutOfTheoremRange {
            q,
            reason: "q must be 3 mod 4 and exceed 3",
        }
        .into());
    }
    Ok(())
}

/// `b* = (x+1)^d + x^d` at `x = -1/2`: `4` when 2 is a square, else `-4`.
pub fn special_column(ctx: &FieldCtx) -> FieldElem {
    if ctx.chi_idx(ctx.embed_idx(2)).value() == 1 {
        ctx.embed(4)
    } else {
        ctx.embed(-4)
    }
}

/// Brute-force `(-1)`-spectrum; checks that the only odd column is `b*`.
pub fn minus1_spectrum_bruteforce(ctx: &FieldCtx) -> Result<CSpectrum, CDiffError> {
    require_minus_one_range(ctx)?;
    let d = default_exponent(ctx.q());
    let c = ctx.embed(-1);
    let row = cddt_row(ctx, d, &c)?;
    let expected = special_column(ctx);
    let odd: Vec<FieldElem> = row
        .row
        .iter()
        .enumerate()
        .filter(|&(_, v)| v % 2 == 1)
        .map(|(b, _)| ctx.element(b as ElemIndex))
        .collect();
    if odd.len() != 1 || odd[0] != expected {
        return Err(CDiffError::ParityViolation { odd, expected });
    }
    let counts: Vec<u32> = row.row.iter().map(|&v| v as u32).collect();
    Ok(CSpectrum::from_histogram(
        c,
        ctx.q(),
        d,
        &histogram(&counts),
        Provenance::BruteForce,
    ))
}

pub fn minus1_spectrum_closed_form(ctx: &FieldCtx) -> Result<CSpectrum, CDiffError> {
    require_minus_one_range(ctx)?;
    let inputs = ClosedFormInputs::compute(ctx)?;
    minus1_spectrum_closed_form_from(ctx, &inputs)
}

pub fn minus1_spectrum_closed_form_from(
    ctx: &FieldCtx,
    inputs: &ClosedFormInputs,
) -> Result<CSpectrum, CDiffError> {
    require_minus_one_range(ctx)?;
    let (q, l) = (inputs.q as i128, inputs.lambda as i128);
    let hist = if inputs.chi5 == -1 {
        vec![
            inputs.exact(9 * q + l - 15, 16, "(-1)omega_0")?,
            1,
            inputs.exact(3 * q - l + 3, 8, "(-1)omega_2")?,
            0,
            inputs.exact(q + l - 7, 16, "(-1)omega_4")?,
        ]
    } else {
        vec![
            inputs.exact(9 * q + l + 9, 16, "(-1)omega_0")?,
            0,
            inputs.exact(3 * q - l - 13, 8, "(-1)omega_2")?,
            1,
            inputs.exact(q + l + 1, 16, "(-1)omega_4")?,
        ]
    };
    Ok(CSpectrum::from_histogram(
        ctx.embed(-1),
        inputs.q,
        inputs.d(),
        &hist,
        Provenance::ClosedForm,
    ))
}

/// `_cN₄`: solutions of `x1 - x2 + x3 - x4 = 0`,
/// `x1^d - c·x2^d + c·x3^d - x4^d = 0`.
pub fn c_full_system_count_bruteforce(
    ctx: &FieldCtx,
    d: u64,
    c: &FieldElem,
) -> Result<u64, CDiffError> {
    check_engine(ctx, d)?;
    let c_idx = ctx.index_of(c)?;
    let table = ctx.power_table(d);
    Ok(pair_map_count(ctx, &table, c_idx))
}

/// One evaluation of the second-moment identity
/// `Σ i²·_cω_i = (_cN₄ - 1)/(q - 1) - gcd(d, q - 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CMomentCheck {
    #[serde(serialize_with = "display")]
    pub c: FieldElem,
    pub second_moment: u64,
    pub full_count: u64,
    /// `None` when `_cN₄ - 1` is not divisible by `q - 1`.
    pub rhs: Option<i64>,
    pub first_moments_hold: bool,
}

impl CMomentCheck {
    pub fn holds(&self) -> bool {
        self.first_moments_hold && self.rhs == Some(self.second_moment as i64)
    }
}

pub fn c_moment_check(ctx: &FieldCtx, d: u64, c: &FieldElem) -> Result<CMomentCheck, CDiffError> {
    let spectrum = c_spectrum_bruteforce(ctx, d, c)?;
    let full_count = c_full_system_count_bruteforce(ctx, d, c)?;
    let q = ctx.q();
    let rhs = ((full_count - 1) % (q - 1) == 0)
        .then(|| ((full_count - 1) / (q - 1)) as i64 - gcd_floor(q, d) as i64);
    Ok(CMomentCheck {
        c: c.clone(),
        second_moment: spectrum.second_moment(),
        full_count,
        rhs,
        first_moments_hold: spectrum.moments_hold(),
    })
}

/// Up to `count` distinct `c ∉ {0, ±1}`, chosen reproducibly from `seed`.
pub fn sample_cs(ctx: &FieldCtx, count: usize, seed: u64) -> Vec<FieldElem> {
    let one = ctx.embed_idx(1);
    let minus_one = ctx.embed_idx(-1);
    let mut candidates: Vec<ElemIndex> = (2..ctx.q())
        .filter(|&c| c != minus_one && c != one)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ctx.q());
    candidates.shuffle(&mut rng);
    candidates.truncate(count);
    candidates.sort_unstable();
    candidates.into_iter().map(|c| ctx.element(c)).collect()
}

/// Second-moment identity at `c = -1` and at the given extra `c` values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Minus1MomentReport {
    pub minus_one: CMomentCheck,
    pub sampled: Vec<CMomentCheck>,
    /// `_{-1}N₄` against the closed-form `N₄` (equal since `d` is even).
    pub closed_full_count: u64,
}

impl Minus1MomentReport {
    pub fn holds(&self) -> bool {
        self.minus_one.holds()
            && self.sampled.iter().all(CMomentCheck::holds)
            && self.minus_one.full_count == self.closed_full_count
    }
}

pub fn minus1_moment_check(
    ctx: &FieldCtx,
    sampled: &[FieldElem],
) -> Result<Minus1MomentReport, CDiffError> {
    require_minus_one_range(ctx)?;
    let d = default_exponent(ctx.q());
    let minus_one = c_moment_check(ctx, d, &ctx.embed(-1))?;
    let sampled = sampled
        .iter()
        .map(|c| c_moment_check(ctx, d, c))
        .collect::<Result<Vec<_>, _>>()?;
    let inputs = ClosedFormInputs::compute(ctx)?;
    Ok(Minus1MomentReport {
        minus_one,
        sampled,
        closed_full_count: full_system_count_closed(&inputs)?,
    })
}

/// Predicted and observed `_{-1}δ(1, b*)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialDelta {
    #[serde(serialize_with = "display")]
    pub b_star: FieldElem,
    pub predicted: u64,
    pub observed: u64,
}

impl SpecialDelta {
    pub fn holds(&self) -> bool {
        self.predicted == self.observed
    }
}

pub fn minus1_special_delta(ctx: &FieldCtx) -> Result<SpecialDelta, CDiffError> {
    require_minus_one_range(ctx)?;
    let chi5 = ctx.chi_idx(ctx.embed_idx(5)).value();
    let b_star = special_column(ctx);
    let row = cddt_row(ctx, default_exponent(ctx.q()), &ctx.embed(-1))?;
    let observed = row.row[ctx.index_of(&b_star)? as usize];
    Ok(SpecialDelta {
        b_star,
        predicted: if chi5 == -1 { 1 } else { 3 },
        observed,
    })
}
