//! Frozen values from an independent brute-force implementation.

use std::collections::BTreeMap;

use spectra_core::c_diff::{
    c_full_system_count_bruteforce, c_uniformity_sweep, cddt_row, minus1_special_delta,
    minus1_spectrum_bruteforce, minus1_spectrum_closed_form,
};
use spectra_core::char_sums::{lambda_report, Method};
use spectra_core::field::{find_irreducible, FieldCtx};
use spectra_core::power_diff::{
    full_system_count_bruteforce, full_system_count_closed, normalized_class_counts,
    spectrum_bruteforce, spectrum_closed_form, ClosedFormInputs,
};

fn field(p: u64, n: usize) -> FieldCtx {
    FieldCtx::new(p, n, None).unwrap()
}

fn omegas(pairs: &[(u64, u64)]) -> BTreeMap<u64, u64> {
    pairs.iter().copied().collect()
}

#[test]
fn canonical_moduli() {
    let cases: [((u64, usize), &[u64]); 9] = [
        ((3, 2), &[1, 0, 1]),
        ((7, 2), &[1, 0, 1]),
        ((11, 2), &[1, 0, 1]),
        ((19, 2), &[1, 0, 1]),
        ((3, 3), &[1, 2, 0, 1]),
        ((7, 3), &[2, 0, 0, 1]),
        ((11, 3), &[4, 1, 0, 1]),
        ((7, 4), &[1, 1, 0, 0, 1]),
        ((3, 5), &[1, 2, 0, 0, 0, 1]),
    ];
    for ((p, n), modulus) in cases {
        assert_eq!(find_irreducible(p, n), modulus, "({p}, {n})");
        assert_eq!(field(p, n).modulus().unwrap(), modulus);
    }
}

#[test]
fn character_sums_and_characters() {
    // (p, n) -> (lambda1, lambda2, lambda, chi(5), chi(2))
    let cases = [
        ((7, 1), (2, -2, 0, -1, 1)),
        ((11, 1), (4, 0, 4, 1, -1)),
        ((19, 1), (-8, 4, -4, 1, -1)),
        ((23, 1), (6, -6, 0, -1, 1)),
        ((3, 3), (-10, -10, -20, -1, -1)),
        ((3, 5), (2, 2, 4, -1, -1)),
        ((7, 3), (-34, 34, 0, -1, 1)),
        ((11, 3), (-68, 0, -68, 1, -1)),
    ];
    for ((p, n), (l1, l2, l, chi5, chi2)) in cases {
        let ctx = field(p, n);
        let r = lambda_report(&ctx, Method::Direct).unwrap();
        assert_eq!((r.lambda1, r.lambda2, r.lambda), (l1, l2, l), "({p}, {n})");
        assert_eq!(ctx.chi(&ctx.embed(5)).unwrap().value(), chi5);
        assert_eq!(ctx.chi(&ctx.embed(2)).unwrap().value(), chi2);
        if n > 1 {
            let rec = lambda_report(&ctx, Method::Recurrence).unwrap();
            assert_eq!((rec.lambda1, rec.lambda2), (l1, l2));
        }
    }
}

#[test]
fn differential_spectra_of_small_fields() {
    let cases = [
        ((7, 1), omegas(&[(0, 0), (1, 7)])),
        ((11, 1), omegas(&[(0, 4), (1, 5), (2, 0), (3, 2)])),
        ((19, 1), omegas(&[(0, 4), (1, 13), (2, 0), (3, 2)])),
        ((23, 1), omegas(&[(0, 4), (1, 15), (2, 4)])),
        ((3, 3), omegas(&[(0, 0), (1, 27)])),
    ];
    for ((p, n), expected) in cases {
        let ctx = field(p, n);
        let s = spectrum_bruteforce(&ctx, (ctx.q() - 3) / 2).unwrap();
        assert_eq!(s.omegas, expected, "q = {}", ctx.q());
        if ctx.q() > 7 && ctx.q() != 27 {
            assert_eq!(spectrum_closed_form(&ctx).unwrap().omegas, expected);
        }
    }
}

#[test]
fn minus_one_spectra_of_small_fields() {
    let cases = [
        ((7, 1), omegas(&[(0, 3), (1, 1), (2, 3)])),
        ((11, 1), omegas(&[(0, 7), (2, 2), (3, 1), (4, 1)])),
        ((19, 1), omegas(&[(0, 11), (2, 6), (3, 1), (4, 1)])),
        ((23, 1), omegas(&[(0, 12), (1, 1), (2, 9), (4, 1)])),
        ((3, 3), omegas(&[(0, 13), (1, 1), (2, 13)])),
    ];
    for ((p, n), expected) in cases {
        let ctx = field(p, n);
        assert_eq!(minus1_spectrum_bruteforce(&ctx).unwrap().omegas, expected);
        assert_eq!(minus1_spectrum_closed_form(&ctx).unwrap().omegas, expected);
    }
}

#[test]
fn four_variable_counts() {
    let cases = [
        ((7, 1), 91),
        ((11, 1), 351),
        ((19, 1), 919),
        ((23, 1), 1211),
        ((3, 3), 1431),
        ((3, 5), 146_895),
    ];
    for ((p, n), expected) in cases {
        let ctx = field(p, n);
        let d = (ctx.q() - 3) / 2;
        assert_eq!(full_system_count_bruteforce(&ctx, d).unwrap(), expected);
        assert_eq!(
            c_full_system_count_bruteforce(&ctx, d, &ctx.embed(-1)).unwrap(),
            expected
        );
        let inputs = ClosedFormInputs::compute(&ctx).unwrap();
        assert_eq!(full_system_count_closed(&inputs).unwrap(), expected);
    }
}

#[test]
fn class_counts_hold_outside_the_spectrum_range() {
    for (p, n) in [(7, 1), (3, 3), (11, 1), (23, 1)] {
        let cmp = normalized_class_counts(&field(p, n)).unwrap();
        assert_eq!(cmp.brute_force.counts, cmp.closed_form.counts);
    }
}

#[test]
fn odd_column_of_the_minus_one_row() {
    let ctx = field(11, 1);
    let row = cddt_row(&ctx, 4, &ctx.embed(-1)).unwrap();
    let odd: Vec<usize> = (0..row.row.len())
        .filter(|&b| row.row[b] % 2 == 1)
        .collect();
    assert_eq!(odd, vec![7]);
    assert_eq!(row.row[7], 3);
    let special = minus1_special_delta(&ctx).unwrap();
    assert_eq!(special.b_star, ctx.embed(-4));
    assert_eq!(special.observed, 3);

    for ((p, n), count) in [((7, 3), 1), ((11, 3), 3)] {
        assert_eq!(minus1_special_delta(&field(p, n)).unwrap().observed, count);
    }
}

#[test]
fn bound_tightness() {
    assert_eq!(c_uniformity_sweep(&field(7, 4), false).unwrap().max, 9);
    assert_eq!(c_uniformity_sweep(&field(7, 3), false).unwrap().max, 5);
}
