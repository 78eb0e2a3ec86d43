//! Double-double arithmetic helpers.
//!
//! The extrapolation pipeline feeds exact sum-rule values through up to four
//! repeated Shanks transformations.  Each pass cancels the leading transient
//! of the sequence, and by the deepest entries the differences entering the
//! transform have lost ~20 significant digits: plain `f64` bottoms out near
//! 5e-8 absolute, far short of the 13+ significant digits the deepest table
//! entries carry.  All table-level extrapolation therefore runs in
//! double-double precision (~31 significant digits), provided by the
//! [`twofloat`] crate.  Only algebraic operations are needed — add, mul, div,
//! integer powers, n-th roots — so no transcendental accuracy is at stake.
//!
//! One trap: `twofloat`'s double-by-double division (and `recip`, and
//! negative-exponent `powi`) silently degrades to ~f64 accuracy (no fma in
//! its residual step), while `+`, `-`, `*`, `sqrt`, positive `powi`, and
//! division by a bare `f64` are fully accurate.  All quotients of two
//! double-doubles in this crate must therefore go through [`dd_div`] /
//! [`dd_recip`], which repair the missing bits with one Newton step.

pub use twofloat::TwoFloat;

use std::sync::OnceLock;

/// Shorthand conversion.
pub fn dd(x: f64) -> TwoFloat {
    TwoFloat::from_f64(x)
}

/// Full-precision quotient of two double-doubles.
///
/// The library's `TwoFloat / TwoFloat` (and `recip`, and `powi` with a
/// negative exponent) computes the reciprocal residual as `1.0 - hi * th`
/// in plain arithmetic, where the product rounds to exactly 1.0 whenever
/// th is within half an ulp of 1/hi — the entire correction is lost and
/// the quotient is only as accurate as `f64` division.  Division by a bare
/// `f64` and multiplication do use fma and keep full accuracy, so one
/// Newton step built from those repairs the quotient: with q ≈ a/b the
/// residual r = a − b·q is computed accurately, and r/b.hi() supplies the
/// missing ~52 bits.
pub fn dd_div(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q = a / b;
    q + (a - b * q) / b.hi()
}

/// Full-precision reciprocal (see [`dd_div`]).
pub fn dd_recip(b: TwoFloat) -> TwoFloat {
    dd_div(dd(1.0), b)
}

/// Exact rational as a double-double.  Both integers must be exactly
/// representable in `f64` (|v| < 2^53), which holds for every constant used
/// in this crate; the quotient is then correctly rounded to double-double.
pub fn dd_ratio(num: i64, den: i64) -> TwoFloat {
    debug_assert!(num.unsigned_abs() < (1 << 53) && den.unsigned_abs() < (1 << 53));
    // divide by the bare f64: that operator keeps double-double accuracy
    TwoFloat::from_f64(num as f64) / (den as f64)
}

/// π as a double-double.
pub fn pi() -> TwoFloat {
    twofloat::consts::PI
}

/// log 2 as a double-double.
pub fn ln_2() -> TwoFloat {
    twofloat::consts::LN_2
}

/// n-th root of a positive value by Newton iteration on r^n - x = 0.
/// The `f64` seed is already accurate to ~1e-16 relative, and each Newton
/// step doubles the number of correct digits, so two steps reach the
/// double-double noise floor.
pub fn nth_root(x: TwoFloat, n: u32) -> TwoFloat {
    assert!(n >= 1, "nth_root requires n >= 1");
    if n == 1 {
        return x;
    }
    assert!(x.hi() > 0.0, "nth_root requires a positive argument");
    if n == 2 {
        return x.sqrt();
    }
    let mut r = dd(x.hi().powf(1.0 / n as f64));
    let ni = n as i32;
    for _ in 0..3 {
        let rn1 = r.powi(ni - 1);
        r -= dd_div(r * rn1 - x, dd(n as f64) * rn1);
    }
    r
}

/// ζ(2j) for j = 1..=J_MAX, computed once from the classical recurrence
/// (n + 1/2) ζ(2n) = Σ_{k=1}^{n-1} ζ(2k) ζ(2n-2k) with ζ(2) = π²/6.
/// Everything is rational in π², so the recurrence stays at full
/// double-double accuracy.
pub const ZETA_EVEN_MAX: usize = 128;

fn zeta_even_table() -> &'static Vec<TwoFloat> {
    static TABLE: OnceLock<Vec<TwoFloat>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![dd(0.0); ZETA_EVEN_MAX + 1];
        t[1] = pi() * pi() / 6.0;
        for n in 2..=ZETA_EVEN_MAX {
            let mut s = dd(0.0);
            for k in 1..n {
                s += t[k] * t[n - k];
            }
            t[n] = s / (n as f64 + 0.5);
        }
        t
    })
}

/// ζ(2j) in double-double precision, for 1 <= j <= 128.
pub fn zeta_even(j: usize) -> TwoFloat {
    assert!((1..=ZETA_EVEN_MAX).contains(&j), "zeta_even: j out of range");
    zeta_even_table()[j]
}

/// λ(2j) = (1 - 2^{-2j}) ζ(2j), the Dirichlet lambda function at even
/// arguments; it sums the odd-denominator series Σ_{k odd} k^{-2j}.
pub fn lambda_even(j: usize) -> TwoFloat {
    // 4^{-j} is an exact power of two for every j in range
    let quarter_j = 0.25f64.powi(j as i32);
    (dd(1.0) - dd(quarter_j)) * zeta_even(j)
}

/// Parse a plain decimal literal ("10.2181133446659408", "-0.5") into a
/// double-double, keeping every printed digit exactly.  Used to compare
/// computed values against published table entries that carry more digits
/// than an `f64` can hold.
pub fn parse_decimal(s: &str) -> TwoFloat {
    let s = s.trim();
    let (neg, s) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    let mut v = dd(0.0);
    for c in int_part.chars() {
        let d = c.to_digit(10).expect("parse_decimal: invalid digit") as f64;
        v = v * dd(10.0) + dd(d);
    }
    let mut scale = dd(1.0);
    for c in frac_part.chars() {
        let d = c.to_digit(10).expect("parse_decimal: invalid digit") as f64;
        scale = scale / 10.0;
        v += dd(d) * scale;
    }
    if neg {
        -v
    } else {
        v
    }
}

/// Format a double-double with `places` digits after the decimal point,
/// correctly rounded, keeping digits beyond `f64` resolution.
pub fn format_fixed(x: TwoFloat, places: usize) -> String {
    let neg = x.hi() < 0.0;
    let mut y = x.abs();
    // round at the requested place
    let half_ulp = dd_div(dd(0.5), dd(10.0).powi(places as i32));
    y += half_ulp;
    let int = y.trunc();
    let mut frac = y - int;
    // integer digits
    let mut ipart = int;
    let mut idigits = Vec::new();
    if ipart.hi() < 1.0 {
        idigits.push(b'0');
    } else {
        while ipart.hi() >= 1.0 {
            let q = (ipart / 10.0).trunc();
            let r = ipart - q * dd(10.0);
            let d = r.hi().round() as u8;
            idigits.push(b'0' + d.min(9));
            ipart = q;
        }
        idigits.reverse();
    }
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(std::str::from_utf8(&idigits).unwrap());
    if places > 0 {
        out.push('.');
        for _ in 0..places {
            frac *= dd(10.0);
            let d = frac.trunc();
            let dv = d.hi().round().clamp(0.0, 9.0) as u8;
            out.push((b'0' + dv) as char);
            frac -= d;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accurate_division_helpers() {
        // The raw TwoFloat/TwoFloat operator drops the reciprocal residual
        // (see dd_div docs); if this first assertion ever starts failing the
        // upstream operator was fixed and dd_div can be retired.
        let raw = dd(1.0) / dd(3.0);
        assert!((raw * dd(3.0) - dd(1.0)).abs().hi() > 1e-20);
        let fixed = dd_div(dd(1.0), dd(3.0));
        assert!((fixed * dd(3.0) - dd(1.0)).abs().hi() < 1e-30);
        assert!((dd_recip(pi()) * pi() - dd(1.0)).abs().hi() < 1e-30);
    }

    #[test]
    fn rational_and_roots() {
        let x = dd_ratio(1, 3);
        assert!((x * dd(3.0) - dd(1.0)).abs().hi() < 1e-30);
        let r = nth_root(dd(2.0), 10);
        assert!((r.powi(10) - dd(2.0)).abs().hi() < 1e-29);
        let c = nth_root(dd(27.0), 3);
        assert!((c - dd(3.0)).abs().hi() < 1e-30);
    }

    #[test]
    fn zeta_even_values() {
        // ζ(2) = π²/6, ζ(4) = π⁴/90, ζ(6) = π⁶/945, ζ(8) = π⁸/9450
        let p = pi();
        assert!((zeta_even(1) - p.powi(2) / 6.0).abs().hi() < 1e-30);
        assert!((zeta_even(2) - p.powi(4) / 90.0).abs().hi() < 1e-29);
        assert!((zeta_even(3) - p.powi(6) / 945.0).abs().hi() < 1e-28);
        assert!((zeta_even(4) - p.powi(8) / 9450.0).abs().hi() < 1e-27);
        // large order tends to 1
        assert!((zeta_even(40) - dd(1.0)).abs().hi() < 1e-23);
    }

    #[test]
    fn lambda_even_values() {
        // λ(2) = π²/8
        assert!((lambda_even(1) - pi().powi(2) / 8.0).abs().hi() < 1e-30);
    }

    #[test]
    fn decimal_round_trip() {
        let s = "10.2181133446659408";
        let v = parse_decimal(s);
        assert_eq!(format_fixed(v, 16), s);
        let t = "-0.250000";
        assert_eq!(format_fixed(parse_decimal(t), 6), t);
        // rounding up across the point
        assert_eq!(format_fixed(parse_decimal("9.9999"), 2), "10.00");
    }
}
