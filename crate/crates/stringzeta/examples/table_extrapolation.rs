//! Ground-state recovery from exact sum rules.
//!
//! With exact Z(1..9) for the horgan-chan string (log-polynomials in ln 2),
//! three estimators of E₁ = 10.21811334466594106529243… are compared:
//!
//!   Waring:  Z(q)^(−1/q)                      — a rigorous lower bound,
//!   Berry:   [Z(q) − Z̃₁⁺(q)]^(−1/q)           — tail-corrected,
//!   Shanks:  repeated Shanks transformation of either column.
//!
//! Z̃₁⁺(q) is the semiclassical tail Σ_{n≥2}(α εₙ + β)^(−q) built from the
//! asymptotic law Eₙ ≈ α εₙ + β; for the reference columns reproduced here
//! the historical tail model is (α, β) = (1, ln 2 / 2).  The string's true
//! Weyl constants are (1, 3/8) — the reference model bakes part of the
//! O(1/n²) correction into β, which is why it reproduces the printed
//! ladder digits while the true pair does not.
//!
//! The Shanks ladders are carried in double-double arithmetic: the f64
//! Waring ladder bottoms out half a nanounit from the reference because
//! Z(9) already holds ~1e−9 of cancellation noise, which nine Shanks
//! denominators amplify.

use stringzeta::dd::{dd, dd_div, format_fixed, nth_root};
use stringzeta::extrapolate::{berry_sequence_dd, shanks_table_dd};
use stringzeta::fixtures::{
    self, BERRY_REFERENCE, SHANKS_LADDER_REFERENCE, SHANKS_LADDER_REFERENCE_DD, WARING_REFERENCE,
};
use stringzeta::greens::BoundaryCondition;

fn main() {
    let orders: Vec<u32> = (1..=9).collect();
    let tail = fixtures::horgan_chan_reference_tail();

    let z_dd: Vec<_> = orders
        .iter()
        .map(|&q| fixtures::horgan_chan_zeta_dd(q).expect("fixture"))
        .collect();
    let waring: Vec<_> = z_dd
        .iter()
        .zip(&orders)
        .map(|(&z, &q)| dd_div(dd(1.0), nth_root(z, q)))
        .collect();
    let berry =
        berry_sequence_dd(&orders, &z_dd, &tail, BoundaryCondition::DD).expect("tail fits");

    println!("estimates of E₁ from exact Z(1..9)  (reference digits in parentheses)\n");
    println!("{:>3}  {:>12} {:>14}  {:>12} {:>14}", "q", "Waring", "(reference)", "Berry", "(reference)");
    for i in 0..9 {
        println!(
            "{:>3}  {:>12} {:>14}  {:>12} {:>14}",
            i + 1,
            format_fixed(waring[i], 8),
            format!("({})", WARING_REFERENCE[i]),
            format_fixed(berry[i], 8),
            format!("({})", BERRY_REFERENCE[i]),
        );
    }

    let ladder_w = shanks_table_dd(&waring, 4).expect("9 entries allow depth 4");
    let ladder_b = shanks_table_dd(&berry, 4).expect("9 entries allow depth 4");

    println!("\nrepeated Shanks on the Waring column (deepest per depth):\n");
    for (d, col) in ladder_w.columns.iter().enumerate().skip(1) {
        let refs = SHANKS_LADDER_REFERENCE[d - 1];
        println!(
            "  depth {d}: {}   (reference {})",
            format_fixed(*col.last().expect("nonempty"), 12),
            refs.last().expect("nonempty")
        );
    }

    println!("\nrepeated Shanks on the Berry column (deepest per depth):\n");
    for (d, col) in ladder_b.columns.iter().enumerate().skip(1) {
        let refs = SHANKS_LADDER_REFERENCE_DD[d - 1];
        println!(
            "  depth {d}: {}   (reference {})",
            format_fixed(*col.last().expect("nonempty"), 16),
            refs.last().expect("nonempty")
        );
    }

    let deepest = ladder_b.deepest().0;
    println!("\nground state:    {}", fixtures::HORGAN_CHAN_GROUND_STATE_DIGITS);
    println!("deepest estimate: {}", format_fixed(deepest, 18));
    println!("agreement: {:.1e} — fifteen digits from nine exact moments",
        (deepest - stringzeta::dd::parse_decimal(fixtures::HORGAN_CHAN_GROUND_STATE_DIGITS))
            .hi()
            .abs()
    );
}
