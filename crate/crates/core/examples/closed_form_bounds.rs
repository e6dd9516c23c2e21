//! The bound formulas on hand-written overlap matrices.
//!
//! cargo run --example closed_form_bounds

use ber_bounds::bounds::{ghp_bounds, js_bounds, pw_bounds, JsOracleInputs};
use ber_bounds::estimators::{DeltaKind, DeltaMatrix};
use ber_bounds::{Priors, Source};

fn main() -> ber_bounds::Result<()> {
    // Two identical classes: both bounds meet at 1/2.
    let same = DeltaMatrix::from_upper(DeltaKind::Generalized, Source::Oracle, 2, 0, &[0.25])?;
    let r = ghp_bounds(&same)?;
    println!("identical pair      GHP [{}, {}]", r.lower, r.upper);

    // Three classes, upper triangle (1,2), (1,3), (2,3).
    let gen = DeltaMatrix::from_upper(DeltaKind::Generalized, Source::Oracle, 3, 0, &[0.04, 0.01, 0.02])?;
    let pw = DeltaMatrix::from_upper(DeltaKind::PairwiseHp, Source::Oracle, 3, 0, &[0.05, 0.012, 0.025])?;
    let priors = Priors::uniform(3);
    let g = ghp_bounds(&gen)?;
    let p = pw_bounds(&pw, &priors)?;
    let j = js_bounds(JsOracleInputs { cond_entropy: 0.45, m: 3 })?;
    println!("three classes       GHP [{:.4}, {:.4}]", g.lower, g.upper);
    println!("                    PW  [{:.4}, {:.4}]", p.lower, p.upper);
    println!("                    JS  [{:.4}, {:.4}]", j.lower, j.upper);

    // A noisy estimate beyond the feasible range is clamped, not rejected.
    let noisy = DeltaMatrix::from_upper(DeltaKind::Generalized, Source::Empirical, 2, 4, &[0.375])?;
    let r = ghp_bounds(&noisy)?;
    println!("chain estimate      GHP [{}, {}] clamped={} {:?}", r.lower, r.upper, r.clamped, r.warnings);
    Ok(())
}
