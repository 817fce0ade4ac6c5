//! Feeds hand-written operation tables to the validator, one good and one
//! with a broken implication cell.

use rlkit::algebra::{lukasiewicz_chain, residuation_by_equations, residuation_by_quantifier, validate_algebra};

fn main() -> rlkit::Result<()> {
    let good = lukasiewicz_chain(3)?.to_raw();
    validate_algebra(&good)?;
    println!("L3 tables: accepted");

    let mut bad = good.clone();
    bad.imp[2][1] = 2;
    for (how, verdict) in [
        ("quantifier form", residuation_by_quantifier(&bad)),
        ("equational form", residuation_by_equations(&bad)),
        ("full validation", validate_algebra(&bad)),
    ] {
        match verdict {
            Ok(()) => println!("{how}: accepted"),
            Err(e) => println!("{how}: rejected, {e}"),
        }
    }

    println!("\nas JSON:\n{}", serde_json::to_string(&good).expect("tables serialize"));
    Ok(())
}
