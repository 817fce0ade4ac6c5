//! Enumerates the ac-labelings of a small fork and builds its poset product.

use rlkit::algebra::classify;
use rlkit::poset_product::{build_poset_product, check_against_conuclear_image, Frame};
use rlkit::posets::validate_poset;
use rlkit::Limits;

fn main() -> rlkit::Result<()> {
    let limits = Limits::default();
    // a root `r` below two incomparable leaves
    let fork = validate_poset(&["r", "a", "b"], &[("r", "a"), ("r", "b")])?;
    let frame = Frame::with_builtins(fork, &["L3", "L2", "L2"])?;

    let pp = build_poset_product(&frame, &limits)?;
    println!("{} choice functions, {} of them ac-labelings", frame.choice_count(), pp.labelings.len());
    for (i, f) in pp.labelings.iter().enumerate() {
        println!("  #{i}: {:?}", f.0);
    }

    check_against_conuclear_image(&frame, &pp, &limits)?;
    println!("matches the conuclear image of the direct product");

    let c = classify(&pp.algebra);
    println!("GBL={} BL={} MV={} chain={}", c.is_gbl, c.is_bl, c.is_mv, c.is_chain);
    Ok(())
}
