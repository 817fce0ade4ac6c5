//! Recovers a finite BL-algebra from its value frame.

use rlkit::algebra::{direct_product, godel_chain, lukasiewicz_chain};
use rlkit::poset_product::{build_poset_product, Frame};
use rlkit::posets::FinitePoset;
use rlkit::structure::{represent_finite_gbl, StructureReport};
use rlkit::Limits;

fn main() -> rlkit::Result<()> {
    let limits = Limits::default();
    let ordinal = build_poset_product(&Frame::with_builtins(FinitePoset::chain(&["x", "y"])?, &["L3", "L2"])?, &limits)?;
    let samples = [
        ("L4", lukasiewicz_chain(4)?),
        ("G3 x L2", direct_product(&[godel_chain(3)?, lukasiewicz_chain(2)?], &limits)?),
        ("P(L3 below L2)", ordinal.algebra),
    ];
    for (name, a) in samples {
        let r = represent_finite_gbl(&a, &limits)?;
        let report = StructureReport::new(name, &r);
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
        for (x, f) in r.embedding.labelings.iter().enumerate() {
            println!("  eps({x}) = {:?}", f.0);
        }
    }
    Ok(())
}
