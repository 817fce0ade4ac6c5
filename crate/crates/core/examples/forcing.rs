//! Forcing on a two-node frame, frame validity, and a countermodel search
//! for prelinearity.

use rlkit::algebra::lukasiewicz_chain;
use rlkit::poset_product::{AcLabeling, Frame};
use rlkit::posets::FinitePoset;
use rlkit::semantics::{countermodel_search, forces, frame_valid, FrameFamily, SearchOptions, Valuation};
use rlkit::syntax::parse;
use rlkit::Limits;

fn main() -> rlkit::Result<()> {
    let limits = Limits::default();
    let frame = Frame::with_builtins(FinitePoset::chain(&["now", "later"])?, &["L3", "L2"])?;

    let h: Valuation = [
        ("p".to_string(), AcLabeling(vec![1, 1])),
        ("q".to_string(), AcLabeling(vec![0, 1])),
    ]
    .into();
    let phi = parse("p -> q")?;
    for x in frame.poset().nodes() {
        println!("{} forces {phi}: {}", frame.poset().name(x), forces(&frame, &h, x, &phi)?);
    }

    for text in ["(p -> q) | (q -> p)", "p | (p -> 0)"] {
        let t = parse(text)?;
        println!("{text}: {:?}", frame_valid(&frame, &t, &limits)?);
    }

    let family = FrameFamily {
        max_nodes: 3,
        values: vec![("L2".into(), lukasiewicz_chain(2)?), ("L3".into(), lukasiewicz_chain(3)?)],
    };
    let outcome = countermodel_search(&parse("(p -> q) | (q -> p)")?, &family, &limits, &SearchOptions::default())?;
    println!("\nsearch: {}", serde_json::to_string(&outcome).expect("outcome serializes"));
    Ok(())
}
