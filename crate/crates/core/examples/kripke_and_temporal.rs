//! Two readings of the same frames: intuitionistic Kripke forcing over
//! two-valued nodes, and the rational-valued temporal clause over
//! Łukasiewicz nodes.

use num_rational::Ratio;
use rlkit::poset_product::Frame;
use rlkit::posets::FinitePoset;
use rlkit::semantics::{
    check_kripke_agreement, kripke_forces, temporal_crosscheck_exhaustive, temporal_eval, TemporalAssignment,
    TemporalFlow, UpsetValuation,
};
use rlkit::syntax::parse;
use rlkit::Limits;

fn main() -> rlkit::Result<()> {
    let limits = Limits::default();
    let vee = FinitePoset::chain(&["u", "v"])?;
    let two = Frame::with_builtins(vee.clone(), &["L2", "L2"])?;
    // p becomes true only at the later node
    let upsets: UpsetValuation = [("p".to_string(), vec![1])].into();
    let lem = parse("p | (p -> 0)")?;
    for x in vee.nodes() {
        println!("Kripke: {} forces {lem}: {}", vee.name(x), kripke_forces(&vee, &upsets, x, &lem)?);
    }
    check_kripke_agreement(&two, &upsets, &lem)?;
    println!("agrees with forcing on the two-valued frame");

    let flow = TemporalFlow::new(FinitePoset::chain(&["t0", "t1"])?, vec![3, 2])?;
    let v: TemporalAssignment = [
        ("p".to_string(), vec![Ratio::new(1, 2), Ratio::from_integer(1)]),
        ("q".to_string(), vec![Ratio::from_integer(0), Ratio::from_integer(1)]),
    ]
    .into();
    for text in ["p -> q", "p * p", "(p -> q) -> q"] {
        let t = parse(text)?;
        let vals: Vec<String> = (0..2).map(|i| temporal_eval(&flow, &v, i, &t).map(|q| q.to_string())).collect::<Result<_, _>>()?;
        println!("temporal {text}: {vals:?}");
    }

    let frame = Frame::with_builtins(FinitePoset::chain(&["t0", "t1"])?, &["L3", "L2"])?;
    let n = temporal_crosscheck_exhaustive(&frame, &parse("(p -> q) * p")?, &limits)?;
    println!("temporal and forcing values agree on all {n} valuations");
    Ok(())
}
