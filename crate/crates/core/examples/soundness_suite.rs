//! Runs the standard axioms over every frame with at most two nodes.

use rlkit::algebra::lukasiewicz_chain;
use rlkit::semantics::{enumerate_frames, soundness_instance_suite, standard_axioms, FrameFamily, SuiteStatus};
use rlkit::Limits;

fn main() -> rlkit::Result<()> {
    let family = FrameFamily {
        max_nodes: 2,
        values: vec![("L2".into(), lukasiewicz_chain(2)?), ("L3".into(), lukasiewicz_chain(3)?)],
    };
    let frames = enumerate_frames(&family)?;
    let report = soundness_instance_suite(&frames, &standard_axioms(2), &Limits::default())?;
    for e in &report.entries {
        let f = &frames[e.frame];
        let shape = format!("{:?} covers {:?}", f.labels(), f.poset().covers());
        match &e.status {
            SuiteStatus::Valid { valuations } => println!("{:<20} {shape:<30} valid ({valuations})", e.axiom),
            SuiteStatus::Skipped { reason } => println!("{:<20} {shape:<30} skipped: {reason}", e.axiom),
        }
    }
    println!("checked {}, skipped {}", report.checked, report.skipped);
    Ok(())
}
