//! Places formulas in the substructural hierarchy and tests an inequality for
//! preservation under a conucleus.

use rlkit::algebra::Conucleus;
use rlkit::poset_product::{box_on_direct_product, Frame};
use rlkit::posets::FinitePoset;
use rlkit::structure::conuclear_preservation_check;
use rlkit::syntax::{classify_hierarchy, is_conuclear_equation, parse, parse_equation};
use rlkit::Limits;

fn main() -> rlkit::Result<()> {
    for text in ["p", "p -> q", "(p -> q) | (q -> p)", "(p -> q) -> r", "((p -> q) -> r) -> s"] {
        let c = classify_hierarchy(&parse(text)?);
        let level = |l: Option<u32>| l.map_or("-".to_string(), |n| n.to_string());
        println!(
            "{text:<24} P_{:<2} N_{:<2} P2*={} N2*={}",
            level(c.p_level),
            level(c.n_level),
            c.in_p2_star,
            c.in_n2_star
        );
    }

    let eq = parse_equation("(x * x) -> (x & x) = 1")?;
    let trace = is_conuclear_equation(&eq);
    println!("\n{eq}: conuclear={} ({})", trace.conuclear, trace.reason);

    let limits = Limits::default();
    let frame = Frame::with_builtins(FinitePoset::chain(&["lo", "hi"])?, &["L3", "L3"])?;
    let base = frame.direct_product(&limits)?;
    let sigma = Conucleus::new(&base, box_on_direct_product(&frame, &base))?;
    let ineq = parse_equation("x * y <= x & y")?;
    let r = conuclear_preservation_check(&sigma, &ineq, &limits)?;
    println!("{ineq}: base {}, image {}", r.holds_in_base, r.holds_in_image);
    Ok(())
}
