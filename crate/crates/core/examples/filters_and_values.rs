//! Filters, values and quotients of L3 x L2.

use rlkit::algebra::{direct_product, lukasiewicz_chain};
use rlkit::filters::{enumerate_filters, quotient, si_analysis, values};
use rlkit::Limits;

fn main() -> rlkit::Result<()> {
    let limits = Limits::default();
    let a = direct_product(&[lukasiewicz_chain(3)?, lukasiewicz_chain(2)?], &limits)?;
    println!("A = L3 x L2 has {} elements", a.size());

    let filters = enumerate_filters(&a, &limits)?;
    println!("{} filters:", filters.len());
    for f in &filters {
        let members: Vec<usize> = a.elements().filter(|&x| f.contains(x)).collect();
        println!("  {members:?}");
    }

    let v = values(&a, &limits)?;
    println!("\nvalues, ordered by inclusion:");
    for (i, f) in v.filters.iter().enumerate() {
        let q = quotient(&a, f)?;
        let si = si_analysis(&q.algebra, &limits)?;
        println!(
            "  {} -> quotient of size {}, subdirectly irreducible: {}",
            v.poset.name(i),
            q.algebra.size(),
            si.is_si
        );
    }
    println!("cover pairs of the value poset: {:?}", v.poset.covers());
    println!("A itself subdirectly irreducible: {}", si_analysis(&a, &limits)?.is_si);
    Ok(())
}
