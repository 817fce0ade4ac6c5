//! Builds the first few Łukasiewicz and Gödel chains and classifies them.

use rlkit::algebra::{classify, godel_chain, lukasiewicz_chain};

fn main() -> rlkit::Result<()> {
    for k in 2..=5 {
        for (name, a) in [(format!("L{k}"), lukasiewicz_chain(k)?), (format!("G{k}"), godel_chain(k)?)] {
            let c = classify(&a);
            println!(
                "{name:>3}: {} elements, MV={} Heyting={} Goedel={} potency={:?}",
                a.size(),
                c.is_mv,
                c.is_heyting,
                c.is_godel,
                c.potency
            );
        }
    }

    let l4 = lukasiewicz_chain(4)?;
    println!("\nproduct table of L4 (element i stands for i/3):");
    for x in l4.elements() {
        let row: Vec<String> = l4.elements().map(|y| l4.prod(x, y).to_string()).collect();
        println!("  {}", row.join(" "));
    }
    Ok(())
}
