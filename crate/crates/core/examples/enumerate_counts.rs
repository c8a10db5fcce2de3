//! Compare enumerated counts with the closed forms for small sizes.
use quadbound::enumerate::{count_formula, enumerated_count, CountKind};

fn main() -> quadbound::Result<()> {
    println!("{:>2} {:>2} {:>4} {:>8} {:>8}", "n", "σ", "kind", "counted", "formula");
    for sigma in 1..=4 {
        for n in 0..=(8 - sigma) / 2 {
            for kind in [CountKind::F, CountKind::B, CountKind::Q] {
                let counted = enumerated_count(kind, n, sigma)?;
                let formula = count_formula(kind, n, sigma)?;
                println!("{n:>2} {sigma:>2} {kind:>4} {counted:>8} {formula:>8}");
            }
        }
    }
    Ok(())
}
