//! Classify ball-mass growth profiles `c r^alpha ln(e+r)^beta` against an exponent `p`.

use radcomp::growth::{GrowthProfile, GrowthVerdict};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = 3.0;
    let profiles = [("r^p", 1.0, p, 0.0), ("r^(p+1)", 1.0, p + 1.0, 0.0), ("r^p ln^((p-1)/2)", 1.0, p, (p - 1.0) / 2.0)];
    println!("{:<18} {}", "profile", GrowthVerdict::HEADER.join(" "));
    for (name, c, alpha, beta) in profiles {
        let v = GrowthProfile::new(p, c, alpha, beta)?.classify();
        let flags: Vec<&str> = v.flags().iter().map(|&b| if b { "y" } else { "." }).collect();
        println!("{name:<18} {}  balanced={} chain={}", flags.join(" "), v.balanced, v.chain_holds());
    }
    let g = GrowthProfile::new(2.0, 1.0, 2.0, 0.0)?;
    for upper in [1e2, 1e4, 1e6] {
        println!("truncated integral up to {upper:e}: {:.4}", g.truncated_small_integral(1.0, upper)?);
    }
    Ok(())
}
