//! Sharp constants of weighted Hardy-type inequalities and their verification on bump functions.

use radcomp::inequalities::{
    ckn_constant, costa_constant, hardy_constant, near_sharpness_search, verify_ckn, verify_hardy, CknCondition, CknScenario,
    CostaCase, HardyScenario,
};
use radcomp::model::ModelManifold;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for cond in CknCondition::all_rows(2.0, 1.5, 0.3, 0.2, 1.0) {
        match ckn_constant(&cond, 1.5, 1.5, 3) {
            Ok(c) => println!("{cond:<12} C = {c:.6}"),
            Err(e) => println!("{cond:<12} {e}"),
        }
    }

    let cond = CknCondition::EqualityPower { a: 1.5, c: 0.0 };
    let s = CknScenario::with_bump(ModelManifold::power(3, 1.5, 6.0)?, 0.5, 0.5, 0.5, 3.0, 4.0, 5.0)?;
    let rep = verify_ckn(&s, &cond)?;
    println!("r^1.5 model: C = {:.6}, lhs {:.6} <= rhs {:.6} ({})", rep.constant, rep.lhs, rep.rhs, rep.passed);

    let flat = ModelManifold::euclidean(4, 20.0)?;
    let (ratio, inner, q) = near_sharpness_search(&flat, 0.0, 0.0, 10.0)?;
    println!("flat n = 4: best bump ratio {ratio:.4} (inner ratio {inner:.2e}, q = {q:.1}) vs C = {}", ckn_constant(&CknCondition::Flat, 0.0, 0.0, 4)?);

    println!("Hardy constant p = 4, n = 3, A = 1: {}", hardy_constant(4.0, 3, 1.0)?);
    let h = verify_hardy(&HardyScenario::new(ModelManifold::euclidean(3, 5.0)?, 4.0, 1.5, 1.0, 3.0)?)?;
    println!("Hardy check: {:.6} <= {:.6} ({})", h.lhs, h.rhs, h.passed);

    for case in CostaCase::ALL {
        let c = costa_constant(case, 1.0, &CknCondition::SecLowerPower { a: 1.0, c: 0.0 }, 3)?;
        println!("case {:<4} weights {:?}: {c:.4}", case.label(), case.weights(1.0));
    }
    Ok(())
}
