//! Exact exterior calculus on polynomial forms in flat space.

use radcomp::forms::{condition_w_report, PolyForm, Q};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for text in ["x1 dx1", "x3 dx1", "dx1^dx2", "x1 dx2^dx3"] {
        let w = PolyForm::parse(3, text)?;
        let c = w.classify();
        println!("{text:<12} d = {:<14} delta = {:<8} closed={} coclosed={} harmonic={}", w.d()?.to_string(), w.codiff()?.to_string(), c.closed, c.coclosed, c.harmonic);
    }

    let w = PolyForm::parse(3, "x1*x2 dx1 + x3^2 dx2")?;
    println!("d(d w) = {}, star w = {}", w.d()?.d()?, w.hodge_star());

    let points: Vec<Vec<Q>> = (1..=4).map(|i| (0..3).map(|j| Q::from_integer((i - 2 * j).into())).collect()).collect();
    let rep = condition_w_report(&PolyForm::parse(3, "x3 dx1")?, &points)?;
    println!("condition W at {} points: {} (worst {} vs {})", points.len(), rep.holds_at_all_samples, rep.worst.lhs, rep.worst.rhs);
    Ok(())
}
