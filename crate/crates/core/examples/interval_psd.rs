//! Vertex reduction for definiteness of a matrix interval.

use tenshull::classify::SearchBudget;
use tenshull::interval::{hull_is_p, hull_is_p0, hull_is_pd, hull_is_psd, IntervalHull};
use tenshull::Tensor;

fn main() -> tenshull::Result<()> {
    let hull = IntervalHull::new(
        Tensor::new(2, 2, vec![1., -1., -1., 1.])?,
        Tensor::new(2, 2, vec![2., 1., 1., 2.])?,
    )?;
    let budget = SearchBudget::default();
    let psd = hull_is_psd(&hull, &budget)?;
    println!("psd: {:?}", psd.label);
    for rec in &psd.vertices {
        let t = hull.vertex_tensor(&rec.z)?;
        println!("  z = {:?}  vertex {:?}  {:?}", rec.z.as_slice(), t.entries(), rec.verdict.label);
    }
    for (name, v) in [("pd", hull_is_pd(&hull, &budget)?), ("p", hull_is_p(&hull, &budget)?), ("p0", hull_is_p0(&hull, &budget)?)] {
        match &v.witness {
            Some(w) => println!("{name}: {:?}, witness {}", v.label, w.member),
            None => println!("{name}: {:?}", v.label),
        }
    }
    Ok(())
}
