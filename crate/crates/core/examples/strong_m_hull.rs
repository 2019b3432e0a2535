//! Certifying that every tensor in [A, B] is a strong M-tensor.

use tenshull::classify::ClassifyOptions;
use tenshull::interval::{hull_is_strong_m, interior_is_strong_m, IntervalHull};
use tenshull::Tensor;

fn main() -> tenshull::Result<()> {
    let opts = ClassifyOptions::default();
    let j = Tensor::ones(3, 2);
    let id = Tensor::identity(3, 2);

    let hull = IntervalHull::new(id.scaled(5.0).sub(&j)?, id.scaled(6.0).sub(&j.scaled(0.5))?)?;
    let v = hull_is_strong_m(&hull, &opts);
    println!("[5I - J, 6I - J/2]: {:?} via {} endpoint checks", v.label, v.endpoints.len());

    // Lower endpoint singular: only the interior is strong.
    let hull = IntervalHull::new(id.scaled(4.0).sub(&j)?, id.scaled(5.0).sub(&j)?)?;
    println!("[4I - J, 5I - J] closed:   {:?}", hull_is_strong_m(&hull, &opts).label);
    println!("[4I - J, 5I - J] interior: {:?}", interior_is_strong_m(&hull, &opts).label);

    let hull = IntervalHull::new(id.scaled(3.0).sub(&j)?, id.scaled(5.0).sub(&j)?)?;
    let v = hull_is_strong_m(&hull, &opts);
    let w = v.witness.expect("a failing member is reported");
    println!("[3I - J, 5I - J]: {:?}, witness {} labelled {:?}", v.label, w.member, w.verdict.label);
    Ok(())
}
