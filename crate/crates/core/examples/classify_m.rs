//! M-tensor classification through the split A = sI - D.

use tenshull::classify::{classify_m, ClassifyOptions, Property};
use tenshull::Tensor;

fn show(name: &str, a: &Tensor) {
    let v = classify_m(a, &ClassifyOptions::default());
    println!(
        "{name:<12} label {:?}, strong-m answer {:?}, s = {:?}, margin = {:?}",
        v.label,
        v.answer_for(Property::StrongM),
        v.s,
        v.margin
    );
    if let Some(c) = &v.certificate {
        println!("{:<12} certificate re-checks: {}", "", c.check(a).is_ok());
    }
}

fn main() {
    let ones = Tensor::ones(3, 2);
    // rho(ones(3, 2)) = 4, so t I - ones is strong for t > 4 and singular at t = 4.
    for t in [5.0, 4.0, 3.0] {
        let a = Tensor::identity(3, 2).scaled(t).sub(&ones).unwrap();
        show(&format!("{t}I - J"), &a);
    }
    let mut not_z = Tensor::identity(3, 2);
    not_z.set(&[0, 1, 0], 0.5);
    show("positive off", &not_z);
}
