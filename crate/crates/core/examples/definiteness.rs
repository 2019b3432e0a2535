//! PSD, PD, P and P0 checks with their certificates.

use tenshull::classify::{is_p, is_p0, is_pd, is_psd, SearchBudget};
use tenshull::Tensor;

fn main() {
    let budget = SearchBudget { seed: 3, ..SearchBudget::default() };
    let cases = [
        ("[[2,1],[1,2]]", Tensor::new(2, 2, vec![2., 1., 1., 2.]).unwrap()),
        ("[[1,2],[2,1]]", Tensor::new(2, 2, vec![1., 2., 2., 1.]).unwrap()),
        ("[[0,1],[-1,0]]", Tensor::new(2, 2, vec![0., 1., -1., 0.]).unwrap()),
        ("identity(4,3)", Tensor::identity(4, 3)),
        ("ones(3,2)", Tensor::ones(3, 2)),
    ];
    for (name, a) in &cases {
        let labels = [is_psd(a, &budget), is_pd(a, &budget), is_p(a, &budget), is_p0(a, &budget)].map(|v| {
            let checked = v.certificate.as_ref().map(|c| c.check(a).is_ok());
            format!("{:?}{}", v.label, if checked == Some(false) { " (bad certificate)" } else { "" })
        });
        println!("{name:<15} psd {:<22} pd {:<22} p {:<22} p0 {}", labels[0], labels[1], labels[2], labels[3]);
    }
}
