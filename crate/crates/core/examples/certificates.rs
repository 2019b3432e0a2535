//! Building a report, checking it offline, and catching a tampered copy.

use tenshull::classify::{is_psd, SearchBudget};
use tenshull::report::{verify, CertificateRecord, Input, Report, Subject};
use tenshull::Tensor;

fn main() {
    let a = Tensor::from_fn(3, 3, |idx| if idx[0] == idx[1] && idx[1] == idx[2] { 1.0 } else { 0.2 });
    let v = is_psd(&a, &SearchBudget::default());
    println!("psd verdict: {:?}", v.label);

    let mut report = Report::new(vec!["classify".into(), "a.json".into(), "--class".into(), "psd".into()], 0);
    report.inputs.push(Input::new("a.json", &a));
    report.certificates.push(CertificateRecord {
        subject: Subject::Input(0),
        claim: format!("psd: {:?}", v.label),
        certificate: v.certificate.expect("odd order refutes psd"),
        member: None,
    });
    let text = report.to_json();
    let back = Report::from_json(&text).unwrap();
    let ok = verify(&back);
    println!("verified {} certificate(s), passed: {}", ok.checked, ok.passed());

    let mut forged = back.clone();
    if let Some(x) = forged.certificates[0].certificate.vector_mut() {
        x.iter_mut().for_each(|v| *v = -*v);
    }
    for failure in verify(&forged).failures {
        println!("FAIL {failure}");
    }
}
