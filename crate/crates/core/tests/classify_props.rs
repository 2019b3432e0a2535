mod common;

use common::*;
use proptest::prelude::*;
use tenshull::classify::{classify_m, is_p, is_p0, is_pd, is_psd, ClassifyOptions, Label, Property, SearchBudget};
use tenshull::oracle::{matrix_definiteness, minor_class, MinorClass};

fn expect(holds: bool) -> Label {
    if holds {
        Label::Yes
    } else {
        Label::CertifiedNo
    }
}

#[test]
fn matrix_case_matches_exact_oracles() {
    let budget = SearchBudget::default();
    let mut r = rng(77);
    for k in 0..500 {
        let n = 1 + k % 5;
        let mut a = random_tensor(&mut r, 2, n, -1.0, 1.0, 0.2).scale_shift(1.0, (k % 4) as f64 * 0.5);
        if k % 2 == 0 {
            a = a.symmetrized();
        }
        let m = a.to_matrix().unwrap();
        let sym = matrix_definiteness(&m, 0.0).unwrap();
        let minors = minor_class(&m, 0.0).unwrap();
        let cases = [
            (Property::Psd, is_psd(&a, &budget), sym != MinorClass::Neither),
            (Property::Pd, is_pd(&a, &budget), sym == MinorClass::P),
            (Property::P, is_p(&a, &budget), minors == MinorClass::P),
            (Property::P0, is_p0(&a, &budget), minors != MinorClass::Neither),
        ];
        for (property, verdict, holds) in cases {
            assert_eq!(verdict.label, expect(holds), "{property:?} on {m}");
            if let Some(c) = &verdict.certificate {
                assert!(c.check(&a).is_ok(), "{property:?} certificate on {m}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn certified_no_always_rechecks(seed in any::<u64>(), m in 2usize..=4, n in 1usize..=4) {
        let a = random_tensor(&mut rng(seed), m, n, -1.0, 1.0, 0.3);
        let budget = SearchBudget::default();
        for v in [is_psd(&a, &budget), is_pd(&a, &budget), is_p(&a, &budget), is_p0(&a, &budget)] {
            if v.label == Label::CertifiedNo {
                let c = v.certificate.expect("certified no carries a certificate");
                prop_assert!(c.check(&a).is_ok());
            }
        }
    }

    #[test]
    fn m_labels_carry_split_and_bracket(seed in any::<u64>(), m in 2usize..=4, n in 1usize..=4, factor in 0.5f64..1.5) {
        let d = random_tensor(&mut rng(seed), m, n, 0.0, 1.0, 0.3);
        let a = z_from(&d, factor);
        let v = classify_m(&a, &ClassifyOptions::default());
        prop_assert!(v.label != Label::NotZ);
        prop_assert!(v.s.is_some() && v.bracket.is_some());
        let (lo, hi) = v.bracket.unwrap();
        prop_assert!(lo <= hi);
        let c = v.certificate.expect("m-class verdicts carry a certificate");
        prop_assert!(c.check(&a).is_ok());
    }

    #[test]
    fn positive_off_diagonal_is_not_z(seed in any::<u64>(), m in 2usize..=4, n in 2usize..=4) {
        let mut a = z_from(&random_tensor(&mut rng(seed), m, n, 0.0, 1.0, 0.0), 1.2);
        let mut idx = vec![0; m];
        idx[1] = 1;
        a.set(&idx, 0.25);
        let v = classify_m(&a, &ClassifyOptions::default());
        prop_assert_eq!(v.label, Label::NotZ);
        prop_assert!(v.certificate.unwrap().check(&a).is_ok());
    }
}
