use mdcycle::certify::{certify_prop_p7, certify_theorem_mt, verify_certificate, Certificate, CertificateKind};
use mdcycle::cycle::{cycle_from_q, project_pushforward, smash_certificate};
use mdcycle::exact::rat;
use mdcycle::linear::{lemma2_find_m, lemma2_membership};
use mdcycle::{Error, Rational};

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

#[test]
fn theorem_mt_genus_two() {
    let cert = certify_theorem_mt(2, 3, None).unwrap();
    assert_eq!(cert.kind, CertificateKind::TheoremMt);
    assert_eq!(cert.m, 7);
    assert_eq!(cert.q, ints(&[15, -5, 1, 0, 0, 0, 0]));
    assert!(cert.kappa.as_ref().is_some_and(|k| *k != rat(0)));
    assert!(cert.checks.iter().all(|c| c.pass));
    verify_certificate(&cert).unwrap();
}

#[test]
fn theorem_mt_sweep_is_verified_for_small_genus() {
    for g in 2..=4 {
        for n in 3..=5 {
            let cert = certify_theorem_mt(g, n, None).unwrap();
            assert!(cert.m > n && cert.m >= 2 * g + 3, "g={g} n={n}");
            verify_certificate(&cert).unwrap();
            let reparsed = Certificate::from_json(&cert.to_json()).unwrap();
            assert_eq!(reparsed, cert);
        }
    }
}

#[test]
fn theorem_mt_rejects_small_n_and_small_override() {
    assert!(matches!(certify_theorem_mt(2, 2, None), Err(Error::Unsupported(_))));
    assert!(certify_theorem_mt(2, 3, Some(4)).is_err());
}

#[test]
fn prop_p7_genus_five() {
    let cert = certify_prop_p7(5, 5, 1, 200).unwrap().expect("certificate exists");
    assert_eq!(cert.kind, CertificateKind::PropP7);
    assert_eq!(cert.m, 6);
    assert_eq!(cert.q, ints(&[30, -6, 1, 0, 0, 0]));
    assert_eq!(cert.functional_value, Some(rat(130)));
    verify_certificate(&cert).unwrap();
    assert!(certify_prop_p7(5, 5, 1, 5).unwrap().is_none());
}

#[test]
fn lemma2_first_non_member() {
    assert_eq!(lemma2_find_m(5, 1, 200).unwrap(), Some(6));
    assert_eq!(lemma2_find_m(6, 1, 200).unwrap(), Some(7));
    let report = lemma2_membership(5, 1, 6).unwrap();
    assert!(!report.member);
    assert_eq!(report.augmented_rank, report.span_rank + 1);
}

#[test]
fn certified_cycle_projection_and_smash() {
    let cert = certify_theorem_mt(2, 3, None).unwrap();
    let cycle = cycle_from_q(cert.m, cert.q.clone()).unwrap();
    let projected = project_pushforward(&cycle, cert.n).unwrap();
    let kappa = cert.kappa.clone().unwrap();
    let normalized: Vec<Rational> = projected.coeffs().iter().map(|a| a / &kappa).collect();
    assert_eq!(Some(normalized), cert.projected_coeffs);

    let report = smash_certificate(&cycle, cert.g).unwrap();
    assert_eq!(report.m, cert.m);
}
