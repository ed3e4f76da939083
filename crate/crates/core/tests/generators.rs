use std::time::Instant;

use hamlocate::harness::{gen_ec1, gen_ec2, gen_random_dirac};
use hamlocate::solvers::{classify, Classification};

const ALPHA: f64 = 0.05;

#[test]
fn ec1_family_classifies_as_ec1() {
    let g = gen_ec1(400, 0.02, 7).unwrap();
    match classify(&g, ALPHA, 50, 7) {
        Classification::Ec1 { v1, v2 } => {
            assert_eq!((v1.len(), v2.len()), (200, 200));
            let side = |v: usize| v < 200;
            assert!(v1.iter().all(|&v| side(v) == side(v1[0])));
        }
        other => panic!("expected EC1, got {}", other.name()),
    }
}

#[test]
fn ec2_family_classifies_as_ec2() {
    let g = gen_ec2(400, 0.02, 7).unwrap();
    assert!(matches!(classify(&g, ALPHA, 50, 7), Classification::Ec2 { .. }));
}

#[test]
fn random_dirac_is_not_extremal() {
    let g = gen_random_dirac(2000, 0, 7).unwrap();
    let t = Instant::now();
    assert_eq!(classify(&g, ALPHA, 50, 7), Classification::NonExtremal);
    eprintln!("classify n=2000: {:?}", t.elapsed());
}
