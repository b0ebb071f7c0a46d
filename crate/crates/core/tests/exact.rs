use klein11_core::exact::{Cyclotomic, Field, Rational, Ring, QUADRATIC_RESIDUES};
use num_complex::Complex64;

fn rho(k: i64) -> Cyclotomic {
    Cyclotomic::rho(k)
}

fn sum(ks: &[i64]) -> Cyclotomic {
    ks.iter().fold(Cyclotomic::zero(), |acc, &k| acc.add_ref(&rho(k)))
}

#[test]
fn rho_relations() {
    assert!(rho(1).mul_ref(&rho(10)).is_one());
    assert!(sum(&(0..11).collect::<Vec<_>>()).is_zero());
    assert_eq!(rho(11), Cyclotomic::one());
    assert_eq!(rho(-1), rho(10));
}

#[test]
fn gauss_period_product() {
    let eta0 = sum(&[1, 3, 4, 5, 9]);
    let eta1 = sum(&[2, 6, 7, 8, 10]);
    // 25 exponents i + j: five land on 0 and each nonzero class is hit twice, so 5 + 2·(−1) = 3
    let mut hits = [0i64; 11];
    for i in [1, 3, 4, 5, 9] {
        for j in [2, 6, 7, 8, 10] {
            hits[(i + j) % 11] += 1;
        }
    }
    assert_eq!(hits[0], 5);
    assert!(hits[1..].iter().all(|&h| h == 2));
    assert_eq!(eta0.mul_ref(&eta1), Cyclotomic::from_i64(3));
    assert_eq!(eta0.add_ref(&eta1), Cyclotomic::from_i64(-1));
}

#[test]
fn the_gauss_sum() {
    let g = Cyclotomic::sqrt_m11();
    let chi: Vec<i64> = (1..11).map(|k| if QUADRATIC_RESIDUES.contains(&k) { 1 } else { -1 }).collect();
    let by_hand = (1..11).zip(&chi).fold(Cyclotomic::zero(), |acc, (k, &c)| acc.add_ref(&rho(k).scale_i64(c)));
    assert_eq!(g, by_hand);
    assert_eq!(g.mul_ref(&g), Cyclotomic::from_i64(-11));
    let z = g.complex_eval();
    assert!(z.re.abs() < 1e-12 && (z.im - 11f64.sqrt()).abs() < 1e-12, "{z}");
    assert!((z.norm_sqr() - 11.0).abs() < 1e-10);
    // (−1 + g)/2 is a root of x² + x + 3
    let h = Cyclotomic::from_i64(-1).add_ref(&g).scale(&Rational::new(1, 2).unwrap());
    assert!(h.mul_ref(&h).add_ref(&h).add_ref(&Cyclotomic::from_i64(3)).is_zero());
}

#[test]
fn galois_action() {
    let g = Cyclotomic::sqrt_m11();
    assert_eq!(rho(1).galois_conj(2).unwrap(), rho(2));
    assert_eq!(g.galois_conj(2).unwrap(), g.neg_ref());
    for k in QUADRATIC_RESIDUES {
        assert_eq!(g.galois_conj(k as i64).unwrap(), g);
    }
    let a = sum(&[1, 2, 2, 7]).add_ref(&Cyclotomic::from_i64(5));
    assert_eq!(a.galois_conj(2).unwrap().galois_conj(6).unwrap(), a);
    assert!(a.galois_conj(0).is_err());
    assert!(a.galois_conj(22).is_err());
}

#[test]
fn complex_evaluation() {
    assert_eq!(Cyclotomic::one().complex_eval(), Complex64::new(1.0, 0.0));
    let t = 2.0 * std::f64::consts::PI / 11.0;
    let z = rho(1).complex_eval();
    assert!((z - Complex64::new(t.cos(), t.sin())).norm() < 1e-12);
    assert!((z.re - 0.84125).abs() < 1e-5 && (z.im - 0.54064).abs() < 1e-5);
}

#[test]
fn division() {
    let a = sum(&[1, 3]).add_ref(&Cyclotomic::from_i64(2));
    let q = Cyclotomic::one().div_ref(&a).unwrap();
    assert!(q.mul_ref(&a).is_one());
    assert!(a.norm() != Rational::from(0));
    assert!(a.div_ref(&Cyclotomic::zero()).is_err());
    assert!(Rational::from(1).div_ref(&Rational::from(0)).is_err());
}

#[test]
fn rationals_are_canonical() {
    let q = Rational::new(-6, 4).unwrap();
    assert_eq!(q.to_string(), "-3/2");
    assert_eq!(Rational::new(6, -4).unwrap(), q);
    assert_eq!(Rational::from(0).to_string(), "0/1");
    assert_eq!("4".parse::<Rational>().unwrap().to_string(), "4/1");
    assert_eq!("-10/4".parse::<Rational>().unwrap(), Rational::new(-5, 2).unwrap());
    assert_eq!("-1/1728".parse::<Rational>().unwrap(), Rational::new(-1, 1728).unwrap());
    for bad in ["1/0", "", "/", "1/", "a/2", "1/-2", "+1", "1.5", "1 / 2"] {
        assert!(bad.parse::<Rational>().is_err(), "{bad:?}");
    }
    let big: Rational = "123456789012345678901234567890/987654321098765432109876543210".parse().unwrap();
    assert_eq!(big.to_string(), "13717421/109739369");
}

#[test]
fn cyclotomic_text_forms() {
    let g = Cyclotomic::sqrt_m11();
    let a = Cyclotomic::from_i64(5).sub_ref(&g);
    assert_eq!(a.to_string(), "5 - √-11");
    assert_eq!(Cyclotomic::parse_bracketed(&a.to_bracketed()).unwrap(), a);
    assert_eq!(Cyclotomic::from_json(&a.to_json()).unwrap(), a);
    assert!(Cyclotomic::parse_bracketed("[1/1,2/1]").is_err());
    assert!(Cyclotomic::from_json("[\"1/0\",\"0\",\"0\",\"0\",\"0\",\"0\",\"0\",\"0\",\"0\",\"0\"]").is_err());
}
